//! Right inverses of the principal part on fixed-degree slices.
//!
//! For the constant-coefficient principal part `L_* = Σ_{i∈I} α_i ∂^i` the
//! linear map `P̃_{n+γ} → P̃_n` is onto, and a canonical section is obtained
//! by restricting to the pivot cone `V_{n+γ} = span{X^{j+i*} : |j| = n}`,
//! where the pivot `i*` is the lexicographic maximum of the support `I`.
//! Restricted this way the system becomes triangular: sweeping the unknowns
//! in lexicographic order (or, when the pivot strictly dominates the rest of
//! the support along one axis, in order of that axis's exponent) each
//! equation determines exactly one new coefficient.

use crate::error::Error;
use crate::multiindex::{enumerate_degree, lex_less, MultiIndex};
use crate::operator::PrincipalPart;
use crate::polynomial::HomogeneousPoly;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// The pivot of a principal support: the index the correction cone is built
/// on, plus the axis (if any) along which it strictly dominates the rest of
/// the support — the cue for the cheaper sweep.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PivotData {
    pivot: MultiIndex,
    simple_axis: Option<usize>,
}

impl PivotData {
    pub fn pivot(&self) -> &MultiIndex {
        &self.pivot
    }

    /// 0-based axis along which the pivot's exponent strictly exceeds every
    /// other support index's, when one exists.
    pub fn simple_axis(&self) -> Option<usize> {
        self.simple_axis
    }
}

/// Picks the pivot by successive componentwise maxima over the support
/// (equivalently: its lexicographic maximum), and detects a dominating axis.
///
/// Every other support index is lexicographically below the pivot, which is
/// what makes the general sweep triangular.
pub fn select_pivot<S: Scalar>(lstar: &PrincipalPart<S>) -> PivotData {
    let pivot = lstar
        .support()
        .max()
        .expect("principal part has nonempty support")
        .clone();
    let simple_axis = (0..pivot.dim())
        .find(|&k| pivot[k] >= 1 && lstar.support().all(|i| i == &pivot || i[k] < pivot[k]));
    PivotData { pivot, simple_axis }
}

/// The monomials of the correction cone slice `V_n = {X^{j+i*} : |j| = n−γ}`
/// for `n ≥ γ = |i*|`, in lexicographically increasing order.
pub fn v_space_monomials(pivot: &MultiIndex, n: usize) -> Vec<MultiIndex> {
    let gamma = pivot.total_degree();
    assert!(n >= gamma, "cone slices start at degree {gamma}");
    enumerate_degree(pivot.dim(), n - gamma)
        .into_iter()
        .map(|j| j.add(pivot))
        .collect()
}

/// Solves `L_* Π = Λ` with `Π` in the pivot cone, sweeping the unknowns in
/// lexicographic order. Works for every principal part.
pub fn solve_principal_general<S: Scalar>(
    lstar: &PrincipalPart<S>,
    pivot: &PivotData,
    lambda: &HomogeneousPoly<S>,
) -> HomogeneousPoly<S> {
    let order = enumerate_degree(lambda.dim(), lambda.degree());
    solve_sweep(lstar, pivot.pivot(), lambda, order)
}

/// Solves `L_* Π = Λ` sweeping by the dominating axis's exponent; requires
/// `pivot.simple_axis()` to be present.
///
/// Produces the same polynomial as the general sweep — the system has one
/// solution in the cone — so the two are interchangeable where both apply.
pub fn solve_principal_simple<S: Scalar>(
    lstar: &PrincipalPart<S>,
    pivot: &PivotData,
    lambda: &HomogeneousPoly<S>,
) -> Result<HomogeneousPoly<S>, Error> {
    let Some(axis) = pivot.simple_axis() else {
        return Err(Error::SimpleCaseUnavailable);
    };
    let n = lambda.degree();
    let mut order = Vec::with_capacity(enumerate_degree(lambda.dim(), n).len());
    for v in 0..=n {
        order.extend(
            enumerate_degree(lambda.dim(), n)
                .into_iter()
                .filter(|s| s[axis] == v),
        );
    }
    Ok(solve_sweep(lstar, pivot.pivot(), lambda, order))
}

/// Shared sweep: each visited `s` determines `π_s` from the already-known
/// coefficients `π_{s+i−i*}` (`i` ranging over the non-pivot support; terms
/// whose shifted index leaves `N^d` simply do not exist).
fn solve_sweep<S: Scalar>(
    lstar: &PrincipalPart<S>,
    pivot: &MultiIndex,
    lambda: &HomogeneousPoly<S>,
    order: Vec<MultiIndex>,
) -> HomogeneousPoly<S> {
    assert_eq!(lambda.dim(), lstar.dim());
    let alpha_star = lstar.alpha(pivot);
    assert!(!alpha_star.is_zero(), "pivot must carry a nonzero weight");
    let n = lambda.degree();
    let mut pi: BTreeMap<MultiIndex, S> = BTreeMap::new();
    let mut out = HomogeneousPoly::zero(lambda.dim(), n + pivot.total_degree());
    for s in order {
        let mut rhs = lambda.coeff(&s);
        for (i, a) in lstar.terms() {
            if i == pivot {
                continue;
            }
            let Some(j) = s.add(i).checked_sub(pivot) else {
                continue;
            };
            let Some(pj) = pi.get(&j) else {
                continue; // π_j = 0 (pruned) or not reachable from this slice
            };
            debug_assert!(lex_less(&j, &s));
            let factor = S::from_bigint(&s.add(i).falling_ratio(i));
            rhs = rhs - a.clone() * pj.clone() * factor;
        }
        let denom = alpha_star.clone() * S::from_bigint(&s.add(pivot).falling_ratio(pivot));
        let value = rhs / denom;
        if !value.is_zero() {
            out.add_term(s.add(pivot), value.clone());
            pi.insert(s, value);
        }
    }
    out
}
