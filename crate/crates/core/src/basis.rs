//! Quasi-Trefftz bases and polynomial solves by forward substitution.
//!
//! The truncated map `T_{p−γ}∘L` splits into the principal part `L_*` (which
//! acts inside each degree offset and has the explicit sections of
//! [`crate::rightinverse`]) plus a remainder that strictly raises the offset.
//! Sweeping degrees from low to high therefore solves both problems of
//! interest in closed form: annihilating the image (kernel elements, one per
//! seed in the complement of the pivot cone) and hitting a prescribed image
//! (polynomial particular solutions). No linear algebra is ever performed on
//! the full space — every step is one triangular slice solve.

use crate::error::Error;
use crate::multiindex::{dim_poly, enumerate_up_to, MultiIndex};
use crate::operator::{OperatorSpec, PrincipalPart};
use crate::polynomial::{GradedPoly, HomogeneousPoly};
use crate::rightinverse::{
    select_pivot, solve_principal_general, solve_principal_simple, PivotData,
};
use crate::scalar::Scalar;
use rayon::prelude::*;

/// A quasi-Trefftz basis: for every returned element `E`,
/// `T_{p−γ}[L E] = 0`, and each element is its seed plus a correction
/// supported in the pivot cone.
#[derive(Clone, PartialEq, Debug)]
pub struct QTBasis<S: Scalar> {
    operator: OperatorSpec<S>,
    elements: Vec<GradedPoly<S>>,
    seeds: Vec<GradedPoly<S>>,
}

impl<S: Scalar> QTBasis<S> {
    /// Bundles an operator with matching element and seed lists (used when
    /// reconstructing from serialized form; construction from scratch goes
    /// through [`quasi_trefftz_basis`]).
    pub fn new(
        operator: OperatorSpec<S>,
        elements: Vec<GradedPoly<S>>,
        seeds: Vec<GradedPoly<S>>,
    ) -> Self {
        QTBasis {
            operator,
            elements,
            seeds,
        }
    }

    pub fn operator(&self) -> &OperatorSpec<S> {
        &self.operator
    }

    pub fn elements(&self) -> &[GradedPoly<S>] {
        &self.elements
    }

    pub fn seeds(&self) -> &[GradedPoly<S>] {
        &self.seeds
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `dim P_p − dim P_{p−γ}`: the count the element list must have.
    pub fn expected_len(&self) -> usize {
        expected_basis_len(&self.operator)
    }
}

/// `dim P_p − dim P_{p−γ}` for the operator's dimension, order and degree.
pub fn expected_basis_len<S: Scalar>(op: &OperatorSpec<S>) -> usize {
    dim_poly(op.dim(), op.degree()) - dim_poly(op.dim(), op.image_degree())
}

/// The canonical seed monomials: every `|s| ≤ p` outside the pivot cone
/// `{s : s ≥ i* componentwise}`, by degree then lexicographically.
///
/// There are exactly `dim P_p − dim P_{p−γ}` of them — the cone misses one
/// monomial for each member of `P_{p−γ}`'s basis.
pub fn u_seed_monomials<S: Scalar>(op: &OperatorSpec<S>, pivot: &PivotData) -> Vec<MultiIndex> {
    enumerate_up_to(op.dim(), op.degree())
        .into_iter()
        .filter(|s| !pivot.pivot().leq(s))
        .collect()
}

/// Applies the degree-slice section of `L_*` (the cheap axis sweep when the
/// pivot allows it, the general lexicographic sweep otherwise).
fn section<S: Scalar>(
    lstar: &PrincipalPart<S>,
    pivot: &PivotData,
    target: &HomogeneousPoly<S>,
) -> HomogeneousPoly<S> {
    if pivot.simple_axis().is_some() {
        solve_principal_simple(lstar, pivot, target).expect("dominating axis present")
    } else {
        solve_principal_general(lstar, pivot, target)
    }
}

/// The blockwise section `S_*` of the principal part: each degree-`n` slice
/// of `f` (with `n ≤ p − γ`) is lifted into the cone slice of degree `n + γ`.
pub fn principal_section<S: Scalar>(
    lstar: &PrincipalPart<S>,
    pivot: &PivotData,
    f: &GradedPoly<S>,
) -> GradedPoly<S> {
    let mut out = GradedPoly::zero(f.dim(), f.center().to_vec());
    for (_, slice) in f.nonzero_components() {
        out.add_component(&section(lstar, pivot, slice));
    }
    out
}

/// One low-to-high degree sweep covering both solves. The degree-`k` result
/// slice is `u_k + S_k(b_{k−γ} − Σ_{j<k} R_{k,j} x_j − L_* u_k)`; the
/// remainder blocks only consume slices already computed.
fn forward_substitution<S: Scalar>(
    op: &OperatorSpec<S>,
    lstar: &PrincipalPart<S>,
    pivot: &PivotData,
    seed: &GradedPoly<S>,
    rhs: Option<&GradedPoly<S>>,
) -> GradedPoly<S> {
    let gamma = op.order();
    let p = op.degree();
    let dim = op.dim();
    let mut x: Vec<HomogeneousPoly<S>> = (0..gamma).map(|k| seed.component_or_zero(k)).collect();
    for k in gamma..=p {
        let u_k = seed.component_or_zero(k);
        let mut target = match rhs {
            Some(f) => f.component_or_zero(k - gamma),
            None => HomogeneousPoly::zero(dim, k - gamma),
        };
        for xj in x.iter().filter(|xj| !xj.is_zero()) {
            target = target.sub(&op.remainder_block(xj, k - gamma));
        }
        if !u_k.is_zero() {
            target = target.sub(&lstar.apply(&u_k));
        }
        if target.is_zero() {
            x.push(u_k);
        } else {
            x.push(u_k.add(&section(lstar, pivot, &target)));
        }
    }
    let mut out = GradedPoly::zero(dim, op.center().to_vec());
    for slice in x.into_iter().filter(|s| !s.is_zero()) {
        out.add_component(&slice);
    }
    out
}

fn check_seed<S: Scalar>(
    op: &OperatorSpec<S>,
    pivot: &PivotData,
    seed: &GradedPoly<S>,
) -> Result<(), Error> {
    if !seed.is_zero() && seed.degree() > op.degree() {
        return Err(Error::DegreeTooHigh {
            degree: seed.degree(),
            max: op.degree(),
        });
    }
    for (k, slice) in seed.nonzero_components() {
        if k < op.order() {
            continue; // low slices are unconstrained
        }
        for (s, _) in slice.terms() {
            if pivot.pivot().leq(s) {
                return Err(Error::SeedNotInU {
                    degree: k,
                    index: s.clone(),
                });
            }
        }
    }
    Ok(())
}

/// The kernel element seeded by `seed ∈ U`: the unique polynomial `X` with
/// `T_{p−γ}[L X] = 0` that differs from the seed only inside the pivot cone.
pub fn kernel_element<S: Scalar>(
    op: &OperatorSpec<S>,
    pivot: &PivotData,
    seed: &GradedPoly<S>,
) -> Result<GradedPoly<S>, Error> {
    let lstar = op.principal_part()?;
    check_seed(op, pivot, seed)?;
    Ok(forward_substitution(op, &lstar, pivot, seed, None))
}

/// A polynomial `X` of degree ≤ p with `T_{p−γ}[L X] = f`, supported in the
/// pivot cone (zero seed).
pub fn particular_solution<S: Scalar>(
    op: &OperatorSpec<S>,
    pivot: &PivotData,
    f: &GradedPoly<S>,
) -> Result<GradedPoly<S>, Error> {
    if !f.is_zero() && f.degree() > op.image_degree() {
        return Err(Error::DegreeTooHigh {
            degree: f.degree(),
            max: op.image_degree(),
        });
    }
    let lstar = op.principal_part()?;
    let zero_seed = GradedPoly::zero(op.dim(), op.center().to_vec());
    Ok(forward_substitution(op, &lstar, pivot, &zero_seed, Some(f)))
}

/// The explicit series right inverse `S = S_* ∘ Σ_{l=0}^{p−γ} (−R S_*)^l` of
/// the truncated map. Produces the same polynomial as
/// [`particular_solution`]; the two follow different routes and are kept
/// separate so they can check each other.
pub fn right_inverse_s<S: Scalar>(
    op: &OperatorSpec<S>,
    pivot: &PivotData,
    f: &GradedPoly<S>,
) -> Result<GradedPoly<S>, Error> {
    if !f.is_zero() && f.degree() > op.image_degree() {
        return Err(Error::DegreeTooHigh {
            degree: f.degree(),
            max: op.image_degree(),
        });
    }
    let lstar = op.principal_part()?;
    let mut acc = f.clone();
    let mut total = f.clone();
    for _ in 1..=op.image_degree() {
        if acc.is_zero() {
            break;
        }
        acc = op
            .apply_remainder(&principal_section(&lstar, pivot, &acc))
            .neg();
        total = total.add(&acc);
    }
    Ok(principal_section(&lstar, pivot, &total))
}

/// Builds the quasi-Trefftz basis from the canonical monomial seeds.
/// Independent seeds are processed in parallel; the element order matches the
/// seed order (degree, then lexicographic).
pub fn quasi_trefftz_basis<S: Scalar>(op: &OperatorSpec<S>) -> Result<QTBasis<S>, Error> {
    let lstar = op.principal_part()?;
    let pivot = select_pivot(&lstar);
    let seeds: Vec<GradedPoly<S>> = u_seed_monomials(op, &pivot)
        .into_iter()
        .map(|s| GradedPoly::monomial(op.center().to_vec(), s, S::one()))
        .collect();
    let elements = seeds
        .par_iter()
        .map(|seed| forward_substitution(op, &lstar, &pivot, seed, None))
        .collect();
    Ok(QTBasis {
        operator: op.clone(),
        elements,
        seeds,
    })
}

/// Like [`quasi_trefftz_basis`] but with caller-supplied seeds (any basis of
/// the cone complement works; each seed is validated).
pub fn quasi_trefftz_basis_with_seeds<S: Scalar>(
    op: &OperatorSpec<S>,
    seeds: Vec<GradedPoly<S>>,
) -> Result<QTBasis<S>, Error> {
    let lstar = op.principal_part()?;
    let pivot = select_pivot(&lstar);
    for seed in &seeds {
        check_seed(op, &pivot, seed)?;
    }
    let elements = seeds
        .par_iter()
        .map(|seed| forward_substitution(op, &lstar, &pivot, seed, None))
        .collect();
    Ok(QTBasis {
        operator: op.clone(),
        elements,
        seeds,
    })
}
