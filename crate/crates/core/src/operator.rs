//! Linear differential operators with variable coefficients, truncated at a
//! center.
//!
//! An [`OperatorSpec`] stores, for each derivative index `j`, the scaled
//! Taylor data of its coefficient around the center: the degree-`k` slice of
//! that data is `∂^k c_j(x0)/k!`, so the coefficient polynomial is already in
//! the shifted monomial basis the rest of the crate uses. The central object
//! is the map `P ↦ T_{p−γ}[L P]` (truncate the image of the operator), which
//! is *not* itself a differential operator but acts slice by slice, together
//! with its split into the constant-coefficient principal part at the center
//! and a strictly degree-raising remainder.

use crate::error::Error;
use crate::multiindex::MultiIndex;
use crate::polynomial::{GradedPoly, HomogeneousPoly};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// A linear scalar differential operator `L = Σ_{|j| ≤ γ} c_j ∂^j`, known
/// through the Taylor data of its coefficients at a center, plus the degree
/// `p` the construction is truncated at.
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorSpec<S: Scalar> {
    dim: usize,
    order: usize,
    degree: usize,
    center: Vec<f64>,
    /// `j ↦ Taylor polynomial of c_j` (degree ≤ p − γ, coefficients already
    /// divided by the factorials). Zero coefficients are not stored.
    coefficients: BTreeMap<MultiIndex, GradedPoly<S>>,
}

impl<S: Scalar> OperatorSpec<S> {
    /// Validates and assembles an operator description.
    ///
    /// Requirements: `order ≥ 1`, `degree ≥ order`, every coefficient index
    /// has `|j| ≤ order` and dimension `dim`, and every coefficient
    /// polynomial matches the dimension and has degree ≤ `degree − order`.
    pub fn new(
        dim: usize,
        order: usize,
        degree: usize,
        center: Vec<f64>,
        coefficients: impl IntoIterator<Item = (MultiIndex, GradedPoly<S>)>,
    ) -> Result<Self, Error> {
        if dim < 1 {
            return Err(Error::InvalidOperator("dimension must be >= 1".into()));
        }
        if order < 1 {
            return Err(Error::InvalidOperator("order must be >= 1".into()));
        }
        if degree < order {
            return Err(Error::InvalidOperator(format!(
                "truncation degree {degree} is below the order {order}"
            )));
        }
        if center.len() != dim {
            return Err(Error::InvalidOperator(format!(
                "center has {} coordinates, expected {dim}",
                center.len()
            )));
        }
        let q = degree - order;
        let mut map = BTreeMap::new();
        for (j, c) in coefficients {
            if j.dim() != dim {
                return Err(Error::InvalidOperator(format!(
                    "coefficient index {j} has the wrong dimension"
                )));
            }
            if j.total_degree() > order {
                return Err(Error::InvalidOperator(format!(
                    "coefficient index {j} exceeds the order {order}"
                )));
            }
            if c.dim() != dim {
                return Err(Error::InvalidOperator(format!(
                    "coefficient of {j} has the wrong dimension"
                )));
            }
            if !c.is_zero() && c.degree() > q {
                return Err(Error::InvalidOperator(format!(
                    "coefficient of {j} has degree {} but only degree {q} Taylor data is usable",
                    c.degree()
                )));
            }
            if c.is_zero() {
                continue;
            }
            if map.insert(j.clone(), c).is_some() {
                return Err(Error::InvalidOperator(format!(
                    "duplicate coefficient index {j}"
                )));
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidOperator(
                "operator has no nonzero coefficient".into(),
            ));
        }
        Ok(OperatorSpec {
            dim,
            order,
            degree,
            center,
            coefficients: map,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nominal order γ.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Truncation degree p of the polynomial space the basis lives in.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Degree `p − γ` that images are truncated to.
    pub fn image_degree(&self) -> usize {
        self.degree - self.order
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Iterates `(j, Taylor data of c_j)` in lexicographic order of `j`.
    pub fn coefficients(&self) -> impl Iterator<Item = (&MultiIndex, &GradedPoly<S>)> {
        self.coefficients.iter()
    }

    /// Reuses the operator data over another scalar type (e.g. exact data
    /// replayed in floating point).
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> OperatorSpec<T> {
        OperatorSpec {
            dim: self.dim,
            order: self.order,
            degree: self.degree,
            center: self.center.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|(j, c)| (j.clone(), c.map_coeffs(&f)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Extracts the principal part at the center, `L_* = Σ_{|j|=γ} c_j(x0) ∂^j`.
    ///
    /// Fails with [`Error::DegenerateOrder`] when every order-γ coefficient
    /// vanishes at the center; the error reports the largest order that does
    /// not (the operator should be re-posed at that order).
    pub fn principal_part(&self) -> Result<PrincipalPart<S>, Error> {
        let alpha = self.constant_terms_of_order(self.order);
        if !alpha.is_empty() {
            return Ok(PrincipalPart {
                dim: self.dim,
                order: self.order,
                alpha,
            });
        }
        let effective_order = (0..self.order)
            .rev()
            .find(|&m| !self.constant_terms_of_order(m).is_empty());
        Err(Error::DegenerateOrder {
            order: self.order,
            effective_order,
        })
    }

    fn constant_terms_of_order(&self, m: usize) -> BTreeMap<MultiIndex, S> {
        self.coefficients
            .iter()
            .filter(|(j, _)| j.total_degree() == m)
            .filter_map(|(j, c)| {
                let v = c.coeff(&MultiIndex::zero(self.dim));
                (!v.is_zero()).then(|| (j.clone(), v))
            })
            .collect()
    }

    /// The quasi-Trefftz image `T_{p−γ}[L P]` for `P` of degree ≤ p.
    ///
    /// Works slice by slice: the degree-N component of `P` contributes
    /// `Σ_{|j| ≤ min(N,γ)} Σ_k (Taylor slice k of c_j) · ∂^j P_N` to the
    /// image slice of degree `N − |j| + k`, and slices above `p − γ` are
    /// dropped. Linear in `P`, exact over exact scalars.
    pub fn apply_quasi_trefftz(&self, p: &GradedPoly<S>) -> Result<GradedPoly<S>, Error> {
        if p.dim() != self.dim {
            return Err(Error::InvalidOperator(
                "polynomial dimension does not match the operator".into(),
            ));
        }
        if !p.is_zero() && p.degree() > self.degree {
            return Err(Error::DegreeTooHigh {
                degree: p.degree(),
                max: self.degree,
            });
        }
        let q = self.image_degree();
        let mut out = GradedPoly::zero(self.dim, self.center.to_vec());
        for (n, slice) in p.nonzero_components() {
            for (j, c) in &self.coefficients {
                let m = j.total_degree();
                if m > n || n - m > q {
                    continue;
                }
                let dp = slice.derivative(j);
                if dp.is_zero() {
                    continue;
                }
                for l in (n - m)..=q {
                    if let Some(ck) = c.component(l - (n - m)) {
                        out.add_component(&ck.product(&dp));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The degree-`l` block of the remainder `R = T_{p−γ}∘L − L_*` applied to
    /// a homogeneous `P`.
    ///
    /// For `P` of degree N these blocks vanish unless `N − γ < l ≤ p − γ`
    /// (the remainder strictly raises the degree offset), and the top slice
    /// `N = p` is annihilated entirely. Computed directly from the Taylor
    /// data — the constant term of each order-γ coefficient is excluded, as
    /// it belongs to the principal part — rather than by subtracting the two
    /// other maps.
    pub fn remainder_block(&self, p: &HomogeneousPoly<S>, l: usize) -> HomogeneousPoly<S> {
        assert_eq!(p.dim(), self.dim);
        let q = self.image_degree();
        assert!(l <= q, "target degree {l} above the image degree {q}");
        let n = p.degree();
        let mut out = HomogeneousPoly::zero(self.dim, l);
        if p.is_zero() {
            return out;
        }
        for (j, c) in &self.coefficients {
            let m = j.total_degree();
            if m > n {
                continue;
            }
            // Taylor slice index of c_j that lands the contribution on degree l
            let Some(k) = (l + m).checked_sub(n) else {
                continue;
            };
            if k > q {
                continue;
            }
            if m == self.order && k == 0 {
                continue; // the principal part's share
            }
            if let Some(ck) = c.component(k) {
                let dp = p.derivative(j);
                if !dp.is_zero() {
                    out.accumulate(&ck.product(&dp));
                }
            }
        }
        out
    }

    /// The full remainder `R P = Σ_l (degree-l blocks)` for a graded `P` of
    /// degree ≤ p.
    pub fn apply_remainder(&self, p: &GradedPoly<S>) -> GradedPoly<S> {
        let q = self.image_degree();
        let mut out = GradedPoly::zero(self.dim, self.center.to_vec());
        for (_, slice) in p.nonzero_components() {
            for l in 0..=q {
                let block = self.remainder_block(slice, l);
                if !block.is_zero() {
                    out.add_component(&block);
                }
            }
        }
        out
    }
}

/// The constant-coefficient principal part `L_* = Σ_{|i|=γ} α_i ∂^i` of an
/// operator at its center (`α_i = c_i(x0)`, all nonzero by construction).
#[derive(Clone, PartialEq, Debug)]
pub struct PrincipalPart<S> {
    dim: usize,
    order: usize,
    alpha: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> PrincipalPart<S> {
    /// Builds a principal part directly from `(i, α_i)` pairs; entries with
    /// zero value are dropped, and at least one must survive.
    pub fn from_terms(
        dim: usize,
        order: usize,
        terms: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Result<Self, Error> {
        let mut alpha = BTreeMap::new();
        for (i, a) in terms {
            if i.dim() != dim || i.total_degree() != order {
                return Err(Error::InvalidOperator(format!(
                    "principal index {i} is not of order {order}"
                )));
            }
            if !a.is_zero() {
                alpha.insert(i, a);
            }
        }
        if alpha.is_empty() {
            return Err(Error::DegenerateOrder {
                order,
                effective_order: None,
            });
        }
        Ok(PrincipalPart { dim, order, alpha })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The support `I = {i : α_i ≠ 0}` in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.alpha.keys()
    }

    /// Iterates `(i, α_i)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.alpha.iter()
    }

    pub fn alpha(&self, i: &MultiIndex) -> S {
        self.alpha.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// Applies `L_*` to a homogeneous polynomial of degree ≥ γ, landing γ
    /// degrees lower.
    pub fn apply(&self, p: &HomogeneousPoly<S>) -> HomogeneousPoly<S> {
        assert_eq!(p.dim(), self.dim);
        assert!(
            p.degree() >= self.order,
            "principal part needs degree >= {}, got {}",
            self.order,
            p.degree()
        );
        let mut out = HomogeneousPoly::zero(self.dim, p.degree() - self.order);
        for (i, a) in &self.alpha {
            let dp = p.derivative(i);
            if !dp.is_zero() {
                out.accumulate(&dp.scale(a));
            }
        }
        out
    }

    /// Applies `L_*` componentwise to a graded polynomial; slices of degree
    /// below γ are annihilated.
    pub fn apply_graded(&self, p: &GradedPoly<S>) -> GradedPoly<S> {
        let mut out = GradedPoly::zero(p.dim(), p.center().to_vec());
        for (n, slice) in p.nonzero_components() {
            if n >= self.order {
                out.add_component(&self.apply(slice));
            }
        }
        out
    }
}
