//! Sparse polynomials stored by homogeneous degree.
//!
//! Everything is expressed in shifted monomials `(X − x0)^i`, so the
//! expansion center never enters the arithmetic — it is carried along as
//! metadata. A [`HomogeneousPoly`] is one fixed-degree slice; a
//! [`GradedPoly`] is a stack of slices indexed by degree. Keeping the slices
//! separate is what lets the solvers work degree by degree.

use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Default relative pruning tolerance for floating-point coefficients.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// A homogeneous polynomial of fixed total degree, sparse over its monomials.
///
/// Stored coefficients are never zero (`is_zero` of the scalar), and the
/// map's lexicographic key order makes iteration deterministic.
#[derive(Clone, PartialEq)]
pub struct HomogeneousPoly<S> {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> HomogeneousPoly<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim >= 1);
        HomogeneousPoly {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single-term polynomial `c · (X − x0)^i`.
    pub fn monomial(i: MultiIndex, c: S) -> Self {
        let mut out = Self::zero(i.dim(), i.total_degree());
        out.add_term(i, c);
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Iterates terms in lexicographic order of their multi-indices.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.coeffs.iter()
    }

    /// Coefficient of `(X − x0)^i`, zero when absent.
    pub fn coeff(&self, i: &MultiIndex) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c · (X − x0)^i`, pruning the entry if the sum cancels.
    pub fn add_term(&mut self, i: MultiIndex, c: S) {
        assert_eq!(i.dim(), self.dim, "term dimension mismatch");
        assert_eq!(i.total_degree(), self.degree, "term degree mismatch");
        if c.is_zero() {
            return;
        }
        let cur = self.coeffs.remove(&i).unwrap_or_else(S::zero);
        let sum = cur + c;
        if !sum.is_zero() {
            self.coeffs.insert(i, sum);
        }
    }

    /// `self + other` (degrees and dimensions must agree).
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        out.accumulate(other);
        out
    }

    /// `self += other` in place.
    pub fn accumulate(&mut self, other: &Self) {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.dim, other.dim);
        for (i, c) in other.terms() {
            self.add_term(i.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        self.map_coeffs(|c| c.clone() * factor.clone())
    }

    /// Applies `f` to every coefficient, pruning any zeros it produces. The
    /// target scalar type may differ (e.g. rational data reused in floating
    /// point).
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> HomogeneousPoly<T> {
        let mut out = HomogeneousPoly::zero(self.dim, self.degree);
        for (i, c) in self.terms() {
            out.add_term(i.clone(), f(c));
        }
        out
    }

    /// The derivative `∂^j self`, of degree `degree − |j|` (zero if `|j|`
    /// exceeds the degree). Each monomial picks up the exact integer factor
    /// `i!/(i−j)!`.
    pub fn derivative(&self, j: &MultiIndex) -> Self {
        assert_eq!(j.dim(), self.dim);
        let dj = j.total_degree();
        let mut out = Self::zero(self.dim, self.degree.saturating_sub(dj));
        if dj > self.degree {
            return out;
        }
        for (i, c) in self.terms() {
            if let Some(target) = i.checked_sub(j) {
                let factor = S::from_bigint(&i.falling_ratio(j));
                out.add_term(target, c.clone() * factor);
            }
        }
        out
    }

    /// The product, a homogeneous polynomial of the summed degree (discrete
    /// convolution of coefficients).
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_term(i.add(j), a.clone() * b.clone());
            }
        }
        out
    }

    /// The pairing `⟨P, Q⟩ = P(∂) Q̄ |_{X=x0} = Σ_i i! · P_i · conj(Q_i)`.
    ///
    /// Zero when the degrees differ (a nonconstant homogeneous polynomial
    /// evaluated at the center, or an over-differentiated one). On a
    /// fixed-degree slice this is a positive-definite inner product in which
    /// distinct monomials are orthogonal.
    pub fn apolar_pairing(&self, other: &Self) -> S {
        assert_eq!(self.dim, other.dim);
        if self.degree != other.degree {
            return S::zero();
        }
        let mut out = S::zero();
        for (i, a) in self.terms() {
            let b = other.coeff(i);
            if b.is_zero() {
                continue;
            }
            out = out + S::from_bigint(&i.multi_factorial()) * a.clone() * b.conj();
        }
        out
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs
            .values()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    fn prune_below(&self, threshold: f64) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (i, c) in self.terms() {
            if c.magnitude() > threshold {
                out.add_term(i.clone(), c.clone());
            }
        }
        out
    }
}

fn fmt_terms<'a, S: Scalar + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a MultiIndex, &'a S)>,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in terms {
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "{c} X^{i}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<S: Scalar> fmt::Debug for HomogeneousPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms())
    }
}

/// A polynomial of bounded degree, stored as its homogeneous components in
/// the shifted monomials `(X − x0)^i`.
#[derive(Clone, PartialEq)]
pub struct GradedPoly<S> {
    dim: usize,
    center: Vec<f64>,
    /// `components[n]` is the degree-`n` slice; no trailing zero slices.
    components: Vec<HomogeneousPoly<S>>,
}

impl<S: Scalar> GradedPoly<S> {
    pub fn zero(dim: usize, center: Vec<f64>) -> Self {
        assert!(dim >= 1);
        assert_eq!(center.len(), dim, "center/dimension mismatch");
        GradedPoly {
            dim,
            center,
            components: Vec::new(),
        }
    }

    /// The single-term polynomial `c · (X − x0)^i`.
    pub fn monomial(center: Vec<f64>, i: MultiIndex, c: S) -> Self {
        let mut out = Self::zero(i.dim(), center);
        out.add_term(i, c);
        out
    }

    pub fn constant(dim: usize, center: Vec<f64>, c: S) -> Self {
        Self::monomial(center, MultiIndex::zero(dim), c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Expansion center; metadata only, it never enters the arithmetic.
    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Highest degree with a nonzero component (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The degree-`n` component, if nonzero.
    pub fn component(&self, n: usize) -> Option<&HomogeneousPoly<S>> {
        self.components.get(n).filter(|c| !c.is_zero())
    }

    /// The degree-`n` component, materializing a zero slice when absent.
    pub fn component_or_zero(&self, n: usize) -> HomogeneousPoly<S> {
        self.component(n)
            .cloned()
            .unwrap_or_else(|| HomogeneousPoly::zero(self.dim, n))
    }

    /// Iterates the nonzero components as `(degree, slice)`, ascending.
    pub fn nonzero_components(&self) -> impl Iterator<Item = (usize, &HomogeneousPoly<S>)> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    fn slot(&mut self, n: usize) -> &mut HomogeneousPoly<S> {
        while self.components.len() <= n {
            let deg = self.components.len();
            self.components.push(HomogeneousPoly::zero(self.dim, deg));
        }
        &mut self.components[n]
    }

    fn trim(&mut self) {
        while self.components.last().is_some_and(HomogeneousPoly::is_zero) {
            self.components.pop();
        }
    }

    /// Adds a homogeneous slice into the matching degree.
    pub fn add_component(&mut self, h: &HomogeneousPoly<S>) {
        assert_eq!(h.dim(), self.dim);
        self.slot(h.degree()).accumulate(h);
        self.trim();
    }

    pub fn add_term(&mut self, i: MultiIndex, c: S) {
        assert_eq!(i.dim(), self.dim);
        let n = i.total_degree();
        self.slot(n).add_term(i, c);
        self.trim();
    }

    /// Coefficient of `(X − x0)^i`, zero when absent.
    pub fn coeff(&self, i: &MultiIndex) -> S {
        match self.components.get(i.total_degree()) {
            Some(h) => h.coeff(i),
            None => S::zero(),
        }
    }

    /// Iterates all terms, by degree then lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.components.iter().flat_map(HomogeneousPoly::terms)
    }

    pub fn num_terms(&self) -> usize {
        self.components.iter().map(HomogeneousPoly::num_terms).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (_, h) in other.nonzero_components() {
            out.add_component(h);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        self.map_coeffs(|c| c.clone() * factor.clone())
    }

    /// Applies `f` to every coefficient (possibly changing the scalar type),
    /// pruning zeros.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedPoly<T> {
        let mut out = GradedPoly::zero(self.dim, self.center.clone());
        for (_, h) in self.nonzero_components() {
            out.add_component(&h.map_coeffs(&f));
        }
        out
    }

    /// The derivative `∂^j self`; each component drops by `|j|` degrees.
    pub fn derivative(&self, j: &MultiIndex) -> Self {
        let mut out = Self::zero(self.dim, self.center.clone());
        let dj = j.total_degree();
        for (n, h) in self.nonzero_components() {
            if n >= dj {
                out.add_component(&h.derivative(j));
            }
        }
        out
    }

    /// Truncation to degree ≤ `k`: drops every component above `k`. This is
    /// the Taylor projection in the shifted monomial basis.
    pub fn truncated(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.components.truncate(k + 1);
        out.trim();
        out
    }

    /// Largest coefficient magnitude across all components.
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.components
            .iter()
            .map(HomogeneousPoly::max_coeff_magnitude)
            .fold(0.0, f64::max)
    }

    /// Drops coefficients of magnitude ≤ `rel_tol` times the largest
    /// coefficient magnitude. A no-op for exact scalars (exact zeros are
    /// pruned eagerly) and for the zero polynomial.
    pub fn normalized(&self, rel_tol: f64) -> Self {
        let m = self.max_coeff_magnitude();
        if S::EXACT || m == 0.0 || !m.is_finite() {
            return self.clone();
        }
        let mut out = Self::zero(self.dim, self.center.clone());
        for (_, h) in self.nonzero_components() {
            out.add_component(&h.prune_below(rel_tol * m));
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for GradedPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_complex::Complex64;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn mi(c: &[usize]) -> MultiIndex {
        MultiIndex::new(c.to_vec())
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Builds a 2-variable graded polynomial from (exponents, num, den) terms.
    fn gpoly(terms: &[(&[usize], i64, i64)]) -> GradedPoly<Rational> {
        let dim = terms.first().map_or(2, |(i, _, _)| i.len());
        let mut out = GradedPoly::zero(dim, vec![0.0; dim]);
        for (i, n, d) in terms {
            out.add_term(mi(i), rat(*n, *d));
        }
        out
    }

    fn hpoly(terms: &[(&[usize], i64, i64)]) -> HomogeneousPoly<Rational> {
        let dim = terms[0].0.len();
        let deg = terms[0].0.iter().sum();
        let mut out = HomogeneousPoly::zero(dim, deg);
        for (i, n, d) in terms {
            out.add_term(mi(i), rat(*n, *d));
        }
        out
    }

    #[test]
    fn derivative_examples() {
        // ∂^(1,0) [x²y] = 2xy
        let p = hpoly(&[(&[2, 1], 1, 1)]);
        assert_eq!(p.derivative(&mi(&[1, 0])), hpoly(&[(&[1, 1], 2, 1)]));
        // ∂^(2,0) [x²y] = 2y
        assert_eq!(p.derivative(&mi(&[2, 0])), hpoly(&[(&[0, 1], 2, 1)]));
        // ∂^(0,2) [x²y] = 0
        assert!(p.derivative(&mi(&[0, 2])).is_zero());
        // over-differentiation collapses to the zero polynomial
        assert!(p.derivative(&mi(&[2, 2])).is_zero());
    }

    #[test]
    fn graded_derivative_examples() {
        // P = x³ + y: ∂^(1,0) P = 3x², ∂^(0,1) P = 1, ∂^(0,2) P = 0
        let p = gpoly(&[(&[3, 0], 1, 1), (&[0, 1], 1, 1)]);
        assert_eq!(p.derivative(&mi(&[1, 0])), gpoly(&[(&[2, 0], 3, 1)]));
        assert_eq!(p.derivative(&mi(&[0, 1])), gpoly(&[(&[0, 0], 1, 1)]));
        assert!(p.derivative(&mi(&[0, 2])).is_zero());
    }

    #[test]
    fn derivatives_compose() {
        let p = gpoly(&[
            (&[3, 1], 2, 1),
            (&[1, 2], -1, 3),
            (&[0, 4], 5, 2),
            (&[1, 0], 1, 1),
        ]);
        for i in crate::multiindex::enumerate_up_to(2, 3) {
            for j in crate::multiindex::enumerate_up_to(2, 3) {
                assert_eq!(
                    p.derivative(&i).derivative(&j),
                    p.derivative(&i.add(&j)),
                    "i={i:?} j={j:?}"
                );
            }
        }
    }

    #[test]
    fn truncation_examples_and_projection() {
        let p = gpoly(&[(&[3, 0], 1, 1), (&[1, 1], 2, 1), (&[0, 0], -1, 1)]);
        let t1 = p.truncated(1);
        assert_eq!(t1, gpoly(&[(&[0, 0], -1, 1)]));
        // idempotent, and truncation to the full degree is the identity
        assert_eq!(t1.truncated(1), t1);
        assert_eq!(p.truncated(3), p);
        assert_eq!(p.truncated(5), p);
        assert!(p.truncated(2).component(3).is_none());
    }

    #[test]
    fn product_examples() {
        // (xy) · (x + ... ) on single slices: (1,1) * (1,0) → (2,1)
        let a = hpoly(&[(&[1, 1], 2, 1)]);
        let b = hpoly(&[(&[1, 0], 1, 2), (&[0, 1], 3, 1)]);
        let got = a.product(&b);
        assert_eq!(got, hpoly(&[(&[2, 1], 1, 1), (&[1, 2], 6, 1)]));
        // cancellation prunes: (x − y)(x + y) = x² − y²
        let c = hpoly(&[(&[1, 0], 1, 1), (&[0, 1], -1, 1)]);
        let d = hpoly(&[(&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        let sq = c.product(&d);
        assert_eq!(sq, hpoly(&[(&[2, 0], 1, 1), (&[0, 2], -1, 1)]));
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn apolar_examples() {
        // ⟨x² − y², x² − y²⟩ = (2,0)!·1 + (0,2)!·1 = 4
        let p = hpoly(&[(&[2, 0], 1, 1), (&[0, 2], -1, 1)]);
        assert_eq!(p.apolar_pairing(&p), rat(4, 1));
        // distinct monomials are orthogonal
        let xy = hpoly(&[(&[1, 1], 1, 1)]);
        let x2 = hpoly(&[(&[2, 0], 1, 1)]);
        assert!(xy.apolar_pairing(&x2).is_zero());
        // degree mismatch pairs to zero
        let x = hpoly(&[(&[1, 0], 1, 1)]);
        assert!(x.apolar_pairing(&x2).is_zero());
    }

    /// Independent route for the pairing: differentiate by the left argument
    /// and read the constant term.
    fn apolar_by_differentiation(
        p: &HomogeneousPoly<Rational>,
        q: &HomogeneousPoly<Rational>,
    ) -> Rational {
        let mut out = Rational::zero();
        for (i, c) in p.terms() {
            let dq = q.derivative(i);
            if dq.degree() == 0 {
                out += c.clone() * dq.coeff(&MultiIndex::zero(p.dim()));
            }
        }
        out
    }

    fn arb_hpoly(d: usize, deg: usize) -> impl Strategy<Value = HomogeneousPoly<Rational>> {
        let slice = crate::multiindex::enumerate_degree(d, deg);
        let len = slice.len();
        proptest::collection::vec(-5i64..=5, len).prop_map(move |cs| {
            let mut out = HomogeneousPoly::zero(d, deg);
            for (i, c) in slice.iter().zip(cs) {
                out.add_term(i.clone(), rat(c, 1));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn apolar_matches_differentiation(
            p in arb_hpoly(2, 3),
            q in arb_hpoly(2, 3),
        ) {
            prop_assert_eq!(p.apolar_pairing(&q), apolar_by_differentiation(&p, &q));
        }

        #[test]
        fn apolar_positive_definite(p in arb_hpoly(3, 2)) {
            let v = p.apolar_pairing(&p);
            if p.is_zero() {
                prop_assert!(v.is_zero());
            } else {
                prop_assert!(v > Rational::zero());
            }
        }

        #[test]
        fn apolar_adjunction(
            p in arb_hpoly(2, 1),
            q in arb_hpoly(2, 2),
            r in arb_hpoly(2, 3),
        ) {
            // ⟨P, Q(∂)R⟩ == ⟨P·Q̄, R⟩ (all coefficients real here)
            let mut qdr = HomogeneousPoly::zero(2, 1);
            for (i, c) in q.terms() {
                qdr.accumulate(&r.derivative(i).scale(c));
            }
            let lhs = p.apolar_pairing(&qdr);
            let rhs = p.product(&q.map_coeffs(Scalar::conj)).apolar_pairing(&r);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pruning_keeps_no_exact_zeros() {
        let mut p = gpoly(&[(&[1, 0], 1, 1)]);
        p.add_term(mi(&[1, 0]), rat(-1, 1));
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        let a = gpoly(&[(&[2, 0], 1, 1), (&[1, 1], 2, 1)]);
        let b = gpoly(&[(&[2, 0], -1, 1)]);
        assert_eq!(a.add(&b).num_terms(), 1);
    }

    #[test]
    fn float_normalization_prunes_relative_noise() {
        let mut p: GradedPoly<Complex64> = GradedPoly::zero(2, vec![0.0, 0.0]);
        p.add_term(mi(&[2, 0]), Complex64::new(1.0, 0.0));
        p.add_term(mi(&[0, 2]), Complex64::new(1e-15, 0.0));
        let n = p.normalized(DEFAULT_REL_TOL);
        assert_eq!(n.num_terms(), 1);
        assert_eq!(n.coeff(&mi(&[2, 0])), Complex64::new(1.0, 0.0));
        // exact polynomials are untouched
        let q = gpoly(&[(&[0, 0], 1, 1000000000000i64)]);
        assert_eq!(q.normalized(DEFAULT_REL_TOL), q);
    }

    #[test]
    fn graded_accessors() {
        let p = gpoly(&[(&[0, 0], 1, 1), (&[2, 1], -3, 2)]);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coeff(&mi(&[2, 1])), rat(-3, 2));
        assert!(p.component(1).is_none());
        assert_eq!(p.component(3).unwrap().num_terms(), 1);
        let zero = GradedPoly::<Rational>::zero(2, vec![0.0, 0.0]);
        assert_eq!(zero.degree(), 0);
        assert!(zero.is_zero());
    }
}
