//! Shared fixtures for the integration suites: named operators, float
//! conversions, and a reproducible random-operator generator.
#![allow(dead_code)]

use num_traits::{One, ToPrimitive};
use qtrefftz::multiindex::{enumerate_degree, enumerate_up_to};
use qtrefftz::{Complex64, GradedPoly, MultiIndex, OperatorSpec, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn mi(c: &[usize]) -> MultiIndex {
    MultiIndex::new(c.to_vec())
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn origin(d: usize) -> Vec<f64> {
    vec![0.0; d]
}

pub fn constant(d: usize, v: Rational) -> GradedPoly<Rational> {
    GradedPoly::constant(d, origin(d), v)
}

pub fn monomial(d: usize, i: &[usize], v: Rational) -> GradedPoly<Rational> {
    GradedPoly::monomial(origin(d), mi(i), v)
}

/// `Σ_k ∂_k^γ` in `d` variables — the Laplacian for `γ = 2`.
pub fn power_laplacian(d: usize, gamma: usize, p: usize) -> OperatorSpec<Rational> {
    let coeffs = (0..d).map(|k| {
        let mut j = vec![0usize; d];
        j[k] = gamma;
        (mi(&j), constant(d, Rational::one()))
    });
    OperatorSpec::new(d, gamma, p, origin(d), coeffs).unwrap()
}

pub fn laplace(p: usize) -> OperatorSpec<Rational> {
    power_laplacian(2, 2, p)
}

/// `Δ + 1` in two variables.
pub fn helmholtz(p: usize) -> OperatorSpec<Rational> {
    OperatorSpec::new(
        2,
        2,
        p,
        origin(2),
        [
            (mi(&[2, 0]), constant(2, Rational::one())),
            (mi(&[0, 2]), constant(2, Rational::one())),
            (mi(&[0, 0]), constant(2, Rational::one())),
        ],
    )
    .unwrap()
}

/// `∂_t − ∂_x²` with variables ordered `(t, x)`.
pub fn heat(p: usize) -> OperatorSpec<Rational> {
    OperatorSpec::new(
        2,
        2,
        p,
        origin(2),
        [
            (mi(&[1, 0]), constant(2, Rational::one())),
            (mi(&[0, 2]), constant(2, -Rational::one())),
        ],
    )
    .unwrap()
}

/// `∂_x² + x ∂_y²`: the second coefficient vanishes at the center, so only
/// `∂_x²` enters the principal part there.
pub fn tricomi(p: usize) -> OperatorSpec<Rational> {
    OperatorSpec::new(
        2,
        2,
        p,
        origin(2),
        [
            (mi(&[2, 0]), constant(2, Rational::one())),
            (mi(&[0, 2]), monomial(2, &[1, 0], Rational::one())),
        ],
    )
    .unwrap()
}

pub fn to_float_op(op: &OperatorSpec<Rational>) -> OperatorSpec<Complex64> {
    op.map_coeffs(rational_to_complex)
}

pub fn to_float_poly(p: &GradedPoly<Rational>) -> GradedPoly<Complex64> {
    p.map_coeffs(rational_to_complex)
}

fn rational_to_complex(c: &Rational) -> Complex64 {
    Complex64::new(c.to_f64().expect("fixture coefficients fit in f64"), 0.0)
}

/// Order-2 principal supports in three variables whose pivot dominates on no
/// axis, forcing the general lexicographic sweep.
pub fn no_axis_support_order2() -> Vec<MultiIndex> {
    vec![mi(&[1, 1, 0]), mi(&[1, 0, 1]), mi(&[0, 1, 1])]
}

/// Order-3 variant of [`no_axis_support_order2`].
pub fn no_axis_support_order3() -> Vec<MultiIndex> {
    vec![mi(&[2, 1, 0]), mi(&[2, 0, 1]), mi(&[0, 2, 1])]
}

pub fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    let num = if nonzero {
        let n = rng.random_range(1..=4i64);
        if rng.random_bool(0.5) {
            n
        } else {
            -n
        }
    } else {
        rng.random_range(-4..=4i64)
    };
    rat(num, rng.random_range(1..=3i64))
}

/// A random polynomial of degree ≤ `max_deg` with small rational
/// coefficients, each monomial populated with probability one half.
pub fn random_poly(rng: &mut ChaCha8Rng, d: usize, max_deg: usize) -> GradedPoly<Rational> {
    let mut out = GradedPoly::zero(d, origin(d));
    for i in enumerate_up_to(d, max_deg) {
        if rng.random_bool(0.5) {
            out.add_term(i, random_rational(rng, false));
        }
    }
    out
}

/// A random Taylor polynomial of degree ≤ `max_deg` with small rational
/// coefficients; `nonzero_constant` forces a unit-scale constant term.
fn random_taylor(
    rng: &mut ChaCha8Rng,
    d: usize,
    max_deg: usize,
    nonzero_constant: bool,
) -> GradedPoly<Rational> {
    let mut out = GradedPoly::zero(d, origin(d));
    if nonzero_constant {
        out.add_term(MultiIndex::zero(d), random_rational(rng, true));
    }
    for i in enumerate_up_to(d, max_deg) {
        if i.total_degree() == 0 && nonzero_constant {
            continue;
        }
        if rng.random_bool(0.4) {
            out.add_term(i, random_rational(rng, false));
        }
    }
    out
}

/// A random non-degenerate operator of order `gamma` truncated at degree `p`.
///
/// When `principal_support` is given, exactly those indices carry the
/// order-`gamma` terms (each with a nonzero value at the center); otherwise a
/// random nonempty subset of the full order-`gamma` slice is used. `dense`
/// additionally populates every lower-order derivative index.
pub fn random_operator(
    rng: &mut ChaCha8Rng,
    d: usize,
    gamma: usize,
    p: usize,
    dense: bool,
    principal_support: Option<&[MultiIndex]>,
) -> OperatorSpec<Rational> {
    let q = p - gamma;
    let taylor_cap = q.min(2);
    let mut coeffs: Vec<(MultiIndex, GradedPoly<Rational>)> = Vec::new();

    let top_slice = enumerate_degree(d, gamma);
    let selected: Vec<MultiIndex> = match principal_support {
        Some(sup) => sup.to_vec(),
        None => {
            let mut chosen: Vec<MultiIndex> = top_slice
                .iter()
                .filter(|_| rng.random_bool(if dense { 1.0 } else { 0.5 }))
                .cloned()
                .collect();
            if chosen.is_empty() {
                let k = rng.random_range(0..top_slice.len());
                chosen.push(top_slice[k].clone());
            }
            chosen
        }
    };
    for j in &selected {
        coeffs.push((j.clone(), random_taylor(rng, d, taylor_cap, true)));
    }

    for j in enumerate_up_to(d, gamma) {
        if j.total_degree() == gamma {
            continue;
        }
        if dense || rng.random_bool(0.4) {
            let mut taylor = random_taylor(rng, d, taylor_cap, dense);
            if dense && taylor.is_zero() {
                taylor.add_term(MultiIndex::zero(d), random_rational(rng, true));
            }
            if !taylor.is_zero() {
                coeffs.push((j, taylor));
            }
        }
    }

    OperatorSpec::new(d, gamma, p, origin(d), coeffs).expect("generated operator is valid")
}
