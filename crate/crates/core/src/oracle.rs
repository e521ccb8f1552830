//! Independent validation route: dense exact linear algebra.
//!
//! The construction in [`crate::basis`] never forms a matrix; this module
//! does nothing but. It flattens the truncated map into a dense
//! `dim P_{p−γ} × dim P_p` matrix over the degree-then-lex monomial
//! ordering, extracts its nullspace with fraction-free integer elimination,
//! and compares spans by ranks. Agreement between the two routes is what the
//! randomized suites check; neither side calls into the other's algorithm.

use crate::error::Error;
use crate::multiindex::{dim_poly, enumerate_up_to, graded_index};
use crate::operator::OperatorSpec;
use crate::polynomial::GradedPoly;
use crate::scalar::{Rational, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

/// A dense row-major matrix over a scalar type.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// The truncated map as a dense matrix: column `c` holds the image of the
/// `c`-th monomial of `P_p`, expanded over the monomials of `P_{p−γ}`; both
/// sides use the degree-then-lex ordering.
pub fn assemble_matrix<S: Scalar>(op: &OperatorSpec<S>) -> DenseMatrix<S> {
    let d = op.dim();
    let mut m = DenseMatrix::zero(dim_poly(d, op.image_degree()), dim_poly(d, op.degree()));
    for (col, i) in enumerate_up_to(d, op.degree()).into_iter().enumerate() {
        let image = op
            .apply_quasi_trefftz(&GradedPoly::monomial(op.center().to_vec(), i, S::one()))
            .expect("column monomial is within the degree bound");
        for (s, v) in image.terms() {
            m.set(graded_index(s), col, v.clone());
        }
    }
    m
}

/// The coefficient vector of `poly` over the degree-then-lex monomial basis
/// of `P_p`.
pub fn coefficient_vector(poly: &GradedPoly<Rational>, p: usize) -> Vec<Rational> {
    assert!(
        poly.is_zero() || poly.degree() <= p,
        "degree above the space"
    );
    let mut v = vec![Rational::zero(); dim_poly(poly.dim(), p)];
    for (i, c) in poly.terms() {
        v[graded_index(i)] = c.clone();
    }
    v
}

/// Scales each row by the least common multiple of its denominators.
fn clear_denominators(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect()
}

/// Fraction-free Gauss–Jordan elimination (Bareiss/Montante condensation).
///
/// All intermediate entries are minors of the input, so the division by the
/// previous pivot is exact over the integers — no rational arithmetic, no
/// coefficient blowup beyond determinant size. On return every pivot entry
/// equals the final pivot value, which is also returned.
fn fraction_free_reduce(m: &mut [Vec<BigInt>]) -> (Vec<(usize, usize)>, BigInt) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut prev = BigInt::one();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..cols {
        let rank = pivots.len();
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let pivot_row = m[rank].clone();
        let piv = pivot_row[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let factor = std::mem::replace(&mut row[col], BigInt::zero());
            for (c, entry) in row.iter_mut().enumerate() {
                if c == col {
                    continue;
                }
                let num = &piv * &*entry - &factor * &pivot_row[c];
                debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                *entry = num / &prev;
            }
        }
        prev = piv;
        pivots.push((rank, col));
    }
    (pivots, prev)
}

fn rank_of_integer_rows(mut rows: Vec<Vec<BigInt>>) -> usize {
    fraction_free_reduce(&mut rows).0.len()
}

/// Rank of a rational matrix, computed exactly.
pub fn rank(m: &DenseMatrix<Rational>) -> usize {
    let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    rank_of_integer_rows(clear_denominators(&rows))
}

/// An exact basis of the (right) nullspace, one vector per non-pivot column,
/// normalized so the free coordinate is 1.
pub fn nullspace(m: &DenseMatrix<Rational>) -> Vec<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut im = clear_denominators(&rows);
    let (pivots, det) = fraction_free_reduce(&mut im);
    let det = Rational::from_integer(det);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::with_capacity(m.cols() - pivots.len());
    for f in 0..m.cols() {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![Rational::zero(); m.cols()];
        v[f] = Rational::one();
        for &(r, c) in &pivots {
            let entry = &im[r][f];
            if !entry.is_zero() {
                v[c] = -Rational::from_integer(entry.clone()) / det.clone();
            }
        }
        out.push(v);
    }
    out
}

/// Whether the span of the polynomials `a` equals the span of the raw
/// vectors `b` inside `P_p`, decided by three exact rank computations.
pub fn spans_equal(a: &[GradedPoly<Rational>], b: &[Vec<Rational>], p: usize) -> bool {
    let a_rows: Vec<Vec<Rational>> = a.iter().map(|e| coefficient_vector(e, p)).collect();
    if let Some(first) = a_rows.first().or_else(|| b.first()) {
        let n = first.len();
        assert!(
            a_rows.iter().chain(b.iter()).all(|r| r.len() == n),
            "span vectors of mismatched length"
        );
    }
    let ra = rank_of_integer_rows(clear_denominators(&a_rows));
    let rb = rank_of_integer_rows(clear_denominators(b));
    if ra != rb {
        return false;
    }
    let mut all = a_rows;
    all.extend(b.iter().cloned());
    rank_of_integer_rows(clear_denominators(&all)) == ra
}

/// Result of checking one polynomial against the kernel condition.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    /// Largest image-coefficient magnitude relative to the polynomial's own
    /// largest coefficient magnitude.
    pub residual: f64,
    pub pass: bool,
    pub p: usize,
    pub gamma: usize,
}

/// Checks `T_{p−γ}[L poly] = 0`. Exact scalars must vanish identically; the
/// floating instantiation passes when the relative residual is ≤ `tol`.
pub fn verify_quasi_trefftz<S: Scalar>(
    op: &OperatorSpec<S>,
    poly: &GradedPoly<S>,
    tol: f64,
) -> Result<VerifyReport, Error> {
    let image = op.apply_quasi_trefftz(poly)?;
    let scale = poly.max_coeff_magnitude();
    let raw = image.max_coeff_magnitude();
    let residual = if scale > 0.0 { raw / scale } else { raw };
    let pass = if S::EXACT {
        image.is_zero()
    } else {
        residual <= tol
    };
    Ok(VerifyReport {
        residual,
        pass,
        p: op.degree(),
        gamma: op.order(),
    })
}
