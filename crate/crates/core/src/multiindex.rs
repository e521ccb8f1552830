//! Multi-index arithmetic and enumeration.
//!
//! A multi-index is an exponent vector in `N^d`; it names both monomials
//! `X^i = x_1^{i_1} ... x_d^{i_d}` and partial derivatives `∂^i`. Everything
//! downstream (polynomial storage, solver sweep order, matrix column layout)
//! leans on the lexicographic order and on the enumeration of fixed-degree
//! slices defined here, so those are pinned once in this module.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exponent vector of a monomial or a partial derivative.
///
/// `Ord` is lexicographic from the first component, which is the linear order
/// the triangular solvers sweep in. Comparisons only make sense between
/// indices of the same dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Wraps an exponent vector. The dimension is its length and must be ≥ 1.
    pub fn new(components: Vec<usize>) -> Self {
        assert!(!components.is_empty(), "multi-index dimension must be >= 1");
        MultiIndex(components)
    }

    /// The zero index (the constant monomial, or the identity "derivative").
    pub fn zero(dim: usize) -> Self {
        Self::new(vec![0; dim])
    }

    /// The unit index along `axis` (0-based).
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut c = vec![0; dim];
        c[axis] = 1;
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    /// Sum of the components, `|i|`.
    pub fn total_degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// `i! = i_1! · i_2! ··· i_d!` as an exact integer.
    pub fn multi_factorial(&self) -> BigInt {
        let mut out = BigInt::one();
        for &c in &self.0 {
            for f in 2..=c {
                out *= f;
            }
        }
        out
    }

    /// `j!/(j−i)! = ∏_g j_g (j_g−1) ··· (j_g−i_g+1)` where `self = j`.
    ///
    /// This is the integer factor produced by differentiating `X^j` `i` times;
    /// it vanishes exactly when `i ≤ j` fails componentwise.
    pub fn falling_ratio(&self, i: &MultiIndex) -> BigInt {
        debug_assert_eq!(self.dim(), i.dim());
        let mut out = BigInt::one();
        for (&j_g, &i_g) in self.0.iter().zip(&i.0) {
            if i_g > j_g {
                return BigInt::ZERO;
            }
            for f in (j_g - i_g + 1)..=j_g {
                out *= f;
            }
        }
        out
    }

    /// Componentwise sum.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, or `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `self ≤ other` (the divisibility order on monomials).
    pub fn leq(&self, other: &MultiIndex) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = usize;
    fn index(&self, g: usize) -> &usize {
        &self.0[g]
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (g, c) in self.0.iter().enumerate() {
            if g > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Strict lexicographic order: true iff `a` comes before `b`.
///
/// Translation-invariant: adding the same index to both sides preserves it.
pub fn lex_less(a: &MultiIndex, b: &MultiIndex) -> bool {
    debug_assert_eq!(a.dim(), b.dim());
    a < b
}

fn binomial(n: usize, k: usize) -> usize {
    num_integer::binomial(n as u128, k as u128) as usize
}

/// Number of monomials of exact degree `n` in `d` variables: `C(n+d−1, d−1)`.
pub fn dim_homogeneous(d: usize, n: usize) -> usize {
    assert!(d >= 1);
    binomial(n + d - 1, d - 1)
}

/// Number of monomials of degree ≤ `p` in `d` variables: `C(p+d, d)`.
pub fn dim_poly(d: usize, p: usize) -> usize {
    assert!(d >= 1);
    binomial(p + d, d)
}

/// All multi-indices of dimension `d` and total degree exactly `n`, in
/// lexicographically increasing order.
pub fn enumerate_degree(d: usize, n: usize) -> Vec<MultiIndex> {
    assert!(d >= 1);
    let mut out = Vec::with_capacity(dim_homogeneous(d, n));
    let mut cur = vec![0usize; d];
    fill_slice(&mut out, &mut cur, 0, n);
    out
}

fn fill_slice(out: &mut Vec<MultiIndex>, cur: &mut Vec<usize>, g: usize, rem: usize) {
    if g + 1 == cur.len() {
        cur[g] = rem;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for v in 0..=rem {
        cur[g] = v;
        fill_slice(out, cur, g + 1, rem - v);
    }
}

/// All multi-indices of dimension `d` and total degree ≤ `p`, ordered by
/// degree first and lexicographically within each degree.
pub fn enumerate_up_to(d: usize, p: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(dim_poly(d, p));
    for n in 0..=p {
        out.extend(enumerate_degree(d, n));
    }
    out
}

/// Position of `s` within the lex-ordered slice of indices of degree `|s|`,
/// counting from 0. Agrees with `enumerate_degree(d, |s|).position(s)` but is
/// computed combinatorially.
pub fn slice_numbering(s: &MultiIndex) -> usize {
    let d = s.dim();
    let mut rank = 0;
    let mut rem = s.total_degree();
    for g in 0..d.saturating_sub(1) {
        for v in 0..s[g] {
            rank += dim_homogeneous(d - g - 1, rem - v);
        }
        rem -= s[g];
    }
    rank
}

/// Position of `s` in the degree-then-lex ordering of all indices of degree
/// ≤ `|s|` (the flat coordinate used for matrix rows and columns).
pub fn graded_index(s: &MultiIndex) -> usize {
    let n = s.total_degree();
    let offset = if n == 0 { 0 } else { dim_poly(s.dim(), n - 1) };
    offset + slice_numbering(s)
}
