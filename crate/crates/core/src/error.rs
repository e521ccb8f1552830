//! Error type shared across the crate.

use crate::multiindex::MultiIndex;
use thiserror::Error;

/// Everything that can go wrong while building or applying quasi-Trefftz data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Every coefficient of the nominal order vanishes at the expansion
    /// center, so the principal part is empty there. `effective_order` is the
    /// largest order (possibly 0) whose coefficients do not all vanish at the
    /// center, if any do not.
    #[error("no order-{order} coefficient is nonzero at the center{}",
        .effective_order.map(|g| format!("; the largest order with a nonzero coefficient there is {g}"))
            .unwrap_or_default())]
    DegenerateOrder {
        order: usize,
        effective_order: Option<usize>,
    },

    /// A polynomial exceeds the degree the operator data is truncated to.
    #[error("polynomial degree {degree} exceeds the supported degree {max}")]
    DegreeTooHigh { degree: usize, max: usize },

    /// The simple per-axis solver was requested but the pivot has no axis on
    /// which it strictly dominates the rest of the principal support.
    #[error("the pivot has no dominating axis; use the general solver")]
    SimpleCaseUnavailable,

    /// A seed polynomial has a monomial inside the pivot cone, where the
    /// correction space lives; such seeds are not part of the complement.
    #[error("seed monomial {index} (degree {degree}) lies in the pivot cone")]
    SeedNotInU { degree: usize, index: MultiIndex },

    /// Structurally invalid operator data (dimension mismatches, empty
    /// support, out-of-range coefficient orders, ...).
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}
