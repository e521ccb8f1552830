//! JSON documents for polynomials, operators and bases.
//!
//! The on-disk layer is deliberately dumb: documents mirror the in-memory
//! types field by field, every coefficient travels as a `re`/`im` pair of
//! [`CoeffRepr`] values (exact rationals as `"num/den"` strings, floats as
//! numbers), and every list is emitted in the canonical degree-then-lex
//! order, so serializing the same object twice yields identical bytes.

use crate::basis::QTBasis;
use crate::error::Error;
use crate::multiindex::MultiIndex;
use crate::operator::OperatorSpec;
use crate::polynomial::GradedPoly;
use crate::scalar::{CoeffRepr, Scalar};
use serde::{Deserialize, Serialize};

/// One monomial term of a polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub i: MultiIndex,
    pub re: CoeffRepr,
    pub im: CoeffRepr,
}

/// A polynomial in powers of `X − center`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub dimension: usize,
    pub center: Vec<f64>,
    pub terms: Vec<TermDoc>,
}

/// One Taylor term of one operator coefficient; the value is already
/// divided by `k!`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaylorTermDoc {
    pub k: MultiIndex,
    pub re: CoeffRepr,
    pub im: CoeffRepr,
}

/// The Taylor data of the coefficient attached to the derivative `∂^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientDoc {
    pub j: MultiIndex,
    pub taylor: Vec<TaylorTermDoc>,
}

/// An operator: order, truncation degree, expansion center and coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub dimension: usize,
    pub order: usize,
    pub degree: usize,
    pub center: Vec<f64>,
    pub coefficients: Vec<CoefficientDoc>,
}

/// A basis bundled with the operator it was built for and the seeds the
/// elements extend.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub operator: OperatorDoc,
    pub elements: Vec<PolyDoc>,
    pub seeds: Vec<PolyDoc>,
}

fn check_dim(dim: usize, center: &[f64]) -> Result<(), Error> {
    if dim < 1 {
        return Err(Error::Parse("dimension must be >= 1".to_owned()));
    }
    if center.len() != dim {
        return Err(Error::Parse(format!(
            "center has {} coordinates, expected {dim}",
            center.len()
        )));
    }
    Ok(())
}

fn check_index(i: &MultiIndex, dim: usize, what: &str) -> Result<(), Error> {
    if i.dim() != dim {
        return Err(Error::Parse(format!(
            "{what} {i} has {} components, expected {dim}",
            i.dim()
        )));
    }
    Ok(())
}

pub fn poly_to_doc<S: Scalar>(p: &GradedPoly<S>) -> PolyDoc {
    let terms = p
        .terms()
        .map(|(i, c)| {
            let (re, im) = c.to_repr();
            TermDoc {
                i: i.clone(),
                re,
                im,
            }
        })
        .collect();
    PolyDoc {
        dimension: p.dim(),
        center: p.center().to_vec(),
        terms,
    }
}

pub fn poly_from_doc<S: Scalar>(doc: &PolyDoc) -> Result<GradedPoly<S>, Error> {
    check_dim(doc.dimension, &doc.center)?;
    let mut p = GradedPoly::zero(doc.dimension, doc.center.clone());
    for t in &doc.terms {
        check_index(&t.i, doc.dimension, "term index")?;
        p.add_term(t.i.clone(), S::from_repr(&t.re, &t.im)?);
    }
    Ok(p)
}

pub fn operator_to_doc<S: Scalar>(op: &OperatorSpec<S>) -> OperatorDoc {
    let coefficients = op
        .coefficients()
        .map(|(j, c)| CoefficientDoc {
            j: j.clone(),
            taylor: c
                .terms()
                .map(|(k, v)| {
                    let (re, im) = v.to_repr();
                    TaylorTermDoc {
                        k: k.clone(),
                        re,
                        im,
                    }
                })
                .collect(),
        })
        .collect();
    OperatorDoc {
        dimension: op.dim(),
        order: op.order(),
        degree: op.degree(),
        center: op.center().to_vec(),
        coefficients,
    }
}

pub fn operator_from_doc<S: Scalar>(doc: &OperatorDoc) -> Result<OperatorSpec<S>, Error> {
    check_dim(doc.dimension, &doc.center)?;
    let mut coefficients = Vec::with_capacity(doc.coefficients.len());
    for cd in &doc.coefficients {
        check_index(&cd.j, doc.dimension, "derivative index")?;
        let mut taylor = GradedPoly::zero(doc.dimension, doc.center.clone());
        for t in &cd.taylor {
            check_index(&t.k, doc.dimension, "Taylor index")?;
            taylor.add_term(t.k.clone(), S::from_repr(&t.re, &t.im)?);
        }
        coefficients.push((cd.j.clone(), taylor));
    }
    OperatorSpec::new(
        doc.dimension,
        doc.order,
        doc.degree,
        doc.center.clone(),
        coefficients,
    )
}

pub fn basis_to_doc<S: Scalar>(basis: &QTBasis<S>) -> BasisDoc {
    BasisDoc {
        operator: operator_to_doc(basis.operator()),
        elements: basis.elements().iter().map(poly_to_doc).collect(),
        seeds: basis.seeds().iter().map(poly_to_doc).collect(),
    }
}

pub fn basis_from_doc<S: Scalar>(doc: &BasisDoc) -> Result<QTBasis<S>, Error> {
    let operator = operator_from_doc(&doc.operator)?;
    if doc.elements.len() != doc.seeds.len() {
        return Err(Error::Parse(format!(
            "{} elements but {} seeds",
            doc.elements.len(),
            doc.seeds.len()
        )));
    }
    let dim = operator.dim();
    let polys = |docs: &[PolyDoc]| -> Result<Vec<GradedPoly<S>>, Error> {
        docs.iter()
            .map(|pd| {
                if pd.dimension != dim {
                    return Err(Error::Parse(format!(
                        "polynomial dimension {} does not match the operator's {dim}",
                        pd.dimension
                    )));
                }
                poly_from_doc(pd)
            })
            .collect()
    };
    let elements = polys(&doc.elements)?;
    let seeds = polys(&doc.seeds)?;
    Ok(QTBasis::new(operator, elements, seeds))
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("invalid JSON: {e}"))
}

pub fn poly_to_json<S: Scalar>(p: &GradedPoly<S>) -> String {
    serde_json::to_string_pretty(&poly_to_doc(p)).expect("document serialization cannot fail")
}

pub fn poly_from_json<S: Scalar>(s: &str) -> Result<GradedPoly<S>, Error> {
    poly_from_doc(&serde_json::from_str(s).map_err(json_error)?)
}

pub fn operator_to_json<S: Scalar>(op: &OperatorSpec<S>) -> String {
    serde_json::to_string_pretty(&operator_to_doc(op)).expect("document serialization cannot fail")
}

pub fn operator_from_json<S: Scalar>(s: &str) -> Result<OperatorSpec<S>, Error> {
    operator_from_doc(&serde_json::from_str(s).map_err(json_error)?)
}

pub fn basis_to_json<S: Scalar>(basis: &QTBasis<S>) -> String {
    serde_json::to_string_pretty(&basis_to_doc(basis)).expect("document serialization cannot fail")
}

pub fn basis_from_json<S: Scalar>(s: &str) -> Result<QTBasis<S>, Error> {
    basis_from_doc(&serde_json::from_str(s).map_err(json_error)?)
}
