//! Generalized Boolean functions `f: {0,1}^n -> Z_q` with `q = 2^k`, their
//! exact Walsh-Hadamard spectra over `Z[zeta_q]`, and the weighted Cayley
//! graphs they define.
//!
//! ```
//! use gbent::graph::CayleyGraph;
//! use gbent::parse::parse_expression;
//! use gbent::transform::is_gbent;
//!
//! let f = parse_expression("x1 + 2*(x1*x2 (+) x3*x4)", 4, 2).unwrap();
//! assert!(is_gbent(&f).gbent);
//! assert!(CayleyGraph::new(f).butson_check().butson);
//! ```
//!
//! The guide in `book/` covers each module in turn; its snippets run as
//! doctests.

pub mod anf;
pub mod cyclotomic;
pub mod error;
pub mod function;
pub mod gbf;
pub mod graph;
pub mod index;
pub mod parse;
pub mod theorems;
pub mod transform;
pub mod weights;

pub use error::{Error, Result};
pub use function::{BooleanFunction, GeneralizedBooleanFunction, Limits};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/functions.md")]
    mod functions {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/theorems.md")]
    mod theorems {}
    #[doc = include_str!("../../../book/src/audit.md")]
    mod audit {}
}
