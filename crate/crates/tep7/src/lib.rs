//! Exact reconstruction of degree-4 parametric ideal solutions of the
//! Tarry-Escott problem of degree seven.
//!
//! The crate has four layers:
//!
//! * [`poly`], [`gcd`], [`resultant`], [`text`]: an exact sparse
//!   multivariate polynomial kernel over arbitrary-precision integers, with
//!   the subresultant resultant/discriminant and square-extraction machinery
//!   the construction needs;
//! * [`tep`]: the domain model with 8+8 integer instances, parametric
//!   solution families, multigrade verification and canonicalization;
//! * [`pipeline`]: the construction engine that walks from the base
//!   solution through both discriminant-vanishing stages to assembled
//!   quartic families, and enumerates every branch;
//! * [`verifier`] / [`fixtures`]: stored display constants and independent
//!   re-verification (regression against the stored displays, randomized
//!   numeric identity checks, instance scans).

pub mod fixtures;
pub mod gcd;
pub mod monomial;
pub mod pipeline;
pub mod poly;
pub mod resultant;
pub mod tep;
pub mod text;
pub mod vars;
pub mod verifier;

pub use gcd::{poly_sqrt, squarefree_split, squarefree_split_all, RationalPoly};
pub use monomial::Monomial;
pub use poly::{Poly, PolyError};
pub use resultant::discriminant;
pub use tep::{HalfFamily, HalfInstance, SolutionFamily, TepInstance};
pub use vars::VarId;
