//! Computer algebra for the `BP_*`-module structure of `BP_*(BZ/2)^{(x)k}`
//! modulo higher filtration.
//!
//! - [`f2poly`]: sparse polynomials over F2.
//! - [`symfun`]: monomial symmetric, complete homogeneous and 2-power sums.
//! - [`plj`]: the action polynomials `p_{l,j}` computed several ways.
//! - [`zmodule`]: the `v_j`-action on classes `z_I`.
//! - [`dickson`]: Dickson invariants and Steenrod squares.
//! - [`verify`]: identity suites shared by the CLI and the tests.

pub mod combinat;
pub mod dickson;
pub mod error;
pub mod f2poly;
pub mod plj;
pub mod symfun;
pub mod verify;
pub mod zmodule;

pub use error::{Error, Result};
pub use f2poly::{BitMatrix, ExponentVector, F2Poly};
pub use plj::PljQuery;
