//! Exact-arithmetic engine for finite-dimensional left bialgebroids and
//! Hopf algebroids presented by structure constants.
//!
//! Everything is computed exactly over the rationals or a prime field:
//! balanced tensor quotients, Takeuchi products, translation maps, 2-cocycle
//! certification, cotwist deformation, jet spaces and differential-operator
//! duals. All structures are immutable once built and safe to share across
//! threads; the verification suites run their independent checks in parallel
//! when the `parallel` feature (default) is enabled.
//!
//! ```
//! use algebroid::fixtures;
//! use algebroid::jet::{jet_chain, pair_hopf_algebroid};
//!
//! // the pair Hopf algebroid of the dual numbers, fully verified
//! let b = fixtures::algebra_b2();
//! let l = pair_hopf_algebroid(&b).unwrap();
//! assert!(l.is_verified());
//! assert!(l.translation().is_ok());
//!
//! // its ideal chain stabilizes at zero after two steps
//! let chain = jet_chain(&b, 16).unwrap();
//! assert_eq!(chain.stabilized_at, 2);
//! assert_eq!(chain.stabilized().dim(), 0);
//! ```

pub mod algebra;
pub mod bialgebroid;
pub mod comodule;
pub mod cotwist;
pub mod diffop;
pub mod error;
pub mod fixtures;
pub mod jet;
pub mod linalg;
pub(crate) mod par;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use error::Error;
pub use scalar::{Field, Scalar};
