//! Numerical toolkit for non-commutative measures on the free disk system.
//!
//! A measure is stored as a table of moments `μ(L^α)` and `μ(L^{α*})` over
//! words of bounded length. From such a table the crate builds truncated GNS
//! spaces with their row isometries, co-embeddings between dominated
//! measures, Herglotz series and Clark measures, and Wittstock
//! decompositions of complex functionals.
//!
//! ```
//! use nclab::measures::{is_positive, PositiveNCMeasure, PSD_TOL};
//! use nclab::transforms::{cayley, herglotz_series};
//!
//! let xi = PositiveNCMeasure::dirac_xi(8);
//! assert!(is_positive(&xi, 4, PSD_TOL).unwrap().positive);
//! let b = cayley(&herglotz_series(&xi, 8).unwrap()).unwrap();
//! assert_eq!(b.nonzero_terms(1e-12).len(), 1);
//! ```

pub mod classify;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod fock;
pub mod gns;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod scenarios;
pub mod transforms;
pub mod words;

pub use error::{Error, Result};
pub use measures::{ComplexNCMeasure, NcFunctional, PositiveNCMeasure};
pub use transforms::FreeSeries;
pub use words::Word;
