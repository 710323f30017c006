//! Exact computer algebra for multiparameter quantum groups, bosonizations of
//! pre-Nichols algebras and their Hopf 2-cocycle deformations.

pub mod cartan;
pub mod cocycles;
pub mod datum;
pub mod error;
pub mod exactnum;
pub mod ideals;
pub mod linalg;
pub mod qgroups;
pub mod racks;
pub mod smash;
pub mod yd;

pub use error::{Error, Result};
pub use exactnum::{q_binom, q_int, sqrt_of, RadicalTable, Rational};
