//! Numerical machinery for circle analysis at desk scale: spectral operators
//! on periodic functions, Zygmund/Besov-type seminorms, the group of circle
//! diffeomorphisms with log-derivative calculus, Beurling-Ahlfors extensions
//! with dilatation decay diagnostics, a planar Beltrami solver with conformal
//! welding and boundary log-derivative maps, and explicit Schwarzian decay
//! bounds driven by a scale recurrence.

pub mod bounds;
pub mod config;
pub mod diffeo;
pub mod error;
pub mod extend;
pub mod fixtures;
pub mod grid;
pub mod jet;
pub mod report;
pub mod solve;
pub mod spaces;
pub mod spectral;
pub mod suites;
pub mod tolerances;
pub mod util;
pub mod weld;

pub use error::{Error, Result};
pub use spectral::{FourierCoefficients, PeriodicFunction};
