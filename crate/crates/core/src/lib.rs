//! Exact truncated vector lattices on `Q^n`: truncations, multi-truncations,
//! prime spectra with the hull-kernel topology, and the representation
//! `f ↦ f̂` together with executable audits of its properties.

pub mod audit;
pub mod dsl;
pub mod error;
pub mod exact;
pub mod interp;
pub mod linalg;
pub mod multi;
pub mod report;
pub mod repr;
pub mod sample;
pub mod spectrum;
pub mod truncation;

pub use error::{Error, Result};
pub use exact::{ExtRat, Rat, RatVec};
pub use multi::MultiTruncation;
pub use report::{Report, Status};
pub use truncation::{Truncation, WeightTruncation};
