//! Exact counting of terminating linear-recurrence sequences, with certified
//! spectral estimates and Frobenius-number tools.

pub mod ball;
pub mod census;
pub mod congeniality;
pub mod error;
pub mod exact;
pub mod frobenius;
pub mod recurrence;
pub mod report;
pub mod spectral;
pub mod verify;

pub use census::CountResult;
pub use error::{Error, Result};
pub use recurrence::{BasisTriple, IntSequence, RecurrenceParams};
