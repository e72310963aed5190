//! The labeled braidoid data model, realization, closure, and word moves.

pub mod close;
pub mod extract;
pub mod moves;
pub mod realize;
pub mod word;

pub use close::close;
pub use extract::extract_word;
pub use realize::{realize, Realization, Strand, StrandEnd};
pub use word::{BraidoidEvent, CrossSign, Endpoint, Label, LabeledBraidoid, WordError};
