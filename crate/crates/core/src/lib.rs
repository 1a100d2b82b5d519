//! Pressing sequences on pseudo-graphs, the posets they induce, and
//! V-poset recognition.

pub mod autonomy;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod poset;
pub mod pressing;
pub mod random;
pub mod recognize;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Permutation};
pub use poset::{BuildTree, Poset, PosetStats};
pub use pressing::{PressingSequence, PseudoGraph};
