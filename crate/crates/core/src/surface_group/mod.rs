//! Words in the fundamental group of a closed oriented surface, canonical
//! free-homotopy classes, and the grading group built on them.

mod conjugacy;
mod dehn;
mod grading;
mod word;

pub use conjugacy::{ConjClass, SurfaceBackend};
pub use dehn::{dehn_reduce, PieceMatch, Relator};
pub use grading::GradingElem;
pub use word::{GenKind, Letter, Word};

use crate::error::WordError;

/// Unique freely reduced form.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

/// Free reduction followed by stripping conjugating letters.
pub fn cyclic_reduce(w: &Word) -> Word {
    w.cyclic_reduce()
}

pub fn is_trivial(w: &Word, backend: &SurfaceBackend) -> Result<bool, WordError> {
    backend.is_trivial(w)
}

pub fn canonical_class(w: &Word, backend: &SurfaceBackend) -> Result<ConjClass, WordError> {
    backend.canonical_class(w)
}

pub(crate) fn least_rotation_word(w: &Word) -> Word {
    Word::new(conjugacy::least_rotation(w.letters()))
}
