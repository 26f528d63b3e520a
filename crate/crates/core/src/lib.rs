//! Exact arithmetic in the group algebra Q[F] of a free group of finite rank,
//! and tools for studying centralizers there.
//!
//! The building blocks are reduced words ([`words`]), sparse algebra elements
//! ([`algebra`]) and gradings by rational weights ([`grading`]). On top of
//! them sit the factorization machinery for the classes T(r) ([`tsets`]),
//! Stallings folding ([`subgroup`]), exact hulls ([`hull`]), bounded
//! centralizer computation and structural analysis ([`commute`]), the
//! tensor-rank lemma ([`tensorlemma`]) and truncated Magnus series
//! ([`series`]).

pub mod algebra;
pub mod cli;
pub mod commute;
pub mod grading;
pub mod hull;
pub mod linalg;
pub mod parse;
pub mod scalar;
pub mod series;
pub mod subgroup;
pub mod tensorlemma;
pub mod tsets;
pub mod words;

pub use algebra::Element;
pub use grading::{Degree, Weighting};
pub use scalar::Scalar;
pub use words::{Alphabet, Letter, Word};
