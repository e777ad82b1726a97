//! Classical and affine Artin groups realized inside braid groups of planar
//! orbifolds.
//!
//! The crate is organized bottom-up:
//!
//! * [`coxeter`] builds Coxeter diagrams and the Artin presentations they define.
//! * [`braid`] models orbifold braid groups `Z_n(L)`: words, reductions, a finite
//!   presentation and replayable triviality certificates.
//! * [`weyl`] holds the signed-permutation and affine Weyl images of braids.
//! * [`garside`] solves the word problem for the spherical types `A`, `B`, `D`.
//! * [`embeddings`] realizes each Artin group inside its orbifold braid group.
//! * [`action`] computes the action on the fundamental group of the punctured
//!   orbifold, up to inner automorphisms.
//! * [`render`] draws braid words as SVG or ASCII pictures.

pub mod action;
pub mod braid;
pub mod cli;
pub mod coxeter;
pub mod embeddings;
pub mod garside;
pub mod render;
pub mod weyl;

pub use braid::{BraidLetter, BraidWord, Generator, Certificate, OrbifoldSignature, SpecialPoint, Side};
pub use coxeter::{ArtinLetter, ArtinPresentation, ArtinWord, CoxeterDiagram, Family};
pub use embeddings::{EmbeddingSpec, QuotientClass, Table1Row};
pub use garside::{GarsideGroup, GarsideNF};
pub use weyl::{AffineWeylElement, SignedPermutation, WeylImage};
