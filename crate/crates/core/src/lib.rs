//! Triangulations of 3-manifolds as face-pairing quotients, Pachner moves,
//! and rewriting of move paths so that no intermediate triangulation has an
//! edge of degree one.

pub mod census;
pub mod composite;
pub mod error;
pub mod explore;
pub mod io;
pub mod isosig;
pub mod moves;
pub mod perm;
pub mod skeleton;
pub mod triangulation;

pub use error::{GluingError, ParseError};
pub use isosig::{iso_signature, is_isomorphic, IsoSignature};
pub use moves::{Move, MoveOutcome, MovePath};
pub use perm::Perm;
pub use skeleton::{validate, Mode, Skeleton, ValidationReport};
pub use triangulation::{EdgeRef, FaceRef, Triangulation};
