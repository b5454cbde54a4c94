//! Link diagrams, the Kauffman bracket and Khovanov homology, together with
//! the simplicial machinery (nerves, Moore complexes, subdivision, Dold-Kan)
//! used to reinterpret that homology.
//!
//! All arithmetic is exact. Linear algebra is generic over [`Ring`]; the
//! aliases below fix the integer types used by the public pipeline.

pub mod bracket;
pub mod error;
pub mod fuzz;
pub mod homology;
pub mod khovanov;
pub mod laurent;
pub mod link;
pub mod matrix;
pub mod moves;
pub mod scalar;
pub mod category;
pub mod dold_kan;
pub mod simplicial;
pub mod snf;
pub mod verify;

pub use error::{Error, Result};
pub use link::{parse_pd, LinkDiagram, Sign};
pub use homology::{BigradedHomology, ChainComplex, HomologyGroup};
pub use khovanov::{khovanov_homology, KhovanovComplex, SignConvention};
pub use laurent::{Laurent, Poincare, Variable};
pub use matrix::Matrix;
pub use moves::{apply_move, enumerate_moves, Move, MoveKind};
pub use scalar::Ring;
pub use simplicial::{FinSimplicialModule, FinSimplicialSet};
pub use snf::{smith_normal_form, SmithForm};

/// Exact integers used for polynomial coefficients.
pub type Int = num_bigint::BigInt;
/// Laurent polynomial with exact integer coefficients.
pub type LaurentPoly = Laurent<Int>;
/// Two-variable Poincaré series with exact integer coefficients.
pub type PoincarePoly = Poincare<Int>;
/// Machine-integer matrix; Smith reduction falls back to `BigInt` on overflow.
pub type ZMatrix = Matrix<i64>;
