//! Exact finite-field arithmetic: Zech-logarithm fields, canonical primitive
//! moduli, subfield coordinates and embeddings, quadratic extensions, and the
//! `F_p ⊂ ... ⊂ F_{q^{6n}}` tower.

pub mod coords;
pub mod embed;
pub mod linalg;
pub mod poly;
pub mod quad;
pub mod tower;
pub mod zech;

pub use coords::SubfieldDecomposition;
pub use embed::SubfieldEmbedding;
pub use quad::{QElt, QuadExt};
pub use tower::{FieldTower, TowerParams};
pub use zech::{Felt, ZechField};
