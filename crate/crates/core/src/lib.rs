//! Exact finite-field machinery for determinantal Cremona transformations.

pub mod budget;
pub mod detmap;
pub mod error;
pub mod field;
pub mod gallery;
pub mod groebner;
pub mod invariants;
pub mod matrix;
pub mod monomial;
pub mod points;
pub mod poly;
pub mod report;
pub mod upoly;

pub use budget::Budget;
pub use detmap::{DetMap, SystemMap};
pub use error::{Error, Result};
pub use field::{Field, FieldCfg, FiniteField, Fp, Fq, Q};
pub use groebner::{GbLimits, GroebnerBasis, HilbertData, Ideal};
pub use matrix::{Matrix, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use points::{enumerate_projective_points, ProjPoint};
pub use poly::{parse_poly, Poly};
