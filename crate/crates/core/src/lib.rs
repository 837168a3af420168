//! Exact combinatorics of real central hyperplane arrangements.
//!
//! The crate builds the face lattice of an arrangement from exact cone
//! feasibility, assembles the Salvetti complex as a regular CW complex with
//! integer incidence numbers, forms the symmetric-group quotient chain
//! complex twisted by the sign representation over `F_p`, and computes
//! homology together with the maps induced by subarrangement inclusions.
//!
//! The built-in families are the braid arrangement (`x_i = x_j`) and the
//! center-of-mass arrangement (equal averages of two `l`-element subsets).

pub mod action;
pub mod arrangement;
pub mod braidsym;
pub mod covector;
pub mod error;
pub mod exactla;
pub mod homology;
pub mod salvetti;
pub mod sign;

pub use action::{EquivariantSalvetti, Permutation, TwistedQuotientComplex, Twist};
pub use arrangement::{Arrangement, Family, Hyperplane};
pub use covector::{ComplexCovector, ComplexSign, FaceLattice, SignVector};
pub use error::{Error, Result};
pub use exactla::{MatrixFp, MatrixQ, Rational};
pub use homology::{ChainComplexFp, ChainMapFp, HomologySummary};
pub use salvetti::{CWData, SalCell};
pub use sign::Sign;
