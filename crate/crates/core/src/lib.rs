//! Exact multidimensional residues and Tate-extension Lie cocycles computed
//! as traces of banded lattice operators.

pub mod chains;
pub mod cocycle;
pub mod combinat;
pub mod cube;
pub mod io;
pub mod laurent;
pub mod liealg;
pub mod matrix;
pub mod opalg;
pub mod random;
pub mod rational;
pub mod residue;
pub mod suites;

pub use cocycle::{phi, verify_cocycle, virasoro_table, CocycleError, CocycleInput, CocycleReport, Flavor};
pub use cube::{CubeElement, CubeError, SignString, Slot};
pub use io::IoError;
pub use laurent::{parse_poly, parshin_oracle, Exponent, GLaurent, LaurentError, LaurentPoly, ParseError};
pub use liealg::{LieAlgebra, LieElement, LieError};
pub use matrix::QMatrix;
pub use opalg::{Idempotents, LatticeOperator, OpError};
pub use rational::{format_q, parse_q, QStr, Q};
pub use residue::{residue, ResidueError, ResidueReport};
