//! Exact überhomology, double homology of moment-angle complexes and the
//! anti-star Mayer-Vietoris spectral sequence of finite simplicial complexes.

pub mod cache;
pub(crate) mod cube;
pub mod domination;
pub mod doubleh;
pub mod error;
pub mod exactla;
pub mod homology;
pub mod io;
pub mod mvss;
pub mod random;
pub mod scomplex;
pub mod tables;
pub mod uber;
pub mod verify;

pub use domination::{condom_check, domination_polynomial, CondomCheck, Graph, IntPolynomial};
pub use error::{Error, Result};
pub use exactla::{AbelianGroupClass, Coeffs, Matrix};
pub use homology::{homology, GradedGroup, SubsetHomologyTable};
pub use scomplex::{Simplex, SimplicialComplex, VertexSet};
pub use tables::{BigradedTable, TriGradedTable};
pub use uber::{uber_B, uberhomology, Bicolouring};
