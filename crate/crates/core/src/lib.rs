//! Cotor groups of bigraded comodule algebras over `F₂[x₂]` and `F₂[x₁,x₂]/(x₁²)`,
//! computed by truncated linear algebra over GF(2).

pub mod catalog;
pub mod cotor;
pub mod gf2;
pub mod hopf;
pub mod poly;
pub mod report;
pub mod toda;

pub use cotor::{CotorTable, TriDegree, TwistingCochain};
pub use gf2::{BitMatrix, BitVector};
pub use hopf::{ComoduleAlgebra, HopfDescriptor, HopfFlavor};
pub use poly::{BiDegree, Degree, GradedVariable, Monomial, Poly, PolyAlgebra, PresentedAlgebra};
pub use report::Report;
