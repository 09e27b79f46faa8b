//! Refined tropical enumerative invariants of h-transverse toric surfaces,
//! computed by enumerating floor diagrams.
//!
//! The crate is organised bottom-up: [`laurent`] provides exact Laurent
//! polynomials in `q^{1/2}`, [`polygon`] the h-transverse lattice polygons,
//! [`diagram`] floor diagrams and their enumeration, [`marking`] markings and
//! pairing multiplicities, [`invariant`] the invariants themselves,
//! [`coeff`] the closed-form coefficient machinery, [`polyfit`] exact
//! polynomial interpolation and [`templates`] the template decomposition.

pub mod cache;
pub mod coeff;
pub mod diagram;
pub mod error;
pub mod identities;
pub mod invariant;
pub mod laurent;
pub mod marking;
pub mod polyfit;
pub mod polygon;
pub mod templates;

pub use diagram::{Elevator, Floor, FloorDiagram};
pub use error::{Error, Result};
pub use invariant::{Engine, Pairing};
pub use laurent::{quantum_integer, Exponent, LaurentPoly};
pub use polygon::{HTransversePolygon, LatticeStats};
