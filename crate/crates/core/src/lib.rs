//! Coarse geometry of augmented marking complexes on the surfaces
//! `S_{1,1}`, `S_{0,4}` and `S_{0,5}`, with brute-force oracles.

pub mod baseline;
pub mod coarse;
pub mod curves;
pub mod error;
pub mod experiments;
pub mod farey;
pub mod fit;
pub mod fixtures;
pub mod horoball;
pub mod io;
pub mod markings;
pub mod regions;
pub mod surface;

pub use error::{Error, Result};
pub use horoball::HoroballVertex;
pub use surface::{Subsurface, SurfaceKind};
