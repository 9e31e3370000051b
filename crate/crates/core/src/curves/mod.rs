//! Curves on punctured spheres in normal coordinates.

pub mod atlas;
pub mod chart;
pub mod chords;
pub mod engine;
pub mod generators;
pub mod triangulation;
pub mod word;

use serde::{Deserialize, Serialize};

pub use engine::SphereCurves;

/// A multicurve recorded by its intersection number with every edge of the
/// standard triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveSystem {
    coords: Vec<i64>,
}

impl CurveSystem {
    pub fn from_coords(coords: Vec<i64>) -> Self {
        CurveSystem { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Total weight, the number of edge crossings.
    pub fn weight(&self) -> i64 {
        self.coords.iter().sum()
    }
}
