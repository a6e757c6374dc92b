//! Combinatorial Floer homology for pairs of transverse embedded curves on
//! the plane, sphere, annulus and torus.

// matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod fixtures;
pub mod floer;
pub mod gen;
pub mod geom;
pub mod io;
pub mod isotopy;
pub mod linalg;
pub mod lune;
pub mod reduction;
pub mod surface;
pub mod trace;
