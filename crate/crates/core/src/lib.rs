#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod coxeter;
mod error;
pub mod faces;
pub mod io;
pub mod linalg;
mod nodeset;
pub mod oracle;
pub mod renner;
pub mod weights;

pub use cartan::{CartanMatrix, CartanType, Realization, RootVector, WeightVector};
pub use coxeter::{Orbit, Side, WeylElement, WeylGroup, DEFAULT_ORBIT_CAP};
pub use error::{Error, Result};
pub use faces::{DominantPoint, EdgesAtMu, Face, FaceEnumeration, FundamentalFace, Stratum};
pub use nodeset::NodeSet;
pub use oracle::{compare_lattices, GeomFace, GeomLattice, OracleReport};
pub use renner::{CrossSectionEntry, GrmReport, RennerElement, RennerEnumeration, RennerMonoid};
pub use weights::{RealRoot, RootRegion, StringReport, TruncatedWeightSet};
