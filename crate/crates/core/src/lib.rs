//! Computable algebra of plane-curve monodromy.
//!
//! Everything is checked in exact representations: the action of Dehn twists on
//! homology together with a mod-`n` framing correction, and the Artin action of
//! braids on free groups. Such checks are necessary conditions for the
//! corresponding mapping-class-group statements, not proofs of them.

pub mod affine;
pub mod braid;
pub mod d5;
pub mod error;
pub mod lattice;
pub mod lonne;
pub mod mapclass;
pub mod obstruction;
pub mod orbits;
pub mod relations;
pub mod symplectic;
pub mod winding;

pub use affine::{twist_map, AffineSymplecticMap};
pub use d5::{johnson_cases, load_fixture, parse_fixture, run_recipes, shipped_fixture, CurveFixture, FixtureDocument};
pub use error::{Error, Result};
pub use mapclass::{apply_word, evaluate, is_torelli, relation_holds, stabilizes, TwistWord};
pub use orbits::{beauville_check, schreier_sims, sp_order, PermutationGroup};
pub use symplectic::{genus_of_degree, intersection, FramedCurveClass, HomologyClass, Provenance, SurfaceModel};
pub use winding::{arf, spin_census, subsurface_sum, QuadraticForm, WindingFunction};
