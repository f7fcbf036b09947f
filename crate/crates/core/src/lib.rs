//! Bitwist 3-manifolds from face-pairings on faceted 3-balls.

pub mod cli;
pub mod complex;
pub mod engine;
pub mod error;
pub mod examples;
pub mod generators;
pub mod heegaard;
pub mod invariants;
pub mod omap;
pub mod pairing;
pub mod surgery;

pub use complex::{barycentric, dual_cap, validate, FacetedBall};
pub use engine::{bitwist, build, certify_manifold, dual_link_check, quotient, subdivide};
pub use error::{Error, Result};
pub use heegaard::{build_surface, cylinders, heegaard_diagram, heegaard_report, twist_word};
pub use invariants::{h1, pi1, AbelianInvariants, GroupPresentation};
pub use pairing::{attach_multipliers, edge_cycles, validate_pairing, FacePairing, Instance};
pub use surgery::{
    attach_scallops, connected_sum, h1_from_link, lens_from_multipliers, multipliers_from_lens, reflection_link, rolfsen_twist,
    scallop, simplify, slam_dunk, FramedLink, Framing,
};
