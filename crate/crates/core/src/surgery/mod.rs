//! Framed surgery descriptions and the constructions that feed them:
//! Kirby moves, lens spaces, reflection pairings, connected sums and
//! reframing by attached scallops.

pub mod consum;
pub mod lens;
pub mod link;
pub mod reflection;
pub mod reframe;

pub use consum::{bridge, connected_sum, connected_sum_via_bridge};
pub use lens::{lens_from_multipliers, multipliers_from_lens, LensParams};
pub use link::{h1_from_link, rolfsen_twist, simplify, slam_dunk, Component, ComponentKind, FramedLink, Framing};
pub use reflection::{edge_component, face_component, reflection_link, scallop, ReflectionDiagram};
pub use reframe::{attach_scallops, bilink_framings};
