//! Exact combinatorial invariants of reductive automorphism groups of
//! smooth complete toric and toroidal spherical embeddings.
//!
//! Everything is computed over arbitrary-precision integers (and exact
//! rationals where division is unavoidable); no floating point is used
//! anywhere.

pub mod cone;
pub mod corpus;
pub mod demazure;
pub mod error;
pub mod fan;
pub mod generate;
pub mod io;
pub mod lattice;
pub mod levi;
pub mod linear;
pub mod matrix;
pub mod spherical;

pub use cone::{cones_tile_region, dual_description, Cone, HalfspaceCone};
pub use corpus::{
    bundled_fans, bundled_spherical, corpus_files, golden_value, rank_one_wonderful,
    synthetic_spherical,
};
pub use demazure::{
    check_independent, check_triple, demazure_roots, phi, positive_system, roots_oracle,
    CheckReport, DemazureRoot, Positivity, RootData,
};
pub use error::{Error, Result};
pub use fan::{Fan, OrbitPoset, ValidationReport, Violation};
pub use generate::{hirzebruch, product, projective_space, random_smooth_complete_fan, star_subdivide};
pub use io::{
    colored_fan_report_value, colored_fan_value, demazure_value, fan_value, levi_value,
    linear_value, nonlinear_value, orbits_value, parse_fan, parse_input, parse_spherical,
    root_data_value, spherical_value, to_pretty, validation_value, Input,
};
pub use lattice::{
    annihilator, dual_evaluation, evaluate_against, is_direct_sum, preimage_lattice, Sublattice,
};
pub use levi::{
    a_orbit_poset, check_color_independence, check_empty_color_face, check_horospherical,
    colored_fan, colored_fans_match_up_to_relabeling, levi_invariants, AOrbitPoset, ColoredCone,
    ColoredFan, LeviInvariants,
};
pub use linear::{
    fiber_fan, linear_colored_fan, linear_levi_invariants, phi_containment_check,
    restricted_roots, sigma_preservation_check, LinearLeviInvariants, RestrictedRoots,
};
pub use matrix::{Int, IntMatrix};
pub use spherical::{SphericalData, WonderfulClosureLattice};
