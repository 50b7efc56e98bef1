//! Exact slope calculus on `QP¹` and a certifier for satellite L-space knots.

pub mod certifier;
pub mod gluing;
pub mod knot_models;
pub mod patterns;
pub mod projective_sets;
pub mod schema;
pub mod slopes;

pub use certifier::{
    certified_twist_range, certify_cable, certify_satellite, check_lemma, choose_lemma_params,
    homology_order, necessary_check, replay, twisted_surgery_coefficient, Certificate, Check,
    LemmaParams, Verdict,
};
pub use gluing::{meridian_longitude_swap, GluingMap};
pub use knot_models::{cable_is_lspace_exact, lspace_slope_set, torus_knot, KnotFacts};
pub use patterns::{
    one_bridge_braid, pattern_twisted_facts, torus_pattern, BraidWord, PatternFacts,
};
pub use projective_sets::{covers_circle, rr_shape_check, Arc, SetError, SlopeSet};
pub use schema::{parse_companion_str, parse_pattern_str, SchemaError};
pub use slopes::{farey_enumerate, slope_ccw, slope_det, Slope, SlopeError};
