//! Stereographic geometry, spherical-harmonic synthesis and rotations.

pub mod geometry;
pub mod harmonics;
pub mod rotation;

pub use geometry::{
    angle, antipode, chordal_distance, from_polar, inverse_stereographic, neg as neg_vec, normalize as normalize_vec,
    stereographic, to_polar, ProjectivePoint, UnitAxis, Vec3,
};
pub use harmonics::{evaluate_function, spherical_harmonic, synthesize};
pub use rotation::{apply_mobius, mobius_of_rotation, rotate_coefficients, EulerZyz, Mobius};
