//! Maxwell multipole axes of real spherical functions, computed from the
//! roots of the associated Majorana polynomial, together with the
//! correlation functions of those axes for the isotropic Gaussian ensemble.
//!
//! The crate is organised bottom-up:
//!
//! * [`ensemble`]: reality-constrained coefficient vectors, Gaussian sampling
//!   and the JSON coefficient file format.
//! * [`sphere`]: stereographic geometry, spherical-harmonic synthesis and
//!   rotations (Wigner D on coefficients, SU(2) Möbius maps on points).
//! * [`majorana`]: polynomial construction, projective root finding and
//!   antipodal pairing into multipole axes.
//! * [`analytic`]: Gaussian correlation kernels, the k-point root density
//!   as a hafnian, the explicit two-point function and its large-degree limit.
//! * [`montecarlo`]: pair histograms of sampled multipoles and their
//!   comparison against the analytic curves.

pub mod analytic;
pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod majorana;
pub mod montecarlo;
pub mod precision;
pub mod quadrature;
pub mod rng;
pub mod sphere;

pub use analytic::{g_maximum, hannay_g, limit_deviation, rho2_explicit, rho_k, rho_sphere, rho_sphere_l2};
pub use ensemble::{read_coefficients, sample_coefficients, write_coefficients, CoefficientVector};
pub use error::{Error, Result};
pub use majorana::{multipoles, MajoranaPolynomial, MultipoleSet};
pub use montecarlo::{compare, estimate, ComparisonReport, PairHistogram};
pub use precision::{Precision, DEFAULT_BITS};
pub use sphere::{EulerZyz, ProjectivePoint, UnitAxis};

/// Largest supported degree.
pub const MAX_ELL: usize = 200;
