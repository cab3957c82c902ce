//! Correlation functions of the roots for the isotropic Gaussian ensemble.
//!
//! The general k-point density is computed by conditioning the Gaussian
//! field on vanishing at the k points and summing over pairings of the
//! conditioned derivatives. The two-point function also has a closed form,
//! evaluated in extended precision where it cancels badly.

pub mod bundle;
pub mod explicit;
pub mod kernels;
pub mod limit;

pub use bundle::{assemble_bundle, hafnian, rho_k, rho_k_with, CorrelationBundle};
pub use explicit::{
    one_point_sphere_density, required_precision, rho2_explicit, rho2_explicit_with, rho_sphere, rho_sphere_l2,
    rho_sphere_with, Rho2Scalars,
};
pub use kernels::{pair_kernels, scaled_pair_kernels, KernelValues};
pub use limit::{
    g_maximum, hannay_g, limit_deviation, limit_deviation_with, rho_sphere_argmax, sphere_integral, zone_average,
};
