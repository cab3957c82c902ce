//! Majorana polynomial of a coefficient vector, its projective roots, and
//! their antipodal pairing into Maxwell multipole axes.

pub mod pairing;
pub mod polynomial;
pub mod roots;

pub use pairing::{axis_set_distance, pair_antipodes, MultipoleSet, DEFAULT_PAIRING_TOL};
pub use polynomial::{build_polynomial, MajoranaPolynomial};
pub use roots::{find_roots, find_roots_using, find_roots_with, RootMethod, Roots, DEFAULT_ROOT_TOL};

use crate::ensemble::CoefficientVector;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub root: f64,
    pub pairing: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root: DEFAULT_ROOT_TOL,
            pairing: DEFAULT_PAIRING_TOL,
        }
    }
}

pub fn multipoles(cv: &CoefficientVector) -> Result<MultipoleSet> {
    multipoles_with(cv, &Tolerances::default())
}

pub fn multipoles_with(cv: &CoefficientVector, tol: &Tolerances) -> Result<MultipoleSet> {
    let poly = build_polynomial(cv)?;
    let roots = find_roots_with(&poly, tol.root)?;
    let mut set = pair_antipodes(&roots.points, tol.pairing)?;
    set.root_residual = roots.residual;
    Ok(set)
}
