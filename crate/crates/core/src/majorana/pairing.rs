use serde::Serialize;

use crate::error::{Error, Result};
use crate::sphere::{angle, inverse_stereographic, neg_vec, normalize_vec, ProjectivePoint, UnitAxis, Vec3};

pub const DEFAULT_PAIRING_TOL: f64 = 1e-6;

/// The ℓ multipole axes of one function with the diagnostics of their
/// extraction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultipoleSet {
    pub ell: usize,
    pub axes: Vec<UnitAxis>,
    /// Largest angle between a root and the antipode of its partner, radians.
    pub pairing_residual: f64,
    /// Largest relative polynomial residual over the roots.
    pub root_residual: f64,
}

impl MultipoleSet {
    /// The 2ℓ signed points `+u_a, -u_a`, interleaved so that indices `2a`
    /// and `2a + 1` are antipodes of each other.
    pub fn signed_points(&self) -> Vec<Vec3> {
        self.axes
            .iter()
            .flat_map(|a| {
                let v = a.vector();
                [v, neg_vec(&v)]
            })
            .collect()
    }
}

/// Matches each root with the antipode of another, greedily by smallest
/// mismatch over all pairs, and averages each matched pair into an axis.
pub fn pair_antipodes(roots: &[ProjectivePoint], tol: f64) -> Result<MultipoleSet> {
    if roots.len() % 2 == 1 {
        return Err(Error::OddRootCount(roots.len()));
    }
    let pts: Vec<Vec3> = roots.iter().map(inverse_stereographic).collect();
    let n = pts.len();
    let mut cand = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (i, p) in pts.iter().enumerate() {
        let anti = neg_vec(p);
        for (j, q) in pts.iter().enumerate().skip(i + 1) {
            cand.push((angle(&anti, q), i, j));
        }
    }
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used = vec![false; n];
    let mut axes = Vec::with_capacity(n / 2);
    let mut residual: f64 = 0.0;
    for (mismatch, i, j) in cand {
        if used[i] || used[j] {
            continue;
        }
        used[i] = true;
        used[j] = true;
        residual = residual.max(mismatch);
        let (a, b) = (&pts[i], &pts[j]);
        let mid = normalize_vec(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]]);
        axes.push(UnitAxis::new(mid)?);
        if axes.len() == n / 2 {
            break;
        }
    }
    if residual.is_nan() || residual > tol {
        return Err(Error::PairingResidual { residual, tol });
    }
    Ok(MultipoleSet {
        ell: n / 2,
        axes,
        pairing_residual: residual,
        root_residual: 0.0,
    })
}

/// Largest angle between matched axes of two sets of equal size, matching
/// greedily by smallest angle. Infinite when the sizes differ.
pub fn axis_set_distance(a: &[UnitAxis], b: &[UnitAxis]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut cand = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            cand.push((x.angle_to(y), i, j));
        }
    }
    cand.sort_by(|p, q| p.0.total_cmp(&q.0));
    let (mut ua, mut ub) = (vec![false; a.len()], vec![false; b.len()]);
    let mut worst: f64 = 0.0;
    for (d, i, j) in cand {
        if !ua[i] && !ub[j] {
            ua[i] = true;
            ub[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}
