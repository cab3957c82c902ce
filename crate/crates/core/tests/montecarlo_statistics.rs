use multipole_core::analytic::rho_sphere_argmax;
use multipole_core::majorana::MultipoleSet;
use multipole_core::montecarlo::{compare, density_check, estimate, uniformity};
use multipole_core::sphere::UnitAxis;

#[test]
fn quadrupole_histogram_passes_chi_square() {
    let hist = estimate(2, 200_000, 36, 99).unwrap();
    let report = compare(&hist).unwrap();
    assert!(report.p_value > 1e-3, "{report:?}");
    assert_eq!(hist.total_count(), 200_000 * 4 * 2);
}

#[test]
fn multipole_points_are_uniform_on_the_sphere() {
    for ell in [1, 5] {
        let check = density_check(ell, 10_000, 4).unwrap();
        assert!(check.passes(1e-3), "ell {ell}: {check:?}");
    }
}

#[test]
fn all_axes_along_z_are_rejected() {
    let ms = MultipoleSet {
        ell: 3,
        axes: vec![UnitAxis::new([0.0, 0.0, 1.0]).unwrap(); 3],
        pairing_residual: 0.0,
        root_residual: 0.0,
    };
    let pts: Vec<_> = (0..1000).flat_map(|_| ms.signed_points()).collect();
    assert!(!uniformity(&pts).passes(1e-3));
}

#[test]
fn peak_bin_exceeds_one_at_moderate_degree() {
    let ell = 25;
    let hist = estimate(ell, 600, 30, 13).unwrap();
    let peak = rho_sphere_argmax(ell, 0.05, 1.5).unwrap();
    let b = hist.bin_of(peak);
    let (g, se) = (hist.g_hat()[b], hist.stderr()[b]);
    assert!(g - 3.0 * se > 1.0, "bin {b}: {g} ± {se}");
}
