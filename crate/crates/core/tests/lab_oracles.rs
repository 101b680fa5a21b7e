use gmhd_core::diagnostics::homogeneous_sobolev_norm;
use gmhd_core::harness::{classifier_grid_violations, classifier_sample_points};
use gmhd_core::lab::{
    catalog, check_inequality, check_positivity, classify_regime, exponents_case2, fit_gronwall_constant,
    gronwall_check, log_inequality_ratio, positivity_integral, Corpus, InequalitySpec, Term, Verdict, Witness,
};
use gmhd_core::spectral::random::unit_band_limited;
use gmhd_core::spectral::{Grid, PhysicalField, SpectralField};
use num_complex::Complex64;

#[test]
fn positivity_p2_is_a_sobolev_norm() {
    // ∫(Λ^αω)ω = ‖Λ^{α/2}ω‖² by Parseval.
    let g = Grid::new(32).unwrap();
    for seed in 1..4 {
        let w = unit_band_limited(&g, 4, seed).unwrap();
        for alpha in [0.25, 1.0, 2.0] {
            let (integral, _) = positivity_integral(&w, alpha, 2).unwrap();
            let want = homogeneous_sobolev_norm(&w, 0.5 * alpha).powi(2);
            assert!((integral - want).abs() < 1e-12 * want, "{integral} vs {want}");
        }
    }
}

#[test]
fn positivity_single_mode_in_closed_form() {
    // ω = cos(3x + 4y): Λ^α ω = 5^α ω, so the integral is 5^α ∫ω⁴ = 5^α (2π)² 3/8.
    let g = Grid::new(64).unwrap();
    let w = PhysicalField::from_fn(&g, |x, y| (3.0 * x + 4.0 * y).cos()).to_spectral();
    let (integral, _) = positivity_integral(&w, 0.5, 4).unwrap();
    let want = 5f64.sqrt() * std::f64::consts::TAU.powi(2) * 0.375;
    assert!((integral - want).abs() < 1e-11 * want);
}

#[test]
fn positivity_rejects_bad_arguments() {
    let c = Corpus::new(16, 2, 3).unwrap();
    assert!(check_positivity(0.0, 2, &c).is_err());
    assert!(check_positivity(2.5, 2, &c).is_err());
    assert!(check_positivity(1.0, 3, &c).is_err());
    assert!(check_positivity(1.0, 4, &c).unwrap().passed);
}

#[test]
fn gronwall_constant_series_is_tight() {
    let t: Vec<f64> = (0..=20).map(|k| 0.05 * k as f64).collect();
    let zero = vec![0.0; t.len()];
    let r = gronwall_check(&t, &vec![2.0; t.len()], &zero, &zero).unwrap();
    assert!(r.passed && r.checked == t.len());
    assert!(r.margins.iter().all(|m| m.abs() < 1e-15));
}

#[test]
fn gronwall_exponential_saturates_to_second_order() {
    let mut gaps = Vec::new();
    for h in [0.02, 0.01] {
        let t: Vec<f64> = (0..=(1.0 / h) as usize).map(|k| h * k as f64).collect();
        let eta: Vec<f64> = t.iter().map(|x| x.exp()).collect();
        let r = gronwall_check(&t, &eta, &vec![0.0; t.len()], &vec![1.0; t.len()]).unwrap();
        assert!(r.passed && r.hypothesis.iter().all(|&h| h));
        // The discrete hypothesis has slack O(h²); the conclusion is exact.
        let slack = t
            .windows(2)
            .zip(eta.windows(2))
            .map(|(tw, ew)| 0.5 * (ew[0] + ew[1]) - (ew[1] - ew[0]) / (tw[1] - tw[0]))
            .fold(0.0, f64::max);
        gaps.push(slack);
        assert!(r.min_margin.abs() < 1e-14);
    }
    let order = (gaps[0] / gaps[1]).log2();
    assert!((order - 2.0).abs() < 0.05, "{order}");
}

#[test]
fn gronwall_stops_at_hypothesis_failure() {
    let t: Vec<f64> = (0..=10).map(|k| 0.1 * k as f64).collect();
    let eta: Vec<f64> = t.iter().map(|x| (2.0 * x).exp()).collect();
    let zero = vec![0.0; t.len()];
    let r = gronwall_check(&t, &eta, &zero, &vec![1.0; t.len()]).unwrap();
    assert!(!r.hypothesis[0]);
    assert_eq!(r.checked, 1);
    // Fitting the constant against g = 1 recovers growth rate 2 up to the
    // trapezoid defect.
    let c = fit_gronwall_constant(&t, &eta, &zero, &vec![1.0; t.len()]).unwrap();
    assert!(c > 1.95 && c < 2.0, "{c}");
    let phi = vec![c; t.len()];
    assert!(gronwall_check(&t, &eta, &zero, &phi).unwrap().hypothesis.iter().all(|&h| h));
}

#[test]
fn classifier_documented_points() {
    for (a, b, verdict, witnesses) in classifier_sample_points() {
        let v = classify_regime(a, b).unwrap();
        assert_eq!(v.verdict, verdict, "({a}, {b})");
        assert_eq!(v.witnesses, witnesses, "({a}, {b})");
    }
    assert_eq!(classify_regime(2.0, 0.0).unwrap().to_string(), "ProvenRegular [CaseIII]");
    assert_eq!(classify_regime(0.1, 1.0).unwrap().to_string(), "Open");
    let excl = classify_regime(0.0, 2.0).unwrap();
    assert!(excl.has(Witness::Thm2Conditional) && !excl.has(Witness::RemarkCombined));
    assert_eq!(excl.verdict, Verdict::ConditionallyRegular);
}

#[test]
fn classifier_grid_invariants() {
    assert_eq!(classifier_grid_violations(401).unwrap(), 0);
}

#[test]
fn exponent_sweep_and_worked_point() {
    for i in 1..=10 {
        let alpha = 0.045 * i as f64;
        for j in 1..=10 {
            let p1 = (1.0 + 0.3 * j as f64) / alpha;
            let e = exponents_case2(alpha, p1).unwrap();
            assert!(e.identity_residual() < 1e-12);
            assert!(e.a > 0.0 && e.a < 1.0 / 3.0);
            assert!(e.p > 1.0 / alpha && e.p < p1);
        }
    }
    let w = exponents_case2(0.4, 5.0).unwrap();
    for (got, want) in [(w.xi, 0.2), (w.eta, 0.5), (w.a, 1.0 / 7.0), (w.p, 25.0 / 9.0)] {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn l2_interpolation_is_sharp_on_single_modes() {
    // ‖Λf‖ ≤ ‖f‖^{1/2}‖Λ²f‖^{1/2}, with equality for a single wavevector.
    let spec = InequalitySpec::new(
        "h1_between_l2_h2",
        Term::Lambda(1.0),
        vec![(Term::Lambda(0.0), 0.5), (Term::Lambda(2.0), 0.5)],
    )
    .unwrap();
    let g = Grid::new(32).unwrap();
    for (k1, k2) in [(1, 0), (3, 4), (7, -2)] {
        let mut f = SpectralField::zeros(&g);
        f.set_coeff(k1, k2, Complex64::new(0.3, -0.4));
        assert!((spec.ratio(&f).unwrap() - 1.0).abs() < 1e-14);
    }
    let c = Corpus::new(32, 4, 20).unwrap();
    let report = check_inequality(&spec, &c).unwrap();
    assert!(report.max_ratio <= 1.0 + 1e-14);
}

#[test]
fn catalog_ratios_are_amplitude_invariant() {
    let g = Grid::new(32).unwrap();
    let f = unit_band_limited(&g, 4, 3).unwrap();
    let big = &f * 37.5;
    for spec in catalog() {
        let (a, b) = (spec.ratio(&f).unwrap(), spec.ratio(&big).unwrap());
        assert!((a - b).abs() < 1e-12 * a, "{}: {a} vs {b}", spec.name);
    }
}

#[test]
fn log_inequality_single_mode() {
    let g = Grid::new(32).unwrap();
    let mut w = SpectralField::zeros(&g);
    w.set_coeff(2, 1, Complex64::new(0.5, 0.0));
    let r = log_inequality_ratio(&w, &SpectralField::zeros(&g)).unwrap();
    assert!(r.is_finite() && r > 0.0);
}
