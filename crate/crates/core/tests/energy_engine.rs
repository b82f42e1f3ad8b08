use std::f64::consts::PI;
use std::path::Path;

use casimir_core::engine::{abel_plana_phase, mode_sum};
use casimir_core::*;

fn geom(eps: f64) -> CylinderGeometry {
    CylinderGeometry::from_gap(1.0, eps).unwrap()
}

fn spec(rel_tol: f64) -> NumericsSpec {
    NumericsSpec::with_rel_tol(rel_tol)
}

fn scalar(cfg: ScalarConfig) -> FieldConfig {
    cfg.into()
}

#[test]
fn matches_high_precision_oracle() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/energies.csv");
    let text = std::fs::read_to_string(&path).expect("oracle table present");
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let cfg: FieldConfig = f[0].parse().unwrap();
        let a1: f64 = f[1].parse().unwrap();
        let eps: f64 = f[2].parse().unwrap();
        let expected: f64 = f[4].parse().unwrap();
        let g = CylinderGeometry::from_gap(a1, eps).unwrap();
        let got = match f[3] {
            "zero_t" => zero_temperature_energy(&g, cfg, &spec(1e-10)).unwrap(),
            "classical_T1" => classical_term(&g, cfg, 1.0, &spec(1e-10)).unwrap(),
            other => panic!("unknown kind {other}"),
        };
        let rel = (got.value - expected).abs() / expected.abs();
        assert!(rel < 1e-9, "{line}: got {} (rel {rel:e})", got.value);
        assert!(
            (got.value - expected).abs() <= got.err_estimate.max(1e-12 * expected.abs()) * 10.0,
            "{line}: error estimate {} too optimistic for deviation {}",
            got.err_estimate,
            got.value - expected
        );
        rows += 1;
    }
    assert!(rows >= 8);
}

#[test]
fn sign_law() {
    for &eps in &[0.02, 0.1, 0.5, 1.0] {
        let g = geom(eps);
        for cfg in FieldConfig::ALL {
            let e = zero_temperature_energy(&g, cfg, &spec(1e-6)).unwrap().value;
            let c = classical_term(&g, cfg, 1.0, &spec(1e-6)).unwrap().value;
            if cfg.is_attractive() {
                assert!(e < 0.0 && c < 0.0, "{cfg} eps={eps}: {e} {c}");
            } else {
                assert!(e > 0.0 && c > 0.0, "{cfg} eps={eps}: {e} {c}");
            }
        }
    }
}

#[test]
fn em_channels_add_exactly() {
    let g = geom(0.2);
    let s = spec(1e-7);
    type Observable = Box<dyn Fn(FieldConfig) -> f64>;
    let observables: Vec<(&str, Observable)> = vec![
        (
            "zero_t",
            Box::new(move |c| zero_temperature_energy(&g, c, &s).unwrap().value),
        ),
        (
            "classical",
            Box::new(move |c| classical_term(&g, c, 0.7, &s).unwrap().value),
        ),
        (
            "matsubara",
            Box::new(move |c| free_energy_matsubara(&g, c, 0.4, &s).unwrap().value),
        ),
        (
            "poisson",
            Box::new(move |c| thermal_correction_poisson(&g, c, 0.2, &s).unwrap().value),
        ),
    ];
    for (name, obs) in &observables {
        for (em, [a, b]) in [
            (EmKind::PcPc, [ScalarConfig::DD, ScalarConfig::NN]),
            (EmKind::PcIp, [ScalarConfig::DN, ScalarConfig::ND]),
        ] {
            let total = obs(FieldConfig::Em(em));
            let sum = obs(a.into()) + obs(b.into());
            assert!(
                (total - sum).abs() <= 1e-12 * total.abs(),
                "{name} {em:?}: {total} vs {sum}"
            );
        }
    }
}

#[test]
fn classical_term_is_linear_in_temperature() {
    let g = geom(0.1);
    for cfg in ScalarConfig::ALL {
        let one = classical_term(&g, cfg.into(), 1.0, &spec(1e-8))
            .unwrap()
            .value;
        for &t in &[0.25, 3.0, 40.0] {
            let v = classical_term(&g, cfg.into(), t, &spec(1e-8))
                .unwrap()
                .value;
            assert!((v - t * one).abs() <= 1e-14 * v.abs(), "{cfg} T={t}");
        }
    }
}

#[test]
fn vanishes_for_distant_outer_cylinder() {
    let near = zero_temperature_energy(&geom(1.0), scalar(ScalarConfig::DD), &spec(1e-6))
        .unwrap()
        .value;
    let mut prev = near.abs();
    for &eps in &[10.0, 100.0, 1000.0] {
        let v = zero_temperature_energy(&geom(eps), scalar(ScalarConfig::DD), &spec(1e-6))
            .unwrap()
            .value;
        assert!(v.abs() < prev);
        prev = v.abs();
    }
    assert!(prev < 1e-4 * near.abs(), "{prev} vs {near}");
}

#[test]
fn magnitude_decreases_with_gap() {
    for cfg in ScalarConfig::ALL {
        for t in [0.0, 0.5] {
            let mut prev = f64::INFINITY;
            for &eps in &[0.05, 0.1, 0.2, 0.4, 0.8] {
                let v = free_energy(&geom(eps), cfg.into(), t, &spec(1e-6))
                    .unwrap()
                    .value
                    .abs();
                assert!(v < prev, "{cfg} T={t} eps={eps}");
                prev = v;
            }
        }
    }
}

#[test]
fn single_and_double_forms_agree() {
    for (eps, cfg) in [
        (0.2, ScalarConfig::DD),
        (0.1, ScalarConfig::DN),
        (0.3, ScalarConfig::NN),
    ] {
        let g = geom(eps);
        let a = zero_temperature_energy(&g, cfg.into(), &spec(1e-8)).unwrap();
        let b = zero_temperature_energy_double_form(&g, cfg.into(), &spec(1e-6)).unwrap();
        assert!(
            (a.value - b.value).abs() <= a.err_estimate + b.err_estimate,
            "{cfg} eps={eps}: {} vs {}",
            a.value,
            b.value
        );
    }
}

#[test]
fn error_estimates_are_honest() {
    for (eps, cfg) in [
        (0.1, ScalarConfig::DD),
        (0.3, ScalarConfig::DN),
        (0.05, ScalarConfig::NN),
    ] {
        let g = geom(eps);
        for &tol in &[1e-5, 1e-7] {
            let coarse = zero_temperature_energy(&g, cfg.into(), &spec(tol)).unwrap();
            let fine = zero_temperature_energy(&g, cfg.into(), &spec(tol / 2.0)).unwrap();
            assert!((coarse.value - fine.value).abs() < coarse.err_estimate.max(1e-15));
            let coarse = classical_term(&g, cfg.into(), 1.0, &spec(tol)).unwrap();
            let fine = classical_term(&g, cfg.into(), 1.0, &spec(tol / 2.0)).unwrap();
            assert!((coarse.value - fine.value).abs() < coarse.err_estimate.max(1e-15));
        }
    }
}

#[test]
fn low_temperature_free_energy_approaches_zero_temperature() {
    let g = geom(0.1);
    let f = free_energy_matsubara(&g, scalar(ScalarConfig::DD), 0.01, &spec(1e-8)).unwrap();
    let e = zero_temperature_energy(&g, scalar(ScalarConfig::DD), &spec(1e-8)).unwrap();
    assert!(((f.value - e.value) / e.value).abs() < 1e-3);
    assert!(f.value < e.value, "thermal correction is negative for DD");
}

#[test]
fn zero_temperature_routes_to_zero_t() {
    let g = geom(0.1);
    let r = free_energy(&g, scalar(ScalarConfig::ND), 0.0, &spec(1e-8)).unwrap();
    assert_eq!(r.regime, EnergyRegime::ZeroT);
    let e = zero_temperature_energy(&g, scalar(ScalarConfig::ND), &spec(1e-8)).unwrap();
    assert_eq!(r.value, e.value);
    assert!(free_energy(&g, scalar(ScalarConfig::ND), -1.0, &spec(1e-8)).is_err());
    assert!(matches!(
        classical_term(&g, scalar(ScalarConfig::ND), 0.0, &spec(1e-8)),
        Err(CasimirError::InvalidInput(_))
    ));
}

#[test]
fn poisson_identity_nn_wider_gap() {
    let g = geom(0.2);
    let cfg = scalar(ScalarConfig::NN);
    let s = spec(1e-8);
    let f = free_energy_matsubara(&g, cfg, 0.3, &s).unwrap();
    let e = zero_temperature_energy(&g, cfg, &s).unwrap();
    let p = thermal_correction_poisson(&g, cfg, 0.3, &s).unwrap();
    assert_eq!(p.regime, EnergyRegime::PoissonLowT);
    assert!(((e.value + p.value - f.value) / f.value).abs() < 1e-4);
}

#[test]
fn poisson_warns_at_high_temperature() {
    let g = geom(0.5);
    let r = thermal_correction_poisson(&g, scalar(ScalarConfig::NN), 1.5, &spec(1e-5));
    let warnings = match r {
        Ok(r) => r.warnings,
        Err(CasimirError::ToleranceNotMet { partial }) => partial.warnings,
        Err(e) => panic!("{e}"),
    };
    assert!(warnings.iter().any(|w| w.contains("slowly")));
}

#[test]
fn tolerance_failure_carries_partial_result() {
    let g = geom(0.1);
    let starved = NumericsSpec {
        rel_tol: 1e-13,
        max_intervals: 3,
        ..NumericsSpec::default()
    };
    match zero_temperature_energy(&g, scalar(ScalarConfig::DD), &starved) {
        Err(CasimirError::ToleranceNotMet { partial }) => {
            assert!(partial.value < 0.0 && partial.value.is_finite());
            assert!(partial.err_estimate > 0.0);
        }
        other => panic!("expected a tolerance failure, got {other:?}"),
    }
    assert!(matches!(
        zero_temperature_energy(&g, scalar(ScalarConfig::DD), &spec(0.0)),
        Err(CasimirError::InvalidInput(_))
    ));
}

#[test]
fn thermal_leading_terms() {
    let d = thermal_leading(BoundaryCondition::Dirichlet, 1.0, 0.01).unwrap();
    assert!((d.value - PI * 1e-4 / (6.0 * 0.01f64.ln())).abs() < 1e-18);
    assert!((d.value + 1.137e-5).abs() < 1e-8);
    assert_eq!(d.regime, EnergyRegime::ThermalLeading);
    let n1 = thermal_leading(BoundaryCondition::Neumann, 2.0, 0.01)
        .unwrap()
        .value;
    let n2 = thermal_leading(BoundaryCondition::Neumann, 2.0, 0.02)
        .unwrap()
        .value;
    assert!((n2 / n1 - 16.0).abs() < 1e-12);
    assert!(n1 > 0.0);
    assert!(matches!(
        thermal_leading(BoundaryCondition::Dirichlet, 1.0, 1.0),
        Err(CasimirError::Domain { .. })
    ));
}

#[test]
fn neumann_inner_thermal_correction_scales_as_t4() {
    let g = geom(0.1);
    let s = spec(1e-9);
    let cfg = scalar(ScalarConfig::NN);
    let lead = thermal_leading(BoundaryCondition::Neumann, 1.0, 0.01)
        .unwrap()
        .value;
    let p = thermal_correction_poisson(&g, cfg, 0.01, &s).unwrap();
    let ratio = p.value / lead;
    assert!(ratio > 0.5 && ratio < 1.5, "ratio {ratio}");
}

#[test]
fn abel_plana_phase_limits() {
    let w = 1e-6;
    let d0 = abel_plana_phase(0, w, BoundaryCondition::Dirichlet).unwrap();
    assert!(d0 < 0.0 && ((d0 - PI / w.ln()) / d0).abs() < 0.1);
    let n0 = abel_plana_phase(0, 1e-3, BoundaryCondition::Neumann).unwrap();
    assert!(((n0 + PI * 1e-6 / 2.0) / n0).abs() < 1e-3, "{n0}");
    let a = abel_plana_phase(2, 1e-2, BoundaryCondition::Dirichlet)
        .unwrap()
        .abs();
    let b = abel_plana_phase(2, 2e-2, BoundaryCondition::Dirichlet)
        .unwrap()
        .abs();
    assert!((b / a / 16.0 - 1.0).abs() < 1e-2, "O(w^4) for n = 2");
    for n in 0..5 {
        for &x in &[0.5, 3.0, 17.0, 60.0] {
            let p = abel_plana_phase(n, x, BoundaryCondition::Neumann).unwrap();
            assert!(p.is_finite() && p.abs() <= PI);
        }
    }
}

#[test]
fn mode_sum_is_exposed_for_diagnostics() {
    let g = geom(0.1);
    let v = mode_sum(&g, ScalarConfig::DD, 1.0, &spec(1e-8)).unwrap();
    assert!(v < 0.0);
    assert!(mode_sum(&g, ScalarConfig::DD, 0.0, &spec(1e-8)).is_err());
}
