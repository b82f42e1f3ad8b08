//! Accuracy of the Bessel layer against arbitrary-precision reference tables
//! (see `tests/oracle/gen_bessel.py`) and the Wronskian / Debye properties.

use std::f64::consts::PI;

use casimir_core::special::{
    bessel_i_scaled, bessel_j, bessel_jy_sequence, bessel_k_scaled, bessel_y, debye, djn, dyn_,
    log_ratio_ik, ModifiedSequence,
};
use proptest::prelude::*;

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn modified_bessel_against_reference_table() {
    let data = rows(include_str!("data/modified_bessel.csv"));
    let mut checked = 0;
    for r in &data {
        let n: usize = r[0].parse().unwrap();
        let x: f64 = r[1].parse().unwrap();
        let i_ref: f64 = r[2].parse().unwrap();
        let k_ref: f64 = r[3].parse().unwrap();
        let lr: f64 = r[4].parse().unwrap();
        let lrp: f64 = r[5].parse().unwrap();
        if i_ref.is_finite() && i_ref > 0.0 {
            let v = bessel_i_scaled(n, x).unwrap();
            assert!(rel(v, i_ref) < 1e-11, "I_{n}({x}): {v} vs {i_ref}");
            checked += 1;
        }
        if k_ref.is_finite() {
            let v = bessel_k_scaled(n, x).unwrap();
            assert!(rel(v, k_ref) < 1e-11, "K_{n}({x}): {v} vs {k_ref}");
            checked += 1;
        }
        let u = log_ratio_ik(n, x, false).unwrap();
        let p = log_ratio_ik(n, x, true).unwrap();
        assert_eq!(u.sign, 1.0);
        assert_eq!(p.sign, -1.0);
        assert!(
            (u.log_magnitude - lr).abs() <= 1e-11 * lr.abs().max(1.0),
            "ln I/K n={n} x={x}: {} vs {lr}",
            u.log_magnitude
        );
        assert!(
            (p.log_magnitude - lrp).abs() <= 1e-11 * lrp.abs().max(1.0),
            "ln I'/K' n={n} x={x}: {} vs {lrp}",
            p.log_magnitude
        );
    }
    assert!(checked > 250);
}

#[test]
fn spot_values() {
    assert!(rel(bessel_i_scaled(0, 1.0).unwrap(), 0.465_759_607_593_640_6) < 1e-13);
    assert!(rel(bessel_k_scaled(0, 1.0).unwrap(), 1.144_463_079_806_895) < 1e-13);
    assert!(rel(bessel_j(0, 1.0), 0.765_197_686_557_966_6) < 1e-13);
    assert!(rel(bessel_y(0, 1.0).unwrap(), 0.088_256_964_215_676_96) < 1e-12);
    assert!(bessel_y(0, 0.0).is_err());
}

#[test]
fn ordinary_bessel_against_reference_table() {
    let data = rows(include_str!("data/ordinary_bessel.csv"));
    for r in &data {
        let n: usize = r[0].parse().unwrap();
        let x: f64 = r[1].parse().unwrap();
        let vals: Vec<f64> = r[2..].iter().map(|s| s.parse().unwrap()).collect();
        let got = [
            bessel_j(n, x),
            bessel_y(n, x).unwrap(),
            djn(n, x),
            dyn_(n, x).unwrap(),
        ];
        for (k, (&g, &want)) in got.iter().zip(vals.iter()).enumerate() {
            if !want.is_finite() {
                continue;
            }
            assert!(rel(g, want) < 1e-10, "n={n} x={x} field {k}: {g} vs {want}");
        }
    }
}

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| lo * (hi / lo).powf(k as f64 / (count - 1) as f64))
        .collect()
}

#[test]
fn modified_wronskian_on_grid() {
    for x in log_grid(1e-3, 1e3, 61) {
        let s = ModifiedSequence::new(x, 21).unwrap();
        for n in 0..=20 {
            // I K' - I' K = I K (K'/K - I'/I) = -1/x
            let ik = (s.ln_i_scaled(n) + s.ln_k_scaled(n)).exp();
            let w = ik * (s.k_log_derivative(n) - s.i_log_derivative(n)) * x;
            assert!((w + 1.0).abs() < 1e-12, "n={n} x={x}: {w}");
        }
    }
}

#[test]
fn ordinary_wronskian_on_grid() {
    for x in log_grid(1e-3, 1e3, 61) {
        let (j, y) = bessel_jy_sequence(x, 21).unwrap();
        for n in 0..=20 {
            let (dj, dy) = if n == 0 {
                (-j[1], -y[1])
            } else {
                (0.5 * (j[n - 1] - j[n + 1]), 0.5 * (y[n - 1] - y[n + 1]))
            };
            let w = (j[n] * dy - dj * y[n]) * PI * x / 2.0;
            assert!((w - 1.0).abs() < 1e-10, "n={n} x={x}: {w}");
        }
    }
    // the documented spot check
    let (x, n) = (2.5, 4);
    let w = bessel_j(n, x) * dyn_(n, x).unwrap() - djn(n, x) * bessel_y(n, x).unwrap();
    assert!(rel(w, 2.0 / (PI * x)) < 1e-12);
}

#[test]
fn debye_residual_decays_at_least_quadratically() {
    for &w in &[0.5, 1.0, 2.0] {
        let d = debye(w).unwrap();
        for primed in [false, true] {
            let p1 = if primed { d.m1 } else { d.d1 };
            let residual = |n: usize| {
                let nf = n as f64;
                let exact = log_ratio_ik(n, nf * w, primed).unwrap().log_magnitude;
                (exact - (2.0 * nf * d.eta - PI.ln() + 2.0 * p1 / nf)).abs()
            };
            let r5 = residual(5);
            for n in 6..=50 {
                let bound = r5 * (5.0 / n as f64).powi(2) + 1e-12;
                let r = residual(n);
                assert!(r <= bound, "w={w} primed={primed} n={n}: {r} > {bound}");
            }
        }
    }
}

#[test]
fn scaled_values_stay_finite_over_the_full_range() {
    for x in log_grid(1e-300, 1e4, 200) {
        for n in [0, 1] {
            let i = bessel_i_scaled(n, x).unwrap();
            let k = bessel_k_scaled(n, x).unwrap();
            assert!(i.is_finite() && k.is_finite() && k > 0.0, "n={n} x={x}");
            if n == 0 {
                assert!(i > 0.0);
            }
        }
        let l = log_ratio_ik(200, x, true).unwrap();
        assert!(l.log_magnitude.is_finite());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modified_wronskian_random(n in 0usize..60, lx in -6.0f64..4.0) {
        let x = 10f64.powf(lx);
        let s = ModifiedSequence::new(x, n).unwrap();
        let ik = (s.ln_i_scaled(n) + s.ln_k_scaled(n)).exp();
        let w = ik * (s.k_log_derivative(n) - s.i_log_derivative(n)) * x;
        prop_assert!((w + 1.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_recurrences_agree_with_pointwise_values(n in 0usize..40, lx in -2.0f64..2.5) {
        let x = 10f64.powf(lx);
        let s = ModifiedSequence::new(x, n + 1).unwrap();
        // I_{n-1} - I_{n+1} = (2n/x) I_n
        if n >= 1 {
            let a = bessel_i_scaled(n - 1, x).unwrap();
            let b = bessel_i_scaled(n + 1, x).unwrap();
            let c = bessel_i_scaled(n, x).unwrap();
            prop_assert!(((a - b) - 2.0 * n as f64 / x * c).abs() <= 1e-11 * a.max(c));
        }
        prop_assert!(s.i_ratio(n) > 0.0 && s.i_ratio(n) < 1.0);
    }
}
