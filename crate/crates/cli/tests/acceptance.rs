//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line (written
//! straight to stderr so it shows up under plain `cargo test`) and fails its
//! test when not met. The criteria run one at a time so the wall-clock limits
//! measure a single computation.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::Mutex;
use std::time::Instant;

use casimir_cli::args::{Cli, Command};
use casimir_cli::validate::{debye_residuals, mellin_grid, wronskian};
use casimir_cli::{cmd_scan, ExitCode};
use casimir_core::asymptotics::{mellin_integral_check, pfa_leading, Regime};
use casimir_core::engine::{
    classical_term, free_energy_matsubara, thermal_correction_poisson, thermal_leading,
    zero_temperature_energy, zero_temperature_energy_double_form, EnergyResult, NumericsSpec,
};
use casimir_core::{BoundaryCondition, CylinderGeometry, EmKind, FieldConfig, ScalarConfig, ZETA3};
use clap::Parser;

static SERIAL: Mutex<()> = Mutex::new(());

fn report(id: u32, pass: bool, detail: String) {
    let line = format!(
        "\nacceptance {id:>2}: {} | {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "criterion {id} not met: {detail}");
}

fn geom(eps: f64) -> CylinderGeometry {
    CylinderGeometry::from_gap(1.0, eps).unwrap()
}

fn scalar(cfg: ScalarConfig) -> FieldConfig {
    FieldConfig::Scalar(cfg)
}

fn spec(rel_tol: f64) -> NumericsSpec {
    NumericsSpec::with_rel_tol(rel_tol)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn criterion_01_pfa_dirichlet() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for eps in [0.1, 0.05, 0.025] {
        let g = geom(eps);
        let cfg = scalar(ScalarConfig::DD);
        let e = zero_temperature_energy(&g, cfg, &spec(1e-8)).unwrap().value;
        let ratio = e / pfa_leading(cfg, Regime::ZeroT, &g, None).unwrap();
        let target = 1.0 + eps / 2.0 - eps * eps / 10.0;
        let dev = rel(ratio, target);
        ok &= dev < 5.0 * eps * eps;
        parts.push(format!(
            "eps={eps}: ratio={ratio:.8} dev={dev:.2e} tol={:.2e}",
            5.0 * eps * eps
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    report(
        1,
        ok,
        format!("{}; runtime {secs:.2}s < 60s", parts.join("; ")),
    );
}

#[test]
fn criterion_02_pfa_mixed() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut ok = true;
    let mut parts = Vec::new();
    for eps in [0.1, 0.05, 0.025] {
        let g = geom(eps);
        let e = zero_temperature_energy(&g, scalar(ScalarConfig::DN), &spec(1e-8))
            .unwrap()
            .value;
        let pfa = 7.0 * PI.powi(3) / (5760.0 * eps.powi(3));
        let ratio = e / pfa;
        let target = 1.0 + eps * (0.5 + 40.0 / (7.0 * PI * PI));
        let dev = rel(ratio, target);
        ok &= e > 0.0 && dev < 5.0 * eps * eps;
        parts.push(format!(
            "eps={eps}: E={e:.6} ratio={ratio:.8} dev={dev:.2e} tol={:.2e}",
            5.0 * eps * eps
        ));
    }
    report(2, ok, parts.join("; "));
}

#[test]
fn criterion_03_classical_dirichlet() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for eps in [0.1, 0.05] {
        let g = geom(eps);
        let e = classical_term(&g, scalar(ScalarConfig::DD), 1.0, &spec(1e-8))
            .unwrap()
            .value;
        let ratio = e / (-ZETA3 / (8.0 * eps * eps));
        let dev = rel(ratio, 1.0 + eps / 2.0);
        ok &= dev < 5.0 * eps * eps;
        parts.push(format!(
            "eps={eps}: ratio={ratio:.8} dev={dev:.2e} tol={:.2e}",
            5.0 * eps * eps
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 30.0;
    report(
        3,
        ok,
        format!("{}; runtime {secs:.2}s < 30s", parts.join("; ")),
    );
}

#[test]
fn criterion_04_matsubara_poisson_identity() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let g = geom(0.1);
    let s = spec(1e-8);
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for cfg in [ScalarConfig::DD, ScalarConfig::NN] {
        let cfg = scalar(cfg);
        let e0 = zero_temperature_energy(&g, cfg, &s).unwrap().value;
        for a1t in [0.1, 0.3, 0.5] {
            let f = free_energy_matsubara(&g, cfg, a1t, &s).unwrap().value;
            let dt = thermal_correction_poisson(&g, cfg, a1t, &s).unwrap().value;
            let dev = rel(e0 + dt, f);
            ok &= dev < 1e-4;
            worst = worst.max(dev);
        }
    }
    report(
        4,
        ok,
        format!("DD,NN at a1T in {{0.1,0.3,0.5}}: max rel dev {worst:.2e} < 1e-4"),
    );
}

#[test]
fn criterion_05_high_temperature_classical_dominance() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let g = geom(0.1);
    let s = spec(1e-10);
    let mut worst: f64 = 0.0;
    for cfg in ScalarConfig::ALL {
        let cfg = scalar(cfg);
        let f = free_energy_matsubara(&g, cfg, 20.0, &s).unwrap().value;
        let c = classical_term(&g, cfg, 20.0, &s).unwrap().value;
        worst = worst.max(rel(f, c));
    }
    report(
        5,
        worst < 1e-6,
        format!("a1T=20, all scalar configs: max rel dev {worst:.2e} < 1e-6"),
    );
}

#[test]
fn criterion_06_em_channel_additivity() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    type Eval = fn(&CylinderGeometry, FieldConfig) -> EnergyResult;
    let regimes: [(&str, Eval); 5] = [
        ("zero_t", |g, c| {
            zero_temperature_energy(g, c, &spec(1e-8)).unwrap()
        }),
        ("double", |g, c| {
            zero_temperature_energy_double_form(g, c, &spec(1e-6)).unwrap()
        }),
        ("matsubara", |g, c| {
            free_energy_matsubara(g, c, 0.5, &spec(1e-8)).unwrap()
        }),
        ("classical", |g, c| {
            classical_term(g, c, 1.0, &spec(1e-8)).unwrap()
        }),
        ("poisson", |g, c| {
            thermal_correction_poisson(g, c, 0.2, &spec(1e-8)).unwrap()
        }),
    ];
    let g = geom(0.1);
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, eval) in regimes {
        for (em, a, b) in [
            (EmKind::PcPc, ScalarConfig::DD, ScalarConfig::NN),
            (EmKind::PcIp, ScalarConfig::DN, ScalarConfig::ND),
        ] {
            let total = eval(&g, FieldConfig::Em(em)).value;
            let parts_sum = eval(&g, scalar(a)).value + eval(&g, scalar(b)).value;
            let dev = rel(parts_sum, total);
            ok &= dev < 1e-12;
            parts.push(format!("{name}/{}={dev:.1e}", FieldConfig::Em(em)));
        }
    }
    report(6, ok, format!("rel dev < 1e-12: {}", parts.join(" ")));
}

#[test]
fn criterion_07_single_and_double_forms() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut ok = true;
    let mut parts = Vec::new();
    for eps in [0.1, 0.3] {
        let g = geom(eps);
        for cfg in ScalarConfig::ALL {
            let cfg = scalar(cfg);
            let a = zero_temperature_energy(&g, cfg, &spec(1e-8)).unwrap();
            let b = zero_temperature_energy_double_form(&g, cfg, &spec(1e-6)).unwrap();
            let diff = (a.value - b.value).abs();
            let budget = a.err_estimate + b.err_estimate;
            ok &= diff <= budget;
            parts.push(format!("{cfg}@{eps}: |d|={diff:.1e}<={budget:.1e}"));
        }
    }
    report(7, ok, parts.join(" "));
}

#[test]
fn criterion_08_dirichlet_thermal_leading_order() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let g = geom(0.1);
    let s = spec(1e-10);
    let cfg = scalar(ScalarConfig::DD);
    let e0 = zero_temperature_energy(&g, cfg, &s).unwrap().value;
    let mut ratios = Vec::new();
    for a1t in [0.02, 0.01, 0.005] {
        let f = free_energy_matsubara(&g, cfg, a1t, &s).unwrap().value;
        let lead = thermal_leading(BoundaryCondition::Dirichlet, 1.0, a1t)
            .unwrap()
            .value;
        ratios.push((a1t, (f - e0) / lead));
    }
    let in_band = ratios.iter().all(|&(_, r)| (0.5..=1.5).contains(&r));
    let trending = ratios
        .windows(2)
        .all(|w| (w[1].1 - 1.0).abs() < (w[0].1 - 1.0).abs());
    let shown: Vec<String> = ratios
        .iter()
        .map(|(t, r)| format!("a1T={t}: {r:.4}"))
        .collect();
    report(
        8,
        in_band && trending,
        format!(
            "ratio in [0.5,1.5]: {in_band}, trending to 1: {trending}; {}",
            shown.join(", ")
        ),
    );
}

#[test]
fn criterion_09_mellin_closed_forms() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let grid = mellin_grid();
    let mut worst: f64 = 0.0;
    let mut ok = grid.len() >= 12;
    for (which, chi, z, eps, cfg) in &grid {
        match mellin_integral_check(*which, *chi, *z, *eps, *cfg, 1e-11) {
            Ok(c) => {
                ok &= c.rel_deviation < 1e-8;
                worst = worst.max(c.rel_deviation);
            }
            Err(_) => ok = false,
        }
    }
    report(
        9,
        ok,
        format!("{} grid points: max rel dev {worst:.2e} < 1e-8", grid.len()),
    );
}

#[test]
fn criterion_10_special_function_suites() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let checks: Vec<_> = wronskian().into_iter().chain(debye_residuals()).collect();
    let ok = checks.iter().all(|c| c.pass);
    let shown: Vec<String> = checks
        .iter()
        .map(|c| {
            format!(
                "{}:{}={:.1e}<={:.0e}",
                c.suite, c.check, c.deviation, c.tolerance
            )
        })
        .collect();
    report(10, ok, shown.join(" "));
}

#[test]
fn criterion_11_scan_determinism() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let sweeps: [&[&str]; 2] = [
        &["--eps", "0.2,0.1,0.05"],
        &["--eps", "0.1", "--T", "0.1,0.3,0.5"],
    ];
    let mut ok = true;
    let mut rows_seen = 0;
    for sweep in sweeps {
        let mut argv = vec!["casimir", "scan", "--bc", "PCPC", "--a1", "1"];
        argv.extend_from_slice(sweep);
        let Command::Scan(args) = Cli::try_parse_from(&argv).unwrap().command else {
            unreachable!()
        };
        let (first, c1) = cmd_scan(&args).unwrap();
        let (second, c2) = cmd_scan(&args).unwrap();
        ok &= c1 == ExitCode::Success && c2 == ExitCode::Success;
        ok &= first.len() == second.len()
            && first.iter().zip(&second).all(|(a, b)| {
                a.value.to_bits() == b.value.to_bits() && a.err.to_bits() == b.err.to_bits()
            });
        rows_seen += first.len();
    }
    report(
        11,
        ok,
        format!("{rows_seen} rows, value and err columns bit-identical across runs"),
    );
}
