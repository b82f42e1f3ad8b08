use std::f64::consts::PI;

use crate::error::{CasimirError, Result};
use crate::EULER_GAMMA;

/// Above this argument the Hankel asymptotic series is used for orders 0 and 1.
const HANKEL_THRESHOLD: f64 = 25.0;

/// `(P_nu(x), Q_nu(x))` of the Hankel expansion, summed until the terms stop decreasing.
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * eight_x);
        let a = term.abs();
        if a > prev || a < 1e-18 {
            break;
        }
        prev = a;
        // k odd -> Q with sign (-1)^{(k-1)/2}; k even -> P with sign (-1)^{k/2}
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    (p, q)
}

fn hankel_jy(nu: f64, x: f64) -> (f64, f64) {
    let (p, q) = hankel_pq(nu, x);
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// `J_0(x) .. J_{n_top}(x)` by Miller's backward recurrence normalised with
/// `J_0 + 2 sum_k J_{2k} = 1`. Valid for `x >= 0`.
fn j_miller(x: f64, n_top: usize) -> Vec<f64> {
    let mut out = vec![0.0; n_top + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let m = n_top.max(x.ceil() as usize) + 30 + (6.0 * x.sqrt()).ceil() as usize;
    let start = m + (m % 2);
    let mut f_next = 0.0; // J_{k+1}
    let mut f = 1e-300; // J_k
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        if k % 2 == 0 {
            norm += 2.0 * f;
        }
        if k <= n_top {
            out[k] = f;
        }
        let f_prev = 2.0 * k as f64 / x * f - f_next;
        f_next = f;
        f = f_prev;
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    out[0] = f;
    norm += f;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// `Y_0(x)`, `Y_1(x)` from the Neumann series over the Miller `J` array (small `x`).
fn y01_series(x: f64, j: &[f64]) -> (f64, f64) {
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sgn * j[2 * k] / k as f64;
        s1 += sgn * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = 2.0 / PI * (lg * j[0] - 2.0 * s0);
    let y1 = -2.0 / PI * (j[0] / x - lg * j[1] - s1);
    (y0, y1)
}

/// `(J_0..J_{n_top}, Y_0..Y_{n_top})` at `x > 0`.
pub fn bessel_jy_sequence(x: f64, n_top: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(CasimirError::domain(
            "bessel_jy_sequence",
            format!("x must be positive, got {x}"),
        ));
    }
    let top = n_top.max(1);
    let (j, y0, y1) = if x < HANKEL_THRESHOLD {
        // extra orders so the Neumann series is complete
        let jm = j_miller(
            x,
            top.max(x.ceil() as usize + 40 + (6.0 * x.sqrt()) as usize),
        );
        let (y0, y1) = y01_series(x, &jm);
        (jm[..=top].to_vec(), y0, y1)
    } else {
        let (j0, y0) = hankel_jy(0.0, x);
        let (j1, y1) = hankel_jy(1.0, x);
        let j = if (top as f64) < x {
            let mut j = Vec::with_capacity(top + 1);
            j.push(j0);
            j.push(j1);
            for k in 1..top {
                let next = 2.0 * k as f64 / x * j[k] - j[k - 1];
                j.push(next);
            }
            j
        } else {
            j_miller(x, top)
        };
        (j, y0, y1)
    };
    let mut y = Vec::with_capacity(top + 1);
    y.push(y0);
    y.push(y1);
    for k in 1..top {
        let next = 2.0 * k as f64 / x * y[k] - y[k - 1];
        y.push(next);
    }
    let mut j = j;
    j.truncate(n_top + 1);
    y.truncate(n_top + 1);
    Ok((j, y))
}

/// `J_n(x)`; negative `x` handled by parity.
pub fn bessel_j(n: usize, x: f64) -> f64 {
    if x < 0.0 {
        let v = bessel_j(n, -x);
        return if n.is_multiple_of(2) { v } else { -v };
    }
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    match n {
        0 => bessel_j0(x),
        1 => bessel_j1(x),
        _ if x >= HANKEL_THRESHOLD && (n as f64) < x => bessel_jy_sequence(x, n)
            .map(|(j, _)| j[n])
            .unwrap_or(f64::NAN),
        _ => j_miller(x, n)[n],
    }
}

pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x >= HANKEL_THRESHOLD {
        hankel_jy(0.0, x).0
    } else {
        j_miller(x, 1)[0]
    }
}

pub fn bessel_j1(x: f64) -> f64 {
    if x < 0.0 {
        return -bessel_j1(-x);
    }
    if x >= HANKEL_THRESHOLD {
        hankel_jy(1.0, x).0
    } else {
        j_miller(x, 1)[1]
    }
}

/// `Y_n(x)` (also written `N_n`), `x > 0`.
pub fn bessel_y(n: usize, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(CasimirError::domain(
            "bessel_y",
            format!("x must be positive, got {x}"),
        ));
    }
    Ok(bessel_jy_sequence(x, n)?.1[n])
}

/// `J_n'(x) = (J_{n-1} - J_{n+1})/2`, with `J_0' = -J_1`.
pub fn djn(n: usize, x: f64) -> f64 {
    if n == 0 {
        -bessel_j1(x)
    } else {
        0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x))
    }
}

/// `Y_n'(x) = (Y_{n-1} - Y_{n+1})/2`, with `Y_0' = -Y_1`.
pub fn dyn_(n: usize, x: f64) -> Result<f64> {
    let (_, y) = bessel_jy_sequence(x, n + 1)?;
    Ok(if n == 0 {
        -y[1]
    } else {
        0.5 * (y[n - 1] - y[n + 1])
    })
}

/// `k`-th positive zero of `J_0` (`k >= 1`): McMahon start plus Newton steps.
pub fn bessel_j0_zero(k: usize) -> f64 {
    assert!(k >= 1, "zeros are numbered from 1");
    let beta = (k as f64 - 0.25) * PI;
    let b = 1.0 / (8.0 * beta);
    // McMahon: beta + 1/(8 beta) - 124/(3 (8 beta)^3)
    let mut z = beta + b - 124.0 / 3.0 * b.powi(3);
    for _ in 0..6 {
        let dz = bessel_j0(z) / bessel_j1(z);
        z += dz;
        if dz.abs() < 4.0 * f64::EPSILON * z {
            break;
        }
    }
    z
}
