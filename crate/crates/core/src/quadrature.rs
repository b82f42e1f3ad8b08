//! Adaptive Gauss-Kronrod quadrature and a Bessel-weighted oscillatory integrator.
//!
//! Nodes are never placed on interval endpoints, so integrable endpoint
//! singularities (the `ln ln` behaviour of the `n = 0` Dirichlet mode at
//! `xi -> 0`) are handled by bisection alone.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::special::{bessel_j0, bessel_j0_zero};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Settings for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
    /// Evaluate the 21 nodes of each panel on the rayon pool.
    pub parallel: bool,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_intervals: 4000,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk21<F>(f: &F, a: f64, b: f64, parallel: bool) -> Panel
where
    F: Fn(f64) -> f64 + Sync,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut nodes = [0.0; 21];
    for j in 0..10 {
        nodes[2 * j] = c - h * XGK[j];
        nodes[2 * j + 1] = c + h * XGK[j];
    }
    nodes[20] = c;
    let mut vals = [0.0; 21];
    if parallel {
        vals.par_iter_mut()
            .zip(nodes.par_iter())
            .for_each(|(v, &x)| *v = f(x));
    } else {
        for (v, &x) in vals.iter_mut().zip(nodes.iter()) {
            *v = f(x);
        }
    }
    let fc = vals[20];
    let mut rk = fc * WGK[10];
    let mut rg = 0.0;
    let mut rabs = rk.abs();
    for j in 0..10 {
        let pair = vals[2 * j] + vals[2 * j + 1];
        rk += WGK[j] * pair;
        rabs += WGK[j] * (vals[2 * j].abs() + vals[2 * j + 1].abs());
        if j % 2 == 1 {
            rg += WG[j / 2] * pair;
        }
    }
    let mean = 0.5 * rk;
    let mut rasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        rasc += WGK[j] * ((vals[2 * j] - mean).abs() + (vals[2 * j + 1] - mean).abs());
    }
    let value = rk * h;
    rasc *= h.abs();
    rabs *= h.abs();
    let mut err = ((rk - rg) * h).abs();
    if rasc != 0.0 && err != 0.0 {
        err = rasc * (200.0 * err / rasc).powf(1.5).min(1.0);
    }
    if rabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * rabs);
    }
    Panel { a, b, value, err }
}

/// Integrate `f` over `[a, b]` with the breakpoints `points` (strictly inside) as
/// initial panel boundaries. Bisects the panel with the largest error until
/// `err <= max(abs_tol, rel_tol * |value|)`.
pub fn integrate<F>(f: F, a: f64, b: f64, points: &[f64], opts: &QuadOptions) -> QuadResult
where
    F: Fn(f64) -> f64 + Sync,
{
    let mut edges = vec![a];
    edges.extend(points.iter().copied().filter(|&p| p > a && p < b));
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut evals = 0;
    for w in edges.windows(2) {
        heap.push(gk21(&f, w[0], w[1], opts.parallel));
        evals += 21;
    }
    let total = |heap: &BinaryHeap<Panel>| {
        // fixed-order summation keeps results reproducible
        let mut panels: Vec<&Panel> = heap.iter().collect();
        panels.sort_by(|p, q| p.a.total_cmp(&q.a));
        panels
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.err))
    };
    let (mut value, mut err) = total(&heap);
    let mut since_resum = 0;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if err <= target || heap.len() >= opts.max_intervals {
            let (value, err) = total(&heap);
            return QuadResult {
                value,
                abs_err: err,
                evals,
                converged: err <= opts.abs_tol.max(opts.rel_tol * value.abs()),
            };
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel cannot be split further in floating point
            heap.push(Panel { err: 0.0, ..worst });
            let (value, err) = total(&heap);
            return QuadResult {
                value,
                abs_err: err + worst.err,
                evals,
                converged: false,
            };
        }
        let left = gk21(&f, worst.a, mid, opts.parallel);
        let right = gk21(&f, mid, worst.b, opts.parallel);
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        evals += 42;
        since_resum += 1;
        if since_resum == 64 {
            (value, err) = total(&heap);
            since_resum = 0;
        }
    }
}

/// Highest even-column estimate of Wynn's epsilon algorithm over the partial sums.
pub fn wynn_epsilon(sums: &[f64]) -> f64 {
    let n = sums.len();
    if n < 3 {
        return *sums.last().unwrap_or(&0.0);
    }
    let mut prev = vec![0.0; n + 1]; // eps_{-1}
    let mut cur: Vec<f64> = sums.to_vec(); // eps_0
    let mut best = cur[cur.len() - 1];
    let mut k = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 || !diff.is_finite() {
                return best;
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        prev = cur;
        cur = next;
        k += 1;
        if k % 2 == 0 {
            best = cur[cur.len() - 1];
        }
    }
    best
}

/// Result of [`integrate_j0_weighted`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryResult {
    pub value: f64,
    pub abs_err: f64,
    pub pieces: usize,
    pub converged: bool,
}

/// `int_0^upper f(x) J_0(k x) dx`, split at the zeros of `J_0(k x)`; the
/// alternating partial sums are accelerated with Wynn's epsilon algorithm.
/// `f` must be negligible beyond `upper`.
pub fn integrate_j0_weighted<F>(f: F, k: f64, upper: f64, opts: &QuadOptions) -> OscillatoryResult
where
    F: Fn(f64) -> f64 + Sync,
{
    let g = |x: f64| f(x) * bessel_j0(k * x);
    let piece_opts = QuadOptions {
        rel_tol: opts.rel_tol * 0.1,
        max_intervals: 200,
        parallel: false,
        ..*opts
    };
    let mut sums: Vec<f64> = Vec::new();
    let mut partial = 0.0;
    let mut quad_err = 0.0;
    let mut lo = 0.0;
    let mut last_est = f64::NAN;
    let mut stable = 0;
    let mut m = 1;
    loop {
        let hi = (bessel_j0_zero(m) / k).min(upper);
        let r = integrate(g, lo, hi, &[], &piece_opts);
        partial += r.value;
        quad_err += r.abs_err;
        sums.push(partial);
        if hi >= upper {
            return OscillatoryResult {
                value: partial,
                abs_err: quad_err,
                pieces: m,
                converged: true,
            };
        }
        // Wynn on a sliding window of the most recent partial sums
        let window = &sums[sums.len().saturating_sub(24)..];
        let est = wynn_epsilon(window);
        let delta = (est - last_est).abs();
        let target = opts.abs_tol.max(opts.rel_tol * est.abs());
        if m >= 6 && delta <= target {
            stable += 1;
            if stable >= 2 {
                return OscillatoryResult {
                    value: est,
                    abs_err: delta + quad_err,
                    pieces: m,
                    converged: true,
                };
            }
        } else {
            stable = 0;
        }
        last_est = est;
        lo = hi;
        m += 1;
        if m > 20_000 {
            return OscillatoryResult {
                value: est,
                abs_err: delta + quad_err,
                pieces: m,
                converged: false,
            };
        }
    }
}
