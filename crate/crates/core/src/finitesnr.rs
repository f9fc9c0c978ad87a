//! Outage probabilities at finite SNR and the slope of their log-log decay.
//!
//! Gains are unit-mean exponentials. Outage only shrinks as `|h11|^2` or
//! `|h22|^2` grows, so each receiver's region is `gain < threshold` along
//! that axis: RX2 is a closed form in its threshold and RX1 integrates
//! `P(|h11|^2 < x*(y))` against the density of `y = |h21|^2`.

use alloc::vec::Vec;

use libm::{exp, expm1, log, log10, sqrt};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::OperatingPoint;
use crate::regions::{ChannelGains, FiniteModel, Receiver, Scheme};

/// `|h21|^2` is integrated over `[0, GAIN_CUTOFF]`; the tail is `e^-40`.
pub const GAIN_CUTOFF: f64 = 40.0;

/// Geometric panels `[40 2^-(k+1), 40 2^-k]` resolve the small-`y` scale
/// `SNR^-beta` at any SNR a caller can reach.
const PANELS: usize = 200;
const MAX_DEPTH: u32 = 48;
const MAX_EVALS: usize = 2_000_000;

/// Smallest `v >= 0` outside the outage set of a region that is an interval
/// `[0, v*)`, found by bisection to full double precision.
fn threshold(inside: impl Fn(f64) -> bool) -> f64 {
    if !inside(0.0) {
        return 0.0;
    }
    let mut hi = 1.0;
    while inside(hi) {
        hi *= 2.0;
        if hi > 1e300 {
            return f64::INFINITY;
        }
    }
    let mut lo = 0.0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return hi;
        }
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// `1 - e^-v` without cancellation.
fn exp_cdf(v: f64) -> f64 {
    -expm1(-v)
}

struct Simpson<F> {
    f: F,
    evals: usize,
}

impl<F: Fn(f64) -> f64> Simpson<F> {
    fn eval(&mut self, x: f64) -> f64 {
        self.evals += 1;
        (self.f)(x)
    }

    /// Returns the estimate and the accumulated error estimate.
    #[allow(clippy::too_many_arguments)]
    fn refine(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (self.eval(lm), self.eval(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || self.evals > MAX_EVALS || diff.abs() <= 15.0 * tol {
            let err = if diff.abs() <= 15.0 * tol { diff.abs() / 15.0 } else { diff.abs() };
            return (left + right + diff / 15.0, err);
        }
        let (l, el) = self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
        let (r, er) = self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        (l + r, el + er)
    }

    fn panel(&mut self, a: f64, b: f64, tol: f64) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (self.eval(a), self.eval(m), self.eval(b));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        self.refine(a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
    }
}

fn check_tol(tol: f64) -> Result<f64> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::OutOfRange {
            name: "tol",
            value: tol,
            range: "(0, inf)",
        });
    }
    Ok(tol)
}

/// Outage probability by deterministic quadrature, absolute error `<= tol`.
pub fn outage_prob_quadrature(
    op: &OperatingPoint,
    scheme: &Scheme,
    rx: Receiver,
    snr_db: f64,
    tol: f64,
) -> Result<f64> {
    let tol = check_tol(tol)?;
    let model = FiniteModel::new(op, scheme, snr_db)?;
    match rx {
        Receiver::Rx2 => Ok(exp_cdf(threshold(|z| model.rx2_outage(z)))),
        Receiver::Rx1 => {
            let mut s = Simpson {
                f: |y: f64| exp(-y) * exp_cdf(threshold(|x| model.rx1_outage(x, y))),
                evals: 0,
            };
            let share = tol / (PANELS + 1) as f64;
            let mut edges = Vec::with_capacity(PANELS + 2);
            edges.push(0.0);
            edges.extend((0..=PANELS).rev().map(|k| GAIN_CUTOFF * libm::ldexp(1.0, -(k as i32))));
            let (mut total, mut error) = (0.0, 0.0);
            for w in edges.windows(2) {
                let (v, e) = s.panel(w[0], w[1], share);
                total += v;
                error += e;
            }
            if s.evals > MAX_EVALS || error > tol {
                return Err(Error::NoConvergence { estimate: total, error });
            }
            Ok(total.clamp(0.0, 1.0))
        }
    }
}

/// Empirical outage rate with a 95% normal-approximation half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub probability: f64,
    pub half_width: f64,
    pub outages: u64,
    pub trials: u64,
}

impl McEstimate {
    pub fn from_counts(outages: u64, trials: u64) -> Self {
        let n = trials as f64;
        let p = outages as f64 / n;
        Self {
            probability: p,
            half_width: 1.96 * sqrt(p * (1.0 - p) / n),
            outages,
            trials,
        }
    }
}

/// Unit-mean exponential from one 64-bit word, via `u in (0, 1]`.
fn exponential(word: u64) -> f64 {
    let u = ((word >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    -log(u)
}

/// Outages among trials `start..start + len`.
///
/// Trial `k` always reads words `6k..6k + 6` of the ChaCha8 stream keyed by
/// `seed`, as `(|h11|^2, |h21|^2, |h22|^2)`, so chunks may run in any order.
pub fn montecarlo_chunk(model: &FiniteModel, rx: Receiver, seed: u64, start: u64, len: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(6 * start as u128);
    let mut hits = 0;
    for _ in 0..len {
        let g = ChannelGains::new(
            exponential(rng.next_u64()),
            exponential(rng.next_u64()),
            exponential(rng.next_u64()),
        );
        hits += model.outage(rx, &g) as u64;
    }
    hits
}

pub fn outage_prob_montecarlo(
    op: &OperatingPoint,
    scheme: &Scheme,
    rx: Receiver,
    snr_db: f64,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::OutOfRange {
            name: "trials",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let model = FiniteModel::new(op, scheme, snr_db)?;
    Ok(McEstimate::from_counts(montecarlo_chunk(&model, rx, seed, 0, trials), trials))
}

/// SNRs `start, start + step, ...` up to `stop` inclusive.
pub fn ladder_db(start: f64, step: f64, stop: f64) -> Result<Vec<f64>> {
    if !start.is_finite() || start <= 0.0 {
        return Err(Error::NonPositiveSnr(start));
    }
    if !step.is_finite() || step <= 0.0 || !stop.is_finite() || stop < start {
        return Err(Error::InvalidLadder("need step > 0 and stop >= start"));
    }
    let n = libm::floor((stop - start) / step + 1e-9) as usize;
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderPoint {
    pub snr_db: f64,
    pub probability: f64,
    /// Set for Monte Carlo points.
    pub half_width: Option<f64>,
}

/// Outage probabilities of one receiver on an ascending SNR ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrLadder {
    points: Vec<LadderPoint>,
}

impl SnrLadder {
    /// Needs at least three strictly ascending SNRs and every probability in
    /// `(0, 1]`.
    pub fn new(points: Vec<LadderPoint>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidLadder("need at least 3 points"));
        }
        if points.windows(2).any(|w| !(w[0].snr_db < w[1].snr_db)) {
            return Err(Error::InvalidLadder("SNRs must be strictly ascending"));
        }
        for p in &points {
            if p.probability == 0.0 {
                return Err(Error::ZeroProbability { snr_db: p.snr_db });
            }
            if !(p.probability > 0.0 && p.probability <= 1.0) {
                return Err(Error::OutOfRange {
                    name: "probability",
                    value: p.probability,
                    range: "(0, 1]",
                });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[LadderPoint] {
        &self.points
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub d_hat: f64,
    pub intercept: f64,
    /// Root-mean-square residual of `log10 P`.
    pub residual: f64,
    pub points_used: usize,
}

/// Least squares of `log10 P` on `log10 SNR` over the upper half of the
/// ladder (at least three points); `d_hat` is minus the slope.
pub fn fit_diversity(ladder: &SnrLadder) -> Fit {
    let n = ladder.points.len();
    let used = n.div_ceil(2).max(3);
    let pts: Vec<(f64, f64)> = ladder.points[n - used..]
        .iter()
        .map(|p| (p.snr_db / 10.0, log10(p.probability)))
        .collect();
    let m = used as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts
        .iter()
        .map(|p| {
            let r = p.1 - intercept - slope * p.0;
            r * r
        })
        .sum();
    Fit {
        d_hat: -slope,
        intercept,
        residual: sqrt(sse / m),
        points_used: used,
    }
}

/// Quadrature ladder for one receiver.
pub fn quadrature_ladder(
    op: &OperatingPoint,
    scheme: &Scheme,
    rx: Receiver,
    snrs_db: &[f64],
    tol: f64,
) -> Result<SnrLadder> {
    let points = snrs_db
        .iter()
        .map(|&snr_db| {
            Ok(LadderPoint {
                snr_db,
                probability: outage_prob_quadrature(op, scheme, rx, snr_db, tol)?,
                half_width: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SnrLadder::new(points)
}
