//! Diversity as the infimum of `g11 + g21 + g22` over an outage set.
//!
//! Outage predicates only grow along `g11` and `g22`, so the search bisects
//! those two directions and enumerates `g21`: for each `g21` it evaluates a
//! set of `g11` values plus the exact `g11` threshold, bisects the smallest
//! `g22` in outage, and keeps the cheapest point. Candidates come either from
//! a coarse lattice or from the breakpoints of the scheme's brackets; both
//! are polished by a local search that halves its step down to `grid_step`.
//!
//! Points are evaluated at `candidate + grid_step` along the enumerated axes
//! so that a candidate sitting on a strict boundary lands inside the open
//! set; the candidate's own weight is reported.

use alloc::vec::Vec;

use crate::error::{finite, Error, Result};
use crate::model::{plus, GammaTriple, OperatingPoint, SplitParams};
use crate::regions::{Receiver, Scheme};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub grid_step: f64,
    pub gamma_max: f64,
    pub refine_rounds: u32,
}

impl OracleConfig {
    pub fn new(grid_step: f64, gamma_max: f64, refine_rounds: u32) -> Result<Self> {
        let grid_step = finite("grid_step", grid_step)?;
        let gamma_max = finite("gamma_max", gamma_max)?;
        if grid_step <= 0.0 {
            return Err(Error::OutOfRange {
                name: "grid_step",
                value: grid_step,
                range: "(0, inf)",
            });
        }
        if gamma_max <= 0.0 {
            return Err(Error::OutOfRange {
                name: "gamma_max",
                value: gamma_max,
                range: "(0, inf)",
            });
        }
        Ok(Self {
            grid_step,
            gamma_max,
            refine_rounds,
        })
    }

    /// Step `1e-3`, box edge `1 + beta + 0.5`, six halvings.
    pub fn for_beta(beta: f64) -> Self {
        Self {
            grid_step: 1e-3,
            gamma_max: 1.0 + beta + 0.5,
            refine_rounds: 6,
        }
    }

    /// Agreement tolerance the oracle guarantees, `3 grid_step`.
    pub fn tolerance(&self) -> f64 {
        3.0 * self.grid_step
    }

    fn coarse_step(&self) -> f64 {
        self.grid_step * libm::pow(2.0, self.refine_rounds as f64)
    }
}

/// Per-axis values where some bracket of a scheme's events changes sign.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CandidateAxes {
    pub g11: Vec<f64>,
    pub g21: Vec<f64>,
    pub g22: Vec<f64>,
}

fn tidy(mut v: Vec<f64>, gamma_max: f64) -> Vec<f64> {
    for x in v.iter_mut() {
        *x = x.clamp(0.0, gamma_max);
    }
    v.retain(|x| x.is_finite());
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    v
}

impl CandidateAxes {
    /// Clips every axis to `[0, gamma_max]`, sorts, and drops duplicates.
    pub fn new(g11: Vec<f64>, g21: Vec<f64>, g22: Vec<f64>, gamma_max: f64) -> Self {
        Self {
            g11: tidy(g11, gamma_max),
            g21: tidy(g21, gamma_max),
            g22: tidy(g22, gamma_max),
        }
    }

    /// RX2 events involve `g22` alone, so the other axes collapse to zero.
    pub fn for_receiver(&self, rx: Receiver) -> Self {
        match rx {
            Receiver::Rx1 => self.clone(),
            Receiver::Rx2 => Self {
                g11: alloc::vec![0.0],
                g21: alloc::vec![0.0],
                g22: self.g22.clone(),
            },
        }
    }
}

/// `g11` values that pair with the `g21` axis: where `[1 - g11]+` and
/// `[beta - g21]+` swap roles inside a max.
fn crossing(beta: f64, g21: &[f64]) -> impl Iterator<Item = f64> + '_ {
    g21.iter().map(move |v| 1.0 - beta + v)
}

fn hk_axes(op: &OperatingPoint, t2: f64, b: f64, gamma_max: f64) -> CandidateAxes {
    let (r1, r2, beta) = (op.r1(), op.r2(), op.beta());
    let r = r1 + t2;
    let c = plus(beta - b);
    let s2 = r2 - t2;
    let g21 = alloc::vec![0.0, beta, beta - b, beta - r, beta - r1, beta - r2];
    let mut g11 = alloc::vec![0.0, 1.0, 1.0 - r1, 1.0 - r, 1.0 - r1 - c, 1.0 - r - c];
    g11.extend(crossing(beta, &g21));
    let g22 = alloc::vec![0.0, 1.0, 1.0 - r2, 1.0 - b - s2, 1.0 - b];
    CandidateAxes::new(g11, g21, g22, gamma_max)
}

/// Breakpoints of the HK events at split `sp`, clipped to the default box.
pub fn candidate_breakpoints(op: &OperatingPoint, sp: &SplitParams) -> CandidateAxes {
    hk_axes(op, sp.t2(), sp.b(), OracleConfig::for_beta(op.beta()).gamma_max)
}

/// Breakpoints for any scheme, clipped to `[0, gamma_max]`.
pub fn scheme_candidates(op: &OperatingPoint, scheme: &Scheme, gamma_max: f64) -> CandidateAxes {
    let (r1, r2, beta) = (op.r1(), op.r2(), op.beta());
    match scheme {
        Scheme::Hk(sp) => hk_axes(op, sp.t2(), sp.b(), gamma_max),
        Scheme::TimeShareHk(tsp) => hk_axes(op, tsp.t_c(), tsp.b_c(), gamma_max),
        Scheme::Tian => hk_axes(op, 0.0, 0.0, gamma_max),
        Scheme::Cmo => {
            let s = r1 + r2;
            let g21 = alloc::vec![0.0, beta, beta - s, beta - r1];
            let mut g11 = alloc::vec![0.0, 1.0, 1.0 - r1, 1.0 - s];
            g11.extend(crossing(beta, &g21));
            CandidateAxes::new(g11, g21, alloc::vec![0.0, 1.0, 1.0 - r2], gamma_max)
        }
        Scheme::MixedCmoHk(mp) => {
            let l = mp.lambda();
            let b = mp.b();
            let c = plus(beta - b);
            let r = r1 + l * mp.t21();
            let r3 = r - (1.0 - l) * mp.t22();
            let mut g21 = alloc::vec![0.0, beta, beta - b, beta - r, beta - r1, beta - r2];
            let mut g11 = alloc::vec![0.0, 1.0, 1.0 - r1, 1.0 - r, 1.0 - r1 - c, 1.0 - r - c];
            g11.push(1.0 - r1 - (1.0 - l) * c);
            g11.push(1.0 - r - (1.0 - l) * c);
            if l > 0.0 {
                let x = (r - (1.0 - l) * b) / l;
                g21.extend([beta - x, beta - r1 / l, beta - r / l, beta - r3 / l]);
                g11.extend([1.0 - x, 1.0 - r1 / l, 1.0 - r / l, 1.0 - r3 / l]);
            }
            g11.extend(crossing(beta, &g21));
            let mut g22 = alloc::vec![0.0, 1.0, 1.0 - r2, 1.0 - b];
            if l < 1.0 {
                let u = (r2 - l * mp.t21()) / (1.0 - l);
                g22.extend([1.0 - b - u, 1.0 - b - (r2 - (1.0 - l) * mp.t22()) / (1.0 - l)]);
            }
            if l > 0.0 {
                g22.push(1.0 - (r2 - (1.0 - l) * mp.t22()) / l);
            }
            CandidateAxes::new(g11, g21, g22, gamma_max)
        }
    }
}

/// A scored search point; `weight` is `INFINITY` outside the box's outage set.
#[derive(Debug, Clone, Copy)]
struct Point {
    weight: f64,
    a: f64,
    b: f64,
}

const NONE: Point = Point {
    weight: f64::INFINITY,
    a: 0.0,
    b: 0.0,
};

const NEIGHBOURS: [(f64, f64); 8] = [
    (-1.0, -1.0),
    (-1.0, 0.0),
    (-1.0, 1.0),
    (0.0, -1.0),
    (0.0, 1.0),
    (1.0, -1.0),
    (1.0, 0.0),
    (1.0, 1.0),
];

/// Points kept alive by the refinement.
const BEAM: usize = 8;

/// Bisection resolution along the monotone axes.
const BISECT_TOL: f64 = 1e-12;

struct Search<P> {
    pred: P,
    g: f64,
    eps: f64,
    step: f64,
    coarse: f64,
}

impl<P: Fn(&GammaTriple) -> bool> Search<P> {
    fn new(pred: P, cfg: &OracleConfig) -> Self {
        Self {
            pred,
            g: cfg.gamma_max,
            eps: cfg.grid_step,
            step: cfg.grid_step,
            coarse: cfg.coarse_step(),
        }
    }

    #[inline]
    fn holds(&self, a: f64, b: f64, c: f64) -> bool {
        (self.pred)(&GammaTriple::new_unchecked(a, b, c))
    }

    /// Smallest `t in [0, g]` with `inside(t)`, for a monotone `inside`.
    fn threshold(&self, inside: impl Fn(f64) -> bool) -> Option<f64> {
        if inside(0.0) {
            return Some(0.0);
        }
        if !inside(self.g) {
            return None;
        }
        let (mut lo, mut hi) = (0.0, self.g);
        while hi - lo > BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            if inside(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }

    /// Weight of the cheapest point above `(ga, gb)` along `g22`, where the
    /// predicate is evaluated at exactly `(ga, gb)`.
    fn along_g22(&self, ga: f64, gb: f64) -> Option<f64> {
        self.threshold(|c| self.holds(ga, gb, c))
    }

    fn at(&self, a: f64, b: f64) -> Point {
        match self.along_g22(a + self.eps, b + self.eps) {
            Some(c) => Point { weight: a + b + c, a, b },
            None => NONE,
        }
    }

    /// The exact `g11` entry point of the outage set on the line `g21 = b`.
    fn entry(&self, b: f64) -> Point {
        let gb = b + self.eps;
        let Some(a) = self.threshold(|a| self.holds(a, gb, self.g)) else {
            return NONE;
        };
        match self.along_g22(a, gb) {
            Some(c) => Point { weight: a + b + c, a, b },
            None => NONE,
        }
    }

    fn row(&self, b: f64, a_axis: &[f64], best: f64) -> Point {
        let mut out = self.entry(b);
        for &a in a_axis {
            if a + b >= out.weight.min(best) {
                break;
            }
            let p = self.at(a, b);
            if p.weight < out.weight {
                out = p;
            }
        }
        out
    }

    fn scan(&self, a_axis: &[f64], b_axis: &[f64]) -> Vec<Point> {
        let mut best = f64::INFINITY;
        let mut rows = Vec::with_capacity(b_axis.len());
        for &b in b_axis {
            // One row past the cut-off still seeds the refinement.
            if b >= best + self.coarse {
                break;
            }
            let p = self.row(b, a_axis, f64::INFINITY);
            best = best.min(p.weight);
            rows.push(p);
        }
        rows
    }

    /// Beam search: every point of a beam of `width` expands to its eight
    /// neighbours at step `h` (plus the exact entry point of each
    /// neighbouring row), the best `width` survive, and `h` halves from
    /// `coarse / 2` to `step`. Keeping a beam rather than one descent path
    /// stops a nearby row with a worse local minimum from capturing the
    /// search before the step is fine enough to separate the two.
    fn refine(&self, mut beam: Vec<Point>, width: usize) -> f64 {
        let keep = |pool: &mut Vec<Point>| {
            pool.retain(|p| p.weight.is_finite());
            pool.sort_by(|x, y| x.weight.total_cmp(&y.weight).then(x.b.total_cmp(&y.b)).then(x.a.total_cmp(&y.a)));
            pool.dedup_by(|x, y| (x.a - y.a).abs() < 1e-12 && (x.b - y.b).abs() < 1e-12);
            pool.truncate(width);
        };
        keep(&mut beam);
        let mut h = 0.5 * self.coarse;
        while h >= self.step * (1.0 - 1e-9) && !beam.is_empty() {
            for _ in 0..4 {
                let best = beam[0].weight;
                let mut pool = beam.clone();
                for p in &beam {
                    for (da, db) in NEIGHBOURS {
                        let a = (p.a + da * h).clamp(0.0, self.g);
                        let b = (p.b + db * h).clamp(0.0, self.g);
                        pool.push(self.at(a, b));
                        pool.push(self.entry(b));
                    }
                }
                keep(&mut pool);
                beam = pool;
                if beam[0].weight >= best - 1e-15 {
                    break;
                }
            }
            h *= 0.5;
        }
        beam.first().map_or(f64::INFINITY, |p| p.weight)
    }

    fn lattice(&self) -> Vec<f64> {
        let n = libm::floor(self.g / self.coarse) as usize;
        let mut v: Vec<f64> = (0..=n).map(|i| i as f64 * self.coarse).collect();
        if v.last().is_some_and(|&x| x < self.g) {
            v.push(self.g);
        }
        v
    }

    fn grid(&self) -> f64 {
        let l = self.lattice();
        self.refine(self.scan(&l, &l), BEAM)
    }

    fn seeded(&self, axes: &CandidateAxes) -> f64 {
        let mut b_axis = axes.g21.clone();
        if b_axis.first() != Some(&0.0) {
            b_axis.insert(0, 0.0);
        }
        let mut a_axis = axes.g11.clone();
        if a_axis.first() != Some(&0.0) {
            a_axis.insert(0, 0.0);
        }
        self.refine(self.scan(&a_axis, &b_axis), BEAM)
    }
}

/// Infimum over the box from a coarse lattice and local refinement alone.
/// Returns `INFINITY` when the outage set misses the box.
pub fn infimum_diversity<P: Fn(&GammaTriple) -> bool>(pred: P, cfg: &OracleConfig) -> f64 {
    Search::new(pred, cfg).grid()
}

/// Infimum seeded from breakpoint candidates only, then refined.
pub fn infimum_seeded<P: Fn(&GammaTriple) -> bool>(pred: P, axes: &CandidateAxes, cfg: &OracleConfig) -> f64 {
    Search::new(pred, cfg).seeded(axes)
}

/// The smaller of the seeded and the lattice searches, so never above
/// [`infimum_diversity`].
pub fn infimum_with_candidates<P: Fn(&GammaTriple) -> bool>(pred: P, axes: &CandidateAxes, cfg: &OracleConfig) -> f64 {
    let s = Search::new(pred, cfg);
    s.seeded(axes).min(s.grid())
}

/// Oracle diversity of one receiver under `scheme`, seeded with the
/// scheme's breakpoints.
pub fn scheme_diversity(op: &OperatingPoint, scheme: &Scheme, rx: Receiver, cfg: &OracleConfig) -> f64 {
    let axes = scheme_candidates(op, scheme, cfg.gamma_max).for_receiver(rx);
    let pred = |g: &GammaTriple| scheme.highsnr_outage(g, op, rx);
    match rx {
        Receiver::Rx1 => infimum_with_candidates(pred, &axes, cfg),
        // One monotone axis: bisection along g22 is already exact.
        Receiver::Rx2 => infimum_seeded(pred, &axes, cfg),
    }
}
