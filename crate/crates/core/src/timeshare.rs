//! Does two-slot time sharing enlarge the fixed-split DGR?
//!
//! Draw `k` of a run with seed `s` depends only on `(s, k)`: it reads ChaCha8
//! stream `k`. Callers may evaluate draws in any order or in parallel and
//! fold them with [`Report::from_checks`] for the same result.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closedform::{hk_diversity, mixed_upper_bounds};
use crate::error::{Error, Result};
use crate::model::{DiversityPair, OperatingPoint, SplitParams};
use crate::oracle::{scheme_diversity, OracleConfig};
use crate::regions::{MixedParams, Receiver, Scenario, Scheme, TimeShareParams};
use crate::tradeoff::{full_envelope, TradeoffCurve};

/// Sampled `lambda` stays inside this range, away from the single-slot ends.
pub const LAMBDA_RANGE: (f64, f64) = (0.05, 0.95);

/// Resolution of the reference envelope.
pub const ENVELOPE_RESOLUTION: f64 = 1e-3;

/// The fixed split with the same high-SNR events: `(t_c, b_c)`.
pub fn timeshare_equivalent_split(tsp: &TimeShareParams, op: &OperatingPoint) -> Result<SplitParams> {
    let t_c = tsp.t_c();
    if t_c > op.r2() {
        return Err(Error::InfeasibleRate { t_c, r2: op.r2() });
    }
    SplitParams::new(op, t_c, tsp.b_c())
}

struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self(rng)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn between(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

/// Time-share draw `index`: `t21` is capped so that `t_c <= r2`.
pub fn draw_timeshare(op: &OperatingPoint, seed: u64, index: u64) -> TimeShareParams {
    let mut d = Draw::new(seed, index);
    let lambda = d.between(LAMBDA_RANGE.0, LAMBDA_RANGE.1);
    let b1 = d.between(0.0, op.b_max());
    let b2 = d.between(0.0, op.b_max());
    let t21 = d.between(0.0, (op.r2() / lambda).min(1.0));
    let t22 = d.between(0.0, op.r2());
    let scenario = Scenario::from_index(1 + (d.0.next_u64() % 3) as u8).expect("index in 1..=3");
    TimeShareParams::new(lambda, b1, b2, t21, t22, scenario).expect("draw lies in the box")
}

/// Mixed draw `index`: the slot common gains never exceed `r2` in total.
pub fn draw_mixed(op: &OperatingPoint, seed: u64, index: u64) -> MixedParams {
    let mut d = Draw::new(seed, index);
    let lambda = d.between(LAMBDA_RANGE.0, LAMBDA_RANGE.1);
    let b = d.between(0.0, op.b_max());
    let t21 = d.between(0.0, (op.r2() / lambda).min(1.0));
    let t22 = d.between(0.0, (op.r2() - lambda * t21) / (1.0 - lambda));
    MixedParams::new(lambda, b, t21, t22).expect("draw lies in the box")
}

fn oracle_pair(op: &OperatingPoint, scheme: &Scheme, cfg: &OracleConfig) -> DiversityPair {
    DiversityPair {
        d1: scheme_diversity(op, scheme, Receiver::Rx1, cfg),
        d2: scheme_diversity(op, scheme, Receiver::Rx2, cfg),
    }
}

fn agree(a: &DiversityPair, b: &DiversityPair, tol: f64) -> bool {
    (a.d1 - b.d1).abs() <= tol && (a.d2 - b.d2).abs() <= tol
}

pub trait Check {
    fn index(&self) -> u64;
    fn passed(&self) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeshareCheck {
    pub index: u64,
    pub params: TimeShareParams,
    pub oracle: DiversityPair,
    pub closed: DiversityPair,
    pub agrees: bool,
    pub dominated: bool,
}

impl Check for TimeshareCheck {
    fn index(&self) -> u64 {
        self.index
    }
    fn passed(&self) -> bool {
        self.agrees && self.dominated
    }
}

/// Shared inputs of every draw at one operating point.
#[derive(Debug, Clone)]
pub struct Verifier {
    pub op: OperatingPoint,
    pub oracle: OracleConfig,
    pub envelope: TradeoffCurve,
    pub tolerance: f64,
}

impl Verifier {
    pub fn new(op: &OperatingPoint) -> Result<Self> {
        let oracle = OracleConfig::for_beta(op.beta());
        Ok(Self {
            op: *op,
            oracle,
            envelope: full_envelope(op, ENVELOPE_RESOLUTION)?,
            tolerance: oracle.tolerance(),
        })
    }

    pub fn check_timeshare(&self, index: u64, tsp: &TimeShareParams) -> Result<TimeshareCheck> {
        let sp = timeshare_equivalent_split(tsp, &self.op)?;
        let closed = hk_diversity(&self.op, &sp).pair();
        let oracle = oracle_pair(&self.op, &Scheme::TimeShareHk(*tsp), &self.oracle);
        Ok(TimeshareCheck {
            index,
            params: *tsp,
            oracle,
            closed,
            agrees: agree(&oracle, &closed, self.tolerance),
            dominated: self.envelope.dominates(&oracle, self.tolerance)
                && self.envelope.dominates(&closed, self.tolerance),
        })
    }

    pub fn check_mixed(&self, index: u64, mp: &MixedParams) -> Result<MixedCheck> {
        let bounds = mixed_upper_bounds(&self.op, mp)?.pair();
        let oracle = oracle_pair(&self.op, &Scheme::MixedCmoHk(*mp), &self.oracle);
        let tol = self.tolerance;
        Ok(MixedCheck {
            index,
            params: *mp,
            bounds,
            oracle,
            bounds_dominated: self.envelope.dominates(&bounds, tol),
            bounds_above_oracle: bounds.d1 >= oracle.d1 - tol && bounds.d2 >= oracle.d2 - tol,
            oracle_dominated: self.envelope.dominates(&oracle, tol),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedCheck {
    pub index: u64,
    pub params: MixedParams,
    /// The two-event upper bounds.
    pub bounds: DiversityPair,
    /// The oracle on the full three-event regions.
    pub oracle: DiversityPair,
    pub bounds_dominated: bool,
    pub bounds_above_oracle: bool,
    pub oracle_dominated: bool,
}

impl Check for MixedCheck {
    fn index(&self) -> u64 {
        self.index
    }
    fn passed(&self) -> bool {
        self.bounds_dominated && self.bounds_above_oracle && self.oracle_dominated
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report<C> {
    pub op: OperatingPoint,
    pub seed: u64,
    pub samples: u64,
    pub tolerance: f64,
    /// Every failing draw, in index order.
    pub counterexamples: Vec<C>,
}

impl<C: Check> Report<C> {
    /// Folds checks evaluated in any order; counterexamples are sorted by
    /// draw index.
    pub fn from_checks(
        op: &OperatingPoint,
        seed: u64,
        tolerance: f64,
        checks: impl IntoIterator<Item = C>,
    ) -> Self {
        let mut samples = 0;
        let mut counterexamples = Vec::new();
        for c in checks {
            samples += 1;
            if !c.passed() {
                counterexamples.push(c);
            }
        }
        counterexamples.sort_by_key(C::index);
        Self {
            op: *op,
            seed,
            samples,
            tolerance,
            counterexamples,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::OutOfRange {
            name: "samples",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    Ok(())
}

pub fn verify_timeshare_dominance(op: &OperatingPoint, samples: u64, seed: u64) -> Result<Report<TimeshareCheck>> {
    check_samples(samples)?;
    let v = Verifier::new(op)?;
    let checks = (0..samples)
        .map(|k| v.check_timeshare(k, &draw_timeshare(op, seed, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::from_checks(op, seed, v.tolerance, checks))
}

pub fn verify_mixed_dominance(op: &OperatingPoint, samples: u64, seed: u64) -> Result<Report<MixedCheck>> {
    check_samples(samples)?;
    let v = Verifier::new(op)?;
    let checks = (0..samples)
        .map(|k| v.check_mixed(k, &draw_mixed(op, seed, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::from_checks(op, seed, v.tolerance, checks))
}
