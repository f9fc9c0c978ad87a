//! Outage-region membership: high-SNR exponent-domain predicates here, exact
//! finite-SNR predicates in [`finite`].
//!
//! Every event uses a strict inequality. Weakening a direct link (raising
//! `g11` or `g22`) never removes a point from an outage set. Raising `g21`
//! weakens the interference and can.

pub mod finite;

use crate::error::{finite as check_finite, in_range, Error, Result};
use crate::model::{plus, GammaTriple, OperatingPoint, SplitParams};

pub use finite::{finite_snr_outage, ChannelGains, FiniteModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Receiver {
    Rx1,
    Rx2,
}

impl Receiver {
    pub const BOTH: [Receiver; 2] = [Receiver::Rx1, Receiver::Rx2];

    pub fn index(self) -> u8 {
        match self {
            Receiver::Rx1 => 1,
            Receiver::Rx2 => 2,
        }
    }
}

/// How TX2 spreads its messages over the two slots of a time-shared block.
///
/// All three lead to the same high-SNR outage events; the tag is kept for
/// reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Independent messages per slot.
    Independent,
    /// A shared common message across slots with overlapping private parts.
    SharedCommon,
    /// Redundancy through both the common and private messages of each slot.
    Redundant,
}

impl Scenario {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Scenario::Independent),
            2 => Ok(Scenario::SharedCommon),
            3 => Ok(Scenario::Redundant),
            _ => Err(Error::OutOfRange {
                name: "scenario",
                value: i as f64,
                range: "{1, 2, 3}",
            }),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Scenario::Independent => 1,
            Scenario::SharedCommon => 2,
            Scenario::Redundant => 3,
        }
    }
}

/// Two-slot HK time sharing: slot 1 takes a fraction `lambda` of the block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeShareParams {
    lambda: f64,
    b1: f64,
    b2: f64,
    t21: f64,
    t22: f64,
    scenario: Scenario,
}

impl TimeShareParams {
    pub fn new(lambda: f64, b1: f64, b2: f64, t21: f64, t22: f64, scenario: Scenario) -> Result<Self> {
        Ok(Self {
            lambda: in_range("lambda", lambda, 0.0, 1.0, "[0, 1]")?,
            b1: nonneg("b1", b1)?,
            b2: nonneg("b2", b2)?,
            t21: nonneg("t21", t21)?,
            t22: nonneg("t22", t22)?,
            scenario,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn b1(&self) -> f64 {
        self.b1
    }
    pub fn b2(&self) -> f64 {
        self.b2
    }
    pub fn t21(&self) -> f64 {
        self.t21
    }
    pub fn t22(&self) -> f64 {
        self.t22
    }
    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    /// Slot-averaged power exponent `lambda b1 + (1 - lambda) b2`.
    pub fn b_c(&self) -> f64 {
        self.lambda * self.b1 + (1.0 - self.lambda) * self.b2
    }

    /// Common gain seen over the block, `lambda t21`.
    pub fn t_c(&self) -> f64 {
        self.lambda * self.t21
    }
}

/// CMO in slot 1 (fraction `lambda`), HK with power exponent `b` in slot 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedParams {
    lambda: f64,
    b: f64,
    t21: f64,
    t22: f64,
}

impl MixedParams {
    pub fn new(lambda: f64, b: f64, t21: f64, t22: f64) -> Result<Self> {
        Ok(Self {
            lambda: in_range("lambda", lambda, 0.0, 1.0, "[0, 1]")?,
            b: nonneg("b", b)?,
            t21: nonneg("t21", t21)?,
            t22: nonneg("t22", t22)?,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn t21(&self) -> f64 {
        self.t21
    }
    pub fn t22(&self) -> f64 {
        self.t22
    }
}

fn nonneg(name: &'static str, v: f64) -> Result<f64> {
    let v = check_finite(name, v)?;
    if v < 0.0 {
        return Err(Error::OutOfRange {
            name,
            value: v,
            range: "[0, inf)",
        });
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    Hk(SplitParams),
    Cmo,
    Tian,
    TimeShareHk(TimeShareParams),
    MixedCmoHk(MixedParams),
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Hk(_) => "hk",
            Scheme::Cmo => "cmo",
            Scheme::Tian => "tian",
            Scheme::TimeShareHk(_) => "timeshare",
            Scheme::MixedCmoHk(_) => "mixed",
        }
    }

    pub fn highsnr_outage(&self, g: &GammaTriple, op: &OperatingPoint, rx: Receiver) -> bool {
        match self {
            Scheme::Hk(sp) => hk_highsnr_outage(g, op, sp, rx),
            Scheme::Cmo => cmo_highsnr_outage(g, op, rx),
            Scheme::Tian => tian_highsnr_outage(g, op, rx),
            Scheme::TimeShareHk(tsp) => timeshare_highsnr_outage(g, op, tsp, rx),
            Scheme::MixedCmoHk(mp) => mixed_highsnr_outage(g, op, mp, rx),
        }
    }
}

/// HK events with raw parameters; `s2` may be negative for infeasible time
/// shares, in which case its event is empty.
#[inline]
fn hk_events(g: &GammaTriple, op: &OperatingPoint, t2: f64, b: f64, s2: f64, rx: Receiver) -> bool {
    match rx {
        Receiver::Rx1 => {
            let c = plus(op.beta() - g.g21 - b);
            if op.r1() > plus(1.0 - g.g11 - c) {
                return true;
            }
            let m = plus(1.0 - g.g11).max(plus(op.beta() - g.g21));
            op.r1() + t2 > plus(m - c)
        }
        Receiver::Rx2 => op.r2() > plus(1.0 - g.g22) || s2 > plus(1.0 - g.g22 - b),
    }
}

pub fn hk_highsnr_outage(g: &GammaTriple, op: &OperatingPoint, sp: &SplitParams, rx: Receiver) -> bool {
    hk_events(g, op, sp.t2(), sp.b(), sp.s2(), rx)
}

pub fn cmo_highsnr_outage(g: &GammaTriple, op: &OperatingPoint, rx: Receiver) -> bool {
    match rx {
        Receiver::Rx1 => {
            let a = plus(1.0 - g.g11);
            op.r1() > a || op.r1() + op.r2() > a.max(plus(op.beta() - g.g21))
        }
        Receiver::Rx2 => op.r2() > plus(1.0 - g.g22),
    }
}

pub fn tian_highsnr_outage(g: &GammaTriple, op: &OperatingPoint, rx: Receiver) -> bool {
    match rx {
        Receiver::Rx1 => op.r1() > plus(1.0 - g.g11 - plus(op.beta() - g.g21)),
        Receiver::Rx2 => op.r2() > plus(1.0 - g.g22),
    }
}

pub fn timeshare_highsnr_outage(
    g: &GammaTriple,
    op: &OperatingPoint,
    tsp: &TimeShareParams,
    rx: Receiver,
) -> bool {
    let t_c = tsp.t_c();
    hk_events(g, op, t_c, tsp.b_c(), op.r2() - t_c, rx)
}

pub fn mixed_highsnr_outage(g: &GammaTriple, op: &OperatingPoint, mp: &MixedParams, rx: Receiver) -> bool {
    let l = mp.lambda;
    let (r1, r2) = (op.r1(), op.r2());
    match rx {
        Receiver::Rx1 => {
            let a = plus(1.0 - g.g11);
            let c = plus(op.beta() - g.g21 - mp.b);
            let m = a.max(plus(op.beta() - g.g21));
            r1 > l * a + (1.0 - l) * plus(1.0 - g.g11 - c)
                || r1 + l * mp.t21 > l * m + (1.0 - l) * plus(m - c)
                || r1 + l * mp.t21 - (1.0 - l) * mp.t22 > l * m
        }
        Receiver::Rx2 => {
            let full = plus(1.0 - g.g22);
            let private = plus(1.0 - g.g22 - mp.b);
            r2 > full
                || r2 - l * mp.t21 > (1.0 - l) * private
                || r2 - (1.0 - l) * mp.t22 > l * full + (1.0 - l) * private
        }
    }
}
