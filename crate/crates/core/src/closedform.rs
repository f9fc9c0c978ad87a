//! Closed-form diversity exponents for every scheme.

use crate::error::{Error, Result};
use crate::model::{plus, DiversityPair, OperatingPoint, SplitParams};
use crate::regions::MixedParams;

/// Slack on the `b >= r1 + t2` branch test of `d12`. Tradeoff prescriptions
/// land exactly on that line and rounding must not flip the branch.
pub const BRANCH_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HkDiversityBreakdown {
    pub d11: f64,
    pub d12: f64,
    pub d1: f64,
    pub d21: f64,
    pub d22: f64,
    pub d2: f64,
}

impl HkDiversityBreakdown {
    pub fn pair(&self) -> DiversityPair {
        DiversityPair { d1: self.d1, d2: self.d2 }
    }
}

/// `d12` for common gain `t2` and split `b`.
///
/// The two branches disagree at `b = r1 + t2` whenever `beta > r1 + t2`; the
/// strict events put that line in the first branch.
pub fn hk_d12(op: &OperatingPoint, t2: f64, b: f64) -> f64 {
    let r = op.r1() + t2;
    if b >= r - BRANCH_SLACK {
        plus(1.0 - r) + plus(op.beta() - r)
    } else {
        plus(1.0 - r - plus(op.beta() - b))
    }
}

pub fn hk_diversity(op: &OperatingPoint, sp: &SplitParams) -> HkDiversityBreakdown {
    let (r1, r2, beta) = (op.r1(), op.r2(), op.beta());
    let d11 = plus(1.0 - r1 - plus(beta - sp.b()));
    let d12 = hk_d12(op, sp.t2(), sp.b());
    let d21 = plus(1.0 - r2);
    let d22 = plus(1.0 - r2 - sp.b() + sp.t2());
    HkDiversityBreakdown {
        d11,
        d12,
        d1: d11.min(d12),
        d21,
        d22,
        d2: d21.min(d22),
    }
}

pub fn cmo_diversity(op: &OperatingPoint) -> DiversityPair {
    let (r1, r2, beta) = (op.r1(), op.r2(), op.beta());
    let s = r1 + r2;
    DiversityPair {
        d1: plus(1.0 - r1).min(plus(1.0 - s) + plus(beta - s)),
        d2: plus(1.0 - r2),
    }
}

pub fn tian_diversity(op: &OperatingPoint) -> DiversityPair {
    DiversityPair {
        d1: plus(1.0 - op.r1() - op.beta()),
        d2: plus(1.0 - op.r2()),
    }
}

/// Which scheme supplies the envelope value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Cmo,
    Hk,
}

/// Better of CMO and HK at a fixed split; a tie on `d1` goes to CMO.
pub fn envelope_diversity(op: &OperatingPoint, sp: &SplitParams) -> (DiversityPair, Branch) {
    let cmo = cmo_diversity(op);
    let hk = hk_diversity(op, sp);
    if cmo.d1 >= hk.d1 {
        (cmo, Branch::Cmo)
    } else {
        (hk.pair(), Branch::Hk)
    }
}

/// Upper bounds on the CMO-then-HK time share, ignoring the third event at
/// each receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedBounds {
    pub d11: f64,
    pub d12: f64,
    pub d21: f64,
    pub d22: f64,
}

impl MixedBounds {
    pub fn pair(&self) -> DiversityPair {
        DiversityPair {
            d1: self.d11.min(self.d12),
            d2: self.d21.min(self.d22),
        }
    }
}

pub fn mixed_upper_bounds(op: &OperatingPoint, mp: &MixedParams) -> Result<MixedBounds> {
    let l = mp.lambda();
    if l <= 0.0 || l >= 1.0 {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: l,
            range: "(0, 1)",
        });
    }
    let (r1, r2, beta, b) = (op.r1(), op.r2(), op.beta(), mp.b());
    let d11 = plus(1.0 - r1 / l).max(plus(1.0 - r1 - (1.0 - l) * plus(beta - b)));

    let r = r1 + l * mp.t21();
    let d12 = if r >= l * beta + (1.0 - l) * b && b <= beta {
        plus(1.0 - r - (1.0 - l) * plus(beta - b))
    } else if b < r && r < l * beta + (1.0 - l) * b {
        let x = (r - (1.0 - l) * b) / l;
        plus(1.0 - x) + plus(beta - x)
    } else {
        // r <= b, and also b > beta with r > b, where the interference
        // bracket vanishes and the same form results.
        plus(1.0 - r) + plus(beta - r)
    };

    Ok(MixedBounds {
        d11,
        d12,
        d21: plus(1.0 - r2),
        d22: plus(1.0 - (r2 - l * mp.t21()) / (1.0 - l) - b),
    })
}
