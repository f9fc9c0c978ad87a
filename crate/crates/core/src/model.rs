//! Domain types shared by every other module.
//!
//! All quantities are SNR exponents: a multiplexing gain `r` means a rate of
//! `r log SNR`, a channel exponent `g` means `|h|^2 = SNR^-g`, and a diversity
//! `d` means an outage probability decaying like `SNR^-d`.

use crate::error::{finite, in_range, Error, Result};

/// `[x]+`, the positive part.
#[inline]
pub fn plus(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Multiplexing gains of both users and the interference-path exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    r1: f64,
    r2: f64,
    beta: f64,
}

impl OperatingPoint {
    pub fn new(r1: f64, r2: f64, beta: f64) -> Result<Self> {
        let r1 = in_range("r1", r1, 0.0, 1.0, "[0, 1]")?;
        let r2 = in_range("r2", r2, 0.0, 1.0, "[0, 1]")?;
        let beta = in_range("beta", beta, 0.0, f64::MAX, "[0, inf)")?;
        Ok(Self { r1, r2, beta })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Upper edge of the power-split range worth sweeping.
    ///
    /// Every bracket of the HK diversity formulas saturates once `b` passes
    /// `beta` and `r1 + t2`, and `d22` only falls as `b` grows, so nothing
    /// above this bound can be optimal.
    pub fn b_max(&self) -> f64 {
        self.beta + self.r1 + self.r2 + 1.0
    }
}

/// Han-Kobayashi split at TX2: common gain `t2` and power-split exponent `b`.
///
/// The private gain `s2 = r2 - t2` is derived from the operating point the
/// split was validated against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitParams {
    t2: f64,
    b: f64,
    s2: f64,
}

impl SplitParams {
    pub fn new(op: &OperatingPoint, t2: f64, b: f64) -> Result<Self> {
        let t2 = finite("t2", t2)?;
        if t2 < 0.0 || t2 > op.r2 {
            return Err(Error::OutOfRange {
                name: "t2",
                value: t2,
                range: "[0, r2]",
            });
        }
        let b = in_range("b", b, 0.0, f64::MAX, "[0, inf)")?;
        Ok(Self {
            t2,
            b,
            s2: plus(op.r2 - t2),
        })
    }

    /// The split `(t2, b) = (0, 0)` under which HK reduces to TIAN.
    pub fn tian(op: &OperatingPoint) -> Self {
        Self {
            t2: 0.0,
            b: 0.0,
            s2: op.r2,
        }
    }

    /// Rebinds the split to another operating point, re-checking `t2 <= r2`.
    pub fn rebind(&self, op: &OperatingPoint) -> Result<Self> {
        Self::new(op, self.t2, self.b)
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn s2(&self) -> f64 {
        self.s2
    }
}

/// Channel-gain exponents `(g11, g21, g22)` with `|h_ij|^2 = SNR^-g_ij`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaTriple {
    pub(crate) g11: f64,
    pub(crate) g21: f64,
    pub(crate) g22: f64,
}

impl GammaTriple {
    pub fn new(g11: f64, g21: f64, g22: f64) -> Result<Self> {
        Ok(Self {
            g11: in_range("g11", g11, 0.0, f64::INFINITY, "[0, inf)")?,
            g21: in_range("g21", g21, 0.0, f64::INFINITY, "[0, inf)")?,
            g22: in_range("g22", g22, 0.0, f64::INFINITY, "[0, inf)")?,
        })
    }

    pub(crate) const fn new_unchecked(g11: f64, g21: f64, g22: f64) -> Self {
        Self { g11, g21, g22 }
    }

    pub fn g11(&self) -> f64 {
        self.g11
    }

    pub fn g21(&self) -> f64 {
        self.g21
    }

    pub fn g22(&self) -> f64 {
        self.g22
    }
}

/// `g11 + g21 + g22`; its infimum over an outage set is the diversity order.
#[inline]
pub fn exponent_weight(g: &GammaTriple) -> f64 {
    g.g11 + g.g21 + g.g22
}

/// Per-receiver diversity exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiversityPair {
    pub d1: f64,
    pub d2: f64,
}

impl DiversityPair {
    /// Checks `d1 in [0, 1 + beta]` and `d2 in [0, 1]`.
    pub fn new(op: &OperatingPoint, d1: f64, d2: f64) -> Result<Self> {
        let d1 = finite("d1", d1)?;
        if d1 < 0.0 || d1 > 1.0 + op.beta {
            return Err(Error::OutOfRange {
                name: "d1",
                value: d1,
                range: "[0, 1 + beta]",
            });
        }
        let d2 = in_range("d2", d2, 0.0, 1.0, "[0, 1]")?;
        Ok(Self { d1, d2 })
    }
}
