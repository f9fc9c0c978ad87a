//! Exact mutual-information outage events at a finite SNR.
//!
//! Rates and capacities are in nats. The power split is the exact
//! `alpha = 1 / (1 + SNR^b)`, so a split with `b = 0` still gives the private
//! message half the power.

use libm::{log1p, pow};

use super::{Receiver, Scheme};
use crate::error::{Error, Result};
use crate::model::OperatingPoint;

/// Instantaneous channel powers `|h11|^2`, `|h21|^2`, `|h22|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    pub h11_sq: f64,
    pub h21_sq: f64,
    pub h22_sq: f64,
}

impl ChannelGains {
    pub fn new(h11_sq: f64, h21_sq: f64, h22_sq: f64) -> Self {
        Self { h11_sq, h21_sq, h22_sq }
    }

    /// Gains `|h|^2 = SNR^-g` for an exponent triple.
    pub fn from_exponents(snr: f64, g11: f64, g21: f64, g22: f64) -> Self {
        Self::new(pow(snr, -g11), pow(snr, -g21), pow(snr, -g22))
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Hk { alpha: f64, t2: f64, s2: f64 },
    Cmo,
    Tian,
    TimeShare { lambda: f64, alpha1: f64, alpha2: f64, t21: f64 },
    Mixed { lambda: f64, alpha: f64, t21: f64, t22: f64 },
}

/// A scheme bound to an operating point and an SNR, with every
/// gain-independent quantity precomputed.
#[derive(Debug, Clone, Copy)]
pub struct FiniteModel {
    snr: f64,
    snr_beta: f64,
    rate1: f64,
    rate2: f64,
    nats: f64,
    kind: Kind,
}

/// `1 / (1 + SNR^b)`, the private-message power fraction.
fn private_fraction(snr: f64, b: f64) -> f64 {
    1.0 / (1.0 + pow(snr, b))
}

impl FiniteModel {
    pub fn new(op: &OperatingPoint, scheme: &Scheme, snr_db: f64) -> Result<Self> {
        if !snr_db.is_finite() || snr_db <= 0.0 {
            return Err(Error::NonPositiveSnr(snr_db));
        }
        let snr = pow(10.0, snr_db / 10.0);
        let nats = libm::log(snr);
        let kind = match *scheme {
            Scheme::Hk(sp) => Kind::Hk {
                alpha: private_fraction(snr, sp.b()),
                t2: sp.t2() * nats,
                s2: sp.s2() * nats,
            },
            Scheme::Cmo => Kind::Cmo,
            Scheme::Tian => Kind::Tian,
            Scheme::TimeShareHk(tsp) => Kind::TimeShare {
                lambda: tsp.lambda(),
                alpha1: private_fraction(snr, tsp.b1()),
                alpha2: private_fraction(snr, tsp.b2()),
                t21: tsp.t21() * nats,
            },
            Scheme::MixedCmoHk(mp) => Kind::Mixed {
                lambda: mp.lambda(),
                alpha: private_fraction(snr, mp.b()),
                t21: mp.t21() * nats,
                t22: mp.t22() * nats,
            },
        };
        Ok(Self {
            snr,
            snr_beta: pow(snr, op.beta()),
            rate1: op.r1() * nats,
            rate2: op.r2() * nats,
            nats,
            kind,
        })
    }

    pub fn snr(&self) -> f64 {
        self.snr
    }

    /// `ln SNR`, the nat value of one unit of multiplexing gain.
    pub fn nats_per_gain(&self) -> f64 {
        self.nats
    }

    /// Rate of the desired message alone, interference partly treated as noise.
    #[inline]
    fn own(&self, x: f64, y: f64, alpha: f64) -> f64 {
        log1p(self.snr * x / (1.0 + alpha * self.snr_beta * y))
    }

    /// Sum rate of the desired message and TX2's common part.
    #[inline]
    fn joint(&self, x: f64, y: f64, alpha: f64) -> f64 {
        log1p((self.snr * x + self.snr_beta * y) / (1.0 + alpha * self.snr_beta * y))
    }

    pub fn rx1_outage(&self, x: f64, y: f64) -> bool {
        let r1 = self.rate1;
        match self.kind {
            Kind::Hk { alpha, t2, .. } => r1 > self.own(x, y, alpha) || r1 + t2 > self.joint(x, y, alpha),
            Kind::Cmo => r1 > self.own(x, y, 0.0) || r1 + self.rate2 > self.joint(x, y, 0.0),
            Kind::Tian => r1 > self.own(x, y, 1.0),
            Kind::TimeShare { lambda, alpha1, alpha2, t21 } => {
                let l = lambda;
                r1 > l * self.own(x, y, alpha1) + (1.0 - l) * self.own(x, y, alpha2)
                    || r1 + l * t21 > l * self.joint(x, y, alpha1) + (1.0 - l) * self.joint(x, y, alpha2)
            }
            Kind::Mixed { lambda, alpha, t21, t22 } => {
                let l = lambda;
                let joint_cmo = self.joint(x, y, 0.0);
                r1 > l * self.own(x, y, 0.0) + (1.0 - l) * self.own(x, y, alpha)
                    || r1 + l * t21 > l * joint_cmo + (1.0 - l) * self.joint(x, y, alpha)
                    || r1 + l * t21 - (1.0 - l) * t22 > l * joint_cmo
            }
        }
    }

    pub fn rx2_outage(&self, z: f64) -> bool {
        let r2 = self.rate2;
        let full = log1p(self.snr * z);
        if r2 > full {
            return true;
        }
        // The common-message event T2 > full is implied by R2 > full.
        match self.kind {
            Kind::Hk { alpha, s2, .. } => s2 > log1p(alpha * self.snr * z),
            Kind::Cmo | Kind::Tian => false,
            Kind::TimeShare { lambda, alpha1, alpha2, t21 } => {
                let l = lambda;
                r2 - l * t21 > l * log1p(alpha1 * self.snr * z) + (1.0 - l) * log1p(alpha2 * self.snr * z)
            }
            Kind::Mixed { lambda, alpha, t21, t22 } => {
                let l = lambda;
                let private = log1p(alpha * self.snr * z);
                r2 - l * t21 > (1.0 - l) * private || r2 - (1.0 - l) * t22 > l * full + (1.0 - l) * private
            }
        }
    }

    pub fn outage(&self, rx: Receiver, gains: &ChannelGains) -> bool {
        match rx {
            Receiver::Rx1 => self.rx1_outage(gains.h11_sq, gains.h21_sq),
            Receiver::Rx2 => self.rx2_outage(gains.h22_sq),
        }
    }

    /// Closed-form RX2 threshold for the single-event schemes: outage iff
    /// `|h22|^2 < (e^R2 - 1) / SNR`.
    pub fn rx2_rate_threshold(&self) -> f64 {
        libm::expm1(self.rate2) / self.snr
    }
}

/// Exact outage membership at `snr_db` for one receiver.
pub fn finite_snr_outage(
    gains: &ChannelGains,
    snr_db: f64,
    op: &OperatingPoint,
    scheme: &Scheme,
    rx: Receiver,
) -> Result<bool> {
    Ok(FiniteModel::new(op, scheme, snr_db)?.outage(rx, gains))
}
