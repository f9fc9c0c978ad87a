use thiserror::Error;

/// Errors raised by constructors and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("common rate t_c = {t_c} exceeds r2 = {r2}")]
    InfeasibleRate { t_c: f64, r2: f64 },

    #[error("beta = {0} > 1: closed-form tradeoff curves cover beta <= 1 only, use the oracle or sweep path")]
    HighInterference(f64),

    #[error("beta >= r1 + 2 r2: no HK split improves on CMO, so there is no tradeoff curve")]
    NoHkCurve,

    #[error("d1 = {d1} is outside the tradeoff span [{lo}, {hi}]")]
    OutsideSpan { d1: f64, lo: f64, hi: f64 },

    #[error("no tradeoff segment achieves d1 = {0}")]
    Unachievable(f64),

    #[error("snr_db must be > 0, got {0}")]
    NonPositiveSnr(f64),

    #[error("quadrature did not converge: estimate {estimate}, error estimate {error}")]
    NoConvergence { estimate: f64, error: f64 },

    #[error("outage probability is zero at {snr_db} dB; raise the tolerance or trial count, or lower the SNR")]
    ZeroProbability { snr_db: f64 },

    #[error("invalid SNR ladder: {0}")]
    InvalidLadder(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn in_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<f64> {
    let value = finite(name, value)?;
    if value < lo || value > hi {
        return Err(Error::OutOfRange { name, value, range });
    }
    Ok(value)
}
