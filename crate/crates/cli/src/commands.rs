use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use zic_dgr::closedform::{cmo_diversity, hk_diversity, tian_diversity};
use zic_dgr::finitesnr::{
    fit_diversity, ladder_db, montecarlo_chunk, outage_prob_quadrature, LadderPoint, McEstimate, SnrLadder,
};
use zic_dgr::oracle::{scheme_diversity, OracleConfig};
use zic_dgr::regions::FiniteModel;
use zic_dgr::timeshare::{draw_mixed, draw_timeshare, Check, MixedCheck, Report, TimeshareCheck, Verifier, ENVELOPE_RESOLUTION};
use zic_dgr::tradeoff::{classify_mgr, full_envelope, pareto, sweep_strata, sweep_stratum, CurvePoint, TradeoffCurve};
use zic_dgr::{DiversityPair, OperatingPoint, Receiver, Scheme, SplitParams};

use crate::args::{
    ClassifyArgs, CurveArgs, CurveMethod, DiversityArgs, LadderArgs, LadderMethod, OpArgs, SchemeArgs, SchemeKind,
    VerifyArgs, VerifyOracleArgs,
};
use crate::output::{cell, Outcome, Table};
use crate::CliError;

/// Trials per Monte Carlo work unit.
pub const MC_CHUNK: u64 = 1 << 16;

fn op(a: &OpArgs) -> Result<OperatingPoint, CliError> {
    Ok(OperatingPoint::new(a.r1, a.r2, a.beta)?)
}

/// Scheme named by the flags; `--t2`/`--b` are required for hk and
/// rejected otherwise.
pub fn scheme(o: &OperatingPoint, a: &SchemeArgs) -> Result<Scheme, CliError> {
    match (a.scheme, a.t2, a.b) {
        (SchemeKind::Hk, Some(t2), Some(b)) => Ok(Scheme::Hk(SplitParams::new(o, t2, b)?)),
        (SchemeKind::Hk, None, _) => Err(CliError::Usage("--scheme hk requires --t2".into())),
        (SchemeKind::Hk, _, None) => Err(CliError::Usage("--scheme hk requires --b".into())),
        (k, t2, b) => {
            if t2.is_some() || b.is_some() {
                let flag = if t2.is_some() { "--t2" } else { "--b" };
                return Err(CliError::Usage(format!("{flag} only applies to --scheme hk")));
            }
            Ok(if k == SchemeKind::Cmo { Scheme::Cmo } else { Scheme::Tian })
        }
    }
}

fn pair(p: &DiversityPair) -> Value {
    json!({"d1": p.d1, "d2": p.d2})
}

fn closed_form(o: &OperatingPoint, s: &Scheme) -> DiversityPair {
    match s {
        Scheme::Hk(sp) => hk_diversity(o, sp).pair(),
        Scheme::Cmo => cmo_diversity(o),
        _ => tian_diversity(o),
    }
}

fn op_json(o: &OperatingPoint) -> Value {
    json!({"r1": o.r1(), "r2": o.r2(), "beta": o.beta()})
}

pub fn diversity(a: &DiversityArgs) -> Result<Outcome, CliError> {
    let o = op(&a.op)?;
    let results = match scheme(&o, &a.scheme)? {
        Scheme::Hk(sp) => {
            let h = hk_diversity(&o, &sp);
            json!({"d11": h.d11, "d12": h.d12, "d1": h.d1, "d21": h.d21, "d22": h.d22, "d2": h.d2})
        }
        s => pair(&closed_form(&o, &s)),
    };
    Ok(Outcome {
        results,
        counterexamples: Vec::new(),
        tolerances: json!({}),
        table: None,
    })
}

pub fn classify(a: &ClassifyArgs) -> Result<Outcome, CliError> {
    let c = classify_mgr(&op(&a.op)?)?;
    let case = format!("{:?}", c.case).to_lowercase();
    Ok(Outcome {
        results: json!({"case": case, "feasibility": c.to_string()}),
        counterexamples: Vec::new(),
        tolerances: json!({}),
        table: None,
    })
}

/// [`zic_dgr::tradeoff::sweep_dgr`] with strata evaluated in parallel.
pub fn sweep_parallel(o: &OperatingPoint, resolution: f64) -> Result<TradeoffCurve, CliError> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(CliError::Usage(format!("--resolution must be positive, got {resolution}")));
    }
    let all: Vec<CurvePoint> = (0..sweep_strata(o, resolution))
        .into_par_iter()
        .flat_map_iter(|i| sweep_stratum(o, resolution, i))
        .collect();
    Ok(TradeoffCurve {
        points: pareto(all),
        breakpoints: None,
    })
}

pub fn curve(a: &CurveArgs) -> Result<Outcome, CliError> {
    let o = op(&a.op)?;
    let c = match a.method {
        CurveMethod::Envelope => full_envelope(&o, a.resolution)?,
        CurveMethod::Sweep => sweep_parallel(&o, a.resolution)?,
    };
    let breakpoints = c.breakpoints.map(|bp| {
        Value::Object(bp.named().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
    });
    let points: Vec<Value> = c
        .points
        .iter()
        .map(|p| json!({"d1": p.d1, "d2": p.d2, "t2": p.t2, "b": p.b, "segment": p.segment.to_string()}))
        .collect();
    let rows = c
        .points
        .iter()
        .map(|p| vec![cell(p.d1), cell(p.d2), cell(p.t2), cell(p.b), p.segment.to_string()])
        .collect();
    let notes = breakpoints
        .iter()
        .flat_map(|b| b.as_object().into_iter().flatten())
        .map(|(k, v)| format!("breakpoint {k}: {}", cell(v.as_f64().unwrap_or(f64::NAN))))
        .collect();
    Ok(Outcome {
        results: json!({"breakpoints": breakpoints, "points": points}),
        counterexamples: Vec::new(),
        tolerances: json!({"resolution": a.resolution}),
        table: Some(Table {
            header: vec!["d1", "d2", "t2", "b", "segment"],
            rows,
            notes,
        }),
    })
}

/// One random configuration of the oracle check.
#[derive(Debug, Clone, Copy)]
pub struct OracleDraw {
    pub op: OperatingPoint,
    pub split: SplitParams,
}

/// Configuration `index` of seed `seed`: `r1, r2, beta` uniform on `[0, 1)`,
/// `t2` uniform on `[0, r2]`, `b` uniform on `[0, b_max]`.
pub fn draw_oracle_config(seed: u64, index: u64) -> OracleDraw {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut unit = || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let o = OperatingPoint::new(unit(), unit(), unit()).expect("unit draws are valid");
    let (t, b) = (unit(), unit());
    let split = SplitParams::new(&o, t * o.r2(), b * o.b_max()).expect("drawn split is valid");
    OracleDraw { op: o, split }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleMismatch {
    pub index: u64,
    pub r1: f64,
    pub r2: f64,
    pub beta: f64,
    pub t2: f64,
    pub b: f64,
    pub scheme: &'static str,
    pub receiver: u8,
    pub oracle: f64,
    pub closed_form: f64,
}

/// Largest error over HK, CMO and TIAN at both receivers, and every
/// check above tolerance.
pub fn check_oracle_config(index: u64, d: &OracleDraw) -> (f64, Vec<OracleMismatch>) {
    let cfg = OracleConfig::for_beta(d.op.beta());
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for s in [Scheme::Hk(d.split), Scheme::Cmo, Scheme::Tian] {
        let want = closed_form(&d.op, &s);
        for (rx, w) in Receiver::BOTH.into_iter().zip([want.d1, want.d2]) {
            let got = scheme_diversity(&d.op, &s, rx, &cfg);
            let err = (got - w).abs();
            worst = worst.max(err);
            if err > cfg.tolerance() {
                bad.push(OracleMismatch {
                    index,
                    r1: d.op.r1(),
                    r2: d.op.r2(),
                    beta: d.op.beta(),
                    t2: d.split.t2(),
                    b: d.split.b(),
                    scheme: s.name(),
                    receiver: rx.index(),
                    oracle: got,
                    closed_form: w,
                });
            }
        }
    }
    (worst, bad)
}

pub fn verify_oracle(a: &VerifyOracleArgs) -> Result<Outcome, CliError> {
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let per: Vec<(f64, Vec<OracleMismatch>)> = (0..a.trials)
        .into_par_iter()
        .map(|k| check_oracle_config(k, &draw_oracle_config(a.seed, k)))
        .collect();
    let worst = per.iter().map(|p| p.0).fold(0.0, f64::max);
    let bad: Vec<Value> = per
        .into_iter()
        .flat_map(|p| p.1)
        .map(|m| serde_json::to_value(m).expect("plain struct"))
        .collect();
    Ok(Outcome {
        results: json!({
            "configurations": a.trials,
            "checks": a.trials * 6,
            "max_error": worst,
            "passed": bad.is_empty(),
        }),
        counterexamples: bad,
        tolerances: json!({"oracle": OracleConfig::for_beta(1.0).tolerance()}),
        table: None,
    })
}

/// Every draw of a time-sharing run, evaluated in parallel.
pub fn timeshare_report(o: &OperatingPoint, samples: u64, seed: u64) -> Result<Report<TimeshareCheck>, CliError> {
    let v = Verifier::new(o)?;
    let checks = (0..samples)
        .into_par_iter()
        .map(|k| v.check_timeshare(k, &draw_timeshare(o, seed, k)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report::from_checks(o, seed, v.tolerance, checks))
}

/// Every draw of a mixed CMO+HK run, evaluated in parallel.
pub fn mixed_report(o: &OperatingPoint, samples: u64, seed: u64) -> Result<Report<MixedCheck>, CliError> {
    let v = Verifier::new(o)?;
    let checks = (0..samples)
        .into_par_iter()
        .map(|k| v.check_mixed(k, &draw_mixed(o, seed, k)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report::from_checks(o, seed, v.tolerance, checks))
}

fn timeshare_json(c: &TimeshareCheck) -> Value {
    let p = &c.params;
    json!({
        "index": c.index,
        "params": {
            "lambda": p.lambda(), "b1": p.b1(), "b2": p.b2(), "t21": p.t21(), "t22": p.t22(),
            "scenario": p.scenario().index(), "b_c": p.b_c(), "t_c": p.t_c(),
        },
        "oracle": pair(&c.oracle),
        "closed_form": pair(&c.closed),
        "agrees": c.agrees,
        "dominated": c.dominated,
    })
}

fn mixed_json(c: &MixedCheck) -> Value {
    let p = &c.params;
    json!({
        "index": c.index,
        "params": {"lambda": p.lambda(), "b": p.b(), "t21": p.t21(), "t22": p.t22()},
        "bounds": pair(&c.bounds),
        "oracle": pair(&c.oracle),
        "bounds_dominated": c.bounds_dominated,
        "bounds_above_oracle": c.bounds_above_oracle,
        "oracle_dominated": c.oracle_dominated,
    })
}

fn report_outcome<C: Check>(r: &Report<C>, to_json: fn(&C) -> Value) -> Outcome {
    Outcome {
        results: json!({
            "op": op_json(&r.op),
            "seed": r.seed,
            "samples": r.samples,
            "failures": r.counterexamples.len(),
            "passed": r.passed(),
        }),
        counterexamples: r.counterexamples.iter().map(to_json).collect(),
        tolerances: json!({"oracle": r.tolerance, "envelope_resolution": ENVELOPE_RESOLUTION}),
        table: None,
    }
}

fn check_trials(trials: u64) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    Ok(())
}

pub fn verify_timeshare(a: &VerifyArgs) -> Result<Outcome, CliError> {
    check_trials(a.trials)?;
    Ok(report_outcome(&timeshare_report(&op(&a.op)?, a.trials, a.seed)?, timeshare_json))
}

pub fn verify_mixed(a: &VerifyArgs) -> Result<Outcome, CliError> {
    check_trials(a.trials)?;
    Ok(report_outcome(&mixed_report(&op(&a.op)?, a.trials, a.seed)?, mixed_json))
}

/// Monte Carlo outage estimate with chunks of [`MC_CHUNK`] trials run in
/// parallel; identical to a single sequential chunk.
pub fn montecarlo_parallel(model: &FiniteModel, rx: Receiver, seed: u64, trials: u64) -> McEstimate {
    let chunks = trials.div_ceil(MC_CHUNK);
    let outages = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * MC_CHUNK;
            montecarlo_chunk(model, rx, seed, start, MC_CHUNK.min(trials - start))
        })
        .sum();
    McEstimate::from_counts(outages, trials)
}

/// Parses `start:step:stop`.
pub fn parse_snr_ladder(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("--snr-db expects start:step:stop, got {spec:?}"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [start, step, stop] = parts[..] else { return Err(bad()) };
    ladder_db(start, step, stop).map_err(|e| CliError::Usage(format!("--snr-db: {e}")))
}

/// One rung: probability and, for Monte Carlo, its half-width.
fn rung(
    o: &OperatingPoint,
    s: &Scheme,
    rx: Receiver,
    snr_db: f64,
    a: &LadderArgs,
) -> Result<LadderPoint, CliError> {
    Ok(match a.method {
        LadderMethod::Quadrature => LadderPoint {
            snr_db,
            probability: outage_prob_quadrature(o, s, rx, snr_db, a.tol)?,
            half_width: None,
        },
        LadderMethod::Montecarlo => {
            let m = montecarlo_parallel(&FiniteModel::new(o, s, snr_db)?, rx, a.seed, a.trials);
            LadderPoint {
                snr_db,
                probability: m.probability,
                half_width: Some(m.half_width),
            }
        }
    })
}

pub fn ladder(a: &LadderArgs) -> Result<Outcome, CliError> {
    let o = op(&a.op)?;
    let s = scheme(&o, &a.scheme)?;
    let snrs = parse_snr_ladder(&a.snr_db)?;
    match a.method {
        LadderMethod::Montecarlo => check_trials(a.trials)?,
        LadderMethod::Quadrature if a.tol.is_nan() || a.tol <= 0.0 => {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", a.tol)))
        }
        LadderMethod::Quadrature => {}
    }
    let jobs: Vec<(f64, Receiver)> = snrs.iter().flat_map(|&x| Receiver::BOTH.map(|rx| (x, rx))).collect();
    let rungs = jobs
        .par_iter()
        .map(|&(x, rx)| rung(&o, &s, rx, x, a))
        .collect::<Result<Vec<_>, _>>()?;
    let (rx1, rx2): (Vec<LadderPoint>, Vec<LadderPoint>) = rungs.chunks(2).map(|c| (c[0], c[1])).unzip();

    let method = match a.method {
        LadderMethod::Quadrature => "quadrature",
        LadderMethod::Montecarlo => "montecarlo",
    };
    let want = closed_form(&o, &s);
    let mut fits = serde_json::Map::new();
    let mut notes = Vec::new();
    for (name, pts, d) in [("rx1", &rx1, want.d1), ("rx2", &rx2, want.d2)] {
        let v = match SnrLadder::new(pts.clone()) {
            Ok(l) => {
                let f = fit_diversity(&l);
                notes.push(format!(
                    "fit {name}: d_hat={} closed_form={} points_used={}",
                    cell(f.d_hat),
                    cell(d),
                    f.points_used
                ));
                json!({"d_hat": f.d_hat, "intercept": f.intercept, "residual": f.residual,
                       "points_used": f.points_used, "closed_form": d})
            }
            Err(e) => {
                notes.push(format!("fit {name}: unavailable ({e})"));
                json!({"error": e.to_string(), "closed_form": d})
            }
        };
        fits.insert(name.into(), v);
    }
    let points: Vec<Value> = rx1
        .iter()
        .zip(&rx2)
        .map(|(p, q)| {
            json!({"snr_db": p.snr_db, "p_out_rx1": p.probability, "p_out_rx2": q.probability,
                   "half_width_rx1": p.half_width, "half_width_rx2": q.half_width})
        })
        .collect();
    let rows = rx1
        .iter()
        .zip(&rx2)
        .map(|(p, q)| vec![cell(p.snr_db), cell(p.probability), cell(q.probability), method.to_string()])
        .collect();
    let tolerances = match a.method {
        LadderMethod::Quadrature => json!({"quadrature_abs": a.tol}),
        LadderMethod::Montecarlo => json!({"confidence": 0.95, "trials": a.trials}),
    };
    Ok(Outcome {
        results: json!({"method": method, "points": points, "fits": fits}),
        counterexamples: Vec::new(),
        tolerances,
        table: Some(Table {
            header: vec!["snr_db", "p_out_rx1", "p_out_rx2", "method"],
            rows,
            notes,
        }),
    })
}
