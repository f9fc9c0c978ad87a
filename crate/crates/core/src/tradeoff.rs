//! RX1/RX2 diversity tradeoff of the HK scheme under low-level interference.
//!
//! [`classify_mgr`] says whether any split beats CMO at RX1, [`theorem2_d2`]
//! gives the best `d2` for a target `d1` together with the split achieving
//! it, and [`sweep_dgr`] grids every split as an independent check.

use alloc::vec::Vec;
use core::fmt;

use crate::closedform::{cmo_diversity, hk_diversity};
use crate::error::{finite, Error, Result};
use crate::model::{plus, DiversityPair, OperatingPoint, SplitParams};

/// Multiplexing-gain region of an operating point with `beta <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgrCase {
    /// `beta >= r1 + 2 r2`: no split beats CMO at RX1.
    Case1,
    /// `r1 + r2 <= beta < r1 + 2 r2`.
    Case2,
    /// `beta < r1 + r2`.
    Case3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub case: MgrCase,
    op: OperatingPoint,
}

impl Classification {
    /// Smallest `b` for which the split `(t2, b)` reaches CMO's RX1
    /// diversity; `None` in Case 1.
    pub fn min_b(&self, t2: f64) -> Option<f64> {
        let (r1, r2, beta) = (self.op.r1(), self.op.r2(), self.op.beta());
        match self.case {
            MgrCase::Case1 => None,
            MgrCase::Case2 => Some((r1 + t2).max(2.0 * beta - (r1 + 2.0 * r2))),
            MgrCase::Case3 => Some(beta - (r2.min(1.0 - r1) - t2)),
        }
    }

    pub fn is_feasible(&self, t2: f64, b: f64) -> bool {
        self.min_b(t2).is_some_and(|m| b >= m)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r1, r2, beta) = (self.op.r1(), self.op.r2(), self.op.beta());
        match self.case {
            MgrCase::Case1 => write!(f, "Case1: d1_HK <= d1_CMO for every (t2, b)"),
            MgrCase::Case2 => write!(
                f,
                "Case2: d1_HK >= d1_CMO for b >= max{{{r1} + t2, {}}}",
                2.0 * beta - (r1 + 2.0 * r2)
            ),
            MgrCase::Case3 => write!(f, "Case3: d1_HK >= d1_CMO for b >= {} + t2", beta - r2.min(1.0 - r1)),
        }
    }
}

pub fn classify_mgr(op: &OperatingPoint) -> Result<Classification> {
    let (r1, r2, beta) = (op.r1(), op.r2(), op.beta());
    if beta > 1.0 {
        return Err(Error::HighInterference(beta));
    }
    let case = if beta >= r1 + 2.0 * r2 {
        MgrCase::Case1
    } else if beta >= r1 + r2 {
        MgrCase::Case2
    } else {
        MgrCase::Case3
    };
    Ok(Classification { case, op: *op })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Breakpoints {
    Case2 { a11: f64, a12: f64, a13: f64 },
    Case3 { a21: f64, a22: f64, a23: f64, a24: f64, a25: f64 },
}

impl Breakpoints {
    pub fn named(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Breakpoints::Case2 { a11, a12, a13 } => alloc::vec![("a11", a11), ("a12", a12), ("a13", a13)],
            Breakpoints::Case3 { a21, a22, a23, a24, a25 } => {
                alloc::vec![("a21", a21), ("a22", a22), ("a23", a23), ("a24", a24), ("a25", a25)]
            }
        }
    }

    /// The `d1` range covered by the curve.
    pub fn span(&self) -> (f64, f64) {
        match *self {
            Breakpoints::Case2 { a11, a13, .. } => (a11, a13),
            Breakpoints::Case3 { a21, a25, .. } => (a21, a25),
        }
    }
}

pub fn theorem2_breakpoints(op: &OperatingPoint) -> Result<Breakpoints> {
    let (r1, r2, beta) = (op.r1(), op.r2(), op.beta());
    let third = (beta + 2.0 * r1) / 3.0;
    match classify_mgr(op)?.case {
        MgrCase::Case1 => Err(Error::NoHkCurve),
        MgrCase::Case2 => {
            let a11 = plus(1.0 + beta - 2.0 * (r1 + r2));
            Ok(Breakpoints::Case2 {
                a11,
                a12: a11.max(plus(1.0 - third)),
                a13: plus(1.0 - r1),
            })
        }
        MgrCase::Case3 => Ok(Breakpoints::Case3 {
            a21: plus(1.0 - r1 - r2),
            a22: plus(1.0 - r1 - r2.min(beta)),
            a23: plus(1.0 - r1.max(beta)),
            a24: plus(1.0 - r1.max(third)),
            a25: plus(1.0 - r1),
        }),
    }
}

/// Where a curve point comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segment {
    /// The CMO singular point: `t2 = r2` with all power on the common part.
    Cmo,
    /// A closed-form tradeoff segment, numbered from 1 within its case.
    Theorem2(u8),
    /// A point of the exhaustive split sweep.
    Sweep,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Cmo => f.write_str("cmo"),
            Segment::Theorem2(n) => write!(f, "seg{n}"),
            Segment::Sweep => f.write_str("sweep"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub d1: f64,
    pub d2: f64,
    pub t2: f64,
    /// `INFINITY` for the CMO point.
    pub b: f64,
    pub segment: Segment,
}

/// `(segment, lo, hi, t2, b)` for every segment of the case at `d1`.
fn prescriptions(op: &OperatingPoint, bp: &Breakpoints, d1: f64) -> Vec<(u8, f64, f64, f64, f64)> {
    let (r1, beta) = (op.r1(), op.beta());
    let slope_b = d1 - 1.0 + r1 + beta;
    let flat_t2 = d1 - 1.0 + beta;
    let half_t2 = 0.5 * (1.0 + beta - 2.0 * r1 - d1);
    match *bp {
        Breakpoints::Case2 { a11, a12, a13 } => {
            alloc::vec![(1, a11, a12, flat_t2, slope_b), (2, a12, a13, half_t2, slope_b)]
        }
        Breakpoints::Case3 { a21, a22, a23, a24, a25 } => alloc::vec![
            (1, a21, a22, 1.0 - r1 - d1, beta),
            (2, a22, a23, 1.0 - r1 - d1, beta),
            (3, a23, a24, flat_t2, slope_b),
            (4, a24, a25, half_t2, slope_b),
        ],
    }
}

/// Slack for "the prescription lands on `d1`" and for closed segment ends.
const MATCH_TOL: f64 = 1e-9;

/// Best `d2` at RX1 diversity `d1`, with the split that achieves it.
///
/// Segments are taken as closed intervals. Each segment whose interval holds
/// `d1` proposes its `(t2, b)`; proposals outside `t2 in [0, r2], b >= 0` or
/// not landing on `d1` are dropped, and the largest achieved `d2` wins.
pub fn theorem2_d2(op: &OperatingPoint, d1: f64) -> Result<CurvePoint> {
    let d1 = finite("d1", d1)?;
    let bp = theorem2_breakpoints(op)?;
    let (lo, hi) = bp.span();
    if d1 < lo - MATCH_TOL || d1 > hi + MATCH_TOL {
        return Err(Error::OutsideSpan { d1, lo, hi });
    }
    let mut best: Option<CurvePoint> = None;
    for (seg, a, z, t2, b) in prescriptions(op, &bp, d1) {
        if d1 < a - MATCH_TOL || d1 > z + MATCH_TOL {
            continue;
        }
        if t2 < -MATCH_TOL || t2 > op.r2() + MATCH_TOL || b < -MATCH_TOL {
            continue;
        }
        let (t2, b) = (t2.clamp(0.0, op.r2()), plus(b));
        let Ok(sp) = SplitParams::new(op, t2, b) else { continue };
        let hk = hk_diversity(op, &sp);
        if (hk.d1 - d1).abs() > MATCH_TOL {
            continue;
        }
        if best.is_none_or(|p| hk.d2 > p.d2) {
            best = Some(CurvePoint {
                d1,
                d2: hk.d2,
                t2,
                b,
                segment: Segment::Theorem2(seg),
            });
        }
    }
    best.ok_or(Error::Unachievable(d1))
}

/// Closed-form `d2` of each tradeoff segment at `d1`, ignoring whether the
/// prescribed split is valid. Agrees with [`theorem2_d2`] wherever that
/// split is valid and `d1 > 0`.
pub fn theorem2_formula(op: &OperatingPoint, segment: u8, d1: f64) -> Result<f64> {
    let (r1, r2, beta) = (op.r1(), op.r2(), op.beta());
    let sloped = 0.5 * plus(5.0 - beta - 4.0 * r1 - 2.0 * r2 - 3.0 * d1);
    match (classify_mgr(op)?.case, segment) {
        (MgrCase::Case2, 1) => Ok(plus(1.0 - r1 - r2.max(2.0 * (beta - r1 - r2)))),
        (MgrCase::Case2, 2) | (MgrCase::Case3, 4) => Ok(sloped),
        (MgrCase::Case3, 1) => Ok(plus(1.0 - r2.max(beta))),
        (MgrCase::Case3, 2) => Ok(plus(2.0 - r1 - r2 - beta - d1)),
        (MgrCase::Case3, 3) => Ok(plus(1.0 - r1.min(beta) - r2)),
        (MgrCase::Case1, _) => Err(Error::NoHkCurve),
        _ => Err(Error::OutOfRange {
            name: "segment",
            value: segment as f64,
            range: "1..=2 in Case2, 1..=4 in Case3",
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffCurve {
    /// Ordered by strictly increasing `d1`.
    pub points: Vec<CurvePoint>,
    pub breakpoints: Option<Breakpoints>,
}

impl TradeoffCurve {
    /// Largest `d2` among points with RX1 diversity at least `d1`, or `None`
    /// when `d1` is beyond the curve.
    pub fn value_at(&self, d1: f64) -> Option<f64> {
        self.points
            .iter()
            .filter(|p| p.d1 >= d1)
            .map(|p| p.d2)
            .reduce(f64::max)
    }

    /// Whether the step graph of [`Self::value_at`] passes within `tol` of
    /// `(d1, d2)` in both coordinates.
    pub fn near(&self, d1: f64, d2: f64, tol: f64) -> bool {
        let window = self.points.iter().map(|p| p.d1).filter(|x| (x - d1).abs() <= tol);
        [d1 - tol, d1, d1 + tol]
            .into_iter()
            .chain(window)
            .filter_map(|x| self.value_at(x))
            .any(|v| (v - d2).abs() <= tol)
    }

    /// Whether the curve weakly dominates `pair`, allowing `tol` on both axes.
    pub fn dominates(&self, pair: &DiversityPair, tol: f64) -> bool {
        self.value_at(pair.d1 - tol).is_some_and(|d2| d2 >= pair.d2 - tol)
    }
}

/// Number of `t2` strata [`sweep_stratum`] splits the sweep into.
pub fn sweep_strata(op: &OperatingPoint, resolution: f64) -> usize {
    libm::ceil(op.r2() / resolution) as usize + 1
}

fn axis(i: usize, step: f64, end: f64) -> f64 {
    (i as f64 * step).min(end)
}

/// Every grid split with `t2` index `i`, scored by the closed forms.
pub fn sweep_stratum(op: &OperatingPoint, resolution: f64, i: usize) -> Vec<CurvePoint> {
    let t2 = axis(i, resolution, op.r2());
    let bmax = op.b_max();
    let nb = libm::ceil(bmax / resolution) as usize + 1;
    (0..nb)
        .map(|j| {
            let b = axis(j, resolution, bmax);
            let sp = SplitParams::new(op, t2, b).expect("grid split is valid");
            let hk = hk_diversity(op, &sp);
            CurvePoint {
                d1: hk.d1,
                d2: hk.d2,
                t2,
                b,
                segment: Segment::Sweep,
            }
        })
        .collect()
}

/// Non-dominated staircase of `points`, by increasing `d1`.
///
/// Ties are broken on `(t2, b)` so the result does not depend on input order.
pub fn pareto(mut points: Vec<CurvePoint>) -> Vec<CurvePoint> {
    points.sort_by(|p, q| {
        q.d1.total_cmp(&p.d1)
            .then(q.d2.total_cmp(&p.d2))
            .then(p.t2.total_cmp(&q.t2))
            .then(p.b.total_cmp(&q.b))
    });
    let mut out: Vec<CurvePoint> = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for p in points {
        if p.d2 > best {
            best = p.d2;
            out.push(p);
        }
    }
    out.reverse();
    out
}

fn check_resolution(resolution: f64) -> Result<f64> {
    let r = finite("resolution", resolution)?;
    if r <= 0.0 {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: r,
            range: "(0, inf)",
        });
    }
    Ok(r)
}

/// Pareto staircase of HK over the grid `[0, r2] x [0, b_max]`.
pub fn sweep_dgr(op: &OperatingPoint, resolution: f64) -> Result<TradeoffCurve> {
    let resolution = check_resolution(resolution)?;
    let all = (0..sweep_strata(op, resolution))
        .flat_map(|i| sweep_stratum(op, resolution, i))
        .collect();
    Ok(TradeoffCurve {
        points: pareto(all),
        breakpoints: None,
    })
}

fn cmo_point(op: &OperatingPoint) -> CurvePoint {
    let c = cmo_diversity(op);
    CurvePoint {
        d1: c.d1,
        d2: c.d2,
        t2: op.r2(),
        b: f64::INFINITY,
        segment: Segment::Cmo,
    }
}

/// The fixed-split DGR: the CMO point followed by the closed-form curve at
/// every `d1` above CMO's, sampled every `resolution` and at each breakpoint.
///
/// Case 1 gives the CMO point alone. With `beta > 1` the curve comes from the
/// sweep, merged with the CMO point.
pub fn full_envelope(op: &OperatingPoint, resolution: f64) -> Result<TradeoffCurve> {
    let resolution = check_resolution(resolution)?;
    let cmo = cmo_point(op);
    let bp = match theorem2_breakpoints(op) {
        Ok(bp) => bp,
        Err(Error::NoHkCurve) => {
            return Ok(TradeoffCurve {
                points: alloc::vec![cmo],
                breakpoints: None,
            })
        }
        Err(Error::HighInterference(_)) => {
            let mut pts = sweep_dgr(op, resolution)?.points;
            pts.push(cmo);
            return Ok(TradeoffCurve {
                points: pareto(pts),
                breakpoints: None,
            });
        }
        Err(e) => return Err(e),
    };
    let (_, hi) = bp.span();
    let mut d1s: Vec<f64> = bp.named().into_iter().map(|(_, v)| v).collect();
    let n = libm::ceil((hi - cmo.d1) / resolution) as usize;
    d1s.extend((1..=n).map(|k| (cmo.d1 + k as f64 * resolution).min(hi)));
    d1s.retain(|&d| d > cmo.d1);
    d1s.sort_by(f64::total_cmp);
    d1s.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);

    let mut points = alloc::vec![cmo];
    for d1 in d1s {
        points.push(theorem2_d2(op, d1)?);
    }
    Ok(TradeoffCurve {
        points,
        breakpoints: Some(bp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn op(r1: f64, r2: f64, beta: f64) -> OperatingPoint {
        OperatingPoint::new(r1, r2, beta).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_mgr(&op(0.2, 0.3, 0.9)).unwrap().case, MgrCase::Case1);
        assert_eq!(classify_mgr(&op(0.2, 0.3, 0.6)).unwrap().case, MgrCase::Case2);
        assert_eq!(classify_mgr(&op(0.3, 0.4, 0.2)).unwrap().case, MgrCase::Case3);
        assert!(matches!(classify_mgr(&op(0.2, 0.3, 1.2)), Err(Error::HighInterference(_))));
    }

    #[test]
    fn breakpoint_examples() {
        let Breakpoints::Case2 { a11, a12, a13 } = theorem2_breakpoints(&op(0.2, 0.3, 0.6)).unwrap() else {
            panic!()
        };
        assert!(close(a11, 0.6) && close(a12, 2.0 / 3.0) && close(a13, 0.8));

        let Breakpoints::Case3 { a21, a22, a23, a24, a25 } = theorem2_breakpoints(&op(0.3, 0.4, 0.2)).unwrap() else {
            panic!()
        };
        assert!(close(a21, 0.3) && close(a22, 0.5));
        assert!(close(a23, 0.7) && close(a24, 0.7) && close(a25, 0.7));

        assert_eq!(theorem2_breakpoints(&op(0.2, 0.3, 0.9)), Err(Error::NoHkCurve));

        // All-zero rates sit in Case 1; just above them every breakpoint is 1.
        assert_eq!(theorem2_breakpoints(&op(0.0, 0.0, 0.0)), Err(Error::NoHkCurve));
        let bp = theorem2_breakpoints(&op(1e-9, 1e-9, 0.0)).unwrap();
        assert!(bp.named().iter().all(|&(_, v)| (v - 1.0).abs() < 1e-8));
    }

    #[test]
    fn theorem2_examples() {
        let o = op(0.2, 0.3, 0.6);
        let p = theorem2_d2(&o, 0.6).unwrap();
        assert!(close(p.d2, 0.5));
        assert_eq!(p.segment, Segment::Theorem2(1));
        let p = theorem2_d2(&o, 0.8).unwrap();
        assert!(close(p.d2, 0.3));
        assert_eq!(p.segment, Segment::Theorem2(2));
        assert!(matches!(theorem2_d2(&o, 0.85), Err(Error::OutsideSpan { .. })));

        let p = theorem2_d2(&op(0.3, 0.4, 0.2), 0.6).unwrap();
        assert!(close(p.d2, 0.5));
        assert_eq!(p.segment, Segment::Theorem2(2));
    }

    #[test]
    fn closed_end_keeps_the_larger_value() {
        let o = op(0.3, 0.4, 0.2);
        // Segment 4's formula gives 0.35 here, but its split has t2 < 0.
        assert!(close(theorem2_formula(&o, 4, 0.7).unwrap(), 0.35));
        let p = theorem2_d2(&o, 0.7).unwrap();
        assert!(close(p.d2, 0.4));
        assert!(close(p.t2, 0.0) && close(p.b, 0.2));
        let sweep = sweep_dgr(&o, 1e-2).unwrap();
        assert!((sweep.value_at(0.7).unwrap() - 0.4).abs() < 1e-9);
    }

    #[test]
    fn envelope_examples() {
        let env = full_envelope(&op(0.2, 0.3, 0.6), 1e-3).unwrap();
        let first = env.points[0];
        assert_eq!(first.segment, Segment::Cmo);
        assert!(close(first.d1, 0.6) && close(first.d2, 0.7));
        for p in &env.points[1..] {
            if p.d1 <= 2.0 / 3.0 {
                assert!(close(p.d2, 0.5), "{p:?}");
            } else {
                assert!(close(p.d2, 0.5 - 1.5 * (p.d1 - 2.0 / 3.0)), "{p:?}");
            }
        }

        // No flat part once r1 + 1.5 r2 <= beta.
        let env = full_envelope(&op(0.2, 0.3, 0.7), 1e-3).unwrap();
        assert!(env.points[1..].iter().all(|p| p.segment == Segment::Theorem2(2)));

        let env = full_envelope(&op(0.2, 0.3, 0.9), 1e-3).unwrap();
        assert_eq!(env.points.len(), 1);
        assert_eq!(env.points[0].segment, Segment::Cmo);
    }

    #[test]
    fn case1_sweep_never_beats_cmo() {
        let o = op(0.2, 0.3, 0.9);
        let cmo = cmo_diversity(&o).d1;
        let sweep = sweep_dgr(&o, 5e-3).unwrap();
        assert!(sweep.points.iter().all(|p| p.d1 <= cmo + 1e-12));
    }

    #[test]
    fn high_interference_falls_back_to_sweep() {
        let o = op(0.2, 0.3, 1.3);
        let env = full_envelope(&o, 1e-2).unwrap();
        assert!(env.breakpoints.is_none());
        assert!(env.points.iter().any(|p| p.segment == Segment::Cmo));
        assert!(env.points.windows(2).all(|w| w[0].d1 < w[1].d1 && w[0].d2 > w[1].d2));
    }

    #[test]
    fn sweep_converges() {
        let o = op(0.2, 0.3, 0.6);
        let coarse = sweep_dgr(&o, 1e-2).unwrap();
        let fine = sweep_dgr(&o, 5e-3).unwrap();
        for k in 0..=20 {
            let d1 = 0.6 + 0.01 * k as f64;
            let (c, f) = (coarse.value_at(d1).unwrap(), fine.value_at(d1).unwrap());
            assert!((c - f).abs() < 1e-2 + 1e-12, "{d1}: {c} {f}");
        }
    }

    #[test]
    fn pareto_is_order_independent() {
        let o = op(0.25, 0.35, 0.5);
        let mut pts: Vec<CurvePoint> = (0..sweep_strata(&o, 0.05)).flat_map(|i| sweep_stratum(&o, 0.05, i)).collect();
        let a = pareto(pts.clone());
        pts.reverse();
        assert_eq!(a, pareto(pts));
    }

    fn low_interference() -> impl Strategy<Value = OperatingPoint> {
        (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(r1, r2, beta)| op(r1, r2, beta))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn curve_matches_sweep(o in low_interference()) {
            let Ok(bp) = theorem2_breakpoints(&o) else { return Ok(()) };
            let res = 5e-3;
            let sweep = sweep_dgr(&o, res).unwrap();
            let (lo, hi) = bp.span();
            for k in 0..=10 {
                let d1 = lo + (hi - lo) * k as f64 / 10.0;
                // At d1 = 0 every split qualifies and CMO owns the point.
                if d1 <= 1e-9 {
                    continue;
                }
                let p = theorem2_d2(&o, d1).unwrap();
                let upper = sweep.value_at(d1).unwrap_or(f64::NEG_INFINITY);
                prop_assert!(upper <= p.d2 + 1e-9, "sweep beats closed form at {d1}: {upper} > {}", p.d2);
                let lower = sweep.value_at(d1 - 2.0 * res).unwrap();
                prop_assert!(lower >= p.d2 - 2.0 * res, "sweep {lower} far below {} at {d1}", p.d2);
            }
        }

        #[test]
        fn prescription_reproduces_point(o in low_interference(), u in 0.0f64..=1.0) {
            let Ok(bp) = theorem2_breakpoints(&o) else { return Ok(()) };
            let (lo, hi) = bp.span();
            let d1 = lo + u * (hi - lo);
            let p = theorem2_d2(&o, d1).unwrap();
            prop_assert!(p.t2 >= 0.0 && p.t2 <= o.r2() && p.b >= 0.0);
            let hk = hk_diversity(&o, &SplitParams::new(&o, p.t2, p.b).unwrap());
            prop_assert!((hk.d1 - d1).abs() <= 1e-9);
            prop_assert_eq!(hk.d2, p.d2);
            if d1 > 1e-9 {
                let Segment::Theorem2(seg) = p.segment else { unreachable!() };
                prop_assert!((theorem2_formula(&o, seg, d1).unwrap() - p.d2).abs() <= 1e-9);
            }
        }

        #[test]
        fn envelope_is_a_tradeoff(o in low_interference()) {
            let env = full_envelope(&o, 1e-2).unwrap();
            prop_assert_eq!(env.points[0].segment, Segment::Cmo);
            for w in env.points.windows(2) {
                prop_assert!(w[0].d1 < w[1].d1);
                prop_assert!(w[1].d2 <= w[0].d2 + 1e-12, "{:?}", w);
            }
        }

        #[test]
        fn case_regions_match_sweep(o in low_interference()) {
            let cls = classify_mgr(&o).unwrap();
            let cmo = cmo_diversity(&o).d1;
            let res = 1e-2;
            for i in 0..sweep_strata(&o, res) {
                for p in sweep_stratum(&o, res, i) {
                    let feasible = cls.is_feasible(p.t2, p.b);
                    if feasible {
                        prop_assert!(p.d1 >= cmo - 1e-12, "{:?} in region but below CMO {cmo}", p);
                    }
                    if p.d1 > cmo + 1e-12 {
                        prop_assert!(feasible, "{:?} beats CMO {cmo} outside the region", p);
                    }
                }
            }
        }
    }
}
