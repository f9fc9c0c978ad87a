//! Closed forms against the infimum oracle over many random configurations.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zic_dgr::closedform::{cmo_diversity, hk_diversity, tian_diversity};
use zic_dgr::oracle::{scheme_diversity, OracleConfig};
use zic_dgr::{OperatingPoint, Receiver, Scheme, SplitParams};

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

#[test]
fn random_configurations_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..300 {
        let o = OperatingPoint::new(unit(&mut rng), unit(&mut rng), unit(&mut rng)).unwrap();
        let sp = SplitParams::new(&o, unit(&mut rng) * o.r2(), unit(&mut rng) * o.b_max()).unwrap();
        let cfg = OracleConfig::for_beta(o.beta());
        let hk = hk_diversity(&o, &sp).pair();
        let cases = [
            (Scheme::Hk(sp), hk),
            (Scheme::Cmo, cmo_diversity(&o)),
            (Scheme::Tian, tian_diversity(&o)),
        ];
        for (s, want) in cases {
            for (rx, w) in Receiver::BOTH.into_iter().zip([want.d1, want.d2]) {
                let d = scheme_diversity(&o, &s, rx, &cfg);
                let err = (d - w).abs();
                assert!(err <= cfg.tolerance(), "{} rx{} at {o:?} {sp:?}: {d} vs {w}", s.name(), rx.index());
                worst = worst.max(err);
            }
        }
    }
    assert!(worst <= 3e-3);
}

#[test]
fn cmo_singularity() {
    let o = OperatingPoint::new(0.2, 0.3, 0.6).unwrap();
    let cfg = OracleConfig::for_beta(o.beta());
    let at_r2 = SplitParams::new(&o, 0.3, 2.0).unwrap();
    assert_eq!(hk_diversity(&o, &at_r2).d2, 0.0);
    assert!((cmo_diversity(&o).d2 - 0.7).abs() < 1e-12);
    // Just below t2 = r2 the private event reaches down to g22 = 0.
    let near = SplitParams::new(&o, 0.3 - 1e-9, 2.0).unwrap();
    assert!(scheme_diversity(&o, &Scheme::Hk(near), Receiver::Rx2, &cfg) <= cfg.tolerance());
    assert!((scheme_diversity(&o, &Scheme::Cmo, Receiver::Rx2, &cfg) - 0.7).abs() <= cfg.tolerance());
}
