//! Property suite for the Loewner-order comparisons.

mod common;

use opmeans::maps::random_psd;
use opmeans::spectral::congruence;
use opmeans::{loewner_leq, operator_norm, tol, PosDefMatrix, SymMatrix};

#[test]
fn transitivity_for_exact_psd_differences() {
    let mut rng = common::rng(0xA1);
    for trial in 0..50 {
        let dim = 2 + trial % 4;
        let x = common::random_sym(&mut rng, dim);
        let p = random_psd(dim, &mut rng);
        let q = random_psd(dim, &mut rng);
        let xp = x.add(&p).unwrap();
        let xpq = xp.add(&q).unwrap();
        assert!(loewner_leq(&x, &xp).unwrap().holds);
        assert!(loewner_leq(&xp, &xpq).unwrap().holds);
        assert!(loewner_leq(&x, &xpq).unwrap().holds);
    }
}

#[test]
fn congruence_preserves_verdicts() {
    let mut rng = common::rng(0xA2);
    for trial in 0..50 {
        let dim = 2 + trial % 4;
        let x = common::random_sym(&mut rng, dim);
        let y = if trial % 2 == 0 {
            // Comparable pair.
            x.add(&random_psd(dim, &mut rng)).unwrap()
        } else {
            // Generic pair; verdict may go either way but must be stable.
            common::random_sym(&mut rng, dim)
        };
        let before = loewner_leq(&x, &y).unwrap();
        // Skip pairs that sit inside the verdict tolerance band: a
        // congruence can legitimately move those across the threshold.
        if before.normalized_gap().abs() <= 10.0 * tol::TOL_ORDER {
            continue;
        }
        let c = common::random_posdef(&mut rng, dim, 0.5, 2.0).matrix().clone();
        let cx = congruence(&c, &x).unwrap();
        let cy = congruence(&c, &y).unwrap();
        let after = loewner_leq(&cx, &cy).unwrap();
        assert_eq!(before.holds, after.holds, "trial {trial}");
    }
}

#[test]
fn antisymmetry_witness() {
    let mut rng = common::rng(0xA3);
    for _ in 0..30 {
        let x = common::random_sym(&mut rng, 3);
        // Perturb within the order tolerance so both directions hold.
        let eps = random_psd(3, &mut rng).scale(1e-12);
        let y = x.add(&eps).unwrap();
        let xy = loewner_leq(&x, &y).unwrap();
        let yx = loewner_leq(&y, &x).unwrap();
        if xy.holds && yx.holds {
            let diff = operator_norm(&x.sub(&y).unwrap());
            let scale = operator_norm(&x).max(operator_norm(&y)).max(1.0);
            assert!(diff <= tol::TOL_ORDER * scale);
        }
    }
}

#[test]
fn posdef_floor_separates_verdict_from_construction() {
    // A matrix can be PSD for the order check yet fail strict
    // positive-definite construction.
    let m = SymMatrix::from_diagonal(&[1.0, 1e-12]);
    assert!(loewner_leq(&SymMatrix::zeros(2), &m).unwrap().holds);
    assert!(PosDefMatrix::new(m).is_err());
}
