//! Independent scalar oracle: closed-form f64 arithmetic for every
//! derived fixture, with no dependence on the matrix code paths it
//! cross-checks. `verify oracle` re-derives these values and writes them
//! to a fixtures file that CI compares against the checked-in copy.

use serde::{Deserialize, Serialize};

/// Scalar weighted means.
pub mod scalar {
    pub fn nabla(a: f64, b: f64, t: f64) -> f64 {
        (1.0 - t) * a + t * b
    }

    pub fn sharp(a: f64, b: f64, t: f64) -> f64 {
        a.powf(1.0 - t) * b.powf(t)
    }

    pub fn bang(a: f64, b: f64, t: f64) -> f64 {
        1.0 / nabla(1.0 / a, 1.0 / b, t)
    }

    pub fn power(a: f64, b: f64, u: f64, t: f64) -> f64 {
        if u.abs() < opmeans::tol::UPSILON_EPS {
            sharp(a, b, t)
        } else {
            ((1.0 - t) * a.powf(u) + t * b.powf(u)).powf(1.0 / u)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub values: Vec<f64>,
}

fn fx(name: &str, values: Vec<f64>) -> Fixture {
    Fixture {
        name: name.to_string(),
        values,
    }
}

/// Recomputes every derived fixture from scalar closed forms.
pub fn compute_fixtures() -> Vec<Fixture> {
    use scalar::{bang, nabla, power, sharp};

    let mut out = Vec::new();

    // Spectral calculus on [[2,1],[1,2]] (eigenvalues 1 and 3, basis
    // (1,∓1)/√2): entries of sqrt are ((√3+1)/2, (√3−1)/2).
    let (f1, f3) = (1.0_f64.sqrt(), 3.0_f64.sqrt());
    out.push(fx(
        "spectral_sqrt_2x2_offdiag",
        vec![(f3 + f1) / 2.0, (f3 - f1) / 2.0],
    ));
    out.push(fx("spectral_eigh_2x2", vec![1.0, 3.0]));

    // Mean values at a=4, b=1.
    out.push(fx(
        "mean_arithmetic_4_1",
        vec![nabla(4.0, 1.0, 0.5), nabla(4.0, 1.0, 0.25)],
    ));
    out.push(fx("mean_geometric_4_1_half", vec![sharp(4.0, 1.0, 0.5)]));
    out.push(fx("mean_harmonic_4_1_half", vec![bang(4.0, 1.0, 0.5)]));
    out.push(fx(
        "mean_power_4_1_uhalf_half",
        vec![power(4.0, 1.0, 0.5, 0.5)],
    ));

    // T21 at f(t)=1/t, a=4, b=1, α=β=1/2.
    {
        let f = |t: f64| 1.0 / t;
        let (a, b, al, be) = (4.0, 1.0, 0.5, 0.5);
        let nab = nabla(a, b, al);
        let mid = sharp(f(nabla(nab, a, be)), f(nabla(nab, b, be)), al);
        out.push(fx(
            "chain_t21_inverse_4_1",
            vec![f(nab), mid, sharp(f(a), f(b), al)],
        ));
    }

    // C22 at f(t)=1/t, a=2, b=1.
    {
        let f = |t: f64| 1.0 / t;
        let (a, b) = (2.0_f64, 1.0_f64);
        out.push(fx(
            "chain_c22_inverse_2_1",
            vec![
                f(a + b),
                sharp(f(nabla(3.0 * a, b, 0.5)), f(nabla(a, 3.0 * b, 0.5)), 0.5),
                sharp(f(2.0 * a), f(2.0 * b), 0.5),
                nabla(f(2.0 * a), f(2.0 * b), 0.5),
                nabla(f(a), f(b), 0.5),
            ],
        ));
    }

    // C24 at g(t)=√t, a=4, b=1, α=β=1/2 (descending order).
    {
        let g = |t: f64| t.sqrt();
        let (a, b, al, be) = (4.0, 1.0, 0.5, 0.5);
        let nab = nabla(a, b, al);
        let mid = sharp(g(nabla(nab, a, be)), g(nabla(nab, b, be)), al);
        out.push(fx(
            "chain_c24_sqrt_4_1_descending",
            vec![g(nab), mid, sharp(g(a), g(b), al)],
        ));
    }

    // R25 at f(t)=1/t, a=4, b=1, α=β=1/2, σ geometric. Inversion turns
    // harmonic means of images into f of arithmetic means, so the first
    // three terms are all equal.
    {
        let f = |t: f64| 1.0 / t;
        let (a, b, al, be) = (4.0, 1.0, 0.5, 0.5);
        let nab = nabla(a, b, al);
        let mid = bang(f(nabla(nab, a, be)), f(nabla(nab, b, be)), al);
        out.push(fx(
            "chain_r25_inverse_4_1_geometric",
            vec![f(nab), mid, bang(f(a), f(b), al), sharp(f(a), f(b), al)],
        ));
    }

    // T25 at a=4, b=1, α=β=1/2.
    {
        let (a, b, al, be) = (4.0, 1.0, 0.5, 0.5);
        let s = sharp(a, b, al);
        let l = sharp(s, a, be);
        let r = sharp(s, b, be);
        out.push(fx(
            "chain_t25_4_1",
            vec![
                bang(a, b, al),
                bang(l, r, al),
                s,
                nabla(l, r, al),
                nabla(a, b, al),
            ],
        ));
    }

    // E18 / T31 with the two-block sum over pairs {4,1} and {1,4},
    // α=β=1/2.
    {
        let (al, be) = (0.5, 0.5);
        let pairs = [(4.0, 1.0), (1.0, 4.0)];
        let sharps: Vec<f64> = pairs.iter().map(|&(a, b)| sharp(a, b, al)).collect();
        let lefts: f64 = pairs
            .iter()
            .zip(&sharps)
            .map(|(&(a, _), &s)| sharp(s, a, be))
            .sum();
        let rights: f64 = pairs
            .iter()
            .zip(&sharps)
            .map(|(&(_, b), &s)| sharp(s, b, be))
            .sum();
        let sum_a: f64 = pairs.iter().map(|p| p.0).sum();
        let sum_b: f64 = pairs.iter().map(|p| p.1).sum();
        out.push(fx(
            "chain_e18_block_sum_pairs",
            vec![
                sharps.iter().sum(),
                sharp(lefts, rights, al),
                sharp(sum_a, sum_b, al),
            ],
        ));
    }

    // C27 at a=3, b=-1, α=0 (scalars; norms are absolute values).
    {
        let (a, b, al) = (3.0_f64, -1.0_f64, 0.0_f64);
        let nab = (a + b) / 2.0;
        out.push(fx(
            "chain_c27_3_neg1_alpha0",
            vec![
                (a + b).abs(),
                (al * a + (1.0 - al) * nab).abs() + (al * b + (1.0 - al) * nab).abs(),
                a.abs() + b.abs(),
            ],
        ));
    }

    // R27 at a=3, b=1, α=1/2; both orientations.
    {
        let (a, b, al) = (3.0_f64, 1.0_f64, 0.5_f64);
        let side = |x: f64, y: f64| {
            let plus = (1.0 - al) * x + 2.0 * al * y;
            let minus = (1.0 + al) * x - 2.0 * al * y;
            vec![
                x.abs() - y.abs(),
                0.5 * (minus.abs() + plus.abs()) - y.abs(),
                (x - y).abs(),
            ]
        };
        let mut values = side(a, b);
        values.extend(side(b, a));
        out.push(fx("chain_r27_3_1_alpha_half", values));
    }

    out
}

pub fn fixtures_json() -> Vec<u8> {
    crate::report::to_json_bytes(&compute_fixtures())
}
