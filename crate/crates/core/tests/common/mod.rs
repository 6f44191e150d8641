//! Shared helpers for integration tests: an independent dense-array
//! constant-term oracle and seeded random generators.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use weaklg::dseries::DOperator;
use weaklg::laurent::{LaurentPoly, Monomial};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `[f^i]_0` for `i = 0..=n` by dense convolution on a box that holds every
/// power up to `n`. Integer coefficients only; entries must fit in `i128`.
pub fn dense_constant_terms(f: &LaurentPoly, n: usize) -> Vec<i128> {
    let dim = f.dim();
    let terms: Vec<(Vec<i64>, i128)> = f
        .terms()
        .map(|(m, c)| {
            assert!(c.is_integer(), "dense oracle needs integer coefficients");
            (m.exponents().to_vec(), i128::try_from(c.to_integer()).expect("small coefficient"))
        })
        .collect();
    let reach: i64 = terms.iter().flat_map(|(e, _)| e.iter().map(|x| x.abs())).max().unwrap_or(0);
    let radius = reach * n as i64;
    let side = (2 * radius + 1) as usize;
    let cells = side.pow(dim as u32);
    let index = |e: &[i64]| -> Option<usize> {
        let mut idx = 0usize;
        for &x in e {
            if x.abs() > radius {
                return None;
            }
            idx = idx * side + (x + radius) as usize;
        }
        Some(idx)
    };
    let decode = |mut idx: usize| -> Vec<i64> {
        let mut e = vec![0i64; dim];
        for slot in e.iter_mut().rev() {
            *slot = (idx % side) as i64 - radius;
            idx /= side;
        }
        e
    };
    let origin = index(&vec![0; dim]).unwrap();
    let mut power = vec![0i128; cells];
    power[origin] = 1;
    let mut out = vec![1i128];
    for _ in 0..n {
        let mut next = vec![0i128; cells];
        for (idx, &c) in power.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = decode(idx);
            for (te, tc) in &terms {
                let sum: Vec<i64> = e.iter().zip(te).map(|(a, b)| a + b).collect();
                if let Some(j) = index(&sum) {
                    next[j] += c * tc;
                }
            }
        }
        power = next;
        out.push(power[origin]);
    }
    out
}

/// Random integer polynomial in three variables: up to `max_terms` terms,
/// exponents in `[-2, 2]`, nonzero coefficients in `[-3, 3]`.
pub fn random_poly(rng: &mut ChaCha8Rng, max_terms: usize) -> LaurentPoly {
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(Monomial, BigRational)> = (0..k)
        .map(|_| {
            let e: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
            let mut c = rng.gen_range(-3..=3);
            if c == 0 {
                c = 1;
            }
            (Monomial::from(e), qi(c))
        })
        .collect();
    LaurentPoly::from_terms(3, terms).unwrap()
}

/// Product of random elementary, swap and sign matrices.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if j == i {
            j = (i + 1) % n;
        }
        match rng.gen_range(0..3) {
            0 => {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                for row in u.iter_mut() {
                    row[i] += s * row[j];
                }
            }
            1 => {
                for row in u.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for row in u.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    u
}

pub fn random_scaling(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| {
            let num = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
            q(num, rng.gen_range(1..=3))
        })
        .collect()
}

/// Random operator with `P_0 = D^m`, t-degree `r` and a nonzero top row.
pub fn random_operator(rng: &mut ChaCha8Rng, m: usize, r: usize) -> DOperator {
    let mut table = vec![vec![BigRational::from_integer(BigInt::from(0)); m + 1]; r + 1];
    table[0][m] = qi(1);
    for row in table.iter_mut().skip(1) {
        for c in row.iter_mut() {
            *c = qi(rng.gen_range(-3..=3));
        }
    }
    if r > 0 && table[r].iter().all(|c| c == &qi(0)) {
        table[r][0] = qi(1);
    }
    DOperator::new(table).unwrap()
}
