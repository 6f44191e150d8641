//! Exact linear algebra over `Z` and `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Fraction-free row echelon form.
///
/// Rows are scaled to integers, eliminated by cross-multiplication and
/// divided by their content after each step, so entries stay small.
/// Returns the nonzero echelon rows and their pivot columns.
pub fn integer_echelon(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| to_primitive_integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top >= m.len() {
            break;
        }
        let Some(sel) = (top..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].abs())
        else {
            continue;
        };
        m.swap(top, sel);
        let (head, tail) = m.split_at_mut(top + 1);
        let prow = &head[top];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = prow[col].gcd(&row[col]);
            let a = &prow[col] / &g;
            let b = &row[col] / &g;
            for k in col..ncols {
                row[k] = &a * &row[k] - &b * &prow[k];
            }
            make_primitive(row);
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    (m, pivots)
}

fn to_primitive_integer_row(r: &[BigRational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lq = BigRational::from_integer(l);
    let mut row: Vec<BigInt> = r.iter().map(|c| (c * &lq).to_integer()).collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    integer_echelon(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}` in canonical form: the reduced row echelon
/// form of the basis, so each vector's first nonzero entry is 1.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (ech, pivots) = integer_echelon(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut x = vec![BigRational::zero(); ncols];
        x[fc] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let mut s = BigRational::zero();
            for k in pc + 1..ncols {
                if !ech[i][k].is_zero() && !x[k].is_zero() {
                    s += BigRational::from_integer(ech[i][k].clone()) * &x[k];
                }
            }
            x[pc] = -s / BigRational::from_integer(ech[i][pc].clone());
        }
        basis.push(x);
    }
    rref(&basis, ncols).0
}

/// Gauss-Jordan reduced row echelon form over `Q`; zero rows dropped.
pub fn rref(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top >= m.len() {
            break;
        }
        let Some(sel) = (top..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(top, sel);
        let inv = m[top][col].recip();
        for x in m[top][col..ncols].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[top].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != top && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row[col..ncols].iter_mut().zip(&pivot[col..ncols]) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    (m, pivots)
}

/// Determinant of a square rational matrix.
pub fn det(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if sel != col {
            m.swap(sel, col);
            d = -d;
        }
        d *= &m[col][col];
        let inv = m[col][col].recip();
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot = &upper[col];
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (x, p) in row[col..n].iter_mut().zip(&pivot[col..n]) {
                *x -= &factor * p;
            }
        }
    }
    d
}

pub fn det_i64(rows: &[Vec<i64>]) -> BigInt {
    let q: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    det(&q).to_integer()
}
