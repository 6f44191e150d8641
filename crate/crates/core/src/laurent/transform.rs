//! Coordinate changes and the projective compactification degree check.

use super::{LaurentError, LaurentPoly, Monomial};
use crate::linalg::det_i64;
use crate::ring::Rationals;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

impl LaurentPoly {
    /// Replaces every exponent vector `m` by `U m`. `U` must be unimodular.
    pub fn substitute_monomial(&self, u: &[Vec<i64>]) -> Result<LaurentPoly, LaurentError> {
        let n = self.dim();
        if u.len() != n || u.iter().any(|r| r.len() != n) {
            return Err(LaurentError::BadMatrixShape { expected: n });
        }
        let det = det_i64(u);
        if !det.abs().is_one() {
            let det = i64::try_from(&det).unwrap_or(i64::MAX);
            return Err(LaurentError::NotUnimodular { det });
        }
        Ok(self.map_monomials(|m| {
            Monomial::new(u.iter().map(|row| row.iter().zip(m.exponents()).map(|(a, e)| a * e).sum::<i64>()))
        }))
    }

    /// Rescales variables `x_i -> alpha_i x_i`.
    pub fn resize(&self, alpha: &[BigRational]) -> Result<LaurentPoly, LaurentError> {
        if alpha.len() != self.dim() {
            return Err(LaurentError::DimensionMismatch { left: self.dim(), right: alpha.len() });
        }
        if let Some(index) = alpha.iter().position(Zero::is_zero) {
            return Err(LaurentError::ZeroScale { index });
        }
        Ok(self.map_coeffs(&Rationals, |m, c| {
            let mut v = c.clone();
            for (a, &e) in alpha.iter().zip(m.exponents()) {
                v *= a.pow(e as i32);
            }
            v
        }))
    }
}

/// Result of clearing denominators of `1 - t f` and reading off the
/// degree of the resulting hypersurface in projective space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticReport {
    pub passes: bool,
    pub cleared_degree: i64,
    pub shift: Vec<i64>,
}

/// Passes when the compactified pencil members have degree `n + 1`
/// (quartics for threefolds), i.e. trivial canonical class.
pub fn quartic_compactification_check(f: &LaurentPoly) -> Result<QuarticReport, LaurentError> {
    if f.is_zero() {
        return Err(LaurentError::Empty);
    }
    let n = f.dim();
    let shift: Vec<i64> = (0..n)
        .map(|i| {
            let min = f.terms().map(|(m, _)| m.exponents()[i]).min().unwrap_or(0);
            (-min).max(0)
        })
        .collect();
    let constant_degree: i64 = shift.iter().sum();
    let max_term_degree = f
        .terms()
        .map(|(m, _)| m.exponents().iter().zip(&shift).map(|(e, d)| e + d).sum::<i64>())
        .max()
        .unwrap_or(0);
    let cleared_degree = constant_degree.max(max_term_degree);
    Ok(QuarticReport { passes: cleared_degree == n as i64 + 1, cleared_degree, shift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn identity_substitution() {
        let f = catalog::f16();
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(f.substitute_monomial(&id).unwrap(), f);
    }

    #[test]
    fn swap_coordinates() {
        let f = LaurentPoly::from_int_terms(2, [([1, 0], 1), ([-1, 0], 1)]).unwrap();
        let g = LaurentPoly::from_int_terms(2, [([0, 1], 1), ([0, -1], 1)]).unwrap();
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(f.substitute_monomial(&swap).unwrap(), g);
    }

    #[test]
    fn f18_is_permutation_symmetric() {
        let f = catalog::f18();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            let u: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| i64::from(p[i] == j)).collect()).collect();
            assert_eq!(f.substitute_monomial(&u).unwrap(), f);
        }
    }

    #[test]
    fn non_unimodular_rejected() {
        let f = catalog::f16();
        let u = vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(f.substitute_monomial(&u), Err(LaurentError::NotUnimodular { det: 2 }));
        assert_eq!(
            f.substitute_monomial(&[vec![1, 0], vec![0, 1]]),
            Err(LaurentError::BadMatrixShape { expected: 3 })
        );
    }

    #[test]
    fn resize_examples() {
        let f = LaurentPoly::from_int_terms(1, [([1], 1), ([-1], 1)]).unwrap();
        assert_eq!(f.resize(&[q(1, 1)]).unwrap(), f);
        let g = f.resize(&[q(2, 1)]).unwrap();
        let expected =
            LaurentPoly::from_terms(1, [(Monomial::new([1]), q(2, 1)), (Monomial::new([-1]), q(1, 2))])
                .unwrap();
        assert_eq!(g, expected);
        assert_eq!(f.resize(&[q(0, 1)]), Err(LaurentError::ZeroScale { index: 0 }));
    }

    #[test]
    fn resize_keeps_series() {
        let f = catalog::f16();
        let g = f.resize(&[q(2, 1), q(3, 1), q(5, 1)]).unwrap();
        assert_ne!(f, g);
        assert_eq!(super::super::constant_term_series(&g, 5), super::super::constant_term_series(&f, 5));
    }

    #[test]
    fn quartic_checks() {
        for f in [catalog::f16(), catalog::f18(), catalog::f22()] {
            let r = quartic_compactification_check(&f).unwrap();
            assert_eq!(r, QuarticReport { passes: true, cleared_degree: 4, shift: vec![1, 1, 1] });
        }
        let lin = LaurentPoly::from_int_terms(3, [([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)]).unwrap();
        let r = quartic_compactification_check(&lin).unwrap();
        assert_eq!(r, QuarticReport { passes: false, cleared_degree: 1, shift: vec![0, 0, 0] });
        assert_eq!(quartic_compactification_check(&LaurentPoly::zero(3)), Err(LaurentError::Empty));
    }
}
