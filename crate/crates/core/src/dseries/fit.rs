use super::{DOperator, OperatorError};
use crate::laurent::PowerSeries;
use crate::linalg::nullspace;
use num_rational::BigRational;
use num_traits::Zero;

/// All operators of order `<= m` and t-degree `<= r` annihilating `s`
/// through its truncation order, as a canonical basis.
///
/// Unknowns are `c[j][l]`; equation `k` is
/// `sum_j sum_l c[j][l] (k - j)^l s_(k-j) = 0` for `0 <= k <= N`.
/// Requires `N >= (m + 1)(r + 1) + r` so the system is overdetermined.
pub fn fit_operator(s: &PowerSeries, m: usize, r: usize) -> Result<Vec<DOperator>, OperatorError> {
    let unknowns = (m + 1) * (r + 1);
    let need = unknowns + r;
    if s.order() < need {
        return Err(OperatorError::InsufficientPrefix { have: s.order(), need });
    }
    let rows: Vec<Vec<BigRational>> = (0..=s.order())
        .map(|k| {
            let mut row = vec![BigRational::zero(); unknowns];
            for j in 0..=r.min(k) {
                let sk = s.coeff(k - j);
                if sk.is_zero() {
                    continue;
                }
                let base = BigRational::from_integer(((k - j) as i64).into());
                let mut pow = sk.clone();
                for l in 0..=m {
                    row[j * (m + 1) + l] = pow.clone();
                    pow *= &base;
                }
            }
            row
        })
        .collect();
    nullspace(&rows, unknowns)
        .into_iter()
        .map(|v| DOperator::new(v.chunks(m + 1).map(<[BigRational]>::to_vec).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dseries::{apply, solve_series};
    use crate::laurent::{constant_term_series, LaurentPoly};

    #[test]
    fn recovers_l18() {
        let l18 = catalog::operator_v18();
        let s = solve_series(&l18, 25).unwrap();
        let basis = fit_operator(&s, 3, 2).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].equals_up_to_scalar(&l18));
        assert_eq!(basis[0], l18);
    }

    #[test]
    fn central_binomial_operator() {
        let f = LaurentPoly::from_int_terms(1, [([1], 1), ([-1], 1)]).unwrap();
        let s = constant_term_series(&f, 20);
        let basis = fit_operator(&s, 1, 2).unwrap();
        // D - 4 t^2 (D + 1)
        let target = DOperator::from_ints(&[&[0, 1], &[0, 0], &[-4, -4]]).unwrap();
        assert!(!basis.is_empty());
        for op in &basis {
            assert!(apply(op, &s).unwrap().is_zero_through(20));
        }
        // target lies in the span: its coordinates against the RREF pivots
        let stacked: Vec<Vec<BigRational>> =
            basis.iter().map(DOperator::flatten).chain([target.flatten()]).collect();
        assert_eq!(crate::linalg::rank(&stacked, 6), basis.len());
    }

    #[test]
    fn constant_series_fits_d() {
        let s = PowerSeries::from_ints(&[1, 0, 0, 0]);
        let basis = fit_operator(&s, 1, 0).unwrap();
        assert_eq!(basis, vec![DOperator::d_power(1)]);
    }

    #[test]
    fn short_prefix_rejected() {
        let s = PowerSeries::from_ints(&[1, 3, 27]);
        assert_eq!(fit_operator(&s, 3, 2), Err(OperatorError::InsufficientPrefix { have: 2, need: 14 }));
    }

    #[test]
    fn basis_is_normalized() {
        let s = constant_term_series(&catalog::f16(), 30);
        for op in fit_operator(&s, 3, 4).unwrap() {
            let first = op.flatten().into_iter().find(|c| !c.is_zero()).unwrap();
            assert_eq!(first, BigRational::from_integer(1.into()));
        }
    }
}
