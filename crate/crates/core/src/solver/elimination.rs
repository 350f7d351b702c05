//! Exact elimination for the pointed systems.
//!
//! The fast path is Bareiss fraction-free elimination over checked `i128`
//! with first-nonzero pivoting in column order. Anything it cannot finish
//! (overflow, a column without a pivot) goes to Gauss–Jordan over
//! arbitrary-precision rationals, which also classifies singular systems.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LinearSystem, SolveError};

/// Solution as integer numerators over one positive common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSolution {
    pub numerators: Vec<i128>,
    pub denominator: i128,
}

fn dense(sys: &LinearSystem) -> Vec<Vec<i128>> {
    let v = sys.variables.len();
    sys.equations
        .iter()
        .map(|eq| {
            let mut row = vec![0i128; v + 1];
            for &(var, coeff) in &eq.terms {
                row[var] += coeff as i128;
            }
            row[v] = eq.constant as i128;
            row
        })
        .collect()
}

enum Fast {
    Solved(IntegralSolution),
    Inconsistent,
    GiveUp,
}

fn bareiss(sys: &LinearSystem) -> Fast {
    let v = sys.variables.len();
    let mut m = dense(sys);
    let rows = m.len();
    if rows < v {
        return Fast::GiveUp;
    }
    let mut prev: i128 = 1;
    for col in 0..v {
        let Some(p) = (col..rows).find(|&r| m[r][col] != 0) else {
            return Fast::GiveUp;
        };
        m.swap(col, p);
        let pivot = m[col][col];
        for i in col + 1..rows {
            let factor = m[i][col];
            for j in col + 1..=v {
                let Some(val) = pivot
                    .checked_mul(m[i][j])
                    .zip(factor.checked_mul(m[col][j]))
                    .and_then(|(a, b)| a.checked_sub(b))
                else {
                    return Fast::GiveUp;
                };
                debug_assert_eq!(val % prev, 0);
                m[i][j] = val / prev;
            }
            m[i][col] = 0;
        }
        prev = pivot;
    }
    if (v..rows).any(|r| m[r][v] != 0) {
        return Fast::Inconsistent;
    }
    let det = m[v - 1][v - 1];
    let mut y = vec![0i128; v];
    for i in (0..v).rev() {
        let mut acc = match det.checked_mul(m[i][v]) {
            Some(a) => a,
            None => return Fast::GiveUp,
        };
        for j in i + 1..v {
            match m[i][j].checked_mul(y[j]).and_then(|t| acc.checked_sub(t)) {
                Some(a) => acc = a,
                None => return Fast::GiveUp,
            }
        }
        debug_assert_eq!(acc % m[i][i], 0);
        y[i] = acc / m[i][i];
    }
    let (numerators, denominator) = if det < 0 {
        (y.into_iter().map(|t| -t).collect(), -det)
    } else {
        (y, det)
    };
    Fast::Solved(IntegralSolution {
        numerators,
        denominator,
    })
}

/// Gauss–Jordan over the rationals.
pub fn solve_rational(sys: &LinearSystem) -> Result<Vec<BigRational>, SolveError> {
    let v = sys.variables.len();
    let mut m: Vec<Vec<BigRational>> = dense(sys)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let rows = m.len();
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..v {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=v {
                    let delta = &factor * &m[pivot_row][j];
                    m[r][j] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| !m[r][v].is_zero()) {
        return Err(SolveError::InconsistentSystem);
    }
    if pivot_row < v {
        return Err(SolveError::UnderdeterminedSystem {
            rank: pivot_row,
            variables: v,
        });
    }
    Ok((0..v).map(|i| m[i][v].clone()).collect())
}

/// Integral form of the unique solution.
pub fn solve_integral(sys: &LinearSystem) -> Result<IntegralSolution, SolveError> {
    match bareiss(sys) {
        Fast::Solved(s) => Ok(s),
        Fast::Inconsistent => Err(SolveError::InconsistentSystem),
        Fast::GiveUp => {
            let values = solve_rational(sys)?;
            let mut denom = BigInt::one();
            for x in &values {
                denom = num_integer::lcm(denom, x.denom().clone());
            }
            let to_i128 = |x: BigInt| x.to_i128().ok_or(SolveError::Overflow);
            let numerators = values
                .iter()
                .map(|x| to_i128(x.numer() * (&denom / x.denom())))
                .collect::<Result<Vec<_>, _>>()?;
            debug_assert!(denom.is_positive());
            Ok(IntegralSolution {
                numerators,
                denominator: to_i128(denom)?,
            })
        }
    }
}

pub fn solve_values(sys: &LinearSystem) -> Result<Vec<BigRational>, SolveError> {
    match bareiss(sys) {
        Fast::Solved(s) => {
            let d = BigInt::from(s.denominator);
            Ok(s.numerators
                .into_iter()
                .map(|n| BigRational::new(BigInt::from(n), d.clone()))
                .collect())
        }
        Fast::Inconsistent => Err(SolveError::InconsistentSystem),
        Fast::GiveUp => solve_rational(sys),
    }
}
