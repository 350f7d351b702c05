//! The pointed linear system `Eq(T, a)` and the dissection it induces.
//!
//! For an anchor `a ∈ T*` the system fixes `a_row = 0`, `a_col = 0`,
//! `a_sym = 1` and asks `r + c = s` for every other star triple. Each
//! `T△` triple `(r, c, s)` then bounds the triangle between the lines
//! `y = r̄`, `x = c̄` and `x + y = s̄` of the sheared unit triangle
//! `Σ = {x ≥ 0, y ≥ 0, x + y ≤ 1}`.

mod dissection;
mod elimination;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;

use crate::bitrade::{Bitrade, Coord, Triple};

pub use dissection::{
    dissection_from_solution, equilateral_point, equilateral_render_coords,
    pointed_integer_dissection, rescale_integer, Dissection, IntTriangle, IntegerDissection,
    Orientation, OverlapCheck, Triangle, ValidationFailure,
};
pub use elimination::{solve_integral, solve_rational, IntegralSolution};

pub type Rational = BigRational;

/// A line variable: one per row, column and symbol label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Line {
    Row(u32),
    Col(u32),
    Sym(u32),
}

impl Line {
    pub fn of(t: &Triple, c: Coord) -> Line {
        match c {
            Coord::Row => Line::Row(t.row),
            Coord::Col => Line::Col(t.col),
            Coord::Sym => Line::Sym(t.sym),
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "r{i}"),
            Line::Col(i) => write!(f, "c{i}"),
            Line::Sym(i) => write!(f, "s{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("anchor {0} is not in T*")]
    AnchorNotInTStar(Triple),
    #[error("system is inconsistent")]
    InconsistentSystem,
    #[error("system has rank {rank} < {variables} variables")]
    UnderdeterminedSystem { rank: usize, variables: usize },
    #[error("solution does not fit in 128-bit integers")]
    Overflow,
    #[error("dissection validation failed: {0}")]
    Validation(ValidationFailure),
}

/// `Σ terms·x = constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub terms: Vec<(usize, i64)>,
    pub constant: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub anchor: Triple,
    pub variables: Vec<Line>,
    pub equations: Vec<Equation>,
}

impl LinearSystem {
    pub fn index_of(&self, line: Line) -> Option<usize> {
        self.variables.binary_search(&line).ok()
    }
}

/// Builds `Eq(T, a)`: three anchor equations then one relation per other
/// star triple, in `T*` order.
pub fn build_equations(b: &Bitrade, anchor: Triple) -> Result<LinearSystem, SolveError> {
    if !b.contains_star(&anchor) {
        return Err(SolveError::AnchorNotInTStar(anchor));
    }
    let mut variables: Vec<Line> = Vec::new();
    variables.extend(b.labels(Coord::Row).into_iter().map(Line::Row));
    variables.extend(b.labels(Coord::Col).into_iter().map(Line::Col));
    variables.extend(b.labels(Coord::Sym).into_iter().map(Line::Sym));
    let index: HashMap<Line, usize> = variables.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let var = |t: &Triple, c| index[&Line::of(t, c)];
    let mut equations = vec![
        Equation {
            terms: vec![(var(&anchor, Coord::Row), 1)],
            constant: 0,
        },
        Equation {
            terms: vec![(var(&anchor, Coord::Col), 1)],
            constant: 0,
        },
        Equation {
            terms: vec![(var(&anchor, Coord::Sym), 1)],
            constant: 1,
        },
    ];
    for t in b.t_star().iter().filter(|&&t| t != anchor) {
        equations.push(Equation {
            terms: vec![
                (var(t, Coord::Row), 1),
                (var(t, Coord::Col), 1),
                (var(t, Coord::Sym), -1),
            ],
            constant: 0,
        });
    }
    Ok(LinearSystem {
        anchor,
        variables,
        equations,
    })
}

/// Exact values of every line for a pointed bitrade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedSolution {
    pub anchor: Triple,
    pub values: BTreeMap<Line, Rational>,
}

impl PointedSolution {
    pub fn value(&self, line: Line) -> &Rational {
        &self.values[&line]
    }

    /// `(r̄, c̄, s̄)` of a triple.
    pub fn triple_values(&self, t: &Triple) -> (&Rational, &Rational, &Rational) {
        (
            self.value(Line::Row(t.row)),
            self.value(Line::Col(t.col)),
            self.value(Line::Sym(t.sym)),
        )
    }

    /// Distinct labels of each kind received distinct values.
    pub fn is_separated(&self) -> bool {
        let mut seen: HashMap<(u8, &Rational), ()> = HashMap::new();
        self.values.iter().all(|(line, v)| {
            let kind = match line {
                Line::Row(_) => 0,
                Line::Col(_) => 1,
                Line::Sym(_) => 2,
            };
            seen.insert((kind, v), ()).is_none()
        })
    }
}

pub fn solve_exact(sys: &LinearSystem) -> Result<PointedSolution, SolveError> {
    let values = elimination::solve_values(sys)?;
    Ok(PointedSolution {
        anchor: sys.anchor,
        values: sys.variables.iter().copied().zip(values).collect(),
    })
}

/// Convenience: build and solve.
pub fn solve_pointed(b: &Bitrade, anchor: Triple) -> Result<PointedSolution, SolveError> {
    solve_exact(&build_equations(b, anchor)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn residual_is_zero(sys: &LinearSystem, sol: &PointedSolution) -> bool {
        sys.equations.iter().all(|eq| {
            let lhs: Rational = eq
                .terms
                .iter()
                .map(|&(v, c)| {
                    sol.value(sys.variables[v]) * Rational::from_integer(BigInt::from(c))
                })
                .sum();
            (lhs - Rational::from_integer(BigInt::from(eq.constant))).is_zero()
        })
    }

    #[test]
    fn example_two_system_shape() {
        let b = catalog::example_two();
        let sys = build_equations(&b, catalog::EXAMPLE_TWO_ANCHOR).unwrap();
        assert_eq!(sys.variables.len(), 14);
        assert_eq!(sys.equations.len(), 14);
        let (r0, c0, s4) = (
            sys.index_of(Line::Row(0)).unwrap(),
            sys.index_of(Line::Col(0)).unwrap(),
            sys.index_of(Line::Sym(4)).unwrap(),
        );
        assert_eq!(
            sys.equations[0],
            Equation {
                terms: vec![(r0, 1)],
                constant: 0
            }
        );
        assert_eq!(
            sys.equations[1],
            Equation {
                terms: vec![(c0, 1)],
                constant: 0
            }
        );
        assert_eq!(
            sys.equations[2],
            Equation {
                terms: vec![(s4, 1)],
                constant: 1
            }
        );
        let (r1, c3, s2) = (
            sys.index_of(Line::Row(1)).unwrap(),
            sys.index_of(Line::Col(3)).unwrap(),
            sys.index_of(Line::Sym(2)).unwrap(),
        );
        assert!(sys.equations.contains(&Equation {
            terms: vec![(r1, 1), (c3, 1), (s2, -1)],
            constant: 0
        }));
    }

    #[test]
    fn example_two_solution() {
        let b = catalog::example_two();
        let sys = build_equations(&b, catalog::EXAMPLE_TWO_ANCHOR).unwrap();
        let sol = solve_exact(&sys).unwrap();
        let rows = [q(0, 1), q(2, 7), q(5, 14), q(4, 7)];
        let cols = [q(0, 1), q(3, 14), q(5, 14), q(3, 7), q(5, 7)];
        let syms = [q(5, 14), q(4, 7), q(5, 7), q(11, 14), q(1, 1)];
        for (i, v) in rows.iter().enumerate() {
            assert_eq!(sol.value(Line::Row(i as u32)), v);
        }
        for (i, v) in cols.iter().enumerate() {
            assert_eq!(sol.value(Line::Col(i as u32)), v);
        }
        for (i, v) in syms.iter().enumerate() {
            assert_eq!(sol.value(Line::Sym(i as u32)), v);
        }
        assert!(residual_is_zero(&sys, &sol));
        assert!(sol.is_separated());
        // Both elimination routes agree.
        let slow = solve_rational(&sys).unwrap();
        assert_eq!(
            slow,
            sys.variables
                .iter()
                .map(|l| sol.value(*l).clone())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn intercalate_solution() {
        let b = catalog::intercalate();
        let sys = build_equations(&b, Triple::new(0, 0, 0)).unwrap();
        assert_eq!(sys.equations.len(), 6);
        assert_eq!(sys.variables.len(), 6);
        let sol = solve_exact(&sys).unwrap();
        assert_eq!(sol.value(Line::Row(1)), &q(1, 2));
        assert_eq!(sol.value(Line::Col(1)), &q(1, 2));
        assert_eq!(sol.value(Line::Sym(1)), &q(1, 2));
        assert_eq!(sol.value(Line::Sym(0)), &q(1, 1));
    }

    #[test]
    fn cyclic_z3_is_inconsistent() {
        let b = catalog::cyclic_z3();
        let sys = build_equations(&b, Triple::new(0, 0, 0)).unwrap();
        assert_eq!(sys.variables.len(), 9);
        assert_eq!(sys.equations.len(), 11);
        assert_eq!(
            solve_exact(&sys).unwrap_err(),
            SolveError::InconsistentSystem
        );
        assert_eq!(
            solve_rational(&sys).unwrap_err(),
            SolveError::InconsistentSystem
        );
    }

    #[test]
    fn anchor_must_be_a_star_triple() {
        let b = catalog::intercalate();
        assert_eq!(
            build_equations(&b, Triple::new(0, 0, 1)).unwrap_err(),
            SolveError::AnchorNotInTStar(Triple::new(0, 0, 1))
        );
    }

    #[test]
    fn underdetermined_is_reported() {
        let sys = LinearSystem {
            anchor: Triple::new(0, 0, 0),
            variables: vec![Line::Row(0), Line::Col(0)],
            equations: vec![Equation {
                terms: vec![(0, 1), (1, 1)],
                constant: 1,
            }],
        };
        assert_eq!(
            solve_exact(&sys).unwrap_err(),
            SolveError::UnderdeterminedSystem {
                rank: 1,
                variables: 2
            }
        );
    }

    #[test]
    fn integral_and_rational_routes_agree_on_every_anchor() {
        for b in [
            catalog::example_two(),
            catalog::spherical_example(),
            catalog::intercalate(),
        ] {
            for order in [b.clone(), b.swap()] {
                for &a in order.t_star() {
                    let sys = build_equations(&order, a).unwrap();
                    let int = solve_integral(&sys).unwrap();
                    let rat = solve_rational(&sys).unwrap();
                    for (n, r) in int.numerators.iter().zip(&rat) {
                        assert_eq!(q(*n as i64, int.denominator as i64), *r);
                    }
                }
            }
        }
    }
}
