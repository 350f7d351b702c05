use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{build_equations, solve_integral, Line, PointedSolution, Rational, SolveError};
use crate::bitrade::{Bitrade, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Up,
    Down,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Up => "up",
            Orientation::Down => "down",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    Area,
    Overlap(Triple, Triple),
    OutOfBounds(Triple),
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::Area => write!(f, "triangle areas do not sum to the area of Σ"),
            ValidationFailure::Overlap(a, b) => write!(f, "triangles {a} and {b} overlap"),
            ValidationFailure::OutOfBounds(t) => write!(f, "triangle {t} leaves Σ"),
        }
    }
}

/// How much of the dissection property to verify after construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OverlapCheck {
    /// Bounds and the area sum only.
    #[default]
    AreaOnly,
    /// Additionally test every pair of triangles for interior overlap.
    Pairwise,
}

/// A triangle in sheared coordinates. `corner` is the right-angle vertex:
/// bottom-left for up triangles, top-right for down triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub orientation: Orientation,
    pub corner: (Rational, Rational),
    pub side: Rational,
    pub source: Triple,
}

impl Triangle {
    pub fn vertices(&self) -> [(Rational, Rational); 3] {
        let (x, y) = self.corner.clone();
        let t = &self.side;
        match self.orientation {
            Orientation::Up => [(x.clone(), y.clone()), (&x + t, y.clone()), (x, &y + t)],
            Orientation::Down => [(x.clone(), y.clone()), (&x - t, y.clone()), (x, &y - t)],
        }
    }

    /// Closed projections onto `x`, `y` and `x + y`.
    fn extents(&self) -> [(Rational, Rational); 3] {
        let (x, y) = &self.corner;
        let t = &self.side;
        let d = x + y;
        match self.orientation {
            Orientation::Up => [(x.clone(), x + t), (y.clone(), y + t), (d.clone(), d + t)],
            Orientation::Down => [(x - t, x.clone()), (y - t, y.clone()), (&d - t, d)],
        }
    }
}

fn interiors_meet<T: PartialOrd>(a: &[(T, T); 3], b: &[(T, T); 3]) -> bool {
    // All edges lie in three directions, so the three projections are
    // the only candidate separating axes.
    a.iter().zip(b).all(|(p, q)| p.1 > q.0 && q.1 > p.0)
}

/// The set `Δ(T, a)` of non-degenerate triangles of a pointed bitrade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dissection {
    pub anchor: Triple,
    pub triangles: Vec<Triangle>,
}

impl Dissection {
    pub fn size(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex_set(&self) -> BTreeSet<(Rational, Rational)> {
        self.triangles.iter().flat_map(|t| t.vertices()).collect()
    }

    /// Sum of triangle areas in sheared units (Σ has area 1/2).
    pub fn area(&self) -> Rational {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        self.triangles
            .iter()
            .map(|t| &t.side * &t.side * &half)
            .sum()
    }

    fn validate(&self, check: OverlapCheck) -> Result<(), ValidationFailure> {
        let one = Rational::one();
        for t in &self.triangles {
            let [x, y, d] = t.extents();
            if x.0.is_negative() || y.0.is_negative() || d.1 > one {
                return Err(ValidationFailure::OutOfBounds(t.source));
            }
        }
        if self.area() != Rational::new(BigInt::one(), BigInt::from(2)) {
            return Err(ValidationFailure::Area);
        }
        if check == OverlapCheck::Pairwise {
            let ext: Vec<_> = self.triangles.iter().map(Triangle::extents).collect();
            for i in 0..ext.len() {
                for j in i + 1..ext.len() {
                    if interiors_meet(&ext[i], &ext[j]) {
                        return Err(ValidationFailure::Overlap(
                            self.triangles[i].source,
                            self.triangles[j].source,
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One triangle per non-degenerate `T△` triple.
pub fn dissection_from_solution(
    b: &Bitrade,
    sol: &PointedSolution,
    check: OverlapCheck,
) -> Result<Dissection, SolveError> {
    let mut triangles = Vec::with_capacity(b.size());
    for c in b.t_delta() {
        let (r, col, s) = sol.triple_values(c);
        let t = s - r - col;
        if t.is_zero() {
            continue;
        }
        let orientation = if t.is_positive() {
            Orientation::Up
        } else {
            Orientation::Down
        };
        triangles.push(Triangle {
            orientation,
            corner: (col.clone(), r.clone()),
            side: t.abs(),
            source: *c,
        });
    }
    let d = Dissection {
        anchor: sol.anchor,
        triangles,
    };
    d.validate(check).map_err(SolveError::Validation)?;
    Ok(d)
}

/// A triangle with integer corner and side at some scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntTriangle {
    pub orientation: Orientation,
    pub x: i64,
    pub y: i64,
    pub side: i64,
}

impl IntTriangle {
    pub fn vertices(&self) -> [(i64, i64); 3] {
        let (x, y, t) = (self.x, self.y, self.side);
        match self.orientation {
            Orientation::Up => [(x, y), (x + t, y), (x, y + t)],
            Orientation::Down => [(x, y), (x - t, y), (x, y - t)],
        }
    }

    /// Rebuilds a triangle from its three vertices.
    pub fn from_vertices(v: [(i64, i64); 3]) -> IntTriangle {
        let min_x = v.iter().map(|p| p.0).min().unwrap();
        let max_x = v.iter().map(|p| p.0).max().unwrap();
        let min_y = v.iter().map(|p| p.1).min().unwrap();
        let max_y = v.iter().map(|p| p.1).max().unwrap();
        let side = max_x - min_x;
        if v.contains(&(min_x, min_y)) {
            IntTriangle {
                orientation: Orientation::Up,
                x: min_x,
                y: min_y,
                side,
            }
        } else {
            IntTriangle {
                orientation: Orientation::Down,
                x: max_x,
                y: max_y,
                side,
            }
        }
    }

    pub fn extents(&self) -> [(i64, i64); 3] {
        let (x, y, t) = (self.x, self.y, self.side);
        match self.orientation {
            Orientation::Up => [(x, x + t), (y, y + t), (x + y, x + y + t)],
            Orientation::Down => [(x - t, x), (y - t, y), (x + y - t, x + y)],
        }
    }

    pub fn interiors_meet(&self, other: &IntTriangle) -> bool {
        interiors_meet(&self.extents(), &other.extents())
    }
}

/// A dissection of the side-`scale` triangle into integer triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerDissection {
    pub scale: i64,
    pub triangles: Vec<IntTriangle>,
}

impl IntegerDissection {
    pub fn size(&self) -> usize {
        self.triangles.len()
    }

    /// `(u_s, d_s)`: counts of up and down triangles by side.
    pub fn tallies(&self) -> (BTreeMap<i64, usize>, BTreeMap<i64, usize>) {
        let mut up = BTreeMap::new();
        let mut down = BTreeMap::new();
        for t in &self.triangles {
            let map = match t.orientation {
                Orientation::Up => &mut up,
                Orientation::Down => &mut down,
            };
            *map.entry(t.side).or_insert(0) += 1;
        }
        (up, down)
    }

    /// Σ s·u_s = Σ s·d_s + L.
    pub fn satisfies_side_relation(&self) -> bool {
        let (up, down) = self.tallies();
        let weigh =
            |m: &BTreeMap<i64, usize>| m.iter().map(|(&s, &n)| s as i128 * n as i128).sum::<i128>();
        weigh(&up) == weigh(&down) + self.scale as i128
    }

    /// Σ u_s·s² + Σ d_s·s² = L².
    pub fn satisfies_area_relation(&self) -> bool {
        let total: i128 = self
            .triangles
            .iter()
            .map(|t| t.side as i128 * t.side as i128)
            .sum();
        total == self.scale as i128 * self.scale as i128
    }

    /// The gcd of all sides and the scale is 1.
    pub fn is_minimal_scale(&self) -> bool {
        self.triangles
            .iter()
            .fold(self.scale, |g, t| g.gcd(&t.side))
            == 1
    }

    pub fn validate(&self, check: OverlapCheck) -> Result<(), ValidationFailure> {
        let witness = |t: &IntTriangle| Triple::new(t.x as u32, t.y as u32, t.side as u32);
        for t in &self.triangles {
            let [x, y, d] = t.extents();
            if t.side <= 0 || x.0 < 0 || y.0 < 0 || d.1 > self.scale {
                return Err(ValidationFailure::OutOfBounds(witness(t)));
            }
        }
        if !self.satisfies_area_relation() {
            return Err(ValidationFailure::Area);
        }
        if check == OverlapCheck::Pairwise {
            for (i, a) in self.triangles.iter().enumerate() {
                for b in &self.triangles[i + 1..] {
                    if a.interiors_meet(b) {
                        return Err(ValidationFailure::Overlap(witness(a), witness(b)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Unit-triangle coordinates of a scaled point.
    pub fn unit_point(&self, p: (i64, i64)) -> (Rational, Rational) {
        let l = BigInt::from(self.scale);
        (
            Rational::new(BigInt::from(p.0), l.clone()),
            Rational::new(BigInt::from(p.1), l),
        )
    }
}

/// Multiplies through by the least common multiple of all denominators.
pub fn rescale_integer(d: &Dissection) -> IntegerDissection {
    let mut l = BigInt::one();
    for t in &d.triangles {
        for v in [&t.corner.0, &t.corner.1, &t.side] {
            l = l.lcm(v.denom());
        }
    }
    let lr = Rational::from_integer(l.clone());
    let int = |v: &Rational| -> i64 {
        let x = v * &lr;
        debug_assert!(x.is_integer());
        x.to_integer()
            .to_i64()
            .expect("dissection scale fits in i64")
    };
    IntegerDissection {
        scale: l.to_i64().expect("dissection scale fits in i64"),
        triangles: d
            .triangles
            .iter()
            .map(|t| IntTriangle {
                orientation: t.orientation,
                x: int(&t.corner.0),
                y: int(&t.corner.1),
                side: int(&t.side),
            })
            .collect(),
    }
}

/// Solves `Eq(T, a)` and returns the minimal-scale integer dissection
/// directly, without materialising rationals.
pub fn pointed_integer_dissection(
    b: &Bitrade,
    anchor: Triple,
    check: OverlapCheck,
) -> Result<IntegerDissection, SolveError> {
    let sys = build_equations(b, anchor)?;
    let sol = solve_integral(&sys)?;
    let value = |line: Line| sol.numerators[sys.index_of(line).expect("line has a variable")];
    let mut raw: Vec<(Orientation, i128, i128, i128)> = Vec::with_capacity(b.size());
    let mut g: i128 = sol.denominator;
    for c in b.t_delta() {
        let (r, col, s) = (
            value(Line::Row(c.row)),
            value(Line::Col(c.col)),
            value(Line::Sym(c.sym)),
        );
        let t = s - r - col;
        if t == 0 {
            continue;
        }
        let orientation = if t > 0 {
            Orientation::Up
        } else {
            Orientation::Down
        };
        g = g.gcd(&t).gcd(&r).gcd(&col);
        raw.push((orientation, col, r, t.abs()));
    }
    let fit = |v: i128| i64::try_from(v / g).map_err(|_| SolveError::Overflow);
    let d = IntegerDissection {
        scale: fit(sol.denominator)?,
        triangles: raw
            .into_iter()
            .map(|(orientation, x, y, side)| {
                Ok(IntTriangle {
                    orientation,
                    x: fit(x)?,
                    y: fit(y)?,
                    side: fit(side)?,
                })
            })
            .collect::<Result<_, SolveError>>()?,
    };
    d.validate(check).map_err(SolveError::Validation)?;
    Ok(d)
}

/// Sheared to equilateral: `(x, y) ↦ (x + y/2, √3·y/2)`.
pub fn equilateral_point(x: f64, y: f64) -> (f64, f64) {
    (x + y / 2.0, 3f64.sqrt() * y / 2.0)
}

/// Floating-point equilateral coordinates of every triangle, for display.
pub fn equilateral_render_coords(d: &Dissection) -> Vec<[(f64, f64); 3]> {
    let f = |v: &Rational| v.to_f64().expect("finite coordinate");
    d.triangles
        .iter()
        .map(|t| t.vertices().map(|(x, y)| equilateral_point(f(&x), f(&y))))
        .collect()
}
