//! Latin bitrades: validation against the exchange axioms, the
//! τ-permutation representation, genus, separation and swap.

mod perm;
pub mod text;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use perm::Permutation;

/// One of the three coordinates of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Row,
    Col,
    Sym,
}

impl Coord {
    pub const ALL: [Coord; 3] = [Coord::Row, Coord::Col, Coord::Sym];

    fn index(self) -> usize {
        match self {
            Coord::Row => 0,
            Coord::Col => 1,
            Coord::Sym => 2,
        }
    }

    /// The two coordinates held fixed when `self` is the free one.
    pub fn others(self) -> (Coord, Coord) {
        match self {
            Coord::Row => (Coord::Col, Coord::Sym),
            Coord::Col => (Coord::Row, Coord::Sym),
            Coord::Sym => (Coord::Row, Coord::Col),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coord::Row => "row",
            Coord::Col => "col",
            Coord::Sym => "sym",
        })
    }
}

/// A (row, column, symbol) entry. The three labels live in separate
/// namespaces, so row 0 and column 0 are unrelated lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub row: u32,
    pub col: u32,
    pub sym: u32,
}

impl Triple {
    pub const fn new(row: u32, col: u32, sym: u32) -> Self {
        Triple { row, col, sym }
    }

    pub fn get(&self, c: Coord) -> u32 {
        match c {
            Coord::Row => self.row,
            Coord::Col => self.col,
            Coord::Sym => self.sym,
        }
    }

    fn key(&self, free: Coord) -> (u32, u32) {
        let (a, b) = free.others();
        (self.get(a), self.get(b))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r{},c{},s{})", self.row, self.col, self.sym)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    R1,
    R2,
    R3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::R1 => "R1",
            Axiom::R2 => "R2",
            Axiom::R3 => "R3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BitradeError {
    #[error("bitrade has an empty half")]
    Empty,
    #[error("axiom {axiom} violated at {witness} for fixed coordinates ({}, {})", fixed.0, fixed.1)]
    AxiomViolation {
        axiom: Axiom,
        witness: Triple,
        fixed: (Coord, Coord),
    },
    #[error("genus is not a nonnegative integer (size {size}, order {order})")]
    NonIntegralGenus { size: usize, order: usize },
}

/// Lookup from the values of two fixed coordinates to the unique triple
/// of a half that carries them, one table per free coordinate.
#[derive(Clone, Debug, Default)]
struct PairIndex([HashMap<(u32, u32), usize>; 3]);

impl PairIndex {
    fn build(triples: &[Triple]) -> Self {
        let mut idx = PairIndex::default();
        for c in Coord::ALL {
            idx.0[c.index()] = triples
                .iter()
                .enumerate()
                .map(|(i, t)| (t.key(c), i))
                .collect();
        }
        idx
    }

    fn find(&self, free: Coord, t: &Triple) -> Option<usize> {
        self.0[free.index()].get(&t.key(free)).copied()
    }
}

/// A validated latin bitrade `(T*, T△)`. Immutable once built.
#[derive(Clone, Debug)]
pub struct Bitrade {
    t_star: Vec<Triple>,
    t_delta: Vec<Triple>,
    star_index: PairIndex,
    delta_index: PairIndex,
}

impl PartialEq for Bitrade {
    fn eq(&self, other: &Self) -> bool {
        self.t_star == other.t_star && self.t_delta == other.t_delta
    }
}

impl Eq for Bitrade {}

fn check_half(from: &[Triple], into: &[Triple], axiom: Axiom) -> Result<(), BitradeError> {
    for free in Coord::ALL {
        let mut counts: HashMap<(u32, u32), usize> = HashMap::new();
        for t in into {
            *counts.entry(t.key(free)).or_default() += 1;
        }
        for t in from {
            if counts.get(&t.key(free)).copied().unwrap_or(0) != 1 {
                return Err(BitradeError::AxiomViolation {
                    axiom,
                    witness: *t,
                    fixed: free.others(),
                });
            }
        }
    }
    Ok(())
}

/// Builds a [`Bitrade`], checking R1–R3 exhaustively.
pub fn validate_bitrade(
    t_star: impl IntoIterator<Item = Triple>,
    t_delta: impl IntoIterator<Item = Triple>,
) -> Result<Bitrade, BitradeError> {
    let star: BTreeSet<Triple> = t_star.into_iter().collect();
    let delta: BTreeSet<Triple> = t_delta.into_iter().collect();
    if star.is_empty() || delta.is_empty() {
        return Err(BitradeError::Empty);
    }
    if let Some(t) = star.intersection(&delta).next() {
        return Err(BitradeError::AxiomViolation {
            axiom: Axiom::R1,
            witness: *t,
            fixed: (Coord::Row, Coord::Col),
        });
    }
    let t_star: Vec<Triple> = star.into_iter().collect();
    let t_delta: Vec<Triple> = delta.into_iter().collect();
    check_half(&t_star, &t_delta, Axiom::R2)?;
    check_half(&t_delta, &t_star, Axiom::R3)?;
    Ok(Bitrade {
        star_index: PairIndex::build(&t_star),
        delta_index: PairIndex::build(&t_delta),
        t_star,
        t_delta,
    })
}

/// The three τ permutations acting on `T*` (by position in
/// [`Bitrade::t_star`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauRep {
    pub tau: [Permutation; 3],
    pub size: usize,
    pub order: usize,
}

impl Bitrade {
    pub fn t_star(&self) -> &[Triple] {
        &self.t_star
    }

    pub fn t_delta(&self) -> &[Triple] {
        &self.t_delta
    }

    /// `|T*|`.
    pub fn size(&self) -> usize {
        self.t_star.len()
    }

    pub fn contains_star(&self, t: &Triple) -> bool {
        self.t_star.binary_search(t).is_ok()
    }

    /// Sorted distinct labels used in coordinate `c`.
    pub fn labels(&self, c: Coord) -> Vec<u32> {
        let set: BTreeSet<u32> = self.t_star.iter().map(|t| t.get(c)).collect();
        set.into_iter().collect()
    }

    /// β_r : T△ → T*, the star triple differing from `q` only in coordinate `r`.
    pub fn beta(&self, r: Coord, q: usize) -> usize {
        self.star_index
            .find(r, &self.t_delta[q])
            .expect("validated bitrade has total β maps")
    }

    /// β_r⁻¹ : T* → T△.
    pub fn beta_inv(&self, r: Coord, p: usize) -> usize {
        self.delta_index
            .find(r, &self.t_star[p])
            .expect("validated bitrade has total β maps")
    }

    /// The star triple agreeing with `t` outside coordinate `free`.
    pub fn star_partner(&self, free: Coord, t: &Triple) -> Option<Triple> {
        self.star_index.find(free, t).map(|i| self.t_star[i])
    }

    /// The delta triple agreeing with `t` outside coordinate `free`.
    pub fn delta_partner(&self, free: Coord, t: &Triple) -> Option<Triple> {
        self.delta_index.find(free, t).map(|i| self.t_delta[i])
    }

    /// τ1 = β2⁻¹β3, τ2 = β3⁻¹β1, τ3 = β1⁻¹β2, composed left to right.
    pub fn tau_representation(&self) -> TauRep {
        let n = self.t_star.len();
        let compose = |first: Coord, then: Coord| {
            Permutation::from_images(
                (0..n)
                    .map(|p| self.beta(then, self.beta_inv(first, p)))
                    .collect(),
            )
        };
        let tau = [
            compose(Coord::Col, Coord::Sym),
            compose(Coord::Sym, Coord::Row),
            compose(Coord::Row, Coord::Col),
        ];
        let order = tau.iter().map(Permutation::cycle_count).sum();
        TauRep {
            tau,
            size: n,
            order,
        }
    }

    pub fn genus(&self) -> Result<usize, BitradeError> {
        let rep = self.tau_representation();
        genus_from(rep.size, rep.order)
    }

    /// Rows, columns and symbols are in bijection with the cycles of
    /// τ1, τ2 and τ3 respectively.
    pub fn is_separated(&self) -> bool {
        let rep = self.tau_representation();
        Coord::ALL.iter().zip(rep.tau.iter()).all(|(&c, tau)| {
            let cycles = tau.cycles();
            let mut seen = BTreeSet::new();
            for cycle in &cycles {
                let label = self.t_star[cycle[0]].get(c);
                if cycle.iter().any(|&p| self.t_star[p].get(c) != label) || !seen.insert(label) {
                    return false;
                }
            }
            seen.len() == self.labels(c).len()
        })
    }

    /// `(T△, T*)`.
    pub fn swap(&self) -> Bitrade {
        Bitrade {
            t_star: self.t_delta.clone(),
            t_delta: self.t_star.clone(),
            star_index: self.delta_index.clone(),
            delta_index: self.star_index.clone(),
        }
    }
}

fn genus_from(size: usize, order: usize) -> Result<usize, BitradeError> {
    let euler = size + 2;
    if order > euler || !(euler - order).is_multiple_of(2) {
        return Err(BitradeError::NonIntegralGenus { size, order });
    }
    Ok((euler - order) / 2)
}

/// True when the two bitrades differ only by renaming labels within each
/// namespace. Brute force over row and column bijections; intended for
/// small bitrades.
pub fn is_isotopic(a: &Bitrade, b: &Bitrade) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let (ra, ca, sa) = (
        a.labels(Coord::Row),
        a.labels(Coord::Col),
        a.labels(Coord::Sym),
    );
    let (rb, cb, sb) = (
        b.labels(Coord::Row),
        b.labels(Coord::Col),
        b.labels(Coord::Sym),
    );
    if ra.len() != rb.len() || ca.len() != cb.len() || sa.len() != sb.len() {
        return false;
    }
    let b_star: BTreeSet<Triple> = b.t_star.iter().copied().collect();
    let b_delta: BTreeSet<Triple> = b.t_delta.iter().copied().collect();
    let mut found = false;
    for_each_permutation(rb.len(), &mut |rp| {
        if found {
            return;
        }
        let rmap: HashMap<u32, u32> = ra
            .iter()
            .zip(rp.iter().map(|&i| rb[i]))
            .map(|(&x, y)| (x, y))
            .collect();
        for_each_permutation(cb.len(), &mut |cp| {
            if found {
                return;
            }
            let cmap: HashMap<u32, u32> = ca
                .iter()
                .zip(cp.iter().map(|&i| cb[i]))
                .map(|(&x, y)| (x, y))
                .collect();
            // The symbol map is forced by the star triples.
            let mut smap: HashMap<u32, u32> = HashMap::new();
            for t in &a.t_star {
                let (r, c) = (rmap[&t.row], cmap[&t.col]);
                let Some(image) = b.star_partner(Coord::Sym, &Triple::new(r, c, 0)) else {
                    return;
                };
                match smap.insert(t.sym, image.sym) {
                    Some(prev) if prev != image.sym => return,
                    _ => {}
                }
            }
            let map = |t: &Triple| Triple::new(rmap[&t.row], cmap[&t.col], smap[&t.sym]);
            found = a.t_star.iter().all(|t| b_star.contains(&map(t)))
                && a.t_delta.iter().all(|t| b_delta.contains(&map(t)));
        });
    });
    found
}

fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == used.len() {
            f(cur);
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, f);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cycles_as_labels(b: &Bitrade, tau: &Permutation) -> BTreeSet<Vec<String>> {
        tau.cycles()
            .into_iter()
            .map(|cycle| {
                let mut names: Vec<String> = cycle
                    .iter()
                    .map(|&p| {
                        let t = b.t_star()[p];
                        format!("{}{}{}", t.row, t.col, t.sym)
                    })
                    .collect();
                let start = (0..names.len()).min_by_key(|&i| names[i].clone()).unwrap();
                names.rotate_left(start);
                names
            })
            .collect()
    }

    fn printed(cycles: &[&[&str]]) -> BTreeSet<Vec<String>> {
        cycles
            .iter()
            .map(|c| {
                let mut v: Vec<String> = c.iter().map(|s| s.to_string()).collect();
                let start = (0..v.len()).min_by_key(|&i| v[i].clone()).unwrap();
                v.rotate_left(start);
                v
            })
            .collect()
    }

    #[test]
    fn intercalate_is_valid() {
        let b = catalog::intercalate();
        assert_eq!(b.size(), 4);
        assert_eq!(b.t_delta().len(), 4);
    }

    #[test]
    fn spherical_example_is_valid() {
        assert_eq!(catalog::spherical_example().size(), 12);
    }

    #[test]
    fn deleting_a_delta_triple_breaks_r2() {
        let b = catalog::intercalate();
        let delta: Vec<Triple> = b.t_delta()[1..].to_vec();
        let err = validate_bitrade(b.t_star().to_vec(), delta).unwrap_err();
        assert!(matches!(
            err,
            BitradeError::AxiomViolation {
                axiom: Axiom::R2,
                ..
            }
        ));
    }

    #[test]
    fn merged_rows_violate_r1() {
        // Intercalate with rows 0 and 1 identified.
        let star =
            [(0, 0, 0), (0, 1, 1), (0, 0, 1), (0, 1, 0)].map(|(r, c, s)| Triple::new(r, c, s));
        let delta =
            [(0, 0, 1), (0, 1, 0), (0, 0, 0), (0, 1, 1)].map(|(r, c, s)| Triple::new(r, c, s));
        let err = validate_bitrade(star, delta).unwrap_err();
        assert!(matches!(
            err,
            BitradeError::AxiomViolation {
                axiom: Axiom::R1,
                ..
            }
        ));
    }

    #[test]
    fn empty_half_is_rejected() {
        assert_eq!(
            validate_bitrade([], [Triple::new(0, 0, 0)]).unwrap_err(),
            BitradeError::Empty
        );
    }

    #[test]
    fn tau_cycles_match_printed_example() {
        let b = catalog::spherical_example();
        let rep = b.tau_representation();
        let expected = [
            printed(&[
                &["000", "022", "044"],
                &["134", "142"],
                &["201", "213", "232", "220"],
                &["304", "333", "311"],
            ]),
            printed(&[
                &["000", "304", "201"],
                &["213", "311"],
                &["022", "220"],
                &["134", "232", "333"],
                &["044", "142"],
            ]),
            printed(&[
                &["000", "220"],
                &["201", "311"],
                &["022", "232", "142"],
                &["213", "333"],
                &["044", "134", "304"],
            ]),
        ];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(cycles_as_labels(&b, &rep.tau[i]), *want, "tau{}", i + 1);
        }
        assert_eq!(rep.order, 14);
        assert_eq!(b.genus().unwrap(), 0);
        assert!(b.is_separated());
    }

    #[test]
    fn intercalate_taus_are_pairs_of_transpositions() {
        let b = catalog::intercalate();
        let rep = b.tau_representation();
        for tau in &rep.tau {
            let mut lens: Vec<usize> = tau.cycles().iter().map(Vec::len).collect();
            lens.sort();
            assert_eq!(lens, vec![2, 2]);
        }
        assert_eq!(rep.order, 6);
        assert_eq!(b.genus().unwrap(), 0);
        assert!(b.is_separated());
    }

    #[test]
    fn cyclic_z3_has_genus_one() {
        let b = catalog::cyclic_z3();
        let rep = b.tau_representation();
        for tau in &rep.tau {
            let lens: Vec<usize> = tau.cycles().iter().map(Vec::len).collect();
            assert_eq!(lens, vec![3, 3, 3]);
        }
        assert_eq!(rep.size, 9);
        assert_eq!(rep.order, 9);
        assert_eq!(b.genus().unwrap(), 1);
    }

    #[test]
    fn each_beta_is_a_bijection() {
        for b in [
            catalog::spherical_example(),
            catalog::cyclic_z3(),
            catalog::example_two(),
        ] {
            for r in Coord::ALL {
                let images: BTreeSet<usize> = (0..b.size()).map(|q| b.beta(r, q)).collect();
                assert_eq!(images.len(), b.size());
                for p in 0..b.size() {
                    assert_eq!(b.beta(r, b.beta_inv(r, p)), p);
                }
            }
        }
    }

    #[test]
    fn swap_is_an_involution_preserving_genus() {
        let b = catalog::spherical_example();
        let s = b.swap();
        assert_eq!(s.size(), 12);
        assert_eq!(s.genus().unwrap(), 0);
        assert_eq!(s.tau_representation().order, b.tau_representation().order);
        assert_eq!(s.swap(), b);
        let i = catalog::intercalate();
        let si = i.swap();
        assert!(validate_bitrade(si.t_star().to_vec(), si.t_delta().to_vec()).is_ok());
    }

    #[test]
    fn genus_arithmetic() {
        assert_eq!(genus_from(12, 14).unwrap(), 0);
        assert_eq!(genus_from(9, 9).unwrap(), 1);
        assert!(genus_from(9, 10).is_err());
        assert!(genus_from(4, 7).is_err());
    }

    #[test]
    fn isotopy_detects_relabelling() {
        let b = catalog::example_two();
        let relabel = |t: &Triple| Triple::new(3 - t.row, (t.col + 2) % 5, (t.sym + 1) % 5);
        let c = validate_bitrade(
            b.t_star().iter().map(relabel),
            b.t_delta().iter().map(relabel),
        )
        .unwrap();
        assert!(is_isotopic(&b, &c));
        assert!(!is_isotopic(&b, &catalog::intercalate()));
        let i = catalog::intercalate();
        assert!(is_isotopic(&i, &i.swap()));
    }
}
