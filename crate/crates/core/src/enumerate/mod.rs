//! The enumeration pipeline: every bitrade in both orders at every anchor,
//! deduplicated by canonical signature.

mod persist;
mod report;
mod store;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitrade::{Bitrade, Triple};
use crate::geometry::{canonical_signature, vertex_degrees};
use crate::solver::{pointed_integer_dissection, IntegerDissection, OverlapCheck, SolveError};

pub use persist::{
    load_store, read_bitrade_sizes, save_store, segment_file_name, verify_store, InputDigest,
    Manifest, PersistError, SegmentInfo, StoreIssue, FORMAT_VERSION,
};
pub use report::{
    asymptotics_report, counts_report, extremes_report, perfect_report, possible_sizes_report,
    AsymptoticsReport, AsymptoticsRow, ClassFilter, CountsRow, CountsTable, ExtremeRow, PerfectRow,
    PossibleSizesRow, Table, ASYMPTOTIC_BASE,
};
pub use store::{analyze, DissectionRecord, DissectionStore, StoreError};

/// Which of `(T*, T△)` and `(T△, T*)` was solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Star,
    Swapped,
}

impl Order {
    pub fn as_str(self) -> &'static str {
        match self {
            Order::Star => "star",
            Order::Swapped => "swap",
        }
    }

    pub fn parse(s: &str) -> Option<Order> {
        match s {
            "star" => Some(Order::Star),
            "swap" => Some(Order::Swapped),
            _ => None,
        }
    }
}

/// One work unit: `(bitrade index, order, anchor)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Source {
    pub bitrade: usize,
    pub order: Order,
    pub anchor: Triple,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bitrade {} ({}) anchor {}",
            self.bitrade,
            self.order.as_str(),
            self.anchor
        )
    }
}

/// A bitrade with a human-readable provenance label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledBitrade {
    pub label: String,
    pub bitrade: Bitrade,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateConfig {
    pub max_size: usize,
    pub workers: usize,
    pub check: OverlapCheck,
}

impl Default for EnumerateConfig {
    fn default() -> Self {
        EnumerateConfig {
            max_size: 13,
            workers: 1,
            check: OverlapCheck::AreaOnly,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("{label}: {unit}: {error}")]
    Solve {
        label: String,
        unit: Source,
        error: SolveError,
    },
    #[error("could not build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Dissection sizes over all anchors of one ordered bitrade, measured two
/// ways: triangle count, and vertex count minus two. The two agree on
/// separated dissections.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderSizes {
    pub triangles: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
}

impl OrderSizes {
    pub fn get(&self, measure: SizeMeasure) -> &BTreeSet<usize> {
        match measure {
            SizeMeasure::Triangles => &self.triangles,
            SizeMeasure::Vertices => &self.vertices,
        }
    }

    fn insert(&mut self, d: &IntegerDissection) {
        self.triangles.insert(d.size());
        self.vertices.insert(vertex_degrees(d).len() - 2);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeMeasure {
    Triangles,
    Vertices,
}

/// Sizes of every dissection obtainable from one bitrade, per order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitradeSizes {
    pub label: String,
    pub size: usize,
    pub star: OrderSizes,
    pub swapped: OrderSizes,
}

impl BitradeSizes {
    pub fn order(&self, order: Order) -> &OrderSizes {
        match order {
            Order::Star => &self.star,
            Order::Swapped => &self.swapped,
        }
    }

    /// Triangle counts over both orders.
    pub fn all_triangle_counts(&self) -> BTreeSet<usize> {
        self.star
            .triangles
            .union(&self.swapped.triangles)
            .copied()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub store: DissectionStore,
    pub bitrade_sizes: Vec<BitradeSizes>,
}

fn orders(b: &Bitrade) -> [(Order, Bitrade); 2] {
    [(Order::Star, b.clone()), (Order::Swapped, b.swap())]
}

/// Dissection sizes over all anchors of `b` and of `swap(b)`.
pub fn bitrade_dissection_sizes(b: &Bitrade) -> Result<[OrderSizes; 2], SolveError> {
    let mut out: [OrderSizes; 2] = Default::default();
    for (slot, (_, ordered)) in out.iter_mut().zip(orders(b)) {
        for &a in ordered.t_star() {
            slot.insert(&pointed_integer_dissection(
                &ordered,
                a,
                OverlapCheck::AreaOnly,
            )?);
        }
    }
    Ok(out)
}

fn process(
    index: usize,
    input: &LabelledBitrade,
    config: &EnumerateConfig,
) -> Result<(DissectionStore, BitradeSizes), EnumerateError> {
    let mut store = DissectionStore::new(config.max_size);
    let mut sizes: [OrderSizes; 2] = Default::default();
    for (slot, (order, ordered)) in sizes.iter_mut().zip(orders(&input.bitrade)) {
        for &anchor in ordered.t_star() {
            let source = Source {
                bitrade: index,
                order,
                anchor,
            };
            let d =
                pointed_integer_dissection(&ordered, anchor, config.check).map_err(|error| {
                    EnumerateError::Solve {
                        label: input.label.clone(),
                        unit: source,
                        error,
                    }
                })?;
            slot.insert(&d);
            if d.size() <= config.max_size {
                store.observe(canonical_signature(&d), &d, source);
            }
        }
    }
    let [star, swapped] = sizes;
    Ok((
        store,
        BitradeSizes {
            label: input.label.clone(),
            size: input.bitrade.size(),
            star,
            swapped,
        },
    ))
}

/// Runs the pipeline over every bitrade of size at most `max_size`.
///
/// The result does not depend on `workers`: per-bitrade stores are merged
/// with an associative, commutative merge and size sets are kept in input
/// order.
pub fn enumerate_dissections(
    bitrades: &[LabelledBitrade],
    config: &EnumerateConfig,
) -> Result<Enumeration, EnumerateError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| EnumerateError::Pool(e.to_string()))?;
    let parts: Vec<(DissectionStore, BitradeSizes)> = pool.install(|| {
        bitrades
            .par_iter()
            .enumerate()
            .filter(|(_, b)| b.bitrade.size() <= config.max_size)
            .map(|(i, b)| process(i, b, config))
            .collect::<Result<_, _>>()
    })?;
    let mut store = DissectionStore::new(config.max_size);
    let mut bitrade_sizes = Vec::with_capacity(parts.len());
    for (part, sizes) in parts {
        store.merge(part)?;
        bitrade_sizes.push(sizes);
    }
    Ok(Enumeration {
        store,
        bitrade_sizes,
    })
}

/// Total number of `(bitrade, order, anchor)` units per bitrade size.
pub fn work_units(bitrades: &[LabelledBitrade]) -> BTreeMap<usize, usize> {
    let mut units = BTreeMap::new();
    for b in bitrades {
        *units.entry(b.bitrade.size()).or_insert(0) += 2 * b.bitrade.size();
    }
    units
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ingest::{eulerian_triangulations, triangulation_to_bitrade};

    pub(crate) fn generated(max_size: usize) -> Vec<LabelledBitrade> {
        eulerian_triangulations(max_size + 2)
            .iter()
            .enumerate()
            .map(|(i, g)| LabelledBitrade {
                label: format!("generated:{i}"),
                bitrade: triangulation_to_bitrade(g).unwrap(),
            })
            .collect()
    }

    #[test]
    fn empty_input_gives_empty_store() {
        let e = enumerate_dissections(&[], &EnumerateConfig::default()).unwrap();
        assert!(e.store.is_empty());
        assert!(e.bitrade_sizes.is_empty());
    }

    #[test]
    fn size_four() {
        let input = vec![LabelledBitrade {
            label: "intercalate".into(),
            bitrade: catalog::intercalate(),
        }];
        let config = EnumerateConfig {
            max_size: 4,
            workers: 1,
            check: OverlapCheck::Pairwise,
        };
        let e = enumerate_dissections(&input, &config).unwrap();
        assert_eq!(e.store.len(), 1);
        let (_, rec) = e.store.iter().next().unwrap();
        assert_eq!((rec.size, rec.automorphisms, rec.sources), (4, 6, 8));
        assert_eq!(
            e.bitrade_sizes[0].all_triangle_counts(),
            BTreeSet::from([4])
        );
        let [star, swapped] = bitrade_dissection_sizes(&catalog::intercalate()).unwrap();
        assert_eq!(star.vertices, BTreeSet::from([4]));
        assert_eq!(swapped, star);
    }

    #[test]
    fn worker_count_does_not_change_the_store() {
        let input = generated(9);
        let one = enumerate_dissections(
            &input,
            &EnumerateConfig {
                max_size: 9,
                workers: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let four = enumerate_dissections(
            &input,
            &EnumerateConfig {
                max_size: 9,
                workers: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
        let mut reversed = input.clone();
        reversed.reverse();
        let back = enumerate_dissections(
            &reversed,
            &EnumerateConfig {
                max_size: 9,
                workers: 3,
                ..Default::default()
            },
        )
        .unwrap();
        let sigs = |e: &Enumeration| {
            e.store
                .iter()
                .map(|(s, r)| (s.clone(), r.sources))
                .collect::<Vec<_>>()
        };
        assert_eq!(sigs(&one), sigs(&back));
    }

    #[test]
    fn solver_failures_carry_provenance() {
        let input = vec![LabelledBitrade {
            label: "z3".into(),
            bitrade: catalog::cyclic_z3(),
        }];
        let err = enumerate_dissections(&input, &EnumerateConfig::default()).unwrap_err();
        match err {
            EnumerateError::Solve { label, unit, error } => {
                assert_eq!(label, "z3");
                assert_eq!(unit.bitrade, 0);
                assert_eq!(error, SolveError::InconsistentSystem);
            }
            other => panic!("unexpected {other}"),
        }
    }
}
