use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{BitradeSizes, DissectionStore, Order, SizeMeasure};

/// `e_n = ASYMPTOTIC_BASE^(n − 8)`.
pub const ASYMPTOTIC_BASE: f64 = 3.43;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassFilter {
    Separated,
    All,
}

/// Rows that serialize to CSV with a fixed column order, or to JSON.
pub trait Table {
    type Row: Serialize;
    const HEADER: &'static [&'static str];

    fn rows(&self) -> &[Self::Row];
    fn cells(row: &Self::Row) -> Vec<String>;

    fn to_csv(&self) -> String {
        let mut out = Self::HEADER.join(",");
        out.push('\n');
        for r in self.rows() {
            out.push_str(&Self::cells(r).join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self.rows()).expect("rows serialize")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountsRow {
    pub n: usize,
    pub total: usize,
    pub a1: usize,
    pub a2: usize,
    pub a3: usize,
    pub a6: usize,
    pub separated: usize,
    pub nonseparated: usize,
    pub perfect: usize,
    pub trivial: usize,
}

impl CountsRow {
    /// `A(n, k)` for `k` in `{1, 2, 3, 6}`.
    pub fn a(&self) -> [usize; 4] {
        [self.a1, self.a2, self.a3, self.a6]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountsTable {
    pub class: ClassFilter,
    pub rows: Vec<CountsRow>,
}

impl CountsTable {
    pub fn row(&self, n: usize) -> Option<&CountsRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn total(&self, n: usize) -> usize {
        self.row(n).map_or(0, |r| r.total)
    }
}

impl Table for CountsTable {
    type Row = CountsRow;
    const HEADER: &'static [&'static str] = &[
        "n",
        "total",
        "A1",
        "A2",
        "A3",
        "A6",
        "separated",
        "nonseparated",
        "perfect",
        "trivial",
    ];

    fn rows(&self) -> &[CountsRow] {
        &self.rows
    }

    fn cells(r: &CountsRow) -> Vec<String> {
        [
            r.n,
            r.total,
            r.a1,
            r.a2,
            r.a3,
            r.a6,
            r.separated,
            r.nonseparated,
            r.perfect,
            r.trivial,
        ]
        .iter()
        .map(usize::to_string)
        .collect()
    }
}

/// Per-size tallies; sizes without dissections are omitted.
pub fn counts_report(store: &DissectionStore, class: ClassFilter) -> CountsTable {
    let mut rows: BTreeMap<usize, CountsRow> = BTreeMap::new();
    for (_, r) in store.iter() {
        if class == ClassFilter::Separated && !r.separated {
            continue;
        }
        let row = rows.entry(r.size).or_insert_with(|| CountsRow {
            n: r.size,
            ..Default::default()
        });
        row.total += 1;
        match r.automorphisms {
            1 => row.a1 += 1,
            2 => row.a2 += 1,
            3 => row.a3 += 1,
            6 => row.a6 += 1,
            k => unreachable!("automorphism order {k}"),
        }
        if r.separated {
            row.separated += 1;
        } else {
            row.nonseparated += 1;
        }
        row.perfect += r.perfect as usize;
        row.trivial += r.trivial as usize;
    }
    CountsTable {
        class,
        rows: rows.into_values().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticsRow {
    pub n: usize,
    pub d_n: usize,
    pub e_n: f64,
    pub mu_n: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticsReport {
    pub rows: Vec<AsymptoticsRow>,
}

impl AsymptoticsReport {
    pub fn mu(&self, n: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.n == n).map(|r| r.mu_n)
    }
}

impl Table for AsymptoticsReport {
    type Row = AsymptoticsRow;
    const HEADER: &'static [&'static str] = &["n", "d_n", "e_n", "mu_n"];

    fn rows(&self) -> &[AsymptoticsRow] {
        &self.rows
    }

    fn cells(r: &AsymptoticsRow) -> Vec<String> {
        vec![
            r.n.to_string(),
            r.d_n.to_string(),
            format!("{:.6}", r.e_n),
            format!("{:.6}", r.mu_n),
        ]
    }
}

/// `μ_n = e_n / d_n` from full-class totals, for `n ≥ 8`.
pub fn asymptotics_report(table: &CountsTable) -> AsymptoticsReport {
    let rows = table
        .rows
        .iter()
        .filter(|r| r.n >= 8 && r.total > 0)
        .map(|r| {
            let e_n = ASYMPTOTIC_BASE.powi(r.n as i32 - 8);
            AsymptoticsRow {
                n: r.n,
                d_n: r.total,
                e_n,
                mu_n: e_n / r.total as f64,
            }
        })
        .collect();
    AsymptoticsReport { rows }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectRow {
    pub n: usize,
    pub perfect: usize,
    pub separated: usize,
}

impl Table for Vec<PerfectRow> {
    type Row = PerfectRow;
    const HEADER: &'static [&'static str] = &["n", "perfect", "separated"];

    fn rows(&self) -> &[PerfectRow] {
        self
    }

    fn cells(r: &PerfectRow) -> Vec<String> {
        vec![
            r.n.to_string(),
            r.perfect.to_string(),
            r.separated.to_string(),
        ]
    }
}

/// Perfect dissections per size, for every size the store covers (zeros
/// included), with how many of them are separated.
pub fn perfect_report(store: &DissectionStore) -> Vec<PerfectRow> {
    let mut rows: BTreeMap<usize, PerfectRow> = (4..=store.max_size())
        .filter(|&n| n != 5)
        .map(|n| {
            (
                n,
                PerfectRow {
                    n,
                    perfect: 0,
                    separated: 0,
                },
            )
        })
        .collect();
    for (_, r) in store.iter().filter(|(_, r)| r.perfect) {
        let row = rows.entry(r.size).or_insert(PerfectRow {
            n: r.size,
            perfect: 0,
            separated: 0,
        });
        row.perfect += 1;
        row.separated += r.separated as usize;
    }
    rows.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremeRow {
    pub n: usize,
    pub max_side: i64,
    pub min_side: i64,
    pub signature: String,
}

impl Table for Vec<ExtremeRow> {
    type Row = ExtremeRow;
    const HEADER: &'static [&'static str] = &["n", "max_side", "min_side", "signature"];

    fn rows(&self) -> &[ExtremeRow] {
        self
    }

    fn cells(r: &ExtremeRow) -> Vec<String> {
        vec![
            r.n.to_string(),
            r.max_side.to_string(),
            r.min_side.to_string(),
            r.signature.clone(),
        ]
    }
}

/// Per size, the dissection with the largest ratio of largest to smallest
/// side; ties go to the least signature.
pub fn extremes_report(store: &DissectionStore) -> Vec<ExtremeRow> {
    let mut best: BTreeMap<usize, ExtremeRow> = BTreeMap::new();
    for (sig, r) in store.iter() {
        let better = match best.get(&r.size) {
            None => true,
            // Strictly larger max/min, compared by cross-multiplication.
            Some(b) => {
                (r.max_side as i128) * (b.min_side as i128)
                    > (b.max_side as i128) * (r.min_side as i128)
            }
        };
        if better {
            best.insert(
                r.size,
                ExtremeRow {
                    n: r.size,
                    max_side: r.max_side,
                    min_side: r.min_side,
                    signature: sig.to_string(),
                },
            );
        }
    }
    best.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PossibleSizesRow {
    pub bitrade_size: usize,
    pub sizes: Vec<usize>,
    pub bitrades: usize,
    pub example: String,
}

impl Table for Vec<PossibleSizesRow> {
    type Row = PossibleSizesRow;
    const HEADER: &'static [&'static str] = &["bitrade_size", "sizes", "bitrades", "example"];

    fn rows(&self) -> &[PossibleSizesRow] {
        self
    }

    fn cells(r: &PossibleSizesRow) -> Vec<String> {
        let sizes: Vec<String> = r.sizes.iter().map(usize::to_string).collect();
        vec![
            r.bitrade_size.to_string(),
            sizes.join(" "),
            r.bitrades.to_string(),
            r.example.clone(),
        ]
    }
}

/// Ordered bitrades none of whose dissections has the bitrade's own size,
/// grouped by `(size, set of dissection sizes)`. Each order of each input
/// bitrade counts separately.
pub fn possible_sizes_report(
    sizes: &[BitradeSizes],
    measure: SizeMeasure,
) -> Vec<PossibleSizesRow> {
    let mut groups: BTreeMap<(usize, BTreeSet<usize>), PossibleSizesRow> = BTreeMap::new();
    for b in sizes {
        for order in [Order::Star, Order::Swapped] {
            let set = b.order(order).get(measure);
            if set.contains(&b.size) {
                continue;
            }
            groups
                .entry((b.size, set.clone()))
                .or_insert_with(|| PossibleSizesRow {
                    bitrade_size: b.size,
                    sizes: set.iter().copied().collect(),
                    bitrades: 0,
                    example: format!("{} {}", b.label, order.as_str()),
                })
                .bitrades += 1;
        }
    }
    groups.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_store_gives_empty_tables() {
        let store = DissectionStore::new(0);
        let t = counts_report(&store, ClassFilter::All);
        assert!(t.rows.is_empty());
        assert_eq!(
            t.to_csv(),
            "n,total,A1,A2,A3,A6,separated,nonseparated,perfect,trivial\n"
        );
        assert!(asymptotics_report(&t).rows.is_empty());
        assert!(perfect_report(&store).is_empty());
        assert!(extremes_report(&store).is_empty());
    }

    #[test]
    fn mu_eight_is_reciprocal_of_d_eight() {
        let t = CountsTable {
            class: ClassFilter::All,
            rows: vec![CountsRow {
                n: 8,
                total: 3,
                a1: 2,
                a2: 1,
                ..Default::default()
            }],
        };
        let a = asymptotics_report(&t);
        assert_eq!(a.rows[0].e_n, 1.0);
        assert_eq!(a.mu(8), Some(1.0 / 3.0));
    }

    #[test]
    fn possible_sizes_groups() {
        use crate::enumerate::OrderSizes;
        let set = |s: &[usize]| s.iter().copied().collect::<BTreeSet<usize>>();
        let mk = |label: &str, size, star: &[usize], swapped: &[usize]| BitradeSizes {
            label: label.into(),
            size,
            star: OrderSizes {
                triangles: set(star),
                vertices: set(star),
            },
            swapped: OrderSizes {
                triangles: set(swapped),
                vertices: set(swapped),
            },
        };
        let input = [
            mk("a", 10, &[4, 7], &[4, 10]),
            mk("b", 10, &[7, 10], &[4, 7]),
            mk("c", 12, &[9], &[9]),
        ];
        let rows = possible_sizes_report(&input, SizeMeasure::Vertices);
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].bitrades, rows[0].example.as_str()), (2, "a star"));
        assert_eq!((rows[1].sizes.clone(), rows[1].bitrades), (vec![9], 2));
    }
}
