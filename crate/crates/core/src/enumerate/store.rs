use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;

use super::Source;
use crate::geometry::{
    automorphism_order, classify_separated, is_perfect, is_trivial, max_min_sides, normalize,
    Signature,
};
use crate::solver::IntegerDissection;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissectionRecord {
    pub size: usize,
    pub automorphisms: usize,
    pub separated: bool,
    pub perfect: bool,
    pub trivial: bool,
    pub scale: i64,
    pub max_side: i64,
    pub min_side: i64,
    /// Least source that produced this dissection.
    pub witness: Source,
    /// Number of `(bitrade, order, anchor)` units that produced it.
    pub sources: u64,
}

impl DissectionRecord {
    /// Everything except the witness and the counter.
    fn same_shape(&self, other: &DissectionRecord) -> bool {
        (
            self.size,
            self.automorphisms,
            self.separated,
            self.perfect,
            self.trivial,
        ) == (
            other.size,
            other.automorphisms,
            other.separated,
            other.perfect,
            other.trivial,
        ) && (self.scale, self.max_side, self.min_side)
            == (other.scale, other.max_side, other.min_side)
    }
}

/// Computes every derived field of a record.
pub fn analyze(d: &IntegerDissection, witness: Source, sources: u64) -> DissectionRecord {
    let d = normalize(d);
    let (max_side, min_side) = max_min_sides(&d);
    DissectionRecord {
        size: d.size(),
        automorphisms: automorphism_order(&d),
        separated: classify_separated(&d),
        perfect: is_perfect(&d),
        trivial: is_trivial(&d),
        scale: d.scale,
        max_side,
        min_side,
        witness,
        sources,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StoreError {
    #[error("records for {0} disagree")]
    Conflict(Signature),
    #[error("unknown signature {0}")]
    UnknownSignature(String),
}

/// Signature-keyed dissection records. Merging adds source counters, keeps
/// the least witness and requires every derived field to agree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DissectionStore {
    max_size: usize,
    records: BTreeMap<Signature, DissectionRecord>,
}

impl DissectionStore {
    pub fn new(max_size: usize) -> Self {
        DissectionStore {
            max_size,
            records: BTreeMap::new(),
        }
    }

    /// Largest dissection size the producing run covered.
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, sig: &Signature) -> Option<&DissectionRecord> {
        self.records.get(sig)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Signature, DissectionRecord> {
        self.records.iter()
    }

    /// Keeps only the records `keep` accepts.
    pub fn retain(&mut self, mut keep: impl FnMut(&Signature, &DissectionRecord) -> bool) {
        self.records.retain(|s, r| keep(s, r));
    }

    /// Records one more source of `sig`, analyzing `d` only on first sight.
    pub fn observe(&mut self, sig: Signature, d: &IntegerDissection, source: Source) {
        match self.records.entry(sig) {
            Entry::Occupied(mut e) => {
                let r = e.get_mut();
                r.sources += 1;
                r.witness = r.witness.min(source);
            }
            Entry::Vacant(e) => {
                e.insert(analyze(d, source, 1));
            }
        }
    }

    pub fn insert(&mut self, sig: Signature, rec: DissectionRecord) -> Result<(), StoreError> {
        match self.records.entry(sig) {
            Entry::Occupied(mut e) => {
                let r = e.get_mut();
                if !r.same_shape(&rec) {
                    return Err(StoreError::Conflict(e.key().clone()));
                }
                r.sources += rec.sources;
                r.witness = r.witness.min(rec.witness);
            }
            Entry::Vacant(e) => {
                e.insert(rec);
            }
        }
        Ok(())
    }

    pub fn merge(&mut self, other: DissectionStore) -> Result<(), StoreError> {
        self.max_size = self.max_size.max(other.max_size);
        for (sig, rec) in other.records {
            self.insert(sig, rec)?;
        }
        Ok(())
    }

    /// Number of `(bitrade, order, anchor)` units that produced `sig`.
    pub fn source_bitrade_counts(&self, sig: &Signature) -> Result<u64, StoreError> {
        self.records
            .get(sig)
            .map(|r| r.sources)
            .ok_or_else(|| StoreError::UnknownSignature(sig.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitrade::Triple;
    use crate::enumerate::Order;
    use crate::geometry::canonical_signature;
    use crate::solver::{IntTriangle, Orientation};

    fn quad() -> IntegerDissection {
        let up = |x, y| IntTriangle {
            orientation: Orientation::Up,
            x,
            y,
            side: 1,
        };
        IntegerDissection {
            scale: 2,
            triangles: vec![
                up(0, 0),
                up(1, 0),
                up(0, 1),
                IntTriangle {
                    orientation: Orientation::Down,
                    x: 1,
                    y: 1,
                    side: 1,
                },
            ],
        }
    }

    fn src(i: usize) -> Source {
        Source {
            bitrade: i,
            order: Order::Star,
            anchor: Triple::new(0, 0, 0),
        }
    }

    #[test]
    fn merge_adds_counters_and_keeps_least_witness() {
        let d = quad();
        let sig = canonical_signature(&d);
        let mut a = DissectionStore::new(4);
        a.observe(sig.clone(), &d, src(3));
        a.observe(sig.clone(), &d, src(5));
        let mut b = DissectionStore::new(6);
        b.observe(sig.clone(), &d, src(1));
        let mut ab = a.clone();
        ab.merge(b.clone()).unwrap();
        let mut ba = b;
        ba.merge(a).unwrap();
        assert_eq!(ab, ba);
        let r = ab.get(&sig).unwrap();
        assert_eq!((r.sources, r.witness, ab.max_size()), (3, src(1), 6));
        assert_eq!(ab.source_bitrade_counts(&sig).unwrap(), 3);
    }

    #[test]
    fn conflicting_records_are_rejected() {
        let d = quad();
        let sig = canonical_signature(&d);
        let mut a = DissectionStore::new(4);
        a.observe(sig.clone(), &d, src(0));
        let mut bad = analyze(&d, src(0), 1);
        bad.automorphisms = 2;
        assert_eq!(a.insert(sig.clone(), bad), Err(StoreError::Conflict(sig)));
    }

    #[test]
    fn unknown_signature() {
        let store = DissectionStore::new(4);
        let sig = canonical_signature(&quad());
        assert!(matches!(
            store.source_bitrade_counts(&sig),
            Err(StoreError::UnknownSignature(_))
        ));
    }
}
