//! Sparse copies of the structure constants, used by the exhaustive law checks.

use std::collections::BTreeMap;

use super::{CatPresentation, ConstTable, ObjId};
use crate::exactla::Scalar;

/// Nonzero `(index, coefficient)` pairs in increasing index order.
pub(crate) type SVec = Vec<(usize, Scalar)>;

pub(crate) type STable = Vec<Vec<SVec>>;

pub(crate) fn sparse_table(t: &ConstTable) -> STable {
    t.iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k, c.clone()))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `Σ x_i y_j table[i][j]`; `None` when a needed entry is missing.
pub(crate) fn bilinear(table: Option<&STable>, x: &SVec, y: &SVec) -> Option<SVec> {
    if x.is_empty() || y.is_empty() {
        return Some(Vec::new());
    }
    let table = table?;
    if let ([(i, s)], [(j, t)]) = (x.as_slice(), y.as_slice()) {
        let entry = table.get(*i)?.get(*j)?;
        if s.is_one() && t.is_one() {
            return Some(entry.clone());
        }
        let w = s * t;
        return Some(
            entry
                .iter()
                .map(|(k, c)| (*k, &w * c))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        );
    }
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, s) in x {
        for (j, t) in y {
            let w = s * t;
            for (k, c) in table.get(*i)?.get(*j)? {
                let term = &w * c;
                acc.entry(*k)
                    .and_modify(|v| *v = &*v + &term)
                    .or_insert(term);
            }
        }
    }
    Some(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

pub(crate) fn unit(k: usize, one: Scalar) -> SVec {
    vec![(k, one)]
}

pub(crate) struct SparseCat {
    pub composition: BTreeMap<(ObjId, ObjId, ObjId), STable>,
    pub tensor: BTreeMap<(ObjId, ObjId, ObjId, ObjId), STable>,
}

impl SparseCat {
    pub fn new(p: &CatPresentation) -> Self {
        SparseCat {
            composition: p
                .composition
                .iter()
                .map(|(k, t)| (*k, sparse_table(t)))
                .collect(),
            tensor: p
                .tensor_morphisms
                .iter()
                .map(|(k, t)| (*k, sparse_table(t)))
                .collect(),
        }
    }

    pub fn compose(&self, a: ObjId, b: ObjId, c: ObjId, g: &SVec, f: &SVec) -> Option<SVec> {
        bilinear(self.composition.get(&(a, b, c)), g, f)
    }

    pub fn tensor(&self, key: (ObjId, ObjId, ObjId, ObjId), f: &SVec, g: &SVec) -> Option<SVec> {
        bilinear(self.tensor.get(&key), f, g)
    }
}
