//! Finite groupoids stored as Cayley tables.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order for which [`FiniteGroupoid::canonical_table`] will enumerate
/// all relabelings.
pub const CANONICAL_MAX_ORDER: usize = 8;

/// A finite magma: `order` elements and a full multiplication table.
///
/// `table[i * order + j]` is the index of the product of element `i` (left
/// factor) by element `j`. Labels are only for display and I/O; every
/// algorithm works on indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroupoid {
    order: usize,
    labels: Vec<String>,
    table: Vec<usize>,
}

/// Outcome of [`FiniteGroupoid::is_cancellative`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationReport {
    pub left: bool,
    pub right: bool,
    /// `(x, a, b)` with `a != b` and `x*a == x*b`.
    pub left_witness: Option<(usize, usize, usize)>,
    /// `(a, b, x)` with `a != b` and `a*x == b*x`.
    pub right_witness: Option<(usize, usize, usize)>,
}

impl CancellationReport {
    pub fn both(&self) -> bool {
        self.left && self.right
    }
}

pub fn default_labels(order: usize) -> Vec<String> {
    (0..order).map(|i| format!("e{i}")).collect()
}

impl FiniteGroupoid {
    /// Builds a groupoid from row-major rows, checking every invariant.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::Argument(format!(
                "table must be square; expected {order} entries in every row"
            )));
        }
        Self::from_flat(labels, rows.into_iter().flatten().collect())
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let labels = default_labels(rows.len());
        Self::new(labels, rows)
    }

    /// Builds a groupoid from a flat row-major table.
    pub fn from_flat(labels: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let order = labels.len();
        if order == 0 {
            return Err(Error::Argument("order must be at least 1".into()));
        }
        if table.len() != order * order {
            return Err(Error::Argument(format!(
                "table has {} cells, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::Bounds { index: bad, order });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(Error::Argument("labels must be non-empty".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::Argument(format!("duplicate label {l:?}")));
            }
        }
        Ok(FiniteGroupoid {
            order,
            labels,
            table,
        })
    }

    /// The one-element groupoid.
    pub fn trivial(label: &str) -> Self {
        FiniteGroupoid {
            order: 1,
            labels: vec![label.to_string()],
            table: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Flat row-major table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.table[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Unchecked product; panics on out-of-range indices.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    pub fn product(&self, i: usize, j: usize) -> Result<usize> {
        for idx in [i, j] {
            if idx >= self.order {
                return Err(Error::Bounds {
                    index: idx,
                    order: self.order,
                });
            }
        }
        Ok(self.mul(i, j))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::Argument(format!(
                "expected {} labels, got {}",
                self.order,
                labels.len()
            )));
        }
        let table = std::mem::take(&mut self.table);
        Self::from_flat(labels, table)
    }

    /// The transposed table: `x ∘ y = y * x`.
    pub fn opposite(&self) -> Self {
        let n = self.order;
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.mul(j, i);
            }
        }
        FiniteGroupoid {
            order: n,
            labels: self.labels.clone(),
            table,
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.order {
            Ok(())
        } else {
            Err(Error::Bounds {
                index: i,
                order: self.order,
            })
        }
    }

    /// Least subset containing `seeds` and closed under the product.
    pub fn generated_subgroupoid(&self, seeds: &[usize]) -> Result<BTreeSet<usize>> {
        if seeds.is_empty() {
            return Err(Error::Argument("seed set must be nonempty".into()));
        }
        for &s in seeds {
            self.check_index(s)?;
        }
        let mut members = vec![false; self.order];
        let mut elems: Vec<usize> = Vec::new();
        for &s in seeds {
            if !members[s] {
                members[s] = true;
                elems.push(s);
            }
        }
        // Worklist: every new element is multiplied against everything known.
        let mut next = 0;
        while next < elems.len() {
            let u = elems[next];
            next += 1;
            let mut k = 0;
            while k < elems.len() {
                let v = elems[k];
                k += 1;
                for p in [self.mul(u, v), self.mul(v, u)] {
                    if !members[p] {
                        members[p] = true;
                        elems.push(p);
                    }
                }
            }
        }
        Ok(elems.into_iter().collect())
    }

    pub fn is_cancellative(&self) -> CancellationReport {
        let n = self.order;
        let mut left_witness = None;
        'rows: for x in 0..n {
            let mut seen = vec![usize::MAX; n];
            for a in 0..n {
                let p = self.mul(x, a);
                if seen[p] != usize::MAX {
                    left_witness = Some((x, seen[p], a));
                    break 'rows;
                }
                seen[p] = a;
            }
        }
        let mut right_witness = None;
        'cols: for x in 0..n {
            let mut seen = vec![usize::MAX; n];
            for a in 0..n {
                let p = self.mul(a, x);
                if seen[p] != usize::MAX {
                    right_witness = Some((seen[p], a, x));
                    break 'cols;
                }
                seen[p] = a;
            }
        }
        CancellationReport {
            left: left_witness.is_none(),
            right: right_witness.is_none(),
            left_witness,
            right_witness,
        }
    }

    /// Materializes a closed subset as a groupoid, keeping the ascending
    /// order of the chosen indices and their labels.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> Result<Self> {
        if subset.is_empty() {
            return Err(Error::Argument("subset must be nonempty".into()));
        }
        let mut position = vec![usize::MAX; self.order];
        for (k, &i) in subset.iter().enumerate() {
            self.check_index(i)?;
            position[i] = k;
        }
        let m = subset.len();
        let mut table = Vec::with_capacity(m * m);
        for &i in subset {
            for &j in subset {
                let p = self.mul(i, j);
                if position[p] == usize::MAX {
                    return Err(Error::Closure {
                        left: i,
                        right: j,
                        product: p,
                    });
                }
                table.push(position[p]);
            }
        }
        let labels = subset.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_flat(labels, table)
    }

    /// Transports the structure along `perm`: old element `i` becomes new
    /// element `perm[i]`. Labels travel with their elements.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        if perm.len() != n || perm.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::Argument("relabeling must be a permutation".into()));
        }
        if let Some(&bad) = perm.iter().find(|&&p| p >= n) {
            return Err(Error::Bounds {
                index: bad,
                order: n,
            });
        }
        let mut table = vec![0; n * n];
        let mut labels = vec![String::new(); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            for j in 0..n {
                table[perm[i] * n + perm[j]] = perm[self.mul(i, j)];
            }
        }
        Ok(FiniteGroupoid {
            order: n,
            labels,
            table,
        })
    }

    /// The lexicographically least row-major table over all relabelings.
    ///
    /// Brute force over `order!` permutations, so only available up to
    /// [`CANONICAL_MAX_ORDER`].
    pub fn canonical_table(&self) -> Result<Vec<usize>> {
        canonical_table_of(self.order, &self.table)
    }

    /// This groupoid relabeled into canonical form, with default labels.
    pub fn canonical(&self) -> Result<Self> {
        let table = self.canonical_table()?;
        Self::from_flat(default_labels(self.order), table)
    }

    pub fn to_document(&self) -> CayleyDocument {
        CayleyDocument {
            order: self.order,
            labels: self.labels.clone(),
            table: self.rows(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let doc: CayleyDocument = serde_json::from_str(src)?;
        doc.try_into()
    }

    /// Whitespace-aligned table with a header row and column, in the style
    /// of a printed Cayley table.
    pub fn render_text(&self, corner: &str) -> String {
        let width = self
            .labels
            .iter()
            .map(String::len)
            .chain(std::iter::once(corner.len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        let _ = write!(out, "{corner:<width$}");
        for l in &self.labels {
            let _ = write!(out, " {l:>width$}");
        }
        out.push('\n');
        for i in 0..self.order {
            let _ = write!(out, "{:<width$}", self.labels[i]);
            for &p in self.row(i) {
                let _ = write!(out, " {:>width$}", self.labels[p]);
            }
            out.push('\n');
        }
        out
    }
}

/// Canonical form of a raw row-major table; shared with code that works on
/// bare tables.
pub fn canonical_table_of(order: usize, table: &[usize]) -> Result<Vec<usize>> {
    if order > CANONICAL_MAX_ORDER {
        return Err(Error::Resource(format!(
            "canonical form enumerates {order}! relabelings; supported up to order {CANONICAL_MAX_ORDER}"
        )));
    }
    let n = order;
    let mut best: Vec<usize> = table.to_vec();
    let mut inverse = vec![0; n];
    // `pre[k]` is the old element that becomes new element `k`.
    for pre in (0..n).permutations(n) {
        for (k, &old) in pre.iter().enumerate() {
            inverse[old] = k;
        }
        let mut ord = std::cmp::Ordering::Equal;
        'cells: for r in 0..n {
            for c in 0..n {
                let v = inverse[table[pre[r] * n + pre[c]]];
                let b = best[r * n + c];
                if v != b {
                    ord = v.cmp(&b);
                    break 'cells;
                }
            }
        }
        if ord == std::cmp::Ordering::Less {
            for r in 0..n {
                for c in 0..n {
                    best[r * n + c] = inverse[table[pre[r] * n + pre[c]]];
                }
            }
        }
    }
    Ok(best)
}

/// On-disk form: `{"order": n, "labels": [...], "table": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CayleyDocument {
    pub order: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl TryFrom<CayleyDocument> for FiniteGroupoid {
    type Error = Error;

    fn try_from(doc: CayleyDocument) -> Result<Self> {
        if doc.table.len() != doc.order {
            return Err(Error::Argument(format!(
                "declared order {} but table has {} rows",
                doc.order,
                doc.table.len()
            )));
        }
        let labels = if doc.labels.is_empty() {
            default_labels(doc.order)
        } else {
            doc.labels
        };
        if labels.len() != doc.order {
            return Err(Error::Argument(format!(
                "declared order {} but {} labels",
                doc.order,
                labels.len()
            )));
        }
        FiniteGroupoid::new(labels, doc.table)
    }
}

impl Serialize for FiniteGroupoid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroupoid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = CayleyDocument::deserialize(d)?;
        doc.try_into().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> FiniteGroupoid {
        FiniteGroupoid::new(
            ["a", "b", "ab", "ba"].map(String::from).to_vec(),
            vec![
                vec![0, 2, 3, 1],
                vec![3, 1, 0, 2],
                vec![1, 3, 2, 0],
                vec![2, 0, 1, 3],
            ],
        )
        .unwrap()
    }

    fn left_zero() -> FiniteGroupoid {
        FiniteGroupoid::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    #[test]
    fn product_lookups() {
        let g = g();
        assert_eq!(g.product(0, 1).unwrap(), 2);
        assert_eq!(g.product(2, 0).unwrap(), 1);
        for i in 0..4 {
            assert_eq!(g.product(i, i).unwrap(), i);
        }
        assert!(matches!(g.product(4, 0), Err(Error::Bounds { index: 4, .. })));
    }

    #[test]
    fn construction_rejects_bad_tables() {
        assert!(FiniteGroupoid::from_rows(vec![vec![0, 2], vec![1, 1]]).is_err());
        assert!(FiniteGroupoid::from_rows(vec![vec![0, 1]]).is_err());
        assert!(FiniteGroupoid::from_rows(vec![]).is_err());
        let dup = FiniteGroupoid::new(vec!["a".into(), "a".into()], vec![vec![0, 0], vec![1, 1]]);
        assert!(dup.is_err());
    }

    #[test]
    fn opposite_is_transpose() {
        let g = g();
        let op = g.opposite();
        assert_eq!(op.mul(0, 1), 3);
        assert_eq!(op.opposite(), g);
        let semilattice = FiniteGroupoid::from_rows(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(semilattice.opposite(), semilattice);
    }

    #[test]
    fn generated_subgroupoids() {
        let g = g();
        assert_eq!(g.generated_subgroupoid(&[0, 1]).unwrap().len(), 4);
        for i in 0..4 {
            assert_eq!(g.generated_subgroupoid(&[i]).unwrap(), BTreeSet::from([i]));
        }
        assert!(g.generated_subgroupoid(&[]).is_err());
        assert!(g.generated_subgroupoid(&[7]).is_err());
    }

    #[test]
    fn cancellativity() {
        let g = g();
        assert!(g.is_cancellative().both());
        let r = left_zero().is_cancellative();
        assert!(!r.left);
        assert_eq!(r.left_witness, Some((0, 0, 1)));
        assert!(r.right);
    }

    #[test]
    fn restrict_closed_and_open_subsets() {
        let g = g();
        let all: BTreeSet<usize> = (0..4).collect();
        assert_eq!(g.restrict(&all).unwrap(), g);
        let err = g.restrict(&BTreeSet::from([0, 1])).unwrap_err();
        assert!(matches!(
            err,
            Error::Closure {
                left: 0,
                right: 1,
                product: 2
            }
        ));
    }

    #[test]
    fn relabel_and_canonical_form() {
        let g = g();
        let shuffled = g.relabel(&[2, 0, 3, 1]).unwrap();
        assert_ne!(shuffled.table(), g.table());
        assert_eq!(shuffled.canonical_table().unwrap(), g.canonical_table().unwrap());
        assert_eq!(shuffled.label(2), "a");
        let big = FiniteGroupoid::from_flat(default_labels(9), vec![0; 81]).unwrap();
        assert!(matches!(big.canonical_table(), Err(Error::Resource(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = g();
        let back = FiniteGroupoid::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let no_labels = FiniteGroupoid::from_json(r#"{"order":1,"table":[[0]]}"#).unwrap();
        assert_eq!(no_labels.label(0), "e0");
        assert!(FiniteGroupoid::from_json(r#"{"order":2,"table":[[0]]}"#).is_err());
    }

    #[test]
    fn text_rendering() {
        let text = g().render_text("G");
        let first = text.lines().nth(1).unwrap();
        assert_eq!(first.split_whitespace().collect::<Vec<_>>(), ["a", "a", "ab", "ba", "b"]);
    }
}
