//! Band-of-bands decompositions and partitions into copies of `G`.
//!
//! A partition `{G_α}` of a groupoid is a band decomposition when every
//! product `G_α G_β` lands inside a single block; the blocks then multiply
//! like the elements of a quotient groupoid.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::constructions::{standard_g, tower_level};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::law::{check_variety, VarietySpec};
use crate::morphisms::{are_isomorphic, log4_exact};

/// Disjoint nonempty blocks covering `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(order: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; order];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Argument(format!("block {b} is empty")));
            }
            for &e in block {
                if e >= order {
                    return Err(Error::Bounds { index: e, order });
                }
                if block_of[e] != usize::MAX {
                    return Err(Error::Argument(format!("element {e} appears in two blocks")));
                }
                block_of[e] = b;
            }
        }
        if let Some(missing) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Argument(format!("element {missing} is in no block")));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn singletons(order: usize) -> Self {
        Partition::new(order, (0..order).map(|i| vec![i]).collect()).expect("valid")
    }

    /// `count` consecutive runs of equal size.
    pub fn contiguous(order: usize, count: usize) -> Result<Self> {
        if count == 0 || !order.is_multiple_of(count) {
            return Err(Error::Argument(format!(
                "cannot split {order} elements into {count} equal runs"
            )));
        }
        let size = order / count;
        Partition::new(order, (0..count).map(|b| (b * size..(b + 1) * size).collect()).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, e: usize) -> usize {
        self.block_of[e]
    }

    pub fn order(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_set(&self, b: usize) -> BTreeSet<usize> {
        self.blocks[b].iter().copied().collect()
    }
}

/// A partition whose blocks multiply into blocks, with the induced table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandDecomposition {
    pub partition: Partition,
    pub quotient: FiniteGroupoid,
}

/// Two products from the same pair of blocks that land in different blocks:
/// `u v` and `u2 v2` with `u, u2` in `left_block` and `v, v2` in `right_block`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockWitness {
    pub left_block: usize,
    pub right_block: usize,
    pub u: usize,
    pub v: usize,
    pub u2: usize,
    pub v2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BandCheck {
    Band(BandDecomposition),
    Mixed(BlockWitness),
}

impl BandCheck {
    pub fn decomposition(self) -> Option<BandDecomposition> {
        match self {
            BandCheck::Band(d) => Some(d),
            BandCheck::Mixed(_) => None,
        }
    }
}

pub fn check_band_decomposition(g: &FiniteGroupoid, p: &Partition) -> Result<BandCheck> {
    if p.order() != g.order() {
        return Err(Error::Argument(format!(
            "partition covers {} elements, groupoid has {}",
            p.order(),
            g.order()
        )));
    }
    let k = p.blocks().len();
    let mut quotient = vec![0; k * k];
    for (alpha, left) in p.blocks().iter().enumerate() {
        for (beta, right) in p.blocks().iter().enumerate() {
            let (u, v) = (left[0], right[0]);
            let target = p.block_of(g.mul(u, v));
            for &u2 in left {
                for &v2 in right {
                    if p.block_of(g.mul(u2, v2)) != target {
                        return Ok(BandCheck::Mixed(BlockWitness {
                            left_block: alpha,
                            right_block: beta,
                            u,
                            v,
                            u2,
                            v2,
                        }));
                    }
                }
            }
            quotient[alpha * k + beta] = target;
        }
    }
    let labels = (0..k).map(|b| format!("B{b}")).collect();
    Ok(BandCheck::Band(BandDecomposition {
        partition: p.clone(),
        quotient: FiniteGroupoid::from_flat(labels, quotient)?,
    }))
}

/// The four extension blocks of `G_n` (singletons for `n = 1`), verified:
/// each block is isomorphic to `G_{n-1}` and the quotient to `G`.
pub fn extension_block_decomposition(n: usize) -> Result<BandDecomposition> {
    if n == 0 {
        return Err(Error::Argument("the trivial band has no extension blocks".into()));
    }
    let g = tower_level(n);
    let partition = Partition::contiguous(g.order(), 4)?;
    let decomposition = check_band_decomposition(&g, &partition)?
        .decomposition()
        .ok_or_else(|| Error::InvariantViolation("extension blocks do not form a band".into()))?;
    let fiber = tower_level(n - 1);
    for b in 0..4 {
        let block = g.restrict(&partition.block_set(b))?;
        if !are_isomorphic(&block, &fiber) {
            return Err(Error::InvariantViolation(format!(
                "extension block {b} of G_{n} is not isomorphic to G_{}",
                n - 1
            )));
        }
    }
    if !are_isomorphic(&decomposition.quotient, &standard_g()) {
        return Err(Error::InvariantViolation("quotient is not isomorphic to G".into()));
    }
    Ok(decomposition)
}

fn require_aragb(g: &FiniteGroupoid) -> Result<()> {
    let report = check_variety(g, &VarietySpec::aragb());
    if let Some(bad) = report.failures().next() {
        return Err(Error::Precondition(format!(
            "groupoid is not an anti-rectangular AG-band: {} fails",
            bad.identity
        )));
    }
    Ok(())
}

/// `⟨c, d⟩` when it is a four-element copy of `G`.
fn g_copy(g: &FiniteGroupoid, c: usize, d: usize, base: &FiniteGroupoid) -> Option<BTreeSet<usize>> {
    let span = g.generated_subgroupoid(&[c, d]).ok()?;
    (span.len() == 4 && are_isomorphic(&g.restrict(&span).ok()?, base)).then_some(span)
}

/// Splits an anti-rectangular AG-band of order `4^n` into `4^(n-1)` disjoint
/// copies of `G`.
///
/// Least-index greedy: take the least unused `c`, then the least `d` whose
/// `⟨c, d⟩` avoids every used element, backtracking on dead ends.
pub fn g_copy_partition(g: &FiniteGroupoid) -> Result<Partition> {
    let n = g.order();
    if !log4_exact(n).is_some_and(|l| l >= 1) {
        return Err(Error::Argument(format!("order {n} is not a positive power of 4")));
    }
    require_aragb(g)?;
    let base = standard_g();
    let mut used = vec![false; n];
    let mut blocks = Vec::new();
    if fill_copies(g, &base, &mut used, &mut blocks) {
        Partition::new(n, blocks)
    } else {
        Err(Error::InvariantViolation(
            "no partition into copies of G exists".into(),
        ))
    }
}

fn fill_copies(
    g: &FiniteGroupoid,
    base: &FiniteGroupoid,
    used: &mut [bool],
    blocks: &mut Vec<Vec<usize>>,
) -> bool {
    let Some(c) = used.iter().position(|&u| !u) else {
        return true;
    };
    let mut tried = BTreeSet::new();
    for d in 0..g.order() {
        if d == c || used[d] {
            continue;
        }
        let Some(copy) = g_copy(g, c, d, base) else { continue };
        if copy.iter().any(|&e| used[e]) || !tried.insert(copy.clone()) {
            continue;
        }
        for &e in &copy {
            used[e] = true;
        }
        blocks.push(copy.iter().copied().collect());
        if fill_copies(g, base, used, blocks) {
            return true;
        }
        blocks.pop();
        for &e in &copy {
            used[e] = false;
        }
    }
    false
}

/// Largest order [`copy_intersection_audit`] accepts.
pub const AUDIT_MAX_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopyAudit {
    /// Unordered pairs `{c, d}` generating a copy of `G`.
    pub generating_pairs: usize,
    /// Distinct copies of `G`.
    pub copies: usize,
    /// `|A ∩ B|` over unordered pairs of distinct copies.
    pub intersection_sizes: BTreeMap<usize, usize>,
    /// Every pair of copies is equal, disjoint or meets in one element.
    pub trichotomy_holds: bool,
}

/// Enumerates every copy of `G` generated by two elements and tabulates how
/// distinct copies intersect.
pub fn copy_intersection_audit(g: &FiniteGroupoid) -> Result<CopyAudit> {
    if g.order() > AUDIT_MAX_ORDER {
        return Err(Error::Resource(format!(
            "audit compares all pairs of copies; supported up to order {AUDIT_MAX_ORDER}"
        )));
    }
    require_aragb(g)?;
    let base = standard_g();
    let n = g.order();
    let mut generating_pairs = 0;
    let mut copies = BTreeSet::new();
    for c in 0..n {
        for d in c + 1..n {
            if let Some(copy) = g_copy(g, c, d, &base) {
                generating_pairs += 1;
                copies.insert(copy);
            }
        }
    }
    let copies: Vec<BTreeSet<usize>> = copies.into_iter().collect();
    let mut intersection_sizes = BTreeMap::new();
    for (i, a) in copies.iter().enumerate() {
        for b in &copies[i + 1..] {
            *intersection_sizes.entry(a.intersection(b).count()).or_insert(0) += 1;
        }
    }
    let trichotomy_holds = intersection_sizes.keys().all(|s| matches!(s, 0 | 1 | 4));
    Ok(CopyAudit {
        generating_pairs,
        copies: copies.len(),
        intersection_sizes,
        trichotomy_holds,
    })
}
