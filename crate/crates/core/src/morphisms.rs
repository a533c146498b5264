//! Isomorphisms, anti-isomorphisms and the searches that find them.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::constructions::tower_level;
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::law::{satisfies, VarietySpec};

/// Largest order [`classify_all_bijections`] will enumerate.
pub const CENSUS_MAX_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MappingKind {
    Iso,
    AntiIso,
    Neither,
    Unverified,
}

/// A map between index sets; `images[i]` is the image of source element `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mapping {
    pub source_order: usize,
    pub target_order: usize,
    pub images: Vec<usize>,
    pub kind: MappingKind,
}

impl Mapping {
    pub fn unverified(images: Vec<usize>, target_order: usize) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&v| v >= target_order) {
            return Err(Error::Bounds {
                index: bad,
                order: target_order,
            });
        }
        Ok(Mapping {
            source_order: images.len(),
            target_order,
            images,
            kind: MappingKind::Unverified,
        })
    }

    /// Builds the mapping and stamps it with its classified kind.
    pub fn verified(images: Vec<usize>, src: &FiniteGroupoid, dst: &FiniteGroupoid) -> Result<Self> {
        let mut m = Mapping::unverified(images, dst.order())?;
        m.kind = classify_mapping(&m, src, dst)?;
        Ok(m)
    }

    pub fn identity(order: usize) -> Self {
        Mapping {
            source_order: order,
            target_order: order,
            images: (0..order).collect(),
            kind: MappingKind::Unverified,
        }
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_order != self.target_order {
            return false;
        }
        let mut seen = vec![false; self.target_order];
        self.images
            .iter()
            .all(|&v| v < self.target_order && !std::mem::replace(&mut seen[v], true))
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Mapping) -> Result<Mapping> {
        if self.target_order != other.source_order {
            return Err(Error::Argument("mappings do not compose".into()));
        }
        Mapping::unverified(
            self.images.iter().map(|&i| other.images[i]).collect(),
            other.target_order,
        )
    }

    pub fn inverse(&self) -> Result<Mapping> {
        if !self.is_bijective() {
            return Err(Error::Argument("only bijections have inverses".into()));
        }
        let mut inv = vec![0; self.source_order];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Mapping::unverified(inv, self.source_order)
    }
}

pub fn is_homomorphism(images: &[usize], src: &FiniteGroupoid, dst: &FiniteGroupoid) -> bool {
    let n = src.order();
    (0..n).all(|i| (0..n).all(|j| images[src.mul(i, j)] == dst.mul(images[i], images[j])))
}

pub fn is_anti_homomorphism(images: &[usize], src: &FiniteGroupoid, dst: &FiniteGroupoid) -> bool {
    let n = src.order();
    (0..n).all(|i| (0..n).all(|j| images[src.mul(i, j)] == dst.mul(images[j], images[i])))
}

/// ISO if `f` preserves products, ANTI_ISO if it reverses them, NEITHER
/// otherwise. A map that does both (commutative case) is reported as ISO.
pub fn classify_mapping(f: &Mapping, src: &FiniteGroupoid, dst: &FiniteGroupoid) -> Result<MappingKind> {
    if src.order() != dst.order() || f.source_order != src.order() || f.target_order != dst.order() {
        return Err(Error::Argument(format!(
            "mapping of shape {}->{} does not fit groupoids of orders {} and {}",
            f.source_order,
            f.target_order,
            src.order(),
            dst.order()
        )));
    }
    if !f.is_bijective() {
        return Err(Error::Argument("mapping is not a bijection".into()));
    }
    Ok(if is_homomorphism(&f.images, src, dst) {
        MappingKind::Iso
    } else if is_anti_homomorphism(&f.images, src, dst) {
        MappingKind::AntiIso
    } else {
        MappingKind::Neither
    })
}

/// Cycle lengths of a permutation, longest first.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub iso: usize,
    pub anti_iso: usize,
    pub neither: usize,
}

impl KindCounts {
    fn add(&mut self, kind: MappingKind) {
        match kind {
            MappingKind::Iso => self.iso += 1,
            MappingKind::AntiIso => self.anti_iso += 1,
            _ => self.neither += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.iso + self.anti_iso + self.neither
    }
}

/// Tally of every self-bijection of a groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionCensus {
    pub order: usize,
    pub totals: KindCounts,
    /// Keyed by cycle type, longest cycle first.
    #[serde(serialize_with = "cycle_rows")]
    pub by_cycle_type: BTreeMap<Vec<usize>, KindCounts>,
}

fn cycle_rows<S: serde::Serializer>(
    map: &BTreeMap<Vec<usize>, KindCounts>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Row<'a> {
        cycle_type: &'a [usize],
        #[serde(flatten)]
        counts: &'a KindCounts,
    }
    s.collect_seq(map.iter().map(|(ty, counts)| Row { cycle_type: ty, counts }))
}

impl BijectionCensus {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{} bijections: {} ISO, {} ANTI_ISO, {} NEITHER\n",
            self.totals.total(),
            self.totals.iso,
            self.totals.anti_iso,
            self.totals.neither
        );
        out.push_str("cycle type    count  ISO  ANTI_ISO  NEITHER\n");
        for (ty, c) in self.by_cycle_type.iter().rev() {
            let ty = ty.iter().map(ToString::to_string).join(",");
            out.push_str(&format!(
                "{:<12} {:>6} {:>4} {:>9} {:>8}\n",
                format!("({ty})"),
                c.total(),
                c.iso,
                c.anti_iso,
                c.neither
            ));
        }
        out
    }
}

pub fn classify_all_bijections(g: &FiniteGroupoid) -> Result<BijectionCensus> {
    let n = g.order();
    if n > CENSUS_MAX_ORDER {
        return Err(Error::Resource(format!(
            "census enumerates {n}! bijections; supported up to order {CENSUS_MAX_ORDER}"
        )));
    }
    let mut census = BijectionCensus {
        order: n,
        totals: KindCounts::default(),
        by_cycle_type: BTreeMap::new(),
    };
    for perm in (0..n).permutations(n) {
        let kind = if is_homomorphism(&perm, g, g) {
            MappingKind::Iso
        } else if is_anti_homomorphism(&perm, g, g) {
            MappingKind::AntiIso
        } else {
            MappingKind::Neither
        };
        census.totals.add(kind);
        census.by_cycle_type.entry(cycle_type(&perm)).or_default().add(kind);
    }
    Ok(census)
}

/// Per-element data every isomorphism must preserve.
fn signatures(g: &FiniteGroupoid) -> Vec<(usize, usize, bool)> {
    let n = g.order();
    (0..n)
        .map(|i| {
            let row_fixed = (0..n).filter(|&j| g.mul(i, j) == j).count();
            let col_fixed = (0..n).filter(|&j| g.mul(j, i) == j).count();
            (row_fixed, col_fixed, g.mul(i, i) == i)
        })
        .collect()
}

const UNSET: usize = usize::MAX;

/// Backtracking over partial images with product propagation: once `u` and
/// `w` have images, `uw` must map to `φ(u)φ(w)`.
struct IsoSearch<'a> {
    src: &'a FiniteGroupoid,
    dst: &'a FiniteGroupoid,
    src_sig: Vec<(usize, usize, bool)>,
    dst_sig: Vec<(usize, usize, bool)>,
    image: Vec<usize>,
    preimage: Vec<usize>,
    assigned: Vec<usize>,
}

impl<'a> IsoSearch<'a> {
    fn new(src: &'a FiniteGroupoid, dst: &'a FiniteGroupoid) -> Option<Self> {
        if src.order() != dst.order() {
            return None;
        }
        let src_sig = signatures(src);
        let dst_sig = signatures(dst);
        if src_sig.iter().sorted().ne(dst_sig.iter().sorted()) {
            return None;
        }
        let n = src.order();
        Some(IsoSearch {
            src,
            dst,
            src_sig,
            dst_sig,
            image: vec![UNSET; n],
            preimage: vec![UNSET; n],
            assigned: Vec::with_capacity(n),
        })
    }

    /// Assigns `u -> v` and everything it forces. On conflict the partial
    /// state is left for the caller to undo.
    fn assign(&mut self, u: usize, v: usize) -> bool {
        let mut queue = vec![(u, v)];
        while let Some((u, v)) = queue.pop() {
            if self.image[u] != UNSET {
                if self.image[u] != v {
                    return false;
                }
                continue;
            }
            if self.preimage[v] != UNSET || self.src_sig[u] != self.dst_sig[v] {
                return false;
            }
            self.image[u] = v;
            self.preimage[v] = u;
            self.assigned.push(u);
            for k in 0..self.assigned.len() {
                let w = self.assigned[k];
                let iw = self.image[w];
                queue.push((self.src.mul(u, w), self.dst.mul(v, iw)));
                queue.push((self.src.mul(w, u), self.dst.mul(iw, v)));
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let u = self.assigned.pop().expect("nonempty");
            self.preimage[self.image[u]] = UNSET;
            self.image[u] = UNSET;
        }
    }

    fn solve(&mut self) -> bool {
        let Some(u) = (0..self.image.len()).find(|&u| self.image[u] == UNSET) else {
            return true;
        };
        for v in 0..self.image.len() {
            if self.preimage[v] != UNSET || self.src_sig[u] != self.dst_sig[v] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(u, v) && self.solve() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Finds the lexicographically least isomorphism `src -> dst` (or
/// anti-isomorphism when `anti` is set), re-verified before it is returned.
pub fn iso_search(src: &FiniteGroupoid, dst: &FiniteGroupoid, anti: bool) -> Option<Mapping> {
    // An anti-isomorphism into dst is an isomorphism into its opposite.
    let opposite;
    let target = if anti {
        opposite = dst.opposite();
        &opposite
    } else {
        dst
    };
    let mut search = IsoSearch::new(src, target)?;
    if !search.solve() {
        return None;
    }
    let images = search.image;
    let ok = if anti {
        is_anti_homomorphism(&images, src, dst)
    } else {
        is_homomorphism(&images, src, dst)
    };
    assert!(ok, "iso_search produced an unverifiable mapping");
    Some(Mapping {
        source_order: src.order(),
        target_order: dst.order(),
        images,
        kind: if anti {
            MappingKind::AntiIso
        } else {
            MappingKind::Iso
        },
    })
}

pub fn are_isomorphic(a: &FiniteGroupoid, b: &FiniteGroupoid) -> bool {
    iso_search(a, b, false).is_some()
}

/// Turns an anti-isomorphism between anti-rectangular AG-bands into an
/// isomorphism.
///
/// At order 4 the isomorphism is built directly: with `c = 0`, `d = 1`, keep
/// the images of `c` and `d` and swap those of `cd` and `dc`. Otherwise an
/// isomorphism is searched for; not finding one is an invariant violation.
pub fn anti_to_iso(phi: &Mapping, src: &FiniteGroupoid, dst: &FiniteGroupoid) -> Result<Mapping> {
    if src.order() != dst.order() || phi.source_order != src.order() || !phi.is_bijective() {
        return Err(Error::Argument("expected a bijection between equal orders".into()));
    }
    if !is_anti_homomorphism(&phi.images, src, dst) {
        return Err(Error::Argument("mapping is not an anti-isomorphism".into()));
    }
    if is_homomorphism(&phi.images, src, dst) {
        return Ok(Mapping {
            kind: MappingKind::Iso,
            ..phi.clone()
        });
    }
    if !satisfies(src, &VarietySpec::aragb()) {
        return Err(Error::Precondition(
            "source must be an anti-rectangular AG-band".into(),
        ));
    }
    if src.order() == 4 {
        let (c, d) = (0, 1);
        let (cd, dc) = (src.mul(c, d), src.mul(d, c));
        let mut images = vec![UNSET; 4];
        images[c] = phi.images[c];
        images[d] = phi.images[d];
        images[cd] = phi.images[dc];
        images[dc] = phi.images[cd];
        if !images.contains(&UNSET) {
            let m = Mapping::verified(images, src, dst)?;
            if m.kind == MappingKind::Iso {
                return Ok(m);
            }
        }
    }
    iso_search(src, dst, false).ok_or_else(|| {
        Error::InvariantViolation(
            "anti-isomorphic anti-rectangular AG-bands must be isomorphic, but no isomorphism exists"
                .into(),
        )
    })
}

/// `log_4(n)` when `n` is a positive power of four.
pub fn log4_exact(n: usize) -> Option<usize> {
    (n.is_power_of_two() && n.trailing_zeros().is_multiple_of(2)).then(|| n.trailing_zeros() as usize / 2)
}

/// The isomorphism from an anti-rectangular AG-band `k` of order `4^n` onto
/// `G_n`, grown one extension at a time along `enumeration`.
///
/// `y1, y2` are the first two enumerated elements and `⟨y1, y2⟩` maps onto
/// `G` by `y1 -> a, y2 -> b, y1y2 -> ab, y2y1 -> ba`. Each later stage takes
/// the first enumerated element `y` outside the current sub-band `K` and maps
/// `yk -> x(Φk)`, `ky -> (Φk)x`, `(y1 y)k -> (ax)(Φk)`, where `x` is the
/// generator adjoined at that level.
pub fn canonical_iso(k: &FiniteGroupoid, enumeration: &[usize]) -> Result<Mapping> {
    let n = k.order();
    let levels = log4_exact(n)
        .filter(|&l| l >= 1)
        .ok_or_else(|| Error::Argument(format!("order {n} is not a positive power of 4")))?;
    if enumeration.len() != n || !enumeration.iter().all_unique() || enumeration.iter().any(|&e| e >= n) {
        return Err(Error::Argument(
            "enumeration must list every element exactly once".into(),
        ));
    }
    let report = crate::law::check_variety(k, &VarietySpec::aragb());
    if let Some(bad) = report.failures().next() {
        return Err(Error::Precondition(format!(
            "groupoid is not an anti-rectangular AG-band: {} fails",
            bad.identity
        )));
    }

    let mut image = vec![UNSET; n];
    let mut members: Vec<usize> = Vec::with_capacity(n);
    let place = |image: &mut Vec<usize>, members: &mut Vec<usize>, elem: usize, target: usize| {
        if image[elem] != UNSET {
            return Err(Error::InvariantViolation(format!(
                "element {elem} reached twice; the sub-band did not quadruple"
            )));
        }
        image[elem] = target;
        members.push(elem);
        Ok(())
    };

    let (y1, y2) = (enumeration[0], enumeration[1]);
    for (elem, target) in [(y1, 0), (y2, 1), (k.mul(y1, y2), 2), (k.mul(y2, y1), 3)] {
        place(&mut image, &mut members, elem, target)?;
    }
    for level in 1..levels {
        let size = 1usize << (2 * level);
        let y = *enumeration
            .iter()
            .find(|&&e| image[e] == UNSET)
            .expect("sub-band smaller than k");
        let y1y = k.mul(y1, y);
        let current = members.clone();
        for &m in &current {
            let phi = image[m];
            place(&mut image, &mut members, k.mul(y, m), size + phi)?;
            place(&mut image, &mut members, k.mul(m, y), 2 * size + phi)?;
            place(&mut image, &mut members, k.mul(y1y, m), 3 * size + phi)?;
        }
    }

    let target = tower_level(levels);
    let m = Mapping::verified(image, k, &target)?;
    if m.kind != MappingKind::Iso {
        return Err(Error::InvariantViolation(format!(
            "inductive mapping classified as {:?}, not an isomorphism",
            m.kind
        )));
    }
    Ok(m)
}
