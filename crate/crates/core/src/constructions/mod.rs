//! The concrete groupoids: the base band `G`, the order-quadrupling
//! extension, the tower `G_n`, finite pieces of the countable band and the
//! 16-element band of copies of `G` that is not itself anti-rectangular.

mod gbar;
mod limit;

use std::collections::BTreeSet;

use serde::Serialize;

pub use gbar::{gbar_derived, gbar_table3, GbarBlock, GbarScaffold, GBAR_LABELS};
pub use limit::{limit_level, limit_product, product_at_level};

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::law::{check_variety, VarietySpec};

/// Index of `a` in [`standard_g`] and in every tower level.
pub const A: usize = 0;

/// The order-4 anti-rectangular AG-band on `a, b, ab, ba` (indices 0..4).
pub fn standard_g() -> FiniteGroupoid {
    FiniteGroupoid::new(
        ["a", "b", "ab", "ba"].map(String::from).to_vec(),
        vec![
            vec![0, 2, 3, 1],
            vec![3, 1, 0, 2],
            vec![1, 3, 2, 0],
            vec![2, 0, 1, 3],
        ],
    )
    .expect("static table")
}

/// The four blocks of an extension `H ∪ xH ∪ Hx ∪ (ax)H`, in index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Block {
    Base,
    XLeft,
    XRight,
    Ax,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::Base, Block::XLeft, Block::XRight, Block::Ax];

    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn from_ordinal(k: usize) -> Option<Block> {
        Block::ALL.get(k).copied()
    }
}

/// Product of `(row_block, h) * (col_block, hb)` in the extension of `H` by
/// a new element `x`, where `mul` is the product of `H` and `a` the
/// designated element of the embedded copy of `G`.
///
/// Returns the block and the `H`-component of the product.
pub fn extension_product(
    row_block: Block,
    h: usize,
    col_block: Block,
    hb: usize,
    a: usize,
    mut mul: impl FnMut(usize, usize) -> usize,
) -> (Block, usize) {
    use Block::*;
    match (row_block, col_block) {
        // h . hb = h hb
        (Base, Base) => (Base, mul(h, hb)),
        // h . (x hb) = (ax)[(hb a) h]
        (Base, XLeft) => {
            let t = mul(hb, a);
            (Ax, mul(t, h))
        }
        // h . (hb x) = x (hb h)
        (Base, XRight) => (XLeft, mul(hb, h)),
        // h . (ax)hb = [(h hb)(a h)] x
        (Base, Ax) => {
            let l = mul(h, hb);
            let r = mul(a, h);
            (XRight, mul(l, r))
        }
        // (xh) . hb = (hb h) x
        (XLeft, Base) => (XRight, mul(hb, h)),
        // (xh) . (x hb) = x (h hb)
        (XLeft, XLeft) => (XLeft, mul(h, hb)),
        // (xh) . (hb x) = (ax)[hb (a h)]
        (XLeft, XRight) => {
            let t = mul(a, h);
            (Ax, mul(hb, t))
        }
        // (xh) . (ax)hb = a (h hb)
        (XLeft, Ax) => {
            let t = mul(h, hb);
            (Base, mul(a, t))
        }
        // (hx) . hb = (ax)[(h a)(hb h)]
        (XRight, Base) => {
            let l = mul(h, a);
            let r = mul(hb, h);
            (Ax, mul(l, r))
        }
        // (hx) . (x hb) = hb h
        (XRight, XLeft) => (Base, mul(hb, h)),
        // (hx) . (hb x) = (h hb) x
        (XRight, XRight) => (XRight, mul(h, hb)),
        // (hx) . (ax)hb = x [(a h) hb]
        (XRight, Ax) => {
            let t = mul(a, h);
            (XLeft, mul(t, hb))
        }
        // (ax)h . hb = x [h (hb a)]
        (Ax, Base) => {
            let t = mul(hb, a);
            (XLeft, mul(h, t))
        }
        // (ax)h . (x hb) = [(h hb) a] x
        (Ax, XLeft) => {
            let t = mul(h, hb);
            (XRight, mul(t, a))
        }
        // (ax)h . (hb x) = (a h)(hb a)
        (Ax, XRight) => {
            let l = mul(a, h);
            let r = mul(hb, a);
            (Base, mul(l, r))
        }
        // (ax)h . (ax)hb = (ax)(h hb)
        (Ax, Ax) => (Ax, mul(h, hb)),
    }
}

fn wrap(label: &str) -> String {
    if label.contains('*') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// The extension of `h` by a new element `x`.
///
/// Elements are laid out in blocks `[H, xH, Hx, (ax)H]`: block `b`, inner
/// index `i` becomes `b * |h| + i`, so `h` survives as the top-left corner.
/// The element `x` itself is `(ax)a`, the `Ax`-block element over `a`, and
/// carries the bare `x_label`.
pub fn extend(h: &FiniteGroupoid, a: usize, x_label: &str) -> Result<FiniteGroupoid> {
    let n = h.order();
    if n < 4 {
        return Err(Error::Argument(format!(
            "extension needs an embedded copy of G; order {n} is too small"
        )));
    }
    if a >= n {
        return Err(Error::Bounds { index: a, order: n });
    }
    if x_label.is_empty() || h.index_of(x_label).is_some() {
        return Err(Error::Argument(format!(
            "label {x_label:?} is empty or already used"
        )));
    }
    let report = check_variety(h, &VarietySpec::aragb());
    if let Some(bad) = report.failures().next() {
        return Err(Error::Precondition(format!(
            "extended groupoid must be an anti-rectangular AG-band; {} fails at {:?}",
            bad.identity, bad.counterexample
        )));
    }

    let m = 4 * n;
    let mut table = vec![0; m * m];
    for rb in Block::ALL {
        for cb in Block::ALL {
            for i in 0..n {
                for j in 0..n {
                    let (b, c) = extension_product(rb, i, cb, j, a, |u, v| h.mul(u, v));
                    table[(rb.ordinal() * n + i) * m + cb.ordinal() * n + j] = b.ordinal() * n + c;
                }
            }
        }
    }

    let a_label = wrap(h.label(a));
    let mut labels = h.labels().to_vec();
    labels.extend(h.labels().iter().map(|l| format!("{x_label}*{}", wrap(l))));
    labels.extend(h.labels().iter().map(|l| format!("{}*{x_label}", wrap(l))));
    labels.extend((0..n).map(|i| {
        if i == a {
            x_label.to_string()
        } else {
            format!("({a_label}*{x_label})*{}", wrap(h.label(i)))
        }
    }));
    FiniteGroupoid::from_flat(labels, table)
}

/// Index of the adjoined generator in `extend(h, a, _)` for `|h| = n`.
pub fn adjoined_generator(n: usize, a: usize) -> usize {
    Block::Ax.ordinal() * n + a
}

/// `[G_0, G_1, ..., G_n]`: the trivial groupoid, `G`, then repeated
/// extensions over `a = 0` with generators named `x1, x2, ...`.
pub fn tower(n: usize) -> Vec<FiniteGroupoid> {
    let mut out = vec![FiniteGroupoid::trivial("e")];
    if n >= 1 {
        out.push(standard_g());
    }
    for k in 2..=n {
        let next = extend(&out[k - 1], A, &format!("x{}", k - 1))
            .expect("every tower level is an anti-rectangular AG-band");
        out.push(next);
    }
    out
}

/// Top level of [`tower`].
pub fn tower_level(n: usize) -> FiniteGroupoid {
    tower(n).pop().expect("tower is nonempty")
}

/// Position of an element of `G_level` in the block structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TowerElement {
    pub level: usize,
    pub index: usize,
    /// `None` at level 0.
    pub block: Option<Block>,
    pub base_index: usize,
}

impl TowerElement {
    /// Splits `index` as `block * 4^(level-1) + base_index`. At level 1 the
    /// "blocks" are just the four elements of `G`.
    pub fn locate(level: usize, index: usize) -> Result<TowerElement> {
        let order = 1usize
            .checked_shl(2 * level as u32)
            .filter(|_| level < 32)
            .ok_or_else(|| Error::Argument(format!("level {level} too large")))?;
        if index >= order {
            return Err(Error::Bounds { index, order });
        }
        if level == 0 {
            return Ok(TowerElement {
                level,
                index,
                block: None,
                base_index: 0,
            });
        }
        let size = order / 4;
        Ok(TowerElement {
            level,
            index,
            block: Block::from_ordinal(index / size),
            base_index: index % size,
        })
    }
}

/// The subgroupoid of `G_{n+1}` generated by `a, x1, ..., xn`.
///
/// It has order `4^n`, so it is a proper sub-band isomorphic to `G_n`.
pub fn j_subband(n: usize) -> Result<FiniteGroupoid> {
    if n == 0 {
        return Err(Error::Argument("j_subband needs n >= 1".into()));
    }
    let top = tower_level(n + 1);
    let mut seeds = vec![A];
    seeds.extend((1..=n).map(|k| adjoined_generator(1 << (2 * k), A)));
    let closure = top.generated_subgroupoid(&seeds)?;
    if closure.len() != 1 << (2 * n) {
        return Err(Error::InvariantViolation(format!(
            "<a, x1..x{n}> has order {} instead of 4^{n}",
            closure.len()
        )));
    }
    top.restrict(&closure)
}

/// Generators `a, b, x1, ..., x(n-1)` of `G_n` (n ≥ 1).
pub fn tower_generators(n: usize) -> Vec<usize> {
    let mut gens = vec![A, 1];
    gens.extend((1..n).map(|k| adjoined_generator(1 << (2 * k), A)));
    gens
}

/// A cell where two tables disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub row: usize,
    pub col: usize,
    pub left: usize,
    pub right: usize,
}

/// All disagreeing cells, row-major.
pub fn diff_tables(left: &FiniteGroupoid, right: &FiniteGroupoid) -> Result<Vec<CellDiff>> {
    if left.order() != right.order() {
        return Err(Error::Argument(format!(
            "cannot diff tables of orders {} and {}",
            left.order(),
            right.order()
        )));
    }
    let n = left.order();
    Ok((0..n)
        .flat_map(|row| (0..n).map(move |col| (row, col)))
        .filter_map(|(row, col)| {
            let (l, r) = (left.mul(row, col), right.mul(row, col));
            (l != r).then_some(CellDiff {
                row,
                col,
                left: l,
                right: r,
            })
        })
        .collect())
}

/// Whether `s` is closed under the product and strictly smaller than `g`.
pub fn is_proper_subgroupoid(g: &FiniteGroupoid, s: &BTreeSet<usize>) -> bool {
    s.len() < g.order() && g.restrict(s).is_ok()
}
