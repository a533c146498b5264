//! The order-16 AG-band that is a band of four copies of `G` over `G` yet is
//! not anti-rectangular.
//!
//! Elements are pairs (block, component). The blocks `A = G_a`,
//! `B = (ab)G_a`, `AB = G_a b`, `BA = b G_a` multiply like `G`; components
//! live in `G_a = {a, x, ax, xa}`, a copy of `G` with `x` in the role of `b`,
//! and are combined by one word per block pair.

use std::collections::HashMap;

use serde::Serialize;

use crate::groupoid::FiniteGroupoid;
use crate::law::{parse_term, satisfies, Term, VarietySpec};

use super::standard_g;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GbarBlock {
    A,
    B,
    AB,
    BA,
}

impl GbarBlock {
    pub const ALL: [GbarBlock; 4] = [GbarBlock::A, GbarBlock::B, GbarBlock::AB, GbarBlock::BA];

    pub fn ordinal(self) -> usize {
        self as usize
    }
}

/// Element names in index order.
pub const GBAR_LABELS: [&str; 16] = [
    "a", "x", "ax", "xa", "b", "y", "by", "yb", "ab", "xy", "(ab)(xy)", "(xy)(ab)", "ba", "yx",
    "(ba)(yx)", "(yx)(ba)",
];

/// Block-level products.
const BLOCK_TABLE: [[GbarBlock; 4]; 4] = {
    use GbarBlock::*;
    [
        [A, AB, BA, B],
        [BA, B, A, AB],
        [B, BA, AB, A],
        [AB, A, B, BA],
    ]
};

/// Component words; `g` is the left component, `h` the right one, `a` and
/// `x` the generators of `G_a`.
const COMPONENT_WORDS: [[&str; 4]; 4] = [
    ["g h", "x (g (a h))", "(a (h g)) x", "(g a) h"],
    ["(x a) (h g)", "g h", "(x g) (h a)", "(g h) a"],
    ["(g a) (h g)", "(h g) (x a)", "g h", "h ((a g) x)"],
    ["h g", "h (g x)", "g (x h)", "g h"],
];

/// Components of each block's four elements, in index order, as elements of
/// `G_a` (0 = a, 1 = x, 2 = ax, 3 = xa). For example `B` lists
/// `(ab)xa, (ab)a, (ab)ax, (ab)x`, which are `b, y, by, yb`.
const BLOCK_MEMBERS: [[usize; 4]; 4] = [[0, 1, 2, 3], [3, 0, 2, 1], [0, 2, 3, 1], [0, 3, 1, 2]];

/// The ingredients [`gbar_derived`] is assembled from.
#[derive(Clone, Debug)]
pub struct GbarScaffold {
    /// `G_a`, labeled `a, x, ax, xa`.
    pub base_copy: FiniteGroupoid,
    pub block_table: [[GbarBlock; 4]; 4],
    pub component_formulas: [[Term; 4]; 4],
    pub block_members: [[usize; 4]; 4],
}

impl GbarScaffold {
    pub fn standard() -> Self {
        let base_copy = standard_g()
            .with_labels(["a", "x", "ax", "xa"].map(String::from).to_vec())
            .expect("four labels");
        debug_assert!(satisfies(&base_copy, &VarietySpec::aragb()));
        let component_formulas =
            COMPONENT_WORDS.map(|row| row.map(|w| parse_term(w).expect("component word parses")));
        GbarScaffold {
            base_copy,
            block_table: BLOCK_TABLE,
            component_formulas,
            block_members: BLOCK_MEMBERS,
        }
    }

    pub fn build(&self) -> FiniteGroupoid {
        let mut index = HashMap::new();
        for (b, members) in self.block_members.iter().enumerate() {
            for (k, &c) in members.iter().enumerate() {
                index.insert((b, c), 4 * b + k);
            }
        }
        let mut table = vec![0; 256];
        for rb in 0..4 {
            for cb in 0..4 {
                let target = self.block_table[rb][cb].ordinal();
                let word = &self.component_formulas[rb][cb];
                for (i, &g) in self.block_members[rb].iter().enumerate() {
                    for (j, &h) in self.block_members[cb].iter().enumerate() {
                        let env = HashMap::from([('a', 0), ('x', 1), ('g', g), ('h', h)]);
                        let c = word.eval(&self.base_copy, &env).expect("closed word");
                        table[(4 * rb + i) * 16 + 4 * cb + j] = index[&(target, c)];
                    }
                }
            }
        }
        FiniteGroupoid::from_flat(GBAR_LABELS.map(String::from).to_vec(), table)
            .expect("16x16 table")
    }
}

/// The 16-element band of copies of `G`, computed from the block and
/// component formulas.
pub fn gbar_derived() -> FiniteGroupoid {
    GbarScaffold::standard().build()
}

/// Published 16x16 table, 1-based as printed.
const TABLE3: [[usize; 16]; 16] = [
    [1, 3, 4, 2, 9, 11, 12, 10, 16, 14, 13, 15, 6, 8, 7, 5],
    [4, 2, 1, 3, 12, 10, 9, 11, 13, 15, 16, 14, 7, 5, 6, 8],
    [2, 4, 3, 1, 10, 12, 11, 9, 15, 13, 14, 16, 5, 7, 8, 6],
    [3, 1, 2, 4, 11, 9, 10, 12, 14, 16, 12, 13, 8, 6, 5, 7],
    [13, 15, 16, 14, 5, 7, 8, 6, 2, 4, 3, 1, 12, 10, 9, 11],
    [16, 14, 13, 15, 8, 6, 5, 7, 3, 1, 2, 4, 9, 11, 12, 10],
    [14, 16, 15, 13, 6, 8, 7, 5, 1, 3, 4, 2, 11, 9, 10, 12],
    [15, 13, 14, 16, 7, 5, 6, 8, 4, 2, 1, 3, 10, 12, 11, 9],
    [6, 8, 7, 5, 13, 15, 16, 14, 9, 11, 12, 10, 4, 2, 1, 3],
    [7, 5, 6, 8, 16, 14, 13, 15, 12, 10, 9, 11, 1, 3, 4, 2],
    [5, 7, 8, 6, 14, 16, 15, 13, 10, 12, 11, 9, 3, 1, 2, 4],
    [8, 6, 5, 7, 15, 13, 14, 16, 11, 9, 10, 12, 2, 4, 3, 1],
    [9, 11, 12, 10, 2, 4, 3, 1, 8, 6, 5, 7, 13, 15, 16, 14],
    [12, 10, 9, 11, 3, 1, 2, 4, 5, 7, 8, 6, 16, 14, 13, 15],
    [10, 12, 11, 9, 1, 3, 4, 2, 7, 5, 6, 8, 14, 16, 15, 13],
    [11, 9, 10, 12, 4, 2, 1, 3, 6, 8, 7, 5, 15, 13, 14, 16],
];

/// The printed table, shifted to 0-based indices. Kept verbatim, including
/// its defect in the row of `xa`; use [`gbar_derived`] for computation.
pub fn gbar_table3() -> FiniteGroupoid {
    let table = TABLE3.iter().flatten().map(|v| v - 1).collect();
    FiniteGroupoid::from_flat(GBAR_LABELS.map(String::from).to_vec(), table)
        .expect("entries 1..=16")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::diff_tables;
    use crate::law::{check_identity, parse_identity, ANTI_RECTANGULAR};

    #[test]
    fn derived_spot_values() {
        let g = gbar_derived();
        // 1.5 = 9
        assert_eq!(g.mul(0, 4), 8);
        assert_eq!(g.mul(8, 0), 5);
    }

    #[test]
    fn derived_laws() {
        let g = gbar_derived();
        assert!(satisfies(&g, &VarietySpec::band()));
        assert!(g.is_cancellative().both());
        let r = check_identity(&g, &parse_identity(ANTI_RECTANGULAR).unwrap());
        assert!(!r.holds);
    }

    #[test]
    fn printed_table_fixture() {
        let t3 = gbar_table3();
        assert_eq!(t3.mul(0, 0), 0);
        assert_eq!(t3.mul(8, 0), 5);
        // (1.5).1 = 9.1 = 6, not 5
        assert_eq!(t3.mul(t3.mul(0, 4), 0), 5);
        assert!(!t3.is_cancellative().left);
    }

    #[test]
    fn printed_table_differs_in_one_cell() {
        let d = diff_tables(&gbar_derived(), &gbar_table3()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].row, d[0].col, d[0].left, d[0].right), (3, 10, 14, 11));
    }

    #[test]
    fn block_members_name_the_printed_elements() {
        // b = (ab)(xa), y = (ab)a, by = b.y, yb = y.b
        let g = gbar_derived();
        assert_eq!(g.mul(4, 5), 6);
        assert_eq!(g.mul(5, 4), 7);
        // xy and yx
        assert_eq!(g.mul(1, 5), 9);
        assert_eq!(g.mul(5, 1), 13);
        // (ab)(xy) and (ba)(yx)
        assert_eq!(g.mul(8, 9), 10);
        assert_eq!(g.mul(12, 13), 14);
    }
}
