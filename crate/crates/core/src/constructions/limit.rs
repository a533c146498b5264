//! Products in the countable band `⋃ G_n` on integer indices.
//!
//! Every level's table is the top-left corner of the next one, so the
//! product of `i` and `j` may be read in any level that contains both. The
//! evaluation recurses through the extension formulas instead of
//! materializing the level, which keeps large indices cheap.

use std::collections::HashMap;

use super::{extension_product, standard_g, Block, A};

/// Smallest level `m >= 1` with `4^m > max(i, j)`.
pub fn limit_level(i: u64, j: u64) -> u32 {
    let top = i.max(j);
    let mut m = 1;
    while m < 32 && (1u64 << (2 * m)) <= top {
        m += 1;
    }
    m
}

struct Evaluator {
    base: [[u64; 4]; 4],
    memo: HashMap<(u32, u64, u64), u64>,
}

impl Evaluator {
    fn new() -> Self {
        let g = standard_g();
        let mut base = [[0u64; 4]; 4];
        for (i, row) in base.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = g.mul(i, j) as u64;
            }
        }
        Evaluator {
            base,
            memo: HashMap::new(),
        }
    }

    fn product(&mut self, level: u32, i: u64, j: u64) -> u64 {
        if level == 1 {
            return self.base[i as usize][j as usize];
        }
        if let Some(&v) = self.memo.get(&(level, i, j)) {
            return v;
        }
        let size = 1u64 << (2 * (level - 1));
        let rb = Block::from_ordinal((i / size) as usize).expect("index below 4^level");
        let cb = Block::from_ordinal((j / size) as usize).expect("index below 4^level");
        let (b, c) = extension_product(rb, (i % size) as usize, cb, (j % size) as usize, A, |u, v| {
            self.product(level - 1, u as u64, v as u64) as usize
        });
        let v = b.ordinal() as u64 * size + c as u64;
        self.memo.insert((level, i, j), v);
        v
    }
}

/// Product of `i` and `j` in the countable anti-rectangular AG-band.
pub fn limit_product(i: u64, j: u64) -> u64 {
    Evaluator::new().product(limit_level(i, j), i, j)
}

/// Product read explicitly at `level`; both indices must lie below `4^level`.
pub fn product_at_level(level: u32, i: u64, j: u64) -> u64 {
    assert!((1..=32).contains(&level));
    let bound = 1u128 << (2 * level);
    assert!((i as u128) < bound && (j as u128) < bound, "indices outside level {level}");
    Evaluator::new().product(level, i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tower;

    #[test]
    fn levels() {
        assert_eq!(limit_level(0, 3), 1);
        assert_eq!(limit_level(4, 0), 2);
        assert_eq!(limit_level(15, 15), 2);
        assert_eq!(limit_level(16, 1), 3);
        assert_eq!(limit_level(u64::MAX, 0), 32);
    }

    #[test]
    fn agrees_with_materialized_tower() {
        let t = tower(3);
        let g3 = &t[3];
        for i in 0..64u64 {
            for j in 0..64u64 {
                assert_eq!(limit_product(i, j), g3.mul(i as usize, j as usize) as u64);
            }
        }
    }

    #[test]
    fn idempotent_at_large_indices() {
        for i in [1_000u64, 123_456_789, u64::MAX - 7, u64::MAX] {
            assert_eq!(limit_product(i, i), i);
        }
    }

    #[test]
    fn anti_rectangular_at_large_indices() {
        let pairs = [(5u64, 1u64 << 40), (u64::MAX, 17), (987_654_321, 1 << 33)];
        for (x, y) in pairs {
            let xy = limit_product(x, y);
            assert_eq!(limit_product(xy, x), y);
        }
    }
}
