//! Backtracking over Cayley-table cells.
//!
//! Cells are decided in row-major order, smallest value first. After every
//! decision the engine propagates to a fixpoint:
//!
//! - every ground instance of every law whose two sides evaluate is checked;
//!   when one side is known and the other is blocked only on its outermost
//!   product, that cell is forced;
//! - if the laws contain `(x y) x = y`, setting `xy = k` immediately forces
//!   `kx = y`;
//! - when the laws imply cancellation, rows and columns may not repeat a value.

use itertools::Itertools;

use crate::law::{CompiledIdentity, Op, Term, VarietySpec};

pub(crate) const UNSET: u8 = u8::MAX;

#[derive(Clone, Copy, Debug)]
enum Value {
    Known(u8),
    /// Both factors known, their product cell undecided.
    Pending(usize),
    Stuck,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Counters {
    pub nodes: u64,
    pub failures: u64,
    pub symmetry_prunes: u64,
}

impl Counters {
    pub fn absorb(&mut self, other: &Counters) {
        self.nodes += other.nodes;
        self.failures += other.failures;
        self.symmetry_prunes += other.symmetry_prunes;
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Engine {
    pub n: usize,
    pub cells: Vec<u8>,
    trail: Vec<usize>,
    laws: Vec<CompiledIdentity>,
    anti_rectangular: bool,
    distinct_rows: bool,
    distinct_cols: bool,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    queue: Vec<(usize, u8)>,
    /// Apply the row-0 symmetry restriction.
    pub break_row0: bool,
    pub counters: Counters,
}

fn is_anti_rectangular_law(lhs: &Term, rhs: &Term) -> bool {
    // ((x y) x) = y, either way round
    let check = |t: &Term, y: &Term| {
        let Term::Var(yv) = y else { return false };
        let Term::Mul(outer_l, outer_r) = t else { return false };
        let Term::Var(xv) = **outer_r else { return false };
        let Term::Mul(inner_l, inner_r) = &**outer_l else { return false };
        xv != *yv && **inner_l == Term::Var(xv) && **inner_r == Term::Var(*yv)
    };
    check(lhs, rhs) || check(rhs, lhs)
}

impl Engine {
    pub fn new(n: usize, v: &VarietySpec) -> Engine {
        assert!((1..=16).contains(&n), "engine supports orders 1..=16");
        let laws = v.all_laws().map(|id| id.compile()).collect();
        let anti_rectangular = v
            .all_laws()
            .any(|id| is_anti_rectangular_law(id.lhs(), id.rhs()));
        let (distinct_rows, distinct_cols) = v.implied_cancellation();
        Engine {
            n,
            cells: vec![UNSET; n * n],
            trail: Vec::new(),
            laws,
            anti_rectangular,
            distinct_rows,
            distinct_cols,
            row_used: vec![0; n],
            col_used: vec![0; n],
            queue: Vec::new(),
            break_row0: n <= crate::groupoid::CANONICAL_MAX_ORDER,
            counters: Counters::default(),
        }
    }

    fn set(&mut self, cell: usize, value: u8) -> bool {
        let current = self.cells[cell];
        if current != UNSET {
            return current == value;
        }
        let (r, c) = (cell / self.n, cell % self.n);
        let bit = 1u32 << value;
        if (self.distinct_rows && self.row_used[r] & bit != 0)
            || (self.distinct_cols && self.col_used[c] & bit != 0)
        {
            return false;
        }
        self.cells[cell] = value;
        self.row_used[r] |= bit;
        self.col_used[c] |= bit;
        self.trail.push(cell);
        if self.anti_rectangular {
            // (r c) r = c
            self.queue.push((value as usize * self.n + r, c as u8));
        }
        true
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo_to(&mut self, mark: usize) {
        self.queue.clear();
        while self.trail.len() > mark {
            let cell = self.trail.pop().expect("nonempty trail");
            let value = self.cells[cell];
            let bit = 1u32 << value;
            self.row_used[cell / self.n] &= !bit;
            self.col_used[cell % self.n] &= !bit;
            self.cells[cell] = UNSET;
        }
    }

    fn eval(&self, ops: &[Op], env: &[u8], stack: &mut Vec<Value>) -> Value {
        stack.clear();
        for op in ops {
            match *op {
                Op::Load(s) => stack.push(Value::Known(env[s])),
                Op::Mul => {
                    let r = stack.pop().expect("well-formed");
                    let l = stack.pop().expect("well-formed");
                    stack.push(match (l, r) {
                        (Value::Known(a), Value::Known(b)) => {
                            let cell = a as usize * self.n + b as usize;
                            match self.cells[cell] {
                                UNSET => Value::Pending(cell),
                                v => Value::Known(v),
                            }
                        }
                        _ => Value::Stuck,
                    });
                }
            }
        }
        stack[0]
    }

    /// One pass over every ground instance. Returns `None` on conflict,
    /// otherwise whether anything was forced.
    fn scan(&mut self) -> Option<bool> {
        let n = self.n as u8;
        let mut changed = false;
        let mut stack = Vec::with_capacity(16);
        for li in 0..self.laws.len() {
            let arity = self.laws[li].arity;
            let mut env = vec![0u8; arity];
            loop {
                let law = &self.laws[li];
                let l = self.eval(law.lhs.ops(), &env, &mut stack);
                let r = self.eval(law.rhs.ops(), &env, &mut stack);
                match (l, r) {
                    (Value::Known(a), Value::Known(b)) if a != b => return None,
                    (Value::Known(v), Value::Pending(cell)) | (Value::Pending(cell), Value::Known(v)) => {
                        if !self.set(cell, v) || !self.drain() {
                            return None;
                        }
                        changed = true;
                    }
                    _ => {}
                }
                let mut k = arity;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    env[k] += 1;
                    if env[k] < n {
                        break;
                    }
                    env[k] = 0;
                }
                if env.iter().all(|&e| e == 0) {
                    break;
                }
            }
        }
        Some(changed)
    }

    /// Applies queued forced assignments.
    fn drain(&mut self) -> bool {
        while let Some((cell, v)) = self.queue.pop() {
            if !self.set(cell, v) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    pub fn propagate(&mut self) -> bool {
        if !self.drain() {
            return false;
        }
        loop {
            match self.scan() {
                None => return false,
                Some(false) => return true,
                Some(true) => {}
            }
        }
    }

    pub fn assign(&mut self, cell: usize, value: u8) -> bool {
        self.set(cell, value) && self.propagate()
    }

    pub fn first_unset(&self) -> Option<usize> {
        self.cells.iter().position(|&c| c == UNSET)
    }

    pub fn candidates(&self, cell: usize) -> Vec<u8> {
        let (r, c) = (cell / self.n, cell % self.n);
        (0..self.n as u8)
            .filter(|&v| {
                let bit = 1u32 << v;
                !(self.distinct_rows && self.row_used[r] & bit != 0)
                    && !(self.distinct_cols && self.col_used[c] & bit != 0)
            })
            .collect()
    }

    pub fn row0_complete(&self) -> bool {
        self.cells[..self.n].iter().all(|&c| c != UNSET)
    }

    pub fn table(&self) -> Vec<usize> {
        self.cells.iter().map(|&c| c as usize).collect()
    }
}

/// Whether `row` is lexicographically least among its conjugates
/// `π ∘ row ∘ π⁻¹` by permutations fixing 0. Every isomorphism class has a
/// member whose row 0 passes, so rejecting the others loses no class.
pub(crate) fn row0_is_minimal(row: &[u8]) -> bool {
    let n = row.len();
    if n <= 2 {
        return true;
    }
    let mut pre = vec![0usize; n];
    let mut inverse = vec![0usize; n];
    for rest in (1..n).permutations(n - 1) {
        pre[1..].copy_from_slice(&rest);
        for (k, &old) in pre.iter().enumerate() {
            inverse[old] = k;
        }
        for k in 0..n {
            let conj = inverse[row[pre[k]] as usize] as u8;
            if conj != row[k] {
                if conj < row[k] {
                    return false;
                }
                break;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row0_minimality() {
        assert!(row0_is_minimal(&[0, 2, 3, 1]));
        // conjugating by (1 2) gives [0, 3, 1, 2]... and (2 3) gives [0, 2, 3, 1]
        assert!(!row0_is_minimal(&[0, 3, 1, 2]));
        assert!(row0_is_minimal(&[0, 0, 0]));
        assert!(!row0_is_minimal(&[0, 2, 2]));
    }

    #[test]
    fn anti_rectangular_shape() {
        let id = crate::law::parse_identity("((x y) x) = y").unwrap();
        assert!(is_anti_rectangular_law(id.lhs(), id.rhs()));
        let id = crate::law::parse_identity("y = ((x y) x)").unwrap();
        assert!(is_anti_rectangular_law(id.lhs(), id.rhs()));
        let id = crate::law::parse_identity("((x y) y) = x").unwrap();
        assert!(!is_anti_rectangular_law(id.lhs(), id.rhs()));
    }

    #[test]
    fn idempotency_fixes_the_diagonal() {
        let mut e = Engine::new(5, &VarietySpec::band());
        assert!(e.propagate());
        for i in 0..5 {
            assert_eq!(e.cells[i * 5 + i], i as u8);
        }
    }

    #[test]
    fn anti_rectangular_forcing() {
        let mut e = Engine::new(4, &VarietySpec::aragb());
        assert!(e.propagate());
        assert!(e.assign(1, 2));
        // a.b = 2 forces 2.a = b
        assert_eq!(e.cells[2 * 4], 1);
    }

    #[test]
    fn undo_restores_state() {
        let mut e = Engine::new(4, &VarietySpec::aragb());
        assert!(e.propagate());
        let before = e.cells.clone();
        let mark = e.mark();
        assert!(e.assign(1, 2));
        e.undo_to(mark);
        assert_eq!(e.cells, before);
        assert_eq!(e.candidates(1), [2, 3]);
    }
}
