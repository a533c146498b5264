use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// A groupoid word: a variable or the product of two words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(char),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: char) -> Self {
        Term::Var(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(left: Term, right: Term) -> Self {
        Term::Mul(Box::new(left), Box::new(right))
    }

    /// Variables in first-occurrence order, without repeats.
    pub fn variables(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<char>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Number of occurrences of `v`.
    pub fn occurrences(&self, v: char) -> usize {
        match self {
            Term::Var(w) => usize::from(*w == v),
            Term::Mul(l, r) => l.occurrences(v) + r.occurrences(v),
        }
    }

    /// The same word read in the opposite groupoid.
    pub fn mirror(&self) -> Term {
        match self {
            Term::Var(v) => Term::Var(*v),
            Term::Mul(l, r) => Term::mul(r.mirror(), l.mirror()),
        }
    }

    pub fn eval(&self, g: &FiniteGroupoid, env: &HashMap<char, usize>) -> Result<usize> {
        match self {
            Term::Var(v) => {
                let value = *env.get(v).ok_or(Error::UnboundVariable(*v))?;
                if value >= g.order() {
                    return Err(Error::Bounds {
                        index: value,
                        order: g.order(),
                    });
                }
                Ok(value)
            }
            Term::Mul(l, r) => Ok(g.mul(l.eval(g, env)?, r.eval(g, env)?)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Mul(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// An equation between two words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    lhs: Term,
    rhs: Term,
    variables: Vec<char>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let mut variables = lhs.variables();
        for v in rhs.variables() {
            if !variables.contains(&v) {
                variables.push(v);
            }
        }
        Identity {
            lhs,
            rhs,
            variables,
        }
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// Union of both sides' variables in first-occurrence order.
    pub fn variables(&self) -> &[char] {
        &self.variables
    }

    pub fn mirror(&self) -> Identity {
        Identity::new(self.lhs.mirror(), self.rhs.mirror())
    }

    pub fn compile(&self) -> CompiledIdentity {
        CompiledIdentity {
            lhs: Program::compile(&self.lhs, &self.variables),
            rhs: Program::compile(&self.rhs, &self.variables),
            arity: self.variables.len(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    /// Push the value bound to variable slot `n`.
    Load(usize),
    /// Pop right, pop left, push their product.
    Mul,
}

/// A term flattened to postfix over variable slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    ops: Vec<Op>,
}

impl Program {
    pub fn compile(t: &Term, slots: &[char]) -> Program {
        fn go(t: &Term, slots: &[char], ops: &mut Vec<Op>) {
            match t {
                Term::Var(v) => {
                    let slot = slots.iter().position(|s| s == v).expect("slot for variable");
                    ops.push(Op::Load(slot));
                }
                Term::Mul(l, r) => {
                    go(l, slots, ops);
                    go(r, slots, ops);
                    ops.push(Op::Mul);
                }
            }
        }
        let mut ops = Vec::new();
        go(t, slots, &mut ops);
        Program { ops }
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    /// Evaluates against a raw row-major table of the given order.
    #[inline]
    pub fn run(&self, table: &[usize], order: usize, env: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Load(s) => stack.push(env[s]),
                Op::Mul => {
                    let r = stack.pop().expect("well-formed program");
                    let l = stack.pop().expect("well-formed program");
                    stack.push(table[l * order + r]);
                }
            }
        }
        stack[0]
    }
}

/// An identity ready for fast repeated evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledIdentity {
    pub lhs: Program,
    pub rhs: Program,
    pub arity: usize,
}

impl CompiledIdentity {
    /// First failing assignment in lexicographic order (first variable most
    /// significant) together with the number of assignments inspected.
    pub fn first_failure(&self, table: &[usize], order: usize) -> (Option<Vec<usize>>, u64) {
        let mut env = vec![0usize; self.arity];
        let mut stack = Vec::with_capacity(16);
        let mut checked = 0u64;
        loop {
            checked += 1;
            let l = self.lhs.run(table, order, &env, &mut stack);
            let r = self.rhs.run(table, order, &env, &mut stack);
            if l != r {
                return (Some(env), checked);
            }
            // odometer, last slot fastest
            let mut k = self.arity;
            loop {
                if k == 0 {
                    return (None, checked);
                }
                k -= 1;
                env[k] += 1;
                if env[k] < order {
                    break;
                }
                env[k] = 0;
            }
        }
    }

    pub fn holds_on(&self, table: &[usize], order: usize) -> bool {
        self.first_failure(table, order).0.is_none()
    }
}
