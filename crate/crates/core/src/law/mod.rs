//! Words, identities and exhaustive law checking.

mod parse;
mod term;
mod variety;

use std::collections::HashMap;

use serde::Serialize;

pub use parse::{parse_identity, parse_term};
pub use term::{CompiledIdentity, Identity, Op, Program, Term};
pub use variety::*;

use crate::error::Result;
use crate::groupoid::FiniteGroupoid;

pub fn eval_term(t: &Term, g: &FiniteGroupoid, env: &HashMap<char, usize>) -> Result<usize> {
    t.eval(g, env)
}

/// Result of checking one identity on one groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub holds: bool,
    /// First failing assignment in lexicographic order, as `(variable, element)`.
    pub counterexample: Option<Vec<(char, usize)>>,
    pub assignments_checked: u64,
}

/// Checks `id` under every assignment of its variables, stopping at the
/// lexicographically first counterexample.
pub fn check_identity(g: &FiniteGroupoid, id: &Identity) -> IdentityReport {
    let compiled = id.compile();
    let (failure, checked) = compiled.first_failure(g.table(), g.order());
    IdentityReport {
        identity: id.to_string(),
        holds: failure.is_none(),
        counterexample: failure.map(|env| id.variables().iter().copied().zip(env).collect()),
        assignments_checked: checked,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyReport {
    pub variety: String,
    pub results: Vec<IdentityReport>,
}

impl VarietyReport {
    pub fn holds(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.results.iter().filter(|r| !r.holds)
    }
}

pub fn check_variety(g: &FiniteGroupoid, v: &VarietySpec) -> VarietyReport {
    VarietyReport {
        variety: v.name().to_string(),
        results: v.identities().iter().map(|id| check_identity(g, id)).collect(),
    }
}

/// Shorthand for `check_variety(g, v).holds()`.
pub fn satisfies(g: &FiniteGroupoid, v: &VarietySpec) -> bool {
    v.identities()
        .iter()
        .all(|id| id.compile().holds_on(g.table(), g.order()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> FiniteGroupoid {
        FiniteGroupoid::from_rows(vec![
            vec![0, 2, 3, 1],
            vec![3, 1, 0, 2],
            vec![1, 3, 2, 0],
            vec![2, 0, 1, 3],
        ])
        .unwrap()
    }

    #[test]
    fn evaluation() {
        let g = g();
        let t = parse_term("(x y) x").unwrap();
        let env = HashMap::from([('x', 0), ('y', 1)]);
        assert_eq!(eval_term(&t, &g, &env).unwrap(), 1);
        assert_eq!(eval_term(&Term::var('x'), &g, &HashMap::from([('x', 3)])).unwrap(), 3);
        // a*b = ab, b*ab = a, ab*a = b
        let evans = parse_term("(x y)(y z)").unwrap();
        let env = HashMap::from([('x', 0), ('y', 1), ('z', 2)]);
        assert_eq!(eval_term(&evans, &g, &env).unwrap(), 1);
        let unbound = eval_term(&t, &g, &HashMap::from([('x', 0)])).unwrap_err();
        assert!(matches!(unbound, crate::Error::UnboundVariable('y')));
    }

    #[test]
    fn g_satisfies_aragb_and_counts_assignments() {
        let g = g();
        let r = check_variety(&g, &VarietySpec::aragb());
        assert!(r.holds());
        let checked: Vec<u64> = r.results.iter().map(|x| x.assignments_checked).collect();
        assert_eq!(checked, [64, 4, 16]);
    }

    #[test]
    fn semilattice_fails_anti_rectangular() {
        // meet semilattice on {0 < 1}
        let s = FiniteGroupoid::from_rows(vec![vec![0, 0], vec![0, 1]]).unwrap();
        let r = check_identity(&s, &parse_identity(ANTI_RECTANGULAR).unwrap());
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some(vec![('x', 0), ('y', 1)]));
        assert_eq!(r.assignments_checked, 2);
    }
}
