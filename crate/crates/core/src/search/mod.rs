//! Finite model search: every groupoid of a given order satisfying a
//! variety, up to isomorphism.
//!
//! Up to order 8 results are canonical forms, so counts are counts of
//! isomorphism classes. Orders 9 to 16 run in witness mode: a `limit` is
//! required and the models returned are raw, possibly isomorphic tables.

mod engine;
mod oracle;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::{canonical_table_of, default_labels, FiniteGroupoid, CANONICAL_MAX_ORDER};
use crate::law::{satisfies, VarietySpec};
use crate::morphisms::are_isomorphic;
use engine::{row0_is_minimal, Counters, Engine};

pub use oracle::{brute_force_oracle, ORACLE_MAX_ORDER};

/// Largest order the engine accepts at all.
pub const SEARCH_MAX_ORDER: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagation_failures: u64,
    pub symmetry_prunes: u64,
    #[serde(rename = "wall_time_ms", serialize_with = "millis")]
    pub wall_time: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub order: usize,
    pub variety: String,
    /// True when `models` are pairwise non-isomorphic canonical forms.
    pub canonical: bool,
    /// Whether the search ran to completion (no `limit` cut it short).
    pub exhaustive: bool,
    pub count: usize,
    pub models: Vec<FiniteGroupoid>,
    pub stats: SearchStats,
}

enum Sink {
    Canonical(BTreeSet<Vec<usize>>),
    Witness(Vec<Vec<usize>>),
}

impl Sink {
    fn len(&self) -> usize {
        match self {
            Sink::Canonical(s) => s.len(),
            Sink::Witness(v) => v.len(),
        }
    }
}

struct Run<'a> {
    variety: &'a VarietySpec,
    limit: Option<usize>,
    sink: Sink,
}

impl Run<'_> {
    fn full(&self) -> bool {
        self.limit.is_some_and(|l| self.sink.len() >= l)
    }

    fn leaf(&mut self, engine: &Engine) -> Result<()> {
        let table = engine.table();
        let g = FiniteGroupoid::from_flat(default_labels(engine.n), table.clone())?;
        if !satisfies(&g, self.variety) {
            return Err(Error::InvariantViolation(format!(
                "search produced a table violating {}",
                self.variety.name()
            )));
        }
        match &mut self.sink {
            Sink::Canonical(set) => {
                set.insert(canonical_table_of(engine.n, &table)?);
            }
            Sink::Witness(v) => v.push(table),
        }
        Ok(())
    }

    fn explore(&mut self, engine: &mut Engine) -> Result<()> {
        if self.full() {
            return Ok(());
        }
        engine.counters.nodes += 1;
        if engine.break_row0 && engine.row0_complete() && !row0_is_minimal(&engine.cells[..engine.n]) {
            engine.counters.symmetry_prunes += 1;
            return Ok(());
        }
        let Some(cell) = engine.first_unset() else {
            return self.leaf(engine);
        };
        for v in engine.candidates(cell) {
            let mark = engine.mark();
            if engine.assign(cell, v) {
                self.explore(engine)?;
            } else {
                engine.counters.failures += 1;
            }
            engine.undo_to(mark);
            if self.full() {
                break;
            }
        }
        Ok(())
    }
}

/// Enumerates the models of `variety` with `order` elements.
///
/// With `limit = None` the search is exhaustive and the root is split across
/// the rayon pool. With a limit it runs sequentially and stops early.
pub fn enumerate_models(order: usize, variety: &VarietySpec, limit: Option<usize>) -> Result<SearchOutcome> {
    if order == 0 {
        return Err(Error::Argument("order must be at least 1".into()));
    }
    if order > SEARCH_MAX_ORDER {
        return Err(Error::Resource(format!(
            "model search supports orders up to {SEARCH_MAX_ORDER}, got {order}"
        )));
    }
    let canonical = order <= CANONICAL_MAX_ORDER;
    if !canonical && limit.is_none() {
        return Err(Error::Resource(format!(
            "orders above {CANONICAL_MAX_ORDER} cannot be reduced up to isomorphism; pass a limit to collect witnesses"
        )));
    }
    if limit == Some(0) {
        return Err(Error::Argument("limit must be positive".into()));
    }
    let start = Instant::now();
    let mut root = Engine::new(order, variety);
    let mut counters = Counters::default();
    let new_sink = || if canonical { Sink::Canonical(BTreeSet::new()) } else { Sink::Witness(Vec::new()) };

    let sink = if !root.propagate() {
        counters.failures += 1;
        new_sink()
    } else if limit.is_some() || root.first_unset().is_none() {
        let mut run = Run { variety, limit, sink: new_sink() };
        run.explore(&mut root)?;
        counters.absorb(&root.counters);
        run.sink
    } else {
        let cell = root.first_unset().expect("checked above");
        counters.nodes += 1;
        let branches: Vec<Result<(Sink, Counters)>> = root
            .candidates(cell)
            .into_par_iter()
            .map(|v| {
                let mut e = root.clone();
                let mut run = Run { variety, limit: None, sink: new_sink() };
                if e.assign(cell, v) {
                    run.explore(&mut e)?;
                } else {
                    e.counters.failures += 1;
                }
                Ok((run.sink, e.counters))
            })
            .collect();
        let mut merged = new_sink();
        for branch in branches {
            let (sink, c) = branch?;
            counters.absorb(&c);
            match (&mut merged, sink) {
                (Sink::Canonical(all), Sink::Canonical(part)) => all.extend(part),
                (Sink::Witness(all), Sink::Witness(part)) => all.extend(part),
                _ => unreachable!("branches share one sink kind"),
            }
        }
        merged
    };

    let tables: Vec<Vec<usize>> = match sink {
        Sink::Canonical(set) => set.into_iter().collect(),
        Sink::Witness(mut v) => {
            if let Some(l) = limit {
                v.truncate(l);
            }
            v
        }
    };
    let models = tables
        .into_iter()
        .map(|t| FiniteGroupoid::from_flat(default_labels(order), t))
        .collect::<Result<Vec<_>>>()?;
    if canonical && models.len() <= 10 {
        for (i, a) in models.iter().enumerate() {
            for b in &models[i + 1..] {
                if are_isomorphic(a, b) {
                    return Err(Error::InvariantViolation("two canonical models are isomorphic".into()));
                }
            }
        }
    }
    let exhaustive = limit.is_none_or(|l| models.len() < l);
    Ok(SearchOutcome {
        order,
        variety: variety.name().to_string(),
        canonical,
        exhaustive,
        count: models.len(),
        models,
        stats: SearchStats {
            nodes: counters.nodes,
            propagation_failures: counters.failures,
            symmetry_prunes: counters.symmetry_prunes,
            wall_time: start.elapsed(),
        },
    })
}

/// `(order, number of models up to isomorphism)` for orders `1..=max_order`.
pub fn spectrum_scan(variety: &VarietySpec, max_order: usize) -> Result<Vec<(usize, usize)>> {
    if max_order > CANONICAL_MAX_ORDER {
        return Err(Error::Resource(format!(
            "spectrum counts isomorphism classes, which needs order at most {CANONICAL_MAX_ORDER}"
        )));
    }
    (1..=max_order)
        .map(|k| enumerate_models(k, variety, None).map(|o| (k, o.count)))
        .collect()
}
