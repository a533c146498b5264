//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Every criterion is an exact mathematical check; the only tolerances are
//! the wall-clock budgets below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use agband::constructions::{
    diff_tables, extend, gbar_derived, gbar_table3, j_subband, limit_level, limit_product, product_at_level,
    standard_g, tower, tower_level,
};
use agband::decomposition::{check_band_decomposition, BandCheck, Partition};
use agband::law::{check_identity, parse_identity, satisfies, VarietySpec, ANTI_RECTANGULAR, ARAGB_PERMUTATION, LEFT_INVERTIVE, IDEMPOTENT, MEDIAL};
use agband::morphisms::{canonical_iso, classify_all_bijections, classify_mapping, iso_search, MappingKind};
use agband::search::{brute_force_oracle, enumerate_models, spectrum_scan};
use agband::{Error, FiniteGroupoid};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 12] = [
    Criterion { name: "base table laws and generation", budget: secs(1), run: base_table },
    Criterion { name: "bijection census on G", budget: secs(1), run: census },
    Criterion { name: "extension stays anti-rectangular", budget: secs(5), run: extension_law },
    Criterion { name: "spectrum to order 8 and oracle agreement", budget: secs(180), run: spectrum },
    Criterion { name: "uniqueness at order 16", budget: secs(30), run: uniqueness_16 },
    Criterion { name: "inductive isomorphism onto G_n", budget: secs(30), run: inductive_iso },
    Criterion { name: "proper self-embedding", budget: secs(10), run: self_embedding },
    Criterion { name: "opposite is isomorphic", budget: secs(5), run: opposite },
    Criterion { name: "cancellative non-anti-rectangular band", budget: secs(5), run: gbar },
    Criterion { name: "transcribed table audit", budget: secs(1), run: table_audit },
    Criterion { name: "derived laws on the tower", budget: secs(60), run: derived_laws },
    Criterion { name: "limit product consistency", budget: secs(5), run: limit_consistency },
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn aragb() -> VarietySpec {
    VarietySpec::aragb()
}

fn shuffled(g: &FiniteGroupoid, rng: &mut ChaCha8Rng) -> FiniteGroupoid {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.relabel(&perm).expect("permutation")
}

fn base_table() -> Outcome {
    let g = standard_g();
    let v = aragb();
    for id in v.identities() {
        let r = check_identity(&g, id);
        ensure(r.holds, || format!("{id} fails at {:?}", r.counterexample))?;
    }
    let full: BTreeSet<usize> = (0..4).collect();
    let mut pairs = 0;
    for c in 0..4 {
        for d in c + 1..4 {
            ensure(g.generated_subgroupoid(&[c, d]).unwrap() == full, || format!("<{c},{d}> is proper"))?;
            pairs += 1;
        }
    }
    Ok(format!("3 laws over 64 triples; {pairs} pairs generate G"))
}

fn census() -> Outcome {
    let c = classify_all_bijections(&standard_g()).map_err(|e| e.to_string())?;
    let t = &c.totals;
    ensure((t.iso, t.anti_iso, t.neither) == (12, 12, 0), || format!("{t:?}"))?;
    for (ty, counts) in &c.by_cycle_type {
        let iso_type = matches!(ty.as_slice(), [1, 1, 1, 1] | [3, 1] | [2, 2]);
        let pure = if iso_type { counts.iso == counts.total() } else { counts.anti_iso == counts.total() };
        ensure(pure, || format!("cycle type {ty:?}: {counts:?}"))?;
    }
    Ok("12 ISO / 12 ANTI_ISO / 0 NEITHER, split by cycle type".into())
}

fn extension_law() -> Outcome {
    let mut seen = Vec::new();
    for (h, designated) in [(tower_level(1), [0, 1, 2]), (tower_level(2), [0, 7, 13])] {
        for a in designated {
            let e = extend(&h, a, "x").map_err(|e| e.to_string())?;
            ensure(e.order() == 4 * h.order(), || format!("order {}", e.order()))?;
            ensure(satisfies(&e, &aragb()), || format!("extension of order {} at a={a} fails", h.order()))?;
            seen.push(e.order());
        }
    }
    Ok(format!("orders {seen:?} all anti-rectangular AG-bands"))
}

fn spectrum() -> Outcome {
    let start = Instant::now();
    let counts = spectrum_scan(&aragb(), 8).map_err(|e| e.to_string())?;
    let search_time = start.elapsed();
    let expected = [(1, 1), (2, 0), (3, 0), (4, 1), (5, 0), (6, 0), (7, 0), (8, 0)];
    ensure(counts == expected, || format!("{counts:?}"))?;
    ensure(search_time < secs(60), || format!("search took {search_time:?}"))?;
    let start = Instant::now();
    for k in 1..=4 {
        let naive = brute_force_oracle(k, &aragb()).map_err(|e| e.to_string())?;
        ensure(naive == counts[k - 1].1, || format!("order {k}: oracle {naive}"))?;
    }
    let oracle_time = start.elapsed();
    ensure(oracle_time < secs(120), || format!("oracle took {oracle_time:?}"))?;
    Ok(format!(
        "{counts:?}; search {:.2} s, oracle {:.2} s",
        search_time.as_secs_f64(),
        oracle_time.as_secs_f64()
    ))
}

fn uniqueness_16() -> Outcome {
    let target = tower_level(2);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let g = standard_g();
    let mut instances = Vec::new();
    for k in 0..100 {
        let inst = match k % 3 {
            0 => {
                let a = rng.gen_range(0..4);
                let e = extend(&g, a, "y").map_err(|e| e.to_string())?;
                shuffled(&e, &mut rng)
            }
            1 => shuffled(&target, &mut rng),
            _ => shuffled(&target.opposite(), &mut rng),
        };
        instances.push(inst);
    }
    for (k, inst) in instances.iter().enumerate() {
        ensure(satisfies(inst, &aragb()), || format!("instance {k} is not ARAGB"))?;
        let m = iso_search(inst, &target, false).ok_or_else(|| format!("instance {k} not isomorphic"))?;
        ensure(m.kind == MappingKind::Iso, || format!("instance {k}: {:?}", m.kind))?;
    }
    let witness = enumerate_models(16, &aragb(), Some(1)).map_err(|e| e.to_string())?;
    ensure(iso_search(&witness.models[0], &target, false).is_some(), || "search witness differs".into())?;
    Ok("100 constructed instances and one searched witness are all isomorphic to G_2".into())
}

fn inductive_iso() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (n, runs) in [(2, 20), (3, 3)] {
        let target = tower_level(n);
        for r in 0..runs {
            let k = shuffled(&target, &mut rng);
            let mut enumeration: Vec<usize> = (0..k.order()).collect();
            if r % 2 == 1 {
                enumeration.shuffle(&mut rng);
            }
            let phi = canonical_iso(&k, &enumeration).map_err(|e| e.to_string())?;
            let kind = classify_mapping(&phi, &k, &target).map_err(|e| e.to_string())?;
            ensure(kind == MappingKind::Iso, || format!("G_{n} run {r}: {kind:?}"))?;
            if n == 2 {
                ensure(iso_search(&k, &target, false).is_some(), || "search disagrees".into())?;
            }
        }
    }
    Ok("20 shuffled G_2 and 3 shuffled G_3 map isomorphically".into())
}

fn self_embedding() -> Outcome {
    let j = j_subband(2).map_err(|e| e.to_string())?;
    let g3 = tower_level(3);
    ensure(j.order() == 16 && g3.order() == 64, || format!("orders {} / {}", j.order(), g3.order()))?;
    let m = iso_search(&j, &tower_level(2), false).ok_or("J_2 not isomorphic to G_2")?;
    ensure(m.kind == MappingKind::Iso, || format!("{:?}", m.kind))?;
    Ok("J_2 is a closed order-16 subgroupoid of G_3 isomorphic to G_2".into())
}

fn opposite() -> Outcome {
    for n in 1..=2 {
        let g = tower_level(n);
        let opp = g.opposite();
        ensure(satisfies(&opp, &aragb()), || format!("opposite(G_{n}) not ARAGB"))?;
        ensure(iso_search(&g, &opp, false).is_some(), || format!("G_{n} not isomorphic to its opposite"))?;
    }
    Ok("G_1 and G_2 are isomorphic to their opposites".into())
}

fn gbar() -> Outcome {
    let g = gbar_derived();
    let law = |s: &str| check_identity(&g, &parse_identity(s).unwrap());
    ensure(law(LEFT_INVERTIVE).holds, || "AG fails".into())?;
    ensure(law(IDEMPOTENT).holds, || "not idempotent".into())?;
    ensure(g.is_cancellative().both(), || "not cancellative".into())?;
    let anti = law(ANTI_RECTANGULAR);
    let witness = anti.counterexample.ok_or("anti-rectangular law holds")?;
    let (x, y) = (witness[0].1, witness[1].1);
    ensure(g.mul(g.mul(x, y), x) != y, || "witness does not fail".into())?;
    let d = match check_band_decomposition(&g, &Partition::contiguous(16, 4).unwrap()).unwrap() {
        BandCheck::Band(d) => d,
        BandCheck::Mixed(w) => return Err(format!("blocks mix: {w:?}")),
    };
    ensure(iso_search(&d.quotient, &standard_g(), false).is_some(), || "quotient not G".into())?;
    for b in 0..4 {
        let block = g.restrict(&d.partition.block_set(b)).map_err(|e| e.to_string())?;
        ensure(iso_search(&block, &standard_g(), false).is_some(), || format!("block {b} not G"))?;
    }
    let mut pairs = 0;
    for a in 0..16 {
        for b in 0..16 {
            let aba = g.mul(g.mul(a, b), a) == b;
            let bab = g.mul(g.mul(b, a), b) == a;
            ensure(aba == bab, || format!("biconditional fails at ({a},{b})"))?;
            pairs += 1;
        }
    }
    let corners: BTreeSet<usize> = [0, 4, 8, 12].into();
    ensure(matches!(g.restrict(&corners), Err(Error::Closure { .. })), || "{a,b,ab,ba} closed".into())?;
    Ok(format!("AG, idempotent, cancellative; (xy)x = y fails at x={x} y={y}; {pairs} pairs symmetric"))
}

fn table_audit() -> Outcome {
    let diffs = diff_tables(&gbar_derived(), &gbar_table3()).map_err(|e| e.to_string())?;
    ensure(!diffs.is_empty(), || "no discrepancy found".into())?;
    ensure(diffs.iter().all(|d| d.row == 3), || format!("{diffs:?}"))?;
    let cells: Vec<String> = diffs
        .iter()
        .map(|d| format!("({},{}) printed {} derived {}", d.row + 1, d.col + 1, d.right + 1, d.left + 1))
        .collect();
    Ok(format!("confined to row 4 (1-based): {}", cells.join(", ")))
}

fn derived_laws() -> Outcome {
    let laws = [parse_identity(MEDIAL).unwrap(), parse_identity(ARAGB_PERMUTATION).unwrap()];
    let mut evaluations = 0;
    for g in tower(3).iter().skip(1) {
        for id in &laws {
            let r = check_identity(g, id);
            ensure(r.holds, || format!("{id} fails on order {}", g.order()))?;
            evaluations += r.assignments_checked;
        }
    }
    Ok(format!("medial and a(bc) = c(ba) on G, G_2, G_3 ({evaluations} assignments)"))
}

fn limit_consistency() -> Outcome {
    let g = standard_g();
    for i in 0..4u64 {
        for j in 0..4u64 {
            ensure(limit_product(i, j) == g.mul(i as usize, j as usize) as u64, || format!("({i},{j})"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let (i, j) = (rng.gen_range(0..64u64), rng.gen_range(0..64u64));
        let m = limit_level(i, j);
        ensure(product_at_level(m, i, j) == product_at_level(m + 1, i, j), || format!("({i},{j}) at {m}"))?;
    }
    Ok("agrees with G below 4 and across levels on 1000 pairs".into())
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture may be passed through; none apply here.
    let mut failed = 0;
    for (k, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2}. {} ({:.2} s of {} s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            c.name,
            took.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
