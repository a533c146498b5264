//! A 16-element cancellative AG-band that is a band of four copies of G but
//! is not itself anti-rectangular, and the audit of its transcribed table.

use std::collections::BTreeSet;

use agband::constructions::{diff_tables, gbar_derived, gbar_table3, standard_g, GBAR_LABELS};
use agband::decomposition::{check_band_decomposition, BandCheck, Partition};
use agband::law::{check_variety, VarietySpec};
use agband::morphisms::are_isomorphic;

fn main() {
    let g = gbar_derived();
    print!("{}", g.render_text("*"));

    let report = check_variety(&g, &VarietySpec::aragb());
    for r in &report.results {
        match &r.counterexample {
            None => println!("holds  {}", r.identity),
            Some(env) => {
                let env: Vec<String> = env.iter().map(|(v, e)| format!("{v}={}", GBAR_LABELS[*e])).collect();
                println!("FAILS  {}  at {}", r.identity, env.join(" "));
            }
        }
    }
    println!("cancellative: {}", g.is_cancellative().both());

    if let BandCheck::Band(d) = check_band_decomposition(&g, &Partition::contiguous(16, 4).unwrap()).unwrap() {
        println!("four blocks, quotient isomorphic to G: {}", are_isomorphic(&d.quotient, &standard_g()));
    }
    let corners: BTreeSet<usize> = [0, 4, 8, 12].into();
    println!("{{a, b, ab, ba}} as a subgroupoid: {:?}", g.restrict(&corners).err().map(|e| e.to_string()));

    for d in diff_tables(&g, &gbar_table3()).unwrap() {
        println!(
            "transcribed table differs at row {} col {} (1-based): printed {}, derived {}",
            d.row + 1,
            d.col + 1,
            d.right + 1,
            d.left + 1
        );
    }
}
