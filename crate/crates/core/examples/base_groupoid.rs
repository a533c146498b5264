//! The order-4 anti-rectangular AG-band G: its table, its laws and a few
//! structural facts about it.

use agband::constructions::standard_g;
use agband::law::{check_variety, VarietySpec};

fn main() {
    let g = standard_g();
    print!("{}", g.render_text("G"));

    let report = check_variety(&g, &VarietySpec::aragb());
    for r in &report.results {
        println!("{:<24} holds: {} ({} assignments)", r.identity, r.holds, r.assignments_checked);
    }

    // Any two distinct elements generate everything.
    for c in 0..4 {
        for d in c + 1..4 {
            let closure = g.generated_subgroupoid(&[c, d]).unwrap();
            println!("<{}, {}> has {} elements", g.label(c), g.label(d), closure.len());
        }
    }

    let cancel = g.is_cancellative();
    println!("left cancellative: {}, right cancellative: {}", cancel.left, cancel.right);
    println!("commutative: {}", g.is_commutative());
    print!("{}", g.opposite().render_text("G^op"));
}
