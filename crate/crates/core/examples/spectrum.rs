//! Finite model search: how many models a variety has at each small order,
//! up to isomorphism.
//!
//!     cargo run --release --example spectrum -- EVANS 4

use agband::law::VarietySpec;
use agband::search::enumerate_models;

fn main() {
    let mut args = std::env::args().skip(1);
    let variety = VarietySpec::resolve(&args.next().unwrap_or_else(|| "ARAGB".into())).unwrap();
    let max: usize = args.next().map_or(8, |a| a.parse().expect("order"));

    println!("{}", variety.name());
    for k in 1..=max {
        let out = enumerate_models(k, &variety, None).unwrap();
        println!(
            "order {k}: {} models  ({} nodes, {} dead ends, {:.1} ms)",
            out.count,
            out.stats.nodes,
            out.stats.propagation_failures,
            out.stats.wall_time.as_secs_f64() * 1e3
        );
    }

    // Past order 8 the search only collects witnesses.
    let witness = enumerate_models(16, &VarietySpec::aragb(), Some(1)).unwrap();
    println!("an order-16 ARAGB found in {} nodes", witness.stats.nodes);
}
