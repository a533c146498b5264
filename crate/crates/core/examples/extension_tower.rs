//! The extension construction and the tower G_0, G_1, G_2, ... it builds.

use agband::constructions::{extend, standard_g, tower, TowerElement};
use agband::law::{satisfies, VarietySpec};

fn main() {
    let g = standard_g();
    let g2 = extend(&g, 0, "x").unwrap();
    println!("extension of G has order {}", g2.order());
    println!("labels: {}", g2.labels().join(" "));
    // x is the element of the last block sitting over a
    let x = g2.index_of("x").unwrap();
    println!("x is element {x}: {:?}", TowerElement::locate(2, x).unwrap());
    println!("a * (x a) = {}", g2.label(g2.mul(0, g2.index_of("x*a").unwrap())));

    let levels = tower(4);
    for (n, gn) in levels.iter().enumerate() {
        let prefix = n == 0 || {
            let prev = &levels[n - 1];
            (0..prev.order()).all(|i| gn.row(i)[..prev.order()] == *prev.row(i))
        };
        println!(
            "G_{n}: order {:>3}, ARAGB {}, extends G_{} as a corner: {prefix}",
            gn.order(),
            satisfies(gn, &VarietySpec::aragb()),
            n.saturating_sub(1)
        );
    }
}
