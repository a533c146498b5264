//! Isomorphisms and anti-isomorphisms: the bijection census on G, search
//! between groupoids, and turning an anti-isomorphism into an isomorphism.

use agband::constructions::{extend, standard_g, tower_level};
use agband::morphisms::{anti_to_iso, classify_all_bijections, iso_search};

fn main() {
    let g = standard_g();
    print!("{}", classify_all_bijections(&g).unwrap().render_text());

    let opp = g.opposite();
    let anti = iso_search(&g, &opp, true).unwrap();
    let iso = anti_to_iso(&anti, &g, &opp).unwrap();
    println!("G -> G^op: anti {:?} becomes iso {:?}", anti.images, iso.images);

    // Different designated elements give isomorphic extensions.
    let g2 = tower_level(2);
    for a in 1..4 {
        let other = extend(&g, a, "x").unwrap();
        match iso_search(&other, &g2, false) {
            Some(m) => println!("extension at a = {a} ~ G_2 via {:?}", m.images),
            None => println!("extension at a = {a} is not isomorphic to G_2"),
        }
    }

    let g3 = tower_level(3);
    let found = iso_search(&g3, &g3.opposite(), false);
    println!("G_3 isomorphic to its opposite: {}", found.is_some());
}
