//! Products in the countable band H, the union of the tower, addressed by
//! element index.
//!
//!     cargo run --example limit_product -- 123456789 987654321

use agband::constructions::{limit_level, limit_product, TowerElement};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("non-negative integer"));
    let (i, j) = match (args.next(), args.next()) {
        (Some(i), Some(j)) => (i, j),
        _ => (5, 1000),
    };
    let level = limit_level(i, j);
    let p = limit_product(i, j);
    println!("{i} * {j} = {p}  (computed in G_{level})");
    println!("idempotent: {} * {} = {}", i, i, limit_product(i, i));
    println!("anti-rectangular: ({i} * {j}) * {i} = {}", limit_product(p, i));

    if level <= 12 {
        let e = TowerElement::locate(level as usize, p as usize).unwrap();
        println!("product sits in block {:?} over element {}", e.block, e.base_index);
    }
}
