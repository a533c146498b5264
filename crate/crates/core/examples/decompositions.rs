//! Band decompositions: the four extension blocks of G_n, partitions into
//! disjoint copies of G, and how those copies can overlap.

use agband::constructions::tower_level;
use agband::decomposition::{copy_intersection_audit, extension_block_decomposition, g_copy_partition};

fn main() {
    for n in 1..=3 {
        let d = extension_block_decomposition(n).unwrap();
        let sizes: Vec<usize> = d.partition.blocks().iter().map(Vec::len).collect();
        println!("G_{n}: blocks of sizes {sizes:?}, quotient");
        print!("{}", d.quotient.render_text("Y"));
    }

    let g3 = tower_level(3);
    let copies = g_copy_partition(&g3).unwrap();
    println!("G_3 splits into {} disjoint copies of G", copies.blocks().len());
    for block in copies.blocks().iter().take(4) {
        println!("  {block:?}");
    }

    let audit = copy_intersection_audit(&tower_level(2)).unwrap();
    println!(
        "G_2 holds {} copies of G (from {} generating pairs); pairwise intersections {:?}",
        audit.copies, audit.generating_pairs, audit.intersection_sizes
    );
}
