//! The inductive isomorphism from any anti-rectangular AG-band of order 4^n
//! onto G_n, applied to a scrambled copy of G_n.
//!
//!     cargo run --example canonical_iso -- 3 42    # level, seed

use agband::constructions::tower_level;
use agband::morphisms::{canonical_iso, classify_mapping};
use rand::seq::SliceRandom;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer"));
    let level = args.next().unwrap_or(2) as usize;
    let seed = args.next().unwrap_or(7);
    let mut rng = StdRng::seed_from_u64(seed);

    let target = tower_level(level);
    let mut perm: Vec<usize> = (0..target.order()).collect();
    perm.shuffle(&mut rng);
    let k = target.relabel(&perm).unwrap();

    let mut enumeration: Vec<usize> = (0..k.order()).collect();
    enumeration.shuffle(&mut rng);
    let phi = canonical_iso(&k, &enumeration).unwrap();
    println!("order {}: enumeration starts {:?}", k.order(), &enumeration[..4.min(k.order())]);
    println!("images of the first elements: {:?}", &phi.images[..8.min(k.order())]);
    println!("re-verified kind: {:?}", classify_mapping(&phi, &k, &target).unwrap());
}
