//! Parsing identities and checking them exhaustively, including a
//! user-supplied law given on the command line.
//!
//!     cargo run --example law_language -- "((x y) (y z)) = y"

use agband::constructions::{standard_g, tower_level};
use agband::law::{check_identity, parse_identity, VarietySpec};

fn main() {
    let law = std::env::args().nth(1).unwrap_or_else(|| "((c d) (e f)) = ((c e) (d f))".to_string());
    let id = match parse_identity(&law) {
        Ok(id) => id,
        Err(e) => {
            eprintln!("{law}: {e}");
            std::process::exit(2);
        }
    };
    println!("parsed: {id}  (variables {:?}, mirror {})", id.variables(), id.mirror());

    for (name, g) in [("G", standard_g()), ("G_2", tower_level(2)), ("G_3", tower_level(3))] {
        let r = check_identity(&g, &id);
        match &r.counterexample {
            None => println!("{name}: holds over {} assignments", r.assignments_checked),
            Some(env) => println!("{name}: fails at {env:?}"),
        }
    }

    // Presets resolve by name; anything else is parsed as a single law.
    for spec in ["AG", "BAND", "ARAGB", "MEDIAL", "EVANS", "x = (x x)"] {
        let v = VarietySpec::resolve(spec).unwrap();
        let laws: Vec<String> = v.identities().iter().map(ToString::to_string).collect();
        println!("{:<10} {}", v.name(), laws.join(" ; "));
    }
}
