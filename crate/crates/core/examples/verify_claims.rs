//! Replays every published claim and prints the checklist.

use agband::cli::verify_claims;

fn main() {
    let only = std::env::args().nth(1);
    let report = verify_claims(only.as_deref()).unwrap();
    print!("{}", report.render_text());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
