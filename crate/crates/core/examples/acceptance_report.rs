//! Runs every acceptance suite and prints one line per criterion.

use nullfil::verify::{run_all, DEFAULT_SEED};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let mut failed = 0;
    for outcome in run_all(seed) {
        println!("{outcome}");
        failed += usize::from(!outcome.passed);
    }
    std::process::exit(i32::from(failed > 0));
}
