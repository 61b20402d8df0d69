//! Runs the twelve acceptance criteria and prints one line per criterion.

use dynatomic::config::Config;
use dynatomic::verify::run_all;

fn main() {
    let results = run_all(&Config::default());
    for r in &results {
        println!(
            "{} {:>2} {:<38} {:>8.2} s / {:<5} {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.seconds,
            r.limit_seconds,
            r.detail
        );
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if results.len() != 12 || !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
