//! The eight acceptance criteria, one line each.

use std::time::Instant;

use polhom::selftest::run_criterion;

fn main() {
    let mut failed = 0;
    for id in 1..=8 {
        let start = Instant::now();
        let outcome = run_criterion(id);
        println!("{}  ({:.1} s)", outcome.line(), start.elapsed().as_secs_f64());
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
