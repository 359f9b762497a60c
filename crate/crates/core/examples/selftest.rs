//! Runs the acceptance suite. Slow in debug builds; use `--release`.

use polhom::selftest::run_all;

fn main() {
    let outcomes = run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    if outcomes.iter().any(|o| !o.passed) {
        std::process::exit(3);
    }
}
