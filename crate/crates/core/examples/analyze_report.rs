//! A full report for one algebra, as text and as JSON.

use polhom::builtin::parse_builtin;
use polhom::decide::DecideOptions;
use polhom::report::Report;

fn main() -> Result<(), polhom::error::Error> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "fork-semilattice".into());
    let a = parse_builtin(&spec)?;
    let (report, err) = Report::analyze(&a, &DecideOptions::defaults_for(&a));
    print!("{}", report.render());
    println!("{}", report.without_timing().to_json());
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
