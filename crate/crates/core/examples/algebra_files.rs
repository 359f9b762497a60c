//! Parse an algebra file, print it back canonically, and list builtins.

use polhom::builtin::parse_builtin;
use polhom::format::{parse_algebra, serialize_algebra};

const TEXT: &str = "\
# the two-element meet semilattice
algebra m2
size 2
op meet 2
0 0 0 1
end
";

fn main() -> Result<(), polhom::error::Error> {
    let m2 = parse_algebra(TEXT)?;
    println!("meet(1,1) = {}", m2.evaluate("meet", &[1, 1])?);
    let canonical = serialize_algebra(&m2);
    print!("{canonical}");
    assert_eq!(serialize_algebra(&parse_algebra(&canonical)?), canonical);

    for spec in ["cyclic:4", "monounary:1,0,0", "fork-semilattice", "product:cyclic:2,cyclic:4"] {
        let a = parse_builtin(spec)?;
        let ops: Vec<_> = a.ops().iter().map(|o| format!("{}/{}", o.name(), o.arity())).collect();
        println!("{spec}: size {}, ops {}", a.size(), ops.join(" "));
    }

    match parse_algebra("algebra bad\nsize 2\nop f 1\n0 2\nend\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
