//! The line-oriented algebra file format.
//!
//! ```text
//! # the two-element meet semilattice
//! algebra m2
//! size 2
//! op meet 2
//! 0 0 0 1
//! end
//! ```
//!
//! Table values follow lexicographic argument order and may be spread
//! over any number of lines.

use crate::algebra::{Element, FiniteAlgebra, OperationTable};
use crate::error::{Error, Result};

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut start = None;
        for (j, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    row.push(Token {
                        text: &body[s..j],
                        line: i + 1,
                        column: s + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !row.is_empty() {
            lines.push(row);
        }
    }
    lines
}

fn syntax(t: &Token<'_>, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: t.line,
        column: t.column,
        message: message.into(),
    }
}

fn number(t: &Token<'_>, what: &str) -> Result<usize> {
    t.text
        .parse()
        .map_err(|_| syntax(t, format!("expected {what}, found `{}`", t.text)))
}

fn keyword_line<'t, 'a>(
    lines: &'t [Vec<Token<'a>>],
    at: usize,
    keyword: &str,
    args: usize,
    eof: (usize, usize),
) -> Result<&'t [Token<'a>]> {
    let Some(row) = lines.get(at) else {
        return Err(Error::Syntax {
            line: eof.0,
            column: eof.1,
            message: format!("unexpected end of input, expected `{keyword}`"),
        });
    };
    if row[0].text != keyword {
        return Err(syntax(&row[0], format!("expected `{keyword}`, found `{}`", row[0].text)));
    }
    if row.len() != args + 1 {
        let t = row.get(args + 1).unwrap_or(&row[row.len() - 1]);
        return Err(syntax(t, format!("`{keyword}` takes {args} argument(s)")));
    }
    Ok(&row[1..])
}

/// Parses one algebra. Anything after `end` other than comments is an
/// error.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let lines = tokens(text);
    let eof = (text.lines().count().max(1), 1);
    let name = keyword_line(&lines, 0, "algebra", 1, eof)?[0].text.to_string();
    let size_tok = &keyword_line(&lines, 1, "size", 1, eof)?[0];
    let size = number(size_tok, "a universe size")?;
    if size == 0 {
        return Err(Error::Validation("universe must be nonempty".into()));
    }
    let mut ops = Vec::new();
    let mut at = 2;
    loop {
        let Some(row) = lines.get(at) else {
            return Err(Error::Syntax {
                line: eof.0,
                column: eof.1,
                message: "unexpected end of input, expected `op` or `end`".into(),
            });
        };
        if row[0].text == "end" {
            if let Some(extra) = row.get(1).or_else(|| lines.get(at + 1).map(|r| &r[0])) {
                return Err(syntax(extra, "unexpected input after `end`"));
            }
            break;
        }
        let head = keyword_line(&lines, at, "op", 2, eof)?;
        let op_name = head[0].text.to_string();
        let arity = number(&head[1], "an arity")?;
        let expected = size
            .checked_pow(arity as u32)
            .filter(|&n| n <= 1 << 24)
            .ok_or_else(|| Error::Validation(format!("table of `{op_name}` too large")))?;
        at += 1;
        let mut values: Vec<Element> = Vec::with_capacity(expected);
        while let Some(row) = lines.get(at) {
            if matches!(row[0].text, "op" | "end") {
                break;
            }
            for t in row {
                let v = number(t, "a table value")?;
                if v >= size {
                    return Err(Error::Validation(format!(
                        "value {v} at {}:{} is outside the universe 0..{size}",
                        t.line, t.column
                    )));
                }
                values.push(v);
            }
            at += 1;
        }
        if values.len() != expected {
            return Err(Error::Validation(format!(
                "operation `{op_name}` of arity {arity} needs {expected} values, got {}",
                values.len()
            )));
        }
        ops.push(OperationTable::new(op_name, arity, values));
    }
    FiniteAlgebra::new(name, size, ops)
}

/// Canonical text: one table row per value of the first `arity - 1`
/// arguments.
pub fn serialize_algebra(alg: &FiniteAlgebra) -> String {
    let mut out = format!("algebra {}\nsize {}\n", alg.name(), alg.size());
    for op in alg.ops() {
        out += &format!("op {} {}\n", op.name(), op.arity());
        let row = if op.arity() == 0 { 1 } else { alg.size() };
        for chunk in op.values().chunks(row) {
            let cells: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
            out += &cells.join(" ");
            out.push('\n');
        }
    }
    out += "end\n";
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn meet_semilattice() {
        let a = parse_algebra("algebra m2\nsize 2\nop meet 2\n0 0 0 1\nend\n").unwrap();
        assert_eq!(a, builtin::chain_semilattice(2).with_name("m2").clone());
        let text = serialize_algebra(&a);
        assert_eq!(text, "algebra m2\nsize 2\nop meet 2\n0 0\n0 1\nend\n");
        assert_eq!(serialize_algebra(&parse_algebra(&text).unwrap()), text);
    }

    #[test]
    fn comments_and_layout() {
        let a = parse_algebra("# x\n  algebra z3 # name\nsize 3\nop plus 2\n0 1 2\n1 2 0 2 0 1\nop zero 0\n0\nend\n# trailing\n")
            .unwrap();
        assert_eq!(a.ops().len(), 2);
        assert_eq!(a.evaluate("plus", &[2, 2]).unwrap(), 1);
    }

    #[test]
    fn errors() {
        let e = parse_algebra("algebra a\nsize x\n").unwrap_err();
        assert_eq!(
            e,
            Error::Syntax {
                line: 2,
                column: 6,
                message: "expected a universe size, found `x`".into()
            }
        );
        assert!(matches!(
            parse_algebra("algebra a\nsize 2\nop f 1\n0 2\nend"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse_algebra("algebra a\nsize 2\nop f 1\n0\nend"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse_algebra("algebra a\nsize 2\nop f 1\n0 1\nop f 1\n0 1\nend"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse_algebra("algebra a\nsize 2\nop f 1\n0 1\n"),
            Err(Error::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_algebra("algebra a\nsize 2\nend\nend\n"),
            Err(Error::Syntax { line: 4, column: 1, .. })
        ));
    }
}
