//! The `.tbl` text format.
//!
//! ```text
//! # optional comments
//! 2
//! 2 1
//! 1 2
//! ```
//!
//! A two-operation file holds two blocks separated by one blank line, `·`
//! first and `*` second. Entries are 1-based.

use crate::error::{Error, Result};
use crate::structure::{OperationTable, Structure, TwoOpStructure};

pub fn parse_tables(text: &str) -> Result<Vec<OperationTable>> {
    let mut blocks: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed.is_empty() {
            if !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        blocks.last_mut().unwrap().push((i + 1, line));
    }
    if blocks.last().is_some_and(|b| b.is_empty()) {
        blocks.pop();
    }
    if blocks.is_empty() {
        return Err(Error::Parse { line: 1, column: 1, message: "empty table file".into() });
    }
    blocks.iter().map(|b| parse_block(b)).collect()
}

fn parse_block(lines: &[(usize, &str)]) -> Result<OperationTable> {
    let (first_line, header) = lines[0];
    let order: usize = header.trim().parse().map_err(|_| Error::BadToken {
        line: first_line,
        column: column_of(header, header.trim()),
        token: header.trim().to_string(),
    })?;
    if order == 0 {
        return Err(Error::NotAStructure);
    }
    if lines.len() != order + 1 {
        let line = lines.last().map(|l| l.0).unwrap_or(first_line);
        return Err(Error::Parse {
            line,
            column: 1,
            message: format!("expected {order} rows after the order line, found {}", lines.len() - 1),
        });
    }
    let mut rows = Vec::with_capacity(order);
    for &(line, text) in &lines[1..] {
        let mut row = Vec::with_capacity(order);
        for tok in text.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::BadToken {
                line,
                column: column_of(text, tok),
                token: tok.to_string(),
            })?;
            if v == 0 || v > order {
                return Err(Error::Parse {
                    line,
                    column: column_of(text, tok),
                    message: format!("entry {v} outside 1..{order}"),
                });
            }
            row.push(v);
        }
        if row.len() != order {
            return Err(Error::Parse {
                line,
                column: 1,
                message: format!("expected {order} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    OperationTable::from_rows(&rows)
}

fn column_of(line: &str, tok: &str) -> usize {
    // tok is a subslice of line
    tok.as_ptr() as usize - line.as_ptr() as usize + 1
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut tables = parse_tables(text)?;
    match tables.len() {
        1 => Ok(Structure::One(tables.pop().unwrap())),
        2 => {
            let star = tables.pop().unwrap();
            let dot = tables.pop().unwrap();
            Ok(Structure::Two(TwoOpStructure::new(dot, star)?))
        }
        k => Err(Error::Parse { line: 1, column: 1, message: format!("expected one or two tables, found {k}") }),
    }
}

pub fn format_table(t: &OperationTable) -> String {
    let mut out = format!("{}\n", t.order());
    for row in t.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_structure(s: &Structure) -> String {
    s.tables().into_iter().map(format_table).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_block_round_trip() {
        let text = "# oriented pair\n3\n1 1 1\n1 2 3\n3 3 3\n\n3\n1 3 1\n2 2 2\n3 1 3\n";
        let s = parse_structure(text).unwrap();
        assert!(matches!(s, Structure::Two(_)));
        assert_eq!(format!("# oriented pair\n{}", format_structure(&s)), text);
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_tables("2\n1 x\n2 1\n"), Err(Error::BadToken { line: 2, column: 3, token: "x".into() }));
        assert!(matches!(parse_tables("2\n1 3\n2 1\n"), Err(Error::Parse { line: 2, column: 3, .. })));
        assert!(matches!(parse_tables("2\n1 2\n"), Err(Error::Parse { .. })));
        assert_eq!(parse_tables("0\n"), Err(Error::NotAStructure));
    }
}
