//! Text interchange format and Graphviz output.
//!
//! ```text
//! semigroup v1 3
//! labels e a z
//! 0 1 2
//! 1 0 2
//! 2 2 2
//! ```
//!
//! The `labels` line is optional. Row `i` lists the products `i·j`. Lines
//! starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::green::{GreenData, NaturalOrder};
use crate::semigroup::Semigroup;
use crate::sublat::SubLattice;

pub const HEADER: &str = "semigroup v1";

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// A syntactically valid table that has not been checked for associativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTable {
    pub order: usize,
    pub labels: Option<Vec<String>>,
    pub table: Vec<usize>,
}

/// Words of a line with their 1-based starting columns.
fn words(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.char_indices()
        .filter(|&(i, c)| !c.is_whitespace() && (i == 0 || line[..i].ends_with(char::is_whitespace)))
        .map(move |(i, _)| {
            let w = line[i..].split_whitespace().next().unwrap_or("");
            (line[..i].chars().count() + 1, w)
        })
}

/// Parses the syntax only; line and column numbers are 1-based.
pub fn parse_table(text: &str) -> Result<RawTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (ln, head) = lines.next().ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let head_words: Vec<(usize, &str)> = words(head).collect();
    match head_words[..] {
        [(_, "semigroup"), (c, v), (oc, n)] => {
            if v != "v1" {
                return Err(parse_err(ln, c, format!("unsupported version `{v}`")));
            }
            let order: usize = n.parse().map_err(|_| parse_err(ln, oc, format!("bad order `{n}`")))?;
            if order == 0 {
                return Err(parse_err(ln, oc, "order must be positive"));
            }
            let mut labels = None;
            let mut table = Vec::with_capacity(order * order);
            let mut rows = 0;
            for (ln, line) in lines {
                let ws: Vec<(usize, &str)> = words(line).collect();
                if ws.first().map(|w| w.1) == Some("labels") {
                    if labels.is_some() || rows > 0 {
                        return Err(parse_err(ln, ws[0].0, "labels must come once, before the rows"));
                    }
                    if ws.len() - 1 != order {
                        return Err(parse_err(ln, 1, format!("expected {order} labels, found {}", ws.len() - 1)));
                    }
                    labels = Some(ws[1..].iter().map(|w| w.1.to_string()).collect());
                    continue;
                }
                if rows == order {
                    return Err(parse_err(ln, 1, format!("more than {order} rows")));
                }
                if ws.len() != order {
                    let col = ws.get(order).map_or(line.len() + 1, |w| w.0);
                    return Err(parse_err(ln, col, format!("row has {} entries, expected {order}", ws.len())));
                }
                for (c, w) in ws {
                    let v: usize = w.parse().map_err(|_| parse_err(ln, c, format!("bad entry `{w}`")))?;
                    if v >= order {
                        return Err(parse_err(ln, c, format!("entry {v} out of range")));
                    }
                    table.push(v);
                }
                rows += 1;
            }
            if rows != order {
                return Err(parse_err(text.lines().count() + 1, 1, format!("expected {order} rows, found {rows}")));
            }
            Ok(RawTable { order, labels, table })
        }
        _ => Err(parse_err(ln, 1, format!("expected `{HEADER} <order>`"))),
    }
}

/// Parses and validates a semigroup.
pub fn parse_semigroup(text: &str) -> Result<Semigroup> {
    let raw = parse_table(text)?;
    Semigroup::from_flat(raw.order, raw.table, raw.labels)
}

pub fn emit_semigroup(s: &Semigroup) -> String {
    let mut out = format!("{HEADER} {}\n", s.order());
    if let Some(labels) = s.labels() {
        out.push_str("labels");
        for l in labels {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
    }
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A bottom-to-top Hasse diagram; `edges` are `(lower, upper)` pairs.
fn dot(name: &str, nodes: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(name));
    for (i, n) in nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(n));
    }
    for &(a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// The natural partial order of an inverse semigroup.
pub fn natural_order_dot(s: &Semigroup) -> Result<String> {
    let order = NaturalOrder::compute(s)?;
    let nodes: Vec<String> = s.elements().map(|x| s.label(x)).collect();
    Ok(dot("natural_order", &nodes, &order.hasse()))
}

/// Members of a subsemigroup lattice, labelled by their elements.
pub fn sub_lattice_dot(l: &SubLattice) -> String {
    let s = l.universe();
    let nodes: Vec<String> = l
        .members()
        .iter()
        .map(|m| format!("{{{}}}", m.iter().map(|x| s.label(x)).collect::<Vec<_>>().join(",")))
        .collect();
    dot("sub", &nodes, &l.hasse())
}

/// The partial order of J-classes.
pub fn j_order_dot(s: &Semigroup) -> String {
    let green = GreenData::compute(s);
    let nodes: Vec<String> = green
        .j_classes()
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(|x| s.label(x)).collect::<Vec<_>>().join(",")))
        .collect();
    dot("j_order", &nodes, &green.j_hasse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{brandt5, cyclic_group, inflate_at_identity};

    #[test]
    fn round_trip() {
        for s in [brandt5(), cyclic_group(4).unwrap(), inflate_at_identity(&cyclic_group(3).unwrap()).unwrap()] {
            assert_eq!(parse_semigroup(&emit_semigroup(&s)).unwrap(), s);
        }
    }

    #[test]
    fn parse_errors_point_at_the_problem() {
        let short = "semigroup v1 2\n0 1\n1\n";
        assert!(matches!(parse_table(short), Err(Error::Parse { line: 3, .. })));
        let bad = "semigroup v1 2\n0 1\n1 x\n";
        assert!(matches!(parse_table(bad), Err(Error::Parse { line: 3, column: 3, .. })));
        assert!(matches!(parse_table("semigroup v2 2\n"), Err(Error::Parse { line: 1, column: 11, .. })));
        assert!(matches!(parse_table(""), Err(Error::Parse { line: 1, .. })));
        let range = "semigroup v1 2\n0 2\n1 0\n";
        assert!(matches!(parse_table(range), Err(Error::Parse { line: 2, column: 3, .. })));
        let labels = "semigroup v1 2\nlabels a\n0 1\n1 0\n";
        assert!(matches!(parse_table(labels), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn semantic_errors_come_from_validation() {
        let text = "semigroup v1 2\n1 0\n0 0\n";
        assert!(matches!(parse_semigroup(text), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn brandt_natural_order_dot() {
        let d = natural_order_dot(&brandt5()).unwrap();
        assert_eq!(d.matches("[label=").count(), 5);
        assert_eq!(d.matches(" -> ").count(), 4);
        assert_eq!(d.matches("n0 -> ").count(), 4);
    }
}
