//! The Cayley table text format: optional leading `#` comment lines, a line
//! with the order `n`, then `n` lines of `n` whitespace-separated indices.

use super::{validate_table, CayleyGroup};
use crate::error::{Error, Result};

pub fn parse_table(text: &str) -> Result<CayleyGroup> {
    let mut lines = text.lines().skip_while(|l| l.trim_start().starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let n: usize = header.trim().parse().map_err(|_| Error::Parse(format!("bad order line {header:?}")))?;
    let mut table = Vec::with_capacity(n * n);
    for r in 0..n {
        let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
        let before = table.len();
        for tok in line.split_whitespace() {
            let x: u32 = tok.parse().map_err(|_| Error::Parse(format!("bad entry {tok:?} in row {r}")))?;
            table.push(x);
        }
        if table.len() - before != n {
            return Err(Error::Parse(format!("row {r} has {} entries, expected {n}", table.len() - before)));
        }
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::Parse("trailing content after table".into()));
    }
    validate_table(n, table)
}

/// Serializes with the identity relabelled to `0` and the other elements
/// keeping their relative order.
pub fn write_table(g: &CayleyGroup) -> String {
    let n = g.order();
    let e = g.identity();
    let perm: Vec<usize> = (0..n).map(|x| if x == e { 0 } else if x < e { x + 1 } else { x }).collect();
    let h = g.relabel(&perm);
    let mut out = String::with_capacity(n * n * 4);
    out.push_str(&n.to_string());
    out.push('\n');
    for a in 0..n {
        let row: Vec<String> = h.row(a).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::families;
    use super::*;

    #[test]
    fn round_trip() {
        let g = families::dihedral(4);
        let text = write_table(&g);
        let h = parse_table(&format!("# D4\n{text}")).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn identity_moves_to_front() {
        let g = families::cyclic(3).relabel(&[2, 0, 1]);
        let h = parse_table(&write_table(&g)).unwrap();
        assert_eq!(h.identity(), 0);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_table("2\n0 1\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_table("2\n0 1\n1 x\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_table("2\n0 1\n1 1\n"), Err(Error::NotAGroup(_))));
    }
}
