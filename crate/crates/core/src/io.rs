//! Text format for permutation groups: a `degree n` line followed by one
//! generator per line in 1-based cycle notation. `#` starts a comment.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub fn write_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for x in g.generators() {
        out.push_str(&x.to_string());
        out.push('\n');
    }
    out
}

/// Parses lines of the group format; shared with block-structured files.
pub(crate) fn parse_group_lines<'a, I: Iterator<Item = (usize, &'a str)>>(lines: I) -> Result<PermGroup> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (n, raw) in lines {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let d = line
                    .strip_prefix("degree")
                    .and_then(|r| r.trim().parse::<usize>().ok())
                    .filter(|&d| d > 0)
                    .ok_or_else(|| Error::Parse(format!("line {}: expected 'degree n'", n + 1)))?;
                degree = Some(d);
            }
            Some(d) => gens.push(
                Permutation::parse_cycles(line, d)
                    .map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?,
            ),
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing 'degree' line".into()))?;
    PermGroup::new(degree, gens)
}

pub fn parse_group(text: &str) -> Result<PermGroup> {
    parse_group_lines(text.lines().enumerate())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_roundtrip() {
        let text = "degree 8\n(1,2,3,4)(5,6,7,8)\n(5,7)(6,8)\n()\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(write_group(&g), text);
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_group("# N16\ndegree 8  # points\n(1,2)\n").unwrap();
        assert_eq!(g.generators().len(), 1);
        assert!(parse_group("(1,2)\n").is_err());
        assert!(parse_group("degree 3\n(1,4)\n").is_err());
        assert!(parse_group("").is_err());
    }
}
