//! Amalgam files: `[A1]`, `[A2]` and `[B]` group blocks followed by one
//! `pi2:` line per generator of `B`, each a word in `g_1, g_2, …` (the
//! generators of `A2`).

use std::collections::HashMap;

use crate::amalgam::Amalgam;
use crate::error::{Error, Result};
use crate::fp::{parse_expr, Word};
use crate::fp::parse::{expand, Macros};
use crate::group::PermGroup;
use crate::io::{parse_group_lines, write_group};
use crate::perm::Permutation;

fn generator_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("g_{i}")).collect()
}

pub fn parse_amalgam(text: &str) -> Result<Amalgam> {
    let mut blocks: HashMap<&str, Vec<(usize, &str)>> = HashMap::new();
    let mut pi2_lines = Vec::new();
    let mut current: Option<&str> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if !matches!(name, "A1" | "A2" | "B") {
                return Err(Error::Parse(format!("line {}: unknown block [{name}]", n + 1)));
            }
            current = Some(name);
            blocks.entry(name).or_default();
        } else if let Some(word) = line.strip_prefix("pi2:") {
            pi2_lines.push(word.trim().to_string());
        } else if let Some(block) = current {
            blocks.get_mut(block).unwrap().push((n, raw));
        } else if !line.is_empty() {
            return Err(Error::Parse(format!("line {}: text outside a block", n + 1)));
        }
    }
    let take = |name: &str| -> Result<PermGroup> {
        let lines = blocks
            .get(name)
            .ok_or_else(|| Error::Parse(format!("missing [{name}] block")))?;
        parse_group_lines(lines.iter().copied())
    };
    let (a1, a2, b) = (take("A1")?, take("A2")?, take("B")?);
    if pi2_lines.len() != b.generators().len() {
        return Err(Error::Parse(format!(
            "{} pi2 lines for {} generators of B",
            pi2_lines.len(),
            b.generators().len()
        )));
    }
    let names = generator_names(a2.generators().len());
    let images = pi2_lines
        .iter()
        .map(|w| {
            let word = expand(&parse_expr(w)?, &names, &Macros::default())?;
            Ok(word.evaluate(a2.generators(), a2.degree()))
        })
        .collect::<Result<Vec<_>>>()?;
    Amalgam::new(a1, a2, b, images)
}

/// Shortest words for every element of `g` in its generators.
fn words_by_search(g: &PermGroup, wanted: &[Permutation]) -> Result<Vec<Word>> {
    let mut found: HashMap<Permutation, Word> = HashMap::new();
    let id = g.identity();
    found.insert(id.clone(), Word::identity());
    let mut frontier = vec![id];
    let inverses: Vec<Permutation> = g.generators().iter().map(|x| x.inverse()).collect();
    while !wanted.iter().all(|w| found.contains_key(w)) {
        if frontier.is_empty() {
            return Err(Error::NotSubgroup);
        }
        let mut next = Vec::new();
        for x in &frontier {
            let w = found[x].clone();
            for (i, (gen, inv)) in g.generators().iter().zip(&inverses).enumerate() {
                for (p, letter) in [(gen, Word::gen(i)), (inv, Word::gen(i).inverse())] {
                    let y = x * p;
                    if !found.contains_key(&y) {
                        found.insert(y.clone(), w.concat(&letter));
                        next.push(y);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(wanted.iter().map(|w| found[w].clone()).collect())
}

pub fn write_amalgam(am: &Amalgam) -> Result<String> {
    let mut out = String::new();
    for (name, g) in [("A1", am.a1()), ("A2", am.a2()), ("B", am.b())] {
        out.push_str(&format!("[{name}]\n"));
        out.push_str(&write_group(g));
    }
    let names = generator_names(am.a2().generators().len());
    for w in words_by_search(am.a2(), am.pi2().gen_images())? {
        let text = w.display(&names).to_string();
        out.push_str(&format!("pi2: {}\n", if text.is_empty() { "1".into() } else { text }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::find_row;

    #[test]
    fn roundtrip_catalog_row() {
        let am = find_row("Q2^6").unwrap().amalgam();
        let text = write_amalgam(am).unwrap();
        let back = parse_amalgam(&text).unwrap();
        assert_eq!(back.pi2().gen_images(), am.pi2().gen_images());
        assert_eq!(back.degree(), (5, 2));
    }

    #[test]
    fn malformed() {
        assert!(parse_amalgam("[A1]\ndegree 2\n(1,2)\n").is_err());
        assert!(parse_amalgam("[C]\n").is_err());
    }
}
