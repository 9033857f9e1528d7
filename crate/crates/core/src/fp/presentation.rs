use std::fmt;

use crate::error::{Error, Result};
use crate::fp::parse::{expand, parse_expr, split_top_level, Expr, Macros};
use crate::fp::todd_coxeter::{enumerate_cosets, CosetTable};
use crate::fp::word::Word;
use crate::perm::Permutation;

/// A group presentation `⟨generators | relators⟩` with optional named
/// abbreviations usable inside relators.
#[derive(Clone, Debug)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Expr>,
    macros: Macros,
}

impl Presentation {
    pub fn new<S: AsRef<str>>(generators: &[S]) -> Self {
        Presentation {
            generators: generators.iter().map(|s| s.as_ref().to_string()).collect(),
            relators: Vec::new(),
            macros: Macros::default(),
        }
    }

    /// Builds a presentation from a comma separated relator list.
    pub fn from_relators<S: AsRef<str>>(generators: &[S], relators: &str, defs: &[&str]) -> Result<Self> {
        let mut p = Presentation::new(generators);
        for d in defs {
            p.macros.parse_def(d)?;
        }
        p.add_relators(relators)?;
        Ok(p)
    }

    pub fn add_relators(&mut self, text: &str) -> Result<()> {
        for r in split_top_level(text) {
            let e = parse_expr(&r)?;
            expand(&e, &self.generators, &self.macros)?;
            self.relators.push(e);
        }
        Ok(())
    }

    pub fn add_relator_expr(&mut self, e: Expr) -> Result<()> {
        expand(&e, &self.generators, &self.macros)?;
        self.relators.push(e);
        Ok(())
    }

    pub fn add_relator_word(&mut self, w: &Word) {
        self.relators.push(Expr::from_word(w, &self.generators));
    }

    /// Parses the line format: `gens: a, b`, `rel: a^5, (ab)^2`,
    /// `def: t = a b a`, with `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        let mut macros = Macros::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: expected 'key: value'", n + 1)))?;
            match key.trim() {
                "gens" | "generators" => {
                    gens = Some(
                        rest.split(',')
                            .map(|s| s.trim().to_string())
                            .filter(|s| !s.is_empty())
                            .collect(),
                    )
                }
                "rel" | "rels" | "relators" => rels.push(rest.to_string()),
                "def" => macros.parse_def(rest)?,
                other => return Err(Error::Parse(format!("line {}: unknown key {other:?}", n + 1))),
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse("missing 'gens:' line".into()))?;
        let mut p = Presentation {
            generators: gens,
            relators: Vec::new(),
            macros,
        };
        for r in rels {
            p.add_relators(&r)?;
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn relator_exprs(&self) -> &[Expr] {
        &self.relators
    }

    pub fn macros(&self) -> &Macros {
        &self.macros
    }

    pub fn relators(&self) -> Vec<Word> {
        self.relators
            .iter()
            .map(|e| expand(e, &self.generators, &self.macros).expect("validated on insert"))
            .collect()
    }

    /// Parses a word in this presentation's generators and abbreviations.
    pub fn word(&self, text: &str) -> Result<Word> {
        expand(&parse_expr(text)?, &self.generators, &self.macros)
    }

    pub fn expand(&self, e: &Expr) -> Result<Word> {
        expand(e, &self.generators, &self.macros)
    }

    pub fn enumerate(&self, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
        enumerate_cosets(self.generators.len(), &self.relators(), subgroup, max_cosets)
    }

    /// Order of the presented group, if it is finite within the coset bound.
    pub fn order(&self, max_cosets: usize) -> Result<usize> {
        Ok(self.enumerate(&[], max_cosets)?.index())
    }

    /// Relators (as written) that do not evaluate to the identity.
    pub fn failing_relators(&self, images: &[Permutation]) -> Result<Vec<String>> {
        if images.len() != self.generators.len() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                self.generators.len(),
                images.len()
            )));
        }
        let degree = images.first().map_or(0, |p| p.degree());
        let inverses: Vec<Permutation> = images.iter().map(|p| p.inverse()).collect();
        Ok(self
            .relators
            .iter()
            .zip(self.relators())
            .filter(|(_, w)| !w.evaluate_with(images, &inverses, degree).is_identity())
            .map(|(e, _)| e.to_string())
            .collect())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(", "))?;
        for d in self.macros.source_lines() {
            writeln!(f, "def: {d}")?;
        }
        for r in &self.relators {
            writeln!(f, "rel: {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_roundtrip() {
        let text = "# A5\ngens: a, b\nrel: a^5, b^2\nrel: (ab)^3\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.order(1000).unwrap(), 60);
        let q = Presentation::parse(&p.to_string()).unwrap();
        assert_eq!(q.relators(), p.relators());
    }

    #[test]
    fn relator_check() {
        let p = Presentation::from_relators(&["a", "b"], "a^5, b^2, (ab)^3", &[]).unwrap();
        let a = Permutation::parse_cycles("(1,2,3,4,5)", 5).unwrap();
        let b = Permutation::parse_cycles("(1,2)(3,4)", 5).unwrap();
        assert!(p.failing_relators(&[a.clone(), b]).unwrap().is_empty());
        let b = Permutation::parse_cycles("(1,2)", 5).unwrap();
        assert_eq!(p.failing_relators(&[a, b]).unwrap(), vec!["(a b)^3".to_string()]);
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(Presentation::parse("gens: a\nfoo: a").is_err());
        assert!(Presentation::parse("rel: a^2").is_err());
    }
}
