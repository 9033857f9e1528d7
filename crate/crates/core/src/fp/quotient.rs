//! Finite completions by adding one relator to a stabilizer presentation
//! and enumerating the cosets of the vertex subgroup.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::parse::Expr;
use crate::fp::presentation::Presentation;
use crate::fp::word::Word;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A finite quotient acting on the cosets of the vertex subgroup, in which
/// both stabilizers embed.
#[derive(Clone, Debug)]
pub struct Completion {
    pub extra_relator: String,
    pub group: PermGroup,
    /// Images of the presentation's generators.
    pub generator_images: Vec<Permutation>,
    pub a1: PermGroup,
    pub a2: PermGroup,
    pub b: PermGroup,
}

/// Serializable summary of a completion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionSummary {
    pub extra_relator: String,
    pub order: u128,
    pub vertices: usize,
    pub a1_order: u128,
    pub a2_order: u128,
    pub b_order: u128,
}

impl Completion {
    pub fn summary(&self) -> CompletionSummary {
        CompletionSummary {
            extra_relator: self.extra_relator.clone(),
            order: self.group.order(),
            vertices: self.group.degree(),
            a1_order: self.a1.order(),
            a2_order: self.a2.order(),
            b_order: self.b.order(),
        }
    }
}

/// Stabilizer data for the search: `vertex` and `edge` generate the two
/// stabilizers, `common` generates their intersection.
#[derive(Clone, Debug)]
pub struct StabilizerWords {
    pub vertex: Vec<Word>,
    pub edge: Vec<Word>,
    pub common: Vec<Word>,
    pub b_order: u128,
}

/// Cyclically reduced words over `gens` of length `1..=max_len` using
/// every generator in `must_use`, one per class under rotation and
/// inversion, shortest first.
pub fn word_pool(ngens: usize, must_use: &[usize], max_len: usize) -> Vec<Word> {
    let letters: Vec<i32> = (1..=ngens as i32).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for len in 1..=max_len {
        let mut cur = vec![0usize; len];
        'words: loop {
            let w: Vec<i32> = cur.iter().map(|&i| letters[i]).collect();
            let reduced = len == 1 || (0..len).all(|i| w[i] != -w[(i + 1) % len]);
            let uses = must_use.iter().all(|&g| w.iter().any(|l| l.unsigned_abs() as usize == g + 1));
            if reduced && uses {
                let mut best: Option<Vec<i32>> = None;
                for rot in 0..len {
                    let r: Vec<i32> = w[rot..].iter().chain(&w[..rot]).copied().collect();
                    let inv: Vec<i32> = r.iter().rev().map(|l| -l).collect();
                    for v in [r, inv] {
                        if best.as_ref().is_none_or(|b| v > *b) {
                            best = Some(v);
                        }
                    }
                }
                let canon = best.expect("nonempty");
                if seen.insert(canon.clone()) {
                    out.push(Word(canon));
                }
            }
            let mut i = len;
            loop {
                if i == 0 {
                    break 'words;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < letters.len() {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
    out
}

/// Candidate extra relators `w^k`, ordered by total length then exponent.
pub fn relator_pool(ngens: usize, must_use: &[usize], max_len: usize, exponents: &[i64]) -> Vec<Word> {
    let mut out: Vec<(usize, i64, Word)> = Vec::new();
    for w in word_pool(ngens, must_use, max_len) {
        for &k in exponents {
            out.push((w.len() * k.unsigned_abs() as usize, k, w.pow(k)));
        }
    }
    out.sort_by_key(|x| (x.0, x.1));
    out.into_iter().map(|(_, _, w)| w).collect()
}

/// Tests one extra relator: returns the completion if the vertex subgroup
/// has finite index within `max_cosets` and both stabilizers embed.
pub fn try_completion(
    p: &Presentation,
    stab: &StabilizerWords,
    extra: &Word,
    max_cosets: usize,
) -> Result<Option<Completion>> {
    let mut q = p.clone();
    q.add_relator_word(extra);
    let table = match q.enumerate(&stab.vertex, max_cosets) {
        Ok(t) => t,
        Err(Error::Resource(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let n = table.index();
    if n < 2 {
        return Ok(None);
    }
    let images = table.permutations();
    let inverses: Vec<Permutation> = images.iter().map(Permutation::inverse).collect();
    let eval = |ws: &[Word]| -> Result<PermGroup> {
        PermGroup::new(n, ws.iter().map(|w| w.evaluate_with(&images, &inverses, n)).collect())
    };
    let b = eval(&stab.common)?;
    if b.order() != stab.b_order {
        return Ok(None);
    }
    let a1 = eval(&stab.vertex)?;
    let a2 = eval(&stab.edge)?;
    if a1.order() != 5 * stab.b_order || a2.order() != 2 * stab.b_order {
        return Ok(None);
    }
    let group = PermGroup::new(n, images.clone())?;
    Ok(Some(Completion {
        extra_relator: Expr::from_word(extra, p.generators()).to_string(),
        group,
        generator_images: images,
        a1,
        a2,
        b,
    }))
}

/// Tries each pool relator in order and returns the first `limit`
/// completions.
pub fn quotient_search(
    p: &Presentation,
    stab: &StabilizerWords,
    pool: &[Word],
    max_cosets: usize,
    limit: usize,
) -> Result<Vec<Completion>> {
    let mut out = Vec::new();
    for w in pool {
        if out.len() >= limit {
            break;
        }
        if let Some(c) = try_completion(p, stab, w, max_cosets)? {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q11() -> (Presentation, StabilizerWords) {
        let p = Presentation::from_relators(&["a", "b"], "a^5, b^2", &[]).unwrap();
        let stab = StabilizerWords {
            vertex: vec![p.word("a").unwrap()],
            edge: vec![p.word("b").unwrap()],
            common: vec![],
            b_order: 1,
        };
        (p, stab)
    }

    #[test]
    fn icosahedral_quotient() {
        let (p, stab) = q11();
        let c = try_completion(&p, &stab, &p.word("(ab)^3").unwrap(), 1000).unwrap().unwrap();
        assert_eq!(c.group.degree(), 12);
        assert_eq!(c.group.order(), 60);
    }

    #[test]
    fn infinite_triangle_group_overflows() {
        // (2,5,5) is a hyperbolic triangle group.
        let (p, stab) = q11();
        assert!(try_completion(&p, &stab, &p.word("(ab)^5").unwrap(), 20_000).unwrap().is_none());
    }

    #[test]
    fn killing_the_vertex_generator_is_rejected() {
        let (p, stab) = q11();
        assert!(try_completion(&p, &stab, &p.word("a").unwrap(), 1000).unwrap().is_none());
    }

    #[test]
    fn pool_is_deterministic_and_uses_both() {
        let pool = word_pool(2, &[0, 1], 3);
        assert!(pool.iter().all(|w| w.letters().iter().any(|l| l.abs() == 1) && w.letters().iter().any(|l| l.abs() == 2)));
        assert_eq!(pool, word_pool(2, &[0, 1], 3));
        assert_eq!(word_pool(2, &[0, 1], 2).len(), 2);
    }
}
