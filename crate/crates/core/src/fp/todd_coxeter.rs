//! Coset enumeration (HLT strategy with coincidence processing and a
//! lookahead pass when the table fills up).

use crate::error::{Error, Result};
use crate::fp::word::{Letter, Word};
use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

/// Default bound on the number of simultaneously allocated cosets.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct CosetTable {
    ngens: usize,
    /// `rows[c * 2n + col]`, column `2g` for `g`, `2g + 1` for `g⁻¹`.
    rows: Vec<u32>,
    index: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    /// Image of coset `c` under generator `g` (or its inverse).
    pub fn act(&self, c: usize, g: usize, inverse: bool) -> usize {
        self.rows[c * 2 * self.ngens + 2 * g + inverse as usize] as usize
    }

    /// Coset reached from `c` by reading `w`.
    pub fn trace(&self, c: usize, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(c, |c, &l| self.act(c, (l.unsigned_abs() - 1) as usize, l < 0))
    }

    /// Action of each generator on the cosets (coset 0 is the subgroup).
    pub fn permutations(&self) -> Vec<Permutation> {
        (0..self.ngens)
            .map(|g| {
                let images = (0..self.index).map(|c| self.act(c, g, false) as u32).collect();
                Permutation::from_images_unchecked(images)
            })
            .collect()
    }
}

struct Enumerator<'a> {
    ncols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    relators: &'a [Vec<usize>],
    queue: Vec<u32>,
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters()
        .iter()
        .map(|&l: &Letter| 2 * (l.unsigned_abs() as usize - 1) + (l < 0) as usize)
        .collect()
}

impl<'a> Enumerator<'a> {
    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.rows[c as usize * self.ncols + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.rows[c as usize * self.ncols + col] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> Option<u32> {
        if self.allocated() >= self.max {
            return None;
        }
        let c = self.allocated() as u32;
        self.parent.push(c);
        self.rows.extend(std::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        Some(c)
    }

    fn define(&mut self, c: u32, col: usize) -> bool {
        match self.new_coset() {
            Some(d) => {
                self.set(c, col, d);
                self.set(d, col ^ 1, c);
                true
            }
            None => false,
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for col in 0..self.ncols {
                let d = self.get(e, col);
                if d == NONE {
                    continue;
                }
                self.set(d, col ^ 1, NONE);
                let mu = self.rep(e);
                let nu = self.rep(d);
                let mx = self.get(mu, col);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let ny = self.get(nu, col ^ 1);
                    if ny != NONE {
                        self.merge(mu, ny);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans `w` at coset `c`, filling gaps when `fill` is set. Returns
    /// false only if a definition was needed and the table is full.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> bool {
        if w.is_empty() {
            return true;
        }
        let (mut f, mut i) = (c, 0usize);
        let (mut b, mut j) = (c, w.len());
        loop {
            while i < j {
                let nx = self.get(f, w[i]);
                if nx == NONE {
                    break;
                }
                f = nx;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i {
                let nx = self.get(b, w[j - 1] ^ 1);
                if nx == NONE {
                    break;
                }
                b = nx;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return true;
            }
            if !fill || !self.define(f, w[i]) {
                return !fill;
            }
        }
    }

    fn lookahead(&mut self) {
        let rels = self.relators;
        let mut c = 0;
        while c < self.allocated() {
            for r in rels {
                if !self.is_live(c as u32) {
                    break;
                }
                self.scan(c as u32, r, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets consecutively; returns the new position of
    /// the first live coset at or after `cursor`.
    fn compact(&mut self, cursor: usize) -> usize {
        let n = self.allocated();
        let mut new_index = vec![NONE; n];
        let mut next = 0u32;
        let mut new_cursor = None;
        for c in 0..n {
            if c >= cursor && new_cursor.is_none() && self.is_live(c as u32) {
                new_cursor = Some(next as usize);
            }
            if self.is_live(c as u32) {
                new_index[c] = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n {
            if new_index[c] == NONE {
                continue;
            }
            for col in 0..self.ncols {
                let v = self.get(c as u32, col);
                rows.push(if v == NONE { NONE } else { new_index[self.rep(v) as usize] });
            }
        }
        self.rows = rows;
        self.parent = (0..next).collect();
        self.live = next as usize;
        new_cursor.unwrap_or(next as usize)
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in `⟨ngens | relators⟩`.
pub fn enumerate_cosets(
    ngens: usize,
    relators: &[Word],
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable> {
    let rels: Vec<Vec<usize>> = relators.iter().map(|r| columns(&r.cyclically_reduced())).collect();
    for r in relators.iter().chain(subgroup) {
        if r.max_generator().is_some_and(|g| g >= ngens) {
            return Err(Error::Invalid("word uses an undeclared generator".into()));
        }
    }
    let ncols = 2 * ngens;
    let mut en = Enumerator {
        ncols,
        rows: Vec::new(),
        parent: Vec::new(),
        live: 0,
        max: max_cosets.max(1),
        relators: &rels,
        queue: Vec::new(),
    };
    en.new_coset();
    let overflow = || {
        Error::Resource(format!(
            "coset enumeration exceeded {max_cosets} cosets"
        ))
    };
    for h in subgroup {
        let cols = columns(h);
        while !en.scan(0, &cols, true) {
            en.lookahead();
            let before = en.allocated();
            en.compact(0);
            if en.allocated() == before {
                return Err(overflow());
            }
        }
    }
    let mut c = 0usize;
    'cosets: while c < en.allocated() {
        if !en.is_live(c as u32) {
            c += 1;
            continue;
        }
        let mut complete = true;
        for r in &rels {
            if !en.scan(c as u32, r, true) {
                complete = false;
                break;
            }
            if !en.is_live(c as u32) {
                continue 'cosets;
            }
        }
        if complete {
            for col in 0..ncols {
                if en.get(c as u32, col) == NONE && !en.define(c as u32, col) {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            c += 1;
            continue;
        }
        en.lookahead();
        let before = en.allocated();
        c = en.compact(c);
        if en.allocated() == before {
            return Err(overflow());
        }
    }
    en.compact(0);
    let index = en.allocated();
    debug_assert!(en.rows.iter().all(|&v| v != NONE));
    Ok(CosetTable {
        ngens,
        rows: en.rows,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::parse::{expand, parse_expr, Macros};
    use crate::group::PermGroup;

    fn words(gens: &[&str], rels: &[&str]) -> Vec<Word> {
        let g: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        rels.iter()
            .map(|r| expand(&parse_expr(r).unwrap(), &g, &Macros::default()).unwrap())
            .collect()
    }

    #[test]
    fn cyclic() {
        let r = words(&["a"], &["a^5"]);
        assert_eq!(enumerate_cosets(1, &r, &[], 100).unwrap().index(), 5);
    }

    #[test]
    fn a5_over_cyclic_five() {
        let r = words(&["a", "b"], &["a^5", "b^2", "(ab)^3"]);
        let t = enumerate_cosets(2, &r, &[Word::gen(0)], 1000).unwrap();
        assert_eq!(t.index(), 12);
        let t = enumerate_cosets(2, &r, &[], 1000).unwrap();
        assert_eq!(t.index(), 60);
        let g = PermGroup::new(60, t.permutations()).unwrap();
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn trivial_group_collapses() {
        let r = words(&["a", "b"], &["a^2", "b^3", "ab"]);
        assert_eq!(enumerate_cosets(2, &r, &[], 100).unwrap().index(), 1);
    }

    #[test]
    fn overflow_is_reported() {
        let r = words(&["a", "b"], &["a^2"]);
        assert!(matches!(
            enumerate_cosets(2, &r, &[], 50),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn tight_bound_survives_via_lookahead() {
        // Coxeter presentation of S5; |S5| = 120.
        let r = words(
            &["a", "b", "c", "d"],
            &["a^2", "b^2", "c^2", "d^2", "(ab)^3", "(bc)^3", "(cd)^3", "(ac)^2", "(ad)^2", "(bd)^2"],
        );
        let t = enumerate_cosets(4, &r, &[], 400).unwrap();
        assert_eq!(t.index(), 120);
    }
}
