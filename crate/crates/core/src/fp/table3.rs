//! Presentations of the vertex and edge stabilizers for the amalgams with
//! `s ≤ 3`, and their certification by coset enumeration.
//!
//! Each row lists its relators in the generators `a`, `b` and a few more,
//! together with words `X` generating `B`. Relators are split after
//! rewriting the `X` words as fresh names: `R` mentions only `X`, `S`
//! mentions `a`, `T` mentions `b`.

use serde::{Deserialize, Serialize};

use crate::amalgam::catalog::find_row;
use crate::error::{Error, Result};
use crate::fp::parse::{parse_expr, Expr};
use crate::fp::presentation::Presentation;
use crate::fp::quotient::StabilizerWords;
use crate::fp::word::Word;
use crate::group::PermGroup;
use crate::grpid::is_isomorphic;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug)]
pub struct Table3Row {
    pub label: &'static str,
    pub generators: &'static [&'static str],
    pub relators: &'static str,
    /// Words generating `B`, in the row's generators.
    pub x_words: &'static [&'static str],
}

const AB: &[&str] = &["a", "b"];
const ABC: &[&str] = &["a", "b", "c"];
const ABCD: &[&str] = &["a", "b", "c", "d"];
const ABCDEF: &[&str] = &["a", "b", "c", "d", "e", "f"];
const ABCDEFG: &[&str] = &["a", "b", "c", "d", "e", "f", "g"];

pub const TABLE3: &[Table3Row] = &[
    Table3Row { label: "Q1^1", generators: AB, relators: "a^5, b^2", x_words: &[] },
    Table3Row {
        label: "Q1^2",
        generators: ABC,
        relators: "a^5, b^2, c^2, (ac)^2, (bc)^2",
        x_words: &["c"],
    },
    Table3Row { label: "Q1^3", generators: AB, relators: "a^5, b^4, (b^2 a)^2", x_words: &["b^2"] },
    Table3Row {
        label: "Q1^4",
        generators: ABC,
        relators: "a^5, b^4, c^2, (bc)^2, (ab^2)^2, [a,c]",
        x_words: &["b^2", "c"],
    },
    Table3Row {
        label: "Q2^1",
        generators: ABC,
        relators: "a^5, b^2, c^4, a^c a^3, [b,c]",
        x_words: &["c"],
    },
    Table3Row { label: "Q2^2", generators: AB, relators: "a^5, b^8, a^{b^2} a^3", x_words: &["b^2"] },
    Table3Row {
        label: "Q2^3",
        generators: ABC,
        relators: "a^5, b^2, c^4, a^c a^3, (cb)^2",
        x_words: &["c"],
    },
    Table3Row {
        label: "Q2^4",
        generators: ABC,
        relators: "a^5, b^4, c^4, a^c a^3, c^b c",
        x_words: &["c"],
    },
    Table3Row {
        label: "Q2^5",
        generators: ABCD,
        relators: "a^5, b^2, c^4, d^2, a^c a^3, [a,d], [b,c], [c,d], d^b c^2 d",
        x_words: &["c", "d"],
    },
    Table3Row {
        label: "Q2^6",
        generators: ABC,
        relators: "a^5, b^8, c^2, a^{b^2} a^3, b^c b^3, [a,c]",
        x_words: &["b^2", "c"],
    },
    Table3Row {
        label: "Q2^7",
        generators: ABCD,
        relators: "a^3, b^2, c^3, d^3, (dc)^2, (da)^2, c^a c^2 d, (bc)^2, b^d b c",
        x_words: &["c", "d"],
    },
    Table3Row {
        label: "Q2^8",
        generators: ABCD,
        relators: "a^3, b^2, c^3, d^3, (dc)^2, (da)^2, c^a c^2 d, [b,c], [b,d]",
        x_words: &["c", "d"],
    },
    Table3Row {
        label: "Q2^9",
        generators: ABCD,
        relators: "a^5, b^2, c^4, d^2, (cd)^3, [b,c], [b,d], a^3 c a d",
        x_words: &["c", "d"],
    },
    Table3Row {
        label: "Q3^1",
        generators: ABC,
        relators: "a^5, b^2, c^4, a^c a^3, [a, c^b], [c, c^b]",
        x_words: &["c", "c^b"],
    },
    Table3Row {
        label: "Q3^2",
        generators: ABCDEF,
        relators: "a^3, b^2, c^3, d^3, e^3, f^3, (fe)^2, [e,c], [f,c], [e,d], [f,d], (dc)^2, \
                   [e,a], [f,a], (ad)^2, c^a c^2 d, e^b c, f^b d",
        x_words: &["c", "d", "e", "f"],
    },
    Table3Row {
        label: "Q3^3",
        generators: ABCDEFG,
        relators: "c^3, d^3, e^2, f^3, g^3, (gf)^2, [f,c], [g,c], [f,d], [g,d], (dc)^2, (ef)^2, \
                   (ec)^2, e^g f^2 e, e^d c^2 e, a^3, [f,a], [g,a], (ad)^2, e e^a, b^2, f^2 c^b, \
                   g^2 d^b, (e b)^2",
        x_words: &["c", "d", "e", "f", "g"],
    },
    Table3Row {
        label: "Q3^4",
        generators: ABCDEF,
        relators: "c^3, d^3, e^3, f^3, (dc)^2, [c,e], [d,e], [c,f], [d,f], (fe)^2, b^4, c^2 e^b, \
                   d^2 f^b, e c^b, d^b e f^2, a^3, [c,a], [d,a], (af)^2, [b^2,a]",
        x_words: &["c", "d", "e", "f", "b^2"],
    },
    Table3Row {
        label: "Q3^5",
        generators: ABCDEF,
        relators: "c^4, d^2, e^4, f^2, (cd)^3, (ef)^3, [c,e], [c,f], [d,e], [d,f], a^5, a^3 c a d, \
                   [a,e], [a,f], b^2, c^b e^3, d^b f",
        x_words: &["c", "d", "e", "f"],
    },
];

const FRESH: &[&str] = &["x", "y", "z"];

pub fn table3_row(label: &str) -> Option<&'static Table3Row> {
    TABLE3.iter().find(|r| r.label == label)
}

/// The relators of a row with the `X` words renamed.
#[derive(Clone, Debug)]
pub struct Split {
    /// Names standing for the `X` words: the word itself when it is a
    /// generator, otherwise `x`, `y`, `z` in turn.
    pub x_names: Vec<String>,
    pub r: Vec<Expr>,
    pub s: Vec<Expr>,
    pub t: Vec<Expr>,
}

impl Split {
    /// Definitions of the fresh names, e.g. `x = b^2`.
    pub fn definitions(&self, row: &Table3Row) -> Vec<String> {
        self.x_names
            .iter()
            .zip(row.x_words)
            .filter(|(n, w)| n.as_str() != **w)
            .map(|(n, w)| format!("{n} = {w}"))
            .collect()
    }
}

fn presentation_of(gens: &[String], rels: &[Expr]) -> Result<Presentation> {
    let mut p = Presentation::new(gens);
    for r in rels {
        p.add_relator_expr(r.clone())?;
    }
    Ok(p)
}

impl Table3Row {
    pub fn presentation(&self) -> Presentation {
        Presentation::from_relators(self.generators, self.relators, &[]).expect("table literal")
    }

    pub fn split(&self) -> Result<Split> {
        let words: Vec<Expr> = self.x_words.iter().map(|w| parse_expr(w)).collect::<Result<_>>()?;
        let mut fresh = FRESH.iter();
        let x_names: Vec<String> = words
            .iter()
            .map(|w| match w {
                Expr::Name(n) => Ok(n.clone()),
                _ => fresh
                    .next()
                    .map(|n| n.to_string())
                    .ok_or_else(|| Error::Invalid("too many composite X words".into())),
            })
            .collect::<Result<_>>()?;
        let (mut r, mut s, mut t) = (Vec::new(), Vec::new(), Vec::new());
        for rel in self.presentation().relator_exprs() {
            let mut e = rel.clone();
            for (w, n) in words.iter().zip(&x_names) {
                if !matches!(w, Expr::Name(_)) {
                    e = e.substitute(w, n);
                }
            }
            let mut names = Vec::new();
            e.names(&mut names);
            let has = |g: &str| names.iter().any(|n| n == g);
            match (has("a"), has("b")) {
                (false, false) => r.push(e),
                (true, false) => s.push(e),
                (false, true) => t.push(e),
                (true, true) => {
                    return Err(Error::Invalid(format!("{}: relator {rel} mentions both a and b", self.label)))
                }
            }
        }
        if let Some(stray) = r.iter().find(|e| {
            let mut names = Vec::new();
            e.names(&mut names);
            names.iter().any(|n| !x_names.contains(n))
        }) {
            return Err(Error::Invalid(format!("{}: relator {stray} is outside X, a and b", self.label)));
        }
        Ok(Split { x_names, r, s, t })
    }

    /// `⟨X | R⟩` in the fresh names.
    pub fn edge_core_presentation(&self, split: &Split) -> Result<Presentation> {
        presentation_of(&split.x_names, &split.r)
    }

    /// `⟨X, a | R, S⟩` in the fresh names.
    pub fn vertex_presentation(&self, split: &Split, extra_r: &[Expr]) -> Result<Presentation> {
        let mut gens = split.x_names.clone();
        gens.push("a".into());
        let rels: Vec<Expr> = split.r.iter().chain(extra_r).chain(&split.s).cloned().collect();
        presentation_of(&gens, &rels)
    }

    /// `⟨X, b | R, T⟩` in the row's own generators other than `a`, with `X`
    /// read as words.
    pub fn edge_presentation(&self) -> Result<Presentation> {
        let gens: Vec<String> = self.generators.iter().filter(|g| **g != "a").map(|g| g.to_string()).collect();
        let mut p = Presentation::new(&gens);
        for rel in self.presentation().relator_exprs() {
            let mut names = Vec::new();
            rel.names(&mut names);
            if !names.iter().any(|n| n == "a") {
                p.add_relator_expr(rel.clone())?;
            }
        }
        Ok(p)
    }
}

impl Table3Row {
    /// The full presentation with `extra` relators over the `X` names,
    /// which are defined as abbreviations.
    pub fn completion_presentation(&self, split: &Split, extra: &[String]) -> Result<Presentation> {
        let defs = split.definitions(self);
        let defs: Vec<&str> = defs.iter().map(String::as_str).collect();
        let mut p = Presentation::from_relators(self.generators, self.relators, &defs)?;
        for r in extra {
            p.add_relators(r)?;
        }
        Ok(p)
    }

    /// Words for the vertex, edge and common stabilizers in `p`.
    pub fn stabilizer_words(&self, p: &Presentation, b_order: u128) -> Result<StabilizerWords> {
        let common: Vec<Word> = self.x_words.iter().map(|w| p.word(w)).collect::<Result<_>>()?;
        let with = |g: &str| -> Result<Vec<Word>> {
            let mut v = common.clone();
            v.push(p.word(g)?);
            Ok(v)
        };
        Ok(StabilizerWords { vertex: with("a")?, edge: with("b")?, common, b_order })
    }
}

/// Outcome of one enumeration: the index, or `None` on overflow.
fn try_order(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<Option<usize>> {
    match p.enumerate(subgroup, max_cosets) {
        Ok(t) => Ok(Some(t.index())),
        Err(Error::Resource(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Regular permutation representation of a finite presented group.
fn regular(p: &Presentation, max_cosets: usize) -> Result<Option<PermGroup>> {
    match p.enumerate(&[], max_cosets) {
        Ok(t) => Ok(Some(PermGroup::new(t.index(), t.permutations())?)),
        Err(Error::Resource(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn certify(group: Option<&PermGroup>, target: &PermGroup) -> Result<bool> {
    match group {
        Some(g) if g.order() == target.order() => Ok(is_isomorphic(g, target)?.is_some()),
        _ => Ok(false),
    }
}

/// Orders found by enumeration; `None` marks an overflow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartOrders {
    pub edge_core: Option<usize>,
    pub vertex: Option<usize>,
    pub edge: Option<usize>,
}

/// Certification of one row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationCheck {
    pub label: String,
    pub definitions: Vec<String>,
    pub r: Vec<String>,
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub b_order: usize,
    /// Orders with the relators exactly as split.
    pub literal: PartOrders,
    pub literal_orders_ok: bool,
    /// Isomorphism certificates `(B, A1, A2)` for the literal groups.
    pub literal_isomorphic: [bool; 3],
    /// Index of `⟨X⟩` in the edge group.
    pub edge_x_index: Option<usize>,
    /// Relators over `X` that hold in `B` and were added to `R` because the
    /// literal `⟨X | R⟩` is not `B`.
    pub completed_r: Vec<String>,
    /// Orders and certificates after adding `completed_r`.
    pub completed: PartOrders,
    pub completed_isomorphic: [bool; 3],
    /// Index of `⟨X⟩` in the completed vertex group.
    pub vertex_x_index: Option<usize>,
    /// All literal orders match and all literal certificates succeed.
    pub pass: bool,
}

/// Cyclically reduced words of length `len` over `n` generators, one per
/// class under rotation and inversion.
fn cyclic_words(n: usize, len: usize) -> Vec<Word> {
    let letters: Vec<i32> = (1..=n as i32).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut cur = vec![0usize; len];
    if len == 0 || n == 0 {
        return out;
    }
    loop {
        let w: Vec<i32> = cur.iter().map(|&i| letters[i]).collect();
        let reduced = (0..len).all(|i| w[i] != -w[(i + 1) % len]) || len == 1;
        if reduced {
            let mut variants = Vec::new();
            for rot in 0..len {
                let r: Vec<i32> = w[rot..].iter().chain(&w[..rot]).copied().collect();
                let inv: Vec<i32> = r.iter().rev().map(|l| -l).collect();
                variants.push(r);
                variants.push(inv);
            }
            let canon = variants.into_iter().max().expect("nonempty");
            if seen.insert(canon.clone()) {
                out.push(Word(canon));
            }
        }
        let mut i = len;
        loop {
            if i == 0 {
                return out;
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

/// Relators over `X` that hold in `B` (given by `x_images`), added to `R`
/// shortest first until `⟨X | R⟩` has order `|B|`, then pruned.
fn complete_edge_core(
    base: &Presentation,
    x_images: &[Permutation],
    b_order: usize,
    max_cosets: usize,
) -> Result<Option<Vec<Word>>> {
    let n = x_images.len();
    let degree = x_images.first().map_or(0, |p| p.degree());
    let bound = (64 * b_order).min(max_cosets).max(64);
    let order_with = |extra: &[Word]| -> Result<Option<usize>> {
        let mut p = base.clone();
        extra.iter().for_each(|w| p.add_relator_word(w));
        try_order(&p, &[], bound)
    };
    if order_with(&[])? == Some(b_order) {
        return Ok(Some(Vec::new()));
    }
    let mut added: Vec<Word> = Vec::new();
    let mut done = false;
    'outer: for len in 1..=6 {
        for w in cyclic_words(n, len) {
            if !w.evaluate(x_images, degree).is_identity() {
                continue;
            }
            let mut p = base.clone();
            added.iter().for_each(|a| p.add_relator_word(a));
            if let Ok(t) = p.enumerate(&[], bound) {
                let perms = t.permutations();
                if w.evaluate(&perms, t.index()).is_identity() {
                    continue;
                }
            }
            added.push(w);
            if order_with(&added)? == Some(b_order) {
                done = true;
                break 'outer;
            }
        }
    }
    if !done {
        return Ok(None);
    }
    let mut i = 0;
    while i < added.len() {
        let mut trial = added.clone();
        trial.remove(i);
        if order_with(&trial)? == Some(b_order) {
            added = trial;
        } else {
            i += 1;
        }
    }
    Ok(Some(added))
}

fn words_to_exprs(words: &[Word], names: &[String]) -> Vec<Expr> {
    words.iter().map(|w| Expr::from_word(w, names)).collect()
}

/// Certifies the three orders of a row and its isomorphism types against
/// the catalog amalgam with the same label.
pub fn verify_presentation_s_le_3(row: &Table3Row, max_cosets: usize) -> Result<PresentationCheck> {
    let cat = find_row(row.label).ok_or_else(|| Error::Invalid(format!("no catalog row {}", row.label)))?;
    let am = cat.amalgam();
    let (b_cat, a1_cat, a2_cat) = (am.b(), am.a1(), am.a2());
    let b_order = b_cat.order() as usize;
    let split = row.split()?;

    let core = row.edge_core_presentation(&split)?;
    let vertex = row.vertex_presentation(&split, &[])?;
    let edge = row.edge_presentation()?;

    let core_group = regular(&core, max_cosets)?;
    let vertex_group = regular(&vertex, max_cosets)?;
    let edge_group = regular(&edge, max_cosets)?;
    let literal = PartOrders {
        edge_core: core_group.as_ref().map(|g| g.degree()),
        vertex: vertex_group.as_ref().map(|g| g.degree()),
        edge: edge_group.as_ref().map(|g| g.degree()),
    };
    let literal_orders_ok = literal.edge_core == Some(b_order)
        && literal.vertex == Some(5 * b_order)
        && literal.edge == Some(2 * b_order);
    let literal_isomorphic = if literal_orders_ok {
        [
            certify(core_group.as_ref(), b_cat)?,
            certify(vertex_group.as_ref(), a1_cat)?,
            certify(edge_group.as_ref(), a2_cat)?,
        ]
    } else {
        [false; 3]
    };

    let x_in_edge: Vec<Word> = row.x_words.iter().map(|w| edge.word(w)).collect::<Result<_>>()?;
    let edge_x_index = try_order(&edge, &x_in_edge, max_cosets)?;

    let mut completed_r = Vec::new();
    let mut completed = literal.clone();
    let mut completed_isomorphic = literal_isomorphic;
    let mut vertex_x_index = None;
    let x_vertex: Vec<Word> = (0..split.x_names.len()).map(Word::gen).collect();
    if let Some(eg) = edge_group.as_ref().filter(|g| g.order() as usize == 2 * b_order) {
        let degree = eg.degree();
        let gen_images = eg.generators();
        let x_images: Vec<Permutation> =
            x_in_edge.iter().map(|w| w.evaluate(gen_images, degree)).collect();
        let b_from_edge = PermGroup::new(degree, x_images.clone())?;
        if b_from_edge.order() as usize == b_order {
            if let Some(extra) = complete_edge_core(&core, &x_images, b_order, max_cosets)? {
                let extra = words_to_exprs(&extra, &split.x_names);
                completed_r = extra.iter().map(|e| e.to_string()).collect();
                let core_c = presentation_of(&split.x_names, &split.r.iter().chain(&extra).cloned().collect::<Vec<_>>())?;
                let vertex_c = row.vertex_presentation(&split, &extra)?;
                let core_cg = regular(&core_c, max_cosets)?;
                let vertex_cg = regular(&vertex_c, max_cosets)?;
                completed = PartOrders {
                    edge_core: core_cg.as_ref().map(|g| g.degree()),
                    vertex: vertex_cg.as_ref().map(|g| g.degree()),
                    edge: literal.edge,
                };
                vertex_x_index = try_order(&vertex_c, &x_vertex, max_cosets)?;
                completed_isomorphic = [
                    certify(core_cg.as_ref(), b_cat)?,
                    certify(vertex_cg.as_ref(), a1_cat)?,
                    certify(edge_group.as_ref(), a2_cat)?,
                ];
            }
        }
    }
    if vertex_x_index.is_none() && literal_orders_ok {
        vertex_x_index = try_order(&vertex, &x_vertex, max_cosets)?;
    }

    let show = |v: &[Expr]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();
    Ok(PresentationCheck {
        label: row.label.to_string(),
        definitions: split.definitions(row),
        r: show(&split.r),
        s: show(&split.s),
        t: show(&split.t),
        b_order,
        literal_orders_ok,
        pass: literal_orders_ok && literal_isomorphic.iter().all(|&b| b),
        literal,
        literal_isomorphic,
        edge_x_index,
        completed_r,
        completed,
        completed_isomorphic,
        vertex_x_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_row_splits() {
        assert_eq!(TABLE3.len(), 18);
        for row in TABLE3 {
            let split = row.split().unwrap();
            assert_eq!(split.x_names.len(), row.x_words.len(), "{}", row.label);
        }
    }

    #[test]
    fn q1_3_split_renames_b_squared() {
        let split = table3_row("Q1^3").unwrap().split().unwrap();
        assert_eq!(split.x_names, vec!["x"]);
        assert_eq!(split.r.iter().map(|e| e.to_string()).collect::<Vec<_>>(), vec!["x^2"]);
        assert_eq!(split.s.len(), 2);
    }

    #[test]
    fn cyclic_word_counts() {
        // Necklaces of reduced words up to rotation and inversion.
        assert_eq!(cyclic_words(1, 3).len(), 1);
        assert_eq!(cyclic_words(2, 2).len(), 4);
    }
}
