//! Presentations for the amalgams with `s ≥ 4`, checked by finding
//! generator images in the geometric completions that satisfy every
//! relator and generate the whole group.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::presentation::Presentation;
use crate::fp::word::Word;
use crate::geometry::{plane_amalgam_groups, plane_completion, quadrangle_group};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// How the search constrains `a` once `c` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AConstraint {
    /// `a` normalizes `⟨c⟩`.
    NormalizesC,
    /// `a` normalizes an elementary abelian `⟨c, f⟩` of order 9.
    NormalizesRank2,
}

#[derive(Clone, Copy, Debug)]
pub struct Table4Row {
    pub label: &'static str,
    pub generators: &'static [&'static str],
    pub defs: &'static [&'static str],
    pub relators: &'static str,
    pub a_constraint: AConstraint,
}

const PLANE_DEFS: &[&str] = &["e_i = a^i e_0 a^{-i}", "t = e_0 e_3 e_0"];

macro_rules! plane_relators {
    ($extra:literal) => {
        concat!(
            "e_0^2, c^3, (e_0 e_3)^3, t c t^{-1} c, (e_0 c)^3, (c e_0 e_3)^5, t a t^{-1} a, ",
            "[e_0,e_1], [e_0, c e_1 c^{-1}], [e_0,e_2] e_1, [e_0, c e_2 c^{-1}] c^{-1} e_1 c, ",
            $extra
        )
    };
}

pub const TABLE4: &[Table4Row] = &[
    Table4Row {
        label: "Q4^1",
        generators: &["a", "e_0", "c"],
        defs: PLANE_DEFS,
        relators: plane_relators!("a c a^{-1} c"),
        a_constraint: AConstraint::NormalizesC,
    },
    Table4Row {
        label: "Q4^2",
        generators: &["a", "e_0", "c"],
        defs: PLANE_DEFS,
        relators: plane_relators!("[a,c]"),
        a_constraint: AConstraint::NormalizesC,
    },
    Table4Row {
        label: "Q4^3",
        generators: &["a", "e_0", "c", "f"],
        defs: PLANE_DEFS,
        relators: plane_relators!("f^3, [c,a], [c,f], [e_0,f], a f (c f a)^{-1}"),
        a_constraint: AConstraint::NormalizesC,
    },
    Table4Row {
        label: "Q4^4",
        generators: &["a", "e_0", "c", "f"],
        defs: PLANE_DEFS,
        relators: plane_relators!("f^3, a c a^{-1} c, [c,f], [e_0,f], a f a^{-1} f c^{-1}"),
        a_constraint: AConstraint::NormalizesC,
    },
    Table4Row {
        label: "Q4^5",
        generators: &["a", "e_0", "c", "g"],
        defs: PLANE_DEFS,
        relators: plane_relators!("g^2, [a,c], [e_0,g], [a,g], g c g c"),
        a_constraint: AConstraint::NormalizesC,
    },
    Table4Row {
        label: "Q4^6",
        generators: &["a", "e_0", "c", "f", "g"],
        defs: PLANE_DEFS,
        relators: plane_relators!(
            "g^2, f^3, [c,a], [e_0,g], [a,g], g c g c, g f g f, [c,f], [e_0,f], a f (c f a)^{-1}"
        ),
        a_constraint: AConstraint::NormalizesC,
    },
    Table4Row {
        label: "Q5^1",
        generators: &["a", "e_0", "c"],
        defs: &["e_i = a^i e_0 a^{-i}", "t = e_0 e_4 e_0", "f = a c a^{-1}", "g = (t a)^2"],
        relators: "c^3, e_0^2, (e_0 e_4)^3, t c t^{-1} c, g^2, [e_0,g], [a,g], c^g c, (e_0 c)^3, \
                   [e_2,c], (c e_0 e_4)^5, [c,f], a f (c f a)^{-1}, [e_0,e_1], [e_0,e_2], \
                   [e_0,e_3] e_2 e_1",
        a_constraint: AConstraint::NormalizesRank2,
    },
];

pub fn table4_row(label: &str) -> Option<&'static Table4Row> {
    TABLE4.iter().find(|r| r.label == label)
}

impl Table4Row {
    pub fn presentation(&self) -> Presentation {
        Presentation::from_relators(self.generators, self.relators, self.defs).expect("table literal")
    }
}

/// The geometric completion of a row with its vertex and edge stabilizers.
pub fn geometric_completion(label: &str) -> Result<(PermGroup, PermGroup, PermGroup)> {
    if label == "Q5^1" {
        let q = quadrangle_group();
        return Ok((q.group.clone(), q.a1.clone(), q.a2.clone()));
    }
    let j = label
        .strip_prefix("Q4^")
        .and_then(|j| j.parse::<usize>().ok())
        .filter(|j| (1..=6).contains(j))
        .ok_or_else(|| Error::Invalid(format!("{label} has no geometric completion")))?;
    let (a1, a2, _) = plane_amalgam_groups(j);
    Ok((plane_completion(j), a1, a2))
}

/// True iff every relator of `p` evaluates to the identity under
/// `assignment`, the images lie in `g`, and they generate `g`.
pub fn check_relators_in_completion(p: &Presentation, assignment: &[Permutation], g: &PermGroup) -> bool {
    if assignment.len() != p.generators().len() || assignment.iter().any(|x| x.degree() != g.degree()) {
        return false;
    }
    if !assignment.iter().all(|x| g.contains(x)) {
        return false;
    }
    match p.failing_relators(assignment) {
        Ok(f) if f.is_empty() => {}
        _ => return false,
    }
    PermGroup::generated_by(g.degree(), assignment.iter()).order() == g.order()
}

/// Generator images for a row inside the geometric completion named by
/// `completion`, in 1-based cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub label: String,
    pub completion: String,
    pub images: Vec<(String, String)>,
}

impl Assignment {
    pub fn new(row: &Table4Row, completion: &str, images: &[Permutation]) -> Self {
        Assignment {
            label: row.label.to_string(),
            completion: completion.to_string(),
            images: row.generators.iter().zip(images).map(|(n, x)| (n.to_string(), x.to_string())).collect(),
        }
    }

    pub fn permutations(&self, degree: usize) -> Result<Vec<Permutation>> {
        self.images
            .iter()
            .map(|(_, c)| Permutation::parse_cycles(c, degree).map_err(Error::from))
            .collect()
    }
}

/// Assignments produced by `search_assignment`, stored as data.
pub fn documented_assignments() -> Vec<Assignment> {
    serde_json::from_str(include_str!("../../data/table4_assignments.json")).expect("bundled data")
}

/// The outcome of checking one row against its own completion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table4Check {
    pub label: String,
    /// A stored assignment into the row's own completion exists and passes.
    pub own_completion: bool,
    /// Completions in which a stored assignment for this row passes.
    pub satisfied_in: Vec<String>,
}

/// Checks every stored assignment for `label`.
pub fn verify_table4_row(label: &str) -> Result<Table4Check> {
    let row = table4_row(label).ok_or_else(|| Error::Invalid(format!("no presentation for {label}")))?;
    let p = row.presentation();
    let mut satisfied_in = Vec::new();
    for a in documented_assignments().iter().filter(|a| a.label == label) {
        let (g, _, _) = geometric_completion(&a.completion)?;
        if check_relators_in_completion(&p, &a.permutations(g.degree())?, &g) {
            satisfied_in.push(a.completion.clone());
        }
    }
    Ok(Table4Check { label: label.to_string(), own_completion: satisfied_in.iter().any(|c| c == label), satisfied_in })
}

/// Conjugacy class representatives of elements of order `k`, drawn from
/// the elements of `sources` and deduplicated by their classes in `g`,
/// with the full classes.
fn classes_of_order(g: &PermGroup, sources: &[&PermGroup], k: u64) -> Result<Vec<Vec<Permutation>>> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut classes = Vec::new();
    for src in sources {
        let mut cands = Vec::new();
        src.for_each_element(|x| {
            if x.order() == k {
                cands.push(x.clone());
            }
        });
        for x in cands {
            if seen.contains(&x) {
                continue;
            }
            let orbit = g.conjugation_orbit(&[x], false, 400_000)?;
            let class: Vec<Permutation> = orbit.points.into_iter().map(|mut v| v.remove(0)).collect();
            seen.extend(class.iter().cloned());
            classes.push(class);
        }
    }
    Ok(classes)
}

fn elements(g: &PermGroup) -> Vec<Permutation> {
    let mut out = Vec::new();
    g.for_each_element(|x| out.push(x.clone()));
    out
}

struct Relator {
    word: Word,
    uses: Vec<usize>,
}

struct Search<'a> {
    g: &'a PermGroup,
    rels: Vec<Relator>,
    order: Vec<usize>,
}

impl Search<'_> {
    /// Relators whose generators are all among the first `level + 1`
    /// assigned ones and which mention the generator assigned at `level`.
    fn check(&self, level: usize, images: &[Permutation], inverses: &[Permutation]) -> bool {
        let assigned = &self.order[..=level];
        let newest = self.order[level];
        self.rels
            .iter()
            .filter(|r| r.uses.contains(&newest) && r.uses.iter().all(|u| assigned.contains(u)))
            .all(|r| r.word.evaluate_with(images, inverses, self.g.degree()).is_identity())
    }
}

/// Searches for images of the generators of `row` in `g` satisfying all
/// relators and generating `g`. `a1` and `a2` supply the candidate
/// elements of order 3 and 2 when `g` is too large to enumerate.
pub fn search_assignment(row: &Table4Row, g: &PermGroup, a1: &PermGroup, a2: &PermGroup) -> Result<Option<Vec<Permutation>>> {
    let p = row.presentation();
    let gens = p.generators();
    let idx = |n: &str| gens.iter().position(|x| x == n);
    let (ia, ie, ic) = (
        idx("a").ok_or_else(|| Error::Invalid("no generator a".into()))?,
        idx("e_0").ok_or_else(|| Error::Invalid("no generator e_0".into()))?,
        idx("c").ok_or_else(|| Error::Invalid("no generator c".into()))?,
    );
    let mut order = vec![ic, ia, ie];
    order.extend(["f", "g"].iter().filter_map(|n| idx(n)));
    let mut rels: Vec<Relator> = p
        .relators()
        .into_iter()
        .map(|w| {
            let mut uses: Vec<usize> = w.letters().iter().map(|l| l.unsigned_abs() as usize - 1).collect();
            uses.sort_unstable();
            uses.dedup();
            Relator { word: w, uses }
        })
        .collect();
    rels.sort_by_key(|r| r.word.len());
    let search = Search { g, rels, order: order.clone() };

    let small = g.order() <= 300_000;
    let sources: Vec<&PermGroup> = if small { vec![g] } else { vec![a1, a2] };
    let threes = classes_of_order(g, &sources, 3)?;
    let involutions: Vec<Permutation> = classes_of_order(g, &sources, 2)?.into_iter().flatten().collect();

    let n = g.degree();
    let id = g.identity();
    let mut images = vec![id.clone(); gens.len()];
    let mut inverses = vec![id.clone(); gens.len()];
    let set = |images: &mut Vec<Permutation>, inverses: &mut Vec<Permutation>, i: usize, x: &Permutation| {
        images[i] = x.clone();
        inverses[i] = x.inverse();
    };

    for class in &threes {
        let c = &class[0];
        set(&mut images, &mut inverses, ic, c);
        if !search.check(0, &images, &inverses) {
            continue;
        }
        let norm_c = g.conjugation_orbit(&[c.clone(), c.inverse()], true, 400_000)?.stabilizer;
        let norm_c_elems = elements(&norm_c);
        let a_cands: Vec<Permutation> = match row.a_constraint {
            AConstraint::NormalizesC => norm_c_elems.clone(),
            AConstraint::NormalizesRank2 => {
                let mut out = Vec::new();
                let mut seen_e: HashSet<Vec<Permutation>> = HashSet::new();
                for f in norm_c_elems.iter().filter(|f| f.order() == 3 && (*f * c) == (c * *f)) {
                    let e = PermGroup::new(n, vec![c.clone(), f.clone()])?;
                    if e.order() != 9 {
                        continue;
                    }
                    let mut e_elems = elements(&e);
                    e_elems.sort_unstable();
                    if !seen_e.insert(e_elems.clone()) {
                        continue;
                    }
                    let norm_e = g.conjugation_orbit(&e_elems, true, 400_000)?.stabilizer;
                    out.extend(elements(&norm_e));
                }
                out
            }
        };
        for a in &a_cands {
            set(&mut images, &mut inverses, ia, a);
            if !search.check(1, &images, &inverses) {
                continue;
            }
            for e0 in &involutions {
                set(&mut images, &mut inverses, ie, e0);
                if !search.check(2, &images, &inverses) {
                    continue;
                }
                if let Some(found) = extend(&search, 3, &norm_c_elems, &mut images, &mut inverses) {
                    return Ok(Some(found));
                }
            }
        }
    }
    Ok(None)
}

/// Assigns the remaining generators from `pool` and checks generation.
fn extend(
    search: &Search<'_>,
    level: usize,
    pool: &[Permutation],
    images: &mut Vec<Permutation>,
    inverses: &mut Vec<Permutation>,
) -> Option<Vec<Permutation>> {
    if level == search.order.len() {
        let gen = PermGroup::generated_by(search.g.degree(), images.iter());
        return (gen.order() == search.g.order()).then(|| images.clone());
    }
    let i = search.order[level];
    for x in pool {
        images[i] = x.clone();
        inverses[i] = x.inverse();
        if search.check(level, images, inverses) {
            if let Some(found) = extend(search, level + 1, pool, images, inverses) {
                return Some(found);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_row_parses() {
        assert_eq!(TABLE4.len(), 7);
        for row in TABLE4 {
            let p = row.presentation();
            assert!(p.relators().iter().all(|w| !w.is_empty()), "{}", row.label);
        }
    }

    #[test]
    fn macro_expansion() {
        let p = table4_row("Q4^1").unwrap().presentation();
        assert_eq!(p.word("e_2").unwrap(), p.word("a a e_0 a^-1 a^-1").unwrap());
        assert_eq!(p.word("t").unwrap(), p.word("e_0 a^3 e_0 a^-3 e_0").unwrap());
    }

    #[test]
    #[ignore = "writes the bundled assignment file"]
    fn regenerate_assignments() {
        let mut out = Vec::new();
        for row in TABLE4 {
            let targets: Vec<&str> = match row.label {
                "Q4^1" => vec!["Q4^1", "Q4^2"],
                "Q4^2" => vec!["Q4^2", "Q4^1"],
                l => vec![l],
            };
            for target in targets {
                let (g, a1, a2) = geometric_completion(target).unwrap();
                if let Some(images) = search_assignment(row, &g, &a1, &a2).unwrap() {
                    out.push(Assignment::new(row, target, &images));
                }
            }
        }
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/table4_assignments.json");
        std::fs::write(path, serde_json::to_string_pretty(&out).unwrap() + "\n").unwrap();
    }

    #[test]
    fn stored_assignments_pass() {
        for row in TABLE4 {
            let check = verify_table4_row(row.label).unwrap();
            match row.label {
                "Q4^1" => assert_eq!(check.satisfied_in, vec!["Q4^2"]),
                "Q4^2" => assert_eq!(check.satisfied_in, vec!["Q4^1"]),
                l => assert_eq!(check.satisfied_in, vec![l]),
            }
        }
    }

    #[test]
    fn no_assignment_for_q4_1_and_q4_2_in_their_own_completions() {
        for label in ["Q4^1", "Q4^2"] {
            let (g, a1, a2) = geometric_completion(label).unwrap();
            assert!(search_assignment(table4_row(label).unwrap(), &g, &a1, &a2).unwrap().is_none());
        }
    }

    #[test]
    fn stored_plane_assignments_match_the_search() {
        let stored = documented_assignments();
        for label in ["Q4^3", "Q4^5"] {
            let (g, a1, a2) = geometric_completion(label).unwrap();
            let row = table4_row(label).unwrap();
            let found = search_assignment(row, &g, &a1, &a2).unwrap().unwrap();
            let a = stored.iter().find(|a| a.label == label).unwrap();
            assert_eq!(a, &Assignment::new(row, label, &found));
        }
    }

    #[test]
    fn trivial_assignment_fails_generation() {
        let row = table4_row("Q4^2").unwrap();
        let (g, _, _) = geometric_completion("Q4^2").unwrap();
        let id = g.identity();
        assert!(!check_relators_in_completion(&row.presentation(), &[id.clone(), id.clone(), id], &g));
    }
}
