//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria that fail for analysed reasons are pinned to their exact
//! failing rows, so the run errors if the set of failures changes in
//! either direction.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::{Duration, Instant};

use amalgamlab::amalgam::{catalog, example_variants};
use amalgamlab::autgrp::certify_uniqueness;
use amalgamlab::fp::table3::{verify_presentation_s_le_3, TABLE3};
use amalgamlab::fp::table4::{verify_table4_row, TABLE4};
use amalgamlab::geometry::{gq44_incidence_graph, pg24_incidence_graph, psl34_overgroup, quadrangle_group};
use amalgamlab::graphsym::{graph_automorphisms, measure_s, measure_s_local};
use amalgamlab::report::{expected_double_cosets, row_completion, VerifyOptions};
use amalgamlab::{PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rows where the literal presentations do not certify (ledger: criterion 5).
const KNOWN_RED_5: &[&str] = &["Q1^4", "Q2^4", "Q2^6", "Q3^1", "Q3^4"];
/// Rows where the local image is not cyclic of order 4 (ledger: criterion 7).
const KNOWN_RED_7: &[&str] = &["Q3^2", "Q3^3", "Q3^4", "Q3^5"];
/// Rows whose relators hold only in the other plane completion (ledger: criterion 8).
const KNOWN_RED_8: &[&str] = &["Q4^1", "Q4^2"];

struct Outcome {
    pass: bool,
    detail: String,
    /// Failing items, compared with the pinned set.
    failing: Vec<String>,
}

impl Outcome {
    fn from_failures(failing: Vec<String>, detail: String) -> Self {
        Outcome { pass: failing.is_empty(), detail, failing }
    }
}

fn set(v: &[String]) -> BTreeSet<String> {
    v.iter().cloned().collect()
}

fn criterion_1() -> Outcome {
    let rows = catalog();
    let mut failing = Vec::new();
    for r in rows {
        let am = r.amalgam();
        let ob = am.b().order();
        let ok = am.degree() == (5, 2)
            && am.is_primitive().unwrap()
            && am.a1().order() == 5 * ob
            && am.a2().order() == 2 * ob;
        if !ok {
            failing.push(r.label.to_string());
        }
    }
    if rows.len() != 25 {
        failing.push(format!("{} rows", rows.len()));
    }
    Outcome::from_failures(failing, format!("{} rows, degree (5,2), primitive, |A1| = 5|B|, |A2| = 2|B|", rows.len()))
}

fn criterion_2() -> Outcome {
    let mut failing = Vec::new();
    let mut checked = 0;
    for r in catalog().iter().filter(|r| r.amalgam().b().order() <= 64) {
        checked += 1;
        let am = r.amalgam();
        if am.is_primitive().unwrap() != am.primitive_brute_oracle().unwrap() {
            failing.push(r.label.to_string());
        }
    }
    Outcome::from_failures(failing, format!("{checked} rows with |B| <= 64 agree with the brute-force oracle"))
}

fn criterion_3() -> Outcome {
    let [v1, v2, v3] = example_variants();
    let prim = [v1.is_primitive().unwrap(), v2.is_primitive().unwrap(), v3.is_primitive().unwrap()];
    let k2 = v2.max_common_normal().unwrap().subgroup;
    let h = Permutation::parse_cycles("(6,7,8,9)", 9).unwrap();
    let k_is_h = k2.same_group(&PermGroup::new(9, vec![h.clone()]).unwrap());
    let k3 = v3.max_common_normal().unwrap().subgroup;
    let mut failing = Vec::new();
    if prim != [true, false, false] {
        failing.push(format!("primitivity {prim:?}"));
    }
    if !k_is_h {
        failing.push(format!("K has order {}", k2.order()));
    }
    if !k3.contains(&h) {
        failing.push("third K misses h".into());
    }
    Outcome::from_failures(failing, format!("primitivity {prim:?}; second K = <h> of order {}", k2.order()))
}

fn criterion_4() -> Outcome {
    let mut failing = Vec::new();
    let mut counts = Vec::new();
    for r in catalog().iter().filter(|r| r.s <= 3) {
        let u = certify_uniqueness(r.amalgam()).unwrap();
        counts.push(format!("{}:{}", r.label, u.double_cosets));
        let mut ok = u.double_cosets == expected_double_cosets(r.label) && u.primitive_classes == 1;
        if r.label == "Q3^1" {
            ok &= (u.a1_star_order, u.a2_star_order, u.aut_order) == (8, 8, 96);
        }
        if !ok {
            failing.push(r.label.to_string());
        }
    }
    let nontrivial: Vec<&String> = counts.iter().filter(|c| !c.ends_with(":1")).collect();
    Outcome::from_failures(
        failing,
        format!("{} types, counts other than 1: {nontrivial:?}, one primitive class each", counts.len()),
    )
}

fn criterion_5() -> Outcome {
    let mut failing = Vec::new();
    let mut completed_ok = Vec::new();
    for row in TABLE3 {
        let c = verify_presentation_s_le_3(row, 1_000_000).unwrap();
        if !c.pass {
            failing.push(row.label.to_string());
            let comp_orders = c.completed.edge_core == Some(c.b_order)
                && c.completed.vertex == Some(5 * c.b_order)
                && c.completed.edge == Some(2 * c.b_order);
            if comp_orders && c.completed_isomorphic.iter().all(|&b| b) {
                completed_ok.push(row.label);
            }
        }
    }
    let detail = format!(
        "{}/{} rows certify as written; failing {failing:?}; certify after completing R: {completed_ok:?}",
        TABLE3.len() - failing.len(),
        TABLE3.len()
    );
    Outcome::from_failures(failing, detail)
}

fn criterion_6() -> Outcome {
    let mut failing = Vec::new();
    let pg = pg24_incidence_graph();
    let pg_aut = graph_automorphisms(&pg).unwrap();
    let pg_ok = pg.vertex_count() == 42
        && pg.girth() == Some(6)
        && pg_aut.order() == 241_920
        && pg_aut.same_group(&psl34_overgroup().group);
    if !pg_ok {
        failing.push(format!("PG(2,4): {} vertices, girth {:?}, |Aut| {}", pg.vertex_count(), pg.girth(), pg_aut.order()));
    }
    let start = Instant::now();
    let gq = gq44_incidence_graph();
    let gq_aut = graph_automorphisms(&gq).unwrap();
    let gq_time = start.elapsed();
    let gq_ok = gq.vertex_count() == 170
        && gq.girth() == Some(8)
        && gq_aut.order() == 3_916_800
        && gq_aut.same_group(&quadrangle_group().group)
        && gq_time < Duration::from_secs(600);
    if !gq_ok {
        failing.push(format!("GQ(4,4): {} vertices, girth {:?}, |Aut| {}", gq.vertex_count(), gq.girth(), gq_aut.order()));
    }
    Outcome::from_failures(
        failing,
        format!(
            "PG(2,4) 42/girth {:?}/|Aut| {}; GQ(4,4) 170/girth {:?}/|Aut| {} in {:.1}s",
            pg.girth(),
            pg_aut.order(),
            gq.girth(),
            gq_aut.order(),
            gq_time.as_secs_f64()
        ),
    )
}

fn three_arc(g: &amalgamlab::graphsym::Graph) -> Vec<u32> {
    let y = g.neighbors(0)[0];
    let z = *g.neighbors(y).iter().find(|&&v| v != 0).unwrap();
    let w = *g.neighbors(z).iter().find(|&&v| v != y && v != 0).unwrap();
    vec![0, y, z, w]
}

/// Returns the outcome of criterion 7 and the completions' valency and
/// stabilizer checks used by criterion 9.
fn criterion_7(opts: &VerifyOptions) -> (Outcome, Vec<String>) {
    let mut failing = Vec::new();
    let mut s_values = Vec::new();
    let mut structural = Vec::new();
    let mut local_notes = Vec::new();
    for r in catalog() {
        let comp = row_completion(r, opts).unwrap();
        let act = &comp.graph.action;
        let g = act.graph();
        let am = r.amalgam();
        let y = comp.graph.base_neighbor;
        let stab_ok = act.group().pointwise_stabilizer(&[0]).order() == am.a1().order()
            && act.group().pointwise_stabilizer(&[0, y]).order() == am.b().order();
        if g.valency() != Some(5) || !g.is_connected() || !stab_ok {
            structural.push(r.label.to_string());
        }
        let s = measure_s(act, 8).unwrap();
        s_values.push(s);
        if s != r.s as usize {
            failing.push(format!("{} s={s}", r.label));
        }
        if r.s == 2 || r.s == 3 {
            let local = measure_s_local(act, &three_arc(g)).unwrap();
            if r.s == 2 && local.index == 4 {
                failing.push(r.label.to_string());
            }
            if r.s == 3 {
                let ok = local.index == 4 && local.forward_image_order == 4 && local.forward_image_cyclic;
                if !ok {
                    failing.push(r.label.to_string());
                    local_notes.push(format!("{}: index {}, image order {}", r.label, local.index, local.forward_image_order));
                }
            }
        }
    }
    let detail = format!("s = {s_values:?}; local failures {local_notes:?}");
    (Outcome::from_failures(failing, detail), structural)
}

fn criterion_8() -> Outcome {
    let mut failing = Vec::new();
    let mut notes = Vec::new();
    for row in TABLE4 {
        let c = verify_table4_row(row.label).unwrap();
        if !c.own_completion {
            failing.push(row.label.to_string());
            notes.push(format!("{} holds in {:?}", row.label, c.satisfied_in));
        }
    }
    Outcome::from_failures(failing, format!("{} rows; {notes:?}", TABLE4.len()))
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

fn closure_count(n: usize, gens: &[Permutation]) -> usize {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn criterion_9(structural: &[String]) -> Outcome {
    let mut failing = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=12);
        let (p, q, r) = (random_perm(&mut rng, n), random_perm(&mut rng, n), random_perm(&mut rng, n));
        let id = Permutation::identity(n);
        let x = rng.gen_range(0..n as u32);
        let laws = &(&p * &q) * &r == &p * &(&q * &r)
            && &p * &p.inverse() == id
            && &p * &id == p
            && (&p * &q).image(x) == q.image(p.image(x))
            && p.pow(p.order() as i64) == id;
        if !laws {
            failing.push(format!("laws {p} {q} {r}"));
            break;
        }
    }
    for i in 0..50 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..k).map(|_| random_perm(&mut rng, n)).collect();
        let g = PermGroup::new(n, gens.clone()).unwrap();
        if g.order() != closure_count(n, &gens) as u128 {
            failing.push(format!("group {i}"));
        }
    }
    for r in catalog() {
        let mut b = r.amalgam().b().order();
        for p in [2, 3] {
            while b % p == 0 {
                b /= p;
            }
        }
        if b != 1 {
            failing.push(format!("{} |B| has a prime other than 2, 3", r.label));
        }
    }
    failing.extend(structural.iter().map(|l| format!("{l} completion graph")));
    Outcome::from_failures(
        failing,
        "10^4 permutation law cases, 50 random groups, |B| primes in {2,3}, completion valency and stabilizers".into(),
    )
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() {
    let opts = VerifyOptions::default();
    let mut results: Vec<(usize, &[&str], Outcome, Duration)> = Vec::new();
    let mut push = |n: usize, pinned: &'static [&'static str], (o, t): (Outcome, Duration)| results.push((n, pinned, o, t));
    push(1, &[], timed(criterion_1));
    push(2, &[], timed(criterion_2));
    push(3, &[], timed(criterion_3));
    push(4, &[], timed(criterion_4));
    push(5, KNOWN_RED_5, timed(criterion_5));
    push(6, &[], timed(criterion_6));
    let ((o7, structural), t7) = timed(|| criterion_7(&opts));
    push(7, KNOWN_RED_7, (o7, t7));
    push(8, KNOWN_RED_8, timed(criterion_8));
    push(9, &[], timed(|| criterion_9(&structural)));
    let mut unexpected = Vec::new();
    for (n, pinned, o, t) in &results {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n}: {status} ({:.1}s) {}", t.as_secs_f64(), o.detail);
        let pinned: BTreeSet<String> = pinned.iter().map(|s| s.to_string()).collect();
        if set(&o.failing) != pinned {
            unexpected.push(format!("criterion {n}: failing {:?}, pinned {:?}", o.failing, pinned));
        }
    }
    if !unexpected.is_empty() {
        for u in &unexpected {
            eprintln!("unexpected: {u}");
        }
        std::process::exit(1);
    }
}
