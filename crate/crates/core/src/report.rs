//! Per-row verification reports.

use serde::{Deserialize, Serialize};

use crate::amalgam::catalog::CatalogRow;
use crate::autgrp::certify_uniqueness;
use crate::error::{Error, Result};
use crate::fp::completion::frozen_completion;
use crate::fp::table3::{table3_row, verify_presentation_s_le_3};
use crate::fp::table4::{geometric_completion, verify_table4_row};
use crate::graphsym::{coset_graph, measure_s, measure_s_local, CosetGraph, LocalData};
use crate::group::PermGroup;
use crate::grpid::is_isomorphic;

pub const SCHEMA: u32 = 1;

/// Rows with `|B|` up to this bound are cross-checked by brute force.
pub const BRUTE_ORACLE_MAX_B: u128 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A check hit a resource bound; nothing else failed.
    ResourceExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub label: String,
    pub s: u32,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_cosets: usize,
    /// Completions larger than this are not built.
    pub max_order: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_cosets: 1_000_000, max_order: 10_000_000 }
    }
}

struct Builder {
    checks: Vec<Check>,
    resource: bool,
}

impl Builder {
    fn push(&mut self, name: &str, expected: impl ToString, observed: impl ToString, pass: bool, note: &str) {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
            note: note.into(),
        });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: T, observed: T, note: &str) {
        let pass = expected == observed;
        self.push(name, format!("{expected:?}"), format!("{observed:?}"), pass, note);
    }

    /// Records an error as a failing check.
    fn error(&mut self, name: &str, e: &Error) {
        self.resource |= matches!(e, Error::Resource(_) | Error::TooLarge { .. });
        self.push(name, "no error", format!("error: {e}"), false, "");
    }
}

fn prime_divisors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Expected double-coset count for an `s ≤ 3` type.
pub fn expected_double_cosets(label: &str) -> usize {
    match label {
        "Q1^4" => 2,
        "Q3^1" => 3,
        _ => 1,
    }
}

/// A 3-arc `(x, y, z, w)` from vertex 0 with four distinct vertices.
fn three_arc(g: &crate::graphsym::Graph) -> Option<Vec<u32>> {
    let x = 0;
    let y = *g.neighbors(x).first()?;
    let z = *g.neighbors(y).iter().find(|&&v| v != x)?;
    let w = *g.neighbors(z).iter().find(|&&v| v != y && v != x)?;
    Some(vec![x, y, z, w])
}

/// A certified completion of a row with its coset graph.
pub struct RowCompletion {
    pub group: PermGroup,
    pub a1: PermGroup,
    pub a2: PermGroup,
    pub graph: CosetGraph,
}

/// The frozen quotient completion (`s ≤ 3`) or the geometric one.
pub fn row_completion(row: &CatalogRow, opts: &VerifyOptions) -> Result<RowCompletion> {
    let (group, a1, a2) = if row.s <= 3 {
        let c = frozen_completion(row.label)?;
        (c.group, c.a1, c.a2)
    } else {
        geometric_completion(row.label)?
    };
    if group.order() > opts.max_order {
        return Err(Error::TooLarge { what: "completion", order: group.order(), limit: opts.max_order });
    }
    let graph = coset_graph(&group, &a1, &a2)?;
    Ok(RowCompletion { group, a1, a2, graph })
}

fn catalog_checks(b: &mut Builder, row: &CatalogRow) -> Result<()> {
    let am = row.amalgam();
    let (o1, o2, ob) = (am.a1().order(), am.a2().order(), am.b().order());
    b.eq("degree", (5u128, 2u128), am.degree(), "indices of B in A1 and A2");
    b.eq("order_a1", 5 * ob, o1, "");
    b.eq("order_a2", 2 * ob, o2, "");
    if let Some((e1, e2, eb)) = row.expected_orders() {
        b.eq("type_orders", (e1, e2, eb), (o1, o2, ob), "orders implied by the type names");
    }
    b.eq("primitive", true, am.is_primitive()?, "iterated core of B");
    if ob <= BRUTE_ORACLE_MAX_B {
        let brute = am.primitive_brute_oracle()?;
        b.eq("primitive_brute_oracle", am.is_primitive()?, brute, "all subgroups of B");
    }
    let primes = prime_divisors(ob);
    let ok = primes.iter().all(|p| *p == 2 || *p == 3);
    b.push("b_primes", "subset of [2, 3]", format!("{primes:?}"), ok, "");
    if let Some((n1, n2, nb)) = row.named_types() {
        for (name, named, actual) in [("type_a1", n1, am.a1()), ("type_a2", n2, am.a2()), ("type_b", nb, am.b())] {
            let model = named.realize()?;
            let iso = is_isomorphic(&model, actual)?.is_some();
            b.push(name, named.to_string(), if iso { "isomorphic" } else { "not isomorphic" }, iso, "");
        }
    }
    Ok(())
}

fn uniqueness_checks(b: &mut Builder, row: &CatalogRow) -> Result<()> {
    let u = certify_uniqueness(row.amalgam())?;
    b.eq("double_cosets", expected_double_cosets(row.label), u.double_cosets, "classes of amalgams of this type");
    b.eq("primitive_classes", 1, u.primitive_classes, "");
    b.eq("input_class_primitive", true, u.input_is_primitive_class, "");
    if row.label == "Q3^1" {
        b.eq("star_orders", (8u128, 8u128, 96u128), (u.a1_star_order, u.a2_star_order, u.aut_order), "A1*, A2*, Aut(B)");
    }
    Ok(())
}

fn presentation_checks(b: &mut Builder, row: &CatalogRow, opts: &VerifyOptions) -> Result<()> {
    let t3 = table3_row(row.label).ok_or_else(|| Error::Invalid(format!("no presentation for {}", row.label)))?;
    let c = verify_presentation_s_le_3(t3, opts.max_cosets)?;
    let ob = c.b_order;
    let expected = (Some(ob), Some(5 * ob), Some(2 * ob));
    let lit = (c.literal.edge_core, c.literal.vertex, c.literal.edge);
    b.eq("presentation_orders", expected, lit, "|<X|R>|, |<X,a|R,S>|, |<X,b|R,T>|; None means overflow");
    b.eq("presentation_isomorphic", [true; 3], c.literal_isomorphic, "certificates for B, A1, A2");
    if !c.completed_r.is_empty() {
        let comp = (c.completed.edge_core, c.completed.vertex, c.completed.edge);
        let note = format!("R completed by {}", c.completed_r.join(", "));
        b.eq("presentation_orders_completed", expected, comp, &note);
        b.eq("presentation_isomorphic_completed", [true; 3], c.completed_isomorphic, &note);
    }
    Ok(())
}

fn completion_checks(b: &mut Builder, row: &CatalogRow, opts: &VerifyOptions) -> Result<()> {
    let comp = row_completion(row, opts)?;
    let am = row.amalgam();
    let g = comp.graph.action.graph();
    let n = g.vertex_count();
    b.eq("completion_a1_a2_orders", (am.a1().order(), am.a2().order()), (comp.a1.order(), comp.a2.order()), "");
    b.eq("graph_valency", Some(5), g.valency(), "");
    b.eq("graph_connected", true, g.is_connected(), "");
    b.eq("graph_vertices", comp.group.order() / comp.a1.order(), n as u128, "index of A1");
    let x_stab = comp.graph.action.group().pointwise_stabilizer(&[0]).order();
    let y = comp.graph.base_neighbor;
    let xy_stab = comp.graph.action.group().pointwise_stabilizer(&[0, y]).order();
    b.eq("stabilizer_orders", (am.a1().order(), am.b().order()), (x_stab, xy_stab), "|G_x|, |G_xy|");
    let s = measure_s(&comp.graph.action, 8)?;
    b.eq("s", row.s as usize, s, "");
    if row.s == 2 || row.s == 3 {
        let path = three_arc(g).ok_or_else(|| Error::Invalid("no 3-arc with distinct vertices".into()))?;
        let local: LocalData = measure_s_local(&comp.graph.action, &path)?;
        if row.s == 2 {
            b.push("local_index", "not 4", local.index, local.index != 4, "|G_xyz : G_xyzw|");
        } else {
            b.eq("local_index", 4, local.index, "|G_xyz : G_xyzw|");
            b.eq("local_forward_transitive", true, local.forward_image_transitive, "G_xyz on the neighbours of z other than y");
            b.eq(
                "local_forward_image",
                (4u128, true),
                (local.forward_image_order, local.forward_image_cyclic),
                "image of G_xyz on the neighbours of z other than y; (order, cyclic)",
            );
        }
    }
    Ok(())
}

fn table4_checks(b: &mut Builder, row: &CatalogRow) -> Result<()> {
    let t = verify_table4_row(row.label)?;
    let note = format!("stored assignments pass in {:?}", t.satisfied_in);
    b.eq("relators_in_completion", true, t.own_completion, &note);
    Ok(())
}

/// Runs every check for a catalog row. Failures and errors are recorded,
/// never returned.
pub fn verify_row(row: &CatalogRow, opts: &VerifyOptions) -> VerificationReport {
    let mut b = Builder { checks: Vec::new(), resource: false };
    if let Err(e) = catalog_checks(&mut b, row) {
        b.error("catalog", &e);
    }
    if row.s <= 3 {
        if let Err(e) = uniqueness_checks(&mut b, row) {
            b.error("uniqueness", &e);
        }
        if let Err(e) = presentation_checks(&mut b, row, opts) {
            b.error("presentation", &e);
        }
    } else if let Err(e) = table4_checks(&mut b, row) {
        b.error("relators_in_completion", &e);
    }
    if let Err(e) = completion_checks(&mut b, row, opts) {
        b.error("completion", &e);
    }
    let failed = b.checks.iter().filter(|c| !c.pass).count();
    let status = if failed == 0 {
        Status::Pass
    } else if b.resource && b.checks.iter().filter(|c| !c.pass).all(|c| c.observed.starts_with("error:")) {
        Status::ResourceExceeded
    } else {
        Status::Fail
    };
    VerificationReport { schema: SCHEMA, label: row.label.into(), s: row.s, checks: b.checks, status }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::catalog::find_row;

    #[test]
    fn prime_divisors_of_small_numbers() {
        assert_eq!(prime_divisors(1), Vec::<u128>::new());
        assert_eq!(prime_divisors(576), vec![2, 3]);
        assert_eq!(prime_divisors(20), vec![2, 5]);
    }

    #[test]
    fn q1_1_passes() {
        let r = verify_row(find_row("Q1^1").unwrap(), &VerifyOptions::default());
        assert_eq!(r.status, Status::Pass, "{:#?}", r.failed().collect::<Vec<_>>());
        assert_eq!(r.check("s").unwrap().observed, "1");
    }

    #[test]
    fn report_round_trips() {
        let r = verify_row(find_row("Q1^2").unwrap(), &VerifyOptions::default());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<VerificationReport>(&json).unwrap(), r);
        assert_eq!(r.status == Status::Pass, r.checks.iter().all(|c| c.pass));
    }
}
