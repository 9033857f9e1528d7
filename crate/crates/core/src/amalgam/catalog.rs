//! The 25 primitive amalgams of degree (5,2).

use std::sync::OnceLock;

use crate::amalgam::Amalgam;
use crate::geometry;
use crate::group::PermGroup;
use crate::grpid::NamedGroup;
use crate::perm::Permutation;

/// Explicit permutation data, 1-based cycle notation.
struct Explicit {
    a1_degree: usize,
    a1: &'static [&'static str],
    /// Generators of `B` on `A1`'s points.
    b: &'static [&'static str],
    a2_degree: usize,
    a2: &'static [&'static str],
    /// Images of `b` in `A2`, in order.
    pi2: &'static [&'static str],
}

enum Construction {
    Explicit(Explicit),
    /// Parabolic amalgam inside the correlation group of PG(2,4).
    Plane(usize),
    /// Point/edge stabilizers in the automorphism group of the GQ(4,4) graph.
    Quadrangle,
}

pub struct CatalogRow {
    /// `Q<s>^<j>`.
    pub label: &'static str,
    pub s: u32,
    pub a1_type: &'static str,
    pub a2_type: &'static str,
    pub b_type: &'static str,
    construction: Construction,
    cell: OnceLock<Amalgam>,
}

impl std::fmt::Debug for CatalogRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogRow")
            .field("label", &self.label)
            .field("s", &self.s)
            .finish()
    }
}

fn group(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(
        degree,
        gens.iter()
            .map(|g| Permutation::parse_cycles(g, degree).expect("catalog literal"))
            .collect(),
    )
    .expect("catalog literal")
}

impl Explicit {
    fn build(&self) -> Amalgam {
        self.build_with(self.pi2)
    }

    fn build_with(&self, pi2: &[&str]) -> Amalgam {
        let a1 = group(self.a1_degree, self.a1);
        let b = group(self.a1_degree, self.b);
        let a2 = group(self.a2_degree, self.a2);
        let images = pi2
            .iter()
            .map(|g| Permutation::parse_cycles(g, self.a2_degree).expect("catalog literal"))
            .collect();
        Amalgam::new(a1, a2, b, images).expect("catalog amalgam")
    }
}

impl CatalogRow {
    /// The realized amalgam; geometric rows are built on first use.
    pub fn amalgam(&self) -> &Amalgam {
        self.cell.get_or_init(|| match &self.construction {
            Construction::Explicit(e) => e.build(),
            Construction::Plane(j) => geometry::plane_amalgam(*j),
            Construction::Quadrangle => geometry::quadrangle_amalgam(),
        })
    }

    /// Isomorphism types `(A1, A2, B)` for rows built from named groups.
    pub fn named_types(&self) -> Option<(NamedGroup, NamedGroup, NamedGroup)> {
        if !matches!(self.construction, Construction::Explicit(_)) {
            return None;
        }
        let p = |s: &str| s.parse::<NamedGroup>().expect("catalog type name");
        Some((p(self.a1_type), p(self.a2_type), p(self.b_type)))
    }

    pub fn is_geometric(&self) -> bool {
        !matches!(self.construction, Construction::Explicit(_))
    }

    /// Expected orders `(|A1|, |A2|, |B|)` from the type names, for rows
    /// whose names determine them.
    pub fn expected_orders(&self) -> Option<(u128, u128, u128)> {
        let (a1, a2, b) = self.named_types()?;
        Some((a1.expected_order(), a2.expected_order(), b.expected_order()))
    }
}

const F20: &[&str] = &["(1,2,3,4,5)", "(2,3,5,4)"];
const D10: &[&str] = &["(1,2,3,4,5)", "(2,5)(3,4)"];
const F20_C2: &[&str] = &["(1,2,3,4,5)", "(2,3,5,4)", "(6,7)"];
const A5_A4: &[&str] = &["(1,2,3)", "(1,2,4)", "(1,2,5)", "(6,7,8)", "(6,7,9)"];
const S5_STAR_S4: &[&str] = &["(1,2,3)", "(1,2,4)", "(1,2,5)", "(6,7,8)", "(6,7,9)", "(4,5)(6,7)"];
const S4_STAR_S4_IN_A1: &[&str] = &["(1,2,3)", "(1,2,4)", "(6,7,8)", "(6,7,9)", "(1,2)(6,7)"];
const S4_STAR_S4_IN_A2: &[&str] = &["(1,2,3)", "(1,2,4)", "(5,6,7)", "(5,6,8)", "(1,2)(5,6)"];
const SWAP8: &str = "(1,5)(2,6)(3,7)(4,8)";

macro_rules! explicit {
    ($a1d:expr, $a1:expr, $b:expr, $a2d:expr, $a2:expr, $pi2:expr) => {
        Construction::Explicit(Explicit {
            a1_degree: $a1d,
            a1: $a1,
            b: $b,
            a2_degree: $a2d,
            a2: $a2,
            pi2: $pi2,
        })
    };
}

fn row(
    label: &'static str,
    s: u32,
    types: (&'static str, &'static str, &'static str),
    construction: Construction,
) -> CatalogRow {
    CatalogRow {
        label,
        s,
        a1_type: types.0,
        a2_type: types.1,
        b_type: types.2,
        construction,
        cell: OnceLock::new(),
    }
}

fn build_catalog() -> Vec<CatalogRow> {
    vec![
        row("Q1^1", 1, ("C5", "C2", "1"), explicit!(5, &["(1,2,3,4,5)"], &[], 2, &["(1,2)"], &[])),
        row(
            "Q1^2",
            1,
            ("D10", "2^2", "C2"),
            explicit!(5, D10, &["(2,5)(3,4)"], 4, &["(1,2)", "(3,4)"], &["(1,2)"]),
        ),
        row(
            "Q1^3",
            1,
            ("D10", "C4", "C2"),
            explicit!(5, D10, &["(2,5)(3,4)"], 4, &["(1,2,3,4)"], &["(1,3)(2,4)"]),
        ),
        // D20 as D10 x C2; the central involution goes to a non-central
        // reflection of D8, which is what makes this class the primitive one.
        row(
            "Q1^4",
            1,
            ("D20", "D8", "2^2"),
            explicit!(
                7,
                &["(1,2,3,4,5)", "(2,5)(3,4)", "(6,7)"],
                &["(2,5)(3,4)", "(6,7)"],
                4,
                &["(1,2,3,4)", "(2,4)"],
                &["(1,3)(2,4)", "(1,3)"]
            ),
        ),
        row(
            "Q2^1",
            2,
            ("Frob20", "C4 x C2", "C4"),
            explicit!(5, F20, &["(2,3,5,4)"], 6, &["(1,2,3,4)", "(5,6)"], &["(1,2,3,4)"]),
        ),
        row(
            "Q2^2",
            2,
            ("Frob20", "C8", "C4"),
            explicit!(5, F20, &["(2,3,5,4)"], 8, &["(1,2,3,4,5,6,7,8)"], &["(1,3,5,7)(2,4,6,8)"]),
        ),
        row(
            "Q2^3",
            2,
            ("Frob20", "D8", "C4"),
            explicit!(5, F20, &["(2,3,5,4)"], 4, &["(1,2,3,4)", "(2,4)"], &["(1,2,3,4)"]),
        ),
        row(
            "Q2^4",
            2,
            ("Frob20", "Q8", "C4"),
            explicit!(
                5,
                F20,
                &["(2,3,5,4)"],
                8,
                &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"],
                &["(1,2,3,4)(5,6,7,8)"]
            ),
        ),
        // The C2 factor of B must map to a non-central involution.
        row(
            "Q2^5",
            2,
            ("Frob20 x C2", "N16", "C4 x C2"),
            explicit!(
                7,
                F20_C2,
                &["(2,3,5,4)", "(6,7)"],
                8,
                &["(1,2,3,4)(5,6,7,8)", "(5,7)(6,8)", SWAP8],
                &["(1,2,3,4)(5,6,7,8)", "(5,7)(6,8)"]
            ),
        ),
        // B = ⟨u^2, v⟩ in M16 = ⟨u, v⟩; u itself has order 8.
        row(
            "Q2^6",
            2,
            ("Frob20 x C2", "M16", "C4 x C2"),
            explicit!(
                7,
                F20_C2,
                &["(2,3,5,4)", "(6,7)"],
                8,
                &["(1,2,3,4,5,6,7,8)", "(2,6)(4,8)"],
                &["(1,3,5,7)(2,4,6,8)", "(2,6)(4,8)"]
            ),
        ),
        row(
            "Q2^7",
            2,
            ("A5", "S4", "A4"),
            explicit!(
                5,
                &["(1,2,3)", "(1,2,4)", "(1,2,5)"],
                &["(1,2,3)", "(1,2,4)"],
                4,
                &["(1,2,3,4)", "(1,2)"],
                &["(1,2,3)", "(1,2,4)"]
            ),
        ),
        row(
            "Q2^8",
            2,
            ("A5", "A4 x C2", "A4"),
            explicit!(
                5,
                &["(1,2,3)", "(1,2,4)", "(1,2,5)"],
                &["(1,2,3)", "(1,2,4)"],
                6,
                &["(1,2,3)", "(1,2,4)", "(5,6)"],
                &["(1,2,3)", "(1,2,4)"]
            ),
        ),
        row(
            "Q2^9",
            2,
            ("S5", "S4 x C2", "S4"),
            explicit!(
                5,
                &["(1,2,3,4,5)", "(1,2)"],
                &["(1,2,3,4)", "(1,2)"],
                6,
                &["(1,2,3,4)", "(1,2)", "(5,6)"],
                &["(1,2,3,4)", "(1,2)"]
            ),
        ),
        row(
            "Q3^1",
            3,
            ("Frob20 x C4", "C4 wr C2", "C4 x C4"),
            explicit!(
                9,
                &["(1,2,3,4,5)", "(2,3,5,4)", "(6,7,8,9)"],
                &["(2,3,5,4)", "(6,7,8,9)"],
                8,
                &["(1,2,3,4)", "(5,6,7,8)", SWAP8],
                &["(1,2,3,4)", "(5,6,7,8)"]
            ),
        ),
        row(
            "Q3^2",
            3,
            ("A5 x A4", "A4 wr C2", "A4 x A4"),
            explicit!(
                9,
                A5_A4,
                &["(1,2,3)", "(1,2,4)", "(6,7,8)", "(6,7,9)"],
                8,
                &["(1,2,3)", "(1,2,4)", "(5,6,7)", "(5,6,8)", SWAP8],
                &["(1,2,3)", "(1,2,4)", "(5,6,7)", "(5,6,8)"]
            ),
        ),
        row(
            "Q3^3",
            3,
            ("S5 star S4", "L1", "S4 star S4"),
            explicit!(
                9,
                S5_STAR_S4,
                S4_STAR_S4_IN_A1,
                8,
                &["(1,2,3)", "(2,3,4)", "(5,6,7)", "(6,7,8)", "(1,2)(5,6)", SWAP8],
                S4_STAR_S4_IN_A2
            ),
        ),
        row(
            "Q3^4",
            3,
            ("S5 star S4", "L2", "S4 star S4"),
            explicit!(
                9,
                S5_STAR_S4,
                S4_STAR_S4_IN_A1,
                8,
                &["(1,2,3)", "(2,3,4)", "(5,6,7)", "(6,7,8)", "(1,6,2,5)(3,7)(4,8)"],
                S4_STAR_S4_IN_A2
            ),
        ),
        row(
            "Q3^5",
            3,
            ("S5 x S4", "S4 wr C2", "S4 x S4"),
            explicit!(
                9,
                &["(1,2,3,4,5)", "(1,2)", "(6,7,8,9)", "(6,7)"],
                &["(1,2,3,4)", "(1,2)", "(6,7,8,9)", "(6,7)"],
                8,
                &["(1,2,3,4)", "(1,2)", "(5,6,7,8)", "(5,6)", SWAP8],
                &["(1,2,3,4)", "(1,2)", "(5,6,7,8)", "(5,6)"]
            ),
        ),
        row("Q4^1", 4, ("2^4:A5", "2^(2+2+2):S3", "2^4:A4"), Construction::Plane(1)),
        row("Q4^2", 4, ("2^4:A5", "2^(2+2+2):C6", "2^4:A4"), Construction::Plane(2)),
        row("Q4^3", 4, ("2^4:(A5 x C3)", "(2^(2+4):3):S3", "2^(2+4):3^2"), Construction::Plane(3)),
        row("Q4^4", 4, ("2^4:(A5 x C3)", "(2^(2+4):3):C6", "2^(2+4):3^2"), Construction::Plane(4)),
        row("Q4^5", 4, ("2^4:S5", "2^(2+4+1):S3", "2^(2+4):S3"), Construction::Plane(5)),
        row("Q4^6", 4, ("2^4:(S5 star S3)", "2^(2+4):S3^2", "2^(2+4):(S4 star S3)"), Construction::Plane(6)),
        row(
            "Q5^1",
            5,
            ("2^6:(S5 star S3)", "(2^6:(A4 x C3)):C4", "2^6:(S4 star S3)"),
            Construction::Quadrangle,
        ),
    ]
}

pub fn catalog() -> &'static [CatalogRow] {
    static CATALOG: OnceLock<Vec<CatalogRow>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

/// Looks a row up by label; accepts `Q3^1`, `Q3_1` and `q31`.
pub fn find_row(label: &str) -> Option<&'static CatalogRow> {
    let key: String = label
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_uppercase();
    catalog().iter().find(|r| r.label.replace('^', "") == key)
}

/// The three amalgams of type `(Frob20 x C4, C4 wr C2, C4 x C4)` obtained
/// by sending the second generator of `B` to `e`, `de` and `de⁻¹`, where
/// `d, e` generate the base of the wreath product.
pub fn example_variants() -> [Amalgam; 3] {
    let second = ["(5,6,7,8)", "(1,2,3,4)(5,6,7,8)", "(1,2,3,4)(5,8,7,6)"];
    second.map(|h| {
        Explicit {
            a1_degree: 9,
            a1: &["(1,2,3,4,5)", "(2,3,5,4)", "(6,7,8,9)"],
            b: &["(2,3,5,4)", "(6,7,8,9)"],
            a2_degree: 8,
            a2: &["(1,2,3,4)", "(5,6,7,8)", SWAP8],
            pi2: &[],
        }
        .build_with(&["(1,2,3,4)", h])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(catalog().len(), 25);
        assert_eq!(find_row("Q3^1").unwrap().label, "Q3^1");
        assert_eq!(find_row("q2_9").unwrap().label, "Q2^9");
        assert!(find_row("Q6^1").is_none());
        assert_eq!(catalog().iter().filter(|r| r.s == 4).count(), 6);
    }

    #[test]
    fn explicit_rows_have_named_orders() {
        for r in catalog().iter().filter(|r| !r.is_geometric()) {
            let am = r.amalgam();
            let (o1, o2, ob) = r.expected_orders().unwrap();
            assert_eq!(
                (am.a1().order(), am.a2().order(), am.b().order()),
                (o1, o2, ob),
                "{}",
                r.label
            );
        }
    }

    #[test]
    fn every_row_is_primitive_of_degree_5_2() {
        for r in catalog() {
            let am = r.amalgam();
            assert_eq!(am.degree(), (5, 2), "{}", r.label);
            assert!(am.is_primitive().unwrap(), "{}", r.label);
            if am.b().order() <= 64 {
                assert!(am.primitive_brute_oracle().unwrap(), "{}", r.label);
            }
        }
    }
}
