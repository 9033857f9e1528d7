//! Named finite groups and small-group identification.

mod iso;

pub use iso::{fingerprint, is_isomorphic, small_generating_set, Fingerprint};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A group named by its isomorphism type, realized on a fixed point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NamedGroup {
    Trivial,
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    Quaternion,
    Frob20,
    M16,
    N16,
    Alternating(usize),
    Symmetric(usize),
    /// `2^k`.
    ElementaryAbelian2(u32),
    Direct(Vec<NamedGroup>),
    /// Wreath product with `C2` acting on two copies.
    WreathC2(Box<NamedGroup>),
    /// Index-two subgroup of `S_m × S_n` with no full symmetric factor.
    Star(usize, usize),
    L1,
    L2,
}

fn perm(text: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(text, degree).expect("well-formed literal")
}

fn group(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(degree, gens.iter().map(|g| perm(g, degree)).collect()).expect("same degree")
}

/// Disjoint-union product of groups on consecutive point blocks.
pub fn direct_product(factors: &[PermGroup]) -> PermGroup {
    let total: usize = factors.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        gens.extend(f.generators().iter().map(|g| g.shift(offset, total)));
        offset += f.degree();
    }
    PermGroup::new(total.max(1), gens).expect("consistent degree")
}

/// `base wr C2` on two copies of the base's points.
pub fn wreath_c2(base: &PermGroup) -> PermGroup {
    let m = base.degree();
    let mut gens: Vec<Permutation> = base
        .generators()
        .iter()
        .flat_map(|g| [g.shift(0, 2 * m), g.shift(m, 2 * m)])
        .collect();
    let swap: Vec<u32> = (0..2 * m as u32).map(|p| (p + m as u32) % (2 * m as u32)).collect();
    gens.push(Permutation::from_images(swap).expect("involution"));
    PermGroup::new(2 * m, gens).expect("consistent degree")
}

impl NamedGroup {
    /// Permutation realization; explicit generators where the literature fixes
    /// them, otherwise the natural or smallest convenient action.
    pub fn realize(&self) -> Result<PermGroup> {
        Ok(match self {
            NamedGroup::Trivial | NamedGroup::Cyclic(1) => PermGroup::trivial(1),
            NamedGroup::Cyclic(n) => PermGroup::cyclic(*n),
            NamedGroup::Dihedral(order) => {
                if *order < 6 || order % 2 == 1 {
                    return Err(Error::Invalid(format!("no dihedral group of order {order} here")));
                }
                let n = order / 2;
                let rotation: Vec<u32> = (0..n as u32).collect();
                let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
                PermGroup::new(
                    n,
                    vec![
                        Permutation::from_cycles(n, &[rotation])?,
                        Permutation::from_images(reflection)?,
                    ],
                )?
            }
            NamedGroup::Quaternion => group(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]),
            NamedGroup::Frob20 => group(5, &["(1,2,3,4,5)", "(2,3,5,4)"]),
            NamedGroup::M16 => group(8, &["(1,2,3,4,5,6,7,8)", "(2,6)(4,8)"]),
            NamedGroup::N16 => group(
                8,
                &["(1,2,3,4)(5,6,7,8)", "(5,7)(6,8)", "(1,5)(2,6)(3,7)(4,8)"],
            ),
            NamedGroup::Alternating(n) if *n >= 3 => PermGroup::alternating(*n),
            NamedGroup::Symmetric(n) if *n >= 2 => PermGroup::symmetric(*n),
            NamedGroup::Alternating(n) | NamedGroup::Symmetric(n) => {
                return Err(Error::Invalid(format!("degree {n} too small")))
            }
            NamedGroup::ElementaryAbelian2(k) => {
                let c2 = PermGroup::cyclic(2);
                direct_product(&vec![c2; *k as usize])
            }
            NamedGroup::Direct(parts) => {
                let groups = parts.iter().map(|p| p.realize()).collect::<Result<Vec<_>>>()?;
                direct_product(&groups)
            }
            NamedGroup::WreathC2(base) => wreath_c2(&base.realize()?),
            NamedGroup::Star(m, n) => {
                if *m < 2 || *n < 2 {
                    return Err(Error::Invalid("star product needs degrees at least 2".into()));
                }
                let total = m + n;
                let mut gens: Vec<Permutation> = Vec::new();
                if *m >= 3 {
                    gens.extend(PermGroup::alternating(*m).generators().iter().map(|g| g.shift(0, total)));
                }
                if *n >= 3 {
                    gens.extend(PermGroup::alternating(*n).generators().iter().map(|g| g.shift(*m, total)));
                }
                let (m, total) = (*m as u32, total);
                gens.push(Permutation::from_cycles(total, &[vec![m - 2, m - 1], vec![m, m + 1]])?);
                PermGroup::new(total, gens)?
            }
            NamedGroup::L1 => group(
                8,
                &["(1,2,3)", "(2,3,4)", "(5,6,7)", "(6,7,8)", "(1,2)(5,6)", "(1,5)(2,6)(3,7)(4,8)"],
            ),
            NamedGroup::L2 => group(
                8,
                &["(1,2,3)", "(2,3,4)", "(5,6,7)", "(6,7,8)", "(1,6,2,5)(3,7)(4,8)"],
            ),
        })
    }

    /// Order implied by the name alone.
    pub fn expected_order(&self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        match self {
            NamedGroup::Trivial => 1,
            NamedGroup::Cyclic(n) | NamedGroup::Dihedral(n) => *n as u128,
            NamedGroup::Quaternion => 8,
            NamedGroup::Frob20 => 20,
            NamedGroup::M16 | NamedGroup::N16 => 16,
            NamedGroup::Alternating(n) => fact(*n) / 2,
            NamedGroup::Symmetric(n) => fact(*n),
            NamedGroup::ElementaryAbelian2(k) => 1 << k,
            NamedGroup::Direct(parts) => parts.iter().map(|p| p.expected_order()).product(),
            NamedGroup::WreathC2(b) => 2 * b.expected_order().pow(2),
            NamedGroup::Star(m, n) => fact(*m) * fact(*n) / 2,
            NamedGroup::L1 | NamedGroup::L2 => 576,
        }
    }
}

impl fmt::Display for NamedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGroup::Trivial => write!(f, "1"),
            NamedGroup::Cyclic(n) => write!(f, "C{n}"),
            NamedGroup::Dihedral(n) => write!(f, "D{n}"),
            NamedGroup::Quaternion => write!(f, "Q8"),
            NamedGroup::Frob20 => write!(f, "Frob20"),
            NamedGroup::M16 => write!(f, "M16"),
            NamedGroup::N16 => write!(f, "N16"),
            NamedGroup::Alternating(n) => write!(f, "A{n}"),
            NamedGroup::Symmetric(n) => write!(f, "S{n}"),
            NamedGroup::ElementaryAbelian2(k) => write!(f, "2^{k}"),
            NamedGroup::Direct(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            NamedGroup::WreathC2(b) => write!(f, "{b} wr C2"),
            NamedGroup::Star(m, n) => write!(f, "S{m} star S{n}"),
            NamedGroup::L1 => write!(f, "L1"),
            NamedGroup::L2 => write!(f, "L2"),
        }
    }
}

fn parse_atom(s: &str) -> Result<NamedGroup> {
    let bad = || Error::Parse(format!("unknown group name {s:?}"));
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
    Ok(match s {
        "1" => NamedGroup::Trivial,
        "Q8" => NamedGroup::Quaternion,
        "Frob20" | "Frob(20)" => NamedGroup::Frob20,
        "M16" => NamedGroup::M16,
        "N16" => NamedGroup::N16,
        "L1" => NamedGroup::L1,
        "L2" => NamedGroup::L2,
        _ => {
            if let Some(k) = s.strip_prefix("2^") {
                NamedGroup::ElementaryAbelian2(k.parse().map_err(|_| bad())?)
            } else if let Some(n) = s.strip_prefix('C') {
                NamedGroup::Cyclic(num(n)?)
            } else if let Some(n) = s.strip_prefix('D') {
                NamedGroup::Dihedral(num(n)?)
            } else if let Some(n) = s.strip_prefix('A') {
                NamedGroup::Alternating(num(n)?)
            } else if let Some(n) = s.strip_prefix('S') {
                NamedGroup::Symmetric(num(n)?)
            } else {
                return Err(bad());
            }
        }
    })
}

impl FromStr for NamedGroup {
    type Err = Error;

    /// Accepts names such as `Frob20 x C4`, `S5 star S4`, `A4 wr C2`, `2^2`.
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty group name".into()));
        }
        if tokens.len() == 3 && tokens[1] == "star" {
            let deg = |t: &str| match parse_atom(t)? {
                NamedGroup::Symmetric(n) => Ok(n),
                _ => Err(Error::Parse(format!("star product of non-symmetric {t:?}"))),
            };
            return Ok(NamedGroup::Star(deg(tokens[0])?, deg(tokens[2])?));
        }
        if tokens.len() == 3 && tokens[1] == "wr" {
            if tokens[2] != "C2" {
                return Err(Error::Parse("only wreath products with C2 are supported".into()));
            }
            return Ok(NamedGroup::WreathC2(Box::new(parse_atom(tokens[0])?)));
        }
        let mut parts = Vec::new();
        for (i, t) in tokens.iter().enumerate() {
            if i % 2 == 1 {
                if *t != "x" {
                    return Err(Error::Parse(format!("expected 'x' in {s:?}")));
                }
            } else {
                parts.push(parse_atom(t)?);
            }
        }
        if tokens.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("dangling 'x' in {s:?}")));
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            NamedGroup::Direct(parts)
        })
    }
}

/// Transitive groups of degree five, by order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitiveQuintic {
    C5,
    D10,
    Frob20,
    A5,
    S5,
}

pub fn classify_transitive_s5(g: &PermGroup) -> Result<TransitiveQuintic> {
    if g.degree() != 5 || !g.is_transitive() {
        return Err(Error::Invalid("expected a transitive group on 5 points".into()));
    }
    Ok(match g.order() {
        5 => TransitiveQuintic::C5,
        10 => TransitiveQuintic::D10,
        20 => TransitiveQuintic::Frob20,
        60 => TransitiveQuintic::A5,
        120 => TransitiveQuintic::S5,
        n => unreachable!("transitive group of degree 5 with order {n}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_generators() {
        let m16 = NamedGroup::M16.realize().unwrap();
        assert_eq!(m16.generators()[1].to_string(), "(2,6)(4,8)");
        assert_eq!(m16.order(), 16);
        let star = NamedGroup::Star(3, 3).realize().unwrap();
        let shown: Vec<String> = star.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["(1,2,3)", "(4,5,6)", "(2,3)(4,5)"]);
        assert_eq!(star.order(), 18);
    }

    #[test]
    fn orders_match_names() {
        for name in [
            "1", "C5", "D10", "D8", "Q8", "Frob20", "M16", "N16", "A5", "S4", "2^2", "Frob20 x C4",
            "C4 wr C2", "A4 wr C2", "S4 wr C2", "S5 star S4", "S4 star S4", "L1", "L2", "S5 x S4",
            "A4 x C2", "C4 x C2",
        ] {
            let g: NamedGroup = name.parse().unwrap();
            assert_eq!(g.realize().unwrap().order(), g.expected_order(), "{name}");
            assert_eq!(g.to_string().parse::<NamedGroup>().unwrap(), g);
        }
    }

    #[test]
    fn realize_is_deterministic() {
        let a = NamedGroup::from_str("A4 wr C2").unwrap().realize().unwrap();
        let b = NamedGroup::from_str("A4 wr C2").unwrap().realize().unwrap();
        assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn bad_names() {
        assert!("X7".parse::<NamedGroup>().is_err());
        assert!("S4 x".parse::<NamedGroup>().is_err());
        assert!("A4 wr C3".parse::<NamedGroup>().is_err());
        assert!(NamedGroup::Dihedral(4).realize().is_err());
    }

    #[test]
    fn transitive_quintics() {
        let c5 = PermGroup::cyclic(5);
        assert_eq!(classify_transitive_s5(&c5).unwrap(), TransitiveQuintic::C5);
        let f20 = NamedGroup::Frob20.realize().unwrap();
        assert_eq!(classify_transitive_s5(&f20).unwrap(), TransitiveQuintic::Frob20);
        assert_eq!(
            classify_transitive_s5(&PermGroup::alternating(5)).unwrap(),
            TransitiveQuintic::A5
        );
        assert!(classify_transitive_s5(&PermGroup::symmetric(4)).is_err());
    }
}
