//! Finite completions of the `s ≤ 3` presentations: a search over extra
//! relators and the relators it found, frozen per row.

use crate::error::{Error, Result};
use crate::fp::quotient::{quotient_search, relator_pool, try_completion, Completion};
use crate::fp::table3::{table3_row, verify_presentation_s_le_3, Table3Row};
use crate::fp::presentation::Presentation;
use crate::fp::quotient::StabilizerWords;

/// Extra relator per row, as found by [`search_completion`], with the
/// expected completion order and number of vertices.
pub const FROZEN_COMPLETIONS: &[(&str, &str, u128, usize)] = &[
    ("Q1^1", "(ba)^3", 60, 12),
    ("Q1^2", "(ba)^3", 120, 12),
    ("Q1^3", "(ba)^4", 100, 10),
    ("Q1^4", "(ba)^4", 200, 10),
    ("Q2^1", "(ba)^4", 640, 32),
    ("Q2^2", "(ba)^6", 15840, 792),
    ("Q2^3", "(ba)^3", 120, 6),
    ("Q2^4", "(ba)^3", 120, 6),
    ("Q2^5", "(ba)^6", 17280, 432),
    ("Q2^6", "(cabab)^4", 400, 10),
    ("Q2^7", "(ba)^4", 720, 12),
    ("Q2^8", "(ba)^4", 720, 12),
    ("Q2^9", "(baba^-1)^2", 3840, 32),
    ("Q3^1", "(c^2ab)^4", 800, 10),
    ("Q3^2", "(ba)^6", 7200, 10),
    ("Q3^3", "(ba)^6", 14400, 10),
    ("Q3^4", "(bab^-1a)^3", 14400, 10),
    ("Q3^5", "(ba)^9", 362880, 126),
];

pub const COMPLETION_MAX_COSETS: usize = 100_000;

/// The presentation with `R` completed, ready for quotient search.
pub fn completion_setup(row: &Table3Row) -> Result<(Presentation, StabilizerWords)> {
    let check = verify_presentation_s_le_3(row, 1_000_000)?;
    let split = row.split()?;
    let p = row.completion_presentation(&split, &check.completed_r)?;
    let stab = row.stabilizer_words(&p, check.b_order as u128)?;
    Ok((p, stab))
}

fn pools(row: &Table3Row) -> [Vec<crate::fp::word::Word>; 2] {
    let exps: Vec<i64> = (2..=12).collect();
    [relator_pool(2, &[0, 1], 4, &exps), relator_pool(row.generators.len(), &[0, 1], 5, &exps)]
}

/// Up to `limit` completions: first from `w^k` in `a`, `b` (length ≤ 4,
/// `k ≤ 12`), then from words of length ≤ 5 in all generators.
pub fn enumerate_completions(row: &Table3Row, max_cosets: usize, limit: usize) -> Result<Vec<Completion>> {
    let (p, stab) = completion_setup(row)?;
    let mut out = Vec::new();
    for pool in pools(row) {
        let found = quotient_search(&p, &stab, &pool, max_cosets, limit - out.len())?;
        out.extend(found);
        if out.len() >= limit {
            break;
        }
    }
    Ok(out)
}

/// The first completion of [`enumerate_completions`].
pub fn search_completion(row: &Table3Row, max_cosets: usize) -> Result<Option<Completion>> {
    Ok(enumerate_completions(row, max_cosets, 1)?.into_iter().next())
}

/// Rebuilds the frozen completion of a row and checks its order and degree.
pub fn frozen_completion(label: &str) -> Result<Completion> {
    let row = table3_row(label).ok_or_else(|| Error::Invalid(format!("no presentation for {label}")))?;
    let &(_, rel, order, vertices) = FROZEN_COMPLETIONS
        .iter()
        .find(|f| f.0 == label)
        .ok_or_else(|| Error::Invalid(format!("no frozen completion for {label}")))?;
    let (p, stab) = completion_setup(row)?;
    let w = p.word(rel)?;
    let c = try_completion(&p, &stab, &w, COMPLETION_MAX_COSETS)?
        .ok_or_else(|| Error::Invalid(format!("{label}: {rel} does not give a completion")))?;
    if c.group.order() != order || c.group.degree() != vertices {
        return Err(Error::Invalid(format!(
            "{label}: completion has order {} on {} points, expected {order} on {vertices}",
            c.group.order(),
            c.group.degree()
        )));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::table3::TABLE3;

    #[test]
    #[ignore = "search over all rows; prints the relators to freeze"]
    fn regenerate_frozen() {
        for row in TABLE3 {
            let c = search_completion(row, COMPLETION_MAX_COSETS).unwrap().unwrap();
            let s = c.summary();
            println!("(\"{}\", \"{}\", {}, {}),", row.label, s.extra_relator, s.order, s.vertices);
        }
    }

    #[test]
    fn frozen_completions_rebuild() {
        for &(label, _, order, vertices) in FROZEN_COMPLETIONS {
            let c = frozen_completion(label).unwrap();
            assert_eq!((c.group.order(), c.group.degree()), (order, vertices), "{label}");
            assert_eq!(c.a1.order() * c.group.degree() as u128, order, "{label}: vertex-transitive");
        }
    }
}
