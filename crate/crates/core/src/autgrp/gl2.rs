//! `GL2(Z/4)` as the automorphism group of `C4 × C4`: a matrix `M` sends
//! the row vector `x` to `x M`, so `u ↦ u^a v^b` and `v ↦ u^c v^d` for
//! `M = [[a, b], [c, d]]` in the basis `(u, v)`.

use serde::{Deserialize, Serialize};

use super::AutGroup;
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matrix2(pub [[u8; 2]; 2]);

impl Matrix2 {
    pub fn mul(&self, other: &Matrix2) -> Matrix2 {
        let (a, b) = (self.0, other.0);
        let mut out = [[0u8; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 4;
            }
        }
        Matrix2(out)
    }

    pub fn det(&self) -> u8 {
        let m = self.0;
        ((m[0][0] * m[1][1]) % 4 + 4 - (m[0][1] * m[1][0]) % 4) % 4
    }
}

/// The 96 invertible matrices over `Z/4`, in lexicographic order.
pub fn gl2_z4_elements() -> Vec<Matrix2> {
    let mut out = Vec::new();
    for code in 0..256u32 {
        let e = |k: u32| ((code >> (2 * k)) & 3) as u8;
        let m = Matrix2([[e(3), e(2)], [e(1), e(0)]]);
        if m.det() % 2 == 1 {
            out.push(m);
        }
    }
    out
}

/// A basis of `B ≅ C4 × C4` in which the given matrices generate the
/// computed `A1*` and `A2*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl2Basis {
    pub u: String,
    pub v: String,
    /// How many ordered bases work.
    pub matching_bases: usize,
}

fn matrix_action(aut_b: &AutGroup, u: &Permutation, v: &Permutation, m: &Matrix2) -> Option<Permutation> {
    let n = aut_b.elements().len();
    let power = |x: &Permutation, k: u8| x.pow(k as i64);
    let elem = |i: u8, j: u8| &power(u, i % 4) * &power(v, j % 4);
    let mut images = vec![u32::MAX; n];
    let [[a, b], [c, d]] = m.0;
    for i in 0..4u8 {
        for j in 0..4u8 {
            let src = aut_b.index_of(&elem(i, j))?;
            let dst = aut_b.index_of(&elem(a * i + c * j, b * i + d * j))?;
            images[src as usize] = dst;
        }
    }
    Permutation::from_images(images).ok()
}

/// Searches all ordered bases `(u, v)` of `B` for one in which `m1`
/// generates `a1_star` and `m2` generates `a2_star`.
pub fn gl2_z4_basis_check(
    aut_b: &AutGroup,
    a1_star: &PermGroup,
    a2_star: &PermGroup,
    m1: &[Matrix2],
    m2: &[Matrix2],
) -> Option<Gl2Basis> {
    let b = aut_b.base();
    if b.order() != 16 {
        return None;
    }
    let fours: Vec<&Permutation> = aut_b.elements().iter().filter(|x| x.order() == 4).collect();
    let mut first: Option<(String, String)> = None;
    let mut matching = 0;
    for &u in &fours {
        for &v in &fours {
            if PermGroup::generated_by(b.degree(), [u, v]).order() != 16 {
                continue;
            }
            let build = |ms: &[Matrix2]| -> Option<PermGroup> {
                let gens = ms.iter().map(|m| matrix_action(aut_b, u, v, m)).collect::<Option<Vec<_>>>()?;
                PermGroup::new(aut_b.elements().len(), gens).ok()
            };
            let (Some(g1), Some(g2)) = (build(m1), build(m2)) else {
                continue;
            };
            if g1.same_group(a1_star) && g2.same_group(a2_star) {
                matching += 1;
                first.get_or_insert_with(|| (u.to_string(), v.to_string()));
            }
        }
    }
    first.map(|(u, v)| Gl2Basis { u, v, matching_bases: matching })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn closure(gens: &[Matrix2]) -> BTreeSet<Matrix2> {
        let mut set = BTreeSet::from([Matrix2([[1, 0], [0, 1]])]);
        let mut frontier: Vec<Matrix2> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn gl2_z4_has_96_elements() {
        let all = gl2_z4_elements();
        assert_eq!(all.len(), 96);
        assert_eq!(closure(&all).len(), 96);
    }

    #[test]
    fn matrix_double_cosets_by_brute_force() {
        let s1 = closure(&[Matrix2([[1, 0], [0, 3]]), Matrix2([[1, 1], [0, 1]])]);
        let s2 = closure(&[Matrix2([[3, 0], [0, 3]]), Matrix2([[0, 1], [1, 0]]), Matrix2([[2, 1], [1, 2]])]);
        assert_eq!((s1.len(), s2.len()), (8, 8));
        let mut seen = BTreeSet::new();
        let mut classes = 0;
        for x in gl2_z4_elements() {
            if seen.contains(&x) {
                continue;
            }
            classes += 1;
            for a in &s1 {
                for b in &s2 {
                    seen.insert(a.mul(&x).mul(b));
                }
            }
        }
        assert_eq!(classes, 3);
    }
}
