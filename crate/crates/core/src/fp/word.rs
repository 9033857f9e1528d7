//! Free-group words over numbered generators.

use std::fmt;

use crate::perm::Permutation;

/// A letter is `g + 1` for generator `g` and `-(g + 1)` for its inverse.
pub type Letter = i32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(index: usize) -> Self {
        Word(vec![index as Letter + 1])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.0 {
            push_reduced(&mut out.0, l);
        }
        out
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `y⁻¹ self y`.
    pub fn conjugate(&self, y: &Word) -> Word {
        y.inverse().concat(self).concat(y)
    }

    /// `[self, y] = self⁻¹ y⁻¹ self y`.
    pub fn commutator(&self, y: &Word) -> Word {
        self.inverse().concat(&y.inverse()).concat(self).concat(y)
    }

    pub fn reduced(&self) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// Cyclically reduced form.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.reduced().0;
        while w.len() >= 2 && w[0] == -w[w.len() - 1] {
            w.remove(0);
            w.pop();
        }
        Word(w)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    pub fn uses_only(&self, allowed: &[usize]) -> bool {
        self.0
            .iter()
            .all(|l| allowed.contains(&(l.unsigned_abs() as usize - 1)))
    }

    /// Value under an assignment of permutations to the generators.
    pub fn evaluate(&self, images: &[Permutation], degree: usize) -> Permutation {
        let inverses: Vec<Permutation> = images.iter().map(Permutation::inverse).collect();
        self.evaluate_with(images, &inverses, degree)
    }

    pub fn evaluate_with(
        &self,
        images: &[Permutation],
        inverses: &[Permutation],
        degree: usize,
    ) -> Permutation {
        let mut acc: Vec<u32> = (0..degree as u32).collect();
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            let p = if l > 0 { &images[g] } else { &inverses[g] };
            for x in acc.iter_mut() {
                *x = p.image(*x);
            }
        }
        Permutation::from_images_unchecked(acc)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

fn push_reduced(w: &mut Vec<Letter>, l: Letter) {
    if w.last() == Some(&-l) {
        w.pop();
    } else {
        w.push(l);
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let letters = &self.word.0;
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = &self.names[letters[i].unsigned_abs() as usize - 1];
            let exp = (j - i) as i64 * letters[i].signum() as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word(vec![1, 2, -2, -1, 3]);
        assert_eq!(w.reduced(), Word(vec![3]));
        assert_eq!(Word(vec![-1, 2, 1]).cyclically_reduced(), Word(vec![2]));
    }

    #[test]
    fn commutator_word() {
        let a = Word::gen(0);
        let c = Word::gen(2);
        assert_eq!(a.commutator(&c), Word(vec![-1, -3, 1, 3]));
    }

    #[test]
    fn evaluation_matches_product() {
        let x = Permutation::parse_cycles("(1,2,3)", 3).unwrap();
        let y = Permutation::parse_cycles("(1,2)", 3).unwrap();
        let w = Word(vec![1, -2, 1]);
        assert_eq!(
            w.evaluate(&[x.clone(), y.clone()], 3),
            &(&x * &y.inverse()) * &x
        );
    }
}
