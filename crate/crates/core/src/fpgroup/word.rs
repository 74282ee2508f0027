//! Words in a free group, stored as signed 1-based generator indices.
//!
//! Letter `k > 0` is generator `k - 1`, letter `-k` is its inverse. Every
//! constructor reduces eagerly, so a `Word` is always freely reduced.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<i32>);

/// Letter for generator `gen` raised to the sign of `positive`.
pub fn letter(gen: usize, positive: bool) -> i32 {
    let l = gen as i32 + 1;
    if positive {
        l
    } else {
        -l
    }
}

/// Generator index of a letter.
pub fn gen_of(letter: i32) -> usize {
    (letter.unsigned_abs() - 1) as usize
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut w = Word(Vec::new());
        for l in letters {
            w.push(l);
        }
        w
    }

    /// `gen^exp`.
    pub fn power_of(gen: usize, exp: i64) -> Self {
        let l = letter(gen, exp >= 0);
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    /// Commutator `x y x^-1 y^-1`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    fn push(&mut self, l: i32) {
        debug_assert!(l != 0);
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Sum of exponents of `gen`.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0
            .iter()
            .filter(|&&l| gen_of(l) == gen)
            .map(|&l| l.signum() as i64)
            .sum()
    }

    /// Number of occurrences of `gen` or its inverse.
    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|&&l| gen_of(l) == gen).count()
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| gen_of(l))
    }

    /// Removes inverse pairs that meet across the ends of the word.
    pub fn cyclically_reduced(&self) -> Self {
        let v = &self.0;
        let (mut i, mut j) = (0, v.len());
        while j >= i + 2 && v[i] == -v[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(v[i..j].to_vec())
    }

    /// Replaces every occurrence of `gen` by `image`, leaving other letters.
    pub fn substitute(&self, gen: usize, image: &Word) -> Self {
        let inv = image.inverse();
        let mut w = Word::identity();
        for &l in &self.0 {
            if gen_of(l) == gen {
                let piece = if l > 0 { image } else { &inv };
                for &m in &piece.0 {
                    w.push(m);
                }
            } else {
                w.push(l);
            }
        }
        w
    }

    /// Applies `f` to every generator index.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        Word::from_letters(self.0.iter().map(|&l| letter(f(gen_of(l)), l > 0)))
    }

    /// Run-length encoding as `(generator, exponent)` blocks.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for &l in &self.0 {
            let g = gen_of(l);
            let s = l.signum() as i64;
            match out.last_mut() {
                Some((h, e)) if *h == g && e.signum() == s => *e += s,
                _ => out.push((g, s)),
            }
        }
        out
    }

    /// True when `other` is a cyclic permutation of this word or of its inverse.
    pub fn is_cyclic_conjugate(&self, other: &Word) -> bool {
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let rotates_to = |x: &[i32], y: &[i32]| {
            let n = x.len();
            (0..n).any(|s| (0..n).all(|i| x[(i + s) % n] == y[i]))
        };
        rotates_to(&a.0, &b.0) || rotates_to(&a.inverse().0, &b.0)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eager_free_reduction() {
        let w = Word::from_letters([1, 2, -2, -1, 3]);
        assert_eq!(w.letters(), &[3]);
        let x = Word::from_letters([1, 2]);
        assert!(x.concat(&x.inverse()).is_empty());
    }

    #[test]
    fn cyclic_reduction_and_conjugacy() {
        let w = Word::from_letters([-1, 2, 3, 1]);
        assert_eq!(w.cyclically_reduced().letters(), &[2, 3]);
        let u = Word::from_letters([1, 2, 3]);
        assert!(u.is_cyclic_conjugate(&Word::from_letters([3, 1, 2])));
        assert!(u.is_cyclic_conjugate(&Word::from_letters([-1, -3, -2])));
        assert!(!u.is_cyclic_conjugate(&Word::from_letters([1, 3, 2])));
    }

    #[test]
    fn substitution_and_syllables() {
        // a b c with c := (a b)^-1 collapses.
        let w = Word::from_letters([1, 2, 3]);
        let c = Word::from_letters([1, 2]).inverse();
        assert!(w.substitute(2, &c).is_empty());
        let v = Word::from_letters([1, 1, -2, -2, -2, 1]);
        assert_eq!(v.syllables(), vec![(0, 2), (1, -3), (0, 1)]);
        assert_eq!(v.exponent_sum(0), 3);
        assert_eq!(Word::power_of(1, -2).letters(), &[-2, -2]);
    }
}
