//! Multiplication tables of small finite groups.
//!
//! Tables are built by closing a set of generating permutations; element 0
//! is always the identity.

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("group axiom fails: {0}")]
    NotAGroup(String),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
}

type Perm = Vec<u8>;

fn compose(p: &[u8], q: &[u8]) -> Perm {
    // apply p then q
    p.iter().map(|&i| q[i as usize]).collect()
}

impl FiniteGroupTable {
    /// Closure of the given permutations of `0..degree`.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Perm]) -> Self {
        let id: Perm = (0..degree as u8).collect();
        let mut elems: Vec<Perm> = vec![id.clone()];
        let mut index: HashMap<Perm, u32> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                assert_eq!(g.len(), degree);
                let p = compose(&elems[i], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len() as u32);
                    elems.push(p);
                }
            }
            i += 1;
        }
        Self::from_elements(name, &elems, &index)
    }

    /// All permutations of `0..degree` passing `keep`.
    fn from_filtered_perms(name: &str, degree: usize, keep: impl Fn(&[u8]) -> bool) -> Self {
        let mut elems: Vec<Perm> = Vec::new();
        let mut cur: Perm = (0..degree as u8).collect();
        loop {
            if keep(&cur) {
                elems.push(cur.clone());
            }
            if !next_permutation(&mut cur) {
                break;
            }
        }
        // identity is the lexicographically first permutation
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        Self::from_elements(name, &elems, &index)
    }

    fn from_elements(name: impl Into<String>, elems: &[Perm], index: &HashMap<Perm, u32>) -> Self {
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for (i, p) in elems.iter().enumerate() {
            for (j, q) in elems.iter().enumerate() {
                mul[i * n + j] = index[&compose(p, q)];
            }
        }
        Self::from_table(name, mul).expect("permutation closure is a group")
    }

    /// Wraps a raw Cayley table (row-major, element 0 the identity) after
    /// checking the group axioms exhaustively.
    pub fn from_table(name: impl Into<String>, mul: Vec<u32>) -> Result<Self, TableError> {
        let n = (mul.len() as f64).sqrt() as usize;
        if n * n != mul.len() || n == 0 {
            return Err(TableError::NotAGroup("table is not square".into()));
        }
        if mul.iter().any(|&x| x as usize >= n) {
            return Err(TableError::NotAGroup("entry out of range".into()));
        }
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(TableError::NotAGroup("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![0u32; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            match (0..n).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => *slot = b as u32,
                _ => return Err(TableError::NotAGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(TableError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let orders = (0..n)
            .map(|a| {
                let (mut x, mut k) = (a, 1u32);
                while x != 0 {
                    x = at(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroupTable {
            name: name.into(),
            order: n,
            mul,
            inv,
            orders,
        })
    }

    pub fn trivial() -> Self {
        Self::from_table("1", vec![0]).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Self::from_table(format!("C{n}"), mul).unwrap()
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rot: Perm = (0..n).map(|i| ((i + 1) % n) as u8).collect();
        let refl: Perm = (0..n).map(|i| ((n - i) % n) as u8).collect();
        Self::from_permutations(format!("D{}", 2 * n), n, &[rot, refl])
    }

    pub fn symmetric(n: usize) -> Self {
        Self::from_filtered_perms(&format!("S{n}"), n, |_| true)
    }

    /// Even permutations of `n` symbols.
    pub fn alternating(n: usize) -> Self {
        Self::from_filtered_perms(&format!("A{n}"), n, is_even)
    }

    pub fn quaternion() -> Self {
        // left-regular action of Q8 on its elements 1,-1,i,-i,j,-j,k,-k
        let i: Perm = vec![2, 3, 1, 0, 6, 7, 5, 4];
        let j: Perm = vec![4, 5, 7, 6, 1, 0, 2, 3];
        Self::from_permutations("Q8", 8, &[i, j])
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let (n, m) = (a.order, b.order);
        let mut mul = vec![0u32; n * m * n * m];
        for x in 0..n * m {
            for y in 0..n * m {
                let (xa, xb) = (x / m, x % m);
                let (ya, yb) = (y / m, y % m);
                mul[x * n * m + y] =
                    (a.mul(xa as u32, ya as u32) as usize * m + b.mul(xb as u32, yb as u32) as usize) as u32;
            }
        }
        Self::from_table(format!("{}x{}", a.name, b.name), mul).unwrap()
    }

    /// Parses names like `A5`, `S4`, `C7`, `D8` (order 8), `Q8`, `1`,
    /// and products `C2xC2`.
    pub fn by_name(name: &str) -> Result<Self, TableError> {
        let bad = || TableError::UnknownName(name.to_string());
        if let Some((l, r)) = name.split_once('x') {
            return Ok(Self::direct_product(&Self::by_name(l)?, &Self::by_name(r)?));
        }
        if name == "1" {
            return Ok(Self::trivial());
        }
        if name == "Q8" {
            return Ok(Self::quaternion());
        }
        let (kind, num) = name.split_at(1.min(name.len()));
        let k: usize = num.parse().map_err(|_| bad())?;
        match kind {
            "C" if (1..=256).contains(&k) => Ok(Self::cyclic(k)),
            "D" if k >= 6 && k.is_multiple_of(2) && k <= 256 => Ok(Self::dihedral(k / 2)),
            "S" if (1..=5).contains(&k) => Ok(Self::symmetric(k)),
            "A" if (1..=5).contains(&k) => Ok(Self::alternating(k)),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inverse(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    /// `a^e` for any integer `e`.
    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let k = e.rem_euclid(self.orders[a as usize] as i64);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Elements `x` with `x^k = 1`.
    pub fn elements_with_order_dividing(&self, k: u64) -> Vec<u32> {
        (0..self.order as u32)
            .filter(|&x| k.is_multiple_of(self.orders[x as usize] as u64))
            .collect()
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_histogram(t: &FiniteGroupTable) -> Vec<(u32, usize)> {
        let mut h: std::collections::BTreeMap<u32, usize> = Default::default();
        for a in 0..t.order() as u32 {
            *h.entry(t.element_order(a)).or_default() += 1;
        }
        h.into_iter().collect()
    }

    #[test]
    fn a5_structure() {
        let a5 = FiniteGroupTable::alternating(5);
        assert_eq!(a5.order(), 60);
        assert_eq!(order_histogram(&a5), vec![(1, 1), (2, 15), (3, 20), (5, 24)]);
        assert_eq!(a5.elements_with_order_dividing(2).len(), 16);
        assert_eq!(a5.elements_with_order_dividing(37), vec![0]);
        assert!(!a5.is_abelian());
    }

    #[test]
    fn small_groups() {
        assert_eq!(FiniteGroupTable::symmetric(4).order(), 24);
        assert_eq!(FiniteGroupTable::alternating(4).order(), 12);
        assert_eq!(FiniteGroupTable::dihedral(4).order(), 8);
        let q8 = FiniteGroupTable::quaternion();
        assert_eq!(order_histogram(&q8), vec![(1, 1), (2, 1), (4, 6)]);
        let k4 = FiniteGroupTable::by_name("C2xC2").unwrap();
        assert_eq!(order_histogram(&k4), vec![(1, 1), (2, 3)]);
        assert!(k4.is_abelian());
        assert_eq!(FiniteGroupTable::by_name("D12").unwrap().order(), 12);
        assert!(FiniteGroupTable::by_name("Z9").is_err());
    }

    #[test]
    fn powers_and_subgroups() {
        let c6 = FiniteGroupTable::cyclic(6);
        assert_eq!(c6.pow(1, -1), 5);
        assert_eq!(c6.pow(2, 3), 0);
        assert_eq!(c6.generated_subgroup(&[2]), vec![0, 2, 4]);
        assert_eq!(c6.generated_subgroup(&[]), vec![0]);
    }

    #[test]
    fn rejects_non_groups() {
        // constant table
        assert!(FiniteGroupTable::from_table("bad", vec![0, 0, 0, 0]).is_err());
        // x*y = x - y mod 3: no two-sided identity
        let mul = (0..9).map(|k| ((k / 3 + 3 - k % 3) % 3) as u32).collect();
        assert!(FiniteGroupTable::from_table("bad", mul).is_err());
    }
}
