//! Todd–Coxeter coset enumeration, relator-table (HLT) strategy without
//! lookahead. Cosets are numbered in definition order and coincidences
//! always keep the smaller number, so runs are fully deterministic.

use super::presentation::GroupPresentation;
use super::word::{gen_of, Word};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetOutcome {
    /// Index of the subgroup; the group order when the subgroup is trivial.
    Index(usize),
    /// More than `max_cosets` cosets were live at once.
    Exceeded { max_cosets: usize },
}

impl CosetOutcome {
    pub fn index(self) -> Option<usize> {
        match self {
            CosetOutcome::Index(n) => Some(n),
            CosetOutcome::Exceeded { .. } => None,
        }
    }
}

struct Exceeded;

struct Enumerator {
    ncols: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    live: usize,
    max: usize,
    queue: Vec<usize>,
}

fn column(letter: i32) -> usize {
    2 * gen_of(letter) + usize::from(letter < 0)
}

impl Enumerator {
    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.ncols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.ncols + x] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), Exceeded> {
        if self.live >= self.max {
            return Err(Exceeded);
        }
        let d = self.parent.len();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (keep, drop) = (x.min(y), x.max(y));
            self.parent[drop] = keep;
            self.live -= 1;
            self.queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.get(mu, x) != NONE {
                    let t = self.get(mu, x);
                    self.merge(nu, t);
                } else if self.get(nu, x ^ 1) != NONE {
                    let t = self.get(nu, x ^ 1);
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), Exceeded> {
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != NONE {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// Index of the subgroup generated by `subgroup` in the group presented by
/// `p`, or `Exceeded` once more than `max_cosets` cosets are live.
pub fn coset_enumeration(p: &GroupPresentation, subgroup: &[Word], max_cosets: usize) -> CosetOutcome {
    assert!(max_cosets >= 1, "max_cosets must be positive");
    let ncols = 2 * p.num_generators();
    let mut e = Enumerator {
        ncols,
        table: vec![NONE; ncols],
        parent: vec![0],
        live: 1,
        max: max_cosets,
        queue: Vec::new(),
    };
    let to_cols = |w: &Word| w.letters().iter().map(|&l| column(l)).collect::<Vec<_>>();
    let rels: Vec<Vec<usize>> = p.relators().iter().map(to_cols).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();

    let run = |e: &mut Enumerator| -> Result<(), Exceeded> {
        for w in &subs {
            let c = e.rep(0);
            e.scan_and_fill(c, w)?;
        }
        let mut c = 0;
        while c < e.parent.len() {
            for r in &rels {
                if !e.is_live(c) {
                    break;
                }
                e.scan_and_fill(c, r)?;
            }
            if e.is_live(c) {
                for x in 0..ncols {
                    if e.get(c, x) == NONE {
                        e.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    };
    match run(&mut e) {
        Ok(()) => CosetOutcome::Index(e.live),
        Err(Exceeded) => CosetOutcome::Exceeded { max_cosets },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> CosetOutcome {
        let p: GroupPresentation = s.parse().unwrap();
        coset_enumeration(&p, &[], 100_000)
    }

    #[test]
    fn small_orders() {
        assert_eq!(order("gens: a, b; rels: a^2, b^3, a b"), CosetOutcome::Index(1));
        assert_eq!(
            order("gens: x, y; rels: x^2, y^3, (x y)^3"),
            CosetOutcome::Index(12)
        );
        assert_eq!(
            order("gens: x, y; rels: x^2, y^3, (x y)^4"),
            CosetOutcome::Index(24)
        );
        assert_eq!(
            order("gens: x, y; rels: x^2, y^3, (x y)^5"),
            CosetOutcome::Index(60)
        );
        assert_eq!(order("gens: a; rels: a^7"), CosetOutcome::Index(7));
        assert_eq!(
            order("gens: a, b; rels: a^3, b^2, a b a b"),
            CosetOutcome::Index(6)
        );
        assert_eq!(order("gens: -; rels: -"), CosetOutcome::Index(1));
    }

    #[test]
    fn subgroup_index() {
        let p: GroupPresentation = "gens: x, y; rels: x^2, y^3, (x y)^5".parse().unwrap();
        let y = p.parse_word("y").unwrap();
        assert_eq!(coset_enumeration(&p, &[y], 1000), CosetOutcome::Index(20));
        let x = p.parse_word("x").unwrap();
        assert_eq!(
            coset_enumeration(&p, std::slice::from_ref(&x), 1000),
            CosetOutcome::Index(30)
        );
        let all = [x, p.parse_word("y").unwrap()];
        assert_eq!(coset_enumeration(&p, &all, 1000), CosetOutcome::Index(1));
    }

    #[test]
    fn infinite_groups_exceed() {
        let p: GroupPresentation = "gens: x, y; rels: x^2, y^3, (x y)^7".parse().unwrap();
        assert_eq!(
            coset_enumeration(&p, &[], 10_000),
            CosetOutcome::Exceeded { max_cosets: 10_000 }
        );
        let z: GroupPresentation = "gens: a; rels: -".parse().unwrap();
        assert_eq!(coset_enumeration(&z, &[], 50).index(), None);
    }

    #[test]
    fn deterministic() {
        let p: GroupPresentation = "gens: x, y; rels: x^2, y^3, (x y)^5".parse().unwrap();
        let a = coset_enumeration(&p, &[], 200);
        let b = coset_enumeration(&p, &[], 200);
        assert_eq!(a, b);
    }
}
