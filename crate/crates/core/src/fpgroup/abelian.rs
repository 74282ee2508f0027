use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// Finitely generated abelian group `Z^free_rank + Z/d1 + ... + Z/dm`
/// with `d1 | d2 | ... | dm` and every `dj >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Panics unless `torsion` already is a divisibility chain of entries >= 2.
    pub fn from_chain(free_rank: usize, torsion: Vec<u64>) -> Self {
        assert!(torsion.iter().all(|&d| d >= 2), "torsion entries must be >= 2");
        assert!(
            torsion.windows(2).all(|w| w[1] % w[0] == 0),
            "torsion must be a divisibility chain"
        );
        AbelianGroup { free_rank, torsion }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning `Z`) into
    /// invariant-factor form.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            m[(i, i)] = d as i128;
        }
        smith_normal_form(&m).cokernel()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn betti_number(&self) -> usize {
        self.free_rank
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_from_orders() {
        let g = AbelianGroup::from_cyclic_orders(&[4, 6, 0, 1]);
        assert_eq!(g, AbelianGroup::from_chain(1, vec![2, 12]));
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
        assert_eq!(g.torsion_order(), 24);
        assert_eq!(g.order(), None);
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 3]).order(), Some(6));
    }

    #[test]
    #[should_panic]
    fn rejects_broken_chain() {
        AbelianGroup::from_chain(0, vec![2, 3]);
    }
}
