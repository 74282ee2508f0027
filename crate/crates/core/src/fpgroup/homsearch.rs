//! Enumeration of homomorphisms from a finitely presented group into a
//! finite group given by its Cayley table.
//!
//! Before searching, each generator's image is restricted to elements whose
//! order divides the bound derived by [`relator_order_bound`], and
//! generators without such a bound that are defined by a relator are
//! eliminated. The remaining generators are assigned in ascending order of
//! candidate-set size, and every relator is checked as soon as all of its
//! generators carry an image. Cost is measured in table lookups.

use num_integer::Integer;

use super::finite_group::FiniteGroupTable;
use super::presentation::GroupPresentation;
use super::word::{gen_of, Word};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_CHAIN_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("homomorphism search exceeded its budget of {budget} table lookups")]
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomSearchResult {
    /// Image of every generator of the presentation, one entry per
    /// homomorphism found (only surjective ones when those were requested).
    pub assignments: Vec<Vec<u32>>,
    pub hom_count: u64,
    pub surjective_count: u64,
    /// Partial assignments rejected by a relator.
    pub pruned_nodes: u64,
    pub lookups: u64,
}

struct Counter {
    used: u64,
    budget: u64,
}

impl Counter {
    fn spend(&mut self, n: u64) -> Result<(), SearchError> {
        self.used += n;
        if self.used > self.budget {
            Err(SearchError::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }
}

fn eval(t: &FiniteGroupTable, w: &Word, images: &[u32]) -> u32 {
    w.letters().iter().fold(0, |acc, &l| {
        let x = images[gen_of(l)];
        t.mul(acc, if l > 0 { x } else { t.inverse(x) })
    })
}

/// Whether `images` kills every relator of `p`.
pub fn verify_assignment(p: &GroupPresentation, t: &FiniteGroupTable, images: &[u32]) -> bool {
    images.len() == p.num_generators()
        && images.iter().all(|&x| (x as usize) < t.order())
        && p.relators().iter().all(|r| eval(t, r, images) == 0)
}

/// Number of elements in the subgroup generated by `images`.
pub fn image_size(t: &FiniteGroupTable, images: &[u32]) -> usize {
    t.generated_subgroup(images).len()
}

pub fn hom_search(
    p: &GroupPresentation,
    t: &FiniteGroupTable,
    require_surjective: bool,
) -> Result<HomSearchResult, SearchError> {
    hom_search_with_budget(p, t, require_surjective, DEFAULT_BUDGET)
}

pub fn hom_search_with_budget(
    p: &GroupPresentation,
    t: &FiniteGroupTable,
    require_surjective: bool,
    budget: u64,
) -> Result<HomSearchResult, SearchError> {
    let n = p.num_generators();
    let mut counter = Counter { used: 0, budget };

    let candidates: Vec<Option<Vec<u32>>> = (0..n)
        .map(|g| relator_order_bound(p, g).map(|k| t.elements_with_order_dividing(k)))
        .collect();
    let elim = p.eliminate(|g| candidates[g].is_none());

    let all: Vec<u32> = (0..t.order() as u32).collect();
    let mut order: Vec<usize> = elim.kept.clone();
    order.sort_by_key(|&g| (candidates[g].as_ref().map_or(all.len(), Vec::len), g));
    let domains: Vec<&[u32]> = order
        .iter()
        .map(|&g| candidates[g].as_deref().unwrap_or(&all))
        .collect();

    // relators to check once the variable at each depth is assigned
    let mut checks: Vec<Vec<&Word>> = vec![Vec::new(); order.len()];
    for r in &elim.relators {
        let depth = r
            .generators()
            .map(|g| order.iter().position(|&o| o == g).unwrap())
            .max()
            .unwrap();
        checks[depth].push(r);
    }

    let mut result = HomSearchResult::default();
    let mut images = vec![0u32; n];
    let mut cursor = vec![0usize; order.len()];
    let mut depth = 0usize;

    if order.is_empty() {
        // every generator eliminated; the relators are all satisfied
        record_leaf(
            p,
            t,
            &elim.definitions,
            &mut images,
            require_surjective,
            &mut result,
            &mut counter,
        )?;
        result.lookups = counter.used;
        return Ok(result);
    }

    loop {
        if cursor[depth] == domains[depth].len() {
            cursor[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        images[order[depth]] = domains[depth][cursor[depth]];
        cursor[depth] += 1;

        let mut ok = true;
        for r in &checks[depth] {
            counter.spend(r.len() as u64)?;
            if eval(t, r, &images) != 0 {
                ok = false;
                break;
            }
        }
        if !ok {
            result.pruned_nodes += 1;
            continue;
        }
        if depth + 1 == order.len() {
            record_leaf(
                p,
                t,
                &elim.definitions,
                &mut images,
                require_surjective,
                &mut result,
                &mut counter,
            )?;
        } else {
            depth += 1;
        }
    }

    result.lookups = counter.used;
    for a in &result.assignments {
        assert!(
            verify_assignment(p, t, a),
            "search produced a non-homomorphism: {a:?}"
        );
    }
    Ok(result)
}

fn record_leaf(
    p: &GroupPresentation,
    t: &FiniteGroupTable,
    definitions: &[(usize, Word)],
    images: &mut [u32],
    require_surjective: bool,
    result: &mut HomSearchResult,
    counter: &mut Counter,
) -> Result<(), SearchError> {
    for (g, w) in definitions {
        counter.spend(w.len() as u64)?;
        images[*g] = eval(t, w, images);
    }
    counter.spend((t.order() * p.num_generators().max(1)) as u64)?;
    let surjective = image_size(t, images) == t.order();
    result.hom_count += 1;
    if surjective {
        result.surjective_count += 1;
    }
    if surjective || !require_surjective {
        result.assignments.push(images.to_vec());
    }
    Ok(())
}

/// Divisor bound on the order of the image of `gen` under any homomorphism,
/// from power relators and substitution chains `x = y^m`.
pub fn relator_order_bound(p: &GroupPresentation, gen: usize) -> Option<u64> {
    relator_order_bound_with_depth(p, gen, DEFAULT_CHAIN_DEPTH)
}

pub fn relator_order_bound_with_depth(p: &GroupPresentation, gen: usize, depth: usize) -> Option<u64> {
    let n = p.num_generators();
    let mut power: Vec<u64> = vec![0; n];
    // (x, y, m): x = y^m
    let mut rules: Vec<(usize, usize, i128)> = Vec::new();
    for r in p.relators() {
        let syl = r.cyclically_reduced().syllables();
        match syl.as_slice() {
            [(x, k)] => power[*x] = power[*x].gcd(&k.unsigned_abs()),
            [(x, s), (y, t)] if x != y => {
                if s.abs() == 1 {
                    rules.push((*x, *y, -(*t as i128) * *s as i128));
                }
                if t.abs() == 1 {
                    rules.push((*y, *x, -(*s as i128) * *t as i128));
                }
            }
            _ => {}
        }
    }

    let mut bound: u128 = 0;
    let mut frontier: Vec<(usize, i128)> = vec![(gen, 1)];
    for step in 0..=depth {
        let mut next = Vec::new();
        for &(x, e) in &frontier {
            if power[x] != 0 {
                let k = power[x] as u128;
                bound = bound.gcd(&(k / k.gcd(&e.unsigned_abs())));
            }
            if x == gen && e != 1 {
                bound = bound.gcd(&(e - 1).unsigned_abs());
            }
            if step < depth {
                for &(a, b, m) in &rules {
                    if a == x {
                        if let Some(f) = e.checked_mul(m) {
                            next.push((b, f));
                        }
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    (bound != 0).then(|| bound.min(u64::MAX as u128) as u64)
}

/// Largest possible order of the image of an element with order bound
/// `bound` in a group of order `group_order`.
pub fn image_order_divisor(bound: u64, group_order: u64) -> u64 {
    bound.gcd(&group_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> GroupPresentation {
        s.parse().unwrap()
    }

    #[test]
    fn triangle_235_onto_a5() {
        let p = pres("gens: x, y; rels: x^2, y^3, (x y)^5");
        let a5 = FiniteGroupTable::alternating(5);
        let r = hom_search(&p, &a5, true).unwrap();
        // surjections are the 60 * 2 automorphism-twisted copies of the
        // identification with A5 (|Aut(A5)| = 120)
        assert_eq!(r.surjective_count, 120);
        assert_eq!(r.assignments.len(), 120);
        assert_eq!(r.hom_count, 121);
    }

    #[test]
    fn everything_maps_trivially_once() {
        let p = pres("gens: a, b, c; rels: a^2, b^3, a b c");
        let r = hom_search(&p, &FiniteGroupTable::trivial(), false).unwrap();
        assert_eq!(r.hom_count, 1);
        assert_eq!(r.surjective_count, 1);
        let free = pres("gens: a, b; rels: -");
        assert_eq!(
            hom_search(&free, &FiniteGroupTable::trivial(), false)
                .unwrap()
                .hom_count,
            1
        );
    }

    #[test]
    fn free_group_counts() {
        let free = pres("gens: a, b; rels: -");
        let r = hom_search(&free, &FiniteGroupTable::symmetric(3), false).unwrap();
        assert_eq!(r.hom_count, 36);
        // generating pairs of S3
        assert_eq!(r.surjective_count, 18);
    }

    #[test]
    fn tiny_budget_is_an_error() {
        let p = pres("gens: x, y; rels: x^2, y^3, (x y)^5");
        let e = hom_search_with_budget(&p, &FiniteGroupTable::alternating(5), true, 10).unwrap_err();
        assert_eq!(e, SearchError::BudgetExceeded { budget: 10 });
    }

    #[test]
    fn order_bounds() {
        let p = pres("gens: a; rels: a^2");
        assert_eq!(relator_order_bound(&p, 0), Some(2));
        let p = pres("gens: a, b; rels: a^4, a^6, b a^-3");
        assert_eq!(relator_order_bound(&p, 0), Some(2));
        // b = a^3 with a^2 = 1 gives b = a, order dividing 2
        assert_eq!(relator_order_bound(&p, 1), Some(2));
        let p = pres("gens: c1, c2; rels: c1 c2^-6, c2 c1^6");
        assert_eq!(relator_order_bound(&p, 0), Some(37));
        assert_eq!(relator_order_bound(&p, 1), Some(37));
        assert_eq!(relator_order_bound_with_depth(&p, 0, 1), None);
        assert_eq!(image_order_divisor(37, 60), 1);
        let free = pres("gens: a, b; rels: a b a' b'");
        assert_eq!(relator_order_bound(&free, 0), None);
    }
}
