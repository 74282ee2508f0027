//! The `verify-paper` report: every concrete computation, one named check each.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use seifertlab::fpgroup::{
    abelianization, coset_enumeration, hom_search_with_budget, relator_order_bound, SearchError,
};
use seifertlab::graph_manifold::{
    glue, lemma44_case_groups, lemma45_sweep, surgery_family, trefoil_exterior, CyclicImageRule,
    GraphManifoldGluing, SurgeryCurve,
};
use seifertlab::orbifold::{
    enumerate_orbifolds_chi_at_least, lemma23_sweep, riemann_hurwitz_solve, Ramification, SweepCaps,
};
use seifertlab::seifert::{family_member, fiber_quotient_z2, normalize, verify_fiber_hom, SeifertGeometry};
use seifertlab::{FiniteGroupTable, GroupPresentation, Orbifold2, Rational, SeifertInvariants};

use crate::error::{EXIT_BUDGET, EXIT_CHECK_FAILED, EXIT_OK};
use crate::manifest::TOOL_VERSION;
use crate::{Context, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A discrepancy with the text that does not affect the conclusion.
    Noted,
    BudgetExceeded,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Noted => "noted",
            Status::BudgetExceeded => "budget_exceeded",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

fn verdict(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

fn sfs(s: &str) -> SeifertInvariants {
    s.parse().expect("built-in symbol parses")
}

fn normal_form() -> (Status, String) {
    let cases = [
        (normalize(0, 0, &[(2, 3), (3, 1)]), "SFS[g=0; b=1; 2/1, 3/1]"),
        (
            normalize(0, -1, &[(5, 1), (1, 2), (3, 1), (2, 1)]),
            "SFS[g=0; b=1; 2/1, 3/1, 5/1]",
        ),
        (
            normalize(0, 0, &[(7, -1), (2, 1), (3, 1)]),
            "SFS[g=0; b=-1; 2/1, 3/1, 7/6]",
        ),
    ];
    let mut ok = true;
    let mut shown = Vec::new();
    for (got, want) in cases {
        let got = got.map(|s| s.to_string()).unwrap_or_else(|e| e.to_string());
        ok &= got == want;
        shown.push(got);
    }
    verdict(ok, shown.join("; "))
}

fn euler_number() -> (Status, String) {
    let e = sfs("SFS[g=0; b=-1; 2/1, 3/1, 5/1]").euler_number();
    verdict(
        e == Rational::new(-1, 30),
        format!("e(SFS[g=0; b=-1; 2/1, 3/1, 5/1]) = {e}"),
    )
}

fn poincare_sphere() -> (Status, String) {
    let s = sfs("SFS[g=0; b=-1; 2/1, 3/1, 5/1]");
    let h = s.homology();
    let h_pres = abelianization(&s.pi1_presentation());
    verdict(
        h.is_trivial() && h_pres.is_trivial() && s.geometry() == SeifertGeometry::S3,
        format!("H1 = {h} (presentation: {h_pres}), geometry {}", s.geometry()),
    )
}

fn example_3_1_rank() -> (Status, String) {
    let m = sfs("SFS[g=0; b=0; 5/1, 6/1, 7/1]");
    let q = sfs("SFS[g=0; b=0; 3/1, 5/2, 7/2]");
    let (rm, rq) = (m.rank_bz(), q.rank_bz());
    verdict(
        rm == Ok(2) && rq == Ok(2),
        format!("rank {m} = {rm:?}, rank {q} = {rq:?}"),
    )
}

fn example_3_1_quotient() -> (Status, String) {
    let m = sfs("SFS[g=0; b=0; 5/1, 6/1, 7/1]");
    let want = sfs("SFS[g=0; b=0; 3/1, 5/2, 7/2]");
    match fiber_quotient_z2(&m).and_then(|(q, d)| verify_fiber_hom(&m, &q, &d).map(|c| (q, c))) {
        Ok((q, c)) => verdict(
            q == want && c.well_defined && c.surjective && q.euler_number() == m.euler_number() * 2,
            format!(
                "{m} / Z2 = {q}, well defined {}, surjective {}, e doubles",
                c.well_defined, c.surjective
            ),
        ),
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn example_3_3_chains() -> (Status, String) {
    let mut links = 0;
    for n in 0..=6u32 {
        for b in [[1i64, 1, 1], [5, 2, 3], [-1, -1, 4], [7, 3, -2]] {
            let top_nonzero = family_member(n, n, b)
                .map(|m| !m.euler_number().is_zero())
                .unwrap_or(false);
            for k in (0..=n).rev() {
                let m = match family_member(n, k, b) {
                    Ok(m) => m,
                    Err(e) => return (Status::Fail, e.to_string()),
                };
                if m.rank_bz() != Ok(2) || (top_nonzero && m.euler_number().is_zero()) {
                    return (
                        Status::Fail,
                        format!("{m}: rank {:?}, e = {}", m.rank_bz(), m.euler_number()),
                    );
                }
                if k == 0 {
                    continue;
                }
                let next = family_member(n, k - 1, b).expect("smaller k is in range");
                match fiber_quotient_z2(&m).and_then(|(q, d)| verify_fiber_hom(&m, &q, &d).map(|c| (q, c))) {
                    Ok((q, c)) if q == next && c.well_defined && c.surjective => links += 1,
                    Ok((q, c)) => return (Status::Fail, format!("{m} -> {q}: {c:?}")),
                    Err(e) => return (Status::Fail, e.to_string()),
                }
            }
        }
    }
    (
        Status::Pass,
        format!("{links} links for n <= 6 verified surjective; rank 2 and e != 0 throughout"),
    )
}

fn lemma_2_3() -> (Status, String) {
    let r = lemma23_sweep(SweepCaps::default());
    if r.violations.is_empty() {
        return (Status::Pass, format!("{} covers, no violations", r.checked));
    }
    let list: Vec<String> = r
        .violations
        .iter()
        .map(|(d, o)| {
            format!(
                "degree {} genus {} over {} (2g = {} < {})",
                d.degree(),
                d.source_genus(),
                d.target(),
                o.lhs,
                o.rhs
            )
        })
        .collect();
    (
        Status::Fail,
        format!(
            "{} of {} covers violate: {}",
            r.violations.len(),
            r.checked,
            list.join("; ")
        ),
    )
}

fn riemann_hurwitz() -> (Status, String) {
    let cases = [
        (2, "ORB[g=0; 2, 2, 2, 2]", Some(1)),
        (6, "ORB[g=0; 2, 3, 6]", Some(1)),
        (42, "ORB[g=0; 2, 3, 7]", None),
        (84, "ORB[g=0; 2, 3, 7]", Some(2)),
        (3, "ORB[g=1; 3]", Some(2)),
        (4, "ORB[g=0; 2, 3, 7]", None),
    ];
    let mut ok = true;
    let mut shown = Vec::new();
    for (n, o, want) in cases {
        let o: Orbifold2 = o.parse().expect("built-in orbifold parses");
        let got = riemann_hurwitz_solve(n, &o, &Ramification::Manifold).map(|d| d.source_genus());
        ok &= got == want;
        shown.push(format!("{n}:{o} -> {got:?}"));
    }
    verdict(ok, shown.join("; "))
}

fn well_order_enumeration() -> (Status, String) {
    let list = enumerate_orbifolds_chi_at_least(Rational::new(-1, 42), None);
    let uncapped = enumerate_orbifolds_chi_at_least(Rational::new(-1, 6), None);
    let got: Vec<String> = list.iter().flatten().map(|o| o.to_string()).collect();
    verdict(
        got == ["ORB[g=0; 2, 3, 7]"] && uncapped.is_err(),
        format!("chi >= -1/42: {got:?}; chi >= -1/6 needs an index cap"),
    )
}

fn lemma_4_2_basis() -> (Status, String) {
    let p = trefoil_exterior();
    let basis = p.basis();
    let det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
    verdict(
        basis == [[1, -1], [-5, 6]] && p.inverse_basis() == [[6, 1], [5, 1]] && det == 1,
        format!(
            "m = (1, -1), l = (-5, 6) in (t, c); inverse {:?}",
            p.inverse_basis()
        ),
    )
}

fn lemma_4_2_gluing_relators() -> (Status, String) {
    match glue(&GraphManifoldGluing::theorem_4_1()) {
        Ok(p) => {
            let r: Vec<String> = p.relators()[6..].iter().map(|w| p.format_word(w)).collect();
            verdict(
                r == ["t1'^5 c1^6 c2 t2'", "t1 c1' c2^6 t2'^5"],
                format!("boundary relators {}", r.join(", ")),
            )
        }
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn lemma_4_2_3_zhs() -> (Status, String) {
    match glue(&GraphManifoldGluing::theorem_4_1()) {
        Ok(p) => {
            let h = abelianization(&p);
            verdict(h.is_trivial(), format!("H1 = {h}"))
        }
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn lemma_4_2_1_rule() -> (Status, String) {
    let shown = CyclicImageRule::as_displayed();
    let fixed = CyclicImageRule::consistent();
    if !fixed.kills_relators() {
        return (
            Status::Fail,
            format!("exponents {:?} leave {:?}", fixed.exponents, fixed.residues),
        );
    }
    if shown.kills_relators() {
        return (Status::Pass, "displayed exponents kill every relator".into());
    }
    (
        Status::Noted,
        format!(
            "displayed exponents {:?} leave {:?} on a^2 t, b^3 t, a b c; {:?} kill all three",
            shown.exponents, shown.residues, fixed.exponents
        ),
    )
}

fn lemma_4_4_base_trivial() -> (Status, String) {
    let p = GroupPresentation::from_strs(&["a", "b"], &["a^2", "b^3", "a b"]).expect("built-in presentation");
    let n = coset_enumeration(&p, &[], 1000).index();
    verdict(n == Some(1), format!("|<a, b | a^2, b^3, a b>| = {n:?}"))
}

fn lemma_4_4_case2() -> (Status, String) {
    let n = coset_enumeration(&lemma44_case_groups().case2, &[], 1000).index();
    verdict(n == Some(1), format!("order {n:?}"))
}

fn lemma_4_4_case3_bound() -> (Status, String) {
    let g = lemma44_case_groups().case3;
    let c1 = g.gen("c1").expect("c1 exists");
    let c2 = g.gen("c2").expect("c2 exists");
    let b = (relator_order_bound(&g, c1), relator_order_bound(&g, c2));
    verdict(
        b == (Some(37), Some(37)),
        format!("order of c1, c2 divides {b:?}"),
    )
}

fn searched(r: Result<u64, SearchError>, ok: impl Fn(u64) -> bool, what: &str) -> (Status, String) {
    match r {
        Ok(n) => verdict(ok(n), format!("{n} {what}")),
        Err(e) => (Status::BudgetExceeded, e.to_string()),
    }
}

fn lemma_4_4_case3(budget: u64) -> (Status, String) {
    let g = lemma44_case_groups().case3;
    let a5 = FiniteGroupTable::alternating(5);
    let r = hom_search_with_budget(&g, &a5, true, budget).map(|r| r.surjective_count);
    searched(r, |n| n == 0, "surjections of the case 3 group onto A5")
}

fn lemma_4_4_poincare_onto_a5(budget: u64) -> (Status, String) {
    let p =
        GroupPresentation::from_strs(&["x", "y"], &["x^2", "y^3", "(x y)^5"]).expect("built-in presentation");
    let a5 = FiniteGroupTable::alternating(5);
    let r = hom_search_with_budget(&p, &a5, true, budget).map(|r| r.surjective_count);
    searched(r, |n| n > 0, "surjections of (2,3,5) onto A5")
}

fn lemma_4_5_1_coprime() -> (Status, String) {
    // every three-fiber homology sphere with infinite fundamental group has
    // pairwise coprime indices over a hyperbolic base
    let mut spheres = 0;
    for a1 in 2..=19i64 {
        for a2 in a1..=19 {
            for a3 in a2..=19 {
                for b in -3..=3 {
                    for (x, y, z) in [(1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)] {
                        let Ok(s) = normalize(0, b, &[(a1, x), (a2, y), (a3, z)]) else {
                            continue;
                        };
                        if !s.is_integral_homology_sphere() || s.geometry() == SeifertGeometry::S3 {
                            continue;
                        }
                        spheres += 1;
                        let o = s.base_orbifold();
                        let coprime = [(a1, a2), (a1, a3), (a2, a3)]
                            .iter()
                            .all(|&(u, v)| num_integer::gcd(u, v) == 1);
                        if !coprime || o.euler_char() >= Rational::zero() {
                            return (Status::Fail, format!("{s} over {o}"));
                        }
                    }
                }
            }
        }
    }
    verdict(
        spheres > 0,
        format!("{spheres} homology spheres with infinite fundamental group, all coprime and hyperbolic"),
    )
}

fn lemma_4_5_surgery() -> (Status, String) {
    let got = SurgeryCurve::new(1, 1).and_then(surgery_family);
    let degenerate = SurgeryCurve::new(6, 1).and_then(surgery_family).is_err();
    match got {
        Ok((n1, n2)) => verdict(
            n1 == sfs("SFS[g=0; b=-1; 2/1, 3/1, 5/1]")
                && n2 == sfs("SFS[g=0; b=-1; 2/1, 3/1, 7/1]")
                && degenerate,
            format!("(p, q) = (1, 1): N1 = {n1}, N2 = {n2}; (6, 1) rejected as a fiber filling"),
        ),
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn lemma_4_5_sweep() -> (Status, String) {
    let s = lemma45_sweep(50);
    verdict(
        s.not_dividing_12.is_empty() && s.zhs_possible.is_empty() && s.checked > 0,
        format!(
            "{} coprime curves with |p|, |q| <= 50 ({} degenerate): gcd(12q, 2p) | 12, no homology sphere",
            s.checked, s.degenerate
        ),
    )
}

fn lemma_4_5_gcd_12() -> (Status, String) {
    let s = lemma45_sweep(50);
    if s.gcd_not_12 == 0 {
        return (Status::Pass, "gcd(12q, 2p) = 12 for every curve".into());
    }
    (
        Status::Noted,
        format!(
            "gcd(12q, 2p) != 12 for {} of {} curves, e.g. {:?}; only divisibility is used",
            s.gcd_not_12, s.checked, s.first_gcd_not_12
        ),
    )
}

type CheckFn = dyn Fn() -> (Status, String);

pub fn run_checks(ctx: &Context) -> Vec<Check> {
    let budget = ctx.budget;
    let plan: Vec<(&'static str, Box<CheckFn>)> = vec![
        ("normal_form", Box::new(normal_form)),
        ("euler_number", Box::new(euler_number)),
        ("poincare_homology_sphere", Box::new(poincare_sphere)),
        ("example_3_1_rank", Box::new(example_3_1_rank)),
        ("example_3_1_quotient", Box::new(example_3_1_quotient)),
        ("example_3_3_chains", Box::new(example_3_3_chains)),
        ("lemma_2_3", Box::new(lemma_2_3)),
        ("riemann_hurwitz", Box::new(riemann_hurwitz)),
        ("well_order_enumeration", Box::new(well_order_enumeration)),
        ("lemma_4_2_basis", Box::new(lemma_4_2_basis)),
        ("lemma_4_2_gluing_relators", Box::new(lemma_4_2_gluing_relators)),
        ("lemma_4_2_3_zhs", Box::new(lemma_4_2_3_zhs)),
        ("lemma_4_2_1_rule", Box::new(lemma_4_2_1_rule)),
        ("lemma_4_4_base_trivial", Box::new(lemma_4_4_base_trivial)),
        ("lemma_4_4_case2", Box::new(lemma_4_4_case2)),
        ("lemma_4_4_case3_bound", Box::new(lemma_4_4_case3_bound)),
        ("lemma_4_4_case3", Box::new(move || lemma_4_4_case3(budget))),
        (
            "lemma_4_4_poincare_onto_a5",
            Box::new(move || lemma_4_4_poincare_onto_a5(budget)),
        ),
        ("lemma_4_5_1_coprime", Box::new(lemma_4_5_1_coprime)),
        ("lemma_4_5_surgery", Box::new(lemma_4_5_surgery)),
        ("lemma_4_5_sweep", Box::new(lemma_4_5_sweep)),
        ("lemma_4_5_gcd_12", Box::new(lemma_4_5_gcd_12)),
    ];
    plan.into_iter()
        .map(|(name, f)| {
            let (status, detail) = f();
            Check { name, status, detail }
        })
        .collect()
}

pub fn verify_paper(ctx: &Context) -> Report {
    let checks = run_checks(ctx);
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let (pass, fail, noted, budget) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Noted),
        count(Status::BudgetExceeded),
    );
    let exit = if fail > 0 {
        EXIT_CHECK_FAILED
    } else if budget > 0 {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{}: {}  {}", c.name, c.status.label(), c.detail).unwrap();
    }
    writeln!(
        text,
        "{} checks: {pass} pass, {fail} fail, {noted} noted, {budget} budget_exceeded",
        checks.len()
    )
    .unwrap();
    Report {
        json: json!({
            "tool_version": TOOL_VERSION,
            "timestamp": ctx.timestamp,
            "budget": ctx.budget,
            "checks": checks,
            "summary": { "pass": pass, "fail": fail, "noted": noted, "budget_exceeded": budget },
        }),
        text,
        exit,
    }
}
