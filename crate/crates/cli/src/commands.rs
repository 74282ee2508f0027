use std::fmt::Write as _;

use anyhow::Result;
use serde_json::{json, Value};

use seifertlab::fpgroup::{abelianization, coset_enumeration, hom_search_with_budget, CosetOutcome};
use seifertlab::graph_manifold::{
    glue, lemma45_divisor_analysis, surgery_family, GluingJson, GraphManifoldGluing, SurgeryCurve,
};
use seifertlab::orbifold::{
    enumerate_orbifolds_chi_at_least, lemma23_check, riemann_hurwitz_solve, Ramification,
};
use seifertlab::seifert::{family_member, fiber_quotient_z2, verify_fiber_hom};
use seifertlab::{
    AbelianGroup, FiniteGroupTable, GroupPresentation, Orbifold2, Rational, SeifertInvariants, Word,
};

use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_OK};
use crate::{verify, Command, Context, GroupOp, Report};

pub fn execute(cmd: &Command, ctx: &Context) -> Result<Report> {
    match cmd {
        Command::Invariants { symbol } => invariants(symbol),
        Command::Orbifold {
            symbol,
            degree,
            chi_at_least,
            max_index,
        } => match (symbol, chi_at_least) {
            (Some(s), _) => orbifold(s, *degree),
            (None, Some(c)) => enumerate(c, *max_index),
            (None, None) => Err(input("give an orbifold symbol or --chi-at-least", None)),
        },
        Command::Group { op } => match op {
            GroupOp::Abelianize { presentation } => abelianize(presentation),
            GroupOp::HomSearch {
                presentation,
                target,
                surjective,
                limit,
            } => homs(presentation, target, *surjective, *limit, ctx.budget),
            GroupOp::CosetEnum {
                presentation,
                subgroup,
                max_cosets,
            } => cosets(presentation, subgroup.as_deref(), *max_cosets),
        },
        Command::Glue { glue } => gluing(glue.as_deref()),
        Command::Surgery { p, q } => surgery(*p, *q),
        Command::Family { n, k, b1, b2, b3 } => family(*n, *k, [*b1, *b2, *b3]),
        Command::VerifyPaper => Ok(verify::verify_paper(ctx)),
        Command::Replay { .. } => Err(input("replay cannot be nested", None)),
    }
}

fn input(message: &str, span: Option<(usize, usize)>) -> anyhow::Error {
    CliError::Input {
        message: message.to_string(),
        span,
    }
    .into()
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key:<16}{value}").unwrap();
}

fn ok(json: Value, text: String) -> Result<Report> {
    Ok(Report {
        json,
        text,
        exit: EXIT_OK,
    })
}

fn homology_json(h: &AbelianGroup) -> Value {
    json!({ "group": h.to_string(), "free_rank": h.free_rank, "torsion": h.torsion })
}

pub fn seifert_json(s: &SeifertInvariants) -> Value {
    let base = s.base_orbifold();
    let (rank, rank_note) = match s.rank_bz() {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    json!({
        "symbol": s.to_string(),
        "genus": s.genus(),
        "b": s.b(),
        "pairs": s.pairs(),
        "euler_number": s.euler_number().to_string(),
        "base_orbifold": base.to_string(),
        "orbifold_euler_characteristic": base.euler_char().to_string(),
        "orbifold_geometry": base.geometry_class().to_string(),
        "homology": homology_json(&s.homology()),
        "homology_sphere": s.is_integral_homology_sphere(),
        "rank": rank,
        "rank_note": rank_note,
        "geometry": s.geometry().to_string(),
    })
}

fn seifert_text(s: &SeifertInvariants, out: &mut String) {
    let base = s.base_orbifold();
    line(out, "normal form", s);
    line(out, "euler number", s.euler_number());
    line(
        out,
        "base orbifold",
        format!("{base} (chi {}, {})", base.euler_char(), base.geometry_class()),
    );
    line(out, "H1", s.homology());
    match s.rank_bz() {
        Ok(r) => line(out, "rank", r),
        Err(e) => line(out, "rank", format!("unknown ({e})")),
    }
    line(out, "geometry", s.geometry());
}

fn invariants(symbol: &str) -> Result<Report> {
    let s: SeifertInvariants = symbol.parse()?;
    let mut text = String::new();
    seifert_text(&s, &mut text);
    ok(seifert_json(&s), text)
}

fn orbifold(symbol: &str, degree: Option<u32>) -> Result<Report> {
    let o: Orbifold2 = symbol.parse()?;
    let rank = o.fuchsian_rank_upper_bound().ok();
    let mut text = String::new();
    line(&mut text, "orbifold", &o);
    line(&mut text, "euler char", o.euler_char());
    line(&mut text, "geometry", o.geometry_class());
    match rank {
        Some(r) => line(&mut text, "rank bound", r),
        None => line(&mut text, "rank bound", "-"),
    }
    let mut v = json!({
        "symbol": o.to_string(),
        "genus": o.genus(),
        "cones": o.cones(),
        "euler_characteristic": o.euler_char().to_string(),
        "geometry": o.geometry_class(),
        "bad": o.is_bad(),
        "fuchsian_rank_bound": rank,
    });
    let mut exit = EXIT_OK;
    if let Some(n) = degree {
        match riemann_hurwitz_solve(n, &o, &Ramification::Manifold) {
            None => {
                line(&mut text, "cover", format!("no degree {n} manifold cover"));
                v["cover"] = json!({ "degree": n, "exists": false });
            }
            Some(data) => {
                let check = lemma23_check(&data)?;
                line(
                    &mut text,
                    "cover",
                    format!("degree {n}, source genus {}", data.source_genus()),
                );
                line(
                    &mut text,
                    "rank check",
                    format!(
                        "2g = {} vs {} : {}",
                        check.lhs,
                        check.rhs,
                        if check.holds { "holds" } else { "FAILS" }
                    ),
                );
                if !check.holds {
                    exit = EXIT_CHECK_FAILED;
                }
                v["cover"] = json!({
                    "degree": n,
                    "exists": true,
                    "source_genus": data.source_genus(),
                    "rank_check": check,
                });
            }
        }
    }
    Ok(Report { json: v, text, exit })
}

fn enumerate(c: &str, max_index: Option<u32>) -> Result<Report> {
    let bound: Rational = c.trim().parse().map_err(|_| {
        input(
            &format!("expected a rational like -1/42, got {c:?}"),
            Some((0, c.len())),
        )
    })?;
    let list = enumerate_orbifolds_chi_at_least(bound, max_index)?;
    let mut text = String::new();
    for o in &list {
        writeln!(text, "{o}  chi {}", o.euler_char()).unwrap();
    }
    writeln!(text, "{} orbifolds with {bound} <= chi < 0", list.len()).unwrap();
    let entries: Vec<Value> = list
        .iter()
        .map(|o| json!({ "symbol": o.to_string(), "euler_characteristic": o.euler_char().to_string() }))
        .collect();
    ok(
        json!({ "chi_at_least": bound.to_string(), "max_index": max_index, "orbifolds": entries }),
        text,
    )
}

fn abelianize(presentation: &str) -> Result<Report> {
    let p: GroupPresentation = presentation.parse()?;
    let h = abelianization(&p);
    let mut text = String::new();
    line(&mut text, "presentation", &p);
    line(&mut text, "abelianization", &h);
    ok(
        json!({ "presentation": p.to_string(), "abelianization": homology_json(&h) }),
        text,
    )
}

fn homs(presentation: &str, target: &str, surjective: bool, limit: usize, budget: u64) -> Result<Report> {
    let p: GroupPresentation = presentation.parse()?;
    let t = FiniteGroupTable::by_name(target)?;
    let r = hom_search_with_budget(&p, &t, surjective, budget)?;
    let examples: Vec<Value> = r
        .assignments
        .iter()
        .take(limit)
        .map(|a| {
            let m: serde_json::Map<String, Value> = p
                .names()
                .iter()
                .zip(a)
                .map(|(n, &x)| (n.clone(), json!(x)))
                .collect();
            Value::Object(m)
        })
        .collect();
    let mut text = String::new();
    line(&mut text, "presentation", &p);
    line(&mut text, "target", format!("{} (order {})", t.name(), t.order()));
    line(&mut text, "homomorphisms", r.hom_count);
    line(&mut text, "surjective", r.surjective_count);
    line(&mut text, "table lookups", r.lookups);
    ok(
        json!({
            "presentation": p.to_string(),
            "target": t.name(),
            "target_order": t.order(),
            "surjective_only": surjective,
            "hom_count": r.hom_count,
            "surjective_count": r.surjective_count,
            "lookups": r.lookups,
            "pruned_nodes": r.pruned_nodes,
            "examples": examples,
        }),
        text,
    )
}

/// Comma separated words; spans in errors point into `text`.
pub fn parse_subgroup(p: &GroupPresentation, text: &str) -> Result<Vec<Word>> {
    let mut words = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let w = p.parse_word(piece).map_err(|mut e| {
            e.span = (e.span.0 + offset, e.span.1 + offset);
            e
        })?;
        words.push(w);
        offset += piece.len() + 1;
    }
    Ok(words)
}

fn cosets(presentation: &str, subgroup: Option<&str>, max_cosets: usize) -> Result<Report> {
    let p: GroupPresentation = presentation.parse()?;
    let words = match subgroup {
        Some(s) => parse_subgroup(&p, s)?,
        None => Vec::new(),
    };
    let index = match coset_enumeration(&p, &words, max_cosets) {
        CosetOutcome::Index(n) => n,
        CosetOutcome::Exceeded { max_cosets } => return Err(CliError::CosetsExceeded { max_cosets }.into()),
    };
    let sub: Vec<String> = words.iter().map(|w| p.format_word(w)).collect();
    let mut text = String::new();
    line(&mut text, "presentation", &p);
    line(
        &mut text,
        "subgroup",
        if sub.is_empty() {
            "1".to_string()
        } else {
            sub.join(", ")
        },
    );
    line(&mut text, "index", index);
    ok(
        json!({ "presentation": p.to_string(), "subgroup": sub, "index": index }),
        text,
    )
}

fn parse_gluing(s: &str) -> Result<GluingJson> {
    serde_json::from_str(s).map_err(|e| {
        // single-line input: the column is a byte offset plus one
        let at = e.column().saturating_sub(1).min(s.len());
        let span = if e.line() == 1 {
            Some((at, (at + 1).min(s.len())))
        } else {
            None
        };
        input(&format!("invalid gluing JSON: {e}"), span)
    })
}

fn gluing(raw: Option<&str>) -> Result<Report> {
    let g = match raw {
        Some(s) => GraphManifoldGluing::from_json(&parse_gluing(s)?)?,
        None => GraphManifoldGluing::theorem_4_1(),
    };
    let p = glue(&g)?;
    let h = abelianization(&p);
    let relators: Vec<String> = p.relators().iter().map(|w| p.format_word(w)).collect();
    let mut text = String::new();
    line(&mut text, "gluing", serde_json::to_string(&g.to_json())?);
    line(&mut text, "generators", p.names().join(", "));
    for (i, r) in relators.iter().enumerate() {
        line(&mut text, &format!("relator {}", i + 1), r);
    }
    line(&mut text, "H1", &h);
    line(&mut text, "homology sphere", h.is_trivial());
    ok(
        json!({
            "gluing": g.to_json(),
            "generators": p.names(),
            "relators": relators,
            "central": p.central().iter().map(|&i| p.name(i)).collect::<Vec<_>>(),
            "abelianization": homology_json(&h),
            "homology_sphere": h.is_trivial(),
        }),
        text,
    )
}

fn surgery(p: i64, q: i64) -> Result<Report> {
    let c = SurgeryCurve::new(p, q)?;
    let (n1, n2) = surgery_family(c)?;
    let a = lemma45_divisor_analysis(c)?;
    let mut text = String::new();
    line(&mut text, "curve", format!("{p} m + {q} l"));
    line(&mut text, "N1", format!("{n1}  H1 = {}", n1.homology()));
    line(&mut text, "N2", format!("{n2}  H1 = {}", n2.homology()));
    line(&mut text, "gcd(12q, 2p)", a.gcd_12q_2p);
    line(&mut text, "k' candidates", format!("{:?}", a.k_prime_candidates));
    line(&mut text, "ZHS possible", a.zhs_possible);
    ok(
        json!({
            "p": p,
            "q": q,
            "n1": seifert_json(&n1),
            "n2": seifert_json(&n2),
            "analysis": a,
        }),
        text,
    )
}

fn family(n: u32, k: u32, b: [i64; 3]) -> Result<Report> {
    let mut stages = Vec::new();
    let mut links = Vec::new();
    let mut text = String::new();
    let mut all_ok = true;
    for j in (0..=k).rev() {
        let m = family_member(n, j, b)?;
        let rank = m.rank_bz().ok();
        writeln!(
            text,
            "M({n},{j}) = {m}  e = {}  rank {}",
            m.euler_number(),
            rank.map_or("-".to_string(), |r| r.to_string())
        )
        .unwrap();
        stages.push(json!({
            "k": j,
            "symbol": m.to_string(),
            "euler_number": m.euler_number().to_string(),
            "rank": rank,
        }));
        if j == 0 {
            continue;
        }
        let next = family_member(n, j - 1, b)?;
        let (q, data) = fiber_quotient_z2(&m)?;
        let c = verify_fiber_hom(&m, &q, &data)?;
        let good = q == next && c.well_defined && c.surjective;
        all_ok &= good;
        writeln!(
            text,
            "  -> M({n},{}) degree 2 quotient: well defined {}, surjective {}",
            j - 1,
            c.well_defined,
            c.surjective
        )
        .unwrap();
        links.push(json!({
            "from": m.to_string(),
            "to": q.to_string(),
            "matches_next": q == next,
            "well_defined": c.well_defined,
            "surjective": c.surjective,
        }));
    }
    let good = links
        .iter()
        .filter(|l| l["well_defined"] == true && l["surjective"] == true)
        .count();
    writeln!(text, "{good} of {} links verified", links.len()).unwrap();
    Ok(Report {
        json: json!({ "n": n, "k": k, "b": b, "stages": stages, "links": links }),
        text,
        exit: if all_ok { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}
