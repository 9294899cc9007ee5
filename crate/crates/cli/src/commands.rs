//! One function per subcommand. Each returns a JSON report and whether the
//! command's own check passed (only `reproduce` and `type2 --random` fail).

use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use puro_core::level::{self, LevelAlgebra, WlpReport};
use puro_core::macaulay::{self, IntSeq};
use puro_core::monomial::{parse_monomials, Monomial};
use puro_core::purity::{self, EnumStrategy, PurityVerdict, Region, SearchBudget};
use puro_core::sequence;
use puro_core::simplicial::{self, FVector};

pub struct Ctx {
    pub budget: SearchBudget,
    pub seed: u64,
    pub chars: Vec<u64>,
}

/// Monomials given inline, or read from a file when prefixed with `@`.
pub fn read_monomials(arg: &str) -> Result<Vec<Monomial>> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => arg.to_string(),
    };
    Ok(parse_monomials(&text, None)?)
}

fn monos(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| m.to_string()).collect()
}

pub fn verdict_json(v: &PurityVerdict) -> Value {
    json!({
        "status": v.status,
        "witness": v.witness.as_ref().map(|w| monos(w)),
        "nodes": v.nodes_explored,
        "budget_hit": v.budget_hit,
        "route": v.route,
    })
}

pub fn check(seq: &str) -> Result<Value> {
    let h: IntSeq = seq.parse()?;
    let shape = sequence::shape(&h);
    Ok(json!({
        "sequence": h.to_string(),
        "o_sequence": macaulay::is_o_sequence(&h),
        "first_macaulay_violation": macaulay::first_macaulay_violation(&h),
        "hibi_violation": sequence::hibi_violation(&h),
        "hausel": sequence::hausel_holds(&h),
        "growth_bound_violation": sequence::growth_bound_check(&h),
        "shape": shape,
    }))
}

pub fn decide(seq: &str, ctx: &Ctx, no_fast_paths: bool) -> Result<Value> {
    let h: IntSeq = seq.parse()?;
    let budget = if no_fast_paths {
        ctx.budget.clone().without_fast_paths()
    } else {
        ctx.budget.clone()
    };
    let mut out = verdict_json(&purity::decide_pure(&h, &budget)?);
    out["sequence"] = json!(h.to_string());
    Ok(out)
}

pub fn enumerate(
    r: usize,
    e: u32,
    t: Option<u64>,
    strategy: EnumStrategy,
    checkpoint: Option<&Path>,
    ctx: &Ctx,
) -> Result<Value> {
    let en = purity::enumerate_pure_with(r, e, t, &ctx.budget, strategy, checkpoint)?;
    let strs = |v: &[IntSeq]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>();
    Ok(json!({
        "r": r,
        "e": e,
        "type": t,
        "strategy": en.strategy,
        "count": en.sequences.len(),
        "complete": en.complete,
        "nodes": en.nodes,
        "sequences": strs(&en.sequences),
        "unresolved": strs(&en.unresolved),
    }))
}

pub fn icp_line(seq: &str, slot: usize, lo: u64, hi: u64, ctx: &Ctx) -> Result<Value> {
    let base: IntSeq = seq.parse()?;
    let line = purity::icp_scan(&base, slot, lo..=hi, &ctx.budget)?;
    Ok(json!({
        "base": line.base.to_string(),
        "slot": slot,
        "pure_values": line.pure_values,
        "unresolved": line.unresolved,
        "gaps": line.gaps,
    }))
}

pub fn icp_box(e: u32, bound: u64, ctx: &Ctx) -> Result<Value> {
    let b = purity::icp_box_scan(e, bound, &ctx.budget)?;
    Ok(json!({
        "socle_degree": e,
        "bound": bound,
        "pure": b.pure.len(),
        "unresolved": b.unresolved.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        "violations": b.violations.iter().map(|v| json!({"slot": v.free, "value": v.value, "line": v.line.to_string()})).collect::<Vec<_>>(),
    }))
}

/// Where the algebra comes from on the command line.
pub enum Source<'a> {
    Ideal(&'a str),
    Inverse(&'a str),
    Witness(usize, usize),
    Random(usize, usize, u32),
}

fn algebra(src: Source, ctx: &Ctx, slp: bool) -> Result<(LevelAlgebra, String)> {
    Ok(match src {
        Source::Ideal(s) => (
            LevelAlgebra::from_ideal(&read_monomials(s)?)?,
            "ideal".into(),
        ),
        Source::Inverse(s) => (
            LevelAlgebra::from_inverse_system(&read_monomials(s)?)?,
            "inverse system".into(),
        ),
        Source::Witness(r, d) if slp => level::slp_failure_witness(r, d)?,
        Source::Witness(r, d) => level::wlp_failure_witness(r, d)?,
        Source::Random(r, d, e) => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            (
                level::random_level_algebra(&mut rng, r, d, e)?,
                format!("random(seed={})", ctx.seed),
            )
        }
    })
}

fn report_json(rep: &WlpReport, chars: &[u64]) -> Value {
    json!({
        "power": rep.power,
        "wlp_char0": rep.wlp_char0,
        "mode": rep.mode,
        "first_failure_degree": rep.first_failure_degree,
        "failing_primes": rep.failing_primes,
        "fails_in_all_characteristics": rep.fails_in_all_characteristics,
        "chars": chars.iter().map(|&p| json!({"p": p, "passes": rep.passes_in_char(p)})).collect::<Vec<_>>(),
        "ranks": rep.ranks.iter().map(|s| json!({"from": s.degree, "rank": s.rank, "max": s.target})).collect::<Vec<_>>(),
    })
}

fn algebra_json(a: &LevelAlgebra, how: &str) -> Value {
    json!({
        "source": how,
        "variables": a.ambient(),
        "hilbert": a.hilbert().entries(),
        "level": a.is_level(),
        "socle_degree": a.socle_degree(),
        "type": a.socle_type(),
        "inverse_system": monos(a.socle_generators()),
        "ideal": monos(&a.ideal_generators()),
    })
}

pub fn wlp(src: Source, ctx: &Ctx) -> Result<Value> {
    let (a, how) = algebra(src, ctx, false)?;
    let mut out = algebra_json(&a, &how);
    out["wlp"] = report_json(&a.wlp_report(), &ctx.chars);
    Ok(out)
}

pub fn slp(src: Source, ctx: &Ctx) -> Result<Value> {
    let (a, how) = algebra(src, ctx, true)?;
    let reps = a.slp_report();
    let mut out = algebra_json(&a, &how);
    out["slp_char0"] = json!(reps.iter().all(|r| r.wlp_char0));
    out["powers"] = json!(reps
        .iter()
        .map(|r| json!({"power": r.power, "max_rank": r.wlp_char0, "mode": r.mode, "first_failure_degree": r.first_failure_degree, "failing_primes": r.failing_primes}))
        .collect::<Vec<_>>());
    Ok(out)
}

pub fn type2(m1: &str, m2: &str) -> Result<Value> {
    let ms = read_monomials(&format!("{m1} {m2}"))?;
    let [p, q] = ms.as_slice() else {
        bail!("expected two monomials")
    };
    let a = LevelAlgebra::from_inverse_system(&[p.clone(), q.clone()])?;
    let h = a.hilbert();
    let formula = level::type2_hilbert(p, q)?;
    let form = if p.ambient() == 3 {
        Some(level::classify_type2_3vars(p, q)?)
    } else {
        None
    };
    let rep = a.wlp_report();
    Ok(json!({
        "hilbert": h.entries(),
        "formula": formula.entries(),
        "form": form,
        "form_hilbert": form.as_ref().map(|f| f.hilbert().entries().to_vec()),
        "wlp_char0": rep.wlp_char0,
        "wlp_shape": level::wlp_shape_ok(&h),
    }))
}

/// Seeded random pairs in three variables: WLP in characteristic 0 and the
/// strict unimodal shape.
pub fn type2_random(count: usize, max_exp: u32, ctx: &Ctx) -> Result<(Value, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let (p, q) = level::random_type2_pair(&mut rng, max_exp);
        let a = LevelAlgebra::from_inverse_system(&[p.clone(), q.clone()])?;
        let h = a.hilbert();
        let formula = level::type2_hilbert(&p, &q)?;
        let (wlp, shape) = (a.wlp_report().wlp_char0, level::wlp_shape_ok(&h));
        if !wlp || !shape || formula != h {
            failures.push(json!({"pair": monos(&[p, q]), "wlp": wlp, "shape": shape, "formula_ok": formula == h}));
        }
    }
    let ok = failures.is_empty();
    Ok((
        json!({"seed": ctx.seed, "pairs": count, "max_exp": max_exp, "failures": failures}),
        ok,
    ))
}

fn fvector_json(f: &FVector) -> Result<Value> {
    let h = simplicial::f_to_h(f)?;
    Ok(json!({
        "f": f.entries(),
        "h": h,
        "cohen_macaulay": simplicial::is_cm(f),
        "string_inequalities": simplicial::string_holds(&f.as_int_seq()),
    }))
}

pub enum FCmd<'a> {
    Vector(&'a str),
    Facets(&'a str),
    Type2(u64, u64),
    Interval(&'a str, &'a str),
    Plane(u64),
    Steiner(u64),
}

pub fn fvector(cmd: FCmd) -> Result<Value> {
    let fv = |s: &str| -> Result<FVector> { Ok(FVector::from_int_seq(&s.parse()?)?) };
    match cmd {
        FCmd::Vector(s) => fvector_json(&fv(s)?),
        FCmd::Facets(arg) => {
            let text = match arg.strip_prefix('@') {
                Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {p}"))?,
                None => arg.replace(';', "\n"),
            };
            fvector_json(&simplicial::f_vector_of(&simplicial::parse_facets(&text)?)?)
        }
        FCmd::Type2(e, h) => {
            let f = simplicial::pure_f_type2(e, h)?;
            let mut out = fvector_json(&f)?;
            out["type2_chain"] = json!(simplicial::type2_inequality_check(&f));
            Ok(out)
        }
        FCmd::Interval(a, b) => {
            let iv = simplicial::cm_interval_check(&fv(a)?, &fv(b)?)?;
            Ok(json!({
                "slot": iv.slot,
                "alpha": iv.alpha,
                "verified": iv.verified(),
                "first_gap": iv.first_gap,
                "steps": iv.steps.iter().map(|(b, h)| json!({"beta": b, "h": h})).collect::<Vec<_>>(),
            }))
        }
        FCmd::Plane(d) => {
            let h = simplicial::projective_plane_sequence(d)?;
            let witness = simplicial::prime_plane_lines(d).ok();
            Ok(json!({
                "order": d,
                "sequence": h.to_string(),
                "witness": witness.as_ref().map(|w| monos(w)),
                "witness_verified": witness.map(|w| simplicial::f_vector_of(&w).map(|f| f.as_int_seq() == h).unwrap_or(false)),
            }))
        }
        FCmd::Steiner(r) => {
            let h = simplicial::steiner_extremal(r)?;
            Ok(json!({
                "r": r,
                "sequence": h.to_string(),
                "steiner_admissible": simplicial::steiner_admissible(r),
                "fano_witness": (r == 7).then(|| monos(&simplicial::fano_lines())),
            }))
        }
    }
}

pub fn census_chain(r: usize, e: u32, ctx: &Ctx) -> Result<(Value, bool)> {
    let c = purity::count_chain(r, e, &ctx.budget)?;
    let ok = c.chain_holds();
    Ok((serde_json::to_value(&c)?, ok))
}

pub fn census_regions(t: u64, regions: &[Region], ctx: &Ctx) -> Result<(Value, bool)> {
    let c = purity::socle3_region_census(t, regions, &ctx.budget)?;
    let ok = match (c.region_one_closed_form, regions.contains(&Region::I)) {
        (Some(n), true) => c.unresolved.is_empty() && c.region_counts[0] == n,
        _ => true,
    };
    Ok((
        json!({
            "t": t,
            "regions": c.searched,
            "counts": {"I": c.region_counts[0], "II": c.region_counts[1], "III": c.region_counts[2]},
            "region_one_closed_form": c.region_one_closed_form,
            "unresolved": c.unresolved,
        }),
        ok,
    ))
}

/// Every `(1, r, h_2)` against the closed form `⌈r/2⌉ <= h_2 <= C(r+1, 2)`.
pub fn census_socle2(max_r: u64, ctx: &Ctx) -> Result<(Value, bool)> {
    let mut rows = Vec::new();
    let mut discrepancies = 0;
    for r in 1..=max_r {
        let (lo, hi) = sequence::socle2_bounds(r);
        let mut pure = Vec::new();
        for h2 in 1..=hi + 2 {
            let v = purity::decide_pure(&IntSeq::new(vec![1, r, h2]), &ctx.budget)?;
            if v.is_pure() {
                pure.push(h2);
            }
            if v.is_pure() != (lo..=hi).contains(&h2) {
                discrepancies += 1;
            }
        }
        rows.push(json!({"r": r, "low": lo, "high": hi, "pure_min": pure.first(), "pure_max": pure.last(), "pure_count": pure.len()}));
    }
    Ok((
        json!({"rows": rows, "discrepancies": discrepancies}),
        discrepancies == 0,
    ))
}
