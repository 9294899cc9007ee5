//! Regenerate each worked example and diff it against its fixture file.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use puro_core::level::{self, LevelAlgebra};
use puro_core::macaulay::IntSeq;
use puro_core::monomial::parse_monomials;
use puro_core::purity::{self, PurityStatus, SearchBudget};
use puro_core::sequence;

pub const IDS: &[&str] = &[
    "type14-n22",
    "type14-n29",
    "char257",
    "soc4-nonunimodal",
    "icp3-r3-table",
    "answernd-grid",
];

/// `PURO_FIXTURES`, or the directory shipped with the crate.
pub fn fixture_dir() -> PathBuf {
    std::env::var_os("PURO_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")))
}

/// `key: value` lines in file order; `#` lines are comments.
pub struct Fixture {
    entries: Vec<(String, String)>,
}

impl Fixture {
    pub fn load(dir: &Path, id: &str) -> Result<Fixture> {
        let path = dir.join(format!("{id}.txt"));
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading fixture {}", path.display()))?;
        let mut entries = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| anyhow!("{}:{}: expected `key: value`", path.display(), no + 1))?;
            entries.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Fixture { entries })
    }

    pub fn all(&self, key: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.all(key)
            .first()
            .copied()
            .ok_or_else(|| anyhow!("fixture has no `{key}` entry"))
    }

    pub fn seq(&self, key: &str) -> Result<IntSeq> {
        Ok(self.get(key)?.parse()?)
    }

    pub fn num(&self, key: &str) -> Result<u64> {
        self.get(key)?
            .parse()
            .with_context(|| format!("`{key}` is not a number"))
    }
}

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub id: String,
    pub passed: bool,
    #[serde(skip)]
    pub seconds: f64,
    pub mismatches: Vec<String>,
    pub details: Value,
}

struct Diff(Vec<String>);

impl Diff {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn seq(&mut self, name: &str, got: &IntSeq, want: &IntSeq) {
        if got == want {
            return;
        }
        let (g, w) = (got.entries(), want.entries());
        let idx: Vec<String> = (0..g.len().max(w.len()))
            .filter(|&i| g.get(i) != w.get(i))
            .take(8)
            .map(|i| i.to_string())
            .collect();
        self.0.push(format!(
            "{name}: {} vs {} entries, differing at [{}]",
            g.len(),
            w.len(),
            idx.join(",")
        ));
    }
}

pub fn run(id: &str, dir: &Path, budget: &SearchBudget) -> Result<Outcome> {
    let start = Instant::now();
    let mut diff = Diff(Vec::new());
    let details = match id {
        "type14-n22" | "type14-n29" => type14(&Fixture::load(dir, id)?, &mut diff)?,
        "char257" => char257(&Fixture::load(dir, id)?, &mut diff)?,
        "soc4-nonunimodal" => soc4(&Fixture::load(dir, id)?, budget, &mut diff)?,
        "icp3-r3-table" => icp3(&Fixture::load(dir, id)?, budget, &mut diff)?,
        "answernd-grid" => answernd(&Fixture::load(dir, id)?, &mut diff)?,
        other => bail!(
            "unknown example id `{other}`; available: {}",
            IDS.join(", ")
        ),
    };
    Ok(Outcome {
        id: id.to_string(),
        passed: diff.0.is_empty(),
        seconds: start.elapsed().as_secs_f64(),
        mismatches: diff.0,
        details,
    })
}

fn type14(fx: &Fixture, diff: &mut Diff) -> Result<Value> {
    let n = fx.num("n")? as u32;
    let gens = purity::construct_type14(n)?;
    let a = LevelAlgebra::from_inverse_system(&gens)?;
    let h = a.hilbert();
    diff.seq("hilbert", &h, &fx.seq("hilbert")?);
    let middle = fx.seq("middle")?;
    let formula = purity::type14_middle(n as u64);
    diff.check(middle.entries() == formula, || {
        format!("middle formula gives {formula:?}")
    });
    let at = h.entries().windows(4).position(|w| w == middle.entries());
    diff.check(at.is_some(), || format!("middle run {middle} not found"));
    diff.check(a.socle_type() == 14 && a.is_level(), || {
        format!("socle type {}", a.socle_type())
    });
    let shape = sequence::shape(&h);
    Ok(json!({
        "n": n,
        "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "entries": h.len(),
        "middle_at": at,
        "middle": middle.entries(),
        "unimodal": shape.is_unimodal,
    }))
}

fn char257(fx: &Fixture, diff: &mut Diff) -> Result<Value> {
    let ideal = parse_monomials(fx.get("ideal")?, Some(3))?;
    let a = LevelAlgebra::from_ideal(&ideal)?;
    diff.seq("hilbert", &a.hilbert(), &fx.seq("hilbert")?);
    diff.check(a.is_level() && a.socle_type() == 2, || {
        "not level of type 2".into()
    });
    let report = a.wlp_report();
    let want = fx.seq("failing_primes")?.into_vec();
    diff.check(report.wlp_char0, || "WLP fails in characteristic 0".into());
    diff.check(report.failing_primes == want, || {
        format!("failing primes {:?}", report.failing_primes)
    });
    // the Smith argument covers every prime; spot-check the small ones directly
    let mut disagree = Vec::new();
    for p in (2..=257u64).filter(|&p| (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)) {
        if a.has_max_rank_in_char(1, p) == want.contains(&p) {
            disagree.push(p);
        }
    }
    diff.check(disagree.is_empty(), || {
        format!("direct rank test disagrees at {disagree:?}")
    });
    let m = level::linkage_quotient_matrix(&ideal, 6)?;
    let det = m.determinant().magnitude().clone();
    diff.check(det.to_string() == fx.get("determinant")?, || {
        format!("determinant {det}")
    });
    Ok(json!({
        "hilbert": a.hilbert().entries(),
        "wlp_char0": report.wlp_char0,
        "failing_primes": report.failing_primes,
        "primes_checked_directly": "all primes up to 257",
        "matrix": format!("{}x{}", m.rows(), m.cols()),
        "determinant": det.to_string(),
    }))
}

fn soc4(fx: &Fixture, budget: &SearchBudget, diff: &mut Diff) -> Result<Value> {
    let gens = purity::soc4_nonunimodal();
    let h = puro_core::OrderIdeal::closure(&gens)?.h_vector();
    diff.seq("hilbert", &h, &fx.seq("hilbert")?);
    let verdict = purity::decide_pure(&h, budget)?;
    diff.check(verdict.status == PurityStatus::Pure, || {
        format!("decider says {:?}", verdict.status)
    });
    let maxima = sequence::maxima_count(&h);
    diff.check(maxima as u64 == fx.num("maxima")?, || {
        format!("{maxima} maxima")
    });
    Ok(json!({
        "hilbert": h.entries(),
        "generators": gens.len(),
        "decide": format!("{:?} via {:?}", verdict.status, verdict.route),
        "maxima": maxima,
    }))
}

fn icp3(fx: &Fixture, budget: &SearchBudget, diff: &mut Diff) -> Result<Value> {
    let mut want: Vec<IntSeq> = fx
        .all("pure")
        .into_iter()
        .map(str::parse)
        .collect::<puro_core::Result<_>>()?;
    want.sort();
    let en = purity::enumerate_pure(3, 3, None, budget)?;
    let mut got: Vec<IntSeq> = en
        .sequences
        .iter()
        .filter(|h| h.get(1) == 3)
        .cloned()
        .collect();
    got.sort();
    diff.check(en.complete, || "enumeration incomplete".into());
    diff.check(got == want, || {
        let extra: Vec<String> = got
            .iter()
            .filter(|h| !want.contains(h))
            .map(|h| h.to_string())
            .collect();
        let missing: Vec<String> = want
            .iter()
            .filter(|h| !got.contains(h))
            .map(|h| h.to_string())
            .collect();
        format!(
            "extra [{}], missing [{}]",
            extra.join(" "),
            missing.join(" ")
        )
    });
    let bound = fx.num("icp_bound")?;
    let bx = purity::icp_box_scan(3, bound, budget)?;
    diff.check(bx.violations.is_empty(), || {
        format!("{} interval gaps", bx.violations.len())
    });
    diff.check(bx.unresolved.is_empty(), || {
        format!("{} undecided points", bx.unresolved.len())
    });
    Ok(json!({
        "table": got.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        "box_bound": bound,
        "box_pure": bx.pure.len(),
        "box_unresolved": bx.unresolved.len(),
        "gaps": bx.violations.len(),
    }))
}

fn answernd(fx: &Fixture, diff: &mut Diff) -> Result<Value> {
    let (max_r, max_d) = (fx.num("max_r")? as usize, fx.num("max_d")? as usize);
    let mut stated = Vec::new();
    for line in fx.all("family") {
        let (name, h) = line
            .split_once(' ')
            .ok_or_else(|| anyhow!("bad family line `{line}`"))?;
        stated.push((name.to_string(), h.trim().parse::<IntSeq>()?));
    }
    let mut cells = Vec::new();
    for r in 1..=max_r {
        for d in 1..=max_d {
            if level::always_wlp(r, d) {
                cells
                    .push(json!({"r": r, "d": d, "witness": "always has the WLP", "fails": false}));
                continue;
            }
            let (a, how) = level::wlp_failure_witness(r, d)?;
            let rep = a.wlp_report();
            let fails = !rep.wlp_char0;
            diff.check(fails, || format!("({r},{d}) {how} has the WLP"));
            diff.check(
                a.ambient() == r && a.socle_type() == d && a.is_level(),
                || {
                    format!(
                        "({r},{d}) {how} has {} variables and type {}",
                        a.ambient(),
                        a.socle_type()
                    )
                },
            );
            if let Some((_, h)) = stated.iter().find(|(n, _)| *n == how) {
                diff.seq(&how, &a.hilbert(), h);
            }
            cells.push(json!({
                "r": r, "d": d, "witness": how, "fails": fails,
                "mode": format!("{:?}", rep.mode), "degree": rep.first_failure_degree,
                "hilbert": a.hilbert().entries(),
            }));
        }
    }
    // families stated in the fixture but not used by the grid
    for (name, h) in &stated {
        if name == "surjectivity(r=3)" {
            let a = level::FailureFamily::Surjectivity { r: 3 }.build()?;
            diff.seq(name, &a.hilbert(), h);
        }
    }
    let slp = LevelAlgebra::from_ideal(&parse_monomials(fx.get("slp_ideal")?, Some(3))?)?;
    diff.seq("slp_hilbert", &slp.hilbert(), &fx.seq("slp_hilbert")?);
    diff.check(slp.wlp_report().wlp_char0, || {
        "SLP example should have the WLP".into()
    });
    let cube = slp.lefschetz_report(3);
    let h = slp.hilbert();
    let quotient: Vec<u64> = (0..h.len())
        .map(|j| {
            let r = if j >= 3 {
                cube.ranks
                    .iter()
                    .find(|s| s.degree as usize == j - 3)
                    .map_or(0, |s| s.rank)
            } else {
                0
            };
            h.get(j) - r as u64
        })
        .collect();
    let quotient = IntSeq::new(quotient).trim();
    diff.seq(
        "slp_quotient_cube",
        &quotient,
        &fx.seq("slp_quotient_cube")?,
    );
    let step = cube.ranks.iter().find(|s| s.degree == 3);
    diff.check(step.is_some_and(|s| s.rank < s.target), || {
        "x L^3 from degree 3 has full rank".into()
    });
    Ok(json!({
        "cells": cells,
        "slp_hilbert": h.entries(),
        "slp_cube_rank_3_to_6": step.map(|s| format!("{} of {}", s.rank, s.target)),
        "slp_quotient_cube": quotient.entries(),
    }))
}
