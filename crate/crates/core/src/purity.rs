//! Deciding whether a sequence is a pure O-sequence, enumerating pure
//! O-sequences, interval scans, and the explicit pure constructions.
//!
//! The search picks `h_e` distinct degree-`e` monomials in `h_1` variables in
//! decreasing lex order. Up to a permutation of variables every generator set
//! has a representative in which each new generator, restricted to the
//! variables not used by the earlier ones, has non-increasing exponents; only
//! those branches are explored.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, Read, Write};
use std::ops::RangeInclusive;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macaulay::{
    binom_sat, binom_u64, differentiate, integrate, is_o_sequence, macaulay_bound_u64, IntSeq,
};
use crate::monomial::{convolve, disjoint_union, monomials_of_degree, Monomial, OrderIdeal};
use crate::sequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PurityStatus {
    Pure,
    NotPure,
    Unknown,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Trivial,
    NotOSequence,
    TypeBound,
    Hibi,
    Hausel,
    GrowthBound,
    Socle2ClosedForm,
    Differentiable,
    NonDifferentiableSocle3,
    Blocks,
    Search,
    TableTooLarge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityVerdict {
    pub status: PurityStatus,
    pub witness: Option<Vec<Monomial>>,
    pub nodes_explored: u64,
    pub budget_hit: bool,
    pub route: Route,
}

impl PurityVerdict {
    fn decided(status: PurityStatus, route: Route) -> Self {
        PurityVerdict {
            status,
            witness: None,
            nodes_explored: 0,
            budget_hit: false,
            route,
        }
    }

    fn pure(witness: Vec<Monomial>, route: Route) -> Self {
        PurityVerdict {
            status: PurityStatus::Pure,
            witness: Some(witness),
            nodes_explored: 0,
            budget_hit: false,
            route,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.status == PurityStatus::Pure
    }
}

/// Limits for one search. `fast_paths = false` sends every input straight
/// to the backtracking search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub max_ambient_vars: usize,
    pub fast_paths: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 2_000_000_000,
            max_seconds: 600.0,
            max_ambient_vars: 64,
            fast_paths: true,
        }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_seconds: f64, max_ambient_vars: usize) -> Result<Self> {
        if max_nodes == 0
            || max_seconds.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
            || max_ambient_vars == 0
        {
            return Err(Error::ParameterOutOfRange(
                "budget fields must be positive".into(),
            ));
        }
        Ok(SearchBudget {
            max_nodes,
            max_seconds,
            max_ambient_vars,
            fast_paths: true,
        })
    }

    pub fn without_fast_paths(mut self) -> Self {
        self.fast_paths = false;
        self
    }

    fn deadline(&self) -> Instant {
        Instant::now() + Duration::from_secs_f64(self.max_seconds.min(1e9))
    }
}

/// `h` with trailing zeros removed; errors unless `h_0 = 1` and every later
/// entry is positive.
fn normalize(h: &IntSeq) -> Result<IntSeq> {
    let h = h.trim();
    if h.is_empty() || h[0] != 1 {
        return Err(Error::MalformedSequence(format!("{h}: h_0 must be 1")));
    }
    if let Some(i) = h.entries().iter().position(|&x| x == 0) {
        return Err(Error::MalformedSequence(format!(
            "{h}: zero entry at degree {i} before the socle degree"
        )));
    }
    Ok(h)
}

/// Decide whether `h` is a pure O-sequence of codimension exactly `h_1`.
pub fn decide_pure(h: &IntSeq, budget: &SearchBudget) -> Result<PurityVerdict> {
    decide_inner(h, budget, true)
}

fn decide_inner(h: &IntSeq, budget: &SearchBudget, parallel: bool) -> Result<PurityVerdict> {
    let h = normalize(h)?;
    let e = h.socle_degree();
    if e == 0 {
        return Ok(verified(
            &h,
            PurityVerdict::pure(vec![Monomial::unit(0)], Route::Trivial),
        ));
    }
    let (r, t) = (h[1], h[e]);
    if budget.fast_paths {
        if let Some(v) = fast_verdict(&h) {
            return Ok(verified(&h, v));
        }
    } else if !is_o_sequence(&h) || r > t * e as u64 {
        // outside the search space altogether
        let route = if is_o_sequence(&h) {
            Route::TypeBound
        } else {
            Route::NotOSequence
        };
        return Ok(PurityVerdict::decided(PurityStatus::NotPure, route));
    }
    if r as usize > budget.max_ambient_vars {
        return Ok(PurityVerdict {
            status: PurityStatus::Unknown,
            witness: None,
            nodes_explored: 0,
            budget_hit: true,
            route: Route::TableTooLarge,
        });
    }
    let table = match Table::build(r as usize, e as u32) {
        Some(t) => t,
        None => {
            return Ok(PurityVerdict {
                status: PurityStatus::Unknown,
                witness: None,
                nodes_explored: 0,
                budget_hit: true,
                route: Route::TableTooLarge,
            })
        }
    };
    Ok(verified(&h, search(&table, &h, budget, parallel)))
}

fn verified(h: &IntSeq, v: PurityVerdict) -> PurityVerdict {
    if let Some(w) = &v.witness {
        let x = OrderIdeal::closure(w).expect("witness is nonempty");
        assert!(
            x.is_pure() && x.h_vector() == *h,
            "witness for {h} closes to {}",
            x.h_vector()
        );
    }
    v
}

/// Verdicts that follow from closed forms and necessary conditions.
fn fast_verdict(h: &IntSeq) -> Option<PurityVerdict> {
    let e = h.socle_degree();
    let (r, t) = (h[1], h[e]);
    let no = |route| Some(PurityVerdict::decided(PurityStatus::NotPure, route));
    if !is_o_sequence(h) {
        return no(Route::NotOSequence);
    }
    if r > t * e as u64 {
        return no(Route::TypeBound);
    }
    if sequence::hibi_violation(h).is_some() {
        return no(Route::Hibi);
    }
    if !sequence::hausel_holds(h) {
        return no(Route::Hausel);
    }
    if sequence::growth_bound_check(h).is_some() {
        return no(Route::GrowthBound);
    }
    if e == 1 {
        let w = (0..r as usize)
            .map(|i| Monomial::var(r as usize, i))
            .collect();
        return Some(PurityVerdict::pure(w, Route::Trivial));
    }
    if e == 2 {
        return Some(match socle2_witness(r, h[2]) {
            Ok(w) => PurityVerdict::pure(w, Route::Socle2ClosedForm),
            Err(_) => PurityVerdict::decided(PurityStatus::NotPure, Route::Socle2ClosedForm),
        });
    }
    if sequence::is_nondecreasing(h) {
        if sequence::is_differentiable_seq(h) {
            return Some(PurityVerdict::pure(
                differentiable_witness(h).ok()?,
                Route::Differentiable,
            ));
        }
        if e <= 3 {
            return no(Route::NonDifferentiableSocle3);
        }
    }
    block_witness(h).map(|w| PurityVerdict::pure(w, Route::Blocks))
}

/// Generators with h-vector `(1, r, h2)`.
pub fn socle2_witness(r: u64, h2: u64) -> Result<Vec<Monomial>> {
    let (lo, hi) = sequence::socle2_bounds(r);
    if r == 0 || h2 < lo || h2 > hi {
        return Err(Error::ParameterOutOfRange(format!(
            "(1,{r},{h2}) is not pure"
        )));
    }
    let n = r as usize;
    let mut gens: Vec<Monomial> = (0..n / 2)
        .map(|i| Monomial::var(n, 2 * i).mul(&Monomial::var(n, 2 * i + 1)))
        .collect();
    if n % 2 == 1 {
        gens.push(Monomial::var(n, n - 1).mul(&Monomial::var(n, n - 1)));
    }
    let have: FxHashSet<Monomial> = gens.iter().cloned().collect();
    gens.extend(
        monomials_of_degree(n, 2)
            .into_iter()
            .filter(|m| !have.contains(m))
            .take((h2 - gens.len() as u64) as usize),
    );
    Ok(gens)
}

/// Pure order ideal for a non-decreasing differentiable `h`: the lex-least
/// order ideal `L` with h-vector `Δh` in `h_1 - 1` variables, each member
/// `b` padded to degree `e` by a power of the last variable.
pub fn differentiable_witness(h: &IntSeq) -> Result<Vec<Monomial>> {
    let h = normalize(h)?;
    let g = differentiate(&h)?;
    if !is_o_sequence(&g) {
        return Err(Error::MalformedSequence(format!(
            "{h} is not differentiable"
        )));
    }
    let e = h.socle_degree() as u32;
    let n = h.get(1) as usize;
    let mut gens = Vec::new();
    for k in 0..=e {
        let want = g.get(k as usize) as usize;
        if want == 0 {
            continue;
        }
        let layer = monomials_of_degree(n - 1, k);
        for b in layer.iter().take(want) {
            let mut exps = b.exps().to_vec();
            exps.push(e - k);
            gens.push(Monomial::new(exps));
        }
    }
    Ok(gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Block {
    /// All degree-`e` monomials in `s` variables.
    Trunc(usize),
    /// A single monomial with the given exponents.
    Single(Vec<u32>),
}

impl Block {
    fn profile(&self, e: u32) -> Vec<u64> {
        match self {
            Block::Trunc(s) => (0..=e as u64)
                .map(|i| binom_u64(i + *s as u64 - 1, *s as u64 - 1))
                .collect(),
            Block::Single(p) => {
                let ci = crate::level::ci_hilbert(&p.iter().map(|a| a + 1).collect::<Vec<_>>());
                (0..=e as usize).map(|i| ci.get(i)).collect()
            }
        }
    }

    fn generators(&self, e: u32) -> Vec<Monomial> {
        match self {
            Block::Trunc(s) => monomials_of_degree(*s, e),
            Block::Single(p) => vec![Monomial::new(p.clone())],
        }
    }
}

fn partitions(e: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, cap: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == parts {
            return;
        }
        for p in (1..=left.min(cap)).rev() {
            cur.push(p);
            rec(left - p, p, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Write `h` as a disjoint union of copies of at most two kinds of blocks:
/// truncated polynomial rings and single monomials.
pub fn block_witness(h: &IntSeq) -> Option<Vec<Monomial>> {
    let e = h.socle_degree() as u32;
    let r = h.get(1) as usize;
    if e == 0 || e > 24 {
        return None;
    }
    let mut kinds: Vec<Block> = (2..=r).map(Block::Trunc).collect();
    kinds.extend(partitions(e, r).into_iter().map(Block::Single));
    if kinds.len() > 4000 {
        return None;
    }
    let profiles: Vec<Vec<u64>> = kinds.iter().map(|k| k.profile(e)).collect();
    let target = h.entries();
    let fits = |c: &[(usize, u64)]| {
        (1..=e as usize)
            .all(|i| c.iter().map(|&(k, n)| n * profiles[k][i]).sum::<u64>() == target[i])
    };
    let build = |c: &[(usize, u64)]| {
        let blocks: Vec<Vec<Monomial>> = c
            .iter()
            .flat_map(|&(k, n)| std::iter::repeat_n(kinds[k].generators(e), n as usize))
            .collect();
        disjoint_union(&blocks)
    };
    let last = e as usize;
    for a in 0..kinds.len() {
        let pa = &profiles[a];
        if target[1].is_multiple_of(pa[1]) && target[last].is_multiple_of(pa[last]) {
            let n = target[1] / pa[1];
            if n > 0 && fits(&[(a, n)]) {
                return Some(build(&[(a, n)]));
            }
        }
        for b in a + 1..kinds.len() {
            let pb = &profiles[b];
            let (a1, b1, ae, be) = (
                pa[1] as i128,
                pb[1] as i128,
                pa[last] as i128,
                pb[last] as i128,
            );
            let (h1, he) = (target[1] as i128, target[last] as i128);
            let det = a1 * be - b1 * ae;
            let mut tries: Vec<(u64, u64)> = Vec::new();
            if det != 0 {
                let x = h1 * be - b1 * he;
                let y = a1 * he - ae * h1;
                if x % det == 0 && y % det == 0 && x / det > 0 && y / det > 0 {
                    tries.push(((x / det) as u64, (y / det) as u64));
                }
            } else {
                for x in 1..=(h1 / a1) {
                    let rest = h1 - x * a1;
                    if rest > 0 && rest % b1 == 0 {
                        tries.push((x as u64, (rest / b1) as u64));
                    }
                }
            }
            for (x, y) in tries {
                if fits(&[(a, x), (b, y)]) {
                    return Some(build(&[(a, x), (b, y)]));
                }
            }
        }
    }
    None
}

/// Everything the search needs about degree `<= e` monomials in `r` variables.
struct Table {
    r: usize,
    e: u32,
    deg: Vec<u8>,
    cands: Vec<Vec<u32>>,
    divs: Vec<Vec<u32>>,
    canon_from: Vec<usize>,
    support_end: Vec<usize>,
}

const TABLE_LIMIT: u128 = 3_000_000;
const DIVISOR_LIMIT: u128 = 80_000_000;

impl Table {
    fn build(r: usize, e: u32) -> Option<Table> {
        if binom_sat((r as u64) + e as u64, e as u64) > TABLE_LIMIT {
            return None;
        }
        let ncand = binom_sat((r as u64) + e as u64 - 1, e as u64);
        if ncand * (1u128 << e.min(20)) > DIVISOR_LIMIT * 4 {
            return None;
        }
        let mut index: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        let mut deg = Vec::new();
        for d in 0..=e {
            for m in monomials_of_degree(r, d) {
                index.insert(m.exps().to_vec(), deg.len() as u32);
                deg.push(d as u8);
            }
        }
        let mut cands: Vec<Vec<u32>> = monomials_of_degree(r, e)
            .into_iter()
            .map(|m| m.exps().to_vec())
            .collect();
        cands.reverse();
        let mut divs = Vec::with_capacity(cands.len());
        let mut total = 0u128;
        for c in &cands {
            let mut out = Vec::new();
            let mut cur = vec![0u32; r];
            divisors_rec(c, 0, &mut cur, &index, &mut out);
            total += out.len() as u128;
            if total > DIVISOR_LIMIT {
                return None;
            }
            divs.push(out);
        }
        let canon_from = cands
            .iter()
            .map(|c| {
                let mut u = r;
                while u > 0 && (u == r || c[u - 1] >= c[u]) {
                    u -= 1;
                }
                u
            })
            .collect();
        let support_end = cands
            .iter()
            .map(|c| c.iter().rposition(|&a| a > 0).map_or(0, |p| p + 1))
            .collect();
        Some(Table {
            r,
            e,
            deg,
            cands,
            divs,
            canon_from,
            support_end,
        })
    }

    fn monomial(&self, c: usize) -> Monomial {
        Monomial::new(self.cands[c].clone())
    }
}

fn divisors_rec(
    c: &[u32],
    i: usize,
    cur: &mut Vec<u32>,
    index: &FxHashMap<Vec<u32>, u32>,
    out: &mut Vec<u32>,
) {
    if i == c.len() {
        out.push(index[cur.as_slice()]);
        return;
    }
    for a in 0..=c[i] {
        cur[i] = a;
        divisors_rec(c, i + 1, cur, index, out);
    }
    cur[i] = 0;
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    best: AtomicUsize,
    max_nodes: u64,
    deadline: Instant,
}

impl Shared {
    fn new(budget: &SearchBudget) -> Shared {
        Shared {
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            best: AtomicUsize::new(usize::MAX),
            max_nodes: budget.max_nodes,
            deadline: budget.deadline(),
        }
    }
}

/// Downset bookkeeping for a partial generator set.
struct State<'a> {
    t: &'a Table,
    refc: Vec<u32>,
    counts: Vec<u64>,
    chosen: Vec<usize>,
    used: usize,
    canonical: bool,
    local: u64,
    sh: &'a Shared,
}

impl<'a> State<'a> {
    fn new(t: &'a Table, sh: &'a Shared, canonical: bool) -> Self {
        State {
            t,
            refc: vec![0; t.deg.len()],
            counts: vec![0; t.e as usize + 1],
            chosen: Vec::new(),
            used: 0,
            canonical,
            local: 0,
            sh,
        }
    }

    fn admissible(&self, c: usize) -> bool {
        !self.canonical || self.used >= self.t.canon_from[c]
    }

    fn push(&mut self, c: usize) {
        for &d in &self.t.divs[c] {
            let slot = &mut self.refc[d as usize];
            *slot += 1;
            if *slot == 1 {
                self.counts[self.t.deg[d as usize] as usize] += 1;
            }
        }
        self.chosen.push(c);
        self.used = if self.canonical {
            self.used.max(self.t.support_end[c])
        } else {
            self.counts[1] as usize
        };
    }

    fn pop(&mut self, c: usize, used: usize) {
        for &d in &self.t.divs[c] {
            let slot = &mut self.refc[d as usize];
            *slot -= 1;
            if *slot == 0 {
                self.counts[self.t.deg[d as usize] as usize] -= 1;
            }
        }
        self.chosen.pop();
        self.used = used;
    }

    /// Count one node; false once the budget is gone.
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local >= 4096 {
            let total = self.sh.nodes.fetch_add(self.local, Ordering::Relaxed) + self.local;
            self.local = 0;
            if total > self.sh.max_nodes || Instant::now() > self.sh.deadline {
                self.sh.stop.store(true, Ordering::Relaxed);
            }
        }
        !self.sh.stop.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        self.sh.nodes.fetch_add(self.local, Ordering::Relaxed);
        self.local = 0;
    }
}

enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

struct Target<'a> {
    h: &'a [u64],
    r: usize,
}

impl Target<'_> {
    fn within_caps(&self, s: &State) -> bool {
        s.counts.iter().zip(self.h).all(|(c, h)| c <= h)
    }

    fn reached(&self, s: &State) -> bool {
        s.counts.as_slice() == self.h && s.used == self.r
    }
}

/// Candidates in `pool` that can still be added without exceeding a cap,
/// or `None` when `m` of them can no longer reach the target.
fn viable_after(s: &State, tg: &Target, pool: &[u32], m: u64) -> Option<Vec<u32>> {
    let e = s.t.e as usize;
    if (s.used as u64) + m * (s.t.e as u64) < tg.r as u64 {
        return None;
    }
    let mut keep = Vec::with_capacity(pool.len());
    let mut best = vec![0u64; e + 1];
    let mut total = vec![0u64; e + 1];
    let mut fresh = vec![0u64; e + 1];
    for &d in pool {
        fresh.iter_mut().for_each(|x| *x = 0);
        for &v in &s.t.divs[d as usize] {
            if s.refc[v as usize] == 0 {
                fresh[s.t.deg[v as usize] as usize] += 1;
            }
        }
        if (0..=e).all(|i| s.counts[i] + fresh[i] <= tg.h[i]) {
            keep.push(d);
            for i in 0..=e {
                best[i] = best[i].max(fresh[i]);
                total[i] += fresh[i];
            }
        }
    }
    if (keep.len() as u64) < m {
        return None;
    }
    let reachable = (1..=e).all(|i| s.counts[i] + (m * best[i]).min(total[i]) >= tg.h[i]);
    reachable.then_some(keep)
}

fn target_rec(s: &mut State, tg: &Target, pool: &[u32], m: u64, branch: usize) -> Outcome {
    for (pos, &c) in pool.iter().enumerate() {
        if ((pool.len() - pos) as u64) < m {
            break;
        }
        let c = c as usize;
        if !s.admissible(c) {
            continue;
        }
        if !s.tick() || s.sh.best.load(Ordering::Relaxed) < branch {
            return Outcome::Aborted;
        }
        let used = s.used;
        s.push(c);
        if m == 1 {
            if tg.reached(s) {
                return Outcome::Found;
            }
        } else if let Some(next) = viable_after(s, tg, &pool[pos + 1..], m - 1) {
            match target_rec(s, tg, &next, m - 1, branch) {
                Outcome::Found => return Outcome::Found,
                Outcome::Aborted => return Outcome::Aborted,
                Outcome::Exhausted => {}
            }
        }
        s.pop(c, used);
    }
    Outcome::Exhausted
}

fn search(table: &Table, h: &IntSeq, budget: &SearchBudget, parallel: bool) -> PurityVerdict {
    let sh = Shared::new(budget);
    let tg = Target {
        h: h.entries(),
        r: table.r,
    };
    let t = h[h.socle_degree()];
    let firsts: Vec<usize> = (0..table.cands.len())
        .filter(|&c| table.canon_from[c] == 0)
        .collect();
    let run = |(k, &c): (usize, &usize)| -> (usize, Outcome, Vec<usize>) {
        if sh.best.load(Ordering::Relaxed) < k {
            return (k, Outcome::Aborted, Vec::new());
        }
        let mut s = State::new(table, &sh, true);
        s.push(c);
        let out = if !tg.within_caps(&s) {
            Outcome::Exhausted
        } else if t == 1 {
            if tg.reached(&s) {
                Outcome::Found
            } else {
                Outcome::Exhausted
            }
        } else {
            let pool: Vec<u32> = (c as u32 + 1..table.cands.len() as u32).collect();
            match viable_after(&s, &tg, &pool, t - 1) {
                Some(next) => target_rec(&mut s, &tg, &next, t - 1, k),
                None => Outcome::Exhausted,
            }
        };
        s.flush();
        if matches!(out, Outcome::Found) {
            sh.best.fetch_min(k, Ordering::Relaxed);
        }
        let chosen = s.chosen.clone();
        (k, out, chosen)
    };
    let results: Vec<(usize, Outcome, Vec<usize>)> = if parallel {
        firsts.par_iter().enumerate().map(run).collect()
    } else {
        firsts.iter().enumerate().map(run).collect()
    };
    let nodes = sh.nodes.load(Ordering::Relaxed);
    let found = results
        .iter()
        .filter(|r| matches!(r.1, Outcome::Found))
        .min_by_key(|r| r.0);
    if let Some((_, _, chosen)) = found {
        let w = chosen.iter().map(|&c| table.monomial(c)).collect();
        return PurityVerdict {
            status: PurityStatus::Pure,
            witness: Some(w),
            nodes_explored: nodes,
            budget_hit: false,
            route: Route::Search,
        };
    }
    let aborted = results.iter().any(|r| matches!(r.1, Outcome::Aborted));
    PurityVerdict {
        status: if aborted {
            PurityStatus::Unknown
        } else {
            PurityStatus::NotPure
        },
        witness: None,
        nodes_explored: nodes,
        budget_hit: aborted,
        route: Route::Search,
    }
}

/// How [`enumerate_pure_with`] walks the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumStrategy {
    /// Canonical generator sets, collecting their h-vectors.
    Sets,
    /// Candidate O-sequences, each passed to [`decide_pure`].
    Sequences,
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub sequences: Vec<IntSeq>,
    pub unresolved: Vec<IntSeq>,
    pub complete: bool,
    pub nodes: u64,
    pub strategy: EnumStrategy,
}

/// Pure O-sequences of codimension `r`, socle degree `e` and, if given,
/// type `t`.
pub fn enumerate_pure(
    r: usize,
    e: u32,
    t: Option<u64>,
    budget: &SearchBudget,
) -> Result<Enumeration> {
    enumerate_pure_with(r, e, t, budget, EnumStrategy::Auto, None)
}

pub fn enumerate_pure_with(
    r: usize,
    e: u32,
    t: Option<u64>,
    budget: &SearchBudget,
    strategy: EnumStrategy,
    checkpoint: Option<&Path>,
) -> Result<Enumeration> {
    if r == 0 || e == 0 {
        return Err(Error::ParameterOutOfRange(
            "enumeration needs r >= 1 and e >= 1".into(),
        ));
    }
    if let Some(t) = t {
        if t == 0 {
            return Err(Error::ParameterOutOfRange("type must be positive".into()));
        }
        if r as u64 > t * e as u64 {
            return Ok(Enumeration {
                sequences: Vec::new(),
                unresolved: Vec::new(),
                complete: true,
                nodes: 0,
                strategy,
            });
        }
    }
    let ncand = binom_sat(r as u64 + e as u64 - 1, e as u64);
    let strategy = match strategy {
        EnumStrategy::Auto if ncand <= 22 || matches!(t, Some(1) | Some(2)) => EnumStrategy::Sets,
        EnumStrategy::Auto => EnumStrategy::Sequences,
        s => s,
    };
    if t == Some(1) && checkpoint.is_none() && strategy == EnumStrategy::Sets {
        return Ok(Enumeration {
            strategy,
            ..enumerate_type_one(r, e)
        });
    }
    let mut ck = match checkpoint {
        Some(p) => Some(Checkpoint::open(p, r, e, t, strategy)?),
        None => None,
    };
    let out = match strategy {
        EnumStrategy::Sets => enumerate_sets(r, e, t, budget, true, ck.as_mut())?,
        _ => enumerate_sequences(r, e, t, budget, ck.as_mut())?,
    };
    Ok(Enumeration { strategy, ..out })
}

/// Type 1 without the monomial table: up to symmetry the generator is a
/// partition of `e` into exactly `r` parts, and its downset has h-vector
/// `Π (1 + z + ... + z^{a_i})`.
fn enumerate_type_one(r: usize, e: u32) -> Enumeration {
    fn parts(left: u32, slots: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = left.div_ceil(slots as u32).max(1);
        for a in (lo..=max.min(left + 1 - slots as u32)).rev() {
            cur.push(a);
            parts(left - a, slots - 1, a, cur, out);
            cur.pop();
        }
    }
    let mut gens = Vec::new();
    if r as u32 <= e {
        parts(e, r, e, &mut Vec::new(), &mut gens);
    }
    let nodes = gens.len() as u64;
    let sequences: BTreeSet<IntSeq> = gens
        .iter()
        .map(|a| {
            a.iter().fold(IntSeq::new(vec![1]), |h, &k| {
                convolve(&h, &IntSeq::new(vec![1; k as usize + 1]))
            })
        })
        .collect();
    Enumeration {
        sequences: sequences.into_iter().collect(),
        unresolved: Vec::new(),
        complete: true,
        nodes,
        strategy: EnumStrategy::Sets,
    }
}

/// Enumerate generator sets; `canonical = false` visits every set, for
/// checking the symmetry reduction.
pub fn enumerate_sets(
    r: usize,
    e: u32,
    t: Option<u64>,
    budget: &SearchBudget,
    canonical: bool,
    ck: Option<&mut Checkpoint>,
) -> Result<Enumeration> {
    let table = Table::build(r, e).ok_or_else(|| {
        Error::ParameterOutOfRange(format!("table for r={r}, e={e} is too large"))
    })?;
    let sh = Shared::new(budget);
    let firsts: Vec<usize> = (0..table.cands.len())
        .filter(|&c| !canonical || table.canon_from[c] == 0)
        .collect();
    let done: FxHashSet<Vec<u32>> = ck
        .as_ref()
        .map(|c| c.done_branches.clone())
        .unwrap_or_default();
    let ck = ck.map(Mutex::new);
    let prior: BTreeSet<IntSeq> = ck
        .as_ref()
        .map(|c| c.lock().unwrap().found.iter().cloned().collect())
        .unwrap_or_default();
    let results: Vec<(bool, FxHashSet<Vec<u64>>)> = firsts
        .par_iter()
        .filter(|&&c| !done.contains(&table.cands[c]))
        .map(|&c| {
            let mut s = State::new(&table, &sh, canonical);
            let mut sink = FxHashSet::default();
            s.push(c);
            let ok = sets_rec(&mut s, c, t, &mut sink);
            s.flush();
            if ok {
                if let Some(ck) = &ck {
                    let mut g = ck.lock().unwrap();
                    let seqs: Vec<IntSeq> = sink.iter().map(|v| IntSeq::new(v.clone())).collect();
                    g.record_branch(&table.cands[c], &seqs)
                        .expect("checkpoint write");
                }
            }
            (ok, sink)
        })
        .collect();
    let mut all: BTreeSet<IntSeq> = prior;
    let mut complete = true;
    for (ok, sink) in results {
        complete &= ok;
        all.extend(sink.into_iter().map(IntSeq::new));
    }
    Ok(Enumeration {
        sequences: all.into_iter().collect(),
        unresolved: Vec::new(),
        complete,
        nodes: sh.nodes.load(Ordering::Relaxed),
        strategy: EnumStrategy::Sets,
    })
}

fn sets_rec(s: &mut State, last: usize, t: Option<u64>, sink: &mut FxHashSet<Vec<u64>>) -> bool {
    let depth = s.chosen.len() as u64;
    let r = s.t.r;
    let full = s.used == r;
    match t {
        Some(t) if depth == t => {
            if full {
                sink.insert(s.counts.clone());
            }
            return true;
        }
        None if full => {
            sink.insert(s.counts.clone());
        }
        _ => {}
    }
    let n = s.t.cands.len();
    let left = t.map(|t| t - depth);
    for c in last + 1..n {
        if let Some(m) = left {
            if ((n - c) as u64) < m || (s.used as u64 + m * s.t.e as u64) < r as u64 {
                break;
            }
        }
        if !s.admissible(c) {
            continue;
        }
        if !s.tick() {
            return false;
        }
        let used = s.used;
        s.push(c);
        let ok = sets_rec(s, c, t, sink);
        s.pop(c, used);
        if !ok {
            return false;
        }
    }
    true
}

/// Largest number of degree-`i` divisors of a degree-`e` monomial in `r`
/// variables (attained by the most balanced exponent vector).
fn max_divisors(r: usize, e: u32, i: u32) -> u64 {
    let (q, rem) = (e / r as u32, e % r as u32);
    let mut poly = vec![1u64];
    for k in 0..r as u32 {
        let a = q + u32::from(k < rem);
        let mut next = vec![0u64; poly.len() + a as usize];
        for (j, &x) in poly.iter().enumerate() {
            for b in 0..=a as usize {
                next[j + b] += x;
            }
        }
        poly = next;
    }
    poly.get(i as usize).copied().unwrap_or(0)
}

/// All O-sequences `(1, r, h_2, ..., h_e)` with positive entries, optionally
/// with `h_e = t`, filtered by `keep` on complete sequences.
pub fn o_sequences(r: u64, e: u32, t: Option<u64>, caps: Option<&[u64]>) -> Vec<IntSeq> {
    let mut out = Vec::new();
    let mut cur = vec![1u64, r];
    fn rec(
        cur: &mut Vec<u64>,
        e: usize,
        t: Option<u64>,
        caps: Option<&[u64]>,
        out: &mut Vec<IntSeq>,
    ) {
        let d = cur.len();
        if d == e + 1 {
            out.push(IntSeq::new(cur.clone()));
            return;
        }
        let mut hi = macaulay_bound_u64(cur[d - 1], d as u32 - 1);
        if let Some(c) = caps {
            hi = hi.min(c[d]);
        }
        let range = if d == e {
            match t {
                Some(t) if t <= hi => t..=t,
                Some(_) => return,
                None => 1..=hi,
            }
        } else {
            1..=hi
        };
        for v in range {
            cur.push(v);
            rec(cur, e, t, caps, out);
            cur.pop();
        }
    }
    if e == 0 {
        return vec![IntSeq::new(vec![1])];
    }
    if e == 1 {
        if t.is_none_or(|t| t == r) {
            out.push(IntSeq::new(cur));
        }
        return out;
    }
    rec(&mut cur, e as usize, t, caps, &mut out);
    out
}

fn enumerate_sequences(
    r: usize,
    e: u32,
    t: Option<u64>,
    budget: &SearchBudget,
    ck: Option<&mut Checkpoint>,
) -> Result<Enumeration> {
    let tmax = t.unwrap_or_else(|| binom_u64(r as u64 + e as u64 - 1, e as u64));
    let caps: Vec<u64> = (0..=e)
        .map(|i| {
            tmax.saturating_mul(max_divisors(r, e, i))
                .min(binom_u64(r as u64 + i as u64 - 1, i as u64))
        })
        .collect();
    let cands = o_sequences(r as u64, e, t, Some(&caps));
    let prior: FxHashMap<IntSeq, PurityStatus> =
        ck.as_ref().map(|c| c.decided.clone()).unwrap_or_default();
    let ck = ck.map(Mutex::new);
    let deadline = budget.deadline();
    let verdicts: Vec<(IntSeq, PurityStatus, u64)> = cands
        .par_iter()
        .map(|h| {
            if let Some(&s) = prior.get(h) {
                return Ok((h.clone(), s, 0));
            }
            let left = deadline
                .saturating_duration_since(Instant::now())
                .as_secs_f64();
            if left <= 0.0 {
                return Ok((h.clone(), PurityStatus::Unknown, 0));
            }
            let b = SearchBudget {
                max_seconds: left,
                ..budget.clone()
            };
            let v = decide_inner(h, &b, false)?;
            if v.status != PurityStatus::Unknown {
                if let Some(ck) = &ck {
                    ck.lock().unwrap().record_decision(h, v.status)?;
                }
            }
            Ok((h.clone(), v.status, v.nodes_explored))
        })
        .collect::<Result<_>>()?;
    let mut sequences = Vec::new();
    let mut unresolved = Vec::new();
    let mut nodes = 0;
    for (h, s, n) in verdicts {
        nodes += n;
        match s {
            PurityStatus::Pure => sequences.push(h),
            PurityStatus::Unknown => unresolved.push(h),
            PurityStatus::NotPure => {}
        }
    }
    sequences.sort();
    unresolved.sort();
    Ok(Enumeration {
        complete: unresolved.is_empty(),
        sequences,
        unresolved,
        nodes,
        strategy: EnumStrategy::Sequences,
    })
}

const MAGIC: &[u8; 5] = b"PURO1";
const REC_HEADER: u8 = 1;
const REC_BRANCH: u8 = 2;
const REC_FOUND: u8 = 3;
const REC_DECIDED: u8 = 4;

/// Append-only resume file for enumerations: `PURO1`, then records of
/// `[kind: u8][len: u32 LE][len × u32 LE]`.
pub struct Checkpoint {
    out: BufWriter<File>,
    done_branches: FxHashSet<Vec<u32>>,
    found: Vec<IntSeq>,
    decided: FxHashMap<IntSeq, PurityStatus>,
}

fn write_record(w: &mut impl Write, kind: u8, payload: &[u32]) -> std::io::Result<()> {
    w.write_all(&[kind])?;
    w.write_all(&(payload.len() as u32).to_le_bytes())?;
    for x in payload {
        w.write_all(&x.to_le_bytes())?;
    }
    Ok(())
}

fn ck_err(e: std::io::Error) -> Error {
    Error::Checkpoint(e.to_string())
}

impl Checkpoint {
    pub fn open(
        path: &Path,
        r: usize,
        e: u32,
        t: Option<u64>,
        strategy: EnumStrategy,
    ) -> Result<Checkpoint> {
        let header = [
            r as u32,
            e,
            t.map_or(u32::MAX, |t| t as u32),
            if strategy == EnumStrategy::Sets { 0 } else { 1 },
        ];
        let mut ck = Checkpoint {
            out: BufWriter::new(
                OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .map_err(ck_err)?,
            ),
            done_branches: FxHashSet::default(),
            found: Vec::new(),
            decided: FxHashMap::default(),
        };
        let mut bytes = Vec::new();
        BufReader::new(File::open(path).map_err(ck_err)?)
            .read_to_end(&mut bytes)
            .map_err(ck_err)?;
        if bytes.is_empty() {
            ck.out.write_all(MAGIC).map_err(ck_err)?;
            write_record(&mut ck.out, REC_HEADER, &header).map_err(ck_err)?;
            ck.out.flush().map_err(ck_err)?;
            return Ok(ck);
        }
        let records = parse_records(&bytes)?;
        match records.first() {
            Some((REC_HEADER, h)) if h.as_slice() == header => {}
            _ => {
                return Err(Error::Checkpoint(
                    "header does not match this enumeration".into(),
                ))
            }
        }
        let mut pending: Vec<IntSeq> = Vec::new();
        for (kind, p) in &records[1..] {
            match *kind {
                REC_FOUND => pending.push(IntSeq::new(p.iter().map(|&x| x as u64).collect())),
                REC_BRANCH => {
                    ck.done_branches.insert(p.clone());
                    ck.found.append(&mut pending);
                }
                REC_DECIDED => {
                    let status = match p.first() {
                        Some(0) => PurityStatus::NotPure,
                        Some(1) => PurityStatus::Pure,
                        _ => return Err(Error::Checkpoint("bad status".into())),
                    };
                    ck.decided.insert(
                        IntSeq::new(p[1..].iter().map(|&x| x as u64).collect()),
                        status,
                    );
                }
                k => return Err(Error::Checkpoint(format!("unknown record kind {k}"))),
            }
        }
        Ok(ck)
    }

    /// Branches already finished, keyed by their first generator.
    pub fn completed_branches(&self) -> usize {
        self.done_branches.len()
    }

    pub fn decided_count(&self) -> usize {
        self.decided.len()
    }

    fn record_branch(&mut self, first: &[u32], found: &[IntSeq]) -> Result<()> {
        for h in found {
            let p: Vec<u32> = h.entries().iter().map(|&x| x as u32).collect();
            write_record(&mut self.out, REC_FOUND, &p).map_err(ck_err)?;
        }
        write_record(&mut self.out, REC_BRANCH, first).map_err(ck_err)?;
        self.out.flush().map_err(ck_err)
    }

    fn record_decision(&mut self, h: &IntSeq, s: PurityStatus) -> Result<()> {
        let mut p = vec![u32::from(s == PurityStatus::Pure)];
        p.extend(h.entries().iter().map(|&x| x as u32));
        write_record(&mut self.out, REC_DECIDED, &p).map_err(ck_err)?;
        self.out.flush().map_err(ck_err)
    }
}

fn parse_records(bytes: &[u8]) -> Result<Vec<(u8, Vec<u32>)>> {
    if bytes.len() < 5 || &bytes[..5] != MAGIC {
        return Err(Error::Checkpoint("missing PURO1 magic".into()));
    }
    let mut out = Vec::new();
    let mut i = 5;
    while i < bytes.len() {
        if i + 5 > bytes.len() {
            return Err(Error::Checkpoint("truncated record header".into()));
        }
        let kind = bytes[i];
        let len = u32::from_le_bytes(bytes[i + 1..i + 5].try_into().unwrap()) as usize;
        i += 5;
        if i + 4 * len > bytes.len() {
            return Err(Error::Checkpoint("truncated record".into()));
        }
        let p = (0..len)
            .map(|k| u32::from_le_bytes(bytes[i + 4 * k..i + 4 * k + 4].try_into().unwrap()))
            .collect();
        i += 4 * len;
        out.push((kind, p));
    }
    Ok(out)
}

/// Purity along one coordinate line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcpLine {
    pub base: IntSeq,
    pub free: usize,
    pub pure_values: Vec<u64>,
    pub unresolved: Vec<u64>,
    /// Non-pure values strictly between two pure ones.
    pub gaps: Vec<u64>,
}

fn gaps_of(pure: &[u64], unresolved: &[u64], range: RangeInclusive<u64>) -> Vec<u64> {
    let (Some(&lo), Some(&hi)) = (pure.iter().min(), pure.iter().max()) else {
        return Vec::new();
    };
    range
        .filter(|v| *v > lo && *v < hi && !pure.contains(v) && !unresolved.contains(v))
        .collect()
}

/// Vary coordinate `free` of `base` over `range`.
pub fn icp_scan(
    base: &IntSeq,
    free: usize,
    range: RangeInclusive<u64>,
    budget: &SearchBudget,
) -> Result<IcpLine> {
    if free == 0 || free >= base.len() {
        return Err(Error::ParameterOutOfRange(format!(
            "free coordinate {free} must be in 1..{}",
            base.len()
        )));
    }
    let points: Vec<u64> = range.clone().collect();
    let verdicts: Vec<(u64, PurityStatus)> = points
        .par_iter()
        .map(|&v| {
            let mut h = base.entries().to_vec();
            h[free] = v;
            let st = if v == 0 {
                PurityStatus::NotPure
            } else {
                decide_inner(&IntSeq::new(h), budget, false)?.status
            };
            Ok((v, st))
        })
        .collect::<Result<_>>()?;
    let pick = |s| {
        verdicts
            .iter()
            .filter(|x| x.1 == s)
            .map(|x| x.0)
            .collect::<Vec<_>>()
    };
    let (pure_values, unresolved) = (pick(PurityStatus::Pure), pick(PurityStatus::Unknown));
    let gaps = gaps_of(&pure_values, &unresolved, range);
    Ok(IcpLine {
        base: base.clone(),
        free,
        pure_values,
        unresolved,
        gaps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcpViolation {
    pub free: usize,
    pub value: u64,
    pub line: IntSeq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcpBox {
    pub socle_degree: u32,
    pub bound: u64,
    pub pure: Vec<IntSeq>,
    pub unresolved: Vec<IntSeq>,
    pub violations: Vec<IcpViolation>,
}

/// Decide every `(1, h_1, ..., h_e)` with `1 <= h_i <= bound` and check
/// every coordinate line for gaps.
pub fn icp_box_scan(e: u32, bound: u64, budget: &SearchBudget) -> Result<IcpBox> {
    if e == 0 || bound == 0 {
        return Err(Error::ParameterOutOfRange(
            "box needs e >= 1 and bound >= 1".into(),
        ));
    }
    let mut points: Vec<Vec<u64>> = vec![vec![1]];
    for _ in 0..e {
        points = points
            .into_iter()
            .flat_map(|p| {
                (1..=bound).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let verdicts: Vec<(Vec<u64>, PurityStatus)> = points
        .into_par_iter()
        .map(|p| {
            let st = decide_inner(&IntSeq::new(p.clone()), budget, false)?.status;
            Ok((p, st))
        })
        .collect::<Result<_>>()?;
    let status: FxHashMap<Vec<u64>, PurityStatus> = verdicts.iter().cloned().collect();
    let mut violations = Vec::new();
    for free in 1..=e as usize {
        let mut seen: FxHashSet<Vec<u64>> = FxHashSet::default();
        for (p, _) in &verdicts {
            let mut key = p.clone();
            key[free] = 0;
            if !seen.insert(key.clone()) {
                continue;
            }
            let line = |s: PurityStatus| -> Vec<u64> {
                (1..=bound)
                    .filter(|&v| {
                        let mut q = key.clone();
                        q[free] = v;
                        status[&q] == s
                    })
                    .collect()
            };
            let (pure, unk) = (line(PurityStatus::Pure), line(PurityStatus::Unknown));
            for value in gaps_of(&pure, &unk, 1..=bound) {
                violations.push(IcpViolation {
                    free,
                    value,
                    line: IntSeq::new(key.clone()),
                });
            }
        }
    }
    let mut pure: Vec<IntSeq> = verdicts
        .iter()
        .filter(|x| x.1 == PurityStatus::Pure)
        .map(|x| IntSeq::new(x.0.clone()))
        .collect();
    let mut unresolved: Vec<IntSeq> = verdicts
        .iter()
        .filter(|x| x.1 == PurityStatus::Unknown)
        .map(|x| IntSeq::new(x.0.clone()))
        .collect();
    pure.sort();
    unresolved.sort();
    Ok(IcpBox {
        socle_degree: e,
        bound,
        pure,
        unresolved,
        violations,
    })
}

/// The sizes in `#O(r-1,e) <= #D(r,e) <= #P(r,e) <= #O(r,e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCounts {
    pub r: usize,
    pub e: u32,
    pub o_prev: u64,
    pub d: u64,
    pub p: u64,
    pub o: u64,
    pub complete: bool,
    /// Integration maps `O(r-1,e)` injectively into `D(r,e)`, and `D ⊆ P ⊆ O`.
    pub inclusions_hold: bool,
    pub c_e: String,
}

impl ChainCounts {
    pub fn chain_holds(&self) -> bool {
        self.o_prev <= self.d && self.d <= self.p && self.p <= self.o && self.inclusions_hold
    }
}

/// O-sequences of codimension exactly `r` and socle degree exactly `e`.
pub fn o_sequences_exact(r: u64, e: u32) -> Vec<IntSeq> {
    if r == 0 {
        return if e == 0 {
            vec![IntSeq::new(vec![1])]
        } else {
            Vec::new()
        };
    }
    o_sequences(r, e, None, None)
}

pub fn count_chain(r: usize, e: u32, budget: &SearchBudget) -> Result<ChainCounts> {
    let o_set = o_sequences_exact(r as u64, e);
    let o_prev_set = o_sequences_exact(r as u64 - 1, e);
    let d_set: BTreeSet<IntSeq> = o_set
        .iter()
        .filter(|h| differentiate(h).map(|g| is_o_sequence(&g)).unwrap_or(false))
        .cloned()
        .collect();
    let pure = enumerate_pure_with(r, e, None, budget, EnumStrategy::Sequences, None)?;
    let p_set: BTreeSet<IntSeq> = pure.sequences.iter().cloned().collect();
    let o_lookup: BTreeSet<IntSeq> = o_set.iter().cloned().collect();
    let images: BTreeSet<IntSeq> = o_prev_set.iter().map(integrate).collect();
    let inclusions_hold = images.len() == o_prev_set.len()
        && images.is_subset(&d_set)
        && (!pure.complete || d_set.is_subset(&p_set))
        && p_set.is_subset(&o_lookup);
    Ok(ChainCounts {
        r,
        e,
        o_prev: o_prev_set.len() as u64,
        d: d_set.len() as u64,
        p: p_set.len() as u64,
        o: o_set.len() as u64,
        complete: pure.complete,
        inclusions_hold,
        c_e: c_e(e).to_string(),
    })
}

/// `c_e = Π_{i=0}^{e-2} C(C(e+1,2) - C(i+1,2) - 1, i) / (C(e+1,2) - 1)!`.
pub fn c_e(e: u32) -> BigRational {
    let n = binom_u64(e as u64 + 1, 2) as i64;
    let mut num = BigInt::from(1);
    for i in 0..e.saturating_sub(1) as i64 {
        num *= BigInt::from(crate::macaulay::binom(n - (i + 1) * i / 2 - 1, i));
    }
    let mut den = BigInt::from(1);
    for k in 2..n {
        den *= k;
    }
    BigRational::new(num, den)
}

/// The three regions of the `(r, a)` plane for `(1, r, a, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// `t <= r <= a <= 3t`
    I,
    /// `r < t <= a <= 3t`
    II,
    /// `a < t`
    III,
}

pub fn region_of(r: u64, a: u64, t: u64) -> Region {
    if a < t {
        Region::III
    } else if r < t {
        Region::II
    } else {
        Region::I
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Socle3Census {
    pub t: u64,
    pub searched: Vec<Region>,
    pub pure: Vec<(u64, u64, Region)>,
    pub unresolved: Vec<(u64, u64)>,
    pub region_counts: [u64; 3],
    /// `2t² + 3t + 1` when `t >= 7`.
    pub region_one_closed_form: Option<u64>,
}

/// Pure `(1, r, a, t)` in the requested regions.
pub fn socle3_region_census(
    t: u64,
    regions: &[Region],
    budget: &SearchBudget,
) -> Result<Socle3Census> {
    if t == 0 {
        return Err(Error::ParameterOutOfRange("type must be positive".into()));
    }
    let points: Vec<(u64, u64)> = (1..=3 * t)
        .flat_map(|r| (1..=3 * t).map(move |a| (r, a)))
        .filter(|&(r, a)| regions.contains(&region_of(r, a, t)))
        .collect();
    let verdicts: Vec<((u64, u64), PurityStatus)> = points
        .into_par_iter()
        .map(|(r, a)| {
            Ok((
                (r, a),
                decide_inner(&IntSeq::new(vec![1, r, a, t]), budget, false)?.status,
            ))
        })
        .collect::<Result<_>>()?;
    let mut pure = Vec::new();
    let mut unresolved = Vec::new();
    let mut region_counts = [0u64; 3];
    for ((r, a), s) in verdicts {
        match s {
            PurityStatus::Pure => {
                let g = region_of(r, a, t);
                region_counts[g as usize] += 1;
                pure.push((r, a, g));
            }
            PurityStatus::Unknown => unresolved.push((r, a)),
            PurityStatus::NotPure => {}
        }
    }
    pure.sort_by_key(|x| (x.0, x.1));
    Ok(Socle3Census {
        t,
        searched: regions.to_vec(),
        pure,
        unresolved,
        region_counts,
        region_one_closed_form: (t >= 7).then_some(2 * t * t + 3 * t + 1),
    })
}

/// `y_i y_{i+1} y_{i+3}` (indices mod `t`), giving `(1, t, 3t, t)`.
pub fn circulant_witness(t: usize) -> Result<Vec<Monomial>> {
    if t < 7 {
        return Err(Error::ParameterOutOfRange(format!(
            "the circulant needs t >= 7, got {t}"
        )));
    }
    Ok((0..t)
        .map(|i| {
            let mut exps = vec![0u32; t];
            for k in [0, 1, 3] {
                exps[(i + k) % t] += 1;
            }
            Monomial::new(exps)
        })
        .collect())
}

/// `t` degree-3 monomials in disjoint variables giving `(1, r, r, t)`.
pub fn weak_composition_witness(r: usize, t: usize) -> Result<Vec<Monomial>> {
    if t == 0 || r < t || r > 3 * t {
        return Err(Error::ParameterOutOfRange(format!(
            "need t <= r <= 3t, got r={r}, t={t}"
        )));
    }
    let (i, j, k) = if r < 2 * t {
        (0, r - t, t - (r - t))
    } else {
        (r - 2 * t, t - (r - 2 * t), 0)
    };
    let mut blocks: Vec<Vec<Monomial>> = Vec::new();
    blocks.extend(std::iter::repeat_n(vec![Monomial::new(vec![1, 1, 1])], i));
    blocks.extend(std::iter::repeat_n(vec![Monomial::new(vec![1, 2])], j));
    blocks.extend(std::iter::repeat_n(vec![Monomial::new(vec![3])], k));
    Ok(disjoint_union(&blocks))
}

/// `t` squarefree degree-`e` monomials in disjoint variables: the unique
/// pure sequence with `r = te`.
pub fn max_codim_witness(t: usize, e: u32) -> Vec<Monomial> {
    disjoint_union(&vec![vec![Monomial::new(vec![1; e as usize])]; t])
}

/// One copy of the degree-4 truncation of 5 variables and eleven copies of
/// `y_1 y_2 y_3 y_4`, giving `(1, 49, 81, 79, 81)`.
pub fn soc4_nonunimodal() -> Vec<Monomial> {
    let mut blocks = vec![monomials_of_degree(5, 4)];
    blocks.extend(std::iter::repeat_n(vec![Monomial::new(vec![1; 4])], 11));
    disjoint_union(&blocks)
}

/// Non-decreasing, non-differentiable pure sequences for `e >= 4`.
pub fn construct_nondifferentiable(e: u32) -> Result<Vec<Monomial>> {
    let blocks = match e {
        0..=3 => {
            return Err(Error::ParameterOutOfRange(format!(
                "socle degree {e}: non-decreasing pure sequences are differentiable here"
            )))
        }
        4 => vec![monomials_of_degree(4, 4), vec![Monomial::new(vec![1; 4])]],
        5 => vec![
            monomials_of_degree(3, 5),
            vec![Monomial::new(vec![1, 2, 2])],
        ],
        a => vec![
            monomials_of_degree(3, a)
                .into_iter()
                .filter(|m| m.exps()[0] <= 2)
                .collect(),
            vec![Monomial::new(vec![2, 2, a - 4])],
        ],
    };
    Ok(disjoint_union(&blocks))
}

/// The fourteen generators of socle degree `4n` in three variables.
pub fn construct_type14(n: u32) -> Result<Vec<Monomial>> {
    let m = n / 2;
    let x = |a: u32, b: u32, c: u32| Monomial::new(vec![a, b, c]);
    if n.is_multiple_of(2) {
        if m < 11 {
            return Err(Error::ParameterOutOfRange(format!(
                "n = 2m needs m >= 11, got n = {n}"
            )));
        }
        let mut g = vec![x(2 * m, 2 * m, 4 * m)];
        g.extend((0..7).map(|i| x((i + 1) * (m - 1) - 1, (6 - i) * m + i + 3, m - 1)));
        g.extend((0..6).map(|i| x((i + 1) * (m - 1) - 1, (5 - i) * m + i + 3, 2 * m - 1)));
        Ok(g)
    } else {
        if m < 14 {
            return Err(Error::ParameterOutOfRange(format!(
                "n = 2m+1 needs m >= 14, got n = {n}"
            )));
        }
        let mut g = vec![x(2 * m + 1, 2 * m + 1, 4 * m + 2)];
        g.extend((0..7).map(|i| x((i + 1) * (m - 1) - 1, (6 - i) * m + i + 6, m)));
        g.extend((0..6).map(|i| x((i + 1) * m - 1, (5 - i) * m + 5, 2 * m)));
        Ok(g)
    }
}

/// Values of the type-14 Hilbert function in degrees `3n..=3n+3`. The
/// summands `C(n+2,2) + (5n²+3n)/2` add up to `3n² + 3n + 1`.
pub fn type14_middle(n: u64) -> [u64; 4] {
    let a = 3 * n * n + 3 * n;
    [a + 1, a, a, a + 1]
}
