//! Face vectors of pure simplicial complexes, the squarefree corner of pure
//! O-sequences.
//!
//! A facet `{1,2,4}` is encoded as the squarefree monomial `x1*x2*x4`, so the
//! f-vector of a complex is the h-vector of the order ideal its facets
//! generate, shifted by one (`f_{i-1} = h_i`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macaulay::{binom_u64, is_o_sequence, IntSeq};
use crate::monomial::{Monomial, OrderIdeal};
use crate::sequence::shape;

/// `(f_{-1} = 1, f_0, ..., f_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(entries: Vec<u64>) -> Result<FVector> {
        if entries.first() != Some(&1) {
            return Err(Error::MalformedSequence(
                "f-vector must start with f_{-1} = 1".into(),
            ));
        }
        if let Some(i) = entries.iter().position(|&x| x == 0) {
            return Err(Error::MalformedSequence(format!(
                "f_{} is zero",
                i as i64 - 1
            )));
        }
        Ok(FVector(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// Number of vertices in the largest face, `d`.
    pub fn dim_plus_one(&self) -> usize {
        self.0.len() - 1
    }

    /// `f_i` for `i >= -1`.
    pub fn f(&self, i: i64) -> u64 {
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// The same numbers read as an h-vector of an order ideal.
    pub fn as_int_seq(&self) -> IntSeq {
        IntSeq::new(self.0.clone())
    }

    pub fn from_int_seq(h: &IntSeq) -> Result<FVector> {
        FVector::new(h.trim().into_vec())
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.as_int_seq().fmt(f)
    }
}

fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::ParameterOutOfRange("transform overflows i64".into()))
}

/// h-vector from `Σ h_i t^i = Σ f_{i-1} t^i (1-t)^{d-i}`. Entries may be
/// negative; that is how a non-CM f-vector shows up.
pub fn f_to_h(f: &FVector) -> Result<Vec<i64>> {
    let d = f.dim_plus_one();
    let mut h = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc: i128 = 0;
        for i in 0..=k {
            let c = binom_u64((d - i) as u64, (k - i) as u64) as i128;
            let term = c
                .checked_mul(f.0[i] as i128)
                .ok_or_else(|| Error::ParameterOutOfRange("transform overflows".into()))?;
            if (k - i) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        h.push(to_i64(acc)?);
    }
    Ok(h)
}

/// Inverse of [`f_to_h`]: `f_{k-1} = Σ_{i<=k} C(d-i, k-i) h_i`.
pub fn h_to_f(h: &[i64], d: usize) -> Result<FVector> {
    if h.len() > d + 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "h has {} entries, at most {} allowed",
            h.len(),
            d + 1
        )));
    }
    let mut f = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc: i128 = 0;
        for (i, &hi) in h.iter().enumerate().take(k + 1) {
            acc += binom_u64((d - i) as u64, (k - i) as u64) as i128 * hi as i128;
        }
        if acc <= 0 {
            return Err(Error::MalformedSequence(format!(
                "f_{} = {acc} is not positive",
                k as i64 - 1
            )));
        }
        f.push(
            u64::try_from(acc)
                .map_err(|_| Error::ParameterOutOfRange("f entry overflows".into()))?,
        );
    }
    FVector::new(f)
}

/// The h-vector as an O-sequence candidate, `None` if some entry is negative.
pub fn h_as_seq(h: &[i64]) -> Option<IntSeq> {
    h.iter()
        .map(|&x| u64::try_from(x).ok())
        .collect::<Option<Vec<u64>>>()
        .map(IntSeq::new)
}

/// f is the f-vector of some Cohen-Macaulay complex iff its h-vector is an
/// O-sequence.
pub fn is_cm(f: &FVector) -> bool {
    match f_to_h(f) {
        Ok(h) => h_as_seq(&h).is_some_and(|s| is_o_sequence(&s)),
        Err(_) => false,
    }
}

/// Outcome of walking every intermediate vector between two CM f-vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmInterval {
    /// Index `j` with `f_j` varying, or `None` when the inputs agree.
    pub slot: Option<i64>,
    pub alpha: u64,
    /// `(beta, h-vector)` for each intermediate, `beta = 0..=alpha`.
    pub steps: Vec<(u64, Vec<i64>)>,
    /// First `beta` whose vector is not CM.
    pub first_gap: Option<u64>,
}

impl CmInterval {
    pub fn verified(&self) -> bool {
        self.first_gap.is_none()
    }
}

/// Check that every vector between `f` and `g` (equal except in one slot) is
/// CM. Inputs may come in either order.
pub fn cm_interval_check(f: &FVector, g: &FVector) -> Result<CmInterval> {
    if f.0.len() != g.0.len() {
        return Err(Error::ParameterOutOfRange(
            "f-vectors have different lengths".into(),
        ));
    }
    for (name, v) in [("first", f), ("second", g)] {
        if !is_cm(v) {
            return Err(Error::NotCM(format!("{name} input {v}")));
        }
    }
    let diff: Vec<usize> = (0..f.0.len()).filter(|&i| f.0[i] != g.0[i]).collect();
    let (lo, hi) = if f.0 <= g.0 { (f, g) } else { (g, f) };
    match diff.as_slice() {
        [] => Ok(CmInterval {
            slot: None,
            alpha: 0,
            steps: vec![(0, f_to_h(f)?)],
            first_gap: None,
        }),
        &[j] => {
            let (lo, hi) = if lo.0[j] <= hi.0[j] {
                (lo, hi)
            } else {
                (hi, lo)
            };
            let alpha = hi.0[j] - lo.0[j];
            let mut steps = Vec::with_capacity(alpha as usize + 1);
            let mut first_gap = None;
            for beta in 0..=alpha {
                let mut v = lo.0.clone();
                v[j] += beta;
                let v = FVector(v);
                if first_gap.is_none() && !is_cm(&v) {
                    first_gap = Some(beta);
                }
                steps.push((beta, f_to_h(&v)?));
            }
            Ok(CmInterval {
                slot: Some(j as i64 - 1),
                alpha,
                steps,
                first_gap,
            })
        }
        _ => Err(Error::ParameterOutOfRange(format!(
            "vectors differ in {} slots, expected one",
            diff.len()
        ))),
    }
}

/// f-vector of two `(e-1)`-simplices glued along `h` common vertices:
/// `f_i = 2 C(e, i+1) - C(h, i+1)`.
pub fn pure_f_type2(e: u64, h: u64) -> Result<FVector> {
    if e == 0 || h >= e {
        return Err(Error::ParameterOutOfRange(format!(
            "need 0 <= h <= e - 1, got e = {e}, h = {h}"
        )));
    }
    let f = (0..=e)
        .map(|k| 2 * binom_u64(e, k) - binom_u64(h, k))
        .collect();
    FVector::new(f)
}

/// The two facets behind [`pure_f_type2`], as squarefree monomials in
/// `2e - h` variables.
pub fn type2_facets(e: usize, h: usize) -> Result<Vec<Monomial>> {
    if e == 0 || h >= e {
        return Err(Error::ParameterOutOfRange(format!(
            "need 0 <= h <= e - 1, got e = {e}, h = {h}"
        )));
    }
    let n = 2 * e - h;
    let facet = |start: usize| {
        let mut x = vec![0u32; n];
        x[start..start + e].iter_mut().for_each(|a| *a = 1);
        Monomial::new(x)
    };
    Ok(vec![facet(0), facet(e - h)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Greater,
    GreaterEq,
}

/// The interleaved chain for type-2 pure f-vectors of facet size `e`, as
/// face indices `i` (meaning `f_i`) with the relation to the next link.
///
/// Even e: `f_{e/2-1} > f_{e/2} >= f_{e/2-2} > ... >= f_0 > f_{e-1}`.
/// Odd e: `f_{m} >= f_{m-1} > f_{m+1} >= ... >= f_0 > f_{e-1}`, `m = (e-1)/2`.
pub fn inequality_string(e: usize) -> Vec<(usize, Option<Relation>)> {
    let m = e / 2;
    let mut idx = Vec::new();
    let mut rel = Vec::new();
    if e % 2 == 1 {
        idx.push(m);
        if m > 0 {
            rel.push(Relation::GreaterEq);
        }
    }
    let high_start = e.div_ceil(2);
    for a in 0..m {
        idx.push(m - 1 - a);
        rel.push(Relation::Greater);
        idx.push(high_start + a);
        if a + 1 < m {
            rel.push(Relation::GreaterEq);
        }
    }
    idx.into_iter()
        .enumerate()
        .map(|(k, i)| (i, rel.get(k).copied()))
        .collect()
}

/// Whether `(1, f_0, ..., f_{e-1})` (any pure O-sequence read the same way)
/// satisfies the chain of [`inequality_string`].
pub fn string_holds(h: &IntSeq) -> bool {
    let h = h.trim();
    let e = h.socle_degree();
    let chain = inequality_string(e);
    chain.windows(2).all(|w| {
        let (a, b) = (h.get(w[0].0 + 1), h.get(w[1].0 + 1));
        match w[0].1 {
            Some(Relation::Greater) => a > b,
            Some(Relation::GreaterEq) => a >= b,
            None => true,
        }
    })
}

/// The strict pairwise inequalities `f_{⌊e/2⌋-a-1} > f_{⌈e/2⌉+a}`.
pub fn pairwise_holds(h: &IntSeq) -> bool {
    let h = h.trim();
    let e = h.socle_degree();
    (0..e / 2).all(|a| h.get(e / 2 - a) > h.get(e.div_ceil(2) + a + 1))
}

/// Pairwise inequalities, the full chain and unimodality.
pub fn type2_inequality_check(f: &FVector) -> bool {
    let s = f.as_int_seq();
    pairwise_holds(&s) && string_holds(&s) && shape(&s).is_unimodal
}

/// `(1, q, q C(d+1, 2), ..., q C(d+1, d+1))` with `q = d^2 + d + 1`. Pure
/// exactly when a projective plane of order `d` exists; none exists for
/// `d = 6`, for instance.
pub fn projective_plane_sequence(d: u64) -> Result<IntSeq> {
    if d < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "order must be at least 2, got {d}"
        )));
    }
    let q = d * d + d + 1;
    let mut h = vec![1, q];
    for i in 2..=d + 1 {
        h.push(q * binom_u64(d + 1, i));
    }
    Ok(IntSeq::new(h))
}

/// Lines of the plane over the integers mod a prime `p`, as squarefree
/// monomials of degree `p + 1` in `p^2 + p + 1` variables.
pub fn prime_plane_lines(p: u64) -> Result<Vec<Monomial>> {
    if p < 2
        || !(2..p)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
    {
        return Err(Error::ParameterOutOfRange(format!("{p} is not prime")));
    }
    // normalized representatives: first nonzero coordinate is 1
    let mut points = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    points.push(v);
                }
            }
        }
    }
    let n = points.len();
    let lines = points
        .iter()
        .map(|l| {
            let exps = points
                .iter()
                .map(|x| u32::from((l[0] * x[0] + l[1] * x[1] + l[2] * x[2]) % p == 0))
                .collect();
            Monomial::new(exps)
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(lines.len(), n);
    Ok(lines)
}

/// The Fano plane: seven triples on seven points.
pub fn fano_lines() -> Vec<Monomial> {
    prime_plane_lines(2).expect("2 is prime")
}

/// `(1, r, C(r, 2), C(r, 2) / 3)`, the largest possible last entry for
/// `(1, r, C(r, 2), *)`. Errors when `C(r, 2)` is not divisible by 3.
pub fn steiner_extremal(r: u64) -> Result<IntSeq> {
    let pairs = binom_u64(r, 2);
    if r < 3 || !pairs.is_multiple_of(3) {
        return Err(Error::ParameterOutOfRange(format!(
            "C({r}, 2) = {pairs} is not a positive multiple of 3"
        )));
    }
    Ok(IntSeq::new(vec![1, r, pairs, pairs / 3]))
}

/// Steiner triple systems on `r` points exist iff `r ≡ 1, 3 (mod 6)`.
pub fn steiner_admissible(r: u64) -> bool {
    matches!(r % 6, 1 | 3)
}

/// Parse facets written one per line as `{1,2,4}` (1-based vertices).
/// Blank lines and `#` comments are skipped.
pub fn parse_facets(text: &str) -> Result<Vec<Monomial>> {
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let body = line
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected `{{...}}`, got `{line}`")))?;
        let mut set = Vec::new();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex `{tok}`")))?;
            if v == 0 {
                return Err(Error::Parse("vertices are numbered from 1".into()));
            }
            if set.contains(&v) {
                return Err(Error::Parse(format!("vertex {v} repeated in `{line}`")));
            }
            set.push(v);
        }
        sets.push(set);
    }
    if sets.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let n = sets.iter().flatten().copied().max().unwrap_or(0);
    Ok(sets
        .into_iter()
        .map(|s| {
            let mut x = vec![0u32; n];
            s.into_iter().for_each(|v| x[v - 1] = 1);
            Monomial::new(x)
        })
        .collect())
}

/// f-vector of the complex generated by squarefree facets.
pub fn f_vector_of(facets: &[Monomial]) -> Result<FVector> {
    if let Some(m) = facets.iter().find(|m| m.exps().iter().any(|&a| a > 1)) {
        return Err(Error::Parse(format!("{m} is not squarefree")));
    }
    FVector::from_int_seq(&OrderIdeal::closure(facets)?.h_vector())
}
