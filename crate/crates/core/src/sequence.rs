//! Shape predicates and numerical necessary conditions on h-vectors.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macaulay::{self, binom_u64, expand, is_o_sequence, shift, IntSeq};

/// Flat summary of the shape of a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub is_unimodal: bool,
    pub maxima_count: usize,
    pub valleys_count: usize,
    pub is_flawless: bool,
    pub is_nondecreasing: bool,
    pub is_differentiable: bool,
    pub first_half_differentiable: bool,
    pub is_symmetric: bool,
    pub is_si: bool,
    pub strict_unimodal_wlp_shape: bool,
}

// values of the maximal constant runs
fn plateaus(e: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &x in e {
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    out
}

/// Entries up to the socle degree.
fn body(h: &IntSeq) -> &[u64] {
    &h.entries()[..=h.socle_degree().min(h.len().saturating_sub(1))]
}

/// Plateau-collapsed local maxima.
pub fn maxima_count(h: &IntSeq) -> usize {
    let p = plateaus(body(h));
    (0..p.len())
        .filter(|&j| (j == 0 || p[j - 1] < p[j]) && (j + 1 == p.len() || p[j + 1] < p[j]))
        .count()
}

/// Plateau-collapsed interior local minima.
pub fn valleys_count(h: &IntSeq) -> usize {
    let p = plateaus(body(h));
    (1..p.len().saturating_sub(1))
        .filter(|&j| p[j - 1] > p[j] && p[j + 1] > p[j])
        .count()
}

pub fn is_flawless(h: &IntSeq) -> bool {
    let e = body(h);
    let s = e.len() - 1;
    (0..=s / 2).all(|i| e[i] <= e[s - i])
}

pub fn is_nondecreasing(h: &IntSeq) -> bool {
    body(h).windows(2).all(|w| w[0] <= w[1])
}

pub fn is_symmetric(h: &IntSeq) -> bool {
    let e = body(h);
    e.iter().eq(e.iter().rev())
}

/// Non-decreasing and its first difference is an O-sequence.
pub fn is_differentiable_seq(h: &IntSeq) -> bool {
    macaulay::differentiate(&IntSeq::new(body(h).to_vec()))
        .map(|d| is_o_sequence(&d))
        .unwrap_or(false)
}

/// Differentiability of `(h_0, ..., h_j)`.
pub fn prefix_differentiable(h: &IntSeq, j: usize) -> bool {
    let e = body(h);
    is_differentiable_seq(&IntSeq::new(e[..=j.min(e.len() - 1)].to_vec()))
}

/// The half up to `⌊e/2⌋` is a differentiable O-sequence.
pub fn first_half_differentiable(h: &IntSeq) -> bool {
    prefix_differentiable(h, h.socle_degree() / 2)
}

pub fn is_si(h: &IntSeq) -> bool {
    is_symmetric(h) && first_half_differentiable(h)
}

/// Differentiable strict increase, then a plateau, then strict decrease.
pub fn strict_unimodal_wlp_shape(h: &IntSeq) -> bool {
    let e = body(h);
    let mut p = 0;
    while p + 1 < e.len() && e[p + 1] > e[p] {
        p += 1;
    }
    if !prefix_differentiable(h, p) {
        return false;
    }
    let mut q = p;
    while q + 1 < e.len() && e[q + 1] == e[q] {
        q += 1;
    }
    e[q..].windows(2).all(|w| w[1] < w[0])
}

pub fn shape(h: &IntSeq) -> ShapeReport {
    let maxima = maxima_count(h);
    ShapeReport {
        is_unimodal: maxima == 1,
        maxima_count: maxima,
        valleys_count: valleys_count(h),
        is_flawless: is_flawless(h),
        is_nondecreasing: is_nondecreasing(h),
        is_differentiable: is_differentiable_seq(h),
        first_half_differentiable: first_half_differentiable(h),
        is_symmetric: is_symmetric(h),
        is_si: is_si(h),
        strict_unimodal_wlp_shape: strict_unimodal_wlp_shape(h),
    }
}

/// First pair `(i, j)` with `i <= j <= e - i` and `h_i > h_j`.
pub fn hibi_violation(h: &IntSeq) -> Option<(usize, usize)> {
    let e = body(h);
    let s = e.len() - 1;
    for i in 0..=s {
        for j in i..=s.saturating_sub(i) {
            if e[i] > e[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// `(1, h_1 - 1, ..., h_k - h_{k-1})` is an O-sequence, `k = ⌊(e-1)/2⌋ + 1`.
pub fn hausel_holds(h: &IntSeq) -> bool {
    let e = h.socle_degree();
    if e == 0 {
        return true;
    }
    prefix_differentiable(h, (e - 1) / 2 + 1)
}

/// Bound on `h_i - h_{i-1}` for a pure sequence, `i >= 2`.
pub fn growth_bound(h2_minus_h1: u64, i: u32) -> BigUint {
    assert!(i >= 2);
    shift(
        &expand(h2_minus_h1, 2).expect("d = 2"),
        i as i64 - 2,
        i as i64 - 2,
    )
}

/// First `i` in `2..=e` where `h_i - h_{i-1}` exceeds [`growth_bound`].
pub fn growth_bound_check(h: &IntSeq) -> Option<usize> {
    let e = body(h);
    if e.len() < 3 {
        return None;
    }
    let base = e[2].saturating_sub(e[1]);
    for i in 2..e.len() {
        if e[i] > e[i - 1] && BigUint::from(e[i] - e[i - 1]) > growth_bound(base, i as u32) {
            return Some(i);
        }
    }
    None
}

/// `(⌈r/2⌉, C(r+1, 2))`: the range of `h_2` for pure `(1, r, h_2)`.
pub fn socle2_bounds(r: u64) -> (u64, u64) {
    (r.div_ceil(2), binom_u64(r + 1, 2))
}

/// Brown–Colbourn: `(-1)^j Σ_{i<=j} (-α)^i h_i >= 0` for every `j`, strictly
/// when `α != 1`. Trailing zeros are dropped first, so `(1, 0, 0)` is `(1)`.
pub fn brown_colbourn(h: &IntSeq, alpha: &BigRational) -> Result<bool> {
    let h = h.trim();
    if *alpha < BigRational::one() {
        return Err(Error::AlphaOutOfRange);
    }
    let strict = !alpha.is_one();
    let neg = -alpha.clone();
    let mut partial = BigRational::zero();
    let mut pw = BigRational::one();
    for (j, &x) in h.entries().iter().enumerate() {
        partial += &pw * BigRational::from(BigInt::from(x));
        pw *= &neg;
        let v = if j % 2 == 0 {
            partial.clone()
        } else {
            -partial.clone()
        };
        if v.is_negative() || (strict && v.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest last entry `x` such that `prefix ++ [x]` passes
/// [`brown_colbourn`] at every `α` in `alphas`. The grid is a sample, so the
/// result is a lower bound on what all real `α >= 1` would force.
pub fn brown_colbourn_min_last(prefix: &IntSeq, alphas: &[BigRational]) -> Result<u64> {
    let mut best = 0u64;
    let j = prefix.len();
    for a in alphas {
        if *a < BigRational::one() {
            return Err(Error::AlphaOutOfRange);
        }
        // (-1)^j [S + (-a)^j x] >= 0 with S the prefix sum, i.e. a^j x >= -(-1)^j S
        let neg = -a.clone();
        let mut s = BigRational::zero();
        let mut pw = BigRational::one();
        for &x in prefix.entries() {
            s += &pw * BigRational::from(BigInt::from(x));
            pw *= &neg;
        }
        let sign = if j.is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        let need = -(sign * s) / num_traits::pow(a.clone(), j);
        let strict = !a.is_one();
        let mut x = need.ceil();
        if strict && x == need {
            x += BigRational::one();
        }
        let x = x.to_integer().to_u64().unwrap_or(0);
        best = best.max(x);
    }
    Ok(best)
}

/// Whether `(1, r, h_2)` feasible for Brown–Colbourn at `α = 1` is pure.
/// `h_2 = 0` is the trivial case.
pub fn rank2_matroid_pure(h: &IntSeq) -> bool {
    let (r, h2) = (h.get(1), h.get(2));
    if h2 == 0 {
        return true;
    }
    if h2 + 1 < r {
        // not Brown–Colbourn feasible, nothing to verify
        return true;
    }
    let (lo, hi) = socle2_bounds(r);
    lo <= h2 && h2 <= hi
}
