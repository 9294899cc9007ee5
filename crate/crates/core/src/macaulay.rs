//! Binomial expansions, Macaulay-type growth bounds and the sequence calculus
//! built on them.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite sequence of non-negative integers indexed from degree 0.
///
/// Entries are stored as given; [`IntSeq::trim`] yields the canonical form
/// without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntSeq(Vec<u64>);

impl IntSeq {
    pub fn new(entries: Vec<u64>) -> Self {
        IntSeq(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Drop trailing zeros, keeping at least one entry.
    pub fn trim(&self) -> IntSeq {
        let mut v = self.0.clone();
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        if v.is_empty() {
            v.push(0);
        }
        IntSeq(v)
    }

    /// Last index carrying a positive entry.
    pub fn socle_degree(&self) -> usize {
        self.0.iter().rposition(|&x| x > 0).unwrap_or(0)
    }

    /// h_1, the codimension of an h-vector.
    pub fn codim(&self) -> u64 {
        self.get(1)
    }

    /// Entry at the socle degree, the type of a level h-vector.
    pub fn socle_type(&self) -> u64 {
        self.get(self.socle_degree())
    }

    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&x| x as u128).sum()
    }
}

impl Index<usize> for IntSeq {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl From<Vec<u64>> for IntSeq {
    fn from(v: Vec<u64>) -> Self {
        IntSeq(v)
    }
}

impl<const N: usize> From<[u64; N]> for IntSeq {
    fn from(v: [u64; N]) -> Self {
        IntSeq(v.to_vec())
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Accepts `1,49,81`, `1 49 81` and `(1, 49, 81)`.
impl FromStr for IntSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let mut out = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            out.push(
                tok.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad sequence entry `{tok}`")))?,
            );
        }
        if out.is_empty() {
            return Err(Error::Parse("empty sequence".into()));
        }
        Ok(IntSeq(out))
    }
}

/// `C(n, k)` with the zero convention for `k < 0` or `n < k`.
pub fn binom(n: i64, k: i64) -> BigUint {
    if k < 0 || n < k {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}

/// `C(n, k)` saturating at `u128::MAX`; monotone in `n` for `n >= k`.
pub(crate) fn binom_sat(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 1..=k as u128 {
        // acc = C(n-k+j-1, j-1); the product is divisible by j
        match acc.checked_mul(n as u128 - k as u128 + j) {
            Some(p) => acc = p / j,
            None => return u128::MAX,
        }
    }
    acc
}

/// `C(n, k)` as u64, saturating.
pub fn binom_u64(n: u64, k: u64) -> u64 {
    binom_sat(n, k).min(u64::MAX as u128) as u64
}

/// d-binomial expansion `n = C(k_d, d) + C(k_{d-1}, d-1) + ... + C(k_δ, δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialExpansion {
    pub d: u32,
    /// Tops `k_d > k_{d-1} > ...`; `tops[j]` pairs with bottom `d - j`.
    pub tops: Vec<u64>,
    pub value: u64,
}

impl BinomialExpansion {
    /// `(top, bottom)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.tops
            .iter()
            .enumerate()
            .map(move |(j, &k)| (k, self.d - j as u32))
    }
}

impl fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tops.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(k, i)| format!("C({k},{i})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Greedy d-binomial expansion of `n`.
pub fn expand(n: u64, d: u32) -> Result<BinomialExpansion> {
    if d == 0 {
        return Err(Error::InvalidDegree);
    }
    let mut rest = n;
    let mut tops = Vec::new();
    let mut i = d as u64;
    while rest > 0 && i >= 1 {
        // largest k with C(k, i) <= rest; C(k, i) >= k once k > i
        let (mut lo, mut hi) = (i, rest.max(i) + 1);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binom_sat(mid, i) <= rest as u128 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        tops.push(lo);
        rest -= binom_sat(lo, i) as u64;
        i -= 1;
    }
    Ok(BinomialExpansion { d, tops, value: n })
}

/// `Σ C(k_i + b, i + a)` over the terms of `exp`.
pub fn shift(exp: &BinomialExpansion, a: i64, b: i64) -> BigUint {
    exp.terms()
        .map(|(k, i)| binom(k as i64 + b, i as i64 + a))
        .fold(BigUint::zero(), |acc, x| acc + x)
}

/// Largest value allowed one degree after `n` in degree `d >= 1`.
pub fn macaulay_bound(n: u64, d: u32) -> BigUint {
    shift(&expand(n, d).expect("d >= 1"), 1, 1)
}

/// [`macaulay_bound`] saturated into a u64.
pub fn macaulay_bound_u64(n: u64, d: u32) -> u64 {
    macaulay_bound(n, d).to_u64().unwrap_or(u64::MAX)
}

/// Gotzmann persistence value in degree `d + s`.
pub fn gotzmann(n: u64, d: u32, s: u32) -> BigUint {
    shift(&expand(n, d).expect("d >= 1"), s as i64, s as i64)
}

/// Green's bound on the restriction to a general hyperplane in degree `d`.
pub fn green(n: u64, d: u32) -> BigUint {
    shift(&expand(n, d).expect("d >= 1"), 0, -1)
}

/// `h_0 = 1` and every step obeys Macaulay's bound. The step out of degree 1
/// uses the same formula, so `h_1` itself is unconstrained.
pub fn is_o_sequence(h: &IntSeq) -> bool {
    first_macaulay_violation(h).is_none() && h.get(0) == 1
}

/// First index `i >= 2` with `h_i` above the bound from `h_{i-1}`.
pub fn first_macaulay_violation(h: &IntSeq) -> Option<usize> {
    let e = h.entries();
    for d in 1..e.len().saturating_sub(1) {
        if BigUint::from(e[d + 1]) > macaulay_bound(e[d], d as u32) {
            return Some(d + 1);
        }
    }
    None
}

/// First difference `(h_0, h_1 - h_0, h_2 - h_1, ...)`.
pub fn differentiate(h: &IntSeq) -> Result<IntSeq> {
    let e = h.entries();
    let mut out = Vec::with_capacity(e.len());
    for (i, &x) in e.iter().enumerate() {
        if i == 0 {
            out.push(x);
        } else if x < e[i - 1] {
            return Err(Error::NegativeDifference { index: i });
        } else {
            out.push(x - e[i - 1]);
        }
    }
    Ok(IntSeq(out))
}

/// Partial sums, the inverse of [`differentiate`].
pub fn integrate(h: &IntSeq) -> IntSeq {
    let mut acc = 0u64;
    IntSeq(
        h.entries()
            .iter()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect(),
    )
}

/// Partitions of `e` into exactly `r` positive parts.
pub fn partitions_with_parts(e: u64, r: u64) -> BigUint {
    if r > e {
        return BigUint::zero();
    }
    partition_table(e as usize, r as usize)[e as usize][r as usize].clone()
}

/// Unrestricted partition count p(e).
pub fn partition_count(e: u64) -> BigUint {
    let t = partition_table(e as usize, e as usize);
    if e == 0 {
        return BigUint::one();
    }
    t[e as usize].iter().fold(BigUint::zero(), |a, x| a + x)
}

// p[n][k] = p[n-1][k-1] + p[n-k][k]
fn partition_table(e: usize, r: usize) -> Vec<Vec<BigUint>> {
    let mut p = vec![vec![BigUint::zero(); r + 1]; e + 1];
    p[0][0] = BigUint::one();
    for n in 1..=e {
        for k in 1..=r.min(n) {
            let v = p[n - 1][k - 1].clone() + &p[n - k][k];
            p[n][k] = v;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal(n: usize) -> Vec<Vec<BigUint>> {
        let mut t = vec![vec![BigUint::zero(); n + 1]; n + 1];
        for i in 0..=n {
            t[i][0] = BigUint::one();
            for j in 1..=i {
                t[i][j] = t[i - 1][j - 1].clone() + &t[i - 1][j];
            }
        }
        t
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(5, 2), BigUint::from(10u32));
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(binom(4, -1), BigUint::zero());
        let t = pascal(40);
        assert_eq!(binom(40, 20), t[40][20]);
        assert_eq!(binom(40, 20), BigUint::from(137846528820u64));
        for n in 0..=40 {
            for k in 0..=n {
                assert_eq!(binom(n as i64, k as i64), t[n][k]);
                assert_eq!(BigUint::from(binom_sat(n as u64, k as u64)), t[n][k]);
            }
        }
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(8, 3).unwrap().tops, vec![4, 3, 1]);
        assert!(expand(0, 5).unwrap().tops.is_empty());
        assert_eq!(expand(10, 3).unwrap().tops, vec![5]);
        assert_eq!(expand(3, 0), Err(Error::InvalidDegree));
        assert_eq!(
            expand(8, 3).unwrap().to_string(),
            "C(4,3) + C(3,2) + C(1,1)"
        );
    }

    #[test]
    fn shift_examples() {
        assert_eq!(macaulay_bound(8, 3), BigUint::from(10u32));
        assert_eq!(macaulay_bound(3, 4), BigUint::from(3u32));
        assert_eq!(macaulay_bound(0, 2), BigUint::zero());
        // all terms vanish: returns 0, never errors
        assert_eq!(shift(&expand(1, 1).unwrap(), 5, -3), BigUint::zero());
        assert_eq!(green(10, 3), BigUint::from(4u32));
        assert_eq!(gotzmann(10, 3, 2), BigUint::from(21u32));
    }

    #[test]
    fn o_sequence_examples() {
        assert!(is_o_sequence(&IntSeq::from([1, 3, 6, 10])));
        assert!(!is_o_sequence(&IntSeq::from([1, 7, 8, 8, 12])));
        assert!(is_o_sequence(&IntSeq::from([1, 13, 12, 13, 1])));
        assert!(is_o_sequence(&IntSeq::from([1, 250])));
        assert!(!is_o_sequence(&IntSeq::from([2, 1])));
        assert!(!is_o_sequence(&IntSeq::from([1, 2, 4])));
        assert!(!is_o_sequence(&IntSeq::from([1, 2, 0, 1])));
    }

    #[test]
    fn calculus_examples() {
        let d = differentiate(&IntSeq::from([1, 8, 16, 24, 36])).unwrap();
        assert_eq!(d, IntSeq::from([1, 7, 8, 8, 12]));
        assert_eq!(
            integrate(&IntSeq::from([1, 3, 5, 1])),
            IntSeq::from([1, 4, 9, 10])
        );
        assert_eq!(
            differentiate(&IntSeq::from([1, 1, 1])).unwrap(),
            IntSeq::from([1, 0, 0])
        );
        assert_eq!(
            differentiate(&IntSeq::from([1, 3, 2])),
            Err(Error::NegativeDifference { index: 2 })
        );
    }

    #[test]
    fn partitions_examples() {
        assert_eq!(partitions_with_parts(9, 1), BigUint::one());
        assert_eq!(partitions_with_parts(5, 3), BigUint::from(2u32));
        assert_eq!(partitions_with_parts(3, 7), BigUint::zero());
        assert_eq!(
            partition_count(100),
            "190569292".parse::<BigUint>().unwrap()
        );
    }

    // coefficients of Π 1/(1 - t^k)
    fn gf_partitions(n: usize) -> Vec<u64> {
        let mut c = vec![0u64; n + 1];
        c[0] = 1;
        for k in 1..=n {
            for i in k..=n {
                c[i] += c[i - k];
            }
        }
        c
    }

    #[test]
    fn partitions_sum_to_generating_function() {
        let gf = gf_partitions(30);
        for e in 1..=30u64 {
            let s = (1..=e).fold(BigUint::zero(), |a, r| a + partitions_with_parts(e, r));
            assert_eq!(s, BigUint::from(gf[e as usize]), "e={e}");
        }
    }

    #[test]
    fn expansion_round_trip_exhaustive() {
        for d in 1..=8u32 {
            for n in 0..=2000u64 {
                let x = expand(n, d).unwrap();
                let mut total = BigUint::zero();
                for (j, (k, i)) in x.terms().enumerate() {
                    assert!(k >= i as u64 && i >= 1);
                    if j > 0 {
                        assert!(x.tops[j - 1] > k);
                    }
                    total += binom(k as i64, i as i64);
                }
                assert_eq!(total, BigUint::from(n));
                assert_eq!(expand(x.value, d).unwrap(), x);
            }
        }
    }

    #[test]
    fn macaulay_bound_monotone() {
        for d in 1..=6u32 {
            let mut prev = BigUint::zero();
            for n in 0..=1500u64 {
                let b = macaulay_bound(n, d);
                assert!(b >= prev, "d={d} n={n}");
                prev = b;
            }
        }
    }

    proptest! {
        #[test]
        fn integrate_inverts_differentiate(steps in proptest::collection::vec(0u64..50, 0..10)) {
            let mut h = vec![1u64];
            for s in steps { let l = *h.last().unwrap(); h.push(l + s); }
            let h = IntSeq::new(h);
            prop_assert_eq!(integrate(&differentiate(&h).unwrap()), h);
        }

        #[test]
        fn differentiate_inverts_integrate(g in proptest::collection::vec(0u64..50, 1..10)) {
            let g = IntSeq::new(g);
            prop_assert_eq!(differentiate(&integrate(&g)).unwrap(), g);
        }

        #[test]
        fn parse_display_round_trip(v in proptest::collection::vec(0u64..1000, 1..12)) {
            let s = IntSeq::new(v);
            prop_assert_eq!(s.to_string().parse::<IntSeq>().unwrap(), s);
        }
    }
}
