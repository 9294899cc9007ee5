//! Dense exact integer matrices: rank over Q and over F_p, determinants,
//! Smith normal form and the prime factors of its invariant factors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|c| c.to_vec())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Rank over Q by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.row_vecs(), self.cols).0
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return BigInt::one();
        }
        let (rank, det) = bareiss(self.row_vecs(), self.cols);
        if rank < self.rows {
            BigInt::zero()
        } else {
            det
        }
    }

    /// Rank over F_p, `p` prime below 2^32.
    pub fn rank_mod(&self, p: u64) -> usize {
        assert!((2..(1 << 32)).contains(&p));
        let pb = BigInt::from(p);
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).mod_floor(&pb).to_u64().unwrap())
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = pow_mod(a[rank][c], p - 2, p);
            for j in c..self.cols {
                a[rank][j] = a[rank][j] * inv % p;
            }
            for i in 0..self.rows {
                if i != rank && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in c..self.cols {
                        a[i][j] = (a[i][j] + (p - f) * a[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Nonzero invariant factors `d_1 | d_2 | ... | d_ρ`, all positive.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        smith(self.row_vecs(), self.rows, self.cols)
    }
}

// rank and the last pivot (the determinant when square and full rank)
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1i32;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if piv != rank {
            a.swap(rank, piv);
            sign = -sign;
        }
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    (rank, if sign < 0 { -prev } else { prev })
}

fn smith(mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Vec<BigInt> {
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            // the pivot must divide the rest of the block
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    // deterministic for n < 3.3e24, overwhelmingly reliable above
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigUint::from(2u32), BigUint::from(2u32), one.clone());
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if d != *n {
            return d;
        }
        c += 1u32;
    }
}

/// Distinct prime factors, ascending.
pub fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut p = 2u32;
    while p < 10_000 && n > BigUint::one() {
        let pb = BigUint::from(p);
        if (&n % &pb).is_zero() {
            out.push(pb.clone());
            while (&n % &pb).is_zero() {
                n /= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m <= BigUint::one() {
            continue;
        }
        if is_probable_prime(&m) {
            out.push(m);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out.dedup();
    out
}

/// Primes `p` dividing `d`, as u64 where they fit.
pub fn small_prime_factors(d: &BigInt) -> Vec<u64> {
    let (_, mag) = d.clone().into_parts();
    if mag.is_zero() {
        return Vec::new();
    }
    prime_factors(&mag)
        .iter()
        .filter_map(|p| p.to_u64())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    // cofactor expansion oracle
    fn det_naive(a: &[Vec<i64>]) -> i128 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            total += s * a[0][j] as i128 * det_naive(&minor);
        }
        total
    }

    #[test]
    fn small_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(m.smith_invariants(), vec![2.into(), 6.into(), 12.into()]);
        assert_eq!(
            m.determinant(),
            BigInt::from(det_naive(&[
                vec![2, 4, 4],
                vec![-6, 6, 12],
                vec![10, -4, -16]
            ]))
        );
        assert_eq!(m.rank(), 3);
        assert_eq!(m.rank_mod(2), 0);
        assert_eq!(m.rank_mod(3), 1);
        assert_eq!(m.rank_mod(5), 3);
        let z = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(z.rank(), 1);
        assert_eq!(z.determinant(), BigInt::zero());
    }

    #[test]
    fn factor_examples() {
        let f = |n: u64| prime_factors(&BigUint::from(n));
        assert_eq!(f(70), vec![2u32.into(), 5u32.into(), 7u32.into()]);
        assert_eq!(f(1), Vec::<BigUint>::new());
        assert_eq!(
            f(1_000_000_007u64 * 998_244_353),
            vec![998_244_353u64.into(), 1_000_000_007u64.into()]
        );
        assert_eq!(f(1 << 20), vec![2u32.into()]);
    }

    #[test]
    fn smith_predicts_modular_rank() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(-6..7)).collect())
                .collect();
            let m = IntMatrix::from_rows(&rows);
            let d = m.smith_invariants();
            assert_eq!(d.len(), m.rank());
            for w in d.windows(2) {
                assert!(w[1].is_multiple_of(&w[0]));
            }
            for p in [2u64, 3, 5, 7, 11, 13] {
                let expected = d
                    .iter()
                    .filter(|x| !x.is_multiple_of(&BigInt::from(p)))
                    .count();
                assert_eq!(m.rank_mod(p), expected);
            }
            if r == c {
                let prod = d.iter().fold(BigInt::one(), |a, x| a * x);
                let det = det_naive(&rows);
                if d.len() == r {
                    assert_eq!(prod, BigInt::from(det.abs()));
                } else {
                    assert_eq!(det, 0);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn determinant_matches_cofactors(v in proptest::collection::vec(-9i64..10, 16)) {
            let rows: Vec<Vec<i64>> = v.chunks(4).map(|c| c.to_vec()).collect();
            prop_assert_eq!(IntMatrix::from_rows(&rows).determinant(), BigInt::from(det_naive(&rows)));
        }

        #[test]
        fn rank_invariant_under_transpose(v in proptest::collection::vec(-3i64..4, 12)) {
            let rows: Vec<Vec<i64>> = v.chunks(3).map(|c| c.to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
