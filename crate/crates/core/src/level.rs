//! Monomial Artinian algebras through their inverse systems: Hilbert
//! functions, multiplication by powers of `L = x_1 + ... + x_n`, weak and
//! strong Lefschetz rank profiles over Q and over F_p, and the explicit
//! families of algebras that fail them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{small_prime_factors, IntMatrix};
use crate::macaulay::IntSeq;
use crate::monomial::{monomials_of_degree, Monomial, OrderIdeal};
use crate::sequence;

/// `R/I` for a monomial ideal `I`, represented by the order ideal of
/// monomials outside `I` (the inverse system).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAlgebra {
    basis: OrderIdeal,
}

impl LevelAlgebra {
    /// Algebra whose inverse system is generated by `gens`, all of one degree.
    pub fn from_inverse_system(gens: &[Monomial]) -> Result<LevelAlgebra> {
        let d = gens.first().ok_or(Error::EmptyGenerators)?.degree();
        if gens.iter().any(|g| g.degree() != d) {
            return Err(Error::MixedDegrees);
        }
        Ok(LevelAlgebra {
            basis: OrderIdeal::closure(gens)?,
        })
    }

    /// `R/I` for the ideal generated by `gens`. The result need not be level;
    /// see [`LevelAlgebra::is_level`].
    pub fn from_ideal(gens: &[Monomial]) -> Result<LevelAlgebra> {
        let n = gens.first().ok_or(Error::EmptyGenerators)?.ambient();
        if let Some(g) = gens.iter().find(|g| g.ambient() != n) {
            return Err(Error::AmbientMismatch(n, g.ambient()));
        }
        for i in 0..n {
            if !gens.iter().any(|g| g.support().eq(std::iter::once(i))) {
                return Err(Error::NotArtinian(i));
            }
        }
        let in_ideal = |m: &Monomial| gens.iter().any(|g| g.divides(m));
        let unit = Monomial::unit(n);
        if in_ideal(&unit) {
            return Err(Error::ParameterOutOfRange(
                "the ideal is the whole ring".into(),
            ));
        }
        let mut members = vec![unit.clone()];
        let mut layer: FxHashSet<Monomial> = std::iter::once(unit).collect();
        while !layer.is_empty() {
            let mut next = FxHashSet::default();
            for m in &layer {
                for i in 0..n {
                    let p = m.times_var(i);
                    if !next.contains(&p) && !in_ideal(&p) {
                        next.insert(p);
                    }
                }
            }
            members.extend(next.iter().cloned());
            layer = next;
        }
        Ok(LevelAlgebra {
            basis: OrderIdeal::closure(&members)?,
        })
    }

    pub fn ambient(&self) -> usize {
        self.basis.ambient()
    }

    pub fn order_ideal(&self) -> &OrderIdeal {
        &self.basis
    }

    /// Generators of the inverse system (socle monomials).
    pub fn socle_generators(&self) -> &[Monomial] {
        self.basis.generators()
    }

    pub fn socle_degree(&self) -> usize {
        self.basis.socle_degree()
    }

    pub fn socle_type(&self) -> usize {
        self.basis.generators().len()
    }

    pub fn is_level(&self) -> bool {
        self.basis.is_pure()
    }

    pub fn hilbert(&self) -> IntSeq {
        self.basis.h_vector()
    }

    pub fn quotient_basis(&self, d: usize) -> &[Monomial] {
        self.basis.layer(d)
    }

    /// Minimal monomial generators of the ideal.
    pub fn ideal_generators(&self) -> Vec<Monomial> {
        let n = self.ambient();
        let mut out = FxHashSet::default();
        for m in self.basis.members() {
            for i in 0..n {
                let p = m.times_var(i);
                if self.basis.contains(&p) {
                    continue;
                }
                let minimal = (0..n).all(|j| match p.contract_unchecked(j) {
                    Some(c) => self.basis.contains(&c),
                    None => true,
                });
                if minimal {
                    out.insert(p);
                }
            }
        }
        let mut v: Vec<Monomial> = out.into_iter().collect();
        v.sort();
        v
    }

    /// Matrix of `×L^s` from degree `d` to `d + s` in the monomial bases;
    /// rows index the target basis.
    pub fn mult_matrix(&self, s: u32, d: u32) -> Result<IntMatrix> {
        let e = self.socle_degree() as u32;
        if s == 0 || d + s > e {
            return Err(Error::DegreeOutOfRange(d + s));
        }
        let src = self.quotient_basis(d as usize);
        let dst = self.quotient_basis((d + s) as usize);
        let mut m = IntMatrix::zeros(dst.len(), src.len());
        let steps: Vec<(Monomial, BigInt)> = monomials_of_degree(self.ambient(), s)
            .into_iter()
            .map(|u| {
                let c = multinomial(u.exps());
                (u, c)
            })
            .collect();
        for (j, a) in src.iter().enumerate() {
            for (u, c) in &steps {
                let p = a.mul(u);
                if let Ok(i) = dst.binary_search(&p) {
                    let v = m.get(i, j) + c;
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// Rank profile of `×L` with failing characteristics.
    pub fn wlp_report(&self) -> WlpReport {
        self.lefschetz_report(1)
    }

    /// One report per power `s = 1..=e`.
    pub fn slp_report(&self) -> Vec<WlpReport> {
        (1..=self.socle_degree() as u32)
            .map(|s| self.lefschetz_report(s))
            .collect()
    }

    /// Maximal rank of every `×L^s` map, checked over Q or F_p.
    pub fn has_max_rank_in_char(&self, s: u32, p: u64) -> bool {
        let e = self.socle_degree() as u32;
        (0..=e.saturating_sub(s)).all(|d| {
            let m = self.mult_matrix(s, d).expect("degree in range");
            let target = m.rows().min(m.cols());
            let rank = match p {
                0 => m.rank(),
                p if p < (1 << 32) => m.rank_mod(p),
                p => {
                    let pb = BigInt::from(p);
                    m.smith_invariants()
                        .iter()
                        .filter(|x| !(*x % &pb).is_zero())
                        .count()
                }
            };
            rank == target
        })
    }

    pub fn lefschetz_report(&self, s: u32) -> WlpReport {
        let h = self.hilbert();
        let e = self.socle_degree() as u32;
        let mut ranks = Vec::new();
        let mut candidates: Vec<u64> = Vec::new();
        let mut first_failure = None;
        let mut mode = FailureMode::None;
        for d in 0..=e.saturating_sub(s) {
            if s > e {
                break;
            }
            let m = self.mult_matrix(s, d).expect("degree in range");
            let target = m.rows().min(m.cols());
            let rank = m.rank();
            if rank < target && first_failure.is_none() {
                first_failure = Some(d);
                mode = match m.cols().cmp(&m.rows()) {
                    std::cmp::Ordering::Less => FailureMode::InjectivityFailure,
                    std::cmp::Ordering::Greater => FailureMode::SurjectivityFailure,
                    std::cmp::Ordering::Equal => FailureMode::BijectivityFailure,
                };
            }
            if rank == target && target > 0 {
                // p drops the rank iff p divides the largest invariant factor
                let inv = m.smith_invariants();
                if let Some(top) = inv.last() {
                    for p in small_prime_factors(top) {
                        if p < (1 << 32) {
                            assert!(m.rank_mod(p) < target, "prime {p} does not lower the rank");
                        }
                        candidates.push(p);
                    }
                }
            }
            ranks.push(RankStep {
                degree: d,
                rank,
                target,
            });
        }
        candidates.sort_unstable();
        candidates.dedup();
        let char0 = first_failure.is_none();
        WlpReport {
            power: s,
            hilbert: h,
            ranks,
            wlp_char0: char0,
            failing_primes: if char0 { candidates } else { Vec::new() },
            fails_in_all_characteristics: !char0,
            first_failure_degree: first_failure,
            mode,
        }
    }

    /// `×L` injective in degrees `0..=⌊(e-1)/2⌋` over Q.
    pub fn injective_first_half(&self) -> bool {
        let e = self.socle_degree() as u32;
        if e == 0 {
            return true;
        }
        (0..=(e - 1) / 2).all(|d| {
            let m = self.mult_matrix(1, d).unwrap();
            m.rank() == m.cols()
        })
    }
}

fn multinomial(exps: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0u64;
    for &a in exps {
        for j in 1..=a as u64 {
            total += 1;
            acc *= total;
            acc /= j;
        }
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureMode {
    InjectivityFailure,
    SurjectivityFailure,
    /// A square map that is singular.
    BijectivityFailure,
    None,
}

impl FailureMode {
    pub fn fails_injectivity(self) -> bool {
        matches!(
            self,
            FailureMode::InjectivityFailure | FailureMode::BijectivityFailure
        )
    }

    pub fn fails_surjectivity(self) -> bool {
        matches!(
            self,
            FailureMode::SurjectivityFailure | FailureMode::BijectivityFailure
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankStep {
    pub degree: u32,
    pub rank: usize,
    pub target: usize,
}

/// Rank profile of `×L^power` in every degree. `failing_primes` lists the
/// characteristics that lose maximal rank when characteristic zero has it;
/// when characteristic zero already fails, every characteristic fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpReport {
    pub power: u32,
    pub hilbert: IntSeq,
    pub ranks: Vec<RankStep>,
    pub wlp_char0: bool,
    pub failing_primes: Vec<u64>,
    pub fails_in_all_characteristics: bool,
    pub first_failure_degree: Option<u32>,
    pub mode: FailureMode,
}

impl WlpReport {
    /// Maximal rank in characteristic `p` (0 for Q), read off the report.
    pub fn passes_in_char(&self, p: u64) -> bool {
        if p == 0 {
            self.wlp_char0
        } else {
            self.wlp_char0 && !self.failing_primes.contains(&p)
        }
    }
}

/// Hilbert function of `k[x_1..x_m]/(x_1^{a_1}, ..., x_m^{a_m})`.
pub fn ci_hilbert(degrees: &[u32]) -> IntSeq {
    let mut h = vec![1u64];
    for &a in degrees {
        if a == 0 {
            return IntSeq::new(vec![0]);
        }
        let mut next = vec![0u64; h.len() + a as usize - 1];
        for (i, &x) in h.iter().enumerate() {
            for k in 0..a as usize {
                next[i + k] += x;
            }
        }
        h = next;
    }
    IntSeq::new(h)
}

/// Degree-`j` value of `ci_hilbert(degrees)` tensored with `extra` free
/// variables (so not Artinian when `extra > 0`).
pub fn ci_hilbert_value(degrees: &[u32], extra: usize, j: i64) -> u64 {
    if j < 0 {
        return 0;
    }
    let base = ci_hilbert(degrees);
    if extra == 0 {
        return base.get(j as usize);
    }
    // convolve with C(k + extra - 1, extra - 1)
    (0..=j as usize)
        .map(|i| {
            base.get(i)
                * crate::macaulay::binom_u64(
                    (j as usize - i + extra - 1) as u64,
                    (extra - 1) as u64,
                )
        })
        .sum()
}

/// `h(j) = h_I(j - d) + h_J(j) - h_J(j - d)` for `j = 0..=upto`. `h_j`
/// answers `None` outside the degrees it knows.
pub fn basic_double_link_hf(
    h_i: &IntSeq,
    h_j: &dyn Fn(i64) -> Option<u64>,
    d: u32,
    upto: usize,
) -> Result<IntSeq> {
    let mut out = Vec::with_capacity(upto + 1);
    for j in 0..=upto as i64 {
        let a = if j - (d as i64) >= 0 {
            h_i.get((j - d as i64) as usize)
        } else {
            0
        };
        let b = h_j(j).ok_or(Error::InsufficientTable(j as usize))?;
        let c = if j - (d as i64) >= 0 {
            h_j(j - d as i64).ok_or(Error::InsufficientTable((j - d as i64) as usize))?
        } else {
            0
        };
        out.push(a + b - c);
    }
    Ok(IntSeq::new(out).trim())
}

/// `h_{R/Ann(a)} + h_{R/Ann(b)} - h_{R/Ann(gcd(a, b))}`.
pub fn type2_hilbert(a: &Monomial, b: &Monomial) -> Result<IntSeq> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    let ci = |m: &Monomial| ci_hilbert(&m.exps().iter().map(|x| x + 1).collect::<Vec<_>>());
    let (ha, hb, hc) = (ci(a), ci(b), ci(&a.gcd(b)));
    Ok(IntSeq::new(
        (0..=a.degree() as usize)
            .map(|j| ha.get(j) + hb.get(j) - hc.get(j))
            .collect(),
    ))
}

/// The two normal forms of a type-2 monomial level algebra in three
/// variables. `perm[k]` is the original index of the variable playing the
/// role of the k-th of `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Type2Form {
    /// `(x^a, y^b, z^c, y^β z^γ)` with `b - β = c - γ`.
    A {
        a: u32,
        b: u32,
        c: u32,
        beta: u32,
        gamma: u32,
        perm: [usize; 3],
    },
    /// `(x^a, y^b, z^c, x^α y^β, x^α z^γ)` with `a - α = (b - β) + (c - γ)`.
    B {
        a: u32,
        b: u32,
        c: u32,
        alpha: u32,
        beta: u32,
        gamma: u32,
        perm: [usize; 3],
    },
    /// Both generators equal: a complete intersection of type 1.
    Type1,
}

impl Type2Form {
    /// Hilbert function from the decomposition into complete intersections.
    pub fn hilbert(&self) -> IntSeq {
        let (h1, shift, h2) = match *self {
            Type2Form::A {
                a,
                b,
                c,
                beta,
                gamma,
                ..
            } => (
                ci_hilbert(&[a, b - beta, gamma]),
                beta,
                ci_hilbert(&[a, beta, c]),
            ),
            Type2Form::B {
                a,
                b,
                c,
                alpha,
                beta,
                gamma,
                ..
            } => (
                ci_hilbert(&[a - alpha, beta, gamma]),
                alpha,
                ci_hilbert(&[alpha, b, c]),
            ),
            Type2Form::Type1 => unreachable!("type 1 has no two-piece decomposition"),
        };
        let len = (h1.len() + shift as usize).max(h2.len());
        IntSeq::new(
            (0..len)
                .map(|j| {
                    let x = if j >= shift as usize {
                        h1.get(j - shift as usize)
                    } else {
                        0
                    };
                    x + h2.get(j)
                })
                .collect(),
        )
        .trim()
    }
}

pub fn classify_type2_3vars(p: &Monomial, q: &Monomial) -> Result<Type2Form> {
    if p.ambient() != 3 || q.ambient() != 3 {
        return Err(Error::AmbientMismatch(3, p.ambient().max(q.ambient())));
    }
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    if p == q {
        return Ok(Type2Form::Type1);
    }
    let (u, v) = (p.exps(), q.exps());
    if let Some(i) = (0..3).find(|&i| u[i] == v[i]) {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        // orient so the y exponent of the first monomial is the smaller one
        let (s, t) = if u[j] < v[j] { (u, v) } else { (v, u) };
        return Ok(Type2Form::A {
            a: s[i] + 1,
            b: t[j] + 1,
            c: s[k] + 1,
            beta: s[j] + 1,
            gamma: t[k] + 1,
            perm: [i, j, k],
        });
    }
    // two coordinates of one monomial exceed the other's
    let greater = (0..3).filter(|&i| u[i] > v[i]).count();
    let (s, t) = if greater == 2 { (u, v) } else { (v, u) };
    let i = (0..3).find(|&i| s[i] < t[i]).unwrap();
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    Ok(Type2Form::B {
        a: t[i] + 1,
        b: s[j] + 1,
        c: s[k] + 1,
        alpha: s[i] + 1,
        beta: t[j] + 1,
        gamma: t[k] + 1,
        perm: [i, j, k],
    })
}

/// Named constructions of level algebras failing the WLP or SLP.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FailureFamily {
    /// Type 2 in `r >= 3` variables; for `r >= 4` surjectivity fails from `r`
    /// to `r + 1`. The `r = 3` member, (1,3,6,9,9,6,2), has the WLP.
    Surjectivity { r: usize },
    /// Type 2 in an even number `r >= 4` of variables, `N >= 5`; injectivity
    /// fails from `r(N-2)/2`.
    Injectivity { r: usize, n: u32 },
    /// Type `d >= 3` in three variables.
    TypeD { d: usize },
    /// Type 2 in four variables with Hilbert function (1,4,10,16,15,8,2).
    FourVarType2,
    /// Type 3 in four variables with Hilbert function (1,4,10,18,25,26,20,10,3).
    FourVarType3,
    /// Three variables, type 2: WLP holds, `×L^3` fails from degree 3 to 6.
    SlpCounterexample,
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

impl FailureFamily {
    pub fn build(self) -> Result<LevelAlgebra> {
        match self {
            FailureFamily::Surjectivity { r } => {
                if r < 3 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "surjectivity family needs r >= 3, got {r}"
                    )));
                }
                let mut m1 = vec![2u32; r];
                let mut m2 = vec![2u32; r];
                (m1[0], m1[r - 1], m2[0], m2[r - 1]) = (1, 3, 3, 1);
                LevelAlgebra::from_inverse_system(&[mono(&m1), mono(&m2)])
            }
            FailureFamily::Injectivity { r, n } => {
                if r < 4 || r % 2 == 1 || n < 5 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "injectivity family needs even r >= 4 and N >= 5, got r={r}, N={n}"
                    )));
                }
                let mut m1 = vec![n - 2; r];
                let mut m2 = vec![n - 2; r];
                (m1[0], m1[1], m2[0], m2[1]) = (n - 3, n - 1, n - 1, n - 3);
                LevelAlgebra::from_inverse_system(&[mono(&m1), mono(&m2)])
            }
            FailureFamily::TypeD { d } => type_d_algebra(d),
            FailureFamily::FourVarType2 => {
                LevelAlgebra::from_inverse_system(&[mono(&[2, 2, 1, 1]), mono(&[1, 1, 2, 2])])
            }
            FailureFamily::FourVarType3 => LevelAlgebra::from_inverse_system(&[
                mono(&[1, 2, 2, 3]),
                mono(&[3, 2, 2, 1]),
                mono(&[2, 2, 2, 2]),
            ]),
            FailureFamily::SlpCounterexample => LevelAlgebra::from_ideal(&[
                mono(&[7, 0, 0]),
                mono(&[0, 4, 0]),
                mono(&[0, 0, 4]),
                mono(&[3, 2, 0]),
                mono(&[3, 0, 2]),
            ]),
        }
    }

    /// Degree where the named failure starts, and whether it is injectivity.
    pub fn expected_failure(self) -> Option<(u32, FailureMode)> {
        match self {
            // h_4 = h_5 when r = 4, so the first member fails a square map
            FailureFamily::Surjectivity { r: 3 } => None,
            FailureFamily::Surjectivity { r: 4 } => Some((4, FailureMode::BijectivityFailure)),
            FailureFamily::Surjectivity { r } => Some((r as u32, FailureMode::SurjectivityFailure)),
            FailureFamily::Injectivity { r, n } => {
                Some((r as u32 * (n - 2) / 2, FailureMode::InjectivityFailure))
            }
            FailureFamily::FourVarType3 => Some((4, FailureMode::InjectivityFailure)),
            FailureFamily::TypeD { d } if d == 3 => Some((2, FailureMode::InjectivityFailure)),
            FailureFamily::TypeD { d } if d >= 5 => {
                let n = type_d_params(d).0;
                Some((2 * n + 1, FailureMode::InjectivityFailure))
            }
            _ => None,
        }
    }
}

/// `(n, a, b)` for the type-`d >= 5` construction.
pub fn type_d_params(d: usize) -> (u32, u32, u32) {
    assert!(d >= 5);
    let n = ((d as u32).saturating_sub(5)).div_ceil(4).max(1);
    let hci = |a: u32, b: u32, j: u32| -> u32 {
        let v = (j + 1).min(a).min(b) as i64;
        v.min(a as i64 + b as i64 - 1 - j as i64).max(0) as u32
    };
    for a in 1 + 2 * n..=8 * n + 8 {
        for b in a..=8 * n + 8 {
            if hci(a, b, 2 * n + 1) <= hci(a, b, 2 * n + 2)
                && hci(a, b, 4 * n + 1) as usize == d - 3
            {
                return (n, a, b);
            }
        }
    }
    unreachable!("a suitable complete intersection always exists")
}

fn type_d_algebra(d: usize) -> Result<LevelAlgebra> {
    match d {
        0..=2 => Err(Error::ParameterOutOfRange(format!(
            "type-d family needs d >= 3, got {d}"
        ))),
        3 => LevelAlgebra::from_ideal(&[
            mono(&[3, 0, 0]),
            mono(&[0, 3, 0]),
            mono(&[0, 0, 3]),
            mono(&[1, 1, 1]),
        ]),
        4 => LevelAlgebra::from_ideal(&[
            mono(&[0, 0, 2]),
            mono(&[0, 3, 1]),
            mono(&[3, 0, 1]),
            mono(&[5, 0, 0]),
            mono(&[3, 2, 0]),
            mono(&[0, 5, 0]),
            mono(&[2, 4, 0]),
        ]),
        _ => {
            let (n, a, b) = type_d_params(d);
            let p = 1 + 2 * n;
            let mut gens = vec![
                mono(&[p + 1, 0, 0]),
                mono(&[1, p, 0]),
                mono(&[1, 0, p]),
                mono(&[2, 1, 1]),
                mono(&[0, a, 0]),
                mono(&[0, 0, b]),
            ];
            gens.extend(monomials_of_degree(3, 4 * n + 2));
            LevelAlgebra::from_ideal(&gens)
        }
    }
}

/// Add `y_{r+1}^e` to the inverse system in a new variable.
pub fn lift(a: &LevelAlgebra) -> Result<LevelAlgebra> {
    let n = a.ambient();
    let e = a.socle_degree() as u32;
    let mut gens: Vec<Monomial> = a
        .socle_generators()
        .iter()
        .map(|g| g.embed(0, n + 1))
        .collect();
    let mut top = vec![0u32; n + 1];
    top[n] = e;
    gens.push(Monomial::new(top));
    LevelAlgebra::from_inverse_system(&gens)
}

/// Whether every level monomial algebra with `r` variables and type `d` has
/// the WLP.
pub fn always_wlp(r: usize, d: usize) -> bool {
    r <= 2 || d == 1 || (r == 3 && d == 2)
}

/// Same for the SLP.
pub fn always_slp(r: usize, d: usize) -> bool {
    r <= 2 || d == 1
}

/// A level algebra with codimension `r` and type `d` failing the WLP, for
/// `(r, d)` outside [`always_wlp`]. Returns the algebra and how it was built.
pub fn wlp_failure_witness(r: usize, d: usize) -> Result<(LevelAlgebra, String)> {
    if always_wlp(r, d) {
        return Err(Error::ParameterOutOfRange(format!(
            "every algebra with r={r}, d={d} has the WLP"
        )));
    }
    match (r, d) {
        (3, d) => Ok((
            FailureFamily::TypeD { d }.build()?,
            format!("type_d(d={d})"),
        )),
        (4, 2) => Ok((
            FailureFamily::FourVarType2.build()?,
            "four_var_type2".into(),
        )),
        (4, 3) => Ok((
            FailureFamily::FourVarType3.build()?,
            "four_var_type3".into(),
        )),
        (r, 2) => Ok((
            FailureFamily::Surjectivity { r }.build()?,
            format!("surjectivity(r={r})"),
        )),
        (r, d) => {
            let (base, how) = wlp_failure_witness(r - 1, d - 1)?;
            Ok((lift(&base)?, format!("lift({how})")))
        }
    }
}

/// SLP analogue of [`wlp_failure_witness`]; outside the WLP region it reuses
/// that witness, and `(3, 2)` uses the SLP counterexample.
pub fn slp_failure_witness(r: usize, d: usize) -> Result<(LevelAlgebra, String)> {
    if always_slp(r, d) {
        return Err(Error::ParameterOutOfRange(format!(
            "every algebra with r={r}, d={d} has the SLP"
        )));
    }
    if (r, d) == (3, 2) {
        return Ok((
            FailureFamily::SlpCounterexample.build()?,
            "slp_counterexample".into(),
        ));
    }
    wlp_failure_witness(r, d)
}

/// Random level algebra with exactly `r` variables used and type `d`, with
/// socle degree in `1..=max_e`.
///
/// Only degrees `e` with `d * e >= r` and at least `d` monomials of degree
/// `e` are drawn. Errors if no such degree exists, e.g. `r = 1, d >= 2`.
pub fn random_level_algebra<R: Rng>(
    rng: &mut R,
    r: usize,
    d: usize,
    max_e: u32,
) -> Result<LevelAlgebra> {
    let feasible: Vec<u32> = (1..=max_e)
        .filter(|&e| {
            d as u64 * e as u64 >= r as u64
                && crate::macaulay::binom_u64(r as u64 + e as u64 - 1, e as u64) >= d as u64
        })
        .collect();
    if r == 0 || d == 0 || feasible.is_empty() {
        return Err(Error::ParameterOutOfRange(format!(
            "no socle degree up to {max_e} admits type {d} in {r} variables"
        )));
    }
    loop {
        let e = feasible[rng.gen_range(0..feasible.len())];
        let mut gens: Vec<Monomial> = Vec::new();
        let mut guard = 0;
        while gens.len() < d && guard < 1000 {
            guard += 1;
            let m = random_monomial(rng, r, e);
            if !gens.contains(&m) {
                gens.push(m);
            }
        }
        if gens.len() < d {
            continue;
        }
        let a = LevelAlgebra::from_inverse_system(&gens).unwrap();
        if a.order_ideal().codimension() == r && a.socle_type() == d {
            return Ok(a);
        }
    }
}

/// Uniform random exponent vector of degree `e` in `n` variables.
pub fn random_monomial<R: Rng>(rng: &mut R, n: usize, e: u32) -> Monomial {
    // stars and bars: choose n-1 bar positions among e+n-1 slots
    let slots = e as usize + n - 1;
    let mut bars: Vec<usize> = rand::seq::index::sample(rng, slots, n - 1).into_vec();
    bars.sort_unstable();
    let mut exps = Vec::with_capacity(n);
    let mut prev = 0usize;
    for (k, &b) in bars.iter().enumerate() {
        exps.push((b - prev - if k == 0 { 0 } else { 1 }) as u32);
        prev = b;
    }
    let last = if n == 1 { e as usize } else { slots - prev - 1 };
    exps.push(last as u32);
    Monomial::new(exps)
}

/// Two distinct monomials in three variables of equal degree, every
/// exponent at most `max_exp`.
pub fn random_type2_pair<R: Rng>(rng: &mut R, max_exp: u32) -> (Monomial, Monomial) {
    loop {
        let a: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=max_exp)).collect();
        let b: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=max_exp)).collect();
        if a != b && a.iter().sum::<u32>() == b.iter().sum::<u32>() && a.iter().sum::<u32>() > 0 {
            return (Monomial::new(a), Monomial::new(b));
        }
    }
}

/// Restrict a monomial ideal of `k[x, y, z]` containing `x^A` and `y^B` to
/// the plane `z = x + y` and write the conditions for a degree-`k` form
/// `F = Σ a_i x^{k-i} y^i` to lie in `(x^A, y^B) : J`. One row per condition.
pub fn linkage_quotient_matrix(ideal: &[Monomial], k: u32) -> Result<IntMatrix> {
    let pure = |i: usize| {
        ideal
            .iter()
            .filter(|g| g.support().eq(std::iter::once(i)))
            .map(|g| g.exps()[i])
            .min()
    };
    let (ax, by) = (
        pure(0).ok_or(Error::NotArtinian(0))?,
        pure(1).ok_or(Error::NotArtinian(1))?,
    );
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for g in ideal {
        let (a, b, c) = (g.exps()[0], g.exps()[1], g.exps()[2]);
        if (a, b, c) == (ax, 0, 0) || (a, b, c) == (0, by, 0) {
            continue;
        }
        // x^a y^b (x+y)^c; coefficient of x^{deg-t} y^t
        let deg = a + b + c;
        let coef = |t: i64| -> i64 {
            let s = t - b as i64;
            if s < 0 || s > c as i64 {
                0
            } else {
                crate::macaulay::binom_u64(c as u64, s as u64) as i64
            }
        };
        let total = deg + k;
        for t in 0..=total {
            if total - t < ax && t < by {
                rows.push((0..=k as i64).map(|i| coef(t as i64 - i)).collect());
            }
        }
    }
    Ok(IntMatrix::from_rows(&rows))
}

/// Monomial ideal of the characteristic example: `(x^10, y^7, z^7, x^4 y^3, x^4 z^5)`.
pub fn char_example_ideal() -> Vec<Monomial> {
    vec![
        mono(&[10, 0, 0]),
        mono(&[0, 7, 0]),
        mono(&[0, 0, 7]),
        mono(&[4, 3, 0]),
        mono(&[4, 0, 5]),
    ]
}

/// The shape the WLP forces on a level Hilbert function.
pub fn wlp_shape_ok(h: &IntSeq) -> bool {
    sequence::strict_unimodal_wlp_shape(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn s(v: &[u64]) -> IntSeq {
        IntSeq::new(v.to_vec())
    }

    #[test]
    fn ideal_complement_matches_char_example() {
        let a = LevelAlgebra::from_ideal(&char_example_ideal()).unwrap();
        assert_eq!(
            a.hilbert(),
            s(&[1, 3, 6, 10, 15, 21, 28, 33, 36, 36, 32, 26, 19, 12, 6, 2])
        );
        assert!(a.is_level());
        assert_eq!(a.socle_type(), 2);
        let mut gens = char_example_ideal();
        gens.sort();
        assert_eq!(a.ideal_generators(), gens);
    }

    #[test]
    fn from_inverse_system_examples() {
        let ci = LevelAlgebra::from_inverse_system(&[mono(&[1, 1, 1])]).unwrap();
        assert_eq!(ci.hilbert(), ci_hilbert(&[2, 2, 2]));
        let r = FailureFamily::FourVarType2.build().unwrap();
        assert_eq!(r.hilbert(), s(&[1, 4, 10, 16, 15, 8, 2]));
        assert_eq!(
            LevelAlgebra::from_inverse_system(&[mono(&[2, 0]), mono(&[1, 0])]),
            Err(Error::MixedDegrees)
        );
        assert!(matches!(
            LevelAlgebra::from_ideal(&[mono(&[2, 0])]),
            Err(Error::NotArtinian(1))
        ));
    }

    #[test]
    fn ci_examples() {
        assert_eq!(ci_hilbert(&[2, 3, 3]), s(&[1, 3, 5, 5, 3, 1]));
        assert_eq!(ci_hilbert(&[1]), s(&[1]));
        for a in 1..8u32 {
            for b in 1..8u32 {
                let h = ci_hilbert(&[a + 1, b + 1]);
                for j in 0..=(a + b) as i64 {
                    let closed = (j + 1)
                        .min(a as i64 + 1)
                        .min(b as i64 + 1)
                        .min(a as i64 + b as i64 + 1 - j);
                    assert_eq!(h.get(j as usize) as i64, closed);
                }
            }
        }
        // (x^2, z^3) in k[x,y,z]
        assert_eq!(ci_hilbert_value(&[2, 3], 1, 10), 6);
        assert_eq!(ci_hilbert_value(&[2, 3], 1, 1), 3);
    }

    #[test]
    fn mult_matrix_structure() {
        let a = LevelAlgebra::from_inverse_system(&[mono(&[2, 1])]).unwrap();
        let m = a.mult_matrix(1, 1).unwrap();
        // x, y -> x^2, xy
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 2);
        let total: BigInt = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).clone())
            .sum();
        // y*y = y^2 is outside the inverse system of x^2 y
        assert_eq!(total, BigInt::from(3));
        assert!(a.mult_matrix(1, 3).is_err());
        let l2 = LevelAlgebra::from_inverse_system(&[mono(&[2, 2])])
            .unwrap()
            .mult_matrix(2, 0)
            .unwrap();
        let col: Vec<i64> = (0..l2.rows())
            .map(|i| i64::try_from(l2.get(i, 0).clone()).unwrap())
            .collect();
        let mut sorted = col.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 2]);
    }

    #[test]
    fn brenner_kaid_fails_injectivity() {
        let a = FailureFamily::TypeD { d: 3 }.build().unwrap();
        assert_eq!(a.hilbert(), s(&[1, 3, 6, 6, 3]));
        let r = a.wlp_report();
        assert!(!r.wlp_char0);
        assert_eq!(r.first_failure_degree, Some(2));
        assert!(r.mode.fails_injectivity());
        assert!(r.fails_in_all_characteristics);
    }

    #[test]
    fn char_example_primes() {
        let a = LevelAlgebra::from_ideal(&char_example_ideal()).unwrap();
        let r = a.wlp_report();
        assert!(r.wlp_char0);
        assert_eq!(r.failing_primes, vec![2, 5, 7]);
        for p in [2u64, 3, 5, 7, 11, 13, 257] {
            assert_eq!(
                a.has_max_rank_in_char(1, p),
                ![2, 5, 7].contains(&p),
                "p={p}"
            );
        }
        let m = linkage_quotient_matrix(&char_example_ideal(), 6).unwrap();
        assert_eq!((m.rows(), m.cols()), (7, 7));
        assert_eq!(m.determinant().magnitude(), &70u32.into());
    }

    #[test]
    fn slp_counterexample() {
        let a = FailureFamily::SlpCounterexample.build().unwrap();
        assert_eq!(a.hilbert(), s(&[1, 3, 6, 10, 13, 13, 10, 6, 2]));
        assert!(a.wlp_report().wlp_char0);
        let m = a.mult_matrix(3, 3).unwrap();
        assert_eq!((m.rows(), m.cols(), m.rank()), (10, 10, 9));
        let rep = &a.slp_report()[2];
        assert!(!rep.wlp_char0);
        let form =
            classify_type2_3vars(&a.socle_generators()[0], &a.socle_generators()[1]).unwrap();
        assert!(matches!(form, Type2Form::B { .. }));
    }

    #[test]
    fn failure_families() {
        let s4 = FailureFamily::Surjectivity { r: 4 }.build().unwrap();
        let rep = s4.wlp_report();
        assert_eq!(s4.hilbert(), s(&[1, 4, 10, 18, 24, 24, 17, 8, 2]));
        assert_eq!(rep.first_failure_degree, Some(4));
        assert_eq!(rep.mode, FailureMode::BijectivityFailure);
        for r in 5..=6 {
            let fam = FailureFamily::Surjectivity { r };
            let rep = fam.build().unwrap().wlp_report();
            assert_eq!(
                Some((rep.first_failure_degree.unwrap(), rep.mode)),
                fam.expected_failure(),
                "r={r}"
            );
        }
        assert!(sequence::is_flawless(&s4.hilbert()));
        assert_eq!(sequence::maxima_count(&s4.hilbert()), 1);
        let d4 = FailureFamily::TypeD { d: 4 }.build().unwrap();
        assert_eq!(d4.hilbert(), s(&[1, 3, 5, 7, 7, 4]));
        assert!(!d4.wlp_report().wlp_char0);
        let t3 = FailureFamily::FourVarType3.build().unwrap();
        assert_eq!(t3.hilbert(), s(&[1, 4, 10, 18, 25, 26, 20, 10, 3]));
        let rep = t3.wlp_report();
        assert_eq!(
            (rep.first_failure_degree, rep.mode),
            (Some(4), FailureMode::InjectivityFailure)
        );
        let inj = FailureFamily::Injectivity { r: 4, n: 5 }.build().unwrap();
        let rep = inj.wlp_report();
        assert_eq!(rep.first_failure_degree, Some(6));
        assert_eq!(rep.mode, FailureMode::InjectivityFailure);
        let base = FailureFamily::Surjectivity { r: 3 }.build().unwrap();
        assert_eq!(base.hilbert(), s(&[1, 3, 6, 9, 9, 6, 2]));
        assert!(base.wlp_report().wlp_char0);
        assert!(FailureFamily::Surjectivity { r: 2 }.build().is_err());
        assert!(FailureFamily::Injectivity { r: 5, n: 5 }.build().is_err());
    }

    #[test]
    fn type_d_general() {
        assert_eq!(type_d_params(5), (1, 3, 5));
        for d in 5..=9 {
            let a = FailureFamily::TypeD { d }.build().unwrap();
            assert!(a.is_level(), "d={d}");
            assert_eq!(a.socle_type(), d);
            let rep = a.wlp_report();
            let (deg, mode) = FailureFamily::TypeD { d }.expected_failure().unwrap();
            assert_eq!(rep.first_failure_degree, Some(deg), "d={d}");
            assert!(
                mode.fails_injectivity() && rep.mode.fails_injectivity(),
                "d={d}"
            );
            let h = a.hilbert();
            let n = type_d_params(d).0 as usize;
            assert!(h.get(2 * n + 1) <= h.get(2 * n + 2));
        }
    }

    #[test]
    fn lift_preserves_failure() {
        let base = FailureFamily::TypeD { d: 3 }.build().unwrap();
        let l = lift(&base).unwrap();
        assert_eq!(l.socle_type(), 4);
        assert_eq!(l.ambient(), 4);
        assert_eq!(l.socle_degree(), base.socle_degree());
        let (a, b) = (base.wlp_report(), l.wlp_report());
        assert_eq!(a.first_failure_degree, b.first_failure_degree);
    }

    #[test]
    fn answernd_witnesses() {
        for r in 1..=5 {
            for d in 1..=4 {
                if always_wlp(r, d) {
                    assert!(wlp_failure_witness(r, d).is_err());
                    continue;
                }
                let (a, how) = wlp_failure_witness(r, d).unwrap();
                assert!(a.is_level(), "{how}");
                assert_eq!(
                    (a.order_ideal().codimension(), a.socle_type()),
                    (r, d),
                    "{how}"
                );
                assert!(!a.wlp_report().wlp_char0, "{how}");
            }
        }
    }

    #[test]
    fn type2_forms_and_formula() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let (p, q) = random_type2_pair(&mut rng, 5);
            let direct = LevelAlgebra::from_inverse_system(&[p.clone(), q.clone()])
                .unwrap()
                .hilbert();
            assert_eq!(type2_hilbert(&p, &q).unwrap().trim(), direct);
            let form = classify_type2_3vars(&p, &q).unwrap();
            assert_eq!(form.hilbert(), direct, "{p:?} {q:?} {form:?}");
            match form {
                Type2Form::A {
                    b, c, beta, gamma, ..
                } => assert_eq!(b - beta, c - gamma),
                Type2Form::B {
                    a,
                    b,
                    c,
                    alpha,
                    beta,
                    gamma,
                    ..
                } => {
                    assert_eq!(a - alpha, (b - beta) + (c - gamma))
                }
                Type2Form::Type1 => unreachable!(),
            }
        }
        assert_eq!(
            type2_hilbert(&mono(&[1, 2]), &mono(&[2, 1])).unwrap(),
            s(&[1, 2, 3, 2])
        );
        assert_eq!(
            classify_type2_3vars(&mono(&[1, 1, 1]), &mono(&[1, 1, 1])).unwrap(),
            Type2Form::Type1
        );
        assert!(type2_hilbert(&mono(&[1, 2]), &mono(&[2, 2])).is_err());
    }

    #[test]
    fn basic_double_link_case_a() {
        // Case A with (a, b, c, β, γ) = (3, 5, 4, 2, 1): b - β = c - γ = 3
        let (a, b, c, beta, gamma) = (3u32, 5u32, 4u32, 2u32, 1u32);
        let h_i = ci_hilbert(&[a, b - beta, gamma]);
        let h_j = |j: i64| Some(ci_hilbert_value(&[a, c], 1, j));
        let h = basic_double_link_hf(&h_i, &h_j, beta, 20).unwrap();
        let form = Type2Form::A {
            a,
            b,
            c,
            beta,
            gamma,
            perm: [0, 1, 2],
        };
        assert_eq!(h, form.hilbert());
        let same = basic_double_link_hf(&h_i, &|j| Some(h_i.get(j as usize)), 0, 10).unwrap();
        assert_eq!(same, h_i.trim());
        let short = |j: i64| if j < 3 { Some(1) } else { None };
        assert_eq!(
            basic_double_link_hf(&h_i, &short, 1, 5),
            Err(Error::InsufficientTable(3))
        );
    }

    #[test]
    fn two_variable_algebras_have_slp() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let e = rng.gen_range(1..9);
            let a = random_monomial(&mut rng, 2, e);
            let alg = LevelAlgebra::from_inverse_system(&[a]).unwrap();
            assert!(alg.slp_report().iter().all(|r| r.wlp_char0));
        }
    }

    #[test]
    fn random_monomials_have_the_right_shape() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..6);
            let e = rng.gen_range(0..9);
            let m = random_monomial(&mut rng, n, e);
            assert_eq!((m.ambient(), m.degree()), (n, e));
        }
    }
}
