//! Direct evaluation of the explicit expectation formulas.
//!
//! Everything except [`expected_length_a_s_bm`] is evaluated exactly over the
//! rationals, with `0^0 = 1`, so each formula is also correct at `t = 0`.
//!
//! Index conventions differ between formulas and are spelled out per function:
//! the reflection-walk formulas for type A take the number of *letters*, the
//! adjacent-transposition formulas take the number of *generators*.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::elements::{Family, Gens, GroupSpec};
use crate::error::{Error, Result};
use crate::lengths::Measure;
use crate::rational::{binomial, frac, int, pow, to_f64, Rational};

/// Dihedral parameter `m ∈ {2, 3, …, ∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DihedralOrder {
    Finite(u64),
    Infinite,
}

impl DihedralOrder {
    fn check(self) -> Result<Self> {
        match self {
            DihedralOrder::Finite(m) if m < 2 => {
                Err(Error::InvalidSpec(format!("I2({m}) needs m >= 2")))
            }
            _ => Ok(self),
        }
    }
}

impl fmt::Display for DihedralOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralOrder::Finite(m) => write!(f, "{m}"),
            DihedralOrder::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for DihedralOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(DihedralOrder::Infinite),
            _ => s
                .parse()
                .map(DihedralOrder::Finite)
                .map_err(|_| Error::InvalidSpec(format!("bad dihedral parameter {s:?}"))),
        }
    }
}

fn sgn(x: i64) -> i64 {
    x.signum()
}

fn big(x: BigInt) -> Rational {
    Rational::from_integer(x)
}

fn check_letters(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank(format!(
            "type A needs at least 2 letters, got {n}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Type A, all transpositions

/// Expected number of inversions after `t` random transpositions on
/// `n_letters` letters (the group A_{n-1}).
pub fn expected_length_a_t(n_letters: u64, t: u64) -> Result<Rational> {
    check_letters(n_letters)?;
    let n = n_letters as i64;
    let slow = pow(&(int(1) - frac(2, n - 1)), t);
    let fast = pow(&(int(1) - frac(4, n - 1)), t);
    Ok(frac(n * (n - 1), 4)
        - frac((n + 1) * (n - 1), 6) * slow
        - frac((n - 1) * (n - 2), 12) * fast)
}

/// Probability that `i < j` is an inversion of the walk after `t` steps.
pub fn pair_prob_a(n_letters: u64, i: i64, j: i64, t: u64) -> Result<Rational> {
    check_letters(n_letters)?;
    let n = n_letters as i64;
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::IndexError {
            i,
            j,
            reason: "need 1 <= i < j <= n",
        });
    }
    let c = frac(j - i, n);
    let slow = pow(&(int(1) - frac(2, n - 1)), t);
    let fast = pow(&(int(1) - frac(4, n - 1)), t);
    Ok(frac(1, 2) - &c * slow + (c - frac(1, 2)) * fast)
}

// ---------------------------------------------------------------------------
// Types B and D

fn b_bases(n: i64) -> (Rational, Rational) {
    (int(1) - frac(2, n), int(1) - frac(4, n) + frac(2, n * n))
}

fn d_bases(n: i64) -> (Rational, Rational) {
    (int(1) - frac(2, n), int(1) - frac(4, n))
}

pub fn expected_length_b_t(n: u64, t: u64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::InvalidRank("B_n needs n >= 1".into()));
    }
    let n = n as i64;
    let (slow, fast) = b_bases(n);
    Ok(
        frac(n * n, 2)
            - frac(n * (n + 1), 3) * pow(&slow, t)
            - frac(n * (n - 2), 6) * pow(&fast, t),
    )
}

/// The generic off-antidiagonal probability shared by B and D, for `j > |i|`.
fn signed_pair_prob(n: i64, i: i64, j: i64, slow_t: &Rational, fast_t: &Rational) -> Rational {
    let c = frac(j - i - 1 + sgn(i), 2 * (n - 1));
    frac(1, 2) - &c * slow_t + (c - frac(1, 2)) * fast_t
}

/// Probability that `π_i > π_j` after `t` random reflections in B_n.
///
/// Accepts either `j > |i|`, or the antidiagonal pair `(i, j) = (-k, k)` with
/// `1 <= k <= n`. For `n = 1` only the antidiagonal pair exists.
pub fn pair_prob_b(n: u64, i: i64, j: i64, t: u64) -> Result<Rational> {
    let nn = n as i64;
    if n >= 1 && i == -j && 1 <= j && j <= nn {
        return Ok(frac(1, 2) - frac(1, 2) * pow(&(int(1) - frac(2, nn)), t));
    }
    if i == 0 || j <= i.abs() || j > nn {
        return Err(Error::IndexError {
            i,
            j,
            reason: "need j > |i| or (i, j) = (-k, k)",
        });
    }
    let (slow, fast) = b_bases(nn);
    Ok(signed_pair_prob(nn, i, j, &pow(&slow, t), &pow(&fast, t)))
}

pub fn expected_length_d_t(n: u64, t: u64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidRank(format!(
            "D_n needs n >= 2 for a nonempty reflection set, got {n}"
        )));
    }
    let n = n as i64;
    let (slow, fast) = d_bases(n);
    Ok(frac(n * (n - 1), 2)
        - frac(n * (2 * n - 1), 6) * pow(&slow, t)
        - frac(n * (n - 2), 6) * pow(&fast, t))
}

/// Probability that `π_i > π_j` after `t` random reflections in D_n, `j > |i|`.
pub fn pair_prob_d(n: u64, i: i64, j: i64, t: u64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidRank(format!("D_n needs n >= 2, got {n}")));
    }
    let nn = n as i64;
    if i == 0 || j <= i.abs() || j > nn {
        return Err(Error::IndexError {
            i,
            j,
            reason: "need j > |i|",
        });
    }
    let (slow, fast) = d_bases(nn);
    Ok(signed_pair_prob(nn, i, j, &pow(&slow, t), &pow(&fast, t)))
}

/// Batch form of [`pair_prob_b`] / [`pair_prob_d`] / [`pair_prob_a`] for a
/// fixed `(n, t)`. The probability depends on `(i, j)` only through a small
/// integer offset, so every value is computed once up front.
pub struct PairProbs {
    family: Family,
    n: i64,
    /// Indexed by `j − i` for A and by `j − i − 1 + sgn(i)` for B and D.
    by_offset: Vec<Rational>,
    antidiagonal: Rational,
}

impl PairProbs {
    pub fn new(family: Family, n: u64, t: u64) -> Result<Self> {
        let nn = n as i64;
        let (slow, fast) = match family {
            Family::A => {
                check_letters(n)?;
                (int(1) - frac(2, nn - 1), int(1) - frac(4, nn - 1))
            }
            Family::B if n >= 1 => b_bases(nn),
            Family::D if n >= 2 => d_bases(nn),
            Family::B | Family::D => return Err(Error::InvalidRank(format!("{family}{n}"))),
            other => return Err(Error::UnsupportedFamily(other)),
        };
        let (slow_t, fast_t) = (pow(&slow, t), pow(&fast, t));
        let by_offset = match family {
            Family::A => (0..nn)
                .map(|d| {
                    let c = frac(d, nn);
                    frac(1, 2) - &c * &slow_t + (c - frac(1, 2)) * &fast_t
                })
                .collect(),
            _ if nn < 2 => Vec::new(),
            _ => (0..2 * nn)
                .map(|d| {
                    let c = frac(d, 2 * (nn - 1));
                    frac(1, 2) - &c * &slow_t + (c - frac(1, 2)) * &fast_t
                })
                .collect(),
        };
        let antidiagonal = frac(1, 2) - frac(1, 2) * &slow_t;
        Ok(PairProbs {
            family,
            n: nn,
            by_offset,
            antidiagonal,
        })
    }

    /// Probability that `π_i > π_j`, over the same index sets as the
    /// single-pair functions.
    pub fn inversion(&self, i: i64, j: i64) -> Result<Rational> {
        let n = self.n;
        match self.family {
            Family::A => {
                if !(1 <= i && i < j && j <= n) {
                    return Err(Error::IndexError {
                        i,
                        j,
                        reason: "need 1 <= i < j <= n",
                    });
                }
                Ok(self.by_offset[(j - i) as usize].clone())
            }
            _ => {
                if self.family == Family::B && i == -j && 1 <= j && j <= n {
                    return Ok(self.antidiagonal.clone());
                }
                if i == 0 || j <= i.abs() || j > n || n < 2 {
                    return Err(Error::IndexError {
                        i,
                        j,
                        reason: "need j > |i|",
                    });
                }
                Ok(self.by_offset[(j - i - 1 + sgn(i)) as usize].clone())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Dihedral groups

/// Expected length after `t` random reflections in I2(m). The formula needs
/// `t >= 1`; `t = 0` returns 0 (the empty product).
pub fn expected_length_i2_t(m: u64, t: u64) -> Result<Rational> {
    DihedralOrder::Finite(m).check()?;
    if t == 0 {
        return Ok(Rational::zero());
    }
    let m = m as i64;
    if m % 2 == 0 {
        Ok(frac(m, 2))
    } else {
        let sign = if t.is_multiple_of(2) { 1 } else { -1 };
        Ok(frac(m, 2) - frac(sign, 2 * m))
    }
}

/// Expected absolute length after `t` random simple reflections in I2(m),
/// `m` possibly infinite.
pub fn expected_abslength_i2_s(m: DihedralOrder, t: u64) -> Result<Rational> {
    m.check()?;
    if t % 2 == 1 {
        return Ok(Rational::one());
    }
    let t = t as i64;
    let kmax = match m {
        DihedralOrder::Finite(m) => t / (2 * m as i64),
        DihedralOrder::Infinite => 0,
    };
    let step = match m {
        DihedralOrder::Finite(m) => m as i64,
        DihedralOrder::Infinite => 0,
    };
    let sum: BigInt = (-kmax..=kmax).map(|k| binomial(t, t / 2 - k * step)).sum();
    // 1 / 2^{t-1}, written as 2 / 2^t so that t = 0 needs no special case
    Ok(int(2) - big(sum) * Rational::new(BigInt::from(2), BigInt::one() << t as usize))
}

/// Expected absolute length after `t` random reflections in I2(m). Needs
/// `t >= 1`; `t = 0` returns 0.
pub fn expected_abslength_i2_t(m: u64, t: u64) -> Result<Rational> {
    DihedralOrder::Finite(m).check()?;
    Ok(match t {
        0 => Rational::zero(),
        t if t % 2 == 1 => Rational::one(),
        _ => int(2) - frac(2, m as i64),
    })
}

/// Sum of `C(a, b - k·step)` over `k >= k0` while the lower index is nonnegative.
fn binomial_tail(a: i64, b: i64, step: i64, k0: i64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut k = k0;
    loop {
        let lower = b - k * step;
        if lower < 0 {
            break;
        }
        acc += binomial(a, lower);
        k += 1;
    }
    acc
}

/// Expected length after `t` random simple reflections in I2(m), `m`
/// possibly infinite.
///
/// Sums, over the steps `r < t`, the probability of sitting at the identity
/// minus the probability of sitting at the longest element. For odd `m` the
/// longest element is reached at odd steps `2j - 1`, with probability
/// `2^{-(2j-1)} Σ_{k∈Z} C(2j-1, (2j-1-m)/2 - km) = (4/4^j) Σ_{k≥0} …`.
pub fn expected_length_i2_s_troili(m: DihedralOrder, t: u64) -> Result<Rational> {
    m.check()?;
    let t = t as i64;
    let mut total = Rational::zero();
    for j in 0..=(t - 1).div_euclid(2) {
        let mut returns = binomial(2 * j, j);
        if let DihedralOrder::Finite(m) = m {
            returns += 2 * binomial_tail(2 * j, j, m as i64, 1);
        }
        total += big(returns) / big(BigInt::one() << (2 * j) as usize);
    }
    let DihedralOrder::Finite(m) = m else {
        return Ok(total);
    };
    let m = m as i64;
    let mut longest = Rational::zero();
    if m % 2 == 0 {
        for j in 1..=(t - 1).div_euclid(2) {
            let s = binomial_tail(2 * j, j - m / 2, m, 0);
            longest += big(2 * s) / big(BigInt::one() << (2 * j) as usize);
        }
    } else {
        for j in 1..=t / 2 {
            if 2 * j - 1 < m {
                continue;
            }
            let s = binomial_tail(2 * j - 1, (2 * j - 1 - m) / 2, m, 0);
            longest += big(4 * s) / big(BigInt::one() << (2 * j) as usize);
        }
    }
    Ok(total - longest)
}

// ---------------------------------------------------------------------------
// Type A, adjacent transpositions

fn neg_one_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The lattice-walk coefficient of the adjacent-transposition formula:
///
/// `g_{s,n} = Σ_{l=0}^{n} Σ_{k≥0} (-1)^k (n-2l) C(2c-1, c+l+k(n+1))
///            · Σ_{j∈Z} (-1)^j C(2f, f+j(n+1))`
///
/// with `c = ⌈s/2⌉` and `f = ⌊s/2⌋`.
fn eriksen_g(s: i64, n: i64) -> BigInt {
    let c = (s + 1) / 2;
    let f = s / 2;
    let mut first = BigInt::zero();
    for l in 0..=n {
        let mut k = 0;
        while c + l + k * (n + 1) < 2 * c {
            first += neg_one_pow(k) * (n - 2 * l) * binomial(2 * c - 1, c + l + k * (n + 1));
            k += 1;
        }
    }
    // support of the j-sum: |j|(n+1) <= f
    let jmax = f / (n + 1);
    let second: BigInt = (-jmax..=jmax)
        .map(|j| neg_one_pow(j) * binomial(2 * f, f + j * (n + 1)))
        .sum();
    first * second
}

/// Expected number of inversions after `t` random adjacent transpositions in
/// A_n, i.e. on `n_gens + 1` letters.
pub fn expected_length_a_s_eriksen(n_gens: u64, t: u64) -> Result<Rational> {
    if n_gens < 1 {
        return Err(Error::InvalidRank("A_n needs n >= 1 generators".into()));
    }
    let n = n_gens as i64;
    let t = t as i64;
    let g: Vec<BigInt> = (0..=t)
        .map(|s| {
            if s == 0 {
                BigInt::zero()
            } else {
                eriksen_g(s, n)
            }
        })
        .collect();
    let mut total = Rational::zero();
    let mut n_pow = BigInt::one();
    for r in 1..=t {
        n_pow *= n;
        let mut inner = BigInt::zero();
        for s in 1..=r {
            let sign = neg_one_pow(r - s);
            inner += binomial(r - 1, s - 1)
                * sign
                * (BigInt::one() << (2 * (r - s)) as usize)
                * &g[s as usize];
        }
        total += Rational::new(binomial(t, r) * inner, n_pow.clone());
    }
    Ok(total)
}

/// Trigonometric form of [`expected_length_a_s_eriksen`], in double precision
/// with compensated summation. Same `n_gens` convention.
pub fn expected_length_a_s_bm(n_gens: u64, t: u64) -> Result<f64> {
    if n_gens < 1 {
        return Err(Error::InvalidRank("A_n needs n >= 1 generators".into()));
    }
    let n = n_gens as f64;
    // α_{n−k} = π − α_k: mirror so that cos_j + cos_{n−j} is exactly zero,
    // since those terms are multiplied by bases of modulus > 1 when n ≤ 3
    let (cos, sin2): (Vec<f64>, Vec<f64>) = (0..=n_gens)
        .map(|k| {
            let (k, sign) = if 2 * k > n_gens {
                (n_gens - k, -1.0)
            } else {
                (k, 1.0)
            };
            let a = (2 * k + 1) as f64 * PI / (2.0 * n + 2.0);
            (sign * a.cos(), a.sin().powi(2))
        })
        .unzip();
    let exp = i32::try_from(t).ok();
    // Neumaier summation
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 0..=n_gens as usize {
        for j in 0..=n_gens as usize {
            let base = 1.0 - 4.0 / n * (1.0 - cos[j] * cos[k]);
            let decay = match exp {
                Some(e) => base.powi(e),
                None => base.powf(t as f64),
            };
            let term = (cos[j] + cos[k]).powi(2) / (sin2[j] * sin2[k]) * decay;
            let next = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - next) + term;
            } else {
                comp += (term - next) + sum;
            }
            sum = next;
        }
    }
    Ok(n * (n + 1.0) / 4.0 - (sum + comp) / (8.0 * (n + 1.0).powi(2)))
}

// ---------------------------------------------------------------------------
// G(r,1,n), absolute length

/// Expected absolute length after `t` random reflections in G(r,1,n).
pub fn expected_abslength_g_eh(r: u64, n: u64, t: u64) -> Result<Rational> {
    if r < 1 || n < 1 || (r == 1 && n == 1) {
        return Err(Error::InvalidRank(format!(
            "G({r},1,{n}) needs r, n >= 1, not both 1"
        )));
    }
    let (r, n) = (r as i64, n as i64);
    let c2 = |x: i64| binomial(x, 2);
    let den = BigInt::from(r) * binomial(n + 1, 2) - n;
    let mut value = int(n) - (1..=n).map(|k| frac(1, k)).sum::<Rational>() / int(r);

    let mut a_part = Rational::zero();
    for p in 1..n {
        for q in 1..=p.min(n - p) {
            let coef = Rational::new(
                BigInt::from(neg_one_pow(n - p - q + 1) * (p - q + 1) * (p - q + 1))
                    * binomial(n, p)
                    * binomial(n - p - 1, q - 1),
                BigInt::from((n - q + 1) * (n - q + 1) * (n - p)),
            );
            let num = BigInt::from(r) * (c2(p) + c2(q - 1) - c2(n - p - q + 2) + n) - n;
            a_part += coef * pow(&Rational::new(num, den.clone()), t);
        }
    }
    value += a_part / int(r);

    let mut b_part = Rational::zero();
    for p in 0..n {
        for q in 1..=n - p {
            let coef = Rational::new(
                BigInt::from(neg_one_pow(n - p - q + 1))
                    * binomial(n, p)
                    * binomial(n - p - 1, q - 1),
                BigInt::from(n - p),
            );
            let num = BigInt::from(r) * (c2(p) + c2(q) - c2(n - p - q + 1) + p) - n;
            b_part += coef * pow(&Rational::new(num, den.clone()), t);
        }
    }
    value += b_part * frac(r - 1, r);
    Ok(value)
}

// ---------------------------------------------------------------------------
// The shared B/D recurrence

/// Closed form of `v^{(t)}` for the recurrence `v ↦ x·v + Qv` on functions
/// over `{(i,j) : |i| ≠ |j|}` with `v^{(0)}_{i,j} = sgn(j - i)`.
pub fn lemma_bd_v(n: u64, x: &Rational, t: u64, i: i64, j: i64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidRank(format!(
            "the B/D recurrence needs n >= 2, got {n}"
        )));
    }
    crate::elements::IndexPair::new(n, i, j)?;
    let n = n as i64;
    let c = frac(j - i - sgn(j) + sgn(i), n - 1);
    let grow = pow(&(x + int(2 * n - 2)), t);
    let stay = pow(x, t);
    Ok(&c * grow + (int(sgn(j - i)) - c) * stay)
}

// ---------------------------------------------------------------------------
// Dispatch

/// Which formula to use when several apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    Auto,
    Eriksen,
    Bm,
    Troili,
    Eh,
    /// The family's own closed form.
    Direct,
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Formula::Auto),
            "eriksen" => Ok(Formula::Eriksen),
            "bm" => Ok(Formula::Bm),
            "troili" => Ok(Formula::Troili),
            "eh" => Ok(Formula::Eh),
            "paper" | "direct" => Ok(Formula::Direct),
            other => Err(Error::InvalidSpec(format!("unknown formula {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => to_f64(q),
            Value::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Float(_) => None,
        }
    }
}

/// An expectation together with what it is the expectation of.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationResult {
    pub value: Value,
    pub family: Family,
    /// `n` of the group, or `None` for I2(∞).
    pub param: Option<u64>,
    pub r: u64,
    pub gens: Gens,
    pub measure: Measure,
    pub t: u64,
    pub method: String,
}

impl ExpectationResult {
    pub fn new(
        spec: &GroupSpec,
        gens: Gens,
        measure: Measure,
        t: u64,
        value: Value,
        method: impl Into<String>,
    ) -> Self {
        ExpectationResult {
            value,
            family: spec.family,
            param: Some(spec.n),
            r: spec.r,
            gens,
            measure,
            t,
            method: method.into(),
        }
    }
}

/// Evaluates the closed form for `(spec, gens, measure)`, if one exists.
pub fn closed_form(
    spec: &GroupSpec,
    gens: Gens,
    measure: Measure,
    t: u64,
    formula: Formula,
) -> Result<ExpectationResult> {
    spec.validate()?;
    let n = spec.n;
    let none = || Error::Unsupported(format!("no closed form for {spec}, {gens}, {measure}"));
    let wrong = |f: Formula| {
        Error::Unsupported(format!(
            "formula {f:?} does not apply to {spec}, {gens}, {measure}"
        ))
    };
    let pick = |allowed: &[Formula], default: Formula| -> Result<Formula> {
        match formula {
            Formula::Auto => Ok(default),
            f if allowed.contains(&f) => Ok(f),
            f => Err(wrong(f)),
        }
    };
    use Family::*;
    use Gens::*;
    use Measure::*;
    let (value, method) = match (spec.family, gens, measure) {
        (A, AllReflections, Length) => {
            pick(&[Formula::Direct], Formula::Direct)?;
            (
                Value::Exact(expected_length_a_t(n, t)?),
                "closed:typeA-reflections",
            )
        }
        (A, Simple, Length) => match pick(&[Formula::Eriksen, Formula::Bm], Formula::Eriksen)? {
            Formula::Bm => (Value::Float(expected_length_a_s_bm(n - 1, t)?), "closed:bm"),
            _ => (
                Value::Exact(expected_length_a_s_eriksen(n - 1, t)?),
                "closed:eriksen",
            ),
        },
        (A, AllReflections, AbsLength) => {
            pick(&[Formula::Eh], Formula::Eh)?;
            (Value::Exact(expected_abslength_g_eh(1, n, t)?), "closed:eh")
        }
        (B, AllReflections, Length) => {
            pick(&[Formula::Direct], Formula::Direct)?;
            (
                Value::Exact(expected_length_b_t(n, t)?),
                "closed:typeB-reflections",
            )
        }
        (B, AllReflections, AbsLength) => {
            pick(&[Formula::Eh], Formula::Eh)?;
            (Value::Exact(expected_abslength_g_eh(2, n, t)?), "closed:eh")
        }
        (D, AllReflections, Length) => {
            pick(&[Formula::Direct], Formula::Direct)?;
            (
                Value::Exact(expected_length_d_t(n, t)?),
                "closed:typeD-reflections",
            )
        }
        (I2, AllReflections, Length) => {
            pick(&[Formula::Direct], Formula::Direct)?;
            (
                Value::Exact(expected_length_i2_t(n, t)?),
                "closed:dihedral-T-length",
            )
        }
        (I2, AllReflections, AbsLength) => {
            pick(&[Formula::Direct], Formula::Direct)?;
            (
                Value::Exact(expected_abslength_i2_t(n, t)?),
                "closed:dihedral-T-abslength",
            )
        }
        (I2, Simple, AbsLength) => {
            pick(&[Formula::Direct], Formula::Direct)?;
            (
                Value::Exact(expected_abslength_i2_s(DihedralOrder::Finite(n), t)?),
                "closed:dihedral-S-abslength",
            )
        }
        (I2, Simple, Length) => {
            pick(&[Formula::Troili], Formula::Troili)?;
            (
                Value::Exact(expected_length_i2_s_troili(DihedralOrder::Finite(n), t)?),
                "closed:troili",
            )
        }
        (G, AllReflections, AbsLength) => {
            pick(&[Formula::Eh], Formula::Eh)?;
            (
                Value::Exact(expected_abslength_g_eh(spec.r, n, t)?),
                "closed:eh",
            )
        }
        _ => return Err(none()),
    };
    Ok(ExpectationResult::new(
        spec, gens, measure, t, value, method,
    ))
}

/// Closed forms for I2(∞), which has no finite element model.
pub fn closed_form_infinite_dihedral(
    gens: Gens,
    measure: Measure,
    t: u64,
) -> Result<ExpectationResult> {
    let (value, method) = match (gens, measure) {
        (Gens::Simple, Measure::Length) => (
            expected_length_i2_s_troili(DihedralOrder::Infinite, t)?,
            "closed:troili",
        ),
        (Gens::Simple, Measure::AbsLength) => (
            expected_abslength_i2_s(DihedralOrder::Infinite, t)?,
            "closed:dihedral-S-abslength",
        ),
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed form for I2(inf), {gens}, {measure}"
            )))
        }
    };
    Ok(ExpectationResult {
        value: Value::Exact(value),
        family: Family::I2,
        param: None,
        r: 1,
        gens,
        measure,
        t,
        method: method.into(),
    })
}

/// `value >= 0`, and `value <= ` the maximal length when measuring length.
pub fn within_bounds(spec: &GroupSpec, measure: Measure, value: &Rational) -> bool {
    if value.is_negative() {
        return false;
    }
    match (measure, spec.max_length()) {
        (Measure::Length, Some(max)) => *value <= int(max as i64),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_a_values() {
        assert_eq!(expected_length_a_t(2, 1).unwrap(), int(1));
        for n in 2..10 {
            assert_eq!(expected_length_a_t(n, 0).unwrap(), int(0));
        }
        // enumerated: 3 transpositions of S_3 have 1, 1, 3 inversions
        assert_eq!(expected_length_a_t(3, 1).unwrap(), frac(5, 3));
        assert_eq!(expected_length_a_t(3, 2).unwrap(), frac(4, 3));
        assert!(expected_length_a_t(1, 1).is_err());
    }

    #[test]
    fn type_a_pairs() {
        assert_eq!(pair_prob_a(5, 2, 4, 0).unwrap(), int(0));
        assert_eq!(pair_prob_a(2, 1, 2, 1).unwrap(), int(1));
        assert_eq!(pair_prob_a(3, 1, 2, 1).unwrap(), frac(2, 3));
        assert!(matches!(
            pair_prob_a(4, 3, 2, 1),
            Err(Error::IndexError { .. })
        ));
    }

    #[test]
    fn type_a_large_t_limit() {
        for n in 6..12u64 {
            let v = expected_length_a_t(n, 10_000).unwrap();
            let limit = frac((n * (n - 1)) as i64, 4);
            assert!(to_f64(&(v - limit)).abs() < 1e-6);
        }
    }

    #[test]
    fn type_b_values() {
        for n in 1..8 {
            assert_eq!(expected_length_b_t(n, 0).unwrap(), int(0));
        }
        assert_eq!(expected_length_b_t(1, 1).unwrap(), int(1));
        assert_eq!(expected_length_b_t(1, 2).unwrap(), int(0));
        // B-inversion counts of the four B_2 reflections: 1, 3, 1, 3
        assert_eq!(expected_length_b_t(2, 1).unwrap(), int(2));
        assert_eq!(pair_prob_b(2, -1, 1, 1).unwrap(), frac(1, 2));
        assert_eq!(pair_prob_b(3, -2, 2, 0).unwrap(), int(0));
        assert_eq!(pair_prob_b(2, 1, 2, 0).unwrap(), int(0));
        assert!(pair_prob_b(1, 1, 2, 1).is_err());
        assert!(pair_prob_b(3, 2, 1, 1).is_err());
        assert!(pair_prob_b(3, 1, -1, 1).is_err());
        assert_eq!(pair_prob_b(1, -1, 1, 1).unwrap(), int(1));
    }

    #[test]
    fn type_d_values() {
        for n in 2..8 {
            assert_eq!(expected_length_d_t(n, 0).unwrap(), int(0));
        }
        assert_eq!(expected_length_d_t(2, 1).unwrap(), int(1));
        assert_eq!(expected_length_d_t(2, 2).unwrap(), int(1));
        assert_eq!(pair_prob_d(2, 1, 2, 1).unwrap(), frac(1, 2));
        assert_eq!(pair_prob_d(4, -3, 4, 0).unwrap(), int(0));
        assert!(matches!(
            expected_length_d_t(1, 3),
            Err(Error::InvalidRank(_))
        ));
        assert!(pair_prob_d(3, -2, 2, 1).is_err());
    }

    #[test]
    fn pair_sum_identities() {
        for n in 2..=30i64 {
            let s: i64 = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| j - i)).sum();
            assert_eq!(s, n * (n * n - 1) / 6);
            let s: i64 = (1..=n)
                .flat_map(|j| (-j + 1..j).filter(|&i| i != 0).map(move |i| j - i))
                .sum();
            assert_eq!(s, 2 * n * (n * n - 1) / 3);
        }
    }

    #[test]
    fn pair_sums_equal_expected_length() {
        for t in 0..=10 {
            for n in 2..=8u64 {
                let probs = PairProbs::new(Family::A, n, t).unwrap();
                let mut sum = Rational::zero();
                for i in 1..=n as i64 {
                    for j in i + 1..=n as i64 {
                        sum += probs.inversion(i, j).unwrap();
                    }
                }
                assert_eq!(sum, expected_length_a_t(n, t).unwrap());

                for (family, expected) in [
                    (Family::B, expected_length_b_t(n, t)),
                    (Family::D, expected_length_d_t(n, t)),
                ] {
                    let probs = PairProbs::new(family, n, t).unwrap();
                    let nn = n as i64;
                    let mut sum = Rational::zero();
                    for j in 1..=nn {
                        for i in -j..j {
                            if i == 0 || (family == Family::D && i == -j) {
                                continue;
                            }
                            sum += probs.inversion(i, j).unwrap();
                        }
                    }
                    assert_eq!(sum, expected.unwrap(), "{family}{n} t={t}");
                }
            }
        }
    }

    #[test]
    fn pair_probs_are_probabilities() {
        for n in 2..=9u64 {
            for t in 0..=12 {
                let probs = PairProbs::new(Family::A, n, t).unwrap();
                for i in 1..=n as i64 {
                    for j in i + 1..=n as i64 {
                        let p = probs.inversion(i, j).unwrap();
                        assert!(p >= int(0) && p <= int(1));
                    }
                }
                for family in [Family::B, Family::D] {
                    let probs = PairProbs::new(family, n, t).unwrap();
                    for j in 1..=n as i64 {
                        for i in -j..j {
                            if let Ok(p) = probs.inversion(i, j) {
                                assert!(p >= int(0) && p <= int(1));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn translation_invariance_of_formula() {
        for n in 2..=10i64 {
            for t in 0..6 {
                for i in 1..=n {
                    for j in i + 1..=n {
                        for k in 1..=n - j {
                            assert_eq!(
                                pair_prob_a(n as u64, i, j, t).unwrap(),
                                pair_prob_a(n as u64, i + k, j + k, t).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dihedral_values() {
        assert_eq!(expected_length_i2_t(4, 7).unwrap(), int(2));
        assert_eq!(expected_length_i2_t(3, 1).unwrap(), frac(5, 3));
        assert_eq!(expected_length_i2_t(3, 2).unwrap(), frac(4, 3));
        assert_eq!(expected_length_i2_t(3, 0).unwrap(), int(0));

        assert_eq!(
            expected_abslength_i2_s(DihedralOrder::Finite(6), 5).unwrap(),
            int(1)
        );
        assert_eq!(
            expected_abslength_i2_s(DihedralOrder::Finite(2), 2).unwrap(),
            int(1)
        );
        assert_eq!(
            expected_abslength_i2_s(DihedralOrder::Infinite, 2).unwrap(),
            int(1)
        );
        assert_eq!(
            expected_abslength_i2_s(DihedralOrder::Finite(3), 0).unwrap(),
            int(0)
        );

        assert_eq!(expected_abslength_i2_t(5, 3).unwrap(), int(1));
        assert_eq!(expected_abslength_i2_t(2, 2).unwrap(), int(1));
        assert_eq!(expected_abslength_i2_t(3, 2).unwrap(), frac(4, 3));

        assert_eq!(
            expected_length_i2_s_troili(DihedralOrder::Finite(5), 0).unwrap(),
            int(0)
        );
        assert_eq!(
            expected_length_i2_s_troili(DihedralOrder::Finite(3), 2).unwrap(),
            int(1)
        );
        assert!(expected_length_i2_t(1, 2).is_err());
    }

    #[test]
    fn troili_infinite_m_is_line_walk() {
        // On the infinite dihedral group the walk over {s, t} is a simple
        // random walk on Z and the length is |position|.
        for t in 0..25u64 {
            let mut dist = vec![Rational::zero(); 2 * t as usize + 1];
            dist[t as usize] = int(1);
            for _ in 0..t {
                let mut next = vec![Rational::zero(); dist.len()];
                for (k, p) in dist.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    next[k - 1] += p * frac(1, 2);
                    next[k + 1] += p * frac(1, 2);
                }
                dist = next;
            }
            let e: Rational = dist
                .iter()
                .enumerate()
                .map(|(k, p)| p * int((k as i64 - t as i64).abs()))
                .sum();
            assert_eq!(
                expected_length_i2_s_troili(DihedralOrder::Infinite, t).unwrap(),
                e,
                "t={t}"
            );
            assert_eq!(
                expected_length_i2_s_troili(DihedralOrder::Finite(t + 2), t).unwrap(),
                e
            );
        }
    }

    #[test]
    fn eriksen_small_cases() {
        for n in 1..6 {
            assert_eq!(expected_length_a_s_eriksen(n, 0).unwrap(), int(0));
        }
        for t in 0..12 {
            let two_state = frac(1 - neg_one_pow(t as i64), 2);
            assert_eq!(expected_length_a_s_eriksen(1, t).unwrap(), two_state);
        }
    }

    #[test]
    fn bm_small_cases() {
        assert!(expected_length_a_s_bm(1, 2).unwrap().abs() < 1e-12);
        assert!((expected_length_a_s_bm(1, 3).unwrap() - 1.0).abs() < 1e-12);
        for n in 1..10 {
            assert!(expected_length_a_s_bm(n, 0).unwrap().abs() < 1e-9);
        }
        let e = to_f64(&expected_length_a_s_eriksen(4, 5).unwrap());
        assert!((expected_length_a_s_bm(4, 5).unwrap() - e).abs() < 1e-9);
    }

    #[test]
    fn eh_boundary_values() {
        for r in 1..=4 {
            for n in 1..=6 {
                if r == 1 && n == 1 {
                    assert!(expected_abslength_g_eh(r, n, 0).is_err());
                    continue;
                }
                assert_eq!(
                    expected_abslength_g_eh(r, n, 0).unwrap(),
                    int(0),
                    "r={r} n={n}"
                );
                assert_eq!(
                    expected_abslength_g_eh(r, n, 1).unwrap(),
                    int(1),
                    "r={r} n={n}"
                );
            }
        }
    }

    #[test]
    fn lemma_initial_condition_and_symmetry() {
        let x = frac(7, 3);
        for n in 2..=5u64 {
            let nn = n as i64;
            for i in -nn..=nn {
                for j in -nn..=nn {
                    if i == 0 || j == 0 || i.abs() == j.abs() {
                        assert!(i == 0 || j == 0 || lemma_bd_v(n, &x, 1, i, j).is_err());
                        continue;
                    }
                    assert_eq!(lemma_bd_v(n, &x, 0, i, j).unwrap(), int(sgn(j - i)));
                    for t in 0..5 {
                        let v = lemma_bd_v(n, &x, t, i, j).unwrap();
                        assert_eq!(lemma_bd_v(n, &x, t, j, i).unwrap(), -v.clone());
                        assert_eq!(lemma_bd_v(n, &x, t, -j, -i).unwrap(), v);
                    }
                }
            }
        }
    }

    #[test]
    fn dispatch() {
        let spec = GroupSpec::b(3).unwrap();
        let res = closed_form(
            &spec,
            Gens::AllReflections,
            Measure::Length,
            4,
            Formula::Auto,
        )
        .unwrap();
        assert_eq!(res.value, Value::Exact(expected_length_b_t(3, 4).unwrap()));
        assert!(closed_form(&spec, Gens::Simple, Measure::Length, 4, Formula::Auto).is_err());
        assert!(closed_form(
            &spec,
            Gens::AllReflections,
            Measure::Length,
            4,
            Formula::Troili
        )
        .is_err());
        let spec = GroupSpec::a(5).unwrap();
        let bm = closed_form(&spec, Gens::Simple, Measure::Length, 6, Formula::Bm).unwrap();
        assert!(matches!(bm.value, Value::Float(_)));
    }
}
