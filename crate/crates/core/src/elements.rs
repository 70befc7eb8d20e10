//! Concrete group elements for A_{n-1}, B_n, D_n and I2(m).
//!
//! Products follow the functional convention `(a·b)(x) = a(b(x))`: in
//! one-line notation the window of `a·b` is `a(b_1), …, a(b_n)`. Right
//! multiplication by a reflection therefore permutes *positions*, which is
//! the action the pairwise recurrences are written for.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default bound on the order of any group that is enumerated element by element.
pub const DEFAULT_GUARD_LIMIT: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_GUARD_LIMIT`].
pub const GUARD_LIMIT_ENV: &str = "COXWALK_GUARD_LIMIT";

/// The group-order guard in effect, honoring `COXWALK_GUARD_LIMIT`.
pub fn guard_limit() -> u64 {
    std::env::var(GUARD_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD_LIMIT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    D,
    I2,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::I2 => "I2",
            Family::G => "G",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "D" => Ok(Family::D),
            "I2" | "I" => Ok(Family::I2),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        }
    }
}

/// Which group. `n` is the number of letters for A (the group is A_{n-1}),
/// the rank for B and D, the dihedral parameter m for I2, and the n of
/// G(r,1,n). `r` is only meaningful for G and is 1 otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub n: u64,
    pub r: u64,
}

impl GroupSpec {
    pub fn new(family: Family, n: u64, r: u64) -> Result<Self> {
        let spec = GroupSpec {
            family,
            n,
            r: if family == Family::G { r } else { 1 },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Symmetric group on `letters` letters, i.e. A_{letters-1}.
    pub fn a(letters: u64) -> Result<Self> {
        Self::new(Family::A, letters, 1)
    }

    pub fn b(n: u64) -> Result<Self> {
        Self::new(Family::B, n, 1)
    }

    pub fn d(n: u64) -> Result<Self> {
        Self::new(Family::D, n, 1)
    }

    pub fn i2(m: u64) -> Result<Self> {
        Self::new(Family::I2, m, 1)
    }

    pub fn g(r: u64, n: u64) -> Result<Self> {
        Self::new(Family::G, n, r)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.family {
            Family::A => self.n >= 2,
            Family::B | Family::D => self.n >= 1,
            Family::I2 => self.n >= 2,
            Family::G => self.r >= 1 && self.n >= 1 && !(self.r == 1 && self.n == 1),
        };
        if ok && self.n <= i32::MAX as u64 {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("{self}")))
        }
    }

    /// Group order, or `None` if it does not fit in a `u128`.
    pub fn order(&self) -> Option<u128> {
        let factorial = |k: u64| (1..=k as u128).try_fold(1u128, |acc, x| acc.checked_mul(x));
        let pow2 = |k: u64| 1u128.checked_shl(u32::try_from(k).ok()?);
        match self.family {
            Family::A => factorial(self.n),
            Family::B => factorial(self.n)?.checked_mul(pow2(self.n)?),
            Family::D => factorial(self.n)?.checked_mul(pow2(self.n - 1)?),
            Family::I2 => Some(2 * self.n as u128),
            Family::G => {
                let rn = (self.r as u128).checked_pow(u32::try_from(self.n).ok()?)?;
                factorial(self.n)?.checked_mul(rn)
            }
        }
    }

    /// Element-level model: G(1,1,n) is A_{n-1} and G(2,1,n) is B_n.
    /// Coxeter families map to themselves.
    pub fn element_model(&self) -> Result<GroupSpec> {
        match (self.family, self.r) {
            (Family::G, 1) => GroupSpec::a(self.n),
            (Family::G, 2) => GroupSpec::b(self.n),
            (Family::G, _) => Err(Error::UnsupportedFamily(Family::G)),
            _ => Ok(*self),
        }
    }

    /// Maximal Coxeter length in the group.
    pub fn max_length(&self) -> Option<u64> {
        let n = self.n;
        match self.family {
            Family::A => Some(n * (n - 1) / 2),
            Family::B => Some(n * n),
            Family::D => Some(n * (n - 1)),
            Family::I2 => Some(n),
            Family::G => None,
        }
    }

    pub fn contains(&self, w: &GroupElement) -> bool {
        match (self.family, w) {
            (Family::A, GroupElement::Perm(p)) => p.len() as u64 == self.n,
            (Family::B, GroupElement::Signed(s)) => s.len() as u64 == self.n,
            (Family::D, GroupElement::Signed(s)) => s.len() as u64 == self.n && s.is_even(),
            (Family::I2, GroupElement::Dihedral(d)) => d.m == self.n,
            _ => false,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{} ({} letters)", self.n.saturating_sub(1), self.n),
            Family::B => write!(f, "B{}", self.n),
            Family::D => write!(f, "D{}", self.n),
            Family::I2 => write!(f, "I2({})", self.n),
            Family::G => write!(f, "G({},1,{})", self.r, self.n),
        }
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(window: Vec<u32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &x in &window {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidElement(format!(
                    "{window:?} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(window))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    /// The transposition exchanging `i` and `j` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut w: Vec<u32> = (1..=n as u32).collect();
        w.swap(i - 1, j - 1);
        Permutation(w)
    }

    pub fn window(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `π(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize - 1] = i as u32 + 1;
        }
        Permutation(inv)
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k] as usize - 1;
            }
        }
        cycles
    }
}

/// A signed permutation stored by its window `w_1, …, w_n`; `w_{-i} = -w_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation(Vec<i32>);

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &x in &window {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidElement(format!(
                    "{window:?} is not a signed permutation"
                )));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation(window))
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation((1..=n as i32).collect())
    }

    /// The reflection `(i,j)(-i,-j)` for `1 <= |i| < j <= n`.
    pub fn pair_reflection(n: usize, i: i32, j: i32) -> Self {
        debug_assert!(i != 0 && i.abs() < j && j as usize <= n);
        let mut w = Self::identity(n).0;
        let a = i.unsigned_abs() as usize;
        let sign = i.signum();
        // i -> j and j -> i; on the positive position |i| this reads sign(i)*j.
        w[a - 1] = sign * j;
        w[j as usize - 1] = sign * a as i32;
        SignedPermutation(w)
    }

    /// The reflection `(i,-i)` for `1 <= i <= n`.
    pub fn sign_change(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n).0;
        w[i - 1] = -(i as i32);
        SignedPermutation(w)
    }

    pub fn window(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `π(i)` for `i ∈ [-n, n] \ {0}`.
    pub fn value(&self, i: i32) -> i32 {
        if i > 0 {
            self.0[i as usize - 1]
        } else {
            -self.0[(-i) as usize - 1]
        }
    }

    pub fn negative_count(&self) -> usize {
        self.0.iter().filter(|&&x| x < 0).count()
    }

    /// Membership flag for D_n.
    pub fn is_even(&self) -> bool {
        self.negative_count().is_multiple_of(2)
    }

    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation(other.0.iter().map(|&x| self.value(x)).collect())
    }

    /// Absolute values as an ordinary permutation.
    pub fn underlying(&self) -> Permutation {
        Permutation(self.0.iter().map(|x| x.unsigned_abs()).collect())
    }
}

/// Element of the dihedral group of order `2m`, viewed as the affine map
/// `x ↦ rot + x` (flip = false) or `x ↦ rot - x` (flip = true) on `Z/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub m: u64,
    pub rot: u64,
    pub flip: bool,
}

impl DihedralElement {
    pub fn new(m: u64, rot: i64, flip: bool) -> Self {
        DihedralElement {
            m,
            rot: rot.rem_euclid(m as i64) as u64,
            flip,
        }
    }

    pub fn identity(m: u64) -> Self {
        DihedralElement {
            m,
            rot: 0,
            flip: false,
        }
    }

    pub fn compose(&self, other: &DihedralElement) -> DihedralElement {
        let m = self.m;
        let moved = if self.flip {
            (m - other.rot) % m
        } else {
            other.rot
        };
        DihedralElement {
            m,
            rot: (self.rot + moved) % m,
            flip: self.flip ^ other.flip,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Perm(Permutation),
    Signed(SignedPermutation),
    Dihedral(DihedralElement),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join<T: fmt::Display>(xs: &[T]) -> String {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        match self {
            GroupElement::Perm(p) => write!(f, "[{}]", join(p.window())),
            GroupElement::Signed(s) => write!(f, "[{}]", join(s.window())),
            GroupElement::Dihedral(d) => {
                write!(f, "{}{}", if d.flip { "flip" } else { "rot" }, d.rot)
            }
        }
    }
}

/// An index pair in `{(i,j) : i,j ∈ [-n,n]∖{0}, |i| ≠ |j|}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    pub i: i32,
    pub j: i32,
}

impl IndexPair {
    pub fn new(n: u64, i: i64, j: i64) -> Result<Self> {
        let n = n as i64;
        let in_range = |x: i64| x != 0 && x.abs() <= n;
        if !in_range(i) || !in_range(j) {
            return Err(Error::IndexError {
                i,
                j,
                reason: "indices must lie in [-n, n] without 0",
            });
        }
        if i.abs() == j.abs() {
            return Err(Error::IndexError {
                i,
                j,
                reason: "|i| must differ from |j|",
            });
        }
        Ok(IndexPair {
            i: i as i32,
            j: j as i32,
        })
    }

    /// Every pair of the set for rank `n`, ordered lexicographically.
    pub fn all(n: u64) -> Vec<IndexPair> {
        let n = n as i32;
        let idx: Vec<i32> = (-n..=n).filter(|&x| x != 0).collect();
        let mut out = Vec::new();
        for &i in &idx {
            for &j in &idx {
                if i.abs() != j.abs() {
                    out.push(IndexPair { i, j });
                }
            }
        }
        out
    }
}

pub fn identity(spec: &GroupSpec) -> Result<GroupElement> {
    let spec = spec.element_model()?;
    let n = spec.n as usize;
    Ok(match spec.family {
        Family::A => GroupElement::Perm(Permutation::identity(n)),
        Family::B | Family::D => GroupElement::Signed(SignedPermutation::identity(n)),
        Family::I2 => GroupElement::Dihedral(DihedralElement::identity(spec.n)),
        Family::G => unreachable!("element_model never returns G"),
    })
}

/// Group product `a·b` with `(a·b)(x) = a(b(x))`.
pub fn multiply(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    match (a, b) {
        (GroupElement::Perm(x), GroupElement::Perm(y)) if x.len() == y.len() => {
            Ok(GroupElement::Perm(x.compose(y)))
        }
        (GroupElement::Signed(x), GroupElement::Signed(y)) if x.len() == y.len() => {
            Ok(GroupElement::Signed(x.compose(y)))
        }
        (GroupElement::Dihedral(x), GroupElement::Dihedral(y)) if x.m == y.m => {
            Ok(GroupElement::Dihedral(x.compose(y)))
        }
        _ => Err(Error::SpecMismatch),
    }
}

/// The full reflection set T in canonical order:
///
/// * A: transpositions `(i,j)`, `i < j`, lexicographic;
/// * B: `(i,j)(-i,-j)` by `(|i|, j)` with positive `i` first, then `(i,-i)` by `i`;
/// * D: as the pair part of B;
/// * I2: the flip elements by rotation index.
pub fn reflections_of(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    spec.validate()?;
    let n = spec.n as usize;
    let pair_part = |n: usize| {
        let mut out = Vec::new();
        for a in 1..=n as i32 {
            for j in a + 1..=n as i32 {
                for i in [a, -a] {
                    out.push(GroupElement::Signed(SignedPermutation::pair_reflection(
                        n, i, j,
                    )));
                }
            }
        }
        out
    };
    Ok(match spec.family {
        Family::A => {
            let mut out = Vec::with_capacity(n * (n - 1) / 2);
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(GroupElement::Perm(Permutation::transposition(n, i, j)));
                }
            }
            out
        }
        Family::B => {
            let mut out = pair_part(n);
            out.extend((1..=n).map(|i| GroupElement::Signed(SignedPermutation::sign_change(n, i))));
            out
        }
        Family::D => pair_part(n),
        Family::I2 => (0..spec.n)
            .map(|rot| {
                GroupElement::Dihedral(DihedralElement {
                    m: spec.n,
                    rot,
                    flip: true,
                })
            })
            .collect(),
        Family::G => return Err(Error::UnsupportedFamily(Family::G)),
    })
}

/// Standard Coxeter generators:
///
/// * A: adjacent transpositions `s_1, …, s_{n-1}`;
/// * B: `s_0 = (1,-1)` followed by the adjacent transpositions;
/// * D: `s_0 = (1,-2)(-1,2)` followed by the adjacent transpositions
///   (empty for D_1, the trivial group);
/// * I2: `s = flip0` and `t = flip1`.
pub fn simple_reflections_of(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    spec.validate()?;
    let n = spec.n as usize;
    let adjacent_signed = |n: usize| {
        (1..n).map(move |i| {
            GroupElement::Signed(SignedPermutation::pair_reflection(
                n,
                i as i32,
                i as i32 + 1,
            ))
        })
    };
    Ok(match spec.family {
        Family::A => (1..n)
            .map(|i| GroupElement::Perm(Permutation::transposition(n, i, i + 1)))
            .collect(),
        Family::B => std::iter::once(GroupElement::Signed(SignedPermutation::sign_change(n, 1)))
            .chain(adjacent_signed(n))
            .collect(),
        Family::D if n == 1 => Vec::new(),
        Family::D => std::iter::once(GroupElement::Signed(SignedPermutation::pair_reflection(
            n, -1, 2,
        )))
        .chain(adjacent_signed(n))
        .collect(),
        Family::I2 => vec![
            GroupElement::Dihedral(DihedralElement {
                m: spec.n,
                rot: 0,
                flip: true,
            }),
            GroupElement::Dihedral(DihedralElement {
                m: spec.n,
                rot: 1,
                flip: true,
            }),
        ],
        Family::G => return Err(Error::UnsupportedFamily(Family::G)),
    })
}

/// Which generating set a walk draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gens {
    Simple,
    AllReflections,
}

impl fmt::Display for Gens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gens::Simple => "simple",
            Gens::AllReflections => "reflections",
        })
    }
}

impl FromStr for Gens {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" | "S" => Ok(Gens::Simple),
            "reflections" | "T" => Ok(Gens::AllReflections),
            other => Err(Error::InvalidSpec(format!(
                "unknown generating set {other:?}"
            ))),
        }
    }
}

/// `simple_reflections_of` or `reflections_of`, for the element model of `spec`.
pub fn generators(spec: &GroupSpec, gens: Gens) -> Result<Vec<GroupElement>> {
    let spec = spec.element_model()?;
    match gens {
        Gens::Simple => simple_reflections_of(&spec),
        Gens::AllReflections => reflections_of(&spec),
    }
}

/// Fails with [`Error::OrderLimitExceeded`] if `|W|` exceeds `limit`.
pub fn check_order(spec: &GroupSpec, limit: u64) -> Result<u128> {
    match spec.order() {
        Some(order) if order <= limit as u128 => Ok(order),
        Some(order) => Err(Error::OrderLimitExceeded {
            order: order.to_string(),
            limit,
        }),
        None => Err(Error::OrderLimitExceeded {
            order: "> 2^128".into(),
            limit,
        }),
    }
}

/// All elements, each exactly once, in breadth-first order from the identity
/// over the simple reflections.
pub fn enumerate_group(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    enumerate_group_with_limit(spec, guard_limit())
}

pub fn enumerate_group_with_limit(spec: &GroupSpec, limit: u64) -> Result<Vec<GroupElement>> {
    let spec = spec.element_model()?;
    let order = check_order(&spec, limit)? as usize;
    let gens = simple_reflections_of(&spec)?;
    let id = identity(&spec)?;
    let mut seen = HashSet::with_capacity(order);
    let mut out = Vec::with_capacity(order);
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        for s in &gens {
            let ws = multiply(&w, s)?;
            if seen.insert(ws.clone()) {
                queue.push_back(ws);
            }
        }
        out.push(w);
    }
    debug_assert_eq!(out.len(), order);
    Ok(out)
}
