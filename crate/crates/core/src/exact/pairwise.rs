//! Exact evolution of the pairwise order probabilities
//! `p_{i,j} = Prob(π_i < π_j)` under random reflections, without ever
//! touching the group itself. Each step costs `O(n²)` integer operations on
//! the word counts `N^t p`, so ranks far beyond full enumeration are reachable.
//!
//! Right multiplication by a reflection `r` permutes positions, so
//! `p'_{i,j}` is the average of `p_{r(i), r(j)}` over `r`. Grouping the
//! reflections by how they move `i` and `j` gives, with `N = |T|`:
//!
//! * A: `N p' = N p + (p_{j,i} − p) + Σ_{i'≠j}(p_{i',j} − p) + Σ_{j'≠i}(p_{i,j'} − p)`
//! * B, `|i| ≠ |j|`: as A plus the term `(p_{−j,−i} − p)`, with sums over
//!   `|i'| ≠ |j|` and `|j'| ≠ |i|`
//! * B, `(i, −i)`: `N p' = N p + (p_{−i,i} − p) + Σ_{|c|≠|i|}(p_{c,−c} − p)`
//! * D: as B off the antidiagonal, with sums over `|i'|, |j'| ∉ {|i|, |j|}`
//!
//! Row and column sums are computed once per step, so each entry is `O(1)`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::elements::{guard_limit, Family};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// `p_{i,j} = Prob(π_i < π_j)`.
    P,
    /// `u_{i,j} = N^t p_{i,j}`, the count of words with `π_i < π_j`.
    U,
    /// `p_{i,j} − p_{j,i}`, i.e. `(u_{i,j} − u_{j,i}) / N^t`.
    V,
}

/// A dense table over ordered position pairs. For A the positions are
/// `1..=n`; for B and D they are `±1..=±n`, and D has no entries on
/// `|i| = |j|`.
#[derive(Clone)]
pub struct PairTable {
    family: Family,
    n: usize,
    t: u64,
    kind: PairKind,
    /// `N^t p` for P tables, empty otherwise.
    counts: Vec<Option<BigInt>>,
    scale: BigInt,
    /// Filled on first use for P tables.
    entries: OnceLock<Vec<Option<Rational>>>,
}

impl PartialEq for PairTable {
    fn eq(&self, other: &Self) -> bool {
        (self.family, self.n, self.t, self.kind) == (other.family, other.n, other.t, other.kind)
            && self.entries() == other.entries()
    }
}

impl fmt::Debug for PairTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PairTable")
            .field("family", &self.family)
            .field("n", &self.n)
            .field("t", &self.t)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl PairTable {
    fn dim(family: Family, n: usize) -> usize {
        if family == Family::A {
            n
        } else {
            2 * n
        }
    }

    fn slot(&self, i: i64, j: i64) -> Option<usize> {
        let n = self.n as i64;
        let pos = |x: i64| -> Option<usize> {
            match self.family {
                Family::A if (1..=n).contains(&x) => Some((x - 1) as usize),
                Family::B | Family::D if x != 0 && x.abs() <= n => Some(if x < 0 {
                    (x + n) as usize
                } else {
                    (x + n - 1) as usize
                }),
                _ => None,
            }
        };
        Some(pos(i)? * Self::dim(self.family, self.n) + pos(j)?)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    /// Positions of the table, in increasing order.
    pub fn positions(&self) -> Vec<i64> {
        let n = self.n as i64;
        match self.family {
            Family::A => (1..=n).collect(),
            _ => (-n..=n).filter(|&x| x != 0).collect(),
        }
    }

    fn entries(&self) -> &Vec<Option<Rational>> {
        self.entries.get_or_init(|| {
            self.counts
                .iter()
                .map(|c| {
                    c.as_ref()
                        .map(|c| Rational::new(c.clone(), self.scale.clone()))
                })
                .collect()
        })
    }

    /// Whether `(i, j)` carries an entry.
    pub fn admits(&self, i: i64, j: i64) -> bool {
        self.slot(i, j).is_some_and(|k| match self.kind {
            PairKind::P => self.counts[k].is_some(),
            _ => self.entries()[k].is_some(),
        })
    }

    pub fn get(&self, i: i64, j: i64) -> Option<&Rational> {
        self.slot(i, j).and_then(|k| self.entries()[k].as_ref())
    }

    /// `N^t p_{i,j}`, the number of words with `π_i < π_j` (P tables only).
    pub fn count(&self, i: i64, j: i64) -> Option<&BigInt> {
        self.slot(i, j).and_then(|k| self.counts.get(k)?.as_ref())
    }

    /// `N^t`, the number of words of length `t`.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    fn at(&self, i: i64, j: i64) -> &Rational {
        self.get(i, j).expect("admissible pair")
    }

    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let pos = self.positions();
        let pos2 = pos.clone();
        pos.into_iter()
            .flat_map(move |i| pos2.clone().into_iter().map(move |j| (i, j)))
            .filter(|&(i, j)| self.admits(i, j))
    }

    /// Step size `N = |T|`.
    pub fn reflection_count(&self) -> u64 {
        reflection_count(self.family, self.n as u64)
    }

    /// Initial table: the identity has `π_i = i`, so `p_{i,j} = [i < j]`.
    pub fn identity(family: Family, n: u64) -> Result<Self> {
        let min = match family {
            Family::A => 2,
            Family::B => 1,
            Family::D => 2,
            other => return Err(Error::UnsupportedFamily(other)),
        };
        if n < min {
            return Err(Error::InvalidRank(format!(
                "{family}{n} has no pairwise walk"
            )));
        }
        let n_us = n as usize;
        let dim = Self::dim(family, n_us);
        if (dim as u64).saturating_mul(dim as u64) > guard_limit() {
            return Err(Error::OrderLimitExceeded {
                order: format!("{dim}x{dim} pair table"),
                limit: guard_limit(),
            });
        }
        let mut table = Self::from_counts(family, n_us, 0, vec![None; dim * dim]);
        for i in table.positions() {
            for j in table.positions() {
                let admissible = match family {
                    Family::D => i.abs() != j.abs(),
                    _ => i != j,
                };
                if admissible {
                    let k = table.slot(i, j).unwrap();
                    table.counts[k] = Some(if i < j { BigInt::one() } else { BigInt::zero() });
                }
            }
        }
        Ok(table)
    }

    fn from_counts(family: Family, n: usize, t: u64, counts: Vec<Option<BigInt>>) -> Self {
        let scale = BigInt::from(reflection_count(family, n as u64)).pow(t as u32);
        PairTable {
            family,
            n,
            t,
            kind: PairKind::P,
            counts,
            scale,
            entries: OnceLock::new(),
        }
    }

    /// Re-expresses a `P` table as `U` or `V`.
    pub fn to_kind(&self, kind: PairKind) -> Result<PairTable> {
        if self.kind != PairKind::P {
            return Err(Error::Unsupported(
                "conversion starts from a P table".into(),
            ));
        }
        if kind == PairKind::P {
            return Ok(self.clone());
        }
        let mut entries = vec![None; self.counts.len()];
        for (i, j) in self.pairs() {
            let k = self.slot(i, j).unwrap();
            entries[k] = Some(match kind {
                PairKind::P => unreachable!(),
                PairKind::U => {
                    Rational::from_integer(self.counts[k].clone().expect("admissible pair"))
                }
                PairKind::V => self.at(i, j) - self.at(j, i),
            });
        }
        Ok(PairTable {
            kind,
            counts: Vec::new(),
            entries: OnceLock::from(entries),
            ..self.clone()
        })
    }

    /// Expected length: the sum of `Prob(π_i > π_j)` over the inversion pairs
    /// of the family (`i < j` for A, `j ≥ |i|` for B, `j > |i|` for D).
    pub fn expected_length(&self) -> Result<Rational> {
        if self.kind != PairKind::P {
            return Err(Error::Unsupported("expected length needs a P table".into()));
        }
        let n = self.n as i64;
        let scale = &self.scale;
        let mut total = BigInt::zero();
        for j in 1..=n {
            let lo = match self.family {
                Family::A => 1,
                Family::B => -j,
                _ => -j + 1,
            };
            for i in lo..j {
                if i != 0 {
                    let k = self.slot(i, j).expect("in range");
                    total += scale - self.counts[k].as_ref().expect("admissible pair");
                }
            }
        }
        Ok(Rational::new(total, scale.clone()))
    }

    /// Checks the symmetries the table kind must satisfy.
    pub fn check_invariants(&self) -> bool {
        let signed = self.family != Family::A;
        self.pairs().all(|(i, j)| {
            let v = self.at(i, j);
            let mirrored = !signed || self.get(-j, -i) == Some(v);
            let ok = match self.kind {
                PairKind::P => {
                    *v >= Rational::zero()
                        && *v <= Rational::one()
                        && v + self.at(j, i) == Rational::one()
                }
                PairKind::V => *self.at(j, i) == -v.clone(),
                PairKind::U => *v >= Rational::zero(),
            };
            ok && mirrored
        })
    }
}

pub fn reflection_count(family: Family, n: u64) -> u64 {
    match family {
        Family::A => n * (n - 1) / 2,
        Family::B => n * n,
        Family::D => n * (n - 1),
        Family::I2 => n,
        Family::G => 0,
    }
}

/// One step of the pairwise recurrence, run on the integer counts
/// `u = N^t p`.
pub fn step(table: &PairTable) -> PairTable {
    assert_eq!(table.kind, PairKind::P, "the recurrence runs on P tables");
    let d = PairTable::dim(table.family, table.n);
    let n = table.n as i64;
    let big_n = table.reflection_count() as i64;
    let u = &table.counts;
    let at = |a: usize, b: usize| u[a * d + b].as_ref().expect("admissible pair");
    // positions are symmetric about the middle, so −x sits at d − 1 − a
    let neg = |a: usize| d - 1 - a;
    let mut rows = vec![BigInt::zero(); d];
    let mut cols = vec![BigInt::zero(); d];
    for a in 0..d {
        for b in 0..d {
            if let Some(x) = &u[a * d + b] {
                rows[a] += x;
                cols[b] += x;
            }
        }
    }
    let antidiag: BigInt = match table.family {
        Family::B => (0..d).map(|a| at(a, neg(a))).sum(),
        _ => BigInt::zero(),
    };
    let mut next = vec![None; d * d];
    for a in 0..d {
        for b in 0..d {
            let Some(p) = &u[a * d + b] else { continue };
            let ji = at(b, a);
            let v = match table.family {
                Family::A => p * (big_n - 1 - 2 * (n - 1)) + ji + &cols[b] + &rows[a],
                Family::B if b == neg(a) => {
                    p * (big_n - 1 - (2 * n - 2)) + ji + (&antidiag - p - ji)
                }
                Family::B => {
                    let col_rest = &cols[b] - p - at(neg(b), b);
                    let row_rest = &rows[a] - p - at(a, neg(a));
                    p * (big_n - 2 - 2 * (2 * n - 3))
                        + ji
                        + at(neg(b), neg(a))
                        + col_rest
                        + row_rest
                }
                Family::D => {
                    let col_rest = &cols[b] - p - at(neg(a), b);
                    let row_rest = &rows[a] - p - at(a, neg(b));
                    p * (big_n - 2 - 2 * (2 * n - 4))
                        + ji
                        + at(neg(b), neg(a))
                        + col_rest
                        + row_rest
                }
                _ => unreachable!(),
            };
            next[a * d + b] = Some(v);
        }
    }
    PairTable::from_counts(table.family, table.n, table.t + 1, next)
}

/// `p^{(t)}` for the reflection walk of `family` with rank parameter `n`
/// (letters for A).
pub fn evolve_pairtable(family: Family, n: u64, t: u64) -> Result<PairTable> {
    let mut table = PairTable::identity(family, n)?;
    for _ in 0..t {
        table = step(&table);
    }
    Ok(table)
}

/// Iterator over `p^{(0)}, p^{(1)}, …`.
pub fn pair_walk(family: Family, n: u64) -> Result<impl Iterator<Item = PairTable>> {
    let first = PairTable::identity(family, n)?;
    Ok(std::iter::successors(Some(first), |prev| Some(step(prev))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn initial_table() {
        let table = evolve_pairtable(Family::B, 3, 0).unwrap();
        assert_eq!(table.get(-3, 1), Some(&int(1)));
        assert_eq!(table.get(2, -1), Some(&int(0)));
        assert_eq!(table.get(1, -1), Some(&int(0)));
        assert_eq!(table.get(2, 2), None);
        let d = evolve_pairtable(Family::D, 3, 0).unwrap();
        assert_eq!(d.get(-1, 1), None);
        assert_eq!(d.pairs().count(), 6 * 4);
    }

    #[test]
    fn one_step_values() {
        let a = evolve_pairtable(Family::A, 3, 1).unwrap();
        assert_eq!(a.get(2, 1), Some(&frac(2, 3)));
        let b = evolve_pairtable(Family::B, 2, 1).unwrap();
        assert_eq!(b.get(1, -1), Some(&frac(1, 2)));
        let d = evolve_pairtable(Family::D, 2, 1).unwrap();
        assert_eq!(d.get(1, 2), Some(&frac(1, 2)));
    }

    #[test]
    fn invariants_hold_every_step() {
        for (family, n) in [
            (Family::A, 5),
            (Family::B, 4),
            (Family::D, 4),
            (Family::B, 1),
            (Family::D, 2),
        ] {
            for table in pair_walk(family, n).unwrap().take(6) {
                assert!(table.check_invariants(), "{family}{n} t={}", table.t());
                assert!(table.to_kind(PairKind::V).unwrap().check_invariants());
                assert!(table.to_kind(PairKind::U).unwrap().check_invariants());
            }
        }
    }

    #[test]
    fn matches_full_distribution_marginals() {
        use crate::elements::{Gens, GroupSpec};
        use crate::exact::ExactWalk;
        for spec in [
            GroupSpec::a(4),
            GroupSpec::b(2),
            GroupSpec::b(3),
            GroupSpec::d(3),
        ] {
            let spec = spec.unwrap();
            let mut walk = ExactWalk::new(&spec, Gens::AllReflections).unwrap();
            for table in pair_walk(spec.family, spec.n).unwrap().take(5) {
                walk.advance_to(table.t());
                let dist = walk.distribution();
                for (i, j) in table.pairs() {
                    assert_eq!(
                        *table.get(i, j).unwrap(),
                        dist.order_prob(i, j).unwrap(),
                        "{spec} t={} ({i},{j})",
                        table.t()
                    );
                }
            }
        }
    }

    #[test]
    fn u_tables_are_integral() {
        for table in pair_walk(Family::D, 3).unwrap().take(5) {
            let u = table.to_kind(PairKind::U).unwrap();
            assert!(u.pairs().all(|(i, j)| u.get(i, j).unwrap().is_integer()));
        }
    }

    #[test]
    fn invalid_ranks() {
        assert!(evolve_pairtable(Family::A, 1, 1).is_err());
        assert!(evolve_pairtable(Family::D, 1, 1).is_err());
        assert!(evolve_pairtable(Family::I2, 5, 1).is_err());
    }
}
