//! The row-plus-column operators behind the pairwise recurrences.
//!
//! On antisymmetric `n×n` matrices, `(Qv)_{i,j} = Σ_{i'} v_{i',j} + Σ_{j'} v_{i,j'}`
//! and `Q² = nQ`. On functions over `{(i,j) : |i| ≠ |j|}` that are
//! antisymmetric and symmetric about the antidiagonal, the same operator with
//! sums over `|i'| ≠ |j|` and `|j'| ≠ |i|` satisfies `Q² = (2n−2)Q`.

use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::elements::IndexPair;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct AntisymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl AntisymMatrix {
    pub fn zero(n: usize) -> Self {
        AntisymMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    /// Builds the matrix from its strict upper triangle, `f(i, j)` for `i < j`
    /// (1-based).
    pub fn from_upper<F: FnMut(usize, usize) -> Rational>(n: usize, mut f: F) -> Self {
        let mut m = Self::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                let v = f(i, j);
                m.entries[(j - 1) * n + (i - 1)] = -v.clone();
                m.entries[(i - 1) * n + (j - 1)] = v;
            }
        }
        m
    }

    /// Zeros on the diagonal, ones above it, minus ones below it.
    pub fn initial(n: usize) -> Self {
        Self::from_upper(n, |_, _| int(1))
    }

    pub fn from_entries(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidElement(format!("expected {} entries", n * n)));
        }
        let m = AntisymMatrix { n, entries };
        if !m.is_antisymmetric() {
            return Err(Error::InvalidElement("matrix is not antisymmetric".into()));
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| *self.get(j, i) == -self.get(i, j).clone()))
    }
}

impl Add for &AntisymMatrix {
    type Output = AntisymMatrix;

    fn add(self, rhs: &AntisymMatrix) -> AntisymMatrix {
        assert_eq!(self.n, rhs.n);
        AntisymMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul<&AntisymMatrix> for &Rational {
    type Output = AntisymMatrix;

    fn mul(self, rhs: &AntisymMatrix) -> AntisymMatrix {
        AntisymMatrix {
            n: rhs.n,
            entries: rhs.entries.iter().map(|a| self * a).collect(),
        }
    }
}

pub fn apply_q_a(v: &AntisymMatrix) -> AntisymMatrix {
    let n = v.n;
    let rows: Vec<Rational> = (1..=n)
        .map(|i| (1..=n).map(|j| v.get(i, j)).sum())
        .collect();
    let cols: Vec<Rational> = (1..=n)
        .map(|j| (1..=n).map(|i| v.get(i, j)).sum())
        .collect();
    let entries = rows
        .iter()
        .flat_map(|r| cols.iter().map(move |c| c + r))
        .collect();
    AntisymMatrix { n, entries }
}

/// A function on `{(i,j) : i,j ∈ [−n,n]∖{0}, |i| ≠ |j|}` with
/// `v_{j,i} = −v_{i,j}` and `v_{−j,−i} = v_{i,j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DSpaceFunction {
    n: usize,
    entries: Vec<Option<Rational>>,
}

impl DSpaceFunction {
    fn slot(n: usize, i: i64, j: i64) -> usize {
        let n = n as i64;
        let pos = |x: i64| {
            if x < 0 {
                (x + n) as usize
            } else {
                (x + n - 1) as usize
            }
        };
        pos(i) * 2 * n as usize + pos(j)
    }

    /// Builds a function by reading `f` once per orbit of the two symmetries
    /// (on the lexicographically first pair of the orbit) and filling in the
    /// rest.
    pub fn from_fn<F: FnMut(i64, i64) -> Rational>(n: usize, mut f: F) -> Self {
        let mut entries: Vec<Option<Rational>> = vec![None; 4 * n * n];
        for IndexPair { i, j } in IndexPair::all(n as u64) {
            let (i, j) = (i as i64, j as i64);
            if entries[Self::slot(n, i, j)].is_some() {
                continue;
            }
            let v = f(i, j);
            entries[Self::slot(n, j, i)] = Some(-v.clone());
            entries[Self::slot(n, -i, -j)] = Some(-v.clone());
            entries[Self::slot(n, -j, -i)] = Some(v.clone());
            entries[Self::slot(n, i, j)] = Some(v);
        }
        DSpaceFunction { n, entries }
    }

    /// `v_{i,j} = sgn(j − i)`.
    pub fn initial(n: usize) -> Self {
        Self::from_fn(n, |i, j| int((j - i).signum()))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| Rational::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: i64, j: i64) -> Option<&Rational> {
        let n = self.n as i64;
        if i == 0 || j == 0 || i.abs() > n || j.abs() > n || i.abs() == j.abs() {
            return None;
        }
        self.entries[Self::slot(self.n, i, j)].as_ref()
    }

    fn indices(&self) -> impl Iterator<Item = i64> {
        let n = self.n as i64;
        (-n..=n).filter(|&x| x != 0)
    }

    pub fn satisfies_symmetries(&self) -> bool {
        IndexPair::all(self.n as u64).into_iter().all(|p| {
            let (i, j) = (p.i as i64, p.j as i64);
            let v = self.get(i, j).unwrap();
            *self.get(j, i).unwrap() == -v.clone() && self.get(-j, -i).unwrap() == v
        })
    }

    fn map_pairs<F: FnMut(i64, i64) -> Rational>(&self, mut f: F) -> Self {
        let mut entries = vec![None; self.entries.len()];
        for p in IndexPair::all(self.n as u64) {
            let (i, j) = (p.i as i64, p.j as i64);
            entries[Self::slot(self.n, i, j)] = Some(f(i, j));
        }
        DSpaceFunction { n: self.n, entries }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_pairs(|i, j| c * self.get(i, j).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.map_pairs(|i, j| self.get(i, j).unwrap() + other.get(i, j).unwrap())
    }
}

pub fn apply_q_bd(v: &DSpaceFunction) -> DSpaceFunction {
    let n = v.n as i64;
    let idx = |x: i64| {
        if x < 0 {
            (x + n) as usize
        } else {
            (x + n - 1) as usize
        }
    };
    let mut rows = vec![Rational::zero(); 2 * v.n];
    let mut cols = vec![Rational::zero(); 2 * v.n];
    for i in v.indices() {
        for j in v.indices() {
            if let Some(x) = v.get(i, j) {
                rows[idx(i)] += x;
                cols[idx(j)] += x;
            }
        }
    }
    v.map_pairs(|i, j| &cols[idx(j)] + &rows[idx(i)])
}

/// `x·v + Qv`, one step of the shared B/D recurrence.
pub fn bd_recurrence_step(v: &DSpaceFunction, x: &Rational) -> DSpaceFunction {
    v.scale(x).add(&apply_q_bd(v))
}

/// `x·v + Qv` on antisymmetric matrices.
pub fn a_recurrence_step(v: &AntisymMatrix, x: &Rational) -> AntisymMatrix {
    &(x * v) + &apply_q_a(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn q_a_on_zero_and_initial() {
        assert_eq!(apply_q_a(&AntisymMatrix::zero(5)), AntisymMatrix::zero(5));
        for n in 1..8 {
            let qv = apply_q_a(&AntisymMatrix::initial(n));
            assert!(qv.is_antisymmetric());
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(*qv.get(i, j), int(2 * (j as i64 - i as i64)));
                }
            }
        }
    }

    #[test]
    fn q_bd_on_zero_and_initial() {
        assert_eq!(
            apply_q_bd(&DSpaceFunction::zero(3)),
            DSpaceFunction::zero(3)
        );
        for n in 2..7 {
            let qv = apply_q_bd(&DSpaceFunction::initial(n));
            assert!(qv.satisfies_symmetries());
            for p in IndexPair::all(n as u64) {
                let (i, j) = (p.i as i64, p.j as i64);
                assert_eq!(
                    *qv.get(i, j).unwrap(),
                    int(2 * (j - i - j.signum() + i.signum()))
                );
            }
        }
    }

    #[test]
    fn from_fn_fills_orbits() {
        let v = DSpaceFunction::from_fn(3, |i, j| frac(i * 10 + j, 7));
        assert!(v.satisfies_symmetries());
        assert!(v.get(1, -1).is_none());
        assert!(v.get(0, 2).is_none());
    }

    #[test]
    fn rejects_non_antisymmetric_entries() {
        assert!(AntisymMatrix::from_entries(2, vec![int(0), int(1), int(1), int(0)]).is_err());
        assert!(AntisymMatrix::from_entries(2, vec![int(0), int(1), int(-1), int(0)]).is_ok());
    }
}
