//! Length and absolute-length statistics.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::elements::{
    check_order, guard_limit, identity, multiply, reflections_of, simple_reflections_of,
    DihedralElement, Family, GroupElement, GroupSpec, Permutation, SignedPermutation,
};
use crate::error::{Error, Result};

/// The "length" function an expectation is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    /// Coxeter length over the simple reflections.
    Length,
    /// Reflection length.
    AbsLength,
    /// Number of right descents.
    Descents,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Length => "length",
            Measure::AbsLength => "abslength",
            Measure::Descents => "descents",
        })
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "length" => Ok(Measure::Length),
            "abslength" => Ok(Measure::AbsLength),
            "descents" => Ok(Measure::Descents),
            other => Err(Error::InvalidSpec(format!("unknown measure {other:?}"))),
        }
    }
}

/// `#{(i,j) : i < j, p_i > p_j}`.
pub fn inversion_count(p: &Permutation) -> u64 {
    let w = p.window();
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// Pairs `(i,j)` with `j >= |i|`, `i != j`, and `π_i > π_j`.
pub fn b_inversion_count(w: &SignedPermutation) -> u64 {
    signed_inversions(w, true)
}

/// Pairs `(i,j)` with `j > |i|` and `π_i > π_j`. Only defined on D_n.
pub fn d_inversion_count(w: &SignedPermutation) -> Result<u64> {
    if !w.is_even() {
        return Err(Error::DParityViolation);
    }
    Ok(signed_inversions(w, false))
}

fn signed_inversions(w: &SignedPermutation, include_antidiagonal: bool) -> u64 {
    let n = w.len() as i32;
    let mut count = 0;
    for j in 1..=n {
        let wj = w.value(j);
        let lo = if include_antidiagonal { -j } else { -j + 1 };
        for i in lo..j {
            if i != 0 && w.value(i) > wj {
                count += 1;
            }
        }
    }
    count
}

/// `n` minus the number of cycles.
pub fn abs_length_a(p: &Permutation) -> u64 {
    (p.len() - p.cycle_count()) as u64
}

/// 0 for the identity, 1 for a reflection, 2 for any other rotation.
pub fn abs_length_dihedral(w: &DihedralElement) -> u64 {
    match (w.flip, w.rot) {
        (true, _) => 1,
        (false, 0) => 0,
        (false, _) => 2,
    }
}

/// Coxeter lengths of all `2m` elements of I2(m), found by breadth-first
/// search on the Cayley graph over the two simple reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralLengths {
    m: u64,
    // indexed by flip * m + rot
    lengths: Vec<u64>,
}

impl DihedralLengths {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn length(&self, w: &DihedralElement) -> u64 {
        debug_assert_eq!(w.m, self.m);
        self.lengths[w.flip as usize * self.m as usize + w.rot as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (DihedralElement, u64)> + '_ {
        self.lengths.iter().enumerate().map(move |(k, &len)| {
            let m = self.m as usize;
            (
                DihedralElement {
                    m: self.m,
                    rot: (k % m) as u64,
                    flip: k >= m,
                },
                len,
            )
        })
    }
}

pub fn dihedral_length_table(m: u64) -> Result<DihedralLengths> {
    let spec = GroupSpec::i2(m)?;
    let lengths = word_lengths(&spec, &simple_reflections_of(&spec)?, u64::MAX)?;
    let mut table = vec![0; 2 * m as usize];
    for (w, len) in lengths {
        if let GroupElement::Dihedral(d) = w {
            table[d.flip as usize * m as usize + d.rot as usize] = len;
        }
    }
    Ok(DihedralLengths { m, lengths: table })
}

/// Breadth-first distances from the identity in the Cayley graph of the
/// element model of `spec` over `gens`.
pub fn word_lengths(
    spec: &GroupSpec,
    gens: &[GroupElement],
    limit: u64,
) -> Result<HashMap<GroupElement, u64>> {
    let spec = spec.element_model()?;
    let order = check_order(&spec, limit)? as usize;
    let id = identity(&spec)?;
    let mut dist = HashMap::with_capacity(order);
    let mut queue = VecDeque::new();
    dist.insert(id.clone(), 0);
    queue.push_back((id, 0));
    while let Some((w, d)) = queue.pop_front() {
        for g in gens {
            let wg = multiply(&w, g)?;
            if !dist.contains_key(&wg) {
                dist.insert(wg.clone(), d + 1);
                queue.push_back((wg, d + 1));
            }
        }
    }
    Ok(dist)
}

/// Reflection length of every element, by breadth-first search over T.
#[derive(Debug, Clone)]
pub struct AbsLengthTable {
    spec: GroupSpec,
    table: HashMap<GroupElement, u64>,
}

impl AbsLengthTable {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        Self::build_with_limit(spec, guard_limit())
    }

    pub fn build_with_limit(spec: &GroupSpec, limit: u64) -> Result<Self> {
        let spec = spec.element_model()?;
        let table = word_lengths(&spec, &reflections_of(&spec)?, limit)?;
        Ok(AbsLengthTable { spec, table })
    }

    pub fn get(&self, w: &GroupElement) -> Result<u64> {
        self.table
            .get(w)
            .copied()
            .ok_or_else(|| Error::InvalidElement(format!("{w} is not in {}", self.spec)))
    }
}

/// Reflection length of a single element. Builds the whole table; reuse
/// [`AbsLengthTable`] when querying many elements.
pub fn abs_length_bfs(spec: &GroupSpec, w: &GroupElement) -> Result<u64> {
    AbsLengthTable::build(spec)?.get(w)
}

/// Coxeter length, dispatched on the family.
#[derive(Debug, Clone)]
pub struct CoxeterLength {
    spec: GroupSpec,
    dihedral: Option<DihedralLengths>,
}

impl CoxeterLength {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let spec = spec.element_model()?;
        let dihedral = match spec.family {
            Family::I2 => Some(dihedral_length_table(spec.n)?),
            _ => None,
        };
        Ok(CoxeterLength { spec, dihedral })
    }

    pub fn length(&self, w: &GroupElement) -> Result<u64> {
        match (self.spec.family, w) {
            (Family::A, GroupElement::Perm(p)) => Ok(inversion_count(p)),
            (Family::B, GroupElement::Signed(s)) => Ok(b_inversion_count(s)),
            (Family::D, GroupElement::Signed(s)) => d_inversion_count(s),
            (Family::I2, GroupElement::Dihedral(d)) => {
                Ok(self.dihedral.as_ref().expect("built for I2").length(d))
            }
            _ => Err(Error::SpecMismatch),
        }
    }
}

/// A statistic usable by the exact and Monte Carlo engines.
pub type Statistic = Arc<dyn Fn(&GroupElement) -> u64 + Send + Sync>;

/// Builds the statistic for `measure` on the element model of `spec`.
///
/// Absolute length uses the cycle count for A and the closed description for
/// I2; B and D fall back to a breadth-first table, subject to the guard.
pub fn statistic(spec: &GroupSpec, measure: Measure) -> Result<Statistic> {
    let spec = spec.element_model()?;
    match measure {
        Measure::Length => {
            let len = CoxeterLength::new(&spec)?;
            Ok(Arc::new(move |w| {
                len.length(w).expect("element of the walk's group")
            }))
        }
        Measure::AbsLength => match spec.family {
            Family::A => Ok(Arc::new(|w| match w {
                GroupElement::Perm(p) => abs_length_a(p),
                _ => panic!("expected a permutation"),
            })),
            Family::I2 => Ok(Arc::new(|w| match w {
                GroupElement::Dihedral(d) => abs_length_dihedral(d),
                _ => panic!("expected a dihedral element"),
            })),
            _ => {
                let table = AbsLengthTable::build(&spec)?;
                Ok(Arc::new(move |w| {
                    table.get(w).expect("element of the walk's group")
                }))
            }
        },
        Measure::Descents => {
            let len = CoxeterLength::new(&spec)?;
            let simple = simple_reflections_of(&spec)?;
            Ok(Arc::new(move |w| {
                let lw = len.length(w).expect("element of the walk's group");
                simple
                    .iter()
                    .filter(|s| {
                        len.length(&multiply(w, s).expect("same group"))
                            .expect("same group")
                            < lw
                    })
                    .count() as u64
            }))
        }
    }
}
