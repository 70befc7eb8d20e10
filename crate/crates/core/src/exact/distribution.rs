use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::elements::{
    enumerate_group, generators, identity, multiply, Family, Gens, GroupElement, GroupSpec,
};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exact distribution of a random group element.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDist {
    spec: GroupSpec,
    t: u64,
    probs: HashMap<GroupElement, Rational>,
}

impl ExactDist {
    pub fn point_mass(spec: &GroupSpec) -> Result<Self> {
        let spec = spec.element_model()?;
        let mut probs = HashMap::new();
        probs.insert(identity(&spec)?, Rational::one());
        Ok(ExactDist { spec, t: 0, probs })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Number of steps taken to reach this distribution.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn prob(&self, w: &GroupElement) -> Rational {
        self.probs.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Support size.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &Rational)> {
        self.probs.iter()
    }

    pub fn total(&self) -> Rational {
        self.probs.values().sum()
    }

    pub fn expectation<F>(&self, statistic: F) -> Rational
    where
        F: Fn(&GroupElement) -> u64,
    {
        self.probs
            .iter()
            .map(|(w, p)| p * Rational::from_integer(BigInt::from(statistic(w))))
            .sum()
    }

    /// `Prob(π_i < π_j)`. Positions are `1..=n` for A and `±1..=±n` for B/D.
    pub fn order_prob(&self, i: i64, j: i64) -> Result<Rational> {
        let n = self.spec.n as i64;
        let ok = match self.spec.family {
            Family::A => (1..=n).contains(&i) && (1..=n).contains(&j) && i != j,
            Family::B | Family::D => i != 0 && j != 0 && i.abs() <= n && j.abs() <= n && i != j,
            _ => false,
        };
        if !ok {
            return Err(Error::IndexError {
                i,
                j,
                reason: "not a position pair of this group",
            });
        }
        let mut acc = Rational::zero();
        for (w, p) in &self.probs {
            let less = match w {
                GroupElement::Perm(x) => x.apply(i as usize) < x.apply(j as usize),
                GroupElement::Signed(x) => x.value(i as i32) < x.value(j as i32),
                GroupElement::Dihedral(_) => unreachable!(),
            };
            if less {
                acc += p;
            }
        }
        Ok(acc)
    }
}

/// Exact walk on a finite group: the product of `t` generators drawn
/// uniformly from `gens`, one step at a time.
///
/// Elements are indexed once; each generator becomes a permutation of the
/// indices (`w ↦ w·g`), and the walk only moves integer word counts along
/// those permutations. The probability of `w` after `t` steps is its count
/// divided by `|R|^t`.
#[derive(Debug, Clone)]
pub struct ExactWalk {
    spec: GroupSpec,
    elements: Vec<GroupElement>,
    actions: Vec<Vec<u32>>,
    counts: Vec<BigUint>,
    denominator: BigUint,
    t: u64,
}

impl ExactWalk {
    pub fn new(spec: &GroupSpec, gens: Gens) -> Result<Self> {
        let spec = spec.element_model()?;
        let elements = enumerate_group(&spec)?;
        let gen_elems = generators(&spec, gens)?;
        if gen_elems.is_empty() {
            return Err(Error::InvalidRank(format!(
                "{spec} has no {gens} generators"
            )));
        }
        let index: HashMap<&GroupElement, u32> = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w, k as u32))
            .collect();
        let actions = gen_elems
            .iter()
            .map(|g| {
                elements
                    .iter()
                    .map(|w| multiply(w, g).map(|wg| index[&wg]))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let id = identity(&spec)?;
        let mut counts = vec![BigUint::zero(); elements.len()];
        counts[index[&id] as usize] = BigUint::one();
        Ok(ExactWalk {
            spec,
            elements,
            actions,
            counts,
            denominator: BigUint::one(),
            t: 0,
        })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn generator_count(&self) -> usize {
        self.actions.len()
    }

    pub fn step(&mut self) {
        let mut next = vec![BigUint::zero(); self.counts.len()];
        for action in &self.actions {
            for (from, c) in self.counts.iter().enumerate() {
                if !c.is_zero() {
                    next[action[from] as usize] += c;
                }
            }
        }
        self.counts = next;
        self.denominator *= self.actions.len();
        self.t += 1;
    }

    pub fn advance_to(&mut self, t: u64) {
        while self.t < t {
            self.step();
        }
    }

    pub fn expectation<F>(&self, statistic: F) -> Rational
    where
        F: Fn(&GroupElement) -> u64,
    {
        let mut num = BigUint::zero();
        for (w, c) in self.elements.iter().zip(&self.counts) {
            if !c.is_zero() {
                num += c * statistic(w);
            }
        }
        Rational::new(num.into(), self.denominator.clone().into())
    }

    pub fn distribution(&self) -> ExactDist {
        let den: BigInt = self.denominator.clone().into();
        let probs = self
            .elements
            .iter()
            .zip(&self.counts)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w.clone(), Rational::new(c.clone().into(), den.clone())))
            .collect();
        ExactDist {
            spec: self.spec,
            t: self.t,
            probs,
        }
    }
}

/// Exact distribution of a product of `t` uniform generators.
pub fn evolve_distribution(spec: &GroupSpec, gens: Gens, t: u64) -> Result<ExactDist> {
    if t == 0 {
        return ExactDist::point_mass(spec);
    }
    let mut walk = ExactWalk::new(spec, gens)?;
    walk.advance_to(t);
    Ok(walk.distribution())
}

/// `Σ p(w)·statistic(w)`.
pub fn expectation<F>(dist: &ExactDist, statistic: F) -> Rational
where
    F: Fn(&GroupElement) -> u64,
{
    dist.expectation(statistic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::{reflections_of, Permutation};
    use crate::lengths::{abs_length_dihedral, statistic, CoxeterLength, Measure};
    use crate::rational::{frac, int};

    #[test]
    fn one_step_is_uniform_on_generators() {
        let spec = GroupSpec::i2(3).unwrap();
        let dist = evolve_distribution(&spec, Gens::AllReflections, 1).unwrap();
        assert_eq!(dist.len(), 3);
        for t in reflections_of(&spec).unwrap() {
            assert_eq!(dist.prob(&t), frac(1, 3));
        }
        let abs = dist.expectation(|w| match w {
            GroupElement::Dihedral(d) => abs_length_dihedral(d),
            _ => unreachable!(),
        });
        assert_eq!(abs, int(1));
    }

    #[test]
    fn two_transpositions_in_s3() {
        let spec = GroupSpec::a(3).unwrap();
        let dist = evolve_distribution(&spec, Gens::AllReflections, 2).unwrap();
        assert_eq!(dist.len(), 3);
        assert_eq!(dist.prob(&identity(&spec).unwrap()), frac(1, 3));
        for cyc in [vec![2, 3, 1], vec![3, 1, 2]] {
            assert_eq!(
                dist.prob(&GroupElement::Perm(Permutation::new(cyc).unwrap())),
                frac(1, 3)
            );
        }
        assert_eq!(dist.total(), int(1));
    }

    #[test]
    fn b1_walk_returns_to_identity() {
        let spec = GroupSpec::b(1).unwrap();
        let dist = evolve_distribution(&spec, Gens::AllReflections, 2).unwrap();
        assert_eq!(dist.len(), 1);
        assert_eq!(dist.prob(&identity(&spec).unwrap()), int(1));
    }

    #[test]
    fn expectations() {
        let spec = GroupSpec::a(3).unwrap();
        let point = ExactDist::point_mass(&spec).unwrap();
        let len = CoxeterLength::new(&spec).unwrap();
        assert_eq!(point.expectation(|w| len.length(w).unwrap()), int(0));
        let dist = evolve_distribution(&spec, Gens::AllReflections, 1).unwrap();
        assert_eq!(expectation(&dist, |w| len.length(w).unwrap()), frac(5, 3));
    }

    #[test]
    fn mass_and_parity() {
        for spec in [
            GroupSpec::a(4),
            GroupSpec::b(3),
            GroupSpec::d(3),
            GroupSpec::i2(5),
        ] {
            let spec = spec.unwrap();
            let len = statistic(&spec, Measure::Length).unwrap();
            let mut walk = ExactWalk::new(&spec, Gens::AllReflections).unwrap();
            for t in 0..6 {
                walk.advance_to(t);
                let dist = walk.distribution();
                assert_eq!(dist.total(), int(1));
                assert!(dist.iter().all(|(w, _)| len(w) % 2 == t % 2));
                assert!(dist.iter().all(|(w, _)| spec.contains(w)));
                assert_eq!(walk.expectation(&*len), dist.expectation(&*len));
            }
        }
    }

    #[test]
    fn empty_generator_set_is_rejected() {
        assert!(matches!(
            ExactWalk::new(&GroupSpec::d(1).unwrap(), Gens::AllReflections),
            Err(Error::InvalidRank(_))
        ));
    }

    #[test]
    fn order_prob_checks_indices() {
        let dist = evolve_distribution(&GroupSpec::b(2).unwrap(), Gens::AllReflections, 1).unwrap();
        assert_eq!(dist.order_prob(-1, 1).unwrap(), frac(1, 2));
        assert!(dist.order_prob(1, 1).is_err());
        assert!(dist.order_prob(0, 1).is_err());
    }
}
