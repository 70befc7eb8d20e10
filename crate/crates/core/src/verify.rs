//! Self-verification suites: every closed form against the exact engines,
//! the operator identities, and Monte Carlo calibration.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closedform::{self, DihedralOrder, PairProbs};
use crate::elements::{Family, Gens, GroupSpec};
use crate::error::{Error, Result};
use crate::exact::operators::{a_recurrence_step, bd_recurrence_step};
use crate::exact::{apply_q_a, apply_q_bd, pair_walk, AntisymMatrix, DSpaceFunction, ExactWalk};
use crate::lengths::{statistic, Measure};
use crate::montecarlo::simulate_with_threads;
use crate::rational::{frac, int, to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Dihedral,
    TypeA,
    TypeB,
    TypeD,
    KnownFormulas,
    Operators,
    MonteCarlo,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dihedral" => Suite::Dihedral,
            "typeA" => Suite::TypeA,
            "typeB" => Suite::TypeB,
            "typeD" => Suite::TypeD,
            "known-formulas" => Suite::KnownFormulas,
            "operators" => Suite::Operators,
            "montecarlo" => Suite::MonteCarlo,
            "all" => Suite::All,
            other => return Err(Error::InvalidSpec(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failures: Vec<String>, cases: usize) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{cases} cases")
        } else {
            format!(
                "{} of {cases} cases failed; first: {}",
                failures.len(),
                failures[0]
            )
        };
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Tallies mismatches between two routes.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        what: impl FnOnce() -> String,
        left: T,
        right: T,
    ) {
        self.cases += 1;
        if left != right {
            self.failures.push(format!("{}: {left} != {right}", what()));
        }
    }

    fn ok(&mut self, what: impl FnOnce() -> String, cond: bool) {
        self.cases += 1;
        if !cond {
            self.failures.push(what());
        }
    }

    fn finish(self, name: &str) -> Check {
        Check::new(name, self.failures, self.cases)
    }
}

fn err(name: &str, e: Error) -> Check {
    Check {
        name: name.into(),
        passed: false,
        detail: e.to_string(),
    }
}

fn wrap(name: &str, f: impl FnOnce(&mut Tally) -> Result<()>) -> Check {
    let mut tally = Tally::default();
    match f(&mut tally) {
        Ok(()) => tally.finish(name),
        Err(e) => err(name, e),
    }
}

/// Closed-form expected length against the full-distribution engine.
fn length_vs_full(
    tally: &mut Tally,
    spec: &GroupSpec,
    t_max: u64,
    closed: impl Fn(u64) -> Result<Rational>,
) -> Result<()> {
    let len = statistic(spec, Measure::Length)?;
    let mut walk = ExactWalk::new(spec, Gens::AllReflections)?;
    for t in 0..=t_max {
        walk.advance_to(t);
        tally.eq(
            || format!("{spec} t={t}"),
            closed(t)?,
            walk.expectation(&*len),
        );
    }
    Ok(())
}

/// Pairwise engine against the pair closed forms.
fn pairs_vs_closed(tally: &mut Tally, family: Family, n: u64, t_max: u64) -> Result<()> {
    for table in pair_walk(family, n)?.take(t_max as usize + 1) {
        let probs = PairProbs::new(family, n, table.t())?;
        let nn = n as i64;
        for j in 1..=nn {
            let lo = match family {
                Family::A => 1,
                Family::B => -j,
                _ => -j + 1,
            };
            for i in lo..j {
                if i == 0 {
                    continue;
                }
                // q = (N^t − u) / N^t, compared without reducing
                let closed = probs.inversion(i, j)?;
                let inverted = table.scale() - table.count(i, j).expect("admissible");
                tally.ok(
                    || format!("{family}{n} t={} ({i},{j}): {closed}", table.t()),
                    closed.numer() * table.scale() == inverted * closed.denom(),
                );
            }
        }
    }
    Ok(())
}

/// Pairwise engine against marginals of the full distribution.
fn pairs_vs_full(tally: &mut Tally, spec: &GroupSpec, t_max: u64) -> Result<()> {
    let mut walk = ExactWalk::new(spec, Gens::AllReflections)?;
    for table in pair_walk(spec.family, spec.n)?.take(t_max as usize + 1) {
        walk.advance_to(table.t());
        let dist = walk.distribution();
        for (i, j) in table.pairs() {
            tally.eq(
                || format!("{spec} t={} ({i},{j})", table.t()),
                dist.order_prob(i, j)?,
                table.get(i, j).unwrap().clone(),
            );
        }
    }
    Ok(())
}

pub fn type_a() -> Vec<Check> {
    vec![
        wrap(
            "typeA expected length = full distribution (n<=6, t<=10)",
            |tally| {
                for n in 2..=6 {
                    length_vs_full(tally, &GroupSpec::a(n)?, 10, |t| {
                        closedform::expected_length_a_t(n, t)
                    })?;
                }
                Ok(())
            },
        ),
        wrap(
            "typeA pair probabilities = pairwise engine (n<=40, t<=30)",
            |tally| (2..=40).try_for_each(|n| pairs_vs_closed(tally, Family::A, n, 30)),
        ),
        wrap(
            "typeA pairwise engine = full-distribution marginals (n<=6, t<=8)",
            |tally| (2..=6).try_for_each(|n| pairs_vs_full(tally, &GroupSpec::a(n)?, 8)),
        ),
        wrap("typeA translation invariance (n<=6, t<=6)", |tally| {
            for n in 2..=6u64 {
                let mut walk = ExactWalk::new(&GroupSpec::a(n)?, Gens::AllReflections)?;
                for t in 0..=6 {
                    walk.advance_to(t);
                    let dist = walk.distribution();
                    let nn = n as i64;
                    for i in 1..=nn {
                        for j in i + 1..=nn {
                            let base = dist.order_prob(i, j)?;
                            for k in 1..=nn - j {
                                tally.eq(
                                    || format!("n={n} t={t} ({i},{j})+{k}"),
                                    dist.order_prob(i + k, j + k)?,
                                    base.clone(),
                                );
                            }
                        }
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn signed_suite(family: Family, ranks: std::ops::RangeInclusive<u64>) -> Vec<Check> {
    let closed = move |n: u64, t: u64| match family {
        Family::B => closedform::expected_length_b_t(n, t),
        _ => closedform::expected_length_d_t(n, t),
    };
    let lo = *ranks.start();
    vec![
        wrap(
            &format!("type{family} expected length = full distribution (n<=4, t<=8)"),
            |tally| {
                for n in ranks.clone() {
                    let spec = GroupSpec::new(family, n, 1)?;
                    length_vs_full(tally, &spec, 8, |t| closed(n, t))?;
                }
                Ok(())
            },
        ),
        wrap(
            &format!("type{family} pair probabilities = pairwise engine (n<=40, t<=30)"),
            |tally| {
                (lo.max(2)..=40).try_for_each(|n| pairs_vs_closed(tally, family, n, 30))?;
                if family == Family::B {
                    pairs_vs_closed(tally, family, 1, 30)?;
                }
                Ok(())
            },
        ),
        wrap(
            &format!("type{family} pairwise engine = full-distribution marginals (n<=4, t<=8)"),
            |tally| {
                ranks
                    .clone()
                    .try_for_each(|n| pairs_vs_full(tally, &GroupSpec::new(family, n, 1)?, 8))
            },
        ),
        wrap(
            &format!("type{family} pairwise engine = pair-sum expected length (n<=40, t<=30)"),
            |tally| {
                for n in lo..=40 {
                    for table in pair_walk(family, n)?.take(31) {
                        tally.eq(
                            || format!("n={n} t={}", table.t()),
                            table.expected_length()?,
                            closed(n, table.t())?,
                        );
                    }
                }
                Ok(())
            },
        ),
    ]
}

pub fn type_b() -> Vec<Check> {
    signed_suite(Family::B, 1..=4)
}

pub fn type_d() -> Vec<Check> {
    signed_suite(Family::D, 2..=4)
}

/// A dihedral closed form against the full distribution, `m ≤ 12`, `t ≤ 20`.
fn dihedral_grid(
    tally: &mut Tally,
    gens: Gens,
    measure: Measure,
    t_min: u64,
    f: &dyn Fn(u64, u64) -> Result<Rational>,
) -> Result<()> {
    for m in 2..=12 {
        let spec = GroupSpec::i2(m)?;
        let stat = statistic(&spec, measure)?;
        let mut walk = ExactWalk::new(&spec, gens)?;
        for t in 0..=20 {
            walk.advance_to(t);
            if t >= t_min {
                tally.eq(
                    || format!("m={m} t={t}"),
                    f(m, t)?,
                    walk.expectation(&*stat),
                );
            }
        }
    }
    Ok(())
}

fn troili_check() -> Check {
    wrap("dihedral S-length (troili, m<=12, t<=20)", |tally| {
        dihedral_grid(tally, Gens::Simple, Measure::Length, 0, &|m, t| {
            closedform::expected_length_i2_s_troili(DihedralOrder::Finite(m), t)
        })
    })
}

pub fn dihedral() -> Vec<Check> {
    vec![
        wrap("dihedral T-length (m<=12, 1<=t<=20)", |tally| {
            dihedral_grid(tally, Gens::AllReflections, Measure::Length, 1, &|m, t| {
                closedform::expected_length_i2_t(m, t)
            })
        }),
        wrap("dihedral S-abslength (m<=12, t<=20)", |tally| {
            dihedral_grid(tally, Gens::Simple, Measure::AbsLength, 0, &|m, t| {
                closedform::expected_abslength_i2_s(DihedralOrder::Finite(m), t)
            })
        }),
        wrap("dihedral T-abslength (m<=12, 1<=t<=20)", |tally| {
            dihedral_grid(
                tally,
                Gens::AllReflections,
                Measure::AbsLength,
                1,
                &|m, t| closedform::expected_abslength_i2_t(m, t),
            )
        }),
        troili_check(),
        wrap("dihedral spot values", |tally| {
            for m in 2..=30u64 {
                for t in 1..=40u64 {
                    if m % 2 == 0 {
                        tally.eq(
                            || format!("T-length m={m} t={t}"),
                            closedform::expected_length_i2_t(m, t)?,
                            frac(m as i64, 2),
                        );
                    }
                    if t % 2 == 0 {
                        let want = int(2) - frac(2, m as i64);
                        tally.eq(
                            || format!("T-abslength m={m} t={t}"),
                            closedform::expected_abslength_i2_t(m, t)?,
                            want,
                        );
                    } else {
                        let got = closedform::expected_abslength_i2_s(DihedralOrder::Finite(m), t)?;
                        tally.eq(|| format!("S-abslength m={m} t={t}"), got, int(1));
                    }
                }
            }
            Ok(())
        }),
    ]
}

pub fn known_formulas() -> Vec<Check> {
    vec![
        troili_check(),
        wrap(
            "eriksen = exact adjacent-transposition chain (n<=5, t<=10)",
            |tally| {
                for n in 1..=5u64 {
                    let spec = GroupSpec::a(n + 1)?;
                    let len = statistic(&spec, Measure::Length)?;
                    let mut walk = ExactWalk::new(&spec, Gens::Simple)?;
                    for t in 0..=10 {
                        walk.advance_to(t);
                        tally.eq(
                            || format!("n={n} t={t}"),
                            closedform::expected_length_a_s_eriksen(n, t)?,
                            walk.expectation(&*len),
                        );
                    }
                }
                Ok(())
            },
        ),
        wrap("bm = eriksen within 1e-9 (n<=8, t<=50)", |tally| {
            for n in 1..=8u64 {
                for t in 0..=50 {
                    let e = to_f64(&closedform::expected_length_a_s_eriksen(n, t)?);
                    let b = closedform::expected_length_a_s_bm(n, t)?;
                    tally.ok(|| format!("n={n} t={t}: {b} vs {e}"), (b - e).abs() < 1e-9);
                }
            }
            Ok(())
        }),
        wrap(
            "eh(r=1) = exact transposition chain abslength (n<=5, t<=8)",
            |tally| {
                for n in 2..=5u64 {
                    let spec = GroupSpec::a(n)?;
                    let abs = statistic(&spec, Measure::AbsLength)?;
                    let mut walk = ExactWalk::new(&spec, Gens::AllReflections)?;
                    for t in 0..=8 {
                        walk.advance_to(t);
                        tally.eq(
                            || format!("n={n} t={t}"),
                            closedform::expected_abslength_g_eh(1, n, t)?,
                            walk.expectation(&*abs),
                        );
                    }
                }
                Ok(())
            },
        ),
        wrap(
            "eh(r=2) = exact B_n chain abslength (n<=3, t<=8)",
            |tally| {
                for n in 1..=3u64 {
                    let spec = GroupSpec::b(n)?;
                    let abs = statistic(&spec, Measure::AbsLength)?;
                    let mut walk = ExactWalk::new(&spec, Gens::AllReflections)?;
                    for t in 0..=8 {
                        walk.advance_to(t);
                        tally.eq(
                            || format!("n={n} t={t}"),
                            closedform::expected_abslength_g_eh(2, n, t)?,
                            walk.expectation(&*abs),
                        );
                    }
                }
                Ok(())
            },
        ),
        wrap("eh boundary values E(0)=0, E(1)=1 (r<=4, n<=6)", |tally| {
            for r in 1..=4u64 {
                for n in 1..=6u64 {
                    if r == 1 && n == 1 {
                        continue;
                    }
                    tally.eq(
                        || format!("r={r} n={n} t=0"),
                        closedform::expected_abslength_g_eh(r, n, 0)?,
                        int(0),
                    );
                    tally.eq(
                        || format!("r={r} n={n} t=1"),
                        closedform::expected_abslength_g_eh(r, n, 1)?,
                        int(1),
                    );
                }
            }
            Ok(())
        }),
    ]
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.random_range(-50..=50), rng.random_range(1..=12))
}

pub fn operators() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    vec![
        wrap(
            "Q^2 = nQ on antisymmetric matrices (n<=8, 100 samples)",
            |tally| {
                for n in 1..=8usize {
                    for _ in 0..100 {
                        let v = AntisymMatrix::from_upper(n, |_, _| random_rational(&mut rng));
                        let qv = apply_q_a(&v);
                        tally.ok(|| format!("n={n}"), apply_q_a(&qv) == &int(n as i64) * &qv);
                    }
                }
                Ok(())
            },
        ),
        wrap(
            "Q^2 = (2n-2)Q on D-space functions (n<=6, 100 samples)",
            |tally| {
                for n in 1..=6usize {
                    for _ in 0..100 {
                        let v = DSpaceFunction::from_fn(n, |_, _| random_rational(&mut rng));
                        let qv = apply_q_bd(&v);
                        let q2 = apply_q_bd(&qv);
                        tally.ok(|| format!("n={n}"), q2 == qv.scale(&int(2 * n as i64 - 2)));
                    }
                }
                Ok(())
            },
        ),
        wrap("B/D closed form = recurrence (n<=5, t<=10)", |tally| {
            for n in 2..=5usize {
                let x = random_rational(&mut rng);
                let mut v = DSpaceFunction::initial(n);
                for t in 0..=10u64 {
                    for p in crate::elements::IndexPair::all(n as u64) {
                        let (i, j) = (p.i as i64, p.j as i64);
                        let closed = closedform::lemma_bd_v(n as u64, &x, t, i, j)?;
                        tally.eq(
                            || format!("n={n} t={t} ({i},{j})"),
                            closed,
                            v.get(i, j).unwrap().clone(),
                        );
                    }
                    v = bd_recurrence_step(&v, &x);
                }
            }
            Ok(())
        }),
        wrap(
            "type A v-recurrence (Q + n(n-5)/2) = pairwise engine (n<=8, t<=8)",
            |tally| {
                for n in 2..=8u64 {
                    let x = frac((n * n) as i64 - 5 * n as i64, 2);
                    let scale = int((n * (n - 1) / 2) as i64);
                    let mut v = AntisymMatrix::initial(n as usize);
                    let mut factor = int(1);
                    for table in pair_walk(Family::A, n)?.take(9) {
                        for (i, j) in table.pairs() {
                            let engine = table.get(i, j).unwrap() - table.get(j, i).unwrap();
                            let rec = v.get(i as usize, j as usize) / &factor;
                            tally.eq(|| format!("n={n} t={} ({i},{j})", table.t()), engine, rec);
                        }
                        v = a_recurrence_step(&v, &x);
                        factor *= &scale;
                    }
                }
                Ok(())
            },
        ),
    ]
}

/// The Monte Carlo calibration grid: `(spec, gens, measure, t)`.
pub fn montecarlo_grid() -> Vec<(GroupSpec, Gens, Measure, u64)> {
    use Gens::*;
    use Measure::*;
    let s = |r: Result<GroupSpec>| r.expect("valid grid spec");
    vec![
        (s(GroupSpec::a(10)), AllReflections, Length, 5),
        (s(GroupSpec::a(6)), AllReflections, Length, 3),
        (s(GroupSpec::a(20)), AllReflections, Length, 15),
        (s(GroupSpec::a(8)), AllReflections, AbsLength, 6),
        (s(GroupSpec::a(5)), Simple, Length, 7),
        (s(GroupSpec::b(3)), AllReflections, Length, 4),
        (s(GroupSpec::b(6)), AllReflections, Length, 9),
        (s(GroupSpec::b(12)), AllReflections, Length, 20),
        (s(GroupSpec::b(3)), AllReflections, AbsLength, 5),
        (s(GroupSpec::b(2)), AllReflections, Length, 3),
        (s(GroupSpec::d(3)), AllReflections, Length, 2),
        (s(GroupSpec::d(5)), AllReflections, Length, 6),
        (s(GroupSpec::d(10)), AllReflections, Length, 12),
        (s(GroupSpec::d(4)), AllReflections, Length, 1),
        (s(GroupSpec::d(7)), AllReflections, Length, 30),
        (s(GroupSpec::i2(7)), AllReflections, AbsLength, 4),
        (s(GroupSpec::i2(5)), AllReflections, Length, 3),
        (s(GroupSpec::i2(6)), Simple, Length, 9),
        (s(GroupSpec::i2(9)), Simple, AbsLength, 8),
        (s(GroupSpec::i2(4)), Simple, Length, 12),
    ]
}

pub fn montecarlo(trials: u64) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(wrap(
        "montecarlo within 4 stderr of closed form (20-point grid)",
        |tally| {
            for (k, (spec, gens, measure, t)) in montecarlo_grid().into_iter().enumerate() {
                let closed =
                    closedform::closed_form(&spec, gens, measure, t, closedform::Formula::Auto)?;
                let exact = closed.value.to_f64();
                let sim =
                    simulate_with_threads(&spec, gens, measure, t, trials, 1000 + k as u64, None)?;
                tally.ok(
                    || {
                        format!(
                            "{spec} {gens} {measure} t={t}: {} vs {exact} (stderr {})",
                            sim.mean, sim.stderr
                        )
                    },
                    (sim.mean - exact).abs() < 4.0 * sim.stderr,
                );
            }
            Ok(())
        },
    ));
    out.push(wrap(
        "montecarlo bit-identical across thread counts",
        |tally| {
            for (spec, gens, measure, t) in montecarlo_grid().into_iter().step_by(4) {
                let a = simulate_with_threads(&spec, gens, measure, t, trials / 10, 7, Some(1))?;
                let b = simulate_with_threads(&spec, gens, measure, t, trials / 10, 7, Some(3))?;
                tally.ok(
                    || format!("{spec}"),
                    a.mean.to_bits() == b.mean.to_bits()
                        && a.stderr.to_bits() == b.stderr.to_bits(),
                );
            }
            Ok(())
        },
    ));
    out
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Dihedral => dihedral(),
        Suite::TypeA => type_a(),
        Suite::TypeB => type_b(),
        Suite::TypeD => type_d(),
        Suite::KnownFormulas => known_formulas(),
        Suite::Operators => operators(),
        Suite::MonteCarlo => montecarlo(100_000),
        Suite::All => [
            Suite::Dihedral,
            Suite::TypeA,
            Suite::TypeB,
            Suite::TypeD,
            Suite::KnownFormulas,
            Suite::Operators,
            Suite::MonteCarlo,
        ]
        .into_iter()
        .flat_map(run_suite)
        .collect(),
    }
}
