// Random transpositions on six letters: closed form, full distribution and
// pair engine side by side.

use std::error::Error;

use coxwalk::closedform::{expected_length_a_t, pair_prob_a};
use coxwalk::elements::{Gens, GroupSpec};
use coxwalk::exact::{evolve_pairtable, ExactWalk};
use coxwalk::lengths::{statistic, Measure};
use coxwalk::rational::to_f64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = GroupSpec::a(6)?;
    let inversions = statistic(&spec, Measure::Length)?;
    let mut walk = ExactWalk::new(&spec, Gens::AllReflections)?;

    println!("{:>3} {:>28} {:>10}", "t", "E[inversions]", "decimal");
    for t in 0..=8 {
        walk.advance_to(t);
        let closed = expected_length_a_t(6, t)?;
        assert_eq!(closed, walk.expectation(&*inversions));
        assert_eq!(
            closed,
            evolve_pairtable(spec.family, 6, t)?.expected_length()?
        );
        println!(
            "{t:>3} {:>28} {:>10.6}",
            closed.to_string(),
            to_f64(&closed)
        );
    }

    // the walk forgets adjacent pairs more slowly than distant ones
    for (i, j) in [(1, 2), (1, 4), (1, 6)] {
        println!("P(pi_{i} > pi_{j}) at t=3: {}", pair_prob_a(6, i, j, 3)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
