// Types B and D: exact chains on small ranks, the pair engine far beyond
// enumeration.

use std::error::Error;

use coxwalk::closedform::{expected_length_b_t, expected_length_d_t};
use coxwalk::elements::{Gens, GroupSpec};
use coxwalk::exact::{evolve_pairtable, ExactWalk};
use coxwalk::lengths::{statistic, Measure};
use coxwalk::rational::to_f64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for spec in [GroupSpec::b(4)?, GroupSpec::d(4)?] {
        let len = statistic(&spec, Measure::Length)?;
        let mut walk = ExactWalk::new(&spec, Gens::AllReflections)?;
        walk.advance_to(5);
        let closed = match spec.family {
            coxwalk::elements::Family::B => expected_length_b_t(4, 5)?,
            _ => expected_length_d_t(4, 5)?,
        };
        assert_eq!(closed, walk.expectation(&*len));
        println!("{spec}, t=5: {closed}");
    }

    // |B_60| is astronomically large; the pair engine only needs 120x120 entries
    let n = 60;
    for t in [10, 40, 160] {
        let engine = evolve_pairtable(coxwalk::elements::Family::B, n, t)?.expected_length()?;
        assert_eq!(engine, expected_length_b_t(n, t)?);
        println!("B{n}, t={t}: {:.4} (max {})", to_f64(&engine), n * n);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
