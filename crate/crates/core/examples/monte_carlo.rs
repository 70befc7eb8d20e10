// Seeded sampling against the exact answers.

use std::error::Error;

use coxwalk::closedform::{closed_form, Formula};
use coxwalk::elements::{Gens, GroupSpec};
use coxwalk::lengths::Measure;
use coxwalk::montecarlo::simulate_with_threads;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cells = [
        (GroupSpec::a(12)?, Gens::AllReflections, Measure::Length, 8),
        (
            GroupSpec::b(5)?,
            Gens::AllReflections,
            Measure::AbsLength,
            4,
        ),
        (GroupSpec::i2(7)?, Gens::Simple, Measure::Length, 9),
    ];
    for (spec, gens, measure, t) in cells {
        let exact = closed_form(&spec, gens, measure, t, Formula::Auto)?
            .value
            .to_f64();
        let one = simulate_with_threads(&spec, gens, measure, t, 20_000, 7, Some(1))?;
        let many = simulate_with_threads(&spec, gens, measure, t, 20_000, 7, Some(4))?;
        assert_eq!(one, many);
        let z = (one.mean - exact) / one.stderr;
        println!(
            "{spec} {gens} {measure} t={t}: {:.4} +- {:.4} (exact {exact:.4}, z = {z:+.2})",
            one.mean, one.stderr
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
