// Building group elements and measuring them.

use std::error::Error;

use coxwalk::elements::{
    generators, multiply, reflections_of, Gens, GroupElement, GroupSpec, SignedPermutation,
};
use coxwalk::lengths::{statistic, Measure};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let b3 = GroupSpec::b(3)?;
    println!(
        "{b3}: order {}, {} reflections",
        b3.order().unwrap(),
        reflections_of(&b3)?.len()
    );

    let w = GroupElement::Signed(SignedPermutation::new(vec![-2, 3, -1])?);
    for measure in [Measure::Length, Measure::AbsLength, Measure::Descents] {
        println!("  {measure}({w}) = {}", statistic(&b3, measure)?(&w));
    }

    // right multiplication by a simple reflection moves length by exactly one
    let len = statistic(&b3, Measure::Length)?;
    for s in generators(&b3, Gens::Simple)? {
        let ws = multiply(&w, &s)?;
        println!("  {w} * {s} = {ws}, length {}", len(&ws));
    }

    let d4 = GroupSpec::d(4)?;
    println!(
        "{d4}: {} simple reflections",
        generators(&d4, Gens::Simple)?.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
