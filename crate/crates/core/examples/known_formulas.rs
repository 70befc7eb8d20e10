// Adjacent transpositions and absolute length in G(r,1,n).

use std::error::Error;

use coxwalk::closedform::{
    expected_abslength_g_eh, expected_length_a_s_bm, expected_length_a_s_eriksen,
};
use coxwalk::elements::{Gens, GroupSpec};
use coxwalk::exact::ExactWalk;
use coxwalk::lengths::{statistic, Measure};
use coxwalk::rational::to_f64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // 4 generators: the symmetric group on 5 letters
    let spec = GroupSpec::a(5)?;
    let len = statistic(&spec, Measure::Length)?;
    let mut walk = ExactWalk::new(&spec, Gens::Simple)?;
    for t in [0, 3, 7, 12] {
        walk.advance_to(t);
        let exact = expected_length_a_s_eriksen(4, t)?;
        assert_eq!(exact, walk.expectation(&*len));
        let trig = expected_length_a_s_bm(4, t)?;
        println!(
            "A4 simple, t={t}: {exact} = {:.12} ~ {trig:.12}",
            to_f64(&exact)
        );
    }

    for (r, n) in [(1, 6), (2, 4), (3, 3), (5, 2)] {
        let values: Vec<String> = (0..=4)
            .map(|t| expected_abslength_g_eh(r, n, t).map(|q| q.to_string()))
            .collect::<Result<_, _>>()?;
        println!(
            "G({r},1,{n}) absolute length, t=0..4: {}",
            values.join(", ")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
