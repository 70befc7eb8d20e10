// The pair engine and the operators behind its recurrences.

use std::error::Error;

use coxwalk::closedform::lemma_bd_v;
use coxwalk::elements::Family;
use coxwalk::exact::operators::{apply_q_bd, bd_recurrence_step};
use coxwalk::exact::{apply_q_a, evolve_pairtable, AntisymMatrix, DSpaceFunction, PairKind};
use coxwalk::rational::{frac, int};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let table = evolve_pairtable(Family::D, 5, 4)?;
    assert!(table.check_invariants());
    println!("D5 after 4 steps: N^t = {}", table.scale());
    for (i, j) in [(-4, 5), (1, 2), (2, 3), (1, 5)] {
        println!("  P(pi_{i} < pi_{j}) = {}", table.get(i, j).unwrap());
    }
    let v = table.to_kind(PairKind::V)?;
    println!("  v(1,2) = {}", v.get(1, 2).unwrap());

    let m = AntisymMatrix::initial(6);
    let qm = apply_q_a(&m);
    assert_eq!(apply_q_a(&qm), &int(6) * &qm);

    let x = frac(-7, 3);
    let mut f = DSpaceFunction::initial(4);
    for _ in 0..3 {
        f = bd_recurrence_step(&f, &x);
    }
    assert_eq!(f.get(-1, 3).unwrap(), &lemma_bd_v(4, &x, 3, -1, 3)?);
    let qf = apply_q_bd(&f);
    assert_eq!(apply_q_bd(&qf), qf.scale(&int(6)));
    println!(
        "closed form at x = {x}, t = 3, (-1,3): {}",
        f.get(-1, 3).unwrap()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
