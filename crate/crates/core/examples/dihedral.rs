// The dihedral groups I2(m), including m = infinity.

use std::error::Error;

use coxwalk::closedform::{
    expected_abslength_i2_s, expected_abslength_i2_t, expected_length_i2_s_troili,
    expected_length_i2_t, DihedralOrder,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for m in [5, 6] {
        println!("I2({m})");
        for t in 1..=6 {
            let fin = DihedralOrder::Finite(m);
            println!(
                "  t={t}: T-length {}, T-abslength {}, S-length {}, S-abslength {}",
                expected_length_i2_t(m, t)?,
                expected_abslength_i2_t(m, t)?,
                expected_length_i2_s_troili(fin, t)?,
                expected_abslength_i2_s(fin, t)?,
            );
        }
    }
    println!("I2(inf), simple reflections");
    for t in [1, 2, 10, 50] {
        println!(
            "  t={t}: length {}",
            expected_length_i2_s_troili(DihedralOrder::Infinite, t)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
