// Driving the command-line front end from code.

use std::error::Error;

use coxwalk::cli::run;

fn invoke(line: &str) -> Result<String, Box<dyn Error>> {
    let mut out = Vec::new();
    let code = run(
        std::iter::once("coxwalk").chain(line.split_whitespace()),
        &mut out,
    );
    if code != 0 {
        return Err(format!("`{line}` exited with {code}").into());
    }
    Ok(String::from_utf8(out)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    print!(
        "{}",
        invoke("eval --family B --n 3 --gens reflections --measure length --t 4 --format json")?
    );
    print!(
        "{}",
        invoke("eval --family G --r 3 --n 4 --measure abslength --t 5 --format csv")?
    );
    print!(
        "{}",
        invoke("table --family D --n 5 --t-max 4 --trials 2000")?
    );
    print!("{}", invoke("verify --suite operators")?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
