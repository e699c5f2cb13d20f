use std::process::ExitCode;

use polylin::verify::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let reports = run_all(DEFAULT_SEED);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
