//! One line per acceptance criterion. Runs without the libtest harness so
//! the table is always printed, and one criterion at a time so timings are
//! not skewed by each other.

use std::process::ExitCode;

use springer_core::verify::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let r = run_criterion(id).expect("known criterion");
        println!("{r}");
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
