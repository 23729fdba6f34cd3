//! Runs every acceptance criterion and prints one line each.

use std::process::ExitCode;

use torsite_core::acceptance::run_all;
use torsite_core::Budget;

fn main() -> ExitCode {
    let results = run_all(Budget::default());
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 && results.len() == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
