//! Prints one pass/fail line per acceptance criterion and exits nonzero if
//! any criterion fails.

use std::process::ExitCode;

use takiff::acceptance::{self, line};
use takiff_core::Limits;

fn main() -> ExitCode {
    let outcomes = acceptance::run(None, &Limits::default());
    assert_eq!(outcomes.len(), acceptance::criterion_ids().len());
    for o in &outcomes {
        println!("{}", line(o));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
