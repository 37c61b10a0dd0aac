//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use cdomain_core::acceptance::{criteria, run_criterion};

fn main() -> ExitCode {
    let all = criteria();
    let mut failed = Vec::new();
    for c in &all {
        let o = run_criterion(c);
        println!("{}", o.line());
        if !o.pass {
            failed.push(o.id);
        }
    }
    println!("acceptance: {} of {} criteria passed", all.len() - failed.len(), all.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
