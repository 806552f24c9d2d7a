//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//! Performance targets only warn.

use std::process::ExitCode;

use wordstat::reproduce::{run, Status};

fn main() -> ExitCode {
    let only = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let results = run(only.as_deref(), |r| println!("{}", r.line()));
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    println!(
        "acceptance: {} criteria, {} failed, {} warnings",
        results.len(),
        failed,
        results.iter().filter(|r| r.status == Status::Warn).count()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
