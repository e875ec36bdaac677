//! Running verification suites from code instead of the command line.
//!
//! cargo run --example verification -- wi

use doubling_zeta::verify::{run, GridSpec, Status, Suite, VerifyOptions};

fn main() -> doubling_zeta::Result<()> {
    let suites: Vec<Suite> = match std::env::args().nth(1) {
        Some(name) => vec![name.parse()?],
        None => vec![Suite::Igamma, Suite::Wi, Suite::WfdMain],
    };
    let grid = GridSpec { grid_n: Some(1), ..GridSpec::default() };
    let reports = run(&suites, &grid, &VerifyOptions::default())?;
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    println!("{} cases, {failed} failed", reports.len());
    Ok(())
}
