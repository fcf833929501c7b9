//! Full analysis of a builtin fixture, printed as a table and as JSON.

use hyperplane_lcs::report::{run, AnalysisRequest, Format};

fn main() -> hyperplane_lcs::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "k4-braid".into());
    let report = run(&AnalysisRequest::builtin(&name))?;
    println!("{}", report.render(Format::Table));
    println!("{}", report.render(Format::Doc));
    Ok(())
}
