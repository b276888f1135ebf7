//! Runs the full verification suite and prints one line per criterion.

fn main() -> fpp_workbench::error::Result<()> {
    let report = fpp_workbench::suite::verify_all(4)?;
    print!("{}", report.text());
    std::process::exit(report.exit_code());
}
