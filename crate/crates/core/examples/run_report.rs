// Building a verification report in code and writing it as JSON and CSV.

use luttinger_ff::cli::{run, Command, Profile, Tolerances};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::for_profile(Profile::Default);
    let cmd = Command::Sumrule { a: 0.8, max_level: 8 };
    let report = run(&cmd, &tol)?;
    print!("{}", report.render_text());

    let dir = std::env::temp_dir().join("luttinger-ff-example");
    let files = report.write_csv(&dir)?;
    report.write_json(&dir.join("sumrule.json"))?;
    println!("\nwrote {} CSV file(s) and sumrule.json to {}", files.len(), dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
