//! Generate a demo tuple file and run the full verification suite on it,
//! printing the text report and the start of the JSON one.

use dcmodel::cli::{
    generate_demo, render_json, render_text, run_full_suite, DemoKind, SuiteOptions,
};

fn main() -> dcmodel::error::Result<()> {
    let dir = std::env::temp_dir().join("dcmodel-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("jordan.json");
    generate_demo(DemoKind::Jordan, &[2, 3], 0.6, 0)?.save(&path)?;

    let report = run_full_suite(&path, &SuiteOptions::default())?;
    print!("{}", render_text(&report));
    let json = render_json(&report);
    println!("{}", json.lines().take(8).collect::<Vec<_>>().join("\n"));
    println!("exit code would be {}", report.exit_code());
    Ok(())
}
