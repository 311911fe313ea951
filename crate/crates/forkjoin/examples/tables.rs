//! Runs the three built-in experiment presets end to end and writes their
//! CSV reports: per sweep row, the analytic bounds and a seeded γ̂ estimate.
//!
//! Run with: cargo run --release --example tables -- [OUT_DIR] [CYCLES]
//!
//! Defaults: OUT_DIR = target/tables, CYCLES = 100000 (a couple of minutes
//! in a debug build; use --release for table-scale runs).

use forkjoin::experiment::{self, render_csv, run_experiment, DEFAULT_CYCLES, DEFAULT_SEED};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out_dir = std::path::PathBuf::from(args.get(1).map(String::as_str).unwrap_or("target/tables"));
    let cycles: usize = args.get(2).map(|s| s.parse().expect("CYCLES must be a number")).unwrap_or(DEFAULT_CYCLES);
    std::fs::create_dir_all(&out_dir).expect("create output directory");

    let presets = [
        experiment::table1(cycles, DEFAULT_SEED),
        experiment::table2(cycles, DEFAULT_SEED),
        experiment::table3(cycles, DEFAULT_SEED, 10).unwrap(),
    ];

    for preset in presets {
        let started = std::time::Instant::now();
        let rows = run_experiment(&preset).expect("preset runs");
        println!(
            "{} — {} ({} rows, {} cycles each, seed {}, {:.1?})",
            preset.name,
            preset.topology_desc,
            rows.len(),
            preset.cycles,
            preset.seed,
            started.elapsed()
        );
        println!("{:>6} {:>10} {:>10} {:>10}  method", "param", "lower", "gamma", "upper");
        for row in &rows {
            let r = &row.report;
            let e = r.estimate.as_ref().unwrap();
            println!(
                "{:>6} {:>10.6} {:>10.6} {:>10.6}  {}",
                row.label, r.lower, e.gamma, r.upper.value, r.upper.method
            );
        }
        let path = out_dir.join(format!("{}.csv", preset.name));
        std::fs::write(&path, render_csv(&preset, &rows)).expect("write CSV");
        println!("wrote {}\n", path.display());
    }
}
