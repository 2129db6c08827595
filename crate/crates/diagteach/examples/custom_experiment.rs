//! Assemble an experiment configuration in code, run it, and write the
//! records plus the aggregated plot companion.
//!
//! Run with: cargo run --example custom_experiment

use diagteach::harness::{
    emit_results, plot_companion_path, run_experiment, Domain, ExperimentConfig, Method, Metric,
    OutputFormat,
};

fn main() -> diagteach::Result<()> {
    // Compare EI diagnosis against random-hypothesis teaching on the
    // same ten hidden students.
    let mut records = Vec::new();
    for method in [Method::DeiT, Method::Rt] {
        let mut config = ExperimentConfig::new(Domain::Ridge, method);
        config.lambda_max = 200.0;
        config.dims = 3;
        config.seed = 9;
        records.extend(run_experiment(&config)?);
    }

    for method in ["dei_t", "rt"] {
        let mses: Vec<f64> = records
            .iter()
            .filter(|r| r.metric == Metric::Mse && r.method.name() == method)
            .map(|r| r.value)
            .collect();
        let mean = mses.iter().sum::<f64>() / mses.len() as f64;
        println!("{method:6} mean held-out MSE over {} runs: {mean:.6}", mses.len());
    }

    let out = std::env::temp_dir().join("custom_experiment.csv");
    emit_results(&records, &out, OutputFormat::Csv)?;
    println!("\nwrote {}", out.display());
    println!("plot companion:\n{}", std::fs::read_to_string(plot_companion_path(&out))?);
    Ok(())
}
