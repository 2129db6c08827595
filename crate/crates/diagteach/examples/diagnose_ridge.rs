//! Infer a ridge student's hidden regularization strength by probing,
//! then teach it the target weights with one constructed example.
//!
//! Run with: cargo run --example diagnose_ridge

use diagteach::diagnosis::{diagnose_ridge, DiagnosisConfig};
use diagteach::linear::RidgeStudent;
use diagteach::teaching::ridge_teaching_set;

fn main() -> diagteach::Result<()> {
    let w_star = [1.5, -2.0];
    let hidden_lambda = 10.0;
    let student = RidgeStudent::new(hidden_lambda)?;

    // Five probes on the hypothesis range [0, 100]: each probe teaches a
    // candidate-lambda dataset, compares the real student's response to a
    // simulated student's, and feeds the squared gap to a GP.
    let config = DiagnosisConfig::new(100.0, 42);
    let result = diagnose_ridge(&student, &w_star, &config)?;

    println!("probe log (hidden lambda = {hidden_lambda}):");
    println!("{:>4} {:>12} {:>14}", "iter", "hypothesis", "squared gap");
    for rec in &result.probe_log {
        println!("{:>4} {:>12.2} {:>14.6}", rec.iter, rec.hypothesis, rec.target);
    }
    println!("MAP estimate: lambda_hat = {}", result.map_estimate);

    // Teach at the estimate and measure how close the student lands.
    let set = ridge_teaching_set(&w_star, result.map_estimate, 1.0)?;
    let trained = student.train(&set.to_dataset()?)?;
    let err: f64 = trained
        .iter()
        .zip(&w_star)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    println!("taught weights: {trained:?}");
    println!("weight error after teaching: {err:.2e}");
    Ok(())
}
