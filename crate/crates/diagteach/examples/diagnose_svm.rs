//! Probe an SVM student and show why its regularization strength barely
//! matters: the separating direction is scale invariant.
//!
//! Run with: cargo run --example diagnose_svm

use diagteach::diagnosis::{diagnose_svm, DiagnosisConfig};
use diagteach::linear::{classification_accuracy, Dataset, SvmStudent};
use diagteach::teaching::svm_teaching_set;

fn main() -> diagteach::Result<()> {
    let w_star = [1.0, 1.0];
    let hidden_lambda = 2.0;
    let student = SvmStudent::new(hidden_lambda)?;

    // SVM hypothesis grids must stay strictly positive.
    let mut config = DiagnosisConfig::new(100.0, 7);
    config.lambda_min = 0.5;
    let result = diagnose_svm(&student, &w_star, &config)?;

    println!("probe log (hidden lambda = {hidden_lambda}):");
    println!("{:>4} {:>12} {:>14}", "iter", "hypothesis", "squared gap");
    for rec in &result.probe_log {
        println!("{:>4} {:>12.2} {:>14.2e}", rec.iter, rec.hypothesis, rec.target);
    }
    println!("MAP estimate: lambda_hat = {}", result.map_estimate);
    println!("(gaps are solver noise: hyperplane distance ignores weight scale,");
    println!(" so every hypothesis looks alike and the estimate is uninformative)");

    // Teaching still works at any positive estimate: the taught student
    // separates a held-out cloud perfectly.
    let set = svm_teaching_set(&w_star, result.map_estimate)?;
    let fit = student.train(&set.to_dataset()?)?;
    let holdout = Dataset::new(
        vec![vec![1.0, 2.0], vec![2.0, 0.5], vec![-1.0, -0.5], vec![-0.5, -2.0]],
        vec![1.0, 1.0, -1.0, -1.0],
    )?;
    let acc = classification_accuracy(&fit.weights, &holdout)?;
    println!("taught weights: {:?}", fit.weights);
    println!("held-out accuracy: {:.0}%", 100.0 * acc);
    Ok(())
}
