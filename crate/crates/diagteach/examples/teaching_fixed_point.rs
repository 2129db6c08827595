//! Construct optimal teaching sets for students whose regularization
//! strength is known, and verify the students land on the target
//! weights exactly.
//!
//! Run with: cargo run --example teaching_fixed_point

use diagteach::linear::{svm_certificate, RidgeStudent, SvmStudent};
use diagteach::teaching::{ridge_teaching_set, svm_teaching_set};

fn main() -> diagteach::Result<()> {
    let w_star = [2.0, -1.0, 0.5];

    // Ridge: a single point x = a*w*, y = (lambda + a^2 ||w*||^2)/a is a
    // fixed point of regularized least squares at the student's lambda.
    let lambda = 7.5;
    let set = ridge_teaching_set(&w_star, lambda, 1.0)?;
    println!("ridge teaching set ({} point):", set.points.len());
    for p in &set.points {
        println!("  x = {:?}, y = {:.4}", p.x, p.y);
    }
    let student = RidgeStudent::new(lambda)?;
    let trained = student.train(&set.to_dataset()?)?;
    let err: f64 = trained
        .iter()
        .zip(&w_star)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    println!("trained ridge weights: {trained:?}");
    println!("distance to w*: {err:.2e}\n");

    // SVM: N = ceil(lambda ||w*||^2) copies of (lambda w*/N, +1) make w*
    // the unique minimizer of the regularized hinge objective.
    let lambda = 3.0;
    let set = svm_teaching_set(&w_star, lambda)?;
    println!("svm teaching set ({} copies):", set.points.len());
    println!("  x = {:?}, y = {:+.0}", set.points[0].x, set.points[0].y);
    let cert = svm_certificate(&set.to_dataset()?, lambda, &w_star)?;
    println!("stationarity certificate at w*: {cert:.2e}");
    let fit = SvmStudent::new(lambda)?.train(&set.to_dataset()?)?;
    let err: f64 = fit
        .weights
        .iter()
        .zip(&w_star)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    println!("trained svm weights:   {:?}", fit.weights);
    println!("distance to w*: {err:.2e}");
    Ok(())
}
