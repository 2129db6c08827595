//! Fit a Gaussian-process belief to a handful of noise-free
//! observations and query its posterior and acquisition surface.
//!
//! Run with: cargo run --example gp_posterior

use diagteach::gp::{AcquisitionMode, BeliefState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> diagteach::Result<()> {
    // Observations of f(x) = (x - 3)^2 on [0, 10].
    let mut belief = BeliefState::new(vec![(0.0, 10.0)], 2.0)?;
    for x in [0.0, 2.0, 5.0, 9.0] {
        let y = (x - 3.0) * (x - 3.0);
        belief.observe(vec![x], y)?;
    }

    println!("posterior after {} observations:", belief.history().len());
    println!("{:>6} {:>10} {:>10}", "x", "mean", "std");
    for i in 0..=20 {
        let x = i as f64 * 0.5;
        let p = belief.posterior_at(&[x])?;
        println!("{x:>6.2} {:>10.4} {:>10.4}", p.mean, p.variance.sqrt());
    }

    // At an observed input the posterior interpolates the target and the
    // uncertainty collapses.
    let at_obs = belief.posterior_at(&[2.0])?;
    println!(
        "\nat observed x=2: mean {:.6} (target 1.0), std {:.2e}",
        at_obs.mean,
        at_obs.variance.sqrt()
    );

    // Expected improvement proposes the next probe among candidates.
    let grid: Vec<Vec<f64>> = (0..=100).map(|i| vec![i as f64 * 0.1]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let pick = belief.select_next(&grid, AcquisitionMode::Ei, &mut rng)?;
    println!("EI proposes the next probe at x = {:.1}", grid[pick][0]);
    Ok(())
}
