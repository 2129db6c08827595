//! Oracles shared by the integration test suites.

use diagteach::gridworld::{Action, Cell, Gridworld, QTable, GAMMA};

/// Plain value iteration over the environment's free cells, run to a
/// fixed point. Independent of the Q-learning code paths: it consumes
/// only the environment's step function.
pub fn value_iteration(env: &Gridworld) -> Vec<f64> {
    let n = env.width * env.height;
    let mut v = vec![0.0; n];
    let free = env.free_cells();
    loop {
        let mut delta: f64 = 0.0;
        for &cell in &free {
            if cell == env.goal {
                continue;
            }
            let idx = cell.row * env.width + cell.col;
            let mut best = f64::NEG_INFINITY;
            for a in Action::ALL {
                let (next, reward, done) = env.step(cell, a);
                let next_idx = next.row * env.width + next.col;
                let q = reward + if done { 0.0 } else { GAMMA * v[next_idx] };
                best = best.max(q);
            }
            delta = delta.max((best - v[idx]).abs());
            v[idx] = best;
        }
        if delta < 1e-12 {
            return v;
        }
    }
}

/// Actions from `cell` whose one-step lookahead attains the optimal
/// value under `values` (the value-iteration fixed point).
pub fn optimal_actions(env: &Gridworld, values: &[f64], cell: Cell) -> Vec<Action> {
    let mut best = f64::NEG_INFINITY;
    let mut q = Vec::new();
    for a in Action::ALL {
        let (next, reward, done) = env.step(cell, a);
        let next_idx = next.row * env.width + next.col;
        let value = reward + if done { 0.0 } else { GAMMA * values[next_idx] };
        q.push((a, value));
        best = best.max(value);
    }
    q.into_iter().filter(|(_, value)| (best - value).abs() <= 1e-9).map(|(a, _)| a).collect()
}

/// Number of greedy steps from `cell` to the goal, or None if the
/// policy wanders past the cap.
#[allow(dead_code)] // not every test target walks greedy paths
pub fn greedy_steps(env: &Gridworld, q: &QTable, cell: Cell) -> Option<usize> {
    let mut s = cell;
    for step in 0..(4 * env.width * env.height) {
        if s == env.goal {
            return Some(step);
        }
        let (next, _, done) = env.step(s, q.greedy_action(s));
        if done {
            return Some(step + 1);
        }
        if next == s {
            return None;
        }
        s = next;
    }
    None
}
