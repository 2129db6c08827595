//! Gridworld navigation students and demonstration teaching.
//!
//! Environments are deterministic grids with border walls, a single goal
//! cell, reward -1 per step and 0 on the step that enters the goal. The
//! teacher is trained online with epsilon-greedy Q-learning until its
//! greedy policy is shortest-path optimal from every free cell. Students
//! hold tabular Q-values too, but learn only offline, from demonstrated
//! trajectories, via the assignment
//!
//! ```text
//! Q(s_t, a_t) = r_t + gamma * V(s_{t+1}),    V(s) = max_a Q(s, a)
//! ```
//!
//! applied in reverse time order so a single pass propagates the goal
//! value back along the whole demonstration.
//!
//! Teaching strategies select the demonstration start cells: uniformly at
//! random, or by probing the student at a few cells (does its greedy
//! action match the teacher's?) and ranking all cells with a Gaussian
//! process fitted to the mismatch feedback.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gp::{AcquisitionMode, BeliefState};

/// Grid position, `row` ∈ [0, height), `col` ∈ [0, width).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.row, c.col)
    }
}

/// The four moves, in the fixed tie-break order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Up,
    Down,
    Left,
    Right,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::Up, Action::Down, Action::Left, Action::Right];

    fn delta(self) -> (isize, isize) {
        match self {
            Action::Up => (-1, 0),
            Action::Down => (1, 0),
            Action::Left => (0, -1),
            Action::Right => (0, 1),
        }
    }

    fn index(self) -> usize {
        match self {
            Action::Up => 0,
            Action::Down => 1,
            Action::Left => 2,
            Action::Right => 3,
        }
    }
}

/// Which family of layouts an environment belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutKind {
    EmptyRoom,
    FourRooms,
}

/// A deterministic gridworld with border walls and one terminal goal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gridworld {
    pub width: usize,
    pub height: usize,
    pub goal: Cell,
    pub layout_kind: LayoutKind,
    walls: Vec<bool>,
}

/// Supported sizes: empty rooms of 7, 9 or 11; four rooms of 9 or 11.
pub fn build_env(kind: LayoutKind, size: usize) -> Result<Gridworld> {
    let allowed: &[usize] = match kind {
        LayoutKind::EmptyRoom => &[7, 9, 11],
        LayoutKind::FourRooms => &[9, 11],
    };
    if !allowed.contains(&size) {
        return Err(Error::InvalidArgument(format!(
            "size {size} is not supported for {kind:?} (allowed: {allowed:?})"
        )));
    }
    let mut walls = vec![false; size * size];
    for i in 0..size {
        walls[i] = true;
        walls[(size - 1) * size + i] = true;
        walls[i * size] = true;
        walls[i * size + (size - 1)] = true;
    }
    if kind == LayoutKind::FourRooms {
        let mid = size / 2;
        // One doorway per wall segment, at the segment midpoint.
        let door_a = (1 + mid - 1) / 2;
        let door_b = (mid + 1 + size - 2) / 2;
        for i in 1..size - 1 {
            walls[mid * size + i] = true;
            walls[i * size + mid] = true;
        }
        for d in [door_a, door_b] {
            walls[mid * size + d] = false;
            walls[d * size + mid] = false;
        }
    }
    let goal = Cell::new(size - 2, size - 2);
    let env = Gridworld { width: size, height: size, goal, layout_kind: kind, walls };
    debug_assert!(!env.is_wall(goal));
    // Every free cell must reach the goal.
    let dist = env.shortest_path_steps();
    let unreachable: Vec<Cell> =
        env.free_cells().into_iter().filter(|&c| dist[env.index(c)].is_none()).collect();
    if !unreachable.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "layout is disconnected; {} free cells cannot reach the goal",
            unreachable.len()
        )));
    }
    Ok(env)
}

impl Gridworld {
    fn index(&self, c: Cell) -> usize {
        c.row * self.width + c.col
    }

    pub fn is_wall(&self, c: Cell) -> bool {
        c.row >= self.height || c.col >= self.width || self.walls[self.index(c)]
    }

    /// All free cells (goal included), in row-major order.
    pub fn free_cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for row in 0..self.height {
            for col in 0..self.width {
                let c = Cell::new(row, col);
                if !self.is_wall(c) {
                    cells.push(c);
                }
            }
        }
        cells
    }

    /// One deterministic transition. Moving into a wall keeps the state.
    /// Returns (next state, reward, reached goal).
    pub fn step(&self, s: Cell, a: Action) -> (Cell, f64, bool) {
        let (dr, dc) = a.delta();
        let nr = s.row as isize + dr;
        let nc = s.col as isize + dc;
        let candidate = Cell::new(nr as usize, nc as usize);
        let next = if nr < 0 || nc < 0 || self.is_wall(candidate) { s } else { candidate };
        if next == self.goal {
            (next, 0.0, true)
        } else {
            (next, -1.0, false)
        }
    }

    /// Breadth-first number of steps from each cell to the goal
    /// (`None` for walls and unreachable cells, 0 at the goal itself).
    pub fn shortest_path_steps(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.width * self.height];
        let mut queue = std::collections::VecDeque::new();
        dist[self.index(self.goal)] = Some(0);
        queue.push_back(self.goal);
        while let Some(c) = queue.pop_front() {
            let d = dist[self.index(c)].expect("queued cells have distances");
            for a in Action::ALL {
                let (dr, dc) = a.delta();
                let nr = c.row as isize - dr;
                let nc = c.col as isize - dc;
                if nr < 0 || nc < 0 {
                    continue;
                }
                let n = Cell::new(nr as usize, nc as usize);
                if !self.is_wall(n) && dist[self.index(n)].is_none() {
                    dist[self.index(n)] = Some(d + 1);
                    queue.push_back(n);
                }
            }
        }
        dist
    }

    /// Text rendering: `#` wall, `.` free, `G` goal. Rows end in `\n`.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in 0..self.height {
            for col in 0..self.width {
                let c = Cell::new(row, col);
                out.push(if c == self.goal {
                    'G'
                } else if self.is_wall(c) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }
}

/// Tabular action values over a fixed grid.
///
/// The goal row is pinned to zero: the goal is terminal, so its value
/// never changes and never should.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QTable {
    q: Vec<[f64; 4]>,
    width: usize,
    goal: Cell,
    pub gamma: f64,
    pub alpha: f64,
}

impl QTable {
    /// Fresh table with every free non-goal entry set to `init`.
    pub fn new(env: &Gridworld, gamma: f64, alpha: f64, init: f64) -> Result<Self> {
        if !(0.0 < gamma && gamma <= 1.0) {
            return Err(Error::InvalidArgument(format!("gamma {gamma} must be in (0, 1]")));
        }
        if !(0.0 < alpha && alpha <= 1.0) {
            return Err(Error::InvalidArgument(format!("alpha {alpha} must be in (0, 1]")));
        }
        let mut q = vec![[init; 4]; env.width * env.height];
        q[env.index(env.goal)] = [0.0; 4];
        Ok(Self { q, width: env.width, goal: env.goal, gamma, alpha })
    }

    fn idx(&self, c: Cell) -> usize {
        c.row * self.width + c.col
    }

    pub fn get(&self, s: Cell, a: Action) -> f64 {
        self.q[self.idx(s)][a.index()]
    }

    pub fn set(&mut self, s: Cell, a: Action, value: f64) {
        if s == self.goal {
            return;
        }
        let i = self.idx(s);
        self.q[i][a.index()] = value;
    }

    /// V(s) = max_a Q(s, a).
    pub fn value(&self, s: Cell) -> f64 {
        self.q[self.idx(s)].iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Argmax action with ties broken in the fixed order up, down, left,
    /// right.
    pub fn greedy_action(&self, s: Cell) -> Action {
        let row = &self.q[self.idx(s)];
        let mut best = Action::Up;
        let mut best_v = row[0];
        for a in Action::ALL {
            if row[a.index()] > best_v {
                best_v = row[a.index()];
                best = a;
            }
        }
        best
    }
}

/// How much of the environment a student has already experienced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnowledgeLevel {
    None,
    OnePath,
    SomePaths,
    AllPaths,
}

/// The student's prior experience: its level and the set of cells its
/// initialization trajectories visited.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudentKnowledge {
    pub level: KnowledgeLevel,
    pub experienced_states: BTreeSet<Cell>,
}

/// A student: offline Q-values plus the record of prior experience.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Student {
    pub q: QTable,
    pub knowledge: StudentKnowledge,
}

/// One environment transition inside a demonstration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub state: Cell,
    pub action: Action,
    pub reward: f64,
    pub next_state: Cell,
}

/// A demonstrated path. `terminal` records whether it reached the goal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub steps: Vec<Step>,
    pub terminal: bool,
}

impl Trajectory {
    /// Every state the trajectory touches, including the final one.
    pub fn visited_states(&self) -> BTreeSet<Cell> {
        let mut set = BTreeSet::new();
        for step in &self.steps {
            set.insert(step.state);
            set.insert(step.next_state);
        }
        set
    }

    /// Serialize one trajectory per line.
    pub fn to_jsonl(trajs: &[Trajectory]) -> Result<String> {
        let mut out = String::new();
        for t in trajs {
            out.push_str(&serde_json::to_string(t)?);
            out.push('\n');
        }
        Ok(out)
    }
}

/// Discount used by every Q-table in this module.
pub const GAMMA: f64 = 0.99;
/// Online learning rate for the teacher and the passive learner.
pub const ALPHA: f64 = 0.1;
/// Pessimistic initial action value for offline students. Demonstrated
/// values (bounded below by -steps) always beat it, so a taught action
/// immediately becomes the greedy one.
pub const STUDENT_Q_INIT: f64 = -100.0;

/// Train the teacher with the standard budget: 5000 episodes of up to
/// 100 steps, epsilon 0.3.
pub fn train_teacher(env: &Gridworld, seed: u64) -> Result<QTable> {
    train_teacher_with(env, 5000, 100, 0.3, seed)
}

/// Epsilon-greedy tabular Q-learning from uniformly random starts.
///
/// After the budget the greedy policy is verified against breadth-first
/// shortest-path distances from every free cell; any suboptimal cell is
/// reported as a training failure.
pub fn train_teacher_with(
    env: &Gridworld,
    episodes: usize,
    steps_per_episode: usize,
    epsilon: f64,
    seed: u64,
) -> Result<QTable> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} must be in [0, 1]")));
    }
    let mut q = QTable::new(env, GAMMA, ALPHA, 0.0)?;
    let starts: Vec<Cell> = env.free_cells().into_iter().filter(|&c| c != env.goal).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..episodes {
        let mut s = starts[rng.gen_range(0..starts.len())];
        for _ in 0..steps_per_episode {
            let a = if rng.gen::<f64>() < epsilon {
                Action::ALL[rng.gen_range(0..4)]
            } else {
                q.greedy_action(s)
            };
            let (next, reward, done) = env.step(s, a);
            let bootstrap = if done { 0.0 } else { q.value(next) };
            let current = q.get(s, a);
            q.set(s, a, current + q.alpha * (reward + q.gamma * bootstrap - current));
            if done {
                break;
            }
            s = next;
        }
    }
    let bad = suboptimal_cells(env, &q);
    if bad.is_empty() {
        Ok(q)
    } else {
        Err(Error::TrainingFailure { cells: bad.into_iter().map(Into::into).collect() })
    }
}

/// Free non-goal cells whose greedy rollout does not reach the goal in
/// exactly the shortest-path number of steps.
pub fn suboptimal_cells(env: &Gridworld, q: &QTable) -> Vec<Cell> {
    let dist = env.shortest_path_steps();
    let cap = 4 * env.width * env.height;
    let mut bad = Vec::new();
    for s in env.free_cells() {
        if s == env.goal {
            continue;
        }
        let want = dist[env.index(s)].expect("connected layout");
        match greedy_steps_to_goal(env, q, s, cap) {
            Some(steps) if steps == want => {}
            _ => bad.push(s),
        }
    }
    bad
}

fn greedy_steps_to_goal(env: &Gridworld, q: &QTable, start: Cell, cap: usize) -> Option<usize> {
    let mut s = start;
    for steps in 1..=cap {
        let (next, _, done) = env.step(s, q.greedy_action(s));
        if done {
            return Some(steps);
        }
        s = next;
    }
    None
}

/// Greedy teacher rollout from `start`, recorded as a demonstration.
pub fn demonstrate(env: &Gridworld, teacher: &QTable, start: Cell) -> Result<Trajectory> {
    if env.is_wall(start) || start == env.goal {
        return Err(Error::InvalidArgument(format!(
            "demonstration start {start:?} must be a free non-goal cell"
        )));
    }
    let cap = 4 * env.width * env.height;
    let mut steps = Vec::new();
    let mut s = start;
    for _ in 0..cap {
        let a = teacher.greedy_action(s);
        let (next, reward, done) = env.step(s, a);
        steps.push(Step { state: s, action: a, reward, next_state: next });
        if done {
            return Ok(Trajectory { steps, terminal: true });
        }
        s = next;
    }
    Err(Error::RolloutFailure { start: start.into(), cap })
}

/// Initialize a student at the requested knowledge level.
///
/// Prior experience is teacher demonstrations replayed offline: none,
/// one from the canonical start (the top-left free cell), one from a
/// seeded 25% sample of free cells, or one from every free cell.
pub fn init_student(
    env: &Gridworld,
    teacher: &QTable,
    level: KnowledgeLevel,
    seed: u64,
) -> Result<Student> {
    let q = QTable::new(env, GAMMA, ALPHA, STUDENT_Q_INIT)?;
    let mut student = Student {
        q,
        knowledge: StudentKnowledge { level, experienced_states: BTreeSet::new() },
    };
    let all_starts: Vec<Cell> =
        env.free_cells().into_iter().filter(|&c| c != env.goal).collect();
    let starts: Vec<Cell> = match level {
        KnowledgeLevel::None => Vec::new(),
        KnowledgeLevel::OnePath => vec![all_starts[0]],
        KnowledgeLevel::SomePaths => {
            let k = (all_starts.len() / 4).max(1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pool = all_starts.clone();
            pool.shuffle(&mut rng);
            pool.truncate(k);
            pool
        }
        KnowledgeLevel::AllPaths => all_starts,
    };
    for start in starts {
        let traj = demonstrate(env, teacher, start)?;
        offline_update(&mut student.q, &traj)?;
        student.knowledge.experienced_states.extend(traj.visited_states());
    }
    Ok(student)
}

/// Mismatch feedback: 1 if the student's greedy action differs from the
/// teacher's at `s`, else 0.
pub fn probe_state(student: &QTable, teacher: &QTable, env: &Gridworld, s: Cell) -> Result<u8> {
    if env.is_wall(s) || s == env.goal {
        return Err(Error::InvalidArgument(format!(
            "probe cell {s:?} must be a free non-goal cell"
        )));
    }
    Ok(u8::from(student.greedy_action(s) != teacher.greedy_action(s)))
}

/// Replay one demonstration into the student's Q-values.
///
/// Assignments run in reverse time order, so the goal value propagates
/// through the whole trajectory in a single pass; a second replay of the
/// same trajectory is a no-op.
pub fn offline_update(student: &mut QTable, traj: &Trajectory) -> Result<()> {
    if traj.steps.is_empty() {
        return Err(Error::InvalidArgument("empty trajectory".into()));
    }
    if !traj.terminal {
        return Err(Error::InvalidArgument("trajectory does not reach the goal".into()));
    }
    for pair in traj.steps.windows(2) {
        if pair[0].next_state != pair[1].state {
            return Err(Error::InvalidArgument(format!(
                "trajectory breaks between {:?} and {:?}",
                pair[0].next_state, pair[1].state
            )));
        }
    }
    for step in traj.steps.iter().rev() {
        let bootstrap = if step.next_state == student.goal {
            0.0
        } else {
            student.value(step.next_state)
        };
        student.set(step.state, step.action, step.reward + student.gamma * bootstrap);
    }
    Ok(())
}

/// How demonstration start cells are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TeachingStrategy {
    /// Uniform random starts, no interaction with the student.
    Rt,
    /// Probe with random acquisition, then teach the worst-ranked cells.
    DrT,
    /// Probe with expected improvement, then teach the worst-ranked cells.
    DeiT,
}

/// GP lengthscale over cell coordinates normalized to the unit square.
pub const STATE_LENGTHSCALE: f64 = 0.2;

/// Probe (for the diagnosing strategies), pick `k` start cells, roll out
/// teacher demonstrations and replay them into the student.
///
/// Returns the demonstrations and the overlap percentage between the
/// taught states and the student's prior experience.
pub fn teach_rl(
    env: &Gridworld,
    teacher: &QTable,
    student: &mut Student,
    strategy: TeachingStrategy,
    probes_t: usize,
    k: usize,
    seed: u64,
) -> Result<(Vec<Trajectory>, f64)> {
    let pool: Vec<Cell> = env.free_cells().into_iter().filter(|&c| c != env.goal).collect();
    if k == 0 || k > pool.len() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} must be in 1..={} for this environment",
            pool.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<Cell> = match strategy {
        TeachingStrategy::Rt => {
            let mut cells = pool.clone();
            cells.shuffle(&mut rng);
            cells.truncate(k);
            cells
        }
        TeachingStrategy::DrT | TeachingStrategy::DeiT => {
            let mode = if strategy == TeachingStrategy::DeiT {
                AcquisitionMode::Ei
            } else {
                AcquisitionMode::Random
            };
            let coords: Vec<Vec<f64>> = pool
                .iter()
                .map(|c| {
                    vec![
                        c.row as f64 / (env.height - 1) as f64,
                        c.col as f64 / (env.width - 1) as f64,
                    ]
                })
                .collect();
            let mut belief =
                BeliefState::new(vec![(0.0, 1.0), (0.0, 1.0)], STATE_LENGTHSCALE)?;
            for _ in 0..probes_t {
                let idx = belief.select_next(&coords, mode, &mut rng)?;
                let feedback = probe_state(&student.q, teacher, env, pool[idx])?;
                // The acquisition minimizes, so mismatches (the cells
                // worth teaching) enter as the smaller target.
                belief.observe(coords[idx].clone(), -f64::from(feedback))?;
            }
            let surface = belief.posterior_surface(&coords)?;
            let mut order: Vec<usize> = (0..pool.len()).collect();
            order.sort_by(|&i, &j| {
                surface[i]
                    .mean
                    .partial_cmp(&surface[j].mean)
                    .expect("posterior means are finite")
                    .then(i.cmp(&j))
            });
            order.into_iter().take(k).map(|i| pool[i]).collect()
        }
    };
    let mut trajs = Vec::with_capacity(k);
    for start in starts {
        let traj = demonstrate(env, teacher, start)?;
        offline_update(&mut student.q, &traj)?;
        trajs.push(traj);
    }
    let overlap = overlap_percent(&student.knowledge, &trajs)?;
    Ok((trajs, overlap))
}

/// Average undiscounted greedy return over all free non-goal starts,
/// with a 100-step episode cap.
pub fn evaluate(env: &Gridworld, student: &QTable) -> f64 {
    let mut total = 0.0;
    let mut count = 0usize;
    for start in env.free_cells() {
        if start == env.goal {
            continue;
        }
        let mut ret = 0.0;
        let mut s = start;
        for _ in 0..100 {
            let (next, reward, done) = env.step(s, student.greedy_action(s));
            ret += reward;
            if done {
                break;
            }
            s = next;
        }
        total += ret;
        count += 1;
    }
    total / count as f64
}

/// Average return of a shortest-path policy, the best any policy can do.
pub fn optimal_average_return(env: &Gridworld) -> f64 {
    let dist = env.shortest_path_steps();
    let mut total = 0usize;
    let mut count = 0usize;
    for c in env.free_cells() {
        if c == env.goal {
            continue;
        }
        total += dist[c.row * env.width + c.col].expect("connected layout") - 1;
        count += 1;
    }
    -(total as f64) / count as f64
}

/// Result of a self-learning (no teacher) episode budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PassiveOutcome {
    /// Environment transitions consumed up to the end of the first
    /// episode after which the greedy policy evaluated as optimal;
    /// `None` if the budget ran out first.
    pub transitions_to_optimal: Option<usize>,
    /// Average return of the final greedy policy.
    pub final_return: f64,
    /// Total transitions consumed over the whole budget.
    pub total_transitions: usize,
}

/// Epsilon-greedy Q-learning without a teacher, tracking how many
/// environment transitions it takes to first reach optimal evaluation.
pub fn passive_learning(
    env: &Gridworld,
    episodes: usize,
    steps_per_episode: usize,
    epsilon: f64,
    seed: u64,
) -> Result<PassiveOutcome> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} must be in [0, 1]")));
    }
    let mut q = QTable::new(env, GAMMA, ALPHA, 0.0)?;
    let starts: Vec<Cell> = env.free_cells().into_iter().filter(|&c| c != env.goal).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let optimal = optimal_average_return(env);
    let mut transitions = 0usize;
    let mut first_optimal = None;
    for _ in 0..episodes {
        let mut s = starts[rng.gen_range(0..starts.len())];
        for _ in 0..steps_per_episode {
            let a = if rng.gen::<f64>() < epsilon {
                Action::ALL[rng.gen_range(0..4)]
            } else {
                q.greedy_action(s)
            };
            let (next, reward, done) = env.step(s, a);
            transitions += 1;
            let bootstrap = if done { 0.0 } else { q.value(next) };
            let current = q.get(s, a);
            q.set(s, a, current + q.alpha * (reward + q.gamma * bootstrap - current));
            if done {
                break;
            }
            s = next;
        }
        if first_optimal.is_none() && evaluate(env, &q) >= optimal - 1e-9 {
            first_optimal = Some(transitions);
        }
    }
    Ok(PassiveOutcome {
        transitions_to_optimal: first_optimal,
        final_return: evaluate(env, &q),
        total_transitions: transitions,
    })
}

/// Percentage of unique taught states the student had already
/// experienced.
pub fn overlap_percent(knowledge: &StudentKnowledge, trajs: &[Trajectory]) -> Result<f64> {
    if trajs.is_empty() {
        return Err(Error::InvalidArgument("overlap of an empty teaching batch".into()));
    }
    let mut taught = BTreeSet::new();
    for t in trajs {
        taught.extend(t.visited_states());
    }
    let hits = taught.intersection(&knowledge.experienced_states).count();
    Ok(100.0 * hits as f64 / taught.len() as f64)
}
