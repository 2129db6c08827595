//! Diagnose what a gridworld student already knows, then demonstrate
//! only the trajectories it still needs.
//!
//! Run with: cargo run --example gridworld_teaching

use diagteach::gridworld::{
    build_env, evaluate, init_student, optimal_average_return, teach_rl, train_teacher,
    KnowledgeLevel, LayoutKind, TeachingStrategy,
};

fn main() -> diagteach::Result<()> {
    let env = build_env(LayoutKind::FourRooms, 9)?;
    println!("{}", env.render());

    let teacher = train_teacher(&env, 2)?;
    println!("teacher trained; optimal average return = {:.4}", optimal_average_return(&env));

    // The student has walked one path to the goal and nothing else.
    let mut student = init_student(&env, &teacher, KnowledgeLevel::OnePath, 5)?;
    println!(
        "student starts with {} experienced states, return {:.4}",
        student.knowledge.experienced_states.len(),
        evaluate(&env, &student.q)
    );

    // Probe mismatches between student and teacher actions, rank starts
    // by the belief over unfamiliarity, demonstrate the top K.
    let (trajectories, overlap) =
        teach_rl(&env, &teacher, &mut student, TeachingStrategy::DeiT, 5, 8, 11)?;
    let transitions: usize = trajectories.iter().map(|t| t.steps.len()).sum();
    println!(
        "taught {} trajectories ({} transitions), overlap with prior knowledge {:.1}%",
        trajectories.len(),
        transitions,
        overlap
    );
    println!("student return after teaching: {:.4}", evaluate(&env, &student.q));
    Ok(())
}
