mod common;

const CASES: u32 = 128;

#[test]
fn determinism_across_thread_counts() {
    common::thread_count_determinism(CASES).unwrap();
}

#[test]
fn phase_wrap_closure() {
    common::phase_wrap_closure(CASES).unwrap();
}

#[test]
fn monotone_best_cost() {
    common::monotone_best(CASES).unwrap();
}

#[test]
fn fresnel_reflection_is_passive() {
    common::fresnel_passive(CASES).unwrap();
}

#[test]
fn path_lengths_are_reciprocal() {
    common::reciprocity(CASES).unwrap();
}

#[test]
fn global_phase_leaves_power_unchanged() {
    common::global_phase_invariance(CASES).unwrap();
}
