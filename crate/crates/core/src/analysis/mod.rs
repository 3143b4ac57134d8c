//! Structural audits of minimal DNFs: near-zero points, conjunction
//! classes, closed-form bounds, cut checks and seeded experiments.

mod bounds;
mod classes;
mod cuts;
mod near_zero;
mod sampling;

pub use bounds::{
    chernoff_tail_check, epsilon, theorem2_bound, theorem2_first_form, theorem2_second_form,
    theorem3_bound, BoundReport, ChernoffReport, Rational, Theorem2Regime, Theorem3Regime,
    Theorem3Report,
};
pub use classes::{
    check_inequalities, check_inequalities_at, classification_report, classify_conjunctions,
    conjunction_class, inequality_verdicts, ClassPrecondition, ClassificationReport,
    ClassifiedConjunction, ConjunctionClass, InequalityReport, LiteralCount, Verdict,
};
pub use cuts::{
    decomposable_on, enumerate_cuts, verify_cut_lemma, Cut, CutLemmaReport, MAX_CUT_ROWS,
};
pub use near_zero::{
    dyakonov_check, near_zero_sets, theta, DyakonovEntry, DyakonovReport, Incidence, NearZeroReport,
};
pub use sampling::{
    experiment_theorem1, sample_phi, sample_phi_with_rng, theorem1_exact, theorem1_threshold,
    theorem2_sweep, trial_rng, SweepRow, Theorem1Report, MAX_SAMPLE_ZEROS, REJECTION_BUDGET,
};
