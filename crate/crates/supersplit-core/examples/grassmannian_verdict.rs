//! Minimal library walkthrough: build gl(2|2), take the (1,1) block
//! parabolic, and ask for the verdict.

use supersplit_core::grading::{full_verdict, Verdict};
use supersplit_core::{catalog, Envelope};

fn main() {
    let g = catalog::gl(2, 2);
    let h = catalog::parabolic(&g, 2, 2, 1, 1).unwrap();
    let env = Envelope::new(&g);
    let verdict = full_verdict(&env, &h);
    assert_eq!(verdict.verdict, Verdict::NoCompatibleLeftInvariantGrading);
    println!(
        "gl(2|2) / p(1,1): {} (effectiveness ideal dim {})",
        verdict.verdict.as_str(),
        verdict.assumptions.effectiveness_ideal_dim
    );
}
