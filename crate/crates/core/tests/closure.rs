use std::time::Instant;

use biunitary::closure::{closure_cases, CONSTRUCTIONS};
use biunitary::Tolerance;

fn sweep(name: &str) {
    let tol = Tolerance::default().with_verify(1e-9).unwrap();
    let start = Instant::now();
    let cases = closure_cases(name, 2024, &tol).unwrap();
    assert!(!cases.is_empty());
    let failures: Vec<String> = cases
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {:?}", c.inputs, c.outcome.as_ref().map(|r| r.summary())))
        .collect();
    assert!(failures.is_empty(), "{name}: {failures:#?}");
    eprintln!("{name}: {} cases in {:.2?}", cases.len(), start.elapsed());
}

macro_rules! sweeps {
    ($($name:ident),* $(,)?) => {
        $(#[test] fn $name() { sweep(stringify!($name)); })*

        #[test]
        fn every_construction_is_swept() {
            assert_eq!(CONSTRUCTIONS.to_vec(), vec![$(stringify!($name)),*]);
        }
    };
}

sweeps!(
    had_had_to_qls,
    ueb_ueb_to_qls,
    hosoya_suzuki,
    dita,
    controlled_ueb_tensor,
    qsm,
    triple_hadamard_ueb,
    ternary_a,
    ternary_b,
    ternary_c,
    ternary_d,
    quad_a,
    octo_b,
    f_family,
);
