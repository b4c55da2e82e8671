use context_calculus::machines::{enumerate, MachineSpec, Outcome};

#[test]
fn class_size_matches_iteration() {
    let mut count = 0u64;
    let mut code = 0u64;
    while MachineSpec::decode(2, 2, code).is_ok() {
        count += 1;
        code += 1;
    }
    assert_eq!(count, 6561);
    assert_eq!(enumerate(2, 2, 10).unwrap().total, count);
}

#[test]
fn report_is_stable_across_thread_counts() {
    let with_threads = |n: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| enumerate(2, 2, 1000).unwrap().to_string())
    };
    let one = with_threads(1);
    assert_eq!(one, with_threads(4));
    assert_eq!(one, with_threads(3));
}

#[test]
fn runs_are_deterministic_and_monotone() {
    for code in (0..6561).step_by(17) {
        let m = MachineSpec::decode(2, 2, code).unwrap();
        let a = m.run(&[], 200).unwrap();
        assert_eq!(a, m.run(&[], 200).unwrap());
        if let Outcome::Halted(s) = a.outcome {
            assert!(s <= 200);
            assert_eq!(m.run(&[], 10_000).unwrap(), a);
        }
    }
}
