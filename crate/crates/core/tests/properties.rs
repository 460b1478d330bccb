use proptest::prelude::*;
use z2ca_core::verify::{check_remark1, enumerate_admissible_phi, SearchMode};
use z2ca_core::{
    compute_f, compute_j, gauge_a, gauge_joint, gauge_psi, is_valid, run, solve_gauge, GaugeDiagram, GaugeInput,
    GaugeRow, MatterDiagram, MatterRow, PhiField, SRule, TheorySpec,
};

fn mask(bits: usize) -> u64 {
    (1u64 << bits) - 1
}

#[test]
fn gauge_action_is_a_group_action() {
    for i in (0..1 << 8).step_by(5) {
        let a = GaugeDiagram::from_index(2, 1, i).unwrap();
        let d = MatterDiagram::from_index(2, 1, i).unwrap();
        for p in 0..1 << 6 {
            let p2 = (p * 37 + 11) & 63;
            let (f, g) = (
                PhiField::from_index(2, 2, p).unwrap(),
                PhiField::from_index(2, 2, p2).unwrap(),
            );
            assert_eq!(gauge_a(&gauge_a(&a, &f).unwrap(), &f).unwrap(), a);
            assert_eq!(
                gauge_a(&gauge_a(&a, &f).unwrap(), &g).unwrap(),
                gauge_a(&a, &f.xor(&g).unwrap()).unwrap()
            );
            assert_eq!(gauge_psi(&gauge_psi(&d, &f).unwrap(), &f).unwrap(), d);
        }
    }
}

#[test]
fn sampled_remark1_agrees_with_exhaustive() {
    let exhaustive = check_remark1(2, 1, SearchMode::Exhaustive).unwrap();
    for seed in 0..3 {
        let sampled = check_remark1(2, 1, SearchMode::Sampled { seed, samples: 500 }).unwrap();
        assert_eq!(sampled.verdict, exhaustive.verdict);
    }
}

#[test]
fn gauged_rule_admits_every_phi_at_n3() {
    let (set, report) = enumerate_admissible_phi(TheorySpec::gauged(SRule::None), 3, 0).unwrap();
    assert!(set.is_all(), "{}", report.render());
}

proptest! {
    #[test]
    fn j_is_invariant(n in 2usize..6, t in 0usize..4, d in any::<u64>(), p in any::<u64>()) {
        let d = MatterDiagram::from_index(n, t, d & mask(2 * n * (t + 1))).unwrap();
        let phi = PhiField::from_index(n, t, p & mask(n * (t + 1))).unwrap();
        prop_assert_eq!(compute_j(&gauge_psi(&d, &phi).unwrap()), compute_j(&d));
    }

    #[test]
    fn solver_inverts_random_transforms(n in 2usize..5, t in 1usize..3, a in any::<u64>(), p in any::<u64>()) {
        let a = GaugeDiagram::from_index(n, t, a & mask(2 * n * (t + 1))).unwrap();
        let phi = PhiField::from_index(n, t + 1, p & mask(n * (t + 2))).unwrap();
        let b = gauge_a(&a, &phi).unwrap();
        let found = solve_gauge(&a, &b, None).unwrap().unwrap();
        prop_assert_eq!(gauge_a(&a, &found).unwrap(), b.clone());
        prop_assert_eq!(compute_f(&a).unwrap(), compute_f(&b).unwrap());
    }

    #[test]
    fn gauged_runs_stay_valid_under_any_phi(
        n in 2usize..6, t in 0usize..4, psi in any::<u64>(), g in any::<u64>(), p in any::<u64>(),
    ) {
        let spec = TheorySpec::gauged(SRule::None);
        let gauge = GaugeDiagram::from_index(n, t, g & mask(2 * n * (t + 1))).unwrap();
        let psi0 = MatterRow::from_index(n, psi & mask(2 * n)).unwrap();
        let c = run(spec, &psi0, &GaugeInput::External(gauge), t).unwrap();
        let phi = PhiField::from_index(n, t + 1, p & mask(n * (t + 2))).unwrap();
        prop_assert!(is_valid(spec, &gauge_joint(&c, &phi).unwrap()).is_ok());
    }

    #[test]
    fn global_flip_preserves_every_gauge_rule(n in 2usize..6, t in 0usize..4, psi in any::<u64>(), a in any::<u64>()) {
        for rule in [SRule::Advect, SRule::AdvectFlip, SRule::Frozen] {
            let spec = TheorySpec::gauged(rule);
            let psi0 = MatterRow::from_index(n, psi & mask(2 * n)).unwrap();
            let a0 = GaugeRow::from_index(n, a & mask(2 * n)).unwrap();
            let c = run(spec, &psi0, &GaugeInput::Initial(a0), t).unwrap();
            let ones = PhiField::constant(n, t + 1, true).unwrap();
            prop_assert!(is_valid(spec, &gauge_joint(&c, &ones).unwrap()).is_ok());
        }
    }
}
