use std::cmp::Ordering;

use hclp::milp::{assignment_from_model, check_assignment, MilpFormulation};
use hclp::oracle::{brute_force_solve, enumerate_models};
use hclp::{
    c1_solve, deduce, max_singleton_sequence, non_strict_version, pc_check, EvaluationMatrix,
    HclpModel, HclpStructure, LevelSet, PreferenceStatement, SearchConfig, Verdict,
};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Case {
    structure: HclpStructure,
    statements: Vec<PreferenceStatement>,
}

/// Small instances with statements in both directions, so cycles and
/// inconsistency show up regularly.
fn case(max_n: usize, max_m: usize, max_g: usize) -> impl Strategy<Value = Case> {
    (1..=max_n, 2..=max_m).prop_flat_map(move |(n, m)| {
        let values = prop::collection::vec(0u32..=5, n * m);
        let raw = prop::collection::vec((0..m, 0..m, any::<bool>()), 0..=max_g);
        (values, raw).prop_map(move |(values, raw)| {
            let mut statements: Vec<PreferenceStatement> = Vec::new();
            for (a, b, strict) in raw {
                if let Ok(s) = PreferenceStatement::new(a, b, strict) {
                    if !statements.iter().any(|e| e.alpha() == a && e.beta() == b) {
                        statements.push(s);
                    }
                }
            }
            Case {
                structure: HclpStructure::additive(EvaluationMatrix::new(n, m, values).unwrap()),
                statements,
            }
        })
    })
}

fn consistent(r: &hclp::SolveResult) -> bool {
    matches!(r.verdict, Verdict::Consistent(_))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 300,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn indifferent_subset_can_be_dropped(
        values in prop::collection::vec(0u32..=3, 6 * 3),
        y in 0u64..64,
        x in 0u64..64,
        a in 0usize..3,
        b in 0usize..3,
    ) {
        let s = HclpStructure::additive(EvaluationMatrix::new(6, 3, values).unwrap());
        let y = LevelSet::from_bits(y);
        let x = LevelSet::from_bits(x).intersection(y);
        prop_assume!(s.compare_on_set(x, a, b).unwrap() == Ordering::Equal);
        prop_assert_eq!(
            s.compare_on_set(y, a, b).unwrap(),
            s.compare_on_set(y.difference(x), a, b).unwrap()
        );
    }

    #[test]
    fn search_agrees_with_oracle(c in case(5, 4, 5), t in 1usize..=3) {
        let oracle = brute_force_solve(&c.structure, &c.statements, t).unwrap();
        let plain = pc_check(&c.structure, &c.statements, &SearchConfig::new(t)).unwrap();
        let learning = pc_check(&c.structure, &c.statements, &SearchConfig::new(t).with_conflicts(3)).unwrap();
        prop_assert_eq!(consistent(&oracle), consistent(&plain));
        prop_assert_eq!(consistent(&oracle), consistent(&learning));
        for r in [&plain, &learning] {
            if let Some(w) = r.witness() {
                prop_assert!(c.structure.satisfies_all(w, &c.statements).unwrap());
                prop_assert!(w.validate(t, c.structure.n()).is_ok());
            }
        }
    }

    #[test]
    fn c1_matches_search_at_one(c in case(5, 4, 5)) {
        let c1 = c1_solve(&c.structure, &c.statements).unwrap();
        let pc = pc_check(&c.structure, &c.statements, &SearchConfig::new(1)).unwrap();
        prop_assert_eq!(consistent(&c1), consistent(&pc));
        if let Some(w) = c1.witness() {
            prop_assert!(c.structure.satisfies_all(w, &c.statements).unwrap());
            prop_assert!(w.max_level_size() <= 1);
        }
    }

    #[test]
    fn consistency_is_monotone_in_t(c in case(5, 4, 5)) {
        let n = c.structure.n();
        let verdicts: Vec<bool> = (1..=n)
            .map(|t| consistent(&pc_check(&c.structure, &c.statements, &SearchConfig::new(t)).unwrap()))
            .collect();
        prop_assert!(verdicts.windows(2).all(|w| !w[0] || w[1]), "{verdicts:?}");
    }

    #[test]
    fn relaxed_statements_always_consistent(c in case(5, 4, 5), t in 1usize..=3) {
        let relaxed = non_strict_version(&c.statements);
        let r = pc_check(&c.structure, &relaxed, &SearchConfig::new(t)).unwrap();
        prop_assert!(consistent(&r));
    }

    #[test]
    fn singleton_prefix_composes_with_any_residual_witness(c in case(5, 4, 5), t in 1usize..=3) {
        let s = &c.structure;
        let n = s.n();
        let chain = max_singleton_sequence(s, LevelSet::full(n), &c.statements).unwrap();
        let prefix = HclpModel::singletons(chain.iter().copied());
        prop_assert!(s.satisfies_all(&prefix, &non_strict_version(&c.statements)).unwrap());
        let residual = LevelSet::full(n).difference(prefix.support());
        let tied = s.tied_statements(&prefix, &c.statements).unwrap();
        let witness = enumerate_models(residual, t)
            .unwrap()
            .find(|m| s.satisfies_all(m, &tied).unwrap());
        let oracle = brute_force_solve(s, &c.statements, t).unwrap();
        prop_assert_eq!(witness.is_some(), consistent(&oracle));
        if let Some(w) = witness {
            prop_assert!(s.satisfies_all(&prefix.compose(&w), &c.statements).unwrap());
        }
    }

    #[test]
    fn learned_sets_never_fit_a_satisfying_extension(c in case(5, 4, 6), t in 2usize..=3) {
        let s = &c.structure;
        let n = s.n();
        let cfg = SearchConfig::new(t).with_conflicts(5).recording_learned();
        let r = pc_check(s, &c.statements, &cfg).unwrap();
        prop_assert_eq!(r.learned.len() as u64, r.stats.learned);
        for learned in &r.learned {
            let rest = LevelSet::full(n).difference(learned.prefix.support());
            for suffix in enumerate_models(rest, t).unwrap() {
                let full = learned.prefix.compose(&suffix);
                if s.satisfies_all(&full, &c.statements).unwrap() {
                    prop_assert!(
                        suffix.levels().iter().all(|l| !learned.set.is_subset(*l)),
                        "{} under {} fits in {}", format!("{:?}", learned.set), learned.prefix, full
                    );
                }
            }
        }
    }

    #[test]
    fn deduction_matches_oracle(c in case(4, 4, 4), a in 0usize..4, b in 0usize..4, strict: bool, t in 1usize..=3) {
        let m = c.structure.m();
        prop_assume!(a < m && b < m && a != b);
        let query = PreferenceStatement::new(a, b, strict).unwrap();
        prop_assume!(!c.statements.contains(&query));
        let got = deduce(&c.structure, &c.statements, &query, &SearchConfig::new(t)).unwrap();
        let expected = enumerate_models(LevelSet::full(c.structure.n()), t)
            .unwrap()
            .filter(|h| c.structure.satisfies_all(h, &c.statements).unwrap())
            .all(|h| c.structure.satisfies(&h, &query).unwrap());
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn witnesses_encode_feasible_assignments(c in case(4, 4, 4), t in 1usize..=3) {
        let r = pc_check(&c.structure, &c.statements, &SearchConfig::new(t)).unwrap();
        let f = MilpFormulation::build(&c.structure, &c.statements, t).unwrap();
        let n = c.structure.n();
        let g = c.statements.len();
        let strict = c.statements.iter().filter(|s| s.is_strict()).count();
        prop_assert_eq!(f.variables().len(), n * n + 4 * n * g);
        prop_assert_eq!(f.constraints().len(), 2 * n + 7 * n * g + strict);
        if let Some(w) = r.witness() {
            let a = assignment_from_model(&c.structure, w, &c.statements, t).unwrap();
            prop_assert_eq!(check_assignment(&f, &a).unwrap(), vec![]);
        }
    }

    #[test]
    fn solving_is_deterministic(c in case(5, 4, 5), t in 1usize..=3) {
        let cfg = SearchConfig::new(t).with_conflicts(5);
        let first = pc_check(&c.structure, &c.statements, &cfg).unwrap();
        let second = pc_check(&c.structure, &c.statements, &cfg).unwrap();
        prop_assert_eq!(&first.verdict, &second.verdict);
        prop_assert_eq!(first.stats.counters(), second.stats.counters());
    }

    #[test]
    fn empty_levels_do_not_change_comparisons(
        c in case(4, 4, 0),
        levels in prop::collection::vec(0u64..16, 0..4),
    ) {
        let n = c.structure.n();
        let mut used = LevelSet::EMPTY;
        let mut sets = Vec::new();
        for bits in levels {
            let level = LevelSet::from_bits(bits).intersection(LevelSet::full(n)).difference(used);
            used = used.union(level);
            sets.push(level);
            sets.push(LevelSet::EMPTY);
        }
        let padded = HclpModel::new(sets.iter().copied());
        let compact = HclpModel::new(sets.iter().copied().filter(|l| !l.is_empty()));
        for a in 0..c.structure.m() {
            for b in 0..c.structure.m() {
                prop_assert_eq!(
                    c.structure.model_compare(&padded, a, b).unwrap(),
                    c.structure.model_compare(&compact, a, b).unwrap()
                );
            }
        }
    }
}

#[test]
fn all_non_strict_accepts_the_empty_model() {
    let s = HclpStructure::additive(EvaluationMatrix::from_rows(&[[3, 1], [0, 2]]).unwrap());
    let gamma = [
        PreferenceStatement::non_strict(0, 1).unwrap(),
        PreferenceStatement::non_strict(1, 0).unwrap(),
    ];
    assert!(s.satisfies_all(&HclpModel::empty(), &gamma).unwrap());
    assert!(pc_check(&s, &gamma, &SearchConfig::new(2))
        .unwrap()
        .is_consistent());
}
