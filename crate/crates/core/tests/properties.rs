mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use spacetime_games::extensive::{construct_extensive, find_isomorphism};
use spacetime_games::solve::is_nash;
use spacetime_games::*;

use common::*;

fn fixture_games() -> Vec<(&'static str, SpacetimeGame)> {
    let mut all = fixtures::games();
    all.push(("running-dag", fixtures::as_dag(&fixtures::running())));
    all.push(("epr-dag", fixtures::as_dag(&fixtures::epr())));
    all
}

/// Every profile has exactly one complete history as a restriction, and it
/// is the resolved one.
fn check_uniqueness(g: &SpacetimeGame) -> Result<(), TestCaseError> {
    let complete = brute_force_complete_histories(g);
    let spaces: Vec<Vec<spacetime_games::Strategy>> = g.agents().iter().map(|a| strategy_space(g, a).unwrap()).collect();
    let nf = strategic_form(g).unwrap();
    for cell in 0..nf.cell_count() {
        let coords = nf.profile(cell);
        let profile = StrategyProfile::from_strategies(coords.iter().zip(&spaces).map(|(&i, s)| &s[i].assignment));
        let hits: Vec<&RawAssignment> = complete.iter().filter(|h| h.is_restriction_of(&profile.assignment)).collect();
        prop_assert_eq!(hits.len(), 1);
        prop_assert_eq!(&resolve(g, &profile.assignment).unwrap(), hits[0]);
        prop_assert_eq!(&nf.payoffs[cell][..], g.payoff(hits[0]).unwrap());
    }
    Ok(())
}

/// Reduced profiles also pin down one complete history, and every member of
/// a reduced class resolves identically against every opposing profile.
fn check_reduction(g: &SpacetimeGame) -> Result<(), TestCaseError> {
    let complete = brute_force_complete_histories(g);
    let reduced: Vec<Vec<ReducedStrategy>> = g.agents().iter().map(|a| reduced_strategy_space(g, a).unwrap()).collect();
    let rnf = reduced_strategic_form(g).unwrap();
    for cell in 0..rnf.cell_count() {
        let coords = rnf.profile(cell);
        let parts: Vec<ReducedStrategy> = coords.iter().zip(&reduced).map(|(&i, s)| s[i].clone()).collect();
        let rp = StrategyProfile::from_strategies(parts.iter().map(|r| &r.assignment));
        let hits: Vec<&RawAssignment> = complete.iter().filter(|h| h.is_restriction_of(&rp.assignment)).collect();
        prop_assert_eq!(hits.len(), 1);
        prop_assert_eq!(&resolve_reduced(g, &parts).unwrap(), hits[0]);
    }
    // soundness: full strategies with the same reduction are interchangeable
    let full: Vec<Vec<spacetime_games::Strategy>> = g.agents().iter().map(|a| strategy_space(g, a).unwrap()).collect();
    let nf = strategic_form(g).unwrap();
    for (i, space) in full.iter().enumerate() {
        let class: Vec<RawAssignment> = space.iter().map(|s| reduce_strategy(g, s).assignment).collect();
        for cell in 0..nf.cell_count() {
            let mut coords = nf.profile(cell);
            let base = coords[i];
            for (k, c) in class.iter().enumerate() {
                if *c == class[base] {
                    coords[i] = k;
                    prop_assert_eq!(&nf.annotations[nf.index(&coords)], &nf.annotations[cell]);
                }
            }
        }
    }
    Ok(())
}

/// Profiles resolving to the same history carry the same payoffs.
fn check_payoff_consistency(nf: &NormalFormGame) -> Result<(), TestCaseError> {
    let mut seen: BTreeMap<&String, &Vec<f64>> = BTreeMap::new();
    for (h, v) in nf.annotations.iter().zip(&nf.payoffs) {
        if let Some(prev) = seen.insert(h, v) {
            prop_assert_eq!(prev, v);
        }
    }
    Ok(())
}

fn check_histories_oracle(g: &SpacetimeGame) -> Result<(), TestCaseError> {
    let fast: Vec<RawAssignment> = enumerate_complete_histories(g);
    let fast_set: BTreeSet<RawAssignment> = fast.iter().cloned().collect();
    prop_assert_eq!(fast.len(), fast_set.len());
    prop_assert_eq!(fast_set, brute_force_complete_histories(g));
    for h in all_assignments(g) {
        prop_assert_eq!(is_history(g, &h), oracle_is_history(g, &h));
        if oracle_is_history(g, &h) {
            prop_assert_eq!(is_complete(g, &h), oracle_is_complete(g, &h));
        }
    }
    Ok(())
}

fn check_constructions(g: &SpacetimeGame) -> Result<(), TestCaseError> {
    let nf = strategic_form(g).unwrap();
    let (lins, _) = enumerate_linearizations(g, 20);
    for lin in &lins {
        let c = construct_extensive(g, lin);
        prop_assert!(validate_efg(&c.game).is_empty());
        prop_assert!(has_perfect_recall(&c.game));
        let prefixes: BTreeSet<RawAssignment> = c.node_histories.iter().cloned().collect();
        prop_assert_eq!(prefixes.len(), c.node_histories.len());
        prop_assert_eq!(prefixes, brute_force_prefixes(g, lin.order()));
        prop_assert_eq!(c.game.info_sets.len(), g.points().len());
        // interchange of moves: every linearization gives the same form
        prop_assert!(nf.same_tensor(&strategic_form_efg(&c.game).unwrap()));
    }
    Ok(())
}

fn check_round_trip(g: &SpacetimeGame) -> Result<(), TestCaseError> {
    let e = to_extensive(g, &linearize(g));
    match is_spacetime_interpretable(&e, 500) {
        InterpretVerdict::Yes(w) => {
            let rebuilt = to_extensive(&w.game, &w.linearization);
            prop_assert!(find_isomorphism(&e, &rebuilt).is_some());
            prop_assert!(reduced_strategic_form(&w.game)
                .unwrap()
                .same_tensor(&reduced_strategic_form(g).unwrap()));
        }
        other => prop_assert!(false, "expected a witness, got {}", other),
    }
    Ok(())
}

fn check_nash_survives_dominance(nf: &NormalFormGame) -> Result<(), TestCaseError> {
    let alive = iterated_strict_dominance(nf);
    for p in pure_nash(nf) {
        for (i, s) in p.iter().enumerate() {
            prop_assert!(alive[i].contains(s));
        }
    }
    prop_assert_eq!(iterated_strict_dominance(nf), alive);
    Ok(())
}

#[test]
fn fixtures_satisfy_every_property() {
    for (name, g) in fixture_games() {
        let run = || -> Result<(), TestCaseError> {
            check_uniqueness(&g)?;
            check_reduction(&g)?;
            check_payoff_consistency(&strategic_form(&g).unwrap())?;
            check_histories_oracle(&g)?;
            check_constructions(&g)?;
            check_round_trip(&g)?;
            check_nash_survives_dominance(&strategic_form(&g).unwrap())?;
            check_nash_survives_dominance(&reduced_strategic_form(&g).unwrap())?;
            Ok(())
        };
        if let Err(e) = run() {
            panic!("{name}: {e}");
        }
    }
}

#[test]
fn location_and_dag_modes_agree() {
    for g in [fixtures::running(), fixtures::epr(), fixtures::promise(), fixtures::prisoners_dilemma()] {
        let d = fixtures::as_dag(&g);
        assert!(g.has_locations() && !d.has_locations());
        assert_eq!(g.precedence(), d.precedence());
        assert_eq!(actual_precedence(&g), actual_precedence(&d));
        assert_eq!(enumerate_complete_histories(&g), enumerate_complete_histories(&d));
        assert!(strategic_form(&g).unwrap().same_tensor(&strategic_form(&d).unwrap()));
        assert_eq!(
            to_extensive(&g, &linearize(&g)),
            to_extensive(&d, &linearize(&d))
        );
    }
}

#[test]
fn running_reductions_match_closure_oracle() {
    let g = fixtures::running();
    for (rel, edges) in [(g.precedence().clone(), 6), (actual_precedence(&g), 5)] {
        let red = rel.transitive_reduction().unwrap();
        assert_eq!(red.len(), edges);
        // the reduction has the same closure and no edge is implied by others
        assert_eq!(&red.transitive_closure().unwrap(), &rel.transitive_closure().unwrap());
        for (a, b) in red.pairs() {
            let without: PrecedenceRelation = red.pairs().filter(|e| **e != (a.clone(), b.clone())).cloned().collect();
            assert!(!without.transitive_closure().unwrap().contains(a, b));
        }
    }
}

#[test]
fn solvers_are_equivariant_under_agent_permutation() {
    let nf = strategic_form(&fixtures::running()).unwrap();
    let perm = [3, 1, 0, 2];
    let p = nf.permute_agents(&perm);
    let relabel = |q: &Vec<usize>| perm.iter().map(|&i| q[i]).collect::<Vec<_>>();
    let mut expected: Vec<Vec<usize>> = pure_nash(&nf).iter().map(relabel).collect();
    expected.sort();
    let mut got = pure_nash(&p);
    got.sort();
    assert_eq!(got, expected);
    let alive = iterated_strict_dominance(&nf);
    let expected_alive: Vec<Vec<usize>> = perm.iter().map(|&i| alive[i].clone()).collect();
    assert_eq!(iterated_strict_dominance(&p), expected_alive);
    for a in &nf.agents {
        assert_eq!(maximin(&nf, a).unwrap(), maximin(&p, a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_games_satisfy_theorems(seed in any::<u64>()) {
        let g = random_game(seed, 6, seed % 2 == 0);
        check_uniqueness(&g)?;
        check_reduction(&g)?;
        check_payoff_consistency(&strategic_form(&g).unwrap())?;
        check_histories_oracle(&g)?;
        check_nash_survives_dominance(&strategic_form(&g).unwrap())?;
    }

    #[test]
    fn random_games_construct_and_round_trip(seed in any::<u64>()) {
        let g = random_game(seed, 5, true);
        check_constructions(&g)?;
        check_round_trip(&g)?;
    }

    #[test]
    fn pruning_is_idempotent_and_keeps_valid_games(seed in any::<u64>()) {
        let g = random_game(seed, 6, false);
        prop_assert_eq!(prune_unreachable(&g), g);
    }

    #[test]
    fn backward_induction_gives_nash_equilibria(seed in any::<u64>()) {
        let e = random_tree(seed, 3);
        prop_assert!(validate_efg(&e).is_empty());
        let nf = strategic_form_efg(&e).unwrap();
        let plans = backward_induction(&e).unwrap();
        prop_assert!(!plans.is_empty());
        for plan in &plans {
            prop_assert!(is_nash(&nf, &plan.profile(&e, &nf)));
            prop_assert_eq!(&plan.value[..], nf.payoff(&plan.profile(&e, &nf)));
        }
        let distinct: BTreeSet<Vec<usize>> = plans.iter().map(|p| p.profile(&e, &nf)).collect();
        prop_assert_eq!(distinct.len(), plans.len());
    }
}
