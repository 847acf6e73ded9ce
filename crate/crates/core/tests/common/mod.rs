//! Helpers shared by the integration tests: a random consistent-game
//! generator and oracles written directly from the definitions.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spacetime_games::{
    ActionId, AgentId, DecisionPointId, ExtensiveFormGame, NodeRef, RawAssignment, SpacetimeGame,
};

const ACTIONS: [&str; 3] = ["x", "y", "z"];
const AGENTS: [&str; 3] = ["A", "B", "C"];

/// A random consistent game in DAG mode with at most `max_points` points
/// and two or three actions per point. When `guarded`, an agent's points
/// are always timelike-ordered, so the same-agent guard holds; otherwise
/// the guard is switched off.
#[allow(clippy::needless_range_loop)]
pub fn random_game(seed: u64, max_points: usize, guarded: bool) -> SpacetimeGame {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_points);
    let mut counters = [0u32; 3];
    let mut ids: Vec<DecisionPointId> = Vec::with_capacity(n);
    let mut actions: Vec<Vec<ActionId>> = Vec::with_capacity(n);
    for _ in 0..n {
        let who = rng.gen_range(0..AGENTS.len());
        counters[who] += 1;
        ids.push(DecisionPointId::new(AgentId::new(AGENTS[who]).unwrap(), counters[who]).unwrap());
        let k = rng.gen_range(2..=3);
        actions.push(ACTIONS[..k].iter().map(|a| ActionId::new(a).unwrap()).collect());
    }
    // precedence: random forward edges, closed transitively
    let mut before = vec![vec![false; n]; n];
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(0.45) || (guarded && ids[i].agent == ids[j].agent) {
                before[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if before[i][k] && before[k][j] {
                    before[i][j] = true;
                }
            }
        }
    }
    // contingency in index order, which is topological
    let mut gamma: Vec<RawAssignment> = Vec::with_capacity(n);
    for j in 0..n {
        let mut g = RawAssignment::new();
        for i in 0..j {
            if before[i][j] && rng.gen_bool(0.5) && gamma[i].compatible_with(&g) {
                g = g.union(&gamma[i]).unwrap();
                if !g.binds(&ids[i]) {
                    let a = actions[i][rng.gen_range(0..actions[i].len())].clone();
                    g.bind(ids[i].clone(), a);
                }
            }
        }
        // close under "actually precedes implies bound"
        loop {
            let missing = (0..j).find(|&i| before[i][j] && !g.binds(&ids[i]) && gamma[i].is_restriction_of(&g));
            match missing {
                Some(i) => {
                    let a = actions[i][rng.gen_range(0..actions[i].len())].clone();
                    g.bind(ids[i].clone(), a);
                }
                None => break,
            }
        }
        gamma.push(g);
    }
    let mut b = SpacetimeGame::builder().allow_spacelike_same_agent(!guarded);
    for a in ACTIONS {
        b = b.action(ActionId::new(a).unwrap());
    }
    for i in 0..n {
        b = b.point(ids[i].clone(), actions[i].clone(), None);
        for (p, a) in gamma[i].iter() {
            b = b.contingency(ids[i].clone(), p.clone(), a.clone());
        }
        for j in 0..n {
            if before[i][j] {
                b = b.precedes(ids[i].clone(), ids[j].clone());
            }
        }
    }
    let raw = b.clone().build_raw().expect("generator builds structurally valid games");
    let agents = raw.agents().len();
    for h in brute_force_complete_histories(&raw) {
        let v = (0..agents).map(|_| rng.gen_range(0..10) as f64).collect();
        b = b.payoff(h, v);
    }
    b.build().expect("generator builds consistent games")
}

/// Every raw assignment over the game's points, each point unbound or bound
/// to one of its actions.
pub fn all_assignments(g: &SpacetimeGame) -> Vec<RawAssignment> {
    let mut out = vec![RawAssignment::new()];
    for p in g.points() {
        let mut next = Vec::with_capacity(out.len() * (p.actions.len() + 1));
        for a in &out {
            next.push(a.clone());
            for act in &p.actions {
                next.push(a.clone().with(p.id.clone(), act.clone()));
            }
        }
        out = next;
    }
    out
}

fn satisfied(gamma: &RawAssignment, h: &RawAssignment) -> bool {
    gamma.iter().all(|(p, a)| h.get(p) == Some(a))
}

/// Every bound point offers its action and has its contingency met.
pub fn oracle_is_history(g: &SpacetimeGame, h: &RawAssignment) -> bool {
    h.iter().all(|(p, a)| {
        let point = g.point(p).unwrap();
        point.actions.contains(a) && satisfied(g.contingency(p).unwrap(), h)
    })
}

/// No unbound point has its contingency met.
pub fn oracle_is_complete(g: &SpacetimeGame, h: &RawAssignment) -> bool {
    g.points()
        .iter()
        .all(|p| h.binds(&p.id) || !satisfied(g.contingency(&p.id).unwrap(), h))
}

pub fn brute_force_complete_histories(g: &SpacetimeGame) -> BTreeSet<RawAssignment> {
    all_assignments(g)
        .into_iter()
        .filter(|h| oracle_is_history(g, h) && oracle_is_complete(g, h))
        .collect()
}

/// Restrictions of complete histories to initial segments of `order`,
/// minus the complete histories themselves.
pub fn brute_force_prefixes(g: &SpacetimeGame, order: &[DecisionPointId]) -> BTreeSet<RawAssignment> {
    let complete = brute_force_complete_histories(g);
    let mut out = BTreeSet::new();
    for h in &complete {
        for k in 0..=order.len() {
            let head: BTreeSet<&DecisionPointId> = order[..k].iter().collect();
            let r = h.restrict(|p| head.contains(p));
            if !complete.contains(&r) {
                out.insert(r);
            }
        }
    }
    out
}

/// A random perfect-information tree of depth at most `depth` between two
/// players.
pub fn random_tree(seed: u64, depth: usize) -> ExtensiveFormGame {
    let mut rng = StdRng::seed_from_u64(seed);
    let agents = vec![AgentId::new("A").unwrap(), AgentId::new("B").unwrap()];
    let actions: Vec<ActionId> = ACTIONS.iter().map(|a| ActionId::new(a).unwrap()).collect();
    let mut e = ExtensiveFormGame {
        agents: agents.clone(),
        actions: actions.clone(),
        nodes: Vec::new(),
        outcomes: Vec::new(),
        info_sets: Vec::new(),
    };
    grow(&mut e, &mut rng, depth, &mut [0, 0]);
    e
}

fn grow(e: &mut ExtensiveFormGame, rng: &mut StdRng, depth: usize, counters: &mut [u32; 2]) -> NodeRef {
    if depth == 0 || (!e.nodes.is_empty() && rng.gen_bool(0.3)) {
        // ties are likely with payoffs drawn from a small range
        let payoffs = (0..e.agents.len()).map(|_| rng.gen_range(0..4) as f64).collect();
        e.outcomes.push(spacetime_games::Outcome {
            label: format!("z{}", e.outcomes.len()),
            payoffs,
        });
        return NodeRef::Outcome(e.outcomes.len() - 1);
    }
    let who = rng.gen_range(0..2);
    counters[who] += 1;
    let k = rng.gen_range(2..=3);
    let acts: Vec<ActionId> = e.actions[..k].to_vec();
    let idx = e.nodes.len();
    e.nodes.push(spacetime_games::ChoiceNode {
        label: format!("n{idx}"),
        player: e.agents[who].clone(),
        actions: acts.clone(),
        successors: Vec::new(),
    });
    e.info_sets.push(spacetime_games::InfoSet {
        label: format!("{}.{}", e.agents[who], counters[who]),
        player: e.agents[who].clone(),
        nodes: vec![idx],
    });
    for a in acts {
        let child = grow(e, rng, depth - 1, counters);
        e.nodes[idx].successors.push((a, child));
    }
    NodeRef::Choice(idx)
}
