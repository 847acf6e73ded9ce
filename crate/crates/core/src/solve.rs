//! Pure-strategy solution concepts.
//!
//! Payoffs are compared ordinally; nothing here mixes strategies.

use std::collections::BTreeMap;

use crate::error::GameError;
use crate::extensive::{ExtensiveFormGame, NodeRef};
use crate::model::{ActionId, AgentId};
use crate::strategic::NormalFormGame;

/// Profiles (strategy-index tuples) where no agent gains strictly by a
/// unilateral deviation, in storage order.
pub fn pure_nash(nf: &NormalFormGame) -> Vec<Vec<usize>> {
    nf.profiles().filter(|p| is_nash(nf, p)).collect()
}

/// Whether `profile` is a pure Nash equilibrium of `nf`.
pub fn is_nash(nf: &NormalFormGame, profile: &[usize]) -> bool {
    let here = nf.payoff(profile);
    let mut dev = profile.to_vec();
    for i in 0..nf.agents.len() {
        for s in 0..nf.labels[i].len() {
            if s == profile[i] {
                continue;
            }
            dev[i] = s;
            if nf.payoff(&dev)[i] > here[i] {
                return false;
            }
        }
        dev[i] = profile[i];
    }
    true
}

/// Calls `f` with every profile of the opponents of `agent` drawn from
/// `alive`, with `agent`'s own slot left at 0.
fn for_each_opponent_profile(alive: &[Vec<usize>], agent: usize, mut f: impl FnMut(&mut Vec<usize>) -> bool) -> bool {
    let n = alive.len();
    let mut cursor = vec![0usize; n];
    loop {
        let mut profile: Vec<usize> = (0..n).map(|j| if j == agent { 0 } else { alive[j][cursor[j]] }).collect();
        if !f(&mut profile) {
            return false;
        }
        // advance the mixed-radix counter, skipping `agent`
        let mut j = n;
        loop {
            if j == 0 {
                return true;
            }
            j -= 1;
            if j == agent {
                continue;
            }
            cursor[j] += 1;
            if cursor[j] < alive[j].len() {
                break;
            }
            cursor[j] = 0;
        }
    }
}

fn strictly_dominates(nf: &NormalFormGame, alive: &[Vec<usize>], agent: usize, t: usize, s: usize) -> bool {
    for_each_opponent_profile(alive, agent, |p| {
        p[agent] = t;
        let ut = nf.payoff(p)[agent];
        p[agent] = s;
        ut > nf.payoff(p)[agent]
    })
}

/// Repeatedly removes, for every agent at once, the strategies strictly
/// dominated by another surviving pure strategy. Returns the surviving
/// strategy indices per agent.
pub fn iterated_strict_dominance(nf: &NormalFormGame) -> Vec<Vec<usize>> {
    let mut alive: Vec<Vec<usize>> = nf.labels.iter().map(|l| (0..l.len()).collect()).collect();
    loop {
        let mut next = alive.clone();
        for i in 0..alive.len() {
            next[i].retain(|&s| !alive[i].iter().any(|&t| t != s && strictly_dominates(nf, &alive, i, t, s)));
        }
        if next == alive {
            return alive;
        }
        alive = next;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Maximin {
    pub value: f64,
    /// Every strategy index attaining the value.
    pub strategies: Vec<usize>,
}

/// The security level of `agent`: the best payoff it can guarantee against
/// every opposing profile, with all strategies attaining it.
pub fn maximin(nf: &NormalFormGame, agent: &AgentId) -> Result<Maximin, GameError> {
    let i = nf
        .agent_index(agent)
        .ok_or_else(|| GameError::UnknownAgent(agent.clone()))?;
    let all: Vec<Vec<usize>> = nf.labels.iter().map(|l| (0..l.len()).collect()).collect();
    let mut guaranteed = Vec::with_capacity(nf.labels[i].len());
    for s in 0..nf.labels[i].len() {
        let mut worst = f64::INFINITY;
        for_each_opponent_profile(&all, i, |p| {
            p[i] = s;
            worst = worst.min(nf.payoff(p)[i]);
            true
        });
        guaranteed.push(worst);
    }
    let value = guaranteed.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let strategies = (0..guaranteed.len()).filter(|&s| guaranteed[s] == value).collect();
    Ok(Maximin { value, strategies })
}

/// A subgame-perfect plan: an action at every choice node, and the payoff
/// vector it induces from the root.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub choices: Vec<ActionId>,
    pub value: Vec<f64>,
}

impl Plan {
    /// Strategy-index tuple of this plan in `strategic_form_efg(e)`.
    /// Requires perfect information so that nodes and information sets
    /// coincide.
    pub fn profile(&self, e: &ExtensiveFormGame, nf: &NormalFormGame) -> Vec<usize> {
        let mut per_agent: BTreeMap<&AgentId, Vec<&str>> = BTreeMap::new();
        for s in &e.info_sets {
            per_agent.entry(&s.player).or_default().push(self.choices[s.nodes[0]].as_str());
        }
        nf.agents
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let label = per_agent.get(a).map(|v| v.join("/")).unwrap_or_default();
                nf.labels[i].iter().position(|l| *l == label).expect("plan label is a strategy")
            })
            .collect()
    }
}

/// All subgame-perfect plans of a perfect-information game, found by
/// backward induction. Ties branch: every maximizing action is kept, and
/// plans of independent subtrees are combined in every way.
pub fn backward_induction(e: &ExtensiveFormGame) -> Result<Vec<Plan>, GameError> {
    if let Some(s) = e.info_sets.iter().find(|s| s.nodes.len() != 1) {
        return Err(GameError::ImperfectInformation(s.label.clone()));
    }
    let root = e.root().expect("valid extensive form has a root");
    let agent_pos: BTreeMap<&AgentId, usize> = e.agents.iter().enumerate().map(|(i, a)| (a, i)).collect();

    // post-order over choice nodes
    let mut order = Vec::new();
    let mut stack = vec![(root, false)];
    while let Some((r, done)) = stack.pop() {
        if let NodeRef::Choice(n) = r {
            if done {
                order.push(n);
            } else {
                stack.push((r, true));
                stack.extend(e.nodes[n].successors.iter().map(|(_, t)| (*t, false)));
            }
        }
    }

    // partial plans per subtree: (choices made inside, value)
    type Partial = Vec<(BTreeMap<usize, ActionId>, Vec<f64>)>;
    let mut solved: BTreeMap<usize, Partial> = BTreeMap::new();
    let leaf = |o: usize| vec![(BTreeMap::new(), e.outcomes[o].payoffs.clone())];
    for n in order {
        let node = &e.nodes[n];
        let who = agent_pos[&node.player];
        let children: Vec<(ActionId, Partial)> = node
            .successors
            .iter()
            .map(|(a, t)| {
                let sols = match *t {
                    NodeRef::Outcome(o) => leaf(o),
                    NodeRef::Choice(c) => solved.remove(&c).expect("children solved first"),
                };
                (a.clone(), sols)
            })
            .collect();
        // choices below the node are the product of every child's plans
        let mut below: Vec<BTreeMap<usize, ActionId>> = vec![BTreeMap::new()];
        for (_, sols) in &children {
            below = below
                .into_iter()
                .flat_map(|acc| {
                    sols.iter().map(move |(c, _)| {
                        let mut m = acc.clone();
                        m.extend(c.iter().map(|(k, v)| (*k, v.clone())));
                        m
                    })
                })
                .collect();
        }
        let mut out: Partial = Vec::new();
        for combo in below {
            // value of each child under this combination
            let values: Vec<Vec<f64>> = children
                .iter()
                .map(|(_, sols)| {
                    sols.iter()
                        .find(|(c, _)| c.iter().all(|(k, v)| combo.get(k) == Some(v)))
                        .map(|(_, v)| v.clone())
                        .expect("combination built from these plans")
                })
                .collect();
            let best = values.iter().map(|v| v[who]).fold(f64::NEG_INFINITY, f64::max);
            for ((a, _), v) in children.iter().zip(&values) {
                if v[who] == best {
                    let mut m = combo.clone();
                    m.insert(n, a.clone());
                    out.push((m, v.clone()));
                }
            }
        }
        solved.insert(n, out);
    }
    let top = match root {
        NodeRef::Outcome(o) => leaf(o),
        NodeRef::Choice(n) => solved.remove(&n).expect("root solved"),
    };
    Ok(top
        .into_iter()
        .map(|(m, value)| Plan {
            choices: (0..e.nodes.len()).map(|k| m[&k].clone()).collect(),
            value,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensive::{linearize, strategic_form_efg, to_extensive, ChoiceNode, InfoSet, Outcome};
    use crate::fixtures;
    use crate::model::{act, agent};
    use crate::strategic::{reduced_strategic_form, strategic_form};

    fn constant(v: f64) -> NormalFormGame {
        NormalFormGame {
            agents: vec![agent("A"), agent("B")],
            labels: vec![vec!["x".into(), "y".into()], vec!["x".into(), "y".into()]],
            payoffs: vec![vec![v, v]; 4],
            annotations: vec![String::new(); 4],
        }
    }

    #[test]
    fn pd_nash_is_mutual_defection() {
        let nf = strategic_form(&fixtures::prisoners_dilemma()).unwrap();
        let eq: Vec<String> = pure_nash(&nf).iter().map(|p| nf.profile_label(p)).collect();
        assert_eq!(eq, ["(d,d)"]);
        assert_eq!(iterated_strict_dominance(&nf), vec![vec![1], vec![1]]);
        for a in ["A", "B"] {
            let m = maximin(&nf, &agent(a)).unwrap();
            assert_eq!((m.value, m.strategies), (1.0, vec![1]));
        }
    }

    #[test]
    fn constant_game_is_all_equilibria() {
        let nf = constant(2.0);
        assert_eq!(pure_nash(&nf).len(), 4);
        assert_eq!(iterated_strict_dominance(&nf), vec![vec![0, 1], vec![0, 1]]);
        let m = maximin(&nf, &agent("B")).unwrap();
        assert_eq!((m.value, m.strategies), (2.0, vec![0, 1]));
        assert!(maximin(&nf, &agent("Z")).is_err());
    }

    #[test]
    fn matching_pennies_has_no_dominance() {
        let mut nf = constant(0.0);
        nf.payoffs = vec![vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, 1.0], vec![1.0, -1.0]];
        assert_eq!(iterated_strict_dominance(&nf), vec![vec![0, 1], vec![0, 1]]);
        assert!(pure_nash(&nf).is_empty());
    }

    #[test]
    fn promise_backward_induction() {
        let g = fixtures::promise();
        let e = to_extensive(&g, &linearize(&g));
        let plans = backward_induction(&e).unwrap();
        assert_eq!(plans.len(), 1);
        assert_eq!(plans[0].choices, vec![act("d"), act("d")]);
        let nf = strategic_form_efg(&e).unwrap();
        assert!(is_nash(&nf, &plans[0].profile(&e, &nf)));

        let reduced = reduced_strategic_form(&g).unwrap();
        let eq: Vec<String> = pure_nash(&reduced).iter().map(|p| reduced.profile_label(p)).collect();
        assert!(eq.contains(&"(d,d)".to_string()), "{eq:?}");
    }

    #[test]
    fn imperfect_information_is_refused() {
        let g = fixtures::prisoners_dilemma();
        let e = to_extensive(&g, &linearize(&g));
        assert_eq!(backward_induction(&e).unwrap_err(), GameError::ImperfectInformation("B.1".into()));
    }

    fn one_node(payoffs: &[f64]) -> ExtensiveFormGame {
        let actions: Vec<ActionId> = (0..payoffs.len()).map(|i| act(&format!("a{i}"))).collect();
        ExtensiveFormGame {
            agents: vec![agent("A")],
            actions: actions.clone(),
            nodes: vec![ChoiceNode {
                label: "root".into(),
                player: agent("A"),
                actions: actions.clone(),
                successors: actions.iter().enumerate().map(|(i, a)| (a.clone(), NodeRef::Outcome(i))).collect(),
            }],
            outcomes: payoffs
                .iter()
                .map(|&v| Outcome {
                    label: v.to_string(),
                    payoffs: vec![v],
                })
                .collect(),
            info_sets: vec![InfoSet {
                label: "A.1".into(),
                player: agent("A"),
                nodes: vec![0],
            }],
        }
    }

    #[test]
    fn single_node_picks_best() {
        let plans = backward_induction(&one_node(&[1.0, 2.0])).unwrap();
        assert_eq!(plans.len(), 1);
        assert_eq!(plans[0].choices, vec![act("a1")]);
        assert_eq!(plans[0].value, vec![2.0]);
    }

    #[test]
    fn ties_branch() {
        let plans = backward_induction(&one_node(&[3.0, 1.0, 3.0])).unwrap();
        let picked: Vec<&str> = plans.iter().map(|p| p.choices[0].as_str()).collect();
        assert_eq!(picked, ["a0", "a2"]);
    }
}
