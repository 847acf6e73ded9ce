//! Deciding whether an extensive-form game is the construction of some
//! spacetime game.
//!
//! Stage one checks necessary conditions: validity, perfect recall, and
//! transitivity of the knowledge relation. Information set `Q` knows `P`
//! when some node of `Q` has a node of `P` on its root path and all such
//! nodes took the same action at `P` (a single-action `P` must be on the
//! path of every node of `Q`). In a constructed game this relation is the
//! actual precedence of the underlying decision points, so it must be a
//! strict partial order.
//!
//! Stage two builds the only candidate the tree allows: one decision point
//! per information set, precedence given by knowledge, contingency given by
//! the known actions, payoffs read off the leaves. It then tries every
//! linearization compatible with the knowledge relation and the order of
//! moves in the tree, and looks for one whose construction is isomorphic to
//! the input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::assignment::RawAssignment;
use crate::extensive::construct::{to_extensive, Linearization};
use crate::extensive::efg::{perfect_recall_violation, validate_efg, ExtensiveFormGame, NodeRef};
use crate::game::SpacetimeGame;
use crate::model::{ActionId, AgentId, DecisionPointId};
use crate::precedence::{linear_extensions, PrecedenceRelation};

/// Default number of linearizations tried in stage two.
pub const DEFAULT_BUDGET: usize = 1000;

/// A bijection between two game trees, indexed by the first tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub nodes: Vec<usize>,
    pub outcomes: Vec<usize>,
    pub info_sets: Vec<usize>,
}

/// A spacetime game reproducing the input tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub game: SpacetimeGame,
    pub linearization: Linearization,
    /// From the input tree to `to_extensive(game, linearization)`.
    pub isomorphism: Isomorphism,
}

/// Why a tree is not the construction of any spacetime game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Invalid(Vec<String>),
    PerfectRecall { info_set: String, player: AgentId },
    /// `r` knows `q` and `q` knows `p`, but `r` does not know `p`.
    KnowledgeTransitivity {
        r: (String, AgentId),
        q: (String, AgentId),
        p: (String, AgentId),
    },
    /// The knowledge relation or the order of moves has a cycle.
    OrderCycle(Vec<String>),
    /// The forced candidate is not a valid spacetime game.
    Candidate(String),
    /// No linearization of the forced candidate reproduces the tree.
    NoReconstruction { tried: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Invalid(v) => write!(f, "invalid extensive form: {}", v.join("; ")),
            Certificate::PerfectRecall { info_set, player } => {
                write!(f, "perfect recall violated at information set {info_set} of {player}")
            }
            Certificate::KnowledgeTransitivity { r, q, p } => {
                write!(f, "knowledge transitivity violated ({}/{}/{})", r.1, q.1, p.1)
            }
            Certificate::OrderCycle(c) => write!(f, "information sets are ordered cyclically: {}", c.join(" -> ")),
            Certificate::Candidate(e) => write!(f, "forced candidate is not a spacetime game: {e}"),
            Certificate::NoReconstruction { tried } => {
                write!(f, "none of the {tried} linearizations of the forced candidate reproduces the tree")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InterpretVerdict {
    Yes(Box<Witness>),
    No(Certificate),
    /// The search budget ran out before a witness was found.
    Unknown { tried: usize },
}

impl InterpretVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, InterpretVerdict::Yes(_))
    }
}

impl fmt::Display for InterpretVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpretVerdict::Yes(_) => write!(f, "Yes"),
            InterpretVerdict::No(c) => write!(f, "No: {c}"),
            InterpretVerdict::Unknown { tried } => write!(f, "Unknown: no witness among the first {tried} linearizations"),
        }
    }
}

struct Analysis {
    of: Vec<usize>,
    /// Per choice node, the `(node, action)` pairs on its root path.
    paths: Vec<Vec<(usize, ActionId)>>,
    /// Per outcome, the same.
    leaf_paths: Vec<Vec<(usize, ActionId)>>,
}

fn analyse(e: &ExtensiveFormGame) -> Analysis {
    let (parents, outcome_parents) = e.parents();
    let paths = (0..e.nodes.len()).map(|n| e.path_to(&parents, parents[n].clone())).collect();
    let leaf_paths = (0..e.outcomes.len())
        .map(|o| e.path_to(&parents, outcome_parents[o].clone()))
        .collect();
    Analysis {
        of: e.info_set_of(),
        paths,
        leaf_paths,
    }
}

/// `known[(p, q)] = a`: information set `q` knows that `p` took `a`.
fn knowledge(e: &ExtensiveFormGame, an: &Analysis) -> BTreeMap<(usize, usize), ActionId> {
    let mut out = BTreeMap::new();
    let n_sets = e.info_sets.len();
    for q in 0..n_sets {
        // per p: actions seen at p on paths to q's nodes, and how many nodes saw p
        let mut seen: BTreeMap<usize, (BTreeSet<&ActionId>, usize)> = BTreeMap::new();
        for &n in &e.info_sets[q].nodes {
            let mut on_path = BTreeSet::new();
            for (m, a) in &an.paths[n] {
                let p = an.of[*m];
                if on_path.insert(p) {
                    let entry = seen.entry(p).or_default();
                    entry.0.insert(a);
                    entry.1 += 1;
                } else {
                    // p twice on one path; record the disagreement
                    seen.entry(p).or_default().0.insert(a);
                }
            }
        }
        for (p, (actions, count)) in seen {
            if p == q || actions.len() != 1 {
                continue;
            }
            let single = e.nodes[e.info_sets[p].nodes[0]].actions.len() == 1;
            if single && count < e.info_sets[q].nodes.len() {
                continue;
            }
            out.insert((p, q), (*actions.iter().next().expect("one action")).clone());
        }
    }
    out
}

fn labelled(e: &ExtensiveFormGame, s: usize) -> (String, AgentId) {
    (e.info_sets[s].label.clone(), e.info_sets[s].player.clone())
}

/// Decision point ids for the information sets: their labels when every
/// label is a distinct `Agent.j` of the right player, otherwise
/// `(player, ordinal)` in information-set order.
fn point_ids(e: &ExtensiveFormGame) -> Vec<DecisionPointId> {
    let parsed: Option<Vec<DecisionPointId>> = e
        .info_sets
        .iter()
        .map(|s| {
            s.label
                .parse::<DecisionPointId>()
                .ok()
                .filter(|id| id.agent == s.player)
        })
        .collect();
    if let Some(ids) = parsed {
        if ids.iter().collect::<BTreeSet<_>>().len() == ids.len() {
            return ids;
        }
    }
    let mut counters: BTreeMap<&AgentId, u32> = BTreeMap::new();
    e.info_sets
        .iter()
        .map(|s| {
            let c = counters.entry(&s.player).or_insert(0);
            *c += 1;
            DecisionPointId::new(s.player.clone(), *c).expect("ordinals start at 1")
        })
        .collect()
}

/// Checks that `a` and `b` are the same tree up to renaming nodes and
/// information sets. Children are matched by action symbol.
pub fn find_isomorphism(a: &ExtensiveFormGame, b: &ExtensiveFormGame) -> Option<Isomorphism> {
    if a.nodes.len() != b.nodes.len() || a.outcomes.len() != b.outcomes.len() || a.info_sets.len() != b.info_sets.len() {
        return None;
    }
    let agents_a: BTreeSet<&AgentId> = a.agents.iter().collect();
    let agents_b: BTreeSet<&AgentId> = b.agents.iter().collect();
    if agents_a != agents_b {
        return None;
    }
    // payoff column of each agent of `a` within `b`
    let col: Vec<usize> = a
        .agents
        .iter()
        .map(|x| b.agents.iter().position(|y| y == x).expect("same agent sets"))
        .collect();
    let of_a = a.info_set_of();
    let of_b = b.info_set_of();
    let mut iso = Isomorphism {
        nodes: vec![usize::MAX; a.nodes.len()],
        outcomes: vec![usize::MAX; a.outcomes.len()],
        info_sets: vec![usize::MAX; a.info_sets.len()],
    };
    let mut used_sets = vec![false; b.info_sets.len()];
    let mut stack = vec![(a.root()?, b.root()?)];
    while let Some(pair) = stack.pop() {
        match pair {
            (NodeRef::Outcome(x), NodeRef::Outcome(y)) => {
                let pa = &a.outcomes[x].payoffs;
                let pb = &b.outcomes[y].payoffs;
                if (0..pa.len()).any(|i| pa[i] != pb[col[i]]) {
                    return None;
                }
                iso.outcomes[x] = y;
            }
            (NodeRef::Choice(x), NodeRef::Choice(y)) => {
                let (na, nb) = (&a.nodes[x], &b.nodes[y]);
                if na.player != nb.player {
                    return None;
                }
                let sa: BTreeSet<&ActionId> = na.actions.iter().collect();
                let sb: BTreeSet<&ActionId> = nb.actions.iter().collect();
                if sa != sb {
                    return None;
                }
                let (ia, ib) = (of_a[x], of_b[y]);
                match iso.info_sets[ia] {
                    usize::MAX => {
                        if used_sets[ib] {
                            return None;
                        }
                        used_sets[ib] = true;
                        iso.info_sets[ia] = ib;
                    }
                    m if m != ib => return None,
                    _ => {}
                }
                iso.nodes[x] = y;
                for (act, ta) in &na.successors {
                    stack.push((*ta, nb.successor(act)?));
                }
            }
            _ => return None,
        }
    }
    // set sizes must agree too, or a `b` set could hold extra nodes
    for (ia, &ib) in iso.info_sets.iter().enumerate() {
        if ib == usize::MAX || a.info_sets[ia].nodes.len() != b.info_sets[ib].nodes.len() {
            return None;
        }
    }
    Some(iso)
}

/// Stage one and two as described in the module docs. `budget` bounds the
/// number of linearizations tried.
pub fn is_spacetime_interpretable(e: &ExtensiveFormGame, budget: usize) -> InterpretVerdict {
    let problems = validate_efg(e);
    if !problems.is_empty() {
        return InterpretVerdict::No(Certificate::Invalid(problems));
    }
    if let Some(s) = perfect_recall_violation(e) {
        let (info_set, player) = labelled(e, s);
        return InterpretVerdict::No(Certificate::PerfectRecall { info_set, player });
    }
    let an = analyse(e);
    let known = knowledge(e, &an);
    for &(p, q) in known.keys() {
        for (&(q2, r), _) in known.range((q, 0)..(q + 1, 0)) {
            debug_assert_eq!(q2, q);
            if r != p && !known.contains_key(&(p, r)) {
                return InterpretVerdict::No(Certificate::KnowledgeTransitivity {
                    r: labelled(e, r),
                    q: labelled(e, q),
                    p: labelled(e, p),
                });
            }
        }
    }

    let ids = point_ids(e);
    let mut knows = PrecedenceRelation::new();
    for &(p, q) in known.keys() {
        knows.insert(ids[p].clone(), ids[q].clone());
    }
    if let Some(cycle) = knows.find_cycle() {
        return InterpretVerdict::No(Certificate::OrderCycle(cycle.iter().map(|p| p.to_string()).collect()));
    }

    let mut b = SpacetimeGame::builder().agents(e.agents.iter().cloned()).allow_spacelike_same_agent(true);
    for a in &e.actions {
        b = b.action(a.clone());
    }
    for (s, id) in e.info_sets.iter().zip(&ids) {
        b = b.point(id.clone(), e.nodes[s.nodes[0]].actions.clone(), None);
    }
    for (&(p, q), a) in &known {
        b = b.precedes(ids[p].clone(), ids[q].clone()).contingency(ids[q].clone(), ids[p].clone(), a.clone());
    }
    let mut sorted = e.agents.clone();
    sorted.sort();
    for (o, path) in e.outcomes.iter().zip(&an.leaf_paths) {
        let h: RawAssignment = path.iter().map(|(n, a)| (ids[an.of[*n]].clone(), a.clone())).collect();
        let values = sorted
            .iter()
            .map(|x| o.payoffs[e.agents.iter().position(|y| y == x).expect("sorted copy")])
            .collect();
        b = b.payoff(h, values);
    }
    let candidate = match b.build() {
        Ok(g) => g,
        Err(err) => return InterpretVerdict::No(Certificate::Candidate(err.to_string())),
    };

    // move order in the tree: a set above another on some path comes first
    let mut order = knows.clone();
    for (n, path) in an.paths.iter().enumerate() {
        for (m, _) in path {
            order.insert(ids[an.of[*m]].clone(), ids[an.of[n]].clone());
        }
    }
    if let Some(cycle) = order.find_cycle() {
        return InterpretVerdict::No(Certificate::OrderCycle(cycle.iter().map(|p| p.to_string()).collect()));
    }
    let (lins, truncated) = linear_extensions(&candidate.point_ids(), &order, budget);
    let tried = lins.len();
    for lin in lins {
        let lin = Linearization::new(&candidate, lin).expect("extends the knowledge relation");
        let rebuilt = to_extensive(&candidate, &lin);
        if let Some(isomorphism) = find_isomorphism(e, &rebuilt) {
            return InterpretVerdict::Yes(Box::new(Witness {
                game: candidate,
                linearization: lin,
                isomorphism,
            }));
        }
    }
    if truncated {
        InterpretVerdict::Unknown { tried }
    } else {
        InterpretVerdict::No(Certificate::NoReconstruction { tried })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::actual_precedence;
    use crate::extensive::construct::linearize;
    use crate::extensive::efg::{ChoiceNode, InfoSet, Outcome};
    use crate::fixtures;
    use crate::model::{act, agent, pid};
    use crate::strategic::reduced_strategic_form;

    #[test]
    fn counter_breaks_transitivity() {
        let v = is_spacetime_interpretable(&fixtures::counter(), DEFAULT_BUDGET);
        assert_eq!(v.to_string(), "No: knowledge transitivity violated (C/B/A)");
    }

    #[test]
    fn fixtures_round_trip() {
        for (name, g) in fixtures::games() {
            let e = to_extensive(&g, &linearize(&g));
            match is_spacetime_interpretable(&e, DEFAULT_BUDGET) {
                InterpretVerdict::Yes(w) => {
                    let again = to_extensive(&w.game, &w.linearization);
                    assert!(find_isomorphism(&e, &again).is_some(), "{name}");
                    assert!(reduced_strategic_form(&w.game)
                        .unwrap()
                        .same_tensor(&reduced_strategic_form(&g).unwrap()));
                    assert_eq!(actual_precedence(&w.game), actual_precedence(&g), "{name}");
                }
                other => panic!("{name}: {other}"),
            }
        }
    }

    #[test]
    fn epr_witness_has_two_components() {
        let g = fixtures::epr();
        let e = to_extensive(&g, &linearize(&g));
        let InterpretVerdict::Yes(w) = is_spacetime_interpretable(&e, DEFAULT_BUDGET) else {
            panic!("EPR must be interpretable");
        };
        let red = w.game.precedence().transitive_reduction().unwrap();
        let edges: Vec<(String, String)> = red.pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(
            edges,
            [("A.1", "U.1"), ("A.1", "U.2"), ("B.1", "V.1"), ("B.1", "V.2")]
                .map(|(a, b)| (a.to_string(), b.to_string()))
        );
    }

    /// One player moves twice without remembering the first move.
    fn forgetful() -> ExtensiveFormGame {
        let node = |label: &str, succ: Vec<(&str, NodeRef)>| ChoiceNode {
            label: label.into(),
            player: agent("A"),
            actions: succ.iter().map(|(a, _)| act(a)).collect(),
            successors: succ.into_iter().map(|(a, t)| (act(a), t)).collect(),
        };
        let out = |v: f64| Outcome {
            label: format!("z{v}"),
            payoffs: vec![v],
        };
        ExtensiveFormGame {
            agents: vec![agent("A")],
            actions: vec![act("l"), act("r"), act("x"), act("y")],
            nodes: vec![
                node("root", vec![("l", NodeRef::Choice(1)), ("r", NodeRef::Choice(2))]),
                node("left", vec![("x", NodeRef::Outcome(0)), ("y", NodeRef::Outcome(1))]),
                node("right", vec![("x", NodeRef::Outcome(2)), ("y", NodeRef::Outcome(3))]),
            ],
            outcomes: vec![out(1.0), out(2.0), out(3.0), out(4.0)],
            info_sets: vec![
                InfoSet {
                    label: "A.1".into(),
                    player: agent("A"),
                    nodes: vec![0],
                },
                InfoSet {
                    label: "A.2".into(),
                    player: agent("A"),
                    nodes: vec![1, 2],
                },
            ],
        }
    }

    #[test]
    fn imperfect_recall_is_rejected() {
        match is_spacetime_interpretable(&forgetful(), DEFAULT_BUDGET) {
            InterpretVerdict::No(Certificate::PerfectRecall { info_set, .. }) => assert_eq!(info_set, "A.2"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn invalid_tree_is_rejected() {
        let mut e = forgetful();
        e.info_sets[1].player = agent("B");
        assert!(matches!(is_spacetime_interpretable(&e, 10), InterpretVerdict::No(Certificate::Invalid(_))));
    }

    #[test]
    fn zero_budget_is_unknown() {
        let g = fixtures::running();
        let e = to_extensive(&g, &linearize(&g));
        assert!(matches!(is_spacetime_interpretable(&e, 0), InterpretVerdict::Unknown { tried: 0 }));
    }

    #[test]
    fn ordinal_ids_when_labels_do_not_parse() {
        let mut e = forgetful();
        e.info_sets[0].label = "first".into();
        assert_eq!(point_ids(&e), vec![pid("A.1"), pid("A.2")]);
    }

    #[test]
    fn isomorphism_ignores_node_order() {
        let g = fixtures::prisoners_dilemma();
        let e = to_extensive(&g, &linearize(&g));
        let mut shuffled = e.clone();
        shuffled.nodes.swap(1, 2);
        for n in &mut shuffled.nodes {
            for (_, t) in &mut n.successors {
                if let NodeRef::Choice(i) = t {
                    *i = match *i {
                        1 => 2,
                        2 => 1,
                        x => x,
                    };
                }
            }
        }
        let iso = find_isomorphism(&e, &shuffled).unwrap();
        assert_eq!(iso.nodes, vec![0, 2, 1]);
        shuffled.outcomes[0].payoffs[0] += 1.0;
        assert!(find_isomorphism(&e, &shuffled).is_none());
    }
}
