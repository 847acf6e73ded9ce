//! Extensive-form games with imperfect information.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{ActionId, AgentId};
use crate::strategic::{check_cells, NormalFormGame};
use crate::error::GameError;

/// Successor of a choice node: another choice node or an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeRef {
    Choice(usize),
    Outcome(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceNode {
    pub label: String,
    pub player: AgentId,
    pub actions: Vec<ActionId>,
    pub successors: Vec<(ActionId, NodeRef)>,
}

impl ChoiceNode {
    pub fn successor(&self, action: &ActionId) -> Option<NodeRef> {
        self.successors.iter().find(|(a, _)| a == action).map(|(_, n)| *n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub label: String,
    /// Indexed like [`ExtensiveFormGame::agents`].
    pub payoffs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfoSet {
    pub label: String,
    pub player: AgentId,
    /// Indices into [`ExtensiveFormGame::nodes`].
    pub nodes: Vec<usize>,
}

/// A finite game tree whose choice nodes are partitioned into information
/// sets.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensiveFormGame {
    pub agents: Vec<AgentId>,
    pub actions: Vec<ActionId>,
    pub nodes: Vec<ChoiceNode>,
    pub outcomes: Vec<Outcome>,
    pub info_sets: Vec<InfoSet>,
}

/// A choice node and the action leading out of it.
pub type Parent = Option<(usize, ActionId)>;

impl ExtensiveFormGame {
    /// The unique node that is nobody's successor. `None` if there is not
    /// exactly one.
    pub fn root(&self) -> Option<NodeRef> {
        let targeted: BTreeSet<NodeRef> = self
            .nodes
            .iter()
            .flat_map(|n| n.successors.iter().map(|(_, t)| *t))
            .collect();
        let mut roots = (0..self.nodes.len())
            .map(NodeRef::Choice)
            .chain((0..self.outcomes.len()).map(NodeRef::Outcome))
            .filter(|r| !targeted.contains(r));
        match (roots.next(), roots.next()) {
            (Some(r), None) => Some(r),
            _ => None,
        }
    }

    /// Information set of each choice node. Assumes a partition.
    pub fn info_set_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.nodes.len()];
        for (i, s) in self.info_sets.iter().enumerate() {
            for &n in &s.nodes {
                if n < out.len() {
                    out[n] = i;
                }
            }
        }
        out
    }

    /// Parent and incoming action of every choice node and outcome.
    pub fn parents(&self) -> (Vec<Parent>, Vec<Parent>) {
        let mut nodes = vec![None; self.nodes.len()];
        let mut outcomes = vec![None; self.outcomes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            for (a, t) in &n.successors {
                match *t {
                    NodeRef::Choice(j) if j < nodes.len() => nodes[j] = Some((i, a.clone())),
                    NodeRef::Outcome(j) if j < outcomes.len() => outcomes[j] = Some((i, a.clone())),
                    _ => {}
                }
            }
        }
        (nodes, outcomes)
    }

    /// Root-to-node path of a choice node as `(node, action taken)` pairs.
    pub fn path_to(&self, parents: &[Option<(usize, ActionId)>], start: Option<(usize, ActionId)>) -> Vec<(usize, ActionId)> {
        let mut path = Vec::new();
        let mut cur = start;
        while let Some((n, a)) = cur {
            path.push((n, a));
            cur = parents[n].clone();
            if path.len() > self.nodes.len() {
                break;
            }
        }
        path.reverse();
        path
    }

    /// Whether every information set is a single node.
    pub fn has_perfect_information(&self) -> bool {
        self.info_sets.iter().all(|s| s.nodes.len() == 1)
    }
}

/// Structural problems of an extensive-form game; empty when valid.
pub fn validate_efg(e: &ExtensiveFormGame) -> Vec<String> {
    let mut out = Vec::new();
    let agents: BTreeSet<&AgentId> = e.agents.iter().collect();
    if agents.len() != e.agents.len() {
        out.push("agents are not distinct".to_string());
    }
    let mut indegree_c = vec![0usize; e.nodes.len()];
    let mut indegree_o = vec![0usize; e.outcomes.len()];
    for n in &e.nodes {
        if !agents.contains(&n.player) {
            out.push(format!("node {}: unknown player {}", n.label, n.player));
        }
        if n.actions.is_empty() {
            out.push(format!("node {}: action function is empty", n.label));
        }
        let distinct: BTreeSet<&ActionId> = n.actions.iter().collect();
        if distinct.len() != n.actions.len() {
            out.push(format!("node {}: repeated action", n.label));
        }
        let mut seen = BTreeSet::new();
        for (a, t) in &n.successors {
            if !n.actions.contains(a) {
                out.push(format!("node {}: successor for action {a} outside the action function", n.label));
            }
            if !seen.insert(a) {
                out.push(format!("node {}: two successors for action {a}", n.label));
            }
            match *t {
                NodeRef::Choice(j) if j < e.nodes.len() => indegree_c[j] += 1,
                NodeRef::Outcome(j) if j < e.outcomes.len() => indegree_o[j] += 1,
                _ => out.push(format!("node {}: successor out of range", n.label)),
            }
        }
        for a in &n.actions {
            if !seen.contains(a) {
                out.push(format!("node {}: no successor for action {a}", n.label));
            }
        }
    }
    for (j, d) in indegree_c.iter().enumerate() {
        if *d > 1 {
            out.push(format!("successor function is not injective: node {} has {d} parents", e.nodes[j].label));
        }
    }
    for (j, d) in indegree_o.iter().enumerate() {
        if *d > 1 {
            out.push(format!("successor function is not injective: outcome {} has {d} parents", e.outcomes[j].label));
        }
    }
    for o in &e.outcomes {
        if o.payoffs.len() != e.agents.len() {
            out.push(format!("outcome {}: {} payoffs for {} agents", o.label, o.payoffs.len(), e.agents.len()));
        }
    }
    let roots = indegree_c.iter().filter(|&&d| d == 0).count() + indegree_o.iter().filter(|&&d| d == 0).count();
    if roots != 1 {
        out.push(format!("nodes and outcomes do not form a single connected component ({roots} roots)"));
    } else if let Some(root) = e.root() {
        // every node reachable from the root
        let mut reached_c = vec![false; e.nodes.len()];
        let mut reached_o = vec![false; e.outcomes.len()];
        let mut stack = vec![root];
        while let Some(r) = stack.pop() {
            match r {
                NodeRef::Choice(i) if i < e.nodes.len() && !reached_c[i] => {
                    reached_c[i] = true;
                    stack.extend(e.nodes[i].successors.iter().map(|(_, t)| *t));
                }
                NodeRef::Outcome(i) if i < e.outcomes.len() => reached_o[i] = true,
                _ => {}
            }
        }
        if reached_c.iter().chain(&reached_o).any(|r| !r) {
            out.push("nodes and outcomes do not form a single connected component (cycle)".to_string());
        }
    }
    let mut covered = vec![0usize; e.nodes.len()];
    for s in &e.info_sets {
        if s.nodes.is_empty() {
            out.push(format!("information set {} is empty", s.label));
        }
        for &n in &s.nodes {
            if n >= e.nodes.len() {
                out.push(format!("information set {}: node out of range", s.label));
                continue;
            }
            covered[n] += 1;
            let node = &e.nodes[n];
            if node.player != s.player {
                out.push(format!(
                    "information set {} is not compatible with the player function: node {} belongs to {}",
                    s.label, node.label, node.player
                ));
            }
            let first = &e.nodes[s.nodes[0].min(e.nodes.len() - 1)];
            let a: BTreeSet<&ActionId> = node.actions.iter().collect();
            let b: BTreeSet<&ActionId> = first.actions.iter().collect();
            if a != b {
                out.push(format!(
                    "information set {} is not compatible with the action function: nodes {} and {} differ",
                    s.label, first.label, node.label
                ));
            }
        }
    }
    for (n, c) in covered.iter().enumerate() {
        if *c != 1 {
            out.push(format!("node {} is in {c} information sets", e.nodes[n].label));
        }
    }
    out
}

/// Own `(information set, action)` sequence on the path to each node of the
/// set, for the set's player.
fn own_sequences(e: &ExtensiveFormGame, set: usize, parents: &[Option<(usize, ActionId)>], of: &[usize]) -> Vec<Vec<(usize, ActionId)>> {
    let player = &e.info_sets[set].player;
    e.info_sets[set]
        .nodes
        .iter()
        .map(|&n| {
            e.path_to(parents, parents[n].clone())
                .into_iter()
                .filter(|(m, _)| &e.nodes[*m].player == player)
                .map(|(m, a)| (of[m], a))
                .collect()
        })
        .collect()
}

/// First information set whose nodes disagree on the player's own past
/// moves, if any.
pub fn perfect_recall_violation(e: &ExtensiveFormGame) -> Option<usize> {
    let (parents, _) = e.parents();
    let of = e.info_set_of();
    (0..e.info_sets.len()).find(|&s| {
        let seqs = own_sequences(e, s, &parents, &of);
        seqs.windows(2).any(|w| w[0] != w[1])
    })
}

/// No player forgets an own earlier information set or action.
pub fn has_perfect_recall(e: &ExtensiveFormGame) -> bool {
    perfect_recall_violation(e).is_none()
}

/// The strategic form of a valid extensive-form game. A strategy picks one
/// action per own information set, labeled by the actions joined with `/`.
pub fn strategic_form_efg(e: &ExtensiveFormGame) -> Result<NormalFormGame, GameError> {
    let of = e.info_set_of();
    // per agent: its information sets and their action lists
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); e.agents.len()];
    let agent_pos: BTreeMap<&AgentId, usize> = e.agents.iter().enumerate().map(|(i, a)| (a, i)).collect();
    for (i, s) in e.info_sets.iter().enumerate() {
        sets[agent_pos[&s.player]].push(i);
    }
    let set_actions = |s: usize| &e.nodes[e.info_sets[s].nodes[0]].actions;
    // strategies as lists of action indices per own set
    let mut spaces: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    for own in &sets {
        let mut space: Vec<Vec<usize>> = vec![Vec::new()];
        for &s in own {
            let k = set_actions(s).len();
            space = space
                .into_iter()
                .flat_map(|p| (0..k).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                }))
                .collect();
        }
        labels.push(
            space
                .iter()
                .map(|choice| {
                    let parts: Vec<&str> = own.iter().zip(choice).map(|(&s, &i)| set_actions(s)[i].as_str()).collect();
                    parts.join("/")
                })
                .collect(),
        );
        spaces.push(space);
    }
    let cells = check_cells(spaces.iter().map(Vec::len))?;
    // position of each set within its owner's list
    let mut slot = vec![0usize; e.info_sets.len()];
    for own in &sets {
        for (k, &s) in own.iter().enumerate() {
            slot[s] = k;
        }
    }
    let mut nf = NormalFormGame {
        agents: e.agents.clone(),
        labels,
        payoffs: Vec::with_capacity(cells),
        annotations: Vec::with_capacity(cells),
    };
    let root = e.root().expect("valid extensive form has a root");
    for cell in 0..cells {
        let profile = nf.profile(cell);
        let mut cur = root;
        let leaf = loop {
            match cur {
                NodeRef::Outcome(o) => break o,
                NodeRef::Choice(n) => {
                    let node = &e.nodes[n];
                    let s = of[n];
                    let who = agent_pos[&node.player];
                    let i = spaces[who][profile[who]][slot[s]];
                    let action = &set_actions(s)[i];
                    cur = node.successor(action).expect("valid extensive form is total");
                }
            }
        };
        nf.payoffs.push(e.outcomes[leaf].payoffs.clone());
        nf.annotations.push(e.outcomes[leaf].label.clone());
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{act, agent};

    fn leaf(v: f64) -> Outcome {
        Outcome {
            label: format!("z{v}"),
            payoffs: vec![v, -v],
        }
    }

    fn node(label: &str, who: &str, succ: Vec<(&str, NodeRef)>) -> ChoiceNode {
        ChoiceNode {
            label: label.into(),
            player: agent(who),
            actions: succ.iter().map(|(a, _)| act(a)).collect(),
            successors: succ.into_iter().map(|(a, t)| (act(a), t)).collect(),
        }
    }

    fn set(label: &str, who: &str, nodes: Vec<usize>) -> InfoSet {
        InfoSet {
            label: label.into(),
            player: agent(who),
            nodes,
        }
    }

    /// Matching pennies with the second mover uninformed.
    fn pennies() -> ExtensiveFormGame {
        ExtensiveFormGame {
            agents: vec![agent("A"), agent("B")],
            actions: vec![act("h"), act("t")],
            nodes: vec![
                node("root", "A", vec![("h", NodeRef::Choice(1)), ("t", NodeRef::Choice(2))]),
                node("bh", "B", vec![("h", NodeRef::Outcome(0)), ("t", NodeRef::Outcome(1))]),
                node("bt", "B", vec![("h", NodeRef::Outcome(2)), ("t", NodeRef::Outcome(3))]),
            ],
            outcomes: vec![leaf(1.0), leaf(-1.0), leaf(-1.0), leaf(1.0)],
            info_sets: vec![set("A.1", "A", vec![0]), set("B.1", "B", vec![1, 2])],
        }
    }

    #[test]
    fn valid_tree_has_empty_report() {
        let e = pennies();
        assert!(validate_efg(&e).is_empty());
        assert_eq!(e.root(), Some(NodeRef::Choice(0)));
        assert!(has_perfect_recall(&e));
        assert!(!e.has_perfect_information());
    }

    #[test]
    fn mixed_players_cite_player_function() {
        let mut e = pennies();
        e.nodes[2].player = agent("A");
        let report = validate_efg(&e);
        assert!(report.iter().any(|m| m.contains("player function")), "{report:?}");
    }

    #[test]
    fn two_roots_cite_connected_component() {
        let mut e = pennies();
        e.nodes[0].successors.pop();
        e.nodes[0].actions.pop();
        let report = validate_efg(&e);
        assert!(report.iter().any(|m| m.contains("single connected component")), "{report:?}");
    }

    #[test]
    fn shared_target_is_not_injective() {
        let mut e = pennies();
        e.nodes[2].successors[1].1 = NodeRef::Outcome(0);
        let report = validate_efg(&e);
        assert!(report.iter().any(|m| m.contains("not injective")), "{report:?}");
    }

    #[test]
    fn absent_minded_driver_lacks_recall() {
        let e = ExtensiveFormGame {
            agents: vec![agent("D")],
            actions: vec![act("exit"), act("go")],
            nodes: vec![
                node("x", "D", vec![("exit", NodeRef::Outcome(0)), ("go", NodeRef::Choice(1))]),
                node("y", "D", vec![("exit", NodeRef::Outcome(1)), ("go", NodeRef::Outcome(2))]),
            ],
            outcomes: vec![
                Outcome { label: "a".into(), payoffs: vec![0.0] },
                Outcome { label: "b".into(), payoffs: vec![4.0] },
                Outcome { label: "c".into(), payoffs: vec![1.0] },
            ],
            info_sets: vec![set("D.1", "D", vec![0, 1])],
        };
        assert!(validate_efg(&e).is_empty());
        assert!(!has_perfect_recall(&e));
    }

    #[test]
    fn pennies_strategic_form() {
        let nf = strategic_form_efg(&pennies()).unwrap();
        assert_eq!(nf.labels, vec![vec!["h", "t"], vec!["h", "t"]]);
        assert_eq!(nf.payoff(&[0, 1]), &[-1.0, 1.0]);
        assert_eq!(nf.payoff(&[1, 1]), &[1.0, -1.0]);
    }
}
