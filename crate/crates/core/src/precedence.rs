//! Timelike precedence between decision points, as a DAG.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{CycleError, GameError};
use crate::geometry::{classify, CausalClass, Metric};
use crate::model::{DecisionPoint, DecisionPointId};

/// A set of ordered pairs `p ≺ q`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrecedenceRelation {
    pairs: BTreeSet<(DecisionPointId, DecisionPointId)>,
}

impl PrecedenceRelation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, before: DecisionPointId, after: DecisionPointId) -> bool {
        self.pairs.insert((before, after))
    }

    pub fn contains(&self, before: &DecisionPointId, after: &DecisionPointId) -> bool {
        // BTreeSet lookups on tuples need owned keys; a linear probe over the
        // range for `before` avoids the clones.
        self.pairs
            .range((before.clone(), after.clone())..)
            .next()
            .is_some_and(|(b, a)| b == before && a == after)
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(DecisionPointId, DecisionPointId)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_subset(&self, other: &PrecedenceRelation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// Points mentioned by at least one pair, sorted.
    pub fn points(&self) -> BTreeSet<DecisionPointId> {
        self.pairs
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect()
    }

    fn adjacency(&self) -> BTreeMap<&DecisionPointId, Vec<&DecisionPointId>> {
        let mut adj: BTreeMap<&DecisionPointId, Vec<&DecisionPointId>> = BTreeMap::new();
        for (a, b) in &self.pairs {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default();
        }
        adj
    }

    /// One cycle if the relation has any; a self-loop is a cycle of length one.
    pub fn find_cycle(&self) -> Option<Vec<DecisionPointId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Fresh,
            Open,
            Done,
        }
        let adj = self.adjacency();
        let mut mark: BTreeMap<&DecisionPointId, Mark> =
            adj.keys().map(|k| (*k, Mark::Fresh)).collect();
        for &start in adj.keys() {
            if mark[start] != Mark::Fresh {
                continue;
            }
            // iterative DFS keeping the open path
            let mut path: Vec<(&DecisionPointId, usize)> = vec![(start, 0)];
            mark.insert(start, Mark::Open);
            while let Some((node, next)) = path.last_mut() {
                let succ = &adj[*node];
                if *next < succ.len() {
                    let s = succ[*next];
                    *next += 1;
                    match mark[s] {
                        Mark::Fresh => {
                            mark.insert(s, Mark::Open);
                            path.push((s, 0));
                        }
                        Mark::Open => {
                            let from = path.iter().position(|(n, _)| *n == s).unwrap_or(0);
                            return Some(path[from..].iter().map(|(n, _)| (*n).clone()).collect());
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark.insert(*node, Mark::Done);
                    path.pop();
                }
            }
        }
        None
    }

    /// Transitive closure. Fails on cycles.
    pub fn transitive_closure(&self) -> Result<PrecedenceRelation, CycleError> {
        if let Some(cycle) = self.find_cycle() {
            return Err(CycleError { cycle });
        }
        let adj = self.adjacency();
        let mut pairs = BTreeSet::new();
        for &start in adj.keys() {
            let mut seen: BTreeSet<&DecisionPointId> = BTreeSet::new();
            let mut stack: Vec<&DecisionPointId> = adj[start].clone();
            while let Some(n) = stack.pop() {
                if seen.insert(n) {
                    stack.extend(adj[n].iter().copied());
                }
            }
            for n in seen {
                pairs.insert((start.clone(), n.clone()));
            }
        }
        Ok(PrecedenceRelation { pairs })
    }

    /// The unique minimal relation with the same transitive closure.
    pub fn transitive_reduction(&self) -> Result<PrecedenceRelation, CycleError> {
        let closure = self.transitive_closure()?;
        let mut succ: BTreeMap<&DecisionPointId, BTreeSet<&DecisionPointId>> = BTreeMap::new();
        for (a, b) in &closure.pairs {
            succ.entry(a).or_default().insert(b);
        }
        let empty = BTreeSet::new();
        let pairs = closure
            .pairs
            .iter()
            .filter(|(a, b)| {
                !succ[a]
                    .iter()
                    .any(|mid| *mid != b && succ.get(mid).unwrap_or(&empty).contains(b))
            })
            .cloned()
            .collect();
        Ok(PrecedenceRelation { pairs })
    }

    /// Direct predecessors of `point` in this relation.
    pub fn predecessors<'a>(
        &'a self,
        point: &'a DecisionPointId,
    ) -> impl Iterator<Item = &'a DecisionPointId> + 'a {
        self.pairs.iter().filter(move |(_, b)| b == point).map(|(a, _)| a)
    }
}

impl FromIterator<(DecisionPointId, DecisionPointId)> for PrecedenceRelation {
    fn from_iter<T: IntoIterator<Item = (DecisionPointId, DecisionPointId)>>(iter: T) -> Self {
        PrecedenceRelation {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// Derives `≺` from the locations of `points` by pairwise classification.
/// The result is the full relation, not its reduction.
pub fn build_precedence(
    points: &[DecisionPoint],
    metric: &Metric,
) -> Result<PrecedenceRelation, GameError> {
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert(&p.id) {
            return Err(GameError::DuplicatePoint(p.id.clone()));
        }
    }
    let mut rel = PrecedenceRelation::new();
    for (i, p) in points.iter().enumerate() {
        let lp = p.location.as_ref().ok_or_else(|| GameError::MixedLocations(p.id.clone()))?;
        for q in &points[i + 1..] {
            let lq = q.location.as_ref().ok_or_else(|| GameError::MixedLocations(q.id.clone()))?;
            let class = classify(lp, lq, metric).map_err(|source| GameError::Geometry {
                point: q.id.clone(),
                source,
            })?;
            match class {
                CausalClass::TimelikeBefore => {
                    rel.insert(p.id.clone(), q.id.clone());
                }
                CausalClass::TimelikeAfter => {
                    rel.insert(q.id.clone(), p.id.clone());
                }
                CausalClass::SpacelikeSeparated => {}
            }
        }
    }
    Ok(rel)
}

/// Topological order of `nodes` under `rel`, breaking ties by the position
/// in `nodes`. `rel` may mention only points from `nodes`.
pub fn topological_order(
    nodes: &[DecisionPointId],
    rel: &PrecedenceRelation,
) -> Result<Vec<DecisionPointId>, CycleError> {
    let pos: BTreeMap<&DecisionPointId, usize> = nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut indegree = vec![0usize; nodes.len()];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (a, b) in rel.pairs() {
        let (Some(&ia), Some(&ib)) = (pos.get(a), pos.get(b)) else {
            continue;
        };
        succ[ia].push(ib);
        indegree[ib] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..nodes.len()).filter(|&i| indegree[i] == 0).collect();
    let mut out = Vec::with_capacity(nodes.len());
    while let Some(i) = ready.pop_first() {
        out.push(nodes[i].clone());
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if out.len() < nodes.len() {
        let cycle = rel.find_cycle().unwrap_or_default();
        return Err(CycleError { cycle });
    }
    Ok(out)
}

/// Whether `order` lists every node of `nodes` once and respects `rel`.
pub fn is_linear_extension(
    order: &[DecisionPointId],
    nodes: &[DecisionPointId],
    rel: &PrecedenceRelation,
) -> bool {
    if order.len() != nodes.len() {
        return false;
    }
    let pos: BTreeMap<&DecisionPointId, usize> = order.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if pos.len() != order.len() || nodes.iter().any(|n| !pos.contains_key(n)) {
        return false;
    }
    rel.pairs().all(|(a, b)| match (pos.get(a), pos.get(b)) {
        (Some(i), Some(j)) => i < j,
        _ => true,
    })
}

/// All linear extensions of `rel` over `nodes`, in lexicographic order of
/// node positions, stopping after `cap`. The flag is true when truncated.
pub fn linear_extensions(
    nodes: &[DecisionPointId],
    rel: &PrecedenceRelation,
    cap: usize,
) -> (Vec<Vec<DecisionPointId>>, bool) {
    let n = nodes.len();
    let pos: BTreeMap<&DecisionPointId, usize> = nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in rel.pairs() {
        if let (Some(&ia), Some(&ib)) = (pos.get(a), pos.get(b)) {
            preds[ib].push(ia);
        }
    }
    let mut out = Vec::new();
    let mut placed = vec![false; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    // explicit stack of "next candidate to try" per depth
    let mut cursor: Vec<usize> = vec![0];
    let mut truncated = false;
    while let Some(&start) = cursor.last() {
        if order.len() == n {
            if out.len() == cap {
                truncated = true;
                break;
            }
            out.push(order.iter().map(|&i| nodes[i].clone()).collect());
            cursor.pop();
            if let Some(last) = order.pop() {
                placed[last] = false;
            }
            continue;
        }
        let next = (start..n).find(|&i| !placed[i] && preds[i].iter().all(|&p| placed[p]));
        match next {
            Some(i) => {
                *cursor.last_mut().expect("non-empty") = i + 1;
                placed[i] = true;
                order.push(i);
                cursor.push(0);
            }
            None => {
                cursor.pop();
                if let Some(last) = order.pop() {
                    placed[last] = false;
                }
            }
        }
    }
    (out, truncated)
}
