//! Weighted digraphs attached to square matrices.
//!
//! Nodes are 0-based indices into the matrix. A digraph may live on a subset
//! of the index space (after [`Digraph::restrict`]), so node sets are explicit.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::TropMatrix;
use crate::NodeSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Digraph {
    nodes: NodeSet,
    edges: BTreeMap<(usize, usize), f64>,
}

/// Strongly connected components, ordered by their smallest node.
#[derive(Clone, Debug, PartialEq)]
pub struct SccDecomposition {
    pub components: Vec<NodeSet>,
    component_of: BTreeMap<usize, usize>,
}

impl SccDecomposition {
    pub fn component_of(&self, node: usize) -> Option<usize> {
        self.component_of.get(&node).copied()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl Digraph {
    /// Builds a digraph from explicit parts. Every edge endpoint must be a node
    /// and every weight positive.
    pub fn new(nodes: NodeSet, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, j, w) in edges {
            if !nodes.contains(&i) {
                return Err(Error::NotASubset(i));
            }
            if !nodes.contains(&j) {
                return Err(Error::NotASubset(j));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::Precondition(format!(
                    "edge ({i}, {j}) has non-positive weight {w}"
                )));
            }
            map.insert((i, j), w);
        }
        Ok(Self { nodes, edges: map })
    }

    /// `digr(A)`: edge `(i, j)` with weight `a_ij` iff `a_ij > 0`.
    pub fn from_matrix(a: &TropMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let mut edges = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let w = a.get(i, j);
                if w > 0.0 {
                    edges.insert((i, j), w);
                }
            }
        }
        Ok(Self {
            nodes: (0..n).collect(),
            edges,
        })
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&(i, j))
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.edges.get(&(i, j)).copied()
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .range((i, 0)..=(i, usize::MAX))
            .map(|(&(_, j), _)| j)
    }

    fn adjacency(&self) -> (BTreeMap<usize, Vec<usize>>, BTreeMap<usize, Vec<usize>>) {
        let mut out: BTreeMap<usize, Vec<usize>> = self.nodes.iter().map(|&v| (v, vec![])).collect();
        let mut inc = out.clone();
        for &(i, j) in self.edges.keys() {
            out.get_mut(&i).unwrap().push(j);
            inc.get_mut(&j).unwrap().push(i);
        }
        (out, inc)
    }

    /// Induced subgraph on `k`.
    pub fn restrict(&self, k: &NodeSet) -> Result<Self> {
        if let Some(&bad) = k.iter().find(|v| !self.nodes.contains(v)) {
            return Err(Error::NotASubset(bad));
        }
        Ok(self.restrict_unchecked(k))
    }

    pub(crate) fn restrict_unchecked(&self, k: &NodeSet) -> Self {
        Self {
            nodes: k.intersection(&self.nodes).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(&(i, j), _)| k.contains(&i) && k.contains(&j))
                .map(|(&e, &w)| (e, w))
                .collect(),
        }
    }

    /// Tarjan's algorithm, iterative.
    pub fn scc(&self) -> SccDecomposition {
        let (out, _) = self.adjacency();
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut low: BTreeMap<usize, usize> = BTreeMap::new();
        let mut on_stack: BTreeSet<usize> = BTreeSet::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut components: Vec<NodeSet> = Vec::new();
        let mut counter = 0;

        for &root in &self.nodes {
            if index.contains_key(&root) {
                continue;
            }
            // (node, next successor position)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index.insert(root, counter);
            low.insert(root, counter);
            counter += 1;
            stack.push(root);
            on_stack.insert(root);

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                let succ = &out[&v];
                if *pos < succ.len() {
                    let w = succ[*pos];
                    *pos += 1;
                    if let std::collections::btree_map::Entry::Vacant(e) = index.entry(w) {
                        e.insert(counter);
                        low.insert(w, counter);
                        counter += 1;
                        stack.push(w);
                        on_stack.insert(w);
                        call.push((w, 0));
                    } else if on_stack.contains(&w) {
                        let lw = index[&w];
                        let lv = low.get_mut(&v).unwrap();
                        *lv = (*lv).min(lw);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        let lv = low[&v];
                        let lp = low.get_mut(&parent).unwrap();
                        *lp = (*lp).min(lv);
                    }
                    if low[&v] == index[&v] {
                        let mut comp = NodeSet::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack.remove(&w);
                            comp.insert(w);
                            if w == v {
                                break;
                            }
                        }
                        components.push(comp);
                    }
                }
            }
        }

        components.sort_by_key(|c| *c.iter().next().unwrap());
        let component_of = components
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| c.iter().map(move |&v| (v, ci)))
            .collect();
        SccDecomposition {
            components,
            component_of,
        }
    }

    /// True iff the component `nodes` contains a cycle (more than one node, or a loop).
    pub fn is_nontrivial_component(&self, comp: &NodeSet) -> bool {
        comp.len() > 1 || comp.iter().any(|&v| self.has_edge(v, v))
    }

    /// Every pair of nodes lies on a common cycle, and the graph has at least one cycle.
    pub fn is_strongly_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let scc = self.scc();
        scc.len() == 1 && self.is_nontrivial_component(&scc.components[0])
    }

    /// `M_j = {i : (i, j) ∈ E}` for every node `j`.
    pub fn ingoing_sets(&self) -> BTreeMap<usize, NodeSet> {
        let mut sets: BTreeMap<usize, NodeSet> =
            self.nodes.iter().map(|&j| (j, NodeSet::new())).collect();
        for &(i, j) in self.edges.keys() {
            sets.get_mut(&j).unwrap().insert(i);
        }
        sets
    }

    /// Smallest node `i` such that the ingoing sets of all other nodes still
    /// cover the node set, or `None` when no such node exists (exactly when
    /// the digraph is a single elementary cycle).
    pub fn cover_without_node(&self) -> Result<Option<usize>> {
        if !self.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        let m = self.ingoing_sets();
        for &i in &self.nodes {
            let covered: NodeSet = m
                .iter()
                .filter(|(&j, _)| j != i)
                .flat_map(|(_, s)| s.iter().copied())
                .collect();
            if covered == self.nodes {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// A single elementary cycle through all nodes: strongly connected with
    /// every in- and out-degree equal to one.
    pub fn is_single_cycle(&self) -> bool {
        if !self.is_strongly_connected() {
            return false;
        }
        let (out, inc) = self.adjacency();
        out.values().all(|s| s.len() == 1) && inc.values().all(|s| s.len() == 1)
    }

    /// Nodes having a path (of length >= 0) to some node of `targets`.
    pub fn can_reach(&self, targets: &NodeSet) -> NodeSet {
        let (_, inc) = self.adjacency();
        let mut seen: NodeSet = targets.intersection(&self.nodes).copied().collect();
        let mut queue: Vec<usize> = seen.iter().copied().collect();
        while let Some(v) = queue.pop() {
            for &u in &inc[&v] {
                if seen.insert(u) {
                    queue.push(u);
                }
            }
        }
        seen
    }

    /// Nodes reachable (by a path of length >= 0) from some node of `sources`.
    pub fn reachable_from(&self, sources: &NodeSet) -> NodeSet {
        let (out, _) = self.adjacency();
        let mut seen: NodeSet = sources.intersection(&self.nodes).copied().collect();
        let mut queue: Vec<usize> = seen.iter().copied().collect();
        while let Some(v) = queue.pop() {
            for &w in &out[&v] {
                if seen.insert(w) {
                    queue.push(w);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph::new((0..n).collect(), edges.iter().map(|&(i, j)| (i, j, 1.0))).unwrap()
    }

    #[test]
    fn from_matrix_reads_positive_entries() {
        let a = TropMatrix::from_rows(&[[2.0, 0.0], [1.0, 1.0]]).unwrap();
        let d = Digraph::from_matrix(&a).unwrap();
        let edges: Vec<_> = d.edges().collect();
        assert_eq!(edges, vec![(0, 0, 2.0), (1, 0, 1.0), (1, 1, 1.0)]);
        assert_eq!(Digraph::from_matrix(&TropMatrix::zeros(3, 3)).unwrap().edge_count(), 0);
        let full = Digraph::from_matrix(&TropMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap()).unwrap();
        assert_eq!(full.edge_count(), 4);
        assert!(Digraph::from_matrix(&TropMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn scc_examples() {
        let c3 = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(c3.scc().components, vec![set(&[0, 1, 2])]);
        let a = TropMatrix::from_rows(&[[2.0, 0.0], [1.0, 1.0]]).unwrap();
        let d = Digraph::from_matrix(&a).unwrap();
        assert_eq!(d.scc().components, vec![set(&[0]), set(&[1])]);
        let empty = graph(3, &[]);
        assert_eq!(empty.scc().components, vec![set(&[0]), set(&[1]), set(&[2])]);
        // ordering by smallest node
        let g = graph(5, &[(4, 3), (3, 4), (0, 1), (1, 0), (2, 2)]);
        assert_eq!(
            g.scc().components,
            vec![set(&[0, 1]), set(&[2]), set(&[3, 4])]
        );
        assert_eq!(g.scc().component_of(4), Some(2));
    }

    #[test]
    fn restrict_examples() {
        let a = TropMatrix::from_rows(&[[2.0, 0.0], [1.0, 1.0]]).unwrap();
        let d = Digraph::from_matrix(&a).unwrap();
        assert_eq!(d.restrict(&set(&[0, 1])).unwrap(), d);
        let r = d.restrict(&set(&[1])).unwrap();
        assert_eq!(r.edges().collect::<Vec<_>>(), vec![(1, 1, 1.0)]);
        let e = d.restrict(&NodeSet::new()).unwrap();
        assert_eq!(e.node_count(), 0);
        assert_eq!(d.restrict(&set(&[5])), Err(Error::NotASubset(5)));
    }

    #[test]
    fn ingoing_sets_examples() {
        let c3 = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let m = c3.ingoing_sets();
        assert_eq!(m[&0], set(&[2]));
        assert_eq!(m[&1], set(&[0]));
        assert_eq!(m[&2], set(&[1]));
        let g = graph(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]);
        assert_eq!(g.ingoing_sets()[&2], set(&[0, 1]));
        assert!(graph(3, &[]).ingoing_sets().values().all(|s| s.is_empty()));
    }

    #[test]
    fn cover_without_node_examples() {
        let c3 = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(c3.cover_without_node(), Ok(None));
        let g = graph(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]);
        assert_eq!(g.cover_without_node(), Ok(Some(1)));
        assert_eq!(graph(1, &[(0, 0)]).cover_without_node(), Ok(None));
        assert_eq!(
            graph(2, &[(0, 1)]).cover_without_node(),
            Err(Error::NotStronglyConnected)
        );
        assert_eq!(
            graph(1, &[]).cover_without_node(),
            Err(Error::NotStronglyConnected)
        );
    }

    #[test]
    fn reachability() {
        let g = graph(4, &[(0, 1), (1, 2), (3, 3)]);
        assert_eq!(g.can_reach(&set(&[2])), set(&[0, 1, 2]));
        assert_eq!(g.reachable_from(&set(&[1])), set(&[1, 2]));
    }
}
