use super::FreeWord;
use std::collections::{BTreeMap, VecDeque};

/// Index of a subgroup: finite or countably infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphIndex {
    Finite(usize),
    Infinite,
}

/// Folded core graph of a finitely generated subgroup of `F_rank`.
///
/// Vertices are numbered breadth-first from the base (vertex 0), visiting
/// labels in the order `+1, -1, +2, -2, …`. The folded core of a subgroup is
/// unique up to based isomorphism, so two graphs compare equal exactly when
/// they represent the same subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsGraph {
    rank: usize,
    /// adjacency: signed label -> target; every edge appears once in each
    /// direction
    adj: Vec<BTreeMap<i32, usize>>,
}

/// Union-find workspace used while folding.
struct Folder {
    parent: Vec<usize>,
    adj: Vec<BTreeMap<i32, usize>>,
}

impl Folder {
    fn new() -> Self {
        Folder {
            parent: vec![0],
            adj: vec![BTreeMap::new()],
        }
    }

    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.adj.push(BTreeMap::new());
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn add_edge(&mut self, from: usize, label: i32, to: usize) {
        let mut pending = vec![];
        self.insert_half(from, label, to, &mut pending);
        self.insert_half(to, -label, from, &mut pending);
        self.drain(pending);
    }

    fn insert_half(&mut self, v: usize, label: i32, t: usize, pending: &mut Vec<(usize, usize)>) {
        let v = self.find(v);
        let t = self.find(t);
        match self.adj[v].get(&label).copied() {
            Some(existing) => pending.push((existing, t)),
            None => {
                self.adj[v].insert(label, t);
            }
        }
    }

    fn drain(&mut self, mut pending: Vec<(usize, usize)>) {
        while let Some((a, b)) = pending.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            // keep the smaller index so the base stays a representative
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone] = keep;
            let moved = std::mem::take(&mut self.adj[gone]);
            for (label, t) in moved {
                self.insert_half(keep, label, t, &mut pending);
            }
        }
    }

    fn add_loop(&mut self, w: &FreeWord) {
        let letters = w.letters();
        if letters.is_empty() {
            return;
        }
        let mut cur = 0;
        for (i, &l) in letters.iter().enumerate() {
            let c = self.find(cur);
            let next = if i + 1 == letters.len() {
                0
            } else if let Some(&t) = self.adj[c].get(&l) {
                t
            } else {
                self.fresh()
            };
            self.add_edge(c, l, next);
            cur = self.find(next);
        }
    }
}

impl StallingsGraph {
    /// Folds the based petals of `generators` and prunes hanging trees.
    pub fn fold(generators: &[FreeWord], rank: usize) -> Self {
        let mut f = Folder::new();
        for g in generators {
            g.check_rank(rank).expect("generator outside ambient rank");
            f.add_loop(g);
        }
        let base = f.find(0);
        let reps: Vec<usize> = (0..f.parent.len()).filter(|&v| f.find(v) == v).collect();
        let mut adj: BTreeMap<usize, BTreeMap<i32, usize>> = BTreeMap::new();
        for &v in &reps {
            let entries: Vec<(i32, usize)> = f.adj[v].clone().into_iter().collect();
            let m = entries.into_iter().map(|(l, t)| (l, f.find(t))).collect();
            adj.insert(v, m);
        }
        let mut g = Self::canonical(rank, base, &adj);
        g.prune();
        g
    }

    fn canonical(rank: usize, base: usize, adj: &BTreeMap<usize, BTreeMap<i32, usize>>) -> Self {
        let mut order: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([base]);
        order.insert(base, 0);
        let mut seq = vec![base];
        while let Some(v) = queue.pop_front() {
            for label in label_order(rank) {
                if let Some(&t) = adj[&v].get(&label) {
                    if let std::collections::btree_map::Entry::Vacant(e) = order.entry(t) {
                        e.insert(seq.len());
                        seq.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let new_adj = seq
            .iter()
            .map(|v| adj[v].iter().map(|(&l, t)| (l, order[t])).collect())
            .collect();
        StallingsGraph { rank, adj: new_adj }
    }

    /// Removes degree-one vertices other than the base, then renumbers.
    fn prune(&mut self) {
        let n = self.adj.len();
        let mut alive = vec![true; n];
        let mut changed = true;
        while changed {
            changed = false;
            for v in 1..n {
                if alive[v] && self.adj[v].len() == 1 {
                    let (&l, &t) = self.adj[v].iter().next().expect("degree one");
                    self.adj[t].remove(&-l);
                    self.adj[v].clear();
                    alive[v] = false;
                    changed = true;
                }
            }
        }
        if alive.iter().all(|&a| a) {
            return;
        }
        let adj: BTreeMap<usize, BTreeMap<i32, usize>> = (0..n)
            .filter(|&v| alive[v])
            .map(|v| (v, self.adj[v].clone()))
            .collect();
        *self = Self::canonical(self.rank, 0, &adj);
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Target of the `label` edge at `v`, if present.
    pub fn step(&self, v: usize, label: i32) -> Option<usize> {
        self.adj[v].get(&label).copied()
    }

    /// Folded: at most one edge per signed label at every vertex.
    pub fn is_folded(&self) -> bool {
        // BTreeMap keys are unique per vertex; check the two directions agree
        self.adj.iter().enumerate().all(|(v, a)| {
            a.iter().all(|(&l, &t)| self.adj[t].get(&-l) == Some(&v))
        })
    }

    /// True iff `w` reads a closed path at the base.
    pub fn member(&self, w: &FreeWord) -> bool {
        let mut v = 0;
        for &l in w.letters() {
            match self.step(v, l) {
                Some(t) => v = t,
                None => return false,
            }
        }
        v == 0
    }

    /// Rank of the represented subgroup, `|E| − |V| + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Finite exactly when every vertex carries all `2·rank` half-edges.
    pub fn index(&self) -> GraphIndex {
        if self.adj.iter().all(|a| a.len() == 2 * self.rank) {
            GraphIndex::Finite(self.vertex_count())
        } else {
            GraphIndex::Infinite
        }
    }

    /// The single-vertex graph with one loop per generator.
    pub fn is_rose(&self) -> bool {
        self.index() == GraphIndex::Finite(1)
    }

    /// A free basis read off a spanning tree (BFS tree, labels in order).
    pub fn free_basis(&self) -> Vec<FreeWord> {
        let n = self.adj.len();
        let mut path: Vec<Option<FreeWord>> = vec![None; n];
        let mut tree = std::collections::BTreeSet::new();
        path[0] = Some(FreeWord::identity());
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for label in label_order(self.rank) {
                if let Some(t) = self.step(v, label) {
                    if path[t].is_none() {
                        let p = path[v].as_ref().expect("visited").mul(&FreeWord::reduce([label]));
                        path[t] = Some(p);
                        tree.insert((v, label));
                        tree.insert((t, -label));
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut basis = Vec::new();
        for v in 0..n {
            for (&l, &t) in &self.adj[v] {
                if l < 0 || tree.contains(&(v, l)) {
                    continue;
                }
                let pv = path[v].as_ref().expect("connected");
                let pt = path[t].as_ref().expect("connected");
                basis.push(pv.mul(&FreeWord::reduce([l])).mul(&pt.inverse()));
            }
        }
        basis
    }
}

pub(crate) fn label_order(rank: usize) -> impl Iterator<Item = i32> {
    (1..=rank as i32).flat_map(|k| [k, -k])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::reduce(l.iter().copied())
    }

    #[test]
    fn single_loop() {
        let g = StallingsGraph::fold(&[w(&[1])], 2);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.rank(), 1);
        assert_eq!(g.index(), GraphIndex::Infinite);
        assert!(g.member(&w(&[1, 1, 1, 1, 1])));
        assert!(!g.member(&w(&[2])));
    }

    #[test]
    fn index_two_subgroup() {
        let g = StallingsGraph::fold(&[w(&[1, 1]), w(&[2]), w(&[1, 2, -1])], 2);
        assert!(g.is_folded());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.index(), GraphIndex::Finite(2));
        assert_eq!(g.rank(), 3);
        // x1 x2 x1 = (x1 x2 x1^-1) · x1^2
        assert_eq!(w(&[1, 2, -1]).mul(&w(&[1, 1])), w(&[1, 2, 1]));
        assert!(g.member(&w(&[1, 2, 1])));
        assert!(!g.member(&w(&[1, 2])));
        assert!(!g.member(&w(&[1])));
    }

    #[test]
    fn collapses_to_rose() {
        let g = StallingsGraph::fold(&[w(&[1]), w(&[1, 2])], 2);
        assert!(g.is_rose());
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn hanging_trees_are_pruned() {
        // x2 x1 x2^-1 folds to a spur plus a loop; the spur stays at the base
        let g = StallingsGraph::fold(&[w(&[2, 1, -2])], 2);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.rank(), 1);
        assert!(g.member(&w(&[2, 1, 1, -2])));
        assert!(!g.member(&w(&[1])));
    }

    #[test]
    fn trivial_subgroup() {
        let g = StallingsGraph::fold(&[], 3);
        assert_eq!(g.rank(), 0);
        assert_eq!(g.index(), GraphIndex::Infinite);
        assert!(g.member(&FreeWord::identity()));
        let g = StallingsGraph::fold(&[w(&[1, -1])], 0);
        assert_eq!(g.index(), GraphIndex::Finite(1));
    }

    #[test]
    fn order_independent() {
        let a = StallingsGraph::fold(&[w(&[1, 1]), w(&[2]), w(&[1, 2, -1])], 2);
        let b = StallingsGraph::fold(&[w(&[1, 2, -1]), w(&[1, 1]), w(&[2])], 2);
        assert_eq!(a, b);
    }

    #[test]
    fn free_basis_regenerates() {
        let g = StallingsGraph::fold(&[w(&[1, 1]), w(&[2]), w(&[1, 2, -1])], 2);
        let basis = g.free_basis();
        assert_eq!(basis.len(), 3);
        assert_eq!(StallingsGraph::fold(&basis, 2), g);
    }
}
