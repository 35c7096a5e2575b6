use std::collections::BTreeSet;

use super::{MergeEvent, Trajectory};
use crate::{Error, Result};

/// Union-find with path compression and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the two sets and returns the size of the result.
    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a != b {
            if self.size[a] < self.size[b] {
                std::mem::swap(&mut a, &mut b);
            }
            self.parent[b] = a;
            self.size[a] += self.size[b];
        }
        self.size[a]
    }

    pub fn set_size(&mut self, i: usize) -> usize {
        let r = self.find(i);
        self.size[r]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeOrigin {
    Initial { site: i64 },
    Merge { step: usize, site: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestNode {
    pub id: u32,
    pub origin: NodeOrigin,
    pub children: Option<(u32, u32)>,
    pub parent: Option<u32>,
}

/// Initial particles are leaves; each collision is an internal node whose
/// children are the two colliding particles.
#[derive(Clone, Debug)]
pub struct MergeForest {
    pub nodes: Vec<ForestNode>,
    /// `(site, id)` of the particles alive at the end of the run.
    pub survivors: Vec<(i64, u32)>,
    sets: DisjointSets,
}

/// Builds the merge forest of a model C or D trajectory.
pub fn trace_merges(traj: &Trajectory) -> Result<MergeForest> {
    let log = traj.merges.as_ref().ok_or(Error::NoMergeLog(traj.model))?;
    let mut nodes: Vec<ForestNode> = log
        .initial
        .iter()
        .map(|&(site, id)| ForestNode {
            id,
            origin: NodeOrigin::Initial { site },
            children: None,
            parent: None,
        })
        .collect();
    let mut sets = DisjointSets::new(log.id_count() as usize);
    for &MergeEvent { step, site, left, right, child } in &log.events {
        debug_assert_eq!(child as usize, nodes.len());
        for p in [left, right] {
            let node = &mut nodes[p as usize];
            if node.parent.is_some() {
                return Err(Error::InvalidParameter(format!("particle {p} merged twice")));
            }
            node.parent = Some(child);
        }
        nodes.push(ForestNode {
            id: child,
            origin: NodeOrigin::Merge { step, site },
            children: Some((left, right)),
            parent: None,
        });
        sets.union(left as usize, child as usize);
        sets.union(right as usize, child as usize);
    }
    let last = traj.configs.last().expect("trajectory has a start");
    let survivors = log
        .ids
        .last()
        .expect("log has a start row")
        .iter()
        .enumerate()
        .filter_map(|(j, id)| id.map(|id| (last.offset() + j as i64, id)))
        .collect();
    Ok(MergeForest {
        nodes,
        survivors,
        sets,
    })
}

impl MergeForest {
    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.children.is_none()).count()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.len() - self.leaf_count()
    }

    pub fn roots(&self) -> Vec<u32> {
        self.nodes.iter().filter(|n| n.parent.is_none()).map(|n| n.id).collect()
    }

    /// Every node in the subtree of `id`, including `id`.
    pub fn ancestors(&self, id: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(k) = stack.pop() {
            if out.insert(k) {
                if let Some((l, r)) = self.nodes[k as usize].children {
                    stack.extend([l, r]);
                }
            }
        }
        out
    }

    /// Initial particles that merged into `id`.
    pub fn initial_ancestors(&self, id: u32) -> Vec<u32> {
        self.ancestors(id)
            .into_iter()
            .filter(|&k| self.nodes[k as usize].children.is_none())
            .collect()
    }

    /// Number of initial particles in the cluster of `id`.
    pub fn cluster_size(&mut self, id: u32) -> usize {
        let total = self.sets.set_size(id as usize);
        // Internal nodes of a binary tree: leaves - 1.
        total.div_ceil(2)
    }

    /// Leaves minus internal nodes minus survivors: particles that left a line window.
    pub fn exited(&self) -> usize {
        self.leaf_count() - self.internal_count() - self.survivors.len()
    }
}
