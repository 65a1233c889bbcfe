//! Brute-force ground truth: builds perfect m-ary trees explicitly and
//! counts pairs by BFS from every vertex. Deliberately naive; the closed
//! forms are checked against this, never the other way round.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use thiserror::Error;

use crate::exactcount::{vr, vu, Count, FormulaError, PathLength};

pub const DEFAULT_VERTEX_BUDGET: u64 = 200_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("shape has {n} vertices, exceeding the budget of {budget}")]
    BudgetExceeded { n: String, budget: u64 },
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("operation requires a rooted tree")]
    NotRooted,
    #[error("operation requires the two-half decomposition markers")]
    NoHalves,
}

/// Which side of the bridge edge a vertex sits on in an unrooted build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    First,
    Second,
}

/// Concrete tree with dense vertex ids 0..n-1 and symmetric adjacency.
#[derive(Debug, Clone)]
pub struct ExplicitTree {
    adjacency: Vec<Vec<u32>>,
    root: Option<u32>,
    halves: Option<Vec<Half>>,
    bridge: Option<(u32, u32)>,
}

impl ExplicitTree {
    pub fn from_adjacency(adjacency: Vec<Vec<u32>>) -> Self {
        ExplicitTree {
            adjacency,
            root: None,
            halves: None,
            bridge: None,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn root(&self) -> Option<u32> {
        self.root
    }

    pub fn halves(&self) -> Option<&[Half]> {
        self.halves.as_deref()
    }

    pub fn bridge(&self) -> Option<(u32, u32)> {
        self.bridge
    }

    /// Edges as ordered pairs (u, v) with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as u32;
            nbrs.iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    pub fn degree_census(&self) -> BTreeMap<usize, u64> {
        let mut census = BTreeMap::new();
        for v in 0..self.n() {
            *census.entry(self.adjacency[v].len()).or_insert(0u64) += 1;
        }
        census
    }

    /// BFS distances from `source` to every vertex.
    pub fn bfs_distances(&self, source: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        dist[source as usize] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u as usize] {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn eccentricities(&self) -> Vec<u32> {
        (0..self.n() as u32)
            .map(|v| self.bfs_distances(v).into_iter().max().unwrap_or(0))
            .collect()
    }

    pub fn diameter(&self) -> u32 {
        self.eccentricities().into_iter().max().unwrap_or(0)
    }
}

/// Distance histogram: t -> number of unordered pairs at distance t, t >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceHistogram {
    pub n: Count,
    pub counts: BTreeMap<u32, Count>,
}

impl DistanceHistogram {
    pub fn total(&self) -> Count {
        self.counts.values().sum()
    }
}

fn checked_size(n: &BigUint, budget: u64) -> Result<u64, OracleError> {
    match u64::try_from(n) {
        Ok(v) if v <= budget => Ok(v),
        _ => Err(OracleError::BudgetExceeded {
            n: n.to_string(),
            budget,
        }),
    }
}

/// Builds the perfect rooted m-ary tree of depth r in level order:
/// vertex 0 is the root, each level's children follow their parents left
/// to right.
pub fn build_rooted(m: u64, r: u32, budget: u64) -> Result<ExplicitTree, OracleError> {
    let n = checked_size(&vr(m, r)?, budget)?;
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    let mut next = 1u64;
    let mut level = vec![0u32];
    for _ in 0..r {
        let mut below = Vec::with_capacity(level.len() * m as usize);
        for &parent in &level {
            for _ in 0..m {
                let child = next as u32;
                next += 1;
                adjacency[parent as usize].push(child);
                adjacency[child as usize].push(parent);
                below.push(child);
            }
        }
        level = below;
    }
    debug_assert_eq!(next, n);
    Ok(ExplicitTree {
        adjacency,
        root: Some(0),
        halves: None,
        bridge: None,
    })
}

/// Builds the perfect unrooted m-ary tree of diameter D by joining the
/// roots of two perfect rooted trees with the bridge edge. D = 2r-1 joins
/// two depth-(r-1) trees, D = 2r joins depths r and r-1. Vertices of the
/// first half come first, each half in level order.
pub fn build_unrooted(m: u64, diameter: u32, budget: u64) -> Result<ExplicitTree, OracleError> {
    checked_size(&vu(m, diameter)?, budget)?;
    if diameter == 0 {
        return Ok(ExplicitTree {
            adjacency: vec![Vec::new()],
            root: None,
            halves: Some(vec![Half::First]),
            bridge: None,
        });
    }
    let r = diameter.div_ceil(2);
    let (d1, d2) = if diameter % 2 == 1 {
        (r - 1, r - 1)
    } else {
        (r, r - 1)
    };
    let first = build_rooted(m, d1, budget)?;
    let second = build_rooted(m, d2, budget)?;
    let offset = first.n() as u32;
    let mut adjacency = first.adjacency;
    for nbrs in &second.adjacency {
        adjacency.push(nbrs.iter().map(|&v| v + offset).collect());
    }
    adjacency[0].push(offset);
    adjacency[offset as usize].push(0);
    let mut halves = vec![Half::First; offset as usize];
    halves.resize(adjacency.len(), Half::Second);
    Ok(ExplicitTree {
        adjacency,
        root: None,
        halves: Some(halves),
        bridge: Some((0, offset)),
    })
}

/// Ground-truth distance histogram by BFS from every vertex. Ordered pair
/// counts are halved only after asserting evenness.
pub fn distance_histogram(tree: &ExplicitTree) -> DistanceHistogram {
    let n = tree.n();
    let mut ordered = vec![0u64; n];
    for v in 0..n as u32 {
        for d in tree.bfs_distances(v) {
            if d > 0 {
                ordered[d as usize] += 1;
            }
        }
    }
    let mut counts = BTreeMap::new();
    for (t, &pairs) in ordered.iter().enumerate().skip(1) {
        if pairs > 0 {
            assert!(pairs % 2 == 0, "ordered pair count must be even");
            counts.insert(t as u32, Count::from(pairs / 2));
        }
    }
    DistanceHistogram {
        n: Count::from(n as u64),
        counts,
    }
}

/// Classifies every unordered pair at distance t by its type index
/// s = min arm length below the pair's minimum-depth vertex, computed from
/// endpoint depths as s' = (depth(u) + depth(v) - t) / 2.
pub fn type_histogram(
    tree: &ExplicitTree,
    t: PathLength,
) -> Result<BTreeMap<u32, Count>, OracleError> {
    Ok(type_histogram_full(tree)?
        .remove(&t.get())
        .unwrap_or_default())
}

/// Type histograms for every occurring path length in one all-pairs pass:
/// t -> (s -> count).
pub fn type_histogram_full(
    tree: &ExplicitTree,
) -> Result<BTreeMap<u32, BTreeMap<u32, Count>>, OracleError> {
    let root = tree.root().ok_or(OracleError::NotRooted)?;
    let depth = tree.bfs_distances(root);
    let mut result: BTreeMap<u32, BTreeMap<u32, Count>> = BTreeMap::new();
    for u in 0..tree.n() as u32 {
        let dist = tree.bfs_distances(u);
        for v in (u + 1)..tree.n() as u32 {
            let t = dist[v as usize];
            let (du, dv) = (depth[u as usize], depth[v as usize]);
            let sum = du + dv - t;
            assert!(sum.is_multiple_of(2), "path minimum depth must be integral");
            let min_depth = sum / 2;
            let s = (du - min_depth).min(dv - min_depth);
            *result
                .entry(t)
                .or_default()
                .entry(s)
                .or_insert_with(|| Count::from(0u32)) += 1u32;
        }
    }
    Ok(result)
}

/// The degree-based identities for P(T,1), P(T,2), P(T,3):
/// edge count, sum of C(deg(v), 2), and sum over edges of
/// (deg(u)-1)(deg(v)-1).
pub fn degree_formula_counts(tree: &ExplicitTree) -> (Count, Count, Count) {
    let edges: u64 = tree
        .adjacency
        .iter()
        .map(|nbrs| nbrs.len() as u64)
        .sum::<u64>()
        / 2;
    let p2: u64 = tree
        .adjacency
        .iter()
        .map(|nbrs| {
            let d = nbrs.len() as u64;
            d * (d - 1) / 2
        })
        .sum();
    let p3: u64 = tree
        .edges()
        .map(|(u, v)| (tree.degree(u) as u64 - 1) * (tree.degree(v) as u64 - 1))
        .sum();
    (Count::from(edges), Count::from(p2), Count::from(p3))
}

/// Counts pairs at each distance whose endpoints lie in different halves of
/// an unrooted build; these are exactly the paths containing the bridge
/// edge.
pub fn cross_half_histogram(
    tree: &ExplicitTree,
) -> Result<BTreeMap<u32, Count>, OracleError> {
    let halves = tree.halves().ok_or(OracleError::NoHalves)?;
    let mut counts = BTreeMap::new();
    for u in 0..tree.n() as u32 {
        let dist = tree.bfs_distances(u);
        for v in (u + 1)..tree.n() as u32 {
            if halves[u as usize] != halves[v as usize] {
                *counts
                    .entry(dist[v as usize])
                    .or_insert_with(|| Count::from(0u32)) += 1u32;
            }
        }
    }
    Ok(counts)
}
