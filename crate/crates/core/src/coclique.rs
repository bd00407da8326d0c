//! Independent sets: an exact branch-and-bound for graphs with at most 64
//! vertices, exhaustive enumeration of fixed-size cocliques for small graphs,
//! and a seeded local search for large sparse graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::BinaryGraph;

pub const EXACT_LIMIT: usize = 64;
pub const ENUMERATION_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Optimality {
    Proven,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocliqueResult {
    pub size: usize,
    pub members: Vec<usize>,
    pub optimality: Optimality,
    pub node_count: u64,
}

impl CocliqueResult {
    fn checked(
        g: &BinaryGraph,
        mut members: Vec<usize>,
        optimality: Optimality,
        node_count: u64,
    ) -> Self {
        members.sort_unstable();
        assert!(
            is_coclique(g, &members).unwrap_or(false),
            "solver returned a set with an internal edge"
        );
        Self {
            size: members.len(),
            members,
            optimality,
            node_count,
        }
    }
}

pub fn is_coclique(g: &BinaryGraph, vs: &[usize]) -> Result<bool> {
    let n = g.n_vertices();
    if let Some(&v) = vs.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(vs
        .iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !g.adjacent(u, v))))
}

/// Maximum independent set, found as a maximum clique of the complement with
/// greedy-colouring bounds.
pub fn max_coclique_exact(g: &BinaryGraph) -> Result<CocliqueResult> {
    let n = g.n_vertices();
    if n > EXACT_LIMIT {
        return Err(Error::GraphTooLarge {
            n,
            limit: EXACT_LIMIT,
        });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let comp: Vec<u64> = g
        .adjacency_masks()?
        .iter()
        .enumerate()
        .map(|(u, &m)| !m & all & !(1 << u))
        .collect();

    let mut search = CliqueSearch {
        comp: &comp,
        best: 0,
        best_size: 0,
        nodes: 0,
    };
    search.expand(0, 0, all);
    let members = (0..n).filter(|v| search.best >> v & 1 == 1).collect();
    Ok(CocliqueResult::checked(
        g,
        members,
        Optimality::Proven,
        search.nodes,
    ))
}

struct CliqueSearch<'a> {
    comp: &'a [u64],
    best: u64,
    best_size: u32,
    nodes: u64,
}

impl CliqueSearch<'_> {
    /// Colour `p` greedily in ascending vertex order; returns vertices in
    /// colour-class order with their colour numbers (1-based).
    fn colour(&self, p: u64) -> Vec<(usize, u32)> {
        let mut out = Vec::with_capacity(p.count_ones() as usize);
        let mut uncoloured = p;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut avail = uncoloured;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v) & !self.comp[v];
                uncoloured &= !(1 << v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, current: u64, size: u32, mut p: u64) {
        self.nodes += 1;
        if p == 0 {
            if size > self.best_size {
                self.best = current;
                self.best_size = size;
            }
            return;
        }
        let order = self.colour(p);
        for &(v, c) in order.iter().rev() {
            if size + c <= self.best_size {
                return;
            }
            self.expand(current | 1 << v, size + 1, p & self.comp[v]);
            p &= !(1 << v);
        }
        if size > self.best_size {
            self.best = current;
            self.best_size = size;
        }
    }
}

/// All independent sets of exactly `k` vertices, each sorted ascending, in
/// lexicographic order.
pub fn enumerate_max_cocliques(g: &BinaryGraph, k: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n_vertices();
    if n > ENUMERATION_LIMIT {
        return Err(Error::GraphTooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let adj = g.adjacency_masks()?;
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    let all = (1u64 << n) - 1;
    enumerate_rec(&adj, k, all, &mut stack, &mut out);
    Ok(out)
}

fn enumerate_rec(
    adj: &[u64],
    k: usize,
    candidates: u64,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if stack.len() == k {
        out.push(stack.clone());
        return;
    }
    if (candidates.count_ones() as usize) < k - stack.len() {
        return;
    }
    let mut c = candidates;
    while c != 0 {
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        stack.push(v);
        // only vertices above v keep the output ordered and duplicate-free
        enumerate_rec(adj, k, c & !adj[v], stack, out);
        stack.pop();
    }
}

/// Local search for a large independent set.
///
/// Starts from `seed_set` (its non-conflicting part, in order), fills up
/// greedily in a random order, then alternates (1,2)-swaps with random
/// forced insertions until `budget` iterations are spent. The best set seen
/// is returned; it is never smaller than a valid `seed_set`.
pub fn heuristic_coclique(
    g: &BinaryGraph,
    seed: u64,
    budget: u64,
    seed_set: Option<&[usize]>,
) -> Result<CocliqueResult> {
    let n = g.n_vertices();
    if let Some(s) = seed_set {
        if let Some(&v) = s.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let nbrs: Vec<Vec<u32>> = (0..n)
        .map(|u| g.neighbors(u).into_iter().map(|v| v as u32).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = LocalState::new(n);

    if let Some(s) = seed_set {
        for &v in s {
            if !st.in_sol[v] && st.tight[v] == 0 {
                st.insert(v, &nbrs);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for &v in &order {
        if !st.in_sol[v] && st.tight[v] == 0 {
            st.insert(v, &nbrs);
        }
    }

    let mut best = st.members();
    let mut nodes = 0u64;
    let mut worklist: Vec<usize> = best.clone();
    while nodes < budget && n > 0 {
        nodes += 1;
        if let Some(x) = worklist.pop() {
            if st.in_sol[x] {
                if let Some((a, b)) = st.two_swap(x, g, &nbrs) {
                    st.remove(x, &nbrs);
                    st.insert(a, &nbrs);
                    st.insert(b, &nbrs);
                    for &u in &nbrs[x] {
                        let u = u as usize;
                        if !st.in_sol[u] && st.tight[u] == 0 {
                            st.insert(u, &nbrs);
                        }
                    }
                    worklist.extend([a, b]);
                    worklist.extend(st.solution_near(a, &nbrs));
                    worklist.extend(st.solution_near(b, &nbrs));
                }
            }
        } else {
            let outside: Vec<usize> = (0..n).filter(|&v| !st.in_sol[v]).collect();
            if outside.is_empty() {
                break;
            }
            let v = outside[rng.gen_range(0..outside.len())];
            let displaced: Vec<usize> = nbrs[v]
                .iter()
                .map(|&u| u as usize)
                .filter(|&u| st.in_sol[u])
                .collect();
            for &u in &displaced {
                st.remove(u, &nbrs);
            }
            st.insert(v, &nbrs);
            for &u in &displaced {
                for &w in &nbrs[u] {
                    let w = w as usize;
                    if !st.in_sol[w] && st.tight[w] == 0 {
                        st.insert(w, &nbrs);
                    }
                }
            }
            worklist.extend(st.solution_near(v, &nbrs));
            worklist.push(v);
        }
        if st.size > best.len() {
            best = st.members();
        } else if st.size + 2 < best.len() {
            st = LocalState::from_members(n, &best, &nbrs);
            worklist = best.clone();
        }
    }
    Ok(CocliqueResult::checked(
        g,
        best,
        Optimality::Heuristic,
        nodes,
    ))
}

struct LocalState {
    in_sol: Vec<bool>,
    tight: Vec<u32>,
    size: usize,
}

impl LocalState {
    fn new(n: usize) -> Self {
        Self {
            in_sol: vec![false; n],
            tight: vec![0; n],
            size: 0,
        }
    }

    fn from_members(n: usize, members: &[usize], nbrs: &[Vec<u32>]) -> Self {
        let mut st = Self::new(n);
        for &v in members {
            st.insert(v, nbrs);
        }
        st
    }

    fn insert(&mut self, v: usize, nbrs: &[Vec<u32>]) {
        self.in_sol[v] = true;
        self.size += 1;
        for &u in &nbrs[v] {
            self.tight[u as usize] += 1;
        }
    }

    fn remove(&mut self, v: usize, nbrs: &[Vec<u32>]) {
        self.in_sol[v] = false;
        self.size -= 1;
        for &u in &nbrs[v] {
            self.tight[u as usize] -= 1;
        }
    }

    fn members(&self) -> Vec<usize> {
        (0..self.in_sol.len()).filter(|&v| self.in_sol[v]).collect()
    }

    /// Two non-adjacent outside vertices whose only solution neighbour is `x`.
    fn two_swap(&self, x: usize, g: &BinaryGraph, nbrs: &[Vec<u32>]) -> Option<(usize, usize)> {
        let cands: Vec<usize> = nbrs[x]
            .iter()
            .map(|&u| u as usize)
            .filter(|&u| !self.in_sol[u] && self.tight[u] == 1)
            .collect();
        for (i, &a) in cands.iter().enumerate() {
            for &b in &cands[i + 1..] {
                if !g.adjacent(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Solution vertices at distance two from `v`.
    fn solution_near(&self, v: usize, nbrs: &[Vec<u32>]) -> Vec<usize> {
        let mut out: Vec<usize> = nbrs[v]
            .iter()
            .flat_map(|&u| nbrs[u as usize].iter().map(|&w| w as usize))
            .filter(|&w| w != v && self.in_sol[w])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
