//! Simple undirected graphs with an O(1) edge oracle.
//!
//! Two backings: a dense bit matrix for small explicit graphs, and a
//! difference graph on a list of words where `x ~ y` iff `x + y` lies in a
//! fixed connection set (looked up in a [`WordTable`]).

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::json;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::gf2::WordTable;
use crate::word::Word;

#[derive(Clone, Debug)]
enum Edges {
    Dense(Vec<Vec<u64>>),
    Difference {
        words: Vec<Word>,
        index: HashMap<u32, u32>,
        connection: Vec<Word>,
        table: WordTable,
    },
}

#[derive(Clone, Debug)]
pub struct BinaryGraph {
    n: usize,
    edges: Edges,
}

impl BinaryGraph {
    /// Graph on `n` vertices with `adjacent(u, v)` evaluated for `u < v`.
    /// Self-loops are never created.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let blocks = n.div_ceil(64);
        let mut rows = vec![vec![0u64; blocks]; n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    rows[u][v / 64] |= 1 << (v % 64);
                    rows[v][u / 64] |= 1 << (u % 64);
                }
            }
        }
        Self {
            n,
            edges: Edges::Dense(rows),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::from_fn(n, |_, _| false);
        let Edges::Dense(rows) = &mut g.edges else {
            unreachable!()
        };
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u != v {
                rows[u][v / 64] |= 1 << (v % 64);
                rows[v][u / 64] |= 1 << (u % 64);
            }
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_fn(n, |_, _| false)
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Vertices are `words` (in the given order); `x ~ y` iff `x + y` is in
    /// `connection`. The zero word is dropped from `connection`.
    pub fn difference(words: Vec<Word>, connection: &[Word]) -> Result<Self> {
        let length = words.first().map_or(0, |w| w.len());
        if let Some(w) = words.iter().chain(connection).find(|w| w.len() != length) {
            return Err(Error::LengthMismatch(length, w.len()));
        }
        let connection: Vec<Word> = connection
            .iter()
            .copied()
            .filter(|w| !w.is_zero())
            .collect();
        let table = WordTable::from_words(length, &connection)?;
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.bits(), i as u32))
            .collect();
        Ok(Self {
            n: words.len(),
            edges: Edges::Difference {
                words,
                index,
                connection,
                table,
            },
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Word label of vertex `v` for difference graphs.
    pub fn label(&self, v: usize) -> Option<Word> {
        match &self.edges {
            Edges::Difference { words, .. } => words.get(v).copied(),
            Edges::Dense(_) => None,
        }
    }

    pub fn vertex_of(&self, w: Word) -> Option<usize> {
        match &self.edges {
            Edges::Difference { words, index, .. } => index
                .get(&w.bits())
                .map(|&i| i as usize)
                .filter(|&i| words[i] == w),
            Edges::Dense(_) => None,
        }
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v || u >= self.n || v >= self.n {
            return false;
        }
        match &self.edges {
            Edges::Dense(rows) => rows[u][v / 64] >> (v % 64) & 1 == 1,
            Edges::Difference { words, table, .. } => {
                table.contains_bits(words[u].bits() ^ words[v].bits())
            }
        }
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        match &self.edges {
            Edges::Dense(rows) => {
                let mut out = Vec::new();
                for (b, &blk) in rows[u].iter().enumerate() {
                    let mut x = blk;
                    while x != 0 {
                        out.push(b * 64 + x.trailing_zeros() as usize);
                        x &= x - 1;
                    }
                }
                out
            }
            Edges::Difference {
                words,
                index,
                connection,
                ..
            } => {
                let mut out: Vec<usize> = connection
                    .iter()
                    .filter_map(|s| index.get(&(words[u].bits() ^ s.bits())))
                    .map(|&i| i as usize)
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).len()
    }

    /// Adjacency rows as `u64` masks; only for `n <= 64`.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::GraphTooLarge {
                n: self.n,
                limit: 64,
            });
        }
        Ok((0..self.n)
            .map(|u| self.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << v))
            .collect())
    }

    /// Rows as bitstrings, vertex 0 leftmost.
    pub fn adjacency_bitstrings(&self) -> Vec<String> {
        (0..self.n)
            .map(|u| {
                (0..self.n)
                    .map(|v| if self.adjacent(u, v) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }
}

/// Strong regularity with parameters `(n, k, λ, μ)` by counting common
/// neighbours of every vertex pair.
pub fn verify_srg(g: &BinaryGraph, params: (usize, usize, usize, usize)) -> Certificate {
    let (n, k, lambda, mu) = params;
    let id = "srg";
    let metrics = |c: Certificate| c.metric("parameters", [n, k, lambda, mu]);
    if g.n_vertices() != n {
        return metrics(Certificate::fail(id, json!({"n_vertices": g.n_vertices()})));
    }
    if let Some(u) = (0..n).find(|&u| g.degree(u) != k) {
        return metrics(Certificate::fail(
            id,
            json!({"vertex": u, "degree": g.degree(u)}),
        ));
    }
    let violation = (0..n).into_par_iter().find_map_first(|u| {
        (u + 1..n).find_map(|v| {
            let common = (0..n)
                .filter(|&w| g.adjacent(u, w) && g.adjacent(v, w))
                .count();
            let want = if g.adjacent(u, v) { lambda } else { mu };
            (common != want).then(|| {
                json!({"pair": [u, v], "adjacent": g.adjacent(u, v), "common_neighbors": common})
            })
        })
    });
    metrics(Certificate::from_check(id, violation))
        .metric("pairs_checked", n * (n.saturating_sub(1)) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_basics() {
        let g = BinaryGraph::from_edges(4, &[(0, 1), (1, 2), (2, 2)]).unwrap();
        assert!(g.adjacent(1, 0));
        assert!(!g.adjacent(2, 2));
        assert_eq!(g.neighbors(1), vec![0, 2]);
        assert_eq!(g.edge_count(), 2);
        assert!(BinaryGraph::from_edges(4, &[(0, 4)]).is_err());
    }

    #[test]
    fn complete_graph_is_srg() {
        assert!(verify_srg(&BinaryGraph::complete(4), (4, 3, 2, 0)).passed());
        assert!(!verify_srg(&BinaryGraph::complete(4), (4, 3, 1, 0)).passed());
        assert!(!verify_srg(&BinaryGraph::empty(4), (4, 3, 2, 0)).passed());
    }

    #[test]
    fn five_cycle_is_srg() {
        let g = BinaryGraph::from_fn(5, |u, v| (v - u) % 5 == 1 || (v - u) % 5 == 4);
        assert!(verify_srg(&g, (5, 2, 0, 1)).passed());
    }

    #[test]
    fn difference_graph_on_cube() {
        let words: Vec<Word> = (0..8).map(|b| Word::from_bits(3, b).unwrap()).collect();
        let conn: Vec<Word> = [1, 2, 4, 0]
            .iter()
            .map(|&b| Word::from_bits(3, b).unwrap())
            .collect();
        let g = BinaryGraph::difference(words, &conn).unwrap();
        assert!(g.adjacent(0, 1));
        assert!(!g.adjacent(0, 3));
        assert_eq!(g.neighbors(0), vec![1, 2, 4]);
        assert!(verify_srg(&g, (8, 3, 0, 2)).status == crate::certificate::Status::Fail);
        assert_eq!(g.vertex_of(Word::from_bits(3, 5).unwrap()), Some(5));
        assert_eq!(g.edge_count(), 12);
    }
}
