//! Dense 0/1 adjacency matrices stored as packed bit rows.

use std::collections::VecDeque;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    vertices: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Adjacency {
    pub fn empty(vertices: usize) -> Self {
        let words_per_row = vertices.div_ceil(64);
        Adjacency {
            vertices,
            words_per_row,
            bits: vec![0; vertices * words_per_row],
        }
    }

    pub fn from_fn(vertices: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = Adjacency::empty(vertices);
        for u in 0..vertices {
            for v in 0..vertices {
                if f(u, v) {
                    adj.set(u, v, true);
                }
            }
        }
        adj
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn set(&mut self, u: usize, v: usize, value: bool) {
        let word = &mut self.bits[u * self.words_per_row + v / 64];
        if value {
            *word |= 1 << (v % 64);
        } else {
            *word &= !(1 << (v % 64));
        }
    }

    /// Flips the edge `{u, v}` in both directions.
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        let present = self.get(u, v);
        self.set(u, v, !present);
        self.set(v, u, !present);
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words_per_row..(u + 1) * self.words_per_row]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices).filter(move |&v| self.get(u, v))
    }

    /// `|N(u) ∩ N(v)|`
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertices).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.vertices == 0 {
            0
        } else {
            self.degree(0)
        };
        (0..self.vertices).all(|u| self.degree(u) == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertices)
            .map(|u| self.degree(u))
            .max()
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.vertices).all(|u| (u + 1..self.vertices).all(|v| self.get(u, v) == self.get(v, u)))
    }

    pub fn has_loops(&self) -> bool {
        (0..self.vertices).any(|u| self.get(u, u))
    }

    /// True when no position is set in both matrices.
    pub fn is_disjoint(&self, other: &Adjacency) -> bool {
        assert_eq!(self.vertices, other.vertices);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Adjacency) -> Adjacency {
        assert_eq!(self.vertices, other.vertices);
        Adjacency {
            vertices: self.vertices,
            words_per_row: self.words_per_row,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Breadth-first reachability from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.vertices
    }

    /// Relabels vertices: entry `(map[u], map[v])` of the result equals
    /// entry `(u, v)` of `self`. `map` must be a permutation.
    pub fn permuted(&self, map: &[usize]) -> Adjacency {
        let mut out = Adjacency::empty(self.vertices);
        for u in 0..self.vertices {
            for v in self.neighbors(u) {
                out.set(map[u], map[v], true);
            }
        }
        out
    }

    /// One line per vertex of `0`/`1` characters.
    pub fn to_bit_lines(&self) -> String {
        let mut out = String::with_capacity(self.vertices * (self.vertices + 1));
        for u in 0..self.vertices {
            for v in 0..self.vertices {
                out.push(if self.get(u, v) { '1' } else { '0' });
            }
            let _ = writeln!(out);
        }
        out
    }
}

/// Box product `A □ B` on pairs `(a, b)` indexed `a·|B| + b`.
pub fn cartesian_product(a: &Adjacency, b: &Adjacency) -> Adjacency {
    let nb = b.vertex_count();
    Adjacency::from_fn(a.vertex_count() * nb, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        (xa == ya && b.get(xb, yb)) || (xb == yb && a.get(xa, ya))
    })
}
