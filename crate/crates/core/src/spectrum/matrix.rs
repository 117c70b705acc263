use crate::adjacency::Adjacency;
use crate::error::{Error, Result};

/// Dense square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidIndex(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        Ok(IntMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        IntMatrix { n, data }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    /// `A − λI` as a flat row-major vector.
    pub fn shifted(&self, lambda: i64) -> Vec<i64> {
        let mut out = self.data.clone();
        for i in 0..self.n {
            out[i * self.n + i] -= lambda;
        }
        out
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    /// Largest absolute row sum, a bound on every eigenvalue's modulus.
    pub fn max_abs_row_sum(&self) -> i64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

impl From<&Adjacency> for IntMatrix {
    fn from(adj: &Adjacency) -> Self {
        IntMatrix::from_fn(adj.vertex_count(), |u, v| i64::from(adj.get(u, v)))
    }
}
