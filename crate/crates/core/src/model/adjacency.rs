use super::params::SamplerMode;
use crate::error::{Error, Result};

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of (i, j), i < j, in the row-major strict upper triangle.
#[inline]
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Zero-diagonal symmetric 0/1 adjacency, stored as the bit-packed strict
/// upper triangle together with how it was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencySample {
    n: usize,
    bits: Vec<u64>,
    p: f64,
    mode: SamplerMode,
    seed: u64,
}

impl AdjacencySample {
    pub fn empty(n: usize, p: f64, mode: SamplerMode, seed: u64) -> Self {
        Self { n, bits: vec![0; pair_count(n).div_ceil(64)], p, mode, seed }
    }

    pub fn complete(n: usize, p: f64, mode: SamplerMode, seed: u64) -> Self {
        let mut g = Self::empty(n, p, mode, seed);
        for k in 0..pair_count(n) {
            g.bits[k / 64] |= 1 << (k % 64);
        }
        g
    }

    pub fn from_edges(n: usize, p: f64, mode: SamplerMode, seed: u64, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n, p, mode, seed);
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::Format(format!("invalid edge ({a}, {b}) for n = {n}")));
            }
            g.set(a.min(b), a.max(b), true);
        }
        Ok(g)
    }

    pub(crate) fn set_pair(&mut self, k: usize, on: bool) {
        if on {
            self.bits[k / 64] |= 1 << (k % 64);
        } else {
            self.bits[k / 64] &= !(1 << (k % 64));
        }
    }

    pub fn set(&mut self, i: usize, j: usize, on: bool) {
        let (i, j) = (i.min(j), i.max(j));
        self.set_pair(pair_index(i, j, self.n), on);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mode(&self) -> SamplerMode {
        self.mode
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn has_pair(&self, k: usize) -> bool {
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// a_{i,j}; false on the diagonal.
    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (i, j) = (i.min(j), i.max(j));
        self.has_pair(pair_index(i, j, self.n))
    }

    /// ā_{i,j} = a_{i,j} − p; zero on the diagonal.
    #[inline]
    pub fn centered(&self, i: usize, j: usize, p: f64) -> f64 {
        if i == j {
            0.0
        } else if self.has_edge(i, j) {
            1.0 - p
        } else {
            -p
        }
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edges (i, j), i < j, in pair order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_pair(pair_index(i, j, self.n)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Full symmetric neighbourhood bitsets, one row of ⌈n/64⌉ words per vertex.
    pub fn neighbor_rows(&self) -> NeighborRows {
        let words = self.n.div_ceil(64).max(1);
        let mut rows = vec![0u64; self.n * words];
        for (i, j) in self.edges() {
            rows[i * words + j / 64] |= 1 << (j % 64);
            rows[j * words + i / 64] |= 1 << (i % 64);
        }
        NeighborRows { words, rows }
    }
}

pub struct NeighborRows {
    words: usize,
    rows: Vec<u64>,
}

impl NeighborRows {
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.row(i).iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn common(&self, i: usize, j: usize) -> u64 {
        self.row(i).iter().zip(self.row(j)).map(|(a, b)| (a & b).count_ones() as u64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pair_index_is_dense_row_major() {
        let n = 9;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(pair_index(i, j, n), k);
                k += 1;
            }
        }
        assert_eq!(k, pair_count(n));
    }

    #[test]
    fn symmetric_zero_diagonal() {
        let g = AdjacencySample::from_edges(4, 0.5, SamplerMode::Er, 0, &[(2, 1), (0, 3)]).unwrap();
        assert!(g.has_edge(1, 2) && g.has_edge(2, 1));
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(2, 2));
        assert_eq!(g.centered(2, 2, 0.5), 0.0);
        assert_eq!(g.centered(0, 1, 0.3), -0.3);
        assert_eq!(g.edges(), vec![(0, 3), (1, 2)]);
        assert_eq!(g.bits().len(), 1);
    }

    #[test]
    fn invalid_edges() {
        assert!(AdjacencySample::from_edges(3, 0.5, SamplerMode::Er, 0, &[(1, 1)]).is_err());
        assert!(AdjacencySample::from_edges(3, 0.5, SamplerMode::Er, 0, &[(0, 3)]).is_err());
    }

    #[test]
    fn complete_graph_counts() {
        for n in [1usize, 2, 11, 64, 65, 130] {
            let g = AdjacencySample::complete(n, 1.0, SamplerMode::Er, 0);
            assert_eq!(g.edge_count(), pair_count(n));
            let rows = g.neighbor_rows();
            for i in 0..n {
                assert_eq!(rows.degree(i), (n - 1) as u64);
            }
        }
    }

    proptest! {
        #[test]
        fn edges_round_trip(n in 2usize..40, raw in proptest::collection::vec((0usize..40, 0usize..40), 0..80)) {
            let edges: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
            let g = AdjacencySample::from_edges(n, 0.5, SamplerMode::Er, 1, &edges).unwrap();
            let h = AdjacencySample::from_edges(n, 0.5, SamplerMode::Er, 1, &g.edges()).unwrap();
            prop_assert_eq!(&g, &h);
            for (a, b) in edges {
                prop_assert!(g.has_edge(a, b) && g.has_edge(b, a));
            }
        }
    }
}
