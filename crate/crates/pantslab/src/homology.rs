//! Cellular homology over the two-element field.
//!
//! For a regular CW complex the boundary matrix entry of a (facet, cell) pair
//! is 1, so the chain complex can be read straight off the covering relation.
//! Ranks come from bitset Gaussian elimination.

use crate::label::CellLabel;
use crate::poset::FacePoset;

/// Dense matrix over GF(2), rows stored as 64-bit blocks.
#[derive(Clone)]
pub struct Z2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl Z2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Z2Matrix {
            rows,
            cols,
            data: vec![vec![0u64; words]; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r][c / 64] ^= 1u64 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r][c / 64] >> (c % 64) & 1 == 1
    }

    /// Rank by row elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let mut rank = 0;
        let words = self.cols.div_ceil(64);
        for col in 0..self.cols {
            let (w, b) = (col / 64, col % 64);
            let pivot = (rank..m.len()).find(|&r| m[r][w] >> b & 1 == 1);
            let Some(p) = pivot else { continue };
            m.swap(rank, p);
            let (head, tail) = m.split_at_mut(rank + 1);
            let prow = &head[rank];
            for row in tail.iter_mut() {
                if row[w] >> b & 1 == 1 {
                    for k in 0..words {
                        row[k] ^= prow[k];
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Z2Matrix) -> Z2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Z2Matrix::zero(self.rows, other.cols);
        let words = other.cols.div_ceil(64);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    for k in 0..words {
                        out.data[r][k] ^= other.data[c][k];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|row| row.iter().all(|&w| w == 0))
    }
}

/// Betti numbers over GF(2), indexed by homological degree.
pub type BettiVector = Vec<usize>;

/// Boundary matrix from `d`-cells (columns) to `(d-1)`-cells (rows).
pub fn boundary_matrix(p: &FacePoset, d: usize) -> Z2Matrix {
    let lower: Vec<usize> = (0..p.len()).filter(|&i| p.dim(i) == d - 1).collect();
    let upper: Vec<usize> = (0..p.len()).filter(|&i| p.dim(i) == d).collect();
    let row_of: std::collections::HashMap<usize, usize> =
        lower.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    let mut m = Z2Matrix::zero(lower.len(), upper.len());
    for (c, &ci) in upper.iter().enumerate() {
        for &fi in p.facets(ci) {
            m.set(row_of[&(fi as usize)], c);
        }
    }
    m
}

/// Betti numbers of the complex over GF(2).
pub fn homology_z2(p: &FacePoset) -> BettiVector {
    if p.is_empty() {
        return Vec::new();
    }
    let maxd = p.max_dim();
    let f = p.f_vector();
    let mut ranks = vec![0usize; maxd + 2];
    for d in 1..=maxd {
        ranks[d] = boundary_matrix(p, d).rank();
    }
    (0..=maxd).map(|d| f[d] - ranks[d] - ranks[d + 1]).collect()
}

/// Checks that consecutive boundary maps compose to zero.
pub fn boundary_squares_to_zero(p: &FacePoset) -> bool {
    let maxd = p.max_dim();
    for d in 2..=maxd {
        if !boundary_matrix(p, d - 1).mul(&boundary_matrix(p, d)).is_zero() {
            return false;
        }
    }
    true
}

/// The order complex of a poset: one simplex per chain, labeled by the sorted
/// cell indices of the input.  Always a simplicial complex, so its cellular
/// homology is the simplicial homology of the barycentric subdivision.
pub fn order_complex(p: &FacePoset) -> FacePoset {
    // chains are built by extending chains ending at each cell
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut ending_at: Vec<Vec<usize>> = vec![Vec::new(); p.len()]; // chain ids
    // cells are sorted by dimension, so faces precede cofaces
    for i in 0..p.len() {
        let mut new_ids = vec![chains.len()];
        chains.push(vec![i]);
        // strict lower set of i, excluding i
        for &j in p.lower_set(i).iter() {
            if j == i {
                continue;
            }
            for &cid in ending_at[j].clone().iter() {
                let mut ext = chains[cid].clone();
                ext.push(i);
                new_ids.push(chains.len());
                chains.push(ext);
            }
        }
        ending_at[i] = new_ids;
    }
    let chain_label = |c: &[usize]| {
        CellLabel::Opaque(
            c.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("."),
        )
    };
    let mut cells = Vec::with_capacity(chains.len());
    let mut covers = Vec::new();
    for c in &chains {
        cells.push((chain_label(c), c.len() - 1));
        if c.len() >= 2 {
            for drop in 0..c.len() {
                let mut sub = c.clone();
                sub.remove(drop);
                covers.push((chain_label(&sub), chain_label(c)));
            }
        }
    }
    FacePoset::new(cells, covers).expect("order complex is graded")
}
