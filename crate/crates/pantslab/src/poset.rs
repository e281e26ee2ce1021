//! Graded face posets of regular CW complexes.
//!
//! A `FacePoset` stores cells with their dimensions and the covering
//! (codimension-one containment) relation.  Construction validates
//! gradedness: every cover connects dimensions `d` and `d+1`, so the
//! transitive closure of the covers is automatically a partial order.

use crate::label::CellLabel;
use crate::subset::Subset;
use crate::{Error, Result};
use std::collections::HashMap;

#[derive(Clone)]
pub struct FacePoset {
    cells: Vec<(CellLabel, usize)>,
    index: HashMap<CellLabel, usize>,
    /// cofaces one dimension up
    up: Vec<Vec<u32>>,
    /// faces one dimension down
    down: Vec<Vec<u32>>,
    max_dim: usize,
}

impl FacePoset {
    /// Build and validate a poset from cells and covering pairs
    /// `(facet, cell)`.
    pub fn new(
        cells: Vec<(CellLabel, usize)>,
        covers: Vec<(CellLabel, CellLabel)>,
    ) -> Result<Self> {
        let mut cells = cells;
        cells.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let mut index = HashMap::with_capacity(cells.len());
        for (i, (label, _)) in cells.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
        }
        let mut up = vec![Vec::new(); cells.len()];
        let mut down = vec![Vec::new(); cells.len()];
        for (facet, cell) in covers {
            let fi = *index
                .get(&facet)
                .ok_or_else(|| Error::UnknownCell(facet.to_string()))?;
            let ci = *index
                .get(&cell)
                .ok_or_else(|| Error::UnknownCell(cell.to_string()))?;
            let (fd, cd) = (cells[fi].1, cells[ci].1);
            if fd + 1 != cd {
                return Err(Error::NonGraded {
                    facet: facet.to_string(),
                    cell: cell.to_string(),
                    facet_dim: fd,
                    cell_dim: cd,
                });
            }
            up[fi].push(ci as u32);
            down[ci].push(fi as u32);
        }
        for adj in up.iter_mut().chain(down.iter_mut()) {
            adj.sort_unstable();
            adj.dedup();
        }
        let max_dim = cells.iter().map(|c| c.1).max().unwrap_or(0);
        Ok(FacePoset {
            cells,
            index,
            up,
            down,
            max_dim,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn label(&self, i: usize) -> &CellLabel {
        &self.cells[i].0
    }

    pub fn dim(&self, i: usize) -> usize {
        self.cells[i].1
    }

    pub fn index_of(&self, label: &CellLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Cells sorted by (dimension, label).
    pub fn cells(&self) -> &[(CellLabel, usize)] {
        &self.cells
    }

    pub fn cofaces(&self, i: usize) -> &[u32] {
        &self.up[i]
    }

    pub fn facets(&self, i: usize) -> &[u32] {
        &self.down[i]
    }

    /// Covering pairs `(facet, cell)` sorted by labels.
    pub fn cover_pairs(&self) -> Vec<(CellLabel, CellLabel)> {
        let mut out = Vec::new();
        for (ci, _) in self.cells.iter().enumerate() {
            for &fi in &self.down[ci] {
                out.push((self.cells[fi as usize].0.clone(), self.cells[ci].0.clone()));
            }
        }
        out.sort();
        out
    }

    /// Number of cells in each dimension, `0..=max_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        if self.cells.is_empty() {
            return Vec::new();
        }
        let mut f = vec![0usize; self.max_dim + 1];
        for (_, d) in &self.cells {
            f[*d] += 1;
        }
        f
    }

    /// Alternating sum over all cells of `(-1)^dim`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|(_, d)| if d % 2 == 0 { 1i64 } else { -1i64 })
            .sum()
    }

    /// Indices of all cells weakly below `i` (its closure).
    pub fn lower_set(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.cells.len()];
        let mut stack = vec![i];
        seen[i] = true;
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &f in &self.down[x] {
                if !seen[f as usize] {
                    seen[f as usize] = true;
                    stack.push(f as usize);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Indices of all cells weakly above `i`.
    pub fn upper_set(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.cells.len()];
        let mut stack = vec![i];
        seen[i] = true;
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &c in &self.up[x] {
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    stack.push(c as usize);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True iff cell `a` is weakly below cell `b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        if self.dim(a) > self.dim(b) {
            return false;
        }
        self.lower_set(b).binary_search(&a).is_ok()
    }

    /// The same cells with the order reversed; dimensions are flipped to
    /// `max_dim - dim` so the result is again graded.
    pub fn opposite(&self) -> FacePoset {
        let cells = self
            .cells
            .iter()
            .map(|(l, d)| (l.clone(), self.max_dim - d))
            .collect();
        let covers = self
            .cells
            .iter()
            .enumerate()
            .flat_map(|(ci, _)| {
                self.down[ci].iter().map(move |&fi| {
                    (
                        self.cells[ci].0.clone(),
                        self.cells[fi as usize].0.clone(),
                    )
                })
            })
            .collect();
        FacePoset::new(cells, covers).expect("opposite of a graded poset is graded")
    }

    /// Induced subcomplex on the cells where `keep` holds.  Errors with a
    /// witness pair unless the predicate is downward closed.
    pub fn subcomplex<F: Fn(&CellLabel) -> bool>(&self, keep: F) -> Result<FacePoset> {
        let kept: Vec<bool> = self.cells.iter().map(|(l, _)| keep(l)).collect();
        for (ci, _) in self.cells.iter().enumerate() {
            if !kept[ci] {
                continue;
            }
            for &fi in &self.down[ci] {
                if !kept[fi as usize] {
                    return Err(Error::ClosureViolation {
                        cell: self.cells[ci].0.to_string(),
                        facet: self.cells[fi as usize].0.to_string(),
                    });
                }
            }
        }
        self.restrict(&kept)
    }

    /// Induced poset on an arbitrary cell mask (no closure check).
    pub(crate) fn restrict(&self, kept: &[bool]) -> Result<FacePoset> {
        let cells: Vec<_> = self
            .cells
            .iter()
            .enumerate()
            .filter(|(i, _)| kept[*i])
            .map(|(_, c)| c.clone())
            .collect();
        let covers: Vec<_> = self
            .cells
            .iter()
            .enumerate()
            .filter(|(i, _)| kept[*i])
            .flat_map(|(ci, _)| {
                self.down[ci]
                    .iter()
                    .filter(|&&fi| kept[fi as usize])
                    .map(move |&fi| {
                        (
                            self.cells[fi as usize].0.clone(),
                            self.cells[ci].0.clone(),
                        )
                    })
            })
            .collect();
        FacePoset::new(cells, covers)
    }

    /// The strict lower set of a cell as a complex (its boundary).
    pub fn boundary_subposet(&self, i: usize) -> FacePoset {
        let lower = self.lower_set(i);
        let mut kept = vec![false; self.cells.len()];
        for &x in &lower {
            kept[x] = true;
        }
        kept[i] = false;
        self.restrict(&kept)
            .expect("a lower set is downward closed")
    }

    /// Every maximal chain steps through one dimension at a time and the
    /// diamond property holds: any codimension-2 face of a cell lies below
    /// exactly two intermediate cells.  Returns a witness string on failure.
    pub fn check_diamond_property(&self) -> std::result::Result<(), String> {
        for (ci, _) in self.cells.iter().enumerate() {
            let mut counts: HashMap<u32, usize> = HashMap::new();
            for &fi in &self.down[ci] {
                for &gi in &self.down[fi as usize] {
                    *counts.entry(gi).or_insert(0) += 1;
                }
            }
            for (gi, cnt) in counts {
                if cnt != 2 {
                    return Err(format!(
                        "cell {} has codim-2 face {} reachable through {} facets",
                        self.cells[ci].0, self.cells[gi as usize].0, cnt
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The dualizing subdivision of the simplex on vertex set `j`: cells are
/// pairs of subsets `min <= max <= j` with non-empty `min`, of dimension
/// `|max \ min|`; the facets of a cell grow `min` or shrink `max` by one
/// element.
pub fn dsd_simplex(j: Subset) -> Result<FacePoset> {
    if j.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut cells = Vec::new();
    let mut covers = Vec::new();
    for max in j.subsets_nonempty() {
        for min in max.subsets_nonempty() {
            let dim = max.minus(min).len() as usize;
            let label = CellLabel::Dsd { min, max };
            cells.push((label.clone(), dim));
            for x in max.minus(min).iter() {
                covers.push((
                    CellLabel::Dsd {
                        min: min.with(x),
                        max,
                    },
                    label.clone(),
                ));
                covers.push((
                    CellLabel::Dsd {
                        min,
                        max: max.without(x),
                    },
                    label.clone(),
                ));
            }
        }
    }
    FacePoset::new(cells, covers)
}

/// Product complex: cells are label pairs with additive dimension; facets
/// pair a facet of one factor with the identity on the other.
pub fn product(a: &FacePoset, b: &FacePoset) -> FacePoset {
    let mut cells = Vec::with_capacity(a.len() * b.len());
    let mut covers = Vec::new();
    for (ai, (al, ad)) in a.cells().iter().enumerate() {
        for (bi, (bl, bd)) in b.cells().iter().enumerate() {
            let label = CellLabel::product(al.clone(), bl.clone());
            cells.push((label.clone(), ad + bd));
            for &af in a.facets(ai) {
                covers.push((
                    CellLabel::product(a.label(af as usize).clone(), bl.clone()),
                    label.clone(),
                ));
            }
            for &bf in b.facets(bi) {
                covers.push((
                    CellLabel::product(al.clone(), b.label(bf as usize).clone()),
                    label.clone(),
                ));
            }
        }
    }
    FacePoset::new(cells, covers).expect("product of graded posets is graded")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn interval() -> FacePoset {
        // two vertices, one edge
        let v0 = CellLabel::Plain(Subset::singleton(0));
        let v1 = CellLabel::Plain(Subset::singleton(1));
        let e = CellLabel::Plain([0u32, 1].into_iter().collect());
        FacePoset::new(
            vec![(v0.clone(), 0), (v1.clone(), 0), (e.clone(), 1)],
            vec![(v0, e.clone()), (v1, e)],
        )
        .unwrap()
    }

    pub(crate) fn cycle_graph(k: u32) -> FacePoset {
        let mut cells = Vec::new();
        let mut covers = Vec::new();
        for i in 0..k {
            cells.push((CellLabel::Opaque(format!("v{i}")), 0));
            cells.push((CellLabel::Opaque(format!("e{i}")), 1));
            covers.push((
                CellLabel::Opaque(format!("v{i}")),
                CellLabel::Opaque(format!("e{i}")),
            ));
            covers.push((
                CellLabel::Opaque(format!("v{}", (i + 1) % k)),
                CellLabel::Opaque(format!("e{i}")),
            ));
        }
        FacePoset::new(cells, covers).unwrap()
    }

    #[test]
    fn dsd_of_an_edge_has_five_cells() {
        let p = dsd_simplex([0u32, 1].into_iter().collect()).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.f_vector(), vec![3, 2]);
        assert_eq!(p.euler_characteristic(), 1);
    }

    #[test]
    fn dsd_of_a_point_is_a_point() {
        let p = dsd_simplex(Subset::singleton(2)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.max_dim(), 0);
        assert!(dsd_simplex(Subset::EMPTY).is_err());
    }

    #[test]
    fn dsd_cell_count_identity() {
        // 3^(n+1) - 2^(n+1) cells on the full simplex
        for n in 1..=6u32 {
            let p = dsd_simplex(Subset::full(n + 1)).unwrap();
            assert_eq!(p.len() as u64, 3u64.pow(n + 1) - 2u64.pow(n + 1));
            assert_eq!(p.euler_characteristic(), 1);
        }
    }

    #[test]
    fn dsd_is_graded_with_diamonds() {
        let p = dsd_simplex(Subset::full(4)).unwrap();
        p.check_diamond_property().unwrap();
    }

    #[test]
    fn product_point_is_identity_shape() {
        let pt = dsd_simplex(Subset::singleton(0)).unwrap();
        let c = cycle_graph(5);
        let prod = product(&pt, &c);
        assert_eq!(prod.len(), c.len());
        assert_eq!(prod.f_vector(), c.f_vector());
        assert_eq!(prod.euler_characteristic(), c.euler_characteristic());
    }

    #[test]
    fn product_of_intervals_is_a_square() {
        let i = interval();
        let sq = product(&i, &i);
        assert_eq!(sq.len(), 9);
        assert_eq!(sq.f_vector(), vec![4, 4, 1]);
        assert_eq!(sq.euler_characteristic(), 1);
    }

    #[test]
    fn product_of_dsd_edges() {
        let d = dsd_simplex([0u32, 1].into_iter().collect()).unwrap();
        let p = product(&d, &d);
        assert_eq!(p.len(), 25);
        assert_eq!(p.euler_characteristic(), 1);
    }

    #[test]
    fn subcomplex_identity_and_vertices() {
        let p = dsd_simplex(Subset::full(3)).unwrap();
        let all = p.subcomplex(|_| true).unwrap();
        assert_eq!(all.len(), p.len());
        let verts = p
            .subcomplex(|l| match l {
                CellLabel::Dsd { min, max } => min == max,
                _ => false,
            })
            .unwrap();
        assert_eq!(verts.max_dim(), 0);
        assert_eq!(verts.euler_characteristic(), verts.len() as i64);
    }

    #[test]
    fn subcomplex_rejects_non_closed_predicates() {
        let p = dsd_simplex(Subset::full(2)).unwrap();
        let err = p.subcomplex(|l| match l {
            CellLabel::Dsd { min, max } => max.minus(*min).len() == 1,
            _ => false,
        });
        assert!(matches!(err, Err(Error::ClosureViolation { .. })));
    }

    #[test]
    fn boundary_of_simplex_euler() {
        // boundary of the d-simplex: chi = 1 + (-1)^(d-1)
        for d in 1..=5u32 {
            let full = Subset::full(d + 1);
            let mut cells = Vec::new();
            let mut covers = Vec::new();
            for s in full.subsets_nonempty() {
                if s == full {
                    continue;
                }
                cells.push((CellLabel::Plain(s), (s.len() - 1) as usize));
                for x in s.iter() {
                    if s.len() >= 2 {
                        covers.push((CellLabel::Plain(s.without(x)), CellLabel::Plain(s)));
                    }
                }
            }
            let p = FacePoset::new(cells, covers).unwrap();
            let expected = 1 + if (d - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.euler_characteristic(), expected as i64);
        }
    }

    #[test]
    fn gradedness_is_enforced() {
        let v = CellLabel::Opaque("v".into());
        let f = CellLabel::Opaque("f".into());
        let err = FacePoset::new(
            vec![(v.clone(), 0), (f.clone(), 2)],
            vec![(v, f)],
        );
        assert!(matches!(err, Err(Error::NonGraded { .. })));
    }

    #[test]
    fn posets_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FacePoset>();
        assert_send_sync::<CellLabel>();
    }

    #[test]
    fn opposite_flips_covers_and_dims() {
        let i = interval();
        let o = i.opposite();
        assert_eq!(o.f_vector(), vec![1, 2]);
        let e = o.index_of(&CellLabel::Plain([0u32, 1].into_iter().collect())).unwrap();
        assert_eq!(o.dim(e), 0);
        assert_eq!(o.cofaces(e).len(), 2);
    }
}
