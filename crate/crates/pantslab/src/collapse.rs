//! Elementary collapses of face posets.
//!
//! A free pair is a cell `f` together with its unique strict coface `c`;
//! removing both preserves the homotopy type.  With gradedness this is
//! equivalent to: `f` has exactly one coface `c` in the covering relation and
//! `c` is maximal.

use crate::label::CellLabel;
use crate::poset::FacePoset;
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::collections::HashSet;

/// Mutable view of a poset during a collapse run.
struct Arena<'a> {
    p: &'a FacePoset,
    alive: Vec<bool>,
    up_alive: Vec<u32>,
    n_alive: usize,
}

impl<'a> Arena<'a> {
    fn new(p: &'a FacePoset) -> Self {
        let up_alive = (0..p.len()).map(|i| p.cofaces(i).len() as u32).collect();
        Arena {
            p,
            alive: vec![true; p.len()],
            up_alive,
            n_alive: p.len(),
        }
    }

    fn alive_cofaces(&self, i: usize) -> Vec<usize> {
        self.p
            .cofaces(i)
            .iter()
            .map(|&c| c as usize)
            .filter(|&c| self.alive[c])
            .collect()
    }

    /// `(f, c)` is free: `f`'s only living coface is `c` and `c` is maximal.
    fn is_free(&self, f: usize, c: usize) -> bool {
        self.alive[f]
            && self.alive[c]
            && self.up_alive[f] == 1
            && self.up_alive[c] == 0
            && self.alive_cofaces(f) == vec![c]
    }

    fn remove(&mut self, i: usize) {
        debug_assert!(self.alive[i]);
        self.alive[i] = false;
        self.n_alive -= 1;
        for &d in self.p.facets(i) {
            self.up_alive[d as usize] -= 1;
        }
    }

    fn remove_pair(&mut self, f: usize, c: usize) {
        self.remove(c);
        self.remove(f);
    }

    /// Free face candidates among the living down-neighborhood of a removed
    /// pair; cheap superset, revalidated on pop.
    fn finish(self) -> Result<FacePoset> {
        self.p.restrict(&self.alive)
    }
}

/// How to collapse.
pub enum CollapseMode {
    /// Repeatedly remove the free pair with the lexicographically smallest
    /// free-face label until no free pair remains.
    Greedy,
    /// Execute exactly these `(free face, coface)` pairs in order; errors if a
    /// scheduled pair is not free at its turn.
    Schedule(Vec<(CellLabel, CellLabel)>),
}

/// Result of a collapse run: the surviving poset and the executed trace.
pub struct CollapseOutcome {
    pub poset: FacePoset,
    pub removed: Vec<(CellLabel, CellLabel)>,
}

/// Collapse `p` by elementary collapses.
pub fn collapse(p: &FacePoset, mode: CollapseMode) -> Result<CollapseOutcome> {
    match mode {
        CollapseMode::Schedule(pairs) => {
            let mut arena = Arena::new(p);
            let mut removed = Vec::with_capacity(pairs.len());
            for (face, coface) in pairs {
                let f = p
                    .index_of(&face)
                    .ok_or_else(|| Error::UnknownCell(face.to_string()))?;
                let c = p
                    .index_of(&coface)
                    .ok_or_else(|| Error::UnknownCell(coface.to_string()))?;
                if !arena.is_free(f, c) {
                    return Err(Error::CollapseViolation {
                        face: face.to_string(),
                        coface: coface.to_string(),
                        actual: arena
                            .alive_cofaces(f)
                            .into_iter()
                            .map(|i| p.label(i).to_string())
                            .collect(),
                    });
                }
                arena.remove_pair(f, c);
                removed.push((face, coface));
            }
            Ok(CollapseOutcome {
                poset: arena.finish()?,
                removed,
            })
        }
        CollapseMode::Greedy => {
            let mut arena = Arena::new(p);
            let mut removed = Vec::new();
            // candidate free faces keyed by label order; revalidated on pop
            let mut queue: BTreeSet<(&CellLabel, usize)> = (0..p.len())
                .filter(|&i| arena.up_alive[i] == 1)
                .map(|i| (p.label(i), i))
                .collect();
            while let Some((_, f)) = queue.pop_first() {
                if !arena.alive[f] || arena.up_alive[f] != 1 {
                    continue;
                }
                let c = arena.alive_cofaces(f)[0];
                if arena.up_alive[c] != 0 {
                    continue;
                }
                arena.remove_pair(f, c);
                removed.push((p.label(f).clone(), p.label(c).clone()));
                // removing the pair can free a facet y directly (coface count
                // dropped to one) or make y maximal, in which case y's own
                // facets with a single coface left become free
                for &y in p.facets(f).iter().chain(p.facets(c).iter()) {
                    let y = y as usize;
                    if !arena.alive[y] {
                        continue;
                    }
                    match arena.up_alive[y] {
                        1 => {
                            queue.insert((p.label(y), y));
                        }
                        0 => {
                            for &x in p.facets(y) {
                                let x = x as usize;
                                if arena.alive[x] && arena.up_alive[x] == 1 {
                                    queue.insert((p.label(x), x));
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
            Ok(CollapseOutcome {
                poset: arena.finish()?,
                removed,
            })
        }
    }
}

/// Default cell-count bound below which `is_collapsible_to_point` tries
/// backtracking when the greedy run gets stuck.
pub const DEFAULT_BACKTRACK_BOUND: usize = 2000;

/// True iff the complex collapses to a single vertex.  Greedy first; for
/// complexes with at most `backtrack_bound` cells a backtracking search (with
/// a visited-state memo and a node budget) tries alternative collapse orders
/// when the greedy run gets stuck.
pub fn is_collapsible_to_point(p: &FacePoset, backtrack_bound: usize) -> bool {
    if p.len() == 1 {
        return true;
    }
    let greedy = collapse(p, CollapseMode::Greedy).expect("greedy collapse cannot fail");
    if greedy.poset.len() == 1 {
        return true;
    }
    if p.len() > backtrack_bound {
        return false;
    }
    let mut arena = Arena::new(p);
    let mut visited: HashSet<Vec<u64>> = HashSet::new();
    let mut budget: usize = 200_000;
    fn state_key(alive: &[bool]) -> Vec<u64> {
        let mut key = vec![0u64; alive.len().div_ceil(64)];
        for (i, &a) in alive.iter().enumerate() {
            if a {
                key[i / 64] |= 1 << (i % 64);
            }
        }
        key
    }
    fn dfs(arena: &mut Arena, visited: &mut HashSet<Vec<u64>>, budget: &mut usize) -> bool {
        if arena.n_alive == 1 {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if !visited.insert(state_key(&arena.alive)) {
            return false;
        }
        let free: Vec<(usize, usize)> = (0..arena.p.len())
            .filter(|&f| arena.alive[f] && arena.up_alive[f] == 1)
            .filter_map(|f| {
                let c = arena.alive_cofaces(f)[0];
                (arena.up_alive[c] == 0).then_some((f, c))
            })
            .collect();
        for (f, c) in free {
            arena.remove_pair(f, c);
            let ok = dfs(arena, visited, budget);
            // undo
            arena.alive[f] = true;
            arena.alive[c] = true;
            arena.n_alive += 2;
            for &d in arena.p.facets(f) {
                arena.up_alive[d as usize] += 1;
            }
            for &d in arena.p.facets(c) {
                arena.up_alive[d as usize] += 1;
            }
            if ok {
                return true;
            }
        }
        false
    }
    dfs(&mut arena, &mut visited, &mut budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_z2;
    use crate::poset::dsd_simplex;
    use crate::subset::Subset;

    fn cycle(k: u32) -> FacePoset {
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
    fn single_edge_collapses_to_a_vertex() {
        let v0 = CellLabel::Opaque("v0".into());
        let v1 = CellLabel::Opaque("v1".into());
        let e = CellLabel::Opaque("e".into());
        let p = FacePoset::new(
            vec![(v0.clone(), 0), (v1.clone(), 0), (e.clone(), 1)],
            vec![(v0.clone(), e.clone()), (v1, e.clone())],
        )
        .unwrap();
        let out = collapse(&p, CollapseMode::Schedule(vec![(v0, e)])).unwrap();
        assert_eq!(out.poset.len(), 1);
        assert_eq!(out.poset.label(0).to_string(), "v1");
    }

    #[test]
    fn scheduled_pair_must_be_free() {
        let p = cycle(3);
        let err = collapse(
            &p,
            CollapseMode::Schedule(vec![(
                CellLabel::Opaque("v0".into()),
                CellLabel::Opaque("e0".into()),
            )]),
        );
        assert!(matches!(err, Err(Error::CollapseViolation { .. })));
    }

    #[test]
    fn dsd_simplices_collapse_greedily_to_a_point() {
        for n in 1..=4u32 {
            let p = dsd_simplex(Subset::full(n + 1)).unwrap();
            let out = collapse(&p, CollapseMode::Greedy).unwrap();
            assert_eq!(out.poset.len(), 1, "n={n}");
            assert!(is_collapsible_to_point(&p, 2000));
        }
    }

    #[test]
    fn circle_has_no_free_pairs() {
        let p = cycle(6);
        let out = collapse(&p, CollapseMode::Greedy).unwrap();
        assert_eq!(out.poset.len(), p.len());
        assert!(out.removed.is_empty());
        assert!(!is_collapsible_to_point(&p, 2000));
    }

    #[test]
    fn point_is_collapsible() {
        let p = FacePoset::new(vec![(CellLabel::Opaque("v".into()), 0)], vec![]).unwrap();
        assert!(is_collapsible_to_point(&p, 2000));
    }

    #[test]
    fn euler_and_homology_invariant_under_collapse() {
        let p = dsd_simplex(Subset::full(4)).unwrap();
        let before_chi = p.euler_characteristic();
        let before_h = homology_z2(&p);
        let out = collapse(&p, CollapseMode::Greedy).unwrap();
        assert_eq!(out.poset.euler_characteristic(), before_chi);
        let mut after_h = homology_z2(&out.poset);
        after_h.resize(before_h.len(), 0);
        assert_eq!(after_h, before_h);
    }
}
