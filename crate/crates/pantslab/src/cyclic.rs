//! Cyclic partitions, refinement, the divides/interlacing predicates, and the
//! graphical code on an `(n+1)`-gon.
//!
//! A cyclic partition `<I_1,...,I_k>` of `{0,...,n}` is a sequence of disjoint
//! non-empty parts covering the ground set, read cyclically.  The canonical
//! representative rotates the part containing the smallest ground element to
//! the front; reflections are *not* quotiented (the two cyclic orders of three
//! elements are distinct objects).

use crate::subset::Subset;
use crate::{Error, Result};
use std::fmt;

/// Cyclic partition in canonical rotation (part containing the minimum ground
/// element first).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicPartition {
    parts: Vec<Subset>,
}

impl CyclicPartition {
    /// Canonicalize a sequence of parts.  Errors unless the parts disjointly
    /// cover `ground`.
    pub fn new(parts: Vec<Subset>, ground: Subset) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::MalformedPartition("no parts".into()));
        }
        let mut seen = Subset::EMPTY;
        for p in &parts {
            if p.is_empty() {
                return Err(Error::MalformedPartition("empty part".into()));
            }
            if seen.meets(*p) {
                return Err(Error::MalformedPartition(format!("overlap at part {p}")));
            }
            seen = seen.union(*p);
        }
        if seen != ground {
            return Err(Error::MalformedPartition(format!(
                "parts cover {seen}, expected {ground}"
            )));
        }
        Ok(Self::rotate_canonical(parts))
    }

    fn rotate_canonical(parts: Vec<Subset>) -> Self {
        let anchor = parts
            .iter()
            .map(|p| p.min_elem().unwrap())
            .min()
            .unwrap();
        let pos = parts.iter().position(|p| p.contains(anchor)).unwrap();
        let mut rotated = Vec::with_capacity(parts.len());
        rotated.extend_from_slice(&parts[pos..]);
        rotated.extend_from_slice(&parts[..pos]);
        CyclicPartition { parts: rotated }
    }

    /// Full cyclic order with singleton parts, in the listed sequence.
    pub fn from_order(order: &[u32]) -> Self {
        Self::rotate_canonical(order.iter().map(|&e| Subset::singleton(e)).collect())
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn ground(&self) -> Subset {
        self.parts
            .iter()
            .fold(Subset::EMPTY, |acc, p| acc.union(*p))
    }

    /// Index of the part containing `e`.
    pub fn part_of(&self, e: u32) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(e))
    }

    /// True iff `self` refines `coarse`: `coarse` is obtained from `self` by
    /// merging cyclically consecutive parts (respecting the cyclic order).
    pub fn refines(&self, coarse: &CyclicPartition) -> bool {
        if self.ground() != coarse.ground() {
            return false;
        }
        let k = self.parts.len();
        let m = coarse.parts.len();
        if m > k {
            return false;
        }
        // map each fine part to the coarse part containing it
        let mut assign = Vec::with_capacity(k);
        for p in &self.parts {
            match coarse.parts.iter().position(|c| p.is_subset_of(*c)) {
                Some(j) => assign.push(j),
                None => return false,
            }
        }
        // the cyclic word `assign` must consist of m blocks of equal values,
        // reading off a rotation of 0,1,...,m-1
        let mut blocks = Vec::new();
        for &a in &assign {
            if blocks.last() != Some(&a) {
                blocks.push(a);
            }
        }
        if blocks.len() > 1 && blocks.first() == blocks.last() {
            blocks.pop();
        }
        if blocks.len() != m {
            return false;
        }
        let start = blocks[0];
        (0..m).all(|i| blocks[i] == (start + i) % m)
    }

    /// True iff `j` meets at least two distinct parts.
    pub fn divides(&self, j: Subset) -> bool {
        let mut hit = 0;
        for p in &self.parts {
            if p.meets(j) {
                hit += 1;
                if hit >= 2 {
                    return true;
                }
            }
        }
        false
    }

    /// The `k` linear orderings of the parts obtained by choosing each part as
    /// the first one.
    pub fn decyclizations(&self) -> Vec<Vec<Subset>> {
        let k = self.parts.len();
        (0..k)
            .map(|t| {
                let mut v = Vec::with_capacity(k);
                v.extend_from_slice(&self.parts[t..]);
                v.extend_from_slice(&self.parts[..t]);
                v
            })
            .collect()
    }

    /// All coarsenings `sigma' <= self` with at least `min_parts` parts
    /// (including `self`), canonical, sorted.
    pub fn coarsenings(&self, min_parts: usize) -> Vec<CyclicPartition> {
        let k = self.parts.len();
        let mut out = Vec::new();
        if min_parts <= 1 {
            out.push(CyclicPartition {
                parts: vec![self.ground()],
            });
        }
        // choose surviving boundaries; boundary i sits after part i
        for b in Subset::full(k as u32).subsets() {
            let cnt = b.len() as usize;
            if cnt < min_parts.max(2) || cnt > k {
                continue;
            }
            out.push(self.merge_keeping_boundaries(b));
        }
        out.sort();
        out.dedup();
        out
    }

    /// Merge parts so that exactly the boundaries in `b` survive (boundary `i`
    /// separates part `i` from part `i+1`).  Needs `|b| >= 2`.
    pub fn merge_keeping_boundaries(&self, b: Subset) -> CyclicPartition {
        let k = self.parts.len() as u32;
        debug_assert!(b.len() >= 2 && b.is_subset_of(Subset::full(k)));
        let bs: Vec<u32> = b.iter().collect();
        let mut parts = Vec::with_capacity(bs.len());
        for w in 0..bs.len() {
            let lo = bs[w];
            let hi = bs[(w + 1) % bs.len()];
            // new part = old parts lo+1 ..= hi (cyclically)
            let mut part = Subset::EMPTY;
            let mut i = (lo + 1) % k;
            loop {
                part = part.union(self.parts[i as usize]);
                if i == hi {
                    break;
                }
                i = (i + 1) % k;
            }
            parts.push(part);
        }
        CyclicPartition::rotate_canonical(parts)
    }

    /// Coarsenings obtained by merging one cyclically adjacent pair of parts.
    pub fn one_step_coarsenings(&self) -> Vec<CyclicPartition> {
        let k = self.parts.len();
        if k < 3 {
            // merging the two parts of a 2-partition yields the 1-part
            // partition, which has no boundary data; callers that need it use
            // `coarsenings(1)`.
            if k == 2 {
                return vec![CyclicPartition {
                    parts: vec![self.ground()],
                }];
            }
            return Vec::new();
        }
        let full = Subset::full(k as u32);
        let mut out: Vec<_> = (0..k as u32)
            .map(|dropped| self.merge_keeping_boundaries(full.without(dropped)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Refinements obtained by splitting one part into two adjacent parts.
    pub fn one_step_refinements(&self) -> Vec<CyclicPartition> {
        let mut out = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            if p.len() < 2 {
                continue;
            }
            for first in p.subsets_nonempty() {
                if first == *p {
                    continue;
                }
                let second = p.minus(first);
                let mut parts = Vec::with_capacity(self.parts.len() + 1);
                parts.extend_from_slice(&self.parts[..i]);
                parts.push(first);
                parts.push(second);
                parts.extend_from_slice(&self.parts[i + 1..]);
                out.push(CyclicPartition::rotate_canonical(parts));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Delete one element; its part shrinks or disappears.  `None` if nothing
    /// is left.
    pub fn delete_element(&self, e: u32) -> Option<CyclicPartition> {
        let parts: Vec<Subset> = self
            .parts
            .iter()
            .map(|p| p.without(e))
            .filter(|p| !p.is_empty())
            .collect();
        if parts.is_empty() {
            None
        } else {
            Some(CyclicPartition::rotate_canonical(parts))
        }
    }
}

impl fmt::Display for CyclicPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for CyclicPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The full cyclic order `<0,1,...,n>`.
pub fn full_cycle(n: u32) -> CyclicPartition {
    CyclicPartition::from_order(&(0..=n).collect::<Vec<_>>())
}

/// All cyclic partitions of `{0,...,n}` with at least `min_parts` parts,
/// canonical, without duplicates, sorted lexicographically on the canonical
/// part sequence.
pub fn enumerate_cyclic_partitions(n: u32, min_parts: usize) -> Vec<CyclicPartition> {
    let ground = Subset::full(n + 1);
    let rest = ground.without(0);
    let mut out = Vec::new();
    // canonical form fixes the part containing 0 first, so enumerate that part
    // and then ordered set partitions of the remainder
    for tail in rest.subsets() {
        // part containing 0 takes everything outside the tail
        let first = ground.minus(tail);
        debug_assert!(first.contains(0));
        for mut seq in ordered_partitions(tail) {
            let mut parts = vec![first];
            parts.append(&mut seq);
            if parts.len() >= min_parts {
                out.push(CyclicPartition { parts });
            }
        }
    }
    out.sort_by(|a, b| a.parts.cmp(&b.parts));
    out.dedup();
    out
}

/// Ordered set partitions of `set` into non-empty parts (the empty sequence
/// for the empty set).
fn ordered_partitions(set: Subset) -> Vec<Vec<Subset>> {
    if set.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in set.subsets_nonempty() {
        for mut tail in ordered_partitions(set.minus(first)) {
            let mut seq = Vec::with_capacity(tail.len() + 1);
            seq.push(first);
            seq.append(&mut tail);
            out.push(seq);
        }
    }
    out
}

/// Marked vertices and edges on a circle with `m` positions.  Edge `i` lies
/// between vertex `i-1` and vertex `i`; equivalently vertex `i` sits between
/// edge `i` and edge `i+1 (mod m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphicalCode {
    /// Number of positions on the circle (`n+1`).
    pub m: u32,
    /// Marked vertex positions.
    pub verts: Subset,
    /// Marked edge positions.
    pub edges: Subset,
}

impl GraphicalCode {
    pub fn new(m: u32, verts: Subset, edges: Subset) -> Self {
        debug_assert!(verts.is_subset_of(Subset::full(m)));
        debug_assert!(edges.is_subset_of(Subset::full(m)));
        GraphicalCode { m, verts, edges }
    }

    /// Edge positions in the open arc after vertex `v` up to and including the
    /// next marked vertex `v'`; this is the set `{v+1, ..., v'}` mod `m`.
    fn arc_after(&self, v: u32) -> Subset {
        let mut arc = Subset::EMPTY;
        let mut p = (v + 1) % self.m;
        loop {
            arc = arc.with(p);
            if self.verts.contains(p) {
                break;
            }
            p = (p + 1) % self.m;
        }
        arc
    }
}

/// True iff not all marked edges lie within a single arc between two
/// cyclically consecutive marked vertices.
pub fn interlacing(code: &GraphicalCode) -> bool {
    if code.edges.is_empty() || code.verts.len() <= 1 {
        return false;
    }
    !code
        .verts
        .iter()
        .any(|v| code.edges.is_subset_of(code.arc_after(v)))
}

/// True iff interlacing and, in addition, every arc between consecutive
/// marked vertices meets the marked edges (when there are at most as many
/// arcs as marked edges) or contains at most one marked edge (otherwise).
pub fn maximal_interlacing(code: &GraphicalCode) -> bool {
    if !interlacing(code) {
        return false;
    }
    let k = code.verts.len();
    let j = code.edges.len();
    if k <= j {
        code.verts
            .iter()
            .all(|v| code.arc_after(v).meets(code.edges))
    } else {
        code.verts
            .iter()
            .all(|v| code.arc_after(v).intersect(code.edges).len() <= 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cp(parts: &[&[u32]]) -> CyclicPartition {
        let subs: Vec<Subset> = parts.iter().map(|p| p.iter().copied().collect()).collect();
        let ground = subs.iter().fold(Subset::EMPTY, |a, p| a.union(*p));
        CyclicPartition::new(subs, ground).unwrap()
    }

    #[test]
    fn canonicalize_rotates_to_zero() {
        let p = cp(&[&[1, 2], &[0]]);
        assert_eq!(p.parts()[0], Subset::singleton(0));
        assert_eq!(p.to_string(), "<{0},{1,2}>");
        let q = cp(&[&[2], &[0], &[1]]);
        assert_eq!(q.to_string(), "<{0},{1},{2}>");
        let fixed = cp(&[&[0, 1, 2]]);
        assert_eq!(fixed.to_string(), "<{0,1,2}>");
    }

    #[test]
    fn canonicalize_rejects_overlap_and_gap() {
        let ground = Subset::full(3);
        let overlap = CyclicPartition::new(
            vec![[0u32, 1].into_iter().collect(), [1u32, 2].into_iter().collect()],
            ground,
        );
        assert!(overlap.is_err());
        let gap = CyclicPartition::new(vec![[0u32].into_iter().collect()], ground);
        assert!(gap.is_err());
    }

    #[test]
    fn refinement_examples() {
        let fine = cp(&[&[0], &[1], &[2]]);
        assert!(fine.refines(&cp(&[&[0], &[1, 2]])));
        assert!(fine.refines(&fine));
        let fine4 = cp(&[&[0], &[1], &[2], &[3]]);
        // {0,2} is not a union of cyclically consecutive parts
        assert!(!fine4.refines(&cp(&[&[0, 2], &[1, 3]])));
        assert!(fine4.refines(&cp(&[&[0, 1], &[2, 3]])));
        assert!(fine4.refines(&cp(&[&[3, 0], &[1, 2]])));
        // the cyclic order must be respected, not just containment
        let swapped = CyclicPartition::from_order(&[0, 2, 1, 3]);
        assert!(!swapped.refines(&cp(&[&[0, 1], &[2, 3]])));
    }

    /// Oracle: sigma' is coarser than sigma iff sigma' can be obtained by
    /// choosing surviving boundaries, brute force over all boundary subsets.
    fn coarsening_oracle(fine: &CyclicPartition, coarse: &CyclicPartition) -> bool {
        if coarse.num_parts() == 1 {
            return fine.ground() == coarse.ground();
        }
        let k = fine.num_parts() as u32;
        Subset::full(k)
            .subsets()
            .into_iter()
            .filter(|b| b.len() >= 2)
            .any(|b| fine.merge_keeping_boundaries(b) == *coarse)
    }

    #[test]
    fn refines_matches_merge_oracle_exhaustively() {
        for n in 1..=4u32 {
            let all = enumerate_cyclic_partitions(n, 1);
            for fine in &all {
                for coarse in &all {
                    assert_eq!(
                        fine.refines(coarse),
                        coarsening_oracle(fine, coarse),
                        "fine={fine} coarse={coarse}"
                    );
                }
            }
        }
    }

    #[test]
    fn refines_is_partial_order_small_n() {
        for n in 1..=4u32 {
            let all = enumerate_cyclic_partitions(n, 1);
            for a in &all {
                assert!(a.refines(a));
                for b in &all {
                    if a.refines(b) && b.refines(a) {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        if c.refines(b) && b.refines(a) {
                            assert!(c.refines(a), "transitivity {c} {b} {a}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn divides_examples() {
        let s = cp(&[&[0], &[1, 2]]);
        assert!(s.divides([0u32, 1].into_iter().collect()));
        assert!(!s.divides([1u32, 2].into_iter().collect()));
        assert!(!cp(&[&[0, 1, 2]]).divides(Subset::full(3)));
    }

    #[test]
    fn divides_monotone_under_refinement() {
        for n in 1..=4u32 {
            let all = enumerate_cyclic_partitions(n, 1);
            let ground = Subset::full(n + 1);
            for coarse in &all {
                for fine in &all {
                    if !fine.refines(coarse) {
                        continue;
                    }
                    for j in ground.subsets_nonempty() {
                        if coarse.divides(j) {
                            assert!(fine.divides(j), "{fine} {coarse} {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn interlacing_examples() {
        // n+1 = 6, V = {1,4}, J = {0,3}: edges on opposite arcs
        let code = GraphicalCode::new(
            6,
            [1u32, 4].into_iter().collect(),
            [0u32, 3].into_iter().collect(),
        );
        assert!(interlacing(&code));
        // single arc holds everything
        let code2 = GraphicalCode::new(
            6,
            [1u32, 2].into_iter().collect(),
            [2u32].into_iter().collect(),
        );
        assert!(!interlacing(&code2));
        // one or no marked vertex: a single arc exists
        for verts in [Subset::EMPTY, Subset::singleton(3)] {
            let c = GraphicalCode::new(6, verts, [0u32, 2].into_iter().collect());
            assert!(!interlacing(&c));
        }
        assert!(!interlacing(&GraphicalCode::new(6, [1u32, 4].into_iter().collect(), Subset::EMPTY)));
    }

    #[test]
    fn maximal_interlacing_examples() {
        // n+1 = 3, V = {0,1}, J = {0,1}: split by V
        let code = GraphicalCode::new(
            3,
            [0u32, 1].into_iter().collect(),
            [0u32, 1].into_iter().collect(),
        );
        assert!(interlacing(&code));
        assert!(maximal_interlacing(&code));
        // interlacing with as many marked edges as arcs, but one arc missed
        let c2 = GraphicalCode::new(
            6,
            [0u32, 2, 4].into_iter().collect(),
            [1u32, 2, 3].into_iter().collect(),
        );
        assert!(interlacing(&c2));
        assert!(!maximal_interlacing(&c2));
        // fewer marked edges than arcs, at most one per arc: maximal
        let c2b = GraphicalCode::new(
            6,
            [0u32, 2, 4].into_iter().collect(),
            [1u32, 3].into_iter().collect(),
        );
        assert!(maximal_interlacing(&c2b));
        // non-interlacing input is never maximal
        let c3 = GraphicalCode::new(6, [0u32, 1].into_iter().collect(), [1u32].into_iter().collect());
        assert!(!maximal_interlacing(&c3));
    }

    /// Vertex set of a coarsening of the full cyclic order `<0,1,...,n>`:
    /// vertex `i` is marked iff `i` and `i+1` lie in different parts.
    fn vertex_set(sigma: &CyclicPartition, n: u32) -> Subset {
        (0..=n)
            .filter(|&i| sigma.part_of(i) != sigma.part_of((i + 1) % (n + 1)))
            .collect()
    }

    #[test]
    fn interlacing_equals_divides_on_interval_partitions() {
        for n in 1..=5u32 {
            let sigma0 = CyclicPartition::from_order(&(0..=n).collect::<Vec<_>>());
            for sigma in sigma0.coarsenings(2) {
                let v = vertex_set(&sigma, n);
                assert_eq!(v.len() as usize, sigma.num_parts());
                for j in Subset::full(n + 1).subsets_nonempty() {
                    let code = GraphicalCode::new(n + 1, v, j);
                    assert_eq!(
                        interlacing(&code),
                        sigma.divides(j),
                        "n={n} sigma={sigma} J={j}"
                    );
                }
            }
        }
    }

    /// Independent oracle: enumerate all ordered set partitions, quotient by
    /// rotation, count the classes.
    fn count_cyclic_partitions_oracle(n: u32, min_parts: usize) -> usize {
        fn ordered(set: Subset) -> Vec<Vec<Subset>> {
            if set.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for first in set.subsets_nonempty() {
                for mut tail in ordered(set.minus(first)) {
                    let mut seq = vec![first];
                    seq.append(&mut tail);
                    out.push(seq);
                }
            }
            out
        }
        let mut reps = std::collections::HashSet::new();
        for seq in ordered(Subset::full(n + 1)) {
            if seq.len() < min_parts {
                continue;
            }
            // canonical rotation representative
            let mut best: Option<Vec<Subset>> = None;
            for t in 0..seq.len() {
                let mut rot = Vec::with_capacity(seq.len());
                rot.extend_from_slice(&seq[t..]);
                rot.extend_from_slice(&seq[..t]);
                if best.as_ref().map_or(true, |b| &rot < b) {
                    best = Some(rot);
                }
            }
            reps.insert(best.unwrap());
        }
        reps.len()
    }

    #[test]
    fn enumeration_counts_match_rotation_oracle() {
        // n = 2: three 2-part partitions, two full cyclic orders, one 1-part
        assert_eq!(count_cyclic_partitions_oracle(2, 2), 5);
        assert_eq!(count_cyclic_partitions_oracle(2, 1), 6);
        // n = 3: the n! = 6 full cyclic orders
        assert_eq!(count_cyclic_partitions_oracle(3, 4), 6);
        for n in 1..=4u32 {
            for min_parts in 1..=(n as usize + 1) {
                assert_eq!(
                    enumerate_cyclic_partitions(n, min_parts).len(),
                    count_cyclic_partitions_oracle(n, min_parts),
                    "n={n} min_parts={min_parts}"
                );
            }
        }
    }

    #[test]
    fn enumeration_n2_lists_expected_partitions() {
        let got = enumerate_cyclic_partitions(2, 2);
        let want = vec![
            cp(&[&[0], &[1], &[2]]),
            cp(&[&[0], &[2], &[1]]),
            cp(&[&[0], &[1, 2]]),
            cp(&[&[1], &[0, 2]]),
            cp(&[&[2], &[0, 1]]),
        ];
        assert_eq!(got.len(), 5);
        for w in &want {
            assert!(got.contains(w), "{w} missing");
        }
        // the two full cyclic orders are distinct
        assert_ne!(
            CyclicPartition::from_order(&[0, 1, 2]),
            CyclicPartition::from_order(&[0, 2, 1])
        );
    }

    #[test]
    fn enumeration_is_canonical_sorted_and_duplicate_free() {
        for n in 1..=4u32 {
            let all = enumerate_cyclic_partitions(n, 1);
            let mut sorted = all.clone();
            sorted.sort_by(|a, b| a.parts.cmp(&b.parts));
            assert_eq!(all, sorted);
            let set: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
        }
    }

    #[test]
    fn decyclization_examples() {
        assert_eq!(cp(&[&[0], &[1], &[2]]).decyclizations().len(), 3);
        assert_eq!(cp(&[&[0, 1, 2]]).decyclizations().len(), 1);
        let two = cp(&[&[0], &[1, 2]]).decyclizations();
        let s0 = Subset::singleton(0);
        let s12: Subset = [1u32, 2].into_iter().collect();
        assert_eq!(two, vec![vec![s0, s12], vec![s12, s0]]);
    }

    proptest! {
        /// canonicalize is idempotent and rotation-invariant.
        #[test]
        fn canonical_form_is_rotation_invariant(seed in 0u64..5000) {
            let n = 1 + (seed % 5) as u32;
            let all = enumerate_cyclic_partitions(n, 1);
            let p = &all[(seed as usize / 7) % all.len()];
            let k = p.num_parts();
            let r = (seed as usize / 11) % k;
            let mut rotated: Vec<Subset> = Vec::new();
            rotated.extend_from_slice(&p.parts()[r..]);
            rotated.extend_from_slice(&p.parts()[..r]);
            let q = CyclicPartition::new(rotated, p.ground()).unwrap();
            prop_assert_eq!(q, p.clone());
        }
    }
}
