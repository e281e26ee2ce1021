//! The named complexes: amoeba spine `S`, coamoeba skeleton `Sigma`, stratum
//! face lattices, the ober-tropical complex inside `S x Sigma`, cyclic
//! polytopes with Gale-even facets, the duality between stratum lattices and
//! cyclic polytopes, and the fibers of the two skeleton projections.

use crate::cyclic::{enumerate_cyclic_partitions, interlacing, CyclicPartition, GraphicalCode};
use crate::iso::{is_isomorphic, verify_bijection, Orientation};
use crate::label::CellLabel;
use crate::poset::{dsd_simplex, product, FacePoset};
use crate::rootgeom::TwoPartition;
use crate::subset::Subset;
use crate::{Error, Result};
use std::collections::{HashMap, HashSet};

/// The spine of the amoeba: faces `S_{I,J}` with `|I| >= 2`, `I <= J`, of
/// dimension `|J \ I|`.  It is the subcomplex of the dualizing subdivision of
/// the full simplex spanned by the cells with at least two tied coordinates.
pub fn skeleton_s(n: u32) -> FacePoset {
    let dsd = dsd_simplex(Subset::full(n + 1)).expect("non-empty ground set");
    let sub = dsd
        .subcomplex(|l| match l {
            CellLabel::Dsd { min, .. } => min.len() >= 2,
            _ => false,
        })
        .expect("the spine is downward closed in the dualizing subdivision");
    // relabel Dsd cells as S-faces
    let relabel = |l: &CellLabel| match l {
        CellLabel::Dsd { min, max } => CellLabel::SFace {
            eq: *min,
            support: *max,
        },
        _ => unreachable!(),
    };
    let cells = sub.cells().iter().map(|(l, d)| (relabel(l), *d)).collect();
    let covers = sub
        .cover_pairs()
        .into_iter()
        .map(|(f, c)| (relabel(&f), relabel(&c)))
        .collect();
    FacePoset::new(cells, covers).expect("relabeling preserves the poset")
}

/// The coamoeba skeleton: faces labeled by cyclic partitions with at least
/// two parts, `dim = n + 1 - |sigma|`; the facets of a face are its one-step
/// refinements.
pub fn skeleton_sigma(n: u32) -> FacePoset {
    let all = enumerate_cyclic_partitions(n, 2);
    let dim_of = |s: &CyclicPartition| (n as usize + 1) - s.num_parts();
    let mut cells = Vec::with_capacity(all.len());
    let mut covers = Vec::new();
    for sigma in &all {
        cells.push((CellLabel::Sigma(sigma.clone()), dim_of(sigma)));
        for finer in sigma.one_step_refinements() {
            covers.push((CellLabel::Sigma(finer), CellLabel::Sigma(sigma.clone())));
        }
    }
    FacePoset::new(cells, covers).expect("refinement is graded by part count")
}

/// Face lattice of the stratum `P_{sigma,J}`: cells are pairs `(sigma', J')`
/// with `sigma' <= sigma`, `J' <= J` and `sigma'` dividing `J'`, of dimension
/// `|sigma'| + |J'| - 4`.  Errors if `sigma` does not divide `J` (the stratum
/// is empty).
pub fn stratum_lattice(sigma: &CyclicPartition, j: Subset) -> Result<FacePoset> {
    if !sigma.divides(j) {
        return Err(Error::EmptyStratum {
            sigma: sigma.to_string(),
            support: j.to_string(),
        });
    }
    let mut cells = Vec::new();
    let mut covers = Vec::new();
    for s in sigma.coarsenings(2) {
        for jp in j.subsets_nonempty() {
            if !s.divides(jp) {
                continue;
            }
            let dim = s.num_parts() + jp.len() as usize - 4;
            let label = CellLabel::Stratum {
                sigma: s.clone(),
                support: jp,
            };
            cells.push((label.clone(), dim));
            // facets: merge two adjacent parts, or drop one support element
            for coarser in s.one_step_coarsenings() {
                if coarser.num_parts() >= 2 && coarser.divides(jp) {
                    covers.push((
                        CellLabel::Stratum {
                            sigma: coarser,
                            support: jp,
                        },
                        label.clone(),
                    ));
                }
            }
            for x in jp.iter() {
                let smaller = jp.without(x);
                if s.divides(smaller) {
                    covers.push((
                        CellLabel::Stratum {
                            sigma: s.clone(),
                            support: smaller,
                        },
                        label.clone(),
                    ));
                }
            }
        }
    }
    FacePoset::new(cells, covers)
}

/// The ober-tropical complex: the subcomplex of `S x Sigma` spanned by the
/// product cells `S_{I,J} x Sigma_sigma` with `sigma` dividing `I`.
pub fn ober_complex(n: u32) -> Result<FacePoset> {
    let s = skeleton_s(n);
    let sig = skeleton_sigma(n);
    let prod = product(&s, &sig);
    prod.subcomplex(|l| match l {
        CellLabel::Product(a, b) => match (a.as_ref(), b.as_ref()) {
            (CellLabel::SFace { eq, .. }, CellLabel::Sigma(sigma)) => sigma.divides(*eq),
            _ => false,
        },
        _ => false,
    })
}

/// Reference layout of a cyclic partition on the circle: positions `0..n`
/// carry the elements part by part (parts in canonical cyclic order, elements
/// ascending within a part).  Vertex position `p` sits between edge positions
/// `p` and `p+1`; the partition's vertex set `W` consists of the positions
/// where a part ends.
#[derive(Clone, Debug)]
pub struct CircleLayout {
    /// position -> element
    pub elem_at: Vec<u32>,
    /// element -> position
    pub pos_of: Vec<u32>,
    /// vertex positions of the partition
    pub w: Subset,
}

impl CircleLayout {
    pub fn of(sigma: &CyclicPartition) -> Self {
        let m = sigma.ground().len() as usize;
        let mut elem_at = Vec::with_capacity(m);
        let mut w = Subset::EMPTY;
        for part in sigma.parts() {
            for e in part.iter() {
                elem_at.push(e);
            }
            w = w.with(elem_at.len() as u32 - 1);
        }
        let mut pos_of = vec![0u32; m];
        for (p, &e) in elem_at.iter().enumerate() {
            pos_of[e as usize] = p as u32;
        }
        CircleLayout { elem_at, pos_of, w }
    }

    pub fn m(&self) -> u32 {
        self.elem_at.len() as u32
    }

    /// Translate an element subset to circle positions.
    pub fn positions(&self, elems: Subset) -> Subset {
        elems.iter().map(|e| self.pos_of[e as usize]).collect()
    }

    /// Translate circle positions back to elements.
    pub fn elements(&self, pos: Subset) -> Subset {
        pos.iter().map(|p| self.elem_at[p as usize]).collect()
    }

    /// Vertex positions of a coarsening of the laid-out partition: the
    /// surviving boundaries.
    pub fn vertex_set_of_coarsening(
        &self,
        sigma: &CyclicPartition,
        coarser: &CyclicPartition,
    ) -> Subset {
        let k = sigma.num_parts();
        let mut boundary_pos = Vec::with_capacity(k);
        let mut acc = 0u32;
        for part in sigma.parts() {
            acc += part.len();
            boundary_pos.push(acc - 1);
        }
        // the boundary after part p survives iff parts p and p+1 land in
        // different parts of the coarsening
        let mut w = Subset::EMPTY;
        for p in 0..k {
            let rep = sigma.parts()[p].min_elem().unwrap();
            let rep_next = sigma.parts()[(p + 1) % k].min_elem().unwrap();
            if coarser.part_of(rep) != coarser.part_of(rep_next) {
                w = w.with(boundary_pos[p]);
            }
        }
        w
    }
}

/// Face lattice of the ober-tropical stratum: the subcomplex of
/// `dsd(Delta_J) x dsd(Delta_sigma)` spanned by the cells whose inner
/// partition divides the inner support.  The second factor is the dualizing
/// subdivision of the simplex on the vertex positions of `sigma`.
pub fn ober_stratum_lattice(sigma: &CyclicPartition, j: Subset) -> Result<FacePoset> {
    if !sigma.divides(j) {
        return Err(Error::EmptyStratum {
            sigma: sigma.to_string(),
            support: j.to_string(),
        });
    }
    let layout = CircleLayout::of(sigma);
    let dsd_j = dsd_simplex(j)?;
    let dsd_sigma = dsd_simplex(layout.w)?;
    let prod = product(&dsd_j, &dsd_sigma);
    let m = layout.m();
    prod.subcomplex(|l| match l {
        CellLabel::Product(a, b) => match (a.as_ref(), b.as_ref()) {
            (CellLabel::Dsd { min: i, .. }, CellLabel::Dsd { min: tau, .. }) => {
                // tau (as marked vertices) divides i (as marked edges)
                interlacing(&GraphicalCode::new(m, *tau, layout.positions(*i)))
            }
            _ => false,
        },
        _ => false,
    })
}

/// Facets of the cyclic polytope `C_d(r)` via Gale evenness, together with
/// the full (simplicial) face lattice: ranks are vertex counts, with the
/// empty face at rank 0 and the facets at rank `d`.
pub fn cyclic_polytope(d: usize, r: usize) -> Result<FacePoset> {
    if d < 2 || r <= d || d % 2 != 0 || r > 30 {
        return Err(Error::InvalidCyclicPolytope { d, r });
    }
    let facets = gale_even_facets(d, r);
    let mut faces: HashSet<Subset> = HashSet::new();
    faces.insert(Subset::EMPTY);
    for f in &facets {
        for s in f.subsets() {
            faces.insert(s);
        }
    }
    let cells: Vec<(CellLabel, usize)> = faces
        .iter()
        .map(|&s| (CellLabel::Plain(s), s.len() as usize))
        .collect();
    let mut covers = Vec::new();
    for &s in &faces {
        if s.is_empty() {
            continue;
        }
        for x in s.iter() {
            let sub = s.without(x);
            debug_assert!(faces.contains(&sub));
            covers.push((CellLabel::Plain(sub), CellLabel::Plain(s)));
        }
    }
    FacePoset::new(cells, covers)
}

/// All `d`-subsets of `{0,...,r-1}` satisfying Gale evenness: any two
/// elements outside the subset are separated by an even number of its
/// elements.
pub fn gale_even_facets(d: usize, r: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    for s in Subset::full(r as u32).subsets_of_size(d as u32) {
        let outside: Vec<u32> = (0..r as u32).filter(|&x| !s.contains(x)).collect();
        let mut ok = true;
        'pairs: for a in 0..outside.len() {
            for b in (a + 1)..outside.len() {
                let between = (outside[a] + 1..outside[b])
                    .filter(|&x| s.contains(x))
                    .count();
                if between % 2 == 1 {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            out.push(s);
        }
    }
    out
}

/// Brute-force facet oracle over exact rationals: `d`-subsets of the moment
/// curve points `x(t) = (t, t^2, ..., t^d)`, `t = 1..=r`, whose affine hull
/// supports all remaining points on one side.
pub fn moment_curve_facets_bruteforce(d: usize, r: usize) -> Vec<Subset> {
    use num::{BigInt, BigRational, Signed, Zero};
    let points: Vec<Vec<BigRational>> = (1..=r as i64)
        .map(|t| {
            (1..=d as i64)
                .map(|p| BigRational::from_integer(BigInt::from(t).pow(p as u32)))
                .collect()
        })
        .collect();
    // sign of the determinant of rows (1, p_i) decides the side of a point
    // relative to the hyperplane through a d-subset
    fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
        let n = m.len();
        let mut sign = BigRational::from_integer(BigInt::from(1));
        let mut acc = BigRational::from_integer(BigInt::from(1));
        for col in 0..n {
            let pivot = (col..n).find(|&row| !m[row][col].is_zero());
            let Some(p) = pivot else {
                return BigRational::zero();
            };
            if p != col {
                m.swap(p, col);
                sign = -sign;
            }
            let pv = m[col][col].clone();
            acc *= &pv;
            for row in (col + 1)..n {
                let factor = &m[row][col] / &pv;
                if factor.is_zero() {
                    continue;
                }
                for c2 in col..n {
                    let sub = &factor * &m[col][c2];
                    m[row][c2] -= sub;
                }
            }
        }
        sign * acc
    }
    let mut out = Vec::new();
    for s in Subset::full(r as u32).subsets_of_size(d as u32) {
        let members: Vec<u32> = s.iter().collect();
        let mut side: Option<bool> = None;
        let mut facet = true;
        for other in 0..r as u32 {
            if s.contains(other) {
                continue;
            }
            let mut m = Vec::with_capacity(d + 1);
            for &v in &members {
                let mut row = vec![BigRational::from_integer(BigInt::from(1))];
                row.extend(points[v as usize].iter().cloned());
                m.push(row);
            }
            let mut row = vec![BigRational::from_integer(BigInt::from(1))];
            row.extend(points[other as usize].iter().cloned());
            m.push(row);
            let sign = det(m);
            if sign.is_zero() {
                facet = false;
                break;
            }
            let pos = sign.is_positive();
            match side {
                None => side = Some(pos),
                Some(prev) if prev != pos => {
                    facet = false;
                    break;
                }
                _ => {}
            }
        }
        if facet {
            out.push(s);
        }
    }
    out
}

/// Slot of an edge position among the `2n+2` cyclic-polytope parameters.
fn edge_slot(e: u32) -> u32 {
    2 * e
}

/// Slot of a vertex position.
fn vertex_slot(v: u32) -> u32 {
    2 * v + 1
}

/// Outcome of the duality check between the maximal stratum lattice and the
/// cyclic polytope `C_{2n-2}(2n+2)`.
#[derive(Debug)]
pub struct DualityReport {
    pub n: u32,
    pub stratum_cells: usize,
    pub polytope_faces: usize,
    pub minimal_cells: usize,
    pub facets: usize,
    /// The induced order-reversing bijection, stratum label to face label.
    pub map: Vec<(CellLabel, CellLabel)>,
    pub failure: Option<String>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Builds the explicit slot-labeled map from minimal cells of the maximal
/// stratum to Gale-even facets of `C_{2n-2}(2n+2)`, extends it to the full
/// lattices, and verifies an order-reversing isomorphism (both the explicit
/// map and an independent search).
pub fn verify_cyclic_polytope_duality(n: u32) -> Result<DualityReport> {
    if n < 2 {
        return Err(Error::Invalid("duality check needs n >= 2".into()));
    }
    let sigma0 = CyclicPartition::from_order(&(0..=n).collect::<Vec<_>>());
    let ground = Subset::full(n + 1);
    let a = stratum_lattice(&sigma0, ground)?;
    let b = cyclic_polytope(2 * n as usize - 2, 2 * n as usize + 2)?;
    let layout = CircleLayout::of(&sigma0);
    let slots = Subset::full(2 * n + 2);

    let mut report = DualityReport {
        n,
        stratum_cells: a.len(),
        polytope_faces: b.len(),
        minimal_cells: 0,
        facets: 0,
        map: Vec::new(),
        failure: None,
    };
    macro_rules! fail {
        ($msg:expr) => {{
            report.failure = Some($msg);
            return Ok(report);
        }};
    }

    // explicit map on minimal cells: drop the four slots of the marked
    // vertices and edges
    let mut minimal_to_facet: HashMap<usize, Subset> = HashMap::new();
    for ci in 0..a.len() {
        if a.dim(ci) != 0 {
            continue;
        }
        let CellLabel::Stratum { sigma, support } = a.label(ci) else {
            unreachable!()
        };
        let v = layout.vertex_set_of_coarsening(&sigma0, sigma);
        let mut removed = Subset::EMPTY;
        for e in layout.positions(*support).iter() {
            removed = removed.with(edge_slot(e));
        }
        for w in v.iter() {
            removed = removed.with(vertex_slot(w));
        }
        minimal_to_facet.insert(ci, slots.minus(removed));
    }
    report.minimal_cells = minimal_to_facet.len();
    let facets: HashSet<Subset> = gale_even_facets(2 * n as usize - 2, 2 * n as usize + 2)
        .into_iter()
        .collect();
    report.facets = facets.len();
    let images: HashSet<Subset> = minimal_to_facet.values().copied().collect();
    if images.len() != minimal_to_facet.len() {
        fail!("minimal-cell map is not injective".into());
    }
    if images != facets {
        fail!("minimal-cell images do not match the Gale-even facets".into());
    }

    // extend: a cell maps to the intersection of the facets below it
    let mut fwd: Vec<Subset> = Vec::with_capacity(a.len());
    for ci in 0..a.len() {
        let mut face = slots;
        for &lo in a.lower_set(ci).iter() {
            if let Some(&f) = minimal_to_facet.get(&lo) {
                face = face.intersect(f);
            }
        }
        fwd.push(face);
    }
    let mut map = Vec::with_capacity(a.len());
    let mut seen = HashSet::new();
    for ci in 0..a.len() {
        let target = CellLabel::Plain(fwd[ci]);
        let Some(bi) = b.index_of(&target) else {
            fail!(format!("image of {} is not a polytope face", a.label(ci)));
        };
        if !seen.insert(bi) {
            fail!(format!("image of {} duplicated", a.label(ci)));
        }
        // order reversal on ranks
        if a.dim(ci) + b.dim(bi) != a.max_dim() {
            fail!(format!(
                "rank mismatch at {} -> {}",
                a.label(ci),
                b.label(bi)
            ));
        }
        map.push((a.label(ci).clone(), target));
    }
    if map.len() != b.len() {
        fail!("induced map is not surjective".into());
    }
    if !verify_bijection(&a, &b, &map, Orientation::Reversing) {
        fail!("induced bijection does not reverse the covering relation".into());
    }
    // independent search for an order-reversing isomorphism
    match is_isomorphic(&a, &b, Orientation::Reversing) {
        Some(found) => {
            if !verify_bijection(&a, &b, &found, Orientation::Reversing) {
                fail!("search returned an invalid bijection".into());
            }
        }
        None => fail!("isomorphism search found no anti-isomorphism".into()),
    }
    report.map = map;
    Ok(report)
}

/// Fiber of the projection to the coamoeba skeleton over a generic point of
/// the facet of a 2-partition: the subcomplex of `S` spanned by the faces
/// whose tied coordinates meet both halves.
pub fn mu2_fiber(p: &TwoPartition, n: u32) -> FacePoset {
    let s = skeleton_s(n);
    s.subcomplex(|l| match l {
        CellLabel::SFace { eq, .. } => eq.meets(p.minus) && eq.meets(p.plus),
        _ => false,
    })
    .expect("fiber predicate is downward closed")
}

/// The comparison complex for a `mu2` fiber: the dualizing subdivision of the
/// product of the two half simplices.
pub fn mu2_fiber_model(p: &TwoPartition) -> FacePoset {
    let dm = dsd_simplex(p.minus).expect("non-empty half");
    let dp = dsd_simplex(p.plus).expect("non-empty half");
    product(&dm, &dp)
}

/// Fiber of the projection to the spine over a generic point of the facet
/// `S_{ij}`: the subcomplex of `Sigma` spanned by the faces whose partition
/// separates `i` from `j`.
pub fn mu1_fiber(i: u32, j: u32, n: u32) -> FacePoset {
    assert_ne!(i, j);
    let pair: Subset = [i, j].into_iter().collect();
    let sig = skeleton_sigma(n);
    sig.subcomplex(|l| match l {
        CellLabel::Sigma(sigma) => sigma.divides(pair),
        _ => false,
    })
    .expect("fiber predicate is downward closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::{collapse, is_collapsible_to_point, CollapseMode};
    use crate::homology::{boundary_squares_to_zero, homology_z2};

    fn sigma0(n: u32) -> CyclicPartition {
        CyclicPartition::from_order(&(0..=n).collect::<Vec<_>>())
    }

    #[test]
    fn spine_n2_is_the_tripod() {
        let s = skeleton_s(2);
        assert_eq!(s.f_vector(), vec![4, 3]);
        assert_eq!(s.euler_characteristic(), 1);
        // maximal faces are the three S_{{i,j}, full}
        let maximal: Vec<_> = (0..s.len()).filter(|&i| s.cofaces(i).is_empty()).collect();
        assert_eq!(maximal.len(), 3);
        assert!(maximal.iter().all(|&i| s.dim(i) == 1));
    }

    #[test]
    fn spine_dim_is_support_minus_tied() {
        let s = skeleton_s(3);
        for i in 0..s.len() {
            let CellLabel::SFace { eq, support } = s.label(i) else {
                panic!()
            };
            assert_eq!(s.dim(i), support.minus(*eq).len() as usize);
            if eq == support {
                assert_eq!(s.dim(i), 0);
            }
        }
    }

    #[test]
    fn spine_is_a_subcomplex_of_the_dualizing_subdivision() {
        for n in 1..=4u32 {
            let s = skeleton_s(n);
            let dsd = dsd_simplex(Subset::full(n + 1)).unwrap();
            for i in 0..s.len() {
                let CellLabel::SFace { eq, support } = s.label(i) else {
                    panic!()
                };
                let di = dsd
                    .index_of(&CellLabel::Dsd {
                        min: *eq,
                        max: *support,
                    })
                    .expect("missing dsd cell");
                assert_eq!(s.dim(i), dsd.dim(di));
            }
            let to_dsd = |l: &CellLabel| match l {
                CellLabel::SFace { eq, support } => CellLabel::Dsd {
                    min: *eq,
                    max: *support,
                },
                _ => unreachable!(),
            };
            for (f, c) in s.cover_pairs() {
                let fi = dsd.index_of(&to_dsd(&f)).unwrap();
                let ci = dsd.index_of(&to_dsd(&c)).unwrap();
                assert!(dsd.facets(ci).contains(&(fi as u32)));
            }
        }
    }

    #[test]
    fn spine_f_vector_depends_only_on_sizes() {
        for n in 1..=4u32 {
            let s = skeleton_s(n);
            let mut expect = vec![0usize; s.max_dim() + 1];
            let full = Subset::full(n + 1);
            for max in full.subsets_nonempty() {
                for min in max.subsets_nonempty() {
                    if min.len() >= 2 {
                        expect[max.minus(min).len() as usize] += 1;
                    }
                }
            }
            assert_eq!(s.f_vector(), expect);
        }
    }

    #[test]
    fn sigma_n2_is_the_theta_graph() {
        let s = skeleton_sigma(2);
        assert_eq!(s.f_vector(), vec![2, 3]);
        assert_eq!(homology_z2(&s), vec![1, 2]);
        assert_eq!(s.euler_characteristic(), -1);
    }

    #[test]
    fn sigma_counts_match_the_closed_forms() {
        for n in 1..=6u32 {
            let facets = enumerate_cyclic_partitions(n, 2)
                .into_iter()
                .filter(|p| p.num_parts() == 2)
                .count();
            assert_eq!(facets as u64, 2u64.pow(n) - 1, "facets n={n}");
            let vertices = enumerate_cyclic_partitions(n, n as usize + 1).len();
            let fact: usize = (1..=n as usize).product();
            assert_eq!(vertices, fact, "vertices n={n}");
        }
        // through the poset for small n
        for n in 1..=4u32 {
            let s = skeleton_sigma(n);
            let f = s.f_vector();
            assert_eq!(f[s.max_dim()] as u64, 2u64.pow(n) - 1);
            let fact: usize = (1..=n as usize).product();
            assert_eq!(f[0], fact);
        }
    }

    #[test]
    fn sigma_euler_matches_signed_partition_count() {
        for n in 1..=5u32 {
            let s = skeleton_sigma(n);
            let chi: i64 = enumerate_cyclic_partitions(n, 2)
                .iter()
                .map(|p| {
                    let d = (n as usize + 1) - p.num_parts();
                    if d % 2 == 0 {
                        1i64
                    } else {
                        -1i64
                    }
                })
                .sum();
            assert_eq!(s.euler_characteristic(), chi);
            let b = homology_z2(&s);
            let alt: i64 = b
                .iter()
                .enumerate()
                .map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) })
                .sum();
            assert_eq!(alt, chi);
        }
    }

    #[test]
    fn maximal_stratum_n2_is_a_hexagon() {
        let p = stratum_lattice(&sigma0(2), Subset::full(3)).unwrap();
        assert_eq!(p.f_vector(), vec![6, 6, 1]);
        assert_eq!(p.euler_characteristic(), 1);
        p.check_diamond_property().unwrap();
        assert!(boundary_squares_to_zero(&p));
    }

    #[test]
    fn stratum_minimal_cells_are_maximal_interlacing_pairs() {
        let n = 3u32;
        let p = stratum_lattice(&sigma0(n), Subset::full(n + 1)).unwrap();
        let layout = CircleLayout::of(&sigma0(n));
        for i in 0..p.len() {
            if p.dim(i) > 0 {
                continue;
            }
            let CellLabel::Stratum { sigma, support } = p.label(i) else {
                panic!()
            };
            assert_eq!(sigma.num_parts(), 2);
            assert_eq!(support.len(), 2);
            let v = layout.vertex_set_of_coarsening(&sigma0(n), sigma);
            let code = GraphicalCode::new(n + 1, v, layout.positions(*support));
            assert!(crate::cyclic::maximal_interlacing(&code));
        }
    }

    #[test]
    fn empty_stratum_is_an_error() {
        let ground = Subset::full(3);
        let sigma = CyclicPartition::new(
            vec![Subset::singleton(0), [1u32, 2].into_iter().collect()],
            ground,
        )
        .unwrap();
        // J inside one part
        let err = stratum_lattice(&sigma, [1u32, 2].into_iter().collect());
        assert!(matches!(err, Err(Error::EmptyStratum { .. })));
    }

    #[test]
    fn ober_n2_has_the_homotopy_of_the_theta_graph() {
        let p = ober_complex(2).unwrap();
        assert_eq!(p.euler_characteristic(), -1);
        assert_eq!(homology_z2(&p), vec![1, 2, 0]);
        assert_eq!(p.max_dim(), 2);
        // every cell respects the divides constraint by construction
        for i in 0..p.len() {
            let CellLabel::Product(a, b) = p.label(i) else {
                panic!()
            };
            let (CellLabel::SFace { eq, .. }, CellLabel::Sigma(sigma)) = (a.as_ref(), b.as_ref())
            else {
                panic!()
            };
            assert!(sigma.divides(*eq));
        }
    }

    #[test]
    fn ober_max_dimension_report() {
        // computed, not assumed: the top product cells pair (n-1)-dimensional
        // spine faces with (n-1)-dimensional skeleton facets
        for n in 2..=3u32 {
            let p = ober_complex(n).unwrap();
            assert_eq!(p.max_dim(), 2 * n as usize - 2);
        }
    }

    #[test]
    fn ober_stratum_n2_is_a_hexagon_of_squares() {
        let p = ober_stratum_lattice(&sigma0(2), Subset::full(3)).unwrap();
        assert_eq!(p.f_vector(), vec![13, 18, 6]);
        assert_eq!(p.euler_characteristic(), 1);
        p.check_diamond_property().unwrap();
    }

    #[test]
    fn ober_stratum_dim_formula_is_the_poset_rank() {
        for n in 2..=4u32 {
            let p = ober_stratum_lattice(&sigma0(n), Subset::full(n + 1)).unwrap();
            for i in 0..p.len() {
                let CellLabel::Product(a, b) = p.label(i) else {
                    panic!()
                };
                let (
                    CellLabel::Dsd { min: i_set, max: jp },
                    CellLabel::Dsd { min: tau, max: sp },
                ) = (a.as_ref(), b.as_ref())
                else {
                    panic!()
                };
                let dim = (jp.len() - i_set.len()) as usize + (sp.len() - tau.len()) as usize;
                assert_eq!(p.dim(i), dim);
            }
            let top: Vec<_> = (0..p.len()).filter(|&i| p.cofaces(i).is_empty()).collect();
            assert!(!top.is_empty());
        }
    }

    #[test]
    fn cyclic_polytope_c26_is_a_hexagon() {
        let facets = gale_even_facets(2, 6);
        assert_eq!(facets.len(), 6);
        let p = cyclic_polytope(2, 6).unwrap();
        // empty face + 6 vertices + 6 edges
        assert_eq!(p.len(), 13);
        assert!(cyclic_polytope(3, 6).is_err());
        assert!(cyclic_polytope(2, 2).is_err());
    }

    #[test]
    fn gale_facets_match_the_convex_hull_oracle() {
        for (d, r) in [(2usize, 5usize), (2, 6), (2, 8), (4, 7), (4, 8), (4, 10)] {
            let mut gale = gale_even_facets(d, r);
            let mut hull = moment_curve_facets_bruteforce(d, r);
            gale.sort();
            hull.sort();
            assert_eq!(gale, hull, "d={d} r={r}");
        }
    }

    #[test]
    fn gale_facets_are_distinct_d_sets() {
        for (d, r) in [(2usize, 6usize), (4, 8), (6, 10)] {
            let facets = gale_even_facets(d, r);
            assert!(facets.iter().all(|f| f.len() == d as u32));
            let set: HashSet<_> = facets.iter().collect();
            assert_eq!(set.len(), facets.len());
        }
    }

    #[test]
    fn cyclic_polytope_duality_small_n() {
        for n in [2u32, 3] {
            let rep = verify_cyclic_polytope_duality(n).unwrap();
            assert!(rep.ok(), "n={n}: {:?}", rep.failure);
            assert_eq!(rep.minimal_cells, rep.facets);
            if n == 2 {
                assert_eq!(rep.minimal_cells, 6);
                assert_eq!(rep.stratum_cells, 13);
            }
        }
    }

    #[test]
    fn mu2_fiber_is_the_dualized_product_and_collapsible() {
        for n in 2..=4u32 {
            for p in crate::rootgeom::two_partitions(n) {
                // each unordered pair once
                if !p.minus.contains(0) {
                    continue;
                }
                let fiber = mu2_fiber(&p, n);
                let model = mu2_fiber_model(&p);
                assert_eq!(fiber.len(), model.len(), "n={n} p={p:?}");
                let m = is_isomorphic(&fiber, &model, Orientation::Preserving)
                    .unwrap_or_else(|| panic!("no isomorphism for n={n} p={p:?}"));
                assert!(verify_bijection(&fiber, &model, &m, Orientation::Preserving));
                assert!(is_collapsible_to_point(&fiber, 2000));
            }
        }
    }

    #[test]
    fn mu2_fiber_n2_is_a_path_of_two_edges() {
        let ground = Subset::full(3);
        let p = TwoPartition::new(
            Subset::singleton(0),
            [1u32, 2].into_iter().collect(),
            ground,
        )
        .unwrap();
        let fiber = mu2_fiber(&p, 2);
        assert_eq!(fiber.f_vector(), vec![3, 2]);
        assert_eq!(fiber.len(), 5);
    }

    #[test]
    fn mu1_fibers_have_torus_homology() {
        // rank H_k = C(n-1, k)
        fn binom(n: usize, k: usize) -> usize {
            if k > n {
                return 0;
            }
            let mut r = 1usize;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        }
        for n in 2..=4u32 {
            let f = mu1_fiber(0, 1, n);
            let b = homology_z2(&f);
            let want: Vec<usize> = (0..=(n as usize - 1))
                .map(|k| binom(n as usize - 1, k))
                .collect();
            assert_eq!(b, want, "n={n}");
        }
    }

    #[test]
    fn strata_are_collapsible_balls() {
        for n in 2..=3u32 {
            let ground = Subset::full(n + 1);
            for sigma in enumerate_cyclic_partitions(n, 2) {
                for j in ground.subsets_nonempty() {
                    if !sigma.divides(j) {
                        continue;
                    }
                    let p = stratum_lattice(&sigma, j).unwrap();
                    assert_eq!(p.euler_characteristic(), 1, "sigma={sigma} J={j}");
                    assert!(is_collapsible_to_point(&p, 4000), "sigma={sigma} J={j}");
                    let out = collapse(&p, CollapseMode::Greedy).unwrap();
                    assert_eq!(out.poset.euler_characteristic(), 1);
                }
            }
        }
    }

    #[test]
    fn lower_intervals_of_strata_look_like_polytope_lattices() {
        let n = 3u32;
        let p = stratum_lattice(&sigma0(n), Subset::full(n + 1)).unwrap();
        for i in 0..p.len() {
            if p.cofaces(i).is_empty() && p.dim(i) >= 1 {
                let lower: HashSet<usize> = p.lower_set(i).into_iter().collect();
                let kept: Vec<bool> = (0..p.len()).map(|x| lower.contains(&x)).collect();
                let interval = p.restrict(&kept).unwrap();
                assert_eq!(interval.euler_characteristic(), 1);
                interval.check_diamond_property().unwrap();
            }
        }
    }
}
