//! The explicit collapse machinery for the non-interlacing complexes
//! `L_{sigma,J}`: the interval schedule down to the belt, the belt-to-circle
//! schedule, and the ghost complexes `N_{sigma,J}` with their collapse and
//! merge back onto `L`.

use crate::collapse::{collapse, CollapseMode, CollapseOutcome};
use crate::complexes::{stratum_lattice, CircleLayout};
use crate::cyclic::{interlacing, CyclicPartition, GraphicalCode};
use crate::label::CellLabel;
use crate::poset::FacePoset;
use crate::subset::Subset;
use crate::{Error, Result};
use std::collections::{BTreeMap, HashMap, HashSet};

/// Circle data shared by the collapse schedules of one `(sigma, J)` pair.
#[derive(Clone, Debug)]
pub struct LContext {
    pub sigma: CyclicPartition,
    pub j: Subset,
    pub layout: CircleLayout,
    /// Marked-edge positions available to cells (the positions of `j`).
    pub j_pos: Subset,
}

impl LContext {
    pub fn m(&self) -> u32 {
        self.layout.m()
    }

    pub fn w(&self) -> Subset {
        self.layout.w
    }
}

/// The four distances separating the vertex string from the edge string of a
/// non-interlacing cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distances {
    pub k_e: u32,
    pub k_v: u32,
    pub m_e: u32,
    pub m_v: u32,
}

impl Distances {
    pub fn le_componentwise(&self, other: &Distances) -> bool {
        self.k_e <= other.k_e
            && self.k_v <= other.k_v
            && self.m_e <= other.m_e
            && self.m_v <= other.m_v
    }

    fn sum(&self) -> u32 {
        self.k_e + self.k_v + self.m_e + self.m_v
    }
}

/// First/last markers of the two strings, counterclockwise: the vertex string
/// runs from `v_f` to `v_l`, the edge string from `e_f` to `e_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Markers {
    pub v_f: u32,
    pub v_l: u32,
    pub e_f: u32,
    pub e_l: u32,
}

/// The non-interlacing complex of `(sigma, J)`: cells are pairs of a
/// non-empty marked edge set `I <= J` (stored as elements) and a non-empty
/// marked vertex set `V <= W` (stored as positions) that do not interlace;
/// the facets of a cell remove one mark.
pub fn build_l(sigma: &CyclicPartition, j: Subset) -> Result<(FacePoset, LContext)> {
    if !sigma.divides(j) {
        return Err(Error::EmptyStratum {
            sigma: sigma.to_string(),
            support: j.to_string(),
        });
    }
    let layout = CircleLayout::of(sigma);
    let ctx = LContext {
        sigma: sigma.clone(),
        j,
        j_pos: layout.positions(j),
        layout,
    };
    let m = ctx.m();
    let w = ctx.w();
    let mut cells = Vec::new();
    let mut covers = Vec::new();
    for i_elems in j.subsets_nonempty() {
        let i_pos = ctx.layout.positions(i_elems);
        for v in w.subsets_nonempty() {
            if interlacing(&GraphicalCode::new(m, v, i_pos)) {
                continue;
            }
            let dim = (i_elems.len() + v.len() - 2) as usize;
            let label = CellLabel::NonInter {
                edges: i_elems,
                verts: v,
            };
            cells.push((label.clone(), dim));
            if i_elems.len() >= 2 {
                for e in i_elems.iter() {
                    covers.push((
                        CellLabel::NonInter {
                            edges: i_elems.without(e),
                            verts: v,
                        },
                        label.clone(),
                    ));
                }
            }
            if v.len() >= 2 {
                for x in v.iter() {
                    covers.push((
                        CellLabel::NonInter {
                            edges: i_elems,
                            verts: v.without(x),
                        },
                        label.clone(),
                    ));
                }
            }
        }
    }
    Ok((FacePoset::new(cells, covers)?, ctx))
}

/// Positions strictly between `from` (exclusive) and a point `gap` steps
/// further counterclockwise.
fn run(from: u32, steps: u32, m: u32) -> Subset {
    (1..=steps).map(|d| (from + d) % m).collect()
}

/// Markers and distances of a non-interlacing cell.
pub fn markers_and_distances(
    ctx: &LContext,
    edges_elems: Subset,
    verts: Subset,
) -> (Markers, Distances) {
    let m = ctx.m();
    let i_pos = ctx.layout.positions(edges_elems);
    debug_assert!(!i_pos.is_empty() && !verts.is_empty());
    // the vertex arc containing the whole edge string
    let (v_l, v_f) = if verts.len() == 1 {
        let v = verts.min_elem().unwrap();
        (v, v)
    } else {
        let vs: Vec<u32> = verts.iter().collect();
        let mut found = None;
        for (idx, &v) in vs.iter().enumerate() {
            let next = vs[(idx + 1) % vs.len()];
            let steps = (next + m - v) % m;
            let arc = run(v, steps, m); // edges {v+1, ..., next}
            if i_pos.is_subset_of(arc) {
                found = Some((v, next));
                break;
            }
        }
        found.expect("non-interlacing cell has its edges in one vertex arc")
    };
    // first and last marked edge after v_l
    let mut e_f = None;
    let mut e_l = None;
    for d in 1..=m {
        let p = (v_l + d) % m;
        if i_pos.contains(p) {
            if e_f.is_none() {
                e_f = Some(p);
            }
            e_l = Some(p);
        }
    }
    let (e_f, e_l) = (e_f.unwrap(), e_l.unwrap());
    // gap between vertex v_l and edge e_f: positions {v_l+1, ..., e_f-1}
    let k_gap = run(v_l, (e_f + m - v_l - 1) % m, m);
    // gap between edge e_l and vertex v_f: edges {e_l+1, ..., v_f},
    // vertices {e_l, ..., v_f-1}
    let m_steps = (v_f + m - e_l) % m;
    let m_gap_edges = run(e_l, m_steps, m);
    let m_gap_verts = run(e_l + m - 1, m_steps, m);
    let d = Distances {
        k_e: k_gap.intersect(ctx.j_pos).len(),
        k_v: k_gap.intersect(ctx.w()).len(),
        m_e: m_gap_edges.intersect(ctx.j_pos).len(),
        m_v: m_gap_verts.intersect(ctx.w()).len(),
    };
    (
        Markers { v_f, v_l, e_f, e_l },
        d,
    )
}

/// Free positions of an interval: marked-edge slots strictly inside the edge
/// string and marked-vertex slots strictly inside the vertex string.
fn interval_free_positions(ctx: &LContext, mk: &Markers) -> (Subset, Subset) {
    let m = ctx.m();
    let inner_edges = run(mk.e_f, (mk.e_l + m - mk.e_f) % m, m).without(mk.e_l);
    let free_e = inner_edges.intersect(ctx.j_pos);
    let inner_verts = run(mk.v_f, (mk.v_l + m - mk.v_f) % m, m).without(mk.v_l);
    let free_v = inner_verts.intersect(ctx.w());
    (free_e, free_v)
}

/// Outcome of one schedule phase.
pub struct PhaseOutcome {
    pub poset: FacePoset,
    pub trace: Vec<(CellLabel, CellLabel)>,
}

/// Collapses `L` to its belt by processing the Boolean intervals of constant
/// markers in order of increasing distances; singleton intervals survive.
pub fn collapse_to_belt(l: &FacePoset, ctx: &LContext) -> Result<PhaseOutcome> {
    // group cells by markers
    let mut intervals: BTreeMap<Markers, Vec<usize>> = BTreeMap::new();
    let mut dist_of: BTreeMap<Markers, Distances> = BTreeMap::new();
    for i in 0..l.len() {
        let CellLabel::NonInter { edges, verts } = l.label(i) else {
            return Err(Error::Invalid("not an L-complex cell".into()));
        };
        let (mk, d) = markers_and_distances(ctx, *edges, *verts);
        intervals.entry(mk).or_default().push(i);
        dist_of.insert(mk, d);
    }
    // linear extension of the componentwise order: sort by total, then tuple
    let mut keys: Vec<Markers> = intervals.keys().copied().collect();
    keys.sort_by_key(|mk| {
        let d = dist_of[mk];
        (d.sum(), d, *mk)
    });
    let mut schedule = Vec::new();
    for mk in &keys {
        let members = &intervals[mk];
        let (free_e, free_v) = interval_free_positions(ctx, mk);
        let expected = 1usize << (free_e.len() + free_v.len());
        if members.len() != expected {
            return Err(Error::Invalid(format!(
                "interval {mk:?} has {} cells, expected {expected}",
                members.len()
            )));
        }
        if members.len() == 1 {
            continue; // belt cell
        }
        // toggle position: smallest free edge slot, else smallest free vertex
        enum Toggle {
            Edge(u32),
            Vertex(u32),
        }
        let toggle = if let Some(e) = free_e.min_elem() {
            Toggle::Edge(ctx.layout.elem_at[e as usize])
        } else {
            Toggle::Vertex(free_v.min_elem().unwrap())
        };
        // pair cells with/without the toggle, collapse in descending dim
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut by_label: HashMap<&CellLabel, usize> = HashMap::new();
        for &i in members {
            by_label.insert(l.label(i), i);
        }
        for &i in members {
            let CellLabel::NonInter { edges, verts } = l.label(i) else {
                unreachable!()
            };
            let has = match &toggle {
                Toggle::Edge(e) => edges.contains(*e),
                Toggle::Vertex(v) => verts.contains(*v),
            };
            if has {
                let face = match &toggle {
                    Toggle::Edge(e) => CellLabel::NonInter {
                        edges: edges.without(*e),
                        verts: *verts,
                    },
                    Toggle::Vertex(v) => CellLabel::NonInter {
                        edges: *edges,
                        verts: verts.without(*v),
                    },
                };
                let fi = *by_label
                    .get(&face)
                    .expect("interval is closed under the toggle");
                pairs.push((fi, i));
            }
        }
        pairs.sort_by(|a, b| {
            let da = l.dim(a.1);
            let db = l.dim(b.1);
            db.cmp(&da).then_with(|| l.label(a.1).cmp(l.label(b.1)))
        });
        for (f, c) in pairs {
            schedule.push((l.label(f).clone(), l.label(c).clone()));
        }
    }
    let CollapseOutcome { poset, removed } = collapse(l, CollapseMode::Schedule(schedule))?;
    Ok(PhaseOutcome {
        poset,
        trace: removed,
    })
}

/// The predicted circle subcomplex for non-degenerate inputs: vertex cells at
/// distance `(k_e, k_v) <= (1, 1)` and edge cells at distance `(0, 0)`.
pub fn circle_prediction(ctx: &LContext, belt: &FacePoset) -> (Vec<CellLabel>, Vec<CellLabel>) {
    let mut verts = Vec::new();
    let mut edges = Vec::new();
    for i in 0..belt.len() {
        let CellLabel::NonInter { edges: ie, verts: vv } = belt.label(i) else {
            continue;
        };
        let (_, d) = markers_and_distances(ctx, *ie, *vv);
        match belt.dim(i) {
            0 if d.k_e <= 1 && d.k_v <= 1 => verts.push(belt.label(i).clone()),
            1 if d.k_e == 0 && d.k_v == 0 => edges.push(belt.label(i).clone()),
            _ => {}
        }
    }
    (verts, edges)
}

/// Collapses the belt to a one-dimensional circle: squares are paired with a
/// free boundary edge in order of increasing `(m_e, m_v)`, and the remaining
/// trees are absorbed greedily.  The result must be a single cycle.
pub fn belt_to_circle(belt: &FacePoset, ctx: &LContext) -> Result<PhaseOutcome> {
    let (pred_verts, pred_edges) = circle_prediction(ctx, belt);
    let predicted: HashSet<&CellLabel> = pred_verts.iter().chain(pred_edges.iter()).collect();
    let mut squares: Vec<usize> = (0..belt.len()).filter(|&i| belt.dim(i) == 2).collect();
    squares.sort_by_key(|&i| {
        let CellLabel::NonInter { edges, verts } = belt.label(i) else {
            unreachable!()
        };
        let (_, d) = markers_and_distances(ctx, *edges, *verts);
        (d.m_e + d.m_v, d.m_e, d.m_v, belt.label(i).clone())
    });
    // simulate to build the schedule
    let mut alive = vec![true; belt.len()];
    let mut up_alive: Vec<usize> = (0..belt.len()).map(|i| belt.cofaces(i).len()).collect();
    let mut schedule = Vec::new();
    for &sq in &squares {
        // free boundary edges of the square, preferring non-circle ones
        let mut candidates: Vec<usize> = belt
            .facets(sq)
            .iter()
            .map(|&f| f as usize)
            .filter(|&f| alive[f] && up_alive[f] == 1)
            .collect();
        candidates.sort_by(|&a, &b| {
            let a_in = predicted.contains(belt.label(a));
            let b_in = predicted.contains(belt.label(b));
            a_in.cmp(&b_in).then_with(|| belt.label(a).cmp(belt.label(b)))
        });
        let Some(&edge) = candidates.first() else {
            return Err(Error::CollapseViolation {
                face: "<none>".into(),
                coface: belt.label(sq).to_string(),
                actual: belt
                    .facets(sq)
                    .iter()
                    .filter(|&&f| alive[f as usize])
                    .map(|&f| belt.label(f as usize).to_string())
                    .collect(),
            });
        };
        alive[sq] = false;
        alive[edge] = false;
        for &d in belt.facets(sq) {
            up_alive[d as usize] -= 1;
        }
        for &d in belt.facets(edge) {
            up_alive[d as usize] -= 1;
        }
        schedule.push((belt.label(edge).clone(), belt.label(sq).clone()));
    }
    let CollapseOutcome { poset: after, removed } =
        collapse(belt, CollapseMode::Schedule(schedule))?;
    // trim hanging trees; a cycle has no free pairs, so greedy stops there
    let CollapseOutcome {
        poset: circle,
        removed: trim,
    } = collapse(&after, CollapseMode::Greedy)?;
    let mut trace = removed;
    trace.extend(trim);
    // postcondition: a single cycle
    if circle.max_dim() != 1 || circle.euler_characteristic() != 0 {
        return Err(Error::Invalid(format!(
            "belt did not collapse to a circle: f = {:?}",
            circle.f_vector()
        )));
    }
    for i in 0..circle.len() {
        if circle.dim(i) == 0 && circle.cofaces(i).len() != 2 {
            return Err(Error::Invalid(
                "circle has a vertex of degree other than two".into(),
            ));
        }
    }
    Ok(PhaseOutcome {
        poset: circle,
        trace,
    })
}

/// The ghost element used to extend the ground set `{0,...,n}`.
pub fn ghost_element(sigma: &CyclicPartition) -> u32 {
    sigma.ground().max_elem().unwrap() + 1
}

/// The ghost complex: the union over all decyclizations of `sigma` of the
/// stratum lattices of `(<g, decyclization>, J u {g})`, glued along shared
/// labels.  Labels whose partition degenerates to `(g | everything)` carry
/// the boundary position of the break as an anchor, because the copies from
/// different decyclizations are distinct cells.
pub fn build_ghost_complex(sigma: &CyclicPartition, j: Subset) -> Result<FacePoset> {
    if !sigma.divides(j) {
        return Err(Error::EmptyStratum {
            sigma: sigma.to_string(),
            support: j.to_string(),
        });
    }
    let g = ghost_element(sigma);
    let ghost_part = Subset::singleton(g);
    let j_hat = j.with(g);
    let ground_hat = sigma.ground().with(g);
    let layout = CircleLayout::of(sigma);
    let k = sigma.num_parts();
    // boundary position after part p in the reference layout
    let mut boundary_pos = Vec::with_capacity(k);
    let mut acc = 0u32;
    for part in sigma.parts() {
        acc += part.len();
        boundary_pos.push(acc - 1);
    }
    let _ = &layout;
    let is_vertex_label = |p: &CyclicPartition| {
        p.num_parts() == 2 && p.parts().iter().any(|q| *q == ghost_part)
    };
    let mut cells: HashMap<CellLabel, usize> = HashMap::new();
    let mut covers: HashSet<(CellLabel, CellLabel)> = HashSet::new();
    for (t, dec) in sigma.decyclizations().iter().enumerate() {
        // ghost inserted at the break before the chosen first part
        let anchor = boundary_pos[(t + k - 1) % k];
        let mut parts = Vec::with_capacity(k + 1);
        parts.push(ghost_part);
        parts.extend_from_slice(dec);
        let top = CyclicPartition::new(parts, ground_hat)?;
        let lattice = stratum_lattice(&top, j_hat)?;
        let relabel = |l: &CellLabel| -> CellLabel {
            let CellLabel::Stratum { sigma: s, support } = l else {
                unreachable!()
            };
            CellLabel::Ghost {
                sigma: s.clone(),
                support: *support,
                anchor: is_vertex_label(s).then_some(anchor),
            }
        };
        for (l, d) in lattice.cells() {
            let nl = relabel(l);
            if let Some(&prev) = cells.get(&nl) {
                debug_assert_eq!(prev, *d);
            } else {
                cells.insert(nl, *d);
            }
        }
        for (f, c) in lattice.cover_pairs() {
            covers.insert((relabel(&f), relabel(&c)));
        }
    }
    let mut cell_vec: Vec<(CellLabel, usize)> = cells.into_iter().collect();
    cell_vec.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    let mut cover_vec: Vec<(CellLabel, CellLabel)> = covers.into_iter().collect();
    cover_vec.sort();
    FacePoset::new(cell_vec, cover_vec)
}

/// Classification of ghost-complex cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GhostClass {
    /// The ghost is absent from the support.
    A,
    /// The ghost is in the support and the partition still divides the
    /// support without it.
    B,
    /// The ghost is in the support and is needed for the division.
    C,
}

pub fn classify_ghost_cell(label: &CellLabel, g: u32) -> GhostClass {
    let CellLabel::Ghost { sigma, support, .. } = label else {
        panic!("not a ghost cell")
    };
    if !support.contains(g) {
        GhostClass::A
    } else if sigma.divides(support.without(g)) {
        GhostClass::B
    } else {
        GhostClass::C
    }
}

/// Outcome of the ghost collapse.
pub struct GhostReport {
    pub total_cells: usize,
    pub a_count: usize,
    pub b_count: usize,
    pub c_count: usize,
    pub trace: Vec<(CellLabel, CellLabel)>,
    /// The merged complex, relabeled as non-interlacing cells.
    pub merged: FacePoset,
    /// True iff the merged complex equals `build_l(sigma, J)` on the nose.
    pub merged_equals_l: bool,
}

/// Collapses the a/b pairs of the ghost complex (largest dimension first),
/// merges the remaining c-cells by deleting the ghost, and compares the
/// result with the non-interlacing complex.
pub fn ghost_collapse(
    n_complex: &FacePoset,
    sigma: &CyclicPartition,
    j: Subset,
) -> Result<GhostReport> {
    let g = ghost_element(sigma);
    let layout = CircleLayout::of(sigma);
    let mut a_cells: HashMap<(CyclicPartition, Subset), usize> = HashMap::new();
    let mut b_cells: Vec<usize> = Vec::new();
    let mut c_cells: Vec<usize> = Vec::new();
    for i in 0..n_complex.len() {
        match classify_ghost_cell(n_complex.label(i), g) {
            GhostClass::A => {
                let CellLabel::Ghost { sigma: s, support, .. } = n_complex.label(i) else {
                    unreachable!()
                };
                a_cells.insert((s.clone(), *support), i);
            }
            GhostClass::B => b_cells.push(i),
            GhostClass::C => c_cells.push(i),
        }
    }
    // bijection: a b-cell pairs with the a-cell of the same partition and the
    // support without the ghost; the pair differs by one dimension
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(b_cells.len());
    for &bi in &b_cells {
        let CellLabel::Ghost { sigma: s, support, .. } = n_complex.label(bi) else {
            unreachable!()
        };
        let key = (s.clone(), support.without(g));
        let Some(&ai) = a_cells.get(&key) else {
            return Err(Error::Invalid(format!(
                "b-cell {} has no a-partner",
                n_complex.label(bi)
            )));
        };
        if n_complex.dim(ai) + 1 != n_complex.dim(bi) {
            return Err(Error::Invalid(format!(
                "a/b pair ({}, {}) is not dimension-shifting",
                n_complex.label(ai),
                n_complex.label(bi)
            )));
        }
        pairs.push((ai, bi));
    }
    if pairs.len() != a_cells.len() {
        return Err(Error::Invalid(format!(
            "a/b matching is not a bijection: {} a-cells, {} b-cells",
            a_cells.len(),
            pairs.len()
        )));
    }
    // collapse in descending dimension of the free face
    pairs.sort_by(|x, y| {
        n_complex
            .dim(y.0)
            .cmp(&n_complex.dim(x.0))
            .then_with(|| n_complex.label(x.0).cmp(n_complex.label(y.0)))
    });
    let schedule: Vec<(CellLabel, CellLabel)> = pairs
        .iter()
        .map(|&(a, b)| (n_complex.label(a).clone(), n_complex.label(b).clone()))
        .collect();
    let CollapseOutcome { poset: c_poset, removed } =
        collapse(n_complex, CollapseMode::Schedule(schedule))?;

    // merge: delete the ghost from partition and support
    let merge_label = |l: &CellLabel| -> Result<CellLabel> {
        let CellLabel::Ghost { sigma: s, support, anchor } = l else {
            unreachable!()
        };
        let edges = support.without(g);
        let reduced = s
            .delete_element(g)
            .ok_or_else(|| Error::Invalid("ghost deletion emptied the partition".into()))?;
        let verts = if reduced.num_parts() >= 2 {
            layout.vertex_set_of_coarsening(sigma, &reduced)
        } else {
            Subset::singleton(anchor.ok_or_else(|| {
                Error::Invalid(format!("degenerate cell {l} lacks an anchor"))
            })?)
        };
        Ok(CellLabel::NonInter { edges, verts })
    };
    let mut merged_dim: BTreeMap<CellLabel, usize> = BTreeMap::new();
    let mut image_of: Vec<CellLabel> = Vec::with_capacity(c_poset.len());
    for i in 0..c_poset.len() {
        let ml = merge_label(c_poset.label(i))?;
        let CellLabel::NonInter { edges, verts } = &ml else {
            unreachable!()
        };
        let dim = (edges.len() + verts.len() - 2) as usize;
        merged_dim.insert(ml.clone(), dim);
        image_of.push(ml);
    }
    // quotient covers: the images of c-covers whose endpoints differ, at
    // adjacent merged dimensions; monotonicity of the merge map is enforced
    let mut merged_covers: HashSet<(CellLabel, CellLabel)> = HashSet::new();
    for ci in 0..c_poset.len() {
        for &fi in c_poset.facets(ci) {
            let (lf, lc) = (&image_of[fi as usize], &image_of[ci]);
            if lf == lc {
                continue;
            }
            let (CellLabel::NonInter { edges: ef, verts: vf }, CellLabel::NonInter { edges: ec, verts: vc }) =
                (lf, lc)
            else {
                unreachable!()
            };
            if !(ef.is_subset_of(*ec) && vf.is_subset_of(*vc)) {
                return Err(Error::Invalid(format!(
                    "merge map is not monotone on cover ({}, {})",
                    c_poset.label(fi as usize),
                    c_poset.label(ci)
                )));
            }
            if merged_dim[lf] + 1 == merged_dim[lc] {
                merged_covers.insert((lf.clone(), lc.clone()));
            }
        }
    }
    let merged = FacePoset::new(
        merged_dim.iter().map(|(l, d)| (l.clone(), *d)).collect(),
        merged_covers.into_iter().collect(),
    )?;
    // the merged complex must be the non-interlacing complex on the nose
    let (l_complex, _) = build_l(sigma, j)?;
    let same_cells = merged.len() == l_complex.len()
        && (0..merged.len()).all(|i| l_complex.index_of(merged.label(i)) == Some(i));
    let same_covers = merged.cover_pairs() == l_complex.cover_pairs();
    Ok(GhostReport {
        total_cells: n_complex.len(),
        a_count: a_cells.len(),
        b_count: b_cells.len(),
        c_count: c_cells.len(),
        trace: removed,
        merged,
        merged_equals_l: same_cells && same_covers,
    })
}
