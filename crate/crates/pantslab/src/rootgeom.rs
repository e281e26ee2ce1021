//! Exact rational geometry of the A_n weight world: fundamental weights,
//! permutahedron facets and vertices, the zonotope, and the equations of the
//! coamoeba-skeleton faces.
//!
//! Angle-valued quantities store the coefficient of pi, so every identity in
//! this module is checked with zero tolerance.  Homogeneous vectors are
//! defined modulo the all-ones vector; torus points additionally modulo
//! `2*pi` times integer vectors.

use crate::cyclic::CyclicPartition;
use crate::subset::Subset;
use crate::{Error, Result};
use num::{BigInt, BigRational, Signed, Zero};
use std::fmt;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coordinate vector of arbitrary-precision rationals.  When `homogeneous`,
/// two vectors are equal iff they differ by a constant vector.
#[derive(Clone, Debug)]
pub struct RatVector {
    pub coords: Vec<BigRational>,
    pub homogeneous: bool,
}

impl RatVector {
    pub fn affine(coords: Vec<BigRational>) -> Self {
        RatVector {
            coords,
            homogeneous: false,
        }
    }

    pub fn homogeneous(coords: Vec<BigRational>) -> Self {
        RatVector {
            coords,
            homogeneous: true,
        }
    }

    pub fn zeros(len: usize, homogeneous: bool) -> Self {
        RatVector {
            coords: vec![BigRational::zero(); len],
            homogeneous,
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dot(&self, other: &RatVector) -> BigRational {
        assert_eq!(self.len(), other.len());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn sum(&self) -> BigRational {
        self.coords.iter().sum()
    }

    /// Representative with first coordinate zero (for homogeneous vectors).
    pub fn anchored(&self) -> Vec<BigRational> {
        if !self.homogeneous || self.coords.is_empty() {
            return self.coords.clone();
        }
        let c0 = self.coords[0].clone();
        self.coords.iter().map(|c| c - &c0).collect()
    }

    /// Canonical representative of the induced torus point: anchor the first
    /// coordinate at zero, then reduce the rest into `[0, 2)` (units of pi).
    pub fn torus_canonical(&self) -> Vec<BigRational> {
        let two = rat(2, 1);
        self.anchored()
            .into_iter()
            .skip(1)
            .map(|c| {
                let q = (&c / &two).floor();
                c - q * &two
            })
            .collect()
    }

    /// Equality as points of the quotient modulo constant vectors.
    pub fn eq_homogeneous(&self, other: &RatVector) -> bool {
        self.len() == other.len() && self.anchored() == other.anchored()
    }

    /// Equality as torus points (modulo constants and `2*pi` integer vectors).
    pub fn eq_torus(&self, other: &RatVector) -> bool {
        self.len() == other.len() && self.torus_canonical() == other.torus_canonical()
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Ordered 2-partition of the ground set into non-empty halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoPartition {
    pub minus: Subset,
    pub plus: Subset,
}

impl TwoPartition {
    pub fn new(minus: Subset, plus: Subset, ground: Subset) -> Result<Self> {
        if minus.is_empty() || plus.is_empty() || minus.meets(plus) || minus.union(plus) != ground
        {
            return Err(Error::Invalid(format!(
                "not a 2-partition of {ground}: {minus} | {plus}"
            )));
        }
        Ok(TwoPartition { minus, plus })
    }

    pub fn swap(self) -> Self {
        TwoPartition {
            minus: self.plus,
            plus: self.minus,
        }
    }
}

/// All `2^(n+1) - 2` ordered proper 2-partitions, ascending by the bitmask of
/// the plus part.
pub fn two_partitions(n: u32) -> Vec<TwoPartition> {
    let ground = Subset::full(n + 1);
    (1..ground.bits())
        .map(|bits| {
            let plus = Subset::from_bits(bits);
            TwoPartition {
                minus: ground.minus(plus),
                plus,
            }
        })
        .collect()
}

/// Affine functional with coefficients summing to zero (well-defined on the
/// quotient modulo constants) and an angle bound in units of pi.
#[derive(Clone, Debug)]
pub struct AffineFunctional {
    pub coeffs: RatVector,
    pub bound: BigRational,
}

impl AffineFunctional {
    pub fn eval(&self, v: &RatVector) -> BigRational {
        self.coeffs.dot(v)
    }

    /// Residual `eval(v) - bound`.
    pub fn residual(&self, v: &RatVector) -> BigRational {
        self.eval(v) - &self.bound
    }

    /// Residual reduced modulo `2*pi` into `(-1, 1]` in units of pi; exact
    /// zero means the equality holds on the torus.
    pub fn residual_mod_2pi(&self, v: &RatVector) -> BigRational {
        let two = rat(2, 1);
        let r = self.residual(v);
        let q = ((&r + rat(1, 1)) / &two).floor();
        r - q * two
    }
}

/// The fundamental weight of a 2-partition:
/// `w = (r/(n+1)) sum_{j in plus} e_j - (s/(n+1)) sum_{i in minus} e_i`
/// with `r = |minus|`, `s = |plus|`.
pub fn fundamental_weight(p: &TwoPartition) -> RatVector {
    let len = p.minus.union(p.plus).len();
    let r = p.minus.len() as i64;
    let s = p.plus.len() as i64;
    let np1 = len as i64;
    let mut coords = vec![BigRational::zero(); len as usize];
    for j in p.plus.iter() {
        coords[j as usize] = rat(r, np1);
    }
    for i in p.minus.iter() {
        coords[i as usize] = rat(-s, np1);
    }
    RatVector::affine(coords)
}

/// Facet inequality of the central Voronoi tile: the weight functional with
/// bound `(rs/(n+1)) * pi`.
pub fn perm_facet(p: &TwoPartition) -> AffineFunctional {
    let w = fundamental_weight(p);
    let r = p.minus.len() as i64;
    let s = p.plus.len() as i64;
    let np1 = r + s;
    AffineFunctional {
        coeffs: w,
        bound: rat(r * s, np1),
    }
}

/// Permutahedron vertex of a linear order: position `t` of the order gets
/// angle `(2t+1)/(n+1)` in units of pi.
pub fn perm_vertex(order: &[u32]) -> RatVector {
    let np1 = order.len() as i64;
    let mut coords = vec![BigRational::zero(); order.len()];
    for (t, &e) in order.iter().enumerate() {
        coords[e as usize] = rat(2 * t as i64 + 1, np1);
    }
    RatVector::homogeneous(coords)
}

/// Zonotope vertex of a 2-partition: angle pi on the plus part, 0 on the
/// minus part.
pub fn zonotope_vertex(p: &TwoPartition) -> RatVector {
    let len = p.minus.union(p.plus).len() as usize;
    let mut coords = vec![BigRational::zero(); len];
    for j in p.plus.iter() {
        coords[j as usize] = rat(1, 1);
    }
    RatVector::homogeneous(coords)
}

/// Exact verification that every zonotope vertex satisfies every facet
/// inequality of the central tile, with exactly one equality, attained at the
/// facet of the same 2-partition.
#[derive(Debug)]
pub struct ZonotopeReport {
    pub n: u32,
    pub vertices: usize,
    pub facets: usize,
    pub violation: Option<String>,
}

impl ZonotopeReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn check_zonotope_in_perm(n: u32) -> ZonotopeReport {
    let parts = two_partitions(n);
    let facets: Vec<(TwoPartition, AffineFunctional)> =
        parts.iter().map(|p| (*p, perm_facet(p))).collect();
    let mut violation = None;
    'outer: for vp in &parts {
        let v = zonotope_vertex(vp);
        let mut equalities = 0usize;
        for (fp, f) in &facets {
            let r = f.residual(&v);
            if r.is_positive() {
                violation = Some(format!(
                    "vertex {vp:?} violates facet {fp:?}: residual {r}"
                ));
                break 'outer;
            }
            if r.is_zero() {
                equalities += 1;
                if fp != vp {
                    violation = Some(format!("vertex {vp:?} meets foreign facet {fp:?}"));
                    break 'outer;
                }
            }
        }
        if equalities != 1 {
            violation = Some(format!("vertex {vp:?} has {equalities} equalities"));
            break;
        }
    }
    ZonotopeReport {
        n,
        vertices: parts.len(),
        facets: facets.len(),
        violation,
    }
}

/// Barycenter of the skeleton face of a cyclic partition, as a torus point in
/// units of pi: part `s` gets `2*gamma_s/(n+1)` where
/// `gamma_s = |I_1| + ... + |I_{s-1}| + |I_s|/2`.
pub fn sigma_barycenter(sigma: &CyclicPartition) -> RatVector {
    let ground = sigma.ground();
    let np1 = ground.len() as i64;
    let mut coords = vec![BigRational::zero(); np1 as usize];
    let mut prefix = BigRational::zero();
    for part in sigma.parts() {
        let half = rat(part.len() as i64, 2);
        let gamma = &prefix + &half;
        let value = gamma * rat(2, np1);
        for e in part.iter() {
            coords[e as usize] = value.clone();
        }
        prefix += rat(part.len() as i64, 1);
    }
    RatVector::homogeneous(coords)
}

/// The `k` equalities cutting out the skeleton face of `sigma`: consecutive
/// average arguments differ by `(|I_s| + |I_{s+1}|)/(n+1)` in units of pi
/// (indices cyclic, equalities read modulo 2*pi).
pub fn sigma_face_equations(sigma: &CyclicPartition) -> Result<Vec<AffineFunctional>> {
    let k = sigma.num_parts();
    if k < 2 {
        return Err(Error::Invalid(
            "face equations need at least two parts".into(),
        ));
    }
    let ground = sigma.ground();
    let np1 = ground.len() as i64;
    let len = np1 as usize;
    let mut out = Vec::with_capacity(k);
    for s in 0..k {
        let cur = sigma.parts()[s];
        let next = sigma.parts()[(s + 1) % k];
        let mut coeffs = vec![BigRational::zero(); len];
        for e in next.iter() {
            coeffs[e as usize] = rat(1, next.len() as i64);
        }
        for e in cur.iter() {
            coeffs[e as usize] -= rat(1, cur.len() as i64);
        }
        out.push(AffineFunctional {
            coeffs: RatVector::homogeneous(coeffs),
            bound: rat((cur.len() + next.len()) as i64, np1),
        });
    }
    Ok(out)
}

/// The bounding inequalities of a skeleton face: for every part `I_s` and
/// every non-empty proper subset `I'`, the average argument over `I'` differs
/// from the one over `I_s` by at most `(|I_s| - |I'|)/(n+1)` in units of pi.
/// Each subset contributes the pair `(functional, negated functional)`.
pub fn sigma_face_inequalities(sigma: &CyclicPartition) -> Vec<AffineFunctional> {
    let ground = sigma.ground();
    let np1 = ground.len() as i64;
    let len = np1 as usize;
    let mut out = Vec::new();
    for part in sigma.parts() {
        if part.len() < 2 {
            continue;
        }
        for sub in part.subsets_nonempty() {
            if sub == *part {
                continue;
            }
            let mut coeffs = vec![BigRational::zero(); len];
            for e in sub.iter() {
                coeffs[e as usize] = rat(1, sub.len() as i64);
            }
            for e in part.iter() {
                coeffs[e as usize] -= rat(1, part.len() as i64);
            }
            let bound = rat((part.len() - sub.len()) as i64, np1);
            let neg = AffineFunctional {
                coeffs: RatVector::homogeneous(coeffs.iter().map(|c| -c).collect()),
                bound: bound.clone(),
            };
            out.push(AffineFunctional {
                coeffs: RatVector::homogeneous(coeffs),
                bound,
            });
            out.push(neg);
        }
    }
    out
}

/// Renders a rational as a decimal string with `precision` fractional digits
/// (round half away from zero).
pub fn to_decimal(r: &BigRational, precision: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    let scale = BigInt::from(10u32).pow(precision as u32);
    let scaled = (&a * BigRational::from_integer(scale.clone())
        + BigRational::new(BigInt::from(1), BigInt::from(2)))
    .floor()
    .to_integer();
    let ip = &scaled / &scale;
    let fp = &scaled % &scale;
    if precision == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp:0>width$}", width = precision)
    }
}

/// Geometry of a convex polytope prepared for OFF export: exact vertex
/// coordinates in an affine chart and facet polygons as vertex index cycles.
pub struct PolytopeGeometry {
    /// Vertex coordinates (sum-zero representative, first coordinate dropped).
    pub vertices: Vec<Vec<BigRational>>,
    /// Facet cycles as indices into `vertices`.
    pub faces: Vec<Vec<usize>>,
}

impl PolytopeGeometry {
    pub fn edge_count(&self) -> usize {
        self.faces.iter().map(|f| f.len()).sum::<usize>() / 2
    }
}

/// Sum-zero representative with the first coordinate dropped: an affine chart
/// of the quotient modulo constants.
fn chart(v: &RatVector) -> Vec<BigRational> {
    let n = v.len();
    let mean = v.sum() / BigRational::from_integer(BigInt::from(n as i64));
    v.coords.iter().skip(1).map(|c| c - &mean).collect()
}

/// Orders the vertex set of a 2-face into a polygon by walking the adjacency
/// relation `adj`; starts at the smallest index, first step to the smaller
/// neighbor.
fn walk_cycle(members: &[usize], adj: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let start = *members.iter().min().unwrap();
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let mut nexts: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&m| m != cur && m != prev && adj(cur, m))
            .collect();
        nexts.sort_unstable();
        let next = nexts[0];
        if next == start {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    cycle
}

/// The permutahedron for `n = 3` (24 vertices, 14 facets) in an affine chart.
pub fn perm_geometry_n3() -> PolytopeGeometry {
    use itertools::Itertools;
    let n = 3u32;
    let orders: Vec<Vec<u32>> = (0..=n).permutations((n + 1) as usize).collect();
    let vertices: Vec<RatVector> = orders.iter().map(|o| perm_vertex(o)).collect();
    let coords: Vec<Vec<BigRational>> = vertices.iter().map(chart).collect();
    // vertex lies on facet (minus, plus) iff minus is a prefix of the order
    let on_facet = |order: &[u32], p: &TwoPartition| -> bool {
        let r = p.minus.len() as usize;
        order[..r].iter().copied().collect::<Subset>() == p.minus
    };
    // two vertices of a facet are adjacent iff the orders differ by one
    // adjacent transposition
    let adjacent = |a: &[u32], b: &[u32]| -> bool {
        let diffs: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
        diffs.len() == 2
            && diffs[1] == diffs[0] + 1
            && a[diffs[0]] == b[diffs[1]]
            && a[diffs[1]] == b[diffs[0]]
    };
    let mut faces = Vec::new();
    for p in two_partitions(n) {
        let members: Vec<usize> = (0..orders.len())
            .filter(|&i| on_facet(&orders[i], &p))
            .collect();
        faces.push(walk_cycle(&members, |x, y| adjacent(&orders[x], &orders[y])));
    }
    PolytopeGeometry {
        vertices: coords,
        faces,
    }
}

/// The zonotope for `n = 3` (rhombic dodecahedron: 14 vertices, 12 rhombi)
/// in an affine chart.
pub fn zonotope_geometry_n3() -> PolytopeGeometry {
    let n = 3u32;
    let parts = two_partitions(n);
    let coords: Vec<Vec<BigRational>> =
        parts.iter().map(|p| chart(&zonotope_vertex(p))).collect();
    let index_of = |plus: Subset| -> usize { parts.iter().position(|p| p.plus == plus).unwrap() };
    let ground = Subset::full(n + 1);
    let mut faces = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            let rest = ground.without(i).without(j);
            for k_plus in rest.subsets_nonempty() {
                if k_plus == rest {
                    continue;
                }
                // quad: flip i and j one at a time
                let cycle = [
                    k_plus,
                    k_plus.with(i),
                    k_plus.with(i).with(j),
                    k_plus.with(j),
                ];
                faces.push(cycle.iter().map(|&pl| index_of(pl)).collect());
            }
        }
    }
    PolytopeGeometry {
        vertices: coords,
        faces,
    }
}
