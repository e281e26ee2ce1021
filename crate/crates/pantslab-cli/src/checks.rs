//! Check implementations and the verification runner.

use crate::estimate::estimate_cells;
use crate::CheckKind;
use pantslab::collapse::is_collapsible_to_point;
use pantslab::complexes::{
    mu1_fiber, mu2_fiber, mu2_fiber_model, ober_complex, ober_stratum_lattice, skeleton_s,
    skeleton_sigma, stratum_lattice, verify_cyclic_polytope_duality,
};
use pantslab::cyclic::{enumerate_cyclic_partitions, full_cycle};
use pantslab::engine::{belt_to_circle, build_ghost_complex, build_l, collapse_to_belt, ghost_collapse};
use pantslab::homology::{homology_z2, order_complex};
use pantslab::iso::{is_isomorphic, verify_bijection, Orientation};
use pantslab::label::CellLabel;
use pantslab::rootgeom::{check_zonotope_in_perm, two_partitions};
use pantslab::subset::Subset;
use pantslab::FacePoset;
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

pub struct CheckRecord {
    pub name: &'static str,
    pub n: u32,
    pub status: Status,
    /// Failure witness or skip reason.
    pub detail: Option<String>,
    pub millis: u128,
}

impl CheckRecord {
    pub fn stdout_line(&self) -> String {
        match (&self.status, &self.detail) {
            (Status::Pass, _) => format!("check={} n={} status=pass", self.name, self.n),
            (Status::Fail, Some(w)) => {
                format!("check={} n={} status=fail witness={}", self.name, self.n, w)
            }
            (Status::Fail, None) => format!("check={} n={} status=fail", self.name, self.n),
            (Status::Skipped, Some(r)) => {
                format!("check={} n={} status=skipped reason={}", self.name, self.n, r)
            }
            (Status::Skipped, None) => {
                format!("check={} n={} status=skipped", self.name, self.n)
            }
        }
    }
}

/// Runs the selected checks over the given sizes.  Tasks are independent and
/// may fan out over `jobs` threads; the output order is the task order, so
/// the result is parallelism-invariant.
pub fn run_all(
    ns: &[u32],
    kinds: &[CheckKind],
    max_cells: u64,
    force: bool,
    jobs: usize,
) -> Vec<CheckRecord> {
    let tasks: Vec<(CheckKind, u32)> = ns
        .iter()
        .flat_map(|&n| kinds.iter().map(move |&k| (k, n)))
        .collect();
    let runner = |&(kind, n): &(CheckKind, u32)| -> CheckRecord {
        let name = kind.name();
        if kind == CheckKind::Duality && n < 2 {
            return CheckRecord {
                name,
                n,
                status: Status::Skipped,
                detail: Some("cyclic-polytope-duality-needs-n>=2".into()),
                millis: 0,
            };
        }
        let est = estimate_cells(name, n);
        if !force && est > max_cells {
            return CheckRecord {
                name,
                n,
                status: Status::Skipped,
                detail: Some(format!("estimated-cells={est}>bound={max_cells}")),
                millis: 0,
            };
        }
        let start = Instant::now();
        let outcome = run_one(kind, n);
        let millis = start.elapsed().as_millis();
        match outcome {
            Ok(()) => CheckRecord {
                name,
                n,
                status: Status::Pass,
                detail: None,
                millis,
            },
            Err(witness) => CheckRecord {
                name,
                n,
                status: Status::Fail,
                detail: Some(witness),
                millis,
            },
        }
    };
    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            tasks.par_iter().map(runner).collect()
        })
    } else {
        tasks.iter().map(runner).collect()
    }
}

fn run_one(kind: CheckKind, n: u32) -> Result<(), String> {
    match kind {
        CheckKind::Duality => check_duality(n),
        CheckKind::Zonotope => check_zonotope(n),
        CheckKind::Dims => check_dims(n),
        CheckKind::FibersMu1 => check_fibers_mu1(n),
        CheckKind::FibersMu2 => check_fibers_mu2(n),
        CheckKind::Circle => check_circle(n),
        CheckKind::Ghost => check_ghost(n),
        CheckKind::OberHomology => check_ober_homology(n),
        CheckKind::Regularity => check_regularity(n),
        CheckKind::All => unreachable!("expanded by the caller"),
    }
}

fn check_duality(n: u32) -> Result<(), String> {
    let rep = verify_cyclic_polytope_duality(n).map_err(|e| e.to_string())?;
    if rep.ok() {
        Ok(())
    } else {
        Err(rep.failure.unwrap_or_default())
    }
}

fn check_zonotope(n: u32) -> Result<(), String> {
    let rep = check_zonotope_in_perm(n);
    if rep.ok() {
        Ok(())
    } else {
        Err(rep.violation.unwrap_or_default())
    }
}

fn check_dims(n: u32) -> Result<(), String> {
    // spine: dim = |J \ I|
    let s = skeleton_s(n);
    for i in 0..s.len() {
        let CellLabel::SFace { eq, support } = s.label(i) else {
            return Err("unexpected spine label".into());
        };
        if s.dim(i) != support.minus(*eq).len() as usize {
            return Err(format!("spine dim mismatch at {}", s.label(i)));
        }
    }
    // skeleton: dim = n + 1 - |sigma|
    let sig = skeleton_sigma(n);
    for i in 0..sig.len() {
        let CellLabel::Sigma(p) = sig.label(i) else {
            return Err("unexpected skeleton label".into());
        };
        if sig.dim(i) != (n as usize + 1) - p.num_parts() {
            return Err(format!("skeleton dim mismatch at {}", sig.label(i)));
        }
    }
    // stratum: dim = |sigma| + |J| - 4; ober stratum: additive split
    let sigma0 = full_cycle(n);
    let full = Subset::full(n + 1);
    let stratum = stratum_lattice(&sigma0, full).map_err(|e| e.to_string())?;
    for i in 0..stratum.len() {
        let CellLabel::Stratum { sigma, support } = stratum.label(i) else {
            return Err("unexpected stratum label".into());
        };
        if stratum.dim(i) + 4 != sigma.num_parts() + support.len() as usize {
            return Err(format!("stratum dim mismatch at {}", stratum.label(i)));
        }
    }
    let ober_stratum = ober_stratum_lattice(&sigma0, full).map_err(|e| e.to_string())?;
    for i in 0..ober_stratum.len() {
        let CellLabel::Product(a, b) = ober_stratum.label(i) else {
            return Err("unexpected ober stratum label".into());
        };
        let (CellLabel::Dsd { min: i_set, max: jp }, CellLabel::Dsd { min: tau, max: sp }) =
            (a.as_ref(), b.as_ref())
        else {
            return Err("unexpected ober stratum factors".into());
        };
        let want = (jp.len() - i_set.len()) as usize + (sp.len() - tau.len()) as usize;
        if ober_stratum.dim(i) != want {
            return Err(format!("ober stratum dim mismatch at {}", ober_stratum.label(i)));
        }
    }
    // the top dimension of the ober complex is reported, not asserted
    let ober = ober_complex(n).map_err(|e| e.to_string())?;
    let _reported_top_dim = ober.max_dim();
    Ok(())
}

fn check_fibers_mu1(n: u32) -> Result<(), String> {
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
    let want: Vec<usize> = (0..=(n as usize).saturating_sub(1))
        .map(|k| binom(n as usize - 1, k))
        .collect();
    for i in 0..=n {
        for j in (i + 1)..=n {
            let f = mu1_fiber(i, j, n);
            let got = homology_z2(&f);
            if got != want {
                return Err(format!("fiber over ({i},{j}) has betti {got:?}, want {want:?}"));
            }
        }
    }
    Ok(())
}

fn check_fibers_mu2(n: u32) -> Result<(), String> {
    for p in two_partitions(n) {
        if !p.minus.contains(0) {
            continue; // each unordered pair once
        }
        let fiber = mu2_fiber(&p, n);
        let model = mu2_fiber_model(&p);
        let Some(m) = is_isomorphic(&fiber, &model, Orientation::Preserving) else {
            return Err(format!("fiber of {p:?} is not the dualized product"));
        };
        if !verify_bijection(&fiber, &model, &m, Orientation::Preserving) {
            return Err(format!("fiber bijection of {p:?} failed validation"));
        }
        if !is_collapsible_to_point(&fiber, 2000) {
            return Err(format!("fiber of {p:?} is not collapsible"));
        }
    }
    Ok(())
}

fn check_circle(n: u32) -> Result<(), String> {
    let ground = Subset::full(n + 1);
    for sigma in enumerate_cyclic_partitions(n, 2) {
        for j in ground.subsets_nonempty() {
            if !sigma.divides(j) {
                continue;
            }
            let (l, ctx) = build_l(&sigma, j).map_err(|e| e.to_string())?;
            // oracle 1: direct homology
            let mut want = vec![0usize; l.max_dim() + 1];
            want[0] = 1;
            if l.max_dim() >= 1 {
                want[1] = 1;
            }
            let before = homology_z2(&l);
            if before != want {
                return Err(format!("H(L) = {before:?} for sigma={sigma} J={j}"));
            }
            // oracle 2: the explicit schedule
            let belt = collapse_to_belt(&l, &ctx)
                .map_err(|e| format!("belt schedule failed for sigma={sigma} J={j}: {e}"))?;
            if belt.poset.euler_characteristic() != 0 {
                return Err(format!("belt chi != 0 for sigma={sigma} J={j}"));
            }
            let circle = belt_to_circle(&belt.poset, &ctx)
                .map_err(|e| format!("circle schedule failed for sigma={sigma} J={j}: {e}"))?;
            if homology_z2(&circle.poset) != vec![1, 1] {
                return Err(format!("end state is not a circle for sigma={sigma} J={j}"));
            }
        }
    }
    Ok(())
}

fn check_ghost(n: u32) -> Result<(), String> {
    let ground = Subset::full(n + 1);
    for sigma in enumerate_cyclic_partitions(n, 2) {
        for j in ground.subsets_nonempty() {
            if !sigma.divides(j) {
                continue;
            }
            let ncx = build_ghost_complex(&sigma, j).map_err(|e| e.to_string())?;
            let rep = ghost_collapse(&ncx, &sigma, j)
                .map_err(|e| format!("ghost collapse failed for sigma={sigma} J={j}: {e}"))?;
            if rep.a_count != rep.b_count {
                return Err(format!("|a| != |b| for sigma={sigma} J={j}"));
            }
            if !rep.merged_equals_l {
                return Err(format!("merged complex differs from L for sigma={sigma} J={j}"));
            }
            if ncx.euler_characteristic() != rep.merged.euler_characteristic() {
                return Err(format!("chi changed across the pipeline for sigma={sigma} J={j}"));
            }
        }
    }
    Ok(())
}

fn check_ober_homology(n: u32) -> Result<(), String> {
    let ober = ober_complex(n).map_err(|e| e.to_string())?;
    let sig = skeleton_sigma(n);
    let mut hp = homology_z2(&ober);
    let mut hs = homology_z2(&sig);
    let len = hp.len().max(hs.len());
    hp.resize(len, 0);
    hs.resize(len, 0);
    if hp != hs {
        return Err(format!("H(ober) = {hp:?} but H(skeleton) = {hs:?}"));
    }
    Ok(())
}

/// Boundary of every small cell must have the homology of a sphere (checked
/// on the order complex of its strict lower set), and the diamond property
/// must hold globally.
fn check_regularity(n: u32) -> Result<(), String> {
    let sigma0 = full_cycle(n);
    let full = Subset::full(n + 1);
    let mut complexes: Vec<(&str, FacePoset)> = vec![
        ("s-faces", skeleton_s(n)),
        ("sigma-faces", skeleton_sigma(n)),
    ];
    if sigma0.divides(full) {
        complexes.push((
            "strata",
            stratum_lattice(&sigma0, full).map_err(|e| e.to_string())?,
        ));
    }
    for (name, p) in &complexes {
        p.check_diamond_property()
            .map_err(|w| format!("{name}: {w}"))?;
        for i in 0..p.len() {
            let d = p.dim(i);
            if d == 0 {
                continue;
            }
            if p.lower_set(i).len() > 81 {
                continue; // boundary-sphere proxy is checked on small cells
            }
            let boundary = p.boundary_subposet(i);
            let oc = order_complex(&boundary);
            let got = homology_z2(&oc);
            let want: Vec<usize> = if d == 1 {
                vec![2]
            } else {
                let mut w = vec![0usize; d];
                w[0] = 1;
                w[d - 1] += 1;
                w
            };
            let mut got_padded = got.clone();
            got_padded.resize(want.len().max(got.len()), 0);
            let mut want_padded = want.clone();
            want_padded.resize(got_padded.len(), 0);
            if got_padded != want_padded {
                return Err(format!(
                    "{name}: boundary of {} has betti {got:?}, expected sphere {want:?}",
                    p.label(i)
                ));
            }
        }
    }
    Ok(())
}

pub fn to_json(records: &[CheckRecord], timings: bool) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                let mut obj = json!({
                    "check": r.name,
                    "n": r.n,
                    "status": match r.status {
                        Status::Pass => "pass",
                        Status::Fail => "fail",
                        Status::Skipped => "skipped",
                    },
                });
                if let Some(d) = &r.detail {
                    obj["detail"] = json!(d);
                }
                if timings {
                    obj["millis"] = json!(r.millis);
                }
                obj
            })
            .collect(),
    )
}

/// Markdown and CSV reproduction tables.
pub fn report_bundle(ns: &[u32], max_cells: u64, force: bool, timings: bool) -> (String, String) {
    use pantslab::export::{betti_csv_rows, f_vector_csv_rows};
    let mut md = String::new();
    let mut csv = vec!["object,n,label,index,value".to_string()];
    md.push_str("# Reproduction report\n\n");
    md.push_str("| n | sigma facets | sigma vertices | weights | stratum f-vector | mu1 betti | duality | circle | ghost |\n");
    md.push_str("|---|---|---|---|---|---|---|---|---|\n");
    let checks = [CheckKind::Duality, CheckKind::Circle, CheckKind::Ghost];
    for &n in ns {
        let facets = (1u64 << n) - 1;
        let vertices: u64 = (1..=n as u64).product();
        let weights = (1u64 << (n + 1)) - 2;
        let sigma0 = full_cycle(n);
        let full = Subset::full(n + 1);
        let stratum = stratum_lattice(&sigma0, full).ok();
        let f_str = stratum
            .as_ref()
            .map(|p| {
                let f: Vec<String> = p.f_vector().iter().map(|x| x.to_string()).collect();
                format!("({})", f.join(","))
            })
            .unwrap_or_else(|| "-".into());
        let mu1 = if n >= 2 {
            let b = homology_z2(&mu1_fiber(0, 1, n));
            let s: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            format!("({})", s.join(","))
        } else {
            "-".into()
        };
        let outcomes: Vec<String> = checks
            .iter()
            .map(|&k| {
                let recs = run_all(&[n], &[k], max_cells, force, 1);
                let r = &recs[0];
                let mut cell = match r.status {
                    Status::Pass => "pass".to_string(),
                    Status::Fail => "fail".to_string(),
                    Status::Skipped => "skipped".to_string(),
                };
                if timings {
                    cell.push_str(&format!(" ({}ms)", r.millis));
                }
                cell
            })
            .collect();
        md.push_str(&format!(
            "| {n} | {facets} | {vertices} | {weights} | {f_str} | {mu1} | {} | {} | {} |\n",
            outcomes[0], outcomes[1], outcomes[2]
        ));
        csv.push(format!("counts,{n},sigma-facets,0,{facets}"));
        csv.push(format!("counts,{n},sigma-vertices,0,{vertices}"));
        csv.push(format!("counts,{n},weights,0,{weights}"));
        if let Some(p) = &stratum {
            csv.extend(f_vector_csv_rows("strata", n, "full", p));
        }
        if n >= 2 {
            let b = homology_z2(&mu1_fiber(0, 1, n));
            csv.extend(betti_csv_rows("mu1-fiber", n, "01", &b));
        }
    }
    md.push_str("\nDuality pairs the maximal stratum lattice with the cyclic polytope C_{2n-2}(2n+2).\n");
    (md, csv.join("\n") + "\n")
}
