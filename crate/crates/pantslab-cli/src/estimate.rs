//! Coarse upper bounds on the number of cells a check will build, used for
//! the feasibility gate.

/// Number of cyclic partitions of `{0,...,n}` (at least one part): the first
/// part contains 0, the rest is an ordered set partition.
pub fn cyclic_partition_count(n: u32) -> u64 {
    let m = (n + 1) as usize;
    // Fubini numbers a(k): ordered set partitions of a k-set
    let mut fubini = vec![0u64; m];
    fubini[0] = 1;
    for k in 1..m {
        let mut total = 0u64;
        for i in 1..=k {
            total = total.saturating_add(binom(k as u64, i as u64).saturating_mul(fubini[k - i]));
        }
        fubini[k] = total;
    }
    let mut count = 0u64;
    for first in 1..=m {
        count = count.saturating_add(
            binom((m - 1) as u64, (first - 1) as u64).saturating_mul(fubini[m - first]),
        );
    }
    count
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn pow(base: u64, exp: u32) -> u64 {
    base.saturating_pow(exp)
}

/// Estimated cells for one (check, n), a deliberate over-count.
pub fn estimate_cells(check: &str, n: u32) -> u64 {
    let m = n + 1;
    let parts = cyclic_partition_count(n);
    let dsd = pow(3, m).saturating_sub(pow(2, m));
    match check {
        "duality" => pow(4, m).saturating_mul(2),
        "zonotope" => pow(2, m).saturating_mul(pow(2, m)),
        "dims" | "ober-homology" | "regularity" => dsd.saturating_mul(parts),
        "fibers-mu1" => parts.saturating_mul(pow(2, m)),
        "fibers-mu2" => dsd.saturating_mul(pow(2, m)),
        // pairs (sigma, J) times the largest complex per pair
        "circle" => parts
            .saturating_mul(pow(2, m))
            .saturating_mul(pow(2, m).saturating_mul(pow(2, m)) / 16),
        "ghost" => parts
            .saturating_mul(pow(2, m))
            .saturating_mul(u64::from(m + 1).saturating_mul(pow(4, m + 1)) / 8),
        _ => u64::MAX,
    }
}
