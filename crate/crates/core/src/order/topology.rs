//! Scott and Lawson topologies of small finite posets, as explicit open families.
//!
//! Subsets are `u64` bitmasks over element indices.

use std::collections::BTreeSet;

use super::domain::Approximation;
use super::domain::Path;
use super::{FinPoset, OrderError};

/// Largest poset whose open families are enumerated.
pub const TOPOLOGY_LIMIT: usize = 12;

fn check_size(p: &FinPoset) -> Result<(), OrderError> {
    if p.len() > TOPOLOGY_LIMIT {
        Err(OrderError::SizeLimit { size: p.len(), limit: TOPOLOGY_LIMIT })
    } else {
        Ok(())
    }
}

fn to_mask(set: &fixedbitset::FixedBitSet) -> u64 {
    set.ones().fold(0u64, |m, i| m | (1 << i))
}

fn up_masks(p: &FinPoset) -> Vec<u64> {
    (0..p.len()).map(|i| to_mask(p.up(i))).collect()
}

/// Up-sets `U` that meet every directed set whose supremum lies in `U`.
pub fn scott_opens(p: &FinPoset) -> Result<Vec<u64>, OrderError> {
    check_size(p)?;
    let n = p.len();
    let ups = up_masks(p);
    let approx = Approximation::with_path(p, Path::Definitional)?;
    let directed: Vec<(u64, usize)> =
        approx.directed_sets().iter().map(|(d, s)| (to_mask(d), *s)).collect();
    let mut opens = Vec::new();
    for u in 0..(1u64 << n) {
        let up_closed = (0..n).filter(|&i| u & (1 << i) != 0).all(|i| ups[i] & !u == 0);
        if !up_closed {
            continue;
        }
        let inaccessible = directed.iter().all(|&(d, s)| u & (1 << s) == 0 || d & u != 0);
        if inaccessible {
            opens.push(u);
        }
    }
    Ok(opens)
}

/// Topology generated by `{ U \ ↑F | U Scott open, F finite }`.
pub fn lawson_opens(p: &FinPoset) -> Result<Vec<u64>, OrderError> {
    let scott = scott_opens(p)?;
    let n = p.len();
    let ups = up_masks(p);
    let mut upsets_of_finite: BTreeSet<u64> = BTreeSet::new();
    for f in 0..(1u64 << n) {
        let up = (0..n).filter(|&i| f & (1 << i) != 0).fold(0u64, |m, i| m | ups[i]);
        upsets_of_finite.insert(up);
    }
    let mut subbasis: BTreeSet<u64> = BTreeSet::new();
    for &u in &scott {
        for &f in &upsets_of_finite {
            subbasis.insert(u & !f);
        }
    }
    // In a finite space the generated topology is determined by the minimal
    // neighbourhood of each point: the intersection of the subbasic sets containing it.
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let nbhd: Vec<u64> = (0..n)
        .map(|x| subbasis.iter().filter(|&&s| s & (1 << x) != 0).fold(full, |m, &s| m & s))
        .collect();
    let opens = (0..(1u64 << n))
        .filter(|&v| (0..n).filter(|&x| v & (1 << x) != 0).all(|x| nbhd[x] & !v == 0))
        .collect();
    Ok(opens)
}
