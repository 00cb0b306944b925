//! Structural checks on witness-equipped families and the counting chain
//! that rules out `|F| = C(n, d)` for `n >= 2d + 2`.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use serde::Serialize;

use crate::cert::WitnessAssignment;
use crate::error::{Error, Result};
use crate::kk::solve_alpha;
use crate::subset::{binomial, Subset};
use crate::system::SetSystem;

const VIOLATION_CAP: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub y: Subset,
    pub z: Subset,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    /// Every `(Y, Z)` with `Y` outside the family and `Z ⊊ Y` has exactly
    /// one `i` with `F_i ∩ Y = Z = B_i`.
    pub property1: bool,
    /// First violations of property 1, at most 100.
    pub property1_violations: Vec<PairCount>,
    pub property1_violation_count: usize,
    /// `F_i ∩ F_j ≠ B_i` for all `i, j`.
    pub property2: bool,
    pub property2_violations: Vec<(usize, usize)>,
    /// Number of `i` with `|B_i| = d`.
    pub size_d_witnesses: usize,
    /// Number of distinct size-`d` witnesses.
    pub distinct_size_d_witnesses: usize,
    pub complement_size: usize,
    pub complement_shadow_size: usize,
    /// Whether `∂_d Y` equals the set of size-`d` witnesses.
    pub shadow_matches_witnesses: bool,
    /// `|∂_d Y| (n - d - 1)`.
    pub double_count_lhs: u128,
    /// `(d + 1) |Y|`.
    pub double_count_rhs: u128,
}

impl StructureReport {
    pub fn double_count_holds(&self) -> bool {
        self.double_count_lhs == self.double_count_rhs
    }
}

/// Exhaustively checks both structural properties for a `(d+1)`-uniform
/// family with valid witnesses.
pub fn verify_structure(family: &SetSystem, witnesses: &WitnessAssignment) -> Result<StructureReport> {
    witnesses.validate(family)?;
    let k = match family.uniformity() {
        Some(k) => k,
        None if family.is_empty() => {
            return Err(Error::Precondition(
                "empty family has no uniformity; pass a nonempty family".into(),
            ))
        }
        None => return Err(Error::Precondition("family is not uniform".into())),
    };
    let d = k - 1;
    let n = family.n();
    let complement = family.complement_uniform(k)?;

    let mut violations = Vec::new();
    let mut violation_count = 0usize;
    for &y in complement.members() {
        let mut counts: HashMap<Subset, usize> = HashMap::new();
        for (&fi, &bi) in family.members().iter().zip(witnesses.as_slice()) {
            if fi.intersection(y) == bi {
                *counts.entry(bi).or_default() += 1;
            }
        }
        for j in 0..k {
            for z in y.k_subsets(j) {
                let count = counts.get(&z).copied().unwrap_or(0);
                if count != 1 {
                    violation_count += 1;
                    if violations.len() < VIOLATION_CAP {
                        violations.push(PairCount { y, z, count });
                    }
                }
            }
        }
    }

    let mut pairs = Vec::new();
    for (i, (&fi, &bi)) in family.members().iter().zip(witnesses.as_slice()).enumerate() {
        for (j, &fj) in family.members().iter().enumerate() {
            if fi.intersection(fj) == bi && pairs.len() < VIOLATION_CAP {
                pairs.push((i, j));
            }
        }
    }

    let size_d: Vec<Subset> = witnesses.as_slice().iter().copied().filter(|b| b.len() == d).collect();
    let distinct: BTreeSet<Subset> = size_d.iter().copied().collect();
    let y_shadow = complement.shadow(d);
    let shadow_set: BTreeSet<Subset> = y_shadow.members().iter().copied().collect();

    Ok(StructureReport {
        property1: violation_count == 0,
        property1_violations: violations,
        property1_violation_count: violation_count,
        property2: pairs.is_empty(),
        property2_violations: pairs,
        size_d_witnesses: size_d.len(),
        distinct_size_d_witnesses: distinct.len(),
        complement_size: complement.len(),
        complement_shadow_size: y_shadow.len(),
        shadow_matches_witnesses: shadow_set == distinct,
        double_count_lhs: y_shadow.len() as u128 * (n - d - 1) as u128,
        double_count_rhs: (d as u128 + 1) * complement.len() as u128,
    })
}

/// Every quantity in the chain assuming a family of size `C(n, d)` existed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub d: usize,
    /// `C(n, d)`.
    pub family_size: u128,
    /// `|Y| = C(n, d+1) - C(n, d)`.
    pub complement_size: u128,
    /// `|∂_d Y| = |Y| (d + 1) / (n - d - 1)` forced by double counting.
    #[serde(serialize_with = "ser_ratio")]
    pub forced_shadow: Ratio<u128>,
    /// `alpha` with `C(alpha, d+1) = |Y|`.
    pub alpha: f64,
    /// Kruskal–Katona lower bound `|Y| (d + 1) / (alpha - d)`.
    pub kk_shadow_bound: f64,
    /// Kruskal–Katona forces `alpha >= n - 1`; whether the actual alpha meets it.
    pub alpha_reaches_n_minus_1: bool,
    /// `C(n-1, d+1)`, the least `|Y|` compatible with `alpha >= n - 1`.
    pub required_complement: u128,
    /// `C(n-1, d) - C(n, d)`.
    pub final_gap: i128,
    /// `|Y| - C(n-1, d+1) == C(n-1, d) - C(n, d)` (Pascal's rule).
    pub gap_identity_holds: bool,
    pub contradiction: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    if *r.denom() == 1 {
        s.serialize_str(&r.numer().to_string())
    } else {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn impossibility_audit(n: usize, d: usize) -> Result<AuditReport> {
    if d < 2 || n < 2 * d + 2 {
        return Err(Error::Precondition(format!(
            "audit needs d >= 2 and n >= 2d + 2, got n={n}, d={d}"
        )));
    }
    let (nn, dd) = (n as u64, d as u64);
    let family_size = binomial(nn, dd);
    let complement_size = binomial(nn, dd + 1) - family_size;
    let forced_shadow = Ratio::new(complement_size * (dd as u128 + 1), (nn - dd - 1) as u128);
    let y_count = u64::try_from(complement_size).map_err(|_| Error::Precondition("complement too large".into()))?;
    let alpha = solve_alpha(y_count, d as u32 + 1);
    let kk_shadow_bound = complement_size as f64 * (d + 1) as f64 / (alpha - d as f64);
    let required_complement = binomial(nn - 1, dd + 1);
    let final_gap = binomial(nn - 1, dd) as i128 - family_size as i128;
    let gap_identity_holds = complement_size as i128 - required_complement as i128 == final_gap;
    let alpha_reaches_n_minus_1 = alpha >= (n - 1) as f64;
    let contradiction = complement_size < required_complement && final_gap < 0 && gap_identity_holds;
    Ok(AuditReport {
        n,
        d,
        family_size,
        complement_size,
        forced_shadow,
        alpha,
        kk_shadow_bound,
        alpha_reaches_n_minus_1,
        required_complement,
        final_gap,
        gap_identity_holds,
        contradiction,
    })
}
