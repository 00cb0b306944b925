//! Kruskal–Katona lower bounds on shadows.
//!
//! Two forms are provided. The fractional (Lovász) form writes
//! `m = C(alpha, k)` for real `alpha >= k - 1` and bounds the
//! `(k-1)`-shadow below by `C(alpha, k-1) = m * k / (alpha - k + 1)`.
//! The cascade form uses the greedy representation
//! `m = C(a_k, k) + C(a_{k-1}, k-1) + ...` and gives the exact minimum
//! shadow `C(a_k, k-1) + C(a_{k-1}, k-2) + ...`; it is never weaker.

use num_rational::Ratio;
use serde::Serialize;

use crate::subset::binomial;

/// `alpha (alpha - 1) ... (alpha - k + 1) / k!`.
pub fn gen_binomial(alpha: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (alpha - f64::from(i)) / f64::from(i + 1))
}

/// The unique `alpha >= k - 1` with `C(alpha, k) = m`.
///
/// Bisection on `[k - 1, k - 1 + m + k]` down to adjacent floats, at most
/// 200 iterations; the endpoint with the smaller residual is returned.
pub fn solve_alpha(m: u64, k: u32) -> f64 {
    assert!(m >= 1 && k >= 1, "solve_alpha needs m >= 1 and k >= 1");
    let target = m as f64;
    let mut lo = f64::from(k - 1);
    let mut hi = lo + target + f64::from(k);
    for _ in 0..200 {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if gen_binomial(mid, k) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let residual = |a: f64| (gen_binomial(a, k) - target).abs();
    let best = if residual(lo) < residual(hi) { lo } else { hi };
    // Snap to an integer root when one is there, so tight cases stay exact.
    let rounded = best.round();
    if (best - rounded).abs() < 1e-9
        && rounded >= f64::from(k)
        && binomial(rounded as u64, u64::from(k)) == u128::from(m)
    {
        rounded
    } else {
        best
    }
}

/// Fractional Kruskal–Katona bound for an `m`-member `(d+1)`-uniform family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KKBound {
    pub m: u64,
    pub k: u32,
    pub alpha: f64,
    /// `m (d + 1) / (alpha - d)`.
    pub bound: f64,
    /// The same bound as an exact fraction when `alpha` is an integer.
    #[serde(serialize_with = "ser_ratio")]
    pub exact: Option<Ratio<u128>>,
}

fn ser_ratio<S: serde::Serializer>(r: &Option<Ratio<u128>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        None => s.serialize_none(),
        Some(r) if *r.denom() == 1 => s.serialize_str(&r.numer().to_string()),
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
    }
}

impl KKBound {
    pub fn alpha_is_integral(&self) -> bool {
        self.exact.is_some()
    }
}

/// Lower bound on the `d`-shadow of any `m`-member `(d+1)`-uniform family.
pub fn kk_lower_bound(m: u64, d: u32) -> KKBound {
    assert!(d >= 1, "kk_lower_bound needs d >= 1");
    let k = d + 1;
    let alpha = solve_alpha(m, k);
    let bound = m as f64 * f64::from(k) / (alpha - f64::from(d));
    let rounded = alpha.round();
    let exact = ((alpha - rounded).abs() < 1e-9 && rounded > f64::from(d))
        .then(|| Ratio::new(u128::from(m) * u128::from(k), rounded as u128 - u128::from(d)));
    KKBound {
        m,
        k,
        alpha,
        bound,
        exact,
    }
}

/// `m = sum_j C(a_j, j)` with `a_k > a_{k-1} > ... > a_s >= s >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CascadeRep {
    pub m: u64,
    pub k: u32,
    /// `(a_j, j)` pairs, `j` decreasing from `k`.
    pub terms: Vec<(u64, u32)>,
}

impl CascadeRep {
    pub fn value(&self) -> u128 {
        self.terms.iter().map(|&(a, j)| binomial(a, u64::from(j))).sum()
    }

    /// `sum_j C(a_j, j - 1)`, the minimum possible `(k-1)`-shadow.
    pub fn shadow_bound(&self) -> u128 {
        self.terms.iter().map(|&(a, j)| binomial(a, u64::from(j - 1))).sum()
    }
}

/// Greedy cascade representation of `m` with respect to `k`.
pub fn cascade_rep(m: u64, k: u32) -> CascadeRep {
    assert!(m >= 1 && k >= 1, "cascade_rep needs m >= 1 and k >= 1");
    let mut rest = u128::from(m);
    let mut terms = Vec::new();
    let mut j = k;
    while rest > 0 && j >= 1 {
        // Largest a with C(a, j) <= rest; a >= j since C(j, j) = 1.
        let mut a = u64::from(j);
        while binomial(a + 1, u64::from(j)) <= rest {
            a += 1;
        }
        rest -= binomial(a, u64::from(j));
        terms.push((a, j));
        j -= 1;
    }
    CascadeRep { m, k, terms }
}

/// Exact Kruskal–Katona shadow bound for `m` sets of size `k`.
pub fn cascade_bound(m: u64, k: u32) -> u128 {
    cascade_rep(m, k).shadow_bound()
}
