//! Closed-form families.

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};
use crate::system::SetSystem;

fn ground(n: usize) -> Result<GroundSet> {
    GroundSet::new(n)
}

fn filtered(n: usize, k: usize, keep: impl Fn(Subset) -> bool) -> Result<SetSystem> {
    let g = ground(n)?;
    SetSystem::new(g, g.k_subsets(k).filter(|&s| keep(s)).collect())
}

/// All `(d+1)`-sets containing element 1; size `C(n-1, d)`.
pub fn star(n: usize, d: usize) -> Result<SetSystem> {
    if n < d + 1 {
        return Err(Error::Precondition(format!("star needs n >= d + 1, got n={n}, d={d}")));
    }
    filtered(n, d + 1, |s| s.contains(1))
}

fn ak_range(n: usize, d: usize) -> Result<()> {
    if d < 2 || n < 2 * (d + 1) {
        return Err(Error::Precondition(format!(
            "construction needs d >= 2 and n >= 2(d + 1), got n={n}, d={d}"
        )));
    }
    Ok(())
}

/// A `(d+1)`-uniform family of VC-dimension at most `d` with
/// `C(n-1, d) + C(n-4, d-2)` members, beating the star.
///
/// Members are classified by their trace on `{1,2,3,4}`:
/// every set containing 1 and meeting `{2,3,4}`, plus every set whose
/// trace is exactly `{2}` or exactly `{2,3,4}`.
pub fn ak_candidate(n: usize, d: usize) -> Result<SetSystem> {
    ak_range(n, d)?;
    let low = Subset::prefix(4);
    let rest = Subset::from_mask(0b1110);
    let two = Subset::singleton(2);
    filtered(n, d + 1, |s| {
        let t = s.intersection(low);
        (s.contains(1) && !t.intersection(rest).is_empty()) || t == two || t == rest
    })
}

/// The star plus every `(d+1)`-set containing `{2,3,4}` and avoiding 1.
///
/// Has the right size but shatters `{2,3,4}` once `n >= 6`; kept to
/// document why [`ak_candidate`] is shaped differently.
pub fn star_plus_block(n: usize, d: usize) -> Result<SetSystem> {
    ak_range(n, d)?;
    let block = Subset::from_mask(0b1110);
    filtered(n, d + 1, |s| s.contains(1) || block.is_subset_of(s))
}

/// `C([n], d+1)` at `n = 2d + 1`, where it has VC-dimension `d` and
/// `C(n, d)` members.
pub fn full_family(n: usize, d: usize) -> Result<SetSystem> {
    if n != 2 * d + 1 {
        return Err(Error::Precondition(format!(
            "full family needs n = 2d + 1, got n={n}, d={d}"
        )));
    }
    Ok(SetSystem::complete(ground(n)?, d + 1))
}

/// All subsets of size at most `d`.
pub fn hamming_ball(n: usize, d: usize) -> Result<SetSystem> {
    if d > n {
        return Err(Error::Precondition(format!("radius {d} exceeds n = {n}")));
    }
    let g = ground(n)?;
    SetSystem::new(g, g.subsets_up_to(d).collect())
}
