//! Seeded random suites.
//!
//! Instance `i` of a suite draws from its own ChaCha stream derived from
//! `(seed, i)`, and instances are collected in index order, so a report is
//! identical for every thread count.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cert::{extended_matrix, find_witnesses, triangular_certificate};
use crate::error::{Error, Result};
use crate::subset::{binomial, GroundSet, Subset};
use crate::system::SetSystem;

/// Independent generator for instance `index` of a suite seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random `(d+1)`-uniform family with VC-dimension at most `d`: each
/// `(d+1)`-set is kept with a random density, the order is shuffled, and
/// random members are deleted until no member is shattered.
pub fn random_vc_bounded_family<R: Rng>(rng: &mut R, n: usize, d: usize) -> Result<SetSystem> {
    let ground = GroundSet::new(n)?;
    let density: f64 = rng.random_range(0.1..0.9);
    let mut members: Vec<Subset> = ground.k_subsets(d + 1).filter(|_| rng.random_bool(density)).collect();
    members.shuffle(rng);
    loop {
        let f = SetSystem::new(ground, members.clone())?;
        if f.vc_le_uniform(d)? {
            return Ok(f);
        }
        let victim = rng.random_range(0..members.len());
        members.remove(victim);
    }
}

/// A random `k`-uniform family on `[n]` with `1..=C(n,k)` members.
pub fn random_uniform_family<R: Rng>(rng: &mut R, n: usize, k: usize) -> Result<SetSystem> {
    let ground = GroundSet::new(n)?;
    let mut all: Vec<Subset> = ground.k_subsets(k).collect();
    all.shuffle(rng);
    let size = rng.random_range(1..=all.len());
    all.truncate(size);
    SetSystem::new(ground, all)
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowInstance {
    pub index: usize,
    pub n: usize,
    pub d: usize,
    pub family_size: usize,
    pub shadow_size: usize,
    pub frankl_pach: u128,
    pub row_count: usize,
    pub rank: usize,
    pub triangular: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowSuiteReport {
    pub version: &'static str,
    pub seed: u64,
    pub failures: usize,
    pub instances: Vec<ShadowInstance>,
}

/// Certificates for `count` random VC-bounded families, `d` cycling through
/// `1, 2, 3` and `n` drawn from `d+1..=max_n`.
pub fn shadow_suite(seed: u64, count: usize, max_n: usize, threads: usize) -> Result<ShadowSuiteReport> {
    let instances = pool(threads)?.install(|| {
        (0..count)
            .into_par_iter()
            .map(|index| {
                let mut rng = instance_rng(seed, index as u64);
                let d = 1 + index % 3;
                let n = rng.random_range(d + 1..=max_n.max(d + 1));
                let f = random_vc_bounded_family(&mut rng, n, d)?;
                let c = triangular_certificate(&f, d)?;
                Ok(ShadowInstance {
                    index,
                    n,
                    d,
                    family_size: c.family_size(),
                    shadow_size: c.shadow_size,
                    frankl_pach: binomial(n as u64, d as u64),
                    row_count: c.row_count(),
                    rank: c.rank,
                    triangular: c.is_triangular(),
                    pass: c.passes(),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ShadowSuiteReport {
        version: crate::VERSION,
        seed,
        failures: instances.iter().filter(|i| !i.pass).count(),
        instances,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityInstance {
    pub index: usize,
    pub n: usize,
    pub d: usize,
    pub family_size: usize,
    pub y: Subset,
    pub z: Subset,
    pub order: usize,
    pub determinant: String,
    pub m0: usize,
    pub t_dot_r: String,
    pub singular: bool,
    pub layout_ok: bool,
    /// `det(D) = 0 <=> m0 = 1`.
    pub law_holds: bool,
    /// `T^T R = m0`.
    pub t_dot_r_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularitySuiteReport {
    pub version: &'static str,
    pub seed: u64,
    pub exceptions: usize,
    pub m0_one: usize,
    pub instances: Vec<SingularityInstance>,
}

/// Picks `(Y, Z)` with `Y` outside the family. Half the time `Y` is built
/// around a member's witness so that `m0 >= 1` occurs often.
fn random_pair<R: Rng>(rng: &mut R, f: &SetSystem, witnesses: &[Subset], d: usize) -> Option<(Subset, Subset)> {
    let complement = f.complement_uniform(d + 1).ok()?;
    if complement.is_empty() {
        return None;
    }
    if !f.is_empty() && rng.random_bool(0.5) {
        let i = rng.random_range(0..f.len());
        let (fi, bi) = (f.members()[i], witnesses[i]);
        let outside: Vec<usize> = f.ground().full().difference(fi).to_vec();
        let need = d + 1 - bi.len();
        if outside.len() >= need {
            let extra: Vec<usize> = outside.choose_multiple(rng, need).copied().collect();
            let y = Subset::from_elements(extra).ok()?.union(bi);
            if !f.contains(y) {
                return Some((y, bi));
            }
        }
    }
    let y = *complement.members().choose(rng)?;
    let proper: Vec<Subset> = y.submasks().filter(|&z| z != y).collect();
    Some((y, *proper.choose(rng)?))
}

/// Extended-matrix instances: random VC-bounded family, `d` alternating
/// between 2 and 3, `n` in `d+2..=max_n`.
pub fn singularity_suite(seed: u64, count: usize, max_n: usize, threads: usize) -> Result<SingularitySuiteReport> {
    let instances = pool(threads)?.install(|| {
        (0..count)
            .into_par_iter()
            .map(|index| {
                let mut rng = instance_rng(seed, index as u64);
                let d = 2 + index % 2;
                loop {
                    let n = rng.random_range(d + 2..=max_n.max(d + 2));
                    let f = random_vc_bounded_family(&mut rng, n, d)?;
                    let w = find_witnesses(&f, d)?;
                    let Some((y, z)) = random_pair(&mut rng, &f, w.as_slice(), d) else {
                        continue;
                    };
                    let e = extended_matrix(&f, &w, y, z)?;
                    let det = e.determinant();
                    let singular = num_traits::Zero::is_zero(&det);
                    let tr = e.t_dot_r();
                    return Ok(SingularityInstance {
                        index,
                        n,
                        d,
                        family_size: f.len(),
                        y,
                        z,
                        order: e.order(),
                        determinant: det.to_string(),
                        m0: e.m0,
                        t_dot_r: tr.to_string(),
                        singular,
                        layout_ok: e.layout_violation(&f, &w).is_none(),
                        law_holds: singular == (e.m0 == 1),
                        t_dot_r_matches: tr == num_bigint::BigInt::from(e.m0),
                    });
                }
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SingularitySuiteReport {
        version: crate::VERSION,
        seed,
        exceptions: instances
            .iter()
            .filter(|i| !(i.law_holds && i.t_dot_r_matches && i.layout_ok))
            .count(),
        m0_one: instances.iter().filter(|i| i.m0 == 1).count(),
        instances,
    })
}
