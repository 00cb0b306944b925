//! Set systems on `[n]` and their combinatorial primitives.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};

/// A family of distinct subsets of `[n]`.
///
/// Member order is meaningful: position `i` is the index of `F_i` and
/// survives serialization. [`SetSystem::canonical`] gives the sorted form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    ground: GroundSet,
    members: Vec<Subset>,
}

impl SetSystem {
    pub fn new(ground: GroundSet, members: Vec<Subset>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(members.len());
        for &m in &members {
            ground.check(m)?;
            if !seen.insert(m) {
                return Err(Error::DuplicateMember(m));
            }
        }
        Ok(Self { ground, members })
    }

    pub fn empty(ground: GroundSet) -> Self {
        Self {
            ground,
            members: Vec::new(),
        }
    }

    /// All `k`-subsets of `[n]`.
    pub fn complete(ground: GroundSet, k: usize) -> Self {
        Self {
            ground,
            members: ground.k_subsets(k).collect(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.contains(&s)
    }

    /// Common member size, or `None` for an empty or mixed family.
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.members.first()?.len();
        self.members.iter().all(|m| m.len() == k).then_some(k)
    }

    /// Whether every member has exactly `k` elements (vacuously true when empty).
    pub fn is_uniform(&self, k: usize) -> bool {
        self.members.iter().all(|m| m.len() == k)
    }

    pub fn require_uniform(&self, k: usize) -> Result<()> {
        match self.members.iter().position(|m| m.len() != k) {
            None => Ok(()),
            Some(index) => Err(Error::NotUniform {
                index,
                set: self.members[index],
                size: self.members[index].len(),
                expected: k,
            }),
        }
    }

    pub fn union_of_members(&self) -> Subset {
        self.members.iter().fold(Subset::EMPTY, |acc, &m| acc.union(m))
    }

    /// Same members, sorted by (size, mask).
    pub fn canonical(&self) -> SetSystem {
        let mut members = self.members.clone();
        members.sort();
        Self {
            ground: self.ground,
            members,
        }
    }

    /// `{F ∩ S : F ∈ self}`, deduplicated.
    pub fn trace(&self, s: Subset) -> BTreeSet<Subset> {
        self.members.iter().map(|m| m.intersection(s)).collect()
    }

    /// Whether every subset of `s` occurs as a trace.
    pub fn is_shattered(&self, s: Subset) -> bool {
        let k = s.len();
        // 2^k traces need at least 2^k members.
        if k >= usize::BITS as usize - 1 || self.members.len() < 1usize << k {
            return false;
        }
        self.trace(s).len() == 1usize << k
    }

    /// VC-dimension, with `-1` for the empty family.
    pub fn vc_dimension(&self) -> i32 {
        if self.members.is_empty() {
            return -1;
        }
        let universe = self.union_of_members();
        let mut best = 0;
        // Subsets of a shattered set are shattered, so stop at the first size
        // with no shattered set.
        for k in 1..=universe.len() {
            if self.members.len() < 1usize << k.min(usize::BITS as usize - 1) {
                break;
            }
            if universe.k_subsets(k).any(|s| self.is_shattered(s)) {
                best = k as i32;
            } else {
                break;
            }
        }
        best
    }

    /// First member that is shattered, for a `(d+1)`-uniform family.
    ///
    /// A shattered `(d+1)`-set must itself be a member (its full trace needs a
    /// member containing it), so only members need checking.
    pub fn shattered_member(&self, d: usize) -> Result<Option<usize>> {
        self.require_uniform(d + 1)?;
        Ok(self.members.iter().position(|&s| self.is_shattered(s)))
    }

    /// Whether a `(d+1)`-uniform family has VC-dimension at most `d`.
    pub fn vc_le_uniform(&self, d: usize) -> Result<bool> {
        Ok(self.shattered_member(d)?.is_none())
    }

    /// All `k`-sets contained in some member, in canonical order.
    pub fn shadow(&self, k: usize) -> SetSystem {
        let set: BTreeSet<Subset> = self
            .members
            .iter()
            .filter(|m| m.len() >= k)
            .flat_map(|m| m.k_subsets(k))
            .collect();
        Self {
            ground: self.ground,
            members: set.into_iter().collect(),
        }
    }

    /// `C([n], k)` minus the members, for a `k`-uniform family.
    pub fn complement_uniform(&self, k: usize) -> Result<SetSystem> {
        self.require_uniform(k)?;
        let present: HashSet<Subset> = self.members.iter().copied().collect();
        Ok(Self {
            ground: self.ground,
            members: self.ground.k_subsets(k).filter(|s| !present.contains(s)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    fn sys(n: usize, ms: &[&[usize]]) -> SetSystem {
        SetSystem::new(GroundSet::new(n).unwrap(), ms.iter().map(|m| set(m)).collect()).unwrap()
    }

    fn complete(n: usize, k: usize) -> SetSystem {
        SetSystem::complete(GroundSet::new(n).unwrap(), k)
    }

    fn star(n: usize, d: usize) -> SetSystem {
        let g = GroundSet::new(n).unwrap();
        SetSystem::new(g, g.k_subsets(d + 1).filter(|s| s.contains(1)).collect()).unwrap()
    }

    #[test]
    fn trace_examples() {
        let f = sys(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(f.trace(set(&[2])), BTreeSet::from([set(&[2])]));
        assert!(sys(3, &[]).trace(set(&[1])).is_empty());
        let c42 = complete(4, 2);
        assert_eq!(
            c42.trace(set(&[1, 2])),
            BTreeSet::from([Subset::EMPTY, set(&[1]), set(&[2]), set(&[1, 2])])
        );
    }

    #[test]
    fn shattering_examples() {
        assert!(complete(4, 2).is_shattered(set(&[1, 2])));
        assert!(!sys(3, &[&[1, 2, 3]]).is_shattered(set(&[1])));
        assert!(sys(3, &[&[1, 2, 3]]).is_shattered(Subset::EMPTY));
        assert!(!sys(3, &[]).is_shattered(Subset::EMPTY));
    }

    #[test]
    fn vc_dimension_examples() {
        assert_eq!(sys(4, &[]).vc_dimension(), -1);
        assert_eq!(complete(5, 3).vc_dimension(), 2);
        let ball = SetSystem::new(
            GroundSet::new(5).unwrap(),
            GroundSet::new(5).unwrap().subsets_up_to(2).collect(),
        )
        .unwrap();
        assert_eq!(ball.len(), 16);
        assert_eq!(ball.vc_dimension(), 2);
        assert_eq!(sys(3, &[&[]]).vc_dimension(), 0);
    }

    #[test]
    fn vc_le_uniform_examples() {
        assert!(complete(5, 3).vc_le_uniform(2).unwrap());
        assert!(!complete(6, 3).vc_le_uniform(2).unwrap());
        assert_eq!(complete(6, 3).shattered_member(2).unwrap(), Some(0));
        assert!(star(6, 2).vc_le_uniform(2).unwrap());
        assert!(matches!(
            sys(4, &[&[1, 2]]).vc_le_uniform(2),
            Err(Error::NotUniform { .. })
        ));
    }

    #[test]
    fn shadow_examples() {
        let s = sys(3, &[&[1, 2, 3]]).shadow(2);
        assert_eq!(s.members(), &[set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        assert_eq!(complete(5, 3).shadow(2).len(), 10);
        assert_eq!(star(6, 2).shadow(2).len(), 15);
        assert_eq!(sys(3, &[&[1]]).shadow(2).len(), 0);
    }

    #[test]
    fn complement_examples() {
        assert!(complete(5, 3).complement_uniform(3).unwrap().is_empty());
        assert_eq!(sys(4, &[]).complement_uniform(2).unwrap().len(), 6);
        let y = star(6, 2).complement_uniform(3).unwrap();
        assert_eq!(y.len(), 10);
        assert!(y.members().iter().all(|m| !m.contains(1)));
        assert!(sys(4, &[&[1]]).complement_uniform(2).is_err());
    }

    #[test]
    fn duplicates_rejected() {
        let g = GroundSet::new(3).unwrap();
        assert_eq!(
            SetSystem::new(g, vec![set(&[1]), set(&[1])]),
            Err(Error::DuplicateMember(set(&[1])))
        );
        assert!(SetSystem::new(g, vec![set(&[4])]).is_err());
    }
}
