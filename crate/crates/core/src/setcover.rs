//! Exact set cover for every subset of a small universe.
//!
//! [`build_table`] fills, in `2^|U| * |S|` steps, the minimum cover weight of
//! every universe subset. Each entry also records the smallest set index that
//! starts an optimal cover, so [`CoverTable::lookup_mask`] can replay the
//! lexicographically smallest optimal index list without searching.

use thiserror::Error;

use crate::graph::Graph;

/// Default largest universe accepted by [`build_table`]: `2^24` entries.
pub const DEFAULT_TABLE_CAP: usize = 24;

/// Hard limit imposed by the 32-bit subset encoding.
pub const MAX_TABLE_CAP: usize = 30;

const INFEASIBLE: u64 = u64::MAX;
const NO_SET: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetCoverError {
    #[error("universe of {size} elements exceeds the table cap of {cap} (2^{cap} entries must fit in memory)")]
    CapExceeded { size: usize, cap: usize },
    #[error("set owned by {owner} contains {element}, which is not in the universe")]
    OutsideUniverse { owner: usize, element: usize },
    #[error("owner {owner} appears on more than one set")]
    DuplicateOwner { owner: usize },
    #[error("set owned by {owner} has zero weight")]
    ZeroWeight { owner: usize },
    #[error("element {0} is not in the universe")]
    UnknownElement(usize),
    #[error("duplicate universe element {0}")]
    DuplicateElement(usize),
    #[error("edge ({u},{v}) is not covered by the given vertex set")]
    NotAVertexCover { u: usize, v: usize },
}

/// One member of a set system: elements as a bitmask over universe
/// positions, the vertex that owns it and its weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverSet {
    pub mask: u32,
    pub owner: usize,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    universe: Vec<usize>,
    sets: Vec<CoverSet>,
}

impl SetSystem {
    /// Build from sets given as element lists. Elements are arbitrary ids and
    /// are mapped to bit positions by their order in `universe`.
    pub fn new(
        universe: Vec<usize>,
        sets: impl IntoIterator<Item = (Vec<usize>, usize, u64)>,
        cap: usize,
    ) -> Result<Self, SetCoverError> {
        let cap = cap.min(MAX_TABLE_CAP);
        if universe.len() > cap {
            return Err(SetCoverError::CapExceeded {
                size: universe.len(),
                cap,
            });
        }
        let mut seen = universe.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(SetCoverError::DuplicateElement(w[0]));
        }
        let position = |e: usize| universe.iter().position(|&x| x == e);
        let mut built = Vec::new();
        for (elements, owner, weight) in sets {
            let mut mask = 0u32;
            for e in elements {
                let p = position(e).ok_or(SetCoverError::OutsideUniverse { owner, element: e })?;
                mask |= 1 << p;
            }
            built.push(CoverSet { mask, owner, weight });
        }
        Self::from_masks(universe, built, cap)
    }

    /// Build from sets already encoded as bitmasks over universe positions.
    pub fn from_masks(
        universe: Vec<usize>,
        sets: Vec<CoverSet>,
        cap: usize,
    ) -> Result<Self, SetCoverError> {
        let cap = cap.min(MAX_TABLE_CAP);
        if universe.len() > cap {
            return Err(SetCoverError::CapExceeded {
                size: universe.len(),
                cap,
            });
        }
        let full = full_mask(universe.len());
        let mut owners: Vec<usize> = Vec::with_capacity(sets.len());
        for s in &sets {
            if s.weight == 0 {
                return Err(SetCoverError::ZeroWeight { owner: s.owner });
            }
            if s.mask & !full != 0 {
                let bit = (s.mask & !full).trailing_zeros() as usize;
                return Err(SetCoverError::OutsideUniverse {
                    owner: s.owner,
                    element: bit,
                });
            }
            owners.push(s.owner);
        }
        owners.sort_unstable();
        if let Some(w) = owners.windows(2).find(|w| w[0] == w[1]) {
            return Err(SetCoverError::DuplicateOwner { owner: w[0] });
        }
        Ok(Self { universe, sets })
    }

    pub fn universe(&self) -> &[usize] {
        &self.universe
    }

    pub fn sets(&self) -> &[CoverSet] {
        &self.sets
    }

    /// Bitmask of a list of universe elements.
    pub fn mask_of(&self, elements: &[usize]) -> Result<u32, SetCoverError> {
        elements.iter().try_fold(0u32, |m, &e| {
            let p = self
                .universe
                .iter()
                .position(|&x| x == e)
                .ok_or(SetCoverError::UnknownElement(e))?;
            Ok(m | 1 << p)
        })
    }
}

fn full_mask(size: usize) -> u32 {
    if size >= 32 {
        u32::MAX
    } else {
        (1u32 << size) - 1
    }
}

/// An optimal cover: total weight, chosen set indices (ascending) and
/// their owners in the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub weight: u64,
    pub sets: Vec<usize>,
    pub owners: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CoverTable {
    system: SetSystem,
    weight: Vec<u64>,
    first: Vec<u32>,
}

/// Fill the cover table. The recurrence takes, for a subset `S`, the best
/// `w_j + table[S \ set_j]` over every set `j` meeting `S`; strict
/// improvement keeps the smallest such `j`.
pub fn build_table(system: &SetSystem) -> CoverTable {
    let size = system.universe.len();
    let entries = 1usize << size;
    let mut weight = vec![INFEASIBLE; entries];
    let mut first = vec![NO_SET; entries];
    weight[0] = 0;
    for s in 1..entries {
        let s32 = s as u32;
        let mut best = INFEASIBLE;
        let mut best_j = NO_SET;
        for (j, set) in system.sets.iter().enumerate() {
            if set.mask & s32 == 0 {
                continue;
            }
            let rest = weight[(s32 & !set.mask) as usize];
            if rest == INFEASIBLE {
                continue;
            }
            let cand = rest + set.weight;
            if cand < best {
                best = cand;
                best_j = j as u32;
            }
        }
        weight[s] = best;
        first[s] = best_j;
    }
    CoverTable {
        system: system.clone(),
        weight,
        first,
    }
}

impl CoverTable {
    pub fn system(&self) -> &SetSystem {
        &self.system
    }

    /// Minimum weight for a subset mask, `None` if it cannot be covered.
    #[inline]
    pub fn weight_of(&self, mask: u32) -> Option<u64> {
        let w = self.weight[mask as usize];
        (w != INFEASIBLE).then_some(w)
    }

    /// Replay the stored optimum for a subset mask.
    pub fn lookup_mask(&self, mask: u32) -> Option<Cover> {
        let weight = self.weight_of(mask)?;
        let sets: Vec<usize> = self.replay(mask).collect();
        let owners = sets.iter().map(|&j| self.system.sets[j].owner).collect();
        Some(Cover {
            weight,
            sets,
            owners,
        })
    }

    /// Set indices of the stored optimum for a coverable mask, ascending.
    pub fn replay(&self, mask: u32) -> impl Iterator<Item = usize> + '_ {
        let mut s = mask;
        std::iter::from_fn(move || {
            if s == 0 {
                return None;
            }
            let j = self.first[s as usize] as usize;
            s &= !self.system.sets[j].mask;
            Some(j)
        })
    }

    /// Stored optimum for a subset given as universe elements.
    pub fn lookup(&self, subset: &[usize]) -> Result<Option<Cover>, SetCoverError> {
        Ok(self.lookup_mask(self.system.mask_of(subset)?))
    }

    pub fn full_mask(&self) -> u32 {
        full_mask(self.system.universe.len())
    }
}

/// Minimum dominating set of a graph given one of its vertex covers,
/// ignoring edge lengths.
///
/// Every subset `D1` of the cover is tried. Non-cover vertices not adjacent
/// to `D1` must dominate themselves (`D2`); cover vertices still undominated
/// are closed off with one table lookup over the neighbourhoods of the
/// non-cover vertices (`D3`).
pub fn dominating_set_via_vc(
    graph: &Graph,
    vertex_cover: &[usize],
    cap: usize,
) -> Result<Vec<usize>, SetCoverError> {
    let n = graph.n();
    let mut in_cover = vec![false; n];
    for &w in vertex_cover {
        if w >= n {
            return Err(SetCoverError::UnknownElement(w));
        }
        in_cover[w] = true;
    }
    if let Some(e) = graph.edges().iter().find(|e| !in_cover[e.u] && !in_cover[e.v]) {
        return Err(SetCoverError::NotAVertexCover { u: e.u, v: e.v });
    }
    let cover: Vec<usize> = (0..n).filter(|&v| in_cover[v]).collect();
    let outside: Vec<usize> = (0..n).filter(|&v| !in_cover[v]).collect();
    let pos: Vec<Option<usize>> = {
        let mut p = vec![None; n];
        for (i, &w) in cover.iter().enumerate() {
            p[w] = Some(i);
        }
        p
    };
    let cover_nbrs = |v: usize| -> u32 {
        graph
            .neighbors(v)
            .iter()
            .filter_map(|&(y, _)| pos[y])
            .fold(0u32, |m, i| m | 1 << i)
    };
    let system = SetSystem::from_masks(
        cover.clone(),
        outside
            .iter()
            .map(|&v| CoverSet {
                mask: cover_nbrs(v),
                owner: v,
                weight: 1,
            })
            .collect(),
        cap,
    )?;
    let table = build_table(&system);

    let mut best: Option<Vec<usize>> = None;
    for d1 in 0u32..(1u32 << cover.len()) {
        let mut dominated = vec![false; n];
        let mut chosen: Vec<usize> = Vec::new();
        for (i, &w) in cover.iter().enumerate() {
            if d1 >> i & 1 == 1 {
                chosen.push(w);
                dominated[w] = true;
                for &(y, _) in graph.neighbors(w) {
                    dominated[y] = true;
                }
            }
        }
        for &v in &outside {
            if !dominated[v] {
                chosen.push(v);
            }
        }
        for &v in &outside {
            if !dominated[v] {
                dominated[v] = true;
                for &(y, _) in graph.neighbors(v) {
                    dominated[y] = true;
                }
            }
        }
        let rest = cover
            .iter()
            .enumerate()
            .filter(|&(_, &w)| !dominated[w])
            .fold(0u32, |m, (i, _)| m | 1 << i);
        let Some(d3) = table.lookup_mask(rest) else {
            continue;
        };
        chosen.extend(d3.owners);
        if best.as_ref().map_or(true, |b| chosen.len() < b.len()) {
            best = Some(chosen);
        }
    }
    let mut best = best.expect("taking the whole vertex cover plus the rest always dominates");
    best.sort_unstable();
    best.dedup();
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_big_set_wins() {
        let sys = SetSystem::new(
            vec![10, 20],
            vec![(vec![10], 0, 1), (vec![20], 1, 1), (vec![10, 20], 2, 1)],
            DEFAULT_TABLE_CAP,
        )
        .unwrap();
        let t = build_table(&sys);
        let c = t.lookup(&[10, 20]).unwrap().unwrap();
        assert_eq!(c.weight, 1);
        assert_eq!(c.sets, vec![2]);
        assert_eq!(c.owners, vec![2]);
    }

    #[test]
    fn empty_subset_is_free() {
        let sys = SetSystem::new(vec![1, 2, 3], vec![(vec![1], 7, 3)], DEFAULT_TABLE_CAP).unwrap();
        let t = build_table(&sys);
        let c = t.lookup(&[]).unwrap().unwrap();
        assert_eq!(c.weight, 0);
        assert!(c.sets.is_empty());
        assert!(t.lookup(&[2]).unwrap().is_none());
    }

    #[test]
    fn lexicographic_tie_break() {
        // {a,b} costs 2 either as {0,1} or {2}; the index list [0,1] is smaller
        let sys = SetSystem::new(
            vec![0, 1],
            vec![(vec![0], 0, 1), (vec![1], 1, 1), (vec![0, 1], 2, 2)],
            DEFAULT_TABLE_CAP,
        )
        .unwrap();
        let t = build_table(&sys);
        assert_eq!(t.lookup(&[0, 1]).unwrap().unwrap().sets, vec![0, 1]);
    }

    #[test]
    fn validation() {
        assert_eq!(
            SetSystem::new((0..5).collect(), vec![], 4).unwrap_err(),
            SetCoverError::CapExceeded { size: 5, cap: 4 }
        );
        assert!(matches!(
            SetSystem::new(vec![0], vec![(vec![3], 0, 1)], 4),
            Err(SetCoverError::OutsideUniverse { owner: 0, element: 3 })
        ));
        assert!(matches!(
            SetSystem::new(vec![0], vec![(vec![0], 0, 1), (vec![0], 0, 1)], 4),
            Err(SetCoverError::DuplicateOwner { owner: 0 })
        ));
        assert!(matches!(
            SetSystem::new(vec![0], vec![(vec![0], 0, 0)], 4),
            Err(SetCoverError::ZeroWeight { owner: 0 })
        ));
        let sys = SetSystem::new(vec![0], vec![], 4).unwrap();
        assert_eq!(
            build_table(&sys).lookup(&[9]).unwrap_err(),
            SetCoverError::UnknownElement(9)
        );
    }

    #[test]
    fn dominating_set_small_cases() {
        let path = Graph::unit_lengths(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(dominating_set_via_vc(&path, &[1], DEFAULT_TABLE_CAP).unwrap(), vec![1]);
        let star = Graph::unit_lengths(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(dominating_set_via_vc(&star, &[0], DEFAULT_TABLE_CAP).unwrap(), vec![0]);
        assert_eq!(
            dominating_set_via_vc(&path, &[0], DEFAULT_TABLE_CAP),
            Err(SetCoverError::NotAVertexCover { u: 1, v: 2 })
        );
    }
}
