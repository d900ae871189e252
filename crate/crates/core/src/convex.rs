//! Closure systems on small ground sets, the anti-exchange property, and the
//! passage between meet-distributive lattices and convex geometries.

use serde::{Deserialize, Serialize};

use crate::bits::{self, contains, is_subset};
use crate::digraph::Verdict;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::properties::is_meet_distributive;

/// Ground sets larger than this are not enumerated.
pub const MAX_ENUMERATED_GROUND: usize = 4;

/// A closure system stored as its family of closed sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct ClosureSystem {
    ground: usize,
    /// Sorted by size, then by bit pattern; no duplicates.
    closed: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    ground: usize,
    closed: Vec<Vec<usize>>,
}

impl TryFrom<RawSystem> for ClosureSystem {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        if raw.ground > bits::MAX_SIZE {
            return Err(Error::TooLarge(raw.ground));
        }
        let mut sets = Vec::with_capacity(raw.closed.len());
        for set in raw.closed {
            if let Some(&x) = set.iter().find(|&&x| x >= raw.ground) {
                return Err(Error::OutOfRange { index: x, size: raw.ground });
            }
            sets.push(bits::from_iter(set));
        }
        ClosureSystem::new(raw.ground, sets)
    }
}

impl From<ClosureSystem> for RawSystem {
    fn from(c: ClosureSystem) -> Self {
        RawSystem {
            ground: c.ground,
            closed: c.closed.iter().map(|&s| bits::to_vec(s)).collect(),
        }
    }
}

impl ClosureSystem {
    /// Validate a family of closed sets on `{0, .., ground-1}`: it must
    /// contain the whole ground set and be closed under intersection.
    pub fn new(ground: usize, closed: Vec<u64>) -> Result<Self> {
        if ground > bits::MAX_SIZE {
            return Err(Error::TooLarge(ground));
        }
        let full = bits::full(ground);
        let mut closed = closed;
        if let Some(&s) = closed.iter().find(|&&s| !is_subset(s, full)) {
            return Err(Error::InvalidClosureSystem(format!(
                "set {:?} is not contained in the ground set",
                bits::to_vec(s)
            )));
        }
        closed.sort_by_key(|&s| (s.count_ones(), s));
        closed.dedup();
        if !closed.contains(&full) {
            return Err(Error::InvalidClosureSystem("the ground set is not closed".into()));
        }
        for (i, &a) in closed.iter().enumerate() {
            for &b in &closed[i + 1..] {
                if closed.binary_search_by_key(&((a & b).count_ones(), a & b), |&s| (s.count_ones(), s)).is_err() {
                    return Err(Error::InvalidClosureSystem(format!(
                        "{:?} ∩ {:?} is not closed",
                        bits::to_vec(a),
                        bits::to_vec(b)
                    )));
                }
            }
        }
        Ok(ClosureSystem { ground, closed })
    }

    /// Every subset closed.
    pub fn powerset(ground: usize) -> Result<Self> {
        if ground > 16 {
            return Err(Error::TooLarge(ground));
        }
        ClosureSystem::new(ground, (0..1u64 << ground).collect())
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn closed_sets(&self) -> &[u64] {
        &self.closed
    }

    pub fn is_closed(&self, y: u64) -> bool {
        self.closed.contains(&y)
    }

    /// The least closed superset of `y`.
    pub fn closure_of(&self, y: u64) -> u64 {
        // the sets are sorted by size, so the first superset is the least one
        *self
            .closed
            .iter()
            .find(|&&s| is_subset(y, s))
            .expect("the ground set is closed")
    }

    pub fn is_zero_closure(&self) -> bool {
        self.closed.first() == Some(&0)
    }
}

/// A failure of anti-exchange: `a` is closed, `x ≠ y` lie outside it, and
/// each of `x`, `y` is in the closure of `a` plus the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AepViolation {
    pub a: u64,
    pub x: usize,
    pub y: usize,
}

pub fn satisfies_aep(c: &ClosureSystem) -> Verdict<AepViolation> {
    let mut first = None;
    'scan: for &a in &c.closed {
        for x in (0..c.ground).filter(|&x| !contains(a, x)) {
            for y in (0..c.ground).filter(|&y| y != x && !contains(a, y)) {
                let xy = contains(c.closure_of(a | bits::bit(y)), x);
                let yx = contains(c.closure_of(a | bits::bit(x)), y);
                if xy && yx {
                    first = Some(AepViolation { a, x, y });
                    break 'scan;
                }
            }
        }
    }
    Verdict::from_first(first)
}

pub fn is_convex_geometry(c: &ClosureSystem) -> bool {
    c.is_zero_closure() && satisfies_aep(c).holds()
}

fn set_label(s: u64) -> String {
    let items: Vec<String> = bits::iter(s).map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// The closed sets ordered by inclusion, labelled by their members.
pub fn cld_lattice(c: &ClosureSystem) -> FiniteLattice {
    let sets = &c.closed;
    FiniteLattice::from_leq(sets.len(), |i, j| is_subset(sets[i], sets[j]))
        .and_then(|l| l.with_labels(sets.iter().map(|&s| set_label(s)).collect()))
        .expect("closed sets under inclusion form a lattice")
}

/// The closure system on `J(L)` whose closed sets are the join-irreducibles
/// below each element. Returns the system together with the join-irreducible
/// each ground point stands for.
pub fn join_irreducible_representation(l: &FiniteLattice) -> (ClosureSystem, Vec<usize>) {
    let points = bits::to_vec(l.join_irreducibles());
    let closed = l
        .elements()
        .map(|x| bits::from_iter((0..points.len()).filter(|&i| l.leq(points[i], x))))
        .collect();
    let system = ClosureSystem::new(points.len(), closed).expect("down-sets of J(L) are intersection-closed");
    (system, points)
}

/// The convex geometry of a meet-distributive lattice.
pub fn lattice_to_convex_geometry(l: &FiniteLattice) -> Result<ClosureSystem> {
    if let Some(w) = is_meet_distributive(l).witness {
        return Err(Error::NotMeetDistributive(w[0]));
    }
    Ok(join_irreducible_representation(l).0)
}

/// All convex geometries on `{0, .., ground-1}`.
pub fn enumerate_convex_geometries(ground: usize) -> Result<Vec<ClosureSystem>> {
    if ground > MAX_ENUMERATED_GROUND {
        return Err(Error::BoundTooLarge {
            bound: ground,
            max: MAX_ENUMERATED_GROUND,
        });
    }
    let full = bits::full(ground);
    // subsets other than the empty set and the ground set are optional
    let optional: Vec<u64> = (1..full).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << optional.len() {
        let mut closed = vec![0, full];
        closed.extend(bits::iter(choice).map(|i| optional[i]));
        if let Ok(system) = ClosureSystem::new(ground, closed) {
            if satisfies_aep(&system).holds() {
                out.push(system);
            }
        }
    }
    Ok(out)
}
