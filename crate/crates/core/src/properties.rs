//! Decision procedures for lattice conditions.
//!
//! Each property is a universally quantified statement over tuples of
//! elements. A checker scans its quantification domain in lexicographic
//! order and reports the first tuple at which the condition fails, so
//! witnesses are deterministic and minimal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::duality::is_mdfip;
use crate::error::Error;
use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    /// (USM) `a ∧ b ≺ a ⟹ b ≺ a ∨ b`
    Usm,
    /// (LSM) `a ≺ a ∨ b ⟹ a ∧ b ≺ b`
    Lsm,
    Modular,
    Distributive,
    /// (JSD) `a ∨ b = a ∨ c ⟹ a ∨ b = a ∨ (b ∧ c)`
    Jsd,
    /// (MSD) `a ∧ b = a ∧ c ⟹ a ∧ b = a ∧ (b ∨ c)`
    Msd,
    Sd,
    /// (JSD) restricted to `a ∈ M(L)`, `b ∈ J(L)`
    Wjsd,
    /// (LSM)'s cover condition for `a ∈ J(L)`, `b ∈ M(L)`:
    /// `b ≺ a ∨ b ⟹ a ∧ b ≺ a`
    JmLsm,
    /// `a ∈ J(L)`, `b ∈ M(L)`: `a ∧ b ≺ a ⟹ b ≺ a ∨ b`
    JmUsm,
    /// `a ∈ J(L)`, `b ∈ M(L)`, `a ≰ b`: some `c ≥ b` makes `⟨↑a, ↓c⟩` an MDFIP
    LAbc,
    /// `a ∈ J(L)`, `b ∈ M(L)`, `a ≰ b`: some `c ≤ a` makes `⟨↑c, ↓b⟩` an MDFIP
    UAbc,
    /// Every interval `[μ(a), a]` is distributive.
    MeetDistributive,
}

impl Property {
    pub const ALL: [Property; 13] = [
        Property::Usm,
        Property::Lsm,
        Property::Modular,
        Property::Distributive,
        Property::Jsd,
        Property::Msd,
        Property::Sd,
        Property::Wjsd,
        Property::JmLsm,
        Property::JmUsm,
        Property::LAbc,
        Property::UAbc,
        Property::MeetDistributive,
    ];

    /// The CLI name.
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Usm => "usm",
            Property::Lsm => "lsm",
            Property::Modular => "mod",
            Property::Distributive => "dist",
            Property::Jsd => "jsd",
            Property::Msd => "msd",
            Property::Sd => "sd",
            Property::Wjsd => "wjsd",
            Property::JmLsm => "jmlsm",
            Property::JmUsm => "jmusm",
            Property::LAbc => "labc",
            Property::UAbc => "uabc",
            Property::MeetDistributive => "md",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().to_ascii_lowercase();
        let alias = match s.as_str() {
            "modular" => "mod",
            "distributive" => "dist",
            "meet-distributive" | "meetdist" => "md",
            "jm-lsm" => "jmlsm",
            "jm-usm" => "jmusm",
            "l-abc" => "labc",
            "u-abc" => "uabc",
            "w-jsd" => "wjsd",
            other => other,
        };
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == alias)
            .ok_or(Error::UnknownProperty(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    /// The first failing tuple; present iff `holds` is false.
    pub witness: Option<Vec<usize>>,
}

/// Evaluate `property` on `l`.
pub fn check(l: &FiniteLattice, property: Property) -> PropertyReport {
    let witness = domain(l, property).into_iter().find(|t| !holds_at(l, property, t));
    PropertyReport {
        property,
        holds: witness.is_none(),
        witness,
    }
}

/// Does the defining condition of `property` hold at the tuple `t`? Tuples
/// outside the property's quantification domain trivially hold.
pub fn holds_at(l: &FiniteLattice, property: Property, t: &[usize]) -> bool {
    let cov = |x, y| l.covers(x, y);
    let (m, j) = (|x, y| l.meet(x, y), |x, y| l.join(x, y));
    match (property, t) {
        (Property::Usm, &[a, b]) => !cov(m(a, b), a) || cov(b, j(a, b)),
        (Property::Lsm, &[a, b]) => !cov(a, j(a, b)) || cov(m(a, b), b),
        (Property::Modular, &[a, b, c]) => !l.leq(a, c) || j(a, m(b, c)) == m(j(a, b), c),
        (Property::Distributive, &[a, b, c]) => m(a, j(b, c)) == j(m(a, b), m(a, c)),
        (Property::Jsd | Property::Wjsd, &[a, b, c]) => j(a, b) != j(a, c) || j(a, b) == j(a, m(b, c)),
        (Property::Msd, &[a, b, c]) => m(a, b) != m(a, c) || m(a, b) == m(a, j(b, c)),
        (Property::Sd, &[_, _, _]) => holds_at(l, Property::Jsd, t) && holds_at(l, Property::Msd, t),
        (Property::JmLsm, &[a, b]) => !cov(b, j(a, b)) || cov(m(a, b), a),
        (Property::JmUsm, &[a, b]) => !cov(m(a, b), a) || cov(b, j(a, b)),
        (Property::LAbc, &[a, b]) => {
            l.leq(a, b) || bits::iter(l.up_set(b)).any(|c| is_mdfip(l, a, c))
        }
        (Property::UAbc, &[a, b]) => {
            l.leq(a, b) || bits::iter(l.down_set(a)).any(|c| is_mdfip(l, c, b))
        }
        (Property::MeetDistributive, &[a]) => match l.mu(a) {
            Ok(mu) => {
                let interval = l.interval(mu, a).expect("mu(a) <= a");
                check(&interval, Property::Distributive).holds
            }
            Err(_) => true,
        },
        _ => true,
    }
}

/// The quantification domain of `property`, in lexicographic order.
fn domain(l: &FiniteLattice, property: Property) -> Vec<Vec<usize>> {
    let all = bits::full(l.len());
    let (jl, ml) = (l.join_irreducibles(), l.meet_irreducibles());
    let pairs = |xs: u64, ys: u64| -> Vec<Vec<usize>> {
        bits::iter(xs)
            .flat_map(|a| bits::iter(ys).map(move |b| vec![a, b]))
            .collect()
    };
    let triples = |xs: u64, ys: u64, zs: u64| -> Vec<Vec<usize>> {
        bits::iter(xs)
            .flat_map(|a| bits::iter(ys).flat_map(move |b| bits::iter(zs).map(move |c| vec![a, b, c])))
            .collect()
    };
    match property {
        Property::Usm | Property::Lsm => pairs(all, all),
        Property::JmLsm | Property::JmUsm | Property::LAbc | Property::UAbc => pairs(jl, ml),
        Property::Modular | Property::Distributive | Property::Jsd | Property::Msd | Property::Sd => {
            triples(all, all, all)
        }
        Property::Wjsd => triples(ml, jl, all),
        // bottom has no lower covers, so μ(bottom) is undefined
        Property::MeetDistributive => l
            .elements()
            .filter(|&a| a != l.bottom())
            .map(|a| vec![a])
            .collect(),
    }
}

pub fn is_usm(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::Usm)
}

pub fn is_lsm(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::Lsm)
}

pub fn is_modular(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::Modular)
}

pub fn is_distributive(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::Distributive)
}

pub fn is_jsd(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::Jsd)
}

pub fn is_msd(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::Msd)
}

pub fn is_sd(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::Sd)
}

pub fn is_wjsd(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::Wjsd)
}

pub fn is_jm_lsm(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::JmLsm)
}

pub fn is_jm_usm(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::JmUsm)
}

pub fn satisfies_labc(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::LAbc)
}

pub fn satisfies_uabc(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::UAbc)
}

pub fn is_meet_distributive(l: &FiniteLattice) -> PropertyReport {
    check(l, Property::MeetDistributive)
}
