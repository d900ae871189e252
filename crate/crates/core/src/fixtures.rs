//! Named test lattices, transcribed from their Hasse diagrams.
//!
//! Elements are numbered `0`, then the lettered elements in alphabetical
//! order, then `1`; the labels carry the original names.

use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    N5,
    L4,
    L4Dual,
    L3Dual,
    M3,
    K,
    B2,
    Chain(usize),
}

impl Fixture {
    pub fn lattice(self) -> FiniteLattice {
        match self {
            Fixture::N5 => n5(),
            Fixture::L4 => l4(),
            Fixture::L4Dual => l4_dual(),
            Fixture::L3Dual => l3_dual(),
            Fixture::M3 => m3(),
            Fixture::K => k(),
            Fixture::B2 => b2(),
            Fixture::Chain(k) => chain(k),
        }
    }

    pub fn name(self) -> String {
        match self {
            Fixture::N5 => "N5".into(),
            Fixture::L4 => "L4".into(),
            Fixture::L4Dual => "L4D".into(),
            Fixture::L3Dual => "L3D".into(),
            Fixture::M3 => "M3".into(),
            Fixture::K => "K".into(),
            Fixture::B2 => "B2".into(),
            Fixture::Chain(k) => format!("CHAIN({k})"),
        }
    }

    /// Parse `N5`, `L4`, `L4D`, `L3D`, `M3`, `K`, `B2` or `CHAIN(k)`.
    pub fn from_name(name: &str) -> Option<Fixture> {
        let upper = name.trim().to_ascii_uppercase();
        Some(match upper.as_str() {
            "N5" => Fixture::N5,
            "L4" => Fixture::L4,
            "L4D" => Fixture::L4Dual,
            "L3D" => Fixture::L3Dual,
            "M3" => Fixture::M3,
            "K" => Fixture::K,
            "B2" => Fixture::B2,
            _ => {
                let k = upper.strip_prefix("CHAIN(")?.strip_suffix(')')?.parse().ok()?;
                if k == 0 {
                    return None;
                }
                Fixture::Chain(k)
            }
        })
    }

    /// The fixed figures (chains excluded).
    pub const FIGURES: [Fixture; 6] = [
        Fixture::N5,
        Fixture::L4,
        Fixture::L4Dual,
        Fixture::L3Dual,
        Fixture::M3,
        Fixture::K,
    ];
}

fn build(names: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
    let idx = |s: &str| names.iter().position(|&n| n == s).expect("known element");
    let pairs: Vec<_> = covers.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    FiniteLattice::from_covers(names.len(), &pairs)
        .and_then(|l| l.with_labels(names.iter().map(|s| s.to_string()).collect()))
        .expect("fixture is a lattice")
}

/// The pentagon: `0 ≺ a ≺ 1` and `0 ≺ c ≺ b ≺ 1`.
pub fn n5() -> FiniteLattice {
    build(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "c"), ("c", "b"), ("a", "1"), ("b", "1")],
    )
}

pub fn l4() -> FiniteLattice {
    build(
        &["0", "a", "b", "c", "d", "e", "1"],
        &[
            ("0", "d"),
            ("0", "e"),
            ("d", "a"),
            ("d", "b"),
            ("e", "b"),
            ("e", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
}

pub fn l4_dual() -> FiniteLattice {
    build(
        &["0", "a", "b", "c", "d", "e", "1"],
        &[
            ("0", "c"),
            ("0", "d"),
            ("0", "e"),
            ("c", "a"),
            ("d", "a"),
            ("d", "b"),
            ("e", "b"),
            ("a", "1"),
            ("b", "1"),
        ],
    )
}

pub fn l3_dual() -> FiniteLattice {
    build(
        &["0", "a", "b", "c", "d", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "d"),
            ("b", "d"),
            ("d", "1"),
            ("c", "1"),
        ],
    )
}

pub fn m3() -> FiniteLattice {
    build(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
}

/// A modular lattice whose dual digraph contains the two-arc path.
pub fn k() -> FiniteLattice {
    build(
        &["0", "a", "b", "c", "d", "e", "1"],
        &[
            ("0", "d"),
            ("0", "e"),
            ("d", "a"),
            ("e", "a"),
            ("e", "b"),
            ("e", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
}

pub fn b2() -> FiniteLattice {
    build(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
}

/// `chain(k)` is `0 < 1 < .. < k-1`, unlabeled.
pub fn chain(k: usize) -> FiniteLattice {
    FiniteLattice::chain(k).expect("k >= 1")
}
