//! The finite lattice / TiRS digraph correspondence.
//!
//! A lattice `L` goes to its dual digraph `G_L`, whose vertices are the
//! maximal disjoint filter-ideal pairs `⟨↑a, ↓b⟩` of `L` with an arc from
//! `⟨↑a, ↓b⟩` to `⟨↑c, ↓d⟩` iff `a ≰ d`. A digraph `G` goes to the lattice
//! `ℂ(G)` of its maximal partial E-preserving maps into `{0 ≤ 1}`, ordered by
//! inclusion of their 1-sets. For finite lattices and finite TiRS digraphs
//! the two constructions are mutually inverse up to isomorphism.
//!
//! # Enumerating maximal partial maps
//!
//! For a reflexive digraph and a set `A` of vertices let `AE` be the union of
//! the out-sets of `A`. Any E-preserving map with 1-set `A` can send to 0 at
//! most the vertices outside `AE`, and sending all of them to 0 is
//! E-preserving, so a maximal map with 1-set `A` has 0-set exactly
//! `V \ AE`. Such a map is maximal iff no vertex of `AE \ A` can be set to
//! 1, i.e. iff `A = { u : uE ⊆ AE }`. Since any restriction of an
//! E-preserving map is E-preserving, a map that is properly extendable is
//! extendable by a single vertex, so this local test captures maximality.
//!
//! The 1-sets of maximal maps are therefore the fixed points of the
//! extensive, monotone operator `A ↦ { u : uE ⊆ AE }`. Those fixed points
//! are closed under intersection, and [`mpe_enumerate`] lists them with
//! Ganter's next-closure algorithm. [`mpe_enumerate_scan`] is the plain
//! exhaustive scan over all `3^|V|` partial maps, kept as an oracle.

use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, contains, is_subset, MAX_SIZE};
use crate::digraph::{self, Digraph};
use crate::error::{Error, Result};
use crate::lattice::{self, FiniteLattice};

/// The pair `⟨↑a, ↓b⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mdfip {
    pub a: usize,
    pub b: usize,
}

impl Mdfip {
    pub fn new(a: usize, b: usize) -> Self {
        Mdfip { a, b }
    }

    /// `ab`-style name from the lattice's element names.
    pub fn name(&self, l: &FiniteLattice) -> String {
        let (a, b) = (l.name(self.a), l.name(self.b));
        if a.chars().count() == 1 && b.chars().count() == 1 {
            format!("{a}{b}")
        } else {
            format!("{a},{b}")
        }
    }
}

/// Conditions (i)-(iv) of the MDFIP characterisation, for `a ≰ b`:
/// `a ∈ J(L)`, `b ∈ M(L)`, `b ≺ a ∨ b`, `a ∧ b ≺ a`.
pub fn is_mdfip(l: &FiniteLattice, a: usize, b: usize) -> bool {
    !l.leq(a, b)
        && l.is_join_irreducible(a)
        && l.is_meet_irreducible(b)
        && l.covers(b, l.join(a, b))
        && l.covers(l.meet(a, b), a)
}

/// All MDFIPs of `l`, sorted by `(a, b)`.
pub fn mdfips(l: &FiniteLattice) -> Vec<Mdfip> {
    let (j, m) = (l.join_irreducibles(), l.meet_irreducibles());
    bits::iter(j)
        .flat_map(|a| bits::iter(m).map(move |b| (a, b)))
        .filter(|&(a, b)| is_mdfip(l, a, b))
        .map(|(a, b)| Mdfip::new(a, b))
        .collect()
}

/// All MDFIPs straight from the definition: disjoint pairs `⟨↑a, ↓b⟩` that no
/// other disjoint pair `⟨↑a', ↓b'⟩` with `a' ≤ a`, `b ≤ b'` extends.
pub fn mdfips_bruteforce(l: &FiniteLattice) -> Vec<Mdfip> {
    let disjoint: Vec<(usize, usize)> = l
        .elements()
        .flat_map(|a| l.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| !l.leq(a, b))
        .collect();
    disjoint
        .iter()
        .filter(|&&(a, b)| {
            !disjoint
                .iter()
                .any(|&(c, d)| (c, d) != (a, b) && l.leq(c, a) && l.leq(b, d))
        })
        .map(|&(a, b)| Mdfip::new(a, b))
        .collect()
}

/// The dual digraph `G_L`, vertices in [`mdfips`] order, labelled by their
/// MDFIPs and named `ab`-style.
///
/// Panics when `L` has more than 64 MDFIPs; see [`try_dual_digraph`].
pub fn dual_digraph(l: &FiniteLattice) -> Digraph {
    try_dual_digraph(l).expect("MDFIP count fits")
}

/// [`dual_digraph`], failing with [`Error::TooLarge`] when `L` has more
/// MDFIPs than a digraph can hold.
pub fn try_dual_digraph(l: &FiniteLattice) -> Result<Digraph> {
    let vertices = mdfips(l);
    if vertices.len() > MAX_SIZE {
        return Err(Error::TooLarge(vertices.len()));
    }
    let rows = vertices
        .iter()
        .map(|x| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, y)| !l.leq(x.a, y.b))
                .fold(0u64, |row, (i, _)| row | bit(i))
        })
        .collect();
    let names = vertices.iter().map(|x| x.name(l)).collect();
    Ok(Digraph::from_rows(rows)?.with_names(names).with_labels(vertices))
}

/// The MDFIPs `⟨↑a', ↓b'⟩` extending the disjoint pair `⟨↑a, ↓b⟩`.
pub fn maximal_extensions(l: &FiniteLattice, a: usize, b: usize) -> Result<Vec<Mdfip>> {
    for x in [a, b] {
        if x >= l.len() {
            return Err(Error::OutOfRange { index: x, size: l.len() });
        }
    }
    if l.leq(a, b) {
        return Err(Error::NotDisjoint { a, b });
    }
    Ok(mdfips(l)
        .into_iter()
        .filter(|m| l.leq(m.a, a) && l.leq(b, m.b))
        .collect())
}

/// `T_ab = { m ∈ M(L) : b ≤ m, a ≰ m }`.
pub fn t_set(l: &FiniteLattice, a: usize, b: usize) -> u64 {
    bits::from_iter(bits::iter(l.meet_irreducibles()).filter(|&m| l.leq(b, m) && !l.leq(a, m)))
}

/// A partial map into `{0, 1}` given by its 1-set and 0-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialTwoMap {
    pub ones: u64,
    pub zeros: u64,
}

impl PartialTwoMap {
    pub fn value(&self, x: usize) -> Option<bool> {
        if contains(self.ones, x) {
            Some(true)
        } else if contains(self.zeros, x) {
            Some(false)
        } else {
            None
        }
    }

    pub fn domain(&self) -> u64 {
        self.ones | self.zeros
    }

    /// Disjoint, and no arc runs from a 1 to a 0.
    pub fn is_e_preserving(&self, g: &Digraph) -> bool {
        self.ones & self.zeros == 0 && bits::iter(self.ones).all(|x| g.out_set(x) & self.zeros == 0)
    }

    /// E-preserving and not extendable by any single vertex.
    pub fn is_maximal(&self, g: &Digraph) -> bool {
        self.is_e_preserving(g)
            && bits::iter(bits::full(g.vertex_count()) & !self.domain()).all(|u| {
                let can_be_one = g.out_set(u) & self.zeros == 0;
                let can_be_zero = g.in_set(u) & self.ones == 0;
                !can_be_one && !can_be_zero
            })
    }
}

/// All maximal partial E-preserving maps of a reflexive digraph, sorted by
/// the size and then the bits of their 1-sets.
pub fn mpe_enumerate(g: &Digraph) -> Result<Vec<PartialTwoMap>> {
    if let Some(x) = g.missing_loop() {
        return Err(Error::NotReflexive(x));
    }
    let v = g.vertex_count();
    let closure = |a: u64| mpe_closure(g, a);
    let mut out = Vec::new();
    // next-closure over the lectic order, highest vertex = least significant
    let mut current = closure(0);
    loop {
        out.push(current);
        match next_closure(current, v, &closure) {
            Some(next) => current = next,
            None => break,
        }
    }
    let mut maps: Vec<PartialTwoMap> = out
        .into_iter()
        .map(|ones| PartialTwoMap {
            ones,
            zeros: bits::full(v) & !reach(g, ones),
        })
        .collect();
    maps.sort_by_key(|m| (m.ones.count_ones(), m.ones));
    Ok(maps)
}

/// `AE`: everything reachable from `a` in one step.
fn reach(g: &Digraph, a: u64) -> u64 {
    bits::iter(a).fold(0, |acc, x| acc | g.out_set(x))
}

/// Least fixed point of `A ↦ { u : uE ⊆ AE }` above `a`.
fn mpe_closure(g: &Digraph, mut a: u64) -> u64 {
    loop {
        let ae = reach(g, a);
        let next = a | bits::from_iter(g.vertices().filter(|&u| is_subset(g.out_set(u), ae)));
        if next == a {
            return a;
        }
        a = next;
    }
}

/// Ganter's next closure: the lectically next closed set after `current`.
fn next_closure(current: u64, v: usize, closure: &impl Fn(u64) -> u64) -> Option<u64> {
    for i in (0..v).rev() {
        if contains(current, i) {
            continue;
        }
        let prefix = current & bits::full(i);
        let candidate = closure(prefix | bit(i));
        if candidate & bits::full(i) == prefix {
            return Some(candidate);
        }
    }
    None
}

/// Exhaustive scan over all `3^|V|` partial maps, pruning E-violations as
/// they appear, keeping the maximal ones. Same order as [`mpe_enumerate`].
pub fn mpe_enumerate_scan(g: &Digraph) -> Result<Vec<PartialTwoMap>> {
    if let Some(x) = g.missing_loop() {
        return Err(Error::NotReflexive(x));
    }
    fn go(g: &Digraph, x: usize, map: PartialTwoMap, out: &mut Vec<PartialTwoMap>) {
        if x == g.vertex_count() {
            if map.is_maximal(g) {
                out.push(map);
            }
            return;
        }
        // x ↦ 1: nothing already 0 may be reachable from x
        if g.out_set(x) & map.zeros == 0 {
            go(g, x + 1, PartialTwoMap { ones: map.ones | bit(x), ..map }, out);
        }
        // x ↦ 0: nothing already 1 may reach x
        if g.in_set(x) & map.ones == 0 {
            go(g, x + 1, PartialTwoMap { zeros: map.zeros | bit(x), ..map }, out);
        }
        go(g, x + 1, map, out);
    }
    let mut out = Vec::new();
    go(g, 0, PartialTwoMap { ones: 0, zeros: 0 }, &mut out);
    out.sort_by_key(|m| (m.ones.count_ones(), m.ones));
    Ok(out)
}

/// `ℂ(G)`: the maximal partial maps ordered by inclusion of 1-sets, in
/// [`mpe_enumerate`] order. Fails with `NotALattice` if that order is not a
/// lattice order.
pub fn mpe_lattice(g: &Digraph) -> Result<FiniteLattice> {
    let maps = mpe_enumerate(g)?;
    lattice_of_maps(&maps)
}

pub fn lattice_of_maps(maps: &[PartialTwoMap]) -> Result<FiniteLattice> {
    FiniteLattice::from_leq(maps.len(), |i, j| is_subset(maps[i].ones, maps[j].ones))
}

/// `L ≅ ℂ(G_L)`.
pub fn roundtrip_lattice(l: &FiniteLattice) -> Result<bool> {
    let back = mpe_lattice(&dual_digraph(l))?;
    Ok(lattice::lattice_isomorphic(l, &back))
}

/// `G ≅ G_{ℂ(G)}`, for a TiRS digraph `G`.
pub fn roundtrip_digraph(g: &Digraph) -> Result<bool> {
    let back = dual_digraph(&mpe_lattice(g)?);
    Ok(digraph::digraph_isomorphic(g, &back))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(l: &FiniteLattice, ms: &[Mdfip]) -> Vec<String> {
        ms.iter().map(|m| m.name(l)).collect()
    }

    #[test]
    fn mdfips_of_fixtures() {
        let n5 = fixtures::n5();
        assert_eq!(names(&n5, &mdfips(&n5)), ["ab", "bc", "ca"]);
        assert_eq!(mdfips(&fixtures::chain(2)), vec![Mdfip::new(1, 0)]);
        let l3d = fixtures::l3_dual();
        assert_eq!(names(&l3d, &mdfips(&l3d)), ["ab", "ac", "ba", "bc", "cd"]);
    }

    #[test]
    fn bruteforce_agrees_on_fixtures() {
        let m3 = fixtures::m3();
        assert_eq!(names(&m3, &mdfips_bruteforce(&m3)), ["ab", "ac", "ba", "bc", "ca", "cb"]);
        assert_eq!(mdfips_bruteforce(&fixtures::chain(3)), vec![Mdfip::new(1, 0), Mdfip::new(2, 1)]);
        for f in fixtures::Fixture::FIGURES {
            let l = f.lattice();
            assert_eq!(mdfips(&l), mdfips_bruteforce(&l), "{}", f.name());
        }
    }

    #[test]
    fn dual_of_n5() {
        let g = dual_digraph(&fixtures::n5());
        let arcs: Vec<_> = g.non_loop_arcs().into_iter().map(|(x, y)| (g.name(x), g.name(y))).collect();
        assert_eq!(arcs, [("ab".to_string(), "bc".to_string()), ("bc".into(), "ca".into())]);
        assert!(g.is_reflexive());
    }

    #[test]
    fn dual_of_m3_follows_the_arc_rule() {
        let m3 = fixtures::m3();
        let g = dual_digraph(&m3);
        assert_eq!(g.vertex_count(), 6);
        let labels = g.labels().unwrap();
        for x in g.vertices() {
            for y in g.vertices() {
                // xy → zw iff x ≠ w
                assert_eq!(g.has_arc(x, y), labels[x].a != labels[y].b);
            }
        }
        let mutual = g
            .non_loop_arcs()
            .iter()
            .filter(|&&(x, y)| x < y && g.has_arc(y, x))
            .count();
        let single = g.non_loop_arcs().iter().filter(|&&(x, y)| !g.has_arc(y, x)).count();
        assert_eq!((mutual, single), (6, 6));
    }

    #[test]
    fn extensions() {
        let n5 = fixtures::n5();
        let e = |s| n5.element(s).unwrap();
        assert_eq!(maximal_extensions(&n5, e("a"), e("c")).unwrap(), vec![Mdfip::new(e("a"), e("b"))]);
        for m in mdfips(&n5) {
            assert_eq!(maximal_extensions(&n5, m.a, m.b).unwrap(), vec![m]);
        }
        assert_eq!(
            maximal_extensions(&n5, e("c"), e("b")),
            Err(Error::NotDisjoint { a: e("c"), b: e("b") })
        );
        let m3 = fixtures::m3();
        let e = |s| m3.element(s).unwrap();
        assert_eq!(
            maximal_extensions(&m3, e("a"), e("0")).unwrap(),
            vec![Mdfip::new(e("a"), e("b")), Mdfip::new(e("a"), e("c"))]
        );
    }

    #[test]
    fn t_sets() {
        let n5 = fixtures::n5();
        let e = |s| n5.element(s).unwrap();
        assert_eq!(t_set(&n5, e("a"), e("0")), bit(e("b")) | bit(e("c")));
        assert_eq!(t_set(&n5, e("c"), e("b")), 0);
        let m3 = fixtures::m3();
        let e = |s| m3.element(s).unwrap();
        assert_eq!(t_set(&m3, e("a"), e("0")), bit(e("b")) | bit(e("c")));
    }

    #[test]
    fn mpes_of_small_digraphs() {
        let one = Digraph::discrete(1).unwrap();
        assert_eq!(
            mpe_enumerate(&one).unwrap(),
            vec![PartialTwoMap { ones: 0, zeros: 1 }, PartialTwoMap { ones: 1, zeros: 0 }]
        );
        let g = dual_digraph(&fixtures::n5());
        assert_eq!(mpe_enumerate(&g).unwrap().len(), 5);
        assert_eq!(mpe_enumerate(&g).unwrap(), mpe_enumerate_scan(&g).unwrap());
        let two = Digraph::discrete(2).unwrap();
        let maps = mpe_enumerate(&two).unwrap();
        assert_eq!(maps.len(), 4);
        assert!(maps.iter().all(|m| m.domain() == 0b11));
    }

    #[test]
    fn mpe_lattices() {
        assert!(lattice::lattice_isomorphic(
            &mpe_lattice(&Digraph::discrete(1).unwrap()).unwrap(),
            &fixtures::chain(2)
        ));
        assert!(lattice::lattice_isomorphic(
            &mpe_lattice(&Digraph::discrete(2).unwrap()).unwrap(),
            &fixtures::b2()
        ));
        let m3 = fixtures::m3();
        assert!(lattice::lattice_isomorphic(&mpe_lattice(&dual_digraph(&m3)).unwrap(), &m3));
    }

    #[test]
    fn fixture_round_trips() {
        for f in fixtures::Fixture::FIGURES {
            let l = f.lattice();
            assert!(roundtrip_lattice(&l).unwrap(), "{}", f.name());
            assert!(roundtrip_digraph(&dual_digraph(&l)).unwrap(), "{}", f.name());
        }
        for k in 1..=6 {
            assert!(roundtrip_lattice(&fixtures::chain(k)).unwrap());
        }
    }
}
