//! Reflexive digraphs and the conditions that dual digraphs of lattices
//! satisfy: the TiRS axioms, their strengthenings (LTi)/(UTi), the
//! semidistributivity duals (dJSD)/(dMSD)/(dSD), transitivity, the three
//! forbidden 3-vertex patterns and the weak transitivity conditions.
//!
//! Every checker returns a [`Verdict`]; failures carry the first
//! counterexample in lexicographic vertex order.

use crate::bits::{self, bit, contains, is_proper_subset, is_subset};
use crate::duality::Mdfip;
use crate::error::{Error, Result};
use crate::iso;

/// Outcome of a universally quantified check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub(crate) fn from_first(w: Option<W>) -> Self {
        match w {
            Some(w) => Verdict::Fails(w),
            None => Verdict::Holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    v: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
    labels: Option<Vec<Mdfip>>,
    names: Option<Vec<String>>,
}

impl Digraph {
    /// A digraph on `v` vertices with the given arcs plus a loop at every
    /// vertex.
    pub fn from_arcs(v: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::from_arcs_exact(v, arcs)?;
        for x in 0..v {
            g.add_arc(x, x);
        }
        Ok(g)
    }

    /// Exactly the given arcs; loops are not added.
    pub fn from_arcs_exact(v: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if v > bits::MAX_SIZE {
            return Err(Error::TooLarge(v));
        }
        let mut g = Digraph {
            v,
            out: vec![0; v],
            inn: vec![0; v],
            labels: None,
            names: None,
        };
        for &(x, y) in arcs {
            for z in [x, y] {
                if z >= v {
                    return Err(Error::OutOfRange { index: z, size: v });
                }
            }
            g.add_arc(x, y);
        }
        Ok(g)
    }

    /// From adjacency rows (`rows[x]` = out-neighbourhood of `x`).
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let v = rows.len();
        if v > bits::MAX_SIZE {
            return Err(Error::TooLarge(v));
        }
        if let Some(&row) = rows.iter().find(|&&r| r & !bits::full(v) != 0) {
            let index = 63 - row.leading_zeros() as usize;
            return Err(Error::OutOfRange { index, size: v });
        }
        let mut inn = vec![0u64; v];
        for (x, &row) in rows.iter().enumerate() {
            for y in bits::iter(row) {
                inn[y] |= bit(x);
            }
        }
        Ok(Digraph {
            v,
            out: rows,
            inn,
            labels: None,
            names: None,
        })
    }

    /// `v` isolated vertices with loops.
    pub fn discrete(v: usize) -> Result<Self> {
        Self::from_arcs(v, &[])
    }

    fn add_arc(&mut self, x: usize, y: usize) {
        self.out[x] |= bit(y);
        self.inn[y] |= bit(x);
    }

    pub fn with_labels(mut self, labels: Vec<Mdfip>) -> Self {
        assert_eq!(labels.len(), self.v);
        self.labels = Some(labels);
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.v);
        self.names = Some(names);
        self
    }

    pub fn labels(&self) -> Option<&[Mdfip]> {
        self.labels.as_deref()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    /// Vertex carrying the given display name.
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.v
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        contains(self.out[x], y)
    }

    /// `xE`
    pub fn out_set(&self, x: usize) -> u64 {
        self.out[x]
    }

    /// `Ex`
    pub fn in_set(&self, x: usize) -> u64 {
        self.inn[x]
    }

    pub fn rows(&self) -> &[u64] {
        &self.out
    }

    /// All arcs, loops included, in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.vertices()
            .flat_map(|x| bits::iter(self.out[x]).map(move |y| (x, y)))
            .collect()
    }

    pub fn non_loop_arcs(&self) -> Vec<(usize, usize)> {
        self.arcs().into_iter().filter(|(x, y)| x != y).collect()
    }

    /// First vertex without a loop, if any.
    pub fn missing_loop(&self) -> Option<usize> {
        self.vertices().find(|&x| !self.has_arc(x, x))
    }

    pub fn is_reflexive(&self) -> bool {
        self.missing_loop().is_none()
    }

    /// The same vertices with every arc reversed.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            v: self.v,
            out: self.inn.clone(),
            inn: self.out.clone(),
            labels: None,
            names: self.names.clone(),
        }
    }

    /// Per-vertex invariants: out-degree, in-degree, number of 2-cycles.
    pub fn invariants(&self) -> Vec<[u32; 3]> {
        self.vertices()
            .map(|x| {
                let mutual = self.out[x] & self.inn[x] & !bit(x);
                [self.out[x].count_ones(), self.inn[x].count_ones(), mutual.count_ones()]
            })
            .collect()
    }

    pub fn canonical_key(&self) -> iso::CanonicalKey {
        iso::canonical_form(&self.out, &self.invariants()).0
    }

    /// The isomorphic copy numbered by the canonical ordering (unlabeled).
    pub fn canonical(&self) -> Digraph {
        let key = self.canonical_key();
        Digraph::from_rows(key.rows()).expect("canonical rows are in range")
    }

    fn arcs_iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices().flat_map(move |x| bits::iter(self.out[x]).map(move |y| (x, y)))
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let v = self.v;
        (0..v).flat_map(move |x| (x + 1..v).map(move |y| (x, y)))
    }
}

/// Result of checking the three TiRS axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TirsReport {
    /// (S): a pair of distinct vertices with equal out- and in-sets.
    pub s: Verdict<(usize, usize)>,
    /// (R): an arc `(x, y)` with `xE ⊂ yE` or `Ey ⊂ Ex`.
    pub r: Verdict<(usize, usize)>,
    /// (Ti): an arc `(x, y)` with no interpolating `z`.
    pub ti: Verdict<(usize, usize)>,
}

impl TirsReport {
    pub fn is_tirs(&self) -> bool {
        self.s.holds() && self.r.holds() && self.ti.holds()
    }
}

pub fn check_tirs(g: &Digraph) -> Result<TirsReport> {
    if let Some(x) = g.missing_loop() {
        return Err(Error::NotReflexive(x));
    }
    Ok(TirsReport {
        s: check_s(g),
        r: check_r(g),
        ti: check_ti(g),
    })
}

pub fn is_tirs(g: &Digraph) -> bool {
    check_tirs(g).map(|r| r.is_tirs()).unwrap_or(false)
}

pub fn check_s(g: &Digraph) -> Verdict<(usize, usize)> {
    Verdict::from_first(g.pairs().find(|&(x, y)| g.out[x] == g.out[y] && g.inn[x] == g.inn[y]))
}

pub fn check_r(g: &Digraph) -> Verdict<(usize, usize)> {
    Verdict::from_first(g.arcs_iter().find(|&(x, y)| {
        is_proper_subset(g.out[x], g.out[y]) || is_proper_subset(g.inn[y], g.inn[x])
    }))
}

pub fn check_ti(g: &Digraph) -> Verdict<(usize, usize)> {
    Verdict::from_first(g.arcs_iter().find(|&(x, y)| {
        !g.vertices().any(|z| is_subset(g.out[z], g.out[x]) && is_subset(g.inn[z], g.inn[y]))
    }))
}

/// (LTi): every arc `u → v` has a `w` with `wE = uE` and `Ew ⊆ Ev`.
pub fn check_lti(g: &Digraph) -> Verdict<(usize, usize)> {
    Verdict::from_first(g.arcs_iter().find(|&(u, v)| {
        !g.vertices().any(|w| g.out[w] == g.out[u] && is_subset(g.inn[w], g.inn[v]))
    }))
}

/// (UTi): every arc `u → v` has a `w` with `wE ⊆ uE` and `Ew = Ev`.
pub fn check_uti(g: &Digraph) -> Verdict<(usize, usize)> {
    Verdict::from_first(g.arcs_iter().find(|&(u, v)| {
        !g.vertices().any(|w| is_subset(g.out[w], g.out[u]) && g.inn[w] == g.inn[v])
    }))
}

/// (dJSD): distinct vertices have distinct in-sets.
pub fn check_djsd(g: &Digraph) -> Verdict<(usize, usize)> {
    Verdict::from_first(g.pairs().find(|&(x, y)| g.inn[x] == g.inn[y]))
}

/// (dMSD): distinct vertices have distinct out-sets.
pub fn check_dmsd(g: &Digraph) -> Verdict<(usize, usize)> {
    Verdict::from_first(g.pairs().find(|&(x, y)| g.out[x] == g.out[y]))
}

/// (dSD): (dJSD) and (dMSD) together.
pub fn check_dsd(g: &Digraph) -> Verdict<(usize, usize)> {
    Verdict::from_first(g.pairs().find(|&(x, y)| g.inn[x] == g.inn[y] || g.out[x] == g.out[y]))
}

/// Witness `(x, y, z)`: `xEy`, `yEz` but not `xEz`.
pub fn is_transitive(g: &Digraph) -> Verdict<[usize; 3]> {
    let first = g.arcs_iter().find_map(|(x, y)| {
        let missing = g.out[y] & !g.out[x];
        (missing != 0).then(|| [x, y, missing.trailing_zeros() as usize])
    });
    Verdict::from_first(first)
}

/// Reflexive, transitive and antisymmetric.
pub fn is_poset(g: &Digraph) -> bool {
    g.is_reflexive()
        && is_transitive(g).holds()
        && g.pairs().all(|(x, y)| !(g.has_arc(x, y) && g.has_arc(y, x)))
}

/// The forbidden 3-vertex patterns. All carry loops; only the non-loop arcs
/// differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// The path `x → y → z`: the dual digraph of N5.
    G0,
    /// A single arc `x → y` and an isolated `z`.
    G1,
    /// Three isolated vertices.
    G2,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::G0, Pattern::G1, Pattern::G2];

    /// Non-loop arcs on the pattern vertices `0 = x, 1 = y, 2 = z`.
    pub fn arcs(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::G0 => &[(0, 1), (1, 2)],
            Pattern::G1 => &[(0, 1)],
            Pattern::G2 => &[],
        }
    }

    /// Does the subgraph induced on `triple` match, under some bijection?
    pub fn matches(self, g: &Digraph, triple: [usize; 3]) -> bool {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let want = self.arcs();
        PERMS.iter().any(|p| {
            (0..3).all(|i| {
                (0..3).all(|j| {
                    i == j || g.has_arc(triple[p[i]], triple[p[j]]) == want.contains(&(i, j))
                })
            })
        })
    }

    /// The pattern the triple induces, if it is one of the three.
    pub fn classify(g: &Digraph, triple: [usize; 3]) -> Option<Pattern> {
        Pattern::ALL.into_iter().find(|p| p.matches(g, triple))
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// All vertex triples `x < y < z` whose induced subgraph matches `pattern`.
pub fn find_induced(g: &Digraph, pattern: Pattern) -> Vec<[usize; 3]> {
    let v = g.v;
    let mut out = Vec::new();
    for x in 0..v {
        for y in x + 1..v {
            for z in y + 1..v {
                if pattern.matches(g, [x, y, z]) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// (FIS): neither G0 nor G1 occurs as an induced subgraph.
pub fn check_fis(g: &Digraph) -> Verdict<(Pattern, [usize; 3])> {
    for p in [Pattern::G0, Pattern::G1] {
        if let Some(&t) = find_induced(g, p).first() {
            return Verdict::Fails((p, t));
        }
    }
    Verdict::Holds
}

fn distinct_triples(v: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..v).flat_map(move |x| {
        (0..v).flat_map(move |y| (0..v).map(move |z| (x, y, z)))
    })
    .filter(|&(x, y, z)| x != y && y != z && x != z)
}

/// (wT0): `xEy`, `yEz`, no `yEx`, no `zEy` ⟹ `xEz` or `zEx`.
pub fn check_wt0(g: &Digraph) -> Verdict<[usize; 3]> {
    let e = |a, b| g.has_arc(a, b);
    Verdict::from_first(
        distinct_triples(g.v)
            .find(|&(x, y, z)| e(x, y) && e(y, z) && !e(y, x) && !e(z, y) && !e(x, z) && !e(z, x))
            .map(|(x, y, z)| [x, y, z]),
    )
}

/// (wT1): `xEy`, no `yEx`, no `yEz`, no `zEy` ⟹ `xEz` or `zEx`.
pub fn check_wt1(g: &Digraph) -> Verdict<[usize; 3]> {
    let e = |a, b| g.has_arc(a, b);
    Verdict::from_first(
        distinct_triples(g.v)
            .find(|&(x, y, z)| e(x, y) && !e(y, x) && !e(y, z) && !e(z, y) && !e(x, z) && !e(z, x))
            .map(|(x, y, z)| [x, y, z]),
    )
}

/// The named digraph conditions, as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Tirs,
    S,
    R,
    Ti,
    Lti,
    Uti,
    Djsd,
    Dmsd,
    Dsd,
    Transitive,
    Fis,
    Wt0,
    Wt1,
}

impl Condition {
    pub const ALL: [Condition; 13] = [
        Condition::Tirs,
        Condition::S,
        Condition::R,
        Condition::Ti,
        Condition::Lti,
        Condition::Uti,
        Condition::Djsd,
        Condition::Dmsd,
        Condition::Dsd,
        Condition::Transitive,
        Condition::Fis,
        Condition::Wt0,
        Condition::Wt1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Tirs => "tirs",
            Condition::S => "s",
            Condition::R => "r",
            Condition::Ti => "ti",
            Condition::Lti => "lti",
            Condition::Uti => "uti",
            Condition::Djsd => "djsd",
            Condition::Dmsd => "dmsd",
            Condition::Dsd => "dsd",
            Condition::Transitive => "trans",
            Condition::Fis => "fis",
            Condition::Wt0 => "wt0",
            Condition::Wt1 => "wt1",
        }
    }

    /// Whether `g` satisfies the condition, with the failing vertices.
    /// (TiRS) on a digraph without loops fails at the loopless vertex.
    pub fn evaluate(self, g: &Digraph) -> (bool, Option<Vec<usize>>) {
        fn pair(v: Verdict<(usize, usize)>) -> (bool, Option<Vec<usize>>) {
            (v.holds(), v.witness().map(|&(x, y)| vec![x, y]))
        }
        fn triple(v: Verdict<[usize; 3]>) -> (bool, Option<Vec<usize>>) {
            (v.holds(), v.witness().map(|w| w.to_vec()))
        }
        match self {
            Condition::Tirs => match check_tirs(g) {
                Err(_) => (false, g.missing_loop().map(|x| vec![x])),
                Ok(r) => [r.s, r.r, r.ti]
                    .into_iter()
                    .find(|v| !v.holds())
                    .map_or((true, None), pair),
            },
            Condition::S => pair(check_s(g)),
            Condition::R => pair(check_r(g)),
            Condition::Ti => pair(check_ti(g)),
            Condition::Lti => pair(check_lti(g)),
            Condition::Uti => pair(check_uti(g)),
            Condition::Djsd => pair(check_djsd(g)),
            Condition::Dmsd => pair(check_dmsd(g)),
            Condition::Dsd => pair(check_dsd(g)),
            Condition::Transitive => triple(is_transitive(g)),
            Condition::Fis => match check_fis(g) {
                Verdict::Holds => (true, None),
                Verdict::Fails((_, t)) => (false, Some(t.to_vec())),
            },
            Condition::Wt0 => triple(check_wt0(g)),
            Condition::Wt1 => triple(check_wt1(g)),
        }
    }

    pub fn holds(self, g: &Digraph) -> bool {
        self.evaluate(g).0
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let alias = match s.as_str() {
            "transitive" => "trans",
            other => other,
        };
        Condition::ALL
            .into_iter()
            .find(|c| c.as_str() == alias)
            .ok_or(Error::UnknownProperty(s))
    }
}

/// An arc-preserving bijection `f` from `a` onto `b`; labels are ignored.
pub fn digraph_isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<usize>> {
    iso::find_isomorphism(&a.out, &a.invariants(), &b.out, &b.invariants())
}

pub fn digraph_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    digraph_isomorphism(a, b).is_some()
}
