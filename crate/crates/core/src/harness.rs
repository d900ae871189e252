//! Theorem-verification campaigns over the small-lattice catalog and the
//! small TiRS digraphs.
//!
//! Each registered check names the structures it quantifies over and a
//! predicate per structure. A predicate reports a pass, a failure with a
//! description, or (for one-directional statements) a pass in which the
//! conclusion holds without the hypothesis, which is recorded as a
//! non-converse witness.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bits;
use crate::convex::{self, ClosureSystem};
use crate::digraph::{self, Condition, Digraph, Pattern};
use crate::duality::{self, dual_digraph, mdfips, Mdfip};
use crate::enumeration::{self, LatticeCatalog};
use crate::error::{Error, Result};
use crate::io::{DigraphJson, LatticeJson};
use crate::lattice::{find_n5_sublattices, lattice_isomorphic, FiniteLattice};
use crate::properties::{check, Property};

/// Digraph bound used by [`verify_theorems`].
pub const DEFAULT_MAX_V: usize = 5;
/// Reflexive digraphs quantified over without any filter are kept smaller.
pub const DEFAULT_MAX_V_ALL: usize = 4;
pub const DEFAULT_MAX_GROUND: usize = 4;

/// A lattice with its dual digraph and every lattice property precomputed.
#[derive(Debug, Clone)]
pub struct LatticeCase {
    pub lattice: FiniteLattice,
    pub dual: Digraph,
    flags: Vec<bool>,
}

impl LatticeCase {
    pub fn new(lattice: FiniteLattice) -> Self {
        let dual = dual_digraph(&lattice);
        let flags = Property::ALL.iter().map(|&p| check(&lattice, p).holds).collect();
        LatticeCase { lattice, dual, flags }
    }

    pub fn has(&self, p: Property) -> bool {
        self.flags[p as usize]
    }

    /// A condition of the dual digraph.
    pub fn dual_has(&self, c: Condition) -> bool {
        c.holds(&self.dual)
    }
}

/// A digraph with its lattice of maximal partial E-preserving maps.
#[derive(Debug, Clone)]
pub struct DigraphCase {
    pub digraph: Digraph,
    pub primal: LatticeCase,
}

impl DigraphCase {
    pub fn new(digraph: Digraph) -> Result<Self> {
        let primal = LatticeCase::new(duality::mpe_lattice(&digraph)?);
        Ok(DigraphCase { digraph, primal })
    }

    pub fn has(&self, c: Condition) -> bool {
        c.holds(&self.digraph)
    }
}

/// What a predicate concluded about one structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The conclusion holds although the hypothesis does not.
    NonConverse,
    Fail(String),
}

fn implication(hypothesis: bool, conclusion: bool) -> Outcome {
    match (hypothesis, conclusion) {
        (true, false) => Outcome::Fail("hypothesis holds, conclusion fails".into()),
        (false, true) => Outcome::NonConverse,
        _ => Outcome::Pass,
    }
}

fn equivalence(lhs: bool, rhs: bool) -> Outcome {
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("left side {lhs}, right side {rhs}"))
    }
}

fn require(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

/// The first failing outcome, else a pass.
fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    outcomes
        .into_iter()
        .find(|o| matches!(o, Outcome::Fail(_)))
        .unwrap_or(Outcome::Pass)
}

/// A structure class a check quantifies over, with the predicate applied to
/// each member.
#[derive(Clone, Copy)]
pub enum Part {
    Lattices(fn(&LatticeCase) -> Outcome),
    TirsDigraphs(fn(&DigraphCase) -> Outcome),
    /// Reflexive digraphs satisfying (dJSD), (R) and (LTi).
    MdDigraphs(fn(&Digraph) -> Outcome),
    /// All reflexive digraphs, up to the smaller bound.
    ReflexiveDigraphs(fn(&Digraph) -> Outcome),
    ConvexGeometries(fn(&ClosureSystem) -> Outcome),
}

/// A registered statement.
#[derive(Clone)]
pub struct TheoremSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub parts: Vec<Part>,
}

/// The evaluated form of a [`TheoremSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub id: String,
    pub statement: String,
    pub scope: String,
    pub pass: bool,
    pub checked_count: usize,
    pub counterexamples: Vec<Value>,
    pub non_converse_witnesses: Vec<Value>,
}

/// Bounds for a campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub max_n: usize,
    pub max_v: usize,
    pub max_v_all: usize,
    pub max_ground: usize,
}

impl Scope {
    pub fn new(max_n: usize) -> Self {
        Scope {
            max_n,
            max_v: DEFAULT_MAX_V,
            max_v_all: DEFAULT_MAX_V_ALL,
            max_ground: DEFAULT_MAX_GROUND,
        }
    }
}

fn lattice_subject(l: &FiniteLattice, detail: String) -> Value {
    json!({ "lattice": LatticeJson::from_lattice(l), "detail": detail })
}

fn digraph_subject(g: &Digraph, detail: String) -> Value {
    json!({ "digraph": DigraphJson::from_digraph(g), "detail": detail })
}

fn system_subject(c: &ClosureSystem, detail: String) -> Value {
    json!({ "closure_system": c, "detail": detail })
}

/// Every registered statement.
pub fn registry() -> Vec<TheoremSpec> {
    use Part::*;
    use Property as P;
    let spec = |id, statement, parts| TheoremSpec { id, statement, parts };
    vec![
        spec(
            "PROP_2_2",
            "the filter generator of an MDFIP is join-irreducible and the ideal generator meet-irreducible",
            vec![Lattices(|c| {
                let l = &c.lattice;
                all(duality::mdfips_bruteforce(l).into_iter().map(|m| {
                    require(l.is_join_irreducible(m.a) && l.is_meet_irreducible(m.b), || {
                        format!("MDFIP ({}, {})", m.a, m.b)
                    })
                }))
            })],
        ),
        spec(
            "LEM_2_3",
            "in G_L, xE ⊆ yE iff a ≤ c and Ex ⊆ Ey iff d ≤ b for x = (a,b), y = (c,d)",
            vec![Lattices(|c| {
                let (l, g) = (&c.lattice, &c.dual);
                let ms = g.labels().expect("dual digraphs are labelled");
                all(g.vertices().flat_map(|x| g.vertices().map(move |y| (x, y))).map(|(x, y)| {
                    let out_ok = bits::is_subset(g.out_set(x), g.out_set(y)) == l.leq(ms[x].a, ms[y].a);
                    let in_ok = bits::is_subset(g.in_set(x), g.in_set(y)) == l.leq(ms[y].b, ms[x].b);
                    require(out_ok && in_ok, || format!("vertices {x}, {y}"))
                }))
            })],
        ),
        spec(
            "PROP_2_5",
            "the dual digraph of a finite lattice is a TiRS digraph",
            vec![Lattices(|c| require(c.dual_has(Condition::Tirs), || "dual is not TiRS".into()))],
        ),
        spec(
            "THM_2_6_i",
            "L is isomorphic to C(G_L)",
            vec![Lattices(|c| match duality::roundtrip_lattice(&c.lattice) {
                Ok(true) => Outcome::Pass,
                Ok(false) => Outcome::Fail("C(G_L) is not isomorphic to L".into()),
                Err(e) => Outcome::Fail(e.to_string()),
            })],
        ),
        spec(
            "THM_2_6_ii",
            "a finite TiRS digraph G is isomorphic to G_C(G)",
            vec![TirsDigraphs(|c| {
                require(digraph::digraph_isomorphic(&c.primal.dual, &c.digraph), || {
                    "G_C(G) is not isomorphic to G".into()
                })
            })],
        ),
        spec(
            "PLOSCICA_LEMMA",
            "for MPEs f, g: f⁻¹(1) ⊆ g⁻¹(1) iff g⁻¹(0) ⊆ f⁻¹(0)",
            vec![ReflexiveDigraphs(|g| match duality::mpe_enumerate(g) {
                Err(e) => Outcome::Fail(e.to_string()),
                Ok(maps) => all(maps.iter().enumerate().flat_map(|(i, f)| {
                    maps.iter().enumerate().map(move |(j, h)| {
                        let ones = bits::is_subset(f.ones, h.ones);
                        let zeros = bits::is_subset(h.zeros, f.zeros);
                        require(ones == zeros, || format!("maps {i} and {j}"))
                    })
                })),
            })],
        ),
        spec(
            "LEM_3_1",
            "a ≰ b iff some j ∈ J(L) has j ≤ a, j ≰ b iff some m ∈ M(L) has b ≤ m, a ≰ m",
            vec![Lattices(|c| {
                let l = &c.lattice;
                let (js, ms) = (l.join_irreducibles(), l.meet_irreducibles());
                all(l.elements().flat_map(|a| l.elements().map(move |b| (a, b))).map(|(a, b)| {
                    let lhs = !l.leq(a, b);
                    let via_j = bits::iter(js).any(|j| l.leq(j, a) && !l.leq(j, b));
                    let via_m = bits::iter(ms).any(|m| l.leq(b, m) && !l.leq(a, m));
                    require(lhs == via_j && lhs == via_m, || format!("a = {a}, b = {b}"))
                }))
            })],
        ),
        spec(
            "THM_3_2",
            "a disjoint pair (↑a, ↓b) is an MDFIP iff a ∈ J, b ∈ M, b ≺ a ∨ b and a ∧ b ≺ a",
            vec![Lattices(|c| {
                require(mdfips(&c.lattice) == duality::mdfips_bruteforce(&c.lattice), || {
                    "characterisation and definition disagree".into()
                })
            })],
        ),
        spec(
            "LEM_3_4",
            "b ∈ M, b ≺ a ∨ b makes ↓b maximal disjoint from ↑a; a ∈ J, a ∧ b ≺ a makes ↑a maximal disjoint from ↓b",
            vec![Lattices(|c| {
                let l = &c.lattice;
                all(l.elements().flat_map(|a| l.elements().map(move |b| (a, b))).map(|(a, b)| {
                    let ideal_max = !(l.is_meet_irreducible(b) && l.covers(b, l.join(a, b)))
                        || bits::iter(l.up_set(b)).all(|d| d == b || l.leq(a, d));
                    let filter_max = !(l.is_join_irreducible(a) && l.covers(l.meet(a, b), a))
                        || bits::iter(l.down_set(a)).all(|d| d == a || l.leq(d, b));
                    require(ideal_max && filter_max, || format!("a = {a}, b = {b}"))
                }))
            })],
        ),
        spec(
            "LEM_3_5",
            "for a ≰ b, every maximal d ∈ T_ab satisfies d ≺ d ∨ a",
            vec![Lattices(|c| {
                let l = &c.lattice;
                all(l.elements().flat_map(|a| l.elements().map(move |b| (a, b))).map(|(a, b)| {
                    if l.leq(a, b) {
                        return Outcome::Pass;
                    }
                    let t = duality::t_set(l, a, b);
                    let maximal = bits::iter(t).filter(|&d| bits::iter(t).all(|e| e == d || !l.leq(d, e)));
                    all(maximal.map(|d| require(l.covers(d, l.join(d, a)), || format!("a = {a}, b = {b}, d = {d}"))))
                }))
            })],
        ),
        spec(
            "PROP_3_7",
            "each a ∈ J(L) is the first and each b ∈ M(L) the second component of some MDFIP",
            vec![Lattices(|c| {
                let l = &c.lattice;
                let ms = mdfips(l);
                let first = bits::iter(l.join_irreducibles()).find(|&a| !ms.iter().any(|m| m.a == a));
                let second = bits::iter(l.meet_irreducibles()).find(|&b| !ms.iter().any(|m| m.b == b));
                require(first.is_none() && second.is_none(), || format!("J: {first:?}, M: {second:?}"))
            })],
        ),
        spec(
            "THM_3_8",
            "(JM-LSM) iff (L-abc)",
            vec![Lattices(|c| equivalence(c.has(P::JmLsm), c.has(P::LAbc)))],
        ),
        spec(
            "PROP_3_10",
            "G_L satisfies (LTi) iff L satisfies (L-abc)",
            vec![
                Lattices(|c| equivalence(c.dual_has(Condition::Lti), c.has(P::LAbc))),
                TirsDigraphs(|c| equivalence(c.has(Condition::Lti), c.primal.has(P::LAbc))),
            ],
        ),
        spec(
            "THM_3_13",
            "a TiRS digraph satisfies (LTi) iff its lattice satisfies (JM-LSM)",
            vec![
                Lattices(|c| equivalence(c.dual_has(Condition::Lti), c.has(P::JmLsm))),
                TirsDigraphs(|c| equivalence(c.has(Condition::Lti), c.primal.has(P::JmLsm))),
            ],
        ),
        spec(
            "PROP_3_12",
            "(U-abc) iff (JM-USM)",
            vec![Lattices(|c| equivalence(c.has(P::UAbc), c.has(P::JmUsm)))],
        ),
        spec(
            "THM_3_15",
            "a TiRS digraph satisfies (UTi) iff its lattice satisfies (JM-USM)",
            vec![
                Lattices(|c| equivalence(c.dual_has(Condition::Uti), c.has(P::JmUsm))),
                TirsDigraphs(|c| equivalence(c.has(Condition::Uti), c.primal.has(P::JmUsm))),
            ],
        ),
        spec(
            "THM_4_1",
            "meet-distributive iff (JSD) and (LSM)",
            vec![Lattices(|c| equivalence(c.has(P::MeetDistributive), c.has(P::Jsd) && c.has(P::Lsm)))],
        ),
        spec(
            "THM_4_2",
            "(JM-LSM) and (JSD) imply (LSM)",
            vec![Lattices(|c| implication(c.has(P::JmLsm) && c.has(P::Jsd), c.has(P::Lsm)))],
        ),
        spec(
            "REM_4_3",
            "(JM-LSM) and (W-JSD) imply (LSM)",
            vec![Lattices(|c| implication(c.has(P::JmLsm) && c.has(P::Wjsd), c.has(P::Lsm)))],
        ),
        spec(
            "COR_4_5",
            "meet-distributive iff (JM-LSM) and (JSD)",
            vec![Lattices(|c| equivalence(c.has(P::MeetDistributive), c.has(P::JmLsm) && c.has(P::Jsd)))],
        ),
        spec(
            "THM_4_6_i",
            "a TiRS digraph satisfies (dJSD) iff its lattice satisfies (JSD)",
            vec![
                Lattices(|c| equivalence(c.dual_has(Condition::Djsd), c.has(P::Jsd))),
                TirsDigraphs(|c| equivalence(c.has(Condition::Djsd), c.primal.has(P::Jsd))),
            ],
        ),
        spec(
            "THM_4_6_ii",
            "a TiRS digraph satisfies (dMSD) iff its lattice satisfies (MSD)",
            vec![
                Lattices(|c| equivalence(c.dual_has(Condition::Dmsd), c.has(P::Msd))),
                TirsDigraphs(|c| equivalence(c.has(Condition::Dmsd), c.primal.has(P::Msd))),
            ],
        ),
        spec(
            "THM_4_6_iii",
            "a TiRS digraph satisfies (dSD) iff its lattice is semidistributive",
            vec![
                Lattices(|c| equivalence(c.dual_has(Condition::Dsd), c.has(P::Sd))),
                TirsDigraphs(|c| equivalence(c.has(Condition::Dsd), c.primal.has(P::Sd))),
            ],
        ),
        spec(
            "THM_4_7",
            "a TiRS digraph with (dMSD) and (LTi) is transitive",
            vec![
                Lattices(|c| {
                    implication(
                        c.dual_has(Condition::Dmsd) && c.dual_has(Condition::Lti),
                        c.dual_has(Condition::Transitive),
                    )
                }),
                TirsDigraphs(|c| {
                    implication(
                        c.has(Condition::Dmsd) && c.has(Condition::Lti),
                        c.has(Condition::Transitive),
                    )
                }),
            ],
        ),
        spec(
            "PROP_4_8",
            "a transitive TiRS digraph is a poset",
            vec![
                Lattices(|c| implication(c.dual_has(Condition::Transitive), digraph::is_poset(&c.dual))),
                TirsDigraphs(|c| implication(c.has(Condition::Transitive), digraph::is_poset(&c.digraph))),
            ],
        ),
        spec(
            "COR_4_9",
            "(MSD) and (JM-LSM) imply distributivity",
            vec![Lattices(|c| implication(c.has(P::Msd) && c.has(P::JmLsm), c.has(P::Distributive)))],
        ),
        spec(
            "THM_4_10",
            "a reflexive digraph is the dual of a meet-distributive lattice iff it satisfies (dJSD), (R) and (LTi)",
            vec![
                Lattices(|c| {
                    let three = [Condition::Djsd, Condition::R, Condition::Lti].iter().all(|&k| c.dual_has(k));
                    equivalence(c.has(P::MeetDistributive), three)
                }),
                TirsDigraphs(|c| {
                    let three = [Condition::Djsd, Condition::R, Condition::Lti].iter().all(|&k| c.has(k));
                    equivalence(three, c.primal.has(P::MeetDistributive))
                }),
                MdDigraphs(|g| {
                    if !digraph::is_tirs(g) {
                        return Outcome::Fail("not a TiRS digraph".into());
                    }
                    match DigraphCase::new(g.clone()) {
                        Err(e) => Outcome::Fail(e.to_string()),
                        Ok(c) => all([
                            require(c.primal.has(P::MeetDistributive), || "C(G) is not meet-distributive".into()),
                            require(digraph::digraph_isomorphic(&c.primal.dual, g), || {
                                "G is not the dual of C(G)".into()
                            }),
                        ]),
                    }
                }),
            ],
        ),
        spec(
            "THM_4_13",
            "meet-distributive lattices are exactly the closure lattices of convex geometries",
            vec![
                Lattices(|c| {
                    let l = &c.lattice;
                    let md = c.has(P::MeetDistributive);
                    let mut outcomes = vec![
                        equivalence(md, c.has(P::Jsd) && c.has(P::Lsm)),
                        equivalence(md, c.has(P::Jsd) && c.has(P::JmLsm)),
                    ];
                    if md {
                        // the join-irreducible representation is our own
                        // construction; its failures are reported as such
                        let (system, _) = convex::join_irreducible_representation(l);
                        outcomes.push(require(system.is_zero_closure(), || {
                            "construction: empty set not closed".into()
                        }));
                        outcomes.push(require(convex::satisfies_aep(&system).holds(), || {
                            "construction: anti-exchange fails".into()
                        }));
                        outcomes.push(require(lattice_isomorphic(&convex::cld_lattice(&system), l), || {
                            "construction: closure lattice differs".into()
                        }));
                    }
                    all(outcomes)
                }),
                ConvexGeometries(|s| {
                    require(check(&convex::cld_lattice(s), P::MeetDistributive).holds, || {
                        "closure lattice is not meet-distributive".into()
                    })
                }),
            ],
        ),
        spec(
            "LEM_5_1",
            "maximal extensions x, y, z of (a,c), (c,b), (b,a) over an N5 sublattice induce G0, G1 or G2",
            vec![Lattices(|c| lemma_5_1(&c.lattice, &c.dual))],
        ),
        spec(
            "PROP_5_2_LSM",
            "(FIS) on G_L implies (LSM)",
            vec![Lattices(|c| implication(c.dual_has(Condition::Fis), c.has(P::Lsm)))],
        ),
        spec(
            "PROP_5_2_USM",
            "(FIS) on G_L implies (USM)",
            vec![Lattices(|c| implication(c.dual_has(Condition::Fis), c.has(P::Usm)))],
        ),
        spec(
            "THM_5_3",
            "(FIS) on G_L implies L is modular",
            vec![Lattices(|c| implication(c.dual_has(Condition::Fis), c.has(P::Modular)))],
        ),
        spec(
            "COR_5_6",
            "(wT0) and (wT1) on G_L imply L is modular",
            vec![Lattices(|c| {
                implication(
                    c.dual_has(Condition::Wt0) && c.dual_has(Condition::Wt1),
                    c.has(P::Modular),
                )
            })],
        ),
    ]
}

fn lemma_5_1(l: &FiniteLattice, g: &Digraph) -> Outcome {
    let labels = g.labels().expect("dual digraphs are labelled");
    let vertex = |m: &Mdfip| labels.iter().position(|x| x == m).expect("extension is a vertex");
    let mut outcomes = Vec::new();
    for [_, a, b, c, _] in find_n5_sublattices(l) {
        let ext = |p: usize, q: usize| duality::maximal_extensions(l, p, q).expect("disjoint pair");
        for x in ext(a, c) {
            for y in ext(c, b) {
                for z in ext(b, a) {
                    let (x, y, z) = (vertex(&x), vertex(&y), vertex(&z));
                    let distinct = x != y && y != z && x != z;
                    let absent = [(y, x), (z, y), (x, z), (z, x)].iter().all(|&(p, q)| !g.has_arc(p, q));
                    let pattern = distinct && Pattern::classify(g, [x, y, z]).is_some();
                    outcomes.push(require(distinct && absent && pattern, || {
                        format!("N5 on a = {a}, b = {b}, c = {c}: vertices {x}, {y}, {z}")
                    }));
                }
            }
        }
    }
    all(outcomes)
}

/// The structures a campaign quantifies over.
struct Domains {
    lattices: Vec<LatticeCase>,
    tirs: Vec<DigraphCase>,
    md_digraphs: Vec<Digraph>,
    reflexive: Vec<Digraph>,
    geometries: Vec<ClosureSystem>,
}

impl Domains {
    fn build(scope: Scope) -> Result<Self> {
        let catalog = enumeration::enumerate_lattices(scope.max_n)?;
        let lattices = catalog.entries().par_iter().cloned().map(LatticeCase::new).collect();
        let tirs = enumeration::enumerate_tirs_digraphs(scope.max_v)?
            .into_par_iter()
            .map(DigraphCase::new)
            .collect::<Result<Vec<_>>>()?;
        let md_digraphs = enumeration::enumerate_reflexive_digraphs(scope.max_v, |g| {
            digraph::check_djsd(g).holds() && digraph::check_r(g).holds() && digraph::check_lti(g).holds()
        })?;
        let reflexive = enumeration::enumerate_reflexive_digraphs(scope.max_v_all, |_| true)?;
        let mut geometries = Vec::new();
        for k in 0..=scope.max_ground {
            geometries.extend(convex::enumerate_convex_geometries(k)?);
        }
        Ok(Domains {
            lattices,
            tirs,
            md_digraphs,
            reflexive,
            geometries,
        })
    }
}

fn evaluate<T: Sync>(
    items: &[T],
    predicate: impl Fn(&T) -> Outcome + Sync,
    subject: impl Fn(&T, String) -> Value + Sync,
    result: &mut TheoremCheck,
) {
    let outcomes: Vec<Outcome> = items.par_iter().map(&predicate).collect();
    result.checked_count += items.len();
    for (item, outcome) in items.iter().zip(outcomes) {
        match outcome {
            Outcome::Pass => {}
            Outcome::NonConverse => result
                .non_converse_witnesses
                .push(subject(item, "conclusion holds without the hypothesis".into())),
            Outcome::Fail(detail) => result.counterexamples.push(subject(item, detail)),
        }
    }
}

fn run(spec: &TheoremSpec, domains: &Domains, scope: Scope) -> TheoremCheck {
    let mut result = TheoremCheck {
        id: spec.id.to_string(),
        statement: spec.statement.to_string(),
        scope: String::new(),
        pass: true,
        checked_count: 0,
        counterexamples: Vec::new(),
        non_converse_witnesses: Vec::new(),
    };
    let mut scopes = Vec::new();
    for part in &spec.parts {
        match *part {
            Part::Lattices(f) => {
                scopes.push(format!("lattices n <= {}", scope.max_n));
                evaluate(&domains.lattices, f, |c, d| lattice_subject(&c.lattice, d), &mut result);
            }
            Part::TirsDigraphs(f) => {
                scopes.push(format!("TiRS digraphs v <= {}", scope.max_v));
                evaluate(&domains.tirs, f, |c, d| digraph_subject(&c.digraph, d), &mut result);
            }
            Part::MdDigraphs(f) => {
                scopes.push(format!("reflexive digraphs with (dJSD), (R), (LTi), v <= {}", scope.max_v));
                evaluate(&domains.md_digraphs, f, digraph_subject, &mut result);
            }
            Part::ReflexiveDigraphs(f) => {
                scopes.push(format!("reflexive digraphs v <= {}", scope.max_v_all));
                evaluate(&domains.reflexive, f, digraph_subject, &mut result);
            }
            Part::ConvexGeometries(f) => {
                scopes.push(format!("convex geometries |X| <= {}", scope.max_ground));
                evaluate(&domains.geometries, f, system_subject, &mut result);
            }
        }
    }
    result.scope = scopes.join("; ");
    result.pass = result.counterexamples.is_empty();
    result
}

/// Run every registered check over the lattices with at most `max_n`
/// elements and the default digraph and ground-set bounds.
pub fn verify_theorems(max_n: usize) -> Result<Vec<TheoremCheck>> {
    verify_theorems_in(Scope::new(max_n))
}

pub fn verify_theorems_in(scope: Scope) -> Result<Vec<TheoremCheck>> {
    let domains = Domains::build(scope)?;
    Ok(registry().iter().map(|spec| run(spec, &domains, scope)).collect())
}

/// Run a subset of the registry, selected by id.
pub fn verify_selected(scope: Scope, ids: &[&str]) -> Result<Vec<TheoremCheck>> {
    let specs: Vec<TheoremSpec> = registry().into_iter().filter(|s| ids.contains(&s.id)).collect();
    if let Some(missing) = ids.iter().find(|id| !specs.iter().any(|s| s.id == **id)) {
        return Err(Error::UnknownProperty(missing.to_string()));
    }
    let domains = Domains::build(scope)?;
    Ok(specs.iter().map(|spec| run(spec, &domains, scope)).collect())
}

#[derive(Serialize)]
struct ReportEntry<'a> {
    pass: bool,
    checked_count: usize,
    counterexamples: &'a [Value],
    non_converse_witnesses: &'a [Value],
}

/// `{id: {pass, checked_count, counterexamples, non_converse_witnesses}}`.
pub fn report_json(checks: &[TheoremCheck]) -> String {
    let map: BTreeMap<&str, ReportEntry> = checks
        .iter()
        .map(|c| {
            (
                c.id.as_str(),
                ReportEntry {
                    pass: c.pass,
                    checked_count: c.checked_count,
                    counterexamples: &c.counterexamples,
                    non_converse_witnesses: &c.non_converse_witnesses,
                },
            )
        })
        .collect();
    serde_json::to_string_pretty(&map).expect("report serializes")
}

pub fn report_text(checks: &[TheoremCheck]) -> String {
    let width = checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        writeln!(
            out,
            "{:width$}  {}  checked {:>5}  non-converse {:>4}  {}",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.checked_count,
            c.non_converse_witnesses.len(),
            c.statement,
        )
        .unwrap();
        for ce in &c.counterexamples {
            writeln!(out, "{:width$}    counterexample: {ce}", "").unwrap();
        }
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    writeln!(out, "{} checks, {} failed", checks.len(), failed).unwrap();
    out
}

/// A predicate usable in [`search_counterexamples`]: a lattice property or
/// a condition on the dual digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Lattice(Property),
    Dual(Condition),
}

impl Predicate {
    pub fn holds(self, c: &LatticeCase) -> bool {
        match self {
            Predicate::Lattice(p) => c.has(p),
            Predicate::Dual(k) => c.dual_has(k),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Property>()
            .map(Predicate::Lattice)
            .or_else(|_| s.parse::<Condition>().map(Predicate::Dual))
            .map_err(|_| Error::UnknownProperty(s.trim().to_string()))
    }
}

/// Catalog entries with at most `max_n` elements where `holds` is true and
/// `fails` is false, in catalog order.
pub fn search_counterexamples(holds: &str, fails: &str, max_n: usize) -> Result<Vec<FiniteLattice>> {
    let (p, q): (Predicate, Predicate) = (holds.parse()?, fails.parse()?);
    let catalog = enumeration::enumerate_lattices(max_n)?;
    Ok(search_in(&catalog, p, q))
}

pub fn search_in(catalog: &LatticeCatalog, holds: Predicate, fails: Predicate) -> Vec<FiniteLattice> {
    let hits: Vec<Option<FiniteLattice>> = catalog
        .entries()
        .par_iter()
        .map(|l| {
            let c = LatticeCase::new(l.clone());
            (holds.holds(&c) && !fails.holds(&c)).then_some(c.lattice)
        })
        .collect();
    hits.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn registry_ids_are_unique() {
        let reg = registry();
        let mut ids: Vec<&str> = reg.iter().map(|s| s.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }

    #[test]
    fn registry_is_complete() {
        let expected = [
            "PROP_2_2", "LEM_2_3", "PROP_2_5", "THM_2_6_i", "THM_2_6_ii", "PLOSCICA_LEMMA", "LEM_3_1",
            "THM_3_2", "LEM_3_4", "LEM_3_5", "PROP_3_7", "THM_3_8", "PROP_3_10", "PROP_3_12",
            "THM_3_13", "THM_3_15", "THM_4_1", "THM_4_2", "REM_4_3", "COR_4_5", "THM_4_6_i",
            "THM_4_6_ii", "THM_4_6_iii", "THM_4_7", "PROP_4_8", "COR_4_9", "THM_4_10", "THM_4_13",
            "LEM_5_1", "PROP_5_2_LSM", "PROP_5_2_USM", "THM_5_3", "COR_5_6",
        ];
        let mut ids: Vec<&str> = registry().iter().map(|s| s.id).collect();
        let mut want = expected.to_vec();
        ids.sort_unstable();
        want.sort_unstable();
        assert_eq!(ids, want);
        for spec in registry() {
            assert!(!spec.parts.is_empty(), "{}", spec.id);
            assert!(!spec.statement.is_empty(), "{}", spec.id);
        }
    }

    #[test]
    fn outcome_helpers() {
        assert_eq!(implication(true, true), Outcome::Pass);
        assert_eq!(implication(false, true), Outcome::NonConverse);
        assert_eq!(implication(false, false), Outcome::Pass);
        assert!(matches!(implication(true, false), Outcome::Fail(_)));
        assert!(matches!(equivalence(true, false), Outcome::Fail(_)));
        assert!(matches!(all([Outcome::Pass, Outcome::Fail("x".into())]), Outcome::Fail(_)));
    }

    #[test]
    fn predicates_parse() {
        assert_eq!("mod".parse::<Predicate>().unwrap(), Predicate::Lattice(Property::Modular));
        assert_eq!("fis".parse::<Predicate>().unwrap(), Predicate::Dual(Condition::Fis));
        assert!(matches!("nope".parse::<Predicate>(), Err(Error::UnknownProperty(_))));
    }

    #[test]
    fn case_flags_match_checkers() {
        let c = LatticeCase::new(fixtures::l3_dual());
        for p in Property::ALL {
            assert_eq!(c.has(p), check(&c.lattice, p).holds);
        }
    }

    #[test]
    fn small_campaign_passes() {
        let scope = Scope {
            max_n: 5,
            max_v: 3,
            max_v_all: 3,
            max_ground: 2,
        };
        let checks = verify_theorems_in(scope).unwrap();
        assert_eq!(checks.len(), registry().len());
        for c in &checks {
            assert!(c.pass, "{} {:?}", c.id, c.counterexamples);
            assert!(c.checked_count > 0, "{}", c.id);
        }
    }
}
