//! Finite lattices over the dense carrier `0..n`.
//!
//! A [`FiniteLattice`] is validated eagerly: the order must be a partial
//! order and every pair must have a meet and a join, otherwise construction
//! fails. After that, `meet`, `join`, `leq` and the cover relation are all
//! table lookups.

use crate::bits::{self, bit, contains};
use crate::error::{Bound, Error, Result};
use crate::iso;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    /// `down[x]` = { y : y <= x }
    down: Vec<u64>,
    /// `up[x]` = { y : x <= y }
    up: Vec<u64>,
    meet: Vec<usize>,
    join: Vec<usize>,
    lower_covers: Vec<u64>,
    upper_covers: Vec<u64>,
    bottom: usize,
    top: usize,
    labels: Option<Vec<String>>,
}

impl FiniteLattice {
    /// Build the lattice whose order is the reflexive-transitive closure of
    /// `covers` (pairs `(a, b)` read as `a < b`). Pairs that are not true
    /// covers are accepted and simply implied by the closure.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        check_size(n)?;
        let mut up: Vec<u64> = (0..n).map(bit).collect();
        for &(a, b) in covers {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::OutOfRange { index: x, size: n });
                }
            }
            if a == b {
                return Err(Error::NotAPartialOrder { a, b });
            }
            up[a] |= bit(b);
        }
        Self::from_up_sets(close_transitively(up))
    }

    /// Build a lattice from an order relation given as a predicate; the
    /// relation is closed reflexively and transitively first.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        check_size(n)?;
        let up = (0..n)
            .map(|a| (0..n).filter(|&b| a == b || leq(a, b)).fold(0, |s, b| s | bit(b)))
            .collect();
        Self::from_up_sets(close_transitively(up))
    }

    /// `up[x]` must already be reflexive and transitive.
    fn from_up_sets(up: Vec<u64>) -> Result<Self> {
        let n = up.len();
        let mut down = vec![0u64; n];
        for (a, &row) in up.iter().enumerate() {
            for b in bits::iter(row) {
                down[b] |= bit(a);
            }
        }
        for a in 0..n {
            let cycle = up[a] & down[a] & !bit(a);
            if cycle != 0 {
                return Err(Error::NotAPartialOrder { a, b: cycle.trailing_zeros() as usize });
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = down[a] & down[b];
                let m = greatest(lower, &down).ok_or(Error::NotALattice { a, b, missing: Bound::Meet })?;
                let upper = up[a] & up[b];
                let j = greatest(upper, &up).ok_or(Error::NotALattice { a, b, missing: Bound::Join })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }

        let all = bits::full(n);
        let bottom = (0..n).find(|&x| up[x] == all).ok_or(Error::Empty)?;
        let top = (0..n).find(|&x| down[x] == all).ok_or(Error::Empty)?;

        let mut lower_covers = vec![0u64; n];
        let mut upper_covers = vec![0u64; n];
        for a in 0..n {
            let strictly_above = up[a] & !bit(a);
            for b in bits::iter(strictly_above) {
                let between = strictly_above & down[b] & !bit(b);
                if between == 0 {
                    upper_covers[a] |= bit(b);
                    lower_covers[b] |= bit(a);
                }
            }
        }

        Ok(FiniteLattice {
            n,
            down,
            up,
            meet,
            join,
            lower_covers,
            upper_covers,
            bottom,
            top,
            labels: None,
        })
    }

    /// The `k`-element chain `0 < 1 < .. < k-1`.
    pub fn chain(k: usize) -> Result<Self> {
        let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_covers(k, &covers)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Parse(format!(
                "{} labels given for {} elements",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: construction rejects the empty carrier.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        contains(self.up[a], b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    /// Meet of a set of elements; the empty meet is the top.
    pub fn meet_all(&self, set: u64) -> usize {
        bits::iter(set).fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a set of elements; the empty join is the bottom.
    pub fn join_all(&self, set: u64) -> usize {
        bits::iter(set).fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `a ≺ b`
    pub fn covers(&self, a: usize, b: usize) -> bool {
        contains(self.upper_covers[a], b)
    }

    pub fn upper_covers(&self, a: usize) -> u64 {
        self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> u64 {
        self.lower_covers[a]
    }

    /// All cover pairs `(a, b)` with `a ≺ b`, sorted lexicographically.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.elements()
            .flat_map(|a| bits::iter(self.upper_covers[a]).map(move |b| (a, b)))
            .collect()
    }

    pub fn down_set(&self, a: usize) -> u64 {
        self.down[a]
    }

    pub fn up_set(&self, a: usize) -> u64 {
        self.up[a]
    }

    /// Rows of the order matrix: row `a` is the up-set of `a`.
    pub fn order_rows(&self) -> &[u64] {
        &self.up
    }

    pub fn is_join_irreducible(&self, a: usize) -> bool {
        self.lower_covers[a].count_ones() == 1
    }

    pub fn is_meet_irreducible(&self, a: usize) -> bool {
        self.upper_covers[a].count_ones() == 1
    }

    /// `J(L)`: elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> u64 {
        bits::from_iter(self.elements().filter(|&a| self.is_join_irreducible(a)))
    }

    /// `M(L)`: elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> u64 {
        bits::from_iter(self.elements().filter(|&a| self.is_meet_irreducible(a)))
    }

    /// `μ(a)`, the meet of the lower covers of `a`.
    pub fn mu(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        if self.lower_covers[a] == 0 {
            return Err(Error::NoLowerCovers(a));
        }
        Ok(self.meet_all(self.lower_covers[a]))
    }

    /// The interval `[a, b]` as a lattice of its own, re-indexed in
    /// increasing order of the original element numbers.
    pub fn interval(&self, a: usize, b: usize) -> Result<FiniteLattice> {
        self.check(a)?;
        self.check(b)?;
        if !self.leq(a, b) {
            return Err(Error::EmptyInterval { a, b });
        }
        let members = bits::to_vec(self.up[a] & self.down[b]);
        self.restrict(&members)
    }

    /// The sub-order induced on `members` (in the given order). Fails if the
    /// induced order is not a lattice.
    pub fn restrict(&self, members: &[usize]) -> Result<FiniteLattice> {
        let sub = FiniteLattice::from_leq(members.len(), |i, j| self.leq(members[i], members[j]))?;
        match &self.labels {
            Some(labels) => sub.with_labels(members.iter().map(|&m| labels[m].clone()).collect()),
            None => Ok(sub),
        }
    }

    /// The same carrier with the order reversed.
    pub fn order_dual(&self) -> FiniteLattice {
        FiniteLattice {
            n: self.n,
            down: self.up.clone(),
            up: self.down.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            lower_covers: self.upper_covers.clone(),
            upper_covers: self.lower_covers.clone(),
            bottom: self.top,
            top: self.bottom,
            labels: self.labels.clone(),
        }
    }

    /// Relabel: element `x` of `self` becomes element `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<FiniteLattice> {
        let mut inverse = vec![usize::MAX; self.n];
        for (x, &p) in perm.iter().enumerate() {
            if p >= self.n {
                return Err(Error::OutOfRange { index: p, size: self.n });
            }
            inverse[p] = x;
        }
        if perm.len() != self.n || inverse.contains(&usize::MAX) {
            return Err(Error::Parse("not a permutation".into()));
        }
        let out = FiniteLattice::from_leq(self.n, |a, b| self.leq(inverse[a], inverse[b]))?;
        match &self.labels {
            Some(labels) => out.with_labels(inverse.iter().map(|&x| labels[x].clone()).collect()),
            None => Ok(out),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label, or its index.
    pub fn name(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// Element carrying the given label, if any.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Per-element isomorphism invariants: sizes of the down- and up-sets and
    /// the numbers of lower and upper covers.
    pub fn invariants(&self) -> Vec<[u32; 4]> {
        self.elements()
            .map(|x| {
                [
                    self.down[x].count_ones(),
                    self.up[x].count_ones(),
                    self.lower_covers[x].count_ones(),
                    self.upper_covers[x].count_ones(),
                ]
            })
            .collect()
    }

    /// Canonical encoding: equal for two lattices iff they are isomorphic.
    pub fn canonical_key(&self) -> iso::CanonicalKey {
        iso::canonical_form(&self.up, &self.invariants()).0
    }

    /// The isomorphic copy whose numbering realises the canonical key.
    pub fn canonical(&self) -> FiniteLattice {
        let (_, order) = iso::canonical_form(&self.up, &self.invariants());
        let mut perm = vec![0; self.n];
        for (pos, &x) in order.iter().enumerate() {
            perm[x] = pos;
        }
        self.permuted(&perm).expect("canonical order is a permutation").without_labels()
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.n {
            Ok(())
        } else {
            Err(Error::OutOfRange { index: a, size: self.n })
        }
    }
}

/// An order-isomorphism `f` from `a` onto `b` (`f[x]` is the image of `x`),
/// or `None` when the lattices are not isomorphic.
pub fn lattice_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    iso::find_isomorphism(a.order_rows(), &a.invariants(), b.order_rows(), &b.invariants())
}

pub fn lattice_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    lattice_isomorphism(a, b).is_some()
}

/// Every 5-tuple `(z, a, b, c, o)` with `b < c`, `a || b`, `a || c`,
/// `a ∧ b = a ∧ c = z` and `a ∨ b = a ∨ c = o`: exactly the sublattices
/// isomorphic to N5, each listed once.
pub fn find_n5_sublattices(l: &FiniteLattice) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    for a in l.elements() {
        for b in l.elements() {
            if l.comparable(a, b) {
                continue;
            }
            for c in bits::iter(l.up_set(b) & !bit(b)) {
                if l.comparable(a, c) {
                    continue;
                }
                let z = l.meet(a, b);
                let o = l.join(a, b);
                if l.meet(a, c) == z && l.join(a, c) == o {
                    out.push([z, a, b, c, o]);
                }
            }
        }
    }
    out
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Empty)
    } else if n > bits::MAX_SIZE {
        Err(Error::TooLarge(n))
    } else {
        Ok(())
    }
}

/// Warshall closure over up-set rows (rows are assumed reflexive).
fn close_transitively(mut up: Vec<u64>) -> Vec<u64> {
    let n = up.len();
    for k in 0..n {
        let row_k = up[k];
        for row in up.iter_mut() {
            if contains(*row, k) {
                *row |= row_k;
            }
        }
    }
    up
}

/// The element `g` of `set` whose `rows[g]` equals `set`, i.e. the greatest
/// element of a down-set (or least element of an up-set).
fn greatest(set: u64, rows: &[u64]) -> Option<usize> {
    bits::iter(set).find(|&g| rows[g] == set)
}
