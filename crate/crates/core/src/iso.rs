//! Canonical forms and isomorphism for small binary relations.
//!
//! Relations are given as rows of bitsets (`rows[x]` = successors of `x`).
//! Vertices are first partitioned by caller-supplied invariants. The
//! canonical form is the least encoding over the leaves of an
//! individualisation-refinement search tree, pruned by the automorphisms
//! discovered along the way.

use std::collections::BTreeMap;

use crate::bits::{self, contains};

/// Encoding of a relation under its canonical ordering. Two relations have
/// equal keys iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    size: usize,
    code: Vec<u128>,
}

impl CanonicalKey {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Rebuild the relation rows from the key.
    pub fn rows(&self) -> Vec<u64> {
        let n = self.size;
        let mut rows = vec![0u64; n];
        for (k, &code) in self.code.iter().enumerate() {
            for j in 0..=k {
                if code >> j & 1 == 1 {
                    rows[k] |= bits::bit(j);
                }
            }
            for (j, row) in rows.iter_mut().enumerate().take(k) {
                if code >> (k + 1 + j) & 1 == 1 {
                    *row |= bits::bit(k);
                }
            }
        }
        rows
    }
}

/// Canonical key plus the canonical ordering (`order[pos]` = original vertex).
pub fn canonical_form<K: Ord + Clone>(rows: &[u64], invariants: &[K]) -> (CanonicalKey, Vec<usize>) {
    let n = rows.len();
    assert_eq!(invariants.len(), n, "one invariant per vertex");
    let cols: Vec<u64> = (0..n)
        .map(|y| bits::from_iter((0..n).filter(|&x| contains(rows[x], y))))
        .collect();
    let ranks = rank_keys(invariants);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); count_distinct(&ranks)];
    for (x, &r) in ranks.iter().enumerate() {
        cells[r as usize].push(x);
    }
    let mut search = Search {
        rows,
        cols: &cols,
        path: Vec::new(),
        best_code: Vec::new(),
        best_order: Vec::new(),
        best_path: Vec::new(),
        back_to: None,
        automorphisms: Vec::new(),
    };
    search.run(cells);
    (
        CanonicalKey {
            size: n,
            code: search.best_code,
        },
        search.best_order,
    )
}

/// An isomorphism from relation `a` onto relation `b` (`f[x]` = image of `x`).
pub fn find_isomorphism<K: Ord + Clone>(
    a: &[u64],
    inv_a: &[K],
    b: &[u64],
    inv_b: &[K],
) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let mut sorted_a = inv_a.to_vec();
    let mut sorted_b = inv_b.to_vec();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }
    let (key_a, order_a) = canonical_form(a, inv_a);
    let (key_b, order_b) = canonical_form(b, inv_b);
    if key_a != key_b {
        return None;
    }
    let mut f = vec![0; a.len()];
    for (pos, &x) in order_a.iter().enumerate() {
        f[x] = order_b[pos];
    }
    debug_assert!(is_isomorphism(a, b, &f));
    Some(f)
}

pub fn is_isomorphism(a: &[u64], b: &[u64], f: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|x| (0..a.len()).all(|y| contains(a[x], y) == contains(b[f[x]], f[y])))
}

/// Individualisation-refinement search. Each node holds an ordered
/// partition refined to stability; a leaf is a discrete partition, read as
/// an ordering. Children of a node individualise each vertex of the first
/// non-singleton cell in turn, skipping vertices already known to be
/// equivalent under automorphisms that fix the path to the node.
struct Search<'a> {
    rows: &'a [u64],
    cols: &'a [u64],
    path: Vec<usize>,
    best_code: Vec<u128>,
    best_order: Vec<usize>,
    best_path: Vec<usize>,
    /// Set after an automorphism is found: return to the node at this depth.
    back_to: Option<usize>,
    /// Automorphisms found so far, as vertex maps.
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, cells: Vec<Vec<usize>>) {
        let cells = refine(self.rows, self.cols, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(cells.into_iter().map(|c| c[0]).collect());
            return;
        };
        let mut orbits = Orbits::new(self.rows.len());
        let mut seen = 0;
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            for auto in &self.automorphisms[seen..] {
                if self.path.iter().all(|&p| auto[p] == p) {
                    orbits.merge(auto);
                }
            }
            seen = self.automorphisms.len();
            if explored.iter().any(|&w| orbits.same(w, v)) {
                continue;
            }
            explored.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&x| x != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            self.path.push(v);
            self.run(child);
            self.path.pop();
            if let Some(depth) = self.back_to {
                if self.path.len() > depth {
                    return;
                }
                self.back_to = None;
            }
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let code = encode(self.rows, &order);
        if self.best_order.is_empty() || code < self.best_code {
            self.best_code = code;
            self.best_order = order;
            self.best_path = self.path.clone();
        } else if code == self.best_code {
            // the automorphism carries this whole subtree onto the explored
            // one holding the best leaf
            self.back_to = Some(self.path.iter().zip(&self.best_path).take_while(|(a, b)| a == b).count());
            let mut auto = vec![0; order.len()];
            for (pos, &x) in order.iter().enumerate() {
                auto[x] = self.best_order[pos];
            }
            self.automorphisms.push(auto);
        }
    }
}

/// Orbits of the group generated by some automorphisms, as a union-find.
struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn merge(&mut self, auto: &[usize]) {
        for (x, &y) in auto.iter().enumerate() {
            let (a, b) = (self.find(x), self.find(y));
            self.parent[a] = b;
        }
    }

    fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }
}

/// Growing-square encoding: entry `k` holds the relation bits between the
/// vertex at position `k` and positions `0..=k`.
fn encode(rows: &[u64], order: &[usize]) -> Vec<u128> {
    (0..order.len())
        .map(|k| {
            let v = order[k];
            let mut code = 0u128;
            for (j, &u) in order[..=k].iter().enumerate() {
                if contains(rows[v], u) {
                    code |= 1 << j;
                }
            }
            for (j, &u) in order[..k].iter().enumerate() {
                if contains(rows[u], v) {
                    code |= 1 << (k + 1 + j);
                }
            }
            code
        })
        .collect()
}

/// Split cells by the number of out- and in-neighbours each vertex has in
/// every cell, until stable. Sub-cells keep their parent's place and are
/// ordered by that count vector, so the result depends only on structure.
fn refine(rows: &[u64], cols: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| bits::from_iter(c.iter().copied())).collect();
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
            for &x in cell {
                let key = masks
                    .iter()
                    .flat_map(|&m| [(rows[x] & m).count_ones(), (cols[x] & m).count_ones()])
                    .collect();
                groups.entry(key).or_default().push(x);
            }
            changed |= groups.len() > 1;
            next.extend(groups.into_values());
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut distinct: BTreeMap<K, u32> = keys.iter().cloned().map(|k| (k, 0)).collect();
    for (i, v) in distinct.values_mut().enumerate() {
        *v = i as u32;
    }
    keys.iter().map(|k| distinct[k]).collect()
}

fn count_distinct(ranks: &[u32]) -> usize {
    let mut v = ranks.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permute(rows: &[u64], perm: &[usize]) -> Vec<u64> {
        let n = rows.len();
        let mut out = vec![0u64; n];
        for x in 0..n {
            for y in bits::iter(rows[x]) {
                out[perm[x]] |= bits::bit(perm[y]);
            }
        }
        out
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn key_is_invariant_under_relabelling() {
        // a 5-vertex relation with some symmetry
        let rows = vec![0b00011, 0b00110, 0b01100, 0b11000, 0b10001];
        let inv = vec![0u8; 5];
        let (key, _) = canonical_form(&rows, &inv);
        for p in all_perms(5) {
            let q = permute(&rows, &p);
            assert_eq!(canonical_form(&q, &inv).0, key);
            let f = find_isomorphism(&rows, &inv, &q, &inv).unwrap();
            assert!(is_isomorphism(&rows, &q, &f));
        }
    }

    #[test]
    fn key_round_trips_rows() {
        let rows = vec![0b011, 0b010, 0b111];
        let (key, order) = canonical_form(&rows, &[0, 0, 0]);
        let mut pos = vec![0; 3];
        for (p, &x) in order.iter().enumerate() {
            pos[x] = p;
        }
        assert_eq!(key.rows(), permute(&rows, &pos));
    }

    #[test]
    fn non_isomorphic_relations_differ() {
        let path = vec![0b011, 0b110, 0b100];
        let star = vec![0b111, 0b010, 0b100];
        let inv = [0u8; 3];
        assert_ne!(canonical_form(&path, &inv).0, canonical_form(&star, &inv).0);
        assert!(find_isomorphism(&path, &inv, &star, &inv).is_none());
    }

    #[test]
    fn highly_symmetric_relations_are_fast() {
        // empty, complete and a disjoint union of 4-cycles on 40 vertices
        let n = 40;
        let empty = vec![0u64; n];
        let complete: Vec<u64> = (0..n).map(|_| bits::full(n)).collect();
        let cycles: Vec<u64> = (0..n).map(|x| bits::bit(x / 4 * 4 + (x + 1) % 4)).collect();
        let inv = vec![0u8; n];
        for rows in [empty, complete, cycles] {
            let (key, _) = canonical_form(&rows, &inv);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.reverse();
            perm.swap(3, 17);
            assert_eq!(canonical_form(&permute(&rows, &perm), &inv).0, key);
        }
    }
}
