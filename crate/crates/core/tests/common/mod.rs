//! Brute-force oracles shared by the integration tests. None of them use the
//! library's enumeration or canonical-form code.

#![allow(dead_code)]

use tirs::{Digraph, FiniteLattice};

/// Every permutation of `0..n`, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub type Matrix = Vec<Vec<bool>>;

pub fn leq_matrix(l: &FiniteLattice) -> Matrix {
    l.elements().map(|a| l.elements().map(|b| l.leq(a, b)).collect()).collect()
}

pub fn adjacency(g: &Digraph) -> Matrix {
    g.vertices().map(|x| g.vertices().map(|y| g.has_arc(x, y)).collect()).collect()
}

fn preserved(a: &Matrix, b: &Matrix, f: &[usize]) -> bool {
    (0..a.len()).all(|x| (0..a.len()).all(|y| a[x][y] == b[f[x]][f[y]]))
}

pub fn brute_isomorphic(a: &Matrix, b: &Matrix) -> bool {
    a.len() == b.len() && permutations(a.len()).iter().any(|f| preserved(a, b, f))
}

pub fn automorphism_count(a: &Matrix) -> usize {
    permutations(a.len()).iter().filter(|f| preserved(a, a, f)).count()
}

/// Whether a reflexive, antisymmetric, transitive relation has all binary
/// joins and meets.
pub fn is_lattice_order(leq: &Matrix) -> bool {
    let n = leq.len();
    let least_upper = |a: usize, b: usize| {
        let ups: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
        ups.iter().any(|&c| ups.iter().all(|&d| leq[c][d]))
    };
    let greatest_lower = |a: usize, b: usize| {
        let downs: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
        downs.iter().any(|&c| downs.iter().all(|&d| leq[d][c]))
    };
    (0..n).all(|a| (0..n).all(|b| least_upper(a, b) && greatest_lower(a, b)))
}

/// Partial orders on `0..n` where `0` is least and `n - 1` greatest, with
/// every relation among the other elements tried.
pub fn bounded_orders(n: usize) -> Vec<Matrix> {
    if n == 1 {
        return vec![vec![vec![true]]];
    }
    let middle: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = middle
        .iter()
        .flat_map(|&a| middle.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
            row[n - 1] = true;
        }
        leq[0] = vec![true; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                leq[a][b] = true;
            }
        }
        let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(leq[a][b] && leq[b][a])));
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !leq[a][b] || (0..n).all(|c| !leq[b][c] || leq[a][c])));
        if antisymmetric && transitive {
            out.push(leq);
        }
    }
    out
}

/// Lattices on `0..n` with bottom `0` and top `n - 1`, counted as labelled
/// structures.
pub fn labeled_bounded_lattice_count(n: usize) -> usize {
    bounded_orders(n).iter().filter(|m| is_lattice_order(m)).count()
}

/// Isomorphism classes among the bounded lattices on `n` elements, found by
/// minimising the order matrix over all relabellings of the middle.
pub fn unlabeled_lattice_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let perms = permutations(n - 2);
    let mut seen = std::collections::BTreeSet::new();
    for m in bounded_orders(n).into_iter().filter(is_lattice_order) {
        let key = perms
            .iter()
            .map(|p| {
                let f = |x: usize| if x == 0 || x == n - 1 { x } else { p[x - 1] + 1 };
                let mut relabeled = vec![vec![false; n]; n];
                for a in 0..n {
                    for b in 0..n {
                        relabeled[f(a)][f(b)] = m[a][b];
                    }
                }
                relabeled
            })
            .min()
            .unwrap();
        seen.insert(key);
    }
    seen.len()
}

/// `(n - 2)! / |Aut(L)|`, the number of bounded labellings of `l`.
pub fn bounded_labelings(l: &FiniteLattice) -> usize {
    let n = l.len();
    if n == 1 {
        return 1;
    }
    let factorial: usize = (1..=n - 2).product();
    factorial / automorphism_count(&leq_matrix(l))
}
