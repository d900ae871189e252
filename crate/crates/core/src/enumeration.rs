//! Exhaustive generation of small lattices and reflexive digraphs, one
//! representative per isomorphism class.
//!
//! Removing a coatom from a lattice with at least three elements leaves a
//! lattice, so every lattice on `n + 1` elements arises from one on `n`
//! elements by adding a new coatom above some down-set not containing the
//! top. The generator applies every such extension and keeps one canonical
//! copy of each result.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, contains, is_subset};
use crate::digraph::{self, Digraph};
use crate::error::{Error, Result};
use crate::io::LatticeJson;
use crate::iso::CanonicalKey;
use crate::lattice::FiniteLattice;

pub const MAX_LATTICE_SIZE: usize = 8;
pub const MAX_DIGRAPH_VERTICES: usize = 5;
/// Bumped whenever generation or canonical numbering changes, so stale cache
/// files are rebuilt.
pub const GENERATOR_VERSION: u32 = 2;

/// Every lattice with at most `max_n` elements, up to isomorphism, each in
/// canonical numbering, sorted by size and then canonical key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCatalog {
    max_n: usize,
    entries: Vec<FiniteLattice>,
    keys: Vec<CanonicalKey>,
}

impl LatticeCatalog {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn entries(&self) -> &[FiniteLattice] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FiniteLattice> {
        self.entries.iter()
    }

    pub fn of_size(&self, n: usize) -> impl Iterator<Item = &FiniteLattice> {
        self.entries.iter().filter(move |l| l.len() == n)
    }

    /// `counts()[n]` is the number of lattices with `n` elements.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_n + 1];
        for l in &self.entries {
            counts[l.len()] += 1;
        }
        counts
    }

    /// Index of the entry isomorphic to `l`.
    pub fn position(&self, l: &FiniteLattice) -> Option<usize> {
        if l.len() > self.max_n {
            return None;
        }
        self.keys.binary_search(&l.canonical_key()).ok()
    }

    pub fn contains_isomorphic(&self, l: &FiniteLattice) -> bool {
        self.position(l).is_some()
    }

    fn from_entries(max_n: usize, entries: Vec<FiniteLattice>) -> Self {
        let mut keyed: Vec<(CanonicalKey, FiniteLattice)> =
            entries.into_iter().map(|l| (l.canonical_key(), l)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let (keys, entries) = keyed.into_iter().unzip();
        LatticeCatalog { max_n, entries, keys }
    }

    /// One compact lattice JSON record per line.
    pub fn write_ndjson(&self, mut w: impl Write) -> std::io::Result<()> {
        for l in &self.entries {
            serde_json::to_writer(&mut w, &LatticeJson::from_lattice(l))?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Write the catalog with a header line recording the bound and the
    /// generator version.
    pub fn save(&self, path: &Path) -> Result<()> {
        let header = CacheHeader {
            generator_version: GENERATOR_VERSION,
            max_n: self.max_n,
        };
        let mut buf = serde_json::to_vec(&header)?;
        buf.push(b'\n');
        self.write_ndjson(&mut buf).map_err(io_error)?;
        fs::write(path, buf).map_err(io_error)
    }

    /// Read a catalog written by [`LatticeCatalog::save`]; `None` when the
    /// header names another bound or generator version.
    pub fn load(path: &Path, max_n: usize) -> Result<Option<Self>> {
        let file = fs::File::open(path).map_err(io_error)?;
        let mut lines = BufReader::new(file).lines();
        let Some(first) = lines.next() else {
            return Ok(None);
        };
        let header: CacheHeader = serde_json::from_str(&first.map_err(io_error)?)?;
        if header.generator_version != GENERATOR_VERSION || header.max_n != max_n {
            return Ok(None);
        }
        let mut entries = Vec::new();
        for line in lines {
            let line = line.map_err(io_error)?;
            if !line.trim().is_empty() {
                entries.push(serde_json::from_str::<LatticeJson>(&line)?.to_lattice()?);
            }
        }
        Ok(Some(Self::from_entries(max_n, entries)))
    }
}

#[derive(Serialize, Deserialize)]
struct CacheHeader {
    generator_version: u32,
    max_n: usize,
}

fn io_error(e: std::io::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Load the catalog from `path` if it matches, otherwise enumerate and
/// write it there.
pub fn cached_catalog(max_n: usize, path: &Path) -> Result<LatticeCatalog> {
    if path.exists() {
        if let Ok(Some(catalog)) = LatticeCatalog::load(path, max_n) {
            return Ok(catalog);
        }
    }
    let catalog = enumerate_lattices(max_n)?;
    catalog.save(path)?;
    Ok(catalog)
}

pub fn enumerate_lattices(max_n: usize) -> Result<LatticeCatalog> {
    if max_n > MAX_LATTICE_SIZE {
        return Err(Error::BoundTooLarge {
            bound: max_n,
            max: MAX_LATTICE_SIZE,
        });
    }
    if max_n == 0 {
        return Err(Error::Empty);
    }
    let mut entries = vec![FiniteLattice::chain(1)?];
    let mut level = if max_n >= 2 { vec![FiniteLattice::chain(2)?] } else { Vec::new() };
    for n in 2..=max_n {
        entries.extend(level.iter().cloned());
        if n == max_n {
            break;
        }
        level = next_level(&level);
    }
    Ok(LatticeCatalog::from_entries(max_n, entries))
}

/// All lattices one element larger than those in `level` (which must hold
/// lattices of one size, at least 2), canonical and deduplicated.
fn next_level(level: &[FiniteLattice]) -> Vec<FiniteLattice> {
    let found: Vec<(CanonicalKey, FiniteLattice)> = level
        .par_iter()
        .flat_map_iter(|l| coatom_extensions(l).into_iter().map(|e| (e.canonical_key(), e)))
        .collect();
    let mut unique: BTreeMap<CanonicalKey, FiniteLattice> = BTreeMap::new();
    for (key, l) in found {
        unique.entry(key).or_insert(l);
    }
    unique.into_values().map(|l| l.canonical()).collect()
}

/// Lattices obtained from `l` by adding a new element `c` with `c ≺ 1` and
/// `↓c \ {c}` a nonempty down-set of `l` avoiding the top.
fn coatom_extensions(l: &FiniteLattice) -> Vec<FiniteLattice> {
    let n = l.len();
    let top = l.top();
    let rest: Vec<usize> = l.elements().filter(|&x| x != top && x != l.bottom()).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << rest.len() {
        let below = bits::iter(choice).fold(bit(l.bottom()), |s, i| s | bit(rest[i]));
        if !bits::iter(below).all(|x| is_subset(l.down_set(x), below)) {
            continue;
        }
        let leq = |a: usize, b: usize| match (a == n, b == n) {
            (false, false) => l.leq(a, b),
            (false, true) => contains(below, a),
            (true, false) => b == top,
            (true, true) => true,
        };
        if let Ok(ext) = FiniteLattice::from_leq(n + 1, leq) {
            out.push(ext);
        }
    }
    out
}

/// Every reflexive digraph on `1..=max_v` vertices accepted by `keep`, up to
/// isomorphism, each in canonical numbering, sorted by size and canonical key.
pub fn enumerate_reflexive_digraphs(
    max_v: usize,
    keep: impl Fn(&Digraph) -> bool + Sync,
) -> Result<Vec<Digraph>> {
    if max_v > MAX_DIGRAPH_VERTICES {
        return Err(Error::BoundTooLarge {
            bound: max_v,
            max: MAX_DIGRAPH_VERTICES,
        });
    }
    let mut out = Vec::new();
    for v in 1..=max_v {
        let slots: Vec<(usize, usize)> = (0..v)
            .flat_map(|x| (0..v).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect();
        let found: Vec<(CanonicalKey, Digraph)> = (0u64..1 << slots.len())
            .into_par_iter()
            .filter_map(|choice| {
                let mut rows: Vec<u64> = (0..v).map(bit).collect();
                for i in bits::iter(choice) {
                    let (x, y) = slots[i];
                    rows[x] |= bit(y);
                }
                let g = Digraph::from_rows(rows).expect("rows in range");
                keep(&g).then(|| (g.canonical_key(), g))
            })
            .collect();
        let unique: BTreeMap<CanonicalKey, ()> = found.into_iter().map(|(k, _)| (k, ())).collect();
        out.extend(
            unique
                .into_keys()
                .map(|k| Digraph::from_rows(k.rows()).expect("canonical rows in range")),
        );
    }
    Ok(out)
}

pub fn enumerate_tirs_digraphs(max_v: usize) -> Result<Vec<Digraph>> {
    enumerate_reflexive_digraphs(max_v, digraph::is_tirs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn small_counts() {
        let c = enumerate_lattices(6).unwrap();
        assert_eq!(c.counts(), [0, 1, 1, 1, 2, 5, 15]);
        assert!(c.contains_isomorphic(&fixtures::n5()));
        assert!(c.contains_isomorphic(&fixtures::m3()));
        assert!(c.contains_isomorphic(&fixtures::l3_dual()));
    }

    #[test]
    fn entries_are_canonical_and_sorted() {
        let c = enumerate_lattices(6).unwrap();
        for (i, l) in c.iter().enumerate() {
            assert_eq!(&l.canonical(), l);
            assert_eq!(l.bottom(), 0);
            assert_eq!(l.top(), l.len() - 1);
            assert_eq!(c.position(l), Some(i));
        }
        assert!(c.keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bounds() {
        assert!(matches!(enumerate_lattices(9), Err(Error::BoundTooLarge { .. })));
        assert_eq!(enumerate_lattices(1).unwrap().len(), 1);
        assert!(matches!(enumerate_tirs_digraphs(6), Err(Error::BoundTooLarge { .. })));
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(enumerate_lattices(7).unwrap(), enumerate_lattices(7).unwrap());
    }

    #[test]
    fn single_vertex_tirs() {
        let gs = enumerate_tirs_digraphs(1).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].arcs(), [(0, 0)]);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("catalog.ndjson");
        let built = cached_catalog(5, &path).unwrap();
        assert_eq!(LatticeCatalog::load(&path, 5).unwrap(), Some(built.clone()));
        assert_eq!(LatticeCatalog::load(&path, 6).unwrap(), None);
        assert_eq!(cached_catalog(5, &path).unwrap(), built);
    }
}
