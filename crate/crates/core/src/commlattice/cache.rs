//! On-disk lattice cache: one file per ring fingerprint.
//!
//! Layout (little endian): magic `PSLC`, format version `u32`, 64 ASCII hex
//! bytes of fingerprint, ring size `u64`, subring count `u64`, then each
//! subring's member bitset as `ceil(size / 64)` words.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::CommLattice;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::finring::{is_commutative_set, is_subring, RingTable, Subring};

const MAGIC: &[u8; 4] = b"PSLC";
const VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, fingerprint: &str) -> PathBuf {
        self.dir.join(format!("{fingerprint}.lattice"))
    }

    pub fn store(&self, lat: &CommLattice) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let fp = lat.ring().fingerprint();
        let path = self.path_for(&fp);
        let mut buf = Vec::new();
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&VERSION.to_le_bytes());
        buf.extend_from_slice(fp.as_bytes());
        buf.extend_from_slice(&(lat.ring().size() as u64).to_le_bytes());
        buf.extend_from_slice(&(lat.len() as u64).to_le_bytes());
        for s in lat.subrings() {
            for w in s.members().words() {
                buf.extend_from_slice(&w.to_le_bytes());
            }
        }
        let tmp = path.with_extension("lattice.tmp");
        fs::File::create(&tmp)?.write_all(&buf)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads the lattice stored under the ring's fingerprint. A missing file
    /// is reported as [`Error::CacheMiss`].
    pub fn load(&self, ring: &Arc<RingTable>) -> Result<CommLattice> {
        let fp = ring.fingerprint();
        let path = self.path_for(&fp);
        if !path.exists() {
            return Err(Error::CacheMiss(fp));
        }
        load_file(&path, ring)
    }
}

/// Reads a cache file and re-verifies it against `ring`: the fingerprint must
/// match, and every stored set must be a commutative unital subring.
pub fn load_file(path: &Path, ring: &Arc<RingTable>) -> Result<CommLattice> {
    let corrupt = |reason: &str| Error::CorruptCache {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    let mut cur = bytes.as_slice();
    let mut take = |n: usize| -> Result<&[u8]> {
        if cur.len() < n {
            return Err(corrupt("truncated"));
        }
        let (head, rest) = cur.split_at(n);
        cur = rest;
        Ok(head)
    };
    if take(4)? != MAGIC {
        return Err(corrupt("bad magic"));
    }
    let version = u32::from_le_bytes(take(4)?.try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(corrupt(&format!("unsupported version {version}")));
    }
    let found = String::from_utf8(take(64)?.to_vec()).map_err(|_| corrupt("fingerprint"))?;
    let expected = ring.fingerprint();
    if found != expected {
        return Err(Error::FingerprintMismatch { expected, found });
    }
    let size = u64::from_le_bytes(take(8)?.try_into().expect("8 bytes")) as usize;
    if size != ring.size() {
        return Err(corrupt("ring size"));
    }
    let count = u64::from_le_bytes(take(8)?.try_into().expect("8 bytes")) as usize;
    let nwords = size.div_ceil(64);
    let expected_len = count
        .checked_mul(nwords * 8)
        .and_then(|b| b.checked_add(4 + 4 + 64 + 16));
    if expected_len != Some(bytes.len()) {
        return Err(corrupt("length does not match header"));
    }
    let mut subrings = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let words = take(8 * nwords)?
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        let members = ElementSet::from_words(size, words).ok_or_else(|| corrupt("stray bits"))?;
        if !is_subring(ring, &members) || !is_commutative_set(ring, &members) {
            return Err(corrupt("stored set is not a commutative subring"));
        }
        subrings.push(Subring::from_closed(ring, members));
    }
    let lat = CommLattice::from_subrings(Arc::clone(ring), subrings, 0);
    if lat.len() != count {
        return Err(corrupt("duplicate subrings"));
    }
    Ok(lat)
}
