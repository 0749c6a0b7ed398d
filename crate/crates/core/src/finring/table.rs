use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};

/// Rings above this size get a sampled axiom check at construction time
/// instead of the exhaustive triple scan.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 512;
const SAMPLED_AXIOM_TRIPLES: usize = 200_000;

/// How a ring was built. Used for decoding matrix entries and for labels.
#[derive(Clone, Debug)]
pub enum Shape {
    ZMod { m: usize },
    Galois { p: usize, k: u32, modulus: Vec<usize> },
    Matrix { base: Arc<RingTable>, n: usize },
    Triangular { base: Arc<RingTable>, n: usize },
    Product { left: Arc<RingTable>, right: Arc<RingTable> },
    /// A subring lifted out of an ambient ring; `embedding[i]` is the ambient
    /// index of element `i`.
    Extracted { embedding: Vec<usize> },
    Tables,
}

/// A finite unital ring given by dense operation tables.
#[derive(Clone)]
pub struct RingTable {
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    commutative: bool,
    label: String,
    shape: Shape,
}

/// Which triples the ring-axiom check visits.
#[derive(Clone, Copy, Debug)]
pub enum Coverage {
    Exhaustive,
    Sampled { triples: usize, seed: u64 },
}

impl RingTable {
    /// Validates raw tables and builds a ring. The additive inverse table is
    /// derived from `add`. Axioms are checked exhaustively up to
    /// [`EXHAUSTIVE_AXIOM_LIMIT`] elements and on a seeded sample above it.
    pub fn from_tables(
        label: impl Into<String>,
        size: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        shape: Shape,
    ) -> Result<Self> {
        let ring = Self::assemble(label.into(), size, add, mul, zero, one, shape)?;
        let coverage = if size <= EXHAUSTIVE_AXIOM_LIMIT {
            Coverage::Exhaustive
        } else {
            Coverage::Sampled {
                triples: SAMPLED_AXIOM_TRIPLES,
                seed: 0x5eed,
            }
        };
        ring.check_axioms(coverage, ExecMode::Parallel)?;
        Ok(ring)
    }

    fn assemble(
        label: String,
        size: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        shape: Shape,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidTables("a ring has at least one element".into()));
        }
        let cells = size * size;
        if add.len() != cells {
            return Err(Error::LengthMismatch { expected: cells, got: add.len() });
        }
        if mul.len() != cells {
            return Err(Error::LengthMismatch { expected: cells, got: mul.len() });
        }
        for &v in add.iter().chain(&mul) {
            if v as usize >= size {
                return Err(Error::ElementOutOfRange { index: v as usize, size });
            }
        }
        for idx in [zero, one] {
            if idx >= size {
                return Err(Error::ElementOutOfRange { index: idx, size });
            }
        }
        if zero == one && size > 1 {
            return Err(Error::AxiomViolation { axiom: "zero != one", witness: vec![zero] });
        }
        for a in 0..size {
            if add[a * size + zero] as usize != a || add[zero * size + a] as usize != a {
                return Err(Error::AxiomViolation { axiom: "additive identity", witness: vec![a] });
            }
            if mul[a * size + one] as usize != a || mul[one * size + a] as usize != a {
                return Err(Error::AxiomViolation {
                    axiom: "multiplicative identity",
                    witness: vec![a],
                });
            }
        }
        let mut neg = vec![0u32; size];
        for a in 0..size {
            let b = (0..size)
                .find(|&b| add[a * size + b] as usize == zero)
                .ok_or(Error::AxiomViolation { axiom: "additive inverse", witness: vec![a] })?;
            neg[a] = b as u32;
        }
        let mut commutative = true;
        for a in 0..size {
            for b in (a + 1)..size {
                if add[a * size + b] != add[b * size + a] {
                    return Err(Error::AxiomViolation {
                        axiom: "additive commutativity",
                        witness: vec![a, b],
                    });
                }
                if mul[a * size + b] != mul[b * size + a] {
                    commutative = false;
                }
            }
        }
        Ok(Self { size, add, mul, neg, zero, one, commutative, label, shape })
    }

    /// Checks associativity of both operations and two-sided distributivity.
    /// Identities, inverses and additive commutativity are enforced when the
    /// table is assembled.
    pub fn check_axioms(&self, coverage: Coverage, mode: ExecMode) -> Result<()> {
        let n = self.size;
        let triple = |a: usize, b: usize, c: usize| -> Option<&'static str> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Some("additive associativity");
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Some("multiplicative associativity");
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Some("left distributivity");
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return Some("right distributivity");
            }
            None
        };
        let failure = match coverage {
            Coverage::Exhaustive => {
                let firsts: Vec<usize> = (0..n).collect();
                exec::map_vec(mode, &firsts, |&a| {
                    for b in 0..n {
                        for c in 0..n {
                            if let Some(ax) = triple(a, b, c) {
                                return Some((ax, vec![a, b, c]));
                            }
                        }
                    }
                    None
                })
                .into_iter()
                .flatten()
                .next()
            }
            Coverage::Sampled { triples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..triples).find_map(|_| {
                    let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                    triple(a, b, c).map(|ax| (ax, vec![a, b, c]))
                })
            }
        };
        match failure {
            Some((axiom, witness)) => Err(Error::AxiomViolation { axiom, witness }),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// `x` added to itself `k` times (`k = 0` gives zero).
    pub fn multiple(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, x))
    }

    /// `x^k` with `x^0 = 1`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }

    /// Any two-sided inverse of `x`, by exhaustive scan.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        (0..self.size).find(|&y| self.mul(x, y) == self.one && self.mul(y, x) == self.one)
    }

    pub fn is_field(&self) -> bool {
        self.size > 1
            && self.commutative
            && (0..self.size).all(|x| x == self.zero || self.inverse(x).is_some())
    }

    /// Content hash of (size, add table, mul table), hex encoded.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.size as u64).to_le_bytes());
        for v in self.add.iter().chain(&self.mul) {
            h.update(v.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Row-major entries of a matrix or triangular-ring element, as indices
    /// into the base ring. Triangular elements are returned as full `n x n`
    /// matrices with zeros below the diagonal.
    pub fn matrix_entries(&self, x: usize) -> Option<Vec<usize>> {
        match &self.shape {
            Shape::Matrix { base, n } => Some(decode_digits(x, base.size(), n * n)),
            Shape::Triangular { base, n } => {
                let digits = decode_digits(x, base.size(), n * (n + 1) / 2);
                let mut full = vec![base.zero(); n * n];
                for (d, (i, j)) in digits.into_iter().zip(upper_positions(*n)) {
                    full[i * n + j] = d;
                }
                Some(full)
            }
            _ => None,
        }
    }

    /// Inverse of [`RingTable::matrix_entries`]. Returns `None` for entries
    /// below the diagonal of a triangular ring.
    pub fn matrix_element(&self, entries: &[usize]) -> Option<usize> {
        match &self.shape {
            Shape::Matrix { base, n } if entries.len() == n * n => {
                Some(encode_digits(entries, base.size()))
            }
            Shape::Triangular { base, n } if entries.len() == n * n => {
                for i in 0..*n {
                    for j in 0..i {
                        if entries[i * n + j] != base.zero() {
                            return None;
                        }
                    }
                }
                let digits: Vec<usize> =
                    upper_positions(*n).map(|(i, j)| entries[i * n + j]).collect();
                Some(encode_digits(&digits, base.size()))
            }
            _ => None,
        }
    }

    /// Base ring and dimension of a matrix or triangular ring.
    pub fn matrix_base(&self) -> Option<(&Arc<RingTable>, usize)> {
        match &self.shape {
            Shape::Matrix { base, n } | Shape::Triangular { base, n } => Some((base, *n)),
            _ => None,
        }
    }

    /// Human-readable rendering of an element.
    pub fn format_element(&self, x: usize) -> String {
        match &self.shape {
            Shape::Matrix { base, n } | Shape::Triangular { base, n } => {
                let entries = self.matrix_entries(x).expect("matrix shape");
                let rows: Vec<String> = entries
                    .chunks(*n)
                    .map(|r| r.iter().map(|&e| base.format_element(e)).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("[{}]", rows.join("; "))
            }
            Shape::Product { left, right } => {
                let (a, b) = (x / right.size(), x % right.size());
                format!("({}, {})", left.format_element(a), right.format_element(b))
            }
            Shape::Galois { p, k, .. } if *k > 1 => {
                let coeffs = decode_digits(x, *p, *k as usize);
                let terms: Vec<String> = coeffs
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "x".into(),
                        (1, c) => format!("{c}x"),
                        (i, 1) => format!("x^{i}"),
                        (i, c) => format!("{c}x^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            _ => x.to_string(),
        }
    }
}

impl PartialEq for RingTable {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for RingTable {}

impl fmt::Debug for RingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingTable")
            .field("label", &self.label)
            .field("size", &self.size)
            .field("commutative", &self.commutative)
            .finish()
    }
}

pub(crate) fn decode_digits(mut x: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % radix);
        x /= radix;
    }
    out
}

pub(crate) fn encode_digits(digits: &[usize], radix: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

pub(crate) fn upper_positions(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i..n).map(move |j| (i, j)))
}
