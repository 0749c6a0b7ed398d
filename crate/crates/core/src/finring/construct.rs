//! Constructors for the concrete rings used throughout the crate.

use std::sync::Arc;

use super::table::{decode_digits, encode_digits, upper_positions, RingTable, Shape};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 4096;

/// Irreducible moduli for the non-prime fields, coefficients low to high
/// (monic, so the last coefficient is 1).
const MODULUS_CATALOG: &[(usize, u32, &[usize])] = &[
    (2, 2, &[1, 1, 1]),          // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),       // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]),    // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]), // x^5 + x^2 + 1
    (3, 2, &[1, 0, 1]),          // x^2 + 1
    (3, 3, &[1, 2, 0, 1]),       // x^3 + 2x + 1
    (5, 2, &[2, 1, 1]),          // x^2 + x + 2
    (7, 2, &[1, 0, 1]),          // x^2 + 1
];

/// Ring constructors sharing one element-count cap.
#[derive(Clone, Copy, Debug)]
pub struct RingBuilder {
    pub cap: usize,
}

impl Default for RingBuilder {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl RingBuilder {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    fn check_cap(&self, requested: u128) -> Result<usize> {
        if requested > self.cap as u128 {
            Err(Error::CapExceeded { requested, cap: self.cap })
        } else {
            Ok(requested as usize)
        }
    }

    pub fn zmod(&self, m: usize) -> Result<RingTable> {
        if m == 0 {
            return Err(Error::Definition("modulus must be positive".into()));
        }
        let m = self.check_cap(m as u128)?;
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                add.push(((a + b) % m) as u32);
                mul.push(((a * b) % m) as u32);
            }
        }
        RingTable::from_tables(format!("Z/{m}"), m, add, mul, 0, 1 % m, Shape::ZMod { m })
    }

    /// The field with `p^k` elements. Elements are polynomials of degree
    /// below `k` over `Z/p`, indexed by their base-`p` coefficient digits
    /// (constant term least significant).
    pub fn gf(&self, p: usize, k: u32) -> Result<RingTable> {
        let unsupported = |reason: &str| Error::UnsupportedField {
            p: p as u64,
            k,
            reason: reason.into(),
        };
        if k == 0 {
            return Err(unsupported("degree must be positive"));
        }
        if !is_prime(p) {
            return Err(unsupported("characteristic is not prime"));
        }
        let size = self.check_cap((p as u128).checked_pow(k).unwrap_or(u128::MAX))?;
        if k == 1 {
            let z = self.zmod(p)?;
            return RingTable::from_tables(
                format!("F{p}"),
                p,
                table_of(&z, RingTable::add),
                table_of(&z, RingTable::mul),
                0,
                1,
                Shape::Galois { p, k, modulus: vec![0, 1] },
            );
        }
        let modulus = MODULUS_CATALOG
            .iter()
            .find(|(cp, ck, _)| *cp == p && *ck == k)
            .map(|(_, _, m)| m.to_vec())
            .ok_or_else(|| unsupported("no bundled modulus polynomial"))?;
        if !is_irreducible(&modulus, p) {
            return Err(unsupported("bundled modulus is reducible"));
        }
        let deg = k as usize;
        let elems: Vec<Vec<usize>> = (0..size).map(|x| decode_digits(x, p, deg)).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &elems {
            for b in &elems {
                let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                add.push(encode_digits(&sum, p) as u32);
                let prod = poly_mulmod(a, b, &modulus, p);
                mul.push(encode_digits(&prod, p) as u32);
            }
        }
        RingTable::from_tables(
            format!("F{size}"),
            size,
            add,
            mul,
            0,
            1,
            Shape::Galois { p, k, modulus },
        )
    }

    /// `n x n` matrices over `base`, entries row-major with position 0 the
    /// least significant digit of the element index.
    pub fn matrix(&self, base: &Arc<RingTable>, n: usize) -> Result<RingTable> {
        if n == 0 {
            return Err(Error::Definition("matrix dimension must be positive".into()));
        }
        let b = base.size();
        let size = self.check_cap(pow_u128(b, n * n))?;
        let elems: Vec<Vec<usize>> = (0..size).map(|x| decode_digits(x, b, n * n)).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        let mut scratch = vec![0; n * n];
        for x in &elems {
            for y in &elems {
                for (s, (&u, &v)) in scratch.iter_mut().zip(x.iter().zip(y)) {
                    *s = base.add(u, v);
                }
                add.push(encode_digits(&scratch, b) as u32);
                matmul(base, n, x, y, &mut scratch);
                mul.push(encode_digits(&scratch, b) as u32);
            }
        }
        let mut identity = vec![base.zero(); n * n];
        let mut zero = vec![base.zero(); n * n];
        for i in 0..n {
            identity[i * n + i] = base.one();
        }
        zero.fill(base.zero());
        RingTable::from_tables(
            format!("M{n}({})", base.label()),
            size,
            add,
            mul,
            encode_digits(&zero, b),
            encode_digits(&identity, b),
            Shape::Matrix { base: Arc::clone(base), n },
        )
    }

    /// Upper-triangular `n x n` matrices over a commutative `base`.
    pub fn triangular(&self, base: &Arc<RingTable>, n: usize) -> Result<RingTable> {
        if !base.is_commutative() {
            return Err(Error::NotCommutative(format!("triangular base {}", base.label())));
        }
        if n == 0 {
            return Err(Error::Definition("matrix dimension must be positive".into()));
        }
        let b = base.size();
        let slots = n * (n + 1) / 2;
        let size = self.check_cap(pow_u128(b, slots))?;
        let positions: Vec<(usize, usize)> = upper_positions(n).collect();
        let expand = |x: usize| {
            let mut full = vec![base.zero(); n * n];
            for (d, &(i, j)) in decode_digits(x, b, slots).into_iter().zip(&positions) {
                full[i * n + j] = d;
            }
            full
        };
        let pack = |full: &[usize]| {
            let digits: Vec<usize> = positions.iter().map(|&(i, j)| full[i * n + j]).collect();
            encode_digits(&digits, b)
        };
        let elems: Vec<Vec<usize>> = (0..size).map(expand).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        let mut scratch = vec![0; n * n];
        for x in &elems {
            for y in &elems {
                for (s, (&u, &v)) in scratch.iter_mut().zip(x.iter().zip(y)) {
                    *s = base.add(u, v);
                }
                add.push(pack(&scratch) as u32);
                matmul(base, n, x, y, &mut scratch);
                mul.push(pack(&scratch) as u32);
            }
        }
        let mut identity = vec![base.zero(); n * n];
        for i in 0..n {
            identity[i * n + i] = base.one();
        }
        RingTable::from_tables(
            format!("T{n}({})", base.label()),
            size,
            add,
            mul,
            pack(&vec![base.zero(); n * n]),
            pack(&identity),
            Shape::Triangular { base: Arc::clone(base), n },
        )
    }

    /// Componentwise product; element `(a, b)` has index `a * |right| + b`.
    pub fn product(&self, left: &Arc<RingTable>, right: &Arc<RingTable>) -> Result<RingTable> {
        let (na, nb) = (left.size(), right.size());
        let size = self.check_cap(na as u128 * nb as u128)?;
        let split = |x: usize| (x / nb, x % nb);
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in 0..size {
            let (xa, xb) = split(x);
            for y in 0..size {
                let (ya, yb) = split(y);
                add.push((left.add(xa, ya) * nb + right.add(xb, yb)) as u32);
                mul.push((left.mul(xa, ya) * nb + right.mul(xb, yb)) as u32);
            }
        }
        RingTable::from_tables(
            format!("{}x{}", left.label(), right.label()),
            size,
            add,
            mul,
            left.zero() * nb + right.zero(),
            left.one() * nb + right.one(),
            Shape::Product { left: Arc::clone(left), right: Arc::clone(right) },
        )
    }

    /// `ring^n` as an iterated product.
    pub fn power(&self, ring: &Arc<RingTable>, n: usize) -> Result<RingTable> {
        if n == 0 {
            return Err(Error::Definition("power must be positive".into()));
        }
        let mut acc = Arc::clone(ring);
        for _ in 1..n {
            acc = Arc::new(self.product(&acc, ring)?);
        }
        Ok(Arc::try_unwrap(acc).unwrap_or_else(|a| (*a).clone()))
    }
}

pub fn make_zmod(m: usize) -> Result<RingTable> {
    RingBuilder::default().zmod(m)
}

pub fn make_gf(p: usize, k: u32) -> Result<RingTable> {
    RingBuilder::default().gf(p, k)
}

pub fn make_matrix_ring(base: &Arc<RingTable>, n: usize) -> Result<RingTable> {
    RingBuilder::default().matrix(base, n)
}

pub fn make_triangular_ring(base: &Arc<RingTable>, n: usize) -> Result<RingTable> {
    RingBuilder::default().triangular(base, n)
}

pub fn make_product(a: &Arc<RingTable>, b: &Arc<RingTable>) -> Result<RingTable> {
    RingBuilder::default().product(a, b)
}

fn table_of(r: &RingTable, op: fn(&RingTable, usize, usize) -> usize) -> Vec<u32> {
    let n = r.size();
    (0..n * n).map(|i| op(r, i / n, i % n) as u32).collect()
}

fn pow_u128(base: usize, exp: usize) -> u128 {
    u32::try_from(exp)
        .ok()
        .and_then(|e| (base as u128).checked_pow(e))
        .unwrap_or(u128::MAX)
}

pub(crate) fn matmul(base: &RingTable, n: usize, x: &[usize], y: &[usize], out: &mut [usize]) {
    for i in 0..n {
        for j in 0..n {
            let mut acc = base.zero();
            for k in 0..n {
                acc = base.add(acc, base.mul(x[i * n + k], y[k * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Product of two polynomials reduced modulo a monic `modulus`.
fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let deg = modulus.len() - 1;
    let mut prod = vec![0usize; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(deg, 0);
    r
}

/// Remainder of `a` divided by a monic `m` over `Z/p`.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    for top in (dm..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - dm + i;
            r[idx] = (r[idx] + p * p - (c * mi) % p) % p;
        }
    }
    r.truncate(dm.max(1));
    r
}

/// No monic factor of degree `1..=deg/2` divides `modulus`.
fn is_irreducible(modulus: &[usize], p: usize) -> bool {
    let deg = modulus.len() - 1;
    if modulus[deg] != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = decode_digits(low, p, d);
            f.push(1);
            if poly_rem(modulus, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let f2 = make_zmod(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let z6 = make_zmod(6).unwrap();
        assert_eq!(z6.mul(2, 3), 0);
        let z1 = make_zmod(1).unwrap();
        assert_eq!(z1.zero(), z1.one());
    }

    #[test]
    fn zmod12_has_four_idempotents() {
        let z = make_zmod(12).unwrap();
        let idem: Vec<usize> = (0..12).filter(|&x| z.mul(x, x) == x).collect();
        assert_eq!(idem, vec![0, 1, 4, 9]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            RingBuilder::with_cap(10).zmod(11),
            Err(Error::CapExceeded { requested: 11, cap: 10 })
        ));
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        assert!(matches!(make_matrix_ring(&f2, 4), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn irreducibility_screen() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2)); // (x^2+x+1)^2
        assert!(is_irreducible(&[2, 1, 1], 5));
        for (p, _, m) in MODULUS_CATALOG {
            assert!(is_irreducible(m, *p));
        }
    }

    #[test]
    fn gf4_has_order_three_generator() {
        let f4 = make_gf(2, 2).unwrap();
        assert_eq!(f4.size(), 4);
        let x = (0..4)
            .find(|&x| f4.mul(x, x) == f4.add(x, f4.one()))
            .expect("root of x^2+x+1");
        let order = (1..4).find(|&k| f4.pow(x, k) == f4.one()).unwrap();
        assert_eq!(order, 3);
        assert!(f4.is_field());
    }

    #[test]
    fn catalog_fields_are_fields() {
        for (p, k) in [(3, 2), (2, 3), (2, 4), (5, 2), (7, 2)] {
            let f = make_gf(p, k).unwrap();
            assert!(f.is_field(), "GF({p}^{k})");
        }
        let f9 = make_gf(3, 2).unwrap();
        assert_eq!((0..9).filter(|&x| f9.inverse(x).is_some()).count(), 8);
    }

    #[test]
    fn unsupported_fields() {
        assert!(matches!(make_gf(4, 1), Err(Error::UnsupportedField { .. })));
        assert!(matches!(make_gf(11, 2), Err(Error::UnsupportedField { .. })));
    }

    #[test]
    fn matrix_ring_over_f2() {
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        let m2 = make_matrix_ring(&f2, 2).unwrap();
        assert_eq!(m2.size(), 16);
        assert!(!m2.is_commutative());
        let e12 = m2.matrix_element(&[0, 1, 0, 0]).unwrap();
        let e21 = m2.matrix_element(&[0, 0, 1, 0]).unwrap();
        let e11 = m2.matrix_element(&[1, 0, 0, 0]).unwrap();
        let e22 = m2.matrix_element(&[0, 0, 0, 1]).unwrap();
        assert_eq!(m2.mul(e12, e21), e11);
        assert_eq!(m2.mul(e21, e12), e22);
    }

    #[test]
    fn triangular_ring_over_f2() {
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        let t2 = make_triangular_ring(&f2, 2).unwrap();
        assert_eq!(t2.size(), 8);
        assert!(!t2.is_commutative());
        let e11 = t2.matrix_element(&[1, 0, 0, 0]).unwrap();
        let e12 = t2.matrix_element(&[0, 1, 0, 0]).unwrap();
        assert_ne!(t2.mul(e11, e12), t2.mul(e12, e11));
        assert!(t2.matrix_element(&[0, 0, 1, 0]).is_none());
    }

    #[test]
    fn triangular_needs_commutative_base() {
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        let m2 = Arc::new(make_matrix_ring(&f2, 2).unwrap());
        assert!(matches!(make_triangular_ring(&m2, 2), Err(Error::NotCommutative(_))));
    }

    #[test]
    fn boolean_square_is_all_idempotent() {
        let f2 = Arc::new(make_gf(2, 1).unwrap());
        let p = make_product(&f2, &f2).unwrap();
        assert_eq!(p.size(), 4);
        assert!((0..4).all(|x| p.mul(x, x) == x));
    }
}
