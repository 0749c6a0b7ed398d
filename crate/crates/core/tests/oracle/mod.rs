//! Brute-force oracles written directly against the operation tables. They
//! deliberately avoid the library's lattice, CSP and checker code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use partspec_core::RingTable;

pub type Set = BTreeSet<usize>;

pub fn commute(r: &RingTable, a: usize, b: usize) -> bool {
    r.mul(a, b) == r.mul(b, a)
}

pub fn subset(mask: u64, n: usize) -> Set {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn is_partial_ideal(r: &RingTable, s: &Set) -> bool {
    if !s.contains(&r.zero()) {
        return false;
    }
    for a in r.elements() {
        for b in r.elements() {
            if !commute(r, a, b) {
                continue;
            }
            if s.contains(&a) && s.contains(&b) && !s.contains(&r.add(a, b)) {
                return false;
            }
            if s.contains(&b) && !s.contains(&r.mul(a, b)) {
                return false;
            }
        }
    }
    true
}

pub fn is_prime_partial_ideal(r: &RingTable, s: &Set) -> bool {
    if s.contains(&r.one()) || !is_partial_ideal(r, s) {
        return false;
    }
    for x in r.elements() {
        for y in r.elements() {
            if commute(r, x, y) && s.contains(&r.mul(x, y)) && !s.contains(&x) && !s.contains(&y) {
                return false;
            }
        }
    }
    true
}

fn filter_subsets(r: &RingTable, keep: impl Fn(&Set) -> bool) -> BTreeSet<Set> {
    let n = r.size();
    assert!(n <= 20, "oracle subset scan limited to 20 elements");
    (0..1u64 << n).map(|m| subset(m, n)).filter(|s| keep(s)).collect()
}

pub fn partial_ideals(r: &RingTable) -> BTreeSet<Set> {
    let z = r.zero();
    filter_subsets(r, |s| s.contains(&z) && is_partial_ideal(r, s))
}

pub fn prime_partial_ideals(r: &RingTable) -> BTreeSet<Set> {
    let (z, o) = (r.zero(), r.one());
    filter_subsets(r, |s| s.contains(&z) && !s.contains(&o) && is_prime_partial_ideal(r, s))
}

pub fn is_subring(r: &RingTable, s: &Set) -> bool {
    s.contains(&r.zero())
        && s.contains(&r.one())
        && s.iter().all(|&a| s.contains(&r.neg(a)) && s.iter().all(|&b| s.contains(&r.add(a, b)) && s.contains(&r.mul(a, b))))
}

pub fn commutative_subrings(r: &RingTable) -> BTreeSet<Set> {
    let (z, o) = (r.zero(), r.one());
    filter_subsets(r, |s| {
        s.contains(&z) && s.contains(&o) && is_subring(r, s) && s.iter().all(|&a| s.iter().all(|&b| commute(r, a, b)))
    })
}

pub fn nilpotents(r: &RingTable) -> Set {
    r.elements()
        .filter(|&x| {
            let mut p = x;
            for _ in 0..r.size() {
                if p == r.zero() {
                    return true;
                }
                p = r.mul(p, x);
            }
            p == r.zero()
        })
        .collect()
}

pub fn idempotents(r: &RingTable) -> Set {
    r.elements().filter(|&x| r.mul(x, x) == x).collect()
}

pub fn centralizer(r: &RingTable, s: &Set) -> Set {
    r.elements().filter(|&x| s.iter().all(|&a| commute(r, x, a))).collect()
}

/// Functions `R -> K` that preserve 0, 1, + and · on commuting pairs.
pub fn partial_morphisms(r: &RingTable, k: &RingTable) -> Vec<Vec<usize>> {
    let n = r.size();
    let q = k.size();
    let total = (q as u128).pow(n as u32);
    assert!(total <= 1 << 24, "oracle morphism scan too large");
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    'outer: for code in 0..total as u64 {
        let mut c = code;
        for slot in f.iter_mut() {
            *slot = (c % q as u64) as usize;
            c /= q as u64;
        }
        if f[r.zero()] != k.zero() || f[r.one()] != k.one() {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                if commute(r, a, b)
                    && (f[r.add(a, b)] != k.add(f[a], f[b]) || f[r.mul(a, b)] != k.mul(f[a], f[b]))
                {
                    continue 'outer;
                }
            }
        }
        out.push(f.clone());
    }
    out
}
