use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Budget;
use crate::finring::{matmul, RingBuilder, RingMap, RingTable};
use crate::primespec::{spec, spec_map};

/// Square matrix over a base ring, row-major element indices.
pub type Matrix = Vec<usize>;

const SAMPLES: usize = 2000;

/// The data of the Morita argument for `M_n(k)`: a fixed-point-free
/// coordinate permutation `π`, the automorphism `ρ` of `kⁿ` it induces, the
/// permutation matrix `P`, conjugation `σ = P(-)P⁻¹` and the diagonal
/// embedding `ι: kⁿ → M_n(k)`.
#[derive(Clone, Debug)]
pub struct MoritaScenario {
    field: Arc<RingTable>,
    n: usize,
    pi: Vec<usize>,
    kn: Arc<RingTable>,
    rho: RingMap,
    p: Matrix,
    p_inv: Matrix,
}

impl MoritaScenario {
    /// Uses the n-cycle `π(i) = i + 1 mod n`.
    pub fn new(field: &Arc<RingTable>, n: usize) -> Result<Self> {
        Self::with_permutation(field, (0..n).map(|i| (i + 1) % n.max(1)).collect())
    }

    pub fn with_permutation(field: &Arc<RingTable>, pi: Vec<usize>) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::NotAField(field.label().to_string()));
        }
        let n = pi.len();
        let mut seen = vec![false; n];
        for &j in &pi {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Definition(format!("{pi:?} is not a permutation")));
            }
        }
        if n == 0 {
            return Err(Error::Definition("n must be positive".into()));
        }
        let kn = Arc::new(RingBuilder::default().power(field, n)?);
        let q = field.size();
        let rho = RingMap::from_fn(&kn, &kn, |x| {
            let a = coordinates(x, q, n);
            encode((0..n).map(|i| a[pi[i]]), q)
        })?;
        let (zero, one) = (field.zero(), field.one());
        let mut p = vec![zero; n * n];
        let mut p_inv = vec![zero; n * n];
        for i in 0..n {
            p[i * n + pi[i]] = one;
            p_inv[pi[i] * n + i] = one;
        }
        Ok(Self { field: Arc::clone(field), n, pi, kn, rho, p, p_inv })
    }

    pub fn field(&self) -> &Arc<RingTable> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn kn(&self) -> &Arc<RingTable> {
        &self.kn
    }

    pub fn rho(&self) -> &RingMap {
        &self.rho
    }

    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn p_inv(&self) -> &Matrix {
        &self.p_inv
    }

    /// Diagonal embedding `ι`.
    pub fn iota(&self, x: usize) -> Matrix {
        let n = self.n;
        let mut m = vec![self.field.zero(); n * n];
        for (i, a) in coordinates(x, self.field.size(), n).into_iter().enumerate() {
            m[i * n + i] = a;
        }
        m
    }

    /// `σ(X) = P X P⁻¹`.
    pub fn sigma(&self, x: &Matrix) -> Matrix {
        conjugate(&self.field, self.n, &self.p, x, &self.p_inv)
    }

    pub fn identity(&self) -> Matrix {
        identity(&self.field, self.n)
    }

    /// The scenario's structural claims: `ρ` is an automorphism, `ι` an
    /// injective hom, `P P⁻¹ = 1`, and `σ` a ring hom on sampled pairs
    /// (`M_n(k)` itself is never tabulated).
    pub fn check_invariants(&self) -> Result<()> {
        let k = &self.field;
        let n = self.n;
        if let Some((cond, w)) = self.rho.hom_violation() {
            return Err(Error::NotRingHom(format!("rho: {cond} at {w:?}")));
        }
        if !self.rho.is_bijective() {
            return Err(Error::Definition("rho is not bijective".into()));
        }
        if product(k, n, &self.p, &self.p_inv) != self.identity() || product(k, n, &self.p_inv, &self.p) != self.identity() {
            return Err(Error::Definition("P has no inverse".into()));
        }
        let kn = &self.kn;
        let mut seen = std::collections::HashSet::new();
        for x in kn.elements() {
            if !seen.insert(self.iota(x)) {
                return Err(Error::Definition("iota is not injective".into()));
            }
        }
        if self.iota(kn.one()) != self.identity() {
            return Err(Error::NotRingHom("iota does not preserve 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..SAMPLES {
            let (x, y) = (rng.gen_range(0..kn.size()), rng.gen_range(0..kn.size()));
            if self.iota(kn.add(x, y)) != sum(k, &self.iota(x), &self.iota(y))
                || self.iota(kn.mul(x, y)) != product(k, n, &self.iota(x), &self.iota(y))
            {
                return Err(Error::NotRingHom(format!("iota fails at ({x}, {y})")));
            }
            let a = random_matrix(&mut rng, k, n);
            let b = random_matrix(&mut rng, k, n);
            if self.sigma(&sum(k, &a, &b)) != sum(k, &self.sigma(&a), &self.sigma(&b))
                || self.sigma(&product(k, n, &a, &b)) != product(k, n, &self.sigma(&a), &self.sigma(&b))
            {
                return Err(Error::NotRingHom("sigma fails on a sampled pair".into()));
            }
        }
        if self.sigma(&self.identity()) != self.identity() {
            return Err(Error::NotRingHom("sigma does not preserve 1".into()));
        }
        Ok(())
    }
}

/// Digits of `x` in base `q`, most significant first; the layout produced
/// by iterated products.
fn coordinates(mut x: usize, q: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = x % q;
        x /= q;
    }
    out
}

fn encode(digits: impl Iterator<Item = usize>, q: usize) -> usize {
    digits.fold(0, |acc, d| acc * q + d)
}

fn identity(k: &RingTable, n: usize) -> Matrix {
    let mut m = vec![k.zero(); n * n];
    for i in 0..n {
        m[i * n + i] = k.one();
    }
    m
}

fn sum(k: &RingTable, a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect()
}

fn product(k: &RingTable, n: usize, a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = vec![k.zero(); n * n];
    matmul(k, n, a, b, &mut out);
    out
}

fn conjugate(k: &RingTable, n: usize, c: &Matrix, x: &Matrix, c_inv: &Matrix) -> Matrix {
    product(k, n, &product(k, n, c, x), c_inv)
}

fn random_matrix(rng: &mut ChaCha8Rng, k: &RingTable, n: usize) -> Matrix {
    (0..n * n).map(|_| rng.gen_range(0..k.size())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerCheck {
    pub holds: bool,
    /// Elements of `kⁿ` checked.
    pub checked: usize,
    /// First `a` with `ι(ρ(a)) ≠ C ι(a) C⁻¹`, as coordinates.
    pub witness: Option<Vec<usize>>,
}

/// `ι(ρ(a)) = P ι(a) P⁻¹` for every `a ∈ kⁿ`.
pub fn verify_corner_commutation(s: &MoritaScenario) -> Result<CornerCheck> {
    verify_corner_commutation_with(s, &s.p, &s.p_inv)
}

/// The same check with an arbitrary conjugator `c` in place of `P`.
pub fn verify_corner_commutation_with(s: &MoritaScenario, c: &Matrix, c_inv: &Matrix) -> Result<CornerCheck> {
    let (k, n) = (&s.field, s.n);
    if c.len() != n * n || c_inv.len() != n * n {
        return Err(Error::LengthMismatch { expected: n * n, got: c.len().min(c_inv.len()) });
    }
    if product(k, n, c, c_inv) != s.identity() {
        return Err(Error::Definition("conjugator and claimed inverse do not multiply to 1".into()));
    }
    let kn = &s.kn;
    let witness = kn
        .elements()
        .find(|&a| s.iota(s.rho.apply(a)) != conjugate(k, n, c, &s.iota(a), c_inv))
        .map(|a| coordinates(a, k.size(), n));
    Ok(CornerCheck { holds: witness.is_none(), checked: kn.size(), witness })
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointCheck {
    pub holds: bool,
    /// Induced action on `Spec(kⁿ)`, as a permutation of prime indices.
    pub permutation: Vec<usize>,
    pub cycle_type: Vec<usize>,
    pub fixed_points: Vec<usize>,
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            lengths.push(len);
        }
    }
    lengths.sort_unstable();
    lengths
}

/// Computes `Spec(ρ)` on the `n` primes of `kⁿ` and checks that it has no
/// fixed point and the cycle type of `π`.
pub fn verify_fixed_point_free(s: &MoritaScenario, budget: &Budget) -> Result<FixedPointCheck> {
    if s.n < 2 {
        return Err(Error::Inapplicable(format!("n = {}: Spec of k has a single point", s.n)));
    }
    let sp = spec(&s.kn, budget)?;
    if sp.primes().len() != s.n {
        return Err(Error::Definition(format!("expected {} primes of k^n, found {}", s.n, sp.primes().len())));
    }
    let permutation = spec_map(&s.rho, &sp, &sp)?;
    let fixed_points: Vec<usize> = (0..permutation.len()).filter(|&i| permutation[i] == i).collect();
    let ct = cycle_type(&permutation);
    let holds = fixed_points.is_empty() && ct == cycle_type(&s.pi);
    Ok(FixedPointCheck { holds, permutation, cycle_type: ct, fixed_points })
}

#[derive(Clone, Debug, Serialize)]
pub struct ContradictionChain {
    pub corner: CornerCheck,
    pub fixed_points: FixedPointCheck,
    pub steps: Vec<String>,
}

/// Both computed premises, followed by the deduction they support. The
/// quantification over all functors is stated, not mechanized.
pub fn derive_contradiction(s: &MoritaScenario, budget: &Budget) -> Result<ContradictionChain> {
    let fixed_points = verify_fixed_point_free(s, budget)?;
    let corner = verify_corner_commutation(s)?;
    if !corner.holds {
        return Err(Error::UnverifiedPremise(format!("iota∘rho = sigma∘iota fails at {:?}", corner.witness)));
    }
    if !fixed_points.holds {
        return Err(Error::UnverifiedPremise(format!(
            "Spec(rho) has fixed points {:?} or cycle type {:?}",
            fixed_points.fixed_points, fixed_points.cycle_type
        )));
    }
    let k = s.field.label();
    let n = s.n;
    let steps = vec![
        format!("verified: iota∘rho = sigma∘iota as maps {k}^{n} -> M{n}({k}), checked on all {} elements", corner.checked),
        format!("verified: Spec(rho) permutes the {n} points of Spec({k}^{n}) with cycle type {:?} and no fixed point", fixed_points.cycle_type),
        format!("let F be contravariant, agree with Spec on commutative rings, and send inner automorphisms to the identity; then F(rho)∘F(iota) = F(iota)"),
        format!("if F(M{n}({k})) were a single point x, F(iota)(x) would be a fixed point of Spec(rho)"),
        format!("no fixed point exists, so F(M{n}({k})) is empty"),
    ];
    Ok(ContradictionChain { corner, fixed_points, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_gf, make_zmod};

    fn f(p: usize, k: u32) -> Arc<RingTable> {
        Arc::new(make_gf(p, k).unwrap())
    }

    #[test]
    fn corner_commutes_and_spec_is_cyclic() {
        for (field, n) in [(f(2, 1), 2), (f(3, 1), 3), (f(2, 2), 2)] {
            let s = MoritaScenario::new(&field, n).unwrap();
            s.check_invariants().unwrap();
            assert!(verify_corner_commutation(&s).unwrap().holds);
            let fp = verify_fixed_point_free(&s, &Budget::unlimited()).unwrap();
            assert!(fp.holds);
            assert_eq!(fp.cycle_type, vec![n]);
        }
    }

    #[test]
    fn five_cycle() {
        let s = MoritaScenario::new(&f(2, 1), 5).unwrap();
        let fp = verify_fixed_point_free(&s, &Budget::unlimited()).unwrap();
        assert_eq!(fp.cycle_type, vec![5]);
    }

    #[test]
    fn n_one_is_inapplicable() {
        let s = MoritaScenario::new(&f(2, 1), 1).unwrap();
        assert!(matches!(verify_fixed_point_free(&s, &Budget::unlimited()), Err(Error::Inapplicable(_))));
        assert!(matches!(derive_contradiction(&s, &Budget::unlimited()), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn non_permutation_conjugator_fails() {
        let k = f(2, 1);
        let s = MoritaScenario::new(&k, 2).unwrap();
        // unipotent [[1,1],[0,1]] is its own inverse over F2
        let u = vec![1, 1, 0, 1];
        let check = verify_corner_commutation_with(&s, &u, &u).unwrap();
        assert!(!check.holds);
        assert!(check.witness.is_some());
    }

    #[test]
    fn every_derangement_of_three_points() {
        let k = f(3, 1);
        for pi in [vec![1, 2, 0], vec![2, 0, 1]] {
            let s = MoritaScenario::with_permutation(&k, pi).unwrap();
            assert!(verify_corner_commutation(&s).unwrap().holds);
            assert!(verify_fixed_point_free(&s, &Budget::unlimited()).unwrap().holds);
        }
    }

    #[test]
    fn rejects_non_fields() {
        assert!(MoritaScenario::new(&Arc::new(make_zmod(4).unwrap()), 2).is_err());
    }
}
