use std::collections::BTreeSet;

use super::quadint::QuadInt;
use super::ray::{dot, Ray};
use crate::error::{Error, Result};

/// Rays in a fixed dimension with every complete orthogonal basis among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaySystem {
    dim: usize,
    rays: Vec<Ray>,
    bases: Vec<Vec<usize>>,
}

impl RaySystem {
    /// Sorts and deduplicates `rays` and extracts all bases. Also returns the
    /// number of duplicates dropped.
    pub fn new(dim: usize, mut rays: Vec<Ray>) -> Result<(Self, usize)> {
        if dim < 3 {
            return Err(Error::Definition(format!("ray systems need dimension at least 3, got {dim}")));
        }
        if let Some(r) = rays.iter().find(|r| r.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: r.dim() });
        }
        let before = rays.len();
        rays.sort();
        rays.dedup();
        let duplicates = before - rays.len();
        let bases = extract_bases(&rays, dim)?;
        Ok((Self { dim, rays, bases }, duplicates))
    }

    /// The `d` coordinate axes.
    pub fn axes(dim: usize) -> Result<Self> {
        Ok(Self::new(dim, (0..dim).map(|i| Ray::axis(dim, i)).collect())?.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn index_of(&self, ray: &Ray) -> Option<usize> {
        self.rays.binary_search(ray).ok()
    }

    /// Replaces the basis list, for exercising the completeness check.
    pub fn with_bases(mut self, bases: Vec<Vec<usize>>) -> Self {
        self.bases = bases;
        self
    }

    /// Whether the stored basis list is exactly the extracted one.
    pub fn bases_complete(&self) -> Result<bool> {
        Ok(extract_bases(&self.rays, self.dim)? == self.bases)
    }

    /// Every listed basis is pairwise orthogonal, and its Gram matrix is
    /// diagonal with positive entries, so it spans.
    pub fn verify_bases(&self) -> Result<bool> {
        for basis in &self.bases {
            if basis.len() != self.dim {
                return Ok(false);
            }
            for (i, &x) in basis.iter().enumerate() {
                if dot(&self.rays[x], &self.rays[x])?.signum() <= 0 {
                    return Ok(false);
                }
                for &y in &basis[i + 1..] {
                    if !dot(&self.rays[x], &self.rays[y])?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// All `d`-subsets of pairwise orthogonal rays, each sorted, in
/// lexicographic order. Pairwise orthogonal nonzero real vectors are
/// linearly independent, so every clique found is a basis.
pub fn extract_bases(rays: &[Ray], dim: usize) -> Result<Vec<Vec<usize>>> {
    let n = rays.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let o = dot(&rays[i], &rays[j])?.is_zero();
            adj[i][j] = o;
            adj[j][i] = o;
        }
    }
    let mut out = Vec::new();
    let mut clique = Vec::with_capacity(dim);
    fn grow(adj: &[Vec<bool>], dim: usize, start: usize, clique: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if clique.len() == dim {
            out.push(clique.clone());
            return;
        }
        for v in start..adj.len() {
            if clique.iter().all(|&u| adj[u][v]) {
                clique.push(v);
                grow(adj, dim, v + 1, clique, out);
                clique.pop();
            }
        }
    }
    grow(&adj, dim, 0, &mut clique, &mut out);
    Ok(out)
}

/// Peres' 33 rays: every vector in dimension 3 whose squared coordinates
/// form one of the multisets {1,0,0}, {1,1,0}, {0,1,2}, {1,1,2}.
pub fn generate_peres() -> RaySystem {
    let values = [QuadInt::ZERO, QuadInt::ONE, -QuadInt::ONE, QuadInt::SQRT2, -QuadInt::SQRT2];
    let square = |q: QuadInt| (q * q).a;
    let classes: [[i64; 3]; 4] = [[0, 0, 1], [0, 1, 1], [0, 1, 2], [1, 1, 2]];
    let mut rays = BTreeSet::new();
    for &x in &values {
        for &y in &values {
            for &z in &values {
                let mut sq = [square(x), square(y), square(z)];
                sq.sort();
                if classes.contains(&sq) {
                    rays.insert(Ray::new(vec![x, y, z]).expect("nonzero"));
                }
            }
        }
    }
    RaySystem::new(3, rays.into_iter().collect()).expect("valid rays").0
}

/// Sorted squared-coordinate multiset of a ray, used to classify Peres rays.
pub fn squared_profile(ray: &Ray) -> Vec<i64> {
    let mut sq: Vec<i64> = ray.coords().iter().map(|&c| (c * c).a).collect();
    sq.sort();
    sq
}

/// Embeds a 3-dimensional system into the overlapping coordinate slices
/// `{i, i+1, i+2}` of `n`-space, together with all `n` axes. Each embedded
/// basis completed by the axes outside its slice is a basis of the result,
/// as is the standard basis; the returned system carries every basis among
/// its rays, which includes all of these.
pub fn lift_to_dimension(sys: &RaySystem, n: usize) -> Result<RaySystem> {
    if sys.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: sys.dim() });
    }
    if n < 4 {
        return Err(Error::Definition(format!("lift target dimension must be at least 4, got {n}")));
    }
    let mut rays: Vec<Ray> = (0..n).map(|i| Ray::axis(n, i)).collect();
    for offset in 0..=n - 3 {
        rays.extend(sys.rays().iter().map(|r| r.embed(n, offset)));
    }
    let (lifted, _) = RaySystem::new(n, rays)?;

    let mut standard: Vec<usize> = (0..n).map(|i| lifted.index_of(&Ray::axis(n, i)).expect("axis present")).collect();
    standard.sort();
    let mut expected = vec![standard];
    for offset in 0..=n - 3 {
        for basis in sys.bases() {
            let mut b: Vec<usize> = basis
                .iter()
                .map(|&r| lifted.index_of(&sys.rays()[r].embed(n, offset)).expect("embedded ray present"))
                .collect();
            b.extend(
                (0..n)
                    .filter(|i| !(offset..offset + 3).contains(i))
                    .map(|i| lifted.index_of(&Ray::axis(n, i)).expect("axis present")),
            );
            b.sort();
            expected.push(b);
        }
    }
    let listed: BTreeSet<&Vec<usize>> = lifted.bases().iter().collect();
    if let Some(b) = expected.iter().find(|b| !listed.contains(b)) {
        return Err(Error::IncompleteBases(format!("lifted basis {b:?} was not extracted")));
    }
    Ok(lifted)
}
