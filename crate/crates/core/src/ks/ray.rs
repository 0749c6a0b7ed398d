use std::fmt;

use super::quadint::QuadInt;
use crate::error::{Error, Result};

/// A line through the origin in `Z[√2]^d`, stored in canonical form:
/// coordinates share no common non-unit factor, and the first nonzero
/// coordinate is positive and lies in the unit group's fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray {
    coords: Vec<QuadInt>,
}

impl Ray {
    pub fn new(coords: Vec<QuadInt>) -> Result<Self> {
        canonicalize(&coords)
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        canonicalize(&coords.iter().map(|&a| QuadInt::from(a)).collect::<Vec<_>>())
    }

    pub fn axis(dim: usize, i: usize) -> Self {
        let mut coords = vec![QuadInt::ZERO; dim];
        coords[i] = QuadInt::ONE;
        Self { coords }
    }

    pub fn coords(&self) -> &[QuadInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Zero-pads into `dim` coordinates starting at `offset`. Canonical form
    /// is preserved, since padding changes neither the gcd nor the leading
    /// coordinate.
    pub fn embed(&self, dim: usize, offset: usize) -> Self {
        let mut coords = vec![QuadInt::ZERO; dim];
        coords[offset..offset + self.dim()].copy_from_slice(&self.coords);
        Self { coords }
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn canonicalize(coords: &[QuadInt]) -> Result<Ray> {
    let lead = *coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroRay)?;
    let g = coords.iter().fold(QuadInt::ZERO, |g, &c| QuadInt::gcd(g, c));
    let lead = lead.div_exact(g).expect("gcd divides every coordinate");
    let mut unit = lead.normalizing_unit();
    if (lead * unit).signum() < 0 {
        unit = -unit;
    }
    let coords = coords
        .iter()
        .map(|&c| c.div_exact(g).expect("gcd divides every coordinate") * unit)
        .collect();
    Ok(Ray { coords })
}

pub fn dot(r: &Ray, s: &Ray) -> Result<QuadInt> {
    if r.dim() != s.dim() {
        return Err(Error::DimensionMismatch { expected: r.dim(), got: s.dim() });
    }
    Ok(r.coords.iter().zip(&s.coords).fold(QuadInt::ZERO, |acc, (&x, &y)| acc + x * y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b)
    }

    #[test]
    fn spec_style_examples() {
        assert_eq!(Ray::from_ints(&[-1, 0, 0]).unwrap(), Ray::from_ints(&[1, 0, 0]).unwrap());
        assert_eq!(Ray::new(vec![q(0, 1), q(0, 1), q(0, 0)]).unwrap(), Ray::from_ints(&[1, 1, 0]).unwrap());
        assert_eq!(
            Ray::new(vec![q(0, 0), q(0, 1), q(2, 0)]).unwrap().coords(),
            &[q(0, 0), q(1, 0), q(0, 1)]
        );
    }

    #[test]
    fn unit_multiples_collapse() {
        let r = Ray::new(vec![q(1, 0), q(0, 1), q(1, 0)]).unwrap();
        let scaled = Ray::new(vec![q(1, 1), q(2, 1), q(1, 1)]).unwrap();
        assert_eq!(r, scaled);
        let neg = Ray::new(vec![q(-1, 1), q(2, -1), q(-1, 1)]).unwrap();
        assert_eq!(r, neg);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(Ray::from_ints(&[0, 0, 0]), Err(Error::ZeroRay)));
    }

    #[test]
    fn dots() {
        let a = Ray::from_ints(&[1, 1, 0]).unwrap();
        let b = Ray::from_ints(&[1, -1, 0]).unwrap();
        assert!(dot(&a, &b).unwrap().is_zero());
        let c = Ray::new(vec![q(1, 0), q(1, 0), q(0, 1)]).unwrap();
        assert_eq!(dot(&c, &c).unwrap(), q(4, 0));
        assert!(dot(&a, &Ray::axis(4, 0)).is_err());
    }
}
