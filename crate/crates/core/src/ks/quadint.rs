use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b·√2` with exact integer coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("quadratic integer coefficient overflow")
}

/// Nearest integer to `p / n`, ties rounded up.
fn round_div(p: i128, n: i128) -> i128 {
    let (p, n) = if n < 0 { (-p, -n) } else { (p, n) };
    (2 * p + n).div_euclid(2 * n)
}

impl QuadInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const SQRT2: Self = Self { a: 0, b: 1 };
    /// Fundamental unit `1 + √2` and its inverse `-1 + √2`.
    pub const EPS: Self = Self { a: 1, b: 1 };
    pub const EPS_INV: Self = Self { a: -1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conj(self) -> Self {
        Self::new(self.a, -self.b)
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a - 2 * b * b
    }

    /// Sign of the real number `a + b√2`.
    pub fn signum(self) -> i32 {
        let (a, b) = (self.a as i128, self.b as i128);
        match (a.signum(), b.signum()) {
            (0, 0) => 0,
            (sa, sb) if sa >= 0 && sb >= 0 => 1,
            (sa, sb) if sa <= 0 && sb <= 0 => -1,
            (1, _) => if a * a > 2 * b * b { 1 } else { -1 },
            _ => if 2 * b * b > a * a { 1 } else { -1 },
        }
    }

    /// `|x| ≥ |x'|` where `x'` is the Galois conjugate; equivalent to `ab ≥ 0`.
    fn dominates_conjugate(self) -> bool {
        (self.a as i128) * (self.b as i128) >= 0
    }

    /// Quotient rounded coefficientwise; the remainder has smaller |norm|.
    pub fn div_round(self, d: Self) -> Self {
        let n = d.norm();
        assert!(n != 0, "division by zero");
        let num = self * d.conj();
        Self::new(narrow(round_div(num.a as i128, n)), narrow(round_div(num.b as i128, n)))
    }

    pub fn div_exact(self, d: Self) -> Option<Self> {
        let q = self.div_round(d);
        (q * d == self).then_some(q)
    }

    pub fn rem_round(self, d: Self) -> Self {
        self - self.div_round(d) * d
    }

    /// Euclidean gcd, defined up to a unit.
    pub fn gcd(mut x: Self, mut y: Self) -> Self {
        while !y.is_zero() {
            let r = x.rem_round(y);
            x = y;
            y = r;
        }
        x
    }

    /// Unit `u` such that `self · u` lies in the fundamental domain
    /// `1 ≤ |z/z'| < (1+√2)²` of the unit group acting on nonzero elements.
    pub fn normalizing_unit(self) -> Self {
        assert!(!self.is_zero());
        let mut z = self;
        let mut u = Self::ONE;
        loop {
            if !z.dominates_conjugate() {
                z = z * Self::EPS;
                u = u * Self::EPS;
            } else if (z * Self::EPS_INV).dominates_conjugate() {
                z = z * Self::EPS_INV;
                u = u * Self::EPS_INV;
            } else {
                return u;
            }
        }
    }
}

impl Add for QuadInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QuadInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QuadInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for QuadInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, a2, b2) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        Self::new(narrow(a1 * a2 + 2 * b1 * b2), narrow(a1 * b2 + a2 * b1))
    }
}

impl From<i64> for QuadInt {
    fn from(a: i64) -> Self {
        Self::new(a, 0)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "√2"),
            (0, -1) => write!(f, "-√2"),
            (0, b) => write!(f, "{b}√2"),
            (a, b) if b < 0 => write!(f, "{a}-{}√2", -b),
            (a, b) => write!(f, "{a}+{b}√2"),
        }
    }
}
