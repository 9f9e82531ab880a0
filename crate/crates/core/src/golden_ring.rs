//! Exact arithmetic in the golden integers `Z[τ]` and the decagonal ring `Z[ζ]`.
//!
//! `ζ = exp(2πi/10)` and the star map is the Galois automorphism `ζ ↦ ζ³`,
//! which restricts to `τ ↦ 1 − τ` on `Z[τ]`. Elements are stored as integer
//! coordinates; floating point only appears when a value is embedded.
//!
//! Every plane point of `Z[ζ]` (and of its star image) has the exact form
//! `(X / 2, sin 36° · Y)` with `X, Y ∈ Z[τ]`. [`GoldenPoint`] carries that form,
//! which lets radii, angles and window gauges be compared without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix4;

use crate::error::{QcError, Result};
use crate::geometry::Point;

/// The golden ratio, positive root of `x² = x + 1`.
pub const TAU: f64 = 1.618_033_988_749_895;

/// `sin 36°`.
pub const SIN36: f64 = 0.587_785_252_292_473_1;

/// An element `a + bτ` of `Z[τ]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };
    pub const TAU: GoldenInt = GoldenInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        GoldenInt { a, b }
    }

    /// `a + bτ` as a real number.
    pub fn value(self) -> f64 {
        self.a as f64 + self.b as f64 * TAU
    }

    /// Star image `a + b(1 − τ)` as a real number.
    pub fn star(self) -> f64 {
        self.a as f64 + self.b as f64 * (1.0 - TAU)
    }

    /// The star conjugate as a ring element: `a + b(1−τ) = (a + b) − bτ`.
    pub fn conjugate(self) -> Result<Self> {
        let a = self.a.checked_add(self.b).ok_or(QcError::Overflow("conjugate"))?;
        let b = self.b.checked_neg().ok_or(QcError::Overflow("conjugate"))?;
        Ok(GoldenInt { a, b })
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(GoldenInt {
            a: self.a.checked_add(rhs.a).ok_or(QcError::Overflow("golden add"))?,
            b: self.b.checked_add(rhs.b).ok_or(QcError::Overflow("golden add"))?,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(GoldenInt {
            a: self.a.checked_sub(rhs.a).ok_or(QcError::Overflow("golden sub"))?,
            b: self.b.checked_sub(rhs.b).ok_or(QcError::Overflow("golden sub"))?,
        })
    }

    /// `(a₁ + b₁τ)(a₂ + b₂τ) = (a₁a₂ + b₁b₂) + (a₁b₂ + a₂b₁ + b₁b₂)τ`, using `τ² = τ + 1`.
    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let ovf = || QcError::Overflow("golden mul");
        let bb = self.b.checked_mul(rhs.b).ok_or_else(ovf)?;
        let a = self.a.checked_mul(rhs.a).and_then(|x| x.checked_add(bb)).ok_or_else(ovf)?;
        let b = self
            .a
            .checked_mul(rhs.b)
            .and_then(|x| x.checked_add(rhs.a.checked_mul(self.b)?))
            .and_then(|x| x.checked_add(bb))
            .ok_or_else(ovf)?;
        Ok(GoldenInt { a, b })
    }

    pub fn checked_scale(self, k: i64) -> Result<Self> {
        Ok(GoldenInt {
            a: self.a.checked_mul(k).ok_or(QcError::Overflow("golden scale"))?,
            b: self.b.checked_mul(k).ok_or(QcError::Overflow("golden scale"))?,
        })
    }

    /// Field norm `(a + bτ)(a + b(1−τ)) = a² + ab − b²`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a + a * b - b * b
    }

    /// Exact sign of `a + bτ`.
    pub fn signum(self) -> Ordering {
        // 2(a + bτ) = (2a + b) + b√5
        let p = 2 * self.a as i128 + self.b as i128;
        let q = self.b as i128;
        sign_of_sum_with_sqrt5(p, q)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// Sign of `p + q√5`.
fn sign_of_sum_with_sqrt5(p: i128, q: i128) -> Ordering {
    match (p.cmp(&0), q.cmp(&0)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => (p * p).cmp(&(5 * q * q)),
        (Ordering::Less, Ordering::Greater) => (5 * q * q).cmp(&(p * p)),
    }
}

impl PartialOrd for GoldenInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by real value, exactly.
impl Ord for GoldenInt {
    fn cmp(&self, other: &Self) -> Ordering {
        let p = 2 * (self.a as i128 - other.a as i128) + (self.b as i128 - other.b as i128);
        let q = self.b as i128 - other.b as i128;
        sign_of_sum_with_sqrt5(p, q)
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}τ", self.a, self.b)
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("golden integer overflow")
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("golden integer overflow")
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("golden integer overflow")
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> Self {
        GoldenInt::ZERO - self
    }
}

/// A plane point in the exact form `(x2 / 2, sin 36° · ys)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GoldenPoint {
    pub x2: GoldenInt,
    pub ys: GoldenInt,
}

impl GoldenPoint {
    pub fn to_point(self) -> Point {
        Point::new(0.5 * self.x2.value(), SIN36 * self.ys.value())
    }

    /// `4|p|² = x2² + (3 − τ)·ys²`, since `sin² 36° = (3 − τ)/4`.
    pub fn norm4(self) -> GoldenInt {
        let three_minus_tau = GoldenInt::new(3, -1);
        self.x2 * self.x2 + three_minus_tau * self.ys * self.ys
    }

    /// Exact sign of the cross product `self × other`.
    pub fn cross_sign(self, other: GoldenPoint) -> Ordering {
        // (x2/2)(s·ys') − (s·ys)(x2'/2) = (s/2)(x2·ys' − ys·x2')
        (self.x2 * other.ys - self.ys * other.x2).signum()
    }

    /// True when the point lies in the half-turn `[0, π)` of polar angle.
    pub fn in_upper_half(self) -> bool {
        match self.ys.signum() {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.x2.signum() == Ordering::Greater,
        }
    }

    /// Compares polar angles in `[0, 2π)` exactly. The origin sorts first.
    pub fn cmp_angle(self, other: GoldenPoint) -> Ordering {
        let zero_a = self.x2.is_zero() && self.ys.is_zero();
        let zero_b = other.x2.is_zero() && other.ys.is_zero();
        match (zero_a, zero_b) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match (self.in_upper_half(), other.in_upper_half()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            // same half-turn: a precedes b iff a × b > 0
            _ => other.cross_sign(self),
        }
    }

    /// Lexicographic (x, y) comparison.
    pub fn cmp_lex(self, other: GoldenPoint) -> Ordering {
        self.x2.cmp(&other.x2).then(self.ys.cmp(&other.ys))
    }
}

/// An element `Σ n_k ζ^k` (k = 0..3) of the decagonal ring `Z[ζ]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloInt(pub [i64; 4]);

impl CycloInt {
    pub const ZERO: CycloInt = CycloInt([0; 4]);

    pub const fn new(n: [i64; 4]) -> Self {
        CycloInt(n)
    }

    /// Reduces `Σ c_k ζ^k` of any length with `ζ⁴ = ζ³ − ζ² + ζ − 1`.
    pub fn from_unreduced(coeffs: &[i64]) -> Result<Self> {
        let ovf = || QcError::Overflow("cyclotomic reduction");
        let mut c: Vec<i64> = coeffs.to_vec();
        if c.len() < 4 {
            c.resize(4, 0);
        }
        for k in (4..c.len()).rev() {
            let v = c[k];
            if v == 0 {
                continue;
            }
            c[k] = 0;
            c[k - 1] = c[k - 1].checked_add(v).ok_or_else(ovf)?;
            c[k - 2] = c[k - 2].checked_sub(v).ok_or_else(ovf)?;
            c[k - 3] = c[k - 3].checked_add(v).ok_or_else(ovf)?;
            c[k - 4] = c[k - 4].checked_sub(v).ok_or_else(ovf)?;
        }
        Ok(CycloInt([c[0], c[1], c[2], c[3]]))
    }

    /// `ζ^j` for any integer `j`.
    pub fn zeta_pow(j: i64) -> Self {
        let j = j.rem_euclid(10) as usize;
        let mut c = [0i64; 10];
        c[j] = 1;
        CycloInt::from_unreduced(&c).expect("small coefficients")
    }

    pub fn coeffs(self) -> [i64; 4] {
        self.0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let mut out = [0i64; 4];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.0[k].checked_add(rhs.0[k]).ok_or(QcError::Overflow("cyclotomic add"))?;
        }
        Ok(CycloInt(out))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let mut prod = [0i64; 7];
        for i in 0..4 {
            for j in 0..4 {
                let t = self.0[i].checked_mul(rhs.0[j]).ok_or(QcError::Overflow("cyclotomic mul"))?;
                prod[i + j] = prod[i + j].checked_add(t).ok_or(QcError::Overflow("cyclotomic mul"))?;
            }
        }
        CycloInt::from_unreduced(&prod)
    }

    /// Exact form of the embedding `Σ n_k ζ^k`.
    pub fn embed_exact(self) -> GoldenPoint {
        let [n0, n1, n2, n3] = self.0;
        GoldenPoint {
            x2: GoldenInt::new(2 * n0 - n2 + n3, n1 + n2 - n3),
            ys: GoldenInt::new(n1, n2 + n3),
        }
    }

    /// Exact form of the star image `Σ n_k ζ^{3k}`.
    pub fn star_exact(self) -> GoldenPoint {
        let [n0, n1, n2, n3] = self.0;
        GoldenPoint {
            x2: GoldenInt::new(2 * n0 + n1, -n1 - n2 + n3),
            ys: GoldenInt::new(-n2 - n3, n1),
        }
    }

    pub fn embed(self) -> Point {
        self.embed_exact().to_point()
    }

    pub fn star(self) -> Point {
        self.star_exact().to_point()
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// The real 4×4 matrix sending a coefficient vector to `(embed, star)`, and its inverse.
#[derive(Clone, Debug)]
pub struct EmbeddingMatrix {
    pub forward: Matrix4<f64>,
    pub inverse: Matrix4<f64>,
}

impl EmbeddingMatrix {
    pub fn new() -> Self {
        let angle = std::f64::consts::TAU / 10.0;
        let forward = Matrix4::from_fn(|row, k| {
            let k = k as f64;
            match row {
                0 => (angle * k).cos(),
                1 => (angle * k).sin(),
                2 => (3.0 * angle * k).cos(),
                _ => (3.0 * angle * k).sin(),
            }
        });
        let inverse = forward.try_inverse().expect("embedding matrix is invertible");
        EmbeddingMatrix { forward, inverse }
    }

    pub fn determinant(&self) -> f64 {
        self.forward.determinant()
    }

    pub fn apply(&self, n: [i64; 4]) -> [f64; 4] {
        let v = self.forward * nalgebra::Vector4::new(n[0] as f64, n[1] as f64, n[2] as f64, n[3] as f64);
        [v[0], v[1], v[2], v[3]]
    }
}

impl Default for EmbeddingMatrix {
    fn default() -> Self {
        Self::new()
    }
}
