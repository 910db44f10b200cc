//! Exact arithmetic in the coefficient rings Z, Z[√2] and Z[φ], φ = (1+√5)/2,
//! and in their fraction fields.
//!
//! All three rings are norm-Euclidean with class number one, which the rest of
//! the crate leans on: ideals of the coefficient ring are represented by a
//! single canonical generator, gcds are computed by the Euclidean algorithm,
//! and positivity questions (needed for totally definite quaternion algebras)
//! are decided by exact integer comparisons instead of floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Coefficient ring selector.  `w` in literals denotes √2 or φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// Z, fraction field Q.
    Rational,
    /// Z[√2], w² = 2.
    Sqrt2,
    /// Z[φ], w² = w + 1.
    Phi,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Rational => "rational",
            Ring::Sqrt2 => "sqrt2",
            Ring::Phi => "phi",
        }
    }

    pub fn from_name(s: &str) -> Option<Ring> {
        match s {
            "rational" | "q" | "Q" => Some(Ring::Rational),
            "sqrt2" => Some(Ring::Sqrt2),
            "phi" | "golden" => Some(Ring::Phi),
            _ => None,
        }
    }

    /// Degree of the fraction field over Q.
    pub fn degree(self) -> u32 {
        match self {
            Ring::Rational => 1,
            _ => 2,
        }
    }

    /// Fundamental unit (norm -1 in both quadratic cases).
    pub fn fundamental_unit(self) -> Option<RingElem> {
        match self {
            Ring::Rational => None,
            Ring::Sqrt2 => Some(RingElem::from_i64(self, 1, 1)),
            Ring::Phi => Some(RingElem::from_i64(self, 0, 1)),
        }
    }

    fn fundamental_unit_inv(self) -> Option<RingElem> {
        match self {
            Ring::Rational => None,
            // (1+√2)(-1+√2) = 1, φ(φ-1) = 1
            Ring::Sqrt2 => Some(RingElem::from_i64(self, -1, 1)),
            Ring::Phi => Some(RingElem::from_i64(self, -1, 1)),
        }
    }
}

/// An element a + b·w of the selected ring (b = 0 over Z).
///
/// The derived `Ord` is structural (used for deterministic sorting and set
/// membership), not the order of the real embedding; use [`RingElem::cmp_embed`]
/// for the latter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    pub ring: Ring,
    pub a: BigInt,
    pub b: BigInt,
}

impl RingElem {
    pub fn new(ring: Ring, a: BigInt, b: BigInt) -> Self {
        if ring == Ring::Rational {
            assert!(b.is_zero(), "rational ring element with nonzero w part");
        }
        RingElem { ring, a, b }
    }

    pub fn from_i64(ring: Ring, a: i64, b: i64) -> Self {
        Self::new(ring, BigInt::from(a), BigInt::from(b))
    }

    pub fn zero(ring: Ring) -> Self {
        Self::from_i64(ring, 0, 0)
    }

    pub fn one(ring: Ring) -> Self {
        Self::from_i64(ring, 1, 0)
    }

    pub fn int(ring: Ring, n: i64) -> Self {
        Self::from_i64(ring, n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check_ring(&self, other: &RingElem) {
        assert_eq!(self.ring, other.ring, "mixed coefficient rings");
    }

    pub fn neg(&self) -> RingElem {
        RingElem::new(self.ring, -&self.a, -&self.b)
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.check_ring(other);
        RingElem::new(self.ring, &self.a + &other.a, &self.b + &other.b)
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.check_ring(other);
        RingElem::new(self.ring, &self.a - &other.a, &self.b - &other.b)
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.check_ring(other);
        let (x1, x2, y1, y2) = (&self.a, &self.b, &other.a, &other.b);
        match self.ring {
            Ring::Rational => RingElem::new(self.ring, x1 * y1, BigInt::zero()),
            // (a+b√2)(c+d√2) = ac+2bd + (ad+bc)√2
            Ring::Sqrt2 => RingElem::new(
                self.ring,
                x1 * y1 + 2 * (x2 * y2),
                x1 * y2 + x2 * y1,
            ),
            // (a+bφ)(c+dφ) = ac+bd + (ad+bc+bd)φ
            Ring::Phi => RingElem::new(
                self.ring,
                x1 * y1 + x2 * y2,
                x1 * y2 + x2 * y1 + x2 * y2,
            ),
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> RingElem {
        RingElem::new(self.ring, &self.a * n, &self.b * n)
    }

    /// Galois conjugate: √2 ↦ -√2, φ ↦ 1-φ.
    pub fn conj(&self) -> RingElem {
        match self.ring {
            Ring::Rational => self.clone(),
            Ring::Sqrt2 => RingElem::new(self.ring, self.a.clone(), -&self.b),
            Ring::Phi => RingElem::new(self.ring, &self.a + &self.b, -&self.b),
        }
    }

    /// Field norm to Q (integer-valued on the ring).
    pub fn norm(&self) -> BigInt {
        match self.ring {
            Ring::Rational => self.a.clone(),
            Ring::Sqrt2 => &self.a * &self.a - 2 * (&self.b * &self.b),
            Ring::Phi => &self.a * &self.a + &self.a * &self.b - &self.b * &self.b,
        }
    }

    /// Field trace to Q.
    pub fn trace(&self) -> BigInt {
        match self.ring {
            Ring::Rational => self.a.clone(),
            Ring::Sqrt2 => 2 * &self.a,
            Ring::Phi => 2 * &self.a + &self.b,
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.norm().abs().is_one()
    }

    /// Doubled coordinates (u, v, d) with value = (u + v√d)/2, for exact sign
    /// tests in the real embeddings.
    fn doubled(&self) -> (BigInt, BigInt, i64) {
        match self.ring {
            Ring::Rational => (2 * &self.a, BigInt::zero(), 1),
            Ring::Sqrt2 => (2 * &self.a, 2 * &self.b, 2),
            Ring::Phi => (2 * &self.a + &self.b, self.b.clone(), 5),
        }
    }

    /// Sign of the element under the embedding sending w to +√2 resp. +φ.
    pub fn sign_first(&self) -> i32 {
        let (u, v, d) = self.doubled();
        sign_u_plus_v_sqrt_d(&u, &v, d)
    }

    /// Sign under the other real embedding (w ↦ -√2 resp. 1-φ).
    pub fn sign_second(&self) -> i32 {
        self.conj().sign_first()
    }

    pub fn is_totally_positive(&self) -> bool {
        self.sign_first() > 0 && self.sign_second() > 0
    }

    /// Gcd of the integer coordinates; the largest rational integer dividing
    /// the element exactly.
    pub fn int_content(&self) -> BigInt {
        use num_integer::Integer;
        self.a.gcd(&self.b)
    }

    /// Cofactor pair (c, n) with self·c = n, n a nonzero rational integer:
    /// (conj, norm) in the quadratic rings, (1, a) over Z.
    fn cofactor(&self) -> (RingElem, BigInt) {
        match self.ring {
            Ring::Rational => (RingElem::one(self.ring), self.a.clone()),
            _ => (self.conj(), self.norm()),
        }
    }

    /// Euclidean division x = q·y + r with |Nm(r)| < |Nm(y)|, by rounding the
    /// field quotient coordinatewise to the nearest integer (works because all
    /// three rings are norm-Euclidean).  The remainder depends only on the
    /// residue class of x modulo yR.
    pub fn euclidean_div(&self, y: &RingElem) -> (RingElem, RingElem) {
        assert!(!y.is_zero(), "euclidean division by zero");
        let (c, n) = y.cofactor();
        let z = self.mul(&c);
        let q = RingElem::new(self.ring, round_div(&z.a, &n), round_div(&z.b, &n));
        let r = self.sub(&q.mul(y));
        (q, r)
    }

    /// Exact quotient x / y in the ring, or None if y does not divide x.
    pub fn exact_div(&self, y: &RingElem) -> Option<RingElem> {
        assert!(!y.is_zero(), "division by zero");
        let (c, n) = y.cofactor();
        let z = self.mul(&c);
        let (qa, ra) = num_integer::div_rem(z.a.clone(), n.clone());
        let (qb, rb) = num_integer::div_rem(z.b.clone(), n.clone());
        if ra.is_zero() && rb.is_zero() {
            Some(RingElem::new(self.ring, qa, qb))
        } else {
            None
        }
    }

    pub fn divides(&self, x: &RingElem) -> bool {
        x.exact_div(self).is_some()
    }

    /// Largest n with dⁿ | x (d a non-unit, x nonzero).
    pub fn valuation(&self, d: &RingElem) -> u32 {
        assert!(!self.is_zero(), "valuation of zero");
        assert!(!d.is_unit() && !d.is_zero(), "valuation base must be a non-unit");
        let mut v = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.exact_div(d) {
            cur = next;
            v += 1;
        }
        v
    }

    pub fn pow(&self, mut e: u32) -> RingElem {
        let mut base = self.clone();
        let mut acc = RingElem::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Extended gcd: returns (g, u, v) with g = u·x + v·y and g the canonical
    /// generator of the ideal (x, y).
    pub fn egcd(&self, y: &RingElem) -> (RingElem, RingElem, RingElem) {
        self.check_ring(y);
        let ring = self.ring;
        let (mut r0, mut r1) = (self.clone(), y.clone());
        let (mut u0, mut u1) = (RingElem::one(ring), RingElem::zero(ring));
        let (mut v0, mut v1) = (RingElem::zero(ring), RingElem::one(ring));
        while !r1.is_zero() {
            let (q, r) = r0.euclidean_div(&r1);
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        let (g, w) = r0.canonical_associate_with_unit();
        (g, u0.mul(&w), v0.mul(&w))
    }

    pub fn gcd(&self, y: &RingElem) -> RingElem {
        self.egcd(y).0
    }

    pub fn lcm(&self, y: &RingElem) -> RingElem {
        if self.is_zero() || y.is_zero() {
            return RingElem::zero(self.ring);
        }
        let g = self.gcd(y);
        self.mul(y).exact_div(&g).unwrap().canonical_associate()
    }

    /// Canonical representative of the associate class, together with the unit
    /// u such that canonical = u·x.
    ///
    /// Over Z the representative is |x|.  In the quadratic rings the unit power
    /// is fixed by balancing the two real embeddings — the representative is
    /// the unique associate (up to sign) with 1 ≤ |x₁/x₂| < ε² for the
    /// fundamental unit ε — and the sign is fixed by a > 0 (tie: b > 0).
    /// This makes equality of principal ideals a plain value comparison.
    pub fn canonical_associate_with_unit(&self) -> (RingElem, RingElem) {
        let ring = self.ring;
        if self.is_zero() {
            return (self.clone(), RingElem::one(ring));
        }
        let mut x = self.clone();
        let mut u = RingElem::one(ring);
        if ring != Ring::Rational {
            let eps = ring.fundamental_unit().unwrap();
            let eps_inv = ring.fundamental_unit_inv().unwrap();
            let eps4 = eps.pow(4);
            // raise until |x₁| ≥ |x₂|, i.e. the √d part of x² is ≥ 0
            loop {
                let sq = x.mul(&x);
                let v_part = sq.doubled().1;
                if v_part.sign() != num_bigint::Sign::Minus {
                    break;
                }
                x = x.mul(&eps);
                u = u.mul(&eps);
            }
            // lower while |x₁/x₂| ≥ ε², i.e. x² - ε⁴·σ(x²) ≥ 0 in the first embedding
            loop {
                let sq = x.mul(&x);
                let diff = sq.sub(&eps4.mul(&sq.conj()));
                if diff.sign_first() < 0 {
                    break;
                }
                x = x.mul(&eps_inv);
                u = u.mul(&eps_inv);
            }
        }
        let neg = match x.a.sign() {
            num_bigint::Sign::Minus => true,
            num_bigint::Sign::NoSign => x.b.sign() == num_bigint::Sign::Minus,
            num_bigint::Sign::Plus => false,
        };
        if neg {
            x = x.neg();
            u = u.neg();
        }
        (x, u)
    }

    pub fn canonical_associate(&self) -> RingElem {
        self.canonical_associate_with_unit().0
    }

    pub fn is_canonical_associate(&self) -> bool {
        *self == self.canonical_associate()
    }

    /// Deterministic totally positive associate of a nonzero element: the
    /// canonical associate, twisted once by the (norm -1) fundamental unit
    /// when its second embedding is negative.
    pub fn totally_positive_associate(&self) -> RingElem {
        assert!(!self.is_zero());
        let c = self.canonical_associate();
        if c.is_totally_positive() {
            return c;
        }
        match self.ring {
            Ring::Rational => c,
            _ => {
                // ε has norm -1, so ε·c flips exactly one embedding sign;
                // negate if both came out negative
                let mut t = c.mul(&self.ring.fundamental_unit().unwrap());
                if !t.is_totally_positive() {
                    t = t.neg();
                }
                assert!(t.is_totally_positive());
                t
            }
        }
    }

    /// Order by the first real embedding (exact).
    pub fn cmp_embed(&self, other: &RingElem) -> Ordering {
        match self.sub(other).sign_first() {
            s if s > 0 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        }
    }
}

/// Sign of u + v√d with d ∈ {1, 2, 5}.
fn sign_u_plus_v_sqrt_d(u: &BigInt, v: &BigInt, d: i64) -> i32 {
    use num_bigint::Sign::*;
    match (u.sign(), v.sign()) {
        (NoSign, NoSign) => 0,
        (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => 1,
        (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => -1,
        (Plus, Minus) => {
            // u > |v|√d ?
            match (u * u).cmp(&(v * v * d)) {
                Ordering::Greater => 1,
                Ordering::Equal => 0,
                Ordering::Less => -1,
            }
        }
        (Minus, Plus) => match (v * v * d).cmp(&(u * u)) {
            Ordering::Greater => 1,
            Ordering::Equal => 0,
            Ordering::Less => -1,
        },
    }
}

/// Round p/q to the nearest integer, half away from the floor (q ≠ 0).
fn round_div(p: &BigInt, q: &BigInt) -> BigInt {
    let (p, q) = if q.sign() == num_bigint::Sign::Minus {
        (-p, -q)
    } else {
        (p.clone(), q.clone())
    };
    num_integer::Integer::div_floor(&(2 * p + &q), &(2 * q))
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*w", self.b);
        }
        if self.b.sign() == num_bigint::Sign::Minus {
            write!(f, "{}{}*w", self.a, self.b)
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

/// Element of the fraction field, kept as num/den with den a positive rational
/// integer and gcd(int-content(num), den) = 1.  Equal values have identical
/// representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    num: RingElem,
    den: BigInt,
}

impl FieldElem {
    pub fn new(num: RingElem, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut x = FieldElem { num, den };
        x.reduce();
        x
    }

    pub fn from_ring(num: RingElem) -> Self {
        FieldElem { num, den: BigInt::one() }
    }

    pub fn from_int(ring: Ring, n: i64) -> Self {
        Self::from_ring(RingElem::int(ring, n))
    }

    pub fn from_i64(ring: Ring, a: i64, b: i64, den: i64) -> Self {
        Self::new(RingElem::from_i64(ring, a, b), BigInt::from(den))
    }

    pub fn zero(ring: Ring) -> Self {
        Self::from_int(ring, 0)
    }

    pub fn one(ring: Ring) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn ring(&self) -> Ring {
        self.num.ring
    }

    pub fn numerator(&self) -> &RingElem {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    fn reduce(&mut self) {
        use num_integer::Integer;
        if self.den.sign() == num_bigint::Sign::Minus {
            self.den = -&self.den;
            self.num = self.num.neg();
        }
        let g = self.num.int_content().gcd(&self.den);
        if !g.is_one() && !g.is_zero() {
            self.num = RingElem::new(self.num.ring, &self.num.a / &g, &self.num.b / &g);
            self.den /= &g;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The element as a ring element; panics if it is not integral.
    pub fn to_ring(&self) -> RingElem {
        assert!(self.is_integral(), "field element {} is not integral", self);
        self.num.clone()
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        FieldElem::new(
            self.num
                .mul_int(&other.den)
                .add(&other.num.mul_int(&self.den)),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        FieldElem::new(self.num.mul(&other.num), &self.den * &other.den)
    }

    pub fn inv(&self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero");
        let (c, n) = self.num.cofactor();
        FieldElem::new(c.mul_int(&(&self.den * n.signum())), n.abs())
    }

    pub fn div(&self, other: &FieldElem) -> FieldElem {
        self.mul(&other.inv())
    }

    pub fn mul_ring(&self, r: &RingElem) -> FieldElem {
        FieldElem::new(self.num.mul(r), self.den.clone())
    }

    pub fn conj(&self) -> FieldElem {
        FieldElem { num: self.num.conj(), den: self.den.clone() }
    }

    /// Field norm down to Q, as a rational-ring field element.
    pub fn norm(&self) -> FieldElem {
        FieldElem::new(
            RingElem::new(Ring::Rational, self.num.norm(), BigInt::zero()),
            match self.ring() {
                Ring::Rational => self.den.clone(),
                _ => &self.den * &self.den,
            },
        )
    }

    pub fn trace(&self) -> FieldElem {
        FieldElem::new(
            RingElem::new(Ring::Rational, self.num.trace(), BigInt::zero()),
            self.den.clone(),
        )
    }

    pub fn sign_first(&self) -> i32 {
        self.num.sign_first()
    }

    pub fn is_totally_positive(&self) -> bool {
        self.num.is_totally_positive()
    }

    pub fn cmp_embed(&self, other: &FieldElem) -> Ordering {
        match self.sub(other).sign_first() {
            s if s > 0 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2(a: i64, b: i64) -> RingElem {
        RingElem::from_i64(Ring::Sqrt2, a, b)
    }

    fn ph(a: i64, b: i64) -> RingElem {
        RingElem::from_i64(Ring::Phi, a, b)
    }

    #[test]
    fn norm_values() {
        // Nm(a+b√2) = a²-2b², Nm(a+bφ) = a²+ab-b²
        assert_eq!(s2(2, 1).norm(), BigInt::from(2));
        assert_eq!(s2(1, 1).norm(), BigInt::from(-1));
        assert_eq!(ph(0, 1).norm(), BigInt::from(-1)); // Nm(φ) = -1
        assert_eq!(ph(3, -1).norm(), BigInt::from(5)); // Nm(3-φ) = 5
        assert_eq!(RingElem::int(Ring::Rational, -7).norm(), BigInt::from(-7));
    }

    #[test]
    fn trace_values() {
        assert_eq!(s2(3, 5).trace(), BigInt::from(6));
        assert_eq!(ph(3, 5).trace(), BigInt::from(11));
        assert_eq!(RingElem::int(Ring::Rational, 4).trace(), BigInt::from(4));
    }

    #[test]
    fn multiplication_tables() {
        // (1+√2)² = 3+2√2, φ² = 1+φ
        assert_eq!(s2(1, 1).mul(&s2(1, 1)), s2(3, 2));
        assert_eq!(ph(0, 1).mul(&ph(0, 1)), ph(1, 1));
        // conj is a ring homomorphism
        let x = s2(3, -2);
        let y = s2(-1, 4);
        assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        let x = ph(3, -2);
        let y = ph(-1, 4);
        assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
    }

    #[test]
    fn euclidean_contract_examples() {
        // (5, 2+√2): remainder norm strictly below |Nm(2+√2)| = 2
        let (q, r) = RingElem::int(Ring::Sqrt2, 5).euclidean_div(&s2(2, 1));
        assert_eq!(q.mul(&s2(2, 1)).add(&r), RingElem::int(Ring::Sqrt2, 5));
        assert!(r.norm().abs() < BigInt::from(2));
        // (x, 1) divides exactly
        let x = s2(7, -3);
        let (q, r) = x.euclidean_div(&RingElem::one(Ring::Sqrt2));
        assert_eq!(q, x);
        assert!(r.is_zero());
        // 4+2√2 = √2·(2+2√2) exactly
        let (q, r) = s2(4, 2).euclidean_div(&s2(0, 1));
        assert!(r.is_zero());
        assert_eq!(q, s2(2, 2));
    }

    #[test]
    fn euclidean_contract_random() {
        // deterministic pseudo-random sweep: remainder norms shrink, identity holds
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 41) as i64 - 20
        };
        for ring in [Ring::Rational, Ring::Sqrt2, Ring::Phi] {
            for _ in 0..2500 {
                let x = RingElem::from_i64(ring, next(), if ring == Ring::Rational { 0 } else { next() });
                let y = RingElem::from_i64(ring, next(), if ring == Ring::Rational { 0 } else { next() });
                if y.is_zero() {
                    continue;
                }
                let (q, r) = x.euclidean_div(&y);
                assert_eq!(q.mul(&y).add(&r), x);
                assert!(r.norm().abs() < y.norm().abs(), "{} = {}*{} + {}", x, q, y, r);
                // remainder is a function of the residue class
                let x2 = x.add(&y.mul(&RingElem::from_i64(ring, 3, 0)));
                let (_, r2) = x2.euclidean_div(&y);
                assert_eq!(r, r2);
            }
        }
    }

    #[test]
    fn norm_multiplicativity_random() {
        let mut state = 0x51afc699d419fu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 201) as i64 - 100
        };
        for ring in [Ring::Rational, Ring::Sqrt2, Ring::Phi] {
            for _ in 0..3400 {
                let x = RingElem::from_i64(ring, next(), if ring == Ring::Rational { 0 } else { next() });
                let y = RingElem::from_i64(ring, next(), if ring == Ring::Rational { 0 } else { next() });
                assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
            }
        }
    }

    #[test]
    fn canonical_associate_properties() {
        // canonical(√2-associates): 2+√2 = ε·√2 normalizes to √2
        assert_eq!(s2(2, 1).canonical_associate(), s2(0, 1));
        assert_eq!(s2(0, 1).canonical_associate(), s2(0, 1));
        assert_eq!(RingElem::int(Ring::Rational, -6).canonical_associate(), RingElem::int(Ring::Rational, 6));
        // 3-φ and √5 = 2φ-1 generate the same ideal
        assert_eq!(ph(3, -1).canonical_associate(), ph(-1, 2).canonical_associate());

        let mut state = 0xdeadbeef12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 31) as i64 - 15
        };
        for ring in [Ring::Sqrt2, Ring::Phi] {
            let eps = ring.fundamental_unit().unwrap();
            for _ in 0..800 {
                let x = RingElem::from_i64(ring, next(), next());
                if x.is_zero() {
                    continue;
                }
                let (c, u) = x.canonical_associate_with_unit();
                assert!(u.is_unit());
                assert_eq!(x.mul(&u), c);
                // stable under multiplying by units
                assert_eq!(x.mul(&eps).canonical_associate(), c);
                assert_eq!(x.neg().canonical_associate(), c);
                assert_eq!(x.mul(&eps.pow(3)).neg().canonical_associate(), c);
                // idempotent
                assert_eq!(c.canonical_associate(), c);
            }
        }
    }

    #[test]
    fn valuation_examples() {
        // v(4+2√2) at the prime above 2 is 3
        let p2 = s2(0, 1); // √2 generates the prime above 2
        assert_eq!(s2(4, 2).valuation(&p2), 3);
        assert_eq!(RingElem::int(Ring::Sqrt2, 2).valuation(&p2), 2);
        assert_eq!(s2(2, 1).valuation(&p2), 1);
        // additive on products
        let mut state = 0xabcdef987654u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 25) as i64 - 12
        };
        for _ in 0..2000 {
            let x = s2(next(), next());
            let y = s2(next(), next());
            if x.is_zero() || y.is_zero() {
                continue;
            }
            assert_eq!(
                x.mul(&y).valuation(&p2),
                x.valuation(&p2) + y.valuation(&p2)
            );
        }
    }

    #[test]
    fn egcd_properties() {
        let x = s2(4, 2);
        let y = s2(6, 0);
        let (g, u, v) = x.egcd(&y);
        assert_eq!(u.mul(&x).add(&v.mul(&y)), g);
        assert!(g.is_canonical_associate());
        assert!(g.divides(&x) && g.divides(&y));
        // coprime pair
        let (g, u, v) = s2(1, 1).egcd(&s2(0, 1));
        assert!(g.is_one());
        assert_eq!(u.mul(&s2(1, 1)).add(&v.mul(&s2(0, 1))), g);
    }

    #[test]
    fn totally_positive_associates() {
        // √2 itself is not totally positive; ε·√2 = 2+√2 is
        assert_eq!(s2(0, 1).totally_positive_associate(), s2(2, 1));
        // 3+√2 is totally positive and already canonical
        assert_eq!(s2(3, 1).neg().totally_positive_associate(), s2(3, 1));
        assert_eq!(
            RingElem::int(Ring::Rational, -7).totally_positive_associate(),
            RingElem::int(Ring::Rational, 7)
        );
        let mut state = 0x77aa55u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 9
        };
        for ring in [Ring::Sqrt2, Ring::Phi] {
            for _ in 0..500 {
                let x = RingElem::from_i64(ring, next(), next());
                if x.is_zero() {
                    continue;
                }
                let t = x.totally_positive_associate();
                assert!(t.is_totally_positive(), "{} -> {}", x, t);
                // still an associate
                assert_eq!(t.canonical_associate(), x.canonical_associate());
                // deterministic
                assert_eq!(x.neg().totally_positive_associate(), t);
            }
        }
    }

    #[test]
    fn total_positivity() {
        assert!(s2(3, -2).is_totally_positive()); // 3±2√2 > 0
        assert!(!s2(1, 1).is_totally_positive()); // 1-√2 < 0
        assert!(ph(2, -1).is_totally_positive()); // 2-φ = (3∓√5)/2 > 0
        assert!(!ph(0, 1).is_totally_positive()); // 1-φ < 0
        assert!(RingElem::int(Ring::Rational, 3).is_totally_positive());
        assert!(!RingElem::int(Ring::Rational, -3).is_totally_positive());
        // sign agrees with f64 evaluation on a sweep
        for a in -9i64..=9 {
            for b in -9i64..=9 {
                let x = s2(a, b);
                let approx = a as f64 + (b as f64) * std::f64::consts::SQRT_2;
                if approx.abs() > 1e-9 {
                    assert_eq!(x.sign_first() > 0, approx > 0.0, "{}", x);
                }
                let y = ph(a, b);
                let approx = a as f64 + (b as f64) * (1.0 + 5f64.sqrt()) / 2.0;
                if approx.abs() > 1e-9 {
                    assert_eq!(y.sign_first() > 0, approx > 0.0, "{}", y);
                }
            }
        }
    }

    #[test]
    fn field_elem_reduction() {
        let x = FieldElem::from_i64(Ring::Sqrt2, 2, 4, 6);
        assert_eq!(x, FieldElem::from_i64(Ring::Sqrt2, 1, 2, 3));
        let y = FieldElem::from_i64(Ring::Sqrt2, 2, 4, -6);
        assert_eq!(y, x.neg());
        assert!(FieldElem::from_i64(Ring::Sqrt2, 4, 2, 2).is_integral());
        // arithmetic
        let a = FieldElem::from_i64(Ring::Phi, 1, 1, 2);
        let b = FieldElem::from_i64(Ring::Phi, 3, -1, 5);
        let prod = a.mul(&b);
        assert_eq!(prod.div(&b), a);
        assert_eq!(a.mul(&a.inv()), FieldElem::one(Ring::Phi));
        assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    #[should_panic(expected = "mixed coefficient rings")]
    fn ring_mismatch_panics() {
        let _ = s2(1, 0).add(&ph(1, 0));
    }

    #[test]
    fn display_round_trip_shapes() {
        assert_eq!(s2(3, -2).to_string(), "3-2*w");
        assert_eq!(s2(0, 1).to_string(), "1*w");
        assert_eq!(s2(-5, 0).to_string(), "-5");
        assert_eq!(FieldElem::from_i64(Ring::Sqrt2, 2, 1, 2).to_string(), "2+1*w/2");
        assert_eq!(FieldElem::from_i64(Ring::Rational, 7, 0, 1).to_string(), "7");
    }
}
