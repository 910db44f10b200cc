//! Quaternion algebras A = (a,b / F) with basis 1, i, j, k = ij, subject to
//! i² = a, j² = b, ji = -ij, together with orders in them.
//!
//! Elements are coordinate vectors over the coefficient field; the algebra
//! object carries the structure constants and performs all multiplication,
//! norm and trace computations.  Orders are full-rank lattices closed under
//! multiplication and containing 1; they are validated on construction.

use crate::error::Error;
use crate::linalg::{fvec_zero, FMat4, FVec4, Lattice};
use crate::primes::{factor_ring_elem, PrimeIdeal};
use crate::rings::{FieldElem, Ring, RingElem};

/// Structure constants of the algebra (a,b / F).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatAlgebra {
    pub ring: Ring,
    /// i² = a
    pub a: FieldElem,
    /// j² = b
    pub b: FieldElem,
}

/// An element written as c[0] + c[1]·i + c[2]·j + c[3]·k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quaternion {
    pub c: FVec4,
}

impl Quaternion {
    pub fn new(c: FVec4) -> Self {
        Quaternion { c }
    }

    pub fn zero(ring: Ring) -> Self {
        Quaternion { c: fvec_zero(ring) }
    }

    pub fn one(ring: Ring) -> Self {
        let mut c = fvec_zero(ring);
        c[0] = FieldElem::one(ring);
        Quaternion { c }
    }

    /// Scalar embedding F → A.
    pub fn scalar(x: FieldElem) -> Self {
        let mut c = fvec_zero(x.ring());
        c[0] = x;
        Quaternion { c }
    }

    pub fn basis_vector(ring: Ring, idx: usize) -> Self {
        let mut c = fvec_zero(ring);
        c[idx] = FieldElem::one(ring);
        Quaternion { c }
    }

    pub fn from_i64(ring: Ring, coords: [(i64, i64, i64); 4]) -> Self {
        Quaternion {
            c: std::array::from_fn(|n| {
                let (a, b, den) = coords[n];
                FieldElem::from_i64(ring, a, b, den)
            }),
        }
    }

    pub fn ring(&self) -> Ring {
        self.c[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integral())
    }

    pub fn add(&self, other: &Quaternion) -> Quaternion {
        Quaternion { c: std::array::from_fn(|n| self.c[n].add(&other.c[n])) }
    }

    pub fn sub(&self, other: &Quaternion) -> Quaternion {
        Quaternion { c: std::array::from_fn(|n| self.c[n].sub(&other.c[n])) }
    }

    pub fn neg(&self) -> Quaternion {
        Quaternion { c: std::array::from_fn(|n| self.c[n].neg()) }
    }

    /// Standard involution: negates the i, j, k coordinates.  Independent of
    /// the structure constants.
    pub fn conj(&self) -> Quaternion {
        Quaternion {
            c: [
                self.c[0].clone(),
                self.c[1].neg(),
                self.c[2].neg(),
                self.c[3].neg(),
            ],
        }
    }

    /// Reduced trace x + conj(x) = 2·c[0].
    pub fn trd(&self) -> FieldElem {
        self.c[0].add(&self.c[0])
    }

    pub fn scale(&self, s: &FieldElem) -> Quaternion {
        Quaternion { c: std::array::from_fn(|n| self.c[n].mul(s)) }
    }

    pub fn scale_ring(&self, s: &RingElem) -> Quaternion {
        self.scale(&FieldElem::from_ring(s.clone()))
    }

    /// Largest rational integer dividing all coordinate numerators when the
    /// element is integral.
    pub fn int_content(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        assert!(self.is_integral());
        let mut g = num_bigint::BigInt::from(0);
        for x in &self.c {
            g = g.gcd(&x.numerator().int_content());
        }
        g
    }

    /// Galois conjugate applied coordinatewise (w ↦ -√2 resp. 1-φ).
    pub fn galois(&self) -> Quaternion {
        Quaternion { c: std::array::from_fn(|n| self.c[n].conj()) }
    }
}

impl QuatAlgebra {
    pub fn new(ring: Ring, a: FieldElem, b: FieldElem) -> Self {
        assert_eq!(a.ring(), ring);
        assert_eq!(b.ring(), ring);
        assert!(!a.is_zero() && !b.is_zero(), "structure constants must be nonzero");
        QuatAlgebra { ring, a, b }
    }

    /// The Hamilton constants a = b = -1.
    pub fn hamilton(ring: Ring) -> Self {
        QuatAlgebra::new(ring, FieldElem::from_int(ring, -1), FieldElem::from_int(ring, -1))
    }

    /// Totally definite ⇔ a and b are totally negative.
    pub fn is_definite(&self) -> bool {
        self.a.neg().is_totally_positive() && self.b.neg().is_totally_positive()
    }

    pub fn mul(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        let (a, b) = (&self.a, &self.b);
        let ab = a.mul(b);
        let (x1, x2, x3, x4) = (&x.c[0], &x.c[1], &x.c[2], &x.c[3]);
        let (y1, y2, y3, y4) = (&y.c[0], &y.c[1], &y.c[2], &y.c[3]);
        let c0 = x1
            .mul(y1)
            .add(&a.mul(&x2.mul(y2)))
            .add(&b.mul(&x3.mul(y3)))
            .sub(&ab.mul(&x4.mul(y4)));
        let c1 = x1
            .mul(y2)
            .add(&x2.mul(y1))
            .sub(&b.mul(&x3.mul(y4)))
            .add(&b.mul(&x4.mul(y3)));
        let c2 = x1
            .mul(y3)
            .add(&x3.mul(y1))
            .add(&a.mul(&x2.mul(y4)))
            .sub(&a.mul(&x4.mul(y2)));
        let c3 = x1
            .mul(y4)
            .add(&x4.mul(y1))
            .add(&x2.mul(y3))
            .sub(&x3.mul(y2));
        Quaternion { c: [c0, c1, c2, c3] }
    }

    /// Reduced norm x·conj(x).
    pub fn nrd(&self, x: &Quaternion) -> FieldElem {
        let (a, b) = (&self.a, &self.b);
        let sq = |v: &FieldElem| v.mul(v);
        sq(&x.c[0])
            .sub(&a.mul(&sq(&x.c[1])))
            .sub(&b.mul(&sq(&x.c[2])))
            .add(&a.mul(b).mul(&sq(&x.c[3])))
    }

    /// Inverse in the algebra (nonzero x in a division algebra).
    pub fn inverse(&self, x: &Quaternion) -> Quaternion {
        let n = self.nrd(x);
        assert!(!n.is_zero(), "inverse of a zero divisor");
        x.conj().scale(&n.inv())
    }

    /// Positive-definite pairing trd(x·conj(y)), used to build Gram matrices
    /// for lattice point enumeration.
    pub fn pairing(&self, x: &Quaternion, y: &Quaternion) -> FieldElem {
        self.mul(x, &y.conj()).trd()
    }

    pub fn pow(&self, x: &Quaternion, mut e: u32) -> Quaternion {
        let mut base = x.clone();
        let mut acc = Quaternion::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// An order in the algebra: a full-rank lattice that contains 1 and is closed
/// under multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatOrder {
    pub alg: QuatAlgebra,
    pub lattice: Lattice,
    basis: [Quaternion; 4],
}

impl QuatOrder {
    pub fn new(alg: QuatAlgebra, lattice: Lattice) -> Result<QuatOrder, Error> {
        let basis: [Quaternion; 4] =
            std::array::from_fn(|r| Quaternion::new(lattice.row_field(r)));
        let order = QuatOrder { alg, lattice, basis };
        order.validate()?;
        Ok(order)
    }

    fn validate(&self) -> Result<(), Error> {
        if !self.contains(&Quaternion::one(self.alg.ring)) {
            return Err(Error::Config("order lattice does not contain 1".into()));
        }
        for x in &self.basis {
            for y in &self.basis {
                if !self.contains(&self.alg.mul(x, y)) {
                    return Err(Error::Config(
                        "order lattice is not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.alg.ring
    }

    pub fn basis(&self) -> &[Quaternion; 4] {
        &self.basis
    }

    pub fn contains(&self, x: &Quaternion) -> bool {
        self.lattice.contains(&x.c)
    }

    /// Reduced discriminant: the square root of the ideal generated by
    /// det(trd(bᵢ·bⱼ)), returned as its canonical generator.
    pub fn discriminant(&self) -> Result<RingElem, Error> {
        let gram = FMat4::new(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.alg.mul(&self.basis[r], &self.basis[c]).trd())
        }));
        let det = gram.det();
        assert!(
            !det.is_zero(),
            "order basis must be nondegenerate for the trace form"
        );
        // det generates a fractional ideal; for an order it is integral
        let det = if det.is_integral() {
            det.to_ring()
        } else {
            return Err(Error::Config("trace form determinant is not integral".into()));
        };
        let mut root = RingElem::one(self.ring());
        for (p, v) in factor_ring_elem(&det)? {
            assert!(v % 2 == 0, "trace form determinant must be a square ideal");
            root = root.mul(&p.gen.pow(v / 2));
        }
        Ok(root.canonical_associate())
    }

    /// An order is maximal iff its reduced discriminant is squarefree.
    pub fn is_maximal(&self) -> Result<bool, Error> {
        let d = self.discriminant()?;
        for (_, v) in factor_ring_elem(&d)? {
            if v > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Does 𝔭 divide the reduced discriminant?
    pub fn prime_divides_discriminant(&self, p: &PrimeIdeal) -> Result<bool, Error> {
        let d = self.discriminant()?;
        Ok(!d.is_unit() && p.divides(&d))
    }

    /// Coordinates of x with respect to the order basis, if x lies in it.
    pub fn coordinates(&self, x: &Quaternion) -> Option<[RingElem; 4]> {
        self.lattice.coordinates(&x.c)
    }
}

/// The Hurwitz order Z⟨1, i, j, (1+i+j+k)/2⟩ in (-1,-1 / Q).
pub fn hurwitz_order() -> QuatOrder {
    let ring = Ring::Rational;
    let alg = QuatAlgebra::hamilton(ring);
    let re = |n: i64| RingElem::int(ring, n);
    let lattice = Lattice::from_rows(
        ring,
        num_bigint::BigInt::from(2),
        vec![
            [re(2), re(0), re(0), re(0)],
            [re(0), re(2), re(0), re(0)],
            [re(0), re(0), re(2), re(0)],
            [re(1), re(1), re(1), re(1)],
        ],
    );
    QuatOrder::new(alg, lattice).expect("Hurwitz order is an order")
}

/// The maximal order Z_F⟨1, (√2/2)(1+i), (√2/2)(1+j), (1+i+j+k)/2⟩ in
/// (-1,-1 / Q(√2)), with 48 units.
pub fn sqrt2_maximal_order() -> QuatOrder {
    let ring = Ring::Sqrt2;
    let alg = QuatAlgebra::hamilton(ring);
    let z = RingElem::from_i64(ring, 0, 0);
    let two = RingElem::from_i64(ring, 2, 0);
    let one = RingElem::from_i64(ring, 1, 0);
    let s = RingElem::from_i64(ring, 0, 1); // √2
    let lattice = Lattice::from_rows(
        ring,
        num_bigint::BigInt::from(2),
        vec![
            [two.clone(), z.clone(), z.clone(), z.clone()],
            [s.clone(), s.clone(), z.clone(), z.clone()],
            [s.clone(), z.clone(), s.clone(), z.clone()],
            [one.clone(), one.clone(), one.clone(), one.clone()],
        ],
    );
    QuatOrder::new(alg, lattice).expect("the √2 order is an order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn hamilton_q() -> QuatAlgebra {
        QuatAlgebra::hamilton(Ring::Rational)
    }

    fn qi64(alg: &QuatAlgebra, c: [i64; 4]) -> Quaternion {
        Quaternion::from_i64(alg.ring, [
            (c[0], 0, 1),
            (c[1], 0, 1),
            (c[2], 0, 1),
            (c[3], 0, 1),
        ])
    }

    #[test]
    fn basis_multiplication_table() {
        let alg = hamilton_q();
        let ring = alg.ring;
        let one = Quaternion::basis_vector(ring, 0);
        let i = Quaternion::basis_vector(ring, 1);
        let j = Quaternion::basis_vector(ring, 2);
        let k = Quaternion::basis_vector(ring, 3);
        // i² = j² = k² = -1, ij = k = -ji, jk = i = -kj, ki = j = -ik
        assert_eq!(alg.mul(&i, &i), one.neg());
        assert_eq!(alg.mul(&j, &j), one.neg());
        assert_eq!(alg.mul(&k, &k), one.neg());
        assert_eq!(alg.mul(&i, &j), k);
        assert_eq!(alg.mul(&j, &i), k.neg());
        assert_eq!(alg.mul(&j, &k), i);
        assert_eq!(alg.mul(&k, &j), i.neg());
        assert_eq!(alg.mul(&k, &i), j);
        assert_eq!(alg.mul(&i, &k), j.neg());
    }

    #[test]
    fn basis_table_general_constants() {
        // i·k = a·j, k·i = -a·j, j·k = -b·i, k·j = b·i, k² = -a·b
        let ring = Ring::Phi;
        let a = FieldElem::from_i64(ring, -3, 1, 1);
        let b = FieldElem::from_i64(ring, 1, -1, 1);
        let alg = QuatAlgebra::new(ring, a.clone(), b.clone());
        let one = Quaternion::basis_vector(ring, 0);
        let i = Quaternion::basis_vector(ring, 1);
        let j = Quaternion::basis_vector(ring, 2);
        let k = Quaternion::basis_vector(ring, 3);
        assert_eq!(alg.mul(&i, &i), one.scale(&a));
        assert_eq!(alg.mul(&j, &j), one.scale(&b));
        assert_eq!(alg.mul(&i, &j), k);
        assert_eq!(alg.mul(&j, &i), k.neg());
        assert_eq!(alg.mul(&i, &k), j.scale(&a));
        assert_eq!(alg.mul(&k, &i), j.scale(&a).neg());
        assert_eq!(alg.mul(&j, &k), i.scale(&b).neg());
        assert_eq!(alg.mul(&k, &j), i.scale(&b));
        assert_eq!(alg.mul(&k, &k), one.scale(&a.mul(&b)).neg());
    }

    #[test]
    fn nrd_and_trd() {
        let alg = hamilton_q();
        let q = qi64(&alg, [1, 2, 3, 4]);
        assert_eq!(alg.nrd(&q), FieldElem::from_int(Ring::Rational, 30));
        assert_eq!(q.trd(), FieldElem::from_int(Ring::Rational, 2));
        // x·conj(x) = nrd(x)·1
        let prod = alg.mul(&q, &q.conj());
        assert_eq!(prod, Quaternion::scalar(alg.nrd(&q)));
    }

    #[test]
    fn algebra_identities_random() {
        let mut state = 0x600dcafeu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 11) as i64 - 5
        };
        for (ring, a, b) in [
            (Ring::Rational, (-1, 0), (-1, 0)),
            (Ring::Sqrt2, (-1, 0), (-1, 0)),
            (Ring::Phi, (-3, 1), (1, -1)),
        ] {
            let alg = QuatAlgebra::new(
                ring,
                FieldElem::from_i64(ring, a.0, a.1, 1),
                FieldElem::from_i64(ring, b.0, b.1, 1),
            );
            let rnd = |next: &mut dyn FnMut() -> i64| {
                Quaternion::new(std::array::from_fn(|_| {
                    FieldElem::from_i64(
                        ring,
                        next(),
                        if ring == Ring::Rational { 0 } else { next() },
                        1,
                    )
                }))
            };
            for _ in 0..150 {
                let x = rnd(&mut next);
                let y = rnd(&mut next);
                let z = rnd(&mut next);
                // associativity and distributivity
                assert_eq!(
                    alg.mul(&alg.mul(&x, &y), &z),
                    alg.mul(&x, &alg.mul(&y, &z))
                );
                assert_eq!(
                    alg.mul(&x, &y.add(&z)),
                    alg.mul(&x, &y).add(&alg.mul(&x, &z))
                );
                // nrd multiplicative, trd symmetric, conj anti-multiplicative
                assert_eq!(alg.nrd(&alg.mul(&x, &y)), alg.nrd(&x).mul(&alg.nrd(&y)));
                assert_eq!(alg.mul(&x, &y).trd(), alg.mul(&y, &x).trd());
                assert_eq!(
                    alg.mul(&x, &y).conj(),
                    alg.mul(&y.conj(), &x.conj())
                );
            }
        }
    }

    #[test]
    fn definiteness() {
        assert!(hamilton_q().is_definite());
        assert!(QuatAlgebra::hamilton(Ring::Sqrt2).is_definite());
        // (-(3-φ), φ-1) is indefinite: the second constant is positive at one embedding
        let alg = QuatAlgebra::new(
            Ring::Phi,
            FieldElem::from_i64(Ring::Phi, -3, 1, 1),
            FieldElem::from_i64(Ring::Phi, 1, -1, 1),
        );
        assert!(!alg.is_definite());
    }

    #[test]
    fn hurwitz_is_an_order_with_discriminant_two() {
        let o = hurwitz_order();
        assert_eq!(o.discriminant().unwrap(), RingElem::int(Ring::Rational, 2));
        assert!(o.is_maximal().unwrap());
        // membership samples
        let half = Quaternion::from_i64(Ring::Rational, [(1, 0, 2), (1, 0, 2), (1, 0, 2), (1, 0, 2)]);
        assert!(o.contains(&half));
        let bad = Quaternion::from_i64(Ring::Rational, [(1, 0, 2), (1, 0, 2), (0, 0, 1), (0, 0, 1)]);
        assert!(!o.contains(&bad));
        let one = Quaternion::one(Ring::Rational);
        assert_eq!(o.coordinates(&one).unwrap().len(), 4);
    }

    #[test]
    fn lipschitz_is_not_maximal() {
        let alg = hamilton_q();
        let o = QuatOrder::new(alg, Lattice::standard(Ring::Rational)).unwrap();
        assert_eq!(o.discriminant().unwrap(), RingElem::int(Ring::Rational, 4));
        assert!(!o.is_maximal().unwrap());
    }

    #[test]
    fn sqrt2_order_is_maximal_with_trivial_discriminant() {
        let o = sqrt2_maximal_order();
        assert!(o.discriminant().unwrap().is_unit() || o.discriminant().unwrap().is_one());
        assert!(o.is_maximal().unwrap());
        // contains the Hurwitz-like half quaternion and the √2-halves
        let ring = Ring::Sqrt2;
        let half = Quaternion::from_i64(ring, [(1, 0, 2), (1, 0, 2), (1, 0, 2), (1, 0, 2)]);
        assert!(o.contains(&half));
        let s_half = Quaternion::from_i64(ring, [(0, 1, 2), (0, 1, 2), (0, 0, 1), (0, 0, 1)]);
        assert!(o.contains(&s_half));
        let not_in = Quaternion::from_i64(ring, [(1, 0, 2), (0, 0, 1), (0, 0, 1), (0, 0, 1)]);
        assert!(!o.contains(&not_in));
    }

    #[test]
    fn order_rejects_non_closed_lattice() {
        // the lattice spanned by 1, i/2, j, k contains 1 but (i/2)² = -1/4 ∉ L
        let ring = Ring::Rational;
        let re = |n: i64| RingElem::int(ring, n);
        let lat = Lattice::from_rows(
            ring,
            BigInt::from(2),
            vec![
                [re(2), re(0), re(0), re(0)],
                [re(0), re(1), re(0), re(0)],
                [re(0), re(0), re(2), re(0)],
                [re(0), re(0), re(0), re(2)],
            ],
        );
        assert!(QuatOrder::new(hamilton_q(), lat).is_err());
    }

    #[test]
    fn galois_commutes_with_mul() {
        let alg = QuatAlgebra::hamilton(Ring::Sqrt2);
        let x = Quaternion::from_i64(Ring::Sqrt2, [(1, 1, 1), (0, -2, 1), (3, 0, 2), (0, 0, 1)]);
        let y = Quaternion::from_i64(Ring::Sqrt2, [(0, 1, 2), (5, -1, 1), (0, 0, 1), (1, 1, 1)]);
        assert_eq!(alg.mul(&x, &y).galois(), alg.mul(&x.galois(), &y.galois()));
    }
}
