//! Bridge between 2×2 unitary representatives and quaternions.
//!
//! A single-qubit unitary with entries in K(√b), K = F(√-D), is represented
//! projectively (up to F× scaling) by the matrix
//!
//!   M = x₁·I + x₂·√-D·Z − y₁·√-b·Y + y₂·√-Db·X
//!     = [[X, Y√b], [-Ȳ√b, X̄]]  with  X = x₁ + √-D·x₂,  Y = y₁ + √-D·y₂,
//!
//! and the coordinate map κ sends M to the quaternion x₁ + x₂i + y₁j + y₂k
//! in the algebra (-D, -b | F).  κ turns matrix products into quaternion
//! products, determinants into reduced norms, traces into reduced traces and
//! conjugate-transposes into quaternion conjugation, so synthesis can run
//! entirely on the quaternion side.

use num_bigint::BigInt;

use crate::error::Error;
use crate::ideal::{primitive_part, Ideal};
use crate::primes::{factor_ring_elem, PrimeIdeal};
use crate::quat::{QuatAlgebra, QuatOrder, Quaternion};
use crate::rings::{FieldElem, Ring, RingElem};

/// Unnormalized unitary representative in the coordinates above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryRep {
    /// Parameter D of K = F(√-D); totally positive for definite algebras.
    pub d: FieldElem,
    /// Parameter b of the entry extension K(√b).
    pub b: FieldElem,
    pub x1: FieldElem,
    pub x2: FieldElem,
    pub y1: FieldElem,
    pub y2: FieldElem,
}

impl UnitaryRep {
    pub fn ring(&self) -> Ring {
        self.d.ring()
    }

    /// Quaternion algebra (-D, -b | F) that κ maps into.
    pub fn algebra(&self) -> QuatAlgebra {
        QuatAlgebra::new(self.ring(), self.d.neg(), self.b.neg())
    }

    /// κ(M) = x₁ + x₂i + y₁j + y₂k.
    pub fn kappa(&self) -> Quaternion {
        Quaternion::new([
            self.x1.clone(),
            self.x2.clone(),
            self.y1.clone(),
            self.y2.clone(),
        ])
    }

    /// det(M); equals nrd(κ(M)).
    pub fn det(&self) -> FieldElem {
        self.algebra().nrd(&self.kappa())
    }

    /// tr(M); equals trd(κ(M)).
    pub fn tr(&self) -> FieldElem {
        self.kappa().trd()
    }

    /// Representative of the conjugate-transpose M†; equals κ⁻¹(conj κ(M)).
    pub fn dagger(&self) -> UnitaryRep {
        kappa_inverse(&self.d, &self.b, &self.kappa().conj())
    }

    /// Matrix product M·N, computed through κ (κ is an isomorphism onto the
    /// quaternion algebra, so this is the 2×2 matrix product).
    pub fn mul(&self, other: &UnitaryRep) -> UnitaryRep {
        assert_eq!(self.d, other.d);
        assert_eq!(self.b, other.b);
        let q = self.algebra().mul(&self.kappa(), &other.kappa());
        kappa_inverse(&self.d, &self.b, &q)
    }

    pub fn scale(&self, s: &FieldElem) -> UnitaryRep {
        kappa_inverse(&self.d, &self.b, &self.kappa().scale(s))
    }
}

/// Inverse of κ: read the four F-coordinates back off a quaternion.
pub fn kappa_inverse(d: &FieldElem, b: &FieldElem, q: &Quaternion) -> UnitaryRep {
    UnitaryRep {
        d: d.clone(),
        b: b.clone(),
        x1: q.c[0].clone(),
        x2: q.c[1].clone(),
        y1: q.c[2].clone(),
        y2: q.c[3].clone(),
    }
}

/// Unnormalized representative of diag(1, α) for α = re + √-D·im ≠ -1:
/// M = diag(1 + ᾱ, 1 + α), i.e. x₁ = 1 + re, x₂ = -im.
pub fn diag_gate_rep(
    d: &FieldElem,
    b: &FieldElem,
    re: &FieldElem,
    im: &FieldElem,
) -> Result<UnitaryRep, Error> {
    let ring = d.ring();
    if re == &FieldElem::from_int(ring, -1) && im.is_zero() {
        return Err(Error::Unsupported(
            "diag(1, -1) has a zero unnormalized representative; use pauli_z_rep".to_string(),
        ));
    }
    Ok(UnitaryRep {
        d: d.clone(),
        b: b.clone(),
        x1: FieldElem::from_int(ring, 1).add(re),
        x2: im.neg(),
        y1: FieldElem::zero(ring),
        y2: FieldElem::zero(ring),
    })
}

/// Unnormalized representative of Pauli Z: diag(√-D, -√-D) = √-D·Z, κ ↦ i.
pub fn pauli_z_rep(d: &FieldElem, b: &FieldElem) -> UnitaryRep {
    let ring = d.ring();
    UnitaryRep {
        d: d.clone(),
        b: b.clone(),
        x1: FieldElem::zero(ring),
        x2: FieldElem::from_int(ring, 1),
        y1: FieldElem::zero(ring),
        y2: FieldElem::zero(ring),
    }
}

/// Smallest β (canonical associate) with βq ∈ O; βq represents the same
/// unitary.  The set {β : βq ∈ O} is a nonzero R-ideal, principal for the
/// supported rings; its generator is lcm over coordinates of den/gcd(num, den)
/// in the coordinates of q against the order basis.
pub fn rescale_integral(q: &Quaternion, order: &QuatOrder) -> (Quaternion, RingElem) {
    assert!(!q.is_zero(), "cannot rescale the zero quaternion");
    let ring = q.ring();
    let coords = order.lattice.field_coordinates(&q.c);
    let mut beta = RingElem::one(ring);
    for c in &coords {
        if c.is_zero() {
            continue;
        }
        let den = RingElem::new(ring, c.denominator().clone(), BigInt::from(0u32));
        let need = den.exact_div(&c.numerator().gcd(&den)).expect("gcd divides");
        beta = beta.lcm(&need);
    }
    beta = beta.canonical_associate();
    let scaled = q.scale_ring(&beta);
    debug_assert!(order.contains(&scaled));
    (scaled, beta)
}

/// Prime support S for a gate list: primes dividing the reduced norm of the
/// primitive part of each gate's right ideal, plus any ramified primes split
/// off that ideal; central content is discarded.
pub fn select_s(order: &QuatOrder, gates: &[Quaternion]) -> Result<Vec<PrimeIdeal>, Error> {
    let ram_primes: Vec<PrimeIdeal> = factor_ring_elem(&order.discriminant()?)?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let mut s: Vec<PrimeIdeal> = Vec::new();
    let mut push = |p: PrimeIdeal| {
        if !s.contains(&p) {
            s.push(p);
        }
    };
    for g in gates {
        let ideal = Ideal::right_principal(order, g);
        let (prim, _content, ram) = primitive_part(&ideal, order, &ram_primes);
        for (p, e) in ram {
            if e > 0 {
                push(p);
            }
        }
        let nrd = prim.nrd_integral();
        if !nrd.is_unit() {
            for (p, _) in factor_ring_elem(&nrd)? {
                push(p);
            }
        }
    }
    s.sort_by(|a, b| a.p.cmp(&b.p).then_with(|| a.gen.cmp(&b.gen)));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{hurwitz_order, sqrt2_maximal_order};
    use rand::{Rng, SeedableRng};

    /// Commutative algebra F[s,t]/(s² = -D, t² = b) for symbolic 2×2 entries.
    #[derive(Debug, Clone, PartialEq)]
    struct SymK {
        d: FieldElem,
        b: FieldElem,
        // c[0] + c[1]s + c[2]t + c[3]st
        c: [FieldElem; 4],
    }

    impl SymK {
        fn new(d: &FieldElem, b: &FieldElem, c: [FieldElem; 4]) -> SymK {
            SymK { d: d.clone(), b: b.clone(), c }
        }

        fn zero(d: &FieldElem, b: &FieldElem) -> SymK {
            let ring = d.ring();
            Self::new(d, b, std::array::from_fn(|_| FieldElem::zero(ring)))
        }

        fn add(&self, o: &SymK) -> SymK {
            let mut r = self.clone();
            for i in 0..4 {
                r.c[i] = r.c[i].add(&o.c[i]);
            }
            r
        }

        fn mul(&self, o: &SymK) -> SymK {
            let ring = self.d.ring();
            let md = self.d.neg(); // s² = -D
            let b = self.b.clone(); // t² = b
            let mut r = Self::zero(&self.d, &self.b);
            // basis products: (1, s, t, st); s²=-D, t²=b, (st)² = -Db
            for (i, ci) in self.c.iter().enumerate() {
                for (j, cj) in o.c.iter().enumerate() {
                    let prod = ci.mul(cj);
                    // multiply basis elements i and j
                    let (idx, scale) = match (i, j) {
                        (0, x) | (x, 0) => (x, FieldElem::from_int(ring, 1)),
                        (1, 1) => (0, md.clone()),
                        (2, 2) => (0, b.clone()),
                        (3, 3) => (0, md.mul(&b)),
                        (1, 2) | (2, 1) => (3, FieldElem::from_int(ring, 1)),
                        (1, 3) | (3, 1) => (2, md.clone()),
                        (2, 3) | (3, 2) => (1, b.clone()),
                        _ => unreachable!(),
                    };
                    r.c[idx] = r.c[idx].add(&prod.mul(&scale));
                }
            }
            r
        }
    }

    /// The four matrix entries of a representative, symbolically.
    fn entries(m: &UnitaryRep) -> [SymK; 4] {
        let ring = m.ring();
        let zero = FieldElem::zero(ring);
        let m11 = SymK::new(&m.d, &m.b, [m.x1.clone(), m.x2.clone(), zero.clone(), zero.clone()]);
        let m12 = SymK::new(&m.d, &m.b, [zero.clone(), zero.clone(), m.y1.clone(), m.y2.clone()]);
        let m21 = SymK::new(&m.d, &m.b, [zero.clone(), zero.clone(), m.y1.neg(), m.y2.clone()]);
        let m22 = SymK::new(&m.d, &m.b, [m.x1.clone(), m.x2.neg(), zero.clone(), zero.clone()]);
        [m11, m12, m21, m22]
    }

    /// Symbolic 2×2 product, then read the coordinates back off the entries.
    fn symbolic_mul(m: &UnitaryRep, n: &UnitaryRep) -> UnitaryRep {
        let a = entries(m);
        let c = entries(n);
        let p11 = a[0].mul(&c[0]).add(&a[1].mul(&c[2]));
        let p12 = a[0].mul(&c[1]).add(&a[1].mul(&c[3]));
        let p21 = a[2].mul(&c[0]).add(&a[3].mul(&c[2]));
        let p22 = a[2].mul(&c[1]).add(&a[3].mul(&c[3]));
        // p11 = x₁ + x₂s, p12 = y₁t + y₂st, and p22/p21 must mirror them
        assert!(p11.c[2].is_zero() && p11.c[3].is_zero(), "m11 outside K");
        assert!(p12.c[0].is_zero() && p12.c[1].is_zero(), "m12 outside K√b");
        assert_eq!(p22.c[0], p11.c[0]);
        assert_eq!(p22.c[1], p11.c[1].neg());
        assert_eq!(p21.c[2], p12.c[2].neg());
        assert_eq!(p21.c[3], p12.c[3]);
        UnitaryRep {
            d: m.d.clone(),
            b: m.b.clone(),
            x1: p11.c[0].clone(),
            x2: p11.c[1].clone(),
            y1: p12.c[2].clone(),
            y2: p12.c[3].clone(),
        }
    }

    fn one_f(ring: Ring) -> FieldElem {
        FieldElem::from_int(ring, 1)
    }

    #[test]
    fn v_gate_and_identity_images() {
        // I + 2iZ = diag(1+2i, 1-2i) over D = b = 1: x₁ = 1, x₂ = 2... with
        // the (re, im) convention: α-form not needed, set coordinates directly
        let d = one_f(Ring::Rational);
        let b = one_f(Ring::Rational);
        let m = UnitaryRep {
            d: d.clone(),
            b: b.clone(),
            x1: one_f(Ring::Rational),
            x2: FieldElem::from_int(Ring::Rational, 2),
            y1: FieldElem::zero(Ring::Rational),
            y2: FieldElem::zero(Ring::Rational),
        };
        let q = m.kappa();
        assert_eq!(q, Quaternion::from_i64(Ring::Rational, [(1, 0, 1), (2, 0, 1), (0, 0, 1), (0, 0, 1)]));
        assert_eq!(m.det(), FieldElem::from_int(Ring::Rational, 5));
        assert_eq!(m.tr(), FieldElem::from_int(Ring::Rational, 2));
        let id = diag_gate_rep(&d, &b, &one_f(Ring::Rational), &FieldElem::zero(Ring::Rational)).unwrap();
        // diag(1, 1) is represented by 2·I ↦ quaternion 2 (projectively 1)
        assert_eq!(id.kappa(), Quaternion::scalar(FieldElem::from_int(Ring::Rational, 2)));
    }

    #[test]
    fn t_gate_representative_over_sqrt2() {
        // α = ζ₈ = (√2/2)(1 + i): re = im = w/2 over F = Q(√2), D = 1, b = 1
        let d = one_f(Ring::Sqrt2);
        let b = one_f(Ring::Sqrt2);
        let half_w = FieldElem::from_i64(Ring::Sqrt2, 0, 1, 2);
        let m = diag_gate_rep(&d, &b, &half_w, &half_w).unwrap();
        assert_eq!(m.x1, FieldElem::from_i64(Ring::Sqrt2, 2, 1, 2)); // 1 + √2/2
        assert_eq!(m.x2, half_w.neg());
        // efter √2-rescaling the quaternion is (1+√2) - i
        let q = m.kappa().scale(&FieldElem::from_i64(Ring::Sqrt2, 0, 1, 1));
        assert_eq!(
            q,
            Quaternion::new([
                FieldElem::from_i64(Ring::Sqrt2, 1, 1, 1),
                FieldElem::from_int(Ring::Sqrt2, -1),
                FieldElem::zero(Ring::Sqrt2),
                FieldElem::zero(Ring::Sqrt2),
            ])
        );
        // det of the rescaled matrix = nrd = √2²·(2+√2)/... = 4+2√2
        let alg = m.algebra();
        assert_eq!(alg.nrd(&q), FieldElem::from_i64(Ring::Sqrt2, 4, 2, 1));
        // α = -1 is the excluded case; the Z-representative κ-images to i
        assert!(diag_gate_rep(&d, &b, &FieldElem::from_int(Ring::Sqrt2, -1), &FieldElem::zero(Ring::Sqrt2)).is_err());
        assert_eq!(pauli_z_rep(&d, &b).kappa(), Quaternion::basis_vector(Ring::Sqrt2, 1));
    }

    fn random_field(rng: &mut impl Rng, ring: Ring) -> FieldElem {
        let a = rng.gen_range(-6i64..=6);
        let b = if ring == Ring::Rational { 0 } else { rng.gen_range(-4i64..=4) };
        let den = rng.gen_range(1i64..=3);
        FieldElem::from_i64(ring, a, b, den)
    }

    fn random_rep(rng: &mut impl Rng, ring: Ring, d: &FieldElem, b: &FieldElem) -> UnitaryRep {
        UnitaryRep {
            d: d.clone(),
            b: b.clone(),
            x1: random_field(rng, ring),
            x2: random_field(rng, ring),
            y1: random_field(rng, ring),
            y2: random_field(rng, ring),
        }
    }

    #[test]
    fn kappa_is_multiplicative_and_preserves_det_tr_dagger() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for ring in [Ring::Rational, Ring::Sqrt2, Ring::Phi] {
            // a definite and a generic parameter choice per ring
            let params = [
                (one_f(ring), one_f(ring)),
                (FieldElem::from_int(ring, 2), FieldElem::from_int(ring, 3)),
            ];
            for (d, b) in params {
                for _ in 0..1250 {
                    let m = random_rep(&mut rng, ring, &d, &b);
                    let n = random_rep(&mut rng, ring, &d, &b);
                    let alg = m.algebra();
                    // det/tr correspondences and conjugate-transpose
                    assert_eq!(m.det(), alg.nrd(&m.kappa()));
                    assert_eq!(m.tr(), m.kappa().trd());
                    assert_eq!(m.dagger().kappa(), m.kappa().conj());
                    // multiplicativity against the symbolic 2×2 product
                    let sym = symbolic_mul(&m, &n);
                    let via_kappa = m.mul(&n);
                    assert_eq!(sym, via_kappa);
                    assert_eq!(
                        via_kappa.kappa(),
                        alg.mul(&m.kappa(), &n.kappa())
                    );
                }
            }
        }
    }

    #[test]
    fn projective_scaling_is_sound() {
        let ring = Ring::Sqrt2;
        let d = one_f(ring);
        let b = one_f(ring);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let m = random_rep(&mut rng, ring, &d, &b);
            let beta = loop {
                let x = random_field(&mut rng, ring);
                if !x.is_zero() {
                    break x;
                }
            };
            let scaled = kappa_inverse(&d, &b, &m.kappa().scale(&beta));
            // proportional matrices: every coordinate scales by β, and the
            // density-matrix ratio β² is totally positive
            assert_eq!(scaled, m.scale(&beta));
            assert!(beta.mul(&beta).is_totally_positive());
        }
    }

    #[test]
    fn rescaling_examples() {
        let hur = hurwitz_order();
        let half = FieldElem::from_i64(Ring::Rational, 1, 0, 2);
        // already integral → β = 1
        let q = Quaternion::from_i64(Ring::Rational, [(1, 0, 1), (2, 0, 1), (0, 0, 1), (0, 0, 1)]);
        let (s, beta) = rescale_integral(&q, &hur);
        assert_eq!(beta, RingElem::one(Ring::Rational));
        assert_eq!(s, q);
        // the half-sum is a Hurwitz element → β = 1
        let omega = Quaternion::from_i64(Ring::Rational, [(1, 0, 2), (1, 0, 2), (1, 0, 2), (1, 0, 2)]);
        assert_eq!(rescale_integral(&omega, &hur).1, RingElem::one(Ring::Rational));
        // (1+i)/2 is not: β = 2
        let h = Quaternion::new([half.clone(), half.clone(), FieldElem::zero(Ring::Rational), FieldElem::zero(Ring::Rational)]);
        let (s, beta) = rescale_integral(&h, &hur);
        assert_eq!(beta, RingElem::int(Ring::Rational, 2));
        assert!(hur.contains(&s));
        // the unrescaled T-gate image is already in the √2-order: β = 1
        let o = sqrt2_maximal_order();
        let t = Quaternion::new([
            FieldElem::from_i64(Ring::Sqrt2, 2, 1, 2),
            FieldElem::from_i64(Ring::Sqrt2, 0, -1, 2),
            FieldElem::zero(Ring::Sqrt2),
            FieldElem::zero(Ring::Sqrt2),
        ]);
        assert_eq!(rescale_integral(&t, &o).1, RingElem::one(Ring::Sqrt2));
        // dividing by 2 forces β = 2 back (β is minimal, not just feasible)
        let t_half = t.scale(&FieldElem::from_i64(Ring::Sqrt2, 1, 0, 2));
        assert_eq!(rescale_integral(&t_half, &o).1, RingElem::int(Ring::Sqrt2, 2));
    }

    #[test]
    fn prime_support_selection_matches_gate_tables() {
        // V gates over the Hurwitz order → {5Z}
        let hur = hurwitz_order();
        let v_gates: Vec<Quaternion> = [[1, 2, 0, 0], [1, 0, 2, 0], [1, 0, 0, 2], [1, -2, 0, 0]]
            .iter()
            .map(|c| Quaternion::from_i64(Ring::Rational, [(c[0], 0, 1), (c[1], 0, 1), (c[2], 0, 1), (c[3], 0, 1)]))
            .collect();
        let s = select_s(&hur, &v_gates).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].p, BigInt::from(5));
        // T gate over the √2 order → {𝔭₂}
        let o = sqrt2_maximal_order();
        let t = Quaternion::new([
            FieldElem::from_i64(Ring::Sqrt2, 2, 1, 2),
            FieldElem::from_i64(Ring::Sqrt2, 0, -1, 2),
            FieldElem::zero(Ring::Sqrt2),
            FieldElem::zero(Ring::Sqrt2),
        ]);
        let s = select_s(&o, std::slice::from_ref(&t)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].p, BigInt::from(2));
        // T and V₁ together → {𝔭₂, 5Z[√2]}
        let v1 = Quaternion::from_i64(Ring::Sqrt2, [(1, 0, 1), (2, 0, 1), (0, 0, 1), (0, 0, 1)]);
        let s = select_s(&o, &[t, v1]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].p, BigInt::from(2));
        assert_eq!(s[1].p, BigInt::from(5));
        // units and central scalars contribute nothing
        let s = select_s(&hur, &[Quaternion::from_i64(Ring::Rational, [(3, 0, 1), (0, 0, 1), (0, 0, 1), (0, 0, 1)])]).unwrap();
        assert!(s.is_empty());
    }
}
