//! Exact lattice-point enumeration in totally definite orders.
//!
//! The reduced norm induces, via x ↦ Tr_{F/Q}(trd(x·conj(x))), a positive
//! definite integral quadratic form on the Z-basis of an order.  Elements of
//! a prescribed reduced norm n₀ lie on the sphere of squared radius
//! Tr(2·n₀); they are enumerated with the Fincke–Pohst strategy using exact
//! rational arithmetic throughout, then filtered by exact norm comparison.

// Indexed loops mirror the row/column arithmetic; iterator chains obscure it.
#![allow(clippy::needless_range_loop)]

use crate::linalg::Lattice;
use crate::quat::{QuatAlgebra, QuatOrder, Quaternion};
use crate::rings::{FieldElem, Ring, RingElem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Z-basis of an R-lattice viewed as a Z-lattice: the four basis rows,
/// followed by their multiples by w for quadratic coefficient rings.
fn z_basis(lat: &Lattice) -> Vec<Quaternion> {
    let ring = lat.ring;
    let mut out: Vec<Quaternion> = (0..4).map(|r| Quaternion::new(lat.row_field(r))).collect();
    if ring != Ring::Rational {
        let w = RingElem::from_i64(ring, 0, 1);
        for r in 0..4 {
            out.push(out[r].scale_ring(&w));
        }
    }
    out
}

/// Trace of a field element down to Q as a rational number.
fn trace_to_q(x: &FieldElem) -> BigRational {
    let t = match x.ring() {
        Ring::Rational => x.clone(),
        _ => x.trace(),
    };
    BigRational::new(t.numerator().a.clone(), t.denominator().clone())
}

/// Gram matrix of the pairing trd(x·conj(y)) composed with Tr_{F/Q}, on the
/// Z-basis.
fn gram_matrix(alg: &QuatAlgebra, basis: &[Quaternion]) -> Vec<Vec<BigRational>> {
    let n = basis.len();
    let mut g = vec![vec![BigRational::zero(); n]; n];
    for r in 0..n {
        for c in 0..=r {
            let v = trace_to_q(&alg.pairing(&basis[r], &basis[c]));
            g[r][c] = v;
            g[c][r] = g[r][c].clone();
        }
    }
    g
}

/// Quadratic-completion data: Q(z) = Σᵢ d[i]·(zᵢ + Σ_{j>i} u[i][j]·zⱼ)².
struct Completed {
    d: Vec<BigRational>,
    u: Vec<Vec<BigRational>>,
}

fn complete_squares(g: &[Vec<BigRational>]) -> Completed {
    let n = g.len();
    let mut q: Vec<Vec<BigRational>> = g.to_vec();
    let mut d = vec![BigRational::zero(); n];
    let mut u = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        d[i] = q[i][i].clone();
        assert!(
            d[i].is_positive(),
            "norm form must be positive definite (totally definite algebra)"
        );
        for j in (i + 1)..n {
            u[i][j] = &q[i][j] / &d[i];
        }
        for r in (i + 1)..n {
            for c in (i + 1)..n {
                let delta = &q[r][i] * &q[i][c] / &d[i];
                q[r][c] = &q[r][c] - delta;
            }
        }
    }
    Completed { d, u }
}

fn floor_big(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// Visit every z ∈ Zⁿ with Q(z) = c exactly; the callback returns false to
/// stop early.  Enumeration order is deterministic.
fn visit_sphere(comp: &Completed, c: &BigRational, visit: &mut dyn FnMut(&[BigInt]) -> bool) {
    let n = comp.d.len();
    let mut z = vec![BigInt::zero(); n];
    fn rec(
        comp: &Completed,
        c: &BigRational,
        level: isize,
        z: &mut [BigInt],
        partial: BigRational,
        visit: &mut dyn FnMut(&[BigInt]) -> bool,
    ) -> bool {
        if level < 0 {
            if &partial == c {
                return visit(z);
            }
            return true;
        }
        let i = level as usize;
        let n = comp.d.len();
        let mut center = BigRational::zero();
        for j in (i + 1)..n {
            center += &comp.u[i][j] * BigRational::from(z[j].clone());
        }
        let budget = c - &partial;
        if budget.is_negative() {
            return true;
        }
        // |z + center| ≤ sqrt(budget / d_i): bound the integer range, then
        // keep only values passing the exact inequality
        let t = &budget / &comp.d[i];
        let bound: BigInt = floor_big(&t).sqrt() + BigInt::one();
        let lo: BigInt = floor_big(&-&center) - &bound;
        let hi: BigInt = floor_big(&-&center) + &bound + BigInt::one();
        let mut zi = lo;
        while zi <= hi {
            let shifted = BigRational::from(zi.clone()) + &center;
            let term = &comp.d[i] * &shifted * &shifted;
            if term <= budget {
                z[i] = zi.clone();
                let cont = rec(comp, c, level - 1, z, &partial + &term, visit);
                z[i] = BigInt::zero();
                if !cont {
                    return false;
                }
            }
            zi += BigInt::one();
        }
        true
    }
    rec(comp, c, n as isize - 1, &mut z, BigRational::zero(), visit);
}

fn combine(basis: &[Quaternion], z: &[BigInt], ring: Ring) -> Quaternion {
    let mut acc = Quaternion::zero(ring);
    for (zi, b) in z.iter().zip(basis.iter()) {
        if !zi.is_zero() {
            acc = acc.add(&b.scale_ring(&RingElem::new(ring, zi.clone(), BigInt::zero())));
        }
    }
    acc
}

fn search(
    alg: &QuatAlgebra,
    lat: &Lattice,
    n0: &RingElem,
    mut found: impl FnMut(Quaternion) -> bool,
) {
    assert!(
        alg.is_definite(),
        "norm enumeration requires a totally definite algebra"
    );
    if n0.is_zero() || !n0.is_totally_positive() {
        return;
    }
    let basis = z_basis(lat);
    let comp = complete_squares(&gram_matrix(alg, &basis));
    let target = FieldElem::from_ring(n0.clone());
    // Q(x) = Tr(2·nrd(x))
    let c = trace_to_q(&target) * BigRational::from(BigInt::from(2));
    let ring = lat.ring;
    visit_sphere(&comp, &c, &mut |z| {
        let x = combine(&basis, z, ring);
        if alg.nrd(&x) == target {
            return found(x);
        }
        true
    });
}

/// All elements of the lattice with reduced norm exactly n₀, sorted into a
/// canonical (structural) order.  Empty when n₀ is zero or not totally
/// positive.
pub fn elements_of_norm_in(alg: &QuatAlgebra, lat: &Lattice, n0: &RingElem) -> Vec<Quaternion> {
    let mut out = Vec::new();
    search(alg, lat, n0, |x| {
        out.push(x);
        true
    });
    out.sort();
    out
}

/// Some lattice element of reduced norm exactly n₀, if one exists (early exit).
pub fn some_element_of_norm_in(
    alg: &QuatAlgebra,
    lat: &Lattice,
    n0: &RingElem,
) -> Option<Quaternion> {
    let mut out = None;
    search(alg, lat, n0, |x| {
        out = Some(x);
        false
    });
    out
}

/// All elements of the order with reduced norm exactly n₀.
pub fn elements_of_norm(order: &QuatOrder, n0: &RingElem) -> Vec<Quaternion> {
    elements_of_norm_in(&order.alg, &order.lattice, n0)
}

/// Some element of the order with reduced norm exactly n₀ (early exit).
pub fn some_element_of_norm(order: &QuatOrder, n0: &RingElem) -> Option<Quaternion> {
    some_element_of_norm_in(&order.alg, &order.lattice, n0)
}

/// The finite group of norm-one units of the order.
pub fn norm_one_units(order: &QuatOrder) -> Vec<Quaternion> {
    elements_of_norm(order, &RingElem::one(order.ring()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{hurwitz_order, sqrt2_maximal_order};

    #[test]
    fn hurwitz_element_counts() {
        let o = hurwitz_order();
        // unit group of the Hurwitz order has 24 elements
        let units = norm_one_units(&o);
        assert_eq!(units.len(), 24);
        for u in &units {
            assert_eq!(o.alg.nrd(u), FieldElem::from_int(Ring::Rational, 1));
            assert!(o.contains(u));
        }
        // norm-2 and norm-5 spheres
        assert_eq!(elements_of_norm(&o, &RingElem::int(Ring::Rational, 2)).len(), 24);
        assert_eq!(elements_of_norm(&o, &RingElem::int(Ring::Rational, 5)).len(), 144);
    }

    #[test]
    fn sqrt2_order_has_48_units() {
        let o = sqrt2_maximal_order();
        let units = norm_one_units(&o);
        assert_eq!(units.len(), 48);
        for u in &units {
            assert_eq!(o.alg.nrd(u), FieldElem::one(Ring::Sqrt2));
            assert!(o.contains(u));
        }
        // closed under negation and inversion
        for u in &units {
            assert!(units.binary_search(&u.neg()).is_ok());
            let inv = u.conj(); // nrd = 1 so the inverse is the conjugate
            assert!(units.binary_search(&inv).is_ok());
        }
    }

    #[test]
    fn sqrt2_norm_sphere() {
        let o = sqrt2_maximal_order();
        // 2+√2 generates 𝔭₂ (up to units); 3 right ideals × 48 units
        let n0 = RingElem::from_i64(Ring::Sqrt2, 2, 1);
        let els = elements_of_norm(&o, &n0);
        assert_eq!(els.len(), 144);
        for x in &els {
            assert_eq!(o.alg.nrd(x), FieldElem::from_ring(n0.clone()));
        }
    }

    #[test]
    fn rejects_unreachable_norms() {
        let o = sqrt2_maximal_order();
        // 1+√2 is not totally positive, so nothing has that norm
        assert!(elements_of_norm(&o, &RingElem::from_i64(Ring::Sqrt2, 1, 1)).is_empty());
        assert!(some_element_of_norm(&o, &RingElem::from_i64(Ring::Sqrt2, 1, 1)).is_none());
        // zero norm
        assert!(elements_of_norm(&o, &RingElem::from_i64(Ring::Sqrt2, 0, 0)).is_empty());
    }

    #[test]
    fn early_exit_agrees_with_full_enumeration() {
        let o = hurwitz_order();
        for n in 1..=10i64 {
            let n0 = RingElem::int(Ring::Rational, n);
            let all = elements_of_norm(&o, &n0);
            let one = some_element_of_norm(&o, &n0);
            assert_eq!(all.is_empty(), one.is_none(), "norm {}", n);
            if let Some(x) = one {
                assert_eq!(o.alg.nrd(&x), FieldElem::from_ring(n0));
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let o = sqrt2_maximal_order();
        let a = norm_one_units(&o);
        let b = norm_one_units(&o);
        assert_eq!(a, b);
    }
}
