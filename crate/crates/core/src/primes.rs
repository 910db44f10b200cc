//! Prime ideals of the coefficient ring, finite quotient rings R/𝔭ᵉ, and
//! projective lines over them.
//!
//! Everything here is exact and deterministic: quotient rings are represented
//! by the 2×2 Hermite normal form of the modulus lattice in the basis (1, w),
//! so residue representatives form an explicit rectangular grid and the
//! enumeration order of P¹ points is reproducible across runs.

use crate::error::Error;
use crate::rings::{Ring, RingElem};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Largest trial divisor used when factoring reduced norms.  Primes this size
/// never appear in a gate-set configuration, so anything bigger is reported as
/// an unsupported norm instead of being hunted for.
const TRIAL_LIMIT: u64 = 1_000_000;

/// A prime ideal 𝔭 of the coefficient ring, lying over the rational prime p.
/// Since all supported rings are PIDs the ideal is carried by its canonical
/// generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub ring: Ring,
    /// Rational prime below.
    pub p: BigInt,
    /// Canonical generator of 𝔭.
    pub gen: RingElem,
    /// Ramification index e of p in the ring.
    pub e: u32,
    /// Residue degree f, so Nm(𝔭) = p^f.
    pub f: u32,
}

impl PrimeIdeal {
    /// Absolute norm |R/𝔭| = p^f.
    pub fn abs_norm(&self) -> BigInt {
        self.p.pow(self.f)
    }

    /// 𝔭-adic valuation of a nonzero ring element.
    pub fn valuation(&self, x: &RingElem) -> u32 {
        x.valuation(&self.gen)
    }

    pub fn divides(&self, x: &RingElem) -> bool {
        self.gen.divides(x)
    }
}

/// Discriminant of the coefficient ring over Z.
pub fn ring_discriminant(ring: Ring) -> i64 {
    match ring {
        Ring::Rational => 1,
        Ring::Sqrt2 => 8,
        Ring::Phi => 5,
    }
}

/// Factor the rational prime p in the coefficient ring.  Returns the primes
/// above p with generators in a deterministic order (split primes sorted by
/// canonical generator).
pub fn factor_rational_prime(ring: Ring, p: &BigInt) -> Result<Vec<PrimeIdeal>, Error> {
    if p.sign() != num_bigint::Sign::Plus || p < &BigInt::from(2) {
        return Err(Error::Config(format!("{} is not a prime", p)));
    }
    if p > &BigInt::from(TRIAL_LIMIT) {
        return Err(Error::NormNotSupported { prime: p.to_string() });
    }
    if ring == Ring::Rational {
        return Ok(vec![PrimeIdeal {
            ring,
            p: p.clone(),
            gen: RingElem::new(ring, p.clone(), BigInt::zero()),
            e: 1,
            f: 1,
        }]);
    }
    let pu = u64::try_from(p).unwrap();
    // roots of the defining polynomial (x²-2 resp. x²-x-1) modulo p
    let mut roots = Vec::new();
    for r in 0..pu {
        let val = match ring {
            Ring::Sqrt2 => (r as i128) * (r as i128) - 2,
            Ring::Phi => (r as i128) * (r as i128) - r as i128 - 1,
            Ring::Rational => unreachable!(),
        };
        if val.rem_euclid(pu as i128) == 0 {
            roots.push(r);
        }
    }
    let ramified = ring_discriminant(ring) % (pu as i64) == 0;
    let pe = RingElem::new(ring, p.clone(), BigInt::zero());
    let prime_for_root = |r: u64| {
        // 𝔭 = (p, w - r)
        let wr = RingElem::new(ring, -BigInt::from(r), BigInt::one());
        pe.gcd(&wr)
    };
    let out = if ramified {
        assert_eq!(roots.len(), 1, "ramified prime must have a double root");
        vec![PrimeIdeal {
            ring,
            p: p.clone(),
            gen: prime_for_root(roots[0]),
            e: 2,
            f: 1,
        }]
    } else if roots.is_empty() {
        // inert
        vec![PrimeIdeal { ring, p: p.clone(), gen: pe.clone(), e: 1, f: 2 }]
    } else {
        assert_eq!(roots.len(), 2, "split prime must have two roots");
        let mut gens: Vec<RingElem> = roots.iter().map(|&r| prime_for_root(r)).collect();
        gens.sort();
        gens.iter()
            .map(|g| PrimeIdeal { ring, p: p.clone(), gen: g.clone(), e: 1, f: 1 })
            .collect()
    };
    for pr in &out {
        debug_assert_eq!(pr.gen.norm().abs(), pr.p.pow(pr.f));
    }
    Ok(out)
}

/// Factor |n| into rational primes by trial division.  Cofactors that cannot
/// be certified prime (≥ TRIAL_LIMIT²) are reported as unsupported norms —
/// such primes can never belong to a configured gate set.
pub fn factor_int(n: &BigInt) -> Result<Vec<(BigInt, u32)>, Error> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "factoring zero");
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut push = |p: BigInt, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let db = BigInt::from(d);
        if &db * &db > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = num_integer::div_rem(n.clone(), db.clone());
            if r.is_zero() {
                n = q;
                e += 1;
            } else {
                break;
            }
        }
        push(db, e);
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        // no divisor ≤ TRIAL_LIMIT, so n prime iff n < TRIAL_LIMIT²
        if n < BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) {
            push(n, 1);
        } else {
            return Err(Error::NormNotSupported { prime: n.to_string() });
        }
    }
    Ok(out)
}

/// Factor the principal ideal (x) of the coefficient ring into prime ideals.
pub fn factor_ring_elem(x: &RingElem) -> Result<Vec<(PrimeIdeal, u32)>, Error> {
    assert!(!x.is_zero(), "factoring the zero ideal");
    let mut out = Vec::new();
    for (p, ep) in factor_int(&x.norm())? {
        let mut seen = 0;
        for pr in factor_rational_prime(x.ring, &p)? {
            let v = pr.valuation(x);
            if v > 0 {
                seen += v * pr.f;
                out.push((pr, v));
            }
        }
        assert_eq!(seen, ep, "valuations must account for the full norm at {}", p);
    }
    Ok(out)
}

/// The finite quotient ring R/𝔭ᵉ, with residue representatives the grid
/// {a + b·w : 0 ≤ a < d1, 0 ≤ b < d2} determined by the Hermite normal form
/// rows (d1, 0), (c, d2) of the modulus lattice.
#[derive(Debug, Clone)]
pub struct QuotRing {
    pub prime: PrimeIdeal,
    /// Exponent e of the modulus 𝔭ᵉ.
    pub exp: u32,
    /// Generator of 𝔭ᵉ.
    pub modulus: RingElem,
    d1: BigInt,
    c: BigInt,
    d2: BigInt,
}

impl QuotRing {
    pub fn new(prime: &PrimeIdeal, exp: u32) -> QuotRing {
        assert!(exp >= 1);
        let ring = prime.ring;
        let modulus = prime.gen.pow(exp);
        // Z-lattice spanned by modulus and w·modulus in coordinates (a, b)
        let rows = match ring {
            Ring::Rational => {
                vec![(modulus.a.clone(), BigInt::zero()), (BigInt::zero(), BigInt::one())]
            }
            _ => {
                let w = RingElem::new(ring, BigInt::zero(), BigInt::one());
                let wm = modulus.mul(&w);
                vec![(modulus.a.clone(), modulus.b.clone()), (wm.a.clone(), wm.b.clone())]
            }
        };
        let (d1, c, d2) = hnf_2x2(rows);
        QuotRing { prime: prime.clone(), exp, modulus, d1, c, d2 }
    }

    /// Number of residue classes, |R/𝔭ᵉ| = Nm(𝔭)ᵉ.
    pub fn size(&self) -> BigInt {
        &self.d1 * &self.d2
    }

    /// Canonical representative of x modulo 𝔭ᵉ.
    pub fn reduce(&self, x: &RingElem) -> RingElem {
        assert_eq!(x.ring, self.prime.ring);
        let t = num_integer::Integer::div_floor(&x.b, &self.d2);
        let a = &x.a - &t * &self.c;
        let b = &x.b - &t * &self.d2;
        let a = num_integer::Integer::mod_floor(&a, &self.d1);
        RingElem::new(x.ring, a, b)
    }

    /// All residue representatives, in grid order (a outer, b inner).
    pub fn elements(&self) -> Vec<RingElem> {
        let mut out = Vec::new();
        let mut a = BigInt::zero();
        while a < self.d1 {
            let mut b = BigInt::zero();
            while b < self.d2 {
                out.push(RingElem::new(self.prime.ring, a.clone(), b.clone()));
                b += 1;
            }
            a += 1;
        }
        out
    }

    pub fn is_zero(&self, x: &RingElem) -> bool {
        self.reduce(x).is_zero()
    }

    pub fn eq(&self, x: &RingElem, y: &RingElem) -> bool {
        self.reduce(x) == self.reduce(y)
    }

    /// Units of R/𝔭ᵉ are the classes whose lifts avoid 𝔭.
    pub fn is_unit(&self, x: &RingElem) -> bool {
        !self.prime.divides(&self.reduce(x))
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        self.reduce(&x.add(y))
    }

    pub fn sub(&self, x: &RingElem, y: &RingElem) -> RingElem {
        self.reduce(&x.sub(y))
    }

    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        self.reduce(&x.mul(y))
    }

    pub fn neg(&self, x: &RingElem) -> RingElem {
        self.reduce(&x.neg())
    }

    /// Multiplicative inverse modulo 𝔭ᵉ, or None for a non-unit.
    pub fn inv(&self, x: &RingElem) -> Option<RingElem> {
        let (g, u, _) = self.reduce(x).egcd(&self.modulus);
        if g.is_one() {
            Some(self.reduce(&u))
        } else {
            None
        }
    }

    pub fn pow(&self, x: &RingElem, mut e: u64) -> RingElem {
        let mut base = self.reduce(x);
        let mut acc = self.reduce(&RingElem::one(self.prime.ring));
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

/// HNF of the row lattice of a 2-column integer matrix, returned as
/// (d1, c, d2) for rows (d1, 0) and (c, d2) with d1, d2 > 0 and 0 ≤ c < d1.
/// The input rows must span a finite-index sublattice of Z².
fn hnf_2x2(mut rows: Vec<(BigInt, BigInt)>) -> (BigInt, BigInt, BigInt) {
    use num_integer::Integer;
    // clear the second column down to one row by gcd elimination
    loop {
        rows.retain(|(a, b)| !a.is_zero() || !b.is_zero());
        let mut nonzero: Vec<usize> =
            (0..rows.len()).filter(|&i| !rows[i].1.is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        nonzero.sort_by_key(|&i| rows[i].1.abs());
        let (pi, oi) = (nonzero[0], nonzero[1]);
        let q = rows[oi].1.div_floor(&rows[pi].1);
        rows[oi] = (
            &rows[oi].0 - &q * &rows[pi].0,
            &rows[oi].1 - &q * &rows[pi].1,
        );
    }
    let pivot2 = rows
        .iter()
        .position(|(_, b)| !b.is_zero())
        .expect("modulus lattice must have full rank");
    let (mut c, mut d2) = rows[pivot2].clone();
    if d2.sign() == num_bigint::Sign::Minus {
        c = -c;
        d2 = -d2;
    }
    let mut d1 = BigInt::zero();
    for (i, (a, _)) in rows.iter().enumerate() {
        if i != pivot2 {
            d1 = d1.gcd(a);
        }
    }
    assert!(!d1.is_zero(), "modulus lattice must have full rank");
    c = c.mod_floor(&d1);
    (d1, c, d2)
}

/// Points of the projective line P¹(R/𝔭ᵉ) as normalized pairs (x : y), in a
/// deterministic order: first (1 : y) over all residues y in grid order, then
/// (x : 1) for the non-unit residues x.  Every pair with a unit coordinate is
/// proportional to exactly one listed point.
pub fn projective_line(q: &QuotRing) -> Vec<(RingElem, RingElem)> {
    let one = RingElem::one(q.prime.ring);
    let mut pts = Vec::new();
    for y in q.elements() {
        pts.push((one.clone(), y));
    }
    for x in q.elements() {
        if !q.is_unit(&x) {
            pts.push((x, one.clone()));
        }
    }
    pts
}

/// Number of points of P¹(R/𝔭ᵉ): Nm(𝔭)^{e-1}·(Nm(𝔭)+1).
pub fn projective_line_size(prime: &PrimeIdeal, exp: u32) -> BigInt {
    let q = prime.abs_norm();
    q.pow(exp - 1) * (q + 1)
}
