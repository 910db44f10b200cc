//! Right ideals of quaternion orders, represented as full-rank lattices.
//!
//! Everything an ideal-theoretic synthesis step needs lives here: products,
//! conjugates and inverses, left/right orders, reduced norms, stripping an
//! ideal down to its primitive part, the residue splitting O/𝔭O ≅ M₂(k) at
//! an unramified prime with its deterministic labelling of the maximal right
//! ideals by P¹(k), and principal generator search.  All ideals handled here
//! are anchored at a maximal order, hence invertible, which justifies the
//! closed-form order and inverse computations.

use crate::enumerate::{elements_of_norm_in, some_element_of_norm_in};
use crate::error::Error;
use crate::linalg::Lattice;
use crate::primes::{projective_line, PrimeIdeal, QuotRing};
use crate::quat::{QuatAlgebra, QuatOrder, Quaternion};
use crate::rings::{FieldElem, RingElem};
use num_bigint::BigInt;
use std::cmp::Ordering;

/// A lattice ideal in the algebra.  Which side it is an ideal on is carried
/// by how it was built; the order operations below recover its two orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub alg: QuatAlgebra,
    pub lattice: Lattice,
}

impl Ideal {
    /// The right ideal qO.
    pub fn right_principal(order: &QuatOrder, q: &Quaternion) -> Ideal {
        assert!(!q.is_zero(), "zero does not generate an ideal");
        Ideal::from_right_generators(order, std::slice::from_ref(q))
    }

    /// The left ideal Oq.
    pub fn left_principal(order: &QuatOrder, q: &Quaternion) -> Ideal {
        assert!(!q.is_zero(), "zero does not generate an ideal");
        let rows = order
            .basis()
            .iter()
            .map(|b| order.alg.mul(b, q).c)
            .collect();
        Ideal {
            alg: order.alg.clone(),
            lattice: Lattice::from_field_rows(order.ring(), rows),
        }
    }

    /// The right ideal Σ gᵢ·O.
    pub fn from_right_generators(order: &QuatOrder, gens: &[Quaternion]) -> Ideal {
        assert!(!gens.is_empty());
        let mut rows = Vec::new();
        for g in gens {
            for b in order.basis() {
                rows.push(order.alg.mul(g, b).c);
            }
        }
        Ideal {
            alg: order.alg.clone(),
            lattice: Lattice::from_field_rows(order.ring(), rows),
        }
    }

    /// The order itself, as the unit ideal.
    pub fn unit_ideal(order: &QuatOrder) -> Ideal {
        Ideal { alg: order.alg.clone(), lattice: order.lattice.clone() }
    }

    pub fn ring(&self) -> crate::rings::Ring {
        self.alg.ring
    }

    pub fn basis_quaternions(&self) -> [Quaternion; 4] {
        std::array::from_fn(|r| Quaternion::new(self.lattice.row_field(r)))
    }

    pub fn contains(&self, q: &Quaternion) -> bool {
        self.lattice.contains(&q.c)
    }

    /// Lattice product: the span of all pairwise basis products.  This is the
    /// ideal product whenever the right order of `self` matches the left
    /// order of `other`.
    pub fn mul(&self, other: &Ideal) -> Ideal {
        let a = self.basis_quaternions();
        let b = other.basis_quaternions();
        let mut rows = Vec::with_capacity(16);
        for x in &a {
            for y in &b {
                rows.push(self.alg.mul(x, y).c);
            }
        }
        Ideal {
            alg: self.alg.clone(),
            lattice: Lattice::from_field_rows(self.ring(), rows),
        }
    }

    /// Left-multiply the ideal by a quaternion: q·I.
    pub fn mul_left(&self, q: &Quaternion) -> Ideal {
        assert!(!q.is_zero());
        let rows = self
            .basis_quaternions()
            .iter()
            .map(|b| self.alg.mul(q, b).c)
            .collect();
        Ideal { alg: self.alg.clone(), lattice: Lattice::from_field_rows(self.ring(), rows) }
    }

    /// Conjugate ideal, basiswise.
    pub fn conj(&self) -> Ideal {
        let rows = self.basis_quaternions().iter().map(|b| b.conj().c).collect();
        Ideal { alg: self.alg.clone(), lattice: Lattice::from_field_rows(self.ring(), rows) }
    }

    pub fn scale(&self, s: &FieldElem) -> Ideal {
        Ideal { alg: self.alg.clone(), lattice: self.lattice.scale(s) }
    }

    /// Reduced norm of the ideal: the canonical generator of the fractional
    /// R-ideal generated by nrd(x) over x in the lattice.
    pub fn nrd(&self) -> FieldElem {
        let b = self.basis_quaternions();
        let mut vals: Vec<FieldElem> = Vec::new();
        for i in 0..4 {
            vals.push(self.alg.nrd(&b[i]));
            for j in (i + 1)..4 {
                vals.push(self.alg.nrd(&b[i].add(&b[j])));
            }
        }
        // common denominator, R-gcd of numerators, reduce back
        let mut den = BigInt::from(1u32);
        for v in &vals {
            den = num_integer::Integer::lcm(&den, v.denominator());
        }
        let mut g = RingElem::zero(self.ring());
        for v in &vals {
            let scaled = v.numerator().mul_int(&(&den / v.denominator()));
            g = if g.is_zero() { scaled } else { g.gcd(&scaled) };
        }
        assert!(!g.is_zero());
        FieldElem::new(g.canonical_associate(), den)
    }

    /// Integral reduced norm (panics if the ideal is fractional).
    pub fn nrd_integral(&self) -> RingElem {
        self.nrd().to_ring()
    }

    /// Canonical generator of the fractional R-ideal I ∩ F.  In the
    /// anti-diagonal Hermite form, row 3 is the unique row supported on the
    /// scalar coordinate alone, so I ∩ F = (rows[3][0] / den)·R.
    pub fn intersect_base_ring(&self) -> FieldElem {
        FieldElem::new(
            self.lattice.rows[3][0].canonical_associate(),
            self.lattice.den.clone(),
        )
    }

    /// I⁻¹ = conj(I) / nrd(I); satisfies I·I⁻¹ = O_left(I), I⁻¹·I = O_right(I).
    pub fn inverse(&self) -> Ideal {
        self.conj().scale(&self.nrd().inv())
    }

    /// Left order {x : xI ⊆ I}, computed as I·conj(I)/nrd(I) (valid because
    /// ideals anchored at maximal orders are invertible).
    pub fn left_order(&self) -> Result<QuatOrder, Error> {
        let prod = self.mul(&self.conj()).scale(&self.nrd().inv());
        QuatOrder::new(self.alg.clone(), prod.lattice)
    }

    /// Right order {x : Ix ⊆ I} = conj(I)·I/nrd(I).
    pub fn right_order(&self) -> Result<QuatOrder, Error> {
        let prod = self.conj().mul(self).scale(&self.nrd().inv());
        QuatOrder::new(self.alg.clone(), prod.lattice)
    }

    /// Group index [O : I] for an integral ideal I ⊆ O.
    pub fn index_in_order(&self, order: &QuatOrder) -> BigInt {
        self.lattice.index_in(&order.lattice)
    }

    /// Is x·I ⊆ I for every x in the order (two-sidedness over that order)?
    pub fn is_two_sided_over(&self, order: &QuatOrder) -> bool {
        let b = self.basis_quaternions();
        order.basis().iter().all(|x| {
            b.iter().all(|y| self.contains(&self.alg.mul(x, y)))
        })
    }

    /// The connecting ideal O·O' (a left O-, right O'-ideal).
    pub fn connecting(o1: &QuatOrder, o2: &QuatOrder) -> Ideal {
        Ideal::unit_ideal(o1).mul(&Ideal::unit_ideal(o2))
    }
}

/// Central content of an integral ideal I ⊆ O: the canonical generator c of
/// the largest R-ideal with I ⊆ cO, together with I/c.
pub fn split_content(ideal: &Ideal, order: &QuatOrder) -> (RingElem, Ideal) {
    let mut g = RingElem::zero(order.ring());
    for b in ideal.basis_quaternions() {
        let coords = order
            .coordinates(&b)
            .expect("content split requires an integral ideal");
        for c in coords {
            g = if g.is_zero() { c } else { g.gcd(&c) };
        }
    }
    assert!(!g.is_zero());
    let g = g.canonical_associate();
    if g.is_one() {
        (g, ideal.clone())
    } else {
        let reduced = ideal.scale(&FieldElem::from_ring(g.clone()).inv());
        (g, reduced)
    }
}

/// The unique maximal right ideal above a prime 𝔭 that ramifies in the
/// algebra: P = {x ∈ O : nrd(x) ∈ 𝔭}.  It is two-sided and P² = 𝔭O.
pub fn ramified_maximal_ideal(order: &QuatOrder, p: &PrimeIdeal) -> Ideal {
    let k = QuotRing::new(p, 1);
    let mut gens: Vec<Quaternion> = Vec::new();
    // 𝔭O ⊆ P always
    let p_scalar = Quaternion::scalar(FieldElem::from_ring(p.gen.clone()));
    gens.push(p_scalar);
    // add every residue class of O/𝔭O whose norm lies in 𝔭
    for_each_residue(order, &k, &mut |x: &Quaternion| {
        let n = order.alg.nrd(x).to_ring();
        if p.divides(&n) {
            gens.push(x.clone());
        }
        true
    });
    let ideal = Ideal::from_right_generators(order, &gens);
    debug_assert_eq!(ideal.nrd_integral(), p.gen);
    ideal
}

/// Strip an integral right O-ideal to its primitive part: divide out the
/// central content and peel off any two-sided ramified factors for the primes
/// in `ramified`.  Returns (primitive ideal, content, ramified exponents).
pub fn primitive_part(
    ideal: &Ideal,
    order: &QuatOrder,
    ramified: &[PrimeIdeal],
) -> (Ideal, RingElem, Vec<(PrimeIdeal, u32)>) {
    let (mut content, mut cur) = split_content(ideal, order);
    let mut ram = Vec::new();
    for p in ramified {
        let pmax = ramified_maximal_ideal(order, p);
        let mut e = 0u32;
        loop {
            // I ⊆ P ⟺ P | I; peel via I·P⁻¹ = I·P/𝔭 (P is self-conjugate)
            if !cur.lattice.subset_of(&pmax.lattice) {
                break;
            }
            cur = cur
                .mul(&pmax)
                .scale(&FieldElem::from_ring(p.gen.clone()).inv());
            e += 1;
            // a full 𝔭O factor counts as content
            if e == 2 {
                content = content.mul(&p.gen).canonical_associate();
                e = 0;
            }
        }
        if e > 0 {
            ram.push((p.clone(), e));
        }
    }
    (cur, content, ram)
}

/// Visit one representative per class of O/𝔭O (coordinates running over the
/// residue grid of k in a fixed order).  The callback returns false to stop.
fn for_each_residue(
    order: &QuatOrder,
    k: &QuotRing,
    visit: &mut dyn FnMut(&Quaternion) -> bool,
) {
    let reps = k.elements();
    let n = reps.len();
    let basis = order.basis();
    let mut idx = [0usize; 4];
    loop {
        let mut x = Quaternion::zero(order.ring());
        for (i, b) in basis.iter().enumerate() {
            x = x.add(&b.scale_ring(&reps[idx[i]]));
        }
        if !visit(&x) {
            return;
        }
        // odometer increment
        let mut place = 3usize;
        loop {
            idx[place] += 1;
            if idx[place] < n {
                break;
            }
            idx[place] = 0;
            if place == 0 {
                return;
            }
            place -= 1;
        }
    }
}

type Mat2 = [[RingElem; 2]; 2];

/// An explicit isomorphism O/𝔭O ≅ M₂(k) at an unramified prime 𝔭, with
/// k = R/𝔭 (residue degree 1 or 2).  Construction, and hence the labelling
/// of maximal right ideals by points of P¹(k), is fully deterministic.
pub struct SplitMap {
    pub order: QuatOrder,
    pub k: QuotRing,
    /// Coordinates (in the order basis, mod 𝔭) of the matrix units
    /// E₁₁, E₁₂, E₂₁, E₂₂.
    e_coords: [[RingElem; 4]; 4],
    /// Inverse of the 4×4 matrix whose columns are `e_coords`.
    binv: [[RingElem; 4]; 4],
}

impl SplitMap {
    pub fn new(order: &QuatOrder, p: &PrimeIdeal) -> Result<SplitMap, Error> {
        let k = QuotRing::new(p, 1);
        let alg = order.alg.clone();
        let coords_mod = |x: &Quaternion| -> [RingElem; 4] {
            let c = order.coordinates(x).expect("element must lie in the order");
            std::array::from_fn(|i| k.reduce(&c[i]))
        };
        let is_zero_mod =
            |x: &Quaternion| -> bool { coords_mod(x).iter().all(|c| c.is_zero()) };

        // 1. find t whose characteristic polynomial splits with distinct roots
        let mut split: Option<(Quaternion, RingElem, RingElem)> = None;
        for_each_residue(order, &k, &mut |t| {
            let tr = k.reduce(&t.trd().to_ring());
            let nm = k.reduce(&alg.nrd(t).to_ring());
            let mut roots = Vec::new();
            for lam in k.elements() {
                // λ² - tr·λ + nm ≡ 0
                let val = k.add(&k.sub(&k.mul(&lam, &lam), &k.mul(&tr, &lam)), &nm);
                if val.is_zero() {
                    roots.push(lam.clone());
                }
                if roots.len() == 2 {
                    break;
                }
            }
            if roots.len() == 2 && roots[0] != roots[1] {
                split = Some((t.clone(), roots[0].clone(), roots[1].clone()));
                return false;
            }
            true
        });
        let (t, lam, mu) = split.ok_or_else(|| {
            Error::Config(format!(
                "order does not split at the prime above {} (ramified?)",
                p.p
            ))
        })?;

        // 2. rank-one idempotent e = (t - λ)/(μ - λ)
        let d = k
            .inv(&k.sub(&mu, &lam))
            .expect("distinct roots differ by a unit");
        let lam_q = Quaternion::scalar(FieldElem::from_ring(lam.clone()));
        let e = t.sub(&lam_q).scale_ring(&d);
        let one = Quaternion::one(order.ring());
        let f = one.sub(&e); // complementary idempotent

        // 3. matrix units: u = e·z·f ≠ 0, v = f·z'·e with u·v ≡ c·e, c ≠ 0
        let e11 = e.clone();
        let mut e12 = None;
        for_each_residue(order, &k, &mut |z| {
            let u = alg.mul(&alg.mul(&e11, z), &f);
            if !is_zero_mod(&u) {
                e12 = Some(u);
                return false;
            }
            true
        });
        let e12 = e12.expect("a rank-one idempotent has a nonzero off-diagonal");
        let mut e21 = None;
        for_each_residue(order, &k, &mut |z| {
            let v = alg.mul(&alg.mul(&f, z), &e11);
            if is_zero_mod(&v) {
                return true;
            }
            // u·v = c·e with c ∈ k; keep v/c when c ≠ 0
            let uv = alg.mul(&e12, &v);
            let uc = coords_mod(&uv);
            let ec = coords_mod(&e11);
            let pos = match ec.iter().position(|x| !x.is_zero()) {
                Some(pos) => pos,
                None => unreachable!("idempotent is nonzero"),
            };
            let c = match k.inv(&ec[pos]) {
                Some(inv) => k.mul(&uc[pos], &inv),
                None => unreachable!("k is a field"),
            };
            if c.is_zero() {
                return true;
            }
            // check u·v = c·e on all coordinates
            let ce: [RingElem; 4] = std::array::from_fn(|i| k.mul(&c, &ec[i]));
            if uc != ce {
                return true;
            }
            let cinv = k.inv(&c).unwrap();
            e21 = Some(v.scale_ring(&cinv));
            false
        });
        let e21 = e21.expect("matrix units exist in a split algebra");
        let e22 = f.clone();

        // verify the matrix-unit relations E_ab·E_cd = δ_bc·E_ad mod 𝔭
        let units = [e11.clone(), e12.clone(), e21.clone(), e22.clone()];
        let pos = [(0usize, 0usize), (0, 1), (1, 0), (1, 1)];
        for (ai, a) in pos.iter().enumerate() {
            for (bi, b) in pos.iter().enumerate() {
                let prod = alg.mul(&units[ai], &units[bi]);
                let expect = if a.1 == b.0 {
                    units[a.0 * 2 + b.1].clone()
                } else {
                    Quaternion::zero(order.ring())
                };
                if !is_zero_mod(&prod.sub(&expect)) {
                    return Err(Error::Config(
                        "matrix unit relations failed during residue splitting".into(),
                    ));
                }
            }
        }

        // 4. change of basis: columns are coordinates of the Eab
        let e_coords: [[RingElem; 4]; 4] = std::array::from_fn(|i| coords_mod(&units[i]));
        let binv = invert4_mod(&k, &e_coords).ok_or_else(|| {
            Error::Config("matrix units do not span O/𝔭O".into())
        })?;

        let map = SplitMap { order: order.clone(), k, e_coords, binv };
        map.verify_homomorphism()?;
        Ok(map)
    }

    /// Residue matrix of an order element.
    pub fn apply(&self, x: &Quaternion) -> Mat2 {
        let c = self
            .order
            .coordinates(x)
            .expect("splitting applies to order elements");
        let c: [RingElem; 4] = std::array::from_fn(|i| self.k.reduce(&c[i]));
        // m = binv · c (column vector), listed (m11, m12, m21, m22)
        let mut m = [
            RingElem::zero(self.order.ring()),
            RingElem::zero(self.order.ring()),
            RingElem::zero(self.order.ring()),
            RingElem::zero(self.order.ring()),
        ];
        for (r, mr) in m.iter_mut().enumerate() {
            let mut acc = RingElem::zero(self.order.ring());
            for (i, ci) in c.iter().enumerate() {
                acc = self.k.add(&acc, &self.k.mul(&self.binv[r][i], ci));
            }
            *mr = acc;
        }
        [[m[0].clone(), m[1].clone()], [m[2].clone(), m[3].clone()]]
    }

    /// A lift of the given residue matrix into the order.
    pub fn preimage(&self, m: &Mat2) -> Quaternion {
        let flat = [&m[0][0], &m[0][1], &m[1][0], &m[1][1]];
        let mut coords = [
            RingElem::zero(self.order.ring()),
            RingElem::zero(self.order.ring()),
            RingElem::zero(self.order.ring()),
            RingElem::zero(self.order.ring()),
        ];
        for (i, mi) in flat.iter().enumerate() {
            for (c, ec) in self.e_coords[i].iter().enumerate() {
                coords[c] = self.k.add(&coords[c], &self.k.mul(mi, ec));
            }
        }
        let mut x = Quaternion::zero(self.order.ring());
        for (c, b) in coords.iter().zip(self.order.basis().iter()) {
            x = x.add(&b.scale_ring(c));
        }
        x
    }

    fn verify_homomorphism(&self) -> Result<(), Error> {
        let alg = &self.order.alg;
        let basis = self.order.basis();
        let mat_mul = |a: &Mat2, b: &Mat2| -> Mat2 {
            std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    self.k.add(
                        &self.k.mul(&a[r][0], &b[0][c]),
                        &self.k.mul(&a[r][1], &b[1][c]),
                    )
                })
            })
        };
        for x in basis {
            for y in basis {
                let lhs = self.apply(&alg.mul(x, y));
                let rhs = mat_mul(&self.apply(x), &self.apply(y));
                if lhs != rhs {
                    return Err(Error::Config(
                        "residue splitting is not multiplicative".into(),
                    ));
                }
            }
        }
        let id = self.apply(&Quaternion::one(self.order.ring()));
        let one = self.k.reduce(&RingElem::one(self.order.ring()));
        if id[0][0] != one || !id[0][1].is_zero() || !id[1][0].is_zero() || id[1][1] != one {
            return Err(Error::Config("residue splitting does not fix 1".into()));
        }
        Ok(())
    }

    /// P¹(k) in the fixed enumeration order; labels of maximal right ideals.
    pub fn points(&self) -> Vec<(RingElem, RingElem)> {
        projective_line(&self.k)
    }

    /// The maximal right ideal with label (x : y): the preimage of the
    /// matrices with both columns proportional to (x, y)ᵀ, i.e.
    /// lift([[x,0],[y,0]])·O + 𝔭O.
    pub fn maximal_right_ideal(&self, point: &(RingElem, RingElem)) -> Ideal {
        let zero = RingElem::zero(self.order.ring());
        let g = self.preimage(&[
            [point.0.clone(), zero.clone()],
            [point.1.clone(), zero.clone()],
        ]);
        let p_scalar = Quaternion::scalar(FieldElem::from_ring(self.k.prime.gen.clone()));
        Ideal::from_right_generators(&self.order, &[g, p_scalar])
    }

    /// All maximal right ideals above 𝔭, in label order.
    pub fn maximal_right_ideals(&self) -> Vec<Ideal> {
        self.points().iter().map(|pt| self.maximal_right_ideal(pt)).collect()
    }
}

/// All maximal right O-ideals of norm 𝔭: the unique two-sided ideal when 𝔭
/// ramifies in the algebra, otherwise the Nm(𝔭)+1 ideals labelled by the
/// projective line over O/𝔭O ≅ M₂(R/𝔭).
pub fn maximal_right_ideals(order: &QuatOrder, p: &PrimeIdeal) -> Result<Vec<Ideal>, Error> {
    if order.prime_divides_discriminant(p)? {
        Ok(vec![ramified_maximal_ideal(order, p)])
    } else {
        Ok(SplitMap::new(order, p)?.maximal_right_ideals())
    }
}

/// Invert a 4×4 matrix over the residue field k (columns given as arrays).
fn invert4_mod(k: &QuotRing, cols: &[[RingElem; 4]; 4]) -> Option<[[RingElem; 4]; 4]> {
    let ring = k.prime.ring;
    // a[r][c] = cols[c][r]
    let mut a: Vec<Vec<RingElem>> = (0..4)
        .map(|r| (0..4).map(|c| cols[c][r].clone()).collect())
        .collect();
    let mut inv: Vec<Vec<RingElem>> = (0..4)
        .map(|r| {
            (0..4)
                .map(|c| {
                    if r == c {
                        k.reduce(&RingElem::one(ring))
                    } else {
                        RingElem::zero(ring)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| k.is_unit(&a[r][col]))?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let pinv = k.inv(&a[col][col]).unwrap();
        for j in 0..4 {
            a[col][j] = k.mul(&a[col][j], &pinv);
            inv[col][j] = k.mul(&inv[col][j], &pinv);
        }
        for r in 0..4 {
            if r != col && !k.reduce(&a[r][col]).is_zero() {
                let f = a[r][col].clone();
                for j in 0..4 {
                    let s = k.mul(&f, &a[col][j]);
                    a[r][j] = k.sub(&a[r][j], &s);
                    let s = k.mul(&f, &inv[col][j]);
                    inv[r][j] = k.sub(&inv[r][j], &s);
                }
            }
        }
    }
    Some(std::array::from_fn(|r| std::array::from_fn(|c| inv[r][c].clone())))
}

/// Embedding-lexicographic comparison of quaternions: coordinates compared by
/// the first real embedding, most significant first.
pub fn cmp_embed_lex(a: &Quaternion, b: &Quaternion) -> Ordering {
    for i in 0..4 {
        match a.c[i].cmp_embed(&b.c[i]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Search for a generator of an integral right O-ideal I with nrd(q) exactly
/// the totally positive associate of nrd(I).  Returns None when the ideal is
/// not principal.  Among all generators the embedding-lexicographically
/// largest is returned, making the choice canonical.
pub fn principal_generator(ideal: &Ideal, order: &QuatOrder) -> Option<Quaternion> {
    let n0 = ideal.nrd_integral().totally_positive_associate();
    let mut best: Option<Quaternion> = None;
    for x in elements_of_norm_in(&order.alg, &ideal.lattice, &n0) {
        match &best {
            Some(b) if cmp_embed_lex(&x, b) != Ordering::Greater => {}
            _ => best = Some(x),
        }
    }
    best
}

/// Fast principality test (early exit, no canonical choice).
pub fn is_principal(ideal: &Ideal, order: &QuatOrder) -> bool {
    let n0 = ideal.nrd_integral().totally_positive_associate();
    some_element_of_norm_in(&order.alg, &ideal.lattice, &n0).is_some()
}
