//! Exact linear algebra over the coefficient field: 4×4 matrices and
//! full-rank R-lattices inside F⁴.
//!
//! A lattice is stored as (1/den)·(row span over R of a 4×4 matrix) whose
//! Hermite normal form is taken with pivots running down the anti-diagonal
//! (first pivot in the last coordinate).  With the quaternion coordinate
//! order (1, i, j, k) this makes the final row a pure scalar, so the
//! intersection of an ideal with the coefficient field is read directly off
//! the normal form.  Pivots are canonical associates and off-pivot entries
//! canonical Euclidean remainders, so equal lattices have identical
//! representations.

// Indexed loops mirror the row/column arithmetic; iterator chains obscure it.
#![allow(clippy::needless_range_loop)]

use crate::rings::{FieldElem, Ring, RingElem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

/// 4×4 matrix over the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMat4 {
    pub ring: Ring,
    pub rows: [[FieldElem; 4]; 4],
}

pub type FVec4 = [FieldElem; 4];

pub fn fvec_zero(ring: Ring) -> FVec4 {
    std::array::from_fn(|_| FieldElem::zero(ring))
}

impl FMat4 {
    pub fn new(rows: [[FieldElem; 4]; 4]) -> Self {
        let ring = rows[0][0].ring();
        FMat4 { ring, rows }
    }

    pub fn identity(ring: Ring) -> Self {
        let mut rows = std::array::from_fn(|_| fvec_zero(ring));
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = FieldElem::one(ring);
        }
        FMat4 { ring, rows }
    }

    pub fn mul(&self, other: &FMat4) -> FMat4 {
        let mut rows = std::array::from_fn(|_| fvec_zero(self.ring));
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = FieldElem::zero(self.ring);
                for (l, r) in self.rows[i].iter().zip(other.rows.iter()) {
                    acc = acc.add(&l.mul(&r[j]));
                }
                rows[i][j] = acc;
            }
        }
        FMat4 { ring: self.ring, rows }
    }

    /// Row vector times matrix.
    pub fn mul_row(&self, v: &FVec4) -> FVec4 {
        let mut out = fvec_zero(self.ring);
        for (c, row) in v.iter().zip(self.rows.iter()) {
            for (o, e) in out.iter_mut().zip(row.iter()) {
                *o = o.add(&c.mul(e));
            }
        }
        out
    }

    /// Gauss–Jordan elimination; returns (inverse, det), or None if singular.
    pub fn inverse_det(&self) -> Option<(FMat4, FieldElem)> {
        let ring = self.ring;
        let mut a = self.rows.clone();
        let mut inv = FMat4::identity(ring).rows;
        let mut det = FieldElem::one(ring);
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
            if pivot != col {
                a.swap(pivot, col);
                inv.swap(pivot, col);
                det = det.neg();
            }
            let p = a[col][col].clone();
            det = det.mul(&p);
            let pinv = p.inv();
            for j in 0..4 {
                a[col][j] = a[col][j].mul(&pinv);
                inv[col][j] = inv[col][j].mul(&pinv);
            }
            for r in 0..4 {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..4 {
                        a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                        inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                    }
                }
            }
        }
        Some((FMat4 { ring, rows: inv }, det))
    }

    pub fn det(&self) -> FieldElem {
        // elimination without pivot normalization would do; reuse inverse_det
        match self.inverse_det() {
            Some((_, d)) => d,
            None => FieldElem::zero(self.ring),
        }
    }
}

/// Full-rank R-lattice (1/den)·span_R(rows) ⊂ F⁴, in Hermite normal form.
///
/// `rows[r]` has its pivot in column 3-r; entries to the right of the pivot
/// are zero.  `den` is positive and coprime to the integer content of the
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub ring: Ring,
    pub den: BigInt,
    pub rows: [[RingElem; 4]; 4],
}

fn rvec_zero(ring: Ring) -> [RingElem; 4] {
    std::array::from_fn(|_| RingElem::zero(ring))
}

impl Lattice {
    /// Build from generating rows (at least four, spanning full rank) with a
    /// common denominator.
    pub fn from_rows(ring: Ring, den: BigInt, gens: Vec<[RingElem; 4]>) -> Lattice {
        assert!(den.sign() == num_bigint::Sign::Plus, "denominator must be positive");
        let mut work: Vec<[RingElem; 4]> = gens;
        let mut pivots: Vec<[RingElem; 4]> = Vec::new();
        // pivot columns 3, 2, 1, 0 in that order
        for col in (0..4).rev() {
            loop {
                work.retain(|r| r.iter().any(|x| !x.is_zero()));
                let mut cands: Vec<usize> = (0..work.len())
                    .filter(|&i| !work[i][col].is_zero())
                    .collect();
                if cands.is_empty() {
                    panic!("lattice generators do not span full rank");
                }
                if cands.len() == 1 {
                    let r = work.remove(cands[0]);
                    pivots.push(r);
                    break;
                }
                // reduce all candidate rows by the one with smallest norm entry
                cands.sort_by_key(|&i| work[i][col].norm().abs());
                let base = cands[0];
                for &i in &cands[1..] {
                    let (q, _) = work[i][col].euclidean_div(&work[base][col]);
                    for c in 0..4 {
                        work[i][c] = work[i][c].sub(&q.mul(&work[base][c]));
                    }
                }
            }
        }
        // rows with pivot in col 3 first — matches the pivot search order
        let mut rows: [[RingElem; 4]; 4] = std::array::from_fn(|i| pivots[i].clone());
        // normalize pivots to canonical associates
        for (r, row) in rows.iter_mut().enumerate() {
            let col = 3 - r;
            let (_, u) = row[col].canonical_associate_with_unit();
            for x in row.iter_mut() {
                *x = x.mul(&u);
            }
        }
        // Reduce entries above each pivot to canonical remainders.  Row r is
        // zero in every column right of its pivot col 3-r, so subtracting its
        // multiples touches only columns <= 3-r; visiting r upwards therefore
        // never disturbs a column that was already made canonical.
        for r in 1..4 {
            let col = 3 - r;
            for i in 0..r {
                let (q, _) = rows[i][col].euclidean_div(&rows[r][col]);
                if !q.is_zero() {
                    for c in 0..4 {
                        rows[i][c] = rows[i][c].sub(&q.mul(&rows[r][c]));
                    }
                }
            }
        }
        let mut lat = Lattice { ring, den, rows };
        lat.reduce_den();
        lat
    }

    fn reduce_den(&mut self) {
        let mut g = self.den.clone();
        for row in &self.rows {
            for x in row {
                g = g.gcd(&x.int_content());
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for row in self.rows.iter_mut() {
                for x in row.iter_mut() {
                    *x = RingElem::new(self.ring, &x.a / &g, &x.b / &g);
                }
            }
        }
    }

    /// The standard lattice R⁴.
    pub fn standard(ring: Ring) -> Lattice {
        let mut gens = Vec::new();
        for i in 0..4 {
            let mut row = rvec_zero(ring);
            row[i] = RingElem::one(ring);
            gens.push(row);
        }
        Lattice::from_rows(ring, BigInt::one(), gens)
    }

    /// Build from rows of field elements (clearing denominators).
    pub fn from_field_rows(ring: Ring, gens: Vec<FVec4>) -> Lattice {
        let mut den = BigInt::one();
        for row in &gens {
            for x in row {
                den = den.lcm(x.denominator());
            }
        }
        let rows = gens
            .iter()
            .map(|row| {
                std::array::from_fn(|c| {
                    let x = &row[c];
                    x.numerator().mul_int(&(&den / x.denominator()))
                })
            })
            .collect();
        Lattice::from_rows(ring, den, rows)
    }

    /// Row r as a vector of field elements (dividing by den).
    pub fn row_field(&self, r: usize) -> FVec4 {
        std::array::from_fn(|c| {
            FieldElem::new(self.rows[r][c].clone(), self.den.clone())
        })
    }

    pub fn basis_matrix(&self) -> FMat4 {
        FMat4::new(std::array::from_fn(|r| self.row_field(r)))
    }

    /// Test membership of a field vector by back-substitution along the
    /// anti-diagonal pivots.
    pub fn contains(&self, v: &FVec4) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of v in the lattice basis if v lies in the lattice.
    pub fn coordinates(&self, v: &FVec4) -> Option<[RingElem; 4]> {
        // clear denominators: express den·v over a common denominator dv
        let mut dv = BigInt::one();
        for x in v {
            dv = dv.lcm(x.denominator());
        }
        // target = dv·den·v as ring elements; rows scaled by dv
        let mut target: [RingElem; 4] = std::array::from_fn(|c| {
            v[c].numerator()
                .mul_int(&(&dv / v[c].denominator() * &self.den))
        });
        let mut coords = rvec_zero(self.ring);
        for r in 0..4 {
            let col = 3 - r;
            let p = self.rows[r][col].mul_int(&dv);
            let q = target[col].exact_div(&p)?;
            for c in 0..4 {
                target[c] = target[c].sub(&q.mul(&self.rows[r][c].mul_int(&dv)));
            }
            coords[r] = q;
        }
        if target.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Coordinates of an arbitrary field vector in the lattice basis,
    /// as field elements.  Always succeeds (the basis has full rank).
    pub fn field_coordinates(&self, v: &FVec4) -> [FieldElem; 4] {
        let mut target = v.clone();
        let mut coords: [FieldElem; 4] = std::array::from_fn(|_| FieldElem::zero(self.ring));
        for r in 0..4 {
            let col = 3 - r;
            let p = self.row_field(r)[col].clone();
            let q = target[col].div(&p);
            let row = self.row_field(r);
            for c in 0..4 {
                target[c] = target[c].sub(&q.mul(&row[c]));
            }
            coords[r] = q;
        }
        debug_assert!(target.iter().all(|x| x.is_zero()));
        coords
    }

    /// Sum of two lattices (smallest lattice containing both).
    pub fn sum(&self, other: &Lattice) -> Lattice {
        let den = self.den.lcm(&other.den);
        let mut gens = Vec::new();
        let s1 = &den / &self.den;
        let s2 = &den / &other.den;
        for row in &self.rows {
            gens.push(std::array::from_fn(|c| row[c].mul_int(&s1)));
        }
        for row in &other.rows {
            gens.push(std::array::from_fn(|c| row[c].mul_int(&s2)));
        }
        Lattice::from_rows(self.ring, den, gens)
    }

    /// Scale the lattice by a field element.
    pub fn scale(&self, s: &FieldElem) -> Lattice {
        assert!(!s.is_zero());
        let den = &self.den * s.denominator();
        let gens = self
            .rows
            .iter()
            .map(|row| std::array::from_fn(|c| row[c].mul(s.numerator())))
            .collect();
        Lattice::from_rows(self.ring, den, gens)
    }

    /// Determinant of the basis matrix, an element of F (well defined up to
    /// units of R; canonical because the HNF is).
    pub fn det(&self) -> FieldElem {
        let mut acc = FieldElem::one(self.ring);
        for r in 0..4 {
            acc = acc.mul(&FieldElem::new(self.rows[r][3 - r].clone(), self.den.clone()));
        }
        acc
    }

    /// Group index [other : self] for self ⊆ other, as a rational integer:
    /// the absolute norm of det(self)/det(other).
    pub fn index_in(&self, other: &Lattice) -> BigInt {
        let ratio = self.det().div(&other.det());
        let n = ratio.norm();
        assert!(n.is_integral(), "index_in called on non-nested lattices");
        n.to_ring().a.abs()
    }

    /// Is `self` a sublattice of `other`?
    pub fn subset_of(&self, other: &Lattice) -> bool {
        (0..4).all(|r| other.contains(&self.row_field(r)))
    }
}
