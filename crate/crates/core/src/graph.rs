//! The graph of maximal orders: adjacency description, spanning-tree depth,
//! generator discovery, and class-number verification.
//!
//! Vertices are maximal orders; for each unramified prime 𝔭 of the working
//! set `S`, the 𝔭-neighbors of an order `O` are the left orders of the
//! maximal right ideals of `O` with norm 𝔭 (one per projective point, so
//! `Nm(𝔭)+1` of them).  The synthesis engine needs one generator per leaf of
//! a spanning tree of this graph; with a single conjugacy class every depth-1
//! vertex is already a leaf and the generators are exactly the principal
//! generators of the maximal right ideals above the primes of `S`.

use std::collections::{BTreeSet, HashSet};

use crate::error::Error;
use crate::ideal::{is_principal, maximal_right_ideals, principal_generator, Ideal};
use crate::linalg::Lattice;
use crate::primes::PrimeIdeal;
use crate::quat::{QuatOrder, Quaternion};

/// Adjacency description of the graph of maximal orders.  Orders are tracked
/// up to conjugacy: `entries[i][j]` lists the 𝔭ⱼ-neighbors of the class-`i`
/// representative as pairs `(s, q)`, the neighbor being `q·O_s·q⁻¹`.
#[derive(Debug, Clone)]
pub struct AdjDescription {
    pub class_count: usize,
    /// Conjugacy class of the root order.
    pub root_class: usize,
    /// The unramified primes of `S`, sorted; column `j` of `entries`.
    pub primes: Vec<PrimeIdeal>,
    pub entries: Vec<Vec<Vec<(usize, Quaternion)>>>,
}

/// Vertex of the spanning tree: the prime index last stepped along
/// (non-decreasing from root to leaf), the index of the parent in the
/// previous level, and the order `q·O_class·q⁻¹` it stands for.
#[derive(Debug, Clone)]
pub struct TreeVertex {
    pub ideal_id: usize,
    pub parent_id: usize,
    pub class_id: usize,
    pub q: Quaternion,
}

/// Levels of the spanning tree; level 0 is the root order itself.
#[derive(Debug, Clone)]
pub struct TreeLevels {
    pub levels: Vec<Vec<TreeVertex>>,
}

/// Whether `q₁·O·q₁⁻¹ = q₂·O·q₂⁻¹`: with `q = q₁⁻¹q₂`, the orders agree
/// exactly when conjugation by `q` maps the basis of `O` into `O`.
pub fn conjugated_orders_equal(base: &QuatOrder, q1: &Quaternion, q2: &Quaternion) -> bool {
    let alg = &base.alg;
    let q = alg.mul(&alg.inverse(q1), q2);
    let qi = alg.inverse(&q);
    base.basis()
        .iter()
        .all(|g| base.contains(&alg.mul(&alg.mul(&q, g), &qi)))
}

/// Compute the adjacency description for a single conjugacy class.
///
/// Every maximal right ideal above the unramified primes of `s` must be
/// principal; a non-principal ideal is a class-number violation and is
/// reported as such.  Each generator is validated against the ideal's left
/// order (the claimed neighbor `q·O·q⁻¹` must equal it).
pub fn max_orders_adj(order: &QuatOrder, s: &[PrimeIdeal]) -> Result<AdjDescription, Error> {
    let mut primes: Vec<PrimeIdeal> = Vec::new();
    for p in s {
        if !order.prime_divides_discriminant(p)? {
            primes.push(p.clone());
        }
    }
    primes.sort_by(|x, y| (&x.p, &x.gen).cmp(&(&y.p, &y.gen)));
    primes.dedup_by(|x, y| x.gen == y.gen);

    let alg = &order.alg;
    let mut row: Vec<Vec<(usize, Quaternion)>> = Vec::new();
    for p in &primes {
        let ideals = maximal_right_ideals(order, p)?;
        let mut col = Vec::new();
        for ideal in ideals {
            let q = principal_generator(&ideal, order).ok_or_else(|| {
                Error::ClassNumber(format!(
                    "maximal right ideal above {} is not principal; the class number exceeds 1",
                    p.p
                ))
            })?;
            // The neighbor q·O·q⁻¹ must be the left order of the ideal.
            let left = ideal.left_order()?;
            let qi = alg.inverse(&q);
            let ok = order
                .basis()
                .iter()
                .all(|g| left.contains(&alg.mul(&alg.mul(&q, g), &qi)));
            if !ok {
                return Err(Error::ClassNumber(format!(
                    "generator above {} does not conjugate the order onto the neighbor",
                    p.p
                )));
            }
            col.push((0usize, q));
        }
        row.push(col);
    }
    Ok(AdjDescription { class_count: 1, root_class: 0, primes, entries: vec![row] })
}

/// Depth of the spanning tree described by `adj`, or `None` when the graph
/// is infinite.
///
/// Level sets are tracked as sets of edge descriptions `(from-class,
/// to-class, prime index)`; leaves (vertices of the root's class) never
/// spawn edges.  A repeated edge set means the class pattern cycles and the
/// tree never closes, so the depth is infinite.
pub fn spanning_tree_size(adj: &AdjDescription) -> Option<usize> {
    type EdgeSet = BTreeSet<(usize, usize, usize)>;
    let s0 = adj.root_class;
    let l = adj.entries[s0].len();
    let mut e1: EdgeSet = BTreeSet::new();
    for i in 0..l {
        for (j, _) in &adj.entries[s0][i] {
            if *j != s0 {
                e1.insert((s0, *j, i));
            }
        }
    }
    let mut history: Vec<EdgeSet> = vec![e1];
    let mut k = 1usize;
    while !history.last().unwrap().is_empty() {
        let mut next: EdgeSet = BTreeSet::new();
        for &(s, j, i) in history.last().unwrap() {
            // Stepping back along the same prime stays in the tree only when
            // the parent is not the sole non-leaf neighbor.
            let non_leaf = adj.entries[j][i].iter().filter(|(sp, _)| *sp != s0).count();
            if non_leaf > 1 {
                next.insert((j, s, i));
            }
            for (sp, _) in &adj.entries[j][i] {
                if *sp != s0 && *sp != s {
                    next.insert((j, *sp, i));
                }
            }
            for i2 in (i + 1)..l {
                for (sp, _) in &adj.entries[j][i2] {
                    if *sp != s0 {
                        next.insert((j, *sp, i2));
                    }
                }
            }
        }
        if history.contains(&next) {
            return None;
        }
        history.push(next);
        k += 1;
    }
    Some(k)
}

/// The S-neighbors of a tree vertex: step along every prime with index at
/// least the vertex's own, composing generators.
fn s_neighbors(
    adj: &AdjDescription,
    order: &QuatOrder,
    parent_idx: usize,
    v: &TreeVertex,
) -> Vec<TreeVertex> {
    let alg = &order.alg;
    let mut out = Vec::new();
    for k in v.ideal_id..adj.entries[v.class_id].len() {
        for (s, q) in &adj.entries[v.class_id][k] {
            out.push(TreeVertex {
                ideal_id: k,
                parent_id: parent_idx,
                class_id: *s,
                q: alg.mul(&v.q, q),
            });
        }
    }
    out
}

/// Build the levels of the spanning tree of depth `m` from the adjacency
/// description.  Level k+1 extends the non-leaf vertices of level k along
/// non-decreasing prime indices, excluding the step back to the parent.
pub fn build_tree_levels(
    adj: &AdjDescription,
    order: &QuatOrder,
    depth: usize,
) -> TreeLevels {
    let root = TreeVertex {
        ideal_id: 0,
        parent_id: 0,
        class_id: adj.root_class,
        q: Quaternion::one(order.ring()),
    };
    let mut levels = vec![vec![root]];
    for k in 1..=depth {
        let mut level = Vec::new();
        let prev = &levels[k - 1];
        for (m, v) in prev.iter().enumerate() {
            if k > 1 && v.class_id == adj.root_class {
                continue; // leaf
            }
            let neighbors = s_neighbors(adj, order, m, v);
            for v2 in neighbors {
                let back_to_parent = k > 1 && v2.ideal_id == v.ideal_id && {
                    let parent = &levels[k - 2][v.parent_id];
                    v2.class_id == parent.class_id
                        && conjugated_orders_equal(order, &parent.q, &v2.q)
                };
                if !back_to_parent {
                    level.push(v2);
                }
            }
        }
        levels.push(level);
    }
    TreeLevels { levels }
}

/// The generator set `G(S)`: one quaternion per leaf of the spanning tree,
/// or the empty set when the tree is infinite.
pub fn find_s_generators(order: &QuatOrder, s: &[PrimeIdeal]) -> Result<Vec<Quaternion>, Error> {
    let adj = max_orders_adj(order, s)?;
    let Some(depth) = spanning_tree_size(&adj) else {
        return Ok(Vec::new());
    };
    let levels = build_tree_levels(&adj, order, depth);
    let mut out = Vec::new();
    for level in &levels.levels[1..] {
        for v in level {
            if v.class_id == adj.root_class {
                out.push(v.q.clone());
            }
        }
    }
    Ok(out)
}

/// Verify that every right ideal reachable within `depth` maximal-ideal
/// steps above the primes of `s` is principal.  Returns `false` on the
/// first non-principal witness.  Depth 0 is vacuously true.
pub fn verify_class_number_one(
    order: &QuatOrder,
    s: &[PrimeIdeal],
    depth: usize,
) -> Result<bool, Error> {
    let mut frontier = vec![Ideal::unit_ideal(order)];
    let mut seen: HashSet<Lattice> = HashSet::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for ideal in &frontier {
            let left = ideal.left_order()?;
            for p in s {
                for m in maximal_right_ideals(&left, p)? {
                    let product = m.mul(ideal);
                    if seen.insert(product.lattice.clone()) {
                        if !is_principal(&product, order) {
                            return Ok(false);
                        }
                        next.push(product);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::split_content;
    use crate::primes::factor_rational_prime;
    use crate::quat::{hurwitz_order, sqrt2_maximal_order, QuatAlgebra};
    use crate::rings::{FieldElem, Ring, RingElem};
    use crate::synth::projective_normalize;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    fn primes(ring: Ring, p: i64) -> Vec<PrimeIdeal> {
        factor_rational_prime(ring, &BigInt::from(p)).unwrap()
    }

    /// Maximal order of the rational quaternion algebra (-1, -11), which has
    /// two right ideal classes: Z⟨1, i, ω, iω⟩ with ω = (1+j)/2.
    fn disc11_order() -> QuatOrder {
        let ring = Ring::Rational;
        let alg = QuatAlgebra::new(
            ring,
            FieldElem::from_i64(ring, -1, 0, 1),
            FieldElem::from_i64(ring, -11, 0, 1),
        );
        let re = |n: i64| RingElem::int(ring, n);
        let lattice = Lattice::from_rows(
            ring,
            BigInt::from(2),
            vec![
                [re(2), re(0), re(0), re(0)],
                [re(0), re(2), re(0), re(0)],
                [re(1), re(0), re(1), re(0)],
                [re(0), re(1), re(0), re(1)],
            ],
        );
        QuatOrder::new(alg, lattice).unwrap()
    }

    #[test]
    fn adjacency_counts_and_neighbor_validation() {
        let h = hurwitz_order();
        let adj = max_orders_adj(&h, &primes(Ring::Rational, 5)).unwrap();
        assert_eq!(adj.class_count, 1);
        assert_eq!(adj.entries[0].len(), 1);
        assert_eq!(adj.entries[0][0].len(), 6);

        let o = sqrt2_maximal_order();
        let adj = max_orders_adj(&o, &primes(Ring::Sqrt2, 2)).unwrap();
        assert_eq!(adj.entries[0][0].len(), 3);
        for (_, q) in &adj.entries[0][0] {
            // Norm is the totally positive associate of the prime.
            assert_eq!(
                o.alg.nrd(q),
                FieldElem::from_i64(Ring::Sqrt2, 2, 1, 1)
            );
        }

        // Ramified primes contribute no adjacency column.
        let adj = max_orders_adj(&h, &primes(Ring::Rational, 2)).unwrap();
        assert!(adj.primes.is_empty());
        assert!(adj.entries[0].is_empty());
    }

    #[test]
    fn neighbor_symmetry_via_conjugate_ideal() {
        let h = hurwitz_order();
        let adj = max_orders_adj(&h, &primes(Ring::Rational, 5)).unwrap();
        for (_, q) in &adj.entries[0][0] {
            let ideal = Ideal::right_principal(&h, q);
            let left = ideal.left_order().unwrap();
            let back = ideal.conj();
            // back is a right ideal of the neighbor whose left order is the
            // original order: the reverse edge.
            assert_eq!(back.right_order().unwrap().lattice, left.lattice);
            assert_eq!(back.left_order().unwrap().lattice, h.lattice);
            assert_eq!(back.nrd_integral(), RingElem::int(Ring::Rational, 5));
        }
    }

    #[test]
    fn spanning_tree_depth_one_for_single_class() {
        let h = hurwitz_order();
        let adj = max_orders_adj(&h, &primes(Ring::Rational, 5)).unwrap();
        assert_eq!(spanning_tree_size(&adj), Some(1));

        let o = sqrt2_maximal_order();
        let adj = max_orders_adj(&o, &primes(Ring::Sqrt2, 2)).unwrap();
        assert_eq!(spanning_tree_size(&adj), Some(1));

        let mut s = primes(Ring::Sqrt2, 2);
        s.extend(primes(Ring::Sqrt2, 5));
        let adj = max_orders_adj(&o, &s).unwrap();
        assert_eq!(adj.entries[0].len(), 2);
        assert_eq!(spanning_tree_size(&adj), Some(1));
    }

    #[test]
    fn spanning_tree_size_on_synthetic_class_patterns() {
        let dummy = Quaternion::one(Ring::Rational);
        // Two classes, each neighboring only the other: the edge sets
        // oscillate and the tree is infinite.
        let cyc = AdjDescription {
            class_count: 2,
            root_class: 0,
            primes: Vec::new(),
            entries: vec![
                vec![vec![(1, dummy.clone()), (1, dummy.clone())]],
                vec![vec![(1, dummy.clone()), (1, dummy.clone())]],
            ],
        };
        assert_eq!(spanning_tree_size(&cyc), None);

        // Two classes where the second is a dead end: depth 2.
        let dead_end = AdjDescription {
            class_count: 2,
            root_class: 0,
            primes: Vec::new(),
            entries: vec![
                vec![vec![(1, dummy.clone()), (0, dummy.clone())]],
                vec![vec![(0, dummy.clone()), (0, dummy.clone())]],
            ],
        };
        assert_eq!(spanning_tree_size(&dead_end), Some(2));
    }

    #[test]
    fn generators_match_published_gate_sets() {
        let h = hurwitz_order();
        let gens = find_s_generators(&h, &primes(Ring::Rational, 5)).unwrap();
        assert_eq!(gens.len(), 6);
        // The generators agree with the published gate set 1±2i, 1±2j, 1±2k
        // up to unit factors, i.e. they generate the same six right ideals.
        let got: std::collections::HashSet<Lattice> = gens
            .iter()
            .map(|q| Ideal::right_principal(&h, q).lattice)
            .collect();
        let want: std::collections::HashSet<Lattice> = [
            [1i64, 2, 0, 0],
            [1, -2, 0, 0],
            [1, 0, 2, 0],
            [1, 0, -2, 0],
            [1, 0, 0, 2],
            [1, 0, 0, -2],
        ]
        .iter()
        .map(|c| {
            let q = Quaternion::from_i64(
                Ring::Rational,
                [(c[0], 0, 1), (c[1], 0, 1), (c[2], 0, 1), (c[3], 0, 1)],
            );
            Ideal::right_principal(&h, &q).lattice
        })
        .collect();
        assert_eq!(got, want);
        // Projective normalization is still unit-sensitive: distinct leaves
        // stay distinct.
        let norm: BTreeSet<String> = gens
            .iter()
            .map(|q| crate::literal::print_quaternion(&projective_normalize(q)))
            .collect();
        assert_eq!(norm.len(), 6);

        let o = sqrt2_maximal_order();
        let gens = find_s_generators(&o, &primes(Ring::Sqrt2, 2)).unwrap();
        assert_eq!(gens.len(), 3);
        for q in &gens {
            assert_eq!(o.alg.nrd(q), FieldElem::from_i64(Ring::Sqrt2, 2, 1, 1));
        }
    }

    #[test]
    fn class_number_verification() {
        let h = hurwitz_order();
        let five = primes(Ring::Rational, 5);
        assert!(verify_class_number_one(&h, &five, 0).unwrap());
        assert!(verify_class_number_one(&h, &five, 3).unwrap());
        assert!(verify_class_number_one(&h, &primes(Ring::Rational, 2), 3).unwrap());

        let o = sqrt2_maximal_order();
        assert!(verify_class_number_one(&o, &primes(Ring::Sqrt2, 2), 3).unwrap());

        // Discriminant-11 algebra has class number 2: of the three maximal
        // right ideals above 2, only (1+i) is principal.
        let o11 = disc11_order();
        assert_eq!(o11.discriminant().unwrap(), RingElem::int(Ring::Rational, 11));
        assert!(o11.is_maximal().unwrap());
        assert!(!verify_class_number_one(&o11, &primes(Ring::Rational, 2), 1).unwrap());
        match max_orders_adj(&o11, &primes(Ring::Rational, 2)) {
            Err(Error::ClassNumber(_)) => {}
            other => panic!("expected a class-number diagnostic, got {other:?}"),
        }
    }

    #[test]
    fn neighbor_chains_change_distance_by_one() {
        let h = hurwitz_order();
        let five = primes(Ring::Rational, 5)[0].clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let mut current = h.clone();
            let mut last_dist = 0u32;
            for _ in 0..3 {
                let ideals = maximal_right_ideals(&current, &five).unwrap();
                let pick = ideals[rng.gen_range(0..ideals.len())].clone();
                current = pick.left_order().unwrap();
                // The connecting ideal is fractional in general; scale it
                // into the order before splitting off the content.
                let mut conn = Ideal::connecting(&current, &h);
                while !conn.lattice.subset_of(&current.lattice) {
                    conn = conn.scale(&FieldElem::from_i64(Ring::Rational, 5, 0, 1));
                }
                let (_, prim) = split_content(&conn, &current);
                let dist = five.valuation(&prim.nrd_integral());
                assert_eq!(
                    (last_dist as i64 - dist as i64).abs(),
                    1,
                    "distance must change by exactly 1 per neighbor step"
                );
                last_dist = dist;
            }
        }
    }

    use std::collections::BTreeSet;
}
