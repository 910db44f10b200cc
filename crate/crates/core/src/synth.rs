//! Exact synthesis of integral quaternions into words over a finite gate set.
//!
//! A synthesis context fixes a maximal order `O` in a definite quaternion
//! algebra together with a finite set `S` of coefficient-ring primes.  The
//! quaternions of `O` whose reduced norm is supported on `S` (up to squares
//! of central factors) decompose as
//!
//! ```text
//!     q = g_1 · g_2 · ... · g_n · r_1 · ... · r_m · u · α
//! ```
//!
//! where each `g_t` is a generator of a maximal right ideal above an
//! unramified prime of `S`, each `r_t` generates the unique two-sided maximal
//! ideal above a ramified prime of `S`, `u` is a norm-one unit of `O`, and
//! `α` is a central field element.  Words are serialized as one token per
//! line (`GEN`, `UNIT`, `CENTRAL`).

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::enumerate::norm_one_units;
use crate::error::Error;
use crate::ideal::{
    cmp_embed_lex, maximal_right_ideals, principal_generator, ramified_maximal_ideal, Ideal,
};
use crate::literal::{parse_field, print_field};
use crate::primes::{factor_ring_elem, PrimeIdeal};
use crate::quat::{QuatAlgebra, QuatOrder, Quaternion};
use crate::rings::{FieldElem, Ring, RingElem};

/// One word token.  `Gen` names an ideal generator (leaf or ramified),
/// `Unit` names a designated norm-one unit generator, and `Central` carries
/// an explicit central scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Gen(String),
    Unit(String),
    Central(FieldElem),
}

/// A gate word: the product of its tokens, taken left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GateWord {
    pub tokens: Vec<Token>,
}

impl GateWord {
    pub fn new(tokens: Vec<Token>) -> Self {
        GateWord { tokens }
    }

    /// One line per token: `GEN <label>`, `UNIT <label>`, `CENTRAL <literal>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            match t {
                Token::Gen(l) => {
                    out.push_str("GEN ");
                    out.push_str(l);
                }
                Token::Unit(l) => {
                    out.push_str("UNIT ");
                    out.push_str(l);
                }
                Token::Central(x) => {
                    out.push_str("CENTRAL ");
                    out.push_str(&print_field(x));
                }
            }
            out.push('\n');
        }
        out
    }

    /// Parse the line format produced by [`GateWord::to_text`].  Blank lines
    /// are ignored; labels must be single whitespace-free words.
    pub fn parse(ring: Ring, text: &str) -> Result<GateWord, Error> {
        let mut tokens = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (verb, rest) = match line.split_once(char::is_whitespace) {
                Some((v, r)) => (v, r.trim()),
                None => (line, ""),
            };
            if rest.is_empty() {
                return Err(Error::Parse(format!("token `{line}` has no argument")));
            }
            match verb {
                "GEN" | "UNIT" => {
                    if rest.split_whitespace().count() != 1 {
                        return Err(Error::Parse(format!("label `{rest}` contains whitespace")));
                    }
                    if verb == "GEN" {
                        tokens.push(Token::Gen(rest.to_string()));
                    } else {
                        tokens.push(Token::Unit(rest.to_string()));
                    }
                }
                "CENTRAL" => tokens.push(Token::Central(parse_field(ring, rest)?)),
                _ => return Err(Error::Parse(format!("unknown token kind `{verb}`"))),
            }
        }
        Ok(GateWord { tokens })
    }
}

/// A generator of one maximal right ideal above an unramified prime of `S`.
#[derive(Debug, Clone)]
pub struct LeafGen {
    pub label: String,
    /// A quaternion generating the ideal; reduced norm is a prime generator.
    pub value: Quaternion,
    /// Index into `SynthesisContext::s1`.
    pub prime_idx: usize,
    /// Index of the projective point parameterizing the ideal.
    pub point_idx: usize,
    /// Global index of the leaf whose ideal is generated by `conj(value)`.
    /// A word `... value · w ...` collapses exactly when `w` is that leaf.
    pub conj_leaf: usize,
    pub ideal: Ideal,
}

/// Generator of the unique two-sided maximal ideal above a ramified prime.
#[derive(Debug, Clone)]
pub struct RamGen {
    pub label: String,
    pub value: Quaternion,
    pub prime: PrimeIdeal,
}

/// Fixed data for synthesis over one order and prime set.
pub struct SynthesisContext {
    pub alg: QuatAlgebra,
    pub order: QuatOrder,
    /// Unramified primes of `S`, sorted.
    pub s1: Vec<PrimeIdeal>,
    /// Primes of `S` dividing the order discriminant, sorted.
    pub ram: Vec<PrimeIdeal>,
    pub leaves: Vec<LeafGen>,
    pub ram_gens: Vec<RamGen>,
    /// All norm-one units of the order, in a deterministic order.
    pub units: Vec<Quaternion>,
    /// Designated unit generators `(label, value)`, label-sorted.
    pub unit_gens: Vec<(String, Quaternion)>,
    /// For each entry of `units`, a word over `unit_gens` (indices) whose
    /// exact product is that unit.
    unit_words: Vec<Vec<usize>>,
    unit_index: HashMap<Quaternion, usize>,
    gen_values: HashMap<String, Quaternion>,
    unit_values: HashMap<String, Quaternion>,
    /// Leaf indices sorted by label (greedy scan order).
    label_sorted_leaves: Vec<usize>,
}

fn check_label(label: &str) -> Result<(), Error> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(Error::Config(format!("invalid label `{label}`")));
    }
    Ok(())
}

impl SynthesisContext {
    /// Build a context for `order` and the prime set `s`.
    ///
    /// `named_gens` assigns labels (and preferred generator values) to leaf
    /// ideals; each named generator must generate one of the maximal right
    /// ideals above an unramified prime of `s`, and distinct labels must hit
    /// distinct ideals.  Unnamed leaves get automatic labels.  `named_units`
    /// designates the unit generators; when empty, every norm-one unit is its
    /// own generator with an automatic label.
    pub fn new(
        order: QuatOrder,
        s: &[PrimeIdeal],
        named_gens: &BTreeMap<String, Quaternion>,
        named_units: &BTreeMap<String, Quaternion>,
    ) -> Result<SynthesisContext, Error> {
        let alg = order.alg.clone();
        if !alg.is_definite() {
            return Err(Error::Indefinite);
        }

        let mut s_sorted: Vec<PrimeIdeal> = s.to_vec();
        s_sorted.sort_by(|x, y| (&x.p, &x.gen).cmp(&(&y.p, &y.gen)));
        s_sorted.dedup_by(|x, y| x.gen == y.gen);

        let mut s1 = Vec::new();
        let mut ram = Vec::new();
        for p in s_sorted {
            if order.prime_divides_discriminant(&p)? {
                ram.push(p);
            } else {
                s1.push(p);
            }
        }

        // Leaves: one per maximal right ideal above each prime of s1.
        let mut leaves: Vec<LeafGen> = Vec::new();
        for (prime_idx, p) in s1.iter().enumerate() {
            let ideals = maximal_right_ideals(&order, p)?;
            for (point_idx, ideal) in ideals.into_iter().enumerate() {
                let value = principal_generator(&ideal, &order).ok_or_else(|| {
                    Error::NotPrincipal(format!(
                        "maximal right ideal above {} has no single generator",
                        p.p
                    ))
                })?;
                leaves.push(LeafGen {
                    label: String::new(),
                    value,
                    prime_idx,
                    point_idx,
                    conj_leaf: usize::MAX,
                    ideal,
                });
            }
        }

        // Named generator overrides: match by ideal, install label and value.
        let mut named_leaf: Vec<Option<String>> = vec![None; leaves.len()];
        for (label, q) in named_gens {
            check_label(label)?;
            if !order.contains(q) {
                return Err(Error::Config(format!(
                    "generator `{label}` is not in the order"
                )));
            }
            let content = order_content(&order, q);
            let prim = q.scale(&FieldElem::from_ring(content).inv());
            let ideal = Ideal::right_principal(&order, &prim);
            let hit = leaves.iter().position(|l| l.ideal.lattice == ideal.lattice);
            match hit {
                Some(idx) => {
                    if let Some(other) = &named_leaf[idx] {
                        return Err(Error::Config(format!(
                            "generators `{other}` and `{label}` generate the same ideal"
                        )));
                    }
                    named_leaf[idx] = Some(label.clone());
                    leaves[idx].value = prim;
                }
                None => {
                    return Err(Error::Config(format!(
                        "generator `{label}` does not generate a maximal ideal above the \
                         unramified primes of S"
                    )));
                }
            }
        }
        let single_prime = s1.len() == 1;
        for (idx, leaf) in leaves.iter_mut().enumerate() {
            leaf.label = match &named_leaf[idx] {
                Some(l) => l.clone(),
                None if single_prime => format!("G{}", leaf.point_idx),
                None => format!("G{}_{}", leaf.prime_idx, leaf.point_idx),
            };
        }

        // Conjugate pairing: the ideal generated by conj(value) is again a
        // maximal right ideal above the same prime.
        let conj_ideals: Vec<Ideal> = leaves
            .iter()
            .map(|l| Ideal::right_principal(&order, &l.value.conj()))
            .collect();
        for i in 0..leaves.len() {
            let pi = leaves[i].prime_idx;
            let hit = leaves
                .iter()
                .position(|m| m.prime_idx == pi && m.ideal.lattice == conj_ideals[i].lattice)
                .ok_or_else(|| {
                    Error::Config("conjugate ideal missing from the leaf list".into())
                })?;
            leaves[i].conj_leaf = hit;
        }

        // Ramified generators.
        let mut ram_gens = Vec::new();
        for p in &ram {
            let ideal = ramified_maximal_ideal(&order, p);
            let value = principal_generator(&ideal, &order).ok_or_else(|| {
                Error::NotPrincipal(format!(
                    "two-sided maximal ideal above {} has no single generator",
                    p.p
                ))
            })?;
            ram_gens.push(RamGen { label: format!("R{}", p.p), value, prime: p.clone() });
        }

        // Units.
        let mut units = norm_one_units(&order);
        units.sort_by(cmp_embed_lex);
        let mut unit_index = HashMap::new();
        for (i, u) in units.iter().enumerate() {
            unit_index.insert(u.clone(), i);
        }
        let unit_gens: Vec<(String, Quaternion)> = if named_units.is_empty() {
            units
                .iter()
                .enumerate()
                .map(|(i, u)| (format!("U{i}"), u.clone()))
                .collect()
        } else {
            for (label, u) in named_units {
                check_label(label)?;
                if !unit_index.contains_key(u) {
                    return Err(Error::Config(format!(
                        "unit generator `{label}` is not a norm-one unit of the order"
                    )));
                }
            }
            named_units.iter().map(|(l, u)| (l.clone(), u.clone())).collect()
        };

        // Breadth-first search: shortest exact word over unit_gens for every
        // norm-one unit.
        let one = Quaternion::one(alg.ring);
        let start = *unit_index
            .get(&one)
            .ok_or_else(|| Error::Config("1 is not among the norm-one units".into()))?;
        let mut unit_words: Vec<Option<Vec<usize>>> = vec![None; units.len()];
        unit_words[start] = Some(Vec::new());
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for (gi, (_, g)) in unit_gens.iter().enumerate() {
                let next = alg.mul(&units[cur], g);
                let ni = *unit_index
                    .get(&next)
                    .expect("product of norm-one units is a norm-one unit");
                if unit_words[ni].is_none() {
                    let mut w = unit_words[cur].clone().unwrap();
                    w.push(gi);
                    unit_words[ni] = Some(w);
                    queue.push_back(ni);
                }
            }
        }
        if unit_words.iter().any(Option::is_none) {
            return Err(Error::UnitNotGenerated);
        }
        let unit_words: Vec<Vec<usize>> = unit_words.into_iter().map(Option::unwrap).collect();

        // Label maps; all labels must be distinct across kinds.
        let mut gen_values = HashMap::new();
        for l in &leaves {
            check_label(&l.label)?;
            if gen_values.insert(l.label.clone(), l.value.clone()).is_some() {
                return Err(Error::Config(format!("duplicate label `{}`", l.label)));
            }
        }
        for r in &ram_gens {
            if gen_values.insert(r.label.clone(), r.value.clone()).is_some() {
                return Err(Error::Config(format!("duplicate label `{}`", r.label)));
            }
        }
        let mut unit_values = HashMap::new();
        for (l, u) in &unit_gens {
            if gen_values.contains_key(l) || unit_values.insert(l.clone(), u.clone()).is_some() {
                return Err(Error::Config(format!("duplicate label `{l}`")));
            }
        }

        let mut label_sorted_leaves: Vec<usize> = (0..leaves.len()).collect();
        label_sorted_leaves.sort_by(|&a, &b| leaves[a].label.cmp(&leaves[b].label));

        Ok(SynthesisContext {
            alg,
            order,
            s1,
            ram,
            leaves,
            ram_gens,
            units,
            unit_gens,
            unit_words,
            unit_index,
            gen_values,
            unit_values,
            label_sorted_leaves,
        })
    }

    pub fn ring(&self) -> Ring {
        self.alg.ring
    }

    /// The largest central `c` with `q ∈ cO` (canonical associate).
    pub fn content(&self, q: &Quaternion) -> RingElem {
        order_content(&self.order, q)
    }

    /// The stored generator word for `units[idx]`, as `UNIT` tokens.
    pub fn unit_word_tokens(&self, idx: usize) -> Vec<Token> {
        self.unit_words[idx]
            .iter()
            .map(|&gi| Token::Unit(self.unit_gens[gi].0.clone()))
            .collect()
    }

    /// Multiply out a word (left to right).
    pub fn evaluate(&self, word: &GateWord) -> Result<Quaternion, Error> {
        let mut acc = Quaternion::one(self.ring());
        for t in &word.tokens {
            match t {
                Token::Gen(l) => {
                    let v = self
                        .gen_values
                        .get(l)
                        .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
                    acc = self.alg.mul(&acc, v);
                }
                Token::Unit(l) => {
                    let v = self
                        .unit_values
                        .get(l)
                        .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
                    acc = self.alg.mul(&acc, v);
                }
                Token::Central(x) => acc = acc.scale(x),
            }
        }
        Ok(acc)
    }

    /// Number of `GEN` tokens naming leaf generators.
    pub fn leaf_gen_count(&self, word: &GateWord) -> usize {
        word.tokens
            .iter()
            .filter(|t| matches!(t, Token::Gen(l) if self.leaf_by_label(l).is_some()))
            .count()
    }

    fn leaf_by_label(&self, label: &str) -> Option<usize> {
        self.leaves.iter().position(|l| l.label == label)
    }

    /// Reduced-norm valuations of the primitive part of `q` at the unramified
    /// primes of `S`, and an error if any prime outside `S` remains.
    fn primitive_valuations(&self, q: &Quaternion) -> Result<Vec<u32>, Error> {
        let content = self.content(q);
        let prim = q.scale(&FieldElem::from_ring(content).inv());
        let nrd = self.alg.nrd(&prim);
        debug_assert!(nrd.denominator() == &num_bigint::BigInt::from(1));
        let nrd = nrd.to_ring();
        let mut vals = vec![0u32; self.s1.len()];
        if nrd.is_unit() {
            return Ok(vals);
        }
        for (p, e) in factor_ring_elem(&nrd)? {
            if let Some(i) = self.s1.iter().position(|s| s.gen == p.gen) {
                vals[i] = e;
            } else if self.ram.iter().any(|s| s.gen == p.gen) {
                // Ramified leftovers are peeled by the two-sided step.
            } else {
                return Err(Error::NormNotSupported { prime: p.p.to_string() });
            }
        }
        Ok(vals)
    }

    /// Synthesis complexity μ(q): the reduced-norm valuation of the primitive
    /// part of the integral rescaling of `q` over the unramified primes of
    /// `S`.  Every leaf generator has μ = 1; μ is the exact `GEN`-leaf count
    /// of the synthesized word.
    pub fn complexity(&self, q: &Quaternion) -> Result<u64, Error> {
        if q.is_zero() {
            return Err(Error::Config("complexity of 0 is undefined".into()));
        }
        let (scaled, _) = crate::unitary::rescale_integral(q, &self.order);
        let vals = self.primitive_valuations(&scaled)?;
        Ok(vals.iter().map(|&v| v as u64).sum())
    }

    /// Stage 1: peel leaf generators off `q` (which must lie in the order)
    /// until its primitive part has unit reduced norm away from the ramified
    /// primes.  Returns the leaf indices in product order together with the
    /// remainder, so that `q = leaves · remainder` exactly.
    ///
    /// Factors are peeled smallest prime first; above one prime, the ideal
    /// `qO` lies in a unique maximal right ideal, so the emitted sequence is
    /// canonical.
    pub fn stage1(&self, q: &Quaternion) -> Result<(Vec<usize>, Quaternion), Error> {
        if q.is_zero() || !self.order.contains(q) {
            return Err(Error::NotIntegral);
        }
        let content = self.content(q);
        let mut cur = q.scale(&FieldElem::from_ring(content.clone()).inv());
        let mut picked = Vec::new();
        let mut vals = self.primitive_valuations(&cur)?;
        let budget: u64 = vals.iter().map(|&v| v as u64).sum();
        for _ in 0..budget {
            let Some(pi) = vals.iter().position(|&v| v > 0) else { break };
            let mut advanced = false;
            for (li, leaf) in self.leaves.iter().enumerate() {
                if leaf.prime_idx != pi {
                    continue;
                }
                let cand = self.alg.mul(&self.alg.inverse(&leaf.value), &cur);
                if self.order.contains(&cand) {
                    picked.push(li);
                    cur = cand;
                    vals[pi] -= 1;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return Err(Error::DescentStuck(format!(
                    "no leaf above prime {} divides the remainder",
                    self.s1[pi].p
                )));
            }
        }
        debug_assert!(vals.iter().all(|&v| v == 0));
        Ok((picked, cur.scale(&FieldElem::from_ring(content))))
    }

    /// Decompose a remainder whose primitive reduced norm is supported on
    /// the ramified primes: `q = ram-gens · unit-word · α` with `α` central.
    pub fn two_sided_decompose(
        &self,
        q: &Quaternion,
    ) -> Result<(Vec<Token>, Vec<Token>, FieldElem), Error> {
        if q.is_zero() || !self.order.contains(q) {
            return Err(Error::NotIntegral);
        }
        let content = self.content(q);
        let mut alpha = FieldElem::from_ring(content.clone());
        let mut cur = q.scale(&alpha.inv());

        let mut ram_tokens = Vec::new();
        for rg in &self.ram_gens {
            let nrd = self.alg.nrd(&cur).to_ring();
            match rg.prime.valuation(&nrd) {
                0 => {}
                1 => {
                    let cand = self.alg.mul(&self.alg.inverse(&rg.value), &cur);
                    if !self.order.contains(&cand) {
                        return Err(Error::DescentStuck(format!(
                            "ramified generator {} does not divide the remainder",
                            rg.label
                        )));
                    }
                    ram_tokens.push(Token::Gen(rg.label.clone()));
                    cur = cand;
                }
                _ => {
                    return Err(Error::DescentStuck(format!(
                        "primitive remainder has norm valuation > 1 at ramified prime {}",
                        rg.prime.p
                    )));
                }
            }
        }

        let nrd = self.alg.nrd(&cur).to_ring();
        if !nrd.is_unit() {
            return Err(Error::NormNotSupported { prime: crate::literal::print_ring(&nrd) });
        }
        // nrd(cur) is a totally positive unit, i.e. an even power of the
        // fundamental unit; shift it into the central factor.
        let m = even_unit_exponent(&nrd)?;
        if m != 0 {
            let eps = self.ring().fundamental_unit().expect("quadratic ring");
            let (pos, neg) = (eps.pow(m.unsigned_abs() as u32), unit_inverse(&eps).pow(m.unsigned_abs() as u32));
            let (num, den) = if m > 0 { (pos, neg) } else { (neg, pos) };
            cur = cur.scale_ring(&den);
            alpha = alpha.mul(&FieldElem::from_ring(num));
        }
        debug_assert!(self.alg.nrd(&cur).to_ring().is_unit());
        debug_assert_eq!(
            self.alg.nrd(&cur),
            FieldElem::from_ring(RingElem::int(self.ring(), 1))
        );

        let idx = *self
            .unit_index
            .get(&cur)
            .ok_or(Error::UnitNotGenerated)?;
        let unit_tokens: Vec<Token> = self.unit_words[idx]
            .iter()
            .map(|&gi| Token::Unit(self.unit_gens[gi].0.clone()))
            .collect();
        Ok((ram_tokens, unit_tokens, alpha))
    }

    fn assemble(
        &self,
        beta: &RingElem,
        gen_tokens: Vec<Token>,
        remainder: &Quaternion,
    ) -> Result<GateWord, Error> {
        let (ram_tokens, unit_tokens, alpha) = self.two_sided_decompose(remainder)?;
        let central = alpha.div(&FieldElem::from_ring(beta.clone()));
        let mut tokens = gen_tokens;
        tokens.extend(ram_tokens);
        tokens.extend(unit_tokens);
        let one = FieldElem::from_ring(RingElem::int(self.ring(), 1));
        if central != one || tokens.is_empty() {
            tokens.push(Token::Central(central));
        }
        Ok(GateWord { tokens })
    }

    /// Chain synthesis: rescale to the order, peel the unique chain of leaf
    /// generators smallest prime first, then decompose the two-sided
    /// remainder.  The result evaluates to `q` exactly and its leaf sequence
    /// is canonical.
    pub fn synthesize_chain(&self, q: &Quaternion) -> Result<GateWord, Error> {
        if q.is_zero() {
            return Err(Error::Config("cannot synthesize 0".into()));
        }
        let (scaled, beta) = crate::unitary::rescale_integral(q, &self.order);
        let (picked, rem) = self.stage1(&scaled)?;
        let gen_tokens = picked
            .into_iter()
            .map(|li| Token::Gen(self.leaves[li].label.clone()))
            .collect();
        self.assemble(&beta, gen_tokens, &rem)
    }

    /// Greedy synthesis: at each step scan the leaf generators in label
    /// order and divide out one that strictly decreases μ of the remainder.
    /// The word evaluates to `q` exactly but need not be canonical.
    pub fn synthesize_greedy(&self, q: &Quaternion) -> Result<GateWord, Error> {
        if q.is_zero() {
            return Err(Error::Config("cannot synthesize 0".into()));
        }
        let (scaled, beta) = crate::unitary::rescale_integral(q, &self.order);
        let content = self.content(&scaled);
        let mut cur = scaled.scale(&FieldElem::from_ring(content.clone()).inv());
        let mut gen_tokens = Vec::new();
        let mut mu: u64 = self
            .primitive_valuations(&cur)?
            .iter()
            .map(|&v| v as u64)
            .sum();
        while mu > 0 {
            let mut best: Option<(u64, usize, Quaternion)> = None;
            for &li in &self.label_sorted_leaves {
                let cand = self.alg.mul(&self.alg.inverse(&self.leaves[li].value), &cur);
                if !self.order.contains(&cand) {
                    continue;
                }
                let cand_mu: u64 = self
                    .primitive_valuations(&cand)?
                    .iter()
                    .map(|&v| v as u64)
                    .sum();
                if best.as_ref().is_none_or(|(b, _, _)| cand_mu < *b) {
                    best = Some((cand_mu, li, cand));
                }
            }
            let Some((next_mu, li, cand)) = best else {
                return Err(Error::DescentStuck("no leaf divides the remainder".into()));
            };
            if next_mu >= mu {
                return Err(Error::DescentStuck(format!(
                    "complexity did not decrease: {mu} -> {next_mu}"
                )));
            }
            gen_tokens.push(Token::Gen(self.leaves[li].label.clone()));
            cur = cand;
            mu = next_mu;
        }
        let rem = cur.scale(&FieldElem::from_ring(content));
        self.assemble(&beta, gen_tokens, &rem)
    }

    /// A leaf sequence is canonical when prime indices never decrease and no
    /// adjacent pair collapses (the successor of a leaf above the same prime
    /// must not be its conjugate leaf).
    pub fn leaf_sequence_is_canonical(&self, seq: &[usize]) -> bool {
        seq.windows(2).all(|w| {
            let (a, b) = (&self.leaves[w[0]], &self.leaves[w[1]]);
            match a.prime_idx.cmp(&b.prime_idx) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => w[1] != a.conj_leaf,
            }
        })
    }

    /// Whether the `GEN` tokens of a word form a canonical leaf sequence
    /// followed only by ramified generators.
    pub fn word_is_canonical(&self, word: &GateWord) -> Result<bool, Error> {
        let mut seq = Vec::new();
        let mut seen_ram = false;
        for t in &word.tokens {
            if let Token::Gen(l) = t {
                match self.leaf_by_label(l) {
                    Some(li) => {
                        if seen_ram {
                            return Ok(false);
                        }
                        seq.push(li);
                    }
                    None => {
                        if !self.gen_values.contains_key(l) {
                            return Err(Error::UnknownLabel(l.clone()));
                        }
                        seen_ram = true;
                    }
                }
            }
        }
        Ok(self.leaf_sequence_is_canonical(&seq))
    }

    /// All canonical leaf sequences of the given length.
    pub fn canonical_words(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == len {
                out.push(cur);
                continue;
            }
            // Extend in reverse so the output is lexicographic in leaf index.
            for li in (0..self.leaves.len()).rev() {
                let ok = match cur.last() {
                    None => true,
                    Some(&prev) => {
                        let a: &LeafGen = &self.leaves[prev];
                        let b: &LeafGen = &self.leaves[li];
                        match a.prime_idx.cmp(&b.prime_idx) {
                            std::cmp::Ordering::Less => true,
                            std::cmp::Ordering::Greater => false,
                            std::cmp::Ordering::Equal => li != a.conj_leaf,
                        }
                    }
                };
                if ok {
                    let mut next = cur.clone();
                    next.push(li);
                    stack.push(next);
                }
            }
        }
        out
    }

    /// Product of the leaf values of a sequence.
    pub fn leaf_product(&self, seq: &[usize]) -> Quaternion {
        let mut acc = Quaternion::one(self.ring());
        for &li in seq {
            acc = self.alg.mul(&acc, &self.leaves[li].value);
        }
        acc
    }
}

/// Content with respect to an order: the gcd of the order coordinates.
pub fn order_content(order: &QuatOrder, q: &Quaternion) -> RingElem {
    let coords = order
        .coordinates(q)
        .expect("content is only defined for elements of the order");
    let mut g = RingElem::int(order.ring(), 0);
    for c in coords {
        g = g.gcd(&c);
    }
    g
}

/// Multiplicative inverse of a unit of the coefficient ring.
fn unit_inverse(u: &RingElem) -> RingElem {
    debug_assert!(u.is_unit());
    let nm = u.mul(&u.conj());
    let one = RingElem::int(u.ring, 1);
    if nm == one {
        u.conj()
    } else {
        // Norm -1: u · (-conj(u)) = 1.
        u.conj().neg()
    }
}

/// Write a totally positive unit as `ε^(2m)` for the fundamental unit `ε`
/// and return `m` (0 over the rationals).
fn even_unit_exponent(nu: &RingElem) -> Result<i64, Error> {
    let one = RingElem::int(nu.ring, 1);
    if *nu == one {
        return Ok(0);
    }
    let eps = nu
        .ring
        .fundamental_unit()
        .ok_or_else(|| Error::Config(format!("{} is not a totally positive square unit", nu)))?;
    let e2 = eps.mul(&eps);
    let e2_inv = {
        let inv = unit_inverse(&eps);
        inv.mul(&inv)
    };
    let mut cur = nu.clone();
    let mut m: i64 = 0;
    for _ in 0..10_000 {
        if cur == one {
            return Ok(m);
        }
        if cur.cmp_embed(&one) == std::cmp::Ordering::Greater {
            cur = cur.mul(&e2_inv);
            m += 1;
        } else {
            cur = cur.mul(&e2);
            m -= 1;
        }
    }
    Err(Error::Config(format!("{nu} is not an even power of the fundamental unit")))
}

/// Canonical representative of the projective class of a nonzero quaternion:
/// clear denominators, strip the content, then normalize the first nonzero
/// coordinate to its canonical associate.
pub fn projective_normalize(q: &Quaternion) -> Quaternion {
    assert!(!q.is_zero());
    let ring = q.c[0].ring();
    let mut den = num_bigint::BigInt::from(1);
    for c in &q.c {
        den = num_integer::lcm(den, c.denominator().clone());
    }
    let mut scaled = q.scale(&FieldElem::new(RingElem::new(ring, den, 0.into()), 1.into()));
    let mut g = RingElem::int(ring, 0);
    for c in &scaled.c {
        debug_assert!(c.denominator() == &num_bigint::BigInt::from(1));
        g = g.gcd(&c.to_ring());
    }
    scaled = scaled.scale(&FieldElem::from_ring(g).inv());
    let first = scaled
        .c
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero quaternion")
        .to_ring();
    let (_, u) = first.canonical_associate_with_unit();
    scaled.scale_ring(&u)
}
