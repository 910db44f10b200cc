//! Gate-set configuration: built-in gate sets and a JSON config format.
//!
//! A config fixes the coefficient ring, the algebra parameters `D` and `b`
//! (the algebra is `(-D, -b)` over the ring's fraction field), an order
//! basis, the working prime set `S` (rational primes plus a ramification
//! selector), and optional named generators and unit generators.  All
//! numeric values are ring/field literals (`a+b*w`, optional `/den`), and
//! they round-trip through serialization verbatim.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::Lattice;
use crate::literal::{parse_field, print_field};
use crate::primes::{factor_rational_prime, PrimeIdeal};
use crate::quat::{QuatAlgebra, QuatOrder, Quaternion};
use crate::rings::{FieldElem, Ring};
use crate::synth::SynthesisContext;
use crate::unitary::{kappa_inverse, UnitaryRep};

/// One rational prime of the config, with a selector for which primes above
/// it enter `S`: the ramified one (`e = 2`) or the unramified ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeSpec {
    pub p: u64,
    pub ramified: bool,
}

/// The on-disk shape of a gate-set config.  Literals stay as strings so a
/// load/store cycle preserves them bit-exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSetConfigFile {
    pub name: String,
    /// Coefficient ring: "rational", "sqrt2" (w = √2), or "phi" (w = golden
    /// ratio).
    pub field: String,
    #[serde(rename = "D")]
    pub d: String,
    pub b: String,
    pub order_basis: [[String; 4]; 4],
    pub primes: Vec<PrimeSpec>,
    #[serde(default)]
    pub generators: BTreeMap<String, [String; 4]>,
    #[serde(default)]
    pub unit_generators: BTreeMap<String, [String; 4]>,
}

/// A validated gate set: parsed parameters, the order, and the prime set.
#[derive(Debug, Clone)]
pub struct GateSet {
    pub file: GateSetConfigFile,
    pub ring: Ring,
    pub d: FieldElem,
    pub b: FieldElem,
    pub order: QuatOrder,
    pub s: Vec<PrimeIdeal>,
    pub generators: BTreeMap<String, Quaternion>,
    pub unit_generators: BTreeMap<String, Quaternion>,
}

fn ring_from_tag(tag: &str) -> Result<Ring, Error> {
    match tag {
        "rational" => Ok(Ring::Rational),
        "sqrt2" => Ok(Ring::Sqrt2),
        "phi" => Ok(Ring::Phi),
        other => Err(Error::Config(format!(
            "unknown field tag `{other}` (expected rational, sqrt2, or phi)"
        ))),
    }
}

fn parse_quat_coords(ring: Ring, coords: &[String; 4]) -> Result<Quaternion, Error> {
    let mut c = Vec::with_capacity(4);
    for lit in coords {
        c.push(parse_field(ring, lit)?);
    }
    Ok(Quaternion::new([
        c[0].clone(),
        c[1].clone(),
        c[2].clone(),
        c[3].clone(),
    ]))
}

impl GateSet {
    pub fn name(&self) -> &str {
        &self.file.name
    }

    /// Parse and validate a JSON config.
    pub fn from_json(text: &str) -> Result<GateSet, Error> {
        let file: GateSetConfigFile =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        GateSet::from_file_data(file)
    }

    pub fn from_path(path: &std::path::Path) -> Result<GateSet, Error> {
        let text = std::fs::read_to_string(path)?;
        GateSet::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("config serialization cannot fail") + "\n"
    }

    pub fn from_file_data(file: GateSetConfigFile) -> Result<GateSet, Error> {
        let ring = ring_from_tag(&file.field)?;
        let d = parse_field(ring, &file.d)?;
        let b = parse_field(ring, &file.b)?;
        let alg = QuatAlgebra::new(ring, d.neg(), b.neg());

        let mut rows = Vec::with_capacity(4);
        for row in &file.order_basis {
            let mut r = Vec::with_capacity(4);
            for lit in row {
                r.push(parse_field(ring, lit)?);
            }
            rows.push([r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()]);
        }
        let lattice = Lattice::from_field_rows(ring, rows);
        let order = QuatOrder::new(alg.clone(), lattice)?;
        if alg.is_definite() && !order.is_maximal()? {
            return Err(Error::Config(format!(
                "order basis of `{}` does not span a maximal order",
                file.name
            )));
        }

        let mut s: Vec<PrimeIdeal> = Vec::new();
        for spec in &file.primes {
            let above = factor_rational_prime(ring, &num_bigint::BigInt::from(spec.p))?;
            let matched: Vec<PrimeIdeal> = above
                .into_iter()
                .filter(|q| (q.e == 2) == spec.ramified)
                .collect();
            if matched.is_empty() {
                return Err(Error::Config(format!(
                    "no prime above {} with ramified = {}",
                    spec.p, spec.ramified
                )));
            }
            s.extend(matched);
        }
        s.sort_by(|x, y| (&x.p, &x.gen).cmp(&(&y.p, &y.gen)));
        s.dedup_by(|x, y| x.gen == y.gen);
        if s.is_empty() {
            return Err(Error::Config("prime set S is empty".into()));
        }

        let mut generators = BTreeMap::new();
        for (label, coords) in &file.generators {
            let q = parse_quat_coords(ring, coords)?;
            if !order.contains(&q) {
                return Err(Error::Config(format!(
                    "generator `{label}` is not in the order"
                )));
            }
            generators.insert(label.clone(), q);
        }
        let mut unit_generators = BTreeMap::new();
        for (label, coords) in &file.unit_generators {
            let q = parse_quat_coords(ring, coords)?;
            if !order.contains(&q) {
                return Err(Error::Config(format!(
                    "unit generator `{label}` is not in the order"
                )));
            }
            unit_generators.insert(label.clone(), q);
        }

        Ok(GateSet { file, ring, d, b, order, s, generators, unit_generators })
    }

    /// Build the synthesis context (definite algebras only; the named
    /// generators must match the maximal ideals above `S` and the unit
    /// generators must generate the norm-one unit group).
    pub fn context(&self) -> Result<SynthesisContext, Error> {
        SynthesisContext::new(
            self.order.clone(),
            &self.s,
            &self.generators,
            &self.unit_generators,
        )
    }

    /// The 2×2 unnormalized matrix data of a quaternion under this gate
    /// set's algebra parameters.
    pub fn unitary_rep(&self, q: &Quaternion) -> UnitaryRep {
        kappa_inverse(&self.d, &self.b, q)
    }

    /// Names of the built-in gate sets.
    pub fn builtin_names() -> &'static [&'static str] {
        &["clifford-t", "clifford-t-v", "fibonacci", "v-basis"]
    }

    /// Load a built-in gate set by name.
    pub fn builtin(name: &str) -> Result<GateSet, Error> {
        let file = match name {
            "clifford-t" => clifford_t_file(),
            "clifford-t-v" => clifford_t_v_file(),
            "v-basis" => v_basis_file(),
            "fibonacci" => fibonacci_file(),
            other => {
                return Err(Error::Config(format!(
                    "unknown gate set `{other}` (built-ins: {})",
                    GateSet::builtin_names().join(", ")
                )))
            }
        };
        GateSet::from_file_data(file)
    }
}

fn lit_row(row: [&str; 4]) -> [String; 4] {
    row.map(str::to_string)
}

/// Basis of the maximal order used by the √2 gate sets, as literals.
fn sqrt2_order_rows() -> [[String; 4]; 4] {
    [
        lit_row(["1", "0", "0", "0"]),
        lit_row(["w/2", "w/2", "0", "0"]),
        lit_row(["w/2", "0", "w/2", "0"]),
        lit_row(["1/2", "1/2", "1/2", "1/2"]),
    ]
}

fn clifford_t_file() -> GateSetConfigFile {
    GateSetConfigFile {
        name: "clifford-t".into(),
        field: "sqrt2".into(),
        d: "1".into(),
        b: "1".into(),
        order_basis: sqrt2_order_rows(),
        primes: vec![PrimeSpec { p: 2, ramified: true }],
        generators: BTreeMap::new(),
        unit_generators: BTreeMap::from([
            ("H".to_string(), lit_row(["0", "w/2", "0", "w/2"])),
            ("S".to_string(), lit_row(["w/2", "-w/2", "0", "0"])),
        ]),
    }
}

fn v_gate_entries() -> BTreeMap<String, [String; 4]> {
    BTreeMap::from([
        ("V1+".to_string(), lit_row(["1", "2", "0", "0"])),
        ("V1-".to_string(), lit_row(["1", "-2", "0", "0"])),
        ("V2+".to_string(), lit_row(["1", "0", "2", "0"])),
        ("V2-".to_string(), lit_row(["1", "0", "-2", "0"])),
        ("V3+".to_string(), lit_row(["1", "0", "0", "2"])),
        ("V3-".to_string(), lit_row(["1", "0", "0", "-2"])),
    ])
}

fn v_basis_file() -> GateSetConfigFile {
    GateSetConfigFile {
        name: "v-basis".into(),
        field: "rational".into(),
        d: "1".into(),
        b: "1".into(),
        order_basis: [
            lit_row(["1", "0", "0", "0"]),
            lit_row(["0", "1", "0", "0"]),
            lit_row(["0", "0", "1", "0"]),
            lit_row(["1/2", "1/2", "1/2", "1/2"]),
        ],
        primes: vec![PrimeSpec { p: 5, ramified: false }],
        generators: v_gate_entries(),
        unit_generators: BTreeMap::new(),
    }
}

fn clifford_t_v_file() -> GateSetConfigFile {
    GateSetConfigFile {
        name: "clifford-t-v".into(),
        field: "sqrt2".into(),
        d: "1".into(),
        b: "1".into(),
        order_basis: sqrt2_order_rows(),
        primes: vec![
            PrimeSpec { p: 2, ramified: true },
            PrimeSpec { p: 5, ramified: false },
        ],
        generators: v_gate_entries(),
        unit_generators: BTreeMap::from([
            ("H".to_string(), lit_row(["0", "w/2", "0", "w/2"])),
            ("S".to_string(), lit_row(["w/2", "-w/2", "0", "0"])),
        ]),
    }
}

/// The golden-ratio gate set (indefinite algebra): loadable for κ and norm
/// computation; synthesis refuses it.
fn fibonacci_file() -> GateSetConfigFile {
    GateSetConfigFile {
        name: "fibonacci".into(),
        field: "phi".into(),
        d: "3-w".into(),
        b: "-1+w".into(),
        order_basis: [
            lit_row(["1", "0", "0", "0"]),
            lit_row(["0", "1", "0", "0"]),
            lit_row(["0", "0", "1", "0"]),
            lit_row(["0", "0", "0", "1"]),
        ],
        primes: vec![PrimeSpec { p: 5, ramified: true }],
        generators: BTreeMap::new(),
        unit_generators: BTreeMap::new(),
    }
}

/// Human-readable description of a gate set's derived data (used by the CLI).
pub fn describe(gs: &GateSet) -> String {
    let mut out = String::new();
    out.push_str(&format!("gate set: {}\n", gs.name()));
    out.push_str(&format!("field: {}\n", gs.file.field));
    out.push_str(&format!(
        "algebra: (-D, -b) with D = {}, b = {}\n",
        print_field(&gs.d),
        print_field(&gs.b)
    ));
    out.push_str(&format!(
        "definite: {}\n",
        if gs.order.alg.is_definite() { "yes" } else { "no" }
    ));
    let primes: Vec<String> = gs
        .s
        .iter()
        .map(|p| crate::literal::print_ring(&p.gen))
        .collect();
    out.push_str(&format!("S: [{}]\n", primes.join(", ")));
    out
}
