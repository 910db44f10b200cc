//! Exact text round-trip for ring elements, field elements and quaternions.
//!
//! Grammar, whitespace-insensitive (`w` is the non-rational basis element of
//! the coefficient ring, absent over the integers):
//!
//! - ring element: `a`, `w`, `b*w`, `a+b*w` with decimal integers a, b
//! - field element: a ring element with optional `/den` suffix (den a
//!   positive decimal integer) binding the whole preceding sum, so
//!   `1+2*w/2` means (1+2w)/2; redundant outer parentheses are accepted
//! - quaternion: `c0 + c1*i + c2*j + c3*k`; bare `i`, `j`, `k` stand for a
//!   coefficient of 1. All scalar (axis-free) terms together form the c0
//!   field literal, so a trailing `/den` on the last scalar term divides the
//!   whole scalar sum. An i/j/k coefficient is a single atom: an integer,
//!   `w`, `b*w`, optionally `/den`, or a parenthesized ring element with
//!   optional `/den` — e.g. `(1+2*w)/2*i`.
//!
//! Printing always emits a string this module parses back bit-exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::quat::Quaternion;
use crate::rings::{FieldElem, Ring, RingElem};

pub fn print_ring(x: &RingElem) -> String {
    if x.b.is_zero() {
        return x.a.to_string();
    }
    let w_part = if x.b == BigInt::one() {
        "w".to_string()
    } else if x.b == -BigInt::one() {
        "-w".to_string()
    } else {
        format!("{}*w", x.b)
    };
    if x.a.is_zero() {
        w_part
    } else if w_part.starts_with('-') {
        format!("{}{}", x.a, w_part)
    } else {
        format!("{}+{}", x.a, w_part)
    }
}

pub fn print_field(x: &FieldElem) -> String {
    let num = print_ring(x.numerator());
    if x.denominator() == &BigInt::one() {
        num
    } else {
        format!("{}/{}", num, x.denominator())
    }
}

pub fn print_quaternion(q: &Quaternion) -> String {
    let mut terms: Vec<String> = Vec::new();
    if !q.c[0].is_zero() {
        terms.push(print_field(&q.c[0]));
    }
    for (axis, sym) in [(1, "i"), (2, "j"), (3, "k")] {
        let c = &q.c[axis];
        if c.is_zero() {
            continue;
        }
        let num = c.numerator();
        let den = c.denominator();
        let simple = den == &BigInt::one() && (num.a.is_zero() || num.b.is_zero());
        let coeff = if simple && num.a == BigInt::one() && num.b.is_zero() {
            String::new()
        } else if simple && num.a == -BigInt::one() && num.b.is_zero() {
            "-".to_string()
        } else if simple {
            format!("{}*", print_ring(num))
        } else if num.a.is_zero() || num.b.is_zero() {
            // single-term numerator with denominator: w/2*i style
            format!("{}*", print_field(c))
        } else {
            let frac = if den == &BigInt::one() {
                format!("({})", print_ring(num))
            } else {
                format!("({})/{}", print_ring(num), den)
            };
            format!("{}*", frac)
        };
        terms.push(format!("{}{}", coeff, sym));
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, t) in terms.iter().enumerate() {
        if n > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    out
}

fn parse_int(s: &str) -> Result<BigInt, Error> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '+') {
        return Err(Error::Parse(format!("expected integer, found `{}`", s)));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("invalid integer `{}`", s)))
}

/// Split a parenthesis-free sum into signed terms.
fn signed_terms(s: &str) -> Result<Vec<String>, Error> {
    if s.is_empty() {
        return Err(Error::Parse("empty literal".to_string()));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if !cur.is_empty() {
                    terms.push(std::mem::take(&mut cur));
                }
                if ch == '-' {
                    cur.push('-');
                }
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() || cur == "-" {
        return Err(Error::Parse(format!("dangling sign in `{}`", s)));
    }
    terms.push(cur);
    Ok(terms)
}

/// Parse one signed ring term: `a`, `w`, `-w`, `b*w`.
fn parse_ring_term(ring: Ring, term: &str) -> Result<RingElem, Error> {
    let (body, neg) = match term.strip_prefix('-') {
        Some(rest) => (rest, true),
        None => (term, false),
    };
    let val = if body == "w" {
        if ring == Ring::Rational {
            return Err(Error::Parse("`w` is not defined over the integers".to_string()));
        }
        RingElem::new(ring, BigInt::zero(), BigInt::one())
    } else if let Some(coef) = body.strip_suffix("*w") {
        if ring == Ring::Rational {
            return Err(Error::Parse("`w` is not defined over the integers".to_string()));
        }
        RingElem::new(ring, BigInt::zero(), parse_int(coef)?)
    } else {
        RingElem::new(ring, parse_int(body)?, BigInt::zero())
    };
    Ok(if neg { val.neg() } else { val })
}

fn parse_ring_sum(ring: Ring, s: &str) -> Result<RingElem, Error> {
    let mut acc = RingElem::zero(ring);
    for term in signed_terms(s)? {
        acc = acc.add(&parse_ring_term(ring, &term)?);
    }
    Ok(acc)
}

pub fn parse_ring(ring: Ring, input: &str) -> Result<RingElem, Error> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    parse_ring_sum(ring, &s)
}

/// Parse `body` or `body/den` or `(body)` or `(body)/den`.
fn parse_field_str(ring: Ring, s: &str) -> Result<FieldElem, Error> {
    let (num_str, den) = split_denominator(s)?;
    let inner = strip_outer_parens(num_str)?;
    let num = parse_ring_sum(ring, inner)?;
    Ok(FieldElem::new(num, den))
}

fn split_denominator(s: &str) -> Result<(&str, BigInt), Error> {
    match s.rfind('/') {
        Some(pos) => {
            let den = parse_int(&s[pos + 1..])?;
            if den.is_positive() {
                Ok((&s[..pos], den))
            } else {
                Err(Error::Parse(format!("denominator must be positive in `{}`", s)))
            }
        }
        None => Ok((s, BigInt::one())),
    }
}

fn strip_outer_parens(s: &str) -> Result<&str, Error> {
    if let Some(rest) = s.strip_prefix('(') {
        rest.strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{}`", s)))
    } else if s.contains('(') || s.contains(')') {
        Err(Error::Parse(format!("misplaced parenthesis in `{}`", s)))
    } else {
        Ok(s)
    }
}

pub fn parse_field(ring: Ring, input: &str) -> Result<FieldElem, Error> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    parse_field_str(ring, &s)
}

/// Split a quaternion literal into top-level signed terms (splits at +/-
/// outside parentheses only).
fn quat_terms(s: &str) -> Result<Vec<String>, Error> {
    if s.is_empty() {
        return Err(Error::Parse("empty quaternion literal".to_string()));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced `)` in `{}`", s)))?;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.is_empty() {
                    terms.push(std::mem::take(&mut cur));
                }
                if ch == '-' {
                    cur.push('-');
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `(` in `{}`", s)));
    }
    if cur.is_empty() || cur == "-" {
        return Err(Error::Parse(format!("dangling sign in `{}`", s)));
    }
    terms.push(cur);
    Ok(terms)
}

pub fn parse_quaternion(ring: Ring, input: &str) -> Result<Quaternion, Error> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs: [FieldElem; 4] = std::array::from_fn(|_| FieldElem::zero(ring));
    let mut scalar_parts: Vec<String> = Vec::new();
    for term in quat_terms(&s)? {
        let axis = match term.chars().last() {
            Some('i') => 1,
            Some('j') => 2,
            Some('k') => 3,
            _ => 0,
        };
        if axis == 0 {
            scalar_parts.push(term);
            continue;
        }
        let body = &term[..term.len() - 1];
        let coeff = if body.is_empty() {
            FieldElem::from_int(ring, 1)
        } else if body == "-" {
            FieldElem::from_int(ring, -1)
        } else if let Some(atom) = body.strip_suffix('*') {
            let (neg, atom) = match atom.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, atom),
            };
            let v = parse_field_str(ring, atom)?;
            if neg {
                v.neg()
            } else {
                v
            }
        } else {
            return Err(Error::Parse(format!(
                "expected `*` between coefficient and axis in `{}`",
                term
            )));
        };
        coeffs[axis] = coeffs[axis].add(&coeff);
    }
    if !scalar_parts.is_empty() {
        let joined = scalar_parts
            .iter()
            .enumerate()
            .map(|(n, t)| {
                if n > 0 && !t.starts_with('-') {
                    format!("+{}", t)
                } else {
                    t.clone()
                }
            })
            .collect::<String>();
        coeffs[0] = coeffs[0].add(&parse_field_str(ring, &joined)?);
    }
    Ok(Quaternion::new(coeffs))
}
