//! Finite continued fractions `[a1, a2, ..., an] = a1 + 1/(a2 + 1/(... + 1/an))`.
//!
//! Two independent routes reach the unique canonical vector of a rational:
//! Euclid's algorithm on the value ([`expand_fraction`]) and local transfer
//! rewrites on the terms ([`canonicalize_by_rewrite`]). They must agree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Fraction;
use crate::error::{Error, Result};

/// Non-empty sequence of integer terms. Zeros are legal anywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CFVector(Vec<BigInt>);

impl CFVector {
    pub fn new(terms: Vec<BigInt>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self(terms))
    }

    pub fn from_i64s(terms: &[i64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of absolute values of the terms.
    pub fn weight(&self) -> BigInt {
        self.0.iter().map(|t| t.abs()).sum()
    }

    pub fn is_same_signed(&self) -> bool {
        let pos = self.0.iter().any(|t| t.is_positive());
        let neg = self.0.iter().any(|t| t.is_negative());
        !(pos && neg)
    }

    /// Odd length, termwise one sign, no zero after the first term, and a
    /// leading zero only for values strictly inside (-1, 1).
    pub fn is_canonical(&self) -> bool {
        let t = &self.0;
        if t.len().is_multiple_of(2) || !self.is_same_signed() {
            return false;
        }
        // with odd length a leading zero always means |value| < 1
        !t[1..].iter().any(|a| a.is_zero())
    }

    pub fn negated(&self) -> CFVector {
        CFVector(self.0.iter().map(|t| -t).collect())
    }
}

impl fmt::Display for CFVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

/// Serializes a big integer as a plain JSON number.
pub(crate) fn bigint_to_json(n: &BigInt) -> serde_json::Value {
    let number: serde_json::Number = n.to_string().parse().expect("integer literal");
    serde_json::Value::Number(number)
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.to_string().parse().ok(),
        _ => None,
    }
}

impl Serialize for CFVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let values: Vec<_> = self.0.iter().map(bigint_to_json).collect();
        values.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CFVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let values = Vec::<serde_json::Value>::deserialize(deserializer)?;
        let terms = values
            .iter()
            .map(|v| bigint_from_json(v).ok_or_else(|| D::Error::custom("expected an integer")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CFVector::new(terms).map_err(D::Error::custom)
    }
}

/// Integer 2x2 matrix `[[m11, m12], [m21, m22]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CFMatrix {
    pub m11: BigInt,
    pub m12: BigInt,
    pub m21: BigInt,
    pub m22: BigInt,
}

impl CFMatrix {
    pub fn identity() -> Self {
        Self {
            m11: BigInt::one(),
            m12: BigInt::zero(),
            m21: BigInt::zero(),
            m22: BigInt::one(),
        }
    }

    /// `M(a) = [[a, 1], [1, 0]]`, determinant -1.
    pub fn term(a: &BigInt) -> Self {
        Self {
            m11: a.clone(),
            m12: BigInt::one(),
            m21: BigInt::one(),
            m22: BigInt::zero(),
        }
    }

    pub fn mul(&self, rhs: &CFMatrix) -> CFMatrix {
        CFMatrix {
            m11: &self.m11 * &rhs.m11 + &self.m12 * &rhs.m21,
            m12: &self.m11 * &rhs.m12 + &self.m12 * &rhs.m22,
            m21: &self.m21 * &rhs.m11 + &self.m22 * &rhs.m21,
            m22: &self.m21 * &rhs.m12 + &self.m22 * &rhs.m22,
        }
    }

    pub fn determinant(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }
}

pub fn eval_cf(v: &CFVector) -> Fraction {
    let mut terms = v.terms().iter().rev();
    let mut acc = Fraction::integer(terms.next().expect("non-empty").clone());
    for a in terms {
        acc = acc.reciprocal().add_integer(a);
    }
    acc
}

/// Canonical expansion by Euclid on `|p|/q`, sign applied afterwards,
/// parity fixed last.
pub fn expand_fraction(x: &Fraction) -> Result<CFVector> {
    if x.is_infinite() {
        return Err(Error::InfiniteInput);
    }
    let mut p = x.numer().abs();
    let mut q = x.denom().clone();
    let mut terms = Vec::new();
    loop {
        let (quot, rem) = p.div_rem(&q);
        terms.push(quot);
        if rem.is_zero() {
            break;
        }
        p = std::mem::replace(&mut q, rem);
    }
    let v = CFVector(terms);
    let v = if x.numer().is_negative() {
        v.negated()
    } else {
        v
    };
    make_odd(&v)
}

/// Forces odd length without changing the value: `[.., a]` becomes
/// `[.., a-1, 1]` for `a > 0` and `[.., a+1, -1]` for `a < 0`. A last term
/// of `±1` is merged into its neighbour instead.
pub fn make_odd(v: &CFVector) -> Result<CFVector> {
    let n = v.len();
    if n % 2 == 1 {
        return Ok(v.clone());
    }
    let mut terms = v.terms().to_vec();
    let last = terms.pop().expect("even length is at least 2");
    if last.abs().is_one() {
        // [.., a, ±1] = [.., a ± 1]
        let merged = terms.pop().expect("even length is at least 2") + &last;
        if merged.is_zero() && !terms.is_empty() {
            return Err(Error::LastTermUnit);
        }
        terms.push(merged);
    } else if last.is_positive() {
        terms.push(&last - 1);
        terms.push(BigInt::one());
    } else if last.is_negative() {
        terms.push(&last + 1);
        terms.push(-BigInt::one());
    } else {
        return Err(Error::InvalidVector("trailing zero term".into()));
    }
    Ok(CFVector(terms))
}

/// Merges `[.., b, 0, c, ..]` into `[.., b+c, ..]` and drops a trailing
/// `[.., b, 0]` pair (worth nothing below its parent) until neither applies.
/// A leading zero stays.
pub fn collapse_zeros(v: &CFVector) -> CFVector {
    let mut t = v.terms().to_vec();
    loop {
        if let Some(i) = (1..t.len().saturating_sub(1)).find(|&i| t[i].is_zero()) {
            let c = t.remove(i + 1);
            t.remove(i);
            t[i - 1] += c;
            continue;
        }
        let n = t.len();
        if n >= 3 && t[n - 1].is_zero() {
            t.truncate(n - 2);
            continue;
        }
        break;
    }
    CFVector(t)
}

fn first_sign_change(t: &[BigInt]) -> Option<usize> {
    (1..t.len()).find(|&i| {
        (t[i - 1].is_positive() && t[i].is_negative())
            || (t[i - 1].is_negative() && t[i].is_positive())
    })
}

/// One transfer move on the first opposite-sign pair, before zero collapse.
fn transfer_raw(t: &[BigInt]) -> Option<Vec<BigInt>> {
    let i = first_sign_change(t)?;
    if t[i - 1].is_negative() {
        let flipped: Vec<BigInt> = t.iter().map(|a| -a).collect();
        let out = transfer_raw(&flipped)?;
        return Some(out.into_iter().map(|a| -a).collect());
    }
    let mut out = Vec::with_capacity(t.len() + 1);
    out.extend_from_slice(&t[..i - 1]);
    out.push(&t[i - 1] - 1);
    out.push(BigInt::one());
    out.push(-(&t[i] + BigInt::one()));
    out.extend(t[i + 1..].iter().map(|a| -a));
    Some(out)
}

/// `[.., p, -q, rest..]` with `p > 0 > -q` becomes
/// `[.., p-1, 1, q-1, -rest..]`, then zeros are collapsed.
pub fn transfer_step(v: &CFVector) -> Result<CFVector> {
    let v = collapse_zeros(v);
    let out = transfer_raw(v.terms()).ok_or(Error::NoMixedSigns)?;
    Ok(collapse_zeros(&CFVector(out)))
}

/// Rewrites to canonical form purely by local moves; each step preserves the
/// value.
pub fn canonicalize_by_rewrite(v: &CFVector) -> Result<CFVector> {
    if eval_cf(v).is_infinite() {
        return Err(Error::InfiniteValue);
    }
    let mut current = collapse_zeros(v);
    while first_sign_change(current.terms()).is_some() {
        current = transfer_step(&current)?;
    }
    make_odd(&current)
}

/// Every intermediate vector of [`canonicalize_by_rewrite`], input first.
pub fn rewrite_trace(v: &CFVector) -> Result<Vec<CFVector>> {
    if eval_cf(v).is_infinite() {
        return Err(Error::InfiniteValue);
    }
    let mut trace = vec![v.clone()];
    let mut current = collapse_zeros(v);
    if &current != v {
        trace.push(current.clone());
    }
    while first_sign_change(current.terms()).is_some() {
        current = transfer_step(&current)?;
        trace.push(current.clone());
    }
    let odd = make_odd(&current)?;
    if odd != current {
        trace.push(odd);
    }
    Ok(trace)
}

/// `M(a1) M(a2) ... M(an)` and the fraction of its first column.
pub fn matrix_form(v: &CFVector) -> (CFMatrix, Fraction) {
    let m = v
        .terms()
        .iter()
        .fold(CFMatrix::identity(), |acc, a| acc.mul(&CFMatrix::term(a)));
    let x = Fraction::new(m.m11.clone(), m.m21.clone()).expect("unimodular column is non-zero");
    (m, x)
}

/// `x = b1 - 1/(b2 - 1/(... - 1/bm))` with `b1 = ceil(x)` and `bi >= 2`
/// for `i >= 2`.
pub fn subtractive_expand(x: &Fraction) -> Result<Vec<BigInt>> {
    if x.is_infinite() {
        return Err(Error::InfiniteInput);
    }
    let mut out = Vec::new();
    let mut x = x.clone();
    loop {
        let b = x.ceil().expect("finite");
        let rest = Fraction::integer(b.clone()).sub(&x)?;
        out.push(b);
        if rest.is_zero() {
            return Ok(out);
        }
        x = rest.reciprocal();
    }
}

/// Value of `b1 - 1/(b2 - 1/(... - 1/bm))`.
pub fn eval_subtractive(terms: &[BigInt]) -> Fraction {
    let mut it = terms.iter().rev();
    let Some(last) = it.next() else {
        return Fraction::zero();
    };
    let mut acc = Fraction::integer(last.clone());
    for b in it {
        acc = acc.neg_reciprocal().add_integer(b);
    }
    acc
}
