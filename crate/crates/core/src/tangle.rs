//! Algebraic tangle expressions and the pipeline from twist form to the
//! canonical continued fraction.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Fraction;
use crate::cf::{self, CFVector};
use crate::error::{Error, Result};

/// Expression tree over the elementary tangles. A vertical tangle `1/[n]` is
/// `Invert(Int(n))`; there is no separate node for it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TangleExpr {
    Zero,
    Infinity,
    Int(BigInt),
    Sum(Box<TangleExpr>, Box<TangleExpr>),
    Prod(Box<TangleExpr>, Box<TangleExpr>),
    Mirror(Box<TangleExpr>),
    Invert(Box<TangleExpr>),
    Rotate(Box<TangleExpr>),
}

impl TangleExpr {
    /// `[n]`, with `[0]` mapped to [`TangleExpr::Zero`].
    pub fn int(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Self::Zero
        } else {
            Self::Int(n)
        }
    }

    /// `1/[n]`.
    pub fn vertical(n: impl Into<BigInt>) -> Self {
        Self::int(n).invert()
    }

    pub fn sum(a: TangleExpr, b: TangleExpr) -> Self {
        Self::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: TangleExpr, b: TangleExpr) -> Self {
        Self::Prod(Box::new(a), Box::new(b))
    }

    pub fn mirror(self) -> Self {
        Self::Mirror(Box::new(self))
    }

    pub fn invert(self) -> Self {
        Self::Invert(Box::new(self))
    }

    pub fn rotate(self) -> Self {
        Self::Rotate(Box::new(self))
    }

    /// The continued fraction tangle `[a1] + 1/([a2] + 1/(... + 1/[an]))`.
    pub fn from_cf(v: &CFVector) -> Self {
        let mut terms = v.terms().iter().rev();
        let mut acc = Self::int(terms.next().expect("non-empty").clone());
        for a in terms {
            acc = Self::sum(Self::int(a.clone()), acc.invert());
        }
        acc
    }

    pub fn depth(&self) -> usize {
        match self {
            Self::Zero | Self::Infinity | Self::Int(_) => 1,
            Self::Sum(a, b) | Self::Prod(a, b) => 1 + a.depth().max(b.depth()),
            Self::Mirror(t) | Self::Invert(t) | Self::Rotate(t) => 1 + t.depth(),
        }
    }

    /// Integer value of a leaf usable as a horizontal twist: `[n]`, `[0]`,
    /// and `1/[±1]` (which is `[±1]`).
    fn as_integer_leaf(&self) -> Option<BigInt> {
        match self {
            Self::Zero => Some(BigInt::zero()),
            Self::Int(n) => Some(n.clone()),
            Self::Invert(inner) => match inner.as_ref() {
                Self::Int(n) if n.abs().is_one() => Some(n.clone()),
                _ => None,
            },
            _ => None,
        }
    }

    /// `n` for a leaf equal to the vertical tangle `1/[n]`: `1/[n]`, `[inf]`
    /// (`n = 0`), and `[±1]`.
    fn as_vertical_leaf(&self) -> Option<BigInt> {
        match self {
            Self::Infinity => Some(BigInt::zero()),
            Self::Int(n) if n.abs().is_one() => Some(n.clone()),
            Self::Invert(inner) => match inner.as_ref() {
                Self::Zero => Some(BigInt::zero()),
                Self::Int(n) => Some(n.clone()),
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::print_tangle(self))
    }
}

/// Exact fraction of any algebraic tangle expression.
pub fn fraction_of(t: &TangleExpr) -> Result<Fraction> {
    Ok(match t {
        TangleExpr::Zero => Fraction::zero(),
        TangleExpr::Infinity => Fraction::infinity(),
        TangleExpr::Int(n) => Fraction::integer(n.clone()),
        TangleExpr::Sum(a, b) => fraction_of(a)?.add(&fraction_of(b)?)?,
        TangleExpr::Prod(a, b) => fraction_of(a)?.star(&fraction_of(b)?)?,
        TangleExpr::Mirror(x) => fraction_of(x)?.negate(),
        TangleExpr::Invert(x) => fraction_of(x)?.reciprocal(),
        TangleExpr::Rotate(x) => fraction_of(x)?.neg_reciprocal(),
    })
}

fn is_vertical_value(x: &Fraction) -> bool {
    x.reciprocal().is_integer()
}

/// Fraction of `t` if every sum has an integer summand and every product a
/// vertical factor, `None` otherwise.
fn rational_fraction(t: &TangleExpr) -> Option<Fraction> {
    match t {
        TangleExpr::Zero | TangleExpr::Infinity | TangleExpr::Int(_) => fraction_of(t).ok(),
        TangleExpr::Mirror(x) => Some(rational_fraction(x)?.negate()),
        TangleExpr::Invert(x) => Some(rational_fraction(x)?.reciprocal()),
        TangleExpr::Rotate(x) => Some(rational_fraction(x)?.neg_reciprocal()),
        TangleExpr::Sum(a, b) => {
            let (fa, fb) = (rational_fraction(a)?, rational_fraction(b)?);
            if !(fa.is_integer() || fb.is_integer()) {
                return None;
            }
            fa.add(&fb).ok()
        }
        TangleExpr::Prod(a, b) => {
            let (fa, fb) = (rational_fraction(a)?, rational_fraction(b)?);
            if !(is_vertical_value(&fa) || is_vertical_value(&fb)) {
                return None;
            }
            fa.star(&fb).ok()
        }
    }
}

pub fn is_rational(t: &TangleExpr) -> bool {
    rational_fraction(t).is_some()
}

fn rational_or_err(t: &TangleExpr) -> Result<Fraction> {
    rational_fraction(t).ok_or(Error::NotRational)
}

fn flatten<'a>(t: &'a TangleExpr, sum: bool, out: &mut Vec<&'a TangleExpr>) {
    match t {
        TangleExpr::Sum(a, b) if sum => {
            flatten(a, sum, out);
            flatten(b, sum, out);
        }
        TangleExpr::Prod(a, b) if !sum => {
            flatten(a, sum, out);
            flatten(b, sum, out);
        }
        _ => out.push(t),
    }
}

/// Merges integer summands of every sum chain into one right summand and
/// vertical factors of every product chain into one bottom factor:
/// `[m]+T+[n] -> T+[m+n]` and `1/[m]*T*1/[n] -> T*1/[m+n]`.
pub fn twist_absorb(t: &TangleExpr) -> TangleExpr {
    match t {
        TangleExpr::Zero | TangleExpr::Infinity | TangleExpr::Int(_) => t.clone(),
        TangleExpr::Mirror(x) => twist_absorb(x).mirror(),
        TangleExpr::Invert(x) => twist_absorb(x).invert(),
        TangleExpr::Rotate(x) => twist_absorb(x).rotate(),
        TangleExpr::Sum(a, b) => {
            let (a, b) = (twist_absorb(a), twist_absorb(b));
            let joined = TangleExpr::sum(a, b);
            let mut items = Vec::new();
            flatten(&joined, true, &mut items);
            let mut total = BigInt::zero();
            let mut rest: Option<TangleExpr> = None;
            for item in items {
                match item.as_integer_leaf() {
                    Some(n) => total += n,
                    None => {
                        rest = Some(match rest {
                            None => item.clone(),
                            Some(acc) => TangleExpr::sum(acc, item.clone()),
                        })
                    }
                }
            }
            match rest {
                None => TangleExpr::int(total),
                Some(acc) if total.is_zero() => acc,
                Some(acc) => TangleExpr::sum(acc, TangleExpr::int(total)),
            }
        }
        TangleExpr::Prod(a, b) => {
            let (a, b) = (twist_absorb(a), twist_absorb(b));
            let joined = TangleExpr::prod(a, b);
            let mut items = Vec::new();
            flatten(&joined, false, &mut items);
            let mut total = BigInt::zero();
            let mut rest: Option<TangleExpr> = None;
            for item in items {
                match item.as_vertical_leaf() {
                    Some(n) => total += n,
                    None => {
                        rest = Some(match rest {
                            None => item.clone(),
                            Some(acc) => TangleExpr::prod(acc, item.clone()),
                        })
                    }
                }
            }
            match rest {
                None if total.is_zero() => TangleExpr::Infinity,
                None => TangleExpr::vertical(total),
                Some(acc) if total.is_zero() => acc,
                Some(acc) => TangleExpr::prod(acc, TangleExpr::vertical(total)),
            }
        }
    }
}

/// A rational tangle `(((..[an] * 1/[a(n-1)]) + [a(n-2)]) * ..) + [a1]`
/// given by its odd-length vector; `a1` may be zero, no other term may.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardFormTangle {
    vector: CFVector,
}

impl StandardFormTangle {
    pub fn new(vector: CFVector) -> Result<Self> {
        if vector.len().is_multiple_of(2) {
            return Err(Error::InvalidVector(
                "standard form needs odd length".into(),
            ));
        }
        if vector.terms()[1..].iter().any(Zero::is_zero) {
            return Err(Error::InvalidVector("zero term after the first".into()));
        }
        Ok(Self { vector })
    }

    pub fn vector(&self) -> &CFVector {
        &self.vector
    }

    pub fn crossings(&self) -> BigInt {
        self.vector.weight()
    }

    /// The standard form as an expression tree, innermost twist first.
    pub fn to_expr(&self) -> TangleExpr {
        let terms = self.vector.terms();
        let n = terms.len();
        let mut acc = TangleExpr::int(terms[n - 1].clone());
        for (depth, a) in terms[..n - 1].iter().rev().enumerate() {
            let vertical_level = depth % 2 == 0;
            if vertical_level {
                acc = TangleExpr::prod(acc, TangleExpr::vertical(a.clone()));
            } else if !a.is_zero() {
                acc = TangleExpr::sum(acc, TangleExpr::int(a.clone()));
            }
        }
        acc
    }
}

/// Reads the vector off an absorbed tree shaped like a standard or
/// continued-fraction form. Terms come out outermost first.
fn read_standard_shape(t: &TangleExpr) -> Option<Vec<BigInt>> {
    let mut terms = Vec::new();
    let mut node = t.clone();
    let mut horizontal = true;
    loop {
        if horizontal {
            if let Some(n) = node.as_integer_leaf() {
                terms.push(n);
                return Some(terms);
            }
            match node {
                TangleExpr::Sum(x, k) => {
                    terms.push(k.as_integer_leaf()?);
                    node = *x;
                }
                _ if terms.is_empty() => terms.push(BigInt::zero()),
                _ => return None,
            }
        } else {
            if let Some(n) = node.as_vertical_leaf() {
                terms.push(n);
                return Some(terms);
            }
            match node {
                TangleExpr::Prod(x, k) => {
                    terms.push(k.as_vertical_leaf()?);
                    node = *x;
                }
                // 1/(W + [n]) = (1/W) * 1/[n]
                TangleExpr::Invert(inner) => match *inner {
                    TangleExpr::Sum(w, k) => {
                        terms.push(k.as_integer_leaf()?);
                        node = match *w {
                            TangleExpr::Invert(x) => *x,
                            other => other.invert(),
                        };
                    }
                    _ => return None,
                },
                _ => return None,
            }
        }
        horizontal = !horizontal;
    }
}

/// Standard form of a rational tangle. Trees already in twist, standard or
/// continued-fraction shape keep their own vector (up to the odd-length
/// rule); anything else is expanded from its fraction.
pub fn to_standard_form(t: &TangleExpr) -> Result<StandardFormTangle> {
    let value = rational_or_err(t)?;
    if value.is_infinite() {
        return Err(Error::InfiniteTangle);
    }
    let syntactic = read_standard_shape(&twist_absorb(t))
        .and_then(|terms| CFVector::new(terms).ok())
        .filter(|v| v.terms()[1..].iter().all(|a| !a.is_zero()))
        .filter(|v| cf::eval_cf(v) == value)
        .and_then(|v| cf::make_odd(&v).ok())
        .and_then(|v| StandardFormTangle::new(v).ok());
    match syntactic {
        Some(s) => Ok(s),
        None => StandardFormTangle::new(cf::expand_fraction(&value)?),
    }
}

/// Standard form vector read as a continued fraction.
pub fn standard_to_cf(s: &StandardFormTangle) -> CFVector {
    s.vector.clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonicalTangle {
    Infinity,
    Vector(CFVector),
}

impl CanonicalTangle {
    pub fn vector(&self) -> Option<&CFVector> {
        match self {
            Self::Infinity => None,
            Self::Vector(v) => Some(v),
        }
    }

    pub fn fraction(&self) -> Fraction {
        match self {
            Self::Infinity => Fraction::infinity(),
            Self::Vector(v) => cf::eval_cf(v),
        }
    }
}

impl fmt::Display for CanonicalTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => f.write_str("[inf]"),
            Self::Vector(v) => {
                f.write_str("[")?;
                for (i, a) in v.terms().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "[{a}]")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Canonical form via the fraction and Euclid.
pub fn canonical_form(t: &TangleExpr) -> Result<CanonicalTangle> {
    let value = rational_or_err(t)?;
    if value.is_infinite() {
        return Ok(CanonicalTangle::Infinity);
    }
    Ok(CanonicalTangle::Vector(cf::expand_fraction(&value)?))
}

/// Canonical form via standard form and transfer rewriting; must agree with
/// [`canonical_form`].
pub fn canonical_form_by_rewrite(t: &TangleExpr) -> Result<CanonicalTangle> {
    let value = rational_or_err(t)?;
    if value.is_infinite() {
        return Ok(CanonicalTangle::Infinity);
    }
    let standard = to_standard_form(t)?;
    Ok(CanonicalTangle::Vector(cf::canonicalize_by_rewrite(
        &standard_to_cf(&standard),
    )?))
}

/// Isotopy of rational tangles, decided by equality of fractions.
pub fn equivalent(a: &TangleExpr, b: &TangleExpr) -> Result<bool> {
    Ok(rational_or_err(a)? == rational_or_err(b)?)
}

fn is_unit_twist(t: &TangleExpr) -> bool {
    matches!(t, TangleExpr::Int(n) if n.abs().is_one())
}

/// Commutes a `[±1]` across the other operand of the root sum or product.
pub fn flype_step(t: &TangleExpr) -> Result<TangleExpr> {
    match t {
        TangleExpr::Sum(a, b) if is_unit_twist(a) || is_unit_twist(b) => {
            Ok(TangleExpr::Sum(b.clone(), a.clone()))
        }
        TangleExpr::Prod(a, b) if is_unit_twist(a) || is_unit_twist(b) => {
            Ok(TangleExpr::Prod(b.clone(), a.clone()))
        }
        _ => Err(Error::NoFlypeSite),
    }
}

/// The suffixes `[aj, .., an]` for `j = n, .., 1`: the cores left after
/// untwisting from the outside.
pub fn truncations(s: &StandardFormTangle) -> Vec<CFVector> {
    let terms = s.vector.terms();
    (0..terms.len())
        .rev()
        .map(|j| CFVector::new(terms[j..].to_vec()).expect("non-empty suffix"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorTransform {
    Mirror,
    Invert,
    AddRight(BigInt),
}

pub fn vector_transform(v: &CFVector, which: &VectorTransform) -> CFVector {
    let terms = v.terms();
    let out = match which {
        VectorTransform::Mirror => terms.iter().map(|a| -a).collect(),
        VectorTransform::Invert => std::iter::once(BigInt::zero())
            .chain(terms.iter().cloned())
            .collect(),
        VectorTransform::AddRight(k) => {
            let mut t = terms.to_vec();
            t[0] += k;
            t
        }
    };
    CFVector::new(out).expect("non-empty")
}

/// Minimal crossing number of the isotopy class.
pub fn crossing_count(c: &CanonicalTangle) -> Result<BigInt> {
    c.vector()
        .map(CFVector::weight)
        .ok_or(Error::InfiniteTangle)
}
