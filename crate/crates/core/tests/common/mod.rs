//! Strategies and an `i128` fraction oracle shared by the property suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;

use tanglekit::{CFVector, Fraction, TangleExpr};

/// Projective rational over `i128`: reduced, `q >= 0`, infinity is `(1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Q(pub i128, pub i128);

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Q {
    /// `None` for `0/0`.
    pub fn new(p: i128, q: i128) -> Option<Q> {
        if p == 0 && q == 0 {
            return None;
        }
        if q == 0 {
            return Some(Q(1, 0));
        }
        let g = gcd(p, q);
        let s = if q < 0 { -1 } else { 1 };
        Some(Q(s * p / g, s * q / g))
    }

    pub fn int(n: i128) -> Q {
        Q(n, 1)
    }

    pub fn is_inf(self) -> bool {
        self.1 == 0
    }

    pub fn add(self, o: Q) -> Option<Q> {
        match (self.is_inf(), o.is_inf()) {
            (true, true) => None,
            (true, false) | (false, true) => Some(Q(1, 0)),
            _ => Q::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1),
        }
    }

    pub fn neg(self) -> Q {
        if self.is_inf() {
            self
        } else {
            Q(-self.0, self.1)
        }
    }

    pub fn recip(self) -> Q {
        Q::new(self.1, self.0).expect("non-degenerate")
    }

    pub fn star(self, o: Q) -> Option<Q> {
        Some(self.recip().add(o.recip())?.recip())
    }

    pub fn to_fraction(self) -> Fraction {
        Fraction::new(self.0, self.1).unwrap()
    }
}

pub fn oracle_cf(terms: &[i128]) -> Q {
    let (last, rest) = terms.split_last().unwrap();
    rest.iter()
        .rev()
        .fold(Q::int(*last), |acc, a| acc.recip().add(Q::int(*a)).unwrap())
}

/// Fraction of a tree by direct recursion; `None` where undefined.
pub fn oracle_tree(t: &TangleExpr) -> Option<Q> {
    Some(match t {
        TangleExpr::Zero => Q::int(0),
        TangleExpr::Infinity => Q(1, 0),
        TangleExpr::Int(n) => Q::int(i128::try_from(n).ok()?),
        TangleExpr::Sum(a, b) => oracle_tree(a)?.add(oracle_tree(b)?)?,
        TangleExpr::Prod(a, b) => oracle_tree(a)?.star(oracle_tree(b)?)?,
        TangleExpr::Mirror(x) => oracle_tree(x)?.neg(),
        TangleExpr::Invert(x) => oracle_tree(x)?.recip(),
        TangleExpr::Rotate(x) => oracle_tree(x)?.recip().neg(),
    })
}

pub fn vec_of(terms: &[i128]) -> CFVector {
    CFVector::new(terms.iter().map(|&t| BigInt::from(t)).collect()).unwrap()
}

pub fn nonzero(max: i64) -> impl Strategy<Value = i64> {
    (1..=max, any::<bool>()).prop_map(|(n, neg)| if neg { -n } else { n })
}

/// Trees built only by rational operations: twisting on the right or
/// left, vertical twists on the bottom or top, mirror, inversion and
/// rotation.
pub fn rational_tree() -> impl Strategy<Value = TangleExpr> {
    let leaf = prop_oneof![
        (-9i64..=9).prop_map(TangleExpr::int),
        Just(TangleExpr::Infinity),
    ];
    leaf.prop_recursive(6, 32, 1, |inner| {
        prop_oneof![
            (inner.clone(), nonzero(9)).prop_map(|(t, n)| TangleExpr::sum(t, TangleExpr::int(n))),
            (inner.clone(), nonzero(9)).prop_map(|(t, n)| TangleExpr::sum(TangleExpr::int(n), t)),
            (inner.clone(), nonzero(9))
                .prop_map(|(t, n)| TangleExpr::prod(t, TangleExpr::vertical(n))),
            (inner.clone(), nonzero(9))
                .prop_map(|(t, n)| TangleExpr::prod(TangleExpr::vertical(n), t)),
            inner.clone().prop_map(TangleExpr::mirror),
            inner.clone().prop_map(TangleExpr::invert),
            inner.prop_map(TangleExpr::rotate),
        ]
    })
}

/// Odd-length vectors with no zero after the first term.
pub fn standard_vector(max_len: usize, max_term: i64) -> impl Strategy<Value = Vec<i128>> {
    (0..=(max_len - 1) / 2, -max_term..=max_term).prop_flat_map(move |(half, first)| {
        prop::collection::vec(nonzero(max_term), 2 * half).prop_map(move |rest| {
            std::iter::once(first as i128)
                .chain(rest.into_iter().map(i128::from))
                .collect()
        })
    })
}

/// Odd-length vectors with every term positive.
pub fn positive_vector(max_len: usize, max_term: i64) -> impl Strategy<Value = Vec<i128>> {
    (0..=(max_len - 1) / 2).prop_flat_map(move |half| {
        prop::collection::vec((1..=max_term).prop_map(i128::from), 2 * half + 1)
    })
}
