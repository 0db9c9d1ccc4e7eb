//! Integral colorings of rational tangles.
//!
//! A tangle is colored while it is built by twisting: every crossing ends
//! one under-arc and starts a new one whose color `γ` satisfies
//! `α + γ = 2β` with `β` the color of the over-arc. The four peripheral
//! colors form the [`ColorMatrix`], whose fraction `(b - a)/(b - d)`
//! recovers the tangle fraction independently of continued fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::Fraction;
use crate::cf::{self, bigint_to_json, CFVector};
use crate::error::{Error, Result};

/// Peripheral colors `[[nw, ne], [sw, se]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorMatrix {
    pub nw: BigInt,
    pub ne: BigInt,
    pub sw: BigInt,
    pub se: BigInt,
}

impl ColorMatrix {
    pub fn new(
        nw: impl Into<BigInt>,
        ne: impl Into<BigInt>,
        sw: impl Into<BigInt>,
        se: impl Into<BigInt>,
    ) -> Self {
        Self {
            nw: nw.into(),
            ne: ne.into(),
            sw: sw.into(),
            se: se.into(),
        }
    }

    /// `nw + se = ne + sw`.
    pub fn satisfies_diagonal_rule(&self) -> bool {
        &self.nw + &self.se == &self.ne + &self.sw
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.nw, &self.ne, &self.sw, &self.se]
    }
}

impl Serialize for ColorMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ColorMatrix", 4)?;
        s.serialize_field("nw", &bigint_to_json(&self.nw))?;
        s.serialize_field("ne", &bigint_to_json(&self.ne))?;
        s.serialize_field("sw", &bigint_to_json(&self.sw))?;
        s.serialize_field("se", &bigint_to_json(&self.se))?;
        s.end()
    }
}

/// One elementary twist: on the right (NE/SE endpoints) or on the bottom
/// (SW/SE endpoints), positive or negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Twist {
    RightAdd(i8),
    BottomMult(i8),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTangle {
    pub vector: CFVector,
    pub matrix: ColorMatrix,
    /// Starting arcs first, then one new arc per crossing.
    pub arc_colors: Vec<BigInt>,
    pub build_word: Vec<Twist>,
    pub start: (BigInt, BigInt),
    /// Arc indices currently sitting at nw, ne, sw, se.
    periphery: [usize; 4],
}

impl ColoredTangle {
    pub fn crossings(&self) -> usize {
        self.build_word.len()
    }

    /// Arc indices at the four endpoints, in nw, ne, sw, se order.
    pub fn peripheral_arcs(&self) -> [usize; 4] {
        self.periphery
    }
}

/// Build word for an odd-length vector: `|an|` right twists, then
/// `|a(n-1)|` bottom twists, alternating out to `|a1|` right twists.
pub fn build_word(v: &CFVector) -> Result<Vec<Twist>> {
    let terms = v.terms();
    let n = terms.len();
    if n.is_multiple_of(2) {
        return Err(Error::InvalidVector("coloring needs odd length".into()));
    }
    if terms[1..].iter().any(Zero::is_zero) {
        return Err(Error::InvalidVector("zero term after the first".into()));
    }
    let mut word = Vec::new();
    for (k, a) in terms.iter().enumerate().rev() {
        let count = a
            .abs()
            .to_string()
            .parse::<usize>()
            .map_err(|_| Error::InvalidVector("term too large to color".into()))?;
        let sign = if a.is_negative() { -1 } else { 1 };
        let twist = if k % 2 == 0 {
            Twist::RightAdd(sign)
        } else {
            Twist::BottomMult(sign)
        };
        word.extend(std::iter::repeat_n(twist, count));
    }
    Ok(word)
}

/// Colors the tangle of `v` starting from `[0]` with the top arc colored
/// `start_top` and the bottom arc `start_bottom`.
pub fn color_tangle(
    v: &CFVector,
    start_top: impl Into<BigInt>,
    start_bottom: impl Into<BigInt>,
) -> Result<ColoredTangle> {
    let (top, bottom) = (start_top.into(), start_bottom.into());
    let word = build_word(v)?;
    let mut arcs = vec![top.clone(), bottom.clone()];
    // [0]: the top arc joins nw to ne, the bottom arc sw to se
    let mut at = [0usize, 0, 1, 1];
    for twist in &word {
        let [a, b, c, d] = at;
        let new = arcs.len();
        match *twist {
            Twist::RightAdd(s) if s > 0 => {
                arcs.push(2 * &arcs[b] - &arcs[d]);
                at = [a, new, c, b];
            }
            Twist::RightAdd(_) => {
                arcs.push(2 * &arcs[d] - &arcs[b]);
                at = [a, d, c, new];
            }
            Twist::BottomMult(s) if s > 0 => {
                arcs.push(2 * &arcs[c] - &arcs[d]);
                at = [a, b, new, c];
            }
            Twist::BottomMult(_) => {
                arcs.push(2 * &arcs[d] - &arcs[c]);
                at = [a, b, d, new];
            }
        }
    }
    let matrix = ColorMatrix {
        nw: arcs[at[0]].clone(),
        ne: arcs[at[1]].clone(),
        sw: arcs[at[2]].clone(),
        se: arcs[at[3]].clone(),
    };
    debug_assert!(matrix.satisfies_diagonal_rule());
    Ok(ColoredTangle {
        vector: v.clone(),
        matrix,
        arc_colors: arcs,
        build_word: word,
        start: (top, bottom),
        periphery: at,
    })
}

/// `f = (ne - nw)/(ne - se)`.
pub fn f_of_matrix(m: &ColorMatrix) -> Result<Fraction> {
    let num = &m.ne - &m.nw;
    let den = &m.ne - &m.se;
    Fraction::new(num, den).map_err(|_| Error::UndefinedColorFraction)
}

/// `e -> n*e + k` on every entry.
pub fn affine_recolor(m: &ColorMatrix, n: &BigInt, k: &BigInt) -> Result<ColorMatrix> {
    if n.is_zero() {
        return Err(Error::ZeroScale);
    }
    let f = |e: &BigInt| n * e + k;
    Ok(ColorMatrix {
        nw: f(&m.nw),
        ne: f(&m.ne),
        sw: f(&m.sw),
        se: f(&m.se),
    })
}

/// Matrix of the rotated tangle: `[[a, b], [c, d]] -> [[b, d], [a, c]]`.
pub fn rotate_matrix(m: &ColorMatrix) -> ColorMatrix {
    ColorMatrix {
        nw: m.ne.clone(),
        ne: m.se.clone(),
        sw: m.nw.clone(),
        se: m.sw.clone(),
    }
}

/// Matrix of the vertical reflect: `[[a, b], [c, d]] -> [[b, a], [d, c]]`.
pub fn vertical_reflect_matrix(m: &ColorMatrix) -> ColorMatrix {
    ColorMatrix {
        nw: m.ne.clone(),
        ne: m.nw.clone(),
        sw: m.se.clone(),
        se: m.sw.clone(),
    }
}

/// Matrix of `T + S` when the right column of `T` is the left column of `S`.
pub fn sum_matrix(left: &ColorMatrix, right: &ColorMatrix) -> Result<ColorMatrix> {
    if left.ne != right.nw || left.se != right.sw {
        return Err(Error::ColumnMismatch);
    }
    Ok(ColorMatrix {
        nw: left.nw.clone(),
        ne: right.ne.clone(),
        sw: left.sw.clone(),
        se: right.se.clone(),
    })
}

/// `(ne - nw) + i (ne - se)` as a Gaussian integer `(re, im)`.
pub fn j_map(m: &ColorMatrix) -> (BigInt, BigInt) {
    (&m.ne - &m.nw, &m.ne - &m.se)
}

/// Determinant of the numerator closure, `|ne - nw|`.
pub fn closure_determinant(c: &ColoredTangle) -> Result<BigInt> {
    let (top, bottom) = (&c.start.0, &c.start.1);
    let unit_start = (top.is_one() && bottom.is_zero()) || (top.is_zero() && bottom.is_one());
    if !unit_start {
        return Err(Error::WrongStartColors);
    }
    Ok((&c.matrix.ne - &c.matrix.nw).abs())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Colors of the numerator closure modulo `p`: nw is joined to ne and sw to
/// se, and one residue is reported per resulting arc in order of first
/// appearance.
pub fn closure_coloring_mod(c: &ColoredTangle, p: &BigInt) -> Result<Vec<BigInt>> {
    if !p.is_positive() {
        return Err(Error::InvalidVector("modulus must be positive".into()));
    }
    let inconsistent = || Error::ClosureInconsistent {
        modulus: p.to_string(),
    };
    let m = &c.matrix;
    if !(&m.ne - &m.nw).is_multiple_of(p) || !(&m.se - &m.sw).is_multiple_of(p) {
        return Err(inconsistent());
    }
    let n = c.arc_colors.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let [nw, ne, sw, se] = c.periphery;
    for (x, y) in [(nw, ne), (sw, se)] {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        parent[rx.max(ry)] = rx.min(ry);
    }
    let mut residues: Vec<Option<BigInt>> = vec![None; n];
    let mut order = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        let r = c.arc_colors[i].mod_floor(p);
        match &residues[root] {
            Some(existing) if *existing != r => return Err(inconsistent()),
            Some(_) => {}
            None => {
                residues[root] = Some(r);
                order.push(root);
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|root| residues[root].clone().expect("assigned"))
        .collect())
}

fn all_distinct(values: &[BigInt]) -> bool {
    let mut sorted: Vec<&BigInt> = values.iter().collect();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Outcome of the distinct-colors check on one rational knot or link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HararyInstance {
    pub vector: CFVector,
    pub matrix: ColorMatrix,
    pub det: BigInt,
    pub arc_colors: Vec<BigInt>,
    /// Closure residues, present when the determinant is prime.
    pub mod_colors: Option<Vec<BigInt>>,
    pub integral_distinct: bool,
    pub distinct: bool,
}

impl Serialize for HararyInstance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let ints = |v: &[BigInt]| v.iter().map(bigint_to_json).collect::<Vec<_>>();
        let mut s = serializer.serialize_struct("HararyInstance", 7)?;
        s.serialize_field("vector", &self.vector)?;
        s.serialize_field("matrix", &self.matrix)?;
        s.serialize_field("det", &bigint_to_json(&self.det))?;
        s.serialize_field("arcColors", &ints(&self.arc_colors))?;
        s.serialize_field("modColors", &self.mod_colors.as_deref().map(ints))?;
        s.serialize_field("integralDistinct", &self.integral_distinct)?;
        s.serialize_field("distinct", &self.distinct)?;
        s.end()
    }
}

pub fn harary_instance(v: &CFVector) -> Result<HararyInstance> {
    let colored = color_tangle(v, 1, 0)?;
    let det = closure_determinant(&colored)?;
    let integral_distinct = all_distinct(&colored.arc_colors);
    let mod_colors = if is_prime(&det) {
        Some(closure_coloring_mod(&colored, &det)?)
    } else {
        None
    };
    let mod_ok = mod_colors
        .as_ref()
        .is_none_or(|r| r.len() == colored.crossings() && all_distinct(r));
    Ok(HararyInstance {
        vector: v.clone(),
        matrix: colored.matrix,
        det,
        arc_colors: colored.arc_colors,
        mod_colors,
        integral_distinct,
        distinct: integral_distinct && mod_ok,
    })
}

/// Compositions of `total` into odd-many positive parts, lexicographic.
fn odd_compositions(total: usize) -> Vec<Vec<i64>> {
    fn rec(left: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            if prefix.len() % 2 == 1 {
                out.push(prefix.clone());
            }
            return;
        }
        for part in 1..=left {
            prefix.push(part as i64);
            rec(left - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, &mut Vec::new(), &mut out);
    out
}

/// Every positive canonical vector with `1 <= Σ βi <= max_crossings`,
/// ordered by crossing number and then lexicographically.
pub fn positive_canonical_vectors(max_crossings: usize) -> Vec<CFVector> {
    (1..=max_crossings)
        .flat_map(odd_compositions)
        .map(|t| CFVector::from_i64s(&t).expect("non-empty"))
        .collect()
}

/// Runs the distinct-colors check over all positive canonical vectors up to
/// the given crossing number. Instances are checked in parallel and
/// reported in vector order.
pub fn harary_check(max_crossings: usize) -> Vec<HararyInstance> {
    positive_canonical_vectors(max_crossings)
        .par_iter()
        .map(|v| harary_instance(v).expect("positive canonical vectors color"))
        .collect()
}

/// Coloring fraction of `v` built from starting colors `(1, 0)`.
pub fn coloring_fraction(v: &CFVector) -> Result<Fraction> {
    f_of_matrix(&color_tangle(v, 1, 0)?.matrix)
}

/// Same as [`cf::eval_cf`], for comparisons in reports.
pub fn conway_fraction(v: &CFVector) -> Fraction {
    cf::eval_cf(v)
}
