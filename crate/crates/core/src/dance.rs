//! The square dance: reaching every rational tangle from `[0]` with two
//! moves, turn (`x -> -1/x`) and add (`x -> x + 1`).
//!
//! Words are read left to right, first move first. Turn and add generate
//! PSL(2, Z); the relations `TT = 1` and `ATATA = T` form a confluent,
//! length-reducing rewriting system, so every group element has a unique
//! shortest word ([`normalize`]).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Fraction;
use crate::cf;
use crate::error::{Error, Result, SourceSpan, SyntaxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Turn,
    Add,
}

impl Move {
    pub fn apply(self, x: &Fraction) -> Fraction {
        match self {
            Move::Turn => x.neg_reciprocal(),
            Move::Add => x.add_integer(&BigInt::one()),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Move::Turn => 'T',
            Move::Add => 'A',
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "T" | "t" => Ok(Move::Turn),
            "A" | "a" => Ok(Move::Add),
            other => Err(SyntaxError {
                span: SourceSpan::new(0, s.len()),
                expected: vec!["\"T\"".into(), "\"A\"".into()],
                found: format!("{other:?}"),
            }
            .into()),
        }
    }
}

impl Serialize for Move {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveWord(pub Vec<Move>);

impl MoveWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }

    pub fn replay_from(&self, start: &Fraction) -> Fraction {
        self.0.iter().fold(start.clone(), |x, m| m.apply(&x))
    }

    pub fn replay(&self) -> Fraction {
        self.replay_from(&Fraction::zero())
    }

    /// The word undoing this one: reversed, with add undone by the
    /// subtract-one macro.
    pub fn inverse(&self) -> MoveWord {
        let mut out = Vec::new();
        for m in self.0.iter().rev() {
            match m {
                Move::Turn => out.push(Move::Turn),
                Move::Add => out.extend(subtract_macro().0),
            }
        }
        MoveWord(out)
    }

    pub fn concat(&self, other: &MoveWord) -> MoveWord {
        MoveWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|m| write!(f, "{m}"))
    }
}

impl FromStr for MoveWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (i, c) in s.char_indices() {
            if c.is_whitespace() || c == ',' {
                continue;
            }
            out.push(match c {
                'T' | 't' => Move::Turn,
                'A' | 'a' => Move::Add,
                _ => {
                    return Err(SyntaxError {
                        span: SourceSpan::new(i, i + c.len_utf8()),
                        expected: vec!["\"T\"".into(), "\"A\"".into()],
                        found: format!("{c:?}"),
                    }
                    .into())
                }
            });
        }
        Ok(MoveWord(out))
    }
}

impl Serialize for MoveWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MoveWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reduces a word with `TT -> ε` and `ATATA -> T` until neither applies.
/// The result is the unique shortest word for the same group element.
pub fn normalize(w: &MoveWord) -> MoveWord {
    const AXAXA: [Move; 5] = [Move::Add, Move::Turn, Move::Add, Move::Turn, Move::Add];
    let mut stack: Vec<Move> = Vec::with_capacity(w.len());
    for &m in &w.0 {
        stack.push(m);
        loop {
            let n = stack.len();
            if n >= 2 && stack[n - 2] == Move::Turn && stack[n - 1] == Move::Turn {
                stack.truncate(n - 2);
            } else if n >= 5 && stack[n - 5..] == AXAXA {
                stack.truncate(n - 5);
                stack.push(Move::Turn);
            } else {
                break;
            }
        }
    }
    MoveWord(stack)
}

/// Turn, add, turn, add, turn: subtracts one from any state.
pub fn subtract_macro() -> MoveWord {
    use Move::*;
    MoveWord(vec![Turn, Add, Turn, Add, Turn])
}

/// Integer matrix with determinant 1, acting on columns `(a, b)` read as
/// the fraction `a/b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl SL2Matrix {
    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn of_move(m: Move) -> Self {
        match m {
            Move::Turn => Self::from_i64(0, -1, 1, 0),
            Move::Add => Self::from_i64(1, 1, 0, 1),
        }
    }

    pub fn mul(&self, rhs: &SL2Matrix) -> SL2Matrix {
        SL2Matrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Fraction of the column `self · (x, y)`.
    pub fn apply_column(&self, x: &BigInt, y: &BigInt) -> Fraction {
        Fraction::new(&self.a * x + &self.b * y, &self.c * x + &self.d * y)
            .expect("unimodular image of a primitive column is non-zero")
    }

    /// Image of the column `(0, 1)`, i.e. of the state `[0]`.
    pub fn fraction(&self) -> Fraction {
        self.apply_column(&BigInt::zero(), &BigInt::one())
    }
}

/// `M(mk) ... M(m2) M(m1)` for the word `m1 m2 ... mk`.
pub fn word_to_matrix(w: &MoveWord) -> SL2Matrix {
    w.0.iter().fold(SL2Matrix::identity(), |acc, &m| {
        SL2Matrix::of_move(m).mul(&acc)
    })
}

/// A word that takes `[0]` to `target`: add blocks from the subtractive
/// expansion separated by turns, with a negative leading term paid for by
/// subtract macros.
pub fn solve_target(target: &Fraction) -> MoveWord {
    if target.is_infinite() {
        return MoveWord(vec![Move::Turn]);
    }
    let terms = cf::subtractive_expand(target).expect("finite target");
    let mut word = Vec::new();
    let (first, rest) = terms.split_first().expect("non-empty expansion");
    for (i, b) in rest.iter().rev().enumerate() {
        if i > 0 {
            word.push(Move::Turn);
        }
        push_adds(&mut word, b);
    }
    if !rest.is_empty() {
        word.push(Move::Turn);
    }
    if first.is_negative() {
        let count = usize_of(&-first);
        for _ in 0..count {
            word.extend(subtract_macro().0);
        }
    } else {
        push_adds(&mut word, first);
    }
    MoveWord(word)
}

fn usize_of(n: &BigInt) -> usize {
    n.to_string().parse().expect("move count fits in memory")
}

fn push_adds(word: &mut Vec<Move>, n: &BigInt) {
    word.extend(std::iter::repeat_n(Move::Add, usize_of(n)));
}

/// A game in progress. `history` replays from `[0]` to `current`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DanceState {
    current: Fraction,
    target: Fraction,
    history: MoveWord,
}

impl DanceState {
    pub fn new(target: Fraction) -> Self {
        Self {
            current: Fraction::zero(),
            target,
            history: MoveWord::new(),
        }
    }

    /// Rebuilds a state from its move history, checking nothing else.
    pub fn from_history(target: Fraction, history: MoveWord) -> Self {
        Self {
            current: history.replay(),
            target,
            history,
        }
    }

    /// A state sitting at `current`, reached by the solver's word.
    pub fn at(current: &Fraction, target: Fraction) -> Self {
        Self::from_history(target, solve_target(current))
    }

    pub fn current(&self) -> &Fraction {
        &self.current
    }

    pub fn target(&self) -> &Fraction {
        &self.target
    }

    pub fn history(&self) -> &MoveWord {
        &self.history
    }

    pub fn is_solved(&self) -> bool {
        self.current == self.target
    }

    pub fn is_consistent(&self) -> bool {
        self.history.replay() == self.current
    }
}

pub fn apply_move(s: &DanceState, m: Move) -> DanceState {
    let mut history = s.history.clone();
    history.push(m);
    DanceState {
        current: m.apply(&s.current),
        target: s.target.clone(),
        history,
    }
}

/// Shortest word from the current state to the target along the group
/// element `solve(target) ∘ history⁻¹`. Following its first move and asking
/// again yields its tail, so repeated hints reach the target.
pub fn path_to_target(s: &DanceState) -> MoveWord {
    normalize(&s.history.inverse().concat(&solve_target(&s.target)))
}

pub fn hint(s: &DanceState) -> Result<Move> {
    if s.is_solved() {
        return Err(Error::AlreadySolved);
    }
    let path = path_to_target(s);
    Ok(*path
        .moves()
        .first()
        .expect("a non-trivial path exists while unsolved"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Move::*;

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    fn word(s: &str) -> MoveWord {
        s.parse().unwrap()
    }

    #[test]
    fn single_moves() {
        let s = DanceState::new(frac(1, 1));
        assert_eq!(apply_move(&s, Turn).current(), &Fraction::infinity());
        let five = DanceState::at(&frac(5, 1), frac(1, 1));
        assert_eq!(apply_move(&five, Add).current(), &frac(6, 1));
        assert_eq!(word("TATAT").replay(), frac(-1, 1));
        assert_eq!(apply_move(&s, Turn).history(), &word("T"));
    }

    #[test]
    fn subtract_one() {
        let m = subtract_macro();
        assert_eq!(m, word("TATAT"));
        assert_eq!(m.replay_from(&Fraction::zero()), frac(-1, 1));
        assert_eq!(m.replay_from(&frac(23, 14)), frac(9, 14));
        assert_eq!(m.replay_from(&Fraction::infinity()), Fraction::infinity());
    }

    #[test]
    fn matrices() {
        let m = word_to_matrix(&word("A"));
        assert_eq!(m, SL2Matrix::of_move(Add));
        assert_eq!(m.fraction(), frac(1, 1));
        assert_eq!(word_to_matrix(&word("TATAT")).fraction(), frac(-1, 1));
        let id = word_to_matrix(&MoveWord::new());
        assert_eq!(id, SL2Matrix::identity());
        assert_eq!(id.fraction(), Fraction::zero());
    }

    #[test]
    fn solver_words() {
        assert_eq!(solve_target(&frac(23, 14)).to_string(), "AAAAATAAATAA");
        assert_eq!(solve_target(&Fraction::zero()), MoveWord::new());
        assert_eq!(solve_target(&frac(-1, 1)), word("TATAT"));
        assert_eq!(solve_target(&frac(3, 2)), word("AATAA"));
        assert_eq!(solve_target(&Fraction::infinity()), word("T"));
        assert_eq!(solve_target(&frac(-1, 2)).replay(), frac(-1, 2));
        assert_eq!(solve_target(&frac(-7, 3)).replay(), frac(-7, 3));
    }

    #[test]
    fn hints() {
        assert_eq!(hint(&DanceState::new(frac(1, 1))).unwrap(), Add);
        assert_eq!(
            hint(&DanceState::at(&frac(2, 1), frac(3, 2))).unwrap(),
            Turn
        );
        assert_eq!(
            hint(&DanceState::at(&frac(3, 2), frac(3, 2))),
            Err(Error::AlreadySolved)
        );
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normalize(&word("TT")), MoveWord::new());
        assert_eq!(normalize(&word("ATATA")), word("T"));
        assert_eq!(normalize(&word("TATATA")), MoveWord::new());
        assert_eq!(normalize(&word("ATATAT")), MoveWord::new());
        assert_eq!(
            normalize(&word("ATATTATATAATAA")).replay(),
            word("ATATTATATAATAA").replay()
        );
    }

    fn same_up_to_sign(m: &SL2Matrix, n: &SL2Matrix) -> bool {
        let neg = SL2Matrix {
            a: -&n.a,
            b: -&n.b,
            c: -&n.c,
            d: -&n.d,
        };
        m == n || *m == neg
    }

    fn any_fraction() -> impl Strategy<Value = Fraction> {
        prop_oneof![
            8 => (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| frac(p, q)),
            1 => Just(Fraction::zero()),
            1 => Just(Fraction::infinity()),
        ]
    }

    fn any_word() -> impl Strategy<Value = MoveWord> {
        prop::collection::vec(prop_oneof![Just(Turn), Just(Add)], 0..30).prop_map(MoveWord)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1_000))]

        #[test]
        fn turn_add_has_order_three(x in any_fraction()) {
            prop_assert_eq!(word("ATATAT").replay_from(&x), x.clone());
            prop_assert_eq!(word("TT").replay_from(&x), x);
        }

        #[test]
        fn macro_subtracts_one(x in any_fraction()) {
            let expected = x.add(&frac(-1, 1)).unwrap();
            prop_assert_eq!(subtract_macro().replay_from(&x), expected);
        }

        #[test]
        fn matrix_matches_replay(w in any_word()) {
            let m = word_to_matrix(&w);
            prop_assert_eq!(m.determinant(), BigInt::one());
            prop_assert_eq!(m.fraction(), w.replay());
        }

        #[test]
        fn normal_form_is_equivalent_and_stable(w in any_word(), x in any_fraction()) {
            let n = normalize(&w);
            prop_assert!(n.len() <= w.len());
            prop_assert!(same_up_to_sign(&word_to_matrix(&n), &word_to_matrix(&w)));
            prop_assert_eq!(n.replay_from(&x), w.replay_from(&x));
            prop_assert_eq!(normalize(&n), n);
        }

        #[test]
        fn following_hints_reaches_target(h in any_word(), t in any_fraction()) {
            let mut s = DanceState::from_history(t.clone(), h);
            let bound = path_to_target(&s).len();
            let mut steps = 0;
            while !s.is_solved() {
                s = apply_move(&s, hint(&s).unwrap());
                steps += 1;
                prop_assert!(steps <= bound);
            }
            prop_assert_eq!(s.current(), &t);
        }
    }
}
