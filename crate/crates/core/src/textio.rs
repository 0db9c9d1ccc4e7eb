//! Text syntax for tangle expressions and fractions, plus JSON codecs for
//! the types that travel as strings.
//!
//! ```text
//! expr   := term {"+" term}
//! term   := factor {"*" factor}
//! factor := "-" factor | "1/" factor | "rot" "(" expr ")" | "(" expr ")" | atom
//! atom   := "[" INT "]" | "[inf]" | "[0]" | cfvec
//! cfvec  := "[[" INT "]" {"," "[" INT "]"} "]"
//! ```
//!
//! Whitespace is insignificant, `+` and `*` associate to the left and the
//! unary prefixes bind tightest.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Fraction;
use crate::cf::CFVector;
use crate::error::{Error, Result, SourceSpan, SyntaxError};
use crate::tangle::{CanonicalTangle, TangleExpr};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error(&mut self, expected: &[&str]) -> SyntaxError {
        self.skip_ws();
        let found = match self.rest().chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        let width = self.rest().chars().next().map_or(0, char::len_utf8);
        SyntaxError {
            span: SourceSpan::new(self.pos, self.pos + width),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&[&format!("{token:?}")]))
        }
    }

    /// `1/` is a prefix only when the `1` is immediately followed (modulo
    /// whitespace) by a slash.
    fn eat_invert(&mut self) -> bool {
        self.skip_ws();
        let save = self.pos;
        if self.eat("1") && self.eat("/") {
            return true;
        }
        self.pos = save;
        false
    }

    fn expr(&mut self) -> Result<TangleExpr, SyntaxError> {
        let mut acc = self.term()?;
        while self.eat("+") {
            acc = TangleExpr::sum(acc, self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TangleExpr, SyntaxError> {
        let mut acc = self.factor()?;
        while self.eat("*") {
            acc = TangleExpr::prod(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<TangleExpr, SyntaxError> {
        if self.eat("-") {
            return Ok(self.factor()?.mirror());
        }
        if self.eat_invert() {
            return Ok(self.factor()?.invert());
        }
        if self.eat("rot") {
            self.expect("(")?;
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner.rotate());
        }
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.peek() == Some('[') {
            return self.atom();
        }
        Err(self.error(&["\"-\"", "\"1/\"", "\"rot\"", "\"(\"", "\"[\""]))
    }

    fn atom(&mut self) -> Result<TangleExpr, SyntaxError> {
        self.expect("[")?;
        if self.peek() == Some('[') {
            return self.cfvec();
        }
        if self.eat("inf") {
            self.expect("]")?;
            return Ok(TangleExpr::Infinity);
        }
        let n = self.integer(&["integer", "\"inf\"", "\"[\""])?;
        self.expect("]")?;
        Ok(TangleExpr::int(n))
    }

    fn cfvec(&mut self) -> Result<TangleExpr, SyntaxError> {
        let mut terms = Vec::new();
        loop {
            self.expect("[")?;
            terms.push(self.integer(&["integer"])?);
            self.expect("]")?;
            if self.eat("]") {
                break;
            }
            if !self.eat(",") {
                return Err(self.error(&["\",\"", "\"]\""]));
            }
        }
        let v = CFVector::new(terms).expect("at least one term was read");
        Ok(TangleExpr::from_cf(&v))
    }

    fn integer(&mut self, expected: &[&str]) -> Result<BigInt, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let sign_len = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign_len..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(self.error(expected));
        }
        let end = start + sign_len + digits;
        let text = self.src[start..end].trim_start_matches('+');
        self.pos = end;
        Ok(text.parse().expect("sign and digits form an integer"))
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error(&["\"+\"", "\"*\"", "end of input"]))
        }
    }
}

pub fn parse_tangle(text: &str) -> Result<TangleExpr> {
    let mut p = Parser::new(text);
    let t = p.expr()?;
    p.finish()?;
    Ok(t)
}

/// Like [`parse_tangle`], also accepting `cf:2,-3,5` for `[[2],[-3],[5]]`.
pub fn parse_tangle_arg(text: &str) -> Result<TangleExpr> {
    let trimmed = text.trim_start();
    match trimmed.strip_prefix("cf:") {
        Some(list) => {
            let offset = text.len() - list.len();
            let mut terms = Vec::new();
            let mut at = offset;
            for item in list.split(',') {
                let mut p = Parser::new(item);
                let n = p.integer(&["integer"]).map_err(|e| shift(e, at))?;
                p.finish().map_err(|e| shift(e, at))?;
                terms.push(n);
                at += item.len() + 1;
            }
            Ok(TangleExpr::from_cf(&CFVector::new(terms)?))
        }
        None => parse_tangle(text),
    }
}

fn shift(mut e: SyntaxError, by: usize) -> SyntaxError {
    e.span = SourceSpan::new(e.span.start + by, e.span.end + by);
    e
}

/// Prints with every binary subexpression parenthesized; only the root is
/// left bare.
pub fn print_tangle(t: &TangleExpr) -> String {
    let mut out = String::new();
    write_tangle(t, false, &mut out);
    out
}

fn write_tangle(t: &TangleExpr, nested: bool, out: &mut String) {
    match t {
        TangleExpr::Zero => out.push_str("[0]"),
        TangleExpr::Infinity => out.push_str("[inf]"),
        TangleExpr::Int(n) => {
            out.push('[');
            out.push_str(&n.to_string());
            out.push(']');
        }
        TangleExpr::Sum(a, b) | TangleExpr::Prod(a, b) => {
            if nested {
                out.push('(');
            }
            write_tangle(a, true, out);
            out.push(if matches!(t, TangleExpr::Sum(..)) {
                '+'
            } else {
                '*'
            });
            write_tangle(b, true, out);
            if nested {
                out.push(')');
            }
        }
        TangleExpr::Mirror(x) => {
            out.push('-');
            write_tangle(x, true, out);
        }
        TangleExpr::Invert(x) => {
            out.push_str("1/");
            write_tangle(x, true, out);
        }
        TangleExpr::Rotate(x) => {
            out.push_str("rot(");
            write_tangle(x, false, out);
            out.push(')');
        }
    }
}

/// Reads `p/q`, `p` or `inf`.
pub fn parse_fraction(text: &str) -> Result<Fraction> {
    let mut p = Parser::new(text);
    if p.eat("inf") {
        p.finish()?;
        return Ok(Fraction::infinity());
    }
    let num = p.integer(&["integer", "\"inf\""])?;
    let den = if p.eat("/") {
        p.integer(&["integer"])?
    } else {
        BigInt::from(1)
    };
    p.finish().map_err(|mut e| {
        if !text[..e.span.start].contains('/') {
            e.expected.insert(0, "\"/\"".into());
        }
        e.expected.retain(|s| s != "\"+\"" && s != "\"*\"");
        e
    })?;
    if num.is_zero() && den.is_zero() {
        return Err(Error::ZeroOverZero);
    }
    Fraction::new(num, den)
}

impl Serialize for TangleExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&print_tangle(self))
    }
}

impl<'de> Deserialize<'de> for TangleExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_tangle(&s).map_err(serde::de::Error::custom)
    }
}

/// A canonical form travels as its vector, or as the string `"infinity"`.
impl Serialize for CanonicalTangle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CanonicalTangle::Infinity => serializer.serialize_str("infinity"),
            CanonicalTangle::Vector(v) => v.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for CanonicalTangle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::String(s) if s == "infinity" => Ok(CanonicalTangle::Infinity),
            other => {
                let v: CFVector = serde_json::from_value(other).map_err(D::Error::custom)?;
                if !v.is_canonical() {
                    return Err(D::Error::custom(format!("{v} is not a canonical vector")));
                }
                Ok(CanonicalTangle::Vector(v))
            }
        }
    }
}
