//! Parsing of the textual notation used in the fixtures: dihedral words such
//! as `yx^{m-2}` or `x^my`, exponent expressions in `n` and `m = n/2`
//! (including `\frac{m^2-1}{2}`), pairs `(yx^m,1)`, vectors
//! `(e,yx;y,y,y,y)` and applicability conditions like `m odd`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::element::dihedral_mul;
use crate::group::GroupElement;
use crate::hurwitz::HurwitzVector;

/// Evaluates an integer exponent expression with `n` and `m = n/2` bound.
///
/// ```
/// use dihedral_loci::notation::eval_exponent;
/// assert_eq!(eval_exponent(r"\frac{m^2-1}{2}", 10).unwrap(), 12);
/// assert_eq!(eval_exponent("m+1", 6).unwrap(), 4);
/// ```
pub fn eval_exponent(expr: &str, n: u32) -> Result<i64> {
    let mut p = ExprParser { src: expr.as_bytes(), pos: 0, n: n as i64 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    n: i64,
}

impl ExprParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", c as char)))
        }
    }

    fn expr(&mut self) -> Result<i64> {
        let mut v = self.term()?;
        loop {
            if self.eat(b'+') {
                v += self.term()?;
            } else if self.eat(b'-') {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    /// Implicit multiplication (`2m`) and explicit `*`.
    fn term(&mut self) -> Result<i64> {
        let mut v = self.factor()?;
        loop {
            let implicit = matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'{' || c == b'\\');
            if self.eat(b'*') || implicit {
                v *= self.factor()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn factor(&mut self) -> Result<i64> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.atom()?;
            let e = u32::try_from(e).map_err(|_| self.error("negative power"))?;
            return base.checked_pow(e).ok_or_else(|| self.error("overflow"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<i64> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'{') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b'}')?;
                Ok(v)
            }
            Some(b'\\') => {
                if !self.src[self.pos..].starts_with(br"\frac") {
                    return Err(self.error("unknown command"));
                }
                self.pos += 5;
                let num = self.atom()?;
                let den = self.atom()?;
                if den == 0 || num % den != 0 {
                    return Err(self.error(&format!("{num}/{den} is not an integer")));
                }
                Ok(num / den)
            }
            Some(b'n') => {
                self.pos += 1;
                Ok(self.n)
            }
            Some(b'm') => {
                self.pos += 1;
                if self.n % 2 != 0 {
                    return Err(self.error("m = n/2 needs n even"));
                }
                Ok(self.n / 2)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.error("number out of range"))
            }
            _ => Err(self.error("expected a number, n, m or a group")),
        }
    }
}

/// Evaluates a word in `x`, `y`, `e` (e.g. `yx^{m-1}`, `x^my`, `xy`) in
/// `D_n`, returning `(k, l)` for `y^k x^l`.
///
/// A bare exponent (`x^m`, `x^2y`) is a single character, as in TeX.
pub fn parse_dihedral_word(word: &str, n: u32) -> Result<(u8, u32)> {
    let bytes = word.trim().as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    let mut acc = (0u8, 0u32);
    let mut i = 0;
    while i < bytes.len() {
        let letter = bytes[i];
        i += 1;
        let mut exponent = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let text = if bytes.get(i) == Some(&b'{') {
                let close = matching_brace(bytes, i)?;
                let t = &word.trim()[i + 1..close];
                i = close + 1;
                t
            } else if i < bytes.len() {
                let t = &word.trim()[i..i + 1];
                i += 1;
                t
            } else {
                return Err(Error::Parse(format!("dangling exponent in {word:?}")));
            };
            exponent = eval_exponent(text, n)?;
        }
        let factor = match letter {
            b'x' => (0u8, exponent.rem_euclid(n as i64) as u32),
            b'y' => ((exponent.rem_euclid(2)) as u8, 0),
            b'e' => (0, 0),
            b' ' => continue,
            other => return Err(Error::Parse(format!("unexpected {:?} in word {word:?}", other as char))),
        };
        acc = dihedral_mul(n, acc, factor);
    }
    Ok(acc)
}

fn matching_brace(bytes: &[u8], open: usize) -> Result<usize> {
    let mut depth = 0usize;
    for (j, &b) in bytes.iter().enumerate().skip(open) {
        match b {
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(j);
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse(format!("unbalanced braces in {:?}", String::from_utf8_lossy(bytes))))
}

/// Splits on `sep` at nesting depth zero (parentheses and braces).
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn strip_parens(s: &str) -> Result<&str> {
    let t = s.trim();
    t.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a parenthesised list, got {s:?}")))
}

/// A pair `(word, s)` in `D_n × Z/2`, e.g. `(yx^{m-1},1)`.
pub fn parse_pair(s: &str, n: u32) -> Result<GroupElement> {
    let inner = strip_parens(s)?;
    let parts = split_top(inner, ',');
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected (word, 0|1), got {s:?}")));
    }
    let (k, l) = parse_dihedral_word(parts[0], n)?;
    let ext: u8 = parts[1].trim().parse().map_err(|_| Error::Parse(format!("bad Z/2 coordinate in {s:?}")))?;
    if ext > 1 {
        return Err(Error::Parse(format!("Z/2 coordinate out of range in {s:?}")));
    }
    Ok(GroupElement::new(k, l, ext))
}

/// A list of pairs `((y,1),(yx,1),…)`.
pub fn parse_pair_list(s: &str, n: u32) -> Result<Vec<GroupElement>> {
    split_top(strip_parens(s)?, ',').into_iter().map(|p| parse_pair(p, n)).collect()
}

/// A vector of `D_n` words, `(a_1,b_1,…;c_1,…)` when handles are present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordVector {
    pub handles: Vec<(GroupElement, GroupElement)>,
    pub branches: Vec<GroupElement>,
}

pub fn parse_word_vector(s: &str, n: u32) -> Result<WordVector> {
    let inner = strip_parens(s)?;
    let sections = split_top(inner, ';');
    let word = |w: &str| parse_dihedral_word(w, n).map(|(k, l)| GroupElement::new(k, l, 0));
    let list = |t: &str| -> Result<Vec<GroupElement>> {
        if t.trim().is_empty() {
            return Ok(Vec::new());
        }
        split_top(t, ',').into_iter().map(word).collect()
    };
    match sections.as_slice() {
        [branches] => Ok(WordVector { handles: Vec::new(), branches: list(branches)? }),
        [handles, branches] => {
            let h = list(handles)?;
            if h.len() % 2 != 0 {
                return Err(Error::Parse(format!("odd number of handle entries in {s:?}")));
            }
            Ok(WordVector { handles: h.chunks(2).map(|c| (c[0], c[1])).collect(), branches: list(branches)? })
        }
        _ => Err(Error::Parse(format!("more than one ';' in {s:?}"))),
    }
}

/// Prints `y^k x^l` as a word: `e`, `y`, `x^3`, `yx^{10}`.
pub fn format_word(e: GroupElement) -> String {
    let y = if e.reflection == 1 { "y" } else { "" };
    match e.rotation {
        0 if y.is_empty() => "e".to_string(),
        0 => y.to_string(),
        1 => format!("{y}x"),
        l if l < 10 => format!("{y}x^{l}"),
        l => format!("{y}x^{{{l}}}"),
    }
}

/// Prints an element of `D_n × Z/2` as `(word,s)`.
pub fn format_pair(e: GroupElement) -> String {
    format!("({},{})", format_word(e), e.ext)
}

/// Prints a vector in the fixture notation, `(a,b;c,d)`; `pairs` selects
/// the `(word,s)` form for entries.
pub fn format_vector(v: &HurwitzVector, pairs: bool) -> String {
    let g = v.group();
    let f = |e| if pairs { format_pair(g.element(e)) } else { format_word(g.element(e)) };
    let handles: Vec<String> = v.handles().iter().flat_map(|&(a, b)| [f(a), f(b)]).collect();
    let branches: Vec<String> = v.branches().iter().map(|&e| f(e)).collect();
    if handles.is_empty() {
        format!("({})", branches.join(","))
    } else {
        format!("({};{})", handles.join(","), branches.join(","))
    }
}

/// Applicability predicate on `n`, e.g. `"n even and m odd"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    clauses: Vec<Clause>,
    text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Clause {
    NOdd,
    NEven,
    MOdd,
    MEven,
    NEquals(u32),
    NAbove(u32),
}

impl Condition {
    pub fn always() -> Condition {
        Condition { clauses: Vec::new(), text: "all".into() }
    }

    pub fn holds(&self, n: u32) -> bool {
        self.clauses.iter().all(|c| match *c {
            Clause::NOdd => n % 2 == 1,
            Clause::NEven => n % 2 == 0,
            Clause::MOdd => n % 4 == 2,
            Clause::MEven => n % 4 == 0,
            Clause::NEquals(k) => n == k,
            Clause::NAbove(k) => n > k,
        })
    }

    pub fn and(&self, other: &Condition) -> Condition {
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().copied());
        let text = match (self.clauses.is_empty(), other.clauses.is_empty()) {
            (true, _) => other.text.clone(),
            (_, true) => self.text.clone(),
            _ => format!("{} and {}", self.text, other.text),
        };
        Condition { clauses, text }
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Condition> {
        let text = s.trim();
        if text.is_empty() || text == "all" {
            return Ok(Condition::always());
        }
        let clauses = text
            .split(" and ")
            .map(|c| {
                let c = c.trim();
                let compact: String = c.chars().filter(|ch| !ch.is_whitespace()).collect();
                match c {
                    "n odd" => Ok(Clause::NOdd),
                    "n even" => Ok(Clause::NEven),
                    // m = n/2 must exist for either parity of m
                    "m odd" => Ok(Clause::MOdd),
                    "m even" => Ok(Clause::MEven),
                    _ if compact.starts_with("n=") => {
                        compact[2..].parse().map(Clause::NEquals).map_err(|_| Error::Parse(format!("bad condition {c:?}")))
                    }
                    _ if compact.starts_with("n>") => {
                        compact[2..].parse().map(Clause::NAbove).map_err(|_| Error::Parse(format!("bad condition {c:?}")))
                    }
                    _ => Err(Error::Parse(format!("unknown condition {c:?}"))),
                }
            })
            .collect::<Result<_>>()?;
        Ok(Condition { clauses, text: text.to_string() })
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Condition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for Condition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        for n in [4u32, 12] {
            for k in 0..2u8 {
                for l in 0..n {
                    let e = GroupElement::new(k, l, 1);
                    assert_eq!(parse_pair(&format_pair(e), n).unwrap(), e);
                }
            }
        }
        assert_eq!(format_word(GroupElement::new(1, 10, 0)), "yx^{10}");
        assert_eq!(format_word(GroupElement::IDENTITY), "e");
        let w = parse_word_vector("(e,yx;y,y,x^2,x^{-2})", 6).unwrap();
        let g = crate::group::make_group(crate::group::GroupType::Dihedral, 6).unwrap();
        let v = HurwitzVector::from_elements(&g, &w.handles, &w.branches).unwrap();
        assert_eq!(format_vector(&v, false), "(e,yx;y,y,x^2,x^4)");
    }

    #[test]
    fn exponents() {
        assert_eq!(eval_exponent("m-2", 10).unwrap(), 3);
        assert_eq!(eval_exponent("-1", 10).unwrap(), -1);
        assert_eq!(eval_exponent(r"\frac{m^2-1}{2}", 6).unwrap(), 4);
        assert_eq!(eval_exponent("2m+1", 6).unwrap(), 7);
        assert!(eval_exponent("m", 5).is_err());
        assert!(eval_exponent(r"\frac{m}{2}", 6).is_err());
        assert!(eval_exponent("m+", 6).is_err());
    }

    #[test]
    fn words() {
        let n = 10;
        assert_eq!(parse_dihedral_word("e", n).unwrap(), (0, 0));
        assert_eq!(parse_dihedral_word("yx^{m-1}", n).unwrap(), (1, 4));
        assert_eq!(parse_dihedral_word("yx^{-3}", n).unwrap(), (1, 7));
        // x^m y = y x^{-m}
        assert_eq!(parse_dihedral_word("x^my", n).unwrap(), (1, 5));
        assert_eq!(parse_dihedral_word("xy", n).unwrap(), (1, 9));
        assert_eq!(parse_dihedral_word("x^2y", n).unwrap(), (1, 8));
        assert_eq!(parse_dihedral_word("x^{m+1}", n).unwrap(), (0, 6));
        assert!(parse_dihedral_word("z", n).is_err());
    }

    #[test]
    fn pairs_and_vectors() {
        assert_eq!(parse_pair("(yx^{m},1)", 6).unwrap(), GroupElement::new(1, 3, 1));
        assert_eq!(parse_pair("(e,0)", 6).unwrap(), GroupElement::IDENTITY);
        assert!(parse_pair("(y,2)", 6).is_err());
        let v = parse_pair_list("((y,1),(y,1),(yx,1),(yx,1),(e,1),(e,1))", 3).unwrap();
        assert_eq!(v.len(), 6);
        let w = parse_word_vector("(e,yx;y,y,y,y)", 4).unwrap();
        assert_eq!(w.handles, vec![(GroupElement::IDENTITY, GroupElement::new(1, 1, 0))]);
        assert_eq!(w.branches.len(), 4);
        let w = parse_word_vector("(yx^{\\frac{m^2-1}{2}},x^m)", 6).unwrap();
        assert_eq!(w.branches, vec![GroupElement::new(1, 4, 0), GroupElement::new(0, 3, 0)]);
        assert!(parse_word_vector("(y;y)", 4).is_err());
    }

    #[test]
    fn conditions() {
        let c: Condition = "n even and m odd".parse().unwrap();
        assert!(c.holds(6) && c.holds(2) && !c.holds(4) && !c.holds(5));
        let d: Condition = "n = 2".parse().unwrap();
        assert!(d.holds(2) && !d.holds(6));
        assert!(Condition::always().holds(7));
        assert!("m prime".parse::<Condition>().is_err());
        let both = c.and(&"n>2".parse().unwrap());
        assert!(!both.holds(2) && both.holds(10));
        assert_eq!(both.to_string(), "n even and m odd and n>2");
    }
}
