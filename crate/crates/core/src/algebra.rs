//! Words over the letters `z_i` with formal interpolation markers, and exact
//! rational linear combinations of them.
//!
//! A word is a sequence of [`Block`]s. Each block is a letter `z_i` preceded by
//! a monomial in markers; a marker power always binds to the letter that
//! follows it, so there is no way to express a trailing bare marker.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exact rational numbers. Always reduced, denominator positive.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `p/q`, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// An interpolation marker. `Marker::TAU` is the default marker `t`; further
/// markers `t1`, `t2`, ... are independent of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Marker(u16);

impl Marker {
    pub const TAU: Marker = Marker(0);

    /// The marker named `t<k>`, `k >= 1`.
    pub fn indexed(k: u16) -> Marker {
        assert!(k >= 1, "indexed markers start at 1");
        Marker(k)
    }

    pub fn id(self) -> u16 {
        self.0
    }

    pub fn is_tau(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_tau() {
            write!(f, "t")
        } else {
            write!(f, "t{}", self.0)
        }
    }
}

impl FromStr for Marker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Marker> {
        match s.strip_prefix('t') {
            Some("") => Ok(Marker::TAU),
            Some(rest) => match rest.parse::<u16>() {
                Ok(k) if k >= 1 => Ok(Marker(k)),
                _ => Err(Error::Parse(format!("invalid marker `{s}`"))),
            },
            None => Err(Error::Parse(format!("invalid marker `{s}`"))),
        }
    }
}

/// Marker exponents of one block, sorted by marker, no zero entries.
pub type Exponents = SmallVec<[(Marker, u32); 2]>;

/// A letter `z_i` together with the marker monomial in front of it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    letter: u32,
    exponents: Exponents,
}

impl Block {
    pub fn new(letter: u32, exponents: &[(Marker, u32)]) -> Result<Block> {
        if letter == 0 {
            return Err(Error::ZeroLetter);
        }
        let mut b = Block {
            letter,
            exponents: SmallVec::new(),
        };
        for &(m, p) in exponents {
            b.add_exponent(m, p);
        }
        Ok(b)
    }

    pub fn letter(letter: u32) -> Block {
        Block::new(letter, &[]).expect("letter must be positive")
    }

    pub fn letter_index(&self) -> u32 {
        self.letter
    }

    pub fn exponents(&self) -> &[(Marker, u32)] {
        &self.exponents
    }

    pub fn exponent(&self, m: Marker) -> u32 {
        self.exponents
            .iter()
            .find(|(k, _)| *k == m)
            .map_or(0, |&(_, p)| p)
    }

    pub fn is_plain(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn add_exponent(&mut self, m: Marker, p: u32) {
        if p == 0 {
            return;
        }
        match self.exponents.binary_search_by_key(&m, |&(k, _)| k) {
            Ok(pos) => self.exponents[pos].1 += p,
            Err(pos) => self.exponents.insert(pos, (m, p)),
        }
    }

    pub fn with_exponent(mut self, m: Marker, p: u32) -> Block {
        self.add_exponent(m, p);
        self
    }

    /// The diamond product: letters add, marker exponents add componentwise.
    pub fn diamond(&self, other: &Block) -> Block {
        let mut out = Block {
            letter: self.letter + other.letter,
            exponents: self.exponents.clone(),
        };
        for &(m, p) in &other.exponents {
            out.add_exponent(m, p);
        }
        out
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(m, p) in &self.exponents {
            if m.is_tau() && p == 1 {
                write!(f, "t ")?;
            } else {
                write!(f, "{m}^{p} ")?;
            }
        }
        write!(f, "z{}", self.letter)
    }
}

/// A word of blocks; the empty word is the unit `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TWord {
    blocks: Vec<Block>,
}

impl TWord {
    pub fn unit() -> TWord {
        TWord { blocks: Vec::new() }
    }

    pub fn from_blocks(blocks: Vec<Block>) -> TWord {
        TWord { blocks }
    }

    /// Builds a word from `(exponents, letter)` pairs.
    pub fn from_parts(parts: &[(&[(Marker, u32)], u32)]) -> Result<TWord> {
        parts
            .iter()
            .map(|&(e, i)| Block::new(i, e))
            .collect::<Result<Vec<_>>>()
            .map(TWord::from_blocks)
    }

    /// Plain word `z_{i_1} ... z_{i_k}`.
    pub fn plain(letters: &[u32]) -> Result<TWord> {
        letters
            .iter()
            .map(|&i| Block::new(i, &[]))
            .collect::<Result<Vec<_>>>()
            .map(TWord::from_blocks)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    pub fn weight(&self) -> u64 {
        self.blocks.iter().map(|b| u64::from(b.letter)).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_plain(&self) -> bool {
        self.blocks.iter().all(Block::is_plain)
    }

    pub fn contains_marker(&self, m: Marker) -> bool {
        self.blocks.iter().any(|b| b.exponent(m) > 0)
    }

    pub fn letters(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b.letter).collect()
    }

    pub fn first(&self) -> Option<&Block> {
        self.blocks.first()
    }

    pub fn tail(&self) -> TWord {
        TWord {
            blocks: self.blocks.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    /// `b · self`.
    pub fn prepend(&self, b: &Block) -> TWord {
        let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
        blocks.push(b.clone());
        blocks.extend_from_slice(&self.blocks);
        TWord { blocks }
    }

    /// Multiplies the leading block by `m^p`.
    pub fn prefix_marker(&self, m: Marker, p: u32) -> Result<TWord> {
        if self.is_unit() {
            return Err(Error::PrefixOnUnit);
        }
        let mut w = self.clone();
        w.blocks[0].add_exponent(m, p);
        Ok(w)
    }

    /// Merges `b` into the leading block; `None` for the unit word, where the
    /// diamond product vanishes.
    pub fn diamond_front(&self, b: &Block) -> Option<TWord> {
        let first = self.blocks.first()?;
        let mut blocks = self.blocks.clone();
        blocks[0] = b.diamond(first);
        Some(TWord { blocks })
    }

    /// Concatenation.
    pub fn concat(&self, other: &TWord) -> TWord {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        TWord { blocks }
    }

    /// The plain index `(i_1, ..., i_k)`, ignoring markers.
    pub fn index(&self) -> Composition {
        Composition(self.letters())
    }

    fn print_key(&self) -> (std::cmp::Reverse<usize>, &TWord) {
        (std::cmp::Reverse(self.depth()), self)
    }
}

impl fmt::Display for TWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "1");
        }
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for TWord {
    type Err = Error;

    /// Whitespace separated tokens: `z<i>` letters, `t`, `t^p` or `<marker>^p`
    /// binding to the next letter; `1` alone is the unit word.
    fn from_str(s: &str) -> Result<TWord> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(TWord::unit());
        }
        let mut blocks = Vec::new();
        let mut pending: Vec<(Marker, u32)> = Vec::new();
        for tok in s.split_whitespace() {
            if let Some(i) = tok.strip_prefix('z') {
                let i: u32 = i
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid letter `{tok}`")))?;
                blocks.push(Block::new(i, &pending)?);
                pending.clear();
            } else {
                let (name, p) = match tok.split_once('^') {
                    Some((name, p)) => {
                        let p: u32 = p
                            .parse()
                            .map_err(|_| Error::Parse(format!("invalid exponent in `{tok}`")))?;
                        (name, p)
                    }
                    None => (tok, 1),
                };
                pending.push((name.parse()?, p));
            }
        }
        if !pending.is_empty() {
            return Err(Error::Parse(format!(
                "marker power at the end of `{s}` has no letter to bind to"
            )));
        }
        Ok(TWord { blocks })
    }
}

/// A finite formal linear combination of words with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: HashMap<TWord, Rational>,
}

impl LinComb {
    pub fn zero() -> LinComb {
        LinComb::default()
    }

    pub fn one() -> LinComb {
        LinComb::from_word(TWord::unit())
    }

    pub fn from_word(w: TWord) -> LinComb {
        LinComb::term(w, Rational::one())
    }

    pub fn term(w: TWord, c: Rational) -> LinComb {
        let mut out = LinComb::zero();
        out.add_term(w, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (TWord, Rational)>>(terms: I) -> LinComb {
        let mut out = LinComb::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: TWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, k) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn coeff(&self, w: &TWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TWord, &Rational)> {
        self.terms.iter()
    }

    /// Terms in the canonical print order: deeper words first, then by block.
    pub fn sorted_terms(&self) -> Vec<(&TWord, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.print_key().cmp(&b.0.print_key()));
        v
    }

    pub fn scale(&self, c: &Rational) -> LinComb {
        if c.is_zero() {
            return LinComb::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Applies a word-to-combination map linearly.
    pub fn map_words<F: FnMut(&TWord) -> LinComb>(&self, mut f: F) -> LinComb {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    pub fn is_plain(&self) -> bool {
        self.terms.keys().all(TWord::is_plain)
    }

    pub fn contains_marker(&self, m: Marker) -> bool {
        self.terms.keys().any(|w| w.contains_marker(m))
    }

    pub fn max_depth(&self) -> usize {
        self.terms.keys().map(TWord::depth).max().unwrap_or(0)
    }
}

/// Coefficient-wise sum.
pub fn lincomb_add(a: &LinComb, b: &LinComb) -> LinComb {
    let mut out = a.clone();
    out.add_scaled(b, &Rational::one());
    out
}

pub fn lincomb_scale(a: &LinComb, c: &Rational) -> LinComb {
    a.scale(c)
}

impl From<TWord> for LinComb {
    fn from(w: TWord) -> LinComb {
        LinComb::from_word(w)
    }
}

impl Add for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        lincomb_add(self, rhs)
    }
}

impl Add for LinComb {
    type Output = LinComb;
    fn add(mut self, rhs: LinComb) -> LinComb {
        self += &rhs;
        self
    }
}

impl AddAssign<&LinComb> for LinComb {
    fn add_assign(&mut self, rhs: &LinComb) {
        self.add_scaled(rhs, &Rational::one());
    }
}

impl Sub for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for LinComb {
    type Output = LinComb;
    fn sub(self, rhs: LinComb) -> LinComb {
        &self - &rhs
    }
}

impl Neg for &LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if w.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

/// A finite sequence of positive integers `(i_1, ..., i_k)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Composition> {
        if parts.contains(&0) {
            return Err(Error::ZeroLetter);
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `k = 0` or `i_1 >= 2`.
    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&i| i >= 2)
    }

    pub fn to_word(&self) -> TWord {
        TWord::plain(&self.0).expect("composition parts are positive")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma separated parts, e.g. `2,1,1`.
    fn from_str(s: &str) -> Result<Composition> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Composition::default());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid index entry `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TWord {
        s.parse().unwrap()
    }

    #[test]
    fn word_from_parts_examples() {
        assert_eq!(TWord::from_parts(&[]).unwrap(), TWord::unit());
        let a = TWord::from_parts(&[(&[], 2), (&[(Marker::TAU, 1)], 1)]).unwrap();
        assert_eq!(a.to_string(), "z2 t z1");
        let b = TWord::from_parts(&[(&[(Marker::TAU, 2)], 5)]).unwrap();
        assert_eq!(b.to_string(), "t^2 z5");
        // zero exponents are dropped
        let c = TWord::from_parts(&[(&[(Marker::TAU, 0)], 3)]).unwrap();
        assert!(c.is_plain());
        assert_eq!(TWord::from_parts(&[(&[], 0)]), Err(Error::ZeroLetter));
    }

    #[test]
    fn prefix_marker_examples() {
        assert_eq!(w("z2 z3").prefix_marker(Marker::TAU, 1).unwrap(), w("t z2 z3"));
        assert_eq!(w("z2").prefix_marker(Marker::TAU, 0).unwrap(), w("z2"));
        assert_eq!(w("t z4").prefix_marker(Marker::TAU, 1).unwrap(), w("t^2 z4"));
        assert_eq!(TWord::unit().prefix_marker(Marker::TAU, 1), Err(Error::PrefixOnUnit));
    }

    #[test]
    fn text_form_round_trips() {
        for s in ["1", "z2 t z1", "t^2 z5", "t2^1 z4", "t^3 t1^2 z7 z1"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert_eq!(w("t2 z4"), w("t2^1 z4"));
        assert_eq!(w("t t z3"), w("t^2 z3"));
        assert!("z2 t".parse::<TWord>().is_err());
        assert!("z0".parse::<TWord>().is_err());
        assert!("q z1".parse::<TWord>().is_err());
    }

    #[test]
    fn lincomb_add_examples() {
        let x = w("z2 z1");
        let half = LinComb::term(x.clone(), rat(1, 2));
        assert_eq!(lincomb_add(&half, &half), LinComb::from_word(x.clone()));
        let neg = LinComb::term(x.clone(), int(-1));
        assert!(lincomb_add(&LinComb::from_word(x), &neg).is_zero());
        let u = LinComb::from_word(w("z2"));
        let v = LinComb::term(w("z3"), int(2));
        let s = lincomb_add(&u, &v);
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&w("z3")), int(2));
    }

    #[test]
    fn lincomb_scale_examples() {
        let x = w("z2");
        let a = LinComb::term(x.clone(), rat(1, 3));
        assert_eq!(lincomb_scale(&a, &int(3)), LinComb::from_word(x.clone()));
        assert!(lincomb_scale(&a, &int(0)).is_zero());
        let b = LinComb::from_terms([(w("z2"), int(1)), (w("z3"), int(-2))]);
        let s = lincomb_scale(&b, &rat(-1, 2));
        assert_eq!(s.coeff(&w("z2")), rat(-1, 2));
        assert_eq!(s.coeff(&w("z3")), int(1));
    }

    #[test]
    fn display_format() {
        let x = LinComb::from_terms([
            (w("z5"), int(1)),
            (w("z3 z2"), int(1)),
            (w("t z5"), int(-2)),
            (w("z2 z3"), int(1)),
        ]);
        assert_eq!(x.to_string(), "z2 z3 + z3 z2 + z5 - 2*t z5");
        assert_eq!(LinComb::zero().to_string(), "0");
        assert_eq!(LinComb::term(TWord::unit(), rat(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn compositions_parse() {
        let c: Composition = "2,1,1".parse().unwrap();
        assert_eq!(c.parts(), &[2, 1, 1]);
        assert!(c.is_admissible());
        assert!(!"1,2".parse::<Composition>().unwrap().is_admissible());
        assert!("2,0".parse::<Composition>().is_err());
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
    }
}
