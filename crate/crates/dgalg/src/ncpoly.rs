//! Noncommutative polynomials: finite rational linear combinations of words.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::word::{GeneratorSet, Word};

/// A finite rational linear combination of words; the universal carrier for
/// algebra elements and differential images.  No zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    pub terms: BTreeMap<Word, Rational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        NcPoly::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rational::one());
        NcPoly { terms }
    }

    pub fn from_terms(pairs: Vec<(Word, Rational)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in pairs {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, factor: &Rational) -> NcPoly {
        if factor.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * factor)).collect() }
    }

    /// Free (concatenation) product, bilinearly extended; no reduction.
    pub fn mul_free(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    /// The degree if all words share one, `None` for the zero polynomial.
    pub fn homogeneous_degree(&self, gens: &GeneratorSet) -> Result<Option<usize>> {
        let mut degree = None;
        for w in self.terms.keys() {
            let d = gens.word_degree(w);
            match degree {
                None => degree = Some(d),
                Some(existing) if existing == d => {}
                Some(existing) => {
                    return Err(Error::Invalid(alloc::format!(
                        "inhomogeneous polynomial: words of degree {existing} and {d}"
                    )))
                }
            }
        }
        Ok(degree)
    }

    /// Split into homogeneous components, by degree.
    pub fn components(&self, gens: &GeneratorSet) -> BTreeMap<usize, NcPoly> {
        let mut out: BTreeMap<usize, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(gens.word_degree(w)).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn format(&self, gens: &GeneratorSet) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let coef = format_rational(c);
            let (sign, abs) = match coef.strip_prefix('-') {
                Some(a) => ("-", String::from(a)),
                None => ("+", coef),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
            let word = w.format(gens);
            if w.is_unit() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&word);
            } else {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&word);
            }
        }
        out
    }

    /// Parse an expression over the generator names: `*` concatenates,
    /// `+`/`-` combine terms, coefficients are integers or `p/q` fractions,
    /// `1` is the unit word, `0` the zero polynomial.  Whitespace is free.
    pub fn parse(gens: &GeneratorSet, input: &str) -> Result<NcPoly> {
        Parser { gens, chars: input.as_bytes(), pos: 0, input }.parse_sum()
    }
}

struct Parser<'a> {
    gens: &'a GeneratorSet,
    chars: &'a [u8],
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Invalid(alloc::format!("{msg} at byte {} of `{}`", self.pos, self.input))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.error("empty expression")),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                Some(_) if first => Rational::one(),
                Some(other) => {
                    return Err(self.error(&alloc::format!(
                        "expected `+` or `-`, found `{}`",
                        other as char
                    )))
                }
            };
            let term = self.parse_product()?;
            acc = acc.add(&term.scale(&sign));
            first = false;
        }
        Ok(acc)
    }

    fn parse_product(&mut self) -> Result<NcPoly> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.parse_factor()?;
            acc = acc.mul_free(&rhs);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<NcPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .map(|c| c.is_ascii_digit() || *c == b'/')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let text = &self.input[start..self.pos];
                let value = parse_rational(text)?;
                Ok(NcPoly::from_terms(alloc::vec![(Word::unit(), value)]))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .map(|c| c.is_ascii_alphanumeric() || *c == b'_')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = &self.input[start..self.pos];
                match self.gens.index_of(name) {
                    Some(idx) => Ok(NcPoly::from_word(Word::letter(idx))),
                    None => {
                        self.pos = start;
                        Err(self.error(&alloc::format!("unknown generator `{name}`")))
                    }
                }
            }
            Some(other) => {
                Err(self.error(&alloc::format!("unexpected character `{}`", other as char)))
            }
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qr};

    fn gens() -> GeneratorSet {
        GeneratorSet::degree_one(&["x", "y"]).unwrap()
    }

    #[test]
    fn parse_simple() {
        let g = gens();
        let p = NcPoly::parse(&g, "x*y - y*x").unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.format(&g), "x*y - y*x");
    }

    #[test]
    fn parse_coefficients_and_unit() {
        let g = gens();
        let p = NcPoly::parse(&g, "3/2*x*x - 2*y + 1").unwrap();
        assert_eq!(p.terms.get(&Word::unit()), Some(&q(1)));
        assert_eq!(p.terms.get(&Word(alloc::vec![0, 0])), Some(&qr(3, 2)));
        assert_eq!(p.terms.get(&Word(alloc::vec![1])), Some(&q(-2)));
        assert_eq!(NcPoly::parse(&g, "0").unwrap(), NcPoly::zero());
    }

    #[test]
    fn parse_rejects_unknown_generator() {
        assert!(NcPoly::parse(&gens(), "x*z").is_err());
    }

    #[test]
    fn free_expansion() {
        // (x+y)*(x-y) = x^2 - x*y + y*x - y^2 in the free algebra.
        let g = gens();
        let p = NcPoly::parse(&g, "x+y").unwrap();
        let m = NcPoly::parse(&g, "x-y").unwrap();
        let expect = NcPoly::parse(&g, "x*x - x*y + y*x - y*y").unwrap();
        assert_eq!(p.mul_free(&m), expect);
    }

    #[test]
    fn cancellation_drops_terms() {
        let g = gens();
        let p = NcPoly::parse(&g, "x*y - x*y").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn homogeneity() {
        let g = gens();
        assert_eq!(NcPoly::parse(&g, "x*y + y*y").unwrap().homogeneous_degree(&g).unwrap(), Some(2));
        assert!(NcPoly::parse(&g, "x*y + y").unwrap().homogeneous_degree(&g).is_err());
    }

    #[test]
    fn roundtrip_format_parse() {
        let g = gens();
        for src in ["x*y - 2*y*x + 3/4*y*y", "-x", "1", "x*x*x"] {
            let p = NcPoly::parse(&g, src).unwrap();
            let q = NcPoly::parse(&g, &p.format(&g)).unwrap();
            assert_eq!(p, q);
        }
    }
}
