//! Generators and words of the underlying free algebra.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// The ordered generators of a presentation, each with a positive internal
/// degree.  Connectedness of the algebras handled here forces every degree
/// to be at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
    degrees: Vec<usize>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<(String, usize)>) -> Result<Self> {
        let mut names = Vec::with_capacity(gens.len());
        let mut degrees = Vec::with_capacity(gens.len());
        for (name, deg) in gens {
            if deg == 0 {
                return Err(Error::Invalid(alloc::format!(
                    "generator `{name}` has degree 0; a connected algebra needs degree >= 1"
                )));
            }
            if name.is_empty() {
                return Err(Error::Invalid("empty generator name".into()));
            }
            if names.contains(&name) {
                return Err(Error::Invalid(alloc::format!("duplicate generator name `{name}`")));
            }
            names.push(name);
            degrees.push(deg);
        }
        if names.len() > 64 {
            return Err(Error::Invalid("more than 64 generators are not supported".into()));
        }
        Ok(GeneratorSet { names, degrees })
    }

    /// Degree-1 generators from a list of names.
    pub fn degree_one(names: &[&str]) -> Result<Self> {
        GeneratorSet::new(names.iter().map(|n| (String::from(*n), 1)).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Degree of a word as the sum of its letter degrees.
    pub fn word_degree(&self, word: &Word) -> usize {
        word.letters().iter().map(|&l| self.degrees[l as usize]).sum()
    }

    /// All words of the given degree, in lexicographic order of their letter
    /// sequences (generator order as listed).  With all generators in degree
    /// 1 this is the usual deglex order within the degree.
    pub fn words_of_degree(&self, degree: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.enumerate_words(degree, &mut prefix, &mut out);
        out
    }

    fn enumerate_words(&self, remaining: usize, prefix: &mut Vec<u8>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word(prefix.clone()));
            return;
        }
        for i in 0..self.len() {
            let d = self.degrees[i];
            if d <= remaining {
                prefix.push(i as u8);
                self.enumerate_words(remaining - d, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// A word in the generators: a sequence of generator indices.  The empty
/// word is the unit, of degree 0.  `Ord` is lexicographic on the letter
/// sequence with shorter prefixes first, which matches the column order used
/// throughout since comparisons only ever happen within one degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn format(&self, gens: &GeneratorSet) -> String {
        if self.is_unit() {
            return String::from("1");
        }
        let mut parts: Vec<&str> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            parts.push(gens.name(l as usize));
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degree_zero_and_duplicates() {
        assert!(GeneratorSet::new(vec![(String::from("x"), 0)]).is_err());
        assert!(GeneratorSet::new(vec![(String::from("x"), 1), (String::from("x"), 1)]).is_err());
    }

    #[test]
    fn word_enumeration_is_lexicographic() {
        let gens = GeneratorSet::degree_one(&["x", "y"]).unwrap();
        let words = gens.words_of_degree(2);
        let as_vecs: Vec<Vec<u8>> = words.iter().map(|w| w.0.clone()).collect();
        assert_eq!(as_vecs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn mixed_degrees_count() {
        // u of degree 1, w of degree 2: degree-4 words are uuuu, uuw, uwu,
        // wuu, ww -- 5 of them.
        let gens =
            GeneratorSet::new(vec![(String::from("u"), 1), (String::from("w"), 2)]).unwrap();
        assert_eq!(gens.words_of_degree(4).len(), 5);
        for w in gens.words_of_degree(4) {
            assert_eq!(gens.word_degree(&w), 4);
        }
    }

    #[test]
    fn free_dimension_powers() {
        let gens = GeneratorSet::degree_one(&["x1", "x2", "x3"]).unwrap();
        assert_eq!(gens.words_of_degree(2).len(), 9);
        assert_eq!(gens.words_of_degree(0), vec![Word::unit()]);
    }
}
