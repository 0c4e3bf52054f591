use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A power of a single generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

/// A freely reduced word in the generators: adjacent letters with the same
/// generator are merged and zero exponents dropped on construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter { generator: g, exponent: 1 }])
    }

    pub fn power_of(g: usize, exponent: i64) -> Self {
        Self::from_letters([(g, exponent)])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for (generator, exponent) in letters {
            push_letter(&mut out, Letter { generator, exponent });
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of unit letters, `Σ |exponent|`.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| Letter { generator: l.generator, exponent: -l.exponent }).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for l in &other.0 {
            push_letter(&mut out, *l);
        }
        Word(out)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// The word as a sequence of `(generator, ±1)` steps.
    pub fn unit_letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0
            .iter()
            .flat_map(|l| std::iter::repeat_n((l.generator, l.exponent.signum()), l.exponent.unsigned_abs() as usize))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Renames generators through `f`.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_letters(self.0.iter().map(|l| (f(l.generator), l.exponent)))
    }

    /// Replaces each generator by a word (a homomorphism out of the free group).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for l in &self.0 {
            out = out.mul(&images[l.generator].pow(l.exponent));
        }
        out
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|l| l.generator == g).map(|l| l.exponent).sum()
    }

    /// Renders with generator names, e.g. `a b^-1 c^2`; the identity is `e`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                let name = names.get(l.generator).cloned().unwrap_or_else(|| format!("g{}", l.generator));
                if l.exponent == 1 {
                    name
                } else {
                    format!("{name}^{}", l.exponent)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `a b^-1 c^2` (tokens separated by whitespace or `*`; `e`, `1` or empty for the identity).
    pub fn parse(s: &str, names: &[String]) -> Result<Word> {
        let mut letters = Vec::new();
        for token in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if token == "1" || (token == "e" && !names.iter().any(|n| n == "e")) {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()
                        .map_err(|_| Error::InvalidWord(format!("bad exponent in `{token}`")))?;
                    (n, e)
                }
                None => (token, 1),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::InvalidWord(format!("unknown generator `{name}` in `{s}`")))?;
            letters.push((g, exp));
        }
        Ok(Word::from_letters(letters))
    }
}

fn push_letter(out: &mut Vec<Letter>, l: Letter) {
    if l.exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.generator == l.generator => {
            last.exponent += l.exponent;
            if last.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(l),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn free_reduction_on_construction() {
        let w = Word::parse("a a^-1 b", &names()).unwrap();
        assert_eq!(w, Word::generator(1));
        let w = Word::parse("a b b^-1 a", &names()).unwrap();
        assert_eq!(w, Word::power_of(0, 2));
        assert!(Word::parse("a^0", &names()).unwrap().is_identity());
    }

    #[test]
    fn render_and_parse_round_trip() {
        let w = Word::from_letters([(0, 2), (1, -1), (0, 1)]);
        let s = w.render(&names());
        assert_eq!(s, "a^2 b^-1 a");
        assert_eq!(Word::parse(&s, &names()).unwrap(), w);
        assert_eq!(Word::identity().render(&names()), "e");
        assert!(Word::parse("c", &names()).is_err());
    }

    #[test]
    fn inverse_and_commutator() {
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert!(a.mul(&a.inverse()).is_identity());
        let c = Word::commutator(&a, &b);
        assert_eq!(c.length(), 4);
        assert_eq!(c.unit_letters().count(), 4);
        assert!(c.mul(&c.inverse()).is_identity());
    }
}
