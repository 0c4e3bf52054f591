use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::word::Word;
use crate::group::Group;
use crate::scalar::{Rational, Scalar};

/// Tolerance on the total mass of a float-weighted measure.
pub const FLOAT_MASS_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact(Rational),
    Float(f64),
}

impl Weight {
    pub fn to_f64(&self) -> f64 {
        match self {
            Weight::Exact(q) => Scalar::to_f64(q),
            Weight::Float(x) => *x,
        }
    }

    pub fn to_scalar<S: Scalar>(&self) -> S {
        match self {
            Weight::Exact(q) => S::from_rational(q),
            Weight::Float(x) => S::from_f64(*x).expect("weights are finite"),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Weight::Exact(q) => q.render(),
            Weight::Float(x) => x.render(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Weight::Exact(q) => q.is_zero(),
            Weight::Float(x) => *x == 0.0,
        }
    }
}

/// A probability measure with finitely many atoms. Weights are all exact or
/// all float; mixed input is promoted to float.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSupportMeasure {
    ambient: Group,
    atoms: BTreeMap<Word, Weight>,
}

impl FiniteSupportMeasure {
    pub fn new(ambient: &Group, atoms: Vec<(Word, Weight)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        let exact = atoms.iter().all(|(_, w)| matches!(w, Weight::Exact(_)));
        let mut map: BTreeMap<Word, Weight> = BTreeMap::new();
        for (w, weight) in atoms {
            ambient.check_word(&w)?;
            let negative = match &weight {
                Weight::Exact(q) => q.is_negative(),
                Weight::Float(x) => !x.is_finite() || *x < 0.0,
            };
            if negative {
                return Err(Error::InvalidMeasure(format!("weight {} on `{}` is not a nonnegative number", weight.render(), ambient.render(&w))));
            }
            let w = if ambient.has_normal_form() { ambient.normal_form(&w)? } else { w };
            let weight = if exact { weight } else { Weight::Float(weight.to_f64()) };
            let entry = map.remove(&w);
            let merged = match (entry, weight) {
                (None, x) => x,
                (Some(Weight::Exact(a)), Weight::Exact(b)) => Weight::Exact(a + b),
                (Some(a), b) => Weight::Float(a.to_f64() + b.to_f64()),
            };
            map.insert(w, merged);
        }
        map.retain(|_, w| !w.is_zero());
        let m = FiniteSupportMeasure { ambient: ambient.clone(), atoms: map };
        m.check_mass()?;
        Ok(m)
    }

    fn check_mass(&self) -> Result<()> {
        if self.is_exact() {
            let total: Rational = self.atoms.values().map(|w| match w {
                Weight::Exact(q) => q.clone(),
                Weight::Float(_) => unreachable!(),
            }).fold(<Rational as Zero>::zero(), |a, b| a + b);
            if total != Rational::from_i64(1) {
                return Err(Error::InvalidMeasure(format!("weights sum to {}, not 1", total.render())));
            }
        } else {
            let total: f64 = self.atoms.values().map(Weight::to_f64).sum();
            if (total - 1.0).abs() > FLOAT_MASS_TOLERANCE {
                return Err(Error::InvalidMeasure(format!("weights sum to {total}, not 1")));
            }
        }
        Ok(())
    }

    pub fn dirac(ambient: &Group, w: Word) -> Result<Self> {
        Self::new(ambient, vec![(w, Weight::Exact(Rational::from_i64(1)))])
    }

    /// Equal exact weights on the listed words (repeats accumulate).
    pub fn uniform(ambient: &Group, words: Vec<Word>) -> Result<Self> {
        let n = words.len() as i64;
        if n == 0 {
            return Err(Error::InvalidMeasure("uniform measure on an empty set".into()));
        }
        let w = Rational::new(1.into(), n.into());
        Self::new(ambient, words.into_iter().map(|x| (x, Weight::Exact(w.clone()))).collect())
    }

    /// Uniform measure on the symmetric set `{s, s⁻¹}` of the given words.
    pub fn symmetric_uniform(ambient: &Group, words: &[Word]) -> Result<Self> {
        let all = words.iter().flat_map(|w| [w.clone(), w.inverse()]).collect();
        Self::uniform(ambient, all)
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Word, &Weight)> {
        self.atoms.iter()
    }

    pub fn support(&self) -> Vec<Word> {
        self.atoms.keys().cloned().collect()
    }

    pub fn is_exact(&self) -> bool {
        self.atoms.values().all(|w| matches!(w, Weight::Exact(_)))
    }

    pub fn weight_of(&self, w: &Word) -> Option<&Weight> {
        self.atoms.get(w)
    }

    /// Atoms with weights converted to `S`.
    pub fn weights<S: Scalar>(&self) -> Vec<(Word, S)> {
        self.atoms.iter().map(|(w, x)| (w.clone(), x.to_scalar())).collect()
    }

    fn require_normal_forms(&self, what: &str) -> Result<()> {
        if self.ambient.has_normal_form() {
            Ok(())
        } else {
            Err(Error::UnsupportedFamily(format!("{what} in {}", self.ambient.family_name())))
        }
    }

    /// `(μ*ν)(x) = Σ_{gh=x} μ(g)ν(h)`.
    pub fn convolve(&self, other: &FiniteSupportMeasure) -> Result<Self> {
        self.require_normal_forms("convolution")?;
        if self.ambient != other.ambient {
            return Err(Error::InvalidMeasure("convolution of measures on different groups".into()));
        }
        let mut atoms = Vec::with_capacity(self.atoms.len() * other.atoms.len());
        for (g, a) in &self.atoms {
            for (h, b) in &other.atoms {
                let weight = match (a, b) {
                    (Weight::Exact(p), Weight::Exact(q)) => Weight::Exact(p * q),
                    _ => Weight::Float(a.to_f64() * b.to_f64()),
                };
                atoms.push((self.ambient.multiply(g, h)?, weight));
            }
        }
        Self::new_unchecked_mass(&self.ambient, atoms)
    }

    /// Products of probability weights can drift from mass 1 in floating
    /// point by more than the input tolerance; renormalize float results.
    fn new_unchecked_mass(ambient: &Group, atoms: Vec<(Word, Weight)>) -> Result<Self> {
        let exact = atoms.iter().all(|(_, w)| matches!(w, Weight::Exact(_)));
        if exact {
            return Self::new(ambient, atoms);
        }
        let total: f64 = atoms.iter().map(|(_, w)| w.to_f64()).sum();
        Self::new(ambient, atoms.into_iter().map(|(w, x)| (w, Weight::Float(x.to_f64() / total))).collect())
    }

    /// `μ̌(g) = μ(g⁻¹)`.
    pub fn symmetric_opposite(&self) -> Result<Self> {
        let atoms = self
            .atoms
            .iter()
            .map(|(w, x)| Ok((if self.ambient.has_normal_form() { self.ambient.invert(w)? } else { w.inverse() }, x.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.ambient, atoms)
    }

    /// `μ^{*n}` (with `μ^{*0} = δ_e`).
    pub fn power(&self, n: usize) -> Result<Self> {
        let mut acc = Self::dirac(&self.ambient, Word::identity())?;
        for _ in 0..n {
            acc = acc.convolve(self)?;
        }
        Ok(acc)
    }

    /// `(1/n) Σ_{l<n} μ^{*l}`.
    pub fn cesaro_average(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMeasure("Cesàro average of zero terms".into()));
        }
        let mut power = Self::dirac(&self.ambient, Word::identity())?;
        let mut atoms: Vec<(Word, Weight)> = Vec::new();
        let scale_exact = Rational::new(1.into(), (n as i64).into());
        for l in 0..n {
            for (w, x) in &power.atoms {
                let weight = match x {
                    Weight::Exact(q) => Weight::Exact(q * &scale_exact),
                    Weight::Float(f) => Weight::Float(f / n as f64),
                };
                atoms.push((w.clone(), weight));
            }
            if l + 1 < n {
                power = power.convolve(self)?;
            }
        }
        Self::new_unchecked_mass(&self.ambient, atoms)
    }

    pub fn render(&self) -> Vec<(String, String)> {
        self.atoms.iter().map(|(w, x)| (self.ambient.render(w), x.render())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(p: i64, d: i64) -> Weight {
        Weight::Exact(rat(p, d))
    }

    #[test]
    fn rejects_bad_mass() {
        let z = Group::free(1);
        let a = Word::generator(0);
        assert!(FiniteSupportMeasure::new(&z, vec![(a.clone(), q(9, 10))]).is_err());
        assert!(FiniteSupportMeasure::new(&z, vec![(a.clone(), Weight::Float(0.9))]).is_err());
        assert!(FiniteSupportMeasure::new(&z, vec![(a.clone(), q(3, 2)), (a.inverse(), q(-1, 2))]).is_err());
        // Mixed input is promoted to float.
        let m = FiniteSupportMeasure::new(&z, vec![(a.clone(), q(1, 2)), (a.inverse(), Weight::Float(0.5))]).unwrap();
        assert!(!m.is_exact());
    }

    #[test]
    fn binomial_convolution_on_z() {
        let z = Group::free(1);
        let a = Word::generator(0);
        let mu = FiniteSupportMeasure::symmetric_uniform(&z, std::slice::from_ref(&a)).unwrap();
        let mu2 = mu.convolve(&mu).unwrap();
        assert_eq!(mu2.weight_of(&a.pow(2)), Some(&q(1, 4)));
        assert_eq!(mu2.weight_of(&Word::identity()), Some(&q(1, 2)));
        assert_eq!(mu2.weight_of(&a.pow(-2)), Some(&q(1, 4)));
        let delta = FiniteSupportMeasure::dirac(&z, Word::identity()).unwrap();
        assert_eq!(delta.convolve(&mu).unwrap(), mu);
    }

    #[test]
    fn opposite_and_heisenberg_dirac() {
        let f2 = Group::free(2);
        let m = FiniteSupportMeasure::new(&f2, vec![(Word::generator(0), q(1, 3)), (Word::generator(1), q(2, 3))]).unwrap();
        let o = m.symmetric_opposite().unwrap();
        assert_eq!(o.weight_of(&Word::power_of(0, -1)), Some(&q(1, 3)));
        assert_eq!(o.weight_of(&Word::power_of(1, -1)), Some(&q(2, 3)));
        assert_eq!(o.symmetric_opposite().unwrap(), m);
        let h = Group::heisenberg();
        let dx = FiniteSupportMeasure::dirac(&h, Word::generator(0)).unwrap();
        let dy = FiniteSupportMeasure::dirac(&h, Word::generator(1)).unwrap();
        assert_eq!(dx.convolve(&dy).unwrap(), FiniteSupportMeasure::dirac(&h, h.parse_word("x y").unwrap()).unwrap());
    }

    #[test]
    fn cesaro_average_mass() {
        let z = Group::free(1);
        let mu = FiniteSupportMeasure::symmetric_uniform(&z, &[Word::generator(0)]).unwrap();
        let avg = mu.cesaro_average(4).unwrap();
        assert!(avg.is_exact());
        // δ_e contributes 1 at l = 0 and 1/2 at l = 2: (1 + 1/2)/4.
        assert_eq!(avg.weight_of(&Word::identity()), Some(&q(3, 8)));
    }
}
