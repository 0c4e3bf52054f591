//! Groups given by a family with a normal-form oracle, words, subgroups and
//! finitely supported measures.

mod enumerate;
pub mod free;
mod integer;
mod measure;
mod structure;
mod subgroup;
mod table;
mod word;

use std::sync::Arc;

pub use enumerate::enumerate_finite;
pub use free::StallingsGraph;
pub use measure::{FiniteSupportMeasure, Weight, FLOAT_MASS_TOLERANCE};
pub use structure::{
    abelianization_map, center, centralizer_contains, lower_central_series, quotient, split_subgroup,
    subgroup_as_group, support_subgroup, LowerCentralSeries, Quotient, SubgroupGroup, WordMap,
};
pub use subgroup::Subgroup;
pub use table::{cyclic_table, dihedral_table, generator_labels, product_table, symmetric3_table, FiniteTable};
pub use word::{Letter, Word};

use crate::error::{Error, Result};

/// Default cap on the order of a group enumerated from a presentation.
pub const DEFAULT_ENUMERATION_CAP: usize = 5000;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Free(usize),
    FreeAbelian(usize),
    FiniteTable(Arc<FiniteTable>),
    /// Integer Heisenberg group with generators `x, y, z` and `z = x⁻¹y⁻¹xy` central.
    Heisenberg3,
    Product(Group, Group),
    Presentation { generators: usize, relators: Vec<Word> },
}

/// An immutable, cheaply clonable group handle.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    inner: Arc<GroupData>,
}

#[derive(Debug, PartialEq)]
struct GroupData {
    family: Family,
    names: Vec<String>,
    /// Multiplication table of a product of finite groups, generators in factor order.
    product_table: Option<Arc<FiniteTable>>,
}

impl Group {
    fn build(family: Family, names: Vec<String>) -> Result<Self> {
        let count = match &family {
            Family::Free(k) | Family::FreeAbelian(k) => *k,
            Family::FiniteTable(t) => t.generators().len(),
            Family::Heisenberg3 => 3,
            Family::Product(a, b) => a.generator_count() + b.generator_count(),
            Family::Presentation { generators, relators } => {
                if let Some(r) = relators.iter().find(|r| r.max_generator().is_some_and(|g| g >= *generators)) {
                    return Err(Error::InvalidGroup(format!("relator `{}` uses an undeclared generator", r.render(&names))));
                }
                *generators
            }
        };
        if names.len() != count {
            return Err(Error::InvalidGroup(format!("{} generator names for {count} generators", names.len())));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidGroup("duplicate generator names".into()));
        }
        let product_table = match &family {
            Family::Product(a, b) => match (a.table(), b.table()) {
                (Some(ta), Some(tb)) => Some(Arc::new(product_table(ta, tb))),
                _ => None,
            },
            _ => None,
        };
        Ok(Group { inner: Arc::new(GroupData { family, names, product_table }) })
    }

    pub fn free(k: usize) -> Self {
        Self::build(Family::Free(k), default_names(k)).expect("valid")
    }

    pub fn free_abelian(k: usize) -> Self {
        Self::build(Family::FreeAbelian(k), default_names(k)).expect("valid")
    }

    pub fn trivial() -> Self {
        Self::free_abelian(0)
    }

    pub fn heisenberg() -> Self {
        Self::build(Family::Heisenberg3, vec!["x".into(), "y".into(), "z".into()]).expect("valid")
    }

    pub fn finite(table: FiniteTable) -> Self {
        let names = table.generators().iter().map(|&g| table.element_names()[g].clone()).collect::<Vec<_>>();
        let names = if distinct(&names) { names } else { generator_labels(table.generators().len()) };
        Self::build(Family::FiniteTable(Arc::new(table)), names).expect("valid")
    }

    pub fn product(a: Group, b: Group) -> Self {
        let mut names: Vec<String> = a.names().to_vec();
        names.extend(b.names().iter().cloned());
        if !distinct(&names) {
            names = a.names().iter().map(|n| format!("{n}.1")).chain(b.names().iter().map(|n| format!("{n}.2"))).collect();
        }
        Self::build(Family::Product(a, b), names).expect("valid")
    }

    pub fn presentation(generators: usize, relators: Vec<Word>) -> Result<Self> {
        Self::build(Family::Presentation { generators, relators }, default_names(generators))
    }

    /// Replaces the generator names.
    pub fn with_names(&self, names: Vec<String>) -> Result<Self> {
        Self::build(self.inner.family.clone(), names)
    }

    pub fn family(&self) -> &Family {
        &self.inner.family
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn generator_count(&self) -> usize {
        self.inner.names.len()
    }

    pub fn generator(&self, i: usize) -> Word {
        Word::generator(i)
    }

    pub fn generators(&self) -> Vec<Word> {
        (0..self.generator_count()).map(Word::generator).collect()
    }

    pub fn family_name(&self) -> String {
        match self.family() {
            Family::Free(k) => format!("Free({k})"),
            Family::FreeAbelian(k) => format!("FreeAbelian({k})"),
            Family::FiniteTable(t) => format!("FiniteTable(order {})", t.order()),
            Family::Heisenberg3 => "Heisenberg3".into(),
            Family::Product(a, b) => format!("Product({}, {})", a.family_name(), b.family_name()),
            Family::Presentation { .. } => "Presentation".into(),
        }
    }

    pub fn table(&self) -> Option<&FiniteTable> {
        match self.family() {
            Family::FiniteTable(t) => Some(t),
            Family::Product(..) => self.inner.product_table.as_deref(),
            _ => None,
        }
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(self.names())
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        Word::parse(s, self.names())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.generator_count() => {
                Err(Error::InvalidWord(format!("generator index {g} out of range for {}", self.family_name())))
            }
            _ => Ok(()),
        }
    }

    pub fn has_normal_form(&self) -> bool {
        match self.family() {
            Family::Presentation { .. } => false,
            Family::Product(a, b) => a.has_normal_form() && b.has_normal_form(),
            _ => true,
        }
    }

    /// Canonical representative of the element `w`.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        self.check_word(w)?;
        match self.family() {
            Family::Free(_) => Ok(w.clone()),
            Family::FreeAbelian(k) => Ok(Word::from_letters((0..*k).map(|g| (g, w.exponent_sum(g))))),
            Family::FiniteTable(t) => Ok(t.word_of(t.evaluate(w)?).clone()),
            Family::Heisenberg3 => {
                let (a, b, c) = heisenberg_coordinates(w);
                Ok(Word::from_letters([(0, a), (1, b), (2, c)]))
            }
            Family::Product(ga, gb) => {
                let (u, v) = self.split_product_word(w);
                let shift = ga.generator_count();
                Ok(ga.normal_form(&u)?.mul(&gb.normal_form(&v)?.map_generators(|g| g + shift)))
            }
            Family::Presentation { .. } => Err(Error::UnsupportedFamily(
                "normal form of a generic presentation (enumerate it to a finite table first)".into(),
            )),
        }
    }

    /// Splits a word in a product group into its two factor words.
    pub fn split_product_word(&self, w: &Word) -> (Word, Word) {
        match self.family() {
            Family::Product(ga, _) => {
                let k = ga.generator_count();
                let u = Word::from_letters(w.letters().iter().filter(|l| l.generator < k).map(|l| (l.generator, l.exponent)));
                let v = Word::from_letters(w.letters().iter().filter(|l| l.generator >= k).map(|l| (l.generator - k, l.exponent)));
                (u, v)
            }
            _ => (w.clone(), Word::identity()),
        }
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word> {
        self.normal_form(&u.mul(v))
    }

    pub fn invert(&self, w: &Word) -> Result<Word> {
        self.normal_form(&w.inverse())
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        Ok(self.normal_form(w)?.is_identity())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        self.is_identity(&u.mul(&v.inverse()))
    }

    pub fn commute(&self, u: &Word, v: &Word) -> Result<bool> {
        self.is_identity(&Word::commutator(u, v))
    }

    /// Order of the group if it is known to be finite.
    pub fn order(&self) -> Option<usize> {
        match self.family() {
            Family::FiniteTable(t) => Some(t.order()),
            Family::FreeAbelian(0) | Family::Free(0) => Some(1),
            Family::Product(a, b) => Some(a.order()? * b.order()?),
            _ => None,
        }
    }

    pub fn is_abelian(&self) -> Option<bool> {
        match self.family() {
            Family::FreeAbelian(_) => Some(true),
            Family::Free(k) => Some(*k <= 1),
            Family::FiniteTable(t) => Some(t.is_abelian()),
            Family::Heisenberg3 => Some(false),
            Family::Product(a, b) => Some(a.is_abelian()? && b.is_abelian()?),
            Family::Presentation { .. } => None,
        }
    }

    /// No nontrivial element of finite order.
    pub fn is_torsion_free(&self) -> Option<bool> {
        match self.family() {
            Family::Free(_) | Family::FreeAbelian(_) | Family::Heisenberg3 => Some(true),
            Family::FiniteTable(t) => Some(t.order() == 1),
            Family::Product(a, b) => Some(a.is_torsion_free()? && b.is_torsion_free()?),
            Family::Presentation { .. } => None,
        }
    }

    /// Defining relators on the generators.
    pub fn relators(&self) -> Vec<Word> {
        match self.family() {
            Family::Free(_) => vec![],
            Family::FreeAbelian(k) => {
                let mut out = Vec::new();
                for i in 0..*k {
                    for j in i + 1..*k {
                        out.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
                    }
                }
                out
            }
            Family::FiniteTable(t) => t.relators(),
            Family::Heisenberg3 => {
                let (x, y, z) = (Word::generator(0), Word::generator(1), Word::generator(2));
                vec![z.inverse().mul(&Word::commutator(&x, &y)), Word::commutator(&x, &z), Word::commutator(&y, &z)]
            }
            Family::Product(a, b) => {
                let k = a.generator_count();
                let mut out = a.relators();
                out.extend(b.relators().into_iter().map(|r| r.map_generators(|g| g + k)));
                for i in 0..k {
                    for j in 0..b.generator_count() {
                        out.push(Word::commutator(&Word::generator(i), &Word::generator(k + j)));
                    }
                }
                out
            }
            Family::Presentation { relators, .. } => relators.clone(),
        }
    }

    /// Every element of a finite group as its normal-form word, in table order.
    pub fn elements(&self) -> Result<Vec<Word>> {
        match self.family() {
            Family::FiniteTable(t) => Ok((0..t.order()).map(|a| t.word_of(a).clone()).collect()),
            Family::FreeAbelian(0) | Family::Free(0) => Ok(vec![Word::identity()]),
            Family::Product(a, b) => {
                let k = a.generator_count();
                let ea = a.elements()?;
                let eb = b.elements()?;
                Ok(ea.iter().flat_map(|u| eb.iter().map(move |v| u.mul(&v.map_generators(|g| g + k)))).collect())
            }
            _ => Err(Error::UnsupportedFamily(format!("element listing of {}", self.family_name()))),
        }
    }
}

fn default_names(k: usize) -> Vec<String> {
    const LETTERS: &[&str] = &["a", "b", "c", "d", "f", "h", "i", "j", "k", "l", "m", "n", "o", "p", "q", "r", "s", "t", "u", "v", "w"];
    if k <= LETTERS.len() {
        LETTERS[..k].iter().map(|s| s.to_string()).collect()
    } else {
        generator_labels(k)
    }
}

fn distinct(names: &[String]) -> bool {
    let mut s = names.to_vec();
    s.sort();
    s.dedup();
    s.len() == names.len() && names.iter().all(|n| !n.is_empty() && !n.contains(char::is_whitespace))
}

/// Coordinates `(a, b, c)` of a Heisenberg element written `x^a y^b z^c`.
///
/// With `(a,b,c)·(a',b',c') = (a+a', b+b', c+c' − a'·b)`, obtained from
/// `y^b x^{a'} = x^{a'} y^b z^{−a'b}`.
pub fn heisenberg_coordinates(w: &Word) -> (i64, i64, i64) {
    let (mut a, mut b, mut c) = (0i64, 0i64, 0i64);
    for l in w.letters() {
        let e = l.exponent;
        match l.generator {
            0 => {
                a += e;
                c -= e * b;
            }
            1 => b += e,
            _ => c += e,
        }
    }
    (a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Upper unitriangular model: x = E + e₁₂, y = E + e₂₃, z = x⁻¹y⁻¹xy.
    type M3 = [[i64; 3]; 3];

    fn mm(p: &M3, q: &M3) -> M3 {
        let mut r = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = (0..3).map(|k| p[i][k] * q[k][j]).sum();
            }
        }
        r
    }

    fn uni(a: i64, b: i64, c: i64) -> M3 {
        [[1, a, c], [0, 1, b], [0, 0, 1]]
    }

    fn inv(p: &M3) -> M3 {
        let (a, b, c) = (p[0][1], p[1][2], p[0][2]);
        uni(-a, -b, a * b - c)
    }

    fn matrix_of(w: &Word) -> M3 {
        let x = uni(1, 0, 0);
        let y = uni(0, 1, 0);
        let z = mm(&mm(&inv(&x), &inv(&y)), &mm(&x, &y));
        let mut acc = uni(0, 0, 0);
        for (g, e) in w.unit_letters() {
            let m = [x, y, z][g];
            acc = mm(&acc, &if e > 0 { m } else { inv(&m) });
        }
        acc
    }

    #[test]
    fn heisenberg_normal_form_matches_matrix_model() {
        let h = Group::heisenberg();
        let yx = h.parse_word("y x").unwrap();
        assert_eq!(h.normal_form(&yx).unwrap(), h.parse_word("x y z^-1").unwrap());
        let samples = ["x^2 y^-1 x z y^3", "y^-2 x^-3 z^2 y x", "z x y x^-1 y^-1", "x y x^-1 y^-1 z"];
        for s in samples {
            let w = h.parse_word(s).unwrap();
            let nf = h.normal_form(&w).unwrap();
            assert_eq!(matrix_of(&w), matrix_of(&nf), "{s}");
        }
        for r in h.relators() {
            assert_eq!(matrix_of(&r), uni(0, 0, 0));
            assert!(h.is_identity(&r).unwrap());
        }
    }

    #[test]
    fn free_and_free_abelian_normal_forms() {
        let f = Group::free(2);
        assert_eq!(f.normal_form(&f.parse_word("a a^-1 b").unwrap()).unwrap(), f.parse_word("b").unwrap());
        let z2 = Group::free_abelian(2);
        assert_eq!(z2.normal_form(&z2.parse_word("b a").unwrap()).unwrap(), z2.parse_word("a b").unwrap());
        assert!(f.normal_form(&Word::generator(2)).is_err());
    }

    #[test]
    fn presentation_has_no_normal_form() {
        let p = Group::presentation(1, vec![Word::power_of(0, 3)]).unwrap();
        assert!(matches!(p.normal_form(&Word::generator(0)), Err(Error::UnsupportedFamily(_))));
        assert!(Group::presentation(1, vec![Word::generator(1)]).is_err());
    }

    #[test]
    fn product_indexing_and_relators() {
        let g = Group::product(Group::finite(cyclic_table(2)), Group::free_abelian(1));
        assert_eq!(g.generator_count(), 2);
        let w = Word::from_letters([(1, 1), (0, 3), (1, 1)]);
        assert_eq!(g.normal_form(&w).unwrap(), Word::from_letters([(0, 1), (1, 2)]));
        for r in g.relators() {
            assert!(g.is_identity(&r).unwrap());
        }
    }
}
