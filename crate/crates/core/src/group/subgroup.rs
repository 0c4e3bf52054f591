use crate::error::{Error, Result};
use crate::group::free::StallingsGraph;
use crate::group::integer::integer_solve;
use crate::group::word::Word;
use crate::group::{heisenberg_coordinates, Family, Group};

/// A subgroup given by generator words in its ambient group. Generators are
/// stored in normal form (when the family has one) with identities removed.
#[derive(Clone, Debug, PartialEq)]
pub struct Subgroup {
    ambient: Group,
    generators: Vec<Word>,
    label: String,
}

impl Subgroup {
    pub fn new(ambient: &Group, generators: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for w in generators {
            ambient.check_word(&w)?;
            let w = if ambient.has_normal_form() { ambient.normal_form(&w)? } else { w };
            if !w.is_identity() {
                gens.push(w);
            }
        }
        Ok(Subgroup { ambient: ambient.clone(), generators: gens, label: label.into() })
    }

    pub fn trivial(ambient: &Group) -> Self {
        Subgroup { ambient: ambient.clone(), generators: vec![], label: "1".into() }
    }

    pub fn whole(ambient: &Group) -> Self {
        Self::new(ambient, ambient.generators(), "G").expect("generators are valid words")
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn render(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|w| self.ambient.render(w)).collect();
        format!("⟨{}⟩", gens.join(", "))
    }

    /// Sorted element indices of a subgroup of a finite table group.
    pub fn elements(&self) -> Result<Vec<usize>> {
        let t = self
            .ambient
            .table()
            .ok_or_else(|| Error::UnsupportedFamily(format!("element enumeration in {}", self.ambient.family_name())))?;
        let gens = self.generators.iter().map(|w| t.evaluate(w)).collect::<Result<Vec<_>>>()?;
        Ok(t.closure(&gens))
    }

    /// Contains every generator of the ambient group.
    pub fn is_whole(&self) -> Result<bool> {
        if let Family::Heisenberg3 = self.ambient.family() {
            // ⟨x, y⟩ already contains z = [x, y].
            return Ok(self.contains(&Word::generator(0))? && self.contains(&Word::generator(1))?);
        }
        for g in self.ambient.generators() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        self.ambient.check_word(w)?;
        let unsupported = || Error::UnsupportedFamily(format!("subgroup membership in {}", self.ambient.family_name()));
        if self.ambient.has_normal_form() && self.ambient.is_identity(w)? {
            return Ok(true);
        }
        match self.ambient.family() {
            Family::FiniteTable(t) => Ok(self.elements()?.binary_search(&t.evaluate(w)?).is_ok()),
            Family::Free(k) => Ok(StallingsGraph::build(*k, &self.generators).rewrite(w).is_some()),
            Family::FreeAbelian(k) => {
                let cols = self.generators.len();
                let a: Vec<Vec<i128>> = (0..*k)
                    .map(|g| self.generators.iter().map(|h| i128::from(h.exponent_sum(g))).collect())
                    .collect();
                let t: Vec<i128> = (0..*k).map(|g| i128::from(w.exponent_sum(g))).collect();
                Ok(integer_solve(&a, cols, &t).is_some())
            }
            Family::Heisenberg3 => {
                let coords: Vec<(i64, i64, i64)> = self.generators.iter().map(heisenberg_coordinates).collect();
                let (a, b, c) = heisenberg_coordinates(w);
                if coords.iter().all(|&(p, q, _)| p == 0 && q == 0) {
                    let lattice = vec![coords.iter().map(|&(_, _, r)| i128::from(r)).collect::<Vec<_>>()];
                    return Ok(a == 0 && b == 0 && integer_solve(&lattice, coords.len(), &[i128::from(c)]).is_some());
                }
                let has = |target: (i64, i64, i64)| coords.contains(&target);
                if has((1, 0, 0)) && has((0, 1, 0)) {
                    return Ok(true);
                }
                Err(unsupported())
            }
            Family::Product(ga, gb) => {
                let mut first = Vec::new();
                let mut second = Vec::new();
                for h in &self.generators {
                    let (u, v) = self.ambient.split_product_word(h);
                    match (u.is_identity(), v.is_identity()) {
                        (_, true) => first.push(u),
                        (true, false) => second.push(v),
                        _ => return Err(unsupported()),
                    }
                }
                let (u, v) = self.ambient.split_product_word(w);
                Ok(Subgroup::new(ga, first, "")?.contains(&u)? && Subgroup::new(gb, second, "")?.contains(&v)?)
            }
            Family::Presentation { .. } => Err(unsupported()),
        }
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Subgroup) -> Result<bool> {
        Ok(self.contains_subgroup(other)? && other.contains_subgroup(self)?)
    }

    /// Closed under conjugation by the ambient generators and their inverses.
    pub fn is_normal(&self) -> Result<bool> {
        if self.ambient.is_abelian() == Some(true) || self.is_trivial() {
            return Ok(true);
        }
        if let Family::Heisenberg3 = self.ambient.family() {
            // Subgroups containing the center or lying in it are normal; the
            // remaining cases go through membership.
            let central = self.generators.iter().all(|h| {
                let (a, b, _) = heisenberg_coordinates(h);
                a == 0 && b == 0
            });
            if central {
                return Ok(true);
            }
        }
        for s in self.ambient.generators() {
            for h in &self.generators {
                for conj in [s.inverse().mul(h).mul(&s), s.mul(h).mul(&s.inverse())] {
                    if !self.contains(&conj)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}
