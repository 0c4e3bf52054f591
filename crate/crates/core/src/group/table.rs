use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::word::Word;

/// A finite group given by its multiplication table, with a chosen list of
/// generating elements. `mul[a][b]` is the index of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    element_names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    /// Canonical word of each element: first word reached by breadth-first
    /// search over the letters `s₁, s₁⁻¹, s₂, s₂⁻¹, …`.
    words: Vec<Word>,
    /// Relators of a presentation this table was enumerated from, if any.
    presentation: Option<Vec<Word>>,
}

impl FiniteTable {
    /// Validates the table (closure, associativity, identity, inverses) and the
    /// generator list. With `generators = None` a generating set is chosen greedily.
    pub fn new(element_names: Vec<String>, mul: Vec<Vec<usize>>, generators: Option<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if element_names.len() != n {
            return Err(Error::InvalidGroup(format!("{} element names for a table of order {n}", element_names.len())));
        }
        if mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("multiplication table is not closed".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element `{}` has no inverse", element_names[a])))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails for ({}, {}, {})",
                            element_names[a], element_names[b], element_names[c]
                        )));
                    }
                }
            }
        }
        let generators = match generators {
            Some(g) => {
                if g.iter().any(|&x| x >= n) {
                    return Err(Error::InvalidGroup("generator index out of range".into()));
                }
                g
            }
            None => greedy_generators(&mul, identity),
        };
        Self::from_parts(element_names, mul, identity, inverse, generators, None)
    }

    /// Builds a table known to satisfy the group axioms (skips the cubic associativity check).
    pub(crate) fn trusted(mul: Vec<Vec<usize>>, identity: usize, generators: Vec<usize>, presentation: Option<Vec<Word>>) -> Result<Self> {
        let n = mul.len();
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| mul[a][b] == identity).expect("group table has inverses");
        }
        let mut t = Self::from_parts(vec![String::new(); n], mul, identity, inverse, generators, presentation)?;
        t.label_elements(&generator_labels(t.generators.len()));
        Ok(t)
    }

    fn from_parts(
        element_names: Vec<String>,
        mul: Vec<Vec<usize>>,
        identity: usize,
        inverse: Vec<usize>,
        generators: Vec<usize>,
        presentation: Option<Vec<Word>>,
    ) -> Result<Self> {
        let n = mul.len();
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[identity] = Some(Word::identity());
        let mut queue = VecDeque::from([identity]);
        while let Some(a) = queue.pop_front() {
            let wa = words[a].clone().expect("visited");
            for (i, &s) in generators.iter().enumerate() {
                for (target, exp) in [(mul[a][s], 1), (mul[a][inverse[s]], -1)] {
                    if words[target].is_none() {
                        words[target] = Some(wa.mul(&Word::power_of(i, exp)));
                        queue.push_back(target);
                    }
                }
            }
        }
        let words: Vec<Word> = words
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidGroup("generators do not generate the table".into()))?;
        Ok(FiniteTable { element_names, mul, identity, inverse, generators, words, presentation })
    }

    /// Names every element by its canonical word in the given generator names.
    pub(crate) fn label_elements(&mut self, generator_names: &[String]) {
        self.element_names = self.words.iter().map(|w| w.render(generator_names)).collect();
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.element_names.iter().position(|n| n == name)
    }

    pub fn word_of(&self, a: usize) -> &Word {
        &self.words[a]
    }

    pub fn presentation(&self) -> Option<&[Word]> {
        self.presentation.as_deref()
    }

    /// Element represented by a word in the generators.
    pub fn evaluate(&self, w: &Word) -> Result<usize> {
        let mut acc = self.identity;
        for l in w.letters() {
            let s = *self
                .generators
                .get(l.generator)
                .ok_or_else(|| Error::InvalidWord(format!("generator index {} out of range", l.generator)))?;
            let s = if l.exponent < 0 { self.inverse[s] } else { s };
            for _ in 0..l.exponent.unsigned_abs() {
                acc = self.mul[acc][s];
            }
        }
        Ok(acc)
    }

    pub fn power(&self, a: usize, n: i64) -> usize {
        let base = if n < 0 { self.inverse[a] } else { a };
        (0..n.unsigned_abs()).fold(self.identity, |acc, _| self.mul[acc][base])
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ai = self.inverse[a];
        let bi = self.inverse[b];
        self.mul[self.mul[ai][bi]][self.mul[a][b]]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Subgroup generated by `elements`, as a sorted element list.
    pub fn closure(&self, elements: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &s in elements {
                let b = self.mul[a][s];
                if seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Relators read off the Cayley graph: `w_g · s · w_{gs}⁻¹` for every
    /// element `g` and generator `s` (trivial ones dropped). Together they
    /// present the group on the chosen generators.
    pub fn cayley_relators(&self) -> Vec<Word> {
        let mut out = BTreeSet::new();
        for g in 0..self.order() {
            for (i, &s) in self.generators.iter().enumerate() {
                let r = self.words[g].mul(&Word::generator(i)).mul(&self.words[self.mul[g][s]].inverse());
                if !r.is_identity() {
                    out.insert(r);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn relators(&self) -> Vec<Word> {
        match &self.presentation {
            Some(r) => r.clone(),
            None => self.cayley_relators(),
        }
    }

    /// Table of the subgroup on the given (closed) element list, generated by `generators`
    /// (elements of `self`). The new element `i` corresponds to `elements[i]`.
    pub fn restrict(&self, elements: &[usize], generators: &[usize]) -> Result<FiniteTable> {
        let index = |a: usize| elements.binary_search(&a).map_err(|_| Error::InvalidGroup("element list is not closed".into()));
        let mut mul = Vec::with_capacity(elements.len());
        for &a in elements {
            mul.push(elements.iter().map(|&b| index(self.mul[a][b])).collect::<Result<Vec<_>>>()?);
        }
        let gens = generators.iter().map(|&g| index(g)).collect::<Result<Vec<_>>>()?;
        let mut t = Self::trusted(mul, index(self.identity)?, gens, None)?;
        t.element_names = elements.iter().map(|&a| self.element_names[a].clone()).collect();
        Ok(t)
    }
}

fn greedy_generators(mul: &[Vec<usize>], identity: usize) -> Vec<usize> {
    let n = mul.len();
    let mut gens = Vec::new();
    let mut covered = vec![false; n];
    covered[identity] = true;
    for a in 0..n {
        if covered[a] {
            continue;
        }
        gens.push(a);
        let mut queue = VecDeque::from([identity]);
        let mut seen = vec![false; n];
        seen[identity] = true;
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = mul[x][s];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        covered = seen;
    }
    gens
}

/// Default generator names `g0, g1, …`.
pub fn generator_labels(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("g{i}")).collect()
}

/// Cyclic group `ℤ/n` with elements `e, g, g^2, …` generated by `g`.
pub fn cyclic_table(n: usize) -> FiniteTable {
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteTable::new(names, mul, Some(if n > 1 { vec![1] } else { vec![] })).expect("cyclic table is valid")
}

/// Direct product with elements `(a, b)` at index `a·|B| + b`, generated by
/// the generators of `a` followed by those of `b`.
pub fn product_table(a: &FiniteTable, b: &FiniteTable) -> FiniteTable {
    let (na, nb) = (a.order(), b.order());
    let names = (0..na * nb).map(|i| format!("({},{})", a.element_names[i / nb], b.element_names[i % nb])).collect();
    let mul = (0..na * nb)
        .map(|x| (0..na * nb).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
        .collect();
    let mut gens: Vec<usize> = a.generators.iter().map(|&g| g * nb + b.identity).collect();
    gens.extend(b.generators.iter().map(|&g| a.identity * nb + g));
    FiniteTable::new(names, mul, Some(gens)).expect("product of valid tables")
}

/// Dihedral group of order `2n`: `r^i s^j` at index `2i + j`, generated by `r, s`.
pub fn dihedral_table(n: usize) -> FiniteTable {
    let names = (0..2 * n).map(|x| format!("r{}{}", x / 2, if x % 2 == 1 { "s" } else { "" })).collect();
    // (r^i s^j)(r^k s^l) = r^{i ± k} s^{j+l}
    let mul = (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let (i, j, k, l) = (x / 2, x % 2, y / 2, y % 2);
                    let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                    2 * rot + (j + l) % 2
                })
                .collect()
        })
        .collect();
    FiniteTable::new(names, mul, Some(vec![2 % (2 * n), 1])).expect("dihedral table is valid")
}

/// Symmetric group `S₃` on permutations of `{0,1,2}`, generated by the
/// transpositions `(0 1)` and `(1 2)`.
pub fn symmetric3_table() -> FiniteTable {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let names = vec!["e", "(01)", "(12)", "(012)", "(021)", "(02)"].into_iter().map(String::from).collect();
    // (p·q)(i) = p(q(i)): apply q first.
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let mul = perms
        .iter()
        .map(|p| perms.iter().map(|q| perms.iter().position(|r| *r == compose(p, q)).unwrap()).collect())
        .collect();
    FiniteTable::new(names, mul, Some(vec![1, 2])).expect("S3 table is valid")
}
