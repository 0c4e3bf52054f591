//! Centers, commutator series, quotients and subgroups viewed as groups.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::free::StallingsGraph;
use crate::group::integer::integer_kernel;
use crate::group::measure::FiniteSupportMeasure;
use crate::group::subgroup::Subgroup;
use crate::group::table::{cyclic_table, FiniteTable};
use crate::group::word::Word;
use crate::group::{heisenberg_coordinates, Family, Group};

/// A homomorphism given by the image of each source generator.
#[derive(Clone, Debug, PartialEq)]
pub struct WordMap {
    pub source: Group,
    pub target: Group,
    pub images: Vec<Word>,
}

impl WordMap {
    pub fn identity(g: &Group) -> Self {
        WordMap { source: g.clone(), target: g.clone(), images: g.generators() }
    }

    /// Image of `w`, in normal form when the target has one.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.source.check_word(w)?;
        let raw = w.substitute(&self.images);
        if self.target.has_normal_form() {
            self.target.normal_form(&raw)
        } else {
            Ok(raw)
        }
    }
}

/// `G/N` with the projection and a lift of each quotient generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient {
    pub group: Group,
    pub projection: WordMap,
    pub lifts: Vec<Word>,
}

/// A subgroup presented as a group in its own right: generator `i` of
/// `group` is the subgroup generator `inclusion[i]` of the ambient group.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupGroup {
    pub group: Group,
    pub inclusion: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerCentralSeries {
    /// `γ₀ = G ⊇ γ₁ = [G, G] ⊇ …`, ending at the first repeated term.
    pub terms: Vec<Subgroup>,
    /// The series reaches the trivial subgroup.
    pub nilpotent: bool,
}

fn unsupported(op: &str, g: &Group) -> Error {
    Error::UnsupportedFamily(format!("{op} of {}", g.family_name()))
}

/// Canonical words of a generating set for a closed element set of a table
/// (greedy in element order).
fn table_generators(t: &FiniteTable, elements: &[usize]) -> Vec<Word> {
    let mut gens: Vec<usize> = Vec::new();
    let mut covered: BTreeSet<usize> = BTreeSet::from([t.identity()]);
    for &a in elements {
        if !covered.contains(&a) {
            gens.push(a);
            covered = t.closure(&gens).into_iter().collect();
        }
    }
    gens.into_iter().map(|a| t.word_of(a).clone()).collect()
}

fn shift_subgroup(s: &Subgroup, shift: usize) -> Vec<Word> {
    s.generators().iter().map(|w| w.map_generators(|g| g + shift)).collect()
}

pub fn center(g: &Group) -> Result<Subgroup> {
    let gens = match g.family() {
        Family::FreeAbelian(_) => g.generators(),
        Family::Free(k) => {
            if *k <= 1 {
                g.generators()
            } else {
                vec![]
            }
        }
        Family::Heisenberg3 => vec![Word::generator(2)],
        Family::FiniteTable(t) => {
            let n = t.order();
            let central: Vec<usize> = (0..n).filter(|&a| (0..n).all(|b| t.mul(a, b) == t.mul(b, a))).collect();
            table_generators(t, &central)
        }
        Family::Product(a, b) => {
            let k = a.generator_count();
            let mut gens = center(a)?.generators().to_vec();
            gens.extend(shift_subgroup(&center(b)?, k));
            gens
        }
        Family::Presentation { .. } => return Err(unsupported("center", g)),
    };
    Subgroup::new(g, gens, "Z(G)")
}

pub fn lower_central_series(g: &Group) -> Result<LowerCentralSeries> {
    let whole = Subgroup::whole(g).with_label("γ0");
    let trivial = Subgroup::trivial(g);
    let abelian_series = |whole: Subgroup| {
        if whole.is_trivial() {
            LowerCentralSeries { terms: vec![whole], nilpotent: true }
        } else {
            LowerCentralSeries { terms: vec![whole, trivial.clone().with_label("γ1")], nilpotent: true }
        }
    };
    match g.family() {
        Family::FreeAbelian(_) => Ok(abelian_series(whole)),
        Family::Free(k) if *k <= 1 => Ok(abelian_series(whole)),
        Family::Heisenberg3 => Ok(LowerCentralSeries {
            terms: vec![whole, Subgroup::new(g, vec![Word::generator(2)], "γ1")?, trivial.with_label("γ2")],
            nilpotent: true,
        }),
        Family::FiniteTable(t) => {
            let n = t.order();
            let mut current: Vec<usize> = (0..n).collect();
            let mut terms = vec![whole];
            loop {
                let comms: Vec<usize> = (0..n)
                    .flat_map(|x| current.iter().map(move |&y| (x, y)))
                    .map(|(x, y)| t.commutator(x, y))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let next = t.closure(&comms);
                if next == current {
                    break;
                }
                let label = format!("γ{}", terms.len());
                terms.push(Subgroup::new(g, table_generators(t, &next), label)?);
                current = next;
                if current.len() == 1 {
                    break;
                }
            }
            Ok(LowerCentralSeries { terms, nilpotent: current.len() == 1 })
        }
        Family::Product(a, b) => {
            let sa = lower_central_series(a)?;
            let sb = lower_central_series(b)?;
            let k = a.generator_count();
            let len = sa.terms.len().max(sb.terms.len());
            let mut terms = Vec::with_capacity(len);
            for i in 0..len {
                let ta = sa.terms.get(i).or(sa.terms.last()).expect("nonempty series");
                let tb = sb.terms.get(i).or(sb.terms.last()).expect("nonempty series");
                let mut gens = ta.generators().to_vec();
                gens.extend(shift_subgroup(tb, k));
                terms.push(Subgroup::new(g, gens, format!("γ{i}"))?);
            }
            Ok(LowerCentralSeries { terms, nilpotent: sa.nilpotent && sb.nilpotent })
        }
        _ => Err(unsupported("lower central series", g)),
    }
}

/// Every generator of `c` commutes with every generator of `n`.
pub fn centralizer_contains(g: &Group, c: &Subgroup, n: &Subgroup) -> Result<bool> {
    if !g.has_normal_form() {
        return Err(unsupported("commutation test", g));
    }
    for u in c.generators() {
        for v in n.generators() {
            if !g.commute(u, v)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The subgroup generated by the support of `μ`.
pub fn support_subgroup(mu: &FiniteSupportMeasure) -> Result<Subgroup> {
    Subgroup::new(mu.ambient(), mu.support(), "G_μ")
}

fn table_quotient(g: &Group, t: &FiniteTable, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal()? {
        return Err(Error::PreconditionFailed(format!("{} is not normal", n.render())));
    }
    let members = n.elements()?;
    let order = t.order();
    // Coset of a = {a·m}; represent it by its smallest element.
    let rep_of: Vec<usize> = (0..order).map(|a| members.iter().map(|&m| t.mul(a, m)).min().expect("nonempty")).collect();
    let reps: Vec<usize> = rep_of.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index = |a: usize| reps.binary_search(&rep_of[a]).expect("coset representative");
    let mul: Vec<Vec<usize>> = reps.iter().map(|&a| reps.iter().map(|&b| index(t.mul(a, b))).collect()).collect();
    let generators: Vec<usize> = t.generators().iter().map(|&s| index(s)).collect();
    let mut table = FiniteTable::trusted(mul, index(t.identity()), generators, None)?;
    table.label_elements(g.names());
    let group = Group::finite(table).with_names(g.names().to_vec())?;
    Ok(Quotient { projection: WordMap { source: g.clone(), target: group.clone(), images: g.generators() }, lifts: g.generators(), group })
}

/// `G/N` for the supported cases: normal subgroups of finite tables,
/// Heisenberg modulo its center, free abelian groups modulo a set of basis
/// generators, the whole group, and factorwise quotients of products.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<Quotient> {
    if n.is_trivial() {
        return Ok(Quotient { group: g.clone(), projection: WordMap::identity(g), lifts: g.generators() });
    }
    if let Family::FiniteTable(t) = g.family() {
        return table_quotient(g, t, n);
    }
    if n.is_whole()? {
        let triv = Group::trivial();
        return Ok(Quotient {
            projection: WordMap { source: g.clone(), target: triv.clone(), images: vec![Word::identity(); g.generator_count()] },
            group: triv,
            lifts: vec![],
        });
    }
    match g.family() {
        Family::Heisenberg3 => {
            let center = Subgroup::new(g, vec![Word::generator(2)], "")?;
            if !n.same_as(&center)? {
                return Err(unsupported("quotient by a non-central subgroup", g));
            }
            let target = Group::free_abelian(2).with_names(vec!["x".into(), "y".into()])?;
            Ok(Quotient {
                projection: WordMap { source: g.clone(), target: target.clone(), images: vec![Word::generator(0), Word::generator(1), Word::identity()] },
                group: target,
                lifts: vec![Word::generator(0), Word::generator(1)],
            })
        }
        Family::FreeAbelian(k) | Family::Free(k) if g.is_abelian() == Some(true) => {
            let killed: BTreeSet<usize> = n
                .generators()
                .iter()
                .map(|w| match w.letters() {
                    [l] if l.exponent.abs() == 1 => Ok(l.generator),
                    _ => Err(unsupported("quotient by a non-coordinate sublattice", g)),
                })
                .collect::<Result<_>>()?;
            let kept: Vec<usize> = (0..*k).filter(|i| !killed.contains(i)).collect();
            let names: Vec<String> = kept.iter().map(|&i| g.names()[i].clone()).collect();
            let target = Group::free_abelian(kept.len()).with_names(names)?;
            let images = (0..*k)
                .map(|i| kept.iter().position(|&j| j == i).map_or(Word::identity(), Word::generator))
                .collect();
            Ok(Quotient {
                projection: WordMap { source: g.clone(), target: target.clone(), images },
                group: target,
                lifts: kept.iter().map(|&i| Word::generator(i)).collect(),
            })
        }
        Family::Product(a, b) => {
            let (na, nb) = split_subgroup(g, n)?;
            let qa = quotient(a, &na)?;
            let qb = quotient(b, &nb)?;
            let target = Group::product(qa.group.clone(), qb.group.clone());
            let ka = qa.group.generator_count();
            let mut images = qa.projection.images.clone();
            images.extend(qb.projection.images.iter().map(|w| w.map_generators(|i| i + ka)));
            let k = a.generator_count();
            let mut lifts = qa.lifts.clone();
            lifts.extend(qb.lifts.iter().map(|w| w.map_generators(|i| i + k)));
            Ok(Quotient { projection: WordMap { source: g.clone(), target: target.clone(), images }, group: target, lifts })
        }
        _ => Err(unsupported("quotient", g)),
    }
}

/// Splits a subgroup of a product whose generators each lie in one factor.
pub fn split_subgroup(g: &Group, n: &Subgroup) -> Result<(Subgroup, Subgroup)> {
    let Family::Product(a, b) = g.family() else {
        return Err(unsupported("factor splitting", g));
    };
    let mut first = Vec::new();
    let mut second = Vec::new();
    for h in n.generators() {
        let (u, v) = g.split_product_word(h);
        match (u.is_identity(), v.is_identity()) {
            (_, true) => first.push(u),
            (true, false) => second.push(v),
            _ => return Err(unsupported("splitting a non-product subgroup", g)),
        }
    }
    Ok((Subgroup::new(a, first, n.label())?, Subgroup::new(b, second, n.label())?))
}

/// `G → G^{ab}`.
pub fn abelianization_map(g: &Group) -> Result<Quotient> {
    match g.family() {
        Family::Free(k) | Family::FreeAbelian(k) => {
            let target = Group::free_abelian(*k).with_names(g.names().to_vec())?;
            Ok(Quotient { projection: WordMap { source: g.clone(), target: target.clone(), images: g.generators() }, group: target, lifts: g.generators() })
        }
        Family::Heisenberg3 => quotient(g, &Subgroup::new(g, vec![Word::generator(2)], "")?),
        Family::FiniteTable(t) => {
            let n = t.order();
            let comms: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| t.commutator(a, b)).collect();
            let derived = t.closure(&comms);
            let sub = Subgroup::new(g, table_generators(t, &derived), "[G,G]")?;
            quotient(g, &sub)
        }
        Family::Product(a, b) => {
            let qa = abelianization_map(a)?;
            let qb = abelianization_map(b)?;
            let target = Group::product(qa.group.clone(), qb.group.clone());
            let ka = qa.group.generator_count();
            let k = a.generator_count();
            let mut images = qa.projection.images.clone();
            images.extend(qb.projection.images.iter().map(|w| w.map_generators(|i| i + ka)));
            let mut lifts = qa.lifts.clone();
            lifts.extend(qb.lifts.iter().map(|w| w.map_generators(|i| i + k)));
            Ok(Quotient { projection: WordMap { source: g.clone(), target: target.clone(), images }, group: target, lifts })
        }
        Family::Presentation { .. } => Err(unsupported("abelianization", g)),
    }
}

/// Presentation of an abelian subgroup of a torsion-free abelian group from
/// the exponent vectors of its generators.
fn lattice_group(vectors: &[Vec<i64>], dim: usize) -> Result<Group> {
    let m = vectors.len();
    let a: Vec<Vec<i128>> = (0..dim).map(|r| vectors.iter().map(|v| i128::from(v[r])).collect()).collect();
    let kernel = integer_kernel(&a, m);
    if kernel.is_empty() {
        return Ok(Group::free_abelian(m));
    }
    let mut relators = Group::free_abelian(m).relators();
    for v in kernel {
        let exps = v.iter().map(|&x| i64::try_from(x).map_err(|_| Error::InvalidGroup("relation coefficient overflow".into())));
        let letters = exps.enumerate().map(|(i, e)| e.map(|e| (i, e))).collect::<Result<Vec<_>>>()?;
        relators.push(Word::from_letters(letters));
    }
    Group::presentation(m, relators)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The subgroup as a group whose generators are the subgroup's generators
/// (in order), for the cases where a presentation can be produced.
pub fn subgroup_as_group(n: &Subgroup) -> Result<SubgroupGroup> {
    let g = n.ambient();
    let gens = n.generators().to_vec();
    let names: Vec<String> = (0..gens.len()).map(|i| format!("n{i}")).collect();
    let finish = |group: Group| -> Result<SubgroupGroup> {
        let group = group.with_names(names.clone())?;
        Ok(SubgroupGroup { group, inclusion: gens.clone() })
    };
    if gens.is_empty() {
        let group = if g.table().is_some() { Group::finite(cyclic_table(1)) } else { Group::trivial() };
        return Ok(SubgroupGroup { group, inclusion: vec![] });
    }
    if gens == g.generators() {
        return Ok(SubgroupGroup { group: g.clone(), inclusion: gens });
    }
    match g.family() {
        Family::FiniteTable(t) => {
            let elems = n.elements()?;
            let gen_elems = gens.iter().map(|w| t.evaluate(w)).collect::<Result<Vec<_>>>()?;
            let table = t.restrict(&elems, &gen_elems)?;
            finish(Group::finite(table))
        }
        Family::Free(k) => {
            let graph = StallingsGraph::build(*k, &gens);
            if graph.generators_are_free_basis() {
                finish(Group::free(gens.len()))
            } else {
                Err(unsupported("presentation of a subgroup given by a non-basis generating set", g))
            }
        }
        Family::FreeAbelian(k) => {
            let vectors: Vec<Vec<i64>> = gens.iter().map(|w| (0..*k).map(|i| w.exponent_sum(i)).collect()).collect();
            finish(lattice_group(&vectors, *k)?)
        }
        Family::Heisenberg3 => {
            let coords: Vec<(i64, i64, i64)> = gens.iter().map(heisenberg_coordinates).collect();
            if coords.iter().all(|&(a, b, _)| a == 0 && b == 0) {
                let vectors: Vec<Vec<i64>> = coords.iter().map(|&(_, _, c)| vec![c]).collect();
                return finish(lattice_group(&vectors, 1)?);
            }
            if gens.len() == 1 {
                return finish(Group::free(1));
            }
            if coords == [(1, 0, 0), (0, 1, 0)] {
                let (x, y) = (Word::generator(0), Word::generator(1));
                let z = Word::commutator(&x, &y);
                return finish(Group::presentation(2, vec![Word::commutator(&x, &z), Word::commutator(&y, &z)])?);
            }
            if gens.len() == 2 && g.commute(&gens[0], &gens[1])? {
                // Commuting pair: the (a, b) parts are parallel. The primitive
                // relation between them leaves a power of z, and the pair is
                // free abelian of rank two exactly when that power is nonzero.
                let ((a0, b0, _), (a1, b1, _)) = (coords[0], coords[1]);
                let (m, n) = if (a0, b0) == (0, 0) {
                    (1, 0)
                } else {
                    let (p, q) = if a0 != 0 { (a1, a0) } else { (b1, b0) };
                    let d = gcd(p, q);
                    (p / d, -q / d)
                };
                let w = gens[0].pow(m).mul(&gens[1].pow(n));
                if heisenberg_coordinates(&w) != (0, 0, 0) {
                    return finish(Group::free_abelian(2));
                }
            }
            Err(unsupported("presentation of this subgroup", g))
        }
        Family::Product(a, _) => {
            let k = a.generator_count();
            let in_first: Vec<bool> = gens.iter().map(|w| w.max_generator().is_some_and(|m| m < k)).collect();
            let (na, nb) = split_subgroup(g, n)?;
            let pa = subgroup_as_group(&na)?;
            let pb = subgroup_as_group(&nb)?;
            // Position of each factor generator in the combined generator list.
            let mut pos_a = Vec::new();
            let mut pos_b = Vec::new();
            for (i, &f) in in_first.iter().enumerate() {
                if f {
                    pos_a.push(i);
                } else {
                    pos_b.push(i);
                }
            }
            if pos_a.len() != pa.group.generator_count() || pos_b.len() != pb.group.generator_count() {
                return Err(unsupported("presentation of this product subgroup", g));
            }
            if pos_a.iter().chain(&pos_b).copied().eq(0..gens.len()) {
                return finish(Group::product(pa.group, pb.group));
            }
            let mut relators: Vec<Word> = pa.group.relators().iter().map(|r| r.map_generators(|i| pos_a[i])).collect();
            relators.extend(pb.group.relators().iter().map(|r| r.map_generators(|i| pos_b[i])));
            for &i in &pos_a {
                for &j in &pos_b {
                    relators.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
                }
            }
            finish(Group::presentation(gens.len(), relators)?)
        }
        Family::Presentation { .. } => Err(unsupported("subgroup presentation", g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_table, enumerate_finite, symmetric3_table};

    #[test]
    fn centers() {
        let z2 = Group::free_abelian(2);
        assert_eq!(center(&z2).unwrap().generators(), &z2.generators()[..]);
        let h = Group::heisenberg();
        assert_eq!(center(&h).unwrap().generators(), &[Word::generator(2)]);
        let s3 = Group::finite(symmetric3_table());
        assert!(center(&s3).unwrap().is_trivial());
        let c4 = Group::finite(cyclic_table(4));
        assert_eq!(center(&c4).unwrap().elements().unwrap().len(), 4);
    }

    #[test]
    fn commuting_heisenberg_pairs() {
        let h = Group::heisenberg();
        let (x, y, z) = (Word::generator(0), Word::generator(1), Word::generator(2));
        let sub = |gens: Vec<Word>| subgroup_as_group(&Subgroup::new(&h, gens, "N").unwrap());
        assert_eq!(sub(vec![x.clone(), z.clone()]).unwrap().group.family(), &Family::FreeAbelian(2));
        assert_eq!(sub(vec![x.pow(2), x.mul(&z)]).unwrap().group.family(), &Family::FreeAbelian(2));
        let t = x.mul(&y);
        assert!(sub(vec![t.clone(), t.pow(2)]).is_err());
        assert!(sub(vec![x.clone(), x.pow(-3)]).is_err());
    }

    #[test]
    fn heisenberg_center_is_central_in_matrix_model() {
        // z commutes with x and y; x and y do not commute.
        let h = Group::heisenberg();
        let z = Subgroup::new(&h, vec![Word::generator(2)], "").unwrap();
        assert!(centralizer_contains(&h, &z, &Subgroup::whole(&h)).unwrap());
        let x = Subgroup::new(&h, vec![Word::generator(0)], "").unwrap();
        assert!(!centralizer_contains(&h, &x, &Subgroup::whole(&h)).unwrap());
    }

    #[test]
    fn centralizer_examples() {
        let z2 = Group::free_abelian(2);
        let a = Subgroup::new(&z2, vec![Word::generator(0)], "").unwrap();
        let b = Subgroup::new(&z2, vec![Word::generator(1)], "").unwrap();
        assert!(centralizer_contains(&z2, &a, &b).unwrap());
        let f2 = Group::free(2);
        let a = Subgroup::new(&f2, vec![Word::generator(0)], "").unwrap();
        let b = Subgroup::new(&f2, vec![Word::generator(1)], "").unwrap();
        assert!(!centralizer_contains(&f2, &a, &b).unwrap());
    }

    #[test]
    fn lower_central_series_examples() {
        let s = lower_central_series(&Group::free_abelian(3)).unwrap();
        assert_eq!(s.terms.len(), 2);
        assert!(s.terms[1].is_trivial() && s.nilpotent);
        let h = lower_central_series(&Group::heisenberg()).unwrap();
        assert_eq!(h.terms.len(), 3);
        assert_eq!(h.terms[1].generators(), &[Word::generator(2)]);
        let s3 = Group::finite(symmetric3_table());
        let s = lower_central_series(&s3).unwrap();
        assert!(!s.nilpotent);
        assert_eq!(s.terms.last().unwrap().elements().unwrap().len(), 3);
        for w in s.terms.windows(2) {
            assert!(w[0].contains_subgroup(&w[1]).unwrap());
        }
        assert!(lower_central_series(&Group::free(2)).is_err());
    }

    #[test]
    fn lower_central_series_of_dihedral_eight_is_nilpotent() {
        let (r, s) = (Word::generator(0), Word::generator(1));
        let rels = vec![r.pow(4), s.pow(2), s.mul(&r).mul(&s).mul(&r)];
        let d8 = enumerate_finite(&Group::presentation(2, rels).unwrap(), 100).unwrap();
        let series = lower_central_series(&d8).unwrap();
        assert!(series.nilpotent);
        let sizes: Vec<usize> = series.terms.iter().map(|t| t.elements().unwrap().len()).collect();
        assert_eq!(sizes, vec![8, 2, 1]);
        for t in &series.terms {
            assert!(t.is_normal().unwrap());
        }
    }

    #[test]
    fn abelianizations() {
        let q = abelianization_map(&Group::free(2)).unwrap();
        assert_eq!(q.group.family(), &Family::FreeAbelian(2));
        let h = Group::heisenberg();
        let q = abelianization_map(&h).unwrap();
        assert_eq!(q.group.generator_count(), 2);
        assert!(q.projection.apply(&Word::generator(2)).unwrap().is_identity());
        let c4 = Group::finite(cyclic_table(4));
        let q = abelianization_map(&c4).unwrap();
        assert_eq!(q.group.order(), Some(4));
        let s3 = Group::finite(symmetric3_table());
        assert_eq!(abelianization_map(&s3).unwrap().group.order(), Some(2));
    }

    #[test]
    fn quotients_and_projection_homomorphism() {
        let s3 = Group::finite(symmetric3_table());
        let a3 = lower_central_series(&s3).unwrap().terms.pop().unwrap();
        let q = quotient(&s3, &a3).unwrap();
        assert_eq!(q.group.order(), Some(2));
        for r in s3.relators() {
            assert!(q.projection.apply(&r).unwrap().is_identity());
        }
        let z3 = Group::free_abelian(3);
        let n = Subgroup::new(&z3, vec![Word::generator(1)], "").unwrap();
        let q = quotient(&z3, &n).unwrap();
        assert_eq!(q.group.generator_count(), 2);
        assert_eq!(q.projection.apply(&z3.parse_word("a b c").unwrap()).unwrap(), Word::from_letters([(0, 1), (1, 1)]));
    }

    #[test]
    fn subgroups_as_groups() {
        let z1 = Group::free_abelian(1);
        let n = Subgroup::new(&z1, vec![Word::power_of(0, 2), Word::power_of(0, 3)], "").unwrap();
        let p = subgroup_as_group(&n).unwrap();
        assert_eq!(p.group.generator_count(), 2);
        assert_eq!(p.group.relators().len(), 2);
        let h = Group::heisenberg();
        let z = Subgroup::new(&h, vec![Word::generator(2)], "").unwrap();
        assert_eq!(subgroup_as_group(&z).unwrap().group.family(), &Family::FreeAbelian(1));
        let f2 = Group::free(2);
        let gamma = Subgroup::new(&f2, vec![Word::power_of(0, 2), Word::generator(1)], "").unwrap();
        assert_eq!(subgroup_as_group(&gamma).unwrap().group.family(), &Family::Free(2));
        let c6 = Group::finite(cyclic_table(6));
        let sub = Subgroup::new(&c6, vec![Word::power_of(0, 2)], "").unwrap();
        assert_eq!(subgroup_as_group(&sub).unwrap().group.order(), Some(3));
    }
}
