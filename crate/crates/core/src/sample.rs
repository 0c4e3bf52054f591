//! Random instances for property tests, acceptance runs and benchmarks.
//!
//! Representations are direct sums of small blocks known to satisfy the
//! relators of each family (signed characters, coset permutations, commuting
//! rotations, the small Heisenberg modules), conjugated by a random unimodular
//! integer matrix so that the invariant form is not the identity.

use std::f64::consts::PI;

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cohomology::{z1_space, InhomCocycle};
use crate::error::{Error, Result};
use crate::group::{center, Subgroup, cyclic_table, dihedral_table, product_table, symmetric3_table, Family, FiniteSupportMeasure, Group, Weight, Word};
use crate::linalg::{Field, Matrix};
use crate::rep::Representation;
use crate::scalar::{rat, Rational};

/// Group families used by the random corpora.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Integers,
    Plane,
    FreeRankTwo,
    Heisenberg,
    Finite,
}

impl GroupKind {
    pub const ALL: [GroupKind; 5] =
        [GroupKind::Integers, GroupKind::Plane, GroupKind::FreeRankTwo, GroupKind::Heisenberg, GroupKind::Finite];
}

pub fn random_word<R: Rng>(rng: &mut R, generators: usize, max_len: usize) -> Word {
    if generators == 0 {
        return Word::identity();
    }
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| (rng.gen_range(0..generators), if rng.gen_bool(0.5) { 1 } else { -1 })))
}

/// A finite group of order at most `max_order` with its multiplication table.
pub fn random_finite_group<R: Rng>(rng: &mut R, max_order: usize) -> Group {
    loop {
        let table = match rng.gen_range(0..5) {
            0 => cyclic_table(rng.gen_range(1..=max_order.max(1))),
            1 if max_order >= 6 => dihedral_table(rng.gen_range(3..=(max_order / 2).max(3))),
            2 if max_order >= 6 => symmetric3_table(),
            3 => {
                let a = rng.gen_range(2..=4);
                let b = rng.gen_range(2..=6);
                if a * b > max_order {
                    continue;
                }
                product_table(&cyclic_table(a), &cyclic_table(b))
            }
            4 if max_order >= 12 => {
                let b = rng.gen_range(2..=(max_order / 6).max(2));
                if 6 * b > max_order {
                    continue;
                }
                product_table(&symmetric3_table(), &cyclic_table(b))
            }
            _ => continue,
        };
        return Group::finite(table);
    }
}

pub fn sample_group<R: Rng>(rng: &mut R, kind: GroupKind) -> Group {
    match kind {
        GroupKind::Integers => Group::free(1),
        GroupKind::Plane => Group::free_abelian(2),
        GroupKind::FreeRankTwo => Group::free(2),
        GroupKind::Heisenberg => Group::heisenberg(),
        GroupKind::Finite => random_finite_group(rng, 24),
    }
}

/// Per-generator images of one block, before validation.
type Block<S> = Vec<Matrix<S>>;

fn q(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
}

fn signed_permutation<R: Rng>(rng: &mut R, d: usize) -> Matrix<Rational> {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(d, d);
    for (c, &r) in perm.iter().enumerate() {
        m[(r, c)] = rat(if rng.gen_bool(0.5) { 1 } else { -1 }, 1);
    }
    m
}

fn quarter_turn(power: i64) -> Matrix<Rational> {
    match power.rem_euclid(4) {
        0 => q(&[&[1, 0], &[0, 1]]),
        1 => q(&[&[0, -1], &[1, 0]]),
        2 => q(&[&[-1, 0], &[0, -1]]),
        _ => q(&[&[0, 1], &[-1, 0]]),
    }
}

fn rotation(theta: f64) -> Matrix<f64> {
    let (s, c) = theta.sin_cos();
    Matrix::from_rows(vec![vec![c, -s], vec![s, c]])
}

fn sign<R: Rng>(rng: &mut R) -> i64 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// Exact blocks of dimension at most `room`.
fn exact_block<R: Rng>(rng: &mut R, g: &Group, room: usize) -> Block<Rational> {
    let k = g.generator_count();
    match g.family() {
        Family::Free(_) => {
            let d = rng.gen_range(1..=room.min(3));
            (0..k).map(|_| signed_permutation(rng, d)).collect()
        }
        Family::FreeAbelian(_) => {
            if room >= 2 && rng.gen_bool(0.5) {
                (0..k).map(|_| quarter_turn(rng.gen_range(0..4))).collect()
            } else {
                (0..k).map(|_| q(&[&[sign(rng)]])).collect()
            }
        }
        Family::Heisenberg3 => match rng.gen_range(0..4) {
            0 if room >= 3 => vec![
                q(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
                q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
                q(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            ],
            1 if room >= 2 => vec![q(&[&[0, 1], &[1, 0]]), q(&[&[1, 0], &[0, -1]]), q(&[&[-1, 0], &[0, -1]])],
            2 if room >= 2 => vec![quarter_turn(rng.gen_range(0..4)), quarter_turn(rng.gen_range(0..4)), quarter_turn(0)],
            _ => vec![q(&[&[sign(rng)]]), q(&[&[sign(rng)]]), q(&[&[1]])],
        },
        Family::FiniteTable(t) => {
            let n = t.order();
            if rng.gen_bool(0.6) {
                let h = rng.gen_range(0..n);
                let sub = t.closure(&[h]);
                let m = n / sub.len();
                if m <= room {
                    let mut coset = vec![usize::MAX; n];
                    let mut reps = Vec::new();
                    for x in 0..n {
                        if coset[x] == usize::MAX {
                            for &y in &sub {
                                coset[t.mul(x, y)] = reps.len();
                            }
                            reps.push(x);
                        }
                    }
                    let twist: Vec<i64> = (0..k).map(|_| sign(rng)).collect();
                    let candidate: Block<Rational> = t
                        .generators()
                        .iter()
                        .zip(&twist)
                        .map(|(&s, &e)| {
                            let mut mat = Matrix::zeros(m, m);
                            for (c, &r) in reps.iter().enumerate() {
                                mat[(coset[t.mul(s, r)], c)] = rat(e, 1);
                            }
                            mat
                        })
                        .collect();
                    if Representation::new(g, m, candidate.clone()).is_ok() {
                        return candidate;
                    }
                    return candidate.iter().map(|mat| mat.map(Signed::abs)).collect();
                }
            }
            let candidate: Block<Rational> = (0..k).map(|_| q(&[&[sign(rng)]])).collect();
            if Representation::new(g, 1, candidate.clone()).is_ok() {
                candidate
            } else {
                (0..k).map(|_| q(&[&[1]])).collect()
            }
        }
        Family::Product(a, b) => {
            let (ka, kb) = (a.generator_count(), b.generator_count());
            if room >= 4 && rng.gen_bool(0.3) {
                let x = exact_block(rng, a, 2);
                let y = exact_block(rng, b, room / x[0].rows().max(1));
                let (da, db) = (x.first().map_or(1, Matrix::rows), y.first().map_or(1, Matrix::rows));
                let ia = Matrix::identity(da);
                let ib = Matrix::identity(db);
                x.iter().map(|m| kron(m, &ib)).chain(y.iter().map(|m| kron(&ia, m))).collect()
            } else if rng.gen_bool(0.5) {
                let x = exact_block(rng, a, room);
                let d = x.first().map_or(1, Matrix::rows);
                x.into_iter().chain((0..kb).map(|_| Matrix::identity(d))).collect()
            } else {
                let y = exact_block(rng, b, room);
                let d = y.first().map_or(1, Matrix::rows);
                (0..ka).map(|_| Matrix::identity(d)).chain(y).collect()
            }
        }
        Family::Presentation { .. } => (0..k).map(|_| q(&[&[1]])).collect(),
    }
}

fn kron<S: Field>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    Matrix::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)].clone() * b[(i % rb, j % cb)].clone())
}

fn float_block<R: Rng>(rng: &mut R, g: &Group, room: usize) -> Block<f64> {
    let k = g.generator_count();
    if room >= 2 && rng.gen_bool(0.5) {
        match g.family() {
            Family::Free(_) => return (0..k).map(|_| rotation(rng.gen_range(0.0..2.0 * PI))).collect(),
            Family::FreeAbelian(_) => return (0..k).map(|_| rotation(rng.gen_range(0.0..2.0 * PI))).collect(),
            Family::Heisenberg3 => {
                return vec![rotation(rng.gen_range(0.0..2.0 * PI)), rotation(rng.gen_range(0.0..2.0 * PI)), Matrix::identity(2)]
            }
            _ => {}
        }
    }
    exact_block(rng, g, room).iter().map(Matrix::to_f64).collect()
}

fn unimodular<R: Rng>(rng: &mut R, d: usize) -> (Matrix<Rational>, Matrix<Rational>) {
    let mut lower = Matrix::<Rational>::identity(d);
    let mut upper = Matrix::<Rational>::identity(d);
    for i in 0..d {
        for j in 0..i {
            lower[(i, j)] = rat(rng.gen_range(-1..=1), 1);
            upper[(j, i)] = rat(rng.gen_range(-1..=1), 1);
        }
    }
    let m = lower.mul(&upper);
    let inv = <Rational as Field>::inverse(&m).expect("unimodular");
    (m, inv)
}

fn assemble<S: Field>(g: &Group, blocks: Vec<Block<S>>) -> Result<Representation<S>> {
    let k = g.generator_count();
    let dims: Vec<usize> = blocks.iter().map(|b| b.first().map_or(0, Matrix::rows)).collect();
    let d: usize = dims.iter().sum();
    let mut images = vec![Matrix::zeros(d, d); k];
    let mut offset = 0;
    for (b, &bd) in blocks.iter().zip(&dims) {
        for (img, m) in images.iter_mut().zip(b) {
            img.set_block(offset, offset, m);
        }
        offset += bd;
    }
    Representation::new(g, d, images)
}

fn collect_blocks<S: Field, R: Rng>(
    rng: &mut R,
    g: &Group,
    max_dim: usize,
    mut block: impl FnMut(&mut R, &Group, usize) -> Block<S>,
) -> Vec<Block<S>> {
    let target = rng.gen_range(1..=max_dim.max(1));
    let mut blocks = Vec::new();
    let mut used = 0;
    let mut attempts = 0;
    while used < target && attempts < 50 {
        attempts += 1;
        let b = block(rng, g, target - used);
        let d = b.first().map_or(0, Matrix::rows);
        if d == 0 || used + d > target || Representation::new(g, d, b.clone()).is_err() {
            continue;
        }
        used += d;
        blocks.push(b);
    }
    blocks
}

/// Exact representation of dimension `1..=max_dim`, isometric for a
/// conjugated standard form.
pub fn random_rational_rep<R: Rng>(rng: &mut R, g: &Group, max_dim: usize) -> Result<Representation<Rational>> {
    if g.generator_count() == 0 {
        return Ok(Representation::trivial(g, 1));
    }
    let blocks = collect_blocks(rng, g, max_dim, exact_block);
    let rep = assemble(g, blocks)?;
    let (m, inv) = unimodular(rng, rep.dim());
    Representation::new(g, rep.dim(), rep.images().iter().map(|x| m.mul(x).mul(&inv)).collect())
}

/// Float representation; infinite families may receive rotations by arbitrary angles.
pub fn random_float_rep<R: Rng>(rng: &mut R, g: &Group, max_dim: usize) -> Result<Representation<f64>> {
    if g.generator_count() == 0 {
        return Ok(Representation::trivial(g, 1));
    }
    let blocks = collect_blocks(rng, g, max_dim, float_block);
    let rep = assemble(g, blocks)?;
    let (m, inv) = unimodular(rng, rep.dim());
    let (m, inv) = (m.to_f64(), inv.to_f64());
    Representation::new(g, rep.dim(), rep.images().iter().map(|x| m.mul(x).mul(&inv)).collect())
}

/// Exact weights on up to `max_atoms` words of length at most 2.
pub fn random_measure<R: Rng>(rng: &mut R, g: &Group, max_atoms: usize) -> Result<FiniteSupportMeasure> {
    let atoms = rng.gen_range(1..=max_atoms.max(1));
    let raw: Vec<(Word, i64)> = (0..atoms)
        .map(|_| (random_word(rng, g.generator_count(), 2), rng.gen_range(1..=5)))
        .collect();
    let total: i64 = raw.iter().map(|(_, w)| w).sum();
    FiniteSupportMeasure::new(g, raw.into_iter().map(|(w, x)| (w, Weight::Exact(rat(x, total)))).collect())
}

/// Symmetric measure whose support contains every generator.
pub fn random_generating_measure<R: Rng>(rng: &mut R, g: &Group) -> Result<FiniteSupportMeasure> {
    let mut atoms = Vec::new();
    for s in g.generators() {
        let w = rng.gen_range(1..=3);
        atoms.push((s.clone(), w));
        atoms.push((s.inverse(), w));
    }
    if rng.gen_bool(0.5) {
        atoms.push((Word::identity(), rng.gen_range(1..=3)));
    }
    let total: i64 = atoms.iter().map(|(_, w)| w).sum();
    if total == 0 {
        return FiniteSupportMeasure::dirac(g, Word::identity());
    }
    FiniteSupportMeasure::new(g, atoms.into_iter().map(|(w, x)| (w, Weight::Exact(rat(x, total)))).collect())
}

/// Exact weights on words in `generators` (words of the ambient group).
pub fn random_measure_on<R: Rng>(
    rng: &mut R,
    g: &Group,
    generators: &[Word],
    max_atoms: usize,
) -> Result<FiniteSupportMeasure> {
    let atoms = rng.gen_range(1..=max_atoms.max(1));
    let raw: Vec<(Word, i64)> = (0..atoms)
        .map(|_| (random_word(rng, generators.len(), 2).substitute(generators), rng.gen_range(1..=5)))
        .collect();
    let total: i64 = raw.iter().map(|(_, w)| w).sum();
    FiniteSupportMeasure::new(g, raw.into_iter().map(|(w, x)| (w, Weight::Exact(rat(x, total)))).collect())
}

/// A group with subgroups `N` and `C` such that `C` centralizes `N`.
#[derive(Clone, Debug)]
pub struct CommutingPair {
    pub group: Group,
    pub n: Subgroup,
    pub c: Subgroup,
}

fn small_factor<R: Rng>(rng: &mut R) -> Group {
    match rng.gen_range(0..4) {
        0 => Group::free(1),
        1 => Group::free(2),
        2 => Group::free_abelian(2),
        _ => random_finite_group(rng, 8),
    }
}

pub fn random_commuting_pair<R: Rng>(rng: &mut R, kind: GroupKind) -> Result<CommutingPair> {
    let pick = |rng: &mut R, g: &Group| g.generator(rng.gen_range(0..g.generator_count()));
    let (group, n, c) = match kind {
        GroupKind::Integers => {
            let g = Group::free(1);
            let a = g.generator(0);
            let n = vec![a.pow(rng.gen_range(1..=3))];
            let c = vec![a.pow(rng.gen_range(1..=2))];
            (g, n, c)
        }
        GroupKind::Plane => {
            let g = Group::free_abelian(2);
            let n = if rng.gen_bool(0.5) { g.generators() } else { vec![pick(rng, &g)] };
            let c = vec![random_word(rng, 2, 3)];
            (g, n, c)
        }
        GroupKind::FreeRankTwo => {
            if rng.gen_bool(0.5) {
                let first = small_factor(rng);
                let g = Group::product(first.clone(), small_factor(rng));
                let gens = g.generators();
                let (a, b) = gens.split_at(first.generator_count());
                (g.clone(), a.to_vec(), b.to_vec())
            } else {
                let g = Group::free(2);
                let a = pick(rng, &g);
                (g, vec![a.pow(rng.gen_range(1..=2))], vec![a])
            }
        }
        GroupKind::Heisenberg => {
            let g = Group::heisenberg();
            let n = match rng.gen_range(0..4) {
                0 => g.generators(),
                1 => vec![g.generator(0)],
                2 => vec![g.generator(0), g.generator(2)],
                _ => vec![g.generator(1).pow(2)],
            };
            (g.clone(), n, vec![g.generator(2)])
        }
        GroupKind::Finite => {
            let g = random_finite_group(rng, 24);
            let z = center(&g)?;
            (g.clone(), g.generators(), z.generators().to_vec())
        }
    };
    let n = Subgroup::new(&group, n, "N")?;
    let c = Subgroup::new(&group, c, "C")?;
    Ok(CommutingPair { group, n, c })
}

/// Finite-index subgroup of `ℤ`, `F₂` or a finite group.
///
/// In `F₂` it is the kernel of `a ↦ 1, b ↦ k` onto `ℤ/n`, given by its
/// Schreier basis `aⁿ, aⁱ b a^{-((i + k) mod n)}`.
pub fn random_finite_index<R: Rng>(rng: &mut R) -> Result<(Group, Subgroup)> {
    let (g, gens) = match rng.gen_range(0..3) {
        0 => (Group::free(1), vec![Word::power_of(0, rng.gen_range(1..=5))]),
        1 => {
            let n = rng.gen_range(2..=4);
            let k = rng.gen_range(0..n);
            let mut gens = vec![Word::power_of(0, n)];
            for i in 0..n {
                gens.push(Word::power_of(0, i).mul(&Word::generator(1)).mul(&Word::power_of(0, -((i + k) % n))));
            }
            (Group::free(2), gens)
        }
        _ => {
            let g = random_finite_group(rng, 24);
            let gens = (0..rng.gen_range(0..=2)).map(|_| random_element(rng, &g)).collect::<Result<Vec<_>>>()?;
            (g, gens)
        }
    };
    let sub = Subgroup::new(&g, gens, "Γ")?;
    Ok((g, sub))
}

/// Small integer combination of a basis of `Z¹`.
pub fn random_cocycle<S: Field, R: Rng>(rng: &mut R, rho: &Representation<S>) -> Result<InhomCocycle<S>> {
    let z = z1_space(rho)?;
    let n = rho.group().generator_count() * rho.dim();
    let mut x = vec![S::zero(); n];
    for col in z.basis().columns() {
        let c = S::from_i64(rng.gen_range(-3..=3));
        for (xi, ci) in x.iter_mut().zip(col) {
            *xi = xi.clone() + c.clone() * ci;
        }
    }
    Ok(InhomCocycle::from_coordinates(rho, &x))
}

/// Random cyclic subgroup generator of a finite table group, as a word.
pub fn random_element<R: Rng>(rng: &mut R, g: &Group) -> Result<Word> {
    let t = g.table().ok_or_else(|| Error::UnsupportedFamily(format!("element sampling in {}", g.family_name())))?;
    Ok(t.word_of(rng.gen_range(0..t.order())).clone())
}
