use cocyclelab::group::{cyclic_table, support_subgroup, Group};
use cocyclelab::linalg::{norm2, vec_sub, Field, Matrix};
use cocyclelab::rep::{certify_isometric, laplacian, markov_operator, Representation};
use cocyclelab::sample::{
    random_finite_group, random_float_rep, random_generating_measure, random_measure, random_rational_rep, sample_group,
    GroupKind,
};
use cocyclelab::stationarity::{
    cesaro_projection, harmonic_function_space, stationary_decomposition, stationary_states, weak_unique_stationarity_check,
    BlockAutomorphism, CesaroOptions, MatrixAlgebraAction,
};
use cocyclelab::subspace::Subspace;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn kind(i: usize) -> GroupKind {
    GroupKind::ALL[i % GroupKind::ALL.len()]
}

fn span<S: Field>(m: &Matrix<S>) -> Subspace<S> {
    if m.cols() == 0 {
        Subspace::zero(m.rows())
    } else {
        Subspace::span(m)
    }
}

fn check_projection<S: Field>(rho: &Representation<S>, e: &Matrix<S>, m: &Matrix<S>, tol: f64) -> Result<(), TestCaseError> {
    prop_assert!(e.mul(e).distance(e) <= tol);
    prop_assert!(m.mul(e).distance(e) <= tol);
    prop_assert!(e.mul(m).distance(e) <= tol);
    let delta = Matrix::identity(rho.dim()).sub(m);
    prop_assert!(span(e).equals(&Subspace::kernel_of(&delta)));
    prop_assert!(Subspace::kernel_of(e).equals(&span(&delta)));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cesaro_limit_is_the_ergodic_projection(seed in any::<u64>(), k in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = sample_group(&mut rng, kind(k));
        let mu = random_measure(&mut rng, &g, 4).unwrap();

        let exact = random_rational_rep(&mut rng, &g, 5).unwrap();
        if certify_isometric(&exact).is_ok() {
            let p = cesaro_projection(&exact, &mu, CesaroOptions::default()).unwrap();
            prop_assert!(p.exact);
            check_projection(&exact, &p.e, &markov_operator(&exact, &mu), 0.0)?;
        }
        let float = random_float_rep(&mut rng, &g, 5).unwrap();
        if certify_isometric(&float).is_ok() {
            let p = cesaro_projection(&float, &mu, CesaroOptions { tol: 1e-10, max_iter: 62 }).unwrap();
            prop_assert!(p.residual < 1e-9);
            check_projection(&float, &p.e, &markov_operator(&float, &mu), 1e-7)?;
        }
    }

    #[test]
    fn decomposition_is_direct_exactly_when_the_pairing_is_nondegenerate(seed in any::<u64>(), k in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = sample_group(&mut rng, kind(k));
        let rho = random_rational_rep(&mut rng, &g, 5).unwrap();
        let mu = random_measure(&mut rng, &g, 4).unwrap();
        let direct = stationary_decomposition(&rho, &mu).is_ok();
        let weak = weak_unique_stationarity_check(&rho, &mu).unwrap().holds;
        prop_assert_eq!(direct, weak);
        if certify_isometric(&rho).is_ok() {
            prop_assert!(direct);
        }
    }

    #[test]
    fn cesaro_averages_approach_the_projection_at_rate_one_over_n(seed in any::<u64>(), k in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = sample_group(&mut rng, kind(k));
        let rho = random_float_rep(&mut rng, &g, 4).unwrap();
        let Ok(cert) = certify_isometric(&rho.clone().with_norm(cocyclelab::rep::NormKind::Two)) else { return Ok(()) };
        let mu = random_measure(&mut rng, &g, 4).unwrap();
        let e = cesaro_projection(&rho, &mu, CesaroOptions::default()).unwrap().e;
        let m = markov_operator(&rho, &mu);
        let v: Vec<f64> = (0..rho.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let ev = e.mul_vec(&v);
        // A_n v − E v = (1/n)(I − ρ_μⁿ) y with Δ y = v − E v and y ∈ im Δ.
        let delta = laplacian(&rho, &mu);
        let v0 = span(&delta);
        let c = if v0.dim() == 0 { vec![] } else { f64::least_squares(&delta.mul(v0.basis()), &vec_sub(&v, &ev)).0 };
        let y = if v0.dim() == 0 { vec![0.0; rho.dim()] } else { v0.basis().mul_vec(&c) };
        let constant = (1.0 + cert.bound) * norm2(&y);
        let mut power = v.clone();
        let mut sum = vec![0.0; rho.dim()];
        for n in 1..=2048usize {
            sum = cocyclelab::linalg::vec_add(&sum, &power);
            power = m.mul_vec(&power);
            let avg: Vec<f64> = sum.iter().map(|x| x / n as f64).collect();
            let err = norm2(&vec_sub(&avg, &ev));
            prop_assert!(err <= constant / n as f64 + 1e-8, "n {} err {} bound {}", n, err, constant / n as f64);
        }
    }

    #[test]
    fn harmonic_functions_count_cosets_of_the_support(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_finite_group(&mut rng, 24);
        let t = g.table().unwrap();
        let mu = random_measure(&mut rng, &g, 3).unwrap();
        let h = support_subgroup(&mu).unwrap().elements().unwrap();
        let space = harmonic_function_space::<cocyclelab::scalar::Rational>(&g, &mu).unwrap().space;
        prop_assert_eq!(space.dim(), t.order() / h.len());
        for f in space.basis_vectors() {
            for x in 0..t.order() {
                for &y in &h {
                    prop_assert_eq!(&f[t.mul(x, y)], &f[x]);
                }
            }
        }
    }

    #[test]
    fn stationary_states_with_generating_support_are_the_invariant_states(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = [2usize, 3, 4, 6][rng.gen_range(0..4)];
        let g = Group::finite(cyclic_table(order));
        let divisors: Vec<usize> = (1..=order).filter(|l| order.is_multiple_of(*l)).collect();
        let mut blocks = Vec::new();
        let mut perm = Vec::new();
        let mut expected = 0;
        for _ in 0..rng.gen_range(1..=3) {
            let size = rng.gen_range(1..=2);
            let len = divisors[rng.gen_range(0..divisors.len())];
            if blocks.len() + len > 6 {
                continue;
            }
            let start = blocks.len();
            for i in 0..len {
                blocks.push(size);
                perm.push(start + (i + 1) % len);
            }
            expected += size * size;
        }
        let action = MatrixAlgebraAction::new(&g, blocks.clone(), vec![BlockAutomorphism::permutation(&blocks, perm)]).unwrap();
        let mu = random_generating_measure(&mut rng, &g).unwrap();
        let states = stationary_states(&action, &mu).unwrap();
        prop_assert_eq!(states.fixed_dim, expected);
        prop_assert_eq!(states.affine_dim, expected - 1);
        prop_assert_eq!(states.unique, expected == 1);
    }
}
