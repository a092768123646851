use moment_schur::hamburger::{self, Bound};
use moment_schur::linalg::{hermitian_eig, is_psd, loewner_leq, numerical_rank};
use moment_schur::sample::{self, DiscreteMeasure};
use moment_schur::stieltjes;
use moment_schur::{
    schur_complement, Complex64, Matrix, Sequence, Sequence32, Subspace, Tolerance,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn loose() -> Tolerance {
    Tolerance::new(1e-8).unwrap()
}

fn close(a: &Matrix, b: &Matrix, eps: f64) -> bool {
    (a - b).frobenius_norm() <= eps * a.frobenius_norm().max(b.frobenius_norm()).max(1.0)
}

/// Every eigenvalue of `h` is either a numerical zero or well resolved
/// relative to the largest one.
fn spectrum_separated(h: &Matrix) -> bool {
    let values = hermitian_eig(&h.hermitian_part(), &tol()).unwrap().values;
    let top = values.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    values
        .iter()
        .all(|l| l.abs() <= 1e-12 * top || l.abs() >= 1e-5 * top)
}

/// Whether all Hankel matrices of `s`, and of its α-shift, are resolvable at
/// the default tolerance. Near-coincident atoms make them ill-conditioned
/// enough that rank decisions stop being meaningful.
fn resolvable(s: &Sequence, alpha: Option<f64>) -> bool {
    let hankels_ok = |s: &Sequence| {
        (0..=s.last_index() / 2).all(|n| spectrum_separated(&s.block_hankel(n).unwrap()))
    };
    hankels_ok(s) && alpha.is_none_or(|a| s.len() < 2 || hankels_ok(&s.alpha_shift(a).unwrap()))
}

/// Moments `s₀, …, s_{len−1}` of a random discrete measure, on `[α, ∞)` if
/// `alpha` is given, redrawn until [`resolvable`].
fn moments(rng: &mut ChaCha8Rng, len: usize, alpha: Option<f64>) -> Sequence {
    loop {
        let q = rng.gen_range(1..=3);
        let atoms = rng.gen_range(1..=2 * q + 1);
        let rank = rng.gen_range(1..=q);
        let mu: DiscreteMeasure<f64> = sample::discrete_measure(rng, q, atoms, rank, alpha);
        let s = mu.moments(len).unwrap();
        if resolvable(&s, alpha) {
            return s;
        }
    }
}

/// Adds `c vvᴴ` to the last block for a unit `v` in the kernel of `k`, if any.
fn push_out_of_range(rng: &mut ChaCha8Rng, s: &Sequence, k: &Matrix) -> Option<Sequence> {
    let k = k.hermitian_part();
    if numerical_rank(&k, &tol()).unwrap() == k.rows() {
        return None;
    }
    let v = Matrix::column(&hermitian_eig(&k, &tol()).unwrap().vectors.col(0));
    let bump = (&v * &v.adjoint()).scale(rng.gen_range(0.5..2.0));
    Some(s.with_last(s.last() + &bump).unwrap())
}

fn alpha_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(-1.0), Just(0.0), Just(2.0), -3.0..3.0]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn truncated_moments_are_extendable(seed in any::<u64>(), n in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = moments(&mut rng, 2 * n + 2, None);
        let odd = s.truncate(2 * n + 1).unwrap();
        prop_assert!(hamburger::is_hnnd(&odd, &tol()).unwrap());
        prop_assert!(hamburger::is_hnnde(&odd, &tol()).unwrap());
        prop_assert!(hamburger::is_hnnde(&s, &tol()).unwrap());
    }

    // L_n is the compressed Schur complement of H_n onto its last block row.
    #[test]
    fn l_is_a_hankel_schur_complement(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = moments(&mut rng, 2 * n + 1, None);
        let q = s.q();
        let h = s.block_hankel(n).unwrap();
        let size = (n + 1) * q;
        let mut last = Matrix::zeros(size, q);
        last.set_submatrix(n * q, 0, &Matrix::identity(q));
        let v = Subspace::from_columns(&last, &tol()).unwrap();
        let sc = schur_complement(&h, &v, &tol()).unwrap().s;
        let l = hamburger::l_matrix(&s, n, &tol()).unwrap();
        prop_assert!(close(&sc.submatrix(n * q, n * q, q, q), &l, 1e-7));
        prop_assert!(sc.submatrix(0, 0, n * q, size).frobenius_norm() <= 1e-7 * h.frobenius_norm().max(1.0));
    }

    #[test]
    fn hamburger_interval_chain(seed in any::<u64>(), n in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = moments(&mut rng, 2 * n + 1, None);
        let theta = hamburger::theta(&s, n, &tol()).unwrap();
        let r = hamburger::r_upper(&s, n, &tol()).unwrap();
        prop_assert!(loewner_leq(&theta, &r, &loose()).unwrap());
        prop_assert!(loewner_leq(&r, s.last(), &loose()).unwrap());
        prop_assert!(is_psd(&hamburger::l_matrix(&s, n, &tol()).unwrap().hermitian_part(), &loose()).unwrap());
    }

    #[test]
    fn hamburger_canonical_laws(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exact = moments(&mut rng, 2 * n + 1, None);
        let l_prev = hamburger::l_matrix(&exact, n - 1, &tol()).unwrap();
        let s = push_out_of_range(&mut rng, &exact, &l_prev).unwrap_or(exact);
        let c = hamburger::canonical_rep(&s, &tol()).unwrap();
        prop_assert!(hamburger::is_hnnde(&c, &tol()).unwrap());
        prop_assert!(hamburger::same_class(&s, &c, &tol()).unwrap());
        prop_assert!(hamburger::same_class(&c, &s, &tol()).unwrap());
        prop_assert!(hamburger::same_class(&s, &s, &tol()).unwrap());
        let cc = hamburger::canonical_rep(&c, &tol()).unwrap();
        prop_assert!(close(cc.last(), c.last(), 1e-8));
        prop_assert_eq!(close(c.last(), s.last(), 1e-8), hamburger::is_hnnde(&s, &tol()).unwrap());
        let detail = hamburger::same_class_detail(&s, &c, &tol()).unwrap();
        prop_assert_eq!(detail.canonical_agrees, Some(true));
    }

    #[test]
    fn out_of_range_bump_breaks_extendability(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (exact, bumped) = loop {
            let exact = moments(&mut rng, 2 * n + 1, None);
            let l_prev = hamburger::l_matrix(&exact, n - 1, &tol()).unwrap();
            if let Some(bumped) = push_out_of_range(&mut rng, &exact, &l_prev) {
                break (exact, bumped);
            }
        };
        prop_assert!(hamburger::is_hnnd(&bumped, &tol()).unwrap());
        prop_assert!(!hamburger::is_hnnde(&bumped, &tol()).unwrap());
        prop_assert!(!hamburger::in_extension_interval(&exact, bumped.last(), Bound::Canonical, &tol()).unwrap());
        prop_assert!(hamburger::in_extension_interval(&bumped, exact.last(), Bound::Canonical, &tol()).unwrap());
    }

    #[test]
    fn kappa_is_s_minus_u(seed in any::<u64>(), alpha in alpha_strategy(), m in 0usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = moments(&mut rng, m + 1, Some(alpha));
        for j in 0..=m {
            let k = stieltjes::kappa(&s, alpha, j, &tol()).unwrap();
            let u = stieltjes::u_lower(&s, alpha, j as isize - 1, &tol()).unwrap();
            prop_assert!(close(&k, &(s.block(j).unwrap() - &u), 1e-9));
        }
    }

    #[test]
    fn stieltjes_interval_chain(seed in any::<u64>(), alpha in alpha_strategy(), m in 0usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = moments(&mut rng, m + 1, Some(alpha));
        prop_assert!(stieltjes::is_knnd(&s, alpha, &tol()).unwrap());
        prop_assert!(stieltjes::is_knnde(&s, alpha, &tol()).unwrap());
        let u = stieltjes::u_lower(&s, alpha, m as isize - 1, &tol()).unwrap();
        let r = stieltjes::r_upper_stieltjes(&s, alpha, m, &tol()).unwrap();
        prop_assert!(loewner_leq(&u, &r, &loose()).unwrap());
        prop_assert!(loewner_leq(&r, s.last(), &loose()).unwrap());
    }

    // A sequence extends exactly when appending the lower endpoint u_m keeps
    // it α-Stieltjes nonnegative definite.
    #[test]
    fn stieltjes_extendability_by_completion(seed in any::<u64>(), alpha in alpha_strategy(), m in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exact = moments(&mut rng, m + 1, Some(alpha));
        let k_prev = stieltjes::kappa(&exact, alpha, m - 1, &tol()).unwrap();
        let s = push_out_of_range(&mut rng, &exact, &k_prev).unwrap_or(exact);
        let u = stieltjes::u_lower(&s, alpha, m as isize, &tol()).unwrap().hermitian_part();
        let completed = s.pushed(u).unwrap();
        prop_assert_eq!(
            stieltjes::is_knnde(&s, alpha, &tol()).unwrap(),
            stieltjes::is_knnd(&completed, alpha, &tol()).unwrap()
        );
    }

    #[test]
    fn stieltjes_canonical_laws(seed in any::<u64>(), alpha in alpha_strategy(), m in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exact = moments(&mut rng, m + 1, Some(alpha));
        let k_prev = stieltjes::kappa(&exact, alpha, m - 1, &tol()).unwrap();
        let s = push_out_of_range(&mut rng, &exact, &k_prev).unwrap_or(exact);
        let c = stieltjes::canonical_rep_stieltjes(&s, alpha, &tol()).unwrap();
        prop_assert!(stieltjes::is_knnde(&c, alpha, &tol()).unwrap());
        prop_assert!(stieltjes::same_class_stieltjes(&s, &c, alpha, &tol()).unwrap());
        prop_assert!(stieltjes::same_class_stieltjes(&c, &s, alpha, &tol()).unwrap());
        let cc = stieltjes::canonical_rep_stieltjes(&c, alpha, &tol()).unwrap();
        prop_assert!(close(cc.last(), c.last(), 1e-8));
        prop_assert_eq!(close(c.last(), s.last(), 1e-8), stieltjes::is_knnde(&s, alpha, &tol()).unwrap());
    }

    // Support in [α, ∞) is a special case of support in ℝ.
    #[test]
    fn stieltjes_sequences_are_hamburger(seed in any::<u64>(), alpha in alpha_strategy(), n in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = moments(&mut rng, 2 * n + 1, Some(alpha));
        prop_assert!(hamburger::is_hnnd(&s, &tol()).unwrap());
        prop_assert!(hamburger::is_hnnde(&s, &tol()).unwrap());
        let ham = hamburger::r_upper(&s, n, &tol()).unwrap();
        let sti = stieltjes::r_upper_stieltjes(&s, alpha, 2 * n, &tol()).unwrap();
        // The Stieltjes interval is nested inside the Hamburger one.
        prop_assert!(loewner_leq(&sti, &ham, &loose()).unwrap());
    }

    #[test]
    fn single_precision_classification(seed in any::<u64>(), n in 0usize..=1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = moments(&mut rng, 2 * n + 1, None);
        let tol32 = Tolerance::for_scalar::<f32>();
        let s32: Sequence32 = s.cast();
        prop_assert!(hamburger::is_hnnd(&s32, &tol32).unwrap());
        let theta = hamburger::theta(&s, n, &tol()).unwrap();
        let theta32 = hamburger::theta(&s32, n, &tol32).unwrap().cast::<f64>();
        let scale = s.scale().max(1.0);
        prop_assert!((&theta - &theta32).frobenius_norm() <= 1e-2 * scale);
    }
}

#[test]
fn stieltjes_with_zero_alpha_on_point_mass() {
    let s = Sequence::from_scalars(&[1.0, 1.0, 1.0]).unwrap();
    assert!(stieltjes::is_knnde(&s, 0.0, &tol()).unwrap());
    let r = stieltjes::r_upper_stieltjes(&s, 0.0, 2, &tol()).unwrap();
    assert!((r[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
}
