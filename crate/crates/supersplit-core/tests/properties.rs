//! Randomized algebraic properties across the catalog, exact equality
//! everywhere. Counts here are kept moderate; the acceptance suite in the
//! cli crate runs the full-size versions.

use num::traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supersplit_core::catalog;
use supersplit_core::exterior::{module_action, ExteriorField, ModuleSpace, TargetSpace};
use supersplit_core::mask;
use supersplit_core::pbw::{Envelope, OddMultivector, PBWElement, RewriteStrategy};
use supersplit_core::sampling;
use supersplit_core::scalar::int;
use supersplit_core::{Homogeneous, LieSuperalgebra, Parity};

fn small_catalog() -> Vec<LieSuperalgebra> {
    vec![
        catalog::abelian(0, 3),
        catalog::gl(1, 1),
        catalog::gl(2, 1),
        catalog::osp12(),
    ]
}

#[test]
fn normal_form_is_independent_of_rewrite_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for alg in small_catalog() {
        let env = Envelope::new(&alg);
        for _ in 0..60 {
            let len = rng.gen_range(0..=6);
            let w = sampling::random_word(&alg, &mut rng, len);
            let l = env.normal_form_with(&w, RewriteStrategy::LeftmostFirst);
            let r = env.normal_form_with(&w, RewriteStrategy::RightmostFirst);
            assert_eq!(l, r, "{} word {w:?}", alg.name());
        }
    }
}

#[test]
fn normal_form_respects_swap_insertion() {
    // rewriting an adjacent pair anywhere, then normalizing the pieces,
    // reproduces the same element:
    // NF(..XY..) = (−1)^{p(X)p(Y)} NF(..YX..) + NF(..[X,Y]..)
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for alg in small_catalog() {
        let env = Envelope::new(&alg);
        for _ in 0..60 {
            let len = rng.gen_range(2..=6);
            let w = sampling::random_word(&alg, &mut rng, len);
            let i = rng.gen_range(0..len - 1);
            let (x, y) = (w[i], w[i + 1]);

            let direct = env.normal_form(&w);

            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            let both_odd =
                alg.parity(x) == Parity::Odd && alg.parity(y) == Parity::Odd;
            let sign = if both_odd { int(-1) } else { int(1) };
            let mut recombined = env.normal_form(&swapped).scaled(&sign);
            for (g, c) in alg.bracket_gens(x, y) {
                let mut spliced = Vec::with_capacity(len - 1);
                spliced.extend_from_slice(&w[..i]);
                spliced.push(*g);
                spliced.extend_from_slice(&w[i + 2..]);
                recombined.add_scaled(&env.normal_form(&spliced), c);
            }
            assert_eq!(direct, recombined, "{} word {w:?} at {i}", alg.name());
        }
    }
}

#[test]
fn multiplication_is_associative_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for alg in small_catalog() {
        let env = Envelope::new(&alg);
        for _ in 0..30 {
            let u = sampling::random_element(&env, &mut rng, 2, 3);
            let v = sampling::random_element(&env, &mut rng, 2, 3);
            let w = sampling::random_element(&env, &mut rng, 2, 3);
            let uv_w = env.multiply(&env.multiply(&u, &v), &w);
            let u_vw = env.multiply(&u, &env.multiply(&v, &w));
            assert_eq!(uv_w, u_vw, "{}", alg.name());
        }
    }
}

#[test]
fn filtration_degree_is_submultiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for alg in small_catalog() {
        let env = Envelope::new(&alg);
        for _ in 0..40 {
            let u = sampling::random_element(&env, &mut rng, 2, 4);
            let v = sampling::random_element(&env, &mut rng, 2, 4);
            let p = env.multiply(&u, &v);
            if u.is_zero() || v.is_zero() {
                continue;
            }
            assert!(
                p.filtration_degree() <= u.filtration_degree() + v.filtration_degree(),
                "{}",
                alg.name()
            );
        }
    }
}

#[test]
fn antipode_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for alg in small_catalog() {
        let env = Envelope::new(&alg);
        for _ in 0..30 {
            let u = sampling::random_element(&env, &mut rng, 2, 4);
            assert_eq!(env.antipode(&env.antipode(&u)), u, "{}", alg.name());
        }
    }
}

#[test]
fn gamma_is_multiplicative_on_commuting_splits() {
    // abelian: every pair of odd generators commutes; gl(2|2): the odd
    // upper-right block is a commuting family (first 4 odd indices)
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let cases: Vec<(LieSuperalgebra, u64)> = vec![
        (catalog::abelian(0, 4), 0b1111),
        (catalog::gl(2, 2), 0b0000_1111),
    ];
    for (alg, family) in cases {
        let env = Envelope::new(&alg);
        for _ in 0..25 {
            // random split of a random submask of the family
            let sub: u64 = rng.gen_range(0..(1u64 << alg.n_odd())) & family;
            let pick: u64 = rng.gen_range(0..(1u64 << alg.n_odd()));
            let w1 = sub & pick;
            let w2 = sub & !pick;
            let Some((full, sign)) = mask::wedge(w1, w2) else {
                unreachable!("disjoint by construction")
            };
            let lhs = env.gamma(full).scaled(&int(sign as i64));
            let rhs = env.multiply(env.gamma(w1), env.gamma(w2));
            assert_eq!(lhs, rhs, "{} split {w1:b}|{w2:b}", alg.name());
        }
    }
}

#[test]
fn gamma_symmetrize_is_linear_in_the_multivector() {
    let env_alg = catalog::gl(1, 1);
    let env = Envelope::new(&env_alg);
    let mut mv = OddMultivector::zero();
    mv.add_term(0b01, int(2));
    mv.add_term(0b11, int(-3));
    let mut want = PBWElement::zero();
    want.add_scaled(env.gamma(0b01), &int(2));
    want.add_scaled(env.gamma(0b11), &int(-3));
    assert_eq!(env.gamma_symmetrize(&mv), want);
    assert_eq!(env.gamma_symmetrize(&mv).filtration_degree(), mv.top_degree());
}

#[test]
fn decompose_round_trips_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for alg in small_catalog() {
        let env = Envelope::new(&alg);
        for _ in 0..25 {
            let u = sampling::random_element(&env, &mut rng, 3, 4);
            let mut back = PBWElement::zero();
            for (z, m, c) in env.decompose_left_even(&u) {
                let zc = PBWElement::monomial(z, c);
                back.add_scaled(&env.multiply(&zc, env.gamma(m)), &int(1));
            }
            assert_eq!(back, u, "{}", alg.name());
        }
    }
}

#[test]
fn module_action_is_a_representation_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for alg in small_catalog() {
        let env = Envelope::new(&alg);
        let dim = alg.dim();
        for _ in 0..25 {
            let py = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
            let pz = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
            let (Some(y), Some(z)) = (
                sampling::random_homogeneous(&alg, &mut rng, py),
                sampling::random_homogeneous(&alg, &mut rng, pz),
            ) else {
                continue;
            };
            let mut w = ExteriorField::zero(TargetSpace::Full, dim);
            for _ in 0..3 {
                let m = rng.gen_range(0..(1u64 << alg.n_odd()));
                let t = rng.gen_range(0..dim);
                w.add_term(m, t, int(rng.gen_range(-2..=2)));
            }

            let zw = module_action(&env, &z, &w, ModuleSpace::Full).unwrap();
            let yzw = module_action(&env, &y, &zw, ModuleSpace::Full).unwrap();
            let yw = module_action(&env, &y, &w, ModuleSpace::Full).unwrap();
            let zyw = module_action(&env, &z, &yw, ModuleSpace::Full).unwrap();
            let both_odd = py == Parity::Odd && pz == Parity::Odd;
            let mut rhs = yzw;
            rhs.add_scaled(&zyw, &int(if both_odd { 1 } else { -1 }));

            let br = alg.bracket(&y.coords, &z.coords);
            let mut lhs = ExteriorField::zero(TargetSpace::Full, dim);
            for (g, c) in br.iter().enumerate() {
                if !c.is_zero() {
                    let bg = Homogeneous::generator(&alg, g);
                    lhs.add_scaled(&module_action(&env, &bg, &w, ModuleSpace::Full).unwrap(), c);
                }
            }
            assert_eq!(lhs, rhs, "{}", alg.name());
        }
    }
}

proptest! {
    #[test]
    fn mask_wedge_is_associative(a in 0u64..64, b in 0u64..64, c in 0u64..64) {
        // (a∧b)∧c = a∧(b∧c), including the None (overlap) cases
        let left = mask::wedge(a, b)
            .and_then(|(ab, s1)| mask::wedge(ab, c).map(|(abc, s2)| (abc, s1 * s2)));
        let right = mask::wedge(b, c)
            .and_then(|(bc, s1)| mask::wedge(a, bc).map(|(abc, s2)| (abc, s1 * s2)));
        // overlap on either side means overlap overall
        match (left, right) {
            (Some(l), Some(r)) => prop_assert_eq!(l, r),
            (None, None) => {}
            (l, r) => prop_assert!(
                (a & b != 0) || (b & c != 0) || (a & c != 0),
                "{:?} vs {:?}", l, r
            ),
        }
    }

    #[test]
    fn antipode_involution_on_words(word in proptest::collection::vec(0usize..4, 0..5)) {
        let alg = catalog::gl(1, 1);
        let env = Envelope::new(&alg);
        let u = env.normal_form(&word);
        prop_assert_eq!(env.antipode(&env.antipode(&u)), u);
    }

    #[test]
    fn rewrite_strategies_agree_on_osp_words(word in proptest::collection::vec(0usize..5, 0..6)) {
        let alg = catalog::osp12();
        let env = Envelope::new(&alg);
        prop_assert_eq!(
            env.normal_form_with(&word, RewriteStrategy::LeftmostFirst),
            env.normal_form_with(&word, RewriteStrategy::RightmostFirst)
        );
    }
}
