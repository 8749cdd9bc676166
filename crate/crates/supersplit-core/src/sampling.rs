//! Deterministic random generation of test inputs: homogeneous
//! subalgebras closed under the bracket, and random words/elements of the
//! enveloping algebra. Everything is driven by a caller-supplied seeded RNG
//! so property suites are reproducible.

use rand::Rng;

use crate::algebra::{Homogeneous, LieSuperalgebra, Parity};
use crate::linalg::{is_zero_vec, zero_vec, Subspace};
use crate::pbw::{Envelope, PBWElement};
use crate::scalar::{int, Scalar};
use crate::subalgebra::SubalgebraEmbedding;

/// A random homogeneous vector with small integer coordinates in the given
/// parity block; retries until nonzero.
pub fn random_homogeneous(
    alg: &LieSuperalgebra,
    rng: &mut impl Rng,
    parity: Parity,
) -> Option<Homogeneous> {
    let (lo, hi) = match parity {
        Parity::Even => (0, alg.n_even()),
        Parity::Odd => (alg.n_even(), alg.dim()),
    };
    if lo == hi {
        return None;
    }
    for _ in 0..64 {
        let mut coords = zero_vec(alg.dim());
        for c in coords.iter_mut().take(hi).skip(lo) {
            *c = int(rng.gen_range(-2..=2));
        }
        if !is_zero_vec(&coords) {
            return Some(Homogeneous {
                coords,
                parity,
            });
        }
    }
    None
}

/// A random subalgebra: seeds a few homogeneous vectors and closes the span
/// under the bracket. The result always passes closure validation. With
/// `include_odd` false the seeds are even only, so the subalgebra is purely
/// even. Returns `None` when no nonzero seed exists (e.g. odd requested on
/// a purely even algebra).
pub fn random_subalgebra(
    alg: &LieSuperalgebra,
    rng: &mut impl Rng,
    include_odd: bool,
    max_seeds: usize,
) -> Option<SubalgebraEmbedding> {
    let n_seeds = rng.gen_range(1..=max_seeds.max(1));
    let mut even = Subspace::empty(alg.dim());
    let mut odd = Subspace::empty(alg.dim());
    let mut seeded = false;
    for _ in 0..n_seeds {
        let want_odd = include_odd && alg.n_odd() > 0 && rng.gen_bool(0.6);
        let parity = if want_odd { Parity::Odd } else { Parity::Even };
        if let Some(h) = random_homogeneous(alg, rng, parity) {
            seeded = true;
            match h.parity {
                Parity::Even => even.insert(h.coords),
                Parity::Odd => odd.insert(h.coords),
            };
        }
    }
    if !seeded {
        // purely odd algebras still allow odd seeds; otherwise give up
        if include_odd {
            let h = random_homogeneous(alg, rng, Parity::Odd)?;
            odd.insert(h.coords);
        } else {
            return None;
        }
    }

    // close under the bracket; brackets of homogeneous vectors stay
    // homogeneous, so the two parity blocks are maintained separately
    loop {
        let evens = even.basis().to_vec();
        let odds = odd.basis().to_vec();
        let mut grew = false;
        let push = |v: Vec<Scalar>, even: &mut Subspace, odd: &mut Subspace| {
            if is_zero_vec(&v) {
                return false;
            }
            let is_even = v[alg.n_even()..].iter().all(num::Zero::is_zero);
            if is_even {
                even.insert(v)
            } else {
                odd.insert(v)
            }
        };
        for u in evens.iter().chain(odds.iter()) {
            for v in evens.iter().chain(odds.iter()) {
                grew |= push(alg.bracket(u, v), &mut even, &mut odd);
            }
        }
        if !grew {
            break;
        }
    }

    let mut vectors: Vec<Vec<Scalar>> = even.basis().to_vec();
    vectors.extend(odd.basis().to_vec());
    SubalgebraEmbedding::new(alg, vectors).ok()
}

/// Keeps sampling until the subalgebra has nonzero odd part (up to a bound).
pub fn random_subalgebra_with_odd_part(
    alg: &LieSuperalgebra,
    rng: &mut impl Rng,
    max_seeds: usize,
) -> Option<SubalgebraEmbedding> {
    for _ in 0..200 {
        if let Some(h) = random_subalgebra(alg, rng, true, max_seeds) {
            if h.dim_odd() > 0 {
                return Some(h);
            }
        }
    }
    None
}

/// Random word over the generator indices.
pub fn random_word(alg: &LieSuperalgebra, rng: &mut impl Rng, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..alg.dim())).collect()
}

/// Random enveloping-algebra element: a small sum of normalized random
/// words with small integer coefficients.
pub fn random_element(env: &Envelope, rng: &mut impl Rng, words: usize, len: usize) -> PBWElement {
    let alg = env.algebra();
    let mut out = PBWElement::zero();
    for _ in 0..words.max(1) {
        let l = rng.gen_range(0..=len);
        let w = random_word(alg, rng, l);
        out.add_scaled(&env.normal_form(&w), &int(rng.gen_range(-3..=3)));
    }
    out
}
