//! The universal enveloping superalgebra U(g) in PBW normal form.
//!
//! A normal-form monomial is an even PBW monomial (exponents over the even
//! basis) times an ordered odd monomial (a strictly increasing product of
//! odd generators, stored as a bitmask). Multiplication rewrites words with
//! the two rules
//!
//! ```text
//! X·Y = (−1)^{p(X)p(Y)} Y·X + [X, Y]      (out-of-order pair)
//! X·X = ½ [X, X]                          (repeated odd generator)
//! ```
//!
//! each of which strictly lowers (word length, inversion count)
//! lexicographically, so rewriting terminates. Confluence of the strategy
//! choice is not assumed; it is checked by property tests that compare
//! leftmost-first and rightmost-first reduction.
//!
//! [`Envelope`] also carries the symmetrization table γ: for each odd index
//! set, γ(ω) is the signed average over all orderings of the factors. It is
//! computed once per algebra through the recursion that splits off the first
//! factor, and is the basis `{z·γ(ω)}` against which
//! [`Envelope::decompose_left_even`] back-substitutes.

use std::collections::BTreeMap;

use num::traits::{One, Zero};

use crate::algebra::{LieSuperalgebra, Parity};
use crate::mask::{self, OddMask};
use crate::scalar::{self, Scalar};

/// Normal-form basis monomial of U(g).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PBWMonomial {
    /// Exponent vector over the even basis.
    pub even: Vec<u32>,
    /// Odd factors, bit k = k-th odd generator.
    pub mask: OddMask,
}

impl PBWMonomial {
    pub fn unit(n_even: usize) -> Self {
        PBWMonomial {
            even: vec![0; n_even],
            mask: 0,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.mask == 0 && self.even.iter().all(|&e| e == 0)
    }

    pub fn odd_degree(&self) -> usize {
        mask::popcount(self.mask)
    }

    pub fn total_length(&self) -> usize {
        self.even.iter().map(|&e| e as usize).sum::<usize>() + self.odd_degree()
    }

    /// The underlying sorted word of generator indices.
    pub fn word(&self, n_even: usize) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.total_length());
        for (i, &e) in self.even.iter().enumerate() {
            for _ in 0..e {
                w.push(i);
            }
        }
        for k in mask::bits(self.mask) {
            w.push(n_even + k);
        }
        w
    }
}

/// Element of U(g): sparse rational combination of normal-form monomials.
/// No explicit zero coefficients are stored, so structural equality is
/// element equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PBWElement {
    terms: BTreeMap<PBWMonomial, Scalar>,
}

impl PBWElement {
    pub fn zero() -> Self {
        PBWElement::default()
    }

    pub fn one(n_even: usize) -> Self {
        let mut e = PBWElement::zero();
        e.add_term(PBWMonomial::unit(n_even), Scalar::one());
        e
    }

    pub fn monomial(m: PBWMonomial, c: Scalar) -> Self {
        let mut e = PBWElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &PBWMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PBWElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> PBWElement {
        let mut out = PBWElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        out.add_scaled(other, &scalar::int(-1));
        out
    }

    /// Max number of odd factors over the support; −1 for the zero element.
    pub fn filtration_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.odd_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Coefficient of the unit monomial (the counit).
    pub fn augmentation(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_unit())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// True if every monomial is purely even.
    pub fn is_even_part(&self) -> bool {
        self.terms.keys().all(|m| m.mask == 0)
    }

    pub fn render(&self, alg: &LieSuperalgebra) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &e) in m.even.iter().enumerate() {
                if e == 1 {
                    factors.push(alg.label(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", alg.label(i), e));
                }
            }
            for k in mask::bits(m.mask) {
                factors.push(alg.label(alg.odd_index(k)).to_string());
            }
            let mono = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("·")
            };
            parts.push(format!("({})·{}", scalar::format(c), mono));
        }
        parts.join(" + ")
    }
}

/// Element of the exterior algebra Λ(g₁), the domain of the symmetrization
/// map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OddMultivector {
    terms: BTreeMap<OddMask, Scalar>,
}

impl OddMultivector {
    pub fn zero() -> Self {
        OddMultivector::default()
    }

    pub fn from_mask(mask: OddMask) -> Self {
        let mut mv = OddMultivector::zero();
        mv.add_term(mask, Scalar::one());
        mv
    }

    pub fn add_term(&mut self, mask: OddMask, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OddMask, &Scalar)> {
        self.terms.iter()
    }

    pub fn top_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| mask::popcount(*m) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &OddMultivector) -> OddMultivector {
        let mut out = OddMultivector::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, s)) = mask::wedge(*a, *b) {
                    out.add_term(m, ca * cb * scalar::int(s as i64));
                }
            }
        }
        out
    }
}

/// Which out-of-order pair the rewriting engine picks first. The results
/// must agree; `RightmostFirst` exists so tests can check that they do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    LeftmostFirst,
    RightmostFirst,
}

/// Entries (input mask, coefficient) of one output row of a generator's
/// action table; see [`Envelope::generator_action_rows`].
pub type ActionRow = Vec<(OddMask, Scalar)>;

/// U(g) with the precomputed symmetrization table for its algebra.
/// Immutable after construction; the per-generator action tables fill in
/// lazily behind `OnceLock`s, so sharing across threads stays safe and all
/// operations remain observationally pure.
pub struct Envelope<'a> {
    alg: &'a LieSuperalgebra,
    gamma: Vec<PBWElement>,
    gen_actions: Vec<std::sync::OnceLock<Vec<ActionRow>>>,
}

impl<'a> Envelope<'a> {
    pub fn new(alg: &'a LieSuperalgebra) -> Self {
        assert!(
            alg.n_odd() <= 20,
            "odd dimension {} too large for the dense mask tables",
            alg.n_odd()
        );
        let mut env = Envelope {
            alg,
            gamma: Vec::new(),
            gen_actions: (0..alg.dim()).map(|_| std::sync::OnceLock::new()).collect(),
        };
        let size = 1usize << alg.n_odd();
        let mut gamma = vec![PBWElement::zero(); size];
        for m in mask::masks_by_degree(alg.n_odd()) {
            gamma[m as usize] = env.gamma_of_mask_from(m, &gamma);
        }
        env.gamma = gamma;
        env
    }

    /// Unit-even-part coefficients of the decompositions of γ(ω)·T_g over
    /// all masks ω: rows\[ω\] lists (ω′, c) with c the coefficient of γ(ω′)
    /// with trivial even factor. Computed once per generator; this is the
    /// raw material of every field-action table.
    pub fn generator_action_rows(&self, g: usize) -> &[ActionRow] {
        self.gen_actions[g].get_or_init(|| {
            let size = 1usize << self.alg.n_odd();
            let mut rows = vec![ActionRow::new(); size];
            for (omega, row) in rows.iter_mut().enumerate() {
                let mut prod = PBWElement::zero();
                for (ms, cs) in self.gamma[omega].terms() {
                    let mut w = ms.word(self.alg.n_even());
                    w.push(g);
                    self.reduce_word(w, cs.clone(), RewriteStrategy::LeftmostFirst, &mut prod);
                }
                for (z, m_in, c) in self.decompose_left_even(&prod) {
                    if z.is_unit() {
                        row.push((m_in, c));
                    }
                }
            }
            rows
        })
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        self.alg
    }

    pub fn one(&self) -> PBWElement {
        PBWElement::one(self.alg.n_even())
    }

    pub fn generator(&self, i: usize) -> PBWElement {
        self.normal_form(&[i])
    }

    /// Element for a coordinate vector of g.
    pub fn from_vector(&self, v: &[Scalar]) -> PBWElement {
        let mut out = PBWElement::zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.generator(i), c);
            }
        }
        out
    }

    /// Normal form of a product of generators, leftmost-first rewriting.
    pub fn normal_form(&self, word: &[usize]) -> PBWElement {
        self.normal_form_with(word, RewriteStrategy::LeftmostFirst)
    }

    pub fn normal_form_with(&self, word: &[usize], strategy: RewriteStrategy) -> PBWElement {
        let mut out = PBWElement::zero();
        self.reduce_word(word.to_vec(), Scalar::one(), strategy, &mut out);
        out
    }

    fn reduce_word(
        &self,
        word: Vec<usize>,
        coeff: Scalar,
        strategy: RewriteStrategy,
        out: &mut PBWElement,
    ) {
        let mut stack = vec![(word, coeff)];
        while let Some((w, c)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            match self.find_violation(&w, strategy) {
                None => out.add_term(self.monomial_of_sorted(&w), c),
                Some(i) => {
                    let (x, y) = (w[i], w[i + 1]);
                    if x == y {
                        // odd square: X² = ½[X,X]
                        for (g, k) in self.alg.bracket_gens(x, x) {
                            let mut nw = Vec::with_capacity(w.len() - 1);
                            nw.extend_from_slice(&w[..i]);
                            nw.push(*g);
                            nw.extend_from_slice(&w[i + 2..]);
                            stack.push((nw, &c * k * scalar::frac(1, 2)));
                        }
                    } else {
                        // swap: XY = (−1)^{p(X)p(Y)} YX + [X,Y]
                        let both_odd = self.alg.parity(x) == Parity::Odd
                            && self.alg.parity(y) == Parity::Odd;
                        let mut sw = w.clone();
                        sw.swap(i, i + 1);
                        stack.push((sw, if both_odd { -c.clone() } else { c.clone() }));
                        for (g, k) in self.alg.bracket_gens(x, y) {
                            let mut nw = Vec::with_capacity(w.len() - 1);
                            nw.extend_from_slice(&w[..i]);
                            nw.push(*g);
                            nw.extend_from_slice(&w[i + 2..]);
                            stack.push((nw, &c * k));
                        }
                    }
                }
            }
        }
    }

    fn find_violation(&self, w: &[usize], strategy: RewriteStrategy) -> Option<usize> {
        if w.len() < 2 {
            return None;
        }
        let bad = |i: usize| {
            w[i] > w[i + 1] || (w[i] == w[i + 1] && self.alg.parity(w[i]) == Parity::Odd)
        };
        match strategy {
            RewriteStrategy::LeftmostFirst => (0..w.len() - 1).find(|&i| bad(i)),
            RewriteStrategy::RightmostFirst => (0..w.len() - 1).rev().find(|&i| bad(i)),
        }
    }

    fn monomial_of_sorted(&self, w: &[usize]) -> PBWMonomial {
        let mut m = PBWMonomial::unit(self.alg.n_even());
        for &g in w {
            if g < self.alg.n_even() {
                m.even[g] += 1;
            } else {
                m.mask |= 1u64 << (g - self.alg.n_even());
            }
        }
        m
    }

    /// Product in U(g).
    pub fn multiply(&self, u: &PBWElement, v: &PBWElement) -> PBWElement {
        let ne = self.alg.n_even();
        let mut out = PBWElement::zero();
        for (mu, cu) in u.terms() {
            let wu = mu.word(ne);
            for (mv, cv) in v.terms() {
                let mut w = wu.clone();
                w.extend(mv.word(ne));
                self.reduce_word(w, cu * cv, RewriteStrategy::LeftmostFirst, &mut out);
            }
        }
        out
    }

    /// Right multiplication by a coordinate vector of g.
    pub fn multiply_by_vector(&self, u: &PBWElement, v: &[Scalar]) -> PBWElement {
        let ne = self.alg.n_even();
        let mut out = PBWElement::zero();
        for (mu, cu) in u.terms() {
            let wu = mu.word(ne);
            for (g, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut w = wu.clone();
                w.push(g);
                self.reduce_word(w, cu * c, RewriteStrategy::LeftmostFirst, &mut out);
            }
        }
        out
    }

    /// γ(ω) for a single odd index set.
    pub fn gamma(&self, m: OddMask) -> &PBWElement {
        &self.gamma[m as usize]
    }

    /// Linear extension of the symmetrization map Λ(g₁) → U(g).
    pub fn gamma_symmetrize(&self, mv: &OddMultivector) -> PBWElement {
        let mut out = PBWElement::zero();
        for (m, c) in mv.terms() {
            out.add_scaled(self.gamma(*m), c);
        }
        out
    }

    /// γ via the first-factor recursion
    /// γ(ω) = (1/r) Σ_{j∈ω} (−1)^{pos(j)} X_j · γ(ω∖j),
    /// reading already-computed submask entries from `table`.
    fn gamma_of_mask_from(&self, m: OddMask, table: &[PBWElement]) -> PBWElement {
        let r = mask::popcount(m);
        if r == 0 {
            return self.one();
        }
        let ne = self.alg.n_even();
        let mut out = PBWElement::zero();
        for k in mask::bits(m) {
            let sub = &table[(m & !(1u64 << k)) as usize];
            let sign = if mask::bits_below(m, k) % 2 == 0 {
                Scalar::one()
            } else {
                scalar::int(-1)
            };
            for (ms, cs) in sub.terms() {
                let mut w = vec![ne + k];
                w.extend(ms.word(ne));
                self.reduce_word(w, cs * &sign, RewriteStrategy::LeftmostFirst, &mut out);
            }
        }
        out.scaled(&scalar::frac(1, r as i64))
    }

    /// Antipode: S(T) = −T on generators, S(uv) = (−1)^{p(u)p(v)} S(v)S(u),
    /// S(1) = 1.
    pub fn antipode(&self, u: &PBWElement) -> PBWElement {
        let ne = self.alg.n_even();
        let mut out = PBWElement::zero();
        for (m, c) in u.terms() {
            let word = m.word(ne);
            let mut acc = self.one();
            let mut prefix_parity = 0u8;
            for &g in &word {
                let pg = self.alg.parity(g).bit();
                let mut next = PBWElement::zero();
                // acc := (−1)^{p(g)·p(prefix)} (−T_g)·acc
                for (ma, ca) in acc.terms() {
                    let mut w = vec![g];
                    w.extend(ma.word(ne));
                    let c = if pg & prefix_parity == 1 { ca.clone() } else { -ca.clone() };
                    self.reduce_word(w, c, RewriteStrategy::LeftmostFirst, &mut next);
                }
                acc = next;
                prefix_parity ^= pg;
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Coordinates of `u` in the PBW-type basis `{z·γ(ω)}` with `z` an even
    /// monomial: triples (even monomial, odd index set, coefficient), sorted
    /// by (|ω|, ω, z). Exact: recombining via `multiply` reproduces `u`.
    pub fn decompose_left_even(&self, u: &PBWElement) -> Vec<(PBWMonomial, OddMask, Scalar)> {
        let mut work = u.clone();
        let mut triples: Vec<(PBWMonomial, OddMask, Scalar)> = Vec::new();
        while !work.is_zero() {
            let max_pc = work
                .terms
                .keys()
                .map(|m| m.odd_degree())
                .max()
                .expect("nonzero element has terms");
            let heads: Vec<(PBWMonomial, Scalar)> = work
                .terms
                .iter()
                .filter(|(m, _)| m.odd_degree() == max_pc)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            for (m, c) in heads {
                let even_mono = PBWMonomial {
                    even: m.even.clone(),
                    mask: 0,
                };
                // work −= c · z · γ(ω); only strictly lower odd degrees remain
                let z = PBWElement::monomial(even_mono.clone(), Scalar::one());
                let prod = self.multiply(&z, self.gamma(m.mask));
                work.add_scaled(&prod, &-c.clone());
                triples.push((even_mono, m.mask, c));
            }
        }
        triples.sort_by(|a, b| {
            (mask::popcount(a.1), a.1, &a.0)
                .cmp(&(mask::popcount(b.1), b.1, &b.0))
        });
        triples
    }
}

/// See [`PBWElement::filtration_degree`].
pub fn filtration_degree(u: &PBWElement) -> i64 {
    u.filtration_degree()
}

/// See [`PBWElement::augmentation`].
pub fn augmentation(u: &PBWElement) -> Scalar {
    u.augmentation()
}
