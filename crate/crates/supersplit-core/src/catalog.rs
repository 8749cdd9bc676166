//! Built-in algebra constructors: gl(m|n), osp(1|2), abelian superspaces,
//! and the block parabolic subalgebras of gl(m|n).
//!
//! Basis order for gl(m|n): even generators first (top-left block row-major,
//! then bottom-right block row-major), then odd generators (upper-right
//! block row-major, then lower-left block row-major). This order fixes all
//! downstream pivoting, so reports are reproducible.

use num::traits::Zero;
use thiserror::Error;

use crate::algebra::{LieSuperalgebra, Parity, SparseVec};
use crate::linalg::unit_vec;
use crate::scalar::{int, Scalar};
use crate::subalgebra::{SubalgebraEmbedding, SubalgebraError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog algebra `{0}` (known: gl, osp12, abelian)")]
    UnknownName(String),
    #[error("gl(m|n) needs parameters m, n with m + n > 0")]
    BadGlParams,
    #[error("abelian needs parameters (even dim, odd dim)")]
    BadAbelianParams,
    #[error("osp12 takes no parameters")]
    BadOspParams,
    #[error("flag ({r}, {s}) out of range for gl({m}|{n})")]
    FlagOutOfRange { m: usize, n: usize, r: usize, s: usize },
    #[error("algebra has dimension {got}, expected gl({m}|{n}) of dimension {expected}")]
    NotGl { m: usize, n: usize, got: usize, expected: usize },
    #[error(transparent)]
    Subalgebra(#[from] SubalgebraError),
}

/// Constructs a catalog algebra by name. `gl` takes (m, n), `abelian` takes
/// (even dim, odd dim), `osp12` takes nothing.
pub fn catalog_algebra(name: &str, params: &[usize]) -> Result<LieSuperalgebra, CatalogError> {
    match name {
        "gl" => match params {
            [m, n] if m + n > 0 => Ok(gl(*m, *n)),
            _ => Err(CatalogError::BadGlParams),
        },
        "osp12" => {
            if params.is_empty() {
                Ok(osp12())
            } else {
                Err(CatalogError::BadOspParams)
            }
        }
        "abelian" => match params {
            [p, q] => Ok(abelian(*p, *q)),
            _ => Err(CatalogError::BadAbelianParams),
        },
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

/// Index parity in gl(m|n): rows/columns 0..m are even, m..m+n odd.
fn gl_index_parity(m: usize, i: usize) -> Parity {
    if i < m {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Positions (i, j) of the gl(m|n) matrix units in basis order.
pub fn gl_positions(m: usize, n: usize) -> Vec<(usize, usize)> {
    let d = m + n;
    let mut pos = Vec::with_capacity(d * d);
    // even: diagonal blocks
    for i in 0..m {
        for j in 0..m {
            pos.push((i, j));
        }
    }
    for i in m..d {
        for j in m..d {
            pos.push((i, j));
        }
    }
    // odd: off-diagonal blocks
    for i in 0..m {
        for j in m..d {
            pos.push((i, j));
        }
    }
    for i in m..d {
        for j in 0..m {
            pos.push((i, j));
        }
    }
    pos
}

/// The general linear Lie superalgebra gl(m|n) on matrix units E_ij, with
/// `[E_ij, E_kl] = δ_jk E_il − (−1)^{p(E_ij) p(E_kl)} δ_li E_kj`.
pub fn gl(m: usize, n: usize) -> LieSuperalgebra {
    let positions = gl_positions(m, n);
    let index: std::collections::HashMap<(usize, usize), usize> = positions
        .iter()
        .enumerate()
        .map(|(idx, &p)| (p, idx))
        .collect();
    let gens: Vec<(String, Parity)> = positions
        .iter()
        .map(|&(i, j)| {
            let parity = gl_index_parity(m, i).add(gl_index_parity(m, j));
            (format!("E{}_{}", i + 1, j + 1), parity)
        })
        .collect();

    let mut entries = Vec::new();
    for (a, &(i, j)) in positions.iter().enumerate() {
        for (b, &(k, l)) in positions.iter().enumerate() {
            let pa = gl_index_parity(m, i).add(gl_index_parity(m, j));
            let pb = gl_index_parity(m, k).add(gl_index_parity(m, l));
            let mut terms: SparseVec = Vec::new();
            if j == k {
                terms.push((index[&(i, l)], int(1)));
            }
            if l == i {
                let sign = if pa == Parity::Odd && pb == Parity::Odd {
                    int(1)
                } else {
                    int(-1)
                };
                push_term(&mut terms, index[&(k, j)], sign);
            }
            terms.retain(|(_, c)| !c.is_zero());
            if !terms.is_empty() {
                entries.push((a, b, terms));
            }
        }
    }
    LieSuperalgebra::new(format!("gl({m}|{n})"), gens, entries)
        .expect("gl(m|n) construction is well-formed")
}

fn push_term(terms: &mut SparseVec, idx: usize, c: Scalar) {
    if let Some(t) = terms.iter_mut().find(|(i, _)| *i == idx) {
        t.1 += c;
    } else {
        terms.push((idx, c));
    }
}

/// The orthosymplectic Lie superalgebra osp(1|2): sl(2) = span(H, E, F)
/// acting on two odd generators x, y of weights +1, −1.
pub fn osp12() -> LieSuperalgebra {
    let gens = vec![
        ("H".to_string(), Parity::Even),
        ("E".to_string(), Parity::Even),
        ("F".to_string(), Parity::Even),
        ("x".to_string(), Parity::Odd),
        ("y".to_string(), Parity::Odd),
    ];
    let (h, e, f, x, y) = (0, 1, 2, 3, 4);
    let entries = vec![
        (h, e, vec![(e, int(2))]),
        (h, f, vec![(f, int(-2))]),
        (e, f, vec![(h, int(1))]),
        (h, x, vec![(x, int(1))]),
        (h, y, vec![(y, int(-1))]),
        (e, y, vec![(x, int(1))]),
        (f, x, vec![(y, int(1))]),
        (x, x, vec![(e, int(-2))]),
        (y, y, vec![(f, int(2))]),
        (x, y, vec![(h, int(1))]),
    ];
    LieSuperalgebra::new("osp(1|2)", gens, entries).expect("osp(1|2) constants are well-formed")
}

/// Abelian superspace with `even` even and `odd` odd generators and all
/// brackets zero.
pub fn abelian(even: usize, odd: usize) -> LieSuperalgebra {
    let mut gens = Vec::new();
    for i in 0..even {
        gens.push((format!("Z{}", i + 1), Parity::Even));
    }
    for i in 0..odd {
        gens.push((format!("X{}", i + 1), Parity::Odd));
    }
    LieSuperalgebra::new(format!("abelian({even}|{odd})"), gens, vec![])
        .expect("abelian construction is well-formed")
}

/// Block parabolic of gl(m|n) for a flag signature (r, s): the span of all
/// E_ij whose column index lies in the leading (r|s) index block
/// B = {1..r} ∪ {m+1..m+s}, or whose row index lies outside B. This is the
/// stabilizer of the complementary coordinate subspace; its codimension is
/// r(m−r)+s(n−s) even and r(n−s)+s(m−r) odd.
pub fn parabolic(
    alg: &LieSuperalgebra,
    m: usize,
    n: usize,
    r: usize,
    s: usize,
) -> Result<SubalgebraEmbedding, CatalogError> {
    if r > m || s > n {
        return Err(CatalogError::FlagOutOfRange { m, n, r, s });
    }
    let expected = (m + n) * (m + n);
    if alg.dim() != expected {
        return Err(CatalogError::NotGl {
            m,
            n,
            got: alg.dim(),
            expected,
        });
    }
    let in_block = |i: usize| i < r || (m <= i && i < m + s);
    let positions = gl_positions(m, n);
    let mut vectors = Vec::new();
    for (idx, &(i, j)) in positions.iter().enumerate() {
        if in_block(j) || !in_block(i) {
            vectors.push(unit_vec(alg.dim(), idx));
        }
    }
    Ok(SubalgebraEmbedding::new(alg, vectors)?)
}
