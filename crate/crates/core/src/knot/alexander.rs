use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::laurent::{from_poly, poly_checked_div, poly_determinant, poly_gcd, LaurentPolynomial};
use super::{KnotError, Presentation};
use crate::homology::{smith_normal_form, smith_normal_form_with_transforms, IntMatrix};

/// Generators allowed in the Alexander matrix before giving up.
pub const DEFAULT_GENERATOR_CAP: usize = 24;

/// Above this many generators the free-part exponent vector is not computed.
const EXPONENT_VECTOR_CAP: usize = 200;

const MINOR_CAP: u128 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    /// For rank one: the exponent of each generator under the map onto `Z`
    /// (primitive, first nonzero entry positive).
    pub free_exponents: Option<Vec<i64>>,
}

impl Abelianization {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

fn exponent_matrix(p: &Presentation) -> IntMatrix {
    let entries = p.relators.iter().enumerate().flat_map(|(i, r)| {
        r.letters()
            .iter()
            .map(move |&l| (i, l.unsigned_abs() as usize - 1, BigInt::from(l.signum())))
    });
    IntMatrix::from_triplets(p.relators.len(), p.n_generators, entries)
}

/// Rank and torsion of the abelianized group, from the Smith normal form of
/// the exponent-sum matrix.
pub fn abelianization_invariants(p: &Presentation) -> Abelianization {
    let m = exponent_matrix(p);
    let snf = smith_normal_form(&m);
    let rank = p.n_generators - snf.rank();
    let free_exponents = (rank == 1 && p.n_generators <= EXPONENT_VECTOR_CAP).then(|| {
        let dec = smith_normal_form_with_transforms(&m);
        let col = p.n_generators - 1;
        debug_assert_eq!(dec.result.rank(), col);
        let mut v: Vec<i64> = (0..p.n_generators)
            .map(|i| dec.v.get(i, col).to_i64().expect("exponent fits"))
            .collect();
        if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
            for x in &mut v {
                *x = -*x;
            }
        }
        v
    });
    Abelianization {
        rank,
        torsion: snf.torsion(),
        free_exponents,
    }
}

/// Fox derivatives of every relator, abelianized by `g_j ↦ t^{exponents[j]}`.
pub fn fox_matrix(p: &Presentation, exponents: &[i64]) -> Vec<Vec<LaurentPolynomial>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![LaurentPolynomial::zero(); p.n_generators];
            let mut prefix = 0i64;
            for &l in r.letters() {
                let g = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    // d(w g)/dg = dw/dg + w
                    row[g].add_term(prefix, BigInt::one());
                    prefix += exponents[g];
                } else {
                    // d(w g^-1)/dg = dw/dg - w g^-1
                    prefix -= exponents[g];
                    row[g].add_term(prefix, -BigInt::one());
                }
            }
            row
        })
        .collect()
}

/// Normalized Alexander polynomial of a group with infinite cyclic abelianization.
///
/// The column deleted from the Alexander matrix is the lowest-index
/// generator with nonzero exponent `e`. The gcd of the remaining maximal
/// minors is `Δ · (t^|e| - 1)/(t - 1)`, so that factor is divided out; for
/// `e = ±1` there is nothing to divide.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPolynomial, KnotError> {
    alexander_polynomial_with_cap(p, DEFAULT_GENERATOR_CAP, None)
}

/// Same as [`alexander_polynomial`] but deleting column `column` (0-based),
/// which must belong to a generator with nonzero exponent.
pub fn alexander_polynomial_deleting(
    p: &Presentation,
    column: usize,
) -> Result<LaurentPolynomial, KnotError> {
    alexander_polynomial_with_cap(p, DEFAULT_GENERATOR_CAP, Some(column))
}

pub(crate) fn alexander_polynomial_with_cap(
    p: &Presentation,
    cap: usize,
    column: Option<usize>,
) -> Result<LaurentPolynomial, KnotError> {
    if p.n_generators > cap {
        return Err(KnotError::MatrixTooLarge {
            generators: p.n_generators,
            cap,
        });
    }
    let ab = abelianization_invariants(p);
    if !ab.is_infinite_cyclic() {
        return Err(KnotError::AbelianizationNotZ {
            rank: ab.rank,
            torsion: ab.torsion.iter().map(ToString::to_string).collect(),
        });
    }
    let exps = ab.free_exponents.expect("computed below the cap");
    let delete = match column {
        Some(c) if c < exps.len() && exps[c] != 0 => c,
        Some(c) => return Err(KnotError::InvalidColumn(c)),
        None => exps
            .iter()
            .position(|&e| e != 0)
            .expect("nonzero exponent vector"),
    };
    let fox = fox_matrix(p, &exps);
    // rows as ordinary polynomials; shifting a row by t^k only changes minors by a unit
    let rows: Vec<Vec<Vec<BigInt>>> = fox
        .iter()
        .map(|row| {
            let lo = row
                .iter()
                .filter_map(LaurentPolynomial::min_exponent)
                .min()
                .unwrap_or(0);
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != delete)
                .map(|(_, e)| poly_of(&e.shift(-lo)))
                .collect()
        })
        .collect();
    let size = p.n_generators - 1;
    if size == 0 {
        return Ok(LaurentPolynomial::one());
    }
    if rows.len() < size {
        return Ok(LaurentPolynomial::zero());
    }
    if binomial(rows.len() as u128, size as u128) > MINOR_CAP {
        return Err(KnotError::MatrixTooLarge {
            generators: p.n_generators,
            cap,
        });
    }
    let mut acc: Vec<BigInt> = Vec::new();
    for pick in combinations(rows.len(), size) {
        let minor: Vec<Vec<Vec<BigInt>>> = pick.iter().map(|&i| rows[i].clone()).collect();
        let det = poly_determinant(minor);
        acc = poly_gcd(&acc, &det);
        if acc.len() == 1 && acc[0].abs().is_one() {
            break;
        }
    }
    let m = exps[delete].unsigned_abs() as usize;
    if m > 1 && !acc.is_empty() {
        let geometric = vec![BigInt::one(); m];
        acc = poly_checked_div(&acc, &geometric).unwrap_or(acc);
    }
    Ok(from_poly(&acc).normalized())
}

fn poly_of(l: &LaurentPolynomial) -> Vec<BigInt> {
    if l.is_zero() {
        return Vec::new();
    }
    let hi = l.max_exponent().unwrap();
    debug_assert!(l.min_exponent().unwrap() >= 0);
    (0..=hi).map(|e| l.coefficient(e)).collect()
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k <= n).then(|| (0..k).collect::<Vec<usize>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut idx = cur.clone();
        if let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            next = Some(idx);
        }
        Some(cur)
    })
}
