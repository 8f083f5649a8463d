//! Integral simplicial homology via boundary matrices and Smith normal form.
//!
//! Everything here is exact: entries are arbitrary-precision integers.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary dimension {requested} out of range 1..={dim:?}")]
    DimensionOutOfRange {
        requested: usize,
        dim: Option<usize>,
    },
}

/// An integer matrix stored column-sparse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    /// `columns[j]` holds `(row, value)` pairs with nonzero values, sorted by row.
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, BigInt::one()));
        }
        m
    }

    /// Builds a matrix from row-major dense data.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                let v: BigInt = v.clone().into();
                if !v.is_zero() {
                    m.columns[j].push((i, v));
                }
            }
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut acc: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); cols];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry out of bounds");
            *acc[j].entry(i).or_insert_with(BigInt::zero) += v;
        }
        let columns = acc
            .into_iter()
            .map(|c| {
                let mut col: Vec<(usize, BigInt)> =
                    c.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                col.sort_by_key(|(i, _)| *i);
                col
            })
            .collect();
        IntMatrix {
            rows,
            cols,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.columns[j][k].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for (j, col) in other.columns.iter().enumerate() {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    *acc.entry(*i).or_insert_with(BigInt::zero) += a * b;
                }
            }
            let mut entries: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            entries.sort_by_key(|(i, _)| *i);
            out.columns[j] = entries;
        }
        out
    }

    fn row_lists(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        rows
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Smith normal form together with unimodular `u`, `v` such that `u * a * v`
/// is diagonal with the invariant factors on its leading diagonal.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub result: SnfResult,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: IntMatrix,
}

/// Invariant factors of `a`.
///
/// Unit pivots are eliminated on the sparse representation first (rows
/// chosen shortest-first, ties towards the column with the fewest entries);
/// what is left is diagonalized densely with minimal-absolute-value pivots.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (unit_rank, rest) = eliminate_unit_pivots(a);
    let mut factors = vec![BigInt::one(); unit_rank];
    if !rest.is_empty() {
        let (r, c) = (rest.len(), rest[0].len());
        let dense = DenseSnf::run(rest, r, c, false);
        factors.extend(dense.factors);
    }
    SnfResult {
        invariant_factors: normalize_chain(factors),
    }
}

/// Dense Smith normal form with transform tracking; the identity
/// `u * a * v == diagonal` is asserted before returning.
pub fn smith_normal_form_with_transforms(a: &IntMatrix) -> SnfDecomposition {
    let dense = a.to_dense();
    let run = DenseSnf::run(dense, a.rows, a.cols, true);
    let u = dense_to_matrix(run.u.as_ref().unwrap(), a.rows, a.rows);
    let v = dense_to_matrix(run.v.as_ref().unwrap(), a.cols, a.cols);
    let diagonal = dense_to_matrix(&run.matrix, a.rows, a.cols);
    assert_eq!(
        u.mul(a).mul(&v),
        diagonal,
        "Smith transforms do not reproduce the diagonal"
    );
    for w in run.factors.windows(2) {
        assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken");
    }
    SnfDecomposition {
        result: SnfResult {
            invariant_factors: run.factors,
        },
        u,
        v,
        diagonal,
    }
}

fn dense_to_matrix(d: &[Vec<BigInt>], rows: usize, cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for (i, row) in d.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                m.columns[j].push((i, v.clone()));
            }
        }
    }
    m
}

/// Rewrites a list of nonzero diagonal entries into a divisibility chain of
/// positive integers (pairs become gcd/lcm).
fn normalize_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if !d[j].is_multiple_of(&d[i]) {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
    d
}

/// Eliminates ±1 pivots in place on a row-sparse copy. Returns the number of
/// pivots removed and the remaining nonzero rows restricted to the surviving
/// columns, as a dense matrix.
fn eliminate_unit_pivots(a: &IntMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows = a.row_lists();
    let mut col_rows: Vec<BTreeSet<usize>> = a
        .columns
        .iter()
        .map(|c| c.iter().map(|(i, _)| *i).collect())
        .collect();
    let mut alive = vec![true; a.rows];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| Reverse((r.len(), i)))
        .collect();
    let mut rank = 0;

    while let Some(Reverse((len, r))) = heap.pop() {
        if !alive[r] || rows[r].len() != len || len == 0 {
            continue;
        }
        let pivot = rows[r]
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .min_by_key(|(c, _)| (col_rows[*c].len(), *c))
            .map(|(c, v)| (*c, v.clone()));
        let Some((pc, pv)) = pivot else {
            continue;
        };
        let pivot_row = std::mem::take(&mut rows[r]);
        alive[r] = false;
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&k| k != r).collect();
        for k in others {
            let akc = rows[k]
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.clone())
                .expect("column index out of sync");
            // row_k -= (a_kc / pv) * pivot_row, and pv is a unit
            let factor = &akc * &pv;
            let old = std::mem::take(&mut rows[k]);
            let merged = axpy(&old, &pivot_row, &factor);
            let old_cols: BTreeSet<usize> = old.iter().map(|(c, _)| *c).collect();
            let new_cols: BTreeSet<usize> = merged.iter().map(|(c, _)| *c).collect();
            for c in old_cols.difference(&new_cols) {
                col_rows[*c].remove(&k);
            }
            for c in new_cols.difference(&old_cols) {
                col_rows[*c].insert(k);
            }
            rows[k] = merged;
            heap.push(Reverse((rows[k].len(), k)));
        }
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&r);
        }
        rank += 1;
    }

    let remaining_rows: Vec<usize> = (0..a.rows).filter(|&i| !rows[i].is_empty()).collect();
    let remaining_cols: Vec<usize> = (0..a.cols).filter(|&j| !col_rows[j].is_empty()).collect();
    let col_pos: HashMap<usize, usize> = remaining_cols
        .iter()
        .enumerate()
        .map(|(p, &j)| (j, p))
        .collect();
    let dense = remaining_rows
        .iter()
        .map(|&i| {
            let mut row = vec![BigInt::zero(); remaining_cols.len()];
            for (c, v) in &rows[i] {
                row[col_pos[c]] = v.clone();
            }
            row
        })
        .collect();
    (rank, dense)
}

/// `x - factor * y` on sorted sparse rows.
fn axpy(x: &[(usize, BigInt)], y: &[(usize, BigInt)], factor: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(factor * &y[j].1)));
            j += 1;
        } else {
            let v = &x[i].1 - factor * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct DenseSnf {
    matrix: Vec<Vec<BigInt>>,
    factors: Vec<BigInt>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl DenseSnf {
    fn run(matrix: Vec<Vec<BigInt>>, rows: usize, cols: usize, track: bool) -> Self {
        let ident = |n: usize| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                BigInt::one()
                            } else {
                                BigInt::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let mut s = DenseSnf {
            matrix,
            factors: Vec::new(),
            u: track.then(|| ident(rows)),
            v: track.then(|| ident(cols)),
        };
        s.diagonalize(rows, cols);
        s
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.matrix.swap(a, b);
        if let Some(u) = &mut self.u {
            u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.matrix {
            row.swap(a, b);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    /// row_dst -= q * row_src
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        let (d, s) = pick_two(&mut self.matrix, dst, src);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
        if let Some(u) = &mut self.u {
            let (d, s) = pick_two(u, dst, src);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
    }

    /// col_dst -= q * col_src
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in &mut self.matrix {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[src].is_zero() {
                    let t = q * &row[src];
                    row[dst] -= t;
                }
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.matrix[r] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[r] {
                *x = -&*x;
            }
        }
    }

    fn diagonalize(&mut self, rows: usize, cols: usize) {
        let mut t = 0;
        while t < rows.min(cols) {
            // minimal nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &self.matrix[i][j];
                    if !x.is_zero()
                        && best.is_none_or(|(bi, bj)| x.abs() < self.matrix[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.matrix[i][t].is_zero() {
                        continue;
                    }
                    let q = self.matrix[i][t].div_floor(&self.matrix[t][t]);
                    self.row_sub(i, t, &q);
                    if !self.matrix[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if self.matrix[t][j].is_zero() {
                        continue;
                    }
                    let q = self.matrix[t][j].div_floor(&self.matrix[t][t]);
                    self.col_sub(j, t, &q);
                    if !self.matrix[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    self.bring_min_to_pivot(t, rows, cols);
                    continue;
                }
                // pivot must divide the rest of the block
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.matrix[i][j].is_multiple_of(&self.matrix[t][t]))
                });
                match offender {
                    Some(i) => {
                        self.row_sub(t, i, &BigInt::from(-1));
                        continue;
                    }
                    None => break,
                }
            }
            if self.matrix[t][t].is_negative() {
                self.negate_row(t);
            }
            self.factors.push(self.matrix[t][t].clone());
            t += 1;
        }
    }

    /// Moves the smallest nonzero entry of row `t` / column `t` to `(t, t)`.
    fn bring_min_to_pivot(&mut self, t: usize, rows: usize, cols: usize) {
        let mut best = (t, t);
        for i in t..rows {
            let x = &self.matrix[i][t];
            let b = &self.matrix[best.0][best.1];
            if !x.is_zero() && (b.is_zero() || x.abs() < b.abs()) {
                best = (i, t);
            }
        }
        for j in t..cols {
            let x = &self.matrix[t][j];
            let b = &self.matrix[best.0][best.1];
            if !x.is_zero() && (b.is_zero() || x.abs() < b.abs()) {
                best = (t, j);
            }
        }
        if best.0 != t {
            self.swap_rows(t, best.0);
        }
        if best.1 != t {
            self.swap_cols(t, best.1);
        }
    }
}

fn pick_two<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// Rank over the rationals by sparse column reduction.
///
/// Each column is reduced against stored columns keyed by their last
/// nonzero row; a column that survives becomes a new pivot. Arithmetic is
/// in exact rationals and shares no code with the Smith normal form path.
pub fn rational_rank(a: &IntMatrix) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, BigRational)>> = HashMap::new();
    for col in &a.columns {
        let mut v: Vec<(usize, BigRational)> = col
            .iter()
            .map(|(r, x)| (*r, BigRational::from_integer(x.clone())))
            .collect();
        while let Some((low, coeff)) = v.last().cloned() {
            match pivots.get(&low) {
                Some(p) => v = sub_multiple(&v, &coeff, p),
                None => {
                    let inv = coeff.recip();
                    let normalized = v.into_iter().map(|(r, x)| (r, x * &inv)).collect();
                    pivots.insert(low, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `v - c * p` for sorted sparse vectors.
fn sub_multiple(
    v: &[(usize, BigRational)],
    c: &BigRational,
    p: &[(usize, BigRational)],
) -> Vec<(usize, BigRational)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j == p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i == v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(c * &p[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - c * &p[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `d`-th boundary matrix: rows are `(d-1)`-faces, columns `d`-faces, both
/// lexicographic. Dropping vertex `i` of a face contributes `(-1)^i`.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Result<IntMatrix, HomologyError> {
    match k.dim() {
        Some(top) if d >= 1 && d <= top => {}
        dim => return Err(HomologyError::DimensionOutOfRange { requested: d, dim }),
    }
    let lower = k.faces_unchecked(d - 1);
    let upper = k.faces_unchecked(d);
    Ok(boundary_from_faces(&lower, &upper))
}

fn boundary_from_faces(lower: &[Simplex], upper: &[Simplex]) -> IntMatrix {
    let index: HashMap<&Simplex, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = IntMatrix::zeros(lower.len(), upper.len());
    for (j, s) in upper.iter().enumerate() {
        let mut col: Vec<(usize, BigInt)> = (0..s.len())
            .map(|i| {
                let face = s.drop_vertex(i).expect("positive dimension");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (index[&face], BigInt::from(sign))
            })
            .collect();
        col.sort_by_key(|(r, _)| *r);
        m.columns[j] = col;
    }
    m
}

/// `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology groups `H_0 .. H_dim`; reduced homology lowers `H_0` by one free summand.
pub fn homology_groups(k: &SimplicialComplex, reduced: bool) -> Vec<HomologyGroup> {
    let Some(top) = k.dim() else {
        return Vec::new();
    };
    let faces: Vec<Vec<Simplex>> = (0..=top).map(|d| k.faces_unchecked(d)).collect();
    // snf[d] is the SNF of ∂_d for d in 1..=top
    let snf: Vec<Option<SnfResult>> = (0..=top)
        .map(|d| {
            (d >= 1).then(|| smith_normal_form(&boundary_from_faces(&faces[d - 1], &faces[d])))
        })
        .collect();
    (0..=top)
        .map(|d| {
            let rank_out = snf[d].as_ref().map_or(0, SnfResult::rank);
            let (rank_in, torsion) = match snf.get(d + 1) {
                Some(Some(s)) => (s.rank(), s.torsion()),
                _ => (0, Vec::new()),
            };
            let mut betti = faces[d].len() - rank_out - rank_in;
            if reduced && d == 0 {
                betti -= 1;
            }
            HomologyGroup { betti, torsion }
        })
        .collect()
}

/// Rational Betti numbers from [`rational_rank`], used as an independent check.
pub fn rational_betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let Some(top) = k.dim() else {
        return Vec::new();
    };
    let faces: Vec<Vec<Simplex>> = (0..=top).map(|d| k.faces_unchecked(d)).collect();
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|d| {
            if d == 0 || d > top {
                0
            } else {
                rational_rank(&boundary_from_faces(&faces[d - 1], &faces[d]))
            }
        })
        .collect();
    (0..=top)
        .map(|d| faces[d].len() - ranks[d] - ranks[d + 1])
        .collect()
}
