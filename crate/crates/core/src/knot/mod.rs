//! Knot groups from complexes: edge-path presentations, Tietze simplification,
//! knot complements, Alexander polynomials and symmetric-group representations.

mod alexander;
mod complement;
mod laurent;
mod pipeline;
mod s3;
mod tietze;

pub use alexander::{
    abelianization_invariants, alexander_polynomial, alexander_polynomial_deleting, fox_matrix,
    Abelianization, DEFAULT_GENERATOR_CAP,
};
pub use complement::knot_complement_complex;
pub use laurent::LaurentPolynomial;
pub use pipeline::{knot_pipeline, KnotReport, StageError};
pub use s3::exists_nonabelian_s3_rep;
pub use tietze::{tietze_simplify, TietzeOutcome, DEFAULT_BUDGET, MAX_ELIMINATION_LENGTH};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::complex::{ComplexError, ParseError, SimplicialComplex, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("complex is disconnected")]
    Disconnected,
    #[error("base vertex {0} is not in the complex")]
    UnknownBase(Vertex),
    #[error("knot is not a subcomplex of the ambient complex")]
    NotSubcomplex,
    #[error("ambient complex fails the closed 3-manifold check: {0}")]
    NotClosed3Manifold(String),
    #[error("knot must be a non-empty 1-dimensional complex")]
    InvalidKnot,
    #[error("abelianization is not infinite cyclic (rank {rank}, torsion {torsion:?})")]
    AbelianizationNotZ { rank: usize, torsion: Vec<String> },
    #[error("{generators} generators exceed the cap of {cap}; raise the Tietze budget")]
    MatrixTooLarge { generators: usize, cap: usize },
    #[error("{0} generators exceed the limit of 6 for exhaustive search")]
    TooManyGenerators(usize),
    #[error("column {0} is not a valid deletion (generator out of range or zero exponent)")]
    InvalidColumn(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A word in the free group: `+k` is generator `k` (1-based), `-k` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    /// Builds a freely reduced word. Panics on a zero letter.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = Word(Vec::new());
        for l in letters {
            assert!(l != 0, "zero letter in word");
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter with free cancellation.
    pub fn push(&mut self, l: i32) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn extend(&mut self, other: &Word) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Removes cancelling first/last letter pairs.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = 0;
        let mut e = self.0.len();
        while e - s >= 2 && self.0[s] == -self.0[e - 1] {
            s += 1;
            e -= 1;
        }
        Word(self.0[s..e].to_vec())
    }

    /// Smallest rotation of the word or its inverse; identifies relators
    /// that define the same normal closure trivially.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        let inv = w.inverse();
        let n = w.0.len();
        let mut best = w.0.clone();
        for cand in [&w.0, &inv.0] {
            for r in 0..n {
                let rot: Vec<i32> = cand[r..].iter().chain(&cand[..r]).copied().collect();
                if rot < best {
                    best = rot;
                }
            }
        }
        Word(best)
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .map(|&l| {
                if l.unsigned_abs() as usize == generator {
                    l.signum() as i64
                } else {
                    0
                }
            })
            .sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Presentation {
    pub n_generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Validates that every letter names a generator.
    pub fn new(n_generators: usize, relators: Vec<Word>) -> Result<Self, ParseError> {
        for (i, r) in relators.iter().enumerate() {
            if let Some(l) =
                r.0.iter()
                    .find(|l| l.unsigned_abs() as usize > n_generators)
            {
                return Err(ParseError {
                    line: 0,
                    message: format!(
                        "relator {i} uses generator {l} but only {n_generators} exist"
                    ),
                });
            }
        }
        Ok(Presentation {
            n_generators,
            relators,
        })
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// `gp v1` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("gp v1\ngens {}\n", self.n_generators);
        for r in &self.relators {
            if r.is_empty() {
                out.push_str("r\n");
            } else {
                out.push_str(&format!("r {r}\n"));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut header = false;
        let mut gens: Option<usize> = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: String| ParseError {
                line: i + 1,
                message: m,
            };
            if !header {
                if line != "gp v1" {
                    return Err(err("expected header `gp v1`".into()));
                }
                header = true;
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("gens") if gens.is_none() => {
                    let n = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err("malformed gens line".into()))?;
                    gens = Some(n);
                }
                Some("r") => {
                    let n = gens.ok_or_else(|| err("relator before gens line".into()))?;
                    let mut letters = Vec::new();
                    for w in words {
                        let l: i32 = w.parse().map_err(|_| err(format!("bad letter `{w}`")))?;
                        if l == 0 || l.unsigned_abs() as usize > n {
                            return Err(err(format!("letter {l} out of range")));
                        }
                        letters.push(l);
                    }
                    relators.push(Word::new(letters));
                }
                Some(other) => return Err(err(format!("unexpected record `{other}`"))),
                None => unreachable!(),
            }
        }
        if !header {
            return Err(ParseError {
                line: 0,
                message: "missing `gp v1` header".into(),
            });
        }
        let n = gens.ok_or(ParseError {
            line: 0,
            message: "missing gens line".into(),
        })?;
        Ok(Presentation {
            n_generators: n,
            relators,
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{} generators | {} relators>",
            self.n_generators,
            self.relators.len()
        )
    }
}

/// Edge-path presentation of the fundamental group of a connected complex.
///
/// A breadth-first spanning tree of the 1-skeleton is grown from `base`,
/// visiting neighbours in label order. Every other edge becomes a generator
/// (numbered in lexicographic edge order) and every triangle `<a,b,c>`
/// contributes the relator `g(a,b) g(b,c) g(a,c)^-1`.
pub fn edge_path_presentation(
    k: &SimplicialComplex,
    base: Vertex,
) -> Result<Presentation, KnotError> {
    if k.vertices().binary_search(&base).is_err() {
        return Err(KnotError::UnknownBase(base));
    }
    if !k.is_connected() {
        return Err(KnotError::Disconnected);
    }
    let edges = if k.dim().unwrap_or(0) >= 1 {
        k.faces_unchecked(1)
    } else {
        Vec::new()
    };
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for e in &edges {
        let [a, b] = [e.vertices()[0], e.vertices()[1]];
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut tree: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut seen = BTreeSet::from([base]);
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for &w in adj.get(&v).into_iter().flatten() {
            if seen.insert(w) {
                tree.insert((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }
    let mut generator: BTreeMap<(Vertex, Vertex), i32> = BTreeMap::new();
    for e in &edges {
        let key = (e.vertices()[0], e.vertices()[1]);
        if !tree.contains(&key) {
            let id = generator.len() as i32 + 1;
            generator.insert(key, id);
        }
    }
    let mut relators = Vec::new();
    if k.dim().unwrap_or(0) >= 2 {
        for t in k.faces_unchecked(2) {
            let [a, b, c] = [t.vertices()[0], t.vertices()[1], t.vertices()[2]];
            let mut w = Word::default();
            if let Some(&g) = generator.get(&(a, b)) {
                w.push(g);
            }
            if let Some(&g) = generator.get(&(b, c)) {
                w.push(g);
            }
            if let Some(&g) = generator.get(&(a, c)) {
                w.push(-g);
            }
            let w = w.cyclically_reduced();
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    Ok(Presentation {
        n_generators: generator.len(),
        relators,
    })
}
