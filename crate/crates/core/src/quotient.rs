//! Vertex-map quotients, isomorphism search, and the explicit complexes of
//! the triangulated prism and its quotient.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{ComplexError, ParseError, Simplex, SimplicialComplex, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("vertex map is undefined on vertex {0}")]
    NotTotal(Vertex),
    #[error("facet {facet} degenerates: two of its vertices map to {image}")]
    DegenerateFacet { facet: Simplex, image: Vertex },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A total map between finite vertex label sets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VertexMap {
    entries: BTreeMap<Vertex, Vertex>,
}

impl VertexMap {
    pub fn new(entries: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        VertexMap {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn identity(domain: impl IntoIterator<Item = Vertex>) -> Self {
        Self::new(domain.into_iter().map(|v| (v, v)))
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.entries.get(&v).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.entries.iter().map(|(a, b)| (*a, *b))
    }

    /// `other ∘ self`, defined where `self`'s image lies in `other`'s domain.
    pub fn then(&self, other: &VertexMap) -> Result<VertexMap, QuotientError> {
        self.entries
            .iter()
            .map(|(&a, &b)| {
                other
                    .get(b)
                    .map(|c| (a, c))
                    .ok_or(QuotientError::NotTotal(b))
            })
            .collect::<Result<BTreeMap<_, _>, _>>()
            .map(|entries| VertexMap { entries })
    }

    /// `vm v1` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("vm v1\n");
        for (a, b) in &self.entries {
            out.push_str(&format!("m {a} {b}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<VertexMap, ParseError> {
        let mut header = false;
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| ParseError {
                line: i + 1,
                message: m.to_string(),
            };
            if !header {
                if line != "vm v1" {
                    return Err(err("expected header `vm v1`"));
                }
                header = true;
                continue;
            }
            let w: Vec<&str> = line.split_whitespace().collect();
            match w.as_slice() {
                ["m", a, b] => {
                    let a: Vertex = a.parse().map_err(|_| err("bad source label"))?;
                    let b: Vertex = b.parse().map_err(|_| err("bad target label"))?;
                    if entries.insert(a, b).is_some() {
                        return Err(err("source label mapped twice"));
                    }
                }
                _ => return Err(err("expected `m <src> <dst>`")),
            }
        }
        if !header {
            return Err(ParseError {
                line: 0,
                message: "missing `vm v1` header".into(),
            });
        }
        Ok(VertexMap { entries })
    }
}

/// Image of a complex under a vertex map.
#[derive(Clone, Debug)]
pub struct MappedComplex {
    pub complex: SimplicialComplex,
    /// Each source facet paired with its image simplex, in source order.
    pub facet_images: Vec<(Simplex, Simplex)>,
}

impl MappedComplex {
    /// Whether distinct source facets have distinct images that are all facets of the result.
    pub fn facet_map_is_bijective(&self) -> bool {
        let images: BTreeSet<&Simplex> = self.facet_images.iter().map(|(_, i)| i).collect();
        images.len() == self.facet_images.len()
            && images.len() == self.complex.facets().len()
            && self.complex.facets().iter().all(|f| images.contains(f))
    }
}

/// Applies `f` to every facet of `k`; rejects maps that collapse a facet.
pub fn apply_vertex_map(
    k: &SimplicialComplex,
    f: &VertexMap,
) -> Result<MappedComplex, QuotientError> {
    let mut facet_images = Vec::with_capacity(k.facets().len());
    for facet in k.facets() {
        let mut image = Vec::with_capacity(facet.len());
        for &v in facet.vertices() {
            image.push(f.get(v).ok_or(QuotientError::NotTotal(v))?);
        }
        image.sort_unstable();
        if let Some(w) = image.windows(2).find(|w| w[0] == w[1]) {
            return Err(QuotientError::DegenerateFacet {
                facet: facet.clone(),
                image: w[0],
            });
        }
        facet_images.push((facet.clone(), Simplex::from_sorted(image)));
    }
    let complex = SimplicialComplex::generated_by(facet_images.iter().map(|(_, i)| i.clone()));
    Ok(MappedComplex {
        complex,
        facet_images,
    })
}

/// Searches for a vertex bijection carrying the facets of `a` onto those of `b`.
///
/// Backtracking over vertices of `a` in decreasing degree order; candidates
/// must match facet degree and link f-vector, and partial assignments are
/// pruned whenever a facet of `a` whose vertices are all assigned does not
/// map to a facet of `b`.
pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<VertexMap> {
    if a.vertices().len() != b.vertices().len()
        || a.facets().len() != b.facets().len()
        || a.f_vector() != b.f_vector()
    {
        return None;
    }
    let signature = |k: &SimplicialComplex, v: Vertex| {
        let s = Simplex::new([v]).unwrap();
        let deg = k.facets().iter().filter(|f| f.contains_vertex(v)).count();
        let lk = k.link(&s).unwrap();
        (deg, lk.f_vector())
    };
    let sig_a: BTreeMap<Vertex, _> = a.vertices().iter().map(|&v| (v, signature(a, v))).collect();
    let sig_b: BTreeMap<Vertex, _> = b.vertices().iter().map(|&v| (v, signature(b, v))).collect();
    let mut order: Vec<Vertex> = a.vertices().to_vec();
    order.sort_by_key(|v| (std::cmp::Reverse(sig_a[v].0), *v));

    let facets_b: BTreeSet<&Simplex> = b.facets().iter().collect();
    let mut assign: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut used: BTreeSet<Vertex> = BTreeSet::new();

    fn consistent(
        a: &SimplicialComplex,
        facets_b: &BTreeSet<&Simplex>,
        assign: &BTreeMap<Vertex, Vertex>,
        v: Vertex,
    ) -> bool {
        a.facets().iter().filter(|f| f.contains_vertex(v)).all(|f| {
            let img: Option<Vec<Vertex>> = f
                .vertices()
                .iter()
                .map(|x| assign.get(x).copied())
                .collect();
            match img {
                Some(img) => Simplex::new(img)
                    .map(|s| facets_b.contains(&s))
                    .unwrap_or(false),
                None => true,
            }
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        depth: usize,
        order: &[Vertex],
        a: &SimplicialComplex,
        b: &SimplicialComplex,
        facets_b: &BTreeSet<&Simplex>,
        sig_a: &BTreeMap<Vertex, (usize, Vec<usize>)>,
        sig_b: &BTreeMap<Vertex, (usize, Vec<usize>)>,
        assign: &mut BTreeMap<Vertex, Vertex>,
        used: &mut BTreeSet<Vertex>,
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for &w in b.vertices() {
            if used.contains(&w) || sig_a[&v] != sig_b[&w] {
                continue;
            }
            assign.insert(v, w);
            used.insert(w);
            if consistent(a, facets_b, assign, v)
                && search(depth + 1, order, a, b, facets_b, sig_a, sig_b, assign, used)
            {
                return true;
            }
            assign.remove(&v);
            used.remove(&w);
        }
        false
    }

    search(
        0,
        &order,
        a,
        b,
        &facets_b,
        &sig_a,
        &sig_b,
        &mut assign,
        &mut used,
    )
    .then(|| VertexMap::new(assign))
}

/// The triangulated prism: 12 vertices, 19 tetrahedra.
pub fn prism_complex() -> SimplicialComplex {
    SimplicialComplex::new(PRISM_FACETS).expect("prism table is a valid complex")
}

/// The 8-vertex, 19-facet Barnette sphere.
pub fn barnette_complex() -> SimplicialComplex {
    SimplicialComplex::new(BARNETTE_FACETS).expect("Barnette table is a valid complex")
}

/// The Möbius band spanned by the two-point stratum in the quotient.
pub fn mobius_complex() -> SimplicialComplex {
    SimplicialComplex::new(MOBIUS_FACETS).expect("Möbius table is a valid complex")
}

/// The six-edge cycle of the one-point stratum.
pub fn knot_cycle_complex() -> SimplicialComplex {
    SimplicialComplex::new(KNOT_EDGES).expect("knot table is a valid complex")
}

/// Facet table of the triangulated prism, in table order.
pub const PRISM_FACETS: [[Vertex; 4]; 19] = [
    [4, 5, 7, 9],
    [5, 6, 7, 10],
    [4, 6, 7, 8],
    [4, 7, 8, 9],
    [5, 7, 9, 10],
    [6, 7, 8, 10],
    [4, 1, 8, 9],
    [5, 2, 9, 10],
    [0, 6, 8, 10],
    [0, 8, 10, 11],
    [1, 8, 9, 11],
    [2, 9, 10, 11],
    [0, 1, 8, 11],
    [1, 2, 9, 11],
    [0, 2, 10, 11],
    [7, 8, 9, 10],
    [8, 9, 10, 11],
    [0, 1, 2, 11],
    [0, 1, 2, 3],
];

/// Facet table of the Barnette sphere, in table order.
pub const BARNETTE_FACETS: [[Vertex; 4]; 19] = [
    [0, 1, 3, 9],
    [1, 2, 3, 10],
    [0, 2, 3, 8],
    [0, 3, 8, 9],
    [1, 3, 9, 10],
    [2, 3, 8, 10],
    [0, 1, 8, 9],
    [1, 2, 9, 10],
    [0, 2, 8, 10],
    [0, 8, 10, 11],
    [1, 8, 9, 11],
    [2, 9, 10, 11],
    [0, 1, 8, 11],
    [1, 2, 9, 11],
    [0, 2, 10, 11],
    [3, 8, 9, 10],
    [8, 9, 10, 11],
    [0, 1, 2, 11],
    [0, 1, 2, 3],
];

pub const MOBIUS_FACETS: [[Vertex; 3]; 6] = [
    [0, 1, 8],
    [0, 2, 8],
    [0, 1, 9],
    [1, 2, 9],
    [0, 2, 10],
    [1, 2, 10],
];

pub const KNOT_EDGES: [[Vertex; 2]; 6] = [[1, 8], [2, 8], [0, 9], [2, 9], [0, 10], [1, 10]];

/// The folding map from prism labels to sphere labels: `4..=7` drop by four.
pub fn q_map() -> VertexMap {
    VertexMap::new((0..12).map(|i| (i, if (4..=7).contains(&i) { i - 4 } else { i })))
}

/// Two boundary triangles of the prism glued affinely, vertex to vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentificationPair {
    pub source: [Vertex; 3],
    pub target: [Vertex; 3],
}

impl IdentificationPair {
    /// `source[i]` is glued to `target[i]`.
    pub fn correspondence(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.source.iter().copied().zip(self.target.iter().copied())
    }
}

/// The four triangle gluings of the prism boundary.
///
/// Correspondences are positional: the bottom goes to the top by
/// `0↦4, 1↦5, 2↦6`, and each side pair fixes its shared edge.
pub fn lemma_identification_pairs() -> Vec<IdentificationPair> {
    vec![
        IdentificationPair {
            source: [0, 1, 2],
            target: [4, 5, 6],
        },
        IdentificationPair {
            source: [0, 1, 6],
            target: [4, 1, 6],
        },
        IdentificationPair {
            source: [1, 2, 4],
            target: [5, 2, 4],
        },
        IdentificationPair {
            source: [2, 0, 5],
            target: [6, 0, 5],
        },
    ]
}
