//! Abstract simplicial complexes stored as validated facet lists.
//!
//! A [`SimplicialComplex`] is determined by its facets (maximal faces). All
//! enumerations are lexicographic on sorted vertex tuples, so every derived
//! object (boundary matrices, presentations, subdivisions) is a deterministic
//! function of the facet list.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Vertex label. Labels need not be contiguous.
pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("no facets given")]
    EmptyInput,
    #[error("facet {0:?} repeats a vertex")]
    DuplicateVertexInFacet(Vec<Vertex>),
    #[error("facet {small:?} is contained in facet {large:?}")]
    NonMaximalFacet {
        small: Vec<Vertex>,
        large: Vec<Vertex>,
    },
    #[error("dimension {requested} out of range for complex of dimension {dim:?}")]
    DimensionOutOfRange {
        requested: usize,
        dim: Option<usize>,
    },
    #[error("simplex {0} is not a face of the complex")]
    SimplexNotInComplex(Simplex),
    #[error("complex is not pure")]
    NotPure,
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(Vertex),
    #[error("ridge {0} lies in more than two facets")]
    NotPseudomanifold(Simplex),
}

/// A simplex as a strictly increasing, non-empty list of vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from arbitrary-order labels.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self, ComplexError> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let original = v.clone();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertexInFacet(original));
        }
        Ok(Simplex(v))
    }

    /// Caller guarantees `v` is strictly increasing and non-empty.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        is_sorted_subset(&self.0, &other.0)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The face obtained by dropping the vertex at position `i`, or `None` for a vertex.
    pub fn drop_vertex(&self, i: usize) -> Option<Simplex> {
        if self.0.len() == 1 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    /// All non-empty faces with exactly `k + 1` vertices, lexicographic.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        if k + 1 > self.0.len() {
            return out;
        }
        let (n, r) = (self.0.len(), k + 1);
        let mut idx: Vec<usize> = (0..r).collect();
        loop {
            out.push(Simplex(idx.iter().map(|&i| self.0[i]).collect()));
            let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
                return out;
            };
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// All non-empty faces, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        (0..self.0.len())
            .flat_map(|k| self.faces_of_dim(k))
            .collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

fn is_sorted_subset(small: &[Vertex], large: &[Vertex]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut it = large.iter();
    'outer: for s in small {
        for l in it.by_ref() {
            if l == s {
                continue 'outer;
            }
            if l > s {
                return false;
            }
        }
        return false;
    }
    true
}

/// Keeps only the maximal simplices of `simplices`, sorted lexicographically.
pub(crate) fn maximalize(simplices: impl IntoIterator<Item = Simplex>) -> Vec<Simplex> {
    let mut all: Vec<Simplex> = simplices.into_iter().collect();
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    all.dedup();
    let mut covered: HashSet<Simplex> = HashSet::new();
    let mut kept = Vec::new();
    for s in all {
        if covered.contains(&s) {
            continue;
        }
        for k in 0..s.dim() {
            covered.extend(s.faces_of_dim(k));
        }
        covered.insert(s.clone());
        kept.push(s);
    }
    kept.sort();
    kept
}

/// A finite abstract simplicial complex, immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
    vertices: Vec<Vertex>,
}

impl SimplicialComplex {
    /// Builds a complex from an explicit facet table.
    ///
    /// The table must already be maximal: a listed facet that is a face of
    /// another listed facet is rejected rather than absorbed, since that
    /// signals a transcription error. Repeated facets are rejected the same
    /// way.
    pub fn new<I, F>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        let simplices = facets
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>, _>>()?;
        if simplices.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let mut sorted = simplices.clone();
        sorted.sort();
        for (i, a) in sorted.iter().enumerate() {
            for (j, b) in sorted.iter().enumerate() {
                if i != j && a.is_face_of(b) {
                    return Err(ComplexError::NonMaximalFacet {
                        small: a.0.clone(),
                        large: b.0.clone(),
                    });
                }
            }
        }
        Ok(Self::from_maximal(sorted))
    }

    /// Builds the complex generated by `simplices`, discarding non-maximal ones.
    pub fn generated_by(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        Self::from_maximal(maximalize(simplices))
    }

    /// The complex with no simplices.
    pub fn empty() -> Self {
        SimplicialComplex {
            facets: Vec::new(),
            vertices: Vec::new(),
        }
    }

    fn from_maximal(facets: Vec<Simplex>) -> Self {
        let vertices: BTreeSet<Vertex> = facets.iter().flat_map(|f| f.0.iter().copied()).collect();
        SimplicialComplex {
            facets,
            vertices: vertices.into_iter().collect(),
        }
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Maximum facet dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(Simplex::dim).max()
    }

    pub fn is_pure(&self) -> bool {
        match self.dim() {
            None => true,
            Some(d) => self.facets.iter().all(|f| f.dim() == d),
        }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    /// Lexicographically ordered `d`-faces.
    pub fn faces(&self, d: usize) -> Result<Vec<Simplex>, ComplexError> {
        match self.dim() {
            Some(top) if d <= top => Ok(self.faces_unchecked(d)),
            dim => Err(ComplexError::DimensionOutOfRange { requested: d, dim }),
        }
    }

    pub(crate) fn faces_unchecked(&self, d: usize) -> Vec<Simplex> {
        if d == 0 {
            return self.vertices.iter().map(|&v| Simplex(vec![v])).collect();
        }
        let set: BTreeSet<Simplex> = self.facets.iter().flat_map(|f| f.faces_of_dim(d)).collect();
        set.into_iter().collect()
    }

    /// Every face of every dimension, lexicographic on vertex tuples.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let set: BTreeSet<Simplex> = self.facets.iter().flat_map(|f| f.all_faces()).collect();
        set.into_iter().collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.faces_unchecked(k).len()).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Link of `sigma`: faces disjoint from it whose join with it is a face.
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(sigma) {
            return Err(ComplexError::SimplexNotInComplex(sigma.clone()));
        }
        let pieces = self
            .facets
            .iter()
            .filter(|f| sigma.is_face_of(f))
            .filter_map(|f| {
                let rest: Vec<Vertex> =
                    f.0.iter()
                        .copied()
                        .filter(|v| !sigma.contains_vertex(*v))
                        .collect();
                (!rest.is_empty()).then_some(Simplex(rest))
            });
        Ok(Self::generated_by(pieces))
    }

    /// The subcomplex generated by codimension-one faces lying in exactly one facet.
    pub fn boundary(&self) -> Result<SimplicialComplex, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        let counts = self.ridge_counts();
        Ok(Self::generated_by(
            counts.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r),
        ))
    }

    fn ridge_counts(&self) -> BTreeMap<Simplex, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.facets {
            for i in 0..f.len() {
                if let Some(r) = f.drop_vertex(i) {
                    *counts.entry(r).or_insert(0) += 1;
                }
            }
        }
        counts
    }

    /// First barycentric subdivision.
    ///
    /// New vertex `i` is the barycenter of `labels[i]`, the `i`-th face of
    /// `self` in lexicographic order.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let labels = self.all_faces();
        let index: HashMap<&Simplex, Vertex> = labels
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i as Vertex))
            .collect();
        let mut chains = Vec::new();
        for f in &self.facets {
            for perm in permutations(f.len()) {
                let mut prefix = Vec::with_capacity(f.len());
                let mut chain = Vec::with_capacity(f.len());
                for &p in &perm {
                    prefix.push(f.0[p]);
                    let mut sorted = prefix.clone();
                    sorted.sort_unstable();
                    chain.push(index[&Simplex(sorted)]);
                }
                chain.sort_unstable();
                chains.push(Simplex(chain));
            }
        }
        chains.sort();
        chains.dedup();
        let complex = Self::from_maximal(chains);
        Subdivision { complex, labels }
    }

    /// Faces of `self` spanned by vertices of `keep`, re-maximalized.
    pub fn full_subcomplex(
        &self,
        keep: &BTreeSet<Vertex>,
    ) -> Result<SimplicialComplex, ComplexError> {
        for v in keep {
            if self.vertices.binary_search(v).is_err() {
                return Err(ComplexError::UnknownVertex(*v));
            }
        }
        let pieces = self.facets.iter().filter_map(|f| {
            let rest: Vec<Vertex> = f.0.iter().copied().filter(|v| keep.contains(v)).collect();
            (!rest.is_empty()).then_some(Simplex(rest))
        });
        Ok(Self::generated_by(pieces))
    }

    /// Whether every facet of `other` is a face of `self`.
    pub fn has_subcomplex(&self, other: &SimplicialComplex) -> bool {
        other.facets.iter().all(|f| self.contains(f))
    }

    /// Connected components of the 1-skeleton, each a sorted vertex list.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = self
            .vertices
            .iter()
            .map(|&v| (v, BTreeSet::new()))
            .collect();
        for f in &self.facets {
            for &a in &f.0 {
                for &b in &f.0 {
                    if a != b {
                        adj.get_mut(&a).unwrap().insert(b);
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Tries to orient all facets coherently.
    ///
    /// Orientation is propagated from the lowest facet of each component
    /// across shared ridges. Requires a pure complex in which every ridge
    /// lies in at most two facets.
    pub fn orientability(&self) -> Result<Orientation, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        // ridge -> list of (facet index, induced sign for a +1 facet)
        let mut ridges: BTreeMap<Simplex, Vec<(usize, i8)>> = BTreeMap::new();
        for (fi, f) in self.facets.iter().enumerate() {
            for i in 0..f.len() {
                if let Some(r) = f.drop_vertex(i) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    ridges.entry(r).or_default().push((fi, sign));
                }
            }
        }
        let mut neighbours: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.facets.len()];
        for (r, inc) in &ridges {
            match inc.as_slice() {
                [_] => {}
                [(a, sa), (b, sb)] => {
                    // coherent iff s_a*sa = -s_b*sb, i.e. s_b = -s_a*sa*sb
                    neighbours[*a].push((*b, -sa * sb));
                    neighbours[*b].push((*a, -sa * sb));
                }
                _ => return Err(ComplexError::NotPseudomanifold(r.clone())),
            }
        }
        let mut signs: Vec<i8> = vec![0; self.facets.len()];
        for seed in 0..self.facets.len() {
            if signs[seed] != 0 {
                continue;
            }
            signs[seed] = 1;
            let mut queue = VecDeque::from([seed]);
            while let Some(a) = queue.pop_front() {
                for &(b, rel) in &neighbours[a] {
                    let want = signs[a] * rel;
                    if signs[b] == 0 {
                        signs[b] = want;
                        queue.push_back(b);
                    } else if signs[b] != want {
                        return Ok(Orientation {
                            orientable: false,
                            facet_signs: None,
                        });
                    }
                }
            }
        }
        let map = self.facets.iter().cloned().zip(signs).collect();
        Ok(Orientation {
            orientable: true,
            facet_signs: Some(map),
        })
    }

    /// Necessary combinatorial conditions for a closed 3-manifold.
    pub fn check_closed_3_manifold(&self) -> ManifoldReport {
        let mut report = ManifoldReport::default();
        if self.dim() != Some(3) || !self.is_pure() {
            report
                .failures
                .push(format!("not pure of dimension 3 (dim {:?})", self.dim()));
            return report;
        }
        report.pure_3 = true;

        let bad_ridges: Vec<_> = self
            .ridge_counts()
            .into_iter()
            .filter(|(_, c)| *c != 2)
            .collect();
        report.ridges_in_two_facets = bad_ridges.is_empty();
        for (r, c) in bad_ridges.iter().take(5) {
            report
                .failures
                .push(format!("triangle {r} lies in {c} facet(s)"));
        }

        let mut edges_ok = true;
        for e in self.faces_unchecked(1) {
            let lk = self.link(&e).expect("edge is a face");
            if !lk.is_cycle() {
                edges_ok = false;
                report
                    .failures
                    .push(format!("link of edge {e} is not a single cycle"));
            }
        }
        report.edge_links_cycles = edges_ok;

        let mut verts_ok = true;
        for &v in &self.vertices {
            let lk = self.link(&Simplex(vec![v])).expect("vertex is a face");
            if !lk.is_closed_surface() || lk.euler_characteristic() != 2 {
                verts_ok = false;
                report.failures.push(format!(
                    "link of vertex {v} is not a connected closed surface with euler characteristic 2 (chi = {})",
                    lk.euler_characteristic()
                ));
            }
        }
        report.vertex_links_spheres = verts_ok;

        report.connected = self.is_connected();
        if !report.connected {
            report.failures.push("complex is disconnected".to_string());
        }
        report
    }

    /// A connected 1-complex in which every vertex has degree two.
    pub fn is_cycle(&self) -> bool {
        if self.dim() != Some(1) || !self.is_pure() || !self.is_connected() {
            return false;
        }
        let mut degree: BTreeMap<Vertex, usize> = BTreeMap::new();
        for f in &self.facets {
            for &v in &f.0 {
                *degree.entry(v).or_insert(0) += 1;
            }
        }
        degree.values().all(|&d| d == 2)
    }

    /// A connected pure 2-complex whose vertex links are all cycles.
    pub fn is_closed_surface(&self) -> bool {
        if self.dim() != Some(2) || !self.is_pure() || !self.is_connected() {
            return false;
        }
        self.vertices.iter().all(|&v| {
            self.link(&Simplex(vec![v]))
                .map(|l| l.is_cycle())
                .unwrap_or(false)
        })
    }

    /// Serializes in the `sc v1` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("sc v1\n");
        match self.dim() {
            Some(d) => out.push_str(&format!("dim {d}\n")),
            None => out.push_str("dim -1\n"),
        }
        for f in &self.facets {
            out.push('f');
            for v in &f.0 {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `sc v1` text format.
    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut header_seen = false;
        let mut declared_dim: Option<i64> = None;
        let mut facets: Vec<(usize, Vec<Vertex>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| ParseError {
                line: line_no,
                message: msg,
            };
            if !header_seen {
                if line != "sc v1" {
                    return Err(err(format!("expected header `sc v1`, found `{line}`")));
                }
                header_seen = true;
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("dim") if declared_dim.is_none() => {
                    let d = words
                        .next()
                        .and_then(|w| w.parse::<i64>().ok())
                        .filter(|d| *d >= -1)
                        .ok_or_else(|| err("malformed dim line".into()))?;
                    if words.next().is_some() {
                        return Err(err("trailing tokens after dim".into()));
                    }
                    declared_dim = Some(d);
                }
                Some("f") => {
                    let d = declared_dim.ok_or_else(|| err("facet before dim line".into()))?;
                    let verts = words
                        .map(|w| w.parse::<Vertex>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| err(format!("bad vertex label: {e}")))?;
                    if verts.is_empty() {
                        return Err(err("empty facet".into()));
                    }
                    if verts.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(err("facet vertices must be strictly increasing".into()));
                    }
                    if verts.len() as i64 > d + 1 {
                        return Err(err(format!("facet has more than {} vertices", d + 1)));
                    }
                    facets.push((line_no, verts));
                }
                Some(other) => return Err(err(format!("unexpected record `{other}`"))),
                None => unreachable!(),
            }
        }
        if !header_seen {
            return Err(ParseError {
                line: 0,
                message: "missing `sc v1` header".into(),
            });
        }
        let d = declared_dim.ok_or(ParseError {
            line: 0,
            message: "missing dim line".into(),
        })?;
        if facets.is_empty() {
            if d == -1 {
                return Ok(Self::empty());
            }
            return Err(ParseError {
                line: 0,
                message: "no facets".into(),
            });
        }
        let actual = facets
            .iter()
            .map(|(_, f)| f.len() as i64 - 1)
            .max()
            .unwrap();
        if actual != d {
            return Err(ParseError {
                line: 0,
                message: format!("declared dim {d} but largest facet has dim {actual}"),
            });
        }
        let lines: Vec<usize> = facets.iter().map(|(l, _)| *l).collect();
        Self::new(facets.into_iter().map(|(_, f)| f)).map_err(|e| {
            let line = match &e {
                ComplexError::NonMaximalFacet { small, .. } => {
                    let pos = text_facet_line(text, small);
                    pos.unwrap_or(lines[0])
                }
                _ => lines[0],
            };
            ParseError {
                line,
                message: e.to_string(),
            }
        })
    }
}

fn text_facet_line(text: &str, facet: &[Vertex]) -> Option<usize> {
    let want: String = std::iter::once("f".to_string())
        .chain(facet.iter().map(|v| v.to_string()))
        .collect::<Vec<_>>()
        .join(" ");
    text.lines()
        .position(|l| l.split_whitespace().collect::<Vec<_>>().join(" ") == want)
        .map(|i| i + 1)
}

/// Parse failure with a 1-based line number (0 when not tied to a line).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Result of [`SimplicialComplex::barycentric_subdivision`].
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// `labels[v]` is the face of the original complex whose barycenter is `v`.
    pub labels: Vec<Simplex>,
}

impl Subdivision {
    pub fn label_of(&self, face: &Simplex) -> Option<Vertex> {
        self.labels.binary_search(face).ok().map(|i| i as Vertex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub orientable: bool,
    pub facet_signs: Option<BTreeMap<Simplex, i8>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ManifoldReport {
    pub pure_3: bool,
    pub ridges_in_two_facets: bool,
    pub edge_links_cycles: bool,
    pub vertex_links_spheres: bool,
    pub connected: bool,
    pub failures: Vec<String>,
}

impl ManifoldReport {
    pub fn passed(&self) -> bool {
        self.pure_3
            && self.ridges_in_two_facets
            && self.edge_links_cycles
            && self.vertex_links_spheres
            && self.connected
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}
