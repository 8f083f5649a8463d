//! Exact rational model of the prism chart for three-point subsets of the circle.
//!
//! A point of the circle is an element of `[0, 1)` read as an angle in full
//! turns, so equality of circle points is equality of rationals mod 1.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::Vertex;
use crate::quotient::{lemma_identification_pairs, q_map};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("no points given")]
    EmptyInput,
    #[error("at most three points allowed, got {0}")]
    TooMany(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(p: [(i64, i64); 3]) -> Self {
        Point3::new(
            rat(p[0].0, p[0].1),
            rat(p[1].0, p[1].1),
            rat(p[2].0, p[2].1),
        )
    }

    fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// `sum_i w_i * p_i`.
    pub fn affine_combination(weights: &[Rational], points: &[&Point3]) -> Point3 {
        let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (w, p) in weights.iter().zip(points) {
            for (o, c) in out.iter_mut().zip(p.coords()) {
                *o += w * c;
            }
        }
        let [x, y, z] = out;
        Point3 { x, y, z }
    }

    pub fn midpoint(a: &Point3, b: &Point3) -> Point3 {
        let half = rat(1, 2);
        Point3::affine_combination(&[half.clone(), half], &[a, b])
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A non-empty set of at most three circle points, as sorted rationals in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleSubset(Vec<Rational>);

impl CircleSubset {
    pub fn elements(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CircleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Representative of `r` in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

/// Canonical subset formed by 1 to 3 angles.
pub fn pi_map(points: &[Rational]) -> Result<CircleSubset, GeometryError> {
    match points.len() {
        0 => Err(GeometryError::EmptyInput),
        n if n > 3 => Err(GeometryError::TooMany(n)),
        _ => {
            let mut v: Vec<Rational> = points.iter().map(frac).collect();
            v.sort();
            v.dedup();
            Ok(CircleSubset(v))
        }
    }
}

/// The subset `{x, y, z}` of the circle.
pub fn p_map(pt: &Point3) -> CircleSubset {
    pi_map(&[pt.x.clone(), pt.y.clone(), pt.z.clone()]).expect("three points")
}

/// `x ≤ y ≤ z ≤ x + 1` and `0 ≤ x + y + z ≤ 1`.
pub fn in_p(pt: &Point3) -> bool {
    let Point3 { x, y, z } = pt;
    let one = Rational::one();
    let sum = x + y + z;
    x <= y && y <= z && *z <= x + &one && !sum.is_negative() && sum <= one
}

/// Points of `P` with a repeated circle point.
pub fn in_s(pt: &Point3) -> bool {
    let Point3 { x, y, z } = pt;
    in_p(pt) && (x == y || y == z || *z == x + Rational::one())
}

/// Points of `P` whose three circle points coincide.
pub fn in_d(pt: &Point3) -> bool {
    let Point3 { x, y, z } = pt;
    let one = Rational::one();
    in_p(pt) && ((x == y && y == z) || (x == y && *y == z - &one) || (x + &one == *y && y == z))
}

/// Coordinates of the twelve vertices of the triangulated prism.
///
/// Vertices 0, 1, 2 (bottom) and 4, 5, 6 (top) are the prism corners; 3 and 7
/// are the barycenters of bottom and top, 8, 9, 10 are midpoints of the
/// lateral edges 1–6, 2–4, 0–5, and 11 is the centroid of the six corners.
pub fn prism_vertex_coordinates() -> BTreeMap<Vertex, Point3> {
    let corners: BTreeMap<Vertex, Point3> = [
        (0, Point3::from_ints([(0, 1), (0, 1), (0, 1)])),
        (1, Point3::from_ints([(-2, 3), (1, 3), (1, 3)])),
        (2, Point3::from_ints([(-1, 3), (-1, 3), (2, 3)])),
        (4, Point3::from_ints([(0, 1), (0, 1), (1, 1)])),
        (5, Point3::from_ints([(1, 3), (1, 3), (1, 3)])),
        (6, Point3::from_ints([(-1, 3), (2, 3), (2, 3)])),
    ]
    .into_iter()
    .collect();
    let third = rat(1, 3);
    let sixth = rat(1, 6);
    let c = |v: Vertex| &corners[&v];
    let mut out = corners.clone();
    out.insert(
        3,
        Point3::affine_combination(
            &[third.clone(), third.clone(), third.clone()],
            &[c(0), c(1), c(2)],
        ),
    );
    out.insert(
        7,
        Point3::affine_combination(&[third.clone(), third.clone(), third], &[c(4), c(5), c(6)]),
    );
    out.insert(8, Point3::midpoint(c(1), c(6)));
    out.insert(9, Point3::midpoint(c(2), c(4)));
    out.insert(10, Point3::midpoint(c(0), c(5)));
    let all: Vec<&Point3> = [0, 1, 2, 4, 5, 6].iter().map(|v| c(*v)).collect();
    out.insert(11, Point3::affine_combination(&vec![sixth; 6], &all));
    out
}

/// Outcome of an exact sampling check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SamplingReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SamplingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        // keep reports bounded on badly broken inputs
        if self.failures.len() < 32 {
            self.failures.push(msg);
        }
    }
}

/// Barycentric weights `(i/n, j/n, k/n)` with `i + j + k = n`.
pub fn barycentric_grid(n: u32) -> Vec<[Rational; 3]> {
    let n = i64::from(n);
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            out.push([rat(i, n), rat(j, n), rat(n - i - j, n)]);
        }
    }
    out
}

/// Checks each triangle gluing on a barycentric grid of resolution `n`:
/// corresponding affine points must have the same image under [`p_map`].
pub fn verify_lemma_identifications(n: u32) -> Vec<(String, SamplingReport)> {
    let coords = prism_vertex_coordinates();
    let grid = barycentric_grid(n.max(1));
    lemma_identification_pairs()
        .into_iter()
        .map(|pair| {
            let src: Vec<&Point3> = pair.source.iter().map(|v| &coords[v]).collect();
            let dst: Vec<&Point3> = pair.target.iter().map(|v| &coords[v]).collect();
            let mut report = SamplingReport::default();
            for w in &grid {
                let a = Point3::affine_combination(w, &src);
                let b = Point3::affine_combination(w, &dst);
                report.checked += 1;
                let (pa, pb) = (p_map(&a), p_map(&b));
                if pa != pb {
                    report.fail(format!("{a} -> {pa} but {b} -> {pb}"));
                }
            }
            let name = format!(
                "<{},{},{}>~<{},{},{}>",
                pair.source[0],
                pair.source[1],
                pair.source[2],
                pair.target[0],
                pair.target[1],
                pair.target[2]
            );
            (name, report)
        })
        .collect()
}

/// Stratification counts from [`verify_stratification`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StratificationReport {
    pub sampling: SamplingReport,
    pub in_p: usize,
    pub in_s: usize,
    pub in_d: usize,
    /// Interior points off `S` with pairwise distinct images.
    pub open_cell_points: usize,
}

/// Samples the grid `(a/n, b/n, c/n)` over the bounding box of `P`, checking
/// `|p| ≤ 2 ⇔ S` and `|p| = 1 ⇔ D` on `P`, and injectivity of `p` on the
/// open cell `P° \ S`.
pub fn verify_stratification(n: u32) -> StratificationReport {
    let n = i64::from(n.max(1));
    let mut report = StratificationReport::default();
    let mut open_images: BTreeMap<CircleSubset, Point3> = BTreeMap::new();
    // x ∈ [-2/3, 1/3], y ∈ [-1/3, 2/3], z ∈ [0, 1]
    let range = |lo_num: i64, hi_num: i64| {
        let lo = (lo_num * n).div_euclid(3);
        let hi = (hi_num * n + 2).div_euclid(3);
        lo..=hi
    };
    for a in range(-2, 1) {
        for b in range(-1, 2) {
            for c in 0..=n {
                let pt = Point3::new(rat(a, n), rat(b, n), rat(c, n));
                if !in_p(&pt) {
                    continue;
                }
                report.in_p += 1;
                report.sampling.checked += 1;
                let img = p_map(&pt);
                let (s, d) = (in_s(&pt), in_d(&pt));
                report.in_s += usize::from(s);
                report.in_d += usize::from(d);
                if (img.len() <= 2) != s {
                    report
                        .sampling
                        .fail(format!("{pt}: |p| = {} but in_S = {s}", img.len()));
                }
                if (img.len() == 1) != d {
                    report
                        .sampling
                        .fail(format!("{pt}: |p| = {} but in_D = {d}", img.len()));
                }
                if !s && strictly_interior(&pt) {
                    report.open_cell_points += 1;
                    if let Some(other) = open_images.insert(img.clone(), pt.clone()) {
                        report
                            .sampling
                            .fail(format!("{pt} and {other} both map to {img}"));
                    }
                }
            }
        }
    }
    report
}

fn strictly_interior(pt: &Point3) -> bool {
    let Point3 { x, y, z } = pt;
    let one = Rational::one();
    let sum = x + y + z;
    x < y && y < z && *z < x + &one && sum.is_positive() && sum < one
}

/// Per-vertex agreement of `p` with the folding map `q`, plus stratum sizes.
pub fn verify_vertex_q_consistency() -> SamplingReport {
    let coords = prism_vertex_coordinates();
    let q = q_map();
    let mut report = SamplingReport::default();
    for (&v, pt) in &coords {
        report.checked += 1;
        let img = p_map(pt);
        let qv = q.get(v).expect("q is total on prism vertices");
        let qimg = p_map(&coords[&qv]);
        if img != qimg {
            report.fail(format!("p(v{v}) = {img} but p(v{qv}) = {qimg}"));
        }
        let expected = if matches!(v, 3 | 7 | 11) { 3 } else { 1 };
        if img.len() != expected {
            report.fail(format!(
                "p(v{v}) = {img} has {} points, expected {expected}",
                img.len()
            ));
        }
    }
    report
}

fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn fmt_point(p: &Point3) -> String {
    format!(
        "{} {} {}",
        fmt_rational(&p.x),
        fmt_rational(&p.y),
        fmt_rational(&p.z)
    )
}

/// OFF mesh of the untriangulated prism with exact `num/den` coordinates.
///
/// The six corners are written in label order 0, 1, 2, 4, 5, 6; the two end
/// triangles and three lateral quads are emitted as triangles, quads split as
/// a fan from their lowest label.
pub fn prism_off() -> String {
    let coords = prism_vertex_coordinates();
    let labels: [Vertex; 6] = [0, 1, 2, 4, 5, 6];
    let index = |v: Vertex| labels.iter().position(|&l| l == v).unwrap();
    // boundary cycles
    let polygons: [&[Vertex]; 5] = [
        &[0, 1, 2],
        &[4, 5, 6],
        &[0, 1, 6, 5],
        &[1, 2, 4, 6],
        &[0, 2, 4, 5],
    ];
    let mut tris = Vec::new();
    for poly in polygons {
        let start = (0..poly.len()).min_by_key(|&i| poly[i]).unwrap();
        let rot: Vec<Vertex> = (0..poly.len())
            .map(|k| poly[(start + k) % poly.len()])
            .collect();
        for k in 1..rot.len() - 1 {
            tris.push([rot[0], rot[k], rot[k + 1]]);
        }
    }
    let mut out = format!("OFF\n{} {} 0\n", labels.len(), tris.len());
    for v in labels {
        out.push_str(&fmt_point(&coords[&v]));
        out.push('\n');
    }
    for t in tris {
        out.push_str(&format!(
            "3 {} {} {}\n",
            index(t[0]),
            index(t[1]),
            index(t[2])
        ));
    }
    out
}

/// The three segments making up `D`, one `s` line per segment.
pub fn d_polyline() -> String {
    let coords = prism_vertex_coordinates();
    let mut out = String::from("polyline v1\nsegments 3\n");
    for (a, b) in [(0, 5), (1, 6), (2, 4)] {
        out.push_str(&format!(
            "s {a} {b} {} {}\n",
            fmt_point(&coords[&a]),
            fmt_point(&coords[&b])
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn origin_is_in_every_stratum() {
        let o = Point3::from_ints([(0, 1), (0, 1), (0, 1)]);
        assert!(in_p(&o) && in_s(&o) && in_d(&o));
    }

    #[test]
    fn generic_point_off_s() {
        let pt = Point3::from_ints([(-1, 3), (0, 1), (1, 3)]);
        assert!(in_p(&pt));
        assert!(!in_s(&pt));
        assert_eq!(
            p_map(&pt).elements(),
            set(&[(0, 1), (1, 3), (2, 3)]).as_slice()
        );
    }

    #[test]
    fn diagonal_point_in_d() {
        let pt = Point3::from_ints([(1, 6), (1, 6), (1, 6)]);
        assert!(in_d(&pt));
        assert_eq!(p_map(&pt).len(), 1);
        let s_only = Point3::from_ints([(0, 1), (0, 1), (1, 2)]);
        assert!(in_s(&s_only) && !in_d(&s_only));
        assert_eq!(p_map(&s_only).len(), 2);
    }

    #[test]
    fn p_on_corners() {
        assert_eq!(
            p_map(&Point3::from_ints([(0, 1), (0, 1), (1, 1)])).elements(),
            set(&[(0, 1)]).as_slice()
        );
        assert_eq!(
            p_map(&Point3::from_ints([(-2, 3), (1, 3), (1, 3)])).elements(),
            set(&[(1, 3)]).as_slice()
        );
    }

    #[test]
    fn pi_canonical_form() {
        assert_eq!(
            pi_map(&set(&[(1, 2), (1, 2), (1, 2)])).unwrap().elements(),
            set(&[(1, 2)]).as_slice()
        );
        assert_eq!(
            pi_map(&set(&[(0, 1), (1, 1), (2, 1)])).unwrap().elements(),
            set(&[(0, 1)]).as_slice()
        );
        assert_eq!(
            pi_map(&set(&[(2, 3), (1, 3), (0, 1)])).unwrap().elements(),
            set(&[(0, 1), (1, 3), (2, 3)]).as_slice()
        );
        assert_eq!(pi_map(&[]), Err(GeometryError::EmptyInput));
        assert_eq!(pi_map(&set(&[(0, 1); 4])), Err(GeometryError::TooMany(4)));
    }

    #[test]
    fn derived_vertices() {
        let c = prism_vertex_coordinates();
        assert_eq!(c.len(), 12);
        assert_eq!(c[&5], Point3::from_ints([(1, 3), (1, 3), (1, 3)]));
        assert_eq!(c[&3], Point3::from_ints([(-1, 3), (0, 1), (1, 3)]));
        assert_eq!(c[&7], Point3::from_ints([(0, 1), (1, 3), (2, 3)]));
        assert_eq!(c[&8], Point3::from_ints([(-1, 2), (1, 2), (1, 2)]));
        assert_eq!(c[&9], Point3::from_ints([(-1, 6), (-1, 6), (5, 6)]));
        assert_eq!(c[&10], Point3::from_ints([(1, 6), (1, 6), (1, 6)]));
        assert_eq!(c[&11], Point3::from_ints([(-1, 6), (1, 6), (1, 2)]));
        assert!(in_p(&c[&11]) && !in_s(&c[&11]));
        assert_eq!(p_map(&c[&8]).len(), 1);
    }

    #[test]
    fn barycenter_of_bottom_top_pair() {
        let c = prism_vertex_coordinates();
        let third = rat(1, 3);
        let w = [third.clone(), third.clone(), third];
        let bottom = Point3::affine_combination(&w, &[&c[&0], &c[&1], &c[&2]]);
        let top = Point3::affine_combination(&w, &[&c[&4], &c[&5], &c[&6]]);
        let expected = set(&[(0, 1), (1, 3), (2, 3)]);
        assert_eq!(p_map(&bottom).elements(), expected.as_slice());
        assert_eq!(p_map(&top).elements(), expected.as_slice());
    }

    #[test]
    fn lemma_grid_counts() {
        let reports = verify_lemma_identifications(12);
        assert_eq!(reports.len(), 4);
        for (name, r) in &reports {
            assert_eq!(r.checked, 91, "{name}");
            assert!(r.passed(), "{name}: {:?}", r.failures);
        }
    }

    #[test]
    fn swapped_correspondence_fails() {
        // gluing the bottom to the top with a rotated correspondence is wrong
        let c = prism_vertex_coordinates();
        let w = [rat(1, 2), rat(1, 3), rat(1, 6)];
        let a = Point3::affine_combination(&w, &[&c[&0], &c[&1], &c[&2]]);
        let b = Point3::affine_combination(&w, &[&c[&5], &c[&6], &c[&4]]);
        assert_ne!(p_map(&a), p_map(&b));
    }

    #[test]
    fn vertex_consistency() {
        let r = verify_vertex_q_consistency();
        assert_eq!(r.checked, 12);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn off_export_shape() {
        let off = prism_off();
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "6 8 0");
        assert_eq!(lines[2], "0/1 0/1 0/1");
        assert_eq!(lines[3], "-2/3 1/3 1/3");
        assert_eq!(lines.len(), 2 + 6 + 8);
        assert!(d_polyline().contains("s 0 5 0/1 0/1 0/1 1/3 1/3 1/3"));
    }
}
