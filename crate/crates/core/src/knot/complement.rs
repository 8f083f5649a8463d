use std::collections::BTreeSet;

use super::KnotError;
use crate::complex::{SimplicialComplex, Vertex};

/// A complex onto which the complement of the 1-complex `knot` in the
/// closed 3-manifold `ambient` deformation retracts.
///
/// Subdivide once; the knot's subdivision `L1` is then a full subcomplex.
/// Subdivide again and keep the full subcomplex on barycenters of faces of
/// the first subdivision that are not faces of `L1`. That is the closed
/// complement of the open star of the twice-subdivided knot, a compact
/// 3-manifold whose boundary is a torus.
pub fn knot_complement_complex(
    ambient: &SimplicialComplex,
    knot: &SimplicialComplex,
) -> Result<SimplicialComplex, KnotError> {
    if knot.dim() != Some(1) {
        return Err(KnotError::InvalidKnot);
    }
    if !ambient.has_subcomplex(knot) {
        return Err(KnotError::NotSubcomplex);
    }
    let check = ambient.check_closed_3_manifold();
    if !check.passed() {
        return Err(KnotError::NotClosed3Manifold(check.failures.join("; ")));
    }
    let first = ambient.barycentric_subdivision();
    let knot_vertices: BTreeSet<Vertex> = first
        .labels
        .iter()
        .enumerate()
        .filter(|(_, face)| knot.contains(face))
        .map(|(i, _)| i as Vertex)
        .collect();
    let second = first.complex.barycentric_subdivision();
    let keep: BTreeSet<Vertex> = second
        .labels
        .iter()
        .enumerate()
        .filter(|(_, face)| face.vertices().iter().any(|v| !knot_vertices.contains(v)))
        .map(|(i, _)| i as Vertex)
        .collect();
    Ok(second.complex.full_subcomplex(&keep)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;

    fn four_simplex_boundary() -> SimplicialComplex {
        let top = Simplex::new(0..5).unwrap();
        SimplicialComplex::generated_by(top.faces_of_dim(3))
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = four_simplex_boundary();
        let not_sub = SimplicialComplex::new([[0, 7]]).unwrap();
        assert_eq!(
            knot_complement_complex(&s, &not_sub),
            Err(KnotError::NotSubcomplex)
        );
        assert_eq!(
            knot_complement_complex(&s, &SimplicialComplex::empty()),
            Err(KnotError::InvalidKnot)
        );
        let tri = SimplicialComplex::new([[0, 1, 2]]).unwrap();
        assert_eq!(
            knot_complement_complex(&s, &tri),
            Err(KnotError::InvalidKnot)
        );
        let ball = SimplicialComplex::new([[0, 1, 2, 3]]).unwrap();
        let edge = SimplicialComplex::new([[0, 1]]).unwrap();
        assert!(matches!(
            knot_complement_complex(&ball, &edge),
            Err(KnotError::NotClosed3Manifold(_))
        ));
    }

    #[test]
    fn complement_is_pure_and_connected() {
        let s = four_simplex_boundary();
        let cycle = SimplicialComplex::new([[0, 1], [1, 2], [0, 2]]).unwrap();
        let c = knot_complement_complex(&s, &cycle).unwrap();
        assert!(c.is_pure());
        assert_eq!(c.dim(), Some(3));
        assert!(c.is_connected());
    }
}
