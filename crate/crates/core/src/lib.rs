//! Simplicial, algebraic and exact-geometric models of the space of
//! nonempty subsets of the circle with at most three points.
//!
//! The guide in `book/` walks through each module.

pub mod complex;
pub mod geometry;
pub mod homology;
pub mod knot;
pub mod quotient;
pub mod report;

/// Small complexes shipped with the crate, in the `sc v1` text format.
pub mod fixtures {
    /// Boundary of the 4-simplex, a triangulated 3-sphere.
    pub const SPHERE4: &str = include_str!("../fixtures/sphere4.sc");
    /// The triangle `0-1-2` inside [`SPHERE4`], an unknot.
    pub const UNKNOT: &str = include_str!("../fixtures/unknot.sc");
    /// The prism table with one facet altered.
    pub const PRISM_CORRUPTED: &str = include_str!("../fixtures/prism_corrupted.sc");
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/complexes.md")]
    struct Complexes;
    #[doc = include_str!("../../../book/src/homology.md")]
    struct Homology;
    #[doc = include_str!("../../../book/src/quotient.md")]
    struct Quotient;
    #[doc = include_str!("../../../book/src/knots.md")]
    struct Knots;
    #[doc = include_str!("../../../book/src/geometry.md")]
    struct Geometry;
}
