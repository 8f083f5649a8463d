use std::fmt;

use thiserror::Error;

use super::{
    abelianization_invariants, alexander_polynomial, edge_path_presentation,
    exists_nonabelian_s3_rep, knot_complement_complex, tietze_simplify, Abelianization, KnotError,
    LaurentPolynomial, Presentation,
};
use crate::complex::SimplicialComplex;
use crate::homology::{homology_groups, HomologyGroup};

/// A pipeline failure tagged with the stage that produced it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("stage {stage}: {source}")]
pub struct StageError {
    pub stage: &'static str,
    #[source]
    pub source: KnotError,
}

/// Every intermediate result of [`knot_pipeline`].
#[derive(Clone, Debug)]
pub struct KnotReport {
    pub complement_f_vector: Vec<usize>,
    pub complement_homology: Vec<HomologyGroup>,
    pub raw_generators: usize,
    pub raw_relators: usize,
    pub raw_abelianization: Abelianization,
    pub simplified: Presentation,
    pub tietze_moves: usize,
    pub tietze_exhausted: bool,
    pub simplified_abelianization: Abelianization,
    pub alexander: LaurentPolynomial,
    pub s3_nonabelian: bool,
}

impl KnotReport {
    /// Whether the abelianization was unchanged by simplification.
    pub fn abelianization_preserved(&self) -> bool {
        self.raw_abelianization.rank == self.simplified_abelianization.rank
            && self.raw_abelianization.torsion == self.simplified_abelianization.torsion
    }

    /// Report lines, one per stage.
    pub fn lines(&self) -> Vec<String> {
        let h = |d: usize| {
            self.complement_homology
                .get(d)
                .map_or("0".into(), ToString::to_string)
        };
        let fv: Vec<String> = self
            .complement_f_vector
            .iter()
            .map(ToString::to_string)
            .collect();
        let coeffs: Vec<String> = self
            .alexander
            .dense_coefficients()
            .iter()
            .map(ToString::to_string)
            .collect();
        vec![
            format!("complement f={}", fv.join(",")),
            format!("complement H0={} H1={}", h(0), h(1)),
            format!(
                "presentation gens={} rels={}",
                self.raw_generators, self.raw_relators
            ),
            format!(
                "simplified gens={} rels={} moves={} exhausted={}",
                self.simplified.n_generators,
                self.simplified.relators.len(),
                self.tietze_moves,
                self.tietze_exhausted
            ),
            format!(
                "abelianization rank={} torsion=[{}] preserved={}",
                self.simplified_abelianization.rank,
                self.simplified_abelianization
                    .torsion
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                self.abelianization_preserved()
            ),
            format!("alexander {}", coeffs.join(" ")),
            format!("s3_nonabelian {}", self.s3_nonabelian),
        ]
    }
}

impl fmt::Display for KnotReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Complement, then edge-path group, Tietze simplification, abelianization,
/// Alexander polynomial and the symmetric-group search, in that order.
pub fn knot_pipeline(
    ambient: &SimplicialComplex,
    knot: &SimplicialComplex,
    budget: usize,
) -> Result<KnotReport, StageError> {
    let stage = |stage: &'static str| move |source: KnotError| StageError { stage, source };
    let complement = knot_complement_complex(ambient, knot).map_err(stage("complement"))?;
    let complement_homology = homology_groups(&complement, false);
    let base = complement.vertices()[0];
    let raw = edge_path_presentation(&complement, base).map_err(stage("presentation"))?;
    let raw_abelianization = abelianization_invariants(&raw);
    let outcome = tietze_simplify(&raw, budget);
    let simplified = outcome.presentation;
    let simplified_abelianization = abelianization_invariants(&simplified);
    let alexander = alexander_polynomial(&simplified).map_err(stage("alexander"))?;
    let s3_nonabelian = exists_nonabelian_s3_rep(&simplified).map_err(stage("s3"))?;
    Ok(KnotReport {
        complement_f_vector: complement.f_vector(),
        complement_homology,
        raw_generators: raw.n_generators,
        raw_relators: raw.relators.len(),
        raw_abelianization,
        simplified,
        tietze_moves: outcome.moves,
        tietze_exhausted: outcome.exhausted,
        simplified_abelianization,
        alexander,
        s3_nonabelian,
    })
}
