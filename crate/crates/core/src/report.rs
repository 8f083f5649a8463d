//! The full verification suite as an ordered list of named checks.

use std::fmt;

use crate::complex::SimplicialComplex;
use crate::geometry::{
    verify_lemma_identifications, verify_stratification, verify_vertex_q_consistency,
};
use crate::homology::homology_groups;
use crate::knot::{edge_path_presentation, knot_pipeline, tietze_simplify, LaurentPolynomial};
use crate::quotient::{
    apply_vertex_map, barnette_complex, knot_cycle_complex, mobius_complex, prism_complex, q_map,
};

/// Default sampling resolution for the geometry checks.
pub const DEFAULT_GRID: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {} {}", self.name, self.status, self.detail)
    }
}

/// Ordered check results with unique names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a check.
    ///
    /// # Panics
    /// If a check with the same name was already recorded.
    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        let name = name.into();
        assert!(self.get(&name).is_none(), "duplicate check name {name}");
        let status = if pass { Status::Pass } else { Status::Fail };
        self.entries.push(CheckEntry {
            name,
            status,
            detail: detail.into(),
        });
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Settings for [`verify_paper`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub grid: u32,
    pub budget: usize,
    /// Replaces the built-in prism table in the table and quotient checks.
    pub prism: Option<SimplicialComplex>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            grid: DEFAULT_GRID,
            budget: crate::knot::DEFAULT_BUDGET,
            prism: None,
        }
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn vertex_set(k: &SimplicialComplex) -> String {
    format!("{{{}}}", join(k.vertices()))
}

/// Runs every check in a fixed order.
pub fn verify_paper(opts: &VerifyOptions) -> CheckReport {
    let mut r = CheckReport::new();
    let prism = opts.prism.clone().unwrap_or_else(prism_complex);
    let barnette = barnette_complex();
    let mobius = mobius_complex();
    let knot = knot_cycle_complex();

    table_checks(&mut r, &prism, &barnette, &mobius, &knot);
    quotient_check(&mut r, &prism, &barnette);
    sphere_checks(&mut r, &barnette, opts.budget);
    mobius_checks(&mut r, &mobius, &knot);
    trefoil_checks(&mut r, &barnette, &knot, opts.budget);
    geometry_checks(&mut r, opts.grid);
    r
}

fn table_checks(
    r: &mut CheckReport,
    prism: &SimplicialComplex,
    barnette: &SimplicialComplex,
    mobius: &SimplicialComplex,
    knot: &SimplicialComplex,
) {
    let fp = prism.f_vector();
    r.push(
        "tables.prism",
        prism.is_pure()
            && prism.dim() == Some(3)
            && fp.first() == Some(&12)
            && fp.get(3) == Some(&19),
        format!("f={}", join(&fp)),
    );
    let fb = barnette.f_vector();
    r.push(
        "tables.barnette",
        barnette.vertices() == [0, 1, 2, 3, 8, 9, 10, 11] && fb.get(3) == Some(&19),
        format!("vertices={} f={}", vertex_set(barnette), join(&fb)),
    );
    r.push(
        "tables.mobius",
        mobius.dim() == Some(2) && mobius.facets().len() == 6,
        format!("f={}", join(&mobius.f_vector())),
    );
    r.push(
        "tables.knot",
        knot.dim() == Some(1) && knot.facets().len() == 6,
        format!("f={}", join(&knot.f_vector())),
    );
}

fn quotient_check(r: &mut CheckReport, prism: &SimplicialComplex, barnette: &SimplicialComplex) {
    match apply_vertex_map(prism, &q_map()) {
        Ok(mapped) => {
            let equal = mapped.complex == *barnette;
            let bijective = mapped.facet_map_is_bijective();
            r.push(
                "quotient.isomorphism",
                equal && bijective,
                format!(
                    "image_facets={} equal={equal} bijective={bijective}",
                    mapped.complex.facets().len()
                ),
            );
        }
        Err(e) => r.push("quotient.isomorphism", false, e.to_string()),
    }
}

fn sphere_checks(r: &mut CheckReport, s: &SimplicialComplex, budget: usize) {
    let m = s.check_closed_3_manifold();
    let detail = if m.passed() {
        format!(
            "vertex_links={} edges={}",
            s.vertices().len(),
            s.faces(1).map_or(0, |e| e.len())
        )
    } else {
        m.failures.join("; ")
    };
    r.push("sphere.closed_manifold", m.passed(), detail);
    let o = s.orientability().map(|o| o.orientable).unwrap_or(false);
    r.push("sphere.orientable", o, format!("orientable={o}"));
    let h = homology_groups(s, false);
    let shape: Vec<(usize, usize)> = h.iter().map(|g| (g.betti, g.torsion.len())).collect();
    r.push(
        "sphere.homology",
        shape == [(1, 0), (0, 0), (0, 0), (1, 0)],
        format!("H=({})", join(&h)),
    );
    match edge_path_presentation(s, s.vertices()[0]) {
        Ok(p) => {
            let out = tietze_simplify(&p, budget);
            let trivial = out.presentation.n_generators == 0;
            r.push(
                "sphere.pi1_trivial",
                trivial,
                format!(
                    "raw_gens={} simplified_gens={} moves={}",
                    p.n_generators, out.presentation.n_generators, out.moves
                ),
            );
        }
        Err(e) => r.push("sphere.pi1_trivial", false, e.to_string()),
    }
}

fn mobius_checks(r: &mut CheckReport, m: &SimplicialComplex, knot: &SimplicialComplex) {
    let chi = m.euler_characteristic();
    r.push("mobius.euler", chi == 0, format!("chi={chi}"));
    let o = m.orientability().map(|o| o.orientable).unwrap_or(true);
    r.push("mobius.non_orientable", !o, format!("orientable={o}"));
    let h = homology_groups(m, false);
    let h1 = h.get(1);
    r.push(
        "mobius.homology",
        h1.is_some_and(|g| g.betti == 1 && g.torsion.is_empty()),
        format!("H=({})", join(&h)),
    );
    match m.boundary() {
        Ok(b) => {
            let cycle = b.is_connected() && b.is_cycle();
            r.push(
                "mobius.boundary",
                b == *knot && cycle,
                format!(
                    "edges={} equals_knot={} single_cycle={cycle}",
                    b.facets().len(),
                    b == *knot
                ),
            );
        }
        Err(e) => r.push("mobius.boundary", false, e.to_string()),
    }
}

fn trefoil_checks(
    r: &mut CheckReport,
    ambient: &SimplicialComplex,
    knot: &SimplicialComplex,
    budget: usize,
) {
    let report = match knot_pipeline(ambient, knot, budget) {
        Ok(rep) => rep,
        Err(e) => {
            r.push("trefoil.pipeline", false, e.to_string());
            return;
        }
    };
    let h = &report.complement_homology;
    let h_ok = h
        .first()
        .is_some_and(|g| g.betti == 1 && g.torsion.is_empty())
        && h.get(1)
            .is_some_and(|g| g.betti == 1 && g.torsion.is_empty());
    r.push(
        "trefoil.complement_homology",
        h_ok,
        format!(
            "facets={} H=({})",
            report.complement_f_vector.last().copied().unwrap_or(0),
            join(h)
        ),
    );
    r.push(
        "trefoil.simplified",
        !report.tietze_exhausted && report.abelianization_preserved(),
        format!(
            "raw_gens={} gens={} rels={} moves={}",
            report.raw_generators,
            report.simplified.n_generators,
            report.simplified.relators.len(),
            report.tietze_moves
        ),
    );
    let expected = LaurentPolynomial::from_coefficients(&[1, -1, 1]);
    r.push(
        "trefoil.alexander",
        report.alexander == expected,
        format!("alexander={}", report.alexander),
    );
    r.push(
        "trefoil.s3_nonabelian",
        report.s3_nonabelian,
        format!("s3_nonabelian={}", report.s3_nonabelian),
    );
}

fn geometry_checks(r: &mut CheckReport, grid: u32) {
    for (i, (pair, s)) in verify_lemma_identifications(grid).into_iter().enumerate() {
        let detail = match s.failures.first() {
            None => format!("{pair} points={}", s.checked),
            Some(f) => format!("{pair} failures={} first: {f}", s.failures.len()),
        };
        r.push(format!("geometry.lemma_pair_{}", i + 1), s.passed(), detail);
    }
    let st = verify_stratification(grid);
    let detail = match st.sampling.failures.first() {
        None => format!(
            "points={} in_S={} in_D={} open_cell={}",
            st.in_p, st.in_s, st.in_d, st.open_cell_points
        ),
        Some(f) => format!("failures={} first: {f}", st.sampling.failures.len()),
    };
    r.push("geometry.stratification", st.sampling.passed(), detail);
    let v = verify_vertex_q_consistency();
    let detail = match v.failures.first() {
        None => format!("vertices={}", v.checked),
        Some(f) => format!("failures={} first: {f}", v.failures.len()),
    };
    r.push("geometry.vertex_q", v.passed() && v.checked == 12, detail);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lines_and_uniqueness() {
        let mut r = CheckReport::new();
        r.push("a", true, "ok");
        r.push("b", false, "bad");
        assert_eq!(r.to_string(), "CHECK a PASS ok\nCHECK b FAIL bad\n");
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    #[should_panic(expected = "duplicate")]
    fn duplicate_names_panic() {
        let mut r = CheckReport::new();
        r.push("a", true, "");
        r.push("a", true, "");
    }
}
