//! Python bindings: a `HigmanGroup` class exposing the word problem, normal
//! forms, subgroup membership, ball construction, flats, disc-diagram
//! fillings and the morphism checks. Words use the CLI grammar
//! (`"a0 a1 a0^-1 a1^-2"`); everything returned to Python is plain data
//! (bools, ints, strings, JSON strings).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use higman_core::action::IsometryClass;
use higman_core::complex::{Explorer, VertexId};
use higman_core::diagram::{diagram_to_json, fill_bounded, gauss_bonnet, is_reduced, FillResult};
use higman_core::export;
use higman_core::flats::{FlatBuilder, FlatSpec};
use higman_core::morphism::{automorphism_decompose, hom_check, EndoCandidate, HomCheck};
use higman_core::words::{Gen, HWord, HigmanGroup};

fn parse_word(s: &str) -> PyResult<HWord> {
    HWord::parse(s).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn gen_of(i: u8) -> PyResult<Gen> {
    if i > 3 {
        return Err(PyValueError::new_err("generator index must be 0..3"));
    }
    Ok(Gen::new(i))
}

fn runtime(e: higman_core::Error) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// A Higman-like group with exact word-problem machinery.
#[pyclass(name = "HigmanGroup")]
struct PyHigmanGroup {
    group: HigmanGroup,
}

#[pymethods]
impl PyHigmanGroup {
    /// Create the group with parameters (m0, m1, m2, m3), each >= 2.
    #[new]
    #[pyo3(signature = (m0=2, m1=2, m2=2, m3=2))]
    fn new(m0: u32, m1: u32, m2: u32, m3: u32) -> PyResult<Self> {
        let group = HigmanGroup::new([m0, m1, m2, m3])
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyHigmanGroup { group })
    }

    fn params(&self) -> (u32, u32, u32, u32) {
        let m = self.group.params();
        (m[0], m[1], m[2], m[3])
    }

    /// The defining relator `a_i a_{i+1} a_i^-1 a_{i+1}^{-m_i}`.
    fn relator(&self, i: u8) -> PyResult<String> {
        Ok(self.group.relator(gen_of(i)?).to_string())
    }

    /// Word problem: is the word trivial?
    fn is_trivial(&self, word: &str) -> PyResult<bool> {
        Ok(self.group.is_trivial(&parse_word(word)?))
    }

    fn equal(&self, w1: &str, w2: &str) -> PyResult<bool> {
        Ok(self.group.equal(&parse_word(w1)?, &parse_word(w2)?))
    }

    /// Human-readable reduced block decomposition.
    fn normal_form(&self, word: &str) -> PyResult<String> {
        Ok(self.group.h_reduce(&parse_word(word)?).describe())
    }

    fn block_count(&self, word: &str) -> PyResult<usize> {
        Ok(self.group.h_reduce(&parse_word(word)?).block_count())
    }

    fn abelianization(&self, word: &str) -> PyResult<(u64, u64, u64, u64)> {
        let c = self.group.abelianization_class(&parse_word(word)?);
        Ok((c[0], c[1], c[2], c[3]))
    }

    /// Membership in the vertex group `<a_i, a_{i+1}>`.
    fn vertex_membership(&self, word: &str, i: u8) -> PyResult<bool> {
        Ok(self.group.vertex_membership(&parse_word(word)?, gen_of(i)?))
    }

    /// `Some(n)` (as a decimal string) iff the element equals `a_i^n`.
    fn edge_membership(&self, word: &str, i: u8) -> PyResult<Option<String>> {
        Ok(self
            .group
            .edge_membership(&parse_word(word)?, gen_of(i)?)
            .map(|n| n.to_string()))
    }

    /// Ball of the complex as a JSON document (the stable export schema).
    #[pyo3(signature = (radius=2, truncation=3))]
    fn ball_json(&self, radius: u32, truncation: u32) -> PyResult<String> {
        let x = Explorer::new(self.group);
        let ball = x.build_ball(radius, truncation).map_err(runtime)?;
        serde_json::to_string_pretty(&export::ball_to_json(&ball))
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// (squares, dual edges, vertices, edges) counts of a ball.
    #[pyo3(signature = (radius=2, truncation=3))]
    fn ball_summary(&self, radius: u32, truncation: u32) -> PyResult<(usize, usize, usize, usize)> {
        let x = Explorer::new(self.group);
        let ball = x.build_ball(radius, truncation).map_err(runtime)?;
        Ok((
            ball.squares.len(),
            ball.dual_edges.len(),
            ball.vertices.len(),
            ball.edges.len(),
        ))
    }

    /// (simple, connected, four_cycle_found) for a truncated vertex link.
    #[pyo3(signature = (corner, truncation=3, depth=2))]
    fn link_report(&self, corner: u8, truncation: u32, depth: u32) -> PyResult<(bool, bool, bool)> {
        let x = Explorer::new(self.group);
        let v = VertexId { word: HWord::empty(), corner: gen_of(corner)? };
        let link = x.link_graph(&v, truncation, depth);
        Ok((link.simple, link.connected, link.four_cycle.is_some()))
    }

    /// Is the algebraic distorted-intersection graph isomorphic to the
    /// oriented 1-skeleton on this ball?
    #[pyo3(signature = (radius=1, truncation=2))]
    fn gamma_isomorphic(&self, radius: u32, truncation: u32) -> PyResult<bool> {
        let x = Explorer::new(self.group);
        let ball = x.build_ball(radius, truncation).map_err(runtime)?;
        Ok(x.build_intersection_graphs(&ball).isomorphic)
    }

    /// All-ones flat patch as JSON; covers the L1 diamond of the radius.
    #[pyo3(signature = (base=0, radius=3))]
    fn flat_json(&self, base: u8, radius: u32) -> PyResult<String> {
        let fb = FlatBuilder::new(self.group);
        let patch = fb.build(&FlatSpec::all_ones(gen_of(base)?, radius)).map_err(runtime)?;
        Ok(export::flat_to_json(&patch).to_string())
    }

    /// Maximum dual-label magnitude by L1 radius, as decimal strings.
    #[pyo3(signature = (base=0, radius=3))]
    fn flat_label_growth(&self, base: u8, radius: u32) -> PyResult<Vec<String>> {
        let fb = FlatBuilder::new(self.group);
        let patch = fb.build(&FlatSpec::all_ones(gen_of(base)?, radius)).map_err(runtime)?;
        Ok(fb.label_growth(&patch).iter().map(|x| x.to_string()).collect())
    }

    /// Fill a trivial word with a reduced disc diagram; returns the diagram
    /// JSON, or None when the word is nontrivial or no filling was found.
    #[pyo3(signature = (word, max_squares=64))]
    fn fill_diagram(&self, word: &str, max_squares: usize) -> PyResult<Option<String>> {
        match fill_bounded(&self.group, &parse_word(word)?, max_squares) {
            FillResult::Filled(d) => {
                debug_assert!(is_reduced(&self.group, &d));
                if !d.is_empty() {
                    gauss_bonnet(&d).map_err(runtime)?;
                }
                Ok(Some(diagram_to_json(&d).to_string()))
            }
            _ => Ok(None),
        }
    }

    /// "elliptic", "hyperbolic" or "unknown", decided within a ball.
    #[pyo3(signature = (word, radius=2, truncation=2, max_power=3))]
    fn classify(&self, word: &str, radius: u32, truncation: u32, max_power: u32) -> PyResult<String> {
        let w = parse_word(word)?;
        if self.group.is_trivial(&w) {
            return Err(PyValueError::new_err("the identity is not classified"));
        }
        let x = Explorer::new(self.group);
        let ball = x.build_ball(radius, truncation).map_err(runtime)?;
        Ok(match x.classify(&ball, &w, max_power).map_err(runtime)? {
            IsometryClass::Elliptic { .. } => "elliptic".into(),
            IsometryClass::HyperbolicCertified { .. } => "hyperbolic".into(),
            IsometryClass::Unknown { .. } => "unknown".into(),
        })
    }

    /// "hom", "trivial" or "nothom: <relator>" for four image words.
    fn hom_check(&self, w0: &str, w1: &str, w2: &str, w3: &str) -> PyResult<String> {
        let c = EndoCandidate {
            images: [parse_word(w0)?, parse_word(w1)?, parse_word(w2)?, parse_word(w3)?],
        };
        Ok(match hom_check(&self.group, &c) {
            HomCheck::Hom => "hom".into(),
            HomCheck::TrivialHom => "trivial".into(),
            HomCheck::NotHom { relator, .. } => format!("nothom: {relator}"),
        })
    }

    /// Decompose an automorphism candidate as (shift, conjugator word).
    #[pyo3(signature = (w0, w1, w2, w3, radius=3))]
    fn decompose(
        &self,
        w0: &str,
        w1: &str,
        w2: &str,
        w3: &str,
        radius: u32,
    ) -> PyResult<Option<(u8, String)>> {
        let c = EndoCandidate {
            images: [parse_word(w0)?, parse_word(w1)?, parse_word(w2)?, parse_word(w3)?],
        };
        Ok(automorphism_decompose(&self.group, &c, radius).map(|(k, g)| (k, g.to_string())))
    }

    fn __repr__(&self) -> String {
        let m = self.group.params();
        format!("HigmanGroup({}, {}, {}, {})", m[0], m[1], m[2], m[3])
    }
}

#[pymodule]
fn higman_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHigmanGroup>()?;
    Ok(())
}
