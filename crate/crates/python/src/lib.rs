use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ob::action::ActionTable;
use ob::braid::{find_triviality_certificate, BraidWord, OrbifoldSignature, SearchLimits};
use ob::coxeter::{CoxeterDiagram, Family};
use ob::embeddings::{equal_zk, quotient_class, table1_embedding, Table1Row};
use ob::garside::GarsideGroup;
use ob::render::{render_ascii, render_svg, RenderOptions};
use ob::weyl::weyl_image;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Orbifold signature such as `"n=4;left=cone2;right=puncture"`.
#[pyclass(name = "Signature", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySignature(OrbifoldSignature);

#[pymethods]
impl PySignature {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PySignature).map_err(err)
    }

    /// Orbifold of an embedding row on `n` strands.
    #[staticmethod]
    fn for_row(row: &str, n: usize) -> PyResult<Self> {
        let r: Table1Row = row.parse().map_err(err)?;
        if n < r.min_n() {
            return Err(err(format!("row {r} needs n >= {}", r.min_n())));
        }
        Ok(PySignature(r.signature(n)))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Signature('{}')", self.0)
    }
}

/// A word in an orbifold braid group.
#[pyclass(name = "Braid", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyBraid(BraidWord);

#[pymethods]
impl PyBraid {
    #[new]
    fn new(sig: &PySignature, text: &str) -> PyResult<Self> {
        BraidWord::parse(sig.0, text).map(PyBraid).map_err(err)
    }

    #[getter]
    fn signature(&self) -> PySignature {
        PySignature(self.0.signature())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Braid('{}', '{}')", self.0.signature(), self.0)
    }

    fn __mul__(&self, other: &PyBraid) -> PyResult<PyBraid> {
        if self.0.signature() != other.0.signature() {
            return Err(err("signature mismatch"));
        }
        Ok(PyBraid(self.0.mul(&other.0)))
    }

    fn inverse(&self) -> PyBraid {
        PyBraid(self.0.invert())
    }

    fn free_reduce(&self) -> PyBraid {
        PyBraid(self.0.free_reduce())
    }

    fn weyl_image(&self) -> String {
        weyl_image(&self.0).to_string()
    }

    fn quotient_class(&self, row: &str) -> PyResult<String> {
        let r: Table1Row = row.parse().map_err(err)?;
        Ok(quotient_class(&self.0, r).to_string())
    }

    /// Steps of a triviality certificate, or `None` if none was found.
    #[pyo3(signature = (depth = 12))]
    fn certify(&self, depth: usize) -> Option<Vec<String>> {
        find_triviality_certificate(&self.0, depth).map(|c| c.steps.iter().map(|s| format!("{s:?}")).collect())
    }

    /// Images of the free-product generators.
    fn action(&self) -> Vec<String> {
        let t = ActionTable::new_unchecked(self.0.signature());
        t.format_action(&t.letters_action(self.0.letters()))
    }

    fn ascii(&self) -> String {
        render_ascii(&self.0)
    }

    fn svg(&self) -> String {
        render_svg(&self.0, &RenderOptions::default())
    }
}

/// A spherical Artin group with Garside normal forms.
#[pyclass(name = "ArtinGroup", frozen)]
struct PyArtinGroup {
    diagram: CoxeterDiagram,
    group: GarsideGroup,
}

#[pymethods]
impl PyArtinGroup {
    #[new]
    fn new(family: &str, rank: usize) -> PyResult<Self> {
        let f: Family = family.parse().map_err(err)?;
        let diagram = CoxeterDiagram::classical(f, rank).map_err(err)?;
        let group = GarsideGroup::new(f, rank).map_err(err)?;
        Ok(PyArtinGroup { diagram, group })
    }

    fn normal_form(&self, word: &str) -> PyResult<String> {
        let w = self.diagram.parse_word(word).map_err(err)?;
        Ok(self.group.normal_form(&w).map_err(err)?.to_string())
    }

    fn equal(&self, u: &str, v: &str) -> PyResult<bool> {
        let u = self.diagram.parse_word(u).map_err(err)?;
        let v = self.diagram.parse_word(v).map_err(err)?;
        self.group.equal(&u, &v).map_err(err)
    }

    fn delta(&self) -> String {
        self.diagram.format_word(&self.group.delta_word())
    }

    fn __repr__(&self) -> String {
        format!("ArtinGroup('{}')", self.diagram)
    }
}

/// Image of an Artin word under the standard embedding.
#[pyfunction]
fn embed(row: &str, n: usize, word: &str) -> PyResult<PyBraid> {
    let spec = table1_embedding(row.parse().map_err(err)?, n).map_err(err)?;
    let a = spec.diagram.parse_word(word).map_err(err)?;
    spec.apply(&a).map(PyBraid).map_err(err)
}

/// `(relation, certified, depth)` for each defining relation of the embedding.
#[pyfunction]
#[pyo3(signature = (row, n, depth = 12))]
fn verify(row: &str, n: usize, depth: usize) -> PyResult<Vec<(String, bool, Option<usize>)>> {
    let spec = table1_embedding(row.parse().map_err(err)?, n).map_err(err)?;
    let rep = spec.verify(SearchLimits::with_depth(depth));
    Ok(rep.relations.into_iter().map(|r| (r.relation, r.certified, r.depth)).collect())
}

/// Word problem in `Z_n(k)`.
#[pyfunction]
fn equal_in_zk(u: &PyBraid, v: &PyBraid) -> PyResult<bool> {
    equal_zk(&u.0, &v.0).map_err(err)
}

/// True when the outer action proves `u != v`.
#[pyfunction]
fn distinct(u: &PyBraid, v: &PyBraid) -> PyResult<bool> {
    let t = ActionTable::new(u.0.signature()).map_err(err)?;
    Ok(t.outclass(&u.0).map_err(err)? != t.outclass(&v.0).map_err(err)?)
}

#[pymodule]
fn orbibraid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignature>()?;
    m.add_class::<PyBraid>()?;
    m.add_class::<PyArtinGroup>()?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(equal_in_zk, m)?)?;
    m.add_function(wrap_pyfunction!(distinct, m)?)?;
    Ok(())
}
