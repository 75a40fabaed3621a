//! Python bindings for `opecalc`.

use opecalc::cli::{self, CommandOutput, Format, Options};
use opecalc::numcore::{self, Scalar};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn options(cutoff: Option<String>, indices: Option<String>, format: Format, seed: u64, sample: Option<usize>) -> Options {
    Options { cutoff, indices, format, seed, sample }
}

/// Exit code 2 becomes `ValueError`; otherwise `(passed, text)`.
fn finish(out: CommandOutput) -> PyResult<(bool, String)> {
    match out.code {
        0 => Ok((true, out.text)),
        1 => Ok((false, out.text)),
        _ => Err(PyValueError::new_err(out.text.trim_end().trim_start_matches("error: ").to_string())),
    }
}

/// Runs the axiom suite; returns `(passed, json_report)`.
#[pyfunction]
#[pyo3(signature = (spec, cutoff=None, indices=None, sample=None, seed=0))]
fn verify(spec: &str, cutoff: Option<String>, indices: Option<String>, sample: Option<usize>, seed: u64) -> PyResult<(bool, String)> {
    finish(cli::cmd_verify(spec, &options(cutoff, indices, Format::Json, seed, sample)))
}

/// Singular part of the OPE of two named states, as printed by the CLI.
#[pyfunction]
#[pyo3(signature = (spec, a, b, cutoff=None))]
fn ope(spec: &str, a: &str, b: &str, cutoff: Option<String>) -> PyResult<String> {
    finish(cli::cmd_ope(spec, a, b, &options(cutoff, None, Format::Text, 0, None))).map(|r| r.1)
}

/// Graded dimensions as `[(weight, dim)]`, weights rendered as strings.
#[pyfunction]
#[pyo3(signature = (spec, cutoff=None))]
fn character(spec: &str, cutoff: Option<String>) -> PyResult<Vec<(String, usize)>> {
    let (_, text) = finish(cli::cmd_character(spec, &options(cutoff, None, Format::Text, 0, None)))?;
    let rows = text.lines().skip_while(|l| *l != "weight dim").skip(1).take_while(|l| !l.starts_with("dims:"));
    rows.map(|l| {
        let (w, d) = l.rsplit_once(' ').ok_or_else(|| PyRuntimeError::new_err(format!("bad row {l:?}")))?;
        let d = d.parse().map_err(|_| PyRuntimeError::new_err(format!("bad row {l:?}")))?;
        Ok((w.to_string(), d))
    })
    .collect()
}

/// Built-in algebras as `(name, kind, defaults)`.
#[pyfunction]
fn catalog() -> Vec<(String, String, String)> {
    cli::catalog_entries().into_iter().map(|(n, k, d)| (n, k.to_string(), d)).collect()
}

/// Exact binomial coefficient of a rational `a`, returned as a string.
#[pyfunction]
fn binom(a: &str, n: i64) -> PyResult<String> {
    let a: Scalar = a.parse().map_err(|e: opecalc::Error| PyValueError::new_err(e.to_string()))?;
    Ok(numcore::binom(&a, n).to_string())
}

/// Upper bound on the locality order of `a_(n) b` with `c`.
#[pyfunction]
fn dong_bound(n_ab: u32, n_bc: u32, n_ac: u32, n: i64) -> u32 {
    opecalc::fieldcalc::dong_bound(n_ab, n_bc, n_ac, n)
}

#[pymodule]
pub fn pyopecalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(ope, m)?)?;
    m.add_function(wrap_pyfunction!(character, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(binom, m)?)?;
    m.add_function(wrap_pyfunction!(dong_bound, m)?)?;
    Ok(())
}
