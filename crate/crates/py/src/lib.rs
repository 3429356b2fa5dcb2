use pyo3::prelude::*;
#[pymodule]
fn fockcalc_py(_m: &Bound<'_, PyModule>) -> PyResult<()> { Ok(()) }
