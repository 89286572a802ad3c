//! Python bindings: the main types and operations of the analyzer,
//! exposed through group names / file text and JSON report strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use flatfiber::catalog;
use flatfiber::classify;
use flatfiber::exact::{parse_rat, Mat, Rat};
use flatfiber::isometry::AffineIso;
use flatfiber::report;
use flatfiber::spacegroup::SpaceGroup;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn load(group: &str) -> PyResult<(String, SpaceGroup, Option<Vec<AffineIso>>)> {
    if catalog::builtin_source(group).is_ok() {
        let (g, n) = catalog::builtin_with_normal(group).map_err(err)?;
        return Ok((group.to_string(), g, n));
    }
    // otherwise treat the argument as group-file text
    let (g, n) = catalog::parse_group_file(group).map_err(err)?;
    Ok(("group".to_string(), g, n))
}

/// Names of the catalogued group presentations.
#[pyfunction]
fn builtin_names() -> Vec<String> {
    catalog::BUILTIN_NAMES.iter().map(|s| s.to_string()).collect()
}

/// Group-level report (point group, lattice, Betti number, center) as a
/// canonical JSON string. `group` is a builtin name or group-file text.
#[pyfunction]
fn analyze_json(group: &str) -> PyResult<String> {
    let (name, g, _) = load(group)?;
    Ok(report::group_report(&name, &g).render())
}

/// Full fibration report for (group, normal subgroup). `normal` is
/// "builtin" or semicolon-separated generator words like "g1 g2^-1; g3".
#[pyfunction]
fn fiber_json(group: &str, normal: &str) -> PyResult<String> {
    let (name, g, builtin_normal) = load(group)?;
    let n_gens: Vec<AffineIso> = if normal == "builtin" {
        builtin_normal.ok_or_else(|| err("group has no catalogued normal subgroup"))?
    } else {
        normal
            .split(';')
            .map(|w| catalog::word_in(&g, w.trim()).map_err(err))
            .collect::<PyResult<_>>()?
    };
    Ok(report::fiber_report(&name, &g, &n_gens).map_err(err)?.render())
}

/// Conjugacy class of a finite-order matrix "a,b;c,d" in GL(2,Z).
#[pyfunction]
fn conjclass(matrix: &str) -> PyResult<String> {
    let rows: Vec<Vec<Rat>> = matrix
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|tok| parse_rat(tok.trim()).ok_or_else(|| err(format!("bad entry {tok}"))))
                .collect()
        })
        .collect::<PyResult<_>>()?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(err("expected a 2x2 matrix a,b;c,d"));
    }
    let class = classify::gl2z_finite_order_class(&Mat::from_rows(rows)).map_err(err)?;
    Ok(class.label().to_string())
}

/// The 17 wallpaper-type name of a rank-2 builtin or group-file text.
#[pyfunction]
fn wallpaper_type(group: &str) -> PyResult<String> {
    let (_, g, _) = load(group)?;
    let t = flatfiber::fibration::wallpaper_type(g.data()).map_err(err)?;
    Ok(t.conway().to_string())
}

/// Labels of the affinity pair classes of the torus or pillow fiber:
/// 7/34 and 10/40 classes respectively.
#[pyfunction]
fn pair_classes(fiber: &str, dihedral: bool) -> PyResult<Vec<String>> {
    let flavor = match fiber {
        "torus" | "o" => classify::Flavor::Torus,
        "pillow" | "2222" => classify::Flavor::Pillow,
        other => return Err(err(format!("unknown fiber {other}"))),
    };
    Ok(classify::enumerate_pair_classes(flavor, dihedral))
}

/// Re-verify the classification tables; returns (pass, fail, skipped).
#[pyfunction]
#[pyo3(signature = (table=None))]
fn verify_tables(table: Option<u32>) -> PyResult<(u32, u32, u32)> {
    let tables: Vec<u32> = match table {
        Some(t) => vec![t],
        None => {
            let mut v = vec![1];
            v.extend(catalog::all_tables());
            v
        }
    };
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for t in tables {
        if t == 1 {
            for row in catalog::table1() {
                match catalog::verify_table1_row(&row) {
                    catalog::RowOutcome::Pass => pass += 1,
                    catalog::RowOutcome::Fail(_) => fail += 1,
                    catalog::RowOutcome::Skipped(_) => skip += 1,
                }
            }
        } else {
            for f in catalog::fixtures(t).map_err(err)? {
                match catalog::verify_table_row(&f) {
                    catalog::RowOutcome::Pass => pass += 1,
                    catalog::RowOutcome::Fail(_) => fail += 1,
                    catalog::RowOutcome::Skipped(_) => skip += 1,
                }
            }
        }
    }
    Ok((pass, fail, skip))
}

#[pymodule]
#[pyo3(name = "flatfiber")]
fn pymodule(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_json, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_json, m)?)?;
    m.add_function(wrap_pyfunction!(conjclass, m)?)?;
    m.add_function(wrap_pyfunction!(wallpaper_type, m)?)?;
    m.add_function(wrap_pyfunction!(pair_classes, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    Ok(())
}
