//! The machine-readable report tree. JSON serialization is deterministic:
//! object keys are emitted sorted and every rational prints canonically
//! as `p/q`, so reports are byte-identical across runs.

use crate::classify::ClassifyingPair;
use crate::exact::{fmt_rat, Rat};
use crate::fibration::FibrationReport;
use crate::isometry::AffineIso;
use crate::normal::NormalAnalysis;
use crate::spacegroup::SpaceGroup;
use crate::splitting::SplitVerdict;
use crate::Result;

/// Minimal JSON value with deterministic rendering.
#[derive(Clone, Debug)]
pub enum Json {
    Bool(bool),
    Int(i64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Json::Obj(fields) => {
                let mut sorted: Vec<&(String, Json)> = fields.iter().collect();
                sorted.sort_by(|a, b| a.0.cmp(&b.0));
                out.push('{');
                for (i, (k, v)) in sorted.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    Json::Str(k.clone()).write(out);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }

    /// Indented human-readable rendering of the same tree.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        self.write_text(&mut s, 0);
        s
    }

    fn write_text(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        match self {
            Json::Obj(fields) => {
                let mut sorted: Vec<&(String, Json)> = fields.iter().collect();
                sorted.sort_by(|a, b| a.0.cmp(&b.0));
                for (k, v) in sorted {
                    match v {
                        Json::Obj(_) | Json::Arr(_) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            v.write_text(out, indent + 1);
                        }
                        _ => out.push_str(&format!("{pad}{k}: {}\n", v.render())),
                    }
                }
            }
            Json::Arr(items) => {
                for v in items {
                    match v {
                        Json::Obj(_) | Json::Arr(_) => {
                            out.push_str(&format!("{pad}-\n"));
                            v.write_text(out, indent + 1);
                        }
                        _ => out.push_str(&format!("{pad}- {}\n", v.render())),
                    }
                }
            }
            _ => out.push_str(&format!("{pad}{}\n", self.render())),
        }
    }
}

fn rat_json(x: &Rat) -> Json {
    Json::Str(fmt_rat(x))
}

fn vec_json(v: &[Rat]) -> Json {
    Json::Arr(v.iter().map(rat_json).collect())
}

fn iso_json(g: &AffineIso) -> Json {
    let rows: Vec<Json> = (0..g.dim()).map(|i| vec_json(g.lin().row(i))).collect();
    Json::Obj(vec![("lin".into(), Json::Arr(rows)), ("t".into(), vec_json(g.trans()))])
}

fn subspace_json(s: &crate::isometry::Subspace) -> Json {
    Json::Arr(s.basis().iter().map(|v| vec_json(v)).collect())
}

/// Group-level facts: point group order, lattice, Betti number, center
/// generators, orientation flag.
pub fn group_report(name: &str, g: &SpaceGroup) -> Json {
    let lattice: Vec<Json> = g.lattice().basis_vectors().iter().map(|v| vec_json(v)).collect();
    let center: Vec<Json> = g.center_generators().iter().map(iso_json).collect();
    Json::Obj(vec![
        ("name".into(), Json::Str(name.into())),
        ("dim".into(), Json::Int(g.dim() as i64)),
        ("point_group_order".into(), Json::Int(g.point_group().len() as i64)),
        ("lattice_basis".into(), Json::Arr(lattice)),
        ("first_betti".into(), Json::Int(g.first_betti() as i64)),
        ("isom_rank".into(), Json::Int(g.isom_rank() as i64)),
        ("center_generators".into(), Json::Arr(center)),
        ("orientation_preserving".into(), Json::Bool(g.orientation_preserving())),
        (
            "isom_group_finite".into(),
            Json::Bool(g.first_betti() == 0),
        ),
    ])
}

fn action_json(inv: &crate::fibration::ActionInvariant) -> Json {
    Json::Obj(vec![
        ("order".into(), Json::Int(inv.order as i64)),
        (
            "orientation_preserving_on_fiber".into(),
            Json::Bool(inv.orientation_preserving_on_fiber),
        ),
        ("has_fixed_point_on_fiber".into(), Json::Bool(inv.has_fixed_point_on_fiber)),
        ("base_action".into(), Json::Str(inv.base_action.label())),
    ])
}

fn fibration_json(r: &FibrationReport) -> Json {
    Json::Obj(vec![
        ("fiber".into(), Json::Str(r.fiber.label())),
        ("cofiber".into(), Json::Str(r.cofiber.label())),
        ("base".into(), Json::Str(r.base.label())),
        ("quotient_fiber".into(), Json::Str(r.quotient_fiber.label())),
        ("quotient_base".into(), Json::Str(r.quotient_base.label())),
        ("actions".into(), Json::Arr(r.actions.iter().map(action_json).collect())),
    ])
}

fn splitting_json(v: &SplitVerdict) -> Json {
    let mut fields = vec![(
        "orthogonal".into(),
        Json::Bool(v.orthogonal.is_some()),
    )];
    if let Some((v0, sigma)) = &v.orthogonal {
        fields.push(("witness_point".into(), vec_json(v0)));
        fields.push(("sigma_generators".into(), Json::Int(sigma.len() as i64)));
    }
    fields.push(("obstruction".into(), Json::Bool(v.obstruction.is_some())));
    if let Some(w) = &v.obstruction {
        fields.push(("obstruction_witness".into(), iso_json(w)));
    }
    match v.theorem10 {
        Some(b) => fields.push(("theorem10".into(), Json::Bool(b))),
        None => fields.push(("theorem10".into(), Json::Str("not applicable".into()))),
    }
    Json::Obj(fields)
}

fn classifying_json(cp: &ClassifyingPair) -> Json {
    let invariants: Vec<Json> = cp
        .invariants
        .iter()
        .map(|(o, orient, fix)| {
            Json::Obj(vec![
                ("order".into(), Json::Int(*o as i64)),
                ("orientation_preserving".into(), Json::Bool(*orient)),
                ("has_fixed_point".into(), Json::Bool(*fix)),
            ])
        })
        .collect();
    let mut fields = vec![
        ("kind".into(), Json::Str(cp.kind.label().into())),
        ("fiber".into(), Json::Str(cp.fiber.label())),
        ("invariants".into(), Json::Arr(invariants)),
        ("e_dim".into(), Json::Int(cp.e_dim as i64)),
    ];
    if let Some(l) = &cp.label {
        fields.push(("label".into(), Json::Str(l.clone())));
    }
    Json::Obj(fields)
}

/// The full analysis report of a pair (Gamma, N).
pub fn fiber_report(
    name: &str,
    gamma: &SpaceGroup,
    n_gens: &[AffineIso],
) -> Result<Json> {
    let a = crate::normal::analyze(gamma, n_gens)?;
    let mut fields = vec![
        ("group".into(), group_report(name, gamma)),
        ("normal_generators".into(), Json::Arr(n_gens.iter().map(iso_json).collect())),
        ("span".into(), subspace_json(a.v())),
        ("complete".into(), Json::Bool(a.is_complete())),
        (
            "completion_lattice".into(),
            Json::Arr(a.completion().lattice().basis_vectors().iter().map(|v| vec_json(v)).collect()),
        ),
        (
            "kernel_generators".into(),
            Json::Arr(a.kernel().gens().iter().map(iso_json).collect()),
        ),
        ("dual".into(), Json::Bool(a.dual_exists())),
    ];
    if let Some(s) = a.structure() {
        let mut sf = vec![("finite".into(), Json::Bool(s.finite))];
        if s.finite {
            sf.push(("order".into(), Json::Int(s.order() as i64)));
            sf.push(("kind".into(), Json::Str(s.kind.label())));
        }
        fields.push(("structure".into(), Json::Obj(sf)));
    }
    if a.is_complete() && a.dual_exists() {
        let report = crate::fibration::fibration_report(&a)?;
        fields.push(("fibration".into(), fibration_json(&report)));
        let verdict = crate::splitting::split_verdict(&a)?;
        fields.push(("splitting".into(), splitting_json(&verdict)));
        if a.v().rank() + 1 == gamma.dim() {
            if let Ok(cp) = crate::classify::classifying_pair(&a) {
                fields.push(("classifying".into(), classifying_json(&cp)));
            }
        }
    }
    Ok(Json::Obj(fields))
}

pub fn analysis_of(gamma: &SpaceGroup, n_gens: &[AffineIso]) -> Result<NormalAnalysis> {
    crate::normal::analyze(gamma, n_gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn json_is_sorted_and_canonical() {
        let j = Json::Obj(vec![
            ("zeta".into(), Json::Int(1)),
            ("alpha".into(), Json::Str("x\"y".into())),
        ]);
        assert_eq!(j.render(), "{\"alpha\":\"x\\\"y\",\"zeta\":1}");
        assert_eq!(rat_json(&crate::exact::frac(2, 4)).render(), "\"1/2\"");
        let _ = rat(0);
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let g = crate::catalog::builtin("it113").unwrap();
        let (_, normal) = crate::catalog::builtin_with_normal("it113").unwrap();
        let n = normal.unwrap();
        let a = fiber_report("it113", &g, &n).unwrap().render();
        let b = fiber_report("it113", &g, &n).unwrap().render();
        assert_eq!(a, b);
        assert!(a.contains("\"complete\":true"));
        assert!(a.contains("\"kind\":\"C2\""));
        assert!(a.contains("\"orthogonal\":false"));
        assert!(a.contains("\"obstruction\":false"));
    }
}
