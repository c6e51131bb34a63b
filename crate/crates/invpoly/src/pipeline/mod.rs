mod emit;
mod input;
mod table;
mod verify;

pub use emit::{emit_report, EmitFormat};
pub use input::{load_list, parse_csv, parse_json, InputFormat, InputRow};
pub use table::{reproduce_table, CellDiff, FixtureRow, TableCheck, TableRowResult, TABLE_FIXTURE};
pub use verify::{verify_bh, verify_cycle, verify_family, verify_suite, verify_table, SuiteReport};

use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{admits_type_any_order, classify_shape, decompose_atoms, find_shape, ShapeClass, ShapeTag};
use crate::linkinv::{link_invariants, LinkInvariants};
use crate::moduli::{moduli_report, AutDim, ModuliReport};
use crate::polymodel::{parse_poly, ExponentMatrix, PolySpec, WeightSystem, WeightedPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    Ok,
    Skipped(String),
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub id: String,
    pub line: usize,
    pub system: Option<WeightSystem>,
    pub poly: Option<String>,
    pub shape: Option<ShapeClass>,
    pub link: Option<LinkInvariants>,
    pub moduli: Option<ModuliReport>,
    pub status: RowStatus,
    pub warnings: Vec<String>,
}

impl ScanRow {
    fn error(id: String, line: usize, msg: impl Into<String>) -> Self {
        Self {
            id,
            line,
            system: None,
            poly: None,
            shape: None,
            link: None,
            moduli: None,
            status: RowStatus::Error(msg.into()),
            warnings: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == RowStatus::Ok
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
}

/// Full analysis of one weight system, with the polynomial if known.
pub fn analyze_system(
    id: String,
    line: usize,
    ws: WeightSystem,
    spec: Option<&PolySpec>,
    shape: Option<ShapeClass>,
) -> ScanRow {
    let mut row = ScanRow::error(id, line, "");
    row.system = Some(ws);
    row.poly = spec.map(PolySpec::to_string);
    row.shape = shape;
    let link = match link_invariants(&ws) {
        Ok(l) => l,
        Err(e) => {
            row.status = RowStatus::Error(e.to_string());
            return row;
        }
    };
    let qhs = link.is_qhs;
    row.link = Some(link);
    if !qhs {
        row.status = RowStatus::Skipped("not a Q-homology sphere".into());
        return row;
    }
    let report = moduli_report(&ws, spec, shape.as_ref());
    if shape.is_none() {
        row.warnings.push("no known template fits; closed form unavailable".into());
    }
    if report.aut_dim == AutDim::Unknown {
        row.warnings.push("automorphism dimension not certified zero; mu is the h0 difference".into());
    }
    if let Some(c) = report.closed_form.filter(|_| !report.consistent) {
        row.warnings.push(format!("closed form {c} disagrees with counted mu {}", report.mu_complex));
    }
    if !ws.is_well_formed() {
        row.warnings.push("weights are not well-formed".into());
    }
    row.moduli = Some(report);
    row.status = RowStatus::Ok;
    row
}

pub fn analyze_spec(id: String, line: usize, spec: &PolySpec) -> ScanRow {
    let wp = match WeightedPoly::from_spec(spec) {
        Ok(wp) => wp,
        Err(e) => return ScanRow::error(id, line, e.to_string()),
    };
    let shape = match decompose_atoms(spec) {
        Ok(d) => Some(classify_shape(&d)),
        Err(e) => return ScanRow::error(id, line, e.to_string()),
    };
    analyze_system(id, line, wp.system, Some(spec), shape)
}

pub fn analyze_poly_text(text: &str) -> crate::Result<ScanRow> {
    let spec = parse_poly(text)?;
    Ok(analyze_spec("poly".into(), 0, &spec))
}

pub fn analyze_matrix_json(text: &str) -> crate::Result<ScanRow> {
    let m = ExponentMatrix::from_json(text)?;
    Ok(analyze_spec("matrix".into(), 0, &m.to_spec()))
}

pub fn analyze_weights(ws: WeightSystem) -> ScanRow {
    analyze_system("weights".into(), 0, ws, None, find_shape(&ws))
}

/// Every (degree, template) pair admitted by `w` with positive index.
pub fn infer_degrees(w: &[u64; 5]) -> Vec<(u64, ShapeClass)> {
    let total: u64 = w.iter().sum();
    let lo = *w.iter().max().unwrap() + 1;
    let mut out = Vec::new();
    for d in lo..total {
        for tag in ShapeTag::SEARCH_ORDER {
            if let Some(s) = admits_type_any_order(w, d, tag) {
                out.push((d, s));
            }
        }
    }
    out
}

pub fn analyze_input(row: &InputRow) -> Vec<ScanRow> {
    let id = format!("L{}", row.line);
    if let Some(e) = &row.error {
        return vec![ScanRow::error(id, row.line, e.clone())];
    }
    if let Some(text) = &row.poly {
        let spec = match parse_poly(text) {
            Ok(s) => s,
            Err(e) => return vec![ScanRow::error(id, row.line, e.to_string())],
        };
        let out = analyze_spec(id, row.line, &spec);
        if let (Some(w), Some(sys)) = (row.weights, out.system) {
            let given = WeightSystem { weights: w, degree: row.degree.unwrap_or(sys.degree) };
            if given.normalized() != sys {
                return vec![ScanRow::error(out.id, row.line, format!("weights {given} do not match the polynomial ({sys})"))];
            }
        }
        return vec![out];
    }
    let Some(w) = row.weights else {
        return vec![ScanRow::error(id, row.line, "row has neither weights nor a polynomial")];
    };
    if let Some(d) = row.degree {
        return match WeightSystem::new(w, d) {
            Ok(ws) => vec![analyze_system(id, row.line, ws, None, find_shape(&ws))],
            Err(e) => vec![ScanRow::error(id, row.line, e.to_string())],
        };
    }
    let found = infer_degrees(&w);
    if found.is_empty() {
        return vec![ScanRow::error(id, row.line, "no degree admits a known template")];
    }
    found
        .into_iter()
        .map(|(d, shape)| {
            let ws = WeightSystem { weights: w, degree: d };
            analyze_system(format!("{id}-d{d}-{}", shape.tag), row.line, ws, None, Some(shape))
        })
        .collect()
}

/// Analyze rows in parallel; output order follows input order.
pub fn scan(rows: &[InputRow]) -> ScanReport {
    let nested: Vec<Vec<ScanRow>> = rows.par_iter().map(analyze_input).collect();
    ScanReport { rows: nested.into_iter().flatten().collect() }
}
