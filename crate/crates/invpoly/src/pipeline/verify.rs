use num_rational::Ratio;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::table::reproduce_table;
use crate::atoms::{admits_type, admits_type_any_order, classify_shape, decompose_atoms, extract_split, ShapeTag};
use crate::error::{Error, Result};
use crate::families::{
    cycle_instances, dual_case, dual_hypotheses, family_instances, rescaled_family_instances, type2_instances,
    DualCase, FamilyBounds, FamilyInstance,
};
use crate::latticecount::{enumerate_monomials, h0, split_counts};
use crate::linkinv::{alexander_divisor, alpha_beta, betti_b3, is_qhs, link_invariants, Torsion};
use crate::moduli::{bh_dual_weights, bh_transpose, closed_form_mu, moduli_report, same_projective_weights};
use crate::polymodel::WeightedPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, checked: usize, failures: Vec<String>) -> Self {
        Self { suite: suite.into(), checked, failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn collect<T: Sync>(items: &[T], f: impl Fn(&T) -> Vec<String> + Sync + Send) -> Vec<String> {
    items.par_iter().flat_map_iter(f).collect()
}

/// Index-one coprime 5-cycles: the five template monomials are the only
/// degree-d ones, each weight has only its own variable, mu vanishes, and
/// the link has torsion Z_d and Milnor number d - 1.
pub fn verify_cycle(max_a: u32) -> SuiteReport {
    let found = cycle_instances(max_a);
    let mut failures = collect(&found, |c| {
        let mut bad = Vec::new();
        let (w, d) = (&c.system.weights, c.system.degree);
        let tag = format!("a={:?}", c.a);
        if enumerate_monomials(w, d as i64).solutions != c.template_monomials() {
            bad.push(format!("{tag}: degree-d monomials differ from the template"));
        }
        for i in 0..5 {
            let b = enumerate_monomials(w, w[i] as i64);
            let mut unit = [0; 5];
            unit[i] = 1;
            if b.solutions != [unit] {
                bad.push(format!("{tag}: h0(w_{i}) = {}", b.len()));
            }
        }
        let r = moduli_report(&c.system, Some(&c.spec()), Some(&c.shape()));
        if r.mu_complex != 0 || r.closed_form != Some(0) {
            bad.push(format!("{tag}: mu = {}", r.mu_complex));
        }
        match link_invariants(&c.system) {
            Ok(li) if li.is_qhs && li.torsion == Some(Torsion::from_order(d)) && li.milnor == (d - 1) as u128 => {}
            other => bad.push(format!("{tag}: link invariants {other:?}")),
        }
        bad
    });
    if found.len() < 3 {
        failures.push(format!("only {} instances with exponents up to {max_a}", found.len()));
    }
    SuiteReport::new("cycle", found.len(), failures)
}

/// Strongest of Type I > II > III admitted in some variable order.
fn strongest_type(inst: &FamilyInstance) -> Option<ShapeTag> {
    [ShapeTag::TypeI, ShapeTag::TypeII, ShapeTag::TypeIII]
        .into_iter()
        .find(|&t| admits_type_any_order(&inst.system.weights, inst.system.degree, t).is_some())
}

fn check_family_member(inst: &FamilyInstance) -> Vec<String> {
    let mut bad = Vec::new();
    let (ws, s) = (&inst.system, &inst.split);
    let w = &ws.weights;
    let tag = format!("{} {ws}", inst.tag);

    let spec = inst.spec();
    match decompose_atoms(&spec).map(|d| classify_shape(&d)) {
        Ok(shape) if shape.tag == inst.tag => match extract_split(ws, &shape) {
            Ok(found) if found == *s => {}
            other => bad.push(format!("{tag}: split {other:?}")),
        },
        other => bad.push(format!("{tag}: shape {other:?}")),
    }
    if WeightedPoly::from_spec(&spec).map(|wp| wp.system) != Ok(*ws) {
        bad.push(format!("{tag}: solved weights differ"));
    }

    let r = moduli_report(ws, Some(&spec), Some(&inst.shape()));
    match closed_form_mu(s) {
        Ok(c) if c == r.mu_complex && r.consistent => {}
        other => bad.push(format!("{tag}: closed form {other:?} vs counted {}", r.mu_complex)),
    }

    let (pair, triple) = split_counts(w, s);
    if triple != 3 {
        bad.push(format!("{tag}: triple count {triple}"));
    }
    if pair + triple != r.h0_d {
        bad.push(format!("{tag}: pair + triple != h0"));
    }
    for i in 2..5 {
        if r.h0_w[i] != 1 {
            bad.push(format!("{tag}: h0(w_{i}) = {}", r.h0_w[i]));
        }
    }
    let (v0, v1, m2) = (s.v[0], s.v[1], s.m2);
    let mut pair_h0 = [r.h0_w[0], r.h0_w[1]];
    pair_h0.sort_unstable();
    let lo_v = v0.min(v1);
    let hi_v = v0.max(v1);
    match strongest_type(inst) {
        Some(ShapeTag::TypeI) => {
            if (v0, v1) != (1, 1) || pair != m2 + 1 || pair_h0 != [2, 2] {
                bad.push(format!("{tag}: type I counts pair={pair} h0={pair_h0:?} v=({v0},{v1})"));
            }
        }
        Some(ShapeTag::TypeII) => {
            if lo_v != 1 || pair != (m2 - 1) / hi_v + 1 || pair_h0 != [1, 2] {
                bad.push(format!("{tag}: type II counts pair={pair} h0={pair_h0:?} v=({v0},{v1})"));
            }
        }
        Some(ShapeTag::TypeIII) => {
            if lo_v == 1 || pair != m2 / (v0 * v1) + 1 || pair_h0 != [1, 1] {
                bad.push(format!("{tag}: type III counts pair={pair} h0={pair_h0:?} v=({v0},{v1})"));
            }
        }
        other => bad.push(format!("{tag}: admits {other:?}")),
    }
    // a type admits every weaker type in the same coordinates
    let weaker: &[ShapeTag] = match inst.tag {
        ShapeTag::TypeI => &[ShapeTag::TypeII, ShapeTag::TypeIII],
        ShapeTag::TypeII => &[ShapeTag::TypeIII],
        _ => &[],
    };
    for &t in weaker {
        if admits_type(w, ws.degree, t).is_none() {
            bad.push(format!("{tag}: does not admit {t}"));
        }
    }
    bad.extend(check_alpha_beta(inst, true));
    bad
}

/// β = 1 exactly on the rational homology spheres, and the four-term
/// divisor identity holds either way.
fn check_alpha_beta(inst: &FamilyInstance, expect_qhs: bool) -> Vec<String> {
    let mut bad = Vec::new();
    let tag = format!("{} {}", inst.tag, inst.system);
    let ab = alpha_beta(&inst.split);
    let div = match alexander_divisor(&inst.system) {
        Ok(d) => d,
        Err(e) => return vec![format!("{tag}: {e}")],
    };
    if div != ab.divisor(&inst.split) {
        bad.push(format!("{tag}: divisor identity fails: {div}"));
    }
    let qhs = betti_b3(&div).map(|b| b == 0).unwrap_or(false);
    if qhs != expect_qhs || qhs != (ab.beta == Ratio::one()) {
        bad.push(format!("{tag}: qhs={qhs} beta={}", ab.beta));
    }
    if Ratio::from_integer(num_bigint::BigInt::from(betti_b3(&div).unwrap_or(0))) != ab.b3() {
        bad.push(format!("{tag}: b3 differs from (alpha+1)(beta-1)"));
    }
    bad
}

pub fn verify_family(bounds: &FamilyBounds) -> SuiteReport {
    let members = family_instances(bounds);
    let mut failures = collect(&members, check_family_member);
    let rescaled = rescaled_family_instances(bounds);
    failures.extend(collect(&rescaled, |i| check_alpha_beta(i, false)));
    if members.len() < 200 {
        failures.push(format!("only {} family instances generated", members.len()));
    }
    SuiteReport::new("family", members.len() + rescaled.len(), failures)
}

fn check_dual(inst: &FamilyInstance) -> Vec<String> {
    let mut bad = Vec::new();
    let tag = format!("a={:?}", inst.a);
    let formula = match bh_dual_weights(&inst.split, &inst.a) {
        Ok(w) => w,
        Err(e) => return vec![format!("{tag}: {e}")],
    };
    let solved = bh_transpose(&inst.spec()).and_then(|t| WeightedPoly::from_spec(&t));
    let dual = match solved {
        Ok(wp) if same_projective_weights(&wp.system, &formula) => wp.system,
        other => return vec![format!("{tag}: transpose weights {other:?} vs formula {formula}")],
    };
    if !dual_hypotheses(inst) {
        return bad;
    }
    let expected = match dual_case(inst) {
        DualCase::Five => 5,
        DualCase::Six => 6,
        DualCase::Uncovered => return bad,
    };
    let r = moduli_report(&dual, None, None);
    let count = h0(&formula.weights, formula.degree as i64);
    if count != expected || r.h0_d != expected {
        bad.push(format!("{tag}: dual has {count} degree-d monomials, expected {expected}"));
    }
    if r.mu_complex != 0 {
        bad.push(format!("{tag}: dual mu = {}", r.mu_complex));
    }
    if !is_qhs(&dual).unwrap_or(false) {
        bad.push(format!("{tag}: dual is not a rational homology sphere"));
    }
    bad
}

pub fn verify_bh(bounds: &FamilyBounds) -> SuiteReport {
    let members = type2_instances(bounds);
    let failures = collect(&members, check_dual);
    SuiteReport::new("bh", members.len(), failures)
}

pub fn verify_table() -> SuiteReport {
    let t = reproduce_table();
    SuiteReport::new("table", t.rows.len(), t.diffs.iter().map(ToString::to_string).collect())
}

pub fn verify_suite(name: &str) -> Result<SuiteReport> {
    let bounds = FamilyBounds::default();
    match name {
        "cycle" => Ok(verify_cycle(12)),
        "family" => Ok(verify_family(&bounds)),
        "bh" => Ok(verify_bh(&bounds)),
        "table" => Ok(verify_table()),
        other => Err(Error::Input(format!("unknown suite '{other}' (cycle, family, bh, table)"))),
    }
}
