use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::atoms::{classify_shape, decompose_atoms, degree_coprime, extract_split, ShapeClass, ShapeTag, StructuredSplit};
use crate::error::{Error, Result};
use crate::latticecount::h0;
use crate::linkinv::{is_qhs, LinkInvariants};
use crate::polymodel::{ExponentMatrix, PolySpec, WeightSystem, WeightedPoly, NVARS};
use crate::scalar::{gcd_all, ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AutDim {
    Zero,
    Unknown,
}

/// Zero when no two monomials form `z_i^2 + z_j^2` and at most one weight
/// reaches d/2. Never claims a positive dimension.
pub fn aut_dim_criterion(spec: Option<&PolySpec>, ws: &WeightSystem) -> AutDim {
    let squares = spec.map_or(0, |s| {
        s.monomials().iter().filter(|m| m.iter().filter(|&&e| e > 0).count() == 1 && m.contains(&2)).count()
    });
    let heavy = ws.weights.iter().filter(|&&w| 2 * w >= ws.degree).count();
    if squares < 2 && heavy <= 1 {
        AutDim::Zero
    } else {
        AutDim::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub h0_d: u64,
    pub h0_w: [u64; NVARS],
    pub aut_dim: AutDim,
    pub mu_complex: i64,
    pub mu_real: i64,
    pub closed_form: Option<i64>,
    pub consistent: bool,
}

impl ModuliReport {
    pub fn sum_h0_w(&self) -> u64 {
        self.h0_w.iter().sum()
    }
}

/// Count-based dimension, with a closed form attached when the shape allows it.
pub fn moduli_report(ws: &WeightSystem, spec: Option<&PolySpec>, shape: Option<&ShapeClass>) -> ModuliReport {
    let h0_d = h0(&ws.weights, ws.degree as i64);
    let h0_w = ws.weights.map(|w| h0(&ws.weights, w as i64));
    let mu_complex = h0_d as i64 - h0_w.iter().sum::<u64>() as i64;
    let closed_form = shape.and_then(|s| closed_form_for(ws, s));
    ModuliReport {
        h0_d,
        h0_w,
        aut_dim: aut_dim_criterion(spec, ws),
        mu_complex,
        mu_real: 2 * mu_complex,
        closed_form,
        consistent: closed_form.map_or(true, |c| c == mu_complex),
    }
}

pub fn moduli_dimension(wp: &WeightedPoly, spec: &PolySpec) -> Result<ModuliReport> {
    let shape = classify_shape(&decompose_atoms(spec)?);
    Ok(moduli_report(&wp.system, Some(spec), Some(&shape)))
}

/// `m2/(v0 v1) - 1/v0 - 1/v1 - 1`.
pub fn closed_form_mu(split: &StructuredSplit) -> Result<i64> {
    let v = &split.v;
    let mu: Ratio<BigInt> = ratio(split.m2, v[0] * v[1]) - ratio(1, v[0]) - ratio(1, v[1]) - ratio(1, 1);
    if !mu.is_integer() {
        return Err(Error::NonIntegral("closed-form moduli dimension"));
    }
    mu.to_integer().to_i64().ok_or(Error::NonIntegral("closed-form moduli dimension"))
}

/// Closed form when it provably applies: index-one coprime 5-cycles give 0;
/// the three split shapes use [`closed_form_mu`] on rational homology
/// spheres whose u_i are exactly m2 and m3.
pub fn closed_form_for(ws: &WeightSystem, shape: &ShapeClass) -> Option<i64> {
    match shape.tag {
        ShapeTag::Cycle5 => (ws.index() == 1 && degree_coprime(ws)).then_some(0),
        t if t.has_split() => {
            let split = extract_split(ws, shape).ok()?;
            if !split.u_structure() || !is_qhs(ws).ok()? {
                return None;
            }
            closed_form_mu(&split).ok()
        }
        _ => None,
    }
}

pub fn bh_transpose(spec: &PolySpec) -> Result<PolySpec> {
    Ok(ExponentMatrix::from_spec(spec)?.transpose().to_spec())
}

/// Monomials sorted lexicographically.
pub fn canonicalize(spec: &PolySpec) -> PolySpec {
    let mut m = spec.monomials().to_vec();
    m.sort_unstable();
    PolySpec::new(m).expect("reordering keeps a valid spec")
}

/// Dual weights of a Type II polynomial, in the template slots of the
/// transposed polynomial `z0^a0 z1 + z1^a1 + z2^a2 z3 + z3^a3 z4 + z2 z4^a4`.
/// Not normalized.
pub fn bh_dual_weights(split: &StructuredSplit, a: &[u32; NVARS]) -> Result<WeightSystem> {
    let a = a.map(u64::from);
    let (m2, m3) = (split.m2, split.m3);
    if m2 != 1 + a[1] * split.v[1] {
        return Err(Error::Precondition(format!("m2 - 1 = a1 v1 fails: m2={m2}, a1={}, v1={}", a[1], split.v[1])));
    }
    let vt = [a[3] * a[4] - a[4] + 1, a[2] * a[4] - a[2] + 1, a[2] * a[3] - a[3] + 1];
    let w = [m3 * (a[1] - 1), m3 * m2, m2 * a[1] * vt[0], m2 * a[1] * vt[1], m2 * a[1] * vt[2]];
    WeightSystem::new(w, m3 * m2 * a[1])
}

/// The tilde-v triple of the dual cycle block.
pub fn bh_dual_v(a: &[u32; NVARS]) -> [u64; 3] {
    let a = a.map(u64::from);
    [a[3] * a[4] - a[4] + 1, a[2] * a[4] - a[2] + 1, a[2] * a[3] - a[3] + 1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TwinVerdict {
    pub same_degree: bool,
    pub same_milnor: bool,
    pub same_torsion: bool,
    pub both_qhs: bool,
    pub is_twin: bool,
}

pub fn twin_check(f: (&WeightSystem, &LinkInvariants), g: (&WeightSystem, &LinkInvariants)) -> TwinVerdict {
    let same_degree = f.0.degree == g.0.degree;
    let same_milnor = f.1.milnor == g.1.milnor;
    let same_torsion = f.1.torsion == g.1.torsion;
    let both_qhs = f.1.is_qhs && g.1.is_qhs;
    TwinVerdict {
        same_degree,
        same_milnor,
        same_torsion,
        both_qhs,
        is_twin: same_degree && same_milnor && same_torsion && both_qhs,
    }
}

/// Whether two weight systems agree after normalization.
pub fn same_projective_weights(a: &WeightSystem, b: &WeightSystem) -> bool {
    let (a, b) = (a.normalized(), b.normalized());
    a == b && gcd_all(&a.weights) == 1
}
