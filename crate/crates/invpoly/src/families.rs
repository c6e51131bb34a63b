//! Instance generators for the cycle and pair-plus-cycle families.

use itertools::iproduct;
use num_integer::Integer;
use serde::Serialize;

use crate::atoms::{cycle_weights_from_exponents, degree_coprime, ShapeClass, ShapeTag, StructuredSplit};
use crate::moduli::bh_dual_v;
use crate::polymodel::{PolySpec, WeightSystem, NVARS};
use crate::scalar::gcd_all;

const IDENTITY: [usize; NVARS] = [0, 1, 2, 3, 4];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleInstance {
    pub a: [u32; NVARS],
    pub system: WeightSystem,
}

impl CycleInstance {
    pub fn shape(&self) -> ShapeClass {
        ShapeClass { tag: ShapeTag::Cycle5, exponents: self.a, vars: IDENTITY }
    }

    pub fn spec(&self) -> PolySpec {
        self.shape().to_spec().expect("cycle template is a valid spec")
    }

    /// The five degree-d monomials of the cycle template.
    pub fn template_monomials(&self) -> Vec<[u64; NVARS]> {
        let mut out: Vec<[u64; NVARS]> =
            self.spec().monomials().iter().map(|m| m.map(u64::from)).collect();
        out.sort_unstable();
        out
    }
}

/// Index-one 5-cycles with all exponents in `2..=max_a` and every weight
/// coprime to the degree.
pub fn cycle_instances(max_a: u32) -> Vec<CycleInstance> {
    let r = 2..=max_a as u64;
    iproduct!(r.clone(), r.clone(), r.clone(), r.clone(), r)
        .filter_map(|(a0, a1, a2, a3, a4)| {
            let a = [a0, a1, a2, a3, a4];
            let (w, d) = cycle_weights_from_exponents(&a);
            let system = WeightSystem { weights: w, degree: d };
            (system.index() == 1 && degree_coprime(&system))
                .then(|| CycleInstance { a: a.map(|x| x as u32), system })
        })
        .collect()
}

/// The 3-cycle `z4 z2^a2 + z2 z3^a3 + z3 z4^a4` scaled to `m3 = D / g` with
/// `D = a2 a3 a4 + 1` and `g = gcd(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleBlock {
    pub a: [u32; 3],
    pub v: [u64; 3],
    pub m3: u64,
    pub g: u64,
}

/// All pairwise-coprime cycle blocks with exponents in `2..=max_a`.
pub fn cycle_blocks(max_a: u32) -> Vec<CycleBlock> {
    let r = 2..=max_a as u64;
    iproduct!(r.clone(), r.clone(), r)
        .filter_map(|(a2, a3, a4)| {
            let raw = [a3 * a4 - a3 + 1, a2 * a4 - a4 + 1, a2 * a3 - a2 + 1];
            let g = gcd_all(&raw);
            let v = raw.map(|x| x / g);
            let coprime = v[0].gcd(&v[1]) == 1 && v[0].gcd(&v[2]) == 1 && v[1].gcd(&v[2]) == 1;
            coprime.then(|| CycleBlock {
                a: [a2 as u32, a3 as u32, a4 as u32],
                v,
                m3: (a2 * a3 * a4 + 1) / g,
                g,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyBounds {
    pub cycle_max: u32,
    pub type1_m2_max: u64,
    pub type2_v1_max: u64,
    pub type2_a1_max: u64,
    pub type3_v_max: u64,
    pub type3_k_max: u64,
}

impl Default for FamilyBounds {
    fn default() -> Self {
        Self { cycle_max: 5, type1_m2_max: 11, type2_v1_max: 5, type2_a1_max: 7, type3_v_max: 4, type3_k_max: 4 }
    }
}

/// A generated pair-plus-cycle instance in template coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    pub tag: ShapeTag,
    pub a: [u32; NVARS],
    pub split: StructuredSplit,
    pub system: WeightSystem,
    /// Scale factor removed from the cycle block; 1 for the QHS family.
    pub g: u64,
}

impl FamilyInstance {
    pub fn shape(&self) -> ShapeClass {
        ShapeClass { tag: self.tag, exponents: self.a, vars: IDENTITY }
    }

    pub fn spec(&self) -> PolySpec {
        self.shape().to_spec().expect("template is a valid spec")
    }
}

fn build(tag: ShapeTag, block: &CycleBlock, v0: u64, v1: u64, a0: u64, a1: u64, m2: u64) -> Option<FamilyInstance> {
    if m2.gcd(&block.m3) != 1 {
        return None;
    }
    let split = StructuredSplit {
        m2,
        m3: block.m3,
        v: [v0, v1, block.v[0], block.v[1], block.v[2]],
        pair: [0, 1],
        triple: [2, 3, 4],
    };
    let a = [a0 as u32, a1 as u32, block.a[0], block.a[1], block.a[2]];
    let system = WeightSystem { weights: split.weights(), degree: split.degree() };
    Some(FamilyInstance { tag, a, split, system, g: block.g })
}

/// Type I / II / III instances over the given cycle blocks.
pub fn family_from_blocks(blocks: &[CycleBlock], b: &FamilyBounds) -> Vec<FamilyInstance> {
    let mut out = Vec::new();
    for block in blocks {
        for m2 in 3..=b.type1_m2_max {
            out.extend(build(ShapeTag::TypeI, block, 1, 1, m2, m2, m2));
        }
        for (v1, a1) in iproduct!(1..=b.type2_v1_max, 2..=b.type2_a1_max) {
            let m2 = 1 + a1 * v1;
            out.extend(build(ShapeTag::TypeII, block, 1, v1, m2, a1, m2));
        }
        for (v0, v1, k) in iproduct!(1..=b.type3_v_max, 1..=b.type3_v_max, 1..=b.type3_k_max) {
            if v0.gcd(&v1) != 1 {
                continue;
            }
            let m2 = v0 + v1 + k * v0 * v1;
            out.extend(build(ShapeTag::TypeIII, block, v0, v1, 1 + k * v1, k * v0 + 1, m2));
        }
    }
    out
}

/// Instances whose cycle block needs no rescaling (g = 1); these are the
/// rational homology spheres.
pub fn family_instances(b: &FamilyBounds) -> Vec<FamilyInstance> {
    let blocks: Vec<_> = cycle_blocks(b.cycle_max).into_iter().filter(|c| c.g == 1).collect();
    family_from_blocks(&blocks, b)
}

/// Instances built on rescaled cycle blocks (g > 1).
pub fn rescaled_family_instances(b: &FamilyBounds) -> Vec<FamilyInstance> {
    let blocks: Vec<_> = cycle_blocks(b.cycle_max).into_iter().filter(|c| c.g > 1).collect();
    family_from_blocks(&blocks, b)
}

/// Which dual count applies to a Type II instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DualCase {
    /// a1 > 2 and gcd(a1, m3) = 1: five degree-d monomials.
    Five,
    /// a1 = 2: six degree-d monomials.
    Six,
    /// Neither hypothesis holds.
    Uncovered,
}

pub fn dual_case(inst: &FamilyInstance) -> DualCase {
    let a1 = inst.a[1] as u64;
    if a1 == 2 {
        DualCase::Six
    } else if a1.gcd(&inst.split.m3) == 1 {
        DualCase::Five
    } else {
        DualCase::Uncovered
    }
}

/// The dual counts additionally need gcd(m2, a1 - 1) = 1 and a pairwise
/// coprime dual cycle block; without them the dual can pick up extra
/// degree-d monomials.
pub fn dual_hypotheses(inst: &FamilyInstance) -> bool {
    let vt = bh_dual_v(&inst.a);
    inst.split.m2.gcd(&(inst.a[1] as u64 - 1)) == 1
        && vt[0].gcd(&vt[1]) == 1
        && vt[0].gcd(&vt[2]) == 1
        && vt[1].gcd(&vt[2]) == 1
}

pub fn type2_instances(b: &FamilyBounds) -> Vec<FamilyInstance> {
    family_instances(b).into_iter().filter(|i| i.tag == ShapeTag::TypeII).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_search_finds_known_instance() {
        let found = cycle_instances(6);
        assert!(found.iter().any(|c| c.a == [2, 5, 5, 6, 6]
            && c.system == WeightSystem { weights: [771, 206, 319, 247, 259], degree: 1801 }));
        assert!(found.iter().all(|c| c.system.index() == 1));
    }

    #[test]
    fn worked_block() {
        let b = cycle_blocks(3).into_iter().find(|b| b.a == [2, 2, 3]).unwrap();
        assert_eq!((b.v, b.m3, b.g), ([5, 4, 3], 13, 1));
        let inst = build(ShapeTag::TypeII, &b, 1, 2, 7, 3, 7).unwrap();
        assert_eq!(inst.system.weights, [13, 26, 35, 28, 21]);
        assert_eq!(inst.spec().to_string(), "z0^7 + z0*z1^3 + z2^2*z4 + z2*z3^2 + z3*z4^3");
        assert_eq!(dual_case(&inst), DualCase::Five);
        assert!(dual_hypotheses(&inst));
    }

    #[test]
    fn rescaled_block() {
        let b = cycle_blocks(2)[0];
        assert_eq!((b.a, b.v, b.m3, b.g), ([2, 2, 2], [1, 1, 1], 3, 3));
    }

    #[test]
    fn templates_are_homogeneous() {
        for inst in family_instances(&FamilyBounds::default()) {
            let spec = inst.spec();
            assert!(spec.monomials().iter().all(|m| inst.system.degree_of(m) == inst.system.degree), "{inst:?}");
        }
    }
}
