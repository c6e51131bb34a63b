use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polymodel::{Exponents, PolySpec, WeightSystem, NVARS};
use crate::scalar::gcd_u64;

/// Kreuzer-Skarke building block.
///
/// Chains are listed head first (`vars[0]` carries a pure power) and
/// `vars[k + 1]` multiplies `vars[k]`: `Chain([0, 1], [7, 3])` is
/// `z0^7 + z0*z1^3`. Cycles follow the same rule with `vars[0]` multiplying
/// the last variable, and are rotated so the smallest index leads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Atom {
    Fermat { var: usize, exp: u32 },
    Chain { vars: Vec<usize>, exps: Vec<u32> },
    Cycle { vars: Vec<usize>, exps: Vec<u32> },
}

impl Atom {
    pub fn vars(&self) -> Vec<usize> {
        match self {
            Atom::Fermat { var, .. } => vec![*var],
            Atom::Chain { vars, .. } | Atom::Cycle { vars, .. } => vars.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Atom::Fermat { .. } => 1,
            Atom::Chain { vars, .. } | Atom::Cycle { vars, .. } => vars.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Fermat { var, exp } => write!(f, "Fermat({var};{exp})"),
            Atom::Chain { vars, exps } => write!(f, "Chain({};{})", vars.iter().join(","), exps.iter().join(",")),
            Atom::Cycle { vars, exps } => write!(f, "Cycle({};{})", vars.iter().join(","), exps.iter().join(",")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AtomDecomposition {
    pub atoms: Vec<Atom>,
}

/// Per variable: the monomial where it is the base, and what it multiplies.
fn base_and_pointer(m: &Exponents) -> Option<(usize, Option<usize>)> {
    let support: Vec<usize> = (0..NVARS).filter(|&i| m[i] > 0).collect();
    match support[..] {
        [b] if m[b] >= 2 => Some((b, None)),
        [i, j] => match (m[i], m[j]) {
            (1, e) if e >= 2 => Some((j, Some(i))),
            (e, 1) if e >= 2 => Some((i, Some(j))),
            _ => None,
        },
        _ => None,
    }
}

pub fn decompose_atoms(spec: &PolySpec) -> Result<AtomDecomposition> {
    if spec.len() != NVARS {
        return Err(Error::MonomialCount(spec.len()));
    }
    let mut exp = [0u32; NVARS];
    let mut pointer = [None; NVARS];
    let mut seen = [false; NVARS];
    for (k, m) in spec.monomials().iter().enumerate() {
        let (b, p) = base_and_pointer(m)
            .ok_or_else(|| Error::NotInvertible(format!("monomial {k} is not of the form z^a or z^a*y")))?;
        if seen[b] {
            return Err(Error::NotInvertible(format!("z{b} is the base of two monomials")));
        }
        seen[b] = true;
        exp[b] = m[b];
        pointer[b] = p;
    }
    // in-degree at most one, otherwise the graph is a tree rather than chains
    let mut pointed_by = [None; NVARS];
    for (b, p) in pointer.iter().enumerate() {
        if let Some(p) = *p {
            if pointed_by[p].replace(b).is_some() {
                return Err(Error::NotInvertible(format!("z{p} is multiplied into two monomials")));
            }
        }
    }

    let mut used = [false; NVARS];
    let mut atoms = Vec::new();
    // chains: start at each head (no pointer) and walk the reverse edges
    for head in 0..NVARS {
        if pointer[head].is_some() {
            continue;
        }
        let mut vars = vec![head];
        let mut cur = head;
        while let Some(next) = pointed_by[cur] {
            vars.push(next);
            cur = next;
        }
        vars.iter().for_each(|&v| used[v] = true);
        let exps: Vec<u32> = vars.iter().map(|&v| exp[v]).collect();
        atoms.push(if vars.len() == 1 { Atom::Fermat { var: head, exp: exps[0] } } else { Atom::Chain { vars, exps } });
    }
    // everything left lies on cycles
    for start in 0..NVARS {
        if used[start] {
            continue;
        }
        let mut vars = vec![start];
        let mut cur = start;
        loop {
            let next = pointed_by[cur].expect("cycle vertex has a predecessor");
            if next == start {
                break;
            }
            vars.push(next);
            cur = next;
        }
        vars.iter().for_each(|&v| used[v] = true);
        let exps = vars.iter().map(|&v| exp[v]).collect();
        atoms.push(Atom::Cycle { vars, exps });
    }
    atoms.sort_by_key(|a| a.vars().into_iter().min());
    Ok(AtomDecomposition { atoms })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ShapeTag {
    Cycle5,
    TypeI,
    TypeII,
    TypeIII,
    BrieskornPham,
    Other,
}

impl ShapeTag {
    /// Order in which templates are tried when only weights are known.
    pub const SEARCH_ORDER: [ShapeTag; 5] =
        [ShapeTag::TypeI, ShapeTag::TypeII, ShapeTag::TypeIII, ShapeTag::Cycle5, ShapeTag::BrieskornPham];

    /// For each template slot, the slot its monomial is multiplied by.
    ///
    /// ```text
    /// Cycle5   z4 z0^a0 + z0 z1^a1 + z1 z2^a2 + z2 z3^a3 + z3 z4^a4
    /// TypeI    z0^a0    + z1^a1    + z4 z2^a2 + z2 z3^a3 + z3 z4^a4
    /// TypeII   z0^a0    + z0 z1^a1 + (cycle on 2,3,4)
    /// TypeIII  z1 z0^a0 + z0 z1^a1 + (cycle on 2,3,4)
    /// ```
    pub fn pointers(self) -> Option<[Option<usize>; NVARS]> {
        const CYC: [Option<usize>; 3] = [Some(4), Some(2), Some(3)];
        let pair = match self {
            ShapeTag::Cycle5 => return Some([Some(4), Some(0), Some(1), Some(2), Some(3)]),
            ShapeTag::BrieskornPham => return Some([None; NVARS]),
            ShapeTag::Other => return None,
            ShapeTag::TypeI => [None, None],
            ShapeTag::TypeII => [None, Some(0)],
            ShapeTag::TypeIII => [Some(1), Some(0)],
        };
        Some([pair[0], pair[1], CYC[0], CYC[1], CYC[2]])
    }

    pub fn has_split(self) -> bool {
        matches!(self, ShapeTag::TypeI | ShapeTag::TypeII | ShapeTag::TypeIII)
    }

    pub fn name(self) -> &'static str {
        match self {
            ShapeTag::Cycle5 => "Cycle5",
            ShapeTag::TypeI => "TypeI",
            ShapeTag::TypeII => "TypeII",
            ShapeTag::TypeIII => "TypeIII",
            ShapeTag::BrieskornPham => "BrieskornPham",
            ShapeTag::Other => "Other",
        }
    }
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A shape together with how its template sits on the actual variables:
/// template slot `i` is variable `vars[i]` with exponent `exponents[i]`.
/// For `Other`, slots are simply the variables in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ShapeClass {
    pub tag: ShapeTag,
    pub exponents: [u32; NVARS],
    pub vars: [usize; NVARS],
}

impl ShapeClass {
    /// Template polynomial on the actual variables.
    pub fn to_spec(&self) -> Option<PolySpec> {
        let ptr = self.tag.pointers()?;
        let monos = (0..NVARS)
            .map(|i| {
                let mut m = [0u32; NVARS];
                m[self.vars[i]] = self.exponents[i];
                if let Some(p) = ptr[i] {
                    m[self.vars[p]] = 1;
                }
                m
            })
            .collect();
        PolySpec::new(monos).ok()
    }

    /// a2*a3*a4 + 1 for shapes carrying a 3-cycle block.
    pub fn cycle_block_m3(&self) -> Option<u64> {
        self.tag.has_split().then(|| self.exponents[2..].iter().map(|&a| a as u64).product::<u64>() + 1)
    }
}

pub fn classify_shape(decomp: &AtomDecomposition) -> ShapeClass {
    let mut fermats = Vec::new();
    let mut chains = Vec::new();
    let mut cycles = Vec::new();
    for a in &decomp.atoms {
        match a {
            Atom::Fermat { var, exp } => fermats.push((*var, *exp)),
            Atom::Chain { vars, exps } => chains.push((vars, exps)),
            Atom::Cycle { vars, exps } => cycles.push((vars, exps)),
        }
    }
    let mut vars = Vec::new();
    let mut exps = Vec::new();
    let tag = match (fermats.len(), chains.as_slice(), cycles.as_slice()) {
        (5, [], []) => {
            fermats.iter().for_each(|&(v, e)| {
                vars.push(v);
                exps.push(e)
            });
            ShapeTag::BrieskornPham
        }
        (0, [], [(v, e)]) if v.len() == 5 => {
            vars.extend(v.iter());
            exps.extend(e.iter());
            ShapeTag::Cycle5
        }
        (2, [], [(v, e)]) if v.len() == 3 => {
            fermats.iter().for_each(|&(v, e)| {
                vars.push(v);
                exps.push(e)
            });
            vars.extend(v.iter());
            exps.extend(e.iter());
            ShapeTag::TypeI
        }
        (0, [(cv, ce)], [(v, e)]) if cv.len() == 2 && v.len() == 3 => {
            vars.extend(cv.iter().chain(v.iter()));
            exps.extend(ce.iter().chain(e.iter()));
            ShapeTag::TypeII
        }
        (0, [], [a, b]) if a.0.len() + b.0.len() == 5 && a.0.len().min(b.0.len()) == 2 => {
            let (two, three) = if a.0.len() == 2 { (a, b) } else { (b, a) };
            vars.extend(two.0.iter().chain(three.0.iter()));
            exps.extend(two.1.iter().chain(three.1.iter()));
            ShapeTag::TypeIII
        }
        _ => {
            let mut exponents = [0u32; NVARS];
            for a in &decomp.atoms {
                match a {
                    Atom::Fermat { var, exp } => exponents[*var] = *exp,
                    Atom::Chain { vars, exps } | Atom::Cycle { vars, exps } => {
                        vars.iter().zip(exps).for_each(|(&v, &e)| exponents[v] = e)
                    }
                }
            }
            return ShapeClass { tag: ShapeTag::Other, exponents, vars: [0, 1, 2, 3, 4] };
        }
    };
    ShapeClass { tag, exponents: exps.try_into().unwrap(), vars: vars.try_into().unwrap() }
}

/// Exponents making `tag`'s template quasi-homogeneous for `(w, d)` with
/// template slot i on variable i. Each slot's exponent is forced by
/// `a_i w_i + w_pointer = d`, so the search over a_i <= d/w_i reduces to one
/// divisibility test per slot.
pub fn admits_type(w: &[u64; NVARS], d: u64, tag: ShapeTag) -> Option<[u32; NVARS]> {
    admits_with_vars(w, d, tag, &[0, 1, 2, 3, 4])
}

fn admits_with_vars(w: &[u64; NVARS], d: u64, tag: ShapeTag, vars: &[usize; NVARS]) -> Option<[u32; NVARS]> {
    let ptr = tag.pointers()?;
    let mut a = [0u32; NVARS];
    for i in 0..NVARS {
        let wi = w[vars[i]];
        let rest = match ptr[i] {
            Some(p) => d.checked_sub(w[vars[p]])?,
            None => d,
        };
        if rest % wi != 0 || rest / wi < 2 {
            return None;
        }
        a[i] = u32::try_from(rest / wi).ok()?;
    }
    Some(a)
}

/// Like [`admits_type`] but over every assignment of template slots to
/// variables; the first hit in lexicographic permutation order is returned.
pub fn admits_type_any_order(w: &[u64; NVARS], d: u64, tag: ShapeTag) -> Option<ShapeClass> {
    (0..NVARS).permutations(NVARS).find_map(|p| {
        let vars: [usize; NVARS] = p.try_into().unwrap();
        admits_with_vars(w, d, tag, &vars).map(|exponents| ShapeClass { tag, exponents, vars })
    })
}

/// First template in [`ShapeTag::SEARCH_ORDER`] admitted by `(w, d)`.
pub fn find_shape(ws: &WeightSystem) -> Option<ShapeClass> {
    ShapeTag::SEARCH_ORDER.iter().find_map(|&t| admits_type_any_order(&ws.weights, ws.degree, t))
}

/// `w = (m3 v0, m3 v1, m2 v2, m2 v3, m2 v4)` up to placement: `v[0..2]`
/// sit on `pair`, `v[2..5]` on `triple`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StructuredSplit {
    pub m2: u64,
    pub m3: u64,
    pub v: [u64; NVARS],
    pub pair: [usize; 2],
    pub triple: [usize; 3],
}

impl StructuredSplit {
    pub fn degree(&self) -> u64 {
        self.m2 * self.m3
    }

    pub fn weights(&self) -> [u64; NVARS] {
        let mut w = [0; NVARS];
        for k in 0..2 {
            w[self.pair[k]] = self.m3 * self.v[k];
        }
        for k in 0..3 {
            w[self.triple[k]] = self.m2 * self.v[2 + k];
        }
        w
    }

    fn invariants_hold(&self) -> bool {
        let v = &self.v;
        gcd_u64(self.m2, self.m3) == 1
            && gcd_u64(v[0], v[1]) == 1
            && gcd_u64(v[2], v[3]) == 1
            && gcd_u64(v[2], v[4]) == 1
            && gcd_u64(v[3], v[4]) == 1
    }

    /// `gcd(v_pair, m2) = 1` and `gcd(v_triple, m3) = 1`, i.e. the u_i of the
    /// link are exactly m2 on the pair and m3 on the triple.
    pub fn u_structure(&self) -> bool {
        self.v[..2].iter().all(|&x| gcd_u64(x, self.m2) == 1) && self.v[2..].iter().all(|&x| gcd_u64(x, self.m3) == 1)
    }
}

/// Every valid split of `(w, d)` with both multipliers above 1, over all 10
/// pair/triple placements and all coprime factorizations of d.
pub fn split_candidates(ws: &WeightSystem) -> Vec<StructuredSplit> {
    let (w, d) = (&ws.weights, ws.degree);
    let mut out = Vec::new();
    for pair in (0..NVARS).combinations(2) {
        let triple: Vec<usize> = (0..NVARS).filter(|i| !pair.contains(i)).collect();
        let gp = gcd_u64(w[pair[0]], w[pair[1]]);
        for m3 in (2..=gp).filter(|m| gp % m == 0 && d % m == 0) {
            let m2 = d / m3;
            if m2 < 2 || gcd_u64(m2, m3) != 1 || triple.iter().any(|&i| w[i] % m2 != 0) {
                continue;
            }
            let s = StructuredSplit {
                m2,
                m3,
                v: [
                    w[pair[0]] / m3,
                    w[pair[1]] / m3,
                    w[triple[0]] / m2,
                    w[triple[1]] / m2,
                    w[triple[2]] / m2,
                ],
                pair: [pair[0], pair[1]],
                triple: [triple[0], triple[1], triple[2]],
            };
            if s.invariants_hold() {
                out.push(s);
            }
        }
    }
    out
}

/// The split whose pair block is the shape's two-variable atom, with `v`
/// listed in template order.
pub fn extract_split(ws: &WeightSystem, shape: &ShapeClass) -> Result<StructuredSplit> {
    if !shape.tag.has_split() {
        return Err(Error::NoSplit(format!("{} has no pair/triple block", shape.tag)));
    }
    let mut pair = [shape.vars[0], shape.vars[1]];
    pair.sort_unstable();
    let hits: Vec<StructuredSplit> = split_candidates(ws).into_iter().filter(|s| s.pair == pair).collect();
    match hits[..] {
        [] => Err(Error::NoSplit(format!("{ws} is not of the form (m3 v0, m3 v1, m2 v2, m2 v3, m2 v4)"))),
        [s] => {
            let pair = [shape.vars[0], shape.vars[1]];
            let triple = [shape.vars[2], shape.vars[3], shape.vars[4]];
            let mut v = [0; NVARS];
            for k in 0..2 {
                v[k] = ws.weights[pair[k]] / s.m3;
            }
            for k in 0..3 {
                v[2 + k] = ws.weights[triple[k]] / s.m2;
            }
            Ok(StructuredSplit { m2: s.m2, m3: s.m3, v, pair, triple })
        }
        _ => Err(Error::AmbiguousSplit(hits.len())),
    }
}

/// Weights of the 5-cycle `z4 z0^a0 + z0 z1^a1 + ...` before normalization:
/// `w_i = 1 - a_{i+1} + a_{i+1}a_{i+2} - ... + a_{i+1}..a_{i+4}` and
/// `d = 1 + a0 a1 a2 a3 a4`.
pub fn cycle_weights_from_exponents(a: &[u64; NVARS]) -> ([u64; NVARS], u64) {
    assert!(a.iter().all(|&x| x >= 2), "cycle exponents must be at least 2");
    let mut w = [0u64; NVARS];
    for (i, wi) in w.iter_mut().enumerate() {
        let mut term: i128 = 1;
        let mut acc: i128 = 1;
        for k in 1..NVARS {
            term *= -(a[(i + k) % NVARS] as i128);
            acc += term;
        }
        assert!(acc > 0, "cycle weight must be positive");
        *wi = acc as u64;
    }
    (w, 1 + a.iter().product::<u64>())
}

/// True when no weight shares a factor with the degree.
pub fn degree_coprime(ws: &WeightSystem) -> bool {
    ws.weights.iter().all(|w| w.gcd(&ws.degree) == 1)
}
