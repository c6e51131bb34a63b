use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::atoms::StructuredSplit;
use crate::error::{Error, Result};
use crate::polymodel::{WeightSystem, NVARS};
use crate::scalar::{factorize, lift, ratio, ExactInt};

/// Element of the divisor ring spanned by `Λ_n`, with
/// `Λ_a Λ_b = gcd(a, b) Λ_lcm(a, b)` and `Λ_1` as the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloDivisor<I: ExactInt> {
    coeffs: BTreeMap<u64, Ratio<I>>,
}

impl<I: ExactInt> CycloDivisor<I> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::lambda(1)
    }

    pub fn lambda(n: u64) -> Self {
        Self::term(n, Ratio::one())
    }

    pub fn term(n: u64, c: Ratio<I>) -> Self {
        assert!(n > 0, "Λ_0 is not defined");
        let mut d = Self::zero();
        d.add_term(n, c);
        d
    }

    fn add_term(&mut self, n: u64, c: Ratio<I>) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(n).or_insert_with(Ratio::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: u64) -> Ratio<I> {
        self.coeffs.get(&n).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Ratio<I>)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    pub fn support(&self) -> Vec<u64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Ratio::is_integer)
    }

    pub fn scale(&self, c: &Ratio<I>) -> Self {
        let mut out = Self::zero();
        for (&n, v) in &self.coeffs {
            out.add_term(n, v.clone() * c.clone());
        }
        out
    }

    /// Sum of coefficients: the multiplicity of the eigenvalue 1.
    pub fn degree_sum(&self) -> Ratio<I> {
        self.coeffs.values().fold(Ratio::zero(), |s, c| s + c.clone())
    }
}

impl<I: ExactInt> Add for &CycloDivisor<I> {
    type Output = CycloDivisor<I>;
    fn add(self, rhs: Self) -> CycloDivisor<I> {
        let mut out = self.clone();
        for (&n, c) in &rhs.coeffs {
            out.add_term(n, c.clone());
        }
        out
    }
}

impl<I: ExactInt> Neg for &CycloDivisor<I> {
    type Output = CycloDivisor<I>;
    fn neg(self) -> CycloDivisor<I> {
        self.scale(&-Ratio::<I>::one())
    }
}

impl<I: ExactInt> Sub for &CycloDivisor<I> {
    type Output = CycloDivisor<I>;
    fn sub(self, rhs: Self) -> CycloDivisor<I> {
        self + &-rhs
    }
}

impl<I: ExactInt> Mul for &CycloDivisor<I> {
    type Output = CycloDivisor<I>;
    fn mul(self, rhs: Self) -> CycloDivisor<I> {
        let mut out = CycloDivisor::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                let g = a.gcd(&b);
                out.add_term(a / g * b, ca.clone() * cb.clone() * Ratio::from_integer(lift::<I>(g)));
            }
        }
        out
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl<I: ExactInt> $tr for CycloDivisor<I> {
            type Output = CycloDivisor<I>;
            fn $f(self, rhs: Self) -> CycloDivisor<I> {
                (&self).$f(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl<I: ExactInt> fmt::Display for CycloDivisor<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (n, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}*L{n}", c.abs())?;
        }
        Ok(())
    }
}

/// `u_i = d / gcd(d, w_i)`, `v_i = w_i / gcd(d, w_i)`.
pub fn uv_pairs(ws: &WeightSystem) -> [(u64, u64); NVARS] {
    ws.weights.map(|w| {
        let g = ws.degree.gcd(&w);
        (ws.degree / g, w / g)
    })
}

pub fn alexander_divisor(ws: &WeightSystem) -> Result<CycloDivisor<BigInt>> {
    alexander_divisor_in(ws)
}

/// `∏_i (Λ_{u_i} / v_i - Λ_1)`, expanded exactly.
pub fn alexander_divisor_in<I: ExactInt>(ws: &WeightSystem) -> Result<CycloDivisor<I>> {
    let mut acc = CycloDivisor::<I>::one();
    for (u, v) in uv_pairs(ws) {
        let factor = &CycloDivisor::term(u, ratio(1, v)) - &CycloDivisor::one();
        acc = &acc * &factor;
    }
    if !acc.is_integral() {
        return Err(Error::NonIntegral("Alexander divisor coefficient"));
    }
    Ok(acc)
}

pub fn betti_b3<I: ExactInt>(div: &CycloDivisor<I>) -> Result<u64> {
    let s = div.degree_sum();
    if !s.is_integer() || s.is_negative() {
        return Err(Error::NonIntegral("third Betti number"));
    }
    s.to_integer().to_u64().ok_or(Error::NonIntegral("third Betti number"))
}

/// Order of the torsion of middle homology, kept as a prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Torsion {
    pub primes: BTreeMap<u64, u32>,
}

impl Torsion {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_order(n: u64) -> Self {
        Self { primes: factorize(n).into_iter().collect() }
    }

    pub fn order(&self) -> BigUint {
        self.primes.iter().fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    pub fn pairs(&self) -> Vec<(u64, u32)> {
        self.primes.iter().map(|(&p, &e)| (p, e)).collect()
    }
}

impl fmt::Display for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.order())
    }
}

impl Serialize for Torsion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

/// `|Δ(1)| = ∏ n^{a_n}` when the coefficients sum to zero.
pub fn torsion_order<I: ExactInt>(div: &CycloDivisor<I>) -> Result<Torsion> {
    if betti_b3(div)? != 0 {
        return Err(Error::NotQhs);
    }
    let mut exps: BTreeMap<u64, i128> = BTreeMap::new();
    for (n, c) in div.iter().filter(|&(n, _)| n > 1) {
        let a = c.to_integer().to_i128().ok_or(Error::NonIntegral("torsion exponent"))?;
        for (p, e) in factorize(n) {
            *exps.entry(p).or_default() += a * e as i128;
        }
    }
    let mut primes = BTreeMap::new();
    for (p, e) in exps {
        match e {
            0 => {}
            e if e > 0 => {
                primes.insert(p, u32::try_from(e).map_err(|_| Error::NonIntegral("torsion exponent"))?);
            }
            _ => return Err(Error::NonIntegral("torsion order")),
        }
    }
    Ok(Torsion { primes })
}

/// `∏ (d - w_i) / w_i`.
pub fn milnor_number(ws: &WeightSystem) -> Result<u128> {
    let d = ws.degree;
    let mut acc = Ratio::<BigInt>::one();
    for &w in &ws.weights {
        if w >= d {
            return Err(Error::Weights(format!("weight {w} is not below the degree {d}")));
        }
        acc *= ratio::<BigInt>(d - w, w);
    }
    if !acc.is_integer() {
        return Err(Error::NonIntegral("Milnor number"));
    }
    acc.to_integer().to_u128().ok_or(Error::NonIntegral("Milnor number"))
}

pub fn is_qhs(ws: &WeightSystem) -> Result<bool> {
    Ok(betti_b3(&alexander_divisor(ws)?)? == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaBeta<I: ExactInt> {
    pub alpha: Ratio<I>,
    pub beta: Ratio<I>,
}

impl<I: ExactInt> AlphaBeta<I> {
    /// `αβ Λ_d + β Λ_m3 - α Λ_m2 - Λ_1`.
    pub fn divisor(&self, split: &StructuredSplit) -> CycloDivisor<I> {
        let ab = self.alpha.clone() * self.beta.clone();
        let mut out = CycloDivisor::term(split.degree(), ab);
        out = &out + &CycloDivisor::term(split.m3, self.beta.clone());
        out = &out - &CycloDivisor::term(split.m2, self.alpha.clone());
        &out - &CycloDivisor::one()
    }

    /// `(α + 1)(β - 1)`, the Betti number the identity predicts.
    pub fn b3(&self) -> Ratio<I> {
        (self.alpha.clone() + Ratio::one()) * (self.beta.clone() - Ratio::one())
    }
}

pub fn alpha_beta(split: &StructuredSplit) -> AlphaBeta<BigInt> {
    alpha_beta_in(split)
}

/// α from the pair block against m2, β from the triple block against m3.
pub fn alpha_beta_in<I: ExactInt>(split: &StructuredSplit) -> AlphaBeta<I> {
    let r = |n: u64, d: u64| ratio::<I>(n, d);
    let v = &split.v;
    let alpha = r(split.m2, v[0] * v[1]) - r(1, v[0]) - r(1, v[1]);
    let beta = (r(split.m3, v[3] * v[4]) - r(1, v[3]) - r(1, v[4])) * (r(split.m3, v[2]) - Ratio::one()) + r(1, v[2]);
    AlphaBeta { alpha, beta }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkInvariants {
    pub milnor: u128,
    pub b3: u64,
    pub torsion: Option<Torsion>,
    pub is_qhs: bool,
}

pub fn link_invariants(ws: &WeightSystem) -> Result<LinkInvariants> {
    let milnor = milnor_number(ws)?;
    let div = alexander_divisor(ws)?;
    let b3 = betti_b3(&div)?;
    let torsion = if b3 == 0 { Some(torsion_order(&div)?) } else { None };
    Ok(LinkInvariants { milnor, b3, torsion, is_qhs: b3 == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = CycloDivisor<BigInt>;

    fn ws(w: [u64; 5], d: u64) -> WeightSystem {
        WeightSystem::new(w, d).unwrap()
    }

    #[test]
    fn unit_law() {
        let f = &D::lambda(12) - &D::one();
        assert_eq!(&f * &D::one(), f);
        assert_eq!(&D::lambda(4) * &D::lambda(6), D::term(12, Ratio::from_integer(BigInt::from(2))));
        assert!(D::zero().is_zero());
        assert_eq!(betti_b3(&D::zero()).unwrap(), 0);
        assert_eq!(torsion_order(&D::zero()).unwrap(), Torsion::trivial());
    }

    #[test]
    fn uv_examples() {
        assert_eq!(uv_pairs(&ws([1; 5], 3)), [(3, 1); 5]);
        assert_eq!(uv_pairs(&ws([13, 26, 35, 28, 21], 91)), [(7, 1), (7, 2), (13, 5), (13, 4), (13, 3)]);
    }

    #[test]
    fn cycle_link() {
        let w = ws([22, 17, 28, 15, 29], 73);
        let div = alexander_divisor(&w).unwrap();
        assert_eq!(div.support(), vec![1, 73]);
        assert_eq!(betti_b3(&div).unwrap(), 0);
        assert_eq!(torsion_order(&div).unwrap(), Torsion::from_order(73));
        assert_eq!(milnor_number(&w).unwrap(), 72);
        assert!(is_qhs(&w).unwrap());
    }

    #[test]
    fn cubic_threefold_not_qhs() {
        let w = ws([1; 5], 3);
        assert_eq!(milnor_number(&w).unwrap(), 32);
        let div = alexander_divisor(&w).unwrap();
        assert_eq!(betti_b3(&div).unwrap(), 10);
        assert!(!is_qhs(&w).unwrap());
        assert_eq!(torsion_order(&div), Err(Error::NotQhs));
        let li = link_invariants(&w).unwrap();
        assert_eq!(li.torsion, None);
    }

    #[test]
    fn worked_divisor_identity() {
        let w = ws([13, 26, 35, 28, 21], 91);
        let split = StructuredSplit { m2: 7, m3: 13, v: [1, 2, 5, 4, 3], pair: [0, 1], triple: [2, 3, 4] };
        let ab = alpha_beta(&split);
        assert_eq!(ab.alpha, Ratio::from_integer(BigInt::from(2)));
        assert_eq!(ab.beta, Ratio::one());
        let div = alexander_divisor(&w).unwrap();
        assert_eq!(div, ab.divisor(&split));
        assert_eq!(torsion_order(&div).unwrap().order(), BigUint::from(2197u32));
        assert_eq!(torsion_order(&div).unwrap().pairs(), vec![(13, 3)]);
        let small: CycloDivisor<i64> = alexander_divisor_in(&w).unwrap();
        assert_eq!(small.to_string(), div.to_string());
    }

    #[test]
    fn pair_side_all_ones() {
        let split = StructuredSplit { m2: 9, m3: 13, v: [1, 1, 5, 4, 3], pair: [0, 1], triple: [2, 3, 4] };
        assert_eq!(alpha_beta(&split).alpha, Ratio::from_integer(BigInt::from(7)));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(milnor_number(&ws([1, 1, 1, 1, 5], 5)).is_err());
        assert_eq!(milnor_number(&ws([2, 2, 2, 2, 3], 7)), Err(Error::NonIntegral("Milnor number")));
    }

    #[test]
    fn display() {
        let f = &D::lambda(6) - &D::one();
        assert_eq!(f.to_string(), "-1*L1 + 1*L6");
    }
}
