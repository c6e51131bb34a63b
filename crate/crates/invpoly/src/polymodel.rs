use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{gcd_all, lift, ExactInt};

pub const NVARS: usize = 5;

pub type Exponents = [u32; NVARS];

/// Coefficient-free polynomial: one exponent tuple per monomial, in input order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySpec {
    monomials: Vec<Exponents>,
}

impl PolySpec {
    pub fn new(monomials: Vec<Exponents>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, m) in monomials.iter().enumerate() {
            if m.iter().all(|&e| e == 0) {
                return Err(Error::Syntax { offset: 0, message: format!("monomial {i} is constant") });
            }
            if !seen.insert(*m) {
                return Err(Error::DuplicateMonomial { offset: 0 });
            }
        }
        Ok(Self { monomials })
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

impl fmt::Display for PolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.monomials.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut first = true;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "z{i}")?;
                } else {
                    write!(f, "z{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Whitespace-free view of the input that remembers original byte offsets.
struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars: Vec<_> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, pos: 0, end: text.len() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(o, _)| o)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.offset(), message: message.into() }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        let at = self.offset();
        let s = self.digits().ok_or_else(|| self.err(format!("expected {what}")))?;
        s.parse().map_err(|_| Error::Syntax { offset: at, message: format!("{what} too large") })
    }
}

/// Parse `z0^2*z4 + z0*z1^3`-style text. Numeric coefficients (`3*z0^2`,
/// `2.5 z1`) are accepted and dropped.
pub fn parse_poly(text: &str) -> Result<PolySpec> {
    let mut cur = Cursor::new(text);
    let mut monomials = Vec::new();
    let mut seen = HashSet::new();
    loop {
        let start = cur.offset();
        let mono = parse_monomial(&mut cur)?;
        if !seen.insert(mono) {
            return Err(Error::DuplicateMonomial { offset: start });
        }
        monomials.push(mono);
        match cur.peek() {
            None => break,
            Some('+') => cur.bump(),
            Some(c) => return Err(cur.err(format!("unexpected '{c}'"))),
        }
    }
    Ok(PolySpec { monomials })
}

fn parse_monomial(cur: &mut Cursor) -> Result<Exponents> {
    let mut exps = [0u32; NVARS];
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        cur.digits();
        if cur.peek() == Some('.') {
            cur.bump();
            cur.digits();
        }
        if cur.peek() == Some('*') {
            cur.bump();
        }
    }
    loop {
        if cur.peek() != Some('z') {
            return Err(cur.err("expected variable 'z<i>'"));
        }
        cur.bump();
        let at = cur.offset();
        let index = cur.number("variable index")?;
        if index >= NVARS as u64 {
            return Err(Error::VariableRange { offset: at, index });
        }
        let mut e = 1u64;
        if cur.peek() == Some('^') {
            cur.bump();
            let at = cur.offset();
            e = cur.number("exponent")?;
            if e == 0 {
                return Err(Error::Syntax { offset: at, message: "exponent must be at least 1".into() });
            }
        }
        let slot = &mut exps[index as usize];
        *slot = u32::try_from(*slot as u64 + e)
            .map_err(|_| Error::Syntax { offset: at, message: "exponent exceeds 32 bits".into() })?;
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            return Ok(exps);
        }
    }
}

/// Square exponent matrix of an invertible polynomial; row i is monomial i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct ExponentMatrix {
    rows: [Exponents; NVARS],
}

impl ExponentMatrix {
    pub fn new(rows: [Exponents; NVARS]) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.iter().all(|&e| e == 0) {
                return Err(Error::Matrix(format!("row {i} is zero")));
            }
        }
        let m = Self { rows };
        if m.determinant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    pub fn from_spec(spec: &PolySpec) -> Result<Self> {
        let rows: [Exponents; NVARS] =
            spec.monomials().try_into().map_err(|_| Error::MonomialCount(spec.len()))?;
        Self::new(rows)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Matrix(e.to_string()))
    }

    pub fn rows(&self) -> &[Exponents; NVARS] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut rows = [[0; NVARS]; NVARS];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.rows[j][i];
            }
        }
        Self { rows }
    }

    pub fn to_spec(&self) -> PolySpec {
        PolySpec { monomials: self.rows.to_vec() }
    }

    pub fn determinant(&self) -> BigInt {
        let mut m: Vec<Vec<Ratio<BigInt>>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&e| Ratio::from_integer(BigInt::from(e))).collect())
            .collect();
        let mut det = Ratio::one();
        for col in 0..NVARS {
            let Some(p) = (col..NVARS).find(|&r| !m[r][col].is_zero()) else {
                return BigInt::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= m[col][col].clone();
            for r in col + 1..NVARS {
                let f = &m[r][col] / &m[col][col];
                for c in col..NVARS {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        det.to_integer()
    }
}

impl TryFrom<Vec<Vec<u32>>> for ExponentMatrix {
    type Error = Error;

    fn try_from(v: Vec<Vec<u32>>) -> Result<Self> {
        if v.len() != NVARS || v.iter().any(|r| r.len() != NVARS) {
            return Err(Error::Matrix("expected 5 rows of 5 entries".into()));
        }
        let mut rows = [[0; NVARS]; NVARS];
        for (dst, src) in rows.iter_mut().zip(&v) {
            dst.copy_from_slice(src);
        }
        Self::new(rows)
    }
}

impl From<ExponentMatrix> for Vec<Vec<u32>> {
    fn from(m: ExponentMatrix) -> Self {
        m.rows.iter().map(|r| r.to_vec()).collect()
    }
}

/// Weights and degree. Not required to be primitive; see [`WeightSystem::normalized`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    pub weights: [u64; NVARS],
    pub degree: u64,
}

impl WeightSystem {
    pub fn new(weights: [u64; NVARS], degree: u64) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::Weights("weights must be positive".into()));
        }
        if degree == 0 {
            return Err(Error::Weights("degree must be positive".into()));
        }
        Ok(Self { weights, degree })
    }

    pub fn index(&self) -> i64 {
        self.weights.iter().sum::<u64>() as i64 - self.degree as i64
    }

    /// Divide weights and degree by the gcd of the weights when the degree
    /// stays integral.
    pub fn normalized(&self) -> Self {
        let g = gcd_all(&self.weights);
        if g > 1 && self.degree % g == 0 {
            Self { weights: self.weights.map(|w| w / g), degree: self.degree / g }
        } else {
            *self
        }
    }

    pub fn is_primitive(&self) -> bool {
        gcd_all(&self.weights) == 1
    }

    pub fn is_well_formed(&self) -> bool {
        well_formed(&self.weights)
    }

    /// Degree of a monomial under these weights.
    pub fn degree_of(&self, m: &Exponents) -> u64 {
        m.iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w).sum()
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.weights;
        write!(f, "({},{},{},{},{}); d={}", w[0], w[1], w[2], w[3], w[4], self.degree)
    }
}

/// Every 4-subset of the weights is coprime.
pub fn well_formed(w: &[u64; NVARS]) -> bool {
    (0..NVARS).all(|skip| {
        let rest: Vec<u64> = (0..NVARS).filter(|&i| i != skip).map(|i| w[i]).collect();
        gcd_all(&rest) == 1
    })
}

/// An exponent matrix with its solved, normalized weight system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedPoly {
    pub matrix: ExponentMatrix,
    pub system: WeightSystem,
}

impl WeightedPoly {
    pub fn from_spec(spec: &PolySpec) -> Result<Self> {
        solve_weights(&ExponentMatrix::from_spec(spec)?)
    }

    pub fn weights(&self) -> &[u64; NVARS] {
        &self.system.weights
    }

    pub fn degree(&self) -> u64 {
        self.system.degree
    }

    pub fn index(&self) -> i64 {
        self.system.index()
    }

    pub fn spec(&self) -> PolySpec {
        self.matrix.to_spec()
    }
}

pub fn solve_weights(a: &ExponentMatrix) -> Result<WeightedPoly> {
    solve_weights_in::<BigInt>(a)
}

/// Solve `A x = 1` over the rationals with backing `I`, then clear
/// denominators to the primitive integer weight vector.
pub fn solve_weights_in<I: ExactInt>(a: &ExponentMatrix) -> Result<WeightedPoly> {
    let n = NVARS;
    let mut m: Vec<Vec<Ratio<I>>> = a
        .rows
        .iter()
        .map(|r| {
            let mut row: Vec<Ratio<I>> = r.iter().map(|&e| Ratio::from_integer(lift(e as u64))).collect();
            row.push(Ratio::one());
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
        m.swap(p, col);
        let piv = m[col][col].clone();
        for c in col..=n {
            m[col][c] = m[col][c].clone() / piv.clone();
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=n {
                let sub = f.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
    }
    let x: Vec<Ratio<I>> = m.into_iter().map(|r| r[n].clone()).collect();
    if let Some(i) = x.iter().position(|v| !v.is_positive()) {
        return Err(Error::NonPositiveWeight(i));
    }
    let den = x.iter().fold(I::one(), |l, v| l.lcm(v.denom()));
    let scaled: Vec<I> = x.iter().map(|v| (v.clone() * Ratio::from_integer(den.clone())).to_integer()).collect();
    let g = scaled.iter().fold(I::zero(), |g, v| g.gcd(v));
    let mut weights = [0u64; NVARS];
    for (w, s) in weights.iter_mut().zip(&scaled) {
        *w = (s.clone() / g.clone())
            .to_u64()
            .ok_or_else(|| Error::Weights("weight exceeds 64 bits".into()))?;
    }
    let system = WeightSystem { weights, degree: 0 };
    let degree = system.degree_of(&a.rows[0]);
    if a.rows.iter().any(|r| system.degree_of(r) != degree) {
        return Err(Error::Weights("rows disagree on the degree".into()));
    }
    Ok(WeightedPoly { matrix: a.clone(), system: WeightSystem { weights, degree } })
}
