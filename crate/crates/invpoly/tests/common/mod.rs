//! Reference computations used only by the integration tests. Each one is
//! written from the definition and shares no code with the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Nested loops over x0..x3 with budget pruning; x4 is forced.
pub fn naive_h0(w: &[u64; 5], k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let k = k as u64;
    let mut n = 0;
    for x0 in 0..=k / w[0] {
        let r0 = k - x0 * w[0];
        for x1 in 0..=r0 / w[1] {
            let r1 = r0 - x1 * w[1];
            for x2 in 0..=r1 / w[2] {
                let r2 = r1 - x2 * w[2];
                for x3 in 0..=r2 / w[3] {
                    if (r2 - x3 * w[3]) % w[4] == 0 {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

/// Coefficient of t^k in prod 1/(1 - t^w_i).
pub fn series_h0(w: &[u64], k: u64) -> u64 {
    let k = k as usize;
    let mut c = vec![0u64; k + 1];
    c[0] = 1;
    for &wi in w {
        for j in wi as usize..=k {
            c[j] += c[j - wi as usize];
        }
    }
    c[k]
}

/// Monodromy data read off the Milnor algebra: its Poincare polynomial is
/// prod (t^(d-w_i) - 1)/(t^(w_i) - 1), and the basis monomial of degree j
/// carries eigenvalue exp(2 pi i (j + |w|)/d).
pub struct MilnorOracle {
    pub milnor: u64,
    pub b3: u64,
    pub torsion_order: Option<BigUint>,
}

pub fn milnor_oracle(w: &[u64; 5], d: u64) -> MilnorOracle {
    // numerator prod (t^(d-w_i) - 1), computed with signed coefficients
    let deg: usize = w.iter().map(|&x| (d - x) as usize).sum();
    let mut p = vec![0i64; deg + 1];
    p[0] = 1;
    let mut top = 0;
    for &wi in w {
        let s = (d - wi) as usize;
        let mut q = vec![0i64; deg + 1];
        for j in 0..=top {
            if p[j] != 0 {
                q[j + s] += p[j];
                q[j] -= p[j];
            }
        }
        p = q;
        top += s;
    }
    // exact division by each (t^w - 1): p = (t^w - 1) q gives q[j] = q[j-w] - p[j]
    for &wi in w {
        let wi = wi as usize;
        let mut q = vec![0i64; deg + 1];
        for j in 0..=deg {
            q[j] = if j >= wi { q[j - wi] } else { 0 } - p[j];
        }
        p = q;
    }
    assert!(p.iter().all(|&c| c >= 0), "Poincare series must be a polynomial with nonnegative coefficients");
    let sw: u64 = w.iter().sum();
    let mut classes = vec![0u64; d as usize];
    for (j, &c) in p.iter().enumerate() {
        classes[((j as u64 + sw) % d) as usize] += c as u64;
    }
    let milnor = classes.iter().sum();
    let b3 = classes[0];
    let torsion_order = (b3 == 0).then(|| {
        // group eigenvalues by order n | d; each order occurs phi(n)-uniformly
        let mut by_order: BTreeMap<u64, u64> = BTreeMap::new();
        for (k, &c) in classes.iter().enumerate() {
            *by_order.entry(d / d.gcd(&(k as u64))).or_default() += c;
        }
        let mut order = BigUint::one();
        for (n, c) in by_order {
            let phi = totient(n);
            assert_eq!(c % phi, 0, "eigenvalues of order {n} are not Galois-stable");
            if let Some(p) = prime_power_base(n) {
                order *= BigUint::from(p).pow((c / phi) as u32);
            }
        }
        order
    });
    MilnorOracle { milnor, b3, torsion_order }
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

// p when n = p^e with e >= 1; the cyclotomic value Phi_n(1)
fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|p| n % p == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

pub type Div = BTreeMap<u64, Ratio<BigInt>>;

pub fn div_mul(a: &Div, b: &Div) -> Div {
    let mut out = Div::new();
    for (&x, cx) in a {
        for (&y, cy) in b {
            let g = x.gcd(&y);
            *out.entry(x / g * y).or_insert_with(Ratio::zero) += cx * cy * Ratio::from_integer(BigInt::from(g));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn div_term(n: u64, num: i64, den: i64) -> Div {
    let mut out = Div::new();
    if num != 0 {
        out.insert(n, Ratio::new(BigInt::from(num), BigInt::from(den)));
    }
    out
}

pub fn div_add(a: &Div, b: &Div) -> Div {
    let mut out = a.clone();
    for (&n, c) in b {
        *out.entry(n).or_insert_with(Ratio::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// prod_i (Lambda_{u_i} / v_i - Lambda_1) with d/w_i = u_i/v_i in lowest terms.
pub fn expand_divisor(w: &[u64; 5], d: u64) -> Div {
    let mut acc = div_term(1, 1, 1);
    for &wi in w {
        let g = d.gcd(&wi);
        let (u, v) = (d / g, wi / g);
        let f = div_add(&div_term(u, 1, v as i64), &div_term(1, -1, 1));
        acc = div_mul(&acc, &f);
    }
    acc
}

/// Weights of a square exponent system by Cramer's rule: w_i = d * det(A_i)/det(A).
pub fn cramer_weights(rows: &[[u32; 5]; 5]) -> Option<([u64; 5], u64)> {
    let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let det = det5(&m);
    if det.is_zero() {
        return None;
    }
    let mut sols = Vec::new();
    for col in 0..5 {
        let mut mi = m.clone();
        for row in mi.iter_mut() {
            row[col] = BigInt::one();
        }
        sols.push(Ratio::new(det5(&mi), det.clone()));
    }
    let lcm = sols.iter().fold(BigInt::one(), |l, s| l.lcm(s.denom()));
    let ints: Vec<BigInt> = sols.iter().map(|s| (s * Ratio::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(lcm.clone(), |g, x| g.gcd(x));
    let w: Vec<u64> = ints.iter().map(|x| u64::try_from(x / &g).ok()).collect::<Option<_>>()?;
    let d = u64::try_from(lcm / g).ok()?;
    Some((w.try_into().unwrap(), d))
}

fn det5(m: &[Vec<BigInt>]) -> BigInt {
    // Laplace expansion along the first row
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * det5(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
