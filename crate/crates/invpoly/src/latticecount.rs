use num_integer::Integer;
use serde::Serialize;

use crate::atoms::StructuredSplit;
use crate::polymodel::NVARS;

/// All nonnegative solutions of `w . x = k`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialBasis {
    pub degree: i64,
    pub solutions: Vec<[u64; NVARS]>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn contains(&self, x: &[u64; NVARS]) -> bool {
        self.solutions.binary_search(x).is_ok()
    }
}

pub fn enumerate_monomials(w: &[u64; NVARS], k: i64) -> MonomialBasis {
    let mut solutions = Vec::new();
    if k >= 0 {
        let mut x = [0u64; NVARS];
        descend(w, 0, k as u64, &mut x, &mut solutions);
    }
    MonomialBasis { degree: k, solutions }
}

// ascending x[i] at each level yields lexicographic order for free
fn descend(w: &[u64; NVARS], i: usize, rem: u64, x: &mut [u64; NVARS], out: &mut Vec<[u64; NVARS]>) {
    if i == NVARS - 1 {
        if rem % w[i] == 0 {
            x[i] = rem / w[i];
            out.push(*x);
        }
        return;
    }
    for xi in 0..=rem / w[i] {
        x[i] = xi;
        descend(w, i + 1, rem - xi * w[i], x, out);
    }
    x[i] = 0;
}

/// Number of degree-k monomials, i.e. `h0(P(w), O(k))`.
pub fn h0(w: &[u64; NVARS], k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    count_from(w, k as u64)
}

/// Count solutions of `w[..] . x = k` for any number of variables.
pub fn count_from(w: &[u64], k: u64) -> u64 {
    match w {
        [] => u64::from(k == 0),
        [a] => u64::from(k % a == 0),
        [a, b] => count_pair(*a, *b, k),
        [a, rest @ ..] => (0..=k / a)
            .map(|x| count_from(rest, k - x * a))
            .try_fold(0u64, |s, c| s.checked_add(c))
            .expect("monomial count overflowed u64"),
    }
}

// solutions of a x + b y = k in closed form
fn count_pair(a: u64, b: u64, k: u64) -> u64 {
    let g = a.gcd(&b);
    if k % g != 0 {
        return 0;
    }
    let (a, b, k) = ((a / g) as i128, (b / g) as i128, (k / g) as i128);
    // smallest x >= 0 with a x = k (mod b)
    let inv = a.extended_gcd(&b).x.rem_euclid(b);
    let x0 = (k % b * inv).rem_euclid(b);
    if x0 * a > k {
        0
    } else {
        ((k - x0 * a) / (a * b) + 1) as u64
    }
}

/// Same count by dynamic programming over degrees; independent of the
/// recursive enumerator and cheap for large k with few variables.
pub fn h0_dp(w: &[u64], k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let k = k as usize;
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for &wi in w {
        let wi = wi as usize;
        for deg in wi..=k {
            ways[deg] = ways[deg].checked_add(ways[deg - wi]).expect("monomial count overflowed u64");
        }
    }
    ways[k]
}

pub fn sum_h0_weights(w: &[u64; NVARS]) -> u64 {
    w.iter().map(|&wi| h0(w, wi as i64)).sum()
}

/// Degree-d solutions restricted to the pair block and to the triple block.
/// When the split is genuine these two sets exhaust all degree-d monomials.
pub fn split_counts(w: &[u64; NVARS], split: &StructuredSplit) -> (u64, u64) {
    let d = split.degree();
    let pair: Vec<u64> = split.pair.iter().map(|&i| w[i]).collect();
    let triple: Vec<u64> = split.triple.iter().map(|&i| w[i]).collect();
    (count_from(&pair, d), count_from(&triple, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_weights_degree_one() {
        let b = enumerate_monomials(&[1; 5], 1);
        assert_eq!(b.len(), 5);
        assert_eq!(b.solutions[0], [0, 0, 0, 0, 1]);
        assert_eq!(b.solutions[4], [1, 0, 0, 0, 0]);
    }

    #[test]
    fn degree_zero_and_negative() {
        assert_eq!(h0(&[3, 5, 7, 11, 13], 0), 1);
        assert_eq!(enumerate_monomials(&[3, 5, 7, 11, 13], 0).solutions, vec![[0; 5]]);
        assert_eq!(h0(&[3, 5, 7, 11, 13], -4), 0);
        assert!(enumerate_monomials(&[1; 5], -1).is_empty());
    }

    #[test]
    fn dual_worked_instance() {
        let w = [26, 91, 84, 105, 63];
        let b = enumerate_monomials(&w, 273);
        // z2^2*z3, z3^2*z4, z2*z4^3, z1^3, z0^7*z1
        let expected = [[0, 0, 0, 2, 1], [0, 0, 1, 0, 3], [0, 0, 2, 1, 0], [0, 3, 0, 0, 0], [7, 1, 0, 0, 0]];
        assert_eq!(b.solutions, expected);
        assert!(b.contains(&[0, 3, 0, 0, 0]));
    }

    #[test]
    fn primal_worked_instance() {
        let w = [13, 26, 35, 28, 21];
        assert_eq!(h0(&w, 91), 7);
        assert_eq!(sum_h0_weights(&w), 6);
    }

    #[test]
    fn table_counts() {
        assert_eq!(h0(&[177, 295, 270, 370, 70], 1180), 5);
        assert_eq!(h0(&[52, 663, 867, 1581, 153], 3315), 9);
        assert_eq!(h0(&[86, 3655, 5185, 595, 1445], 10965), 6);
        assert_eq!(sum_h0_weights(&[177, 295, 270, 370, 70]), 5);
        assert_eq!(sum_h0_weights(&[52, 663, 867, 1581, 153]), 6);
        assert_eq!(sum_h0_weights(&[1; 5]), 25);
    }

    #[test]
    fn pair_closed_form() {
        for a in 1..15u64 {
            for b in 1..15u64 {
                for k in 0..200u64 {
                    let slow = (0..=k / a).filter(|x| (k - x * a) % b == 0).count() as u64;
                    assert_eq!(count_pair(a, b, k), slow, "a={a} b={b} k={k}");
                }
            }
        }
    }

    #[test]
    fn dp_agrees() {
        for w in [[1, 1, 1, 1, 1], [2, 3, 5, 7, 11], [13, 26, 35, 28, 21]] {
            for k in 0..40 {
                assert_eq!(h0(&w, k), h0_dp(&w, k), "w={w:?} k={k}");
                assert_eq!(h0(&w, k), enumerate_monomials(&w, k).len() as u64);
            }
        }
    }
}
