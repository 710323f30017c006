//! Generalized Cartan matrices: validation, symmetrizers, connected components.

use std::collections::VecDeque;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// A validated generalized Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for CartanMatrix {
    type Error = Error;
    fn try_from(m: Vec<Vec<i64>>) -> Result<Self> {
        validate_cartan(m)
    }
}

impl From<CartanMatrix> for Vec<Vec<i64>> {
    fn from(c: CartanMatrix) -> Self {
        c.a
    }
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.a.len()
    }

    /// Entry a_ij with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// Direct sum of two Cartan matrices.
    pub fn direct_sum(&self, other: &CartanMatrix) -> CartanMatrix {
        let n = self.size() + other.size();
        let mut a = vec![vec![0; n]; n];
        for (i, row) in self.a.iter().enumerate() {
            a[i][..row.len()].copy_from_slice(row);
        }
        let s = self.size();
        for (i, row) in other.a.iter().enumerate() {
            a[s + i][s..].copy_from_slice(row);
        }
        CartanMatrix { a }
    }
}

pub fn validate_cartan(m: Vec<Vec<i64>>) -> Result<CartanMatrix> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    for i in 0..n {
        if m[i][i] != 2 {
            return Err(Error::BadDiagonal { i: i + 1 });
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if m[i][j] > 0 {
                return Err(Error::PositiveOffDiagonal { i: i + 1, j: j + 1 });
            }
            if m[i][j] == 0 && m[j][i] != 0 {
                return Err(Error::ZeroAsymmetry { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(CartanMatrix { a: m })
}

/// Positive integers d with d_i a_ij = d_j a_ji.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetrizer {
    pub d: Vec<i64>,
}

/// Equivalence classes of the relation generated by `linked(i, j)`, ordered by
/// least member. Indices are 0-based.
pub fn components_by(n: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        let mut class = vec![s];
        label[s] = c;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if label[j] == usize::MAX && (linked(i, j) || linked(j, i)) {
                    label[j] = c;
                    class.push(j);
                    queue.push_back(j);
                }
            }
        }
        class.sort_unstable();
        out.push(class);
    }
    out
}

/// Connected components of the Dynkin graph {(i, j) : a_ij != 0}.
pub fn components(m: &CartanMatrix) -> Vec<Vec<usize>> {
    components_by(m.size(), |i, j| i != j && m.get(i, j) != 0)
}

/// Connected components of a q-matrix under q_ij q_ji != 1.
pub fn q_components(q: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    components_by(q.len(), |i, j| i != j && !(&q[i][j] * &q[j][i]).is_one())
}

pub fn symmetrize(m: &CartanMatrix) -> Result<Symmetrizer> {
    let n = m.size();
    let mut d = vec![0i64; n];
    for class in components(m) {
        let mut ratio: Vec<Option<Rational>> = vec![None; n];
        ratio[class[0]] = Some(Rational::one());
        let mut queue = VecDeque::from([class[0]]);
        while let Some(i) = queue.pop_front() {
            for &j in &class {
                if j != i && m.get(i, j) != 0 && ratio[j].is_none() {
                    // d_j = d_i a_ij / a_ji
                    let r = ratio[i].as_ref().unwrap() * &Rational::frac(m.get(i, j), m.get(j, i));
                    ratio[j] = Some(r);
                    queue.push_back(j);
                }
            }
        }
        for &i in &class {
            for &j in &class {
                let (ri, rj) = (ratio[i].as_ref().unwrap(), ratio[j].as_ref().unwrap());
                if ri * &Rational::from_int(m.get(i, j)) != rj * &Rational::from_int(m.get(j, i)) {
                    return Err(Error::NotSymmetrizable);
                }
            }
        }
        let lcm = class.iter().fold(num_bigint::BigInt::from(1), |acc, &i| {
            acc.lcm(ratio[i].as_ref().unwrap().denom())
        });
        let ints: Vec<num_bigint::BigInt> = class
            .iter()
            .map(|&i| ratio[i].as_ref().unwrap().numer() * &lcm / ratio[i].as_ref().unwrap().denom())
            .collect();
        let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
        for (&i, x) in class.iter().zip(&ints) {
            d[i] = i64::try_from(x / &g).map_err(|_| Error::NotSymmetrizable)?;
        }
    }
    Ok(Symmetrizer { d })
}
