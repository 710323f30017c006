//! Braiding matrices, reduced YD-data of Cartan type, DJ-type data and the
//! bicharacter twisting one into the other.

use serde::{Deserialize, Serialize};

use crate::cartan::{components, symmetrize, CartanMatrix, Symmetrizer};
use crate::cocycles::Bicharacter;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::yd::{GroupElement, MonomialYD};

/// Square matrix of nonzero rationals with no diagonal entry equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Rational>>", into = "Vec<Vec<Rational>>")]
pub struct QMatrix {
    q: Vec<Vec<Rational>>,
}

impl TryFrom<Vec<Vec<Rational>>> for QMatrix {
    type Error = Error;
    fn try_from(q: Vec<Vec<Rational>>) -> Result<Self> {
        QMatrix::new(q)
    }
}

impl From<QMatrix> for Vec<Vec<Rational>> {
    fn from(m: QMatrix) -> Self {
        m.q
    }
}

impl QMatrix {
    pub fn new(q: Vec<Vec<Rational>>) -> Result<Self> {
        let n = q.len();
        if n == 0 || q.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            for j in 0..n {
                if q[i][j].is_zero() {
                    return Err(Error::ZeroEntry { i: i + 1, j: j + 1 });
                }
            }
            if q[i][i].is_one() {
                return Err(Error::QiiOne { i: i + 1 });
            }
        }
        Ok(QMatrix { q })
    }

    pub fn size(&self) -> usize {
        self.q.len()
    }

    /// Entry q_ij with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.q[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.q
    }
}

/// Equal diagonals and equal symmetric products q_ij q_ji.
pub fn is_twist_equivalent(q: &QMatrix, qh: &QMatrix) -> Result<bool> {
    if q.size() != qh.size() {
        return Err(Error::SizeMismatch(format!("{} vs {}", q.size(), qh.size())));
    }
    let n = q.size();
    Ok((0..n).all(|i| {
        q.get(i, i) == qh.get(i, i) && (0..n).all(|j| q.get(i, j) * q.get(j, i) == qh.get(i, j) * qh.get(j, i))
    }))
}

/// Reduced YD-datum of Cartan type over Z^{2 theta} with generators
/// ordered `L_1..L_theta, K_1..K_theta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDatum {
    cartan: CartanMatrix,
    q: QMatrix,
    linking: Vec<Rational>,
    warnings: Vec<String>,
}

pub fn validate_reduced_datum(cartan: CartanMatrix, q: QMatrix, linking: Option<Vec<Rational>>) -> Result<ReducedDatum> {
    let n = cartan.size();
    if q.size() != n {
        return Err(Error::SizeMismatch(format!("cartan is {n}x{n}, q is {0}x{0}", q.size())));
    }
    for i in 0..n {
        let qii = q.get(i, i);
        for j in 0..n {
            let a = cartan.get(i, j);
            if q.get(i, j) * q.get(j, i) != qii.pow(a) {
                return Err(Error::CartanCompatibility { i: i + 1, j: j + 1 });
            }
            if let Some(ord) = qii.multiplicative_order() {
                if i != j && -a >= ord as i64 {
                    return Err(Error::OrderViolation { i: i + 1, j: j + 1 });
                }
            }
        }
    }
    let linking = match linking {
        Some(l) => {
            if l.len() != n {
                return Err(Error::SizeMismatch(format!("{} linking parameters for rank {n}", l.len())));
            }
            l
        }
        None => (0..n)
            .map(|i| {
                let qii = q.get(i, i);
                qii / &(qii - &Rational::one())
            })
            .collect(),
    };
    let warnings = linking
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_zero())
        .map(|(i, _)| format!("linking parameter l_{} is zero", i + 1))
        .collect();
    Ok(ReducedDatum { cartan, q, linking, warnings })
}

impl ReducedDatum {
    pub fn theta(&self) -> usize {
        self.q.size()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn q(&self) -> &QMatrix {
        &self.q
    }

    /// q_ij, 0-based.
    pub fn qij(&self, i: usize, j: usize) -> &Rational {
        self.q.get(i, j)
    }

    pub fn linking(&self) -> &[Rational] {
        &self.linking
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn with_linking(&self, linking: Vec<Rational>) -> Result<ReducedDatum> {
        validate_reduced_datum(self.cartan.clone(), self.q.clone(), Some(linking))
    }

    /// Position of L_i in the exponent vector.
    pub fn l_index(&self, i: usize) -> usize {
        i
    }

    /// Position of K_i in the exponent vector.
    pub fn k_index(&self, i: usize) -> usize {
        self.theta() + i
    }

    pub fn k(&self, i: usize) -> GroupElement {
        GroupElement::basis(2 * self.theta(), self.k_index(i))
    }

    pub fn l(&self, i: usize) -> GroupElement {
        GroupElement::basis(2 * self.theta(), self.l_index(i))
    }

    /// chi_j(K_i) = q_ij.
    pub fn chi_k(&self, j: usize, i: usize) -> Rational {
        self.q.get(i, j).clone()
    }

    /// chi_j(L_i) = q_ji.
    pub fn chi_l(&self, j: usize, i: usize) -> Rational {
        self.q.get(j, i).clone()
    }

    /// The module V (+) W: letters `x_1..x_theta, y_1..y_theta`, with x_i of
    /// degree K_i and character chi_i, y_i of degree L_i and character chi_i^{-1}.
    pub fn module(&self) -> MonomialYD {
        let t = self.theta();
        let mut names: Vec<String> = (1..=t).map(|i| format!("x{i}")).collect();
        names.extend((1..=t).map(|i| format!("y{i}")));
        let mut group_names: Vec<String> = (1..=t).map(|i| format!("L{i}")).collect();
        group_names.extend((1..=t).map(|i| format!("K{i}")));
        let mut degrees: Vec<GroupElement> = (0..t).map(|i| self.k(i)).collect();
        degrees.extend((0..t).map(|i| self.l(i)));
        let mut chars = vec![vec![Rational::one(); 2 * t]; 2 * t];
        for i in 0..t {
            for j in 0..t {
                let (cl, ck) = (self.chi_l(j, i), self.chi_k(j, i));
                chars[self.l_index(i)][j] = cl.clone();
                chars[self.k_index(i)][j] = ck.clone();
                chars[self.l_index(i)][t + j] = cl.inv().unwrap();
                chars[self.k_index(i)][t + j] = ck.inv().unwrap();
            }
        }
        MonomialYD::diagonal(names, group_names, degrees, chars).expect("datum module is well formed")
    }

    /// Asserts K_i L_i != 1 for user-specified images of K_i and L_i.
    pub fn check_kl_nontrivial(k: &[GroupElement], l: &[GroupElement]) -> Result<()> {
        for (i, (a, b)) in k.iter().zip(l).enumerate() {
            if a.mul(b).is_identity() {
                return Err(Error::TrivialKL { i: i + 1 });
            }
        }
        Ok(())
    }

    /// q_ii > 0 for all i, as required by the DJ-twist pipeline.
    pub fn check_positive(&self) -> Result<()> {
        for i in 0..self.theta() {
            if !self.qij(i, i).is_positive() {
                return Err(Error::NotPositive { i: i + 1 });
            }
        }
        Ok(())
    }
}

/// Datum of DJ-type attached to a reduced datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DJDatum {
    base: ReducedDatum,
    q_comp: Vec<Rational>,
    d: Symmetrizer,
    qhat: ReducedDatum,
}

pub fn build_dj_datum(datum: &ReducedDatum, q_comp: &[Rational]) -> Result<DJDatum> {
    let d = symmetrize(datum.cartan())?;
    let comps = components(datum.cartan());
    if q_comp.len() != comps.len() {
        return Err(Error::SizeMismatch(format!("{} values of q_I for {} components", q_comp.len(), comps.len())));
    }
    let n = datum.theta();
    let mut comp_of = vec![0; n];
    for (c, class) in comps.iter().enumerate() {
        for &i in class {
            comp_of[i] = c;
        }
    }
    let mut qhat = vec![vec![Rational::one(); n]; n];
    for i in 0..n {
        let qi = &q_comp[comp_of[i]];
        if qi.is_zero() || *datum.qij(i, i) != qi.pow(2 * d.d[i]) {
            return Err(Error::RootMismatch { i: i + 1 });
        }
        for j in 0..n {
            qhat[i][j] = qi.pow(d.d[i] * datum.cartan().get(i, j));
        }
    }
    let qhat = validate_reduced_datum(datum.cartan().clone(), QMatrix::new(qhat)?, Some(datum.linking().to_vec()))?;
    Ok(DJDatum { base: datum.clone(), q_comp: q_comp.to_vec(), d, qhat })
}

impl DJDatum {
    pub fn base(&self) -> &ReducedDatum {
        &self.base
    }

    pub fn q_components(&self) -> &[Rational] {
        &self.q_comp
    }

    pub fn symmetrizer(&self) -> &Symmetrizer {
        &self.d
    }

    /// The DJ-type datum itself, carrying the base linking parameters.
    pub fn datum(&self) -> &ReducedDatum {
        &self.qhat
    }

    pub fn qhat(&self) -> &QMatrix {
        self.qhat.q()
    }
}

/// Braiding matrix of V (+) W in the order `y_1..y_theta, x_1..x_theta`
/// (matching generators `L_1..L_theta, K_1..K_theta`).
pub fn braiding_p_matrix(q: &QMatrix) -> Vec<Vec<Rational>> {
    let t = q.size();
    let mut p = vec![vec![Rational::one(); 2 * t]; 2 * t];
    for a in 0..2 * t {
        for b in 0..2 * t {
            p[a][b] = match (a < t, b < t) {
                (true, true) => q.get(b, a).inv().unwrap(),
                (true, false) => q.get(a, b - t).inv().unwrap(),
                (false, true) => q.get(b, a - t).clone(),
                (false, false) => q.get(a - t, b - t).clone(),
            };
        }
    }
    p
}

/// The bicharacter with sigma(g_i, g_j) = phat_ij / p_ij for i <= j and 1 otherwise.
pub fn dj_twist_bicharacter(datum: &ReducedDatum, dj: &DJDatum) -> Result<Bicharacter> {
    if !is_twist_equivalent(datum.q(), dj.qhat())? {
        return Err(Error::NotTwistEquivalent);
    }
    let p = braiding_p_matrix(datum.q());
    let ph = braiding_p_matrix(dj.qhat());
    let m = p.len();
    let mut s = vec![vec![Rational::one(); m]; m];
    for i in 0..m {
        for j in i..m {
            s[i][j] = &ph[i][j] / &p[i][j];
        }
    }
    Ok(Bicharacter::new(s, None))
}
