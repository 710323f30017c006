//! Groups, monomial Yetter-Drinfeld modules, braidings and quantum symmetrizers.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::linalg::SparseVec;

/// Element of a free abelian group (exponent vector) or of a symmetric group
/// (0-based one-line notation, composed as `(ab)(i) = a(b(i))`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum GroupElement {
    Abelian(Vec<i32>),
    Perm(Vec<u8>),
}

impl GroupElement {
    pub fn abelian_identity(rank: usize) -> Self {
        GroupElement::Abelian(vec![0; rank])
    }

    pub fn perm_identity(n: usize) -> Self {
        GroupElement::Perm((0..n as u8).collect())
    }

    /// Unit vector `e_b` in a free abelian group of the given rank.
    pub fn basis(rank: usize, b: usize) -> Self {
        let mut v = vec![0; rank];
        v[b] = 1;
        GroupElement::Abelian(v)
    }

    /// Transposition of the 0-based points `a` and `b` in S_n.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p: Vec<u8> = (0..n as u8).collect();
        p.swap(a, b);
        GroupElement::Perm(p)
    }

    pub fn identity_like(&self) -> Self {
        match self {
            GroupElement::Abelian(v) => GroupElement::abelian_identity(v.len()),
            GroupElement::Perm(p) => GroupElement::perm_identity(p.len()),
        }
    }

    pub fn same_group(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupElement::Abelian(a), GroupElement::Abelian(b)) => a.len() == b.len(),
            (GroupElement::Perm(a), GroupElement::Perm(b)) => a.len() == b.len(),
            _ => false,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Abelian(v) => v.iter().all(|x| *x == 0),
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, x)| i == *x as usize),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (GroupElement::Abelian(a), GroupElement::Abelian(b)) => {
                assert_eq!(a.len(), b.len(), "abelian rank mismatch");
                GroupElement::Abelian(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElement::Perm(a), GroupElement::Perm(b)) => {
                assert_eq!(a.len(), b.len(), "permutation degree mismatch");
                GroupElement::Perm(b.iter().map(|&i| a[i as usize]).collect())
            }
            _ => panic!("cannot multiply elements of different groups"),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Abelian(v) => GroupElement::Abelian(v.iter().map(|x| -x).collect()),
            GroupElement::Perm(p) => {
                let mut inv = vec![0u8; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                GroupElement::Perm(inv)
            }
        }
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(self.identity_like(), |acc, _| acc.mul(&base))
    }

    /// `g h g^{-1}`.
    pub fn conjugate(&self, h: &Self) -> Self {
        self.mul(h).mul(&self.inverse())
    }

    /// Sign of a permutation; 1 for abelian elements.
    pub fn sign(&self) -> i64 {
        match self {
            GroupElement::Abelian(_) => 1,
            GroupElement::Perm(p) => {
                let mut seen = vec![false; p.len()];
                let mut s = 1;
                for i in 0..p.len() {
                    if seen[i] {
                        continue;
                    }
                    let mut j = i;
                    let mut len = 0;
                    while !seen[j] {
                        seen[j] = true;
                        j = p[j] as usize;
                        len += 1;
                    }
                    if len % 2 == 0 {
                        s = -s;
                    }
                }
                s
            }
        }
    }

    pub fn exponents(&self) -> Option<&[i32]> {
        match self {
            GroupElement::Abelian(v) => Some(v),
            GroupElement::Perm(_) => None,
        }
    }

    /// Cycle notation with 1-based points, e.g. `(12)(34)`; `e` for the identity.
    pub fn cycle_string(&self) -> String {
        match self {
            GroupElement::Abelian(v) => format!("{v:?}"),
            GroupElement::Perm(p) => {
                let mut seen = vec![false; p.len()];
                let mut out = String::new();
                for i in 0..p.len() {
                    if seen[i] || p[i] as usize == i {
                        continue;
                    }
                    out.push('(');
                    let mut j = i;
                    while !seen[j] {
                        seen[j] = true;
                        out.push_str(&(j + 1).to_string());
                        j = p[j] as usize;
                    }
                    out.push(')');
                }
                if out.is_empty() {
                    "e".into()
                } else {
                    out
                }
            }
        }
    }

    /// Parses cycle notation over single-digit 1-based points (`(12)(34)`, `e`, `()`).
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self> {
        let bad = |reason: String| Error::Parse { line: 0, reason };
        let s = s.trim();
        let mut p: Vec<u8> = (0..n as u8).collect();
        if s == "e" || s.is_empty() {
            return Ok(GroupElement::Perm(p));
        }
        let mut rest = s;
        // apply cycles right to left, matching composition order
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|k| (&r[..k], &r[k + 1..])))
                .ok_or_else(|| bad(format!("malformed cycle notation {s:?}")))?;
            let pts: Vec<usize> = body
                .0
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| bad(format!("bad point in {s:?}")))?;
            if pts.iter().any(|&x| x == 0 || x > n) {
                return Err(bad(format!("point out of range in {s:?}")));
            }
            cycles.push(pts);
            rest = body.1.trim_start();
        }
        for c in cycles.iter().rev() {
            let mut cyc: Vec<u8> = (0..n as u8).collect();
            for k in 0..c.len() {
                cyc[c[k] - 1] = (c[(k + 1) % c.len()] - 1) as u8;
            }
            let g = GroupElement::Perm(cyc);
            p = match g.mul(&GroupElement::Perm(p)) {
                GroupElement::Perm(q) => q,
                _ => unreachable!(),
            };
        }
        let mut check = p.clone();
        check.sort_unstable();
        if check != (0..n as u8).collect::<Vec<_>>() {
            return Err(bad(format!("{s:?} is not a permutation")));
        }
        Ok(GroupElement::Perm(p))
    }
}

/// All elements of S_n in lexicographic one-line order.
pub fn symmetric_group(n: usize) -> Vec<GroupElement> {
    fn rec(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<GroupElement>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(GroupElement::Perm(prefix.clone()));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Scalar attached to the conjugation action on a rack of group elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjScalar {
    Trivial,
    /// `g . x_i = sgn(g) x_{g i g^-1}`; restricted to transpositions this is the cocycle -1.
    Sign,
    /// `g . x_(a,b) = +-x_{g(a,b)g^-1}`, sign + iff g(a) < g(b).
    Chi,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Action {
    /// `chars[b][i]`: scalar by which the b-th free generator acts on x_i.
    Diagonal { chars: Vec<Vec<Rational>> },
    /// Conjugation on the labels of the basis, with a scalar.
    Conjugation { labels: Vec<GroupElement>, scalar: ConjScalar },
}

/// Value of the chi cocycle: +1 iff g preserves the order of the transposed points.
pub fn chi_sign(g: &GroupElement, t: &GroupElement) -> i64 {
    let (GroupElement::Perm(gp), GroupElement::Perm(tp)) = (g, t) else {
        return 1;
    };
    let moved: Vec<usize> = (0..tp.len()).filter(|&i| tp[i] as usize != i).collect();
    assert_eq!(moved.len(), 2, "chi is defined on transpositions");
    if gp[moved[0]] < gp[moved[1]] {
        1
    } else {
        -1
    }
}

/// A Yetter-Drinfeld module with monomial action: `g . x_i = chi(g, i) x_{g>i}`
/// and `x_i` homogeneous of degree `g_i`.
#[derive(Clone, Debug)]
pub struct MonomialYD {
    names: Vec<String>,
    group_names: Vec<String>,
    degrees: Vec<GroupElement>,
    action: Action,
    label_index: HashMap<GroupElement, usize>,
    identity: GroupElement,
}

impl PartialEq for MonomialYD {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.degrees == other.degrees && self.action == other.action
    }
}

impl MonomialYD {
    /// Diagonal module over a free abelian group of rank `chars.len()`.
    pub fn diagonal(
        names: Vec<String>,
        group_names: Vec<String>,
        degrees: Vec<GroupElement>,
        chars: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let rank = group_names.len();
        let n = names.len();
        if degrees.len() != n || chars.len() != rank || chars.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch("diagonal module dimensions".into()));
        }
        if degrees.iter().any(|g| g.exponents().map(|e| e.len()) != Some(rank)) {
            return Err(Error::SizeMismatch("degree rank".into()));
        }
        if chars.iter().flatten().any(|c| c.is_zero()) {
            return Err(Error::SizeMismatch("zero character value".into()));
        }
        Ok(MonomialYD {
            names,
            group_names,
            degrees,
            action: Action::Diagonal { chars },
            label_index: HashMap::new(),
            identity: GroupElement::abelian_identity(rank),
        })
    }

    /// Rack-type module: basis labelled by a conjugation-stable set of permutations.
    pub fn conjugation(names: Vec<String>, labels: Vec<GroupElement>, scalar: ConjScalar) -> Result<Self> {
        let GroupElement::Perm(p0) = &labels[0] else {
            return Err(Error::SizeMismatch("conjugation labels must be permutations".into()));
        };
        let n = p0.len();
        let label_index: HashMap<_, _> = labels.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        for a in &labels {
            for b in &labels {
                if !label_index.contains_key(&a.conjugate(b)) {
                    return Err(Error::SizeMismatch("labels not closed under conjugation".into()));
                }
            }
        }
        Ok(MonomialYD {
            names,
            group_names: Vec::new(),
            degrees: labels.clone(),
            action: Action::Conjugation { labels, scalar },
            label_index,
            identity: GroupElement::perm_identity(n),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn group_names(&self) -> &[String] {
        &self.group_names
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn identity(&self) -> &GroupElement {
        &self.identity
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// `g . x_i = scalar * x_target`.
    pub fn act(&self, g: &GroupElement, i: usize) -> (Rational, usize) {
        match &self.action {
            Action::Diagonal { chars } => {
                let e = g.exponents().expect("abelian element");
                let mut s = Rational::one();
                for (b, &k) in e.iter().enumerate() {
                    if k != 0 {
                        s *= &chars[b][i].pow(k as i64);
                    }
                }
                (s, i)
            }
            Action::Conjugation { labels, scalar } => {
                let t = self.label_index[&g.conjugate(&labels[i])];
                let s = match scalar {
                    ConjScalar::Trivial => 1,
                    ConjScalar::Sign => g.sign(),
                    ConjScalar::Chi => chi_sign(g, &labels[i]),
                };
                (Rational::from_int(s), t)
            }
        }
    }

    /// Action on a word, letter by letter.
    pub fn act_word(&self, g: &GroupElement, word: &[u16]) -> (Rational, Vec<u16>) {
        let mut s = Rational::one();
        let mut out = Vec::with_capacity(word.len());
        for &i in word {
            let (c, t) = self.act(g, i as usize);
            s *= &c;
            out.push(t as u16);
        }
        (s, out)
    }

    /// Degree of a word: product of the letter degrees.
    pub fn word_degree(&self, word: &[u16]) -> GroupElement {
        word.iter().fold(self.identity.clone(), |acc, &i| acc.mul(&self.degrees[i as usize]))
    }

    /// `c(x_i (x) x_j) = scalar * x_k (x) x_i` with `x_k = g_i . x_j` up to scalar.
    pub fn braid(&self, i: usize, j: usize) -> (Rational, (usize, usize)) {
        let (s, k) = self.act(&self.degrees[i], j);
        (s, (k, i))
    }

    /// Checks `(c(x)id)(id(x)c)(c(x)id) = (id(x)c)(c(x)id)(id(x)c)` on all basis triples.
    pub fn satisfies_braid_equation(&self) -> bool {
        let n = self.len() as u16;
        let apply = |w: &mut Vec<u16>, k: usize, s: &mut Rational| {
            let (c, (a, b)) = self.braid(w[k] as usize, w[k + 1] as usize);
            *s *= &c;
            w[k] = a as u16;
            w[k + 1] = b as u16;
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (mut w1, mut s1) = (vec![i, j, k], Rational::one());
                    for p in [0, 1, 0] {
                        apply(&mut w1, p, &mut s1);
                    }
                    let (mut w2, mut s2) = (vec![i, j, k], Rational::one());
                    for p in [1, 0, 1] {
                        apply(&mut w2, p, &mut s2);
                    }
                    if w1 != w2 || s1 != s2 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks `chi(gh, i) = chi(g, h>i) chi(h, i)` and `(gh)>i = g>(h>i)` on the sample.
    pub fn action_is_multiplicative(&self, sample: &[GroupElement]) -> bool {
        (0..self.len()).all(|i| {
            sample.iter().all(|g| {
                sample.iter().all(|h| {
                    let (sh, hi) = self.act(h, i);
                    let (sg, ghi) = self.act(g, hi);
                    let (sgh, t) = self.act(&g.mul(h), i);
                    t == ghi && sgh == sg * sh
                })
            })
        })
    }

    /// Checks that the degree of `g . x_i` is `g g_i g^-1` on the sample.
    pub fn is_yetter_drinfeld(&self, sample: &[GroupElement]) -> bool {
        (0..self.len()).all(|i| {
            sample
                .iter()
                .all(|g| self.degrees[self.act(g, i).1] == g.conjugate(&self.degrees[i]))
        })
    }
}

/// Basis-word budget for symmetrizer assembly (`QTWIST_SIZE_BUDGET` overrides).
pub fn size_budget() -> u128 {
    std::env::var("QTWIST_SIZE_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(2_000_000)
}

pub fn check_budget(n_letters: usize, degree: usize) -> Result<u128> {
    let requested = (n_letters as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
    let budget = size_budget();
    if requested > budget {
        return Err(Error::SizeBudgetExceeded { requested, budget });
    }
    Ok(requested)
}

/// Index of a word in the basis of V^{(x)n}, most significant letter first.
pub fn word_index(word: &[u16], n_letters: usize) -> usize {
    word.iter().fold(0, |acc, &i| acc * n_letters + i as usize)
}

pub fn index_word(mut idx: usize, n_letters: usize, degree: usize) -> Vec<u16> {
    let mut w = vec![0u16; degree];
    for k in (0..degree).rev() {
        w[k] = (idx % n_letters) as u16;
        idx /= n_letters;
    }
    w
}

/// How a reduced word is picked for each permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedWordChoice {
    /// Left-to-right bubble sort passes.
    BubbleLeft,
    /// Right-to-left bubble sort passes.
    BubbleRight,
}

/// Reduced word `s_{k_1} ... s_{k_L}` for a permutation in one-line notation,
/// returned as the positions `k` in application order (rightmost factor first).
pub fn reduced_word(perm: &[u8], choice: ReducedWordChoice) -> Vec<usize> {
    let mut a = perm.to_vec();
    let n = a.len();
    let mut swaps = Vec::new();
    loop {
        let mut changed = false;
        let positions: Vec<usize> = match choice {
            ReducedWordChoice::BubbleLeft => (0..n.saturating_sub(1)).collect(),
            ReducedWordChoice::BubbleRight => (0..n.saturating_sub(1)).rev().collect(),
        };
        for k in positions {
            if a[k] > a[k + 1] {
                a.swap(k, k + 1);
                swaps.push(k);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // perm * s_{k1} * ... * s_{kL} = id, so perm = s_{kL} ... s_{k1}: k1 acts first.
    swaps
}

/// `rho_n(sigma_k)` applied to a basis word, in place.
fn braid_at(v: &MonomialYD, word: &mut [u16], k: usize) -> Rational {
    let (s, (a, b)) = v.braid(word[k] as usize, word[k + 1] as usize);
    word[k] = a as u16;
    word[k + 1] = b as u16;
    s
}

/// Quantum symmetrizer `Q_n = sum_{sigma in S_n} rho_n(M(sigma))` as sparse columns
/// indexed by basis words.
pub fn quantum_symmetrizer(v: &MonomialYD, n: usize) -> Result<Vec<SparseVec>> {
    quantum_symmetrizer_with(v, n, ReducedWordChoice::BubbleLeft)
}

pub fn quantum_symmetrizer_with(v: &MonomialYD, n: usize, choice: ReducedWordChoice) -> Result<Vec<SparseVec>> {
    let dim = check_budget(v.len(), n)? as usize;
    let words: Vec<Vec<usize>> = symmetric_group(n)
        .iter()
        .map(|p| match p {
            GroupElement::Perm(p) => reduced_word(p, choice),
            _ => unreachable!(),
        })
        .collect();
    let cols = (0..dim)
        .into_par_iter()
        .map(|idx| {
            let base = index_word(idx, v.len(), n);
            let mut col = SparseVec::new();
            for rw in &words {
                let mut w = base.clone();
                let mut s = Rational::one();
                for &k in rw {
                    s *= &braid_at(v, &mut w, k);
                }
                let e = col.entry(word_index(&w, v.len())).or_insert_with(Rational::zero);
                *e += &s;
            }
            col.retain(|_, c| !c.is_zero());
            col
        })
        .collect();
    Ok(cols)
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}
