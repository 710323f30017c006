//! Arithmetic in bosonizations T(V) # kG of monomial Yetter-Drinfeld modules.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::yd::{GroupElement, MonomialYD};

/// Basis element `x_{w_1} ... x_{w_k} # g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SmashMonomial {
    pub word: Vec<u16>,
    pub group: GroupElement,
}

impl SmashMonomial {
    pub fn new(word: Vec<u16>, group: GroupElement) -> Self {
        SmashMonomial { word, group }
    }

    pub fn group_like(g: GroupElement) -> Self {
        SmashMonomial { word: Vec::new(), group: g }
    }
}

/// Finite linear combination of smash monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash, PartialOrd, Ord)]
pub struct SmashElement {
    terms: BTreeMap<SmashMonomial, Rational>,
}

impl SmashElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: SmashMonomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn group_like(g: GroupElement) -> Self {
        Self::monomial(SmashMonomial::group_like(g), Rational::one())
    }

    /// `x_i # e` in the given model.
    pub fn letter(v: &MonomialYD, i: usize) -> Self {
        Self::monomial(SmashMonomial::new(vec![i as u16], v.identity().clone()), Rational::one())
    }

    /// `x_{w_1} ... x_{w_k} # g`.
    pub fn word(word: &[u16], g: GroupElement) -> Self {
        Self::monomial(SmashMonomial::new(word.to_vec(), g), Rational::one())
    }

    pub fn one(v: &MonomialYD) -> Self {
        Self::group_like(v.identity().clone())
    }

    pub fn add_term(&mut self, m: SmashMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SmashMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SmashMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Word-length filtration degree (0 for the zero element).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.word.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SmashElement {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn into_terms(self) -> BTreeMap<SmashMonomial, Rational> {
        self.terms
    }
}

impl FromIterator<(SmashMonomial, Rational)> for SmashElement {
    fn from_iter<T: IntoIterator<Item = (SmashMonomial, Rational)>>(iter: T) -> Self {
        let mut e = SmashElement::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }
}

impl Add<&SmashElement> for &SmashElement {
    type Output = SmashElement;
    fn add(self, rhs: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for SmashElement {
    type Output = SmashElement;
    fn add(self, rhs: SmashElement) -> SmashElement {
        &self + &rhs
    }
}

impl Sub<&SmashElement> for &SmashElement {
    type Output = SmashElement;
    fn sub(self, rhs: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for SmashElement {
    type Output = SmashElement;
    fn sub(self, rhs: SmashElement) -> SmashElement {
        &self - &rhs
    }
}

impl Neg for &SmashElement {
    type Output = SmashElement;
    fn neg(self) -> SmashElement {
        self.scale(&-Rational::one())
    }
}

impl Neg for SmashElement {
    type Output = SmashElement;
    fn neg(self) -> SmashElement {
        -&self
    }
}

impl Mul<&SmashElement> for &Rational {
    type Output = SmashElement;
    fn mul(self, rhs: &SmashElement) -> SmashElement {
        rhs.scale(self)
    }
}

/// Group grading `(left, right)` with `deg(g) = (g, g)` and `deg(x) = (g_x, 1)`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct BiDegree {
    pub left: GroupElement,
    pub right: GroupElement,
}

fn check_model(v: &MonomialYD, u: &SmashElement) -> Result<()> {
    for m in u.terms.keys() {
        if !m.group.same_group(v.identity()) || m.word.iter().any(|&i| i as usize >= v.len()) {
            return Err(Error::ModelMismatch);
        }
    }
    Ok(())
}

/// `(w # g)(w' # h) = c (w (g . w')) # gh`.
pub fn mul_monomials(v: &MonomialYD, a: &SmashMonomial, b: &SmashMonomial) -> (Rational, SmashMonomial) {
    let (c, moved) = v.act_word(&a.group, &b.word);
    let mut word = a.word.clone();
    word.extend(moved);
    (c, SmashMonomial::new(word, a.group.mul(&b.group)))
}

pub fn multiply(v: &MonomialYD, u: &SmashElement, w: &SmashElement) -> Result<SmashElement> {
    check_model(v, u)?;
    check_model(v, w)?;
    Ok(mul_unchecked(v, u, w))
}

pub(crate) fn mul_unchecked(v: &MonomialYD, u: &SmashElement, w: &SmashElement) -> SmashElement {
    let mut out = SmashElement::zero();
    for (a, ca) in &u.terms {
        for (b, cb) in &w.terms {
            let (c, m) = mul_monomials(v, a, b);
            out.add_term(m, c * ca * cb);
        }
    }
    out
}

/// Product of a sequence of elements, left to right.
pub fn product(v: &MonomialYD, factors: &[SmashElement]) -> Result<SmashElement> {
    let mut acc = SmashElement::one(v);
    for f in factors {
        acc = multiply(v, &acc, f)?;
    }
    Ok(acc)
}

/// `g . y` for the adjoint action of a group-like: `(1#g) y (1#g^-1)`.
pub fn act(v: &MonomialYD, g: &GroupElement, y: &SmashElement) -> SmashElement {
    let l = SmashElement::group_like(g.clone());
    let r = SmashElement::group_like(g.inverse());
    mul_unchecked(v, &mul_unchecked(v, &l, y), &r)
}

/// Iterated coproduct `Delta^{(k-1)}` of a monomial as k-fold tensors.
pub fn coproduct_monomial(v: &MonomialYD, m: &SmashMonomial, k: usize) -> Vec<(Vec<SmashMonomial>, Rational)> {
    assert!(k >= 1);
    let e = v.identity();
    let mut acc: Vec<(Vec<SmashMonomial>, Rational)> =
        vec![(vec![SmashMonomial::group_like(e.clone()); k], Rational::one())];
    for &x in &m.word {
        let g = v.degree(x as usize);
        let mut next: BTreeMap<Vec<SmashMonomial>, Rational> = BTreeMap::new();
        for (tensor, c) in &acc {
            for slot in 0..k {
                // factors before `slot` receive g, `slot` receives x, later ones 1
                let mut coef = c.clone();
                let mut out = Vec::with_capacity(k);
                for (f, t) in tensor.iter().enumerate() {
                    let piece = if f < slot {
                        SmashMonomial::group_like(g.clone())
                    } else if f == slot {
                        SmashMonomial::new(vec![x], e.clone())
                    } else {
                        SmashMonomial::group_like(e.clone())
                    };
                    let (s, prod) = mul_monomials(v, t, &piece);
                    coef *= &s;
                    out.push(prod);
                }
                let entry = next.entry(out).or_insert_with(Rational::zero);
                *entry += &coef;
            }
        }
        acc = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    let gp = SmashMonomial::group_like(m.group.clone());
    acc.into_iter()
        .map(|(t, c)| {
            let mut coef = c;
            let t = t
                .iter()
                .map(|f| {
                    let (s, p) = mul_monomials(v, f, &gp);
                    coef *= &s;
                    p
                })
                .collect();
            (t, coef)
        })
        .collect()
}

/// Formal sum of `a (x) b`, merged by like terms.
pub type Tensor2 = BTreeMap<(SmashMonomial, SmashMonomial), Rational>;

/// `Delta(u)`, multiplicative from `Delta(x_i) = x_i (x) 1 + g_i (x) x_i` and `Delta(g) = g (x) g`.
pub fn coproduct(v: &MonomialYD, u: &SmashElement, bound: usize) -> Result<Tensor2> {
    check_model(v, u)?;
    if u.degree() > bound {
        return Err(Error::DegreeBudgetExceeded { degree: u.degree(), bound });
    }
    let mut out = Tensor2::new();
    for (m, c) in &u.terms {
        for (t, s) in coproduct_monomial(v, m, 2) {
            let mut it = t.into_iter();
            let key = (it.next().unwrap(), it.next().unwrap());
            let e = out.entry(key).or_insert_with(Rational::zero);
            *e += &(s * c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn counit(u: &SmashElement) -> Rational {
    u.terms.iter().filter(|(m, _)| m.word.is_empty()).map(|(_, c)| c.clone()).sum()
}

/// `S(x_i # 1) = -(1 # g_i^-1)(x_i # 1)`, `S(1 # g) = 1 # g^-1`, extended anti-multiplicatively.
pub fn antipode(v: &MonomialYD, u: &SmashElement) -> Result<SmashElement> {
    check_model(v, u)?;
    let mut out = SmashElement::zero();
    for (m, c) in &u.terms {
        out = &out + &antipode_monomial(v, m).scale(c);
    }
    Ok(out)
}

pub(crate) fn antipode_monomial(v: &MonomialYD, m: &SmashMonomial) -> SmashElement {
    let mut acc = SmashElement::group_like(m.group.inverse());
    for &x in m.word.iter().rev() {
        let gi = v.degree(x as usize).inverse();
        let (s, t) = v.act(&gi, x as usize);
        let sx = SmashElement::monomial(SmashMonomial::new(vec![t as u16], gi), -s);
        acc = mul_unchecked(v, &acc, &sx);
    }
    acc
}

/// Coaction degree `deg(w) g` of each term; errors unless all terms agree.
pub fn coaction_degree(v: &MonomialYD, x: &SmashElement) -> Result<GroupElement> {
    let mut deg: Option<GroupElement> = None;
    for m in x.terms.keys() {
        let d = v.word_degree(&m.word).mul(&m.group);
        match &deg {
            None => deg = Some(d),
            Some(e) if *e != d => return Err(Error::NotHomogeneous(format!("{e} vs {d}"))),
            _ => {}
        }
    }
    Ok(deg.unwrap_or_else(|| v.identity().clone()))
}

/// `ad_c(x)(y) = x y - (g_x . y) x` for x homogeneous of coaction degree g_x.
pub fn braided_adjoint(v: &MonomialYD, x: &SmashElement, y: &SmashElement) -> Result<SmashElement> {
    check_model(v, x)?;
    check_model(v, y)?;
    let g = coaction_degree(v, x)?;
    let xy = mul_unchecked(v, x, y);
    let gy = act(v, &g, y);
    Ok(&xy - &mul_unchecked(v, &gy, x))
}

pub fn weight(v: &MonomialYD, u: &SmashElement) -> Result<BiDegree> {
    check_model(v, u)?;
    let mut out: Option<BiDegree> = None;
    for m in u.terms.keys() {
        let d = BiDegree { left: v.word_degree(&m.word).mul(&m.group), right: m.group.clone() };
        match &out {
            None => out = Some(d),
            Some(e) if *e != d => return Err(Error::NotHomogeneous("mixed bidegrees".into())),
            _ => {}
        }
    }
    Ok(out.unwrap_or_else(|| BiDegree { left: v.identity().clone(), right: v.identity().clone() }))
}

pub fn render_group(v: &MonomialYD, g: &GroupElement) -> String {
    match g {
        GroupElement::Abelian(e) => {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k != 0)
                .map(|(b, k)| {
                    let name = v.group_names().get(b).cloned().unwrap_or_else(|| format!("g{}", b + 1));
                    if *k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if parts.is_empty() {
                "e".into()
            } else {
                parts.join(" ")
            }
        }
        GroupElement::Perm(_) => g.cycle_string(),
    }
}

/// Renders `coef * x1.x2 # K1^a L2^b` terms joined by ` + `.
pub fn render(v: &MonomialYD, u: &SmashElement) -> String {
    if u.is_zero() {
        return "0".into();
    }
    u.terms
        .iter()
        .map(|(m, c)| {
            let w = if m.word.is_empty() {
                "1".into()
            } else {
                m.word.iter().map(|&i| v.names()[i as usize].clone()).collect::<Vec<_>>().join(".")
            };
            format!("{c} * {w} # {}", render_group(v, &m.group))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let s: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c} * {:?} # {}", m.word, m.group))
            .collect();
        f.write_str(&s.join(" + "))
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    word: &'a [u16],
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<&'a [i32]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perm: Option<Vec<u8>>,
    coef: &'a Rational,
}

impl Serialize for SmashElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                word: &m.word,
                group: m.group.exponents(),
                perm: match &m.group {
                    GroupElement::Perm(p) => Some(p.iter().map(|x| x + 1).collect()),
                    _ => None,
                },
                coef: c,
            })
            .collect();
        terms.serialize(s)
    }
}
