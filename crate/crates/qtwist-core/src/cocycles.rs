//! Hopf 2-cocycles on bosonizations and the deformations they induce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::smash::{
    antipode_monomial, coproduct_monomial, mul_monomials, mul_unchecked, weight, SmashElement, SmashMonomial,
};
use crate::yd::{GroupElement, MonomialYD};

/// Bimultiplicative form `sigma(g, h) = prod b_ij^{pi(g)_i pi(h)_j}` on a free
/// abelian group, with an optional linear projection `pi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bicharacter {
    matrix: Vec<Vec<Rational>>,
    projection: Option<Vec<Vec<i64>>>,
}

impl Bicharacter {
    pub fn new(matrix: Vec<Vec<Rational>>, projection: Option<Vec<Vec<i64>>>) -> Self {
        Bicharacter { matrix, projection }
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn projection(&self) -> Option<&[Vec<i64>]> {
        self.projection.as_deref()
    }

    fn project(&self, g: &[i32]) -> Vec<i64> {
        match &self.projection {
            None => g.iter().map(|&x| x as i64).collect(),
            Some(p) => p.iter().map(|row| row.iter().zip(g).map(|(a, &b)| a * b as i64).sum()).collect(),
        }
    }

    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Rational {
        let (Some(g), Some(h)) = (g.exponents(), h.exponents()) else {
            panic!("bicharacters live on free abelian groups");
        };
        let (pg, ph) = (self.project(g), self.project(h));
        let mut out = Rational::one();
        for (i, a) in pg.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in ph.iter().enumerate() {
                if *b != 0 {
                    out *= &self.matrix[i][j].pow(a * b);
                }
            }
        }
        out
    }

    /// Entrywise inverse, the convolution inverse of the induced cocycle.
    pub fn inverse(&self) -> Self {
        Bicharacter {
            matrix: self.matrix.iter().map(|r| r.iter().map(|x| x.inv().expect("nonzero")).collect()).collect(),
            projection: self.projection.clone(),
        }
    }
}

/// Explicit 2-cocycle on a finite group; pairs absent from the table take the value 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCocycleTable {
    values: BTreeMap<(GroupElement, GroupElement), Rational>,
}

impl GroupCocycleTable {
    /// Validates normalization and `f(g,h) f(gh,t) = f(h,t) f(g,ht)` over `group`.
    pub fn new(values: BTreeMap<(GroupElement, GroupElement), Rational>, group: &[GroupElement]) -> Result<Self> {
        let t = Self::unchecked(values);
        t.validate(group)?;
        Ok(t)
    }

    pub fn unchecked(mut values: BTreeMap<(GroupElement, GroupElement), Rational>) -> Self {
        values.retain(|_, v| !v.is_one());
        GroupCocycleTable { values }
    }

    pub fn validate(&self, group: &[GroupElement]) -> Result<()> {
        for v in self.values.values() {
            if v.is_zero() {
                return Err(Error::SizeMismatch("zero value in cocycle table".into()));
            }
        }
        let e = group[0].identity_like();
        for g in group {
            if !self.get(g, &e).is_one() || !self.get(&e, g).is_one() {
                return Err(Error::GroupCocycleViolation { g: g.to_string(), h: e.to_string(), t: e.to_string() });
            }
        }
        for g in group {
            for h in group {
                let gh = g.mul(h);
                let f_gh = self.get(g, h);
                for t in group {
                    let lhs = &f_gh * &self.get(&gh, t);
                    let rhs = self.get(h, t) * self.get(g, &h.mul(t));
                    if lhs != rhs {
                        return Err(Error::GroupCocycleViolation {
                            g: g.to_string(),
                            h: h.to_string(),
                            t: t.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, g: &GroupElement, h: &GroupElement) -> Rational {
        self.values.get(&(g.clone(), h.clone())).cloned().unwrap_or_else(Rational::one)
    }

    pub fn values(&self) -> &BTreeMap<(GroupElement, GroupElement), Rational> {
        &self.values
    }

    pub fn inverse(&self) -> Self {
        GroupCocycleTable {
            values: self.values.iter().map(|(k, v)| (k.clone(), v.inv().expect("nonzero"))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupCocycle {
    Bicharacter(Bicharacter),
    Table(GroupCocycleTable),
}

impl GroupCocycle {
    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Rational {
        match self {
            GroupCocycle::Bicharacter(b) => b.eval(g, h),
            GroupCocycle::Table(t) => t.get(g, h),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupCocycle::Bicharacter(b) => GroupCocycle::Bicharacter(b.inverse()),
            GroupCocycle::Table(t) => GroupCocycle::Table(t.inverse()),
        }
    }
}

/// `sigma = exp(scale * eta~)` with `eta~(x_a # h, x_b # k) = eta(x_a, h . x_b)`, where
/// `eta(x_a, x_b) = coeffs[(a, b)]` and the action is that of `action_model`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpCocycle {
    action_model: MonomialYD,
    coeffs: BTreeMap<(usize, usize), Rational>,
    scale: Rational,
}

impl ExpCocycle {
    /// Validates `eta(h . x, h . y) = eta(x, y)` for every h in `group` and all generator pairs.
    pub fn new(
        action_model: MonomialYD,
        coeffs: BTreeMap<(usize, usize), Rational>,
        scale: Rational,
        group: &[GroupElement],
    ) -> Result<Self> {
        let n = action_model.len();
        let eta = |a: usize, b: usize| coeffs.get(&(a, b)).cloned().unwrap_or_else(Rational::zero);
        for h in group {
            for a in 0..n {
                let (sa, ta) = action_model.act(h, a);
                for b in 0..n {
                    let (sb, tb) = action_model.act(h, b);
                    if &sa * &sb * eta(ta, tb) != eta(a, b) {
                        return Err(Error::NotInvariant(format!(
                            "{} at ({}, {})",
                            h,
                            action_model.names()[a],
                            action_model.names()[b]
                        )));
                    }
                }
            }
        }
        Ok(ExpCocycle { action_model, coeffs, scale })
    }

    /// All coefficients equal to one.
    pub fn uniform(action_model: MonomialYD, scale: Rational, group: &[GroupElement]) -> Result<Self> {
        let n = action_model.len();
        let coeffs = (0..n).flat_map(|a| (0..n).map(move |b| ((a, b), Rational::one()))).collect();
        Self::new(action_model, coeffs, scale, group)
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    fn eta_tilde(&self, a: &SmashMonomial, b: &SmashMonomial) -> Rational {
        let (s, t) = self.action_model.act(&a.group, b.word[0] as usize);
        let c = self.coeffs.get(&(a.word[0] as usize, t)).cloned().unwrap_or_else(Rational::zero);
        &self.scale * &s * c
    }

    fn eval(&self, v: &MonomialYD, a: &SmashMonomial, b: &SmashMonomial) -> Rational {
        let i = a.word.len();
        if i != b.word.len() {
            return Rational::zero();
        }
        if i == 0 {
            return Rational::one();
        }
        let split = |m: &SmashMonomial| -> Vec<(Vec<SmashMonomial>, Rational)> {
            coproduct_monomial(v, m, i).into_iter().filter(|(t, _)| t.iter().all(|f| f.word.len() == 1)).collect()
        };
        let (sa, sb) = (split(a), split(b));
        let mut total = Rational::zero();
        for (ta, ca) in &sa {
            for (tb, cb) in &sb {
                let mut p = ca * cb;
                for (fa, fb) in ta.iter().zip(tb) {
                    p *= &self.eta_tilde(fa, fb);
                    if p.is_zero() {
                        break;
                    }
                }
                total += &p;
            }
        }
        let fact: i64 = (1..=i as i64).product();
        total / Rational::from_int(fact)
    }
}

/// A Hopf 2-cocycle on a bosonization, evaluated on demand.
#[derive(Clone, Debug, PartialEq)]
pub enum HopfCocycle {
    /// `sigma~(r # h, s # k) = sigma(h, k) eps(r) eps(s)`.
    Induced(GroupCocycle),
    Exp(ExpCocycle),
    /// Convolution product, leftmost factor applied to the first tensor legs.
    Convolved(Vec<HopfCocycle>),
    Inverse(Box<HopfCocycle>),
}

impl HopfCocycle {
    /// The counit cocycle `eps (x) eps`.
    pub fn trivial() -> Self {
        HopfCocycle::Convolved(Vec::new())
    }

    pub fn bicharacter(b: Bicharacter) -> Self {
        HopfCocycle::Induced(GroupCocycle::Bicharacter(b))
    }

    pub fn table(t: GroupCocycleTable) -> Self {
        HopfCocycle::Induced(GroupCocycle::Table(t))
    }

    /// Convolution inverse in closed form.
    pub fn inverse(&self) -> Self {
        match self {
            HopfCocycle::Induced(g) => HopfCocycle::Induced(g.inverse()),
            HopfCocycle::Exp(e) => HopfCocycle::Exp(ExpCocycle { scale: -&e.scale, ..e.clone() }),
            HopfCocycle::Convolved(fs) => HopfCocycle::Convolved(fs.iter().rev().map(|f| f.inverse()).collect()),
            HopfCocycle::Inverse(inner) => (**inner).clone(),
        }
    }

    /// Value on a pair of basis monomials.
    pub fn eval_monomials(&self, v: &MonomialYD, a: &SmashMonomial, b: &SmashMonomial) -> Rational {
        match self {
            HopfCocycle::Induced(g) => {
                if a.word.is_empty() && b.word.is_empty() {
                    g.eval(&a.group, &b.group)
                } else {
                    Rational::zero()
                }
            }
            HopfCocycle::Exp(e) => e.eval(v, a, b),
            HopfCocycle::Inverse(inner) => inner.inverse().eval_monomials(v, a, b),
            HopfCocycle::Convolved(fs) => match fs.len() {
                0 => {
                    if a.word.is_empty() && b.word.is_empty() {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }
                1 => fs[0].eval_monomials(v, a, b),
                k => {
                    let ta = coproduct_monomial(v, a, k);
                    let tb = coproduct_monomial(v, b, k);
                    let mut total = Rational::zero();
                    for (xa, ca) in &ta {
                        for (xb, cb) in &tb {
                            let mut p = ca * cb;
                            for (f, (fa, fb)) in fs.iter().zip(xa.iter().zip(xb)) {
                                p *= &f.eval_monomials(v, fa, fb);
                                if p.is_zero() {
                                    break;
                                }
                            }
                            total += &p;
                        }
                    }
                    total
                }
            },
        }
    }

    /// Bilinear extension to elements.
    pub fn eval(&self, v: &MonomialYD, u: &SmashElement, w: &SmashElement) -> Result<Rational> {
        check_elements(v, &[u, w])?;
        let mut total = Rational::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in w.terms() {
                total += &(ca * cb * self.eval_monomials(v, a, b));
            }
        }
        Ok(total)
    }

    pub fn describe(&self) -> Value {
        match self {
            HopfCocycle::Induced(GroupCocycle::Bicharacter(b)) => {
                json!({"kind": "bicharacter", "matrix": b.matrix, "projection": b.projection})
            }
            HopfCocycle::Induced(GroupCocycle::Table(t)) => {
                let values: BTreeMap<String, String> =
                    t.values.iter().map(|((g, h), x)| (format!("{g},{h}"), x.to_string())).collect();
                json!({"kind": "table", "values": values})
            }
            HopfCocycle::Exp(e) => {
                let eta: BTreeMap<String, String> =
                    e.coeffs.iter().map(|((a, b), x)| (format!("{},{}", a + 1, b + 1), x.to_string())).collect();
                json!({"kind": "exp", "eta": {"scale": e.scale.to_string(), "coefficients": eta}})
            }
            HopfCocycle::Convolved(fs) => {
                json!({"kind": "convolve", "factors": fs.iter().map(|f| f.describe()).collect::<Vec<_>>()})
            }
            HopfCocycle::Inverse(inner) => json!({"kind": "inverse", "of": inner.describe()}),
        }
    }
}

fn check_elements(v: &MonomialYD, us: &[&SmashElement]) -> Result<()> {
    for u in us {
        for (m, _) in u.terms() {
            if !m.group.same_group(v.identity()) || m.word.iter().any(|&i| i as usize >= v.len()) {
                return Err(Error::ModelMismatch);
            }
        }
    }
    Ok(())
}

/// Composite for `outer` a cocycle on `A_inner`: `(outer * inner)(a, b) = outer(a1, b1) inner(a2, b2)`.
pub fn convolve(outer: &HopfCocycle, inner: &HopfCocycle) -> HopfCocycle {
    let flat = |c: &HopfCocycle| match c {
        HopfCocycle::Convolved(fs) => fs.clone(),
        other => vec![other.clone()],
    };
    let mut fs = flat(outer);
    fs.extend(flat(inner));
    HopfCocycle::Convolved(fs)
}

fn check_bound(u: &SmashElement, w: &SmashElement, bound: usize) -> Result<()> {
    let degree = u.degree() + w.degree();
    if degree > bound {
        return Err(Error::DegreeBudgetExceeded { degree, bound });
    }
    Ok(())
}

/// `a ._sigma b = sigma(a1, b1) a2 b2 sigma^-1(a3, b3)`.
pub fn deform_product(sigma: &HopfCocycle, v: &MonomialYD, u: &SmashElement, w: &SmashElement, bound: usize) -> Result<SmashElement> {
    deform_product_over(sigma, None, v, u, w, bound)
}

/// Deformed product on `A_base`: the middle factor uses the `base`-deformed product.
pub fn deform_product_over(
    sigma: &HopfCocycle,
    base: Option<&HopfCocycle>,
    v: &MonomialYD,
    u: &SmashElement,
    w: &SmashElement,
    bound: usize,
) -> Result<SmashElement> {
    check_elements(v, &[u, w])?;
    check_bound(u, w, bound)?;
    let inv = sigma.inverse();
    let mut out = SmashElement::zero();
    for (a, ca) in u.terms() {
        let ta = coproduct_monomial(v, a, 3);
        for (b, cb) in w.terms() {
            let tb = coproduct_monomial(v, b, 3);
            for (xa, sa) in &ta {
                for (xb, sb) in &tb {
                    let left = sigma.eval_monomials(v, &xa[0], &xb[0]);
                    if left.is_zero() {
                        continue;
                    }
                    let right = inv.eval_monomials(v, &xa[2], &xb[2]);
                    if right.is_zero() {
                        continue;
                    }
                    let coef = ca * cb * sa * sb * left * right;
                    let mid = match base {
                        None => {
                            let (s, m) = mul_monomials(v, &xa[1], &xb[1]);
                            SmashElement::monomial(m, s)
                        }
                        Some(b) => deform_product(
                            b,
                            v,
                            &SmashElement::monomial(xa[1].clone(), Rational::one()),
                            &SmashElement::monomial(xb[1].clone(), Rational::one()),
                            bound,
                        )?,
                    };
                    out = &out + &mid.scale(&coef);
                }
            }
        }
    }
    Ok(out)
}

/// Re-evaluates each normal-form monomial `x_{i1} ... x_{ik} # g` as the
/// deformed product of its factors, left to right.
pub fn deform_normal_form(sigma: &HopfCocycle, v: &MonomialYD, u: &SmashElement, bound: usize) -> Result<SmashElement> {
    check_elements(v, &[u])?;
    let mut out = SmashElement::zero();
    for (m, c) in u.terms() {
        let mut acc = SmashElement::one(v);
        for &x in &m.word {
            acc = deform_product(sigma, v, &acc, &SmashElement::letter(v, x as usize), bound)?;
        }
        if !m.group.is_identity() {
            acc = deform_product(sigma, v, &acc, &SmashElement::group_like(m.group.clone()), bound)?;
        }
        out = &out + &acc.scale(c);
    }
    Ok(out)
}

/// `S_sigma(a) = sigma(a1, S(a2)) S(a3) sigma^-1(S(a4), a5)`.
pub fn deform_antipode(sigma: &HopfCocycle, v: &MonomialYD, u: &SmashElement, bound: usize) -> Result<SmashElement> {
    check_elements(v, &[u])?;
    if u.degree() > bound {
        return Err(Error::DegreeBudgetExceeded { degree: u.degree(), bound });
    }
    let inv = sigma.inverse();
    let mut out = SmashElement::zero();
    for (a, ca) in u.terms() {
        for (t, s) in coproduct_monomial(v, a, 5) {
            let s2 = antipode_monomial(v, &t[1]);
            let mut left = Rational::zero();
            for (m, c) in s2.terms() {
                left += &(c * sigma.eval_monomials(v, &t[0], m));
            }
            if left.is_zero() {
                continue;
            }
            let s4 = antipode_monomial(v, &t[3]);
            let mut right = Rational::zero();
            for (m, c) in s4.terms() {
                right += &(c * inv.eval_monomials(v, m, &t[4]));
            }
            if right.is_zero() {
                continue;
            }
            let mid = antipode_monomial(v, &t[2]);
            out = &out + &mid.scale(&(ca * &s * left * right));
        }
    }
    Ok(out)
}

/// `h ._sigma a = sigma(h, g) sigma^-1(h g h^-1, h) h . a` for `a` in the braided
/// subalgebra, homogeneous of degree g.
pub fn twisted_action(sigma: &HopfCocycle, v: &MonomialYD, h: &GroupElement, a: &SmashElement) -> Result<SmashElement> {
    check_elements(v, &[a])?;
    let mut g: Option<GroupElement> = None;
    for (m, _) in a.terms() {
        if !m.group.is_identity() {
            return Err(Error::NotHomogeneous("element has a group part".into()));
        }
        let d = v.word_degree(&m.word);
        match &g {
            None => g = Some(d),
            Some(e) if *e != d => return Err(Error::NotHomogeneous(format!("{e} vs {d}"))),
            _ => {}
        }
    }
    let Some(g) = g else { return Ok(SmashElement::zero()) };
    let gl = |x: &GroupElement| SmashMonomial::group_like(x.clone());
    let s = sigma.eval_monomials(v, &gl(h), &gl(&g));
    let t = sigma.inverse().eval_monomials(v, &gl(&h.conjugate(&g)), &gl(h));
    Ok(crate::smash::act(v, h, a).scale(&(s * t)))
}

/// `(1 # h) ._sigma a ._sigma (1 # h^-1)`, the deformed adjoint action on any element.
pub fn deformed_conjugation(
    sigma: &HopfCocycle,
    v: &MonomialYD,
    h: &GroupElement,
    a: &SmashElement,
    bound: usize,
) -> Result<SmashElement> {
    let l = deform_product(sigma, v, &SmashElement::group_like(h.clone()), a, bound)?;
    deform_product(sigma, v, &l, &SmashElement::group_like(h.inverse()), bound)
}

/// `u * v = phi(eta, kappa) phi(eta', kappa')^-1 u v` for bidegrees `(eta, eta')`, `(kappa, kappa')`.
pub fn star_product(phi: &GroupCocycle, v: &MonomialYD, u: &SmashElement, w: &SmashElement) -> Result<SmashElement> {
    let du = weight(v, u)?;
    let dw = weight(v, w)?;
    let c = phi.eval(&du.left, &dw.left) / phi.eval(&du.right, &dw.right);
    Ok(mul_unchecked(v, u, w).scale(&c))
}

/// Checks `sigma(b1, c1) sigma(a, b2 c2) = sigma(a1, b1) sigma(a2 b2, c)` on one triple.
pub fn cocycle_identity_holds(sigma: &HopfCocycle, v: &MonomialYD, a: &SmashMonomial, b: &SmashMonomial, c: &SmashMonomial) -> bool {
    let tb = coproduct_monomial(v, b, 2);
    let tc = coproduct_monomial(v, c, 2);
    let ta = coproduct_monomial(v, a, 2);
    let mut lhs = Rational::zero();
    for (xb, sb) in &tb {
        for (xc, sc) in &tc {
            let s1 = sigma.eval_monomials(v, &xb[0], &xc[0]);
            if s1.is_zero() {
                continue;
            }
            let (s, bc) = mul_monomials(v, &xb[1], &xc[1]);
            lhs += &(sb * sc * s1 * s * sigma.eval_monomials(v, a, &bc));
        }
    }
    let mut rhs = Rational::zero();
    for (xa, sa) in &ta {
        for (xb, sb) in &tb {
            let s1 = sigma.eval_monomials(v, &xa[0], &xb[0]);
            if s1.is_zero() {
                continue;
            }
            let (s, ab) = mul_monomials(v, &xa[1], &xb[1]);
            rhs += &(sa * sb * s1 * s * sigma.eval_monomials(v, &ab, c));
        }
    }
    lhs == rhs
}

/// `sigma(a, 1) = eps(a) = sigma(1, a)`.
pub fn is_normalized_on(sigma: &HopfCocycle, v: &MonomialYD, a: &SmashMonomial) -> bool {
    let one = SmashMonomial::group_like(v.identity().clone());
    let eps = if a.word.is_empty() { Rational::one() } else { Rational::zero() };
    sigma.eval_monomials(v, a, &one) == eps && sigma.eval_monomials(v, &one, a) == eps
}

/// All monomials with word length at most `max_len` and group part in `groups`.
pub fn monomials_up_to(v: &MonomialYD, max_len: usize, groups: &[GroupElement]) -> Vec<SmashMonomial> {
    let mut words: Vec<Vec<u16>> = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..v.len() as u16 {
                let mut w2: Vec<u16> = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words
        .into_iter()
        .flat_map(|w| groups.iter().map(move |h| SmashMonomial::new(w.clone(), h.clone())))
        .collect()
}

/// Outcome of the cocycle suite on all monomial triples of total word degree at most `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleSuiteReport {
    pub triples: usize,
    pub identity_failures: usize,
    pub normalization_failures: usize,
    pub associativity_failures: usize,
}

impl CocycleSuiteReport {
    pub fn pass(&self) -> bool {
        self.identity_failures == 0 && self.normalization_failures == 0 && self.associativity_failures == 0
    }
}

/// Cocycle identity, normalization and associativity of the deformed product on
/// every triple of monomials with total word degree at most `max_degree` and
/// group parts drawn from `groups`.
pub fn cocycle_suite(sigma: &HopfCocycle, v: &MonomialYD, max_degree: usize, groups: &[GroupElement]) -> CocycleSuiteReport {
    use rayon::prelude::*;
    let ms = monomials_up_to(v, max_degree, groups);
    let normalization_failures = ms.iter().filter(|m| !is_normalized_on(sigma, v, m)).count();
    let mut triples = Vec::new();
    for a in &ms {
        for b in &ms {
            for c in &ms {
                if a.word.len() + b.word.len() + c.word.len() <= max_degree {
                    triples.push((a, b, c));
                }
            }
        }
    }
    let results: Vec<(bool, bool)> = triples
        .par_iter()
        .map(|(a, b, c)| {
            let id = cocycle_identity_holds(sigma, v, a, b, c);
            let e = |m: &SmashMonomial| SmashElement::monomial(m.clone(), Rational::one());
            let d = max_degree;
            let ab = deform_product(sigma, v, &e(a), &e(b), d).unwrap();
            let l = deform_product(sigma, v, &ab, &e(c), d).unwrap();
            let bc = deform_product(sigma, v, &e(b), &e(c), d).unwrap();
            let r = deform_product(sigma, v, &e(a), &bc, d).unwrap();
            (id, l == r)
        })
        .collect();
    CocycleSuiteReport {
        triples: triples.len(),
        identity_failures: results.iter().filter(|r| !r.0).count(),
        normalization_failures,
        associativity_failures: results.iter().filter(|r| !r.1).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::fixtures::*;
    use crate::datum::{build_dj_datum, dj_twist_bicharacter, ReducedDatum};
    use crate::smash::{coproduct, counit, multiply};
    use crate::yd::{symmetric_group, ConjScalar};

    fn a2_twist() -> (ReducedDatum, MonomialYD, HopfCocycle) {
        let d = a2();
        let dj = build_dj_datum(&d, &[r("2")]).unwrap();
        let s = dj_twist_bicharacter(&d, &dj).unwrap();
        let v = d.module();
        (d, v, HopfCocycle::bicharacter(s))
    }

    fn gl(g: GroupElement) -> SmashElement {
        SmashElement::group_like(g)
    }

    fn fk(n: usize, s: ConjScalar) -> MonomialYD {
        let mut labels = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                labels.push(GroupElement::transposition(n, a, b));
            }
        }
        let names = labels.iter().map(|g| format!("a{}", g.cycle_string())).collect();
        MonomialYD::conjugation(names, labels, s).unwrap()
    }

    #[test]
    fn induced_evaluation() {
        let (d, v, s) = a2_twist();
        assert_eq!(s.eval(&v, &gl(d.k(0)), &gl(d.k(1))).unwrap(), r("1/12"));
        assert_eq!(s.eval(&v, &SmashElement::letter(&v, 0), &gl(d.k(1))).unwrap(), r("0"));
        let k12 = d.k(0).mul(&d.k(1));
        let lhs = s.eval(&v, &gl(k12), &gl(d.k(0))).unwrap();
        let rhs = s.eval(&v, &gl(d.k(0)), &gl(d.k(0))).unwrap() * s.eval(&v, &gl(d.k(1)), &gl(d.k(0))).unwrap();
        assert_eq!(lhs, rhs);
        let alien = gl(GroupElement::perm_identity(3));
        assert_eq!(s.eval(&v, &alien, &alien), Err(Error::ModelMismatch));
    }

    #[test]
    fn deformed_products() {
        let (d, v, s) = a2_twist();
        let (g, h) = (gl(d.k(0)), gl(d.l(1)));
        assert_eq!(deform_product(&s, &v, &g, &h, 6).unwrap(), multiply(&v, &g, &h).unwrap());
        let x1 = SmashElement::letter(&v, 0);
        let x2 = SmashElement::letter(&v, 1);
        assert_eq!(deform_product(&s, &v, &x1, &x2, 6).unwrap(), multiply(&v, &x1, &x2).unwrap().scale(&r("1/12")));
        // linking combination is unchanged up to the DJ coefficient
        let y1 = SmashElement::letter(&v, 2);
        let xy = deform_product(&s, &v, &x1, &y1, 6).unwrap();
        let yx = deform_product(&s, &v, &y1, &x1, 6).unwrap();
        let kl = deform_product(&s, &v, &gl(d.k(0)), &gl(d.l(0)), 6).unwrap();
        let one = SmashElement::one(&v);
        let l1 = r("4/3");
        let lhs = &(&xy - &yx.scale(&r("1/4"))) - &(&kl - &one).scale(&l1);
        let plain = |a: &SmashElement, b: &SmashElement| multiply(&v, a, b).unwrap();
        let rhs = &(&plain(&x1, &y1) - &plain(&y1, &x1).scale(&r("1/4"))) - &(&plain(&gl(d.k(0)), &gl(d.l(0))) - &one).scale(&l1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn deformed_antipode_examples() {
        let (d, v, s) = a2_twist();
        assert_eq!(deform_antipode(&s, &v, &gl(d.k(0)), 6).unwrap(), gl(d.k(0).inverse()));
        let x1 = SmashElement::letter(&v, 0);
        let sx = deform_antipode(&s, &v, &x1, 6).unwrap();
        assert_eq!(sx.len(), 1);
        let (m, _) = sx.terms().next().unwrap();
        assert_eq!(m, &SmashMonomial::new(vec![0], d.k(0).inverse()));
        let t = HopfCocycle::trivial();
        for u in [x1.clone(), SmashElement::word(&[0, 3], d.l(1))] {
            assert_eq!(deform_antipode(&t, &v, &u, 6).unwrap(), crate::smash::antipode(&v, &u).unwrap());
        }
    }

    #[test]
    fn twisted_action_examples() {
        let (d, v, s) = a2_twist();
        let x1 = SmashElement::letter(&v, 0);
        let x2 = SmashElement::letter(&v, 1);
        assert_eq!(twisted_action(&s, &v, &d.k(0), &x2).unwrap(), x2.scale(&r("1/2")));
        assert_eq!(twisted_action(&s, &v, v.identity(), &x2).unwrap(), x2);
        assert_eq!(twisted_action(&s, &v, &d.k(0), &x1).unwrap(), x1.scale(&r("4")));
        assert!(twisted_action(&s, &v, &d.k(0), &gl(d.k(1))).is_err());
        // agrees with the deformed adjoint action on generators
        for i in 0..4 {
            let xi = SmashElement::letter(&v, i);
            for g in [d.k(0), d.k(1), d.l(0), d.l(1)] {
                assert_eq!(twisted_action(&s, &v, &g, &xi).unwrap(), deformed_conjugation(&s, &v, &g, &xi, 6).unwrap());
            }
        }
    }

    #[test]
    fn twisted_braiding_stays_twist_equivalent() {
        let (d, v, s) = a2_twist();
        let t = d.theta();
        let gen = |i: usize| if i < t { d.k(i) } else { d.l(i - t) };
        let scalar = |g: &GroupElement, j: usize| {
            let xj = SmashElement::letter(&v, j);
            let out = twisted_action(&s, &v, g, &xj).unwrap();
            out.coefficient(&SmashMonomial::new(vec![j as u16], v.identity().clone()))
        };
        for i in 0..2 * t {
            assert_eq!(scalar(&gen(i), i), v.act(&gen(i), i).0);
            for j in 0..2 * t {
                let new = scalar(&gen(i), j) * scalar(&gen(j), i);
                let old = v.act(&gen(i), j).0 * v.act(&gen(j), i).0;
                assert_eq!(new, old);
            }
        }
    }

    #[test]
    fn star_product_examples() {
        let (d, v, s) = a2_twist();
        let HopfCocycle::Induced(phi) = &s else { unreachable!() };
        let (g, h) = (gl(d.k(0)), gl(d.l(1)));
        assert_eq!(star_product(phi, &v, &g, &h).unwrap(), multiply(&v, &g, &h).unwrap());
        let x1 = SmashElement::letter(&v, 0);
        let x2 = SmashElement::letter(&v, 1);
        assert_eq!(star_product(phi, &v, &x1, &x2).unwrap(), multiply(&v, &x1, &x2).unwrap().scale(&r("1/12")));
        assert_eq!(star_product(phi, &v, &x1, &x2).unwrap(), deform_product(&s, &v, &x1, &x2, 6).unwrap());
    }

    #[test]
    fn convolution_laws() {
        let (d, v, s) = a2_twist();
        let ms = monomials_up_to(&v, 2, &[v.identity().clone(), d.k(0), d.l(1)]);
        let id = convolve(&HopfCocycle::trivial(), &s);
        let cancel = convolve(&HopfCocycle::Inverse(Box::new(s.clone())), &s);
        let eps = HopfCocycle::trivial();
        for a in &ms {
            for b in &ms {
                assert_eq!(id.eval_monomials(&v, a, b), s.eval_monomials(&v, a, b));
                assert_eq!(cancel.eval_monomials(&v, a, b), eps.eval_monomials(&v, a, b));
            }
        }
        let HopfCocycle::Induced(GroupCocycle::Bicharacter(b)) = &s else { unreachable!() };
        let prod = Bicharacter::new(
            b.matrix().iter().map(|row| row.iter().map(|x| x * x).collect()).collect(),
            None,
        );
        let ss = convolve(&s, &s);
        for g in [d.k(0), d.k(1), d.l(0)] {
            for h in [d.k(1), d.l(0), d.l(1)] {
                let (mg, mh) = (SmashMonomial::group_like(g.clone()), SmashMonomial::group_like(h.clone()));
                assert_eq!(ss.eval_monomials(&v, &mg, &mh), prod.eval(&g, &h));
            }
        }
    }

    #[test]
    fn exp_cocycle_examples() {
        let v = fk(4, ConjScalar::Sign);
        let g = symmetric_group(4);
        let e = ExpCocycle::uniform(v.clone(), r("1/3"), &g).unwrap();
        let s = HopfCocycle::Exp(e);
        let one = SmashElement::one(&v);
        assert_eq!(s.eval(&v, &one, &one).unwrap(), r("1"));
        // labels: (12),(13),(14),(23),(24),(34)
        let a12 = SmashElement::letter(&v, 0);
        let a34 = SmashElement::letter(&v, 5);
        assert_eq!(s.eval(&v, &a12, &a34).unwrap(), r("1/3"));
        let inv = s.inverse();
        assert_eq!(inv.eval(&v, &a12, &a34).unwrap(), r("-1/3"));
        // not invariant under the chi action
        let vc = fk(4, ConjScalar::Chi);
        assert!(matches!(ExpCocycle::uniform(vc, r("1"), &g), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn coalgebra_is_undisturbed() {
        let (d, v, s) = a2_twist();
        let x1 = SmashElement::letter(&v, 0);
        let y2 = SmashElement::letter(&v, 3);
        let p = deform_product(&s, &v, &x1, &y2, 6).unwrap();
        // deformed product of skew-primitives keeps the same coproduct shape up to
        // the scalar relating it to the plain product
        let plain = multiply(&v, &x1, &y2).unwrap();
        let ratio = s.eval(&v, &gl(d.k(0)), &gl(d.l(1))).unwrap();
        assert_eq!(p, plain.scale(&ratio));
        assert_eq!(counit(&p), counit(&plain));
        let dp = coproduct(&v, &p, 6).unwrap();
        assert_eq!(dp.len(), coproduct(&v, &plain, 6).unwrap().len());
    }

    #[test]
    fn cocycle_suites_small() {
        let (d, v, s) = a2_twist();
        let rep = cocycle_suite(&s, &v, 2, &[v.identity().clone(), d.k(0), d.l(1)]);
        assert!(rep.pass(), "{rep:?}");
        let w = fk(3, ConjScalar::Sign);
        let g = symmetric_group(3);
        let e = HopfCocycle::Exp(ExpCocycle::uniform(w.clone(), r("1/3"), &g).unwrap());
        let rep = cocycle_suite(&e, &w, 2, &[w.identity().clone(), g[1].clone()]);
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn table_validation() {
        let g = symmetric_group(3);
        let t = GroupCocycleTable::new(BTreeMap::new(), &g).unwrap();
        assert!(t.values().is_empty());
        let mut bad = BTreeMap::new();
        bad.insert((g[1].clone(), g[2].clone()), r("-1"));
        assert!(matches!(GroupCocycleTable::new(bad, &g), Err(Error::GroupCocycleViolation { .. })));
        // coboundary of a function on S_3 is a cocycle
        let f = |x: &GroupElement| Rational::from_int(if x.sign() == 1 { 2 } else { 3 });
        let mut cob = BTreeMap::new();
        for a in &g {
            for b in &g {
                let val = f(a) * f(b) / f(&a.mul(b)) / f(&g[0]);
                cob.insert((a.clone(), b.clone()), val);
            }
        }
        let e = g[0].clone();
        let norm = |x: &GroupElement, y: &GroupElement| cob[&(x.clone(), y.clone())].clone();
        assert_eq!(norm(&e, &g[3]), r("1"));
        assert!(GroupCocycleTable::new(cob, &g).is_ok());
    }
}
