//! Multiparameter quantum groups and their reduced-datum presentations.
//!
//! Both `U_q(g_A)` and `U~(D_red, l)` live over the group `Z^{2 theta}`. The
//! quantum group model uses letters `e_i` and `F_i = f_i w'_i^{-1}`, so that every
//! letter is skew-primitive with trivial right leg.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cocycles::{deform_normal_form, twisted_action, Bicharacter, HopfCocycle};
use crate::datum::{build_dj_datum, dj_twist_bicharacter, DJDatum, ReducedDatum};
use crate::error::{Error, Result};
use crate::exactnum::{q_binom, sqrt_of, RadicalTable, Rational};
use crate::ideals::{ideal_member, Presentation};
use crate::smash::{multiply, product, SmashElement, SmashMonomial};
use crate::yd::{GroupElement, MonomialYD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SerreKind {
    X,
    Y,
}

/// Smallest filtration bound accepted by [`verify_isomorphism`].
pub fn default_bound(datum: &ReducedDatum) -> usize {
    let c = datum.cartan();
    let worst = (0..c.size())
        .flat_map(|i| (0..c.size()).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| (1 - c.get(i, j)) as usize)
        .max();
    4.max(2 + worst.unwrap_or(0))
}

fn serre_degree(datum: &ReducedDatum, i: usize, j: usize) -> u32 {
    (1 - datum.cartan().get(i, j)) as u32
}

/// Closed-form expansion of `ad_c(x_i)^n(x_j)` or `ad_c(y_i)^n(y_j)`; indices are 0-based.
pub fn serre_expand(kind: SerreKind, i: usize, j: usize, n: u32, datum: &ReducedDatum) -> Result<SmashElement> {
    let t = datum.theta();
    if i == j || i >= t || j >= t {
        return Err(Error::IndexError(format!("({}, {}) with theta = {t}", i + 1, j + 1)));
    }
    let qii = datum.qij(i, i);
    let e = GroupElement::abelian_identity(2 * t);
    let mut out = SmashElement::zero();
    match kind {
        SerreKind::X => {
            let (xi, xj) = (i as u16, j as u16);
            for k in 0..=n {
                let c = sign(k) * q_binom(n, k, qii)? * qii.pow(tri(k)) * datum.qij(i, j).pow(k as i64);
                let mut w = vec![xi; (n - k) as usize];
                w.push(xj);
                w.extend(std::iter::repeat_n(xi, k as usize));
                out.add_term(SmashMonomial::new(w, e.clone()), c);
            }
        }
        SerreKind::Y => {
            let (yi, yj) = ((t + i) as u16, (t + j) as u16);
            let qji = datum.qij(j, i);
            let pre = sign(n) * qji.pow(-(n as i64)) * qii.pow(-tri(n));
            for k in 0..=n {
                let c = &pre * sign(k) * q_binom(n, k, qii)? * qii.pow(tri(k)) * qji.pow(k as i64);
                let mut w = vec![yi; k as usize];
                w.push(yj);
                w.extend(std::iter::repeat_n(yi, (n - k) as usize));
                out.add_term(SmashMonomial::new(w, e.clone()), c);
            }
        }
    }
    Ok(out)
}

fn sign(k: u32) -> Rational {
    Rational::from_int(if k.is_multiple_of(2) { 1 } else { -1 })
}

fn tri(k: u32) -> i64 {
    (k as i64) * (k as i64 - 1) / 2
}

/// `x_i y_j - q_ij^{-1} y_j x_i - delta_ij l_i (K_i L_i - 1)`.
pub fn linking_relation(datum: &ReducedDatum, i: usize, j: usize) -> SmashElement {
    let t = datum.theta();
    let e = GroupElement::abelian_identity(2 * t);
    let mut r = SmashElement::word(&[i as u16, (t + j) as u16], e.clone());
    r.add_term(SmashMonomial::new(vec![(t + j) as u16, i as u16], e.clone()), -datum.qij(i, j).inv().unwrap());
    if i == j {
        let l = &datum.linking()[i];
        r.add_term(SmashMonomial::group_like(datum.k(i).mul(&datum.l(i))), -l.clone());
        r.add_term(SmashMonomial::group_like(e), l.clone());
    }
    r
}

/// Presentation of `U~(D_red, l)` over `x_1..x_theta, y_1..y_theta`.
pub fn build_ured(datum: &ReducedDatum) -> Result<Presentation> {
    let t = datum.theta();
    let mut rels = Vec::new();
    for (kind, tag) in [(SerreKind::X, "serre_x"), (SerreKind::Y, "serre_y")] {
        for i in 0..t {
            for j in 0..t {
                if i != j {
                    let s = serre_expand(kind, i, j, serre_degree(datum, i, j), datum)?;
                    rels.push((format!("{tag}[{},{}]", i + 1, j + 1), s));
                }
            }
        }
    }
    for i in 0..t {
        for j in 0..t {
            rels.push((format!("link[{},{}]", i + 1, j + 1), linking_relation(datum, i, j)));
        }
    }
    Presentation::new(datum.module(), rels, default_bound(datum))
}

/// How [`quotient_dj`] identifies the two tori.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientConvention {
    /// Relations `K_i L_i - 1`.
    #[default]
    KlInverse,
    /// Relations `K_i - L_i`, the image of `w'_i - w_i^{-1}` under the identification.
    KEqualsL,
}

/// Appends the torus relations that cut `U~(D_q, l)` down to the one-parameter quotient.
pub fn quotient_dj(p: &Presentation, convention: QuotientConvention) -> Result<Presentation> {
    let rank = p.model().identity().exponents().map(|e| e.len()).unwrap_or(0);
    if rank == 0 || !rank.is_multiple_of(2) {
        return Err(Error::ModelMismatch);
    }
    let t = rank / 2;
    let e = GroupElement::abelian_identity(rank);
    let extra = (0..t)
        .map(|i| {
            let (k, l) = (GroupElement::basis(rank, t + i), GroupElement::basis(rank, i));
            let mut r = SmashElement::zero();
            match convention {
                QuotientConvention::KlInverse => {
                    r.add_term(SmashMonomial::group_like(k.mul(&l)), Rational::one());
                    r.add_term(SmashMonomial::group_like(e.clone()), -Rational::one());
                }
                QuotientConvention::KEqualsL => {
                    r.add_term(SmashMonomial::group_like(k), Rational::one());
                    r.add_term(SmashMonomial::group_like(l), -Rational::one());
                }
            }
            (format!("torus[{}]", i + 1), r)
        })
        .collect();
    p.extended(extra)
}

/// `U_q(g_A)` realized over `Z^{2 theta}` with basis `w_1..w_theta, w'_1..w'_theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct HprModel {
    datum: ReducedDatum,
    model: MonomialYD,
}

impl HprModel {
    pub fn new(datum: &ReducedDatum) -> Self {
        let t = datum.theta();
        let mut names: Vec<String> = (1..=t).map(|i| format!("e{i}")).collect();
        names.extend((1..=t).map(|i| format!("F{i}")));
        let mut group_names: Vec<String> = (1..=t).map(|i| format!("w{i}")).collect();
        group_names.extend((1..=t).map(|i| format!("w'{i}")));
        let mut degrees: Vec<GroupElement> = (0..t).map(|i| GroupElement::basis(2 * t, i)).collect();
        degrees.extend((0..t).map(|i| GroupElement::basis(2 * t, t + i).inverse()));
        let mut chars = vec![vec![Rational::one(); 2 * t]; 2 * t];
        for k in 0..t {
            for j in 0..t {
                chars[k][j] = datum.qij(k, j).clone();
                chars[t + k][j] = datum.qij(j, k).inv().unwrap();
                chars[k][t + j] = datum.qij(k, j).inv().unwrap();
                chars[t + k][t + j] = datum.qij(j, k).clone();
            }
        }
        let model = MonomialYD::diagonal(names, group_names, degrees, chars).expect("well formed");
        HprModel { datum: datum.clone(), model }
    }

    pub fn model(&self) -> &MonomialYD {
        &self.model
    }

    pub fn datum(&self) -> &ReducedDatum {
        &self.datum
    }

    pub fn omega(&self, i: usize) -> GroupElement {
        GroupElement::basis(2 * self.datum.theta(), i)
    }

    pub fn omega_prime(&self, i: usize) -> GroupElement {
        let t = self.datum.theta();
        GroupElement::basis(2 * t, t + i)
    }

    pub fn e(&self, i: usize) -> SmashElement {
        SmashElement::letter(&self.model, i)
    }

    /// `f_i = F_i # w'_i`.
    pub fn f(&self, i: usize) -> SmashElement {
        SmashElement::word(&[(self.datum.theta() + i) as u16], self.omega_prime(i))
    }
}

/// Presentation of `U_q(g_A)` by (R5), (R6), (R7); (R1)-(R4) hold in the model itself.
/// `r5_constant` replaces every `q_ii / (q_ii - 1)`.
pub fn build_hpr(datum: &ReducedDatum, r5_constant: Option<&Rational>) -> Result<(HprModel, Presentation)> {
    let h = HprModel::new(datum);
    let v = h.model();
    let t = datum.theta();
    let mut rels = Vec::new();
    for i in 0..t {
        for j in 0..t {
            let mut r = &multiply(v, &h.e(i), &h.f(j))? - &multiply(v, &h.f(j), &h.e(i))?;
            if i == j {
                let qii = datum.qij(i, i);
                let c = match r5_constant {
                    Some(c) => c.clone(),
                    None => qii / &(qii - &Rational::one()),
                };
                r.add_term(SmashMonomial::group_like(h.omega(i)), -c.clone());
                r.add_term(SmashMonomial::group_like(h.omega_prime(i)), c);
            }
            rels.push((format!("R5[{},{}]", i + 1, j + 1), r));
        }
    }
    for i in 0..t {
        for j in 0..t {
            if i == j {
                continue;
            }
            let n = serre_degree(datum, i, j);
            let qii = datum.qij(i, i);
            let (mut r6, mut r7) = (SmashElement::zero(), SmashElement::zero());
            for k in 0..=n {
                let c = sign(k) * q_binom(n, k, qii)? * qii.pow(tri(k)) * datum.qij(i, j).pow(k as i64);
                let mut es = vec![h.e(i); (n - k) as usize];
                es.push(h.e(j));
                es.extend(std::iter::repeat_n(h.e(i), k as usize));
                r6 = &r6 + &product(v, &es)?.scale(&c);
                let mut fs = vec![h.f(i); k as usize];
                fs.push(h.f(j));
                fs.extend(std::iter::repeat_n(h.f(i), (n - k) as usize));
                r7 = &r7 + &product(v, &fs)?.scale(&c);
            }
            rels.push((format!("R6[{},{}]", i + 1, j + 1), r6));
            rels.push((format!("R7[{},{}]", i + 1, j + 1), r7));
        }
    }
    let p = Presentation::new(v.clone(), rels, default_bound(datum))?;
    Ok((h, p))
}

/// Algebra map between two models, given on letters and on the group basis.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    source: MonomialYD,
    target: MonomialYD,
    letters: Vec<SmashElement>,
    group: Vec<GroupElement>,
    named: Vec<(String, SmashElement, SmashElement)>,
}

impl GeneratorMap {
    /// Images of the named generators, keyed by generator name.
    pub fn images(&self) -> BTreeMap<String, SmashElement> {
        self.named.iter().map(|(n, _, img)| (n.clone(), img.clone())).collect()
    }

    /// Named generators as elements of the source model.
    pub fn generators(&self) -> impl Iterator<Item = (&str, &SmashElement)> {
        self.named.iter().map(|(n, g, _)| (n.as_str(), g))
    }

    pub fn source(&self) -> &MonomialYD {
        &self.source
    }

    pub fn target(&self) -> &MonomialYD {
        &self.target
    }

    fn group_image(&self, g: &GroupElement) -> GroupElement {
        let mut out = self.target.identity().clone();
        for (b, &e) in g.exponents().expect("abelian").iter().enumerate() {
            if e != 0 {
                out = out.mul(&self.group[b].pow(e));
            }
        }
        out
    }

    pub fn apply(&self, u: &SmashElement) -> Result<SmashElement> {
        let mut out = SmashElement::zero();
        for (m, c) in u.terms() {
            if !m.group.same_group(self.source.identity()) {
                return Err(Error::ModelMismatch);
            }
            let mut factors: Vec<SmashElement> = m.word.iter().map(|&x| self.letters[x as usize].clone()).collect();
            factors.push(SmashElement::group_like(self.group_image(&m.group)));
            out = &out + &product(&self.target, &factors)?.scale(c);
        }
        Ok(out)
    }
}

/// `phi: U_q(g_A) -> U~(D_red, l)` and `psi` in the opposite direction.
pub fn generator_maps(datum: &ReducedDatum) -> (GeneratorMap, GeneratorMap) {
    let t = datum.theta();
    let h = HprModel::new(datum);
    let u = datum.module();
    let gl = SmashElement::group_like;
    let mut phi_named = Vec::new();
    let mut psi_named = Vec::new();
    for i in 0..t {
        let (x, y) = (SmashElement::letter(&u, i), SmashElement::letter(&u, t + i));
        let (w, wp) = (h.omega(i), h.omega_prime(i));
        let n = i + 1;
        phi_named.push((format!("e{n}"), h.e(i), x.clone()));
        phi_named.push((format!("f{n}"), h.f(i), SmashElement::word(&[(t + i) as u16], datum.l(i).inverse())));
        phi_named.push((format!("w{n}"), gl(w.clone()), gl(datum.k(i))));
        phi_named.push((format!("w'{n}"), gl(wp.clone()), gl(datum.l(i).inverse())));
        phi_named.push((format!("w{n}^-1"), gl(w.inverse()), gl(datum.k(i).inverse())));
        phi_named.push((format!("w'{n}^-1"), gl(wp.inverse()), gl(datum.l(i))));
        psi_named.push((format!("x{n}"), x, h.e(i)));
        psi_named.push((format!("y{n}"), y, SmashElement::word(&[(t + i) as u16], h.model().identity().clone())));
        psi_named.push((format!("K{n}"), gl(datum.k(i)), gl(w.clone())));
        psi_named.push((format!("L{n}"), gl(datum.l(i)), gl(wp.inverse())));
        psi_named.push((format!("K{n}^-1"), gl(datum.k(i).inverse()), gl(w.inverse())));
        psi_named.push((format!("L{n}^-1"), gl(datum.l(i).inverse()), gl(wp)));
    }
    let mut phi_group: Vec<GroupElement> = (0..t).map(|i| datum.k(i)).collect();
    phi_group.extend((0..t).map(|i| datum.l(i).inverse()));
    let mut psi_group: Vec<GroupElement> = (0..t).map(|i| h.omega_prime(i).inverse()).collect();
    psi_group.extend((0..t).map(|i| h.omega(i)));
    let letters_u: Vec<SmashElement> = (0..2 * t).map(|i| SmashElement::letter(&u, i)).collect();
    let letters_h: Vec<SmashElement> = (0..2 * t).map(|i| SmashElement::letter(h.model(), i)).collect();
    let phi = GeneratorMap {
        source: h.model().clone(),
        target: u.clone(),
        letters: letters_u,
        group: phi_group,
        named: phi_named,
    };
    let psi = GeneratorMap { source: u, target: h.model().clone(), letters: letters_h, group: psi_group, named: psi_named };
    (phi, psi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub direction: String,
    pub member: bool,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
}

/// Checks the isomorphism `U_q(g_A) ~ U~(D_red, l)` at filtration bound `bound`.
pub fn verify_isomorphism(datum: &ReducedDatum, bound: usize, r5_constant: Option<&Rational>) -> Result<IsoReport> {
    let need = default_bound(datum);
    if bound < need {
        return Err(Error::DegreeBudgetExceeded { degree: need, bound });
    }
    let ured = build_ured(datum)?;
    let (h, hpr) = build_hpr(datum, r5_constant)?;
    let (phi, psi) = generator_maps(datum);
    let mut jobs: Vec<(String, &'static str, SmashElement, &Presentation)> = Vec::new();
    for (label, r) in hpr.labels().iter().zip(hpr.relations()) {
        jobs.push((label.clone(), "phi", phi.apply(r)?, &ured));
    }
    for (label, r) in ured.labels().iter().zip(ured.relations()) {
        jobs.push((label.clone(), "psi", psi.apply(r)?, &hpr));
    }
    let results: Vec<Result<RelationCheck>> = jobs
        .par_iter()
        .map(|(label, dir, img, p)| {
            let cert = ideal_member(img, p, bound)?;
            Ok(RelationCheck { relation: label.clone(), direction: dir.to_string(), member: cert.decision, bound })
        })
        .collect();
    let mut checks = results.into_iter().collect::<Result<Vec<_>>>()?;
    for (name, g) in psi.generators() {
        let back = phi.apply(&psi.apply(g)?)?;
        checks.push(RelationCheck { relation: name.into(), direction: "phi.psi".into(), member: &back == g, bound });
    }
    for (name, g) in phi.generators() {
        let back = psi.apply(&phi.apply(g)?)?;
        checks.push(RelationCheck { relation: name.into(), direction: "psi.phi".into(), member: &back == g, bound });
    }
    for (label, ok) in structural_checks(&h, &phi)? {
        checks.push(RelationCheck { relation: label, direction: "structural".into(), member: ok, bound });
    }
    let pass = checks.iter().all(|c| c.member);
    Ok(IsoReport { checks, pass })
}

/// (R3) and (R4) vanish in the model and so do their images under `phi`.
fn structural_checks(h: &HprModel, phi: &GeneratorMap) -> Result<Vec<(String, bool)>> {
    let v = h.model();
    let d = h.datum();
    let t = d.theta();
    let mut out = Vec::new();
    for i in 0..t {
        for j in 0..t {
            let cases = [
                ("R3", h.omega(i), h.e(j), d.qij(i, j).clone()),
                ("R3'", h.omega_prime(i), h.e(j), d.qij(j, i).inv().unwrap()),
                ("R4", h.omega(i), h.f(j), d.qij(i, j).inv().unwrap()),
                ("R4'", h.omega_prime(i), h.f(j), d.qij(j, i).clone()),
            ];
            for (tag, g, z, c) in cases {
                let conj = product(
                    v,
                    &[SmashElement::group_like(g.clone()), z.clone(), SmashElement::group_like(g.inverse())],
                )?;
                let r = &conj - &z.scale(&c);
                let ok = r.is_zero() && phi.apply(&r)?.is_zero();
                out.push((format!("{tag}[{},{}]", i + 1, j + 1), ok));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCheck {
    pub item: String,
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub checks: Vec<TwistCheck>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct TwistOutcome {
    pub sigma: HopfCocycle,
    pub bicharacter: Bicharacter,
    pub dj: DJDatum,
    pub presentation: Presentation,
    pub report: TwistReport,
}

/// Iterated braided adjoint computed with the deformed product and twisted action.
fn twisted_adjoint_power(sigma: &HopfCocycle, v: &MonomialYD, a: usize, b: usize, n: u32, bound: usize) -> Result<SmashElement> {
    let xa = SmashElement::letter(v, a);
    let g = v.degree(a).clone();
    let mut z = SmashElement::letter(v, b);
    for _ in 0..n {
        let left = crate::cocycles::deform_product(sigma, v, &xa, &z, bound)?;
        let gz = twisted_action(sigma, v, &g, &z)?;
        let right = crate::cocycles::deform_product(sigma, v, &gz, &xa, bound)?;
        z = &left - &right;
    }
    Ok(z)
}

/// Scalar c with a = c b, when one exists.
fn proportional(a: &SmashElement, b: &SmashElement) -> Option<Rational> {
    let (m, cb) = b.terms().next()?;
    let c = a.coefficient(m) / cb;
    (!c.is_zero() && &b.scale(&c) == a).then_some(c)
}

/// Deforms `U~(D_red, l)` by the DJ-twist into `U~(D_q, l)` and checks the outcome.
pub fn twist_to_dj(datum: &ReducedDatum, q_comp: &[Rational], bound: usize) -> Result<TwistOutcome> {
    datum.check_positive()?;
    let dj = build_dj_datum(datum, q_comp)?;
    let b = dj_twist_bicharacter(datum, &dj)?;
    let sigma = HopfCocycle::bicharacter(b.clone());
    let target = dj.datum();
    let v = datum.module();
    let vh = target.module();
    let t = datum.theta();
    let mut checks = Vec::new();

    // (i) twisted braiding
    let gens: Vec<GroupElement> = (0..t).map(|i| datum.l(i)).chain((0..t).map(|i| datum.k(i))).collect();
    for (gi, g) in gens.iter().enumerate() {
        for j in 0..2 * t {
            let x = SmashElement::letter(&v, j);
            let got = twisted_action(&sigma, &v, g, &x)?;
            let (want, _) = vh.act(g, j);
            checks.push(TwistCheck {
                item: "i".into(),
                label: format!("{} -> {}", v.group_names()[gi], v.names()[j]),
                pass: got == x.scale(&want),
                detail: want.to_string(),
            });
        }
    }

    // (ii) Serre relations
    for (kind, tag, off) in [(SerreKind::X, "serre_x", 0), (SerreKind::Y, "serre_y", t)] {
        for i in 0..t {
            for j in 0..t {
                if i == j {
                    continue;
                }
                let n = serre_degree(datum, i, j);
                let deformed = twisted_adjoint_power(&sigma, &v, off + i, off + j, n, bound.max(n as usize + 1))?;
                let dj_rel = deform_normal_form(&sigma, &v, &serre_expand(kind, i, j, n, target)?, bound.max(n as usize + 1))?;
                let src = serre_expand(kind, i, j, n, datum)?;
                let c = proportional(&deformed, &src);
                checks.push(TwistCheck {
                    item: "ii".into(),
                    label: format!("{tag}[{},{}]", i + 1, j + 1),
                    pass: deformed == dj_rel && c.is_some(),
                    detail: c.map(|c| c.to_string()).unwrap_or_else(|| "not proportional".into()),
                });
            }
        }
    }

    // (iii) linking relations
    let inv = sigma.inverse();
    for i in 0..t {
        for j in 0..t {
            let src = linking_relation(datum, i, j);
            let dst = linking_relation(target, i, j);
            let forward = deform_normal_form(&sigma, &v, &dst, bound.max(2))? == src;
            let backward = deform_normal_form(&inv, &v, &src, bound.max(2))? == dst;
            checks.push(TwistCheck {
                item: "iii".into(),
                label: format!("link[{},{}]", i + 1, j + 1),
                pass: forward && backward,
                detail: format!("forward {forward}, inverse {backward}"),
            });
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    let presentation = build_ured(target)?;
    Ok(TwistOutcome { sigma, bicharacter: b, dj, presentation, report: TwistReport { checks, pass } })
}

/// Bicharacter `(r_ij)` pulled back along `K_i -> e_i`, `L_i -> -e_i`.
pub fn halfroot_bicharacter(datum: &ReducedDatum, radicals: &RadicalTable) -> Result<Bicharacter> {
    let t = datum.theta();
    let mut m = vec![vec![Rational::one(); t]; t];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = sqrt_of(datum.qij(i, j), radicals)?;
        }
    }
    let proj = (0..t)
        .map(|i| {
            let mut row = vec![0i64; 2 * t];
            row[i] = -1;
            row[t + i] = 1;
            row
        })
        .collect();
    Ok(Bicharacter::new(m, Some(proj)))
}

pub fn hpr_halfroot_cocycle(datum: &ReducedDatum, radicals: &RadicalTable) -> Result<HopfCocycle> {
    Ok(HopfCocycle::bicharacter(halfroot_bicharacter(datum, radicals)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfRootReport {
    pub group_values: bool,
    pub group_pairs: usize,
    pub vanishing: bool,
    pub products: Vec<TwistCheck>,
    pub pass: bool,
}

/// Exponent vectors in `Z^theta` with l1-norm at most `r`.
fn exponent_ball(theta: usize, r: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..theta {
        let mut next = Vec::new();
        for v in &out {
            let used: i32 = v.iter().map(|x: &i32| x.abs()).sum();
            for a in -(r - used)..=(r - used) {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Checks the half-root cocycle of `target` (whose braiding is `q`) against the
/// one-parameter datum `base`: values on the torus, vanishing off it, and that
/// deforming `base` generator products reproduces the `target` products.
pub fn verify_halfroot(base: &ReducedDatum, target: &ReducedDatum, radicals: &RadicalTable, radius: i32) -> Result<HalfRootReport> {
    let t = target.theta();
    if base.theta() != t {
        return Err(Error::SizeMismatch("datum ranks differ".into()));
    }
    let b = halfroot_bicharacter(target, radicals)?;
    let sigma = HopfCocycle::Induced(crate::cocycles::GroupCocycle::Bicharacter(b.clone()));
    let v = base.module();
    let k_pow = |mu: &[i32]| {
        let mut e = vec![0; 2 * t];
        e[t..].copy_from_slice(mu);
        GroupElement::Abelian(e)
    };
    let l_inv_pow = |mu: &[i32]| GroupElement::Abelian(mu.iter().map(|x| -x).chain(std::iter::repeat_n(0, t)).collect());
    let ball = exponent_ball(t, radius);
    let mut group_values = true;
    let mut group_pairs = 0;
    let gl = |g: GroupElement| SmashMonomial::group_like(g);
    for mu in &ball {
        for nu in &ball {
            let mut want = Rational::one();
            for i in 0..t {
                for j in 0..t {
                    let e = mu[i] as i64 * nu[j] as i64;
                    if e != 0 {
                        want *= &b.matrix()[i][j].pow(e);
                    }
                }
            }
            for x in [k_pow(mu), l_inv_pow(mu)] {
                for y in [k_pow(nu), l_inv_pow(nu)] {
                    group_pairs += 1;
                    group_values &= sigma.eval_monomials(&v, &gl(x.clone()), &gl(y)) == want;
                }
            }
        }
    }

    let mut vanishing = true;
    let e = v.identity().clone();
    let groups = [e.clone(), base.k(0), base.l(0).inverse()];
    for a in 0..2 * t {
        for g in &groups {
            let word = SmashMonomial::new(vec![a as u16], g.clone());
            for h in &groups {
                vanishing &= sigma.eval_monomials(&v, &word, &gl(h.clone())).is_zero();
                vanishing &= sigma.eval_monomials(&v, &gl(h.clone()), &word).is_zero();
                for c in 0..2 * t {
                    vanishing &= sigma.eval_monomials(&v, &word, &SmashMonomial::new(vec![c as u16], h.clone())).is_zero();
                }
            }
        }
    }

    let bound = 4;
    let mut products = Vec::new();
    let vt = target.module();
    let f = |i: usize| SmashElement::word(&[(t + i) as u16], base.l(i).inverse());
    for i in 0..t {
        let x = SmashElement::letter(&v, i);
        for j in 0..t {
            for (label, a, bb) in [("e.f", x.clone(), f(j)), ("f.e", f(j), x.clone())] {
                let got = crate::cocycles::deform_product(&sigma, &v, &a, &bb, bound)?;
                let want = multiply(&v, &a, &bb)?;
                products.push(TwistCheck {
                    item: "product".into(),
                    label: format!("{label}[{},{}]", i + 1, j + 1),
                    pass: got == want,
                    detail: String::new(),
                });
            }
        }
        for g in [base.k(i), base.l(i).inverse()] {
            let gname = crate::smash::render_group(&v, &g);
            for j in 0..2 * t {
                let xj = SmashElement::letter(&v, j);
                let got = crate::cocycles::deformed_conjugation(&sigma, &v, &g, &xj, bound)?;
                let (want, _) = vt.act(&g, j);
                products.push(TwistCheck {
                    item: "conjugation".into(),
                    label: format!("{gname} {} {gname}^-1", v.names()[j]),
                    pass: got == xj.scale(&want),
                    detail: want.to_string(),
                });
            }
        }
    }
    let pass = group_values && vanishing && products.iter().all(|c| c.pass);
    Ok(HalfRootReport { group_values, group_pairs, vanishing, products, pass })
}
