//! Racks, rack 2-cocycles, the transposition rack of S_n and deformations of
//! the Fomin-Kirillov bosonizations.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cocycles::{
    deform_normal_form, deform_product, deform_product_over, twisted_action, ExpCocycle, GroupCocycleTable,
    HopfCocycle,
};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::ideals::{ideal_member, Presentation};
use crate::linalg::rank;
use crate::smash::{act, SmashElement, SmashMonomial};
use crate::yd::{chi_sign, quantum_symmetrizer, symmetric_group, ConjScalar, GroupElement, MonomialYD};

/// A finite rack given by its operation table `op[i][j] = i > j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rack {
    elements: Vec<String>,
    op: Vec<Vec<usize>>,
}

impl Rack {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn op(&self, i: usize, j: usize) -> usize {
        self.op[i][j]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }
}

pub fn validate_rack(elements: Vec<String>, op: Vec<Vec<usize>>) -> Result<Rack> {
    let n = elements.len();
    if op.len() != n || op.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    for (i, row) in op.iter().enumerate() {
        let mut seen = vec![false; n];
        for &x in row {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotBijective { i: i + 1 });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if op[i][op[j][k]] != op[op[i][j]][op[i][k]] {
                    return Err(Error::NotSelfDistributive { i: i + 1, j: j + 1, k: k + 1 });
                }
            }
        }
    }
    Ok(Rack { elements, op })
}

/// Validated values `q_ij` with `q_{i, j>k} q_{j,k} = q_{i>j, i>k} q_{i,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackCocycle {
    q: Vec<Vec<Rational>>,
}

impl RackCocycle {
    pub fn values(&self) -> &[Vec<Rational>] {
        &self.q
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.q[i][j]
    }
}

fn rack_cocycle_witness(x: &Rack, q: &[Vec<Rational>]) -> Option<(usize, usize, usize)> {
    let n = x.len();
    (0..n * n * n).find_map(|t| {
        let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
        let lhs = &q[i][x.op(j, k)] * &q[j][k];
        let rhs = &q[x.op(i, j)][x.op(i, k)] * &q[i][k];
        (lhs != rhs).then_some((i, j, k))
    })
}

pub fn validate_rack_cocycle(x: &Rack, q: Vec<Vec<Rational>>) -> Result<RackCocycle> {
    let n = x.len();
    if q.len() != n || q.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch("cocycle table does not match the rack".into()));
    }
    if let Some((i, j)) = (0..n * n).map(|t| (t / n, t % n)).find(|&(i, j)| q[i][j].is_zero()) {
        return Err(Error::ZeroEntry { i: i + 1, j: j + 1 });
    }
    match rack_cocycle_witness(x, &q) {
        Some((i, j, k)) => Err(Error::CocycleViolation { i: i + 1, j: j + 1, k: k + 1 }),
        None => Ok(RackCocycle { q }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RackTwist {
    pub q_phi: Vec<Vec<Rational>>,
    /// The long condition on `phi` holds on all triples.
    pub valid: bool,
    /// `q_phi` passes the rack cocycle identity.
    pub cocycle_valid: bool,
    /// First triple (1-based) violating the long condition.
    pub witness: Option<(usize, usize, usize)>,
}

/// `q^phi_xy = phi(x, y) phi(x > y, x)^{-1} q_xy`, with its validity condition.
pub fn twist_rack_cocycle(x: &Rack, q: &RackCocycle, phi: &[Vec<Rational>]) -> Result<RackTwist> {
    let n = x.len();
    if phi.len() != n || phi.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch("twist table does not match the rack".into()));
    }
    if phi.iter().flatten().any(|v| v.is_zero()) {
        return Err(Error::SizeMismatch("twist table has a zero entry".into()));
    }
    let mut q_phi = vec![vec![Rational::one(); n]; n];
    for a in 0..n {
        for b in 0..n {
            q_phi[a][b] = &phi[a][b] / &phi[x.op(a, b)][a] * q.get(a, b);
        }
    }
    let witness = (0..n * n * n).find_map(|t| {
        let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
        let bc = x.op(b, c);
        let abc = x.op(a, bc);
        let (ab, ac) = (x.op(a, b), x.op(a, c));
        let lhs = &phi[a][c] * &phi[ab][ac] * &phi[abc][a] * &phi[bc][b];
        let rhs = &phi[b][c] * &phi[a][bc] * &phi[abc][ab] * &phi[ac][a];
        (lhs != rhs).then_some((a + 1, b + 1, c + 1))
    });
    let cocycle_valid = rack_cocycle_witness(x, &q_phi).is_none();
    Ok(RackTwist { q_phi, valid: witness.is_none(), cocycle_valid, witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TranspositionCocycle {
    MinusOne,
    Chi,
}

impl TranspositionCocycle {
    fn scalar(self) -> ConjScalar {
        match self {
            TranspositionCocycle::MinusOne => ConjScalar::Sign,
            TranspositionCocycle::Chi => ConjScalar::Chi,
        }
    }
}

/// The rack of transpositions of S_n, ordered lexicographically by `(a, b)`, `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct TranspositionRack {
    n: usize,
    rack: Rack,
    perms: Vec<GroupElement>,
}

pub fn transposition_rack(n: usize) -> Result<TranspositionRack> {
    if !(3..=9).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let mut perms = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            perms.push(GroupElement::transposition(n, a, b));
        }
    }
    let index: BTreeMap<GroupElement, usize> = perms.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let op = perms.iter().map(|g| perms.iter().map(|h| index[&g.conjugate(h)]).collect()).collect();
    let names = perms.iter().map(|g| g.cycle_string()).collect();
    let rack = validate_rack(names, op)?;
    Ok(TranspositionRack { n, rack, perms })
}

impl TranspositionRack {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    pub fn perms(&self) -> &[GroupElement] {
        &self.perms
    }

    pub fn index_of(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        self.perms.iter().position(|g| *g == GroupElement::transposition(self.n, a, b)).expect("transposition")
    }

    /// `q[j][i]`: scalar of the braiding `c(x_j (x) x_i) = q_ji x_{j>i} (x) x_j`.
    pub fn cocycle_values(&self, kind: TranspositionCocycle) -> Vec<Vec<Rational>> {
        self.perms
            .iter()
            .map(|j| {
                self.perms
                    .iter()
                    .map(|i| match kind {
                        TranspositionCocycle::MinusOne => -Rational::one(),
                        TranspositionCocycle::Chi => Rational::from_int(chi_sign(j, i)),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn cocycle(&self, kind: TranspositionCocycle) -> Result<RackCocycle> {
        validate_rack_cocycle(&self.rack, self.cocycle_values(kind))
    }

    /// `M(O_2^n, q)` as a Yetter-Drinfeld module over S_n.
    pub fn module(&self, kind: TranspositionCocycle) -> MonomialYD {
        let names = self.perms.iter().map(|g| format!("x{}", g.cycle_string())).collect();
        MonomialYD::conjugation(names, self.perms.clone(), kind.scalar()).expect("closed under conjugation")
    }

    fn pair(&self, v: &MonomialYD, terms: &[(usize, usize, i64)]) -> SmashElement {
        let mut r = SmashElement::zero();
        for &(a, b, c) in terms {
            r.add_term(SmashMonomial::new(vec![a as u16, b as u16], v.identity().clone()), Rational::from_int(c));
        }
        r
    }
}

/// Quadratic relations of `B(O_2^n, q)` for q = -1 or chi.
pub fn fk_relations(n: usize, kind: TranspositionCocycle) -> Result<Presentation> {
    if !(3..=5).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let x = transposition_rack(n)?;
    let v = x.module(kind);
    let s = match kind {
        TranspositionCocycle::MinusOne => 1,
        TranspositionCocycle::Chi => -1,
    };
    let ix = |a: usize, b: usize| x.index_of(a, b);
    let name = |a: usize, b: usize| format!("({}{})", a + 1, b + 1);
    let mut rels = Vec::new();
    for (i, g) in x.perms().iter().enumerate() {
        rels.push((format!("square{}", g.cycle_string()), x.pair(&v, &[(i, i, 1)])));
    }
    for (i, g) in x.perms().iter().enumerate() {
        for (j, h) in x.perms().iter().enumerate().skip(i + 1) {
            if g.mul(h) == h.mul(g) {
                let label = format!("disjoint{}{}", g.cycle_string(), h.cycle_string());
                rels.push((label, x.pair(&v, &[(i, j, 1), (j, i, s)])));
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ab, bc, ac) = (ix(a, b), ix(b, c), ix(a, c));
                let tag = format!("{}{}{}", name(a, b), name(b, c), name(a, c));
                rels.push((format!("cyclic{tag}"), x.pair(&v, &[(ab, bc, 1), (bc, ac, s), (ac, ab, s)])));
                rels.push((format!("cyclic'{tag}"), x.pair(&v, &[(bc, ab, 1), (ac, bc, s), (ab, ac, s)])));
            }
        }
    }
    Presentation::new(v, rels, 2)
}

/// Graded dimensions of `B(O_2^n, q)` through degree `max_deg`: `rank Q_d` in degree d.
pub fn nichols_hilbert(n: usize, kind: TranspositionCocycle, max_deg: usize) -> Result<Vec<usize>> {
    let x = transposition_rack(n)?;
    let v = x.module(kind);
    let mut out = vec![1];
    for d in 1..=max_deg {
        out.push(if d == 1 { v.len() } else { rank(&quantum_symmetrizer(&v, d)?) });
    }
    Ok(out)
}

/// `H(Q_n^{-1}[(lam, gam)])` over the sign module, with relations closed under
/// conjugation by S_n.
pub fn build_hq(n: usize, lam: &Rational, gam: &Rational) -> Result<Presentation> {
    if !(4..=9).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let x = transposition_rack(n)?;
    let v = x.module(TranspositionCocycle::MinusOne);
    let g = symmetric_group(n);
    let one = GroupElement::perm_identity(n);
    let (t12, t13, t23, t34) = (x.index_of(0, 1), x.index_of(0, 2), x.index_of(1, 2), x.index_of(2, 3));
    let with_rhs = |quad: SmashElement, c: &Rational, h: GroupElement| {
        let mut r = quad;
        r.add_term(SmashMonomial::group_like(one.clone()), -c.clone());
        r.add_term(SmashMonomial::group_like(h), c.clone());
        r
    };
    let base = [
        ("square", x.pair(&v, &[(t12, t12, 1)])),
        (
            "disjoint",
            with_rhs(x.pair(&v, &[(t12, t34, 1), (t34, t12, 1)]), lam, x.perms()[t12].mul(&x.perms()[t34])),
        ),
        (
            "cyclic",
            with_rhs(
                x.pair(&v, &[(t12, t23, 1), (t23, t13, 1), (t13, t12, 1)]),
                gam,
                x.perms()[t12].mul(&x.perms()[t23]),
            ),
        ),
    ];
    let mut rels = Vec::new();
    for (tag, r) in base {
        let mut seen = BTreeSet::new();
        for h in &g {
            let c = act(&v, h, &r);
            let key: Vec<SmashMonomial> = c.terms().map(|(m, _)| m.clone()).collect();
            if seen.insert(key) {
                let lead = c.terms().next().map(|(m, _)| m.word.clone()).unwrap_or_default();
                let label = lead.iter().map(|&i| x.perms()[i as usize].cycle_string()).collect::<String>();
                rels.push((format!("{tag}{label}"), c));
            }
        }
    }
    Presentation::new(v, rels, 2)
}

/// Re-evaluates a relation with deformed products, scaling every product of two
/// letters by `scale`.
fn realize(sigma: &HopfCocycle, base: Option<&HopfCocycle>, v: &MonomialYD, r: &SmashElement, scale: &Rational) -> Result<SmashElement> {
    let mut out = SmashElement::zero();
    for (m, c) in r.terms() {
        let piece = match m.word.as_slice() {
            [a, b] => {
                let (a, b) = (SmashElement::letter(v, *a as usize), SmashElement::letter(v, *b as usize));
                deform_product_over(sigma, base, v, &a, &b, 2)?.scale(scale)
            }
            [] => SmashElement::monomial(m.clone(), Rational::one()),
            _ => return Err(Error::NotHomogeneous("expected quadratic relations".into())),
        };
        out = &out + &piece.scale(c);
    }
    if !out.terms().all(|(m, _)| m.group.is_identity() || m.word.is_empty()) {
        return Err(Error::NotHomogeneous("unexpected group part".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub relation: String,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpReport {
    pub n: usize,
    pub lambda: Rational,
    /// Parameters reached when the letters are identified with the generators unchanged.
    pub identity_t: (Rational, Rational),
    /// Parameters reached after rescaling the generators by `sqrt(scale_squared)`.
    pub target_t: (Rational, Rational),
    pub scale_squared: Rational,
    pub identity_checks: Vec<FamilyCheck>,
    pub target_checks: Vec<FamilyCheck>,
    pub undeformed: bool,
    pub pass: bool,
}

fn family_checks(
    sigma: &HopfCocycle,
    base: Option<&HopfCocycle>,
    v: &MonomialYD,
    hq: &Presentation,
    ideal: &Presentation,
    scale: &Rational,
) -> Result<Vec<FamilyCheck>> {
    hq.labels()
        .par_iter()
        .zip(hq.relations().par_iter())
        .map(|(label, r)| {
            let e = realize(sigma, base, v, r, scale)?;
            Ok(FamilyCheck { relation: label.clone(), member: ideal_member(&e, ideal, 2)?.decision })
        })
        .collect()
}

fn exp_cocycle(n: usize, lambda: &Rational) -> Result<HopfCocycle> {
    let x = transposition_rack(n)?;
    let v = x.module(TranspositionCocycle::MinusOne);
    let scale = lambda / &Rational::from_int(3);
    Ok(HopfCocycle::Exp(ExpCocycle::uniform(v, scale, &symmetric_group(n))?))
}

fn exp_report_with(
    n: usize,
    lambda: &Rational,
    sigma: &HopfCocycle,
    base: Option<&HopfCocycle>,
    v: &MonomialYD,
    ideal: &Presentation,
    plain: impl Fn(usize, usize) -> Result<SmashElement>,
) -> Result<ExpReport> {
    let three = Rational::from_int(3);
    let identity_t = (lambda * &Rational::frac(2, 3), lambda.clone());
    let target_t = (lambda * &Rational::from_int(2), lambda * &three);
    let identity_checks = family_checks(sigma, base, v, &build_hq(n, &identity_t.0, &identity_t.1)?, ideal, &Rational::one())?;
    let target_checks = family_checks(sigma, base, v, &build_hq(n, &target_t.0, &target_t.1)?, ideal, &three)?;
    let mut undeformed = true;
    if lambda.is_zero() {
        for a in 0..v.len() {
            for b in 0..v.len() {
                let (x, y) = (SmashElement::letter(v, a), SmashElement::letter(v, b));
                undeformed &= deform_product_over(sigma, base, v, &x, &y, 2)? == plain(a, b)?;
            }
        }
    }
    let pass = undeformed && identity_checks.iter().chain(&target_checks).all(|c| c.member);
    Ok(ExpReport {
        n,
        lambda: lambda.clone(),
        identity_t,
        target_t,
        scale_squared: three,
        identity_checks,
        target_checks,
        undeformed,
        pass,
    })
}

/// Deforms `B(O_2^n, -1) # k S_n` by `exp(eta_lambda)` and checks the relations of
/// `H(Q_n^{-1}[t])` on generator products in the quadratic window.
pub fn verify_exp_deformation(n: usize, lambda: &Rational) -> Result<ExpReport> {
    if !(4..=5).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let x = transposition_rack(n)?;
    let v = x.module(TranspositionCocycle::MinusOne);
    let sigma = exp_cocycle(n, lambda)?;
    let ideal = fk_relations(n, TranspositionCocycle::MinusOne)?;
    let e = v.identity().clone();
    exp_report_with(n, lambda, &sigma, None, &v, &ideal, |a, b| Ok(SmashElement::word(&[a as u16, b as u16], e.clone())))
}

/// Parses a group cocycle table whose keys are `"g,h"` in cycle notation.
pub fn parse_group_table(n: usize, values: &BTreeMap<String, String>) -> Result<BTreeMap<(GroupElement, GroupElement), Rational>> {
    let bad = |reason: String| Error::Parse { line: 0, reason };
    let mut out = BTreeMap::new();
    for (k, v) in values {
        let (g, h) = k.split_once(',').ok_or_else(|| bad(format!("key {k:?} is not \"g,h\"")))?;
        let val: Rational = v.parse()?;
        out.insert((GroupElement::parse_cycles(g, n)?, GroupElement::parse_cycles(h, n)?), val);
    }
    Ok(out)
}

pub fn render_group_table(t: &GroupCocycleTable) -> BTreeMap<String, String> {
    t.values().iter().map(|((g, h), x)| (format!("{},{}", g.cycle_string(), h.cycle_string()), x.to_string())).collect()
}

/// First pair (x, y) of transpositions with `phi(x,y) phi(x>y, x)^{-1} chi(x,y) != -1`.
pub fn twist_table_witness(x: &TranspositionRack, phi: &GroupCocycleTable) -> Option<(GroupElement, GroupElement)> {
    let chi = x.cocycle_values(TranspositionCocycle::Chi);
    for (i, a) in x.perms().iter().enumerate() {
        for (j, b) in x.perms().iter().enumerate() {
            let v = phi.get(a, b) / phi.get(&a.conjugate(b), a) * &chi[i][j];
            if v != -Rational::one() {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComposeReport {
    pub n: usize,
    pub lambda: Rational,
    /// The twisted action of the group cocycle alone is the sign action.
    pub twisted_action_is_sign: bool,
    /// FK(-1) relations realized with the group-cocycle product lie in the FK(chi) ideal.
    pub minus_one_relations: Vec<FamilyCheck>,
    /// Convolved product agrees with the two-step product on generator pairs.
    pub groupoid_consistent: bool,
    pub deformation: ExpReport,
    pub pass: bool,
}

/// Checks that `(B(O_2^n, chi) # k S_n)` deformed by `sigma_lambda * phi~` satisfies
/// the relations of `H(Q_n^{-1}[(2 lambda, 3 lambda)])`.
pub fn compose_with_group_twist(n: usize, phi: &GroupCocycleTable, lambda: &Rational) -> Result<ComposeReport> {
    if !(4..=5).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let x = transposition_rack(n)?;
    if let Some((a, b)) = twist_table_witness(&x, phi) {
        return Err(Error::BadTwistTable { x: a.cycle_string(), y: b.cycle_string() });
    }
    let group = symmetric_group(n);
    phi.validate(&group)?;
    let v = x.module(TranspositionCocycle::Chi);
    let vs = x.module(TranspositionCocycle::MinusOne);
    let phi_t = HopfCocycle::table(phi.clone());
    let sigma = exp_cocycle(n, lambda)?;
    let composite = HopfCocycle::Convolved(vec![sigma.clone(), phi_t.clone()]);
    let ideal = fk_relations(n, TranspositionCocycle::Chi)?;

    let mut twisted_action_is_sign = true;
    for h in &group {
        for a in 0..v.len() {
            let xa = SmashElement::letter(&v, a);
            let (s, b) = vs.act(h, a);
            twisted_action_is_sign &= twisted_action(&phi_t, &v, h, &xa)? == SmashElement::letter(&v, b).scale(&s);
        }
    }
    let fk_minus = fk_relations(n, TranspositionCocycle::MinusOne)?;
    let minus_one_relations = fk_minus
        .labels()
        .par_iter()
        .zip(fk_minus.relations().par_iter())
        .map(|(label, r)| {
            let e = deform_normal_form(&phi_t, &v, r, 2)?;
            Ok(FamilyCheck { relation: label.clone(), member: ideal_member(&e, &ideal, 2)?.decision })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut groupoid_consistent = true;
    for a in 0..v.len() {
        for b in 0..v.len() {
            let (xa, xb) = (SmashElement::letter(&v, a), SmashElement::letter(&v, b));
            let one = deform_product(&composite, &v, &xa, &xb, 2)?;
            let two = deform_product_over(&sigma, Some(&phi_t), &v, &xa, &xb, 2)?;
            groupoid_consistent &= one == two;
        }
    }
    let deformation = exp_report_with(n, lambda, &composite, None, &v, &ideal, |a, b| {
        deform_product(&phi_t, &v, &SmashElement::letter(&v, a), &SmashElement::letter(&v, b), 2)
    })?;
    let pass = twisted_action_is_sign
        && groupoid_consistent
        && deformation.pass
        && minus_one_relations.iter().all(|c| c.member);
    Ok(ComposeReport {
        n,
        lambda: lambda.clone(),
        twisted_action_is_sign,
        minus_one_relations,
        groupoid_consistent,
        deformation,
        pass,
    })
}

/// Searches for a {+1, -1}-valued normalized 2-cocycle on S_n whose restriction
/// twists chi into -1, by solving the exponent system over F_2.
pub fn search_twist_table(n: usize) -> Result<Option<GroupCocycleTable>> {
    if !(3..=4).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let group = symmetric_group(n);
    let m = group.len();
    let idx: BTreeMap<&GroupElement, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let var = |g: usize, h: usize| g * m + h;
    let mul = |a: usize, b: usize| idx[&group[a].mul(&group[b])];
    let mut sys = F2System::new(m * m);
    let e = idx[&GroupElement::perm_identity(n)];
    for g in 0..m {
        sys.push(&[var(g, e)], false);
        sys.push(&[var(e, g)], false);
    }
    for g in 0..m {
        for h in 0..m {
            let gh = mul(g, h);
            for t in 0..m {
                sys.push(&[var(g, h), var(gh, t), var(h, t), var(g, mul(h, t))], false);
            }
        }
    }
    let x = transposition_rack(n)?;
    let chi = x.cocycle_values(TranspositionCocycle::Chi);
    for (i, a) in x.perms().iter().enumerate() {
        for (j, b) in x.perms().iter().enumerate() {
            let ab = idx[&a.conjugate(b)];
            // phi(a,b) phi(a>b, a) chi(a,b) = -1, written additively
            sys.push(&[var(idx[a], idx[b]), var(ab, idx[a])], chi[i][j].is_one());
        }
    }
    let Some(sol) = sys.solve() else { return Ok(None) };
    let mut values = BTreeMap::new();
    for g in 0..m {
        for h in 0..m {
            if sol[var(g, h)] {
                values.insert((group[g].clone(), group[h].clone()), -Rational::one());
            }
        }
    }
    Ok(Some(GroupCocycleTable::new(values, &group)?))
}

/// Linear system over F_2 with bitset rows.
struct F2System {
    vars: usize,
    words: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl F2System {
    fn new(vars: usize) -> Self {
        F2System { vars, words: vars.div_ceil(64), rows: Vec::new() }
    }

    fn push(&mut self, vars: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.words];
        for &v in vars {
            row[v / 64] ^= 1 << (v % 64);
        }
        if row.iter().any(|&w| w != 0) || rhs {
            self.rows.push((row, rhs));
        }
    }

    fn solve(mut self) -> Option<Vec<bool>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.vars {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].0[w] & b != 0) else { continue };
            self.rows.swap(r, p);
            let (pivot, prhs) = self.rows[r].clone();
            for (i, (row, rhs)) in self.rows.iter_mut().enumerate() {
                if i != r && row[w] & b != 0 {
                    row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
                    *rhs ^= prhs;
                }
            }
            pivots.push(c);
            r += 1;
        }
        if self.rows[r..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        let mut sol = vec![false; self.vars];
        for (i, &c) in pivots.iter().enumerate() {
            sol[c] = self.rows[i].1;
        }
        Some(sol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::graded_dimension;
    use crate::smash::multiply;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rack_examples() {
        let x = transposition_rack(3).unwrap();
        assert_eq!(x.rack().len(), 3);
        let (t12, t23, t13) = (x.index_of(0, 1), x.index_of(1, 2), x.index_of(0, 2));
        assert_eq!(x.rack().op(t12, t23), t13);
        assert_eq!(
            validate_rack(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 1]]),
            Err(Error::NotBijective { i: 1 })
        );
        // 1 > (1 > 1) = 1 but (1 > 1) > (1 > 1) = 2
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let op = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(validate_rack(names, op), Err(Error::NotSelfDistributive { i: 1, j: 1, k: 1 }));
    }

    #[test]
    fn chi_case_split() {
        let x = transposition_rack(3).unwrap();
        let chi = x.cocycle_values(TranspositionCocycle::Chi);
        // chi_{(13)}((12)) = +1
        assert_eq!(chi[x.index_of(0, 1)][x.index_of(0, 2)], r("1"));
        assert_eq!(chi[x.index_of(0, 2)][x.index_of(0, 1)], r("-1"));
    }

    #[test]
    fn cocycles_validate() {
        for n in [3, 4, 5] {
            let x = transposition_rack(n).unwrap();
            assert!(x.cocycle(TranspositionCocycle::MinusOne).is_ok());
            assert!(x.cocycle(TranspositionCocycle::Chi).is_ok());
            for kind in [TranspositionCocycle::MinusOne, TranspositionCocycle::Chi] {
                let v = x.module(kind);
                for (j, g) in x.perms().iter().enumerate() {
                    for i in 0..v.len() {
                        let (s, k) = v.act(g, i);
                        assert_eq!(k, x.rack().op(j, i));
                        assert_eq!(s, x.cocycle_values(kind)[j][i]);
                    }
                }
            }
        }
        let x = transposition_rack(3).unwrap();
        let mut q = x.cocycle_values(TranspositionCocycle::MinusOne);
        q[0][1] = r("1");
        assert!(matches!(validate_rack_cocycle(x.rack(), q), Err(Error::CocycleViolation { .. })));
    }

    #[test]
    fn twist_identity_and_restriction() {
        let x = transposition_rack(3).unwrap();
        let q = x.cocycle(TranspositionCocycle::Chi).unwrap();
        let ones = vec![vec![r("1"); 3]; 3];
        let t = twist_rack_cocycle(x.rack(), &q, &ones).unwrap();
        assert!(t.valid && t.cocycle_valid);
        assert_eq!(t.q_phi, q.values());
        // restriction of a coboundary-style group cocycle on S_3
        let g = symmetric_group(3);
        let f = |h: &GroupElement| Rational::from_int(if h.sign() == 1 { 2 } else { 5 });
        let phi: Vec<Vec<Rational>> = x
            .perms()
            .iter()
            .map(|a| x.perms().iter().map(|b| f(a) * f(b) / f(&a.mul(b))).collect())
            .collect();
        let mut full = BTreeMap::new();
        for a in &g {
            for b in &g {
                full.insert((a.clone(), b.clone()), f(a) * f(b) / f(&a.mul(b)) / f(&g[0]));
            }
        }
        assert!(GroupCocycleTable::new(full, &g).is_ok());
        let t = twist_rack_cocycle(x.rack(), &q, &phi).unwrap();
        assert!(t.valid && t.cocycle_valid);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn twist_condition_iff_cocycle(bits in proptest::collection::vec(proptest::bool::ANY, 9), chi in proptest::bool::ANY) {
            let x = transposition_rack(3).unwrap();
            let kind = if chi { TranspositionCocycle::Chi } else { TranspositionCocycle::MinusOne };
            let q = x.cocycle(kind).unwrap();
            let phi: Vec<Vec<Rational>> =
                (0..3).map(|i| (0..3).map(|j| if bits[3 * i + j] { r("-1") } else { r("1") }).collect()).collect();
            let t = twist_rack_cocycle(x.rack(), &q, &phi).unwrap();
            prop_assert_eq!(t.valid, t.cocycle_valid);
        }
    }

    #[test]
    fn fk_relation_counts_and_kernels() {
        let p = fk_relations(3, TranspositionCocycle::MinusOne).unwrap();
        assert_eq!(p.relations().len(), 5);
        assert_eq!(fk_relations(4, TranspositionCocycle::MinusOne).unwrap().relations().len(), 17);
        assert_eq!(fk_relations(6, TranspositionCocycle::Chi).unwrap_err(), Error::UnsupportedN(6));
        let x = transposition_rack(4).unwrap();
        let v = x.module(TranspositionCocycle::MinusOne);
        let p = fk_relations(4, TranspositionCocycle::MinusOne).unwrap();
        let want = x.pair(&v, &[(x.index_of(0, 1), x.index_of(2, 3), 1), (x.index_of(2, 3), x.index_of(0, 1), 1)]);
        assert!(p.relations().contains(&want));
        let x = transposition_rack(3).unwrap();
        let v = x.module(TranspositionCocycle::Chi);
        let p = fk_relations(3, TranspositionCocycle::Chi).unwrap();
        let (t12, t23, t13) = (x.index_of(0, 1), x.index_of(1, 2), x.index_of(0, 2));
        let want = x.pair(&v, &[(t12, t23, 1), (t23, t13, -1), (t13, t12, -1)]);
        assert!(p.relations().contains(&want));
    }

    #[test]
    fn hilbert_series() {
        for kind in [TranspositionCocycle::MinusOne, TranspositionCocycle::Chi] {
            let h = nichols_hilbert(3, kind, 4).unwrap();
            assert_eq!(h, vec![1, 3, 4, 3, 1]);
            let p = fk_relations(3, kind).unwrap();
            let g: Vec<usize> = (0..=4).map(|d| graded_dimension(&p, d).unwrap()).collect();
            assert_eq!(g, h);
            assert_eq!(nichols_hilbert(4, kind, 1).unwrap(), vec![1, 6]);
        }
    }

    #[test]
    fn hq_presentations() {
        let zero = build_hq(4, &r("0"), &r("0")).unwrap();
        let fk = fk_relations(4, TranspositionCocycle::MinusOne).unwrap();
        assert_eq!(zero.relations().len(), fk.relations().len());
        for rel in zero.relations() {
            assert!(ideal_member(rel, &fk, 2).unwrap().decision);
        }
        let p = build_hq(4, &r("2"), &r("3")).unwrap();
        let x = transposition_rack(4).unwrap();
        let v = x.module(TranspositionCocycle::MinusOne);
        let (t12, t34) = (x.index_of(0, 1), x.index_of(2, 3));
        let mut want = x.pair(&v, &[(t12, t34, 1), (t34, t12, 1)]);
        want.add_term(SmashMonomial::group_like(v.identity().clone()), r("-2"));
        want.add_term(SmashMonomial::group_like(x.perms()[t12].mul(&x.perms()[t34])), r("2"));
        assert!(p.relations().contains(&want));
        let h = SmashElement::group_like(x.perms()[t12].clone());
        let a = SmashElement::letter(&v, t34);
        assert_eq!(multiply(&v, &h, &a).unwrap(), multiply(&v, &a, &h).unwrap().scale(&r("-1")));
        assert_eq!(build_hq(3, &r("1"), &r("1")).unwrap_err(), Error::UnsupportedN(3));
    }

    #[test]
    fn exp_deformation_n4() {
        let rep = verify_exp_deformation(4, &r("0")).unwrap();
        assert!(rep.pass && rep.undeformed);
        let rep = verify_exp_deformation(4, &r("1")).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.target_t, (r("2"), r("3")));
        assert_eq!(rep.identity_t, (r("2/3"), r("1")));
        let rep = verify_exp_deformation(4, &r("5/3")).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.target_t, (r("10/3"), r("5")));

        let x = transposition_rack(4).unwrap();
        let v = x.module(TranspositionCocycle::MinusOne);
        let sigma = exp_cocycle(4, &r("1")).unwrap();
        let ideal = fk_relations(4, TranspositionCocycle::MinusOne).unwrap();
        let wrong = build_hq(4, &r("3"), &r("2")).unwrap();
        let checks = family_checks(&sigma, None, &v, &wrong, &ideal, &r("3")).unwrap();
        assert!(checks.iter().any(|c| c.relation.starts_with("disjoint") && !c.member));
        assert!(checks.iter().any(|c| c.relation.starts_with("cyclic") && !c.member));
        assert!(checks.iter().filter(|c| c.relation.starts_with("square")).all(|c| c.member));
    }

    #[test]
    fn fk_span_is_kernel_of_q2() {
        for n in [3, 4] {
            for kind in [TranspositionCocycle::MinusOne, TranspositionCocycle::Chi] {
                let p = fk_relations(n, kind).unwrap();
                assert_eq!(graded_dimension(&p, 2).unwrap(), nichols_hilbert(n, kind, 2).unwrap()[2]);
            }
        }
    }

    #[test]
    fn twist_table_search_and_compose() {
        let phi = search_twist_table(4).unwrap().expect("a twist table exists for n = 4");
        let x = transposition_rack(4).unwrap();
        assert!(twist_table_witness(&x, &phi).is_none());
        let rep = compose_with_group_twist(4, &phi, &r("0")).unwrap();
        assert!(rep.pass && rep.deformation.undeformed, "{rep:?}");
        let rep = compose_with_group_twist(4, &phi, &r("1")).unwrap();
        assert!(rep.pass && rep.groupoid_consistent && rep.twisted_action_is_sign);
        // the restriction twists chi to -1 as a rack cocycle
        let restricted: Vec<Vec<Rational>> =
            x.perms().iter().map(|a| x.perms().iter().map(|b| phi.get(a, b)).collect()).collect();
        let t = twist_rack_cocycle(x.rack(), &x.cocycle(TranspositionCocycle::Chi).unwrap(), &restricted).unwrap();
        assert!(t.valid && t.cocycle_valid);
        assert!(t.q_phi.iter().flatten().all(|v| *v == r("-1")));
        // a trivial table fails with a witness
        let trivial = GroupCocycleTable::unchecked(BTreeMap::new());
        assert!(matches!(compose_with_group_twist(4, &trivial, &r("1")), Err(Error::BadTwistTable { .. })));
    }
}
