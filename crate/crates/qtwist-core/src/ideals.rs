//! Presentations and filtered two-sided ideal membership by exact linear algebra.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::linalg::{rank, solve_in_span, SparseVec};
use crate::smash::{mul_monomials, SmashElement, SmashMonomial};
use crate::yd::{check_budget, index_word, word_index, GroupElement, MonomialYD};

/// Generators (the letters of a model) together with relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    model: MonomialYD,
    relations: Vec<SmashElement>,
    labels: Vec<String>,
    bound: usize,
}

impl Presentation {
    pub fn new(model: MonomialYD, relations: Vec<(String, SmashElement)>, bound: usize) -> Result<Self> {
        let mut labels = Vec::new();
        let mut rels = Vec::new();
        for (label, r) in relations {
            if r.is_zero() {
                return Err(Error::SizeMismatch(format!("relation {label} is zero")));
            }
            labels.push(label);
            rels.push(r);
        }
        Ok(Presentation { model, relations: rels, labels, bound })
    }

    pub fn model(&self) -> &MonomialYD {
        &self.model
    }

    pub fn relations(&self) -> &[SmashElement] {
        &self.relations
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    /// Appends relations, keeping the model.
    pub fn extended(&self, extra: Vec<(String, SmashElement)>) -> Result<Self> {
        let mut all: Vec<(String, SmashElement)> =
            self.labels.iter().cloned().zip(self.relations.iter().cloned()).collect();
        all.extend(extra);
        Presentation::new(self.model.clone(), all, self.bound)
    }
}

/// One summand `coef * left * relation * right` of a membership certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CombinationTerm {
    pub left: Vec<u16>,
    pub relation: usize,
    pub right_word: Vec<u16>,
    pub right_group: GroupElement,
    pub coef: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipCertificate {
    pub decision: bool,
    pub bound: usize,
    pub combination: Vec<CombinationTerm>,
}

fn words_up_to(n: usize, len: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(frontier.len() * n);
        for w in &frontier {
            for i in 0..n as u16 {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `(w1 # e) r (w2 # h)` in normal form.
fn sandwich(v: &MonomialYD, w1: &[u16], r: &SmashElement, w2: &[u16], h: &GroupElement) -> SmashElement {
    let left = SmashMonomial::new(w1.to_vec(), v.identity().clone());
    let right = SmashMonomial::new(w2.to_vec(), h.clone());
    let mut out = SmashElement::zero();
    for (m, c) in r.terms() {
        let (s1, lm) = mul_monomials(v, &left, m);
        let (s2, full) = mul_monomials(v, &lm, &right);
        out.add_term(full, s1 * s2 * c);
    }
    out
}

/// Evaluates a certificate back to an element of the free algebra.
pub fn resum(p: &Presentation, cert: &MembershipCertificate) -> SmashElement {
    let mut out = SmashElement::zero();
    for t in &cert.combination {
        let s = sandwich(&p.model, &t.left, &p.relations[t.relation], &t.right_word, &t.right_group);
        out = &out + &s.scale(&t.coef);
    }
    out
}

/// Decides whether `elem` lies in the two-sided ideal generated by the
/// relations, using spanning multiples of word-length filtration degree at most `bound`.
pub fn ideal_member(elem: &SmashElement, p: &Presentation, bound: usize) -> Result<MembershipCertificate> {
    if elem.degree() > bound {
        return Err(Error::DegreeBudgetExceeded { degree: elem.degree(), bound });
    }
    let v = &p.model;
    let no = MembershipCertificate { decision: false, bound, combination: vec![] };
    if elem.is_zero() {
        return Ok(MembershipCertificate { decision: true, bound, combination: vec![] });
    }
    let query_groups: BTreeSet<GroupElement> = elem.terms().map(|(m, _)| m.group.clone()).collect();
    // columns: (w1, relation, w2, h)
    let mut specs: Vec<(Vec<u16>, usize, Vec<u16>, GroupElement)> = Vec::new();
    for (ri, r) in p.relations.iter().enumerate() {
        let rd = r.degree();
        if rd > bound {
            continue;
        }
        let rel_groups: BTreeSet<GroupElement> = r.terms().map(|(m, _)| m.group.clone()).collect();
        let mut hs: BTreeSet<GroupElement> = BTreeSet::new();
        for t in &rel_groups {
            for g in &query_groups {
                hs.insert(t.inverse().mul(g));
            }
        }
        let words = words_up_to(v.len(), bound - rd);
        for w1 in &words {
            for w2 in words.iter().filter(|w2| w1.len() + w2.len() + rd <= bound) {
                for h in &hs {
                    specs.push((w1.clone(), ri, w2.clone(), h.clone()));
                }
            }
        }
    }
    let elems: Vec<SmashElement> = specs
        .par_iter()
        .map(|(w1, ri, w2, h)| sandwich(v, w1, &p.relations[*ri], w2, h))
        .collect();
    let mut index: HashMap<SmashMonomial, usize> = HashMap::new();
    let mut to_vec = |e: &SmashElement| -> SparseVec {
        e.terms()
            .map(|(m, c)| {
                let n = index.len();
                (*index.entry(m.clone()).or_insert(n), c.clone())
            })
            .collect()
    };
    let target = to_vec(elem);
    let columns: Vec<SparseVec> = elems.iter().map(&mut to_vec).collect();
    let Some(coeffs) = solve_in_span(&columns, &target) else {
        return Ok(no);
    };
    let combination = coeffs
        .into_iter()
        .map(|(j, coef)| {
            let (w1, ri, w2, h) = specs[j].clone();
            CombinationTerm { left: w1, relation: ri, right_word: w2, right_group: h, coef }
        })
        .collect();
    Ok(MembershipCertificate { decision: true, bound, combination })
}

pub fn equal_mod(a: &SmashElement, b: &SmashElement, p: &Presentation, bound: usize) -> Result<bool> {
    Ok(ideal_member(&(a - b), p, bound)?.decision)
}

/// Relations with group parts replaced by the identity, as word polynomials.
fn word_projection(p: &Presentation) -> Result<Vec<(usize, SparseVec)>> {
    let n = p.model.len();
    let mut out = Vec::new();
    for (ri, r) in p.relations.iter().enumerate() {
        let mut acc: HashMap<Vec<u16>, Rational> = HashMap::new();
        for (m, c) in r.terms() {
            *acc.entry(m.word.clone()).or_insert_with(Rational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        let lens: BTreeSet<usize> = acc.keys().map(|w| w.len()).collect();
        if lens.len() > 1 {
            return Err(Error::InhomogeneousRelations(ri + 1));
        }
        if let Some(&len) = lens.iter().next() {
            out.push((len, acc.into_iter().map(|(w, c)| (word_index(&w, n), c)).collect()));
        }
    }
    Ok(out)
}

/// Dimension of the degree-d component of the word-algebra quotient.
pub fn graded_dimension(p: &Presentation, d: usize) -> Result<usize> {
    let n = p.model.len();
    let total = check_budget(n, d)? as usize;
    let rels = word_projection(p)?;
    let mut columns = Vec::new();
    for (len, r) in &rels {
        if *len > d {
            continue;
        }
        let rest = d - len;
        for a in 0..=rest {
            let b = rest - a;
            let na = n.pow(a as u32);
            let nb = n.pow(b as u32);
            for u in 0..na {
                for w in 0..nb {
                    let col: SparseVec = r
                        .iter()
                        .map(|(k, c)| {
                            let mid = index_word(*k, n, *len);
                            let mut word = index_word(u, n, a);
                            word.extend(mid);
                            word.extend(index_word(w, n, b));
                            (word_index(&word, n), c.clone())
                        })
                        .collect();
                    columns.push(col);
                }
            }
        }
    }
    Ok(total - rank(&columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::fixtures::*;
    use proptest::prelude::*;

    fn plane(q: &str) -> Presentation {
        // two letters, trivial action; relation x1 x2 - q x2 x1
        let v = MonomialYD::diagonal(
            vec!["x1".into(), "x2".into()],
            vec!["g".into()],
            vec![GroupElement::Abelian(vec![0]), GroupElement::Abelian(vec![0])],
            vec![vec![r("1"), r("1")]],
        )
        .unwrap();
        let e = v.identity().clone();
        let rel = SmashElement::word(&[0, 1], e.clone()) - SmashElement::word(&[1, 0], e).scale(&r(q));
        Presentation::new(v, vec![("r".into(), rel)], 4).unwrap()
    }

    fn free(n: usize) -> Presentation {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        let v = MonomialYD::diagonal(names, vec!["g".into()], vec![GroupElement::Abelian(vec![0]); n], vec![vec![r("1"); n]])
            .unwrap();
        Presentation::new(v, vec![], 4).unwrap()
    }

    fn w(p: &Presentation, word: &[u16], c: &str) -> SmashElement {
        SmashElement::word(word, p.model().identity().clone()).scale(&r(c))
    }

    #[test]
    fn membership_examples() {
        let p = plane("6");
        let rel = p.relations()[0].clone();
        let c = ideal_member(&rel, &p, 2).unwrap();
        assert!(c.decision);
        assert_eq!(c.combination.len(), 1);
        let q = w(&p, &[0, 0, 1], "1") - w(&p, &[1, 0, 0], "36");
        let c = ideal_member(&q, &p, 3).unwrap();
        assert!(c.decision);
        assert_eq!(resum(&p, &c), q);
        let bad = w(&p, &[0, 0, 1], "1") - w(&p, &[1, 0, 0], "1");
        for d in 3..=5 {
            assert!(!ideal_member(&bad, &p, d).unwrap().decision);
        }
        assert!(matches!(ideal_member(&bad, &p, 2), Err(Error::DegreeBudgetExceeded { .. })));
    }

    #[test]
    fn equal_mod_examples() {
        let p = plane("6");
        let a = w(&p, &[0, 1, 0], "2");
        assert!(equal_mod(&a, &a, &p, 3).unwrap());
        let f = free(2);
        assert!(!equal_mod(&w(&f, &[0, 1], "1"), &w(&f, &[1, 0], "1"), &f, 2).unwrap());
    }

    #[test]
    fn graded_dimension_examples() {
        assert_eq!(graded_dimension(&free(2), 3).unwrap(), 8);
        assert_eq!(graded_dimension(&plane("3"), 2).unwrap(), 3);
        assert_eq!(graded_dimension(&plane("3"), 3).unwrap(), 4);
        let p = plane("3");
        let e = p.model().identity().clone();
        let inhom = p
            .extended(vec![("bad".into(), SmashElement::word(&[0], e.clone()) - SmashElement::word(&[0, 0], e))])
            .unwrap();
        assert_eq!(graded_dimension(&inhom, 2), Err(Error::InhomogeneousRelations(2)));
    }

    #[test]
    fn linking_relation_in_sl2_model() {
        let d = sl2();
        let v = d.module();
        let e = v.identity().clone();
        let kl = d.k(0).mul(&d.l(0));
        let rel = SmashElement::word(&[0, 1], e.clone())
            - SmashElement::word(&[1, 0], e.clone()).scale(&r("1/4"))
            - (SmashElement::group_like(kl.clone()) - SmashElement::group_like(e.clone())).scale(&r("4/3"));
        let p = Presentation::new(v.clone(), vec![("link".into(), rel)], 4).unwrap();
        let lhs = SmashElement::word(&[0, 1], e.clone());
        let rhs = SmashElement::word(&[1, 0], e.clone()).scale(&r("1/4"))
            + (SmashElement::group_like(kl) - SmashElement::group_like(e.clone())).scale(&r("4/3"));
        assert!(equal_mod(&lhs, &rhs, &p, 2).unwrap());
        // a conjugated and right-translated copy is a member with a certificate
        let l1 = SmashElement::group_like(d.l(0).inverse());
        let shifted = crate::smash::multiply(&v, &p.relations()[0], &l1).unwrap();
        let c = ideal_member(&shifted, &p, 2).unwrap();
        assert!(c.decision);
        assert_eq!(resum(&p, &c), shifted);
    }

    proptest! {
        #[test]
        fn certificates_resum_and_membership_is_monotone(
            a in proptest::collection::vec(0u16..2, 0..2),
            b in proptest::collection::vec(0u16..2, 0..2),
            c1 in -3i64..4,
            c2 in -3i64..4,
        ) {
            let p = plane("6");
            let rel = p.relations()[0].clone();
            let e = p.model().identity().clone();
            let u = SmashElement::word(&a, e.clone());
            let x = SmashElement::word(&b, e.clone());
            let v = p.model();
            let m1 = crate::smash::multiply(v, &crate::smash::multiply(v, &u, &rel).unwrap(), &x).unwrap();
            let m2 = crate::smash::multiply(v, &x, &rel).unwrap();
            let elem = &m1.scale(&Rational::from_int(c1)) + &m2.scale(&Rational::from_int(c2));
            let d = elem.degree().max(2);
            let cert = ideal_member(&elem, &p, d).unwrap();
            prop_assert!(cert.decision);
            prop_assert_eq!(resum(&p, &cert), elem.clone());
            prop_assert!(ideal_member(&elem, &p, d + 1).unwrap().decision);
        }
    }
}
