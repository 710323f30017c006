//! Sparse exact linear algebra: echelon forms over Q and over a 62-bit prime field.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::exactnum::Rational;

/// Sparse vector keyed by coordinate.
pub type SparseVec = BTreeMap<usize, Rational>;

/// 2^62 - 57, the largest prime below 2^62.
pub const PRIME: u64 = 4_611_686_018_427_387_847;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn axpy(v: &mut SparseVec, c: &Rational, w: &SparseVec) {
    for (k, x) in w {
        let t = c * x;
        match v.get_mut(k) {
            Some(y) => {
                *y += &t;
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(*k, t);
            }
        }
    }
}

/// Row-echelon basis over Q. Each stored vector has a leading (smallest) key
/// normalized to one and remembers how it was built from inserted vectors.
#[derive(Default)]
pub struct Echelon {
    pivots: HashMap<usize, (SparseVec, SparseVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` in place; `expr` accumulates the coefficients of the
    /// inserted vectors that were subtracted.
    fn reduce(&self, v: &mut SparseVec, expr: &mut SparseVec) {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let (b, e) = &self.pivots[&k];
            axpy(v, &-&c, b);
            axpy(expr, &c, e);
            cursor = k + 1;
        }
    }

    /// Inserts vector number `id`. Returns the kernel relation among inserted
    /// vectors when `v` turns out to be dependent.
    pub fn insert(&mut self, id: usize, mut v: SparseVec) -> Option<SparseVec> {
        let mut expr = SparseVec::new();
        self.reduce(&mut v, &mut expr);
        if v.is_empty() {
            // v_id - sum expr = 0
            let mut rel: SparseVec = expr.into_iter().map(|(k, c)| (k, -c)).collect();
            rel.insert(id, Rational::one());
            return Some(rel);
        }
        let (&lead, lc) = v.iter().next().expect("nonempty");
        let inv = lc.inv().expect("nonzero lead");
        for x in v.values_mut() {
            *x *= &inv;
        }
        // stored vector = inv * (v_id - sum expr)
        let mut e: SparseVec = expr.into_iter().map(|(k, c)| (k, -(c * &inv))).collect();
        e.insert(id, inv);
        self.pivots.insert(lead, (v, e));
        None
    }

    /// Expresses `target` through the inserted vectors, if it lies in their span.
    pub fn express(&self, target: &SparseVec) -> Option<SparseVec> {
        let mut v = target.clone();
        let mut expr = SparseVec::new();
        self.reduce(&mut v, &mut expr);
        v.is_empty().then_some(expr)
    }
}

/// Echelon basis modulo [`PRIME`], used to pick independent vectors cheaply.
#[derive(Default)]
struct ModEchelon {
    pivots: HashMap<usize, BTreeMap<usize, u64>>,
}

impl ModEchelon {
    fn reduce(&self, v: &mut BTreeMap<usize, u64>) {
        let p = PRIME;
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, *c));
            let Some((k, c)) = next else { break };
            for (j, x) in &self.pivots[&k] {
                let t = mul_mod(c, *x, p);
                let y = v.entry(*j).or_insert(0);
                *y = (*y + p - t) % p;
                if *y == 0 {
                    v.remove(j);
                }
            }
            cursor = k + 1;
        }
    }

    fn insert(&mut self, mut v: BTreeMap<usize, u64>) -> bool {
        self.reduce(&mut v);
        let Some((&lead, &lc)) = v.iter().next() else { return false };
        let inv = inv_mod(lc, PRIME);
        for x in v.values_mut() {
            *x = mul_mod(*x, inv, PRIME);
        }
        self.pivots.insert(lead, v);
        true
    }
}

fn to_mod(v: &SparseVec) -> Option<BTreeMap<usize, u64>> {
    let mut out = BTreeMap::new();
    for (k, c) in v {
        let m = c.mod_prime(PRIME)?;
        if m != 0 {
            out.insert(*k, m);
        }
    }
    Some(out)
}

/// Columns reachable from the support of `target` through shared coordinates.
fn component(columns: &[SparseVec], target: &SparseVec) -> Vec<usize> {
    let mut by_row: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, c) in columns.iter().enumerate() {
        for k in c.keys() {
            by_row.entry(*k).or_default().push(j);
        }
    }
    let mut seen_rows: HashSet<usize> = target.keys().copied().collect();
    let mut stack: Vec<usize> = seen_rows.iter().copied().collect();
    let mut cols = HashSet::new();
    while let Some(r) = stack.pop() {
        for &j in by_row.get(&r).map(|v| v.as_slice()).unwrap_or(&[]) {
            if cols.insert(j) {
                for k in columns[j].keys() {
                    if seen_rows.insert(*k) {
                        stack.push(*k);
                    }
                }
            }
        }
    }
    let mut out: Vec<usize> = cols.into_iter().collect();
    out.sort_unstable();
    out
}

/// Finds coefficients `c` with `sum c_j columns[j] = target`, or `None` when
/// `target` is outside the span. Only the block of columns connected to the
/// target is eliminated; a modular pass selects a candidate independent set
/// and the rational pass certifies.
pub fn solve_in_span(columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    if target.is_empty() {
        return Some(SparseVec::new());
    }
    let block = component(columns, target);
    let mut chosen = Vec::new();
    let mut modular = ModEchelon::default();
    let mut usable = true;
    for &j in &block {
        match to_mod(&columns[j]) {
            Some(v) => {
                if modular.insert(v) {
                    chosen.push(j);
                }
            }
            None => {
                usable = false;
                break;
            }
        }
    }
    if usable {
        let mut ech = Echelon::new();
        for &j in &chosen {
            ech.insert(j, columns[j].clone());
        }
        if let Some(expr) = ech.express(target) {
            return Some(expr);
        }
    }
    let mut ech = Echelon::new();
    for &j in &block {
        ech.insert(j, columns[j].clone());
    }
    ech.express(target)
}

/// Exact rank of a family of sparse vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    for (j, v) in vectors.iter().enumerate() {
        ech.insert(j, v.clone());
    }
    ech.rank()
}

/// Kernel of the linear map sending basis vector `j` to `columns[j]`, as
/// sparse coefficient vectors over column indices.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    columns
        .iter()
        .enumerate()
        .filter_map(|(j, c)| ech.insert(j, c.clone()))
        .collect()
}
