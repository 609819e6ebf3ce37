//! Sparse multivariate polynomials over a [`FieldCtx`], monomial orders, the
//! affine-group action and reduction modulo field equations.
//!
//! The active monomial order lives in the ring context rather than in each
//! polynomial; every space built over a ring uses that one global order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// Exponent vector; length equals the ring variable count.
pub type Monomial = Vec<u32>;

pub fn mono_deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    Grevlex,
    Grlex,
    Lex,
}

/// A degree-refining (for grevlex/grlex) monomial order with an optional
/// variable permutation; `perm[i]` is the priority rank of variable i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, perm: None }
    }
    pub fn grlex() -> Self {
        MonomialOrder { kind: OrderKind::Grlex, perm: None }
    }
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: None }
    }

    pub fn refines_degree(&self) -> bool {
        matches!(self.kind, OrderKind::Grevlex | OrderKind::Grlex)
    }

    fn exp(&self, m: &[u32], i: usize) -> u32 {
        match &self.perm {
            None => m[i],
            Some(p) => m[p[i]],
        }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let n = a.len();
        match self.kind {
            OrderKind::Lex => {
                for i in 0..n {
                    match self.exp(a, i).cmp(&self.exp(b, i)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grlex => match mono_deg(a).cmp(&mono_deg(b)) {
                Ordering::Equal => MonomialOrder { kind: OrderKind::Lex, perm: self.perm.clone() }.cmp(a, b),
                o => o,
            },
            OrderKind::Grevlex => match mono_deg(a).cmp(&mono_deg(b)) {
                Ordering::Equal => {
                    for i in (0..n).rev() {
                        match self.exp(a, i).cmp(&self.exp(b, i)) {
                            Ordering::Equal => {}
                            // reversed: smaller trailing exponent is larger
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
        }
    }
}

struct RingRepr {
    field: FieldCtx,
    nvars: usize,
    var_names: Vec<String>,
    order: MonomialOrder,
}

/// Polynomial ring k[X_0..X_{m-1}] with its active monomial order.
#[derive(Clone)]
pub struct RingCtx(Arc<RingRepr>);

impl PartialEq for RingCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.nvars == other.0.nvars)
    }
}
impl Eq for RingCtx {}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingCtx({} vars over {})", self.0.nvars, self.0.field)
    }
}

impl RingCtx {
    pub fn new(field: FieldCtx, nvars: usize) -> Self {
        let var_names = (0..nvars).map(|i| format!("x{}", i)).collect();
        RingCtx(Arc::new(RingRepr { field, nvars, var_names, order: MonomialOrder::grevlex() }))
    }

    /// Ring of descent variables x{i}_{j}, i < m, j < n, ordered by (i, j).
    pub fn descended(field: FieldCtx, m: usize, n: usize) -> Self {
        let var_names = (0..m)
            .flat_map(|i| (0..n).map(move |j| format!("x{}_{}", i, j)))
            .collect();
        RingCtx(Arc::new(RingRepr { field, nvars: m * n, var_names, order: MonomialOrder::grevlex() }))
    }

    pub fn with_order(field: FieldCtx, nvars: usize, order: MonomialOrder) -> Self {
        let var_names = (0..nvars).map(|i| format!("x{}", i)).collect();
        RingCtx(Arc::new(RingRepr { field, nvars, var_names, order }))
    }

    pub fn reorder(&self, order: MonomialOrder) -> Self {
        RingCtx(Arc::new(RingRepr {
            field: self.0.field.clone(),
            nvars: self.0.nvars,
            var_names: self.0.var_names.clone(),
            order,
        }))
    }

    pub fn field(&self) -> &FieldCtx {
        &self.0.field
    }
    pub fn nvars(&self) -> usize {
        self.0.nvars
    }
    pub fn var_name(&self, i: usize) -> &str {
        &self.0.var_names[i]
    }
    pub fn var_names(&self) -> &[String] {
        &self.0.var_names
    }
    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn constant(&self, code: u64) -> Poly {
        let mut terms = BTreeMap::new();
        if code != 0 {
            terms.insert(vec![0u32; self.nvars()], code);
        }
        Poly { ring: self.clone(), terms }
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut m = vec![0u32; self.nvars()];
        m[i] = 1;
        self.monomial(m, 1)
    }

    pub fn monomial(&self, mono: Monomial, coeff: u64) -> Poly {
        debug_assert_eq!(mono.len(), self.nvars());
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(mono, coeff);
        }
        Poly { ring: self.clone(), terms }
    }

    /// The field equation X_i^e - X_i with e = q^n.
    pub fn field_equation(&self, i: usize, q: u64, n: u32) -> Poly {
        let e = q.pow(n) as u32;
        let mut hi = vec![0u32; self.nvars()];
        hi[i] = e;
        let mut lo = vec![0u32; self.nvars()];
        lo[i] = 1;
        let mut f = self.monomial(hi, 1);
        f.insert_add(lo, self.field().neg(1));
        f
    }

    /// All monomials of total degree <= i, sorted descending in the active
    /// order; errors when C(m+i, i) exceeds `cap`.
    pub fn monomials_upto(&self, i: u32, cap: usize) -> Result<Vec<Monomial>> {
        let m = self.nvars();
        let count = binomial(m as u64 + i as u64, i as u64)
            .filter(|&c| c <= cap as u128)
            .ok_or_else(|| {
                Error::CapExceeded(format!("C({}+{},{}) monomials exceed cap {}", m, i, i, cap))
            })?;
        let mut out = Vec::with_capacity(count as usize);
        let mut cur = vec![0u32; m];
        gen_monomials(&mut out, &mut cur, 0, i);
        let ord = self.order();
        out.sort_by(|a, b| ord.cmp(b, a));
        Ok(out)
    }
}

fn gen_monomials(out: &mut Vec<Monomial>, cur: &mut Monomial, var: usize, budget: u32) {
    if var == cur.len() {
        out.push(cur.clone());
        return;
    }
    for e in 0..=budget {
        cur[var] = e;
        gen_monomials(out, cur, var + 1, budget - e);
    }
    cur[var] = 0;
}

pub fn binomial(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
        if acc > u64::MAX as u128 * 1024 {
            return None;
        }
    }
    Some(acc)
}

/// Sparse polynomial: monomial -> nonzero coefficient code.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: RingCtx,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &[u32]) -> u64 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| mono_deg(m) == 0)
    }

    /// Total degree; `None` is the distinguished degree of the zero polynomial,
    /// smaller than every integer.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| mono_deg(m)).max()
    }

    pub fn deg_in_var(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    pub(crate) fn insert_add(&mut self, mono: Monomial, coeff: u64) {
        if coeff == 0 {
            return;
        }
        let f = self.ring.field().clone();
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), coeff);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_add(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.field();
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.ring.field();
        if c == 0 {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let f = self.ring.field().clone();
        let mut out = self.ring.zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let mono: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.insert_add(mono, f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn mul_var_pow(&self, var: usize, e: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut m2 = m.clone();
                m2[var] += e;
                (m2, c)
            })
            .collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// Evaluate at a point whose coordinates may live in an extension of the
    /// coefficient field (codes embed along the tower prefix).
    pub fn evaluate(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.ring.nvars() {
            return Err(Error::InvalidParameters("point arity mismatch".into()));
        }
        let kf = self.ring.field();
        let pf = point
            .first()
            .map(|e| e.ctx().clone())
            .unwrap_or_else(|| kf.clone());
        if !kf.is_prefix_of(&pf) || point.iter().any(|e| *e.ctx() != pf) {
            return Err(Error::MixedFields);
        }
        let mut acc = 0u64;
        for (m, c) in self.terms() {
            let mut t = c; // embeds as-is
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = pf.mul(t, pf.pow(point[v].code(), e as u64));
                }
            }
            acc = pf.add(acc, t);
        }
        Ok(pf.elem(acc))
    }

    pub fn evaluate_codes(&self, point: &[u64]) -> u64 {
        let f = self.ring.field();
        let mut acc = 0u64;
        for (m, c) in self.terms() {
            let mut t = c;
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[v], e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Ring homomorphism sending X_v to `images[v]`; the target ring is the
    /// ring of the images.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidParameters("substitution arity mismatch".into()));
        }
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .ok_or_else(|| Error::InvalidParameters("empty substitution".into()))?;
        if !self.ring.field().is_prefix_of(target.field()) {
            return Err(Error::MixedFields);
        }
        let mut out = target.zero();
        for (m, c) in self.terms() {
            let mut t = target.constant(c);
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[v].pow(e)).unwrap();
                }
            }
            out = out.add(&t).unwrap();
        }
        Ok(out)
    }

    /// Reduce modulo the field equations {X_i^q - X_i}: exponent rule
    /// e -> ((e-1) mod (q-1)) + 1 for e >= 1, 0 -> 0.
    pub fn reduce_mod_field_equations(&self, q: u64) -> Poly {
        let mut out = self.ring.zero();
        let q1 = (q - 1) as u32;
        for (m, c) in self.terms() {
            let mono: Monomial = m
                .iter()
                .map(|&e| if e == 0 { 0 } else { (e - 1) % q1 + 1 })
                .collect();
            out.insert_add(mono, c);
        }
        out
    }

    /// Terms sorted descending in the ring's active order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, u64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        let ord = self.ring.order();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        let ord = self.ring.order();
        self.terms.keys().max_by(|a, b| ord.cmp(a, b))
    }

    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.leading_monomial().map(|m| (m, self.terms[m]))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(c).unwrap()),
        }
    }

    /// Lift into a ring over an extension field (same variables).
    pub fn lift_to(&self, target: &RingCtx) -> Result<Poly> {
        if !self.ring.field().is_prefix_of(target.field()) || self.ring.nvars() != target.nvars() {
            return Err(Error::MixedRings);
        }
        let terms = self.terms.clone();
        Ok(Poly { ring: target.clone(), terms })
    }
}

// ---- affine maps ----

/// Invertible affine change of variables x -> M x + t.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineMap {
    field: FieldCtx,
    dim: usize,
    mat: Vec<Vec<u64>>,
    trans: Vec<u64>,
    mat_inv: Vec<Vec<u64>>,
}

impl AffineMap {
    pub fn new(field: FieldCtx, mat: Vec<Vec<u64>>, trans: Vec<u64>) -> Result<Self> {
        let dim = mat.len();
        if trans.len() != dim || mat.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameters("affine map shape mismatch".into()));
        }
        let mat_inv = invert_matrix(&field, &mat).ok_or(Error::SingularMatrix)?;
        Ok(AffineMap { field, dim, mat, trans, mat_inv })
    }

    pub fn identity(field: FieldCtx, dim: usize) -> Self {
        let mat: Vec<Vec<u64>> = (0..dim)
            .map(|i| (0..dim).map(|j| u64::from(i == j)).collect())
            .collect();
        AffineMap::new(field, mat, vec![0; dim]).unwrap()
    }

    pub fn linear(field: FieldCtx, mat: Vec<Vec<u64>>) -> Result<Self> {
        let dim = mat.len();
        AffineMap::new(field, mat, vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.mat
    }
    pub fn translation(&self) -> &[u64] {
        &self.trans
    }

    /// Apply to a point: M x + t.
    pub fn apply_point(&self, x: &[u64]) -> Vec<u64> {
        let f = &self.field;
        (0..self.dim)
            .map(|i| {
                let mut acc = self.trans[i];
                for (j, &xj) in x.iter().enumerate() {
                    acc = f.add(acc, f.mul(self.mat[i][j], xj));
                }
                acc
            })
            .collect()
    }

    pub fn inverse(&self) -> AffineMap {
        let f = &self.field;
        // x = M^-1 (y - t)
        let trans: Vec<u64> = (0..self.dim)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.dim {
                    acc = f.add(acc, f.mul(self.mat_inv[i][j], f.neg(self.trans[j])));
                }
                acc
            })
            .collect();
        AffineMap {
            field: f.clone(),
            dim: self.dim,
            mat: self.mat_inv.clone(),
            trans,
            mat_inv: self.mat.clone(),
        }
    }

    /// The composite map x -> self(first(x)).
    pub fn after(&self, first: &AffineMap) -> AffineMap {
        let f = &self.field;
        let mat: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let mut acc = 0u64;
                        for t in 0..self.dim {
                            acc = f.add(acc, f.mul(self.mat[i][t], first.mat[t][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let trans = self.apply_point(&first.trans);
        AffineMap::new(f.clone(), mat, trans).unwrap()
    }

    /// Substitute X_t -> sum_s M[t][s] X_s + b[t] into `f` (plain substitution
    /// by the map's own forms; degree is preserved).
    pub fn act(&self, f: &Poly) -> Result<Poly> {
        let ring = f.ring();
        if ring.nvars() != self.dim || *ring.field() != self.field {
            return Err(Error::MixedRings);
        }
        let images: Vec<Poly> = (0..self.dim)
            .map(|t| {
                let mut img = ring.constant(self.trans[t]);
                for s in 0..self.dim {
                    let c = self.mat[t][s];
                    if c != 0 {
                        img = img.add(&ring.var(s).scale(c)).unwrap();
                    }
                }
                img
            })
            .collect();
        f.substitute(&images)
    }
}

fn invert_matrix(field: &FieldCtx, mat: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<u64>> = mat
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, piv);
        let inv = field.inv(aug[col][col]).ok()?;
        for v in aug[col].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let f = aug[r][col];
                for c in 0..2 * n {
                    let t = field.mul(f, aug[col][c]);
                    aug[r][c] = field.sub(aug[r][c], t);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

// ---- printing and parsing ----

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Poly {
    /// Canonical text form: terms in descending order, `*` between factors,
    /// `^` for exponents >= 2, coefficient 1 omitted on nonconstant terms.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let ring = &self.ring;
        let parts: Vec<String> = self
            .sorted_terms()
            .iter()
            .map(|(m, c)| {
                let mut factors: Vec<String> = Vec::new();
                let constant = mono_deg(m) == 0;
                if *c != 1 || constant {
                    factors.push(ring.field().format_elem(*c));
                }
                for (v, &e) in m.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(ring.var_name(v).to_string()),
                        _ => factors.push(format!("{}^{}", ring.var_name(v), e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    pub fn parse(ring: &RingCtx, text: &str) -> Result<Poly> {
        crate::parse::parse_poly(ring, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2_ring(m: usize) -> RingCtx {
        RingCtx::new(FieldCtx::prime(2).unwrap(), m)
    }

    #[test]
    fn char2_square() {
        let r = gf2_ring(2);
        let f = r.var(0).add(&r.var(1)).unwrap();
        let sq = f.mul(&f).unwrap();
        let expect = r
            .monomial(vec![2, 0], 1)
            .add(&r.monomial(vec![0, 2], 1))
            .unwrap();
        assert_eq!(sq, expect);
        assert!(r.var(0).add(&r.var(0)).unwrap().is_zero());
        assert!(r.var(0).mul(&r.zero()).unwrap().is_zero());
    }

    #[test]
    fn degree_of_zero_is_none() {
        let r = gf2_ring(1);
        assert_eq!(r.zero().degree(), None);
        assert_eq!(r.one().degree(), Some(0));
        assert!(None < Some(0u32));
    }

    #[test]
    fn evaluate_examples() {
        let r = gf2_ring(2);
        let f = r.monomial(vec![2, 0], 1).add(&r.var(1)).unwrap();
        let f2 = FieldCtx::prime(2).unwrap();
        let v = f.evaluate(&[f2.elem(1), f2.elem(1)]).unwrap();
        assert!(v.is_zero());
        // x0*x1 at (a, a) over GF(4): a^2 = a+1
        let f4 = FieldCtx::tower(2, &[2]).unwrap();
        let g = r.monomial(vec![1, 1], 1);
        let v = g.evaluate(&[f4.elem(2), f4.elem(2)]).unwrap();
        assert_eq!(v.code(), 3);
    }

    #[test]
    fn affine_action() {
        let f3 = FieldCtx::prime(3).unwrap();
        let r = RingCtx::new(f3.clone(), 2);
        let id = AffineMap::identity(f3.clone(), 2);
        let f = r.monomial(vec![2, 1], 2).add(&r.var(0)).unwrap();
        assert_eq!(id.act(&f).unwrap(), f);
        // x0 -> x0 + x1
        let a = AffineMap::linear(f3.clone(), vec![vec![1, 1], vec![0, 1]]).unwrap();
        let g = a.act(&r.var(0)).unwrap();
        assert_eq!(g, r.var(0).add(&r.var(1)).unwrap());
        // inverse undoes the action, degree preserved
        let back = a.inverse().act(&a.act(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(a.act(&f).unwrap().degree(), f.degree());
    }

    #[test]
    fn affine_group_action_property() {
        use rand::{Rng, SeedableRng};
        let f5 = FieldCtx::prime(5).unwrap();
        let r = RingCtx::new(f5.clone(), 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let rand_map = |rng: &mut rand_chacha::ChaCha8Rng| loop {
                let mat: Vec<Vec<u64>> = (0..2)
                    .map(|_| (0..2).map(|_| rng.gen_range(0..5)).collect())
                    .collect();
                let trans: Vec<u64> = (0..2).map(|_| rng.gen_range(0..5)).collect();
                if let Ok(m) = AffineMap::new(f5.clone(), mat, trans) {
                    return m;
                }
            };
            let a = rand_map(&mut rng);
            let b = rand_map(&mut rng);
            let f = r
                .monomial(vec![rng.gen_range(0..3), rng.gen_range(0..3)], rng.gen_range(1..5))
                .add(&r.var(0))
                .unwrap();
            // acting by B then A substitutes A's forms into B's: f(B(A(x)))
            let lhs = b.after(&a).act(&f).unwrap();
            let rhs = a.act(&b.act(&f).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduce_field_equations() {
        let r = gf2_ring(2);
        let f = r.monomial(vec![3, 0], 1);
        assert_eq!(f.reduce_mod_field_equations(2), r.var(0));
        let g = r.monomial(vec![2, 1], 1);
        assert_eq!(g.reduce_mod_field_equations(2), r.monomial(vec![1, 1], 1));
        assert_eq!(r.one().reduce_mod_field_equations(2), r.one());
    }

    #[test]
    fn monomials_upto_counts() {
        let r1 = gf2_ring(1);
        let ms = r1.monomials_upto(2, 1000).unwrap();
        assert_eq!(ms, vec![vec![2], vec![1], vec![0]]);
        let r2 = gf2_ring(2);
        assert_eq!(r2.monomials_upto(1, 1000).unwrap().len(), 3);
        let r3 = gf2_ring(3);
        assert_eq!(r3.monomials_upto(3, 1000).unwrap().len(), 20);
        assert!(r3.monomials_upto(3, 10).is_err());
    }

    #[test]
    fn grevlex_descending_refines_degree() {
        let r = gf2_ring(3);
        let ms = r.monomials_upto(3, 1000).unwrap();
        for w in ms.windows(2) {
            assert!(mono_deg(&w[0]) >= mono_deg(&w[1]));
        }
    }
}
