//! Dense univariate polynomials over a [`FieldCtx`], plus the probabilistic
//! factoring stack (squarefree / distinct-degree / Cantor-Zassenhaus).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Coefficient codes, low degree first; no trailing zeros (empty = zero poly).
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldCtx,
    coeffs: Vec<u64>,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", self.field.format_elem(c))?,
                _ => {
                    if c != 1 {
                        write!(f, "{}*", self.field.format_elem(c))?;
                    }
                    if i == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl UniPoly {
    pub fn zero(field: FieldCtx) -> Self {
        UniPoly { field, coeffs: vec![] }
    }

    pub fn one(field: FieldCtx) -> Self {
        UniPoly { field, coeffs: vec![1] }
    }

    pub fn x(field: FieldCtx) -> Self {
        UniPoly { field, coeffs: vec![0, 1] }
    }

    pub fn constant(field: FieldCtx, c: u64) -> Self {
        let coeffs = if c == 0 { vec![] } else { vec![c] };
        UniPoly { field, coeffs }
    }

    pub fn from_coeffs(field: FieldCtx, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// X^e - X over `field` with e = q^n given as a pair (fits desk scale).
    pub fn field_equation(field: FieldCtx, q: u64, n: u32) -> Self {
        let e = q.pow(n) as usize;
        let mut coeffs = vec![0u64; e + 1];
        coeffs[e] = 1;
        coeffs[1] = field.neg(1);
        UniPoly::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f.add(self.coeff(i), other.coeff(i));
        }
        UniPoly::from_coeffs(f.clone(), out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let out = self.coeffs.iter().map(|&c| f.neg(c)).collect();
        UniPoly { field: f.clone(), coeffs: out }
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = &self.field;
        let out = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        UniPoly::from_coeffs(f.clone(), out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f.clone());
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::from_coeffs(f.clone(), out)
    }

    pub fn mul_xpow(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u64; e];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly { field: self.field.clone(), coeffs }
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let qc = f.mul(c, lead_inv);
            quot[i - dd] = qc;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let t = f.mul(qc, dc);
                rem[i - dd + j] = f.sub(rem[i - dd + j], t);
            }
        }
        Ok((
            UniPoly::from_coeffs(f.clone(), quot),
            UniPoly::from_coeffs(f.clone(), rem),
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lead() == 1 {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()).unwrap())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(f.clone());
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i as u64) % f.p()))
            .collect();
        UniPoly::from_coeffs(f.clone(), out)
    }

    fn mulmod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus).unwrap()
    }

    pub fn powmod(&self, e: u64, modulus: &Self) -> Self {
        self.powmod_big(&BigUint::from(e), modulus)
    }

    pub fn powmod_big(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = UniPoly::one(self.field.clone()).rem(modulus).unwrap();
        let bits = e.bits();
        let mut base = self.rem(modulus).unwrap();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mulmod(&base, modulus);
            }
            if i + 1 < bits {
                base = base.mulmod(&base, modulus);
            }
        }
        acc
    }

    /// Rabin irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let r = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(r) => r,
        };
        let f = self.monic();
        let q = BigUint::from(self.field.order());
        let x = UniPoly::x(self.field.clone());
        // X^(q^r) == X mod f
        let e = q.pow(r as u32);
        if x.powmod_big(&e, &f) != x.rem(&f).unwrap() {
            return false;
        }
        for l in prime_divisors(r) {
            let e = q.pow((r / l) as u32);
            let h = x.powmod_big(&e, &f).sub(&x);
            if h.gcd(&f).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Full factorization into monic irreducibles with multiplicities,
    /// deterministic for a given seed. Returns (leading coefficient, factors).
    pub fn factor(&self, seed: u64) -> Result<(u64, Vec<(UniPoly, usize)>)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let lead = self.lead();
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok((lead, vec![]));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (g, mult) in squarefree_decomposition(&f) {
            for h in distinct_degree_then_split(&g, &mut rng) {
                out.push((h, mult));
            }
        }
        out.sort_by(|a, b| {
            (a.0.coeffs.len(), &a.0.coeffs, a.1).cmp(&(b.0.coeffs.len(), &b.0.coeffs, b.1))
        });
        Ok((lead, out))
    }

    /// Roots in the coefficient field, via factoring.
    pub fn roots(&self, seed: u64) -> Result<Vec<u64>> {
        let (_, factors) = self.factor(seed)?;
        let f = &self.field;
        let mut roots: Vec<u64> = factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| f.neg(g.coeff(0)))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        Ok(roots)
    }

    /// Brute-force root scan; the cross-check oracle for small fields.
    pub fn roots_exhaustive(&self) -> Vec<u64> {
        (0..self.field.order()).filter(|&x| self.eval(x) == 0).collect()
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2usize;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Monic input; returns pairwise-coprime squarefree parts with multiplicities.
fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field().clone();
    let p = field.p() as usize;
    let mut out = Vec::new();
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(X^p); take the p-th root and recurse.
        let g = pth_root(f);
        for (h, m) in squarefree_decomposition(&g) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.divrem(&c).unwrap().0.monic();
    let mut i = 1usize;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).unwrap().0.monic();
        if fac.degree().map_or(false, |d| d > 0) {
            out.push((fac, i));
        }
        c = c.divrem(&y).unwrap().0;
        w = y;
        i += 1;
    }
    if c.degree().map_or(false, |d| d > 0) {
        let g = pth_root(&c.monic());
        for (h, m) in squarefree_decomposition(&g) {
            out.push((h, m * p));
        }
    }
    out
}

fn pth_root(f: &UniPoly) -> UniPoly {
    let field = f.field().clone();
    let p = field.p() as usize;
    let root_exp = field.order() / field.p();
    let deg = f.degree().unwrap();
    let mut coeffs = vec![0u64; deg / p + 1];
    for (i, slot) in coeffs.iter_mut().enumerate() {
        // c^(order/p) is the p-th root of c
        *slot = field.pow(f.coeff(i * p), root_exp.max(1));
    }
    UniPoly::from_coeffs(field, coeffs)
}

/// Monic squarefree input; returns monic irreducible factors.
fn distinct_degree_then_split(f: &UniPoly, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let field = f.field().clone();
    let q = field.order();
    let x = UniPoly::x(field.clone());
    let mut out = Vec::new();
    let mut rem = f.clone();
    let mut h = x.rem(&rem).unwrap();
    let mut d = 0usize;
    while rem.degree().map_or(false, |deg| deg > 0) {
        d += 1;
        if rem.degree().unwrap() < 2 * d {
            out.push(rem.monic());
            break;
        }
        h = h.powmod(q, &rem);
        let g = h.sub(&x).gcd(&rem);
        if g.degree().map_or(false, |dd| dd > 0) {
            equal_degree_split(&g, d, rng, &mut out);
            rem = rem.divrem(&g).unwrap().0.monic();
            h = h.rem(&rem).unwrap();
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a product of degree-d irreducibles.
fn equal_degree_split(g: &UniPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly>) {
    let field = g.field().clone();
    let deg = g.degree().unwrap();
    if deg == d {
        out.push(g.monic());
        return;
    }
    let q = field.order();
    loop {
        let coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..q)).collect();
        let r = UniPoly::from_coeffs(field.clone(), coeffs);
        if r.degree().map_or(true, |dd| dd < 1) {
            continue;
        }
        let t = if field.p() == 2 {
            // trace over GF(2): sum of r^(2^i), i < log2(q) * d
            let l = (q.trailing_zeros()) as usize;
            let mut acc = r.rem(g).unwrap();
            let mut t = acc.clone();
            for _ in 1..(l * d) {
                acc = acc.mulmod(&acc, g);
                t = t.add(&acc);
            }
            t
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            r.powmod_big(&e, g).sub(&UniPoly::one(field.clone()))
        };
        let h = t.gcd(g);
        if let Some(hd) = h.degree() {
            if hd > 0 && hd < deg {
                equal_degree_split(&h, d, rng, out);
                let other = g.divrem(&h).unwrap().0.monic();
                equal_degree_split(&other, d, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a = UniPoly::from_coeffs(f5.clone(), vec![1, 2, 3, 4]);
        let b = UniPoly::from_coeffs(f5.clone(), vec![2, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn factor_x2_minus_1_over_gf5() {
        let f5 = FieldCtx::prime(5).unwrap();
        // X^2 - 1 = X^2 + 4
        let f = UniPoly::from_coeffs(f5.clone(), vec![4, 0, 1]);
        let (lead, factors) = f.factor(0).unwrap();
        assert_eq!(lead, 1);
        assert_eq!(factors.len(), 2);
        assert_eq!(f.roots(0).unwrap(), vec![1, 4]);
    }

    #[test]
    fn irreducible_quadratic_over_gf2() {
        let f2 = FieldCtx::prime(2).unwrap();
        let f = UniPoly::from_coeffs(f2.clone(), vec![1, 1, 1]);
        assert!(f.is_irreducible());
        let (_, factors) = f.factor(0).unwrap();
        assert_eq!(factors, vec![(f, 1)]);
    }

    #[test]
    fn x4_minus_x_splits_over_gf4() {
        let f4 = FieldCtx::tower(2, &[2]).unwrap();
        let f = UniPoly::field_equation(f4.clone(), 4, 1);
        let (_, factors) = f.factor(0).unwrap();
        assert_eq!(factors.len(), 4);
        assert!(factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(f.roots(0).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn factor_recombines_and_matches_root_scan() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for ctx in [
            FieldCtx::prime(2).unwrap(),
            FieldCtx::prime(7).unwrap(),
            FieldCtx::tower(2, &[4]).unwrap(),
            FieldCtx::tower(3, &[2]).unwrap(),
        ] {
            for trial in 0..30 {
                let deg = rng.gen_range(1..8);
                let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..ctx.order())).collect();
                coeffs.push(rng.gen_range(1..ctx.order()));
                let f = UniPoly::from_coeffs(ctx.clone(), coeffs);
                let (lead, factors) = f.factor(trial).unwrap();
                let mut prod = UniPoly::constant(ctx.clone(), lead);
                for (g, m) in &factors {
                    for _ in 0..*m {
                        prod = prod.mul(g);
                    }
                }
                assert_eq!(prod, f, "recombination failed over {}", ctx);
                assert_eq!(f.roots(trial).unwrap(), f.roots_exhaustive());
            }
        }
    }

    #[test]
    fn squarefree_multiplicities() {
        let f2 = FieldCtx::prime(2).unwrap();
        // (X+1)^2 * (X^2+X+1)
        let a = UniPoly::from_coeffs(f2.clone(), vec![1, 1]);
        let b = UniPoly::from_coeffs(f2.clone(), vec![1, 1, 1]);
        let f = a.mul(&a).mul(&b);
        let (_, factors) = f.factor(0).unwrap();
        assert!(factors.contains(&(a, 2)));
        assert!(factors.contains(&(b, 1)));
    }
}
