//! Exact arithmetic in GF(p), GF(p^a) and relative extensions GF(q^n)/GF(q).
//!
//! Fields are represented as towers of extensions in the polynomial basis.
//! An element is identified by its integer *code*: the base-p packing of its
//! coordinate vector over the prime field, low degree first. All arithmetic
//! after construction goes through cached discrete-log tables, which is what
//! keeps the linear-algebra inner loops cheap.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

/// Desk-scale cap on field cardinality: every oracle in this crate enumerates.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct FieldDesc {
    p: u64,
    /// Extension layers bottom-up: (degree, modulus coefficients as codes of
    /// the layer below, low degree first, without the monic leading 1).
    layers: Vec<(usize, Vec<u64>)>,
}

struct FieldRepr {
    desc: FieldDesc,
    sub: Option<FieldCtx>,
    dim: usize,
    order: u64,
    top_degree: usize,
    /// Top modulus coefficients as sub-field codes (length `top_degree`).
    mod_chunks: Vec<u64>,
    generator: u64,
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// Immutable description of a finite field; cheap to clone.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldRepr>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(GF({}^{}))", self.p(), self.dim())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.dim())
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

impl FieldCtx {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::CapExceeded(format!(
                "field order {} exceeds {}",
                p, MAX_FIELD_ORDER
            )));
        }
        let mut repr = FieldRepr {
            desc: FieldDesc { p, layers: vec![] },
            sub: None,
            dim: 1,
            order: p,
            top_degree: 1,
            mod_chunks: vec![],
            generator: 0,
            exp: vec![],
            log: vec![],
        };
        repr.build_tables();
        Ok(FieldCtx(Arc::new(repr)))
    }

    /// Extend `base` by `degree`, using the given monic irreducible modulus or,
    /// when absent, the lexicographically smallest irreducible of that degree
    /// (coefficient codes enumerated low-to-high).
    pub fn extension(base: &FieldCtx, degree: usize, modulus: Option<&UniPoly>) -> Result<FieldCtx> {
        if degree == 0 {
            return Err(Error::InvalidParameters("extension degree must be >= 1".into()));
        }
        if degree == 1 && modulus.is_none() {
            return Ok(base.clone());
        }
        let order = base
            .order()
            .checked_pow(degree as u32)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or_else(|| {
                Error::CapExceeded(format!("field order exceeds {}", MAX_FIELD_ORDER))
            })?;
        let mod_chunks: Vec<u64> = match modulus {
            Some(m) => {
                if m.field() != base {
                    return Err(Error::MixedFields);
                }
                if m.degree() != Some(degree) || m.lead() != 1 {
                    return Err(Error::InvalidParameters(
                        "modulus must be monic of the extension degree".into(),
                    ));
                }
                if !m.is_irreducible() {
                    return Err(Error::ReducibleModulus);
                }
                (0..degree).map(|i| m.coeff(i)).collect()
            }
            None => smallest_irreducible(base, degree)?,
        };
        let mut layers = base.0.desc.layers.clone();
        layers.push((degree, mod_chunks.clone()));
        let mut repr = FieldRepr {
            desc: FieldDesc { p: base.p(), layers },
            sub: Some(base.clone()),
            dim: base.dim() * degree,
            order,
            top_degree: degree,
            mod_chunks,
            generator: 0,
            exp: vec![],
            log: vec![],
        };
        repr.build_tables();
        Ok(FieldCtx(Arc::new(repr)))
    }

    /// Build GF(p^(d0*d1*...)) as a tower with default moduli.
    pub fn tower(p: u64, degrees: &[usize]) -> Result<FieldCtx> {
        let mut ctx = FieldCtx::prime(p)?;
        for &d in degrees {
            ctx = FieldCtx::extension(&ctx, d, None)?;
        }
        Ok(ctx)
    }

    /// Build a tower with explicitly supplied moduli (one per layer, in order).
    pub fn tower_with_moduli(p: u64, degrees: &[usize], moduli: &[UniPoly]) -> Result<FieldCtx> {
        if degrees.len() != moduli.len() {
            return Err(Error::InvalidParameters(
                "one modulus per extension degree is required".into(),
            ));
        }
        let mut ctx = FieldCtx::prime(p)?;
        for (&d, m) in degrees.iter().zip(moduli) {
            ctx = FieldCtx::extension(&ctx, d, Some(m))?;
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.0.desc.p
    }

    /// Degree over the prime field.
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// The field one layer down the tower, if any.
    pub fn subfield(&self) -> Option<&FieldCtx> {
        self.0.sub.as_ref()
    }

    pub fn top_degree(&self) -> usize {
        self.0.top_degree
    }

    /// Extension degrees of the tower layers, bottom first (empty for a
    /// prime field).
    pub fn degrees(&self) -> Vec<usize> {
        self.0.desc.layers.iter().map(|(d, _)| *d).collect()
    }

    /// Top-layer modulus coefficients as sub-field codes, low degree first
    /// (without the leading 1). Empty for a prime field.
    pub fn top_modulus(&self) -> &[u64] {
        &self.0.mod_chunks
    }

    /// True when `self` is a tower prefix of `other` (so codes embed as-is).
    pub fn is_prefix_of(&self, other: &FieldCtx) -> bool {
        self.p() == other.p()
            && other.0.desc.layers.len() >= self.0.desc.layers.len()
            && other.0.desc.layers[..self.0.desc.layers.len()] == self.0.desc.layers[..]
    }

    pub fn generator(&self) -> u64 {
        self.0.generator
    }

    // ---- code-level arithmetic ----

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.p();
        if p == 2 {
            return a ^ b;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.dim() {
            out += ((a % p + b % p) % p) * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.p();
        if p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let mut a = a;
        for _ in 0..self.dim() {
            out += ((p - a % p) % p) * mult;
            a /= p;
            mult *= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let r = &self.0;
        let m = self.order() - 1;
        r.exp[((r.log[a as usize] as u64 + r.log[b as usize] as u64) % m) as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let r = &self.0;
        let m = self.order() - 1;
        Ok(r.exp[((m - r.log[a as usize] as u64) % m) as usize])
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let r = &self.0;
        let m = self.order() - 1;
        let le = (r.log[a as usize] as u128 * (e % m) as u128 % m as u128) as u64;
        r.exp[le as usize]
    }

    /// a^e with an exponent that may not fit in u64, given as (base, exp) for base^exp.
    pub fn pow_pow(&self, a: u64, base: u64, exp: u32) -> u64 {
        if a == 0 {
            return 0;
        }
        let m = self.order() - 1;
        // base^exp mod m
        let mut e = 1u64;
        let mut b = base % m;
        let mut k = exp;
        while k > 0 {
            if k & 1 == 1 {
                e = ((e as u128 * b as u128) % m as u128) as u64;
            }
            b = ((b as u128 * b as u128) % m as u128) as u64;
            k >>= 1;
        }
        self.pow(a, e)
    }

    /// x^(q^j), the Frobenius relative to the subfield of cardinality q.
    pub fn frobenius(&self, a: u64, j: u32, q: u64) -> Result<u64> {
        self.check_subfield_card(q)?;
        Ok(self.pow_pow(a, q, j))
    }

    fn check_subfield_card(&self, q: u64) -> Result<u64> {
        let p = self.p();
        let mut b = 0usize;
        let mut v = q;
        while v > 1 && v % p == 0 {
            v /= p;
            b += 1;
        }
        if v != 1 || b == 0 || self.dim() % b != 0 {
            return Err(Error::InvalidSubfield(q));
        }
        Ok(b as u64)
    }

    /// The tower layer of cardinality q, required for coordinate maps.
    pub fn layer_of_order(&self, q: u64) -> Result<FieldCtx> {
        let mut cur = self.clone();
        loop {
            if cur.order() == q {
                return Ok(cur);
            }
            match cur.subfield() {
                Some(s) => cur = s.clone(),
                None => return Err(Error::InvalidSubfield(q)),
            }
        }
    }

    /// Coordinates of `a` over the order-q tower layer in the polynomial basis
    /// (the flat code regrouped into q-ary chunks).
    pub fn chunks_over(&self, a: u64, q: u64) -> Result<Vec<u64>> {
        let layer = self.layer_of_order(q)?;
        let n = self.dim() / layer.dim();
        let mut out = Vec::with_capacity(n);
        let mut a = a;
        for _ in 0..n {
            out.push(a % q);
            a /= q;
        }
        Ok(out)
    }

    pub fn from_chunks_over(&self, chunks: &[u64], q: u64) -> Result<u64> {
        let layer = self.layer_of_order(q)?;
        let n = self.dim() / layer.dim();
        if chunks.len() != n {
            return Err(Error::InvalidParameters("wrong number of chunks".into()));
        }
        let mut out = 0u64;
        for &c in chunks.iter().rev() {
            debug_assert!(c < q);
            out = out * q + c;
        }
        Ok(out)
    }

    /// Coordinates of `a` over the subfield of cardinality q with respect to an
    /// arbitrary basis of n elements (codes in `self`).
    pub fn to_subfield_coords(&self, a: u64, basis: &[u64], q: u64) -> Result<Vec<u64>> {
        let layer = self.layer_of_order(q)?;
        let n = self.dim() / layer.dim();
        if basis.len() != n {
            return Err(Error::NotABasis);
        }
        // Solve M c = a over GF(q), columns of M being the basis chunk vectors.
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        let target = self.chunks_over(a, q)?;
        for i in 0..n {
            let mut row = Vec::with_capacity(n + 1);
            for b in basis {
                row.push(self.chunks_over(*b, q)?[i]);
            }
            row.push(target[i]);
            rows.push(row);
        }
        gauss_solve(&layer, &mut rows, n).ok_or(Error::NotABasis)
    }

    pub fn from_subfield_coords(&self, coords: &[u64], basis: &[u64], q: u64) -> Result<u64> {
        let layer = self.layer_of_order(q)?;
        let n = self.dim() / layer.dim();
        if basis.len() != n || coords.len() != n {
            return Err(Error::NotABasis);
        }
        let mut acc = 0u64;
        for (c, b) in coords.iter().zip(basis) {
            // subfield codes embed as-is (prefix layers pack low)
            acc = self.add(acc, self.mul(*c, *b));
        }
        Ok(acc)
    }

    /// Rank of the q-chunk vectors of `elems` over GF(q).
    pub fn subfield_rank(&self, elems: &[u64], q: u64) -> Result<usize> {
        let layer = self.layer_of_order(q)?;
        let n = self.dim() / layer.dim();
        let mut rows: Vec<Vec<u64>> = elems
            .iter()
            .map(|&e| self.chunks_over(e, q))
            .collect::<Result<_>>()?;
        Ok(gauss_rank(&layer, &mut rows, n))
    }

    /// Deterministically find theta such that {theta^(q^j)} is a basis of
    /// `self` over the order-q layer.
    pub fn find_normal_basis(&self, q: u64) -> Result<u64> {
        let layer = self.layer_of_order(q)?;
        let n = self.dim() / layer.dim();
        for theta in 1..self.order() {
            let mut pows = Vec::with_capacity(n);
            let mut t = theta;
            for _ in 0..n {
                pows.push(t);
                t = self.pow(t, q);
            }
            if self.subfield_rank(&pows, q)? == n {
                return Ok(theta);
            }
        }
        unreachable!("a normal basis always exists for finite fields")
    }

    pub fn elem(&self, code: u64) -> Elem {
        debug_assert!(code < self.order());
        Elem { ctx: self.clone(), code }
    }

    /// Embed an integer via the prime subfield.
    pub fn elem_from_int(&self, v: i64) -> Elem {
        let p = self.p() as i64;
        let c = ((v % p) + p) % p;
        self.elem(c as u64)
    }

    pub fn coords(&self, a: u64) -> Vec<u64> {
        let p = self.p();
        let mut out = Vec::with_capacity(self.dim());
        let mut a = a;
        for _ in 0..self.dim() {
            out.push(a % p);
            a /= p;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u64]) -> u64 {
        let p = self.p();
        let mut out = 0u64;
        for &c in coords.iter().rev() {
            out = out * p + (c % p);
        }
        out
    }

    pub fn format_elem(&self, a: u64) -> String {
        if self.dim() == 1 {
            format!("{}", a)
        } else {
            let cs: Vec<String> = self.coords(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", cs.join(","))
        }
    }
}

impl FieldRepr {
    /// Chunk-level multiplication used only while bootstrapping the tables.
    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if self.sub.is_none() {
            return a * b % self.desc.p;
        }
        let sub = self.sub.as_ref().unwrap();
        let so = sub.order();
        let d = self.top_degree;
        let to_chunks = |mut v: u64| {
            let mut c = vec![0u64; d];
            for slot in c.iter_mut() {
                *slot = v % so;
                v /= so;
            }
            c
        };
        let ac = to_chunks(a);
        let bc = to_chunks(b);
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in ac.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bc.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                prod[i + j] = sub.add(prod[i + j], sub.mul(x, y));
            }
        }
        for s in (d..2 * d - 1).rev() {
            let lead = prod[s];
            if lead == 0 {
                continue;
            }
            prod[s] = 0;
            for t in 0..d {
                let m = sub.mul(lead, self.mod_chunks[t]);
                prod[s - d + t] = sub.sub(prod[s - d + t], m);
            }
        }
        let mut out = 0u64;
        for &c in prod[..d].iter().rev() {
            out = out * so + c;
        }
        out
    }

    fn pow_slow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, a);
            }
            a = self.mul_slow(a, a);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) {
        let order = self.order;
        let m = order - 1;
        let gen = if m == 1 {
            1
        } else {
            let factors = prime_factors(m);
            let mut g = 0;
            'cand: for cand in 2..order {
                for &f in &factors {
                    if self.pow_slow(cand, m / f) == 1 {
                        continue 'cand;
                    }
                }
                g = cand;
                break;
            }
            assert!(g != 0, "no generator found");
            g
        };
        self.generator = gen;
        let mut exp = vec![0u64; m as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, gen);
        }
        debug_assert_eq!(cur, 1);
        self.exp = exp;
        self.log = log;
    }
}

/// Solve an n x (n+1) augmented system over `field`; None when singular.
fn gauss_solve(field: &FieldCtx, rows: &mut [Vec<u64>], n: usize) -> Option<Vec<u64>> {
    for col in 0..n {
        let piv = (col..n).find(|&r| rows[r][col] != 0)?;
        rows.swap(col, piv);
        let inv = field.inv(rows[col][col]).ok()?;
        for v in rows[col].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for r in 0..n {
            if r != col && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..=n {
                    let t = field.mul(f, rows[col][c]);
                    rows[r][c] = field.sub(rows[r][c], t);
                }
            }
        }
    }
    Some(rows.iter().map(|r| r[n]).collect())
}

fn gauss_rank(field: &FieldCtx, rows: &mut Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv(rows[rank][col]).unwrap();
        for c in 0..ncols {
            rows[rank][c] = field.mul(rows[rank][c], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    let t = field.mul(f, rows[rank][c]);
                    rows[r][c] = field.sub(rows[r][c], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn smallest_irreducible(base: &FieldCtx, degree: usize) -> Result<Vec<u64>> {
    let q = base.order();
    let total = q.checked_pow(degree as u32).ok_or_else(|| {
        Error::CapExceeded("modulus search space too large".into())
    })?;
    for counter in 0..total {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut c = counter;
        for _ in 0..degree {
            coeffs.push(c % q);
            c /= q;
        }
        coeffs.push(1);
        let f = UniPoly::from_coeffs(base.clone(), coeffs);
        if f.is_irreducible() {
            let out = (0..degree).map(|i| f.coeff(i)).collect();
            return Ok(out);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// A field element: a code plus its owning field.
#[derive(Clone, PartialEq, Eq)]
pub struct Elem {
    ctx: FieldCtx,
    code: u64,
}

impl Elem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn code(&self) -> u64 {
        self.code
    }
    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
    pub fn coords(&self) -> Vec<u64> {
        self.ctx.coords(self.code)
    }

    fn same(&self, other: &Elem) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        Ok(self.ctx.elem(self.ctx.add(self.code, other.code)))
    }
    pub fn sub(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        Ok(self.ctx.elem(self.ctx.sub(self.code, other.code)))
    }
    pub fn mul(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        Ok(self.ctx.elem(self.ctx.mul(self.code, other.code)))
    }
    pub fn div(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        Ok(self.ctx.elem(self.ctx.div(self.code, other.code)?))
    }
    pub fn pow(&self, e: u64) -> Elem {
        self.ctx.elem(self.ctx.pow(self.code, e))
    }
    pub fn inv(&self) -> Result<Elem> {
        Ok(self.ctx.elem(self.ctx.inv(self.code)?))
    }
    pub fn frobenius(&self, j: u32, q: u64) -> Result<Elem> {
        Ok(self.ctx.elem(self.ctx.frobenius(self.code, j, q)?))
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.format_elem(self.code))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.format_elem(self.code))
    }
}
