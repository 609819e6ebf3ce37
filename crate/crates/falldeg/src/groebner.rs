//! Ground-truth ideal computations at desk scale: Buchberger bases, normal
//! forms, zero-dimensionality, brute-force solution enumeration, projection
//! and interpolation polynomials.

use std::collections::BTreeSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::matrix::EchelonMat;
use crate::poly::{mono_deg, Monomial, Poly, RingCtx};
use crate::unipoly::UniPoly;

/// Reduced Gröbner basis for the ring's active order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingCtx,
    polys: Vec<Poly>,
}

fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_sub(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Remainder of multivariate division of `f` by `basis` (deterministic: the
/// first divisor in basis order wins).
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut h = f.clone();
    let mut r = ring.zero();
    while let Some((lm, lc)) = h.leading().map(|(m, c)| (m.clone(), c)) {
        let divisor = basis.iter().find(|b| {
            b.leading_monomial().is_some_and(|bm| mono_divides(bm, &lm))
        });
        match divisor {
            Some(b) => {
                let (bm, bc) = b.leading().unwrap();
                let quot_mono = mono_sub(&lm, bm);
                let quot_coeff = field.div(lc, bc).unwrap();
                let t = ring.monomial(quot_mono, quot_coeff);
                h = h.sub(&b.mul(&t).unwrap()).unwrap();
            }
            None => {
                let t = ring.monomial(lm.clone(), lc);
                r = r.add(&t).unwrap();
                h = h.sub(&t).unwrap();
            }
        }
    }
    r
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = mono_lcm(fm, gm);
    let tf = ring.monomial(mono_sub(&l, fm), field.inv(fc).unwrap());
    let tg = ring.monomial(mono_sub(&l, gm), field.inv(gc).unwrap());
    f.mul(&tf).unwrap().sub(&g.mul(&tg).unwrap()).unwrap()
}

/// Buchberger's algorithm with the sugar pair-selection strategy and the
/// coprimality and chain criteria; the result is the canonical reduced basis.
pub fn buchberger(system: &[Poly], ring: &RingCtx, caps: &Caps) -> Result<GroebnerBasis> {
    let mut basis: Vec<Poly> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    for f in system {
        if f.ring() != ring {
            return Err(Error::MixedRings);
        }
        if !f.is_zero() {
            let g = normal_form(&f.monic(), &basis);
            if !g.is_zero() {
                sugar.push(g.degree().unwrap());
                basis.push(g.monic());
            }
        }
    }

    // pair queue keyed by (sugar, lcm degree) for the sugar strategy
    let mut pairs: BTreeSet<(u32, u32, usize, usize)> = BTreeSet::new();
    let add_pairs = |pairs: &mut BTreeSet<(u32, u32, usize, usize)>,
                         basis: &[Poly],
                         sugar: &[u32],
                         j: usize| {
        let (jm, _) = basis[j].leading().unwrap();
        for i in 0..j {
            let (im, _) = basis[i].leading().unwrap();
            let l = mono_lcm(im, jm);
            let s = (sugar[i] + mono_deg(&mono_sub(&l, im)))
                .max(sugar[j] + mono_deg(&mono_sub(&l, jm)));
            pairs.insert((s, mono_deg(&l), i, j));
        }
    };
    for j in 0..basis.len() {
        add_pairs(&mut pairs, &basis, &sugar, j);
    }

    let mut reductions = 0usize;
    while let Some(&key) = pairs.iter().next() {
        pairs.remove(&key);
        let (s, _, i, j) = key;

        let (im, _) = basis[i].leading().unwrap();
        let (jm, _) = basis[j].leading().unwrap();
        // first criterion: coprime leading terms
        if mono_coprime(im, jm) {
            continue;
        }
        // chain criterion: some other element divides the lcm and both its
        // pairs with i and j are gone
        let l = mono_lcm(im, jm);
        let chained = (0..basis.len()).any(|t| {
            if t == i || t == j {
                return false;
            }
            let (tm, _) = basis[t].leading().unwrap();
            if !mono_divides(tm, &l) {
                return false;
            }
            let pair_done = |a: usize, b: usize| {
                let (x, y) = (a.min(b), a.max(b));
                !pairs.iter().any(|&(_, _, px, py)| px == x && py == y)
            };
            pair_done(i, t) && pair_done(j, t)
        });
        if chained {
            continue;
        }

        reductions += 1;
        if reductions > caps.gb_pairs {
            return Err(Error::OracleInfeasible(format!(
                "S-pair reduction cap {} exceeded",
                caps.gb_pairs
            )));
        }
        let sp = s_poly(&basis[i], &basis[j]);
        let h = normal_form(&sp, &basis);
        if !h.is_zero() {
            sugar.push(s.max(h.degree().unwrap()));
            basis.push(h.monic());
            let j2 = basis.len() - 1;
            add_pairs(&mut pairs, &basis, &sugar, j2);
        }
    }

    // interreduce to the canonical reduced basis
    let mut reduced: Vec<Poly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let gm = g.leading_monomial().unwrap();
        let minimal = !basis.iter().enumerate().any(|(t, other)| {
            t != idx
                && other
                    .leading_monomial()
                    .is_some_and(|om| mono_divides(om, gm) && (om != gm || t < idx))
        });
        if minimal {
            reduced.push(g.clone());
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for idx in 0..reduced.len() {
            let others: Vec<Poly> = reduced
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != idx)
                .map(|(_, p)| p.clone())
                .collect();
            let nf = normal_form(&reduced[idx], &others).monic();
            if nf != reduced[idx] {
                reduced[idx] = nf;
                changed = true;
            }
        }
        reduced.retain(|p| !p.is_zero());
    }
    let ord = ring.order().clone();
    reduced.sort_by(|a, b| {
        ord.cmp(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    Ok(GroebnerBasis { ring: ring.clone(), polys: reduced })
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant() && !self.polys[0].is_zero()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form(f, &self.polys)
    }

    pub fn contains_poly(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// True when every variable has a pure-power leading term (or the ideal
    /// is the unit ideal).
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit_ideal() {
            return true;
        }
        let m = self.ring.nvars();
        (0..m).all(|t| self.pure_power_bound(t).is_some())
    }

    fn pure_power_bound(&self, var: usize) -> Option<u32> {
        self.polys
            .iter()
            .filter_map(|g| {
                let lm = g.leading_monomial()?;
                let pure = lm
                    .iter()
                    .enumerate()
                    .all(|(t, &e)| t == var || e == 0);
                (pure && lm[var] > 0).then_some(lm[var])
            })
            .min()
    }

    /// Standard monomials (those outside the leading-term ideal).
    pub fn staircase(&self) -> Result<Vec<Monomial>> {
        if self.is_unit_ideal() {
            return Ok(Vec::new());
        }
        let m = self.ring.nvars();
        let bounds: Vec<u32> = (0..m)
            .map(|t| {
                self.pure_power_bound(t)
                    .ok_or_else(|| Error::NotApplicable("ideal is not zero-dimensional".into()))
            })
            .collect::<Result<_>>()?;
        let lts: Vec<&Monomial> =
            self.polys.iter().filter_map(|g| g.leading_monomial()).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        loop {
            if !lts.iter().any(|lt| mono_divides(lt, &cur)) {
                out.push(cur.clone());
            }
            // odometer over the box [0, bounds)
            let mut t = 0;
            loop {
                if t == m {
                    let ord = self.ring.order();
                    out.sort_by(|a, b| ord.cmp(a, b));
                    return Ok(out);
                }
                cur[t] += 1;
                if cur[t] < bounds[t] {
                    break;
                }
                cur[t] = 0;
                t += 1;
            }
        }
    }

    /// Dimension of R/I as a k-vector space.
    pub fn quotient_dimension(&self) -> Result<usize> {
        Ok(self.staircase()?.len())
    }

    /// Minimal polynomial of X_var in R/I, monic, over the coefficient field.
    pub fn minimal_polynomial(&self, var: usize) -> Result<UniPoly> {
        let field = self.ring.field().clone();
        if self.is_unit_ideal() {
            return Ok(UniPoly::one(field.clone()));
        }
        let stairs = self.staircase()?;
        let index: std::collections::HashMap<&Monomial, usize> =
            stairs.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = stairs.len();
        let to_vec = |f: &Poly| -> Vec<u64> {
            let mut v = vec![0u64; dim];
            for (m, c) in f.terms() {
                v[*index.get(m).unwrap()] = c;
            }
            v
        };
        let mut mat = EchelonMat::new(field.clone(), dim);
        let mut powers: Vec<Vec<u64>> = Vec::new();
        let mut cur = self.ring.one();
        for j in 0..=dim {
            let nf = self.normal_form(&cur);
            let v = to_vec(&nf);
            powers.push(v.clone());
            if mat.insert(&v).is_none() {
                // X^j depends on lower powers: X^j = sum_t sol[t] X^t, so the
                // minimal polynomial is X^j - sum sol[t] X^t
                let sol = solve_dependency(&field, &powers[..j], &v).unwrap();
                let mut coeffs = vec![0u64; j + 1];
                coeffs[j] = 1;
                for (t, c) in sol.iter().enumerate() {
                    coeffs[t] = field.neg(*c);
                }
                return Ok(UniPoly::from_coeffs(field, coeffs).monic());
            }
            cur = cur.mul(&self.ring.var(var)).unwrap();
        }
        unreachable!("dependence must occur within dim+1 powers");
    }
}

/// Solve sum_t x_t * rows[t] = target over the field; rows need not be
/// independent (first solution in echelon order).
fn solve_dependency(field: &FieldCtx, rows: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let n = rows.len();
    let cols = target.len();
    // augment each row with indicator coordinates to track the combination
    let mut mat = EchelonMat::new(field.clone(), cols + n);
    for (t, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.extend((0..n).map(|j| u64::from(j == t)));
        mat.insert(&v);
    }
    // reduce the target; the residual must be zero on the first `cols`
    // coordinates, and the trailing coordinates hold minus the combination
    let mut v = target.to_vec();
    v.extend(std::iter::repeat(0u64).take(n));
    let red = mat.reduce(&v);
    if red[..cols].iter().any(|&c| c != 0) {
        return None;
    }
    Some(red[cols..].iter().map(|&c| field.neg(c)).collect())
}

/// Zeros of a system over a stated finite field.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub field: FieldCtx,
    /// Sorted, deduplicated coordinate vectors (element codes).
    pub points: Vec<Vec<u64>>,
    /// True when the set is known to exhaust the zeros over the algebraic
    /// closure (all closure points lie in `field`).
    pub exact_closure: bool,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn eval_in(f: &Poly, field: &FieldCtx, point: &[u64]) -> u64 {
    let mut acc = 0u64;
    for (m, c) in f.terms() {
        let mut t = c;
        for (v, &e) in m.iter().enumerate() {
            if e > 0 {
                t = field.mul(t, field.pow(point[v], e as u64));
            }
        }
        acc = field.add(acc, t);
    }
    acc
}

/// Brute-force scan of `over`^m; requires the coefficient field to embed in
/// `over` along the tower prefix.
pub fn enumerate_solutions(
    system: &[Poly],
    ring: &RingCtx,
    over: &FieldCtx,
    caps: &Caps,
) -> Result<SolutionSet> {
    if !ring.field().is_prefix_of(over) {
        return Err(Error::MixedFields);
    }
    let m = ring.nvars() as u32;
    let total = (over.order() as u128).checked_pow(m).ok_or_else(|| {
        Error::CapExceeded("enumeration space overflows".into())
    })?;
    if total > caps.enum_points as u128 {
        return Err(Error::CapExceeded(format!(
            "enumeration over {} points exceeds cap {}",
            total, caps.enum_points
        )));
    }
    let q = over.order();
    let decode = |mut idx: u64| -> Vec<u64> {
        let mut p = Vec::with_capacity(m as usize);
        for _ in 0..m {
            p.push(idx % q);
            idx /= q;
        }
        p
    };
    let scan = |idx: u64| -> Option<Vec<u64>> {
        let p = decode(idx);
        system
            .iter()
            .all(|f| eval_in(f, over, &p) == 0)
            .then_some(p)
    };
    #[cfg(feature = "parallel")]
    let mut points: Vec<Vec<u64>> = (0..total as u64).into_par_iter().filter_map(scan).collect();
    #[cfg(not(feature = "parallel"))]
    let mut points: Vec<Vec<u64>> = (0..total as u64).filter_map(scan).collect();
    points.sort();
    points.dedup();
    Ok(SolutionSet { field: over.clone(), points, exact_closure: false })
}

/// Zeros over the algebraic closure, realized inside an explicit extension
/// large enough to split every coordinate's minimal polynomial.
pub fn closure_solutions(system: &[Poly], ring: &RingCtx, caps: &Caps) -> Result<SolutionSet> {
    let gb = buchberger(system, ring, caps)?;
    if gb.is_unit_ideal() {
        return Ok(SolutionSet { field: ring.field().clone(), points: Vec::new(), exact_closure: true });
    }
    if !gb.is_zero_dimensional() {
        return Err(Error::NotApplicable("ideal is not zero-dimensional".into()));
    }
    // every coordinate of a zero is a root of that variable's minimal
    // polynomial, so an extension splitting all of them contains all zeros
    let mut c: u64 = 1;
    for t in 0..ring.nvars() {
        let mp = gb.minimal_polynomial(t)?;
        for (f, _) in mp.factor(1).unwrap().1 {
            c = lcm(c, f.degree().unwrap() as u64);
        }
    }
    let base = ring.field().clone();
    let big = if c == 1 {
        base
    } else {
        FieldCtx::extension(&base, c as usize, None)?
    };
    let mut set = enumerate_solutions(system, ring, &big, caps)?;
    set.exact_closure = true;
    Ok(set)
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// Monic squarefree polynomial whose roots are the distinct i-th coordinates
/// of `z`, optionally restricted to coordinates lying in a subfield.
pub fn projection_poly(z: &SolutionSet, i: usize, restrict_to: Option<&FieldCtx>) -> Result<UniPoly> {
    let field = &z.field;
    let mut coords: Vec<u64> = z.points.iter().map(|p| p[i]).collect();
    if let Some(sub) = restrict_to {
        if !sub.is_prefix_of(field) {
            return Err(Error::InvalidSubfield(sub.order()));
        }
        let q = sub.order();
        coords.retain(|&x| field.frobenius(x, 1, q).unwrap() == x);
    }
    coords.sort_unstable();
    coords.dedup();
    let mut acc = UniPoly::one(field.clone());
    for x in coords {
        let lin = UniPoly::from_coeffs(field.clone(), vec![field.neg(x), 1]);
        acc = acc.mul(&lin);
    }
    Ok(acc)
}

/// Interpolation polynomial with gamma(x_0) = x_i for every point; requires
/// the first coordinate to separate the points.
pub fn lagrange_gamma(z: &SolutionSet, i: usize) -> Result<UniPoly> {
    let field = &z.field;
    let x0: Vec<u64> = z.points.iter().map(|p| p[0]).collect();
    {
        let mut seen = x0.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != x0.len() {
            return Err(Error::ProjectionNotInjective);
        }
    }
    let mut acc = UniPoly::zero(field.clone());
    for p in &z.points {
        let mut num = UniPoly::constant(field.clone(), p[i]);
        let mut den = 1u64;
        for q in &z.points {
            if q[0] != p[0] {
                let lin = UniPoly::from_coeffs(field.clone(), vec![field.neg(q[0]), 1]);
                num = num.mul(&lin);
                den = field.mul(den, field.sub(p[0], q[0]));
            }
        }
        acc = acc.add(&num.scale(field.inv(den)?));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Radicality {
    Radical,
    NotRadical,
    Unknown,
}

/// Desk-scale radicality test: field equations force radicality; otherwise
/// compare the closure solution count with the quotient dimension.
pub fn is_radical_desk(system: &[Poly], ring: &RingCtx, caps: &Caps) -> Radicality {
    if contains_field_equations(system, ring) {
        return Radicality::Radical;
    }
    let gb = match buchberger(system, ring, caps) {
        Ok(gb) => gb,
        Err(_) => return Radicality::Unknown,
    };
    if gb.is_unit_ideal() {
        return Radicality::Radical;
    }
    let qdim = match gb.quotient_dimension() {
        Ok(d) => d,
        Err(_) => return Radicality::Unknown,
    };
    match closure_solutions(system, ring, caps) {
        Ok(z) => {
            if z.len() == qdim {
                Radicality::Radical
            } else {
                Radicality::NotRadical
            }
        }
        Err(_) => Radicality::Unknown,
    }
}

/// Whether the system contains X_t^e - X_t for every variable t, for some
/// subfield-sized e.
pub fn contains_field_equations(system: &[Poly], ring: &RingCtx) -> bool {
    let m = ring.nvars();
    (0..m).all(|t| {
        system.iter().any(|f| {
            if f.num_terms() != 2 {
                return false;
            }
            let mut hi = None;
            let mut lo = false;
            for (mono, c) in f.terms() {
                let pure = mono.iter().enumerate().all(|(s, &e)| s == t || e == 0);
                if !pure {
                    return false;
                }
                if mono[t] == 1 && c == ring.field().neg(1) {
                    lo = true;
                } else if mono[t] >= 2 && c == 1 {
                    hi = Some(mono[t]);
                }
            }
            lo && hi.is_some()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2(m: usize) -> RingCtx {
        RingCtx::new(FieldCtx::prime(2).unwrap(), m)
    }

    #[test]
    fn reduced_basis_example() {
        let r = ring2(2);
        let caps = Caps::default();
        let f1 = r.monomial(vec![2, 0], 1).add(&r.var(1)).unwrap();
        let f2 = r.monomial(vec![2, 0], 1);
        let gb = buchberger(&[f1, f2], &r, &caps).unwrap();
        let lead: Vec<_> = gb.polys().iter().map(|p| p.to_canonical_string()).collect();
        assert_eq!(lead, vec!["x1", "x0^2"]);
        assert!(gb.is_zero_dimensional());
        assert_eq!(gb.quotient_dimension().unwrap(), 2);
        assert_eq!(gb.staircase().unwrap(), vec![vec![0, 0], vec![1, 0]]);
        assert!(gb.contains_poly(&r.var(1)));
        assert_eq!(gb.normal_form(&r.var(0)), r.var(0));
        assert!(gb.normal_form(&r.zero()).is_zero());
    }

    #[test]
    fn unit_and_single_generator() {
        let r = ring2(1);
        let caps = Caps::default();
        let gb = buchberger(&[r.one(), r.var(0)], &r, &caps).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.quotient_dimension().unwrap(), 0);
        let fe = r.field_equation(0, 2, 1);
        let gb = buchberger(&[fe.clone()], &r, &caps).unwrap();
        assert_eq!(gb.polys(), &[fe]);
    }

    #[test]
    fn canonical_under_generator_shuffle() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let f3 = FieldCtx::prime(3).unwrap();
        let r = RingCtx::new(f3, 2);
        let caps = Caps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..8 {
            let mut sys: Vec<Poly> = (0..3)
                .map(|_| {
                    let mut f = r.zero();
                    for m in r.monomials_upto(2, 1000).unwrap() {
                        f = f.add(&r.monomial(m, rng.gen_range(0..3))).unwrap();
                    }
                    f
                })
                .collect();
            let gb1 = buchberger(&sys, &r, &caps).unwrap();
            sys.shuffle(&mut rng);
            let gb2 = buchberger(&sys, &r, &caps).unwrap();
            assert_eq!(gb1.polys(), gb2.polys());
        }
    }

    #[test]
    fn not_zero_dimensional() {
        let r = ring2(2);
        let gb = buchberger(&[r.monomial(vec![1, 1], 1)], &r, &Caps::default()).unwrap();
        assert!(!gb.is_zero_dimensional());
        assert!(matches!(
            gb.quotient_dimension(),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn enumerate_over_gf5() {
        let f5 = FieldCtx::prime(5).unwrap();
        let r = RingCtx::new(f5.clone(), 2);
        let caps = Caps::default();
        // {x0^2 - 1, x1 - x0} -> {(1,1), (4,4)}
        let f1 = r.monomial(vec![2, 0], 1).sub(&r.one()).unwrap();
        let f2 = r.var(1).sub(&r.var(0)).unwrap();
        let sys = vec![f1, f2];
        let z = enumerate_solutions(&sys, &r, &f5, &caps).unwrap();
        assert_eq!(z.points, vec![vec![1, 1], vec![4, 4]]);
        // projection and interpolation
        let z = SolutionSet { exact_closure: true, ..z };
        let pi = projection_poly(&z, 0, None).unwrap();
        assert_eq!(pi, UniPoly::from_coeffs(f5.clone(), vec![4, 0, 1])); // x^2 + 4
        let g = lagrange_gamma(&z, 1).unwrap();
        assert_eq!(g, UniPoly::from_coeffs(f5.clone(), vec![0, 1])); // x
        // field equation over GF(2): both points
        let r2 = ring2(1);
        let f2ctx = FieldCtx::prime(2).unwrap();
        let z2 = enumerate_solutions(&[r2.field_equation(0, 2, 1)], &r2, &f2ctx, &caps).unwrap();
        assert_eq!(z2.len(), 2);
        // unit ideal: empty
        let zu = enumerate_solutions(&[r2.one()], &r2, &f2ctx, &caps).unwrap();
        assert!(zu.is_empty());
        let piu = projection_poly(&zu, 0, None).unwrap();
        assert_eq!(piu, UniPoly::one(f2ctx.clone()));
    }

    #[test]
    fn gamma_rejects_collisions() {
        let f5 = FieldCtx::prime(5).unwrap();
        let z = SolutionSet {
            field: f5,
            points: vec![vec![1, 1], vec![1, 2]],
            exact_closure: true,
        };
        assert!(matches!(lagrange_gamma(&z, 1), Err(Error::ProjectionNotInjective)));
    }

    #[test]
    fn closure_needs_extension() {
        // x0^2 + x0 + 1 is irreducible over GF(2); zeros live in GF(4)
        let r = ring2(1);
        let caps = Caps::default();
        let f = r
            .monomial(vec![2], 1)
            .add(&r.var(0))
            .unwrap()
            .add(&r.one())
            .unwrap();
        let z = closure_solutions(&[f], &r, &caps).unwrap();
        assert_eq!(z.len(), 2);
        assert!(z.exact_closure);
        assert_eq!(z.field.order(), 4);
    }

    #[test]
    fn radicality() {
        let r = ring2(1);
        let caps = Caps::default();
        let x2 = r.monomial(vec![2], 1);
        assert_eq!(is_radical_desk(&[x2.clone()], &r, &caps), Radicality::NotRadical);
        let x2x = x2.sub(&r.var(0)).unwrap();
        assert_eq!(is_radical_desk(&[x2x], &r, &caps), Radicality::Radical);
        // any system containing the field equations is radical
        let r2 = ring2(2);
        let sys = vec![
            r2.monomial(vec![2, 2], 1),
            r2.field_equation(0, 2, 1),
            r2.field_equation(1, 2, 1),
        ];
        assert!(contains_field_equations(&sys, &r2));
        assert_eq!(is_radical_desk(&sys, &r2, &caps), Radicality::Radical);
    }

    #[test]
    fn minimal_polynomial_matches_projection() {
        let f5 = FieldCtx::prime(5).unwrap();
        let r = RingCtx::new(f5.clone(), 2);
        let caps = Caps::default();
        let f1 = r.monomial(vec![2, 0], 1).sub(&r.one()).unwrap();
        let f2 = r.var(1).sub(&r.var(0)).unwrap();
        let sys = vec![f1, f2];
        let gb = buchberger(&sys, &r, &caps).unwrap();
        let mp = gb.minimal_polynomial(0).unwrap();
        assert_eq!(mp, UniPoly::from_coeffs(f5.clone(), vec![4, 0, 1]));
    }
}
