//! Constructible spaces V_{F,i}, degree-fall detection and the last fall
//! degree.
//!
//! V_{F,i} is the smallest k-vector space containing every generator of
//! degree <= i and closed under multiplication that stays within degree i.
//! A *fall* at degree c means V_c contains polynomials of degree <= c-1 that
//! V_{c-1} does not; the last fall degree is the largest such c.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::matrix::EchelonMat;
use crate::poly::{mono_deg, Monomial, Poly, RingCtx};

/// How a row entered the space during construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowSource {
    /// Seed generator (index into the input system).
    Seed(usize),
    /// Product of variable `var` with the previously inserted row whose pivot
    /// column is `src_pivot`.
    Product { var: usize, src_pivot: usize },
}

#[derive(Clone, Debug)]
pub struct GenLogEntry {
    pub round: usize,
    pub source: RowSource,
    pub pivot: usize,
}

/// Row space of V_{F,i} in echelon form over the degree-descending monomial
/// basis of R_{<=i}.
pub struct EchelonSpace {
    ring: RingCtx,
    degree: u32,
    monomials: Vec<Monomial>,
    col_of: HashMap<Monomial, usize>,
    mat: EchelonMat,
    log: Vec<GenLogEntry>,
}

impl EchelonSpace {
    /// Fixed-point construction: seed with the generators of degree <= i and
    /// close under single-variable multiplication within degree i, one
    /// frontier round at a time.
    pub fn build(system: &[Poly], ring: &RingCtx, i: u32, caps: &Caps) -> Result<EchelonSpace> {
        let monomials = ring.monomials_upto(i, caps.matrix_cols)?;
        let col_of: HashMap<Monomial, usize> =
            monomials.iter().enumerate().map(|(c, m)| (m.clone(), c)).collect();
        // shift maps: column -> column of the monomial multiplied by X_t,
        // or None when the product leaves degree i
        let shift: Vec<Vec<Option<usize>>> = (0..ring.nvars())
            .map(|t| {
                monomials
                    .iter()
                    .map(|m| {
                        let mut m2 = m.clone();
                        m2[t] += 1;
                        col_of.get(&m2).copied()
                    })
                    .collect()
            })
            .collect();

        let mut space = EchelonSpace {
            ring: ring.clone(),
            degree: i,
            monomials,
            col_of,
            mat: EchelonMat::new(ring.field().clone(), 0),
            log: Vec::new(),
        };
        space.mat = EchelonMat::new(ring.field().clone(), space.monomials.len());

        // seed rows; frontier carries (stored row, its degree)
        let mut frontier: Vec<(Vec<u64>, u32)> = Vec::new();
        for (idx, f) in system.iter().enumerate() {
            if f.ring() != ring {
                return Err(Error::MixedRings);
            }
            if f.is_zero() || f.degree().unwrap() > i {
                continue;
            }
            let v = space.poly_to_vec(f)?;
            let red = space.mat.reduce(&v);
            if let Some(pivot) = space.mat.insert_reduced(red.clone()) {
                let deg = mono_deg(&space.monomials[pivot]);
                space.log.push(GenLogEntry { round: 0, source: RowSource::Seed(idx), pivot });
                frontier.push((red, deg));
            }
        }

        let mut round = 1usize;
        while !frontier.is_empty() {
            // candidate products of frontier rows with each variable
            let mut cands: Vec<(Vec<u64>, RowSource)> = Vec::new();
            for (row, deg) in &frontier {
                if *deg >= i {
                    continue;
                }
                let src_pivot = row.iter().position(|&c| c != 0).unwrap();
                for t in 0..ring.nvars() {
                    let mut prod = vec![0u64; space.monomials.len()];
                    for (col, &c) in row.iter().enumerate() {
                        if c != 0 {
                            // product stays within degree i because deg < i
                            prod[shift[t][col].unwrap()] = c;
                        }
                    }
                    cands.push((prod, RowSource::Product { var: t, src_pivot }));
                }
            }
            frontier.clear();
            // batch-reduce against the current rows (parallel), then insert
            // sequentially with a final touch-up reduction
            let vecs: Vec<Vec<u64>> = cands.iter().map(|(v, _)| v.clone()).collect();
            let reduced = space.mat.reduce_batch(&vecs);
            for (red, (_, source)) in reduced.into_iter().zip(cands) {
                let red = space.mat.reduce(&red);
                if let Some(pivot) = space.mat.insert_reduced(red.clone()) {
                    let deg = mono_deg(&space.monomials[pivot]);
                    space.log.push(GenLogEntry { round, source, pivot });
                    frontier.push((red, deg));
                }
            }
            round += 1;
        }
        Ok(space)
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
    pub fn generation_log(&self) -> &[GenLogEntry] {
        &self.log
    }

    fn poly_to_vec(&self, f: &Poly) -> Result<Vec<u64>> {
        let mut v = vec![0u64; self.monomials.len()];
        for (m, c) in f.terms() {
            let col = self.col_of.get(m).ok_or(Error::DegreeTooLarge)?;
            v[*col] = c;
        }
        Ok(v)
    }

    fn vec_to_poly(&self, v: &[u64]) -> Poly {
        let mut f = self.ring.zero();
        for (col, &c) in v.iter().enumerate() {
            if c != 0 {
                f = f.add(&self.ring.monomial(self.monomials[col].clone(), c)).unwrap();
            }
        }
        f
    }

    /// Membership test; errors when deg(g) exceeds the space degree.
    pub fn contains(&self, g: &Poly) -> Result<bool> {
        if g.ring() != &self.ring {
            return Err(Error::MixedRings);
        }
        if g.degree().unwrap_or(0) > self.degree && !g.is_zero() {
            return Err(Error::DegreeTooLarge);
        }
        Ok(self.mat.contains(&self.poly_to_vec(g)?))
    }

    /// dim(V_i ∩ R_{<=d}): with degree-descending columns, the elements of
    /// degree <= d are exactly the rows whose pivot monomial has degree <= d.
    pub fn restricted_dim(&self, d: u32) -> usize {
        self.mat
            .pivots()
            .filter(|&p| mono_deg(&self.monomials[p]) <= d)
            .count()
    }

    /// Basis rows as polynomials, echelon order.
    pub fn basis(&self) -> Vec<Poly> {
        (0..self.mat.nrows()).map(|r| self.vec_to_poly(&self.mat.row(r))).collect()
    }

    /// Residual of `g` after reduction against the row space.
    pub fn reduce_poly(&self, g: &Poly) -> Result<Poly> {
        if g.degree().unwrap_or(0) > self.degree && !g.is_zero() {
            return Err(Error::DegreeTooLarge);
        }
        Ok(self.vec_to_poly(&self.mat.reduce(&self.poly_to_vec(g)?)))
    }

}

/// Per-degree entry of a [`FallReport`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FallEntry {
    pub degree: u32,
    pub dim: usize,
    pub fell: bool,
}

/// Degrees at which the spaces V_c gain low-degree elements.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FallReport {
    /// Degrees c >= 1 with dim(V_c ∩ R_{<=c-1}) > dim(V_{c-1}).
    pub falls: Vec<u32>,
    pub dims: Vec<FallEntry>,
    pub first_fall: Option<u32>,
    pub last_fall: Option<u32>,
}

/// Compare dim(V_c ∩ R_{<=c-1}) against dim(V_{c-1}) for every c up to the
/// horizon. Degree 0 is excluded from the fall list (V_{-1} is taken to be
/// the zero space).
pub fn fall_report(system: &[Poly], ring: &RingCtx, horizon: u32, caps: &Caps) -> Result<FallReport> {
    let mut dims = Vec::new();
    let mut falls = Vec::new();
    let mut prev_dim = 0usize;
    for c in 0..=horizon {
        let space = EchelonSpace::build(system, ring, c, caps)?;
        let fell = c >= 1 && space.restricted_dim(c - 1) > prev_dim;
        if fell {
            falls.push(c);
        }
        dims.push(FallEntry { degree: c, dim: space.dim(), fell });
        prev_dim = space.dim();
    }
    Ok(FallReport {
        first_fall: falls.first().copied(),
        last_fall: falls.last().copied(),
        falls,
        dims,
    })
}

/// The last fall degree d_F, computed through the Gröbner-basis oracle: find
/// the minimal c with the reduced basis inside V_c; the largest fall <= c is
/// then exact.
pub fn last_fall_degree(system: &[Poly], ring: &RingCtx, caps: &Caps) -> Result<u32> {
    let oracle_ring = if ring.order().refines_degree() {
        ring.clone()
    } else {
        ring.reorder(crate::poly::MonomialOrder::grevlex())
    };
    let gb = crate::groebner::buchberger(system, &oracle_ring, caps)?;
    let basis = gb.polys();
    if basis.is_empty() {
        // zero ideal: every V_i is the zero space
        return Ok(0);
    }
    let start = basis.iter().filter_map(|b| b.degree()).max().unwrap_or(0);
    let mut c = start;
    loop {
        let space = EchelonSpace::build(system, &oracle_ring, c, caps)?;
        if basis.iter().all(|b| space.contains(b).unwrap()) {
            break;
        }
        c += 1;
        if c > start + 4 * (start + ring.nvars() as u32 + 4) {
            return Err(Error::OracleInfeasible(format!(
                "basis not captured by degree {}",
                c
            )));
        }
    }
    let report = fall_report(system, &oracle_ring, c, caps)?;
    Ok(report.last_fall.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn gf2_ring(m: usize) -> RingCtx {
        RingCtx::new(FieldCtx::prime(2).unwrap(), m)
    }

    #[test]
    fn closure_of_single_variable() {
        let r = gf2_ring(1);
        let caps = Caps::default();
        let v = EchelonSpace::build(&[r.var(0)], &r, 2, &caps).unwrap();
        assert_eq!(v.dim(), 2);
        assert!(v.contains(&r.var(0)).unwrap());
        assert!(v.contains(&r.monomial(vec![2], 1)).unwrap());
        assert!(!v.contains(&r.one()).unwrap());
        assert!(matches!(
            v.contains(&r.monomial(vec![3], 1)),
            Err(Error::DegreeTooLarge)
        ));
    }

    #[test]
    fn empty_system_gives_zero_space() {
        let r = gf2_ring(2);
        let v = EchelonSpace::build(&[], &r, 3, &Caps::default()).unwrap();
        assert_eq!(v.dim(), 0);
        assert!(v.contains(&r.zero()).unwrap());
    }

    #[test]
    fn degree_fall_example() {
        // {x0^2 + x1, x0^2}: the difference x1 appears in V_2 at degree 1
        let r = gf2_ring(2);
        let f1 = r.monomial(vec![2, 0], 1).add(&r.var(1)).unwrap();
        let f2 = r.monomial(vec![2, 0], 1);
        let sys = vec![f1, f2];
        let caps = Caps::default();
        let v2 = EchelonSpace::build(&sys, &r, 2, &caps).unwrap();
        assert!(v2.contains(&r.var(1)).unwrap());
        assert!(v2.restricted_dim(1) >= 1);
        let report = fall_report(&sys, &r, 4, &caps).unwrap();
        assert_eq!(report.falls, vec![2]);
        assert_eq!(report.first_fall, Some(2));
        assert_eq!(report.last_fall, Some(2));
        // entries strictly increasing and >= 1 by construction
        assert!(report.falls.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn brute_force_closure_oracle() {
        // independent fixpoint computation without the frontier shortcut
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f3 = FieldCtx::prime(3).unwrap();
        let r = RingCtx::new(f3.clone(), 2);
        let caps = Caps::default();
        for _ in 0..10 {
            let sys: Vec<Poly> = (0..2)
                .map(|_| {
                    let mut f = r.zero();
                    for m in r.monomials_upto(2, 1000).unwrap() {
                        f = f.add(&r.monomial(m, rng.gen_range(0..3))).unwrap();
                    }
                    f
                })
                .collect();
            let i = 3u32;
            let fast = EchelonSpace::build(&sys, &r, i, &caps).unwrap();

            // naive: multiply *every* row by every variable until stable
            let monos = r.monomials_upto(i, 1000).unwrap();
            let mut mat = EchelonMat::new(f3.clone(), monos.len());
            let to_vec = |f: &Poly| -> Vec<u64> {
                let mut v = vec![0u64; monos.len()];
                for (m, c) in f.terms() {
                    let col = monos.iter().position(|x| x == m).unwrap();
                    v[col] = c;
                }
                v
            };
            let from_vec = |v: &[u64]| {
                let mut f = r.zero();
                for (col, &c) in v.iter().enumerate() {
                    if c != 0 {
                        f = f.add(&r.monomial(monos[col].clone(), c)).unwrap();
                    }
                }
                f
            };
            for f in sys.iter().filter(|f| !f.is_zero() && f.degree().unwrap() <= i) {
                mat.insert(&to_vec(f));
            }
            // multiply every current basis row by every variable, full pass,
            // until the dimension stops growing
            loop {
                let before = mat.dim();
                let rows: Vec<Poly> = (0..mat.dim()).map(|j| from_vec(&mat.row(j))).collect();
                for g in &rows {
                    for t in 0..2 {
                        let prod = g.mul(&r.var(t)).unwrap();
                        if !prod.is_zero() && prod.degree().unwrap() <= i {
                            mat.insert(&to_vec(&prod));
                        }
                    }
                }
                if mat.dim() == before {
                    break;
                }
            }
            assert_eq!(fast.dim(), mat.dim(), "system {:?}", sys);
            for row in 0..mat.dim() {
                let v = mat.row(row);
                let mut f = r.zero();
                for (col, &c) in v.iter().enumerate() {
                    if c != 0 {
                        f = f.add(&r.monomial(monos[col].clone(), c)).unwrap();
                    }
                }
                assert!(fast.contains(&f).unwrap());
            }
        }
    }

    #[test]
    fn monotone_and_subset_properties() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let r = gf2_ring(2);
        let caps = Caps::default();
        for _ in 0..10 {
            let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut f = r.zero();
                for m in r.monomials_upto(2, 1000).unwrap() {
                    f = f.add(&r.monomial(m, rng.gen_range(0..2))).unwrap();
                }
                f
            };
            let f1 = rand_poly(&mut rng);
            let f2 = rand_poly(&mut rng);
            let small = vec![f1.clone()];
            let big = vec![f1.clone(), f2.clone()];
            for i in 1..=3u32 {
                let vs = EchelonSpace::build(&small, &r, i, &caps).unwrap();
                let vb = EchelonSpace::build(&big, &r, i, &caps).unwrap();
                // subset: every basis row of the smaller system's space lies
                // in the bigger system's space
                for b in vs.basis() {
                    assert!(vb.contains(&b).unwrap());
                }
                // monotone in i
                let vnext = EchelonSpace::build(&big, &r, i + 1, &caps).unwrap();
                for b in vb.basis() {
                    assert!(vnext.contains(&b).unwrap());
                }
            }
        }
    }

    #[test]
    fn affine_equivariance() {
        use crate::poly::AffineMap;
        use rand::{Rng, SeedableRng};
        let f3 = FieldCtx::prime(3).unwrap();
        let r = RingCtx::new(f3.clone(), 2);
        let caps = Caps::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let sys: Vec<Poly> = (0..2)
                .map(|_| {
                    let mut f = r.zero();
                    for m in r.monomials_upto(2, 1000).unwrap() {
                        f = f.add(&r.monomial(m, rng.gen_range(0..3))).unwrap();
                    }
                    f
                })
                .collect();
            let a = loop {
                let mat: Vec<Vec<u64>> = (0..2)
                    .map(|_| (0..2).map(|_| rng.gen_range(0..3)).collect())
                    .collect();
                let trans: Vec<u64> = (0..2).map(|_| rng.gen_range(0..3)).collect();
                if let Ok(m) = AffineMap::new(f3.clone(), mat, trans) {
                    break m;
                }
            };
            let moved: Vec<Poly> = sys.iter().map(|f| a.act(f).unwrap()).collect();
            let i = 3u32;
            let v = EchelonSpace::build(&sys, &r, i, &caps).unwrap();
            let vm = EchelonSpace::build(&moved, &r, i, &caps).unwrap();
            assert_eq!(v.dim(), vm.dim());
            for b in v.basis() {
                assert!(vm.contains(&a.act(&b).unwrap()).unwrap());
            }
        }
    }
}
