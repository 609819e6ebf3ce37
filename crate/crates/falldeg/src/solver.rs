//! Zero-dimensional solver: build V_d, extract minimal univariate (in the
//! current variable) elements from ladder spans, factor, fix a root and
//! recurse. When no degree bound is supplied the solver escalates d until the
//! extraction succeeds at every level.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::constructible::EchelonSpace;
use crate::error::{Error, Result};
use crate::groebner::{self, SolutionSet};
use crate::matrix::EchelonMat;
use crate::poly::{binomial, AffineMap, Poly, RingCtx};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug)]
pub struct SolveOpts {
    /// Exact space degree d to use; when absent the solver escalates.
    pub dbound: Option<u32>,
    /// Bound e on the number of closure solutions; defaults to the quotient
    /// dimension from the Gröbner oracle.
    pub ebound: Option<u64>,
    /// Highest d the escalation loop may reach (inclusive).
    pub escalation_cap: Option<u32>,
    pub seed: u64,
    /// Skip the radicality pre-check (callers that attach field equations
    /// already know the ideal is radical).
    pub assume_radical: bool,
}

impl Default for SolveOpts {
    fn default() -> Self {
        SolveOpts {
            dbound: None,
            ebound: None,
            escalation_cap: None,
            seed: 0,
            assume_radical: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelRecord {
    pub level: usize,
    /// Root prefix fixed before this level (element codes).
    pub prefix: Vec<u64>,
    pub h_degree: u32,
    pub u_degree: usize,
    pub roots: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveTrace {
    /// Space degree that succeeded.
    pub d: u32,
    pub e: u64,
    /// Degrees tried before success (escalation history).
    pub tried: Vec<u32>,
    pub dim_vd: usize,
    pub levels: Vec<LevelRecord>,
}

/// Minimal element of V ∩ span(ladder): reduce ladder elements in order
/// against the space; the first linear dependence among the residuals yields
/// the unique combination with minimal top index (ladders are sorted by
/// degree, so this is the minimal-degree element). Returns the element and
/// its ladder coefficients, monic in the top ladder entry.
pub fn minimal_in_span(space: &EchelonSpace, ladder: &[Poly]) -> Result<Option<(Poly, Vec<u64>)>> {
    let field = space.ring().field().clone();
    let ncols = space.monomials().len();
    let k = ladder.len();
    // track combinations through indicator columns appended to the residuals
    let mut aux = EchelonMat::new(field.clone(), ncols + k);
    for (j, lad) in ladder.iter().enumerate() {
        let res = space.reduce_poly(lad)?;
        if res.is_zero() {
            // ladder element itself lies in the space
            let mut combo = vec![0u64; k];
            combo[j] = 1;
            return Ok(Some((lad.clone(), combo)));
        }
        let mut v = vec![0u64; ncols + k];
        for (mono, c) in res.terms() {
            let col = space
                .monomials()
                .iter()
                .position(|m| m == mono)
                .expect("residual stays within the monomial basis");
            v[col] = c;
        }
        v[ncols + j] = 1;
        let red = aux.reduce(&v);
        if red[..ncols].iter().all(|&c| c == 0) {
            // residual j depends on the earlier ones: indicator tail holds
            // the (negated) combination, with coefficient 1 on index j
            let mut combo: Vec<u64> = red[ncols..].to_vec();
            let inv = field.inv(combo[j]).unwrap();
            for c in combo.iter_mut() {
                *c = field.mul(*c, inv);
            }
            let mut g = space.ring().zero();
            for (t, &c) in combo.iter().enumerate() {
                if c != 0 {
                    g = g.add(&ladder[t].scale(c)).unwrap();
                }
            }
            return Ok(Some((g, combo)));
        }
        aux.insert_reduced(red);
    }
    Ok(None)
}

fn unipoly_to_poly(u: &UniPoly, ring: &RingCtx, var: usize) -> Poly {
    let mut out = ring.zero();
    for (e, &c) in u.coeffs().iter().enumerate() {
        if c != 0 {
            let mut m = vec![0u32; ring.nvars()];
            m[var] = e as u32;
            out = out.add(&ring.monomial(m, c)).unwrap();
        }
    }
    out
}

struct SolveCtx<'a> {
    ring: &'a RingCtx,
    system: &'a [Poly],
    space: EchelonSpace,
    d: u32,
    e: u64,
    seed: u64,
}

impl SolveCtx<'_> {
    /// Depth-first over recursion levels; `prefix` holds the fixed roots and
    /// `p` the running product of deflated univariate factors.
    fn descend(
        &self,
        level: usize,
        prefix: &mut Vec<u64>,
        p: &Poly,
        out: &mut Vec<Vec<u64>>,
        levels: &mut Vec<LevelRecord>,
    ) -> Result<()> {
        let m = self.ring.nvars();
        if level == m {
            let point = prefix.clone();
            if self.system.iter().all(|f| f.evaluate_codes(&point) == 0) {
                out.push(point);
            }
            return Ok(());
        }
        let field = self.ring.field().clone();
        let pdeg = p.degree().unwrap_or(0) as u64;
        let top = self.e.saturating_sub(pdeg);
        let ladder: Vec<Poly> = (0..=top)
            .map(|j| {
                let mut mono = vec![0u32; m];
                mono[level] = j as u32;
                p.mul(&self.ring.monomial(mono, 1)).unwrap()
            })
            .filter(|f| f.degree().unwrap_or(0) <= self.d)
            .collect();
        let found = minimal_in_span(&self.space, &ladder)?;
        let (h, combo) = match found {
            Some(hc) => hc,
            None => {
                return Err(Error::NoUnivariateFound { level, dim: self.space.dim() })
            }
        };
        // the ladder coefficients are exactly the univariate cofactor u with
        // h = u(X_level) * p
        let u = UniPoly::from_coeffs(field.clone(), combo);
        let record = LevelRecord {
            level,
            prefix: prefix.clone(),
            h_degree: h.degree().unwrap_or(0),
            u_degree: u.degree().unwrap_or(0),
            roots: Vec::new(),
        };
        if u.degree() == Some(0) {
            // p itself lies in V_d, hence in the ideal: no zero extends this
            // prefix (p is nonvanishing on it by construction)
            levels.push(record);
            return Ok(());
        }
        let mut roots = u.roots(self.seed ^ (level as u64) << 32)?;
        roots.sort_unstable();
        let mut rec = record;
        rec.roots = roots.clone();
        levels.push(rec);
        for a in roots {
            let lin = UniPoly::from_coeffs(field.clone(), vec![field.neg(a), 1]);
            let (quot, rem) = u.divrem(&lin)?;
            debug_assert!(rem.is_zero());
            let p_next = p.mul(&unipoly_to_poly(&quot, self.ring, level)).unwrap();
            prefix.push(a);
            self.descend(level + 1, prefix, &p_next, out, levels)?;
            prefix.pop();
        }
        Ok(())
    }
}

/// All k-rational zeros of a radical zero-dimensional system, found through
/// minimal elements of ladder spans inside V_d.
pub fn solve_zero_dim(
    system: &[Poly],
    ring: &RingCtx,
    opts: &SolveOpts,
    caps: &Caps,
) -> Result<(SolutionSet, SolveTrace)> {
    if !opts.assume_radical && !groebner::contains_field_equations(system, ring) {
        match groebner::is_radical_desk(system, ring, caps) {
            groebner::Radicality::NotRadical => return Err(Error::NotRadical),
            _ => {}
        }
    }
    let e = match opts.ebound {
        Some(e) => e,
        None => {
            let gb = groebner::buchberger(system, ring, caps)?;
            gb.quotient_dimension().map_err(|_| {
                Error::NotApplicable("ideal is not zero-dimensional".into())
            })? as u64
        }
    };
    let deg_f = system.iter().filter_map(|f| f.degree()).max().unwrap_or(0);
    let (start, cap) = match opts.dbound {
        Some(d) => {
            let d = d.max(e as u32);
            (d, d)
        }
        None => {
            let start = deg_f.max(e as u32).max(1);
            (start, opts.escalation_cap.unwrap_or(start + 16))
        }
    };
    let mut tried = Vec::new();
    let mut last_err = None;
    let mut d = start;
    while d <= cap {
        tried.push(d);
        let space = EchelonSpace::build(system, ring, d, caps)?;
        let ctx = SolveCtx { ring, system, space, d, e, seed: opts.seed };
        let mut points = Vec::new();
        let mut levels = Vec::new();
        match ctx.descend(0, &mut Vec::new(), &ring.one(), &mut points, &mut levels) {
            Ok(()) => {
                points.sort();
                points.dedup();
                let trace = SolveTrace {
                    d,
                    e,
                    tried,
                    dim_vd: ctx.space.dim(),
                    levels,
                };
                let set = SolutionSet {
                    field: ring.field().clone(),
                    points,
                    exact_closure: false,
                };
                return Ok((set, trace));
            }
            Err(e @ Error::NoUnivariateFound { .. }) => {
                last_err = Some(e);
                d += 1;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(Error::NoUnivariateFound { level: 0, dim: 0 }))
}

/// Delegates to the univariate factoring engine (kept here as the solver's
/// public factoring entry point).
pub fn factor_univariate(h: &UniPoly, seed: u64) -> Result<(u64, Vec<(UniPoly, usize)>)> {
    h.factor(seed)
}

/// Sample an invertible linear map until the first coordinates of the mapped
/// solution points are pairwise distinct.
pub fn randomize_projection(z: &SolutionSet, seed: u64) -> Result<AffineMap> {
    let field = z.field.clone();
    let r = z.len() as u64;
    let pairs = binomial(r, 2).unwrap_or(u128::MAX);
    if (field.order() as u128) <= pairs {
        return Err(Error::FieldTooSmall(pairs.min(u64::MAX as u128) as u64));
    }
    let dim = z.points.first().map(|p| p.len()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let mat: Vec<Vec<u64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..field.order())).collect())
            .collect();
        let a = match AffineMap::linear(field.clone(), mat) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let mut firsts: Vec<u64> = z.points.iter().map(|p| a.apply_point(p)[0]).collect();
        firsts.sort_unstable();
        firsts.dedup();
        if firsts.len() == z.points.len() {
            return Ok(a);
        }
    }
    Err(Error::TrialCapExceeded)
}
