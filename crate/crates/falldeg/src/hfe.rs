//! Multi-HFE laboratory: generate scrambled public keys from small secret
//! systems over GF(q^n), attack them through the descent solver with a
//! theorem-derived degree cap, and sweep parameter grids to tabulate observed
//! degree falls against the proven bounds.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::descent::{theorem_bound, theorem_bound_m1, DescentMap, DescentSystem};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::groebner::{self, SolutionSet};
use crate::poly::{AffineMap, Poly};
use crate::solver::{solve_zero_dim, SolveOpts};

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HfeParams {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    /// Degree cap of the secret polynomials.
    pub d: u32,
    pub seed: u64,
}

/// A generated instance: secret side, scrambling maps, public system, and the
/// planted plaintext for validation.
pub struct HfeInstance {
    pub params: HfeParams,
    pub map: DescentMap,
    pub secret: Vec<Poly>,
    /// Secret affine change of the descended variables.
    pub s_map: AffineMap,
    /// Secret invertible mixing matrix over k' applied to the polynomial list.
    pub t_mat: Vec<Vec<u64>>,
    pub public: DescentSystem,
    /// Point in k'^{mn} solving the public system.
    pub plaintext: Vec<u64>,
}

fn check_params(q: u64, n: usize, m: usize, d: u32) -> Result<()> {
    let ok = matches!(q, 2 | 3 | 4 | 5) && (1..=12).contains(&n) && (1..=2).contains(&m) && (1..=6).contains(&d);
    if !ok {
        return Err(Error::ParameterCapExceeded(format!(
            "hfe caps: q in {{2,3,4,5}}, n <= 12, m <= 2, D <= 6 (got q={}, n={}, m={}, D={})",
            q, n, m, d
        )));
    }
    Ok(())
}

fn field_for(q: u64, n: usize) -> Result<FieldCtx> {
    // q may itself be a prime power (4 = 2^2)
    let (p, a) = match q {
        4 => (2u64, 2usize),
        q => (q, 1),
    };
    if a == 1 {
        FieldCtx::tower(p, &[n])
    } else {
        FieldCtx::tower(p, &[a, n])
    }
}

fn random_invertible(field: &FieldCtx, dim: usize, rng: &mut ChaCha8Rng) -> AffineMap {
    loop {
        let mat: Vec<Vec<u64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..field.order())).collect())
            .collect();
        let trans: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..field.order())).collect();
        if let Ok(a) = AffineMap::new(field.clone(), mat, trans) {
            return a;
        }
    }
}

fn random_invertible_matrix(field: &FieldCtx, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    loop {
        let mat: Vec<Vec<u64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..field.order())).collect())
            .collect();
        if AffineMap::linear(field.clone(), mat.clone()).is_ok() {
            return mat;
        }
    }
}

/// Deterministically generate a scrambled instance with a planted plaintext.
pub fn gen_instance(q: u64, n: usize, m: usize, d: u32, seed: u64) -> Result<HfeInstance> {
    check_params(q, n, m, d)?;
    let params = HfeParams { q, n, m, d, seed };
    let ext = field_for(q, n)?;
    let map = DescentMap::new(&ext, q, m)?;
    let r = map.source_ring().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // random secret system of degree <= D with a planted zero
    let z: Vec<u64> = (0..m).map(|_| rng.gen_range(0..ext.order())).collect();
    let mut secret = Vec::with_capacity(m);
    for _ in 0..m {
        let mut f = r.zero();
        for mono in r.monomials_upto(d, 100_000).unwrap() {
            f = f.add(&r.monomial(mono, rng.gen_range(0..ext.order()))).unwrap();
        }
        // adjust the constant so z is a zero
        let v = f.evaluate_codes(&z);
        f = f.sub(&r.constant(v)).unwrap();
        if f.degree().unwrap_or(0) == 0 {
            // degenerate constant: force a linear term through the zero
            f = r.var(0).sub(&r.constant(z[0])).unwrap();
        }
        secret.push(f);
    }

    let descended = map.descend_classic(&secret, true)?;
    let sub = map.sub().clone();
    let mn = m * n;

    // S scrambles the descended variables, T mixes the polynomial list
    let s_map = random_invertible(&sub, mn, &mut rng);
    let t_mat = random_invertible_matrix(&sub, descended.polys.len(), &mut rng);
    let scrambled: Vec<Poly> = descended
        .polys
        .iter()
        .map(|f| s_map.act(f))
        .collect::<Result<_>>()?;
    let mixed: Vec<Poly> = t_mat
        .iter()
        .map(|row| {
            let mut acc = descended.ring.zero();
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    acc = acc.add(&scrambled[j].scale(c)).unwrap();
                }
            }
            acc
        })
        .collect();
    let public = DescentSystem {
        model: descended.model,
        ring: descended.ring.clone(),
        polys: mixed,
        field_eqs: descended.field_eqs.clone(),
        provenance: descended.provenance.clone(),
    };

    // plaintext: S^{-1} of the descent coordinates of z
    let mut coords = Vec::with_capacity(mn);
    for &zi in &z {
        coords.extend(ext.to_subfield_coords(zi, map.basis(), q)?);
    }
    let plaintext = s_map.inverse().apply_point(&coords);

    // construction-time self-check
    let inst = HfeInstance { params, map, secret, s_map, t_mat, public, plaintext };
    for f in inst.public.polys.iter().chain(&inst.public.field_eqs) {
        debug_assert_eq!(f.evaluate_codes(&inst.plaintext), 0);
        if f.evaluate_codes(&inst.plaintext) != 0 {
            return Err(Error::InvalidParameters(
                "internal: planted plaintext fails the public system".into(),
            ));
        }
    }
    Ok(inst)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AttackRecord {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    pub bound: u64,
    /// Space degree the solver ended at.
    pub solve_degree: u32,
    pub solutions: usize,
    pub wall_ms: u128,
}

/// Solve the public system with degree escalation capped at the theorem
/// bound; exceeding the cap is reported as a falsifying event, never
/// swallowed.
pub fn attack(
    public: &DescentSystem,
    map: &DescentMap,
    bound_hint: Option<u64>,
    seed: u64,
    caps: &Caps,
) -> Result<(SolutionSet, AttackRecord)> {
    if public.field_eqs.is_empty() {
        return Err(Error::NotApplicable("attack requires attached field equations".into()));
    }
    let start = Instant::now();
    let system = public.all_polys();
    let bound = match bound_hint {
        Some(b) => b,
        None => {
            let gb = groebner::buchberger(&system, &public.ring, caps)?;
            let s = gb.quotient_dimension().map_err(|_| {
                Error::NotApplicable("public system is not zero-dimensional".into())
            })? as u64;
            theorem_bound(map.m() as u64, map.q(), s, 0, 0)?
        }
    };
    let opts = SolveOpts {
        escalation_cap: Some(bound as u32),
        seed,
        assume_radical: true,
        ..Default::default()
    };
    match solve_zero_dim(&system, &public.ring, &opts, caps) {
        Ok((sol, trace)) => {
            let record = AttackRecord {
                q: map.q(),
                n: map.n(),
                m: map.m(),
                bound,
                solve_degree: trace.d,
                solutions: sol.len(),
                wall_ms: start.elapsed().as_millis(),
            };
            Ok((sol, record))
        }
        Err(Error::NoUnivariateFound { .. }) => Err(Error::BoundExceeded {
            bound: bound as u32,
            reached: bound as u32,
        }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub q: Vec<u64>,
    pub n: Vec<usize>,
    pub m: Vec<usize>,
    pub d: Vec<u32>,
    pub seeds_per_cell: u64,
    /// Ring sizes (variable counts) up to which the exact oracle is used for
    /// the observed column; larger cells fall back to the solver degree.
    pub oracle_max_vars: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            q: vec![2],
            n: vec![2, 3, 4],
            m: vec![1],
            d: vec![3],
            seeds_per_cell: 3,
            oracle_max_vars: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRow {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    pub d: u32,
    pub seed: u64,
    /// Observed last fall degree (exact oracle) or solver degree, per method.
    pub observed: Option<u64>,
    pub method: String,
    pub bound: u64,
    pub solve_degree: Option<u32>,
    pub wall_ms: u128,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("q,n,m,D,seed,observed,method,bound,solve_degree,wall_ms,error\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                r.q,
                r.n,
                r.m,
                r.d,
                r.seed,
                r.observed.map(|v| v.to_string()).unwrap_or_default(),
                r.method,
                r.bound,
                r.solve_degree.map(|v| v.to_string()).unwrap_or_default(),
                r.wall_ms,
                r.error.clone().unwrap_or_default()
            ));
        }
        out
    }

    /// Every row with an observed value satisfies observed <= bound.
    pub fn bound_satisfied(&self) -> bool {
        self.rows
            .iter()
            .filter_map(|r| r.observed.map(|o| (o, r.bound)))
            .all(|(o, b)| o <= b)
    }
}

fn run_cell(q: u64, n: usize, m: usize, d: u32, seed: u64, caps: &Caps) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        q,
        n,
        m,
        d,
        seed,
        observed: None,
        method: String::new(),
        bound: 0,
        solve_degree: None,
        wall_ms: 0,
        error: None,
    };
    let run = || -> Result<(Option<u64>, String, u64, Option<u32>)> {
        let inst = gen_instance(q, n, m, d, seed)?;
        let bound = if m == 1 {
            theorem_bound_m1(d as u64, q)?
        } else {
            let sys = inst.public.all_polys();
            let gb = groebner::buchberger(&sys, &inst.public.ring, caps)?;
            let s = gb.quotient_dimension()? as u64;
            theorem_bound(m as u64, q, s, 0, 0)?
        };
        let (_, record) = attack(&inst.public, &inst.map, Some(bound), seed, caps)?;
        let sys = inst.public.all_polys();
        if inst.public.ring.nvars() <= 6 {
            let obs = crate::constructible::last_fall_degree(&sys, &inst.public.ring, caps)?;
            Ok((Some(obs as u64), "oracle".into(), bound, Some(record.solve_degree)))
        } else {
            Ok((
                Some(record.solve_degree as u64),
                "solver".into(),
                bound,
                Some(record.solve_degree),
            ))
        }
    };
    match run() {
        Ok((observed, method, bound, solve_degree)) => {
            row.observed = observed;
            row.method = method;
            row.bound = bound;
            row.solve_degree = solve_degree;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row.wall_ms = start.elapsed().as_millis();
    row
}

/// Run every cell of the grid (concurrently when enabled), rows in grid
/// order with per-cell seeds derived from the master seed and cell index.
pub fn sweep(config: &SweepConfig, master_seed: u64, caps: &Caps) -> SweepReport {
    let mut cells = Vec::new();
    for &q in &config.q {
        for &n in &config.n {
            for &m in &config.m {
                for &d in &config.d {
                    for s in 0..config.seeds_per_cell {
                        let idx = cells.len() as u64;
                        cells.push((q, n, m, d, master_seed.wrapping_mul(0x9e37_79b9).wrapping_add(idx).wrapping_add(s)));
                    }
                }
            }
        }
    }
    #[cfg(feature = "parallel")]
    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|&(q, n, m, d, seed)| run_cell(q, n, m, d, seed, caps))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<SweepRow> = cells
        .iter()
        .map(|&(q, n, m, d, seed)| run_cell(q, n, m, d, seed, caps))
        .collect();
    SweepReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_is_deterministic_and_self_consistent() {
        let a = gen_instance(2, 3, 1, 3, 7).unwrap();
        let b = gen_instance(2, 3, 1, 3, 7).unwrap();
        assert_eq!(a.plaintext, b.plaintext);
        assert_eq!(a.secret.len(), b.secret.len());
        for (f, g) in a.secret.iter().zip(&b.secret) {
            assert_eq!(f, g);
        }
        for f in a.public.polys.iter().chain(&a.public.field_eqs) {
            assert_eq!(f.evaluate_codes(&a.plaintext), 0);
        }
        assert!(gen_instance(2, 13, 1, 3, 0).is_err());
        assert!(gen_instance(7, 3, 1, 3, 0).is_err());
    }

    #[test]
    fn attack_recovers_plaintext() {
        let caps = Caps::default();
        let inst = gen_instance(2, 3, 1, 3, 7).unwrap();
        let (sol, record) = attack(&inst.public, &inst.map, None, 7, &caps).unwrap();
        assert!(sol.points.contains(&inst.plaintext));
        assert!(record.solve_degree as u64 <= record.bound);
    }

    #[test]
    fn attack_on_linear_instance() {
        let caps = Caps::default();
        let inst = gen_instance(2, 3, 1, 1, 5).unwrap();
        let (sol, _) = attack(&inst.public, &inst.map, None, 5, &caps).unwrap();
        assert!(sol.points.contains(&inst.plaintext));
    }

    #[test]
    fn small_sweep_respects_bound() {
        let caps = Caps::default();
        let config = SweepConfig {
            n: vec![2, 3],
            seeds_per_cell: 2,
            ..Default::default()
        };
        let report = sweep(&config, 1, &caps);
        assert_eq!(report.rows.len(), 4);
        for row in &report.rows {
            assert!(row.error.is_none(), "cell failed: {:?}", row.error);
        }
        assert!(report.bound_satisfied());
        let csv = report.to_csv();
        assert!(csv.lines().count() == 5);
    }
}
