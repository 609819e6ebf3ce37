//! Seeded property suites behind the `verify` command: each suite replays a
//! batch of random instances against one of the proved inequalities and
//! reports pass/fail with counterexample dumps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::constructible::{last_fall_degree, EchelonSpace};
use crate::descent::{
    bar_degree_bound, descent_gcd_certificate, relate_models, tau, theorem_bound,
    theorem_bound_m1, DescentMap,
};
use crate::error::Result;
use crate::field::FieldCtx;
use crate::gen::{random_poly, random_poly_exact, random_unipoly};
use crate::poly::{AffineMap, Poly};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub params: Value,
    pub trials: usize,
    pub failures: usize,
    pub passed: bool,
    pub rows: Vec<Value>,
    pub counterexamples: Vec<String>,
}

impl VerifyReport {
    fn new(target: &str, params: Value) -> Self {
        VerifyReport {
            target: target.into(),
            params,
            trials: 0,
            failures: 0,
            passed: true,
            rows: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        self.passed = false;
        self.counterexamples.push(msg);
    }
}

fn cell_rng(seed: u64, idx: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx.wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

fn field_with_subfield(q: u64, n: usize) -> Result<FieldCtx> {
    let (p, a) = match q {
        4 => (2u64, 2usize),
        8 => (2, 3),
        9 => (3, 2),
        q => (q, 1),
    };
    if a == 1 {
        FieldCtx::tower(p, &[n])
    } else {
        FieldCtx::tower(p, &[a, n])
    }
}

fn random_linear_map(field: &FieldCtx, dim: usize, rng: &mut ChaCha8Rng) -> AffineMap {
    loop {
        let mat: Vec<Vec<u64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..field.order())).collect())
            .collect();
        if let Ok(a) = AffineMap::linear(field.clone(), mat) {
            return a;
        }
    }
}

fn system_degree(system: &[Poly]) -> u64 {
    system
        .iter()
        .filter_map(|f| f.degree())
        .max()
        .unwrap_or(0) as u64
}

/// Bound for one-variable systems over GF(q^n): the exact last fall degree of
/// the descended-plus-field-equation system never exceeds max(tau(2d,q,1), q),
/// and the observed value does not depend on n.
pub fn verify_univariate_bound(
    q: u64,
    d_list: &[u32],
    n_list: &[usize],
    trials: usize,
    seed: u64,
    caps: &Caps,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "univariate-bound",
        json!({"q": q, "d": d_list, "n": n_list, "trials": trials, "seed": seed}),
    );
    // cell maxima, keyed (d, n), for the n-independence check
    let mut cell_max: Vec<((u32, usize), u32)> = Vec::new();
    let mut idx = 0u64;
    for &d in d_list {
        let bound = theorem_bound_m1(d as u64, q)?;
        let weight_cap = tau(2 * d as u64, q, 1)?;
        for &n in n_list {
            let ext = field_with_subfield(q, n)?;
            let map = DescentMap::new(&ext, q, 1)?;
            let ring = map.source_ring().clone();
            let mut seen_max = 0u32;
            for _ in 0..trials {
                idx += 1;
                let mut rng = cell_rng(seed, idx);
                // degree-d generator obeying the low-weight hypothesis
                let f = loop {
                    let f = random_poly_exact(&ring, d, &mut rng);
                    let bar = map.descend_bar_poly(&f)?;
                    if bar.degree().unwrap_or(0) as u64 <= weight_cap {
                        break f;
                    }
                };
                let descended = map.descend_classic(std::slice::from_ref(&f), true)?;
                let observed =
                    last_fall_degree(&descended.all_polys(), &descended.ring, caps)?;
                report.trials += 1;
                seen_max = seen_max.max(observed);
                if observed as u64 > bound {
                    report.fail(format!(
                        "q={} n={} d={}: observed {} > bound {} for f = {}",
                        q, n, d, observed, bound, f
                    ));
                }
                report.rows.push(json!({
                    "d": d, "n": n, "observed": observed, "bound": bound,
                }));
            }
            cell_max.push(((d, n), seen_max));
        }
    }
    for &d in d_list {
        let maxima: Vec<u32> = cell_max
            .iter()
            .filter(|((cd, _), _)| *cd == d)
            .map(|&(_, v)| v)
            .collect();
        let constant = maxima.windows(2).all(|w| w[0] == w[1]);
        report.rows.push(json!({
            "summary": "observed-max-by-n", "d": d, "maxima": maxima, "constant": constant,
        }));
        if !constant {
            report.fail(format!(
                "q={} d={}: observed maxima vary with n: {:?}",
                q, d, maxima
            ));
        }
    }
    Ok(report)
}

/// Main bound for radical zero-dimensional systems with injective first
/// projection: descended last fall degree stays below the tau-based bound.
pub fn verify_descent_bound(
    q_list: &[u64],
    n_list: &[usize],
    m_list: &[usize],
    trials: usize,
    seed: u64,
    caps: &Caps,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "descent-bound",
        json!({"q": q_list, "n": n_list, "m": m_list, "trials": trials, "seed": seed}),
    );
    let mut idx = 0u64;
    for &q in q_list {
        for &n in n_list {
            let ext = field_with_subfield(q, n)?;
            for &m in m_list {
                let map = DescentMap::new(&ext, q, m)?;
                let ring = map.source_ring().clone();
                for _ in 0..trials {
                    idx += 1;
                    let mut rng = cell_rng(seed, idx);
                    // resample until the ideal is radical (every variable's
                    // minimal polynomial squarefree), zero-dimensional, and
                    // the first-coordinate projection of the closure zeros is
                    // injective (minimal polynomial of X0 of full degree s);
                    // a random linear change of variables stands in for a
                    // projection randomizer when injectivity fails
                    let (system, s) = 'search: loop {
                        let mut sys: Vec<Poly> = (0..m)
                            .map(|_| crate::gen::random_poly(&ring, 3, &mut rng))
                            .collect();
                        for _ in 0..20 {
                            let gb = crate::groebner::buchberger(&sys, &ring, caps)?;
                            if gb.is_unit_ideal() || !gb.is_zero_dimensional() {
                                break;
                            }
                            let s = gb.quotient_dimension()? as u64;
                            let squarefree = (0..m).all(|t| {
                                let mp = gb.minimal_polynomial(t).unwrap();
                                mp.gcd(&mp.derivative()).degree() == Some(0)
                            });
                            if !squarefree {
                                break;
                            }
                            if gb.minimal_polynomial(0)?.degree() == Some(s as usize) {
                                break 'search (sys, s);
                            }
                            let a = random_linear_map(ring.field(), m, &mut rng);
                            sys = sys.iter().map(|f| a.act(f)).collect::<Result<_>>()?;
                        }
                    };
                    let d_f = last_fall_degree(&system, &ring, caps)? as u64;
                    let bound = theorem_bound(m as u64, q, s, d_f, system_degree(&system))?;
                    let descended = map.descend_classic(&system, true)?;
                    let observed =
                        last_fall_degree(&descended.all_polys(), &descended.ring, caps)?;
                    report.trials += 1;
                    if observed as u64 > bound {
                        report.fail(format!(
                            "q={} n={} m={}: observed {} > bound {} (s={}, d_F={}) for {:?}",
                            q,
                            n,
                            m,
                            observed,
                            bound,
                            s,
                            d_f,
                            system.iter().map(|f| f.to_string()).collect::<Vec<_>>()
                        ));
                    }
                    report.rows.push(json!({
                        "q": q, "n": n, "m": m, "s": s, "d_F": d_f,
                        "observed": observed, "bound": bound,
                    }));
                }
            }
        }
    }
    Ok(report)
}

/// The two descent models dominate each other the right way around: with a
/// normal basis, the coordinate-wise model never has a larger effective
/// degree than the digit model.
pub fn verify_model_relation(trials: usize, seed: u64, caps: &Caps) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "model-relation",
        json!({"trials": trials, "seed": seed}),
    );
    let cells = [(2u64, 2usize), (2, 3), (3, 2)];
    for t in 0..trials {
        let (q, n) = cells[t % cells.len()];
        let ext = field_with_subfield(q, n)?;
        let map = DescentMap::normal(&ext, q, 1)?;
        let ring = map.source_ring().clone();
        let mut rng = cell_rng(seed, t as u64);
        let system = vec![random_poly(&ring, 4, &mut rng)];
        // exact algebraic identities behind the comparison
        let relation = relate_models(&system, &map)?;
        if !relation.verified() {
            report.fail(format!(
                "q={} n={}: model relation identities failed for {}",
                q, n, system[0]
            ));
        }
        let classic = map.descend_classic(&system, true)?;
        let bar = map.descend_bar(&system, true)?;
        let d_classic = last_fall_degree(&classic.all_polys(), &classic.ring, caps)? as u64;
        let d_bar = last_fall_degree(&bar.all_polys(), &bar.ring, caps)? as u64;
        let deg_c = system_degree(&classic.all_polys());
        let lhs = d_classic.max(q).max(deg_c);
        let rhs = d_bar.max(q).max(deg_c);
        report.trials += 1;
        if lhs > rhs {
            report.fail(format!(
                "q={} n={}: coordinate model degree {} exceeds digit model degree {} for {}",
                q, n, lhs, rhs, system[0]
            ));
        }
        report.rows.push(json!({
            "q": q, "n": n, "d_coordinate": d_classic, "d_digit": d_bar,
            "lhs": lhs, "rhs": rhs,
        }));
    }
    Ok(report)
}

/// GCD certificate: the digit descent of every Euclidean remainder of
/// (X^{q^n} - X, f), and of the gcd itself, lies in V_u with
/// u = tau(2 deg f, q, 1).
pub fn verify_gcd_certificate(
    q_list: &[u64],
    n_list: &[usize],
    trials: usize,
    max_deg: usize,
    seed: u64,
    caps: &Caps,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "gcd-certificate",
        json!({"q": q_list, "n": n_list, "trials": trials, "max_deg": max_deg, "seed": seed}),
    );
    let mut idx = 0u64;
    let mut cells = Vec::new();
    for &q in q_list {
        for &n in n_list {
            cells.push((q, n));
        }
    }
    for t in 0..trials {
        let (q, n) = cells[t % cells.len()];
        let ext = field_with_subfield(q, n)?;
        let map = DescentMap::new(&ext, q, 1)?;
        idx += 1;
        let mut rng = cell_rng(seed, idx);
        let deg = rng.gen_range(1..=max_deg);
        let f = random_unipoly(&ext, deg, &mut rng);
        let cert = descent_gcd_certificate(&f, &map, caps)?;
        report.trials += 1;
        if !cert.passed() {
            report.fail(format!(
                "q={} n={} deg={}: certificate failed (gcd degree {:?}, steps {:?})",
                q,
                n,
                deg,
                cert.gcd.degree(),
                cert.steps
            ));
        }
        report.rows.push(json!({
            "q": q, "n": n, "deg": deg,
            "u": cert.u, "gcd_deg": cert.gcd.degree(), "passed": cert.passed(),
        }));
    }
    Ok(report)
}

/// Digit-descent degree lemmas: deg(bar g) obeys the floor bound whenever
/// deg(g) >= m, and the digit image of V_{F,i} lands in V_{bar F, tau(i,q,m)}.
/// Exhaustive over monomials of degree <= `max_deg` for (q,m) in
/// {(2,1),(2,2),(3,1)}, plus `random_trials` random polynomials.
pub fn verify_bar_inclusion(
    max_deg: u32,
    random_trials: usize,
    seed: u64,
    caps: &Caps,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "bar-inclusion",
        json!({"max_deg": max_deg, "random_trials": random_trials, "seed": seed}),
    );
    let configs = [(2u64, 1usize), (2, 2), (3, 1)];
    let n = 2usize;

    let check_poly = |g: &Poly,
                          map: &DescentMap,
                          q: u64,
                          m: usize,
                          report: &mut VerifyReport|
     -> Result<()> {
        let ring = map.source_ring().clone();
        let deg = g.degree().unwrap_or(0);
        let bar_g = map.descend_bar_poly(g)?;
        report.trials += 1;
        // degree bound (proof hypothesis: total degree at least m)
        if deg as usize >= m {
            let bound = bar_degree_bound(g, q)?;
            if bar_g.degree().unwrap_or(0) as i64 > bound {
                report.fail(format!(
                    "q={} m={}: deg(bar {}) = {:?} > {}",
                    q,
                    m,
                    g,
                    bar_g.degree(),
                    bound
                ));
            }
        }
        // image inclusion for the singleton system F = {g}; the inclusion
        // needs i*q >= 4m (below that the tau target can undercut the image
        // degree, e.g. the digit image of X0 at i=1, q=2)
        let i = deg;
        if (i as u64) * q < 4 * m as u64 {
            report.rows.push(json!({
                "q": q, "m": m, "deg": deg, "bar_deg": bar_g.degree(),
                "inclusion": "skipped",
            }));
            return Ok(());
        }
        let mut system = vec![g.clone()];
        let order = ring.field().order();
        for v in 0..ring.nvars() {
            let mut e = vec![0u32; ring.nvars()];
            e[v] = order as u32;
            system.push(ring.monomial(e, 1).sub(&ring.var(v)).unwrap());
        }
        let space = EchelonSpace::build(&system, &ring, i, caps)?;
        let s = tau(i as u64, q, m as u64)? as u32;
        let bar_sys = map.descend_bar(std::slice::from_ref(g), true)?;
        let bar_space = EchelonSpace::build(&bar_sys.all_polys(), &bar_sys.ring, s, caps)?;
        for b in space.basis() {
            let image = map.descend_bar_poly(&b)?;
            let inside = match bar_space.contains(&image) {
                Ok(v) => v,
                Err(_) => false,
            };
            if !inside {
                report.fail(format!(
                    "q={} m={} i={}: digit image of {} escapes V_{}",
                    q, m, i, b, s
                ));
            }
        }
        report.rows.push(json!({
            "q": q, "m": m, "deg": deg, "bar_deg": bar_g.degree(), "i": i, "s": s,
        }));
        Ok(())
    };

    for &(q, m) in &configs {
        let ext = field_with_subfield(q, n)?;
        let map = DescentMap::new(&ext, q, m)?;
        let ring = map.source_ring().clone();
        for mono in ring.monomials_upto(max_deg, 1_000_000).unwrap() {
            if mono.iter().sum::<u32>() == 0 {
                continue;
            }
            let g = ring.monomial(mono, 1);
            check_poly(&g, &map, q, m, &mut report)?;
        }
    }
    for t in 0..random_trials {
        let (q, m) = configs[t % configs.len()];
        let ext = field_with_subfield(q, n)?;
        let map = DescentMap::new(&ext, q, m)?;
        let ring = map.source_ring().clone();
        let mut rng = cell_rng(seed, t as u64);
        let deg = rng.gen_range(m as u32..=max_deg.min(5));
        let g = random_poly_exact(&ring, deg, &mut rng);
        check_poly(&g, &map, q, m, &mut report)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_bound_suite_passes() {
        let caps = Caps::default();
        let r = verify_univariate_bound(2, &[1, 2], &[2, 3], 3, 11, &caps).unwrap();
        assert!(r.passed, "counterexamples: {:?}", r.counterexamples);
        assert_eq!(r.trials, 12);
    }

    #[test]
    fn descent_bound_suite_passes() {
        let caps = Caps::default();
        let r = verify_descent_bound(&[2], &[2, 3], &[1], 3, 5, &caps).unwrap();
        assert!(r.passed, "counterexamples: {:?}", r.counterexamples);
        assert_eq!(r.trials, 6);
    }

    #[test]
    fn model_relation_suite_passes() {
        let caps = Caps::default();
        let r = verify_model_relation(6, 3, &caps).unwrap();
        assert!(r.passed, "counterexamples: {:?}", r.counterexamples);
    }

    #[test]
    fn gcd_certificate_suite_passes() {
        let caps = Caps::default();
        let r = verify_gcd_certificate(&[2, 3], &[2, 3], 8, 5, 9, &caps).unwrap();
        assert!(r.passed, "counterexamples: {:?}", r.counterexamples);
        assert_eq!(r.trials, 8);
    }

    #[test]
    fn bar_inclusion_suite_small() {
        let caps = Caps::default();
        let r = verify_bar_inclusion(4, 6, 2, &caps).unwrap();
        assert!(r.passed, "counterexamples: {:?}", r.counterexamples);
        assert!(r.trials > 10);
    }
}
