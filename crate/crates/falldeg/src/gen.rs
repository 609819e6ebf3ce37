//! Seeded random instance generators shared by the verification suites, the
//! CLI and the test batteries.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::FieldCtx;
use crate::poly::{Poly, RingCtx};
use crate::unipoly::UniPoly;

/// Random polynomial with uniform coefficients on every monomial of degree
/// at most `max_deg`. Resampled until nonconstant.
pub fn random_poly(ring: &RingCtx, max_deg: u32, rng: &mut ChaCha8Rng) -> Poly {
    let monos = ring.monomials_upto(max_deg, 1_000_000).unwrap();
    let order = ring.field().order();
    loop {
        let mut f = ring.zero();
        for mono in &monos {
            let c = rng.gen_range(0..order);
            if c != 0 {
                f = f.add(&ring.monomial(mono.clone(), c)).unwrap();
            }
        }
        if f.degree().unwrap_or(0) >= 1 {
            return f;
        }
    }
}

/// Random polynomial of degree exactly `deg`.
pub fn random_poly_exact(ring: &RingCtx, deg: u32, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let f = random_poly(ring, deg, rng);
        if f.degree() == Some(deg) {
            return f;
        }
    }
}

/// Random univariate polynomial of degree exactly `deg` (monic lead not
/// required; the leading coefficient is simply nonzero).
pub fn random_unipoly(field: &FieldCtx, deg: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let order = field.order();
    let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..order)).collect();
    coeffs.push(rng.gen_range(1..order));
    UniPoly::from_coeffs(field.clone(), coeffs)
}

/// Random system that is radical and zero-dimensional by construction: a few
/// random polynomials together with the field equations of the coefficient
/// field.
pub fn random_radical_system(
    ring: &RingCtx,
    num_polys: usize,
    max_deg: u32,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly> {
    let order = ring.field().order();
    let mut system: Vec<Poly> = (0..num_polys)
        .map(|_| random_poly(ring, max_deg, rng))
        .collect();
    for i in 0..ring.nvars() {
        // X_i^|k| - X_i expressed over the full field
        let mut e = vec![0u32; ring.nvars()];
        e[i] = order as u32;
        let mut eq = ring.monomial(e, 1);
        eq = eq.sub(&ring.var(i)).unwrap();
        system.push(eq);
    }
    system
}
