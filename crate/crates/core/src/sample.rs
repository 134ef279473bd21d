//! Seeded random rationals and polynomials.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ring::{monomials_up_to, Ring, Q};
use crate::algebra::Poly;

/// Bound on numerators and denominators of sampled rationals.
pub const SAMPLE_BOUND: i64 = 7;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent seed from a parent seed and a label (FNV-1a).
pub fn sub_seed(seed: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in seed.to_le_bytes().iter().chain(label.as_bytes()) {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// `a/b` with `|a| <= bound`, `1 <= b <= bound`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Q {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Q {
    loop {
        let v = rational(rng, bound);
        if v != Q::from_integer(0.into()) {
            return v;
        }
    }
}

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Q {
    Q::from_integer(rng.gen_range(-bound..=bound).into())
}

/// Random polynomial in `vars` of degree at most `max_deg`; each monomial is
/// present with probability `density` and gets an integer in `-bound..=bound`.
pub fn poly<R: Rng>(rng: &mut R, ring: &Ring, vars: &[usize], max_deg: u32, bound: i64, density: f64) -> Poly {
    let mut p = Poly::zero(ring);
    for m in monomials_up_to(ring.nvars(), vars, max_deg) {
        if rng.gen_bool(density) {
            p.add_term(m, small_int(rng, bound));
        }
    }
    p
}
