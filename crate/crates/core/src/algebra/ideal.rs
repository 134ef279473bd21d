use super::groebner::GroebnerBasis;
use super::order::TermOrder;
use super::poly::Poly;
use super::ring::{Monomial, Ring};
use crate::error::{Error, Result};

/// Default bound on the number of standard monomials before a quotient is
/// declared infinite.
pub const DEFAULT_MAX_STANDARD: usize = 10_000;

/// Monomial basis of a finite-dimensional quotient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }
}

/// Standard monomials of `<lms>` in the variables `vars`; other variables are
/// treated as absent. Monomials are returned in ascending order of degree.
pub fn staircase(
    lms: &[Monomial],
    nvars: usize,
    vars: &[usize],
    max_check: usize,
) -> Result<QuotientBasis> {
    let restricted: Vec<Monomial> = lms
        .iter()
        .filter(|m| m.support().all(|i| vars.contains(&i)))
        .cloned()
        .collect();
    // Finite iff every variable has a pure power among the leading monomials.
    let finite = vars.iter().all(|&v| {
        restricted
            .iter()
            .any(|m| m.support().all(|i| i == v))
    });
    if !finite {
        return Err(Error::InfiniteColength { limit: max_check });
    }
    let mut out: Vec<Monomial> = Vec::new();
    let mut frontier = vec![Monomial::one(nvars)];
    if restricted.iter().any(Monomial::is_one) {
        return Ok(QuotientBasis { monomials: out });
    }
    while !frontier.is_empty() {
        let mut next: Vec<Monomial> = Vec::new();
        for m in frontier {
            if out.len() >= max_check {
                return Err(Error::InfiniteColength { limit: max_check });
            }
            out.push(m.clone());
            for &v in vars {
                let n = m.with_exp(v, m.exp(v) + 1);
                if !restricted.iter().any(|l| l.divides(&n)) && !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    Ok(QuotientBasis { monomials: out })
}

/// Standard monomials of a Gröbner basis over all ring variables.
pub fn standard_monomials(gb: &GroebnerBasis, max_check: usize) -> Result<QuotientBasis> {
    let n = gb.ring().nvars();
    let vars: Vec<usize> = (0..n).collect();
    staircase(&gb.leading_monomials(), n, &vars, max_check)
}

pub fn ideal_membership(p: &Poly, gens: &[Poly], order: &TermOrder) -> bool {
    if gens.is_empty() {
        return p.is_zero();
    }
    GroebnerBasis::compute(p.ring(), gens, order).contains(p)
}

/// `p` vanishes on V(gens), decided by the Rabinowitsch trick:
/// `1 ∈ <gens, 1 - T p>` in a ring with a fresh variable `T`.
pub fn radical_membership(p: &Poly, gens: &[Poly]) -> bool {
    if p.is_zero() {
        return true;
    }
    let ring = p.ring();
    let t_name = ring.fresh_name("T");
    let ext = ring.extend(&[t_name.as_str()]);
    let t = Poly::named(&ext, &t_name).unwrap();
    let mut ext_gens: Vec<Poly> = gens
        .iter()
        .map(|g| g.embed(&ext).expect("generators share the ring"))
        .collect();
    let pe = p.embed(&ext).unwrap();
    ext_gens.push(&Poly::one(&ext) - &(&t * &pe));
    GroebnerBasis::compute(&ext, &ext_gens, &TermOrder::degrevlex(&ext)).is_unit_ideal()
}

/// Radical membership for several polynomials against one ideal. The Gröbner
/// basis of `gens` is computed once and seeds every Rabinowitsch check.
pub fn radical_membership_all(ps: &[Poly], gens: &[Poly]) -> Vec<bool> {
    if ps.is_empty() {
        return Vec::new();
    }
    let ring = ps[0].ring();
    let basis: Vec<Poly> = if gens.is_empty() {
        Vec::new()
    } else {
        GroebnerBasis::compute(ring, gens, &TermOrder::degrevlex(ring))
            .generators()
            .to_vec()
    };
    ps.iter().map(|p| radical_membership(p, &basis)).collect()
}

/// Dimension of `V(gens)` as a subvariety of the affine space on `vars`
/// (every generator must involve only `vars`); `None` for the empty variety.
/// Computed as the largest set of variables free of every leading monomial.
pub fn affine_dimension(ring: &Ring, gens: &[Poly], vars: &[usize]) -> Option<usize> {
    if gens.iter().all(Poly::is_zero) {
        return Some(vars.len());
    }
    let gb = GroebnerBasis::compute(ring, gens, &TermOrder::degrevlex(ring));
    if gb.is_unit_ideal() {
        return None;
    }
    let lms = gb.leading_monomials();
    let n = vars.len();
    assert!(n < 25, "too many variables for subset search");
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let inside = |i: usize| vars.iter().position(|&v| v == i).is_some_and(|k| mask & (1 << k) != 0);
        if lms.iter().all(|m| !m.support().all(inside)) {
            best = size;
        }
    }
    Some(best)
}

/// Ideal equality via reduced Gröbner bases under a common order.
pub fn ideals_equal(ring: &Ring, a: &[Poly], b: &[Poly], order: &TermOrder) -> bool {
    let ga = GroebnerBasis::compute(ring, a, order);
    let gb = GroebnerBasis::compute(ring, b, order);
    ga.generators() == gb.generators()
}
