//! Truncated power series in `Q[[vars]]`, Weierstrass preparation with respect
//! to `x`, certified colength of ideals in the local ring at the origin, and
//! the classical singularity invariants built on it.
//!
//! A series is a polynomial body known modulo `m^(N+1)`, where `m` is the ideal
//! generated by the truncated variables. Variables outside the truncation set
//! (usually family parameters) are carried exactly.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::algebra::ring::{monomials_up_to, Monomial, Ring, Q};
use crate::algebra::Poly;
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: u32 = 12;
pub const TRUNCATION_CAP: u32 = 48;

/// A polynomial body known modulo `m^(order+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    body: Poly,
    vars: Vec<usize>,
    order: u32,
}

impl TruncatedSeries {
    pub fn new(body: Poly, vars: Vec<usize>, order: u32) -> Self {
        let body = body.truncate(&vars, order);
        TruncatedSeries { body, vars, order }
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn into_body(self) -> Poly {
        self.body
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "series over different truncation sets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(&self.body + &other.body, self.vars.clone(), self.order.min(other.order))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(&self.body - &other.body, self.vars.clone(), self.order.min(other.order))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let order = self.order.min(other.order);
        Self::new(
            mul_truncated(&self.body, &other.body, &self.vars, order),
            self.vars.clone(),
            order,
        )
    }

    pub fn invert(&self) -> Result<Self> {
        Ok(Self {
            body: series_invert(&self.body, &self.vars, self.order)?,
            vars: self.vars.clone(),
            order: self.order,
        })
    }

    /// Equal modulo `m^(order+1)` of the coarser operand.
    pub fn congruent(&self, other: &Self) -> bool {
        self.sub(other).body.is_zero()
    }
}

/// Product with terms of degree above `n` in `vars` discarded as they arise.
pub fn mul_truncated(a: &Poly, b: &Poly, vars: &[usize], n: u32) -> Poly {
    let mut out = Poly::zero(a.ring());
    for (ma, ca) in a.terms() {
        let da = ma.degree_in(vars);
        if da > n {
            continue;
        }
        for (mb, cb) in b.terms() {
            if da + mb.degree_in(vars) <= n {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
    }
    out
}

/// Part of `p` of degree zero in `vars`.
fn constant_part(p: &Poly, vars: &[usize]) -> Poly {
    p.homogeneous_part(vars, 0)
}

/// Inverse of a unit modulo `m^(order+1)`. The constant term (degree zero in
/// `vars`) must be a nonzero rational; declare parameters as truncated
/// variables to invert units such as `1 + s + t`.
pub fn series_invert(u: &Poly, vars: &[usize], order: u32) -> Result<Poly> {
    let c0 = constant_part(u, vars);
    let c = match c0.as_constant() {
        Some(c) if !c.is_zero() => c,
        Some(_) => return Err(Error::NotAUnit(format!("{u} has zero constant term"))),
        None => {
            return Err(Error::NotAUnit(format!(
                "constant term {c0} of {u} is not a rational number; truncate its variables"
            )))
        }
    };
    let ring = u.ring();
    let cinv = c.recip();
    // u = c (1 + r) with r in m.
    let r = &u.scale(&cinv) - &Poly::one(ring);
    let neg_r = -&r;
    let mut acc = Poly::one(ring);
    let mut term = Poly::one(ring);
    for _ in 0..order {
        term = mul_truncated(&term, &neg_r, vars, order);
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Ok(acc.scale(&cinv))
}

/// Result of Weierstrass preparation `E ≡ unit · distinguished (mod m^(N+1))`.
#[derive(Clone, Debug)]
pub struct Preparation {
    pub unit: Poly,
    /// `x^w + sum_{i<w} a_i x^i` with every `a_i` vanishing at the origin.
    pub distinguished: Poly,
    pub order: u32,
}

/// Order of `E(x, 0, ..., 0)` in `x`, all other ring variables set to zero.
pub fn x_order_at_origin(e: &Poly, x: usize) -> Option<u32> {
    e.terms()
        .filter(|(m, _)| m.support().all(|i| i == x))
        .map(|(m, _)| m.exp(x))
        .min()
}

/// Weierstrass preparation with respect to `x` in `Q[[vars]]`.
///
/// `vars` must contain `x`; variables outside `vars` are carried exactly and
/// must not be needed to see the unit (the coefficient of `x^w` at the origin
/// of the truncated variables must be a nonzero rational).
pub fn weierstrass_prepare_x(
    e: &Poly,
    x: usize,
    w: u32,
    vars: &[usize],
    order: u32,
) -> Result<Preparation> {
    assert!(vars.contains(&x), "x must be a truncated variable");
    let found = x_order_at_origin(e, x);
    if found != Some(w) {
        return Err(Error::ContactOrderMismatch { expected: w, found });
    }
    if w > order {
        return Err(Error::InvalidArgument(format!(
            "truncation order {order} below contact order {w}"
        )));
    }
    let ring = e.ring();
    let others: Vec<usize> = vars.iter().copied().filter(|&v| v != x).collect();
    let xw = Monomial::var(ring.nvars(), x, w);
    let split = |h: &Poly| -> (Poly, Poly) {
        let mut hi = Poly::zero(ring);
        let mut lo = Poly::zero(ring);
        for (m, c) in h.terms() {
            if m.exp(x) >= w {
                hi.add_term(m.div(&xw).unwrap(), c.clone());
            } else {
                lo.add_term(m.clone(), c.clone());
            }
        }
        (hi, lo)
    };
    let e = e.truncate(vars, order);
    let (e1, e0) = split(&e);
    if let Some((m, _)) = e0.terms().find(|(m, _)| m.degree_in(&others) == 0) {
        return Err(Error::NotWContact(format!(
            "term {} of x-degree below {w} survives at the origin of the truncated variables",
            m.display(ring)
        )));
    }
    let e1_inv = series_invert(&e1, vars, order)?;

    // Divide x^w by E: x^w = q E + r with deg_x r < w.
    let mut quotient = Poly::zero(ring);
    let mut remainder = Poly::zero(ring);
    let mut h = Poly::term(ring, xw.clone(), Q::one());
    for _ in 0..=order + 1 {
        if h.is_zero() {
            break;
        }
        let (hi, lo) = split(&h);
        let step = mul_truncated(&hi, &e1_inv, vars, order);
        quotient = &quotient + &step;
        remainder = &remainder + &lo;
        h = -mul_truncated(&step, &e0, vars, order);
    }
    debug_assert!(h.is_zero(), "Weierstrass division did not converge");
    let distinguished = &Poly::term(ring, xw, Q::one()) - &remainder;
    let unit = series_invert(&quotient, vars, order)?;
    Ok(Preparation {
        unit,
        distinguished,
        order,
    })
}

/// Ideal of `Q[[vars]]` given by polynomial generators.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    ring: Ring,
    vars: Vec<usize>,
    gens: Vec<Poly>,
    start_order: u32,
    cap: u32,
}

impl LocalIdeal {
    pub fn new(ring: &Ring, vars: Vec<usize>, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            assert!(g.ring() == ring, "generator from a different ring");
            if let Some(v) = g.support_vars().into_iter().find(|v| !vars.contains(v)) {
                return Err(Error::NonLocalVariable(ring.name(v).to_string()));
            }
        }
        Ok(LocalIdeal {
            ring: ring.clone(),
            vars,
            gens,
            start_order: DEFAULT_TRUNCATION,
            cap: TRUNCATION_CAP,
        })
    }

    /// Ideal in the named local variables.
    pub fn in_vars(ring: &Ring, names: &[&str], gens: Vec<Poly>) -> Result<Self> {
        let vars = names
            .iter()
            .map(|n| ring.index_of(n).ok_or_else(|| Error::UnknownVariable(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, vars, gens)
    }

    pub fn with_truncation(mut self, start: u32, cap: u32) -> Self {
        self.start_order = start;
        self.cap = cap.max(start);
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn start_order(&self) -> u32 {
        self.start_order
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Same local variables and truncation settings, more generators.
    pub fn extended(&self, extra: &[Poly]) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ok(Self::new(&self.ring, self.vars.clone(), gens)?.with_truncation(self.start_order, self.cap))
    }
}

type SparseRow = BTreeMap<usize, Q>;

/// Certified finite-dimensional quotient `Q[[vars]] / I` with a monomial basis.
///
/// The certificate is a power `k <= N` with every monomial of degree `k..=N`
/// a pivot of the truncated ideal span: then `m^k ⊆ I + m^(k+1)`, so
/// `m^k ⊆ I` by Nakayama and truncation at `N` is exact.
#[derive(Clone, Debug)]
pub struct LocalQuotient {
    ring: Ring,
    vars: Vec<usize>,
    order: u32,
    certified_power: u32,
    columns: Vec<Monomial>,
    col_index: HashMap<Monomial, usize>,
    pivots: HashMap<usize, SparseRow>,
    basis_cols: Vec<usize>,
}

impl LocalQuotient {
    pub fn colength(&self) -> usize {
        self.basis_cols.len()
    }

    pub fn basis(&self) -> Vec<Monomial> {
        self.basis_cols.iter().map(|&c| self.columns[c].clone()).collect()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis().iter().map(|m| m.display(&self.ring)).collect()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Smallest `k` with `m^k ⊆ I`.
    pub fn certified_power(&self) -> u32 {
        self.certified_power
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn row_of(&self, p: &Poly) -> Result<SparseRow> {
        let mut row = SparseRow::new();
        for (m, c) in p.terms() {
            if let Some(v) = m.support().find(|v| !self.vars.contains(v)) {
                return Err(Error::NonLocalVariable(self.ring.name(v).to_string()));
            }
            if m.degree_in(&self.vars) > self.order {
                continue;
            }
            row.insert(self.col_index[m], c.clone());
        }
        Ok(row)
    }

    fn reduce_full(&self, mut row: SparseRow) -> SparseRow {
        let mut rest = SparseRow::new();
        while let Some((c, v)) = row.pop_first() {
            match self.pivots.get(&c) {
                Some(p) => {
                    for (c2, v2) in p.range(c + 1..) {
                        let e = row.entry(*c2).or_insert_with(Q::zero);
                        *e -= &v * v2;
                        if e.is_zero() {
                            row.remove(c2);
                        }
                    }
                }
                None => {
                    rest.insert(c, v);
                }
            }
        }
        rest
    }

    /// Coordinates of the class of `p` on the monomial basis.
    pub fn coordinates(&self, p: &Poly) -> Result<Vec<Q>> {
        assert!(p.ring() == &self.ring, "ring mismatch");
        let rest = self.reduce_full(self.row_of(p)?);
        Ok(self
            .basis_cols
            .iter()
            .map(|c| rest.get(c).cloned().unwrap_or_else(Q::zero))
            .collect())
    }

    /// Normal form as a combination of basis monomials.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        let coords = self.coordinates(p)?;
        Ok(Poly::from_terms(
            &self.ring,
            self.basis().into_iter().zip(coords),
        ))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.coordinates(p)?.iter().all(Zero::is_zero))
    }
}

/// Attempt certification at truncation order `n`.
pub fn certify_at(ideal: &LocalIdeal, n: u32) -> Option<LocalQuotient> {
    let nv = ideal.ring.nvars();
    let columns = monomials_up_to(nv, &ideal.vars, n);
    let col_index: HashMap<Monomial, usize> =
        columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut q = LocalQuotient {
        ring: ideal.ring.clone(),
        vars: ideal.vars.clone(),
        order: n,
        certified_power: 0,
        columns,
        col_index,
        pivots: HashMap::new(),
        basis_cols: Vec::new(),
    };
    for g in &ideal.gens {
        let g = g.truncate(&ideal.vars, n);
        let Some(ord) = g.order_in_vars(&ideal.vars) else {
            continue;
        };
        for m in monomials_up_to(nv, &ideal.vars, n - ord) {
            let prod = g.mul_monomial(&m, &Q::one());
            let row = q.row_of(&prod).expect("generators are local");
            insert_row(&mut q.pivots, row);
        }
    }
    let is_pivot = |c: usize| q.pivots.contains_key(&c);
    let k = (0..=n).find(|&k| {
        q.columns
            .iter()
            .enumerate()
            .filter(|(_, m)| m.degree_in(&q.vars) >= k)
            .all(|(c, _)| is_pivot(c))
    })?;
    q.certified_power = k;
    q.basis_cols = (0..q.columns.len()).filter(|&c| !is_pivot(c)).collect();
    Some(q)
}

fn insert_row(pivots: &mut HashMap<usize, SparseRow>, mut row: SparseRow) {
    loop {
        let Some((&c, _)) = row.first_key_value() else {
            return;
        };
        match pivots.get(&c) {
            Some(p) => {
                let v = row.remove(&c).unwrap();
                for (c2, v2) in p.range(c + 1..) {
                    let e = row.entry(*c2).or_insert_with(Q::zero);
                    *e -= &v * v2;
                    if e.is_zero() {
                        row.remove(c2);
                    }
                }
            }
            None => {
                let inv = row[&c].recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                pivots.insert(c, row);
                return;
            }
        }
    }
}

/// Certified colength with automatic doubling of the truncation order.
pub fn local_colength(ideal: &LocalIdeal) -> Result<LocalQuotient> {
    let mut n = ideal.start_order.max(1);
    loop {
        if let Some(q) = certify_at(ideal, n) {
            return Ok(q);
        }
        if n >= ideal.cap {
            return Err(Error::CertificationFailed { cap: ideal.cap });
        }
        n = (n * 2).min(ideal.cap);
    }
}

fn var_indices(ring: &Ring, names: &[&str]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| ring.index_of(n).ok_or_else(|| Error::UnknownVariable(n.to_string())))
        .collect()
}

fn isolated_colength(ring: &Ring, vars: Vec<usize>, gens: Vec<Poly>, cap: u32) -> Result<usize> {
    let ideal = LocalIdeal::new(ring, vars, gens)?.with_truncation(DEFAULT_TRUNCATION, cap);
    match local_colength(&ideal) {
        Ok(q) => Ok(q.colength()),
        Err(Error::CertificationFailed { cap }) => Err(Error::NotIsolated { cap }),
        Err(e) => Err(e),
    }
}

fn require_origin(f: &Poly) -> Result<()> {
    if f.constant_term().is_zero() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{f} does not vanish at the origin")))
    }
}

/// Colength of the Jacobian ideal `<dF/dv : v in vars>` at the origin.
pub fn milnor_number(f: &Poly, vars: &[&str]) -> Result<usize> {
    milnor_number_capped(f, vars, TRUNCATION_CAP)
}

pub fn milnor_number_capped(f: &Poly, vars: &[&str], cap: u32) -> Result<usize> {
    require_origin(f)?;
    let idx = var_indices(f.ring(), vars)?;
    let gens = idx.iter().map(|&v| f.derivative(v)).collect();
    isolated_colength(f.ring(), idx, gens, cap)
}

/// Colength of `<F, dF/dv : v in vars>` at the origin.
pub fn tjurina_number(f: &Poly, vars: &[&str]) -> Result<usize> {
    tjurina_number_capped(f, vars, TRUNCATION_CAP)
}

pub fn tjurina_number_capped(f: &Poly, vars: &[&str], cap: u32) -> Result<usize> {
    require_origin(f)?;
    let idx = var_indices(f.ring(), vars)?;
    let mut gens = vec![f.clone()];
    gens.extend(idx.iter().map(|&v| f.derivative(v)));
    isolated_colength(f.ring(), idx, gens, cap)
}

/// `delta = (mu + r - 1) / 2` for a plane curve germ with `r` branches.
pub fn delta_invariant(f: &Poly, vars: &[&str], branches: u32) -> Result<usize> {
    let mu = milnor_number(f, vars)? as i64;
    let s = mu + branches as i64 - 1;
    if s < 0 || s % 2 != 0 {
        return Err(Error::InconsistentBranchCount(s));
    }
    Ok((s / 2) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::q;
    use crate::io::parse::parse_poly;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().copied())
    }

    #[test]
    fn geometric_series() {
        let r = ring(&["x"]);
        let u = parse_poly("1 + x", &r).unwrap();
        let inv = series_invert(&u, &[0], 3).unwrap();
        assert_eq!(inv, parse_poly("1 - x + x^2 - x^3", &r).unwrap());
        let two = parse_poly("2", &r).unwrap();
        assert_eq!(series_invert(&two, &[0], 3).unwrap(), parse_poly("1/2", &r).unwrap());
        let x = parse_poly("x", &r).unwrap();
        assert!(matches!(series_invert(&x, &[0], 3), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn parameter_unit_inversion() {
        let r = ring(&["x", "y", "s", "t"]);
        let u = parse_poly("1 + s + t", &r).unwrap();
        assert!(series_invert(&u, &[0, 1], 2).is_err());
        let inv = series_invert(&u, &[0, 1, 2, 3], 2).unwrap();
        assert_eq!(inv, parse_poly("1 - (s + t) + (s + t)^2", &r).unwrap());
    }

    #[test]
    fn preparation_of_tacnode_is_trivial() {
        let r = ring(&["x", "y"]);
        let e = parse_poly("y^2 + x^4", &r).unwrap();
        let p = weierstrass_prepare_x(&e, 0, 4, &[0, 1], 12).unwrap();
        assert_eq!(p.unit, Poly::one(&r));
        assert_eq!(p.distinguished, e);
    }

    #[test]
    fn preparation_product_congruence() {
        let r = ring(&["x", "y"]);
        let e = parse_poly("(1 + x)*(x^2 + x*y)", &r).unwrap();
        let p = weierstrass_prepare_x(&e, 0, 2, &[0, 1], 10).unwrap();
        let prod = mul_truncated(&p.unit, &p.distinguished, &[0, 1], 10);
        assert_eq!(prod, e.truncate(&[0, 1], 10));
        assert_eq!(p.distinguished.degree_in(0), Some(2));
    }

    #[test]
    fn preparation_rejects_wrong_order() {
        let r = ring(&["x", "y"]);
        let e = parse_poly("y + x^3", &r).unwrap();
        assert_eq!(
            weierstrass_prepare_x(&e, 0, 2, &[0, 1], 8).unwrap_err(),
            Error::ContactOrderMismatch { expected: 2, found: Some(3) }
        );
    }

    #[test]
    fn colength_examples() {
        let r = ring(&["x", "y"]);
        let col = |src: &str| {
            let gens = src.split(',').map(|s| parse_poly(s, &r).unwrap()).collect();
            local_colength(&LocalIdeal::new(&r, vec![0, 1], gens).unwrap())
                .unwrap()
                .colength()
        };
        assert_eq!(col("y, x^2"), 2);
        assert_eq!(col("x, y"), 1);
        assert_eq!(col("y - x^2, x^3"), 3);
        assert_eq!(col("1 + x, y"), 0);
        // units do not count: <(1+x) y, x^2> = <y, x^2>
        assert_eq!(col("(1 + x)*y, x^2*(1 - y)"), 2);
    }

    #[test]
    fn quotient_reduction() {
        let r = ring(&["x", "y"]);
        let gens = vec![parse_poly("y", &r).unwrap(), parse_poly("x^2", &r).unwrap()];
        let qt = local_colength(&LocalIdeal::new(&r, vec![0, 1], gens).unwrap()).unwrap();
        assert_eq!(qt.basis_labels(), vec!["1", "x"]);
        let c = qt.coordinates(&parse_poly("3 + 2*x - y + x^5", &r).unwrap()).unwrap();
        assert_eq!(c, vec![q(3), q(2)]);
        let rs = ring(&["x", "y", "s"]);
        let gs = vec![parse_poly("y", &rs).unwrap()];
        assert!(matches!(
            LocalIdeal::new(&rs, vec![0, 1], vec![gs[0].clone(), parse_poly("s", &rs).unwrap()]),
            Err(Error::NonLocalVariable(_))
        ));
    }

    #[test]
    fn invariants_of_simple_curves() {
        let r = ring(&["x", "y"]);
        let f = |s: &str| parse_poly(s, &r).unwrap();
        assert_eq!(milnor_number(&f("y^2 + x^4"), &["x", "y"]).unwrap(), 3);
        assert_eq!(milnor_number(&f("y^2 + x^2"), &["x", "y"]).unwrap(), 1);
        assert_eq!(milnor_number(&f("y^2 + x^3"), &["x", "y"]).unwrap(), 2);
        assert_eq!(delta_invariant(&f("y^2 + x^4"), &["x", "y"], 2).unwrap(), 2);
        assert_eq!(delta_invariant(&f("y^2 + x^2"), &["x", "y"], 2).unwrap(), 1);
        assert_eq!(delta_invariant(&f("y^2 + x^3"), &["x", "y"], 1).unwrap(), 1);
        assert_eq!(
            delta_invariant(&f("y^2 + x^3"), &["x", "y"], 2).unwrap_err(),
            Error::InconsistentBranchCount(3)
        );
        assert!(matches!(
            milnor_number_capped(&f("y^2"), &["x", "y"], 24),
            Err(Error::NotIsolated { .. })
        ));
    }

    #[test]
    fn tjurina_examples() {
        let r = ring(&["x", "y", "z"]);
        for w in 2..=5 {
            let f = parse_poly(&format!("y*z + x^{w}"), &r).unwrap();
            assert_eq!(tjurina_number(&f, &["x", "y", "z"]).unwrap(), (w - 1) as usize);
        }
        let f = parse_poly("x^2 + y^2 + z^2", &r).unwrap();
        assert_eq!(tjurina_number(&f, &["x", "y", "z"]).unwrap(), 1);
    }
}
