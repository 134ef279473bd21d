use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::TermOrder;
use super::ring::{q, Monomial, Ring, Q};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by dense exponent vectors; zero coefficients are never
/// stored. All polynomials taking part in one operation must share a ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Q::one())
    }

    pub fn constant(ring: &Ring, c: Q) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, q(c))
    }

    pub fn term(ring: &Ring, m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i, 1), Q::one())
    }

    /// The variable called `name`.
    pub fn named(ring: &Ring, name: &str) -> Result<Self> {
        ring.index_of(name)
            .map(|i| Self::var(ring, i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(ring: &Ring, terms: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    /// `Some(c)` if the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.nvars(), self.ring.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn degree_in_vars(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(vars)).max()
    }

    /// Lowest total degree in `vars` over all terms (the order of vanishing).
    pub fn order_in_vars(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(vars)).min()
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut p = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                p.add_term(m.with_exp(var, e - 1), c * q(e as i64));
            }
        }
        p
    }

    /// Simultaneous substitution `var_i -> value_i`; other variables are kept.
    pub fn substitute(&self, subs: &[(usize, Poly)]) -> Poly {
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|_| Vec::new()).collect();
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut keep = m.clone();
            let mut acc = Poly::one(&self.ring);
            for (k, (var, val)) in subs.iter().enumerate() {
                self.check_ring(val);
                let e = m.exp(*var) as usize;
                if e == 0 {
                    continue;
                }
                keep = keep.with_exp(*var, 0);
                let cache = &mut powers[k];
                if cache.is_empty() {
                    cache.push(Poly::one(&self.ring));
                }
                while cache.len() <= e {
                    let next = cache.last().unwrap() * val;
                    cache.push(next);
                }
                acc = &acc * &cache[e];
            }
            out = &out + &acc.mul_monomial(&keep, c);
        }
        out
    }

    /// Specialise some variables to rational values.
    pub fn evaluate(&self, values: &[(usize, Q)]) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut keep = m.clone();
            for (var, val) in values {
                let e = m.exp(*var);
                if e > 0 {
                    coef *= num_traits::pow(val.clone(), e as usize);
                    keep = keep.with_exp(*var, 0);
                }
            }
            out.add_term(keep, coef);
        }
        out
    }

    /// Full evaluation at a point given for every ring variable.
    pub fn evaluate_point(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t *= num_traits::pow(point[i].clone(), m.exp(i) as usize);
            }
            acc += t;
        }
        acc
    }

    /// Re-express in another ring by variable name.
    pub fn embed(&self, target: &Ring) -> Result<Poly> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .ring
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for i in m.support() {
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ring.name(i).into()))?;
                e[j] = m.exp(i);
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        Ok(out)
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted in descending order.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Drop every term whose degree in `vars` exceeds `n`.
    pub fn truncate(&self, vars: &[usize], n: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(vars) <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of degree `d` in `vars`.
    pub fn homogeneous_part(&self, vars: &[usize], d: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(vars) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Group by the monomial in `vars`; coefficients are polynomials in the
    /// remaining variables.
    pub fn coefficients_in(&self, vars: &[usize]) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.restrict(vars))
                .or_insert_with(|| Poly::zero(&self.ring))
                .add_term(m.drop_vars(vars), c.clone());
        }
        out
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut out = Poly::zero(&self.ring);
        for (t, c) in &self.terms {
            out.add_term(t.div(m)?, c.clone());
        }
        Some(out)
    }

    /// Split `self = scalar * primitive` where `primitive` has coprime integer
    /// coefficients and a positive leading coefficient under `order`.
    pub fn primitive(&self, order: &TermOrder) -> (Q, Poly) {
        if self.is_zero() {
            return (Q::one(), self.clone());
        }
        let mut lcm_den = BigInt::one();
        let mut gcd_num = BigInt::zero();
        for c in self.terms.values() {
            lcm_den = lcm_den.lcm(c.denom());
            gcd_num = gcd_num.gcd(c.numer());
        }
        let mut scalar = Q::new(gcd_num, lcm_den);
        let (_, lc) = self.leading_term(order).unwrap();
        if lc.is_negative() {
            scalar = -scalar;
        }
        let inv = scalar.recip();
        (scalar, self.scale(&inv))
    }

    pub fn to_string_with(&self, order: &TermOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.display(&self.ring);
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&TermOrder::degrevlex(&self.ring)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = Poly::zero(&self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
