//! Families of w-contact equations `E = y f + x^w g` over an affine parameter
//! space, and the transformations that preserve the family of curves.

use num_traits::Zero;

use crate::algebra::ring::{Ring, Q};
use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::local::{series_invert, weierstrass_prepare_x};

pub const X: &str = "x";
pub const Y: &str = "y";
pub const Z: &str = "z";

/// Affine parameter space with coordinates `λ_1..λ_r`, base point the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterSpace {
    names: Vec<String>,
}

impl ParameterSpace {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for n in &names {
            if [X, Y, Z].contains(&n.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "parameter `{n}` clashes with a geometric variable"
                )));
            }
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("parameter `{n}` declared twice")));
            }
        }
        Ok(ParameterSpace { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind {
    Contact { w: u32, f: Poly, g: Poly },
    Interior,
}

/// A family `E_λ(x, y)`; contact families carry the split `E = y f + x^w g`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactFamily {
    e: Poly,
    params: ParameterSpace,
    param_idx: Vec<usize>,
    x: usize,
    y: usize,
    kind: FamilyKind,
}

fn geometric_indices(ring: &Ring) -> Result<(usize, usize)> {
    let x = ring.index_of(X).ok_or_else(|| Error::UnknownVariable(X.into()))?;
    let y = ring.index_of(Y).ok_or_else(|| Error::UnknownVariable(Y.into()))?;
    Ok((x, y))
}

fn param_indices(ring: &Ring, params: &ParameterSpace) -> Result<Vec<usize>> {
    params
        .names()
        .iter()
        .map(|n| ring.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
        .collect()
}

fn check_support(e: &Poly, allowed: &[usize]) -> Result<()> {
    match e.support_vars().into_iter().find(|v| !allowed.contains(v)) {
        Some(v) => Err(Error::InvalidArgument(format!(
            "`{}` is neither geometric nor a declared parameter",
            e.ring().name(v)
        ))),
        None => Ok(()),
    }
}

/// `(f, g)` with `E = y f + x^w g`, `x^w g = E(x, 0, λ)`.
fn split(e: &Poly, x: usize, y: usize, w: u32) -> Option<(Poly, Poly)> {
    let ring = e.ring();
    let mut f = Poly::zero(ring);
    let mut g = Poly::zero(ring);
    for (m, c) in e.terms() {
        if m.exp(y) > 0 {
            f.add_term(m.with_exp(y, m.exp(y) - 1), c.clone());
        } else if m.exp(x) >= w {
            g.add_term(m.with_exp(x, m.exp(x) - w), c.clone());
        } else {
            return None;
        }
    }
    Some((f, g))
}

impl ContactFamily {
    /// Validate `E` as a w-contact family over `params`.
    pub fn contact<S: AsRef<str>>(e: &Poly, params: &[S], expected_w: Option<u32>) -> Result<Self> {
        let params = ParameterSpace::new(params)?;
        Self::contact_over(e, params, expected_w)
    }

    pub fn contact_over(e: &Poly, params: ParameterSpace, expected_w: Option<u32>) -> Result<Self> {
        let ring = e.ring();
        let (x, y) = geometric_indices(ring)?;
        let param_idx = param_indices(ring, &params)?;
        let mut allowed = vec![x, y];
        allowed.extend(&param_idx);
        check_support(e, &allowed)?;

        let at_origin = e
            .terms()
            .filter(|(m, _)| m.support().all(|v| v == x))
            .map(|(m, _)| m.exp(x))
            .min();
        let w = match at_origin {
            None => return Err(Error::NotWContact("E(x, 0) vanishes identically at λ = 0".into())),
            Some(0) => {
                return Err(Error::NotWContact("E does not vanish at the origin".into()))
            }
            Some(w) => w,
        };
        if let Some(exp) = expected_w {
            if exp != w {
                return Err(Error::NotWContact(format!("expected contact order {exp}, found {w}")));
            }
        }
        let (f, g) = split(e, x, y, w).ok_or_else(|| {
            Error::NotWContact(format!("E(x, 0, λ) is not divisible by x^{w} for all λ"))
        })?;
        Ok(ContactFamily {
            e: e.clone(),
            params,
            param_idx,
            x,
            y,
            kind: FamilyKind::Contact { w, f, g },
        })
    }

    /// A family used away from the boundary; no `(f, g, w)`.
    pub fn interior<S: AsRef<str>>(e: &Poly, params: &[S]) -> Result<Self> {
        let params = ParameterSpace::new(params)?;
        let ring = e.ring();
        let (x, y) = geometric_indices(ring)?;
        let param_idx = param_indices(ring, &params)?;
        let mut allowed = vec![x, y];
        allowed.extend(&param_idx);
        check_support(e, &allowed)?;
        Ok(ContactFamily {
            e: e.clone(),
            params,
            param_idx,
            x,
            y,
            kind: FamilyKind::Interior,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.e.ring()
    }

    pub fn e(&self) -> &Poly {
        &self.e
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn is_contact(&self) -> bool {
        matches!(self.kind, FamilyKind::Contact { .. })
    }

    pub fn params(&self) -> &ParameterSpace {
        &self.params
    }

    pub fn param_indices(&self) -> &[usize] {
        &self.param_idx
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn w(&self) -> Result<u32> {
        match &self.kind {
            FamilyKind::Contact { w, .. } => Ok(*w),
            FamilyKind::Interior => Err(Error::WrongKind { expected: "contact" }),
        }
    }

    pub fn f(&self) -> Result<&Poly> {
        match &self.kind {
            FamilyKind::Contact { f, .. } => Ok(f),
            FamilyKind::Interior => Err(Error::WrongKind { expected: "contact" }),
        }
    }

    pub fn g(&self) -> Result<&Poly> {
        match &self.kind {
            FamilyKind::Contact { g, .. } => Ok(g),
            FamilyKind::Interior => Err(Error::WrongKind { expected: "contact" }),
        }
    }

    /// Specialize every parameter to zero.
    pub fn at_origin(&self, p: &Poly) -> Poly {
        let zeros: Vec<(usize, Q)> = self.param_idx.iter().map(|&i| (i, Q::zero())).collect();
        p.evaluate(&zeros)
    }

    /// `E_0`, the fiber over the base point.
    pub fn e0(&self) -> Poly {
        self.at_origin(&self.e)
    }

    /// The family with parameters specialized to `values` (same order as the
    /// parameter space); the result has no parameters.
    pub fn specialize(&self, values: &[Q]) -> Result<ContactFamily> {
        assert_eq!(values.len(), self.param_idx.len());
        let subs: Vec<(usize, Q)> = self.param_idx.iter().copied().zip(values.iter().cloned()).collect();
        let e = self.e.evaluate(&subs);
        let none: [&str; 0] = [];
        match &self.kind {
            FamilyKind::Contact { w, .. } => Self::contact(&e, &none, Some(*w)),
            FamilyKind::Interior => Self::interior(&e, &none),
        }
    }

    /// Same family with `E` re-expressed in a larger ring.
    pub fn embed(&self, ring: &Ring) -> Result<ContactFamily> {
        let e = self.e.embed(ring)?;
        match &self.kind {
            FamilyKind::Contact { w, .. } => Self::contact_over(&e, self.params.clone(), Some(*w)),
            FamilyKind::Interior => Self::interior(&e, self.params.names()),
        }
    }

    fn rebuild(&self, e: Poly) -> Result<ContactFamily> {
        Self::contact_over(&e, self.params.clone(), Some(self.w()?))
    }

    fn geometric(&self) -> Vec<usize> {
        vec![self.x, self.y]
    }

    /// Truncation variables for inverting `u`: the geometric ones, plus the
    /// parameters when `u` involves them.
    fn unit_vars(&self, u: &Poly) -> Vec<usize> {
        let mut vars = self.geometric();
        if self.param_idx.iter().any(|&p| u.involves(p)) {
            vars.extend(&self.param_idx);
        }
        vars
    }

    /// `E g^{-1}`, so that the new `g` is 1. A constant `g` is divided out
    /// exactly; otherwise `g^{-1}` is truncated at order `n`.
    pub fn to_normal_form(&self, n: u32) -> Result<ContactFamily> {
        let (w, f, g) = match &self.kind {
            FamilyKind::Contact { w, f, g } => (*w, f, g),
            FamilyKind::Interior => return Err(Error::WrongKind { expected: "contact" }),
        };
        let ginv = match g.as_constant() {
            Some(c) if !c.is_zero() => Poly::constant(self.ring(), c.recip()),
            _ => series_invert(g, &self.unit_vars(g), n)?,
        };
        let ring = self.ring();
        let xw = Poly::var(ring, self.x).pow(w);
        let new_f = f * &ginv;
        let e = &(&Poly::var(ring, self.y) * &new_f) + &xw;
        self.rebuild(e)
    }

    /// Weierstrass-distinguished form: `g = 1` and `deg_x f <= w - 1`.
    /// Returns the family and the discarded unit `u` with `u P ≡ E`.
    pub fn to_distinguished(&self, n: u32) -> Result<(ContactFamily, Poly)> {
        let w = self.w()?;
        let vars = self.unit_vars(self.g()?);
        let prep = weierstrass_prepare_x(&self.e, self.x, w, &vars, n)?;
        Ok((self.rebuild(prep.distinguished)?, prep.unit))
    }

    /// The family `u E` for a unit `u` (nonzero at the origin, λ = 0).
    pub fn multiply_unit(&self, u: &Poly) -> Result<ContactFamily> {
        self.w()?;
        let u = u.embed(self.ring())?;
        let mut allowed = self.geometric();
        allowed.extend(&self.param_idx);
        check_support(&u, &allowed)?;
        if u.constant_term().is_zero() {
            return Err(Error::NotAUnit(format!("{u} vanishes at the origin")));
        }
        self.rebuild(&u * &self.e)
    }

    /// `E(X(x, y), Y(x, y))`.
    pub fn apply_change(&self, phi: &StrataPreservingChange) -> Result<ContactFamily> {
        self.w()?;
        let xi = phi.x_image.embed(self.ring())?;
        let yi = phi.y_image.embed(self.ring())?;
        let e = self.e.substitute(&[(self.x, xi), (self.y, yi)]);
        self.rebuild(e)
    }
}

/// `(x, y) -> (x u(x) + y A(x, y), y v(x, y))` with `u(0) != 0`, `v(0, 0) != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrataPreservingChange {
    pub x_image: Poly,
    pub y_image: Poly,
}

impl StrataPreservingChange {
    pub fn new(x_image: Poly, y_image: Poly) -> Result<Self> {
        let ring = x_image.ring().clone();
        assert!(y_image.ring() == &ring, "images from different rings");
        let (x, y) = geometric_indices(&ring)?;
        // Units are judged at the origin of every variable, parameters included.
        let at_origin_x = x_image
            .terms()
            .filter(|(m, _)| m.support().all(|v| v == x))
            .map(|(m, _)| m.exp(x))
            .min();
        if at_origin_x != Some(1) {
            return Err(Error::NotStrataPreserving(format!(
                "X-image {x_image} is not x times a unit modulo y"
            )));
        }
        let mut xu_part = Poly::zero(&ring);
        for (m, c) in x_image.terms() {
            if m.exp(y) == 0 {
                xu_part.add_term(m.clone(), c.clone());
            }
        }
        if xu_part.div_monomial(&crate::algebra::Monomial::var(ring.nvars(), x, 1)).is_none() {
            return Err(Error::NotStrataPreserving(format!(
                "X-image {x_image} does not vanish along x = 0 modulo y"
            )));
        }
        let v = y_image
            .div_monomial(&crate::algebra::Monomial::var(ring.nvars(), y, 1))
            .ok_or_else(|| Error::NotStrataPreserving(format!("Y-image {y_image} is not divisible by y")))?;
        if v.constant_term().is_zero() {
            return Err(Error::NotStrataPreserving(format!(
                "Y-image {y_image} is not y times a unit"
            )));
        }
        Ok(StrataPreservingChange { x_image, y_image })
    }

    pub fn identity(ring: &Ring) -> Result<Self> {
        let (x, y) = geometric_indices(ring)?;
        Self::new(Poly::var(ring, x), Poly::var(ring, y))
    }

    /// `u(x)` with `X(x, 0) = x u(x)`.
    pub fn x_unit(&self) -> Poly {
        let ring = self.x_image.ring();
        let (x, y) = geometric_indices(ring).unwrap();
        let mut u = Poly::zero(ring);
        for (m, c) in self.x_image.terms() {
            if m.exp(y) == 0 {
                u.add_term(m.with_exp(x, m.exp(x) - 1), c.clone());
            }
        }
        u
    }

    /// `v(x, y)` with `Y = y v`.
    pub fn y_unit(&self) -> Poly {
        let ring = self.y_image.ring();
        let (_, y) = geometric_indices(ring).unwrap();
        self.y_image
            .div_monomial(&crate::algebra::Monomial::var(ring.nvars(), y, 1))
            .unwrap()
    }
}

/// `E = E_0 + y Σ s_i f_i` over fresh parameters `s1..sg`.
pub fn family_from_basis(e0: &Poly, basis: &[Poly]) -> Result<ContactFamily> {
    let base = e0.ring();
    let names: Vec<String> = (1..=basis.len()).map(|i| format!("s{i}")).collect();
    if let Some(n) = names.iter().find(|n| base.contains(n)) {
        return Err(Error::InvalidArgument(format!("parameter name `{n}` already in use")));
    }
    let ring = base.extend(&names);
    let e0e = e0.embed(&ring)?;
    let none: [&str; 0] = [];
    ContactFamily::contact(&e0e, &none, None)?;
    let y = Poly::named(&ring, Y)?;
    let mut e = e0e;
    for (name, fi) in names.iter().zip(basis) {
        let s = Poly::named(&ring, name)?;
        e = &e + &(&(&s * &y) * &fi.embed(&ring)?);
    }
    ContactFamily::contact(&e, &names, None)
}
