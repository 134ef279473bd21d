//! Gröbner-stratum charts of Hilbert schemes of points, relative Hilbert
//! scheme equations of a family, and the z-lifts into three-space.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::ideal::{affine_dimension, staircase, DEFAULT_MAX_STANDARD};
use crate::algebra::linalg::{solve_affine, MatrixQ};
use crate::algebra::ring::{Monomial, Ring, Q};
use crate::algebra::{GroebnerBasis, OrderKind, Poly, TermOrder};
use crate::error::{Error, Result};
use crate::family::{ContactFamily, FamilyKind, X, Y, Z};
use crate::par::Exec;
use crate::sample;

/// Default chart coordinate names, in the order they are handed out.
const DEFAULT_NAMES: &[&str] = &[
    "k", "l", "m", "n", "o", "p", "q", "r", "u", "v", "a", "b", "c", "d", "e", "f", "g", "h",
];

/// Monic generators `(leading monomial, tail)` grouped by geometric monomial.
#[derive(Clone, Debug)]
struct Reducer {
    lm: Monomial,
    tail: Vec<(Monomial, Poly)>,
}

fn reducers(gens: &[Poly], lms: &[Monomial], geo: &[usize]) -> Vec<Reducer> {
    gens.iter()
        .zip(lms)
        .map(|(g, lm)| {
            let grouped = g.coefficients_in(geo);
            debug_assert!(grouped.get(lm).is_some_and(|c| c.as_constant().is_some_and(|v| v.is_one())), "generator not monic");
            Reducer {
                lm: lm.clone(),
                tail: grouped.into_iter().filter(|(m, _)| m != lm).collect(),
            }
        })
        .collect()
}

/// Full reduction of `p` by monic generators whose leading monomials involve
/// only geometric variables; coefficients in the other variables are carried
/// along. Returns the remainder grouped by geometric monomial.
fn reduce_parametric(
    p: &Poly,
    reds: &[Reducer],
    geo: &[usize],
    order: &TermOrder,
) -> BTreeMap<Monomial, Poly> {
    let mut rem = p.coefficients_in(geo);
    loop {
        let target = rem
            .keys()
            .filter(|k| reds.iter().any(|r| r.lm.divides(k)))
            .max_by(|a, b| order.cmp(a, b))
            .cloned();
        let Some(t) = target else {
            return rem;
        };
        let c = rem.remove(&t).unwrap();
        let red = reds.iter().find(|r| r.lm.divides(&t)).unwrap();
        let mult = t.div(&red.lm).unwrap();
        for (gm, gc) in &red.tail {
            let key = gm.mul(&mult);
            let entry = rem.entry(key.clone()).or_insert_with(|| Poly::zero(p.ring()));
            *entry = &*entry - &(&c * gc);
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
    }
}

fn geo_indices(ring: &Ring, names: &[String]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| ring.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
        .collect()
}

/// Gröbner stratum chart: ideals with fixed leading-term staircase `M`.
#[derive(Clone, Debug)]
pub struct GroebnerStratumChart {
    ring: Ring,
    geo_names: Vec<String>,
    order: TermOrder,
    minimal: Vec<Monomial>,
    standard: Vec<Monomial>,
    params: Vec<String>,
    generators: Vec<Poly>,
    stratum: Vec<Poly>,
}

impl GroebnerStratumChart {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn colength(&self) -> usize {
        self.standard.len()
    }

    pub fn geometric_names(&self) -> &[String] {
        &self.geo_names
    }

    /// Minimal generators of `M`, descending in the order.
    pub fn staircase(&self) -> &[Monomial] {
        &self.minimal
    }

    /// Standard monomials, ascending in the order.
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn stratum_equations(&self) -> &[Poly] {
        &self.stratum
    }

    pub fn param_indices(&self) -> Vec<usize> {
        self.params.iter().map(|n| self.ring.index_of(n).unwrap()).collect()
    }

    /// Dimension of the stratum in the space of chart coordinates; `None` if
    /// the stratum is empty.
    pub fn stratum_dimension(&self) -> Option<usize> {
        let idx = self.param_indices();
        let sub = Ring::new(self.params.iter().cloned());
        let eqs: Vec<Poly> = self.stratum.iter().map(|e| e.embed(&sub).unwrap()).collect();
        let vars: Vec<usize> = (0..idx.len()).collect();
        affine_dimension(&sub, &eqs, &vars)
    }

    /// Generic generators specialized at chart coordinates `c`.
    pub fn specialize(&self, c: &[Q]) -> Vec<Poly> {
        let subs: Vec<(usize, Q)> = self.param_indices().into_iter().zip(c.iter().cloned()).collect();
        self.generators.iter().map(|g| g.evaluate(&subs)).collect()
    }

    pub fn label(&self) -> String {
        let m: Vec<String> = self.minimal.iter().map(|m| m.display(&self.ring)).collect();
        format!("<{}> {}", m.join(", "), self.order.describe(&self.ring))
    }
}

/// Build the chart of `M` (given by monomials in the geometric variables
/// `geo`) under `order`. Coordinates are named from `names`, or from a default
/// alphabet skipping names already present in the ring.
pub fn generic_chart(
    monomials: &[Poly],
    order: &TermOrder,
    geo: &[&str],
    names: Option<&[String]>,
) -> Result<GroebnerStratumChart> {
    let base = monomials
        .first()
        .map(|p| p.ring().clone())
        .ok_or_else(|| Error::InvalidArgument("empty monomial ideal".into()))?;
    let geo_names: Vec<String> = geo.iter().map(|s| s.to_string()).collect();
    let geo_idx = geo_indices(&base, &geo_names)?;
    let mut gens: Vec<Monomial> = Vec::new();
    for p in monomials {
        if p.num_terms() != 1 {
            return Err(Error::InvalidArgument(format!("{p} is not a monomial")));
        }
        let (m, _) = p.terms().next().unwrap();
        if m.support().any(|v| !geo_idx.contains(&v)) {
            return Err(Error::InvalidArgument(format!("{p} involves a non-geometric variable")));
        }
        gens.push(m.clone());
    }
    // Minimal generators, descending.
    let mut minimal: Vec<Monomial> = gens
        .iter()
        .enumerate()
        .filter(|(i, m)| {
            !gens
                .iter()
                .enumerate()
                .any(|(j, o)| o.divides(m) && (o != *m || j < *i))
        })
        .map(|(_, m)| m.clone())
        .collect();
    minimal.sort_by(|a, b| order.cmp(b, a));
    let mut standard = staircase(&minimal, base.nvars(), &geo_idx, DEFAULT_MAX_STANDARD)?.monomials;
    standard.sort_by(|a, b| order.cmp(a, b));

    let slots: Vec<(usize, usize)> = minimal
        .iter()
        .enumerate()
        .flat_map(|(j, m)| {
            standard
                .iter()
                .enumerate()
                .rev()
                .filter(move |(_, b)| order.cmp(b, m).is_lt())
                .map(move |(bi, _)| (j, bi))
        })
        .collect();
    let params: Vec<String> = match names {
        Some(n) => {
            if n.len() != slots.len() {
                return Err(Error::InvalidArgument(format!(
                    "chart needs {} coordinate names, got {}",
                    slots.len(),
                    n.len()
                )));
            }
            n.to_vec()
        }
        None => default_names(&base, slots.len()),
    };
    if let Some(clash) = params.iter().find(|n| base.contains(n)) {
        return Err(Error::InvalidArgument(format!("chart coordinate `{clash}` already in use")));
    }
    let ring = base.extend(&params);
    let order = order.transport(&base, &ring);
    let embed_m = |m: &Monomial| {
        let mut e = m.exponents().to_vec();
        e.resize(ring.nvars(), 0);
        Monomial::from_exponents(e)
    };
    let minimal: Vec<Monomial> = minimal.iter().map(embed_m).collect();
    let standard: Vec<Monomial> = standard.iter().map(embed_m).collect();
    let mut generators: Vec<Poly> = minimal.iter().map(|m| Poly::term(&ring, m.clone(), Q::one())).collect();
    for ((j, bi), name) in slots.iter().zip(&params) {
        let c = Poly::named(&ring, name)?;
        let b = Poly::term(&ring, standard[*bi].clone(), Q::one());
        generators[*j] = &generators[*j] - &(&c * &b);
    }
    let geo_idx = geo_indices(&ring, &geo_names)?;
    let stratum = stratum_equations(&generators, &minimal, &geo_idx, &order);
    Ok(GroebnerStratumChart {
        ring,
        geo_names,
        order,
        minimal,
        standard,
        params,
        generators,
        stratum,
    })
}

fn default_names(base: &Ring, count: usize) -> Vec<String> {
    let reserved = [X, Y, Z, "s", "t"];
    let mut out: Vec<String> = DEFAULT_NAMES
        .iter()
        .filter(|n| !base.contains(n) && !reserved.contains(n))
        .map(|n| n.to_string())
        .take(count)
        .collect();
    let mut i = 1;
    while out.len() < count {
        let n = format!("c{i}");
        if !base.contains(&n) {
            out.push(n);
        }
        i += 1;
    }
    out
}

/// Coefficients of the S-polynomial residues, made primitive and deduplicated.
fn stratum_equations(gens: &[Poly], lms: &[Monomial], geo: &[usize], order: &TermOrder) -> Vec<Poly> {
    let reds = reducers(gens, lms, geo);
    let mut out: Vec<Poly> = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let l = lms[i].lcm(&lms[j]);
            let one = Q::one();
            let s = &gens[i].mul_monomial(&l.div(&lms[i]).unwrap(), &one)
                - &gens[j].mul_monomial(&l.div(&lms[j]).unwrap(), &one);
            for (_, c) in reduce_parametric(&s, &reds, geo, order) {
                let (_, prim) = c.primitive(order);
                if !out.contains(&prim) {
                    out.push(prim);
                }
            }
        }
    }
    out
}

/// Equations of `{(λ, c) : E_λ ∈ ⟨generic generators at c⟩}` on a chart.
#[derive(Clone, Debug)]
pub struct RelativeHilbEquations {
    pub ring: Ring,
    /// Coefficients of the residue on the standard monomials, then the
    /// stratum equations.
    pub equations: Vec<Poly>,
    pub coefficient_of: Vec<String>,
    pub stratum_count: usize,
    pub chart: String,
}

/// Residue coefficients of `p` modulo explicit monic generators with the
/// given geometric leading monomials, on the staircase complement.
pub fn residue_coefficients(
    p: &Poly,
    generators: &[Poly],
    geo: &[&str],
    order: &TermOrder,
) -> Result<(Vec<Monomial>, Vec<Poly>)> {
    let ring = p.ring().clone();
    let geo_names: Vec<String> = geo.iter().map(|s| s.to_string()).collect();
    let geo_idx = geo_indices(&ring, &geo_names)?;
    let gens: Vec<Poly> = generators.iter().map(|g| g.embed(&ring)).collect::<Result<_>>()?;
    let mut lms = Vec::new();
    for g in &gens {
        let grouped = g.coefficients_in(&geo_idx);
        let lm = grouped
            .keys()
            .max_by(|a, b| order.cmp(a, b))
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("zero generator".into()))?;
        if !grouped[&lm].as_constant().is_some_and(|v| v.is_one()) {
            return Err(Error::InvalidArgument(format!(
                "generator {g} is not monic in its geometric leading monomial"
            )));
        }
        lms.push(lm);
    }
    let mut standard = staircase(&lms, ring.nvars(), &geo_idx, DEFAULT_MAX_STANDARD)?.monomials;
    standard.sort_by(|a, b| order.cmp(a, b));
    let reds = reducers(&gens, &lms, &geo_idx);
    let rem = reduce_parametric(p, &reds, &geo_idx, order);
    let coeffs = standard
        .iter()
        .map(|b| rem.get(b).cloned().unwrap_or_else(|| Poly::zero(&ring)))
        .collect();
    Ok((standard, coeffs))
}

pub fn relative_hilb_equations(
    fam: &ContactFamily,
    chart: &GroebnerStratumChart,
) -> Result<RelativeHilbEquations> {
    let ring = fam.ring().union(chart.ring());
    let e = fam.e().embed(&ring)?;
    let order = chart.order().transport(chart.ring(), &ring);
    let gens: Vec<Poly> = chart.generators().iter().map(|g| g.embed(&ring)).collect::<Result<_>>()?;
    let geo: Vec<&str> = chart.geometric_names().iter().map(String::as_str).collect();
    let (standard, mut equations) = residue_coefficients(&e, &gens, &geo, &order)?;
    let stratum_count = chart.stratum_equations().len();
    for s in chart.stratum_equations() {
        equations.push(s.embed(&ring)?);
    }
    Ok(RelativeHilbEquations {
        coefficient_of: standard.iter().map(|m| m.display(&ring)).collect(),
        ring,
        equations,
        stratum_count,
        chart: chart.label(),
    })
}

/// `p` after substituting `v_i -> num_i / denom`, multiplied by `denom^D`
/// where `D` is the total degree of `p` in the substituted variables.
pub fn pullback_cleared(p: &Poly, subs: &[(usize, Poly)], denom: &Poly) -> Poly {
    let vars: Vec<usize> = subs.iter().map(|(v, _)| *v).collect();
    let d = p.degree_in_vars(&vars).unwrap_or(0);
    let ring = p.ring();
    let mut out = Poly::zero(ring);
    for (m, c) in p.terms() {
        let mut t = Poly::term(ring, m.drop_vars(&vars), c.clone());
        for (v, num) in subs {
            t = &t * &num.pow(m.exp(*v));
        }
        t = &t * &denom.pow(d - m.degree_in(&vars));
        out = &out + &t;
    }
    out
}

/// `⟨A⟩ = ⟨B⟩` after inverting `unit`, by mutual membership in the ring
/// extended with `T` and the relation `T * unit - 1`.
pub fn ideal_equal_localized(a: &[Poly], b: &[Poly], unit: &Poly) -> bool {
    let ring = unit.ring();
    let t_name = ring.fresh_name("T");
    let ext = ring.extend(&[t_name.as_str()]);
    let t = Poly::named(&ext, &t_name).unwrap();
    let rel = &(&t * &unit.embed(&ext).unwrap()) - &Poly::one(&ext);
    let order = TermOrder::degrevlex(&ext);
    let lift = |gens: &[Poly]| -> GroebnerBasis {
        let mut g: Vec<Poly> = gens.iter().map(|p| p.embed(&ext).unwrap()).collect();
        g.push(rel.clone());
        GroebnerBasis::compute(&ext, &g, &order)
    };
    let ga = lift(a);
    let gb = lift(b);
    b.iter().all(|p| ga.contains(&p.embed(&ext).unwrap()))
        && a.iter().all(|p| gb.contains(&p.embed(&ext).unwrap()))
}

/// `yz + x^(n+1)`, the `A_n` surface, in the ring `x, y, z`.
pub fn an_surface(n: u32) -> Poly {
    let ring = Ring::new([X, Y, Z]);
    let x = Poly::var(&ring, 0);
    let y = Poly::var(&ring, 1);
    let z = Poly::var(&ring, 2);
    &(&y * &z) + &x.pow(n + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    /// Graph relation `f - z g`.
    L,
    /// Graph relation `z - E`.
    LPrime,
}

/// An ideal lifted to three-space by a graph relation.
#[derive(Clone, Debug)]
pub struct LiftedIdeal {
    pub ring: Ring,
    pub generators: Vec<Poly>,
    pub kind: LiftKind,
    /// `z` coordinate of the completion point.
    pub z0: Q,
}

impl LiftedIdeal {
    /// Generators with `z -> z + z0`, putting the completion point at the origin.
    pub fn translated(&self) -> Vec<Poly> {
        let zi = self.ring.index_of(Z).unwrap();
        let shift = &Poly::var(&self.ring, zi) + &Poly::constant(&self.ring, self.z0.clone());
        self.generators.iter().map(|g| g.substitute(&[(zi, shift.clone())])).collect()
    }

    /// The target surface: `yz + x^w` for `L`, `z` for `L'`.
    pub fn target(&self, w: Option<u32>) -> Poly {
        let v = |n: &str| Poly::named(&self.ring, n).unwrap();
        match self.kind {
            LiftKind::L => &(&v(Y) * &v(Z)) + &v(X).pow(w.expect("contact order")),
            LiftKind::LPrime => v(Z),
        }
    }
}

fn lift_ring(fam: &ContactFamily, gens: &[Poly]) -> Ring {
    let mut ring = fam.ring().clone();
    for g in gens {
        ring = ring.union(g.ring());
    }
    ring.extend(&[Z])
}

/// `I + ⟨f_λ - z g_λ⟩` for a contact family.
pub fn lift_l(fam: &ContactFamily, gens: &[Poly]) -> Result<LiftedIdeal> {
    let (f, g) = match fam.kind() {
        FamilyKind::Contact { f, g, .. } => (f, g),
        FamilyKind::Interior => return Err(Error::WrongKind { expected: "contact" }),
    };
    let ring = lift_ring(fam, gens);
    let z = Poly::named(&ring, Z)?;
    let mut out: Vec<Poly> = gens.iter().map(|p| p.embed(&ring)).collect::<Result<_>>()?;
    let fe = f.embed(&ring)?;
    let ge = g.embed(&ring)?;
    out.push(&fe - &(&z * &ge));
    let z0 = fam.at_origin(f).constant_term() / fam.at_origin(g).constant_term();
    Ok(LiftedIdeal {
        ring,
        generators: out,
        kind: LiftKind::L,
        z0,
    })
}

/// `I + ⟨z - E_λ⟩` for an interior family. The completion point is
/// `z0 = E_0(0)`.
pub fn lift_lprime(fam: &ContactFamily, gens: &[Poly]) -> Result<LiftedIdeal> {
    if fam.is_contact() {
        return Err(Error::WrongKind { expected: "interior" });
    }
    let ring = lift_ring(fam, gens);
    let z = Poly::named(&ring, Z)?;
    let mut out: Vec<Poly> = gens.iter().map(|p| p.embed(&ring)).collect::<Result<_>>()?;
    out.push(&z - &fam.e().embed(&ring)?);
    Ok(LiftedIdeal {
        ring,
        generators: out,
        kind: LiftKind::LPrime,
        // nonzero only for fibers that miss the origin, e.g. sampled specializations
        z0: fam.e0().constant_term(),
    })
}

/// The lift matching the family's kind.
pub fn lift(fam: &ContactFamily, gens: &[Poly]) -> Result<LiftedIdeal> {
    if fam.is_contact() {
        lift_l(fam, gens)
    } else {
        lift_lprime(fam, gens)
    }
}

/// Outcome at one sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleOutcome {
    pub point: Vec<(String, Q)>,
    pub on_locus: bool,
    pub in_ideal: bool,
    pub target_in_lift: bool,
    pub roundtrip: bool,
    /// `Some(agree)` when equations were supplied for cross-checking.
    pub equations_agree: Option<bool>,
}

impl SampleOutcome {
    pub fn ok(&self) -> bool {
        self.in_ideal == self.target_in_lift && self.roundtrip && self.equations_agree != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub seed: u64,
    pub requested: usize,
    pub outcomes: Vec<SampleOutcome>,
    /// Samples abandoned because no admissible point was found.
    pub rejected: usize,
}

impl EquivalenceReport {
    pub fn counterexamples(&self) -> Vec<&SampleOutcome> {
        self.outcomes.iter().filter(|o| !o.ok()).collect()
    }

    pub fn holds(&self) -> bool {
        self.counterexamples().is_empty()
    }

    pub fn on_locus(&self) -> usize {
        self.outcomes.iter().filter(|o| o.in_ideal).count()
    }

    pub fn roundtrip_failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.roundtrip).count()
    }
}

pub type LiftFn = dyn Fn(&ContactFamily, &[Poly]) -> Result<LiftedIdeal> + Sync;

#[derive(Clone, Copy, Debug)]
pub struct EquivalenceOptions {
    pub samples: usize,
    pub seed: u64,
    pub exec: Exec,
    /// Attempts per sample before it counts as rejected.
    pub attempts: usize,
}

impl EquivalenceOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        EquivalenceOptions {
            samples,
            seed,
            exec: Exec::default(),
            attempts: 20,
        }
    }
}

fn in_ideal(p: &Poly, gens: &[Poly]) -> bool {
    if gens.is_empty() {
        return p.is_zero();
    }
    GroebnerBasis::compute(p.ring(), gens, &TermOrder::degrevlex(p.ring())).contains(p)
}

/// Values for the family parameters putting `E_λ` into `⟨gens⟩`, when the
/// membership conditions are affine-linear in `λ`.
fn solve_on_locus<R: rand::Rng>(
    e: &Poly,
    gens: &[Poly],
    lambda: &[usize],
    rng: &mut R,
) -> Option<Vec<Q>> {
    let ring = e.ring();
    if gens.is_empty() {
        return None;
    }
    let gb = GroebnerBasis::compute(ring, gens, &TermOrder::degrevlex(ring));
    if gb.is_unit_ideal() {
        return None;
    }
    let r = gb.normal_form(e);
    let others: Vec<usize> = (0..ring.nvars()).filter(|v| !lambda.contains(v)).collect();
    let rows: Vec<Poly> = r.coefficients_in(&others).into_values().collect();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for row in &rows {
        if row.degree_in_vars(lambda).unwrap_or(0) > 1 {
            return None;
        }
        a.push(lambda.iter().map(|&v| row.coeff(&Monomial::var(ring.nvars(), v, 1))).collect::<Vec<_>>());
        b.push(-row.constant_term());
    }
    let m = if a.is_empty() {
        MatrixQ::zeros(0, lambda.len())
    } else {
        MatrixQ::from_rows(a)
    };
    let (mut x, kernel) = solve_affine(&m, &b)?;
    for k in kernel {
        let c = sample::rational(rng, sample::SAMPLE_BOUND);
        for (xi, ki) in x.iter_mut().zip(k) {
            *xi += &c * ki;
        }
    }
    Some(x)
}

/// Check `[target ∈ lift(I)] ⟺ [E_λ ∈ I]` at seeded rational specializations
/// of every parameter (family parameters and the coordinates appearing in
/// `gens`). Odd-numbered samples are steered onto the locus `E_λ ∈ I` when the
/// membership conditions are linear in `λ`. Samples where `g_λ` is not a unit
/// modulo `I` are redrawn. If `equations` is given, their vanishing at the
/// sample is compared with `E_λ ∈ I` as well.
pub fn verify_membership_equivalence(
    fam: &ContactFamily,
    gens: &[Poly],
    equations: Option<&[Poly]>,
    opts: &EquivalenceOptions,
    lift_fn: &LiftFn,
) -> Result<EquivalenceReport> {
    let mut ring = fam.ring().clone();
    for g in gens.iter().chain(equations.unwrap_or(&[])) {
        ring = ring.union(g.ring());
    }
    let fam = fam.embed(&ring)?;
    let gens: Vec<Poly> = gens.iter().map(|g| g.embed(&ring)).collect::<Result<_>>()?;
    let equations: Option<Vec<Poly>> = equations
        .map(|es| es.iter().map(|e| e.embed(&ring)).collect::<Result<_>>())
        .transpose()?;
    let (x, y) = (fam.x(), fam.y());
    let lambda = fam.param_indices().to_vec();
    let coords: Vec<usize> = (0..ring.nvars())
        .filter(|&v| v != x && v != y && !lambda.contains(&v))
        .filter(|&v| gens.iter().any(|g| g.involves(v)))
        .collect();
    if let Some(v) = (0..ring.nvars()).find(|&v| {
        v != x && v != y && !lambda.contains(&v) && !coords.contains(&v) && fam.e().involves(v)
    }) {
        return Err(Error::InvalidArgument(format!("unassigned variable `{}`", ring.name(v))));
    }
    let w = fam.w().ok();

    let run = |i: &usize| -> Option<SampleOutcome> {
        for attempt in 0..opts.attempts {
            let mut rng = sample::rng(sample::sub_seed(opts.seed, &format!("sample {i} attempt {attempt}")));
            let cvals: Vec<(usize, Q)> = coords
                .iter()
                .map(|&v| (v, sample::rational(&mut rng, sample::SAMPLE_BOUND)))
                .collect();
            let gens_c: Vec<Poly> = gens.iter().map(|g| g.evaluate(&cvals)).collect();
            let steer = i % 2 == 1;
            let lvals: Vec<Q> = match steer.then(|| solve_on_locus(&fam.e().evaluate(&cvals), &gens_c, &lambda, &mut rng)).flatten() {
                Some(v) => v,
                None => lambda.iter().map(|_| sample::rational(&mut rng, sample::SAMPLE_BOUND)).collect(),
            };
            let Ok(spec) = fam.specialize(&lvals) else { continue };
            let spec = spec.embed(&ring).ok()?;
            if let Ok(g) = spec.g() {
                let mut with_g = gens_c.clone();
                with_g.push(g.clone());
                if !in_ideal(&Poly::one(&ring), &with_g) {
                    continue;
                }
            }
            let lifted = lift_fn(&spec, &gens_c).ok()?;
            let target = lifted.target(w);
            let lifted_has = in_ideal(&target, &lifted.generators);
            let member = in_ideal(spec.e(), &gens_c);
            let roundtrip = elimination_roundtrip(&lifted, &gens_c);
            let mut point: Vec<(String, Q)> = lambda
                .iter()
                .zip(&lvals)
                .map(|(&v, q)| (ring.name(v).to_string(), q.clone()))
                .collect();
            point.extend(cvals.iter().map(|(v, q)| (ring.name(*v).to_string(), q.clone())));
            let equations_agree = equations.as_ref().map(|es| {
                let mut all = cvals.clone();
                all.extend(lambda.iter().copied().zip(lvals.iter().cloned()));
                let vanish = es.iter().all(|e| e.evaluate(&all).is_zero());
                vanish == member
            });
            return Some(SampleOutcome {
                point,
                on_locus: steer,
                in_ideal: member,
                target_in_lift: lifted_has,
                roundtrip,
                equations_agree,
            });
        }
        None
    };
    let idx: Vec<usize> = (0..opts.samples).collect();
    let results = opts.exec.map(&idx, run);
    let rejected = results.iter().filter(|r| r.is_none()).count();
    Ok(EquivalenceReport {
        seed: opts.seed,
        requested: opts.samples,
        outcomes: results.into_iter().flatten().collect(),
        rejected,
    })
}

/// Eliminating `z` from the lifted ideal gives back `⟨gens⟩`.
pub fn elimination_roundtrip(lifted: &LiftedIdeal, gens: &[Poly]) -> bool {
    let ring = &lifted.ring;
    let zi = ring.index_of(Z).unwrap();
    let order = TermOrder::with_priority(OrderKind::Lex, ring, &[Z]).unwrap();
    let full = GroebnerBasis::compute(ring, &lifted.generators, &order);
    let eliminated: Vec<Poly> = full.generators().iter().filter(|g| !g.involves(zi)).cloned().collect();
    let base: Vec<Poly> = gens.iter().map(|g| g.embed(ring).unwrap()).filter(|g| !g.is_zero()).collect();
    match (eliminated.is_empty(), base.is_empty()) {
        (true, true) => true,
        (true, false) | (false, true) => false,
        (false, false) => {
            let a = GroebnerBasis::compute(ring, &eliminated, &order);
            let b = GroebnerBasis::compute(ring, &base, &order);
            a.generators() == b.generators()
        }
    }
}
