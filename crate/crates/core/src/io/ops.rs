//! Named operations over an environment of declared objects. The job runner
//! and the command-line front end both dispatch through [`run`].

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{GroebnerBasis, Poly, Ring, TermOrder, Q};
use crate::charts::{
    generic_chart, ideal_equal_localized, lift, lift_l, lift_lprime, pullback_cleared, relative_hilb_equations,
    residue_coefficients, verify_membership_equivalence, EquivalenceOptions, GroebnerStratumChart, LiftKind,
    LiftedIdeal,
};
use crate::error::{Error, Result};
use crate::family::{ContactFamily, X, Y, Z};
use crate::geometry::{
    all_vanish, jacobian_rank, nested_singularity_report, singular_locus_ideal, solve_for, variety_equal, AffineScheme,
};
use crate::io::format;
use crate::io::parse::{parse_poly, parse_poly_with, split_list};
use crate::local::{delta_invariant, local_colength, milnor_number_capped, tjurina_number_capped, LocalIdeal, TRUNCATION_CAP};
use crate::nondegeneracy::{check_condition_star, check_relaxed_condition, delta_map, phi_map, psi_map, PhiReport};
use crate::par::Exec;
use crate::sample;

/// Every operation name accepted by [`run`].
pub const OPS: &[&str] = &[
    "gb",
    "nf",
    "colength",
    "prepare",
    "phi",
    "delta",
    "psi",
    "star",
    "relaxed",
    "chart",
    "hilb-eq",
    "lift",
    "lift-prime",
    "verify-corr",
    "sing",
    "tangent",
    "variety-eq",
    "milnor",
    "tjurina",
    "delta-inv",
    "nested",
    "localized-eq",
    "pullback",
    "same-up-to-scalar",
];

/// An argument value: source text, or polynomials produced by another task.
#[derive(Clone, Debug)]
pub enum Arg {
    Text(String),
    Polys(Vec<Poly>),
}

pub type Args = BTreeMap<String, Arg>;

/// Result of one operation: its JSON value and the polynomials it hands on to
/// dependent tasks.
#[derive(Clone, Debug)]
pub struct Output {
    pub value: Value,
    pub polys: Vec<Poly>,
}

impl Output {
    fn new(value: Value) -> Self {
        Output { value, polys: Vec::new() }
    }

    fn with_polys(value: Value, polys: Vec<Poly>) -> Self {
        Output { value, polys }
    }
}

/// Declared objects shared (read-only) by all operations.
#[derive(Clone, Debug)]
pub struct Env {
    pub ring: Ring,
    pub params: Vec<String>,
    pub polys: BTreeMap<String, Poly>,
    pub ideals: BTreeMap<String, Vec<Poly>>,
    pub families: BTreeMap<String, ContactFamily>,
    pub charts: BTreeMap<String, GroebnerStratumChart>,
    pub seed: u64,
    pub trunc: u32,
    pub exec: Exec,
}

impl Env {
    pub fn new(ring: Ring) -> Self {
        Env {
            ring,
            params: Vec::new(),
            polys: BTreeMap::new(),
            ideals: BTreeMap::new(),
            families: BTreeMap::new(),
            charts: BTreeMap::new(),
            seed: 0,
            trunc: crate::local::DEFAULT_TRUNCATION,
            exec: Exec::default(),
        }
    }

    fn defs(&self) -> HashMap<String, Poly> {
        self.polys.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn parse(&self, src: &str) -> Result<Poly> {
        parse_poly_with(src, &self.ring, &self.defs())
    }

    pub fn parse_list(&self, src: &str) -> Result<Vec<Poly>> {
        split_list(src).into_iter().map(|s| self.parse(s)).collect()
    }

    pub fn declare_poly(&mut self, name: &str, src: &str) -> Result<()> {
        let p = self.parse(src)?;
        self.polys.insert(name.to_string(), p);
        Ok(())
    }

    pub fn declare_ideal(&mut self, name: &str, src: &str) -> Result<()> {
        let gens = self.parse_list(src)?;
        self.ideals.insert(name.to_string(), gens);
        Ok(())
    }

    /// `kind` is `contact` (default) or `interior`; the parameters are the
    /// declared ones.
    pub fn declare_family(&mut self, name: &str, kind: &str, src: &str) -> Result<()> {
        let e = self.parse(src)?;
        let fam = match kind {
            "contact" => ContactFamily::contact(&e, &self.params, None)?,
            "interior" => ContactFamily::interior(&e, &self.params)?,
            other => return Err(Error::InvalidArgument(format!("unknown family kind `{other}`"))),
        };
        self.families.insert(name.to_string(), fam);
        Ok(())
    }

    /// Build a chart and add its coordinates to the ring.
    pub fn declare_chart(&mut self, name: &str, monomials: &str, order: &str, names: Option<Vec<String>>) -> Result<()> {
        let chart = build_chart(&self.ring, &self.parse_list(monomials)?, order, names, None)?;
        self.ring = self.ring.union(chart.ring());
        self.charts.insert(name.to_string(), chart);
        Ok(())
    }

    /// Re-express every declared object in the current ring.
    pub fn finalize(&mut self) -> Result<()> {
        let ring = self.ring.clone();
        for p in self.polys.values_mut() {
            *p = p.embed(&ring)?;
        }
        for gens in self.ideals.values_mut() {
            for g in gens.iter_mut() {
                *g = g.embed(&ring)?;
            }
        }
        for f in self.families.values_mut() {
            *f = f.embed(&ring)?;
        }
        Ok(())
    }
}

fn build_chart(
    ring: &Ring,
    monomials: &[Poly],
    order: &str,
    names: Option<Vec<String>>,
    geo: Option<Vec<String>>,
) -> Result<GroebnerStratumChart> {
    let order = TermOrder::parse(order, ring)?;
    let geo = geo.unwrap_or_else(|| vec![X.to_string(), Y.to_string()]);
    let geo: Vec<&str> = geo.iter().map(String::as_str).collect();
    generic_chart(monomials, &order, &geo, names.as_deref())
}

/// Typed access to the arguments of one invocation.
struct Call<'a> {
    env: &'a Env,
    args: &'a Args,
    seed: u64,
}

fn missing(key: &str) -> Error {
    Error::InvalidArgument(format!("missing argument `{key}`"))
}

impl<'a> Call<'a> {
    fn has(&self, key: &str) -> bool {
        self.args.contains_key(key)
    }

    fn text(&self, key: &str) -> Result<Option<&'a str>> {
        match self.args.get(key) {
            None => Ok(None),
            Some(Arg::Text(s)) => Ok(Some(s.as_str())),
            Some(Arg::Polys(_)) => Err(Error::InvalidArgument(format!("`{key}` expects text, not a task result"))),
        }
    }

    fn names(&self, key: &str) -> Result<Option<Vec<String>>> {
        Ok(self.text(key)?.map(|s| {
            split_list(s)
                .into_iter()
                .filter(|n| !n.is_empty())
                .map(str::to_string)
                .collect()
        }))
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.text(key)?
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("`{key}` expects a number, got `{s}`")))
            })
            .transpose()
    }

    fn poly(&self, key: &str) -> Result<Poly> {
        match self.args.get(key).ok_or_else(|| missing(key))? {
            Arg::Polys(ps) if ps.len() == 1 => Ok(ps[0].clone()),
            Arg::Polys(ps) => Err(Error::InvalidArgument(format!(
                "`{key}` expects one polynomial, the referenced result has {}",
                ps.len()
            ))),
            Arg::Text(s) => {
                if let Some(f) = self.env.families.get(s.trim()) {
                    return Ok(f.e().clone());
                }
                self.env.parse(s)
            }
        }
    }

    fn polys(&self, key: &str) -> Result<Vec<Poly>> {
        match self.args.get(key).ok_or_else(|| missing(key))? {
            Arg::Polys(ps) => Ok(ps.clone()),
            Arg::Text(s) => {
                let t = s.trim();
                if let Some(i) = self.env.ideals.get(t) {
                    return Ok(i.clone());
                }
                if let Some(c) = self.env.charts.get(t) {
                    return c.generators().iter().map(|g| g.embed(&self.env.ring)).collect();
                }
                if t.is_empty() {
                    return Ok(Vec::new());
                }
                self.env.parse_list(t)
            }
        }
    }

    fn order(&self, default_lex: bool) -> Result<TermOrder> {
        match self.text("order")? {
            Some(s) => TermOrder::parse(s, &self.env.ring),
            None if default_lex => Ok(TermOrder::lex(&self.env.ring)),
            None => Ok(TermOrder::degrevlex(&self.env.ring)),
        }
    }

    fn family(&self) -> Result<ContactFamily> {
        self.family_at("family")
    }

    fn family_at(&self, key: &str) -> Result<ContactFamily> {
        match self.args.get(key).ok_or_else(|| missing(key))? {
            Arg::Text(s) if self.env.families.contains_key(s.trim()) => Ok(self.env.families[s.trim()].clone()),
            _ => {
                let e = self.poly(key)?;
                let params: Vec<&String> = self.env.params.iter().collect();
                match self.text("kind")? {
                    Some("interior") => ContactFamily::interior(&e, &params),
                    None | Some("contact") => ContactFamily::contact(&e, &params, self.number("w")?),
                    Some(k) => Err(Error::InvalidArgument(format!("unknown family kind `{k}`"))),
                }
            }
        }
    }

    /// Local ideal at the origin of the `vars` (default `x, y`).
    fn local_ideal(&self, key: &str) -> Result<LocalIdeal> {
        let gens = self.polys(key)?;
        let vars = self.names("vars")?.unwrap_or_else(|| vec![X.into(), Y.into()]);
        let idx = vars
            .iter()
            .map(|n| self.env.ring.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        let trunc = self.env.trunc;
        Ok(LocalIdeal::new(&self.env.ring, idx, gens)?.with_truncation(trunc, trunc.max(TRUNCATION_CAP)))
    }

    fn chart(&self) -> Result<GroebnerStratumChart> {
        let key = "chart";
        if let Some(Arg::Text(s)) = self.args.get(key) {
            if let Some(c) = self.env.charts.get(s.trim()) {
                return Ok(c.clone());
            }
        }
        let monos = self.polys(key)?;
        build_chart(
            &self.env.ring,
            &monos,
            self.text("order")?.unwrap_or("lex"),
            self.names("names")?,
            self.names("geo")?,
        )
    }

    /// Scheme on the variables listed in `vars`, or on those its equations
    /// involve.
    fn scheme(&self, key: &str) -> Result<AffineScheme> {
        let eqs = self.polys(key)?;
        let ring = &self.env.ring;
        let vars: Vec<String> = match self.names("vars")? {
            Some(v) => v,
            None => {
                let mut used: Vec<usize> = eqs.iter().flat_map(|e| e.support_vars()).collect();
                used.sort_unstable();
                used.dedup();
                used.into_iter().map(|v| ring.name(v).to_string()).collect()
            }
        };
        let sub = Ring::new(vars);
        let eqs = eqs.iter().map(|e| e.embed(&sub)).collect::<Result<Vec<_>>>()?;
        let codim = self.number::<usize>("codim")?.or(Some(eqs.len()));
        AffineScheme::new(eqs, codim)
    }

    fn rational(src: &str) -> Result<Q> {
        parse_poly(src, &Ring::new(Vec::<String>::new()))?
            .as_constant()
            .ok_or_else(|| Error::InvalidArgument(format!("`{src}` is not a rational number")))
    }

    /// A point of the scheme from `point`: either positional values, or
    /// `name=value` assignments where `?` draws a seeded random value and
    /// unassigned coordinates are solved from the (then linear) equations.
    fn point(&self, s: &AffineScheme) -> Result<Vec<Q>> {
        let src = self.text("point")?.ok_or_else(|| missing("point"))?;
        let items = split_list(src);
        let n = s.ring.nvars();
        if !src.contains('=') {
            if items.len() != n {
                return Err(Error::InvalidArgument(format!("point needs {n} coordinates")));
            }
            return items.iter().map(|v| Self::rational(v)).collect();
        }
        let mut rng = sample::rng(sample::sub_seed(self.seed, "point"));
        let mut fixed = Vec::new();
        for item in items {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected name=value, got `{item}`")))?;
            let v = s.ring.index_of(name.trim()).ok_or_else(|| Error::UnknownVariable(name.trim().into()))?;
            let q = match value.trim() {
                "?" => sample::nonzero_rational(&mut rng, sample::SAMPLE_BOUND),
                other => Self::rational(other)?,
            };
            fixed.push((v, q));
        }
        let unknowns: Vec<usize> = (0..n).filter(|v| !fixed.iter().any(|(f, _)| f == v)).collect();
        if unknowns.is_empty() {
            let mut pt = vec![Q::zero(); n];
            for (v, q) in fixed {
                pt[v] = q;
            }
            return Ok(pt);
        }
        solve_for(&s.equations, &fixed, &unknowns, &mut rng).ok_or_else(|| {
            Error::InvalidArgument("remaining coordinates are not determined by linear equations".into())
        })
    }
}

fn phi_json(r: &PhiReport) -> Value {
    json!({
        "matrix": format::matrix(&r.matrix),
        "rank": r.rank,
        "quotient_dim": r.quotient_dim,
        "surjective": r.surjective,
        "cokernel": r.cokernel,
    })
}

fn lifted_json(l: &LiftedIdeal, fam: &ContactFamily) -> Value {
    json!({
        "kind": match l.kind { LiftKind::L => "L", LiftKind::LPrime => "L'" },
        "generators": format::polys(&l.generators),
        "z0": format::rational(&l.z0),
        "target": format::poly(&l.target(fam.w().ok())),
    })
}

fn point_json(ring: &Ring, pt: &[Q]) -> Value {
    let map: serde_json::Map<String, Value> = pt
        .iter()
        .enumerate()
        .map(|(i, q)| (ring.name(i).to_string(), format::rational(q)))
        .collect();
    Value::Object(map)
}

fn local_vars(call: &Call) -> Result<Vec<String>> {
    Ok(call.names("vars")?.unwrap_or_else(|| vec![X.into(), Y.into()]))
}

fn capped(env: &Env) -> u32 {
    env.trunc.max(TRUNCATION_CAP)
}

/// Run `op` with `args`. `seed` is the seed of this invocation (a job derives
/// one per task).
pub fn run(op: &str, args: &Args, env: &Env, seed: u64) -> Result<Output> {
    let call = Call { env, args, seed };
    let ring = &env.ring;
    match op {
        "gb" => {
            let order = call.order(false)?;
            let gb = GroebnerBasis::compute(ring, &call.polys("ideal")?, &order);
            let gens = gb.generators().to_vec();
            Ok(Output::with_polys(
                json!({
                    "order": order.describe(ring),
                    "generators": format::polys(&gens),
                    "unit_ideal": gb.is_unit_ideal(),
                }),
                gens,
            ))
        }
        "nf" => {
            let order = call.order(false)?;
            let gb = GroebnerBasis::compute(ring, &call.polys("ideal")?, &order);
            let nf = gb.normal_form(&call.poly("poly")?);
            Ok(Output::with_polys(
                json!({
                    "order": order.describe(ring),
                    "normal_form": format::poly(&nf),
                    "in_ideal": nf.is_zero(),
                }),
                vec![nf],
            ))
        }
        "colength" => {
            let q = local_colength(&call.local_ideal("ideal")?)?;
            Ok(Output::new(json!({
                "colength": q.colength(),
                "basis": q.basis_labels(),
                "certified_power": q.certified_power(),
                "truncation": q.order(),
                "vars": local_vars(&call)?,
            })))
        }
        "prepare" => {
            let fam = call.family()?;
            let (dist, unit) = fam.to_distinguished(env.trunc)?;
            Ok(Output::with_polys(
                json!({
                    "w": dist.w()?,
                    "distinguished": format::poly(dist.e()),
                    "f": format::poly(dist.f()?),
                    "unit": format::poly(&unit),
                    "truncation": env.trunc,
                }),
                vec![dist.e().clone()],
            ))
        }
        "phi" => Ok(Output::new(phi_json(&phi_map(&call.family()?, &call.local_ideal("ideal")?)?))),
        "delta" => Ok(Output::new(phi_json(&delta_map(&call.family()?, &call.local_ideal("ideal")?)?))),
        "psi" => {
            let m = psi_map(&call.family()?, &call.local_ideal("ideal")?)?;
            Ok(Output::new(json!({
                "matrix": format::matrix(&m),
                "rank": m.rank(),
                "quotient_dim": m.nrows(),
            })))
        }
        "star" => {
            let fam = call.family()?;
            let dim = fam.params().dim();
            let mut contact = Vec::new();
            let mut interior = Vec::new();
            let entry = (fam, call.local_ideal("ideal")?);
            if entry.0.is_contact() {
                contact.push(entry);
            } else {
                interior.push(entry);
            }
            if call.has("interior-family") {
                interior.push((call.family_at("interior-family")?, call.local_ideal("interior-ideal")?));
            }
            let rep = check_condition_star(&contact, &interior, dim)?;
            let blocks: Vec<Value> = rep
                .blocks
                .iter()
                .map(|b| json!({"kind": b.kind, "colength": b.colength, "rank": b.rank}))
                .collect();
            Ok(Output::new(json!({
                "surjective": rep.surjective,
                "rank": rep.rank,
                "target_dim": rep.target_dim,
                "parameter_dim": rep.parameter_dim,
                "relative_dimension": rep.relative_dimension,
                "blocks": blocks,
                "matrix": format::matrix(&rep.matrix),
            })))
        }
        "relaxed" => {
            let r = check_relaxed_condition(&call.family()?, &call.local_ideal("ideal")?)?;
            Ok(Output::new(json!({
                "quotient_dim": r.quotient_dim,
                "phi_rank": r.phi_rank,
                "psi_rank": r.psi_rank,
                "stacked_rank": r.stacked_rank,
                "enlarged_dim": r.enlarged_dim,
                "phi_rank_enlarged": r.phi_rank_enlarged,
                "holds": r.holds,
                "formulations_agree": r.formulations_agree,
            })))
        }
        "chart" => {
            let c = call.chart()?;
            let cr = c.ring();
            Ok(Output::with_polys(
                json!({
                    "label": c.label(),
                    "order": c.order().describe(cr),
                    "params": c.params(),
                    "generators": format::polys(c.generators()),
                    "stratum_equations": format::polys(c.stratum_equations()),
                    "colength": c.colength(),
                    "standard_monomials": c.standard_monomials().iter().map(|m| m.display(cr)).collect::<Vec<_>>(),
                    "staircase": c.staircase().iter().map(|m| m.display(cr)).collect::<Vec<_>>(),
                    "stratum_dimension": c.stratum_dimension(),
                }),
                c.generators().to_vec(),
            ))
        }
        "hilb-eq" => {
            if call.has("generators") {
                let p = if call.has("family") { call.family()?.e().clone() } else { call.poly("poly")? };
                let gens = call.polys("generators")?;
                let geo = call.names("geo")?.unwrap_or_else(|| vec![X.into(), Y.into()]);
                let geo: Vec<&str> = geo.iter().map(String::as_str).collect();
                let order = call.order(true)?;
                let (standard, eqs) = residue_coefficients(&p, &gens, &geo, &order)?;
                let eqs: Vec<Poly> = eqs.iter().map(|e| e.embed(ring)).collect::<Result<_>>()?;
                return Ok(Output::with_polys(
                    json!({
                        "chart": format!("explicit generators, {}", order.describe(ring)),
                        "coefficient_of": standard.iter().map(|m| m.display(ring)).collect::<Vec<_>>(),
                        "equations": format::polys(&eqs),
                        "stratum_count": 0,
                    }),
                    eqs,
                ));
            }
            let fam = call.family()?;
            let chart = call.chart()?;
            let h = relative_hilb_equations(&fam, &chart)?;
            let out_ring = ring.union(&h.ring);
            let eqs: Vec<Poly> = h.equations.iter().map(|e| e.embed(&out_ring)).collect::<Result<_>>()?;
            Ok(Output::with_polys(
                json!({
                    "chart": h.chart,
                    "coefficient_of": h.coefficient_of,
                    "equations": format::polys(&eqs),
                    "stratum_count": h.stratum_count,
                }),
                eqs,
            ))
        }
        "lift" | "lift-prime" => {
            let fam = call.family()?;
            let gens = call.polys("ideal")?;
            let l = if op == "lift" { lift_l(&fam, &gens)? } else { lift_lprime(&fam, &gens)? };
            Ok(Output::with_polys(lifted_json(&l, &fam), l.generators.clone()))
        }
        "verify-corr" => {
            let fam = call.family()?;
            let (gens, equations) = if call.has("chart") {
                let chart = call.chart()?;
                let h = relative_hilb_equations(&fam, &chart)?;
                (chart.generators().to_vec(), Some(h.equations))
            } else {
                (call.polys("ideal")?, None)
            };
            let mut opts = EquivalenceOptions::new(call.number("samples")?.unwrap_or(20), seed);
            opts.exec = env.exec;
            let rep = verify_membership_equivalence(&fam, &gens, equations.as_deref(), &opts, &lift)?;
            Ok(Output::new(json!({
                "holds": rep.holds(),
                "seed": rep.seed,
                "requested": rep.requested,
                "checked": rep.outcomes.len(),
                "rejected": rep.rejected,
                "on_locus": rep.on_locus(),
                "in_ideal": rep.outcomes.iter().filter(|o| o.in_ideal).count(),
                "counterexamples": rep.counterexamples().len(),
                "roundtrip_failures": rep.roundtrip_failures(),
            })))
        }
        "sing" => {
            let s = call.scheme("ideal")?;
            let locus = singular_locus_ideal(&s)?;
            let back: Vec<Poly> = locus.iter().map(|p| p.embed(ring)).collect::<Result<_>>()?;
            let mut v = json!({
                "vars": s.ring.names(),
                "codim": s.codim,
                "generators": format::polys(&locus),
            });
            if call.has("compare") {
                let cmp = call.polys("compare")?;
                v["equals_compare"] = json!(variety_equal(&back, &cmp, env.exec));
            }
            Ok(Output::with_polys(v, back))
        }
        "tangent" => {
            let s = call.scheme("ideal")?;
            let pt = call.point(&s)?;
            let rank = jacobian_rank(&s, &pt)?;
            let n = s.ambient_dim();
            Ok(Output::new(json!({
                "vars": s.ring.names(),
                "point": point_json(&s.ring, &pt),
                "ambient_dim": n,
                "jacobian_rank": rank,
                "tangent_dim": n - rank,
                "smooth": s.codim.map(|c| c == rank),
            })))
        }
        "variety-eq" => {
            let a = call.polys("a")?;
            let b = call.polys("b")?;
            let a_on_b = all_vanish(&a, &b, env.exec);
            let b_on_a = all_vanish(&b, &a, env.exec);
            Ok(Output::new(json!({
                "equal": a_on_b && b_on_a,
                "a_vanishes_on_b": a_on_b,
                "b_vanishes_on_a": b_on_a,
            })))
        }
        "milnor" | "tjurina" => {
            let f = call.poly("poly")?;
            let vars = local_vars(&call)?;
            let vs: Vec<&str> = vars.iter().map(String::as_str).collect();
            let value = if op == "milnor" {
                milnor_number_capped(&f, &vs, capped(env))?
            } else {
                tjurina_number_capped(&f, &vs, capped(env))?
            };
            Ok(Output::new(json!({"value": value, "vars": vars})))
        }
        "delta-inv" => {
            let f = call.poly("poly")?;
            let vars = local_vars(&call)?;
            let vs: Vec<&str> = vars.iter().map(String::as_str).collect();
            let r: u32 = call.number("branches")?.ok_or_else(|| missing("branches"))?;
            let mu = milnor_number_capped(&f, &vs, capped(env))?;
            let delta = delta_invariant(&f, &vs, r)?;
            Ok(Output::new(json!({"delta": delta, "milnor": mu, "branches": r})))
        }
        "nested" => {
            let s = call.scheme("ideal")?;
            let rep = nested_singularity_report(&s.equations, sample::sub_seed(seed, "nested"))?;
            Ok(Output::new(json!({
                "vars": s.ring.names(),
                "span_coordinates": rep.span_coordinates,
                "span_dim": rep.span_coordinates.len(),
                "equations": format::polys(&rep.equations),
                "dimension": rep.dimension,
                "tangent_dim_at_origin": rep.tangent_dim_at_origin,
                "quadric_rank": rep.quadric_rank,
                "singularity": rep.singularity,
                "irreducible": rep.irreducible,
                "smooth_witness": rep.smooth_witness.as_ref().map(|w| point_json(&s.ring, w)),
            })))
        }
        "localized-eq" => {
            let unit = call.poly("unit")?;
            Ok(Output::new(json!({
                "equal": ideal_equal_localized(&call.polys("a")?, &call.polys("b")?, &unit),
            })))
        }
        "pullback" => {
            let ps = call.polys("ideal")?;
            let denom = call.poly("denom")?;
            let src = call.text("subs")?.ok_or_else(|| missing("subs"))?;
            let mut subs = Vec::new();
            for item in split_list(src) {
                let (name, value) = item
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidArgument(format!("expected name=numerator, got `{item}`")))?;
                let v = ring.index_of(name.trim()).ok_or_else(|| Error::UnknownVariable(name.trim().into()))?;
                subs.push((v, env.parse(value)?));
            }
            let out: Vec<Poly> = ps.iter().map(|p| pullback_cleared(p, &subs, &denom)).collect();
            Ok(Output::with_polys(json!({"polys": format::polys(&out)}), out))
        }
        "same-up-to-scalar" => {
            let a = call.polys("a")?;
            let b = call.polys("b")?;
            let pairs: Vec<bool> = if a.len() == b.len() {
                a.iter().zip(&b).map(|(p, q)| format::same_up_to_scalar(p, q)).collect()
            } else {
                Vec::new()
            };
            let exact: Vec<bool> = if a.len() == b.len() {
                a.iter().zip(&b).map(|(p, q)| p == q).collect()
            } else {
                Vec::new()
            };
            Ok(Output::new(json!({
                "equal": a.len() == b.len() && pairs.iter().all(|&x| x),
                "identical": a.len() == b.len() && exact.iter().all(|&x| x),
                "pairs": pairs,
            })))
        }
        other => Err(Error::InvalidArgument(format!("unknown operation `{other}`"))),
    }
}

/// A ring for free-standing expressions: `x, y` first, then `z` if used, then
/// the remaining identifiers alphabetically.
pub fn ring_for<'a, I: IntoIterator<Item = &'a str>>(srcs: I, extra: &[String]) -> Result<Ring> {
    let srcs: Vec<&str> = srcs.into_iter().collect();
    let mut ring = crate::io::parse::infer_ring(srcs.iter().copied(), &[X, Y])?;
    ring = ring.extend(extra);
    if ring.contains(Z) {
        let mut names: Vec<String> = vec![X.into(), Y.into(), Z.into()];
        names.extend(ring.names().iter().filter(|n| ![X, Y, Z].contains(&n.as_str())).cloned());
        ring = Ring::new(names);
    }
    Ok(ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> Env {
        let mut env = Env::new(Ring::new(["x", "y", "s", "t"]));
        env.params = vec!["s".into(), "t".into()];
        env.declare_family("F", "contact", "(y^2+x^4)+s*x*(y+x^3)+t*(y+x^4)").unwrap();
        env.declare_chart("C", "y, x^2", "lex y>x", None).unwrap();
        env.finalize().unwrap();
        env
    }

    fn args(pairs: &[(&str, &str)]) -> Args {
        pairs.iter().map(|(k, v)| (k.to_string(), Arg::Text(v.to_string()))).collect()
    }

    #[test]
    fn star_on_codim4() {
        let out = run("star", &args(&[("family", "F"), ("ideal", "y, x^2")]), &env(), 0).unwrap();
        assert_eq!(out.value["surjective"], json!(true));
        assert_eq!(out.value["rank"], json!(2));
        assert_eq!(out.value["relative_dimension"], json!(0));
    }

    #[test]
    fn hilb_eq_by_chart_name() {
        let e = env();
        let out = run("hilb-eq", &args(&[("family", "F"), ("chart", "C")]), &e, 0).unwrap();
        assert_eq!(out.polys.len(), 2);
        assert_eq!(out.value["coefficient_of"], json!(["1", "x"]));
        let sing = run(
            "sing",
            &[("ideal".to_string(), Arg::Polys(out.polys.clone()))].into_iter().collect(),
            &e,
            0,
        )
        .unwrap();
        assert_eq!(sing.value["codim"], json!(2));
    }

    #[test]
    fn tjurina_and_tangent() {
        let e = Env::new(ring_for(["y*z+x^4"], &[]).unwrap());
        assert_eq!(e.ring.names(), &["x", "y", "z"]);
        let out = run("tjurina", &args(&[("poly", "y*z+x^4"), ("vars", "x,y,z")]), &e, 0).unwrap();
        assert_eq!(out.value["value"], json!(3));
        let out = run("tangent", &args(&[("ideal", "x^2 + y*z"), ("point", "0,0,0")]), &e, 0).unwrap();
        assert_eq!(out.value["tangent_dim"], json!(3));
        let out = run("tangent", &args(&[("ideal", "x - y*z"), ("point", "y=?, z=2")]), &e, 0).unwrap();
        assert_eq!(out.value["tangent_dim"], json!(2));
    }

    #[test]
    fn unknown_op_and_missing_args() {
        let e = env();
        assert!(run("nope", &Args::new(), &e, 0).is_err());
        assert!(matches!(run("gb", &Args::new(), &e, 0), Err(Error::InvalidArgument(_))));
    }
}
