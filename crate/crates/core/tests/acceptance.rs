//! End-to-end acceptance checks. Runs without the libtest harness so that each
//! criterion prints exactly one `PASS` or `FAIL` line; exits nonzero on any
//! failure.

use std::error::Error as StdError;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use wcontact::algebra::ring::Q;
use wcontact::algebra::{GroebnerBasis, Poly, Ring, TermOrder};
use wcontact::algebra::groebner::s_polynomial;
use wcontact::charts::{
    generic_chart, ideal_equal_localized, lift, pullback_cleared, relative_hilb_equations,
    residue_coefficients, EquivalenceOptions, GroebnerStratumChart,
};
use wcontact::family::{ContactFamily, StrataPreservingChange};
use wcontact::geometry::{singular_locus_ideal, variety_equal, AffineScheme};
use wcontact::io::format::{canonical, same_up_to_scalar, to_pretty};
use wcontact::io::job::{parse_job, run_job, RunOptions};
use wcontact::io::parse::{parse_poly, parse_poly_list};
use wcontact::local::{
    delta_invariant, local_colength, milnor_number, mul_truncated, series_invert, tjurina_number,
    LocalIdeal,
};
use wcontact::nondegeneracy::{check_condition_star, phi_map};
use wcontact::par::Exec;
use wcontact::sample;

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const SING_LIMIT: Duration = Duration::from_secs(60);
const LIFT_LIMIT: Duration = Duration::from_secs(30);
const TJURINA_LIMIT: Duration = Duration::from_secs(10);
const SUITE_LIMIT: Duration = Duration::from_secs(300);

const MIN_SAMPLES: usize = 100;
const MIN_FAMILIES: usize = 5;
const MAX_CHART_COLENGTH: usize = 3;
const UNIT_TRIALS: usize = 50;
const CHANGE_TRIALS: usize = 25;
/// Truncation order in the parameters for the normal form `g = 1`.
const NORMAL_FORM_ORDER: u32 = 4;

const SEED: u64 = 20240611;

const FST: &str = "(y^2+x^4)+s*x*(y+x^3)+t*(y+x^4)";
const GOLDEN: [&str; 2] = [
    "n*(s*m^2+s*k+k^2+m^2)+t*m^2*n+t*l+l^2+n^2*(1+s+t)",
    "m*(s*m^2+s*k+k^2+m^2)+t*m^3+t*k+s*l+2*k*l+2*m*n*(1+s+t)",
];
const SING_EXPECTED: &str = "t, l, n, s*m^2+s*k+k^2+m^2";

type Check = Result<String, Box<dyn StdError>>;

static START: OnceLock<Instant> = OnceLock::new();

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), Box<dyn StdError>> {
    if cond {
        Ok(())
    } else {
        Err(msg.into().into())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, Box<dyn StdError>> {
    let e = t.elapsed();
    ensure(e < limit, format!("{what} took {e:.2?}, limit {limit:?}"))?;
    Ok(e)
}

fn xyst() -> Ring {
    Ring::new(["x", "y", "s", "t"])
}

fn hring() -> Ring {
    Ring::new(["s", "t", "k", "l", "m", "n"])
}

fn codim4_family() -> ContactFamily {
    ContactFamily::contact(&parse_poly(FST, &xyst()).unwrap(), &["s", "t"], Some(4)).unwrap()
}

fn chart(monos: &str, order: &str, names: Option<&[&str]>) -> GroebnerStratumChart {
    let r = Ring::new(["x", "y"]);
    let names: Option<Vec<String>> = names.map(|ns| ns.iter().map(|n| n.to_string()).collect());
    generic_chart(
        &parse_poly_list(monos, &r).unwrap(),
        &TermOrder::parse(order, &r).unwrap(),
        &["x", "y"],
        names.as_deref(),
    )
    .unwrap()
}

fn codim4_chart() -> GroebnerStratumChart {
    chart("y, x^2", "lex y>x", Some(&["k", "l", "m", "n"]))
}

/// The H-equations in the ring `s, t, k, l, m, n`.
fn h_equations() -> Result<Vec<Poly>, Box<dyn StdError>> {
    let eqs = relative_hilb_equations(&codim4_family(), &codim4_chart())?;
    ensure(eqs.stratum_count == 0, "lex chart <y, x^2> should have no stratum equations")?;
    let r = hring();
    Ok(eqs.equations.iter().map(|e| e.embed(&r)).collect::<Result<_, _>>()?)
}

fn golden_equations() -> Check {
    let t = Instant::now();
    let eqs = h_equations()?;
    ensure(eqs.len() == GOLDEN.len(), format!("{} equations, expected 2", eqs.len()))?;
    let r = hring();
    for (got, want) in eqs.iter().zip(GOLDEN) {
        let want = parse_poly(want, &r)?;
        ensure(same_up_to_scalar(got, &want), format!("{got} differs from {want}"))?;
        ensure(canonical(got).1 == canonical(&want).1, "canonical forms differ")?;
    }
    let e = within(t, GOLDEN_LIMIT, "hilb-eq")?;
    Ok(format!("2 equations match up to scalar in {e:.2?}"))
}

fn singular_locus() -> Check {
    let t = Instant::now();
    let h = AffineScheme::new(h_equations()?, Some(2))?;
    let sing = singular_locus_ideal(&h)?;
    let expected = parse_poly_list(SING_EXPECTED, &hring())?;
    ensure(variety_equal(&sing, &expected, Exec::default()), "V(Sing H) != V(t, l, n, q)")?;
    let e = within(t, SING_LIMIT, "singular locus")?;
    Ok(format!("{} minors, variety equal in {e:.2?}", sing.len()))
}

fn lift_equivalence() -> Check {
    let t = Instant::now();
    let s3ring = Ring::new(["x", "y", "z", "s'", "t'", "k", "l", "m", "n"]);
    let s3 = parse_poly("y*z + x^4", &s3ring)?;
    let gens = parse_poly_list("z - s'*x - t', y - k*x - l, x^2 - m*x - n", &s3ring)?;
    let order = TermOrder::parse("lex z>y>x", &s3ring)?;
    let (_, residues) = residue_coefficients(&s3, &gens, &["x", "y", "z"], &order)?;

    let big = Ring::new(["s'", "t'", "s", "t", "k", "l", "m", "n"]);
    let p = |src: &str| parse_poly(src, &big);
    let subs = [(0, p("s+k")?), (1, p("t+l")?)];
    let denom = p("1+s+t")?;
    let r = hring();
    let pulled: Vec<Poly> = residues
        .iter()
        .map(|q| pullback_cleared(&q.embed(&big)?, &subs, &denom).embed(&r))
        .collect::<Result<_, _>>()?;
    let h = h_equations()?;
    let unit = parse_poly("1+s+t", &r)?;
    ensure(ideal_equal_localized(&h, &pulled, &unit), "ideals differ after inverting 1+s+t")?;
    ensure(pulled.len() == h.len(), "different number of equations")?;
    for (a, b) in pulled.iter().zip(&h) {
        ensure(a == b, format!("cleared pullback {a} != {b}"))?;
    }
    let e = within(t, LIFT_LIMIT, "lift equivalence")?;
    Ok(format!("localized equality and exact term agreement in {e:.2?}"))
}

fn ideal_xy(fam: &ContactFamily, src: &str) -> LocalIdeal {
    let gens = parse_poly_list(src, fam.ring()).unwrap();
    LocalIdeal::in_vars(fam.ring(), &["x", "y"], gens).unwrap()
}

fn condition_star() -> Check {
    let fam = codim4_family();
    let ideal = ideal_xy(&fam, "y, x^2");
    let rep = check_condition_star(&[(fam, ideal)], &[], 2)?;
    ensure(rep.surjective, "not surjective")?;
    ensure(rep.rank == 2, format!("rank {}", rep.rank))?;
    ensure(rep.target_dim == 2, format!("quotient dimension {}", rep.target_dim))?;
    ensure(rep.relative_dimension == 0, format!("relative dimension {}", rep.relative_dimension))?;
    Ok("surjective, rank 2, quotient dimension 2, relative dimension 0".into())
}

struct CorrCase {
    label: &'static str,
    expr: &'static str,
    params: &'static [&'static str],
    interior: bool,
    monos: &'static str,
    order: &'static str,
    samples: usize,
}

const CORR_CASES: [CorrCase; 6] = [
    CorrCase { label: "w=4 tacnode", expr: FST, params: &["s", "t"], interior: false, monos: "y, x^2", order: "lex y>x", samples: 20 },
    CorrCase { label: "w=2", expr: "y*(y+s+t*x) + x^2", params: &["s", "t"], interior: false, monos: "y, x^2", order: "lex y>x", samples: 20 },
    CorrCase { label: "w=3", expr: "y*(y+s*x+t+u*x^2) + x^3", params: &["s", "t", "u"], interior: false, monos: "y, x^3", order: "lex y>x", samples: 20 },
    CorrCase { label: "w=5", expr: "y*(y+s) + x^5*(1+t)", params: &["s", "t"], interior: false, monos: "x, y^2", order: "lex x>y", samples: 20 },
    CorrCase { label: "interior smooth", expr: "y + x^2 + s*x + t*y^2", params: &["s", "t"], interior: true, monos: "y, x^2", order: "lex y>x", samples: 20 },
    CorrCase { label: "interior cusp", expr: "y^2 - x^3 + s + t*x + u*x^2", params: &["s", "t", "u"], interior: true, monos: "y, x^3", order: "lex y>x", samples: 20 },
];

fn membership_correspondence() -> Check {
    let mut checked = 0;
    let mut ws = std::collections::BTreeSet::new();
    let mut kinds = std::collections::BTreeSet::new();
    let mut on_locus = 0;
    for case in &CORR_CASES {
        let mut names = vec!["x", "y"];
        names.extend(case.params);
        let e = parse_poly(case.expr, &Ring::new(names))?;
        let fam = if case.interior {
            ContactFamily::interior(&e, case.params)?
        } else {
            ContactFamily::contact(&e, case.params, None)?
        };
        let c = chart(case.monos, case.order, None);
        ensure(c.colength() <= MAX_CHART_COLENGTH, format!("{}: chart colength {}", case.label, c.colength()))?;
        let eqs = if case.interior {
            None
        } else {
            ws.insert(fam.w()?);
            Some(relative_hilb_equations(&fam, &c)?.equations)
        };
        kinds.insert(case.interior);
        let opts = EquivalenceOptions::new(case.samples, sample::sub_seed(SEED, case.label));
        let rep = wcontact::charts::verify_membership_equivalence(&fam, c.generators(), eqs.as_deref(), &opts, &lift)?;
        ensure(rep.holds(), format!("{}: counterexamples {:?}", case.label, rep.counterexamples()))?;
        ensure(rep.roundtrip_failures() == 0, format!("{}: elimination round-trip failed", case.label))?;
        ensure(rep.on_locus() > 0, format!("{}: no sample landed on E in I", case.label))?;
        checked += rep.outcomes.len();
        on_locus += rep.on_locus();
    }
    ensure(CORR_CASES.len() >= MIN_FAMILIES, "too few families")?;
    ensure(checked >= MIN_SAMPLES, format!("only {checked} samples checked"))?;
    ensure(ws == (2..=5).collect(), format!("contact orders covered: {ws:?}"))?;
    ensure(kinds.len() == 2, "both kinds must be covered")?;
    Ok(format!(
        "{checked} samples over {} families ({on_locus} with E in I), no counterexamples, all round-trips exact",
        CORR_CASES.len()
    ))
}

/// Matrix of multiplication by `u` on `O/I` in the basis of the quotient.
fn multiplication_matrix(ideal: &LocalIdeal, u: &Poly) -> Result<Vec<Vec<Q>>, Box<dyn StdError>> {
    let q = local_colength(ideal)?;
    let ring = ideal.ring();
    q.basis()
        .into_iter()
        .map(|b| Ok(q.coordinates(&(u * &Poly::term(ring, b, Q::one())))?))
        .collect()
}

fn apply(cols: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    let n = cols.first().map_or(0, Vec::len);
    let mut out = vec![Q::zero(); n];
    for (c, vj) in cols.iter().zip(v) {
        for (o, cij) in out.iter_mut().zip(c) {
            *o += cij * vj;
        }
    }
    out
}

const INVARIANCE_IDEALS: [&str; 3] = ["y, x^2", "y, x^3", "y - x^2, x^3"];

fn invariance() -> Check {
    let fam = codim4_family();
    let ring = fam.ring().clone();
    let (x, y) = (fam.x(), fam.y());
    let all = [x, y, 2, 3];
    let mut verdicts = [0usize; 2];

    for i in 0..UNIT_TRIALS {
        let mut rng = sample::rng(sample::sub_seed(SEED, &format!("unit {i}")));
        let ideal = ideal_xy(&fam, INVARIANCE_IDEALS[i % INVARIANCE_IDEALS.len()]);
        let h = sample::poly(&mut rng, &ring, &all, 2, 3, 0.5);
        let c = sample::nonzero_rational(&mut rng, sample::SAMPLE_BOUND);
        let u = (&Poly::one(&ring) + &(&Poly::var(&ring, y) * &h)).scale(&c);
        let old = phi_map(&fam, &ideal)?;
        let new = phi_map(&fam.multiply_unit(&u)?, &ideal)?;
        ensure(old.rank == new.rank && old.surjective == new.surjective, format!("unit {u}: verdict changed"))?;
        let u0 = &Poly::one(&ring) + &(&Poly::var(&ring, y) * &fam.at_origin(&h));
        let m = multiplication_matrix(&ideal, &u0)?;
        for j in 0..old.matrix.ncols() {
            ensure(
                apply(&m, &old.matrix.column(j)) == new.matrix.column(j),
                format!("unit {u}: column {j} is not (1 + y h0) times the old one"),
            )?;
        }
        verdicts[old.surjective as usize] += 1;
    }

    let normal = fam.to_normal_form(NORMAL_FORM_ORDER)?;
    let geo = [x, y];
    for i in 0..CHANGE_TRIALS {
        let mut rng = sample::rng(sample::sub_seed(SEED, &format!("change {i}")));
        let ideal = ideal_xy(&normal, INVARIANCE_IDEALS[i % INVARIANCE_IDEALS.len()]);
        let ux = &Poly::constant(&ring, sample::nonzero_rational(&mut rng, 3))
            + &sample::poly(&mut rng, &ring, &[x], 2, 3, 0.5);
        let a = sample::poly(&mut rng, &ring, &geo, 1, 3, 0.5);
        let v = &Poly::constant(&ring, sample::nonzero_rational(&mut rng, 3))
            + &sample::poly(&mut rng, &ring, &geo, 1, 3, 0.5);
        let v = if v.constant_term().is_zero() { &v + &Poly::one(&ring) } else { v };
        let ux = if ux.constant_term().is_zero() { &ux + &Poly::one(&ring) } else { ux };
        let xv = Poly::var(&ring, x);
        let yv = Poly::var(&ring, y);
        let phi = StrataPreservingChange::new(&(&xv * &ux) + &(&yv * &a), &yv * &v)?;
        let subst = |p: &Poly| p.substitute(&[(x, phi.x_image.clone()), (y, phi.y_image.clone())]);

        let old = phi_map(&normal, &ideal)?;
        let moved = LocalIdeal::new(&ring, geo.to_vec(), ideal.generators().iter().map(subst).collect())?;
        let new = phi_map(&normal.apply_change(&phi)?, &moved)?;
        ensure(
            old.rank == new.rank && old.surjective == new.surjective,
            format!("change {:?}: verdict changed", (&phi.x_image.to_string(), &phi.y_image.to_string())),
        )?;

        let qold = local_colength(&ideal)?;
        let qnew = local_colength(&moved)?;
        let n = qnew.order();
        let w = normal.w()?;
        let uinv = series_invert(&phi.x_unit().pow(w), &geo, n)?;
        let factor = mul_truncated(&uinv, &phi.y_unit(), &geo, n);
        let moved_basis: Vec<Poly> = qold.basis().into_iter().map(|b| subst(&Poly::term(&ring, b, Q::one()))).collect();
        for j in 0..old.matrix.ncols() {
            let mut image = Poly::zero(&ring);
            for (cj, b) in old.matrix.column(j).iter().zip(&moved_basis) {
                image = &image + &b.scale(cj);
            }
            let target = qnew.coordinates(&mul_truncated(&factor, &image, &geo, n))?;
            ensure(
                target == new.matrix.column(j),
                format!("change {}: column {j} is not u^-w v times the moved old column", phi.x_image),
            )?;
        }
        verdicts[old.surjective as usize] += 1;
    }
    ensure(verdicts[0] > 0 && verdicts[1] > 0, "trials should cover both verdicts")?;
    Ok(format!(
        "{UNIT_TRIALS} units and {CHANGE_TRIALS} changes ({} surjective, {} not), congruences exact",
        verdicts[1], verdicts[0]
    ))
}

fn a_w_minus_one_total_space() -> Check {
    let t = Instant::now();
    let r = Ring::new(["x", "y", "s"]);
    let mut seen = Vec::new();
    for w in 2u32..=5 {
        let e = parse_poly(&format!("(y*y + x^{w}) + s*(y + x^{w})"), &r)?;
        ContactFamily::contact(&e, &["s"], Some(w))?;
        let tau = tjurina_number(&e, &["x", "y", "s"])?;
        ensure(tau == (w - 1) as usize, format!("w = {w}: Tjurina number {tau}, expected {}", w - 1))?;
        seen.push(tau);
    }
    let e = within(t, TJURINA_LIMIT, "total-space Tjurina numbers")?;
    Ok(format!("Tjurina numbers {seen:?} for w = 2..5 in {e:.2?}"))
}

fn invariants() -> Check {
    let r = Ring::new(["x", "y"]);
    let tacnode = parse_poly("y^2+x^4", &r)?;
    let mu = milnor_number(&tacnode, &["x", "y"])?;
    let delta = delta_invariant(&tacnode, &["x", "y"], 2)?;
    let a3 = parse_poly("y*z+x^4", &Ring::new(["x", "y", "z"]))?;
    let tau = tjurina_number(&a3, &["x", "y", "z"])?;
    ensure((mu, delta, tau) == (3, 2, 3), format!("milnor {mu}, delta {delta}, tjurina {tau}"))?;
    Ok("milnor 3, delta 2, tjurina 3".into())
}

fn gb_suite() -> Result<usize, Box<dyn StdError>> {
    let r = Ring::new(["x", "y", "z"]);
    // lex only on two-variable ideals: three generic quadrics under lex explode
    let orders = [TermOrder::lex(&r), TermOrder::degrevlex(&r)];
    let mut n = 0;
    for i in 0..30 {
        let mut rng = sample::rng(sample::sub_seed(SEED, &format!("gb {i}")));
        let vars: Vec<usize> = if i % 2 == 0 { vec![0, 1] } else { vec![0, 1, 2] };
        let deg = if i % 2 == 0 { 3 } else { 2 };
        let gens: Vec<Poly> = (0..2 + i % 2)
            .map(|_| sample::poly(&mut rng, &r, &vars, deg, 3, 0.4))
            .filter(|p| !p.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let order = &orders[i % 2];
        let gb = GroebnerBasis::compute(&r, &gens, order);
        let g = gb.generators();
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                ensure(gb.normal_form(&s_polynomial(&g[a], &g[b], order)).is_zero(), "S-pair does not reduce to 0")?;
            }
        }
        for p in &gens {
            ensure(gb.contains(p), "generator not in its own basis")?;
        }
        let p = sample::poly(&mut rng, &r, &vars, 4, 5, 0.5);
        let nf = gb.normal_form(&p);
        ensure(gb.normal_form(&nf) == nf, "normal form is not idempotent")?;
        ensure(gb.contains(&(&p - &nf)), "p - NF(p) not in the ideal")?;
        n += 1;
    }
    Ok(n)
}

fn colength_suite() -> Result<usize, Box<dyn StdError>> {
    let r = Ring::new(["x", "y"]);
    let geo = [0, 1];
    for i in 0..20 {
        let mut rng = sample::rng(sample::sub_seed(SEED, &format!("colength {i}")));
        let a = 1 + (i % 3) as u32;
        let b = 1 + (i % 4) as u32;
        let tail = |rng: &mut _, d: u32| {
            let p = sample::poly(rng, &r, &geo, d + 1, 3, 0.3);
            let low: Vec<_> = p.terms().filter(|(m, _)| m.degree() <= d).map(|(m, _)| m.clone()).collect();
            let mut p = p;
            for m in low {
                p.add_term(m.clone(), -p.coeff(&m));
            }
            p
        };
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let gens = vec![&x.pow(a) + &tail(&mut rng, a), &y.pow(b) + &tail(&mut rng, b)];
        let base = local_colength(&LocalIdeal::new(&r, geo.to_vec(), gens.clone())?)?.colength();
        let units: Vec<Poly> = gens
            .iter()
            .map(|g| {
                let u = &Poly::constant(&r, sample::nonzero_rational(&mut rng, 5)) + &tail(&mut rng, 0);
                g * &u
            })
            .collect();
        let moved = local_colength(&LocalIdeal::new(&r, geo.to_vec(), units)?)?.colength();
        ensure(base == moved, format!("colength {base} became {moved} after unit multiplication"))?;
        ensure(base >= (a * b) as usize, format!("colength {base} below {a}*{b}"))?;
    }
    Ok(20)
}

fn parser_suite() -> Result<usize, Box<dyn StdError>> {
    let r = Ring::new(["x", "y", "s", "t'"]);
    let vars = [0, 1, 2, 3];
    let mut rng = sample::rng(sample::sub_seed(SEED, "parser"));
    for _ in 0..1000 {
        let mut p = sample::poly(&mut rng, &r, &vars, 4, 9, 0.3);
        let c = sample::nonzero_rational(&mut rng, 11);
        p = p.scale(&c);
        let back = parse_poly(&p.to_string(), &r)?;
        ensure(back == p, format!("{p} reparsed as {back}"))?;
    }
    Ok(1000)
}

fn report_suite() -> Result<(), Box<dyn StdError>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs/codim4.job");
    let job = parse_job(&std::fs::read_to_string(path)?)?;
    let render = |exec| -> Result<String, Box<dyn StdError>> {
        let rep = run_job(&job, &RunOptions { exec, ..Default::default() })?;
        ensure(rep.ok(), "job has failing tasks")?;
        Ok(to_pretty(&rep.to_json()))
    };
    let a = render(Exec::Parallel)?;
    ensure(a == render(Exec::Parallel)?, "two parallel runs differ")?;
    ensure(a == render(Exec::Sequential)?, "parallel and sequential runs differ")?;
    Ok(())
}

fn engine_soundness() -> Check {
    let gbs = gb_suite()?;
    let cols = colength_suite()?;
    let parses = parser_suite()?;
    report_suite()?;
    let total = START.get().expect("start recorded").elapsed();
    ensure(total < SUITE_LIMIT, format!("acceptance run took {total:.2?}, limit {SUITE_LIMIT:?}"))?;
    Ok(format!(
        "{gbs} bases closed and idempotent, {cols} colength pairs stable, {parses} round-trips, reports byte-identical; run so far {total:.2?}"
    ))
}

fn main() {
    START.get_or_init(Instant::now);
    let criteria: [(&str, fn() -> Check); 9] = [
        ("golden equations", golden_equations),
        ("singular locus", singular_locus),
        ("lift equivalence", lift_equivalence),
        ("condition (*)", condition_star),
        ("membership correspondence", membership_correspondence),
        ("invariance under units and changes", invariance),
        ("A_{w-1} total space", a_w_minus_one_total_space),
        ("singularity invariants", invariants),
        ("engine soundness", engine_soundness),
    ];
    // Keep panic messages from interleaving with the result lines.
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(detail)) => Ok(detail),
            Ok(Err(e)) => Err(e.to_string()),
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into())),
        };
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {}. {name}: {reason}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
