//! Jacobian criteria for affine schemes: singular loci, tangent spaces at
//! rational points, variety equality and a report on a singular locus as a
//! scheme in its own right.

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::ideal::{affine_dimension, radical_membership};
use crate::algebra::linalg::{solve_affine, MatrixQ};
use crate::algebra::ring::{Monomial, Ring, Q};
use crate::algebra::{GroebnerBasis, Poly, TermOrder};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::sample;

#[derive(Clone, Debug)]
pub struct AffineScheme {
    pub ring: Ring,
    pub equations: Vec<Poly>,
    pub codim: Option<usize>,
}

impl AffineScheme {
    pub fn new(equations: Vec<Poly>, codim: Option<usize>) -> Result<Self> {
        let ring = equations
            .first()
            .map(|p| p.ring().clone())
            .ok_or_else(|| Error::InvalidArgument("scheme without equations".into()))?;
        if equations.iter().any(Poly::is_zero) {
            return Err(Error::InvalidArgument("zero equation".into()));
        }
        Ok(AffineScheme {
            ring,
            equations,
            codim,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        jacobian(&self.equations, self.ring.nvars())
    }
}

pub fn jacobian(eqs: &[Poly], nvars: usize) -> Vec<Vec<Poly>> {
    eqs.iter()
        .map(|e| (0..nvars).map(|v| e.derivative(v)).collect())
        .collect()
}

fn determinant(m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let ring = m[0][0].ring();
            let mut acc = Poly::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All nonzero `c × c` minors of a polynomial matrix, deduplicated.
pub fn minors(m: &[Vec<Poly>], c: usize) -> Vec<Poly> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out: Vec<Poly> = Vec::new();
    if c == 0 || c > rows || c > cols {
        return out;
    }
    for rs in subsets(rows, c) {
        for cs in subsets(cols, c) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&r| cs.iter().map(|&j| m[r][j].clone()).collect()).collect();
            let d = determinant(&sub);
            if !d.is_zero() && !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

/// Equations together with every `c × c` Jacobian minor, `c` the expected
/// codimension.
pub fn singular_locus_ideal(s: &AffineScheme) -> Result<Vec<Poly>> {
    let c = s
        .codim
        .ok_or_else(|| Error::InvalidArgument("expected codimension required".into()))?;
    let mut out = s.equations.clone();
    for m in minors(&s.jacobian(), c) {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

fn evaluate_matrix(m: &[Vec<Poly>], point: &[Q]) -> MatrixQ {
    MatrixQ::from_rows(m.iter().map(|row| row.iter().map(|p| p.evaluate_point(point)).collect()).collect())
}

pub fn check_on_scheme(s: &AffineScheme, point: &[Q]) -> Result<()> {
    if point.len() != s.ambient_dim() {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, ambient dimension is {}",
            point.len(),
            s.ambient_dim()
        )));
    }
    for (index, e) in s.equations.iter().enumerate() {
        let v = e.evaluate_point(point);
        if !v.is_zero() {
            return Err(Error::PointNotOnScheme {
                index,
                value: v.to_string(),
            });
        }
    }
    Ok(())
}

/// Rank of the Jacobian at a rational point of the scheme.
pub fn jacobian_rank(s: &AffineScheme, point: &[Q]) -> Result<usize> {
    check_on_scheme(s, point)?;
    Ok(evaluate_matrix(&s.jacobian(), point).rank())
}

/// `ambient dim - rank J(point)`.
pub fn tangent_space_dim(s: &AffineScheme, point: &[Q]) -> Result<usize> {
    Ok(s.ambient_dim() - jacobian_rank(s, point)?)
}

/// Every `p` vanishes on `V(gens)`. The Gröbner basis of `gens` is computed
/// once and shared by the Rabinowitsch checks.
pub fn all_vanish(ps: &[Poly], gens: &[Poly], exec: Exec) -> bool {
    if ps.is_empty() {
        return true;
    }
    let ring = ps[0].ring();
    let basis: Vec<Poly> = if gens.is_empty() {
        Vec::new()
    } else {
        GroebnerBasis::compute(ring, gens, &TermOrder::degrevlex(ring)).generators().to_vec()
    };
    exec.all(ps, |p| radical_membership(p, &basis))
}

/// `V(A) = V(B)` by radical membership in both directions.
pub fn variety_equal(a: &[Poly], b: &[Poly], exec: Exec) -> bool {
    all_vanish(a, b, exec) && all_vanish(b, a, exec)
}

/// A rational point with `fixed` coordinates prescribed and the `unknowns`
/// solved from `eqs`, which must become affine-linear in them. Free directions
/// of the solution are filled with seeded random rationals. Returns values for
/// every ring variable, or `None` if the system is not linear or inconsistent.
pub fn solve_for<R: Rng>(
    eqs: &[Poly],
    fixed: &[(usize, Q)],
    unknowns: &[usize],
    rng: &mut R,
) -> Option<Vec<Q>> {
    let ring = eqs.first()?.ring();
    let n = ring.nvars();
    if fixed.len() + unknowns.len() != n {
        return None;
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for e in eqs {
        let r = e.evaluate(fixed);
        if r.degree_in_vars(unknowns).unwrap_or(0) > 1 || r.support_vars().iter().any(|v| !unknowns.contains(v)) {
            return None;
        }
        rows.push(unknowns.iter().map(|&u| r.coeff(&Monomial::var(n, u, 1))).collect::<Vec<_>>());
        rhs.push(-r.constant_term());
    }
    let (mut x, kernel) = solve_affine(&MatrixQ::from_rows(rows), &rhs)?;
    for k in kernel {
        let c = sample::rational(rng, sample::SAMPLE_BOUND);
        for (xi, ki) in x.iter_mut().zip(k) {
            *xi += &c * ki;
        }
    }
    let mut point = vec![Q::zero(); n];
    for (v, q) in fixed {
        point[*v] = q.clone();
    }
    for (u, q) in unknowns.iter().zip(x) {
        point[*u] = q;
    }
    Some(point)
}

/// Certify absolute irreducibility of `p` when it is of degree one in some
/// variable `v`, `p = a v + b`, with `a` certified irreducible (or constant)
/// and `a ∤ b`. `None` means undecided.
pub fn irreducible_by_linear_variable(p: &Poly) -> Option<bool> {
    let deg = p.total_degree()?;
    if deg == 0 {
        return None;
    }
    if deg == 1 {
        return Some(true);
    }
    let ring = p.ring();
    for v in p.support_vars() {
        if p.degree_in(v) != Some(1) {
            continue;
        }
        let a = p.derivative(v);
        let b = p.evaluate(&[(v, Q::zero())]);
        if a.is_constant() {
            return Some(true);
        }
        if irreducible_by_linear_variable(&a) != Some(true) {
            continue;
        }
        let gb = GroebnerBasis::compute(ring, std::slice::from_ref(&a), &TermOrder::degrevlex(ring));
        if !gb.contains(&b) {
            return Some(true);
        }
    }
    None
}

/// Description of a locus `V(gens)` inside its linear span.
#[derive(Clone, Debug)]
pub struct NestedReport {
    /// Coordinates of the span (ambient variables not eliminated by the
    /// linear generators).
    pub span_coordinates: Vec<String>,
    /// Remaining equations in span coordinates.
    pub equations: Vec<Poly>,
    pub dimension: Option<usize>,
    pub tangent_dim_at_origin: Option<usize>,
    /// Rank of the quadratic part at the origin, for a hypersurface in its span
    /// with no linear part there.
    pub quadric_rank: Option<usize>,
    /// `smooth`, `A1`, `A1 x A^k` or `degenerate`.
    pub singularity: String,
    pub irreducible: Option<bool>,
    /// A smooth rational point of the locus, in ambient coordinates.
    pub smooth_witness: Option<Vec<Q>>,
}

/// Eliminate the affine-linear generators, then analyze what is left.
pub fn nested_singularity_report(locus: &[Poly], seed: u64) -> Result<NestedReport> {
    let ring = locus
        .first()
        .map(|p| p.ring().clone())
        .ok_or_else(|| Error::InvalidArgument("empty locus".into()))?;
    let n = ring.nvars();
    // Substitutions v -> expression, applied in order.
    let mut subs: Vec<(usize, Poly)> = Vec::new();
    let mut rest: Vec<Poly> = Vec::new();
    let mut pending: Vec<Poly> = locus.to_vec();
    loop {
        let pos = pending.iter().position(|p| p.total_degree() == Some(1));
        let Some(i) = pos else { break };
        let lin = pending.remove(i);
        let v = (0..n).rev().find(|&v| lin.degree_in(v) == Some(1)).unwrap();
        let c = lin.coeff(&Monomial::var(n, v, 1));
        let expr = (&lin - &Poly::term(&ring, Monomial::var(n, v, 1), c.clone())).scale(&-c.recip());
        pending = pending
            .into_iter()
            .map(|p| p.substitute(&[(v, expr.clone())]))
            .filter(|p| !p.is_zero())
            .collect();
        for (_, e) in subs.iter_mut() {
            *e = e.substitute(&[(v, expr.clone())]);
        }
        subs.push((v, expr));
        if pending.iter().any(Poly::is_constant) {
            break;
        }
    }
    rest.extend(pending);
    let eliminated: Vec<usize> = subs.iter().map(|(v, _)| *v).collect();
    let span: Vec<usize> = (0..n).filter(|v| !eliminated.contains(v)).collect();
    let span_ring = Ring::new(span.iter().map(|&v| ring.name(v).to_string()));
    let eqs: Vec<Poly> = rest.iter().map(|p| p.embed(&span_ring)).collect::<Result<_>>()?;
    let m = span.len();
    let span_vars: Vec<usize> = (0..m).collect();
    let dimension = if eqs.is_empty() {
        Some(m)
    } else {
        affine_dimension(&span_ring, &eqs, &span_vars)
    };
    let origin = vec![Q::zero(); m];
    let on_origin = eqs.iter().all(|e| e.evaluate_point(&origin).is_zero());
    let tangent_dim_at_origin = on_origin.then(|| {
        if eqs.is_empty() {
            m
        } else {
            m - evaluate_matrix(&jacobian(&eqs, m), &origin).rank()
        }
    });
    let mut quadric_rank = None;
    let mut singularity = "degenerate".to_string();
    if eqs.is_empty() {
        singularity = "smooth".into();
    } else if tangent_dim_at_origin.is_some() && tangent_dim_at_origin == dimension {
        singularity = "smooth".into();
    } else if eqs.len() == 1 && on_origin && eqs[0].homogeneous_part(&span_vars, 1).is_zero() {
        let q2 = eqs[0].homogeneous_part(&span_vars, 2);
        let mut mat = MatrixQ::zeros(m, m);
        let half = Q::new(1.into(), 2.into());
        for (mono, c) in q2.terms() {
            let s: Vec<usize> = mono.support().collect();
            if s.len() == 1 {
                mat.set(s[0], s[0], c.clone());
            } else {
                mat.set(s[0], s[1], c * &half);
                mat.set(s[1], s[0], c * &half);
            }
        }
        let r = mat.rank();
        quadric_rank = Some(r);
        singularity = if r == m && r >= 1 {
            "A1".into()
        } else if r >= 2 {
            format!("A1 x A^{}", m - r)
        } else {
            "degenerate".into()
        };
    }
    let irreducible = match eqs.len() {
        0 => Some(true),
        1 => irreducible_by_linear_variable(&eqs[0]),
        _ => None,
    };
    let smooth_witness = if eqs.len() == 1 {
        hypersurface_witness(&eqs[0], seed).map(|w| {
            // back to ambient coordinates
            let mut pt = vec![Q::zero(); n];
            for (i, &v) in span.iter().enumerate() {
                pt[v] = w[i].clone();
            }
            let assign: Vec<(usize, Q)> = span.iter().map(|&v| (v, pt[v].clone())).collect();
            for (v, e) in &subs {
                pt[*v] = e.evaluate(&assign).constant_term();
            }
            pt
        })
    } else if eqs.is_empty() {
        let mut pt = vec![Q::zero(); n];
        let assign: Vec<(usize, Q)> = span.iter().map(|&v| (v, Q::zero())).collect();
        for (v, e) in &subs {
            pt[*v] = e.evaluate(&assign).constant_term();
        }
        Some(pt)
    } else {
        None
    };
    Ok(NestedReport {
        span_coordinates: span.iter().map(|&v| ring.name(v).to_string()).collect(),
        equations: eqs,
        dimension,
        tangent_dim_at_origin,
        quadric_rank,
        singularity,
        irreducible,
        smooth_witness,
    })
}

/// A smooth rational point of `h = 0`, found by solving for a variable in which
/// `h` is linear.
fn hypersurface_witness(h: &Poly, seed: u64) -> Option<Vec<Q>> {
    let ring = h.ring();
    let n = ring.nvars();
    let mut rng = sample::rng(seed);
    for v in (0..n).filter(|&v| h.degree_in(v) == Some(1)) {
        for _ in 0..20 {
            let fixed: Vec<(usize, Q)> = (0..n)
                .filter(|&u| u != v)
                .map(|u| (u, sample::rational(&mut rng, sample::SAMPLE_BOUND)))
                .collect();
            let Some(pt) = solve_for(std::slice::from_ref(h), &fixed, &[v], &mut rng) else {
                continue;
            };
            let grad_nonzero = (0..n).any(|u| !h.derivative(u).evaluate_point(&pt).is_zero());
            if grad_nonzero {
                return Some(pt);
            }
        }
    }
    None
}

/// `1` when `x` is certified smooth of the expected codimension at `point`.
pub fn is_smooth_point(s: &AffineScheme, point: &[Q]) -> Result<bool> {
    let c = s.codim.unwrap_or(s.equations.len());
    Ok(jacobian_rank(s, point)? == c)
}

#[doc(hidden)]
pub fn one(ring: &Ring) -> Poly {
    Poly::constant(ring, Q::one())
}
