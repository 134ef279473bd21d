//! The maps `Φ_{E,I}`, `Δ_{E,I}`, `Ψ_{E_0,I}` into `O/I` and the surjectivity
//! criteria built from them.

use num_traits::Zero;

use crate::algebra::linalg::MatrixQ;
use crate::algebra::ring::{monomials_up_to, Q};
use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::family::{ContactFamily, FamilyKind};
use crate::local::{local_colength, mul_truncated, series_invert, LocalIdeal, LocalQuotient};

/// A linear map `T_0 Λ -> O/I` with its rank data.
#[derive(Clone, Debug)]
pub struct PhiReport {
    /// Rows: standard monomials of `O/I`; columns: `∂/∂λ_i`.
    pub matrix: MatrixQ,
    pub rank: usize,
    pub quotient_dim: usize,
    pub surjective: bool,
    /// Basis monomials spanning a complement of the image.
    pub cokernel: Vec<String>,
}

impl PhiReport {
    fn from_matrix(matrix: MatrixQ) -> Self {
        let rank = matrix.rank();
        let quotient_dim = matrix.nrows();
        let cokernel = cokernel_representatives(&matrix, rank);
        PhiReport {
            surjective: rank == quotient_dim,
            matrix,
            rank,
            quotient_dim,
            cokernel,
        }
    }
}

/// Greedily extend the column space with unit vectors.
fn cokernel_representatives(m: &MatrixQ, rank: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = m.clone();
    let mut r = rank;
    for i in 0..m.nrows() {
        if r == m.nrows() {
            break;
        }
        let mut e = vec![Q::zero(); m.nrows()];
        e[i] = Q::from_integer(1.into());
        let next = current.hstack(&MatrixQ::from_columns(m.nrows(), &[e]));
        let nr = next.rank();
        if nr > r {
            out.push(m.row_labels.get(i).cloned().unwrap_or_else(|| i.to_string()));
            current = next;
            r = nr;
        }
    }
    out
}

fn certified(ideal: &LocalIdeal) -> Result<LocalQuotient> {
    local_colength(ideal)
}

/// Move a parameter-free polynomial from the family's ring into the ideal's.
fn into_ideal_ring(p: &Poly, ideal: &LocalIdeal) -> Result<Poly> {
    p.embed(ideal.ring())
}

fn ensure_e0(fam: &ContactFamily, q: &LocalQuotient, ideal: &LocalIdeal) -> Result<Poly> {
    let e0 = into_ideal_ring(&fam.e0(), ideal)?;
    if !q.contains(&e0)? {
        return Err(Error::E0NotInIdeal);
    }
    Ok(e0)
}

fn columns_matrix(q: &LocalQuotient, cols: &[(String, Poly)]) -> Result<MatrixQ> {
    let vecs = cols
        .iter()
        .map(|(_, p)| q.coordinates(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixQ::from_columns(q.colength(), &vecs)
        .with_labels(q.basis_labels(), cols.iter().map(|(l, _)| l.clone()).collect()))
}

fn geometric(fam: &ContactFamily) -> Vec<usize> {
    vec![fam.x(), fam.y()]
}

/// Column polynomials of `Φ`: `∂_λ (f/g)` at `λ = 0`, by the quotient rule
/// with a truncated inverse of `g_0^2`.
fn phi_columns(fam: &ContactFamily, order: u32) -> Result<Vec<(String, Poly)>> {
    let (f, g) = (fam.f()?, fam.g()?);
    let f0 = fam.at_origin(f);
    let g0 = fam.at_origin(g);
    let geo = geometric(fam);
    let g0sq_inv = series_invert(&(&g0 * &g0), &geo, order)?;
    let ring = fam.ring();
    fam.param_indices()
        .iter()
        .map(|&p| {
            let df = fam.at_origin(&f.derivative(p));
            let dg = fam.at_origin(&g.derivative(p));
            let num = &(&df * &g0) - &(&f0 * &dg);
            let col = mul_truncated(&num, &g0sq_inv, &geo, order);
            Ok((format!("d/d{}", ring.name(p)), col))
        })
        .collect()
}

fn delta_columns(fam: &ContactFamily) -> Vec<(String, Poly)> {
    let ring = fam.ring();
    fam.param_indices()
        .iter()
        .map(|&p| (format!("d/d{}", ring.name(p)), fam.at_origin(&fam.e().derivative(p))))
        .collect()
}

fn embed_cols(cols: Vec<(String, Poly)>, ideal: &LocalIdeal) -> Result<Vec<(String, Poly)>> {
    cols.into_iter()
        .map(|(l, p)| Ok((l, into_ideal_ring(&p, ideal)?)))
        .collect()
}

/// `Φ_{E,I}: ∂_λi ↦ ∂_λi(f/g)|_{λ=0} mod I`.
pub fn phi_map(fam: &ContactFamily, ideal: &LocalIdeal) -> Result<PhiReport> {
    fam.w()?;
    let q = certified(ideal)?;
    ensure_e0(fam, &q, ideal)?;
    let cols = embed_cols(phi_columns(fam, q.order())?, ideal)?;
    Ok(PhiReport::from_matrix(columns_matrix(&q, &cols)?))
}

/// `Δ_{E,I}: ∂_λi ↦ ∂_λi E|_{λ=0} mod I`, for either kind of family.
pub fn delta_map(fam: &ContactFamily, ideal: &LocalIdeal) -> Result<PhiReport> {
    let q = certified(ideal)?;
    ensure_e0(fam, &q, ideal)?;
    let cols = embed_cols(delta_columns(fam), ideal)?;
    Ok(PhiReport::from_matrix(columns_matrix(&q, &cols)?))
}

/// `E_0` in normal form: `(f_0 g_0^{-1}, E_0 g_0^{-1})` truncated at `order`.
/// Multiplying by a unit does not change the ideals built from these.
fn normalized_fiber(fam: &ContactFamily, order: u32) -> Result<(Poly, Poly)> {
    let w = fam.w()?;
    let geo = geometric(fam);
    let f0 = fam.at_origin(fam.f()?);
    let g0 = fam.at_origin(fam.g()?);
    let ginv = series_invert(&g0, &geo, order)?;
    let f0n = mul_truncated(&f0, &ginv, &geo, order);
    let ring = fam.ring();
    let e0n = &(&Poly::var(ring, fam.y()) * &f0n) + &Poly::var(ring, fam.x()).pow(w);
    Ok((f0n, e0n))
}

/// The three generators `x ∂f_0/∂x - w f_0`, `∂E_0/∂x`, `∂E_0/∂y` of the
/// ideal behind `Ψ`, after checking `y (x f_0x - w f_0) = x E_0x - w E_0`.
pub fn psi_generators(fam: &ContactFamily, order: u32) -> Result<[Poly; 3]> {
    let w = fam.w()?;
    let (x, y) = (fam.x(), fam.y());
    let ring = fam.ring();
    let (f0, e0) = normalized_fiber(fam, order)?;
    let wq = Poly::int(ring, w as i64);
    let xv = Poly::var(ring, x);
    let first = &(&xv * &f0.derivative(x)) - &(&wq * &f0);
    let ex = e0.derivative(x);
    let ey = e0.derivative(y);
    let lhs = &Poly::var(ring, y) * &first;
    let rhs = &(&xv * &ex) - &(&wq * &e0);
    assert_eq!(lhs, rhs, "Euler-type relation for Ψ failed");
    Ok([first, ex, ey])
}

/// Matrix whose column space is the image of
/// `⟨x ∂f_0/∂x - w f_0, ∂E_0/∂x, ∂E_0/∂y⟩` in `O/I`.
pub fn psi_map(fam: &ContactFamily, ideal: &LocalIdeal) -> Result<MatrixQ> {
    let q = certified(ideal)?;
    ensure_e0(fam, &q, ideal)?;
    let gens = psi_generators(fam, q.order())?;
    let names = ["x*f0_x - w*f0", "E0_x", "E0_y"];
    let ring = ideal.ring();
    // Multipliers of degree >= the certified power land in I.
    let k = q.certified_power();
    let mults = if k == 0 {
        Vec::new()
    } else {
        monomials_up_to(ring.nvars(), ideal.vars(), k - 1)
    };
    let mut cols = Vec::new();
    for (g, name) in gens.iter().zip(names) {
        let g = into_ideal_ring(g, ideal)?;
        for m in &mults {
            let label = if m.is_one() {
                name.to_string()
            } else {
                format!("{}*({name})", m.display(ring))
            };
            cols.push((label, g.mul_monomial(m, &Q::from_integer(1.into()))));
        }
    }
    columns_matrix(&q, &cols)
}

/// One block of the stacked criterion.
#[derive(Clone, Debug)]
pub struct StarBlock {
    pub kind: &'static str,
    pub colength: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct StarReport {
    pub matrix: MatrixQ,
    pub rank: usize,
    pub target_dim: usize,
    pub parameter_dim: usize,
    pub surjective: bool,
    /// `dim Λ - Σ d_i - Σ d'_j`.
    pub relative_dimension: i64,
    pub blocks: Vec<StarBlock>,
}

/// Stack `Φ` (contact entries) and `Δ` (interior entries) into one map
/// `T_0 Λ -> ⊕ O/I_i`.
pub fn check_condition_star(
    contact: &[(ContactFamily, LocalIdeal)],
    interior: &[(ContactFamily, LocalIdeal)],
    parameter_dim: usize,
) -> Result<StarReport> {
    let mut blocks = Vec::new();
    let mut stacked: Option<MatrixQ> = None;
    let all = contact.iter().map(|e| (e, true)).chain(interior.iter().map(|e| (e, false)));
    for ((fam, ideal), is_contact) in all {
        if fam.params().dim() != parameter_dim {
            return Err(Error::InvalidArgument(format!(
                "family has {} parameters, expected {parameter_dim}",
                fam.params().dim()
            )));
        }
        let rep = if is_contact {
            phi_map(fam, ideal)?
        } else {
            delta_map(fam, ideal)?
        };
        blocks.push(StarBlock {
            kind: if is_contact { "phi" } else { "delta" },
            colength: rep.quotient_dim,
            rank: rep.rank,
        });
        stacked = Some(match stacked {
            None => rep.matrix,
            Some(m) => m.vstack(&rep.matrix),
        });
    }
    let matrix = stacked.unwrap_or_else(|| MatrixQ::zeros(0, parameter_dim));
    let rank = matrix.rank();
    let target_dim: usize = blocks.iter().map(|b| b.colength).sum();
    Ok(StarReport {
        rank,
        target_dim,
        parameter_dim,
        surjective: rank == target_dim,
        relative_dimension: parameter_dim as i64 - target_dim as i64,
        blocks,
        matrix,
    })
}

#[derive(Clone, Debug)]
pub struct RelaxedReport {
    pub quotient_dim: usize,
    pub phi_rank: usize,
    pub psi_rank: usize,
    /// Rank of `[Φ | Ψ]` onto `O/I`.
    pub stacked_rank: usize,
    /// Colength of `I + ⟨Ψ generators⟩`.
    pub enlarged_dim: usize,
    /// Rank of `Φ` onto the enlarged quotient.
    pub phi_rank_enlarged: usize,
    pub holds: bool,
    pub formulations_agree: bool,
}

/// Surjectivity of `Φ` modulo the image of `Ψ`, decided twice: as the rank of
/// `[Φ | Ψ]` onto `O/I` and as the rank of `Φ` onto `O/(I + ⟨Ψ generators⟩)`.
pub fn check_relaxed_condition(fam: &ContactFamily, ideal: &LocalIdeal) -> Result<RelaxedReport> {
    let phi = phi_map(fam, ideal)?;
    let psi = psi_map(fam, ideal)?;
    let psi_rank = psi.rank();
    let stacked_rank = phi.matrix.hstack(&psi).rank();
    let holds_stacked = stacked_rank == phi.quotient_dim;

    let q = certified(ideal)?;
    let gens = psi_generators(fam, q.order())?
        .iter()
        .map(|g| into_ideal_ring(g, ideal))
        .collect::<Result<Vec<_>>>()?;
    let enlarged = certified(&ideal.extended(&gens)?)?;
    let cols = embed_cols(phi_columns(fam, enlarged.order().max(q.order()))?, ideal)?;
    let phi_enl = if enlarged.colength() == 0 {
        0
    } else {
        columns_matrix(&enlarged, &cols)?.rank()
    };
    let holds_enlarged = phi_enl == enlarged.colength();
    Ok(RelaxedReport {
        quotient_dim: phi.quotient_dim,
        phi_rank: phi.rank,
        psi_rank,
        stacked_rank,
        enlarged_dim: enlarged.colength(),
        phi_rank_enlarged: phi_enl,
        holds: holds_stacked,
        formulations_agree: holds_stacked == holds_enlarged,
    })
}

/// Whether `x ∂f_0/∂x - w f_0 ∈ ⟨E_0⟩ + C` for a user-supplied conductor `C`.
pub fn conductor_membership_check(fam: &ContactFamily, conductor: &[Poly]) -> Result<bool> {
    let ring = fam.ring();
    let geo = geometric(fam);
    let mut gens = vec![fam.e0()];
    for c in conductor {
        gens.push(c.embed(ring)?);
    }
    let ideal = LocalIdeal::new(ring, geo, gens)?;
    let q = certified(&ideal)?;
    let [first, _, _] = psi_generators(fam, q.order())?;
    q.contains(&first)
}

/// Kind-aware dispatch used by reports: `Φ` for contact families, `Δ` otherwise.
pub fn tangent_map(fam: &ContactFamily, ideal: &LocalIdeal) -> Result<PhiReport> {
    match fam.kind() {
        FamilyKind::Contact { .. } => phi_map(fam, ideal),
        FamilyKind::Interior => delta_map(fam, ideal),
    }
}
