//! Gradients of length functions, minimal sets, perfection (exact rank test),
//! eutaxy (strict-positivity linear feasibility) and extremality.
//!
//! The gradient of ℓ_V at 𝒜 is [d_j·A_j(Π_j − (m/n)·I)]_j where Π_j sums the
//! A_j-orthogonal projections onto the nested flag subspaces. Perfection asks
//! that the projection family spans affinely (rank over ℚ equals
//! dim T𝒫 + 1); eutaxy that the identity is a strictly positive combination,
//! decided by an exact simplex with an ε-max objective — the verdict is a
//! certificate, never a tolerance.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::enumeration::{self, MinimaResult};
use crate::forms::{FlagVector, HumbertForm};
use crate::lattice::IMat;
use crate::matrix::Matrix;
use crate::partitions::Partition;
use crate::rat::{fmt_rat, Rat};
use crate::simplex::{maximize, LpOutcome};
use crate::{Error, Result};

/// Tangent vector at 𝒜: per-component symmetric matrices with
/// tr(A_j⁻¹X_j) = 0 for every component.
#[derive(Clone, Debug)]
pub struct TangentVector {
    pub components: Vec<Matrix>,
}

/// Gradients of length functions live in the tangent space.
pub type GradientVec = TangentVector;

impl TangentVector {
    pub fn new(form: &HumbertForm, components: Vec<Matrix>) -> Result<Self> {
        if components.len() != form.components().len() {
            return Err(Error::ShapeMismatch("tangent component count".into()));
        }
        for ((gram, _, _), x) in form.components().iter().zip(&components) {
            if !x.is_symmetric() {
                return Err(Error::NotSymmetric);
            }
            let tr = gram.matrix().inverse()?.mul(x).trace();
            if !tr.is_zero() {
                return Err(Error::Invalid("tangent vector must satisfy tr(A⁻¹X) = 0".into()));
            }
        }
        Ok(TangentVector { components })
    }
}

/// Per-component sums Π_j = Σ_ℓ p_{A_j, X_{λ*_ℓ}} over the flag columns.
#[derive(Clone, Debug)]
pub struct ProjectionSum {
    pub components: Vec<Matrix>,
}

/// One minimal flag with its projection sum and gradient.
#[derive(Clone, Debug)]
pub struct MinimalSetEntry {
    pub flag: FlagVector,
    pub projection_sum: ProjectionSum,
    pub gradient: GradientVec,
}

/// All minima of 𝒜 with attached differential data.
#[derive(Clone, Debug)]
pub struct MinimalSet {
    pub shape: Partition,
    pub minimum: Rat,
    pub entries: Vec<MinimalSetEntry>,
    pub certified: bool,
}

/// The A-orthogonal projection p = X(XᵀAX)⁻¹XᵀA onto the column span of X.
/// Idempotent and A-self-adjoint (A·p symmetric). Errors on rank-deficient X.
pub fn projection(a: &Matrix, x: &IMat) -> Result<Matrix> {
    let xm = x.to_matrix();
    let inner = xm.transpose().mul(&a.mul(&xm));
    let inv = inner.inverse().map_err(|_| Error::DegenerateFlag)?;
    Ok(xm.mul(&inv).mul(&xm.transpose()).mul(a))
}

fn prefix(x: &IMat, k: usize) -> IMat {
    x.take_columns(k)
}

/// Σ_ℓ p_{A, X_{λ*_ℓ}} for one component: one projection per diagram column.
fn projection_sum_component(a: &Matrix, flag: &FlagVector) -> Result<Matrix> {
    let n = a.rows();
    let mut acc = Matrix::zero(n, n);
    for h in flag.shape().column_heights() {
        acc = acc.add(&projection(a, &prefix(flag.matrix(), h))?);
    }
    Ok(acc)
}

pub fn projection_sum(form: &HumbertForm, flag: &FlagVector) -> Result<ProjectionSum> {
    let components = form
        .components()
        .iter()
        .map(|(g, _, _)| projection_sum_component(g.matrix(), flag))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectionSum { components })
}

/// ∇ℓ_X(𝒜) = [d_j·A_j(Π_j − (m/n)·I)]_j, exact. The per-component tangency
/// tr(A_j⁻¹·grad_j) = 0 holds identically.
pub fn gradient(form: &HumbertForm, flag: &FlagVector) -> Result<GradientVec> {
    let n = form.dim();
    let m = flag.shape().weight();
    let ratio = Rat::new(m.into(), (n as i64).into());
    let sums = projection_sum(form, flag)?;
    let mut out = Vec::with_capacity(sums.components.len());
    for ((gram, degree, _), pi) in form.components().iter().zip(&sums.components) {
        let centered = pi.sub(&Matrix::identity(n).scale(&ratio));
        let scaled = gram.matrix().mul(&centered).scale(&Rat::new(
            (*degree as i64).into(),
            1.into(),
        ));
        debug_assert!(scaled.is_symmetric());
        out.push(scaled);
    }
    TangentVector::new(form, out)
}

/// ⟨∇,∇⟩_𝒜 = Σ_j d_j²·tr((Π_j − (m/n)·I)²), exact. Constant across the
/// minimal set; equals (r₁+4r₂)(Σ_ℓ(2ℓ−1)λ*_ℓ − m²/n), see
/// [`gradient_norm_sq_closed_form`].
pub fn gradient_norm_sq(form: &HumbertForm, flag: &FlagVector) -> Result<Rat> {
    let n = form.dim();
    let m = flag.shape().weight();
    let ratio = Rat::new(m.into(), (n as i64).into());
    let sums = projection_sum(form, flag)?;
    let mut acc = Rat::zero();
    for ((_, degree, _), pi) in form.components().iter().zip(&sums.components) {
        let centered = pi.sub(&Matrix::identity(n).scale(&ratio));
        let tr = centered.mul(&centered).trace();
        acc += Rat::new((*degree as i64 * *degree as i64).into(), 1.into()) * tr;
    }
    Ok(acc)
}

/// The derived closed form (r₁+4r₂)·(Σ_ℓ (2ℓ−1)·λ*_ℓ − m²/n), from
/// tr(p_ℓ p_ℓ') = min(λ*_ℓ, λ*_ℓ') on nested projections: the cross terms
/// contribute Σ(2ℓ−1)λ*_ℓ, the mixed term −2m²/n, and the (m/n)²·tr(I) term
/// adds back m²/n. (A variant that ends in +(m/n)² instead of +m²/n drops the
/// trace factor n and fails the constancy check already at λ=(1), n=2.)
pub fn gradient_norm_sq_closed_form(shape: &Partition, n: usize, r1: u32, r2: u32) -> Rat {
    let heights = shape.column_heights();
    let m = shape.weight() as i64;
    let mut sum = Rat::zero();
    for (idx, &h) in heights.iter().enumerate() {
        let l = idx as i64 + 1;
        sum += Rat::from_integer(((2 * l - 1) * h as i64).into());
    }
    sum -= Rat::new((m * m).into(), (n as i64).into());
    Rat::from_integer(((r1 + 4 * r2) as i64).into()) * sum
}

/// Minimal flags with projections and gradients attached, deduplicated by
/// canonical flag (distinct chains give distinct length functions).
pub fn minimal_set(form: &HumbertForm, shape: &Partition) -> Result<MinimalSet> {
    let result: MinimaResult = enumeration::minimum(form, shape)?;
    minimal_set_from(form, shape, &result)
}

pub fn minimal_set_from(
    form: &HumbertForm,
    shape: &Partition,
    result: &MinimaResult,
) -> Result<MinimalSet> {
    let mut entries = Vec::with_capacity(result.witnesses.len());
    for flag in &result.witnesses {
        let projection_sum = projection_sum(form, flag)?;
        let gradient = gradient(form, flag)?;
        entries.push(MinimalSetEntry { flag: flag.clone(), projection_sum, gradient });
    }
    Ok(MinimalSet {
        shape: shape.clone(),
        minimum: result.minimum.clone(),
        entries,
        certified: result.certified,
    })
}

/// Perfection report: rank over ℚ of the flattened projection family against
/// the affine-span requirement r₁·n(n+1)/2 + r₂·n² − (r₁+r₂) + 1.
#[derive(Clone, Debug, Serialize)]
pub struct PerfectionReport {
    pub perfect: bool,
    pub rank: usize,
    pub required_rank: usize,
    /// indices of minimal-set entries whose projections realize the rank
    pub rank_basis: Vec<usize>,
}

pub fn is_perfect(form: &HumbertForm, set: &MinimalSet) -> PerfectionReport {
    let n = form.dim();
    let r1 = form.r1();
    let r2 = form.r2();
    let required_rank = r1 * n * (n + 1) / 2 + r2 * n * n - (r1 + r2) + 1;
    // flatten the symmetrized family A_j·Π_j (same rank as Π_j; symmetric, so
    // upper-triangle coordinates are faithful), stacked over components
    let rows: Vec<Vec<Rat>> = set
        .entries
        .iter()
        .map(|e| {
            let mut row = Vec::new();
            for ((gram, _, _), pi) in form.components().iter().zip(&e.projection_sum.components)
            {
                let sym = gram.matrix().mul(pi);
                for i in 0..n {
                    for j in i..n {
                        row.push(sym.at(i, j).clone());
                    }
                }
            }
            row
        })
        .collect();
    let (rank, rank_basis) = row_rank_with_pivots(rows);
    PerfectionReport { perfect: rank == required_rank, rank, required_rank, rank_basis }
}

/// Rank over ℚ of the row family, returning the indices of a maximal
/// independent subfamily (greedy in input order).
fn row_rank_with_pivots(rows: Vec<Vec<Rat>>) -> (usize, Vec<usize>) {
    let mut reduced: Vec<Vec<Rat>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new(); // column of each reduced row
    let mut picked: Vec<usize> = Vec::new();
    for (idx, mut row) in rows.into_iter().enumerate() {
        for (r, &pc) in reduced.iter().zip(&pivots) {
            if row[pc].is_zero() {
                continue;
            }
            let f = &row[pc] / &r[pc];
            for c in 0..row.len() {
                let delta = &f * &r[c];
                row[c] -= delta;
            }
        }
        if let Some(pc) = row.iter().position(|v| !v.is_zero()) {
            reduced.push(row);
            pivots.push(pc);
            picked.push(idx);
        }
    }
    (picked.len(), picked)
}

/// Eutaxy report: strictly positive ρ with Σ_ς ρ_ς·Π_ς = (m/n)·𝒜 (as the
/// symmetric system Σ ρ_ς·A_jΠ_{ς,j} = (m/n)·A_j). `boundary` marks the
/// degenerate ε = 0 optimum, reported as not eutactic.
#[derive(Clone, Debug, Serialize)]
pub struct EutaxyReport {
    pub eutactic: bool,
    pub boundary: bool,
    /// strictly positive coefficients, one per minimal-set entry, as "p/q"
    pub certificate: Option<Vec<String>>,
    #[serde(skip)]
    pub rho: Option<Vec<Rat>>,
}

pub fn is_eutactic(form: &HumbertForm, set: &MinimalSet) -> EutaxyReport {
    let n = form.dim();
    let k = set.entries.len();
    let m = set.shape.weight();
    let ratio = Rat::new(m.into(), (n as i64).into());

    // constraint rows: upper triangle of each component equation
    let mut target = Vec::new();
    for (gram, _, _) in form.components() {
        let goal = gram.matrix().scale(&ratio);
        for i in 0..n {
            for j in i..n {
                target.push(goal.at(i, j).clone());
            }
        }
    }
    let rows = target.len();
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(k);
    for e in &set.entries {
        let mut col = Vec::with_capacity(rows);
        for ((gram, _, _), pi) in form.components().iter().zip(&e.projection_sum.components) {
            let sym = gram.matrix().mul(pi);
            for i in 0..n {
                for j in i..n {
                    col.push(sym.at(i, j).clone());
                }
            }
        }
        columns.push(col);
    }

    // variables: s_1..s_k ≥ 0, p ≥ 0, q ≥ 0 with ρ_ς = s_ς + (p − q);
    // maximize ε = p − q subject to Σ_ς ρ_ς·col_ς = target
    let nvars = k + 2;
    let a = Matrix::from_fn(rows, nvars, |r, c| {
        if c < k {
            columns[c][r].clone()
        } else {
            let w: Rat = columns.iter().map(|col| col[r].clone()).sum();
            if c == k {
                w
            } else {
                -w
            }
        }
    });
    let mut objective = vec![Rat::zero(); nvars];
    objective[k] = Rat::one();
    objective[k + 1] = -Rat::one();

    match maximize(&objective, &a, &target) {
        LpOutcome::Optimal { x, value } => {
            let eutactic = value.is_positive();
            let boundary = value.is_zero();
            let rho: Vec<Rat> = (0..k).map(|i| &x[i] + &value).collect();
            let certificate = eutactic.then(|| rho.iter().map(fmt_rat).collect());
            EutaxyReport { eutactic, boundary, certificate, rho: eutactic.then_some(rho) }
        }
        LpOutcome::Infeasible => {
            EutaxyReport { eutactic: false, boundary: false, certificate: None, rho: None }
        }
        LpOutcome::Unbounded => {
            // ε is bounded above by 1/k whenever feasible; unbounded cannot
            // happen, but fail closed if the system degenerates
            EutaxyReport { eutactic: false, boundary: false, certificate: None, rho: None }
        }
    }
}

/// Voronoï-type verdict: extreme ⇔ perfect ∧ eutactic.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremalityReport {
    pub extreme: bool,
    pub perfection: PerfectionReport,
    pub eutaxy: EutaxyReport,
}

pub fn is_extreme(form: &HumbertForm, set: &MinimalSet) -> ExtremalityReport {
    let perfection = is_perfect(form, set);
    let eutaxy = is_eutactic(form, set);
    ExtremalityReport { extreme: perfection.perfect && eutaxy.eutactic, perfection, eutaxy }
}
