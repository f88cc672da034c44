//! Humbert forms, flag vectors, the evaluation 𝒜\[X\] by principal minors,
//! content ideals, determinants, archimedean heights and the Hermite
//! invariant for a known minimum.
//!
//! Over ℚ a Humbert form is a single positive definite Gram matrix; the type
//! keeps the r-tuple structure so the Voronoï machinery stays general. The
//! evaluation is 𝒜\[X\] = ∏_j ∏_{ℓ=1}^{s} Δ_{λ*_ℓ}(XᵀA_jX)^{d_j}: one principal
//! minor per column of the diagram, of order the column height.

use std::io::BufRead;

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::lattice::IMat;
use crate::matrix::Matrix;
use crate::partitions::Partition;
use crate::rat::{exact_root, fmt_rat, parse_rat, pow_rat, rat_gcd, to_f64, Rat};
use crate::schur::{self, SchurVector, VectorTableau};
use crate::{Error, Result};

/// A positive definite symmetric rational matrix, certified by exact LDLᵀ at
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    mat: Matrix,
}

impl GramForm {
    pub fn new(mat: Matrix) -> Result<Self> {
        if !mat.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        match mat.ldlt() {
            Some((_, pivots)) if pivots.iter().all(Rat::is_positive) => Ok(GramForm { mat }),
            _ => Err(Error::NotPositiveDefinite),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        GramForm::new(Matrix::from_i64_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn det(&self) -> Rat {
        self.mat.det()
    }

    /// The dual form A⁻¹ (the Gram matrix of the dual lattice of ℤⁿ).
    pub fn dual(&self) -> GramForm {
        GramForm { mat: self.mat.inverse().expect("positive definite is invertible") }
    }

}

/// Kind of archimedean place a component lives at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PlaceKind {
    Real,
    Complex,
}

/// An r-tuple of positive definite components with local degrees. Over ℚ:
/// exactly one real component of degree 1.
#[derive(Clone, Debug)]
pub struct HumbertForm {
    components: Vec<(GramForm, u32, PlaceKind)>,
}

impl HumbertForm {
    /// The k = ℚ case: a single real place of local degree 1.
    pub fn rational(gram: GramForm) -> Self {
        HumbertForm { components: vec![(gram, 1, PlaceKind::Real)] }
    }

    /// General r-tuple with per-place local degrees (1 at real places, 2 at
    /// complex ones). Minima enumeration stays ℚ-only; evaluation, gradients
    /// and the Voronoï formulas accept the full tuple.
    pub fn new(components: Vec<(GramForm, PlaceKind)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Invalid("a Humbert form needs at least one component".into()));
        }
        let n = components[0].0.dim();
        if components.iter().any(|(g, _)| g.dim() != n) {
            return Err(Error::ShapeMismatch("components of different dimensions".into()));
        }
        Ok(HumbertForm {
            components: components
                .into_iter()
                .map(|(g, kind)| {
                    let degree = match kind {
                        PlaceKind::Real => 1,
                        PlaceKind::Complex => 2,
                    };
                    (g, degree, kind)
                })
                .collect(),
        })
    }

    pub fn components(&self) -> &[(GramForm, u32, PlaceKind)] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components[0].0.dim()
    }

    pub fn r1(&self) -> usize {
        self.components.iter().filter(|c| c.2 == PlaceKind::Real).count()
    }

    pub fn r2(&self) -> usize {
        self.components.iter().filter(|c| c.2 == PlaceKind::Complex).count()
    }

    /// The single Gram matrix of a rational form.
    pub fn single(&self) -> &GramForm {
        assert_eq!(self.components.len(), 1, "expected a form over ℚ");
        &self.components[0].0
    }

    /// det_L(𝒜) = ∏_j det(A_j)^{d_j} for L = ℤⁿ.
    pub fn det(&self) -> Rat {
        self.components
            .iter()
            .map(|(g, d, _)| pow_rat(&g.det(), *d as i64))
            .product()
    }
}

/// An n×t integer matrix whose nested column spans define a flag of shape λ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlagVector {
    shape: Partition,
    mat: IMat,
}

impl FlagVector {
    pub fn new(shape: Partition, mat: IMat) -> Result<Self> {
        if mat.cols() != shape.height() {
            return Err(Error::ShapeMismatch(format!(
                "flag matrix has {} columns, shape {shape} needs {}",
                mat.cols(),
                shape.height()
            )));
        }
        if mat.rank() != mat.cols() {
            return Err(Error::DegenerateFlag);
        }
        Ok(FlagVector { shape, mat })
    }

    /// The canonical flag e₁,…,e_t.
    pub fn canonical(shape: &Partition, n: usize) -> Result<Self> {
        if shape.height() > n {
            return Err(Error::ShapeMismatch(format!(
                "shape {shape} does not fit in dimension {n}"
            )));
        }
        let t = shape.height();
        let mat = IMat::from_fn(n, t, |r, c| {
            if r == c {
                num::BigInt::one()
            } else {
                num::BigInt::zero()
            }
        });
        Ok(FlagVector { shape: shape.clone(), mat })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn matrix(&self) -> &IMat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Columns as rational vectors, for the Schur-module side.
    pub fn rational_columns(&self) -> Vec<Vec<Rat>> {
        (0..self.mat.cols())
            .map(|c| self.mat.column(c).into_iter().map(Rat::from_integer).collect())
            .collect()
    }

    /// The flag as an element of the Schur module.
    pub fn to_schur_vector(&self) -> Result<SchurVector> {
        let vt =
            VectorTableau::from_flag_columns(&self.shape, &self.rational_columns(), self.dim())?;
        Ok(schur::straighten(&vt))
    }
}

/// The content ideal 𝔄_X over ℚ: the fractional ideal is (g) for a unique
/// positive rational generator g, the gcd of the SSYT coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentIdeal {
    generator: Rat,
}

impl ContentIdeal {
    pub fn new(generator: Rat) -> Self {
        assert!(generator.is_positive(), "content ideal generator must be positive");
        ContentIdeal { generator }
    }

    pub fn generator(&self) -> &Rat {
        &self.generator
    }

    /// A flag vector is primitive when its content ideal is (1).
    pub fn is_unit(&self) -> bool {
        self.generator.is_one()
    }
}

/// evaluate(𝒜, X) = ∏_j ∏_ℓ Δ_{λ*_ℓ}(XᵀA_jX)^{d_j}, exact. Errors on
/// rank-deficient flags (a vanishing minor): degenerate flags are outside
/// 𝕊^λ_♯, not value zero.
pub fn evaluate(form: &HumbertForm, flag: &FlagVector) -> Result<Rat> {
    let mut acc = Rat::one();
    for (gram, degree, _) in form.components() {
        let v = evaluate_gram(gram.matrix(), &flag.shape, &flag.mat)?;
        acc *= pow_rat(&v, *degree as i64);
    }
    Ok(acc)
}

/// Single-component evaluation ∏_ℓ Δ_{λ*_ℓ}(XᵀAX).
pub fn evaluate_gram(a: &Matrix, shape: &Partition, x: &IMat) -> Result<Rat> {
    if x.cols() != shape.height() {
        return Err(Error::ShapeMismatch(format!(
            "flag matrix has {} columns, shape {shape} needs {}",
            x.cols(),
            shape.height()
        )));
    }
    let xm = x.to_matrix();
    let gram = xm.transpose().mul(&a.mul(&xm));
    let mut acc = Rat::one();
    for h in shape.column_heights() {
        let minor = gram.principal_minor(h);
        if !minor.is_positive() {
            return Err(Error::DegenerateFlag);
        }
        acc *= minor;
    }
    Ok(acc)
}

/// Content ideal over ℚ: the gcd of the SSYT coordinates of the straightened
/// flag. Errors on the zero vector.
pub fn content(shape: &Partition, columns: &[Vec<Rat>], n: usize) -> Result<ContentIdeal> {
    let vt = VectorTableau::from_flag_columns(shape, columns, n)?;
    let sv = schur::straighten(&vt);
    if sv.is_zero() {
        return Err(Error::Invalid("content of the zero vector".into()));
    }
    let coords: Vec<Rat> = sv.coords().values().cloned().collect();
    Ok(ContentIdeal::new(rat_gcd(&coords)))
}

pub fn content_of_flag(flag: &FlagVector) -> Result<ContentIdeal> {
    content(&flag.shape, &flag.rational_columns(), flag.dim())
}

/// γ_L(𝒜) = m_L(𝒜) / det_L(𝒜)^{m/n} as an exactly comparable value. The
/// power m/n is reduced first; when det^{m/n} is irrational the comparison
/// contract cross-multiplies integer powers instead of taking roots.
#[derive(Clone, Debug)]
pub struct InvariantValue {
    minimum: Rat,
    det: Rat,
    /// reduced exponent m/n as (numerator, denominator)
    exp: (u32, u32),
}

impl InvariantValue {
    pub fn new(minimum: Rat, det: Rat, weight: u32, n: u32) -> Self {
        assert!(minimum.is_positive() && det.is_positive());
        let g = num::integer::gcd(weight, n);
        InvariantValue { minimum, det, exp: (weight / g, n / g) }
    }

    pub fn minimum(&self) -> &Rat {
        &self.minimum
    }

    pub fn det(&self) -> &Rat {
        &self.det
    }

    /// Reduced exponent (p, q) with γ = min / det^{p/q}.
    pub fn exponent(&self) -> (u32, u32) {
        self.exp
    }

    /// Exact rational value when det^{p/q} is rational.
    pub fn exact_rational(&self) -> Option<Rat> {
        let powered = pow_rat(&self.det, self.exp.0 as i64);
        exact_root(&powered, self.exp.1).map(|root| &self.minimum / root)
    }

    /// γ^q = min^q / det^p, always rational: the defining power equation.
    pub fn power_equation(&self) -> (u32, Rat) {
        let (p, q) = self.exp;
        let value = pow_rat(&self.minimum, q as i64) / pow_rat(&self.det, p as i64);
        (q, value)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.minimum) / to_f64(&self.det).powf(self.exp.0 as f64 / self.exp.1 as f64)
    }

    /// Exact comparison by cross-multiplied integer powers.
    pub fn cmp_exact(&self, other: &InvariantValue) -> std::cmp::Ordering {
        let q1 = self.exp.1 as i64;
        let q2 = other.exp.1 as i64;
        let l = num::integer::lcm(q1, q2);
        // γ_i^L = min_i^L / det_i^{p_i·L/q_i}, all integer exponents
        let lhs = pow_rat(&self.minimum, l) / pow_rat(&self.det, self.exp.0 as i64 * (l / q1));
        let rhs =
            pow_rat(&other.minimum, l) / pow_rat(&other.det, other.exp.0 as i64 * (l / q2));
        lhs.cmp(&rhs)
    }

    pub fn eq_exact(&self, other: &InvariantValue) -> bool {
        self.cmp_exact(other) == std::cmp::Ordering::Equal
    }

    /// Human-readable rendering: exact rational, or the power equation.
    pub fn render(&self) -> String {
        match self.exact_rational() {
            Some(r) => fmt_rat(&r),
            None => {
                let (q, v) = self.power_equation();
                format!("γ^{} = {}", q, fmt_rat(&v))
            }
        }
    }
}

/// Hermite invariant for a minimum supplied by the enumeration module.
pub fn invariant(form: &HumbertForm, shape: &Partition, minimum: Rat) -> InvariantValue {
    InvariantValue::new(minimum, form.det(), shape.weight(), form.dim() as u32)
}

// ---------------------------------------------------------------------------
// Archimedean heights
// ---------------------------------------------------------------------------

/// Squared local height of π_λ(g)·X by the minors route: ∏_ℓ Δ_{λ*_ℓ}(XᵀgᵀgX)
/// over the flag columns, normalized so the height of e_{U(λ)} at g = I is 1.
pub fn height_minors(g: &Matrix, shape: &Partition, flag: &IMat) -> Result<Rat> {
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    let gram = g.transpose().mul(g);
    evaluate_gram(&gram, shape, flag)
}

/// Squared local height of π_λ(g)·X by the apolar route:
/// ⟨π_λ(g)X, π_λ(g)X⟩ / ⟨e_{U(λ)}, e_{U(λ)}⟩ in the bideterminant model.
pub fn height_apolar(g: &Matrix, x: &SchurVector, n: usize) -> Result<Rat> {
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    let shape = x.shape();
    let t_rows = shape.height();
    let mut poly = schur::PolynomialZ::zero(t_rows, n);
    for (t, c) in x.coords() {
        poly = poly.add(&schur::phi_tableau(t, n).scale(c));
    }
    let transformed = poly.substitute_right(g);
    let u = crate::partitions::highest_weight_tableau(shape);
    let phi_u = schur::phi_tableau(&u, n);
    Ok(schur::apolar_product(&transformed, &transformed)
        / schur::apolar_product(&phi_u, &phi_u))
}

/// ℓ_X(𝒜) = ln 𝒜\[X\], for the Voronoï module. Exact comparisons always go
/// through `evaluate` directly; the log is only for derivative checks.
pub fn length_function(form: &HumbertForm, flag: &FlagVector) -> Result<f64> {
    Ok(to_f64(&evaluate(form, flag)?).ln())
}

// ---------------------------------------------------------------------------
// Gram matrix file format
// ---------------------------------------------------------------------------

/// Parses the Gram file format: line 1 = n, then n lines of n whitespace
/// separated rationals ("p/q" or integers). Rejects asymmetry exactly.
pub fn parse_gram<R: BufRead>(reader: R) -> Result<GramForm> {
    let mut lines = reader.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty gram file".into()))?
        .map_err(|e| Error::Parse(e.to_string()))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension line: {first:?}")))?;
    if n == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?
            .map_err(|e| Error::Parse(e.to_string()))?;
        let row: Result<Vec<Rat>> = line.split_whitespace().map(parse_rat).collect();
        let row = row?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    let mat = Matrix::from_rows(rows);
    if !mat.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    GramForm::new(mat)
}
