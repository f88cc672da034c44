//! Inequality suite: duality, Mordell, Minkowski, Bergé–Martinet and the
//! base-change bound evaluator.
//!
//! Every comparison between rational powers is exact (cross-multiplied
//! integer powers); comparisons against transcendental right-hand sides use
//! directed rounding so "holds" is never claimed spuriously.
//!
//! Scope note: sup-level constants (suprema over all forms) are never
//! computed — for the hook shapes the n = 5 value is not even known exactly —
//! so every check here is a per-form inequality or a comparison of best
//! catalog invariants.

use num::rational::Ratio;
use num::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::enumeration;
use crate::forms::{GramForm, HumbertForm, InvariantValue};
use crate::partitions::Partition;
use crate::rat::{fmt_f64_12, fmt_rat, pow_rat, to_f64, Rat};
use crate::Result;

/// Outcome of one inequality check. Exact sides carry their defining string;
/// float renderings are for display only.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub lhs_float: String,
    pub rhs_float: String,
    pub holds: bool,
    pub slack: f64,
    pub provenance: String,
}

impl BoundReport {
    pub fn summary(&self) -> String {
        format!(
            "{}: {} ≤ {} ({} ≤ {}) → {}, slack {:.6}",
            self.name,
            self.lhs,
            self.rhs,
            self.lhs_float,
            self.rhs_float,
            if self.holds { "holds" } else { "FAILS" },
            self.slack
        )
    }
}

// ---------------------------------------------------------------------------
// Exact products of rational powers
// ---------------------------------------------------------------------------

/// ∏ baseᵢ^{expᵢ} with positive rational bases and rational exponents;
/// compared exactly by raising to the lcm of the exponent denominators.
#[derive(Clone, Debug)]
pub struct PowerProduct {
    factors: Vec<(Rat, Ratio<i64>)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct { factors: Vec::new() }
    }

    pub fn push(mut self, base: Rat, exp: Ratio<i64>) -> Self {
        assert!(base.is_positive(), "power product bases must be positive");
        if !exp.is_zero() && base != Rat::one() {
            self.factors.push((base, exp));
        }
        self
    }

    pub fn from_invariant(inv: &InvariantValue) -> Self {
        let (p, q) = inv.exponent();
        PowerProduct::one()
            .push(inv.minimum().clone(), Ratio::one())
            .push(inv.det().clone(), -Ratio::new(p as i64, q as i64))
    }

    pub fn pow(mut self, e: Ratio<i64>) -> Self {
        for f in &mut self.factors {
            f.1 *= e;
        }
        self
    }

    pub fn mul(mut self, other: &PowerProduct) -> Self {
        self.factors.extend(other.factors.iter().cloned());
        self
    }

    pub fn to_f64(&self) -> f64 {
        self.factors
            .iter()
            .map(|(b, e)| to_f64(b).powf(e.numer().to_f64().unwrap() / e.denom().to_f64().unwrap()))
            .product()
    }

    /// Exact comparison: x ≤ y ⇔ x^L ≤ y^L for the common exponent
    /// denominator L (both sides positive).
    pub fn cmp(&self, other: &PowerProduct) -> std::cmp::Ordering {
        let mut l: i64 = 1;
        for (_, e) in self.factors.iter().chain(&other.factors) {
            l = num::integer::lcm(l, *e.denom());
        }
        let raise = |pp: &PowerProduct| -> Rat {
            let mut acc = Rat::one();
            for (b, e) in &pp.factors {
                acc *= pow_rat(b, e.numer() * (l / e.denom()));
            }
            acc
        };
        raise(self).cmp(&raise(other))
    }
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

/// Best certified invariant for λ over the catalog entries of dimension n.
pub fn best_catalog_invariant(
    entries: &[CatalogEntry],
    shape: &Partition,
    n: usize,
) -> Result<Option<(String, InvariantValue)>> {
    let mut best: Option<(String, InvariantValue)> = None;
    for entry in entries.iter().filter(|e| e.n == n) {
        let form = HumbertForm::rational(entry.gram.clone());
        let res = enumeration::minimum(&form, shape)?;
        let inv = crate::forms::invariant(&form, shape, res.minimum);
        let better = match &best {
            None => true,
            Some((_, cur)) => inv.cmp_exact(cur) == std::cmp::Ordering::Greater,
        };
        if better {
            best = Some((entry.name.clone(), inv));
        }
    }
    Ok(best)
}

/// γ_{n,λ} = γ_{n,λ̄} at catalog level: compares the best invariants found
/// over the catalog for λ and its complement. The catalog is closed under
/// duals, and γ_λ(A) = γ_λ̄(A⁻¹) exactly (annihilator pairing), so the two
/// sweeps must agree.
pub fn check_duality(
    entries: &[CatalogEntry],
    shape: &Partition,
    n: usize,
) -> Result<BoundReport> {
    let bar = shape.complement(n)?;
    let (name_l, inv_l) = best_catalog_invariant(entries, shape, n)?
        .ok_or_else(|| crate::Error::Invalid(format!("no catalog entry of dimension {n}")))?;
    let (name_r, inv_r) = best_catalog_invariant(entries, &bar, n)?
        .ok_or_else(|| crate::Error::Invalid(format!("no catalog entry of dimension {n}")))?;
    let holds = inv_l.eq_exact(&inv_r);
    Ok(BoundReport {
        name: format!("duality n={n} λ=({shape}) λ̄=({bar})"),
        lhs: inv_l.render(),
        rhs: inv_r.render(),
        lhs_float: fmt_f64_12(inv_l.to_f64()),
        rhs_float: fmt_f64_12(inv_r.to_f64()),
        holds,
        slack: inv_r.to_f64() - inv_l.to_f64(),
        provenance: format!("λ best at {name_l}, complement best at {name_r}"),
    })
}

/// Per-form duality identity γ_λ(A) = γ_λ̄(A⁻¹): the annihilator of a
/// saturated chain pairs the minima exactly.
pub fn check_duality_pair(gram: &GramForm, shape: &Partition) -> Result<BoundReport> {
    let n = gram.dim();
    let bar = shape.complement(n)?;
    let form = HumbertForm::rational(gram.clone());
    let dual = HumbertForm::rational(gram.dual());
    let res = enumeration::minimum(&form, shape)?;
    let res_bar = enumeration::minimum(&dual, &bar)?;
    let inv = crate::forms::invariant(&form, shape, res.minimum);
    let inv_bar = crate::forms::invariant(&dual, &bar, res_bar.minimum);
    let holds = inv.eq_exact(&inv_bar);
    Ok(BoundReport {
        name: format!("duality pair λ=({shape}) vs λ̄=({bar}) on A, A⁻¹"),
        lhs: inv.render(),
        rhs: inv_bar.render(),
        lhs_float: fmt_f64_12(inv.to_f64()),
        rhs_float: fmt_f64_12(inv_bar.to_f64()),
        holds,
        slack: inv_bar.to_f64() - inv.to_f64(),
        provenance: "form-level annihilator pairing".to_string(),
    })
}

// ---------------------------------------------------------------------------
// Mordell
// ---------------------------------------------------------------------------

/// γ_{n,λ} ≤ γ_{m,λ} · γ_{n,m}^{|λ|/m}, exact power cross-multiplication.
/// γ_{n,m} is the Rankin-type constant, i.e. the invariant for the single
/// column of height m; inputs are computed or catalog invariants.
pub fn check_mordell(
    gamma_n_lambda: &InvariantValue,
    gamma_m_lambda: &InvariantValue,
    gamma_n_m: &InvariantValue,
    n: usize,
    m: usize,
    shape: &Partition,
) -> BoundReport {
    assert!(shape.height() <= m && m <= n);
    let weight = shape.weight() as i64;
    let lhs = PowerProduct::from_invariant(gamma_n_lambda);
    let rhs = PowerProduct::from_invariant(gamma_m_lambda)
        .mul(&PowerProduct::from_invariant(gamma_n_m).pow(Ratio::new(weight, m as i64)));
    let holds = lhs.cmp(&rhs) != std::cmp::Ordering::Greater;
    BoundReport {
        name: format!("mordell n={n} m={m} λ=({shape})"),
        lhs: gamma_n_lambda.render(),
        rhs: format!(
            "{} · ({})^{}",
            gamma_m_lambda.render(),
            gamma_n_m.render(),
            Ratio::new(weight, m as i64)
        ),
        lhs_float: fmt_f64_12(lhs.to_f64()),
        rhs_float: fmt_f64_12(rhs.to_f64()),
        holds,
        slack: rhs.to_f64() - lhs.to_f64(),
        provenance: "γ_{n,λ} ≤ γ_{m,λ}·γ_{n,m}^{|λ|/m}".to_string(),
    }
}

// ---------------------------------------------------------------------------
// Minkowski
// ---------------------------------------------------------------------------

/// Volume of the n-dimensional unit ball.
pub fn unit_ball_volume(n: usize) -> f64 {
    if n % 2 == 0 {
        let k = n / 2;
        std::f64::consts::PI.powi(k as i32) / factorial_f64(k)
    } else {
        // Γ(k + 1/2) = (2k)!·√π / (4^k·k!) with k = (n+1)/2
        let k = (n + 1) / 2;
        std::f64::consts::PI.powi(((n - 1) / 2) as i32) * 4f64.powi(k as i32)
            * factorial_f64(k)
            / factorial_f64(2 * k)
    }
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// γ^{1/(2|λ|)} ≤ 2^r·D^{1/2} / (V(n)^{r₁/n}·V(2n)^{r₂/n}); over ℚ the right
/// side is 2/V(n)^{1/n}. The left side is rounded up, the right side down.
pub fn check_minkowski(
    gamma: &InvariantValue,
    n: usize,
    shape: &Partition,
    r1: u32,
    r2: u32,
    discriminant: f64,
) -> BoundReport {
    let m = shape.weight() as f64;
    let exp = 1.0 / (2.0 * m);
    let lhs_up = gamma.to_f64().powf(exp) * (1.0 + 1e-12);
    let r = (r1 + r2) as f64;
    let rhs = 2f64.powf(r) * discriminant.sqrt()
        / (unit_ball_volume(n).powf(r1 as f64 / n as f64)
            * unit_ball_volume(2 * n).powf(r2 as f64 / n as f64));
    let rhs_down = rhs * (1.0 - 1e-12);
    let holds = lhs_up <= rhs_down;
    BoundReport {
        name: format!("minkowski n={n} λ=({shape})"),
        lhs: format!("({})^(1/{})", gamma.render(), 2 * shape.weight()),
        rhs: format!("2^{r}·D^(1/2)/V({n})^({r1}/{n})"),
        lhs_float: fmt_f64_12(lhs_up),
        rhs_float: fmt_f64_12(rhs_down),
        holds,
        slack: rhs_down - lhs_up,
        provenance: "second Minkowski theorem, outward rounded".to_string(),
    }
}

// ---------------------------------------------------------------------------
// Bergé–Martinet
// ---------------------------------------------------------------------------

/// Per-form inequality min(A)·min(A⁻¹) ≤ m_κ(A)/det(A) with κ = (2,1^{n−2})
/// (column heights (n−1, 1)): the flag pairing of a minimal vector with a
/// minimal dual hyperplane. Exact on both sides.
pub fn check_berge_martinet(gram: &GramForm) -> Result<BoundReport> {
    let n = gram.dim();
    assert!(n >= 2, "Bergé–Martinet needs n ≥ 2");
    let kappa = berge_martinet_shape(n);
    let form = HumbertForm::rational(gram.clone());
    let dual = HumbertForm::rational(gram.dual());
    let one = Partition::new(vec![1]).unwrap();
    let min_a = enumeration::minimum(&form, &one)?.minimum;
    let min_dual = enumeration::minimum(&dual, &one)?.minimum;
    let m_kappa = enumeration::minimum(&form, &kappa)?.minimum;
    let lhs = &min_a * &min_dual;
    let rhs = &m_kappa / gram.det();
    let holds = lhs <= rhs;
    Ok(BoundReport {
        name: format!("berge-martinet n={n} κ=({kappa})"),
        lhs: fmt_rat(&lhs),
        rhs: fmt_rat(&rhs),
        lhs_float: fmt_f64_12(to_f64(&lhs)),
        rhs_float: fmt_f64_12(to_f64(&rhs)),
        holds,
        slack: to_f64(&rhs) - to_f64(&lhs),
        provenance: format!(
            "min(A)={} · min(A*)={} vs m_κ(A)={} / det={}",
            fmt_rat(&min_a),
            fmt_rat(&min_dual),
            fmt_rat(&m_kappa),
            fmt_rat(&gram.det())
        ),
    })
}

/// κ with column heights (n−1, 1): the partition (2, 1, …, 1) with n−2 ones.
pub fn berge_martinet_shape(n: usize) -> Partition {
    let mut parts = vec![1u32; n - 1];
    parts[0] = 2;
    Partition::new(parts).unwrap()
}

// ---------------------------------------------------------------------------
// Base change
// ---------------------------------------------------------------------------

/// |D_k|^m · γ_{nd,λ}(ℚ)^d / d^d — a pure formula evaluator for studying
/// number fields of degree d and discriminant D_k; no field computation here.
pub fn base_change_bound(gamma_nd_q: &Rat, d: u32, disc: i64, m: u32) -> Rat {
    assert!(d >= 1);
    let abs_disc = Rat::from_integer(disc.abs().into());
    pow_rat(&abs_disc, m as i64) * pow_rat(gamma_nd_q, d as i64)
        / pow_rat(&Rat::from_integer(d.into()), d as i64)
}
