//! Certified computation of the minimum m_L(𝒜): short-vector enumeration on
//! exterior-power (Grassmann) forms, decomposability filtering, and
//! nested-chain assembly.
//!
//! Correctness hinge: Δ_d(XᵀAX) is the Λ^dA-norm of the decomposable wedge
//! x₁∧…∧x_d, and the wedge of an HNF basis of a *saturated* rank-d sublattice
//! is primitive. Short-vector enumeration on the Grassmann form is therefore
//! complete for subspaces, and the per-dimension cutoffs derived from the
//! canonical-flag value make the chain search certified.
//!
//! Floating point appears only in enumeration pruning, with a relative margin
//! of 2⁻²⁰ widening every interval; every candidate is re-verified exactly.

use std::collections::BTreeMap;

use itertools::Itertools;
use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::forms::{evaluate, FlagVector, GramForm, HumbertForm, InvariantValue};
use crate::lattice::{
    complete_basis, hnf, span_contains, unimodular_clearing, unimodular_inverse, zkernel, IMat,
};
#[cfg(test)]
use crate::lattice::is_saturated;
use crate::matrix::Matrix;
use crate::partitions::Partition;
use crate::rat::{root_upper_bound, to_f64, Int, Rat};
use crate::{Error, Result};

/// Certified-mode size limits: C(n,d) blows up past these.
pub const CERTIFIED_MAX_N: usize = 8;
pub const CERTIFIED_MAX_D: usize = 4;

/// Relative safety margin on floating-point interval bounds.
const PRUNE_MARGIN: f64 = 1.0 + 9.5367431640625e-7; // 1 + 2⁻²⁰

/// Gram matrix of Λ^d A in the basis {e_I}, I running over sorted d-subsets
/// in lexicographic order; entry (I, J) = det A[I, J].
#[derive(Clone, Debug)]
pub struct GrassmannForm {
    d: usize,
    subsets: Vec<Vec<usize>>,
    gram: Matrix,
}

impl GrassmannForm {
    pub fn dimension(&self) -> usize {
        self.subsets.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }
}

/// Cauchy–Binet carrier of the order-d minors of A.
pub fn grassmann_form(a: &GramForm, d: usize) -> GrassmannForm {
    let n = a.dim();
    assert!(d >= 1 && d <= n, "need 1 ≤ d ≤ n");
    let subsets: Vec<Vec<usize>> = (0..n).combinations(d).collect();
    let gram = Matrix::from_fn(subsets.len(), subsets.len(), |i, j| {
        a.matrix().submatrix_det(&subsets[i], &subsets[j])
    });
    GrassmannForm { d, subsets, gram }
}

// ---------------------------------------------------------------------------
// Fincke–Pohst enumeration
// ---------------------------------------------------------------------------

/// All nonzero integer vectors v (up to sign, first nonzero entry positive)
/// with vᵀGv ≤ bound. Pruning runs in f64 with widened intervals; every
/// candidate value is recomputed exactly before acceptance. Output sorted by
/// (value, vector).
pub fn short_vectors(g: &Matrix, bound: &Rat) -> Result<Vec<(Vec<Int>, Rat)>> {
    let n = g.rows();
    assert!(g.is_symmetric());
    let Some((l, d)) = g.ldlt() else {
        return Err(Error::NotPositiveDefinite);
    };
    if !d.iter().all(Rat::is_positive) {
        return Err(Error::NotPositiveDefinite);
    }
    if !bound.is_positive() {
        return Ok(Vec::new());
    }

    // Q(v) = Σ_i d_i (v_i + Σ_{j>i} L_{ji} v_j)², enumerate from the last
    // coordinate down with widened f64 interval bounds
    let lf = l.to_f64_grid();
    let df: Vec<f64> = d.iter().map(to_f64).collect();
    let bound_f = to_f64(bound) * PRUNE_MARGIN + 1e-12;

    let mut out: Vec<(Vec<Int>, Rat)> = Vec::new();
    let mut v = vec![0i64; n];
    enumerate_level(n, &lf, &df, bound_f, &mut v, n, 0.0, &mut |coords| {
        // canonical sign: first nonzero entry positive
        let first = coords.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        if first < 0 {
            return;
        }
        let vi: Vec<Int> = coords.iter().map(|&c| Int::from(c)).collect();
        let value = quadratic_value(g, &vi);
        if &value <= bound && value.is_positive() {
            out.push((vi, value));
        }
    });
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn enumerate_level(
    level: usize,
    l: &[Vec<f64>],
    d: &[f64],
    remaining: f64,
    v: &mut Vec<i64>,
    n: usize,
    _partial: f64,
    emit: &mut impl FnMut(&[i64]),
) {
    if level == 0 {
        if v.iter().any(|&c| c != 0) {
            emit(v);
        }
        return;
    }
    let i = level - 1;
    // center c = Σ_{j>i} L_{ji} v_j
    let mut center = 0.0;
    for j in i + 1..n {
        center += l[j][i] * v[j] as f64;
    }
    if remaining < 0.0 {
        return;
    }
    let radius = (remaining.max(0.0) / d[i]).sqrt() * PRUNE_MARGIN + 1e-9;
    let lo = (-center - radius).ceil() as i64;
    let hi = (-center + radius).floor() as i64;
    for vi in lo..=hi {
        v[i] = vi;
        let term = d[i] * (vi as f64 + center) * (vi as f64 + center);
        // shrink the spent budget slightly so rounding never over-prunes
        let spent = term * (1.0 - 2.0 * (PRUNE_MARGIN - 1.0));
        enumerate_level(level - 1, l, d, remaining - spent, v, n, 0.0, emit);
    }
    v[i] = 0;
}

pub fn quadratic_value(g: &Matrix, v: &[Int]) -> Rat {
    let n = g.rows();
    let mut acc = Rat::zero();
    for i in 0..n {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if v[j].is_zero() {
                continue;
            }
            acc += g.at(i, j) * Rat::from_integer(&v[i] * &v[j]);
        }
    }
    acc
}

/// Exact minimum of vᵀGv over nonzero integer vectors (and the canonical
/// witnesses). The min diagonal entry bounds the search, so it always exists.
pub fn form_minimum(g: &Matrix) -> Result<(Rat, Vec<Vec<Int>>)> {
    let start = (0..g.rows())
        .map(|i| g.at(i, i).clone())
        .min()
        .expect("nonempty matrix");
    let shorts = short_vectors(g, &start)?;
    let min = shorts.first().map(|(_, v)| v.clone()).expect("diagonal bound is achieved");
    let witnesses = shorts
        .iter()
        .take_while(|(_, v)| *v == min)
        .map(|(w, _)| w.clone())
        .collect();
    Ok((min, witnesses))
}

// ---------------------------------------------------------------------------
// Decomposable subspaces
// ---------------------------------------------------------------------------

/// A saturated rank-d sublattice with its exact minor value.
#[derive(Clone, Debug)]
pub struct SubspaceCandidate {
    pub d: usize,
    /// canonical HNF basis, n×d, saturated
    pub basis: IMat,
    /// Δ_d of the saturated basis under the form
    pub minor: Rat,
}

/// All saturated rank-d sublattices V of ℤⁿ with Δ_d(V) ≤ bound, via short
/// vectors of Λ^dA filtered to decomposable wedges. The wedge of a saturated
/// basis is primitive and its norm equals Δ_d, so nothing is missed; a
/// non-primitive wedge recovers the same subspace with a smaller minor.
pub fn decomposable_subspaces(
    a: &GramForm,
    d: usize,
    bound: &Rat,
) -> Result<Vec<SubspaceCandidate>> {
    let n = a.dim();
    assert!(d >= 1 && d <= n);
    if d == n {
        // only the full lattice; Δ_n = det(A)
        let det = a.det();
        if &det <= bound {
            return Ok(vec![SubspaceCandidate { d, basis: IMat::identity(n), minor: det }]);
        }
        return Ok(Vec::new());
    }
    let gf = grassmann_form(a, d);
    let shorts = short_vectors(gf.gram(), bound)?;
    // wedge recovery is independent per vector; merge order-independently
    let recovered: Vec<Option<SubspaceCandidate>> = shorts
        .par_iter()
        .map(|(w, _norm)| {
            let basis = hnf(&decomposable_support(&gf, w, n, d)?);
            let bm = basis.to_matrix();
            let minor = bm.transpose().mul(&a.matrix().mul(&bm)).det();
            (&minor <= bound).then_some(SubspaceCandidate { d, basis, minor })
        })
        .collect();
    let mut seen: BTreeMap<IMat, SubspaceCandidate> = BTreeMap::new();
    for cand in recovered.into_iter().flatten() {
        seen.entry(cand.basis.clone()).or_insert(cand);
    }
    Ok(seen.into_values().collect())
}

/// If w ∈ Λ^d is decomposable, returns the saturated basis of its support
/// {v : v∧w = 0}; None otherwise. The kernel of v ↦ v∧w has dimension d
/// exactly on decomposable vectors.
fn decomposable_support(gf: &GrassmannForm, w: &[Int], n: usize, d: usize) -> Option<IMat> {
    // rows indexed by (d+1)-subsets K, columns by i; entry = ±w_{K∖i}
    let index: BTreeMap<&[usize], usize> =
        gf.subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let kplus: Vec<Vec<usize>> = (0..n).combinations(d + 1).collect();
    let mut m = IMat::zero(kplus.len(), n);
    for (r, k) in kplus.iter().enumerate() {
        for (pos, &i) in k.iter().enumerate() {
            let rest: Vec<usize> = k.iter().copied().filter(|&x| x != i).collect();
            let wi = &w[index[rest.as_slice()]];
            if wi.is_zero() {
                continue;
            }
            // e_i ∧ e_rest = (−1)^pos e_K
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            *m.at_mut(r, i) = wi * Int::from(sign);
        }
    }
    let kernel = zkernel(&m);
    (kernel.cols() == d).then_some(kernel)
}

// ---------------------------------------------------------------------------
// Certified minimum
// ---------------------------------------------------------------------------

/// Result of a minima computation.
#[derive(Clone, Debug)]
pub struct MinimaResult {
    pub minimum: Rat,
    /// all canonical flags achieving the minimum, sorted
    pub witnesses: Vec<FlagVector>,
    pub certified: bool,
    /// the upper bound the search was cut off at (the canonical-flag value)
    pub search_bound: Rat,
}

/// m_L(𝒜) = min over primitive flag vectors of 𝒜\[X\], over ℚ.
///
/// Certified algorithm: seed U with the canonical flag; lower-bound every
/// minor factor by the Λ^d minimum μ_d; enumerate decomposable subspaces per
/// distinct column height under the induced cutoffs; assemble nested chains;
/// evaluate each chain on a saturation-adapted basis. Primitive flags realize
/// exactly the products ∏ Δ_d(V_d)^{c_d} over saturated chains, so the search
/// is complete.
pub fn minimum(form: &HumbertForm, shape: &Partition) -> Result<MinimaResult> {
    minimum_with_mode(form, shape, true)
}

pub fn minimum_with_mode(
    form: &HumbertForm,
    shape: &Partition,
    certified: bool,
) -> Result<MinimaResult> {
    assert_eq!(form.components().len(), 1, "minima enumeration is ℚ-only");
    let gram = form.single();
    let n = gram.dim();
    let t = shape.height();
    if t > n {
        return Err(Error::ShapeMismatch(format!(
            "shape {shape} does not fit in dimension {n}"
        )));
    }

    // distinct column heights with multiplicities c_d
    let mut mult: BTreeMap<usize, u32> = BTreeMap::new();
    for h in shape.column_heights() {
        *mult.entry(h).or_insert(0) += 1;
    }
    let dims: Vec<usize> = mult.keys().copied().collect();

    if certified && (n > CERTIFIED_MAX_N || dims.iter().any(|&d| d.min(n - d) > CERTIFIED_MAX_D)) {
        return Err(Error::CertifiedLimit(format!(
            "n = {n}, column heights {dims:?} exceed certified enumeration limits \
             (n ≤ {CERTIFIED_MAX_N}, min(d, n−d) ≤ {CERTIFIED_MAX_D})"
        )));
    }
    if !certified {
        return heuristic_minimum(form, shape);
    }

    // (1) upper bound from the canonical flag, tightened by the greedy KZ
    // basis flag (a much better seed on skew forms)
    let canonical = FlagVector::canonical(shape, n)?;
    let mut u0 = evaluate(form, &canonical)?;
    if let Ok((_, kz_vectors)) = kz_profile_with_vectors(gram) {
        let mat = IMat::from_columns(&kz_vectors[..t].to_vec());
        if let Ok(flag) = FlagVector::new(shape.clone(), mat) {
            let v = evaluate(form, &flag)?;
            if v < u0 {
                u0 = v;
            }
        }
    }

    // (2) per-dimension lower bounds μ_d = min of Λ^d A over nonzero vectors
    let mut lower: BTreeMap<usize, Rat> = BTreeMap::new();
    for &d in &dims {
        let g = if d == n {
            Matrix::from_fn(1, 1, |_, _| gram.det())
        } else {
            grassmann_form(gram, d).gram().clone()
        };
        let (m, _) = form_minimum(&g)?;
        lower.insert(d, m);
    }

    // (3)+(4) cutoffs and candidate subspaces, largest dimension first; each
    // completed dimension re-tightens the lower bound used by the next one
    let mut candidates: BTreeMap<usize, Vec<SubspaceCandidate>> = BTreeMap::new();
    for &d in dims.iter().rev() {
        let mut rest = Rat::one();
        for (&d2, &c2) in &mult {
            if d2 != d {
                rest *= crate::rat::pow_rat(&lower[&d2], c2 as i64);
            }
        }
        let cutoff_pow = &u0 / rest; // bound on Δ_d^{c_d}
        let cutoff = root_upper_bound(&cutoff_pow, mult[&d]);
        let mut list = decomposable_subspaces(gram, d, &cutoff)?;
        list.sort_by(|a, b| a.minor.cmp(&b.minor).then_with(|| a.basis.cmp(&b.basis)));
        // any flag below u0 uses one of these subspaces, so the smallest
        // enumerated minor is a valid lower bound inside the search space
        if let Some(first) = list.first() {
            if first.minor > lower[&d] {
                lower.insert(d, first.minor.clone());
            }
        }
        candidates.insert(d, list);
    }

    // (5) assemble nested chains depth-first with exact containment tests,
    // pruning on the partial product against the running best (strict, so
    // tied witnesses survive)
    let mut best = u0.clone();
    let mut best_chains: Vec<Vec<SubspaceCandidate>> = Vec::new();
    {
        // suffix products of the per-dimension lower bounds, largest-first order
        let desc: Vec<usize> = dims.iter().rev().copied().collect();
        let mut stack: Vec<(usize, Vec<SubspaceCandidate>, Rat)> = vec![(0, Vec::new(), Rat::one())];
        while let Some((depth, chain, partial)) = stack.pop() {
            if depth == desc.len() {
                if partial < best {
                    best = partial.clone();
                    best_chains.clear();
                }
                if partial == best {
                    best_chains.push(chain);
                }
                continue;
            }
            let d = desc[depth];
            let mut rest = Rat::one();
            for &d2 in &desc[depth + 1..] {
                rest *= crate::rat::pow_rat(&lower[&d2], mult[&d2] as i64);
            }
            let mut extensions = Vec::new();
            for cand in &candidates[&d] {
                let fits = match chain.last() {
                    Some(bigger) => span_contains(&bigger.basis, &cand.basis),
                    None => true,
                };
                if !fits {
                    continue;
                }
                let next =
                    &partial * crate::rat::pow_rat(&cand.minor, mult[&d] as i64);
                if &next * &rest > best {
                    // candidates are sorted by minor: no later one fits either
                    break;
                }
                let mut c = chain.clone();
                c.push(cand.clone());
                extensions.push((depth + 1, c, next));
            }
            // push in reverse so the smallest-minor branch pops first and
            // tightens the bound early
            stack.extend(extensions.into_iter().rev());
        }
    }

    let mut witnesses = Vec::new();
    for chain in &best_chains {
        let ordered: Vec<&SubspaceCandidate> = chain.iter().rev().collect();
        witnesses.push(adapted_flag(shape, &ordered)?);
    }
    witnesses.sort();
    witnesses.dedup();
    debug_assert!(witnesses
        .iter()
        .all(|w| evaluate(form, w).map(|val| val == best).unwrap_or(false)));

    Ok(MinimaResult { minimum: best, witnesses, certified: true, search_bound: u0 })
}

/// Canonical flag matrix adapted to a saturated chain: HNF basis of the
/// smallest subspace, extended upward through each larger one.
fn adapted_flag(shape: &Partition, chain: &[&SubspaceCandidate]) -> Result<FlagVector> {
    let mut cols: Vec<Vec<Int>> = Vec::new();
    let mut current: Option<IMat> = None;
    for cand in chain {
        let basis = match &current {
            None => cand.basis.clone(),
            Some(inner) => {
                let completion = complete_basis(inner, &cand.basis)?;
                let mut b = inner.clone();
                for col in completion {
                    b = b.hcat(&IMat::from_columns(&[col]));
                }
                b
            }
        };
        cols = basis.columns();
        current = Some(basis);
    }
    let mat = IMat::from_columns(&cols);
    debug_assert_eq!(mat.cols(), shape.height());
    FlagVector::new(shape.clone(), mat)
}

/// Best-effort minimum for inputs beyond the certified limits: canonical flag
/// plus the flag of the greedy KZ basis; certified = false.
fn heuristic_minimum(form: &HumbertForm, shape: &Partition) -> Result<MinimaResult> {
    let gram = form.single();
    let n = gram.dim();
    let canonical = FlagVector::canonical(shape, n)?;
    let mut best_flag = canonical.clone();
    let mut best = evaluate(form, &canonical)?;
    let u0 = best.clone();
    let (_, kz_vectors) = kz_profile_with_vectors(gram)?;
    let t = shape.height();
    let mat = IMat::from_columns(&kz_vectors[..t].to_vec());
    if let Ok(flag) = FlagVector::new(shape.clone(), mat) {
        let v = evaluate(form, &flag)?;
        if v < best {
            best = v;
            best_flag = flag;
        }
    }
    Ok(MinimaResult { minimum: best, witnesses: vec![best_flag], certified: false, search_bound: u0 })
}

/// Convenience: certified minimum and invariant in one call.
pub fn invariant_of(form: &HumbertForm, shape: &Partition) -> Result<(MinimaResult, InvariantValue)> {
    let res = minimum(form, shape)?;
    let inv = crate::forms::invariant(form, shape, res.minimum.clone());
    Ok((res, inv))
}

// ---------------------------------------------------------------------------
// Greedy KZ profile
// ---------------------------------------------------------------------------

/// Greedy Hermite–Korkine–Zolotareff profile (A₁,…,Aₙ): lattice minimum, then
/// recurse on the projection to the orthogonal complement of a minimal
/// vector. ∏ Aᵢ = det(A) exactly. Ties break on the canonical witness order,
/// so the profile is deterministic (labelled "greedy", not proven HKZ-optimal).
pub fn kz_profile(a: &GramForm) -> Result<Vec<Rat>> {
    kz_profile_with_vectors(a).map(|(p, _)| p)
}

/// KZ profile together with the chosen minimal vectors pulled back to the
/// original coordinates (they form a basis of ℤⁿ).
pub fn kz_profile_with_vectors(a: &GramForm) -> Result<(Vec<Rat>, Vec<Vec<Int>>)> {
    let n = a.dim();
    let mut profile = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    let mut g = a.matrix().clone();
    // cumulative basis: columns = current-coordinate basis in original coords
    let mut basis = IMat::identity(n);
    for level in 0..n {
        let k = n - level;
        if k == 1 {
            profile.push(g.at(0, 0).clone());
            vectors.push(basis.column(0));
            break;
        }
        let (min, wits) = form_minimum(&g)?;
        let v = wits.into_iter().next().expect("minimum has a witness");
        profile.push(min.clone());
        // original-coordinate witness
        let mut orig = vec![Int::zero(); n];
        for (j, c) in v.iter().enumerate() {
            for r in 0..n {
                orig[r] += c * basis.at(r, j);
            }
        }
        vectors.push(orig);
        // change basis so the witness is the first vector, then project it out
        let u = unimodular_clearing(&v);
        let b = unimodular_inverse(&u)?; // first column = v
        let bm = b.to_matrix();
        let gp = bm.transpose().mul(&g.mul(&bm));
        // Schur complement of the (0,0) entry: the quotient form
        let pivot = gp.at(0, 0).clone();
        let mut next = Matrix::zero(k - 1, k - 1);
        for i in 1..k {
            for j in 1..k {
                let v = gp.at(i, j) - gp.at(i, 0) * gp.at(0, j) / &pivot;
                *next.at_mut(i - 1, j - 1) = v;
            }
        }
        basis = basis.mul(&b).take_columns_from(1);
        g = next;
    }
    Ok((profile, vectors))
}

/// (value, vector) pairs of a greedy independent short basis: v₁ shortest,
/// v₂ shortest independent of v₁, and so on — the successive-minima-style
/// basis used by the Hadamard cross-check.
pub fn successive_independent_shorts(a: &GramForm, count: usize) -> Result<Vec<(Vec<Int>, Rat)>> {
    let n = a.dim();
    assert!(count <= n);
    let bound = (0..n).map(|i| a.matrix().at(i, i).clone()).max().unwrap();
    let shorts = short_vectors(a.matrix(), &bound)?;
    let mut chosen: Vec<(Vec<Int>, Rat)> = Vec::new();
    for (v, val) in shorts {
        if chosen.len() == count {
            break;
        }
        let mut cols: Vec<Vec<Int>> = chosen.iter().map(|(w, _)| w.clone()).collect();
        cols.push(v.clone());
        if IMat::from_columns(&cols).rank() == cols.len() {
            chosen.push((v, val));
        }
    }
    // the canonical basis vectors all satisfy the diagonal bound, so this
    // always completes
    assert_eq!(chosen.len(), count, "independent short basis incomplete");
    Ok(chosen)
}

impl IMat {
    fn take_columns_from(&self, start: usize) -> IMat {
        IMat::from_fn(self.rows(), self.cols() - start, |r, c| self.at(r, c + start).clone())
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn gram_a2() -> GramForm {
        GramForm::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap()
    }

    fn gram_a3() -> GramForm {
        GramForm::from_i64_rows(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]).unwrap()
    }

    fn gram_d4() -> GramForm {
        GramForm::from_i64_rows(&[&[2, 0, 1, 0], &[0, 2, 1, 0], &[1, 1, 2, 1], &[0, 0, 1, 2]])
            .unwrap()
    }

    #[test]
    fn grassmann_entries() {
        let gf = grassmann_form(&GramForm::new(Matrix::identity(3)).unwrap(), 2);
        assert_eq!(*gf.gram(), Matrix::identity(3));

        let gf1 = grassmann_form(&gram_a3(), 1);
        assert_eq!(*gf1.gram(), *gram_a3().matrix());

        let gf2 = grassmann_form(&gram_a3(), 2);
        // diagonal entry for {1,2} is det [[2,1],[1,2]] = 3
        assert_eq!(*gf2.gram().at(0, 0), int(3));
    }

    #[test]
    fn short_vector_counts() {
        let shorts = short_vectors(&Matrix::identity(2), &int(1)).unwrap();
        assert_eq!(shorts.len(), 2);

        let shorts = short_vectors(gram_a2().matrix(), &int(2)).unwrap();
        assert_eq!(shorts.len(), 3); // hexagonal: 6 roots, 3 up to sign

        let shorts = short_vectors(gram_d4().matrix(), &int(2)).unwrap();
        assert_eq!(shorts.len(), 12); // 24 roots up to sign

        assert!(short_vectors(&Matrix::from_i64_rows(&[&[1, 2], &[2, 1]]), &int(1)).is_err());
    }

    #[test]
    fn decomposable_subspace_lists() {
        let id3 = GramForm::new(Matrix::identity(3)).unwrap();
        let planes = decomposable_subspaces(&id3, 2, &int(1)).unwrap();
        assert_eq!(planes.len(), 3);
        assert!(planes.iter().all(|c| c.minor == int(1)));

        // A₃: exactly the A₂-sublattices at Δ₂ = 3
        let subs = decomposable_subspaces(&gram_a3(), 2, &int(3)).unwrap();
        assert_eq!(subs.len(), 4);
        assert!(subs.iter().all(|c| c.minor == int(3)));
        assert!(subs.iter().all(|c| is_saturated(&c.basis)));

        // bound below the Λ² minimum: empty
        let none = decomposable_subspaces(&gram_a3(), 2, &int(2)).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn minimum_a3_21() {
        let form = HumbertForm::rational(gram_a3());
        let res = minimum(&form, &p(&[2, 1])).unwrap();
        assert_eq!(res.minimum, int(6));
        assert!(res.certified);
        assert!(!res.witnesses.is_empty());
        let inv = crate::forms::invariant(&form, &p(&[2, 1]), res.minimum.clone());
        assert_eq!(inv.exact_rational().unwrap(), rat(3, 2));
        // every witness is canonical, primitive, and evaluates to the minimum
        for w in &res.witnesses {
            assert_eq!(evaluate(&form, w).unwrap(), int(6));
            assert!(crate::forms::content_of_flag(w).unwrap().is_unit());
        }
    }

    #[test]
    fn minimum_d4_211() {
        let form = HumbertForm::rational(gram_d4());
        let res = minimum(&form, &p(&[2, 1, 1])).unwrap();
        assert_eq!(res.minimum, int(8));
        let inv = crate::forms::invariant(&form, &p(&[2, 1, 1]), res.minimum);
        assert_eq!(inv.exact_rational().unwrap(), int(2));
    }

    #[test]
    fn minimum_identity_any_shape() {
        let form = HumbertForm::rational(GramForm::new(Matrix::identity(4)).unwrap());
        for shape in [p(&[1]), p(&[2, 1]), p(&[2, 1, 1]), p(&[1, 1])] {
            let res = minimum(&form, &shape).unwrap();
            assert_eq!(res.minimum, int(1), "shape {shape}");
        }
    }

    #[test]
    fn kz_profiles() {
        let (profile, _) = kz_profile_with_vectors(&gram_a3()).unwrap();
        assert_eq!(profile, vec![int(2), rat(3, 2), rat(4, 3)]);
        let product: Rat = profile.iter().product();
        assert_eq!(product, int(4));

        let id = GramForm::new(Matrix::identity(4)).unwrap();
        assert_eq!(kz_profile(&id).unwrap(), vec![int(1); 4]);

        let d4 = kz_profile(&gram_d4()).unwrap();
        assert_eq!(d4.first().unwrap() / d4.last().unwrap(), int(2));
        let product: Rat = d4.iter().product();
        assert_eq!(product, int(4));
    }

    #[test]
    fn certified_limit_and_heuristic() {
        let n = 9;
        let id = GramForm::new(Matrix::identity(n)).unwrap();
        let form = HumbertForm::rational(id);
        let err = minimum(&form, &p(&[1])).unwrap_err();
        assert!(matches!(err, Error::CertifiedLimit(_)));
        let res = minimum_with_mode(&form, &p(&[1]), false).unwrap();
        assert!(!res.certified);
        assert_eq!(res.minimum, int(1));
    }
}
