//! Representations of quandles in `Conj(GL(V))`, character twists, the
//! induced projective representation of `Inn(Q)`, and classification of
//! irreducible representations as character twists of finitely many base
//! representations.
//!
//! The character continuum is never enumerated: a classification lists base
//! representations together with the statement that every irreducible
//! representation is `χ·ρ` for a base `ρ` and a quandle character `χ`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::subgroup_structure;
use crate::cohomology::{
    cocycle_of_projective, is_coboundary_over_cx, is_schur_cover, second_cohomology,
};
use crate::error::{Error, Result};
use crate::family::{group_from_family, Family};
use crate::group::{lcm, FiniteGroup, GroupHomomorphism};
use crate::linrep::{
    approx_eq, commutant_dimension, decompose_irreps, identity, intertwiner_dimension, is_unitary,
    product, ComplexMatrix, GroupLinearRep, ProjectiveRep,
};
use crate::quandle::{conj_quandle, make_character, FiniteQuandle, InnerGroup, QuandleCharacter};
use crate::tolerance::Tolerances;

/// Number of random elements checked against alternative words.
const WORD_SAMPLES: usize = 20;
const MAX_SAMPLE_WORD: usize = 12;

/// A validated representation `ρ : Q → Conj(GL_d(ℂ))`.
#[derive(Debug, Clone)]
pub struct QuandleRep {
    quandle: FiniteQuandle,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
    unitary: bool,
}

/// Checks `ρ(x ▷ y) = ρ(x) ρ(y) ρ(x)⁻¹` for all pairs.
pub fn validate_rep(
    quandle: &FiniteQuandle,
    matrices: Vec<ComplexMatrix>,
    tol: &Tolerances,
) -> Result<QuandleRep> {
    let n = quandle.size();
    if matrices.len() != n {
        return Err(Error::Shape(format!(
            "expected {n} matrices, got {}",
            matrices.len()
        )));
    }
    let dim = matrices[0].nrows();
    if dim == 0 || matrices.iter().any(|m| m.shape() != (dim, dim)) {
        return Err(Error::Shape(
            "matrices must share a positive square shape".into(),
        ));
    }
    let inverses: Vec<ComplexMatrix> = matrices
        .iter()
        .enumerate()
        .map(|(x, m)| m.clone().try_inverse().ok_or(Error::SingularMatrix(x)))
        .collect::<Result<_>>()?;
    for x in 0..n {
        for y in 0..n {
            let conj = &matrices[x] * &matrices[y] * &inverses[x];
            if !approx_eq(&conj, &matrices[quandle.op(x, y)], tol.rep) {
                return Err(Error::RepAxiom(x, y));
            }
        }
    }
    let unitary = matrices.iter().all(|m| is_unitary(m, tol.rep));
    Ok(QuandleRep {
        quandle: quandle.clone(),
        dim,
        matrices,
        unitary,
    })
}

impl QuandleRep {
    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, x: usize) -> &ComplexMatrix {
        &self.matrices[x]
    }

    /// Whether every matrix was unitary within the validation tolerance.
    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn commutant_dimension(&self, tol: &Tolerances) -> usize {
        commutant_dimension(&self.matrices, tol.rank)
    }

    pub fn is_irreducible(&self, tol: &Tolerances) -> bool {
        self.commutant_dimension(tol) == 1
    }

    /// `x ↦ T ρ(x) T⁻¹`.
    pub fn conjugated_by(&self, t: &ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let t_inv = t.clone().try_inverse().ok_or(Error::SingularMatrix(0))?;
        let mats = self.matrices.iter().map(|m| t * m * &t_inv).collect();
        validate_rep(&self.quandle, mats, tol)
    }

    /// `tr ρ(x)` for every element.
    pub fn traces(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }
}

/// Dimension of the space of `T` with `T ρ(x) = ρ'(x) T` for all `x`.
pub fn intertwiner_space_dimension(
    a: &QuandleRep,
    b: &QuandleRep,
    tol: &Tolerances,
) -> Result<usize> {
    if a.quandle != b.quandle {
        return Err(Error::QuandleMismatch);
    }
    Ok(intertwiner_dimension(&a.matrices, &b.matrices, tol.rank))
}

/// `x ↦ rep(θ(x))` for a representation of `Inn(Q)`.
pub fn pull_back(
    rep: &GroupLinearRep,
    quandle: &FiniteQuandle,
    inner: &InnerGroup,
    tol: &Tolerances,
) -> Result<QuandleRep> {
    if rep.group() != &inner.group || inner.theta.len() != quandle.size() {
        return Err(Error::GroupMismatch);
    }
    let mats = inner.theta.iter().map(|&a| rep.matrix(a).clone()).collect();
    validate_rep(quandle, mats, tol)
}

/// A representation of `G` read as a representation of `Conj(G)`.
pub fn group_rep_as_quandle_rep(rep: &GroupLinearRep, tol: &Tolerances) -> Result<QuandleRep> {
    let q = conj_quandle(rep.group());
    validate_rep(&q, rep.matrices().to_vec(), tol)
}

/// `(χ·ρ)(x) = χ(x) ρ(x)`.
pub fn char_twist(
    chi: &QuandleCharacter,
    rho: &QuandleRep,
    tol: &Tolerances,
) -> Result<QuandleRep> {
    if chi.quandle() != &rho.quandle {
        return Err(Error::QuandleMismatch);
    }
    let mats = rho
        .matrices
        .iter()
        .enumerate()
        .map(|(x, m)| m * chi.value(x))
        .collect();
    validate_rep(&rho.quandle, mats, tol)
}

/// The projective representation `L_x ↦ [ρ(x)]` of `Inn(Q)`.
///
/// Each element of `Inn(Q)` is lifted by multiplying `ρ` along its
/// breadth-first word, then normalized to determinant one. Irreducibility
/// makes every other word give the same lift up to a scalar; this is
/// checked for `ρ(x)` against `θ(x)` and for random words drawn from `seed`.
pub fn induced_projective(
    rho: &QuandleRep,
    inner: &InnerGroup,
    seed: u64,
    tol: &Tolerances,
) -> Result<ProjectiveRep> {
    if inner.theta.len() != rho.quandle.size() {
        return Err(Error::QuandleMismatch);
    }
    if !rho.is_irreducible(tol) {
        return Err(Error::Precondition(
            "induced projective representation needs an irreducible representation".into(),
        ));
    }
    let d = rho.dim;
    let lift: Vec<ComplexMatrix> = inner
        .words
        .iter()
        .map(|w| product(d, w.iter().map(|&x| &rho.matrices[x])))
        .collect();
    let scalar_multiple =
        |a: &ComplexMatrix, b: &ComplexMatrix| crate::linrep::scalar_ratio(a, b, tol.rep).is_some();
    for (x, &a) in inner.theta.iter().enumerate() {
        if !scalar_multiple(&rho.matrices[x], &lift[a]) {
            return Err(Error::NotProjective(format!(
                "rho({x}) is not a scalar multiple of the lift of its translation"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rho.quandle.size();
    for _ in 0..WORD_SAMPLES {
        let len = rng.random_range(1..=MAX_SAMPLE_WORD);
        let word: Vec<usize> = (0..len).map(|_| rng.random_range(0..n)).collect();
        let a = inner.evaluate(&word);
        let m = product(d, word.iter().map(|&x| &rho.matrices[x]));
        if !scalar_multiple(&m, &lift[a]) {
            return Err(Error::NotProjective(format!(
                "word {word:?} disagrees with the canonical lift beyond a scalar"
            )));
        }
    }
    ProjectiveRep::new(inner.group.clone(), lift, tol)
}

/// Finds `χ` with `ρ' = χ·ρ`, or `None` when `ρ'` is not a twist of `ρ`.
pub fn recover_character(
    rho: &QuandleRep,
    rho_prime: &QuandleRep,
    tol: &Tolerances,
) -> Result<Option<QuandleCharacter>> {
    if rho.quandle != rho_prime.quandle {
        return Err(Error::QuandleMismatch);
    }
    if rho.dim != rho_prime.dim {
        return Err(Error::Precondition(
            "representations have different dimensions".into(),
        ));
    }
    if !rho.is_irreducible(tol) || !rho_prime.is_irreducible(tol) {
        return Err(Error::Precondition(
            "both representations must be irreducible".into(),
        ));
    }
    let d = rho.dim;
    let mut scalars = Vec::with_capacity(rho.matrices.len());
    for (a, b) in rho.matrices.iter().zip(&rho_prime.matrices) {
        let inv = a
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMatrix(scalars.len()))?;
        let ratio = b * inv;
        let s = ratio.trace() / d as f64;
        if !approx_eq(&ratio, &(identity(d) * s), tol.rep) {
            return Ok(None);
        }
        scalars.push(s);
    }
    let orbits = rho.quandle.orbits();
    let mut values = Vec::with_capacity(orbits.len());
    for block in &orbits.blocks {
        let v = scalars[block[0]];
        if block.iter().any(|&x| (scalars[x] - v).norm() > tol.snap) {
            return Ok(None);
        }
        values.push(v);
    }
    make_character(&rho.quandle, values).map(Some)
}

/// Writes `ρ = χ·(L∘θ)` with `L` a linear representation of `Inn(Q)`, when
/// the induced class is trivial over ℂ^×; `None` otherwise.
pub fn lift_then_twist(
    rho: &QuandleRep,
    inner: &InnerGroup,
    seed: u64,
    tol: &Tolerances,
) -> Result<Option<(GroupLinearRep, QuandleCharacter)>> {
    let p = induced_projective(rho, inner, seed, tol)?;
    let a = cocycle_of_projective(&p, tol)?;
    let check = is_coboundary_over_cx(&a)?;
    let Some(beta) = check.witness else {
        return Ok(None);
    };
    // lift(gh) = ζ^{δβ(g,h)} lift(g) lift(h), so ζ^{-β} lift is multiplicative
    let big = check.witness_modulus;
    let mats = p
        .lift()
        .iter()
        .zip(&beta)
        .map(|(l, &b)| l * crate::cohomology::root_of_unity(-b, big))
        .collect();
    let linear = GroupLinearRep::new(inner.group.clone(), mats, tol)?;
    let pulled = pull_back(&linear, &rho.quandle, inner, tol)?;
    match recover_character(&pulled, rho, tol)? {
        Some(chi) => Ok(Some((linear, chi))),
        None => Err(Error::NotProjective(
            "linear lift does not recover the representation up to a character".into(),
        )),
    }
}

/// Which classification theorem a report rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassificationMode {
    /// `Inn(Q)` has trivial Schur multiplier.
    InnTrivialMultiplier,
    /// `Q = Conj(G)` with `G` of trivial Schur multiplier.
    ConjTrivialMultiplier,
    /// `Q = Conj(G)` with `G → G/Z(G)` a Schur cover.
    ConjSchurCover,
    /// No theorem applies; `m_q_order` is only a lower bound.
    ConjLowerBound,
}

pub const THEOREM_INN: &str = "inn-trivial-multiplier: every irreducible is chi.(rho' o theta) for an irreducible linear rho' of Inn(Q)";
pub const THEOREM_CONJ_TRIVIAL: &str =
    "conj-trivial-multiplier: every irreducible of Conj(G) is a product of a quandle character and an irreducible of G";
pub const THEOREM_CONJ_COVER: &str =
    "conj-schur-cover: G is a Schur cover of G/Z(G); every irreducible of Conj(G) is a character twist of an irreducible of G";

/// Base representations plus the twist statement they support.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub quandle: FiniteQuandle,
    pub mode: ClassificationMode,
    pub base_reps: Vec<QuandleRep>,
    /// Number of `Inn(Q)` orbits, the rank of the character torus.
    pub character_rank: usize,
    pub inn_order: usize,
    /// Invariant factors of `H²(Inn(Q), ℂ^×)`.
    pub h2_inn: Vec<i64>,
    /// Class coordinates induced by each base representation.
    pub base_classes: Vec<Vec<i64>>,
    /// The distinct realized classes, sorted.
    pub realized_classes: Vec<Vec<i64>>,
    pub m_q_order: i64,
    pub m_q_invariant_factors: Vec<i64>,
    pub m_q_is_lower_bound: bool,
    pub completeness_theorem: Option<String>,
    pub assumptions: Vec<String>,
    pub seed: u64,
}

fn distinct_sorted(classes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = classes.to_vec();
    out.sort();
    out.dedup();
    out
}

fn check_pairwise_inequivalent(reps: &[QuandleRep], tol: &Tolerances) -> Result<()> {
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if reps[i].dim == reps[j].dim
                && intertwiner_space_dimension(&reps[i], &reps[j], tol)? != 0
            {
                return Err(Error::SplitFailure(format!(
                    "base representations {i} and {j} are equivalent"
                )));
            }
        }
    }
    Ok(())
}

fn format_factors(f: &[i64]) -> String {
    if f.is_empty() {
        "0".into()
    } else {
        f.iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// Induced classes in `H²(Inn(Q), ℂ^×)` of irreducible quandle reps.
fn induced_classes(
    reps: &[QuandleRep],
    inner: &InnerGroup,
    seed: u64,
    tol: &Tolerances,
) -> Result<(Vec<i64>, Vec<Vec<i64>>)> {
    let modulus = reps
        .iter()
        .fold(inner.group.order(), |acc, r| lcm(acc, r.dim)) as i64;
    let h2 = second_cohomology(&inner.group, Some(modulus))?;
    let mut classes = Vec::with_capacity(reps.len());
    for rho in reps {
        let p = induced_projective(rho, inner, seed, tol)?;
        let a = cocycle_of_projective(&p, tol)?;
        classes.push(h2.class_coordinates_cx(&a)?);
    }
    Ok((h2.invariant_factors_cx().to_vec(), classes))
}

/// Classification when `H²(Inn(Q), ℂ^×)` is trivial: base representations
/// are the pull-backs of the irreducibles of `Inn(Q)`.
pub fn classify_via_inn(
    quandle: &FiniteQuandle,
    seed: u64,
    tol: &Tolerances,
) -> Result<ClassificationReport> {
    let inner = quandle.inner_group()?;
    let h2 = second_cohomology(&inner.group, None)?;
    if h2.order_cx() != 1 {
        return Err(Error::Hypothesis(format!(
            "H²(Inn(Q), ℂ^×) = {} is not trivial",
            format_factors(h2.invariant_factors_cx())
        )));
    }
    let irreps = decompose_irreps(&inner.group, seed, tol)?;
    let base_reps: Vec<QuandleRep> = irreps
        .iter()
        .map(|r| pull_back(r, quandle, &inner, tol))
        .collect::<Result<_>>()?;
    check_pairwise_inequivalent(&base_reps, tol)?;
    // every class is trivial, so each base rep splits as a linear lift times a character
    for rho in &base_reps {
        if lift_then_twist(rho, &inner, seed, tol)?.is_none() {
            return Err(Error::NotProjective(
                "a base representation has a nontrivial class".into(),
            ));
        }
    }
    let (h2_inn, base_classes) = induced_classes(&base_reps, &inner, seed, tol)?;
    let realized_classes = distinct_sorted(&base_classes);
    Ok(ClassificationReport {
        quandle: quandle.clone(),
        mode: ClassificationMode::InnTrivialMultiplier,
        base_reps,
        character_rank: quandle.orbits().len(),
        inn_order: inner.group.order(),
        h2_inn,
        base_classes,
        realized_classes,
        m_q_order: 1,
        m_q_invariant_factors: vec![],
        m_q_is_lower_bound: false,
        completeness_theorem: Some(THEOREM_INN.into()),
        assumptions: vec![],
        seed,
    })
}

/// Quandle, inner group, base reps, `H²(Inn)` factors and induced classes.
type ConjBase = (
    FiniteQuandle,
    InnerGroup,
    Vec<QuandleRep>,
    Vec<i64>,
    Vec<Vec<i64>>,
);

fn conj_base(group: &FiniteGroup, seed: u64, tol: &Tolerances) -> Result<ConjBase> {
    let quandle = conj_quandle(group);
    let inner = quandle.inner_group()?;
    let irreps = decompose_irreps(group, seed, tol)?;
    let base_reps: Vec<QuandleRep> = irreps
        .iter()
        .map(|r| validate_rep(&quandle, r.matrices().to_vec(), tol))
        .collect::<Result<_>>()?;
    check_pairwise_inequivalent(&base_reps, tol)?;
    let (h2_inn, classes) = induced_classes(&base_reps, &inner, seed, tol)?;
    Ok((quandle, inner, base_reps, h2_inn, classes))
}

/// The map `g ↦ L_g` from `G` onto `Inn(Conj(G))`.
pub fn conj_projection(group: &FiniteGroup, inner: &InnerGroup) -> Result<GroupHomomorphism> {
    GroupHomomorphism::new(group.clone(), inner.group.clone(), inner.theta.clone())
}

/// Classification of `Conj(G)` when `G` has trivial Schur multiplier or is
/// a Schur cover of `G/Z(G)`: the base representations are the irreducibles
/// of `G`, and `M_Q` is generated by their induced classes.
pub fn classify_conj_group(
    group: &FiniteGroup,
    seed: u64,
    tol: &Tolerances,
) -> Result<ClassificationReport> {
    let h2_g = second_cohomology(group, None)?;
    let quandle = conj_quandle(group);
    let inner = quandle.inner_group()?;
    // the cover branch carries the stronger conclusion, so it is tried first
    // whenever G → G/Z(G) is not an isomorphism
    let cover = group.center().len() > 1 && is_schur_cover(&conj_projection(group, &inner)?)?;
    let mode = if cover {
        ClassificationMode::ConjSchurCover
    } else if h2_g.order_cx() == 1 {
        ClassificationMode::ConjTrivialMultiplier
    } else {
        let h2_inn = second_cohomology(&inner.group, None)?;
        return Err(Error::Hypothesis(format!(
            "H²(G, ℂ^×) = {} is not trivial, and G → Inn(Conj(G)) with kernel of order {} is not a Schur cover (H²(Inn, ℂ^×) = {})",
            format_factors(h2_g.invariant_factors_cx()),
            group.center().len(),
            format_factors(h2_inn.invariant_factors_cx()),
        )));
    };
    let (quandle, inner, base_reps, h2_inn, base_classes) = conj_base(group, seed, tol)?;
    let realized_classes = distinct_sorted(&base_classes);
    let m_q = subgroup_structure(&h2_inn, &realized_classes)?;
    let m_q_order: i64 = m_q.iter().product();
    let theorem = match mode {
        ClassificationMode::ConjSchurCover => {
            let h2_order: i64 = h2_inn.iter().product();
            if m_q_order != h2_order {
                return Err(Error::Hypothesis(format!(
                    "realized classes generate a subgroup of order {m_q_order}, expected {h2_order}"
                )));
            }
            THEOREM_CONJ_COVER
        }
        _ => THEOREM_CONJ_TRIVIAL,
    };
    Ok(ClassificationReport {
        character_rank: quandle.orbits().len(),
        quandle,
        mode,
        base_reps,
        inn_order: inner.group.order(),
        h2_inn,
        base_classes,
        realized_classes,
        m_q_order,
        m_q_invariant_factors: m_q,
        m_q_is_lower_bound: false,
        completeness_theorem: Some(theorem.into()),
        assumptions: vec![],
        seed,
    })
}

/// Induced classes of the irreducibles of `G` on `Conj(G)` without any
/// completeness claim; `m_q_order` is a lower bound for `M_Q`.
pub fn survey_conj_group(
    group: &FiniteGroup,
    assumptions: Vec<String>,
    seed: u64,
    tol: &Tolerances,
) -> Result<ClassificationReport> {
    let (quandle, inner, base_reps, h2_inn, base_classes) = conj_base(group, seed, tol)?;
    let realized_classes = distinct_sorted(&base_classes);
    let m_q = subgroup_structure(&h2_inn, &realized_classes)?;
    Ok(ClassificationReport {
        character_rank: quandle.orbits().len(),
        quandle,
        mode: ClassificationMode::ConjLowerBound,
        base_reps,
        inn_order: inner.group.order(),
        h2_inn,
        base_classes,
        realized_classes,
        m_q_order: m_q.iter().product(),
        m_q_invariant_factors: m_q,
        m_q_is_lower_bound: true,
        completeness_theorem: None,
        assumptions,
        seed,
    })
}

/// The unverified external input behind the symmetric-group case.
pub const SYMMETRIC_CENTER_ASSUMPTION: &str = "the center of the enveloping group of Conj(S_n) is torsion-free \
     (external result, not checked here); if so, M_Q is trivial and the irreducibles of S_n twisted by characters \
     exhaust the irreducibles of Conj(S_n)";

/// [`survey_conj_group`] for `S_n`, recording the external assumption.
pub fn survey_symmetric(n: usize, seed: u64, tol: &Tolerances) -> Result<ClassificationReport> {
    let g = group_from_family(Family::Symmetric, n)?;
    survey_conj_group(&g, vec![SYMMETRIC_CENTER_ASSUMPTION.into()], seed, tol)
}

/// One row of the table of inner groups, multipliers and `M_Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub quandle: String,
    pub family: String,
    pub n: usize,
    pub inn: String,
    pub inn_order: usize,
    pub h2: Vec<i64>,
    pub m_q: Vec<i64>,
    /// Torsion of the center of the enveloping group, identified with `M_Q`.
    pub tor_center: Vec<i64>,
    pub mode: ClassificationMode,
}

impl TableRow {
    pub fn h2_string(&self) -> String {
        format_factors(&self.h2)
    }

    pub fn m_q_string(&self) -> String {
        format_factors(&self.m_q)
    }

    pub fn tor_string(&self) -> String {
        format_factors(&self.tor_center)
    }
}

/// `D_{2k}` if `g` is dihedral of order `2k`.
fn dihedral_name(g: &FiniteGroup) -> Option<String> {
    let n = g.order();
    if n < 4 || !n.is_multiple_of(2) {
        return None;
    }
    let k = n / 2;
    let is_dihedral = if k == 2 {
        g.is_abelian() && g.exponent() == 2
    } else {
        (0..n).filter(|&r| g.element_order(r) == k).any(|r| {
            let rotations = g.subgroup_generated(&[r]);
            (0..n).any(|s| {
                g.element_order(s) == 2
                    && rotations.binary_search(&s).is_err()
                    && g.conjugate(s, r) == g.inverse(r)
            })
        })
    };
    is_dihedral.then(|| format!("D_{n}"))
}

fn table_row(
    name: String,
    family: Family,
    param: usize,
    n: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<TableRow> {
    let g = group_from_family(family, param)?;
    let report = match classify_conj_group(&g, seed, tol) {
        Ok(r) => r,
        // outside both Conj(G) hypotheses the Inn(Q) theorem may still apply
        Err(Error::Hypothesis(_)) => classify_via_inn(&conj_quandle(&g), seed, tol)?,
        Err(e) => return Err(e),
    };
    let inner = report.quandle.inner_group()?;
    Ok(TableRow {
        quandle: name,
        family: format!("{}:{}", family.name(), param),
        n,
        inn: dihedral_name(&inner.group)
            .unwrap_or_else(|| format!("order {}", inner.group.order())),
        inn_order: inner.group.order(),
        h2: report.h2_inn.clone(),
        m_q: report.m_q_invariant_factors.clone(),
        tor_center: report.m_q_invariant_factors.clone(),
        mode: report.mode,
    })
}

/// Rows `Conj(Q_{4n})`, `Conj(D_{2n})` for odd `n`, and `Conj(D_{4n})`.
pub fn reproduce_table(n_values: &[usize], seed: u64, tol: &Tolerances) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &n in n_values {
        if n < 2 {
            return Err(Error::Precondition("table rows need n >= 2".into()));
        }
        rows.push(table_row(
            format!("Conj(Q_{})", 4 * n),
            Family::GeneralizedQuaternion,
            n,
            n,
            seed,
            tol,
        )?);
        if n % 2 == 1 {
            rows.push(table_row(
                format!("Conj(D_{})", 2 * n),
                Family::Dihedral,
                n,
                n,
                seed,
                tol,
            )?);
        }
        rows.push(table_row(
            format!("Conj(D_{})", 4 * n),
            Family::Dihedral,
            2 * n,
            n,
            seed,
            tol,
        )?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::c;
    use crate::quandle::trivial_quandle;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn group(f: Family, n: usize) -> FiniteGroup {
        group_from_family(f, n).unwrap()
    }

    fn diag(v: &[Complex64]) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(v.to_vec()))
    }

    #[test]
    fn identity_matrices_form_a_unitary_rep() {
        let q = conj_quandle(&group(Family::Symmetric, 3));
        let rep = validate_rep(&q, vec![identity(2); 6], &tol()).unwrap();
        assert!(rep.is_unitary());
        assert_eq!(rep.commutant_dimension(&tol()), 4);
    }

    #[test]
    fn trivial_quandle_accepts_commuting_diagonals() {
        let q = trivial_quandle(3).unwrap();
        let mats = vec![
            diag(&[c(2.0, 0.0), c(0.0, 1.0)]),
            diag(&[c(-1.0, 0.0), c(3.0, 1.0)]),
            diag(&[c(0.5, 0.5), c(1.0, 0.0)]),
        ];
        let rep = validate_rep(&q, mats, &tol()).unwrap();
        assert!(!rep.is_unitary());
    }

    #[test]
    fn axiom_violation_reports_pair() {
        // Conj(Z/2 x Z/2) is trivial; make ρ(0) and ρ(1) fail to commute
        let q = trivial_quandle(2).unwrap();
        let x = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        );
        let z = diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let err = validate_rep(&q, vec![x, z], &tol()).unwrap_err();
        assert!(matches!(err, Error::RepAxiom(0, 1)));
        let singular = ComplexMatrix::zeros(1, 1);
        assert!(matches!(
            validate_rep(&q, vec![identity(1), singular], &tol()),
            Err(Error::SingularMatrix(1))
        ));
    }

    #[test]
    fn pull_back_of_sign_rep() {
        let s3 = group(Family::Symmetric, 3);
        let q = conj_quandle(&s3);
        let inner = q.inner_group().unwrap();
        let irreps = decompose_irreps(&inner.group, 0, &tol()).unwrap();
        let trivial = pull_back(&irreps[0], &q, &inner, &tol()).unwrap();
        assert!(trivial
            .matrices()
            .iter()
            .all(|m| approx_eq(m, &identity(1), 1e-12)));
        let sign = irreps
            .iter()
            .find(|r| r.dim() == 1 && r.character(inner.theta[1]).re < 0.0);
        let sign = pull_back(sign.unwrap(), &q, &inner, &tol()).unwrap();
        for x in 0..6 {
            let transposition = s3.element_order(x) == 2;
            let v = sign.matrix(x)[(0, 0)];
            assert!((v - c(if transposition { -1.0 } else { 1.0 }, 0.0)).norm() < 1e-9);
        }
        let two = irreps.iter().find(|r| r.dim() == 2).unwrap();
        assert!(pull_back(two, &q, &inner, &tol())
            .unwrap()
            .is_irreducible(&tol()));
    }

    #[test]
    fn twist_identities() {
        let q8 = group(Family::GeneralizedQuaternion, 2);
        let q = conj_quandle(&q8);
        let irreps = decompose_irreps(&q8, 0, &tol()).unwrap();
        let rho = group_rep_as_quandle_rep(irreps.last().unwrap(), &tol()).unwrap();
        let one = QuandleCharacter::trivial(&q);
        let same = char_twist(&one, &rho, &tol()).unwrap();
        assert!(same
            .matrices()
            .iter()
            .zip(rho.matrices())
            .all(|(a, b)| approx_eq(a, b, 1e-12)));

        let orbits = q.orbits();
        // −1 on the orbit of the element a (order 4, non-central)
        let a_orbit = orbits.orbit_of[1];
        let values = (0..orbits.len())
            .map(|i| c(if i == a_orbit { -1.0 } else { 1.0 }, 0.0))
            .collect();
        let chi = make_character(&q, values).unwrap();
        let twisted = char_twist(&chi, &rho, &tol()).unwrap();
        assert!(twisted.is_irreducible(&tol()));
        assert_eq!(
            intertwiner_space_dimension(&rho, &twisted, &tol()).unwrap(),
            0
        );
        let back = char_twist(&chi.inverse(), &twisted, &tol()).unwrap();
        assert!(back
            .matrices()
            .iter()
            .zip(rho.matrices())
            .all(|(a, b)| approx_eq(a, b, 1e-12)));
    }

    #[test]
    fn induced_projective_of_q8() {
        let q8 = group(Family::GeneralizedQuaternion, 2);
        let q = conj_quandle(&q8);
        let inner = q.inner_group().unwrap();
        assert_eq!(inner.group.order(), 4);
        let irreps = decompose_irreps(&q8, 0, &tol()).unwrap();
        let rho = group_rep_as_quandle_rep(irreps.last().unwrap(), &tol()).unwrap();
        let p = induced_projective(&rho, &inner, 0, &tol()).unwrap();
        let a = cocycle_of_projective(&p, &tol()).unwrap();
        assert!(!is_coboundary_over_cx(&a).unwrap().is_coboundary);
        assert!(lift_then_twist(&rho, &inner, 0, &tol()).unwrap().is_none());
        // a reducible representation is rejected
        let reducible = validate_rep(&q, vec![identity(2); 8], &tol()).unwrap();
        assert!(matches!(
            induced_projective(&reducible, &inner, 0, &tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn recover_character_cases() {
        let s3 = group(Family::Symmetric, 3);
        let q = conj_quandle(&s3);
        let inner = q.inner_group().unwrap();
        let irreps = decompose_irreps(&inner.group, 0, &tol()).unwrap();
        let rho = pull_back(&irreps[2], &q, &inner, &tol()).unwrap();
        let chi = recover_character(&rho, &rho, &tol()).unwrap().unwrap();
        assert!(chi
            .orbit_values()
            .iter()
            .all(|v| (v - c(1.0, 0.0)).norm() < 1e-9));

        let values = vec![c(2.0, 1.0), c(0.0, -1.0), c(-3.0, 0.5)];
        let chi = make_character(&q, values.clone()).unwrap();
        let twisted = char_twist(&chi, &rho, &tol()).unwrap();
        let got = recover_character(&rho, &twisted, &tol()).unwrap().unwrap();
        for (g, v) in got.orbit_values().iter().zip(&values) {
            assert!((g - v).norm() < 1e-6);
        }

        let one_dim = pull_back(&irreps[0], &q, &inner, &tol()).unwrap();
        assert!(matches!(
            recover_character(&rho, &one_dim, &tol()),
            Err(Error::Precondition(_))
        ));

        // a 1-dim rep padded to dimension 2 is reducible
        let sign = pull_back(&irreps[1], &q, &inner, &tol()).unwrap();
        let padded = validate_rep(
            &q,
            sign.matrices()
                .iter()
                .map(|m| diag(&[m[(0, 0)], c(1.0, 0.0)]))
                .collect(),
            &tol(),
        )
        .unwrap();
        assert!(matches!(
            recover_character(&rho, &padded, &tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn distinct_irreps_are_not_twists() {
        // D_12 (order 12) has two inequivalent 2-dim irreps that are not twists of each other
        let g = group(Family::Dihedral, 6);
        let irreps = decompose_irreps(&g, 0, &tol()).unwrap();
        let two: Vec<QuandleRep> = irreps
            .iter()
            .filter(|r| r.dim() == 2)
            .map(|r| group_rep_as_quandle_rep(r, &tol()).unwrap())
            .collect();
        assert_eq!(two.len(), 2);
        assert!(recover_character(&two[0], &two[1], &tol())
            .unwrap()
            .is_none());
    }

    #[test]
    fn classify_conj_d6_via_inn() {
        let q = conj_quandle(&group(Family::Dihedral, 3));
        let report = classify_via_inn(&q, 0, &tol()).unwrap();
        let dims: Vec<usize> = report.base_reps.iter().map(QuandleRep::dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        assert_eq!(report.character_rank, 3);
        assert_eq!(report.m_q_order, 1);
        assert_eq!(report.realized_classes, vec![Vec::<i64>::new()]);
    }

    #[test]
    fn classify_trivial_quandle() {
        let q = trivial_quandle(4).unwrap();
        let report = classify_via_inn(&q, 0, &tol()).unwrap();
        assert_eq!(report.base_reps.len(), 1);
        assert_eq!(report.base_reps[0].dim(), 1);
        assert_eq!(report.character_rank, 4);
        assert_eq!(report.inn_order, 1);
    }

    #[test]
    fn classify_via_inn_rejects_q8() {
        let q = conj_quandle(&group(Family::GeneralizedQuaternion, 2));
        match classify_via_inn(&q, 0, &tol()) {
            Err(Error::Hypothesis(msg)) => assert!(msg.contains("Z/2")),
            other => panic!("expected hypothesis error, got {other:?}"),
        }
    }

    #[test]
    fn classify_conj_groups() {
        let r = classify_conj_group(&group(Family::GeneralizedQuaternion, 2), 0, &tol()).unwrap();
        assert_eq!(r.mode, ClassificationMode::ConjSchurCover);
        assert_eq!(r.base_reps.len(), 5);
        assert_eq!(r.m_q_order, 2);

        let r = classify_conj_group(&group(Family::GeneralizedQuaternion, 3), 0, &tol()).unwrap();
        assert_eq!(r.mode, ClassificationMode::ConjTrivialMultiplier);
        assert_eq!(r.m_q_order, 1);
        assert!(r.h2_inn.is_empty());

        let r = classify_conj_group(&group(Family::Cyclic, 5), 0, &tol()).unwrap();
        assert!(r.base_reps.iter().all(|b| b.dim() == 1));
        assert_eq!(r.m_q_order, 1);

        assert!(matches!(
            classify_conj_group(&group(Family::Dihedral, 6), 0, &tol()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn table_for_small_n() {
        let rows = reproduce_table(&[2, 3], 0, &tol()).unwrap();
        let summary: Vec<(String, String, String, String, String)> = rows
            .iter()
            .map(|r| {
                (
                    r.quandle.clone(),
                    r.inn.clone(),
                    r.h2_string(),
                    r.m_q_string(),
                    r.tor_string(),
                )
            })
            .collect();
        let s = |a: &str, b: &str, c: &str| {
            (
                a.to_string(),
                b.to_string(),
                c.to_string(),
                c.to_string(),
                c.to_string(),
            )
        };
        assert_eq!(
            summary,
            vec![
                s("Conj(Q_8)", "D_4", "Z/2"),
                s("Conj(D_8)", "D_4", "Z/2"),
                s("Conj(Q_12)", "D_6", "0"),
                s("Conj(D_6)", "D_6", "0"),
                s("Conj(D_12)", "D_6", "0"),
            ]
        );
    }
}
