//! Complex linear and projective representations of finite groups.
//!
//! Irreducibility is decided through the commutant: a family of matrices
//! is irreducible over ℂ exactly when the only matrices commuting with all
//! of them are scalars. Equivalence of linear representations is decided
//! by comparing characters.

use std::collections::{BTreeMap, VecDeque};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::tolerance::Tolerances;

pub type ComplexMatrix = DMatrix<Complex64>;

const SPLIT_ATTEMPTS: usize = 64;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

/// `‖a − b‖_F ≤ tol · max(1, ‖b‖_F)`.
pub(crate) fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && (a - b).norm() <= tol * b.norm().max(1.0)
}

/// The scalar `c` minimizing `‖a − c·b‖`, if the residual is within `tol`.
pub(crate) fn scalar_ratio(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Option<Complex64> {
    let bb = b.dotc(b);
    if bb.norm() == 0.0 {
        return None;
    }
    let ratio = b.dotc(a) / bb;
    approx_eq(a, &(b * ratio), tol).then_some(ratio)
}

pub(crate) fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    approx_eq(&(m * m.adjoint()), &identity(m.nrows()), tol)
}

/// Multiplies a word of matrices left to right.
pub(crate) fn product<'a>(
    d: usize,
    factors: impl IntoIterator<Item = &'a ComplexMatrix>,
) -> ComplexMatrix {
    factors.into_iter().fold(identity(d), |acc, m| acc * m)
}

/// Dimension of `{X : X·M = M·X for all M in mats}`.
///
/// The stacked linear system `(I ⊗ M − Mᵀ ⊗ I) vec(X) = 0` is solved by
/// SVD; singular values below `rank_tol · σ_max` count as zero.
pub fn commutant_dimension(mats: &[ComplexMatrix], rank_tol: f64) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let d = first.nrows();
    let n = d * d;
    if n == 0 {
        return 0;
    }
    let mut sys = ComplexMatrix::zeros(mats.len() * n, n);
    for (k, m) in mats.iter().enumerate() {
        // vec is column-major: vec(X)[i + d j] = X[i, j]
        // (X M − M X)[i, j] = Σ_l X[i, l] M[l, j] − M[i, l] X[l, j]
        for i in 0..d {
            for j in 0..d {
                let row = k * n + i + d * j;
                for l in 0..d {
                    sys[(row, i + d * l)] += m[(l, j)];
                    sys[(row, l + d * j)] -= m[(i, l)];
                }
            }
        }
    }
    let sv = sys.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return n;
    }
    let rank = sv.iter().filter(|&&s| s > rank_tol * max).count();
    n - rank
}

/// Dimension of `{T : T·A_i = B_i·T for all i}`.
pub fn intertwiner_dimension(a: &[ComplexMatrix], b: &[ComplexMatrix], rank_tol: f64) -> usize {
    if a.is_empty() || a.len() != b.len() {
        return 0;
    }
    let (da, db) = (a[0].nrows(), b[0].nrows());
    // T is db × da; vec column-major: vec(T)[i + db j] = T[i, j]
    let n = da * db;
    let rows = da * db;
    let mut sys = ComplexMatrix::zeros(a.len() * rows, n);
    for (k, (ma, mb)) in a.iter().zip(b).enumerate() {
        for i in 0..db {
            for j in 0..da {
                let row = k * rows + i + db * j;
                for l in 0..da {
                    sys[(row, i + db * l)] += ma[(l, j)];
                }
                for l in 0..db {
                    sys[(row, l + db * j)] -= mb[(i, l)];
                }
            }
        }
    }
    let sv = sys.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return n;
    }
    n - sv.iter().filter(|&&s| s > rank_tol * max).count()
}

/// A linear representation: one invertible matrix per group element.
#[derive(Debug, Clone)]
pub struct GroupLinearRep {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl GroupLinearRep {
    /// Validates identity and the homomorphism law on all pairs.
    pub fn new(group: FiniteGroup, matrices: Vec<ComplexMatrix>, tol: &Tolerances) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Shape(format!(
                "expected {} matrices, got {}",
                group.order(),
                matrices.len()
            )));
        }
        let dim = matrices[0].nrows();
        if dim == 0 || matrices.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::Shape(
                "matrices must share a positive square shape".into(),
            ));
        }
        if matrices
            .iter()
            .any(|m| m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()))
        {
            return Err(Error::Shape("matrix entries must be finite".into()));
        }
        if !approx_eq(&matrices[group.identity()], &identity(dim), tol.rep) {
            return Err(Error::RepAxiom(group.identity(), group.identity()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let prod = &matrices[g] * &matrices[h];
                if !approx_eq(&prod, &matrices[group.mul(g, h)], tol.rep) {
                    return Err(Error::RepAxiom(g, h));
                }
            }
        }
        Ok(Self {
            group,
            dim,
            matrices,
        })
    }

    /// Extends matrices given on the group's generators along its word map.
    pub fn from_generators(
        group: FiniteGroup,
        generators: &BTreeMap<usize, ComplexMatrix>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let dim = generators.values().next().map(|m| m.nrows()).unwrap_or(1);
        for &g in group.generators() {
            if !generators.contains_key(&g) {
                return Err(Error::Shape(format!("missing matrix for generator {g}")));
            }
        }
        let mats = group
            .word_map()
            .iter()
            .map(|w| product(dim, w.iter().map(|s| &generators[s])))
            .collect();
        let rep = Self::new(group, mats, tol)?;
        // explicitly supplied non-generator matrices must agree too
        for (&g, m) in generators {
            if g >= rep.group.order() || !approx_eq(m, &rep.matrices[g], tol.rep) {
                return Err(Error::RepAxiom(g, g));
            }
        }
        Ok(rep)
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self {
            group: group.clone(),
            dim: 1,
            matrices: vec![identity(1); group.order()],
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &ComplexMatrix {
        &self.matrices[g]
    }

    pub fn character(&self, g: usize) -> Complex64 {
        self.matrices[g].trace()
    }

    /// Character values on the conjugacy classes (canonical class order).
    pub fn class_character(&self) -> Vec<Complex64> {
        self.group
            .conjugacy_classes()
            .iter()
            .map(|cl| self.character(cl[0]))
            .collect()
    }

    /// Matrices of the group's generators (all matrices for the trivial group).
    pub fn generator_matrices(&self) -> Vec<ComplexMatrix> {
        if self.group.generators().is_empty() {
            return self.matrices.clone();
        }
        self.group
            .generators()
            .iter()
            .map(|&g| self.matrices[g].clone())
            .collect()
    }

    pub fn commutant_dimension(&self, tol: &Tolerances) -> usize {
        commutant_dimension(&self.generator_matrices(), tol.rank)
    }

    pub fn is_irreducible(&self, tol: &Tolerances) -> bool {
        self.commutant_dimension(tol) == 1
    }

    pub fn is_unitary(&self, tol: &Tolerances) -> bool {
        self.matrices.iter().all(|m| is_unitary(m, tol.rep))
    }

    /// `T · ρ(g) · T⁻¹` for an invertible `T`.
    pub fn conjugated_by(&self, t: &ComplexMatrix) -> Result<Self> {
        let t_inv = t.clone().try_inverse().ok_or(Error::SingularMatrix(0))?;
        Ok(Self {
            group: self.group.clone(),
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| t * m * &t_inv).collect(),
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let d = self.dim + other.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut m = ComplexMatrix::zeros(d, d);
                m.view_mut((0, 0), (self.dim, self.dim)).copy_from(a);
                m.view_mut((self.dim, self.dim), (other.dim, other.dim))
                    .copy_from(b);
                m
            })
            .collect();
        Ok(Self {
            group: self.group.clone(),
            dim: d,
            matrices,
        })
    }

    pub fn to_projective(&self, tol: &Tolerances) -> Result<ProjectiveRep> {
        ProjectiveRep::new(self.group.clone(), self.matrices.clone(), tol)
    }
}

/// Left-regular representation: `ρ(g) e_h = e_{gh}`.
pub fn regular_representation(group: &FiniteGroup) -> GroupLinearRep {
    let n = group.order();
    let matrices = (0..n)
        .map(|g| {
            let mut m = ComplexMatrix::zeros(n, n);
            for h in 0..n {
                m[(group.mul(g, h), h)] = c(1.0, 0.0);
            }
            m
        })
        .collect();
    GroupLinearRep {
        group: group.clone(),
        dim: n,
        matrices,
    }
}

/// True iff the class characters agree within `tol.character`.
pub fn are_equivalent(a: &GroupLinearRep, b: &GroupLinearRep, tol: &Tolerances) -> Result<bool> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    if a.dim != b.dim {
        return Ok(false);
    }
    Ok(a.class_character()
        .iter()
        .zip(b.class_character())
        .all(|(x, y)| (x - y).norm() <= tol.character))
}

/// Class-weighted inner product `(1/|G|) Σ_g χ(g) conj(ψ(g))`.
pub fn character_inner_product(
    group: &FiniteGroup,
    chi: &[Complex64],
    psi: &[Complex64],
) -> Complex64 {
    let classes = group.conjugacy_classes();
    let s: Complex64 = classes
        .iter()
        .zip(chi.iter().zip(psi))
        .map(|(cl, (a, b))| a * b.conj() * cl.len() as f64)
        .sum();
    s / group.order() as f64
}

/// Equivalent representation with unitary matrices.
///
/// Averages the standard form over the group, `P = Σ ρ(g)* ρ(g)`, factors
/// `P = L L*` and conjugates by `L*`.
pub fn unitarize(rep: &GroupLinearRep, tol: &Tolerances) -> Result<GroupLinearRep> {
    let d = rep.dim;
    let form = rep
        .matrices
        .iter()
        .fold(ComplexMatrix::zeros(d, d), |acc, m| acc + m.adjoint() * m);
    let chol = form.cholesky().ok_or(Error::NonPositiveForm)?;
    let l_adj = chol.l().adjoint();
    let out = rep.conjugated_by(&l_adj)?;
    if !out.is_unitary(tol) {
        return Err(Error::NonPositiveForm);
    }
    Ok(out)
}

/// One representative of every irreducible representation of `group`.
///
/// The regular representation is split along eigenspaces of group-averaged
/// random Hermitian operators (which commute with the action) until each
/// block has character norm 1, i.e. commutant dimension 1. Blocks whose
/// character matches an irreducible already found are discarded. Output is
/// sorted by dimension, then by character values.
pub fn decompose_irreps(
    group: &FiniteGroup,
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<GroupLinearRep>> {
    let n = group.order();
    let classes = group.conjugacy_classes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // orthonormal bases (n × k) of invariant subspaces of the regular rep
    let mut queue: VecDeque<ComplexMatrix> = VecDeque::from([identity(n)]);
    let mut found: Vec<(ComplexMatrix, Vec<Complex64>)> = Vec::new();
    let mut covered = 0;
    let mut attempts = 0;

    while let Some(basis) = queue.pop_front() {
        if covered == n {
            break;
        }
        let chi = block_class_character(group, &classes, &basis);
        if found
            .iter()
            .any(|(_, f)| characters_close(f, &chi, tol.character))
        {
            continue;
        }
        let norm = character_inner_product(group, &chi, &chi).re;
        let rounded = norm.round();
        if (norm - rounded).abs() > 1e-3 || rounded < 1.0 {
            return Err(Error::SplitFailure(format!(
                "block character norm {norm} is not a positive integer"
            )));
        }
        if rounded == 1.0 {
            covered += basis.ncols() * basis.ncols();
            found.push((basis, chi));
            continue;
        }
        attempts += 1;
        if attempts > SPLIT_ATTEMPTS * n.max(1) {
            return Err(Error::SplitFailure("iteration budget exhausted".into()));
        }
        let averaged = averaged_hermitian(group, &basis, &mut rng);
        let pieces = eigenspace_split(&averaged);
        if pieces.len() == 1 {
            // unlucky draw; try again with fresh randomness
            queue.push_back(basis);
            continue;
        }
        for vecs in pieces {
            queue.push_back(&basis * vecs);
        }
    }
    if covered != n {
        return Err(Error::SplitFailure(format!(
            "dimensions squared sum to {covered}, expected {n}"
        )));
    }

    let mut irreps = Vec::with_capacity(found.len());
    for (basis, _) in &found {
        let mats = (0..n).map(|g| restrict(group, basis, g)).collect();
        let rep = GroupLinearRep::new(group.clone(), mats, tol)?;
        if rep.commutant_dimension(tol) != 1 {
            return Err(Error::SplitFailure(format!(
                "block of dimension {} is not irreducible",
                rep.dim
            )));
        }
        irreps.push(rep);
    }
    if irreps.len() != classes.len() {
        return Err(Error::SplitFailure(format!(
            "found {} irreducibles but there are {} classes",
            irreps.len(),
            classes.len()
        )));
    }
    irreps.sort_by_cached_key(|r| {
        let key: Vec<(i64, i64)> = r
            .class_character()
            .iter()
            .map(|z| (-(z.re * 1e6).round() as i64, -(z.im * 1e6).round() as i64))
            .collect();
        (r.dim, key)
    });
    Ok(irreps)
}

fn characters_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
}

/// `Q* L_g Q` where `L_g` is left multiplication by `g`.
fn restrict(group: &FiniteGroup, basis: &ComplexMatrix, g: usize) -> ComplexMatrix {
    let (n, k) = basis.shape();
    let mut moved = ComplexMatrix::zeros(n, k);
    for h in 0..n {
        moved.row_mut(group.mul(g, h)).copy_from(&basis.row(h));
    }
    basis.adjoint() * moved
}

fn block_class_character(
    group: &FiniteGroup,
    classes: &[Vec<usize>],
    basis: &ComplexMatrix,
) -> Vec<Complex64> {
    let (n, k) = basis.shape();
    classes
        .iter()
        .map(|cl| {
            let g = cl[0];
            let mut tr = c(0.0, 0.0);
            for h in 0..n {
                let gh = group.mul(g, h);
                for j in 0..k {
                    tr += basis[(gh, j)].conj() * basis[(h, j)];
                }
            }
            tr
        })
        .collect()
}

fn random_hermitian(k: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(k, k, |_, _| {
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&a + a.adjoint()) * c(0.5, 0.0)
}

/// `Σ_g R_g X R_g*` for a random Hermitian `X`, in block coordinates.
fn averaged_hermitian(
    group: &FiniteGroup,
    basis: &ComplexMatrix,
    rng: &mut ChaCha8Rng,
) -> ComplexMatrix {
    let (n, k) = basis.shape();
    let x = random_hermitian(k, rng);
    if k == n {
        // full regular representation: permute indices instead of multiplying
        let full = basis * &x * basis.adjoint();
        let mut acc = ComplexMatrix::zeros(n, n);
        for g in 0..n {
            for a in 0..n {
                let ga = group.mul(g, a);
                for b in 0..n {
                    acc[(ga, group.mul(g, b))] += full[(a, b)];
                }
            }
        }
        return basis.adjoint() * acc * basis;
    }
    let mut acc = ComplexMatrix::zeros(k, k);
    for g in 0..n {
        let r = restrict(group, basis, g);
        acc += &r * &x * r.adjoint();
    }
    acc
}

/// Orthonormal eigenvector blocks of a Hermitian matrix, one per cluster
/// of numerically equal eigenvalues.
fn eigenspace_split(h: &ComplexMatrix) -> Vec<ComplexMatrix> {
    let k = h.nrows();
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let gap = 1e-9 * scale;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(cl) if eig.eigenvalues[i] - eig.eigenvalues[*cl.last().unwrap()] <= gap => {
                cl.push(i)
            }
            _ => clusters.push(vec![i]),
        }
    }
    clusters
        .into_iter()
        .map(|cl| {
            let cols: Vec<_> = cl
                .iter()
                .map(|&i| eig.eigenvectors.column(i).into_owned())
                .collect();
            ComplexMatrix::from_columns(&cols)
        })
        .collect()
}

/// A projective representation, stored as a determinant-normalized lift.
#[derive(Debug, Clone)]
pub struct ProjectiveRep {
    group: FiniteGroup,
    dim: usize,
    lift: Vec<ComplexMatrix>,
}

impl ProjectiveRep {
    /// Normalizes `matrices` to determinant one (the identity element to the
    /// identity matrix) and checks that products agree up to scalars.
    pub fn new(group: FiniteGroup, matrices: Vec<ComplexMatrix>, tol: &Tolerances) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Shape(format!(
                "expected {} matrices, got {}",
                group.order(),
                matrices.len()
            )));
        }
        let dim = matrices[0].nrows();
        if dim == 0 || matrices.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::Shape(
                "matrices must share a positive square shape".into(),
            ));
        }
        let mut lift = Vec::with_capacity(matrices.len());
        for (g, m) in matrices.into_iter().enumerate() {
            if g == group.identity() {
                if scalar_ratio(&m, &identity(dim), tol.rep).is_none_or(|s| s.norm() == 0.0) {
                    return Err(Error::NotProjective(
                        "identity is not sent to a scalar".into(),
                    ));
                }
                lift.push(identity(dim));
                continue;
            }
            let det = m.determinant();
            if det.norm() < 1e-300 || !det.re.is_finite() || !det.im.is_finite() {
                return Err(Error::SingularMatrix(g));
            }
            let root = det.powf(1.0 / dim as f64);
            lift.push(m.map(|z| z / root));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let prod = &lift[g] * &lift[h];
                if scalar_ratio(&lift[group.mul(g, h)], &prod, tol.rep).is_none() {
                    return Err(Error::NotProjective(format!(
                        "lift({g}) lift({h}) is not a scalar multiple of lift({g}{h})",
                        g = g,
                        h = h
                    )));
                }
            }
        }
        Ok(Self { group, dim, lift })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lift(&self) -> &[ComplexMatrix] {
        &self.lift
    }

    pub fn commutant_dimension(&self, tol: &Tolerances) -> usize {
        let mats: Vec<ComplexMatrix> = if self.group.generators().is_empty() {
            self.lift.clone()
        } else {
            self.group
                .generators()
                .iter()
                .map(|&g| self.lift[g].clone())
                .collect()
        };
        commutant_dimension(&mats, tol.rank)
    }

    /// True iff, for every element, the two lifts differ by a scalar.
    pub fn same_projective_class(&self, other: &Self, tol: &Tolerances) -> bool {
        self.group == other.group
            && self.dim == other.dim
            && self
                .lift
                .iter()
                .zip(&other.lift)
                .all(|(a, b)| scalar_ratio(a, b, tol.rep).is_some())
    }

    /// True iff `T·lift(g)·T⁻¹` is a scalar multiple of `other.lift(g)` for all `g`.
    pub fn projectively_intertwined_by(
        &self,
        other: &Self,
        t: &ComplexMatrix,
        tol: &Tolerances,
    ) -> bool {
        let Some(t_inv) = t.clone().try_inverse() else {
            return false;
        };
        self.group == other.group
            && self
                .lift
                .iter()
                .zip(&other.lift)
                .all(|(a, b)| scalar_ratio(&(t * a * &t_inv), b, tol.rep).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{group_from_family, Family};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn regular_rep_of_trivial_group() {
        let g = group_from_family(Family::Cyclic, 1).unwrap();
        let r = regular_representation(&g);
        assert_eq!(r.dim(), 1);
        assert!(approx_eq(r.matrix(0), &identity(1), 0.0));
    }

    #[test]
    fn regular_rep_traces() {
        let g = group_from_family(Family::Dihedral, 4).unwrap();
        let r = regular_representation(&g);
        GroupLinearRep::new(g.clone(), r.matrices().to_vec(), &tol()).unwrap();
        for h in 0..g.order() {
            let expected = if h == g.identity() {
                g.order() as f64
            } else {
                0.0
            };
            assert_eq!(r.character(h), c(expected, 0.0));
            assert!(r
                .matrix(h)
                .iter()
                .all(|z| *z == c(0.0, 0.0) || *z == c(1.0, 0.0)));
        }
    }

    #[test]
    fn irreps_of_small_groups() {
        let cases = [
            (Family::Cyclic, 4, vec![1, 1, 1, 1]),
            (Family::Symmetric, 3, vec![1, 1, 2]),
            (Family::GeneralizedQuaternion, 2, vec![1, 1, 1, 1, 2]),
        ];
        for (fam, n, dims) in cases {
            let g = group_from_family(fam, n).unwrap();
            let irreps = decompose_irreps(&g, 0, &tol()).unwrap();
            let got: Vec<usize> = irreps.iter().map(|r| r.dim()).collect();
            assert_eq!(got, dims, "{fam:?}({n})");
            // trivial representation first
            assert!(irreps[0]
                .class_character()
                .iter()
                .all(|z| (z - c(1.0, 0.0)).norm() < 1e-9));
        }
    }

    #[test]
    fn decomposition_is_deterministic() {
        let g = group_from_family(Family::Dihedral, 5).unwrap();
        let a = decompose_irreps(&g, 7, &tol()).unwrap();
        let b = decompose_irreps(&g, 7, &tol()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.matrices(), y.matrices());
        }
    }

    #[test]
    fn commutant_examples() {
        let s3 = group_from_family(Family::Symmetric, 3).unwrap();
        assert_eq!(regular_representation(&s3).commutant_dimension(&tol()), 6);
        let irreps = decompose_irreps(&s3, 0, &tol()).unwrap();
        assert_eq!(irreps[0].commutant_dimension(&tol()), 1);
        let sum = irreps[1].direct_sum(&irreps[2]).unwrap();
        assert_eq!(sum.commutant_dimension(&tol()), 2);
        let double = irreps[2].direct_sum(&irreps[2]).unwrap();
        assert_eq!(double.commutant_dimension(&tol()), 4);
    }

    #[test]
    fn equivalence_by_characters() {
        let c3 = group_from_family(Family::Cyclic, 3).unwrap();
        let irreps = decompose_irreps(&c3, 0, &tol()).unwrap();
        assert!(are_equivalent(&irreps[1], &irreps[1], &tol()).unwrap());
        assert!(!are_equivalent(&irreps[1], &irreps[2], &tol()).unwrap());

        let s3 = group_from_family(Family::Symmetric, 3).unwrap();
        let rho = decompose_irreps(&s3, 0, &tol()).unwrap().pop().unwrap();
        let t = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 0.3), c(2.0, 0.0)],
        );
        let conj = rho.conjugated_by(&t).unwrap();
        assert!(are_equivalent(&rho, &conj, &tol()).unwrap());
    }

    #[test]
    fn unitarize_conjugated_rep() {
        let s3 = group_from_family(Family::Symmetric, 3).unwrap();
        let rho = decompose_irreps(&s3, 0, &tol()).unwrap().pop().unwrap();
        let t = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(2.0, 0.0),
            c(1.0, 0.0),
        ]));
        let skewed = rho.conjugated_by(&t).unwrap();
        assert!(!skewed.is_unitary(&tol()));
        let u = unitarize(&skewed, &tol()).unwrap();
        assert!(u.is_unitary(&tol()));
        assert!(are_equivalent(&u, &skewed, &tol()).unwrap());
        GroupLinearRep::new(s3.clone(), u.matrices().to_vec(), &tol()).unwrap();

        let reg = regular_representation(&s3);
        let ureg = unitarize(&reg, &tol()).unwrap();
        for (a, b) in ureg.matrices().iter().zip(reg.matrices()) {
            assert!(approx_eq(a, b, 1e-10));
        }
    }

    #[test]
    fn projective_from_linear_is_valid() {
        let q8 = group_from_family(Family::GeneralizedQuaternion, 2).unwrap();
        let rho = decompose_irreps(&q8, 0, &tol()).unwrap().pop().unwrap();
        let p = rho.to_projective(&tol()).unwrap();
        for m in p.lift() {
            assert!((m.determinant() - c(1.0, 0.0)).norm() < 1e-9);
        }
        assert_eq!(p.commutant_dimension(&tol()), 1);
    }

    #[test]
    fn rejects_non_homomorphism() {
        let c2 = group_from_family(Family::Cyclic, 2).unwrap();
        let mats = vec![identity(1), identity(1) * c(2.0, 0.0)];
        assert!(matches!(
            GroupLinearRep::new(c2, mats, &tol()),
            Err(Error::RepAxiom(..))
        ));
    }

    #[test]
    fn from_generators_reconstructs() {
        let s3 = group_from_family(Family::Symmetric, 3).unwrap();
        let rho = decompose_irreps(&s3, 0, &tol()).unwrap().pop().unwrap();
        let gens: BTreeMap<usize, ComplexMatrix> = s3
            .generators()
            .iter()
            .map(|&g| (g, rho.matrix(g).clone()))
            .collect();
        let rebuilt = GroupLinearRep::from_generators(s3, &gens, &tol()).unwrap();
        for (a, b) in rebuilt.matrices().iter().zip(rho.matrices()) {
            assert!(approx_eq(a, b, 1e-9));
        }
    }
}
