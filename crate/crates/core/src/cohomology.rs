//! Second cohomology of finite groups with root-of-unity coefficients.
//!
//! A cocycle with values in `μ_m` is stored as integer exponents of
//! `ζ_m = exp(2πi/m)`. Cochains are normalized (zero whenever an argument
//! is the identity), so the unknowns are indexed by pairs of non-identity
//! elements.
//!
//! `H²(G, μ_m)` is computed exactly: the cocycle conditions form an integer
//! matrix whose Smith normal form describes the cocycle group, coboundaries
//! are mapped into those coordinates, and a second Smith normal form of the
//! resulting presentation yields invariant factors together with
//! representative cocycles. The cocycle conditions are only imposed for the
//! third argument running over a generating set; for normalized cochains
//! this already forces the full identity, by induction on word length.
//!
//! The ℂ^× quotient additionally kills the classes `δβ` with `β` valued in
//! `μ_{m·e}` (`e` the group exponent) whose coboundary lands in `μ_m`.

use num_complex::Complex64;
use serde::Serialize;

use crate::abelian::{canonical_form, subgroup_structure};
use crate::error::{Error, Result};
use crate::group::{lcm, FiniteGroup, GroupHomomorphism};
use crate::intmat::{diagonalize_mod, gcd_i64, mod_inverse, IntegerMatrix, Track};
use crate::linrep::ProjectiveRep;
use crate::tolerance::Tolerances;

/// Largest group order accepted by the dense cohomology path.
pub const MAX_COHOMOLOGY_ORDER: usize = 48;

/// A normalized 2-cocycle `α(g, h) = ζ_m^{values[g][h]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleZn {
    group: FiniteGroup,
    modulus: i64,
    values: Vec<i64>,
}

impl CocycleZn {
    /// Reduces `values` modulo `modulus` and checks normalization and the
    /// cocycle identity `a(g,h) + a(gh,k) = a(h,k) + a(g,hk)`.
    pub fn new(group: FiniteGroup, modulus: i64, values: Vec<Vec<i64>>) -> Result<Self> {
        let n = group.order();
        if modulus < 1 {
            return Err(Error::InvalidCocycle("modulus must be positive".into()));
        }
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("cocycle table must be {n}x{n}")));
        }
        let values: Vec<i64> = values
            .concat()
            .into_iter()
            .map(|v| v.rem_euclid(modulus))
            .collect();
        let a = Self {
            group,
            modulus,
            values,
        };
        a.check()?;
        Ok(a)
    }

    /// Like [`CocycleZn::new`], first subtracting the constant coboundary
    /// that zeroes `a(1, 1)`.
    pub fn normalized(group: FiniteGroup, modulus: i64, values: Vec<Vec<i64>>) -> Result<Self> {
        let e = group.identity();
        let shift = values.get(e).and_then(|r| r.get(e)).copied().unwrap_or(0);
        let shifted = values
            .into_iter()
            .map(|r| r.into_iter().map(|v| v - shift).collect())
            .collect();
        Self::new(group, modulus, shifted)
    }

    pub fn zero(group: &FiniteGroup, modulus: i64) -> Self {
        Self {
            group: group.clone(),
            modulus,
            values: vec![0; group.order() * group.order()],
        }
    }

    /// `δβ(g, h) = β(gh) − β(g) − β(h)`; `β(1)` must be zero for the result
    /// to be normalized.
    pub fn coboundary(group: &FiniteGroup, modulus: i64, beta: &[i64]) -> Result<Self> {
        let n = group.order();
        if beta.len() != n {
            return Err(Error::Shape(
                "coboundary needs one exponent per element".into(),
            ));
        }
        let values = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| beta[group.mul(g, h)] - beta[g] - beta[h])
                    .collect()
            })
            .collect();
        Self::new(group.clone(), modulus, values)
    }

    fn check(&self) -> Result<()> {
        let g = &self.group;
        let e = g.identity();
        for x in 0..g.order() {
            if self.value(e, x) != 0 || self.value(x, e) != 0 {
                return Err(Error::InvalidCocycle(format!(
                    "not normalized at element {x}"
                )));
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                for c in 0..g.order() {
                    let lhs = self.value(a, b) + self.value(ab, c);
                    let rhs = self.value(b, c) + self.value(a, g.mul(b, c));
                    if (lhs - rhs).rem_euclid(self.modulus) != 0 {
                        return Err(Error::InvalidCocycle(format!(
                            "cocycle identity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    #[inline]
    pub fn value(&self, g: usize, h: usize) -> i64 {
        self.values[g * self.group.order() + h]
    }

    pub fn values(&self) -> Vec<Vec<i64>> {
        self.values
            .chunks(self.group.order())
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The complex value `ζ_m^{a(g,h)}`.
    pub fn complex_value(&self, g: usize, h: usize) -> Complex64 {
        root_of_unity(self.value(g, h), self.modulus)
    }

    /// The same cocycle with exponents in `μ_target`; `modulus` must divide `target`.
    pub fn embed(&self, target: i64) -> Result<Self> {
        if target % self.modulus != 0 {
            return Err(Error::InvalidCocycle(format!(
                "cannot embed μ_{} into μ_{}",
                self.modulus, target
            )));
        }
        let k = target / self.modulus;
        Ok(Self {
            group: self.group.clone(),
            modulus: target,
            values: self.values.iter().map(|v| v * k).collect(),
        })
    }

    /// Pointwise sum (product of cocycles).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let m = lcm(self.modulus as usize, other.modulus as usize) as i64;
        let (a, b) = (self.embed(m)?, other.embed(m)?);
        Ok(Self {
            group: self.group.clone(),
            modulus: m,
            values: a
                .values
                .iter()
                .zip(&b.values)
                .map(|(x, y)| (x + y) % m)
                .collect(),
        })
    }
}

pub(crate) fn root_of_unity(k: i64, m: i64) -> Complex64 {
    Complex64::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * (k.rem_euclid(m) as f64) / m as f64,
    )
}

/// Indexing of normalized cochains by non-identity elements.
struct Cochains {
    nonid: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl Cochains {
    fn new(group: &FiniteGroup) -> Self {
        let nonid: Vec<usize> = (0..group.order())
            .filter(|&g| g != group.identity())
            .collect();
        let mut pos = vec![None; group.order()];
        for (i, &g) in nonid.iter().enumerate() {
            pos[g] = Some(i);
        }
        Self { nonid, pos }
    }

    fn n1(&self) -> usize {
        self.nonid.len()
    }

    fn n2(&self) -> usize {
        self.nonid.len() * self.nonid.len()
    }

    fn pair(&self, g: usize, h: usize) -> Option<usize> {
        Some(self.pos[g]? * self.n1() + self.pos[h]?)
    }

    /// Exponent vector of a cocycle on the non-identity pairs.
    fn vectorize(&self, a: &CocycleZn) -> Vec<i64> {
        let mut x = Vec::with_capacity(self.n2());
        for &g in &self.nonid {
            for &h in &self.nonid {
                x.push(a.value(g, h));
            }
        }
        x
    }

    fn devectorize(&self, group: &FiniteGroup, modulus: i64, x: &[i64]) -> Result<CocycleZn> {
        let n = group.order();
        let mut values = vec![vec![0; n]; n];
        for (i, &g) in self.nonid.iter().enumerate() {
            for (j, &h) in self.nonid.iter().enumerate() {
                values[g][h] = x[i * self.n1() + j];
            }
        }
        CocycleZn::new(group.clone(), modulus, values)
    }

    /// Cocycle conditions `f(g,h) + f(gh,k) − f(h,k) − f(g,hk)` for
    /// non-identity `g, h` and `k` in `ks`.
    fn cocycle_matrix(&self, group: &FiniteGroup, ks: &[usize]) -> IntegerMatrix {
        let rows = self.n2() * ks.len();
        let mut m = IntegerMatrix::zeros(rows, self.n2());
        let mut r = 0;
        for &g in &self.nonid {
            for &h in &self.nonid {
                for &k in ks {
                    let gh = group.mul(g, h);
                    let hk = group.mul(h, k);
                    for (a, b, s) in [(g, h, 1), (gh, k, 1), (h, k, -1), (g, hk, -1)] {
                        if let Some(p) = self.pair(a, b) {
                            m.set(r, p, m.get(r, p) + s);
                        }
                    }
                    r += 1;
                }
            }
        }
        m
    }

    /// Column `x` is the coboundary of the indicator exponent at `nonid[x]`.
    fn coboundary_matrix(&self, group: &FiniteGroup) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.n2(), self.n1());
        for &g in &self.nonid {
            for &h in &self.nonid {
                let row = self.pair(g, h).unwrap();
                if let Some(p) = self.pos[group.mul(g, h)] {
                    m.set(row, p, m.get(row, p) + 1);
                }
                let pg = self.pos[g].unwrap();
                m.set(row, pg, m.get(row, pg) - 1);
                let ph = self.pos[h].unwrap();
                m.set(row, ph, m.get(row, ph) - 1);
            }
        }
        m
    }
}

/// Greedy irredundant subset of the stored generators; each kept generator
/// enlarges the subgroup generated so far.
fn small_generating_set(group: &FiniteGroup) -> Vec<usize> {
    let mut kept = Vec::new();
    let mut span = vec![group.identity()];
    for &g in group.generators() {
        if span.binary_search(&g).is_err() {
            kept.push(g);
            span = group.subgroup_generated(&kept);
        }
    }
    kept
}

/// A finite abelian group `⊕ Z/d_j` given as a quotient of `⊕ Z/g_i`.
#[derive(Debug, Clone)]
struct Presentation {
    invariant_factors: Vec<i64>,
    /// Rows of the left Smith transform for the nontrivial factors.
    coordinates: IntegerMatrix,
    basis: Vec<CocycleZn>,
}

/// `H²(G, μ_m)` together with its quotient `H²(G, ℂ^×)`.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    group: FiniteGroup,
    modulus: i64,
    exponent: i64,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
    /// For each Smith coordinate `i`, cocycles have `y_i ∈ scale_i · Z/m`.
    scale: Vec<i64>,
    active: Vec<usize>,
    mu: Presentation,
    cx: Presentation,
}

/// Serializable summary of a cohomology computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CohomologyReport {
    pub modulus: i64,
    pub invariant_factors_mu_m: Vec<i64>,
    #[serde(rename = "invariant_factors_Cx")]
    pub invariant_factors_cx: Vec<i64>,
}

/// `H²(G, μ_m)` with `m = |G|` unless given, and its ℂ^× quotient.
pub fn second_cohomology(group: &FiniteGroup, modulus: Option<i64>) -> Result<CohomologyGroup> {
    let n = group.order();
    if n > MAX_COHOMOLOGY_ORDER {
        return Err(Error::OrderBound {
            order: n,
            limit: MAX_COHOMOLOGY_ORDER,
        });
    }
    let m = modulus.unwrap_or(n as i64);
    if m < 1 {
        return Err(Error::InvalidCocycle("modulus must be positive".into()));
    }
    let e = group.exponent() as i64;
    let ch = Cochains::new(group);
    let n2 = ch.n2();

    let ks = small_generating_set(group);
    let a = ch.cocycle_matrix(group, &ks);
    let snf = diagonalize_mod(
        &a,
        m,
        Track {
            u: false,
            u_inv: false,
            v: true,
            v_inv: true,
        },
    )?;
    let diag = snf.diagonal();
    let orders: Vec<i64> = (0..n2)
        .map(|i| match diag.get(i) {
            Some(&d) if d != 0 => gcd_i64(d, m),
            _ => m,
        })
        .collect();
    let scale: Vec<i64> = orders.iter().map(|&g| m / g).collect();
    let active: Vec<usize> = (0..n2).filter(|&i| orders[i] > 1).collect();

    let mut cg = CohomologyGroup {
        group: group.clone(),
        modulus: m,
        exponent: e,
        v: snf.v,
        v_inv: snf.v_inv,
        scale,
        active,
        mu: Presentation {
            invariant_factors: vec![],
            coordinates: IntegerMatrix::zeros(0, 0),
            basis: vec![],
        },
        cx: Presentation {
            invariant_factors: vec![],
            coordinates: IntegerMatrix::zeros(0, 0),
            basis: vec![],
        },
    };

    // ordinary coboundaries, in reduced coordinates
    let b = ch.coboundary_matrix(group);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for col in 0..b.cols() {
        relations.push(cg.reduced_coordinates(&b.column(col))?);
    }
    cg.mu = cg.present(&ch, &relations)?;

    // coboundaries over ℂ^× of β valued in μ_{m e} landing in μ_m: with
    // U B V ≡ D (mod m e), Bβ ≡ 0 (mod e) iff y = V⁻¹β has d_j y_j ≡ 0 (mod e)
    let big = m.checked_mul(e).ok_or(Error::Overflow)?;
    let sb = diagonalize_mod(
        &b,
        big,
        Track {
            u: false,
            u_inv: false,
            v: true,
            v_inv: false,
        },
    )?;
    let diag_b = sb.diagonal();
    for j in 0..b.cols() {
        let k = e / gcd_i64(diag_b.get(j).copied().unwrap_or(0), e);
        let beta: Vec<i64> = sb.v.column(j).iter().map(|&x| x * k % big).collect();
        let image = b.mul_vec_mod(&beta, big);
        if image.iter().any(|v| v % e != 0) {
            return Err(Error::InvalidCocycle(
                "coboundary not divisible by exponent".into(),
            ));
        }
        let x: Vec<i64> = image.iter().map(|v| v / e).collect();
        relations.push(cg.reduced_coordinates(&x)?);
    }
    cg.cx = cg.present(&ch, &relations)?;
    Ok(cg)
}

impl CohomologyGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn invariant_factors_mu_m(&self) -> &[i64] {
        &self.mu.invariant_factors
    }

    /// Invariant factors of the Schur multiplier `H²(G, ℂ^×)`.
    pub fn invariant_factors_cx(&self) -> &[i64] {
        &self.cx.invariant_factors
    }

    pub fn order_mu_m(&self) -> i64 {
        self.mu.invariant_factors.iter().product()
    }

    pub fn order_cx(&self) -> i64 {
        self.cx.invariant_factors.iter().product()
    }

    /// Representative cocycles of the `H²(G, μ_m)` generators.
    pub fn basis_cocycles(&self) -> &[CocycleZn] {
        &self.mu.basis
    }

    /// Representative cocycles of the Schur multiplier generators.
    pub fn basis_cocycles_cx(&self) -> &[CocycleZn] {
        &self.cx.basis
    }

    pub fn report(&self) -> CohomologyReport {
        CohomologyReport {
            modulus: self.modulus,
            invariant_factors_mu_m: self.mu.invariant_factors.clone(),
            invariant_factors_cx: self.cx.invariant_factors.clone(),
        }
    }

    /// Coordinates of the class of `a` in `H²(G, μ_m)`.
    pub fn class_coordinates_mu(&self, a: &CocycleZn) -> Result<Vec<i64>> {
        let w = self.cocycle_coordinates(a)?;
        Ok(Self::apply(&self.mu, &w))
    }

    /// Coordinates of the class of `a` in `H²(G, ℂ^×)`.
    pub fn class_coordinates_cx(&self, a: &CocycleZn) -> Result<Vec<i64>> {
        let w = self.cocycle_coordinates(a)?;
        Ok(Self::apply(&self.cx, &w))
    }

    pub fn is_trivial_cx(&self, a: &CocycleZn) -> Result<bool> {
        Ok(self.class_coordinates_cx(a)?.iter().all(|&c| c == 0))
    }

    /// Invariant factors of the subgroup of `H²(G, ℂ^×)` generated by the
    /// given coordinate vectors.
    pub fn subgroup_structure_cx(&self, classes: &[Vec<i64>]) -> Result<Vec<i64>> {
        subgroup_structure(&self.cx.invariant_factors, classes)
    }

    fn apply(p: &Presentation, w: &[i64]) -> Vec<i64> {
        p.invariant_factors
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let d = d as i128;
                p.coordinates
                    .row(j)
                    .iter()
                    .zip(w)
                    .fold(0i128, |acc, (&u, &x)| (acc + u as i128 * x as i128) % d)
                    .rem_euclid(d) as i64
            })
            .collect()
    }

    fn cocycle_coordinates(&self, a: &CocycleZn) -> Result<Vec<i64>> {
        if a.group != self.group {
            return Err(Error::GroupMismatch);
        }
        let a = a.embed(self.modulus)?;
        let x = Cochains::new(&self.group).vectorize(&a);
        self.reduced_coordinates(&x)
    }

    /// `w_i = (V⁻¹ x)_i / scale_i` on the active coordinates.
    fn reduced_coordinates(&self, x: &[i64]) -> Result<Vec<i64>> {
        let m = self.modulus;
        let y = self.v_inv.mul_vec_mod(x, m);
        let mut w = Vec::with_capacity(self.active.len());
        for (i, &yi) in y.iter().enumerate() {
            if yi % self.scale[i] != 0 {
                return Err(Error::InvalidCocycle("vector is not a cocycle".into()));
            }
            if self.scale[i] < m {
                w.push(yi / self.scale[i]);
            }
        }
        debug_assert_eq!(w.len(), self.active.len());
        Ok(w)
    }

    fn present(&self, ch: &Cochains, relations: &[Vec<i64>]) -> Result<Presentation> {
        let m = self.modulus;
        let k = self.active.len();
        let mut p = IntegerMatrix::zeros(k, k + relations.len());
        for (r, &i) in self.active.iter().enumerate() {
            p.set(r, r, m / self.scale[i]);
        }
        for (c, rel) in relations.iter().enumerate() {
            for (r, &v) in rel.iter().enumerate() {
                p.set(r, k + c, v);
            }
        }
        // the relation lattice contains m Z^k, so working mod m loses nothing
        let diag_form = diagonalize_mod(
            &p,
            m,
            Track {
                u: true,
                u_inv: true,
                v: false,
                v_inv: false,
            },
        )?;
        let cyclic: Vec<(usize, i64)> = diag_form
            .diagonal()
            .into_iter()
            .enumerate()
            .map(|(j, d)| (j, gcd_i64(d, m)))
            .filter(|&(_, o)| o > 1)
            .collect();
        // canonical invariant factors of ⊕ Z/o_j
        let orders: Vec<i64> = cyclic.iter().map(|&(_, o)| o).collect();
        let canon = canonical_form(&orders)?;

        let mut coordinates = IntegerMatrix::zeros(canon.factors.len(), k);
        let mut basis = Vec::with_capacity(canon.factors.len());
        for (l, (coord, gen)) in canon.coordinates.iter().zip(&canon.generators).enumerate() {
            let mut w = vec![0i128; k];
            for (s, &(j, _)) in cyclic.iter().enumerate() {
                for (c, wc) in w.iter_mut().enumerate() {
                    let entry = coordinates.get(l, c) as i128
                        + coord[s] as i128 * diag_form.u.get(j, c) as i128;
                    coordinates.set(l, c, entry.rem_euclid(m as i128) as i64);
                    *wc += gen[s] as i128 * diag_form.u_inv.get(c, j) as i128;
                }
            }
            let mut y = vec![0i64; self.scale.len()];
            for (c, &i) in self.active.iter().enumerate() {
                let wi = w[c].rem_euclid(m as i128);
                y[i] = (wi * self.scale[i] as i128 % m as i128) as i64;
            }
            let x = self.v.mul_vec_mod(&y, m);
            basis.push(ch.devectorize(&self.group, m, &x)?);
        }
        Ok(Presentation {
            invariant_factors: canon.factors,
            coordinates,
            basis,
        })
    }
}

/// Outcome of the ℂ^×-coboundary test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryCheck {
    pub is_coboundary: bool,
    /// Exponents `b` modulo `witness_modulus` with `δb ≡ e·a`, where `e` is
    /// `witness_modulus / modulus`; present when `is_coboundary`.
    pub witness: Option<Vec<i64>>,
    pub witness_modulus: i64,
}

/// Decides whether `a = δβ` for some `β : G → ℂ^×`.
///
/// Such a `β` can always be taken with values in `μ_{m·e}`, `e` the exponent
/// of `G`: `β^m` is then a homomorphism into `μ_e`. The exponent system is
/// therefore solved exactly modulo `m·e`.
pub fn is_coboundary_over_cx(a: &CocycleZn) -> Result<CoboundaryCheck> {
    let group = a.group();
    let m = a.modulus();
    let e = group.exponent() as i64;
    let big = m.checked_mul(e).ok_or(Error::Overflow)?;
    let ch = Cochains::new(group);
    let b = ch.coboundary_matrix(group);
    let target: Vec<i64> = ch.vectorize(a).iter().map(|&v| (v * e) % big).collect();
    if ch.n1() == 0 {
        return Ok(CoboundaryCheck {
            is_coboundary: true,
            witness: Some(vec![0]),
            witness_modulus: big,
        });
    }
    let snf = diagonalize_mod(
        &b,
        big,
        Track {
            u: true,
            u_inv: false,
            v: true,
            v_inv: false,
        },
    )?;
    let c = snf.u.mul_vec_mod(&target, big);
    let diag = snf.diagonal();
    let mut y = vec![0i64; ch.n1()];
    for (i, &ci) in c.iter().enumerate() {
        let d = diag.get(i).copied().unwrap_or(0);
        if d == 0 {
            if ci % big != 0 {
                return Ok(CoboundaryCheck {
                    is_coboundary: false,
                    witness: None,
                    witness_modulus: big,
                });
            }
            continue;
        }
        let g = gcd_i64(d, big);
        if ci % g != 0 {
            return Ok(CoboundaryCheck {
                is_coboundary: false,
                witness: None,
                witness_modulus: big,
            });
        }
        let reduced = big / g;
        let inv = mod_inverse(d / g, reduced).unwrap_or(0);
        y[i] = ((ci / g) as i128 * inv as i128).rem_euclid(reduced as i128) as i64;
    }
    let beta = snf.v.mul_vec_mod(&y, big);
    let mut witness = vec![0i64; group.order()];
    for (i, &g) in ch.nonid.iter().enumerate() {
        witness[g] = beta[i];
    }
    let check = CocycleZn::coboundary(group, big, &witness)?;
    if check != a.embed(big)? {
        return Err(Error::InvalidCocycle(
            "coboundary witness does not reproduce the cocycle".into(),
        ));
    }
    Ok(CoboundaryCheck {
        is_coboundary: true,
        witness: Some(witness),
        witness_modulus: big,
    })
}

/// Pulls a cocycle on `H` back along `θ : G → H`.
pub fn inflation(a: &CocycleZn, theta: &GroupHomomorphism) -> Result<CocycleZn> {
    if theta.codomain() != a.group() {
        return Err(Error::GroupMismatch);
    }
    let g = theta.domain();
    let values = (0..g.order())
        .map(|x| {
            (0..g.order())
                .map(|y| a.value(theta.apply(x), theta.apply(y)))
                .collect()
        })
        .collect();
    CocycleZn::new(g.clone(), a.modulus(), values)
}

/// Extracts the cocycle of a determinant-normalized lift.
///
/// `lift(gh) = α(g,h) lift(g) lift(h)`; determinant normalization forces
/// `α^dim = 1`, so each scalar is snapped to a `dim`-th root of unity and
/// encoded with modulus `lcm(dim, |G|)`.
pub fn cocycle_of_projective(p: &ProjectiveRep, tol: &Tolerances) -> Result<CocycleZn> {
    let group = p.group();
    let n = group.order();
    let d = p.dim();
    let m = lcm(d, n) as i64;
    let step = m / d as i64;
    let inverses: Vec<_> = p
        .lift()
        .iter()
        .enumerate()
        .map(|(g, l)| l.clone().try_inverse().ok_or(Error::SingularMatrix(g)))
        .collect::<Result<_>>()?;
    let mut values = vec![vec![0i64; n]; n];
    for g in 0..n {
        for h in 0..n {
            let s = &p.lift()[group.mul(g, h)] * &inverses[h] * &inverses[g];
            let alpha = s.trace() / d as f64;
            let turns = alpha.arg() / (2.0 * std::f64::consts::PI) * d as f64;
            let k = (turns.round() as i64).rem_euclid(d as i64);
            if (alpha - root_of_unity(k, d as i64)).norm() > tol.snap {
                return Err(Error::NotProjective(format!(
                    "scalar {alpha} at ({g}, {h}) is not a {d}-th root of unity"
                )));
            }
            values[g][h] = k * step;
        }
    }
    CocycleZn::new(group.clone(), m, values)
}

/// True iff `sub ⊆ Z(G)` and `sub ⊆ [G, G]`.
pub fn is_stem_extension(group: &FiniteGroup, sub: &[usize]) -> Result<bool> {
    if !group.is_subgroup(sub) {
        return Err(Error::NotSubgroup);
    }
    let center = group.center();
    let derived = group.derived_subgroup();
    Ok(sub
        .iter()
        .all(|g| center.binary_search(g).is_ok() && derived.binary_search(g).is_ok()))
}

/// True iff `θ` is a stem extension whose kernel has the order of the
/// Schur multiplier of its image.
pub fn is_schur_cover(theta: &GroupHomomorphism) -> Result<bool> {
    if !theta.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let kernel = theta.kernel();
    if !is_stem_extension(theta.domain(), &kernel)? {
        return Ok(false);
    }
    let h2 = second_cohomology(theta.codomain(), None)?;
    Ok(kernel.len() as i64 == h2.order_cx())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{group_from_family, Family};
    use crate::linrep::decompose_irreps;

    fn g(f: Family, n: usize) -> FiniteGroup {
        group_from_family(f, n).unwrap()
    }

    #[test]
    fn multiplier_of_small_groups() {
        let cases = [
            (Family::Cyclic, 2, vec![]),
            (Family::Cyclic, 4, vec![]),
            (Family::Klein, 0, vec![2]),
            (Family::Dihedral, 3, vec![]),
            (Family::Dihedral, 4, vec![2]),
            (Family::GeneralizedQuaternion, 2, vec![]),
        ];
        for (fam, n, expected) in cases {
            let h2 = second_cohomology(&g(fam, n), None).unwrap();
            assert_eq!(h2.invariant_factors_cx(), &expected[..], "{fam:?}({n})");
        }
    }

    #[test]
    fn mu_m_groups_match_universal_coefficients() {
        // H²(Z/n, Z/n) = Z/n
        let h2 = second_cohomology(&g(Family::Cyclic, 5), None).unwrap();
        assert_eq!(h2.invariant_factors_mu_m(), &[5]);
        // Klein, m = 4: Hom(Z/2, Z/4) ⊕ Ext((Z/2)², Z/4) = (Z/2)³
        let h2 = second_cohomology(&g(Family::Klein, 0), None).unwrap();
        assert_eq!(h2.invariant_factors_mu_m(), &[2, 2, 2]);
    }

    #[test]
    fn trivial_group_cohomology() {
        let h2 = second_cohomology(&g(Family::Cyclic, 1), None).unwrap();
        assert!(h2.invariant_factors_mu_m().is_empty());
        assert!(h2.invariant_factors_cx().is_empty());
    }

    #[test]
    fn basis_cocycles_have_their_orders() {
        let klein = g(Family::Klein, 0);
        let h2 = second_cohomology(&klein, None).unwrap();
        let basis = &h2.basis_cocycles_cx()[0];
        assert_eq!(h2.class_coordinates_cx(basis).unwrap(), vec![1]);
        assert!(!is_coboundary_over_cx(basis).unwrap().is_coboundary);
        let doubled = basis.add(basis).unwrap();
        assert!(is_coboundary_over_cx(&doubled).unwrap().is_coboundary);
        assert_eq!(h2.class_coordinates_cx(&doubled).unwrap(), vec![0]);
        for (j, b) in h2.basis_cocycles().iter().enumerate() {
            let mut expected = vec![0; h2.invariant_factors_mu_m().len()];
            expected[j] = 1;
            assert_eq!(h2.class_coordinates_mu(b).unwrap(), expected);
        }
    }

    #[test]
    fn zero_cocycle_is_coboundary() {
        let klein = g(Family::Klein, 0);
        let check = is_coboundary_over_cx(&CocycleZn::zero(&klein, 4)).unwrap();
        assert!(check.is_coboundary);
        assert!(check.witness.unwrap().iter().all(|&b| b == 0));
    }

    #[test]
    fn random_coboundaries_are_detected() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let grp = g(Family::Dihedral, 4);
        for _ in 0..10 {
            let mut beta: Vec<i64> = (0..8).map(|_| rng.random_range(0..8)).collect();
            beta[grp.identity()] = 0;
            let a = CocycleZn::coboundary(&grp, 8, &beta).unwrap();
            let check = is_coboundary_over_cx(&a).unwrap();
            assert!(check.is_coboundary);
            let w = check.witness.unwrap();
            let redo = CocycleZn::coboundary(&grp, check.witness_modulus, &w).unwrap();
            assert_eq!(redo, a.embed(check.witness_modulus).unwrap());
        }
    }

    #[test]
    fn cocycle_validation() {
        let c2 = g(Family::Cyclic, 2);
        assert!(CocycleZn::new(c2.clone(), 2, vec![vec![0, 1], vec![0, 0]]).is_err());
        // a(1,1) = 1 on Z/2 with m = 2 is a valid normalized cocycle
        let a = CocycleZn::new(c2.clone(), 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(is_coboundary_over_cx(&a).unwrap().is_coboundary);
        let n = CocycleZn::normalized(c2, 2, vec![vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(n.values(), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn projective_cocycles() {
        let q8 = g(Family::GeneralizedQuaternion, 2);
        let tol = Tolerances::default();
        let irreps = decompose_irreps(&q8, 0, &tol).unwrap();
        // a genuine linear representation has a trivial class
        for rho in &irreps {
            let a = cocycle_of_projective(&rho.to_projective(&tol).unwrap(), &tol).unwrap();
            assert!((0..8).all(|x| a.value(q8.identity(), x) == 0));
            assert!(is_coboundary_over_cx(&a).unwrap().is_coboundary);
        }
    }

    #[test]
    fn q8_two_dim_pushed_to_klein_is_nontrivial() {
        let q8 = g(Family::GeneralizedQuaternion, 2);
        let tol = Tolerances::default();
        let rho = decompose_irreps(&q8, 0, &tol).unwrap().pop().unwrap();
        let (klein, proj) = q8.quotient_by_central(&q8.center()).unwrap();
        // smallest-member coset representatives give a section
        let mut section = vec![usize::MAX; klein.order()];
        for x in (0..8).rev() {
            section[proj.apply(x)] = x;
        }
        let mats = section.iter().map(|&x| rho.matrix(x).clone()).collect();
        let p = ProjectiveRep::new(klein.clone(), mats, &tol).unwrap();
        let a = cocycle_of_projective(&p, &tol).unwrap();
        assert!(!is_coboundary_over_cx(&a).unwrap().is_coboundary);
        let h2 = second_cohomology(&klein, Some(a.modulus())).unwrap();
        assert_eq!(h2.class_coordinates_cx(&a).unwrap(), vec![1]);
        // its inflation to Q8 is a coboundary
        let infl = inflation(&a, &proj).unwrap();
        assert!(is_coboundary_over_cx(&infl).unwrap().is_coboundary);
    }

    #[test]
    fn inflation_basics() {
        let klein = g(Family::Klein, 0);
        let h2 = second_cohomology(&klein, None).unwrap();
        let a = h2.basis_cocycles_cx()[0].clone();
        let id = GroupHomomorphism::identity_map(&klein);
        assert_eq!(inflation(&a, &id).unwrap(), a);
        let q8 = g(Family::GeneralizedQuaternion, 2);
        let (quot, proj) = q8.quotient_by_central(&q8.center()).unwrap();
        let z = CocycleZn::zero(&quot, 4);
        assert!(inflation(&z, &proj).unwrap().is_zero());
    }

    #[test]
    fn stem_and_schur_cover() {
        let q8 = g(Family::GeneralizedQuaternion, 2);
        assert!(is_stem_extension(&q8, &q8.center()).unwrap());
        assert!(is_stem_extension(&q8, &[q8.identity()]).unwrap());
        let c4 = g(Family::Cyclic, 4);
        let sub: Vec<usize> = (0..4).filter(|&x| c4.element_order(x) <= 2).collect();
        assert!(!is_stem_extension(&c4, &sub).unwrap());
        assert!(matches!(
            is_stem_extension(&c4, &[1]),
            Err(Error::NotSubgroup)
        ));

        let (_, proj) = q8.quotient_by_central(&q8.center()).unwrap();
        assert!(is_schur_cover(&proj).unwrap());
        let d8 = g(Family::Dihedral, 4);
        let (_, proj) = d8.quotient_by_central(&d8.center()).unwrap();
        assert!(is_schur_cover(&proj).unwrap());
        let (_, proj) = c4.quotient_by_central(&sub).unwrap();
        assert!(!is_schur_cover(&proj).unwrap());
    }

    /// Order of the solution group of `A x ≡ 0 (mod m)`.
    fn kernel_order_mod(a: &IntegerMatrix, m: i64) -> i64 {
        let d = crate::intmat::smith_diagonal(a).unwrap();
        (0..a.cols())
            .map(|i| match d.get(i) {
                Some(&x) if x != 0 => gcd_i64(x, m),
                _ => m,
            })
            .product()
    }

    #[test]
    fn generator_rows_cut_out_the_full_cocycle_group() {
        let inn_s3 = crate::quandle::conj_quandle(&g(Family::Symmetric, 3))
            .inner_group()
            .unwrap()
            .group;
        let groups = [
            inn_s3,
            g(Family::Klein, 0),
            g(Family::Cyclic, 6),
            g(Family::Dihedral, 3),
            g(Family::Dihedral, 4),
            g(Family::GeneralizedQuaternion, 2),
        ];
        for grp in groups {
            let ch = Cochains::new(&grp);
            let all: Vec<usize> = (0..grp.order()).filter(|&k| k != grp.identity()).collect();
            let full = ch.cocycle_matrix(&grp, &all);
            let gens = small_generating_set(&grp);
            let restricted = ch.cocycle_matrix(&grp, &gens);
            let m = grp.order() as i64;
            let k_full = kernel_order_mod(&full, m);
            let k_restricted = kernel_order_mod(&restricted, m);
            assert_eq!(k_full, k_restricted, "order {}", grp.order());
            // the full system is a superset of rows, so equal counts mean equal sets
        }
    }
}
