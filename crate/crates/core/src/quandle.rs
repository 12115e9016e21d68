//! Finite quandles given by Cayley tables.

use std::collections::VecDeque;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, QuandleAxiom, Result};
use crate::group::{group_closure, group_closure_with_cap, FiniteGroup};
use crate::perm::Permutation;

#[derive(Debug)]
struct QuandleData {
    size: usize,
    table: Vec<usize>,
}

/// A validated finite quandle on `{0, .., n-1}` with `table[x][y] = x ▷ y`.
#[derive(Debug, Clone)]
pub struct FiniteQuandle {
    data: Arc<QuandleData>,
}

impl PartialEq for FiniteQuandle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.table == other.data.table
    }
}

impl Eq for FiniteQuandle {}

/// Checks the three quandle axioms exhaustively.
pub fn validate_quandle(size: usize, table: &[Vec<usize>]) -> Result<FiniteQuandle> {
    if size == 0 {
        return Err(Error::EmptyQuandle);
    }
    if table.len() != size || table.iter().any(|r| r.len() != size) {
        return Err(Error::Shape(format!("quandle table must be {size}x{size}")));
    }
    if table.iter().flatten().any(|&v| v >= size) {
        return Err(Error::Shape("quandle table entry out of range".into()));
    }
    for (x, row) in table.iter().enumerate() {
        if row[x] != x {
            return Err(Error::QuandleAxiom {
                axiom: QuandleAxiom::Idempotence,
                witness: (x, x, x),
            });
        }
    }
    for (x, row) in table.iter().enumerate() {
        let mut preimage = vec![usize::MAX; size];
        for (y, &v) in row.iter().enumerate() {
            if preimage[v] != usize::MAX {
                return Err(Error::QuandleAxiom {
                    axiom: QuandleAxiom::NonBijectiveRow,
                    witness: (x, preimage[v], y),
                });
            }
            preimage[v] = y;
        }
    }
    for x in 0..size {
        for y in 0..size {
            for z in 0..size {
                if table[x][table[y][z]] != table[table[x][y]][table[x][z]] {
                    return Err(Error::QuandleAxiom {
                        axiom: QuandleAxiom::Distributivity,
                        witness: (x, y, z),
                    });
                }
            }
        }
    }
    Ok(FiniteQuandle {
        data: Arc::new(QuandleData {
            size,
            table: table.concat(),
        }),
    })
}

/// `x ▷ y = x y x⁻¹`.
pub fn conj_quandle(group: &FiniteGroup) -> FiniteQuandle {
    let n = group.order();
    let table = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| group.conjugate(x, y))
        .collect();
    FiniteQuandle {
        data: Arc::new(QuandleData { size: n, table }),
    }
}

/// The trivial quandle `x ▷ y = y`.
pub fn trivial_quandle(size: usize) -> Result<FiniteQuandle> {
    if size == 0 {
        return Err(Error::EmptyQuandle);
    }
    Ok(FiniteQuandle {
        data: Arc::new(QuandleData {
            size,
            table: (0..size).flat_map(|_| 0..size).collect(),
        }),
    })
}

impl FiniteQuandle {
    pub fn size(&self) -> usize {
        self.data.size
    }

    /// `x ▷ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.data.table[x * self.data.size + y]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.data
            .table
            .chunks(self.data.size)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// The left translation `L_x : y ↦ x ▷ y`.
    pub fn left_translation(&self, x: usize) -> Permutation {
        let n = self.size();
        Permutation::new(self.data.table[x * n..(x + 1) * n].to_vec())
            .expect("rows of a validated quandle are bijections")
    }

    /// True iff `p` is a quandle automorphism.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.size()
            && (0..self.size()).all(|y| {
                (0..self.size()).all(|z| p.apply(self.op(y, z)) == self.op(p.apply(y), p.apply(z)))
            })
    }

    /// True iff `subset` is closed under `▷` and its right division, i.e.
    /// forms a subquandle. Test-fixture helper.
    pub fn is_subquandle(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.size()];
        for &s in subset {
            if s >= self.size() {
                return false;
            }
            member[s] = true;
        }
        subset.iter().all(|&x| {
            subset.iter().all(|&y| {
                let z = self.op(x, y);
                let w = self.left_translation(x).inverse().apply(y);
                member[z] && member[w]
            })
        })
    }

    pub fn orbits(&self) -> OrbitPartition {
        let n = self.size();
        let mut orbit_of = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            orbit_of[start] = id;
            let mut block = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(y) = queue.pop_front() {
                for x in 0..n {
                    let z = self.op(x, y);
                    if orbit_of[z] == usize::MAX {
                        orbit_of[z] = id;
                        block.push(z);
                        queue.push_back(z);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        OrbitPartition { blocks, orbit_of }
    }

    pub fn inner_group(&self) -> Result<InnerGroup> {
        let translations: Vec<Permutation> =
            (0..self.size()).map(|x| self.left_translation(x)).collect();
        let closure = group_closure(self.size(), &translations)?;
        Self::inner_from_closure(translations, closure)
    }

    pub fn inner_group_with_cap(&self, max_order: usize) -> Result<InnerGroup> {
        let translations: Vec<Permutation> =
            (0..self.size()).map(|x| self.left_translation(x)).collect();
        let closure = group_closure_with_cap(self.size(), &translations, max_order)?;
        Self::inner_from_closure(translations, closure)
    }

    fn inner_from_closure(
        translations: Vec<Permutation>,
        closure: crate::group::PermutationClosure,
    ) -> Result<InnerGroup> {
        let index: std::collections::HashMap<&Permutation, usize> = closure
            .elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let theta: Vec<usize> = translations.iter().map(|p| index[p]).collect();
        // each generator letter becomes the smallest quandle element inducing it
        let letter: Vec<usize> = closure
            .generators
            .iter()
            .map(|g| {
                translations
                    .iter()
                    .position(|p| p == g)
                    .expect("generator is a translation")
            })
            .collect();
        let words = closure
            .words
            .iter()
            .map(|w| w.iter().map(|&s| letter[s]).collect())
            .collect();
        Ok(InnerGroup {
            group: closure.group,
            theta,
            words,
            permutations: closure.elements,
        })
    }
}

/// `Inn(Q)` with the map `θ : x ↦ L_x` and canonical words.
#[derive(Debug, Clone)]
pub struct InnerGroup {
    pub group: FiniteGroup,
    /// `theta[x]` is the group element equal to `L_x`.
    pub theta: Vec<usize>,
    /// `words[a]` is a list of quandle elements with
    /// `L_{w0} ∘ L_{w1} ∘ ... = a`, the breadth-first word of the closure.
    pub words: Vec<Vec<usize>>,
    /// Group element `a` acts on `Q` as `permutations[a]`.
    pub permutations: Vec<Permutation>,
}

impl InnerGroup {
    /// Multiplies out a word of quandle elements in `Inn(Q)`.
    pub fn evaluate(&self, word: &[usize]) -> usize {
        word.iter().fold(self.group.identity(), |acc, &x| {
            self.group.mul(acc, self.theta[x])
        })
    }
}

/// Orbits of the `Inn(Q)` action, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// A quandle character `χ : Q → ℂ^×` with `χ(x ▷ y) = χ(y)`, stored as one
/// value per orbit.
#[derive(Debug, Clone)]
pub struct QuandleCharacter {
    quandle: FiniteQuandle,
    orbit_of: Vec<usize>,
    values: Vec<Complex64>,
}

/// Builds the character taking `values[i]` on the `i`-th orbit.
pub fn make_character(quandle: &FiniteQuandle, values: Vec<Complex64>) -> Result<QuandleCharacter> {
    let orbits = quandle.orbits();
    if values.len() != orbits.len() {
        return Err(Error::Shape(format!(
            "expected {} orbit values, got {}",
            orbits.len(),
            values.len()
        )));
    }
    if let Some(orbit) = values
        .iter()
        .position(|v| v.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(Error::ZeroCharacterValue { orbit });
    }
    let chi = QuandleCharacter {
        quandle: quandle.clone(),
        orbit_of: orbits.orbit_of,
        values,
    };
    for x in 0..quandle.size() {
        for y in 0..quandle.size() {
            if chi.value(quandle.op(x, y)) != chi.value(y) {
                return Err(Error::Precondition(format!(
                    "character law fails at ({x}, {y})"
                )));
            }
        }
    }
    Ok(chi)
}

impl QuandleCharacter {
    pub fn trivial(quandle: &FiniteQuandle) -> Self {
        let orbits = quandle.orbits();
        Self {
            quandle: quandle.clone(),
            values: vec![Complex64::new(1.0, 0.0); orbits.len()],
            orbit_of: orbits.orbit_of,
        }
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn value(&self, x: usize) -> Complex64 {
        self.values[self.orbit_of[x]]
    }

    pub fn orbit_values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.quandle != other.quandle {
            return Err(Error::QuandleMismatch);
        }
        Ok(Self {
            quandle: self.quandle.clone(),
            orbit_of: self.orbit_of.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            quandle: self.quandle.clone(),
            orbit_of: self.orbit_of.clone(),
            values: self.values.iter().map(|v| v.inv()).collect(),
        }
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.values.iter().all(|v| (v.norm() - 1.0).abs() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{group_from_family, Family};

    fn s3() -> FiniteGroup {
        group_from_family(Family::Symmetric, 3).unwrap()
    }

    #[test]
    fn one_point_quandle() {
        let q = validate_quandle(1, &[vec![0]]).unwrap();
        assert_eq!(q.inner_group().unwrap().group.order(), 1);
    }

    #[test]
    fn idempotence_witness() {
        let err = validate_quandle(2, &[vec![0, 1], vec![1, 0]]).unwrap_err();
        assert!(matches!(
            err,
            Error::QuandleAxiom {
                axiom: QuandleAxiom::Idempotence,
                witness: (1, 1, 1)
            }
        ));
    }

    #[test]
    fn conj_quandle_is_valid() {
        let g = s3();
        let q = conj_quandle(&g);
        validate_quandle(q.size(), &q.table()).unwrap();
        assert_eq!(q.orbits().len(), 3);
    }

    #[test]
    fn abelian_conj_is_trivial() {
        let g = group_from_family(Family::Cyclic, 5).unwrap();
        let q = conj_quandle(&g);
        assert_eq!(q, trivial_quandle(5).unwrap());
        assert!((0..5).all(|x| q.left_translation(x).is_identity()));
    }

    #[test]
    fn translation_of_transposition_in_s3() {
        let g = s3();
        let q = conj_quandle(&g);
        let t = g
            .labels()
            .unwrap()
            .iter()
            .position(|l| l == "(0 1)")
            .unwrap();
        let lt = q.left_translation(t);
        let label = |i: usize| g.label(i);
        let transpositions: Vec<usize> = (0..6).filter(|&x| g.element_order(x) == 2).collect();
        let three_cycles: Vec<usize> = (0..6).filter(|&x| g.element_order(x) == 3).collect();
        assert_eq!(lt.apply(t), t);
        for &x in transpositions.iter().filter(|&&x| x != t) {
            let y = lt.apply(x);
            assert!(
                y != x && y != t && g.element_order(y) == 2,
                "{} -> {}",
                label(x),
                label(y)
            );
        }
        assert_eq!(lt.apply(three_cycles[0]), three_cycles[1]);
        assert_eq!(lt.apply(three_cycles[1]), three_cycles[0]);
        assert!(lt.apply(g.identity()) == g.identity());
        assert!(q.is_automorphism(&lt));
    }

    #[test]
    fn inner_group_orders() {
        assert_eq!(
            trivial_quandle(4)
                .unwrap()
                .inner_group()
                .unwrap()
                .group
                .order(),
            1
        );
        let inn = conj_quandle(&s3()).inner_group().unwrap();
        assert_eq!(inn.group.order(), 6);
        let q8 = group_from_family(Family::GeneralizedQuaternion, 2).unwrap();
        let q = conj_quandle(&q8);
        let inn = q.inner_group().unwrap();
        assert_eq!(inn.group.order(), 4);
        assert_eq!(q.orbits().len(), 5);
        for (a, w) in inn.words.iter().enumerate() {
            assert_eq!(inn.evaluate(w), a);
        }
    }

    #[test]
    fn theta_is_quandle_morphism() {
        let q = conj_quandle(&group_from_family(Family::Dihedral, 4).unwrap());
        let inn = q.inner_group().unwrap();
        let g = &inn.group;
        for x in 0..q.size() {
            for y in 0..q.size() {
                assert_eq!(
                    inn.theta[q.op(x, y)],
                    g.conjugate(inn.theta[x], inn.theta[y])
                );
            }
        }
    }

    #[test]
    fn trivial_quandle_orbits_are_singletons() {
        let q = trivial_quandle(4).unwrap();
        assert_eq!(q.orbits().blocks, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn characters() {
        let g = s3();
        let q = conj_quandle(&g);
        let orbits = q.orbits();
        let values: Vec<Complex64> = orbits
            .blocks
            .iter()
            .map(|b| {
                if g.element_order(b[0]) == 2 {
                    Complex64::new(-1.0, 0.0)
                } else {
                    Complex64::new(1.0, 0.0)
                }
            })
            .collect();
        let chi = make_character(&q, values).unwrap();
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(chi.value(t), Complex64::new(-1.0, 0.0));
        let triv = chi.product(&chi.inverse()).unwrap();
        assert!(triv
            .orbit_values()
            .iter()
            .all(|v| *v == Complex64::new(1.0, 0.0)));

        let err = make_character(&q, vec![Complex64::new(0.0, 0.0); 3]).unwrap_err();
        assert!(matches!(err, Error::ZeroCharacterValue { orbit: 0 }));
        assert!(make_character(&q, vec![Complex64::new(1.0, 0.0); 2]).is_err());
    }

    #[test]
    fn subquandle_helper() {
        let g = s3();
        let q = conj_quandle(&g);
        let mut transpositions: Vec<usize> = (0..6).filter(|&x| g.element_order(x) == 2).collect();
        assert!(q.is_subquandle(&transpositions));
        transpositions.pop();
        assert!(!q.is_subquandle(&transpositions));
    }
}
