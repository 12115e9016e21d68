//! JSON file formats for groups, quandles, characters, representations,
//! cocycles and reports.
//!
//! Complex numbers are `[re, im]` pairs. Matrices are row-major lists of
//! rows. Maps keyed by element index use decimal string keys.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cohomology::CocycleZn;
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::group::FiniteGroup;
use crate::linrep::{ComplexMatrix, GroupLinearRep};
use crate::quandle::{
    conj_quandle, make_character, validate_quandle, FiniteQuandle, QuandleCharacter,
};
use crate::quandle_rep::{
    validate_rep, ClassificationMode, ClassificationReport, QuandleRep, TableRow,
};
use crate::tolerance::Tolerances;

pub type ComplexJson = [f64; 2];
pub type MatrixJson = Vec<Vec<ComplexJson>>;

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

pub fn complex_to_json(z: Complex64) -> ComplexJson {
    // avoid printing negative zero
    [z.re + 0.0, z.im + 0.0]
}

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| complex_to_json(m[(i, j)])).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<ComplexMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Shape(
            "matrix rows must be non-empty and of equal length".into(),
        ));
    }
    Ok(ComplexMatrix::from_fn(r, c, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

fn index_key(k: &str) -> Result<usize> {
    k.parse()
        .map_err(|_| Error::Parse(format!("matrix key `{k}` is not an element index")))
}

/// `{"order", "mul", "identity", "generators", "labels"?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
    pub generators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self {
            order: g.order(),
            mul: g.table(),
            identity: g.identity(),
            generators: g.generators().to_vec(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        if self.mul.len() != self.order {
            return Err(Error::Shape(format!("`mul` must have {} rows", self.order)));
        }
        FiniteGroup::from_table(
            self.mul.clone(),
            self.identity,
            self.generators.clone(),
            self.labels.clone(),
        )
    }
}

/// A group given by a family spec string or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Family(String),
    Inline(GroupJson),
}

impl GroupRef {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Family(s) => s.parse::<FamilySpec>()?.build(),
            GroupRef::Inline(g) => g.build(),
        }
    }
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup> {
    parse::<GroupJson>(text)?.build()
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    to_pretty(&GroupJson::from_group(g))
}

/// `{"size", "table"}` with `table[x][y] = x ▷ y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleJson {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl QuandleJson {
    pub fn from_quandle(q: &FiniteQuandle) -> Self {
        Self {
            size: q.size(),
            table: q.table(),
        }
    }

    pub fn build(&self) -> Result<FiniteQuandle> {
        validate_quandle(self.size, &self.table)
    }
}

/// A quandle given inline or as `Conj(G)` of a family spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuandleRef {
    ConjFamily(String),
    Inline(QuandleJson),
}

impl QuandleRef {
    pub fn build(&self) -> Result<FiniteQuandle> {
        match self {
            QuandleRef::ConjFamily(s) => Ok(conj_quandle(&s.parse::<FamilySpec>()?.build()?)),
            QuandleRef::Inline(q) => q.build(),
        }
    }
}

/// Parses the table without checking the axioms, so that callers can
/// report validation failures separately from malformed input.
pub fn parse_quandle_json(text: &str) -> Result<QuandleJson> {
    parse(text)
}

pub fn quandle_from_json(text: &str) -> Result<FiniteQuandle> {
    parse_quandle_json(text)?.build()
}

pub fn quandle_to_json(q: &FiniteQuandle) -> String {
    to_pretty(&QuandleJson::from_quandle(q))
}

/// `{"orbit_values": [[re, im], ...]}` in orbit order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub orbit_values: Vec<ComplexJson>,
}

pub fn character_to_json(chi: &QuandleCharacter) -> String {
    to_pretty(&CharacterJson {
        orbit_values: chi
            .orbit_values()
            .iter()
            .map(|&z| complex_to_json(z))
            .collect(),
    })
}

pub fn character_from_json(q: &FiniteQuandle, text: &str) -> Result<QuandleCharacter> {
    let c: CharacterJson = parse(text)?;
    make_character(
        q,
        c.orbit_values
            .iter()
            .map(|v| Complex64::new(v[0], v[1]))
            .collect(),
    )
}

/// `{"group", "dim", "matrices": {index: matrix}}`; generators suffice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub group: GroupRef,
    pub dim: usize,
    pub matrices: BTreeMap<String, MatrixJson>,
}

fn matrices_by_index(
    dim: usize,
    raw: &BTreeMap<String, MatrixJson>,
) -> Result<BTreeMap<usize, ComplexMatrix>> {
    let mut out = BTreeMap::new();
    for (k, m) in raw {
        let m = matrix_from_json(m)?;
        if m.shape() != (dim, dim) {
            return Err(Error::Shape(format!("matrix `{k}` is not {dim}x{dim}")));
        }
        out.insert(index_key(k)?, m);
    }
    Ok(out)
}

impl RepresentationJson {
    pub fn from_rep(rep: &GroupLinearRep, group: GroupRef) -> Self {
        Self {
            group,
            dim: rep.dim(),
            matrices: rep
                .matrices()
                .iter()
                .enumerate()
                .map(|(g, m)| (g.to_string(), matrix_to_json(m)))
                .collect(),
        }
    }

    pub fn build(&self, tol: &Tolerances) -> Result<GroupLinearRep> {
        let group = self.group.build()?;
        let mats = matrices_by_index(self.dim, &self.matrices)?;
        if mats.len() == group.order() && mats.keys().copied().eq(0..group.order()) {
            GroupLinearRep::new(group, mats.into_values().collect(), tol)
        } else {
            GroupLinearRep::from_generators(group, &mats, tol)
        }
    }
}

pub fn representation_from_json(text: &str, tol: &Tolerances) -> Result<GroupLinearRep> {
    parse::<RepresentationJson>(text)?.build(tol)
}

/// `{"quandle", "dim", "matrices": {element: matrix}}`; matrices on a
/// generating set of the quandle suffice, the rest follow from
/// `ρ(x ▷ y) = ρ(x) ρ(y) ρ(x)⁻¹`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuandleRepJson {
    pub quandle: QuandleRef,
    pub dim: usize,
    pub matrices: BTreeMap<String, MatrixJson>,
}

impl QuandleRepJson {
    pub fn from_rep(rep: &QuandleRep, quandle: QuandleRef) -> Self {
        Self {
            quandle,
            dim: rep.dim(),
            matrices: rep
                .matrices()
                .iter()
                .enumerate()
                .map(|(x, m)| (x.to_string(), matrix_to_json(m)))
                .collect(),
        }
    }

    pub fn build(&self, tol: &Tolerances) -> Result<QuandleRep> {
        let q = self.quandle.build()?;
        let given = matrices_by_index(self.dim, &self.matrices)?;
        if let Some(&x) = given.keys().find(|&&x| x >= q.size()) {
            return Err(Error::Shape(format!("element {x} is outside the quandle")));
        }
        let mut mats: Vec<Option<ComplexMatrix>> = vec![None; q.size()];
        for (x, m) in given {
            mats[x] = Some(m);
        }
        complete_by_conjugation(&q, &mut mats)?;
        let mats = mats
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::Shape("the given matrices do not generate the whole quandle".into())
            })?;
        validate_rep(&q, mats, tol)
    }
}

fn complete_by_conjugation(q: &FiniteQuandle, mats: &mut [Option<ComplexMatrix>]) -> Result<()> {
    // a finite subset closed under ▷ is a subquandle, so this reaches everything generated
    loop {
        let mut changed = false;
        for x in 0..q.size() {
            let Some(mx) = mats[x].clone() else { continue };
            let inv = mx.clone().try_inverse().ok_or(Error::SingularMatrix(x))?;
            for y in 0..q.size() {
                let z = q.op(x, y);
                if mats[z].is_none() {
                    if let Some(my) = &mats[y] {
                        mats[z] = Some(&mx * my * &inv);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

pub fn quandle_rep_from_json(text: &str, tol: &Tolerances) -> Result<QuandleRep> {
    parse::<QuandleRepJson>(text)?.build(tol)
}

/// `{"group", "modulus", "values"}` with exponents of `exp(2πi/modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub group: GroupRef,
    pub modulus: i64,
    pub values: Vec<Vec<i64>>,
}

impl CocycleJson {
    pub fn build(&self) -> Result<CocycleZn> {
        CocycleZn::new(self.group.build()?, self.modulus, self.values.clone())
    }
}

pub fn cocycle_from_json(text: &str) -> Result<CocycleZn> {
    parse::<CocycleJson>(text)?.build()
}

pub fn cocycle_to_json(a: &CocycleZn, group: GroupRef) -> String {
    to_pretty(&CocycleJson {
        group,
        modulus: a.modulus(),
        values: a.values(),
    })
}

/// One base representation inside a classification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseRepJson {
    pub dim: usize,
    pub unitary: bool,
    pub matrices: BTreeMap<String, MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReportJson {
    pub seed: u64,
    pub mode: String,
    pub quandle: QuandleJson,
    pub inn_order: usize,
    #[serde(rename = "h2_inn_Cx")]
    pub h2_inn_cx: Vec<i64>,
    pub base_reps: Vec<BaseRepJson>,
    pub character_rank: usize,
    pub base_classes: Vec<Vec<i64>>,
    pub realized_classes: Vec<Vec<i64>>,
    pub m_q_order: i64,
    pub m_q_invariant_factors: Vec<i64>,
    pub m_q_is_lower_bound: bool,
    pub completeness_theorem: Option<String>,
    pub assumptions: Vec<String>,
}

pub fn mode_name(mode: ClassificationMode) -> String {
    serde_json::to_value(mode)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

impl ClassificationReportJson {
    pub fn from_report(r: &ClassificationReport) -> Self {
        Self {
            seed: r.seed,
            mode: mode_name(r.mode),
            quandle: QuandleJson::from_quandle(&r.quandle),
            inn_order: r.inn_order,
            h2_inn_cx: r.h2_inn.clone(),
            base_reps: r
                .base_reps
                .iter()
                .map(|b| BaseRepJson {
                    dim: b.dim(),
                    unitary: b.is_unitary(),
                    matrices: b
                        .matrices()
                        .iter()
                        .enumerate()
                        .map(|(x, m)| (x.to_string(), matrix_to_json(m)))
                        .collect(),
                })
                .collect(),
            character_rank: r.character_rank,
            base_classes: r.base_classes.clone(),
            realized_classes: r.realized_classes.clone(),
            m_q_order: r.m_q_order,
            m_q_invariant_factors: r.m_q_invariant_factors.clone(),
            m_q_is_lower_bound: r.m_q_is_lower_bound,
            completeness_theorem: r.completeness_theorem.clone(),
            assumptions: r.assumptions.clone(),
        }
    }
}

pub fn report_to_json(r: &ClassificationReport) -> String {
    to_pretty(&ClassificationReportJson::from_report(r))
}

pub fn report_from_json(text: &str) -> Result<ClassificationReportJson> {
    parse(text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowJson {
    pub quandle: String,
    pub family: String,
    pub n: usize,
    pub inn: String,
    pub inn_order: usize,
    #[serde(rename = "H2")]
    pub h2: Vec<i64>,
    #[serde(rename = "M_Q")]
    pub m_q: Vec<i64>,
    pub tor_center: Vec<i64>,
    pub mode: String,
}

impl TableRowJson {
    pub fn from_row(r: &TableRow) -> Self {
        Self {
            quandle: r.quandle.clone(),
            family: r.family.clone(),
            n: r.n,
            inn: r.inn.clone(),
            inn_order: r.inn_order,
            h2: r.h2.clone(),
            m_q: r.m_q.clone(),
            tor_center: r.tor_center.clone(),
            mode: mode_name(r.mode),
        }
    }
}
