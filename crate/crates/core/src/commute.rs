//! Commutation, bounded centralizers and the structural analysis of a
//! centralizer.
//!
//! The centralizer of `u` is computed exactly inside the finite-dimensional
//! span of reduced words of length at most `L`, as the nullspace of
//! `v -> uv - vu`. Nothing here claims completeness beyond that bound.
//!
//! [`analyze`] sorts a non-scalar `u` into one of two cases: support in a
//! cyclic subgroup (the centralizer is a Laurent polynomial ring in the
//! primitive root), or otherwise a grading is built under which the bounded
//! centralizer is checked for the degree-function conditions, and a
//! polynomial generator is searched for.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::Element;
use crate::grading::{Degree, Weighting};
use crate::hull::{self, HullError};
use crate::linalg::{self, RowSpace, SparseVec};
use crate::scalar::{self, Scalar};
use crate::subgroup::{self, FoldedGraph};
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommuteError {
    #[error("input is a scalar")]
    ScalarInput,
    #[error("elements {first} and {second} have equal degree but non-proportional leading components")]
    ProportionalityFailure { first: usize, second: usize },
    #[error("non-positive degree where a positive one is required")]
    NonpositiveDegree,
    #[error("element is not in the span of the basis")]
    NotInBasisSpan,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("element mentions generators outside the alphabet")]
    AlphabetTooSmall,
    #[error("weighting has {got} weights, expected {expected}")]
    WeightCount { got: usize, expected: usize },
}

pub fn commutes(u: &Element, v: &Element) -> bool {
    u * v == v * u
}

/// Basis of the centralizer of `center_of` among elements supported on words
/// of length at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerBasis {
    pub center_of: Element,
    pub bound: usize,
    pub rank: usize,
    pub basis: Vec<Element>,
}

impl CentralizerBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Union of the supports of the basis elements.
    pub fn support_words(&self) -> Vec<Word> {
        let mut words: Vec<Word> = self.basis.iter().flat_map(|b| b.support().cloned()).collect();
        words.sort();
        words.dedup();
        words
    }
}

fn check_alphabet(u: &Element, alphabet: Alphabet) -> Result<(), CommuteError> {
    match u.max_generator() {
        Some(g) if g >= alphabet.rank() => Err(CommuteError::AlphabetTooSmall),
        _ => Ok(()),
    }
}

/// Nullspace of `v -> uv - vu` restricted to the span of `columns`.
fn commutant_on(u: &Element, columns: &[Word]) -> Vec<Element> {
    let mut rows: BTreeMap<Word, SparseVec> = BTreeMap::new();
    for (j, w) in columns.iter().enumerate() {
        let image = u.commutator(&Element::word(w.clone()));
        for (word, c) in image.into_terms() {
            rows.entry(word).or_default().insert(j, c);
        }
    }
    linalg::nullspace(rows.into_values(), columns.len())
        .into_iter()
        .map(|v| Element::from_terms(v.into_iter().map(|(j, c)| (columns[j].clone(), c))))
        .collect()
}

/// Exact centralizer basis within words of length `<= max_len`, in reduced
/// echelon form over the shortlex order of words.
pub fn centralizer_basis(
    u: &Element,
    max_len: usize,
    alphabet: Alphabet,
) -> Result<CentralizerBasis, CommuteError> {
    if u.is_scalar() {
        return Err(CommuteError::ScalarInput);
    }
    check_alphabet(u, alphabet)?;
    let columns = alphabet.words_up_to(max_len);
    Ok(CentralizerBasis {
        center_of: u.clone(),
        bound: max_len,
        rank: alphabet.rank(),
        basis: commutant_on(u, &columns),
    })
}

/// Commutant of a homogeneous `u` among homogeneous elements of the same
/// degree supported on words of length `<= max_len`.
pub fn homogeneous_commutant(
    u: &Element,
    h: &Weighting,
    max_len: usize,
    alphabet: Alphabet,
) -> Result<Vec<Element>, CommuteError> {
    if u.is_scalar() {
        return Err(CommuteError::ScalarInput);
    }
    check_alphabet(u, alphabet)?;
    if !h.is_homogeneous(u) {
        return Err(CommuteError::NotHomogeneous);
    }
    let Degree::Finite(d) = h.degree(u) else {
        return Err(CommuteError::ScalarInput);
    };
    let columns: Vec<Word> =
        alphabet.words_up_to(max_len).into_iter().filter(|w| h.word_degree(w) == d).collect();
    Ok(commutant_on(u, &columns))
}

/// `w` lies in the cyclic subgroup generated by `g`.
pub fn in_cyclic_subgroup(w: &Word, g: &Word) -> bool {
    if w.is_identity() {
        return true;
    }
    let root = w.primitive_root().expect("non-identity").0;
    root == *g || root == g.inverse()
}

/// Primitive root generating the largest cyclic subgroup containing the
/// support, if the support is cyclic. Of `g` and `g^-1` the shortlex-smaller
/// one is returned.
pub fn cyclic_support(u: &Element) -> Result<Option<Word>, CommuteError> {
    if u.is_scalar() {
        return Err(CommuteError::ScalarInput);
    }
    let first = u.support().find(|w| !w.is_identity()).expect("non-scalar");
    let root = first.primitive_root().expect("non-identity").0;
    if !u.support().all(|w| in_cyclic_subgroup(w, &root)) {
        return Ok(None);
    }
    let inv = root.inverse();
    Ok(Some(if inv < root { inv } else { root }))
}

/// Folded graph of the subgroup generated by the supports of a bounded
/// centralizer basis.
pub fn supporting_group_of(basis: &CentralizerBasis) -> FoldedGraph {
    subgroup::fold(&basis.support_words())
}

/// Lower approximation of the centralizer-supporting group of `u`.
pub fn supporting_group(
    u: &Element,
    max_len: usize,
    alphabet: Alphabet,
) -> Result<FoldedGraph, CommuteError> {
    Ok(supporting_group_of(&centralizer_basis(u, max_len, alphabet)?))
}

/// `lambda` with `h(second - lambda * first) < h(second)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamifiedPair {
    pub first: usize,
    pub second: usize,
    pub lambda: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeConditionReport {
    pub degrees: Vec<Degree>,
    /// Positive generator of the subgroup of Q generated by the degrees
    /// (zero when all degrees vanish).
    pub generator: Scalar,
    pub is_discrete: bool,
    pub is_nonnegative: bool,
    pub ramified_pairs: Vec<RamifiedPair>,
}

/// Ratio `lambda` with `b = lambda * a` for proportional elements.
fn proportionality(a: &Element, b: &Element) -> Option<Scalar> {
    let (w, ca) = a.terms().next()?;
    let lambda = b.coefficient(w) / ca;
    (a.scale(&lambda) == *b).then_some(lambda)
}

pub fn check_degree_conditions(
    basis: &[Element],
    h: &Weighting,
) -> Result<DegreeConditionReport, CommuteError> {
    let degrees: Vec<Degree> = basis.iter().map(|b| h.degree(b)).collect();
    let finite: Vec<Scalar> = degrees.iter().filter_map(|d| d.finite().cloned()).collect();
    let generator = scalar::subgroup_generator(&finite);
    // every degree must be an integer multiple of the generator
    let is_discrete = generator.is_zero()
        || finite.iter().all(|d| (d / &generator).is_integer());
    let is_nonnegative = finite.iter().all(|d| !d.is_negative());
    let leads: Vec<Option<Element>> = basis.iter().map(|b| h.leading(b).ok()).collect();
    let mut ramified_pairs = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            if degrees[i] != degrees[j] {
                continue;
            }
            let (Some(li), Some(lj)) = (&leads[i], &leads[j]) else {
                continue;
            };
            let lambda = proportionality(li, lj)
                .ok_or(CommuteError::ProportionalityFailure { first: i, second: j })?;
            let drop = &basis[j] - &basis[i].scale(&lambda);
            assert!(h.degree(&drop) < degrees[j], "proportional leading terms must cancel");
            ramified_pairs.push(RamifiedPair { first: i, second: j, lambda });
        }
    }
    Ok(DegreeConditionReport { degrees, generator, is_discrete, is_nonnegative, ramified_pairs })
}

/// Re-spans `basis` by elements of pairwise distinct degrees, cancelling
/// proportional leading components. Sorted by degree.
pub fn degree_reduced(basis: &[Element], h: &Weighting) -> Result<Vec<Element>, CommuteError> {
    let mut by_degree: BTreeMap<Scalar, (usize, Element)> = BTreeMap::new();
    for (idx, b) in basis.iter().enumerate() {
        let mut v = b.clone();
        while let Degree::Finite(d) = h.degree(&v) {
            let Some((other_idx, r)) = by_degree.get(&d) else {
                break;
            };
            let lead_r = h.leading(r).expect("nonzero");
            let lead_v = h.leading(&v).expect("nonzero");
            let lambda = proportionality(&lead_r, &lead_v).ok_or(
                CommuteError::ProportionalityFailure { first: *other_idx, second: idx },
            )?;
            v = &v - &r.scale(&lambda);
        }
        if let Degree::Finite(d) = h.degree(&v) {
            by_degree.insert(d, (idx, v));
        }
    }
    Ok(by_degree.into_values().map(|(_, v)| v).collect())
}

fn word_columns<'a>(
    elements: impl IntoIterator<Item = &'a Element>,
    index: &mut HashMap<Word, usize>,
) -> Vec<SparseVec> {
    elements
        .into_iter()
        .map(|e| {
            e.terms()
                .map(|(w, c)| {
                    let next = index.len();
                    (*index.entry(w.clone()).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect()
}

/// Generators `e_i` of the bounded centralizer as a `Q[x]`-module: one
/// element of least degree in each residue class of degrees modulo `h(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBasis {
    pub modulus: Scalar,
    /// Spacing of the residue classes.
    pub step: Scalar,
    /// Entry `c` covers degrees congruent to `c * step`; `None` when the
    /// class is not realized within the bound.
    pub classes: Vec<Option<Element>>,
}

impl ModuleBasis {
    pub fn elements(&self) -> Vec<Element> {
        self.classes.iter().flatten().cloned().collect()
    }
}

pub fn module_basis(
    basis: &[Element],
    h: &Weighting,
    x: &Element,
) -> Result<ModuleBasis, CommuteError> {
    let n = match h.degree(x) {
        Degree::Finite(d) if d.is_positive() => d,
        _ => return Err(CommuteError::NonpositiveDegree),
    };
    let mut index = HashMap::new();
    let rows = word_columns(basis.iter(), &mut index);
    let target = word_columns([x], &mut index).pop().expect("one row");
    if !RowSpace::from_rows(rows).contains(&target) {
        return Err(CommuteError::NotInBasisSpan);
    }
    let reduced = degree_reduced(basis, h)?;
    let degrees: Vec<Scalar> =
        reduced.iter().map(|e| h.degree(e).finite().cloned().expect("nonzero")).collect();
    if degrees.iter().any(|d| d.is_negative()) {
        return Err(CommuteError::NonpositiveDegree);
    }
    let step = scalar::subgroup_generator(degrees.iter().chain([&n]));
    let count: usize = (&n / &step).to_integer().try_into().expect("small modulus");
    let mut classes: Vec<Option<Element>> = vec![None; count];
    // degrees are sorted ascending, so the first hit per class is minimal
    for (e, d) in reduced.iter().zip(&degrees) {
        let k = (d / &step).to_integer() % num_bigint::BigInt::from(count);
        let c: usize = k.try_into().expect("residue fits");
        if classes[c].is_none() {
            classes[c] = Some(e.clone());
        }
    }
    Ok(ModuleBasis { modulus: n, step, classes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyGenerator {
    /// Every basis element is a polynomial in `t` (within the bound).
    Detected(Element),
    /// No generator found; this is not evidence against one existing.
    Undetermined,
}

/// Searches for `t` of least positive degree with the bounded centralizer
/// inside `span{1, t, t^2, ...}`.
pub fn detect_polynomial_generator(
    basis: &[Element],
    h: &Weighting,
) -> Result<PolyGenerator, CommuteError> {
    let reduced = degree_reduced(basis, h)?;
    let Some(t) = reduced.iter().find(|e| h.degree(e) > Degree::Finite(Scalar::zero())) else {
        return Ok(PolyGenerator::Undetermined);
    };
    // normalize: drop the constant term, make the first leading coefficient 1
    let mut t = t.filter(|w| !w.is_identity());
    let lead = h.leading(&t).expect("positive degree");
    let (_, c) = lead.terms().next().expect("nonzero");
    t = t.scale(&c.recip());

    let top = reduced.iter().filter_map(|e| h.degree(e).finite().cloned()).max().expect("nonempty");
    let dt = h.degree(&t).finite().cloned().expect("nonzero");
    let max_power: u32 = (top / &dt).floor().to_integer().try_into().unwrap_or(0);
    let mut powers = Vec::new();
    let mut p = Element::one();
    for _ in 0..=max_power {
        powers.push(p.clone());
        p = &p * &t;
    }
    let mut index = HashMap::new();
    let span = RowSpace::from_rows(word_columns(powers.iter(), &mut index));
    let targets = word_columns(basis.iter(), &mut index);
    if targets.iter().all(|v| span.contains(v)) {
        Ok(PolyGenerator::Detected(t))
    } else {
        Ok(PolyGenerator::Undetermined)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveReport {
    pub centralizer: CentralizerBasis,
    /// Free basis of the folded supporting group.
    pub supporting_basis: Vec<Word>,
    /// When true, weights, degrees and the generator search refer to
    /// coordinates in `supporting_basis` rather than the ambient alphabet.
    pub rewritten: bool,
    pub weights: Option<Weighting>,
    pub degree_report: Option<DegreeConditionReport>,
    /// Expressed in the ambient alphabet.
    pub poly_generator: PolyGenerator,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureReport {
    Scalar { value: Scalar },
    Laurent { root: Word, centralizer: CentralizerBasis, supported_on_root: bool },
    Curve(Box<CurveReport>),
}

impl StructureReport {
    pub fn case_name(&self) -> &'static str {
        match self {
            StructureReport::Scalar { .. } => "Scalar",
            StructureReport::Laurent { .. } => "LaurentCase",
            StructureReport::Curve(_) => "CurveCase",
        }
    }

    /// JSON report with stable field names.
    pub fn to_json(&self) -> Value {
        let elements = |b: &[Element]| -> Vec<String> { b.iter().map(Element::to_string).collect() };
        match self {
            StructureReport::Scalar { value } => json!({
                "case": "Scalar",
                "value": scalar::format(value),
                "root": null,
                "weights": null,
                "basisDim": null,
                "degrees": null,
                "discrete": null,
                "nonnegative": null,
                "polyGenerator": null,
            }),
            StructureReport::Laurent { root, centralizer, supported_on_root } => json!({
                "case": "LaurentCase",
                "root": root.to_string(),
                "weights": null,
                "maxLen": centralizer.bound,
                "basisDim": centralizer.dim(),
                "basis": elements(&centralizer.basis),
                "supportedOnRoot": supported_on_root,
                "degrees": null,
                "discrete": null,
                "nonnegative": null,
                "polyGenerator": null,
            }),
            StructureReport::Curve(c) => {
                let deg = c.degree_report.as_ref();
                json!({
                    "case": "CurveCase",
                    "root": null,
                    "weights": c.weights.as_ref().map(|h| h.weights().iter().map(scalar::format).collect::<Vec<_>>()),
                    "weightsOn": if c.rewritten { "supportingBasis" } else { "alphabet" },
                    "supportingBasis": c.supporting_basis.iter().map(Word::to_string).collect::<Vec<_>>(),
                    "maxLen": c.centralizer.bound,
                    "basisDim": c.centralizer.dim(),
                    "basis": elements(&c.centralizer.basis),
                    "degrees": deg.map(|r| r.degrees.iter().map(Degree::to_string).collect::<Vec<_>>()),
                    "discrete": deg.map(|r| r.is_discrete),
                    "nonnegative": deg.map(|r| r.is_nonnegative),
                    "witnesses": deg.map(|r| r.ramified_pairs.iter().map(|p| json!({
                        "first": p.first, "second": p.second, "lambda": scalar::format(&p.lambda)
                    })).collect::<Vec<_>>()),
                    "polyGenerator": match &c.poly_generator {
                        PolyGenerator::Detected(t) => Value::String(t.to_string()),
                        PolyGenerator::Undetermined => Value::String("undetermined".into()),
                    },
                    "diagnostics": c.diagnostics,
                })
            }
        }
    }
}

/// Structural analysis of the centralizer of `u` within the length bound.
///
/// `weights`, when given, replaces the constructed grading; it refers to
/// the supporting-group coordinates whenever the analysis rewrites into them.
pub fn analyze(
    u: &Element,
    max_len: usize,
    alphabet: Alphabet,
    weights: Option<&Weighting>,
) -> Result<StructureReport, CommuteError> {
    if u.is_scalar() {
        return Ok(StructureReport::Scalar { value: u.as_scalar().expect("scalar") });
    }
    check_alphabet(u, alphabet)?;
    let centralizer = centralizer_basis(u, max_len, alphabet)?;
    if let Some(root) = cyclic_support(u)? {
        let supported_on_root = centralizer
            .basis
            .iter()
            .all(|b| b.support().all(|w| in_cyclic_subgroup(w, &root)));
        return Ok(StructureReport::Laurent { root, centralizer, supported_on_root });
    }

    let group = supporting_group_of(&centralizer);
    let mut diagnostics = Vec::new();
    let span_rank = hull::support_span_rank(u, alphabet.rank());
    let rewritten = span_rank < 2;
    let (work_u, work_basis, work_rank) = if rewritten {
        let rewritten_u = group.rewrite_element(u);
        let rewritten_basis: Result<Vec<Element>, _> =
            centralizer.basis.iter().map(|b| group.rewrite_element(b)).collect();
        match (rewritten_u, rewritten_basis) {
            (Ok(ru), Ok(rb)) => (ru, rb, group.rank()),
            _ => {
                diagnostics.push(format!(
                    "element is not supported on the folded supporting group at max length {max_len}"
                ));
                return Ok(curve(centralizer, &group, rewritten, None, None, PolyGenerator::Undetermined, diagnostics));
            }
        }
    } else {
        (u.clone(), centralizer.basis.clone(), alphabet.rank())
    };

    let h = match weights {
        Some(h) if h.rank() != work_rank => {
            return Err(CommuteError::WeightCount { got: h.rank(), expected: work_rank })
        }
        Some(h) => h.clone(),
        None => match hull::construct_weighting(&work_u, work_rank) {
            Ok(h) => h,
            Err(HullError::RankDeficient(r)) => {
                diagnostics.push(format!(
                    "support spans rank {r} < 2 in the supporting group; raise the length bound"
                ));
                return Ok(curve(centralizer, &group, rewritten, None, None, PolyGenerator::Undetermined, diagnostics));
            }
            Err(e) => {
                diagnostics.push(e.to_string());
                return Ok(curve(centralizer, &group, rewritten, None, None, PolyGenerator::Undetermined, diagnostics));
            }
        },
    };
    let report = check_degree_conditions(&work_basis, &h)?;
    let poly = match detect_polynomial_generator(&work_basis, &h)? {
        PolyGenerator::Detected(t) if rewritten => PolyGenerator::Detected(group.expand_element(&t)),
        other => other,
    };
    Ok(curve(centralizer, &group, rewritten, Some(h), Some(report), poly, diagnostics))
}

fn curve(
    centralizer: CentralizerBasis,
    group: &FoldedGraph,
    rewritten: bool,
    weights: Option<Weighting>,
    degree_report: Option<DegreeConditionReport>,
    poly_generator: PolyGenerator,
    diagnostics: Vec<String>,
) -> StructureReport {
    StructureReport::Curve(Box::new(CurveReport {
        centralizer,
        supporting_basis: group.basis().to_vec(),
        rewritten,
        weights,
        degree_report,
        poly_generator,
        diagnostics,
    }))
}

/// Integer constant as an element.
pub fn scalar_element(c: i64) -> Element {
    Element::scalar(Scalar::from_integer(c.into()))
}

impl From<Scalar> for Degree {
    fn from(s: Scalar) -> Self {
        Degree::Finite(s)
    }
}
