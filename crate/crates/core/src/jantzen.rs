//! The algebraic Jantzen filtration, obtained from the `s`-adic valuation of
//! `can`, and its comparison with the geometric filtration on `ker S`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dmodules::{
    can, op_matrix, weight_space_basis, DModError, Element, MapKind, ModuleFamily, Monomial,
    OpName, WeightWindow,
};
use crate::filtration::{jantzen_on_kernel, FiltrationError};
use crate::linalg::{image, kernel, LinalgError, QMatrix, Subspace};

pub const DEFAULT_ORDER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JantzenError {
    #[error("order {n} does not resolve the filtration at slice {slice}, weight {weight}")]
    DepthUnresolved { slice: i64, weight: i64, n: usize },
    #[error("truncation order {0} is too small, need at least 2")]
    OrderTooSmall(usize),
    #[error("slice {0} must be nonnegative")]
    NegativeSlice(i64),
    #[error("empty weight window [{0}, {1}]")]
    EmptyWindow(i64, i64),
    #[error(transparent)]
    DModule(#[from] DModError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
}

fn check_args(n: usize, window: WeightWindow) -> Result<(), JantzenError> {
    if n < 2 {
        return Err(JantzenError::OrderTooSmall(n));
    }
    if window.is_empty() {
        return Err(JantzenError::EmptyWindow(window.wmin, window.wmax));
    }
    Ok(())
}

/// `M^i` on one weight space of the `Shriek` slice, `layers[i] = M^i`; the
/// last layer is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicWeight {
    pub weight: i64,
    pub basis: Vec<Monomial>,
    pub layers: Vec<Subspace>,
}

impl AlgebraicWeight {
    pub fn get(&self, i: usize) -> Subspace {
        self.layers
            .get(i)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.basis.len()))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.layers.iter().map(Subspace::dim).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicJantzen {
    pub slice: i64,
    pub n: usize,
    pub window: WeightWindow,
    pub weights: Vec<AlgebraicWeight>,
}

/// `M^i = red{v : can(v) ∈ s^i DefPlus(n)}` on the `(slice, weight)` space.
///
/// Solved as `ker(P_{<i} ∘ can)` on the `DefShriek(n)` weight space, where
/// `P_{<i}` keeps the coordinates of `s`-degree below `i`, followed by the
/// projection onto `s`-degree 0.
pub fn algebraic_weight(
    slice: i64,
    n: usize,
    weight: i64,
) -> Result<AlgebraicWeight, JantzenError> {
    let om = op_matrix(MapKind::Can, ModuleFamily::DefShriek(n), slice, weight)?;
    let basis = weight_space_basis(ModuleFamily::Shriek, slice, weight);
    let red: Vec<usize> = om
        .source
        .iter()
        .enumerate()
        .filter(|(_, m)| m.m == 0)
        .map(|(j, _)| j)
        .collect();
    let mut reduce = QMatrix::zeros(red.len(), om.source.len());
    for (row, &j) in red.iter().enumerate() {
        reduce.set(row, j, num_traits::One::one());
    }
    let mut layers = Vec::new();
    for i in 0..n {
        let low: Vec<usize> = om
            .target
            .iter()
            .enumerate()
            .filter(|(_, m)| (m.m as usize) < i)
            .map(|(r, _)| r)
            .collect();
        let mut proj = QMatrix::zeros(low.len(), om.target.len());
        for (row, &r) in low.iter().enumerate() {
            proj.set(row, r, num_traits::One::one());
        }
        let layer = kernel(&proj.mul(&om.matrix)?).apply(&reduce)?;
        let done = layer.is_zero();
        layers.push(layer);
        if done {
            return Ok(AlgebraicWeight {
                weight,
                basis,
                layers,
            });
        }
    }
    Err(JantzenError::DepthUnresolved { slice, weight, n })
}

pub fn algebraic_jantzen(
    slice: i64,
    n: usize,
    window: WeightWindow,
) -> Result<AlgebraicJantzen, JantzenError> {
    check_args(n, window)?;
    let weights = window
        .weights(slice)
        .into_iter()
        .map(|w| algebraic_weight(slice, n, w))
        .collect::<Result<_, _>>()?;
    Ok(AlgebraicJantzen {
        slice,
        n,
        window,
        weights,
    })
}

/// Smallest `s`-degree in `can(x1^0 d2^-slice)` (or `can(x2^slice)`), the
/// highest-weight monomial of the slice.
pub fn normalization_shift(slice: i64, n: usize) -> Result<usize, JantzenError> {
    if n < 2 {
        return Err(JantzenError::OrderTooSmall(n));
    }
    let l = i32::try_from(slice).map_err(|_| DModError::BadMonomial(slice.to_string()))?;
    let top = Element::monomial(ModuleFamily::DefShriek(n), Monomial::new(0, l, 0))?;
    let img = can(&top)?;
    img.terms()
        .map(|(m, _)| m.m as usize)
        .min()
        .ok_or(JantzenError::DepthUnresolved {
            slice,
            weight: slice,
            n,
        })
}

/// Largest `j` with `J^j ≠ 0` for `S` on the top `MaxExt` weight space.
pub fn geometric_shift(slice: i64) -> Result<usize, JantzenError> {
    let s = op_matrix(MapKind::Op(OpName::S), ModuleFamily::MaxExt, slice, slice)?;
    let j = jantzen_on_kernel(&s.matrix)?;
    Ok(j.chain.iter().rposition(|sub| !sub.is_zero()).unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub weight: i64,
    /// Dimensions of the normalized algebraic layers `M^{i+shift}`.
    pub layers: Vec<usize>,
    /// Dimensions of the normalized geometric layers `J^{j+geometric_shift}`.
    pub geometric_layers: Vec<usize>,
    /// `canbar(M^i) = J^i` for every `i` without any shift.
    pub raw_equal: bool,
    /// `canbar(M^{i+shift}) = J^{i+geometric_shift}` for every `i`.
    pub normalized_equal: bool,
    /// `im canbar = ker S`.
    pub canbar_image_is_kernel: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub slice: i64,
    pub n: usize,
    pub window: WeightWindow,
    /// Valuation of `can` on the highest-weight monomial.
    pub shift: usize,
    /// Depth of the geometric filtration on the top weight space.
    pub geometric_shift: usize,
    pub weights: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn aligned(&self) -> bool {
        self.shift == self.geometric_shift && self.weights.iter().all(|w| w.verdict == "aligned")
    }
}

fn dims_from(layers: &[Subspace], start: usize) -> Vec<usize> {
    let mut out: Vec<usize> = layers.iter().skip(start).map(Subspace::dim).collect();
    if out.last() != Some(&0) {
        out.push(0);
    }
    out
}

/// Transports the algebraic layers through `canbar` and compares them with
/// `ker S ∩ im S^j` on each `MaxExt` weight space.
pub fn compare_filtrations(
    slice: i64,
    n: usize,
    window: WeightWindow,
) -> Result<ComparisonReport, JantzenError> {
    let alg = algebraic_jantzen(slice, n, window)?;
    let shift = normalization_shift(slice, n)?;
    let geometric_shift = geometric_shift(slice)?;
    let mut weights = Vec::new();
    for aw in &alg.weights {
        let w = aw.weight;
        let cb = op_matrix(MapKind::Canbar, ModuleFamily::Shriek, slice, w)?;
        let s = op_matrix(MapKind::Op(OpName::S), ModuleFamily::MaxExt, slice, w)?;
        let geo = jantzen_on_kernel(&s.matrix)?;
        let transported: Vec<Subspace> = aw
            .layers
            .iter()
            .map(|l| l.apply(&cb.matrix))
            .collect::<Result<_, _>>()?;
        let depth = transported.len().max(geo.chain.len()) + shift.max(geometric_shift);
        let t = |i: usize| {
            transported
                .get(i)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(cb.matrix.rows()))
        };
        let raw_equal = (0..depth).all(|i| t(i) == geo.get(i));
        let normalized_equal = (0..depth).all(|i| t(i + shift) == geo.get(i + geometric_shift));
        let canbar_image_is_kernel = image(&cb.matrix) == kernel(&s.matrix);
        let ok = normalized_equal && canbar_image_is_kernel && shift == geometric_shift;
        weights.push(ComparisonRow {
            weight: w,
            layers: dims_from(&aw.layers, shift),
            geometric_layers: dims_from(&geo.chain, geometric_shift),
            raw_equal,
            normalized_equal,
            canbar_image_is_kernel,
            verdict: if ok { "aligned" } else { "mismatch" }.to_string(),
        });
    }
    Ok(ComparisonReport {
        slice,
        n,
        window,
        shift,
        geometric_shift,
        weights,
    })
}

fn verma_dim(top: i64, w: i64) -> usize {
    usize::from(w <= top && (top - w) % 2 == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumFormulaRow {
    pub weight: i64,
    /// `Σ_{i≥1} dim M^i`.
    pub sum: usize,
    /// Weight multiplicity of the Verma module of highest weight `-slice-2`.
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumFormulaReport {
    pub slice: i64,
    pub n: usize,
    pub rows: Vec<SumFormulaRow>,
}

impl SumFormulaReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.sum == r.expected)
    }
}

pub fn sum_formula_check(
    slice: i64,
    n: usize,
    window: WeightWindow,
) -> Result<SumFormulaReport, JantzenError> {
    if slice < 0 {
        return Err(JantzenError::NegativeSlice(slice));
    }
    let alg = algebraic_jantzen(slice, n, window)?;
    let rows = alg
        .weights
        .iter()
        .map(|aw| SumFormulaRow {
            weight: aw.weight,
            sum: aw.layers.iter().skip(1).map(Subspace::dim).sum(),
            expected: verma_dim(-slice - 2, aw.weight),
        })
        .collect();
    Ok(SumFormulaReport { slice, n, rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionRow {
    pub weight: i64,
    pub gr0: usize,
    pub gr1: usize,
    /// `Σ_{i≥2} dim gr^i`.
    pub higher: usize,
    /// Weight multiplicity of the simple module `L(slice)`.
    pub expected_simple: usize,
    /// Weight multiplicity of the Verma module `M(-slice-2)`.
    pub expected_verma: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub slice: i64,
    pub n: usize,
    pub rows: Vec<CompositionRow>,
    /// `Le` kills the top vector of `gr^0` modulo `M^1`.
    pub gr0_highest_weight: bool,
    /// `Le` kills the top vector of `gr^1` (weight `-slice-2`) modulo `M^2`.
    pub gr1_highest_weight: bool,
}

impl CompositionReport {
    pub fn passed(&self) -> bool {
        self.gr0_highest_weight
            && self.gr1_highest_weight
            && self
                .rows
                .iter()
                .all(|r| r.gr0 == r.expected_simple && r.gr1 == r.expected_verma && r.higher == 0)
    }
}

/// Whether `Le` maps layer `i` at weight `w` into layer `i + 1` at `w + 2`,
/// i.e. `gr^i` has a highest-weight vector at `w`.
fn le_kills_mod_next(slice: i64, n: usize, w: i64, i: usize) -> Result<bool, JantzenError> {
    let here = algebraic_weight(slice, n, w)?;
    let above = algebraic_weight(slice, n, w + 2)?;
    let le = op_matrix(MapKind::Op(OpName::Le), ModuleFamily::Shriek, slice, w)?;
    let layer = here.get(i);
    if layer.is_zero() {
        return Ok(false);
    }
    Ok(above
        .get(i + 1)
        .contains_subspace(&layer.apply(&le.matrix)?)?)
}

/// Checks that `gr^0 = L(slice)` and `gr^1 = M(-slice-2)` weight by weight.
pub fn composition_series_check(
    slice: i64,
    window: WeightWindow,
) -> Result<CompositionReport, JantzenError> {
    composition_series_check_with(slice, DEFAULT_ORDER, window)
}

pub fn composition_series_check_with(
    slice: i64,
    n: usize,
    window: WeightWindow,
) -> Result<CompositionReport, JantzenError> {
    if slice < 0 {
        return Err(JantzenError::NegativeSlice(slice));
    }
    let alg = algebraic_jantzen(slice, n, window)?;
    let rows = alg
        .weights
        .iter()
        .map(|aw| {
            let gr = |i: usize| aw.get(i).dim() - aw.get(i + 1).dim();
            CompositionRow {
                weight: aw.weight,
                gr0: gr(0),
                gr1: gr(1),
                higher: aw.get(2).dim(),
                expected_simple: usize::from(
                    verma_dim(slice, aw.weight) == 1 && aw.weight >= -slice,
                ),
                expected_verma: verma_dim(-slice - 2, aw.weight),
            }
        })
        .collect();
    Ok(CompositionReport {
        slice,
        n,
        rows,
        gr0_highest_weight: le_kills_mod_next(slice, n, slice, 0)?,
        gr1_highest_weight: le_kills_mod_next(slice, n, -slice - 2, 1)?,
    })
}
