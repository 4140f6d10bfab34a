//! Monodromy filtrations of nilpotent endomorphisms and the geometric
//! Jantzen filtrations they induce on the kernel and cokernel.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dmodules::{
    op_matrix, weight_space_basis, DModError, MapKind, ModuleFamily, Monomial, OpName, WeightWindow,
};
use crate::linalg::{image, kernel, LinalgError, QMatrix, Subspace};
use crate::scalar::fmt_rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    DModule(#[from] DModError),
}

/// Smallest `e ≥ 1` with `M^e = 0`.
pub fn nilpotency_index(m: &QMatrix) -> Result<u32, FiltrationError> {
    if m.rows() != m.cols() {
        return Err(FiltrationError::NotSquare(m.rows(), m.cols()));
    }
    let mut p = m.clone();
    for e in 1..=m.rows().max(1) as u32 {
        if p.is_zero() {
            return Ok(e);
        }
        p = p.mul(m)?;
    }
    Err(FiltrationError::NotNilpotent)
}

/// An increasing filtration `μ^r` of `Q^ambient`, stored on `r_min..=r_max`;
/// it is zero below and everything above that range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyFiltration {
    ambient: usize,
    r_min: i64,
    chain: Vec<Subspace>,
}

impl MonodromyFiltration {
    pub fn new(ambient: usize, r_min: i64, chain: Vec<Subspace>) -> Self {
        MonodromyFiltration {
            ambient,
            r_min,
            chain,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn r_min(&self) -> i64 {
        self.r_min
    }

    pub fn r_max(&self) -> i64 {
        self.r_min + self.chain.len() as i64 - 1
    }

    pub fn get(&self, r: i64) -> Subspace {
        if r < self.r_min {
            Subspace::zero(self.ambient)
        } else if r > self.r_max() {
            Subspace::full(self.ambient)
        } else {
            self.chain[(r - self.r_min) as usize].clone()
        }
    }

    /// `dim μ^r - dim μ^{r-1}`.
    pub fn gr_dim(&self, r: i64) -> usize {
        self.get(r).dim() - self.get(r - 1).dim()
    }

    /// Nonzero graded pieces.
    pub fn gr_dims(&self) -> BTreeMap<i64, usize> {
        (self.r_min..=self.r_max())
            .map(|r| (r, self.gr_dim(r)))
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    /// The same chain reindexed so that the new `μ^r` is the old `μ^{r+by}`.
    pub fn shifted(&self, by: i64) -> Self {
        MonodromyFiltration {
            ambient: self.ambient,
            r_min: self.r_min - by,
            chain: self.chain.clone(),
        }
    }

    pub fn is_increasing(&self) -> bool {
        self.chain
            .windows(2)
            .all(|w| w[1].contains_subspace(&w[0]).unwrap_or(false))
    }
}

/// `μ^r = Σ_{p-q=r} ker M^{p+1} ∩ im M^q`.
pub fn monodromy(m: &QMatrix) -> Result<MonodromyFiltration, FiltrationError> {
    let n = nilpotency_index(m)? as i64;
    let d = m.rows();
    let powers: Vec<QMatrix> = (0..=n).map(|e| m.pow(e as u32)).collect::<Result<_, _>>()?;
    let kernels: Vec<Subspace> = powers.iter().map(kernel).collect();
    let images: Vec<Subspace> = powers.iter().map(image).collect();
    let ker = |e: i64| kernels[e.min(n) as usize].clone();
    let im = |e: i64| images[e.min(n) as usize].clone();
    let r_min = 1 - n;
    let chain = (r_min..n)
        .map(|r| {
            let mut acc = Subspace::zero(d);
            for p in r.max(0)..n {
                let q = p - r;
                acc = acc.sum(&ker(p + 1).intersect(&im(q))?)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    Ok(MonodromyFiltration {
        ambient: d,
        r_min,
        chain,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyCheck {
    pub increasing: bool,
    pub exhaustive: bool,
    /// `M μ^r ⊆ μ^{r-2}` for every `r`.
    pub lowers_by_two: bool,
    /// `M^k : gr^k → gr^{-k}` is bijective for every `k ≥ 0`.
    pub hard_lefschetz: bool,
    pub gr_dims: BTreeMap<i64, usize>,
    pub failures: Vec<String>,
}

impl MonodromyCheck {
    pub fn passed(&self) -> bool {
        self.increasing && self.exhaustive && self.lowers_by_two && self.hard_lefschetz
    }
}

/// Checks the two defining properties of a monodromy filtration for `m`.
pub fn verify_monodromy(
    m: &QMatrix,
    f: &MonodromyFiltration,
) -> Result<MonodromyCheck, FiltrationError> {
    let mut failures = Vec::new();
    let increasing = f.is_increasing();
    if !increasing {
        failures.push("chain is not increasing".to_string());
    }
    let exhaustive = f.get(f.r_min() - 1).is_zero() && f.get(f.r_max()).dim() == f.ambient_dim();
    if !exhaustive {
        failures.push("chain is not exhaustive".to_string());
    }
    let (lo, hi) = (f.r_min() - 1, f.r_max() + 2);
    let mut lowers_by_two = true;
    for r in lo..=hi {
        if !f.get(r - 2).contains_subspace(&f.get(r).apply(m)?)? {
            lowers_by_two = false;
            failures.push(format!("M μ^{r} is not contained in μ^{}", r - 2));
        }
    }
    let mut hard_lefschetz = true;
    for k in 0..=hi.max(-lo) {
        let mk = m.pow(k as u32)?;
        let below = f.get(-k - 1);
        let rank = f.get(k).apply(&mk)?.sum(&below)?.dim() - below.dim();
        if rank != f.gr_dim(k) || rank != f.gr_dim(-k) {
            hard_lefschetz = false;
            failures.push(format!(
                "M^{k}: gr^{k} (dim {}) -> gr^{} (dim {}) has rank {rank}",
                f.gr_dim(k),
                -k,
                f.gr_dim(-k)
            ));
        }
    }
    Ok(MonodromyCheck {
        increasing,
        exhaustive,
        lowers_by_two,
        hard_lefschetz,
        gr_dims: f.gr_dims(),
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JantzenSide {
    OnKernel,
    OnCokernel,
}

/// Geometric Jantzen filtration, `chain[j] = J^j`.
///
/// On the kernel side `J^j = ker M ∩ im M^j`, decreasing and ending in 0. On
/// the cokernel side `J^j = (ker M^{j+1} + im M) / im M`, increasing and
/// ending in the whole cokernel; each quotient is represented by the
/// canonical representatives modulo `im M` (vectors vanishing on the pivot
/// columns of `im M`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JantzenFiltration {
    pub side: JantzenSide,
    pub ambient: usize,
    pub chain: Vec<Subspace>,
}

impl JantzenFiltration {
    pub fn get(&self, j: usize) -> Subspace {
        match self.chain.get(j) {
            Some(s) => s.clone(),
            None => match self.side {
                JantzenSide::OnKernel => Subspace::zero(self.ambient),
                JantzenSide::OnCokernel => self
                    .chain
                    .last()
                    .cloned()
                    .unwrap_or_else(|| Subspace::zero(self.ambient)),
            },
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }
}

pub fn jantzen_on_kernel(m: &QMatrix) -> Result<JantzenFiltration, FiltrationError> {
    let n = nilpotency_index(m)?;
    let ker = kernel(m);
    let chain = (0..=n)
        .map(|j| Ok(ker.intersect(&image(&m.pow(j)?))?))
        .collect::<Result<Vec<_>, FiltrationError>>()?;
    Ok(JantzenFiltration {
        side: JantzenSide::OnKernel,
        ambient: m.rows(),
        chain,
    })
}

/// Span of the canonical representatives of `u` modulo `quot`.
fn reduce_subspace(u: &Subspace, quot: &Subspace) -> Result<Subspace, LinalgError> {
    let reps = u
        .basis()
        .iter()
        .map(|v| quot.reduce(v))
        .collect::<Result<Vec<_>, _>>()?;
    Subspace::span(u.ambient_dim(), &reps)
}

pub fn jantzen_on_cokernel(m: &QMatrix) -> Result<JantzenFiltration, FiltrationError> {
    let n = nilpotency_index(m)?;
    let im = image(m);
    let chain = (0..n)
        .map(|j| Ok(reduce_subspace(&kernel(&m.pow(j + 1)?), &im)?))
        .collect::<Result<Vec<_>, FiltrationError>>()?;
    Ok(JantzenFiltration {
        side: JantzenSide::OnCokernel,
        ambient: m.rows(),
        chain,
    })
}

/// The filtrations induced by `μ` on `ker M` (`ker M ∩ μ^{-j}`) and on
/// `coker M` (`(μ^j + im M) / im M`), indexed like the Jantzen filtrations.
pub fn induced_from_monodromy(
    m: &QMatrix,
    f: &MonodromyFiltration,
    side: JantzenSide,
) -> Result<JantzenFiltration, FiltrationError> {
    let n = nilpotency_index(m)? as i64;
    let chain = match side {
        JantzenSide::OnKernel => {
            let ker = kernel(m);
            (0..=n)
                .map(|j| ker.intersect(&f.get(-j)))
                .collect::<Result<Vec<_>, _>>()?
        }
        JantzenSide::OnCokernel => {
            let im = image(m);
            (0..n)
                .map(|j| reduce_subspace(&f.get(j), &im))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(JantzenFiltration {
        side,
        ambient: m.rows(),
        chain,
    })
}

fn rows_text(s: &Subspace) -> Vec<Vec<String>> {
    s.basis()
        .iter()
        .map(|r| r.iter().map(fmt_rational).collect())
        .collect()
}

/// Monodromy and kernel-side Jantzen data of `S` on one `MaxExt` weight space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFiltrationReport {
    pub slice: i64,
    pub weight: i64,
    pub basis: Vec<Monomial>,
    /// RREF basis rows of `μ^r`, as `p/q` strings.
    pub mu: BTreeMap<i64, Vec<Vec<String>>>,
    /// RREF basis rows of `J^j = ker S ∩ im S^j`.
    pub jantzen: BTreeMap<usize, Vec<Vec<String>>>,
    /// `dim μ^r` for `r = -2, -1, 0, 1`.
    pub mu_dims: Vec<usize>,
    pub gr_dims: BTreeMap<i64, usize>,
    /// `μ^{-1} = im S` and `μ^0 = ker S`.
    pub matches_image_kernel: bool,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyProfile {
    pub slice: i64,
    pub window: WeightWindow,
    pub rows: Vec<WeightFiltrationReport>,
}

impl MonodromyProfile {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.verified && r.matches_image_kernel)
    }

    /// Sum of `gr^r` dimensions over the window.
    pub fn total_gr(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for row in &self.rows {
            for (r, d) in &row.gr_dims {
                *out.entry(*r).or_insert(0) += d;
            }
        }
        out
    }
}

pub fn maxext_weight_report(
    slice: i64,
    weight: i64,
) -> Result<WeightFiltrationReport, FiltrationError> {
    let om = op_matrix(MapKind::Op(OpName::S), ModuleFamily::MaxExt, slice, weight)?;
    let s = &om.matrix;
    let f = monodromy(s)?;
    let check = verify_monodromy(s, &f)?;
    let jk = jantzen_on_kernel(s)?;
    let mu = (f.r_min() - 1..=f.r_max())
        .map(|r| (r, rows_text(&f.get(r))))
        .collect();
    let jantzen = jk
        .chain
        .iter()
        .enumerate()
        .map(|(j, sub)| (j, rows_text(sub)))
        .collect();
    Ok(WeightFiltrationReport {
        slice,
        weight,
        basis: om.source.clone(),
        mu,
        jantzen,
        mu_dims: (-2..=1).map(|r| f.get(r).dim()).collect(),
        gr_dims: f.gr_dims(),
        matches_image_kernel: f.get(-1) == image(s) && f.get(0) == kernel(s),
        verified: check.passed(),
    })
}

/// Monodromy filtration of `S` on every `MaxExt` weight space in the window.
pub fn maxext_monodromy_profile(
    slice: i64,
    window: WeightWindow,
) -> Result<MonodromyProfile, FiltrationError> {
    let rows = window
        .weights(slice)
        .into_iter()
        .filter(|&w| !weight_space_basis(ModuleFamily::MaxExt, slice, w).is_empty())
        .map(|w| maxext_weight_report(slice, w))
        .collect::<Result<_, _>>()?;
    Ok(MonodromyProfile {
        slice,
        window,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KerCokerRow {
    pub weight: i64,
    pub ker_dim: usize,
    pub shriek_dim: usize,
    pub coker_dim: usize,
    pub plus_dim: usize,
    /// `im canbar = ker S`.
    pub canbar_image_is_kernel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KerCokerReport {
    pub slice: i64,
    pub rows: Vec<KerCokerRow>,
}

impl KerCokerReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| {
            r.ker_dim == r.shriek_dim && r.coker_dim == r.plus_dim && r.canbar_image_is_kernel
        })
    }
}

/// Compares `ker S` and `coker S` on `MaxExt` with the `Shriek` and `Plus`
/// weight spaces, and `im canbar` with `ker S`.
pub fn maxext_kernel_cokernel(
    slice: i64,
    window: WeightWindow,
) -> Result<KerCokerReport, FiltrationError> {
    let rows = window
        .weights(slice)
        .into_iter()
        .map(|w| {
            let s = op_matrix(MapKind::Op(OpName::S), ModuleFamily::MaxExt, slice, w)?;
            let cb = op_matrix(MapKind::Canbar, ModuleFamily::Shriek, slice, w)?;
            let ker = kernel(&s.matrix);
            Ok(KerCokerRow {
                weight: w,
                ker_dim: ker.dim(),
                shriek_dim: weight_space_basis(ModuleFamily::Shriek, slice, w).len(),
                coker_dim: s.target.len() - image(&s.matrix).dim(),
                plus_dim: weight_space_basis(ModuleFamily::Plus, slice, w).len(),
                canbar_image_is_kernel: image(&cb.matrix) == ker,
            })
        })
        .collect::<Result<_, FiltrationError>>()?;
    Ok(KerCokerReport { slice, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::span(
            n,
            &vs.iter()
                .map(|x| x.iter().map(|&a| rat(a)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn block2() -> QMatrix {
        QMatrix::from_ints(&[&[0, 0], &[1, 0]])
    }

    #[test]
    fn zero_map() {
        let f = monodromy(&QMatrix::zeros(1, 1)).unwrap();
        assert!(f.get(-1).is_zero());
        assert_eq!(f.get(0), Subspace::full(1));
        assert!(verify_monodromy(&QMatrix::zeros(1, 1), &f)
            .unwrap()
            .passed());
    }

    #[test]
    fn jordan_block() {
        let m = block2();
        let f = monodromy(&m).unwrap();
        let im = image(&m);
        assert!(f.get(-2).is_zero());
        assert_eq!(f.get(-1), im);
        assert_eq!(f.get(0), im);
        assert_eq!(f.get(1), Subspace::full(2));
        assert!(verify_monodromy(&m, &f).unwrap().passed());
    }

    #[test]
    fn shifted_chain_fails() {
        let m = block2();
        let bad = monodromy(&m).unwrap().shifted(1);
        let check = verify_monodromy(&m, &bad).unwrap();
        assert!(!check.passed());
        assert!(!check.hard_lefschetz);
        // lower half moved down one step: M μ^1 = im M is no longer in μ^{-1}
        let im = image(&m);
        let worse = MonodromyFiltration::new(2, -1, vec![Subspace::zero(2), im, Subspace::full(2)]);
        let check = verify_monodromy(&m, &worse).unwrap();
        assert!(!check.lowers_by_two);
        assert!(check.failures.iter().any(|f| f.contains("μ^1")));
    }

    #[test]
    fn blocks_one_and_three() {
        // e0 alone, e1 -> e2 -> e3
        let m = QMatrix::from_ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let f = monodromy(&m).unwrap();
        let check = verify_monodromy(&m, &f).unwrap();
        assert!(check.passed(), "{check:?}");
        assert_eq!(check.gr_dims, BTreeMap::from([(-2, 1), (0, 2), (2, 1)]));
        assert_eq!(f.get(-2), span(4, &[&[0, 0, 0, 1]]));
        assert_eq!(
            f.get(0),
            span(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
    }

    #[test]
    fn not_nilpotent() {
        assert_eq!(
            monodromy(&QMatrix::identity(2)),
            Err(FiltrationError::NotNilpotent)
        );
        assert!(matches!(
            monodromy(&QMatrix::zeros(1, 2)),
            Err(FiltrationError::NotSquare(1, 2))
        ));
    }

    #[test]
    fn kernel_side_examples() {
        let m = block2();
        let j = jantzen_on_kernel(&m).unwrap();
        assert_eq!(j.get(0), kernel(&m));
        assert_eq!(j.get(1), kernel(&m));
        assert!(j.get(2).is_zero());
        let z = jantzen_on_kernel(&QMatrix::zeros(2, 2)).unwrap();
        assert_eq!(z.get(0), Subspace::full(2));
        assert!(z.get(1).is_zero());
    }

    #[test]
    fn cokernel_side() {
        // blocks of sizes 1 and 2: coker has dim 2, J^0 sees only the size-1 block
        let m = QMatrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]);
        let j = jantzen_on_cokernel(&m).unwrap();
        assert_eq!(j.dims(), vec![1, 2]);
        assert_eq!(j.get(0), span(3, &[&[1, 0, 0]]));
        let f = monodromy(&m).unwrap();
        assert_eq!(
            induced_from_monodromy(&m, &f, JantzenSide::OnCokernel).unwrap(),
            j
        );
        assert_eq!(
            induced_from_monodromy(&m, &f, JantzenSide::OnKernel).unwrap(),
            jantzen_on_kernel(&m).unwrap()
        );
    }

    #[test]
    fn maxext_weight_minus_two() {
        let rep = maxext_weight_report(0, -2).unwrap();
        assert_eq!(rep.mu_dims, vec![0, 1, 1, 2]);
        assert!(rep.verified && rep.matches_image_kernel);
        // J^1 = im s = span{(1,-1,1)}, J^2 = 0
        assert_eq!(
            rep.jantzen[&1],
            vec![vec!["0".to_string(), "1".to_string()]]
        );
        assert!(rep.jantzen[&2].is_empty());
    }

    #[test]
    fn maxext_profiles() {
        let p = maxext_monodromy_profile(0, WeightWindow::new(-6, 0)).unwrap();
        assert!(p.passed());
        assert_eq!(p.rows[0].gr_dims, BTreeMap::from([(0, 1)]));
        for row in &p.rows[1..] {
            assert_eq!(row.gr_dims, BTreeMap::from([(-1, 1), (1, 1)]));
        }
        let p = maxext_monodromy_profile(1, WeightWindow::new(-7, 1)).unwrap();
        assert!(p.passed());
        assert_eq!(p.rows[0].gr_dims, BTreeMap::from([(0, 1)]));
        assert_eq!(p.rows[1].gr_dims, BTreeMap::from([(0, 1)]));
        assert_eq!(p.rows[2].gr_dims, BTreeMap::from([(-1, 1), (1, 1)]));
        let p = maxext_monodromy_profile(-1, WeightWindow::new(-7, -1)).unwrap();
        assert!(p.passed());
        assert!(p
            .rows
            .iter()
            .all(|r| r.gr_dims == BTreeMap::from([(-1, 1), (1, 1)])));
    }

    #[test]
    fn kernel_cokernel_identification() {
        for slice in -2..=3 {
            let rep = maxext_kernel_cokernel(slice, WeightWindow::default_for(slice)).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }
}
