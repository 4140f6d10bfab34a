//! The five global-sections modules on the monomial basis `(k, l, m)`.
//!
//! A basis vector `(k, l, m)` stands for `s^m x1^k x2^l` (times `t^s` in the
//! deformed families). In the `!`-type families a negative `l = -b` stands for
//! `s^m x1^k d2^b` instead. Every family is graded by
//! `slice = k + l` (the `R_h` eigenvalue) and `weight = l - k` (the `L_h`
//! eigenvalue), and all operators preserve the slice.
//!
//! | family         | order | `l < 0` means | admissible `m`            |
//! |----------------|-------|---------------|---------------------------|
//! | `Plus`         | 1     | `x2^l`        | 0                         |
//! | `Shriek`       | 1     | `d2^-l`       | 0                         |
//! | `DefPlus(n)`   | n     | `x2^l`        | `< n`                     |
//! | `DefShriek(n)` | n     | `d2^-l`       | `< n`                     |
//! | `MaxExt`       | 2     | `x2^l`        | 0, or 1 when `l < 0`      |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{image, LinalgError, QMatrix};
use crate::scalar::{fmt_rational, rat, Rational, TruncPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DModError {
    #[error("monomial {mono} is not admissible in {family}")]
    Inadmissible {
        family: ModuleFamily,
        mono: Monomial,
    },
    #[error("expected an element of {expected}, got {found}")]
    WrongFamily {
        expected: String,
        found: ModuleFamily,
    },
    #[error("monomial {0} has s-degree at least 2 and has no normal form in MaxExt")]
    NormalFormOverflow(Monomial),
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("invalid family {0:?}")]
    UnknownFamily(String),
    #[error("invalid monomial {0:?}, expected k,l,m")]
    BadMonomial(String),
    #[error("invalid operator {0:?}")]
    UnknownOp(String),
    #[error("coefficient {0} does not fit in 64 bits")]
    Overflow(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleFamily {
    Plus,
    Shriek,
    DefPlus(usize),
    DefShriek(usize),
    MaxExt,
}

impl ModuleFamily {
    /// Truncation order of the `s`-grading (1 for the undeformed families).
    pub fn order(self) -> usize {
        match self {
            ModuleFamily::Plus | ModuleFamily::Shriek => 1,
            ModuleFamily::DefPlus(n) | ModuleFamily::DefShriek(n) => n,
            ModuleFamily::MaxExt => 2,
        }
    }

    /// Whether `l < 0` encodes the `d2`-sector.
    pub fn is_shriek_type(self) -> bool {
        matches!(self, ModuleFamily::Shriek | ModuleFamily::DefShriek(_))
    }

    pub fn is_admissible(self, mono: &Monomial) -> bool {
        match self {
            ModuleFamily::MaxExt => mono.m == 0 || (mono.m == 1 && mono.l < 0),
            _ => (mono.m as usize) < self.order(),
        }
    }

    fn validate(self) -> Result<Self, DModError> {
        if self.order() == 0 {
            Err(DModError::ZeroOrder)
        } else {
            Ok(self)
        }
    }

    /// Parses `plus`, `shriek`, `defplus`, `defshriek` or `maxext`; `n` is the
    /// order of the deformed families.
    pub fn parse(name: &str, n: usize) -> Result<Self, DModError> {
        let fam = match name.to_ascii_lowercase().as_str() {
            "plus" => ModuleFamily::Plus,
            "shriek" => ModuleFamily::Shriek,
            "defplus" => ModuleFamily::DefPlus(n),
            "defshriek" => ModuleFamily::DefShriek(n),
            "maxext" => ModuleFamily::MaxExt,
            _ => return Err(DModError::UnknownFamily(name.to_string())),
        };
        fam.validate()
    }

    pub const ALL_TAGS: [&'static str; 5] = ["plus", "shriek", "defplus", "defshriek", "maxext"];
}

impl fmt::Display for ModuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleFamily::Plus => write!(f, "Plus"),
            ModuleFamily::Shriek => write!(f, "Shriek"),
            ModuleFamily::DefPlus(n) => write!(f, "DefPlus({n})"),
            ModuleFamily::DefShriek(n) => write!(f, "DefShriek({n})"),
            ModuleFamily::MaxExt => write!(f, "MaxExt"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub k: u32,
    pub l: i32,
    pub m: u32,
}

impl Monomial {
    pub fn new(k: u32, l: i32, m: u32) -> Self {
        Monomial { k, l, m }
    }

    pub fn slice(&self) -> i64 {
        i64::from(self.k) + i64::from(self.l)
    }

    pub fn weight(&self) -> i64 {
        i64::from(self.l) - i64::from(self.k)
    }

    /// `x1^k x2^l s^m`, with `d2^b` for `l = -b` in `!`-type families.
    pub fn text(&self, family: ModuleFamily) -> String {
        let mut parts = Vec::new();
        let pow = |v: &str, e: i64| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        };
        if self.k > 0 {
            parts.push(pow("x1", self.k.into()));
        }
        if self.l > 0 || (self.l < 0 && !family.is_shriek_type()) {
            parts.push(pow("x2", self.l.into()));
        } else if self.l < 0 {
            parts.push(pow("d2", (-self.l).into()));
        }
        if self.m > 0 {
            parts.push(pow("s", self.m.into()));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.l, self.m)
    }
}

impl FromStr for Monomial {
    type Err = DModError;

    /// Parses `k,l,m` (optionally parenthesized).
    fn from_str(s: &str) -> Result<Self, DModError> {
        let bad = || DModError::BadMonomial(s.to_string());
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Monomial {
            k: parts[0].parse().map_err(|_| bad())?,
            l: parts[1].parse().map_err(|_| bad())?,
            m: parts[2].parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpName {
    Le,
    Lf,
    Lh,
    Rh,
    Omega,
    S,
}

impl OpName {
    pub const ALL: [OpName; 6] = [
        OpName::Le,
        OpName::Lf,
        OpName::Lh,
        OpName::Rh,
        OpName::Omega,
        OpName::S,
    ];

    /// Change of weight.
    pub fn weight_shift(self) -> i64 {
        match self {
            OpName::Le => 2,
            OpName::Lf => -2,
            _ => 0,
        }
    }
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            OpName::Le => "Le",
            OpName::Lf => "Lf",
            OpName::Lh => "Lh",
            OpName::Rh => "Rh",
            OpName::Omega => "Omega",
            OpName::S => "S",
        };
        write!(f, "{name}")
    }
}

impl FromStr for OpName {
    type Err = DModError;

    fn from_str(s: &str) -> Result<Self, DModError> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "le" | "e" => OpName::Le,
            "lf" | "f" => OpName::Lf,
            "lh" | "h" => OpName::Lh,
            "rh" => OpName::Rh,
            "omega" | "casimir" => OpName::Omega,
            "s" => OpName::S,
            _ => return Err(DModError::UnknownOp(s.to_string())),
        })
    }
}

/// A finite `Q`-linear combination of admissible monomials of one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    family: ModuleFamily,
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero(family: ModuleFamily) -> Self {
        Element {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(family: ModuleFamily, mono: Monomial) -> Result<Self, DModError> {
        Self::from_terms(family, [(mono, Rational::one())])
    }

    pub fn from_terms(
        family: ModuleFamily,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, DModError> {
        family.validate()?;
        let mut out = Self::zero(family);
        for (mono, c) in terms {
            if !family.is_admissible(&mono) {
                return Err(DModError::Inadmissible { family, mono });
            }
            out.accumulate(mono, c);
        }
        Ok(out)
    }

    pub fn family(&self) -> ModuleFamily {
        self.family
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · mono`, silently dropping `s`-degrees beyond the order.
    fn accumulate(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() || mono.m as usize >= self.family.order() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, DModError> {
        if self.family != other.family {
            return Err(DModError::WrongFamily {
                expected: self.family.to_string(),
                found: other.family,
            });
        }
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.accumulate(*mono, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DModError> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.family);
        for (mono, a) in &self.terms {
            out.accumulate(*mono, a * c);
        }
        out
    }

    /// Text form `c·x1^k x2^l s^m + ...`.
    pub fn text(&self) -> String {
        self.render(|m| m.text(self.family))
    }

    fn render(&self, label: impl Fn(&Monomial) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&format!("{}·{}", fmt_rational(&c.abs()), label(mono)));
            } else {
                out.push_str(&format!("{}·{}", fmt_rational(c), label(mono)));
            }
        }
        out
    }

    /// `[num, den, k, l, m]` rows.
    pub fn to_rows(&self) -> Result<Vec<[i64; 5]>, DModError> {
        self.terms
            .iter()
            .map(|(mono, c)| {
                let num = c
                    .numer()
                    .to_i64()
                    .ok_or_else(|| DModError::Overflow(fmt_rational(c)))?;
                let den = c
                    .denom()
                    .to_i64()
                    .ok_or_else(|| DModError::Overflow(fmt_rational(c)))?;
                Ok([num, den, mono.k.into(), mono.l.into(), mono.m.into()])
            })
            .collect()
    }

    pub fn from_rows(family: ModuleFamily, rows: &[[i64; 5]]) -> Result<Self, DModError> {
        let terms = rows
            .iter()
            .map(|&[num, den, k, l, m]| {
                let bad = || DModError::BadMonomial(format!("{k},{l},{m}"));
                if den == 0 {
                    return Err(DModError::Overflow(format!("{num}/0")));
                }
                let mono = Monomial::new(
                    k.try_into().map_err(|_| bad())?,
                    l.try_into().map_err(|_| bad())?,
                    m.try_into().map_err(|_| bad())?,
                );
                Ok((mono, Rational::new(num.into(), den.into())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_terms(family, terms)
    }
}

/// Tuple form `c·(k,l,m) + ...`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(|m| m.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    family: ModuleFamily,
    terms: Vec<[i64; 5]>,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.to_rows().map_err(serde::ser::Error::custom)?;
        ElementJson {
            family: self.family,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        Element::from_rows(raw.family, &raw.terms).map_err(serde::de::Error::custom)
    }
}

/// Image of one basis monomial as `((k, l, m), coefficient)` pairs, before
/// truncation. `shriek` selects the `d2`-sector formulas for `l ≤ 0`.
fn act_monomial(op: OpName, shriek: bool, mono: Monomial) -> Vec<((i64, i64, i64), i64)> {
    let (k, l, m) = (i64::from(mono.k), i64::from(mono.l), i64::from(mono.m));
    let c = k + l;
    match op {
        OpName::Lh => vec![((k, l, m), l - k), ((k, l, m + 1), 1)],
        OpName::Rh => vec![((k, l, m), c), ((k, l, m + 1), 1)],
        OpName::S => vec![((k, l, m + 1), 1)],
        OpName::Omega => {
            vec![
                ((k, l, m), c * c + 2 * c),
                ((k, l, m + 1), 2 * (1 + c)),
                ((k, l, m + 2), 1),
            ]
        }
        OpName::Le if shriek && l < 0 => {
            let b = -l;
            vec![
                ((k - 1, l + 1, m), k * (b - 1)),
                ((k - 1, l + 1, m + 1), -k),
            ]
        }
        OpName::Le => vec![((k - 1, l + 1, m), -k)],
        OpName::Lf if shriek && l <= 0 => vec![((k + 1, l - 1, m), -1)],
        OpName::Lf => vec![((k + 1, l - 1, m), -l), ((k + 1, l - 1, m + 1), -1)],
    }
}

fn push_terms(out: &mut Element, terms: Vec<((i64, i64, i64), i64)>, scale: &Rational) {
    for ((k, l, m), c) in terms {
        if c == 0 {
            continue;
        }
        let mono = Monomial::new(
            k.try_into().expect("nonzero coefficient keeps k >= 0"),
            l.try_into().expect("exponent in range"),
            m.try_into().expect("m >= 0"),
        );
        out.accumulate(mono, scale * rat(c));
    }
}

/// Action of `op` on `v`, extended linearly from the monomial formulas.
pub fn act(op: OpName, v: &Element) -> Element {
    let family = v.family;
    let work = match family {
        ModuleFamily::MaxExt => ModuleFamily::DefPlus(2),
        f => f,
    };
    let mut out = Element::zero(work);
    for (mono, c) in &v.terms {
        push_terms(
            &mut out,
            act_monomial(op, family.is_shriek_type(), *mono),
            c,
        );
    }
    match family {
        ModuleFamily::MaxExt => maxext_normal_form(&out).expect("order-2 element"),
        _ => out,
    }
}

fn expect_family(v: &Element, ok: bool, expected: &str) -> Result<(), DModError> {
    if ok {
        Ok(())
    } else {
        Err(DModError::WrongFamily {
            expected: expected.to_string(),
            found: v.family,
        })
    }
}

/// The canonical map `DefShriek(n) → DefPlus(n)`: the identity on `l ≥ 0` and
/// multiplication by `s(s-1)...(s-b+1)` on `x1^k d2^b`.
pub fn can(v: &Element) -> Result<Element, DModError> {
    let ModuleFamily::DefShriek(n) = v.family else {
        return Err(DModError::WrongFamily {
            expected: "DefShriek(n)".into(),
            found: v.family,
        });
    };
    let mut out = Element::zero(ModuleFamily::DefPlus(n));
    for (mono, c) in &v.terms {
        if mono.l >= 0 {
            out.accumulate(*mono, c.clone());
            continue;
        }
        let ff = TruncPoly::falling_factorial(mono.l.unsigned_abs(), n);
        for (i, a) in ff.coeffs().iter().enumerate() {
            out.accumulate(
                Monomial {
                    m: mono.m + i as u32,
                    ..*mono
                },
                c * a,
            );
        }
    }
    Ok(out)
}

/// `s ∘ can`.
pub fn s1n(v: &Element) -> Result<Element, DModError> {
    Ok(act(OpName::S, &can(v)?))
}

/// Projection of a `DefPlus` element onto `MaxExt`: drops `s x2^l` terms with
/// `l ≥ 0`. Fails on any term of `s`-degree at least 2.
pub fn maxext_normal_form(v: &Element) -> Result<Element, DModError> {
    expect_family(
        v,
        matches!(v.family, ModuleFamily::DefPlus(_) | ModuleFamily::MaxExt),
        "DefPlus(n)",
    )?;
    let mut out = Element::zero(ModuleFamily::MaxExt);
    for (mono, c) in &v.terms {
        if mono.m >= 2 {
            return Err(DModError::NormalFormOverflow(*mono));
        }
        if mono.m == 0 || mono.l < 0 {
            out.accumulate(*mono, c.clone());
        }
    }
    Ok(out)
}

/// The map `Shriek → MaxExt` induced by `can` at order 2.
pub fn canbar(v: &Element) -> Result<Element, DModError> {
    expect_family(v, v.family == ModuleFamily::Shriek, "Shriek")?;
    let lifted = Element {
        family: ModuleFamily::DefShriek(2),
        terms: v.terms.clone(),
    };
    maxext_normal_form(&can(&lifted)?)
}

/// Basis of the `(slice, weight)` space of `family`, ordered by `m`.
pub fn weight_space_basis(family: ModuleFamily, slice: i64, weight: i64) -> Vec<Monomial> {
    if (slice - weight).rem_euclid(2) != 0 || weight > slice {
        return Vec::new();
    }
    let k = (slice - weight) / 2;
    let l = (slice + weight) / 2;
    let (Ok(k), Ok(l)) = (u32::try_from(k), i32::try_from(l)) else {
        return Vec::new();
    };
    (0..family.order() as u32)
        .map(|m| Monomial::new(k, l, m))
        .filter(|mono| family.is_admissible(mono))
        .collect()
}

/// Inclusive weight range; only weights of the slice's parity are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightWindow {
    pub wmin: i64,
    pub wmax: i64,
}

impl WeightWindow {
    pub fn new(wmin: i64, wmax: i64) -> Self {
        WeightWindow { wmin, wmax }
    }

    /// The 12 weights below `slice`, inclusive of the top.
    pub fn default_for(slice: i64) -> Self {
        WeightWindow {
            wmin: slice - 12,
            wmax: slice,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.wmin > self.wmax
    }

    /// Weights of the slice's parity, descending from the top.
    pub fn weights(&self, slice: i64) -> Vec<i64> {
        (self.wmin..=self.wmax)
            .rev()
            .filter(|w| (w - slice).rem_euclid(2) == 0)
            .collect()
    }

    pub fn contains(&self, w: i64) -> bool {
        self.wmin <= w && w <= self.wmax
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    Op(OpName),
    Can,
    S1n,
    Canbar,
}

/// Matrix of a graded map between weight spaces. Column `j` is the image of
/// `source[j]` written on `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMatrix {
    pub matrix: QMatrix,
    pub source_family: ModuleFamily,
    pub target_family: ModuleFamily,
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub target_weight: i64,
}

/// Matrix of `kind` from the `(slice, weight)` space of `family`. `Can` and
/// `S1n` need `family = DefShriek(n)`, `Canbar` needs `Shriek`.
pub fn op_matrix(
    kind: MapKind,
    family: ModuleFamily,
    slice: i64,
    weight: i64,
) -> Result<OpMatrix, DModError> {
    let (target_family, target_weight) = match kind {
        MapKind::Op(op) => (family, weight + op.weight_shift()),
        MapKind::Can | MapKind::S1n => match family {
            ModuleFamily::DefShriek(n) => (ModuleFamily::DefPlus(n), weight),
            f => {
                return Err(DModError::WrongFamily {
                    expected: "DefShriek(n)".into(),
                    found: f,
                })
            }
        },
        MapKind::Canbar => match family {
            ModuleFamily::Shriek => (ModuleFamily::MaxExt, weight),
            f => {
                return Err(DModError::WrongFamily {
                    expected: "Shriek".into(),
                    found: f,
                })
            }
        },
    };
    let source = weight_space_basis(family, slice, weight);
    let target = weight_space_basis(target_family, slice, target_weight);
    let mut matrix = QMatrix::zeros(target.len(), source.len());
    for (j, mono) in source.iter().enumerate() {
        let v = Element::monomial(family, *mono)?;
        let img = match kind {
            MapKind::Op(op) => act(op, &v),
            MapKind::Can => can(&v)?,
            MapKind::S1n => s1n(&v)?,
            MapKind::Canbar => canbar(&v)?,
        };
        for (t, c) in img.terms() {
            let i = target
                .iter()
                .position(|x| x == t)
                .expect("graded map stays in the target weight space");
            matrix.set(i, j, c.clone());
        }
    }
    Ok(OpMatrix {
        matrix,
        source_family: family,
        target_family,
        source,
        target,
        target_weight,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationRow {
    pub weight: i64,
    /// `dim coker s1n` for each order, in the order of `StabilizationReport::orders`.
    pub coker_dims: Vec<usize>,
    /// Size of the explicit `MaxExt` basis at this weight.
    pub maxext_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub slice: i64,
    pub orders: Vec<usize>,
    pub rows: Vec<StabilizationRow>,
    /// The cokernel dimensions agree across all orders.
    pub stable: bool,
    /// Every cokernel dimension equals the `MaxExt` dimension.
    pub matches_maxext: bool,
}

/// Dimensions of `coker s1n` on each weight space for each order.
pub fn stabilization_check(
    slice: i64,
    window: WeightWindow,
    orders: &[usize],
) -> Result<StabilizationReport, DModError> {
    if orders.contains(&0) {
        return Err(DModError::ZeroOrder);
    }
    let mut rows = Vec::new();
    for w in window.weights(slice) {
        let coker_dims = orders
            .iter()
            .map(|&n| {
                let om = op_matrix(MapKind::S1n, ModuleFamily::DefShriek(n), slice, w)?;
                Ok(om.target.len() - image(&om.matrix).dim())
            })
            .collect::<Result<Vec<_>, DModError>>()?;
        let maxext_dim = weight_space_basis(ModuleFamily::MaxExt, slice, w).len();
        rows.push(StabilizationRow {
            weight: w,
            coker_dims,
            maxext_dim,
        });
    }
    let stable = rows
        .iter()
        .all(|r| r.coker_dims.windows(2).all(|p| p[0] == p[1]));
    let matches_maxext = rows
        .iter()
        .all(|r| r.coker_dims.iter().all(|&d| d == r.maxext_dim));
    Ok(StabilizationReport {
        slice,
        orders: orders.to_vec(),
        rows,
        stable,
        matches_maxext,
    })
}

/// Every admissible monomial of `family` with `k ≤ kmax`, `|l| ≤ lmax` and
/// `m < mmax`.
pub fn monomials_in_box(family: ModuleFamily, kmax: u32, lmax: i32, mmax: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for k in 0..=kmax {
        for l in -lmax..=lmax {
            for m in 0..mmax {
                let mono = Monomial::new(k, l, m);
                if family.is_admissible(&mono) {
                    out.push(mono);
                }
            }
        }
    }
    out
}
