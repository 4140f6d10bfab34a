//! Normal-ordered differential operators on `C^2`, optionally localized at
//! `x2`, with coefficients in `Q[s]/s^n` (the deformation parameter `s` is
//! central).
//!
//! Operators are stored as `Σ c · x1^a x2^b d1^c d2^d` with every `x` to the
//! left of every `d`. Products are normal-ordered with the Leibniz rule
//! `d^b x^c = Σ_j C(b, j) c(c-1)...(c-j+1) x^(c-j) d^(b-j)`, which holds for
//! negative `c` as well.

mod enveloping;
mod parse;
mod sl2;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{fmt_rational, rat, Rational, ScalarError, TruncPoly};

pub use enveloping::{hc_project, pbw_normal_order, EnvWord, Generator, HPoly, PbwElement};
pub use parse::parse_operator;
pub use sl2::{
    casimir_identity_check, check_complex, check_resolution_complexes, commutation_relations,
    displayed_casimir, embed_l, embed_r_h, l_e, l_f, l_h, CasimirReport, CommutationRelation,
    ComplexCheck, ResolutionReport, Side, TwoTermComplex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("negative x2 exponent {0} in an operator that is not localized at x2")]
    NotLocalized(i32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Exponent tuple of a normal-ordered monomial `x1^x1 x2^x2 d1^d1 d2^d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylMonomial {
    pub x1: u32,
    pub x2: i32,
    pub d1: u32,
    pub d2: u32,
}

impl WeylMonomial {
    pub const ONE: WeylMonomial = WeylMonomial {
        x1: 0,
        x2: 0,
        d1: 0,
        d2: 0,
    };

    pub fn new(x1: u32, x2: i32, d1: u32, d2: u32) -> Self {
        WeylMonomial { x1, x2, d1, d2 }
    }
}

/// Element of `D(C^2) ⊗ Q[s]/s^n`, or of its localization at `x2`.
///
/// Equality compares the order and the terms; the localization flag only
/// records which algebra the operator is allowed to live in.
#[derive(Debug, Clone)]
pub struct WeylOp {
    order: usize,
    localized: bool,
    terms: BTreeMap<WeylMonomial, TruncPoly>,
}

impl PartialEq for WeylOp {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.terms == other.terms
    }
}

impl Eq for WeylOp {}

/// `C(b, j) · c(c-1)...(c-j+1)`: the coefficient of `x^(c-j) d^(b-j)` in `d^b x^c`.
fn leibniz_coeff(b: u32, c: i64, j: u32) -> Rational {
    let mut binom = rat(1);
    let mut falling = rat(1);
    for t in 0..j {
        binom = binom * rat(i64::from(b - t)) / rat(i64::from(t + 1));
        falling *= rat(c - i64::from(t));
    }
    binom * falling
}

/// Falling factorial `c(c-1)...(c-j+1)` of an integer.
pub(crate) fn falling_int(c: i64, j: u32) -> Rational {
    (0..j).fold(rat(1), |acc, t| acc * rat(c - i64::from(t)))
}

impl WeylOp {
    pub fn zero(order: usize) -> Self {
        WeylOp {
            order,
            localized: false,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, rat(1))
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        Self::term(order, TruncPoly::constant(order, c), WeylMonomial::ONE)
    }

    /// A single term. Negative `x2` exponents switch on localization.
    pub fn term(order: usize, coeff: TruncPoly, mono: WeylMonomial) -> Self {
        assert_eq!(coeff.order(), order, "coefficient order mismatch");
        let mut op = WeylOp {
            order,
            localized: mono.x2 < 0,
            terms: BTreeMap::new(),
        };
        if !coeff.is_zero() {
            op.terms.insert(mono, coeff);
        }
        op
    }

    /// Integer multiple of a monomial.
    pub fn mono(order: usize, c: i64, x1: u32, x2: i32, d1: u32, d2: u32) -> Self {
        Self::term(
            order,
            TruncPoly::constant(order, rat(c)),
            WeylMonomial::new(x1, x2, d1, d2),
        )
    }

    pub fn x1(order: usize) -> Self {
        Self::mono(order, 1, 1, 0, 0, 0)
    }
    pub fn x2(order: usize) -> Self {
        Self::mono(order, 1, 0, 1, 0, 0)
    }
    pub fn x2_inv(order: usize) -> Self {
        Self::mono(order, 1, 0, -1, 0, 0)
    }
    pub fn d1(order: usize) -> Self {
        Self::mono(order, 1, 0, 0, 1, 0)
    }
    pub fn d2(order: usize) -> Self {
        Self::mono(order, 1, 0, 0, 0, 1)
    }
    /// The central deformation parameter.
    pub fn s(order: usize) -> Self {
        Self::term(order, TruncPoly::s(order), WeylMonomial::ONE)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_localized(&self) -> bool {
        self.localized
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &TruncPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &WeylMonomial) -> TruncPoly {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| TruncPoly::zero(self.order))
    }

    /// Rejects operators that carry a negative `x2` exponent while the
    /// localization flag is off.
    pub fn with_localized(mut self, localized: bool) -> Result<Self, WeylError> {
        if !localized {
            if let Some(m) = self.terms.keys().find(|m| m.x2 < 0) {
                return Err(WeylError::NotLocalized(m.x2));
            }
        }
        self.localized = localized;
        Ok(self)
    }

    fn accumulate(&mut self, mono: WeylMonomial, c: TruncPoly) {
        if c.is_zero() {
            return;
        }
        if mono.x2 < 0 {
            self.localized = true;
        }
        let entry = self
            .terms
            .entry(mono)
            .or_insert_with(|| TruncPoly::zero(c.order()));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), WeylError> {
        if self.order != other.order {
            Err(ScalarError::OrderMismatch(self.order, other.order).into())
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_order(other)?;
        let mut out = self.clone();
        out.localized |= other.localized;
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.checked_add(&other.scale(&-rat(1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.scale_poly(&TruncPoly::constant(self.order, c.clone()))
    }

    pub fn scale_poly(&self, c: &TruncPoly) -> Self {
        let mut out = WeylOp {
            order: self.order,
            localized: self.localized,
            terms: BTreeMap::new(),
        };
        for (m, a) in &self.terms {
            out.accumulate(*m, a * c);
        }
        out
    }

    /// Normal-ordered product `self · other`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_order(other)?;
        let mut out = WeylOp {
            order: self.order,
            localized: self.localized || other.localized,
            terms: BTreeMap::new(),
        };
        for (p, pc) in &self.terms {
            for (q, qc) in &other.terms {
                let base = pc * qc;
                if base.is_zero() {
                    continue;
                }
                // d1^{p.d1} x1^{q.x1}
                for j1 in 0..=p.d1.min(q.x1) {
                    let c1 = leibniz_coeff(p.d1, i64::from(q.x1), j1);
                    if c1.is_zero() {
                        continue;
                    }
                    // d2^{p.d2} x2^{q.x2}; x2 may be negative so j2 runs to p.d2
                    for j2 in 0..=p.d2 {
                        let c2 = leibniz_coeff(p.d2, i64::from(q.x2), j2);
                        if c2.is_zero() {
                            continue;
                        }
                        let mono = WeylMonomial {
                            x1: p.x1 + q.x1 - j1,
                            x2: p.x2 + q.x2 - j2 as i32,
                            d1: p.d1 - j1 + q.d1,
                            d2: p.d2 - j2 + q.d2,
                        };
                        out.accumulate(mono, base.scale(&(&c1 * &c2)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, e: u32) -> Result<Self, WeylError> {
        let mut acc = WeylOp::one(self.order);
        acc.localized = self.localized;
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// `pq - qp`.
    pub fn commutator(&self, other: &Self) -> Result<Self, WeylError> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    /// Standard action on a Laurent polynomial in `x1`, `x2`.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly, WeylError> {
        self.apply_with(f, false)
    }

    /// Action on `f · t^s`, where `d1 t^s = 0` and `d2 t^s = s x2^(-1) t^s`.
    /// Returns the polynomial multiplying `t^s`.
    pub fn apply_twisted(&self, f: &LaurentPoly) -> Result<LaurentPoly, WeylError> {
        self.apply_with(f, true)
    }

    fn apply_with(&self, f: &LaurentPoly, twisted: bool) -> Result<LaurentPoly, WeylError> {
        if self.order != f.order {
            return Err(ScalarError::OrderMismatch(self.order, f.order).into());
        }
        let n = self.order;
        let mut out = LaurentPoly::zero(n);
        for (m, c) in &self.terms {
            for (&(p, q), fc) in &f.terms {
                if m.d1 > p {
                    continue;
                }
                let c1 = falling_int(i64::from(p), m.d1);
                // d2^e on x2^q (t^s): Π_{j<e} (q - j [+ s])
                let mut c2 = TruncPoly::one(n);
                for j in 0..m.d2 {
                    let mut factor = vec![rat(i64::from(q) - i64::from(j))];
                    if twisted {
                        factor.push(rat(1));
                    }
                    c2 = &c2 * &TruncPoly::new(n, factor)?;
                }
                let coeff = (&(c * fc) * &c2).scale(&c1);
                let key = (p - m.d1 + m.x1, q - m.d2 as i32 + m.x2);
                out.accumulate(key, coeff);
            }
        }
        Ok(out)
    }

    /// Reduces a non-localized operator modulo the left ideal generated by
    /// `d1` and `x2 d2 - s`.
    ///
    /// The result is expressed on the basis `x1^k x2^l` (`l ≥ 0`) and
    /// `x1^k d2^b`, with the latter stored under the key `(k, -b)`.
    pub fn reduce_mod_shriek_ideal(&self) -> Result<LaurentPoly, WeylError> {
        if let Some(m) = self.terms.keys().find(|m| m.x2 < 0) {
            return Err(WeylError::NotLocalized(m.x2));
        }
        let n = self.order;
        let mut out = LaurentPoly::zero(n);
        for (m, c) in &self.terms {
            if m.d1 > 0 {
                continue;
            }
            // x2 d2^e ≡ (s - e + 1) d2^(e-1), applied while both exponents are positive.
            let (mut a, mut e) = (m.x2, m.d2);
            let mut coeff = c.clone();
            while a > 0 && e > 0 {
                let factor = TruncPoly::new(n, vec![rat(1 - i64::from(e)), rat(1)])?;
                coeff = &coeff * &factor;
                a -= 1;
                e -= 1;
            }
            let l = if e > 0 { -(e as i32) } else { a };
            out.accumulate((m.x1, l), coeff);
        }
        Ok(out)
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, var: &str, e: i64, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

impl fmt::Display for WeylOp {
    /// Normal-ordered text, e.g. `x1*d1 + 1` or `(1 + s)*x2^-1*d2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let is_unit_mono = *m == WeylMonomial::ONE;
            let nonzero: Vec<(usize, &Rational)> = c
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.is_zero())
                .collect();
            let (neg, body) = match nonzero.as_slice() {
                [(i, r)] => {
                    let mag = r.abs();
                    let body = if *i == 0 {
                        if mag.is_one() && !is_unit_mono {
                            String::new()
                        } else {
                            fmt_rational(&mag)
                        }
                    } else {
                        TruncPoly::monomial(self.order, mag, *i).to_string()
                    };
                    (r.is_negative(), body)
                }
                _ => (false, format!("({c})")),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{body}")?;
            let mut first = body.is_empty();
            fmt_power(f, "x1", i64::from(m.x1), &mut first)?;
            fmt_power(f, "x2", i64::from(m.x2), &mut first)?;
            fmt_power(f, "d1", i64::from(m.d1), &mut first)?;
            fmt_power(f, "d2", i64::from(m.d2), &mut first)?;
        }
        Ok(())
    }
}

/// Laurent polynomial `Σ c · x1^k x2^l` (`k ≥ 0`, `l ∈ Z`) with `Q[s]/s^n`
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    order: usize,
    terms: BTreeMap<(u32, i32), TruncPoly>,
}

impl LaurentPoly {
    pub fn zero(order: usize) -> Self {
        LaurentPoly {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(order: usize, coeff: TruncPoly, k: u32, l: i32) -> Self {
        let mut p = Self::zero(order);
        p.accumulate((k, l), coeff);
        p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i32), &TruncPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: u32, l: i32) -> TruncPoly {
        self.terms
            .get(&(k, l))
            .cloned()
            .unwrap_or_else(|| TruncPoly::zero(self.order))
    }

    pub fn accumulate(&mut self, key: (u32, i32), c: TruncPoly) {
        assert_eq!(c.order(), self.order, "coefficient order mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key)
            .or_insert_with(|| TruncPoly::zero(c.order()));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale_poly(&self, c: &TruncPoly) -> Self {
        let mut out = Self::zero(self.order);
        for (k, a) in &self.terms {
            out.accumulate(*k, a * c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_commutation() {
        let p = WeylOp::d1(1).checked_mul(&WeylOp::x1(1)).unwrap();
        let expected = WeylOp::mono(1, 1, 1, 0, 1, 0)
            .checked_add(&WeylOp::one(1))
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn leibniz_on_laurent_monomial() {
        let p = WeylOp::d2(1).checked_mul(&WeylOp::x2_inv(1)).unwrap();
        let expected = WeylOp::mono(1, 1, 0, -1, 0, 1)
            .checked_sub(&WeylOp::mono(1, 1, 0, -2, 0, 0))
            .unwrap();
        assert_eq!(p, expected);
        assert!(p.is_localized());
    }

    #[test]
    fn mixed_normal_ordering() {
        // (x2 d1)(x1 d2) = x1 x2 d1 d2 + x2 d2
        let a = WeylOp::mono(1, 1, 0, 1, 1, 0);
        let b = WeylOp::mono(1, 1, 1, 0, 0, 1);
        let expected = WeylOp::mono(1, 1, 1, 1, 1, 1)
            .checked_add(&WeylOp::mono(1, 1, 0, 1, 0, 1))
            .unwrap();
        assert_eq!(a.checked_mul(&b).unwrap(), expected);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert!(WeylOp::x1(1).checked_mul(&WeylOp::x1(2)).is_err());
        let f = LaurentPoly::monomial(2, TruncPoly::one(2), 1, 1);
        assert!(WeylOp::x1(1).apply(&f).is_err());
    }

    #[test]
    fn localization_flag_is_enforced() {
        assert_eq!(
            WeylOp::x2_inv(1).with_localized(false),
            Err(WeylError::NotLocalized(-1))
        );
        assert!(WeylOp::x2(1).with_localized(false).is_ok());
        assert!(WeylOp::x2_inv(1).reduce_mod_shriek_ideal().is_err());
    }

    #[test]
    fn apply_examples() {
        let f = LaurentPoly::monomial(1, TruncPoly::one(1), 3, 2);
        let out = l_e(1).apply(&f).unwrap();
        assert_eq!(
            out,
            LaurentPoly::monomial(1, TruncPoly::from_ints(1, &[-3]), 2, 3)
        );

        let g = LaurentPoly::monomial(1, TruncPoly::one(1), 2, -1);
        assert_eq!(embed_r_h(1).apply(&g).unwrap(), g);

        assert!(l_f(1).apply(&LaurentPoly::zero(1)).unwrap().is_zero());
    }

    #[test]
    fn twisted_action_picks_up_s() {
        // d2 · (x2^3 t^s) = (3 + s) x2^2 t^s
        let f = LaurentPoly::monomial(3, TruncPoly::one(3), 0, 3);
        let out = WeylOp::d2(3).apply_twisted(&f).unwrap();
        assert_eq!(
            out,
            LaurentPoly::monomial(3, TruncPoly::from_ints(3, &[3, 1]), 0, 2)
        );
    }

    #[test]
    fn ideal_reduction() {
        // x2 d2 ≡ s, x2 d2^2 ≡ (s - 1) d2, d1 ≡ 0
        let n = 3;
        let r = WeylOp::mono(n, 1, 0, 1, 0, 1)
            .reduce_mod_shriek_ideal()
            .unwrap();
        assert_eq!(r, LaurentPoly::monomial(n, TruncPoly::s(n), 0, 0));
        let r = WeylOp::mono(n, 1, 0, 1, 0, 2)
            .reduce_mod_shriek_ideal()
            .unwrap();
        assert_eq!(
            r,
            LaurentPoly::monomial(n, TruncPoly::from_ints(n, &[-1, 1]), 0, -1)
        );
        assert!(WeylOp::d1(n).reduce_mod_shriek_ideal().unwrap().is_zero());
    }

    #[test]
    fn display_normal_form() {
        let p = WeylOp::d1(1).checked_mul(&WeylOp::x1(1)).unwrap();
        assert_eq!(p.to_string(), "x1*d1 + 1");
        assert_eq!(l_e(1).to_string(), "-x2*d1");
        assert_eq!(WeylOp::zero(1).to_string(), "0");
        let q = WeylOp::d2(2).checked_mul(&WeylOp::s(2)).unwrap();
        assert_eq!(q.to_string(), "s*d2");
        let r = WeylOp::term(
            2,
            TruncPoly::from_ints(2, &[1, 1]),
            WeylMonomial::new(0, -1, 0, 0),
        );
        assert_eq!(r.to_string(), "(1 + s)*x2^-1");
    }
}
