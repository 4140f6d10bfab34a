//! Words in `U(sl2)`, PBW normal ordering `f^i h^j e^k` and the
//! Harish-Chandra projection.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{fmt_rational, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    E,
    F,
    H,
}

impl Generator {
    pub fn symbol(self) -> char {
        match self {
            Generator::E => 'e',
            Generator::F => 'f',
            Generator::H => 'h',
        }
    }
}

/// Finite rational combination of words over `{e, f, h}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnvWord {
    terms: BTreeMap<Vec<Generator>, Rational>,
}

impl EnvWord {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty word.
    pub fn one() -> Self {
        Self::word(&[])
    }

    pub fn gen(g: Generator) -> Self {
        Self::word(&[g])
    }

    pub fn word(w: &[Generator]) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.to_vec(), Rational::one());
        EnvWord { terms }
    }

    /// Parses a word such as `"efh"`; returns `None` on any other letter.
    pub fn parse_word(text: &str) -> Option<Self> {
        let letters = text
            .chars()
            .map(|c| match c {
                'e' => Some(Generator::E),
                'f' => Some(Generator::F),
                'h' => Some(Generator::H),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self::word(&letters))
    }

    /// The Casimir element `h^2 + 2ef + 2fe`.
    pub fn casimir() -> Self {
        use Generator::*;
        Self::word(&[H, H])
            .add(&Self::word(&[E, F]).scale(&rat(2)))
            .add(&Self::word(&[F, E]).scale(&rat(2)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Generator>, &Rational)> {
        self.terms.iter()
    }

    fn accumulate(&mut self, w: Vec<Generator>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.accumulate(w.clone(), a * c);
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, a) in &self.terms {
            for (w2, b) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.accumulate(w, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

/// Element of `U(sl2)` on the PBW basis `f^i h^j e^k`, keyed by `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PbwElement {
    terms: BTreeMap<(u32, u32, u32), Rational>,
}

impl PbwElement {
    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0, 0), Rational::one());
        PbwElement { terms }
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Rational {
        self.terms
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rational)> {
        self.terms.iter()
    }

    fn accumulate(&mut self, key: (u32, u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }

    /// Right multiplication by a generator, rewritten back into PBW order with
    /// `h e = e h + 2e`, `h f = f h - 2f` and `e f = f e + h`.
    fn mul_gen(&self, g: Generator) -> Self {
        let mut out = PbwElement::default();
        for (&(i, j, k), c) in &self.terms {
            match g {
                Generator::E => out.accumulate((i, j, k + 1), c.clone()),
                // e^k h = (h - 2k) e^k
                Generator::H => {
                    out.accumulate((i, j + 1, k), c.clone());
                    out.accumulate((i, j, k), c * rat(-2 * i64::from(k)));
                }
                // e^k f = f e^k + k (h - k + 1) e^(k-1), and h^j f = f (h - 2)^j
                Generator::F => {
                    for (t, binom) in binomials(j).into_iter().enumerate() {
                        let t = t as u32;
                        let pow = (-2i64).pow(j - t);
                        out.accumulate((i + 1, t, k), c * rat(binom * pow));
                    }
                    if k > 0 {
                        let kk = i64::from(k);
                        out.accumulate((i, j + 1, k - 1), c * rat(kk));
                        out.accumulate((i, j, k - 1), c * rat(kk * (1 - kk)));
                    }
                }
            }
        }
        out
    }
}

/// Row `j` of Pascal's triangle.
fn binomials(j: u32) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..j {
        let mut next = vec![1i64; row.len() + 1];
        for t in 1..row.len() {
            next[t] = row[t - 1] + row[t];
        }
        row = next;
    }
    row
}

/// Rewrites a combination of words into the PBW basis `f^i h^j e^k`.
pub fn pbw_normal_order(w: &EnvWord) -> PbwElement {
    let mut out = PbwElement::default();
    for (word, c) in w.terms() {
        let mut acc = PbwElement::one();
        for &g in word {
            acc = acc.mul_gen(g);
        }
        for (key, a) in acc.terms {
            out.accumulate(key, a * c);
        }
    }
    out
}

/// Polynomial in `h`; `coeffs[j]` multiplies `h^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HPoly {
    pub coeffs: Vec<Rational>,
}

impl HPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        let mut p = HPoly {
            coeffs: c.iter().map(|&x| rat(x)).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return HPoly::default();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        let mut p = HPoly { coeffs: c };
        p.trim();
        p
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let coef = if mag.is_one() && j > 0 {
                String::new()
            } else {
                fmt_rational(&mag)
            };
            match j {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}h")?,
                _ => write!(f, "{coef}h^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Projection onto `U(h)` along `f U(g) + U(g) e`: keeps the `f^0 h^j e^0` terms.
pub fn hc_project(p: &PbwElement) -> HPoly {
    let top = p
        .terms()
        .filter(|((i, _, k), _)| *i == 0 && *k == 0)
        .map(|((_, j, _), _)| *j)
        .max();
    let mut coeffs = vec![Rational::zero(); top.map_or(0, |t| t as usize + 1)];
    for (&(i, j, k), c) in p.terms() {
        if i == 0 && k == 0 {
            coeffs[j as usize] = c.clone();
        }
    }
    let mut h = HPoly { coeffs };
    h.trim();
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn pbw(terms: &[((u32, u32, u32), i64)]) -> PbwElement {
        let mut p = PbwElement::default();
        for &(k, c) in terms {
            p.accumulate(k, rat(c));
        }
        p
    }

    #[test]
    fn ef_reorders() {
        let got = pbw_normal_order(&EnvWord::word(&[E, F]));
        assert_eq!(got, pbw(&[((1, 0, 1), 1), ((0, 1, 0), 1)]));
    }

    #[test]
    fn casimir_pbw_and_projection() {
        // h^2 + 2ef + 2fe = h^2 + 2h + 4fe
        let got = pbw_normal_order(&EnvWord::casimir());
        assert_eq!(got, pbw(&[((0, 2, 0), 1), ((0, 1, 0), 2), ((1, 0, 1), 4)]));
        assert_eq!(hc_project(&got), HPoly::from_ints(&[0, 2, 1]));
        assert_eq!(hc_project(&got).to_string(), "h^2 + 2h");
    }

    #[test]
    fn projection_drops_and_keeps() {
        assert_eq!(
            hc_project(&pbw_normal_order(&EnvWord::word(&[F, E]))),
            HPoly::default()
        );
        assert_eq!(
            hc_project(&pbw_normal_order(&EnvWord::word(&[H, H]))),
            HPoly::from_ints(&[0, 0, 1])
        );
        assert_eq!(pbw_normal_order(&EnvWord::gen(H)), pbw(&[((0, 1, 0), 1)]));
    }

    #[test]
    fn hc_is_multiplicative_on_casimir_powers() {
        let gamma = hc_project(&pbw_normal_order(&EnvWord::casimir()));
        let gamma2 = hc_project(&pbw_normal_order(&EnvWord::casimir().pow(2)));
        assert_eq!(gamma2, gamma.mul(&gamma));
    }

    #[test]
    fn higher_commutations() {
        // e^2 f = f e^2 + 2he - 2e
        let got = pbw_normal_order(&EnvWord::word(&[E, E, F]));
        assert_eq!(got, pbw(&[((1, 0, 2), 1), ((0, 1, 1), 2), ((0, 0, 1), -2)]));
        // h^2 f = f (h - 2)^2 = f h^2 - 4 f h + 4 f
        let got = pbw_normal_order(&EnvWord::word(&[H, H, F]));
        assert_eq!(got, pbw(&[((1, 2, 0), 1), ((1, 1, 0), -4), ((1, 0, 0), 4)]));
    }
}
