//! The operators `L_e, L_f, L_h, R_h` obtained by differentiating the
//! `SL2` action on base affine space, and the identities they satisfy.

use serde::{Deserialize, Serialize};

use super::{EnvWord, Generator, WeylError, WeylOp};
use crate::scalar::rat;

/// `L_e = -x2 d1`.
pub fn l_e(order: usize) -> WeylOp {
    WeylOp::mono(order, -1, 0, 1, 1, 0)
}

/// `L_f = -x1 d2`.
pub fn l_f(order: usize) -> WeylOp {
    WeylOp::mono(order, -1, 1, 0, 0, 1)
}

/// `L_h = -x1 d1 + x2 d2`.
pub fn l_h(order: usize) -> WeylOp {
    WeylOp::mono(order, -1, 1, 0, 1, 0)
        .checked_add(&WeylOp::mono(order, 1, 0, 1, 0, 1))
        .expect("same order")
}

/// The Euler operator `R_h = x1 d1 + x2 d2`.
pub fn embed_r_h(order: usize) -> WeylOp {
    WeylOp::mono(order, 1, 1, 0, 1, 0)
        .checked_add(&WeylOp::mono(order, 1, 0, 1, 0, 1))
        .expect("same order")
}

fn image_of(g: Generator, order: usize) -> WeylOp {
    match g {
        Generator::E => l_e(order),
        Generator::F => l_f(order),
        Generator::H => l_h(order),
    }
}

/// Multiplicative extension of `e ↦ L_e`, `f ↦ L_f`, `h ↦ L_h`.
pub fn embed_l(w: &EnvWord, order: usize) -> WeylOp {
    let mut out = WeylOp::zero(order);
    for (word, c) in w.terms() {
        let mut acc = WeylOp::one(order);
        for &g in word {
            acc = acc.checked_mul(&image_of(g, order)).expect("same order");
        }
        out = out.checked_add(&acc.scale(c)).expect("same order");
    }
    out
}

/// `x1^2 d1^2 + 3 x1 d1 + 3 x2 d2 + x2^2 d2^2 + 2 x1 x2 d1 d2`, the image of
/// the Casimir element as written out by hand.
pub fn displayed_casimir(order: usize) -> WeylOp {
    [
        WeylOp::mono(order, 1, 2, 0, 2, 0),
        WeylOp::mono(order, 3, 1, 0, 1, 0),
        WeylOp::mono(order, 3, 0, 1, 0, 1),
        WeylOp::mono(order, 1, 0, 2, 0, 2),
        WeylOp::mono(order, 2, 1, 1, 1, 1),
    ]
    .iter()
    .fold(WeylOp::zero(order), |acc, t| {
        acc.checked_add(t).expect("same order")
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationRelation {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub holds: bool,
}

/// The six brackets `[L_e,L_f] = L_h`, `[L_e,L_h] = -2L_e`,
/// `[L_f,L_h] = 2L_f` and `[L_*, R_h] = 0`.
pub fn commutation_relations(order: usize) -> Result<Vec<CommutationRelation>, WeylError> {
    let (e, f, h, r) = (l_e(order), l_f(order), l_h(order), embed_r_h(order));
    let zero = WeylOp::zero(order);
    let cases = [
        ("[L_e, L_f] = L_h", &e, &f, h.clone()),
        ("[L_e, L_h] = -2 L_e", &e, &h, e.scale(&rat(-2))),
        ("[L_f, L_h] = 2 L_f", &f, &h, f.scale(&rat(2))),
        ("[L_e, R_h] = 0", &e, &r, zero.clone()),
        ("[L_f, R_h] = 0", &f, &r, zero.clone()),
        ("[L_h, R_h] = 0", &h, &r, zero),
    ];
    cases
        .into_iter()
        .map(|(name, a, b, expected)| {
            let computed = a.commutator(b)?;
            Ok(CommutationRelation {
                name: name.to_string(),
                holds: computed == expected,
                computed: computed.to_string(),
                expected: expected.to_string(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirReport {
    pub l_omega: String,
    pub r_side: String,
    pub displayed: String,
    pub hc_projection: String,
    /// `L(Ω) = R_h^2 + 2 R_h`.
    pub matches_r_side: bool,
    /// `L(Ω)` equals the hand-expanded operator.
    pub matches_displayed: bool,
    /// `γ_HC(Ω) = h^2 + 2h`.
    pub hc_is_h2_plus_2h: bool,
}

impl CasimirReport {
    pub fn passed(&self) -> bool {
        self.matches_r_side && self.matches_displayed && self.hc_is_h2_plus_2h
    }
}

pub fn casimir_identity_check(order: usize) -> Result<CasimirReport, WeylError> {
    let omega = EnvWord::casimir();
    let l_omega = embed_l(&omega, order);
    let r = embed_r_h(order);
    let r_side = r.checked_mul(&r)?.checked_add(&r.scale(&rat(2)))?;
    let displayed = displayed_casimir(order);
    let gamma = super::hc_project(&super::pbw_normal_order(&omega));
    Ok(CasimirReport {
        matches_r_side: l_omega == r_side,
        matches_displayed: l_omega == displayed,
        hc_is_h2_plus_2h: gamma == super::HPoly::from_ints(&[0, 2, 1]),
        l_omega: l_omega.to_string(),
        r_side: r_side.to_string(),
        displayed: displayed.to_string(),
        hc_projection: gamma.to_string(),
    })
}

/// Which side the module maps multiply on: `Left` means `d0(θ1, θ2) = a θ1 + b θ2`,
/// `Right` means `θ1 a + θ2 b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Free complex `A --d1--> A ⊕ A --d0--> A` with `d1(1) = (t1, t2)` and `d0`
/// given by the pair `(a, b)`.
#[derive(Debug, Clone)]
pub struct TwoTermComplex {
    pub name: String,
    pub side: Side,
    pub d0: (WeylOp, WeylOp),
    pub d1: (WeylOp, WeylOp),
}

impl TwoTermComplex {
    /// `d0 ∘ d1` evaluated on the generator.
    pub fn composition(&self) -> Result<WeylOp, WeylError> {
        let (a, b) = &self.d0;
        let (t1, t2) = &self.d1;
        match self.side {
            Side::Left => a.checked_mul(t1)?.checked_add(&b.checked_mul(t2)?),
            Side::Right => t1.checked_mul(a)?.checked_add(&t2.checked_mul(b)?),
        }
    }

    /// Resolution of `j_+ D(O_U)`: `d0(θ1, θ2) = d1 θ1 - x2 d2 θ2`, `d1(1) = (x2 d2, d1)`.
    pub fn undeformed() -> Self {
        let n = 1;
        TwoTermComplex {
            name: "undeformed resolution".into(),
            side: Side::Left,
            d0: (WeylOp::d1(n), WeylOp::mono(n, -1, 0, 1, 0, 1)),
            d1: (WeylOp::mono(n, 1, 0, 1, 0, 1), WeylOp::d1(n)),
        }
    }

    /// Left resolution of the deformed module:
    /// `d0(θ1, θ2) = θ1 d1 - θ2 (x2 d2 - s)`, `d1(1) = (x2 d2 - s, d1)`.
    pub fn deformed_left(order: usize) -> Self {
        let x2d2_s = x2d2_minus_s(order);
        TwoTermComplex {
            name: "deformed left resolution".into(),
            side: Side::Right,
            d0: (WeylOp::d1(order), x2d2_s.scale(&rat(-1))),
            d1: (x2d2_s, WeylOp::d1(order)),
        }
    }

    /// Resolution of the dual of the deformed module:
    /// `d0(θ1, θ2) = x2 d1 θ1 - (x2^2 d2 - x2 s) θ2`, `d1(1) = (x2 d2 - s, d1)`.
    pub fn deformed_dual(order: usize) -> Self {
        let x2 = WeylOp::x2(order);
        let b = x2
            .checked_mul(&x2d2_minus_s(order))
            .expect("same order")
            .scale(&rat(-1));
        TwoTermComplex {
            name: "deformed dual resolution".into(),
            side: Side::Left,
            d0: (WeylOp::mono(order, 1, 0, 1, 1, 0), b),
            d1: (x2d2_minus_s(order), WeylOp::d1(order)),
        }
    }

    /// The undeformed complex with `d1(1) = (x2 d2, d2)`; not a complex.
    pub fn perturbed() -> Self {
        let mut c = Self::undeformed();
        c.name = "perturbed (negative control)".into();
        c.d1.1 = WeylOp::d2(1);
        c
    }
}

fn x2d2_minus_s(order: usize) -> WeylOp {
    WeylOp::mono(order, 1, 0, 1, 0, 1)
        .checked_sub(&WeylOp::s(order))
        .expect("same order")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexCheck {
    pub name: String,
    pub composition: String,
    pub is_complex: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub complexes: Vec<ComplexCheck>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.complexes.iter().all(|c| c.is_complex)
    }
}

pub fn check_complex(c: &TwoTermComplex) -> Result<ComplexCheck, WeylError> {
    let comp = c.composition()?;
    Ok(ComplexCheck {
        name: c.name.clone(),
        is_complex: comp.is_zero(),
        composition: comp.to_string(),
    })
}

/// Verifies `d0 ∘ d1 = 0` for the undeformed and both deformed resolutions.
pub fn check_resolution_complexes(order: usize) -> Result<ResolutionReport, WeylError> {
    let complexes = [
        TwoTermComplex::undeformed(),
        TwoTermComplex::deformed_left(order),
        TwoTermComplex::deformed_dual(order),
    ]
    .iter()
    .map(check_complex)
    .collect::<Result<_, _>>()?;
    Ok(ResolutionReport { complexes })
}
