//! Trivialization of the family of centralisers over the Kostant slice:
//! `Φ(h, u) = (h, u + P[h, u])` and its inverse
//! `Γ(h, v) = (h, Σ_k (-P ad_h)^k v)` on `z(x) × z(y)`.

mod checks;

use serde::Serialize;

pub use checks::{
    degree_bookkeeping, equivariance_check, generic_point, generic_verify, lemma_inclusion_check,
    symplectic_pullback_check, DegreeReport, EquivarianceReport, GenericReport, LemmaEntry,
    LemmaReport, PointMode, SymplecticFailure, SymplecticReport,
};

use crate::error::{Error, Result};
use crate::exactalg::{Coeff, Scalar};
use crate::liecore::{Element, LieAlgebra};
use crate::principal::Principal;

/// `(h, u)` with `h ∈ z(x)` and `u ∈ z(y + h)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentraliserPoint<R> {
    pub h: Element<R>,
    pub u: Element<R>,
}

impl<R: Coeff> CentraliserPoint<R> {
    /// The regular element `y + h` whose centraliser contains `u`.
    pub fn slice_point(&self, y: &Element<Scalar>) -> Element<R> {
        &y.lift() + &self.h
    }
}

/// `(h, v) ∈ z(x) × z(y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrivializedPoint<R> {
    pub h: Element<R>,
    pub v: Element<R>,
}

pub fn in_zx<R: Coeff>(alg: &LieAlgebra, p: &Principal, e: &Element<R>) -> bool {
    alg.bracket_scalar(&p.triple.x, e).is_zero()
}

pub fn in_zy<R: Coeff>(alg: &LieAlgebra, p: &Principal, e: &Element<R>) -> bool {
    alg.bracket_scalar(&p.triple.y, e).is_zero()
}

pub fn phi<R: Coeff>(
    alg: &LieAlgebra,
    p: &Principal,
    pt: &CentraliserPoint<R>,
) -> Result<TrivializedPoint<R>> {
    if !in_zx(alg, p, &pt.h) {
        return Err(Error::invalid("h is not in z(x)"));
    }
    let hu = alg.bracket(&pt.h, &pt.u);
    if !(&alg.bracket_scalar(&p.triple.y, &pt.u) + &hu).is_zero() {
        return Err(Error::invalid("u does not commute with y + h"));
    }
    let v = &pt.u + &p.splitting.apply_p(&hu)?;
    Ok(TrivializedPoint { h: pt.h.clone(), v })
}

/// The nonzero terms `(-Pπ ad_h)^k v`, `k = 0, 1, …`; there are at most
/// `𝗁 + 1` of them.
pub fn gamma_terms<R: Coeff>(
    alg: &LieAlgebra,
    p: &Principal,
    h: &Element<R>,
    v: &Element<R>,
) -> Vec<Element<R>> {
    let mut terms = Vec::new();
    let mut term = v.clone();
    while !term.is_zero() && terms.len() <= p.coxeter() as usize + 1 {
        let next = -p.splitting.apply_p_pi(&alg.bracket(h, &term));
        terms.push(term);
        term = next;
    }
    debug_assert!(term.is_zero(), "P π ad_h failed to be nilpotent");
    terms
}

pub fn gamma<R: Coeff>(
    alg: &LieAlgebra,
    p: &Principal,
    t: &TrivializedPoint<R>,
) -> Result<CentraliserPoint<R>> {
    if !in_zx(alg, p, &t.h) {
        return Err(Error::invalid("h is not in z(x)"));
    }
    if !in_zy(alg, p, &t.v) {
        return Err(Error::invalid("v is not in z(y)"));
    }
    let terms = gamma_terms(alg, p, &t.h, &t.v);
    if terms.len() > p.coxeter() as usize + 1 {
        return Err(Error::inconsistent("Γ series did not terminate"));
    }
    let mut u = Element::zero(alg.dim());
    for term in &terms {
        u = &u + term;
    }
    Ok(CentraliserPoint { h: t.h.clone(), u })
}

/// `Σ t_i v_i` and `Σ s_j w_j` over the highest and lowest weight bases.
pub fn trivialized_point<R: Coeff>(p: &Principal, t: &[R], s: &[R]) -> Result<TrivializedPoint<R>> {
    let dec = &p.decomposition;
    if t.len() != dec.zx_basis.len() || s.len() != dec.zy_basis.len() {
        return Err(Error::invalid("wrong number of coordinates"));
    }
    let dim = dec.zx_basis[0].dim();
    let combine = |c: &[R], basis: &[Element<Scalar>]| {
        let mut out = Element::zero(dim);
        for (x, b) in c.iter().zip(basis) {
            out.add_scaled(&b.lift(), x);
        }
        out
    };
    Ok(TrivializedPoint {
        h: combine(t, &dec.zx_basis),
        v: combine(s, &dec.zy_basis),
    })
}
