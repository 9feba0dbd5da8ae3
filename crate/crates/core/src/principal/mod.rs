//! The principal `sl(2)` triple, the grading it induces, the decomposition
//! of `g` into irreducible summands and the splittings of `ad_y`, `ad_x`.

mod splitting;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

pub use splitting::{build_splittings, SplittingData};

use crate::error::{Error, Result};
use crate::exactalg::{kernel_image, Matrix, Scalar, SpanBasis};
use crate::liecore::{Element, LieAlgebra, LieType};

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalTriple {
    pub y: Element<Scalar>,
    pub h: Element<Scalar>,
    pub x: Element<Scalar>,
    pub rho_vee: Vec<Scalar>,
}

pub fn principal_triple(alg: &LieAlgebra) -> Result<PrincipalTriple> {
    let mut y = alg.zero();
    let mut h = alg.zero();
    let mut x = alg.zero();
    for (j, r) in alg.rho_vee().iter().enumerate() {
        let c = r * &Scalar::from_int(2);
        y = &y + &alg.f(j);
        h = &h + &alg.h(j).scale(&c);
        x = &x + &alg.e(j).scale(&c);
    }
    let t = PrincipalTriple {
        y,
        h,
        x,
        rho_vee: alg.rho_vee().to_vec(),
    };
    let two = Scalar::from_int(2);
    if alg.bracket(&t.h, &t.x) != t.x.scale(&two)
        || alg.bracket(&t.h, &t.y) != t.y.scale(&-&two)
        || alg.bracket(&t.x, &t.y) != t.h
    {
        return Err(Error::inconsistent(
            "principal triple fails the sl(2) relations",
        ));
    }
    for (name, n) in [("x", &t.x), ("y", &t.y)] {
        if !alg.is_regular(n)? {
            return Err(Error::inconsistent(format!("{name} is not regular")));
        }
    }
    Ok(t)
}

/// Eigenspaces `g_m` of `ad_h` with eigenvalue `2m`.
#[derive(Clone, Debug, Serialize)]
pub struct PrincipalGrading {
    pub pieces: BTreeMap<i32, Vec<Element<Scalar>>>,
}

impl PrincipalGrading {
    pub fn top(&self) -> i32 {
        *self.pieces.keys().next_back().expect("nonempty grading")
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.pieces.iter().map(|(m, b)| (*m, b.len())).collect()
    }

    pub fn piece(&self, m: i32) -> &[Element<Scalar>] {
        self.pieces.get(&m).map(Vec::as_slice).unwrap_or(&[])
    }
}

pub fn principal_grading(alg: &LieAlgebra, triple: &PrincipalTriple) -> Result<PrincipalGrading> {
    let d = alg.dim();
    let ad_h = alg.ad(&triple.h);
    if let Some(g) = diagonal_grading(&ad_h) {
        return Ok(g);
    }
    let mut pieces = BTreeMap::new();
    let mut total = 0;
    let bound = 2 * d as i32;
    for m in -bound..=bound {
        let shifted = ad_h.sub(&Matrix::identity(d).scale(&Scalar::from_int(2 * m as i64)))?;
        let ker = kernel_image(&shifted)?.kernel;
        if !ker.is_empty() {
            total += ker.len();
            pieces.insert(m, ker.into_iter().map(Element::from_coords).collect());
        }
    }
    if total != d {
        return Err(Error::inconsistent(
            "ad_h is not diagonalizable with even eigenvalues",
        ));
    }
    Ok(PrincipalGrading { pieces })
}

/// Reads the grading off directly when the basis already consists of
/// `ad_h` eigenvectors.
fn diagonal_grading(ad_h: &Matrix<Scalar>) -> Option<PrincipalGrading> {
    let d = ad_h.rows();
    let mut pieces: BTreeMap<i32, Vec<Element<Scalar>>> = BTreeMap::new();
    for i in 0..d {
        if (0..d).any(|j| j != i && !ad_h.get(i, j).is_zero()) {
            return None;
        }
        let ev = ad_h.get(i, i).to_i64()?;
        if ev % 2 != 0 {
            return None;
        }
        pieces
            .entry((ev / 2) as i32)
            .or_default()
            .push(Element::basis(d, i));
    }
    Some(PrincipalGrading { pieces })
}

/// One irreducible summand `W_i`, with weight vectors `e_k`, `k = -m..=m`.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub exponent: u32,
    weights: Vec<Element<Scalar>>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// The weight vector `e_k`, `-m ≤ k ≤ m`.
    pub fn weight(&self, k: i32) -> &Element<Scalar> {
        let m = self.exponent as i32;
        assert!((-m..=m).contains(&k), "weight out of range");
        &self.weights[(k + m) as usize]
    }

    pub fn highest(&self) -> &Element<Scalar> {
        self.weights.last().expect("nonempty")
    }

    pub fn lowest(&self) -> &Element<Scalar> {
        &self.weights[0]
    }

    /// Weight vectors from lowest to highest.
    pub fn weights(&self) -> &[Element<Scalar>] {
        &self.weights
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicDecomposition {
    pub components: Vec<Component>,
    /// Highest weight vectors normalized to leading coordinate 1.
    pub zx_basis: Vec<Element<Scalar>>,
    /// Lowest weight vectors normalized to leading coordinate 1.
    pub zy_basis: Vec<Element<Scalar>>,
}

impl IsotypicDecomposition {
    pub fn exponents(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.exponent).collect()
    }

    /// Largest exponent.
    pub fn coxeter(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.exponent)
            .max()
            .unwrap_or(0)
    }
}

/// Rescales so the first nonzero coordinate is 1.
pub fn normalize_leading(v: &Element<Scalar>) -> Element<Scalar> {
    match v.coords().iter().find(|c| !c.is_zero()) {
        Some(c) => v.scale(&c.inv().expect("nonzero")),
        None => v.clone(),
    }
}

pub fn isotypic_decomposition(
    alg: &LieAlgebra,
    triple: &PrincipalTriple,
    grading: &PrincipalGrading,
) -> Result<IsotypicDecomposition> {
    let d = alg.dim();
    let mut components = Vec::new();
    for (&m, piece) in grading.pieces.range(1..) {
        let cols: Vec<Vec<Scalar>> = piece
            .iter()
            .map(|g| alg.bracket(&triple.x, g).into_coords())
            .collect();
        let ker = kernel_image(&Matrix::from_columns(d, &cols))?.kernel;
        let mut hws: Vec<Element<Scalar>> = ker
            .iter()
            .map(|coef| {
                let mut v = alg.zero();
                for (c, g) in coef.iter().zip(piece) {
                    v.add_scaled(g, c);
                }
                normalize_leading(&v)
            })
            .collect();
        if hws.len() > 1 {
            hws = separate_multiplicity(alg, triple, m as u32, hws)?;
        }
        for hw in hws {
            let mut weights = vec![hw];
            for _ in 0..2 * m {
                let next = alg.bracket(&triple.y, weights.last().unwrap());
                weights.push(next);
            }
            if weights.iter().any(Element::is_zero)
                || !alg.bracket(&triple.y, weights.last().unwrap()).is_zero()
            {
                return Err(Error::inconsistent(format!(
                    "highest weight vector of weight {m} has the wrong string"
                )));
            }
            weights.reverse();
            components.push(Component {
                exponent: m as u32,
                weights,
            });
        }
    }
    let total: usize = components.iter().map(Component::dim).sum();
    if total != d {
        return Err(Error::inconsistent(format!(
            "summands have total dimension {total}, expected {d}"
        )));
    }
    if components.len() != alg.rank() || components.first().map(|c| c.exponent) != Some(1) {
        return Err(Error::inconsistent(
            "wrong number of summands or smallest exponent is not 1",
        ));
    }
    let zx_basis = components.iter().map(|c| c.highest().clone()).collect();
    let zy_basis = components
        .iter()
        .map(|c| normalize_leading(c.lowest()))
        .collect();
    let dec = IsotypicDecomposition {
        components,
        zx_basis,
        zy_basis,
    };
    check_orthogonal(alg, &dec)?;
    Ok(dec)
}

/// Chooses highest weight vectors for a repeated exponent so that the
/// summands are orthogonal for both `κ` and the hermitian product.
///
/// In type D the diagram automorphism commutes with the triple and with
/// the compact involution, so its eigenvectors are a good starting basis;
/// Gram–Schmidt for `B(a, b) = κ(a, ad_y^{2m} b)` then finishes the job.
fn separate_multiplicity(
    alg: &LieAlgebra,
    triple: &PrincipalTriple,
    m: u32,
    hws: Vec<Element<Scalar>>,
) -> Result<Vec<Element<Scalar>>> {
    let mut start = hws.clone();
    if alg.kind() == LieType::D {
        let sigma = diagram_automorphism(alg)?;
        let mut span = SpanBasis::new();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for v in &hws {
            let sv = sigma(v)?;
            for (w, bucket) in [(v + &sv, &mut even), (v - &sv, &mut odd)] {
                if !w.is_zero() && span.insert(w.coords()) {
                    bucket.push(normalize_leading(&w));
                }
            }
        }
        even.extend(odd);
        start = even;
    }
    let lower = |b: &Element<Scalar>| {
        let mut v = b.clone();
        for _ in 0..2 * m {
            v = alg.bracket(&triple.y, &v);
        }
        v
    };
    let form = |a: &Element<Scalar>, b: &Element<Scalar>| alg.killing(a, &lower(b));
    let mut out: Vec<Element<Scalar>> = Vec::new();
    for v in start {
        let mut w = v.clone();
        for a in &out {
            let c = form(&w, a).checked_div(&form(a, a))?;
            w = &w - &a.scale(&c);
        }
        if form(&w, &w).is_zero() {
            return Err(Error::inconsistent(
                "isotropic highest weight vector in Gram–Schmidt",
            ));
        }
        out.push(normalize_leading(&w));
    }
    Ok(out)
}

/// The automorphism of `so(2l)` swapping the last two simple roots,
/// realized as conjugation by the transposition of `l` and `l'`.
fn diagram_automorphism(
    alg: &LieAlgebra,
) -> Result<impl Fn(&Element<Scalar>) -> Result<Element<Scalar>> + '_> {
    let n = alg.matrix_size();
    let l = n / 2;
    let mut s = Matrix::identity(n);
    let (a, b) = (l - 1, 2 * l - 1);
    s.set(a, a, Scalar::zero());
    s.set(b, b, Scalar::zero());
    s.set(a, b, Scalar::one());
    s.set(b, a, Scalar::one());
    Ok(move |v: &Element<Scalar>| {
        let m = alg.to_matrix(v);
        alg.from_matrix(&s.mul(&m)?.mul(&s)?)
    })
}

/// Summands are pairwise orthogonal for `κ` and the hermitian product.
fn check_orthogonal(alg: &LieAlgebra, dec: &IsotypicDecomposition) -> Result<()> {
    let d = alg.dim();
    let cols: Vec<Vec<Scalar>> = dec
        .components
        .iter()
        .flat_map(|c| c.weights.iter().map(|w| w.coords().to_vec()))
        .collect();
    let owner: Vec<usize> = dec
        .components
        .iter()
        .enumerate()
        .flat_map(|(i, c)| std::iter::repeat_n(i, c.dim()))
        .collect();
    let w = Matrix::from_columns(d, &cols);
    let wt = w.transpose();
    let kappa = wt.mul(alg.killing_matrix())?.mul(&w)?;
    let herm = wt
        .mul(alg.killing_matrix())?
        .mul(&alg.theta().scale(&-Scalar::one()))?
        .mul(&w)?;
    for i in 0..d {
        for j in 0..d {
            if owner[i] != owner[j] && (!kappa.get(i, j).is_zero() || !herm.get(i, j).is_zero()) {
                return Err(Error::inconsistent(
                    "irreducible summands are not orthogonal",
                ));
            }
        }
    }
    Ok(())
}

/// Everything determined by the principal triple, built and checked once.
#[derive(Clone, Debug)]
pub struct Principal {
    pub triple: PrincipalTriple,
    pub grading: PrincipalGrading,
    pub decomposition: IsotypicDecomposition,
    pub splitting: SplittingData,
}

impl Principal {
    pub fn new(alg: &LieAlgebra) -> Result<Self> {
        let triple = principal_triple(alg)?;
        let grading = principal_grading(alg, &triple)?;
        let decomposition = isotypic_decomposition(alg, &triple, &grading)?;
        let splitting = build_splittings(alg, &triple, &decomposition)?;
        Ok(Principal {
            triple,
            grading,
            decomposition,
            splitting,
        })
    }

    pub fn coxeter(&self) -> u32 {
        self.decomposition.coxeter()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.decomposition.exponents()
    }

    pub fn dump(&self) -> PrincipalDump {
        PrincipalDump {
            exponents: self.exponents(),
            triple: self.triple.clone(),
            components: self
                .decomposition
                .components
                .iter()
                .map(|c| {
                    (
                        c.exponent,
                        c.weights.iter().map(|w| w.coords().to_vec()).collect(),
                    )
                })
                .collect(),
            p: rows(&self.splitting.p),
            q: rows(&self.splitting.q),
            pi: rows(&self.splitting.pi),
        }
    }
}

fn rows(m: &Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalDump {
    pub exponents: Vec<u32>,
    pub triple: PrincipalTriple,
    pub components: Vec<(u32, Vec<Vec<Scalar>>)>,
    pub p: Vec<Vec<Scalar>>,
    pub q: Vec<Vec<Scalar>>,
    pub pi: Vec<Vec<Scalar>>,
}

/// Exponents of the simple Lie algebra of the given classical type, from
/// the standard tables.
pub fn classical_exponents(kind: LieType, l: usize) -> Option<Vec<u32>> {
    let l32 = l as u32;
    let mut e: Vec<u32> = match kind {
        LieType::A => (1..=l32).collect(),
        LieType::B | LieType::C => (1..=l32).map(|k| 2 * k - 1).collect(),
        LieType::D => (1..l32).map(|k| 2 * k - 1).chain([l32 - 1]).collect(),
        _ => return None,
    };
    e.sort_unstable();
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::build_algebra;

    fn principal(k: LieType, l: usize) -> (LieAlgebra, Principal) {
        let g = build_algebra(k, l).unwrap();
        let p = Principal::new(&g).unwrap();
        (g, p)
    }

    #[test]
    fn sl2_triple() {
        let (g, p) = principal(LieType::A, 1);
        assert_eq!(p.triple.y, g.element_by_label("E21").unwrap());
        assert_eq!(p.triple.x, g.element_by_label("E12").unwrap());
        assert_eq!(p.triple.h, g.element_by_label("H1").unwrap());
        assert_eq!(p.exponents(), vec![1]);
        assert_eq!(
            p.grading.dims().into_iter().collect::<Vec<_>>(),
            vec![(-1, 1), (0, 1), (1, 1)]
        );
    }

    #[test]
    fn sl3_triple() {
        let (g, p) = principal(LieType::A, 2);
        let m = |s: &str| g.element_by_label(s).unwrap();
        let two = Scalar::from_int(2);
        assert_eq!(p.triple.x, (&m("E12") + &m("E23")).scale(&two));
        assert_eq!(p.triple.y, &m("E21") + &m("E32"));
        let hm = g.to_matrix(&p.triple.h);
        assert_eq!(
            (0..3)
                .map(|i| hm.get(i, i).to_i64().unwrap())
                .collect::<Vec<_>>(),
            vec![2, 0, -2]
        );
        assert_eq!(
            p.grading.dims().values().copied().collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 1]
        );
        assert_eq!(p.exponents(), vec![1, 2]);
    }

    #[test]
    fn sl4_top_piece() {
        let (_, p) = principal(LieType::A, 3);
        assert_eq!(p.grading.top(), 3);
        assert_eq!(p.grading.piece(3).len(), 1);
    }

    #[test]
    fn d4_exponents() {
        let (_, p) = principal(LieType::D, 4);
        assert_eq!(p.exponents(), vec![1, 3, 3, 5]);
    }

    #[test]
    fn exponent_table() {
        assert_eq!(
            classical_exponents(LieType::D, 4).unwrap(),
            vec![1, 3, 3, 5]
        );
        assert_eq!(classical_exponents(LieType::B, 3).unwrap(), vec![1, 3, 5]);
        assert_eq!(classical_exponents(LieType::A, 3).unwrap(), vec![1, 2, 3]);
    }
}
