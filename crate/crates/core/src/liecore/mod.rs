//! Classical simple Lie algebras in their defining representations.

mod classical;
mod element;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

pub use element::Element;

use crate::error::{Error, Result};
use crate::exactalg::{kernel_image, Coeff, Matrix, Scalar, SpanBasis};

/// Cartan–Killing type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
            LieType::E => "E",
            LieType::F => "F",
            LieType::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(Error::invalid(format!("unknown Lie type {other:?}"))),
        }
    }
}

/// Parses labels such as `A2`, `c3` or `D4`.
pub fn parse_label(label: &str) -> Result<(LieType, usize)> {
    let label = label.trim();
    let mut chars = label.chars();
    let head = chars
        .next()
        .ok_or_else(|| Error::invalid("empty algebra label"))?;
    let kind: LieType = head.to_string().parse()?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::invalid(format!("bad rank in algebra label {label:?}")))?;
    if rank == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    Ok((kind, rank))
}

/// Dimension of the simple Lie algebra of the given classical type.
pub fn classical_dimension(kind: LieType, l: usize) -> Option<usize> {
    match kind {
        LieType::A => Some(l * (l + 2)),
        LieType::B | LieType::C => Some(l * (2 * l + 1)),
        LieType::D => Some(l * (2 * l - 1)),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChevalleyTriple {
    pub e: usize,
    pub h: usize,
    pub f: usize,
}

/// Kernel of `ad_u` together with the regularity flag.
#[derive(Clone, Debug)]
pub struct Centraliser {
    pub basis: Vec<Element<Scalar>>,
    pub is_regular: bool,
}

/// A classical simple Lie algebra with a fixed matrix basis.
///
/// Everything is computed once in [`build_algebra`] and checked there; the
/// value is immutable afterwards.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    kind: LieType,
    rank: usize,
    size: usize,
    labels: Vec<String>,
    matrices: Vec<Matrix<Scalar>>,
    structure: Vec<Vec<(usize, Scalar)>>,
    chevalley: Vec<ChevalleyTriple>,
    cartan: Matrix<Scalar>,
    killing: Matrix<Scalar>,
    rho_vee: Vec<Scalar>,
    theta: Matrix<Scalar>,
    coord_rows: Vec<usize>,
    coord_inv: Matrix<Scalar>,
}

pub fn build_algebra(kind: LieType, rank: usize) -> Result<LieAlgebra> {
    if rank == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    let real = classical::realize(kind, rank)?;
    let dim = real.matrices.len();
    if Some(dim) != classical_dimension(kind, rank) {
        return Err(Error::inconsistent(format!(
            "{kind}{rank}: basis has {dim} elements"
        )));
    }
    for (m, label) in real.matrices.iter().zip(&real.labels) {
        let ok = match &real.form {
            None => classical::is_traceless(m),
            Some(j) => classical::preserves_form(m, j),
        };
        if !ok {
            return Err(Error::inconsistent(format!(
                "{label} is not in the algebra"
            )));
        }
    }

    let (coord_rows, coord_inv) = coordinate_chart(&real.matrices, real.size)?;
    let mut alg = LieAlgebra {
        kind,
        rank,
        size: real.size,
        labels: real.labels,
        matrices: real.matrices,
        structure: Vec::new(),
        chevalley: real
            .chevalley
            .iter()
            .map(|&(e, h, f)| ChevalleyTriple { e, h, f })
            .collect(),
        cartan: Matrix::zeros(rank, rank),
        killing: Matrix::zeros(dim, dim),
        rho_vee: Vec::new(),
        theta: Matrix::identity(dim),
        coord_rows,
        coord_inv,
    };
    alg.structure = alg.compute_structure()?;
    alg.check_jacobi()?;
    alg.cartan = alg.compute_cartan()?;
    alg.killing = alg.compute_killing();
    alg.check_killing()?;
    alg.rho_vee = alg.compute_rho_vee()?;
    alg.theta = alg.compute_theta()?;
    alg.check_hermitian()?;
    Ok(alg)
}

/// Picks matrix positions on which the basis restricts to an invertible
/// square system.
fn coordinate_chart(mats: &[Matrix<Scalar>], n: usize) -> Result<(Vec<usize>, Matrix<Scalar>)> {
    let flat: Vec<Vec<Scalar>> = mats
        .iter()
        .map(|m| (0..n * n).map(|p| m.get(p / n, p % n).clone()).collect())
        .collect();
    let stacked = Matrix::from_rows(flat.clone())?;
    let (_, rows) = stacked.rref();
    if rows.len() != mats.len() {
        return Err(Error::inconsistent("basis matrices are linearly dependent"));
    }
    let square = Matrix::from_rows(
        rows.iter()
            .map(|&p| flat.iter().map(|v| v[p].clone()).collect())
            .collect(),
    )?;
    let inv = square
        .inverse()
        .ok_or_else(|| Error::inconsistent("coordinate chart is singular"))?;
    Ok((rows, inv))
}

impl LieAlgebra {
    pub fn kind(&self) -> LieType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Size `n` of the defining `n × n` matrices.
    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_matrix(&self, i: usize) -> &Matrix<Scalar> {
        &self.matrices[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_element<R: Coeff>(&self, i: usize) -> Element<R> {
        Element::basis(self.dim(), i)
    }

    pub fn element_by_label(&self, label: &str) -> Result<Element<Scalar>> {
        let i = self
            .index_of(label)
            .ok_or_else(|| Error::invalid(format!("no basis element {label:?}")))?;
        Ok(self.basis_element(i))
    }

    pub fn zero<R: Coeff>(&self) -> Element<R> {
        Element::zero(self.dim())
    }

    pub fn chevalley(&self) -> &[ChevalleyTriple] {
        &self.chevalley
    }

    pub fn e(&self, i: usize) -> Element<Scalar> {
        self.basis_element(self.chevalley[i].e)
    }

    pub fn f(&self, i: usize) -> Element<Scalar> {
        self.basis_element(self.chevalley[i].f)
    }

    pub fn h(&self, i: usize) -> Element<Scalar> {
        self.basis_element(self.chevalley[i].h)
    }

    /// `A_ij` with `[h_i, e_j] = A_ij e_j`.
    pub fn cartan_matrix(&self) -> &Matrix<Scalar> {
        &self.cartan
    }

    pub fn killing_matrix(&self) -> &Matrix<Scalar> {
        &self.killing
    }

    /// Coefficients of `ρ∨ = Σ ρ_j∨ h_j`.
    pub fn rho_vee(&self) -> &[Scalar] {
        &self.rho_vee
    }

    /// Nonzero structure constants `c_{ij}^k` of `[b_i, b_j]`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.structure[i * self.dim() + j]
    }

    /// Coordinates of a matrix in the basis; fails if it is not in the algebra.
    pub fn from_matrix(&self, m: &Matrix<Scalar>) -> Result<Element<Scalar>> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(Error::invalid("matrix has the wrong size"));
        }
        let n = self.size;
        let rhs: Vec<Scalar> = self
            .coord_rows
            .iter()
            .map(|&p| m.get(p / n, p % n).clone())
            .collect();
        let coords = self.coord_inv.mul_vec(&rhs)?;
        let u = Element::from_coords(coords);
        if &self.to_matrix(&u) != m {
            return Err(Error::invalid(format!("matrix is not in {}", self.label())));
        }
        Ok(u)
    }

    pub fn to_matrix<R: Coeff>(&self, u: &Element<R>) -> Matrix<R> {
        let mut out: Matrix<R> = Matrix::zeros(self.size, self.size);
        for (c, b) in u.coords().iter().zip(&self.matrices) {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.size {
                for j in 0..self.size {
                    let s = b.get(i, j);
                    if !s.is_zero() {
                        out.get_mut(i, j).add_scaled_assign(c, s);
                    }
                }
            }
        }
        out
    }

    pub fn bracket<R: Coeff>(&self, u: &Element<R>, v: &Element<R>) -> Element<R> {
        let d = self.dim();
        assert!(u.dim() == d && v.dim() == d, "element dimension mismatch");
        let mut out = vec![R::zero(); d];
        for (i, a) in u.coords().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.coords().iter().enumerate() {
                let sc = &self.structure[i * d + j];
                if b.is_zero() || sc.is_empty() {
                    continue;
                }
                let ab = a.mul_ref(b);
                for (k, c) in sc {
                    out[*k].add_scaled_assign(&ab, c);
                }
            }
        }
        Element::from_coords(out)
    }

    /// Bracket with a field element, avoiding coefficient products.
    pub fn bracket_scalar<R: Coeff>(&self, s: &Element<Scalar>, v: &Element<R>) -> Element<R> {
        let d = self.dim();
        let mut out = vec![R::zero(); d];
        for (i, a) in s.coords().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.coords().iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in &self.structure[i * d + j] {
                    out[*k].add_scaled_assign(b, &(a * c));
                }
            }
        }
        Element::from_coords(out)
    }

    /// Matrix of `[u, ·]` in the basis.
    pub fn ad<R: Coeff>(&self, u: &Element<R>) -> Matrix<R> {
        let d = self.dim();
        let mut m: Matrix<R> = Matrix::zeros(d, d);
        for (i, a) in u.coords().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in &self.structure[i * d + j] {
                    m.get_mut(*k, j).add_scaled_assign(a, c);
                }
            }
        }
        m
    }

    pub fn killing<R: Coeff>(&self, u: &Element<R>, v: &Element<R>) -> R {
        let mut acc = R::zero();
        for (i, a) in u.coords().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut kv = R::zero();
            for (j, b) in v.coords().iter().enumerate() {
                kv.add_scaled_assign(b, self.killing.get(i, j));
            }
            if !kv.is_zero() {
                acc.add_mul_assign(a, &kv);
            }
        }
        acc
    }

    /// Kernel of `ad_u`; `u` must have field coefficients.
    pub fn centraliser<R: Coeff>(&self, u: &Element<R>) -> Result<Centraliser> {
        let ad = self.ad(u).to_scalar().map_err(|_| {
            Error::unsupported(
                "centraliser needs field coefficients; use the generic rank check instead",
            )
        })?;
        let ki = kernel_image(&ad)?;
        let is_regular = ki.kernel.len() == self.rank;
        Ok(Centraliser {
            basis: ki.kernel.into_iter().map(Element::from_coords).collect(),
            is_regular,
        })
    }

    pub fn is_regular(&self, u: &Element<Scalar>) -> Result<bool> {
        Ok(self.dim() - self.ad(u).rank() == self.rank)
    }

    /// The linear automorphism `θ` with `e_j ↦ -(1/2ρ_j∨) f_j`,
    /// `f_j ↦ -2ρ_j∨ e_j`; the anti-linear involution is `η = θ ∘ conj`.
    pub fn theta(&self) -> &Matrix<Scalar> {
        &self.theta
    }

    pub fn eta(&self, u: &Element<Scalar>) -> Element<Scalar> {
        Element::from_coords(self.theta.apply(u.conj().coords()))
    }

    /// `u* = -η(u)`.
    pub fn compact_conjugate(&self, u: &Element<Scalar>) -> Element<Scalar> {
        -self.eta(u)
    }

    /// `(u, v) = κ(u, v*)`, linear in `u` and anti-linear in `v`.
    pub fn hermitian_product(&self, u: &Element<Scalar>, v: &Element<Scalar>) -> Scalar {
        self.killing(u, &self.compact_conjugate(v))
    }

    /// Human-readable linear combination of basis labels.
    pub fn format_element<R: Coeff + fmt::Display>(&self, u: &Element<R>) -> String {
        let parts: Vec<String> = u
            .coords()
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                if c.is_one() {
                    l.clone()
                } else {
                    format!("({c})*{l}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Serializable description of the algebra.
    pub fn dump(&self) -> AlgebraDump {
        let d = self.dim();
        let mut structure_constants = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.structure_constants(i, j) {
                    structure_constants.push((i, j, *k, c.clone()));
                }
            }
        }
        AlgebraDump {
            r#type: self.kind,
            rank: self.rank,
            dimension: d,
            labels: self.labels.clone(),
            matrices: self.matrices.iter().map(rows_of).collect(),
            structure_constants,
            cartan_matrix: rows_of(&self.cartan),
            chevalley: self.chevalley.clone(),
        }
    }

    fn compute_structure(&self) -> Result<Vec<Vec<(usize, Scalar)>>> {
        let d = self.dim();
        let mut out = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i + 1..d {
                let (a, b) = (&self.matrices[i], &self.matrices[j]);
                let comm = a.mul(b)?.sub(&b.mul(a)?)?;
                if comm.is_zero() {
                    continue;
                }
                let c = self.from_matrix(&comm).map_err(|_| {
                    Error::inconsistent(format!(
                        "[{}, {}] leaves the algebra",
                        self.labels[i], self.labels[j]
                    ))
                })?;
                let sparse: Vec<(usize, Scalar)> = c
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.clone()))
                    .collect();
                out[j * d + i] = sparse.iter().map(|(k, x)| (*k, -x)).collect();
                out[i * d + j] = sparse;
            }
        }
        Ok(out)
    }

    fn check_jacobi(&self) -> Result<()> {
        let d = self.dim();
        let bb = |i: usize, j: usize| -> &[(usize, Scalar)] { &self.structure[i * d + j] };
        let nested = |i: usize, j: usize, k: usize, acc: &mut Vec<Scalar>| {
            for (m, c) in bb(i, j) {
                for (n, c2) in bb(*m, k) {
                    acc[*n] += &(c * c2);
                }
            }
        };
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut acc = vec![Scalar::zero(); d];
                    nested(i, j, k, &mut acc);
                    nested(j, k, i, &mut acc);
                    nested(k, i, j, &mut acc);
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(Error::inconsistent(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_cartan(&self) -> Result<Matrix<Scalar>> {
        let l = self.rank;
        let mut a = Matrix::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                let ef = self.bracket(&self.e(i), &self.f(j));
                let expect = if i == j { self.h(i) } else { self.zero() };
                if ef != expect {
                    return Err(Error::inconsistent(format!(
                        "[e_{}, f_{}] is wrong",
                        i + 1,
                        j + 1
                    )));
                }
                if !self.bracket(&self.h(i), &self.h(j)).is_zero() {
                    return Err(Error::inconsistent("Cartan elements do not commute"));
                }
                let he = self.bracket(&self.h(i), &self.e(j));
                let c = he[self.chevalley[j].e].clone();
                if he != self.e(j).scale(&c)
                    || self.bracket(&self.h(i), &self.f(j)) != self.f(j).scale(&-&c)
                {
                    return Err(Error::inconsistent(
                        "Chevalley generators are not weight vectors",
                    ));
                }
                a.set(i, j, c);
            }
            if a.get(i, i) != &Scalar::from_int(2) {
                return Err(Error::inconsistent("Cartan matrix diagonal is not 2"));
            }
        }
        Ok(a)
    }

    fn compute_killing(&self) -> Matrix<Scalar> {
        let d = self.dim();
        let mut k = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let mut t = Scalar::zero();
                for a in 0..d {
                    for (m, c) in self.structure_constants(i, a) {
                        for (n, c2) in self.structure_constants(j, *m) {
                            if *n == a {
                                t += &(c * c2);
                            }
                        }
                    }
                }
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        k
    }

    fn check_killing(&self) -> Result<()> {
        if self.killing.rank() != self.dim() {
            return Err(Error::inconsistent("Killing form is degenerate"));
        }
        for (i, t) in self.chevalley.iter().enumerate() {
            if self.killing.get(t.e, t.f).real_signum() != Some(1) {
                return Err(Error::inconsistent(format!(
                    "κ(e_{0}, f_{0}) is not positive",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    fn compute_rho_vee(&self) -> Result<Vec<Scalar>> {
        let ones = vec![Scalar::one(); self.rank];
        let inv = self
            .cartan
            .transpose()
            .inverse()
            .ok_or_else(|| Error::inconsistent("Cartan matrix is singular"))?;
        inv.mul_vec(&ones)
    }

    fn compute_theta(&self) -> Result<Matrix<Scalar>> {
        let d = self.dim();
        let mut gens: Vec<(Element<Scalar>, Element<Scalar>)> = Vec::new();
        for j in 0..self.rank {
            let c = &self.rho_vee[j] * &Scalar::from_int(2);
            let ci = c.inv()?;
            gens.push((self.e(j), -self.f(j).scale(&ci)));
            gens.push((self.f(j), -self.e(j).scale(&c)));
        }
        let mut span = SpanBasis::new();
        let mut found: Vec<(Element<Scalar>, Element<Scalar>)> = Vec::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for g in &gens {
            if span.insert(g.0.coords()) {
                queue.push_back(found.len());
                found.push(g.clone());
            }
        }
        while let Some(idx) = queue.pop_front() {
            if span.dim() == d {
                break;
            }
            for g in &gens {
                let w = self.bracket(&found[idx].0, &g.0);
                if span.insert(w.coords()) {
                    let tw = self.bracket(&found[idx].1, &g.1);
                    queue.push_back(found.len());
                    found.push((w, tw));
                }
            }
        }
        if span.dim() != d {
            return Err(Error::inconsistent(
                "Chevalley generators do not generate the algebra",
            ));
        }
        let src = Matrix::from_columns(
            d,
            &found
                .iter()
                .map(|p| p.0.coords().to_vec())
                .collect::<Vec<_>>(),
        );
        let img = Matrix::from_columns(
            d,
            &found
                .iter()
                .map(|p| p.1.coords().to_vec())
                .collect::<Vec<_>>(),
        );
        let theta = img.mul(
            &src.inverse()
                .ok_or_else(|| Error::inconsistent("singular generator span"))?,
        )?;

        if theta.mul(&theta)? != Matrix::identity(d) {
            return Err(Error::inconsistent("θ is not an involution"));
        }
        for i in 0..d {
            let ti = Element::from_coords(theta.column(i));
            for j in i + 1..d {
                let tj = Element::from_coords(theta.column(j));
                let lhs = self.bracket(&ti, &tj);
                let rhs = theta.apply(
                    self.bracket(&self.basis_element(i), &self.basis_element(j))
                        .coords(),
                );
                if lhs.coords() != rhs.as_slice() {
                    return Err(Error::inconsistent("θ is not a Lie automorphism"));
                }
            }
        }
        Ok(theta)
    }

    /// Positive definiteness of the hermitian Gram matrix by exact
    /// symmetric elimination.
    fn check_hermitian(&self) -> Result<()> {
        let d = self.dim();
        let duals: Vec<Element<Scalar>> = (0..d)
            .map(|j| self.compact_conjugate(&self.basis_element(j)))
            .collect();
        let mut g = Matrix::zeros(d, d);
        for i in 0..d {
            for (j, dj) in duals.iter().enumerate() {
                g.set(i, j, self.killing(&self.basis_element(i), dj));
            }
        }
        if !positive_definite(&g) {
            return Err(Error::inconsistent(
                "hermitian product is not positive definite",
            ));
        }
        Ok(())
    }
}

/// Exact test that a hermitian matrix is positive definite: every pivot of
/// elimination without row exchanges is a positive rational.
pub fn positive_definite(g: &Matrix<Scalar>) -> bool {
    let n = g.rows();
    let mut m = g.clone();
    for k in 0..n {
        let p = m.get(k, k).clone();
        if !p.is_real() || p.real_signum() != Some(1) {
            return false;
        }
        let pinv = p.inv().expect("positive pivot");
        for i in k + 1..n {
            if m.get(i, k).is_zero() {
                continue;
            }
            let f = m.get(i, k) * &pinv;
            for j in k..n {
                let v = m.get(i, j) - &(&f * m.get(k, j));
                m.set(i, j, v);
            }
        }
    }
    true
}

fn rows_of(m: &Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// JSON form of a [`LieAlgebra`].
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDump {
    pub r#type: LieType,
    pub rank: usize,
    pub dimension: usize,
    pub labels: Vec<String>,
    pub matrices: Vec<Vec<Vec<Scalar>>>,
    pub structure_constants: Vec<(usize, usize, usize, Scalar)>,
    pub cartan_matrix: Vec<Vec<Scalar>>,
    pub chevalley: Vec<ChevalleyTriple>,
}
