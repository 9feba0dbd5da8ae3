//! Multivariate polynomials over `Q(i)` with optional total-degree truncation.
//!
//! A truncation degree `N` turns the polynomial ring into the Artin ring
//! `Q(i)[t…]/m^{N+1}`: every stored monomial has degree `≤ N` and products
//! discard anything above.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::ring::Coeff;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: exps.into(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    fn remap(&self, map: &[usize], len: usize) -> Monomial {
        let mut exps: SmallVec<[u16; 8]> = SmallVec::from_elem(0, len);
        for (k, &e) in self.exps.iter().enumerate() {
            exps[map[k]] = e;
        }
        Monomial {
            deg: self.deg,
            exps,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

#[derive(Clone)]
pub struct PolyScalar {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Scalar>,
    truncation: Option<u32>,
}

fn min_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Shared variable list for a family of polynomials.
pub fn variables(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

impl PolyScalar {
    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(&[]), c);
        }
        PolyScalar {
            vars: Arc::new(Vec::new()),
            terms,
            truncation: None,
        }
    }

    /// The single variable `name`.
    pub fn var(name: &str) -> Self {
        Self::var_in(&variables(&[name]), 0)
    }

    /// Variable number `idx` of a shared list.
    pub fn var_in(vars: &Arc<Vec<String>>, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut exps = vec![0u16; vars.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::new(&exps), Scalar::one());
        PolyScalar {
            vars: vars.clone(),
            terms,
            truncation: None,
        }
    }

    /// Builds from `(exponents, coefficient)` pairs over `vars`.
    pub fn from_terms(
        vars: &Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Vec<u16>, Scalar)>,
        truncation: Option<u32>,
    ) -> Result<Self> {
        let mut p = PolyScalar {
            vars: vars.clone(),
            terms: BTreeMap::new(),
            truncation,
        };
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::invalid(
                    "exponent vector length does not match variables",
                ));
            }
            let m = Monomial::new(&exps);
            if truncation.is_some_and(|n| m.deg > n) {
                continue;
            }
            let e = p.terms.entry(m).or_insert_with(Scalar::zero);
            *e += &c;
        }
        p.terms.retain(|_, c| !c.is_zero());
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    /// Imposes `m^{n+1} = 0`, dropping monomials of degree above `n`.
    pub fn truncated(mut self, n: u32) -> Self {
        let n = self.truncation.map_or(n, |t| t.min(n));
        self.truncation = Some(n);
        self.terms.retain(|m, _| m.deg <= n);
        self
    }

    /// Forgets the truncation (the stored terms are unchanged).
    pub fn untruncated(mut self) -> Self {
        self.truncation = None;
        self
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.deg)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.deg)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::new(&vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_default()
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        PolyScalar {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.deg == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coefficient(&self, monomial: &[(&str, u16)]) -> Scalar {
        let mut exps = vec![0u16; self.vars.len()];
        for &(name, e) in monomial {
            match self.var_index(name) {
                Some(k) => exps[k] += e,
                None if e == 0 => {}
                None => return Scalar::zero(),
            }
        }
        self.terms
            .get(&Monomial::new(&exps))
            .cloned()
            .unwrap_or_default()
    }

    /// Highest power of `name` appearing.
    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(k) => self
                .terms
                .keys()
                .map(|m| m.exps[k] as u32)
                .max()
                .unwrap_or(0),
            None => 0,
        }
    }

    /// Whether every monomial has weighted degree `deg` (unlisted variables weigh 0).
    pub fn is_weighted_homogeneous(&self, weights: &BTreeMap<String, u32>, deg: u32) -> bool {
        let w: Vec<u32> = self
            .vars
            .iter()
            .map(|v| weights.get(v).copied().unwrap_or(0))
            .collect();
        self.terms.keys().all(|m| {
            m.exps
                .iter()
                .zip(&w)
                .map(|(&e, &wt)| e as u32 * wt)
                .sum::<u32>()
                == deg
        })
    }

    pub fn derivative(&self, name: &str) -> Self {
        let Some(k) = self.var_index(name) else {
            return PolyScalar {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
                truncation: self.truncation,
            };
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps[k];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[k] -= 1;
            terms.insert(
                Monomial {
                    deg: m.deg - 1,
                    exps,
                },
                c * &Scalar::from_int(e as i64),
            );
        }
        PolyScalar {
            vars: self.vars.clone(),
            terms,
            truncation: self.truncation,
        }
    }

    /// Evaluates with the given assignments; unassigned variables are an error.
    pub fn evaluate(&self, values: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let vals: Vec<Option<&Scalar>> = self.vars.iter().map(|v| values.get(v)).collect();
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = vals[k]
                    .ok_or_else(|| Error::invalid(format!("no value for {}", self.vars[k])))?;
                t = &t * &v.pow(e as u32);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Counterpart with the variable list extended to `vars` (a superset).
    fn aligned(&self, vars: &Arc<Vec<String>>) -> PolyScalar {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return PolyScalar {
                vars: vars.clone(),
                terms: self.terms.clone(),
                truncation: self.truncation,
            };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(&map, vars.len()), c.clone()))
            .collect();
        PolyScalar {
            vars: vars.clone(),
            terms,
            truncation: self.truncation,
        }
    }

    fn union_vars(a: &Arc<Vec<String>>, b: &Arc<Vec<String>>) -> Arc<Vec<String>> {
        if Arc::ptr_eq(a, b) || a == b || b.iter().all(|v| a.contains(v)) {
            return a.clone();
        }
        if a.iter().all(|v| b.contains(v)) {
            return b.clone();
        }
        let mut u = (**a).clone();
        u.extend(b.iter().filter(|v| !a.contains(v)).cloned());
        Arc::new(u)
    }

    fn same_vars(&self, other: &PolyScalar) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.deg == 0)
    }

    fn add_terms(&mut self, other: &PolyScalar, negate: bool) {
        let trunc = min_trunc(self.truncation, other.truncation);
        let other_aligned;
        let other = if other.terms.is_empty() || self.same_vars(other) {
            other
        } else {
            let u = Self::union_vars(&self.vars, &other.vars);
            if !Arc::ptr_eq(&u, &self.vars) {
                *self = self.aligned(&u);
            }
            other_aligned = other.aligned(&u);
            &other_aligned
        };
        for (m, c) in &other.terms {
            if trunc.is_some_and(|n| m.deg > n) {
                continue;
            }
            match self.terms.get_mut(m) {
                Some(e) => {
                    if negate {
                        *e -= c;
                    } else {
                        *e += c;
                    }
                    if e.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms
                        .insert(m.clone(), if negate { -c } else { c.clone() });
                }
            }
        }
        if trunc != self.truncation {
            self.truncation = trunc;
            if let Some(n) = trunc {
                self.terms.retain(|m, _| m.deg <= n);
            }
        }
    }

    fn mul_poly(&self, other: &PolyScalar) -> PolyScalar {
        let trunc = min_trunc(self.truncation, other.truncation);
        if self.is_constant() || other.is_constant() {
            let (c, p) = if self.is_constant() {
                (self.constant_term(), other)
            } else {
                (other.constant_term(), self)
            };
            let mut r = p.scale_by(&c);
            r.truncation = trunc;
            if let Some(n) = trunc {
                r.terms.retain(|m, _| m.deg <= n);
            }
            return r;
        }
        let (a, b);
        let (lhs, rhs) = if self.same_vars(other) {
            (self, other)
        } else {
            let u = Self::union_vars(&self.vars, &other.vars);
            a = self.aligned(&u);
            b = other.aligned(&u);
            (&a, &b)
        };
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &lhs.terms {
            for (m2, c2) in &rhs.terms {
                if trunc.is_some_and(|n| m1.deg + m2.deg > n) {
                    continue;
                }
                let c = c1 * c2;
                match terms.entry(m1.mul(m2)) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        PolyScalar {
            vars: lhs.vars.clone(),
            terms,
            truncation: trunc,
        }
    }

    fn scale_by(&self, s: &Scalar) -> PolyScalar {
        if s.is_zero() {
            return PolyScalar {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
                truncation: self.truncation,
            };
        }
        PolyScalar {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
            truncation: self.truncation,
        }
    }
}

impl PartialEq for PolyScalar {
    /// Value equality: variable order and truncation do not matter.
    fn eq(&self, other: &Self) -> bool {
        if self.same_vars(other) {
            return self.terms == other.terms;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let u = Self::union_vars(&self.vars, &other.vars);
        self.aligned(&u).terms == other.aligned(&u).terms
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Human-readable form, highest terms first: `3/2*a1^2*s1 + -1/1*a2`.
impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0/1");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if m.deg == 0 || !c.is_one() {
                let cs = c.to_string();
                parts.push(if c.is_real() { cs } else { format!("({cs})") });
            }
            for (k, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars[k].clone()),
                    _ => parts.push(format!("{}^{e}", self.vars[k])),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Zero for PolyScalar {
    fn zero() -> Self {
        PolyScalar {
            vars: Arc::new(Vec::new()),
            terms: BTreeMap::new(),
            truncation: None,
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PolyScalar {
    fn one() -> Self {
        PolyScalar::constant(Scalar::one())
    }
}

impl Add for PolyScalar {
    type Output = PolyScalar;
    fn add(mut self, rhs: PolyScalar) -> PolyScalar {
        self.add_terms(&rhs, false);
        self
    }
}

impl Sub for PolyScalar {
    type Output = PolyScalar;
    fn sub(mut self, rhs: PolyScalar) -> PolyScalar {
        self.add_terms(&rhs, true);
        self
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: PolyScalar) -> PolyScalar {
        self.mul_poly(&rhs)
    }
}

impl<'a> Mul<&'a PolyScalar> for &'a PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        self.mul_poly(rhs)
    }
}

impl<'a> Add<&'a PolyScalar> for &'a PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a PolyScalar> for &'a PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        self.sub_ref(rhs)
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(mut self) -> PolyScalar {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        self.add_terms(rhs, false);
    }
}

impl SubAssign<&PolyScalar> for PolyScalar {
    fn sub_assign(&mut self, rhs: &PolyScalar) {
        self.add_terms(rhs, true);
    }
}

impl From<Scalar> for PolyScalar {
    fn from(c: Scalar) -> Self {
        PolyScalar::constant(c)
    }
}

impl Coeff for PolyScalar {
    fn from_scalar(s: &Scalar) -> Self {
        PolyScalar::constant(s.clone())
    }

    fn scale(&self, s: &Scalar) -> Self {
        self.scale_by(s)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_poly(rhs)
    }

    fn as_scalar(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.constant_term())
    }

    fn add_scaled_assign(&mut self, a: &Self, s: &Scalar) {
        if s.is_zero() || a.terms.is_empty() {
            return;
        }
        if s.is_one() {
            self.add_terms(a, false);
        } else {
            self.add_terms(&a.scale_by(s), false);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: Vec<u16>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    variables: Vec<String>,
    truncation: Option<u32>,
    terms: Vec<TermRepr>,
}

impl Serialize for PolyScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            variables: (*self.vars).clone(),
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    monomial: m.exps.to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        let vars = Arc::new(r.variables);
        PolyScalar::from_terms(
            &vars,
            r.terms.into_iter().map(|t| (t.monomial, t.coeff)),
            r.truncation,
        )
        .map_err(serde::de::Error::custom)
    }
}
