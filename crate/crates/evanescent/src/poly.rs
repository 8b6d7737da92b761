//! Exact-rational polynomials over the free commutative nonassociative algebra.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::magma::{Monomial, TypeVector, Variable};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q2(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable {0} is not bound")]
    Unbound(Variable),
    #[error("standard identity degree must be in 1..=5, got {0}")]
    DegreeOutOfRange(u32),
}

/// Finite sum of monomials with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn monomial(m: Monomial) -> Polynomial {
        Polynomial::term(q(1), m)
    }

    pub fn var(v: Variable) -> Polynomial {
        Polynomial::monomial(Monomial::leaf(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Variable) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Componentwise maximum of the term types.
    pub fn type_vector(&self) -> TypeVector {
        let mut out: Vec<u32> = Vec::new();
        for m in self.terms.keys() {
            let ty = m.type_vector();
            if ty.len() > out.len() {
                out.resize(ty.len(), 0);
            }
            for (i, d) in ty.entries().iter().enumerate() {
                out[i] = out[i].max(*d);
            }
        }
        TypeVector::new(out)
    }

    /// True when all terms share one type.
    pub fn is_homogeneous(&self) -> bool {
        let mut types = self.terms.keys().map(|m| m.type_vector());
        match types.next() {
            None => true,
            Some(first) => types.all(|t| t == first),
        }
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.terms.keys().flat_map(|m| m.variables()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// f(1, 1, ...) = sum of coefficients.
    pub fn evaluate_at_ones(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Bilinear extension of the magma product.
    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(Monomial::product(u, v), a * b);
            }
        }
        out
    }

    /// Homomorphic image under `v -> bindings[v]`.
    pub fn substitute(&self, bindings: &HashMap<Variable, Polynomial>) -> Result<Polynomial, PolyError> {
        let mut memo: HashMap<Monomial, Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let image = substitute_monomial(m, bindings, &mut memo)?;
            out = out + image.scale(c);
        }
        Ok(out)
    }

    /// Rename variables in every term.
    pub fn rename(&self, map: &impl Fn(Variable) -> Variable) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.rename(map), c.clone())))
    }

    /// Terms grouped by type.
    pub fn homogeneous_components(&self) -> BTreeMap<TypeVector, Polynomial> {
        let mut out: BTreeMap<TypeVector, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.type_vector()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// The coefficient vector over a fixed list of monomials, or `None` when
    /// some term falls outside the list.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Option<Vec<Rational>> {
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = vec![Rational::zero(); basis.len()];
        for (m, c) in &self.terms {
            out[*index.get(m)?] = c.clone();
        }
        Some(out)
    }
}

fn substitute_monomial(
    m: &Monomial,
    bindings: &HashMap<Variable, Polynomial>,
    memo: &mut HashMap<Monomial, Polynomial>,
) -> Result<Polynomial, PolyError> {
    if let Some(hit) = memo.get(m) {
        return Ok(hit.clone());
    }
    let image = match m.children() {
        None => {
            let v = m.as_leaf().expect("leaf");
            bindings.get(&v).cloned().ok_or(PolyError::Unbound(v))?
        }
        Some((a, b)) => {
            let pa = substitute_monomial(a, bindings, memo)?;
            let pb = substitute_monomial(b, bindings, memo)?;
            pa.multiply(&pb)
        }
    };
    memo.insert(m.clone(), image.clone());
    Ok(image)
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + rhs.clone()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.clone() - rhs.clone()
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // (permutation, is_even), Heap-free recursive construction
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (perm, even) in permutations(n - 1) {
        // insert n-1 at every position; moving it left by k adds k inversions
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            let inversions = perm.len() - pos;
            out.push((p, even == (inversions % 2 == 0)));
        }
    }
    out
}

/// The alternating sum over S_d of `(s1^2 - s1)((s2^2 - s2)(... (sd^2 - sd) t_{d+1}))`
/// with `s_k = t_{sigma(k)}`.
///
/// The factors act as left multiplications on `t_{d+1}`, so the chain is
/// nested to the right. A left-to-right chain would cancel to zero for
/// `d >= 2` by commutativity of the first product.
pub fn standard_baric_identity(d: u32) -> Result<Polynomial, PolyError> {
    if !(1..=5).contains(&d) {
        return Err(PolyError::DegreeOutOfRange(d));
    }
    let factor = |i: usize| {
        let t = Polynomial::var(Variable::new(i as u32 + 1).expect("index"));
        t.multiply(&t) - t
    };
    let tail = Polynomial::var(Variable::new(d + 1).expect("index"));
    let mut out = Polynomial::zero();
    for (perm, even) in permutations(d as usize) {
        let mut acc = tail.clone();
        for &i in perm.iter().rev() {
            acc = factor(i).multiply(&acc);
        }
        out = if even { out + acc } else { out - acc };
    }
    Ok(out)
}

/// Largest absolute numerator or denominator, a cheap size measure.
pub fn coefficient_height(p: &Polynomial) -> BigInt {
    p.terms().flat_map(|(_, c)| [c.numer().abs(), c.denom().abs()]).max().unwrap_or_else(BigInt::one)
}
