//! Peirce polynomials, the derivation-like operators and evanescence tests.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::magma::{Monomial, TypeVector, Variable};
use crate::poly::{q, Polynomial, Rational};

/// Univariate polynomial in the formal letter `t`, coefficient `k` on `t^k`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct PeircePolynomial {
    coeffs: Vec<Rational>,
}

impl PeircePolynomial {
    pub fn zero() -> PeircePolynomial {
        PeircePolynomial::default()
    }

    pub fn new(mut coeffs: Vec<Rational>) -> PeircePolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PeircePolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> PeircePolynomial {
        PeircePolynomial::new(coeffs.iter().map(|c| q(*c)).collect())
    }

    /// `c t^k`
    pub fn monomial(c: Rational, k: usize) -> PeircePolynomial {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        PeircePolynomial::new(coeffs)
    }

    pub fn t() -> PeircePolynomial {
        PeircePolynomial::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &Rational) -> PeircePolynomial {
        PeircePolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t`.
    pub fn shift(&self) -> PeircePolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        PeircePolynomial { coeffs }
    }

    /// Divide by the monic `t - root`; returns the quotient and remainder.
    pub fn divide_linear(&self, root: &Rational) -> (PeircePolynomial, Rational) {
        if self.is_zero() {
            return (PeircePolynomial::zero(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (0..n).rev() {
            let value = &self.coeffs[k] + &carry * root;
            if k == 0 {
                return (PeircePolynomial::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }
}

impl Add for &PeircePolynomial {
    type Output = PeircePolynomial;
    fn add(self, rhs: &PeircePolynomial) -> PeircePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PeircePolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for PeircePolynomial {
    type Output = PeircePolynomial;
    fn add(self, rhs: PeircePolynomial) -> PeircePolynomial {
        &self + &rhs
    }
}

impl Neg for PeircePolynomial {
    type Output = PeircePolynomial;
    fn neg(self) -> PeircePolynomial {
        self.scale(&q(-1))
    }
}

impl Sub for PeircePolynomial {
    type Output = PeircePolynomial;
    fn sub(self, rhs: PeircePolynomial) -> PeircePolynomial {
        self + (-rhs)
    }
}

impl Mul for &PeircePolynomial {
    type Output = PeircePolynomial;
    fn mul(self, rhs: &PeircePolynomial) -> PeircePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return PeircePolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PeircePolynomial::new(out)
    }
}

impl Mul for PeircePolynomial {
    type Output = PeircePolynomial;
    fn mul(self, rhs: PeircePolynomial) -> PeircePolynomial {
        &self * &rhs
    }
}

impl fmt::Display for PeircePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Integer Peirce coefficients of a single monomial via the recursive rule.
fn monomial_counts(w: &Monomial, i: Variable) -> Vec<u64> {
    if w.degree_in(i) == 0 {
        return Vec::new();
    }
    match w.children() {
        None => vec![1],
        Some((a, b)) => {
            let ca = monomial_counts(a, i);
            let cb = monomial_counts(b, i);
            let mut out = vec![0u64; 1 + ca.len().max(cb.len())];
            for (k, c) in ca.iter().enumerate() {
                out[k + 1] += c;
            }
            for (k, c) in cb.iter().enumerate() {
                out[k + 1] += c;
            }
            out
        }
    }
}

/// Peirce coefficients of a monomial as nonnegative integers, `out[k]` on `t^k`.
pub fn monomial_peirce_counts(w: &Monomial, i: Variable) -> Vec<u64> {
    monomial_counts(w, i)
}

fn from_counts(counts: &[u64]) -> PeircePolynomial {
    PeircePolynomial::new(counts.iter().map(|c| q(*c as i64)).collect())
}

/// `∂_i f` by the rules `∂_i(t_j) = [i = j]`, `∂_i(uv) = t(∂_i u + ∂_i v)`.
pub fn peirce_recursive(f: &Polynomial, i: Variable) -> PeircePolynomial {
    let mut acc: Vec<Rational> = Vec::new();
    for (w, c) in f.terms() {
        for (k, n) in monomial_counts(w, i).into_iter().enumerate() {
            if acc.len() <= k {
                acc.resize(k + 1, Rational::zero());
            }
            acc[k] += c * q(n as i64);
        }
    }
    PeircePolynomial::new(acc)
}

/// `∂_i w` as the sum of `t^height` over leaves labelled `t_i`.
pub fn peirce_tree(w: &Monomial, i: Variable) -> PeircePolynomial {
    let heights = w.leaf_heights(i);
    let mut counts = vec![0u64; heights.iter().max().map_or(0, |h| *h as usize + 1)];
    for h in heights {
        counts[h as usize] += 1;
    }
    from_counts(&counts)
}

/// Linear extension of [`peirce_tree`].
pub fn peirce_tree_poly(f: &Polynomial, i: Variable) -> PeircePolynomial {
    f.terms().fold(PeircePolynomial::zero(), |acc, (w, c)| acc + peirce_tree(w, i).scale(c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvanescenceReport {
    pub peirce: BTreeMap<Variable, PeircePolynomial>,
    pub value_at_ones: Rational,
    pub is_peirce_evanescent: bool,
    pub is_evanescent_identity: bool,
}

impl EvanescenceReport {
    pub fn verdict(&self) -> &'static str {
        if self.is_evanescent_identity {
            "evanescent identity"
        } else if self.is_peirce_evanescent {
            "Peirce-evanescent, not an identity"
        } else {
            "not evanescent"
        }
    }
}

pub fn is_evanescent(f: &Polynomial) -> EvanescenceReport {
    let peirce: BTreeMap<Variable, PeircePolynomial> =
        f.variables().into_iter().map(|v| (v, peirce_recursive(f, v))).collect();
    let value_at_ones = f.evaluate_at_ones();
    let is_peirce_evanescent = !f.is_zero() && peirce.values().all(|p| p.is_zero());
    let is_evanescent_identity = is_peirce_evanescent && value_at_ones.is_zero();
    EvanescenceReport { peirce, value_at_ones, is_peirce_evanescent, is_evanescent_identity }
}

/// Derivation with `Δ(t_i) = h`, `Δ(t_j) = 0` otherwise, extended to `w`.
pub fn delta(w: &Monomial, i: Variable, h: &Polynomial) -> Polynomial {
    if w.degree_in(i) == 0 {
        return Polynomial::zero();
    }
    match w.children() {
        None => h.clone(),
        Some((a, b)) => {
            let pa = Polynomial::monomial(a.clone());
            let pb = Polynomial::monomial(b.clone());
            delta(a, i, h).multiply(&pb) + pa.multiply(&delta(b, i, h))
        }
    }
}

pub fn delta_poly(f: &Polynomial, i: Variable, h: &Polynomial) -> Polynomial {
    f.terms().fold(Polynomial::zero(), |acc, (w, c)| acc + delta(w, i, h).scale(c))
}

/// Components of `f(t_i + t)` grouped by degree in the fresh letter `t`,
/// from degree 0 up to `|f|_i`.
pub fn linearize(f: &Polynomial, i: Variable) -> Vec<Polynomial> {
    let mut bindings: HashMap<Variable, Polynomial> =
        f.variables().into_iter().map(|v| (v, Polynomial::var(v))).collect();
    bindings.insert(i, Polynomial::var(i) + Polynomial::var(Variable::FRESH));
    let expanded = f.substitute(&bindings).expect("all variables bound");
    let top = f.degree_in(i) as usize;
    let mut out = vec![Polynomial::zero(); top + 1];
    for (w, c) in expanded.terms() {
        out[w.degree_in(Variable::FRESH) as usize].add_term(w.clone(), c.clone());
    }
    out
}

/// A polynomial certified to be an evanescent identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub polynomial: Polynomial,
    pub type_vector: TypeVector,
    pub train: bool,
    pub report: EvanescenceReport,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an evanescent identity ({verdict})")]
pub struct NotEvanescent {
    pub verdict: &'static str,
}

impl Identity {
    /// Re-checks evanescence; `train` records whether the terms span
    /// several types.
    pub fn new(polynomial: Polynomial) -> Result<Identity, NotEvanescent> {
        let report = is_evanescent(&polynomial);
        if !report.is_evanescent_identity {
            return Err(NotEvanescent { verdict: report.verdict() });
        }
        Ok(Identity { type_vector: polynomial.type_vector(), train: !polynomial.is_homogeneous(), polynomial, report })
    }
}

/// `{"var": "x", "coeffs": ["0", "1"]}`, coefficients from `t^0` upward.
pub fn peirce_json(v: Variable, p: &PeircePolynomial) -> serde_json::Value {
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    serde_json::json!({ "var": v.name(), "coeffs": coeffs })
}
