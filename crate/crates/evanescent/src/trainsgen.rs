//! Train evanescent identities `w - P_w` for the shapes [n], [n,1], [n,2]
//! and [n,1,1].
//!
//! `P_w` is computed two ways: by solving the Peirce system (closed forms per
//! shape, plus a generic exact solve) and by bottom-up rewriting modulo the
//! generator relations. Both work on role variables x, y, z; inputs in other
//! letters are renamed on the way in and back on the way out.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, Mutex};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::homgen::{rref, ExactMatrix};
use crate::magma::{enumerate, left_iterate, principal_power, Monomial, TypeVector, Variable};
use crate::peirce::{monomial_peirce_counts, Identity};
use crate::poly::{q, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    N,
    N1,
    N2,
    N11,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::N, Shape::N1, Shape::N2, Shape::N11];

    /// Type vector of degree `n` in role variables.
    pub fn type_vector(self, n: u32) -> TypeVector {
        match self {
            Shape::N => TypeVector::new(vec![n]),
            Shape::N1 => TypeVector::new(vec![n, 1]),
            Shape::N2 => TypeVector::new(vec![n, 2]),
            Shape::N11 => TypeVector::new(vec![n, 1, 1]),
        }
    }

    /// Number of basis monomials among the monomials of degree `n`.
    pub fn basis_count(self) -> usize {
        match self {
            Shape::N => 1,
            Shape::N1 | Shape::N2 => 2,
            Shape::N11 => 3,
        }
    }

    /// Smallest `n` with train identities.
    pub fn min_degree(self) -> u32 {
        match self {
            Shape::N => 4,
            Shape::N1 => 3,
            Shape::N2 | Shape::N11 => 2,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::N => "n",
            Shape::N1 => "n,1",
            Shape::N2 => "n,2",
            Shape::N11 => "n,1,1",
        })
    }
}

impl FromStr for Shape {
    type Err = TrainError;
    fn from_str(s: &str) -> Result<Shape, TrainError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '[' && *c != ']').collect();
        match t.as_str() {
            "n" => Ok(Shape::N),
            "n,1" => Ok(Shape::N1),
            "n,2" => Ok(Shape::N2),
            "n,1,1" => Ok(Shape::N11),
            _ => Err(TrainError::UnsupportedShape(s.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrainError {
    #[error("unsupported shape '{0}' (expected n, n,1, n,2 or n,1,1)")]
    UnsupportedShape(String),
    #[error("type {0} is not of a supported shape")]
    UnsupportedType(TypeVector),
    #[error("monomial of type {found} does not have shape [{expected}]")]
    ShapeMismatch { expected: Shape, found: TypeVector },
    #[error("basis monomial has no train identity")]
    BasisMonomial,
    #[error("no applicable rewrite rule for {0}")]
    NoRule(String),
    #[error("Peirce system has no unique solution")]
    Singular,
}

/// Assignment of actual variables to the roles x, y, z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roles {
    pub shape: Shape,
    pub n: u32,
    pub x: Variable,
    pub others: Vec<Variable>,
}

impl Roles {
    /// Reads the shape off a type vector. x is the variable of degree n; on
    /// ties the lower index wins, and y, z follow in index order.
    pub fn detect(ty: &TypeVector) -> Result<Roles, TrainError> {
        let vars: Vec<(Variable, u32)> = ty
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 0)
            .map(|(i, d)| (Variable::new(i as u32 + 1).expect("index"), *d))
            .collect();
        let unsupported = || TrainError::UnsupportedType(ty.clone());
        let roles = |shape, x: (Variable, u32), others: Vec<Variable>| Roles { shape, n: x.1, x: x.0, others };
        match vars.as_slice() {
            [a] => Ok(roles(Shape::N, *a, vec![])),
            [a, b] => {
                let (x, t) = if b.1 <= 2 {
                    (a, b)
                } else if a.1 <= 2 {
                    (b, a)
                } else {
                    return Err(unsupported());
                };
                let shape = if t.1 == 1 { Shape::N1 } else { Shape::N2 };
                Ok(roles(shape, *x, vec![t.0]))
            }
            [a, b, c] => {
                let ones: Vec<usize> = (0..3).filter(|i| [a, b, c][*i].1 == 1).collect();
                let xi = match ones.len() {
                    3 => 0,
                    2 => (0..3).find(|i| !ones.contains(i)).expect("one index left"),
                    _ => return Err(unsupported()),
                };
                let all = [a, b, c];
                let others = (0..3).filter(|i| *i != xi).map(|i| all[i].0).collect();
                Ok(roles(Shape::N11, *all[xi], others))
            }
            _ => Err(unsupported()),
        }
    }

    fn role_vars(&self) -> Vec<(Variable, Variable)> {
        let mut out = vec![(self.x, Variable::X)];
        for (v, r) in self.others.iter().zip([Variable::Y, Variable::Z]) {
            out.push((*v, r));
        }
        out
    }

    pub fn to_roles(&self, m: &Monomial) -> Monomial {
        let map = self.role_vars();
        m.rename(&|v| map.iter().find(|(a, _)| *a == v).map_or(v, |(_, r)| *r))
    }

    pub fn from_roles(&self, f: &Polynomial) -> Polynomial {
        let map = self.role_vars();
        f.rename(&|v| map.iter().find(|(_, r)| *r == v).map_or(v, |(a, _)| *a))
    }
}

/// Basis monomials in role variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// x^k
    Pow(u32),
    /// x^k t, k >= 2
    PowT(u32, Variable),
    /// x^{r} t
    IterT(u32, Variable),
    /// (x^{r} y) y, r >= 1
    IterYY(u32),
    /// x^{r} (y y)
    IterY2(u32),
    /// x^{r} ((x y) z)
    A(u32),
    /// x^{r} ((x z) y)
    B(u32),
    /// x^{r} (y z)
    C(u32),
}

fn leaf(v: Variable) -> Monomial {
    Monomial::leaf(v)
}

impl Kind {
    pub fn monomial(self) -> Monomial {
        let (x, y, z) = (Variable::X, Variable::Y, Variable::Z);
        let prod = Monomial::product;
        match self {
            Kind::Pow(k) => principal_power(x, k),
            Kind::PowT(k, t) => prod(&principal_power(x, k), &leaf(t)),
            Kind::IterT(r, t) => left_iterate(x, r, &leaf(t)),
            Kind::IterYY(r) => prod(&left_iterate(x, r, &leaf(y)), &leaf(y)),
            Kind::IterY2(r) => left_iterate(x, r, &prod(&leaf(y), &leaf(y))),
            Kind::A(r) => left_iterate(x, r, &prod(&prod(&leaf(x), &leaf(y)), &leaf(z))),
            Kind::B(r) => left_iterate(x, r, &prod(&prod(&leaf(x), &leaf(z)), &leaf(y))),
            Kind::C(r) => left_iterate(x, r, &prod(&leaf(y), &leaf(z))),
        }
    }

    /// Degree in x.
    pub fn x_degree(self) -> u32 {
        match self {
            Kind::Pow(k) | Kind::PowT(k, _) => k,
            Kind::IterT(r, _) | Kind::IterYY(r) | Kind::IterY2(r) | Kind::C(r) => r,
            Kind::A(r) | Kind::B(r) => r + 1,
        }
    }
}

/// Strip leading `x(...)` factors: `w = x^{r} core`.
fn peel_x(w: &Monomial) -> (u32, Monomial) {
    let x = leaf(Variable::X);
    let mut r = 0;
    let mut rest = w.clone();
    while let Some((a, b)) = rest.children() {
        let other = if *a == x && *b != x {
            b.clone()
        } else if *b == x && *a != x {
            a.clone()
        } else {
            break;
        };
        r += 1;
        rest = other;
    }
    (r, rest)
}

/// The basis element `w` is, if any. `w` must be in role variables.
pub fn classify(w: &Monomial) -> Option<Kind> {
    let (x, y, z) = (Variable::X, Variable::Y, Variable::Z);
    let dx = w.degree_in(x);
    let others: Vec<(Variable, u32)> =
        w.variables().into_iter().filter(|v| *v != x).map(|v| (v, w.degree_in(v))).collect();
    let candidate = match others.as_slice() {
        [] => Kind::Pow(dx),
        [(t, 1)] => {
            if dx >= 2 && Kind::PowT(dx, *t).monomial() == *w {
                return Some(Kind::PowT(dx, *t));
            }
            Kind::IterT(dx, *t)
        }
        [(v, 2)] if *v == y => {
            let (r, _) = peel_x(w);
            if r == dx {
                Kind::IterY2(r)
            } else if r == 0 && dx >= 1 {
                Kind::IterYY(dx)
            } else {
                return None;
            }
        }
        [(v, 1), (u, 1)] if *v == y && *u == z => {
            let (r, core) = peel_x(w);
            if r == dx {
                Kind::C(r)
            } else if r + 1 == dx {
                let xy = Monomial::product(&leaf(x), &leaf(y));
                if core == Monomial::product(&xy, &leaf(z)) {
                    Kind::A(r)
                } else {
                    Kind::B(r)
                }
            } else {
                return None;
            }
        }
        _ => return None,
    };
    (candidate.monomial() == *w).then_some(candidate)
}

fn combo(terms: &[(i64, Kind)]) -> Polynomial {
    Polynomial::from_terms(terms.iter().map(|(c, k)| (k.monomial(), q(*c))))
}

/// `sum_{i in range} x^{i}((xy)z + (xz)y - 2yz)`
fn abc_sum(range: std::ops::Range<u32>) -> Polynomial {
    range.fold(Polynomial::zero(), |acc, i| acc + combo(&[(1, Kind::A(i)), (1, Kind::B(i)), (-2, Kind::C(i))]))
}

/// `x^{i}((x t) u)` for the ordered pair of letters (t, u).
fn mixed(t: Variable, i: u32) -> Kind {
    if t == Variable::Y {
        Kind::A(i)
    } else {
        Kind::B(i)
    }
}

/// Normal form of the product of two basis elements whose product is not
/// itself a basis element.
fn rewrite_pair(a: Kind, b: Kind) -> Option<Polynomial> {
    use Kind::*;
    let (y, z) = (Variable::Y, Variable::Z);
    let out = match (a, b) {
        (Pow(p), Pow(q)) if p >= 2 && q >= 2 => combo(&[(1, Pow(p + 1)), (1, Pow(q + 1)), (-1, Pow(2))]),
        (Pow(p), IterT(r, t)) => combo(&[(1, PowT(p, t)), (1, IterT(r + 1, t)), (-1, IterT(1, t))]),
        (Pow(p), PowT(k, t)) => {
            combo(&[(1, IterT(2, t)), (1, PowT(p, t)), (1, PowT(k + 1, t)), (-1, PowT(2, t)), (-1, IterT(1, t))])
        }
        (Pow(p), IterYY(r)) => combo(&[
            (2, IterYY(p - 1)),
            (1, IterYY(r + 1)),
            (-1, IterY2(p - 1)),
            (-1, IterYY(1)),
            (1, IterY2(1)),
            (-1, IterY2(0)),
        ]),
        (Pow(p), IterY2(r)) => combo(&[(2, IterYY(p - 1)), (-1, IterY2(p - 1)), (1, IterY2(r + 1)), (-1, IterY2(0))]),
        (PowT(p, t), PowT(k, u)) if t == y && u == y => combo(&[
            (2, IterYY(p)),
            (2, IterYY(k)),
            (-1, IterY2(p)),
            (-1, IterY2(k)),
            (-2, IterYY(1)),
            (2, IterY2(1)),
            (-1, IterY2(0)),
        ]),
        (PowT(p, t), IterT(r, u)) if t == y && u == y => {
            combo(&[(2, IterYY(p)), (1, IterYY(r)), (-1, IterY2(p)), (-1, IterYY(1)), (1, IterY2(1)), (-1, IterY2(0))])
        }
        (IterT(r, t), IterT(s, u)) if t == y && u == y => combo(&[(1, IterYY(r)), (1, IterYY(s)), (-1, IterY2(0))]),
        (Pow(p), C(r)) => abc_sum(0..p - 1) + combo(&[(-1, C(p - 1)), (1, C(r + 1)), (1, C(0))]),
        (Pow(p), A(r)) => abc_sum(0..p - 1) + combo(&[(1, A(r + 1)), (-1, C(p - 1)), (1, C(0))]),
        (Pow(p), B(r)) => abc_sum(0..p - 1) + combo(&[(1, B(r + 1)), (-1, C(p - 1)), (1, C(0))]),
        (IterT(r, t), IterT(s, u)) if t == y && u == z => {
            let mut out = combo(&[(1, C(0))]);
            for i in 0..r {
                out = out + combo(&[(1, A(i)), (-1, C(i))]);
            }
            for i in 0..s {
                out = out + combo(&[(1, B(i)), (-1, C(i))]);
            }
            out
        }
        (PowT(p, t), IterT(0, u)) if t != u => abc_sum(1..p) + combo(&[(-1, C(p)), (1, mixed(t, 0)), (1, C(1))]),
        (PowT(p, t), IterT(s, u)) if t != u => {
            let mut out = abc_sum(0..p) + combo(&[(-1, C(p)), (1, C(1)), (1, C(0))]);
            for i in 1..s {
                out = out + combo(&[(1, mixed(u, i)), (-1, C(i))]);
            }
            out
        }
        (PowT(p, t), PowT(k, u)) if t == y && u == z => {
            abc_sum(0..p) + abc_sum(1..k) + combo(&[(-1, C(p)), (-1, C(k)), (2, C(1)), (1, C(0))])
        }
        _ => return None,
    };
    Some(out)
}

static REDUCE_MEMO: LazyLock<Mutex<HashMap<Monomial, Polynomial>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Normal form of a monomial in role variables.
fn normal_form(w: &Monomial) -> Result<Polynomial, TrainError> {
    if let Some(hit) = REDUCE_MEMO.lock().expect("memo").get(w) {
        return Ok(hit.clone());
    }
    let out = if classify(w).is_some() {
        Polynomial::monomial(w.clone())
    } else {
        let (a, b) = w.children().expect("leaves are basis elements");
        let na = normal_form(a)?;
        let nb = normal_form(b)?;
        let mut out = Polynomial::zero();
        for (u, cu) in na.terms() {
            for (v, cv) in nb.terms() {
                let p = Monomial::product(u, v);
                let image = if classify(&p).is_some() {
                    Polynomial::monomial(p)
                } else {
                    let ku = classify(u).expect("normal form term");
                    let kv = classify(v).expect("normal form term");
                    rewrite_pair(ku, kv)
                        .or_else(|| rewrite_pair(kv, ku))
                        .ok_or_else(|| TrainError::NoRule(format!("{ku:?} * {kv:?}")))?
                };
                out = out + image.scale(&(cu * cv));
            }
        }
        out
    };
    REDUCE_MEMO.lock().expect("memo").insert(w.clone(), out.clone());
    Ok(out)
}

fn check_shape(w: &Monomial, shape: Shape) -> Result<Roles, TrainError> {
    let ty = w.type_vector();
    let roles = Roles::detect(&ty)?;
    if roles.shape != shape {
        return Err(TrainError::ShapeMismatch { expected: shape, found: ty });
    }
    Ok(roles)
}

/// `π(w)` by rewriting; a basis monomial is returned unchanged.
pub fn reduce(w: &Monomial, shape: Shape) -> Result<Polynomial, TrainError> {
    let roles = check_shape(w, shape)?;
    let nf = normal_form(&roles.to_roles(w))?;
    Ok(roles.from_roles(&nf))
}

/// Peirce coefficients of `w` in variable `v`, as rationals indexed by power.
fn coeffs(w: &Monomial, v: Variable, len: usize) -> Vec<Rational> {
    let c = monomial_peirce_counts(w, v);
    (0..len).map(|k| q(c.get(k).copied().unwrap_or(0) as i64)).collect()
}

fn pow2(k: i64) -> Rational {
    Rational::from_integer(num_bigint::BigInt::one() << (k as usize))
}

fn closed_form_roles(w: &Monomial, shape: Shape, n: u32) -> Polynomial {
    let len = n as usize + 3;
    let (x, y, z) = (Variable::X, Variable::Y, Variable::Z);
    let n = n as i64;
    let idx = |k: i64| k as usize;
    let mut out = Polynomial::zero();
    let mut add = |c: Rational, k: Kind| out.add_term(k.monomial(), c);
    match shape {
        Shape::N => {
            let alpha = coeffs(w, x, len);
            let p = alpha.iter().rposition(|c| !c.is_zero()).unwrap_or(0) as i64;
            let mut beta = vec![Rational::zero(); idx(p + 2)];
            beta[1] = &alpha[0] / q(2);
            let mut prefix = beta[1].clone();
            for k in 2..=p + 1 {
                beta[idx(k)] = &prefix + &alpha[idx(k - 1)] - q(1);
                prefix += &beta[idx(k)];
            }
            for k in 1..=p + 1 {
                add(beta[idx(k)].clone(), Kind::Pow(k as u32));
            }
        }
        Shape::N1 => {
            let alpha = coeffs(w, x, len);
            let beta = coeffs(w, y, len);
            let a = |k: i64| alpha[idx(k)].clone();
            let b = |k: i64| beta[idx(k)].clone();
            // 2 l_i + sum_{k>i} l_k = R_i with R_i = a_i - sum_{k>=i} b_k, for i >= 2
            let mut lambda = vec![Rational::zero(); idx(n + 1)];
            let mut tail = Rational::zero();
            let mut beta_tail = Rational::zero();
            for i in (2..=n).rev() {
                beta_tail += b(i);
                let r = a(i) - &beta_tail;
                lambda[idx(i)] = (r - &tail) / q(2);
                tail += &lambda[idx(i)];
            }
            lambda[1] = a(1) - q(1);
            let total: Rational = lambda.iter().sum();
            // x^1 y and x^{1} y coincide: lambda_1 + mu_1 on x y
            add(lambda[1].clone() + b(1) - total, Kind::IterT(1, y));
            for k in 2..=n {
                add(lambda[idx(k)].clone(), Kind::PowT(k as u32, y));
                add(b(k), Kind::IterT(k as u32, y));
            }
        }
        Shape::N2 => {
            let lam = coeffs(w, x, len);
            let mu = coeffs(w, y, len);
            let s = |k: i64| &mu[idx(k)] + &lam[idx(k)];
            for i in 1..=n {
                let mut alpha = lam[idx(i + 1)].clone();
                let mut beta = (&mu[idx(i + 1)] - &lam[idx(i + 1)]) / q(2);
                for k in i + 2..=n + 1 {
                    alpha -= s(k) / pow2(k - i - 1);
                    beta += s(k) / pow2(k - i);
                }
                add(alpha, Kind::IterYY(i as u32));
                add(beta, Kind::IterY2(i as u32));
            }
            let mut beta0 = q(1);
            for k in 2..=n + 1 {
                beta0 -= s(k) / pow2(k - 1);
            }
            add(beta0, Kind::IterY2(0));
        }
        Shape::N11 => {
            let al = coeffs(w, x, len);
            let be = coeffs(w, y, len);
            let ga = coeffs(w, z, len);
            let (a, b, g) = (|k: i64| al[idx(k)].clone(), |k: i64| be[idx(k)].clone(), |k: i64| ga[idx(k)].clone());
            for k in 0..n {
                let mut lambda = Rational::zero();
                let mut mu = Rational::zero();
                for i in k + 2..=n + 1 {
                    let e = pow2(i - k - 1);
                    lambda += (a(i) + b(i) - (&e - q(1)) * g(i)) / &e;
                    mu += (a(i) - (&e - q(1)) * b(i) + g(i)) / &e;
                }
                add(lambda, Kind::A(k as u32));
                add(mu, Kind::B(k as u32));
            }
            for k in 1..n {
                let mut nu = (-a(k + 1) + b(k + 1) + g(k + 1)) / q(2);
                for i in k + 2..=n + 1 {
                    let e = pow2(i - k);
                    nu += (q(-3) * a(i) + (&e - q(3)) * b(i) + (&e - q(3)) * g(i)) / &e;
                }
                add(nu, Kind::C(k as u32));
            }
            let mut nu0 = q(1);
            for i in 2..=n + 1 {
                nu0 -= (a(i) + b(i) + g(i)) / pow2(i - 1);
            }
            add(nu0, Kind::C(0));
            add((-a(n + 1) + b(n + 1) + g(n + 1)) / q(2), Kind::C(n as u32));
        }
    }
    out
}

/// Basis elements with x-degree at most `n` for the shape.
pub fn basis_candidates(shape: Shape, n: u32) -> Vec<Kind> {
    let y = Variable::Y;
    match shape {
        Shape::N => (1..=n).map(Kind::Pow).collect(),
        Shape::N1 => (0..=n).map(|r| Kind::IterT(r, y)).chain((2..=n).map(|k| Kind::PowT(k, y))).collect(),
        Shape::N2 => (1..=n).map(Kind::IterYY).chain((0..=n).map(Kind::IterY2)).collect(),
        Shape::N11 => (0..n).map(Kind::A).chain((0..n).map(Kind::B)).chain((0..=n).map(Kind::C)).collect(),
    }
}

/// `P_w` by an exact solve over all basis elements with x-degree <= n.
fn generic_solve_roles(w: &Monomial, shape: Shape, n: u32) -> Result<Polynomial, TrainError> {
    let kinds = basis_candidates(shape, n);
    let monos: Vec<Monomial> = kinds.iter().map(|k| k.monomial()).collect();
    let vars: Vec<Variable> = w.variables();
    let len = w.degree() as usize + 2;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for v in &vars {
        let target = coeffs(w, *v, len);
        let cols: Vec<Vec<Rational>> = monos.iter().map(|m| coeffs(m, *v, len)).collect();
        for k in 0..len {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[k].clone()).collect();
            row.push(target[k].clone());
            rows.push(row);
        }
    }
    let mut ones = vec![q(1); monos.len()];
    ones.push(q(1));
    rows.push(ones);
    let (reduced, pivots) = rref(&ExactMatrix::from_rows(rows));
    let unknowns = monos.len();
    if pivots.contains(&unknowns) || pivots.len() != unknowns {
        return Err(TrainError::Singular);
    }
    Ok(Polynomial::from_terms(reduced.iter().zip(&pivots).map(|(row, p)| (monos[*p].clone(), row[unknowns].clone()))))
}

fn solve_with(
    w: &Monomial,
    shape: Shape,
    solver: impl Fn(&Monomial, Shape, u32) -> Result<Polynomial, TrainError>,
) -> Result<Polynomial, TrainError> {
    let roles = check_shape(w, shape)?;
    let rw = roles.to_roles(w);
    if classify(&rw).is_some() {
        return Err(TrainError::BasisMonomial);
    }
    Ok(roles.from_roles(&solver(&rw, shape, roles.n)?))
}

/// `P_w` from the closed-form solutions of the Peirce system.
pub fn solve_pw(w: &Monomial, shape: Shape) -> Result<Polynomial, TrainError> {
    solve_with(w, shape, |m, s, n| Ok(closed_form_roles(m, s, n)))
}

/// `P_w` from a generic exact linear solve.
pub fn solve_pw_generic(w: &Monomial, shape: Shape) -> Result<Polynomial, TrainError> {
    solve_with(w, shape, generic_solve_roles)
}

pub fn is_basis(w: &Monomial) -> bool {
    Roles::detect(&w.type_vector()).is_ok_and(|r| classify(&r.to_roles(w)).is_some())
}

/// `w - π(w)`, re-verified.
pub fn train_identity(w: &Monomial, shape: Shape) -> Result<Identity, TrainError> {
    let roles = check_shape(w, shape)?;
    if classify(&roles.to_roles(w)).is_some() {
        return Err(TrainError::BasisMonomial);
    }
    let f = Polynomial::monomial(w.clone()) - reduce(w, shape)?;
    Ok(Identity::new(f).expect("rewriting yields evanescent identities"))
}

/// One identity per non-basis monomial of type `ty`.
pub fn generate_train_basis(ty: &TypeVector) -> Result<Vec<Identity>, TrainError> {
    let roles = Roles::detect(ty)?;
    enumerate(ty)
        .iter()
        .filter(|w| classify(&roles.to_roles(w)).is_none())
        .map(|w| train_identity(w, roles.shape))
        .collect()
}
