//! Finite-dimensional baric and mutation algebras over the rationals.
//!
//! Vectors are coordinate lists in the algebra basis `e_0, ..., e_{d-1}`.
//! Randomized verification is refutation only: a pass is evidence that the
//! algebra satisfies the identity, not a proof.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::magma::{Monomial, Variable};
use crate::peirce::PeircePolynomial;
use crate::poly::{q, q2, Polynomial, Rational};

pub type Vector = Vec<Rational>;
pub type Matrix = Vec<Vec<Rational>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaricError {
    #[error("dimension must be at least 1")]
    EmptyAlgebra,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure constants are not symmetric at e{0} e{1}")]
    NotCommutative(usize, usize),
    #[error("weight is not multiplicative at e{0} e{1}")]
    NotCharacter(usize, usize),
    #[error("weight is zero")]
    ZeroWeight,
    #[error("weight is not fixed by the mutation matrix")]
    WeightNotFixed,
    #[error("variable {0} is not bound")]
    Unbound(Variable),
    #[error("vector is not a nonzero idempotent")]
    NotIdempotent,
    #[error("bad algebra file: {0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaricAlgebra {
    /// `structure[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
    structure: Vec<Matrix>,
    weight: Vector,
    integral: IntegralStructure,
}

/// The structure constants over one common denominator, for evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntegralStructure {
    num: Vec<Vec<Vec<BigInt>>>,
    den: BigInt,
}

/// A vector `num / den` with integer entries.
#[derive(Clone, Debug)]
struct IntegralVector {
    num: Vec<BigInt>,
    den: BigInt,
}

fn common_denominator<'a>(entries: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    entries.into_iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()))
}

fn scale_to(c: &Rational, den: &BigInt) -> BigInt {
    c.numer() * (den / c.denom())
}

impl IntegralVector {
    fn new(v: &[Rational]) -> IntegralVector {
        let den = common_denominator(v);
        IntegralVector { num: v.iter().map(|c| scale_to(c, &den)).collect(), den }
    }

    fn to_rational(&self) -> Vector {
        self.num.iter().map(|n| Rational::new(n.clone(), self.den.clone())).collect()
    }
}

fn zeros(d: usize) -> Vector {
    vec![Rational::zero(); d]
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

fn check_count(found: usize, expected: usize) -> Result<(), BaricError> {
    if found == expected {
        Ok(())
    } else {
        Err(BaricError::DimensionMismatch { expected, found })
    }
}

fn check_len(v: &[Rational], d: usize) -> Result<(), BaricError> {
    check_count(v.len(), d)
}

impl BaricAlgebra {
    pub fn new(structure: Vec<Matrix>, weight: Vector) -> Result<BaricAlgebra, BaricError> {
        let d = weight.len();
        if d == 0 {
            return Err(BaricError::EmptyAlgebra);
        }
        check_count(structure.len(), d)?;
        for row in &structure {
            check_count(row.len(), d)?;
            for v in row {
                check_len(v, d)?;
            }
        }
        if weight.iter().all(Zero::is_zero) {
            return Err(BaricError::ZeroWeight);
        }
        for i in 0..d {
            for j in 0..d {
                if structure[i][j] != structure[j][i] {
                    return Err(BaricError::NotCommutative(i, j));
                }
                if dot(&weight, &structure[i][j]) != &weight[i] * &weight[j] {
                    return Err(BaricError::NotCharacter(i, j));
                }
            }
        }
        let den = common_denominator(structure.iter().flatten().flatten());
        let num = structure
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|c| scale_to(c, &den)).collect()).collect())
            .collect();
        let integral = IntegralStructure { num, den };
        Ok(BaricAlgebra { structure, weight, integral })
    }

    pub fn dim(&self) -> usize {
        self.weight.len()
    }

    pub fn weight(&self) -> &[Rational] {
        &self.weight
    }

    pub fn structure(&self) -> &[Matrix] {
        &self.structure
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = zeros(self.dim());
        v[i] = Rational::one();
        v
    }

    pub fn weight_of(&self, v: &[Rational]) -> Rational {
        dot(&self.weight, v)
    }

    pub fn multiply(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let d = self.dim();
        let mut out = zeros(d);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (slot, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !c.is_zero() {
                        *slot += &ab * c;
                    }
                }
            }
        }
        out
    }

    fn multiply_integral(&self, u: &IntegralVector, v: &IntegralVector) -> IntegralVector {
        let mut num = vec![BigInt::zero(); self.dim()];
        for (a, row) in u.num.iter().zip(&self.integral.num) {
            if a.is_zero() {
                continue;
            }
            for (b, c) in v.num.iter().zip(row) {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (slot, ck) in num.iter_mut().zip(c) {
                    if !ck.is_zero() {
                        *slot += &ab * ck;
                    }
                }
            }
        }
        IntegralVector { num, den: &u.den * &v.den * &self.integral.den }
    }

    /// A fixed weight-1 vector: the first basis vector of nonzero weight,
    /// rescaled.
    pub fn anchor(&self) -> Vector {
        let p = self.weight.iter().position(|w| !w.is_zero()).expect("nonzero weight");
        let mut v = zeros(self.dim());
        v[p] = Rational::one() / &self.weight[p];
        v
    }

    /// Basis of `ker ω`: `e_j - (ω_j/ω_p) e_p` for `j != p`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let anchor = self.anchor();
        (0..self.dim())
            .filter(|j| anchor[*j].is_zero())
            .map(|j| {
                let mut v = self.basis(j);
                let w = self.weight[j].clone();
                for (slot, a) in v.iter_mut().zip(&anchor) {
                    *slot -= &w * a;
                }
                v
            })
            .collect()
    }
}

/// `(A, M, ω)` with product `xy = ½(ω(y)M(x) + ω(x)M(y))`; `M` acts on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationSpec {
    pub matrix: Matrix,
    pub weight: Vector,
}

pub fn make_mutation(spec: &MutationSpec) -> Result<BaricAlgebra, BaricError> {
    let d = spec.weight.len();
    if d == 0 {
        return Err(BaricError::EmptyAlgebra);
    }
    check_count(spec.matrix.len(), d)?;
    for row in &spec.matrix {
        check_len(row, d)?;
    }
    if spec.weight.iter().all(Zero::is_zero) {
        return Err(BaricError::ZeroWeight);
    }
    let m = &spec.matrix;
    for (j, wj) in spec.weight.iter().enumerate() {
        let col: Vector = m.iter().map(|row| row[j].clone()).collect();
        if dot(&spec.weight, &col) != *wj {
            return Err(BaricError::WeightNotFixed);
        }
    }
    let half = q2(1, 2);
    let w = &spec.weight;
    let structure = (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| &half * (&w[j] * &m[k][i] + &w[i] * &m[k][j])).collect()).collect())
        .collect();
    BaricAlgebra::new(structure, spec.weight.clone())
}

/// Mutation algebra with `M = diag(1, 2λ_1, ...)` and `ω = (1, 0, ...)`, so
/// `e_0` is an idempotent of weight 1 with `e_0 e_i = λ_i e_i`.
pub fn spectrum_algebra(lambdas: &[Rational]) -> (BaricAlgebra, Vector) {
    let d = lambdas.len() + 1;
    let mut matrix = vec![zeros(d); d];
    matrix[0][0] = Rational::one();
    for (i, l) in lambdas.iter().enumerate() {
        matrix[i + 1][i + 1] = q(2) * l;
    }
    let mut weight = zeros(d);
    weight[0] = Rational::one();
    let a = make_mutation(&MutationSpec { matrix, weight }).expect("diagonal spec is valid");
    let e = a.basis(0);
    (a, e)
}

pub type Bindings = HashMap<Variable, Vector>;

fn check_bindings(f: &Polynomial, a: &BaricAlgebra, bindings: &Bindings) -> Result<(), BaricError> {
    for v in f.variables() {
        let value = bindings.get(&v).ok_or(BaricError::Unbound(v))?;
        check_len(value, a.dim())?;
    }
    Ok(())
}

fn eval_monomial(
    w: &Monomial,
    a: &BaricAlgebra,
    leaves: &HashMap<Variable, IntegralVector>,
    memo: &mut HashMap<Monomial, IntegralVector>,
) -> IntegralVector {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let out = match w.children() {
        None => leaves[&w.as_leaf().expect("leaf")].clone(),
        Some((l, r)) => {
            let lv = eval_monomial(l, a, leaves, memo);
            let rv = eval_monomial(r, a, leaves, memo);
            a.multiply_integral(&lv, &rv)
        }
    };
    memo.insert(w.clone(), out.clone());
    out
}

fn evaluate_scaled(
    f: &Polynomial,
    a: &BaricAlgebra,
    bindings: &Bindings,
    scale: impl Fn(&Monomial) -> Rational,
) -> Result<Vector, BaricError> {
    check_bindings(f, a, bindings)?;
    let leaves = f.variables().into_iter().map(|v| (v, IntegralVector::new(&bindings[&v]))).collect();
    let mut memo = HashMap::new();
    let mut out = zeros(a.dim());
    for (w, c) in f.terms() {
        let s = c * scale(w);
        if s.is_zero() {
            continue;
        }
        let v = eval_monomial(w, a, &leaves, &mut memo).to_rational();
        for (slot, x) in out.iter_mut().zip(&v) {
            *slot += &s * x;
        }
    }
    Ok(out)
}

pub fn evaluate(f: &Polynomial, a: &BaricAlgebra, bindings: &Bindings) -> Result<Vector, BaricError> {
    evaluate_scaled(f, a, bindings, |_| Rational::one())
}

/// Each term `w` is scaled by `Π_i ω(a_i)^(|f|_i - |w|_i)`.
pub fn weighted_evaluate(f: &Polynomial, a: &BaricAlgebra, bindings: &Bindings) -> Result<Vector, BaricError> {
    check_bindings(f, a, bindings)?;
    let vars = f.variables();
    let tops: Vec<(Variable, u32, Rational)> =
        vars.iter().map(|v| (*v, f.degree_in(*v), a.weight_of(&bindings[v]))).collect();
    evaluate_scaled(f, a, bindings, |w| {
        tops.iter().fold(Rational::one(), |acc, (v, top, om)| {
            acc * num_traits::pow(om.clone(), (top - w.degree_in(*v)) as usize)
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { trials: usize },
    Fail(Counterexample),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    /// Whether the failing binding was a general one checked by weighted
    /// evaluation rather than a weight-1 one.
    pub weighted: bool,
    pub binding: BTreeMap<Variable, Vector>,
    pub value: Vector,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

pub const DEFAULT_TRIALS: usize = 64;

/// An entry `n/d` with `n` in `-3..=3` and `d` in `{1, 2}`.
pub fn random_entry(rng: &mut impl Rng) -> Rational {
    q2(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn random_vector(d: usize, rng: &mut impl Rng) -> Vector {
    (0..d).map(|_| random_entry(rng)).collect()
}

/// Projects `v` onto the weight-1 hyperplane through the anchor.
pub fn weight_one(a: &BaricAlgebra, v: &[Rational]) -> Vector {
    let anchor = a.anchor();
    let w = a.weight_of(v);
    v.iter().zip(&anchor).map(|(x, e)| x - &w * e + e).collect()
}

/// Trial `k` draws from its own ChaCha stream, so trials are independent of
/// evaluation order.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn verify_identity(f: &Polynomial, a: &BaricAlgebra, trials: usize, seed: u64) -> Verdict {
    let vars = f.variables();
    let d = a.dim();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let unit: Bindings = vars.iter().map(|v| (*v, weight_one(a, &random_vector(d, &mut rng)))).collect();
        let general: Bindings = vars.iter().map(|v| (*v, random_vector(d, &mut rng))).collect();
        for (weighted, binding) in [(false, unit), (true, general)] {
            let value = if weighted { weighted_evaluate(f, a, &binding) } else { evaluate(f, a, &binding) }
                .expect("bindings cover every variable");
            if value.iter().any(|x| !x.is_zero()) {
                return Verdict::Fail(Counterexample {
                    trial,
                    weighted,
                    binding: binding.into_iter().collect(),
                    value,
                });
            }
        }
    }
    Verdict::Pass { trials }
}

/// Matrix of `x -> e x`, column `j` holding `e e_j`.
pub fn left_mult_matrix(a: &BaricAlgebra, e: &[Rational]) -> Result<Matrix, BaricError> {
    check_len(e, a.dim())?;
    if e.iter().all(Zero::is_zero) || a.multiply(e, e) != e {
        return Err(BaricError::NotIdempotent);
    }
    let d = a.dim();
    let cols: Vec<Vector> = (0..d).map(|j| a.multiply(e, &a.basis(j))).collect();
    Ok((0..d).map(|k| (0..d).map(|j| cols[j][k].clone()).collect()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vector {
    a.iter().map(|row| dot(row, v)).collect()
}

/// Evaluates the univariate polynomial `p` at the square matrix `m`.
pub fn poly_at_matrix(p: &PeircePolynomial, m: &Matrix) -> Matrix {
    let n = m.len();
    let mut out = vec![zeros(n); n];
    for c in p.coeffs().iter().rev() {
        out = mat_mul(&out, m);
        for (i, row) in out.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    out
}

/// `det(X I - m)` by Faddeev-LeVerrier.
pub fn char_poly(m: &Matrix) -> PeircePolynomial {
    let n = m.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    // aux = M_k, starting from M_0 = 0
    let mut aux = vec![zeros(n); n];
    for k in 1..=n {
        for (i, row) in aux.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        aux = mat_mul(m, &aux);
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &aux[i][i]);
        coeffs[n - k] = -trace / q(k as i64);
    }
    PeircePolynomial::new(coeffs)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let other = &n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out
}

/// Rational roots with multiplicity, ascending, and the cofactor without
/// rational roots.
pub fn rational_roots(p: &PeircePolynomial) -> (Vec<Rational>, PeircePolynomial) {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    while rest.degree().is_some_and(|d| d > 0) && rest.coeff(0).is_zero() {
        roots.push(Rational::zero());
        rest = PeircePolynomial::new(rest.coeffs()[1..].to_vec());
    }
    while let Some(deg) = rest.degree().filter(|d| *d > 0) {
        let lcm = rest.coeffs().iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let lead = (rest.coeff(deg) * Rational::from_integer(lcm.clone())).to_integer();
        let constant = (rest.coeff(0) * Rational::from_integer(lcm)).to_integer();
        let found = divisors(&constant).into_iter().find_map(|num| {
            divisors(&lead).into_iter().find_map(|den| {
                [Rational::new(num.clone(), den.clone()), -Rational::new(num.clone(), den)]
                    .into_iter()
                    .find(|r| rest.eval(r).is_zero())
            })
        });
        match found {
            Some(r) => {
                rest = rest.divide_linear(&r).0;
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, rest)
}

/// Random mutation spec: random `ω` with a nonzero pivot entry, random `M`
/// whose pivot row is then solved so that `ω∘M = ω`.
pub fn random_mutation_spec(d: usize, rng: &mut impl Rng) -> MutationSpec {
    let mut weight = random_vector(d, rng);
    let pivot = rng.gen_range(0..d);
    while weight[pivot].is_zero() {
        weight[pivot] = random_entry(rng);
    }
    let mut matrix: Matrix = (0..d).map(|_| random_vector(d, rng)).collect();
    for j in 0..d {
        let others = (0..d).filter(|k| *k != pivot).fold(Rational::zero(), |acc, k| acc + &weight[k] * &matrix[k][j]);
        matrix[pivot][j] = (&weight[j] - others) / &weight[pivot];
    }
    MutationSpec { matrix, weight }
}

pub fn random_mutation(d: usize, rng: &mut impl Rng) -> BaricAlgebra {
    make_mutation(&random_mutation_spec(d, rng)).expect("projected spec is valid")
}

/// Random baric algebra with `ω = (1, 0, ...)`: `e_0 e_0 = e_0 + k_00` and
/// every other product lands in `ker ω`.
#[allow(clippy::needless_range_loop)]
pub fn random_baric(d: usize, rng: &mut impl Rng) -> BaricAlgebra {
    let mut structure = vec![vec![zeros(d); d]; d];
    for i in 0..d {
        for j in i..d {
            let mut v = random_vector(d, rng);
            v[0] = if i == 0 && j == 0 { Rational::one() } else { Rational::zero() };
            structure[i][j] = v.clone();
            structure[j][i] = v;
        }
    }
    let mut weight = zeros(d);
    weight[0] = Rational::one();
    BaricAlgebra::new(structure, weight).expect("construction is baric")
}

#[derive(Serialize, Deserialize)]
struct MutationFile {
    matrix: Vec<Vec<String>>,
    weight: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    structure: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mutation: Option<MutationFile>,
}

fn parse_rational(s: &str) -> Result<Rational, BaricError> {
    s.trim().parse().map_err(|_| BaricError::Format(format!("bad rational {s:?}")))
}

fn parse_vector(v: &[String], d: usize) -> Result<Vector, BaricError> {
    check_count(v.len(), d)?;
    v.iter().map(|s| parse_rational(s)).collect()
}

/// Reads `{"dim", "structure": [[i, j, k, "p/q"], ...], "weight"}` or
/// `{"dim", "mutation": {"matrix", "weight"}}`. Indices are 0-based; a
/// structure entry for `(i, j)` also sets `(j, i)`.
pub fn algebra_from_json(text: &str) -> Result<BaricAlgebra, BaricError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| BaricError::Format(e.to_string()))?;
    let d = file.dim;
    if d == 0 {
        return Err(BaricError::EmptyAlgebra);
    }
    match (file.structure, file.mutation) {
        (Some(entries), None) => {
            let weight = parse_vector(&file.weight.ok_or_else(|| BaricError::Format("missing weight".into()))?, d)?;
            let mut structure = vec![vec![zeros(d); d]; d];
            let mut seen: HashMap<(usize, usize, usize), Rational> = HashMap::new();
            for (i, j, k, c) in entries {
                if i >= d || j >= d || k >= d {
                    return Err(BaricError::Format(format!("index out of range in [{i},{j},{k}]")));
                }
                let c = parse_rational(&c)?;
                for key in [(i, j, k), (j, i, k)] {
                    if let Some(old) = seen.get(&key) {
                        if *old != c {
                            return Err(BaricError::NotCommutative(i, j));
                        }
                    }
                    seen.insert(key, c.clone());
                    structure[key.0][key.1][k] = c.clone();
                }
            }
            BaricAlgebra::new(structure, weight)
        }
        (None, Some(m)) => {
            let weight = parse_vector(&m.weight, d)?;
            check_count(m.matrix.len(), d)?;
            let matrix = m.matrix.iter().map(|row| parse_vector(row, d)).collect::<Result<_, _>>()?;
            make_mutation(&MutationSpec { matrix, weight })
        }
        _ => Err(BaricError::Format("expected exactly one of structure or mutation".into())),
    }
}

/// Structure-constant form, nonzero entries with `i <= j` only.
pub fn algebra_to_json(a: &BaricAlgebra) -> String {
    let d = a.dim();
    let mut entries = Vec::new();
    for i in 0..d {
        for j in i..d {
            for (k, c) in a.structure[i][j].iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c.to_string()));
                }
            }
        }
    }
    let file = AlgebraFile {
        dim: d,
        structure: Some(entries),
        weight: Some(a.weight.iter().map(|w| w.to_string()).collect()),
        mutation: None,
    };
    serde_json::to_string(&file).expect("serializable")
}

pub fn mutation_to_json(spec: &MutationSpec) -> String {
    let strings = |v: &Vector| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let file = AlgebraFile {
        dim: spec.weight.len(),
        structure: None,
        weight: None,
        mutation: Some(MutationFile {
            matrix: spec.matrix.iter().map(strings).collect(),
            weight: strings(&spec.weight),
        }),
    };
    serde_json::to_string(&file).expect("serializable")
}
