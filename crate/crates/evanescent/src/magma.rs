//! Monomials of the free commutative magma over the variables t1, t2, ...
//!
//! Monomials are hash-consed: two monomials are equal iff they share the same
//! interned node, so equality and hashing are O(1). The total order used for
//! canonical children and for printing compares degree, then the vector of
//! per-variable degrees, then the children recursively.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, LazyLock, Mutex};

/// A variable `t_i`. Index 0 is the fresh letter `t` used by linearization
/// and never appears in parsed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

impl Variable {
    pub const FRESH: Variable = Variable(0);
    pub const X: Variable = Variable(1);
    pub const Y: Variable = Variable(2);
    pub const Z: Variable = Variable(3);

    /// `t_index`, for `index >= 1`.
    pub fn new(index: u32) -> Option<Variable> {
        (index >= 1).then_some(Variable(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_fresh(self) -> bool {
        self.0 == 0
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "t".to_string(),
            1 => "x".to_string(),
            2 => "y".to_string(),
            3 => "z".to_string(),
            i => format!("t{i}"),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Multidegree `[n1, n2, ...]` over t1, t2, ... with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TypeVector(Vec<u32>);

impl TypeVector {
    pub fn new(mut entries: Vec<u32>) -> TypeVector {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        TypeVector(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Degree in `t_{i+1}` for position `i`.
    pub fn get(&self, pos: usize) -> u32 {
        self.0.get(pos).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl std::str::FromStr for TypeVector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let mut entries = Vec::new();
        for part in trimmed.split(',') {
            let part = part.trim();
            let value: u32 = part.parse().map_err(|_| format!("bad type vector entry {part:?}"))?;
            entries.push(value);
        }
        let ty = TypeVector::new(entries);
        if ty.total() == 0 {
            return Err("type vector must have positive total degree".to_string());
        }
        Ok(ty)
    }
}

enum Shape {
    Leaf(Variable),
    Node(Monomial, Monomial),
}

struct MonoData {
    shape: Shape,
    id: u64,
    degree: u32,
    // Degree per variable index, index 0 being the fresh variable; trimmed.
    degs: Vec<u32>,
    // Largest leaf height; a leaf has height 0.
    height: u32,
}

/// A canonical commutative monomial.
#[derive(Clone)]
pub struct Monomial(Arc<MonoData>);

#[derive(PartialEq, Eq, Hash)]
enum Key {
    Leaf(u32),
    Node(u64, u64),
}

struct Interner {
    table: HashMap<Key, Monomial>,
    next: u64,
}

static INTERNER: LazyLock<Mutex<Interner>> = LazyLock::new(|| Mutex::new(Interner { table: HashMap::new(), next: 0 }));

fn intern(key: Key, build: impl FnOnce(u64) -> MonoData) -> Monomial {
    let mut guard = INTERNER.lock().expect("interner poisoned");
    if let Some(m) = guard.table.get(&key) {
        return m.clone();
    }
    let id = guard.next;
    guard.next += 1;
    let m = Monomial(Arc::new(build(id)));
    guard.table.insert(key, m.clone());
    m
}

fn add_degs(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

impl Monomial {
    pub fn leaf(v: Variable) -> Monomial {
        intern(Key::Leaf(v.0), |id| {
            let mut degs = vec![0; v.0 as usize + 1];
            degs[v.0 as usize] = 1;
            MonoData { shape: Shape::Leaf(v), id, degree: 1, degs, height: 0 }
        })
    }

    /// The canonical product; commutative by construction.
    pub fn product(u: &Monomial, v: &Monomial) -> Monomial {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        intern(Key::Node(a.0.id, b.0.id), |id| MonoData {
            shape: Shape::Node(a.clone(), b.clone()),
            id,
            degree: a.0.degree + b.0.degree,
            degs: add_degs(&a.0.degs, &b.0.degs),
            height: 1 + a.0.height.max(b.0.height),
        })
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn degree_in(&self, v: Variable) -> u32 {
        self.0.degs.get(v.0 as usize).copied().unwrap_or(0)
    }

    /// Height of the tree (edges from the root to the deepest leaf).
    pub fn height(&self) -> u32 {
        self.0.height
    }

    /// Type over t1, t2, ... (the fresh variable is not part of the type).
    pub fn type_vector(&self) -> TypeVector {
        TypeVector::new(self.0.degs.iter().skip(1).copied().collect())
    }

    /// Variables occurring in the monomial, in increasing index order.
    pub fn variables(&self) -> Vec<Variable> {
        self.0.degs.iter().enumerate().filter(|(_, d)| **d > 0).map(|(i, _)| Variable(i as u32)).collect()
    }

    pub fn as_leaf(&self) -> Option<Variable> {
        match self.0.shape {
            Shape::Leaf(v) => Some(v),
            Shape::Node(..) => None,
        }
    }

    /// Canonical children `(left, right)` with `left <= right`.
    pub fn children(&self) -> Option<(&Monomial, &Monomial)> {
        match &self.0.shape {
            Shape::Leaf(_) => None,
            Shape::Node(a, b) => Some((a, b)),
        }
    }

    /// Stable identifier of the interned node (valid for the process lifetime).
    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// Apply a variable renaming; unmapped variables are kept.
    pub fn rename(&self, map: &impl Fn(Variable) -> Variable) -> Monomial {
        match &self.0.shape {
            Shape::Leaf(v) => Monomial::leaf(map(*v)),
            Shape::Node(a, b) => Monomial::product(&a.rename(map), &b.rename(map)),
        }
    }

    /// Heights of the leaves labelled `v`, in left-to-right order.
    pub fn leaf_heights(&self, v: Variable) -> Vec<u32> {
        fn walk(m: &Monomial, v: Variable, depth: u32, out: &mut Vec<u32>) {
            if m.degree_in(v) == 0 {
                return;
            }
            match &m.0.shape {
                Shape::Leaf(_) => out.push(depth),
                Shape::Node(a, b) => {
                    walk(a, v, depth + 1, out);
                    walk(b, v, depth + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, v, 0, &mut out);
        out
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0.id == other.0.id {
            return Ordering::Equal;
        }
        self.0.degree.cmp(&other.0.degree).then_with(|| self.0.degs.cmp(&other.0.degs)).then_with(|| {
            match (&self.0.shape, &other.0.shape) {
                (Shape::Leaf(a), Shape::Leaf(b)) => a.cmp(b),
                (Shape::Node(a1, b1), Shape::Node(a2, b2)) => a1.cmp(a2).then_with(|| b1.cmp(b2)),
                // Same degree means same kind.
                (Shape::Leaf(_), Shape::Node(..)) => Ordering::Less,
                (Shape::Node(..), Shape::Leaf(_)) => Ordering::Greater,
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.shape {
            Shape::Leaf(v) => write!(f, "{v}"),
            Shape::Node(a, b) => write!(f, "({a:?} {b:?})"),
        }
    }
}

pub fn product(u: &Monomial, v: &Monomial) -> Monomial {
    Monomial::product(u, v)
}

/// Left-normed power: x^1 = x, x^(k+1) = x^k x.
pub fn principal_power(v: Variable, k: u32) -> Monomial {
    assert!(k >= 1, "principal power needs k >= 1");
    let x = Monomial::leaf(v);
    let mut acc = x.clone();
    for _ in 1..k {
        acc = Monomial::product(&acc, &x);
    }
    acc
}

/// Repeated squaring: x^[1] = x, x^[k+1] = x^[k] x^[k].
pub fn plenary_power(v: Variable, k: u32) -> Monomial {
    assert!(k >= 1, "plenary power needs k >= 1");
    let mut acc = Monomial::leaf(v);
    for _ in 1..k {
        acc = Monomial::product(&acc, &acc);
    }
    acc
}

/// x^{r} f = x (x^{r-1} f), x^{0} f = f.
pub fn left_iterate(v: Variable, r: u32, f: &Monomial) -> Monomial {
    let x = Monomial::leaf(v);
    let mut acc = f.clone();
    for _ in 0..r {
        acc = Monomial::product(&x, &acc);
    }
    acc
}

static ENUM_CACHE: LazyLock<Mutex<HashMap<TypeVector, Arc<Vec<Monomial>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// All sub-vectors `a` of `ty` with `0 < a < ty` componentwise.
fn proper_parts(ty: &TypeVector) -> Vec<TypeVector> {
    let e = ty.entries();
    let mut out = Vec::new();
    let mut cur = vec![0u32; e.len()];
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == e.len() {
                return out;
            }
            if cur[i] < e[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        let part = TypeVector::new(cur.clone());
        if part != *ty {
            out.push(part);
        }
    }
}

fn complement(ty: &TypeVector, part: &TypeVector) -> TypeVector {
    TypeVector::new((0..ty.len()).map(|i| ty.get(i) - part.get(i)).collect())
}

/// Every canonical monomial of exactly this type, sorted in canonical order.
pub fn enumerate(ty: &TypeVector) -> Arc<Vec<Monomial>> {
    if let Some(hit) = ENUM_CACHE.lock().expect("cache poisoned").get(ty) {
        return hit.clone();
    }
    let mut out = Vec::new();
    if ty.total() == 1 {
        let pos = ty.entries().iter().position(|d| *d == 1).expect("degree one");
        out.push(Monomial::leaf(Variable(pos as u32 + 1)));
    } else if ty.total() > 1 {
        for a in proper_parts(ty) {
            let b = complement(ty, &a);
            if a > b {
                continue;
            }
            let left = enumerate(&a);
            let right = enumerate(&b);
            for (i, u) in left.iter().enumerate() {
                // Unordered pairs once: on equal types take u <= v.
                let start = if a == b { i } else { 0 };
                for v in &right[start..] {
                    out.push(Monomial::product(u, v));
                }
            }
        }
        out.sort();
    }
    let out = Arc::new(out);
    ENUM_CACHE.lock().expect("cache poisoned").insert(ty.clone(), out.clone());
    out
}

fn binom2_plus(w: u128) -> u128 {
    // C(w + 1, 2)
    w * (w + 1) / 2
}

/// Count of monomials of type `[n]`.
pub fn w_single(n: u32) -> u128 {
    let n = n as usize;
    let mut w = vec![0u128; n.max(1) + 1];
    w[1] = 1;
    for m in 2..=n {
        let p = m / 2;
        w[m] = if m % 2 == 0 {
            (1..p).map(|i| w[i] * w[m - i]).sum::<u128>() + binom2_plus(w[p])
        } else {
            (1..=p).map(|i| w[i] * w[m - i]).sum()
        };
    }
    w[n]
}

/// Count of monomials of type `[n,1]`.
pub fn w_n1(n: u32) -> u128 {
    let mut w1 = vec![1u128];
    for m in 1..=n {
        let v = (0..m).map(|i| w_single(m - i) * w1[i as usize]).sum();
        w1.push(v);
    }
    w1[n as usize]
}

/// Count of monomials of type `[n,2]`.
pub fn w_n2(n: u32) -> u128 {
    let mut w2 = vec![1u128];
    for m in 1..=n {
        let mut v: u128 = (0..m).map(|i| w_single(m - i) * w2[i as usize]).sum();
        // unordered pairs of [i,1] and [m-i,1] factors with i < m-i
        v += (0..m.div_ceil(2)).map(|i| w_n1(m - i) * w_n1(i)).sum::<u128>();
        if m % 2 == 0 {
            v += binom2_plus(w_n1(m / 2));
        }
        w2.push(v);
    }
    w2[n as usize]
}

/// Count of monomials of type `[n,1,1]`.
pub fn w_n11(n: u32) -> u128 {
    let mut w11 = vec![1u128];
    for m in 1..=n {
        let mut v: u128 = (0..m).map(|i| w_single(m - i) * w11[i as usize]).sum();
        v += (0..=m).map(|i| w_n1(m - i) * w_n1(i)).sum::<u128>();
        w11.push(v);
    }
    w11[n as usize]
}

/// Count for an arbitrary type via the unordered-split recurrence.
pub fn w_generic(ty: &TypeVector) -> u128 {
    fn go(ty: &TypeVector, memo: &mut HashMap<TypeVector, u128>) -> u128 {
        if ty.total() == 0 {
            return 0;
        }
        if ty.total() == 1 {
            return 1;
        }
        if let Some(v) = memo.get(ty) {
            return *v;
        }
        let mut total = 0u128;
        for a in proper_parts(ty) {
            let b = complement(ty, &a);
            match a.cmp(&b) {
                Ordering::Less => total += go(&a, memo) * go(&b, memo),
                Ordering::Equal => total += binom2_plus(go(&a, memo)),
                Ordering::Greater => {}
            }
        }
        memo.insert(ty.clone(), total);
        total
    }
    go(ty, &mut HashMap::new())
}

/// Number of monomials of type `ty`. Uses the closed recurrences for the
/// shapes `[n]`, `[n,1]`, `[n,2]`, `[n,1,1]` and the general split recurrence
/// otherwise.
pub fn w_number(ty: &TypeVector) -> u128 {
    match ty.entries() {
        [] => 0,
        [n] => w_single(*n),
        [n, 1] => w_n1(*n),
        [n, 2] => w_n2(*n),
        [n, 1, 1] => w_n11(*n),
        _ => w_generic(ty),
    }
}
