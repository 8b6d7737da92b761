//! Homogeneous evanescent identities as the nullspace of the Peirce system.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::magma::{enumerate, Monomial, TypeVector, Variable};
use crate::peirce::{monomial_peirce_counts, Identity};
use crate::poly::{q, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowLabel {
    /// Coefficient of `t^power` in the Peirce polynomial for `var`.
    Peirce { var: Variable, power: usize },
    /// Sum of coefficients.
    Ones,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Peirce { var, power } => write!(f, "d{var}[t^{power}]"),
            RowLabel::Ones => f.write_str("sum"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: Vec<Vec<Rational>>,
    pub row_labels: Vec<RowLabel>,
    pub columns: Vec<Monomial>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> ExactMatrix {
        let width = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == width), "ragged matrix");
        let row_labels = vec![RowLabel::Ones; rows.len()];
        ExactMatrix { rows, row_labels, columns: Vec::new() }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(self.columns.len(), Vec::len)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)).collect()
    }
}

/// One row per variable of `ty` and power of `t`, plus the all-ones row.
pub fn peirce_matrix(ty: &TypeVector) -> ExactMatrix {
    let columns: Vec<Monomial> = enumerate(ty).as_ref().clone();
    let top = ty.total() as usize;
    let mut rows = Vec::new();
    let mut row_labels = Vec::new();
    for (pos, d) in ty.entries().iter().enumerate() {
        if *d == 0 {
            continue;
        }
        let var = Variable::new(pos as u32 + 1).expect("index");
        let counts: Vec<Vec<u64>> = columns.iter().map(|w| monomial_peirce_counts(w, var)).collect();
        for power in 0..top {
            rows.push(counts.iter().map(|c| q(c.get(power).copied().unwrap_or(0) as i64)).collect());
            row_labels.push(RowLabel::Peirce { var, power });
        }
    }
    rows.push(vec![q(1); columns.len()]);
    row_labels.push(RowLabel::Ones);
    ExactMatrix { rows, row_labels, columns }
}

/// Reduced row-echelon form with pivot columns; pivots are taken in row order.
pub fn rref(m: &ExactMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut rows: Vec<Vec<Rational>> = m.rows.clone();
    let width = m.n_cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (a, b) in row.iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A nullspace basis vector stored sparsely as `(column, value)` pairs in
/// increasing column order.
pub type SparseVector = Vec<(usize, Rational)>;

/// Basis of the right nullspace: one vector per free column, in column
/// order, each scaled so its first nonzero entry is 1.
pub fn nullspace_sparse(m: &ExactMatrix) -> Vec<SparseVector> {
    let (rows, pivots) = rref(m);
    let width = m.n_cols();
    let mut is_pivot = vec![false; width];
    for p in &pivots {
        is_pivot[*p] = true;
    }
    let mut out = Vec::new();
    for free in (0..width).filter(|c| !is_pivot[*c]) {
        let mut v: SparseVector = Vec::new();
        for (row, p) in rows.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v.push((*p, -row[free].clone()));
            }
        }
        v.push((free, Rational::one()));
        v.sort_by_key(|(c, _)| *c);
        let lead = v[0].1.clone();
        if !lead.is_one() {
            for (_, x) in v.iter_mut() {
                *x /= &lead;
            }
        }
        out.push(v);
    }
    out
}

pub fn nullspace(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    let width = m.n_cols();
    nullspace_sparse(m)
        .into_iter()
        .map(|sv| {
            let mut v = vec![Rational::zero(); width];
            for (c, x) in sv {
                v[c] = x;
            }
            v
        })
        .collect()
}

/// Dimension of the space of homogeneous evanescent identities of type `ty`.
pub fn homogeneous_dimension(ty: &TypeVector) -> usize {
    let m = peirce_matrix(ty);
    m.n_cols() - rref(&m).1.len()
}

/// One identity per nullspace basis vector.
pub fn generate_homogeneous(ty: &TypeVector) -> Vec<Identity> {
    let m = peirce_matrix(ty);
    nullspace_sparse(&m)
        .into_iter()
        .map(|v| {
            let f = Polynomial::from_terms(v.into_iter().map(|(c, x)| (m.columns[c].clone(), x)));
            Identity::new(f).expect("nullspace vectors are evanescent identities")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    InSpan,
    WrongType,
    NotInSpan,
}

/// Whether `f` lies in the span of the computed basis for its type: the
/// coefficient vector must be killed by the Peirce matrix and leave zero
/// residual after subtracting its free-column combination of basis vectors.
pub fn membership(f: &Polynomial) -> Membership {
    if f.is_zero() || !f.is_homogeneous() {
        return Membership::WrongType;
    }
    let ty = f.type_vector();
    let m = peirce_matrix(&ty);
    let Some(v) = f.coefficient_vector(&m.columns) else {
        return Membership::WrongType;
    };
    if m.apply(&v).iter().any(|x| !x.is_zero()) {
        return Membership::NotInSpan;
    }
    let basis = nullspace_sparse(&m);
    let mut residual: HashMap<usize, Rational> =
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
    let (_, pivots) = rref(&m);
    let width = m.n_cols();
    let mut is_pivot = vec![false; width];
    for p in &pivots {
        is_pivot[*p] = true;
    }
    let free_cols: Vec<usize> = (0..width).filter(|c| !is_pivot[*c]).collect();
    // each basis vector is zero on every other free column
    for (free, b) in free_cols.iter().zip(&basis) {
        if v[*free].is_zero() {
            continue;
        }
        let at_free = b.iter().find(|(c, _)| c == free).map(|(_, x)| x.clone()).expect("free entry");
        let scale = &v[*free] / at_free;
        for (c, x) in b {
            *residual.entry(*c).or_insert_with(Rational::zero) -= &scale * x;
        }
    }
    if residual.values().all(Zero::is_zero) {
        Membership::InSpan
    } else {
        Membership::NotInSpan
    }
}
