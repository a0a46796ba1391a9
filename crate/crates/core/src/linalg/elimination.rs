//! Fraction-free (Bareiss) elimination: rank, determinant and the canonical
//! kernel basis.

use serde::Serialize;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{exact_div, Scalar};

/// Result of a fraction-free elimination pass.
struct Echelon<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    /// Pivot column of each pivot row, in row order.
    pivots: Vec<usize>,
    /// Value of the last pivot; in Gauss–Jordan mode every pivot entry equals it.
    last_pivot: T,
    /// Parity of the row swaps performed.
    swaps_odd: bool,
}

impl<T: Scalar> Echelon<T> {
    /// Runs Bareiss elimination. With `jordan` set, rows above the pivot are
    /// eliminated too, giving a fraction-free reduced row echelon form whose
    /// pivot entries all equal `last_pivot`.
    fn reduce(matrix: &Matrix<T>, jordan: bool) -> Self {
        let rows = matrix.rows();
        let cols = matrix.cols();
        let mut data = matrix.clone().into_data();
        let mut pivots = Vec::new();
        let mut prev = T::one();
        let mut swaps_odd = false;
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            // partial pivoting: first non-zero entry at or below row r
            let Some(p) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    data.swap(p * cols + j, r * cols + j);
                }
                swaps_odd = !swaps_odd;
            }
            let pivot = data[r * cols + c].clone();
            let targets: Box<dyn Iterator<Item = usize>> = if jordan {
                Box::new((0..rows).filter(|&i| i != r))
            } else {
                Box::new(r + 1..rows)
            };
            for i in targets {
                let factor = data[i * cols + c].clone();
                for j in 0..cols {
                    let lhs = pivot.clone() * data[i * cols + j].clone();
                    let rhs = if factor.is_zero() {
                        T::zero()
                    } else {
                        factor.clone() * data[r * cols + j].clone()
                    };
                    data[i * cols + j] = exact_div(lhs - rhs, &prev);
                }
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        Self {
            rows,
            cols,
            data,
            pivots,
            last_pivot: prev,
            swaps_odd,
        }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }
}

/// Canonical integer basis of the kernel of a matrix.
///
/// One vector per free column of the reduced row echelon form, in increasing
/// free-column order. Each vector is primitive (entries have gcd 1) and its
/// first non-zero entry is positive, so equal kernels give equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(bound = "")]
pub struct KernelBasis<T: Scalar = num_bigint::BigInt> {
    dim: usize,
    #[serde(serialize_with = "serialize_int_rows")]
    vectors: Vec<Vec<T>>,
}

fn serialize_int_rows<T: Scalar, S: serde::Serializer>(
    rows: &[Vec<T>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    crate::report::int_rows_json(rows).serialize(s)
}

impl<T: Scalar> KernelBasis<T> {
    /// Ambient dimension (number of columns of the source matrix).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn nullity(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Union of the supports of the basis vectors, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.vectors.iter().any(|v| !v[i].is_zero()))
            .collect()
    }

    /// `true` iff both bases span the same subspace. Equal canonical bases
    /// always do; this also accepts non-canonical spanning sets.
    pub fn same_span(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.nullity() != other.nullity() {
            return false;
        }
        if self.vectors.is_empty() {
            return true;
        }
        let stacked: Vec<Vec<T>> = self
            .vectors
            .iter()
            .chain(other.vectors.iter())
            .cloned()
            .collect();
        let stacked = Matrix::from_rows(stacked).expect("basis vectors share the ambient dimension");
        stacked.rank() == self.nullity()
    }
}

/// Scales `v` to a primitive integer vector with positive leading entry.
pub(crate) fn normalize_primitive<T: Scalar>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        let q = exact_div(x.clone(), &g);
        *x = if negate { -q } else { q };
    }
}

impl<T: Scalar> Matrix<T> {
    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        Echelon::reduce(self, false).pivots.len()
    }

    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        if self.rows() == 0 {
            return Ok(T::one());
        }
        let e = Echelon::reduce(self, false);
        if e.pivots.len() < e.rows {
            return Ok(T::zero());
        }
        Ok(if e.swaps_odd {
            -e.last_pivot
        } else {
            e.last_pivot
        })
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(!self.det()?.is_zero())
    }

    /// Canonical kernel basis; see [`KernelBasis`].
    pub fn nullspace_basis(&self) -> KernelBasis<T> {
        let e = Echelon::reduce(self, true);
        let mut is_pivot = vec![false; e.cols];
        for &c in &e.pivots {
            is_pivot[c] = true;
        }
        let vectors = (0..e.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![T::zero(); e.cols];
                v[f] = e.last_pivot.clone();
                for (k, &p) in e.pivots.iter().enumerate() {
                    v[p] = -e.at(k, f).clone();
                }
                normalize_primitive(&mut v);
                v
            })
            .collect();
        KernelBasis {
            dim: e.cols,
            vectors,
        }
    }
}
