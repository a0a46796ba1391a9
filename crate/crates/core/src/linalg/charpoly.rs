use std::fmt;

use num_traits::Zero;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{exact_div, Scalar};

/// Monic integer polynomial `det(λI − M)`, coefficients stored by ascending power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoly<T = num_bigint::BigInt> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CharPoly<T> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `λ^power` (zero beyond the degree).
    pub fn coeff(&self, power: usize) -> T {
        self.coeffs.get(power).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(λ²)`.
    pub fn substitute_square(&self) -> Self {
        let mut coeffs = vec![T::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// `λ^k · p(λ)`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }
}

impl<T: Scalar> fmt::Display for CharPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < T::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            let show_mag = !magnitude.is_one() || power == 0;
            if show_mag {
                write!(f, "{magnitude}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{power}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: Scalar> Matrix<T> {
    /// Characteristic polynomial by the Faddeev–LeVerrier recurrence.
    ///
    /// `M_k = A·M_{k-1} + c_{n-k+1}·I`, `c_{n-k} = −tr(A·M_k)/k`. For integer
    /// matrices every trace is divisible by `k`, so the recurrence stays in
    /// the integers.
    pub fn char_poly(&self) -> Result<CharPoly<T>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let am = self.mul(&m)?;
            m = am.add(&Matrix::identity(n).scale(&coeffs[n - k + 1]))?;
            let tr = self.mul(&m)?.trace();
            coeffs[n - k] = -exact_div(tr, &scalar_from_usize::<T>(k));
        }
        Ok(CharPoly::from_coeffs(coeffs))
    }
}

fn scalar_from_usize<T: Scalar>(k: usize) -> T {
    // repeated doubling keeps this generic over `From<i8>` scalars
    let mut out = T::zero();
    let mut bit = T::one();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            out = out + bit.clone();
        }
        bit = bit.clone() + bit;
        k >>= 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(c: &[i64]) -> CharPoly<BigInt> {
        CharPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn k2_char_poly() {
        let a = Matrix::<BigInt>::from_rows(vec![
            vec![0.into(), 1.into()],
            vec![1.into(), 0.into()],
        ])
        .unwrap();
        let p = a.char_poly().unwrap();
        assert_eq!(p, poly(&[-1, 0, 1]));
        assert_eq!(p.to_string(), "λ^2 - 1");
    }

    #[test]
    fn non_square_rejected() {
        assert!(Matrix::<i64>::zeros(2, 1).char_poly().is_err());
    }

    #[test]
    fn empty_matrix_has_constant_one() {
        let p = Matrix::<i64>::zeros(0, 0).char_poly().unwrap();
        assert_eq!(p.coeffs(), &[1]);
    }

    #[test]
    fn polynomial_helpers() {
        let p = poly(&[-1, 2, 1]); // λ² + 2λ − 1
        assert_eq!(p.substitute_square(), poly(&[-1, 0, 2, 0, 1]));
        assert_eq!(p.shift(2), poly(&[0, 0, -1, 2, 1]));
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(14));
        assert_eq!(p.to_string(), "λ^2 + 2λ - 1");
    }

    #[test]
    fn usize_conversion() {
        for k in 0..40usize {
            assert_eq!(scalar_from_usize::<i64>(k), k as i64);
        }
    }
}
