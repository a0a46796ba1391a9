use num_rational::Ratio;
use num_traits::Zero;

use crate::scalar::Scalar;

/// Exact rational vector. Entries are kept in lowest terms by `Ratio`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector<T: Scalar> {
    entries: Vec<Ratio<T>>,
}

impl<T: Scalar> RationalVector<T> {
    pub fn new(entries: Vec<Ratio<T>>) -> Self {
        Self { entries }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![Ratio::zero(); len])
    }

    pub fn from_integers(values: &[T]) -> Self {
        Self::new(values.iter().cloned().map(Ratio::from_integer).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Ratio<T>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}
