//! Incremental exact Gaussian elimination over a field.

use crate::field::Scalar;

/// Row-echelon accumulator. Each stored row has a leading 1 at its pivot and
/// zeros at the pivots of all earlier rows.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    width: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new() }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*pivot) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
    }

    /// Adds `v` if it is independent of the stored rows; reports whether it was.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pivot) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pivot].inv().expect("nonzero pivot");
        for x in w.iter_mut().skip(pivot) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((pivot, w));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }
}

/// Keeps a maximal independent subset of `vs`, in order.
pub(crate) fn independent(vs: Vec<Vec<Scalar>>, width: usize) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(width);
    let mut out = Vec::new();
    for v in vs {
        if ech.is_full() {
            break;
        }
        if ech.insert(&v) {
            out.push(v);
        }
    }
    out
}
