use crate::cyclotomic::CyclotomicInteger;
use crate::error::Result;

use super::{CayleyGraph, WeightMode};

/// A materialized adjacency matrix `A[i][j] = f(i + j)` or `zeta^{f(i + j)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdjacencyMatrix {
    Additive(Vec<Vec<u32>>),
    Multiplicative(Vec<Vec<CyclotomicInteger>>),
}

impl AdjacencyMatrix {
    pub fn dim(&self) -> usize {
        match self {
            AdjacencyMatrix::Additive(m) => m.len(),
            AdjacencyMatrix::Multiplicative(m) => m.len(),
        }
    }

    pub fn is_dyadic(&self) -> bool {
        match self {
            AdjacencyMatrix::Additive(m) => dyadic_check_matrix(m),
            AdjacencyMatrix::Multiplicative(m) => dyadic_check_matrix(m),
        }
    }
}

impl CayleyGraph {
    pub fn adjacency_matrix(&self, mode: WeightMode) -> Result<AdjacencyMatrix> {
        Ok(match mode {
            WeightMode::Additive => AdjacencyMatrix::Additive(self.additive_matrix()?),
            WeightMode::Multiplicative => {
                AdjacencyMatrix::Multiplicative(self.multiplicative_matrix()?)
            }
        })
    }

    pub fn additive_matrix(&self) -> Result<Vec<Vec<u32>>> {
        self.limits.check_matrix(self.f.n())?;
        let size = self.order();
        Ok((0..size)
            .map(|i| (0..size).map(|j| self.weight(i, j)).collect())
            .collect())
    }

    pub fn multiplicative_matrix(&self) -> Result<Vec<Vec<CyclotomicInteger>>> {
        self.limits.check_matrix(self.f.n())?;
        let size = self.order();
        let k = self.f.k();
        let roots: Vec<_> = (0..self.q())
            .map(|a| CyclotomicInteger::root_unchecked(a, k))
            .collect();
        Ok((0..size)
            .map(|i| {
                (0..size)
                    .map(|j| roots[self.weight(i, j) as usize].clone())
                    .collect()
            })
            .collect())
    }

    /// Checks the block structure `A[i][j] = A[i + 2^m][j + 2^m]` of the
    /// additive matrix for every `m < n`.
    pub fn dyadic_check(&self) -> Result<bool> {
        Ok(dyadic_check_matrix(&self.additive_matrix()?))
    }
}

/// True when `m` is a `2^n x 2^n` matrix with `m[i][j] = m[i ^ s][j ^ s]`
/// for every power of two `s < 2^n`; equivalently every `2s x 2s` diagonal
/// block has the form `[[P, Q], [Q, P]]`.
pub fn dyadic_check_matrix<T: PartialEq>(m: &[Vec<T>]) -> bool {
    let size = m.len();
    if !size.is_power_of_two() || m.iter().any(|row| row.len() != size) {
        return false;
    }
    let mut s = 1;
    while s < size {
        for i in 0..size {
            for j in 0..size {
                if m[i][j] != m[i ^ s][j ^ s] {
                    return false;
                }
            }
        }
        s *= 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::GeneralizedBooleanFunction;

    fn quadratic_q4() -> CayleyGraph {
        CayleyGraph::new(GeneralizedBooleanFunction::new(2, 2, vec![0, 0, 2, 3]).unwrap())
    }

    #[test]
    fn quadratic_q4_multiplicative() {
        let one = CyclotomicInteger::root(0, 2).unwrap();
        let minus_one = CyclotomicInteger::root(2, 2).unwrap();
        let minus_i = CyclotomicInteger::root(3, 2).unwrap();
        let expected = vec![
            vec![one.clone(), one.clone(), minus_one.clone(), minus_i.clone()],
            vec![one.clone(), one.clone(), minus_i.clone(), minus_one.clone()],
            vec![minus_one.clone(), minus_i.clone(), one.clone(), one.clone()],
            vec![minus_i.clone(), minus_one.clone(), one.clone(), one.clone()],
        ];
        assert_eq!(quadratic_q4().multiplicative_matrix().unwrap(), expected);
    }

    #[test]
    fn quadratic_q4_additive() {
        assert_eq!(
            quadratic_q4().additive_matrix().unwrap(),
            vec![vec![0, 0, 2, 3], vec![0, 0, 3, 2], vec![2, 3, 0, 0], vec![3, 2, 0, 0]]
        );
    }

    #[test]
    fn zero_function_is_all_ones() {
        let g = CayleyGraph::new(GeneralizedBooleanFunction::zero(3, 2).unwrap());
        let m = g.multiplicative_matrix().unwrap();
        assert!(m.iter().flatten().all(|x| *x == CyclotomicInteger::one(2)));
    }

    #[test]
    fn dyadic() {
        let g = quadratic_q4();
        assert!(g.dyadic_check().unwrap());
        assert!(g.adjacency_matrix(WeightMode::Multiplicative).unwrap().is_dyadic());
        let mut m = g.additive_matrix().unwrap();
        m[1][2] = 1;
        assert!(!dyadic_check_matrix(&m));
        let f = GeneralizedBooleanFunction::new(3, 3, vec![5, 1, 7, 0, 2, 2, 6, 3]).unwrap();
        assert!(CayleyGraph::new(f).dyadic_check().unwrap());
        assert!(!dyadic_check_matrix(&[vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]]));
    }

    #[test]
    fn matrix_cap() {
        let f = GeneralizedBooleanFunction::zero(13, 1).unwrap();
        assert!(CayleyGraph::new(f).additive_matrix().is_err());
    }
}
