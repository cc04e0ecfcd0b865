//! Dense square matrices over one cyclotomic field.

use alloc::vec::Vec;

use crate::cyclo::{CycNum, CycloError, GaloisElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    conductor: u32,
    size: usize,
    entries: Vec<CycNum>,
}

impl Matrix {
    /// Rows must all have length `rows.len()` and share `conductor`.
    pub fn from_rows(conductor: u32, rows: Vec<Vec<CycNum>>) -> Matrix {
        let size = rows.len();
        let entries: Vec<CycNum> = rows.into_iter().flatten().collect();
        assert_eq!(entries.len(), size * size, "matrix must be square");
        assert!(entries.iter().all(|e| e.conductor() == conductor));
        Matrix {
            conductor,
            size,
            entries,
        }
    }

    pub fn from_fn(
        conductor: u32,
        size: usize,
        mut f: impl FnMut(usize, usize) -> CycNum,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let e = f(i, j);
                assert_eq!(e.conductor(), conductor);
                entries.push(e);
            }
        }
        Matrix {
            conductor,
            size,
            entries,
        }
    }

    pub fn identity(conductor: u32, size: usize) -> Matrix {
        Self::from_fn(conductor, size, |i, j| {
            if i == j {
                CycNum::one(conductor)
            } else {
                CycNum::zero(conductor)
            }
        })
    }

    pub fn diagonal(conductor: u32, diag: &[CycNum]) -> Matrix {
        Self::from_fn(conductor, diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                CycNum::zero(conductor)
            }
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn map(&self, mut f: impl FnMut(&CycNum) -> CycNum) -> Matrix {
        let entries: Vec<CycNum> = self.entries.iter().map(&mut f).collect();
        let conductor = entries.first().map_or(self.conductor, |e| e.conductor());
        Matrix {
            conductor,
            size: self.size,
            entries,
        }
    }

    pub fn try_map<E>(&self, mut f: impl FnMut(&CycNum) -> Result<CycNum, E>) -> Result<Matrix, E> {
        let entries = self
            .entries
            .iter()
            .map(&mut f)
            .collect::<Result<Vec<_>, E>>()?;
        let conductor = entries.first().map_or(self.conductor, |e| e.conductor());
        Ok(Matrix {
            conductor,
            size: self.size,
            entries,
        })
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.conductor, self.size, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Matrix {
        Self::from_fn(self.conductor, self.size, |i, j| self.get(j, i).conj())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// First `(i, j)` with `self[i][j] != other[i][j]`.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        assert_eq!(self.size, other.size);
        (0..self.size * self.size)
            .find(|&k| self.entries[k] != other.entries[k])
            .map(|k| (k / self.size, k % self.size))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.size, other.size);
        assert_eq!(self.conductor, other.conductor);
        let n = self.size;
        Self::from_fn(self.conductor, n, |i, j| {
            let mut acc = CycNum::zero(self.conductor);
            for k in 0..n {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        })
    }

    /// Multiplies column `j` by `d[j]`.
    pub fn mul_diagonal(&self, d: &[CycNum]) -> Matrix {
        Self::from_fn(self.conductor, self.size, |i, j| self.get(i, j) * &d[j])
    }

    /// Multiplies column `j` by `ζ_M^e[j]`.
    pub fn mul_diagonal_roots(&self, e: &[u32]) -> Matrix {
        Self::from_fn(self.conductor, self.size, |i, j| {
            self.get(i, j).mul_root(e[j] as i64)
        })
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        self.map(|e| e * c)
    }

    pub fn embed(&self, target: u32) -> Result<Matrix, CycloError> {
        let m = self.try_map(|e| e.embed(target))?;
        Ok(Matrix {
            conductor: target,
            ..m
        })
    }

    pub fn galois(&self, g: &GaloisElement) -> Result<Matrix, CycloError> {
        self.try_map(|e| e.galois_apply(g))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.conductor, self.size)
    }

    /// The permutation `π` with `self[i][π(i)] = 1` and zeros elsewhere.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.size;
        let mut perm = Vec::with_capacity(n);
        for i in 0..n {
            let ones: Vec<usize> = (0..n).filter(|&j| self.get(i, j).is_one()).collect();
            let zeros = (0..n).filter(|&j| self.get(i, j).is_zero()).count();
            if ones.len() != 1 || zeros != n - 1 {
                return None;
            }
            perm.push(ones[0]);
        }
        let mut seen = perm.clone();
        seen.sort_unstable();
        seen.dedup();
        (seen.len() == n).then_some(perm)
    }
}
