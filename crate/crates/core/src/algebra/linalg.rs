//! Exact linear algebra over the rationals and over polynomial fraction fields.

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::rational::Rat;
use super::AlgebraError;

/// A rectangular rational matrix with an optional right-hand side.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    cols: usize,
    matrix: Vec<Vec<Rat>>,
    rhs: Option<Vec<Rat>>,
}

impl LinearSystem {
    pub fn new(cols: usize, matrix: Vec<Vec<Rat>>) -> Result<Self, AlgebraError> {
        if let Some(row) = matrix.iter().find(|r| r.len() != cols) {
            return Err(AlgebraError::DimensionMismatch { expected: cols, found: row.len() });
        }
        Ok(LinearSystem { cols, matrix, rhs: None })
    }

    pub fn with_rhs(mut self, rhs: Vec<Rat>) -> Result<Self, AlgebraError> {
        if rhs.len() != self.matrix.len() {
            return Err(AlgebraError::DimensionMismatch { expected: self.matrix.len(), found: rhs.len() });
        }
        self.rhs = Some(rhs);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    /// Basis of the kernel, in reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        nullspace(&self.matrix, self.cols)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.matrix.clone();
        rref(&mut m, self.cols).len()
    }

    /// A particular solution of `M x = rhs` (free variables set to zero), or
    /// `None` when the system is inconsistent. A missing right-hand side is
    /// treated as zero.
    pub fn solve(&self) -> Option<Vec<Rat>> {
        let rhs = self.rhs.clone().unwrap_or_else(|| vec![Rat::zero(); self.matrix.len()]);
        let mut aug: Vec<Vec<Rat>> = self
            .matrix
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b);
                r
            })
            .collect();
        let pivots = rref(&mut aug, self.cols + 1);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug[row][self.cols].clone();
        }
        Some(x)
    }
}

/// In-place reduced row echelon form over the first `cols` columns. Returns
/// the pivot columns; rows past the rank are zero afterwards.
pub fn rref(m: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        let nz: Vec<usize> = (c..m[r].len()).filter(|&j| !m[r][j].is_zero()).collect();
        for &j in &nz {
            m[r][j] *= &inv;
        }
        let pivot_row: Vec<(usize, Rat)> = nz.iter().map(|&j| (j, m[r][j].clone())).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, v) in &pivot_row {
                row[*j] -= &f * v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut work = m.to_vec();
    rref(&mut work, cols).len()
}

/// Kernel basis of `m` (with `cols` columns) as reduced row echelon rows.
pub fn nullspace(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work, cols);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -work[row][f].clone();
        }
        basis.push(v);
    }
    let k = basis.len();
    rref(&mut basis, cols);
    basis.truncate(k);
    basis
}

/// Rank of a matrix of Laurent polynomials over the fraction field of the
/// polynomial ring, by fraction-free (Bareiss) elimination.
///
/// Each row is first multiplied by a monomial to clear negative exponents;
/// that is a unit in the Laurent ring and leaves the rank unchanged.
pub fn rank_over_fraction_field(m: &[Vec<LaurentPoly>]) -> Result<usize, AlgebraError> {
    let Some(first) = m.iter().flatten().next() else {
        return Ok(0);
    };
    let vars = first.vars().clone();
    let cols = m[0].len();
    let mut a: Vec<Vec<LaurentPoly>> = Vec::with_capacity(m.len());
    for row in m {
        if row.len() != cols {
            return Err(AlgebraError::DimensionMismatch { expected: cols, found: row.len() });
        }
        let mut shift = vec![0i32; vars.len()];
        for e in row {
            if e.vars()[..] != vars[..] {
                return Err(AlgebraError::VariableMismatch { left: vars.to_vec(), right: e.vars().to_vec() });
            }
            if e.is_zero() {
                continue;
            }
            for (s, me) in shift.iter_mut().zip(e.min_exponents()) {
                *s = (*s).min(me);
            }
        }
        let shift: Vec<i32> = shift.iter().map(|s| -s).collect();
        a.push(row.iter().map(|e| e.shift(&shift)).collect());
    }

    let rows = a.len();
    let mut prev = LaurentPoly::one(&vars);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Smallest nonzero pivot keeps intermediate entries small.
        let Some(p) = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].len()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
            a[i][c] = LaurentPoly::zero(&vars);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    Ok(r)
}

/// Rank after evaluating every entry at a rational point (in variable order).
pub fn rank_at_point(m: &[Vec<LaurentPoly>], point: &[Rat]) -> Result<usize, AlgebraError> {
    let mut values = Vec::with_capacity(m.len());
    for row in m {
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            r.push(e.evaluate(point)?);
        }
        values.push(r);
    }
    Ok(rank(&values))
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::vars;
    use crate::algebra::rational::{int, rat};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn nullspace_single_equation() {
        let sys = LinearSystem::new(2, mat(&[&[1, -1]])).unwrap();
        assert_eq!(sys.nullspace(), mat(&[&[1, 1]]));
    }

    #[test]
    fn nullspace_identity_is_trivial() {
        let sys = LinearSystem::new(3, mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert!(sys.nullspace().is_empty());
    }

    #[test]
    fn nullspace_hand_elimination() {
        let sys = LinearSystem::new(3, mat(&[&[1, 0, -1], &[0, 1, -1]])).unwrap();
        assert_eq!(sys.nullspace(), mat(&[&[1, 1, 1]]));
    }

    #[test]
    fn nullspace_is_reduced_echelon() {
        // Kernel of [1 2 3 4], reduced by hand.
        let sys = LinearSystem::new(4, mat(&[&[1, 2, 3, 4]])).unwrap();
        let basis = sys.nullspace();
        let expected = vec![
            vec![int(1), int(0), int(0), rat(-1, 4)],
            vec![int(0), int(1), int(0), rat(-1, 2)],
            vec![int(0), int(0), int(1), rat(-3, 4)],
        ];
        assert_eq!(basis, expected);
        for v in &basis {
            assert!(mat_vec(sys.matrix(), v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_particular() {
        let sys = LinearSystem::new(2, mat(&[&[1, 1], &[1, -1]])).unwrap().with_rhs(vec![int(2), int(0)]).unwrap();
        assert_eq!(sys.solve().unwrap(), vec![int(1), int(1)]);
        let bad = LinearSystem::new(1, mat(&[&[1], &[1]])).unwrap().with_rhs(vec![int(1), int(2)]).unwrap();
        assert!(bad.solve().is_none());
    }

    #[test]
    fn generic_rank_examples() {
        let r = vars(&["x", "y"]);
        let x = LaurentPoly::var(&r, "x").unwrap();
        let y = LaurentPoly::var(&r, "y").unwrap();
        let z = LaurentPoly::zero(&r);
        assert_eq!(rank_over_fraction_field(&[vec![x.clone(), z.clone()], vec![z, y.clone()]]).unwrap(), 2);
        assert_eq!(rank_over_fraction_field(&[vec![x.clone(), x.clone()], vec![y.clone(), y.clone()]]).unwrap(), 1);
    }

    #[test]
    fn generic_rank_with_negative_exponents() {
        let r = vars(&["s", "t"]);
        let a = LaurentPoly::term(&r, &[-1, 0], int(1));
        let b = LaurentPoly::term(&r, &[0, 1], int(1));
        let c = LaurentPoly::term(&r, &[-2, 1], int(1));
        let d = LaurentPoly::term(&r, &[-1, 2], int(1));
        // Second row is t/s times the first.
        assert_eq!(rank_over_fraction_field(&[vec![a, b], vec![c, d]]).unwrap(), 1);
    }

    #[test]
    fn generic_rank_bounds_point_rank() {
        let r = vars(&["x", "y"]);
        let x = LaurentPoly::var(&r, "x").unwrap();
        let y = LaurentPoly::var(&r, "y").unwrap();
        let one = LaurentPoly::one(&r);
        let m = vec![vec![x.clone(), y.clone()], vec![one.clone(), one.clone()]];
        assert_eq!(rank_over_fraction_field(&m).unwrap(), 2);
        assert_eq!(rank_at_point(&m, &[int(3), int(3)]).unwrap(), 1);
        assert_eq!(rank_at_point(&m, &[int(3), int(4)]).unwrap(), 2);
    }
}
