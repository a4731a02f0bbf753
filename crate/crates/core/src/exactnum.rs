//! Exact rational scalars and exact matrices with rank / kernel queries.
//!
//! Rank is computed over the rationals, never floating point. Small dense
//! matrices go through fraction-free (Bareiss) elimination on an integer
//! rescaling of the rows; large sparse blocks coming from the homological
//! modules go through a sparse integer elimination with Markowitz-style
//! pivoting and content stripping. Both paths are exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

pub type Int = BigInt;
pub type Rational = BigRational;

/// Dense exact-rational matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        ExactMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    /// Sparse triplet constructor; duplicate entries are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, Rational)]) -> Self {
        let mut m = Self::zero(rows, cols);
        for (i, j, v) in entries {
            let cur = m.get(*i, *j).clone();
            m.set(*i, *j, cur + v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).clone();
                        out.set(i, j, cur + a * b);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let int_rows: Vec<Vec<(usize, Int)>> = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                integer_row(row)
            })
            .collect();
        if self.rows * self.cols <= 64 * 64 {
            bareiss_rank(int_rows, self.cols)
        } else {
            sparse_int_rank(int_rows, self.cols)
        }
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Scale a rational row by the lcm of denominators and strip the content.
fn integer_row(row: &[Rational]) -> Vec<(usize, Int)> {
    let mut lcm = Int::one();
    for v in row {
        if !v.is_zero() {
            lcm = lcm.lcm(v.denom());
        }
    }
    let mut out: Vec<(usize, Int)> = Vec::new();
    for (j, v) in row.iter().enumerate() {
        if !v.is_zero() {
            out.push((j, v.numer() * (&lcm / v.denom())));
        }
    }
    strip_content(&mut out);
    out
}

fn strip_content(row: &mut [(usize, Int)]) {
    let mut g = Int::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g > Int::one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Fraction-free Bareiss elimination with full pivoting; returns the rank.
fn bareiss_rank(rows: Vec<Vec<(usize, Int)>>, cols: usize) -> usize {
    let nrows = rows.len();
    let mut a: Vec<Vec<Int>> = vec![vec![Int::zero(); cols]; nrows];
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row {
            a[i][*j] = v.clone();
        }
    }
    let mut prev = Int::one();
    let mut rank = 0;
    for step in 0..nrows.min(cols) {
        // full pivot search in the trailing submatrix
        let mut pivot = None;
        'search: for i in step..nrows {
            for j in step..cols {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(step, pi);
        if pj != step {
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
        }
        rank += 1;
        let pv = a[step][step].clone();
        for i in step + 1..nrows {
            let head = a[i][step].clone();
            for j in step + 1..cols {
                let t = &a[i][j] * &pv - &head * &a[step][j];
                debug_assert!((&t % &prev).is_zero());
                a[i][j] = t / &prev;
            }
            a[i][step] = Int::zero();
        }
        prev = pv;
    }
    rank
}

/// Sparse exact integer elimination with greedy Markowitz pivoting.
///
/// Rows are primitive integer vectors; after every combination the row content
/// is stripped again, which keeps growth tame on the quadric differentials.
pub fn sparse_int_rank(rows: Vec<Vec<(usize, Int)>>, cols: usize) -> usize {
    let mut live: Vec<Vec<(usize, Int)>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut col_count: Vec<u32> = vec![0; cols];
    for r in &live {
        for (j, _) in r {
            col_count[*j] += 1;
        }
    }
    let mut rank = 0;
    while !live.is_empty() {
        // pick the shortest row, then its rarest column
        let (ri, _) = live
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .expect("nonempty");
        let prow = live.swap_remove(ri);
        let (pcol, pval) = prow
            .iter()
            .min_by_key(|(j, _)| col_count[*j])
            .map(|(j, v)| (*j, v.clone()))
            .expect("nonempty row");
        rank += 1;
        for (j, _) in &prow {
            col_count[*j] -= 1;
        }
        let mut next: Vec<Vec<(usize, Int)>> = Vec::with_capacity(live.len());
        for row in live.into_iter() {
            let hit = row.iter().find(|(j, _)| *j == pcol).map(|(_, v)| v.clone());
            match hit {
                None => next.push(row),
                Some(h) => {
                    for (j, _) in &row {
                        col_count[*j] -= 1;
                    }
                    let mut combined = axpy(&row, &prow, &pval, &h, pcol);
                    strip_content(&mut combined);
                    if !combined.is_empty() {
                        for (j, _) in &combined {
                            col_count[*j] += 1;
                        }
                        next.push(combined);
                    }
                }
            }
        }
        live = next;
    }
    rank
}

/// pval * row - h * prow, dropping column `pcol` (which cancels by construction).
fn axpy(
    row: &[(usize, Int)],
    prow: &[(usize, Int)],
    pval: &Int,
    h: &Int,
    pcol: usize,
) -> Vec<(usize, Int)> {
    let mut out = Vec::with_capacity(row.len() + prow.len());
    let mut i = 0;
    let mut k = 0;
    while i < row.len() || k < prow.len() {
        let jr = row.get(i).map(|(j, _)| *j).unwrap_or(usize::MAX);
        let jp = prow.get(k).map(|(j, _)| *j).unwrap_or(usize::MAX);
        if jr < jp {
            out.push((jr, pval * &row[i].1));
            i += 1;
        } else if jp < jr {
            out.push((jp, -(h * &prow[k].1)));
            k += 1;
        } else {
            let v = pval * &row[i].1 - h * &prow[k].1;
            if !v.is_zero() {
                out.push((jr, v));
            }
            i += 1;
            k += 1;
        }
    }
    out.retain(|(j, _)| *j != pcol);
    out
}

/// Rank of a matrix given as sparse rational rows.
pub fn sparse_rank(rows: &[Vec<(usize, Rational)>], cols: usize) -> usize {
    let int_rows: Vec<Vec<(usize, Int)>> = rows
        .iter()
        .map(|r| {
            let mut lcm = Int::one();
            for (_, v) in r {
                lcm = lcm.lcm(v.denom());
            }
            let mut out: Vec<(usize, Int)> = r
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (*j, v.numer() * (&lcm / v.denom())))
                .collect();
            out.sort_by_key(|(j, _)| *j);
            strip_content(&mut out);
            out
        })
        .collect();
    sparse_int_rank(int_rows, cols)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from(Int::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(ExactMatrix::identity(2).rank(), 2);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(ExactMatrix::zero(3, 4).rank(), 0);
        assert_eq!(ExactMatrix::zero(0, 0).rank(), 0);
    }

    #[test]
    fn transpose_shapes() {
        let m = ExactMatrix::from_rows(vec![
            vec![int(1), int(2), int(3)],
            vec![int(4), int(5), int(6)],
        ]);
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.get(2, 1), &int(6));
        assert_eq!(t.transpose(), m);
    }

    #[test]
    fn scalar_transpose() {
        let m = ExactMatrix::from_rows(vec![vec![int(5)]]);
        assert_eq!(m.transpose(), m);
    }

    #[test]
    fn rank_with_fractions() {
        let m = ExactMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), int(1)],
        ]);
        // second row = 3 * first row
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullity(), 1);
    }

    #[test]
    fn rank_transpose_invariant() {
        let m = ExactMatrix::from_rows(vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn sparse_matches_dense() {
        let rows = vec![
            vec![(0usize, int(1)), (3, int(-2))],
            vec![(1, int(2)), (3, int(4))],
            vec![(0, int(2)), (1, int(2)), (3, int(0))],
            vec![(0, int(1)), (1, int(2)), (3, int(2))],
        ];
        let dense = ExactMatrix::from_triplets(
            4,
            4,
            &rows
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v.clone())))
                .collect::<Vec<_>>(),
        );
        assert_eq!(sparse_rank(&rows, 4), dense.rank());
    }
}
