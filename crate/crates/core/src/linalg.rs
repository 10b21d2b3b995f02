//! Dense matrices over an exact field and the subspace calculus built on
//! reduced row echelon form.

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};

/// A dense row-major matrix. Two matrices compare equal iff they have the same
/// shape, field and entries, so two rref outputs can be compared directly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn empty(field: F, cols: usize) -> Self {
        Self {
            field,
            rows: 0,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn from_rows<I>(field: F, cols: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut m = Self::empty(field, cols);
        for row in rows {
            m.push_row(row)?;
        }
        Ok(m)
    }

    /// Convenience constructor from small integers; every row must have the
    /// same length.
    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect()),
        )
    }

    pub fn push_row(&mut self, row: Vec<F::Elem>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: row.len(),
            });
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[F::Elem]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    /// Reduced row echelon form with zero rows dropped: pivots are 1, pivot
    /// columns are zero outside their pivot row, rows ordered by pivot column.
    pub fn rref(&self) -> Self {
        let f = self.field;
        let mut rows: Vec<Vec<F::Elem>> = self.iter_rows().map(<[_]>::to_vec).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][col])) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = f.inv(&rows[rank][col]).expect("pivot is nonzero");
            for x in rows[rank].iter_mut().skip(col) {
                *x = f.mul(x, &inv);
            }
            let pivot_row = std::mem::take(&mut rows[rank]);
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || f.is_zero(&row[col]) {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !f.is_zero(p) {
                        *x = f.sub(x, &f.mul(&factor, p));
                    }
                }
            }
            rows[rank] = pivot_row;
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Self::from_rows(f, self.cols, rows).expect("row lengths preserved")
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    /// Pivot column of each row, assuming `self` is already in rref.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.iter_rows()
            .map(|r| {
                r.iter()
                    .position(|x| !self.field.is_zero(x))
                    .expect("rref rows are nonzero")
            })
            .collect()
    }

    /// Stacks the rows of `other` under the rows of `self`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self::new(self.field, self.rows + other.rows, self.cols, entries)
    }

    /// A basis of the right null space `{x : self * x = 0}`, as rows, in
    /// rref.
    pub fn kernel(&self) -> Self {
        let f = self.field;
        let r = self.rref();
        let pivots = r.pivot_columns();
        let mut basis = Self::empty(f, self.cols);
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis
                .push_row(v)
                .expect("kernel vector has the right length");
        }
        basis.rref()
    }

    /// Entrywise image under a field homomorphism.
    pub fn map_entries<G: Field>(
        &self,
        field: G,
        mut map: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Matrix<G>> {
        let entries = self
            .entries
            .iter()
            .map(&mut map)
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(field, self.rows, self.cols, entries)
    }

    pub fn to_fraction_strings(&self) -> Vec<Vec<String>> {
        self.iter_rows()
            .map(|r| r.iter().map(|x| self.field.to_fraction_string(x)).collect())
            .collect()
    }
}

impl Matrix<Rationals> {
    /// Reduces every entry modulo `p`. Fails if some denominator vanishes mod
    /// `p`.
    pub fn reduce_mod(&self, field: PrimeField) -> Result<Matrix<PrimeField>> {
        self.map_entries(field, |q| field.reduce(q))
    }
}

/// True iff the row spaces of `a` and `b` coincide, decided by comparing their
/// rref grids.
pub fn subspace_equal<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch {
            left: a.cols,
            right: b.cols,
        });
    }
    Ok(a.rref() == b.rref())
}

/// True iff `v` lies in the row space of `a`.
pub fn in_span<F: Field>(v: &[F::Elem], a: &Matrix<F>) -> Result<bool> {
    if v.len() != a.cols {
        return Err(Error::DimensionMismatch {
            left: a.cols,
            right: v.len(),
        });
    }
    let reduced = a.rref();
    Ok(reduce_against_rref(v, &reduced)
        .iter()
        .all(|x| a.field.is_zero(x)))
}

/// Remainder of `v` after eliminating the pivot columns of an rref basis.
/// Zero iff `v` is in the span.
pub fn reduce_against_rref<F: Field>(v: &[F::Elem], rref: &Matrix<F>) -> Vec<F::Elem> {
    let f = rref.field;
    let mut out = v.to_vec();
    for (i, p) in rref.pivot_columns().into_iter().enumerate() {
        if f.is_zero(&out[p]) {
            continue;
        }
        let factor = out[p].clone();
        for (x, b) in out.iter_mut().zip(rref.row(i)) {
            if !f.is_zero(b) {
                *x = f.sub(x, &f.mul(&factor, b));
            }
        }
    }
    out
}
