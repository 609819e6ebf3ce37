//! Incremental row echelon forms over a finite field.
//!
//! Rows are kept pivot-normalized and sorted by pivot column; over GF(2) rows
//! are bit-packed into machine words. Batch reduction of candidate rows is the
//! hot loop of space construction and runs in parallel when the `parallel`
//! feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::field::FieldCtx;

#[derive(Clone, Debug)]
enum RowData {
    Dense(Vec<u64>),
    Bits(Vec<u64>),
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    data: RowData,
}

/// A row-echelon basis of a subspace of k^ncols.
#[derive(Clone, Debug)]
pub struct EchelonMat {
    field: FieldCtx,
    ncols: usize,
    bit: bool,
    rows: Vec<Row>,
}

fn words_for(ncols: usize) -> usize {
    ncols.div_ceil(64)
}

fn pack_bits(v: &[u64]) -> Vec<u64> {
    let mut w = vec![0u64; words_for(v.len())];
    for (c, &x) in v.iter().enumerate() {
        if x != 0 {
            w[c / 64] |= 1u64 << (c % 64);
        }
    }
    w
}

fn unpack_bits(w: &[u64], ncols: usize) -> Vec<u64> {
    (0..ncols).map(|c| (w[c / 64] >> (c % 64)) & 1).collect()
}

impl EchelonMat {
    pub fn new(field: FieldCtx, ncols: usize) -> Self {
        let bit = field.order() == 2;
        EchelonMat { field, ncols, bit, rows: Vec::new() }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.rows.binary_search_by_key(&col, |r| r.pivot).is_ok()
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        match &self.rows[i].data {
            RowData::Dense(v) => v.clone(),
            RowData::Bits(w) => unpack_bits(w, self.ncols),
        }
    }

    pub fn row_pivot(&self, i: usize) -> usize {
        self.rows[i].pivot
    }

    /// Residual of `v` after eliminating all pivot columns present in the
    /// matrix. The result has zeros in every pivot column.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.ncols);
        if self.bit {
            let mut w = pack_bits(v);
            self.reduce_bits_in_place(&mut w);
            unpack_bits(&w, self.ncols)
        } else {
            let mut out = v.to_vec();
            self.reduce_dense_in_place(&mut out);
            out
        }
    }

    fn reduce_bits_in_place(&self, w: &mut [u64]) {
        for row in &self.rows {
            let p = row.pivot;
            if (w[p / 64] >> (p % 64)) & 1 == 1 {
                if let RowData::Bits(rw) = &row.data {
                    for (a, b) in w.iter_mut().zip(rw) {
                        *a ^= b;
                    }
                }
            }
        }
    }

    fn reduce_dense_in_place(&self, out: &mut [u64]) {
        let f = &self.field;
        for row in &self.rows {
            let c = out[row.pivot];
            if c != 0 {
                if let RowData::Dense(rv) = &row.data {
                    for (a, b) in out.iter_mut().zip(rv) {
                        if *b != 0 {
                            *a = f.sub(*a, f.mul(c, *b));
                        }
                    }
                }
            }
        }
    }

    /// Reduce then, if the residual is nonzero, normalize and add it as a new
    /// row. Returns the new row's pivot column, or `None` if `v` was already
    /// in the span.
    pub fn insert(&mut self, v: &[u64]) -> Option<usize> {
        let red = self.reduce(v);
        self.insert_reduced(red)
    }

    /// Insert a vector already known to be fully reduced against the current
    /// rows (e.g. output of [`reduce_batch`]; the caller must re-reduce if
    /// rows were added in between).
    pub fn insert_reduced(&mut self, red: Vec<u64>) -> Option<usize> {
        let pivot = red.iter().position(|&c| c != 0)?;
        let data = if self.bit {
            RowData::Bits(pack_bits(&red))
        } else {
            let inv = self.field.inv(red[pivot]).unwrap();
            RowData::Dense(red.iter().map(|&c| self.field.mul(c, inv)).collect())
        };
        let idx = self.rows.partition_point(|r| r.pivot < pivot);
        debug_assert!(idx >= self.rows.len() || self.rows[idx].pivot != pivot);
        self.rows.insert(idx, Row { pivot, data });
        Some(pivot)
    }

    /// Reduce many candidate rows against the current rows, sequentially.
    pub fn reduce_batch_seq(&self, batch: &[Vec<u64>]) -> Vec<Vec<u64>> {
        batch.iter().map(|v| self.reduce(v)).collect()
    }

    /// Reduce many candidate rows against the current rows; parallel when the
    /// `parallel` feature is enabled, otherwise identical to
    /// [`reduce_batch_seq`].
    #[cfg(feature = "parallel")]
    pub fn reduce_batch(&self, batch: &[Vec<u64>]) -> Vec<Vec<u64>> {
        batch.par_iter().map(|v| self.reduce(v)).collect()
    }

    #[cfg(not(feature = "parallel"))]
    pub fn reduce_batch(&self, batch: &[Vec<u64>]) -> Vec<Vec<u64>> {
        self.reduce_batch_seq(batch)
    }

    /// Full reduced echelon form: additionally eliminates every pivot column
    /// from the rows above it, making the basis canonical.
    pub fn reduced(&self) -> EchelonMat {
        let mut out = self.clone();
        for i in (0..out.rows.len()).rev() {
            let (above, below) = out.rows.split_at_mut(i + 1);
            let lower: Vec<&Row> = below.iter().collect();
            for row in above.iter_mut().take(i + 1) {
                for lrow in &lower {
                    let p = lrow.pivot;
                    match (&mut row.data, &lrow.data) {
                        (RowData::Bits(w), RowData::Bits(lw)) => {
                            if (w[p / 64] >> (p % 64)) & 1 == 1 {
                                for (a, b) in w.iter_mut().zip(lw.iter()) {
                                    *a ^= b;
                                }
                            }
                        }
                        (RowData::Dense(v), RowData::Dense(lv)) => {
                            let c = v[p];
                            if c != 0 {
                                for (a, b) in v.iter_mut().zip(lv.iter()) {
                                    if *b != 0 {
                                        *a = out.field.sub(*a, out.field.mul(c, *b));
                                    }
                                }
                            }
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
        out
    }

    /// Whether `v` lies in the row span.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Coefficients expressing `v` over the current rows, or `None` if `v` is
    /// outside the span. `combo[i]` multiplies row i.
    pub fn express(&self, v: &[u64]) -> Option<Vec<u64>> {
        let f = &self.field;
        let mut rem = v.to_vec();
        let mut combo = vec![0u64; self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let c = rem[row.pivot];
            if c != 0 {
                combo[i] = c;
                match &row.data {
                    RowData::Bits(w) => {
                        for (col, a) in rem.iter_mut().enumerate() {
                            if (w[col / 64] >> (col % 64)) & 1 == 1 {
                                *a ^= 1;
                            }
                        }
                    }
                    RowData::Dense(rv) => {
                        for (a, b) in rem.iter_mut().zip(rv) {
                            if *b != 0 {
                                *a = f.sub(*a, f.mul(c, *b));
                            }
                        }
                    }
                }
            }
        }
        rem.iter().all(|&c| c == 0).then_some(combo)
    }
}
