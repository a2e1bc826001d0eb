//! Reduced row echelon forms over GF(2).
//!
//! The pivot of a row is its highest set bit. Rows are kept fully reduced and sorted by
//! descending pivot, so the echelon form of a subspace is canonical: two echelon forms span the
//! same space exactly when their rows are equal.

use crate::bits::BitVec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn from_owned_rows(ncols: usize, rows: impl IntoIterator<Item = BitVec>) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.ncols);
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanning set. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.ncols, "row length does not match column count");
        let r = self.reduce(&v);
        let Some(p) = r.highest_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q > p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Row-space equality.
    pub fn same_space(&self, other: &Echelon) -> bool {
        self.ncols == other.ncols && self.rows == other.rows
    }

    /// Basis of the orthogonal complement under the standard dot product.
    pub fn orthogonal_complement(&self) -> Vec<BitVec> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::zeros(self.ncols);
                v.set(f, true);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    pub fn complement_echelon(&self) -> Echelon {
        Echelon::from_owned_rows(self.ncols, self.orthogonal_complement())
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Echelon) -> Echelon {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }
}

/// Basis of `{x in GF(2)^m : sum_i x_i * images[i] = 0}` where `m = images.len()`.
pub fn kernel_of_images(images: &[BitVec]) -> Vec<BitVec> {
    let m = images.len();
    if m == 0 {
        return Vec::new();
    }
    let width = images[0].len();
    // Low m bits carry the combination, high bits the image, so pivots prefer the image part.
    let mut e = Echelon::new(m + width);
    for (i, img) in images.iter().enumerate() {
        let mut unit = BitVec::zeros(m);
        unit.set(i, true);
        e.insert(unit.concat(img));
    }
    e.rows()
        .iter()
        .zip(e.pivots())
        .filter(|(_, &p)| p < m)
        .map(|(r, _)| r.slice(0, m))
        .collect()
}

/// Columns of the matrix whose rows are `rows`, each column as a bit vector of length `rows.len()`.
pub fn columns(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut cols = vec![BitVec::zeros(rows.len()); ncols];
    for (i, r) in rows.iter().enumerate() {
        for j in r.iter_ones() {
            cols[j].set(i, true);
        }
    }
    cols
}
