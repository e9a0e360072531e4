use super::field::Field;

/// A dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
    ctx: F::Ctx,
}

/// Reduced echelon form: nonzero rows only, each with a unit pivot at
/// `pivots[i]` and zeros in every other pivot column.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>, ctx: F::Ctx) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        ExactMatrix {
            rows,
            cols,
            entries,
            ctx,
        }
    }

    pub fn zeros(rows: usize, cols: usize, ctx: F::Ctx) -> Self {
        let entries = vec![F::zero(&ctx); rows * cols];
        Self::new(rows, cols, entries, ctx)
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize, ctx: F::Ctx) -> Self {
        let n = rows.len();
        let entries: Vec<F> = rows
            .into_iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r
            })
            .collect();
        Self::new(n, cols, entries, ctx)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(&self.ctx), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(mut self, other: &ExactMatrix<F>) -> Self {
        assert_eq!(self.cols, other.cols);
        self.entries.extend(other.entries.iter().cloned());
        self.rows += other.rows;
        self
    }
}

/// Plain Gauss-Jordan elimination. The pivot of each column is the first
/// nonzero entry at or below the current rank.
pub(crate) fn gauss_jordan<F: Field>(mut m: Vec<Vec<F>>, order: &[usize], _ctx: &F::Ctx) -> Echelon<F> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for &c in order {
        if rank == m.len() {
            break;
        }
        let Some(found) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        let inv = m[rank][c].inv();
        for x in m[rank].iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub_ref(&factor.mul_ref(p));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    m.truncate(rank);
    Echelon { rows: m, pivots }
}

/// Reduced row echelon form in the natural column order.
pub fn rref<F: Field>(m: &ExactMatrix<F>) -> Echelon<F> {
    let order: Vec<usize> = (0..m.cols).collect();
    F::echelon(m.row_vecs(), &order, &m.ctx)
}

pub fn rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    rref(m).pivots.len()
}

/// Basis of `{v : M v = 0}`.
///
/// The basis is itself in reduced echelon form with respect to the natural
/// column order: vector `k` has a 1 in its leading column, and every other
/// vector vanishes there. Vectors are returned by increasing leading column.
///
/// Eliminating `M` with the columns visited right to left makes the free
/// columns exactly the leading columns of that canonical kernel basis, so a
/// single elimination suffices.
pub fn nullspace<F: Field>(m: &ExactMatrix<F>) -> Vec<Vec<F>> {
    let order: Vec<usize> = (0..m.cols).rev().collect();
    let ech = F::echelon(m.row_vecs(), &order, &m.ctx);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(&m.ctx); m.cols];
            v[f] = F::one(&m.ctx);
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if !row[f].is_zero() {
                    v[p] = row[f].neg_ref();
                }
            }
            v
        })
        .collect()
}
