//! Dense integer matrices, Smith normal form and exact solvers.
//!
//! All arithmetic is over `BigInt`, so eliminations never overflow. The
//! decomposition is `S = U·A·V` with `U`, `V` unimodular and `S` diagonal
//! with a divisibility chain; `U⁻¹` is tracked alongside because lattice
//! saturations need it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense matrix over ℤ, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            a: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(f(i, j)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.a[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix-vector product over ℤ.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, xj) in x.iter().enumerate() {
                    let e = self.get(i, j);
                    if !e.is_zero() {
                        acc += e * xj;
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix-vector product with rational entries.
    pub fn mul_rat_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (j, xj) in x.iter().enumerate() {
                    let e = self.get(i, j);
                    if !e.is_zero() {
                        acc += BigRational::from_integer(e.clone()) * xj;
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    fn row_op(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = k * self.get(src, j);
            if !add.is_zero() {
                let v = self.get(dst, j) + add;
                self.set(dst, j, v);
            }
        }
    }

    fn col_op(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = k * self.get(i, src);
            if !add.is_zero() {
                let v = self.get(i, dst) + add;
                self.set(i, dst, v);
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// Smith normal form `S = U·A·V` with tracked transforms.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero invariant factors d₁ | d₂ | …, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    rows: usize,
    cols: usize,
}

impl Smith {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn diag(&self, i: usize) -> BigInt {
        if i < self.rank {
            self.factors[i].clone()
        } else {
            BigInt::zero()
        }
    }
}

/// Compute the Smith normal form with transforms.
///
/// Pivoting picks the minimal nonzero absolute value in the remaining
/// submatrix, which keeps entries small on the sparse boundary matrices
/// this crate produces and makes witnesses deterministic.
pub fn smith(a: &IntMat) -> Smith {
    let rows = a.rows();
    let cols = a.cols();
    let mut s = a.clone();
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    let min_dim = rows.min(cols);
    let mut t = 0;
    while t < min_dim {
        let Some((pi, pj)) = pick_pivot(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        loop {
            let mut again = false;
            for i in t + 1..rows {
                if !s.get(i, t).is_zero() {
                    let q = -s.get(i, t).div_floor(s.get(t, t));
                    s.row_op(i, t, &q);
                    u.row_op(i, t, &q);
                    u_inv.col_op(t, i, &(-&q));
                    if !s.get(i, t).is_zero() {
                        again = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !s.get(t, j).is_zero() {
                    let q = -s.get(t, j).div_floor(s.get(t, t));
                    s.col_op(j, t, &q);
                    v.col_op(j, t, &q);
                    if !s.get(t, j).is_zero() {
                        again = true;
                    }
                }
            }
            if again {
                // A remainder smaller than the pivot appeared; re-pivot.
                let (pi, pj) = pick_pivot(&s, t).expect("nonzero remainder exists");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                if s.get(t, t).is_negative() {
                    s.negate_row(t);
                    u.negate_row(t);
                    u_inv.negate_col(t);
                }
                continue;
            }
            // Row and column are clear; force the pivot to divide the rest.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).mod_floor(s.get(t, t)).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.row_op(t, i, &one);
                    u.row_op(t, i, &one);
                    u_inv.col_op(i, t, &(-&one));
                }
                None => break,
            }
        }
        t += 1;
    }

    let rank = t;
    let factors: Vec<BigInt> = (0..rank).map(|i| s.get(i, i).clone()).collect();
    debug_assert!(factors.windows(2).all(|w| w[1].mod_floor(&w[0]).is_zero()));
    Smith {
        factors,
        rank,
        u,
        u_inv,
        v,
        rows,
        cols,
    }
}

fn pick_pivot(s: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in t..s.rows() {
        for j in t..s.cols() {
            let e = s.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.is_none() || a < best_abs {
                best = Some((i, j));
                best_abs = a;
            }
        }
    }
    best
}

/// Particular integer solution of `A·x = b`, if any.
pub fn solve_integer(sm: &Smith, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), sm.rows());
    let c = sm.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); sm.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < sm.rank {
            let d = sm.diag(i);
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(sm.v.mul_vec(&y))
}

/// Basis of the integer kernel lattice of `A`: columns of `V` past the rank.
pub fn kernel_basis(sm: &Smith) -> Vec<Vec<BigInt>> {
    (sm.rank..sm.cols()).map(|j| sm.v.column(j)).collect()
}

/// Basis of the saturation of the column space of `A` inside ℤ^rows:
/// the first `rank` columns of `U⁻¹`.
pub fn saturation_basis(sm: &Smith) -> Vec<Vec<BigInt>> {
    (0..sm.rank).map(|j| sm.u_inv.column(j)).collect()
}

/// Solve `A·x ≡ b (mod 1)` for a rational vector `x`.
///
/// A nonzero invariant factor `d` solves `d·y ≡ r` for any rational `r`;
/// zero rows require the right-hand side to be integral.
pub fn solve_mod1(sm: &Smith, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(b.len(), sm.rows());
    let c = sm.u.mul_rat_vec(b);
    let mut y = vec![BigRational::zero(); sm.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < sm.rank {
            y[i] = ci / BigRational::from_integer(sm.diag(i));
        } else if !ci.is_integer() {
            return None;
        }
    }
    Some(sm.v.mul_rat_vec(&y))
}

/// Indices of the mod-1 consistency rows of `A` (rows of `U` past the rank).
pub fn mod1_defect_rows(sm: &Smith) -> Vec<usize> {
    (sm.rank..sm.rows()).collect()
}

/// Solve `W·y ≡ c (mod 1)` for an integer vector `y`, with `W`, `c` rational.
///
/// Scaling by the common denominator turns this into the integer system
/// `[Q·W | Q·I]·(y,z) = Q·c`.
pub fn solve_integral_mod1(w: &[Vec<BigRational>], c: &[BigRational]) -> Option<Vec<BigInt>> {
    let rows = w.len();
    assert_eq!(c.len(), rows);
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = w[0].len();
    let mut q = BigInt::one();
    for row in w {
        for e in row {
            q = q.lcm(e.denom());
        }
    }
    for e in c {
        q = q.lcm(e.denom());
    }
    let qr = BigRational::from_integer(q.clone());
    let mut m = IntMat::zeros(rows, cols + rows);
    for (i, row) in w.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let scaled = e * &qr;
            debug_assert!(scaled.is_integer());
            m.set(i, j, scaled.to_integer());
        }
        m.set(i, cols + i, q.clone());
    }
    let b: Vec<BigInt> = c
        .iter()
        .map(|e| {
            let scaled = e * &qr;
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    let sm = smith(&m);
    let x = solve_integer(&sm, &b)?;
    Some(x[..cols].to_vec())
}
