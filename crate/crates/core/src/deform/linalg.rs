//! Dense linear algebra over small prime fields, sized for the tiny systems
//! the deformation module solves (matrix dimensions in the tens).

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> FpMat {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> FpMat {
        let mut m = FpMat::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + self.p - y) % self.p;
        }
        out
    }

    pub fn scale(&self, s: u64) -> FpMat {
        let s = s % self.p;
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = *x * s % self.p;
        }
        out
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zero(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = (out.get(r, c) + a * other.get(k, c)) % self.p;
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for c in 0..self.cols {
                acc = (acc + self.get(r, c) * v[c]) % self.p;
            }
            out[r] = acc;
        }
        out
    }

    pub fn inverse(&self) -> Option<FpMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = FpMat::identity(self.p, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| work.get(r, col) != 0)?;
            if pivot != col {
                for c in 0..n {
                    let (a, b) = (work.get(col, c), work.get(pivot, c));
                    work.set(col, c, b);
                    work.set(pivot, c, a);
                    let (a, b) = (inv.get(col, c), inv.get(pivot, c));
                    inv.set(col, c, b);
                    inv.set(pivot, c, a);
                }
            }
            let scale = mod_inv(work.get(col, col), self.p);
            for c in 0..n {
                work.set(col, c, work.get(col, c) * scale % self.p);
                inv.set(col, c, inv.get(col, c) * scale % self.p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = (work.get(r, c) + (self.p - factor) * work.get(col, c)) % self.p;
                    work.set(r, c, v);
                    let v = (inv.get(r, c) + (self.p - factor) * inv.get(col, c)) % self.p;
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }

    pub fn flat(&self) -> &[u64] {
        &self.data
    }
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible mod p");
    t.rem_euclid(p as i128) as u64
}

/// Basis of the kernel of a (rows x cols) system, as coordinate vectors.
pub fn kernel_basis(p: u64, rows: usize, cols: usize, entries: &[Vec<u64>]) -> Vec<Vec<u64>> {
    assert_eq!(entries.len(), rows);
    let mut mat: Vec<Vec<u64>> = entries.iter().map(|r| r.clone()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&r| mat[r][col] % p != 0) else {
            continue;
        };
        mat.swap(row, pr);
        let scale = mod_inv(mat[row][col], p);
        for c in 0..cols {
            mat[row][c] = mat[row][c] * scale % p;
        }
        for r in 0..rows {
            if r != row && mat[r][col] % p != 0 {
                let f = mat[r][col] % p;
                for c in 0..cols {
                    mat[r][c] = (mat[r][c] + (p - f) * mat[row][c]) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            let coeff = mat[r][free] % p;
            if coeff != 0 {
                v[pc] = p - coeff;
            }
        }
        basis.push(v);
    }
    basis
}
