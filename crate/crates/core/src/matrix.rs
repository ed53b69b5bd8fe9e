//! Polynomial and integer matrices: exact determinants, gcd of integer
//! vectors, and unimodular completion of a primitive row.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};
use crate::ratfn::RatFn;

/// Determinant of a square matrix of polynomials.
///
/// Cofactor expansion for size <= 4, fraction-free row elimination above
/// that; both paths agree (tested). Laurent entries always take the
/// cofactor path since fraction-free pivots assume honest polynomials.
pub fn matrix_det(m: &[Vec<Poly>]) -> Result<Poly> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NonSquare { rows: n, cols: row.len() });
        }
    }
    if n == 0 {
        return Ok(Poly::one(0));
    }
    let laurent = m.iter().flatten().any(|p| p.is_laurent());
    if n <= 4 || laurent {
        Ok(det_cofactor(m))
    } else {
        Ok(det_bareiss(m))
    }
}

pub fn det_cofactor(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    if m.iter().flatten().any(|p| p.is_laurent()) {
        acc = acc.into_laurent();
    }
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sub = det_cofactor(&minor);
        let signed = if j % 2 == 0 { &sub } else { &(-&sub) };
        acc = &acc + &(entry * signed);
    }
    acc
}

/// Fraction-free (Bareiss) elimination; every division is exact.
pub fn det_bareiss(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let nvars = m[0][0].nvars();
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut sign = false;
    let mut prev = Poly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // pivot by row swap
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Poly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = poly_div_exact(&t, &prev)
                    .expect("fraction-free elimination produced a non-exact division");
            }
            a[i][k] = Poly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Exact polynomial division f / g, None when g does not divide f.
pub fn poly_div_exact(f: &Poly, g: &Poly) -> Option<Poly> {
    if g.is_zero() {
        return None;
    }
    if f.is_zero() {
        return Some(Poly::zero(f.nvars()));
    }
    let (ge, gc) = leading_deglex(g);
    let mut rem = f.clone();
    let mut quo = Poly::zero(f.nvars());
    while !rem.is_zero() {
        let (re, rc) = leading_deglex(&rem);
        let e: Vec<i64> = re.iter().zip(&ge).map(|(a, b)| a - b).collect();
        if e.iter().any(|&x| x < 0) {
            return None;
        }
        let t = Poly::from_term(f.nvars(), e, rc / gc.clone());
        quo = &quo + &t;
        rem = &rem - &(&t * g);
    }
    Some(quo)
}

fn leading_deglex(p: &Poly) -> (Vec<i64>, Rat) {
    p.terms()
        .max_by(|(a, _), (b, _)| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        })
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("leading term of zero polynomial")
}

/// Determinant of a square matrix of rational functions, by cofactors.
pub fn matrix_det_ratfn(m: &[Vec<RatFn>]) -> Result<RatFn> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NonSquare { rows: n, cols: row.len() });
        }
    }
    if n == 0 {
        return Ok(RatFn::one(0));
    }
    Ok(det_cofactor_ratfn(m))
}

fn det_cofactor_ratfn(m: &[Vec<RatFn>]) -> RatFn {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let laurent = m.iter().flatten().any(|r| r.num.is_laurent() || r.den.is_laurent());
    let mut acc = if laurent {
        RatFn::from_poly(Poly::zero(nvars).into_laurent())
    } else {
        RatFn::zero(nvars)
    };
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<RatFn>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sub = det_cofactor_ratfn(&minor);
        let term = entry * &sub;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Rectangular integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::new(self.cols, self.rows, vec![0; self.data.len()]);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    /// Exact determinant via BigInt cofactor expansion (desk-scale sizes).
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Ok(bigint_det(&m))
    }
}

fn bigint_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let sub = bigint_det(&minor);
        if j % 2 == 0 {
            acc += &m[0][j] * sub;
        } else {
            acc -= &m[0][j] * sub;
        }
    }
    acc
}

/// gcd of the absolute values of an integer vector; 0 for the zero vector.
pub fn gcd_vector(v: &[i64]) -> u64 {
    v.iter().fold(0u64, |g, &x| gcd_u64(g, x.unsigned_abs()))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = egcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

/// Completes a primitive integer vector to a unimodular matrix whose
/// first row is the given vector; the determinant is +1 or -1.
pub fn complete_unimodular(a: &[i64]) -> Result<IntMatrix> {
    let g = gcd_vector(a);
    if g != 1 {
        return Err(Error::NotPrimitive { gcd: g });
    }
    let n = a.len();
    // Reduce the column vector a^T to e_1 by elementary row operations,
    // accumulating the inverse operations on the identity. The product
    // Minv then has first column a, and its transpose has first row a.
    let mut v: Vec<i64> = a.to_vec();
    let mut minv = IntMatrix::identity(n);
    for j in 1..n {
        if v[j] == 0 {
            continue;
        }
        let (g, p, q) = egcd(v[0], v[j]);
        let v0 = v[0] / g;
        let vj = v[j] / g;
        // E acts on entries (0, j): (p q; -vj v0); E^{-1} = (v0 -q; vj p).
        for r in 0..n {
            let c0 = minv.at(r, 0);
            let cj = minv.at(r, j);
            let new0 = c0
                .checked_mul(v0)
                .and_then(|x| cj.checked_mul(vj).and_then(|y| x.checked_add(y)))
                .expect("integer overflow in unimodular completion");
            let newj = c0
                .checked_mul(-q)
                .and_then(|x| cj.checked_mul(p).and_then(|y| x.checked_add(y)))
                .expect("integer overflow in unimodular completion");
            minv.set(r, 0, new0);
            minv.set(r, j, newj);
        }
        v[0] = g;
        v[j] = 0;
    }
    // v[0] holds gcd(a) = 1 now, except when a = +-e_1 never entered the loop.
    if v[0] == -1 {
        for r in 0..n {
            let c0 = minv.at(r, 0);
            minv.set(r, 0, -c0);
        }
    }
    let out = minv.transpose();
    debug_assert_eq!(out.row(0), a);
    Ok(out)
}
