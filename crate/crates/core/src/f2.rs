//! Linear algebra over the two-element field.
//!
//! Vectors are stored as single machine words, so everything here is
//! capped at dimension 64. Bilinear forms are symmetric with zero
//! diagonal (alternating), the only kind that arises as the
//! polarization of a quadratic function with q(0) = 0. A quadratic
//! form is stored by its values on the standard basis together with
//! its polarizing form; evaluation follows
//!
//! ```text
//! q(sum x_i e_i) = sum x_i q(e_i) + sum_{i<j} x_i x_j B(e_i, e_j)
//! ```
//!
//! which satisfies q(x+y) = q(x) + q(y) + B(x,y) for all x, y.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;
use std::ops::Add;

/// Largest representable dimension (vectors are single `u64` words).
pub const MAX_DIM: usize = 64;

/// Brute-force zero counting is capped at 2^24 evaluations.
pub const MAX_BRUTE_FORCE_DIM: usize = 24;

fn low_mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// Bits strictly above position `i`.
fn mask_above(i: usize) -> u64 {
    if i >= 63 {
        0
    } else {
        u64::MAX << (i + 1)
    }
}

fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// Incremental xor basis used for rank and basis-extension computations.
#[derive(Default)]
struct XorBasis {
    slots: [u64; 64],
    len: usize,
}

impl XorBasis {
    /// Inserts `v`; returns false if `v` was already in the span.
    fn insert(&mut self, mut v: u64) -> bool {
        while v != 0 {
            let b = (63 - v.leading_zeros()) as usize;
            if self.slots[b] == 0 {
                self.slots[b] = v;
                self.len += 1;
                return true;
            }
            v ^= self.slots[b];
        }
        false
    }
}

/// A vector over F2 of fixed dimension.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F2Vector {
    dim: usize,
    bits: u64,
}

impl F2Vector {
    pub fn zero(dim: usize) -> F2Vector {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        F2Vector { dim, bits: 0 }
    }

    pub fn from_bits(dim: usize, bits: u64) -> F2Vector {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        F2Vector {
            dim,
            bits: bits & low_mask(dim),
        }
    }

    /// The standard basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> F2Vector {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        F2Vector::from_bits(dim, 1 << i)
    }

    pub fn from_coords(coords: &[u8]) -> Result<F2Vector> {
        if coords.len() > MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim: coords.len(),
                max: MAX_DIM,
            });
        }
        let mut bits = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                _ => {
                    return Err(Error::range(format!(
                        "coordinate {i} must be 0 or 1, got {c}"
                    )))
                }
            }
        }
        Ok(F2Vector {
            dim: coords.len(),
            bits,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim);
        self.bits >> i & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn coords(&self) -> Vec<u8> {
        (0..self.dim).map(|i| (self.bits >> i & 1) as u8).collect()
    }
}

impl Add for F2Vector {
    type Output = F2Vector;

    fn add(self, rhs: F2Vector) -> F2Vector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in F2 addition");
        F2Vector {
            dim: self.dim,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        Ok(())
    }
}

/// A symmetric bilinear form with zero diagonal, stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct F2BilinearForm {
    dim: usize,
    rows: Vec<u64>,
}

impl F2BilinearForm {
    pub fn zero(dim: usize) -> F2BilinearForm {
        assert!(dim <= MAX_DIM);
        F2BilinearForm {
            dim,
            rows: vec![0; dim],
        }
    }

    /// Builds a form from row bitmasks, validating symmetry and the
    /// zero diagonal.
    pub fn from_rows(dim: usize, rows: Vec<u64>) -> Result<F2BilinearForm> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
        }
        if rows.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rows.len(),
            });
        }
        let rows: Vec<u64> = rows.into_iter().map(|r| r & low_mask(dim)).collect();
        for i in 0..dim {
            if rows[i] >> i & 1 == 1 {
                return Err(Error::NonzeroDiagonal { index: i });
            }
            for j in (i + 1)..dim {
                if (rows[i] >> j & 1) != (rows[j] >> i & 1) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(F2BilinearForm { dim, rows })
    }

    /// The standard symplectic form on dimension 2g: interleaved pairs
    /// `(e_{2i}, e_{2i+1})` with pairing 1.
    pub fn standard_symplectic(g: usize) -> F2BilinearForm {
        assert!(2 * g <= MAX_DIM);
        let mut rows = vec![0u64; 2 * g];
        for i in 0..g {
            rows[2 * i] |= 1 << (2 * i + 1);
            rows[2 * i + 1] |= 1 << (2 * i);
        }
        F2BilinearForm { dim: 2 * g, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        assert!(i < self.dim && j < self.dim);
        self.rows[i] >> j & 1 == 1
    }

    pub(crate) fn pair_bits(&self, x: u64, y: u64) -> bool {
        let mut acc = false;
        let mut rest = x & low_mask(self.dim);
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc ^= parity(self.rows[i] & y);
        }
        acc
    }

    /// Evaluates B(x, y).
    pub fn pair(&self, x: &F2Vector, y: &F2Vector) -> bool {
        assert_eq!(self.dim, x.dim, "dimension mismatch in pairing");
        assert_eq!(self.dim, y.dim, "dimension mismatch in pairing");
        self.pair_bits(x.bits, y.bits)
    }

    pub fn rank(&self) -> usize {
        let mut basis = XorBasis::default();
        for &r in &self.rows {
            basis.insert(r);
        }
        basis.len
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim
    }

    /// A row-reduced basis of the radical `{x : B(x, y) = 0 for all y}`.
    pub fn radical(&self) -> Vec<F2Vector> {
        self.radical_bits()
            .into_iter()
            .map(|b| F2Vector::from_bits(self.dim, b))
            .collect()
    }

    pub(crate) fn radical_bits(&self) -> Vec<u64> {
        // Gaussian elimination with pivot bookkeeping; the kernel of the
        // row map equals the radical since B is symmetric.
        let dim = self.dim;
        let mut mat = self.rows.clone();
        let mut pivots: Vec<usize> = Vec::new(); // pivot column of reduced row r
        let mut r = 0;
        for c in 0..dim {
            let Some(p) = (r..mat.len()).find(|&p| mat[p] >> c & 1 == 1) else {
                continue;
            };
            mat.swap(r, p);
            for other in 0..mat.len() {
                if other != r && mat[other] >> c & 1 == 1 {
                    mat[other] ^= mat[r];
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut kernel = Vec::new();
        for f in 0..dim {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = 1u64 << f;
            for (row, &c) in pivots.iter().enumerate() {
                if mat[row] >> f & 1 == 1 {
                    v |= 1 << c;
                }
            }
            kernel.push(v);
        }
        kernel
    }

    /// A symplectic basis (a_i, b_i) with B(a_i, b_j) = delta_ij and
    /// all other pairings zero. Vectors are processed in index order,
    /// always pairing the lowest-index remaining vector with the first
    /// partner that pairs nontrivially with it.
    pub fn symplectic_basis(&self) -> Result<Vec<(F2Vector, F2Vector)>> {
        let mut pool: Vec<u64> = (0..self.dim).map(|i| 1u64 << i).collect();
        let mut pairs = Vec::new();
        while !pool.is_empty() {
            let u = pool[0];
            let Some(pos) = pool[1..].iter().position(|&w| self.pair_bits(u, w)) else {
                return Err(Error::DegenerateForm {
                    radical_dim: self.radical_bits().len(),
                });
            };
            let w = pool.remove(pos + 1);
            pool.remove(0);
            for c in pool.iter_mut() {
                let mut v = *c;
                if self.pair_bits(v, w) {
                    v ^= u;
                }
                if self.pair_bits(v, u) {
                    v ^= w;
                }
                *c = v;
            }
            pairs.push((
                F2Vector::from_bits(self.dim, u),
                F2Vector::from_bits(self.dim, w),
            ));
        }
        Ok(pairs)
    }
}

impl fmt::Debug for F2BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2BilinearForm(dim={})", self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                write!(f, "{}", (self.rows[i] >> j) & 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Classification data of a quadratic form: radical dimension, whether
/// the form vanishes on the radical, the hyperbolic rank k of the
/// induced nondegenerate form, and (when defined) its Arf invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormClassification {
    pub radical_dim: usize,
    pub q_on_radical_zero: bool,
    pub hyperbolic_rank: usize,
    pub arf: Option<bool>,
}

/// A quadratic function refining a bilinear form.
#[derive(Clone, PartialEq, Eq)]
pub struct F2QuadraticForm {
    basis_values: u64,
    form: F2BilinearForm,
}

impl F2QuadraticForm {
    pub fn new(basis_values: &[u8], form: F2BilinearForm) -> Result<F2QuadraticForm> {
        if basis_values.len() != form.dim {
            return Err(Error::DimensionMismatch {
                expected: form.dim,
                found: basis_values.len(),
            });
        }
        let v = F2Vector::from_coords(basis_values)?;
        Ok(F2QuadraticForm {
            basis_values: v.bits,
            form,
        })
    }

    pub fn from_bits(basis_values: u64, form: F2BilinearForm) -> F2QuadraticForm {
        F2QuadraticForm {
            basis_values: basis_values & low_mask(form.dim),
            form,
        }
    }

    pub fn zero(dim: usize) -> F2QuadraticForm {
        F2QuadraticForm {
            basis_values: 0,
            form: F2BilinearForm::zero(dim),
        }
    }

    /// A sum of k hyperbolic blocks xy (Arf 0) on dimension 2k.
    pub fn hyperbolic(k: usize) -> F2QuadraticForm {
        F2QuadraticForm::from_bits(0, F2BilinearForm::standard_symplectic(k))
    }

    /// The canonical nondegenerate form of rank k: a sum of k hyperbolic
    /// blocks, with the first block replaced by x^2 + xy + y^2 when
    /// `odd` is set (Arf 1).
    pub fn canonical(k: usize, odd: bool) -> F2QuadraticForm {
        let values = if odd && k > 0 { 0b11 } else { 0 };
        F2QuadraticForm::from_bits(values, F2BilinearForm::standard_symplectic(k))
    }

    pub fn dim(&self) -> usize {
        self.form.dim
    }

    pub fn basis_value(&self, i: usize) -> bool {
        assert!(i < self.form.dim);
        self.basis_values >> i & 1 == 1
    }

    pub fn form(&self) -> &F2BilinearForm {
        &self.form
    }

    pub(crate) fn evaluate_bits(&self, bits: u64) -> bool {
        let v = bits & low_mask(self.form.dim);
        let mut acc = parity(self.basis_values & v);
        let mut rest = v;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc ^= parity(self.form.rows[i] & v & mask_above(i));
        }
        acc
    }

    /// Evaluates q(v).
    pub fn evaluate(&self, v: &F2Vector) -> Result<bool> {
        if v.dim != self.form.dim {
            return Err(Error::DimensionMismatch {
                expected: self.form.dim,
                found: v.dim,
            });
        }
        Ok(self.evaluate_bits(v.bits))
    }

    /// Recomputes the polarization B(x,y) = q(x+y) + q(x) + q(y) from
    /// evaluations on basis pairs. Always equals the stored form.
    pub fn polarize(&self) -> F2BilinearForm {
        let dim = self.form.dim;
        let mut rows = vec![0u64; dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let b = self.evaluate_bits(1 << i | 1 << j)
                    ^ self.evaluate_bits(1 << i)
                    ^ self.evaluate_bits(1 << j);
                if b {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        F2BilinearForm { dim, rows }
    }

    /// The Arf invariant of a nondegenerate form: sum of q(a_i) q(b_i)
    /// over any symplectic basis.
    pub fn arf(&self) -> Result<bool> {
        let pairs = self.form.symplectic_basis()?;
        let mut acc = false;
        for (a, b) in &pairs {
            acc ^= self.evaluate_bits(a.bits) & self.evaluate_bits(b.bits);
        }
        Ok(acc)
    }

    /// Gram data of the form on a list of independent vectors.
    pub(crate) fn restrict(&self, vectors: &[u64]) -> F2QuadraticForm {
        let k = vectors.len();
        let mut rows = vec![0u64; k];
        let mut values = 0u64;
        for (i, &vi) in vectors.iter().enumerate() {
            if self.evaluate_bits(vi) {
                values |= 1 << i;
            }
            for (j, &vj) in vectors.iter().enumerate() {
                if i != j && self.form.pair_bits(vi, vj) {
                    rows[i] |= 1 << j;
                }
            }
        }
        F2QuadraticForm {
            basis_values: values,
            form: F2BilinearForm { dim: k, rows },
        }
    }

    /// The form expressed in a new basis: entry i of `basis` is the
    /// image of e_i in the old coordinates.
    pub fn transform(&self, basis: &[F2Vector]) -> Result<F2QuadraticForm> {
        if basis.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: basis.len(),
            });
        }
        let mut span = XorBasis::default();
        for v in basis {
            if v.dim != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: v.dim,
                });
            }
            if !span.insert(v.bits) {
                return Err(Error::range("change of basis is not invertible"));
            }
        }
        let bits: Vec<u64> = basis.iter().map(|v| v.bits).collect();
        Ok(self.restrict(&bits))
    }

    /// Full classification: radical, vanishing on the radical, and the
    /// hyperbolic rank and Arf invariant of the induced form.
    pub fn classify(&self) -> FormClassification {
        let radical = self.form.radical_bits();
        let radical_dim = radical.len();
        let q_on_radical_zero = radical.iter().all(|&r| !self.evaluate_bits(r));
        let hyperbolic_rank = (self.dim() - radical_dim) / 2;
        let arf = if !q_on_radical_zero {
            None
        } else if hyperbolic_rank == 0 {
            Some(false)
        } else {
            let mut span = XorBasis::default();
            for &r in &radical {
                span.insert(r);
            }
            let mut complement = Vec::new();
            for i in 0..self.dim() {
                if span.insert(1 << i) {
                    complement.push(1u64 << i);
                }
            }
            let induced = self.restrict(&complement);
            Some(induced.arf().expect("induced form is nondegenerate"))
        };
        FormClassification {
            radical_dim,
            q_on_radical_zero,
            hyperbolic_rank,
            arf,
        }
    }

    /// Number of zeros by the closed form: if q vanishes on its radical
    /// of dimension r then `2^r * 2^(k-1) (2^k + (-1)^arf)`, and
    /// otherwise exactly half the space, `2^(dim-1)`.
    pub fn count_zeros(&self) -> BigInt {
        let cls = self.classify();
        if cls.q_on_radical_zero {
            zero_count_from_shape(
                cls.radical_dim,
                cls.hyperbolic_rank,
                cls.arf.expect("arf defined when q vanishes on radical"),
            )
        } else {
            BigInt::one() << (self.dim() - 1)
        }
    }

    /// Exhaustive zero count over all 2^dim vectors.
    pub fn brute_force_zeros(&self) -> Result<BigInt> {
        let dim = self.dim();
        if dim > MAX_BRUTE_FORCE_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                max: MAX_BRUTE_FORCE_DIM,
            });
        }
        let mut count: u64 = 0;
        for v in 0..(1u64 << dim) {
            if !self.evaluate_bits(v) {
                count += 1;
            }
        }
        Ok(BigInt::from(count))
    }

    /// Orthogonal direct sum; the Arf invariant adds when both summands
    /// are nondegenerate.
    pub fn direct_sum(&self, other: &F2QuadraticForm) -> Result<F2QuadraticForm> {
        let d1 = self.dim();
        let d2 = other.dim();
        if d1 + d2 > MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim: d1 + d2,
                max: MAX_DIM,
            });
        }
        let mut rows = Vec::with_capacity(d1 + d2);
        rows.extend_from_slice(&self.form.rows);
        rows.extend(other.form.rows.iter().map(|r| r << d1));
        Ok(F2QuadraticForm {
            basis_values: self.basis_values | other.basis_values << d1,
            form: F2BilinearForm { dim: d1 + d2, rows },
        })
    }

    /// Renders the form in the text format accepted by [`parse_form`].
    pub fn to_text(&self) -> String {
        let dim = self.dim();
        let mut out = String::new();
        out.push_str(&format!("{dim}\n"));
        let row_line = |bits: u64| {
            (0..dim)
                .map(|j| if bits >> j & 1 == 1 { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&row_line(self.basis_values));
        out.push('\n');
        for i in 0..dim {
            out.push_str(&row_line(self.form.rows[i]));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for F2QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F2QuadraticForm(values={:?}, form={:?})",
            F2Vector::from_bits(self.form.dim, self.basis_values),
            self.form
        )
    }
}

/// Zero count `2^r * 2^(k-1) (2^k + (-1)^arf)` of a form that vanishes
/// on an r-dimensional radical, with hyperbolic rank k. The k = 0 case
/// degenerates to 2^r (only the zero vector of the quotient).
pub fn zero_count_from_shape(radical_dim: usize, hyperbolic_rank: usize, arf: bool) -> BigInt {
    let (r, k) = (radical_dim, hyperbolic_rank);
    if k == 0 {
        return BigInt::one() << r;
    }
    let sign: BigInt = if arf { BigInt::from(-1) } else { BigInt::one() };
    (BigInt::one() << (r + k - 1)) * ((BigInt::one() << k) + sign)
}

/// Parses the text format for quadratic forms:
///
/// ```text
/// line 1: dim
/// line 2: dim basis values (0/1, space separated)
/// next dim lines: rows of the bilinear matrix
/// ```
///
/// Rejects non-symmetric matrices and nonzero diagonals with a
/// line/column diagnostic. Blank lines are ignored.
pub fn parse_form(text: &str) -> Result<F2QuadraticForm> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut it = lines.iter();

    let &(dim_line, dim_text) = it
        .next()
        .ok_or_else(|| Error::parse(1, None, "empty input, expected dimension"))?;
    let dim: usize = dim_text
        .parse()
        .map_err(|_| Error::parse(dim_line, Some(1), format!("invalid dimension `{dim_text}`")))?;
    if dim > MAX_DIM {
        return Err(Error::parse(
            dim_line,
            Some(1),
            format!("dimension {dim} exceeds the maximum {MAX_DIM}"),
        ));
    }

    let parse_bits = |line_no: usize, text: &str| -> Result<u64> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != dim {
            return Err(Error::parse(
                line_no,
                None,
                format!("expected {dim} entries, found {}", tokens.len()),
            ));
        }
        let mut bits = 0u64;
        for (col, tok) in tokens.iter().enumerate() {
            match *tok {
                "0" => {}
                "1" => bits |= 1 << col,
                other => {
                    return Err(Error::parse(
                        line_no,
                        Some(col + 1),
                        format!("entry must be 0 or 1, got `{other}`"),
                    ))
                }
            }
        }
        Ok(bits)
    };

    let &(val_line, val_text) = it.next().ok_or_else(|| {
        Error::parse(dim_line, None, "missing basis-values line after dimension")
    })?;
    let basis_values = parse_bits(val_line, val_text)?;

    let mut rows = Vec::with_capacity(dim);
    let mut row_lines = Vec::with_capacity(dim);
    for i in 0..dim {
        let &(line_no, text) = it
            .next()
            .ok_or_else(|| Error::parse(val_line, None, format!("missing matrix row {}", i + 1)))?;
        rows.push(parse_bits(line_no, text)?);
        row_lines.push(line_no);
    }
    if let Some(&(line_no, _)) = it.next() {
        return Err(Error::parse(line_no, None, "unexpected trailing input"));
    }

    for i in 0..dim {
        if rows[i] >> i & 1 == 1 {
            return Err(Error::parse(
                row_lines[i],
                Some(i + 1),
                "diagonal entry must be 0",
            ));
        }
        for j in (i + 1)..dim {
            if (rows[i] >> j & 1) != (rows[j] >> i & 1) {
                return Err(Error::parse(
                    row_lines[j],
                    Some(i + 1),
                    format!("matrix not symmetric at ({},{})", i + 1, j + 1),
                ));
            }
        }
    }

    let form = F2BilinearForm::from_rows(dim, rows)?;
    Ok(F2QuadraticForm::from_bits(basis_values, form))
}
