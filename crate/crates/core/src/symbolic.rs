//! Exact sparse polynomials in `lambda` and weighted generators
//! `a2, a3, ...`, matrices of such polynomials, and characteristic
//! polynomials of the canonical Higgs matrices.
//!
//! The generator `a_i` carries weight i and `lambda` carries weight 1,
//! so the coefficient of `lambda^(n-k)` in a characteristic polynomial
//! is weighted-homogeneous of weight k. Coefficients live in any
//! signed integer-like ring; the crate root fixes `BigInt` aliases.
//!
//! Two independent routes to the characteristic polynomial are
//! provided: a division-free determinant of `lambda I - M` (memoized
//! Laplace expansion) and a truncated power-series inversion of
//! `p(x) = 1 - lambda x + a2 x^2 + ... + an x^n`, whose degree-n
//! remainder coefficient recovers the determinant.

use crate::error::{Error, Result};
use num_traits::{NumAssign, Signed};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring for polynomial arithmetic: a signed, exact,
/// integer-like ring (i64, i128, BigInt, ...).
pub trait Coeff: NumAssign + Signed + Clone + fmt::Debug + fmt::Display {}

impl<T> Coeff for T where T: NumAssign + Signed + Clone + fmt::Debug + fmt::Display {}

/// A monomial in `lambda` (slot 0) and generators `a_i` (slot i).
/// Trailing zero exponents are trimmed so the representation is
/// canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial { exps: Vec::new() }
    }

    pub fn lambda(k: u16) -> Monomial {
        let mut m = Monomial { exps: vec![k] };
        m.trim();
        m
    }

    /// `a_i^k` for a generator index i >= 1.
    pub fn generator(i: usize, k: u16) -> Monomial {
        assert!(i >= 1, "generator index must be >= 1");
        if k == 0 {
            return Monomial::unit();
        }
        let mut exps = vec![0; i + 1];
        exps[i] = k;
        Monomial { exps }
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    fn exp(&self, slot: usize) -> u16 {
        self.exps.get(slot).copied().unwrap_or(0)
    }

    pub fn lambda_exp(&self) -> u16 {
        self.exp(0)
    }

    pub fn generator_exp(&self, i: usize) -> u16 {
        assert!(i >= 1);
        self.exp(i)
    }

    /// Largest generator index with nonzero exponent, if any.
    pub fn max_generator(&self) -> Option<usize> {
        (1..self.exps.len()).rev().find(|&i| self.exps[i] != 0)
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Weight: `lambda` counts 1, `a_i` counts i.
    pub fn weight(&self) -> u64 {
        let mut w = self.exp(0) as u64;
        for (i, &e) in self.exps.iter().enumerate().skip(1) {
            w += i as u64 * e as u64;
        }
        w
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Vec::with_capacity(n);
        for s in 0..n {
            exps.push(self.exp(s) + other.exp(s));
        }
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    /// Nonzero factors as (slot, exponent) pairs, lambda first.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(s, &e)| (s, e))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then slot-wise
    /// comparison with `lambda` most significant.
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let n = self.exps.len().max(other.exps.len());
                for s in 0..n {
                    match self.exp(s).cmp(&other.exp(s)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (slot, e) in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if slot == 0 {
                write!(f, "lambda")?;
            } else {
                write!(f, "a{slot}")?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Weight homogeneity of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Weight(u64),
    Mixed,
}

/// A sparse polynomial with coefficients in `C`, in canonical form
/// (no zero coefficients; terms ordered graded-lexicographically).
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedPolynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> WeightedPolynomial<C> {
    pub fn zero() -> Self {
        WeightedPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::unit(), c)
    }

    pub fn lambda() -> Self {
        Self::monomial(Monomial::lambda(1), C::one())
    }

    /// The generator `a_i`.
    pub fn generator(i: usize) -> Self {
        Self::monomial(Monomial::generator(i, 1), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WeightedPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms_descending(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    fn insert_add(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WeightedPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Largest power of `lambda` appearing.
    pub fn lambda_degree(&self) -> u16 {
        self.terms.keys().map(|m| m.lambda_exp()).max().unwrap_or(0)
    }

    /// Collects the coefficient of `lambda^k` as a polynomial in the
    /// generators only.
    pub fn lambda_coefficient(&self, k: u16) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.lambda_exp() == k {
                let mut exps = m.exps.clone();
                if !exps.is_empty() {
                    exps[0] = 0;
                }
                let mut stripped = Monomial { exps };
                stripped.trim();
                out.insert_add(stripped, c.clone());
            }
        }
        out
    }

    /// Substitutes `lambda -> lambda^e`.
    pub fn substitute_lambda_power(&self, e: u16) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            if !exps.is_empty() {
                exps[0] *= e;
            }
            let mut m2 = Monomial { exps };
            m2.trim();
            out.insert_add(m2, c.clone());
        }
        out
    }

    /// Weight homogeneity of the polynomial.
    pub fn homogeneity(&self) -> Homogeneity {
        let mut weight = None;
        for m in self.terms.keys() {
            match weight {
                None => weight = Some(m.weight()),
                Some(w) if w == m.weight() => {}
                Some(_) => return Homogeneity::Mixed,
            }
        }
        match weight {
            None => Homogeneity::Zero,
            Some(w) => Homogeneity::Weight(w),
        }
    }

    /// Evaluates the polynomial; `assign(0)` is the value of `lambda`
    /// and `assign(i)` the value of `a_i`.
    pub fn evaluate(&self, assign: &dyn Fn(usize) -> C) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (slot, e) in m.factors() {
                let v = assign(slot);
                for _ in 0..e {
                    term *= v.clone();
                }
            }
            acc += term;
        }
        acc
    }
}

impl<C: Coeff> Add for &WeightedPolynomial<C> {
    type Output = WeightedPolynomial<C>;

    fn add(self, rhs: &WeightedPolynomial<C>) -> WeightedPolynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &WeightedPolynomial<C> {
    type Output = WeightedPolynomial<C>;

    fn sub(self, rhs: &WeightedPolynomial<C>) -> WeightedPolynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Neg for &WeightedPolynomial<C> {
    type Output = WeightedPolynomial<C>;

    fn neg(self) -> WeightedPolynomial<C> {
        WeightedPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coeff> Mul for &WeightedPolynomial<C> {
    type Output = WeightedPolynomial<C>;

    fn mul(self, rhs: &WeightedPolynomial<C>) -> WeightedPolynomial<C> {
        let mut out = WeightedPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_add(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for WeightedPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms_descending().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A square matrix of polynomials.
#[derive(Clone, PartialEq, Debug)]
pub struct SymbolicMatrix<C> {
    n: usize,
    entries: Vec<WeightedPolynomial<C>>,
}

impl<C: Coeff> SymbolicMatrix<C> {
    pub fn zero(n: usize) -> Self {
        SymbolicMatrix {
            n,
            entries: vec![WeightedPolynomial::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.entry_mut(i, i) = WeightedPolynomial::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &WeightedPolynomial<C> {
        assert!(i < self.n && j < self.n);
        &self.entries[i * self.n + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut WeightedPolynomial<C> {
        assert!(i < self.n && j < self.n);
        &mut self.entries[i * self.n + j]
    }

    /// Symmetry across the anti-diagonal: M[i][j] = M[n-1-j][n-1-i].
    pub fn is_persymmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| self.entry(i, j) == self.entry(n - 1 - j, n - 1 - i)))
    }

    /// `lambda I - M`.
    pub fn lambda_identity_minus(&self) -> SymbolicMatrix<C> {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut e = -self.entry(i, j);
                if i == j {
                    e = &e + &WeightedPolynomial::lambda();
                }
                *out.entry_mut(i, j) = e;
            }
        }
        out
    }

    /// Exact determinant by Laplace expansion, memoized on the set of
    /// used columns (O(n 2^n) ring operations, division free).
    pub fn determinant(&self) -> WeightedPolynomial<C> {
        assert!(self.n <= 16, "determinant limited to n <= 16");
        if self.n == 0 {
            return WeightedPolynomial::one();
        }
        let mut memo: HashMap<u32, WeightedPolynomial<C>> = HashMap::new();
        self.det_rec(0, 0, &mut memo)
    }

    fn det_rec(
        &self,
        row: usize,
        used: u32,
        memo: &mut HashMap<u32, WeightedPolynomial<C>>,
    ) -> WeightedPolynomial<C> {
        if row == self.n {
            return WeightedPolynomial::one();
        }
        if let Some(hit) = memo.get(&used) {
            return hit.clone();
        }
        let mut acc = WeightedPolynomial::zero();
        let mut positive = true;
        for j in 0..self.n {
            if used & (1 << j) != 0 {
                continue;
            }
            let e = self.entry(row, j);
            if !e.is_zero() {
                let sub = self.det_rec(row + 1, used | (1 << j), memo);
                let term = e * &sub;
                acc = if positive { &acc + &term } else { &acc - &term };
            }
            positive = !positive;
        }
        memo.insert(used, acc.clone());
        acc
    }
}

/// A monic characteristic polynomial of degree n: `coeffs[k]` is the
/// coefficient of `lambda^k`, a polynomial in the generators only.
#[derive(Clone, PartialEq, Debug)]
pub struct CharPoly<C> {
    n: usize,
    coeffs: Vec<WeightedPolynomial<C>>,
}

impl<C: Coeff> CharPoly<C> {
    /// Splits a polynomial by powers of `lambda`, checking that the
    /// result is monic of the stated degree.
    pub fn from_polynomial(n: usize, p: &WeightedPolynomial<C>) -> Result<CharPoly<C>> {
        if p.lambda_degree() as usize > n {
            return Err(Error::range(format!(
                "polynomial has lambda-degree {} > {n}",
                p.lambda_degree()
            )));
        }
        let coeffs: Vec<_> = (0..=n as u16).map(|k| p.lambda_coefficient(k)).collect();
        if !coeffs[n].is_one() {
            return Err(Error::range(format!(
                "polynomial is not monic of degree {n}"
            )));
        }
        Ok(CharPoly { n, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coefficient of `lambda^k`.
    pub fn coefficient(&self, k: usize) -> &WeightedPolynomial<C> {
        &self.coeffs[k]
    }

    pub fn to_polynomial(&self) -> WeightedPolynomial<C> {
        let mut out = WeightedPolynomial::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let lam = WeightedPolynomial::monomial(Monomial::lambda(k as u16), C::one());
            out = &out + &(c * &lam);
        }
        out
    }

    /// The coefficient of `lambda^(n-k)` must be weighted-homogeneous
    /// of weight k (or zero).
    pub fn is_weight_homogeneous(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| {
            match c.homogeneity() {
                Homogeneity::Zero => true,
                Homogeneity::Weight(w) => w == (self.n - k) as u64,
                Homogeneity::Mixed => false,
            }
        })
    }

    /// Whether the `lambda^(n-1)` coefficient vanishes (trace zero).
    pub fn has_zero_trace(&self) -> bool {
        self.n >= 1 && self.coeffs[self.n - 1].is_zero()
    }

    /// Whether only even powers of `lambda` appear.
    pub fn is_even_in_lambda(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }
}

impl<C: Coeff> fmt::Display for CharPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// The canonical Higgs matrix for SL(n): ones on the superdiagonal and
/// constant lower diagonals `a_{i-j+1}`, so row n reads
/// `(a_n, a_{n-1}, ..., a_2, 0)`.
pub fn canonical_higgs_sl<C: Coeff>(n: usize) -> Result<SymbolicMatrix<C>> {
    if n < 2 {
        return Err(Error::range(format!("SL rank must be >= 2, got {n}")));
    }
    let mut m = SymbolicMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if j == i + 1 {
                *m.entry_mut(i, j) = WeightedPolynomial::one();
            } else if i > j {
                *m.entry_mut(i, j) = WeightedPolynomial::generator(i - j + 1);
            }
        }
    }
    Ok(m)
}

/// The canonical Higgs data for Sp(2m): the m x m block A with `a_2` on
/// the diagonal, ones on the superdiagonal and `a_{2(i-j+1)}` below,
/// and the full 2m x 2m field `[[0, I], [A, 0]]`.
pub fn canonical_higgs_sp<C: Coeff>(m: usize) -> Result<(SymbolicMatrix<C>, SymbolicMatrix<C>)> {
    if m < 1 {
        return Err(Error::range(format!("Sp rank must be >= 1, got {m}")));
    }
    let mut a = SymbolicMatrix::zero(m);
    for i in 0..m {
        for j in 0..m {
            if i == j {
                *a.entry_mut(i, j) = WeightedPolynomial::generator(2);
            } else if j == i + 1 {
                *a.entry_mut(i, j) = WeightedPolynomial::one();
            } else if i > j {
                *a.entry_mut(i, j) = WeightedPolynomial::generator(2 * (i - j + 1));
            }
        }
    }
    let mut phi = SymbolicMatrix::zero(2 * m);
    for i in 0..m {
        *phi.entry_mut(i, m + i) = WeightedPolynomial::one();
        for j in 0..m {
            *phi.entry_mut(m + i, j) = a.entry(i, j).clone();
        }
    }
    Ok((a, phi))
}

/// Characteristic polynomial by direct determinant of `lambda I - M`.
pub fn char_poly_direct<C: Coeff>(m: &SymbolicMatrix<C>) -> Result<CharPoly<C>> {
    let det = m.lambda_identity_minus().determinant();
    CharPoly::from_polynomial(m.size(), &det)
}

/// Characteristic polynomial of the canonical SL(n) matrix by power
/// series: invert `p(x) = 1 - lambda x + a2 x^2 + ... + an x^n`
/// truncated at x^n, and read off the degree-n coefficient of
/// `1 - a(x) p(x)`. With `a(x) p(x) + b(x) x^n = 1` this is `b(0)`.
pub fn char_poly_bezout<C: Coeff>(n: usize) -> Result<CharPoly<C>> {
    if n < 2 {
        return Err(Error::range(format!("SL rank must be >= 2, got {n}")));
    }
    // p[k] is the x^k coefficient of p.
    let mut p: Vec<WeightedPolynomial<C>> = Vec::with_capacity(n + 1);
    p.push(WeightedPolynomial::one());
    p.push(-&WeightedPolynomial::lambda());
    for k in 2..=n {
        p.push(WeightedPolynomial::generator(k));
    }
    // Truncated inverse: a[0] = 1, a[k] = -sum_{j=1..k} p[j] a[k-j].
    let mut a: Vec<WeightedPolynomial<C>> = vec![WeightedPolynomial::one()];
    for k in 1..n {
        let mut acc = WeightedPolynomial::zero();
        for j in 1..=k {
            acc = &acc + &(&p[j] * &a[k - j]);
        }
        a.push(-&acc);
    }
    // b(0) = [x^n](1 - a(x) p(x)) = -sum_{k=0..n-1} a[k] p[n-k].
    let mut b0 = WeightedPolynomial::zero();
    for k in 0..n {
        b0 = &b0 + &(&a[k] * &p[n - k]);
    }
    b0 = -&b0;
    CharPoly::from_polynomial(n, &b0)
}

/// The (incorrect for the canonical matrix) companion-matrix guess:
/// `lambda^n + a2 lambda^(n-2) + ... + an`. Kept as a negative control;
/// it differs from the direct characteristic polynomial.
pub fn companion_char_poly<C: Coeff>(n: usize) -> Result<CharPoly<C>> {
    if n < 2 {
        return Err(Error::range(format!("SL rank must be >= 2, got {n}")));
    }
    let mut p = WeightedPolynomial::monomial(Monomial::lambda(n as u16), C::one());
    for k in 2..=n {
        let term = WeightedPolynomial::monomial(
            Monomial::lambda((n - k) as u16).mul(&Monomial::generator(k, 1)),
            C::one(),
        );
        p = &p + &term;
    }
    CharPoly::from_polynomial(n, &p)
}

/// Checks `det(lambda I - Phi) == det(lambda^2 I - A)` for the
/// canonical Sp(2m) block matrix.
pub fn verify_sp_factorization<C: Coeff>(m: usize) -> Result<bool> {
    let (a, phi) = canonical_higgs_sp::<C>(m)?;
    let left = phi.lambda_identity_minus().determinant();
    let right = a
        .lambda_identity_minus()
        .determinant()
        .substitute_lambda_power(2);
    Ok(left == right)
}

/// Whether the coefficient of `lambda^(n-k)` equals `eps_k a_k` plus a
/// polynomial in `a_2 .. a_{k-1}` with `eps_k` a unit, for every k.
/// This is the triangularity making the coefficient system solvable.
pub fn is_triangular_in_generators<C: Coeff>(cp: &CharPoly<C>) -> bool {
    let n = cp.degree();
    for k in 2..=n {
        let c = cp.coefficient(n - k);
        let mut found_pivot = false;
        for (m, coeff) in c.terms() {
            match m.max_generator() {
                Some(g) if g >= k => {
                    let is_pivot = *m == Monomial::generator(k, 1) && coeff.abs().is_one();
                    if !is_pivot || found_pivot {
                        return false;
                    }
                    found_pivot = true;
                }
                _ => {}
            }
        }
        if !found_pivot {
            return false;
        }
    }
    true
}

/// Recovers the generator values `a_2 .. a_n` from the numeric values
/// of the characteristic-polynomial coefficients, by triangular
/// elimination in weight order. `values` supplies the assignment used
/// to produce the targets; the return value must equal it.
pub fn recover_generators<C: Coeff>(cp: &CharPoly<C>, values: &[C]) -> Result<Vec<C>> {
    let n = cp.degree();
    if values.len() != n.saturating_sub(1) {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: values.len(),
        });
    }
    if !is_triangular_in_generators(cp) {
        return Err(Error::range(
            "coefficient system is not unit triangular in the generators",
        ));
    }
    let assign_original = |i: usize| -> C {
        assert!(i >= 2);
        values[i - 2].clone()
    };
    let mut recovered: Vec<C> = Vec::with_capacity(n - 1);
    for k in 2..=n {
        let c = cp.coefficient(n - k);
        let target = c.evaluate(&|i| assign_original(i));
        let pivot = Monomial::generator(k, 1);
        let eps = c.coefficient(&pivot);
        let rest = c - &WeightedPolynomial::monomial(pivot, eps.clone());
        let rest_val = rest.evaluate(&|i| {
            assert!((2..k).contains(&i), "triangularity violated at a_{i}");
            recovered[i - 2].clone()
        });
        // eps is a unit (+-1), so dividing is multiplying.
        recovered.push(eps * (target - rest_val));
    }
    Ok(recovered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = WeightedPolynomial<i64>;

    fn a(i: usize) -> P {
        P::generator(i)
    }

    fn lam() -> P {
        P::lambda()
    }

    fn pow3(p: &P) -> P {
        &(p * p) * p
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let unit = Monomial::unit();
        let l = Monomial::lambda(1);
        let a2 = Monomial::generator(2, 1);
        let l2 = Monomial::lambda(2);
        let la2 = l.mul(&a2);
        assert!(unit < l);
        // Equal total degree: lambda is the most significant slot.
        assert!(a2 < l);
        // Degree dominates.
        assert!(l < l2);
        assert!(l2 < la2);
        assert!(la2 < Monomial::generator(2, 1).mul(&a2));
    }

    #[test]
    fn display_examples() {
        let p = &(&(&lam() * &lam()) - &a(2)) + &P::zero();
        assert_eq!(p.to_string(), "lambda^2 - a2");
        let n3 = &(&pow3(&lam()) - &(&P::constant(2) * &(&a(2) * &lam()))) - &a(3);
        assert_eq!(n3.to_string(), "lambda^3 - 2*a2*lambda - a3");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn canonical_sl_entries() {
        let m = canonical_higgs_sl::<i64>(2).unwrap();
        assert_eq!(m.entry(0, 0), &P::zero());
        assert_eq!(m.entry(0, 1), &P::one());
        assert_eq!(m.entry(1, 0), &a(2));
        assert_eq!(m.entry(1, 1), &P::zero());

        let m = canonical_higgs_sl::<i64>(3).unwrap();
        let rows: Vec<Vec<P>> = vec![
            vec![P::zero(), P::one(), P::zero()],
            vec![a(2), P::zero(), P::one()],
            vec![a(3), a(2), P::zero()],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.entry(i, j), &rows[i][j], "entry ({i},{j})");
            }
        }
        assert!(canonical_higgs_sl::<i64>(1).is_err());
    }

    #[test]
    fn canonical_sl_persymmetric() {
        for n in 2..=7 {
            assert!(canonical_higgs_sl::<i64>(n).unwrap().is_persymmetric());
        }
    }

    #[test]
    fn canonical_sp_entries() {
        let (a1, phi1) = canonical_higgs_sp::<i64>(1).unwrap();
        assert_eq!(a1.entry(0, 0), &a(2));
        assert_eq!(phi1.entry(0, 1), &P::one());
        assert_eq!(phi1.entry(1, 0), &a(2));

        let (a2m, _) = canonical_higgs_sp::<i64>(2).unwrap();
        assert_eq!(a2m.entry(0, 0), &a(2));
        assert_eq!(a2m.entry(0, 1), &P::one());
        assert_eq!(a2m.entry(1, 0), &a(4));
        assert_eq!(a2m.entry(1, 1), &a(2));

        // Only even-index generators occur.
        for m in 1..=4 {
            let (am, _) = canonical_higgs_sp::<i64>(m).unwrap();
            for i in 0..m {
                for j in 0..m {
                    for (mono, _) in am.entry(i, j).terms() {
                        if let Some(g) = mono.max_generator() {
                            assert_eq!(g % 2, 0, "odd generator a{g} in Sp matrix");
                        }
                    }
                }
            }
        }
        assert!(canonical_higgs_sp::<i64>(0).is_err());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(SymbolicMatrix::<i64>::identity(3).determinant(), P::one());
        let m = canonical_higgs_sl::<i64>(2).unwrap();
        assert_eq!(m.determinant(), -&a(2));
        let m3 = canonical_higgs_sl::<i64>(3).unwrap();
        let cp = char_poly_direct(&m3).unwrap();
        let expected = &(&lam().pow3() - &(&P::constant(2) * &(&a(2) * &lam()))) - &a(3);
        assert_eq!(cp.to_polynomial(), expected);
    }

    #[test]
    fn char_poly_direct_small() {
        let cp = char_poly_direct(&canonical_higgs_sl::<i64>(2).unwrap()).unwrap();
        assert_eq!(cp.to_polynomial(), &(&lam() * &lam()) - &a(2));
        assert!(cp.has_zero_trace());
        for n in 2..=7 {
            let cp = char_poly_direct(&canonical_higgs_sl::<i64>(n).unwrap()).unwrap();
            assert_eq!(cp.degree(), n);
            assert!(cp.has_zero_trace(), "n={n}");
            assert!(cp.is_weight_homogeneous(), "n={n}");
        }
    }

    #[test]
    fn bezout_hand_example_n2() {
        let cp = char_poly_bezout::<i64>(2).unwrap();
        assert_eq!(cp.to_polynomial(), &(&lam() * &lam()) - &a(2));
    }

    #[test]
    fn bezout_matches_direct() {
        for n in 2..=7 {
            let direct = char_poly_direct(&canonical_higgs_sl::<BigInt>(n).unwrap()).unwrap();
            let bezout = char_poly_bezout::<BigInt>(n).unwrap();
            assert_eq!(direct, bezout, "n={n}");
        }
    }

    #[test]
    fn companion_differs() {
        let companion = companion_char_poly::<i64>(3).unwrap();
        let direct = char_poly_direct(&canonical_higgs_sl::<i64>(3).unwrap()).unwrap();
        assert_ne!(companion, direct);
        assert_eq!(
            companion.to_polynomial().to_string(),
            "lambda^3 + a2*lambda + a3"
        );
        // n=2: the two differ only by the sign of a2.
        let companion = companion_char_poly::<i64>(2).unwrap();
        let direct = char_poly_direct(&canonical_higgs_sl::<i64>(2).unwrap()).unwrap();
        assert_eq!(companion.coefficient(0), &a(2));
        assert_eq!(direct.coefficient(0), &(-&a(2)));
    }

    #[test]
    fn sp_factorization_small() {
        for m in 1..=3 {
            assert!(verify_sp_factorization::<BigInt>(m).unwrap(), "m={m}");
        }
        // m=2: both sides equal lambda^4 - 2 a2 lambda^2 + (a2^2 - a4).
        let (_, phi) = canonical_higgs_sp::<i64>(2).unwrap();
        let cp = char_poly_direct(&phi).unwrap();
        let l2 = &lam() * &lam();
        let expected = &(&(&(&l2 * &l2) - &(&P::constant(2) * &(&a(2) * &l2)))
            + &(&a(2) * &a(2)))
            - &a(4);
        assert_eq!(cp.to_polynomial(), expected);
        assert!(cp.is_even_in_lambda());
        assert!(cp.is_weight_homogeneous());
    }

    #[test]
    fn triangular_and_recoverable() {
        for n in 2..=5 {
            let cp = char_poly_direct(&canonical_higgs_sl::<i64>(n).unwrap()).unwrap();
            assert!(is_triangular_in_generators(&cp), "n={n}");
            let values: Vec<i64> = (2..=n as i64).map(|k| 3 * k - 7).collect();
            let recovered = recover_generators(&cp, &values).unwrap();
            assert_eq!(recovered, values, "n={n}");
        }
    }

    #[test]
    fn ring_axioms_spot_checks() {
        let p = &(&lam() + &a(2)) * &(&a(3) - &P::constant(4));
        let q = &a(2) * &a(2);
        let r = &lam() - &a(4);
        // Associativity and distributivity.
        assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        // Subtraction inverts addition.
        assert_eq!(&(&p + &q) - &q, p);
    }

    #[test]
    fn homogeneity_detection() {
        assert_eq!(P::zero().homogeneity(), Homogeneity::Zero);
        let h = &(&lam() * &lam()) - &a(2); // both weight 2
        assert_eq!(h.homogeneity(), Homogeneity::Weight(2));
        let mixed = &lam() + &a(2);
        assert_eq!(mixed.homogeneity(), Homogeneity::Mixed);
    }

    #[test]
    fn lambda_substitution() {
        let p = &(&lam() * &lam()) - &a(2);
        let q = p.substitute_lambda_power(2);
        let l2 = &lam() * &lam();
        assert_eq!(q, &(&l2 * &l2) - &a(2));
    }
}
