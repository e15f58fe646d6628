//! Exact rational arithmetic and multivariate polynomials over Q.
//!
//! Polynomials are stored with dense exponent vectors in a `BTreeMap` keyed
//! by graded reverse lexicographic order, so every value is canonical: no
//! zero coefficients, terms always sorted the same way.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

mod matrix;
mod parse;

pub use matrix::{rank_of_rows, RatMatrix};
pub use parse::{parse_poly, ParseError};

/// Exact rational scalar. `BigRational` keeps values in lowest terms with a
/// positive denominator; zero is uniquely `0/1`.
pub type Rat = num_rational::BigRational;

/// Integer as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Fraction `num/den` as a `Rat` (reduced on construction).
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    VarMismatch { left: usize, right: usize },
    IndexOutOfRange { index: usize, num_vars: usize },
    SingularMatrix,
    NotHomogeneous,
    DegreeTooSmall { degree: u32, needed: u32 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::VarMismatch { left, right } => {
                write!(f, "variable-count mismatch: {left} vs {right}")
            }
            PolyError::IndexOutOfRange { index, num_vars } => {
                write!(f, "variable index {index} out of range for {num_vars} variables")
            }
            PolyError::SingularMatrix => write!(f, "substitution matrix is singular"),
            PolyError::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            PolyError::DegreeTooSmall { degree, needed } => {
                write!(f, "target degree {degree} is smaller than term degree {needed}")
            }
        }
    }
}

impl std::error::Error for PolyError {}

/// Exponent vector of fixed length (one entry per ambient variable).
///
/// `Ord` is graded reverse lexicographic, which makes ordered containers of
/// monomials canonical for storage and printing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial `1`.
    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: vec![0; num_vars] }
    }

    /// The single variable `x_index`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars);
        let mut exps = vec![0; num_vars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Graded reverse lexicographic comparison.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Equal degree: rightmost differing exponent decides, smaller wins.
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    /// Pure lexicographic comparison (first variable dominates).
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The binary operations exposed on polynomial pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Invariants: no stored coefficient is zero, every key has length
/// `num_vars`, and the map order is grevlex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(num_vars), c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rat::one())
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut p = Self::zero(num_vars);
        p.terms.insert(Monomial::var(num_vars, index), Rat::one());
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = Self::zero(num_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.num_vars))
    }

    /// Max total degree over the terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Min total degree over the terms (order of vanishing at the origin).
    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).min().unwrap_or(0)
    }

    /// `Some(d)` when nonzero and every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.num_vars(), self.num_vars);
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

    /// The spec-level binary operation; checks variable counts.
    pub fn binary_op(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly, PolyError> {
        if a.num_vars != b.num_vars {
            return Err(PolyError::VarMismatch { left: a.num_vars, right: b.num_vars });
        }
        let mut out = match op {
            PolyOp::Add | PolyOp::Sub => a.clone(),
            PolyOp::Mul => {
                let mut out = MultiPoly::zero(a.num_vars);
                for (ma, ca) in &a.terms {
                    for (mb, cb) in &b.terms {
                        out.add_term(ma.mul(mb), ca * cb);
                    }
                }
                return Ok(out);
            }
        };
        for (m, c) in &b.terms {
            let c = if matches!(op, PolyOp::Sub) { -c.clone() } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(mm, k)| (mm.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.num_vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Exact formal partial derivative with respect to variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Result<MultiPoly, PolyError> {
        if index >= self.num_vars {
            return Err(PolyError::IndexOutOfRange { index, num_vars: self.num_vars });
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[index] = e - 1;
            out.add_term(Monomial::new(exps), c * rat_int(e as i64));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute each variable by an arbitrary polynomial (same ambient
    /// variable count in the images).
    fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.num_vars);
        let out_vars = images.first().map(|p| p.num_vars).unwrap_or(self.num_vars);
        // Cache powers of every image up to the max exponent used.
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(self.num_vars);
        for (i, img) in images.iter().enumerate() {
            let max_e = self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0) as usize;
            let mut cache = Vec::with_capacity(max_e + 1);
            cache.push(MultiPoly::one(out_vars));
            for k in 1..=max_e {
                let next = &cache[k - 1] * img;
                cache.push(next);
            }
            powers.push(cache);
        }
        let mut acc = MultiPoly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(out_vars, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Compose with the linear change of variables `x -> M x`.
    pub fn substitute_linear(&self, m: &RatMatrix) -> Result<MultiPoly, PolyError> {
        if m.rows() != self.num_vars || m.cols() != self.num_vars {
            return Err(PolyError::VarMismatch { left: self.num_vars, right: m.rows() });
        }
        if m.determinant().is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        let images: Vec<MultiPoly> = (0..self.num_vars)
            .map(|i| {
                MultiPoly::from_terms(
                    self.num_vars,
                    (0..self.num_vars)
                        .map(|j| (Monomial::var(self.num_vars, j), m.get(i, j).clone())),
                )
            })
            .collect();
        Ok(self.substitute(&images))
    }

    /// Shift of the origin: `x_i -> x_i + offset_i`.
    pub fn translate(&self, offset: &[Rat]) -> MultiPoly {
        assert_eq!(offset.len(), self.num_vars);
        let images: Vec<MultiPoly> = (0..self.num_vars)
            .map(|i| {
                let mut p = MultiPoly::var(self.num_vars, i);
                p.add_term(Monomial::one(self.num_vars), offset[i].clone());
                p
            })
            .collect();
        self.substitute(&images)
    }

    /// Partial evaluation of a single variable; the ambient count is kept.
    pub fn substitute_value(&self, index: usize, value: &Rat) -> MultiPoly {
        assert!(index < self.num_vars);
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exp(index);
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            let mut exps = m.exps.clone();
            exps[index] = 0;
            out.add_term(Monomial::new(exps), coeff);
        }
        out
    }

    /// Set `chart_var = 1` and drop it; remaining variables keep their order.
    pub fn dehomogenize(&self, chart_var: usize) -> Result<MultiPoly, PolyError> {
        if chart_var >= self.num_vars {
            return Err(PolyError::IndexOutOfRange { index: chart_var, num_vars: self.num_vars });
        }
        if self.homogeneous_degree().is_none() {
            return Err(PolyError::NotHomogeneous);
        }
        let mut out = MultiPoly::zero(self.num_vars - 1);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.remove(chart_var);
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize): insert `chart_var`
    /// and pad every term to total degree `degree`.
    pub fn homogenize(&self, chart_var: usize, degree: u32) -> Result<MultiPoly, PolyError> {
        if chart_var > self.num_vars {
            return Err(PolyError::IndexOutOfRange { index: chart_var, num_vars: self.num_vars + 1 });
        }
        if self.total_degree() > degree {
            return Err(PolyError::DegreeTooSmall { degree, needed: self.total_degree() });
        }
        let mut out = MultiPoly::zero(self.num_vars + 1);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.insert(chart_var, degree - m.total_degree());
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Reinterpret in a larger ambient ring (new variables appended).
    pub fn extend_vars(&self, num_vars: usize) -> MultiPoly {
        assert!(num_vars >= self.num_vars);
        let mut out = MultiPoly::zero(num_vars);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.resize(num_vars, 0);
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: Self) -> MultiPoly {
        MultiPoly::binary_op(self, other, PolyOp::Add).expect("variable counts must match")
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: Self) -> MultiPoly {
        MultiPoly::binary_op(self, other, PolyOp::Sub).expect("variable counts must match")
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: Self) -> MultiPoly {
        MultiPoly::binary_op(self, other, PolyOp::Mul).expect("variable counts must match")
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Canonical text form: descending grevlex, `*` between factors, `^` for
/// exponents, coefficients as `int` or `int/int`. Round-trips through
/// [`parse_poly`].
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = default_var_names(self.num_vars);
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_constant() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Variable names used for printing: x, y, z, then x3, x4, ...
pub fn default_var_names(num_vars: usize) -> Vec<String> {
    (0..num_vars)
        .map(|i| match i {
            0 => "x".to_string(),
            1 => "y".to_string(),
            2 => "z".to_string(),
            _ => format!("x{i}"),
        })
        .collect()
}
