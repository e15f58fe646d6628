//! Groebner-basis engine over Q: reduced bases via Buchberger's algorithm
//! with pair pruning, normal forms, zero-dimensionality tests, quotient
//! dimensions by staircase counting, and rational-point extraction through
//! lex elimination.

use crate::polyalg::{Monomial, MultiPoly, Rat};
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;

mod univar;

pub use univar::rational_roots;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealError {
    EmptyIdeal,
    VarMismatch,
    NotZeroDimensional,
    WrongVariableCount { expected: usize, found: usize },
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::EmptyIdeal => write!(f, "ideal has no nonzero generators"),
            IdealError::VarMismatch => write!(f, "generators live in different polynomial rings"),
            IdealError::NotZeroDimensional => write!(f, "ideal is not zero-dimensional"),
            IdealError::WrongVariableCount { expected, found } => {
                write!(f, "expected {expected} variables, found {found}")
            }
        }
    }
}

impl std::error::Error for IdealError {}

/// Monomial order used for basis computation. Grevlex for plain
/// computation, lex for elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
        }
    }
}

/// A finitely generated ideal: nonempty list of nonzero generators in a
/// common ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealData {
    num_vars: usize,
    generators: Vec<MultiPoly>,
}

impl IdealData {
    pub fn new(generators: Vec<MultiPoly>) -> Result<Self, IdealError> {
        let generators: Vec<MultiPoly> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        let Some(first) = generators.first() else {
            return Err(IdealError::EmptyIdeal);
        };
        let num_vars = first.num_vars();
        if generators.iter().any(|g| g.num_vars() != num_vars) {
            return Err(IdealError::VarMismatch);
        }
        Ok(IdealData { num_vars, generators })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }
}

/// A reduced Groebner basis: every element monic, no leading monomial
/// divides any monomial of another element, sorted by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    num_vars: usize,
    basis: Vec<MultiPoly>,
    is_reduced: bool,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.is_reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| leading_term(g, self.order).0.clone())
            .collect()
    }

    /// True iff the basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].num_terms() == 1 && {
            let (m, c) = leading_term(&self.basis[0], self.order);
            m.is_constant() && c.is_one()
        }
    }
}

/// A point of affine space with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffinePoint {
    pub coords: Vec<Rat>,
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn leading_term(p: &MultiPoly, order: MonomialOrder) -> (&Monomial, &Rat) {
    debug_assert!(!p.is_zero());
    match order {
        // Storage order is grevlex, so the maximum is the last key.
        MonomialOrder::GrevLex => p.terms().next_back().expect("nonzero"),
        MonomialOrder::Lex => p
            .terms()
            .max_by(|(a, _), (b, _)| a.cmp_lex(b))
            .expect("nonzero"),
    }
}

fn monic_under(p: MultiPoly, order: MonomialOrder) -> MultiPoly {
    if p.is_zero() {
        return p;
    }
    let lc = leading_term(&p, order).1.clone();
    if lc.is_one() {
        p
    } else {
        p.scale(&(Rat::one() / lc))
    }
}

/// Full multivariate division: the unique remainder of `p` by `reducers`
/// (no monomial of the result is divisible by any reducer leading monomial).
fn reduce_full(p: &MultiPoly, reducers: &[&MultiPoly], order: MonomialOrder) -> MultiPoly {
    let n = p.num_vars();
    let mut h = p.clone();
    let mut remainder = MultiPoly::zero(n);
    let lts: Vec<(Monomial, Rat)> = reducers
        .iter()
        .map(|g| {
            let (m, c) = leading_term(g, order);
            (m.clone(), c.clone())
        })
        .collect();
    'outer: while !h.is_zero() {
        let (lm, lc) = {
            let (m, c) = leading_term(&h, order);
            (m.clone(), c.clone())
        };
        for (g, (gm, gc)) in reducers.iter().zip(&lts) {
            if gm.divides(&lm) {
                let q = lm.checked_div(gm).expect("divisibility checked");
                let factor = &lc / gc;
                h = &h - &g.mul_term(&q, &factor);
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder.
        h = &h - &MultiPoly::from_terms(n, [(lm.clone(), lc.clone())]);
        remainder.add_term(lm, lc);
    }
    remainder
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: MonomialOrder) -> MultiPoly {
    let (fm, fc) = leading_term(f, order);
    let (gm, gc) = leading_term(g, order);
    let l = fm.lcm(gm);
    let uf = l.checked_div(fm).expect("lcm");
    let ug = l.checked_div(gm).expect("lcm");
    let a = f.mul_term(&uf, &(Rat::one() / fc));
    let b = g.mul_term(&ug, &(Rat::one() / gc));
    &a - &b
}

/// Reduced Groebner basis of `ideal` under `order`.
///
/// Deterministic: S-pairs are processed lowest lcm degree first with a fixed
/// lexicographic tie-break, and the reduced basis (unique for the ideal and
/// order) is sorted by leading monomial.
pub fn groebner_basis(ideal: &IdealData, order: MonomialOrder) -> GroebnerBasis {
    let num_vars = ideal.num_vars();
    let mut basis: Vec<MultiPoly> = ideal
        .generators()
        .iter()
        .map(|g| monic_under(g.clone(), order))
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        // Lowest-degree S-pair first, then lexicographic on the leading
        // monomials involved, then on indices.
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(i1, j1)), (_, &(i2, j2))| {
                let l1 = pair_lcm(&basis, i1, j1, order);
                let l2 = pair_lcm(&basis, i2, j2, order);
                l1.total_degree()
                    .cmp(&l2.total_degree())
                    .then_with(|| l1.cmp_lex(&l2))
                    .then_with(|| (i1, j1).cmp(&(i2, j2)))
            })
            .map(|(idx, _)| idx)
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(best);

        let (li, _) = leading_term(&basis[i], order);
        let (lj, _) = leading_term(&basis[j], order);
        let l = li.lcm(lj);

        // Product criterion: coprime leading monomials reduce to zero.
        if l == li.mul(lj) {
            continue;
        }
        // Chain criterion: some other element divides the lcm and both
        // associated pairs are no longer pending.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leading_term(&basis[k], order).0.divides(&l)
                && !pending(&pairs, i, k)
                && !pending(&pairs, j, k)
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let refs: Vec<&MultiPoly> = basis.iter().collect();
        let r = reduce_full(&s, &refs, order);
        if !r.is_zero() {
            let r = monic_under(r, order);
            let new_index = basis.len();
            basis.push(r);
            for k in 0..new_index {
                pairs.push((k, new_index));
            }
        }
    }

    // Minimize: drop elements whose leading monomial is divisible by the
    // leading monomial of another kept element.
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| {
        order
            .cmp(leading_term(&basis[a], order).0, leading_term(&basis[b], order).0)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<MultiPoly> = Vec::new();
    for &i in &idx {
        let lm = leading_term(&basis[i], order).0;
        if !kept
            .iter()
            .any(|k| leading_term(k, order).0.divides(lm))
        {
            kept.push(basis[i].clone());
        }
    }

    // Inter-reduce tails until nothing changes.
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<&MultiPoly> = kept
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, g)| g)
                .collect();
            let r = monic_under(reduce_full(&kept[i], &others, order), order);
            if r != kept[i] {
                kept[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Canonical presentation: descending leading monomials.
    kept.sort_by(|a, b| order.cmp(leading_term(b, order).0, leading_term(a, order).0));

    GroebnerBasis { order, num_vars, basis: kept, is_reduced: true }
}

fn pair_lcm(basis: &[MultiPoly], i: usize, j: usize, order: MonomialOrder) -> Monomial {
    leading_term(&basis[i], order)
        .0
        .lcm(leading_term(&basis[j], order).0)
}

fn pending(pairs: &[(usize, usize)], a: usize, b: usize) -> bool {
    let key = (a.min(b), a.max(b));
    pairs.contains(&key)
}

/// Unique remainder of `p` modulo the reduced basis; zero iff `p` is in the
/// ideal.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    assert_eq!(p.num_vars(), gb.num_vars);
    let refs: Vec<&MultiPoly> = gb.basis.iter().collect();
    reduce_full(p, &refs, gb.order)
}

/// True iff every variable has a pure power among the leading monomials
/// (so the quotient algebra is finite-dimensional over Q).
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    let lts = gb.leading_monomials();
    (0..gb.num_vars).all(|i| {
        lts.iter().any(|m| {
            m.exps()
                .iter()
                .enumerate()
                .all(|(j, &e)| j == i || e == 0)
        })
    })
}

/// Number of standard monomials (monomials outside the leading-term ideal)
/// = dim_Q of the quotient algebra.
pub fn quotient_dimension(gb: &GroebnerBasis) -> Result<usize, IdealError> {
    if !is_zero_dimensional(gb) {
        return Err(IdealError::NotZeroDimensional);
    }
    let lts = gb.leading_monomials();
    let n = gb.num_vars;
    // Pure-power exponents bound the staircase box.
    let caps: Vec<u32> = (0..n)
        .map(|i| {
            lts.iter()
                .filter(|m| m.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m.exp(i))
                .min()
                .expect("zero-dimensionality gives a pure power")
        })
        .collect();
    if caps.contains(&0) {
        // A pure power with exponent zero means 1 is in the ideal.
        return Ok(0);
    }
    let mut count = 0usize;
    let mut exps = vec![0u32; n];
    loop {
        let mono = Monomial::new(exps.clone());
        if !lts.iter().any(|m| m.divides(&mono)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            exps[i] += 1;
            if exps[i] < caps[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// All rational points of V(I) for a zero-dimensional ideal in two
/// variables, via lex elimination and rational-root search. The flag is
/// true iff every point of V(I) (over the complex numbers) is rational.
pub fn rational_points(gb: &GroebnerBasis) -> Result<(Vec<AffinePoint>, bool), IdealError> {
    if gb.num_vars != 2 {
        return Err(IdealError::WrongVariableCount { expected: 2, found: gb.num_vars });
    }
    if !is_zero_dimensional(gb) {
        return Err(IdealError::NotZeroDimensional);
    }
    let lex_gb = if gb.order == MonomialOrder::Lex {
        gb.clone()
    } else {
        let ideal = IdealData::new(gb.basis.clone()).expect("basis nonempty");
        groebner_basis(&ideal, MonomialOrder::Lex)
    };
    if lex_gb.is_unit_ideal() {
        return Ok((Vec::new(), true));
    }

    // Elimination: the unique basis element involving only the second
    // variable generates I ∩ Q[y].
    let eliminant = lex_gb
        .basis
        .iter()
        .find(|g| g.terms().all(|(m, _)| m.exp(0) == 0))
        .expect("zero-dimensional lex basis contains a univariate eliminant");
    let elim_coeffs = univar::coeffs_in(eliminant, 1);

    let (y_roots, y_split) = univar::rational_roots(&elim_coeffs);

    let mut points = Vec::new();
    let mut fibers_split = true;
    for (r, _mult) in &y_roots {
        // The fiber over y = r is cut out by the gcd of the substituted
        // basis elements, a univariate polynomial in x.
        let mut fiber_gcd: Vec<Rat> = Vec::new();
        for g in lex_gb.basis() {
            let sub = g.substitute_value(1, r);
            let coeffs = univar::coeffs_in(&sub, 0);
            fiber_gcd = univar::gcd(&fiber_gcd, &coeffs);
        }
        if univar::degree(&fiber_gcd).is_none() {
            // Whole line in the fiber; impossible for a zero-dimensional ideal.
            debug_assert!(false, "zero-dimensional ideal with a positive-dimensional fiber");
            fibers_split = false;
            continue;
        }
        let (x_roots, x_split) = univar::rational_roots(&fiber_gcd);
        if !x_split {
            fibers_split = false;
        }
        for (s, _) in x_roots {
            points.push(AffinePoint { coords: vec![s, r.clone()] });
        }
    }
    points.sort();
    Ok((points, y_split && fibers_split))
}
