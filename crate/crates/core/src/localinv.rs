//! Singularity invariants of reduced plane curves: validated projective
//! divisor input with a chart free of singular points at infinity,
//! per-point Milnor and Tjurina numbers through truncated jet algebras,
//! and global totals through Groebner quotient dimensions.

use crate::ideals::{
    groebner_basis, is_zero_dimensional, quotient_dimension, rational_points, AffinePoint,
    IdealData, IdealError, MonomialOrder,
};
use crate::polyalg::{rank_of_rows, rat_int, Monomial, MultiPoly, PolyError, Rat, RatMatrix};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug)]
pub enum DivisorError {
    WrongVariableCount { found: usize },
    ZeroPolynomial,
    NotHomogeneous,
    DegreeZero,
    NonIsolatedSingularities,
    ChartRetriesExhausted { budget: usize },
    JetCapExceeded { cap: usize },
    MilnorTotalNotCertified,
    Inconsistency { reason: String },
    Poly(PolyError),
    Ideal(IdealError),
}

impl fmt::Display for DivisorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorError::WrongVariableCount { found } => {
                write!(f, "expected a polynomial in x, y, z (3 variables), found {found}")
            }
            DivisorError::ZeroPolynomial => write!(f, "the zero polynomial is not a divisor"),
            DivisorError::NotHomogeneous => write!(f, "divisor equation must be homogeneous"),
            DivisorError::DegreeZero => write!(f, "divisor equation must have positive degree"),
            DivisorError::NonIsolatedSingularities => {
                write!(f, "non-reduced or non-isolated singularities")
            }
            DivisorError::ChartRetriesExhausted { budget } => {
                write!(f, "no chart found with all singular points affine after {budget} attempts")
            }
            DivisorError::JetCapExceeded { cap } => {
                write!(f, "jet dimensions did not stabilize below order {cap}")
            }
            DivisorError::MilnorTotalNotCertified => {
                write!(f, "could not certify the global Milnor number")
            }
            DivisorError::Inconsistency { reason } => {
                write!(f, "internal cross-check failed: {reason}")
            }
            DivisorError::Poly(e) => write!(f, "{e}"),
            DivisorError::Ideal(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DivisorError {}

impl From<PolyError> for DivisorError {
    fn from(e: PolyError) -> Self {
        DivisorError::Poly(e)
    }
}

impl From<IdealError> for DivisorError {
    fn from(e: IdealError) -> Self {
        DivisorError::Ideal(e)
    }
}

/// A validated reduced plane-curve divisor, stored in coordinates where no
/// singular point lies on the line z = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorInput {
    poly: MultiPoly,
    degree: u32,
    chart_transform: RatMatrix,
}

impl DivisorInput {
    /// The (possibly transformed) homogeneous equation.
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The coordinate change that was applied; identity if none was needed.
    pub fn chart_transform(&self) -> &RatMatrix {
        &self.chart_transform
    }

    /// Affine local equation in the chart z = 1.
    pub fn affine_equation(&self) -> MultiPoly {
        self.poly.dehomogenize(2).expect("validated homogeneous input")
    }
}

/// Milnor and Tjurina numbers at one rational singular point, in the chart
/// z = 1 of the stored coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPointData {
    pub point: AffinePoint,
    pub mu: usize,
    pub tau: usize,
    pub quasi_homogeneous: bool,
}

/// Per-point singularity data plus exact global totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocusReport {
    pub points: Vec<SingularPointData>,
    pub mu_total: usize,
    pub tau_total: usize,
    pub all_points_rational: bool,
}

/// Default jet-order cap for a degree-d curve: global Milnor numbers are
/// bounded by (d-1)^2 and jets stabilize by mu + 2 at every point.
pub fn default_jet_cap(degree: u32) -> usize {
    let d = degree as usize;
    2 * (d - 1) * (d - 1) + 4
}

/// Check that `f` cuts out a reduced curve with isolated singularities and
/// move every singular point into the affine chart z = 1 by a random
/// unimodular coordinate change (identity first, then seeded draws).
pub fn validate_divisor(
    f: &MultiPoly,
    retry_budget: usize,
    seed: u64,
) -> Result<DivisorInput, DivisorError> {
    if f.num_vars() != 3 {
        return Err(DivisorError::WrongVariableCount { found: f.num_vars() });
    }
    if f.is_zero() {
        return Err(DivisorError::ZeroPolynomial);
    }
    let Some(degree) = f.homogeneous_degree() else {
        return Err(DivisorError::NotHomogeneous);
    };
    if degree == 0 {
        return Err(DivisorError::DegreeZero);
    }

    // The singular scheme V(F_x, F_y, F_z) must be finite as a projective
    // scheme, i.e. its affine cone has dimension at most 1. This certifies
    // that F is squarefree with isolated singularities, and is invariant
    // under coordinate changes, so check it once.
    let grads = gradient(f)?;
    if cone_dimension(&grads)? > 1 {
        return Err(DivisorError::NonIsolatedSingularities);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..retry_budget.max(1) {
        let m = if attempt == 0 {
            RatMatrix::identity(3)
        } else {
            random_unimodular(&mut rng)
        };
        let g = f.substitute_linear(&m)?;
        let grads = gradient(&g)?;
        // No singular point on z = 0: the ideal (G_x, G_y, G_z, z) has an
        // empty projective zero set exactly when its cone is the origin.
        let mut gens = grads.clone();
        gens.push(MultiPoly::var(3, 2));
        let gb = groebner_basis(&IdealData::new(gens)?, MonomialOrder::GrevLex);
        if is_zero_dimensional(&gb) {
            return Ok(DivisorInput { poly: g, degree, chart_transform: m });
        }
    }
    Err(DivisorError::ChartRetriesExhausted { budget: retry_budget })
}

fn gradient(f: &MultiPoly) -> Result<Vec<MultiPoly>, PolyError> {
    (0..f.num_vars()).map(|i| f.partial_derivative(i)).collect()
}

/// Krull dimension of the affine cone cut out by a homogeneous ideal in
/// three variables; -1 for the unit ideal (empty cone).
fn cone_dimension(gens: &[MultiPoly]) -> Result<i32, DivisorError> {
    let nonzero: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(3);
    }
    let gb = groebner_basis(&IdealData::new(nonzero)?, MonomialOrder::GrevLex);
    let lts = gb.leading_monomials();
    // dim R/in(I) = size of the largest variable subset S such that no
    // leading monomial is supported inside S.
    let mut best: i32 = -1;
    for mask in 0u8..8 {
        let subset: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).collect();
        let independent = !lts
            .iter()
            .any(|m| m.exps().iter().enumerate().all(|(j, &e)| e == 0 || subset.contains(&j)));
        if independent {
            best = best.max(subset.len() as i32);
        }
    }
    Ok(best)
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> RatMatrix {
    // Product of elementary shears: determinant 1, integer entries.
    let mut m = RatMatrix::identity(3);
    for _ in 0..4 {
        let i = rng.gen_range(0..3usize);
        let j = (i + rng.gen_range(1..3usize)) % 3;
        let k: i64 = [-2, -1, 1, 2][rng.gen_range(0..4usize)];
        let mut shear = RatMatrix::identity(3);
        shear.set(i, j, rat_int(k));
        m = m.mul(&shear);
    }
    m
}

/// Dimension over Q of the local Artinian algebra of `gens` at `point`,
/// computed by truncated jets: translate the point to the origin and find
/// the first order N with dim Q[x..]/((gens) + m^N) = dim at N + 1.
pub fn local_algebra_dim(
    gens: &[MultiPoly],
    point: &AffinePoint,
    max_order: usize,
) -> Result<usize, DivisorError> {
    assert!(!gens.is_empty());
    let n = gens[0].num_vars();
    assert_eq!(point.coords.len(), n);
    let shifted: Vec<MultiPoly> = gens.iter().map(|g| g.translate(&point.coords)).collect();
    let mut prev: Option<usize> = None;
    for order in 1..=max_order {
        let dim = jet_dim(&shifted, order);
        if prev == Some(dim) {
            // Stabilization is permanent; one more order as a guard.
            let again = jet_dim(&shifted, order + 1);
            if again != dim {
                return Err(DivisorError::Inconsistency {
                    reason: format!("jet dimension regressed at order {}", order + 1),
                });
            }
            return Ok(dim);
        }
        prev = Some(dim);
    }
    Err(DivisorError::JetCapExceeded { cap: max_order })
}

/// dim_Q Q[x..]/((gens) + m^order) by exact linear algebra on coefficient
/// vectors of truncated multiples.
fn jet_dim(gens: &[MultiPoly], order: usize) -> usize {
    let n = gens[0].num_vars();
    let cols = monomials_below(n, order);
    let col_index: std::collections::BTreeMap<&Monomial, usize> =
        cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let val = g.min_degree() as usize;
        if val >= order {
            continue;
        }
        for m in monomials_below(n, order - val) {
            let product = g.mul_term(&m, &Rat::one());
            let mut row = vec![Rat::zero(); cols.len()];
            let mut nonzero = false;
            for (mono, c) in product.terms() {
                if (mono.total_degree() as usize) < order {
                    row[col_index[mono]] = c.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    cols.len() - rank_of_rows(rows)
}

/// All monomials of total degree < bound, in grevlex order.
fn monomials_below(num_vars: usize, bound: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; num_vars];
    'walk: loop {
        if exps.iter().map(|&e| e as usize).sum::<usize>() < bound {
            out.push(Monomial::new(exps.clone()));
        }
        let mut i = 0;
        loop {
            if i == num_vars {
                break 'walk;
            }
            exps[i] += 1;
            if exps.iter().map(|&e| e as usize).sum::<usize>() < bound {
                continue 'walk;
            }
            exps[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

/// Milnor and Tjurina numbers of the affine curve `f` at a singular point:
/// local dimensions of (f_x, f_y) and (f, f_x, f_y).
pub fn milnor_tjurina_at(
    f: &MultiPoly,
    point: &AffinePoint,
    max_order: usize,
) -> Result<(usize, usize), DivisorError> {
    let fx = f.partial_derivative(0)?;
    let fy = f.partial_derivative(1)?;
    let mu = local_algebra_dim(&[fx.clone(), fy.clone()], point, max_order)?;
    let tau = local_algebra_dim(&[f.clone(), fx, fy], point, max_order)?;
    Ok((mu, tau))
}

/// Full singular-locus analysis in the chart z = 1: exact mu/tau totals,
/// rational singular points with per-point invariants, and whether the
/// rational points exhaust the singular locus.
pub fn analyze_singular_locus(
    divisor: &DivisorInput,
    max_jet_order: Option<usize>,
) -> Result<SingularLocusReport, DivisorError> {
    let cap = max_jet_order.unwrap_or_else(|| default_jet_cap(divisor.degree()));
    let f = divisor.affine_equation();
    if f.total_degree() == 0 {
        // The curve avoids the chart entirely (a multiple of the line at
        // infinity); validation only lets the smooth case through.
        return Ok(SingularLocusReport {
            points: Vec::new(),
            mu_total: 0,
            tau_total: 0,
            all_points_rational: true,
        });
    }
    let fx = f.partial_derivative(0)?;
    let fy = f.partial_derivative(1)?;

    let tjurina = IdealData::new(vec![f.clone(), fx.clone(), fy.clone()])?;
    let t_gb = groebner_basis(&tjurina, MonomialOrder::GrevLex);
    let tau_total = quotient_dimension(&t_gb)?;

    let mu_total = if t_gb.is_unit_ideal() {
        // No singular points in the chart at all: the Milnor total is zero
        // no matter what critical points f has off the curve.
        0
    } else {
        milnor_total(&f, &fx, &fy, divisor.degree())?
    };

    let (raw_points, all_points_rational) = if t_gb.is_unit_ideal() {
        (Vec::new(), true)
    } else {
        rational_points(&t_gb)?
    };

    let mut points = Vec::new();
    for point in raw_points {
        let (mu, tau) = milnor_tjurina_at(&f, &point, cap)?;
        // The Tjurina algebra is a quotient of the Milnor algebra, and a
        // singular point has tau >= 1.
        if mu < tau || tau == 0 {
            return Err(DivisorError::Inconsistency {
                reason: format!("invalid invariants (mu {mu}, tau {tau}) at {point}"),
            });
        }
        points.push(SingularPointData { point, mu, tau, quasi_homogeneous: mu == tau });
    }

    if all_points_rational {
        let mu_sum: usize = points.iter().map(|p| p.mu).sum();
        let tau_sum: usize = points.iter().map(|p| p.tau).sum();
        if mu_sum != mu_total || tau_sum != tau_total {
            return Err(DivisorError::Inconsistency {
                reason: format!(
                    "per-point sums (mu {mu_sum}, tau {tau_sum}) disagree with totals \
                     (mu {mu_total}, tau {tau_total})"
                ),
            });
        }
    }

    Ok(SingularLocusReport { points, mu_total, tau_total, all_points_rational })
}

/// Sum of local Milnor numbers over the singular points of the curve.
///
/// The affine critical ideal (f_x, f_y) can pick up critical points that do
/// not lie on the curve; those are removed exactly by localization: the
/// quotient by (f_x, f_y, 1 - t f) in one more variable counts the critical
/// points where f is invertible.
fn milnor_total(
    f: &MultiPoly,
    fx: &MultiPoly,
    fy: &MultiPoly,
    degree: u32,
) -> Result<usize, DivisorError> {
    if fx.is_zero() && fy.is_zero() {
        return Ok(0);
    }
    let milnor = IdealData::new(vec![fx.clone(), fy.clone()])?;
    let m_gb = groebner_basis(&milnor, MonomialOrder::GrevLex);
    if is_zero_dimensional(&m_gb) {
        let all_critical = quotient_dimension(&m_gb)?;
        // If f is nilpotent on the critical scheme (f in the radical of the
        // critical ideal), every critical point lies on the curve and the
        // plain colength already is the Milnor total. Nilpotence is decided
        // by squaring normal forms: the index is at most the colength.
        let mut power = crate::ideals::normal_form(f, &m_gb);
        let mut exponent = 1usize;
        while !power.is_zero() && exponent < all_critical.max(1) {
            power = crate::ideals::normal_form(&(&power * &power), &m_gb);
            exponent *= 2;
        }
        if power.is_zero() {
            return Ok(all_critical);
        }
        let f3 = f.extend_vars(3);
        let t = MultiPoly::var(3, 2);
        let rabinowitsch = &MultiPoly::one(3) - &(&t * &f3);
        let away = IdealData::new(vec![fx.extend_vars(3), fy.extend_vars(3), rabinowitsch])?;
        let away_gb = groebner_basis(&away, MonomialOrder::GrevLex);
        let off_curve = quotient_dimension(&away_gb)?;
        return Ok(all_critical - off_curve);
    }

    // Degenerate fallback: the partial derivatives share a factor. The
    // ideals (f_x, f_y, f^k) are supported on the singular points for every
    // k, and their colengths stabilize to the Milnor total once f^k lies in
    // (f_x, f_y) locally at each singular point.
    let bound = ((degree as usize - 1) * (degree as usize - 1)).max(2) + 2;
    let mut prev: Option<usize> = None;
    let mut power = f.clone();
    for _k in 1..=bound {
        let ideal = IdealData::new(vec![fx.clone(), fy.clone(), power.clone()])?;
        let gb = groebner_basis(&ideal, MonomialOrder::GrevLex);
        let dim = quotient_dimension(&gb)?;
        if prev == Some(dim) {
            return Ok(dim);
        }
        prev = Some(dim);
        power = &power * f;
    }
    Err(DivisorError::MilnorTotalNotCertified)
}
