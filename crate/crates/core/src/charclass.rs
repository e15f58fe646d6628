//! Characteristic classes of a reduced plane curve and its complement:
//! the CSM class of the curve, the Chern class of logarithmic derivations,
//! and the equivalence chain tying the two identities together.
//!
//! Everything here is exact arithmetic in Q[H]/(H^3). The singular locus
//! enters only through the totals `mu_total` (the Segre class of the
//! Jacobian scheme is `mu_total * H^2`) and `tau_total` (the class of its
//! structure sheaf is `[X] - tau_total * H^2`).

use crate::chow::{segre_of_divisor, tangent_chern, ChowClass, DivisorClass};
use crate::localinv::{analyze_singular_locus, DivisorError, DivisorInput, SingularLocusReport};
use crate::polyalg::rat_int;
use num_traits::ToPrimitive;

/// CSM class of a reduced curve of degree `d` in the plane with total
/// Milnor number `mu_total`:
/// `c(TP^2) * ( s(D,P^2) + c(O(d))^-1 * ((mu H^2)^v (x) O(d)) )`.
pub fn csm_hypersurface(degree: u32, mu_total: usize) -> ChowClass {
    let n = 2;
    let d = DivisorClass::of_degree(degree as i64);
    let milnor_cycle = ChowClass::h_power(n, 2, rat_int(mu_total as i64));
    let twisted = milnor_cycle.dual().tensor_by_divisor(&d);
    let correction = d
        .total_chern(n)
        .inverse()
        .expect("1 + dH is a unit")
        .mul(&twisted)
        .expect("ambient P^2");
    let inner = segre_of_divisor(degree, n).add(&correction);
    tangent_chern(n).mul(&inner).expect("ambient P^2")
}

/// CSM class of the complement: `c(TP^2) - c_SM(curve)`.
pub fn csm_complement(degree: u32, mu_total: usize) -> ChowClass {
    tangent_chern(2).sub(&csm_hypersurface(degree, mu_total))
}

/// Total Chern class of the sheaf of logarithmic derivations, from the
/// four-term sequence relating it to `Der`, `O_D(D)` and `O_{J_D}(D)`:
/// `c(T P^2) * (([X] - tau H^2) (x) O(d)) / c(O(d))`.
pub fn chern_log_derivations(degree: u32, tau_total: usize) -> ChowClass {
    let n = 2;
    let d = DivisorClass::of_degree(degree as i64);
    let structure = ChowClass::one(n).sub(&ChowClass::h_power(n, 2, rat_int(tau_total as i64)));
    let twisted = structure.tensor_by_divisor(&d);
    tangent_chern(n)
        .mul(&twisted)
        .expect("ambient P^2")
        .mul(&d.total_chern(n).inverse().expect("1 + dH is a unit"))
        .expect("ambient P^2")
}

/// The Segre-versus-Chern comparison for the Jacobian scheme of a curve
/// with isolated singularities: `[X] - s(J_D, X)^v` against
/// `c(O_{J_D}) cap [X]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreChernIdentity {
    pub lhs: ChowClass,
    pub rhs: ChowClass,
    pub holds: bool,
}

pub fn segre_chern_identity(mu_total: usize, tau_total: usize) -> SegreChernIdentity {
    let n = 2;
    let segre = ChowClass::h_power(n, 2, rat_int(mu_total as i64));
    let lhs = ChowClass::one(n).sub(&segre.dual());
    let rhs = ChowClass::one(n).sub(&ChowClass::h_power(n, 2, rat_int(tau_total as i64)));
    let holds = lhs == rhs;
    SegreChernIdentity { lhs, rhs, holds }
}

/// Full verification record for one curve: both sides of the main formula,
/// both sides of the Segre/Chern comparison, and the agreement verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveReport {
    pub divisor: DivisorInput,
    pub locus: SingularLocusReport,
    pub csm_curve: ChowClass,
    pub csm_complement: ChowClass,
    pub chern_logder: ChowClass,
    pub segre_side: ChowClass,
    pub chern_side: ChowClass,
    pub formula_holds: bool,
    pub difference: ChowClass,
    pub euler_curve: i64,
    pub euler_complement: i64,
}

/// Verify the main identity for a validated divisor: compute the singular
/// locus, evaluate both pipelines, and check that the three verdicts
/// (formula, Segre/Chern comparison, mu = tau) agree.
pub fn verify_theorem(
    divisor: &DivisorInput,
    max_jet_order: Option<usize>,
) -> Result<CurveReport, DivisorError> {
    let locus = analyze_singular_locus(divisor, max_jet_order)?;
    let degree = divisor.degree();

    let csm_curve = csm_hypersurface(degree, locus.mu_total);
    let csm_comp = csm_complement(degree, locus.mu_total);
    let chern_logder = chern_log_derivations(degree, locus.tau_total);

    // Additivity guard: the two CSM classes must assemble to c(T P^2).
    if csm_curve.add(&csm_comp) != tangent_chern(2) {
        return Err(DivisorError::Inconsistency {
            reason: "CSM classes of curve and complement do not add to c(TP^2)".into(),
        });
    }

    let identity = segre_chern_identity(locus.mu_total, locus.tau_total);
    let difference = csm_comp.sub(&chern_logder);
    let formula_holds = difference.is_zero();

    let mu_eq_tau = locus.mu_total == locus.tau_total;
    if formula_holds != identity.holds || formula_holds != mu_eq_tau {
        return Err(DivisorError::Inconsistency {
            reason: format!(
                "verdicts disagree: formula {formula_holds}, segre-chern {}, mu==tau {mu_eq_tau}",
                identity.holds
            ),
        });
    }

    for class in [&csm_curve, &csm_comp, &chern_logder, &difference] {
        if !class.is_integral() {
            return Err(DivisorError::Inconsistency {
                reason: format!("non-integral class coefficients in {class}"),
            });
        }
    }

    let euler_curve = chow_integer(&csm_curve, 2)?;
    let euler_complement = chow_integer(&csm_comp, 2)?;

    Ok(CurveReport {
        divisor: divisor.clone(),
        locus,
        csm_curve,
        csm_complement: csm_comp,
        chern_logder,
        segre_side: identity.lhs,
        chern_side: identity.rhs,
        formula_holds,
        difference,
        euler_curve,
        euler_complement,
    })
}

fn chow_integer(class: &ChowClass, codim: usize) -> Result<i64, DivisorError> {
    class
        .coeff(codim)
        .to_integer()
        .to_i64()
        .ok_or_else(|| DivisorError::Inconsistency {
            reason: "Euler characteristic does not fit in i64".into(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localinv::validate_divisor;
    use crate::polyalg::parse_poly;

    fn class(coeffs: &[i64]) -> ChowClass {
        ChowClass::from_ints(2, coeffs)
    }

    #[test]
    fn csm_hypersurface_frozen_examples() {
        // Hand expansions of the hypersurface CSM formula in P^2.
        assert_eq!(csm_hypersurface(3, 1), class(&[0, 3, 1]));
        assert_eq!(csm_hypersurface(3, 2), class(&[0, 3, 2]));
        assert_eq!(csm_hypersurface(2, 0), class(&[0, 2, 2]));
    }

    #[test]
    fn csm_complement_frozen_examples() {
        assert_eq!(csm_complement(3, 1), class(&[1, 0, 2]));
        assert_eq!(csm_complement(3, 2), class(&[1, 0, 1]));
        assert_eq!(csm_complement(2, 0), class(&[1, 1, 1]));
    }

    #[test]
    fn chern_log_derivations_frozen_examples() {
        assert_eq!(chern_log_derivations(3, 1), class(&[1, 0, 2]));
        assert_eq!(chern_log_derivations(2, 0), class(&[1, 1, 1]));
        assert_eq!(chern_log_derivations(5, 10), class(&[1, -2, 3]));
    }

    #[test]
    fn segre_chern_identity_examples() {
        let id = segre_chern_identity(1, 1);
        assert!(id.holds);
        assert_eq!(id.lhs, id.rhs);

        let id = segre_chern_identity(0, 0);
        assert!(id.holds);
        assert_eq!(id.lhs, ChowClass::one(2));

        let id = segre_chern_identity(11, 10);
        assert!(!id.holds);
        assert_eq!(id.lhs, class(&[1, 0, -11]));
        assert_eq!(id.rhs, class(&[1, 0, -10]));
        // lhs - rhs = (tau - mu) H^2 with the sign flipped: rhs - lhs = H^2.
        assert_eq!(id.rhs.sub(&id.lhs), class(&[0, 0, 1]));
    }

    #[test]
    fn euler_characteristic_oracle() {
        // chi(D) = 3d - d^2 + mu for a reduced plane curve of degree d:
        // the degree-genus formula plus one unit per Milnor number. This is
        // independent of the class pipeline being checked.
        for d in 1..=6u32 {
            for mu in [0usize, 1, 2, 4] {
                let chi = 3 * d as i64 - (d as i64) * (d as i64) + mu as i64;
                assert_eq!(csm_hypersurface(d, mu).coeff(2), &rat_int(chi), "d={d} mu={mu}");
            }
        }
    }

    #[test]
    fn additivity_of_csm_classes() {
        for d in 1..=7u32 {
            for mu in 0..=9usize {
                let total = csm_hypersurface(d, mu).add(&csm_complement(d, mu));
                assert_eq!(total, tangent_chern(2));
            }
        }
    }

    #[test]
    fn difference_is_controlled_by_mu_minus_tau() {
        // csm_complement - chern_log_derivations = (tau - mu) H^2, for any
        // degree and any totals.
        for d in 1..=7u32 {
            for mu in 0..=6usize {
                for tau in 0..=6usize {
                    let diff = csm_complement(d, mu).sub(&chern_log_derivations(d, tau));
                    let expected =
                        ChowClass::h_power(2, 2, rat_int(tau as i64 - mu as i64));
                    assert_eq!(diff, expected, "d={d} mu={mu} tau={tau}");
                }
            }
        }
    }

    #[test]
    fn verify_theorem_nodal_cubic() {
        let f = parse_poly("y^2*z - x^3 - x^2*z", &["x", "y", "z"]).unwrap();
        let divisor = validate_divisor(&f, 8, 0).unwrap();
        let report = verify_theorem(&divisor, None).unwrap();
        assert!(report.formula_holds);
        assert_eq!(report.csm_complement, class(&[1, 0, 2]));
        assert_eq!(report.chern_logder, class(&[1, 0, 2]));
        assert_eq!(report.difference, ChowClass::zero(2));
        assert_eq!((report.euler_curve, report.euler_complement), (1, 2));
    }

    #[test]
    fn verify_theorem_failing_quintic() {
        let f = parse_poly("x^5 + x^2*y^2*z + y^5", &["x", "y", "z"]).unwrap();
        let divisor = validate_divisor(&f, 8, 0).unwrap();
        let report = verify_theorem(&divisor, None).unwrap();
        assert!(!report.formula_holds);
        assert_eq!((report.locus.mu_total, report.locus.tau_total), (11, 10));
        assert_eq!(report.difference, class(&[0, 0, -1]));
        assert_eq!(report.segre_side, class(&[1, 0, -11]));
        assert_eq!(report.chern_side, class(&[1, 0, -10]));
    }

    #[test]
    fn random_cubics_verify_without_internal_inconsistencies() {
        // Random curves either fail validation cleanly or produce a report;
        // the runtime cross-checks (additivity, verdict agreement, CRT
        // consistency, integrality) must never trip.
        use crate::localinv::DivisorError;
        use crate::polyalg::{rat_int, Monomial, MultiPoly};
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(321);
        let mut verified = 0;
        for _ in 0..12 {
            let mut f = MultiPoly::zero(3);
            for _ in 0..4 {
                let mut exps = vec![0u32; 3];
                for _ in 0..3 {
                    exps[rng.gen_range(0..3)] += 1;
                }
                f.add_term(Monomial::new(exps), rat_int(rng.gen_range(-3..=3)));
            }
            if f.is_zero() {
                continue;
            }
            match validate_divisor(&f, 16, 9) {
                Ok(divisor) => {
                    let report = verify_theorem(&divisor, None).unwrap();
                    assert!(report.csm_curve.is_integral());
                    verified += 1;
                }
                Err(DivisorError::NonIsolatedSingularities) => {}
                Err(other) => panic!("unexpected validation failure: {other}"),
            }
        }
        assert!(verified >= 4, "too few random curves validated: {verified}");
    }

    #[test]
    fn verify_theorem_smooth_conic() {
        let f = parse_poly("x^2 - y*z", &["x", "y", "z"]).unwrap();
        let divisor = validate_divisor(&f, 8, 0).unwrap();
        let report = verify_theorem(&divisor, None).unwrap();
        assert!(report.formula_holds);
        assert_eq!(report.csm_complement, class(&[1, 1, 1]));
        assert_eq!(report.chern_logder, class(&[1, 1, 1]));
        assert_eq!((report.euler_curve, report.euler_complement), (2, 1));
    }
}
