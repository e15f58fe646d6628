//! Segre-versus-Chern comparison for global complete intersections in P^n:
//! the identity `[X] - s(Y,X)^v = c(O_Y) cap [X]` holds exactly in
//! codimension 1 and 2 and fails in codimension 3 with a computable
//! mismatch. Only the multidegree matters, so Y is modeled numerically.

use crate::chow::ChowClass;
use crate::polyalg::rat_int;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodimError {
    UnsupportedCodimension { codim: usize },
    InvalidDegrees,
    BadCodimension { codim: usize, ambient: usize },
}

impl fmt::Display for CodimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodimError::UnsupportedCodimension { codim } => write!(
                f,
                "unsupported codimension {codim}: closed forms are implemented for codimension \
                 1, 2, and 3 only"
            ),
            CodimError::InvalidDegrees => write!(f, "all degrees must be at least 1"),
            CodimError::BadCodimension { codim, ambient } => {
                write!(f, "codimension {codim} does not fit in P^{ambient}")
            }
        }
    }
}

impl std::error::Error for CodimError {}

/// A complete intersection of hypersurfaces of the given degrees in P^n;
/// the codimension is the number of degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiData {
    ambient_dim: usize,
    degrees: Vec<u32>,
}

impl CiData {
    pub fn new(ambient_dim: usize, degrees: Vec<u32>) -> Result<Self, CodimError> {
        let codim = degrees.len();
        if codim == 0 || codim > ambient_dim {
            return Err(CodimError::BadCodimension { codim, ambient: ambient_dim });
        }
        if degrees.contains(&0) {
            return Err(CodimError::InvalidDegrees);
        }
        Ok(CiData { ambient_dim, degrees })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

/// `[Y]`, `c(N)` and `c(N^v)` for the normal bundle `N = (+) O(d_i)`.
pub fn ci_fundamental_and_normal(y: &CiData) -> (ChowClass, ChowClass, ChowClass) {
    let n = y.ambient_dim();
    let c = y.codim();
    let product: i64 = y.degrees().iter().map(|&d| d as i64).product();
    let fundamental = ChowClass::h_power(n, c, rat_int(product));
    let mut chern = ChowClass::one(n);
    let mut chern_dual = ChowClass::one(n);
    for &d in y.degrees() {
        let factor = ChowClass::from_ints(n, &[1, d as i64]);
        let factor_dual = ChowClass::from_ints(n, &[1, -(d as i64)]);
        chern = chern.mul(&factor).expect("same ambient");
        chern_dual = chern_dual.mul(&factor_dual).expect("same ambient");
    }
    (fundamental, chern, chern_dual)
}

/// Segre class of the regular embedding: `c(N)^-1 cap [Y]`.
pub fn ci_segre(y: &CiData) -> ChowClass {
    let (fundamental, chern, _) = ci_fundamental_and_normal(y);
    chern
        .inverse()
        .expect("c(N) is a unit")
        .mul(&fundamental)
        .expect("same ambient")
}

/// Riemann-Roch-without-denominators closed form for `c(O_Y) cap [X]`:
/// codimension 2: `[X] - c(N^v)^-1 cap [Y]`;
/// codimension 3: `[X] + c(N^v)^-1 (2 - c_1(N)) (1 - c_1(N))^-1 cap [Y]`.
pub fn rr_structure_sheaf(y: &CiData) -> Result<ChowClass, CodimError> {
    let n = y.ambient_dim();
    let (fundamental, chern, chern_dual) = ci_fundamental_and_normal(y);
    let dual_inv = chern_dual.inverse().expect("c(N^v) is a unit");
    match y.codim() {
        2 => {
            let correction = dual_inv.mul(&fundamental).expect("same ambient");
            Ok(ChowClass::one(n).sub(&correction))
        }
        3 => {
            let c1 = ChowClass::h_power(n, 1, chern.coeff(1).clone());
            let two_minus_c1 = ChowClass::from_ints(n, &[2]).sub(&c1);
            let one_minus_c1_inv = ChowClass::one(n)
                .sub(&c1)
                .inverse()
                .expect("1 - c_1 is a unit");
            let correction = dual_inv
                .mul(&two_minus_c1)
                .expect("same ambient")
                .mul(&one_minus_c1_inv)
                .expect("same ambient")
                .mul(&fundamental)
                .expect("same ambient");
            Ok(ChowClass::one(n).add(&correction))
        }
        codim => Err(CodimError::UnsupportedCodimension { codim }),
    }
}

/// Outcome of the comparison `[X] - s(Y,X)^v` versus `c(O_Y) cap [X]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: ChowClass,
    pub rhs: ChowClass,
    pub holds: bool,
    pub mismatch: ChowClass,
}

/// Evaluate both sides exactly. For a divisor both sides collapse to
/// `[X] / c(O(-D))`; codimension 2 and 3 use the closed forms above.
pub fn identity_check(y: &CiData) -> Result<IdentityCheck, CodimError> {
    let n = y.ambient_dim();
    let lhs = ChowClass::one(n).sub(&ci_segre(y).dual());
    let rhs = match y.codim() {
        1 => {
            let d = y.degrees()[0] as i64;
            ChowClass::from_ints(n, &[1, -d])
                .inverse()
                .expect("1 - dH is a unit")
        }
        2 | 3 => rr_structure_sheaf(y)?,
        codim => return Err(CodimError::UnsupportedCodimension { codim }),
    };
    let holds = lhs == rhs;
    let mismatch = rhs.sub(&lhs);
    Ok(IdentityCheck { lhs, rhs, holds, mismatch })
}

/// The symbolic value of the codimension-3 mismatch predicted by the two
/// closed forms: `c(N^v)^-1 (1 - c_1(N))^-1 cap [Y]`.
pub fn codim3_predicted_mismatch(y: &CiData) -> Result<ChowClass, CodimError> {
    if y.codim() != 3 {
        return Err(CodimError::UnsupportedCodimension { codim: y.codim() });
    }
    let n = y.ambient_dim();
    let (fundamental, chern, chern_dual) = ci_fundamental_and_normal(y);
    let c1 = ChowClass::h_power(n, 1, chern.coeff(1).clone());
    let one_minus_c1_inv = ChowClass::one(n)
        .sub(&c1)
        .inverse()
        .expect("1 - c_1 is a unit");
    Ok(chern_dual
        .inverse()
        .expect("c(N^v) is a unit")
        .mul(&one_minus_c1_inv)
        .expect("same ambient")
        .mul(&fundamental)
        .expect("same ambient"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(n: usize, degrees: &[u32]) -> CiData {
        CiData::new(n, degrees.to_vec()).unwrap()
    }

    #[test]
    fn fundamental_and_normal_examples() {
        let (y, cn, _) = ci_fundamental_and_normal(&ci(2, &[1, 1]));
        assert_eq!(y, ChowClass::from_ints(2, &[0, 0, 1]));
        assert_eq!(cn, ChowClass::from_ints(2, &[1, 2, 1]));

        let (y, cn, _) = ci_fundamental_and_normal(&ci(3, &[1, 1, 1]));
        assert_eq!(y, ChowClass::from_ints(3, &[0, 0, 0, 1]));
        assert_eq!(cn, ChowClass::from_ints(3, &[1, 3, 3, 1]));

        let (y, cn, cnd) = ci_fundamental_and_normal(&ci(2, &[2, 3]));
        assert_eq!(y, ChowClass::from_ints(2, &[0, 0, 6]));
        assert_eq!(cn, ChowClass::from_ints(2, &[1, 5, 6]));
        assert_eq!(cnd, ChowClass::from_ints(2, &[1, -5, 6]));
    }

    #[test]
    fn segre_examples() {
        assert_eq!(ci_segre(&ci(2, &[1, 1])), ChowClass::from_ints(2, &[0, 0, 1]));
        assert_eq!(ci_segre(&ci(2, &[2, 3])), ChowClass::from_ints(2, &[0, 0, 6]));
        // (1 + 2H)^-2 * 4H^2 = 4H^2 - 16H^3 in P^3.
        assert_eq!(ci_segre(&ci(3, &[2, 2])), ChowClass::from_ints(3, &[0, 0, 4, -16]));
    }

    #[test]
    fn rr_structure_sheaf_examples() {
        assert_eq!(
            rr_structure_sheaf(&ci(2, &[1, 1])).unwrap(),
            ChowClass::from_ints(2, &[1, 0, -1])
        );
        assert_eq!(
            rr_structure_sheaf(&ci(2, &[2, 3])).unwrap(),
            ChowClass::from_ints(2, &[1, 0, -6])
        );
        // Codimension 3: the (2 - c1)(1 - c1)^-1 factor contributes 2 at H^3.
        assert_eq!(
            rr_structure_sheaf(&ci(3, &[1, 1, 1])).unwrap(),
            ChowClass::from_ints(3, &[1, 0, 0, 2])
        );
        assert!(matches!(
            rr_structure_sheaf(&ci(3, &[2])),
            Err(CodimError::UnsupportedCodimension { codim: 1 })
        ));
    }

    #[test]
    fn divisor_case_holds_exactly() {
        for n in 2..=4usize {
            for d in 1..=6u32 {
                let check = identity_check(&ci(n, &[d])).unwrap();
                assert!(check.holds, "n={n} d={d}");
                assert!(check.mismatch.is_zero());
                // Both sides are the expanded geometric series of 1/(1-dH).
                let series: Vec<i64> = (0..=n).map(|k| (d as i64).pow(k as u32)).collect();
                assert_eq!(check.lhs, ChowClass::from_ints(n, &series));
            }
        }
    }

    #[test]
    fn codimension_two_sweep_holds_exactly() {
        for n in 2..=4usize {
            for d1 in 1..=4u32 {
                for d2 in 1..=4u32 {
                    let check = identity_check(&ci(n, &[d1, d2])).unwrap();
                    assert!(check.holds, "n={n} degrees=({d1},{d2})");
                    assert!(check.mismatch.is_zero());
                }
            }
        }
    }

    #[test]
    fn codimension_three_fails_with_the_documented_mismatch() {
        let check = identity_check(&ci(3, &[1, 1, 1])).unwrap();
        assert!(!check.holds);
        assert_eq!(check.lhs, ChowClass::from_ints(3, &[1, 0, 0, 1]));
        assert_eq!(check.rhs, ChowClass::from_ints(3, &[1, 0, 0, 2]));
        assert_eq!(check.mismatch, ChowClass::from_ints(3, &[0, 0, 0, 1]));
    }

    #[test]
    fn codimension_three_mismatch_matches_its_closed_form() {
        // rhs - lhs = c(N^v)^-1 (1 - c_1)^-1 [Y], checked for every degree
        // triple <= 3 in P^3 through P^5; in P^3 the truncation collapses it
        // to (d1 d2 d3) H^3, nonzero in every case.
        for n in 3..=5usize {
            for d1 in 1..=3u32 {
                for d2 in 1..=3u32 {
                    for d3 in 1..=3u32 {
                        let y = ci(n, &[d1, d2, d3]);
                        let check = identity_check(&y).unwrap();
                        assert!(!check.holds, "n={n} ({d1},{d2},{d3})");
                        assert_eq!(
                            check.mismatch,
                            codim3_predicted_mismatch(&y).unwrap(),
                            "n={n} ({d1},{d2},{d3})"
                        );
                        if n == 3 {
                            let product = (d1 * d2 * d3) as i64;
                            assert_eq!(
                                check.mismatch,
                                ChowClass::from_ints(3, &[0, 0, 0, product])
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn segre_dual_top_term_carries_codimension_sign() {
        // The codimension-c coefficient of s(Y,X)^v is (-1)^c (prod d_i).
        for (n, degrees) in [(2usize, vec![2u32]), (3, vec![2, 3]), (4, vec![1, 2, 3])] {
            let y = ci(n, &degrees);
            let c = y.codim();
            let product: i64 = degrees.iter().map(|&d| d as i64).product();
            let dual = ci_segre(&y).dual();
            let expected = if c.is_multiple_of(2) { product } else { -product };
            assert_eq!(dual.coeff(c), &crate::polyalg::rat_int(expected));
        }
    }

    #[test]
    fn unsupported_codimensions_are_rejected() {
        // Codimension 4 in a big enough ambient is valid data but has no
        // implemented closed form.
        let y = ci(5, &[1, 1, 1, 1]);
        assert!(matches!(
            identity_check(&y),
            Err(CodimError::UnsupportedCodimension { codim: 4 })
        ));
        // Codimension larger than the ambient dimension is invalid data.
        assert!(matches!(
            CiData::new(3, vec![1, 1, 1, 1]),
            Err(CodimError::BadCodimension { codim: 4, ambient: 3 })
        ));
        assert!(matches!(
            CiData::new(2, vec![0]),
            Err(CodimError::InvalidDegrees)
        ));
    }
}
