//! Exact arithmetic in the rational Chow ring of projective space,
//! Q[H]/(H^(n+1)), graded by codimension, together with the dual and
//! divisor-tensor operations and the standard structural classes.

use crate::polyalg::{rat_int, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChowError {
    DimensionMismatch { left: usize, right: usize },
    NonUnit,
}

impl fmt::Display for ChowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChowError::DimensionMismatch { left, right } => {
                write!(f, "ambient dimension mismatch: {left} vs {right}")
            }
            ChowError::NonUnit => write!(f, "class has no inverse (codimension-0 part is zero)"),
        }
    }
}

impl std::error::Error for ChowError {}

/// Element of the Chow group of P^n with rational coefficients, written
/// `a_0 + a_1 H + ... + a_n H^n` and indexed by codimension. Products
/// truncate beyond `H^n` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ambient_dim: usize,
    coeffs: Vec<Rat>,
}

impl ChowClass {
    pub fn zero(ambient_dim: usize) -> Self {
        ChowClass { ambient_dim, coeffs: vec![Rat::zero(); ambient_dim + 1] }
    }

    /// The fundamental class `[X] = 1`.
    pub fn one(ambient_dim: usize) -> Self {
        let mut c = Self::zero(ambient_dim);
        c.coeffs[0] = Rat::one();
        c
    }

    /// `coeff * H^codim`.
    pub fn h_power(ambient_dim: usize, codim: usize, coeff: Rat) -> Self {
        assert!(codim <= ambient_dim);
        let mut c = Self::zero(ambient_dim);
        c.coeffs[codim] = coeff;
        c
    }

    /// Build from codimension-indexed coefficients (truncating past H^n).
    pub fn from_coeffs(ambient_dim: usize, coeffs: Vec<Rat>) -> Self {
        let mut cs = coeffs;
        cs.resize(ambient_dim + 1, Rat::zero());
        ChowClass { ambient_dim, coeffs: cs }
    }

    pub fn from_ints(ambient_dim: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(ambient_dim, coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn coeff(&self, codim: usize) -> &Rat {
        &self.coeffs[codim]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        ChowClass {
            ambient_dim: self.ambient_dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ChowClass) -> ChowClass {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        ChowClass {
            ambient_dim: self.ambient_dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> ChowClass {
        ChowClass {
            ambient_dim: self.ambient_dim,
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> ChowClass {
        ChowClass {
            ambient_dim: self.ambient_dim,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// Ring product, truncated at `H^n`.
    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ChowError::DimensionMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        let n = self.ambient_dim;
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Ok(ChowClass { ambient_dim: n, coeffs })
    }

    /// Multiplicative inverse of a unit, by geometric-series expansion.
    pub fn inverse(&self) -> Result<ChowClass, ChowError> {
        if self.coeffs[0].is_zero() {
            return Err(ChowError::NonUnit);
        }
        let n = self.ambient_dim;
        let mut inv = vec![Rat::zero(); n + 1];
        inv[0] = Rat::one() / &self.coeffs[0];
        for k in 1..=n {
            // a_0 inv_k = -(a_1 inv_{k-1} + ... + a_k inv_0)
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv[k] = -acc / &self.coeffs[0];
        }
        Ok(ChowClass { ambient_dim: n, coeffs: inv })
    }

    /// Aluffi's dual: the codimension-i part changes sign by (-1)^i.
    pub fn dual(&self) -> ChowClass {
        ChowClass {
            ambient_dim: self.ambient_dim,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a.clone() } else { a.clone() })
                .collect(),
        }
    }

    /// Aluffi's tensor by a divisor: the codimension-i part is divided by
    /// `c(O(D))^i`.
    pub fn tensor_by_divisor(&self, d: &DivisorClass) -> ChowClass {
        let n = self.ambient_dim;
        let cd = d.total_chern(n);
        let cd_inv = cd.inverse().expect("1 + dH is a unit");
        let mut acc = ChowClass::zero(n);
        let mut inv_power = ChowClass::one(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                inv_power = inv_power.mul(&cd_inv).expect("same ambient");
            }
            if a.is_zero() {
                continue;
            }
            let piece = ChowClass::h_power(n, i, a.clone());
            acc = acc.add(&piece.mul(&inv_power).expect("same ambient"));
        }
        acc
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let abs = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}H", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}H^{}", if show_coeff { "*" } else { "" }, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The first Chern class `d*H` of a line bundle O(D) on P^n, recorded by
/// its rational degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    degree: Rat,
}

impl DivisorClass {
    pub fn new(degree: Rat) -> Self {
        DivisorClass { degree }
    }

    pub fn of_degree(degree: i64) -> Self {
        DivisorClass { degree: rat_int(degree) }
    }

    pub fn degree(&self) -> &Rat {
        &self.degree
    }

    /// `c(O(D)) = 1 + dH` in P^n.
    pub fn total_chern(&self, ambient_dim: usize) -> ChowClass {
        let mut c = ChowClass::one(ambient_dim);
        if ambient_dim >= 1 {
            c.coeffs[1] = self.degree.clone();
        }
        c
    }
}

impl std::ops::Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, other: Self) -> DivisorClass {
        DivisorClass { degree: &self.degree + &other.degree }
    }
}

/// Segre class of an effective divisor of degree `d` in P^n:
/// `dH / (1 + dH)`, truncated.
pub fn segre_of_divisor(degree: u32, ambient_dim: usize) -> ChowClass {
    assert!(degree >= 1);
    let n = ambient_dim;
    let d = DivisorClass::of_degree(degree as i64);
    let class_d = ChowClass::h_power(n, 1, rat_int(degree as i64));
    class_d
        .mul(&d.total_chern(n).inverse().expect("unit"))
        .expect("same ambient")
}

/// Total Chern class of the tangent bundle of P^n: `(1 + H)^(n+1)`.
pub fn tangent_chern(ambient_dim: usize) -> ChowClass {
    assert!(ambient_dim >= 1);
    let one_plus_h = ChowClass::from_ints(ambient_dim, &[1, 1]);
    let mut acc = ChowClass::one(ambient_dim);
    for _ in 0..=ambient_dim {
        acc = acc.mul(&one_plus_h).expect("same ambient");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_class(rng: &mut ChaCha8Rng, n: usize) -> ChowClass {
        ChowClass::from_coeffs(
            n,
            (0..=n)
                .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
                .collect(),
        )
    }

    fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> ChowClass {
        let mut c = random_class(rng, n);
        loop {
            if !c.coeff(0).is_zero() {
                return c;
            }
            c = random_class(rng, n);
        }
    }

    #[test]
    fn product_examples() {
        let one_plus_h = ChowClass::from_ints(2, &[1, 1]);
        let one_minus_h = ChowClass::from_ints(2, &[1, -1]);
        assert_eq!(
            one_plus_h.mul(&one_minus_h).unwrap(),
            ChowClass::from_ints(2, &[1, 0, -1])
        );

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_class(&mut rng, 3);
        assert_eq!(a.mul(&ChowClass::one(3)).unwrap(), a);

        let cube = one_plus_h.mul(&one_plus_h).unwrap().mul(&one_plus_h).unwrap();
        assert_eq!(cube, ChowClass::from_ints(2, &[1, 3, 3]));
    }

    #[test]
    fn product_rejects_mixed_ambients() {
        let a = ChowClass::one(2);
        let b = ChowClass::one(3);
        assert_eq!(a.mul(&b), Err(ChowError::DimensionMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn inverse_examples() {
        for d in 1..=5i64 {
            let c = ChowClass::from_ints(2, &[1, d]);
            assert_eq!(c.inverse().unwrap(), ChowClass::from_ints(2, &[1, -d, d * d]));
        }
        assert_eq!(ChowClass::one(2).inverse().unwrap(), ChowClass::one(2));

        let cube = ChowClass::from_ints(2, &[1, 3, 3]);
        assert_eq!(cube.inverse().unwrap().mul(&cube).unwrap(), ChowClass::one(2));

        assert_eq!(ChowClass::h_power(2, 1, rat_int(1)).inverse(), Err(ChowError::NonUnit));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(
            ChowClass::from_ints(2, &[1, 3, 3]).dual(),
            ChowClass::from_ints(2, &[1, -3, 3])
        );
        let point = ChowClass::h_power(2, 2, rat_int(1));
        assert_eq!(point.dual(), point);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random_class(&mut rng, 3);
            assert_eq!(a.dual().dual(), a);
        }
    }

    #[test]
    fn tensor_examples() {
        let d = DivisorClass::of_degree(4);
        let h = ChowClass::h_power(2, 1, rat_int(1));
        assert_eq!(h.tensor_by_divisor(&d), ChowClass::from_ints(2, &[0, 1, -4]));

        let h2 = ChowClass::h_power(2, 2, rat_int(1));
        assert_eq!(h2.tensor_by_divisor(&d), h2);

        let zero_divisor = DivisorClass::of_degree(0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_class(&mut rng, 3);
            assert_eq!(a.tensor_by_divisor(&zero_divisor), a);
        }
    }

    #[test]
    fn tensor_is_associative_over_divisor_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..120 {
            let n = rng.gen_range(2..=4usize);
            let a = random_class(&mut rng, n);
            let d1 = DivisorClass::new(rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)));
            let d2 = DivisorClass::new(rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)));
            let lhs = a.tensor_by_divisor(&d1).tensor_by_divisor(&d2);
            let rhs = a.tensor_by_divisor(&(&d1 + &d2));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..120 {
            let n = rng.gen_range(2..=4usize);
            let a = random_class(&mut rng, n);
            let b = random_class(&mut rng, n);
            assert_eq!(
                a.mul(&b).unwrap().dual(),
                a.dual().mul(&b.dual()).unwrap()
            );
        }
    }

    #[test]
    fn inverse_is_an_involution_on_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..120 {
            let n = rng.gen_range(2..=4usize);
            let a = random_unit(&mut rng, n);
            assert_eq!(a.inverse().unwrap().inverse().unwrap(), a);
            assert_eq!(a.inverse().unwrap().mul(&a).unwrap(), ChowClass::one(n));
        }
    }

    #[test]
    fn segre_of_divisor_examples() {
        assert_eq!(segre_of_divisor(3, 2), ChowClass::from_ints(2, &[0, 3, -9]));
        assert_eq!(segre_of_divisor(1, 2), ChowClass::from_ints(2, &[0, 1, -1]));
        assert_eq!(segre_of_divisor(5, 2), ChowClass::from_ints(2, &[0, 5, -25]));
    }

    #[test]
    fn segre_dual_matches_negative_divisor_form() {
        // s(D, X)^v = -dH / (1 - dH): the divisor case of the comparison
        // identity, where both sides reduce to [X] / c(O(-D)).
        for n in 2..=4usize {
            for d in 1..=6i64 {
                let segre = segre_of_divisor(d as u32, n);
                let neg = ChowClass::h_power(n, 1, rat_int(-d));
                let expected = neg
                    .mul(&ChowClass::from_ints(n, &[1, -d]).inverse().unwrap())
                    .unwrap();
                assert_eq!(segre.dual(), expected);
            }
        }
    }

    #[test]
    fn tangent_chern_examples() {
        assert_eq!(tangent_chern(2), ChowClass::from_ints(2, &[1, 3, 3]));
        assert_eq!(tangent_chern(1), ChowClass::from_ints(1, &[1, 2]));
        assert_eq!(tangent_chern(3), ChowClass::from_ints(3, &[1, 4, 6, 4]));
    }

    #[test]
    fn display_round_trip_flavor() {
        assert_eq!(ChowClass::from_ints(2, &[1, 0, 2]).to_string(), "1 + 2*H^2");
        assert_eq!(ChowClass::from_ints(2, &[0, -1, 0]).to_string(), "-H");
        assert_eq!(ChowClass::zero(2).to_string(), "0");
    }
}
