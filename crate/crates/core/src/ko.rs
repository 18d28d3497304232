//! The reduced KO group of a compact surface, modeled as triples
//! (virtual rank, w1, w2) with the twisted addition induced by
//! Whitney-sum multiplicativity of total Stiefel-Whitney classes.
//!
//! Only the invariants are modeled; no actual bundles appear. The
//! theta-characteristic data enters through [`ThetaModel`]: a quadratic
//! refinement of the intersection form together with the value of the
//! mod-2 index on the unit class.

use crate::error::{Error, Result};
use crate::f2::{F2BilinearForm, F2QuadraticForm, F2Vector};

/// H^1 of a genus-g surface with Z2 coefficients, carrying the
/// standard symplectic intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceH1 {
    genus: usize,
    intersection: F2BilinearForm,
}

/// A class in KO of the surface: (rank, w1, w2). The rank is virtual
/// and may be negative; every triple is a valid class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KOClass {
    pub rank: i64,
    pub w1: F2Vector,
    pub w2: bool,
}

impl SurfaceH1 {
    pub fn new(genus: usize) -> Result<SurfaceH1> {
        if genus < 2 {
            return Err(Error::range(format!("surface genus must be >= 2, got {genus}")));
        }
        if 2 * genus > crate::f2::MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim: 2 * genus,
                max: crate::f2::MAX_DIM,
            });
        }
        Ok(SurfaceH1 {
            genus,
            intersection: F2BilinearForm::standard_symplectic(genus),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Dimension of H^1, equal to 2g.
    pub fn h1_dim(&self) -> usize {
        2 * self.genus
    }

    pub fn intersection(&self) -> &F2BilinearForm {
        &self.intersection
    }

    fn check_dim(&self, v: &F2Vector) -> Result<()> {
        if v.dim() != self.h1_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.h1_dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// The additive zero class.
    pub fn zero_class(&self) -> KOClass {
        KOClass {
            rank: 0,
            w1: F2Vector::zero(self.h1_dim()),
            w2: false,
        }
    }

    /// The unit class, the trivial line bundle.
    pub fn unit(&self) -> KOClass {
        KOClass {
            rank: 1,
            w1: F2Vector::zero(self.h1_dim()),
            w2: false,
        }
    }

    /// Omega, the reduced class of a point bundle pair: (0, 0, 1).
    pub fn omega(&self) -> KOClass {
        KOClass {
            rank: 0,
            w1: F2Vector::zero(self.h1_dim()),
            w2: true,
        }
    }

    /// The class of the order-2 line bundle with first Stiefel-Whitney
    /// class x: (1, x, 0).
    pub fn alpha(&self, x: &F2Vector) -> Result<KOClass> {
        self.check_dim(x)?;
        Ok(KOClass {
            rank: 1,
            w1: *x,
            w2: false,
        })
    }

    /// Twisted addition: w2 picks up the intersection pairing of the
    /// two w1 classes.
    pub fn add(&self, a: &KOClass, b: &KOClass) -> Result<KOClass> {
        self.check_dim(&a.w1)?;
        self.check_dim(&b.w1)?;
        Ok(KOClass {
            rank: a.rank + b.rank,
            w1: a.w1 + b.w1,
            w2: a.w2 ^ b.w2 ^ self.intersection.pair(&a.w1, &b.w1),
        })
    }

    /// Group inverse: (-rank, w1, w2). Since the pairing is alternating,
    /// c + (-c) = 0.
    pub fn negate(&self, c: &KOClass) -> KOClass {
        KOClass {
            rank: -c.rank,
            w1: c.w1,
            w2: c.w2,
        }
    }

    /// The class of a rank-n bundle with the given characteristic
    /// classes; equals the expansion (n-1) * unit + alpha(w1) + w2 * Omega.
    pub fn class_of_bundle(&self, n: i64, w1: &F2Vector, w2: bool) -> Result<KOClass> {
        if n < 1 {
            return Err(Error::range(format!("bundle rank must be >= 1, got {n}")));
        }
        self.check_dim(w1)?;
        Ok(KOClass { rank: n, w1: *w1, w2 })
    }
}

/// A theta characteristic modeled by its quadratic refinement of the
/// intersection form and the value phi(1) of the mod-2 index on the
/// unit class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaModel {
    q: F2QuadraticForm,
    phi_of_1: bool,
}

impl ThetaModel {
    /// The even theta characteristic: Arf 0 refinement, phi(1) = 0.
    pub fn even(surface: &SurfaceH1) -> ThetaModel {
        ThetaModel {
            q: F2QuadraticForm::hyperbolic(surface.genus()),
            phi_of_1: false,
        }
    }

    /// An odd theta characteristic (Arf 1), for negative tests.
    pub fn odd(surface: &SurfaceH1) -> ThetaModel {
        ThetaModel {
            q: F2QuadraticForm::canonical(surface.genus(), true),
            phi_of_1: true,
        }
    }

    /// Builds a model from an arbitrary refinement of the surface
    /// intersection form.
    pub fn new(surface: &SurfaceH1, q: F2QuadraticForm, phi_of_1: bool) -> Result<ThetaModel> {
        if q.form() != surface.intersection() {
            return Err(Error::NotARefinement);
        }
        Ok(ThetaModel { q, phi_of_1 })
    }

    /// Builds a model without checking that q refines the intersection
    /// form. Used to exhibit failures of phi additivity.
    pub fn new_unchecked(q: F2QuadraticForm, phi_of_1: bool) -> ThetaModel {
        ThetaModel { q, phi_of_1 }
    }

    pub fn refinement(&self) -> &F2QuadraticForm {
        &self.q
    }

    pub fn phi_of_1(&self) -> bool {
        self.phi_of_1
    }

    /// The mod-2 index homomorphism:
    /// phi(c) = rank * phi(1) + q(w1) + w2.
    pub fn phi(&self, c: &KOClass) -> Result<bool> {
        let rank_odd = c.rank.rem_euclid(2) == 1;
        Ok((rank_odd & self.phi_of_1) ^ self.q.evaluate(&c.w1)? ^ c.w2)
    }

    /// w2 of a direct-image bundle from the two mod-2 indices:
    /// w2 = phi_S(1) + phi_Sigma(alpha(w1)).
    pub fn w2_from_indices(&self, phi_s_1: bool, w1: &F2Vector) -> Result<bool> {
        Ok(phi_s_1 ^ self.q.evaluate(w1)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn surface() -> SurfaceH1 {
        SurfaceH1::new(2).unwrap()
    }

    #[test]
    fn genus_guard() {
        assert!(SurfaceH1::new(1).is_err());
        assert!(SurfaceH1::new(2).is_ok());
    }

    #[test]
    fn add_realizes_alpha_rule() {
        // alpha(x) + alpha(y) = (2, x+y, <x,y>), matching
        // alpha(x+y) = alpha(x) + alpha(y) - 1 + <x,y> Omega.
        let s = surface();
        let x = F2Vector::basis(4, 0);
        let y = F2Vector::basis(4, 1); // <x,y> = 1
        let sum = s.add(&s.alpha(&x).unwrap(), &s.alpha(&y).unwrap()).unwrap();
        assert_eq!(sum.rank, 2);
        assert_eq!(sum.w1, x + y);
        assert!(sum.w2);

        // Expand the right side: alpha(x+y) + 1 + <x,y> Omega.
        let mut rhs = s.alpha(&(x + y)).unwrap();
        rhs = s.add(&rhs, &s.unit()).unwrap();
        rhs = s.add(&rhs, &s.omega()).unwrap();
        assert_eq!(sum, rhs);
    }

    #[test]
    fn add_identity_and_self_pairing() {
        let s = surface();
        let x = F2Vector::from_bits(4, 0b1011);
        let a = s.alpha(&x).unwrap();
        assert_eq!(s.add(&a, &s.zero_class()).unwrap(), a);
        // <x,x> = 0 for the alternating pairing.
        let double = s.add(&a, &a).unwrap();
        assert_eq!(double.rank, 2);
        assert!(double.w1.is_zero());
        assert!(!double.w2);
    }

    #[test]
    fn negate_examples() {
        let s = surface();
        assert_eq!(s.negate(&s.omega()), s.omega());
        let x = F2Vector::basis(4, 2);
        let a = s.alpha(&x).unwrap();
        let n = s.negate(&a);
        assert_eq!((n.rank, n.w1, n.w2), (-1, x, false));
        let c = KOClass { rank: 3, w1: x, w2: true };
        assert_eq!(s.negate(&c).rank, -3);
        // c + (-c) = 0 using <w1,w1> = 0.
        assert_eq!(s.add(&c, &s.negate(&c)).unwrap(), s.zero_class());
    }

    #[test]
    fn alpha_of_zero_is_unit() {
        let s = surface();
        let a = s.alpha(&F2Vector::zero(4)).unwrap();
        assert_eq!(a, s.unit());
        assert!(!a.w2);
        assert!(s.alpha(&F2Vector::zero(6)).is_err());
    }

    #[test]
    fn omega_examples() {
        let s = surface();
        let o = s.omega();
        assert!(o.w1.is_zero());
        assert!(o.w2);
        assert_eq!(s.add(&o, &o).unwrap(), s.zero_class());
        let theta = ThetaModel::even(&s);
        assert!(theta.phi(&o).unwrap());
    }

    #[test]
    fn class_of_bundle_matches_expansion() {
        let s = surface();
        assert_eq!(
            s.class_of_bundle(1, &F2Vector::zero(4), false).unwrap(),
            s.unit()
        );
        let c = s.class_of_bundle(2, &F2Vector::zero(4), true).unwrap();
        assert_eq!((c.rank, c.w2), (2, true));

        for bits in 0..16u64 {
            for w2 in [false, true] {
                for n in 1..5i64 {
                    let w1 = F2Vector::from_bits(4, bits);
                    let direct = s.class_of_bundle(n, &w1, w2).unwrap();
                    let mut expanded = s.alpha(&w1).unwrap();
                    for _ in 0..(n - 1) {
                        expanded = s.add(&expanded, &s.unit()).unwrap();
                    }
                    if w2 {
                        expanded = s.add(&expanded, &s.omega()).unwrap();
                    }
                    assert_eq!(direct, expanded);
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let s = surface();
        let theta = ThetaModel::even(&s);
        assert!(theta.phi(&s.omega()).unwrap());
        assert!(!theta.phi(&s.unit()).unwrap());
        for bits in 0..16u64 {
            let x = F2Vector::from_bits(4, bits);
            let a = s.alpha(&x).unwrap();
            assert_eq!(
                theta.phi(&a).unwrap(),
                theta.refinement().evaluate(&x).unwrap()
            );
        }
    }

    #[test]
    fn phi_is_additive_for_refinements() {
        let s = surface();
        let theta = ThetaModel::even(&s);
        for b1 in 0..16u64 {
            for b2 in 0..16u64 {
                let c1 = KOClass {
                    rank: (b1 % 3) as i64,
                    w1: F2Vector::from_bits(4, b1),
                    w2: b1 & 16 != 0,
                };
                let c2 = KOClass {
                    rank: (b2 % 5) as i64 - 2,
                    w1: F2Vector::from_bits(4, b2),
                    w2: b2 & 16 != 0,
                };
                let sum = s.add(&c1, &c2).unwrap();
                assert_eq!(
                    theta.phi(&sum).unwrap(),
                    theta.phi(&c1).unwrap() ^ theta.phi(&c2).unwrap()
                );
            }
        }
    }

    #[test]
    fn phi_additivity_fails_for_non_refinement() {
        let s = surface();
        // Zero bilinear form with a nonzero value: not a refinement of
        // the intersection form.
        let broken = ThetaModel::new_unchecked(
            crate::f2::F2QuadraticForm::from_bits(0b1, crate::f2::F2BilinearForm::zero(4)),
            false,
        );
        assert!(ThetaModel::new(
            &s,
            crate::f2::F2QuadraticForm::from_bits(0b1, crate::f2::F2BilinearForm::zero(4)),
            false
        )
        .is_err());
        let mut failed = false;
        for b1 in 0..16u64 {
            for b2 in 0..16u64 {
                let c1 = s.alpha(&F2Vector::from_bits(4, b1)).unwrap();
                let c2 = s.alpha(&F2Vector::from_bits(4, b2)).unwrap();
                let sum = s.add(&c1, &c2).unwrap();
                if broken.phi(&sum).unwrap()
                    != broken.phi(&c1).unwrap() ^ broken.phi(&c2).unwrap()
                {
                    failed = true;
                }
            }
        }
        assert!(failed, "broken model should violate additivity somewhere");
    }

    #[test]
    fn default_theta_zero_count() {
        for g in 2..=6usize {
            let s = SurfaceH1::new(g).unwrap();
            let theta = ThetaModel::even(&s);
            assert_eq!(theta.refinement().arf(), Ok(false));
            let expected =
                (BigInt::one() << (g - 1)) * ((BigInt::one() << g) + BigInt::one());
            assert_eq!(theta.refinement().count_zeros(), expected);
        }
        let s = surface();
        assert_eq!(ThetaModel::odd(&s).refinement().arf(), Ok(true));
    }

    #[test]
    fn w2_from_indices_examples() {
        let s = surface();
        let theta = ThetaModel::even(&s);
        let zero = F2Vector::zero(4);
        assert!(!theta.w2_from_indices(false, &zero).unwrap());
        assert!(theta.w2_from_indices(true, &zero).unwrap());
        // phi_S(1) = 1 and q(w1) = 1 cancel.
        let x = F2Vector::from_bits(4, 0b11); // q(e0 + e1) = B(e0,e1) = 1
        assert!(theta.refinement().evaluate(&x).unwrap());
        assert!(!theta.w2_from_indices(true, &x).unwrap());
    }
}
