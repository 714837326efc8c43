//! Standard-form cocycles of dualisable dynamical triples and their duality.
//!
//! A class is stored as (χ, c, m, w): the 2-cocycle ψ(a,b,z) = c(a,b) + ⟨m(a,b), z⟩
//! on the torus side together with the frequency vector w of the linear
//! cocycle φ(a,g,z) = ⟨w(a), g⟩. The G-part ω is identically 1 — only
//! vanishing Mackey obstruction is represented in calculus form.

use thiserror::Error;

use crate::cohomology::{
    delta1_const, delta1_int, delta2_const, delta2_int, solve_const_coboundary2,
};
use crate::group::{Table2, TorusHom};
use crate::rational::{pair, pair_lift, section_lift, QVec, QmodZ, QmodZVec, ZVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("cocycles have different homomorphisms or groups")]
    HomMismatch,
    #[error("rank mismatch")]
    RankMismatch,
    #[error("table shapes do not match the group and rank")]
    BadShape,
    #[error("data not normalized ({what})")]
    NotNormalized { what: &'static str },
    #[error("character cocycle condition fails at ({a},{b},{c})")]
    CharacterCocycle { a: usize, b: usize, c: usize },
    #[error("constant cocycle condition fails at ({a},{b},{c})")]
    ConstantCocycle { a: usize, b: usize, c: usize },
    #[error("frequency compatibility fails at ({a},{b})")]
    Compatibility { a: usize, b: usize },
    #[error("matrix is not antisymmetric at ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },
}

/// Standard form of a dualisable dynamical-triple class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DynCocycle {
    hom: TorusHom,
    c: Table2<QmodZ>,
    m: Table2<ZVec>,
    w: Vec<QVec>,
}

impl DynCocycle {
    /// Assemble with shape checks; validity is checked by [`validate_dyn`].
    pub fn new(
        hom: TorusHom,
        c: Table2<QmodZ>,
        m: Table2<ZVec>,
        w: Vec<QVec>,
    ) -> Result<Self, DualityError> {
        let g = hom.group().size();
        let n = hom.rank();
        if c.size() != g || m.size() != g || w.len() != g {
            return Err(DualityError::BadShape);
        }
        if m.pairs().any(|(_, _, v)| v.len() != n) || w.iter().any(|v| v.len() != n) {
            return Err(DualityError::BadShape);
        }
        Ok(DynCocycle { hom, c, m, w })
    }

    pub fn zero(hom: TorusHom) -> Self {
        let g = hom.group().size();
        let n = hom.rank();
        DynCocycle {
            hom,
            c: Table2::filled(g, QmodZ::zero()),
            m: Table2::filled(g, ZVec::zeros(n)),
            w: vec![QVec::zeros(n); g],
        }
    }

    pub fn hom(&self) -> &TorusHom {
        &self.hom
    }

    pub fn c(&self) -> &Table2<QmodZ> {
        &self.c
    }

    pub fn m(&self) -> &Table2<ZVec> {
        &self.m
    }

    pub fn w(&self) -> &[QVec] {
        &self.w
    }

    /// Modify by the coboundary of the 1-cochain ν(a,z) = k(a) + ⟨t(a), z⟩:
    /// c ↦ c + δk + ⟨t(b), χ(a)⟩, m ↦ m + δt, w ↦ w + t.
    pub fn apply_coboundary(&self, k: &[QmodZ], t: &[ZVec]) -> DynCocycle {
        let group = self.hom.group();
        let g = group.size();
        assert_eq!(k.len(), g);
        assert_eq!(t.len(), g);
        let c = Table2::from_fn(g, |a, b| {
            *self.c.get(a, b)
                + delta1_const(group, k, a, b)
                + pair(&t[b], self.hom.image(a)).expect("rank checked")
        });
        let m = Table2::from_fn(g, |a, b| self.m.get(a, b) + &delta1_int(group, t, a, b));
        let w = self
            .w
            .iter()
            .zip(t)
            .map(|(wa, ta)| wa + &ta.to_qvec())
            .collect();
        DynCocycle {
            hom: self.hom.clone(),
            c,
            m,
            w,
        }
    }
}

/// Check the validity conditions; `Err` carries the first failure.
///
/// (A) the character part is a 2-cocycle, (B) the constant part satisfies
/// the twisted cocycle identity, (C) δw = m exactly in ℚⁿ, and all data
/// is normalized.
pub fn validate_dyn(d: &DynCocycle) -> Result<(), DualityError> {
    let group = d.hom.group();
    let g = group.size();
    for a in 0..g {
        if !d.c.get(a, 0).is_zero() || !d.c.get(0, a).is_zero() {
            return Err(DualityError::NotNormalized {
                what: "constant part at identity",
            });
        }
        if !d.m.get(a, 0).is_zero() || !d.m.get(0, a).is_zero() {
            return Err(DualityError::NotNormalized {
                what: "character part at identity",
            });
        }
    }
    if d.w[0] != QVec::zeros(d.hom.rank()) {
        return Err(DualityError::NotNormalized {
            what: "frequency at identity",
        });
    }
    for a in 0..g {
        for b in 0..g {
            for c in 0..g {
                if !delta2_int(group, &d.m, a, b, c).is_zero() {
                    return Err(DualityError::CharacterCocycle { a, b, c });
                }
                let residue = delta2_const(group, &d.c, a, b, c)
                    + pair(d.m.get(b, c), d.hom.image(a)).expect("rank checked");
                if !residue.is_zero() {
                    return Err(DualityError::ConstantCocycle { a, b, c });
                }
            }
        }
    }
    for a in 0..g {
        for b in 0..g {
            let ba = group.mul(b, a);
            let combo = &(&d.w[b] - &d.w[ba]) + &d.w[a];
            if combo != d.m.get(a, b).to_qvec() {
                return Err(DualityError::Compatibility { a, b });
            }
        }
    }
    Ok(())
}

/// The dual homomorphism χ̂(a) = −w(a) mod 1, read off from φ on the lattice.
pub fn dual_hom(d: &DynCocycle) -> TorusHom {
    let group = d.hom.group().clone();
    let images: Vec<QmodZVec> = d.w.iter().map(|wa| (-wa).reduce()).collect();
    TorusHom::new(group, d.hom.rank(), images, d.hom.side().flipped())
        .expect("dual images form a homomorphism for valid input")
}

/// The duality map on standard-form cocycles.
///
/// With e(a,b) = σ(χ(ba)) − σ(χ(a)) − σ(χ(b)) ∈ ℤⁿ:
/// ĉ(a,b) = c(a,b) − ⟨w(b), σ(χ(a))⟩ + ⟨e(a,b), χ̂(ba)⟩, m̂ = e,
/// ŵ(a) = −σ(χ(a)), and the homomorphism becomes χ̂ on the other side.
pub fn dualize(d: &DynCocycle) -> DynCocycle {
    let group = d.hom.group();
    let g = group.size();
    let chihat = dual_hom(d);
    let e = Table2::from_fn(g, |a, b| {
        let ba = group.mul(b, a);
        let combo = &(&section_lift(d.hom.image(ba)) - &section_lift(d.hom.image(a)))
            - &section_lift(d.hom.image(b));
        combo.to_zvec().expect("section defect is integral")
    });
    let chat = Table2::from_fn(g, |a, b| {
        let ba = group.mul(b, a);
        *d.c.get(a, b) - pair_lift(&d.w[b], &section_lift(d.hom.image(a))).expect("rank checked")
            + pair(e.get(a, b), chihat.image(ba)).expect("rank checked")
    });
    let what: Vec<QVec> = (0..g).map(|a| -&section_lift(d.hom.image(a))).collect();
    DynCocycle {
        hom: chihat,
        c: chat,
        m: e,
        w: what,
    }
}

/// Coboundary witness relating two cocycles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DynWitness {
    pub k: Vec<QmodZ>,
    pub t: Vec<ZVec>,
}

/// Decide whether two valid cocycles with the same χ are cohomologous.
///
/// The character shift t is forced to be w₂ − w₁ (must be integral), the
/// character parts must then differ by δt, and the residual constant
/// 2-cocycle is handed to the coboundary solver.
pub fn is_cohomologous_dyn(
    d1: &DynCocycle,
    d2: &DynCocycle,
) -> Result<Option<DynWitness>, DualityError> {
    if d1.hom != d2.hom {
        return Err(DualityError::HomMismatch);
    }
    let group = d1.hom.group();
    let g = group.size();
    let mut t = Vec::with_capacity(g);
    for a in 0..g {
        match (&d2.w[a] - &d1.w[a]).to_zvec() {
            Some(ta) => t.push(ta),
            None => return Ok(None),
        }
    }
    for a in 0..g {
        for b in 0..g {
            let want = d2.m.get(a, b) - d1.m.get(a, b);
            if delta1_int(group, &t, a, b) != want {
                return Ok(None);
            }
        }
    }
    let residual = Table2::from_fn(g, |a, b| {
        *d2.c.get(a, b) - *d1.c.get(a, b) - pair(&t[b], d1.hom.image(a)).expect("rank checked")
    });
    match solve_const_coboundary2(group, &residual) {
        Some(k) => {
            debug_assert_eq!(&d1.apply_coboundary(&k, &t), d2);
            Ok(Some(DynWitness { k, t }))
        }
        None => Ok(None),
    }
}

/// Componentwise sum; the abelian group structure for fixed χ.
pub fn tensor(d1: &DynCocycle, d2: &DynCocycle) -> Result<DynCocycle, DualityError> {
    if d1.hom != d2.hom {
        return Err(DualityError::HomMismatch);
    }
    let g = d1.hom.group().size();
    Ok(DynCocycle {
        hom: d1.hom.clone(),
        c: Table2::from_fn(g, |a, b| *d1.c.get(a, b) + *d2.c.get(a, b)),
        m: Table2::from_fn(g, |a, b| d1.m.get(a, b) + d2.m.get(a, b)),
        w: d1.w.iter().zip(&d2.w).map(|(x, y)| x + y).collect(),
    })
}

/// Componentwise negation; the group inverse for fixed χ.
pub fn conjugate(d: &DynCocycle) -> DynCocycle {
    let g = d.hom.group().size();
    DynCocycle {
        hom: d.hom.clone(),
        c: d.c.map(|x| -*x),
        m: Table2::from_fn(g, |a, b| -d.m.get(a, b)),
        w: d.w.iter().map(|x| -x).collect(),
    }
}

/// The Mackey obstruction class in H²(ℤⁿ, U(1)), encoded by an
/// antisymmetric bicharacter matrix over ℚ/ℤ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MackeyObstruction {
    n: usize,
    theta: Vec<QmodZ>,
}

impl MackeyObstruction {
    /// Validate antisymmetry mod 1 and a zero diagonal.
    pub fn new(n: usize, theta: Vec<QmodZ>) -> Result<Self, DualityError> {
        if theta.len() != n * n {
            return Err(DualityError::BadShape);
        }
        for i in 0..n {
            for j in 0..n {
                if theta[i * n + j] + theta[j * n + i] != QmodZ::zero() {
                    return Err(DualityError::NotAntisymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            if !theta[i * n + i].is_zero() {
                return Err(DualityError::NotAntisymmetric { i, j: i });
            }
        }
        Ok(MackeyObstruction { n, theta })
    }

    /// Build from arbitrary rationals, reducing entries mod 1 first.
    pub fn from_rationals(
        n: usize,
        entries: Vec<crate::rational::Rat>,
    ) -> Result<Self, DualityError> {
        Self::new(
            n,
            entries
                .into_iter()
                .map(crate::rational::reduce_mod1)
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> QmodZ {
        self.theta[i * self.n + j]
    }
}

/// A dynamical triple is dualisable iff its Mackey obstruction vanishes.
pub fn mackey_vanishes(theta: &MackeyObstruction) -> bool {
    theta.theta.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{product_cyclic, Side};
    use crate::rational::Rat;

    fn qv(entries: &[(i64, i64)]) -> QmodZVec {
        QmodZVec::new(
            entries
                .iter()
                .map(|&(n, d)| QmodZ::from_parts(n, d))
                .collect(),
        )
    }

    fn z2_chi() -> TorusHom {
        let g = product_cyclic(&[2]).unwrap();
        TorusHom::new(g, 1, vec![qv(&[(0, 1)]), qv(&[(1, 2)])], Side::Torus).unwrap()
    }

    /// The ℤ/2 example: χ(1) = 1/2, c(1,1) = 1/2, m ≡ 0, w ≡ 0.
    fn z2_half_cocycle() -> DynCocycle {
        let chi = z2_chi();
        let mut c = Table2::filled(2, QmodZ::zero());
        c.set(1, 1, QmodZ::from_parts(1, 2));
        DynCocycle::new(
            chi,
            c,
            Table2::filled(2, ZVec::zeros(1)),
            vec![QVec::zeros(1); 2],
        )
        .unwrap()
    }

    #[test]
    fn zero_cocycle_is_valid() {
        let d = DynCocycle::zero(z2_chi());
        assert!(validate_dyn(&d).is_ok());
    }

    #[test]
    fn z2_half_cocycle_is_valid() {
        assert!(validate_dyn(&z2_half_cocycle()).is_ok());
    }

    #[test]
    fn half_integral_frequency_cannot_be_completed() {
        // w(1) = −1/2 forces m(1,1) = −1 by (C), and then (B) at (1,1,1)
        // leaves the residue ⟨−1, 1/2⟩ = 1/2 ≠ 0 for every constant part.
        let chi = z2_chi();
        let w = vec![QVec::zeros(1), QVec::new(vec![Rat::new(-1, 2)])];
        let mut m = Table2::filled(2, ZVec::zeros(1));
        m.set(1, 1, ZVec::new(vec![-1]));
        for c11_num in 0..8 {
            let mut c = Table2::filled(2, QmodZ::zero());
            c.set(1, 1, QmodZ::from_parts(c11_num, 8));
            let d = DynCocycle::new(chi.clone(), c, m.clone(), w.clone()).unwrap();
            assert_eq!(
                validate_dyn(&d),
                Err(DualityError::ConstantCocycle { a: 1, b: 1, c: 1 })
            );
        }
    }

    #[test]
    fn dual_hom_of_integral_frequencies_is_trivial() {
        let chi = z2_chi();
        let mut m = Table2::filled(2, ZVec::zeros(1));
        m.set(1, 1, ZVec::new(vec![-2]));
        let w = vec![QVec::zeros(1), QVec::new(vec![Rat::new(-1, 1)])];
        let d = DynCocycle::new(chi, Table2::filled(2, QmodZ::zero()), m, w).unwrap();
        assert!(validate_dyn(&d).is_ok());
        let chihat = dual_hom(&d);
        assert!(chihat.is_trivial());
        assert_eq!(chihat.side(), Side::DualTorus);
    }

    #[test]
    fn dualize_z2_worked_example() {
        let d = z2_half_cocycle();
        let dual = dualize(&d);
        assert!(validate_dyn(&dual).is_ok());
        assert!(dual.hom().is_trivial());
        assert_eq!(*dual.c().get(1, 1), QmodZ::from_parts(1, 2));
        assert_eq!(dual.m().get(1, 1), &ZVec::new(vec![-1]));
        assert_eq!(dual.w()[1], QVec::new(vec![Rat::new(-1, 2)]));
    }

    #[test]
    fn double_dual_of_z2_example_is_exactly_original() {
        let d = z2_half_cocycle();
        let dd = dualize(&dualize(&d));
        assert_eq!(dd, d);
    }

    #[test]
    fn dual_hom_of_dualize_recovers_chi_exactly() {
        let d = z2_half_cocycle();
        assert_eq!(dual_hom(&dualize(&d)).images(), d.hom().images());
    }

    #[test]
    fn cohomologous_to_itself_with_zero_witness() {
        let d = z2_half_cocycle();
        let w = is_cohomologous_dyn(&d, &d).unwrap().unwrap();
        assert!(w.k.iter().all(|x| x.is_zero()));
        assert!(w.t.iter().all(ZVec::is_zero));
    }

    #[test]
    fn coboundary_round_trip_is_detected() {
        let d = z2_half_cocycle();
        let k = vec![QmodZ::zero(), QmodZ::from_parts(1, 3)];
        let t = vec![ZVec::zeros(1), ZVec::new(vec![2])];
        let d2 = d.apply_coboundary(&k, &t);
        assert!(validate_dyn(&d2).is_ok());
        let witness = is_cohomologous_dyn(&d, &d2).unwrap().unwrap();
        assert_eq!(&d.apply_coboundary(&witness.k, &witness.t), &d2);
    }

    #[test]
    fn half_constant_class_is_trivial_in_the_twisted_module() {
        // With χ(1) = 1/2 the constant coboundary δk(1,1) = 2k(1) reaches
        // every circle value, so the half cocycle is cohomologous to zero.
        let d0 = DynCocycle::zero(z2_chi());
        let d1 = z2_half_cocycle();
        let w = is_cohomologous_dyn(&d0, &d1).unwrap().unwrap();
        assert_eq!(&d0.apply_coboundary(&w.k, &w.t), &d1);
    }

    #[test]
    fn odd_winding_class_is_not_cohomologous_to_zero() {
        // Trivial χ, m(1,1) = 1, w(1) = 1/2: valid, but any witness would
        // need the half-integral character shift t(1) = 1/2.
        let chi = TorusHom::trivial(product_cyclic(&[2]).unwrap(), 1, Side::Torus);
        let mut m = Table2::filled(2, ZVec::zeros(1));
        m.set(1, 1, ZVec::new(vec![1]));
        let w = vec![QVec::zeros(1), QVec::new(vec![Rat::new(1, 2)])];
        let d = DynCocycle::new(chi.clone(), Table2::filled(2, QmodZ::zero()), m, w).unwrap();
        assert!(validate_dyn(&d).is_ok());
        let d0 = DynCocycle::zero(chi);
        assert!(is_cohomologous_dyn(&d0, &d).unwrap().is_none());
        // its dual homomorphism picks up the half winding
        assert_eq!(dual_hom(&d).image(1), &qv(&[(1, 2)]));
    }

    #[test]
    fn tensor_and_conjugate_group_laws() {
        let d = z2_half_cocycle();
        let sum = tensor(&d, &conjugate(&d)).unwrap();
        assert!(validate_dyn(&sum).is_ok());
        assert_eq!(sum, DynCocycle::zero(z2_chi()));
        let with_zero = tensor(&d, &DynCocycle::zero(z2_chi())).unwrap();
        assert_eq!(with_zero, d);
        // the two quarter representatives add to the half representative
        let mut c = Table2::filled(2, QmodZ::zero());
        c.set(1, 1, QmodZ::from_parts(1, 4));
        let q = DynCocycle::new(
            z2_chi(),
            c,
            Table2::filled(2, ZVec::zeros(1)),
            vec![QVec::zeros(1); 2],
        )
        .unwrap();
        let qq = tensor(&q, &q).unwrap();
        assert_eq!(*qq.c().get(1, 1), QmodZ::from_parts(1, 2));
    }

    #[test]
    fn hom_mismatch_is_an_error() {
        let d = z2_half_cocycle();
        let other = DynCocycle::zero(TorusHom::trivial(
            product_cyclic(&[2]).unwrap(),
            1,
            Side::Torus,
        ));
        assert_eq!(tensor(&d, &other), Err(DualityError::HomMismatch));
        assert!(is_cohomologous_dyn(&d, &other).is_err());
    }

    #[test]
    fn mackey_obstruction_checks() {
        let zero = MackeyObstruction::from_rationals(
            2,
            vec![
                Rat::new(0, 1),
                Rat::new(2, 1),
                Rat::new(-2, 1),
                Rat::new(0, 1),
            ],
        )
        .unwrap();
        assert!(mackey_vanishes(&zero));

        let half = MackeyObstruction::from_rationals(
            2,
            vec![
                Rat::new(0, 1),
                Rat::new(1, 2),
                Rat::new(1, 2),
                Rat::new(0, 1),
            ],
        )
        .unwrap();
        assert!(!mackey_vanishes(&half));

        let bad = MackeyObstruction::from_rationals(
            2,
            vec![
                Rat::new(0, 1),
                Rat::new(1, 3),
                Rat::new(1, 3),
                Rat::new(0, 1),
            ],
        );
        assert_eq!(bad, Err(DualityError::NotAntisymmetric { i: 0, j: 1 }));
    }
}
