//! Obstruction classes, topological triples and the bridges to dynamical data.
//!
//! A topological triple of order L is stored through its classifying data:
//! the pair of homomorphisms (χ, χ̂), a ψ-part 2-cocycle for the χ-module
//! and a ψ̂-part for the χ̂-module, subject to the class equation
//! ([ψ] ⊖ [ψ̂]) = L·(χ⊔χ̂) in the product module. The regularity component
//! is identically zero here: for the torus/dual-torus setting every triple
//! is regular, so it never enters the data.

use thiserror::Error;

use crate::cohomology::{
    delta1_const, delta1_int, delta2_const, is_cocycle, solve_coboundary, solve_const_coboundary2,
    solve_integer_coboundary2, Cochain, CochainValue, UnipotentModule,
};
use crate::duality::{dual_hom, dualize, DynCocycle};
use crate::group::{bockstein, FiniteGroup, Table2, TorusHom};
use crate::rational::{pair, pair_lift, section_lift, QVec, QmodZ, QmodZVec, ZVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("homomorphisms live on different groups")]
    GroupMismatch,
    #[error("rank mismatch between the homomorphisms or arguments")]
    RankMismatch,
    #[error("table shapes do not match the group and rank")]
    BadShape,
    #[error("data not normalized ({what})")]
    NotNormalized { what: &'static str },
    #[error("{part} character cocycle condition fails at ({a},{b},{c})")]
    CharacterCocycle {
        part: &'static str,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("{part} constant cocycle condition fails at ({a},{b},{c})")]
    ConstantCocycle {
        part: &'static str,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("class equation has no witness in the {stage} stage")]
    ClassEquation { stage: &'static str },
    #[error("input is not a cocycle")]
    NotACocycle,
    #[error("triple is not strict")]
    NotStrict,
    #[error("order or homomorphism parameters do not match")]
    HomMismatch,
    #[error("triples have different (order, χ, χ̂) parameters")]
    ParameterMismatch,
}

/// One half of a topological triple: ψ(a,b,z) = c(a,b) + ⟨m(a,b), z⟩.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsiPart {
    pub c: Table2<QmodZ>,
    pub m: Table2<ZVec>,
}

impl PsiPart {
    pub fn zero(g: usize, n: usize) -> Self {
        PsiPart {
            c: Table2::filled(g, QmodZ::zero()),
            m: Table2::filled(g, ZVec::zeros(n)),
        }
    }
}

/// A 2-cocycle for the product module, in standard form: a constant part
/// plus a z-character part and a ẑ-character part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiCocycle {
    pub chi: TorusHom,
    pub chihat: TorusHom,
    pub g: Table2<QmodZ>,
    pub u: Table2<ZVec>,
    pub v: Table2<ZVec>,
}

impl BiCocycle {
    /// View as an engine cochain over the product module.
    pub fn to_cochain(&self) -> Cochain {
        let group = self.chi.group();
        let module = UnipotentModule::m_bi(&self.chi, &self.chihat);
        Cochain::from_fn(group, module, 2, |t| {
            let mut chars = self.u.get(t[0], t[1]).entries().to_vec();
            chars.extend(self.v.get(t[0], t[1]).entries());
            CochainValue {
                c: *self.g.get(t[0], t[1]),
                v: ZVec::new(chars),
            }
        })
        .expect("bicocycle tables are normalized")
    }

    pub fn is_cocycle(&self) -> bool {
        is_cocycle(self.chi.group(), &self.to_cochain())
    }
}

/// Classifying data of a topological triple of the given order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TopTriple {
    pub order: i64,
    pub chi: TorusHom,
    pub chihat: TorusHom,
    pub psi: PsiPart,
    pub psihat: PsiPart,
}

/// Witness for the class equation: the 1-cochain (k, t, t̂) in the
/// product module whose boundary is ([ψ] ⊖ [ψ̂]) − L·(χ⊔χ̂).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleWitness {
    pub k: Vec<QmodZ>,
    pub t: Vec<ZVec>,
    pub that: Vec<ZVec>,
}

fn check_pair(chi: &TorusHom, chihat: &TorusHom) -> Result<(), TripleError> {
    if chi.group() != chihat.group() {
        return Err(TripleError::GroupMismatch);
    }
    if chi.rank() != chihat.rank() {
        return Err(TripleError::RankMismatch);
    }
    Ok(())
}

/// The constant part γ of the decomposition of χ⊔χ̂:
/// γ(a,b) = ⟨σ̂(χ̂(a)), σ(χ(b))⟩ − ⟨η̂(a,b), χ(ba)⟩.
pub fn gamma_table(chi: &TorusHom, chihat: &TorusHom) -> Result<Table2<QmodZ>, TripleError> {
    check_pair(chi, chihat)?;
    let group = chi.group();
    let etahat = bockstein(chihat);
    Ok(Table2::from_fn(group.size(), |a, b| {
        let ba = group.mul(b, a);
        pair_lift(&section_lift(chihat.image(a)), &section_lift(chi.image(b)))
            .expect("rank checked")
            - pair(etahat.get(a, b), chi.image(ba)).expect("rank checked")
    }))
}

/// The class χ⊔χ̂ in standard form: constant γ, z-character −η̂ and
/// ẑ-character η.
pub fn sqcup(chi: &TorusHom, chihat: &TorusHom) -> Result<BiCocycle, TripleError> {
    let g = gamma_table(chi, chihat)?;
    let group = chi.group();
    let eta = bockstein(chi);
    let etahat = bockstein(chihat);
    Ok(BiCocycle {
        chi: chi.clone(),
        chihat: chihat.clone(),
        g,
        u: Table2::from_fn(group.size(), |a, b| -etahat.get(a, b)),
        v: eta,
    })
}

/// The cup 3-cocycle (a,b,c) ↦ ⟨η(b,c), χ̂(a)⟩ in the trivial module.
pub fn cup3(chi: &TorusHom, chihat: &TorusHom) -> Result<Cochain, TripleError> {
    check_pair(chi, chihat)?;
    let eta = bockstein(chi);
    Cochain::const3(chi.group(), |a, b, c| {
        pair(eta.get(b, c), chihat.image(a)).expect("rank checked")
    })
    .map_err(|_| TripleError::BadShape)
}

/// The mirror cup route (a,b,c) ↦ ⟨η̂(b,c), χ(a)⟩; cohomologous to
/// [`cup3`] with explicit witness γ.
pub fn cup3_mirror(chi: &TorusHom, chihat: &TorusHom) -> Result<Cochain, TripleError> {
    check_pair(chi, chihat)?;
    let etahat = bockstein(chihat);
    Cochain::const3(chi.group(), |a, b, c| {
        pair(etahat.get(b, c), chi.image(a)).expect("rank checked")
    })
    .map_err(|_| TripleError::BadShape)
}

/// The Mayer–Vietoris connecting homomorphism on a product-module
/// 2-cocycle: split off the χ-summand ω₁ = (g, u) and return the constant
/// 3-cocycle δ_χω₁, i.e. (a,b,c) ↦ (δg)(a,b,c) + ⟨u(b,c), χ(a)⟩.
pub fn connecting_c(b: &BiCocycle) -> Result<Cochain, TripleError> {
    if !b.is_cocycle() {
        return Err(TripleError::NotACocycle);
    }
    let group = b.chi.group();
    Cochain::const3(group, |x, y, z| {
        delta2_const(group, &b.g, x, y, z) + pair(b.u.get(y, z), b.chi.image(x)).expect("rank")
    })
    .map_err(|_| TripleError::BadShape)
}

/// The pointwise potential of χ⊔χ̂:
/// β(a,z,ẑ) = ⟨σ̂(ẑ+χ̂(a)) − σ̂(ẑ) − σ̂(χ̂(a)), σ(z+χ(a))⟩ + ⟨σ̂(ẑ), σ(χ(a))⟩.
pub fn beta_eval(
    chi: &TorusHom,
    chihat: &TorusHom,
    a: usize,
    z: &QmodZVec,
    zhat: &QmodZVec,
) -> Result<QmodZ, TripleError> {
    check_pair(chi, chihat)?;
    let n = chi.rank();
    if z.len() != n || zhat.len() != n {
        return Err(TripleError::RankMismatch);
    }
    let shifted = zhat + chihat.image(a);
    let defect = &(&section_lift(&shifted) - &section_lift(zhat)) - &section_lift(chihat.image(a));
    let defect = defect.to_zvec().expect("section defect is integral");
    let first = pair(&defect, &(z + chi.image(a))).expect("rank checked");
    let second = pair_lift(&section_lift(zhat), &section_lift(chi.image(a))).expect("rank checked");
    Ok(first + second)
}

/// Boundary of β in the product action, evaluated pointwise:
/// (δβ)(a,b,z,ẑ) = β(b, z+χ(a), ẑ+χ̂(a)) − β(ba, z, ẑ) + β(a, z, ẑ).
pub fn delta_beta(
    chi: &TorusHom,
    chihat: &TorusHom,
    a: usize,
    b: usize,
    z: &QmodZVec,
    zhat: &QmodZVec,
) -> Result<QmodZ, TripleError> {
    let group = chi.group();
    let ba = group.mul(b, a);
    Ok(beta_eval(
        chi,
        chihat,
        b,
        &(z + chi.image(a)),
        &(zhat + chihat.image(a)),
    )? - beta_eval(chi, chihat, ba, z, zhat)?
        + beta_eval(chi, chihat, a, z, zhat)?)
}

fn psi_part_check(
    group: &FiniteGroup,
    hom: &TorusHom,
    part: &PsiPart,
    name: &'static str,
) -> Result<(), TripleError> {
    let g = group.size();
    let n = hom.rank();
    if part.c.size() != g || part.m.size() != g {
        return Err(TripleError::BadShape);
    }
    if part.m.pairs().any(|(_, _, v)| v.len() != n) {
        return Err(TripleError::BadShape);
    }
    for x in 0..g {
        if !part.c.get(x, 0).is_zero()
            || !part.c.get(0, x).is_zero()
            || !part.m.get(x, 0).is_zero()
            || !part.m.get(0, x).is_zero()
        {
            return Err(TripleError::NotNormalized { what: name });
        }
    }
    for a in 0..g {
        for b in 0..g {
            for c in 0..g {
                if !crate::cohomology::delta2_int(group, &part.m, a, b, c).is_zero() {
                    return Err(TripleError::CharacterCocycle {
                        part: name,
                        a,
                        b,
                        c,
                    });
                }
                let residue = delta2_const(group, &part.c, a, b, c)
                    + pair(part.m.get(b, c), hom.image(a)).expect("rank checked");
                if !residue.is_zero() {
                    return Err(TripleError::ConstantCocycle {
                        part: name,
                        a,
                        b,
                        c,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Validate both cocycle halves and solve the class equation; the witness
/// exhibits ([ψ] ⊖ [ψ̂]) − L·(χ⊔χ̂) as a product-module coboundary.
pub fn validate_triple(t: &TopTriple) -> Result<TripleWitness, TripleError> {
    check_pair(&t.chi, &t.chihat)?;
    let group = t.chi.group().clone();
    let g = group.size();
    let n = t.chi.rank();
    psi_part_check(&group, &t.chi, &t.psi, "psi")?;
    psi_part_check(&group, &t.chihat, &t.psihat, "psihat")?;

    let eta = bockstein(&t.chi);
    let etahat = bockstein(&t.chihat);
    let gamma = gamma_table(&t.chi, &t.chihat)?;
    let order = t.order;

    // character stages: δt = m + L·η̂ and δt̂ = −m̂ − L·η
    let zu = Table2::from_fn(g, |a, b| t.psi.m.get(a, b) + &etahat.get(a, b).scale(order));
    let zv = Table2::from_fn(g, |a, b| {
        &(-t.psihat.m.get(a, b)) - &eta.get(a, b).scale(order)
    });
    let tt = solve_integer_coboundary2(&group, &zu, n).ok_or(TripleError::ClassEquation {
        stage: "z-character",
    })?;
    let that = solve_integer_coboundary2(&group, &zv, n).ok_or(TripleError::ClassEquation {
        stage: "zhat-character",
    })?;

    // constant stage: δk = (c − ĉ − L·γ) − ⟨t(b), χ(a)⟩ − ⟨t̂(b), χ̂(a)⟩
    let residual = Table2::from_fn(g, |a, b| {
        *t.psi.c.get(a, b)
            - *t.psihat.c.get(a, b)
            - gamma.get(a, b).scale(order)
            - pair(&tt[b], t.chi.image(a)).expect("rank checked")
            - pair(&that[b], t.chihat.image(a)).expect("rank checked")
    });
    let k = solve_const_coboundary2(&group, &residual)
        .ok_or(TripleError::ClassEquation { stage: "constant" })?;
    Ok(TripleWitness { k, t: tt, that })
}

/// Strictness: the character parts are the forced multiples of the
/// Bockstein cocycles and the constants differ by exactly L·γ.
pub fn is_strict(t: &TopTriple) -> bool {
    let group = t.chi.group();
    let g = group.size();
    let eta = bockstein(&t.chi);
    let etahat = bockstein(&t.chihat);
    let Ok(gamma) = gamma_table(&t.chi, &t.chihat) else {
        return false;
    };
    (0..g).all(|a| {
        (0..g).all(|b| {
            t.psi.m.get(a, b) == &etahat.get(a, b).scale(-t.order)
                && t.psihat.m.get(a, b) == &eta.get(a, b).scale(-t.order)
                && *t.psi.c.get(a, b) - *t.psihat.c.get(a, b) == gamma.get(a, b).scale(t.order)
        })
    })
}

/// Move to the strict representative in the same class by absorbing the
/// class-equation witness into the two halves.
pub fn strictify(t: &TopTriple) -> Result<TopTriple, TripleError> {
    let w = validate_triple(t)?;
    let group = t.chi.group();
    let g = group.size();
    let psi = PsiPart {
        c: Table2::from_fn(g, |a, b| {
            *t.psi.c.get(a, b)
                - delta1_const(group, &w.k, a, b)
                - pair(&w.t[b], t.chi.image(a)).expect("rank checked")
        }),
        m: Table2::from_fn(g, |a, b| t.psi.m.get(a, b) - &delta1_int(group, &w.t, a, b)),
    };
    let psihat = PsiPart {
        c: Table2::from_fn(g, |a, b| {
            *t.psihat.c.get(a, b) + pair(&w.that[b], t.chihat.image(a)).expect("rank checked")
        }),
        m: Table2::from_fn(g, |a, b| {
            t.psihat.m.get(a, b) + &delta1_int(group, &w.that, a, b)
        }),
    };
    let out = TopTriple {
        order: t.order,
        chi: t.chi.clone(),
        chihat: t.chihat.clone(),
        psi,
        psihat,
    };
    debug_assert!(is_strict(&out));
    Ok(out)
}

/// Construct a strict order-L triple extending (χ, χ̂), or `None` exactly
/// when L·(χ∪χ̂) is not a coboundary.
pub fn exists_triple(
    chi: &TorusHom,
    chihat: &TorusHom,
    order: i64,
) -> Result<Option<TopTriple>, TripleError> {
    check_pair(chi, chihat)?;
    let group = chi.group().clone();
    let g = group.size();
    let eta = bockstein(chi);
    let etahat = bockstein(chihat);
    let cup = cup3(chi, chihat)?;
    let scaled = Cochain::const3(&group, |a, b, c| cup.get(&[a, b, c]).c.scale(order))
        .map_err(|_| TripleError::BadShape)?;
    let Ok(witness) = solve_coboundary(&group, &scaled) else {
        return Err(TripleError::NotACocycle);
    };
    let Some(witness) = witness else {
        return Ok(None);
    };
    let gamma = gamma_table(chi, chihat)?;
    let chat = Table2::from_fn(g, |a, b| witness.get(&[a, b]).c);
    let c = Table2::from_fn(g, |a, b| *chat.get(a, b) + gamma.get(a, b).scale(order));
    let triple = TopTriple {
        order,
        chi: chi.clone(),
        chihat: chihat.clone(),
        psi: PsiPart {
            c,
            m: Table2::from_fn(g, |a, b| etahat.get(a, b).scale(-order)),
        },
        psihat: PsiPart {
            c: chat,
            m: Table2::from_fn(g, |a, b| eta.get(a, b).scale(-order)),
        },
    };
    debug_assert!(is_strict(&triple));
    debug_assert!(validate_triple(&triple).is_ok());
    Ok(Some(triple))
}

/// The H²(Γ,U(1))-torsor action: add the trivial-module 2-cocycle `s` to
/// both constant parts (the diagonal embedding of the Mayer–Vietoris
/// sequence, which is what preserves the class equation).
pub fn torsor_action(t: &TopTriple, s: &Table2<QmodZ>) -> Result<TopTriple, TripleError> {
    let group = t.chi.group();
    let g = group.size();
    if s.size() != g {
        return Err(TripleError::BadShape);
    }
    for a in 0..g {
        if !s.get(a, 0).is_zero() || !s.get(0, a).is_zero() {
            return Err(TripleError::NotNormalized {
                what: "torsor cocycle",
            });
        }
        for b in 0..g {
            for c in 0..g {
                if !delta2_const(group, s, a, b, c).is_zero() {
                    return Err(TripleError::NotACocycle);
                }
            }
        }
    }
    Ok(TopTriple {
        order: t.order,
        chi: t.chi.clone(),
        chihat: t.chihat.clone(),
        psi: PsiPart {
            c: Table2::from_fn(g, |a, b| *t.psi.c.get(a, b) + *s.get(a, b)),
            m: t.psi.m.clone(),
        },
        psihat: PsiPart {
            c: Table2::from_fn(g, |a, b| *t.psihat.c.get(a, b) + *s.get(a, b)),
            m: t.psihat.m.clone(),
        },
    })
}

/// The torsor difference: a trivial-module 2-cocycle s with
/// T₁ ≈ torsor_action(T₂, s) at class level.
pub fn triple_difference(t1: &TopTriple, t2: &TopTriple) -> Result<Table2<QmodZ>, TripleError> {
    if t1.order != t2.order || t1.chi != t2.chi || t1.chihat != t2.chihat {
        return Err(TripleError::ParameterMismatch);
    }
    let w1 = validate_triple(t1)?;
    let w2 = validate_triple(t2)?;
    let group = t1.chi.group();
    let g = group.size();
    let k: Vec<QmodZ> = w1.k.iter().zip(&w2.k).map(|(a, b)| *a - *b).collect();
    let t: Vec<ZVec> = w1.t.iter().zip(&w2.t).map(|(a, b)| a - b).collect();
    let s = Table2::from_fn(g, |a, b| {
        *t1.psi.c.get(a, b)
            - *t2.psi.c.get(a, b)
            - delta1_const(group, &k, a, b)
            - pair(&t[b], t1.chi.image(a)).expect("rank checked")
    });
    debug_assert!({
        let acted = torsor_action(t2, &s)?;
        triples_equivalent(t1, &acted)?
    });
    Ok(s)
}

fn psi_parts_cohomologous(
    group: &FiniteGroup,
    hom: &TorusHom,
    p1: &PsiPart,
    p2: &PsiPart,
) -> Option<(Vec<QmodZ>, Vec<ZVec>)> {
    let g = group.size();
    let n = hom.rank();
    let diff_m = Table2::from_fn(g, |a, b| p2.m.get(a, b) - p1.m.get(a, b));
    let t = solve_integer_coboundary2(group, &diff_m, n)?;
    let residual = Table2::from_fn(g, |a, b| {
        *p2.c.get(a, b) - *p1.c.get(a, b) - pair(&t[b], hom.image(a)).expect("rank checked")
    });
    let k = solve_const_coboundary2(group, &residual)?;
    Some((k, t))
}

/// Class-level equality of triples: same parameters and both halves
/// cohomologous in their own modules.
pub fn triples_equivalent(t1: &TopTriple, t2: &TopTriple) -> Result<bool, TripleError> {
    if t1.order != t2.order || t1.chi != t2.chi || t1.chihat != t2.chihat {
        return Err(TripleError::ParameterMismatch);
    }
    let group = t1.chi.group();
    Ok(
        psi_parts_cohomologous(group, &t1.chi, &t1.psi, &t2.psi).is_some()
            && psi_parts_cohomologous(group, &t1.chihat, &t1.psihat, &t2.psihat).is_some(),
    )
}

/// The natural map Top_M(Γ, Kχ, Lχ̂) → Top_{KLM}(Γ, χ, χ̂): characters are
/// rescaled by the corresponding factor, constants stay.
pub fn order_change(
    k_factor: i64,
    l_factor: i64,
    t: &TopTriple,
    chi: &TorusHom,
    chihat: &TorusHom,
) -> Result<TopTriple, TripleError> {
    check_pair(chi, chihat)?;
    if t.chi.images() != chi.scale(k_factor).images()
        || t.chihat.images() != chihat.scale(l_factor).images()
    {
        return Err(TripleError::HomMismatch);
    }
    let g = chi.group().size();
    Ok(TopTriple {
        order: k_factor * l_factor * t.order,
        chi: chi.clone(),
        chihat: chihat.clone(),
        psi: PsiPart {
            c: t.psi.c.clone(),
            m: Table2::from_fn(g, |a, b| t.psi.m.get(a, b).scale(k_factor)),
        },
        psihat: PsiPart {
            c: t.psihat.c.clone(),
            m: Table2::from_fn(g, |a, b| t.psihat.m.get(a, b).scale(l_factor)),
        },
    })
}

/// Push a strict order-L triple to an order-1 triple with homs (χ, Lχ̂):
/// ψ is kept, ψ̂ is replaced by (c − L·γ, −η).
pub fn lhat_star(t: &TopTriple) -> Result<TopTriple, TripleError> {
    if !is_strict(t) {
        return Err(TripleError::NotStrict);
    }
    let group = t.chi.group();
    let g = group.size();
    let gamma = gamma_table(&t.chi, &t.chihat)?;
    let eta = bockstein(&t.chi);
    Ok(TopTriple {
        order: 1,
        chi: t.chi.clone(),
        chihat: t.chihat.scale(t.order),
        psi: t.psi.clone(),
        psihat: PsiPart {
            c: Table2::from_fn(g, |a, b| {
                *t.psi.c.get(a, b) - gamma.get(a, b).scale(t.order)
            }),
            m: Table2::from_fn(g, |a, b| -eta.get(a, b)),
        },
    })
}

/// Mirror of [`lhat_star`]: order-1 triple with homs (Lχ, χ̂), ψ̂ kept and
/// ψ replaced by (ĉ + L·γ, −η̂).
pub fn l_star(t: &TopTriple) -> Result<TopTriple, TripleError> {
    if !is_strict(t) {
        return Err(TripleError::NotStrict);
    }
    let group = t.chi.group();
    let g = group.size();
    let gamma = gamma_table(&t.chi, &t.chihat)?;
    let etahat = bockstein(&t.chihat);
    Ok(TopTriple {
        order: 1,
        chi: t.chi.scale(t.order),
        chihat: t.chihat.clone(),
        psi: PsiPart {
            c: Table2::from_fn(g, |a, b| {
                *t.psihat.c.get(a, b) + gamma.get(a, b).scale(t.order)
            }),
            m: Table2::from_fn(g, |a, b| -etahat.get(a, b)),
        },
        psihat: t.psihat.clone(),
    })
}

/// The ε map: read a dualisable dynamical cocycle off a strict triple,
/// with frequency w(a) = −L·σ̂(χ̂(a)).
pub fn triple_to_dyn(t: &TopTriple) -> Result<DynCocycle, TripleError> {
    if !is_strict(t) {
        return Err(TripleError::NotStrict);
    }
    let group = t.chi.group();
    let w: Vec<QVec> = group
        .elements()
        .map(|a| section_lift(t.chihat.image(a)).scale(-t.order))
        .collect();
    DynCocycle::new(t.chi.clone(), t.psi.c.clone(), t.psi.m.clone(), w)
        .map_err(|_| TripleError::BadShape)
}

/// The mirror ε̂ map: the dual-side dynamical cocycle of a strict triple,
/// with frequency ŵ(a) = −L·σ(χ(a)).
pub fn triple_to_dyn_dual(t: &TopTriple) -> Result<DynCocycle, TripleError> {
    if !is_strict(t) {
        return Err(TripleError::NotStrict);
    }
    let group = t.chi.group();
    let w: Vec<QVec> = group
        .elements()
        .map(|a| section_lift(t.chi.image(a)).scale(-t.order))
        .collect();
    DynCocycle::new(t.chihat.clone(), t.psihat.c.clone(), t.psihat.m.clone(), w)
        .map_err(|_| TripleError::BadShape)
}

/// The δ map: a valid dynamical cocycle determines an order-1 triple whose
/// ψ̂-part is the ψ-part of its dual.
pub fn dyn_to_triple(d: &DynCocycle) -> TopTriple {
    let dual = dualize(d);
    TopTriple {
        order: 1,
        chi: d.hom().clone(),
        chihat: dual_hom(d),
        psi: PsiPart {
            c: d.c().clone(),
            m: d.m().clone(),
        },
        psihat: PsiPart {
            c: dual.c().clone(),
            m: dual.m().clone(),
        },
    }
}

/// Order-label arithmetic of the Poincaré-class pullback: (K,L) sends an
/// order-M class to order K·L·M.
pub fn poincare_pullback(k: i64, l: i64, m: i64) -> i64 {
    k * l * m
}
