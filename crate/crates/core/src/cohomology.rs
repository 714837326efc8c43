//! Normalized group cochains for circle-plus-character modules.
//!
//! The coefficient modules all have the shape ℚ/ℤ ⊕ ℤˢ where a group
//! element `a` acts by `a·(c, v) = (c + τ(a)·v, v)` for a homomorphism
//! τ: Γ → (ℚ/ℤ)ˢ. A cochain value is a constant circle part plus an
//! integer character part; the boundary operator follows the convention
//!
//! ```text
//! (δm)(a₀,…,aₙ) = a₀⁻¹·m(a₁,…,aₙ) − m(a₁a₀,a₂,…,aₙ) + m(a₀,a₂a₁,…,aₙ)
//!                 − ⋯ + (−1)ⁿ m(a₀,…,aₙaₙ₋₁) + (−1)ⁿ⁺¹ m(a₀,…,aₙ₋₁)
//! ```
//!
//! in which only the leading term carries the action. Cochains are
//! normalized (zero whenever an argument is the identity), which shrinks
//! every boundary matrix to non-identity tuples without changing the
//! cohomology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, Table2, TorusHom};
use crate::rational::{QmodZ, QmodZVec, ZVec};
use crate::snf::{self, IntMat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("input is not a cocycle (boundary nonzero at tuple {at:?})")]
    NotACocycle { at: Vec<usize> },
    #[error("cochain is not normalized at tuple {at:?}")]
    NotNormalized { at: Vec<usize> },
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("twist is not a homomorphism")]
    TwistNotHom,
    #[error("value table has wrong length: {got}, expected {want}")]
    BadTableLength { got: usize, want: usize },
    #[error("character rank mismatch: {got}, expected {want}")]
    CharRankMismatch { got: usize, want: usize },
    #[error("witness arithmetic overflowed the scalar type")]
    Overflow,
}

/// The module ℚ/ℤ ⊕ ℤˢ with character-twisted action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnipotentModule {
    s: usize,
    twist: Vec<QmodZVec>,
}

impl UnipotentModule {
    /// Trivial coefficients ℚ/ℤ (no character part).
    pub fn trivial(group: &FiniteGroup) -> Self {
        UnipotentModule {
            s: 0,
            twist: vec![QmodZVec::zeros(0); group.size()],
        }
    }

    /// The standard module of functions on the torus shifted by χ:
    /// character rank n with twist τ(a) = −χ(a).
    pub fn m_chi(chi: &TorusHom) -> Self {
        UnipotentModule {
            s: chi.rank(),
            twist: chi.group().elements().map(|a| -chi.image(a)).collect(),
        }
    }

    /// The product module for a pair (χ, χ̂): character rank 2n with
    /// twist τ(a) = (−χ(a), −χ̂(a)).
    pub fn m_bi(chi: &TorusHom, chihat: &TorusHom) -> Self {
        assert_eq!(chi.group(), chihat.group(), "homs must share the group");
        assert_eq!(chi.rank(), chihat.rank(), "homs must share the rank");
        let twist = chi
            .group()
            .elements()
            .map(|a| {
                let mut entries: Vec<QmodZ> = (-chi.image(a)).entries().to_vec();
                entries.extend((-chihat.image(a)).entries());
                QmodZVec::new(entries)
            })
            .collect();
        UnipotentModule {
            s: 2 * chi.rank(),
            twist,
        }
    }

    /// Custom module; checks that the twist is a homomorphism.
    pub fn new(group: &FiniteGroup, s: usize, twist: Vec<QmodZVec>) -> Result<Self, EngineError> {
        if twist.len() != group.size() || twist.iter().any(|t| t.len() != s) {
            return Err(EngineError::TwistNotHom);
        }
        if !twist[0].is_zero() {
            return Err(EngineError::TwistNotHom);
        }
        for a in group.elements() {
            for b in group.elements() {
                if twist[group.mul(a, b)] != &twist[a] + &twist[b] {
                    return Err(EngineError::TwistNotHom);
                }
            }
        }
        Ok(UnipotentModule { s, twist })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn twist(&self, a: usize) -> &QmodZVec {
        &self.twist[a]
    }
}

/// One module value: circle part plus character part.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CochainValue {
    pub c: QmodZ,
    pub v: ZVec,
}

impl CochainValue {
    pub fn zero(s: usize) -> Self {
        CochainValue {
            c: QmodZ::zero(),
            v: ZVec::zeros(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.v.is_zero()
    }

    fn add(&self, other: &CochainValue) -> CochainValue {
        CochainValue {
            c: self.c + other.c,
            v: &self.v + &other.v,
        }
    }

    fn sub(&self, other: &CochainValue) -> CochainValue {
        CochainValue {
            c: self.c - other.c,
            v: &self.v - &other.v,
        }
    }
}

/// A normalized cochain Γᵏ → ℚ/ℤ ⊕ ℤˢ stored as a total array in
/// lexicographic tuple order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    degree: usize,
    module: UnipotentModule,
    group_size: usize,
    values: Vec<CochainValue>,
}

fn tuple_index(g: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * g + a)
}

fn index_tuple(g: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = idx % g;
        idx /= g;
    }
    t
}

impl Cochain {
    pub fn zero(group: &FiniteGroup, module: UnipotentModule, degree: usize) -> Self {
        let g = group.size();
        let s = module.s();
        Cochain {
            degree,
            module,
            group_size: g,
            values: vec![CochainValue::zero(s); g.pow(degree as u32)],
        }
    }

    /// Build from a value function; checks normalization.
    pub fn from_fn(
        group: &FiniteGroup,
        module: UnipotentModule,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> CochainValue,
    ) -> Result<Self, EngineError> {
        let g = group.size();
        let s = module.s();
        let count = g.pow(degree as u32);
        let mut values = Vec::with_capacity(count);
        for idx in 0..count {
            let tuple = index_tuple(g, degree, idx);
            let value = f(&tuple);
            if value.v.len() != s {
                return Err(EngineError::CharRankMismatch {
                    got: value.v.len(),
                    want: s,
                });
            }
            if tuple.contains(&0) && !value.is_zero() {
                return Err(EngineError::NotNormalized { at: tuple });
            }
            values.push(value);
        }
        Ok(Cochain {
            degree,
            module,
            group_size: g,
            values,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &UnipotentModule {
        &self.module
    }

    pub fn group_size(&self) -> usize {
        self.group_size
    }

    pub fn get(&self, tuple: &[usize]) -> &CochainValue {
        assert_eq!(tuple.len(), self.degree);
        &self.values[tuple_index(self.group_size, tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], value: CochainValue) {
        assert_eq!(tuple.len(), self.degree);
        let idx = tuple_index(self.group_size, tuple);
        self.values[idx] = value;
    }

    pub fn values(&self) -> &[CochainValue] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CochainValue::is_zero)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.group_size, other.group_size);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect();
        Cochain {
            values,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.group_size, other.group_size);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.sub(b))
            .collect();
        Cochain {
            values,
            ..self.clone()
        }
    }

    /// Degree-2 cochain in a trivial module from a constant table.
    pub fn const2(group: &FiniteGroup, table: &Table2<QmodZ>) -> Result<Self, EngineError> {
        Self::from_fn(group, UnipotentModule::trivial(group), 2, |t| {
            CochainValue {
                c: *table.get(t[0], t[1]),
                v: ZVec::zeros(0),
            }
        })
    }

    /// Degree-3 cochain in a trivial module.
    pub fn const3(
        group: &FiniteGroup,
        f: impl Fn(usize, usize, usize) -> QmodZ,
    ) -> Result<Self, EngineError> {
        Self::from_fn(group, UnipotentModule::trivial(group), 3, |t| {
            CochainValue {
                c: f(t[0], t[1], t[2]),
                v: ZVec::zeros(0),
            }
        })
    }
}

/// The boundary operator; raises degree by one and squares to zero.
pub fn coboundary(group: &FiniteGroup, c: &Cochain) -> Cochain {
    let g = group.size();
    assert_eq!(g, c.group_size, "cochain belongs to a different group");
    let k = c.degree;
    let s = c.module.s();
    let mut out = Cochain::zero(group, c.module.clone(), k + 1);
    let count = g.pow((k + 1) as u32);
    let mut merged = vec![0usize; k.max(1)];
    for idx in 0..count {
        let t = index_tuple(g, k + 1, idx);
        // Leading term: a₀⁻¹ · m(a₁,…,a_k); the action adds ⟨v, −τ(a₀)⟩
        // to the circle part (τ(a₀⁻¹) = −τ(a₀)).
        let lead = c.get(&t[1..]);
        let mut acc_c = lead.c;
        if s > 0 {
            let act = -c.module.twist(t[0]);
            acc_c += crate::rational::pair(&lead.v, &act).expect("module rank fixed");
        }
        let mut acc_v = lead.v.clone();
        for i in 1..=k {
            // merge slots i−1 and i into aᵢ·aᵢ₋₁
            merged[..k].iter_mut().enumerate().for_each(|(slot, m)| {
                *m = match slot.cmp(&(i - 1)) {
                    std::cmp::Ordering::Less => t[slot],
                    std::cmp::Ordering::Equal => group.mul(t[i], t[i - 1]),
                    std::cmp::Ordering::Greater => t[slot + 1],
                };
            });
            let term = c.get(&merged[..k]);
            if i % 2 == 1 {
                acc_c = acc_c - term.c;
                acc_v = &acc_v - &term.v;
            } else {
                acc_c += term.c;
                acc_v = &acc_v + &term.v;
            }
        }
        let last = c.get(&t[..k]);
        if (k + 1) % 2 == 1 {
            acc_c = acc_c - last.c;
            acc_v = &acc_v - &last.v;
        } else {
            acc_c += last.c;
            acc_v = &acc_v + &last.v;
        }
        out.values[idx] = CochainValue { c: acc_c, v: acc_v };
    }
    out
}

/// True iff the boundary of `c` vanishes identically.
pub fn is_cocycle(group: &FiniteGroup, c: &Cochain) -> bool {
    coboundary(group, c).is_zero()
}

/// Integer matrix of the trivial part of δ: reduced degree-k cochains to
/// reduced degree-(k+1) cochains. Rows and columns index tuples of
/// non-identity elements in lexicographic order.
pub fn boundary_matrix(group: &FiniteGroup, k: usize) -> IntMat {
    let g = group.size();
    let h = g - 1;
    let rows = h.pow((k + 1) as u32);
    let cols = h.pow(k as u32);
    let mut m = IntMat::zeros(rows, cols);
    let reduced_index = |tuple: &[usize]| -> Option<usize> {
        let mut acc = 0;
        for &a in tuple {
            if a == 0 {
                return None;
            }
            acc = acc * h + (a - 1);
        }
        Some(acc)
    };
    let mut merged = vec![0usize; k.max(1)];
    for row in 0..rows {
        // decode the reduced (k+1)-tuple
        let mut idx = row;
        let mut t = vec![0usize; k + 1];
        for slot in t.iter_mut().rev() {
            *slot = idx % h + 1;
            idx /= h;
        }
        let add = |m: &mut IntMat, col: Option<usize>, coeff: i64| {
            if let Some(c) = col {
                let v = m.get(row, c) + BigInt::from(coeff);
                m.set(row, c, v);
            }
        };
        add(&mut m, reduced_index(&t[1..]), 1);
        for i in 1..=k {
            merged[..k].iter_mut().enumerate().for_each(|(slot, mm)| {
                *mm = match slot.cmp(&(i - 1)) {
                    std::cmp::Ordering::Less => t[slot],
                    std::cmp::Ordering::Equal => group.mul(t[i], t[i - 1]),
                    std::cmp::Ordering::Greater => t[slot + 1],
                };
            });
            let coeff = if i % 2 == 1 { -1 } else { 1 };
            add(&mut m, reduced_index(&merged[..k]), coeff);
        }
        let coeff = if (k + 1) % 2 == 1 { -1 } else { 1 };
        add(&mut m, reduced_index(&t[..k]), coeff);
    }
    m
}

fn qmodz_to_big(q: QmodZ) -> BigRational {
    BigRational::new(BigInt::from(q.numer()), BigInt::from(q.denom()))
}

fn big_to_qmodz(r: &BigRational) -> Result<QmodZ, EngineError> {
    let reduced = r - r.floor();
    let numer = reduced.numer().to_i64().ok_or(EngineError::Overflow)?;
    let denom = reduced.denom().to_i64().ok_or(EngineError::Overflow)?;
    Ok(QmodZ::from_parts(numer, denom))
}

/// Solve δw = z exactly; `None` iff no witness exists.
///
/// The character part is an integer linear system solved first via Smith
/// normal form; the integer witness is then adjusted along the kernel
/// lattice of the boundary matrix so that the residual circle part stays
/// solvable, and the residual is solved mod 1 by the same normal form.
pub fn solve_coboundary(group: &FiniteGroup, z: &Cochain) -> Result<Option<Cochain>, EngineError> {
    let g = group.size();
    assert_eq!(g, z.group_size, "cochain belongs to a different group");
    let k = z.degree;
    if k == 0 {
        return Err(EngineError::UnsupportedDegree(0));
    }
    if let Some(idx) = coboundary(group, z)
        .values
        .iter()
        .position(|v| !v.is_zero())
    {
        return Err(EngineError::NotACocycle {
            at: index_tuple(g, k + 1, idx),
        });
    }
    let s = z.module.s();
    let h = g - 1;
    let rows = h.pow(k as u32);
    let cols = h.pow((k - 1) as u32);

    let d = boundary_matrix(group, k - 1);
    let sm = snf::smith(&d);

    let row_tuple = |row: usize| -> Vec<usize> {
        let mut idx = row;
        let mut t = vec![0usize; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % h + 1;
            idx /= h;
        }
        t
    };

    // 1. Character part, one integer solve per coordinate.
    let mut t_char: Vec<Vec<BigInt>> = Vec::with_capacity(s);
    for j in 0..s {
        let b: Vec<BigInt> = (0..rows)
            .map(|r| BigInt::from(z.get(&row_tuple(r)).v.entries()[j]))
            .collect();
        match snf::solve_integer(&sm, &b) {
            Some(t) => t_char.push(t),
            None => return Ok(None),
        }
    }

    // Twist coupling of the character unknowns into the circle rows: the
    // equation at (a₀,…) receives ⟨t(a₁,…), −τ(a₀)⟩ from the leading term.
    let lead_col = |t: &[usize]| -> usize {
        let mut acc = 0;
        for &a in &t[1..] {
            acc = acc * h + (a - 1);
        }
        acc
    };
    let residual = |t_char: &[Vec<BigInt>]| -> Vec<BigRational> {
        (0..rows)
            .map(|r| {
                let t = row_tuple(r);
                let mut acc = qmodz_to_big(z.get(&t).c);
                if s > 0 {
                    let col = lead_col(&t);
                    let tau = z.module.twist(t[0]);
                    for (j, tj) in t_char.iter().enumerate() {
                        let coeff = qmodz_to_big(tau.entries()[j]);
                        if !coeff.is_zero() && !tj[col].is_zero() {
                            // minus τ from the action, minus again to move
                            // the known term across the equation
                            acc += coeff * BigRational::from_integer(tj[col].clone());
                        }
                    }
                }
                acc
            })
            .collect()
    };

    if s > 0 {
        // 2. Adjust the integer witness along ker D so that the defect rows
        // of the mod-1 system become consistent.
        let defect = snf::mod1_defect_rows(&sm);
        if !defect.is_empty() {
            let r0 = residual(&t_char);
            let u_r0 = sm.u.mul_rat_vec(&r0);
            let need: Vec<BigRational> =
                defect.iter().map(|&i| &u_r0[i] - u_r0[i].floor()).collect();
            if need.iter().any(|x| !x.is_zero()) {
                let kernel = snf::kernel_basis(&sm);
                if kernel.is_empty() {
                    return Ok(None);
                }
                // Adding κ to coordinate j changes the residual by +T_j·κ
                // where T_j has entry −(−τ(a₀))_j = τ(a₀)_j at the leading
                // column; keep the same orientation as `residual`.
                let mut w: Vec<Vec<BigRational>> = vec![Vec::new(); defect.len()];
                for j in 0..s {
                    for kappa in &kernel {
                        let tk: Vec<BigRational> = (0..rows)
                            .map(|r| {
                                let t = row_tuple(r);
                                let col = lead_col(&t);
                                let coeff = qmodz_to_big(z.module.twist(t[0]).entries()[j]);
                                if coeff.is_zero() || kappa[col].is_zero() {
                                    BigRational::zero()
                                } else {
                                    coeff * BigRational::from_integer(kappa[col].clone())
                                }
                            })
                            .collect();
                        let utk = sm.u.mul_rat_vec(&tk);
                        for (di, &i) in defect.iter().enumerate() {
                            w[di].push(-utk[i].clone());
                        }
                    }
                }
                match snf::solve_integral_mod1(&w, &need) {
                    Some(y) => {
                        let kernel_len = kernel.len();
                        for j in 0..s {
                            for (l, kappa) in kernel.iter().enumerate() {
                                let coeff = &y[j * kernel_len + l];
                                if !coeff.is_zero() {
                                    for (dst, kv) in t_char[j].iter_mut().zip(kappa) {
                                        *dst += coeff * kv;
                                    }
                                }
                            }
                        }
                    }
                    None => return Ok(None),
                }
            }
        }
    }

    // 3. Residual circle part mod 1.
    let r = residual(&t_char);
    let Some(k_const) = snf::solve_mod1(&sm, &r) else {
        return Ok(None);
    };

    // Assemble the witness on full tuples.
    let mut w = Cochain::zero(group, z.module.clone(), k - 1);
    for col in 0..cols {
        let mut idx = col;
        let mut t = vec![0usize; k - 1];
        for slot in t.iter_mut().rev() {
            *slot = idx % h + 1;
            idx /= h;
        }
        let c = big_to_qmodz(&k_const[col])?;
        let v: Result<Vec<i64>, EngineError> = (0..s)
            .map(|j| t_char[j][col].to_i64().ok_or(EngineError::Overflow))
            .collect();
        w.set(
            &t,
            CochainValue {
                c,
                v: ZVec::new(v?),
            },
        );
    }
    debug_assert_eq!(coboundary(group, &w), *z, "witness must re-verify");
    Ok(Some(w))
}

/// A finite abelian group presented by its invariant factors d₁ | d₂ | …
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CohomologyGroup {
    pub invariant_factors: Vec<u64>,
}

impl CohomologyGroup {
    pub fn trivial() -> Self {
        CohomologyGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl std::fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.invariant_factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", d)?;
        }
        write!(f, "]")
    }
}

/// Invariant factors of H^k(Γ, ℚ/ℤ) with trivial action, k ∈ {1,2,3}.
///
/// Every class has a representative with denominators dividing |Γ|, so
/// after scaling by |Γ| the group is the finite quotient of the lattice
/// `{x : D_k·x ≡ 0 mod |Γ|}` by the saturation of `im D_{k−1}` plus
/// `|Γ|·ℤⁿ`; Smith normal forms do the rest.
pub fn cohomology_group(group: &FiniteGroup, k: usize) -> Result<CohomologyGroup, EngineError> {
    if !(1..=3).contains(&k) {
        return Err(EngineError::UnsupportedDegree(k));
    }
    let g = BigInt::from(group.size());
    let dk = boundary_matrix(group, k);
    let n = dk.cols();
    let sm_k = snf::smith(&dk);

    // Basis of {x : D_k x ≡ 0 (mod |Γ|)}: columns of V scaled so the
    // diagonal constraints s_i·y_i ≡ 0 (mod |Γ|) hold.
    let mut kernel_mod = IntMat::zeros(n, n);
    for j in 0..n {
        let scale = if j < sm_k.rank {
            &g / sm_k.factors[j].gcd(&g)
        } else {
            BigInt::from(1)
        };
        for i in 0..n {
            kernel_mod.set(i, j, sm_k.v.get(i, j) * &scale);
        }
    }

    let prev = boundary_matrix(group, k - 1);
    let sm_prev = snf::smith(&prev);
    let sat = snf::saturation_basis(&sm_prev);

    let mut relations = IntMat::zeros(n, sat.len() + n);
    for (j, col) in sat.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            relations.set(i, j, v.clone());
        }
    }
    for i in 0..n {
        relations.set(i, sat.len() + i, g.clone());
    }

    // Express the relations in kernel coordinates.
    let sm_b = snf::smith(&kernel_mod);
    let mut x = IntMat::zeros(n, relations.cols());
    for j in 0..relations.cols() {
        let col = relations.column(j);
        let sol = snf::solve_integer(&sm_b, &col).expect("relations lie inside the kernel lattice");
        for (i, v) in sol.iter().enumerate() {
            x.set(i, j, v.clone());
        }
    }

    let sm_x = snf::smith(&x);
    assert_eq!(sm_x.rank, n, "quotient must be finite");
    let mut invariant_factors = Vec::new();
    for d in &sm_x.factors {
        let d = d.to_u64().ok_or(EngineError::Overflow)?;
        if d >= 2 {
            invariant_factors.push(d);
        }
    }
    Ok(CohomologyGroup { invariant_factors })
}

/// The torsor group H²(Γ, U(1)).
pub fn schur_multiplier(group: &FiniteGroup) -> Result<CohomologyGroup, EngineError> {
    cohomology_group(group, 2)
}

/// Trivial-module boundary of a constant pair table, evaluated at a triple.
pub fn delta2_const(
    group: &FiniteGroup,
    table: &Table2<QmodZ>,
    a: usize,
    b: usize,
    c: usize,
) -> QmodZ {
    *table.get(b, c) - *table.get(group.mul(b, a), c) + *table.get(a, group.mul(c, b))
        - *table.get(a, b)
}

/// Trivial-module boundary of an integer pair table, evaluated at a triple.
pub fn delta2_int(group: &FiniteGroup, table: &Table2<ZVec>, a: usize, b: usize, c: usize) -> ZVec {
    &(&(table.get(b, c) - table.get(group.mul(b, a), c)) + table.get(a, group.mul(c, b)))
        - table.get(a, b)
}

/// Trivial-module boundary of a 1-cochain of integer vectors.
pub fn delta1_int(group: &FiniteGroup, f: &[ZVec], a: usize, b: usize) -> ZVec {
    &(&f[b] - &f[group.mul(b, a)]) + &f[a]
}

/// Trivial-module boundary of a circle-valued 1-cochain.
pub fn delta1_const(group: &FiniteGroup, f: &[QmodZ], a: usize, b: usize) -> QmodZ {
    f[b] - f[group.mul(b, a)] + f[a]
}

/// Solve δt = table for an integer 1-cochain t: Γ → ℤⁿ, coordinatewise.
pub fn solve_integer_coboundary2(
    group: &FiniteGroup,
    table: &Table2<ZVec>,
    n: usize,
) -> Option<Vec<ZVec>> {
    let g = group.size();
    let h = g - 1;
    let d = boundary_matrix(group, 1);
    let sm = snf::smith(&d);
    let mut per_elem: Vec<Vec<i64>> = vec![Vec::with_capacity(n); g];
    for j in 0..n {
        let b: Vec<BigInt> = (0..h * h)
            .map(|row| BigInt::from(table.get(row / h + 1, row % h + 1).entries()[j]))
            .collect();
        let sol = snf::solve_integer(&sm, &b)?;
        per_elem[0].push(0);
        for (a, v) in sol.iter().enumerate() {
            per_elem[a + 1].push(v.to_i64()?);
        }
    }
    Some(per_elem.into_iter().map(ZVec::new).collect())
}

/// Solve δk = table for a circle-valued 1-cochain in the trivial module.
pub fn solve_const_coboundary2(group: &FiniteGroup, table: &Table2<QmodZ>) -> Option<Vec<QmodZ>> {
    let cochain = Cochain::const2(group, table).ok()?;
    match solve_coboundary(group, &cochain) {
        Ok(Some(w)) => Some(group.elements().map(|a| w.get(&[a]).c).collect()),
        _ => None,
    }
}
