//! Deterministic generators and the randomized self-test suite.
//!
//! Everything here is seeded: the same seed, sizes and sample count give
//! bit-identical objects and reports on every platform, which keeps the
//! command-line reports reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{boundary_matrix, delta2_const, is_cocycle, solve_coboundary};
use crate::duality::{dual_hom, dualize, is_cohomologous_dyn, validate_dyn, DynCocycle};
use crate::group::{product_cyclic, symmetric_s3, FiniteGroup, Side, Table2, TorusHom};
use crate::rational::{QmodZ, QmodZVec, ZVec};
use crate::snf;
use crate::triple::{
    cup3, delta_beta, exists_triple, lhat_star, order_change, sqcup, strictify, triple_to_dyn,
    triples_equivalent, validate_triple, PsiPart, TopTriple,
};

/// The named groups the randomized suites run over.
pub fn test_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z2", product_cyclic(&[2]).expect("cyclic")),
        ("Z3", product_cyclic(&[3]).expect("cyclic")),
        ("Z4", product_cyclic(&[4]).expect("cyclic")),
        ("Z2xZ2", product_cyclic(&[2, 2]).expect("cyclic")),
        ("S3", symmetric_s3()),
    ]
}

/// All homomorphisms Γ → ℚ/ℤ, listed as value vectors over the elements.
///
/// These are exactly the 1-cocycles of the trivial module with denominator
/// dividing |Γ|, read off the Smith form of the degree-1 boundary matrix.
pub fn enumerate_scalar_homs(group: &FiniteGroup) -> Vec<Vec<QmodZ>> {
    let g = group.size();
    let n = g - 1;
    let d1 = boundary_matrix(group, 1);
    let sm = snf::smith(&d1);
    assert_eq!(sm.rank, n, "finite groups admit no rational characters");
    let gg = BigInt::from(g);
    let counts: Vec<u64> = (0..n)
        .map(|i| sm.factors[i].gcd(&gg).to_u64().expect("small"))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0u64; n];
    loop {
        // y_i = choice_i · (g / gcd_i); hom values are (V·y)/g mod 1.
        let y: Vec<BigInt> = (0..n)
            .map(|i| BigInt::from(choice[i]) * (&gg / BigInt::from(counts[i])))
            .collect();
        let x = sm.v.mul_vec(&y);
        let mut values = vec![QmodZ::zero(); g];
        for (i, xi) in x.iter().enumerate() {
            let num = xi.mod_floor(&gg).to_i64().expect("small");
            values[i + 1] = QmodZ::from_parts(num, g as i64);
        }
        out.push(values);
        // odometer over the per-coordinate counts
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            choice[pos] += 1;
            if choice[pos] < counts[pos] {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// All rank-n homomorphisms as coordinatewise products of scalar ones.
pub fn enumerate_homs(group: &FiniteGroup, rank: usize, side: Side) -> Vec<TorusHom> {
    let scalars = enumerate_scalar_homs(group);
    let mut out = Vec::new();
    let mut pick = vec![0usize; rank];
    loop {
        let images: Vec<QmodZVec> = group
            .elements()
            .map(|a| QmodZVec::new(pick.iter().map(|&i| scalars[i][a]).collect()))
            .collect();
        out.push(
            TorusHom::new(group.clone(), rank, images, side)
                .expect("scalar homs assemble to a homomorphism"),
        );
        let mut pos = 0;
        loop {
            if pos == rank {
                return out;
            }
            pick[pos] += 1;
            if pick[pos] < scalars.len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
    }
}

pub fn random_hom(rng: &mut ChaCha8Rng, group: &FiniteGroup, rank: usize, side: Side) -> TorusHom {
    let scalars = enumerate_scalar_homs(group);
    let images: Vec<QmodZVec> = {
        let picks: Vec<usize> = (0..rank)
            .map(|_| rng.random_range(0..scalars.len()))
            .collect();
        group
            .elements()
            .map(|a| QmodZVec::new(picks.iter().map(|&i| scalars[i][a]).collect()))
            .collect()
    };
    TorusHom::new(group.clone(), rank, images, side).expect("homomorphism by construction")
}

fn random_qmodz(rng: &mut ChaCha8Rng, max_denom: i64) -> QmodZ {
    let den = rng.random_range(1..=max_denom);
    let num = rng.random_range(0..den);
    QmodZ::from_parts(num, den)
}

/// A random normalized circle-valued 1-cochain.
pub fn random_one_cochain(rng: &mut ChaCha8Rng, group: &FiniteGroup, max_denom: i64) -> Vec<QmodZ> {
    group
        .elements()
        .map(|a| {
            if a == 0 {
                QmodZ::zero()
            } else {
                random_qmodz(rng, max_denom)
            }
        })
        .collect()
}

/// A random normalized integer 1-cochain with small entries.
pub fn random_int_cochain(rng: &mut ChaCha8Rng, group: &FiniteGroup, rank: usize) -> Vec<ZVec> {
    group
        .elements()
        .map(|a| {
            if a == 0 {
                ZVec::zeros(rank)
            } else {
                ZVec::new((0..rank).map(|_| rng.random_range(-2..=2)).collect())
            }
        })
        .collect()
}

/// A random trivial-module 2-cocycle: a coboundary plus, on the Klein four
/// group, possibly the bilinear representative of the nontrivial class.
pub fn random_const_cocycle(
    rng: &mut ChaCha8Rng,
    group: &FiniteGroup,
    max_denom: i64,
) -> Table2<QmodZ> {
    let g = group.size();
    let kk = random_one_cochain(rng, group, max_denom);
    let mut table = Table2::from_fn(g, |a, b| crate::cohomology::delta1_const(group, &kk, a, b));
    if g == 4 && group.elements().skip(1).all(|a| group.order_of(a) == 2) && rng.random_bool(0.5) {
        let coord = |e: usize| (e / 2, e % 2);
        for a in 0..4 {
            for b in 0..4 {
                let (_, x2) = coord(a);
                let (y1, _) = coord(b);
                let v = *table.get(a, b) + QmodZ::from_parts((x2 * y1) as i64, 2);
                table.set(a, b, v);
            }
        }
    }
    debug_assert!(group.elements().all(|a| {
        group.elements().all(|b| {
            group
                .elements()
                .all(|c| delta2_const(group, &table, a, b, c).is_zero())
        })
    }));
    table
}

/// A random valid dynamical cocycle for the given χ.
///
/// Starts from zero or from an order-1 existence witness (when the cup
/// obstruction allows one), then shifts by a random coboundary and a
/// random constant cocycle; every step preserves validity.
pub fn random_dyn(rng: &mut ChaCha8Rng, chi: &TorusHom) -> DynCocycle {
    let group = chi.group().clone();
    let mut base = DynCocycle::zero(chi.clone());
    if rng.random_bool(0.7) {
        let chihat = random_hom(rng, &group, chi.rank(), chi.side().flipped());
        if let Ok(Some(t)) = exists_triple(chi, &chihat, 1) {
            base = triple_to_dyn(&t).expect("existence witness is strict");
        }
    }
    let k = random_one_cochain(rng, &group, 12);
    let t = random_int_cochain(rng, &group, chi.rank());
    let mut d = base.apply_coboundary(&k, &t);
    let s = random_const_cocycle(rng, &group, 8);
    let g = group.size();
    let c = Table2::from_fn(g, |a, b| *d.c().get(a, b) + *s.get(a, b));
    d = DynCocycle::new(d.hom().clone(), c, d.m().clone(), d.w().to_vec())
        .expect("shapes preserved");
    debug_assert!(validate_dyn(&d).is_ok());
    d
}

/// Shift both halves of a triple by independent module coboundaries; the
/// result is an equivalent (usually non-strict) triple.
pub fn perturb_triple(rng: &mut ChaCha8Rng, t: &TopTriple) -> TopTriple {
    let group = t.chi.group().clone();
    let g = group.size();
    let n = t.chi.rank();
    let (k1, t1) = (
        random_one_cochain(rng, &group, 8),
        random_int_cochain(rng, &group, n),
    );
    let (k2, t2) = (
        random_one_cochain(rng, &group, 8),
        random_int_cochain(rng, &group, n),
    );
    let psi = PsiPart {
        c: Table2::from_fn(g, |a, b| {
            *t.psi.c.get(a, b)
                + crate::cohomology::delta1_const(&group, &k1, a, b)
                + crate::rational::pair(&t1[b], t.chi.image(a)).expect("rank")
        }),
        m: Table2::from_fn(g, |a, b| {
            t.psi.m.get(a, b) + &crate::cohomology::delta1_int(&group, &t1, a, b)
        }),
    };
    let psihat = PsiPart {
        c: Table2::from_fn(g, |a, b| {
            *t.psihat.c.get(a, b)
                + crate::cohomology::delta1_const(&group, &k2, a, b)
                + crate::rational::pair(&t2[b], t.chihat.image(a)).expect("rank")
        }),
        m: Table2::from_fn(g, |a, b| {
            t.psihat.m.get(a, b) + &crate::cohomology::delta1_int(&group, &t2, a, b)
        }),
    };
    TopTriple {
        order: t.order,
        chi: t.chi.clone(),
        chihat: t.chihat.clone(),
        psi,
        psihat,
    }
}

/// Random rational torus point with entries of denominator ≤ `max_denom`.
pub fn random_point(rng: &mut ChaCha8Rng, rank: usize, max_denom: i64) -> QmodZVec {
    QmodZVec::new((0..rank).map(|_| random_qmodz(rng, max_denom)).collect())
}

/// Outcome of one self-test case.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Deterministic report of the randomized suite.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub samples: usize,
    pub cases: Vec<CaseResult>,
    pub all_pass: bool,
}

fn case(name: &str, pass: bool, detail: String) -> CaseResult {
    CaseResult {
        name: name.to_string(),
        pass,
        detail,
    }
}

fn involution_case(seed: u64, samples: usize, name: &str, group: &FiniteGroup) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1);
    let mut failures = 0usize;
    for i in 0..samples {
        let rank = 1 + (i % 2);
        let chi = random_hom(&mut rng, group, rank, Side::Torus);
        let d = random_dyn(&mut rng, &chi);
        let dd = dualize(&dualize(&d));
        let hom_ok = dual_hom(&dualize(&d)).images() == d.hom().images();
        let class_ok = matches!(is_cohomologous_dyn(&dd, &d), Ok(Some(_)));
        if !(hom_ok && class_ok && validate_dyn(&dd).is_ok()) {
            failures += 1;
        }
    }
    case(
        &format!("duality-involution/{name}"),
        failures == 0,
        format!("{samples} samples, {failures} failures"),
    )
}

fn beta_case(seed: u64, samples: usize, name: &str, group: &FiniteGroup) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2);
    let mut failures = 0usize;
    let chi = random_hom(&mut rng, group, 1, Side::Torus);
    let chihat = random_hom(&mut rng, group, 1, Side::DualTorus);
    let Ok(bi) = sqcup(&chi, &chihat) else {
        return case(
            &format!("beta-identity/{name}"),
            false,
            "sqcup failed".into(),
        );
    };
    for _ in 0..samples {
        let a = rng.random_range(0..group.size());
        let b = rng.random_range(0..group.size());
        let z = random_point(&mut rng, 1, 60);
        let zhat = random_point(&mut rng, 1, 60);
        let lhs = delta_beta(&chi, &chihat, a, b, &z, &zhat).expect("ranks match");
        let rhs = *bi.g.get(a, b) - crate::rational::pair(&(-bi.u.get(a, b)), &z).expect("rank")
            + crate::rational::pair(bi.v.get(a, b), &zhat).expect("rank");
        if lhs != rhs {
            failures += 1;
        }
    }
    case(
        &format!("beta-identity/{name}"),
        failures == 0,
        format!("{samples} points, {failures} failures"),
    )
}

fn roundtrip_case(seed: u64, samples: usize, name: &str, group: &FiniteGroup) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
    let mut failures = 0usize;
    let mut ran = 0usize;
    for _ in 0..samples {
        let chi = random_hom(&mut rng, group, 1, Side::Torus);
        let d = random_dyn(&mut rng, &chi);
        let t = crate::triple::dyn_to_triple(&d);
        let Ok(strict) = strictify(&t) else {
            failures += 1;
            continue;
        };
        let Ok(d2) = triple_to_dyn(&strict) else {
            failures += 1;
            continue;
        };
        if !matches!(is_cohomologous_dyn(&d2, &d), Ok(Some(_))) {
            failures += 1;
        }
        ran += 1;
    }
    case(
        &format!("round-trip-dyn/{name}"),
        failures == 0 && ran == samples,
        format!("{ran} samples, {failures} failures"),
    )
}

fn order_change_case(seed: u64, samples: usize, name: &str, group: &FiniteGroup) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
    let mut failures = 0usize;
    let mut ran = 0usize;
    for _ in 0..samples {
        let chi = random_hom(&mut rng, group, 1, Side::Torus);
        let chihat = random_hom(&mut rng, group, 1, Side::DualTorus);
        let order = rng.random_range(1..=3i64);
        let Ok(Some(t)) = exists_triple(&chi, &chihat, order) else {
            continue;
        };
        ran += 1;
        let Ok(pushed) = lhat_star(&t) else {
            failures += 1;
            continue;
        };
        let ok = order_change(1, order, &pushed, &chi, &chihat)
            .and_then(|back| triples_equivalent(&back, &t));
        if !matches!(ok, Ok(true)) {
            failures += 1;
        }
    }
    case(
        &format!("order-change-inverse/{name}"),
        failures == 0,
        format!("{ran} applicable samples, {failures} failures"),
    )
}

fn solver_case(seed: u64, samples: usize, name: &str, group: &FiniteGroup) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
    let mut failures = 0usize;
    for _ in 0..samples {
        let table = random_const_cocycle(&mut rng, group, 6);
        let Ok(z) = crate::cohomology::Cochain::const2(group, &table) else {
            failures += 1;
            continue;
        };
        if !is_cocycle(group, &z) {
            failures += 1;
            continue;
        }
        match solve_coboundary(group, &z) {
            Ok(Some(w)) => {
                if crate::cohomology::coboundary(group, &w) != z {
                    failures += 1;
                }
            }
            Ok(None) => {
                // only the Klein four class may be unsolvable here
                let klein =
                    group.size() == 4 && group.elements().skip(1).all(|a| group.order_of(a) == 2);
                if !klein {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    case(
        &format!("solver-witness/{name}"),
        failures == 0,
        format!("{samples} samples, {failures} failures"),
    )
}

fn existence_case(seed: u64, _samples: usize, name: &str, group: &FiniteGroup) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6);
    let mut failures = 0usize;
    let mut checked = 0usize;
    for _ in 0..8 {
        let chi = random_hom(&mut rng, group, 1, Side::Torus);
        let chihat = random_hom(&mut rng, group, 1, Side::DualTorus);
        for order in 0..=3i64 {
            let by_triple = exists_triple(&chi, &chihat, order);
            let cup = cup3(&chi, &chihat).expect("pair checked");
            let scaled = crate::cohomology::Cochain::const3(group, |a, b, c| {
                cup.get(&[a, b, c]).c.scale(order)
            })
            .expect("normalized");
            let by_cup = solve_coboundary(group, &scaled);
            match (by_triple, by_cup) {
                (Ok(Some(t)), Ok(Some(_))) => {
                    checked += 1;
                    if validate_triple(&t).is_err() {
                        failures += 1;
                    }
                }
                (Ok(None), Ok(None)) => checked += 1,
                _ => failures += 1,
            }
        }
    }
    case(
        &format!("existence-criterion/{name}"),
        failures == 0,
        format!("{checked} pairs checked, {failures} failures"),
    )
}

/// Run the deterministic randomized suite.
///
/// `sizes` filters the test groups by |Γ| (empty means all); `jobs > 1`
/// runs group/case pairs on threads, with results aggregated in a fixed
/// order so the report is identical regardless of parallelism.
pub fn run_selftest(seed: u64, samples: usize, sizes: &[usize], jobs: usize) -> SelftestReport {
    let groups: Vec<(&'static str, FiniteGroup)> = test_groups()
        .into_iter()
        .filter(|(_, g)| sizes.is_empty() || sizes.contains(&g.size()))
        .collect();
    type CaseFn = fn(u64, usize, &str, &FiniteGroup) -> CaseResult;
    let case_fns: Vec<(usize, CaseFn)> = vec![
        (0, involution_case),
        (1, beta_case),
        (2, roundtrip_case),
        (3, order_change_case),
        (4, solver_case),
        (5, existence_case),
    ];
    let mut tasks: Vec<(usize, CaseFn, &'static str, &FiniteGroup, u64)> = Vec::new();
    for (gi, (name, group)) in groups.iter().enumerate() {
        for &(ci, f) in &case_fns {
            // one deterministic stream per (case, group) pair
            let task_seed = seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add((ci as u64) << 32 | gi as u64);
            tasks.push((tasks.len(), f, name, group, task_seed));
        }
    }
    let mut results: Vec<(usize, CaseResult)> = if jobs <= 1 {
        tasks
            .iter()
            .map(|&(i, f, name, group, s)| (i, f(s, samples, name, group)))
            .collect()
    } else {
        std::thread::scope(|scope| {
            let chunks: Vec<_> = tasks.chunks(tasks.len().div_ceil(jobs)).collect();
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .map(|&(i, f, name, group, s)| (i, f(s, samples, name, group)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    results.sort_by_key(|(i, _)| *i);
    let cases: Vec<CaseResult> = results.into_iter().map(|(_, c)| c).collect();
    let all_pass = cases.iter().all(|c| c.pass);
    SelftestReport {
        seed,
        samples,
        cases,
        all_pass,
    }
}
