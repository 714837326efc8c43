//! Brute-force oracles shared by the integration suites.
//!
//! Everything here works on raw numerator vectors with direct modular
//! arithmetic and the multiplication table only — no Smith forms, no
//! engine calls — so it can sit on the other side of a dual-route check.

use std::collections::{BTreeMap, HashSet};

use tdual::FiniteGroup;

/// Cell index of the non-identity pair (a,b), row-major over 1..g.
pub fn cell(g: usize, a: usize, b: usize) -> Option<usize> {
    if a == 0 || b == 0 {
        None
    } else {
        Some((a - 1) * (g - 1) + (b - 1))
    }
}

/// All normalized 2-cochains with values in (1/q)ℤ/ℤ satisfying the
/// cocycle identity, as numerator vectors over denominator `q`.
///
/// Backtracking with per-cell constraint checks; a constraint
/// z(b,c) − z(ba,c) + z(a,cb) − z(a,b) ≡ 0 (mod q) is evaluated as soon
/// as its last cell is assigned.
pub fn enumerate_cocycles_direct(group: &FiniteGroup, q: u32) -> Vec<Vec<u32>> {
    let g = group.size();
    let h = g - 1;
    let cells = h * h;
    let mut by_last: Vec<Vec<Vec<(usize, i64)>>> = vec![Vec::new(); cells.max(1)];
    for a in 1..g {
        for b in 1..g {
            for c in 1..g {
                let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
                let mut add = |cell_idx: Option<usize>, coeff: i64| {
                    if let Some(i) = cell_idx {
                        *terms.entry(i).or_insert(0) += coeff;
                    }
                };
                add(cell(g, b, c), 1);
                add(cell(g, group.mul(b, a), c), -1);
                add(cell(g, a, group.mul(c, b)), 1);
                add(cell(g, a, b), -1);
                let terms: Vec<(usize, i64)> =
                    terms.into_iter().filter(|&(_, coeff)| coeff != 0).collect();
                if let Some(&(last, _)) = terms.last() {
                    by_last[last].push(terms);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut values = vec![0u32; cells];
    fn satisfied(values: &[u32], terms: &[(usize, i64)], q: i64) -> bool {
        let total: i64 = terms
            .iter()
            .map(|&(i, coeff)| coeff * values[i] as i64)
            .sum();
        total.rem_euclid(q) == 0
    }
    fn recurse(
        pos: usize,
        cells: usize,
        q: u32,
        values: &mut Vec<u32>,
        by_last: &[Vec<Vec<(usize, i64)>>],
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == cells {
            out.push(values.clone());
            return;
        }
        for v in 0..q {
            values[pos] = v;
            if by_last[pos].iter().all(|t| satisfied(values, t, q as i64)) {
                recurse(pos + 1, cells, q, values, by_last, out);
            }
        }
        values[pos] = 0;
    }
    if cells == 0 {
        return vec![Vec::new()];
    }
    recurse(0, cells, q, &mut values, &by_last, &mut out);
    out
}

/// All coboundaries δk of 1-cochains with values in (1/d)ℤ/ℤ, as
/// numerator vectors over denominator `d`.
pub fn coboundary_set_direct(group: &FiniteGroup, d: u32) -> HashSet<Vec<u32>> {
    let g = group.size();
    let h = g - 1;
    let mut set = HashSet::new();
    let mut k = vec![0u32; g];
    loop {
        let mut delta = vec![0u32; h * h];
        for a in 1..g {
            for b in 1..g {
                let ba = group.mul(b, a);
                let value = (k[b] as i64 - k[ba] as i64 + k[a] as i64).rem_euclid(d as i64) as u32;
                delta[cell(g, a, b).expect("non-identity")] = value;
            }
        }
        set.insert(delta);
        // odometer over the non-identity values of k
        let mut pos = 1;
        loop {
            if pos == g {
                return set;
            }
            k[pos] += 1;
            if k[pos] < d {
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
    }
}

/// Witness denominator bound: if a (1/q)-valued 2-cocycle is a coboundary
/// of any rational 1-cochain, it is one of a cochain with denominator
/// dividing |Γ|·lcm(q, |Γ|).
pub fn witness_denominator(group: &FiniteGroup, q: u32) -> u32 {
    let g = group.size() as u32;
    g * num_integer::lcm(q, g)
}

/// Classes of (1/q)-valued 2-cocycles modulo rational coboundaries:
/// the class count and the sorted multiset of class orders.
pub fn class_census(group: &FiniteGroup, q: u32) -> (usize, Vec<u32>) {
    let d = witness_denominator(group, q);
    let scale = d / q;
    let cocycles = enumerate_cocycles_direct(group, q);
    let bset = coboundary_set_direct(group, d);
    let is_coboundary = |scaled: &[u32]| bset.contains(scaled);
    let mut reps: Vec<Vec<u32>> = Vec::new();
    let mut orders = Vec::new();
    for z in &cocycles {
        let scaled: Vec<u32> = z.iter().map(|&v| v * scale).collect();
        let known = reps.iter().any(|r| {
            let diff: Vec<u32> = scaled
                .iter()
                .zip(r)
                .map(|(&x, &y)| (x as i64 - y as i64).rem_euclid(d as i64) as u32)
                .collect();
            is_coboundary(&diff)
        });
        if known {
            continue;
        }
        let order = (1..=q)
            .find(|k| {
                let multiple: Vec<u32> = scaled
                    .iter()
                    .map(|&v| (v as u64 * *k as u64 % d as u64) as u32)
                    .collect();
                is_coboundary(&multiple)
            })
            .expect("class order divides q when |Γ| divides q");
        orders.push(order);
        reps.push(scaled);
    }
    orders.sort_unstable();
    (reps.len(), orders)
}

/// Element-order multiset of the abelian group ⊕ᵢ ℤ/dᵢ.
pub fn abelian_order_multiset(factors: &[u64]) -> Vec<u32> {
    let mut orders = vec![1u64];
    for &d in factors {
        let mut next = Vec::with_capacity(orders.len() * d as usize);
        for &o in &orders {
            for x in 0..d {
                let ord_x = d / num_integer::gcd(x, d).max(1);
                let ord_x = if x == 0 { 1 } else { ord_x };
                next.push(num_integer::lcm(o, ord_x));
            }
        }
        orders = next;
    }
    let mut out: Vec<u32> = orders.into_iter().map(|o| o as u32).collect();
    out.sort_unstable();
    out
}
