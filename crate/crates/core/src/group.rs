//! Finite groups as multiplication tables and homomorphisms into tori.
//!
//! The identity is always element 0 and all tables are total arrays, so
//! serialization and test goldens are deterministic. A [`TorusHom`] carries
//! its group by value; every image lives in (ℚ/ℤ)ⁿ for the fixed rank.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{QmodZVec, ZVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group size must be positive")]
    SizeZero,
    #[error("multiplication table must be {size}x{size}")]
    BadTableShape { size: usize },
    #[error("table entry {value} at ({row},{col}) out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("element 0 is not a two-sided identity (fails at {at})")]
    MissingIdentity { at: usize },
    #[error("multiplication is not associative at ({a},{b},{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("element {elem} has no two-sided inverse")]
    MissingInverse { elem: usize },
    #[error("empty list of cyclic orders")]
    EmptyOrders,
    #[error("cyclic order must be >= 1")]
    BadOrder,
    #[error("homomorphism image of the identity is nonzero")]
    IdentityImageNonzero,
    #[error("additivity fails at pair ({a},{b})")]
    NotAdditive { a: usize, b: usize },
    #[error("image of element {elem} has rank {got}, expected {want}")]
    RankMismatch {
        elem: usize,
        got: usize,
        want: usize,
    },
    #[error("element {elem} is not generated by the given images")]
    NotGenerated { elem: usize },
    #[error("conflicting images derived for element {elem}")]
    ConflictingImages { elem: usize },
    #[error("element index {index} out of range for group of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("groups differ between the two homomorphisms")]
    GroupMismatch,
}

/// A finite group given by its multiplication table.
///
/// `mul(a, b)` is the product written `ab`; the identity is element 0.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    size: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(|G|={})", self.size)
    }
}

impl FiniteGroup {
    /// Validate a multiplication table and derive the inverse table.
    pub fn from_table(size: usize, table: &[Vec<usize>]) -> Result<Self, GroupError> {
        if size == 0 {
            return Err(GroupError::SizeZero);
        }
        if table.len() != size || table.iter().any(|row| row.len() != size) {
            return Err(GroupError::BadTableShape { size });
        }
        let mut mul = vec![0usize; size * size];
        for (r, row) in table.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(GroupError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                    });
                }
                mul[r * size + c] = v;
            }
        }
        for a in 0..size {
            if mul[a] != a || mul[a * size] != a {
                return Err(GroupError::MissingIdentity { at: a });
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab = mul[a * size + b];
                for c in 0..size {
                    if mul[ab * size + c] != mul[a * size + mul[b * size + c]] {
                        return Err(GroupError::NonAssociative { a, b, c });
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; size];
        for a in 0..size {
            match (0..size).find(|&b| mul[a * size + b] == 0 && mul[b * size + a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(GroupError::MissingInverse { elem: a }),
            }
        }
        Ok(FiniteGroup { size, mul, inv })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The product `ab`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.size
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.order_of(a))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// Direct product of cyclic groups with lexicographic element indexing.
///
/// The element with coordinates `(x₁,…,x_k)` has index `Σ xᵢ·∏_{j>i} o_j`;
/// the identity is index 0 and generator `i` is the coordinate vector `eᵢ`.
pub fn product_cyclic(orders: &[usize]) -> Result<FiniteGroup, GroupError> {
    if orders.is_empty() {
        return Err(GroupError::EmptyOrders);
    }
    if orders.contains(&0) {
        return Err(GroupError::BadOrder);
    }
    let size: usize = orders.iter().product();
    let coords = |mut idx: usize| -> Vec<usize> {
        let mut xs = vec![0; orders.len()];
        for (i, &o) in orders.iter().enumerate().rev() {
            xs[i] = idx % o;
            idx /= o;
        }
        xs
    };
    let index =
        |xs: &[usize]| -> usize { xs.iter().zip(orders).fold(0, |acc, (&x, &o)| acc * o + x) };
    let table: Vec<Vec<usize>> = (0..size)
        .map(|a| {
            let xa = coords(a);
            (0..size)
                .map(|b| {
                    let xb = coords(b);
                    let sum: Vec<usize> = xa
                        .iter()
                        .zip(&xb)
                        .zip(orders)
                        .map(|((&x, &y), &o)| (x + y) % o)
                        .collect();
                    index(&sum)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(size, &table)
}

/// Index of the `i`-th coordinate generator of a `product_cyclic` group.
pub fn cyclic_generator_index(orders: &[usize], i: usize) -> usize {
    orders[i + 1..].iter().product()
}

/// The symmetric group on three letters as a composition table.
///
/// Elements are the permutations of `{0,1,2}` listed with the identity
/// first; `mul(a,b)` composes `a` after `b`.
pub fn symmetric_s3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [0, 2, 1],
        [2, 1, 0],
        [1, 0, 2],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] { [p[q[0]], p[q[1]], p[q[2]]] };
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let pq = compose(p, q);
                    perms.iter().position(|r| *r == pq).unwrap()
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(6, &table).expect("S3 table is a group")
}

/// Which torus a homomorphism lands in; interpretation only.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Torus,
    DualTorus,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Torus => Side::DualTorus,
            Side::DualTorus => Side::Torus,
        }
    }
}

/// A homomorphism χ: Γ → (ℚ/ℤ)ⁿ, one image per group element.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusHom {
    group: FiniteGroup,
    rank: usize,
    images: Vec<QmodZVec>,
    side: Side,
}

impl fmt::Debug for TorusHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusHom(|G|={}, n={}, [", self.group.size, self.rank)?;
        for a in self.group.elements() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.images[a])?;
        }
        write!(f, "])")
    }
}

impl TorusHom {
    /// Validate the homomorphism property on all pairs.
    pub fn new(
        group: FiniteGroup,
        rank: usize,
        images: Vec<QmodZVec>,
        side: Side,
    ) -> Result<Self, GroupError> {
        if images.len() != group.size() {
            return Err(GroupError::BadTableShape { size: group.size() });
        }
        for (elem, im) in images.iter().enumerate() {
            if im.len() != rank {
                return Err(GroupError::RankMismatch {
                    elem,
                    got: im.len(),
                    want: rank,
                });
            }
        }
        if !images[0].is_zero() {
            return Err(GroupError::IdentityImageNonzero);
        }
        for a in group.elements() {
            for b in group.elements() {
                if images[group.mul(a, b)] != &images[a] + &images[b] {
                    return Err(GroupError::NotAdditive { a, b });
                }
            }
        }
        Ok(TorusHom {
            group,
            rank,
            images,
            side,
        })
    }

    /// Extend images given on a generating subset to the whole group.
    ///
    /// Starts from the identity and closes under products; errors when the
    /// given elements do not generate or when derived images conflict.
    pub fn from_partial(
        group: FiniteGroup,
        rank: usize,
        given: &[(usize, QmodZVec)],
        side: Side,
    ) -> Result<Self, GroupError> {
        let size = group.size();
        for &(elem, ref im) in given {
            if elem >= size {
                return Err(GroupError::ElementOutOfRange { index: elem, size });
            }
            if im.len() != rank {
                return Err(GroupError::RankMismatch {
                    elem,
                    got: im.len(),
                    want: rank,
                });
            }
        }
        let mut images: Vec<Option<QmodZVec>> = vec![None; size];
        images[0] = Some(QmodZVec::zeros(rank));
        for &(elem, ref im) in given {
            match &images[elem] {
                Some(existing) if existing != im => {
                    return Err(GroupError::ConflictingImages { elem })
                }
                _ => images[elem] = Some(im.clone()),
            }
        }
        loop {
            let known: Vec<usize> = (0..size).filter(|&a| images[a].is_some()).collect();
            let mut changed = false;
            for &a in &known {
                for &b in &known {
                    let ab = group.mul(a, b);
                    let derived = images[a].as_ref().unwrap() + images[b].as_ref().unwrap();
                    match &images[ab] {
                        Some(existing) => {
                            if *existing != derived {
                                return Err(GroupError::ConflictingImages { elem: ab });
                            }
                        }
                        None => {
                            images[ab] = Some(derived);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(elem) = (0..size).find(|&a| images[a].is_none()) {
            return Err(GroupError::NotGenerated { elem });
        }
        Self::new(
            group,
            rank,
            images.into_iter().map(Option::unwrap).collect(),
            side,
        )
    }

    /// The trivial homomorphism.
    pub fn trivial(group: FiniteGroup, rank: usize, side: Side) -> Self {
        let images = vec![QmodZVec::zeros(rank); group.size()];
        TorusHom {
            group,
            rank,
            images,
            side,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn image(&self, a: usize) -> &QmodZVec {
        &self.images[a]
    }

    pub fn images(&self) -> &[QmodZVec] {
        &self.images
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(QmodZVec::is_zero)
    }

    /// The pointwise multiple k·χ.
    pub fn scale(&self, k: i64) -> TorusHom {
        TorusHom {
            group: self.group.clone(),
            rank: self.rank,
            images: self.images.iter().map(|im| im.scale(k)).collect(),
            side: self.side,
        }
    }

    /// Pointwise sum; both sides must share group and rank.
    pub fn add(&self, other: &TorusHom) -> Result<TorusHom, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        if self.rank != other.rank {
            return Err(GroupError::RankMismatch {
                elem: 0,
                got: other.rank,
                want: self.rank,
            });
        }
        Ok(TorusHom {
            group: self.group.clone(),
            rank: self.rank,
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a + b)
                .collect(),
            side: self.side,
        })
    }

    pub fn with_side(&self, side: Side) -> TorusHom {
        TorusHom {
            side,
            ..self.clone()
        }
    }
}

/// A total table over ordered pairs of group elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Table2<T> {
    size: usize,
    data: Vec<T>,
}

impl<T: Clone> Table2<T> {
    pub fn filled(size: usize, value: T) -> Self {
        Table2 {
            size,
            data: vec![value; size * size],
        }
    }
}

impl<T> Table2<T> {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                data.push(f(a, b));
            }
        }
        Table2 { size, data }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> &T {
        &self.data[a * self.size + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: T) {
        self.data[a * self.size + b] = value;
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Table2<U> {
        Table2 {
            size: self.size,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(i, t)| (i / self.size, i % self.size, t))
    }
}

/// The integer 2-cocycle η(a,b) = σ(χ(b)) − σ(χ(ba)) + σ(χ(a)) ∈ ℤⁿ
/// measuring the failure of the section σ∘χ to be a homomorphism.
///
/// Integrality is automatic: the three lifts project to χ(b) − χ(ba) + χ(a) = 0.
pub fn bockstein(chi: &TorusHom) -> Table2<ZVec> {
    let g = chi.group();
    Table2::from_fn(g.size(), |a, b| {
        let ba = g.mul(b, a);
        let lift = |e: usize| crate::rational::section_lift(chi.image(e));
        let combo = &(&lift(b) - &lift(ba)) + &lift(a);
        combo
            .to_zvec()
            .expect("bockstein combination is integral by construction")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::QmodZ;

    fn qv(entries: &[(i64, i64)]) -> QmodZVec {
        QmodZVec::new(
            entries
                .iter()
                .map(|&(n, d)| QmodZ::from_parts(n, d))
                .collect(),
        )
    }

    #[test]
    fn z2_table_is_valid() {
        let g = FiniteGroup::from_table(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.order_of(1), 2);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = FiniteGroup::from_table(2, &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::MissingInverse { elem: 1 });
    }

    #[test]
    fn missing_identity_is_reported() {
        let err = FiniteGroup::from_table(2, &[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::MissingIdentity { .. }));
    }

    #[test]
    fn non_associative_is_reported() {
        // Latin square with identity that is not a group (order 5 loop).
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(5, &table).unwrap_err();
        assert!(matches!(err, GroupError::NonAssociative { .. }));
    }

    #[test]
    fn s3_composition_table_is_a_group() {
        let g = symmetric_s3();
        assert_eq!(g.size(), 6);
        assert!(!g.is_abelian());
        let orders: Vec<usize> = g.elements().map(|a| g.order_of(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
    }

    #[test]
    fn product_cyclic_klein_four() {
        let g = product_cyclic(&[2, 2]).unwrap();
        assert_eq!(g.size(), 4);
        for a in 1..4 {
            assert_eq!(g.order_of(a), 2);
        }
    }

    #[test]
    fn product_cyclic_2_4_element_orders() {
        let g = product_cyclic(&[2, 4]).unwrap();
        assert_eq!(g.size(), 8);
        let mut orders: Vec<usize> = g.elements().map(|a| g.order_of(a)).collect();
        orders.sort_unstable();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 4]);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn hom_on_z2_is_valid() {
        let g = product_cyclic(&[2]).unwrap();
        let chi = TorusHom::new(g, 1, vec![qv(&[(0, 1)]), qv(&[(1, 2)])], Side::Torus).unwrap();
        assert_eq!(chi.image(1), &qv(&[(1, 2)]));
    }

    #[test]
    fn order_obstruction_is_caught() {
        let g = product_cyclic(&[3]).unwrap();
        let images = vec![qv(&[(0, 1)]), qv(&[(1, 2)]), qv(&[(0, 1)])];
        let err = TorusHom::new(g, 1, images, Side::Torus).unwrap_err();
        assert!(matches!(err, GroupError::NotAdditive { .. }));
    }

    #[test]
    fn s3_hom_factors_through_abelianization() {
        let g = symmetric_s3();
        // transpositions (indices 3,4,5) map to 1/2, 3-cycles (1,2) to 0.
        let images = vec![
            qv(&[(0, 1)]),
            qv(&[(0, 1)]),
            qv(&[(0, 1)]),
            qv(&[(1, 2)]),
            qv(&[(1, 2)]),
            qv(&[(1, 2)]),
        ];
        let chi = TorusHom::new(g, 1, images, Side::Torus).unwrap();
        assert!(!chi.is_trivial());
    }

    #[test]
    fn partial_images_extend_over_product() {
        let g = product_cyclic(&[2, 4]).unwrap();
        let gen0 = cyclic_generator_index(&[2, 4], 0);
        let gen1 = cyclic_generator_index(&[2, 4], 1);
        let chi = TorusHom::from_partial(
            g,
            1,
            &[(gen0, qv(&[(1, 2)])), (gen1, qv(&[(1, 4)]))],
            Side::Torus,
        )
        .unwrap();
        // element (1,1) has index gen0 + gen1 and image 1/2 + 1/4.
        assert_eq!(chi.image(gen0 + gen1), &qv(&[(3, 4)]));
    }

    #[test]
    fn partial_images_must_generate() {
        let g = product_cyclic(&[2, 2]).unwrap();
        let err = TorusHom::from_partial(g, 1, &[(1, qv(&[(1, 2)]))], Side::Torus).unwrap_err();
        assert!(matches!(err, GroupError::NotGenerated { .. }));
    }

    #[test]
    fn bockstein_on_z2() {
        let g = product_cyclic(&[2]).unwrap();
        let chi = TorusHom::new(g, 1, vec![qv(&[(0, 1)]), qv(&[(1, 2)])], Side::Torus).unwrap();
        let eta = bockstein(&chi);
        assert_eq!(eta.get(1, 1), &ZVec::new(vec![1]));
        assert_eq!(eta.get(0, 1), &ZVec::new(vec![0]));
        assert_eq!(eta.get(1, 0), &ZVec::new(vec![0]));
    }

    #[test]
    fn bockstein_on_z4() {
        let g = product_cyclic(&[4]).unwrap();
        let images = vec![qv(&[(0, 1)]), qv(&[(1, 4)]), qv(&[(1, 2)]), qv(&[(3, 4)])];
        let chi = TorusHom::new(g, 1, images, Side::Torus).unwrap();
        let eta = bockstein(&chi);
        // η(3,3) = σ(3/4) − σ(1/2) + σ(3/4) = 1.
        assert_eq!(eta.get(3, 3), &ZVec::new(vec![1]));
    }

    #[test]
    fn bockstein_of_trivial_hom_vanishes() {
        let g = product_cyclic(&[4]).unwrap();
        let chi = TorusHom::trivial(g, 2, Side::Torus);
        let eta = bockstein(&chi);
        assert!(eta.pairs().all(|(_, _, v)| v.is_zero()));
    }
}
