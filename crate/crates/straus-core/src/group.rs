//! Countable discrete abelian groups presented as restricted direct sums of
//! cyclic groups: elements with finite support, box subgroups, quotient
//! labels, and a fixed deterministic enumeration.
//!
//! A [`GroupDescriptor`] assigns a modulus to every coordinate (0 denotes a
//! ℤ factor). Elements store only their nonzero coordinates, reduced into
//! canonical range. Subgroups are restricted to "box" form — coordinatewise
//! congruence constraints — which is the only shape the constructions need.

use alloc::collections::BTreeMap;
use alloc::fmt;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigUint;

/// How coordinate moduli are generated from coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordinateRule {
    /// Finitely many coordinates; coordinate `i` has modulus `list[i]`.
    Finite(Vec<u64>),
    /// Infinitely many coordinates; the list is repeated periodically.
    Periodic(Vec<u64>),
}

/// A restricted direct sum `⊕ᵢ ℤ/nᵢℤ` (with `nᵢ = 0` meaning a ℤ factor).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    rule: CoordinateRule,
}

/// Errors from group construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// A modulus of 1 would add a trivial factor.
    TrivialModulus { index: usize },
    /// The coordinate rule has no entries.
    EmptyRule,
    /// Coordinate index outside the descriptor's dimension.
    InvalidCoordinate { index: usize },
    /// Stored value not in canonical range for its factor.
    NonCanonical { index: usize },
    /// Subgroup constraint does not divide the factor's modulus.
    ConstraintNotDivisor { index: usize },
    /// Operation requires a finite-index subgroup.
    InfiniteIndex,
    /// `lambda_j` requires the factor exponent to divide `k`.
    ExponentMismatch { index: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TrivialModulus { index } => {
                write!(f, "coordinate {index} has trivial modulus 1")
            }
            Self::EmptyRule => f.write_str("coordinate rule has no entries"),
            Self::InvalidCoordinate { index } => {
                write!(f, "coordinate {index} outside group dimension")
            }
            Self::NonCanonical { index } => {
                write!(f, "coordinate {index} carries a non-canonical value")
            }
            Self::ConstraintNotDivisor { index } => {
                write!(f, "constraint at coordinate {index} does not divide the modulus")
            }
            Self::InfiniteIndex => f.write_str("subgroup has infinite index"),
            Self::ExponentMismatch { index } => {
                write!(f, "factor exponent at coordinate {index} does not divide k")
            }
        }
    }
}

impl GroupDescriptor {
    pub fn new(rule: CoordinateRule) -> Result<Self, GroupError> {
        let list = match &rule {
            CoordinateRule::Finite(l) | CoordinateRule::Periodic(l) => l,
        };
        if list.is_empty() {
            return Err(GroupError::EmptyRule);
        }
        if let Some(i) = list.iter().position(|&n| n == 1) {
            return Err(GroupError::TrivialModulus { index: i });
        }
        Ok(Self { rule })
    }

    /// The group ℤ (a single infinite cyclic factor).
    pub fn integers() -> Self {
        Self { rule: CoordinateRule::Finite(alloc::vec![0]) }
    }

    /// `⊕ᵢ ℤ/mℤ` (or `⊕ᵢ ℤ` when `m = 0`).
    pub fn direct_sum_constant(m: u64) -> Result<Self, GroupError> {
        Self::new(CoordinateRule::Periodic(alloc::vec![m]))
    }

    /// Restricted direct sum with the modulus list repeated periodically.
    pub fn direct_sum_periodic(list: Vec<u64>) -> Result<Self, GroupError> {
        Self::new(CoordinateRule::Periodic(list))
    }

    /// Number of coordinates, or `None` for an infinite direct sum.
    pub fn dimension(&self) -> Option<usize> {
        match &self.rule {
            CoordinateRule::Finite(l) => Some(l.len()),
            CoordinateRule::Periodic(_) => None,
        }
    }

    /// Modulus of coordinate `i` (`0` = ℤ factor), or `None` beyond the dimension.
    pub fn modulus(&self, i: usize) -> Option<u64> {
        match &self.rule {
            CoordinateRule::Finite(l) => l.get(i).copied(),
            CoordinateRule::Periodic(l) => Some(l[i % l.len()]),
        }
    }

    pub fn rule(&self) -> &CoordinateRule {
        &self.rule
    }

    /// True if every factor is ℤ.
    pub fn is_free(&self) -> bool {
        let list = match &self.rule {
            CoordinateRule::Finite(l) | CoordinateRule::Periodic(l) => l,
        };
        list.iter().all(|&n| n == 0)
    }

    fn reduce_coord(&self, i: usize, v: i64) -> Result<i64, GroupError> {
        let n = self.modulus(i).ok_or(GroupError::InvalidCoordinate { index: i })?;
        if n == 0 {
            Ok(v)
        } else {
            Ok((v as i128).rem_euclid(n as i128) as i64)
        }
    }

    /// Builds an element from raw coordinate/value pairs, reducing values into
    /// canonical range and dropping zeros.
    pub fn element(&self, pairs: &[(usize, i64)]) -> Result<GroupElement, GroupError> {
        let mut support = BTreeMap::new();
        for &(i, v) in pairs {
            let r = self.reduce_coord(i, v)?;
            let cur = support.entry(i).or_insert(0i64);
            *cur = self.reduce_coord(i, *cur + r)?;
        }
        support.retain(|_, v| *v != 0);
        Ok(GroupElement { support })
    }

    pub fn validate_element(&self, x: &GroupElement) -> Result<(), GroupError> {
        for (&i, &v) in &x.support {
            let n = self.modulus(i).ok_or(GroupError::InvalidCoordinate { index: i })?;
            if v == 0 {
                return Err(GroupError::NonCanonical { index: i });
            }
            if n > 0 && !(1..n as i64).contains(&v) {
                return Err(GroupError::NonCanonical { index: i });
            }
        }
        Ok(())
    }

    /// Coordinatewise sum, reduced mod each factor.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut support = a.support.clone();
        for (&i, &v) in &b.support {
            let n = self.modulus(i).expect("coordinate validated");
            let e = support.entry(i).or_insert(0);
            let sum = *e as i128 + v as i128;
            *e = if n == 0 { sum as i64 } else { sum.rem_euclid(n as i128) as i64 };
        }
        support.retain(|_, v| *v != 0);
        GroupElement { support }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let support = a
            .support
            .iter()
            .map(|(&i, &v)| {
                let n = self.modulus(i).expect("coordinate validated");
                let w = if n == 0 { -v } else { (n as i64) - v };
                (i, w)
            })
            .collect();
        GroupElement { support }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `k`-fold sum of `a`.
    pub fn scalar_multiply(&self, k: u64, a: &GroupElement) -> GroupElement {
        let mut support = BTreeMap::new();
        for (&i, &v) in &a.support {
            let n = self.modulus(i).expect("coordinate validated");
            let prod = v as i128 * k as i128;
            let w = if n == 0 {
                i64::try_from(prod).expect("scalar multiple exceeds i64 range")
            } else {
                prod.rem_euclid(n as i128) as i64
            };
            if w != 0 {
                support.insert(i, w);
            }
        }
        GroupElement { support }
    }

    /// Deterministic repetition-free enumeration of all finitely supported
    /// elements. Coordinate-bounded blocks, lexicographic within a block;
    /// ℤ factors zig-zag (0, 1, −1, 2, −2, …). The first element is the
    /// identity.
    pub fn enumerate(&self) -> GroupEnumerator<'_> {
        GroupEnumerator { group: self, block: 0, odometer: None }
    }
}

/// A finitely supported element; absent coordinates are zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupElement {
    support: BTreeMap<usize, i64>,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.support.iter().map(|(&i, &v)| (i, v))
    }

    pub fn coordinate(&self, i: usize) -> i64 {
        self.support.get(&i).copied().unwrap_or(0)
    }

    /// Largest coordinate index in the support, plus one (0 for the identity).
    pub fn support_extent(&self) -> usize {
        self.support.keys().next_back().map_or(0, |&i| i + 1)
    }

    /// Compact display form `{i:v, j:w}`; `{}` is the identity.
    pub fn display(&self) -> String {
        use fmt::Write;
        let mut s = String::from("{");
        for (idx, (&i, &v)) in self.support.iter().enumerate() {
            if idx > 0 {
                s.push(',');
            }
            let _ = write!(s, "{i}:{v}");
        }
        s.push('}');
        s
    }
}

/// Signed representative of a canonical value `v ∈ [0, n)`: the unique
/// representative in `(-n/2, n/2]`. ℤ factor values are their own
/// representative.
pub fn signed_residue(modulus: u64, v: i64) -> i64 {
    if modulus == 0 {
        v
    } else {
        let n = modulus as i64;
        if 2 * v <= n {
            v
        } else {
            v - n
        }
    }
}

/// A subgroup in box form: coordinate `i` is constrained to `≡ 0 (mod mᵢ)`.
/// On a ℤ factor, `mᵢ = 0` pins the coordinate to zero (infinite index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSubgroup {
    constraints: BTreeMap<usize, u64>,
}

/// Index of a subgroup in its ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupIndex {
    Finite(BigUint),
    Infinite,
}

impl BoxSubgroup {
    /// Validates constraints against the descriptor: on finite factors the
    /// constraint must divide the modulus and be positive.
    pub fn new(
        group: &GroupDescriptor,
        constraints: BTreeMap<usize, u64>,
    ) -> Result<Self, GroupError> {
        for (&i, &m) in &constraints {
            let n = group.modulus(i).ok_or(GroupError::InvalidCoordinate { index: i })?;
            if n > 0 && (m == 0 || n % m != 0) {
                return Err(GroupError::ConstraintNotDivisor { index: i });
            }
        }
        Ok(Self { constraints })
    }

    /// The whole group (no constraints).
    pub fn whole_group() -> Self {
        Self { constraints: BTreeMap::new() }
    }

    pub fn constraints(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.constraints.iter().map(|(&i, &m)| (i, m))
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.constraints.iter().all(|(&i, &m)| {
            let v = x.coordinate(i);
            if m == 0 {
                v == 0
            } else {
                v.rem_euclid(m as i64) == 0
            }
        })
    }

    /// `∏ mᵢ` over constrained coordinates; infinite when a ℤ coordinate is
    /// pinned to zero.
    pub fn index(&self) -> SubgroupIndex {
        let mut idx = BigUint::from(1u32);
        for &m in self.constraints.values() {
            if m == 0 {
                return SubgroupIndex::Infinite;
            }
            idx *= BigUint::from(m);
        }
        SubgroupIndex::Finite(idx)
    }
}

/// Canonical coset label: residues of the constrained coordinates, in
/// coordinate order. Two elements share a label iff they differ by an
/// element of the subgroup.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetLabel(pub Vec<u64>);

/// Label of the coset `x + s`. Errors on infinite-index subgroups.
pub fn coset_of(
    x: &GroupElement,
    s: &BoxSubgroup,
    _group: &GroupDescriptor,
) -> Result<CosetLabel, GroupError> {
    let mut label = Vec::with_capacity(s.constraints.len());
    for (&i, &m) in &s.constraints {
        if m == 0 {
            return Err(GroupError::InfiniteIndex);
        }
        label.push(x.coordinate(i).rem_euclid(m as i64) as u64);
    }
    Ok(CosetLabel(label))
}

/// The subgroup `Λⱼ`: coordinates `i < j` constrained to zero in their cyclic
/// factor (finite factors) or to `≡ 0 (mod k)` (ℤ factors). Contains `kΓ`
/// and has index `∏_{i<j} nᵢ`, with `k` in place of `nᵢ` on ℤ factors.
pub fn lambda_j(
    j: usize,
    k: u64,
    group: &GroupDescriptor,
) -> Result<BoxSubgroup, GroupError> {
    if let Some(d) = group.dimension() {
        if j > d {
            return Err(GroupError::InvalidCoordinate { index: j });
        }
    }
    let mut constraints = BTreeMap::new();
    for i in 0..j {
        let n = group.modulus(i).ok_or(GroupError::InvalidCoordinate { index: i })?;
        if n > 0 {
            if k != 0 && k % n != 0 {
                return Err(GroupError::ExponentMismatch { index: i });
            }
            constraints.insert(i, n);
        } else {
            constraints.insert(i, k);
        }
    }
    BoxSubgroup::new(group, constraints)
}

/// Block enumerator over all finitely supported elements.
///
/// Block `b` consists of elements whose per-coordinate enumeration positions
/// `pᵢ` satisfy `support ⊆ [0, min(b, dim))` and `pᵢ ≤ b`; block `b` emits,
/// in lexicographic order of the position vector (coordinate 0 most
/// significant), exactly the vectors not already contained in block `b − 1`.
pub struct GroupEnumerator<'g> {
    group: &'g GroupDescriptor,
    block: u64,
    odometer: Option<Vec<u64>>,
}

impl GroupEnumerator<'_> {
    fn width(&self, block: u64) -> usize {
        let w = block as usize;
        match self.group.dimension() {
            Some(d) => w.min(d),
            None => w,
        }
    }

    fn cap(&self, i: usize, block: u64) -> u64 {
        match self.group.modulus(i).expect("coordinate within width") {
            0 => block,
            n => block.min(n - 1),
        }
    }

    fn fits_previous_block(&self, pos: &[u64], block: u64) -> bool {
        if block == 0 {
            return false;
        }
        let prev = block - 1;
        let prev_width = self.width(prev);
        pos.iter().enumerate().all(|(i, &p)| {
            if p == 0 {
                true
            } else {
                i < prev_width && p <= self.cap(i, prev)
            }
        })
    }

    fn value_at(&self, i: usize, p: u64) -> i64 {
        match self.group.modulus(i).expect("coordinate within width") {
            0 => {
                // zig-zag: 0, 1, −1, 2, −2, …
                if p == 0 {
                    0
                } else if p % 2 == 1 {
                    ((p + 1) / 2) as i64
                } else {
                    -((p / 2) as i64)
                }
            }
            _ => p as i64,
        }
    }

    fn emit(&self, pos: &[u64]) -> GroupElement {
        let mut support = BTreeMap::new();
        for (i, &p) in pos.iter().enumerate() {
            if p > 0 {
                support.insert(i, self.value_at(i, p));
            }
        }
        GroupElement { support }
    }

    fn advance(&mut self) -> Option<Vec<u64>> {
        loop {
            match &mut self.odometer {
                None => {
                    if self.block == 0 {
                        self.block = 1;
                        return Some(Vec::new()); // block 0 = identity
                    }
                    let width = self.width(self.block);
                    if width == 0 {
                        // Zero-dimensional group: identity only.
                        return None;
                    }
                    self.odometer = Some(alloc::vec![0; width]);
                    let pos = self.odometer.as_ref().unwrap().clone();
                    if !self.fits_previous_block(&pos, self.block) {
                        return Some(pos);
                    }
                }
                Some(pos) => {
                    // Increment from the least significant (rightmost) slot.
                    let block = self.block;
                    let mut i = pos.len();
                    loop {
                        if i == 0 {
                            // Block exhausted; move on.
                            self.odometer = None;
                            self.block += 1;
                            break;
                        }
                        i -= 1;
                        if pos[i] < self.cap(i, block) {
                            pos[i] += 1;
                            for slot in pos.iter_mut().skip(i + 1) {
                                *slot = 0;
                            }
                            if !self.fits_previous_block(pos, block) {
                                return Some(pos.clone());
                            }
                            i = pos.len();
                        }
                    }
                }
            }
        }
    }
}

impl Iterator for GroupEnumerator<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let pos = self.advance()?;
        Some(self.emit(&pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn z2() -> GroupDescriptor {
        GroupDescriptor::direct_sum_constant(2).unwrap()
    }

    fn zsum() -> GroupDescriptor {
        GroupDescriptor::direct_sum_constant(0).unwrap()
    }

    #[test]
    fn add_identity() {
        let g = z2();
        let e = GroupElement::identity();
        assert_eq!(g.add(&e, &e), e);
    }

    #[test]
    fn add_order_two_cancellation() {
        let g = z2();
        let a = g.element(&[(0, 1)]).unwrap();
        assert!(g.add(&a, &a).is_identity());
    }

    #[test]
    fn add_integer_coordinates() {
        let g = zsum();
        let a = g.element(&[(0, 2), (1, 1)]).unwrap();
        let b = g.element(&[(0, -1)]).unwrap();
        let expected = g.element(&[(0, 1), (1, 1)]).unwrap();
        assert_eq!(g.add(&a, &b), expected);
    }

    #[test]
    fn scalar_examples() {
        let g2 = z2();
        let a = g2.element(&[(0, 1)]).unwrap();
        assert!(g2.scalar_multiply(2, &a).is_identity());

        let gz = zsum();
        let b = gz.element(&[(0, 1)]).unwrap();
        assert_eq!(gz.scalar_multiply(3, &b), gz.element(&[(0, 3)]).unwrap());
        assert!(gz.scalar_multiply(0, &b).is_identity());
    }

    #[test]
    fn trivial_modulus_rejected() {
        assert_eq!(
            GroupDescriptor::direct_sum_constant(1),
            Err(GroupError::TrivialModulus { index: 0 })
        );
    }

    #[test]
    fn subgroup_index_examples() {
        let g = z2();
        let lam3 = lambda_j(3, 2, &g).unwrap();
        assert_eq!(lam3.index(), SubgroupIndex::Finite(BigUint::from(8u32)));

        assert_eq!(
            BoxSubgroup::whole_group().index(),
            SubgroupIndex::Finite(BigUint::from(1u32))
        );

        let gz = zsum();
        let s = BoxSubgroup::new(&gz, [(0usize, 2u64), (1, 3)].into_iter().collect()).unwrap();
        assert_eq!(s.index(), SubgroupIndex::Finite(BigUint::from(6u32)));
    }

    #[test]
    fn lambda_examples() {
        let g = z2();
        assert_eq!(lambda_j(0, 2, &g).unwrap(), BoxSubgroup::whole_group());
        let lam4 = lambda_j(4, 2, &g).unwrap();
        assert_eq!(lam4.index(), SubgroupIndex::Finite(BigUint::from(16u32)));

        let gz = zsum();
        let lam = lambda_j(2, 3, &gz).unwrap();
        let expected: BTreeMap<usize, u64> = [(0usize, 3u64), (1, 3)].into_iter().collect();
        assert_eq!(lam, BoxSubgroup::new(&gz, expected).unwrap());
        assert_eq!(lam.index(), SubgroupIndex::Finite(BigUint::from(9u32)));
    }

    #[test]
    fn lambda_coset_count_oracle() {
        // Enumerate the first 90 elements of ⊕ℤ and count distinct labels of
        // Λ₂ with k = 3: must match the index 9.
        let gz = zsum();
        let lam = lambda_j(2, 3, &gz).unwrap();
        let labels: alloc::collections::BTreeSet<_> = gz
            .enumerate()
            .take(90)
            .map(|x| coset_of(&x, &lam, &gz).unwrap())
            .collect();
        assert_eq!(labels.len(), 9);
    }

    #[test]
    fn lambda_exponent_mismatch() {
        let g3 = GroupDescriptor::direct_sum_constant(3).unwrap();
        assert_eq!(
            lambda_j(1, 2, &g3),
            Err(GroupError::ExponentMismatch { index: 0 })
        );
    }

    #[test]
    fn lambda_beyond_dimension() {
        let g = GroupDescriptor::integers();
        assert!(lambda_j(2, 3, &g).is_err());
    }

    #[test]
    fn enumerate_integers_zigzag() {
        let g = GroupDescriptor::integers();
        let first: Vec<i64> = g.enumerate().take(5).map(|x| x.coordinate(0)).collect();
        assert_eq!(first, vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn enumerate_z2_order() {
        let g = z2();
        let first: Vec<GroupElement> = g.enumerate().take(4).collect();
        assert_eq!(first[0], GroupElement::identity());
        assert_eq!(first[1], g.element(&[(0, 1)]).unwrap());
        assert_eq!(first[2], g.element(&[(1, 1)]).unwrap());
        assert_eq!(first[3], g.element(&[(0, 1), (1, 1)]).unwrap());
    }

    #[test]
    fn enumerate_no_repeats() {
        for g in [z2(), zsum(), GroupDescriptor::direct_sum_periodic(vec![2, 4]).unwrap()] {
            let seen: Vec<GroupElement> = g.enumerate().take(200).collect();
            let set: alloc::collections::BTreeSet<_> = seen.iter().cloned().collect();
            assert_eq!(set.len(), seen.len());
        }
    }

    #[test]
    fn enumerate_covers_small_elements() {
        // Every element of ⊕ℤ/2ℤ with support in [0,3) appears.
        let g = z2();
        let seen: alloc::collections::BTreeSet<_> = g.enumerate().take(64).collect();
        for mask in 0u32..8 {
            let pairs: Vec<(usize, i64)> =
                (0..3).filter(|i| mask >> i & 1 == 1).map(|i| (i, 1)).collect();
            assert!(seen.contains(&g.element(&pairs).unwrap()));
        }
    }

    #[test]
    fn coset_examples() {
        let gz = GroupDescriptor::integers();
        let four = BoxSubgroup::new(&gz, [(0usize, 4u64)].into_iter().collect()).unwrap();
        let x = gz.element(&[(0, 7)]).unwrap();
        assert_eq!(coset_of(&x, &four, &gz).unwrap(), CosetLabel(vec![3]));
        assert_eq!(
            coset_of(&GroupElement::identity(), &four, &gz).unwrap(),
            CosetLabel(vec![0])
        );

        let g = z2();
        let lam2 = lambda_j(2, 2, &g).unwrap();
        let y = g.element(&[(0, 1), (5, 1)]).unwrap();
        assert_eq!(coset_of(&y, &lam2, &g).unwrap(), CosetLabel(vec![1, 0]));
    }

    #[test]
    fn coset_infinite_index() {
        let gz = zsum();
        let pinned = BoxSubgroup::new(&gz, [(0usize, 0u64)].into_iter().collect()).unwrap();
        assert_eq!(
            coset_of(&GroupElement::identity(), &pinned, &gz),
            Err(GroupError::InfiniteIndex)
        );
        assert_eq!(pinned.index(), SubgroupIndex::Infinite);
    }

    #[test]
    fn signed_residue_examples() {
        assert_eq!(signed_residue(2, 1), 1);
        assert_eq!(signed_residue(4, 3), -1);
        assert_eq!(signed_residue(5, 3), -2);
        assert_eq!(signed_residue(0, -7), -7);
    }
}
