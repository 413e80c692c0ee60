//! Generalized Cartan matrices, their integral realizations, and type
//! classification.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{self, rat, rat_big, Rat};
use crate::{Error, NodeSet, Result};

/// A validated generalized Cartan matrix `A = (a_ij)`.
///
/// Convention: `a_ij = <alpha_j, alpha_i^vee>`, so the simple reflection
/// `r_i` sends `alpha_j` to `alpha_j - a_ij alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    rank: usize,
}

/// Type of an indecomposable generalized Cartan matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    Finite,
    Affine,
    Indefinite { strongly_hyperbolic: bool },
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::Finite => write!(f, "Finite"),
            CartanType::Affine => write!(f, "Affine"),
            CartanType::Indefinite { strongly_hyperbolic: true } => write!(f, "Indefinite (strongly hyperbolic)"),
            CartanType::Indefinite { strongly_hyperbolic: false } => write!(f, "Indefinite"),
        }
    }
}

impl CartanMatrix {
    /// Validates the generalized Cartan matrix axioms and computes the rank.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 {
            return Err(Error::EmptyMatrix);
        }
        if m > 64 {
            return Err(Error::TooManyNodes(m));
        }
        for (row, r) in entries.iter().enumerate() {
            if r.len() != m {
                return Err(Error::NotSquare { row: row + 1, len: r.len(), expected: m });
            }
        }
        for i in 0..m {
            for j in 0..m {
                let a = entries[i][j];
                if i == j {
                    if a != 2 {
                        return Err(Error::DiagonalNotTwo { i: i + 1, j: j + 1 });
                    }
                } else if a > 0 {
                    return Err(Error::PositiveOffDiagonal { i: i + 1, j: j + 1 });
                } else if (a == 0) != (entries[j][i] == 0) {
                    return Err(Error::AsymmetricZero { i: i + 1, j: j + 1 });
                }
            }
        }
        let rank = linalg::rank_int(&entries);
        Ok(CartanMatrix { entries, rank })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn all(&self) -> NodeSet {
        NodeSet::full(self.size())
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.entries[i][j] != 0
    }

    /// Connected components of the Dynkin diagram restricted to `set`,
    /// ordered by least index.
    pub fn components(&self, set: NodeSet) -> Vec<NodeSet> {
        let mut remaining = set;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = NodeSet::singleton(start);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in remaining.iter() {
                    if !comp.contains(j) && self.adjacent(i, j) {
                        comp.insert(j);
                        stack.push(j);
                    }
                }
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, set: NodeSet) -> bool {
        self.components(set).len() == 1
    }

    /// True iff `a_ij = 0` for all `i` in `a`, `j` in `b`.
    pub fn are_separated(&self, a: NodeSet, b: NodeSet) -> bool {
        a.iter().all(|i| b.iter().all(|j| i != j && self.entries[i][j] == 0))
    }

    pub fn principal_minor(&self, set: NodeSet) -> BigInt {
        let idx = set.to_vec();
        let sub: Vec<Vec<BigInt>> =
            idx.iter().map(|&i| idx.iter().map(|&j| BigInt::from(self.entries[i][j])).collect()).collect();
        linalg::determinant(&sub)
    }

    /// Nonempty connected subsets of the connected set `comp`.
    fn connected_subsets(&self, comp: NodeSet) -> Vec<NodeSet> {
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier: Vec<NodeSet> = comp.iter().map(NodeSet::singleton).collect();
        while let Some(s) = frontier.pop() {
            if !seen.insert(s.bits()) {
                continue;
            }
            for i in s.iter() {
                for j in comp.difference(s).iter() {
                    if self.adjacent(i, j) {
                        frontier.push(s.with(j));
                    }
                }
            }
        }
        seen.into_iter().map(NodeSet::from_bits).collect()
    }

    /// Type of a connected subset via principal minors. Disconnected principal
    /// minors factor over components, so only connected subsets are examined.
    fn classify_connected(&self, comp: NodeSet) -> CartanType {
        let mut proper_positive = true;
        let mut whole = BigInt::zero();
        for s in self.connected_subsets(comp) {
            let d = self.principal_minor(s);
            if s == comp {
                whole = d;
            } else if !d.is_positive() {
                proper_positive = false;
            }
        }
        if proper_positive && whole.is_positive() {
            CartanType::Finite
        } else if proper_positive && whole.is_zero() {
            CartanType::Affine
        } else {
            // Every proper connected principal submatrix has positive minors
            // exactly when all proper indecomposable submatrices are finite.
            CartanType::Indefinite { strongly_hyperbolic: proper_positive }
        }
    }

    /// Type of every indecomposable component of `A`.
    pub fn classify(&self) -> Vec<(NodeSet, CartanType)> {
        self.classify_subset(self.all())
    }

    /// Type of every component of the principal submatrix on `set`.
    pub fn classify_subset(&self, set: NodeSet) -> Vec<(NodeSet, CartanType)> {
        self.components(set).into_iter().map(|c| (c, self.classify_connected(c))).collect()
    }

    /// True iff every component of `set` is of finite type (so `W_set` is finite).
    pub fn is_finite_type(&self, set: NodeSet) -> bool {
        self.classify_subset(set).iter().all(|(_, t)| *t == CartanType::Finite)
    }

    /// Union of the finite-type components of `set`.
    pub fn finite_part(&self, set: NodeSet) -> NodeSet {
        self.classify_subset(set)
            .into_iter()
            .filter(|(_, t)| *t == CartanType::Finite)
            .fold(NodeSet::EMPTY, |acc, (c, _)| acc.union(c))
    }
}

/// Integral coordinate frame for roots and weights.
///
/// Weight coordinates are pairings with the coroots `alpha_1^vee ..
/// alpha_{2m-l}^vee`; the last `m - l` coroots come from the completion rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    cartan: CartanMatrix,
    completion: Vec<Vec<i64>>,
    root_coords: Vec<Vec<Rat>>,
    // m independent coordinate rows and the inverse of the square matrix
    // they form; used to expand vectors in the simple roots.
    pivot_rows: Vec<usize>,
    pivot_inverse: Vec<Vec<Rat>>,
}

impl Realization {
    /// Canonical completion: Hermite basis of the integer kernel of `A`.
    /// Since `row(A)` and `ker(A)` meet trivially, the stacked matrix has rank `m`.
    pub fn canonical(cartan: CartanMatrix) -> Self {
        let m = cartan.size();
        let kernel = linalg::integer_kernel_hnf(cartan.entries(), m);
        let completion: Vec<Vec<i64>> = kernel
            .iter()
            .map(|row| row.iter().map(|x| i64::try_from(x).expect("completion entry fits in i64")).collect())
            .collect();
        Self::with_completion(cartan, completion).expect("kernel completion has full rank")
    }

    /// Uses caller-supplied completion rows `D` ((m-l) x m).
    pub fn with_completion(cartan: CartanMatrix, completion: Vec<Vec<i64>>) -> Result<Self> {
        let m = cartan.size();
        let need = m - cartan.rank();
        if completion.len() != need {
            return Err(Error::InvalidCompletion(format!("expected {need} rows, got {}", completion.len())));
        }
        if let Some(r) = completion.iter().find(|r| r.len() != m) {
            return Err(Error::InvalidCompletion(format!("row has {} entries, expected {m}", r.len())));
        }
        let stacked: Vec<Vec<i64>> = cartan.entries().iter().chain(completion.iter()).cloned().collect();
        if linalg::rank_int(&stacked) != m {
            return Err(Error::InvalidCompletion("stacked matrix does not have rank m".into()));
        }
        let dim = stacked.len();
        let root_coords: Vec<Vec<Rat>> = (0..m).map(|j| (0..dim).map(|i| rat(stacked[i][j])).collect()).collect();

        let mut pivot_rows = Vec::new();
        let mut chosen: Vec<Vec<Rat>> = Vec::new();
        for (i, row) in stacked.iter().enumerate() {
            let candidate: Vec<Rat> = row.iter().map(|&x| rat(x)).collect();
            chosen.push(candidate);
            if linalg::rank(&chosen) == chosen.len() {
                pivot_rows.push(i);
            } else {
                chosen.pop();
            }
            if chosen.len() == m {
                break;
            }
        }
        let pivot_inverse = invert(&chosen);
        Ok(Realization { cartan, completion, root_coords, pivot_rows, pivot_inverse })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn size(&self) -> usize {
        self.cartan.size()
    }

    /// Ambient dimension `2m - l`.
    pub fn dim(&self) -> usize {
        2 * self.cartan.size() - self.cartan.rank()
    }

    pub fn completion(&self) -> &[Vec<i64>] {
        &self.completion
    }

    /// Coordinates of the simple root `alpha_j`.
    pub fn root_coords(&self, j: usize) -> &[Rat] {
        &self.root_coords[j]
    }

    /// Weight coordinates of a root-lattice vector.
    pub fn root_to_weight(&self, root: &RootVector) -> WeightVector {
        let mut coords = vec![Rat::zero(); self.dim()];
        for (j, c) in root.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = rat_big(c);
            for (x, a) in coords.iter_mut().zip(&self.root_coords[j]) {
                *x += &c * a;
            }
        }
        WeightVector { coords }
    }

    /// Expansion of `v` in the simple roots, or `None` if `v` is outside their span.
    pub fn expand_in_roots(&self, v: &WeightVector) -> Option<Vec<Rat>> {
        let m = self.size();
        let sub: Vec<&Rat> = self.pivot_rows.iter().map(|&i| &v.coords[i]).collect();
        let coeffs: Vec<Rat> = (0..m)
            .map(|r| self.pivot_inverse[r].iter().zip(&sub).fold(Rat::zero(), |acc, (a, b)| acc + a * *b))
            .collect();
        // Verify the remaining coordinates.
        for i in 0..self.dim() {
            let val = coeffs.iter().zip(&self.root_coords).fold(Rat::zero(), |acc, (c, col)| acc + c * &col[i]);
            if val != v.coords[i] {
                return None;
            }
        }
        Some(coeffs)
    }

    /// True iff some positive multiple of `weight` lies in the root lattice.
    /// Simple roots are linearly independent, so this is rational-span membership.
    pub fn q_sat_member(&self, weight: &WeightVector) -> bool {
        self.expand_in_roots(weight).is_some()
    }

    /// Weight with the given pairings (length `2m - l`).
    pub fn weight(&self, coords: Vec<Rat>) -> Result<WeightVector> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(WeightVector { coords })
    }

    pub fn weight_from_ints(&self, coords: &[i64]) -> Result<WeightVector> {
        self.weight(coords.iter().map(|&x| rat(x)).collect())
    }

    /// The fundamental weight dual to `alpha_i^vee`.
    pub fn fundamental_weight(&self, i: usize) -> WeightVector {
        let mut coords = vec![Rat::zero(); self.dim()];
        coords[i] = rat(1);
        WeightVector { coords }
    }
}

fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { rat(1) } else { Rat::zero() }));
            r
        })
        .collect();
    linalg::rref(&mut aug);
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// A weight in realization coordinates: `coords[i] = <lambda, alpha_i^vee>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    pub coords: Vec<Rat>,
}

impl WeightVector {
    pub fn pairing(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Dominant with respect to the first `m` coroots.
    pub fn is_dominant(&self, m: usize) -> bool {
        self.coords[..m].iter().all(|c| !c.is_negative())
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        WeightVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An element of the root lattice, in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    pub coeffs: Vec<BigInt>,
}

impl RootVector {
    pub fn new(coeffs: &[i64]) -> Self {
        RootVector { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn simple(i: usize, m: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs[i] = BigInt::from(1);
        RootVector { coeffs }
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|c| !c.is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> NodeSet {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn neg(&self) -> RootVector {
        RootVector { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Index `i` if this is `alpha_i`.
    pub fn as_simple(&self) -> Option<usize> {
        let sup = self.support();
        (sup.len() == 1 && self.coeffs[sup.first()?] == BigInt::from(1)).then(|| sup.first().unwrap())
    }

    /// `<self, alpha_i^vee> = sum_j c_j a_ij`.
    pub fn pairing(&self, cartan: &CartanMatrix, i: usize) -> BigInt {
        self.coeffs.iter().enumerate().map(|(j, c)| c * cartan.entry(i, j)).sum()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a != BigInt::from(1) {
                write!(f, "{a}")?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    fn a11() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap()
    }

    fn aab() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -2], vec![-3, 2]]).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert_eq!(a2().rank(), 2);
        assert_eq!(a11().rank(), 1);
        assert_eq!(CartanMatrix::new(vec![vec![2, 1], vec![1, 2]]), Err(Error::PositiveOffDiagonal { i: 1, j: 2 }));
        assert_eq!(CartanMatrix::new(vec![vec![2, 0], vec![-1, 2]]), Err(Error::AsymmetricZero { i: 1, j: 2 }));
        assert_eq!(CartanMatrix::new(vec![vec![2, -1], vec![-1, 3]]), Err(Error::DiagonalNotTwo { i: 2, j: 2 }));
        assert!(matches!(CartanMatrix::new(vec![vec![2, -1]]), Err(Error::NotSquare { .. })));
        assert_eq!(CartanMatrix::new(vec![]), Err(Error::EmptyMatrix));
    }

    #[test]
    fn dynkin_components_and_separation() {
        let a = a2();
        let both = NodeSet::full(2);
        assert_eq!(a.components(both), vec![both]);
        assert_eq!(a.components(NodeSet::singleton(0)), vec![NodeSet::singleton(0)]);
        let d = CartanMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(d.components(both), vec![NodeSet::singleton(0), NodeSet::singleton(1)]);

        assert!(!a.are_separated(NodeSet::singleton(0), NodeSet::singleton(1)));
        assert!(a.are_separated(both, NodeSet::EMPTY));
        assert!(d.are_separated(NodeSet::singleton(0), NodeSet::singleton(1)));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(a2().classify(), vec![(NodeSet::full(2), CartanType::Finite)]);
        assert_eq!(a11().classify(), vec![(NodeSet::full(2), CartanType::Affine)]);
        assert_eq!(aab().classify(), vec![(NodeSet::full(2), CartanType::Indefinite { strongly_hyperbolic: true })]);
        // Affine A_2^(1) is a 3-cycle.
        let a21 = CartanMatrix::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).unwrap();
        assert_eq!(a21.classify()[0].1, CartanType::Affine);
        // An affine block glued to a third node is indefinite but not strongly hyperbolic.
        let glued = CartanMatrix::new(vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]]).unwrap();
        assert_eq!(glued.classify()[0].1, CartanType::Indefinite { strongly_hyperbolic: false });
        // G2 and B2.
        for e in [vec![vec![2, -1], vec![-3, 2]], vec![vec![2, -1], vec![-2, 2]]] {
            assert_eq!(CartanMatrix::new(e).unwrap().classify()[0].1, CartanType::Finite);
        }
    }

    #[test]
    fn realization_completion() {
        let r = Realization::canonical(a2());
        assert_eq!(r.dim(), 2);
        assert!(r.completion().is_empty());

        let r = Realization::canonical(a11());
        assert_eq!(r.dim(), 3);
        assert_eq!(r.completion(), &[vec![1, 1]]);
        // Idempotent.
        assert_eq!(Realization::canonical(a11()).completion(), r.completion());
        // Any full-rank completion is accepted, e.g. (0, 1).
        let alt = Realization::with_completion(a11(), vec![vec![0, 1]]).unwrap();
        assert_eq!(alt.root_coords(1), &[rat(-2), rat(2), rat(1)]);
        assert!(Realization::with_completion(a11(), vec![vec![1, -1]]).is_err());

        let r = Realization::canonical(aab());
        assert_eq!(r.dim(), 2);
        assert!(r.completion().is_empty());
    }

    #[test]
    fn q_sat_examples() {
        let r = Realization::canonical(a2());
        assert!(r.q_sat_member(&r.weight_from_ints(&[3, 2]).unwrap()));
        let r = Realization::canonical(a11());
        assert!(!r.q_sat_member(&r.fundamental_weight(0)));
        let alpha1 = r.root_to_weight(&RootVector::simple(0, 2));
        assert!(r.q_sat_member(&alpha1));
        assert_eq!(r.expand_in_roots(&alpha1), Some(vec![rat(1), rat(0)]));
    }
}
