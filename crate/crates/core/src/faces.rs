//! Faces of the orbit hull `H = conv(W mu)` for a dominant point `mu`.
//!
//! Every nonempty face is `sigma F_I` with `I` mu-connected and `sigma`
//! the minimal representative of `sigma W_{lambda(I)}`, where
//! `lambda(I) = I u I_*`. The pair `(sigma, I)` is a complete invariant.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::cartan::{Realization, RootVector, WeightVector};
use crate::coxeter::{Side, WeylElement, WeylGroup};
use crate::linalg::Rat;
use crate::{Error, NodeSet, Result};

/// A dominant point together with its zero set `J0` and `J> = Pi \ J0`.
#[derive(Clone, Debug)]
pub struct DominantPoint {
    real: Realization,
    group: WeylGroup,
    mu: WeightVector,
    j0: NodeSet,
    jgt: NodeSet,
}

/// The fundamental face `F_I` for a mu-connected `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FundamentalFace {
    pub i: NodeSet,
    pub i_star: NodeSet,
}

impl FundamentalFace {
    /// `lambda = I u I_*`, the isotropy type.
    pub fn lambda(&self) -> NodeSet {
        self.i.union(self.i_star)
    }

    pub fn dimension(&self) -> usize {
        self.i.len()
    }
}

/// A face of the orbit hull.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Empty,
    Translate { sigma: WeylElement, base: FundamentalFace },
}

impl Face {
    /// `|I|`, or `-1` for the empty face.
    pub fn dimension(&self) -> isize {
        match self {
            Face::Empty => -1,
            Face::Translate { base, .. } => base.dimension() as isize,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Face::Empty)
    }

    pub fn sigma(&self) -> Option<&WeylElement> {
        match self {
            Face::Empty => None,
            Face::Translate { sigma, .. } => Some(sigma),
        }
    }

    pub fn base(&self) -> Option<&FundamentalFace> {
        match self {
            Face::Empty => None,
            Face::Translate { base, .. } => Some(base),
        }
    }

    /// The subset `I` of the underlying fundamental face.
    pub fn base_set(&self) -> Option<NodeSet> {
        self.base().map(|b| b.i)
    }

    pub fn is_fundamental(&self) -> bool {
        self.sigma().is_some_and(WeylElement::is_identity)
    }
}

/// Order: dimension, then `sigma` in ShortLex, then `I` lexicographically.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Face::Empty, Face::Empty) => Ordering::Equal,
            (Face::Empty, _) => Ordering::Less,
            (_, Face::Empty) => Ordering::Greater,
            (Face::Translate { sigma: s1, base: b1 }, Face::Translate { sigma: s2, base: b2 }) => {
                b1.i.len().cmp(&b2.i.len()).then_with(|| s1.cmp(s2)).then_with(|| b1.i.cmp(&b2.i))
            }
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as `sigma|I`, e.g. `r1 r2|{1}`; the empty face is `0`.
impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Empty => write!(f, "0"),
            Face::Translate { sigma, base } => write!(f, "{sigma}|{}", base.i),
        }
    }
}

/// Faces with `l(sigma)` bounded, in canonical order.
#[derive(Clone, Debug)]
pub struct FaceEnumeration {
    pub faces: Vec<Face>,
    /// True iff no face lies beyond the bound.
    pub complete: bool,
}

impl FaceEnumeration {
    pub fn counts_by_dimension(&self) -> BTreeMap<isize, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.faces {
            *counts.entry(f.dimension()).or_insert(0) += 1;
        }
        counts
    }
}

/// A point `eta = mu - sum_{k in K} c_k alpha_k` with all `c_k > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub k: NodeSet,
    pub coefficients: Vec<Rat>,
}

/// Edge directions at the vertex `mu`: the roots `W_{J0} J>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgesAtMu {
    pub finite: bool,
    pub roots: Vec<RootVector>,
    /// True iff the search closed up within the cap.
    pub complete: bool,
}

impl DominantPoint {
    pub fn new(real: Realization, mu: WeightVector) -> Result<Self> {
        if mu.coords.len() != real.dim() {
            return Err(Error::DimensionMismatch { expected: real.dim(), got: mu.coords.len() });
        }
        let m = real.size();
        if let Some(i) = (0..m).find(|&i| mu.coords[i].is_negative()) {
            return Err(Error::DominanceViolated(i + 1));
        }
        let j0: NodeSet = (0..m).filter(|&i| mu.coords[i].is_zero()).collect();
        let jgt = NodeSet::full(m).difference(j0);
        let group = WeylGroup::new(real.cartan().clone());
        Ok(DominantPoint { real, group, mu, j0, jgt })
    }

    pub fn realization(&self) -> &Realization {
        &self.real
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn mu(&self) -> &WeightVector {
        &self.mu
    }

    pub fn size(&self) -> usize {
        self.real.size()
    }

    pub fn all(&self) -> NodeSet {
        NodeSet::full(self.size())
    }

    pub fn j0(&self) -> NodeSet {
        self.j0
    }

    pub fn jgt(&self) -> NodeSet {
        self.jgt
    }

    /// `I^*`: union of the Dynkin components of `I` meeting `J>`.
    pub fn mu_connected_part(&self, i: NodeSet) -> NodeSet {
        self.real
            .cartan()
            .components(i)
            .into_iter()
            .filter(|c| !c.is_disjoint(self.jgt))
            .fold(NodeSet::EMPTY, NodeSet::union)
    }

    pub fn is_mu_connected(&self, i: NodeSet) -> bool {
        self.mu_connected_part(i) == i
    }

    /// `Pi^*`.
    pub fn pi_star(&self) -> NodeSet {
        self.mu_connected_part(self.all())
    }

    /// All mu-connected subsets, by size then lexicographically.
    pub fn mu_connected_subsets(&self) -> Vec<NodeSet> {
        let mut out: Vec<NodeSet> = self.all().subsets().filter(|&s| self.is_mu_connected(s)).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// `I_* = {alpha in J0 \ I separated from I}`.
    pub fn i_star(&self, i: NodeSet) -> Result<NodeSet> {
        if !self.is_mu_connected(i) {
            return Err(Error::NotMuConnected(i.to_string()));
        }
        Ok(self.i_star_unchecked(i))
    }

    fn i_star_unchecked(&self, i: NodeSet) -> NodeSet {
        let cartan = self.real.cartan();
        self.j0.difference(i).iter().filter(|&a| cartan.are_separated(NodeSet::singleton(a), i)).collect()
    }

    pub fn fundamental(&self, i: NodeSet) -> Result<FundamentalFace> {
        Ok(FundamentalFace { i, i_star: self.i_star(i)? })
    }

    /// `F_{I^*}` for arbitrary `I`.
    pub fn fundamental_of(&self, i: NodeSet) -> FundamentalFace {
        let i = self.mu_connected_part(i);
        FundamentalFace { i, i_star: self.i_star_unchecked(i) }
    }

    /// The empty face followed by every `F_I`.
    pub fn fundamental_faces(&self) -> Vec<Face> {
        std::iter::once(Face::Empty)
            .chain(
                self.mu_connected_subsets()
                    .into_iter()
                    .map(|i| Face::Translate { sigma: WeylElement::identity(), base: self.fundamental_of(i) }),
            )
            .collect()
    }

    /// The whole hull `H = F_{Pi^*}`.
    pub fn hull(&self) -> Face {
        self.canonicalize_face(&WeylElement::identity(), self.all())
    }

    /// The vertex `{mu} = F_{emptyset}`.
    pub fn vertex(&self) -> Face {
        self.canonicalize_face(&WeylElement::identity(), NodeSet::EMPTY)
    }

    /// `w F_{I^*}` in canonical form.
    pub fn canonicalize_face(&self, w: &WeylElement, i: NodeSet) -> Face {
        let base = self.fundamental_of(i);
        let sigma = self.group.min_coset_rep(w, base.lambda(), Side::Right);
        Face::Translate { sigma, base }
    }

    pub fn act_face(&self, w: &WeylElement, face: &Face) -> Face {
        match face {
            Face::Empty => Face::Empty,
            Face::Translate { sigma, base } => self.canonicalize_face(&self.group.multiply(w, sigma), base.i),
        }
    }

    /// `sigma1 F_I <= sigma2 F_I'` iff `I <= I'` and `sigma1^{-1} sigma2 in W_{I_*} W_{I'}`.
    pub fn face_leq(&self, f1: &Face, f2: &Face) -> bool {
        match (f1, f2) {
            (Face::Empty, _) => true,
            (_, Face::Empty) => false,
            (Face::Translate { sigma: s1, base: b1 }, Face::Translate { sigma: s2, base: b2 }) => {
                if !b1.i.is_subset(b2.i) {
                    return false;
                }
                let v = self.group.multiply(&self.group.inverse(s1), s2);
                let (_, u, _) = self.group.double_coset_factorize(&v, b1.i_star, b2.i);
                u.is_identity()
            }
        }
    }

    pub fn face_meet(&self, f1: &Face, f2: &Face) -> Face {
        let (Face::Translate { sigma: s1, base: b1 }, Face::Translate { sigma: s2, base: b2 }) = (f1, f2) else {
            return Face::Empty;
        };
        let g = &self.group;
        let v = g.multiply(&g.inverse(s1), s2);
        let (a, u, _) = g.double_coset_factorize(&v, b1.lambda(), b2.lambda());
        if !u.in_standard_parabolic(self.j0) {
            return Face::Empty;
        }
        let m = self.size();
        let image: NodeSet =
            b2.i.iter().filter_map(|b| g.act_on_root(&u, &RootVector::simple(b, m)).as_simple()).collect();
        self.canonicalize_face(&g.multiply(s1, &a), b1.i.intersection(image))
    }

    pub fn face_join(&self, f1: &Face, f2: &Face) -> Face {
        let (s1, b1, s2, b2) = match (f1, f2) {
            (Face::Empty, other) | (other, Face::Empty) => return other.clone(),
            (Face::Translate { sigma: s1, base: b1 }, Face::Translate { sigma: s2, base: b2 }) => (s1, b1, s2, b2),
        };
        let g = &self.group;
        let v = g.multiply(&g.inverse(s1), s2);
        let (a, u, _) = g.double_coset_factorize(&v, b1.lambda(), b2.lambda());
        self.canonicalize_face(&g.multiply(s1, &a), b1.i.union(b2.i).union(u.support()))
    }

    /// `(sigma, lambda(F))`: the isotropy group is `sigma W_lambda sigma^{-1}`.
    pub fn isotropy_type(&self, face: &Face) -> (WeylElement, NodeSet) {
        match face {
            Face::Empty => (WeylElement::identity(), self.all()),
            Face::Translate { sigma, base } => (sigma.clone(), base.lambda()),
        }
    }

    /// `(sigma, lambda_*(F))`: the pointwise stabilizer is `sigma W_{lambda_*} sigma^{-1}`.
    pub fn stabilizer_type(&self, face: &Face) -> (WeylElement, NodeSet) {
        match face {
            Face::Empty => (WeylElement::identity(), self.all()),
            Face::Translate { sigma, base } => (sigma.clone(), base.i_star),
        }
    }

    /// `(sigma, lambda^*(F)) = (sigma, I)`; empty for the empty face.
    pub fn moving_type(&self, face: &Face) -> (WeylElement, NodeSet) {
        match face {
            Face::Empty => (WeylElement::identity(), NodeSet::EMPTY),
            Face::Translate { sigma, base } => (sigma.clone(), base.i),
        }
    }

    /// All faces with `l(sigma) <= bound`.
    pub fn enumerate_faces(&self, bound: usize) -> FaceEnumeration {
        let mut faces = self.fundamental_faces();
        let mut seen: HashSet<Face> = faces.iter().cloned().collect();
        let mut level: Vec<Face> = faces.iter().filter(|f| !f.is_empty()).cloned().collect();
        // A suffix of a minimal coset representative is again minimal, so
        // level k+1 is reached from level k by one left multiplication.
        let mut len = 0;
        loop {
            let mut next = Vec::new();
            for f in &level {
                for s in 0..self.size() {
                    let g = self.act_face(&self.group.generator(s), f);
                    if g.sigma().is_some_and(|x| x.length() == len + 1) && seen.insert(g.clone()) {
                        next.push(g);
                    }
                }
            }
            if next.is_empty() {
                faces.sort();
                return FaceEnumeration { faces, complete: true };
            }
            if len == bound {
                faces.sort();
                return FaceEnumeration { faces, complete: false };
            }
            faces.extend(next.iter().cloned());
            level = next;
            len += 1;
        }
    }

    /// Locates a dominant `eta` in the stratification `(mu - R_{>0} K) n C`.
    pub fn stratify_point(&self, eta: &WeightVector) -> Result<Stratum> {
        if eta.coords.len() != self.real.dim() {
            return Err(Error::DimensionMismatch { expected: self.real.dim(), got: eta.coords.len() });
        }
        let diff = self.mu.sub(eta);
        let coefficients = self.real.expand_in_roots(&diff).ok_or(Error::NotInChamberHull)?;
        if coefficients.iter().any(Signed::is_negative) {
            return Err(Error::NotInChamberHull);
        }
        let k: NodeSet = coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
        if !self.is_mu_connected(k) {
            return Err(Error::NotInChamberHull);
        }
        // Support is tested first: a point off every stratum is reported as
        // such even when it also fails dominance.
        if let Some(i) = (0..self.size()).find(|&i| eta.coords[i].is_negative()) {
            return Err(Error::DominanceViolated(i + 1));
        }
        Ok(Stratum { k, coefficients })
    }

    /// `H n C` is closed iff every component of `Pi^* n J0` is of finite type.
    pub fn hull_chamber_closed(&self) -> bool {
        self.real.cartan().is_finite_type(self.pi_star().intersection(self.j0))
    }

    pub fn edges_at_mu(&self, cap: usize) -> EdgesAtMu {
        let m = self.size();
        let mut seen: HashSet<RootVector> = HashSet::new();
        let mut queue: Vec<RootVector> = self.jgt.iter().map(|j| RootVector::simple(j, m)).collect();
        let mut complete = true;
        while let Some(r) = queue.pop() {
            if seen.contains(&r) {
                continue;
            }
            if seen.len() >= cap {
                complete = false;
                break;
            }
            for s in self.j0.iter() {
                let image = self.group.act_on_root(&self.group.generator(s), &r);
                if !seen.contains(&image) {
                    queue.push(image);
                }
            }
            seen.insert(r);
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        EdgesAtMu { finite: self.hull_chamber_closed(), roots, complete }
    }

    /// Orbit points lying in the face: `sigma W_I mu`.
    pub fn face_points(&self, face: &Face, cap: usize) -> (Vec<WeightVector>, bool) {
        match face {
            Face::Empty => (Vec::new(), true),
            Face::Translate { sigma, base } => {
                let orbit = self.group.orbit_enumerate(&self.real, &self.mu, base.i, cap);
                let pts = orbit.points.iter().map(|p| self.group.act_on_weight(&self.real, sigma, p)).collect();
                (pts, orbit.complete)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;

    fn point(a: Vec<Vec<i64>>, mu: &[i64]) -> DominantPoint {
        let real = Realization::canonical(CartanMatrix::new(a).unwrap());
        let mu = real.weight_from_ints(mu).unwrap();
        DominantPoint::new(real, mu).unwrap()
    }

    fn a2() -> DominantPoint {
        point(vec![vec![2, -1], vec![-1, 2]], &[3, 2])
    }

    fn a11() -> DominantPoint {
        point(vec![vec![2, -2], vec![-2, 2]], &[1, 0, 0])
    }

    fn set(ix: &[usize]) -> NodeSet {
        ix.iter().copied().collect()
    }

    #[test]
    fn type_maps() {
        let dp = a11();
        assert_eq!(dp.j0(), set(&[1]));
        assert_eq!(dp.mu_connected_part(set(&[1])), NodeSet::EMPTY);
        assert_eq!(dp.mu_connected_part(set(&[0, 1])), set(&[0, 1]));
        assert_eq!(dp.i_star(NodeSet::EMPTY), Ok(set(&[1])));
        assert_eq!(dp.i_star(set(&[0])), Ok(NodeSet::EMPTY));
        assert!(dp.i_star(set(&[1])).is_err());
        assert_eq!(dp.stabilizer_type(&dp.vertex()).1, set(&[1]));
        assert_eq!(dp.stabilizer_type(&Face::Empty).1, set(&[0, 1]));
    }

    #[test]
    fn fundamental_face_counts() {
        assert_eq!(a2().fundamental_faces().len(), 5);
        assert_eq!(a11().fundamental_faces().len(), 4);
        assert_eq!(point(vec![vec![2, -2], vec![-3, 2]], &[1, 1]).fundamental_faces().len(), 5);
    }

    #[test]
    fn canonical_forms() {
        let dp = a2();
        let g = dp.group();
        let f = dp.canonicalize_face(&g.generator(1), set(&[1]));
        assert_eq!(f, Face::Translate { sigma: WeylElement::identity(), base: dp.fundamental_of(set(&[1])) });
        let dp = a11();
        assert_eq!(dp.canonicalize_face(&WeylElement::identity(), set(&[1])), dp.vertex());
    }

    #[test]
    fn hexagon_lattice_operations() {
        let dp = a2();
        let g = dp.group();
        let e1 = dp.canonicalize_face(&WeylElement::identity(), set(&[0]));
        let r2e2 = dp.canonicalize_face(&g.generator(1), set(&[1]));
        assert!(!dp.face_leq(&e1, &r2e2));
        assert_eq!(dp.face_meet(&e1, &r2e2), dp.vertex());
        assert_eq!(dp.face_join(&e1, &r2e2), dp.hull());
        let r2r1e1 = dp.canonicalize_face(&g.from_word(&[1, 0]).unwrap(), set(&[0]));
        assert_eq!(dp.face_meet(&e1, &r2r1e1), Face::Empty);
        assert_eq!(dp.face_meet(&e1, &dp.hull()), e1);
        assert_eq!(dp.face_join(&e1, &Face::Empty), e1);
        assert_eq!(dp.act_face(&g.generator(1), &e1).sigma(), Some(&g.generator(1)));
    }

    #[test]
    fn face_enumeration_counts() {
        let dp = a2();
        let all = dp.enumerate_faces(3);
        assert!(all.complete);
        assert_eq!(all.faces.len(), 14);
        assert_eq!(dp.enumerate_faces(0).faces.len(), 5);

        let affine = a11().enumerate_faces(4);
        assert!(!affine.complete);
        let counts = affine.counts_by_dimension();
        assert_eq!(counts, BTreeMap::from([(-1, 1), (0, 5), (1, 5), (2, 1)]));
    }

    #[test]
    fn stratification() {
        let dp = a2();
        assert_eq!(dp.stratify_point(dp.mu()).unwrap().k, NodeSet::EMPTY);
        let eta = dp.realization().weight_from_ints(&[2, 1]).unwrap();
        assert_eq!(dp.stratify_point(&eta).unwrap().k, set(&[0, 1]));
        let dp = a11();
        let alpha2 = dp.realization().root_to_weight(&RootVector::simple(1, 2));
        assert_eq!(dp.stratify_point(&dp.mu().sub(&alpha2)), Err(Error::NotInChamberHull));
        let alpha1 = dp.realization().root_to_weight(&RootVector::simple(0, 2));
        assert_eq!(dp.stratify_point(&dp.mu().sub(&alpha1)), Err(Error::DominanceViolated(1)));
    }

    #[test]
    fn closedness_and_edges() {
        assert!(a2().hull_chamber_closed());
        assert!(a11().hull_chamber_closed());
        let open = point(vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]], &[0, 0, 1]);
        assert!(!open.hull_chamber_closed());

        let e = a2().edges_at_mu(10);
        assert!(e.finite && e.complete);
        assert_eq!(e.roots, vec![RootVector::new(&[1, 0]), RootVector::new(&[0, 1])]);
        let e = a11().edges_at_mu(10);
        assert_eq!(e.roots, vec![RootVector::new(&[1, 0]), RootVector::new(&[1, 2])]);
    }
}
