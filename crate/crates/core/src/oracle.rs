//! Brute-force face lattices of rational polytopes, and a certifier that
//! compares them with the combinatorial face calculus.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::cartan::WeightVector;
use crate::coxeter::WeylElement;
use crate::faces::{DominantPoint, Face};
use crate::linalg::{self, Rat};
use crate::{Error, NodeSet, Result};

pub const MAX_POINTS: usize = 200;
pub const MAX_DIM: usize = 4;

/// A face given by the indices of the points it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomFace {
    pub vertices: Vec<usize>,
    pub dim: isize,
    /// A functional on hull coordinates whose maximizers among the points
    /// are exactly `vertices`; `None` for the empty face.
    pub witness: Option<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct GeomLattice {
    /// Distinct input points.
    pub points: Vec<Vec<Rat>>,
    /// Points in coordinates of their affine hull.
    pub projected: Vec<Vec<Rat>>,
    pub dim: usize,
    /// Faces sorted by dimension, then vertex lists.
    pub faces: Vec<GeomFace>,
    index: HashMap<Vec<usize>, usize>,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn affine_rank(points: &[&Vec<Rat>]) -> isize {
    let Some((first, rest)) = points.split_first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rat>> = rest.iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    linalg::rank(&diffs) as isize
}

/// Subsets of `0..n` of size `k`, lexicographically.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

impl GeomLattice {
    /// Face lattice of `conv(points)` by facet enumeration over point subsets.
    pub fn new(points: &[Vec<Rat>]) -> Result<Self> {
        let mut distinct: Vec<Vec<Rat>> = Vec::new();
        for p in points {
            if !distinct.contains(p) {
                distinct.push(p.clone());
            }
        }
        let ambient = distinct.first().map_or(0, Vec::len);
        if distinct.len() > MAX_POINTS || ambient > MAX_DIM {
            return Err(Error::TooLarge { points: distinct.len(), dim: ambient });
        }
        if distinct.iter().any(|p| p.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, got: 0 });
        }
        let n = distinct.len();
        let projected: Vec<Vec<Rat>> = if n == 0 {
            Vec::new()
        } else {
            let diffs: Vec<Vec<Rat>> =
                distinct.iter().map(|p| p.iter().zip(&distinct[0]).map(|(a, b)| a - b).collect()).collect();
            let mut basis = diffs.clone();
            let pivots = linalg::rref(&mut basis);
            // Coordinates in a reduced row echelon basis are the pivot entries.
            diffs.iter().map(|d| pivots.iter().map(|&c| d[c].clone()).collect()).collect()
        };
        let dim = projected.first().map_or(0, Vec::len);

        let mut facets: Vec<(BTreeSet<usize>, Vec<Rat>)> = Vec::new();
        if n > 1 {
            for subset in combinations(n, dim) {
                let eqs: Vec<Vec<Rat>> = subset[1..]
                    .iter()
                    .map(|&j| projected[j].iter().zip(&projected[subset[0]]).map(|(a, b)| a - b).collect())
                    .collect();
                let normals = linalg::nullspace(&eqs, dim);
                if normals.len() != 1 {
                    continue;
                }
                let mut normal = normals.into_iter().next().expect("one normal");
                let offset = dot(&normal, &projected[subset[0]]);
                let values: Vec<Rat> = projected.iter().map(|p| dot(&normal, p) - &offset).collect();
                let above = values.iter().any(Signed::is_positive);
                let below = values.iter().any(Signed::is_negative);
                if above && below {
                    continue;
                }
                if above {
                    normal = normal.into_iter().map(|x| -x).collect();
                }
                let on: BTreeSet<usize> = (0..n).filter(|&i| values[i].is_zero()).collect();
                if !facets.iter().any(|(s, _)| *s == on) {
                    facets.push((on, normal));
                }
            }
        }

        let mut sets: BTreeSet<BTreeSet<usize>> = facets.iter().map(|(s, _)| s.clone()).collect();
        loop {
            let current: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
            let mut grew = false;
            for (a, x) in current.iter().enumerate() {
                for y in &current[a + 1..] {
                    let meet: BTreeSet<usize> = x.intersection(y).copied().collect();
                    grew |= sets.insert(meet);
                }
            }
            if !grew {
                break;
            }
        }
        sets.insert((0..n).collect());
        sets.insert(BTreeSet::new());

        let mut faces: Vec<GeomFace> =
            sets.into_iter()
                .map(|s| {
                    let verts: Vec<usize> = s.iter().copied().collect();
                    let pts: Vec<&Vec<Rat>> = verts.iter().map(|&i| &projected[i]).collect();
                    let witness = (!verts.is_empty()).then(|| {
                        facets.iter().filter(|(f, _)| s.is_subset(f)).fold(vec![Rat::zero(); dim], |acc, (_, nrm)| {
                            acc.iter().zip(nrm).map(|(a, b)| a + b).collect()
                        })
                    });
                    GeomFace { dim: affine_rank(&pts), vertices: verts, witness }
                })
                .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        let index = faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        Ok(GeomLattice { points: distinct, projected, dim, faces, index })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        let fb: BTreeSet<usize> = self.faces[b].vertices.iter().copied().collect();
        self.faces[a].vertices.iter().all(|v| fb.contains(v))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let fb: BTreeSet<usize> = self.faces[b].vertices.iter().copied().collect();
        let common: Vec<usize> = self.faces[a].vertices.iter().copied().filter(|v| fb.contains(v)).collect();
        self.find(&common).expect("faces are closed under intersection")
    }

    /// The smallest face containing both.
    pub fn join(&self, a: usize, b: usize) -> usize {
        (0..self.len())
            .filter(|&c| self.leq(a, c) && self.leq(b, c))
            .min_by_key(|&c| self.faces[c].vertices.len())
            .expect("the whole polytope is an upper bound")
    }

    /// The witness functional's maximizers equal the stored vertex set.
    pub fn witness_holds(&self, face: usize) -> bool {
        let f = &self.faces[face];
        let Some(w) = &f.witness else {
            return f.vertices.is_empty();
        };
        let values: Vec<Rat> = self.projected.iter().map(|p| dot(w, p)).collect();
        let Some(max) = values.iter().max() else {
            return false;
        };
        let argmax: Vec<usize> = (0..values.len()).filter(|&i| values[i] == *max).collect();
        argmax == f.vertices
    }
}

/// Outcome of certifying the combinatorial face lattice against geometry.
#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub slice: NodeSet,
    pub orbit_points: usize,
    pub combinatorial_faces: usize,
    pub geometric_faces: usize,
    pub checks: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.combinatorial_faces == self.geometric_faces
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "slice {}: {} orbit points, {} combinatorial faces, {} geometric faces, {} checks, {} mismatches",
            self.slice,
            self.orbit_points,
            self.combinatorial_faces,
            self.geometric_faces,
            self.checks,
            self.mismatches.len()
        )?;
        for m in self.mismatches.iter().take(10) {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}

/// Maximal subsets of `Pi` whose parabolic subgroup is finite.
pub fn finite_slices(dp: &DominantPoint) -> Vec<NodeSet> {
    let cartan = dp.realization().cartan();
    let finite: Vec<NodeSet> = dp.all().subsets().filter(|&s| !s.is_empty() && cartan.is_finite_type(s)).collect();
    let mut maximal: Vec<NodeSet> =
        finite.iter().copied().filter(|s| !finite.iter().any(|t| t != s && s.is_subset(*t))).collect();
    maximal.sort();
    maximal
}

/// Compares the faces of `F_I = conv(W_I mu)` computed both ways.
pub fn compare_lattices(dp: &DominantPoint, slice: Option<NodeSet>) -> Result<OracleReport> {
    let slice = slice.unwrap_or_else(|| dp.all());
    let cartan = dp.realization().cartan();
    if !cartan.is_finite_type(slice) {
        let options: Vec<String> = finite_slices(dp).iter().map(NodeSet::to_string).collect();
        return Err(Error::FiniteTypeRequired { suggestion: options.join(" or ") });
    }
    let g = dp.group();
    let real = dp.realization();
    let orbit = g.orbit_enumerate(real, dp.mu(), slice, MAX_POINTS + 1);
    if !orbit.complete || orbit.points.len() > MAX_POINTS {
        return Err(Error::TooLarge { points: orbit.points.len(), dim: real.dim() });
    }
    let geom = GeomLattice::new(&orbit.points.iter().map(|p| p.coords.clone()).collect::<Vec<_>>())?;
    let point_index: HashMap<&WeightVector, usize> = orbit.points.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let top = dp.mu_connected_part(slice);
    let (group_elems, _) = g.elements_up_to(top, usize::MAX);
    let subsets: Vec<NodeSet> = top.subsets().filter(|&k| dp.is_mu_connected(k)).collect();
    let mut combinatorial: BTreeSet<Face> = BTreeSet::new();
    combinatorial.insert(Face::Empty);
    for w in &group_elems {
        for &k in &subsets {
            combinatorial.insert(dp.canonicalize_face(w, k));
        }
    }
    let faces: Vec<Face> = combinatorial.into_iter().collect();

    let mut report = OracleReport {
        slice,
        orbit_points: orbit.points.len(),
        combinatorial_faces: faces.len(),
        geometric_faces: geom.len(),
        ..Default::default()
    };

    for (i, f) in geom.faces.iter().enumerate() {
        report.checks += 1;
        if !geom.witness_holds(i) {
            report.mismatches.push(format!("witness fails for geometric face {:?}", f.vertices));
        }
    }

    let mut image: Vec<usize> = Vec::with_capacity(faces.len());
    for f in &faces {
        let (pts, _) = dp.face_points(f, MAX_POINTS + 1);
        let mut verts = Vec::new();
        for p in &pts {
            match point_index.get(p) {
                Some(&i) => verts.push(i),
                None => report.mismatches.push(format!("{f}: point {p} outside the orbit")),
            }
        }
        verts.sort_unstable();
        verts.dedup();
        report.checks += 1;
        match geom.find(&verts) {
            Some(j) => {
                if geom.faces[j].dim != f.dimension() {
                    report.mismatches.push(format!("{f}: dimension {} vs {}", f.dimension(), geom.faces[j].dim));
                }
                image.push(j);
            }
            None => {
                report.mismatches.push(format!("{f}: vertex set {verts:?} is not a face"));
                image.push(usize::MAX);
            }
        }
    }
    if !report.mismatches.is_empty() {
        return Ok(report);
    }
    let distinct: BTreeSet<usize> = image.iter().copied().collect();
    if distinct.len() != faces.len() || distinct.len() != geom.len() {
        report.mismatches.push(format!(
            "map is not a bijection: {} faces onto {} of {}",
            faces.len(),
            distinct.len(),
            geom.len()
        ));
        return Ok(report);
    }
    let back: HashMap<usize, usize> = image.iter().enumerate().map(|(i, &j)| (j, i)).collect();

    for (a, fa) in faces.iter().enumerate() {
        for (b, fb) in faces.iter().enumerate() {
            report.checks += 3;
            if dp.face_leq(fa, fb) != geom.leq(image[a], image[b]) {
                report.mismatches.push(format!("inclusion {fa} <= {fb}"));
            }
            let meet = dp.face_meet(fa, fb);
            if faces.get(back[&geom.meet(image[a], image[b])]) != Some(&meet) {
                report.mismatches.push(format!("meet of {fa} and {fb} gave {meet}"));
            }
            let join = dp.face_join(fa, fb);
            if faces.get(back[&geom.join(image[a], image[b])]) != Some(&join) {
                report.mismatches.push(format!("join of {fa} and {fb} gave {join}"));
            }
        }
    }

    for (a, f) in faces.iter().enumerate() {
        let (sigma, fixed) = dp.stabilizer_type(f);
        let (_, isotropy) = dp.isotropy_type(f);
        let verts = &geom.faces[image[a]].vertices;
        let vert_set: BTreeSet<&WeightVector> = verts.iter().map(|&i| &orbit.points[i]).collect();
        let sigma_inv = g.inverse(&sigma);
        let conj = |s: usize| -> WeylElement { g.multiply_all([&sigma, &g.generator(s), &sigma_inv]) };
        if f.is_empty() {
            continue;
        }
        for s in fixed.iter() {
            report.checks += 1;
            let x = conj(s);
            if verts.iter().any(|&i| g.act_on_weight(real, &x, &orbit.points[i]) != orbit.points[i]) {
                report.mismatches.push(format!("{f}: stabilizer generator {x} moves a vertex"));
            }
        }
        for s in isotropy.iter() {
            report.checks += 1;
            let x = conj(s);
            if !verts.iter().all(|&i| vert_set.contains(&g.act_on_weight(real, &x, &orbit.points[i]))) {
                report.mismatches.push(format!("{f}: isotropy generator {x} does not preserve the face"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanMatrix, Realization};
    use crate::linalg::rat;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rat>> {
        raw.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn small_polytopes() {
        assert_eq!(GeomLattice::new(&pts(&[&[1, 2]])).unwrap().len(), 2);
        assert_eq!(GeomLattice::new(&pts(&[&[0, 0], &[1, 1]])).unwrap().len(), 4);
        let square = GeomLattice::new(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(square.len(), 10);
        // An interior point is not a vertex.
        let with_center = GeomLattice::new(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]])).unwrap();
        assert_eq!(with_center.len(), 10);
        let cube: Vec<Vec<i64>> = (0..8).map(|b| vec![b & 1, (b >> 1) & 1, (b >> 2) & 1]).collect();
        let cube =
            GeomLattice::new(&cube.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>()).unwrap();
        assert_eq!(cube.len(), 1 + 8 + 12 + 6 + 1);
        assert!((0..cube.len()).all(|i| cube.witness_holds(i)));
    }

    #[test]
    fn hexagon_matches() {
        let real = Realization::canonical(CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap());
        let mu = real.weight_from_ints(&[3, 2]).unwrap();
        let dp = DominantPoint::new(real, mu).unwrap();
        let report = compare_lattices(&dp, None).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.geometric_faces, 14);
    }

    #[test]
    fn infinite_type_needs_a_slice() {
        let real = Realization::canonical(CartanMatrix::new(vec![vec![2, -2], vec![-3, 2]]).unwrap());
        let mu = real.weight_from_ints(&[1, 1]).unwrap();
        let dp = DominantPoint::new(real, mu).unwrap();
        match compare_lattices(&dp, None) {
            Err(Error::FiniteTypeRequired { suggestion }) => assert_eq!(suggestion, "{1} or {2}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(compare_lattices(&dp, Some(NodeSet::singleton(0))).unwrap().passed());
    }
}
