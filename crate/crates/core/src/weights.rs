//! Weights of the integrable highest weight module `L(mu)` down to a fixed
//! depth, real roots, and the weight-string laws relative to faces.
//!
//! A weight is stored by its depth vector `k` with `lambda = mu - sum k_i alpha_i`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cartan::RootVector;
use crate::coxeter::WeylElement;
use crate::faces::{DominantPoint, Face};
use crate::{Error, NodeSet, Result};

/// Position of a real root relative to a face: `Delta_*`, `Delta^*`, `Delta_p`, `Delta_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootRegion {
    Star,
    UpperStar,
    Positive,
    Negative,
}

impl RootRegion {
    /// Membership in `Delta(F) = Delta_* u Delta^*`.
    pub fn in_isotropy(self) -> bool {
        matches!(self, RootRegion::Star | RootRegion::UpperStar)
    }
}

/// A real root `gamma = w(alpha_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub root: RootVector,
    pub w: WeylElement,
    pub simple: usize,
}

#[derive(Clone, Debug)]
pub struct TruncatedWeightSet {
    dp: DominantPoint,
    mu: Vec<i64>,
    depth: usize,
    weights: BTreeSet<Vec<i64>>,
}

fn total(k: &[i64]) -> i64 {
    k.iter().sum()
}

impl TruncatedWeightSet {
    /// Simple-root string recursion, one depth layer at a time.
    pub fn generate(dp: &DominantPoint, depth: usize) -> Result<Self> {
        let m = dp.size();
        if !dp.mu().is_integral() {
            return Err(Error::NotDominantIntegral);
        }
        let mu: Vec<i64> = dp.mu().coords[..m]
            .iter()
            .map(|c| c.to_integer().to_i64().ok_or(Error::NotDominantIntegral))
            .collect::<Result<_>>()?;
        let mut set = TruncatedWeightSet { dp: dp.clone(), mu, depth, weights: BTreeSet::new() };
        let mut layers: Vec<Vec<Vec<i64>>> = vec![Vec::new(); depth + 1];
        layers[0].push(vec![0; m]);
        set.weights.insert(vec![0; m]);
        for d in 0..=depth {
            let layer = std::mem::take(&mut layers[d]);
            for k in &layer {
                for i in 0..m {
                    let mut up = k.clone();
                    let mut q = 0;
                    while up[i] > 0 {
                        up[i] -= 1;
                        if !set.weights.contains(&up) {
                            break;
                        }
                        q += 1;
                    }
                    let p = q + set.pairing(k, i);
                    let mut down = k.clone();
                    for _ in 0..p {
                        down[i] += 1;
                        let dd = total(&down) as usize;
                        if dd > depth {
                            break;
                        }
                        if set.weights.insert(down.clone()) {
                            layers[dd].push(down.clone());
                        }
                    }
                }
            }
        }
        Ok(set)
    }

    pub fn point(&self) -> &DominantPoint {
        &self.dp
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        self.weights.contains(k)
    }

    /// Depth vectors, by total depth then lexicographically.
    pub fn depth_vectors(&self) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.weights.iter().cloned().collect();
        v.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| a.cmp(b)));
        v
    }

    pub fn within(&self, k: &[i64]) -> bool {
        k.iter().all(|&x| x >= 0) && total(k) <= self.depth as i64
    }

    /// `<mu - k alpha, alpha_i^vee>`.
    pub fn pairing(&self, k: &[i64], i: usize) -> i64 {
        let a = self.dp.realization().cartan();
        self.mu[i] - k.iter().enumerate().map(|(j, &kj)| a.entry(i, j) * kj).sum::<i64>()
    }

    /// Depth vector of `r_i(lambda)`.
    pub fn reflect(&self, k: &[i64], i: usize) -> Vec<i64> {
        let mut out = k.to_vec();
        out[i] += self.pairing(k, i);
        out
    }

    /// Depth vector of `w(lambda)`.
    pub fn act(&self, w: &WeylElement, k: &[i64]) -> Vec<i64> {
        w.word().iter().rev().fold(k.to_vec(), |acc, &s| self.reflect(&acc, s))
    }

    /// `<lambda, gamma^vee> = <w^{-1} lambda, alpha_k^vee>` for `gamma = w(alpha_k)`.
    pub fn root_pairing(&self, k: &[i64], gamma: &RealRoot) -> i64 {
        let g = self.dp.group();
        let back = self.act(&g.inverse(&gamma.w), k);
        self.pairing(&back, gamma.simple)
    }

    /// Weights in the face `F`: those whose `sigma^{-1}`-translate has depth
    /// support inside `I`. Exact because `P(V)` is `W`-stable.
    pub fn face_weights(&self, face: &Face) -> Vec<Vec<i64>> {
        let Face::Translate { sigma, base } = face else {
            return Vec::new();
        };
        let back = self.dp.group().inverse(sigma);
        self.depth_vectors()
            .into_iter()
            .filter(|k| {
                let kk = self.act(&back, k);
                kk.iter().enumerate().all(|(i, &x)| x == 0 || base.i.contains(i))
            })
            .collect()
    }
}

fn to_i64(r: &RootVector) -> Vec<i64> {
    r.coeffs.iter().map(|c| c.to_i64().expect("root coefficient fits in i64")).collect()
}

/// Writes a real root as `w(alpha_k)` by descending in height, or fails.
pub fn real_root_witness(dp: &DominantPoint, gamma: &RootVector) -> Result<RealRoot> {
    let g = dp.group();
    let a = dp.realization().cartan();
    let negative = gamma.is_negative();
    if !negative && !gamma.is_positive() {
        return Err(Error::NotARealRoot);
    }
    let mut cur = if negative { gamma.neg() } else { gamma.clone() };
    let mut path = Vec::new();
    while cur.as_simple().is_none() {
        let step = (0..dp.size()).find(|&i| cur.pairing(a, i).is_positive());
        let Some(i) = step else {
            return Err(Error::NotARealRoot);
        };
        cur = g.act_on_root(&g.generator(i), &cur);
        if !cur.is_positive() {
            return Err(Error::NotARealRoot);
        }
        path.push(i);
    }
    let simple = cur.as_simple().expect("loop exits on a simple root");
    // gamma = r_{i1} .. r_{it} alpha_k, and -alpha_k = r_k alpha_k.
    if negative {
        path.push(simple);
    }
    Ok(RealRoot { root: gamma.clone(), w: g.from_word(&path)?, simple })
}

/// Positive real roots of height at most `max_height`, by height then coefficients.
pub fn positive_real_roots(dp: &DominantPoint, max_height: usize) -> Vec<RootVector> {
    let g = dp.group();
    let a = dp.realization().cartan();
    let m = dp.size();
    let bound = BigInt::from(max_height);
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut frontier: Vec<RootVector> = (0..m).map(|i| RootVector::simple(i, m)).collect();
    if max_height == 0 {
        return Vec::new();
    }
    while let Some(r) = frontier.pop() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for i in 0..m {
            if r.pairing(a, i).is_negative() {
                let up = g.act_on_root(&g.generator(i), &r);
                if up.height() <= bound && !seen.contains(&up) {
                    frontier.push(up);
                }
            }
        }
    }
    let mut out: Vec<RootVector> = seen.into_iter().collect();
    out.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| y.cmp(x)));
    out
}

/// Region of the real root `gamma` relative to `face`.
pub fn classify_root(dp: &DominantPoint, face: &Face, gamma: &RootVector) -> Result<RootRegion> {
    real_root_witness(dp, gamma)?;
    let Face::Translate { sigma, base } = face else {
        return Ok(RootRegion::Star);
    };
    let g = dp.group();
    let local = g.act_on_root(&g.inverse(sigma), gamma);
    let support = local.support();
    Ok(if support.is_subset(base.i_star) {
        RootRegion::Star
    } else if support.is_subset(base.i) {
        RootRegion::UpperStar
    } else if local.is_positive() {
        RootRegion::Positive
    } else {
        RootRegion::Negative
    })
}

/// Outcome of the weight-string checks for one face.
#[derive(Clone, Debug, Default)]
pub struct StringReport {
    pub roots: usize,
    pub checked: usize,
    /// Strings that leave the truncation; neither passed nor failed.
    pub skipped: usize,
    pub violations: Vec<String>,
    /// Existence clauses with no witness among the truncated face weights.
    pub unwitnessed: Vec<String>,
}

impl StringReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for StringReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "roots {}, strings checked {}, skipped {}, violations {}, unwitnessed existence clauses {}",
            self.roots,
            self.checked,
            self.skipped,
            self.violations.len(),
            self.unwitnessed.len()
        )
    }
}

/// `(q, p)` with the string `eta + q gamma, .., eta - p gamma`, or `None`
/// if an end lies beyond the truncation.
fn string_extent(tw: &TruncatedWeightSet, k: &[i64], gamma: &[i64]) -> Option<(i64, i64)> {
    let step = |t: i64| -> Vec<i64> { k.iter().zip(gamma).map(|(a, b)| a - t * b).collect() };
    let mut extent = [0i64; 2];
    for (slot, dir) in [(0, 1i64), (1, -1i64)] {
        let mut t = 1;
        loop {
            let kk = step(dir * t);
            if kk.iter().any(|&x| x < 0) {
                break;
            }
            if !tw.within(&kk) {
                return None;
            }
            if !tw.contains(&kk) {
                break;
            }
            t += 1;
        }
        extent[slot] = t - 1;
    }
    Some((extent[0], extent[1]))
}

/// Checks the string laws for every real root of height at most `max_height` (both signs).
pub fn verify_string_laws(tw: &TruncatedWeightSet, face: &Face, max_height: usize) -> StringReport {
    let dp = tw.point();
    let mut report = StringReport::default();
    if face.is_empty() {
        return report;
    }
    let face_weights = tw.face_weights(face);
    let in_face: HashSet<&Vec<i64>> = face_weights.iter().collect();
    let positive = positive_real_roots(dp, max_height);
    for gamma in positive.iter().flat_map(|r| [r.clone(), r.neg()]) {
        report.roots += 1;
        let region = classify_root(dp, face, &gamma).expect("enumerated roots are real");
        let witness = real_root_witness(dp, &gamma).expect("enumerated roots are real");
        let g = to_i64(&gamma);
        let mut moving = false;
        let mut strict_positive = false;
        let mut strict_negative = false;
        for k in &face_weights {
            let c = tw.root_pairing(k, &witness);
            moving |= c != 0;
            strict_positive |= c > 0;
            strict_negative |= c < 0;
            let Some((q, p)) = string_extent(tw, k, &g) else {
                report.skipped += 1;
                continue;
            };
            report.checked += 1;
            let mut fail = |why: &str| report.violations.push(format!("{face} {gamma} at {k:?}: {why}"));
            if p - q != c {
                fail("p - q differs from the pairing");
            }
            match region {
                RootRegion::Star | RootRegion::UpperStar => {
                    let all_in = (-p..=q).all(|t| {
                        let kk: Vec<i64> = k.iter().zip(&g).map(|(a, b)| a - t * b).collect();
                        in_face.contains(&kk)
                    });
                    if !all_in {
                        fail("string leaves the face");
                    }
                    if region == RootRegion::Star && (p != 0 || q != 0 || c != 0) {
                        fail("string through a fixed weight is not a singleton");
                    }
                }
                RootRegion::Positive => {
                    if c < 0 || q != 0 || p != c {
                        fail("positive-region string is not eta .. r(eta)");
                    }
                }
                RootRegion::Negative => {
                    if c > 0 || p != 0 || q != -c {
                        fail("negative-region string is not eta .. r(eta)");
                    }
                }
            }
        }
        let witnessed = match region {
            RootRegion::Star => true,
            RootRegion::UpperStar => moving && strict_positive && strict_negative,
            RootRegion::Positive => strict_positive,
            RootRegion::Negative => strict_negative,
        };
        if !witnessed {
            report.unwitnessed.push(format!("{face} {gamma} {region:?}"));
        }
    }
    report
}

/// Outcome of comparing weight membership with the chamber stratification.
#[derive(Clone, Debug, Default)]
pub struct CrosscheckReport {
    pub dominant_checked: usize,
    pub mismatches: Vec<String>,
}

/// For dominant `lambda = mu - k alpha` with `sum k <= depth`: weight iff stratifiable.
pub fn dominant_membership_crosscheck(tw: &TruncatedWeightSet) -> CrosscheckReport {
    let dp = tw.point();
    let m = dp.size();
    let real = dp.realization();
    let mut report = CrosscheckReport::default();
    let mut k = vec![0i64; m];
    loop {
        if (0..m).all(|i| tw.pairing(&k, i) >= 0) {
            report.dominant_checked += 1;
            let root = RootVector::new(&k);
            let lambda = dp.mu().sub(&real.root_to_weight(&root));
            let stratified = dp.stratify_point(&lambda).is_ok();
            if stratified != tw.contains(&k) {
                report.mismatches.push(format!("{k:?}: weight {} stratified {stratified}", tw.contains(&k)));
            }
        }
        // Next vector with total at most depth.
        let mut i = 0;
        loop {
            if i == m {
                return report;
            }
            k[i] += 1;
            if total(&k) <= tw.depth() as i64 {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Depth support of a weight.
pub fn depth_support(k: &[i64]) -> NodeSet {
    k.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}
