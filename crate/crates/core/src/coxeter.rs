//! Word-level Weyl group arithmetic that works for infinite Coxeter groups.
//!
//! An element `w` is determined by the pairings `<w rho, alpha_i^vee>` where
//! `rho` pairs to 1 with every simple coroot: `s` is a left descent of `w`
//! iff the `s`-th pairing is negative. Repeatedly peeling off the smallest
//! left descent yields the ShortLex-minimal reduced word, which is stored.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cartan::{CartanMatrix, Realization, RootVector, WeightVector};
use crate::linalg::Rat;
use crate::{Error, NodeSet, Result};

/// A Weyl group element in ShortLex normal form (0-based generator indices).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Generators occurring in any reduced word.
    pub fn support(&self) -> NodeSet {
        self.word.iter().copied().collect()
    }

    pub fn in_standard_parabolic(&self, j: NodeSet) -> bool {
        self.support().is_subset(j)
    }

    /// Space-separated 1-based word; empty for the identity.
    pub fn to_word_string(&self) -> String {
        self.word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// ShortLex: shorter first, then lexicographic on words.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "r{}", s + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Side for parabolic coset representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Cosets `W_J w`.
    Left,
    /// Cosets `w W_J`.
    Right,
}

/// Result of a bounded breadth-first orbit search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Points in breadth-first layers; each layer sorted by coordinates.
    pub points: Vec<WeightVector>,
    /// Layer boundaries: layer `k` is `points[layers[k]..layers[k+1]]`.
    pub layers: Vec<usize>,
    /// True iff the whole orbit was reached within the cap.
    pub complete: bool,
}

pub const DEFAULT_ORBIT_CAP: usize = 100_000;

/// The Weyl group `W(A)` with Coxeter generators `r_1 .. r_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    cartan: CartanMatrix,
}

impl WeylGroup {
    pub fn new(cartan: CartanMatrix) -> Self {
        WeylGroup { cartan }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.size()
    }

    pub fn generator(&self, s: usize) -> WeylElement {
        assert!(s < self.rank(), "generator index out of range");
        WeylElement { word: vec![s] }
    }

    /// Normal form of an arbitrary (not necessarily reduced) 0-based word.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        if let Some(&s) = word.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::IndexOutOfRange(s + 1));
        }
        Ok(self.element_from_rho(self.rho_of_word(word)))
    }

    /// Parses a space-separated 1-based word; empty input is the identity.
    pub fn parse_word(&self, text: &str) -> Result<WeylElement> {
        let mut word = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let tok = tok.trim_start_matches(['r', 's']);
            let i: usize = tok.parse().map_err(|_| Error::ElementParse(format!("bad generator '{tok}'")))?;
            if i == 0 || i > self.rank() {
                return Err(Error::IndexOutOfRange(i));
            }
            word.push(i - 1);
        }
        self.from_word(&word)
    }

    /// `<w rho, alpha_i^vee>` for `i = 1..m`.
    pub fn rho_vector(&self, w: &WeylElement) -> Vec<BigInt> {
        self.rho_of_word(&w.word)
    }

    fn rho_of_word(&self, word: &[usize]) -> Vec<BigInt> {
        let mut v = vec![BigInt::one(); self.rank()];
        for &s in word.iter().rev() {
            self.reflect_pairings(s, &mut v);
        }
        v
    }

    /// Applies `r_s` to a vector of coroot pairings: `v_i -= a_is v_s`.
    pub fn reflect_pairings(&self, s: usize, v: &mut [BigInt]) {
        let vs = v[s].clone();
        if vs.is_zero() {
            return;
        }
        for (i, x) in v.iter_mut().enumerate() {
            let a = self.cartan.entry(i, s);
            if a != 0 {
                *x -= &vs * a;
            }
        }
    }

    /// Recovers the normal form from `<w rho, alpha_i^vee>`.
    pub fn element_from_rho(&self, mut v: Vec<BigInt>) -> WeylElement {
        let mut word = Vec::new();
        while let Some(s) = v.iter().position(Signed::is_negative) {
            word.push(s);
            self.reflect_pairings(s, &mut v);
        }
        WeylElement { word }
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let mut v = self.rho_vector(b);
        for &s in a.word.iter().rev() {
            self.reflect_pairings(s, &mut v);
        }
        self.element_from_rho(v)
    }

    pub fn multiply_all<'a>(&self, items: impl IntoIterator<Item = &'a WeylElement>) -> WeylElement {
        items.into_iter().fold(WeylElement::identity(), |acc, x| self.multiply(&acc, x))
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.element_from_rho(self.rho_of_word(&rev))
    }

    /// `w(beta)` in simple-root coordinates.
    pub fn act_on_root(&self, w: &WeylElement, beta: &RootVector) -> RootVector {
        let mut c = beta.coeffs.clone();
        for &s in w.word.iter().rev() {
            let p: BigInt = c.iter().enumerate().map(|(j, x)| x * self.cartan.entry(s, j)).sum();
            c[s] -= p;
        }
        RootVector { coeffs: c }
    }

    /// `w(lambda)` in realization coordinates.
    pub fn act_on_weight(&self, real: &Realization, w: &WeylElement, lambda: &WeightVector) -> WeightVector {
        let mut coords = lambda.coords.clone();
        for &s in w.word.iter().rev() {
            reflect_weight(real, s, &mut coords);
        }
        WeightVector { coords }
    }

    /// `l(w r_s) < l(w)`, i.e. `w(alpha_s) < 0`.
    pub fn is_right_descent(&self, w: &WeylElement, s: usize) -> bool {
        self.act_on_root(w, &RootVector::simple(s, self.rank())).is_negative()
    }

    /// `l(r_s w) < l(w)`, i.e. `w^{-1}(alpha_s) < 0`.
    pub fn is_left_descent(&self, w: &WeylElement, s: usize) -> bool {
        self.rho_vector(w)[s].is_negative()
    }

    pub fn left_descents(&self, w: &WeylElement) -> NodeSet {
        self.rho_vector(w).iter().enumerate().filter(|(_, x)| x.is_negative()).map(|(i, _)| i).collect()
    }

    pub fn right_descents(&self, w: &WeylElement) -> NodeSet {
        self.left_descents(&self.inverse(w))
    }

    /// `w = a x` with `a` in `W_J` and `x` minimal in `W_J x`.
    pub fn strip_left(&self, w: &WeylElement, j: NodeSet) -> (WeylElement, WeylElement) {
        let mut v = self.rho_vector(w);
        let mut peeled = Vec::new();
        while let Some(s) = j.iter().find(|&s| v[s].is_negative()) {
            peeled.push(s);
            self.reflect_pairings(s, &mut v);
        }
        let a = self.element_from_rho(self.rho_of_word(&peeled));
        (a, self.element_from_rho(v))
    }

    /// `w = u b` with `b` in `W_J` and `u` minimal in `u W_J`.
    pub fn strip_right(&self, w: &WeylElement, j: NodeSet) -> (WeylElement, WeylElement) {
        let (a, x) = self.strip_left(&self.inverse(w), j);
        (self.inverse(&x), self.inverse(&a))
    }

    pub fn min_coset_rep(&self, w: &WeylElement, j: NodeSet, side: Side) -> WeylElement {
        if j.is_empty() {
            return w.clone();
        }
        match side {
            Side::Left => self.strip_left(w, j).1,
            Side::Right => self.strip_right(w, j).0,
        }
    }

    /// `w = a u b` with `a` in `W_I`, `b` in `W_J`, `u` minimal in `W_I w W_J`
    /// and `l(w) = l(a) + l(u) + l(b)`.
    pub fn double_coset_factorize(
        &self,
        w: &WeylElement,
        i: NodeSet,
        j: NodeSet,
    ) -> (WeylElement, WeylElement, WeylElement) {
        let (a, x) = self.strip_left(w, i);
        let (u, b) = self.strip_right(&x, j);
        (a, u, b)
    }

    /// Elements of `W_J` of length at most `max_len`, in ShortLex order, and
    /// whether the whole of `W_J` was reached.
    pub fn elements_up_to(&self, j: NodeSet, max_len: usize) -> (Vec<WeylElement>, bool) {
        let mut all = vec![WeylElement::identity()];
        let mut layer = vec![WeylElement::identity()];
        for len in 0..=max_len {
            let mut next: Vec<WeylElement> = Vec::new();
            let mut seen = HashSet::new();
            for w in &layer {
                for s in j.iter() {
                    let sw = self.multiply(&self.generator(s), w);
                    if sw.length() == len + 1 && seen.insert(sw.clone()) {
                        next.push(sw);
                    }
                }
            }
            if next.is_empty() {
                return (all, true);
            }
            if len == max_len {
                return (all, false);
            }
            next.sort();
            all.extend(next.iter().cloned());
            layer = next;
        }
        unreachable!()
    }

    /// Breadth-first enumeration of `W_I mu`, stopping after `cap` points.
    pub fn orbit_enumerate(&self, real: &Realization, mu: &WeightVector, i: NodeSet, cap: usize) -> Orbit {
        let cap = cap.max(1);
        let mut points = vec![mu.clone()];
        let mut layers = vec![0];
        if i.is_empty() {
            layers.push(1);
            return Orbit { points, layers, complete: true };
        }
        let mut seen: HashSet<WeightVector> = HashSet::new();
        seen.insert(mu.clone());
        let mut frontier = vec![mu.clone()];
        loop {
            let mut next: Vec<WeightVector> = Vec::new();
            for p in &frontier {
                for s in i.iter() {
                    if p.coords[s].is_zero() {
                        continue;
                    }
                    let mut c = p.coords.clone();
                    reflect_weight(real, s, &mut c);
                    let q = WeightVector { coords: c };
                    if seen.insert(q.clone()) {
                        next.push(q);
                    }
                }
            }
            layers.push(points.len());
            if next.is_empty() {
                return Orbit { points, layers, complete: true };
            }
            next.sort();
            let room = cap - points.len();
            if next.len() > room {
                points.extend(next.into_iter().take(room));
                if room > 0 {
                    layers.push(points.len());
                }
                return Orbit { points, layers, complete: false };
            }
            points.extend(next.iter().cloned());
            frontier = next;
        }
    }
}

/// `lambda -> lambda - <lambda, alpha_s^vee> alpha_s` on realization coordinates.
pub(crate) fn reflect_weight(real: &Realization, s: usize, coords: &mut [Rat]) {
    let p = coords[s].clone();
    if p.is_zero() {
        return;
    }
    for (x, a) in coords.iter_mut().zip(real.root_coords(s)) {
        if !a.is_zero() {
            *x -= &p * a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn a2() -> WeylGroup {
        WeylGroup::new(CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap())
    }

    fn set(ix: &[usize]) -> NodeSet {
        ix.iter().copied().collect()
    }

    #[test]
    fn normal_forms_in_a2() {
        let w = a2();
        let e = |word: &[usize]| w.from_word(word).unwrap();
        assert_eq!(e(&[0, 0]), WeylElement::identity());
        assert_eq!(e(&[0, 1, 0]), e(&[1, 0, 1]));
        assert_eq!(e(&[1, 0, 1]).word(), &[0, 1, 0]);
        assert_eq!(w.inverse(&e(&[0, 1])), e(&[1, 0]));
        assert_eq!(e(&[0, 1, 0, 1]), e(&[1, 0]));
    }

    #[test]
    fn descents() {
        let w = a2();
        let r1r2 = w.from_word(&[0, 1]).unwrap();
        assert!(w.is_right_descent(&r1r2, 1));
        assert!(!w.is_right_descent(&r1r2, 0));
        assert!(w.is_left_descent(&r1r2, 0));
        assert_eq!(w.right_descents(&WeylElement::identity()), NodeSet::EMPTY);
    }

    #[test]
    fn root_action() {
        let w = a2();
        let r = w.act_on_root(&w.generator(0), &RootVector::simple(1, 2));
        assert_eq!(r, RootVector::new(&[1, 1]));
        let a11 = WeylGroup::new(CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap());
        let r = a11.act_on_root(&a11.generator(1), &RootVector::simple(0, 2));
        assert_eq!(r, RootVector::new(&[1, 2]));
    }

    #[test]
    fn weight_action_examples() {
        let w = a2();
        let real = Realization::canonical(w.cartan().clone());
        let mu = real.weight_from_ints(&[3, 2]).unwrap();
        assert_eq!(w.act_on_weight(&real, &w.generator(0), &mu).coords, vec![rat(-3), rat(5)]);
    }

    #[test]
    fn cosets_in_a2() {
        let w = a2();
        let w0 = w.from_word(&[0, 1, 0]).unwrap();
        assert_eq!(w.min_coset_rep(&w0, set(&[0]), Side::Right), w.from_word(&[0, 1]).unwrap());
        assert_eq!(w.min_coset_rep(&w0, set(&[0]), Side::Left), w.from_word(&[1, 0]).unwrap());
        assert!(w.min_coset_rep(&w0, set(&[0, 1]), Side::Right).is_identity());

        let (a, u, b) = w.double_coset_factorize(&w.generator(1), set(&[0]), set(&[1]));
        assert!(a.is_identity() && u.is_identity());
        assert_eq!(b, w.generator(1));
        let (a, u, b) = w.double_coset_factorize(&w0, NodeSet::EMPTY, NodeSet::EMPTY);
        assert!(a.is_identity() && b.is_identity());
        assert_eq!(u, w0);
    }

    #[test]
    fn orbit_of_a2() {
        let w = a2();
        let real = Realization::canonical(w.cartan().clone());
        let mu = real.weight_from_ints(&[3, 2]).unwrap();
        let orbit = w.orbit_enumerate(&real, &mu, set(&[0, 1]), DEFAULT_ORBIT_CAP);
        assert!(orbit.complete);
        assert_eq!(orbit.points.len(), 6);
        let trivial = w.orbit_enumerate(&real, &mu, NodeSet::EMPTY, 10);
        assert_eq!(trivial.points, vec![mu.clone()]);
        let capped = w.orbit_enumerate(&real, &mu, set(&[0, 1]), 4);
        assert!(!capped.complete);
        assert_eq!(capped.points.len(), 4);
        let exact = w.orbit_enumerate(&real, &mu, set(&[0, 1]), 6);
        assert!(exact.complete);
    }

    #[test]
    fn elements_of_finite_groups() {
        let w = a2();
        let (all, complete) = w.elements_up_to(set(&[0, 1]), 10);
        assert!(complete);
        assert_eq!(all.len(), 6);
        let (some, complete) = w.elements_up_to(set(&[0, 1]), 2);
        assert!(!complete);
        assert_eq!(some.len(), 5);
        let (exact, complete) = w.elements_up_to(set(&[0, 1]), 3);
        assert!(complete);
        assert_eq!(exact.len(), 6);
    }

    #[test]
    fn word_parsing() {
        let w = a2();
        assert_eq!(w.parse_word("1 2").unwrap(), w.from_word(&[0, 1]).unwrap());
        assert_eq!(w.parse_word("").unwrap(), WeylElement::identity());
        assert!(w.parse_word("3").is_err());
        assert_eq!(w.from_word(&[0, 1]).unwrap().to_word_string(), "1 2");
    }
}
