//! The Renner monoid `R = W E(R)` attached to a dominant point.
//!
//! Elements are `w e(F)`. Two units give the same element exactly when they
//! differ on the right by the pointwise stabilizer `sigma W_{I_*} sigma^{-1}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::coxeter::{Side, WeylElement};
use crate::faces::{DominantPoint, Face, FundamentalFace};
use crate::{Error, NodeSet, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RennerElement {
    pub unit: WeylElement,
    pub face: Face,
}

impl fmt::Display for RennerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.unit, self.face)
    }
}

/// A member of the cross-section lattice with its type maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSectionEntry {
    pub face: Face,
    pub lambda_star: NodeSet,
    pub lambda_sub: NodeSet,
    pub lambda: NodeSet,
}

impl CrossSectionEntry {
    pub fn is_zero(&self) -> bool {
        self.face.is_empty()
    }
}

/// Which parabolic a one-sided centralizer in the ambient group is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Left and right centralizers `P_lambda` and `P^-_lambda`, up to conjugation by `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCentralizers {
    pub sigma: WeylElement,
    pub left: (Polarity, NodeSet),
    pub right: (Polarity, NodeSet),
}

/// Outcome of the axiom checks on a truncated enumeration.
#[derive(Clone, Debug, Default)]
pub struct GrmReport {
    pub elements: usize,
    pub idempotents: usize,
    pub unit_regular: Vec<String>,
    pub idempotents_commute: Vec<String>,
    pub cross_section: Vec<String>,
    pub conjugate_pairs: Vec<String>,
    pub parabolic_centralizers: Vec<String>,
    pub monotone_type: Vec<String>,
}

impl GrmReport {
    pub fn passed(&self) -> bool {
        self.sections().iter().all(|(_, v)| v.is_empty())
    }

    pub fn sections(&self) -> [(&'static str, &Vec<String>); 6] {
        [
            ("(a) unit regular", &self.unit_regular),
            ("(a) idempotents commute", &self.idempotents_commute),
            ("(c) cross-section sub-semilattice", &self.cross_section),
            ("(d) conjugate pairs", &self.conjugate_pairs),
            ("(e) parabolic centralizers", &self.parabolic_centralizers),
            ("(f) monotone type map", &self.monotone_type),
        ]
    }
}

impl fmt::Display for GrmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "elements: {}, idempotents: {}", self.elements, self.idempotents)?;
        for (name, violations) in self.sections() {
            let status = if violations.is_empty() { "pass" } else { "FAIL" };
            writeln!(f, "{name}: {status} ({} violations)", violations.len())?;
            for v in violations.iter().take(5) {
                writeln!(f, "  {v}")?;
            }
        }
        Ok(())
    }
}

/// Truncated enumeration of `R`.
#[derive(Clone, Debug)]
pub struct RennerEnumeration {
    pub elements: Vec<RennerElement>,
    /// True iff both the unit group and the face set were exhausted.
    pub complete: bool,
}

/// The Renner monoid of a dominant point with mu-connected `Pi`.
#[derive(Clone, Debug)]
pub struct RennerMonoid {
    dp: DominantPoint,
}

impl RennerMonoid {
    pub fn new(dp: DominantPoint) -> Result<Self> {
        if dp.pi_star() != dp.all() {
            return Err(Error::PiNotMuConnected);
        }
        Ok(RennerMonoid { dp })
    }

    pub fn point(&self) -> &DominantPoint {
        &self.dp
    }

    pub fn one(&self) -> RennerElement {
        RennerElement { unit: WeylElement::identity(), face: self.dp.hull() }
    }

    pub fn zero(&self) -> RennerElement {
        RennerElement { unit: WeylElement::identity(), face: Face::Empty }
    }

    pub fn unit(&self, w: &WeylElement) -> RennerElement {
        self.make_element(w, &self.dp.hull())
    }

    /// `e(F)`.
    pub fn idempotent(&self, face: &Face) -> RennerElement {
        self.make_element(&WeylElement::identity(), face)
    }

    /// `w e(F)` with the unit reduced to `min(w sigma W_{I_*}) sigma^{-1}`.
    pub fn make_element(&self, w: &WeylElement, face: &Face) -> RennerElement {
        let g = self.dp.group();
        match face {
            Face::Empty => self.zero(),
            Face::Translate { sigma, base } => {
                let rep = g.min_coset_rep(&g.multiply(w, sigma), base.i_star, Side::Right);
                RennerElement { unit: g.multiply(&rep, &g.inverse(sigma)), face: face.clone() }
            }
        }
    }

    /// `(w1, F1)(w2, F2) = (w1 w2, w2^{-1} F1 n F2)`.
    pub fn multiply(&self, x: &RennerElement, y: &RennerElement) -> RennerElement {
        let g = self.dp.group();
        let moved = self.dp.act_face(&g.inverse(&y.unit), &x.face);
        let face = self.dp.face_meet(&moved, &y.face);
        self.make_element(&g.multiply(&x.unit, &y.unit), &face)
    }

    /// `(w e(F))^inv = e(F) w^{-1} = w^{-1} e(wF)`.
    pub fn inverse(&self, x: &RennerElement) -> RennerElement {
        let g = self.dp.group();
        self.make_element(&g.inverse(&x.unit), &self.dp.act_face(&x.unit, &x.face))
    }

    pub fn is_idempotent(&self, x: &RennerElement) -> bool {
        self.idempotent(&x.face).unit == x.unit
    }

    pub fn is_unit(&self, x: &RennerElement) -> bool {
        x.face == self.dp.hull()
    }

    pub fn idempotents_leq(&self, e: &RennerElement, f: &RennerElement) -> bool {
        self.dp.face_leq(&e.face, &f.face)
    }

    /// `w x w^{-1}`.
    pub fn conjugate(&self, w: &WeylElement, x: &RennerElement) -> RennerElement {
        let g = self.dp.group();
        self.multiply(&self.multiply(&self.unit(w), x), &self.unit(&g.inverse(w)))
    }

    pub fn entry_for(&self, base: Option<&FundamentalFace>) -> CrossSectionEntry {
        match base {
            None => CrossSectionEntry {
                face: Face::Empty,
                lambda_star: NodeSet::EMPTY,
                lambda_sub: self.dp.all(),
                lambda: self.dp.all(),
            },
            Some(b) => CrossSectionEntry {
                face: Face::Translate { sigma: WeylElement::identity(), base: *b },
                lambda_star: b.i,
                lambda_sub: b.i_star,
                lambda: b.lambda(),
            },
        }
    }

    /// `Lambda`: the zero followed by `e(F_I)` for every mu-connected `I`.
    pub fn cross_section_lattice(&self) -> Vec<CrossSectionEntry> {
        self.dp.fundamental_faces().iter().map(|f| self.entry_for(f.base())).collect()
    }

    /// `e = sigma f sigma^{-1}` with `f` in `Lambda` and `sigma` minimal modulo `W_{lambda(f)}`.
    pub fn conjugacy_normal_form(&self, e: &RennerElement) -> Result<(WeylElement, CrossSectionEntry)> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        Ok(match &e.face {
            Face::Empty => (WeylElement::identity(), self.entry_for(None)),
            Face::Translate { sigma, base } => (sigma.clone(), self.entry_for(Some(base))),
        })
    }

    /// `(sigma, lambda)`: `C_W(e) = sigma W_lambda sigma^{-1}`.
    pub fn centralizer_type(&self, e: &RennerElement) -> Result<(WeylElement, NodeSet)> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        Ok(self.dp.isotropy_type(&e.face))
    }

    /// `(sigma, lambda_*)`: `S_W(e) = sigma W_{lambda_*} sigma^{-1}`.
    pub fn stabilizer_type(&self, e: &RennerElement) -> Result<(WeylElement, NodeSet)> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        Ok(self.dp.stabilizer_type(&e.face))
    }

    pub fn group_centralizers(&self, e: &RennerElement) -> Result<GroupCentralizers> {
        let (sigma, lambda) = self.centralizer_type(e)?;
        Ok(GroupCentralizers { sigma, left: (Polarity::Positive, lambda), right: (Polarity::Negative, lambda) })
    }

    /// The `f` in `Lambda` with `x` in `W f W`, read off from `x x^inv`.
    pub fn cell_of(&self, x: &RennerElement) -> CrossSectionEntry {
        let e = self.multiply(x, &self.inverse(x));
        self.entry_for(e.face.base())
    }

    /// All `w e(F)` with `l(w) <= unit_bound` and `l(sigma_F) <= sigma_bound`.
    pub fn enumerate(&self, unit_bound: usize, sigma_bound: usize) -> RennerEnumeration {
        let (units, units_complete) = self.dp.group().elements_up_to(self.dp.all(), unit_bound);
        let faces = self.dp.enumerate_faces(sigma_bound);
        let mut set = BTreeSet::new();
        for face in &faces.faces {
            for w in &units {
                set.insert(self.make_element(w, face));
            }
        }
        RennerEnumeration { elements: set.into_iter().collect(), complete: units_complete && faces.complete }
    }

    /// `lambda_S^*(e) = {s : s e = e s != e}`.
    pub fn lambda_s_star(&self, e: &RennerElement) -> NodeSet {
        let g = self.dp.group();
        (0..self.dp.size())
            .filter(|&s| {
                let r = self.unit(&g.generator(s));
                let se = self.multiply(&r, e);
                se == self.multiply(e, &r) && se != *e
            })
            .collect()
    }

    /// Checks the generalized Renner-Coxeter axioms on a truncation.
    pub fn verify_grm_axioms(&self, unit_bound: usize, sigma_bound: usize) -> GrmReport {
        let g = self.dp.group();
        let all = self.enumerate(unit_bound, sigma_bound);
        let (units, _) = g.elements_up_to(self.dp.all(), unit_bound);
        let idem: Vec<&RennerElement> = all.elements.iter().filter(|x| self.is_idempotent(x)).collect();
        let lambda: Vec<RennerElement> =
            self.cross_section_lattice().iter().map(|c| self.idempotent(&c.face)).collect();
        let mut report = GrmReport { elements: all.elements.len(), idempotents: idem.len(), ..Default::default() };

        // (a)
        for x in &all.elements {
            let u = self.unit(&g.inverse(&x.unit));
            if self.multiply(&self.multiply(x, &u), x) != *x {
                report.unit_regular.push(format!("{x}"));
            }
        }
        for (k, e) in idem.iter().enumerate() {
            for f in &idem[k + 1..] {
                if self.multiply(e, f) != self.multiply(f, e) {
                    report.idempotents_commute.push(format!("{e} {f}"));
                }
            }
        }

        // (c)
        for e in &lambda {
            for f in &lambda {
                let p = self.multiply(e, f);
                if !lambda.contains(&p) {
                    report.cross_section.push(format!("{e} * {f} = {p} outside Lambda"));
                }
            }
        }
        for e in &idem {
            let Ok((sigma, entry)) = self.conjugacy_normal_form(e) else {
                report.cross_section.push(format!("{e} has no normal form"));
                continue;
            };
            let f = self.idempotent(&entry.face);
            if self.conjugate(&sigma, &f) != **e {
                report.cross_section.push(format!("{e} != {sigma} {f} {sigma}^-1"));
            }
            for other in &lambda {
                if *other != f && units.iter().any(|w| self.conjugate(w, other) == **e) {
                    report.cross_section.push(format!("{e} conjugate to two members of Lambda"));
                }
            }
        }

        // (d)
        for e1 in &idem {
            for e2 in &idem {
                if !self.idempotents_leq(e1, e2) {
                    continue;
                }
                match self.conjugate_pair(e1, e2) {
                    Some((w, f1, f2))
                        if lambda.contains(&f1)
                            && lambda.contains(&f2)
                            && self.idempotents_leq(&f1, &f2)
                            && self.conjugate(&w, &f1) == **e1
                            && self.conjugate(&w, &f2) == **e2 => {}
                    _ => report.conjugate_pairs.push(format!("{e1} <= {e2}")),
                }
            }
        }

        // (e)
        for (e, entry) in lambda.iter().zip(self.cross_section_lattice()) {
            for w in &units {
                let we = self.multiply(&self.unit(w), e);
                let ew = self.multiply(e, &self.unit(w));
                if (we == ew) != w.in_standard_parabolic(entry.lambda) {
                    report.parabolic_centralizers.push(format!("C_W({e}) at {w}"));
                }
                if (we == *e && ew == *e) != w.in_standard_parabolic(entry.lambda_sub) {
                    report.parabolic_centralizers.push(format!("S_W({e}) at {w}"));
                }
            }
        }

        // (f)
        for e in &lambda {
            for f in &lambda {
                if self.idempotents_leq(e, f) && !self.lambda_s_star(e).is_subset(self.lambda_s_star(f)) {
                    report.monotone_type.push(format!("{e} <= {f}"));
                }
            }
        }
        report
    }

    /// For `e1 <= e2` finds `w` and `f1 <= f2` in `Lambda` with `e_i = w f_i w^{-1}`.
    pub fn conjugate_pair(
        &self,
        e1: &RennerElement,
        e2: &RennerElement,
    ) -> Option<(WeylElement, RennerElement, RennerElement)> {
        let g = self.dp.group();
        let Face::Translate { sigma: s2, base: b2 } = &e2.face else {
            return e1.face.is_empty().then(|| (WeylElement::identity(), self.zero(), self.zero()));
        };
        // Move F2 to F_{I2}; then F1 becomes tau F_K inside it, and
        // tau^{-1} = a b with a in W_{K_*}, b in W_{I2}.
        let back = g.inverse(s2);
        let moved = self.dp.act_face(&back, &e1.face);
        let (w1, f1) = match &moved {
            Face::Empty => (WeylElement::identity(), Face::Empty),
            Face::Translate { sigma: tau, base: k } => {
                let (_, u, b) = g.double_coset_factorize(&g.inverse(tau), k.i_star, b2.i);
                if !u.is_identity() {
                    return None;
                }
                (b, Face::Translate { sigma: WeylElement::identity(), base: *k })
            }
        };
        let w = g.inverse(&g.multiply(&w1, &back));
        let f2 = Face::Translate { sigma: WeylElement::identity(), base: *b2 };
        Some((w, self.idempotent(&f1), self.idempotent(&f2)))
    }

    /// Multiplication table over `elements`; entry `[i][j]` indexes the product
    /// or is `None` when it leaves the set.
    pub fn table(&self, elements: &[RennerElement]) -> Vec<Vec<Option<usize>>> {
        let index: HashMap<&RennerElement, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        elements.iter().map(|x| elements.iter().map(|y| index.get(&self.multiply(x, y)).copied()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanMatrix, Realization};

    fn monoid(a: Vec<Vec<i64>>, mu: &[i64]) -> RennerMonoid {
        let real = Realization::canonical(CartanMatrix::new(a).unwrap());
        let mu = real.weight_from_ints(mu).unwrap();
        RennerMonoid::new(DominantPoint::new(real, mu).unwrap()).unwrap()
    }

    fn a2() -> RennerMonoid {
        monoid(vec![vec![2, -1], vec![-1, 2]], &[3, 2])
    }

    fn set(ix: &[usize]) -> NodeSet {
        ix.iter().copied().collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = a2();
        let g = r.point().group();
        let vertex = r.point().vertex();
        assert_eq!(r.make_element(&g.generator(0), &Face::Empty), r.zero());
        assert_ne!(r.make_element(&g.generator(0), &vertex), r.idempotent(&vertex));

        let r = monoid(vec![vec![2, -2], vec![-2, 2]], &[1, 0, 0]);
        let g = r.point().group();
        let vertex = r.point().vertex();
        assert_eq!(r.make_element(&g.generator(1), &vertex), r.idempotent(&vertex));
    }

    #[test]
    fn renner_a2_has_79_elements() {
        let r = a2();
        let all = r.enumerate(3, 3);
        assert!(all.complete);
        assert_eq!(all.elements.len(), 79);
        assert_eq!(r.enumerate(0, 0).elements.len(), 5);
    }

    #[test]
    fn cross_section_sizes() {
        assert_eq!(a2().cross_section_lattice().len(), 5);
        assert_eq!(monoid(vec![vec![2, -2], vec![-2, 2]], &[1, 0, 0]).cross_section_lattice().len(), 4);
        assert_eq!(monoid(vec![vec![2, -2], vec![-3, 2]], &[1, 1]).cross_section_lattice().len(), 5);
    }

    #[test]
    fn inverse_and_cells() {
        let r = a2();
        let g = r.point().group();
        let e1 = r.point().canonicalize_face(&WeylElement::identity(), set(&[0]));
        let x = r.make_element(&g.from_word(&[0, 1]).unwrap(), &e1);
        let xi = r.inverse(&x);
        assert_eq!(r.multiply(&r.multiply(&x, &xi), &x), x);
        assert_eq!(r.cell_of(&x).lambda_star, set(&[0]));
        assert_eq!(r.cell_of(&r.one()).lambda_star, set(&[0, 1]));
        assert!(r.cell_of(&r.zero()).is_zero());

        let e = r.idempotent(&r.point().canonicalize_face(&g.generator(0), set(&[1])));
        let (sigma, f) = r.conjugacy_normal_form(&e).unwrap();
        assert_eq!(sigma, g.generator(0));
        assert_eq!(f.lambda_star, set(&[1]));
        assert_eq!(r.conjugacy_normal_form(&x), Err(Error::NotIdempotent));
    }

    #[test]
    fn type_maps_of_extremes() {
        let r = a2();
        assert_eq!(r.centralizer_type(&r.one()).unwrap().1, set(&[0, 1]));
        assert_eq!(r.stabilizer_type(&r.one()).unwrap().1, NodeSet::EMPTY);
        assert_eq!(r.stabilizer_type(&r.zero()).unwrap().1, set(&[0, 1]));
        let r = monoid(vec![vec![2, -2], vec![-2, 2]], &[1, 0, 0]);
        let v = r.idempotent(&r.point().vertex());
        assert_eq!(r.centralizer_type(&v).unwrap().1, set(&[1]));
        assert_eq!(r.stabilizer_type(&v).unwrap().1, set(&[1]));
    }

    #[test]
    fn grm_axioms_on_a2() {
        let report = a2().verify_grm_axioms(3, 3);
        assert!(report.passed(), "{report}");
        assert_eq!(report.elements, 79);
        assert_eq!(report.idempotents, 14);
    }

    #[test]
    fn rejects_non_mu_connected_pi() {
        let real = Realization::canonical(CartanMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap());
        let mu = real.weight_from_ints(&[1, 0]).unwrap();
        let dp = DominantPoint::new(real, mu).unwrap();
        assert!(matches!(RennerMonoid::new(dp), Err(Error::PiNotMuConnected)));
    }
}
