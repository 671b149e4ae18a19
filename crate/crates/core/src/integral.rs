//! The integral cohomology `H*(G; Z)`: a free exterior-type part on the
//! `rho` generators plus one torsion component per prime, with full cross
//! multiplication.
//!
//! Internal storage is the split shape (free part and per-prime torsion
//! components with action tables) because it makes additive orders
//! explicit; the quotient-style presentation is emitted as a view.  The
//! multiplication rules:
//!
//! * disjoint free monomials multiply in the exterior part;
//! * a repeated free generator contributes its square, which lands in the
//!   2-torsion component (zero for all but a handful of generators);
//! * the free part acts on a torsion component through the mod-p reduction
//!   of its monomials;
//! * torsion components of distinct primes annihilate each other, and one
//!   component multiplies inside the image oracle of its own prime.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Mutex;

use crate::basic_data::{
    basic_data, complement_set, primary_form_labels, torsion_index_set, Coefficients,
    GeneratorLabel, GroupFamily, GroupId, LabelKind,
};
use crate::differentials::reduction_rp;
use crate::graded_algebra::{Algebra, Element, GeneratorSpec, Monomial, SquareRule};
use crate::rings::{cohomology, CohomologyRing, RingFlavor};
use crate::torsion::{torsion_ring, TorsionRing};
use crate::{Error, Result};

/// Square of a free generator.
#[derive(Debug, Clone)]
enum RhoSquare {
    Zero,
    /// A class of the 2-torsion component, as an ambient mod-2 element.
    Torsion(Element),
    /// Not determined (Spin families).
    Unknown,
}

/// One per-degree summand of the integral cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroupDescriptor {
    pub degree: u32,
    pub free_rank: usize,
    /// `(p, multiplicity)` pairs for the `Z/p` summands, increasing in `p`.
    pub torsion: Vec<(u64, usize)>,
}

impl std::fmt::Display for HomologyGroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for &(p, m) in &self.torsion {
            match m {
                1 => parts.push(format!("Z/{p}")),
                m => parts.push(format!("(Z/{p})^{m}")),
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element of the integral ring: a free part in the exterior algebra on
/// the `rho` generators plus one component per torsion prime, each stored
/// as an ambient mod-p element of the corresponding image oracle.
#[derive(Debug, Clone)]
pub struct IntegralElement {
    pub free: Element,
    pub torsion: BTreeMap<u64, Element>,
}

impl PartialEq for IntegralElement {
    fn eq(&self, other: &Self) -> bool {
        if self.free != other.free {
            return false;
        }
        let primes: std::collections::BTreeSet<u64> = self
            .torsion
            .keys()
            .chain(other.torsion.keys())
            .copied()
            .collect();
        primes
            .iter()
            .all(|p| match (self.torsion.get(p), other.torsion.get(p)) {
                (Some(a), Some(b)) => a == b,
                (Some(a), None) => a.is_zero(),
                (None, Some(b)) => b.is_zero(),
                (None, None) => true,
            })
    }
}

impl IntegralElement {
    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.torsion.values().all(|v| v.is_zero())
    }

    /// Degree when every nonzero component is homogeneous of one common
    /// degree.
    pub fn degree(&self) -> Option<u32> {
        let mut d: Option<u32> = None;
        let components = std::iter::once(&self.free).chain(self.torsion.values());
        for part in components {
            if part.is_zero() {
                continue;
            }
            let x = part.degree()?;
            match d {
                None => d = Some(x),
                Some(a) if a == x => {}
                Some(_) => return None,
            }
        }
        d
    }
}

/// The assembled integral cohomology of one group.
pub struct IntegralCohomology {
    pub group: GroupId,
    /// Exterior algebra over Z on the `rho` generators (squares handled by
    /// the ring multiplication, not by the kernel).
    pub free: CohomologyRing,
    /// Certified torsion components, keyed by prime.
    pub torsion: BTreeMap<u64, TorsionRing>,
    squares: Vec<RhoSquare>,
    /// Memoized mod-p reductions of free monomials.
    rp_cache: Mutex<BTreeMap<u64, HashMap<Monomial, Element>>>,
}

/// Builds `H*(G; Z)`.  Exceptional groups and the torsion-free classical
/// families are complete; Spin families are additive with products defined
/// wherever no missing square is required.
pub fn integral_cohomology(g: GroupId) -> Result<IntegralCohomology> {
    let labels = primary_form_labels(g, Coefficients::Integers);
    let mut taken = BTreeMap::new();
    let gens: Vec<GeneratorSpec> = labels
        .iter()
        .map(|l| {
            let base = format!("rho{}", l.degree);
            let n = taken.entry(base.clone()).or_insert(0u32);
            *n += 1;
            let name = if *n == 1 {
                base
            } else {
                format!("{}{}", base, (b'a' + (*n - 1) as u8) as char)
            };
            GeneratorSpec::odd(name, l.degree, SquareRule::Zero).with_label(*l)
        })
        .collect();
    let algebra = Algebra::build(gens, Coefficients::Integers)?;
    let provenance: BTreeMap<String, GeneratorLabel> = algebra
        .gens()
        .iter()
        .map(|gs| (gs.name.clone(), gs.label.unwrap()))
        .collect();
    let free = CohomologyRing::new(
        g,
        Coefficients::Integers,
        algebra,
        RingFlavor::Cohomology,
        provenance,
    );

    let mut torsion = BTreeMap::new();
    for p in [2u64, 3, 5] {
        if !torsion_index_set(g, p).is_empty() {
            torsion.insert(p, torsion_ring(g, p)?);
        }
    }

    let mut ic = IntegralCohomology {
        group: g,
        free,
        torsion,
        squares: Vec::new(),
        rp_cache: Mutex::new(BTreeMap::new()),
    };

    // Squares of the free generators: the mod-2 reduction squared, read
    // inside the 2-torsion component.  Without 2-torsion the ring is
    // torsion-free and odd squares vanish.
    let mut squares = Vec::with_capacity(ic.free.algebra.gen_count());
    for i in 0..ic.free.algebra.gen_count() {
        let sq = match ic.torsion.get(&2) {
            None => RhoSquare::Zero,
            Some(t2) => {
                let label = ic.free.algebra.gens()[i].label.unwrap();
                let r2 = reduction_rp(&t2.ctx.ring, &label)?;
                match r2.mul(&r2) {
                    Ok(v) if v.is_zero() => RhoSquare::Zero,
                    Ok(v) => {
                        if !t2.ctx.image.contains(&v)? {
                            return Err(Error::OracleMismatch(format!(
                                "square of {} is not a torsion class",
                                ic.free.algebra.gen_name(i)
                            )));
                        }
                        RhoSquare::Torsion(v)
                    }
                    Err(Error::UnknownSquare { .. }) => RhoSquare::Unknown,
                    Err(e) => return Err(e),
                }
            }
        };
        squares.push(sq);
    }
    ic.squares = squares;
    Ok(ic)
}

impl IntegralCohomology {
    pub fn zero(&self) -> IntegralElement {
        IntegralElement {
            free: Element::zero(&self.free.algebra),
            torsion: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> IntegralElement {
        IntegralElement {
            free: Element::one(&self.free.algebra),
            torsion: BTreeMap::new(),
        }
    }

    pub fn from_free(&self, e: Element) -> IntegralElement {
        IntegralElement {
            free: e,
            torsion: BTreeMap::new(),
        }
    }

    pub fn from_torsion(&self, p: u64, v: Element) -> Result<IntegralElement> {
        let t = self
            .torsion
            .get(&p)
            .ok_or_else(|| Error::UnknownLabel(format!("no {p}-torsion in {}", self.group)))?;
        if !(v.is_zero() || t.ctx.image.contains(&v)?) {
            return Err(Error::OracleMismatch(
                "element is not in the torsion component".into(),
            ));
        }
        Ok(IntegralElement {
            free: Element::zero(&self.free.algebra),
            torsion: BTreeMap::from([(p, v)]),
        })
    }

    /// The free generator realizing a label.
    pub fn rho(&self, kind: LabelKind, origin: usize) -> Result<IntegralElement> {
        Ok(self.from_free(self.free.generator(kind, origin)?))
    }

    /// The integral special class `y_j` (order `p_j`), as the torsion class
    /// `x_{deg y_j}` of its prime.
    pub fn special_class(&self, j: usize) -> Result<IntegralElement> {
        let bd = basic_data(self.group);
        if j == 0 || j > bd.m {
            return Err(Error::UnknownLabel(format!("y_{j} out of range")));
        }
        let p = bd.p_list[j - 1];
        let t = &self.torsion[&p];
        self.from_torsion(p, t.ctx.ring.generator(LabelKind::ChowX, j)?)
    }

    /// The Bockstein image class `E_I` of the prime `p`, realized as `C_I`
    /// inside the p-torsion component.
    pub fn e_class(&self, p: u64, set: &[usize]) -> Result<IntegralElement> {
        let t = self
            .torsion
            .get(&p)
            .ok_or_else(|| Error::UnknownLabel(format!("no {p}-torsion in {}", self.group)))?;
        let c = t.ctx.c_class(set)?;
        self.from_torsion(p, c)
    }

    /// Mod-p reduction of a free monomial (memoized).
    fn rp_monomial(&self, p: u64, m: &Monomial) -> Result<Element> {
        let t = &self.torsion[&p];
        {
            let cache = self.rp_cache.lock().unwrap();
            if let Some(e) = cache.get(&p).and_then(|c| c.get(m)) {
                return Ok(e.clone());
            }
        }
        let mut out = Element::one(&t.ctx.ring.algebra);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                let label = self.free.algebra.gens()[i].label.unwrap();
                out = out.mul(&reduction_rp(&t.ctx.ring, &label)?)?;
            }
        }
        let mut cache = self.rp_cache.lock().unwrap();
        cache.entry(p).or_default().insert(m.clone(), out.clone());
        Ok(out)
    }

    /// Mod-p reduction of a full integral element, landing in `H*(G; F_p)`.
    pub fn reduce_mod(&self, p: u64, e: &IntegralElement) -> Result<Element> {
        let t = self
            .torsion
            .get(&p)
            .ok_or_else(|| Error::UnknownLabel(format!("no {p}-torsion in {}", self.group)))?;
        let alg = &t.ctx.ring.algebra;
        let mut out = Element::zero(alg);
        for (m, c) in e.free.terms() {
            let r = c.int_residue(p).expect("integral coefficient");
            if r != 0 {
                out = out.add(&self.rp_monomial(p, m)?.scale(r as i64))?;
            }
        }
        if let Some(v) = e.torsion.get(&p) {
            out = out.add(v)?;
        }
        Ok(out)
    }

    pub fn add(&self, a: &IntegralElement, b: &IntegralElement) -> Result<IntegralElement> {
        let free = a.free.add(&b.free)?;
        let mut torsion = a.torsion.clone();
        for (p, v) in &b.torsion {
            match torsion.entry(*p) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(v)?;
                    *e.get_mut() = s;
                }
            }
        }
        Ok(IntegralElement { free, torsion })
    }

    pub fn neg(&self, a: &IntegralElement) -> IntegralElement {
        IntegralElement {
            free: a.free.neg(),
            torsion: a.torsion.iter().map(|(p, v)| (*p, v.neg())).collect(),
        }
    }

    pub fn scale(&self, a: &IntegralElement, v: i64) -> IntegralElement {
        IntegralElement {
            free: a.free.scale(v),
            torsion: a.torsion.iter().map(|(p, w)| (*p, w.scale(v))).collect(),
        }
    }

    pub fn mul(&self, a: &IntegralElement, b: &IntegralElement) -> Result<IntegralElement> {
        let falg = &self.free.algebra;
        let mut free_acc = Element::zero(falg);
        let mut tors_acc: BTreeMap<u64, Element> = BTreeMap::new();
        let add_tors = |p: u64, v: Element, acc: &mut BTreeMap<u64, Element>| -> Result<()> {
            match acc.entry(p) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&v)?;
                    *e.get_mut() = s;
                }
            }
            Ok(())
        };

        // free x free: disjoint pairs stay free, shared generators square
        // into the 2-torsion component.
        for (m1, c1) in a.free.terms() {
            for (m2, c2) in b.free.terms() {
                let dups: Vec<usize> = (0..falg.gen_count())
                    .filter(|&i| m1.exponents()[i] == 1 && m2.exponents()[i] == 1)
                    .collect();
                if dups.is_empty() {
                    let scale = c1.mul(c2);
                    let terms = falg.mul_monomials(m1, m2, &scale)?;
                    free_acc = free_acc.add(&Element::from_terms(falg, terms))?;
                    continue;
                }
                // The squared part lives in 2-torsion, so an even
                // coefficient kills the term before any square is needed.
                let sign = falg.koszul_sign(m1, m2);
                let c = c1.mul(c2).mul_i64(sign);
                let Some(r) = c.int_residue(2) else {
                    return Err(Error::InconsistentPresentation(
                        "integral coefficient expected".into(),
                    ));
                };
                if r == 0 {
                    continue;
                }
                // Any unknown square poisons the product; any zero square
                // kills the term.
                let mut square_parts: Vec<&Element> = Vec::new();
                let mut dead = false;
                for &i in &dups {
                    match &self.squares[i] {
                        RhoSquare::Zero => {
                            dead = true;
                            break;
                        }
                        RhoSquare::Unknown => {
                            return Err(Error::UnknownSquare {
                                generator: falg.gen_name(i).to_string(),
                            });
                        }
                        RhoSquare::Torsion(v) => square_parts.push(v),
                    }
                }
                if dead {
                    continue;
                }
                // Remaining square-free part, reduced mod 2.
                let rest = Monomial(
                    (0..falg.gen_count())
                        .map(|i| {
                            if dups.contains(&i) {
                                0
                            } else {
                                m1.exponents()[i] + m2.exponents()[i]
                            }
                        })
                        .collect(),
                );
                let mut v = self.rp_monomial(2, &rest)?;
                for sq in square_parts {
                    v = v.mul(sq)?;
                }
                if !v.is_zero() {
                    add_tors(2, v.scale(r as i64), &mut tors_acc)?;
                }
            }
        }

        // free x torsion and torsion x free, through the reduction.
        for (p, v) in &b.torsion {
            if v.is_zero() {
                continue;
            }
            for (m, c) in a.free.terms() {
                let r = c.int_residue(*p).expect("integral coefficient");
                if r != 0 {
                    let prod = self.rp_monomial(*p, m)?.mul(v)?;
                    add_tors(*p, prod.scale(r as i64), &mut tors_acc)?;
                }
            }
        }
        for (p, v) in &a.torsion {
            if v.is_zero() {
                continue;
            }
            for (m, c) in b.free.terms() {
                let r = c.int_residue(*p).expect("integral coefficient");
                if r != 0 {
                    let prod = v.mul(&self.rp_monomial(*p, m)?)?;
                    add_tors(*p, prod.scale(r as i64), &mut tors_acc)?;
                }
            }
        }

        // torsion x torsion: same prime multiplies inside the oracle,
        // distinct primes annihilate.
        for (p, v) in &a.torsion {
            if let Some(w) = b.torsion.get(p) {
                if !v.is_zero() && !w.is_zero() {
                    let prod = self.torsion[p].ctx.image.product_in_image(v, w)?;
                    add_tors(*p, prod, &mut tors_acc)?;
                }
            }
        }

        tors_acc.retain(|_, v| !v.is_zero());
        Ok(IntegralElement {
            free: free_acc,
            torsion: tors_acc,
        })
    }

    /// The three-case action rule of the free generator `rho_{deg eta_t}`
    /// on the Bockstein class `E_I`:
    ///
    /// * `t` not in `I`: `x_t^{k_t - 1} E_{I + t}`, up to the sign that
    ///   reorders `theta_t` into position (invisible at p = 2);
    /// * `t` in `I` with p odd, or `I = {t}` at p = 2: zero;
    /// * p = 2, `t` in `I`, `|I| >= 2`: `x_t^{k_t - 1} theta_t^2 E_{I - t}`.
    pub fn h_relation(&self, p: u64, t: usize, set: &[usize]) -> Result<IntegralElement> {
        let gp = torsion_index_set(self.group, p);
        if !gp.contains(&t) {
            return Err(Error::IndexNotInGp { index: t, p });
        }
        for &s in set {
            if !gp.contains(&s) {
                return Err(Error::IndexNotInGp { index: s, p });
            }
        }
        let bd = basic_data(self.group);
        let tring = &self.torsion[&p];
        let y = tring.ctx.ring.generator(LabelKind::ChowX, t)?;
        let y_pow = y.pow(bd.k_list[t - 1] - 1)?;
        if !set.contains(&t) {
            let mut bigger: Vec<usize> = set.to_vec();
            bigger.push(t);
            bigger.sort_unstable();
            let c = tring.ctx.c_class(&bigger)?;
            let sign = if set.iter().filter(|&&s| s < t).count() % 2 == 0 {
                1
            } else {
                -1
            };
            return self.from_torsion(p, y_pow.mul(&c)?.scale(sign));
        }
        if p != 2 || set == [t] {
            return Ok(self.zero());
        }
        let sq = tring.ctx.theta_square(t)?;
        let rest: Vec<usize> = set.iter().copied().filter(|&s| s != t).collect();
        let c = tring.ctx.c_class(&rest)?;
        self.from_torsion(p, y_pow.mul(&sq)?.mul(&c)?)
    }

    /// The free generator written `rho_{deg eta_t}` in the action rule: the
    /// eta generator of index `t` when it survives integrally, otherwise
    /// the coupled top generator of E8.
    pub fn rho_for_action(&self, t: usize) -> Result<IntegralElement> {
        if complement_set(self.group, Coefficients::Integers).contains(&t) {
            self.rho(LabelKind::Eta, t)
        } else if self.group.family() == GroupFamily::E8 {
            self.rho(LabelKind::Eta, 6)
        } else {
            Err(Error::UnknownLabel(format!(
                "eta_{t} is not an integral generator of {}",
                self.group
            )))
        }
    }

    /// Free ranks per degree.
    pub fn free_dims(&self) -> Vec<usize> {
        (0..=self.free.algebra.top_degree())
            .map(|d| self.free.algebra.dim(d))
            .collect()
    }

    /// Per-degree description of `H^d(G; Z)`, cross-checked against the
    /// rationals and the prime fields 2, 3, 5, 7 through universal
    /// coefficients.
    pub fn homology_descriptors(&self, up_to_degree: u32) -> Result<Vec<HomologyGroupDescriptor>> {
        let dim_g = self.group.dim();
        let limit = up_to_degree.min(dim_g);
        let free = self.free_dims();
        let rank = |d: u32| free.get(d as usize).copied().unwrap_or(0);
        let tors = |p: u64, d: u32| -> usize {
            self.torsion
                .get(&p)
                .and_then(|t| t.dims.get(d as usize).copied())
                .unwrap_or(0)
        };

        // Reference dimensions of the field coefficients.
        let q_dims: Vec<usize> = cohomology(self.group, Coefficients::Rationals)?.graded_dims();
        let mut fp_dims: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for p in [2u64, 3, 5, 7] {
            let dims = match self.torsion.get(&p) {
                Some(t) => t.ctx.ring.graded_dims(),
                None => cohomology(self.group, Coefficients::fp(p)?)?.graded_dims(),
            };
            fp_dims.insert(p, dims);
        }
        let field = |p: u64, d: u32| -> usize { fp_dims[&p].get(d as usize).copied().unwrap_or(0) };

        let mut out = Vec::new();
        for d in 0..=limit {
            let r = rank(d);
            if q_dims.get(d as usize).copied().unwrap_or(0) != r {
                return Err(Error::ConsistencyFailure(format!(
                    "{}: free rank {r} vs rational dimension in degree {d}",
                    self.group
                )));
            }
            let mut torsion_list = Vec::new();
            for p in [2u64, 3, 5, 7] {
                let td = tors(p, d);
                if r + td + tors(p, d + 1) != field(p, d) {
                    return Err(Error::ConsistencyFailure(format!(
                        "{}: universal-coefficient count fails at p = {p}, degree {d}",
                        self.group
                    )));
                }
                if td > 0 {
                    torsion_list.push((p, td));
                }
            }
            out.push(HomologyGroupDescriptor {
                degree: d,
                free_rank: r,
                torsion: torsion_list,
            });
        }
        Ok(out)
    }

    /// Renders an integral element: free terms in the `rho` names, torsion
    /// terms expressed in the named torsion bases.
    pub fn display(&self, e: &IntegralElement) -> Result<String> {
        let mut parts: Vec<String> = Vec::new();
        if !e.free.is_zero() {
            parts.push(e.free.to_string());
        }
        for (p, v) in &e.torsion {
            if v.is_zero() {
                continue;
            }
            let t = &self.torsion[p];
            let rename = self.rename_fn(*p);
            for (c, term) in t.express(v)? {
                let s = t.term_string(&term, &rename);
                if c == 1 {
                    parts.push(s);
                } else {
                    parts.push(format!("{c}*{s}"));
                }
            }
        }
        if parts.is_empty() {
            Ok("0".into())
        } else {
            Ok(parts.join(" + "))
        }
    }

    /// Maps a mod-p exterior generator name to the integral `rho` name with
    /// the same label.
    fn rename_fn(&self, p: u64) -> impl Fn(&str) -> String + '_ {
        let fp_ring = self.torsion[&p].ctx.ring.clone();
        let free = self.free.clone();
        move |name: &str| -> String {
            if let Some(label) = fp_ring.provenance().get(name) {
                if let Some(i) = free
                    .algebra
                    .find_gen_by_label(label.kind, label.origin_index)
                {
                    return free.algebra.gen_name(i).to_string();
                }
            }
            name.to_string()
        }
    }

    /// Quotient-style presentation view.
    pub fn presentation_text(&self) -> Result<String> {
        let alg = &self.free.algebra;
        let mut delta_names: Vec<String> = Vec::new();
        let mut lambda_names: Vec<String> = Vec::new();
        let mut square_rels: Vec<String> = Vec::new();
        for (i, gs) in alg.gens().iter().enumerate() {
            match &self.squares[i] {
                RhoSquare::Zero => lambda_names.push(gs.name.clone()),
                RhoSquare::Unknown => {
                    delta_names.push(gs.name.clone());
                    square_rels.push(format!("{}^2 = unknown", gs.name));
                }
                RhoSquare::Torsion(v) => {
                    delta_names.push(gs.name.clone());
                    let t2 = &self.torsion[&2];
                    let rename = self.rename_fn(2);
                    let terms = t2.express(v)?;
                    let txt: Vec<String> = terms
                        .iter()
                        .map(|(c, term)| {
                            let s = t2.term_string(term, &rename);
                            if *c == 1 {
                                s
                            } else {
                                format!("{c}*{s}")
                            }
                        })
                        .collect();
                    square_rels.push(format!("{}^2 - {}", gs.name, txt.join(" + ")));
                }
            }
        }
        let mut out = String::new();
        let bd = basic_data(self.group);
        if bd.m > 0 {
            write!(out, "A(G) (x) ").unwrap();
        }
        if !delta_names.is_empty() {
            write!(out, "Delta_Z({})", delta_names.join(",")).unwrap();
            if !lambda_names.is_empty() {
                write!(out, " (x) ").unwrap();
            }
        }
        if !lambda_names.is_empty() {
            write!(out, "Lambda_Z({})", lambda_names.join(",")).unwrap();
        }
        let mut rels: Vec<String> = square_rels;
        // Action relations with a singleton torsion set print in their
        // collapsed form.
        for &p in self.torsion.keys() {
            let gp = torsion_index_set(self.group, p);
            if gp.len() == 1 {
                let t = gp[0];
                if let Ok(rho) = self.rho_for_action(t) {
                    if let Some((m, _)) = rho.free.terms().next() {
                        let name = crate::graded_algebra::monomial_string(&self.free.algebra, m);
                        let x = format!("x{}", bd.deg_y[t - 1]);
                        rels.push(format!("{name}*{x}"));
                    }
                }
            } else {
                rels.push(format!("H(t, I) for t, I in the {p}-torsion index set"));
            }
        }
        if !rels.is_empty() {
            write!(out, " / <{}>", rels.join(", ")).unwrap();
        }
        Ok(out)
    }

    /// Split-shape presentation view: free part plus each torsion component.
    pub fn split_presentation_text(&self) -> String {
        let mut parts = vec![format!("free part: {}", self.free_part_text())];
        for (p, t) in &self.torsion {
            parts.push(format!("tau_{p}: {}", t.presentation_text()));
        }
        parts.join("\n")
    }

    fn free_part_text(&self) -> String {
        let names: Vec<&str> = self
            .free
            .algebra
            .gens()
            .iter()
            .map(|g| g.name.as_str())
            .collect();
        format!("Delta_Z({})", names.join(","))
    }
}

impl std::fmt::Debug for IntegralCohomology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "IntegralCohomology({}, free rank {}, torsion primes {:?})",
            self.group,
            self.free.total_dim(),
            self.torsion.keys().collect::<Vec<_>>()
        )
    }
}

/// Total free rank is `2^n`; used as a quick structural probe.
pub fn expected_free_rank(g: GroupId) -> u64 {
    1u64 << g.rank()
}

/// Convenience entry point: builds the integral ring and returns its
/// per-degree descriptors, cross-checked against all field coefficients.
pub fn homology_descriptors(
    g: GroupId,
    up_to_degree: u32,
) -> Result<Vec<HomologyGroupDescriptor>> {
    integral_cohomology(g)?.homology_descriptors(up_to_degree)
}
