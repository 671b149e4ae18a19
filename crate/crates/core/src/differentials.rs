//! The degree-1 differentials `delta_p` (on the cohomology model) and
//! `partial_p` (on the degenerated-page model), their homology and image,
//! and the generator-level reduction and Bockstein maps.
//!
//! Both differentials are the unique graded derivations sending the
//! torsion-attached odd generator of index `t` to minus its even class and
//! every other generator to zero.  They are assembled as per-degree exact
//! matrices over F_p in the monomial bases; no odd squares are ever needed,
//! so the maps exist even where square data is missing.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::basic_data::{
    complement_set, Coefficients, GeneratorLabel, GroupFamily, LabelKind, Parity,
};
use crate::fp_linalg::{rank, Echelon};
use crate::graded_algebra::{Element, Monomial, PowerRule};
use crate::rings::{CohomologyRing, RingFlavor};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A degree-(+1) linear map between the graded pieces of one algebra,
/// stored as sparse columns per degree.
#[derive(Debug, Clone)]
pub struct GradedLinearMap {
    pub ring: CohomologyRing,
    pub p: u64,
    /// `cols[d][i]` lists `(target_index, value)` pairs describing the image
    /// of the `i`-th basis monomial of degree `d` inside degree `d + 1`.
    cols: Vec<Vec<Vec<(u32, u64)>>>,
}

impl GradedLinearMap {
    pub fn degree_shift(&self) -> u32 {
        1
    }

    pub fn source_dim(&self, degree: u32) -> usize {
        self.ring.algebra.dim(degree)
    }

    /// Applies the map to an element (must belong to the source ring).
    pub fn apply(&self, e: &Element) -> Result<Element> {
        if !Arc::ptr_eq(e.algebra(), &self.ring.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = &self.ring.algebra;
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        for (m, c) in e.terms() {
            let (d, i) = alg.index_of(m).expect("basis monomial");
            if let Some(col) = self.cols.get(d as usize).and_then(|v| v.get(i as usize)) {
                for &(j, v) in col {
                    let tgt = alg.basis(d + 1)[j as usize].clone();
                    terms.push((tgt, c.mul_i64(v as i64)));
                }
            }
        }
        Ok(Element::from_terms(alg, terms))
    }

    /// Dense rows (one per source basis monomial) of the block starting in
    /// `degree`.
    fn dense_rows(&self, degree: u32) -> Vec<Vec<u64>> {
        let n_src = self.ring.algebra.dim(degree);
        let n_tgt = self.ring.algebra.dim(degree + 1);
        let mut rows = vec![vec![0u64; n_tgt]; n_src];
        if let Some(level) = self.cols.get(degree as usize) {
            for (i, col) in level.iter().enumerate() {
                for &(j, v) in col {
                    rows[i][j as usize] = v;
                }
            }
        }
        rows
    }

    /// Rank of the block starting in `degree`.
    pub fn rank_at(&self, degree: u32) -> usize {
        let n_tgt = self.ring.algebra.dim(degree + 1);
        if n_tgt == 0 || self.ring.algebra.dim(degree) == 0 {
            return 0;
        }
        rank(self.p, n_tgt, &self.dense_rows(degree))
    }

    /// Verifies that the composite of consecutive blocks vanishes.
    pub fn check_square_zero(&self) -> Result<()> {
        for d in 0..self.cols.len() {
            for (i, col) in self.cols[d].iter().enumerate() {
                let mut acc: BTreeMap<u32, u64> = BTreeMap::new();
                for &(j, v) in col {
                    if let Some(next) = self.cols.get(d + 1).and_then(|l| l.get(j as usize)) {
                        for &(k, w) in next {
                            *acc.entry(k).or_insert(0) += v * w % self.p;
                        }
                    }
                }
                if acc.values().any(|&v| v % self.p != 0) {
                    return Err(Error::NotADifferential(format!(
                        "square is nonzero on basis element {i} of degree {d}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds `delta_p` (or `partial_p` on the page model) for an `F_p` ring.
pub fn delta_p(ring: &CohomologyRing) -> Result<GradedLinearMap> {
    let p = match ring.coeff {
        Coefficients::PrimeField(p) => p,
        _ => {
            return Err(Error::UnsupportedCoefficient(
                "the differential is defined over prime fields".into(),
            ))
        }
    };
    if ring.flavor == RingFlavor::Chow {
        return Err(Error::UnsupportedCoefficient(
            "the differential acts on the cohomology or page model".into(),
        ));
    }
    let alg = &ring.algebra;
    // Pairs (odd generator index, partner Chow generator index).
    let mut theta_pairs: Vec<(usize, usize)> = Vec::new();
    for (i, gs) in alg.gens().iter().enumerate() {
        if let Some(GeneratorLabel {
            kind: LabelKind::Theta,
            origin_index,
            ..
        }) = gs.label
        {
            let chow = alg
                .find_gen_by_label(LabelKind::ChowX, origin_index)
                .expect("theta generators pair with a surviving even class");
            theta_pairs.push((i, chow));
        }
    }
    let top = alg.top_degree();
    let mut cols: Vec<Vec<Vec<(u32, u64)>>> = Vec::with_capacity(top as usize + 1);
    for d in 0..=top {
        let level = alg.basis(d);
        let mut level_cols = Vec::with_capacity(level.len());
        for m in level {
            let mut col: Vec<(u32, u64)> = Vec::new();
            for &(theta, chow) in &theta_pairs {
                if m.exponents()[theta] != 1 {
                    continue;
                }
                // Leibniz sign: odd factors strictly before this one.
                let before = (0..theta)
                    .filter(|&j| alg.gens()[j].parity == Parity::Odd && m.exponents()[j] == 1)
                    .count();
                let trunc = match alg.gens()[chow].power {
                    PowerRule::Truncate(t) => t,
                    _ => unreachable!(),
                };
                if m.exponents()[chow] as u32 + 1 >= trunc {
                    continue;
                }
                let mut exps = m.exponents().to_vec();
                exps[theta] = 0;
                exps[chow] += 1;
                let target = Monomial(exps);
                let (td, ti) = alg.index_of(&target).expect("target in basis");
                debug_assert_eq!(td, d + 1);
                // The generator value is minus the even class.
                let value = if before % 2 == 0 { p - 1 } else { 1 };
                col.push((ti, value));
            }
            level_cols.push(col);
        }
        cols.push(level_cols);
    }
    Ok(GradedLinearMap {
        ring: ring.clone(),
        p,
        cols,
    })
}

/// Homology of a square-zero degree-1 map: per-degree and total dimensions,
/// by exact rank computation.
#[derive(Debug, Clone)]
pub struct HomologyReport {
    pub total: usize,
    pub per_degree: Vec<usize>,
}

pub fn homology_dimension(map: &GradedLinearMap) -> Result<HomologyReport> {
    map.check_square_zero()?;
    let top = map.ring.algebra.top_degree();
    let ranks: Vec<usize> = (0..=top).map(|d| map.rank_at(d)).collect();
    let mut per_degree = Vec::with_capacity(top as usize + 1);
    for d in 0..=top {
        let n = map.ring.algebra.dim(d);
        let r_out = ranks[d as usize];
        let r_in = if d == 0 { 0 } else { ranks[d as usize - 1] };
        per_degree.push(n - r_out - r_in);
    }
    Ok(HomologyReport {
        total: per_degree.iter().sum(),
        per_degree,
    })
}

/// The image of `delta_p` as a graded subspace of the ambient ring, with
/// membership tests and an in-image product oracle.  Since the map is a
/// derivation with square zero, the image is closed under ambient products.
pub struct ImageSubalgebra {
    map: GradedLinearMap,
    dims: Vec<usize>,
    echelons: Mutex<BTreeMap<u32, Arc<Echelon>>>,
}

impl ImageSubalgebra {
    pub fn ring(&self) -> &CohomologyRing {
        &self.map.ring
    }

    pub fn p(&self) -> u64 {
        self.map.p
    }

    /// Per-degree dimensions of the image.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.dims.get(degree as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Echelonized basis of the image in one degree (cached).
    pub fn echelon(&self, degree: u32) -> Arc<Echelon> {
        let mut cache = self.echelons.lock().unwrap();
        if let Some(e) = cache.get(&degree) {
            return Arc::clone(e);
        }
        let alg = &self.map.ring.algebra;
        let mut ech = Echelon::new(self.map.p, alg.dim(degree));
        if degree > 0 {
            let src = degree - 1;
            for rowvec in self.map.dense_rows(src) {
                ech.insert(rowvec);
            }
        }
        let e = Arc::new(ech);
        cache.insert(degree, Arc::clone(&e));
        e
    }

    /// Membership test for a homogeneous element of the ambient ring.
    pub fn contains(&self, e: &Element) -> Result<bool> {
        if e.is_zero() {
            return Ok(true);
        }
        let d = e.degree().ok_or_else(|| {
            Error::InconsistentPresentation("membership needs a homogeneous element".into())
        })?;
        Ok(self.echelon(d).contains(&e.fp_vector(d)?))
    }

    /// Multiplies two image elements in the ambient ring and certifies the
    /// product stays in the image.
    pub fn product_in_image(&self, a: &Element, b: &Element) -> Result<Element> {
        let prod = a.mul(b)?;
        if !prod.is_zero() && !self.contains(&prod)? {
            return Err(Error::OracleMismatch(
                "product of image elements left the image".into(),
            ));
        }
        Ok(prod)
    }
}

/// Computes the image of `delta_p` on a cohomology-model ring.
pub fn image_subalgebra(map: &GradedLinearMap) -> Result<ImageSubalgebra> {
    if map.ring.flavor != RingFlavor::Cohomology {
        return Err(Error::UnsupportedCoefficient(
            "the image oracle lives on the cohomology model".into(),
        ));
    }
    let top = map.ring.algebra.top_degree();
    let mut dims = vec![0usize; top as usize + 2];
    for d in 0..=top {
        dims[d as usize + 1] = map.rank_at(d);
    }
    dims.truncate(top as usize + 1);
    Ok(ImageSubalgebra {
        map: map.clone(),
        dims,
        echelons: Mutex::new(BTreeMap::new()),
    })
}

/// Mod-p reduction of an integral generator, landing in `H*(G; F_p)`.
///
/// xi_i maps to its mod-p namesake; the even class y_j survives exactly on
/// the torsion indices of p; eta_j reduces to `-y_j^{k_j - 1} theta_j` on a
/// torsion index and to the unit multiple `p_j eta_j` elsewhere.  The E8
/// generator eta_6 follows its own four-case rule, a consequence of the
/// coupling among the top power relations.
pub fn reduction_rp(fp_ring: &CohomologyRing, label: &GeneratorLabel) -> Result<Element> {
    let p = match fp_ring.coeff {
        Coefficients::PrimeField(p) => p,
        _ => {
            return Err(Error::UnsupportedCoefficient(
                "reduction lands in a prime-field ring".into(),
            ))
        }
    };
    let bd = fp_ring.basic_data();
    let g = fp_ring.group;
    let alg = &fp_ring.algebra;
    let zero = Ok(Element::zero(alg));
    match label.kind {
        LabelKind::Xi => fp_ring.generator(LabelKind::Xi, label.origin_index),
        LabelKind::ChowX => {
            let j = label.origin_index;
            if bd.p_list.get(j - 1) == Some(&p) {
                fp_ring.generator(LabelKind::ChowX, j)
            } else {
                zero
            }
        }
        LabelKind::Eta => {
            let j = label.origin_index;
            if !complement_set(g, Coefficients::Integers).contains(&j) {
                return Err(Error::UnknownLabel(format!(
                    "eta_{j} is not an integral generator of {g}"
                )));
            }
            if g.family() == GroupFamily::E8 && j == 6 {
                return match p {
                    2 => {
                        let y7 = fp_ring.generator(LabelKind::ChowX, 7)?;
                        let th7 = fp_ring.generator(LabelKind::Theta, 7)?;
                        y7.mul(&th7)
                    }
                    3 => {
                        let y6 = fp_ring.generator(LabelKind::ChowX, 6)?;
                        let th6 = fp_ring.generator(LabelKind::Theta, 6)?;
                        Ok(y6.pow(2)?.mul(&th6)?.neg())
                    }
                    5 => {
                        let y4 = fp_ring.generator(LabelKind::ChowX, 4)?;
                        let th4 = fp_ring.generator(LabelKind::Theta, 4)?;
                        Ok(y4.pow(4)?.mul(&th4)?.scale(2))
                    }
                    _ => Ok(fp_ring.generator(LabelKind::Eta, 6)?.scale(3)),
                };
            }
            if bd.p_list[j - 1] == p {
                let y = fp_ring.generator(LabelKind::ChowX, j)?;
                let th = fp_ring.generator(LabelKind::Theta, j)?;
                Ok(y.pow(bd.k_list[j - 1] - 1)?.mul(&th)?.neg())
            } else {
                Ok(fp_ring
                    .generator(LabelKind::Eta, j)?
                    .scale(bd.p_list[j - 1] as i64))
            }
        }
        LabelKind::Theta => Err(Error::UnknownLabel(
            "theta generators are not integral classes".into(),
        )),
    }
}

/// Bockstein on the mod-p generators, valued in the integral Chow ring:
/// `theta_t` maps to minus the integral class `y_t`; everything else dies.
pub fn bockstein_on_generators(
    chow_z: &CohomologyRing,
    label: &GeneratorLabel,
    p: u64,
) -> Result<Element> {
    if chow_z.coeff != Coefficients::Integers || chow_z.flavor != RingFlavor::Chow {
        return Err(Error::UnsupportedCoefficient(
            "the Bockstein is valued in the integral Chow ring".into(),
        ));
    }
    match label.kind {
        LabelKind::Theta => {
            let t = label.origin_index;
            let bd = chow_z.basic_data();
            if bd.p_list.get(t - 1) != Some(&p) {
                return Err(Error::UnknownLabel(format!(
                    "theta_{t} is not a mod-{p} generator of {}",
                    chow_z.group
                )));
            }
            Ok(chow_z.generator(LabelKind::ChowX, t)?.neg())
        }
        _ => Ok(Element::zero(&chow_z.algebra)),
    }
}
