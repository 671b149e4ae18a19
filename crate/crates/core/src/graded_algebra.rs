//! Finite graded-commutative algebras presented by generators with
//! truncation exponents, odd-generator square rules and per-generator
//! additive orders.
//!
//! Normal form: even exponents stay below the generator's nilpotency
//! exponent, odd exponents are 0 or 1 (a repeated odd factor is rewritten
//! through its square rule, which must live in the even subalgebra).  Over
//! the integers every monomial carries an additive order determined by its
//! torsion generators; monomials mixing generators of two distinct torsion
//! primes vanish and integer coefficients are reduced modulo the order.
//!
//! A product of two basis monomials is always a scalar multiple of a basis
//! monomial (squares of odd generators are single even monomials in every
//! algebra this crate builds), but the kernel handles general square
//! elements supported on the even subalgebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::basic_data::{Coefficients, GeneratorLabel, Parity};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Square of an odd generator, as part of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareRule {
    /// Exterior-type generator: square is zero.
    Zero,
    /// Square exists in the even subalgebra but is not determined by the
    /// available data.  Multiplication that needs it fails loudly, except
    /// when the even subalgebra is zero in the target degree (then the
    /// square is forced to vanish).
    Unknown,
    /// Polynomial in the generators: terms `(coefficient, factors)` with
    /// factors given as `(generator index, exponent)` pairs.
    Value(Vec<(i64, Vec<(usize, u32)>)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerRule {
    /// Even generator with `x^e = 0`.
    Truncate(u32),
    /// Odd generator with the given square.
    Square(SquareRule),
}

#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub name: String,
    pub label: Option<GeneratorLabel>,
    pub degree: u32,
    pub parity: Parity,
    /// 0 for infinite additive order, otherwise a prime.  Only meaningful
    /// over the integers.
    pub additive_order: u64,
    pub power: PowerRule,
}

impl GeneratorSpec {
    pub fn even(
        name: impl Into<String>,
        degree: u32,
        additive_order: u64,
        truncation: u32,
    ) -> Self {
        GeneratorSpec {
            name: name.into(),
            label: None,
            degree,
            parity: Parity::Even,
            additive_order,
            power: PowerRule::Truncate(truncation),
        }
    }

    pub fn odd(name: impl Into<String>, degree: u32, square: SquareRule) -> Self {
        GeneratorSpec {
            name: name.into(),
            label: None,
            degree,
            parity: Parity::Odd,
            additive_order: 0,
            power: PowerRule::Square(square),
        }
    }

    pub fn with_label(mut self, label: GeneratorLabel) -> Self {
        self.label = Some(label);
        self
    }
}

/// Exponent vector over the generator list of one algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<u8>);

impl Monomial {
    pub fn one(gen_count: usize) -> Self {
        Monomial(vec![0; gen_count])
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Resolved square data of an odd generator.
#[derive(Debug, Clone)]
enum SquareData {
    NotOdd,
    Unknown,
    Terms(Vec<(Monomial, Scalar)>),
}

/// Graded dimensions of an algebra: plain counts over a field, or a
/// free-rank / per-prime torsion-rank split over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradedDimension {
    Field(Vec<usize>),
    Integral {
        free: Vec<usize>,
        torsion: BTreeMap<u64, Vec<usize>>,
    },
}

impl GradedDimension {
    /// Total count of basis monomials per degree, regardless of kind.
    pub fn counts(&self) -> Vec<usize> {
        match self {
            GradedDimension::Field(v) => v.clone(),
            GradedDimension::Integral { free, torsion } => {
                let mut v = free.clone();
                for t in torsion.values() {
                    for (d, c) in t.iter().enumerate() {
                        v[d] += c;
                    }
                }
                v
            }
        }
    }
}

/// An immutable finite graded-commutative algebra with an enumerated
/// monomial basis per degree.
pub struct Algebra {
    coeff: Coefficients,
    gens: Vec<GeneratorSpec>,
    squares: Vec<SquareData>,
    basis: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, (u32, u32)>,
    /// Dimensions of the even (Chow) subalgebra per degree.
    even_dims: Vec<usize>,
    top_degree: u32,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra({} gens over {}, dim {})",
            self.gens.len(),
            self.coeff,
            self.total_dim()
        )
    }
}

impl Algebra {
    /// Builds the algebra: validates the presentation, enumerates the
    /// monomial basis and resolves square rules to normal form.
    pub fn build(gens: Vec<GeneratorSpec>, coeff: Coefficients) -> Result<Arc<Algebra>> {
        for g in &gens {
            if g.degree == 0 {
                return Err(Error::InconsistentPresentation(format!(
                    "generator {} has degree 0",
                    g.name
                )));
            }
            let degree_parity = if g.degree % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            if degree_parity != g.parity {
                return Err(Error::InconsistentPresentation(format!(
                    "generator {} has parity inconsistent with its degree",
                    g.name
                )));
            }
            match (&g.parity, &g.power) {
                (Parity::Even, PowerRule::Truncate(e)) => {
                    if *e < 2 || *e > u8::MAX as u32 {
                        return Err(Error::InconsistentPresentation(format!(
                            "truncation exponent {e} of {} out of range",
                            g.name
                        )));
                    }
                }
                (Parity::Odd, PowerRule::Square(_)) => {}
                _ => {
                    return Err(Error::InconsistentPresentation(format!(
                        "power rule of {} does not match its parity",
                        g.name
                    )));
                }
            }
            if coeff.is_field() && g.additive_order != 0 {
                return Err(Error::InconsistentPresentation(format!(
                    "generator {} carries an additive order over a field",
                    g.name
                )));
            }
        }
        let mut names = std::collections::HashSet::new();
        for g in &gens {
            if !names.insert(g.name.clone()) {
                return Err(Error::InconsistentPresentation(format!(
                    "duplicate generator name {}",
                    g.name
                )));
            }
        }

        // Refuse oversized bases up front instead of exhausting memory.
        let bound: u128 = gens
            .iter()
            .map(|g| match g.power {
                PowerRule::Truncate(e) => e as u128,
                PowerRule::Square(_) => 2,
            })
            .fold(1u128, |acc, b| acc.saturating_mul(b));
        const MAX_BASIS: u128 = 1 << 24;
        if bound > MAX_BASIS {
            return Err(Error::InconsistentPresentation(format!(
                "monomial basis would have {bound} elements (limit {MAX_BASIS})"
            )));
        }
        let mut alg = Algebra {
            coeff,
            gens,
            squares: Vec::new(),
            basis: Vec::new(),
            index: HashMap::new(),
            even_dims: Vec::new(),
            top_degree: 0,
        };
        alg.enumerate_basis();
        alg.resolve_squares()?;
        Ok(Arc::new(alg))
    }

    /// The algebra with no generators: one-dimensional, concentrated in
    /// degree zero.
    pub fn unit(coeff: Coefficients) -> Arc<Algebra> {
        Algebra::build(Vec::new(), coeff).expect("unit algebra")
    }

    fn enumerate_basis(&mut self) {
        let max_degree: u32 = self
            .gens
            .iter()
            .map(|g| match g.power {
                PowerRule::Truncate(e) => (e - 1) * g.degree,
                PowerRule::Square(_) => g.degree,
            })
            .sum();
        let mut basis: Vec<Vec<Monomial>> = vec![Vec::new(); max_degree as usize + 1];
        let mut even_dims: Vec<usize> = vec![0; max_degree as usize + 1];
        let mut exps = vec![0u8; self.gens.len()];
        self.enumerate_rec(0, 0, 0, &mut exps, &mut basis, &mut even_dims);
        for level in basis.iter_mut() {
            // Descending lexicographic order within a degree; this is the
            // display order of terms.
            level.sort_by(|a, b| b.cmp(a));
        }
        let mut index = HashMap::new();
        let mut top = 0;
        for (d, level) in basis.iter().enumerate() {
            if !level.is_empty() {
                top = d as u32;
            }
            for (i, m) in level.iter().enumerate() {
                index.insert(m.clone(), (d as u32, i as u32));
            }
        }
        self.basis = basis;
        self.even_dims = even_dims;
        self.index = index;
        self.top_degree = top;
    }

    fn enumerate_rec(
        &self,
        gen_idx: usize,
        degree: u32,
        torsion_prime: u64,
        exps: &mut Vec<u8>,
        basis: &mut Vec<Vec<Monomial>>,
        even_dims: &mut Vec<usize>,
    ) {
        if gen_idx == self.gens.len() {
            basis[degree as usize].push(Monomial(exps.clone()));
            if exps
                .iter()
                .zip(&self.gens)
                .all(|(&e, g)| e == 0 || g.parity == Parity::Even)
            {
                even_dims[degree as usize] += 1;
            }
            return;
        }
        let g = &self.gens[gen_idx];
        let max_exp = match g.power {
            PowerRule::Truncate(e) => e - 1,
            PowerRule::Square(_) => 1,
        };
        for e in 0..=max_exp {
            // Over Z, monomials mixing two torsion primes are zero.
            let mut prime = torsion_prime;
            if e > 0 && g.additive_order != 0 {
                if torsion_prime != 0 && torsion_prime != g.additive_order {
                    continue;
                }
                prime = g.additive_order;
            }
            exps[gen_idx] = e as u8;
            self.enumerate_rec(
                gen_idx + 1,
                degree + e * g.degree,
                prime,
                exps,
                basis,
                even_dims,
            );
        }
        exps[gen_idx] = 0;
    }

    fn resolve_squares(&mut self) -> Result<()> {
        let mut squares = Vec::with_capacity(self.gens.len());
        for (i, g) in self.gens.iter().enumerate() {
            let data = match &g.power {
                PowerRule::Truncate(_) => SquareData::NotOdd,
                PowerRule::Square(SquareRule::Unknown) => SquareData::Unknown,
                PowerRule::Square(SquareRule::Zero) => SquareData::Terms(Vec::new()),
                PowerRule::Square(SquareRule::Value(poly)) => {
                    let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
                    for (c, factors) in poly {
                        let mut exps = vec![0u8; self.gens.len()];
                        let mut raw_degree: u64 = 0;
                        let mut dead = false;
                        for &(fg, fe) in factors {
                            let spec = self.gens.get(fg).ok_or_else(|| {
                                Error::InconsistentPresentation(format!(
                                    "square of {} references generator #{fg}",
                                    g.name
                                ))
                            })?;
                            if spec.parity != Parity::Even {
                                return Err(Error::InconsistentPresentation(format!(
                                    "square of {} is not supported on the even subalgebra",
                                    g.name
                                )));
                            }
                            raw_degree += fe as u64 * spec.degree as u64;
                            let e = exps[fg] as u32 + fe;
                            if let PowerRule::Truncate(t) = spec.power {
                                if e >= t {
                                    dead = true;
                                }
                            }
                            exps[fg] = e.min(u8::MAX as u32) as u8;
                        }
                        if raw_degree != 2 * g.degree as u64 {
                            return Err(Error::InconsistentPresentation(format!(
                                "square of {} has degree {raw_degree}, expected {}",
                                g.name,
                                2 * g.degree
                            )));
                        }
                        if dead {
                            continue;
                        }
                        let mono = Monomial(exps);
                        let order = self.monomial_order(&mono);
                        if g.additive_order > 0 {
                            match order {
                                Some(r) if r > 0 && g.additive_order % r == 0 => {}
                                Some(0) | Some(_) | None => {
                                    return Err(Error::InconsistentPresentation(format!(
                                        "square of {} violates its additive order",
                                        g.name
                                    )));
                                }
                            }
                        }
                        let mut s = Scalar::from_i64(*c, self.coeff);
                        if let Some(r) = order {
                            s = s.reduce_mod_order(r);
                        } else {
                            continue;
                        }
                        add_term(&mut acc, mono, s);
                    }
                    SquareData::Terms(acc.into_iter().collect())
                }
            };
            squares.push(data);
            let _ = i;
        }
        self.squares = squares;
        Ok(())
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    pub fn gens(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn find_gen(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn find_gen_by_label(
        &self,
        kind: crate::basic_data::LabelKind,
        origin: usize,
    ) -> Option<usize> {
        self.gens
            .iter()
            .position(|g| g.label.map(|l| (l.kind, l.origin_index)) == Some((kind, origin)))
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn basis(&self, degree: u32) -> &[Monomial] {
        static EMPTY: Vec<Monomial> = Vec::new();
        self.basis.get(degree as usize).unwrap_or(&EMPTY)
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.basis(degree).len()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    /// Dimension of the even subalgebra in the given degree.
    pub fn even_dim(&self, degree: u32) -> usize {
        self.even_dims.get(degree as usize).copied().unwrap_or(0)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<(u32, u32)> {
        self.index.get(m).copied()
    }

    /// The unique basis monomial of the top degree, when the top degree is
    /// one-dimensional.
    pub fn top_monomial(&self) -> Option<&Monomial> {
        let level = self.basis(self.top_degree);
        if level.len() == 1 {
            Some(&level[0])
        } else {
            None
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.gens)
            .map(|(&e, g)| e as u32 * g.degree)
            .sum()
    }

    /// Additive order of a monomial over the integers: `Some(0)` for free,
    /// `Some(p)` for torsion, `None` when the monomial vanishes because it
    /// mixes two torsion primes.  Over a field always `Some(0)`.
    pub fn monomial_order(&self, m: &Monomial) -> Option<u64> {
        if self.coeff.is_field() {
            return Some(0);
        }
        let mut prime = 0u64;
        for (&e, g) in m.0.iter().zip(&self.gens) {
            if e > 0 && g.additive_order != 0 {
                if prime == 0 {
                    prime = g.additive_order;
                } else if prime != g.additive_order {
                    return None;
                }
            }
        }
        Some(prime)
    }

    pub fn graded_dimension(&self) -> GradedDimension {
        match self.coeff {
            Coefficients::Integers => {
                let mut free = vec![0usize; self.top_degree as usize + 1];
                let mut torsion: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
                for (d, level) in self.basis.iter().enumerate() {
                    for m in level {
                        match self.monomial_order(m) {
                            Some(0) => free[d] += 1,
                            Some(p) => {
                                torsion.entry(p).or_insert_with(|| {
                                    vec![0usize; self.top_degree as usize + 1]
                                })[d] += 1;
                            }
                            None => unreachable!("basis monomials never mix primes"),
                        }
                    }
                }
                GradedDimension::Integral { free, torsion }
            }
            _ => GradedDimension::Field(self.basis.iter().map(|b| b.len()).collect()),
        }
    }

    /// Resolved square of an odd generator, as a normal-form element.
    /// `Err(UnknownSquare)` when the data is genuinely missing; a missing
    /// square whose target degree has no even monomials is forced to zero.
    pub fn square_of(self: &Arc<Self>, gen: usize) -> Result<Element> {
        match &self.squares[gen] {
            SquareData::NotOdd => Err(Error::InconsistentPresentation(format!(
                "{} is not an odd generator",
                self.gens[gen].name
            ))),
            SquareData::Unknown => {
                if self.even_dim(2 * self.gens[gen].degree) == 0 {
                    Ok(Element::zero(self))
                } else {
                    Err(Error::UnknownSquare {
                        generator: self.gens[gen].name.clone(),
                    })
                }
            }
            SquareData::Terms(terms) => Ok(Element {
                algebra: Arc::clone(self),
                terms: terms.iter().cloned().collect(),
            }),
        }
    }

    /// True when the square of the given odd generator is known (or forced).
    pub fn square_known(&self, gen: usize) -> bool {
        match &self.squares[gen] {
            SquareData::Unknown => self.even_dim(2 * self.gens[gen].degree) == 0,
            _ => true,
        }
    }

    /// Koszul sign `(-1) ^ (number of odd-odd transpositions)` for merging
    /// the ordered monomial `a` with `b`.
    pub(crate) fn koszul_sign(&self, a: &Monomial, b: &Monomial) -> i64 {
        let mut swaps = 0u32;
        let mut a_tail = 0u32; // odd exponents of a with index > current j
                               // Iterate j descending; a_tail accumulates odd exponents of a above j.
        for j in (0..self.gens.len()).rev() {
            if self.gens[j].parity == Parity::Odd {
                if b.0[j] == 1 {
                    swaps += a_tail;
                }
                a_tail += a.0[j] as u32;
            }
        }
        if swaps.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Product of two normal-form monomials, scaled by `scale`, as a list of
    /// normal-form terms.
    pub fn mul_monomials(
        self: &Arc<Self>,
        a: &Monomial,
        b: &Monomial,
        scale: &Scalar,
    ) -> Result<Vec<(Monomial, Scalar)>> {
        if scale.is_zero() {
            return Ok(Vec::new());
        }
        let n = self.gens.len();
        let mut exps = vec![0u8; n];
        let mut dups: Vec<usize> = Vec::new();
        #[allow(clippy::needless_range_loop)] // three parallel arrays
        for i in 0..n {
            match self.gens[i].power {
                PowerRule::Truncate(t) => {
                    let e = a.0[i] as u32 + b.0[i] as u32;
                    if e >= t {
                        return Ok(Vec::new());
                    }
                    exps[i] = e as u8;
                }
                PowerRule::Square(_) => match (a.0[i], b.0[i]) {
                    (1, 1) => dups.push(i),
                    (x, y) => exps[i] = x + y,
                },
            }
        }
        let sign = self.koszul_sign(a, b);
        let mut terms: Vec<(Monomial, Scalar)> = vec![(Monomial(exps), scale.mul_i64(sign))];
        for &g in &dups {
            let square = match &self.squares[g] {
                SquareData::Unknown => {
                    if self.even_dim(2 * self.gens[g].degree) == 0 {
                        return Ok(Vec::new());
                    }
                    return Err(Error::UnknownSquare {
                        generator: self.gens[g].name.clone(),
                    });
                }
                SquareData::Terms(t) => t,
                SquareData::NotOdd => unreachable!(),
            };
            if square.is_empty() {
                return Ok(Vec::new());
            }
            let mut next: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len() * square.len());
            for (m, c) in &terms {
                'sq: for (sm, sc) in square {
                    // Squares live in the even subalgebra: merging is plain
                    // exponent addition with truncation.
                    let mut e2 = m.0.clone();
                    #[allow(clippy::needless_range_loop)] // parallel arrays
                    for i in 0..n {
                        if sm.0[i] > 0 {
                            let e = e2[i] as u32 + sm.0[i] as u32;
                            if let PowerRule::Truncate(t) = self.gens[i].power {
                                if e >= t {
                                    continue 'sq;
                                }
                            }
                            e2[i] = e as u8;
                        }
                    }
                    next.push((Monomial(e2), c.mul(sc)));
                }
            }
            terms = next;
            if terms.is_empty() {
                return Ok(Vec::new());
            }
        }
        // Integer coefficients: reduce by the additive order of the carrier
        // monomial, drop mixed-prime monomials.
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            match self.monomial_order(&m) {
                None => continue,
                Some(r) => {
                    let c = c.reduce_mod_order(r);
                    add_term(&mut out, m, c);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn add_term(acc: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Sparse scalar-weighted sum of normal-form monomials in a fixed algebra.
#[derive(Debug, Clone)]
pub struct Element {
    algebra: Arc<Algebra>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Element {
            algebra: Arc::clone(algebra),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<Algebra>) -> Self {
        Self::monomial(
            algebra,
            Monomial::one(algebra.gen_count()),
            Scalar::one(algebra.coeff),
        )
    }

    pub fn monomial(algebra: &Arc<Algebra>, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        let c = match algebra.monomial_order(&m) {
            None => Scalar::from_i64(0, algebra.coeff),
            Some(r) => c.reduce_mod_order(r),
        };
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element {
            algebra: Arc::clone(algebra),
            terms,
        }
    }

    pub fn generator(algebra: &Arc<Algebra>, gen: usize) -> Self {
        let mut exps = vec![0u8; algebra.gen_count()];
        exps[gen] = 1;
        Self::monomial(algebra, Monomial(exps), Scalar::one(algebra.coeff))
    }

    pub fn from_terms(
        algebra: &Arc<Algebra>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            let c = match algebra.monomial_order(&m) {
                None => continue,
                Some(r) => c.reduce_mod_order(r),
            };
            add_term(&mut acc, m, c);
        }
        Element {
            algebra: Arc::clone(algebra),
            terms: acc,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Degree when homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = self.algebra.monomial_degree(it.next()?);
        for m in it {
            if self.algebra.monomial_degree(m) != first {
                return None;
            }
        }
        Some(first)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut acc = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut acc, m.clone(), c.clone());
        }
        Ok(Element {
            algebra: Arc::clone(&self.algebra),
            terms: acc,
        })
    }

    pub fn neg(&self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg()));
        Element::from_terms(&self.algebra, terms)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn scale(&self, v: i64) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.mul_i64(v)));
        Element::from_terms(&self.algebra, terms)
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let scale = c1.mul(c2);
                for (m, c) in self.algebra.mul_monomials(m1, m2, &scale)? {
                    add_term(&mut acc, m, c);
                }
            }
        }
        Ok(Element {
            algebra: Arc::clone(&self.algebra),
            terms: acc,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Element> {
        let mut out = Element::one(&self.algebra);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Coordinates in the monomial basis of the given degree, over `F_p`.
    /// The element must be homogeneous of that degree (or zero).
    pub fn fp_vector(&self, degree: u32) -> Result<Vec<u64>> {
        if !matches!(self.algebra.coeff, Coefficients::PrimeField(_)) {
            return Err(Error::UnsupportedCoefficient(
                "coordinate vectors are taken over prime fields".into(),
            ));
        }
        let mut v = vec![0u64; self.algebra.dim(degree)];
        for (m, c) in &self.terms {
            let (d, i) = self
                .algebra
                .index_of(m)
                .expect("normal-form monomial is in the basis");
            if d != degree {
                return Err(Error::InconsistentPresentation(format!(
                    "element is not homogeneous of degree {degree}"
                )));
            }
            v[i as usize] = c.residue().expect("field scalar");
        }
        Ok(v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let alg = &self.algebra;
        let mut entries: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        entries.sort_by(|(m1, _), (m2, _)| {
            let d1 = alg.monomial_degree(m1);
            let d2 = alg.monomial_degree(m2);
            d1.cmp(&d2).then_with(|| m2.cmp(m1))
        });
        for (i, (m, c)) in entries.into_iter().enumerate() {
            let mono = monomial_string(alg, m);
            let (neg, coeff) = match c {
                Scalar::Int(v) if v.sign() == num_bigint::Sign::Minus => (true, (-v).to_string()),
                Scalar::Rat(v) if v.numer().sign() == num_bigint::Sign::Minus => {
                    (true, (-v).to_string())
                }
                other => (false, other.to_string()),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (&*coeff, &*mono) {
                (_, "1") => write!(f, "{coeff}")?,
                ("1", _) => write!(f, "{mono}")?,
                _ => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Renders one monomial through its algebra's generator names.
pub fn monomial_string(alg: &Algebra, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(alg.gen_name(i).to_string()),
            _ => parts.push(format!("{}^{}", alg.gen_name(i), e)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Decides whether an algebra is monotone with respect to a decomposed top
/// monomial `u`: the top degree must be one-dimensional, spanned by `u`, and
/// every other exponent tuple in `u`'s generators of the same total degree
/// must normalize to zero or to a multiple of `u` itself.
pub fn is_monotone(alg: &Arc<Algebra>, u: &Monomial) -> Result<bool> {
    let top = alg.top_degree();
    if alg.basis(top) != std::slice::from_ref(u) {
        return Ok(false);
    }
    let support: Vec<usize> = (0..alg.gen_count()).filter(|&i| u.0[i] > 0).collect();
    let mut tuple = vec![0u32; support.len()];
    monotone_rec(alg, u, top, &support, 0, 0, &mut tuple)
}

fn monotone_rec(
    alg: &Arc<Algebra>,
    u: &Monomial,
    remaining: u32,
    support: &[usize],
    pos: usize,
    used: u32,
    tuple: &mut Vec<u32>,
) -> Result<bool> {
    let _ = used;
    if pos == support.len() {
        if remaining != 0 {
            return Ok(true);
        }
        // Evaluate the tuple; skip the defining tuple itself.
        let is_u = support
            .iter()
            .enumerate()
            .all(|(s, &g)| tuple[s] == u.0[g] as u32);
        if is_u {
            return Ok(true);
        }
        let mut value = Element::one(alg);
        for (s, &g) in support.iter().enumerate() {
            if tuple[s] > 0 {
                value = value.mul(&Element::generator(alg, g).pow(tuple[s])?)?;
            }
        }
        let ok = value.is_zero() || (value.term_count() == 1 && value.coefficient(u).is_some());
        return Ok(ok);
    }
    let g = support[pos];
    let d = alg.gens()[g].degree;
    let max_c = remaining / d;
    for c in 0..=max_c {
        // Even exponents at or beyond the truncation vanish outright, as do
        // higher tuples built on them.
        if let PowerRule::Truncate(t) = alg.gens()[g].power {
            if c >= t {
                break;
            }
        }
        tuple[pos] = c;
        if !monotone_rec(alg, u, remaining - c * d, support, pos + 1, used + c, tuple)? {
            return Ok(false);
        }
    }
    tuple[pos] = 0;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basic_data::Coefficients::{Integers, Rationals};

    fn f2() -> Coefficients {
        Coefficients::PrimeField(2)
    }

    /// F_2[x6]/<x6^2> tensor a simple system on z3 with z3^2 = x6.
    fn small_delta_algebra() -> Arc<Algebra> {
        Algebra::build(
            vec![
                GeneratorSpec::even("x6", 6, 0, 2),
                GeneratorSpec::odd("z3", 3, SquareRule::Value(vec![(1, vec![(0, 1)])])),
            ],
            f2(),
        )
        .unwrap()
    }

    #[test]
    fn delta_algebra_has_dim_four() {
        let alg = small_delta_algebra();
        assert_eq!(alg.total_dim(), 4);
        let dims = match alg.graded_dimension() {
            GradedDimension::Field(v) => v,
            _ => panic!(),
        };
        assert_eq!(dims[0], 1);
        assert_eq!(dims[3], 1);
        assert_eq!(dims[6], 1);
        assert_eq!(dims[9], 1);
        assert_eq!(alg.top_degree(), 9);
    }

    #[test]
    fn unit_algebra() {
        let alg = Algebra::unit(Rationals);
        assert_eq!(alg.total_dim(), 1);
        assert_eq!(alg.top_degree(), 0);
        let one = Element::one(&alg);
        assert_eq!(one.mul(&one).unwrap(), one);
    }

    #[test]
    fn exterior_algebra_on_two_generators() {
        let alg = Algebra::build(
            vec![
                GeneratorSpec::odd("v3", 3, SquareRule::Zero),
                GeneratorSpec::odd("v11", 11, SquareRule::Zero),
            ],
            Rationals,
        )
        .unwrap();
        assert_eq!(alg.total_dim(), 4);
        assert_eq!(alg.top_degree(), 14);
        let a = Element::generator(&alg, 0);
        let b = Element::generator(&alg, 1);
        assert!(a.mul(&a).unwrap().is_zero());
        // Graded commutativity: v3 v11 = -v11 v3.
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_eq!(ab.neg(), ba);
    }

    #[test]
    fn square_rewrite_fires() {
        let alg = small_delta_algebra();
        let z3 = Element::generator(&alg, 1);
        let x6 = Element::generator(&alg, 0);
        assert_eq!(z3.mul(&z3).unwrap(), x6);
        // z3^3 = z3 * x6, and z3^4 = x6^2 = 0.
        let z3_cubed = z3.pow(3).unwrap();
        assert_eq!(z3_cubed, z3.mul(&x6).unwrap());
        assert!(z3.pow(4).unwrap().is_zero());
    }

    #[test]
    fn unknown_square_fails_only_when_needed() {
        let alg = Algebra::build(
            vec![
                GeneratorSpec::even("x6", 6, 0, 2),
                GeneratorSpec::odd("z3", 3, SquareRule::Unknown),
                GeneratorSpec::odd("z5", 5, SquareRule::Unknown),
            ],
            f2(),
        )
        .unwrap();
        let z3 = Element::generator(&alg, 1);
        let z5 = Element::generator(&alg, 2);
        // z3^2 would land in degree 6 where x6 lives: genuinely unknown.
        assert!(matches!(z3.mul(&z3), Err(Error::UnknownSquare { .. })));
        // z5^2 lands in degree 10 where the even part vanishes: forced zero.
        assert!(z5.mul(&z5).unwrap().is_zero());
        // Products without repeated odd factors never consult squares.
        assert!(!z3.mul(&z5).unwrap().is_zero());
    }

    #[test]
    fn integral_orders_and_mixed_primes() {
        // Z[x6, x8]/<2 x6, 3 x8, x6^2, x8^3>: the product x6 x8 vanishes.
        let alg = Algebra::build(
            vec![
                GeneratorSpec::even("x6", 6, 2, 2),
                GeneratorSpec::even("x8", 8, 3, 3),
            ],
            Integers,
        )
        .unwrap();
        let x6 = Element::generator(&alg, 0);
        let x8 = Element::generator(&alg, 1);
        assert!(x6.mul(&x8).unwrap().is_zero());
        assert!(x6.scale(2).is_zero());
        assert_eq!(x8.scale(-1), x8.scale(2));
        // Basis: 1, x6, x8, x8^2.
        assert_eq!(alg.total_dim(), 4);
        match alg.graded_dimension() {
            GradedDimension::Integral { free, torsion } => {
                assert_eq!(free.iter().sum::<usize>(), 1);
                assert_eq!(torsion[&2].iter().sum::<usize>(), 1);
                assert_eq!(torsion[&3].iter().sum::<usize>(), 2);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn monotone_examples() {
        let ext = Algebra::build(
            vec![
                GeneratorSpec::odd("v3", 3, SquareRule::Zero),
                GeneratorSpec::odd("v11", 11, SquareRule::Zero),
            ],
            Rationals,
        )
        .unwrap();
        let top = ext.top_monomial().unwrap().clone();
        assert!(is_monotone(&ext, &top).unwrap());

        // Simple-system model with z3^2 = x6 and an exterior z5.
        let alg = Algebra::build(
            vec![
                GeneratorSpec::even("x6", 6, 0, 2),
                GeneratorSpec::odd("z3", 3, SquareRule::Value(vec![(1, vec![(0, 1)])])),
                GeneratorSpec::odd("z5", 5, SquareRule::Zero),
            ],
            f2(),
        )
        .unwrap();
        let top = alg.top_monomial().unwrap().clone();
        assert_eq!(alg.monomial_degree(&top), 14);
        assert!(is_monotone(&alg, &top).unwrap());
    }

    #[test]
    fn display_formats() {
        let alg = small_delta_algebra();
        let z3 = Element::generator(&alg, 1);
        let x6 = Element::generator(&alg, 0);
        assert_eq!(z3.mul(&z3).unwrap().to_string(), "x6");
        assert_eq!(x6.mul(&z3).unwrap().to_string(), "x6*z3");
        assert_eq!(Element::zero(&alg).to_string(), "0");
        assert_eq!(Element::one(&alg).to_string(), "1");
    }

    #[test]
    fn normal_form_idempotence_and_unit_law() {
        let alg = small_delta_algebra();
        for d in 0..=alg.top_degree() {
            for m in alg.basis(d) {
                let e = Element::monomial(&alg, m.clone(), Scalar::one(f2()));
                let one = Element::one(&alg);
                assert_eq!(e.mul(&one).unwrap(), e);
                // Re-normalizing the stored terms changes nothing.
                let renorm =
                    Element::from_terms(&alg, e.terms().map(|(m, c)| (m.clone(), c.clone())));
                assert_eq!(renorm, e);
            }
        }
    }
}
