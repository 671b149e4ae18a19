//! Builders for the specific algebras of the theory: Chow rings, the
//! degenerated spectral-sequence page, and the cohomology rings `H*(G; F)`
//! for field coefficients, with generator provenance.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basic_data::{
    basic_data, complement_set, primary_form_labels, torsion_index_set, BasicData, Coefficients,
    GeneratorLabel, GroupFamily, GroupId, LabelKind,
};
use crate::graded_algebra::{Algebra, Element, GeneratorSpec, SquareRule};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingFlavor {
    /// Even truncated-polynomial part only.
    Chow,
    /// Chow part tensor an exterior algebra on the primary generators (all
    /// odd squares zero).
    E3Page,
    /// Chow part tensor a simple system on the primary generators with the
    /// actual square values.
    Cohomology,
}

/// A built ring: the algebra plus the identity of each generator.
#[derive(Debug, Clone)]
pub struct CohomologyRing {
    pub group: GroupId,
    pub coeff: Coefficients,
    pub algebra: Arc<Algebra>,
    pub flavor: RingFlavor,
    provenance: BTreeMap<String, GeneratorLabel>,
}

impl CohomologyRing {
    pub(crate) fn new(
        group: GroupId,
        coeff: Coefficients,
        algebra: Arc<Algebra>,
        flavor: RingFlavor,
        provenance: BTreeMap<String, GeneratorLabel>,
    ) -> Self {
        CohomologyRing {
            group,
            coeff,
            algebra,
            flavor,
            provenance,
        }
    }

    pub fn provenance(&self) -> &BTreeMap<String, GeneratorLabel> {
        &self.provenance
    }

    pub fn basic_data(&self) -> BasicData {
        basic_data(self.group)
    }

    /// Generator index for a label, when the label is realized here.
    pub fn gen_index(&self, kind: LabelKind, origin: usize) -> Option<usize> {
        self.algebra.find_gen_by_label(kind, origin)
    }

    pub fn generator(&self, kind: LabelKind, origin: usize) -> Result<Element> {
        let i = self
            .gen_index(kind, origin)
            .ok_or_else(|| Error::UnknownLabel(format!("{kind:?}({origin}) in {}", self.group)))?;
        Ok(Element::generator(&self.algebra, i))
    }

    /// Resolves a generator name: either the synthesized name (`x6`, `z15`,
    /// `rho23`) or a label alias (`xi_2`, `theta1`, `eta_3`, `y_1`).
    pub fn resolve_name(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.algebra.find_gen(name) {
            return Some(i);
        }
        let lowered = name.to_ascii_lowercase();
        let (kind, rest) = if let Some(r) = lowered.strip_prefix("xi") {
            (LabelKind::Xi, r)
        } else if let Some(r) = lowered.strip_prefix("theta") {
            (LabelKind::Theta, r)
        } else if let Some(r) = lowered.strip_prefix("eta") {
            (LabelKind::Eta, r)
        } else {
            let r = lowered.strip_prefix("y")?;
            (LabelKind::ChowX, r)
        };
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let origin: usize = rest.parse().ok()?;
        self.gen_index(kind, origin)
    }

    /// Indices of the even (Chow) generators.
    pub fn chow_indices(&self) -> Vec<usize> {
        (0..self.algebra.gen_count())
            .filter(|&i| {
                matches!(
                    self.algebra.gens()[i].label,
                    Some(GeneratorLabel {
                        kind: LabelKind::ChowX,
                        ..
                    })
                )
            })
            .collect()
    }

    /// Indices of the odd primary generators.
    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.algebra.gen_count())
            .filter(|&i| {
                !matches!(
                    self.algebra.gens()[i].label,
                    Some(GeneratorLabel {
                        kind: LabelKind::ChowX,
                        ..
                    })
                )
            })
            .collect()
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        (0..=self.algebra.top_degree())
            .map(|d| self.algebra.dim(d))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.algebra.total_dim()
    }

    /// Human-readable tensor-factor presentation.
    pub fn presentation_text(&self) -> String {
        let alg = &self.algebra;
        let mut factors: Vec<String> = Vec::new();
        let chow: Vec<usize> = self.chow_indices();
        if !chow.is_empty() {
            let names: Vec<&str> = chow.iter().map(|&i| alg.gen_name(i)).collect();
            let rels: Vec<String> = chow
                .iter()
                .map(|&i| {
                    let g = &alg.gens()[i];
                    let t = match g.power {
                        crate::graded_algebra::PowerRule::Truncate(t) => t,
                        _ => unreachable!(),
                    };
                    if g.additive_order > 0 {
                        format!("{}*{}, {}^{}", g.additive_order, g.name, g.name, t)
                    } else {
                        format!("{}^{}", g.name, t)
                    }
                })
                .collect();
            factors.push(format!(
                "{}[{}]/<{}>",
                self.coeff,
                names.join(","),
                rels.join(", ")
            ));
        }
        let mut delta_gens: Vec<String> = Vec::new();
        let mut lambda_gens: Vec<String> = Vec::new();
        let mut squares: Vec<String> = Vec::new();
        for i in self.odd_indices() {
            let name = alg.gen_name(i).to_string();
            if !alg.square_known(i) {
                delta_gens.push(name.clone());
                squares.push(format!("{name}^2 = unknown"));
                continue;
            }
            let sq = alg.square_of(i).expect("known square");
            if sq.is_zero() {
                lambda_gens.push(name);
            } else {
                squares.push(format!("{name}^2 = {sq}"));
                delta_gens.push(name);
            }
        }
        if !delta_gens.is_empty() {
            factors.push(format!("Delta({})", delta_gens.join(",")));
        }
        if !lambda_gens.is_empty() {
            factors.push(format!("Lambda_{}({})", self.coeff, lambda_gens.join(",")));
        }
        if factors.is_empty() {
            factors.push(format!("{}", self.coeff));
        }
        let mut out = factors.join(" (x) ");
        if !squares.is_empty() {
            out.push_str(&format!("  with {}", squares.join(", ")));
        }
        out
    }
}

/// Synthesized generator name: prefix + degree, disambiguated by letter
/// suffixes when two generators share a degree (classical families only).
fn synth_name(prefix: &str, degree: u32, taken: &mut BTreeMap<String, u32>) -> String {
    let base = format!("{prefix}{degree}");
    let count = taken.entry(base.clone()).or_insert(0);
    *count += 1;
    match *count {
        1 => base,
        n => format!("{}{}", base, (b'a' + (n - 1) as u8) as char),
    }
}

fn chow_generator_specs(
    bd: &BasicData,
    coeff: Coefficients,
    names: &mut BTreeMap<String, u32>,
) -> Vec<GeneratorSpec> {
    let indices: Vec<usize> = match coeff {
        Coefficients::Integers => (1..=bd.m).collect(),
        Coefficients::Rationals => Vec::new(),
        Coefficients::PrimeField(p) => torsion_index_set(bd.group, p),
    };
    indices
        .into_iter()
        .map(|j| {
            let order = if coeff == Coefficients::Integers {
                bd.p_list[j - 1]
            } else {
                0
            };
            GeneratorSpec::even(
                synth_name("x", bd.deg_y[j - 1], names),
                bd.deg_y[j - 1],
                order,
                bd.k_list[j - 1],
            )
            .with_label(GeneratorLabel::chow_x(bd, j))
        })
        .collect()
}

/// The even subring `A*(G; coeff)`: truncated polynomial algebra on the
/// special classes, with additive orders kept over the integers and only the
/// order-`p` classes surviving over `F_p`.
pub fn chow_ring(g: GroupId, coeff: Coefficients) -> Result<CohomologyRing> {
    let bd = basic_data(g);
    let mut names = BTreeMap::new();
    let gens = chow_generator_specs(&bd, coeff, &mut names);
    let algebra = Algebra::build(gens, coeff)?;
    let provenance = algebra
        .gens()
        .iter()
        .map(|gs| (gs.name.clone(), gs.label.unwrap()))
        .collect();
    Ok(CohomologyRing {
        group: g,
        coeff,
        algebra,
        flavor: RingFlavor::Chow,
        provenance,
    })
}

/// Square of an odd primary generator over `F_2`, as a polynomial in the
/// Chow generators (positions into the Chow generator list, keyed here by
/// degree).  Fixed data for the exceptional groups; classical groups carry
/// the unknown sentinel (for SU and Sp the vanishing even part forces the
/// squares to zero at multiplication time).
fn f2_square(
    g: GroupId,
    label: &GeneratorLabel,
    chow_degree_pos: &BTreeMap<u32, usize>,
) -> Option<SquareRule> {
    if !g.is_exceptional() {
        return Some(SquareRule::Unknown);
    }
    let by_degree = |d: u32| chow_degree_pos.get(&d).copied();
    let fam = g.family();
    let rule = match (label.kind, label.origin_index) {
        // The degree-3 generator squares to the degree-6 class in every
        // exceptional group.
        (LabelKind::Xi, 1) => SquareRule::Value(vec![(1, vec![(by_degree(6)?, 1)])]),
        (LabelKind::Theta, 1) if matches!(fam, GroupFamily::E7 | GroupFamily::E8) => {
            SquareRule::Value(vec![(1, vec![(by_degree(10)?, 1)])])
        }
        (LabelKind::Theta, 3) if matches!(fam, GroupFamily::E7 | GroupFamily::E8) => {
            SquareRule::Value(vec![(1, vec![(by_degree(18)?, 1)])])
        }
        (LabelKind::Xi, 2) if fam == GroupFamily::E8 => {
            SquareRule::Value(vec![(1, vec![(by_degree(30)?, 1)])])
        }
        (LabelKind::Eta, 2) if fam == GroupFamily::E8 => {
            SquareRule::Value(vec![(1, vec![(by_degree(6)?, 6), (by_degree(10)?, 1)])])
        }
        _ => SquareRule::Zero,
    };
    Some(rule)
}

fn build_field_ring(g: GroupId, coeff: Coefficients, flavor: RingFlavor) -> Result<CohomologyRing> {
    let bd = basic_data(g);
    let mut names = BTreeMap::new();
    let mut gens = chow_generator_specs(&bd, coeff, &mut names);
    let chow_degree_pos: BTreeMap<u32, usize> = gens
        .iter()
        .enumerate()
        .map(|(i, gs)| (gs.degree, i))
        .collect();
    for label in primary_form_labels(g, coeff) {
        let square = match (flavor, coeff) {
            (RingFlavor::E3Page, _) => SquareRule::Zero,
            (_, Coefficients::PrimeField(2)) => {
                f2_square(g, &label, &chow_degree_pos).ok_or_else(|| {
                    Error::InconsistentPresentation(format!(
                        "missing square target degree for {label} in {g}"
                    ))
                })?
            }
            // Odd characteristic and the rationals kill odd squares.
            _ => SquareRule::Zero,
        };
        gens.push(
            GeneratorSpec::odd(
                synth_name("z", label.degree, &mut names),
                label.degree,
                square,
            )
            .with_label(label),
        );
    }
    let algebra = Algebra::build(gens, coeff)?;
    let provenance = algebra
        .gens()
        .iter()
        .map(|gs| (gs.name.clone(), gs.label.unwrap()))
        .collect();
    Ok(CohomologyRing {
        group: g,
        coeff,
        algebra,
        flavor,
        provenance,
    })
}

/// `H*(G; coeff)` for field coefficients.  Integral coefficients are served
/// by the `integral` module.
pub fn cohomology(g: GroupId, coeff: Coefficients) -> Result<CohomologyRing> {
    match coeff {
        Coefficients::Integers => Err(Error::UnsupportedCoefficient(
            "integral cohomology is assembled by the integral module".into(),
        )),
        _ => build_field_ring(g, coeff, RingFlavor::Cohomology),
    }
}

/// The degenerated-page model: identical graded dimensions to `cohomology`
/// but with every odd square equal to zero.  Over the integers this is only
/// available for the torsion-free families (no special classes).
pub fn e3_page(g: GroupId, coeff: Coefficients) -> Result<CohomologyRing> {
    let bd = basic_data(g);
    match coeff {
        Coefficients::Integers if bd.m > 0 => Err(Error::UnsupportedCoefficient(
            "the integral page is exposed through its additive model only".into(),
        )),
        _ => build_field_ring(g, coeff, RingFlavor::E3Page),
    }
}

/// Closed-form total dimension of `H*(G; F)` for a field `F`:
/// `2^n * prod k_t` over the torsion indices of the characteristic.
/// Saturates at `u64::MAX` for ranks beyond any buildable size.
pub fn expected_total_dim(g: GroupId, coeff: Coefficients) -> u64 {
    let bd = basic_data(g);
    if bd.n >= 64 {
        return u64::MAX;
    }
    let mut dim: u128 = 1u128 << bd.n;
    if let Coefficients::PrimeField(p) = coeff {
        for t in torsion_index_set(g, p) {
            dim = dim.saturating_mul(bd.k_list[t - 1] as u128);
        }
    }
    dim.min(u64::MAX as u128) as u64
}

/// The eta-indices surviving over the given coefficients, for reporting.
pub fn surviving_eta_indices(g: GroupId, coeff: Coefficients) -> Vec<usize> {
    complement_set(g, coeff)
}
