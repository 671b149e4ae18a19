//! Betti numbers, Poincare series, Euler characteristics, and the duality
//! pairing check.

use std::fmt;

use crate::basic_data::{primary_form_labels, Coefficients, GroupId};
use crate::graded_algebra::{monomial_string, Monomial};
use crate::rings::{cohomology, CohomologyRing, RingFlavor};
use crate::scalar::Scalar;
use crate::torsion::torsion_ring;
use crate::{Error, Result};

/// Coefficient vector indexed by degree, `0 ..= dim G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    pub coeffs: Vec<u64>,
}

impl PoincareSeries {
    pub fn from_dims(dims: &[usize], dim_g: u32) -> Self {
        let mut coeffs: Vec<u64> = dims.iter().map(|&d| d as u64).collect();
        coeffs.resize(dim_g as usize + 1, 0);
        PoincareSeries { coeffs }
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Formal product with `(1 + t^d)`.
    fn twist(&mut self, d: usize) {
        let n = self.coeffs.len();
        for j in (0..n.saturating_sub(d)).rev() {
            if self.coeffs[j] > 0 {
                self.coeffs[j + d] += self.coeffs[j];
            }
        }
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c > 0 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{d}:{c}")?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Poincare data of one coefficient system: a single series over a field,
/// or the free-rank series plus one series per torsion prime over Z.
#[derive(Debug, Clone)]
pub enum Series {
    Field(PoincareSeries),
    Integral {
        free: PoincareSeries,
        torsion: std::collections::BTreeMap<u64, PoincareSeries>,
    },
}

/// Graded dimension vector of `H*(G; coeff)`.
pub fn poincare_series(g: GroupId, coeff: Coefficients) -> Result<Series> {
    match coeff {
        Coefficients::Integers => {
            let mut free = PoincareSeries {
                coeffs: vec![0; g.dim() as usize + 1],
            };
            free.coeffs[0] = 1;
            for l in primary_form_labels(g, Coefficients::Integers) {
                free.twist(l.degree as usize);
            }
            let mut torsion = std::collections::BTreeMap::new();
            for p in [2u64, 3, 5] {
                if !crate::basic_data::torsion_index_set(g, p).is_empty() {
                    let t = torsion_ring(g, p)?;
                    torsion.insert(p, PoincareSeries::from_dims(&t.dims, g.dim()));
                }
            }
            Ok(Series::Integral { free, torsion })
        }
        _ => {
            let ring = cohomology(g, coeff)?;
            Ok(Series::Field(PoincareSeries::from_dims(
                &ring.graded_dims(),
                g.dim(),
            )))
        }
    }
}

/// The product formula `prod (1 + t^deg)` over the rational primary
/// degrees; an independent route to the rational series.
pub fn rational_product_formula(g: GroupId) -> PoincareSeries {
    let mut s = PoincareSeries {
        coeffs: vec![0; g.dim() as usize + 1],
    };
    s.coeffs[0] = 1;
    for l in primary_form_labels(g, Coefficients::Rationals) {
        s.twist(l.degree as usize);
    }
    s
}

/// Outcome of the duality pairing check.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub pass: bool,
    /// A failing pair `(x, y, product)` when `pass` is false.
    pub witness: Option<(String, String, String)>,
}

/// Verifies the pairing structure of a field-coefficient model: the top
/// degree is one-dimensional, every basis monomial `x` pairs with its
/// complement `tau(x)` onto the top class up to sign, and `x y = 0` for
/// every other basis monomial `y` of complementary degree.
pub fn duality_check(ring: &CohomologyRing) -> Result<DualityReport> {
    if !ring.coeff.is_field() || ring.flavor == RingFlavor::Chow {
        return Err(Error::UnsupportedCoefficient(
            "the duality pairing applies to field-coefficient cohomology models".into(),
        ));
    }
    let alg = &ring.algebra;
    let top = alg.top_degree();
    if top != ring.group.dim() {
        return Ok(DualityReport {
            pass: false,
            witness: Some((
                "top degree".into(),
                format!("{top}"),
                format!("expected {}", ring.group.dim()),
            )),
        });
    }
    let top_mono = match alg.top_monomial() {
        Some(m) => m.clone(),
        None => {
            return Ok(DualityReport {
                pass: false,
                witness: Some(("top degree".into(), "".into(), "not one-dimensional".into())),
            })
        }
    };
    // The involution: complementary exponents against the top monomial.
    let tau = |m: &Monomial| -> Monomial {
        Monomial(
            m.exponents()
                .iter()
                .zip(top_mono.exponents())
                .map(|(&e, &t)| t - e)
                .collect(),
        )
    };
    let one = Scalar::one(ring.coeff);
    let fail = |x: &Monomial, y: &Monomial, product: String| DualityReport {
        pass: false,
        witness: Some((monomial_string(alg, x), monomial_string(alg, y), product)),
    };
    for d in 0..=top / 2 {
        let level = alg.basis(d);
        let partner_level = alg.basis(top - d);
        for x in level {
            let tx = tau(x);
            debug_assert!(alg.index_of(&tx).is_some());
            for y in partner_level {
                let terms = alg.mul_monomials(x, y, &one)?;
                if *y == tx {
                    // Must hit the top class with a unit coefficient.
                    let ok =
                        terms.len() == 1 && terms[0].0 == top_mono && terms[0].1.is_unit_sign();
                    if !ok {
                        return Ok(fail(x, y, format!("{} terms", terms.len())));
                    }
                } else if !terms.is_empty() {
                    return Ok(fail(x, y, monomial_string(alg, &terms[0].0)));
                }
            }
        }
    }
    Ok(DualityReport {
        pass: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Coefficients {
        Coefficients::fp(p).unwrap()
    }

    #[test]
    fn g2_series() {
        let s = match poincare_series(GroupId::g2(), Coefficients::Rationals).unwrap() {
            Series::Field(s) => s,
            _ => panic!(),
        };
        assert_eq!(s.to_string(), "0:1 3:1 11:1 14:1");
        assert_eq!(s, rational_product_formula(GroupId::g2()));
        let f2 = match poincare_series(GroupId::g2(), fp(2)).unwrap() {
            Series::Field(s) => s,
            _ => panic!(),
        };
        // (1 + t^3)(1 + t^5)(1 + t^6) expanded.
        let mut expect = PoincareSeries {
            coeffs: vec![0; 15],
        };
        expect.coeffs[0] = 1;
        expect.twist(3);
        expect.twist(5);
        expect.twist(6);
        assert_eq!(f2, expect);
        assert_eq!(f2.total(), 8);
    }

    #[test]
    fn sp2_series_is_product_of_two_factors() {
        let g = GroupId::sp(2).unwrap();
        let s = match poincare_series(g, Coefficients::Rationals).unwrap() {
            Series::Field(s) => s,
            _ => panic!(),
        };
        let mut expect = PoincareSeries {
            coeffs: vec![0; 11],
        };
        expect.coeffs[0] = 1;
        expect.twist(3);
        expect.twist(7);
        assert_eq!(s, expect);
    }

    #[test]
    fn euler_characteristic_vanishes_and_series_are_palindromic() {
        for g in GroupId::exceptional_groups() {
            for f in [Coefficients::Rationals, fp(2), fp(3), fp(5), fp(7)] {
                let s = match poincare_series(g, f).unwrap() {
                    Series::Field(s) => s,
                    _ => panic!(),
                };
                assert_eq!(s.euler_characteristic(), 0, "{g} over {f}");
                assert!(s.is_palindromic(), "{g} over {f}");
                assert_eq!(s.coeffs[0], 1);
                assert_eq!(*s.coeffs.last().unwrap(), 1);
            }
        }
    }

    #[test]
    fn integral_series_shape() {
        let s = poincare_series(GroupId::g2(), Coefficients::Integers).unwrap();
        match s {
            Series::Integral { free, torsion } => {
                assert_eq!(free.to_string(), "0:1 3:1 11:1 14:1");
                assert_eq!(torsion[&2].to_string(), "6:1 9:1");
            }
            _ => panic!(),
        }
    }

    #[test]
    fn duality_small_cases() {
        for (g, f) in [
            (GroupId::f4(), fp(3)),
            (GroupId::e8(), Coefficients::Rationals),
            (GroupId::g2(), fp(2)),
            (GroupId::su(4).unwrap(), fp(2)),
        ] {
            let ring = cohomology(g, f).unwrap();
            let r = duality_check(&ring).unwrap();
            assert!(r.pass, "{g} over {f}: {:?}", r.witness);
        }
    }

    #[test]
    fn duality_blocked_by_missing_squares() {
        // Spin(10) over F_2 has complementary pairs that need an unknown
        // square.
        let ring = cohomology(GroupId::spin(10).unwrap(), fp(2)).unwrap();
        assert!(matches!(
            duality_check(&ring),
            Err(Error::UnknownSquare { .. })
        ));
    }
}
