//! Group identities, coefficient systems and the basic-data tables.
//!
//! The basic data of a group consists of the counts `(k, m)`, the degrees
//! `deg e_i` of the pure-relation generators, and for each special class
//! `y_j` its degree, additive order `p_j in {2,3,5}` and nilpotency exponent
//! `k_j`.  For the classical families these follow closed-form rows
//! (with `[ln x]` read as `floor(log2 x)`); for the five exceptional groups
//! they are fixed tables.  Everything downstream is derived from here.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Default upper bound on the rank parameter of classical families used by
/// enumeration suites.  Overridable per call site (the CLI reads
/// `LIECOHOM_MAX_RANK`).
pub const DEFAULT_MAX_RANK: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupFamily {
    SU,
    Sp,
    SpinEven,
    SpinOdd,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl GroupFamily {
    pub fn is_exceptional(self) -> bool {
        matches!(
            self,
            GroupFamily::G2 | GroupFamily::F4 | GroupFamily::E6 | GroupFamily::E7 | GroupFamily::E8
        )
    }

    pub fn is_spin(self) -> bool {
        matches!(self, GroupFamily::SpinEven | GroupFamily::SpinOdd)
    }
}

/// A compact 1-connected simple Lie group: a classical family with its rank
/// parameter, or one of the five exceptional groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupId {
    family: GroupFamily,
    rank_param: Option<u32>,
}

impl GroupId {
    pub fn new(family: GroupFamily, rank_param: Option<u32>) -> Result<Self> {
        let ok = match (family, rank_param) {
            (GroupFamily::SU, Some(n)) => n >= 2,
            (GroupFamily::Sp, Some(n)) => n >= 1,
            (GroupFamily::SpinEven, Some(n)) => n >= 3,
            (GroupFamily::SpinOdd, Some(n)) => n >= 2,
            (f, None) => f.is_exceptional(),
            _ => false,
        };
        if ok {
            Ok(GroupId { family, rank_param })
        } else {
            Err(Error::UnsupportedGroup(format!(
                "{family:?} with rank parameter {rank_param:?}"
            )))
        }
    }

    pub fn su(n: u32) -> Result<Self> {
        Self::new(GroupFamily::SU, Some(n))
    }

    pub fn sp(n: u32) -> Result<Self> {
        Self::new(GroupFamily::Sp, Some(n))
    }

    /// `spin(m)` is Spin(m); dispatches on the parity of `m` (m >= 5).
    pub fn spin(m: u32) -> Result<Self> {
        if m.is_multiple_of(2) {
            Self::new(GroupFamily::SpinEven, Some(m / 2))
        } else {
            Self::new(GroupFamily::SpinOdd, Some(m / 2))
        }
    }

    pub fn g2() -> Self {
        GroupId {
            family: GroupFamily::G2,
            rank_param: None,
        }
    }

    pub fn f4() -> Self {
        GroupId {
            family: GroupFamily::F4,
            rank_param: None,
        }
    }

    pub fn e6() -> Self {
        GroupId {
            family: GroupFamily::E6,
            rank_param: None,
        }
    }

    pub fn e7() -> Self {
        GroupId {
            family: GroupFamily::E7,
            rank_param: None,
        }
    }

    pub fn e8() -> Self {
        GroupId {
            family: GroupFamily::E8,
            rank_param: None,
        }
    }

    pub fn exceptional_groups() -> [GroupId; 5] {
        [Self::g2(), Self::f4(), Self::e6(), Self::e7(), Self::e8()]
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn rank_param(&self) -> Option<u32> {
        self.rank_param
    }

    pub fn is_exceptional(&self) -> bool {
        self.family.is_exceptional()
    }

    /// Rank of the group (dimension of a maximal torus).
    pub fn rank(&self) -> u32 {
        match (self.family, self.rank_param) {
            (GroupFamily::SU, Some(n)) => n - 1,
            (GroupFamily::Sp, Some(n)) => n,
            (GroupFamily::SpinEven, Some(n)) => n,
            (GroupFamily::SpinOdd, Some(n)) => n,
            (GroupFamily::G2, _) => 2,
            (GroupFamily::F4, _) => 4,
            (GroupFamily::E6, _) => 6,
            (GroupFamily::E7, _) => 7,
            (GroupFamily::E8, _) => 8,
            _ => unreachable!("validated at construction"),
        }
    }

    /// Dimension of the group, from the closed-form formulas.  Stored
    /// independently of the degree tables so the dimension identity is a
    /// genuine two-sided check.
    pub fn dim(&self) -> u32 {
        match (self.family, self.rank_param) {
            (GroupFamily::SU, Some(n)) => n * n - 1,
            (GroupFamily::Sp, Some(n)) => n * (2 * n + 1),
            (GroupFamily::SpinEven, Some(n)) => n * (2 * n - 1),
            (GroupFamily::SpinOdd, Some(n)) => n * (2 * n + 1),
            (GroupFamily::G2, _) => 14,
            (GroupFamily::F4, _) => 52,
            (GroupFamily::E6, _) => 78,
            (GroupFamily::E7, _) => 133,
            (GroupFamily::E8, _) => 248,
            _ => unreachable!("validated at construction"),
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.rank_param) {
            (GroupFamily::SU, Some(n)) => write!(f, "SU({n})"),
            (GroupFamily::Sp, Some(n)) => write!(f, "Sp({n})"),
            (GroupFamily::SpinEven, Some(n)) => write!(f, "Spin({})", 2 * n),
            (GroupFamily::SpinOdd, Some(n)) => write!(f, "Spin({})", 2 * n + 1),
            (GroupFamily::G2, _) => write!(f, "G2"),
            (GroupFamily::F4, _) => write!(f, "F4"),
            (GroupFamily::E6, _) => write!(f, "E6"),
            (GroupFamily::E7, _) => write!(f, "E7"),
            (GroupFamily::E8, _) => write!(f, "E8"),
            _ => unreachable!(),
        }
    }
}

impl FromStr for GroupId {
    type Err = Error;

    /// Accepts `SU(n)`, `Sp(n)`, `Spin(m)`, `G2`, `F4`, `E6`, `E7`, `E8`
    /// (case-insensitive in the family name).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        match lower.as_str() {
            "g2" => return Ok(Self::g2()),
            "f4" => return Ok(Self::f4()),
            "e6" => return Ok(Self::e6()),
            "e7" => return Ok(Self::e7()),
            "e8" => return Ok(Self::e8()),
            _ => {}
        }
        let open = t.find('(');
        let close = t.rfind(')');
        if let (Some(a), Some(b)) = (open, close) {
            if a < b {
                let fam = t[..a].trim().to_ascii_lowercase();
                let num: u32 = t[a + 1..b]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank parameter in `{s}`")))?;
                return match fam.as_str() {
                    "su" => Self::su(num),
                    "sp" => Self::sp(num),
                    "spin" => Self::spin(num),
                    _ => Err(Error::Parse(format!("unknown group family in `{s}`"))),
                };
            }
        }
        Err(Error::Parse(format!("cannot parse group `{s}`")))
    }
}

/// Coefficient system: the integers, the rationals, or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Rationals,
    PrimeField(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Coefficients {
    pub fn fp(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::PrimeField(p))
        } else {
            Err(Error::Parse(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Coefficients::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Coefficients::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "z" => Ok(Coefficients::Integers),
            "Q" | "q" => Ok(Coefficients::Rationals),
            _ => {
                if let Some(rest) = t.strip_prefix(['F', 'f']) {
                    let rest = rest.strip_prefix('_').unwrap_or(rest);
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| Error::Parse(format!("cannot parse coefficients `{s}`")))?;
                    Coefficients::fp(p)
                } else {
                    Err(Error::Parse(format!("cannot parse coefficients `{s}`")))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

/// The invariants of a group driving every construction in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicData {
    pub group: GroupId,
    /// Rank (number of primary generators over any coefficients).
    pub n: u32,
    /// Number of pure relations `e_i`.
    pub k: usize,
    /// Number of special classes `y_j`.
    pub m: usize,
    /// Degrees of the `e_i` (even, positive).
    pub deg_e: Vec<u32>,
    /// Degrees of the `y_j` (even, > 2).
    pub deg_y: Vec<u32>,
    /// Additive orders `p_j in {2,3,5}`.
    pub p_list: Vec<u64>,
    /// Nilpotency exponents `k_j >= 2`.
    pub k_list: Vec<u32>,
    /// Dimension of the group.
    pub dim_g: u32,
    /// E8 carries a linear coupling among its top power relations, which
    /// makes its surviving-generator sets deviate from plain complements.
    pub e8_coupled: bool,
}

/// Largest `e >= 0` with `2^e * den <= num` (so `floor(log2(num/den))` for
/// `num >= den`).  The bracketed exponents of the classical rows are read
/// base 2; the dimension identity check validates this at every rank.
fn floor_log2_ratio(num: u32, den: u32) -> u32 {
    debug_assert!(den > 0 && num >= den);
    let (num, den) = (num as u64, den as u64);
    let mut e = 0;
    while (den << (e + 1)) <= num {
        e += 1;
    }
    e
}

/// Basic data of a supported group.
pub fn basic_data(g: GroupId) -> BasicData {
    let (deg_e, deg_y, p_list, k_list): (Vec<u32>, Vec<u32>, Vec<u64>, Vec<u32>) =
        match (g.family(), g.rank_param()) {
            (GroupFamily::SU, Some(n)) => {
                let deg_e = (1..n).map(|i| 2 * i + 2).collect();
                (deg_e, vec![], vec![], vec![])
            }
            (GroupFamily::Sp, Some(n)) => {
                let deg_e = (1..=n).map(|i| 4 * i).collect();
                (deg_e, vec![], vec![], vec![])
            }
            (GroupFamily::SpinEven, Some(n)) => {
                // k = [(n+3)/2], m = [(n-2)/2]
                let m = ((n - 2) / 2) as usize;
                let mut deg_e: Vec<u32> = (1..=(n - 1) / 2).map(|t| 4 * t).collect();
                deg_e.push(2 * n);
                deg_e.push(1 << (floor_log2_ratio(n - 1, 1) + 2));
                let deg_y: Vec<u32> = (1..=m as u32).map(|j| 4 * j + 2).collect();
                let k_list = (1..=m as u32)
                    .map(|j| 1 << (floor_log2_ratio(n - 1, 2 * j + 1) + 1))
                    .collect();
                (deg_e, deg_y, vec![2; m], k_list)
            }
            (GroupFamily::SpinOdd, Some(n)) => {
                // k = [(n+2)/2], m = [(n-1)/2]
                let m = ((n - 1) / 2) as usize;
                let mut deg_e: Vec<u32> = (1..=n / 2).map(|t| 4 * t).collect();
                deg_e.push(1 << (floor_log2_ratio(n, 1) + 2));
                let deg_y: Vec<u32> = (1..=m as u32).map(|j| 4 * j + 2).collect();
                let k_list = (1..=m as u32)
                    .map(|j| 1 << (floor_log2_ratio(n, 2 * j + 1) + 1))
                    .collect();
                (deg_e, deg_y, vec![2; m], k_list)
            }
            (GroupFamily::G2, _) => (vec![4], vec![6], vec![2], vec![2]),
            (GroupFamily::F4, _) => (vec![4, 16], vec![6, 8], vec![2, 3], vec![2, 3]),
            (GroupFamily::E6, _) => (vec![4, 10, 16, 18], vec![6, 8], vec![2, 3], vec![2, 3]),
            (GroupFamily::E7, _) => (
                vec![4, 16, 28],
                vec![6, 8, 10, 18],
                vec![2, 3, 2, 2],
                vec![2, 3, 2, 2],
            ),
            (GroupFamily::E8, _) => (
                vec![4, 16, 28],
                vec![6, 8, 10, 12, 18, 20, 30],
                vec![2, 3, 2, 5, 2, 3, 2],
                vec![8, 3, 4, 5, 2, 3, 2],
            ),
            _ => unreachable!("validated at construction"),
        };
    BasicData {
        group: g,
        n: g.rank(),
        k: deg_e.len(),
        m: deg_y.len(),
        deg_e,
        deg_y,
        p_list,
        k_list,
        dim_g: g.dim(),
        e8_coupled: g.family() == GroupFamily::E8,
    }
}

/// Weyl coordinates of the special classes of the exceptional groups, kept
/// as documentation strings only.  The word length doubles to the
/// cohomological degree.
pub fn weyl_coordinates(g: GroupId) -> Vec<&'static str> {
    match g.family() {
        GroupFamily::G2 => vec!["sigma_[1,2,1]"],
        GroupFamily::F4 => vec!["sigma_[3,2,1]", "sigma_[4,3,2,1]"],
        GroupFamily::E6 => vec!["sigma_[5,4,2]", "sigma_[6,5,4,2]"],
        GroupFamily::E7 => vec![
            "sigma_[5,4,2]",
            "sigma_[6,5,4,2]",
            "sigma_[7,6,5,4,2]",
            "sigma_[1,5,4,3,7,6,5,4,2]",
        ],
        GroupFamily::E8 => vec![
            "sigma_[5,4,2]",
            "sigma_[6,5,4,2]",
            "sigma_[7,6,5,4,2]",
            "sigma_[1,3,6,5,4,2]",
            "sigma_[1,5,4,3,7,6,5,4,2]",
            "sigma_[1,6,5,4,3,7,6,5,4,2]",
            "sigma_[5,4,2,3,1,6,5,4,3,8,7,6,5,4,2]",
        ],
        _ => vec![],
    }
}

/// `G(p)`: the 1-based indices `j` with `p_j = p`, increasing.
pub fn torsion_index_set(g: GroupId, p: u64) -> Vec<usize> {
    let bd = basic_data(g);
    (1..=bd.m).filter(|&j| bd.p_list[j - 1] == p).collect()
}

/// The complementary index set controlling which `eta`-type generators
/// survive over `f`.  For `Z` and `Q` this is all of `{1..m}`; over `F_p`
/// it is the complement of `G(p)`; E8 follows its own table because its top
/// power relations are linearly coupled.
pub fn complement_set(g: GroupId, f: Coefficients) -> Vec<usize> {
    let bd = basic_data(g);
    if g.family() == GroupFamily::E8 {
        return match f {
            Coefficients::PrimeField(2) => vec![2],
            Coefficients::PrimeField(3) => vec![1, 3, 5],
            Coefficients::PrimeField(5) => vec![1, 2, 3, 5],
            _ => vec![1, 2, 3, 5, 6],
        };
    }
    match f {
        Coefficients::Integers | Coefficients::Rationals => (1..=bd.m).collect(),
        Coefficients::PrimeField(p) => (1..=bd.m).filter(|&j| bd.p_list[j - 1] != p).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    /// Odd generator attached to a pure relation `e_i`.
    Xi,
    /// Odd generator attached to a special class `y_t`, `t in G(p)`; degree
    /// `deg y_t - 1`.
    Theta,
    /// Odd generator attached to a power relation on `y_j`; degree
    /// `k_j * deg y_j - 1`.
    Eta,
    /// Even Chow generator realizing `y_j` itself.
    ChowX,
}

/// Identity of a generator: which construction it came from (`kind`,
/// 1-based `origin_index`) and its cohomological degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorLabel {
    pub kind: LabelKind,
    pub origin_index: usize,
    pub degree: u32,
}

impl GeneratorLabel {
    pub fn xi(bd: &BasicData, i: usize) -> Self {
        GeneratorLabel {
            kind: LabelKind::Xi,
            origin_index: i,
            degree: bd.deg_e[i - 1] - 1,
        }
    }

    pub fn eta(bd: &BasicData, j: usize) -> Self {
        GeneratorLabel {
            kind: LabelKind::Eta,
            origin_index: j,
            degree: bd.k_list[j - 1] * bd.deg_y[j - 1] - 1,
        }
    }

    pub fn theta(bd: &BasicData, t: usize) -> Self {
        GeneratorLabel {
            kind: LabelKind::Theta,
            origin_index: t,
            degree: bd.deg_y[t - 1] - 1,
        }
    }

    pub fn chow_x(bd: &BasicData, j: usize) -> Self {
        GeneratorLabel {
            kind: LabelKind::ChowX,
            origin_index: j,
            degree: bd.deg_y[j - 1],
        }
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            LabelKind::ChowX => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// Sort key fixing the generator order of every algebra built downstream:
    /// ascending degree, then Xi < Theta < Eta, then origin index.
    pub fn sort_key(&self) -> (u32, LabelKind, usize) {
        (self.degree, self.kind, self.origin_index)
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LabelKind::Xi => write!(f, "xi_{}", self.origin_index),
            LabelKind::Theta => write!(f, "theta_{}", self.origin_index),
            LabelKind::Eta => write!(f, "eta_{}", self.origin_index),
            LabelKind::ChowX => write!(f, "y_{}", self.origin_index),
        }
    }
}

/// The odd primary generators of `H*(G; f)`, sorted by `sort_key`.  Always
/// `n` of them.
pub fn primary_form_labels(g: GroupId, f: Coefficients) -> Vec<GeneratorLabel> {
    let bd = basic_data(g);
    let mut labels: Vec<GeneratorLabel> = (1..=bd.k).map(|i| GeneratorLabel::xi(&bd, i)).collect();
    match f {
        Coefficients::Integers | Coefficients::Rationals => {
            for j in complement_set(g, f) {
                labels.push(GeneratorLabel::eta(&bd, j));
            }
        }
        Coefficients::PrimeField(p) => {
            for t in torsion_index_set(g, p) {
                labels.push(GeneratorLabel::theta(&bd, t));
            }
            for s in complement_set(g, f) {
                labels.push(GeneratorLabel::eta(&bd, s));
            }
        }
    }
    labels.sort_by_key(|l| l.sort_key());
    labels
}

/// Outcome of the dimension identity check: the degree sum of the primary
/// generators (plus the torsion correction over `F_p`) must equal `dim G`.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub group: GroupId,
    pub coefficients: Coefficients,
    pub generator_count: usize,
    pub expected_count: u32,
    pub degree_sum: u64,
    pub torsion_correction: u64,
    pub dim_g: u32,
    pub pass: bool,
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} over {}: |O| = {} (expect {}), sum deg = {} + correction {} = {} (expect dim = {}): {}",
            self.group,
            self.coefficients,
            self.generator_count,
            self.expected_count,
            self.degree_sum,
            self.torsion_correction,
            self.degree_sum + self.torsion_correction,
            self.dim_g,
            if self.pass { "ok" } else { "MISMATCH" }
        )
    }
}

/// Verifies `|O| = n` and the degree-sum identity for the given group and
/// coefficients.  Returns the two-sided report; `pass` is false on any
/// mismatch.
pub fn check_dimension_identity(g: GroupId, f: Coefficients) -> IdentityReport {
    let bd = basic_data(g);
    let labels = primary_form_labels(g, f);
    let degree_sum: u64 = labels.iter().map(|l| l.degree as u64).sum();
    let torsion_correction: u64 = match f {
        Coefficients::PrimeField(p) => torsion_index_set(g, p)
            .iter()
            .map(|&t| (bd.k_list[t - 1] as u64 - 1) * bd.deg_y[t - 1] as u64)
            .sum(),
        _ => 0,
    };
    let pass = labels.len() == bd.n as usize && degree_sum + torsion_correction == bd.dim_g as u64;
    IdentityReport {
        group: g,
        coefficients: f,
        generator_count: labels.len(),
        expected_count: bd.n,
        degree_sum,
        torsion_correction,
        dim_g: bd.dim_g,
        pass,
    }
}

/// All groups covered by enumeration suites: the five exceptional groups and
/// the classical families up to the rank bound.
pub fn supported_groups(max_rank: u32) -> Vec<GroupId> {
    let mut out: Vec<GroupId> = GroupId::exceptional_groups().to_vec();
    for n in 2..=max_rank {
        out.push(GroupId::su(n).unwrap());
    }
    for n in 1..=max_rank {
        out.push(GroupId::sp(n).unwrap());
    }
    for m in 5..=(2 * max_rank + 1) {
        out.push(GroupId::spin(m).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Coefficients {
        Coefficients::fp(p).unwrap()
    }

    #[test]
    fn e8_row() {
        let bd = basic_data(GroupId::e8());
        assert_eq!((bd.k, bd.m), (3, 7));
        assert_eq!(bd.deg_e, vec![4, 16, 28]);
        assert_eq!(bd.deg_y, vec![6, 8, 10, 12, 18, 20, 30]);
        assert_eq!(bd.p_list, vec![2, 3, 2, 5, 2, 3, 2]);
        assert_eq!(bd.k_list, vec![8, 3, 4, 5, 2, 3, 2]);
        assert_eq!(bd.dim_g, 248);
        assert!(bd.e8_coupled);
    }

    #[test]
    fn su3_row() {
        let bd = basic_data(GroupId::su(3).unwrap());
        assert_eq!((bd.k, bd.m), (2, 0));
        assert_eq!(bd.deg_e, vec![4, 6]);
        assert!(bd.deg_y.is_empty());
    }

    #[test]
    fn spin7_row() {
        let bd = basic_data(GroupId::spin(7).unwrap());
        assert_eq!((bd.k, bd.m), (2, 1));
        assert_eq!(bd.deg_e, vec![4, 8]);
        assert_eq!(bd.deg_y, vec![6]);
        assert_eq!(bd.p_list, vec![2]);
        assert_eq!(bd.k_list, vec![2]);
        assert_eq!(bd.dim_g, 21);
    }

    #[test]
    fn exceptional_rows() {
        let g2 = basic_data(GroupId::g2());
        assert_eq!((g2.k, g2.m), (1, 1));
        assert_eq!((g2.deg_e.clone(), g2.deg_y.clone()), (vec![4], vec![6]));
        let f4 = basic_data(GroupId::f4());
        assert_eq!((f4.k, f4.m), (2, 2));
        assert_eq!(f4.deg_e, vec![4, 16]);
        assert_eq!(f4.deg_y, vec![6, 8]);
        assert_eq!(f4.p_list, vec![2, 3]);
        assert_eq!(f4.k_list, vec![2, 3]);
        let e6 = basic_data(GroupId::e6());
        assert_eq!((e6.k, e6.m), (4, 2));
        assert_eq!(e6.deg_e, vec![4, 10, 16, 18]);
        let e7 = basic_data(GroupId::e7());
        assert_eq!((e7.k, e7.m), (3, 4));
        assert_eq!(e7.deg_y, vec![6, 8, 10, 18]);
        assert_eq!(e7.p_list, vec![2, 3, 2, 2]);
        assert_eq!(e7.k_list, vec![2, 3, 2, 2]);
    }

    #[test]
    fn torsion_index_sets() {
        assert_eq!(torsion_index_set(GroupId::e8(), 2), vec![1, 3, 5, 7]);
        assert_eq!(torsion_index_set(GroupId::e8(), 3), vec![2, 6]);
        assert_eq!(torsion_index_set(GroupId::e8(), 5), vec![4]);
        assert_eq!(torsion_index_set(GroupId::e8(), 7), Vec::<usize>::new());
        assert_eq!(torsion_index_set(GroupId::f4(), 3), vec![2]);
    }

    #[test]
    fn complement_sets() {
        assert_eq!(complement_set(GroupId::e8(), fp(2)), vec![2]);
        assert_eq!(complement_set(GroupId::e8(), fp(3)), vec![1, 3, 5]);
        assert_eq!(complement_set(GroupId::e8(), fp(5)), vec![1, 2, 3, 5]);
        assert_eq!(
            complement_set(GroupId::e8(), Coefficients::Integers),
            vec![1, 2, 3, 5, 6]
        );
        assert_eq!(complement_set(GroupId::e8(), fp(7)), vec![1, 2, 3, 5, 6]);
        assert_eq!(
            complement_set(GroupId::g2(), Coefficients::Integers),
            vec![1]
        );
        assert_eq!(complement_set(GroupId::f4(), fp(3)), vec![1]);
        assert_eq!(complement_set(GroupId::e7(), fp(2)), vec![2]);
    }

    #[test]
    fn primary_labels_e8_rationals() {
        let labels = primary_form_labels(GroupId::e8(), Coefficients::Rationals);
        let degs: Vec<u32> = labels.iter().map(|l| l.degree).collect();
        assert_eq!(degs, vec![3, 15, 23, 27, 35, 39, 47, 59]);
    }

    #[test]
    fn primary_labels_e8_f2() {
        let labels = primary_form_labels(GroupId::e8(), fp(2));
        let degs: Vec<u32> = labels.iter().map(|l| l.degree).collect();
        assert_eq!(degs, vec![3, 5, 9, 15, 17, 23, 27, 29]);
        let kinds: Vec<(LabelKind, usize)> =
            labels.iter().map(|l| (l.kind, l.origin_index)).collect();
        assert_eq!(
            kinds,
            vec![
                (LabelKind::Xi, 1),
                (LabelKind::Theta, 1),
                (LabelKind::Theta, 3),
                (LabelKind::Xi, 2),
                (LabelKind::Theta, 5),
                (LabelKind::Eta, 2),
                (LabelKind::Xi, 3),
                (LabelKind::Theta, 7),
            ]
        );
    }

    #[test]
    fn primary_labels_g2_f3() {
        let labels = primary_form_labels(GroupId::g2(), fp(3));
        assert_eq!(labels.len(), 2);
        assert_eq!((labels[0].kind, labels[0].degree), (LabelKind::Xi, 3));
        assert_eq!((labels[1].kind, labels[1].degree), (LabelKind::Eta, 11));
    }

    #[test]
    fn identity_examples() {
        let r = check_dimension_identity(GroupId::e7(), Coefficients::Integers);
        assert!(r.pass, "{r}");
        assert_eq!(r.degree_sum, 133);
        let r = check_dimension_identity(GroupId::e8(), fp(5));
        assert!(r.pass, "{r}");
        assert_eq!(r.degree_sum, 200);
        assert_eq!(r.torsion_correction, 48);
        let r = check_dimension_identity(GroupId::su(2).unwrap(), Coefficients::Rationals);
        assert!(r.pass, "{r}");
        assert_eq!(r.degree_sum, 3);
    }

    #[test]
    fn identity_sweep_all_groups_all_coefficients() {
        let coeffs = [
            Coefficients::Integers,
            Coefficients::Rationals,
            fp(2),
            fp(3),
            fp(5),
            fp(7),
        ];
        for g in supported_groups(DEFAULT_MAX_RANK) {
            for f in coeffs {
                let r = check_dimension_identity(g, f);
                assert!(r.pass, "{r}");
                assert_eq!(
                    primary_form_labels(g, f).len(),
                    g.rank() as usize,
                    "label count for {g} over {f}"
                );
            }
        }
    }

    #[test]
    fn classical_rows_are_even_and_spin_orders_are_two() {
        for g in supported_groups(DEFAULT_MAX_RANK) {
            let bd = basic_data(g);
            assert!(bd.deg_e.iter().all(|&d| d > 0 && d % 2 == 0), "{g}");
            assert!(bd.deg_y.iter().all(|&d| d > 2 && d % 2 == 0), "{g}");
            assert!(bd.p_list.iter().all(|&p| p == 2 || p == 3 || p == 5), "{g}");
            assert!(bd.k_list.iter().all(|&k| k >= 2), "{g}");
            if g.family().is_spin() {
                assert!(bd.p_list.iter().all(|&p| p == 2), "{g}");
            }
        }
    }

    #[test]
    fn partition_of_indices_away_from_e8() {
        for g in supported_groups(DEFAULT_MAX_RANK) {
            if g.family() == GroupFamily::E8 {
                continue;
            }
            for p in [2u64, 3, 5, 7] {
                let bd = basic_data(g);
                let mut union = torsion_index_set(g, p);
                union.extend(complement_set(g, fp(p)));
                union.sort_unstable();
                let all: Vec<usize> = (1..=bd.m).collect();
                assert_eq!(union, all, "{g} at p = {p}");
            }
        }
    }

    #[test]
    fn e8_union_is_proper_but_disjoint() {
        // The coupled top relations of E8 make the union of the two index
        // sets a proper subset of {1..7} at p = 2 and p = 5.
        for (p, expected_union) in [
            (2u64, vec![1, 2, 3, 5, 7]),
            (3, vec![1, 2, 3, 5, 6]),
            (5, vec![1, 2, 3, 4, 5]),
        ] {
            let gp = torsion_index_set(GroupId::e8(), p);
            let comp = complement_set(GroupId::e8(), fp(p));
            assert!(gp.iter().all(|j| !comp.contains(j)), "p = {p}");
            let mut union = gp;
            union.extend(comp);
            union.sort_unstable();
            assert_eq!(union, expected_union, "p = {p}");
        }
    }

    #[test]
    fn weyl_coordinate_lengths_match_degrees() {
        for g in GroupId::exceptional_groups() {
            let bd = basic_data(g);
            let coords = weyl_coordinates(g);
            assert_eq!(coords.len(), bd.m);
            for (j, c) in coords.iter().enumerate() {
                let letters = c.matches(',').count() + 1;
                assert_eq!(2 * letters as u32, bd.deg_y[j], "{g} y_{}", j + 1);
            }
        }
    }

    #[test]
    fn group_parsing() {
        assert_eq!("E8".parse::<GroupId>().unwrap(), GroupId::e8());
        assert_eq!("SU(5)".parse::<GroupId>().unwrap(), GroupId::su(5).unwrap());
        assert_eq!(
            "Spin(11)".parse::<GroupId>().unwrap(),
            GroupId::spin(11).unwrap()
        );
        assert_eq!(
            "Spin(10)".parse::<GroupId>().unwrap(),
            GroupId::spin(10).unwrap()
        );
        assert!("SU(1)".parse::<GroupId>().is_err());
        assert!("Spin(4)".parse::<GroupId>().is_err());
        assert!("E9".parse::<GroupId>().is_err());
        assert_eq!("F2".parse::<Coefficients>().unwrap(), fp(2));
        assert_eq!(
            "Q".parse::<Coefficients>().unwrap(),
            Coefficients::Rationals
        );
        assert!("F4".parse::<Coefficients>().is_err());
        assert!("F6".parse::<Coefficients>().is_err());
    }
}
