//! Independent oracles: the graded dimensions and torsion tables are
//! recomputed here from the basic data alone, through code that shares
//! nothing with the library's algebra kernel (its own polynomial
//! convolution and its own elimination over F_p), then compared against
//! the built rings degree by degree.

use liecohom::basic_data::{
    basic_data, primary_form_labels, torsion_index_set, Coefficients, GroupId,
};
use liecohom::rings::cohomology;
use liecohom::torsion::torsion_ring;

fn fp(p: u64) -> Coefficients {
    Coefficients::fp(p).unwrap()
}

/// Polynomial product oracle: multiplies out the degree factors of a
/// tensor-shape ring by plain coefficient convolution.
fn product_dims(even: &[(u32, u32)], odd: &[u32], cap: usize) -> Vec<u64> {
    let mut acc = vec![0u64; cap + 1];
    acc[0] = 1;
    for &(d, height) in even {
        let mut next = vec![0u64; cap + 1];
        for e in 0..height {
            let shift = (e * d) as usize;
            for (j, &c) in acc.iter().enumerate() {
                if c > 0 && j + shift <= cap {
                    next[j + shift] += c;
                }
            }
        }
        acc = next;
    }
    for &d in odd {
        for j in (0..=cap.saturating_sub(d as usize)).rev() {
            if acc[j] > 0 {
                acc[j + d as usize] += acc[j];
            }
        }
    }
    acc
}

/// The tensor factors of `H*(G; f)` read off the basic data: surviving
/// even classes with their heights, and the primary odd degrees.
fn ring_factors(g: GroupId, f: Coefficients) -> (Vec<(u32, u32)>, Vec<u32>) {
    let bd = basic_data(g);
    let even: Vec<(u32, u32)> = match f {
        Coefficients::PrimeField(p) => torsion_index_set(g, p)
            .into_iter()
            .map(|t| (bd.deg_y[t - 1], bd.k_list[t - 1]))
            .collect(),
        _ => Vec::new(),
    };
    let odd: Vec<u32> = primary_form_labels(g, f).iter().map(|l| l.degree).collect();
    (even, odd)
}

#[test]
fn betti_numbers_match_the_product_oracle() {
    let mut groups: Vec<GroupId> = GroupId::exceptional_groups().to_vec();
    groups.push(GroupId::su(6).unwrap());
    groups.push(GroupId::sp(4).unwrap());
    groups.push(GroupId::spin(11).unwrap());
    for g in groups {
        for f in [Coefficients::Rationals, fp(2), fp(3), fp(5), fp(7)] {
            let (even, odd) = ring_factors(g, f);
            let expect = product_dims(&even, &odd, g.dim() as usize);
            let ring = cohomology(g, f).unwrap();
            let got: Vec<u64> = {
                let mut v: Vec<u64> = ring.graded_dims().iter().map(|&c| c as u64).collect();
                v.resize(g.dim() as usize + 1, 0);
                v
            };
            assert_eq!(got, expect, "{g} over {f}");
        }
    }
}

/// Rank of integer row vectors modulo p, by plain dense elimination.  Not
/// the library's implementation.
fn rank_mod_p(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_pow(rows[rank][col], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] % p != 0 {
                let f = rows[i][col] % p;
                for c in 0..cols {
                    rows[i][c] = (rows[i][c] + (p - f) * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Recomputes the per-degree torsion dimensions from scratch: enumerate
/// the small complex spanned by the surviving even classes and their
/// attached odd generators, differentiate by the Leibniz rule, take ranks
/// with the local elimination, and convolve with the exterior factor.
fn torsion_dims_oracle(g: GroupId, p: u64) -> Vec<u64> {
    let bd = basic_data(g);
    let gp = torsion_index_set(g, p);
    let dim_g = g.dim() as usize;
    let evens: Vec<(u32, u32)> = gp
        .iter()
        .map(|&t| (bd.deg_y[t - 1], bd.k_list[t - 1]))
        .collect();
    let thetas: Vec<u32> = gp.iter().map(|&t| bd.deg_y[t - 1] - 1).collect();
    let n = gp.len();
    // Enumerate (exponents, bits) with a linear index.
    let mut monos: Vec<(Vec<u32>, Vec<u8>, usize)> = Vec::new();
    let mut stack: Vec<(Vec<u32>, Vec<u8>)> = vec![(Vec::new(), Vec::new())];
    for j in 0..n {
        let mut next = Vec::new();
        for (exps, bits) in stack {
            for e in 0..evens[j].1 {
                for b in 0..=1u8 {
                    let mut e2 = exps.clone();
                    e2.push(e);
                    let mut b2 = bits.clone();
                    b2.push(b);
                    next.push((e2, b2));
                }
            }
        }
        stack = next;
    }
    for (exps, bits) in stack {
        let deg: usize = exps
            .iter()
            .zip(&evens)
            .map(|(&e, &(d, _))| (e * d) as usize)
            .sum::<usize>()
            + bits
                .iter()
                .zip(&thetas)
                .map(|(&b, &t)| b as usize * t as usize)
                .sum::<usize>();
        monos.push((exps, bits, deg));
    }
    let index: std::collections::HashMap<(Vec<u32>, Vec<u8>), usize> = monos
        .iter()
        .enumerate()
        .map(|(i, (e, b, _))| ((e.clone(), b.clone()), i))
        .collect();
    // Differential rows grouped by source degree.
    let mut rows_by_degree: std::collections::BTreeMap<usize, Vec<Vec<(usize, u64)>>> =
        std::collections::BTreeMap::new();
    for (exps, bits, deg) in &monos {
        let mut row: Vec<(usize, u64)> = Vec::new();
        let mut before = 0u32;
        for j in 0..n {
            if bits[j] == 1 {
                if exps[j] + 1 < evens[j].1 {
                    let mut e2 = exps.clone();
                    e2[j] += 1;
                    let mut b2 = bits.clone();
                    b2[j] = 0;
                    let sign = if before % 2 == 0 { p - 1 } else { 1 };
                    row.push((index[&(e2, b2)], sign));
                }
                before += 1;
            }
        }
        if !row.is_empty() {
            rows_by_degree.entry(*deg).or_default().push(row);
        }
    }
    // Image dimensions per target degree.
    let mut image = vec![0u64; dim_g + 1];
    for (deg, sparse_rows) in rows_by_degree {
        let mut targets: Vec<usize> = sparse_rows.iter().flatten().map(|&(t, _)| t).collect();
        targets.sort_unstable();
        targets.dedup();
        let pos: std::collections::HashMap<usize, usize> =
            targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let rows: Vec<Vec<u64>> = sparse_rows
            .iter()
            .map(|r| {
                let mut v = vec![0u64; targets.len()];
                for &(t, c) in r {
                    v[pos[&t]] = (v[pos[&t]] + c) % p;
                }
                v
            })
            .collect();
        image[deg + 1] += rank_mod_p(p, rows) as u64;
    }
    // Exterior factor on the surviving non-theta odd degrees.
    let theta_set: std::collections::HashSet<(liecohom::basic_data::LabelKind, usize)> = gp
        .iter()
        .map(|&t| (liecohom::basic_data::LabelKind::Theta, t))
        .collect();
    let ext_degrees: Vec<u32> = primary_form_labels(g, Coefficients::PrimeField(p))
        .iter()
        .filter(|l| !theta_set.contains(&(l.kind, l.origin_index)))
        .map(|l| l.degree)
        .collect();
    let ext = product_dims(&[], &ext_degrees, dim_g);
    let mut out = vec![0u64; dim_g + 1];
    for a in 0..=dim_g {
        if image[a] > 0 {
            for b in 0..=(dim_g - a) {
                if ext[b] > 0 {
                    out[a + b] += image[a] * ext[b];
                }
            }
        }
    }
    out
}

#[test]
fn torsion_tables_match_the_standalone_oracle() {
    for g in GroupId::exceptional_groups() {
        for p in [2u64, 3, 5] {
            if torsion_index_set(g, p).is_empty() {
                continue;
            }
            let t = torsion_ring(g, p).unwrap();
            let mut got: Vec<u64> = t.dims.iter().map(|&c| c as u64).collect();
            got.resize(g.dim() as usize + 1, 0);
            let expect = torsion_dims_oracle(g, p);
            assert_eq!(got, expect, "{g} at p = {p}");
        }
    }
    // A classical sample with more than one torsion index.
    let g = GroupId::spin(13).unwrap();
    let t = torsion_ring(g, 2).unwrap();
    let mut got: Vec<u64> = t.dims.iter().map(|&c| c as u64).collect();
    got.resize(g.dim() as usize + 1, 0);
    assert_eq!(got, torsion_dims_oracle(g, 2), "{g}");
}
