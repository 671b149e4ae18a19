//! JSON views of the built rings: generators with orders and squares,
//! relations, Betti numbers, torsion dimensions, and (for `export`) the
//! full monomial basis plus the generator multiplication table.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use liecohom::basic_data::{Coefficients, Parity};
use liecohom::graded_algebra::{monomial_string, Algebra, Element, PowerRule};
use liecohom::integral::IntegralCohomology;
use liecohom::rings::CohomologyRing;
use liecohom::torsion::torsion_ring;
use liecohom::{Error, Result};

#[cfg(test)]
use {
    crate::expr::{parse, Expr},
    liecohom::graded_algebra::{GeneratorSpec, SquareRule},
    std::collections::BTreeMap,
};

fn dims_map(dims: &[usize]) -> Value {
    let mut m = Map::new();
    for (d, &c) in dims.iter().enumerate() {
        if c > 0 {
            m.insert(d.to_string(), json!(c));
        }
    }
    Value::Object(m)
}

fn generator_entry(alg: &Arc<Algebra>, i: usize) -> Value {
    let g = &alg.gens()[i];
    let square = match g.power {
        PowerRule::Truncate(_) => Value::Null,
        PowerRule::Square(_) => {
            if !alg.square_known(i) {
                json!("unknown")
            } else {
                let sq = alg.square_of(i).expect("known");
                if sq.is_zero() {
                    json!("0")
                } else {
                    json!(sq.to_string())
                }
            }
        }
    };
    let mut entry = Map::new();
    entry.insert("name".into(), json!(g.name));
    entry.insert("degree".into(), json!(g.degree));
    entry.insert(
        "parity".into(),
        json!(match g.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }),
    );
    entry.insert("order".into(), json!(g.additive_order));
    entry.insert("square".into(), square);
    Value::Object(entry)
}

fn relations_list(alg: &Arc<Algebra>) -> Vec<String> {
    let mut rels = Vec::new();
    for (i, g) in alg.gens().iter().enumerate() {
        if let PowerRule::Truncate(t) = g.power {
            if g.additive_order > 0 {
                rels.push(format!("{}*{}", g.additive_order, g.name));
            }
            rels.push(format!("{}^{}", g.name, t));
        } else if alg.square_known(i) {
            let sq = alg.square_of(i).expect("known");
            if sq.is_zero() {
                rels.push(format!("{}^2", g.name));
            } else {
                rels.push(format!("{}^2 - ({sq})", g.name));
            }
        }
    }
    rels
}

/// Torsion dimension tables keyed by prime: the image of the differential
/// per prime for a field model (its own characteristic only), or every
/// torsion component for the integral ring.
fn torsion_tables(ring: &CohomologyRing) -> Result<Value> {
    let mut out = Map::new();
    if let Coefficients::PrimeField(p) = ring.coeff {
        if !liecohom::basic_data::torsion_index_set(ring.group, p).is_empty() {
            let t = torsion_ring(ring.group, p)?;
            out.insert(p.to_string(), dims_map(&t.dims));
        }
    }
    Ok(Value::Object(out))
}

/// The presentation-level JSON for one field ring.
pub fn ring_json(ring: &CohomologyRing, with_basis: bool) -> Result<Value> {
    let alg = &ring.algebra;
    let generators: Vec<Value> = (0..alg.gen_count())
        .map(|i| generator_entry(alg, i))
        .collect();
    let mut root = Map::new();
    root.insert("group".into(), json!(ring.group.to_string()));
    root.insert("coefficients".into(), json!(ring.coeff.to_string()));
    root.insert("generators".into(), Value::Array(generators));
    root.insert(
        "relations".into(),
        Value::Array(relations_list(alg).into_iter().map(|r| json!(r)).collect()),
    );
    root.insert("betti".into(), dims_map(&ring.graded_dims()));
    root.insert("torsion".into(), torsion_tables(ring)?);
    if with_basis {
        let mut basis = Map::new();
        for d in 0..=alg.top_degree() {
            if alg.dim(d) > 0 {
                let level: Vec<Value> = alg
                    .basis(d)
                    .iter()
                    .map(|m| json!(monomial_string(alg, m)))
                    .collect();
                basis.insert(d.to_string(), Value::Array(level));
            }
        }
        root.insert("basis".into(), Value::Object(basis));
        // Generator-pair multiplication table.
        let mut products = Map::new();
        for i in 0..alg.gen_count() {
            for j in i..alg.gen_count() {
                let a = Element::generator(alg, i);
                let b = Element::generator(alg, j);
                let key = format!("{}*{}", alg.gen_name(i), alg.gen_name(j));
                match a.mul(&b) {
                    Ok(v) => {
                        products.insert(key, json!(v.to_string()));
                    }
                    Err(Error::UnknownSquare { .. }) => {
                        products.insert(key, json!("unknown"));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        root.insert("products".into(), Value::Object(products));
    }
    Ok(Value::Object(root))
}

/// The presentation-level JSON for the integral ring.
pub fn integral_json(ic: &IntegralCohomology, with_basis: bool) -> Result<Value> {
    let falg = &ic.free.algebra;
    let mut generators: Vec<Value> = Vec::new();
    for (i, g) in falg.gens().iter().enumerate() {
        let square = match ic.mul(
            &ic.from_free(Element::generator(falg, i)),
            &ic.from_free(Element::generator(falg, i)),
        ) {
            Ok(v) if v.is_zero() => json!("0"),
            Ok(v) => json!(ic.display(&v)?),
            Err(Error::UnknownSquare { .. }) => json!("unknown"),
            Err(e) => return Err(e),
        };
        generators.push(json!({
            "name": g.name,
            "degree": g.degree,
            "parity": "odd",
            "order": 0,
            "square": square,
        }));
    }
    let bd = liecohom::basic_data::basic_data(ic.group);
    for j in 1..=bd.m {
        generators.push(json!({
            "name": format!("x{}", bd.deg_y[j - 1]),
            "degree": bd.deg_y[j - 1],
            "parity": "even",
            "order": bd.p_list[j - 1],
            "square": Value::Null,
        }));
    }
    let mut torsion = Map::new();
    for (p, t) in &ic.torsion {
        torsion.insert(p.to_string(), dims_map(&t.dims));
    }
    let mut root = Map::new();
    root.insert("group".into(), json!(ic.group.to_string()));
    root.insert("coefficients".into(), json!("Z"));
    root.insert("generators".into(), Value::Array(generators));
    let mut rels: Vec<String> = Vec::new();
    for j in 1..=bd.m {
        rels.push(format!("{}*x{}", bd.p_list[j - 1], bd.deg_y[j - 1]));
        rels.push(format!("x{}^{}", bd.deg_y[j - 1], bd.k_list[j - 1]));
    }
    root.insert(
        "relations".into(),
        Value::Array(rels.into_iter().map(|r| json!(r)).collect()),
    );
    root.insert("betti".into(), dims_map(&ic.free_dims()));
    root.insert("torsion".into(), Value::Object(torsion));
    if with_basis {
        let mut basis = Map::new();
        for d in 0..=falg.top_degree() {
            if falg.dim(d) > 0 {
                let level: Vec<Value> = falg
                    .basis(d)
                    .iter()
                    .map(|m| json!(monomial_string(falg, m)))
                    .collect();
                basis.insert(d.to_string(), Value::Array(level));
            }
        }
        root.insert("basis".into(), Value::Object(basis));
    }
    Ok(Value::Object(root))
}

/// Rebuilds a plain algebra from an exported field-ring JSON document;
/// used to verify that the export round-trips.
#[cfg(test)]
pub fn rebuild_algebra(doc: &Value) -> Result<Arc<Algebra>> {
    let coeff: Coefficients = doc["coefficients"]
        .as_str()
        .ok_or_else(|| Error::Parse("missing coefficients".into()))?
        .parse()?;
    let gens_json = doc["generators"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing generators".into()))?;
    // Truncations recovered from the relation strings `name^k`.
    let mut truncations: BTreeMap<String, u32> = BTreeMap::new();
    for rel in doc["relations"].as_array().into_iter().flatten() {
        if let Some(s) = rel.as_str() {
            if let Some((name, exp)) = s.split_once('^') {
                if !name.contains('*') && !s.contains('-') {
                    if let Ok(e) = exp.parse::<u32>() {
                        truncations.insert(name.to_string(), e);
                    }
                }
            }
        }
    }
    let name_to_idx: BTreeMap<String, usize> = gens_json
        .iter()
        .enumerate()
        .map(|(i, g)| (g["name"].as_str().unwrap_or_default().to_string(), i))
        .collect();
    let mut specs = Vec::new();
    for g in gens_json {
        let name = g["name"]
            .as_str()
            .ok_or_else(|| Error::Parse("generator without name".into()))?;
        let degree = g["degree"]
            .as_u64()
            .ok_or_else(|| Error::Parse("generator without degree".into()))?
            as u32;
        let order = g["order"].as_u64().unwrap_or(0);
        let parity = g["parity"].as_str().unwrap_or("even");
        if parity == "even" {
            let t = truncations
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse(format!("no truncation relation for {name}")))?;
            specs.push(GeneratorSpec::even(name, degree, order, t));
        } else {
            let square = match g["square"].as_str() {
                None | Some("0") => SquareRule::Zero,
                Some("unknown") => SquareRule::Unknown,
                Some(s) => SquareRule::Value(square_poly(s, &name_to_idx)?),
            };
            specs.push(GeneratorSpec::odd(name, degree, square));
        }
    }
    Algebra::build(specs, coeff)
}

/// Parses a square expression string into presentation-polynomial form.
#[cfg(test)]
fn square_poly(s: &str, names: &BTreeMap<String, usize>) -> Result<Vec<(i64, Vec<(usize, u32)>)>> {
    fn walk(
        e: &Expr,
        names: &BTreeMap<String, usize>,
        out: &mut Vec<(i64, Vec<(usize, u32)>)>,
        sign: i64,
    ) -> Result<()> {
        match e {
            Expr::Add(a, b) => {
                walk(a, names, out, sign)?;
                walk(b, names, out, sign)?;
            }
            Expr::Sub(a, b) => {
                walk(a, names, out, sign)?;
                walk(b, names, out, -sign)?;
            }
            Expr::Neg(a) => walk(a, names, out, -sign)?,
            other => {
                let mut coeff = sign;
                let mut factors: Vec<(usize, u32)> = Vec::new();
                fn product(
                    e: &Expr,
                    names: &BTreeMap<String, usize>,
                    coeff: &mut i64,
                    factors: &mut Vec<(usize, u32)>,
                ) -> Result<()> {
                    match e {
                        Expr::Num(v) => *coeff *= v,
                        Expr::Gen(name) => {
                            let i = *names
                                .get(name)
                                .ok_or_else(|| Error::Parse(format!("unknown name {name}")))?;
                            factors.push((i, 1));
                        }
                        Expr::Pow(b, e2) => {
                            if let Expr::Gen(name) = &**b {
                                let i = *names
                                    .get(name)
                                    .ok_or_else(|| Error::Parse(format!("unknown name {name}")))?;
                                factors.push((i, *e2));
                            } else {
                                return Err(Error::Parse("unsupported power base".into()));
                            }
                        }
                        Expr::Mul(a, b) => {
                            product(a, names, coeff, factors)?;
                            product(b, names, coeff, factors)?;
                        }
                        other => {
                            return Err(Error::Parse(format!("unsupported square term {other:?}")))
                        }
                    }
                    Ok(())
                }
                product(other, names, &mut coeff, &mut factors)?;
                out.push((coeff, factors));
            }
        }
        Ok(())
    }
    let ast = parse(s)?;
    let mut out = Vec::new();
    walk(&ast, names, &mut out, 1)?;
    Ok(out)
}
