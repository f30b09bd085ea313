//! Parsing of rings, modules and matrices given on the command line.
//!
//! Rings: `Z<n>`, `Z<a>xZ<b>`, `F2[e]`, `T2F2`, `M2F2`, `T(a,b,c)`, or a path
//! to a ring JSON file. Modules: `0`, `R`, `R^k`, `R^k/<v;v;…>` with each `v`
//! a comma-separated coordinate vector of `R^k`, or a path to a module JSON file.

use std::path::Path;
use std::sync::Arc;

use modlab_core::linalg::{Elem, IntMatrix};
use modlab_core::module::{ModulePres, Side};
use modlab_core::ring::{FiniteRing, Ring};
use modlab_verifier::serial::{parse_module, parse_ring, ModuleData, RingData};
use num_bigint::BigInt;

use crate::CliError;

fn bad(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::input(format!("{}: {}", flag, msg))
}

fn read_json<T: serde::de::DeserializeOwned>(flag: &str, path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(flag, format!("{}: {}", path, e)))?;
    serde_json::from_str(&text).map_err(|e| bad(flag, format!("{}:{}:{}: {}", path, e.line(), e.column(), e)))
}

fn number(flag: &str, s: &str, at: usize) -> Result<u64, CliError> {
    s.parse::<u64>()
        .map_err(|_| bad(flag, format!("column {}: expected a positive integer, found {:?}", at + 1, s)))
}

pub fn ring(spec: &str) -> Result<Ring, CliError> {
    let flag = "--ring";
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let data: RingData = read_json(flag, spec)?;
        return parse_ring(&data).map_err(|e| bad(flag, e));
    }
    let f2 = || FiniteRing::cyclic(2).expect("ℤ/2");
    let r = match spec {
        "F2[e]" => FiniteRing::dual_numbers(&f2()),
        "T2F2" => FiniteRing::triangular_ring(&f2(), 2),
        "M2F2" => FiniteRing::matrix_ring(&f2(), 2),
        _ => {
            if let Some(inner) = spec.strip_prefix("T(").and_then(|s| s.strip_suffix(')')) {
                let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(bad(flag, "T(a,b,c) needs three entries"));
                }
                let v: Vec<u64> = parts.iter().enumerate().map(|(i, p)| number(flag, p, 2 + 2 * i)).collect::<Result<_, _>>()?;
                FiniteRing::generalized_triangular(v[0], v[1], v[2])
            } else {
                let mut factors = Vec::new();
                let mut col = 0;
                for part in spec.split('x') {
                    let n = part
                        .strip_prefix('Z')
                        .ok_or_else(|| bad(flag, format!("column {}: expected Z<n>, T2F2, M2F2, F2[e], T(a,b,c) or a JSON file", col + 1)))?;
                    factors.push(FiniteRing::cyclic(number(flag, n, col + 1)?).map_err(|e| bad(flag, e))?);
                    col += part.len() + 1;
                }
                let mut it = factors.into_iter();
                let first = it.next().ok_or_else(|| bad(flag, "empty ring"))?;
                it.try_fold(first, |acc, f| FiniteRing::product(&acc, &f))
            }
        }
    };
    Ok(Arc::new(r.map_err(|e| bad(flag, e))?))
}

fn ints(flag: &str, s: &str, offset: usize) -> Result<Elem, CliError> {
    let mut col = offset;
    s.split(',')
        .map(|t| {
            let here = col;
            col += t.len() + 1;
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| bad(flag, format!("column {}: expected an integer, found {:?}", here + 1, t)))
        })
        .collect()
}

pub fn module(flag: &str, spec: &str, ring: &Ring, side: Side) -> Result<ModulePres, CliError> {
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let data: ModuleData = read_json(flag, spec)?;
        let m = parse_module(ring, &data).map_err(|e| bad(flag, e))?;
        return m.as_side(side).map_err(|e| bad(flag, e));
    }
    if spec == "0" {
        return Ok(ModulePres::zero(ring.clone(), side));
    }
    let rest = spec
        .strip_prefix('R')
        .ok_or_else(|| bad(flag, "column 1: expected 0, R, R^k, R^k/<…> or a JSON file"))?;
    let (rank_part, quot) = match rest.find('/') {
        Some(i) => (&rest[..i], Some((&rest[i + 1..], i + 2))),
        None => (rest, None),
    };
    let k = match rank_part.strip_prefix('^') {
        Some(n) => number(flag, n, 2)? as usize,
        None if rank_part.is_empty() => 1,
        None => return Err(bad(flag, format!("column 2: expected ^k or /<…>, found {:?}", rank_part))),
    };
    let free = ModulePres::free(ring.clone(), k, side);
    let Some((q, at)) = quot else {
        return Ok(free);
    };
    let inner = q
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| bad(flag, format!("column {}: relations must be written <v;v;…>", at + 1)))?;
    let mut col = at + 1;
    let mut gens = Vec::new();
    for part in inner.split(';') {
        let v = ints(flag, part, col)?;
        if v.len() != free.rank() {
            return Err(bad(
                flag,
                format!("column {}: a vector of R^{} needs {} coordinates, found {}", col + 1, k, free.rank(), v.len()),
            ));
        }
        gens.push(v);
        col += part.len() + 1;
    }
    Ok(free.quotient(&gens).0)
}

/// A JSON matrix of integers (numbers or decimal strings).
pub fn matrix(flag: &str, text: &str) -> Result<IntMatrix, CliError> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| bad(flag, format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    let rows = v.as_array().ok_or_else(|| bad(flag, "expected a list of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad(flag, format!("row {}: expected a list", i + 1)))?;
        let entries: Vec<BigInt> = row
            .iter()
            .enumerate()
            .map(|(j, x)| {
                let s = match x {
                    serde_json::Value::Number(n) => n.to_string(),
                    serde_json::Value::String(s) => s.clone(),
                    _ => String::new(),
                };
                s.parse::<BigInt>()
                    .map_err(|_| bad(flag, format!("row {}, column {}: expected an integer, found {}", i + 1, j + 1, x)))
            })
            .collect::<Result<_, _>>()?;
        out.push(entries);
    }
    if out.is_empty() {
        return Err(bad(flag, "empty matrix"));
    }
    IntMatrix::from_rows(&out).map_err(|e| bad(flag, e))
}
