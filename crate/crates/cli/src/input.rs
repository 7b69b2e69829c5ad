//! Group input documents: a JSON description of a generating set whose
//! matrix entries are decimal numbers or exact strings from a small grammar
//! (integers, rationals `p/q`, `sqrt(k)/m`, `cos(2pi/m)`, `sin(2pi/m)`,
//! each with an optional leading minus).

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use pinrank_core::matgroup::{
    FiniteOrthogonalGroup, GroupOptions, OrthogonalMatrix, ORTHOGONALITY_TOL,
};

/// One matrix entry: a plain number or an exact-grammar string. The original
/// spelling is preserved (integers stay integers) so documents round-trip
/// losslessly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    Number(serde_json::Number),
    Exact(String),
}

impl MatrixEntry {
    pub fn value(&self) -> anyhow::Result<f64> {
        match self {
            MatrixEntry::Number(v) => v
                .as_f64()
                .with_context(|| format!("entry {v} is not representable as f64")),
            MatrixEntry::Exact(s) => parse_exact_entry(s),
        }
    }
}

/// Evaluates the exact-entry grammar.
pub fn parse_exact_entry(raw: &str) -> anyhow::Result<f64> {
    let trimmed = raw.trim();
    let (sign, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, trimmed),
    };
    let value =
        parse_unsigned_entry(body).with_context(|| format!("cannot parse exact entry {raw:?}"))?;
    Ok(sign * value)
}

fn parse_unsigned_entry(body: &str) -> anyhow::Result<f64> {
    if let Ok(k) = body.parse::<i64>() {
        return Ok(k as f64);
    }
    if let Some(inner) = body.strip_prefix("sqrt(") {
        let (k, denom) = match inner.split_once(')') {
            Some((k, rest)) => (k, rest),
            None => bail!("missing closing parenthesis"),
        };
        let k: u64 = k.trim().parse().context("sqrt argument")?;
        let denom = match denom.trim() {
            "" => 1.0,
            d => {
                let d = d.strip_prefix('/').context("expected '/m' after sqrt(k)")?;
                let m: i64 = d.trim().parse().context("sqrt denominator")?;
                if m == 0 {
                    bail!("zero denominator");
                }
                m as f64
            }
        };
        return Ok((k as f64).sqrt() / denom);
    }
    for (prefix, f) in [
        ("cos(2pi/", f64::cos as fn(f64) -> f64),
        ("sin(2pi/", f64::sin),
    ] {
        if let Some(inner) = body.strip_prefix(prefix) {
            let m = inner
                .strip_suffix(')')
                .context("missing closing parenthesis")?;
            let m: u64 = m.trim().parse().context("angle denominator")?;
            if m == 0 {
                bail!("zero denominator");
            }
            return Ok(f(2.0 * std::f64::consts::PI / m as f64));
        }
    }
    if let Some((p, q)) = body.split_once('/') {
        let p: i64 = p.trim().parse().context("rational numerator")?;
        let q: i64 = q.trim().parse().context("rational denominator")?;
        if q == 0 {
            bail!("zero denominator");
        }
        return Ok(p as f64 / q as f64);
    }
    bail!("not in the exact-entry grammar")
}

/// A group described by generators, read from a file or standard input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupInputDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dimension: usize,
    pub generators: Vec<Vec<Vec<MatrixEntry>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pinc_assertion: Option<bool>,
}

impl GroupInputDocument {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let doc: GroupInputDocument =
            serde_json::from_str(text).context("invalid group input document")?;
        if doc.dimension == 0 {
            bail!("dimension must be at least 1");
        }
        Ok(doc)
    }

    pub fn generator_matrices(
        &self,
        tolerance_override: Option<f64>,
    ) -> anyhow::Result<Vec<OrthogonalMatrix>> {
        let n = self.dimension;
        let tol = tolerance_override
            .or(self.tolerance)
            .unwrap_or(ORTHOGONALITY_TOL);
        let mut out = Vec::with_capacity(self.generators.len());
        for (gi, rows) in self.generators.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                bail!("generator {gi} is not a {n}x{n} matrix");
            }
            let mut entries = Vec::with_capacity(n * n);
            for row in rows {
                for entry in row {
                    entries.push(entry.value()?);
                }
            }
            let matrix = OrthogonalMatrix::with_tolerance(n, entries, tol)
                .with_context(|| format!("generator {gi} rejected"))?;
            out.push(matrix);
        }
        Ok(out)
    }

    pub fn to_group(
        &self,
        cap: usize,
        tolerance_override: Option<f64>,
    ) -> anyhow::Result<FiniteOrthogonalGroup> {
        let generators = self.generator_matrices(tolerance_override)?;
        let opts = GroupOptions {
            cap,
            tolerance: tolerance_override
                .or(self.tolerance)
                .unwrap_or(ORTHOGONALITY_TOL),
        };
        Ok(FiniteOrthogonalGroup::generate(
            self.dimension,
            &generators,
            opts,
        )?)
    }
}
