use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use super::equi::odd_power_tail;
use crate::error::{Error, Result};
use crate::partition::{
    check_family, validate_row, Arithmetic, Exact, FamilyKind, FamilyMeta, Length, PartitionFamily, PartitionRow,
};

/// What to do with a finite list of rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailPolicy {
    /// Continue with equi-rows `T/(2N+1)` after the listed rows.
    #[default]
    EquiTail,
    /// Refuse finite families.
    Reject,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomDocument {
    name: String,
    target_sum: String,
    rows: Vec<Vec<String>>,
    kind: FamilyKind,
}

/// A family read from JSON:
/// `{"name": .., "target_sum": "p/q", "rows": [["p/q", ..], ..], "kind": "odd" | "general"}`.
/// Row `i` of the document has order `i`.
#[derive(Debug, Clone)]
pub struct CustomFamily {
    meta: FamilyMeta,
    target: Exact,
    rows: Vec<PartitionRow<Exact>>,
    /// `suffix_max[i]` = largest piece in listed rows `i..`.
    suffix_max: Vec<Exact>,
}

fn parse_rational(s: &str) -> Result<Exact> {
    s.parse().map_err(|e: Error| Error::CustomFamily(e.to_string()))
}

impl CustomFamily {
    pub fn from_json(text: &str, policy: TailPolicy) -> Result<Self> {
        let doc: CustomDocument =
            serde_json::from_str(text).map_err(|e| Error::CustomFamily(format!("malformed document: {e}")))?;
        if policy == TailPolicy::Reject {
            return Err(Error::CustomFamily(format!(
                "`{}` lists {} rows and tail extension is disabled",
                doc.name,
                doc.rows.len()
            )));
        }
        if doc.rows.is_empty() {
            return Err(Error::CustomFamily("no rows".into()));
        }
        let target = parse_rational(&doc.target_sum)?;
        if !target.is_positive() {
            return Err(Error::CustomFamily("target_sum must be positive".into()));
        }
        let rows = doc
            .rows
            .iter()
            .enumerate()
            .map(|(order, raw)| {
                let lengths = raw.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                validate_row(PartitionRow::new(order, lengths, target.clone()), doc.kind, 0.0)
            })
            .collect::<Result<Vec<_>>>()?;
        let tail_bound = equi_piece(&target, rows.len());
        let mut suffix_max = vec![tail_bound; rows.len() + 1];
        for i in (0..rows.len()).rev() {
            let m = rows[i].max().expect("validated rows are non-empty").clone();
            suffix_max[i] = m.max(suffix_max[i + 1].clone());
        }
        suffix_max.pop();
        let meta = FamilyMeta::new(doc.name, doc.kind, Arithmetic::Exact).with_param("tail", "equi");
        let family = CustomFamily { meta, target, rows, suffix_max };
        let n = family.rows.len();
        check_family(&family, &[0, n / 2, n, 2 * n + 1, 4 * n + 3])?;
        Ok(family)
    }

    pub fn from_path(path: &Path, policy: TailPolicy) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::CustomFamily(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text, policy)
    }

    /// Number of rows listed in the document.
    pub fn listed_rows(&self) -> usize {
        self.rows.len()
    }
}

fn equi_piece(target: &Exact, order: usize) -> Exact {
    Exact::new(target.value() / BigRational::from_integer(BigInt::from(2 * order + 1)))
}

impl PartitionFamily for CustomFamily {
    type Value = Exact;

    fn meta(&self) -> &FamilyMeta {
        &self.meta
    }

    fn row(&self, order: usize) -> Result<PartitionRow<Exact>> {
        if let Some(row) = self.rows.get(order) {
            return Ok(row.clone());
        }
        let count = 2 * order + 1;
        Ok(PartitionRow::new(order, vec![equi_piece(&self.target, order); count], self.target.clone()))
    }

    fn upper_bound(&self, order: usize) -> Result<Exact> {
        Ok(match self.suffix_max.get(order) {
            Some(v) => v.clone(),
            None => equi_piece(&self.target, order),
        })
    }

    fn ub_power_tail(&self, from: usize, p: f64) -> Option<f64> {
        let listed = self.rows.len();
        let mut head = 0.0;
        for n in from..listed {
            head += self.rows[n].len() as f64 * self.suffix_max[n].to_f64().powf(p);
        }
        let t = self.target.to_f64();
        Some(head + t.powf(p) * odd_power_tail(from.max(listed), p)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{"name": "skew", "target_sum": "1", "kind": "odd",
        "rows": [["1"], ["1/2", "1/4", "1/4"], ["1/5", "1/5", "1/5", "1/5", "1/5"]]}"#;

    #[test]
    fn loads_and_extends() {
        let fam = CustomFamily::from_json(DOC, TailPolicy::EquiTail).unwrap();
        assert_eq!(fam.listed_rows(), 3);
        assert_eq!(fam.row(1).unwrap().lengths[0], Exact::from_ratio(1, 2));
        assert_eq!(fam.row(4).unwrap().lengths, vec![Exact::from_ratio(1, 9); 9]);
        assert_eq!(fam.upper_bound(1).unwrap(), Exact::from_ratio(1, 2));
        assert_eq!(fam.upper_bound(2).unwrap(), Exact::from_ratio(1, 5));
        assert_eq!(fam.upper_bound(3).unwrap(), Exact::from_ratio(1, 7));
    }

    #[test]
    fn reject_policy() {
        let err = CustomFamily::from_json(DOC, TailPolicy::Reject).unwrap_err();
        assert_eq!(err.name(), "CustomFamily");
    }

    #[test]
    fn invalid_rows() {
        let bad_sum = DOC.replace(r#""1/4", "1/4""#, r#""1/4", "1/8""#);
        assert_eq!(CustomFamily::from_json(&bad_sum, TailPolicy::EquiTail).unwrap_err().name(), "SumMismatch");
        let bad_count = DOC.replace(r#"["1/2", "1/4", "1/4"]"#, r#"["1/2", "1/2"]"#);
        assert_eq!(CustomFamily::from_json(&bad_count, TailPolicy::EquiTail).unwrap_err().name(), "WrongCardinality");
        assert_eq!(CustomFamily::from_json("{", TailPolicy::EquiTail).unwrap_err().name(), "CustomFamily");
    }
}
