//! Line-oriented JSON formats for catalogs, scan results and inclusion edges.
//! Every record is one JSON object per line; weights are integer numerators
//! over a single denominator and indices are 1-based.

use std::io::{BufRead, Write};

use anyhow::{bail, Context, Result};
use ballmaps_core::{
    CatalogEntry, InclusionEdge, PartitionChoice, ScanRow, ScanStage, SymmetryPartition, WeightSystem,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub k: usize,
    pub den: u32,
    pub num: Vec<u32>,
    pub cocompact: bool,
    pub int: bool,
    pub finest: Vec<Vec<usize>>,
}

impl From<&CatalogEntry> for CatalogRecord {
    fn from(e: &CatalogEntry) -> Self {
        CatalogRecord {
            k: e.k(),
            den: e.lcd(),
            num: e.weights.numerators().to_vec(),
            cocompact: e.cocompact,
            int: e.satisfies_int,
            finest: e.finest.to_one_based(),
        }
    }
}

impl CatalogRecord {
    /// Rebuilds the entry and checks that the stored derived fields agree.
    pub fn to_entry(&self) -> Result<CatalogEntry> {
        let nums: Vec<i64> = self.num.iter().map(|&n| n as i64).collect();
        let w = WeightSystem::new(&nums, self.den as i64)?;
        if w.lcd() != self.den || w.numerators() != self.num.as_slice() || w.len() != self.k {
            bail!("record {:?}/{} is not in lowest terms or has wrong k", self.num, self.den);
        }
        let entry = CatalogEntry::from_weights(&w).with_context(|| format!("{w} admits no symmetry partition"))?;
        if entry.weights != w {
            bail!("record {w} is not in canonical (non-increasing) order");
        }
        if entry.cocompact != self.cocompact
            || entry.satisfies_int != self.int
            || entry.finest.to_one_based() != self.finest
        {
            bail!("record {w} has derived fields inconsistent with its weights");
        }
        Ok(entry)
    }
}

pub fn write_catalog<W: Write>(out: &mut W, entries: &[CatalogEntry]) -> Result<()> {
    for e in entries {
        serde_json::to_writer(&mut *out, &CatalogRecord::from(e))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_catalog<R: BufRead>(input: R) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CatalogRecord =
            serde_json::from_str(&line).with_context(|| format!("catalog line {}: malformed record", n + 1))?;
        entries.push(rec.to_entry().with_context(|| format!("catalog line {}", n + 1))?);
    }
    Ok(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub num: Vec<u32>,
    pub den: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub finest: Option<Vec<Vec<usize>>>,
}

impl SystemRecord {
    fn of(w: &WeightSystem, finest: Option<&SymmetryPartition>) -> Self {
        SystemRecord { num: w.numerators().to_vec(), den: w.lcd(), finest: finest.map(|p| p.to_one_based()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub stage: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceRecord {
    pub sigma: Vec<Vec<usize>>,
    pub tau: Vec<Vec<usize>>,
    pub compatible: bool,
    pub qprime: bool,
    pub divisibility: bool,
    pub witnesses: Vec<WitnessRecord>,
}

impl From<&PartitionChoice> for ChoiceRecord {
    fn from(c: &PartitionChoice) -> Self {
        ChoiceRecord {
            sigma: c.sigma.to_one_based(),
            tau: c.tau.to_one_based(),
            compatible: c.verdict.symmetry_compatible,
            qprime: c.verdict.qprime_ok,
            divisibility: c.verdict.divisibility_ok,
            witnesses: c
                .verdict
                .witnesses
                .iter()
                .map(|(s, w)| WitnessRecord { stage: s.name().into(), detail: w.to_string() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub source: SystemRecord,
    pub target: SystemRecord,
    /// Source index (1-based) for each target slot.
    pub alignment: Vec<usize>,
    pub stage: String,
    pub passing: Vec<ChoiceRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dual_partner: Option<SystemRecord>,
    pub non_faithful_target: bool,
}

pub fn stage_label(stage: ScanStage) -> &'static str {
    match stage {
        ScanStage::Divisibility => "divisibility",
        ScanStage::Full => "full",
    }
}

impl ResultRecord {
    pub fn from_row(row: &ScanRow, stage: ScanStage) -> Self {
        ResultRecord {
            source: SystemRecord::of(&row.source.weights, Some(&row.source.finest)),
            target: SystemRecord::of(&row.target.weights, Some(&row.target.finest)),
            alignment: row.alignment.iter().map(|a| a + 1).collect(),
            stage: stage_label(stage).into(),
            passing: row.passing.iter().map(ChoiceRecord::from).collect(),
            dual_partner: row.dual_partner.as_ref().map(|d| SystemRecord::of(d, None)),
            non_faithful_target: row.non_faithful_target,
        }
    }
}

pub fn write_results<W: Write>(out: &mut W, rows: &[ScanRow], stage: ScanStage) -> Result<()> {
    for row in rows {
        serde_json::to_writer(&mut *out, &ResultRecord::from_row(row, stage))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_results<R: BufRead>(input: R) -> Result<Vec<ResultRecord>> {
    let mut out = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line).with_context(|| format!("result line {}", n + 1))?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub parent: SystemRecord,
    pub subset: Vec<usize>,
    pub child: SystemRecord,
    pub codimension: usize,
    pub child_int: bool,
    pub child_in_catalog: bool,
    pub heuristic: bool,
}

impl From<&InclusionEdge> for EdgeRecord {
    fn from(e: &InclusionEdge) -> Self {
        EdgeRecord {
            parent: SystemRecord::of(&e.parent, None),
            subset: e.subset.iter().map(|i| i + 1).collect(),
            child: SystemRecord::of(&e.child, None),
            codimension: e.codimension,
            child_int: e.child_int,
            child_in_catalog: e.child_in_catalog,
            heuristic: e.heuristic,
        }
    }
}

pub fn write_edges<W: Write>(out: &mut W, edges: &[InclusionEdge]) -> Result<()> {
    for e in edges {
        serde_json::to_writer(&mut *out, &EdgeRecord::from(e))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ballmaps_core::{enumerate_catalog, IntegralityMode};

    #[test]
    fn catalog_round_trip() {
        let cat = enumerate_catalog(5, 24, IntegralityMode::HalfInt);
        let mut buf = Vec::new();
        write_catalog(&mut buf, &cat).unwrap();
        assert_eq!(read_catalog(buf.as_slice()).unwrap(), cat);
    }

    #[test]
    fn record_shape() {
        let cat = enumerate_catalog(6, 8, IntegralityMode::Int);
        let e = cat.iter().find(|e| e.weights.numerators() == [3, 3, 3, 3, 3, 1]).unwrap();
        let line = serde_json::to_string(&CatalogRecord::from(e)).unwrap();
        assert_eq!(
            line,
            r#"{"k":6,"den":8,"num":[3,3,3,3,3,1],"cocompact":true,"int":true,"finest":[[1],[2],[3],[4],[5],[6]]}"#
        );
    }

    #[test]
    fn rejects_inconsistent_records() {
        let bad =
            r#"{"k":6,"den":8,"num":[3,3,3,3,3,1],"cocompact":false,"int":true,"finest":[[1],[2],[3],[4],[5],[6]]}"#;
        assert!(read_catalog(bad.as_bytes()).is_err());
        let unsorted =
            r#"{"k":6,"den":8,"num":[1,3,3,3,3,3],"cocompact":true,"int":true,"finest":[[1],[2],[3],[4],[5],[6]]}"#;
        assert!(read_catalog(unsorted.as_bytes()).is_err());
        assert!(read_catalog("not json".as_bytes()).is_err());
    }
}
