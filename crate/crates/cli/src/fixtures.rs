//! Reference fixtures: parsing the embedded text format and comparing
//! computed scans and verdicts against it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use anyhow::{anyhow, bail, Context, Result};
use ballmaps_core::{
    admissible_partitions, canonicalize, classify_candidate, dual, scan, CatalogEntry, ClassifyOptions, Compactness,
    ExactRational, ForgetfulCandidate, ScanFilter, ScanRow, ScanStage, Stage, SymmetryPartition, WeightSystem, Witness,
};

/// The fixtures shipped with the tool.
pub const REFERENCE: &str = include_str!("../fixtures/reference.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Duals {
    /// A 4-point target and its dual are different rows.
    Distinct,
    /// A 4-point target is identified with its dual.
    Merged,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub source: WeightSystem,
    pub target: WeightSystem,
    pub sigma_shape: Vec<usize>,
    pub tau_shape: Vec<usize>,
    /// Source weight → target weight for each surviving point.
    pub via: Option<Vec<(ExactRational, ExactRational)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictExpectation {
    pub compatible: bool,
    pub qprime: bool,
    pub divisibility: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureBody {
    Scan { filter: ScanFilter, duals: Duals, alignments: bool, expect: Vec<Expectation> },
    Classify { candidate: ForgetfulCandidate, verdict: VerdictExpectation },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub body: FixtureBody,
}

fn parse_system(s: &str) -> Result<WeightSystem> {
    let (nums, den) = s
        .strip_prefix('(')
        .and_then(|r| r.split_once(")/"))
        .ok_or_else(|| anyhow!("expected (n1,...,nk)/d, got {s:?}"))?;
    let nums: Vec<i64> = nums.split(',').map(|n| n.trim().parse()).collect::<Result<_, _>>()?;
    Ok(WeightSystem::new(&nums, den.trim().parse()?)?)
}

/// `id`, `S4`, `S2xS2`: sizes of the non-singleton blocks, largest first.
fn parse_shape(s: &str) -> Result<Vec<usize>> {
    if s == "id" {
        return Ok(Vec::new());
    }
    let mut shape: Vec<usize> = s
        .split('x')
        .map(|f| f.strip_prefix('S').ok_or_else(|| anyhow!("bad group {s:?}"))?.parse::<usize>().map_err(Into::into))
        .collect::<Result<_>>()?;
    shape.retain(|&n| n > 1);
    shape.sort_unstable_by(|a, b| b.cmp(a));
    Ok(shape)
}

fn shape_name(shape: &[usize]) -> String {
    if shape.is_empty() {
        "id".into()
    } else {
        shape.iter().map(|n| format!("S{n}")).collect::<Vec<_>>().join("x")
    }
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    Ok(match s.split_once("..") {
        Some((a, b)) => a.parse()?..=b.parse()?,
        None => {
            let n = s.parse()?;
            n..=n
        }
    })
}

fn key_values(words: &[&str]) -> Result<BTreeMap<String, String>> {
    words
        .iter()
        .map(|w| {
            w.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| anyhow!("expected key=value, got {w:?}"))
        })
        .collect()
}

/// The least admissible partition of `w` whose non-singleton block sizes are
/// `shape`.
fn partition_with_shape(w: &WeightSystem, shape: &[usize]) -> Result<SymmetryPartition> {
    admissible_partitions(w)
        .into_iter()
        .filter(|p| p.shape() == shape)
        .min()
        .ok_or_else(|| anyhow!("{w} has no admissible partition of shape {}", shape_name(shape)))
}

fn parse_expect(words: &[&str]) -> Result<Expectation> {
    let arrow = words.iter().position(|w| *w == "->").ok_or_else(|| anyhow!("missing ->"))?;
    if arrow != 1 || words.len() < 3 {
        bail!("expected `expect SOURCE -> TARGET ...`");
    }
    let source = parse_system(words[0])?;
    let target = parse_system(words[2])?;
    let mut rest = &words[3..];
    let mut via = None;
    if let Some(p) = rest.iter().position(|w| *w == "via") {
        let pairs = rest[p + 1..]
            .iter()
            .map(|pair| {
                let (a, b) = pair.split_once('>').ok_or_else(|| anyhow!("expected a>b, got {pair:?}"))?;
                let (sd, td) = (den_of(words[0])?, den_of(words[2])?);
                Ok((ExactRational::new(a.parse()?, sd), ExactRational::new(b.parse()?, td)))
            })
            .collect::<Result<Vec<_>>>()?;
        via = Some(pairs);
        rest = &rest[..p];
    }
    let kv = key_values(rest)?;
    Ok(Expectation {
        source,
        target,
        sigma_shape: parse_shape(kv.get("sigma").map_or("id", String::as_str))?,
        tau_shape: parse_shape(kv.get("tau").map_or("id", String::as_str))?,
        via,
    })
}

fn den_of(system: &str) -> Result<i64> {
    Ok(system.rsplit_once('/').ok_or_else(|| anyhow!("no denominator in {system:?}"))?.1.parse()?)
}

fn parse_bool(s: &str) -> Result<bool> {
    match s {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => bail!("expected yes or no, got {s:?}"),
    }
}

#[derive(Default)]
struct Draft {
    name: String,
    filter: Option<ScanFilter>,
    classify: Option<ForgetfulCandidate>,
    verdict: Option<VerdictExpectation>,
    duals: Option<Duals>,
    alignments: bool,
    expect: Vec<Expectation>,
}

impl Draft {
    fn finish(self) -> Result<Fixture> {
        let body = match (self.filter, self.classify) {
            (Some(filter), None) => FixtureBody::Scan {
                filter,
                duals: self.duals.unwrap_or(Duals::Distinct),
                alignments: self.alignments,
                expect: self.expect,
            },
            (None, Some(candidate)) => FixtureBody::Classify {
                candidate,
                verdict: self.verdict.ok_or_else(|| anyhow!("fixture {} lacks a verdict line", self.name))?,
            },
            _ => bail!("fixture {} needs exactly one scan or classify line", self.name),
        };
        Ok(Fixture { name: self.name, body })
    }
}

fn parse_classify(words: &[&str]) -> Result<ForgetfulCandidate> {
    // SOURCE sigma=.. -> TARGET tau=.. align=..
    let arrow = words.iter().position(|w| *w == "->").ok_or_else(|| anyhow!("missing ->"))?;
    let source = parse_system(words.first().ok_or_else(|| anyhow!("missing source"))?)?;
    let target = parse_system(words.get(arrow + 1).ok_or_else(|| anyhow!("missing target"))?)?;
    let mut kv = key_values(&words[1..arrow])?;
    kv.extend(key_values(&words[arrow + 2..])?);
    let sigma = partition_with_shape(&source, &parse_shape(kv.get("sigma").map_or("id", String::as_str))?)?;
    let tau = partition_with_shape(&target, &parse_shape(kv.get("tau").map_or("id", String::as_str))?)?;
    let alignment: Vec<usize> = kv
        .get("align")
        .ok_or_else(|| anyhow!("missing align="))?
        .split(',')
        .map(|n| n.parse::<usize>().map(|n| n.wrapping_sub(1)))
        .collect::<Result<_, _>>()?;
    Ok(ForgetfulCandidate::new(source, sigma, target, tau, alignment)?)
}

/// Parses the fixture format: `[name]` headers followed by directive lines;
/// `#` starts a comment.
pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    let mut draft: Option<Draft> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ctx = || format!("fixture line {}", n + 1);
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if let Some(d) = draft.take() {
                out.push(d.finish().with_context(ctx)?);
            }
            draft = Some(Draft { name: name.to_string(), ..Draft::default() });
            continue;
        }
        let d = draft.as_mut().ok_or_else(|| anyhow!("directive before any [fixture] header")).with_context(ctx)?;
        let words: Vec<&str> = line.split_whitespace().collect();
        let result: Result<()> = (|| {
            match words[0] {
                "scan" => {
                    let kv = key_values(&words[1..])?;
                    let mut filter = ScanFilter::default();
                    for (k, v) in &kv {
                        match k.as_str() {
                            "compactness" => {
                                filter.compactness = match v.as_str() {
                                    "any" => Compactness::Any,
                                    "cocompact" => Compactness::Cocompact,
                                    "noncompact" => Compactness::NonCompact,
                                    _ => bail!("unknown compactness {v:?}"),
                                }
                            }
                            "source-dims" => filter.source_dims = parse_range(v)?,
                            "target-dims" => filter.target_dims = parse_range(v)?,
                            "stage" => {
                                filter.stage = match v.as_str() {
                                    "divisibility" => ScanStage::Divisibility,
                                    "full" => ScanStage::Full,
                                    _ => bail!("unknown stage {v:?}"),
                                }
                            }
                            _ => bail!("unknown scan option {k:?}"),
                        }
                    }
                    d.filter = Some(filter);
                }
                "duals" => {
                    d.duals = Some(match words.get(1).copied() {
                        Some("distinct") => Duals::Distinct,
                        Some("merged") => Duals::Merged,
                        other => bail!("expected `duals distinct|merged`, got {other:?}"),
                    })
                }
                "alignments" => d.alignments = true,
                "expect" => d.expect.push(parse_expect(&words[1..])?),
                "classify" => d.classify = Some(parse_classify(&words[1..])?),
                "verdict" => {
                    let kv = key_values(&words[1..])?;
                    let flag = |k: &str| -> Result<bool> {
                        parse_bool(kv.get(k).ok_or_else(|| anyhow!("verdict lacks {k}="))?)
                    };
                    d.verdict = Some(VerdictExpectation {
                        compatible: flag("compatible")?,
                        qprime: flag("qprime")?,
                        divisibility: flag("divisibility")?,
                        witness: kv.get("witness").cloned(),
                    });
                }
                other => bail!("unknown directive {other:?}"),
            }
            Ok(())
        })();
        result.with_context(ctx)?;
    }
    if let Some(d) = draft {
        out.push(d.finish()?);
    }
    Ok(out)
}

/// What a row is compared by: canonical weights and, optionally, the
/// alignment class as a multiset of (source weight, target weight).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct RowKey {
    source: WeightSystem,
    target: WeightSystem,
    via: Option<Vec<(ExactRational, ExactRational)>>,
}

impl fmt::Display for RowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)?;
        if let Some(via) = &self.via {
            f.write_str(" via")?;
            for (s, t) in via {
                let sn = *s * ExactRational::from_integer(self.source.lcd() as i64);
                let tn = *t * ExactRational::from_integer(self.target.lcd() as i64);
                write!(f, " {sn}>{tn}")?;
            }
        }
        Ok(())
    }
}

fn normalize(
    source: &WeightSystem,
    target: &WeightSystem,
    via: Option<Vec<(ExactRational, ExactRational)>>,
    duals: Duals,
) -> RowKey {
    let source = canonicalize(source);
    let mut target = canonicalize(target);
    let mut via = via;
    if duals == Duals::Merged && target.len() == 4 {
        let d = canonicalize(&dual(&target).expect("4 points"));
        if d < target {
            target = d;
            if let Some(v) = via.as_mut() {
                for (_, t) in v.iter_mut() {
                    *t = ExactRational::one() - *t;
                }
            }
        }
    }
    if let Some(v) = via.as_mut() {
        v.sort();
    }
    RowKey { source, target, via }
}

fn row_key(row: &ScanRow, duals: Duals, alignments: bool) -> RowKey {
    let via = alignments.then(|| {
        row.alignment
            .iter()
            .enumerate()
            .map(|(i, &a)| (row.source.weights.weight(a), row.target.weights.weight(i)))
            .collect()
    });
    normalize(&row.source.weights, &row.target.weights, via, duals)
}

/// Result of checking one fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub expected: usize,
    pub computed: usize,
    /// Expected but not computed.
    pub missing: Vec<String>,
    /// Computed but not expected.
    pub extra: Vec<String>,
    pub notes: Vec<String>,
    /// Rows of the scan behind a scan fixture.
    pub rows: Vec<ScanRow>,
}

fn check_scan(name: &str, rows: &[ScanRow], duals: Duals, alignments: bool, expect: &[Expectation]) -> FixtureOutcome {
    let mut computed: BTreeMap<RowKey, Vec<&ScanRow>> = BTreeMap::new();
    for row in rows {
        computed.entry(row_key(row, duals, alignments)).or_default().push(row);
    }
    let mut expected: BTreeMap<RowKey, &Expectation> = BTreeMap::new();
    for e in expect {
        let via = if alignments { e.via.clone() } else { None };
        expected.insert(normalize(&e.source, &e.target, via, duals), e);
    }
    let exp_keys: BTreeSet<&RowKey> = expected.keys().collect();
    let got_keys: BTreeSet<&RowKey> = computed.keys().collect();
    let missing: Vec<String> = exp_keys.difference(&got_keys).map(|k| k.to_string()).collect();
    let extra: Vec<String> = got_keys.difference(&exp_keys).map(|k| k.to_string()).collect();
    let mut notes = Vec::new();
    for (key, e) in &expected {
        let Some(rows) = computed.get(key) else { continue };
        let realized = rows
            .iter()
            .flat_map(|r| &r.passing)
            .any(|c| c.sigma.shape() == e.sigma_shape && c.tau.shape() == e.tau_shape);
        if !realized {
            notes.push(format!(
                "{key}: no passing choice with sigma={} tau={}",
                shape_name(&e.sigma_shape),
                shape_name(&e.tau_shape)
            ));
        }
    }
    FixtureOutcome {
        name: name.to_string(),
        passed: missing.is_empty() && extra.is_empty() && notes.is_empty(),
        expected: expected.len(),
        computed: computed.len(),
        missing,
        extra,
        notes,
        rows: rows.to_vec(),
    }
}

fn check_classify(
    name: &str,
    cand: &ForgetfulCandidate,
    want: &VerdictExpectation,
    opts: &ClassifyOptions,
) -> FixtureOutcome {
    let v = classify_candidate(cand, opts);
    let mut notes = Vec::new();
    let got = (v.symmetry_compatible, v.qprime_ok, v.divisibility_ok);
    let exp = (want.compatible, want.qprime, want.divisibility);
    if got != exp {
        notes.push(format!("stage flags (compatible, qprime, divisibility): expected {exp:?}, got {got:?}"));
    }
    if let Some(kind) = &want.witness {
        let cycle_type: &[usize] = match kind.as_str() {
            "transposition" => &[2],
            "bitransposition" => &[2, 2],
            "tritransposition" => &[2, 2, 2],
            _ => &[],
        };
        let found = v.witnesses.iter().any(|(stage, w)| {
            *stage == Stage::QPrime
                && matches!(w, Witness::FixedElement { element } if element.cycle_type() == cycle_type)
        });
        if !found {
            notes.push(format!("no {kind} witness at the qprime stage; witnesses: {:?}", v.witnesses));
        }
    }
    FixtureOutcome {
        name: name.to_string(),
        passed: notes.is_empty(),
        expected: 1,
        computed: 1,
        missing: Vec::new(),
        extra: Vec::new(),
        notes,
        rows: Vec::new(),
    }
}

/// Runs every fixture against `catalog`. Scans are cached per filter.
pub fn run_fixtures(fixtures: &[Fixture], catalog: &[CatalogEntry], opts: &ClassifyOptions) -> Vec<FixtureOutcome> {
    let mut cache: Vec<(ScanFilter, Vec<ScanRow>)> = Vec::new();
    fixtures
        .iter()
        .map(|f| match &f.body {
            FixtureBody::Scan { filter, duals, alignments, expect } => {
                let pos = match cache.iter().position(|(k, _)| k == filter) {
                    Some(p) => p,
                    None => {
                        cache.push((filter.clone(), scan(catalog, catalog, filter, opts)));
                        cache.len() - 1
                    }
                };
                check_scan(&f.name, &cache[pos].1, *duals, *alignments, expect)
            }
            FixtureBody::Classify { candidate, verdict } => check_classify(&f.name, candidate, verdict, opts),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_fixtures_parse() {
        let f = parse_fixtures(REFERENCE).unwrap();
        let names: Vec<&str> = f.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(
            names,
            ["divisibility-cocompact", "orbifold-maps-cocompact", "smooth-locus-rejection", "noncompact"]
        );
        match &f[3].body {
            FixtureBody::Scan { expect, duals, alignments, .. } => {
                assert_eq!(expect.len(), 6);
                assert_eq!(*duals, Duals::Merged);
                assert!(*alignments);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_fixtures("[a]\nscan stage=sideways\n").unwrap_err();
        assert!(format!("{err:#}").contains("line 2"), "{err:#}");
        assert!(parse_fixtures("expect (1,1,1,1)/2 -> (1,1,1,1)/2\n").is_err());
        assert!(parse_fixtures("[a]\n").is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(parse_shape("id").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_shape("S2xS4").unwrap(), vec![4, 2]);
        assert_eq!(shape_name(&[3]), "S3");
        assert!(parse_shape("Z2").is_err());
    }
}
