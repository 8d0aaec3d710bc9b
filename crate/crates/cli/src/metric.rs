//! Metric files: a JSON object mapping edge class ids to lengths, e.g.
//! `{"0": 0.12, "3": 0.2043}`.

use std::collections::BTreeMap;

use hyperflow::{Error, GeneralMetric, Result, Triangulation};

pub type MetricMap = BTreeMap<usize, f64>;

pub fn parse(text: &str) -> Result<MetricMap> {
    let raw: BTreeMap<String, f64> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("metric file: {e}")))?;
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<usize>()
                .map(|id| (id, v))
                .map_err(|_| Error::Parse(format!("metric file: edge class id {k:?} is not an integer")))
        })
        .collect()
}

pub fn to_map(m: &GeneralMetric) -> MetricMap {
    m.values.iter().copied().enumerate().collect()
}

/// Values for exactly the classes `ids`; any other key is a mismatch unless it
/// is listed in `ignorable`.
pub fn select(map: &MetricMap, ids: &[usize], ignorable: &[usize]) -> Result<Vec<f64>> {
    let missing: Vec<usize> = ids.iter().copied().filter(|c| !map.contains_key(c)).collect();
    if !missing.is_empty() {
        return Err(Error::MetricMismatch(format!("no length for edge classes {missing:?}")));
    }
    let unknown: Vec<usize> = map
        .keys()
        .copied()
        .filter(|c| !ids.contains(c) && !ignorable.contains(c))
        .collect();
    if !unknown.is_empty() {
        return Err(Error::MetricMismatch(format!("unknown edge classes {unknown:?}")));
    }
    Ok(ids.iter().map(|c| map[c]).collect())
}

pub fn full(map: &MetricMap, tri: &Triangulation) -> Result<GeneralMetric> {
    let ids: Vec<usize> = (0..tri.edge_classes().len()).collect();
    GeneralMetric::new(tri, select(map, &ids, &[])?)
}
