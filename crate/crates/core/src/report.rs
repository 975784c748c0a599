//! Text serializations shared by the CLI and the tests: the profile CSV,
//! value dumps, and histograms.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::Result;
use crate::hierarchy::ProfileRecord;

pub const PROFILE_HEADER: &str = "node_id,parent_id,kind,k,u_size,v_size,edges,density";

/// Row selection for profile output. Filters only choose rows; they never
/// change values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileFilter {
    pub min_density: f64,
    pub min_u: usize,
    pub min_v: usize,
}

impl Default for ProfileFilter {
    fn default() -> Self {
        ProfileFilter {
            min_density: 0.0,
            min_u: 0,
            min_v: 0,
        }
    }
}

impl ProfileFilter {
    pub fn accepts(&self, r: &ProfileRecord) -> bool {
        r.density >= self.min_density && r.u_size >= self.min_u && r.v_size >= self.min_v
    }
}

fn k_field(r: &ProfileRecord) -> String {
    match r.threshold {
        Some(t) => format!("{t:.6}"),
        None => r.k.to_string(),
    }
}

/// Writes the header and every accepted record. Roots have an empty
/// `parent_id`. Returns the number of rows written.
pub fn write_profiles_csv<W: Write>(records: &[ProfileRecord], filter: &ProfileFilter, mut out: W) -> Result<usize> {
    writeln!(out, "{PROFILE_HEADER}")?;
    let mut rows = 0;
    for r in records.iter().filter(|r| filter.accepts(r)) {
        let parent = r.parent_id.map(|p| p.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6}",
            r.node_id,
            parent,
            r.kind,
            k_field(r),
            r.u_size,
            r.v_size,
            r.edges,
            r.density
        )?;
        rows += 1;
    }
    Ok(rows)
}

/// Count of entities per value, ascending.
pub fn histogram(values: &[u64]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for &v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

pub fn write_histogram<W: Write>(values: &[u64], value_name: &str, mut out: W) -> Result<()> {
    writeln!(out, "{value_name}\tcount")?;
    for (v, c) in histogram(values) {
        writeln!(out, "{v}\t{c}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::NodeKind;

    fn record(node_id: usize, parent_id: Option<usize>, density: f64, u: usize, v: usize) -> ProfileRecord {
        ProfileRecord {
            node_id,
            parent_id,
            kind: NodeKind::Wing,
            k: 2,
            threshold: None,
            u_size: u,
            v_size: v,
            edges: 6,
            density,
        }
    }

    #[test]
    fn csv_layout() {
        let rows = [record(0, None, 1.0, 2, 3), record(1, Some(0), 0.5, 6, 6)];
        let mut buf = Vec::new();
        let n = write_profiles_csv(&rows, &ProfileFilter::default(), &mut buf).unwrap();
        assert_eq!(n, 2);
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "node_id,parent_id,kind,k,u_size,v_size,edges,density\n\
             0,,wing,2,2,3,6,1.000000\n\
             1,0,wing,2,6,6,6,0.500000\n"
        );
    }

    #[test]
    fn filters_select_rows_only() {
        let rows = [record(0, None, 1.0, 2, 3), record(1, Some(0), 0.4, 6, 6), record(2, Some(0), 0.9, 6, 6)];
        let filter = ProfileFilter {
            min_density: 0.5,
            min_u: 5,
            min_v: 5,
        };
        let mut buf = Vec::new();
        assert_eq!(write_profiles_csv(&rows, &filter, &mut buf).unwrap(), 1);
        assert!(String::from_utf8(buf).unwrap().ends_with("2,0,wing,2,6,6,6,0.900000\n"));
    }

    #[test]
    fn fractional_thresholds_print_as_reals() {
        let mut r = record(0, None, 1.0, 2, 3);
        r.kind = NodeKind::FracCore;
        r.threshold = Some(0.8333333333);
        let mut buf = Vec::new();
        write_profiles_csv(&[r], &ProfileFilter::default(), &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains(",frac-core,0.833333,"));
    }

    #[test]
    fn histogram_counts() {
        let mut buf = Vec::new();
        write_histogram(&[2, 3, 3, 2, 3], "theta", &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "theta\tcount\n2\t2\n3\t3\n");
    }
}
