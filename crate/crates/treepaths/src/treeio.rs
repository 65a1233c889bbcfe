//! Edge-list parsing, tree classification against the perfect m-ary
//! definitions, and histogram serialization.
//!
//! Edge-list format: one edge per line as two whitespace-separated labels,
//! `#` starts a comment line, blank lines are ignored. A single-vertex tree
//! is written as `solo <label>` since an edge list cannot express it.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::oracle::{DistanceHistogram, ExplicitTree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected two vertex labels, got {found}")]
    BadTokenCount { line: usize, found: usize },
    #[error("line {line}: self-loop on vertex '{label}'")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: duplicate edge '{u} {v}'")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("line {line}: solo declaration must name exactly one vertex")]
    BadSolo { line: usize },
    #[error("not a tree: cycle detected")]
    Cycle,
    #[error("not a tree: disconnected")]
    Disconnected,
    #[error("empty input: no vertices")]
    Empty,
}

/// Result of matching a tree against the perfect m-ary definitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeClassification {
    /// The m for which every degree is 1 or m+1 (possibly with one root of
    /// degree m); absent when no m >= 2 fits.
    pub is_mary_for: Option<u64>,
    /// (m, depth, root id) when rooting at some degree-m vertex puts every
    /// leaf at the same depth with all other internal degrees m+1.
    pub perfect_rooted: Option<(u64, u32, u32)>,
    /// (m, diameter) when all degrees lie in {1, m+1} and every leaf
    /// attains the diameter. A single edge reports m = 2, the smallest
    /// consistent branching factor.
    pub perfect_unrooted: Option<(u64, u32)>,
    pub diameter: u32,
    pub degree_census: BTreeMap<usize, u64>,
}

/// Parses an edge list into a validated tree plus the original labels,
/// indexed by dense vertex id in first-appearance order.
pub fn parse_edge_list(text: &str) -> Result<(ExplicitTree, Vec<String>), ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: HashSet<(u32, u32)> = HashSet::new();

    let mut intern = |label: &str, labels: &mut Vec<String>| -> u32 {
        *ids.entry(label.to_string()).or_insert_with(|| {
            labels.push(label.to_string());
            labels.len() as u32 - 1
        })
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] == "solo" {
            if tokens.len() != 2 {
                return Err(ParseError::BadSolo { line });
            }
            intern(tokens[1], &mut labels);
            continue;
        }
        if tokens.len() != 2 {
            return Err(ParseError::BadTokenCount {
                line,
                found: tokens.len(),
            });
        }
        if tokens[0] == tokens[1] {
            return Err(ParseError::SelfLoop {
                line,
                label: tokens[0].to_string(),
            });
        }
        let u = intern(tokens[0], &mut labels);
        let v = intern(tokens[1], &mut labels);
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: tokens[0].to_string(),
                v: tokens[1].to_string(),
            });
        }
        edges.push((u, v));
    }

    let n = labels.len();
    if n == 0 {
        return Err(ParseError::Empty);
    }
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adjacency[u as usize].push(v);
        adjacency[v as usize].push(u);
    }
    let tree = ExplicitTree::from_adjacency(adjacency);
    let reached = tree
        .bfs_distances(0)
        .into_iter()
        .filter(|&d| d != u32::MAX)
        .count();
    if reached != n {
        return Err(ParseError::Disconnected);
    }
    if edges.len() != n - 1 {
        return Err(ParseError::Cycle);
    }
    Ok((tree, labels))
}

/// Serializes a tree back to the edge-list format, vertex ids as labels.
pub fn emit_edge_list(tree: &ExplicitTree) -> String {
    if tree.n() == 1 {
        return "solo 0\n".to_string();
    }
    let mut out = String::new();
    for (u, v) in tree.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Matches a tree against the perfect rooted / perfect unrooted m-ary
/// definitions. Fields stay absent when no m >= 2 fits; a single vertex is
/// unclassifiable because m cannot be determined.
pub fn classify(tree: &ExplicitTree) -> TreeClassification {
    let census = tree.degree_census();
    let eccentricities = tree.eccentricities();
    let diameter = eccentricities.iter().copied().max().unwrap_or(0);

    let internal: Vec<usize> = census.keys().copied().filter(|&d| d > 1).collect();

    let perfect_unrooted = unrooted_m(&internal, tree.n()).filter(|_| {
        (0..tree.n()).all(|v| tree.degree(v as u32) != 1 || eccentricities[v] == diameter)
    }).map(|m| (m, diameter));

    let perfect_rooted = rooted_candidate(tree, &census, &internal);

    let is_mary_for = perfect_unrooted
        .map(|(m, _)| m)
        .or(perfect_rooted.map(|(m, _, _)| m));

    TreeClassification {
        is_mary_for,
        perfect_rooted,
        perfect_unrooted,
        diameter,
        degree_census: census,
    }
}

/// m such that every degree lies in {1, m+1}. A single edge (no internal
/// vertices, n = 2) is valid for every m; report the smallest, m = 2.
fn unrooted_m(internal: &[usize], n: usize) -> Option<u64> {
    match internal {
        [] if n == 2 => Some(2),
        [d] if *d >= 3 => Some(*d as u64 - 1),
        _ => None,
    }
}

fn rooted_candidate(
    tree: &ExplicitTree,
    census: &BTreeMap<usize, u64>,
    internal: &[usize],
) -> Option<(u64, u32, u32)> {
    // Root degree m among internal degrees {1, m, m+1}: either a lone
    // internal vertex (a star) or a unique vertex of degree one less than
    // every other internal vertex.
    let m = match internal {
        [d] if census[d] == 1 && *d >= 2 => *d,
        [a, b] if *b == *a + 1 && census[a] == 1 && *a >= 2 => *a,
        _ => return None,
    };
    let root = (0..tree.n() as u32).find(|&v| tree.degree(v) == m)?;
    let depths = tree.bfs_distances(root);
    let mut leaf_depth = None;
    for v in 0..tree.n() as u32 {
        if tree.degree(v) == 1 {
            match leaf_depth {
                None => leaf_depth = Some(depths[v as usize]),
                Some(d) if d != depths[v as usize] => return None,
                Some(_) => {}
            }
        }
    }
    Some((m as u64, leaf_depth?, root))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistogramFormat {
    Csv,
    Json,
}

/// Serializes a histogram: CSV with a "t,count" header, or a JSON object
/// {"n": "...", "counts": {"t": "count", ...}}. Counts are decimal strings
/// in both formats so unbounded values survive any consumer.
pub fn emit_histogram(h: &DistanceHistogram, format: HistogramFormat) -> String {
    match format {
        HistogramFormat::Csv => {
            let mut out = String::from("t,count\n");
            for (t, count) in &h.counts {
                out.push_str(&format!("{t},{count}\n"));
            }
            out
        }
        HistogramFormat::Json => {
            let entries: Vec<String> = h
                .counts
                .iter()
                .map(|(t, count)| format!("\"{t}\":\"{count}\""))
                .collect();
            format!("{{\"n\":\"{}\",\"counts\":{{{}}}}}\n", h.n, entries.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcount::Count;
    use crate::oracle::{
        build_rooted, build_unrooted, distance_histogram, DEFAULT_VERTEX_BUDGET,
    };

    #[test]
    fn parses_path() {
        let (tree, labels) = parse_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(tree.n(), 3);
        assert_eq!(labels, vec!["0", "1", "2"]);
        assert_eq!(tree.degree_census(), BTreeMap::from([(1, 2), (2, 1)]));
    }

    #[test]
    fn parses_comments_blanks_and_solo() {
        let (tree, labels) = parse_edge_list("# a comment\n\nsolo x\n").unwrap();
        assert_eq!(tree.n(), 1);
        assert_eq!(labels, vec!["x"]);

        let (tree, _) = parse_edge_list("a b # trailing comment\nb c\n").unwrap();
        assert_eq!(tree.n(), 3);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_edge_list("0 1\n1 2\n2 0\n").unwrap_err(),
            ParseError::Cycle
        );
        assert_eq!(
            parse_edge_list("a b\nc d\n").unwrap_err(),
            ParseError::Disconnected
        );
        assert_eq!(
            parse_edge_list("0 1\n1 1\n").unwrap_err(),
            ParseError::SelfLoop {
                line: 2,
                label: "1".into()
            }
        );
        assert_eq!(
            parse_edge_list("0 1\n1 0\n").unwrap_err(),
            ParseError::DuplicateEdge {
                line: 2,
                u: "1".into(),
                v: "0".into()
            }
        );
        assert_eq!(
            parse_edge_list("0 1 2\n").unwrap_err(),
            ParseError::BadTokenCount { line: 1, found: 3 }
        );
        assert_eq!(parse_edge_list("# nothing\n").unwrap_err(), ParseError::Empty);
    }

    #[test]
    fn classify_builds() {
        let t = build_unrooted(2, 3, DEFAULT_VERTEX_BUDGET).unwrap();
        let c = classify(&t);
        assert_eq!(c.perfect_unrooted, Some((2, 3)));
        assert_eq!(c.perfect_rooted, None);
        assert_eq!(c.is_mary_for, Some(2));

        let t = build_rooted(3, 2, DEFAULT_VERTEX_BUDGET).unwrap();
        let c = classify(&t);
        assert_eq!(c.perfect_rooted, Some((3, 2, 0)));
        assert_eq!(c.perfect_unrooted, None);
    }

    #[test]
    fn classify_star_is_both() {
        // K_{1,3}: perfect unrooted binary of diameter 2 and perfect rooted
        // ternary of depth 1.
        let t = build_unrooted(2, 2, DEFAULT_VERTEX_BUDGET).unwrap();
        let c = classify(&t);
        assert_eq!(c.perfect_unrooted, Some((2, 2)));
        assert_eq!(c.perfect_rooted, Some((3, 1, 0)));
    }

    #[test]
    fn classify_path_and_degenerates() {
        let (path4, _) = parse_edge_list("0 1\n1 2\n2 3\n").unwrap();
        let c = classify(&path4);
        assert_eq!(c.perfect_unrooted, None);
        assert_eq!(c.perfect_rooted, None);
        assert_eq!(c.is_mary_for, None);
        assert_eq!(c.diameter, 3);

        let (solo, _) = parse_edge_list("solo a\n").unwrap();
        let c = classify(&solo);
        assert_eq!(c.perfect_unrooted, None);
        assert_eq!(c.perfect_rooted, None);
        assert_eq!(c.diameter, 0);

        let (edge, _) = parse_edge_list("a b\n").unwrap();
        let c = classify(&edge);
        assert_eq!(c.perfect_unrooted, Some((2, 1)));
    }

    #[test]
    fn imperfect_tree_not_classified() {
        // degrees all in {1,3}, but the leaf hanging off the center does
        // not attain the diameter
        let (t, _) =
            parse_edge_list("0 1\n1 2\n2 3\n3 4\n1 5\n2 6\n3 7\n").unwrap();
        let c = classify(&t);
        assert_eq!(c.perfect_unrooted, None);
    }

    #[test]
    fn emit_csv_and_json() {
        let t = build_unrooted(2, 3, DEFAULT_VERTEX_BUDGET).unwrap();
        let h = distance_histogram(&t);
        assert_eq!(
            emit_histogram(&h, HistogramFormat::Csv),
            "t,count\n1,5\n2,6\n3,4\n"
        );
        assert_eq!(
            emit_histogram(&h, HistogramFormat::Json),
            "{\"n\":\"6\",\"counts\":{\"1\":\"5\",\"2\":\"6\",\"3\":\"4\"}}\n"
        );

        let empty = DistanceHistogram {
            n: Count::from(1u32),
            counts: BTreeMap::new(),
        };
        assert_eq!(emit_histogram(&empty, HistogramFormat::Csv), "t,count\n");
        assert_eq!(
            emit_histogram(&empty, HistogramFormat::Json),
            "{\"n\":\"1\",\"counts\":{}}\n"
        );
    }

    #[test]
    fn large_counts_stay_decimal() {
        let h = DistanceHistogram {
            n: Count::from(2u32).pow(81),
            counts: BTreeMap::from([(1, Count::from(2u32).pow(80))]),
        };
        let csv = emit_histogram(&h, HistogramFormat::Csv);
        assert_eq!(csv, format!("t,count\n1,{}\n", Count::from(2u32).pow(80)));
        assert!(!csv.contains('e'));
    }

    #[test]
    fn round_trip_builds() {
        for (m, d) in [(2u64, 4u32), (3, 3), (2, 0)] {
            let t = build_unrooted(m, d, DEFAULT_VERTEX_BUDGET).unwrap();
            let (back, _) = parse_edge_list(&emit_edge_list(&t)).unwrap();
            assert_eq!(back.degree_census(), t.degree_census());
            assert_eq!(distance_histogram(&back).counts, distance_histogram(&t).counts);
        }
    }
}
