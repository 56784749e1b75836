//! Immutable undirected simple graph with dense internal ids.
//!
//! External node labels (arbitrary non-negative integers) are remapped to
//! internal ids `0..n` in first-appearance order. Neighbor lists are sorted,
//! self-loops are dropped, and duplicate edges (in either direction) are
//! merged, so every traversal is deterministic.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};

use crate::{Error, Result};

/// Compressed sparse row adjacency plus the external-id bijection.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    external_ids: Vec<u64>,
    external_to_internal: HashMap<u64, u32>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes whose external ids equal their internal
    /// ids. Self-loops are dropped; duplicate and reversed pairs are merged.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Graph {
        let pairs: Vec<(u64, u64)> = edges.iter().map(|&(u, v)| (u as u64, v as u64)).collect();
        let mut external_ids: Vec<u64> = (0..n as u64).collect();
        for &(u, v) in &pairs {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge ({u}, {v}) exceeds node count {n}"
            );
        }
        Self::build(&mut external_ids, &pairs, true)
    }

    /// Builds a graph from externally labeled pairs. Node ids are assigned in
    /// first-appearance order (source before target within each pair).
    pub fn from_labeled_edges(pairs: &[(u64, u64)]) -> Graph {
        let mut external_ids = Vec::new();
        Self::build(&mut external_ids, pairs, false)
    }

    fn build(external_ids: &mut Vec<u64>, pairs: &[(u64, u64)], preassigned: bool) -> Graph {
        let mut external_to_internal: HashMap<u64, u32> = HashMap::new();
        if preassigned {
            for (i, &ext) in external_ids.iter().enumerate() {
                external_to_internal.insert(ext, i as u32);
            }
        }
        let intern = |label: u64, ids: &mut Vec<u64>, map: &mut HashMap<u64, u32>| -> u32 {
            *map.entry(label).or_insert_with(|| {
                ids.push(label);
                (ids.len() - 1) as u32
            })
        };
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let u = intern(a, external_ids, &mut external_to_internal);
            let v = intern(b, external_ids, &mut external_to_internal);
            if u == v {
                continue;
            }
            edges.push(if u < v { (u, v) } else { (v, u) });
        }
        edges.sort_unstable();
        edges.dedup();

        let n = external_ids.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut neighbors = vec![0u32; offsets[n]];
        let mut cursor = offsets.clone();
        for &(u, v) in &edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets,
            neighbors,
            external_ids: std::mem::take(external_ids),
            external_to_internal,
            edge_count: edges.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.external_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of unordered node pairs, the cell universe for error encoding.
    pub fn pair_universe(&self) -> usize {
        let n = self.node_count();
        n * (n - 1) / 2
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn nodes(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.node_count() as u32
    }

    pub fn external_id(&self, v: u32) -> u64 {
        self.external_ids[v as usize]
    }

    pub fn internal_id(&self, external: u64) -> Option<u32> {
        self.external_to_internal.get(&external).copied()
    }

    fn check_node(&self, v: u32) -> Result<()> {
        if (v as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange(v))
        }
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// The closed neighborhood {v} ∪ N(v), sorted.
    pub fn egonet(&self, v: u32) -> Result<Vec<u32>> {
        self.check_node(v)?;
        let mut nodes = Vec::with_capacity(self.degree(v) + 1);
        nodes.extend_from_slice(self.neighbors(v));
        nodes.push(v);
        nodes.sort_unstable();
        Ok(nodes)
    }

    /// Induced subgraph on `nodes`. Local ids follow the sorted order of
    /// `nodes`; external labels are carried over so results map back to the
    /// host graph.
    pub fn induced_subgraph(&self, nodes: &[u32]) -> Result<Graph> {
        let mut sorted: Vec<u32> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            self.check_node(v)?;
        }
        let mut local = HashMap::with_capacity(sorted.len());
        for (i, &v) in sorted.iter().enumerate() {
            local.insert(v, i as u32);
        }
        let mut pairs = Vec::new();
        for &v in &sorted {
            let lv = local[&v];
            for &w in self.neighbors(v) {
                if w > v {
                    if let Some(&lw) = local.get(&w) {
                        pairs.push((
                            self.external_id(sorted[lv as usize]),
                            self.external_id(sorted[lw as usize]),
                        ));
                    }
                }
            }
        }
        let mut external_ids: Vec<u64> = sorted.iter().map(|&v| self.external_id(v)).collect();
        Ok(Self::build_preassigned(&mut external_ids, &pairs))
    }

    fn build_preassigned(external_ids: &mut Vec<u64>, pairs: &[(u64, u64)]) -> Graph {
        let mut map = HashMap::new();
        for (i, &e) in external_ids.iter().enumerate() {
            map.insert(e, i as u32);
        }
        let mut edges: Vec<(u32, u32)> = pairs
            .iter()
            .map(|&(a, b)| {
                let (u, v) = (map[&a], map[&b]);
                if u < v {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let as_u32: Vec<(u32, u32)> = edges;
        let n = external_ids.len();
        let temp = Graph::from_edges(n, &as_u32);
        Graph {
            offsets: temp.offsets,
            neighbors: temp.neighbors,
            external_ids: std::mem::take(external_ids),
            external_to_internal: map,
            edge_count: temp.edge_count,
        }
    }

    /// Counts edges of the host graph with both endpoints in `nodes`.
    pub fn induced_edge_count(&self, nodes: &[u32]) -> usize {
        let set: std::collections::HashSet<u32> = nodes.iter().copied().collect();
        let mut count = 0;
        for &v in nodes {
            for &w in self.neighbors(v) {
                if w > v && set.contains(&w) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Writes the edge list using external labels, one `u v` pair per line,
    /// smaller internal endpoint first, in internal id order.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for v in self.nodes() {
            for &u in self.neighbors(v) {
                if u > v {
                    writeln!(w, "{} {}", self.external_id(v), self.external_id(u))?;
                }
            }
        }
        Ok(())
    }
}

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

/// Loads a whitespace-separated edge list. Lines starting with `#` or `%`
/// are comments; blank lines are skipped; each data line must hold exactly
/// two non-negative integers. Gzip input is detected by its magic bytes.
pub fn load_edge_list<R: Read>(mut reader: R) -> Result<Graph> {
    let mut raw = Vec::new();
    reader.read_to_end(&mut raw)?;
    if raw.len() >= 2 && raw[..2] == GZIP_MAGIC {
        let mut decoded = Vec::new();
        flate2::read::GzDecoder::new(&raw[..]).read_to_end(&mut decoded)?;
        raw = decoded;
    }
    let mut pairs = Vec::new();
    for (idx, line) in BufReader::new(&raw[..]).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let parse = |tok: Option<&str>, line_no: usize| -> Result<u64> {
            let tok = tok.ok_or(Error::Parse {
                line: line_no,
                message: "expected two node ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node id {tok:?}"),
            })
        };
        let u = parse(tokens.next(), line_no)?;
        let v = parse(tokens.next(), line_no)?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected trailing token {extra:?}"),
            });
        }
        pairs.push((u, v));
    }
    Ok(Graph::from_labeled_edges(&pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_remaps_first_appearance() {
        let g = load_edge_list("1 2\n2 3\n3 1\n".as_bytes()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.external_id(0), 1);
        assert_eq!(g.external_id(1), 2);
        assert_eq!(g.external_id(2), 3);
        assert_eq!(g.internal_id(3), Some(2));
    }

    #[test]
    fn comments_blanks_duplicates_and_self_loops() {
        let text = "# header\n% other comment\n\n5 7\n7 5\n5 5\n7 9\n";
        let g = load_edge_list(text.as_bytes()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(g.internal_id(7).unwrap()), 2);
    }

    #[test]
    fn malformed_token_reports_line() {
        let err = load_edge_list("1 2\n3 x\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn one_token_line_is_parse_error() {
        assert!(matches!(
            load_edge_list("1\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn empty_input_yields_empty_graph() {
        let g = load_edge_list("".as_bytes()).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert!(g.connected_components().is_empty());
    }

    #[test]
    fn gzip_input_detected_by_magic_bytes() {
        use std::io::Write as _;
        let mut enc =
            flate2::write::GzEncoder::new(Vec::new(), flate2::Compression::default());
        enc.write_all(b"0 1\n1 2\n").unwrap();
        let compressed = enc.finish().unwrap();
        let g = load_edge_list(&compressed[..]).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn neighbor_lists_sorted_and_symmetric() {
        let g = Graph::from_edges(5, &[(4, 0), (2, 0), (0, 3), (3, 2)]);
        assert_eq!(g.neighbors(0), &[2, 3, 4]);
        assert!(g.has_edge(3, 0) && g.has_edge(0, 3));
        assert!(!g.has_edge(1, 2));
        assert_eq!(g.degree(1), 0);
        let total: usize = g.nodes().map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn components_ordered_by_smallest_member() {
        let g = Graph::from_edges(6, &[(3, 4), (0, 1)]);
        let comps = g.connected_components();
        assert_eq!(comps, vec![vec![0, 1], vec![2], vec![3, 4], vec![5]]);
    }

    #[test]
    fn egonet_is_closed_neighborhood() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (3, 4)]);
        assert_eq!(g.egonet(0).unwrap(), vec![0, 1, 2]);
        assert_eq!(g.egonet(3).unwrap(), vec![3, 4]);
        assert!(matches!(g.egonet(9), Err(Error::NodeOutOfRange(9))));
    }

    #[test]
    fn induced_subgraph_keeps_external_labels() {
        let g = load_edge_list("10 20\n20 30\n30 10\n30 40\n".as_bytes()).unwrap();
        let tri = [
            g.internal_id(10).unwrap(),
            g.internal_id(20).unwrap(),
            g.internal_id(30).unwrap(),
        ];
        let sub = g.induced_subgraph(&tri).unwrap();
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edge_count(), 3);
        let mut exts: Vec<u64> = sub.nodes().map(|v| sub.external_id(v)).collect();
        exts.sort_unstable();
        assert_eq!(exts, vec![10, 20, 30]);
        assert!(matches!(
            g.induced_subgraph(&[99]),
            Err(Error::NodeOutOfRange(99))
        ));
    }

    #[test]
    fn round_trip_preserves_structure() {
        let g = load_edge_list("2 7\n7 11\n11 2\n11 13\n".as_bytes()).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let h = load_edge_list(&buf[..]).unwrap();
        assert_eq!(g.node_count(), h.node_count());
        assert_eq!(g.edge_count(), h.edge_count());
        for v in g.nodes() {
            let hv = h.internal_id(g.external_id(v)).unwrap();
            let gn: Vec<u64> = g.neighbors(v).iter().map(|&w| g.external_id(w)).collect();
            let mut hn: Vec<u64> = h.neighbors(hv).iter().map(|&w| h.external_id(w)).collect();
            hn.sort_unstable();
            let mut gn_sorted = gn.clone();
            gn_sorted.sort_unstable();
            assert_eq!(gn_sorted, hn);
        }
    }
}
