//! Construction of the tetravalent graph Gamma(n, a) on the vertex set
//! `Z_n x Z_3`.
//!
//! Vertices (i, j) are stored by linear index `i + n*j`. The four edges at
//! (i, j) are (a*i + 1, j - 1), (a*i - 1, j - 1), (b*i + b, j + 1) and
//! (b*i - b, j + 1) with b = a^2; the second family is the inverse of the
//! first, which `build` verifies by constructing both and comparing.

use crate::modular::{self, ModularError};
use crate::perm::Permutation;
use serde::Serialize;

/// A vertex of Gamma(n, a): a residue pair (i mod n, j mod 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub i: u64,
    pub j: u8,
}

impl Vertex {
    pub fn label(&self) -> String {
        format!("{},{}", self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    Inadmissible(ModularError),
    VertexOutOfRange { i: u64, j: u8, n: u64 },
    TooLargeForGraph6 { vertices: u64 },
}

impl std::fmt::Display for GraphError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphError::Inadmissible(e) => write!(f, "{e}"),
            GraphError::VertexOutOfRange { i, j, n } => {
                write!(f, "vertex ({i},{j}) out of range for modulus {n}")
            }
            GraphError::TooLargeForGraph6 { vertices } => {
                write!(f, "{vertices} vertices exceed the graph6 limit")
            }
        }
    }
}

impl std::error::Error for GraphError {}

impl From<ModularError> for GraphError {
    fn from(e: ModularError) -> Self {
        GraphError::Inadmissible(e)
    }
}

/// The graph Gamma(n, a), immutable once built.
#[derive(Debug, Clone)]
pub struct GammaGraph {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    /// Sorted neighbor lists indexed by `i + n*j`.
    adjacency: Vec<Vec<u32>>,
}

impl GammaGraph {
    /// Builds Gamma(n, a) for any order-3 unit `a` mod `n` (either
    /// orientation of the pair is accepted; Gamma(n, a) and Gamma(n, a^2)
    /// are distinct labelled graphs).
    pub fn build(n: u64, a: u64) -> Result<GammaGraph, GraphError> {
        if !modular::is_order3_unit(n, a) {
            return Err(GraphError::Inadmissible(ModularError::InadmissiblePair {
                n,
                a,
                reason: "a is not an order-3 unit mod n",
            }));
        }
        let a = a % n;
        let b = modular::mul_mod(a, a, n);
        let v = (3 * n) as usize;
        let idx = |i: u64, j: u64| (i + n * j) as usize;

        // the (j-1) rule family
        let mut down_edges: Vec<(usize, usize)> = Vec::with_capacity(2 * v);
        // the (j+1) rule family
        let mut up_edges: Vec<(usize, usize)> = Vec::with_capacity(2 * v);
        for j in 0..3u64 {
            let jm = (j + 2) % 3;
            let jp = (j + 1) % 3;
            for i in 0..n {
                let ai = modular::mul_mod(a, i, n);
                let bi = modular::mul_mod(b, i, n);
                let src = idx(i, j);
                down_edges.push((src, idx((ai + 1) % n, jm)));
                down_edges.push((src, idx((ai + n - 1) % n, jm)));
                up_edges.push((src, idx((bi + b) % n, jp)));
                up_edges.push((src, idx((bi + n - b) % n, jp)));
            }
        }
        let normalize = |edges: &[(usize, usize)]| {
            let mut set: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(u, w)| if u < w { (u, w) } else { (w, u) })
                .collect();
            set.sort_unstable();
            set.dedup();
            set
        };
        let down = normalize(&down_edges);
        let up = normalize(&up_edges);
        assert_eq!(
            down, up,
            "the two edge-rule families must generate the same edge set"
        );

        let mut adjacency = vec![Vec::with_capacity(4); v];
        for &(u, w) in &down {
            assert_ne!(u, w, "self-loop produced at vertex {u}");
            adjacency[u].push(w as u32);
            adjacency[w].push(u as u32);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            assert_eq!(before, list.len(), "parallel edge at vertex {u}");
            assert_eq!(list.len(), 4, "vertex {u} is not tetravalent");
        }
        assert_eq!(down.len() as u64, 6 * n, "edge count must be 6n");
        Ok(GammaGraph { n, a, b, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn index_of(&self, v: Vertex) -> Result<usize, GraphError> {
        if v.i >= self.n || v.j >= 3 {
            return Err(GraphError::VertexOutOfRange {
                i: v.i,
                j: v.j,
                n: self.n,
            });
        }
        Ok((v.i + self.n * v.j as u64) as usize)
    }

    pub fn vertex_at(&self, index: usize) -> Vertex {
        debug_assert!(index < self.vertex_count());
        Vertex {
            i: index as u64 % self.n,
            j: (index as u64 / self.n) as u8,
        }
    }

    /// The four neighbors of `v`, sorted by (i, j).
    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>, GraphError> {
        let idx = self.index_of(v)?;
        let mut out: Vec<Vertex> = self.adjacency[idx]
            .iter()
            .map(|&w| self.vertex_at(w as usize))
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn adjacent(&self, u: usize, w: usize) -> bool {
        self.adjacency[u].binary_search(&(w as u32)).is_ok()
    }

    /// Edges as sorted index pairs (u < w), lexicographically ordered.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &w in list {
                if (u as u32) < w {
                    out.push((u as u32, w));
                }
            }
        }
        out
    }

    /// Test hook for checker-sanity runs: rewires one edge (drops the first
    /// edge at vertex 0, inserts an edge from 0 to a vertex at distance two)
    /// so that structural audits observe a defect. The result is no longer a
    /// valid family member.
    pub fn inject_edge_defect(&mut self) {
        let dropped = self.adjacency[0][0] as usize;
        self.adjacency[0].remove(0);
        let pos = self.adjacency[dropped]
            .iter()
            .position(|&w| w == 0)
            .expect("adjacency must be symmetric");
        self.adjacency[dropped].remove(pos);
        // BFS for vertices at distance exactly two from 0; prefer one in a
        // different layer so the layer colouring stays proper
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut candidates = Vec::new();
        while let Some(u) = queue.pop_front() {
            if dist[u] >= 2 {
                continue;
            }
            for &w in &self.adjacency[u] {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    if dist[w] == 2 {
                        candidates.push(w);
                    } else {
                        queue.push_back(w);
                    }
                }
            }
        }
        let k = *candidates
            .iter()
            .find(|&&w| self.vertex_at(w).j != 0)
            .or_else(|| candidates.first())
            .expect("graph has a vertex at distance two") as u32;
        self.adjacency[0].push(k);
        self.adjacency[0].sort_unstable();
        self.adjacency[k as usize].push(0);
        self.adjacency[k as usize].sort_unstable();
    }

    /// The vertex map (i, j) -> (a*i, -j), which is an isomorphism from
    /// Gamma(n, a) onto Gamma(n, a^2).
    pub fn tau_map(&self) -> Permutation {
        let v = self.vertex_count();
        let images = (0..v)
            .map(|idx| {
                let vert = self.vertex_at(idx);
                let i2 = modular::mul_mod(self.a, vert.i, self.n);
                let j2 = (3 - vert.j) % 3;
                (i2 + self.n * j2 as u64) as usize
            })
            .collect();
        Permutation::from_images(images).expect("tau is a bijection")
    }
}

/// Supported export encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Graph6,
    Dot,
    EdgeListJson,
}

impl ExportFormat {
    pub fn parse(s: &str) -> Option<ExportFormat> {
        match s {
            "graph6" => Some(ExportFormat::Graph6),
            "dot" => Some(ExportFormat::Dot),
            "json" => Some(ExportFormat::EdgeListJson),
            _ => None,
        }
    }
}

/// Serialises the graph in the requested format.
pub fn export(g: &GammaGraph, format: ExportFormat) -> Result<Vec<u8>, GraphError> {
    assert_eq!(g.edge_count() as u64, 6 * g.n, "export expects 6n edges");
    match format {
        ExportFormat::Graph6 => to_graph6(g.vertex_count(), &g.edges()),
        ExportFormat::Dot => Ok(to_dot(g).into_bytes()),
        ExportFormat::EdgeListJson => Ok(to_edge_list_json(g).into_bytes()),
    }
}

/// Standard graph6 encoding: N(n) followed by the upper triangle of the
/// adjacency matrix read column by column, six bits per byte, each byte
/// offset by 63.
pub fn to_graph6(n: usize, edges: &[(u32, u32)]) -> Result<Vec<u8>, GraphError> {
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12u32, 6, 0] {
            out.push(63 + (((n >> shift) & 0x3f) as u8));
        }
    } else if (n as u64) <= 68_719_476_735 {
        out.push(126);
        out.push(126);
        for shift in [30u32, 24, 18, 12, 6, 0] {
            out.push(63 + (((n >> shift) & 0x3f) as u8));
        }
    } else {
        return Err(GraphError::TooLargeForGraph6 {
            vertices: n as u64,
        });
    }
    let nbits = n * (n - 1) / 2;
    let mut bits = vec![false; nbits.div_ceil(6) * 6];
    let pos = |u: usize, w: usize| {
        // bit index of pair (u, w) with u < w in column-major order
        w * (w - 1) / 2 + u
    };
    for &(u, w) in edges {
        let (u, w) = (u as usize, w as usize);
        debug_assert!(u < w && w < n);
        bits[pos(u, w)] = true;
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                byte |= 1 << (5 - k);
            }
        }
        out.push(63 + byte);
    }
    Ok(out)
}

fn to_dot(g: &GammaGraph) -> String {
    let mut s = String::new();
    s.push_str(&format!("graph gamma_{}_{} {{\n", g.n, g.a));
    for (u, w) in g.edges() {
        s.push_str(&format!(
            "  \"{}\" -- \"{}\";\n",
            g.vertex_at(u as usize).label(),
            g.vertex_at(w as usize).label()
        ));
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct EdgeListJson {
    n: u64,
    a: u64,
    b: u64,
    vertices: Vec<[u64; 2]>,
    edges: Vec<[[u64; 2]; 2]>,
}

fn to_edge_list_json(g: &GammaGraph) -> String {
    let vertex_pair = |idx: usize| {
        let v = g.vertex_at(idx);
        [v.i, v.j as u64]
    };
    let doc = EdgeListJson {
        n: g.n,
        a: g.a,
        b: g.b,
        vertices: (0..g.vertex_count()).map(vertex_pair).collect(),
        edges: g
            .edges()
            .iter()
            .map(|&(u, w)| [vertex_pair(u as usize), vertex_pair(w as usize)])
            .collect(),
    };
    serde_json::to_string(&doc).expect("edge list serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: u64, j: u8) -> Vertex {
        Vertex { i, j }
    }

    #[test]
    fn build_counts() {
        let g = GammaGraph::build(9, 4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (27, 54));
        assert_eq!(g.b, 7);
        let g = GammaGraph::build(7, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (21, 42));
        let g = GammaGraph::build(14, 9).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (42, 84));
        assert_eq!(g.b, 11);
    }

    #[test]
    fn build_rejects_inadmissible() {
        assert!(GammaGraph::build(8, 3).is_err()); // 3^3 = 27 = 3 mod 8
        assert!(GammaGraph::build(9, 2).is_err()); // order 6
        assert!(GammaGraph::build(9, 1).is_err()); // identity excluded
        assert!(GammaGraph::build(9, 3).is_err()); // not a unit
    }

    #[test]
    fn neighbors_of_origin() {
        let g = GammaGraph::build(9, 4).unwrap();
        assert_eq!(
            g.neighbors(v(0, 0)).unwrap(),
            vec![v(1, 2), v(2, 1), v(7, 1), v(8, 2)]
        );
        let g = GammaGraph::build(7, 2).unwrap();
        assert_eq!(
            g.neighbors(v(0, 0)).unwrap(),
            vec![v(1, 2), v(3, 1), v(4, 1), v(6, 2)]
        );
    }

    #[test]
    fn no_self_loops_anywhere() {
        for n in [7u64, 9, 13, 14, 18, 21, 26] {
            for pair in crate::modular::admissible_pairs(n).unwrap() {
                let g = GammaGraph::build(n, pair.a).unwrap();
                for idx in 0..g.vertex_count() {
                    let vert = g.vertex_at(idx);
                    assert!(!g.neighbors(vert).unwrap().contains(&vert));
                }
            }
        }
    }

    #[test]
    fn neighbors_rejects_out_of_range() {
        let g = GammaGraph::build(9, 4).unwrap();
        assert!(g.neighbors(v(9, 0)).is_err());
        assert!(g.neighbors(v(0, 3)).is_err());
    }

    #[test]
    fn tau_fixed_point_and_image() {
        let g = GammaGraph::build(9, 4).unwrap();
        let tau = g.tau_map();
        assert_eq!(tau.apply(g.index_of(v(0, 0)).unwrap()), g.index_of(v(0, 0)).unwrap());
        assert_eq!(tau.apply(g.index_of(v(1, 2)).unwrap()), g.index_of(v(4, 1)).unwrap());
    }

    #[test]
    fn tau_maps_edges_onto_the_square_graph() {
        // tau: Gamma(7,2) -> Gamma(7,4) carries the edge set across exactly
        let g = GammaGraph::build(7, 2).unwrap();
        let h = GammaGraph::build(7, 4).unwrap();
        let tau = g.tau_map();
        let mut mapped: Vec<(u32, u32)> = g
            .edges()
            .iter()
            .map(|&(u, w)| {
                let (x, y) = (tau.apply(u as usize) as u32, tau.apply(w as usize) as u32);
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        mapped.sort_unstable();
        assert_eq!(mapped, h.edges());
    }

    /// Minimal independent graph6 decoder used as the round-trip oracle.
    fn parse_graph6(bytes: &[u8]) -> (usize, Vec<(u32, u32)>) {
        let (n, offset) = if bytes[0] == 126 {
            if bytes[1] == 126 {
                let mut n = 0usize;
                for &b in &bytes[2..8] {
                    n = (n << 6) | (b as usize - 63);
                }
                (n, 8)
            } else {
                let mut n = 0usize;
                for &b in &bytes[1..4] {
                    n = (n << 6) | (b as usize - 63);
                }
                (n, 4)
            }
        } else {
            (bytes[0] as usize - 63, 1)
        };
        let mut bits = Vec::new();
        for &b in &bytes[offset..] {
            let x = b - 63;
            for k in 0..6 {
                bits.push((x >> (5 - k)) & 1 == 1);
            }
        }
        let mut edges = Vec::new();
        let mut pos = 0;
        for w in 1..n {
            for u in 0..w {
                if bits[pos] {
                    edges.push((u as u32, w as u32));
                }
                pos += 1;
            }
        }
        (n, edges)
    }

    #[test]
    fn graph6_known_vector() {
        // 5 vertices, edges 02 04 13 34 encode to "DQc"
        let enc = to_graph6(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(enc, b"DQc".to_vec());
    }

    #[test]
    fn graph6_rejects_oversized_vertex_counts() {
        assert!(matches!(
            to_graph6(68_719_476_736, &[]),
            Err(GraphError::TooLargeForGraph6 { .. })
        ));
    }

    #[test]
    fn graph6_length_and_roundtrip() {
        let g = GammaGraph::build(7, 2).unwrap();
        let enc = export(&g, ExportFormat::Graph6).unwrap();
        assert_eq!(enc.len(), 1 + (21usize * 20 / 2).div_ceil(6)); // 36 bytes
        let (n, mut edges) = parse_graph6(&enc);
        edges.sort_unstable();
        assert_eq!(n, 21);
        assert_eq!(edges, g.edges());
    }

    #[test]
    fn graph6_multibyte_size_roundtrip() {
        // 3n = 63 vertices crosses into the three-byte length encoding
        let g = GammaGraph::build(21, 4).unwrap();
        let enc = export(&g, ExportFormat::Graph6).unwrap();
        assert_eq!(enc[0], 126);
        let (n, mut edges) = parse_graph6(&enc);
        edges.sort_unstable();
        assert_eq!(n, 63);
        assert_eq!(edges, g.edges());
    }

    #[test]
    fn dot_has_one_line_per_edge() {
        let g = GammaGraph::build(7, 2).unwrap();
        let dot = String::from_utf8(export(&g, ExportFormat::Dot).unwrap()).unwrap();
        let edge_lines = dot.lines().filter(|l| l.contains("--")).count();
        assert_eq!(edge_lines, 42);
        assert!(dot.contains("\"0,0\" -- \"1,2\";"));
    }

    #[test]
    fn json_export_fields() {
        let g = GammaGraph::build(14, 9).unwrap();
        let json = String::from_utf8(export(&g, ExportFormat::EdgeListJson).unwrap()).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["n"], 14);
        assert_eq!(doc["a"], 9);
        assert_eq!(doc["b"], 11);
        assert_eq!(doc["vertices"].as_array().unwrap().len(), 42);
        assert_eq!(doc["edges"].as_array().unwrap().len(), 84);
    }

    proptest! {
        /// graph6 must round-trip through the independent decoder for
        /// arbitrary small graphs, not just family members.
        #[test]
        fn graph6_roundtrip_random(n in 2usize..40, seed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut state = seed | 1;
            for w in 1..n {
                for u in 0..w {
                    // xorshift bit stream
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state & 1 == 1 {
                        edges.push((u as u32, w as u32));
                    }
                }
            }
            let enc = to_graph6(n, &edges).unwrap();
            let (m, decoded) = parse_graph6(&enc);
            prop_assert_eq!(m, n);
            prop_assert_eq!(decoded, edges);
        }
    }
}
