//! Structural invariants of Gamma(n, a): bipartiteness, chromatic number,
//! girth and odd girth, short-cycle existence and Hamiltonian cycle search.
//!
//! Everything here reads an immutable graph; the per-root BFS loops are
//! independent and deterministic (roots in ascending index order).

use crate::graph::GammaGraph;
use serde::{Deserialize, Serialize};

/// Outcome of the Hamiltonian backtracking search. Exhausting the search
/// space without a cycle is reported as `NotFound`; it is kept distinct from
/// `BudgetExceeded` so that "no cycle found" is never conflated with "search
/// gave up".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HamiltonianOutcome {
    Found { cycle: Vec<u32> },
    NotFound,
    BudgetExceeded,
    /// The search was not run at all (e.g. skipped by a flag).
    Skipped,
}

/// Structural facts about one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureReport {
    pub bipartite: bool,
    /// The two colour classes (vertex indices) when bipartite.
    pub bipartition: Option<(Vec<u32>, Vec<u32>)>,
    pub chromatic_number: u8,
    /// A proper colouring witnessing the chromatic number.
    pub coloring: Vec<u8>,
    pub girth: u32,
    /// `None` exactly when the graph is bipartite.
    pub odd_girth: Option<u32>,
    pub triangle_free: bool,
    pub has_4cycle: bool,
    pub has_6cycle: bool,
    pub hamiltonian: HamiltonianOutcome,
}

/// BFS 2-colouring; returns the two classes (sorted by index) or `None` if
/// some edge joins two vertices of equal colour.
pub fn bipartition(g: &GammaGraph) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &g.adjacency()[u] {
                let w = w as usize;
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
    }
    let class = |c: u8| {
        (0..n as u32)
            .filter(|&v| color[v as usize] == c)
            .collect::<Vec<u32>>()
    };
    Some((class(0), class(1)))
}

/// The chromatic number of a family member is 2 (n even) or 3 (n odd); the
/// returned colouring witnesses the value and is checked for properness.
/// The 3-colouring is by layer: colour of (i, j) is j.
pub fn chromatic_number(g: &GammaGraph) -> (u8, Vec<u8>) {
    let (chi, coloring) = match bipartition(g) {
        Some((x, _y)) => {
            let mut coloring = vec![1u8; g.vertex_count()];
            for v in x {
                coloring[v as usize] = 0;
            }
            (2, coloring)
        }
        None => {
            let coloring = (0..g.vertex_count())
                .map(|idx| g.vertex_at(idx).j)
                .collect();
            (3, coloring)
        }
    };
    for (u, w) in g.edges() {
        assert_ne!(
            coloring[u as usize], coloring[w as usize],
            "colouring witness is not proper"
        );
    }
    (chi, coloring)
}

/// Length of a shortest cycle, by per-root truncated BFS. For every root the
/// shortest cycle estimate through that root is `min d[u] + d[w] + 1` over
/// non-tree edges (u, w); the minimum over all roots is exact.
pub fn girth(g: &GammaGraph) -> u32 {
    let n = g.vertex_count();
    let mut best = u32::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(u32::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            // estimates from u are at least 2*dist[u], so deeper levels
            // cannot beat `best` once this holds
            if 2 * dist[u] >= best {
                break;
            }
            for &w in &g.adjacency()[u] {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    best
}

/// Length of a shortest odd cycle, or `None` when the graph is bipartite.
///
/// Runs a BFS on the bipartite double cover from every root; the distance
/// from (root, even) to (root, odd) is the shortest odd closed walk through
/// the root, and the minimum over roots is attained by a simple cycle. The
/// walk for the best root is reconstructed and verified to be one.
pub fn odd_girth(g: &GammaGraph) -> Option<u32> {
    let n = g.vertex_count();
    let mut best: Option<(u32, usize)> = None;
    let mut dist = vec![u32::MAX; 2 * n];
    for root in 0..n {
        let reach = double_cover_bfs(g, root, &mut dist, None);
        if let Some(len) = reach {
            if best.is_none_or(|(b, _)| len < b) {
                best = Some((len, root));
            }
        }
    }
    let (len, root) = best?;
    // Reconstruct the walk at the optimum and check it is a simple odd cycle.
    let mut parent = vec![usize::MAX; 2 * n];
    double_cover_bfs(g, root, &mut dist, Some(&mut parent));
    let mut walk = Vec::new();
    let mut cur = root + n; // (root, odd parity)
    while cur != usize::MAX {
        walk.push(cur % n);
        cur = parent[cur];
    }
    assert_eq!(walk.len() as u32, len + 1, "walk length mismatch");
    assert_eq!(walk[0], root);
    assert_eq!(*walk.last().unwrap(), root);
    let mut distinct: Vec<usize> = walk[1..].to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    assert_eq!(
        distinct.len(),
        walk.len() - 1,
        "shortest odd closed walk at the optimum must be a simple cycle"
    );
    for pair in walk.windows(2) {
        assert!(g.adjacent(pair[0], pair[1]), "walk edge missing");
    }
    Some(len)
}

/// BFS over (vertex, parity) pairs; returns the distance from (root, 0) to
/// (root, 1) if reachable. Parity-1 copies live at index `v + n`.
fn double_cover_bfs(
    g: &GammaGraph,
    root: usize,
    dist: &mut [u32],
    mut parent: Option<&mut [usize]>,
) -> Option<u32> {
    let n = g.vertex_count();
    dist.fill(u32::MAX);
    if let Some(p) = parent.as_deref_mut() {
        p.fill(usize::MAX);
    }
    dist[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let (v, par) = (x % n, x / n);
        for &w in &g.adjacency()[v] {
            let y = w as usize + (1 - par) * n;
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                if let Some(p) = parent.as_deref_mut() {
                    p[y] = x;
                }
                queue.push_back(y);
            }
        }
    }
    if dist[root + n] == u32::MAX {
        None
    } else {
        Some(dist[root + n])
    }
}

/// Does the graph contain a simple cycle of length exactly `k`?
/// Supported for `k` in 3..=6 (bounded DFS from every root, restricted to
/// vertices not smaller than the root).
pub fn cycle_census(g: &GammaGraph, k: u32) -> bool {
    assert!((3..=6).contains(&k), "cycle census supports lengths 3..=6");
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for root in 0..n {
        on_path[root] = true;
        if census_dfs(g, root, root, 1, k, &mut on_path) {
            on_path[root] = false;
            return true;
        }
        on_path[root] = false;
    }
    false
}

fn census_dfs(
    g: &GammaGraph,
    root: usize,
    cur: usize,
    depth: u32,
    k: u32,
    on_path: &mut [bool],
) -> bool {
    if depth == k {
        return g.adjacent(cur, root);
    }
    for &w in &g.adjacency()[cur] {
        let w = w as usize;
        if w <= root || on_path[w] {
            continue;
        }
        on_path[w] = true;
        if census_dfs(g, root, w, depth + 1, k, on_path) {
            on_path[w] = false;
            return true;
        }
        on_path[w] = false;
    }
    false
}

/// Backtracking Hamiltonian cycle search from vertex 0.
///
/// Branches are ordered by fewest remaining unvisited neighbors (ties by
/// index); prunes on stranded vertices (fewer than two usable connections)
/// and on disconnection of the unvisited region. `budget` bounds the number
/// of node expansions. A returned cycle is verified edge by edge.
pub fn hamiltonian_cycle(g: &GammaGraph, budget: u64) -> HamiltonianOutcome {
    assert!(budget > 0, "budget must be positive");
    let n = g.vertex_count();
    if n < 3 {
        return HamiltonianOutcome::NotFound;
    }
    let mut state = HamState {
        g,
        visited: vec![false; n],
        unvisited_degree: g.adjacency().iter().map(|l| l.len() as u32).collect(),
        path: Vec::with_capacity(n),
        expansions: 0,
        budget,
    };
    state.visit(0);
    let outcome = match state.extend() {
        Ok(true) => {
            let cycle: Vec<u32> = state.path.iter().map(|&v| v as u32).collect();
            verify_hamiltonian(g, &cycle);
            HamiltonianOutcome::Found { cycle }
        }
        Ok(false) => HamiltonianOutcome::NotFound,
        Err(()) => HamiltonianOutcome::BudgetExceeded,
    };
    outcome
}

/// Panics unless `cycle` visits every vertex exactly once with consecutive
/// (and wrap-around) adjacency.
pub fn verify_hamiltonian(g: &GammaGraph, cycle: &[u32]) {
    assert_eq!(cycle.len(), g.vertex_count(), "cycle must cover all vertices");
    let mut seen = vec![false; g.vertex_count()];
    for &v in cycle {
        assert!(!seen[v as usize], "vertex repeated in cycle");
        seen[v as usize] = true;
    }
    for k in 0..cycle.len() {
        let u = cycle[k] as usize;
        let w = cycle[(k + 1) % cycle.len()] as usize;
        assert!(g.adjacent(u, w), "cycle uses a non-edge {u}-{w}");
    }
}

struct HamState<'g> {
    g: &'g GammaGraph,
    visited: Vec<bool>,
    /// Number of unvisited neighbors per vertex.
    unvisited_degree: Vec<u32>,
    path: Vec<usize>,
    expansions: u64,
    budget: u64,
}

impl HamState<'_> {
    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        self.path.push(v);
        for &w in &self.g.adjacency()[v] {
            self.unvisited_degree[w as usize] -= 1;
        }
    }

    fn unvisit(&mut self, v: usize) {
        self.visited[v] = false;
        self.path.pop();
        for &w in &self.g.adjacency()[v] {
            self.unvisited_degree[w as usize] += 1;
        }
    }

    /// Ok(true): cycle completed in `path`; Ok(false): subtree exhausted;
    /// Err(()): budget ran out.
    fn extend(&mut self) -> Result<bool, ()> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(());
        }
        let n = self.g.vertex_count();
        let cur = *self.path.last().unwrap();
        if self.path.len() == n {
            return Ok(self.g.adjacent(cur, 0));
        }
        if self.pruned(cur) {
            return Ok(false);
        }
        let mut candidates: Vec<(u32, usize)> = self.g.adjacency()[cur]
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| !self.visited[w])
            .map(|w| (self.unvisited_degree[w], w))
            .collect();
        candidates.sort_unstable();
        for (_, w) in candidates {
            self.visit(w);
            if self.extend()? {
                return Ok(true);
            }
            self.unvisit(w);
        }
        Ok(false)
    }

    /// Degree and connectivity pruning over the unvisited region.
    fn pruned(&self, cur: usize) -> bool {
        let n = self.g.vertex_count();
        // every unvisited vertex still needs two usable connections, where
        // the path endpoints (0 and cur) count as available
        for v in 0..n {
            if self.visited[v] {
                continue;
            }
            let mut avail = self.unvisited_degree[v];
            if self.g.adjacent(v, 0) {
                avail += 1;
            }
            if self.g.adjacent(v, cur) {
                avail += 1;
            }
            if avail < 2 {
                return true;
            }
        }
        // the unvisited region plus the moving endpoint must be connected
        let first_unvisited = match (0..n).find(|&v| !self.visited[v]) {
            Some(v) => v,
            None => return false,
        };
        let mut seen = vec![false; n];
        let mut stack = vec![first_unvisited];
        seen[first_unvisited] = true;
        let mut count = 1usize;
        while let Some(u) = stack.pop() {
            for &w in &self.g.adjacency()[u] {
                let w = w as usize;
                if !seen[w] && !self.visited[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        let unvisited_total = (0..n).filter(|&v| !self.visited[v]).count();
        if count != unvisited_total {
            return true;
        }
        // both endpoints must reach the unvisited region
        let endpoint_stuck = |v: usize| {
            self.g.adjacency()[v]
                .iter()
                .all(|&w| self.visited[w as usize])
        };
        endpoint_stuck(cur) || endpoint_stuck(0)
    }
}

/// Computes the full structural report; `hamiltonian_budget = None` skips
/// the Hamiltonian search.
pub fn structure_report(g: &GammaGraph, hamiltonian_budget: Option<u64>) -> StructureReport {
    let bip = bipartition(g);
    let (chi, coloring) = chromatic_number(g);
    StructureReport {
        bipartite: bip.is_some(),
        bipartition: bip,
        chromatic_number: chi,
        coloring,
        girth: girth(g),
        odd_girth: odd_girth(g),
        triangle_free: !cycle_census(g, 3),
        has_4cycle: cycle_census(g, 4),
        has_6cycle: cycle_census(g, 6),
        hamiltonian: match hamiltonian_budget {
            Some(budget) => hamiltonian_cycle(g, budget),
            None => HamiltonianOutcome::Skipped,
        },
    }
}
