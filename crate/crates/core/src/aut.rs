//! The automorphism-group payload for Gamma(n, a): the three named
//! automorphisms and their relations, the regular Cayley subgroup, the full
//! group via the refinement search, transitivity classification and the
//! arc-stabilizer probe, plus isomorphism testing through canonical forms.
//!
//! Composition convention: `x.compose(y)` applies `y` first, so a product
//! written alpha*beta acts as alpha after beta.

use crate::canon::{self, BudgetExceeded, SimpleGraph};
use crate::graph::{GammaGraph, Vertex};
use crate::perm::{count_point_orbits, PermGroup, Permutation};
use serde::{Deserialize, Serialize};

/// The generators alpha, beta, gamma of the known subgroup:
/// alpha (i,j) -> (i + a^(-j), j), beta (i,j) -> (i, j+1),
/// gamma (i,j) -> (-i, j).
pub struct NamedAutomorphisms {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

impl GammaGraph {
    fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.vertex_count(), &self.edges())
    }

    fn perm_from_vertex_map(&self, f: impl Fn(Vertex) -> Vertex) -> Permutation {
        let images = (0..self.vertex_count())
            .map(|idx| {
                let v = f(self.vertex_at(idx));
                (v.i + self.n * v.j as u64) as usize
            })
            .collect();
        Permutation::from_images(images).expect("vertex map is a bijection")
    }
}

/// Builds alpha, beta, gamma and verifies each preserves the edge set and
/// has the expected order (n, 3, 2). Panics otherwise: a failure here means
/// the construction itself is broken.
pub fn named_automorphisms(g: &GammaGraph) -> NamedAutomorphisms {
    let (n, a, b) = (g.n, g.a, g.b);
    // a^(-j) for j = 0, 1, 2: 1, b, a (since a^3 = 1 and b = a^2)
    let shift = [1u64, b, a];
    let alpha = g.perm_from_vertex_map(|v| Vertex {
        i: (v.i + shift[v.j as usize]) % n,
        j: v.j,
    });
    let beta = g.perm_from_vertex_map(|v| Vertex {
        i: v.i,
        j: (v.j + 1) % 3,
    });
    let gamma = g.perm_from_vertex_map(|v| Vertex {
        i: (n - v.i) % n,
        j: v.j,
    });
    let simple = g.to_simple();
    for (name, p, ord) in [
        ("alpha", &alpha, n),
        ("beta", &beta, 3),
        ("gamma", &gamma, 2),
    ] {
        assert!(
            simple.preserves_edges(p),
            "{name} does not preserve the edge set of Gamma({n},{a})"
        );
        assert_eq!(p.order(), ord, "{name} has the wrong order");
    }
    NamedAutomorphisms { alpha, beta, gamma }
}

/// Checks the defining relations alpha*beta = beta*alpha^(a^2),
/// alpha*gamma = gamma*alpha^(-1) and beta*gamma = gamma*beta as
/// permutation identities. Returns the names of any failing relations.
pub fn check_group_relations(g: &GammaGraph, named: &NamedAutomorphisms) -> Vec<&'static str> {
    let NamedAutomorphisms { alpha, beta, gamma } = named;
    let mut failed = Vec::new();
    if alpha.compose(beta) != beta.compose(&alpha.power(g.b)) {
        failed.push("alpha*beta = beta*alpha^(a^2)");
    }
    if alpha.compose(gamma) != gamma.compose(&alpha.inverse()) {
        failed.push("alpha*gamma = gamma*alpha^(-1)");
    }
    if beta.compose(gamma) != gamma.compose(beta) {
        failed.push("beta*gamma = gamma*beta");
    }
    failed
}

/// Enumerates H = { alpha^i beta^j } and verifies it acts regularly: |H| is
/// 3n and for every ordered vertex pair exactly one element maps the first
/// onto the second.
pub fn cayley_regular_check(g: &GammaGraph) -> bool {
    let named = named_automorphisms(g);
    let vcount = g.vertex_count();
    let mut elements: Vec<Permutation> = Vec::with_capacity(vcount);
    let mut alpha_i = Permutation::identity(vcount);
    for _ in 0..g.n {
        let mut h = alpha_i.clone();
        for _ in 0..3 {
            elements.push(h.clone());
            h = named.beta.compose(&h);
        }
        alpha_i = named.alpha.compose(&alpha_i);
    }
    let mut distinct = elements.clone();
    distinct.sort_unstable_by(|p, q| p.images().cmp(q.images()));
    distinct.dedup();
    if distinct.len() != vcount {
        return false;
    }
    // sharply transitive: for each source, images of the 3n elements cover
    // the vertex set without repetition
    for v in 0..vcount {
        let mut hit = vec![false; vcount];
        for h in &elements {
            let w = h.apply(v);
            if hit[w] {
                return false;
            }
            hit[w] = true;
        }
        if hit.iter().any(|&x| !x) {
            return false;
        }
    }
    true
}

/// The full automorphism group computed by the refinement search; the order
/// comes from a stabilizer chain over the base discovered by the search.
pub fn automorphism_group(g: &GammaGraph, budget: u64) -> Result<PermGroup, BudgetExceeded> {
    let out = canon::search(&g.to_simple(), budget)?;
    Ok(PermGroup::from_generators(
        g.vertex_count(),
        out.generators,
        &out.base,
    ))
}

/// Orbit counts of the group on vertices, unordered edges and ordered arcs,
/// and the classification they induce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitivityReport {
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
    pub classification: Transitivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transitivity {
    ArcTransitive,
    HalfTransitive,
    VertexOnly,
    EdgeOnly,
    Other,
}

impl std::fmt::Display for Transitivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Transitivity::ArcTransitive => "arc-transitive",
            Transitivity::HalfTransitive => "half-transitive",
            Transitivity::VertexOnly => "vertex-only",
            Transitivity::EdgeOnly => "edge-only",
            Transitivity::Other => "other",
        };
        write!(f, "{s}")
    }
}

fn classify(vertex_orbits: usize, edge_orbits: usize, arc_orbits: usize) -> Transitivity {
    if arc_orbits == 1 {
        Transitivity::ArcTransitive
    } else if vertex_orbits == 1 && edge_orbits == 1 {
        Transitivity::HalfTransitive
    } else if vertex_orbits == 1 {
        Transitivity::VertexOnly
    } else if edge_orbits == 1 {
        Transitivity::EdgeOnly
    } else {
        Transitivity::Other
    }
}

/// Computes the orbit counts of `group` acting on the graph.
pub fn transitivity(g: &GammaGraph, group: &PermGroup) -> TransitivityReport {
    let vcount = g.vertex_count();
    let edges = g.edges();
    let edge_index: std::collections::HashMap<(u32, u32), usize> = edges
        .iter()
        .enumerate()
        .map(|(k, &e)| (e, k))
        .collect();
    // induced permutations on edges and arcs, per generator
    let mut edge_gens = Vec::new();
    let mut arc_gens = Vec::new();
    for p in group.generators() {
        let mut edge_images = vec![0usize; edges.len()];
        let mut arc_images = vec![0usize; 2 * edges.len()];
        for (k, &(u, w)) in edges.iter().enumerate() {
            let (x, y) = (p.apply(u as usize) as u32, p.apply(w as usize) as u32);
            let sorted = if x < y { (x, y) } else { (y, x) };
            let m = edge_index[&sorted];
            edge_images[k] = m;
            // arc 2k is (u, w), arc 2k+1 is (w, u)
            let (fwd, bwd) = if x < y { (2 * m, 2 * m + 1) } else { (2 * m + 1, 2 * m) };
            arc_images[2 * k] = fwd;
            arc_images[2 * k + 1] = bwd;
        }
        edge_gens.push(Permutation::from_images(edge_images).unwrap());
        arc_gens.push(Permutation::from_images(arc_images).unwrap());
    }
    let vertex_orbits = count_point_orbits(vcount, group.generators());
    let edge_orbits = count_point_orbits(edges.len(), &edge_gens);
    let arc_orbits = count_point_orbits(2 * edges.len(), &arc_gens);
    TransitivityReport {
        vertex_orbits,
        edge_orbits,
        arc_orbits,
        classification: classify(vertex_orbits, edge_orbits, arc_orbits),
    }
}

/// Looks for an automorphism fixing (0,0) and mapping (b,1) to (1,2) — the
/// arc-stabilizer probe. Given vertex- and edge-transitivity, such a map
/// exists exactly when the graph is arc-transitive. Returns a witness when
/// one exists.
pub fn arc_stabilizer_probe(g: &GammaGraph, group: &PermGroup) -> Option<Permutation> {
    let v0 = 0usize; // (0, 0)
    let vb1 = (g.b + g.n) as usize; // (b, 1)
    let target = (1 + 2 * g.n) as usize; // (1, 2)
    // chain with base starting (0,0), (b,1): level 1 is the stabilizer of
    // (0,0) acting on the orbit of (b,1)
    let chain = PermGroup::from_generators(
        g.vertex_count(),
        group.generators().to_vec(),
        &[v0, vb1],
    );
    for (point, witness) in chain.stabilizer_orbit(1, vb1) {
        if point == target {
            debug_assert_eq!(witness.apply(v0), v0);
            debug_assert_eq!(witness.apply(vb1), target);
            return Some(witness);
        }
    }
    None
}

/// Convenience wrapper computing the group first.
pub fn arc_stabilizer_probe_direct(
    g: &GammaGraph,
    budget: u64,
) -> Result<Option<Permutation>, BudgetExceeded> {
    let group = automorphism_group(g, budget)?;
    Ok(arc_stabilizer_probe(g, &group))
}

/// Canonical certificate of a family member.
pub fn canonical_form(g: &GammaGraph, budget: u64) -> Result<Vec<u8>, BudgetExceeded> {
    canon::canonical_form(&g.to_simple(), budget)
}

/// Isomorphism test: order and degree-sequence prefilter, then canonical
/// certificates.
pub fn are_isomorphic(g1: &GammaGraph, g2: &GammaGraph, budget: u64) -> Result<bool, BudgetExceeded> {
    let (s1, s2) = (g1.to_simple(), g2.to_simple());
    if s1.vertex_count() != s2.vertex_count()
        || s1.edge_count() != s2.edge_count()
        || s1.degree_sequence() != s2.degree_sequence()
    {
        return Ok(false);
    }
    Ok(canon::canonical_form(&s1, budget)? == canon::canonical_form(&s2, budget)?)
}

/// Formats a permutation in cycle notation over vertex labels "i,j".
pub fn cycles_on_vertices(g: &GammaGraph, p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|cyc| {
            let body = cyc
                .iter()
                .map(|&v| format!("({})", g.vertex_at(v).label()))
                .collect::<Vec<_>>()
                .join(" ");
            format!("({body})")
        })
        .collect::<Vec<_>>()
        .join("")
}

/// Brute-force closure of a generator set: the full element list, obtained
/// by saturating products. Intended for cross-checks on small groups.
pub fn generator_closure(degree: usize, gens: &[Permutation], cap: usize) -> Option<Vec<Permutation>> {
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![Permutation::identity(degree)];
    seen.insert(frontier[0].images().to_vec());
    while let Some(p) = frontier.pop() {
        for gen in gens {
            let q = gen.compose(&p);
            if seen.insert(q.images().to_vec()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(q);
            }
        }
    }
    Some(seen
        .into_iter()
        .map(|im| Permutation::from_images(im).unwrap())
        .collect())
}
