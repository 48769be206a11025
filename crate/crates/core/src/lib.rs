//! Analysis toolkit for the tetravalent graph family Gamma(n, a).
//!
//! Gamma(n, a) lives on the vertex set `Z_n x Z_3`, where `a` is a unit of
//! order 3 mod n with inverse b = a^2; the edges at (i, j) are
//! (a*i +- 1, j - 1) and (b*i +- b, j + 1). The crate constructs these
//! graphs, computes their structural invariants (girth, odd girth,
//! bipartiteness, chromatic number, short cycles, Hamiltonian cycles),
//! determines the full automorphism group by partition-refinement search,
//! classifies each member as arc-, half-, vertex- or edge-transitive, and
//! decides isomorphism through canonical forms.
//!
//! Modules:
//! - [`modular`]: unit-group arithmetic, admissible pairs, relation audit
//! - [`graph`]: the graph construction and its exports (graph6, DOT, JSON)
//! - [`structure`]: structural invariants and the Hamiltonian search
//! - [`perm`]: permutations, orbits and stabilizer chains
//! - [`canon`]: refinement search, canonical certificates, automorphisms
//! - [`aut`]: the named automorphisms, transitivity, the arc probe
//! - [`analysis`]: full per-pair reports, claim checks, batch audits

pub mod analysis;
pub mod aut;
pub mod canon;
pub mod graph;
pub mod modular;
pub mod perm;
pub mod structure;
