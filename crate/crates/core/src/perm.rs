//! Permutations of `{0, ..., n-1}` and finitely generated permutation
//! groups.
//!
//! Group order and membership go through a stabilizer chain built with the
//! Schreier-Sims procedure; the chain can be asked to respect a prescribed
//! base, which is how the arc-stabilizer query is answered (base point 0 is
//! the fixed vertex, base point 1 the arc head). Orbits on arbitrary ground
//! sets are computed by plain union-find closure under the generators.

use std::fmt;

/// A bijection of `{0, ..., n-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Function composition: `(self.compose(other))(x) = self(other(x))`,
    /// i.e. `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` composed with itself `e` times (`e = 0` gives the identity).
    pub fn power(&self, e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose(&acc);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        fn lcm(a: u64, b: u64) -> u64 {
            a / gcd_u64(a, b) * b
        }
        fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        }
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Non-trivial cycles, each starting at its smallest point, sorted by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.images)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermError {
    NotABijection,
    DegreeMismatch,
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotABijection => write!(f, "image table is not a bijection"),
            PermError::DegreeMismatch => write!(f, "permutation degrees differ"),
        }
    }
}

impl std::error::Error for PermError {}

/// Orbit partition of `{0, ..., n-1}` under a generator set, as a union-find
/// root table.
pub fn point_orbit_reps(degree: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for p in 0..degree {
            let (a, b) = (find(&mut parent, p), find(&mut parent, g.apply(p)));
            if a != b {
                // root at the smaller representative for determinism
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..degree).map(|p| find(&mut parent, p)).collect()
}

/// Number of orbits of the generator set on `{0, ..., n-1}`.
pub fn count_point_orbits(degree: usize, gens: &[Permutation]) -> usize {
    let reps = point_orbit_reps(degree, gens);
    (0..degree).filter(|&p| reps[p] == p).count()
}

struct ChainLevel {
    base_point: usize,
    /// transversal[p] = Some(u) with u(base_point) = p; the elements are
    /// words in the generators of this level's group, so they fix all the
    /// base points above.
    transversal: Vec<Option<Permutation>>,
    orbit_size: usize,
}

/// A permutation group given by generators, with a stabilizer chain for
/// order, membership and stabilizer queries.
///
/// The chain is built top-down: at each level the orbit of the base point is
/// closed under the current generating set, and Schreier's lemma produces a
/// generating set for the stabilizer, deduplicated before recursing. This is
/// quadratic in the stabilizer orders, which stays trivially cheap for the
/// groups handled here (a few thousand elements on at most ~600 points).
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<ChainLevel>,
}

impl PermGroup {
    /// Builds the stabilizer chain. `prescribed_base` seeds the base in the
    /// given order (levels are created for every prescribed point, trivial
    /// ones included); further base points are appended as needed.
    pub fn from_generators(
        degree: usize,
        generators: Vec<Permutation>,
        prescribed_base: &[usize],
    ) -> PermGroup {
        for g in &generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        let mut chain = Vec::new();
        let mut current: Vec<Permutation> = dedup_gens(&generators);
        let mut prescribed = prescribed_base.iter().copied();
        loop {
            let base_point = match prescribed.next() {
                Some(b) => b,
                None => match first_moved_point(&current, degree) {
                    Some(p) => p,
                    None => break,
                },
            };
            let level = close_level(degree, base_point, &current);
            current = schreier_generators(&level, &current);
            chain.push(level);
        }
        PermGroup {
            degree,
            generators,
            chain,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> u128 {
        self.chain.iter().map(|l| l.orbit_size as u128).product()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        self.sift(p.clone()).is_none()
    }

    /// The orbit of `point` under the stabilizer of the first `fixed` base
    /// points, together with transversal elements mapping `point` onto each
    /// orbit member. `point` must be the base point of level `fixed` if that
    /// level exists; otherwise the orbit is trivial.
    pub fn stabilizer_orbit(&self, fixed: usize, point: usize) -> Vec<(usize, Permutation)> {
        if fixed >= self.chain.len() || self.chain[fixed].base_point != point {
            return vec![(point, Permutation::identity(self.degree))];
        }
        let mut out = Vec::new();
        for (p, t) in self.chain[fixed].transversal.iter().enumerate() {
            if let Some(t) = t {
                out.push((p, t.clone()));
            }
        }
        out
    }

    /// Sifts `p` through the chain; `None` means membership.
    fn sift(&self, mut p: Permutation) -> Option<Permutation> {
        for level in &self.chain {
            let image = p.apply(level.base_point);
            match &level.transversal[image] {
                Some(u) => p = u.inverse().compose(&p),
                None => return Some(p),
            }
        }
        if p.is_identity() {
            None
        } else {
            Some(p)
        }
    }
}

fn dedup_gens(gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for g in gens {
        if !g.is_identity() && seen.insert(g.images().to_vec()) {
            out.push(g.clone());
        }
    }
    out
}

fn first_moved_point(gens: &[Permutation], degree: usize) -> Option<usize> {
    (0..degree).find(|&p| gens.iter().any(|g| g.apply(p) != p))
}

/// BFS orbit of `base_point` with transversal elements.
fn close_level(degree: usize, base_point: usize, gens: &[Permutation]) -> ChainLevel {
    let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
    transversal[base_point] = Some(Permutation::identity(degree));
    let mut frontier = std::collections::VecDeque::from([base_point]);
    let mut orbit_size = 1;
    while let Some(p) = frontier.pop_front() {
        let u = transversal[p].clone().unwrap();
        for g in gens {
            let q = g.apply(p);
            if transversal[q].is_none() {
                transversal[q] = Some(g.compose(&u));
                orbit_size += 1;
                frontier.push_back(q);
            }
        }
    }
    ChainLevel {
        base_point,
        transversal,
        orbit_size,
    }
}

/// Schreier's lemma: `{ u_{g(p)}^-1 g u_p }` generates the stabilizer of the
/// level's base point. Deduplicated, identity dropped.
fn schreier_generators(level: &ChainLevel, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (p, u) in level.transversal.iter().enumerate() {
        let u = match u {
            Some(u) => u,
            None => continue,
        };
        for g in gens {
            let q = g.apply(p);
            let v = level.transversal[q].as_ref().expect("orbit is closed");
            let s = v.inverse().compose(g).compose(u);
            debug_assert_eq!(s.apply(level.base_point), level.base_point);
            if !s.is_identity() && seen.insert(s.images().to_vec()) {
                out.push(s);
            }
        }
    }
    out
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree={}, order={}, base={:?})",
            self.degree,
            self.order(),
            self.base()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_applies_right_first() {
        // f = (0 1), g = (1 2): f.compose(g) sends 2 -> f(g(2)) = f(1) = 0
        let f = perm(&[1, 0, 2]);
        let g = perm(&[0, 2, 1]);
        assert_eq!(f.compose(&g).apply(2), 0);
        assert_eq!(g.compose(&f).apply(2), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn cycles_and_order() {
        let p = perm(&[1, 2, 0, 4, 3, 5]); // (0 1 2)(3 4)
        assert_eq!(p.cycles(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn symmetric_group_order() {
        let s1 = perm(&[1, 0, 2, 3]);
        let s2 = perm(&[1, 2, 3, 0]);
        let g = PermGroup::from_generators(4, vec![s1, s2], &[]);
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn cyclic_group_order_and_membership() {
        let rot = perm(&[1, 2, 3, 4, 0]);
        let g = PermGroup::from_generators(5, vec![rot.clone()], &[]);
        assert_eq!(g.order(), 5);
        assert!(g.contains(&rot.power(3)));
        assert!(!g.contains(&perm(&[1, 0, 2, 3, 4])));
    }

    #[test]
    fn prescribed_base_is_respected() {
        let s1 = perm(&[1, 0, 2, 3]);
        let s2 = perm(&[1, 2, 3, 0]);
        let g = PermGroup::from_generators(4, vec![s1, s2], &[2, 0]);
        assert_eq!(g.order(), 24);
        assert_eq!(&g.base()[..2], &[2, 0]);
        // stabilizer of base point 2 acts on {0,1,3} as S3: orbit of 0 has
        // size 3 and each transversal element fixes 2
        let orbit = g.stabilizer_orbit(1, 0);
        assert_eq!(orbit.len(), 3);
        for (p, t) in orbit {
            assert_eq!(t.apply(2), 2);
            assert_eq!(t.apply(0), p);
        }
    }

    #[test]
    fn orbit_counting() {
        // <(0 1)(2 3)> has orbits {0,1}, {2,3}, {4}
        let g = perm(&[1, 0, 3, 2, 4]);
        assert_eq!(count_point_orbits(5, &[g]), 3);
        assert_eq!(count_point_orbits(3, &[]), 3);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just(()).prop_perturb(move |_, mut rng| {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = (rng.next_u64() as usize) % (i + 1);
                v.swap(i, j);
            }
            Permutation::from_images(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm(12)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn power_matches_repeated_compose(p in arb_perm(9), e in 0u64..20) {
            let mut acc = Permutation::identity(9);
            for _ in 0..e {
                acc = p.compose(&acc);
            }
            prop_assert_eq!(p.power(e), acc);
        }

        #[test]
        fn order_annihilates(p in arb_perm(10)) {
            prop_assert!(p.power(p.order()).is_identity());
        }
    }
}
