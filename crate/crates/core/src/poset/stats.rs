use serde::Serialize;

use super::Poset;

/// Counting statistics of a poset's Hasse diagram.
///
/// `height_sum` adds, over components, the number of elements in a longest
/// chain. `width` is the size of a largest antichain, which for a disconnected
/// poset is the sum over components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PosetStats {
    pub n: usize,
    pub edges: usize,
    pub height_sum: usize,
    pub components: usize,
    pub maximal: usize,
    pub minimal: usize,
    pub width: usize,
}

impl PosetStats {
    pub fn of(p: &Poset) -> Self {
        let n = p.n();
        let components = p.components();

        // Longest chain ending at each element, counted in elements. An
        // element's down-set is strictly larger than any of its members'.
        let mut by_depth: Vec<usize> = (0..n).collect();
        by_depth.sort_by_key(|&a| p.below(a).count_ones(..));
        let mut chain = vec![1usize; n];
        for &a in &by_depth {
            chain[a] = 1 + p.below(a).ones().map(|b| chain[b]).max().unwrap_or(0);
        }
        let height_sum = components
            .iter()
            .map(|comp| comp.iter().map(|&a| chain[a]).max().unwrap_or(0))
            .sum();

        Self {
            n,
            edges: p.covers().len(),
            height_sum,
            components: components.len(),
            maximal: p.maximal().len(),
            minimal: p.minimal().len(),
            width: n - max_comparability_matching(p),
        }
    }

    fn signed(&self) -> [i64; 7] {
        [
            self.n,
            self.edges,
            self.height_sum,
            self.components,
            self.maximal,
            self.minimal,
            self.width,
        ]
        .map(|x| x as i64)
    }

    /// `e = 2n + c - M - m - h`.
    pub fn height_identity_holds(&self) -> bool {
        let [n, e, h, c, big_m, small_m, _] = self.signed();
        e == 2 * n + c - big_m - small_m - h
    }

    /// `e <= 2n - 2`.
    pub fn edge_bound_holds(&self) -> bool {
        let [n, e, ..] = self.signed();
        e <= 2 * n - 2
    }

    /// `e = n + w - M - m`.
    pub fn width_identity_holds(&self) -> bool {
        let [n, e, _, _, big_m, small_m, w] = self.signed();
        e == n + w - big_m - small_m
    }

    pub fn edge_formulas_hold(&self) -> bool {
        self.height_identity_holds() && self.edge_bound_holds() && self.width_identity_holds()
    }
}

/// Maximum matching in the bipartite graph with an edge `a -> b` for every
/// `a ≻ b`. By Dilworth, `n` minus this is the minimum chain cover size,
/// which equals the width.
fn max_comparability_matching(p: &Poset) -> usize {
    let n = p.n();
    let mut matched_to: Vec<Option<usize>> = vec![None; n];
    let mut size = 0;
    for a in 0..n {
        let mut visited = vec![false; n];
        if augment(p, a, &mut visited, &mut matched_to) {
            size += 1;
        }
    }
    size
}

fn augment(p: &Poset, a: usize, visited: &mut [bool], matched_to: &mut [Option<usize>]) -> bool {
    for b in p.below(a).ones() {
        if visited[b] {
            continue;
        }
        visited[b] = true;
        let free = match matched_to[b] {
            None => true,
            Some(owner) => augment(p, owner, visited, matched_to),
        };
        if free {
            matched_to[b] = Some(a);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_stats() {
        let s = Poset::antichain(5).stats();
        assert_eq!(
            s,
            PosetStats {
                n: 5,
                edges: 0,
                height_sum: 5,
                components: 5,
                maximal: 5,
                minimal: 5,
                width: 5
            }
        );
        assert!(s.edge_formulas_hold());
    }

    #[test]
    fn chain_stats() {
        let s = Poset::chain(6).stats();
        assert_eq!((s.edges, s.maximal, s.minimal, s.components, s.width), (5, 1, 1, 1, 1));
        assert_eq!(s.height_sum, 6);
    }

    #[test]
    fn example_one_stats() {
        let p = Poset::from_dag(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let s = p.stats();
        assert_eq!(
            (s.n, s.edges, s.components, s.maximal, s.minimal, s.height_sum, s.width),
            (4, 3, 1, 2, 1, 3, 2)
        );
        assert!(s.edge_formulas_hold());
    }

    #[test]
    fn lambda5_formulas() {
        let s = Poset::lambda(5).unwrap().stats();
        assert_eq!(
            (s.n, s.edges, s.components, s.maximal, s.minimal, s.height_sum, s.width),
            (5, 4, 1, 1, 2, 4, 2)
        );
        assert!(s.edge_formulas_hold());
    }

    #[test]
    fn singleton_formulas() {
        assert!(Poset::antichain(1).check_edge_formulas());
    }

    #[test]
    fn height_identity_needs_connected_remainder() {
        // 1 above the chains 3 > 4 and 5 > 2. Removing 1 leaves two
        // components, and the height identity overshoots by one.
        let p = Poset::from_dag(5, &[(0, 2), (0, 4), (2, 3), (4, 1)]).unwrap();
        let s = p.stats();
        assert_eq!((s.edges, s.height_sum, s.width), (4, 3, 2));
        assert!(!s.height_identity_holds());
        assert!(s.width_identity_holds() && s.edge_bound_holds());
    }

    #[test]
    fn bowtie_breaks_formulas() {
        // n=4, e=4, c=1, M=2, m=2, h=2: 2n+c-M-m-h = 3 != 4.
        assert!(!Poset::x_family(4).unwrap().check_edge_formulas());
    }
}
