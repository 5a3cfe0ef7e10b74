//! Index sets of the explicit formulas: `pi(n,k)`, `Lambda(n,k,r)` and weak
//! compositions. All streams are lazy, duplicate-free, and colexicographic
//! (the last coordinate varies slowest).

/// Lazy walk over nonnegative integer vectors whose coordinates fall in
/// groups with fixed sums, subject to one fixed weighted sum.
#[derive(Debug, Clone)]
struct ConstrainedVectors {
    weights: Vec<usize>,
    groups: Vec<usize>,
    // position p is the lowest-index member of its group
    closes_group: Vec<bool>,
    vals: Vec<usize>,
    rem_group: Vec<usize>,
    rem_weight: usize,
    state: WalkState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WalkState {
    Fresh,
    AtLeaf,
    Done,
}

impl ConstrainedVectors {
    fn new(weights: Vec<usize>, groups: Vec<usize>, group_targets: Vec<usize>, weight_target: usize) -> Self {
        let len = weights.len();
        let closes_group = (0..len)
            .map(|p| !groups[..p].contains(&groups[p]))
            .collect();
        // a group with no positions must have target zero
        let empty_group_nonzero = group_targets
            .iter()
            .enumerate()
            .any(|(g, &t)| t > 0 && !groups.contains(&g));
        ConstrainedVectors {
            weights,
            groups,
            closes_group,
            vals: vec![0; len],
            rem_group: group_targets,
            rem_weight: weight_target,
            state: if empty_group_nonzero { WalkState::Done } else { WalkState::Fresh },
        }
    }

    fn len(&self) -> usize {
        self.vals.len()
    }

    // level d assigns position len-1-d
    fn slot_at(&self, level: usize) -> usize {
        self.len() - 1 - level
    }

    fn range(&self, p: usize) -> (usize, usize) {
        let rem = self.rem_group[self.groups[p]];
        if self.closes_group[p] {
            return (rem, rem);
        }
        let hi = match self.weights[p] {
            0 => rem,
            w => rem.min(self.rem_weight / w),
        };
        (0, hi)
    }

    fn assign(&mut self, p: usize, v: usize) -> bool {
        let cost = v * self.weights[p];
        if cost > self.rem_weight {
            return false;
        }
        self.vals[p] = v;
        self.rem_group[self.groups[p]] -= v;
        self.rem_weight -= cost;
        true
    }

    fn unassign(&mut self, p: usize) -> usize {
        let v = self.vals[p];
        self.rem_group[self.groups[p]] += v;
        self.rem_weight += v * self.weights[p];
        self.vals[p] = 0;
        v
    }

    /// Continues the depth-first search from `level`, trying values
    /// `>= start` there. Returns true when a complete vector is assigned.
    fn search(&mut self, mut level: usize, mut start: usize) -> bool {
        let len = self.len();
        loop {
            if level == len {
                if self.rem_weight == 0 {
                    return true;
                }
                if len == 0 {
                    return false;
                }
                level -= 1;
                start = self.unassign(self.slot_at(level)) + 1;
                continue;
            }
            let p = self.slot_at(level);
            let (lo, hi) = self.range(p);
            let v = lo.max(start);
            if v <= hi && self.assign(p, v) {
                level += 1;
                start = 0;
            } else {
                if level == 0 {
                    return false;
                }
                level -= 1;
                start = self.unassign(self.slot_at(level)) + 1;
            }
        }
    }
}

impl Iterator for ConstrainedVectors {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let found = match self.state {
            WalkState::Done => return None,
            WalkState::Fresh => self.search(0, 0),
            WalkState::AtLeaf => {
                let len = self.len();
                if len == 0 {
                    false
                } else {
                    let start = self.unassign(self.slot_at(len - 1)) + 1;
                    self.search(len - 1, start)
                }
            }
        };
        if found {
            self.state = WalkState::AtLeaf;
            Some(self.vals.clone())
        } else {
            self.state = WalkState::Done;
            None
        }
    }
}

/// Block-size multiplicities `(k_1, ..., k_n)` with `sum k_i = k` and
/// `sum i k_i = n`. `counts[i-1]` holds `k_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiIndex {
    pub counts: Vec<usize>,
}

impl PiIndex {
    /// `k_i` for `i >= 1`.
    pub fn k(&self, i: usize) -> usize {
        self.counts.get(i - 1).copied().unwrap_or(0)
    }
}

/// `(k_1..k_n; r_0..r_n)` with `sum k_i = k`, `sum r_i = r` and
/// `sum i (k_i + r_i) = n`. `ks[i-1]` holds `k_i`; `rs[i]` holds `r_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaIndex {
    pub ks: Vec<usize>,
    pub rs: Vec<usize>,
}

/// A weak composition; `parts` sum to the requested total.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionIndex {
    pub parts: Vec<usize>,
}

pub struct PiIter(ConstrainedVectors);
pub struct LambdaIter {
    inner: ConstrainedVectors,
    n: usize,
}
pub struct CompositionIter(ConstrainedVectors);

impl Iterator for PiIter {
    type Item = PiIndex;
    fn next(&mut self) -> Option<PiIndex> {
        self.0.next().map(|counts| PiIndex { counts })
    }
}

impl Iterator for LambdaIter {
    type Item = LambdaIndex;
    fn next(&mut self) -> Option<LambdaIndex> {
        self.inner.next().map(|mut v| {
            let rs = v.split_off(self.n);
            LambdaIndex { ks: v, rs }
        })
    }
}

impl Iterator for CompositionIter {
    type Item = CompositionIndex;
    fn next(&mut self) -> Option<CompositionIndex> {
        self.0.next().map(|parts| CompositionIndex { parts })
    }
}

/// Elements of `pi(n, k)`.
pub fn iter_pi(n: usize, k: usize) -> PiIter {
    PiIter(ConstrainedVectors::new(
        (1..=n).collect(),
        vec![0; n],
        vec![k],
        n,
    ))
}

/// Elements of `Lambda(n, k, r)`, truncated to length `n` (`n + 1` for the
/// `r` part); longer entries are forced to zero.
pub fn iter_lambda(n: usize, k: usize, r: usize) -> LambdaIter {
    let weights = (1..=n).chain(0..=n).collect();
    let groups = std::iter::repeat(0).take(n).chain(std::iter::repeat(1).take(n + 1)).collect();
    LambdaIter {
        inner: ConstrainedVectors::new(weights, groups, vec![k, r], n),
        n,
    }
}

/// Weak compositions of `total` into `slots` parts.
pub fn iter_compositions(total: usize, slots: usize) -> CompositionIter {
    CompositionIter(ConstrainedVectors::new(
        vec![0; slots],
        vec![0; slots],
        vec![total],
        0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn pi_three_two() {
        let all: Vec<_> = iter_pi(3, 2).collect();
        assert_eq!(all, vec![PiIndex { counts: vec![1, 1, 0] }]);
    }

    #[test]
    fn pi_all_singletons() {
        for n in 0..8 {
            let all: Vec<_> = iter_pi(n, n).collect();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].k(1), n);
        }
    }

    #[test]
    fn pi_six_three() {
        // 4+1+1, 3+2+1, 2+2+2
        let all: HashSet<_> = iter_pi(6, 3).map(|p| p.counts).collect();
        let expected: HashSet<_> = [
            vec![2, 0, 0, 1, 0, 0],
            vec![1, 1, 1, 0, 0, 0],
            vec![0, 3, 0, 0, 0, 0],
        ]
        .into_iter()
        .collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn pi_empty_cases() {
        assert_eq!(iter_pi(0, 0).count(), 1);
        assert_eq!(iter_pi(0, 1).count(), 0);
        assert_eq!(iter_pi(3, 0).count(), 0);
        assert_eq!(iter_pi(3, 4).count(), 0);
    }

    #[test]
    fn lambda_reduces_to_pi_when_r_is_zero() {
        for n in 0..9 {
            for k in 0..=n + 1 {
                let lam: Vec<_> = iter_lambda(n, k, 0).collect();
                let pi: Vec<_> = iter_pi(n, k).collect();
                assert_eq!(lam.len(), pi.len());
                for (l, p) in lam.iter().zip(&pi) {
                    assert_eq!(l.ks, p.counts);
                    assert!(l.rs.iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn lambda_zero_zero_r() {
        for r in 0..5 {
            let all: Vec<_> = iter_lambda(0, 0, r).collect();
            assert_eq!(all, vec![LambdaIndex { ks: vec![], rs: vec![r] }]);
        }
    }

    #[test]
    fn lambda_two_one_one() {
        let all: HashSet<_> = iter_lambda(2, 1, 1).collect();
        let expected: HashSet<_> = [
            LambdaIndex { ks: vec![0, 1], rs: vec![1, 0, 0] },
            LambdaIndex { ks: vec![1, 0], rs: vec![0, 1, 0] },
        ]
        .into_iter()
        .collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn compositions_small() {
        let all: HashSet<_> = iter_compositions(2, 2).map(|c| c.parts).collect();
        let expected: HashSet<_> = [vec![0, 2], vec![1, 1], vec![2, 0]].into_iter().collect();
        assert_eq!(all, expected);
        let zero: Vec<_> = iter_compositions(0, 3).map(|c| c.parts).collect();
        assert_eq!(zero, vec![vec![0, 0, 0]]);
        assert_eq!(iter_compositions(5, 3).count(), 21);
        assert_eq!(iter_compositions(0, 0).count(), 1);
        assert_eq!(iter_compositions(2, 0).count(), 0);
    }

    // Nested-loop oracle: every vector with coordinate i bounded by n / i
    // (r_0 bounded by r), filtered by the constraints.
    fn bounded_vectors(bounds: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut v = vec![0usize; bounds.len()];
        loop {
            out.push(v.clone());
            let mut i = 0;
            loop {
                if i == bounds.len() {
                    return out;
                }
                if v[i] < bounds[i] {
                    v[i] += 1;
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    fn brute_lambda(n: usize, k: usize, r: usize) -> HashSet<(Vec<usize>, Vec<usize>)> {
        let kb: Vec<usize> = (1..=n).map(|i| n / i).collect();
        let rb: Vec<usize> = (0..=n).map(|i| if i == 0 { r } else { n / i }).collect();
        let weight = |v: &[usize], offset: usize| -> usize {
            v.iter().enumerate().map(|(i, x)| (i + offset) * x).sum()
        };
        let kvs: Vec<_> = bounded_vectors(&kb)
            .into_iter()
            .filter(|v| v.iter().sum::<usize>() == k)
            .collect();
        let rvs: Vec<_> = bounded_vectors(&rb)
            .into_iter()
            .filter(|v| v.iter().sum::<usize>() == r)
            .collect();
        let mut out = HashSet::new();
        for kv in &kvs {
            for rv in &rvs {
                if weight(kv, 1) + weight(rv, 0) == n {
                    out.insert((kv.clone(), rv.clone()));
                }
            }
        }
        out
    }

    #[test]
    fn lambda_matches_nested_loop_oracle() {
        for n in 0..=8 {
            for k in 0..=n {
                for r in 0..=3 {
                    let fast: Vec<_> = iter_lambda(n, k, r).map(|l| (l.ks, l.rs)).collect();
                    let set: HashSet<_> = fast.iter().cloned().collect();
                    assert_eq!(set.len(), fast.len(), "duplicates at ({n},{k},{r})");
                    assert_eq!(set, brute_lambda(n, k, r), "(n,k,r)=({n},{k},{r})");
                }
            }
        }
    }

    #[test]
    fn streams_are_colex_and_repeatable() {
        let colex = |v: &Vec<usize>| v.iter().rev().cloned().collect::<Vec<_>>();
        for n in 0..9 {
            for k in 0..=n {
                let a: Vec<_> = iter_pi(n, k).map(|p| p.counts).collect();
                let b: Vec<_> = iter_pi(n, k).map(|p| p.counts).collect();
                assert_eq!(a, b);
                assert!(a.windows(2).all(|w| colex(&w[0]) < colex(&w[1])));
            }
        }
        let c: Vec<_> = iter_compositions(4, 3).map(|c| c.parts).collect();
        assert!(c.windows(2).all(|w| colex(&w[0]) < colex(&w[1])));
    }
}
