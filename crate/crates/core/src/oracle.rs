//! Brute-force weighted enumeration of set partitions with `r` separated
//! elements. Used only to check the algebraic routes.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::bell::VarSeq;
use crate::error::{Error, Result};
use crate::polyring::rational::{expect_integer, factorial_q, Rational};
use crate::polyring::Poly;

/// Default cap on the ground-set size `n + r`.
pub const DEFAULT_GUARD: usize = 12;

/// The guard in force: `RBELL_GUARD` if set to an integer, else the default.
pub fn guard() -> usize {
    std::env::var("RBELL_GUARD")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Blocks,
    /// each block carries one of its `(|B|-1)!` cyclic orders
    Cycles,
    /// each block carries one of its `|B|!` linear orders
    OrderedBlocks,
}

impl StructureKind {
    fn factor(self, size: usize) -> Rational {
        match self {
            StructureKind::Blocks => Rational::from_integer(1.into()),
            StructureKind::Cycles => factorial_q(size - 1),
            StructureKind::OrderedBlocks => factorial_q(size),
        }
    }
}

/// A partition's shape: sorted `(holds a distinguished element, size)` pairs.
type Shape = Vec<(bool, usize)>;

struct Walker {
    total: usize,
    r: usize,
    blocks: usize,
    sizes: Vec<usize>,
    shapes: HashMap<Shape, u64>,
}

impl Walker {
    // element `e` joins an existing block or opens a new one
    fn walk(&mut self, e: usize) {
        let open = self.sizes.len();
        if e == self.total {
            if open == self.blocks {
                let mut shape: Shape = self.sizes.iter().enumerate().map(|(i, &s)| (i < self.r, s)).collect();
                shape.sort_unstable();
                *self.shapes.entry(shape).or_insert(0) += 1;
            }
            return;
        }
        if self.total - e < self.blocks - open {
            return;
        }
        for i in 0..open {
            self.sizes[i] += 1;
            self.walk(e + 1);
            self.sizes[i] -= 1;
        }
        if open < self.blocks {
            self.sizes.push(1);
            self.walk(e + 1);
            self.sizes.pop();
        }
    }
}

fn shapes(n: usize, k: usize, r: usize, guard: usize) -> Result<HashMap<Shape, u64>> {
    let total = n + r;
    if total > guard {
        return Err(Error::TooLarge { size: total, guard });
    }
    let mut w = Walker {
        total,
        r,
        blocks: k + r,
        sizes: vec![1; r],
        shapes: HashMap::new(),
    };
    if k <= n {
        w.walk(r);
    }
    Ok(w.shapes)
}

/// Sum over partitions of `{1..n+r}` into `k+r` blocks with `1..r` in
/// distinct blocks of the product of block weights: `b_|B|` for blocks
/// holding one of `1..r`, `a_|B|` otherwise, times the kind's factor.
pub fn oracle_sum(n: usize, k: usize, r: usize, kind: StructureKind, a: &VarSeq, b: &VarSeq) -> Result<Poly> {
    oracle_sum_guarded(n, k, r, kind, a, b, guard())
}

pub fn oracle_sum_guarded(
    n: usize,
    k: usize,
    r: usize,
    kind: StructureKind,
    a: &VarSeq,
    b: &VarSeq,
    guard: usize,
) -> Result<Poly> {
    let mut sum = Poly::zero();
    let mut shapes: Vec<_> = shapes(n, k, r, guard)?.into_iter().collect();
    shapes.sort();
    for (shape, count) in shapes {
        let mut term = Poly::constant(Rational::from_integer(count.into()));
        for (marked, size) in shape {
            let w = if marked { b.get(size) } else { a.get(size) };
            term = &term * &w.scale(&kind.factor(size));
        }
        sum += term;
    }
    Ok(sum)
}

/// Integer table of `oracle_sum` over reduced indices: `rows[n][k]` for
/// `0 <= k <= n <= n_max`, with numeric weights.
pub fn oracle_count_table(kind: StructureKind, r: usize, a: &VarSeq, b: &VarSeq, n_max: usize) -> Result<Vec<Vec<BigInt>>> {
    let guard = guard();
    if n_max + r > guard {
        return Err(Error::TooLarge { size: n_max + r, guard });
    }
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let p = oracle_sum_guarded(n, k, r, kind, a, b, guard)?;
                    let value = p.as_constant().ok_or_else(|| {
                        Error::Precondition("oracle table needs numeric weights".into())
                    })?;
                    expect_integer(&value, "oracle table entry")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::rat;

    fn ones() -> VarSeq {
        VarSeq::constant(rat(1))
    }

    #[test]
    fn two_one_one() {
        let p = oracle_sum(2, 1, 1, StructureKind::Blocks, &VarSeq::symbolic_a(), &VarSeq::symbolic_b()).unwrap();
        let expected = &Poly::a(2) * &Poly::b(1) + (&Poly::a(1) * &Poly::b(2)).scale(&rat(2));
        assert_eq!(p, expected);
    }

    #[test]
    fn separated_pair_count() {
        let p = oracle_sum(2, 0, 2, StructureKind::Blocks, &ones(), &ones()).unwrap();
        assert_eq!(p, Poly::constant(rat(4)));
    }

    #[test]
    fn all_singletons() {
        for n in 0..6 {
            let p = oracle_sum(n, n, 0, StructureKind::Blocks, &VarSeq::symbolic_a(), &VarSeq::symbolic_b()).unwrap();
            assert_eq!(p, Poly::a(1).pow(n));
        }
    }

    #[test]
    fn cycles_row_four() {
        let t = oracle_count_table(StructureKind::Cycles, 0, &ones(), &ones(), 4).unwrap();
        let row: Vec<BigInt> = [0, 6, 11, 6, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(t[4], row);
    }

    #[test]
    fn even_pairings() {
        let even = VarSeq::from_rational_fn(|l| rat(i64::from(l % 2 == 0)));
        let p = oracle_sum(4, 2, 0, StructureKind::Blocks, &even, &even).unwrap();
        assert_eq!(p, Poly::constant(rat(3)));
    }

    #[test]
    fn guard_is_enforced() {
        let err = oracle_sum_guarded(10, 2, 3, StructureKind::Blocks, &ones(), &ones(), 12).unwrap_err();
        assert_eq!(err, Error::TooLarge { size: 13, guard: 12 });
    }

    #[test]
    fn k_above_n_is_empty() {
        let p = oracle_sum(2, 3, 1, StructureKind::Blocks, &ones(), &ones()).unwrap();
        assert!(p.is_zero());
    }
}
