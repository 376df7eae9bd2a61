//! Lower and upper Lie powers of `KG` and the nilpotency indices `t_L`, `t^L`.
//!
//! The lower chain tracks the span `L_n` of all weight-`n` left-normed
//! commutators. `R^[n]` is the ideal generated by `L_n`, so it vanishes exactly
//! when `L_n` does and `t_L` is the first `n` with `L_n = 0`. Reported lower
//! dimensions are those of `L_n`, not of `R^[n]`.
//!
//! The upper chain tracks the ideals `R^(n)` themselves.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraContext;
use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};

/// Dimension profiles and indices for one group algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub p: u64,
    pub group_name: String,
    pub lower_dims: Vec<usize>,
    pub upper_dims: Vec<usize>,
    pub t_lower: usize,
    pub t_upper: usize,
}

/// A terminating chain of subspaces `X_1 ⊇ X_2 ⊇ .. ⊇ X_t = 0`.
#[derive(Clone, Debug)]
pub struct LieChain {
    terms: Vec<EchelonBasis>,
}

impl LieChain {
    /// `terms()[n - 1]` is the `n`-th term; the last one is zero.
    pub fn terms(&self) -> &[EchelonBasis] {
        &self.terms
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(EchelonBasis::dim).collect()
    }

    /// First `n` (1-based) with a zero term.
    pub fn index(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, n: usize) -> Option<&EchelonBasis> {
        self.terms.get(n.checked_sub(1)?)
    }
}

/// Default step limit: one past the general bound `|G'| + 1`.
pub fn default_bound(ctx: &AlgebraContext<'_>) -> usize {
    ctx.group().derived_subgroup().order() + 2
}

/// `span{[u, g] : u ∈ rows(current), g ∈ G}`.
fn bracket_step(ctx: &AlgebraContext<'_>, current: &EchelonBasis) -> EchelonBasis {
    let mut next = EchelonBasis::new(ctx.dim(), ctx.p());
    for row in current.rows() {
        for g in 0..ctx.dim() {
            next.insert(&ctx.bracket_with(row, g));
        }
    }
    next
}

fn run_chain(
    ctx: &AlgebraContext<'_>,
    bound: usize,
    mut step: impl FnMut(&EchelonBasis) -> EchelonBasis,
) -> Result<LieChain> {
    let mut terms = vec![EchelonBasis::full(ctx.dim(), ctx.p())];
    while !terms.last().unwrap().is_zero() {
        if terms.len() >= bound {
            return Err(Error::BoundExceeded { bound });
        }
        let next = step(terms.last().unwrap());
        terms.push(next);
    }
    Ok(LieChain { terms })
}

/// The spans `L_1 = KG`, `L_(n+1) = [L_n, KG]`, up to the first zero term.
///
/// Fails with [`Error::BoundExceeded`] if `L_bound` is still nonzero.
pub fn lower_chain(ctx: &AlgebraContext<'_>, bound: usize) -> Result<LieChain> {
    run_chain(ctx, bound, |current| bracket_step(ctx, current))
}

/// The ideals `R^(1) = KG`, `R^(n+1) = ideal generated by [R^(n), KG]`.
pub fn upper_chain(ctx: &AlgebraContext<'_>, bound: usize) -> Result<LieChain> {
    run_chain(ctx, bound, |current| {
        ideal_closure(ctx, &bracket_step(ctx, current))
    })
}

/// Two-sided ideal generated by a subspace.
///
/// Closing under left and right multiplication by the group generators is
/// enough: they generate `G` as a monoid because `G` is finite.
pub fn ideal_closure(ctx: &AlgebraContext<'_>, seed: &EchelonBasis) -> EchelonBasis {
    let group = ctx.group();
    let mut ideal = seed.clone();
    let mut pending: Vec<_> = seed.rows().to_vec();
    while let Some(u) = pending.pop() {
        if ideal.dim() == ctx.dim() {
            break;
        }
        for &g in group.generators() {
            for w in [ctx.mul_left(g, &u), ctx.mul_right(&u, g)] {
                if ideal.insert(&w) {
                    pending.push(w);
                }
            }
        }
    }
    ideal
}

/// Both chains for one `(group, p)` pair.
pub fn series_report(ctx: &AlgebraContext<'_>, group_name: &str, bound: usize) -> Result<SeriesReport> {
    let lower = lower_chain(ctx, bound)?;
    let upper = upper_chain(ctx, bound)?;
    Ok(SeriesReport {
        p: ctx.p() as u64,
        group_name: group_name.to_string(),
        lower_dims: lower.dims(),
        upper_dims: upper.dims(),
        t_lower: lower.index(),
        t_upper: upper.index(),
    })
}

/// Largest group the brute-force oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Result of the brute-force index search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteForce {
    Index(usize),
    Unresolved,
}

/// `t_L` from the definition: enumerate left-normed commutators of group elements.
///
/// Weight-`n` tuples are extended only when their commutator was independent of
/// the ones already seen at that weight, and every commutator is re-evaluated
/// from its tuple by full convolution products.
pub fn brute_force_t_lower(ctx: &AlgebraContext<'_>, max_weight: usize) -> Result<BruteForce> {
    let n = ctx.dim();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::ScaleExceeded {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut survivors: Vec<Vec<usize>> = (0..n).map(|g| vec![g]).collect();
    for weight in 2..=max_weight {
        let mut span = EchelonBasis::new(n, ctx.p());
        let mut next = Vec::new();
        for prefix in &survivors {
            for g in 0..n {
                let mut tuple = prefix.clone();
                tuple.push(g);
                let args: Vec<_> = tuple.iter().map(|&x| ctx.basis(x)).collect();
                let c = ctx.left_normed(&args)?;
                if !c.is_zero() && span.insert(&c) {
                    next.push(tuple);
                }
            }
        }
        if span.is_zero() {
            return Ok(BruteForce::Index(weight));
        }
        survivors = next;
    }
    Ok(BruteForce::Unresolved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, Permutation};

    fn group(gens: &[&[usize]]) -> Group {
        let gens: Vec<_> = gens
            .iter()
            .map(|g| Permutation::from_images(g).unwrap())
            .collect();
        Group::build(&gens, 512).unwrap()
    }

    fn d4() -> Group {
        group(&[&[2, 3, 4, 1], &[3, 2, 1, 4]])
    }

    #[test]
    fn abelian_indices() {
        let g = group(&[&[2, 1, 3, 4], &[1, 2, 4, 3]]);
        for p in [2, 3, 5] {
            let ctx = AlgebraContext::new(&g, p).unwrap();
            let lower = lower_chain(&ctx, 10).unwrap();
            assert_eq!(lower.dims(), vec![4, 0]);
            assert_eq!(lower.index(), 2);
            assert_eq!(upper_chain(&ctx, 10).unwrap().index(), 2);
            assert_eq!(brute_force_t_lower(&ctx, 10).unwrap(), BruteForce::Index(2));
        }
    }

    #[test]
    fn d4_indices() {
        let g = d4();
        let ctx = AlgebraContext::new(&g, 2).unwrap();
        assert_eq!(lower_chain(&ctx, default_bound(&ctx)).unwrap().index(), 3);
        assert_eq!(upper_chain(&ctx, default_bound(&ctx)).unwrap().index(), 3);
        assert_eq!(brute_force_t_lower(&ctx, 10).unwrap(), BruteForce::Index(3));
    }

    #[test]
    fn bound_and_scale_errors() {
        let s3 = group(&[&[2, 3, 1], &[2, 1, 3]]);
        let ctx = AlgebraContext::new(&s3, 2).unwrap();
        assert_eq!(
            lower_chain(&ctx, default_bound(&ctx)).unwrap_err(),
            Error::BoundExceeded { bound: 5 }
        );
        assert_eq!(brute_force_t_lower(&ctx, 6).unwrap(), BruteForce::Unresolved);
        let big = group(&[&[2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 1]]);
        let ctx = AlgebraContext::new(&big, 17).unwrap();
        assert!(matches!(
            brute_force_t_lower(&ctx, 3),
            Err(Error::ScaleExceeded { size: 17, .. })
        ));
    }

    #[test]
    fn ideal_closures() {
        let g = d4();
        let ctx = AlgebraContext::new(&g, 2).unwrap();
        let zero = EchelonBasis::new(8, 2);
        assert!(ideal_closure(&ctx, &zero).is_zero());
        let mut unit = EchelonBasis::new(8, 2);
        unit.insert(&ctx.one());
        assert_eq!(ideal_closure(&ctx, &unit).dim(), 8);

        let z = g.pow(g.generators()[0], 2);
        let mut seed = EchelonBasis::new(8, 2);
        seed.insert(&ctx.hat(z));
        let ideal = ideal_closure(&ctx, &seed);
        assert_eq!(ideal.dim(), 4);
        let mut expected = EchelonBasis::new(8, 2);
        for h in 0..8 {
            expected.insert(&ctx.combination([(1, h), (1, g.mul(h, z))]));
        }
        assert_eq!(ideal, expected);
    }
}
