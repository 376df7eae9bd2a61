//! The group algebra `KG` over a prime field `GF(p)`.
//!
//! Elements are dense coordinate vectors indexed by the group's element indices.

use crate::error::{Error, Result};
use crate::group::{is_prime, Group};

/// Group algebra of `group` over `GF(p)`.
#[derive(Clone, Copy, Debug)]
pub struct AlgebraContext<'g> {
    group: &'g Group,
    p: u8,
}

/// An element of `KG`: one coefficient in `0..p` per group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coords: Vec<u8>,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coords: vec![0; dim],
        }
    }

    pub fn from_coords(coords: Vec<u8>) -> Self {
        AlgebraElement { coords }
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [u8] {
        &mut self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `(element, coefficient)` pairs with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.coords.iter().position(|&c| c != 0)
    }
}

impl<'g> AlgebraContext<'g> {
    pub fn new(group: &'g Group, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u8::MAX as u64 {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(AlgebraContext { group, p: p as u8 })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.dim())
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(self.group.identity())
    }

    pub fn basis(&self, g: usize) -> AlgebraElement {
        let mut u = self.zero();
        u.coords[g] = 1;
        u
    }

    /// `Σ c·g` over the given terms, coefficients reduced mod `p`.
    pub fn combination(&self, terms: impl IntoIterator<Item = (i64, usize)>) -> AlgebraElement {
        let mut u = self.zero();
        for (c, g) in terms {
            let c = c.rem_euclid(self.p as i64) as u8;
            u.coords[g] = add(u.coords[g], c, self.p);
        }
        u
    }

    pub fn add(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut w = u.clone();
        axpy(&mut w.coords, 1, &v.coords, self.p);
        w
    }

    pub fn sub(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut w = u.clone();
        axpy(&mut w.coords, self.p - 1, &v.coords, self.p);
        w
    }

    pub fn scale(&self, c: u8, u: &AlgebraElement) -> AlgebraElement {
        let c = c % self.p;
        AlgebraElement {
            coords: u.coords.iter().map(|&x| mul(x, c, self.p)).collect(),
        }
    }

    pub fn neg(&self, u: &AlgebraElement) -> AlgebraElement {
        self.scale(self.p - 1, u)
    }

    /// Convolution product: `(uv)_k = Σ_{g·h = k} u_g v_h`.
    pub fn mul(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let n = self.dim();
        let p = self.p as u32;
        let mut acc = vec![0u32; n];
        for (g, cu) in u.support() {
            for (h, cv) in v.support() {
                let k = self.group.mul(g, h);
                acc[k] = (acc[k] + cu as u32 * cv as u32) % p;
            }
        }
        AlgebraElement {
            coords: acc.into_iter().map(|x| x as u8).collect(),
        }
    }

    /// `u · g` for a group element `g`: a permutation of coordinates.
    pub fn mul_right(&self, u: &AlgebraElement, g: usize) -> AlgebraElement {
        let mut w = self.zero();
        for (x, c) in u.support() {
            w.coords[self.group.mul(x, g)] = c;
        }
        w
    }

    /// `g · u` for a group element `g`.
    pub fn mul_left(&self, g: usize, u: &AlgebraElement) -> AlgebraElement {
        let mut w = self.zero();
        for (x, c) in u.support() {
            w.coords[self.group.mul(g, x)] = c;
        }
        w
    }

    /// Lie bracket `[u, v] = uv - vu`.
    pub fn lie_bracket(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        self.sub(&self.mul(u, v), &self.mul(v, u))
    }

    /// `[u, g]` for a group element `g`, without the general convolution.
    pub fn bracket_with(&self, u: &AlgebraElement, g: usize) -> AlgebraElement {
        let mut w = self.zero();
        let p = self.p;
        for (x, c) in u.support() {
            let r = self.group.mul(x, g);
            w.coords[r] = add(w.coords[r], c, p);
            let l = self.group.mul(g, x);
            w.coords[l] = add(w.coords[l], p - c, p);
        }
        w
    }

    /// Left-normed bracket `[x1, .., xn] = [[x1, .., x(n-1)], xn]`.
    pub fn left_normed(&self, args: &[AlgebraElement]) -> Result<AlgebraElement> {
        let (first, rest) = args.split_first().ok_or(Error::EmptyArguments)?;
        Ok(rest
            .iter()
            .fold(first.clone(), |acc, x| self.lie_bracket(&acc, x)))
    }

    /// `ĝ`: the sum of the elements of the cyclic subgroup `⟨g⟩`.
    pub fn hat(&self, g: usize) -> AlgebraElement {
        let mut u = self.zero();
        let mut x = self.group.identity();
        loop {
            u.coords[x] = add(u.coords[x], 1, self.p);
            x = self.group.mul(x, g);
            if x == self.group.identity() {
                return u;
            }
        }
    }

    /// Sum of coefficients.
    pub fn augmentation(&self, u: &AlgebraElement) -> u8 {
        u.coords
            .iter()
            .fold(0u8, |acc, &c| add(acc, c, self.p))
    }
}

#[inline]
pub(crate) fn add(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 + b as u16) % p as u16) as u8
}

#[inline]
pub(crate) fn mul(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 * b as u16) % p as u16) as u8
}

pub(crate) fn inverse(a: u8, p: u8) -> u8 {
    debug_assert!(a % p != 0);
    // a^(p-2) by Fermat
    let mut result = 1u8;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(result, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    result
}

/// `dst += c · src` over `GF(p)`.
pub(crate) fn axpy(dst: &mut [u8], c: u8, src: &[u8], p: u8) {
    if c == 0 {
        return;
    }
    if p == 2 {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d ^= s;
        }
    } else {
        let (c, p) = (c as u16, p as u16);
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = ((*d as u16 + c * s as u16) % p) as u8;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Permutation;

    fn group(gens: &[&[usize]]) -> Group {
        let gens: Vec<_> = gens
            .iter()
            .map(|g| Permutation::from_images(g).unwrap())
            .collect();
        Group::build(&gens, 512).unwrap()
    }

    #[test]
    fn basis_products() {
        let g = group(&[&[2, 3, 4, 1], &[3, 2, 1, 4]]);
        let ctx = AlgebraContext::new(&g, 2).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(ctx.mul(&ctx.basis(x), &ctx.basis(y)), ctx.basis(g.mul(x, y)));
            }
            assert_eq!(ctx.mul(&ctx.basis(x), &ctx.one()), ctx.basis(x));
        }
        let r = g.generators()[0];
        let one_plus_r = ctx.add(&ctx.one(), &ctx.basis(r));
        let sq = ctx.mul(&one_plus_r, &one_plus_r);
        assert_eq!(sq, ctx.add(&ctx.one(), &ctx.basis(g.pow(r, 2))));
    }

    #[test]
    fn brackets() {
        let g = group(&[&[2, 3, 4, 1], &[3, 2, 1, 4]]);
        let ctx = AlgebraContext::new(&g, 3).unwrap();
        let (r, s) = (g.generators()[0], g.generators()[1]);
        assert!(ctx.lie_bracket(&ctx.basis(r), &ctx.basis(g.pow(r, 3))).is_zero());
        let expected = ctx.combination([(1, g.mul(r, s)), (-1, g.mul(s, r))]);
        assert_eq!(ctx.lie_bracket(&ctx.basis(r), &ctx.basis(s)), expected);
        assert_eq!(ctx.bracket_with(&ctx.basis(r), s), expected);
        let u = ctx.combination([(1, r), (2, s), (1, 3)]);
        assert!(ctx.lie_bracket(&u, &u).is_zero());
        assert_eq!(ctx.left_normed(&[u.clone()]).unwrap(), u);
        assert_eq!(
            ctx.left_normed(&[u.clone(), ctx.basis(s)]).unwrap(),
            ctx.lie_bracket(&u, &ctx.basis(s))
        );
        assert_eq!(ctx.left_normed(&[]), Err(Error::EmptyArguments));
    }

    #[test]
    fn left_normed_two_routes_in_class_two() {
        // [g, h, h] evaluated by full convolution and by coordinate permutation.
        let g = group(&[&[2, 3, 4, 1], &[3, 2, 1, 4]]);
        let ctx = AlgebraContext::new(&g, 3).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                let (bx, by) = (ctx.basis(x), ctx.basis(y));
                let direct = ctx.left_normed(&[bx.clone(), by.clone(), by]).unwrap();
                let fast = ctx.bracket_with(&ctx.bracket_with(&bx, y), y);
                assert_eq!(direct, fast);
            }
        }
    }

    #[test]
    fn hats_and_augmentation() {
        let c4 = group(&[&[2, 3, 4, 1]]);
        let ctx = AlgebraContext::new(&c4, 2).unwrap();
        let g = c4.generators()[0];
        assert_eq!(ctx.hat(0), ctx.one());
        let g2 = c4.pow(g, 2);
        assert_eq!(ctx.hat(g2), ctx.combination([(1, 0), (1, g2)]));
        let one_plus_g = ctx.add(&ctx.one(), &ctx.basis(g));
        assert!(ctx.mul(&one_plus_g, &ctx.hat(g)).is_zero());
        assert_eq!(ctx.augmentation(&ctx.basis(g)), 1);
        assert_eq!(ctx.augmentation(&ctx.zero()), 0);
        assert_eq!(ctx.augmentation(&one_plus_g), 0);
    }

    #[test]
    fn field_helpers() {
        for p in [2u8, 3, 5, 7, 251] {
            for a in 1..p {
                assert_eq!(mul(a, inverse(a, p), p), 1);
            }
        }
        assert!(AlgebraContext::new(&group(&[&[2, 1]]), 4).is_err());
        assert_eq!(
            AlgebraContext::new(&group(&[&[2, 1]]), 257).unwrap_err(),
            Error::UnsupportedPrime(257)
        );
    }
}
