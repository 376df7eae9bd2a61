//! Brute-force nilpotency class of the unit group of `KG` for tiny `p`-groups.
//!
//! For a `p`-group `G` over `GF(p)`, `u` is a unit iff its augmentation is
//! nonzero, and `U(KG) = GF(p)^× × V` with `V` the normalized units
//! (augmentation 1). The scalar factor is central, so `cl(U) = cl(V)`.

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::error::{Error, Result};

/// Default limit on `|V| = p^(|G| - 1)`.
pub const DEFAULT_MAX_UNITS: usize = 1 << 15;

/// Nilpotency class of `U(KG)`, by enumerating the normalized unit group.
///
/// Returns 0 when `V` is trivial (`G = 1`).
pub fn unit_group_class(ctx: &AlgebraContext<'_>, max_units: usize) -> Result<usize> {
    let group = ctx.group();
    let p = ctx.p() as u64;
    if !group.is_p_group(p) {
        return Err(Error::NotPGroup { p });
    }
    let n = group.order();
    let size = (p as usize)
        .checked_pow(n as u32 - 1)
        .filter(|&s| s <= max_units)
        .ok_or(Error::ScaleExceeded {
            size: (p as usize).saturating_pow(n as u32 - 1),
            limit: max_units,
        })?;

    let units = UnitGroup::new(ctx);
    let whole = units.generate_greedily(size);
    let gens = whole.gens.clone();
    if whole.len() == 1 {
        return Ok(0);
    }

    let mut normal_gens = gens.clone();
    let mut class = 0;
    loop {
        class += 1;
        let seeds: Vec<_> = normal_gens
            .iter()
            .flat_map(|x| gens.iter().map(move |s| (x, s)))
            .map(|(x, s)| units.commutator(x, s))
            .collect();
        let next = units.normal_closure(&seeds, &gens);
        if next.len() == 1 {
            return Ok(class);
        }
        assert!(class < n, "unit group of a p-group is nilpotent");
        normal_gens = next.gens;
    }
}

struct UnitGroup<'a, 'g> {
    ctx: &'a AlgebraContext<'g>,
    p: usize,
}

/// A subgroup of `V` with its generators and a membership table on unit codes.
struct UnitSubgroup {
    members: Vec<AlgebraElement>,
    present: Vec<bool>,
    gens: Vec<AlgebraElement>,
}

impl UnitSubgroup {
    fn len(&self) -> usize {
        self.members.len()
    }
}

impl<'a, 'g> UnitGroup<'a, 'g> {
    fn new(ctx: &'a AlgebraContext<'g>) -> Self {
        UnitGroup {
            ctx,
            p: ctx.p() as usize,
        }
    }

    fn code(&self, u: &AlgebraElement) -> usize {
        u.coords()
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + c as usize)
    }

    fn decode(&self, mut code: usize) -> AlgebraElement {
        let mut coords = vec![0u8; self.ctx.dim()];
        for c in coords.iter_mut() {
            *c = (code % self.p) as u8;
            code /= self.p;
        }
        AlgebraElement::from_coords(coords)
    }

    fn trivial(&self) -> UnitSubgroup {
        let one = self.ctx.one();
        let mut present = vec![false; self.p.pow(self.ctx.dim() as u32)];
        present[self.code(&one)] = true;
        UnitSubgroup {
            members: vec![one],
            present,
            gens: Vec::new(),
        }
    }

    fn inverse(&self, u: &AlgebraElement) -> AlgebraElement {
        let one = self.ctx.one();
        let mut prev = one.clone();
        let mut x = u.clone();
        while x != one {
            prev = x.clone();
            x = self.ctx.mul(&x, u);
        }
        prev
    }

    fn commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let ctx = self.ctx;
        let xy = ctx.mul(x, y);
        let yx_inv = ctx.mul(&self.inverse(x), &self.inverse(y));
        ctx.mul(&yx_inv, &xy)
    }

    /// Replaces `h` by `⟨h, y⟩`.
    ///
    /// A word leaving the old subgroup first does so through a right
    /// multiplication by `y`, so it suffices to start from `h·y`.
    fn extend(&self, h: &mut UnitSubgroup, y: AlgebraElement) {
        h.gens.push(y);
        let y = h.gens.last().unwrap();
        let mut head = h.members.len();
        for i in 0..head {
            let z = self.ctx.mul(&h.members[i], y);
            let code = self.code(&z);
            if !h.present[code] {
                h.present[code] = true;
                h.members.push(z);
            }
        }
        while head < h.members.len() {
            for k in 0..h.gens.len() {
                let z = self.ctx.mul(&h.members[head], &h.gens[k]);
                let code = self.code(&z);
                if !h.present[code] {
                    h.present[code] = true;
                    h.members.push(z);
                }
            }
            head += 1;
        }
    }

    /// Adds lexicographically first missing units until all of `V` is generated.
    fn generate_greedily(&self, size: usize) -> UnitSubgroup {
        let mut h = self.trivial();
        let total = self.p.pow(self.ctx.dim() as u32);
        for code in 0..total {
            if h.len() == size {
                break;
            }
            if h.present[code] {
                continue;
            }
            let u = self.decode(code);
            if self.ctx.augmentation(&u) == 1 {
                self.extend(&mut h, u);
            }
        }
        h
    }

    /// Normal closure of `seeds` in the group generated by `conj`.
    fn normal_closure(&self, seeds: &[AlgebraElement], conj: &[AlgebraElement]) -> UnitSubgroup {
        let conj_inv: Vec<_> = conj.iter().map(|s| self.inverse(s)).collect();
        let mut h = self.trivial();
        let mut pending = seeds.to_vec();
        while let Some(y) = pending.pop() {
            if h.present[self.code(&y)] {
                continue;
            }
            for (s, s_inv) in conj.iter().zip(&conj_inv) {
                pending.push(self.ctx.mul(&self.ctx.mul(s_inv, &y), s));
            }
            self.extend(&mut h, y);
        }
        h
    }
}
