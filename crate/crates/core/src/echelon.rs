//! Fully reduced row-echelon bases of subspaces of `GF(p)^n`.

use crate::algebra::{axpy, inverse, AlgebraElement};

/// Row-reduced spanning set of a subspace.
///
/// Every row has a leading 1 at its pivot, and every other row is zero there.
/// Rows are kept sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    n: usize,
    p: u8,
    rows: Vec<AlgebraElement>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(n: usize, p: u8) -> Self {
        EchelonBasis {
            n,
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The whole space `GF(p)^n`.
    pub fn full(n: usize, p: u8) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut u = AlgebraElement::zero(n);
                u.coords_mut()[i] = 1;
                u
            })
            .collect();
        EchelonBasis {
            n,
            p,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[AlgebraElement] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `u` after clearing every pivot position.
    pub fn reduce(&self, u: &AlgebraElement) -> AlgebraElement {
        let mut u = u.clone();
        self.reduce_in_place(&mut u);
        u
    }

    fn reduce_in_place(&self, u: &mut AlgebraElement) {
        let p = self.p;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = u.coords()[piv];
            if c != 0 {
                axpy(u.coords_mut(), p - c, row.coords(), p);
            }
        }
    }

    pub fn contains(&self, u: &AlgebraElement) -> bool {
        self.reduce(u).is_zero()
    }

    /// Adds `u` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, u: &AlgebraElement) -> bool {
        debug_assert_eq!(u.dim(), self.n);
        let mut u = u.clone();
        self.reduce_in_place(&mut u);
        let Some(piv) = u.first_nonzero() else {
            return false;
        };
        let p = self.p;
        let lead = u.coords()[piv];
        if lead != 1 {
            let s = inverse(lead, p);
            for c in u.coords_mut() {
                *c = crate::algebra::mul(*c, s, p);
            }
        }
        for row in &mut self.rows {
            let c = row.coords()[piv];
            if c != 0 {
                axpy(row.coords_mut(), p - c, u.coords(), p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, u);
        true
    }

    /// Inserts every vector; returns how many grew the span.
    pub fn extend<'a>(&mut self, us: impl IntoIterator<Item = &'a AlgebraElement>) -> usize {
        us.into_iter().filter(|u| self.insert(u)).count()
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &EchelonBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}
