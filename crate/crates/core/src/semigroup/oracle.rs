//! Green's relations straight from the definitions, by exhaustive divisibility inside the
//! enumerated monoid `Ω̄(X,Y)`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::transform::{Context, Family, Transformation};

use super::{enumerate_within, GreenRelation, SemigroupEnum, ORACLE_BUDGET};

/// The multiplication used to build the Cayley table.
pub type Product = fn(&Transformation, &Transformation) -> Transformation;

fn left_to_right(f: &Transformation, g: &Transformation) -> Transformation {
    f.then(g)
}

/// Cayley table of `Ω̄(X,Y)` with the principal one-sided and two-sided ideal of every element.
pub struct GreenOracle {
    semigroup: SemigroupEnum,
    table: Vec<u32>,
    left: Vec<BitSet>,
    right: Vec<BitSet>,
    two_sided: Vec<BitSet>,
    l_class: Vec<usize>,
    r_class: Vec<usize>,
    lr_pairs: HashSet<(usize, usize)>,
}

impl GreenOracle {
    pub fn new(ctx: &Context) -> Result<Self> {
        Self::with_product(ctx, left_to_right)
    }

    pub fn with_product(ctx: &Context, product: Product) -> Result<Self> {
        if ctx.n() > ORACLE_BUDGET {
            return Err(Error::BudgetExceeded {
                n: ctx.n(),
                budget: ORACLE_BUDGET,
            });
        }
        let semigroup = enumerate_within(ctx, Family::OmegaBar, ORACLE_BUDGET)?;
        let el = semigroup.elements();
        let len = el.len();
        let table: Vec<u32> = (0..len)
            .into_par_iter()
            .flat_map_iter(|i| {
                let semigroup = &semigroup;
                (0..len).map(move |j| {
                    let p = product(&el[i], &el[j]);
                    semigroup.index_of(&p).expect("Ω̄ is closed") as u32
                })
            })
            .collect();

        let mul = |i: usize, j: usize| table[i * len + j] as usize;
        let left: Vec<BitSet> = (0..len)
            .into_par_iter()
            .map(|g| {
                let mut set = BitSet::new(len);
                (0..len).for_each(|h| set.insert(mul(h, g)));
                set
            })
            .collect();
        let right: Vec<BitSet> = (0..len)
            .into_par_iter()
            .map(|g| {
                let mut set = BitSet::new(len);
                (0..len).for_each(|h| set.insert(mul(g, h)));
                set
            })
            .collect();
        let two_sided: Vec<BitSet> = (0..len)
            .into_par_iter()
            .map(|g| {
                let mut set = BitSet::new(len);
                for a in left[g].iter() {
                    set.union_with(&right[a]);
                }
                set
            })
            .collect();

        let classes = |ideals: &[BitSet]| {
            let mut id = vec![usize::MAX; len];
            for i in 0..len {
                if id[i] == usize::MAX {
                    for j in i..len {
                        if ideals[i] == ideals[j] {
                            id[j] = i;
                        }
                    }
                }
            }
            id
        };
        let l_class = classes(&left);
        let r_class = classes(&right);
        let lr_pairs = (0..len).map(|k| (l_class[k], r_class[k])).collect();

        Ok(GreenOracle {
            semigroup,
            table,
            left,
            right,
            two_sided,
            l_class,
            r_class,
            lr_pairs,
        })
    }

    pub fn ctx(&self) -> &Context {
        self.semigroup.ctx()
    }

    pub fn elements(&self) -> &[Transformation] {
        self.semigroup.elements()
    }

    pub fn len(&self) -> usize {
        self.semigroup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.semigroup.is_empty()
    }

    pub fn index_of(&self, f: &Transformation) -> Option<usize> {
        self.semigroup.index_of(f)
    }

    fn index(&self, f: &Transformation) -> usize {
        self.index_of(f)
            .unwrap_or_else(|| panic!("{f} is not in Ω̄ for {}", self.ctx()))
    }

    /// Index of the product of the elements at `i` and `j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.len() + j] as usize
    }

    /// `f = hg` for some `h`.
    pub fn left_divisible_at(&self, f: usize, g: usize) -> bool {
        self.left[g].contains(f)
    }

    /// `f = gh` for some `h`.
    pub fn right_divisible_at(&self, f: usize, g: usize) -> bool {
        self.right[g].contains(f)
    }

    /// `f = hgh′` for some `h`, `h′`.
    pub fn two_sided_divisible_at(&self, f: usize, g: usize) -> bool {
        self.two_sided[g].contains(f)
    }

    /// Indices of the principal two-sided ideal generated by the element at `g`.
    pub fn principal_ideal(&self, g: usize) -> impl Iterator<Item = usize> + '_ {
        self.two_sided[g].iter()
    }

    pub fn related_at(&self, rel: GreenRelation, f: usize, g: usize) -> bool {
        match rel {
            GreenRelation::L => self.l_class[f] == self.l_class[g],
            GreenRelation::R => self.r_class[f] == self.r_class[g],
            GreenRelation::H => {
                self.l_class[f] == self.l_class[g] && self.r_class[f] == self.r_class[g]
            }
            GreenRelation::D => self.lr_pairs.contains(&(self.l_class[f], self.r_class[g])),
            GreenRelation::J => self.two_sided[f] == self.two_sided[g],
        }
    }

    /// Panics when `f` or `g` is outside `Ω̄(X,Y)`.
    pub fn related(&self, rel: GreenRelation, f: &Transformation, g: &Transformation) -> bool {
        self.related_at(rel, self.index(f), self.index(g))
    }

    pub fn left_divisible(&self, f: &Transformation, g: &Transformation) -> bool {
        self.left_divisible_at(self.index(f), self.index(g))
    }

    pub fn right_divisible(&self, f: &Transformation, g: &Transformation) -> bool {
        self.right_divisible_at(self.index(f), self.index(g))
    }

    pub fn two_sided_divisible(&self, f: &Transformation, g: &Transformation) -> bool {
        self.two_sided_divisible_at(self.index(f), self.index(g))
    }
}

/// One-off oracle query; builds the whole table, so prefer [`GreenOracle`] for repeated use.
pub fn green_oracle(
    ctx: &Context,
    rel: GreenRelation,
    f: &Transformation,
    g: &Transformation,
) -> Result<bool> {
    ctx.require(Family::OmegaBar, f)?;
    ctx.require(Family::OmegaBar, g)?;
    Ok(GreenOracle::new(ctx)?.related(rel, f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{enumerate, ElementData};

    fn t(s: &str) -> Transformation {
        s.parse().unwrap()
    }

    /// Naive definitional check straight from products, for cross-checking the table.
    fn naive(
        el: &[Transformation],
        rel: GreenRelation,
        f: &Transformation,
        g: &Transformation,
    ) -> bool {
        let l_div = |a: &Transformation, b: &Transformation| el.iter().any(|h| h.then(b) == *a);
        let r_div = |a: &Transformation, b: &Transformation| el.iter().any(|h| b.then(h) == *a);
        let j_div = |a: &Transformation, b: &Transformation| {
            el.iter()
                .any(|h| el.iter().any(|k| h.then(b).then(k) == *a))
        };
        let l = |a: &Transformation, b: &Transformation| l_div(a, b) && l_div(b, a);
        let r = |a: &Transformation, b: &Transformation| r_div(a, b) && r_div(b, a);
        match rel {
            GreenRelation::L => l(f, g),
            GreenRelation::R => r(f, g),
            GreenRelation::H => l(f, g) && r(f, g),
            GreenRelation::D => el.iter().any(|k| l(f, k) && r(k, g)),
            GreenRelation::J => j_div(f, g) && j_div(g, f),
        }
    }

    #[test]
    fn table_matches_naive_definitions() {
        for n in 1..=3 {
            for ctx in Context::all_for(n) {
                let oracle = GreenOracle::new(&ctx).unwrap();
                let el = oracle.elements();
                for f in el {
                    for g in el {
                        for rel in GreenRelation::ALL {
                            assert_eq!(oracle.related(rel, f, g), naive(el, rel, f, g));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_characterizations_at_n3() {
        let ctx = Context::new(3, [0, 1]).unwrap();
        let oracle = GreenOracle::new(&ctx).unwrap();
        let s = enumerate(&ctx, Family::OmegaBar).unwrap();
        let mut pairs = 0;
        for f in s.elements() {
            for g in s.elements() {
                let (df, dg) = (
                    ElementData::new(&ctx, f).unwrap(),
                    ElementData::new(&ctx, g).unwrap(),
                );
                assert_eq!(oracle.related(GreenRelation::L, f, g), df.l_related(&dg));
                pairs += 1;
            }
        }
        assert_eq!(pairs, 36);
    }

    #[test]
    fn reflexive_and_unit_separation() {
        let ctx = Context::new(3, [0, 1]).unwrap();
        let oracle = GreenOracle::new(&ctx).unwrap();
        for f in oracle.elements() {
            for rel in GreenRelation::ALL {
                assert!(oracle.related(rel, f, f));
            }
        }
        assert!(!oracle.related(GreenRelation::J, &t("[0 1 2]"), &t("[0 1 0]")));
        assert!(green_oracle(&ctx, GreenRelation::L, &t("[0 1 0]"), &t("[1 0 0]")).unwrap());
    }

    #[test]
    fn budget_and_membership() {
        let ctx = Context::new(6, [0]).unwrap();
        assert!(matches!(
            GreenOracle::new(&ctx),
            Err(Error::BudgetExceeded { .. })
        ));
        let ctx = Context::new(3, [0, 1]).unwrap();
        assert!(green_oracle(&ctx, GreenRelation::L, &t("[0 0 2]"), &t("[0 1 2]")).is_err());
    }
}
