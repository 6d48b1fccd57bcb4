//! Enumeration of the four families, Green's relations on `Ω̄(X,Y)` and egg-box diagrams.

mod eggbox;
mod green;
mod oracle;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::{Context, Family, Transformation};

pub use eggbox::{eggbox, DClass, EggBox, HCell};
pub use green::{d_related, h_related, j_related, l_related, r_related, related, ElementData};
pub use oracle::{green_oracle, GreenOracle, Product};
pub use witness::{d_intermediate, j_below_witness, l_below_witness, r_below_witness};

/// Largest `n` enumerated when `INVSEMI_BUDGET` is unset.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 6;
/// Largest `n` for which the Cayley-table oracle is built.
pub const ORACLE_BUDGET: usize = 5;

/// The enumeration budget, overridable through the `INVSEMI_BUDGET` environment variable.
pub fn enumeration_budget() -> usize {
    std::env::var("INVSEMI_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GreenRelation {
    L,
    R,
    H,
    D,
    J,
}

impl GreenRelation {
    pub const ALL: [GreenRelation; 5] = [
        GreenRelation::L,
        GreenRelation::R,
        GreenRelation::H,
        GreenRelation::D,
        GreenRelation::J,
    ];
}

impl fmt::Display for GreenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for GreenRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L" => Ok(GreenRelation::L),
            "R" => Ok(GreenRelation::R),
            "H" => Ok(GreenRelation::H),
            "D" => Ok(GreenRelation::D),
            "J" => Ok(GreenRelation::J),
            other => Err(Error::Parse(format!("unknown relation `{other}`"))),
        }
    }
}

/// All members of one family for a fixed context, in lexicographic order of image sequences.
#[derive(Clone, Debug)]
pub struct SemigroupEnum {
    ctx: Context,
    family: Family,
    elements: Vec<Transformation>,
}

impl SemigroupEnum {
    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, f: &Transformation) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    pub fn contains(&self, f: &Transformation) -> bool {
        self.index_of(f).is_some()
    }

    pub fn into_elements(self) -> Vec<Transformation> {
        self.elements
    }
}

/// Every map `{0..n-1} → {0..n-1}` in lexicographic order.
pub fn all_maps(n: usize) -> impl Iterator<Item = Transformation> {
    let mut next = Some(vec![0usize; n]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut k = n;
        while k > 0 && succ[k - 1] == n - 1 {
            succ[k - 1] = 0;
            k -= 1;
        }
        if k > 0 {
            succ[k - 1] += 1;
            next = Some(succ);
        }
        Some(Transformation::from_images_unchecked(current))
    })
}

/// Enumerates `family` under the default budget.
pub fn enumerate(ctx: &Context, family: Family) -> Result<SemigroupEnum> {
    enumerate_within(ctx, family, enumeration_budget())
}

pub fn enumerate_within(ctx: &Context, family: Family, budget: usize) -> Result<SemigroupEnum> {
    if ctx.n() > budget {
        return Err(Error::BudgetExceeded { n: ctx.n(), budget });
    }
    let elements = all_maps(ctx.n())
        .filter(|f| ctx.contains(family, f))
        .collect();
    Ok(SemigroupEnum {
        ctx: ctx.clone(),
        family,
        elements,
    })
}

/// Permutations of `items` in lexicographic order of the arrangement.
pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            current.push(v);
            go(rest, current, out);
            current.pop();
            rest.insert(i, v);
        }
    }
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    go(&mut sorted, &mut Vec::new(), &mut out);
    out
}

/// The group of units of `Ω̄(X,Y)`: bijections of `X` with `Yf = Y`, sorted.
pub fn units(ctx: &Context) -> Vec<Transformation> {
    let y = ctx.y().to_vec();
    let rest = ctx.complement();
    let mut out = Vec::new();
    for py in permutations(&y) {
        for pr in permutations(&rest) {
            let mut images = vec![0; ctx.n()];
            for (&x, &v) in y.iter().zip(&py) {
                images[x] = v;
            }
            for (&x, &v) in rest.iter().zip(&pr) {
                images[x] = v;
            }
            out.push(Transformation::from_images_unchecked(images));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: usize) -> usize {
        (1..=k).product()
    }

    #[test]
    fn enumerate_examples() {
        let ctx = Context::new(3, [0, 1]).unwrap();
        let omega = enumerate(&ctx, Family::OmegaBar).unwrap();
        // brute-force filter of all 27 maps by Yf = Y
        let brute = all_maps(3)
            .filter(|f| {
                let mut img: Vec<usize> = ctx.y().iter().map(|&y| f.apply(y)).collect();
                img.sort();
                img.dedup();
                img == ctx.y()
            })
            .count();
        assert_eq!(brute, 6);
        assert_eq!(omega.len(), 6);
        assert_eq!(omega.len(), factorial(2) * 3usize.pow(1));

        let ctx = Context::new(4, [0, 1]).unwrap();
        assert_eq!(enumerate(&ctx, Family::OmegaBar).unwrap().len(), 32);

        let ctx = Context::new(2, [0, 1]).unwrap();
        let fix = enumerate(&ctx, Family::Fix).unwrap();
        assert_eq!(fix.elements(), &[Transformation::identity(2)]);
    }

    #[test]
    fn enumeration_is_sorted_and_closed() {
        for ctx in Context::all_for(3) {
            for family in Family::ALL {
                let s = enumerate(&ctx, family).unwrap();
                assert!(s.elements().windows(2).all(|w| w[0] < w[1]));
                for f in s.elements() {
                    for g in s.elements() {
                        assert!(s.contains(&f.then(g)), "{family} not closed at {ctx}");
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = Context::new(7, [0]).unwrap();
        assert_eq!(
            enumerate_within(&ctx, Family::OmegaBar, 6).unwrap_err(),
            Error::BudgetExceeded { n: 7, budget: 6 }
        );
    }

    #[test]
    fn units_examples() {
        let t = |s: &str| s.parse::<Transformation>().unwrap();
        let ctx = Context::new(3, [0, 1]).unwrap();
        assert_eq!(units(&ctx), vec![t("[0 1 2]"), t("[1 0 2]")]);
        assert_eq!(units(&Context::new(1, [0]).unwrap()), vec![t("[0]")]);
        assert_eq!(units(&Context::new(3, [0, 1, 2]).unwrap()).len(), 6);
    }

    #[test]
    fn units_are_exactly_the_invertible_elements() {
        for n in 1..=4 {
            for ctx in Context::all_for(n) {
                let s = enumerate(&ctx, Family::OmegaBar).unwrap();
                let id = Transformation::identity(n);
                let invertible: Vec<Transformation> = s
                    .elements()
                    .iter()
                    .filter(|u| {
                        s.elements()
                            .iter()
                            .any(|v| u.then(v) == id && v.then(u) == id)
                    })
                    .cloned()
                    .collect();
                assert_eq!(units(&ctx), invertible, "{ctx}");
            }
        }
    }

    #[test]
    fn relation_names() {
        for rel in GreenRelation::ALL {
            assert_eq!(rel.to_string().parse::<GreenRelation>().unwrap(), rel);
        }
        assert!("K".parse::<GreenRelation>().is_err());
    }
}
