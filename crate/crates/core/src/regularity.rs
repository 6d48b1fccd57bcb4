//! Regular and unit-regular elements of `Ω̄(X,Y)` and its subsemigroups.

use serde::Serialize;

use crate::error::Result;
use crate::partition::transversals;
use crate::semigroup::{enumerate, units};
use crate::transform::{Context, Family, Transformation};

/// Every `g` in `family` with `fgf = f`.
pub fn pre_inverses(
    ctx: &Context,
    f: &Transformation,
    family: Family,
) -> Result<Vec<Transformation>> {
    ctx.require(family, f)?;
    let s = enumerate(ctx, family)?;
    Ok(s.into_elements()
        .into_iter()
        .filter(|g| f.then(g).then(f) == *f)
        .collect())
}

/// `f` is regular in `Ω̄(X,Y)` iff `f` restricted to `Y` is a permutation of `Y`.
pub fn is_regular(ctx: &Context, f: &Transformation) -> Result<bool> {
    ctx.require(Family::OmegaBar, f)?;
    Ok(ctx.classify(f).in_sbar)
}

pub fn is_regular_oracle(ctx: &Context, f: &Transformation) -> Result<bool> {
    ctx.require(Family::OmegaBar, f)?;
    let s = enumerate(ctx, Family::OmegaBar)?;
    Ok(s.elements().iter().any(|g| f.then(g).then(f) == *f))
}

/// A pre-inverse of `f ∈ S̄(X,Y)`: the inverse of `f` on `Y`, the least point of each fiber
/// over `Xf \ Y`, and the identity elsewhere.
pub fn constructed_pre_inverse(ctx: &Context, f: &Transformation) -> Result<Transformation> {
    ctx.require(Family::SBar, f)?;
    let n = ctx.n();
    let mask = f.image_mask();
    let mut g: Vec<usize> = (0..n).collect();
    for z in 0..n {
        if !mask[z] {
            continue;
        }
        g[z] = if ctx.in_y(z) {
            *ctx.y()
                .iter()
                .find(|&&y| f.apply(y) == z)
                .expect("f permutes Y")
        } else {
            f.fiber(z)[0]
        };
    }
    let g = Transformation::from_images_unchecked(g);
    debug_assert!(f.then(&g).then(f) == *f);
    Ok(g)
}

/// The unit `u` with `fuf = f` read off a transversal `T ⊇ Y` of `ker(f)` with
/// `|X \ T| = |X \ Xf|`: each `z ∈ Xf` goes to the point of `T` over it, and `X \ Xf` is
/// matched in order with `X \ T`.
pub fn unit_from_transversal(f: &Transformation, transversal: &[usize]) -> Option<Transformation> {
    let n = f.n();
    let mask = f.image_mask();
    let mut in_t = vec![false; n];
    for &x in transversal {
        in_t[x] = true;
    }
    let outside_image: Vec<usize> = (0..n).filter(|&z| !mask[z]).collect();
    let outside_t: Vec<usize> = (0..n).filter(|&x| !in_t[x]).collect();
    if outside_image.len() != outside_t.len() {
        return None;
    }
    let mut u = vec![usize::MAX; n];
    for &x in transversal {
        u[f.apply(x)] = x;
    }
    for (&z, &x) in outside_image.iter().zip(&outside_t) {
        u[z] = x;
    }
    Transformation::new(u).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub is_regular: bool,
    pub regular_oracle: bool,
    /// Transversal criterion.
    pub is_unit_regular: bool,
    /// Search of the unit group.
    pub unit_regular_oracle: bool,
    pub witness_pre_inverse: Option<Transformation>,
    /// Least unit `u` with `fuf = f`.
    pub witness_unit: Option<Transformation>,
    pub certifying_transversal: Option<Vec<usize>>,
}

impl RegularityReport {
    pub fn consistent(&self) -> bool {
        self.is_regular == self.regular_oracle
            && self.is_unit_regular == self.unit_regular_oracle
            && (!self.is_unit_regular || self.is_regular)
    }
}

/// First transversal `T ⊇ Y` of `ker(f)` with `|X \ T| = |X \ Xf|`.
pub fn certifying_transversal(ctx: &Context, f: &Transformation) -> Result<Option<Vec<usize>>> {
    ctx.require(Family::OmegaBar, f)?;
    let outside_image = ctx.n() - f.rank();
    Ok(transversals(f, ctx.y()).find(|t| ctx.n() - t.len() == outside_image))
}

/// Regularity and unit-regularity of `f ∈ Ω̄(X,Y)`, by characterization and by search.
pub fn is_unit_regular(ctx: &Context, f: &Transformation) -> Result<RegularityReport> {
    is_unit_regular_among(ctx, f, &units(ctx))
}

/// As [`is_unit_regular`], searching the given unit group.
pub fn is_unit_regular_among(
    ctx: &Context,
    f: &Transformation,
    unit_group: &[Transformation],
) -> Result<RegularityReport> {
    let is_regular = is_regular(ctx, f)?;
    let regular_oracle = is_regular_oracle(ctx, f)?;
    let certifying = certifying_transversal(ctx, f)?;
    let witness_unit = unit_group.iter().find(|u| f.then(u).then(f) == *f).cloned();
    let witness_pre_inverse = if is_regular {
        Some(constructed_pre_inverse(ctx, f)?)
    } else {
        None
    };
    Ok(RegularityReport {
        is_regular,
        regular_oracle,
        is_unit_regular: certifying.is_some(),
        unit_regular_oracle: witness_unit.is_some(),
        witness_pre_inverse,
        witness_unit,
        certifying_transversal: certifying,
    })
}
