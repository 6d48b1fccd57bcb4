//! Green's relations on `Ω̄(X,Y)` through their combinatorial characterizations.
//!
//! - `L`: `Xf = Xg` and equal fiber profiles of the restrictions to `Y`.
//! - `R`: `π(f) = π(g)` and `π_f(Y) = π_g(Y)`.
//! - `H`: both of the above.
//! - `D`: `|Xf \ Y| = |Xg \ Y|` and the profiles match under a permutation of `Y`.
//! - `J`: `|Xf \ Y| = |Xg \ Y|` and each profile dominates the other through an
//!   indexed cover.

use crate::error::Result;
use crate::extnat::{d_condition, j_condition, profile_of, FiberProfile};
use crate::partition::{image_fibers, same_blocks, Block, KernelPartition};
use crate::transform::{Context, Family, Transformation};

use super::GreenRelation;

/// The invariants of a member of `Ω̄(X,Y)` that the characterizations read.
#[derive(Clone, Debug)]
pub struct ElementData {
    pub image: Vec<usize>,
    pub kernel: KernelPartition,
    pub y_fibers: Vec<Block>,
    pub profile: FiberProfile,
    pub outside_y: usize,
}

impl ElementData {
    pub fn new(ctx: &Context, f: &Transformation) -> Result<Self> {
        ctx.require(Family::OmegaBar, f)?;
        Ok(ElementData {
            image: f.image(),
            kernel: KernelPartition::of(f),
            y_fibers: image_fibers(f, ctx.y()),
            profile: profile_of(ctx, f)?,
            outside_y: ctx.image_outside_y(f),
        })
    }

    pub fn l_related(&self, other: &ElementData) -> bool {
        self.image == other.image && self.profile == other.profile
    }

    pub fn r_related(&self, other: &ElementData) -> bool {
        same_blocks(self.kernel.blocks(), other.kernel.blocks())
            && same_blocks(&self.y_fibers, &other.y_fibers)
    }

    pub fn h_related(&self, other: &ElementData) -> bool {
        self.l_related(other) && self.r_related(other)
    }

    pub fn d_related(&self, other: &ElementData) -> bool {
        self.outside_y == other.outside_y
            && matches!(d_condition(&self.profile, &other.profile), Ok(Some(_)))
    }

    pub fn j_related(&self, other: &ElementData) -> Result<bool> {
        Ok(self.outside_y == other.outside_y
            && j_condition(&self.profile, &other.profile)?.is_some()
            && j_condition(&other.profile, &self.profile)?.is_some())
    }

    pub fn related(&self, rel: GreenRelation, other: &ElementData) -> Result<bool> {
        Ok(match rel {
            GreenRelation::L => self.l_related(other),
            GreenRelation::R => self.r_related(other),
            GreenRelation::H => self.h_related(other),
            GreenRelation::D => self.d_related(other),
            GreenRelation::J => self.j_related(other)?,
        })
    }
}

pub fn related(
    ctx: &Context,
    rel: GreenRelation,
    f: &Transformation,
    g: &Transformation,
) -> Result<bool> {
    let (df, dg) = (ElementData::new(ctx, f)?, ElementData::new(ctx, g)?);
    df.related(rel, &dg)
}

pub fn l_related(ctx: &Context, f: &Transformation, g: &Transformation) -> Result<bool> {
    related(ctx, GreenRelation::L, f, g)
}

pub fn r_related(ctx: &Context, f: &Transformation, g: &Transformation) -> Result<bool> {
    related(ctx, GreenRelation::R, f, g)
}

pub fn h_related(ctx: &Context, f: &Transformation, g: &Transformation) -> Result<bool> {
    related(ctx, GreenRelation::H, f, g)
}

pub fn d_related(ctx: &Context, f: &Transformation, g: &Transformation) -> Result<bool> {
    related(ctx, GreenRelation::D, f, g)
}

pub fn j_related(ctx: &Context, f: &Transformation, g: &Transformation) -> Result<bool> {
    related(ctx, GreenRelation::J, f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::semigroup::{enumerate, GreenOracle};

    fn t(s: &str) -> Transformation {
        s.parse().unwrap()
    }

    #[test]
    fn examples_at_n3() {
        let ctx = Context::new(3, [0, 1]).unwrap();
        assert!(l_related(&ctx, &t("[0 1 0]"), &t("[1 0 0]")).unwrap());
        assert!(r_related(&ctx, &t("[0 1 0]"), &t("[1 0 1]")).unwrap());
        assert!(!d_related(&ctx, &t("[0 1 2]"), &t("[0 1 0]")).unwrap());
        assert!(!j_related(&ctx, &t("[0 1 2]"), &t("[0 1 0]")).unwrap());

        let oracle = GreenOracle::new(&ctx).unwrap();
        assert!(oracle.related(GreenRelation::L, &t("[0 1 0]"), &t("[1 0 0]")));
        assert!(oracle.related(GreenRelation::R, &t("[0 1 0]"), &t("[1 0 1]")));
        assert!(!oracle.related(GreenRelation::D, &t("[0 1 2]"), &t("[0 1 0]")));
    }

    #[test]
    fn non_members_are_rejected() {
        let ctx = Context::new(3, [0, 1]).unwrap();
        assert!(matches!(
            l_related(&ctx, &t("[0 0 2]"), &t("[0 1 2]")),
            Err(Error::NotInFamily { .. })
        ));
    }

    #[test]
    fn relations_are_equivalences_and_h_is_l_and_r() {
        for ctx in Context::all_for(3) {
            let s = enumerate(&ctx, Family::OmegaBar).unwrap();
            let data: Vec<ElementData> = s
                .elements()
                .iter()
                .map(|f| ElementData::new(&ctx, f).unwrap())
                .collect();
            for rel in GreenRelation::ALL {
                let rel_at = |a: usize, b: usize| data[a].related(rel, &data[b]).unwrap();
                for a in 0..data.len() {
                    assert!(rel_at(a, a));
                    for b in 0..data.len() {
                        assert_eq!(rel_at(a, b), rel_at(b, a));
                        for c in 0..data.len() {
                            if rel_at(a, b) && rel_at(b, c) {
                                assert!(rel_at(a, c));
                            }
                        }
                    }
                }
            }
            for a in &data {
                for b in &data {
                    assert_eq!(a.h_related(b), a.l_related(b) && a.r_related(b));
                    if a.d_related(b) {
                        assert!(a.j_related(b).unwrap());
                    }
                }
            }
        }
    }
}
