//! Ideals of `Ω̄(X,Y)`: the closure `J(F)`, the sets `J(s,t)`, and the kernel.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extnat::{j_condition, n_value, profile_of, ExtNat};
use crate::semigroup::{enumerate, GreenOracle, GreenRelation};
use crate::transform::{Context, Family, Transformation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSet {
    #[serde(flatten)]
    pub ctx: Context,
    pub members: Vec<Transformation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_hint: Option<Vec<Transformation>>,
    /// Largest `|Xf \ Y|` over the members.
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl IdealSet {
    fn new(ctx: &Context, mut members: Vec<Transformation>) -> Self {
        members.sort();
        members.dedup();
        let t = members.iter().map(|f| ctx.image_outside_y(f)).max();
        IdealSet {
            ctx: ctx.clone(),
            members,
            generator_hint: None,
            t,
            warning: None,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Transformation) -> bool {
        self.members.binary_search(f).is_ok()
    }

    pub fn is_subset(&self, other: &IdealSet) -> bool {
        self.members.iter().all(|f| other.contains(f))
    }
}

/// `J(F)`: every `f ∈ Ω̄(X,Y)` with some `g ∈ F` such that `|Xf \ Y| ≤ |Xg \ Y|` and the
/// profile of `f` dominates that of `g` through an indexed cover.
pub fn j_of_f(ctx: &Context, generators: &[Transformation]) -> Result<IdealSet> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut gens = Vec::with_capacity(generators.len());
    for g in generators {
        gens.push((ctx.image_outside_y(g), profile_of(ctx, g)?));
    }
    let mut members = Vec::new();
    for f in enumerate(ctx, Family::OmegaBar)?.into_elements() {
        let (outside, pf) = (ctx.image_outside_y(&f), profile_of(ctx, &f)?);
        let mut hit = false;
        for (g_out, pg) in &gens {
            if outside <= *g_out && j_condition(&pf, pg)?.is_some() {
                hit = true;
                break;
            }
        }
        if hit {
            members.push(f);
        }
    }
    let mut set = IdealSet::new(ctx, members);
    let mut hint = generators.to_vec();
    hint.sort();
    hint.dedup();
    set.generator_hint = Some(hint);
    Ok(set)
}

/// Whether `F` is nonempty and absorbs multiplication by `Ω̄(X,Y)` on both sides.
pub fn is_ideal(ctx: &Context, set: &[Transformation]) -> Result<bool> {
    for f in set {
        ctx.require(Family::OmegaBar, f)?;
    }
    if set.is_empty() {
        return Ok(false);
    }
    let mut sorted = set.to_vec();
    sorted.sort();
    let inside = |f: &Transformation| sorted.binary_search(f).is_ok();
    let s = enumerate(ctx, Family::OmegaBar)?;
    // one-sided closure on both sides gives hfh′ closure because Ω̄ contains the identity
    Ok(sorted.iter().all(|f| {
        s.elements()
            .iter()
            .all(|h| inside(&h.then(f)) && inside(&f.then(h)))
    }))
}

/// Every ideal of `Ω̄(X,Y)`, found among unions of `J`-classes and ordered by size.
pub fn ideals_all(ctx: &Context) -> Result<Vec<IdealSet>> {
    let oracle = GreenOracle::new(ctx)?;
    let len = oracle.len();
    let mut class_of = vec![usize::MAX; len];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..len {
        if class_of[i] == usize::MAX {
            let members: Vec<usize> = (i..len)
                .filter(|&j| oracle.related_at(GreenRelation::J, i, j))
                .collect();
            for &j in &members {
                class_of[j] = classes.len();
            }
            classes.push(members);
        }
    }
    if classes.len() >= 31 {
        return Err(Error::SearchTooLarge {
            len: classes.len(),
            cap: 30,
        });
    }
    let mut found = Vec::new();
    for mask in 1u32..1 << classes.len() {
        let mut inside = vec![false; len];
        for (c, members) in classes.iter().enumerate() {
            if mask >> c & 1 == 1 {
                for &i in members {
                    inside[i] = true;
                }
            }
        }
        let closed = (0..len)
            .filter(|&i| inside[i])
            .all(|i| (0..len).all(|h| inside[oracle.mul(h, i)] && inside[oracle.mul(i, h)]));
        if closed {
            let members = (0..len)
                .filter(|&i| inside[i])
                .map(|i| oracle.elements()[i].clone())
                .collect();
            found.push(IdealSet::new(ctx, members));
        }
    }
    found.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    Ok(found)
}

/// `J(s,t) = { f ∈ Ω̄(X,Y) : n(f|Y) ≤ s and |Xf \ Y| ≤ t }` with `n` taken relative to `|Y|`.
pub fn j_st(ctx: &Context, s: ExtNat, t: usize) -> Result<IdealSet> {
    let max = ctx.n() - ctx.y().len();
    if t > max {
        return Err(Error::ThresholdOutOfRange { t, max });
    }
    let ambient = ExtNat::from(ctx.y().len());
    let mut members = Vec::new();
    for f in enumerate(ctx, Family::OmegaBar)?.into_elements() {
        if n_value(&profile_of(ctx, &f)?, ambient) <= s && ctx.image_outside_y(&f) <= t {
            members.push(f);
        }
    }
    let mut set = IdealSet::new(ctx, members);
    set.t = Some(t);
    let y_len = ctx.y().len();
    if y_len >= 2 && s < ambient {
        set.warning = Some(format!(
            "finite Y: n(f|Y) = {y_len} for every f, so s = {s} selects nothing"
        ));
    }
    Ok(set)
}

/// The least ideal, as the intersection of all ideals.
pub fn kernel(ctx: &Context) -> Result<IdealSet> {
    let all = ideals_all(ctx)?;
    let members = all[0]
        .members
        .iter()
        .filter(|f| all.iter().all(|i| i.contains(f)))
        .cloned()
        .collect();
    Ok(IdealSet::new(ctx, members))
}

/// `{ f ∈ Ω̄(X,Y) : Xf = Y }`.
pub fn kernel_closed_form(ctx: &Context) -> Result<Vec<Transformation>> {
    Ok(enumerate(ctx, Family::OmegaBar)?
        .into_elements()
        .into_iter()
        .filter(|f| f.image() == ctx.y())
        .collect())
}
