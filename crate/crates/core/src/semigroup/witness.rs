//! Divisibility witnesses inside `Ω̄(X,Y)`, built from the fiber data of `f` and `g`.
//!
//! Every witness is checked by composition before it is returned.

use crate::error::Result;
use crate::extnat::{d_condition, j_condition, profile_of};
use crate::partition::{image_fibers, refines, KernelPartition};
use crate::transform::{Context, Family, Transformation};

/// The lexicographically least surjection `domain → targets` (both sorted), as a list of
/// images aligned with `domain`.
fn least_surjection(domain: &[usize], targets: &[usize]) -> Option<Vec<usize>> {
    if domain.len() < targets.len() || (targets.is_empty() && !domain.is_empty()) {
        return None;
    }
    let mut covered = vec![false; targets.len()];
    let mut uncovered = targets.len();
    let mut out = Vec::with_capacity(domain.len());
    for k in 0..domain.len() {
        let left_after = domain.len() - k - 1;
        let pick = (0..targets.len()).find(|&j| {
            let still = uncovered - usize::from(!covered[j]);
            still <= left_after
        })?;
        if !covered[pick] {
            covered[pick] = true;
            uncovered -= 1;
        }
        out.push(targets[pick]);
    }
    Some(out)
}

fn members(ctx: &Context, f: &Transformation, g: &Transformation) -> Result<()> {
    ctx.require(Family::OmegaBar, f)?;
    ctx.require(Family::OmegaBar, g)
}

fn y_preimage(ctx: &Context, f: &Transformation, y: usize) -> Vec<usize> {
    ctx.y()
        .iter()
        .copied()
        .filter(|&x| f.apply(x) == y)
        .collect()
}

/// The least `h ∈ Ω̄(X,Y)` with `f = hg`, present iff `Xf ⊆ Xg` and every `Y`-fiber of
/// `f` is at least as large as the matching `Y`-fiber of `g`.
pub fn l_below_witness(
    ctx: &Context,
    f: &Transformation,
    g: &Transformation,
) -> Result<Option<Transformation>> {
    members(ctx, f, g)?;
    let g_mask = g.image_mask();
    if f.images().iter().any(|&z| !g_mask[z]) {
        return Ok(None);
    }
    let (pf, pg) = (profile_of(ctx, f)?, profile_of(ctx, g)?);
    if pf.sizes().iter().zip(pg.sizes()).any(|(a, b)| a < b) {
        return Ok(None);
    }

    let n = ctx.n();
    let mut h = vec![usize::MAX; n];
    // on Y: a surjection of each f-fiber onto the g-fiber over the same point
    for &y in ctx.y() {
        let from = y_preimage(ctx, f, y);
        let onto = y_preimage(ctx, g, y);
        let Some(images) = least_surjection(&from, &onto) else {
            return Ok(None);
        };
        for (&x, &z) in from.iter().zip(&images) {
            h[x] = z;
        }
    }
    for x in ctx.complement() {
        h[x] = g.fiber(f.apply(x))[0];
    }
    let h = Transformation::from_images_unchecked(h);
    assert!(
        ctx.contains(Family::OmegaBar, &h) && h.then(g) == *f,
        "left witness failed for f={f} g={g}"
    );
    Ok(Some(h))
}

/// The least `h ∈ Ω̄(X,Y)` with `f = gh`, present iff `π(g) ⪯ π(f)` and `π_g(Y) ⪯ π_f(Y)`.
pub fn r_below_witness(
    ctx: &Context,
    f: &Transformation,
    g: &Transformation,
) -> Result<Option<Transformation>> {
    members(ctx, f, g)?;
    let (kf, kg) = (KernelPartition::of(f), KernelPartition::of(g));
    if !refines(kg.blocks(), kf.blocks())
        || !refines(&image_fibers(g, ctx.y()), &image_fibers(f, ctx.y()))
    {
        return Ok(None);
    }
    let mut h = vec![0usize; ctx.n()];
    for block in kg.blocks() {
        h[g.apply(block[0])] = f.apply(block[0]);
    }
    let h = Transformation::from_images_unchecked(h);
    assert!(
        ctx.contains(Family::OmegaBar, &h) && g.then(&h) == *f,
        "right witness failed for f={f} g={g}"
    );
    Ok(Some(h))
}

/// A pair `(h, h′)` in `Ω̄(X,Y)` with `f = hgh′`, present iff `|Xf \ Y| ≤ |Xg \ Y|` and the
/// profile of `f` dominates that of `g` through an indexed cover.
pub fn j_below_witness(
    ctx: &Context,
    f: &Transformation,
    g: &Transformation,
) -> Result<Option<(Transformation, Transformation)>> {
    members(ctx, f, g)?;
    let y = ctx.y();
    let f_out: Vec<usize> = f.image().into_iter().filter(|&z| !ctx.in_y(z)).collect();
    let g_out: Vec<usize> = g.image().into_iter().filter(|&z| !ctx.in_y(z)).collect();
    if f_out.len() > g_out.len() {
        return Ok(None);
    }
    let Some(cover) = j_condition(&profile_of(ctx, f)?, &profile_of(ctx, g)?)? else {
        return Ok(None);
    };

    let n = ctx.n();
    // δ sends every point of P_y to y; ι is the order-preserving injection Xf\Y → Xg\Y
    let mut h2: Vec<usize> = (0..n).collect();
    for (i, block) in cover.blocks.iter().enumerate() {
        for &w in block {
            h2[y[w]] = y[i];
        }
    }
    for (&z, &iz) in f_out.iter().zip(&g_out) {
        h2[iz] = z;
    }

    let mut h1 = vec![usize::MAX; n];
    for (i, block) in cover.blocks.iter().enumerate() {
        let from = y_preimage(ctx, f, y[i]);
        let mut onto: Vec<usize> = y
            .iter()
            .copied()
            .filter(|&x| block.iter().any(|&w| g.apply(x) == y[w]))
            .collect();
        onto.sort_unstable();
        let Some(images) = least_surjection(&from, &onto) else {
            return Ok(None);
        };
        for (&x, &z) in from.iter().zip(&images) {
            h1[x] = z;
        }
    }
    for x in ctx.complement() {
        let z = f.apply(x);
        h1[x] = if ctx.in_y(z) {
            let x_prime = y_preimage(ctx, f, z)[0];
            h1[x_prime]
        } else {
            let k = f_out.binary_search(&z).expect("z ∈ Xf \\ Y");
            g.fiber(g_out[k])[0]
        };
    }
    let (h1, h2) = (
        Transformation::from_images_unchecked(h1),
        Transformation::from_images_unchecked(h2),
    );
    assert!(
        ctx.contains(Family::OmegaBar, &h1)
            && ctx.contains(Family::OmegaBar, &h2)
            && h1.then(g).then(&h2) == *f,
        "two-sided witness failed for f={f} g={g}"
    );
    Ok(Some((h1, h2)))
}

/// For `D`-related `f` and `g`, an element `h` with `f L h` and `h R g`.
pub fn d_intermediate(
    ctx: &Context,
    f: &Transformation,
    g: &Transformation,
) -> Result<Option<Transformation>> {
    members(ctx, f, g)?;
    let y = ctx.y();
    let f_out: Vec<usize> = f.image().into_iter().filter(|&z| !ctx.in_y(z)).collect();
    let g_out: Vec<usize> = g.image().into_iter().filter(|&z| !ctx.in_y(z)).collect();
    if f_out.len() != g_out.len() {
        return Ok(None);
    }
    let Some(alpha) = d_condition(&profile_of(ctx, f)?, &profile_of(ctx, g)?)? else {
        return Ok(None);
    };
    // φ : Xg → Xf, α⁻¹ on Y and order-preserving off Y
    let mut phi = vec![usize::MAX; ctx.n()];
    for (i, &j) in alpha.images().iter().enumerate() {
        phi[y[j]] = y[i];
    }
    for (&zg, &zf) in g_out.iter().zip(&f_out) {
        phi[zg] = zf;
    }
    let h = Transformation::from_images_unchecked(g.images().iter().map(|&z| phi[z]).collect());
    Ok(Some(h))
}
