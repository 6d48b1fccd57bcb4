//! Egg-box diagrams of `Ω̄(X,Y)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::extnat::ExtNat;
use crate::transform::{Context, Family, Transformation};

use super::{enumerate, j_below_witness, ElementData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HCell {
    pub elements: Vec<Transformation>,
    pub idempotent: bool,
}

/// One `D`-class: rows are `R`-classes, columns are `L`-classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DClass {
    pub outside_y: usize,
    pub size: usize,
    pub rows: Vec<Vec<HCell>>,
}

impl DClass {
    pub fn elements(&self) -> impl Iterator<Item = &Transformation> {
        self.rows.iter().flatten().flat_map(|c| c.elements.iter())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    fn least(&self) -> &Transformation {
        self.elements().min().expect("D-classes are nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EggBox {
    pub n: usize,
    pub y: Vec<usize>,
    pub d_classes: Vec<DClass>,
    /// Covering pairs `(above, below)` of the `J`-order on `d_classes`.
    pub j_order: Vec<(usize, usize)>,
}

type LKey = (Vec<usize>, Vec<ExtNat>);
type RKey = (Vec<Vec<usize>>, Vec<Vec<usize>>);
type DKey = (usize, Vec<ExtNat>);

pub fn eggbox(ctx: &Context) -> Result<EggBox> {
    let s = enumerate(ctx, Family::OmegaBar)?;

    // D-classes keyed by |Xf \ Y| and the sorted profile, which is what the D test compares
    let mut by_d: BTreeMap<DKey, Vec<(ElementData, Transformation)>> = BTreeMap::new();
    for f in s.into_elements() {
        let data = ElementData::new(ctx, &f)?;
        let mut sorted = data.profile.sizes().to_vec();
        sorted.sort_unstable();
        by_d.entry((data.outside_y, sorted))
            .or_default()
            .push((data, f));
    }

    let mut d_classes: Vec<DClass> = by_d
        .into_values()
        .map(|members| {
            let outside_y = members[0].0.outside_y;
            let size = members.len();
            let mut cells: BTreeMap<(RKey, LKey), Vec<Transformation>> = BTreeMap::new();
            for (d, f) in members {
                let r = (d.kernel.blocks().to_vec(), d.y_fibers.clone());
                let l = (d.image.clone(), d.profile.sizes().to_vec());
                cells.entry((r, l)).or_default().push(f);
            }
            let least_of = |key: &dyn Fn(&(RKey, LKey)) -> bool| {
                cells
                    .iter()
                    .filter(|(k, _)| key(k))
                    .flat_map(|(_, v)| v.iter())
                    .min()
                    .cloned()
            };
            let mut r_keys: Vec<RKey> = cells.keys().map(|(r, _)| r.clone()).collect();
            r_keys.dedup();
            r_keys.sort_by_key(|r| least_of(&|k: &(RKey, LKey)| &k.0 == r));
            let mut l_keys: Vec<LKey> = cells.keys().map(|(_, l)| l.clone()).collect();
            l_keys.sort();
            l_keys.dedup();
            l_keys.sort_by_key(|l| least_of(&|k: &(RKey, LKey)| &k.1 == l));

            let rows = r_keys
                .iter()
                .map(|r| {
                    l_keys
                        .iter()
                        .map(|l| {
                            let mut elements = cells
                                .get(&(r.clone(), l.clone()))
                                .cloned()
                                .unwrap_or_default();
                            elements.sort();
                            let idempotent = elements.iter().any(Transformation::is_idempotent);
                            HCell {
                                elements,
                                idempotent,
                            }
                        })
                        .collect()
                })
                .collect();
            DClass {
                outside_y,
                size,
                rows,
            }
        })
        .collect();
    d_classes.sort_by(|a, b| {
        b.outside_y
            .cmp(&a.outside_y)
            .then_with(|| a.least().cmp(b.least()))
    });

    let k = d_classes.len();
    let reps: Vec<Transformation> = d_classes.iter().map(|d| d.least().clone()).collect();
    let mut below = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            below[a][b] = a != b && j_below_witness(ctx, &reps[b], &reps[a])?.is_some();
        }
    }
    let mut j_order = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if below[a][b] && !(0..k).any(|c| below[a][c] && below[c][b]) {
                j_order.push((a, b));
            }
        }
    }

    Ok(EggBox {
        n: ctx.n(),
        y: ctx.y().to_vec(),
        d_classes,
        j_order,
    })
}

fn cell_label(cell: &HCell) -> String {
    format!(
        "{}{}",
        cell.elements.len(),
        if cell.idempotent { "*" } else { "" }
    )
}

impl EggBox {
    pub fn element_count(&self) -> usize {
        self.d_classes.iter().map(|d| d.size).sum()
    }

    /// Aligned text grid, one block per `D`-class; `*` marks cells holding an idempotent.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.d_classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "D{i} |Xf\\Y|={} size={} rows={} cols={}",
                d.outside_y,
                d.size,
                d.row_count(),
                d.column_count()
            );
            let texts: Vec<Vec<String>> = d
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| {
                            let body: Vec<String> =
                                c.elements.iter().map(ToString::to_string).collect();
                            format!("{}{}", body.join(","), if c.idempotent { "*" } else { "" })
                        })
                        .collect()
                })
                .collect();
            let width = texts.iter().flatten().map(String::len).max().unwrap_or(0);
            for row in &texts {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:<width$}")).collect();
                let _ = writeln!(out, "  | {} |", cells.join(" | "));
            }
        }
        if !self.j_order.is_empty() {
            let edges: Vec<String> = self
                .j_order
                .iter()
                .map(|(a, b)| format!("D{a}>D{b}"))
                .collect();
            let _ = writeln!(out, "J-order: {}", edges.join(" "));
        }
        out
    }

    /// Graphviz rendering: clusters are `D`-classes, nodes are `H`-cells.
    pub fn to_dot(&self) -> String {
        let y: Vec<String> = self.y.iter().map(ToString::to_string).collect();
        let mut out = String::new();
        let _ = writeln!(out, "digraph eggbox {{");
        let _ = writeln!(out, "  compound=true;");
        let _ = writeln!(out, "  label=\"n={} Y={{{}}}\";", self.n, y.join(","));
        let _ = writeln!(out, "  node [shape=box];");
        for (i, d) in self.d_classes.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_d{i} {{");
            let _ = writeln!(out, "    label=\"D{i} |Xf\\\\Y|={}\";", d.outside_y);
            for (r, row) in d.rows.iter().enumerate() {
                for (c, cell) in row.iter().enumerate() {
                    let _ = writeln!(out, "    d{i}_r{r}_c{c} [label=\"{}\"];", cell_label(cell));
                }
                if row.len() > 1 {
                    let names: Vec<String> =
                        (0..row.len()).map(|c| format!("d{i}_r{r}_c{c}")).collect();
                    let _ = writeln!(out, "    {{ rank=same; {} }}", names.join("; "));
                }
            }
            let _ = writeln!(out, "  }}");
        }
        for (a, b) in &self.j_order {
            let _ = writeln!(
                out,
                "  d{a}_r0_c0 -> d{b}_r0_c0 [ltail=cluster_d{a}, lhead=cluster_d{b}];"
            );
        }
        let _ = writeln!(out, "}}");
        out
    }
}
