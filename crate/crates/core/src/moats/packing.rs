use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{layers, moat_edges_from_layers, MoatError};
use crate::exec::Execution;
use crate::graph::Triangulation;
use crate::refine::RefinedTriangulation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Moat {
    pub core: Vec<usize>,
    pub width: usize,
}

impl Moat {
    pub fn disk(center: usize, radius: usize) -> Moat {
        Moat { core: vec![center], width: radius }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoatPacking {
    pub moats: Vec<Moat>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error("moat {index}: {source}")]
    Moat {
        index: usize,
        #[source]
        source: MoatError,
    },
    #[error("moats {first} and {second} share edge {edge}")]
    OverlappingMoats { edge: usize, first: usize, second: usize },
    #[error("cores of moats {0} and {1} cross")]
    NotLaminar(usize, usize),
    #[error("moat {moat}: layer {layer} holds {count} terminals")]
    BadParity { moat: usize, layer: usize, count: usize },
    #[error("terminal {terminal} lies in the core of two {class}-moats")]
    WidthMismatch { terminal: usize, class: usize },
    #[error("moat {0} has a single terminal but its core is not that terminal alone")]
    NotADisk(usize),
}

/// Summary of a verified packing. The vectors `r`, `s`, `t` are indexed like
/// `terminals` and hold the width of the disk, 3-moat and 5-moat covering
/// each terminal (0 if none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingStats {
    pub terminals: Vec<usize>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub m1: usize,
    pub m3: usize,
    pub m5: usize,
    /// `⟨r + s/3 + t/5, 1⟩`, the number of disjoint T-cuts in the packing.
    pub cuts: Ratio<i64>,
    /// Lower bound on the T-join number of the unrefined triangulation.
    pub value: Ratio<i64>,
}

impl PackingStats {
    /// Every terminal is the centre of a disk.
    pub fn every_terminal_has_a_disk(&self) -> bool {
        self.r.iter().all(|&x| x >= 1)
    }
}

fn check(t: &Triangulation, packing: &MoatPacking) -> Result<PackingStats, PackingError> {
    let g = t.graph();
    let terminals = t.terminals().to_vec();
    let term_index = |v: usize| terminals.binary_search(&v).ok();
    let k = packing.moats.len();
    let mut r = vec![0; terminals.len()];
    let mut s = vec![0; terminals.len()];
    let mut w5 = vec![0; terminals.len()];
    let (mut m1, mut m3, mut m5) = (0, 0, 0);
    let mut tagged: Vec<(usize, usize)> = Vec::new();
    let mut masks = Vec::with_capacity(k);

    for (index, moat) in packing.moats.iter().enumerate() {
        let wrap = |source| PackingError::Moat { index, source };
        let d = layers(g, &moat.core).map_err(wrap)?;
        let edges = moat_edges_from_layers(g, &d, moat.width).map_err(wrap)?;
        let mut mask = vec![false; g.n()];
        for &v in &moat.core {
            mask[v] = true;
        }
        let core_terms: Vec<usize> = terminals.iter().copied().filter(|&u| mask[u]).collect();
        for layer in 0..moat.width {
            let count = terminals.iter().filter(|&&u| d[u] <= layer).count();
            if count % 2 == 0 || (layer == 0 && !matches!(count, 1 | 3 | 5)) {
                return Err(PackingError::BadParity { moat: index, layer, count });
            }
        }
        let (slot, class) = match core_terms.len() {
            1 => {
                if moat.core.len() != 1 {
                    return Err(PackingError::NotADisk(index));
                }
                m1 += edges.len();
                (&mut r, 1)
            }
            3 => {
                m3 += edges.len();
                (&mut s, 3)
            }
            _ => {
                m5 += edges.len();
                (&mut w5, 5)
            }
        };
        for &u in &core_terms {
            let i = term_index(u).expect("terminal");
            if slot[i] != 0 {
                return Err(PackingError::WidthMismatch { terminal: u, class });
            }
            slot[i] = moat.width;
        }
        tagged.extend(edges.into_iter().map(|e| (e, index)));
        masks.push(mask);
    }

    for (i, mask) in masks.iter().enumerate() {
        for j in i + 1..k {
            let (a, b) = (&packing.moats[i].core, &packing.moats[j].core);
            let common = b.iter().filter(|&&v| mask[v]).count();
            let nested = common == a.len().min(b.len());
            if common != 0 && !nested {
                return Err(PackingError::NotLaminar(i, j));
            }
        }
    }

    tagged.sort_unstable();
    if let Some(w) = tagged.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(PackingError::OverlappingMoats { edge: w[0].0, first: w[0].1, second: w[1].1 });
    }

    let cuts = r
        .iter()
        .zip(&s)
        .zip(&w5)
        .map(|((&a, &b), &c)| {
            Ratio::from_integer(a as i64) + Ratio::new(b as i64, 3) + Ratio::new(c as i64, 5)
        })
        .sum::<Ratio<i64>>();
    Ok(PackingStats { terminals, r, s, t: w5, m1, m3, m5, cuts, value: cuts })
}

/// Verifies a packing on a refined triangulation and returns half the number
/// of disjoint T-cuts, a lower bound on the T-join number of the base.
pub fn verify_packing(rt: &RefinedTriangulation, packing: &MoatPacking) -> Result<PackingStats, PackingError> {
    let mut stats = check(rt.triangulation(), packing)?;
    stats.value = stats.cuts / 2;
    Ok(stats)
}

/// Verifies a packing directly on a triangulation; the value is the number
/// of disjoint T-cuts.
pub fn verify_unrefined(t: &Triangulation, packing: &MoatPacking) -> Result<PackingStats, PackingError> {
    check(t, packing)
}

/// Disks only, grown one layer at a time in terminal order while they stay
/// edge-disjoint, contain no second terminal and do not cover the graph.
pub fn greedy_packing(rt: &RefinedTriangulation) -> MoatPacking {
    greedy_packing_with(rt, Execution::default())
}

pub fn greedy_packing_with(rt: &RefinedTriangulation, exec: Execution) -> MoatPacking {
    let t = rt.triangulation();
    let g = t.graph();
    let terminals = t.terminals();
    let dists = exec.map_slice(terminals, |&u| layers(g, &[u]).expect("terminal in range"));
    // Edges of each terminal's cut δ(N^l[u]), grouped by l.
    let cuts: Vec<Vec<Vec<usize>>> = exec.map_slice(&dists, |d| {
        let mut by_layer: Vec<Vec<usize>> = Vec::new();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if d[a] != d[b] {
                let lo = d[a].min(d[b]);
                if by_layer.len() <= lo {
                    by_layer.resize(lo + 1, Vec::new());
                }
                by_layer[lo].push(e);
            }
        }
        by_layer
    });
    let mut owner = vec![usize::MAX; g.m()];
    let mut radius = vec![0; terminals.len()];
    loop {
        let mut grew = false;
        for (i, &u) in terminals.iter().enumerate() {
            let next = radius[i] + 1;
            let d = &dists[i];
            let lonely = terminals.iter().all(|&v| v == u || d[v] > next);
            if !lonely || moat_edges_from_layers(g, d, next).is_err() {
                continue;
            }
            let layer = &cuts[i][radius[i]];
            if layer.iter().any(|&e| owner[e] != usize::MAX) {
                continue;
            }
            for &e in layer {
                owner[e] = i;
            }
            radius[i] = next;
            grew = true;
        }
        if !grew {
            break;
        }
    }
    MoatPacking {
        moats: terminals
            .iter()
            .zip(&radius)
            .filter(|(_, &r)| r > 0)
            .map(|(&u, &r)| Moat::disk(u, r))
            .collect(),
    }
}
