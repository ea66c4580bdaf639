use std::collections::VecDeque;

use super::EmbeddedGraph;
use crate::exec::Execution;

pub const UNREACHED: usize = usize::MAX;

pub fn bfs_distances(g: &EmbeddedGraph, source: usize) -> Vec<usize> {
    multi_source_bfs(g, &[source])
}

/// Distance from every vertex to the nearest source; `UNREACHED` if none.
pub fn multi_source_bfs(g: &EmbeddedGraph, sources: &[usize]) -> Vec<usize> {
    let mut dist = vec![UNREACHED; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    for &s in sources {
        if dist[s] == UNREACHED {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.rotation(u) {
            if dist[v] == UNREACHED {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn diameter(g: &EmbeddedGraph) -> usize {
    diameter_with(g, Execution::default())
}

/// Exact diameter by BFS from every vertex.
pub fn diameter_with(g: &EmbeddedGraph, exec: Execution) -> usize {
    exec.map_range(g.n(), |s| {
        bfs_distances(g, s).into_iter().max().unwrap_or(0)
    })
    .into_iter()
    .max()
    .unwrap_or(0)
}

/// Proper 2-colouring of `g` with the edges flagged in `removed` deleted and
/// the vertices flagged in `deleted` ignored. Each component is coloured from
/// its lowest vertex, which gets colour 0. Deleted vertices get colour 2.
pub fn two_coloring(
    g: &EmbeddedGraph,
    removed: &[bool],
    deleted: Option<&[bool]>,
) -> Option<Vec<u8>> {
    let is_deleted = |v: usize| deleted.is_some_and(|d| d[v]);
    let mut color = vec![u8::MAX; g.n()];
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if is_deleted(s) {
            color[s] = 2;
            continue;
        }
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for (i, &v) in g.rotation(u).iter().enumerate() {
                if removed[g.dart_edge(u, i)] || is_deleted(v) {
                    continue;
                }
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}
