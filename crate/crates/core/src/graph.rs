//! Small directed-graph helpers over adjacency lists.

/// Tarjan's algorithm, iterative. Returns the component id of every vertex
/// and the number of components; ids are assigned in reverse topological
/// order (sinks first).
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut comp_count = 0;
    // (vertex, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = comp_count;
                    if w == v {
                        break;
                    }
                }
                comp_count += 1;
            }
        }
    }
    (comp, comp_count)
}

/// Whether each vertex lies on a cycle: its component has more than one
/// vertex, or it has a self-loop.
pub fn cyclic_vertices(adj: &[Vec<usize>]) -> Vec<bool> {
    let (comp, count) = strongly_connected_components(adj);
    let mut size = vec![0usize; count];
    for &c in &comp {
        size[c] += 1;
    }
    (0..adj.len())
        .map(|v| size[comp[v]] > 1 || adj[v].contains(&v))
        .collect()
}

/// Vertices reachable from `sources` (inclusive).
pub fn forward_closure(adj: &[Vec<usize>], sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = sources.into_iter().collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Longest path (in edges) starting at `start` in an acyclic graph.
pub fn longest_path_from(adj: &[Vec<usize>], start: usize) -> usize {
    // Tarjan ids are reverse-topological, so ascending id order visits
    // successors first.
    let (comp, _) = strongly_connected_components(adj);
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| comp[v]);
    let mut best = vec![0usize; adj.len()];
    for v in order {
        best[v] = adj[v].iter().map(|&w| best[w] + 1).max().unwrap_or(0);
    }
    best[start]
}
