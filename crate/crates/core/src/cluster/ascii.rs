use super::Dendrogram;

/// Indented tree, one node per line, children in merge order.
pub fn to_ascii(dend: &Dendrogram) -> String {
    fn walk(dend: &Dendrogram, id: usize, depth: usize, out: &mut String) {
        let n = dend.n_leaves();
        let pad = "  ".repeat(depth);
        if id < n {
            out.push_str(&format!("{pad}- {}\n", dend.labels()[id]));
        } else {
            let m = &dend.merges()[id - n];
            out.push_str(&format!("{pad}+ height={:.6} size={}\n", m.height, m.size));
            walk(dend, m.left, depth + 1, out);
            walk(dend, m.right, depth + 1, out);
        }
    }
    let mut out = String::new();
    walk(dend, 2 * dend.n_leaves() - 2, 0, &mut out);
    out
}
