// shared by the integration tests; not every test uses every helper
#![allow(dead_code)]

use depcross::{LinearArrangement, Tree};

/// All permutations of `0..n` in lexicographic order, independent of the
/// enumerators in the library.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Crossings by the covered/external rule: two edges without common vertex
/// cross when exactly one endpoint of one lies strictly inside the span of
/// the other.
pub fn crossings_oracle(tree: &Tree, positions: &[usize]) -> u64 {
    let edges = tree.edges();
    let mut c = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (lo, hi) = (positions[a].min(positions[b]), positions[a].max(positions[b]));
        let covered = |v: usize| lo < positions[v] && positions[v] < hi;
        for &(x, y) in &edges[i + 1..] {
            if [a, b].contains(&x) || [a, b].contains(&y) {
                continue;
            }
            if covered(x) != covered(y) {
                c += 1;
            }
        }
    }
    c
}

pub fn length_oracle(tree: &Tree, positions: &[usize]) -> u64 {
    tree.edges().iter().map(|&(u, v)| (positions[u] as i64 - positions[v] as i64).unsigned_abs()).sum()
}

/// Tree from a parent choice per vertex (`parents[v - 1] < v`) and a relabeling.
pub fn tree_from_parents(parents: &[usize], relabel: &[usize]) -> Tree {
    let edges: Vec<(usize, usize)> =
        parents.iter().enumerate().map(|(i, &p)| (relabel[i + 1], relabel[p])).collect();
    Tree::from_edges(relabel.len(), &edges).unwrap()
}

pub fn arrangement(positions: &[usize]) -> LinearArrangement {
    LinearArrangement::from_positions(positions.to_vec()).unwrap()
}

pub fn from_file(name: &str) -> depcross::io::Sentence {
    let path = format!("{}/../../data/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    depcross::io::parse_edge_list(&text).unwrap()
}
