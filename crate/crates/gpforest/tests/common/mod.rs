//! Independent brute-force oracles for the acceptance suite.
//!
//! These deliberately avoid the library's enumeration path: subsets come
//! from plain combinations, connectivity and component counts from
//! breadth-first search over the chosen edges.

// Shared across test binaries; not every binary uses every oracle.
#![allow(dead_code)]

use std::collections::BTreeSet;

use gpforest::graph::Graph;
use gpforest::poly::{Monomial, Polynomial, VarId};

/// Component id per vertex (1-based slots; slot 0 unused) induced by the
/// chosen edge subset.
pub fn components(g: &Graph, chosen: &[usize]) -> Vec<usize> {
    let v = g.vertex_count();
    let mut adj = vec![Vec::new(); v + 1];
    for &e in chosen {
        let (t, h) = g.endpoints(e);
        adj[t].push(h);
        adj[h].push(t);
    }
    let mut comp = vec![0usize; v + 1];
    let mut next = 0;
    for start in 1..=v {
        if comp[start] != 0 {
            continue;
        }
        next += 1;
        let mut queue = vec![start];
        comp[start] = next;
        while let Some(u) = queue.pop() {
            for &w in &adj[u] {
                if comp[w] == 0 {
                    comp[w] = next;
                    queue.push(w);
                }
            }
        }
    }
    comp
}

fn component_count(comp: &[usize]) -> usize {
    *comp[1..].iter().max().unwrap_or(&0)
}

/// All k-subsets of 1..=n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for e in start..=n {
            if n - e + 1 < k - cur.len() {
                break;
            }
            cur.push(e);
            rec(e + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

fn complement_monomial(g: &Graph, chosen: &[usize]) -> Monomial {
    let chosen: BTreeSet<usize> = chosen.iter().copied().collect();
    let pairs: Vec<(VarId, u32)> = (1..=g.edge_count())
        .filter(|e| !chosen.contains(e))
        .map(|e| (VarId::edge(e), 1))
        .collect();
    Monomial::from_pairs(&pairs)
}

/// Kirchhoff polynomial by brute force: every (v-1)-subset of edges that
/// connects the graph is a spanning tree; sum the complements.
pub fn psi_by_enumeration(g: &Graph) -> Polynomial {
    let v = g.vertex_count();
    let mut terms = Vec::new();
    for chosen in combinations(g.edge_count(), v - 1) {
        let comp = components(g, &chosen);
        if component_count(&comp) == 1 {
            terms.push((complement_monomial(g, &chosen), 1));
        }
    }
    Polynomial::from_terms(terms)
}

/// Spanning-forest polynomial by brute force over all subsets of the right
/// size: exactly |parts| components (which forces acyclicity at v - k
/// edges), each part within one component, distinct parts in distinct
/// components.
pub fn phi_by_enumeration(g: &Graph, parts: &[Vec<usize>]) -> Polynomial {
    let v = g.vertex_count();
    let k = parts.len();
    if k > v {
        return Polynomial::zero();
    }
    let mut terms = Vec::new();
    for chosen in combinations(g.edge_count(), v - k) {
        let comp = components(g, &chosen);
        if component_count(&comp) != k {
            continue;
        }
        let mut roots = Vec::with_capacity(k);
        let mut ok = true;
        for part in parts {
            let r = comp[part[0]];
            if part.iter().any(|&p| comp[p] != r) || roots.contains(&r) {
                ok = false;
                break;
            }
            roots.push(r);
        }
        if ok {
            terms.push((complement_monomial(g, &chosen), 1));
        }
    }
    Polynomial::from_terms(terms)
}

/// Spanning tree count, for quick cross-checks.
pub fn tree_count(g: &Graph) -> usize {
    psi_by_enumeration(g).num_terms()
}
