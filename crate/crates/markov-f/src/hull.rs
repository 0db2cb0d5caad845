//! Exact joint laws on arbitrary finite coordinate sets of a Markov chain.
//!
//! The coordinates are completed to their Steiner hull (the minimal subtree
//! of the Cayley tree containing them), the chain law is factorized as
//! `π(root) · Π P(child | parent)` over the hull tree, and interior nodes
//! are eliminated leaf-first. Every intermediate factor's scope is a subset
//! of {coordinates} ∪ {one hull node}, so memory stays within one factor of
//! the requested marginal size.

use std::collections::{HashMap, VecDeque};

use group_core::{FreeGroupWord, Letter};

use crate::chain::MarkovChainSpec;
use crate::error::MarkovError;

/// The minimal subtree of the Cayley tree containing `coords`: the union of
/// the geodesics from `coords[0]` to every coordinate.
fn steiner_hull(coords: &[FreeGroupWord]) -> Vec<FreeGroupWord> {
    let base = &coords[0];
    let mut nodes: Vec<FreeGroupWord> = Vec::new();
    let mut seen: HashMap<FreeGroupWord, ()> = HashMap::new();
    let mut push = |w: FreeGroupWord, nodes: &mut Vec<FreeGroupWord>| {
        if seen.insert(w.clone(), ()).is_none() {
            nodes.push(w);
        }
    };
    push(base.clone(), &mut nodes);
    for c in coords {
        let path = base.inverse().multiply(c);
        let mut node = base.clone();
        for &l in path.letters() {
            node = node.append(l);
            push(node.clone(), &mut nodes);
        }
    }
    nodes
}

struct HullTree {
    nodes: Vec<FreeGroupWord>,
    /// `(parent index, letter l)` with `node = parent · l`; root has none.
    parent: Vec<Option<(usize, Letter)>>,
    children: Vec<Vec<usize>>,
    /// BFS order from the root; parents precede children.
    order: Vec<usize>,
}

fn build_tree(rank: u8, nodes: Vec<FreeGroupWord>) -> HullTree {
    let index: HashMap<&FreeGroupWord, usize> =
        nodes.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent = vec![None; nodes.len()];
    let mut children = vec![Vec::new(); nodes.len()];
    let mut order = Vec::with_capacity(nodes.len());
    let mut visited = vec![false; nodes.len()];
    let mut queue = VecDeque::new();
    queue.push_back(0usize);
    visited[0] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for gen in 1..=rank {
            for inverse in [false, true] {
                let l = Letter { gen, inverse };
                let w = nodes[u].append(l);
                if let Some(&v) = index.get(&w) {
                    if !visited[v] {
                        visited[v] = true;
                        parent[v] = Some((u, l));
                        children[u].push(v);
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    debug_assert!(visited.iter().all(|&v| v), "hull must be connected");
    HullTree {
        nodes,
        parent,
        children,
        order,
    }
}

/// A nonnegative table over an ordered list of hull-node variables, each of
/// arity `k`, row-major in `vars` order. `vars` is kept sorted ascending.
struct Factor {
    vars: Vec<usize>,
    table: Vec<f64>,
}

impl Factor {
    fn ones(var: usize, k: usize) -> Factor {
        Factor {
            vars: vec![var],
            table: vec![1.0; k],
        }
    }

    fn from_weights(var: usize, weights: &[f64]) -> Factor {
        Factor {
            vars: vec![var],
            table: weights.to_vec(),
        }
    }

    /// Pairwise kernel over `{u, v}` with entry `table[x_u * k + x_v]`.
    fn kernel(u: usize, v: usize, k: usize, table: Vec<f64>) -> Factor {
        if u < v {
            Factor {
                vars: vec![u, v],
                table,
            }
        } else {
            let mut t = vec![0.0; k * k];
            for xu in 0..k {
                for xv in 0..k {
                    t[xv * k + xu] = table[xu * k + xv];
                }
            }
            Factor {
                vars: vec![v, u],
                table: t,
            }
        }
    }

    fn product(&self, other: &Factor, k: usize) -> Factor {
        let mut vars: Vec<usize> = self.vars.iter().chain(&other.vars).copied().collect();
        vars.sort_unstable();
        vars.dedup();
        let total = k.pow(vars.len() as u32);
        // Strides of each operand inside the union index.
        let stride_of = |owned: &[usize]| -> Vec<usize> {
            // stride (in the owner's table) contributed by union digit i
            let mut strides = vec![0usize; vars.len()];
            for (pos, v) in owned.iter().enumerate() {
                let union_pos = vars.binary_search(v).expect("var present");
                strides[union_pos] = k.pow((owned.len() - 1 - pos) as u32);
            }
            strides
        };
        let sa = stride_of(&self.vars);
        let sb = stride_of(&other.vars);
        let mut table = vec![0.0; total];
        let mut digits = vec![0usize; vars.len()];
        let mut ia = 0usize;
        let mut ib = 0usize;
        for slot in table.iter_mut() {
            *slot = self.table[ia] * other.table[ib];
            // Odometer increment, least significant digit last.
            for d in (0..vars.len()).rev() {
                digits[d] += 1;
                ia += sa[d];
                ib += sb[d];
                if digits[d] < k {
                    break;
                }
                ia -= sa[d] * k;
                ib -= sb[d] * k;
                digits[d] = 0;
            }
        }
        Factor { vars, table }
    }

    fn sum_out(&self, var: usize, k: usize) -> Factor {
        let pos = self.vars.binary_search(&var).expect("var present");
        let vars: Vec<usize> = self
            .vars
            .iter()
            .copied()
            .filter(|&v| v != var)
            .collect();
        let inner: usize = k.pow((self.vars.len() - 1 - pos) as u32);
        let outer = self.table.len() / (inner * k);
        let mut table = vec![0.0; outer * inner];
        for o in 0..outer {
            for x in 0..k {
                let src = (o * k + x) * inner;
                let dst = o * inner;
                for i in 0..inner {
                    table[dst + i] += self.table[src + i];
                }
            }
        }
        Factor { vars, table }
    }
}

/// Transition table `P(X_{u·l} = y | X_u = x)` as a `k×k` row-major table.
fn transition(m: &MarkovChainSpec, l: Letter) -> Vec<f64> {
    let k = m.alphabet_size();
    let law = m.edge_law(l.gen);
    let pi = m.pi();
    let mut t = vec![0.0; k * k];
    for x in 0..k {
        if pi[x] <= 0.0 {
            continue; // unreachable state; any row works, keep zeros
        }
        for y in 0..k {
            let joint = if l.inverse { law[y * k + x] } else { law[x * k + y] };
            t[x * k + y] = joint / pi[x];
        }
    }
    t
}

/// Exact joint law of `(X_g)` for the distinct coordinates `coords`, axes in
/// the order given. The coordinate set may be disconnected; the hull tree
/// supplies the missing interior nodes, which are summed out.
pub(crate) fn coords_marginal_markov(
    m: &MarkovChainSpec,
    coords: &[FreeGroupWord],
) -> Result<Vec<f64>, MarkovError> {
    let k = m.alphabet_size();
    let tree = build_tree(m.rank(), steiner_hull(coords));
    let index: HashMap<&FreeGroupWord, usize> = tree
        .nodes
        .iter()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let coord_ids: Vec<usize> = coords.iter().map(|c| index[c]).collect();
    let mut terminal = vec![false; tree.nodes.len()];
    for &id in &coord_ids {
        terminal[id] = true;
    }

    // Eliminate leaf-first: walk the BFS order backwards so every child is
    // processed before its parent, merging child messages into the parent.
    let mut messages: Vec<Option<Factor>> = (0..tree.nodes.len()).map(|_| None).collect();
    for &v in tree.order.iter().rev() {
        let mut acc = Factor::ones(v, k);
        for &c in &tree.children[v] {
            let (_, l) = tree.parent[c].expect("child has parent");
            let kernel = Factor::kernel(v, c, k, transition(m, l));
            let mut f = match messages[c].take() {
                Some(msg) => msg.product(&kernel, k),
                None => kernel,
            };
            if !terminal[c] {
                f = f.sum_out(c, k);
            }
            acc = acc.product(&f, k);
        }
        messages[v] = Some(acc);
    }
    let root = tree.order[0];
    let mut result = messages[root].take().expect("root message");
    result = result.product(&Factor::from_weights(root, m.pi()), k);
    if !terminal[root] {
        result = result.sum_out(root, k);
    }

    // Permute from sorted hull-variable order to the requested coordinate
    // order.
    debug_assert_eq!(result.vars.len(), coord_ids.len());
    let m_axes = coord_ids.len();
    let pos_of: HashMap<usize, usize> = result
        .vars
        .iter()
        .enumerate()
        .map(|(pos, &v)| (v, pos))
        .collect();
    let mut out = vec![0.0; result.table.len()];
    let src_strides: Vec<usize> = (0..m_axes)
        .map(|pos| k.pow((m_axes - 1 - pos) as u32))
        .collect();
    // out index digit i corresponds to coords[i] = var coord_ids[i].
    let digit_stride: Vec<usize> = coord_ids
        .iter()
        .map(|cid| src_strides[pos_of[cid]])
        .collect();
    let mut digits = vec![0usize; m_axes];
    let mut src = 0usize;
    for slot in 0..out.len() {
        out[slot] = result.table[src];
        for d in (0..m_axes).rev() {
            digits[d] += 1;
            src += digit_stride[d];
            if digits[d] < k {
                break;
            }
            src -= digit_stride[d] * k;
            digits[d] = 0;
        }
    }
    Ok(out)
}
