//! The balance taxonomy on choice functions and weight matrices.
//!
//! A full function is balanced when every candidate loses exactly half of
//! its pairs; the taxonomy below grades how far a (possibly partial)
//! function sits from that: pseudo-balance asks every directed edge to lie
//! on a directed cycle, partition balance asks every vertex cut to be
//! crossed consistently, and weight balance asks for a balanced rational
//! matrix whose strict majority reproduces the function.

use num_traits::Zero;

use crate::choice::{pairs, ChoiceFunction};
use crate::config;
use crate::error::{Error, Result};
use crate::lp::{max_margin_feasible, LinearProgram, Sense};
use crate::prob::ProbMatrix;
use crate::rational::{frac, half, one, Rational};
use crate::valency::valencies;

/// Strong components of the winner digraph, plus the edges crossing between
/// different components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub inter_edges: Vec<(usize, usize)>,
}

/// Tarjan decomposition of `Tor(c)`.
pub fn scc(c: &ChoiceFunction) -> SccDecomposition {
    let n = c.n();
    let mut adj = vec![Vec::new(); n];
    for (x, y) in c.tor_edges() {
        adj[x].push(y);
    }

    struct State {
        index: usize,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        comps: Vec<Vec<usize>>,
    }

    fn connect(v: usize, adj: &[Vec<usize>], st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &adj[v] {
            if st.idx[w].is_none() {
                connect(w, adj, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }
        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.comps.push(comp);
        }
    }

    let mut st = State {
        index: 0,
        idx: vec![None; n],
        low: vec![0; n],
        stack: Vec::new(),
        on_stack: vec![false; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, &adj, &mut st);
        }
    }

    let mut component_of = vec![usize::MAX; n];
    for (cid, comp) in st.comps.iter().enumerate() {
        for &v in comp {
            component_of[v] = cid;
        }
    }
    let inter_edges = c
        .tor_edges()
        .into_iter()
        .filter(|&(x, y)| component_of[x] != component_of[y])
        .collect();
    SccDecomposition {
        component_of,
        components: st.comps,
        inter_edges,
    }
}

/// Every valency equals `(n - 1) / 2` exactly.
pub fn is_balanced(c: &ChoiceFunction) -> bool {
    let target = frac(c.n() as i64 - 1, 2);
    valencies(c).iter().all(|v| *v == target)
}

/// Every row of the matrix sums to `(n - 1) / 2`.
pub fn is_balanced_matrix(t: &ProbMatrix) -> bool {
    t.is_balanced()
}

/// Every off-diagonal entry is exactly 1/2.
pub fn is_super_balanced(t: &ProbMatrix) -> bool {
    t.is_super_balanced()
}

/// Every edge of the winner digraph lies on a directed cycle; equivalently,
/// no edge crosses between strong components.
pub fn is_pseudo_balanced(c: &ChoiceFunction) -> bool {
    scc(c).inter_edges.is_empty()
}

/// The shortest simple directed cycle through the edge `(u, v)` of `Tor(c)`,
/// lexicographically least among the shortest, as its vertex sequence
/// starting `(u, v, ...)`. `None` when the edge is absent or on no cycle.
pub fn cycle_through_edge(c: &ChoiceFunction, u: usize, v: usize) -> Option<Vec<usize>> {
    let n = c.n();
    if c.winner(u, v) != Some(v) {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    let mut radj = vec![Vec::new(); n];
    for (x, y) in c.tor_edges() {
        adj[x].push(y);
        radj[y].push(x);
    }
    // distance from every vertex to u along forward edges
    let mut dist = vec![usize::MAX; n];
    dist[u] = 0;
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(w) = queue.pop_front() {
        for &p in &radj[w] {
            if dist[p] == usize::MAX {
                dist[p] = dist[w] + 1;
                queue.push_back(p);
            }
        }
    }
    if dist[v] == usize::MAX {
        return None;
    }
    // greedy walk v -> u picking the least next vertex on a shortest path
    let mut cycle = vec![u, v];
    let mut cur = v;
    while cur != u {
        let next = adj[cur]
            .iter()
            .copied()
            .filter(|&w| dist[w] != usize::MAX && dist[w] + 1 == dist[cur])
            .min()
            .expect("shortest path step exists");
        if next != u {
            cycle.push(next);
        }
        cur = next;
    }
    Some(cycle)
}

fn check_subset_cap(n: usize) -> Result<()> {
    if n > config::SUBSET_SCAN_CAP {
        Err(Error::TooManyCandidates(n, config::SUBSET_SCAN_CAP))
    } else {
        Ok(())
    }
}

/// Subset masks of `0..n`, nonempty and proper, by increasing popcount then
/// numeric value.
fn proper_subsets(n: usize) -> Vec<u32> {
    let full = (1u32 << n) - 1;
    let mut masks: Vec<u32> = (1..full).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

fn crossing_edges(c: &ChoiceFunction, mask: u32) -> (bool, bool) {
    // (edge entering the subset, edge leaving the subset)
    let mut incoming = false;
    let mut outgoing = false;
    for (x, y) in c.tor_edges() {
        let xin = mask >> x & 1 == 1;
        let yin = mask >> y & 1 == 1;
        if !xin && yin {
            incoming = true;
        }
        if xin && !yin {
            outgoing = true;
        }
    }
    (incoming, outgoing)
}

/// First subset violating partition balance (`plus = false`) or
/// partition⁺ balance (`plus = true`), for diagnostics.
pub fn partition_violation(c: &ChoiceFunction, plus: bool) -> Result<Option<u32>> {
    check_subset_cap(c.n())?;
    for mask in proper_subsets(c.n()) {
        let (incoming, outgoing) = crossing_edges(c, mask);
        let bad = if plus {
            !incoming
        } else {
            incoming != outgoing
        };
        if bad {
            return Ok(Some(mask));
        }
    }
    Ok(None)
}

/// Every nonempty proper subset receives an edge from its complement.
pub fn is_partition_plus_balanced(c: &ChoiceFunction) -> Result<bool> {
    Ok(partition_violation(c, true)?.is_none())
}

/// For every nonempty proper subset: an edge enters it iff an edge leaves it.
pub fn is_partition_balanced(c: &ChoiceFunction) -> Result<bool> {
    Ok(partition_violation(c, false)?.is_none())
}

/// The margin program for weight balance: variables for the decided pairs,
/// one strictness slack per decided pair, and the margin last. Undecided
/// pairs are fixed at 1/2 and substituted away.
fn weight_balance_program(c: &ChoiceFunction) -> (LinearProgram, Vec<(usize, usize)>) {
    let n = c.n();
    let decided: Vec<(usize, usize)> = pairs(n).filter(|&(x, y)| c.winner(x, y).is_some()).collect();
    let k = decided.len();
    let num_vars = 2 * k + 1; // pair values, slacks, margin
    let mut objective = vec![Rational::zero(); num_vars];
    objective[num_vars - 1] = one();
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    for j in 0..k {
        lp.upper[j] = Some(one());
    }
    // any strict row forces margin <= winner mass - 1/2 <= 1/2; making the
    // bound explicit keeps the all-undecided case bounded too
    lp.upper[num_vars - 1] = Some(half());

    // row sums: for each vertex x, sum over decided pairs of t[x][*]
    // equals (n-1)/2 minus the 1/2 contributed by each undecided pair.
    for x in 0..n {
        let mut coeffs = vec![Rational::zero(); num_vars];
        let mut rhs = frac(n as i64 - 1, 2);
        for y in 0..n {
            if y == x {
                continue;
            }
            let (a, b) = (x.min(y), x.max(y));
            match decided.iter().position(|&p| p == (a, b)) {
                Some(j) => {
                    if x == a {
                        // t[x][y] is the variable itself
                        coeffs[j] += one();
                    } else {
                        // t[x][y] = 1 - t[a][b]
                        coeffs[j] -= one();
                        rhs -= one();
                    }
                }
                None => rhs -= half(),
            }
        }
        lp.add_equality(coeffs, rhs);
    }

    // strictness rows: winner side minus margin minus slack equals 1/2
    for (j, &(x, y)) in decided.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); num_vars];
        let mut rhs = half();
        if c.winner(x, y) == Some(y) {
            coeffs[j] = one();
        } else {
            // t[y][x] = 1 - t[x][y]
            coeffs[j] = -one();
            rhs -= one();
        }
        coeffs[k + j] = -one(); // slack
        coeffs[num_vars - 1] = -one(); // margin
        lp.add_equality(coeffs, rhs);
    }
    (lp, decided)
}

/// A balanced matrix whose strict majority is exactly `c`, with the margin
/// achieved, when one exists.
pub fn weight_balance_witness(c: &ChoiceFunction) -> Option<(ProbMatrix, Rational)> {
    let (lp, decided) = weight_balance_program(c);
    let (feasible, witness) = max_margin_feasible(&lp).expect("well-formed program");
    if !feasible {
        return None;
    }
    let point = witness.expect("feasible margin program is bounded");
    let mut m = ProbMatrix::all_half(c.n());
    for (j, &(x, y)) in decided.iter().enumerate() {
        m.set(x, y, point[j].clone()).expect("unit interval");
    }
    let margin = point.last().cloned().expect("margin variable");
    Some((m, margin))
}

/// Some balanced matrix has `c` as its strict majority.
pub fn is_weight_balanced(c: &ChoiceFunction) -> bool {
    weight_balance_witness(c).is_some()
}
