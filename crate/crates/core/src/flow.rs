//! Integer max-flow / min-cut (Dinic) and the max-weight closure reduction.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(i128),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
}

/// A directed network with a designated source and sink.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: i128,
    /// Maximal source side of a minimum cut: every node that cannot reach the
    /// sink in the final residual network.
    pub source_side: Vec<bool>,
    /// Flow on each arc, in insertion order.
    pub arc_flows: Vec<i128>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes {
            return Err(Error::InvalidInput(format!(
                "source {source} / sink {sink} outside 0..{nodes}"
            )));
        }
        if source == sink {
            return Err(Error::InvalidInput("source and sink coincide".into()));
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        })
    }

    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: Capacity) -> Result<()> {
        if tail >= self.nodes || head >= self.nodes {
            return Err(Error::InvalidInput(format!(
                "arc ({tail}, {head}) outside 0..{}",
                self.nodes
            )));
        }
        if let Capacity::Finite(c) = capacity {
            if c < 0 {
                return Err(Error::InvalidInput(format!(
                    "arc ({tail}, {head}) has negative capacity {c}"
                )));
            }
        }
        self.arcs.push(Arc {
            tail,
            head,
            capacity,
        });
        Ok(())
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Capacity of the cut `(side, !side)`; `None` if an infinite arc crosses it.
    pub fn cut_capacity(&self, side: &[bool]) -> Option<i128> {
        let mut total = 0i128;
        for a in &self.arcs {
            if side[a.tail] && !side[a.head] {
                match a.capacity {
                    Capacity::Finite(c) => total += c,
                    Capacity::Infinite => return None,
                }
            }
        }
        Some(total)
    }

    pub fn max_flow(&self) -> Result<MaxFlow> {
        let finite_total = self
            .arcs
            .iter()
            .try_fold(0i128, |acc, a| match a.capacity {
                Capacity::Finite(c) => acc.checked_add(c),
                Capacity::Infinite => Some(acc),
            })
            .ok_or(Error::Overflow("sum of finite capacities"))?;
        // Any cut containing an infinite arc is worth more than every finite cut.
        let infinity = finite_total
            .checked_add(1)
            .ok_or(Error::Overflow("infinite capacity sentinel"))?;

        let mut dinic = Dinic::new(self.nodes);
        let handles: Vec<usize> = self
            .arcs
            .iter()
            .map(|a| {
                let cap = match a.capacity {
                    Capacity::Finite(c) => c,
                    Capacity::Infinite => infinity,
                };
                dinic.add_edge(a.tail, a.head, cap)
            })
            .collect();
        let value = dinic.run(self.source, self.sink);
        if value >= infinity {
            return Err(Error::NoFiniteCut);
        }
        let reaches_sink = dinic.reaches_sink(self.sink);
        let source_side = reaches_sink.iter().map(|&r| !r).collect();
        let arc_flows = handles.iter().map(|&h| dinic.flow_on(h)).collect();
        Ok(MaxFlow {
            value,
            source_side,
            arc_flows,
        })
    }
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: i128,
    original: i128,
}

/// Dinic's algorithm over an adjacency-list residual graph.
struct Dinic {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![-1; n],
            next: vec![0; n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i128) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge {
            to,
            cap,
            original: cap,
        });
        self.adj[from].push(id);
        self.edges.push(Edge {
            to: from,
            cap: 0,
            original: 0,
        });
        self.adj[to].push(id + 1);
        id
    }

    fn flow_on(&self, id: usize) -> i128 {
        self.edges[id].original - self.edges[id].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i128) -> i128 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let id = self.adj[u][self.next[u]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.edges[id].cap -= d;
                    self.edges[id ^ 1].cap += d;
                    return d;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> i128 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|p| *p = 0);
            loop {
                let f = self.dfs(s, t, i128::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Nodes with a residual path to `t`.
    fn reaches_sink(&self, t: usize) -> Vec<bool> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            // residual arc u -> v exists iff the paired edge v -> u has flow to undo,
            // or an original u -> v edge has spare capacity
            for &id in &self.adj[v] {
                let u = self.edges[id].to;
                if !seen[u] && self.edges[id ^ 1].cap > 0 {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}

/// Node-weighted digraph; an arc `(u, v)` means choosing `u` forces `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureInstance {
    pub weights: Vec<i128>,
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub closed_set: Vec<bool>,
    pub weight: i128,
}

impl ClosureInstance {
    pub fn new(weights: Vec<i128>, arcs: Vec<(usize, usize)>) -> Result<Self> {
        let n = weights.len();
        if let Some(&(u, v)) = arcs.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::InvalidInput(format!(
                "dependency arc ({u}, {v}) outside 0..{n}"
            )));
        }
        Ok(ClosureInstance { weights, arcs })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_closed(&self, set: &[bool]) -> bool {
        self.arcs.iter().all(|&(u, v)| !set[u] || set[v])
    }

    pub fn weight_of(&self, set: &[bool]) -> i128 {
        self.weights
            .iter()
            .zip(set)
            .filter(|(_, &inside)| inside)
            .map(|(w, _)| *w)
            .sum()
    }
}

/// Maximum-weight closed set; the maximal one among all maximizers.
pub fn max_weight_closure(inst: &ClosureInstance) -> Result<Closure> {
    let n = inst.len();
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2, s, t)?;
    let mut positive = 0i128;
    for (v, &w) in inst.weights.iter().enumerate() {
        if w > 0 {
            positive = positive
                .checked_add(w)
                .ok_or(Error::Overflow("closure profit total"))?;
            net.add_arc(s, v, Capacity::Finite(w))?;
        } else if w < 0 {
            net.add_arc(v, t, Capacity::Finite(-w))?;
        }
    }
    for &(u, v) in &inst.arcs {
        net.add_arc(u, v, Capacity::Infinite)?;
    }
    let flow = net.max_flow()?;
    let closed_set = flow.source_side[..n].to_vec();
    Ok(Closure {
        closed_set,
        weight: positive - flow.value,
    })
}
