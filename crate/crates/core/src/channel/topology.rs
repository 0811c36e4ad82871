use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use super::ChannelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRole {
    Source,
    Internal,
    Receiver,
}

impl fmt::Display for NodeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeRole::Source => "source",
            NodeRole::Internal => "internal",
            NodeRole::Receiver => "receiver",
        })
    }
}

impl FromStr for NodeRole {
    type Err = ChannelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "source" => Ok(NodeRole::Source),
            "internal" => Ok(NodeRole::Internal),
            "receiver" => Ok(NodeRole::Receiver),
            other => Err(ChannelError::Parse(format!("unknown node role {other:?}"))),
        }
    }
}

/// A directed acyclic multigraph with one source and unit edge capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkTopology {
    names: Vec<String>,
    roles: Vec<NodeRole>,
    edges: Vec<(usize, usize)>,
    order: Vec<usize>,
    source: usize,
}

impl NetworkTopology {
    /// Validates roles, acyclicity and reachability of every receiver.
    pub fn new(nodes: Vec<(String, NodeRole)>, edges: Vec<(usize, usize)>) -> Result<Self, ChannelError> {
        let invalid = |msg: String| Err(ChannelError::InvalidTopology(msg));
        let count = nodes.len();
        let (names, roles): (Vec<String>, Vec<NodeRole>) = nodes.into_iter().unzip();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return invalid(format!("duplicate node {name:?}"));
            }
        }
        let sources: Vec<usize> = (0..count).filter(|&i| roles[i] == NodeRole::Source).collect();
        let [source] = sources[..] else {
            return invalid(format!("expected exactly one source, found {}", sources.len()));
        };
        if !roles.contains(&NodeRole::Receiver) {
            return invalid("no receiver".into());
        }
        for &(a, b) in &edges {
            if a >= count || b >= count {
                return invalid(format!("edge ({a}, {b}) references a missing node"));
            }
            if b == source {
                return invalid("the source has an incoming edge".into());
            }
        }

        // Kahn's algorithm, smallest index first for a deterministic order
        let mut indegree = vec![0usize; count];
        for &(_, b) in &edges {
            indegree[b] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..count).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(count);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &(a, b) in &edges {
                if a == v {
                    indegree[b] -= 1;
                    if indegree[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        if order.len() != count {
            return invalid("the graph has a cycle".into());
        }

        let topology = NetworkTopology {
            names,
            roles,
            edges,
            order,
            source,
        };
        for r in topology.receivers() {
            if topology.min_cut(r) == 0 {
                return invalid(format!("receiver {:?} is unreachable", topology.names[r]));
            }
        }
        Ok(topology)
    }

    /// Source `s`, relays `a`, `b`, bottleneck `c -> d`, receivers `r1`, `r2`.
    /// Min-cut 2 to each receiver.
    pub fn butterfly() -> Self {
        let text = "\
node s source
node a internal
node b internal
node c internal
node d internal
node r1 receiver
node r2 receiver
edge s a
edge s b
edge a c
edge b c
edge c d
edge a r1
edge b r2
edge d r1
edge d r2
";
        text.parse().expect("valid butterfly")
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, node: usize) -> &str {
        &self.names[node]
    }

    pub fn role(&self, node: usize) -> NodeRole {
        self.roles[node]
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn receivers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.names.len()).filter(|&i| self.roles[i] == NodeRole::Receiver)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Nodes in topological order (ties broken by declaration order).
    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    /// Indices of the edges leaving `node`, in declaration order.
    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].0 == node)
    }

    /// Maximum number of edge-disjoint paths from the source to `target`.
    pub fn min_cut(&self, target: usize) -> usize {
        let count = self.names.len();
        // residual capacities on a dense matrix; parallel edges add up
        let mut cap = vec![vec![0usize; count]; count];
        for &(a, b) in &self.edges {
            cap[a][b] += 1;
        }
        let mut flow = 0;
        loop {
            let mut parent = vec![usize::MAX; count];
            parent[self.source] = self.source;
            let mut queue = VecDeque::from([self.source]);
            while let Some(v) = queue.pop_front() {
                for w in 0..count {
                    if cap[v][w] > 0 && parent[w] == usize::MAX {
                        parent[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            if parent[target] == usize::MAX || target == self.source {
                return flow;
            }
            let mut w = target;
            while w != self.source {
                let v = parent[w];
                cap[v][w] -= 1;
                cap[w][v] += 1;
                w = v;
            }
            flow += 1;
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (name, role) in self.names.iter().zip(&self.roles) {
            s.push_str(&format!("node {name} {role}\n"));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("edge {} {}\n", self.names[a], self.names[b]));
        }
        s
    }
}

impl FromStr for NetworkTopology {
    type Err = ChannelError;

    /// `node <name> <source|internal|receiver>` and `edge <from> <to>`
    /// lines; blank lines and `#` comments are ignored.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut nodes: Vec<(String, NodeRole)> = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let lookup = |name: &str| {
                nodes
                    .iter()
                    .position(|(n, _)| n == name)
                    .ok_or_else(|| ChannelError::UnknownNode(name.to_string()))
            };
            match tokens[..] {
                ["node", name, role] => nodes.push((name.to_string(), role.parse()?)),
                ["edge", a, b] => edges.push((lookup(a)?, lookup(b)?)),
                _ => {
                    return Err(ChannelError::Parse(format!("line {}: {raw:?}", lineno + 1)));
                }
            }
        }
        NetworkTopology::new(nodes, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn butterfly_cuts() {
        let net = NetworkTopology::butterfly();
        assert_eq!(net.node_count(), 7);
        let r: Vec<usize> = net.receivers().collect();
        assert_eq!(r.len(), 2);
        for &x in &r {
            assert_eq!(net.min_cut(x), 2);
        }
        assert_eq!(net.topological_order()[0], net.source());
        let back: NetworkTopology = net.to_text().parse().unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn parallel_edges_add_capacity() {
        let net: NetworkTopology = "node s source\nnode r receiver\nedge s r\nedge s r # twice\n".parse().unwrap();
        assert_eq!(net.min_cut(1), 2);
        assert_eq!(net.out_edges(0).count(), 2);
    }

    #[test]
    fn invalid_topologies() {
        let cases = [
            "node s source\nnode t source\nnode r receiver\nedge s r\n",
            "node s source\nnode a internal\n",
            "node s source\nnode a internal\nnode r receiver\nedge s a\nedge a r\nedge r a\n",
            "node s source\nnode r receiver\n",
            "node s source\nnode r receiver\nedge r s\n",
            "node s source\nnode s receiver\nedge s s\n",
        ];
        for text in cases {
            assert!(matches!(
                text.parse::<NetworkTopology>(),
                Err(ChannelError::InvalidTopology(_))
            ), "{text:?}");
        }
        assert!(matches!(
            "node s source\nedge s x\n".parse::<NetworkTopology>(),
            Err(ChannelError::UnknownNode(_))
        ));
        assert!(matches!(
            "node s hub\n".parse::<NetworkTopology>(),
            Err(ChannelError::Parse(_))
        ));
        assert!(matches!(
            "vertex s\n".parse::<NetworkTopology>(),
            Err(ChannelError::Parse(_))
        ));
    }
}
