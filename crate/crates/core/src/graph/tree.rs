use std::collections::VecDeque;

use super::{Graph, GraphError, Vertex};

/// A rooted tree on the vertices of its graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    graph: Graph,
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
    children: Vec<Vec<Vertex>>,
    order: Vec<Vertex>,
}

impl Tree {
    /// Roots `graph` at `root`; fails unless it is connected with `n - 1` edges.
    pub fn new(graph: Graph, root: Vertex) -> Result<Self, GraphError> {
        let n = graph.n();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if root >= n {
            return Err(GraphError::NotATree(format!("root {root} out of range")));
        }
        if graph.m() != n - 1 {
            return Err(GraphError::NotATree(format!("{} edges on {} vertices", graph.m(), n)));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in graph.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some(u);
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        if order.len() != n {
            let v = (0..n).find(|&v| depth[v] == usize::MAX).unwrap();
            return Err(GraphError::Disconnected(root, v));
        }
        Ok(Tree {
            graph,
            root,
            parent,
            depth,
            children,
            order,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    /// Children in ascending id order.
    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> &[Vertex] {
        &self.order
    }

    /// The unique tree path from `u` to `v`, both endpoints included.
    pub fn path(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let (mut a, mut b) = (u, v);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[a] > self.depth[b] {
            front.push(a);
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            back.push(b);
            b = self.parent[b].unwrap();
        }
        while a != b {
            front.push(a);
            back.push(b);
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        front.push(a);
        front.extend(back.into_iter().rev());
        front
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> usize {
        self.path(u, v).len() - 1
    }

    /// Vertices of the subtree rooted at `v`, in preorder with ascending children.
    pub fn subtree(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        out
    }
}

/// Breadth-first spanning tree rooted at 0, children visited in ascending order.
pub fn spanning_tree(g: &Graph) -> Result<Tree, GraphError> {
    spanning_tree_from(g, 0)
}

/// Breadth-first spanning tree rooted at `root`.
pub fn spanning_tree_from(g: &Graph, root: Vertex) -> Result<Tree, GraphError> {
    g.require_connected()?;
    let mut seen = vec![false; g.n()];
    let mut edges = Vec::with_capacity(g.n().saturating_sub(1));
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    Tree::new(Graph::new(g.n(), edges)?, root)
}
