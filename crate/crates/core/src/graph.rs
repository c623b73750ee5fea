//! Simple undirected graphs, the special families and edge-list ingestion.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A simple undirected graph on vertices `0..n`.
///
/// Values are immutable; [`Graph::delete_edge`] and [`Graph::add_edge`]
/// return new graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("a graph needs at least one vertex".into()));
        }
        Ok(Self {
            adjacency: vec![BTreeSet::new(); n],
        })
    }

    /// Build from an edge iterator, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.insert(u, v)?;
        }
        Ok(g)
    }

    fn insert(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::Parameter(format!(
                "edge {{{u}, {v}}} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::Parameter(format!("self-loop at vertex {u}")));
        }
        if !self.adjacency[u].insert(v) {
            return Err(Error::Parameter(format!("duplicate edge {{{u}, {v}}}")));
        }
        self.adjacency[v].insert(u);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn size(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(BTreeSet::len).collect()
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order() && self.adjacency[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    /// Common degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adjacency.iter().all(|s| s.len() == d).then_some(d)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.size() == n * (n - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.order()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Two-colouring check by breadth-first search over every component.
    pub fn is_bipartite(&self) -> bool {
        let n = self.order();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &v in &self.adjacency[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.adjacency[u].remove(&v);
        g.adjacency[v].remove(&u);
        Ok(g)
    }

    pub fn add_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        let mut g = self.clone();
        g.insert(u, v)?;
        Ok(g)
    }

    /// Apply a vertex relabelling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        let n = self.order();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::Parameter("relabelling is not a permutation".into()));
        }
        Self::from_edges(n, self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Serialize in the edge-list text format accepted by [`read_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.order());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Parse the edge-list format: an optional `n <count>` header line, then
/// one `u v` pair per line. `#` starts a comment and blank lines are ignored.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, (Vertex, Vertex))> = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields[0] == "n" {
            if seen_content {
                return Err(Error::Parse {
                    line,
                    message: "the `n <count>` header must come first".into(),
                });
            }
            seen_content = true;
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: "expected `n <count>`".into(),
                });
            }
            let count = parse_index(fields[1], line)?;
            declared = Some((count, line));
            continue;
        }
        seen_content = true;
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected two vertex indices, found {} fields", fields.len()),
            });
        }
        let u = parse_index(fields[0], line)?;
        let v = parse_index(fields[1], line)?;
        edges.push((line, (u, v)));
    }

    let needed = edges
        .iter()
        .map(|&(_, (u, v))| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    let n = match declared {
        Some((count, line)) => {
            if count < needed {
                return Err(Error::Parse {
                    line,
                    message: format!("header declares {count} vertices but index {} appears", needed - 1),
                });
            }
            if count == 0 {
                return Err(Error::Parse {
                    line,
                    message: "vertex count must be positive".into(),
                });
            }
            count
        }
        None if needed == 0 => {
            return Err(Error::Parse {
                line: 0,
                message: "no vertices".into(),
            })
        }
        None => needed,
    };

    let mut g = Graph::empty(n)?;
    for (line, (u, v)) in edges {
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        if g.has_edge(u, v) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge {{{u}, {v}}}"),
            });
        }
        g.insert(u, v).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("`{s}` is not a vertex index"),
    })
}

/// The special graph families.
///
/// Vertex ordering is fixed: parts are listed consecutively, part 1 first.
/// In a star the centre is vertex 0; `StarPlus(n)` adds the edge `{1, 2}`.
/// `Crown { p, t }` numbers vertex `k` of part `i` as `i·p + k` and keeps
/// the cross edge `{(i,k), (j,l)}` exactly when `k ≠ l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    RegularMultipartite { p: usize, t: usize },
    Crown { p: usize, t: usize },
    Star(usize),
    StarPlus(usize),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Parameter(m));
        match self {
            FamilySpec::Complete(n) if *n < 1 => bad("complete graph needs n >= 1".into()),
            FamilySpec::CompleteBipartite(a, b) if *a < 1 || *b < 1 => {
                bad("bipartite part sizes must be >= 1".into())
            }
            FamilySpec::CompleteMultipartite(parts) if parts.len() < 2 => {
                bad(format!("multipartite graph needs t >= 2 parts, got {}", parts.len()))
            }
            FamilySpec::CompleteMultipartite(parts) if parts.iter().any(|&p| p < 1) => {
                bad("multipartite part sizes must be >= 1".into())
            }
            FamilySpec::RegularMultipartite { t, .. } if *t < 2 => {
                bad(format!("multipartite graph needs t >= 2 parts, got {t}"))
            }
            FamilySpec::RegularMultipartite { p, .. } if *p < 1 => {
                bad("multipartite part size must be >= 1".into())
            }
            FamilySpec::Crown { p, .. } if *p < 2 => bad(format!("crown graph needs p >= 2, got {p}")),
            FamilySpec::Crown { t, .. } if *t < 2 => bad(format!("crown graph needs t >= 2, got {t}")),
            FamilySpec::Star(n) if *n < 2 => bad(format!("star needs n >= 2, got {n}")),
            FamilySpec::StarPlus(n) if *n < 3 => bad(format!("star plus an edge needs n >= 3, got {n}")),
            _ => Ok(()),
        }
    }

    /// Part sizes for the complete multipartite shapes (stars included).
    pub fn parts(&self) -> Option<Vec<usize>> {
        match self {
            FamilySpec::Complete(n) => Some(vec![1; *n]),
            FamilySpec::CompleteBipartite(a, b) => Some(vec![*a, *b]),
            FamilySpec::CompleteMultipartite(parts) => Some(parts.clone()),
            FamilySpec::RegularMultipartite { p, t } => Some(vec![*p; *t]),
            FamilySpec::Star(n) => Some(vec![1, n - 1]),
            FamilySpec::Crown { .. } | FamilySpec::StarPlus(_) => None,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Complete(n) | FamilySpec::Star(n) | FamilySpec::StarPlus(n) => *n,
            FamilySpec::CompleteBipartite(a, b) => a + b,
            FamilySpec::CompleteMultipartite(parts) => parts.iter().sum(),
            FamilySpec::RegularMultipartite { p, t } | FamilySpec::Crown { p, t } => p * t,
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match self {
            FamilySpec::Complete(n) => {
                Graph::from_edges(*n, (0..*n).flat_map(|u| (u + 1..*n).map(move |v| (u, v))))
            }
            FamilySpec::Crown { p, t } => {
                let (p, t) = (*p, *t);
                let mut edges = Vec::new();
                for i in 0..t {
                    for j in i + 1..t {
                        for k in 0..p {
                            for l in 0..p {
                                if k != l {
                                    edges.push((i * p + k, j * p + l));
                                }
                            }
                        }
                    }
                }
                Graph::from_edges(p * t, edges)
            }
            FamilySpec::StarPlus(n) => FamilySpec::Star(*n).build()?.add_edge(1, 2),
            other => {
                let parts = other.parts().expect("multipartite shape");
                multipartite(&parts)
            }
        }
    }

    /// The edge removed by default in deletion experiments: `{0, 1}` for
    /// complete graphs and stars, the first vertex of part 1 and of part 2
    /// for multipartite families, and `{0, p + 1}` for crowns.
    pub fn default_deletion_edge(&self) -> Option<(Vertex, Vertex)> {
        match self {
            FamilySpec::Complete(n) if *n >= 2 => Some((0, 1)),
            FamilySpec::Star(_) => Some((0, 1)),
            FamilySpec::StarPlus(_) => Some((1, 2)),
            FamilySpec::Crown { p, .. } => Some((0, p + 1)),
            FamilySpec::CompleteBipartite(a, _) => Some((0, *a)),
            FamilySpec::CompleteMultipartite(parts) => Some((0, parts[0])),
            FamilySpec::RegularMultipartite { p, .. } => Some((0, *p)),
            FamilySpec::Complete(_) => None,
        }
    }

    /// The edge inserted by default in addition experiments: the leaf-leaf
    /// edge `{1, 2}` of a star.
    pub fn default_addition_edge(&self) -> Option<(Vertex, Vertex)> {
        match self {
            FamilySpec::Star(n) if *n >= 3 => Some((1, 2)),
            _ => None,
        }
    }
}

fn multipartite(parts: &[usize]) -> Result<Graph> {
    let labels: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| std::iter::repeat_n(i, p))
        .collect();
    let n = labels.len();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| labels[u] != labels[v]);
    Graph::from_edges(n, edges)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            FamilySpec::CompleteMultipartite(parts) => write!(f, "multipartite:{}", join(parts)),
            FamilySpec::RegularMultipartite { p, t: 3 } => write!(f, "tripartite:{p}"),
            FamilySpec::RegularMultipartite { p, t } => {
                write!(f, "multipartite:{}", join(&vec![*p; *t]))
            }
            FamilySpec::Crown { p, t } => write!(f, "crown:{p},{t}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::StarPlus(n) => write!(f, "starplus:{n}"),
        }
    }
}

/// Parses `complete:N`, `bipartite:A,B`, `multipartite:P1,P2,...`,
/// `tripartite:P`, `crown:P,T`, `star:N` and `starplus:N`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("family `{s}` is missing `:`")))?;
        let nums = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parameter(format!("`{a}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parameter(format!(
                    "family `{kind}` takes {k} argument(s), got {}",
                    nums.len()
                )))
            }
        };
        let spec = match kind.to_ascii_lowercase().as_str() {
            "complete" => {
                arity(1)?;
                FamilySpec::Complete(nums[0])
            }
            "bipartite" => {
                arity(2)?;
                FamilySpec::CompleteBipartite(nums[0], nums[1])
            }
            "multipartite" => FamilySpec::CompleteMultipartite(nums),
            "tripartite" => {
                arity(1)?;
                FamilySpec::RegularMultipartite { p: nums[0], t: 3 }
            }
            "crown" => {
                arity(2)?;
                FamilySpec::Crown { p: nums[0], t: nums[1] }
            }
            "star" => {
                arity(1)?;
                FamilySpec::Star(nums[0])
            }
            "starplus" => {
                arity(1)?;
                FamilySpec::StarPlus(nums[0])
            }
            other => return Err(Error::Parameter(format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}
