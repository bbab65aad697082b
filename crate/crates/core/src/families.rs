//! Constructors for the named graph families and k-tree recognition.
//!
//! Vertices are emitted in definition order: `v_1..v_n` become `0..n-1`,
//! so a k-path's last index is the vertex that the recurrences peel off.
//! A wheel's hub is the highest index and a k-star's clique comes first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Complete,
    Path,
    Cycle,
    Star,
    KPath,
    KCycle,
    KWheel,
    KStar,
    KTreeScript,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::Complete,
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::Star,
        FamilyKind::KPath,
        FamilyKind::KCycle,
        FamilyKind::KWheel,
        FamilyKind::KStar,
        FamilyKind::KTreeScript,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Complete => "complete",
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Star => "star",
            FamilyKind::KPath => "kpath",
            FamilyKind::KCycle => "kcycle",
            FamilyKind::KWheel => "kwheel",
            FamilyKind::KStar => "kstar",
            FamilyKind::KTreeScript => "ktree",
        }
    }

    /// The classical families carry `k = 1`.
    pub fn is_classical(self) -> bool {
        matches!(
            self,
            FamilyKind::Complete | FamilyKind::Path | FamilyKind::Cycle | FamilyKind::Star
        )
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse(1, format!("unknown family kind {s:?}")))
    }
}

/// One attachment step: `vertex` is joined to every vertex of `clique`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attachment {
    pub vertex: usize,
    pub clique: Vec<usize>,
}

/// A named family instance. For `KWheel`, `n` is the order of the
/// underlying k-cycle; the wheel itself has `n + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub k: usize,
    pub n: usize,
    pub script: Option<Vec<Attachment>>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, k: usize, n: usize) -> Self {
        FamilySpec {
            kind,
            k,
            n,
            script: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        FamilySpec::new(FamilyKind::Complete, 1, n)
    }

    pub fn path(n: usize) -> Self {
        FamilySpec::new(FamilyKind::Path, 1, n)
    }

    pub fn cycle(n: usize) -> Self {
        FamilySpec::new(FamilyKind::Cycle, 1, n)
    }

    pub fn star(n: usize) -> Self {
        FamilySpec::new(FamilyKind::Star, 1, n)
    }

    pub fn kpath(k: usize, n: usize) -> Self {
        FamilySpec::new(FamilyKind::KPath, k, n)
    }

    pub fn kcycle(k: usize, n: usize) -> Self {
        FamilySpec::new(FamilyKind::KCycle, k, n)
    }

    pub fn kwheel(k: usize, n: usize) -> Self {
        FamilySpec::new(FamilyKind::KWheel, k, n)
    }

    pub fn kstar(k: usize, n: usize) -> Self {
        FamilySpec::new(FamilyKind::KStar, k, n)
    }

    pub fn ktree(k: usize, script: Vec<Attachment>) -> Self {
        FamilySpec {
            kind: FamilyKind::KTreeScript,
            k,
            n: k + script.len(),
            script: Some(script),
        }
    }

    /// Number of vertices of the generated graph.
    pub fn order(&self) -> usize {
        match self.kind {
            FamilyKind::KWheel => self.n + 1,
            _ => self.n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (k, n) = (self.k, self.n);
        let fail = |why: &str| Err(Error::SpecDomain(format!("{self}: {why}")));
        if k == 0 {
            return fail("k must be positive");
        }
        if self.kind.is_classical() && k != 1 {
            return fail("classical families take k = 1");
        }
        let ok = match self.kind {
            FamilyKind::Complete | FamilyKind::Path => n >= 1,
            FamilyKind::Cycle => n >= 3,
            FamilyKind::Star => n >= 2,
            FamilyKind::KPath | FamilyKind::KTreeScript => n >= k,
            FamilyKind::KCycle | FamilyKind::KWheel => n >= k + 2,
            FamilyKind::KStar => n > k,
        };
        if !ok {
            return fail(match self.kind {
                FamilyKind::Complete | FamilyKind::Path => "needs n >= 1",
                FamilyKind::Cycle => "needs n >= 3",
                FamilyKind::Star => "needs n >= 2",
                FamilyKind::KPath | FamilyKind::KTreeScript => "needs n >= k",
                FamilyKind::KCycle | FamilyKind::KWheel => "needs n >= k + 2",
                FamilyKind::KStar => "needs n > k",
            });
        }
        match (&self.kind, &self.script) {
            (FamilyKind::KTreeScript, None) => return fail("k-tree needs an attachment script"),
            (FamilyKind::KTreeScript, Some(s)) if s.len() + k != n => {
                return fail("script length must be n - k")
            }
            (FamilyKind::KTreeScript, _) => {}
            (_, Some(_)) => return fail("only ktree takes a script"),
            (_, None) => {}
        }
        if self.order() > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "family order",
                got: self.order(),
                limit: MAX_VERTICES,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.kind, self.k, self.n)
    }
}

/// `kind:k:n`, or `kind:n` for the classical families.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(1, format!("bad number {t:?} in spec {s:?}")))
        };
        let (kind, k, n) = match parts[..] {
            [kind, k, n] => (kind.parse::<FamilyKind>()?, num(k)?, num(n)?),
            [kind, n] => {
                let kind = kind.parse::<FamilyKind>()?;
                if !kind.is_classical() {
                    return Err(Error::parse(1, format!("{kind} needs kind:k:n")));
                }
                (kind, 1, num(n)?)
            }
            _ => return Err(Error::parse(1, format!("expected kind:k:n, got {s:?}"))),
        };
        Ok(FamilySpec::new(kind, k, n))
    }
}

/// Reads an attachment script: one line per added vertex holding the new
/// vertex index followed by the `k` clique members it attaches to.
pub fn parse_script(text: &str, k: usize) -> Result<Vec<Attachment>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(i + 1, format!("bad vertex index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if nums.len() != k + 1 {
            return Err(Error::parse(
                i + 1,
                format!("expected {} integers, got {}", k + 1, nums.len()),
            ));
        }
        out.push(Attachment {
            vertex: nums[0],
            clique: nums[1..].to_vec(),
        });
    }
    Ok(out)
}

fn kpath_edges(k: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i.saturating_sub(k)..i).map(move |j| (j, i)))
}

fn build_ktree(k: usize, script: &[Attachment]) -> Result<Graph> {
    let n = k + script.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut adj = vec![0u64; n];
    let mut add = |u: usize, v: usize, adj: &mut Vec<u64>| {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        edges.push((u, v));
    };
    for i in 0..k {
        for j in 0..i {
            add(j, i, &mut adj);
        }
    }
    for (step, a) in script.iter().enumerate() {
        let expected = k + step;
        if a.vertex != expected {
            return Err(Error::InvalidScript(format!(
                "step {}: new vertex must be {expected}, got {}",
                step + 1,
                a.vertex
            )));
        }
        let clique: VertexSet = a.clique.iter().copied().collect();
        let valid = a.clique.len() == k
            && clique.len() == k
            && a.clique.iter().all(|&v| v < expected)
            && clique
                .iter()
                .all(|v| clique.without(v).bits() & !adj[v] == 0);
        if !valid {
            return Err(Error::InvalidScript(format!(
                "step {}: {:?} is not a {k}-clique of existing vertices",
                step + 1,
                a.clique
            )));
        }
        for &v in &a.clique {
            add(v, expected, &mut adj);
        }
    }
    Graph::from_edges(n, edges)
}

/// Realizes a family instance as a graph.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let (k, n) = (spec.k, spec.n);
    match spec.kind {
        FamilyKind::Complete => Graph::complete(n),
        FamilyKind::Path => Graph::from_edges(n, kpath_edges(1, n)),
        FamilyKind::KPath => Graph::from_edges(n, kpath_edges(k, n)),
        FamilyKind::Cycle => Graph::from_edges(n, kpath_edges(1, n).chain([(0, n - 1)])),
        FamilyKind::KCycle => Graph::from_edges(n, kpath_edges(k, n).chain([(0, n - 1)])),
        FamilyKind::KWheel => {
            let cycle = Graph::from_edges(n, kpath_edges(k, n).chain([(0, n - 1)]))?;
            cycle.join(&Graph::complete(1)?)
        }
        FamilyKind::Star => Graph::complete(1)?.join(&Graph::empty(n - 1)?),
        FamilyKind::KStar => Graph::complete(k)?.join(&Graph::empty(n - k)?),
        FamilyKind::KTreeScript => build_ktree(k, spec.script.as_deref().unwrap_or_default()),
    }
}

/// Whether `g` is a k-tree: strip simplicial degree-`k` vertices until only
/// `K_k` is left.
pub fn verify_k_tree(g: &Graph, k: usize) -> bool {
    if k == 0 || g.n() < k {
        return false;
    }
    let nb: Vec<u64> = (0..g.n())
        .map(|v| g.neighbors(v).map(VertexSet::bits).unwrap_or(0))
        .collect();
    let mut alive = g.vertices().bits();
    while alive.count_ones() as usize > k {
        let removable = VertexSet::from_bits(alive).iter().find(|&v| {
            let live_nb = nb[v] & alive;
            live_nb.count_ones() as usize == k && g.is_clique(VertexSet::from_bits(live_nb))
        });
        match removable {
            Some(v) => alive &= !(1 << v),
            None => return false,
        }
    }
    g.is_clique(VertexSet::from_bits(alive))
}
