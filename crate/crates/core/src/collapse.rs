//! Elementary collapses of regular 2-complexes, collapsibility search, core
//! classification and the embedding of collapsible complexes into a product
//! of two trees.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{CellTuple, Comp, ComplexError, Graph1Complex, ProductComplex, ProductSubcomplex, Regular2Complex};
use crate::document::{AnyComplex, ComplexDocument};
use crate::homology::{homology_of, surface_report};
use crate::verify::{is_connected, VerifierReport, Witness};

/// Removal of `free_face` together with its unique coface.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CollapseStep {
    pub free_face: String,
    pub coface: String,
}

fn ser_regular<S: Serializer>(k: &Regular2Complex, s: S) -> Result<S::Ok, S::Error> {
    AnyComplex::Regular2(k.clone()).to_document().serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapsePlan {
    pub steps: Vec<CollapseStep>,
    #[serde(serialize_with = "ser_regular")]
    pub core: Regular2Complex,
}

impl CollapsePlan {
    pub fn reaches_point(&self) -> bool {
        classify_core(&self.core) == CoreClass::Point
    }
}

#[derive(Debug, Error)]
pub enum CollapseError {
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("step {index} ({free_face}, {coface}) is not an elementary collapse")]
    NotFree { index: usize, free_face: String, coface: String },
    #[error("plan ends with {0} cells, not a single vertex")]
    NotToPoint(usize),
    #[error("expansion of `{cell}` violates the arc hypothesis: {detail}")]
    ArcHypothesis { cell: String, detail: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Live cells of a regular 2-complex with the number of live cofacets of each.
#[derive(Clone)]
struct CollapseState<'a> {
    k: &'a Regular2Complex,
    alive: [Vec<bool>; 3],
    cofaces: [Vec<usize>; 3],
}

impl<'a> CollapseState<'a> {
    fn new(k: &'a Regular2Complex) -> Self {
        let mut cofaces = [vec![0; k.vertex_count()], vec![0; k.edge_count()], vec![0; k.face_count()]];
        for e in k.graph().edges() {
            cofaces[0][e.tail] += 1;
            cofaces[0][e.head] += 1;
        }
        for f in k.faces() {
            for &(e, _) in &f.boundary {
                cofaces[1][e] += 1;
            }
        }
        Self {
            k,
            alive: [vec![true; k.vertex_count()], vec![true; k.edge_count()], vec![true; k.face_count()]],
            cofaces,
        }
    }

    fn facets(&self, dim: usize, i: usize) -> Vec<usize> {
        match dim {
            1 => {
                let e = self.k.graph().edge(i);
                vec![e.tail, e.head]
            }
            2 => self.k.face(i).boundary.iter().map(|&(e, _)| e).collect(),
            _ => Vec::new(),
        }
    }

    fn label(&self, dim: usize, i: usize) -> &str {
        match dim {
            0 => self.k.graph().vertex_id(i),
            1 => &self.k.graph().edge(i).id,
            _ => &self.k.face(i).id,
        }
    }

    fn live_coface(&self, dim: usize, i: usize) -> usize {
        // cofacets are rare enough that a scan is cheap at desk scale
        if dim == 1 {
            (0..self.k.face_count())
                .find(|&f| self.alive[2][f] && self.k.face(f).boundary.iter().any(|&(e, _)| e == i))
                .expect("counted coface exists")
        } else {
            (0..self.k.edge_count())
                .find(|&e| {
                    let ed = self.k.graph().edge(e);
                    self.alive[1][e] && (ed.tail == i || ed.head == i)
                })
                .expect("counted coface exists")
        }
    }

    /// Free pairs `(dim of free face, free face, coface)`, 2-dimensional pairs first.
    fn free_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for dim in [1, 0] {
            for i in 0..self.alive[dim].len() {
                if self.alive[dim][i] && self.cofaces[dim][i] == 1 {
                    out.push((dim, i, self.live_coface(dim, i)));
                }
            }
        }
        out
    }

    fn step_of(&self, (dim, i, c): (usize, usize, usize)) -> CollapseStep {
        CollapseStep {
            free_face: self.label(dim, i).to_string(),
            coface: self.label(dim + 1, c).to_string(),
        }
    }

    fn remove(&mut self, (dim, i, c): (usize, usize, usize)) {
        debug_assert!(self.alive[dim][i] && self.alive[dim + 1][c] && self.cofaces[dim][i] == 1);
        self.alive[dim][i] = false;
        self.alive[dim + 1][c] = false;
        for (d, cell) in [(dim, i), (dim + 1, c)] {
            for f in self.facets(d, cell) {
                self.cofaces[d - 1][f] -= 1;
            }
        }
    }

    fn live_count(&self) -> usize {
        self.alive.iter().flatten().filter(|&&a| a).count()
    }

    fn key(&self) -> Vec<u64> {
        let bits: usize = self.alive.iter().map(Vec::len).sum();
        let mut words = vec![0u64; bits.div_ceil(64)];
        for (n, a) in self.alive.iter().flatten().enumerate() {
            if *a {
                words[n / 64] |= 1 << (n % 64);
            }
        }
        words
    }

    fn core(&self) -> Regular2Complex {
        let live = |d: usize| -> Vec<usize> { (0..self.alive[d].len()).filter(|&i| self.alive[d][i]).collect() };
        self.k
            .restrict(&live(0), &live(1), &live(2))
            .expect("collapsing keeps the complex face-closed")
    }

    fn find(&self, label: &str) -> Option<(usize, usize)> {
        let g = self.k.graph();
        g.vertex_index(label)
            .map(|i| (0, i))
            .or_else(|| g.edge_index(label).map(|i| (1, i)))
            .or_else(|| self.k.face_index(label).map(|i| (2, i)))
    }
}

/// Every elementary collapse available in `k`, sorted by cell ids.
pub fn free_face_pairs(k: &Regular2Complex) -> BTreeSet<CollapseStep> {
    let s = CollapseState::new(k);
    s.free_pairs().into_iter().map(|p| s.step_of(p)).collect()
}

/// Collapses until no free face remains, always taking the smallest pair
/// by ids among the 2-dimensional pairs, or among the 1-dimensional ones
/// when no 2-dimensional pair exists.
pub fn greedy_collapse(k: &Regular2Complex) -> CollapsePlan {
    let mut s = CollapseState::new(k);
    let mut steps = Vec::new();
    loop {
        let pairs = s.free_pairs();
        let top = pairs.iter().any(|p| p.0 == 1);
        let Some(best) = pairs
            .into_iter()
            .filter(|p| !top || p.0 == 1)
            .min_by(|a, b| s.step_of(*a).cmp(&s.step_of(*b)))
        else {
            break;
        };
        steps.push(s.step_of(best));
        s.remove(best);
    }
    CollapsePlan { steps, core: s.core() }
}

/// Replays `steps` on `k`, checking that each is an elementary collapse.
pub fn replay(k: &Regular2Complex, steps: &[CollapseStep]) -> Result<Regular2Complex, CollapseError> {
    let mut s = CollapseState::new(k);
    apply_steps(&mut s, steps)?;
    Ok(s.core())
}

fn apply_steps(s: &mut CollapseState<'_>, steps: &[CollapseStep]) -> Result<(), CollapseError> {
    for (index, st) in steps.iter().enumerate() {
        let (d, i) = s.find(&st.free_face).ok_or_else(|| CollapseError::UnknownCell(st.free_face.clone()))?;
        let (dc, c) = s.find(&st.coface).ok_or_else(|| CollapseError::UnknownCell(st.coface.clone()))?;
        let ok = d < 2
            && dc == d + 1
            && s.alive[d][i]
            && s.alive[dc][c]
            && s.cofaces[d][i] == 1
            && s.facets(dc, c).contains(&i);
        if !ok {
            return Err(CollapseError::NotFree {
                index,
                free_face: st.free_face.clone(),
                coface: st.coface.clone(),
            });
        }
        s.remove((d, i, c));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Collapsibility {
    /// A full collapse to a single vertex.
    Collapsible { steps: Vec<CollapseStep>, nodes: usize },
    /// The search ran out of budget before deciding.
    NotCollapsibleWithinBudget { nodes: usize },
    /// Every collapse order was explored and none reaches a point.
    Refuted { nodes: usize },
}

/// Greedy collapse, then a memoized depth-first search over all collapse
/// orders. `nodes` counts search states visited; the greedy attempt is node 1.
pub fn exhaustive_collapsibility(k: &Regular2Complex, budget: usize) -> Collapsibility {
    assert!(budget >= 1, "budget must be at least 1");
    let greedy = greedy_collapse(k);
    if greedy.reaches_point() {
        return Collapsibility::Collapsible {
            steps: greedy.steps,
            nodes: 1,
        };
    }
    let mut search = Search {
        budget,
        nodes: 0,
        dead: HashSet::new(),
        path: Vec::new(),
    };
    match search.dfs(&CollapseState::new(k)) {
        Some(true) => Collapsibility::Collapsible {
            steps: search.path,
            nodes: search.nodes,
        },
        Some(false) => Collapsibility::Refuted { nodes: search.nodes },
        None => Collapsibility::NotCollapsibleWithinBudget { nodes: search.nodes },
    }
}

struct Search {
    budget: usize,
    nodes: usize,
    dead: HashSet<Vec<u64>>,
    path: Vec<CollapseStep>,
}

impl Search {
    /// `Some(found)` when decided, `None` on budget exhaustion.
    fn dfs(&mut self, s: &CollapseState<'_>) -> Option<bool> {
        if self.nodes >= self.budget {
            return None;
        }
        self.nodes += 1;
        if s.live_count() == 1 {
            return Some(true);
        }
        let key = s.key();
        if self.dead.contains(&key) {
            return Some(false);
        }
        for p in s.free_pairs() {
            let mut next = s.clone();
            next.remove(p);
            self.path.push(s.step_of(p));
            match self.dfs(&next)? {
                true => return Some(true),
                false => {
                    self.path.pop();
                }
            }
        }
        self.dead.insert(key);
        Some(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoreClass {
    Point,
    QuasiOneManifold,
    Torus,
    Other,
}

/// Classifies a collapse core as a point, an endpoint-free graph, a torus, or other.
pub fn classify_core(core: &Regular2Complex) -> CoreClass {
    let g = core.graph();
    if core.face_count() == 0 {
        if g.vertex_count() == 1 && g.edge_count() == 0 {
            return CoreClass::Point;
        }
        if g.edge_count() > 0 && (0..g.vertex_count()).all(|v| g.degree(v) >= 2) {
            return CoreClass::QuasiOneManifold;
        }
        return CoreClass::Other;
    }
    let r = surface_report(core);
    if r.is_closed_surface && r.connected && r.chi == 0 && r.orientable == Some(true) {
        CoreClass::Torus
    } else {
        CoreClass::Other
    }
}

/// A tree under construction; every added edge hangs a fresh leaf.
#[derive(Default)]
struct TreeBuilder {
    vertices: u32,
    edges: Vec<(u32, u32)>,
    adjacent: HashMap<(u32, u32), u32>,
}

impl TreeBuilder {
    fn single() -> Self {
        Self {
            vertices: 1,
            ..Self::default()
        }
    }

    fn pendant(&mut self, at: u32) -> (u32, u32) {
        let leaf = self.vertices;
        self.vertices += 1;
        let e = self.edges.len() as u32;
        self.edges.push((at, leaf));
        self.adjacent.insert((at, leaf), e);
        self.adjacent.insert((leaf, at), e);
        (leaf, e)
    }

    fn edge(&self, a: u32, b: u32) -> u32 {
        self.adjacent[&(a, b)]
    }

    fn build(&self, prefix: &str) -> Graph1Complex {
        let vs: Vec<String> = (0..self.vertices).map(|v| format!("{prefix}{v}")).collect();
        let es: Vec<(String, String, String)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| (format!("e{prefix}{i}"), format!("{prefix}{t}"), format!("{prefix}{h}")))
            .collect();
        Graph1Complex::new(&vs, &es).expect("builder produces a valid graph")
    }
}

type Point2 = [u32; 2];

fn vertex_cell(p: Point2) -> CellTuple {
    CellTuple(vec![Comp::Vertex(p[0]), Comp::Vertex(p[1])])
}

fn cell2(a: Comp, b: Comp, swap: bool) -> CellTuple {
    CellTuple(if swap { vec![b, a] } else { vec![a, b] })
}

fn step_cell(trees: &[TreeBuilder; 2], a: Point2, b: Point2) -> CellTuple {
    if a[0] == b[0] {
        CellTuple(vec![Comp::Vertex(a[0]), Comp::Edge(trees[1].edge(a[1], b[1]))])
    } else {
        debug_assert_eq!(a[1], b[1]);
        CellTuple(vec![Comp::Edge(trees[0].edge(a[0], b[0])), Comp::Vertex(a[1])])
    }
}

/// Open cells of an edge path: its edges and interior vertices.
fn path_cells(trees: &[TreeBuilder; 2], path: &[Point2]) -> BTreeSet<CellTuple> {
    let mut out: BTreeSet<CellTuple> = path.windows(2).map(|w| step_cell(trees, w[0], w[1])).collect();
    out.extend(path[1..path.len() - 1].iter().map(|&p| vertex_cell(p)));
    out
}

/// Faces of a product cell in a two-factor product of trees.
fn closure_2(trees: &[TreeBuilder; 2], c: &CellTuple) -> Vec<CellTuple> {
    let opts = |i: usize, x: Comp| -> Vec<Comp> {
        match x {
            Comp::Vertex(_) => vec![x],
            Comp::Edge(e) => {
                let (t, h) = trees[i].edges[e as usize];
                vec![x, Comp::Vertex(t), Comp::Vertex(h)]
            }
        }
    };
    let mut out = Vec::new();
    for a in opts(0, c.0[0]) {
        for b in opts(1, c.0[1]) {
            out.push(CellTuple(vec![a, b]));
        }
    }
    out
}

fn edge_ends(trees: &[TreeBuilder; 2], c: &CellTuple) -> (Point2, Point2) {
    match (c.0[0], c.0[1]) {
        (Comp::Vertex(v), Comp::Edge(e)) => {
            let (t, h) = trees[1].edges[e as usize];
            ([v, t], [v, h])
        }
        (Comp::Edge(e), Comp::Vertex(w)) => {
            let (t, h) = trees[0].edges[e as usize];
            ([t, w], [h, w])
        }
        _ => unreachable!("not a 1-cell"),
    }
}

/// The disc `D` glued along an arc: its square list and the count of runs.
struct Disc {
    squares: Vec<CellTuple>,
    runs: usize,
    corners: usize,
}

/// Builds the disc on the arc `path` (an edge path without repeated
/// vertices), adding one fresh pendant edge per maximal run.
///
/// Runs alternate between vertical (first coordinate fixed) and horizontal.
/// When the arc starts horizontally the two factors swap roles.
fn lemma_disc(trees: &mut [TreeBuilder; 2], path: &[Point2]) -> Disc {
    let swap = path[0][0] != path[1][0];
    // x: the coordinate held fixed along the first run
    let (fx, fy) = if swap { (1, 0) } else { (0, 1) };
    let mut runs: Vec<Vec<Point2>> = Vec::new();
    let mut last_vertical: Option<bool> = None;
    for w in path.windows(2) {
        let vertical = w[0][fx] == w[1][fx];
        if last_vertical == Some(vertical) {
            runs.last_mut().expect("run started").push(w[1]);
        } else {
            runs.push(vec![w[0], w[1]]);
            last_vertical = Some(vertical);
        }
    }
    // pendant[r] = the fresh edge added for run r, in tree fx for even r
    let pendant: Vec<u32> = runs
        .iter()
        .enumerate()
        .map(|(r, run)| {
            let (t, c) = if r % 2 == 0 { (fx, run[0][fx]) } else { (fy, run[0][fy]) };
            trees[t].pendant(c).1
        })
        .collect();
    let mut squares = Vec::new();
    for (r, run) in runs.iter().enumerate() {
        let p = Comp::Edge(pendant[r]);
        for w in run.windows(2) {
            if r % 2 == 0 {
                let e = Comp::Edge(trees[fy].edge(w[0][fy], w[1][fy]));
                squares.push(cell2(p, e, swap));
            } else {
                let e = Comp::Edge(trees[fx].edge(w[0][fx], w[1][fx]));
                squares.push(cell2(e, p, swap));
            }
        }
    }
    let corners = runs.len().saturating_sub(1);
    for r in 0..corners {
        let (x, y) = if r % 2 == 0 { (pendant[r], pendant[r + 1]) } else { (pendant[r + 1], pendant[r]) };
        squares.push(cell2(Comp::Edge(x), Comp::Edge(y), swap));
    }
    Disc {
        squares,
        runs: runs.len(),
        corners,
    }
}

/// Record of one expansion in the replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionRecord {
    pub cell: String,
    pub runs: usize,
    pub corners: usize,
    pub squares: usize,
}

/// A 2-complex realized cell by cell inside `tree1 x tree2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEmbedding {
    pub tree1: Graph1Complex,
    pub tree2: Graph1Complex,
    pub image: ProductSubcomplex,
    /// Input cell id to the open product cells making up its image.
    pub assignment: BTreeMap<String, BTreeSet<CellTuple>>,
    /// Pendant edges added: one per 1-cell expansion plus one per run of each disc.
    pub pendant_edges: usize,
    pub corner_squares: usize,
    pub expansions: Vec<ExpansionRecord>,
}

#[derive(Serialize)]
struct TreeEmbeddingDoc<'a> {
    tree1: ComplexDocument,
    tree2: ComplexDocument,
    image: Vec<String>,
    assignment: BTreeMap<&'a str, Vec<String>>,
    pendant_edges: usize,
    corner_squares: usize,
    expansions: &'a [ExpansionRecord],
}

impl Serialize for TreeEmbedding {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let p = self.image.parent();
        TreeEmbeddingDoc {
            tree1: AnyComplex::Graph(self.tree1.clone()).to_document(),
            tree2: AnyComplex::Graph(self.tree2.clone()).to_document(),
            image: self.image.cells().iter().map(|c| p.cell_label(c)).collect(),
            assignment: self
                .assignment
                .iter()
                .map(|(k, cs)| (k.as_str(), cs.iter().map(|c| p.cell_label(c)).collect()))
                .collect(),
            pendant_edges: self.pendant_edges,
            corner_squares: self.corner_squares,
            expansions: &self.expansions,
        }
        .serialize(s)
    }
}

/// Embeds a collapsible complex in a product of two trees by replaying a
/// full collapse backwards as expansions.
pub fn tree_embed(k: &Regular2Complex, plan: &CollapsePlan) -> Result<TreeEmbedding, CollapseError> {
    let mut state = CollapseState::new(k);
    apply_steps(&mut state, &plan.steps)?;
    if state.live_count() != 1 || state.alive[0].iter().filter(|&&a| a).count() != 1 {
        return Err(CollapseError::NotToPoint(state.live_count()));
    }
    let g = k.graph();
    let start = state.alive[0].iter().position(|&a| a).expect("one vertex left");
    let mut trees = [TreeBuilder::single(), TreeBuilder::single()];
    let mut vimg: HashMap<usize, Point2> = HashMap::from([(start, [0, 0])]);
    // tail-to-head product path of each embedded edge
    let mut epath: HashMap<usize, Vec<Point2>> = HashMap::new();
    let mut assignment: BTreeMap<String, BTreeSet<CellTuple>> =
        BTreeMap::from([(g.vertex_id(start).to_string(), BTreeSet::from([vertex_cell([0, 0])]))]);
    let mut image: BTreeSet<CellTuple> = BTreeSet::from([vertex_cell([0, 0])]);
    let mut expansions = Vec::new();
    let (mut pendant_edges, mut corner_squares) = (0, 0);

    for st in plan.steps.iter().rev() {
        let (d, i) = state.find(&st.free_face).expect("validated by replay");
        let (_, c) = state.find(&st.coface).expect("validated by replay");
        if d == 0 {
            let ed = g.edge(c);
            let other = if ed.tail == i { ed.head } else { ed.tail };
            let [v1, v2] = vimg[&other];
            let (leaf, e) = trees[1].pendant(v2);
            pendant_edges += 1;
            let new = [v1, leaf];
            vimg.insert(i, new);
            let path = if ed.tail == other { vec![[v1, v2], new] } else { vec![new, [v1, v2]] };
            epath.insert(c, path);
            let ecell = CellTuple(vec![Comp::Vertex(v1), Comp::Edge(e)]);
            image.extend([vertex_cell(new), ecell.clone()]);
            assignment.insert(g.vertex_id(i).to_string(), BTreeSet::from([vertex_cell(new)]));
            assignment.insert(ed.id.clone(), BTreeSet::from([ecell]));
            expansions.push(ExpansionRecord {
                cell: ed.id.clone(),
                runs: 1,
                corners: 0,
                squares: 0,
            });
        } else {
            let face = k.face(c);
            let fid = face.id.clone();
            let arc_err = |detail: String| CollapseError::ArcHypothesis {
                cell: fid.clone(),
                detail,
            };
            let pos = face.boundary.iter().position(|&(e, _)| e == i).expect("free edge bounds its coface");
            let n = face.boundary.len();
            let (_, free_dir) = face.boundary[pos];
            // arc A: the boundary walk starting after the free edge
            let mut arc: Vec<Point2> = Vec::new();
            for s in 1..n {
                let (e, dir) = face.boundary[(pos + s) % n];
                let mut p = epath.get(&e).cloned().ok_or_else(|| arc_err(format!("edge {} not yet embedded", g.edge(e).id)))?;
                if dir == crate::complex::Direction::Reverse {
                    p.reverse();
                }
                if let Some(&last) = arc.last() {
                    if last != p[0] {
                        return Err(arc_err("boundary images do not chain".into()));
                    }
                    arc.extend_from_slice(&p[1..]);
                } else {
                    arc = p;
                }
            }
            if arc.iter().collect::<HashSet<_>>().len() != arc.len() || arc.len() < 2 {
                return Err(arc_err("image of the boundary minus the free edge is not an arc".into()));
            }
            let disc = lemma_disc(&mut trees, &arc);
            pendant_edges += disc.runs;
            corner_squares += disc.corners;
            let arc_cells: BTreeSet<CellTuple> = path_cells(&trees, &arc)
                .into_iter()
                .chain([vertex_cell(arc[0]), vertex_cell(*arc.last().expect("nonempty"))])
                .collect();
            let mut closed: BTreeSet<CellTuple> = BTreeSet::new();
            let mut incidence: HashMap<CellTuple, usize> = HashMap::new();
            for sq in &disc.squares {
                for f in closure_2(&trees, sq) {
                    if f.dim() == 1 {
                        *incidence.entry(f.clone()).or_default() += 1;
                    }
                    closed.insert(f);
                }
            }
            if closed.iter().any(|x| image.contains(x) && !arc_cells.contains(x)) {
                return Err(arc_err("disc meets the existing image outside the arc".into()));
            }
            // the free side of D: boundary edges off the arc, walked from the arc's end
            let free_edges: Vec<&CellTuple> = incidence
                .iter()
                .filter(|(e, &n)| n == 1 && !arc_cells.contains(*e))
                .map(|(e, _)| e)
                .collect();
            let mut adj: HashMap<Point2, Vec<Point2>> = HashMap::new();
            for e in &free_edges {
                let (a, b) = edge_ends(&trees, e);
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
            let (from, to) = (*arc.last().expect("nonempty"), arc[0]);
            let mut walk = vec![from];
            while *walk.last().expect("nonempty") != to {
                let cur = *walk.last().expect("nonempty");
                let prev = walk.len().checked_sub(2).map(|j| walk[j]);
                let next = adj
                    .get(&cur)
                    .and_then(|ns| ns.iter().find(|&&x| Some(x) != prev).copied())
                    .ok_or_else(|| arc_err("free boundary of the disc is not a path".into()))?;
                walk.push(next);
                if walk.len() > free_edges.len() + 1 {
                    return Err(arc_err("free boundary of the disc does not close".into()));
                }
            }
            let free_cells = path_cells(&trees, &walk);
            let interior: BTreeSet<CellTuple> = closed
                .iter()
                .filter(|x| !arc_cells.contains(x) && !free_cells.contains(x))
                .cloned()
                .collect();
            // the free edge runs from the arc's end back to its start along the walk
            let ed = g.edge(i);
            if free_dir == crate::complex::Direction::Reverse {
                walk.reverse();
            }
            epath.insert(i, walk);
            image.extend(closed.iter().cloned());
            assignment.insert(ed.id.clone(), free_cells);
            assignment.insert(fid.clone(), interior);
            expansions.push(ExpansionRecord {
                cell: fid,
                runs: disc.runs,
                corners: disc.corners,
                squares: disc.squares.len(),
            });
        }
        state.alive[d][i] = true;
        state.alive[d + 1][c] = true;
    }
    let parent = Arc::new(ProductComplex::new(vec![trees[0].build("x"), trees[1].build("y")])?);
    let image = ProductSubcomplex::new(parent.clone(), image)?;
    Ok(TreeEmbedding {
        tree1: parent.factor(0).clone(),
        tree2: parent.factor(1).clone(),
        image,
        assignment,
        pendant_edges,
        corner_squares,
        expansions,
    })
}

fn is_tree(g: &Graph1Complex) -> bool {
    g.vertex_count() > 0 && g.components().len() == 1 && g.edge_count() + 1 == g.vertex_count()
}

/// Checks every invariant of a tree embedding of `k`, itemizing violations.
pub fn verify_tree_embedding(t: &TreeEmbedding, k: &Regular2Complex) -> VerifierReport {
    let mut w: Vec<Witness> = Vec::new();
    let mut fail = |cell: &str, reason: String| {
        w.push(Witness {
            cell: cell.to_string(),
            reason,
        })
    };
    for (name, tree) in [("tree1", &t.tree1), ("tree2", &t.tree2)] {
        if !is_tree(tree) {
            fail(name, "not a tree".into());
        }
    }
    let p = t.image.parent().clone();
    if p.factors() != [t.tree1.clone(), t.tree2.clone()] {
        fail("image", "ambient product is not tree1 x tree2".into());
    }
    if let Err(e) = ProductSubcomplex::new(p.clone(), t.image.cells().clone()) {
        fail("image", format!("not face-closed: {e}"));
    }
    let label = |c: &CellTuple| p.cell_label(c);

    // disjoint and exhaustive
    let mut owner: HashMap<&CellTuple, &str> = HashMap::new();
    for (cell, cs) in &t.assignment {
        for c in cs {
            if let Some(prev) = owner.insert(c, cell) {
                fail(cell, format!("open cell {} also assigned to {prev}", label(c)));
            }
            if !t.image.contains(c) {
                fail(cell, format!("assigned cell {} lies outside the image", label(c)));
            }
        }
    }
    for c in t.image.cells() {
        if !owner.contains_key(c) {
            fail("image", format!("cell {} is assigned to no input cell", label(c)));
        }
    }

    let g = k.graph();
    let empty = BTreeSet::new();
    let of = |id: &str| t.assignment.get(id).unwrap_or(&empty);
    let vertex_image = |v: usize| -> Option<CellTuple> {
        let cs = of(g.vertex_id(v));
        (cs.len() == 1).then(|| cs.iter().next().cloned()).flatten().filter(|c| c.dim() == 0)
    };
    for v in 0..g.vertex_count() {
        if vertex_image(v).is_none() {
            fail(g.vertex_id(v), "vertex image is not a single vertex".into());
        }
    }
    for e in g.edges() {
        let cs = of(&e.id);
        let (Some(a), Some(b)) = (vertex_image(e.tail), vertex_image(e.head)) else {
            continue;
        };
        if let Err(reason) = check_edge_path(&t.image, cs, &a, &b) {
            fail(&e.id, reason);
        }
    }
    for f in k.faces() {
        let mut rim: BTreeSet<CellTuple> = BTreeSet::new();
        for &(e, _) in &f.boundary {
            let ed = g.edge(e);
            rim.extend(of(&ed.id).iter().cloned());
            rim.extend([ed.tail, ed.head].into_iter().filter_map(vertex_image));
        }
        if let Err(reason) = check_disc(&t.image, of(&f.id), &rim) {
            fail(&f.id, reason);
        }
    }
    for c in g.vertices().iter().chain(g.edges().iter().map(|e| &e.id)).chain(k.faces().iter().map(|f| &f.id)) {
        if !t.assignment.contains_key(c) {
            fail(c, "input cell has no image".into());
        }
    }
    if t.assignment.len() != g.vertex_count() + g.edge_count() + k.face_count() {
        fail("assignment", "keys are not exactly the input cells".into());
    }

    let h = homology_of(&t.image);
    if !h.is_acyclic() || !is_connected(&t.image) {
        fail("image", format!("reduced homology is not trivial: betti {:?}", h.betti));
    }
    match t.image.to_regular2() {
        Ok(r) if greedy_collapse(&r).reaches_point() => {}
        Ok(_) => fail("image", "greedy collapse of the image stops before a point".into()),
        Err(e) => fail("image", format!("image is not a 2-complex: {e}")),
    }
    VerifierReport::from_witnesses(w)
}

/// `cells` must be the open edge path from `a` to `b`: its edges plus interior vertices.
fn check_edge_path(img: &ProductSubcomplex, cells: &BTreeSet<CellTuple>, a: &CellTuple, b: &CellTuple) -> Result<(), String> {
    if cells.iter().any(|c| c.dim() > 1) {
        return Err("edge image contains a 2-cell".into());
    }
    let edges: Vec<&CellTuple> = cells.iter().filter(|c| c.dim() == 1).collect();
    let inner: BTreeSet<&CellTuple> = cells.iter().filter(|c| c.dim() == 0).collect();
    if edges.len() != inner.len() + 1 || inner.contains(a) || inner.contains(b) || a == b {
        return Err("edge image is not an open arc between its endpoint images".into());
    }
    let mut degree: HashMap<CellTuple, usize> = HashMap::new();
    for e in &edges {
        let (t, h) = img.edge_endpoints(e);
        *degree.entry(t).or_default() += 1;
        *degree.entry(h).or_default() += 1;
    }
    let ok = degree.len() == inner.len() + 2
        && degree.get(a) == Some(&1)
        && degree.get(b) == Some(&1)
        && inner.iter().all(|v| degree.get(*v) == Some(&2));
    // degrees alone allow an arc plus disjoint cycles; the edge count rules that out
    if ok {
        Ok(())
    } else {
        Err("edge image is not an edge path between its endpoint images".into())
    }
}

/// `interior` must be an open disc whose boundary is exactly `rim`.
fn check_disc(img: &ProductSubcomplex, interior: &BTreeSet<CellTuple>, rim: &BTreeSet<CellTuple>) -> Result<(), String> {
    let squares: Vec<CellTuple> = interior.iter().filter(|c| c.dim() == 2).cloned().collect();
    if squares.is_empty() {
        return Err("2-cell image has no squares".into());
    }
    let disc = ProductSubcomplex::closure(img.parent().clone(), squares.clone()).map_err(|e| e.to_string())?;
    let mut incidence: HashMap<CellTuple, usize> = HashMap::new();
    for s in &squares {
        for f in img.parent().facets(s) {
            *incidence.entry(f).or_default() += 1;
        }
    }
    if let Some((e, _)) = incidence.iter().find(|(_, &n)| n > 2) {
        return Err(format!("edge {} lies in more than two squares", img.parent().cell_label(e)));
    }
    let boundary: Vec<&CellTuple> = incidence.iter().filter(|(_, &n)| n == 1).map(|(e, _)| e).collect();
    let mut bcells: BTreeSet<CellTuple> = boundary.iter().map(|&e| e.clone()).collect();
    let mut degree: HashMap<CellTuple, usize> = HashMap::new();
    for e in &boundary {
        let (t, h) = img.edge_endpoints(e);
        *degree.entry(t.clone()).or_default() += 1;
        *degree.entry(h.clone()).or_default() += 1;
        bcells.extend([t, h]);
    }
    let cycle = ProductSubcomplex::new(img.parent().clone(), bcells.clone()).map_err(|e| e.to_string())?;
    if !degree.values().all(|&d| d == 2) || !is_connected(&cycle) {
        return Err("boundary of the 2-cell image is not a single cycle".into());
    }
    if !is_connected(&disc) || disc.euler_characteristic() != 1 {
        return Err(format!("2-cell image is not a disc (chi = {})", disc.euler_characteristic()));
    }
    if &bcells != rim {
        return Err("boundary cycle differs from the image of the cell boundary".into());
    }
    let open: BTreeSet<CellTuple> = disc.cells().difference(&bcells).cloned().collect();
    if &open != interior {
        return Err("assigned cells are not the open disc".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cone_over_graph, dunce_hat, grid_square, m0_surface, theta, triangulated_disc};

    fn triangle() -> Regular2Complex {
        use crate::complex::Direction::Forward;
        Regular2Complex::new(
            &["a", "b", "c"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")],
            &[("t", vec![("ab", Forward), ("bc", Forward), ("ca", Forward)])],
        )
        .unwrap()
    }

    #[test]
    fn free_pairs_of_small_complexes() {
        assert_eq!(free_face_pairs(&triangle()).len(), 3);
        assert!(free_face_pairs(&dunce_hat()).is_empty());
        let edge = Regular2Complex::new::<&str>(&["a", "b"], &[("e", "a", "b")], &[]).unwrap();
        assert_eq!(free_face_pairs(&edge).len(), 2);
    }

    #[test]
    fn greedy_on_cone_and_torus() {
        let cone = cone_over_graph(&theta(3).unwrap());
        let plan = greedy_collapse(&cone);
        assert_eq!(classify_core(&plan.core), CoreClass::Point);
        assert_eq!(replay(&cone, &plan.steps).unwrap(), plan.core);
        let torus = m0_surface(1).unwrap().to_regular2().unwrap();
        let p = greedy_collapse(&torus);
        assert!(p.steps.is_empty());
        assert_eq!(classify_core(&p.core), CoreClass::Torus);
        assert_eq!(classify_core(&dunce_hat()), CoreClass::Other);
    }

    #[test]
    fn exhaustive_outcomes() {
        assert!(matches!(exhaustive_collapsibility(&dunce_hat(), 10), Collapsibility::Refuted { nodes: 1 }));
        let disc = triangulated_disc(5);
        assert!(matches!(exhaustive_collapsibility(&disc, 1), Collapsibility::Collapsible { .. }));
        let torus = m0_surface(1).unwrap().to_regular2().unwrap();
        assert!(matches!(exhaustive_collapsibility(&torus, 1), Collapsibility::Refuted { .. }));
    }

    #[test]
    fn triangle_embeds_as_one_disc() {
        let k = triangle();
        let plan = greedy_collapse(&k);
        let t = tree_embed(&k, &plan).unwrap();
        assert!(is_tree(&t.tree1) && is_tree(&t.tree2));
        assert_eq!(t.assignment.values().filter(|cs| cs.iter().any(|c| c.dim() == 2)).count(), 1);
        let report = verify_tree_embedding(&t, &k);
        assert!(report.verdict, "{:?}", report.witnesses);
    }

    #[test]
    fn fixtures_embed_and_verify() {
        for k in [cone_over_graph(&theta(3).unwrap()), triangulated_disc(6), grid_square(3)] {
            let plan = greedy_collapse(&k);
            let t = tree_embed(&k, &plan).unwrap();
            let report = verify_tree_embedding(&t, &k);
            assert!(report.verdict, "{:?}", report.witnesses);
            assert_eq!(t.image.euler_characteristic(), 1);
        }
    }

    #[test]
    fn plan_must_reach_a_point() {
        let k = triangle();
        let mut plan = greedy_collapse(&k);
        plan.steps.pop();
        assert!(matches!(tree_embed(&k, &plan), Err(CollapseError::NotToPoint(_))));
    }
}
