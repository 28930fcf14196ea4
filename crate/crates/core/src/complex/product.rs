use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::graph::{Direction, Graph1Complex};
use super::regular::{FaceSpec, Regular2Complex};
use super::ComplexError;

/// One coordinate of a product cell: a vertex or an edge of its factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comp {
    Vertex(u32),
    Edge(u32),
}

impl Comp {
    pub fn is_edge(self) -> bool {
        matches!(self, Comp::Edge(_))
    }
}

/// A cell of a product of graphs; its dimension is the number of edge coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellTuple(pub Vec<Comp>);

impl CellTuple {
    pub fn dim(&self) -> usize {
        self.0.iter().filter(|c| c.is_edge()).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[Comp] {
        &self.0
    }

    /// Restriction to the coordinates listed in `idx`, in that order.
    pub fn restrict(&self, idx: &[usize]) -> CellTuple {
        CellTuple(idx.iter().map(|&i| self.0[i]).collect())
    }

    pub fn concat(&self, other: &CellTuple) -> CellTuple {
        CellTuple(self.0.iter().chain(&other.0).copied().collect())
    }
}

/// The product cell complex `K_1 x ... x K_n` of graphs. Cells are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductComplex {
    factors: Vec<Graph1Complex>,
}

impl ProductComplex {
    pub fn new(factors: Vec<Graph1Complex>) -> Result<Self, ComplexError> {
        if factors.is_empty() {
            return Err(ComplexError::NoFactors);
        }
        Ok(Self { factors })
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Graph1Complex] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Graph1Complex {
        &self.factors[i]
    }

    pub fn contains(&self, cell: &CellTuple) -> bool {
        cell.len() == self.factors.len()
            && cell.0.iter().zip(&self.factors).all(|(c, g)| match *c {
                Comp::Vertex(v) => (v as usize) < g.vertex_count(),
                Comp::Edge(e) => (e as usize) < g.edge_count(),
            })
    }

    fn check(&self, cell: &CellTuple) -> Result<(), ComplexError> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(ComplexError::InvalidTuple(format!("{cell:?}")))
        }
    }

    /// Number of cells per dimension, from `prod_i (V_i + E_i t)`.
    pub fn cell_counts(&self) -> Vec<usize> {
        let mut poly = vec![1usize];
        for g in &self.factors {
            let mut next = vec![0; poly.len() + 1];
            for (d, &c) in poly.iter().enumerate() {
                next[d] += c * g.vertex_count();
                next[d + 1] += c * g.edge_count();
            }
            poly = next;
        }
        poly
    }

    /// Every cell of the product, in lexicographic order.
    pub fn all_cells(&self) -> Vec<CellTuple> {
        let mut out = vec![Vec::new()];
        for g in &self.factors {
            let choices: Vec<Comp> = (0..g.vertex_count() as u32)
                .map(Comp::Vertex)
                .chain((0..g.edge_count() as u32).map(Comp::Edge))
                .collect();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        let mut cells: Vec<CellTuple> = out.into_iter().map(CellTuple).collect();
        cells.sort();
        cells
    }

    pub fn endpoints(&self, factor: usize, e: u32) -> (Comp, Comp) {
        let ed = self.factors[factor].edge(e as usize);
        (Comp::Vertex(ed.tail as u32), Comp::Vertex(ed.head as u32))
    }

    /// Cubical boundary: `(face, sign)` with sign `(-1)^(edges before i)` on the
    /// head face and its negative on the tail face.
    pub fn boundary(&self, cell: &CellTuple) -> Vec<(CellTuple, i64)> {
        let mut out = Vec::with_capacity(2 * cell.dim());
        let mut before = 0;
        for (i, &c) in cell.0.iter().enumerate() {
            if let Comp::Edge(e) = c {
                let sign = if before % 2 == 0 { 1 } else { -1 };
                let (t, h) = self.endpoints(i, e);
                let mut head = cell.clone();
                head.0[i] = h;
                let mut tail = cell.clone();
                tail.0[i] = t;
                out.push((head, sign));
                out.push((tail, -sign));
                before += 1;
            }
        }
        out
    }

    /// Codimension-one faces.
    pub fn facets(&self, cell: &CellTuple) -> Vec<CellTuple> {
        self.boundary(cell).into_iter().map(|(c, _)| c).collect()
    }

    /// All proper faces: every way of replacing a nonempty subset of edge
    /// coordinates by one of that edge's endpoints.
    pub fn faces(&self, cell: &CellTuple) -> Result<BTreeSet<CellTuple>, ComplexError> {
        self.check(cell)?;
        let mut all = BTreeSet::new();
        self.collect_faces(cell, &mut all);
        all.remove(cell);
        Ok(all)
    }

    fn collect_faces(&self, cell: &CellTuple, acc: &mut BTreeSet<CellTuple>) {
        if !acc.insert(cell.clone()) {
            return;
        }
        for f in self.facets(cell) {
            self.collect_faces(&f, acc);
        }
    }

    /// Id of a coordinate, namespaced by factor index: `"0:e3"`.
    pub fn component_id(&self, factor: usize, c: Comp) -> String {
        let g = &self.factors[factor];
        match c {
            Comp::Vertex(v) => format!("{factor}:{}", g.vertex_id(v as usize)),
            Comp::Edge(e) => format!("{factor}:{}", g.edge(e as usize).id),
        }
    }

    pub fn parse_component(&self, factor: usize, s: &str) -> Result<Comp, ComplexError> {
        let bad = || ComplexError::BadComponent(s.to_string());
        let (prefix, id) = s.split_once(':').ok_or_else(bad)?;
        if prefix.parse::<usize>().ok() != Some(factor) || factor >= self.factors.len() {
            return Err(bad());
        }
        let g = &self.factors[factor];
        if let Some(v) = g.vertex_index(id) {
            Ok(Comp::Vertex(v as u32))
        } else if let Some(e) = g.edge_index(id) {
            Ok(Comp::Edge(e as u32))
        } else {
            Err(bad())
        }
    }

    pub fn cell_ids(&self, cell: &CellTuple) -> Vec<String> {
        cell.0.iter().enumerate().map(|(i, &c)| self.component_id(i, c)).collect()
    }

    /// Human-readable cell label such as `(0:e3,1:v0)`.
    pub fn cell_label(&self, cell: &CellTuple) -> String {
        format!("({})", self.cell_ids(cell).join(","))
    }

    pub fn parse_cell<S: AsRef<str>>(&self, ids: &[S]) -> Result<CellTuple, ComplexError> {
        if ids.len() != self.factors.len() {
            return Err(ComplexError::InvalidTuple(format!(
                "{} components for {} factors",
                ids.len(),
                self.factors.len()
            )));
        }
        ids.iter()
            .enumerate()
            .map(|(i, s)| self.parse_component(i, s.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(CellTuple)
    }

    /// Looks up a cell by ids local to each factor (no namespace prefix).
    pub fn cell<S: AsRef<str>>(&self, local_ids: &[S]) -> Result<CellTuple, ComplexError> {
        let ids: Vec<String> = local_ids
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{i}:{}", s.as_ref()))
            .collect();
        self.parse_cell(&ids)
    }
}

/// A face-closed set of cells of a product complex.
#[derive(Clone, PartialEq, Eq)]
pub struct ProductSubcomplex {
    parent: Arc<ProductComplex>,
    cells: BTreeSet<CellTuple>,
}

impl fmt::Debug for ProductSubcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.cells.iter().map(|c| self.parent.cell_label(c)).collect();
        f.debug_struct("ProductSubcomplex")
            .field("factors", &self.parent.factor_count())
            .field("cells", &labels)
            .finish()
    }
}

impl ProductSubcomplex {
    /// Validates membership and face closure.
    pub fn new(parent: Arc<ProductComplex>, cells: BTreeSet<CellTuple>) -> Result<Self, ComplexError> {
        for c in &cells {
            parent.check(c)?;
            if let Some(f) = parent.facets(c).into_iter().find(|f| !cells.contains(f)) {
                return Err(ComplexError::NotFaceClosed {
                    cell: parent.cell_label(c),
                    missing: parent.cell_label(&f),
                });
            }
        }
        Ok(Self { parent, cells })
    }

    /// Smallest face-closed set containing `cells`.
    pub fn closure<I: IntoIterator<Item = CellTuple>>(parent: Arc<ProductComplex>, cells: I) -> Result<Self, ComplexError> {
        let mut all = BTreeSet::new();
        for c in cells {
            parent.check(&c)?;
            parent.collect_faces(&c, &mut all);
        }
        Ok(Self { parent, cells: all })
    }

    pub fn full(parent: Arc<ProductComplex>) -> Self {
        let cells = parent.all_cells().into_iter().collect();
        Self { parent, cells }
    }

    pub fn empty(parent: Arc<ProductComplex>) -> Self {
        Self {
            parent,
            cells: BTreeSet::new(),
        }
    }

    pub fn parent(&self) -> &Arc<ProductComplex> {
        &self.parent
    }

    pub fn cells(&self) -> &BTreeSet<CellTuple> {
        &self.cells
    }

    pub fn contains(&self, c: &CellTuple) -> bool {
        self.cells.contains(c)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(CellTuple::dim).max()
    }

    pub fn cells_of_dim(&self, d: usize) -> impl Iterator<Item = &CellTuple> + '_ {
        self.cells.iter().filter(move |c| c.dim() == d)
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        let top = self.dimension().map_or(0, |d| d + 1);
        let mut counts = vec![0; top];
        for c in &self.cells {
            counts[c.dim()] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Closure of the `n`-cells; equal to `self` exactly when every cell lies in an `n`-cell.
    pub fn top_cell_span(&self, n: usize) -> Self {
        Self::closure(self.parent.clone(), self.cells_of_dim(n).cloned()).expect("cells come from the parent")
    }

    pub fn union(&self, other: &Self) -> Result<Self, ComplexError> {
        if self.parent != other.parent {
            return Err(ComplexError::ParentMismatch);
        }
        Ok(Self {
            parent: self.parent.clone(),
            cells: self.cells.union(&other.cells).cloned().collect(),
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, ComplexError> {
        if self.parent != other.parent {
            return Err(ComplexError::ParentMismatch);
        }
        Ok(Self {
            parent: self.parent.clone(),
            cells: self.cells.intersection(&other.cells).cloned().collect(),
        })
    }

    /// Removes the given open cells; fails if the result is not face-closed.
    pub fn remove_open(&self, open: &BTreeSet<CellTuple>) -> Result<Self, ComplexError> {
        Self::new(self.parent.clone(), self.cells.difference(open).cloned().collect())
    }

    /// Subdivides edge `e` of factor `factor` and transports the cell set.
    pub fn subdivide_factor_edge(&self, factor: usize, e: &str) -> Result<Self, ComplexError> {
        let g = self.parent.factor(factor);
        let old = g.edge_index(e).ok_or_else(|| ComplexError::UnknownCell(e.to_string()))? as u32;
        let ng = g.subdivide_edge(e)?;
        let mid = Comp::Vertex((ng.vertex_count() - 1) as u32);
        let new_ids: Vec<u32> = (0..ng.edge_count() as u32)
            .filter(|&i| g.edge_index(&ng.edge(i as usize).id).is_none())
            .collect();
        // edges after `old` shift by one in the new graph
        let remap = |x: u32| if x < old { x } else { x + 1 };
        let mut factors = self.parent.factors().to_vec();
        factors[factor] = ng;
        let parent = Arc::new(ProductComplex::new(factors)?);
        let mut cells = BTreeSet::new();
        for c in &self.cells {
            match c.0[factor] {
                Comp::Edge(x) if x == old => {
                    for repl in [Comp::Edge(new_ids[0]), Comp::Edge(new_ids[1]), mid] {
                        let mut t = c.clone();
                        t.0[factor] = repl;
                        cells.insert(t);
                    }
                }
                Comp::Edge(x) => {
                    let mut t = c.clone();
                    t.0[factor] = Comp::Edge(remap(x));
                    cells.insert(t);
                }
                Comp::Vertex(_) => {
                    cells.insert(c.clone());
                }
            }
        }
        Self::new(parent, cells)
    }

    /// Converts a subcomplex of a 2-factor product into a regular 2-complex.
    ///
    /// The square `e1 x e2` gets the boundary walk
    /// `t1 x e2`, `e1 x h2`, reverse `h1 x e2`, reverse `e1 x t2`.
    pub fn to_regular2(&self) -> Result<Regular2Complex, ComplexError> {
        let p = &self.parent;
        if p.factor_count() != 2 {
            return Err(ComplexError::FactorCount {
                expected: 2,
                found: p.factor_count(),
            });
        }
        if self.dimension().is_some_and(|d| d > 2) {
            unreachable!("two factors give dimension at most 2");
        }
        let label = |c: &CellTuple| p.cell_label(c);
        let vertices: Vec<String> = self.cells_of_dim(0).map(label).collect();
        let edges: Vec<(String, String, String)> = self
            .cells_of_dim(1)
            .map(|c| {
                let (t, h) = self.edge_endpoints(c);
                (label(c), label(&t), label(&h))
            })
            .collect();
        let faces: Vec<FaceSpec<String>> = self
            .cells_of_dim(2)
            .map(|c| {
                let (Comp::Edge(e1), Comp::Edge(e2)) = (c.0[0], c.0[1]) else {
                    unreachable!("2-cells of a 2-factor product are edge pairs")
                };
                let (t1, h1) = p.endpoints(0, e1);
                let (t2, h2) = p.endpoints(1, e2);
                let walk = vec![
                    (label(&CellTuple(vec![t1, Comp::Edge(e2)])), Direction::Forward),
                    (label(&CellTuple(vec![Comp::Edge(e1), h2])), Direction::Forward),
                    (label(&CellTuple(vec![h1, Comp::Edge(e2)])), Direction::Reverse),
                    (label(&CellTuple(vec![Comp::Edge(e1), t2])), Direction::Reverse),
                ];
                (label(c), walk)
            })
            .collect();
        Regular2Complex::from_owned(vertices, edges, faces)
    }

    /// Tail and head of a 1-cell.
    pub fn edge_endpoints(&self, c: &CellTuple) -> (CellTuple, CellTuple) {
        let (i, e) = c
            .0
            .iter()
            .enumerate()
            .find_map(|(i, x)| match x {
                Comp::Edge(e) => Some((i, *e)),
                _ => None,
            })
            .expect("a 1-cell has an edge coordinate");
        let (t, h) = self.parent.endpoints(i, e);
        let mut tail = c.clone();
        tail.0[i] = t;
        let mut head = c.clone();
        head.0[i] = h;
        (tail, head)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(n: usize) -> Graph1Complex {
        let edges: Vec<(String, String, String)> = (0..n)
            .map(|i| (format!("m{i}"), "p0".to_string(), "p1".to_string()))
            .collect();
        Graph1Complex::new(&["p0".to_string(), "p1".to_string()], &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph1Complex {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let es: Vec<(String, String, String)> = (0..n)
            .map(|i| (format!("e{i}"), vs[i].clone(), vs[(i + 1) % n].clone()))
            .collect();
        Graph1Complex::new(&vs, &es).unwrap()
    }

    #[test]
    fn counts_of_theta_square() {
        let p = ProductComplex::new(vec![theta(2), theta(2)]).unwrap();
        assert_eq!(p.cell_counts(), vec![4, 8, 4]);
        assert_eq!(p.all_cells().len(), 16);
        let single = ProductComplex::new(vec![Graph1Complex::new(&["x"], &[]).unwrap()]).unwrap();
        assert_eq!(single.cell_counts(), vec![1, 0]);
        let p3 = ProductComplex::new(vec![cycle(3), cycle(3), cycle(3)]).unwrap();
        assert_eq!(p3.cell_counts()[3], 27);
        assert!(ProductComplex::new(vec![]).is_err());
    }

    #[test]
    fn faces_of_cells() {
        let p = ProductComplex::new(vec![cycle(3), cycle(3)]).unwrap();
        let v = CellTuple(vec![Comp::Vertex(0), Comp::Vertex(1)]);
        assert!(p.faces(&v).unwrap().is_empty());
        let ev = CellTuple(vec![Comp::Edge(0), Comp::Vertex(1)]);
        assert_eq!(p.faces(&ev).unwrap().len(), 2);
        let sq = CellTuple(vec![Comp::Edge(0), Comp::Edge(1)]);
        assert_eq!(p.faces(&sq).unwrap().len(), 8);
        assert!(p.faces(&CellTuple(vec![Comp::Edge(9), Comp::Edge(1)])).is_err());
    }

    #[test]
    fn closure_and_span() {
        let p = Arc::new(ProductComplex::new(vec![cycle(3), cycle(3)]).unwrap());
        let sq = CellTuple(vec![Comp::Edge(0), Comp::Edge(1)]);
        let c = ProductSubcomplex::closure(p.clone(), [sq.clone()]).unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(ProductSubcomplex::closure(p.clone(), c.cells().iter().cloned()).unwrap(), c);
        assert_eq!(c.top_cell_span(2), c);
        let dangling = CellTuple(vec![Comp::Edge(2), Comp::Vertex(0)]);
        let with = c.union(&ProductSubcomplex::closure(p.clone(), [dangling]).unwrap()).unwrap();
        assert_eq!(with.len(), 12);
        assert_eq!(with.top_cell_span(2), c);
        assert!(ProductSubcomplex::empty(p.clone()).top_cell_span(2).is_empty());
        let mut broken = c.cells().clone();
        broken.remove(&CellTuple(vec![Comp::Vertex(0), Comp::Edge(1)]));
        assert!(matches!(
            ProductSubcomplex::new(p, broken),
            Err(ComplexError::NotFaceClosed { .. })
        ));
    }

    #[test]
    fn regular_conversion_of_theta_torus() {
        let p = Arc::new(ProductComplex::new(vec![theta(2), theta(2)]).unwrap());
        let full = ProductSubcomplex::full(p.clone());
        let r = full.to_regular2().unwrap();
        assert_eq!((r.vertex_count(), r.edge_count(), r.face_count()), (4, 8, 4));
        assert!(r.faces().iter().all(|f| f.boundary.len() == 4));
        assert_eq!(ProductSubcomplex::empty(p).to_regular2().unwrap().dimension(), None);
        let p3 = Arc::new(ProductComplex::new(vec![theta(2), theta(2), theta(2)]).unwrap());
        assert!(ProductSubcomplex::empty(p3).to_regular2().is_err());
    }

    #[test]
    fn ids_round_trip() {
        let p = ProductComplex::new(vec![theta(3), cycle(4)]).unwrap();
        for c in p.all_cells() {
            assert_eq!(p.parse_cell(&p.cell_ids(&c)).unwrap(), c);
        }
        assert_eq!(p.cell(&["m1", "v2"]).unwrap(), CellTuple(vec![Comp::Edge(1), Comp::Vertex(2)]));
        assert!(p.parse_cell(&["1:m1", "1:v2"]).is_err());
    }

    #[test]
    fn subdivision_transports_cells() {
        let p = Arc::new(ProductComplex::new(vec![cycle(3), theta(2)]).unwrap());
        let full = ProductSubcomplex::full(p);
        let s = full.subdivide_factor_edge(0, "e1").unwrap();
        assert_eq!(s.euler_characteristic(), full.euler_characteristic());
        assert_eq!(s.len(), ProductSubcomplex::full(s.parent().clone()).len());
    }
}
