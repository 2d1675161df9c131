use std::collections::BTreeMap;
use std::fmt;

use super::{Colour, TangleError};

/// A marked point: `vertex` 0 is the external box, `vertex` i is box `D_i`.
/// Points are numbered `1..=2n` clockwise from the star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub vertex: usize,
    pub point: usize,
}

impl Endpoint {
    pub fn ext(point: usize) -> Endpoint {
        Endpoint { vertex: 0, point }
    }

    pub fn int(vertex: usize, point: usize) -> Endpoint {
        Endpoint { vertex, point }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vertex == 0 {
            write!(f, "ext:{}", self.point)
        } else {
            write!(f, "box{}:{}", self.vertex, self.point)
        }
    }
}

/// The region just clockwise of point `gap` on a box (gap 0 is the star
/// region, between the last point and point 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub vertex: usize,
    pub gap: usize,
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vertex == 0 {
            write!(f, "ext:gap{}", self.gap)
        } else {
            write!(f, "box{}:gap{}", self.vertex, self.gap)
        }
    }
}

/// A free closed loop, recorded by the two regions it separates: `outer`
/// is the side towards the external boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeLoop {
    pub outer: usize,
    pub inner: usize,
}

/// An isotopy class of planar tangles.
///
/// Boxes are ordered and their points labelled, so the strand matching is
/// already a labelled structure. What remains of the embedding is which
/// region every corner lies in and which regions each free loop separates.
/// Values are kept in normal form (regions and loops numbered by the
/// canonical traversal), so `==` is equality up to planar isotopy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarTangle {
    pub(crate) external: Colour,
    pub(crate) boxes: Vec<Colour>,
    /// `partner[v][p - 1]` is the other end of the strand at point `p` of vertex `v`.
    pub(crate) partner: Vec<Vec<Endpoint>>,
    /// `corner_region[v][g]` is the region containing corner `g` of vertex `v`.
    pub(crate) corner_region: Vec<Vec<usize>>,
    pub(crate) loops: Vec<FreeLoop>,
    pub(crate) region_count: usize,
}

impl PlanarTangle {
    pub fn external(&self) -> Colour {
        self.external
    }

    pub fn boxes(&self) -> &[Colour] {
        &self.boxes
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    /// Colour of vertex `v` (0 is the external box).
    pub fn colour_of(&self, v: usize) -> Colour {
        if v == 0 {
            self.external
        } else {
            self.boxes[v - 1]
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.boxes.len() + 1
    }

    pub fn partner(&self, e: Endpoint) -> Endpoint {
        self.partner[e.vertex][e.point - 1]
    }

    pub fn region_of(&self, c: Corner) -> usize {
        self.corner_region[c.vertex][c.gap]
    }

    pub fn loops(&self) -> &[FreeLoop] {
        &self.loops
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn region_count(&self) -> usize {
        self.region_count
    }

    /// Strands as sorted endpoint pairs, each listed once with the smaller end first.
    pub fn strands(&self) -> Vec<(Endpoint, Endpoint)> {
        let mut out = Vec::new();
        for (v, ps) in self.partner.iter().enumerate() {
            for (i, &q) in ps.iter().enumerate() {
                let e = Endpoint { vertex: v, point: i + 1 };
                if e < q {
                    out.push((e, q));
                }
            }
        }
        out
    }

    pub fn is_boxless(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Shading of every region (`true` for black), determined by the
    /// external colour and the requirement that it flips across every strand
    /// and loop. Fails if no consistent 2-colouring exists.
    pub fn shading(&self) -> Result<Vec<bool>, TangleError> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.region_count];
        for (v, corners) in self.corner_region.iter().enumerate() {
            let d = self.colour_of(v).points();
            for p in 1..=d {
                let a = corners[p - 1];
                let b = corners[p % d];
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for l in &self.loops {
            adj[l.outer].push(l.inner);
            adj[l.inner].push(l.outer);
        }
        let mut colour: Vec<Option<bool>> = vec![None; self.region_count];
        let root = self.corner_region[0][0];
        colour[root] = Some(self.external.boundary_black());
        let mut stack = vec![root];
        while let Some(r) = stack.pop() {
            let c = colour[r].unwrap();
            for &s in &adj[r] {
                match colour[s] {
                    None => {
                        colour[s] = Some(!c);
                        stack.push(s);
                    }
                    Some(x) if x == c => {
                        return Err(TangleError::Invalid(format!(
                            "shading conflict between regions {r} and {s}"
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        colour
            .into_iter()
            .enumerate()
            .map(|(r, c)| c.ok_or_else(|| TangleError::Invalid(format!("region {r} is unreachable"))))
            .collect()
    }

    /// Build a tangle from raw data, then validate and normalize it.
    pub(crate) fn from_parts(
        external: Colour,
        boxes: Vec<Colour>,
        partner: Vec<Vec<Endpoint>>,
        corner_region: Vec<Vec<usize>>,
        loops: Vec<FreeLoop>,
        region_count: usize,
    ) -> Result<PlanarTangle, TangleError> {
        let mut t = PlanarTangle { external, boxes, partner, corner_region, loops, region_count };
        t.compact_regions();
        t.validate()?;
        t.normalize();
        Ok(t)
    }

    /// Renumber region ids densely, dropping unused ids.
    fn compact_regions(&mut self) {
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        let mut next = 0;
        let mut id = |r: usize, map: &mut BTreeMap<usize, usize>| {
            *map.entry(r).or_insert_with(|| {
                next += 1;
                next - 1
            })
        };
        for corners in &mut self.corner_region {
            for r in corners.iter_mut() {
                *r = id(*r, &mut map);
            }
        }
        for l in &mut self.loops {
            l.outer = id(l.outer, &mut map);
            l.inner = id(l.inner, &mut map);
        }
        self.region_count = map.len();
    }
}

/// Where a component or loop sits when it is not attached to the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    /// The region containing this corner.
    Corner(usize, usize),
    /// The inside of a loop previously added by [`TangleBuilder::free_loop`].
    InsideLoop(usize),
}

/// Assembles a tangle from strands plus placement data for the pieces not
/// connected to the external boundary. Connected pieces need no placement:
/// their embedding is fixed by the cyclic point order on each box.
#[derive(Clone, Debug)]
pub struct TangleBuilder {
    external: Colour,
    boxes: Vec<Colour>,
    pairs: Vec<(Endpoint, Endpoint)>,
    placements: Vec<(Corner, Site)>,
    loops: Vec<Site>,
}

impl TangleBuilder {
    pub fn new(external: Colour, boxes: Vec<Colour>) -> TangleBuilder {
        TangleBuilder { external, boxes, pairs: Vec::new(), placements: Vec::new(), loops: Vec::new() }
    }

    pub fn strand(&mut self, a: Endpoint, b: Endpoint) -> &mut Self {
        self.pairs.push((a, b));
        self
    }

    /// Place the component containing `corner.vertex` so that the face
    /// through `corner` is the region described by `site`.
    pub fn place(&mut self, vertex: usize, gap: usize, site: Site) -> &mut Self {
        self.placements.push((Corner { vertex, gap }, site));
        self
    }

    /// Add a free loop whose outside is `site`; returns its handle.
    pub fn free_loop(&mut self, site: Site) -> usize {
        self.loops.push(site);
        self.loops.len() - 1
    }

    pub fn build(&self) -> Result<PlanarTangle, TangleError> {
        let colours: Vec<Colour> = std::iter::once(self.external).chain(self.boxes.iter().copied()).collect();
        let nv = colours.len();
        let unset = Endpoint { vertex: usize::MAX, point: 0 };
        let mut partner: Vec<Vec<Endpoint>> = colours.iter().map(|c| vec![unset; c.points()]).collect();
        for &(a, b) in &self.pairs {
            for e in [a, b] {
                if e.vertex >= nv || e.point == 0 || e.point > colours[e.vertex].points() {
                    return Err(TangleError::Invalid(format!("endpoint {e} does not exist")));
                }
            }
            if a == b {
                return Err(TangleError::Invalid(format!("strand joins {a} to itself")));
            }
            for (e, f) in [(a, b), (b, a)] {
                let slot = &mut partner[e.vertex][e.point - 1];
                if *slot != unset {
                    return Err(TangleError::Invalid(format!("{e} is the end of two strands")));
                }
                *slot = f;
            }
        }
        for (v, ps) in partner.iter().enumerate() {
            if let Some(i) = ps.iter().position(|&e| e == unset) {
                return Err(TangleError::Invalid(format!(
                    "{} is not the end of any strand",
                    Endpoint { vertex: v, point: i + 1 }
                )));
            }
        }
        // Trace faces: each face becomes its own region, merged below.
        let faces = trace_faces(&colours, &partner);
        let mut corner_region: Vec<Vec<usize>> = colours.iter().map(|c| vec![0; c.corners()]).collect();
        for (fid, face) in faces.iter().enumerate() {
            for c in face {
                corner_region[c.vertex][c.gap] = fid;
            }
        }
        let mut uf = UnionFind::new(faces.len() + self.loops.len());
        let loop_inside = |h: usize| faces.len() + h;
        let resolve = |site: Site, corner_region: &Vec<Vec<usize>>| -> Result<usize, TangleError> {
            match site {
                Site::Corner(v, g) => corner_region
                    .get(v)
                    .and_then(|cs| cs.get(g))
                    .copied()
                    .ok_or_else(|| TangleError::Invalid(format!("no corner {g} on vertex {v}"))),
                Site::InsideLoop(h) if h < self.loops.len() => Ok(loop_inside(h)),
                Site::InsideLoop(h) => Err(TangleError::Invalid(format!("no loop {h}"))),
            }
        };
        let comp = vertex_components(&colours, &partner);
        let mut placed = vec![false; nv];
        for &(corner, site) in &self.placements {
            let face = resolve(Site::Corner(corner.vertex, corner.gap), &corner_region)?;
            let target = resolve(site, &corner_region)?;
            let root = comp[corner.vertex];
            if root == comp[0] {
                return Err(TangleError::Invalid("the boundary component cannot be placed".into()));
            }
            if placed[root] {
                return Err(TangleError::Invalid(format!("component of vertex {} placed twice", corner.vertex)));
            }
            placed[root] = true;
            uf.union(face, target);
        }
        for v in 0..nv {
            if comp[v] == v && comp[0] != v && !placed[v] {
                return Err(TangleError::Invalid(format!("component of box {v} is not placed")));
            }
        }
        let mut loops = Vec::new();
        for (h, &site) in self.loops.iter().enumerate() {
            let outer = resolve(site, &corner_region)?;
            loops.push((outer, loop_inside(h)));
        }
        let corner_region = corner_region
            .into_iter()
            .map(|cs| cs.into_iter().map(|r| uf.find(r)).collect())
            .collect();
        let loops = loops
            .into_iter()
            .map(|(o, i)| FreeLoop { outer: uf.find(o), inner: uf.find(i) })
            .collect();
        PlanarTangle::from_parts(
            self.external,
            self.boxes.clone(),
            partner,
            corner_region,
            loops,
            faces.len() + self.loops.len(),
        )
    }
}

/// The corner that follows arriving at point `q` of vertex `w`, and the
/// point from which that corner is left.
pub(crate) fn corner_after_arrival(colours: &[Colour], w: usize, q: usize) -> Corner {
    let d = colours[w].points();
    if w == 0 {
        Corner { vertex: 0, gap: q - 1 }
    } else {
        Corner { vertex: w, gap: q % d }
    }
}

/// Point through which a face leaves corner `c`.
pub(crate) fn exit_point(colours: &[Colour], c: Corner) -> usize {
    let d = colours[c.vertex].points();
    if c.vertex == 0 {
        if c.gap == 0 {
            d
        } else {
            c.gap
        }
    } else {
        c.gap + 1
    }
}

/// Faces of the planar map given by the strands, as corner lists.
/// Pointless vertices contribute a single one-corner face.
pub(crate) fn trace_faces(colours: &[Colour], partner: &[Vec<Endpoint>]) -> Vec<Vec<Corner>> {
    let mut seen: Vec<Vec<bool>> = colours.iter().map(|c| vec![false; c.corners()]).collect();
    let mut faces = Vec::new();
    for v in 0..colours.len() {
        for g in 0..colours[v].corners() {
            if seen[v][g] {
                continue;
            }
            let start = Corner { vertex: v, gap: g };
            let mut face = Vec::new();
            let mut c = start;
            loop {
                seen[c.vertex][c.gap] = true;
                face.push(c);
                if colours[c.vertex].points() == 0 {
                    break;
                }
                let p = exit_point(colours, c);
                let e = partner[c.vertex][p - 1];
                c = corner_after_arrival(colours, e.vertex, e.point);
                if c == start {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}

/// Representative (smallest vertex) of each vertex's strand-connected component.
pub(crate) fn vertex_components(colours: &[Colour], partner: &[Vec<Endpoint>]) -> Vec<usize> {
    let mut uf = UnionFind::new(colours.len());
    for (v, ps) in partner.iter().enumerate() {
        for e in ps {
            uf.union(v, e.vertex);
        }
    }
    (0..colours.len()).map(|v| uf.find_min(v)).collect()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Root chosen as the smallest member.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn find_min(&mut self, x: usize) -> usize {
        self.find(x)
    }
}
