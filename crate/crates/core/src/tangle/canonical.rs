use std::fmt;

use super::tangle::{trace_faces, vertex_components, Corner, FreeLoop, PlanarTangle};
use super::{Colour, TangleError};

/// Byte string identifying a tangle up to planar isotopy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u8>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Unit {
    Comp(usize),
    Loop(usize),
}

enum Event {
    Region(usize),
    Loop(usize, usize),
}

/// Faces, components and the units/regions incidence structure.
struct Layout {
    faces: Vec<Vec<Corner>>,
    face_comp: Vec<usize>,
    face_region: Vec<usize>,
    comp: Vec<usize>,
    /// Units incident to each region; components carry the face index.
    incident: Vec<Vec<(Unit, usize)>>,
}

impl PlanarTangle {
    fn colours(&self) -> Vec<Colour> {
        std::iter::once(self.external).chain(self.boxes.iter().copied()).collect()
    }

    fn layout(&self) -> Result<Layout, TangleError> {
        let colours = self.colours();
        let faces = trace_faces(&colours, &self.partner);
        let comp = vertex_components(&colours, &self.partner);
        let mut face_comp = Vec::with_capacity(faces.len());
        let mut face_region = Vec::with_capacity(faces.len());
        for face in &faces {
            let r = self.region_of(face[0]);
            if let Some(c) = face.iter().find(|c| self.region_of(**c) != r) {
                return Err(TangleError::Invalid(format!("face through {} is split across regions", c)));
            }
            face_comp.push(comp[face[0].vertex]);
            face_region.push(r);
        }
        let mut incident = vec![Vec::new(); self.region_count];
        for (f, &r) in face_region.iter().enumerate() {
            incident[r].push((Unit::Comp(face_comp[f]), f));
        }
        for (i, l) in self.loops.iter().enumerate() {
            incident[l.outer].push((Unit::Loop(i), 0));
            incident[l.inner].push((Unit::Loop(i), 0));
        }
        Ok(Layout { faces, face_comp, face_region, comp, incident })
    }

    /// Check every structural invariant; returns the first violation.
    pub fn validate(&self) -> Result<(), TangleError> {
        let colours = self.colours();
        let nv = colours.len();
        if self.partner.len() != nv || self.corner_region.len() != nv {
            return Err(TangleError::Invalid("vertex data has the wrong length".into()));
        }
        for v in 0..nv {
            if self.partner[v].len() != colours[v].points() {
                return Err(TangleError::Invalid(format!("vertex {v} has the wrong number of points")));
            }
            if self.corner_region[v].len() != colours[v].corners() {
                return Err(TangleError::Invalid(format!("vertex {v} has the wrong number of corners")));
            }
            for (i, &e) in self.partner[v].iter().enumerate() {
                let back = self
                    .partner
                    .get(e.vertex)
                    .and_then(|ps| ps.get(e.point.wrapping_sub(1)))
                    .copied();
                if back.map(|b| (b.vertex, b.point)) != Some((v, i + 1)) || e == back.unwrap() {
                    return Err(TangleError::Invalid(format!("strands at vertex {v} are not a perfect matching")));
                }
            }
            if self.corner_region[v].iter().any(|&r| r >= self.region_count) {
                return Err(TangleError::Invalid(format!("vertex {v} refers to an unknown region")));
            }
        }
        if self.loops.iter().any(|l| l.outer >= self.region_count || l.inner >= self.region_count) {
            return Err(TangleError::Invalid("loop refers to an unknown region".into()));
        }
        let lay = self.layout()?;
        // Euler relation on each connected component (the sphere picture,
        // with every box a vertex).
        let mut v_count = vec![0i64; nv];
        let mut e_count = vec![0i64; nv];
        let mut f_count = vec![0i64; nv];
        for v in 0..nv {
            v_count[lay.comp[v]] += 1;
            e_count[lay.comp[v]] += colours[v].points() as i64;
        }
        for &c in &lay.face_comp {
            f_count[c] += 1;
        }
        for c in 0..nv {
            if lay.comp[c] == c && v_count[c] - e_count[c] / 2 + f_count[c] != 2 {
                return Err(TangleError::Invalid(format!("Euler relation fails on the component of vertex {c}")));
            }
        }
        // Units and regions must form a tree.
        let units = (0..nv).filter(|&c| lay.comp[c] == c).count() + self.loops.len();
        let edges = lay.faces.len() + 2 * self.loops.len();
        if edges + 1 != units + self.region_count {
            return Err(TangleError::Invalid("components and loops do not nest as a forest".into()));
        }
        let mut seen = vec![false; self.region_count];
        let mut stack = vec![lay.face_region[0]];
        let mut reached = 0;
        seen[lay.face_region[0]] = true;
        while let Some(r) = stack.pop() {
            reached += 1;
            for &(u, _) in &lay.incident[r] {
                let next: Vec<usize> = match u {
                    Unit::Comp(c) => (0..lay.faces.len()).filter(|&f| lay.face_comp[f] == c).map(|f| lay.face_region[f]).collect(),
                    Unit::Loop(i) => vec![self.loops[i].outer, self.loops[i].inner],
                };
                for s in next {
                    if !seen[s] {
                        seen[s] = true;
                        stack.push(s);
                    }
                }
            }
        }
        if reached != self.region_count {
            return Err(TangleError::Invalid("regions are not connected".into()));
        }
        let shade = self.shading()?;
        for v in 1..nv {
            let r = self.corner_region[v][0];
            if shade[r] != colours[v].boundary_black() {
                return match colours[v] {
                    Colour::Positive(_) => Err(TangleError::StarNotWhite(v)),
                    c => Err(TangleError::Invalid(format!("box {v} of colour {c} sits in a wrongly shaded region"))),
                };
            }
        }
        Ok(())
    }

    /// Renumber regions and loops by the canonical traversal, and orient
    /// every loop so that `outer` faces the external boundary.
    pub(crate) fn normalize(&mut self) {
        let lay = self.layout().expect("normalize needs a valid tangle");
        let mut events = Vec::new();
        self.visit_comp(&lay, 0, None, &mut events);
        let mut region_map = vec![usize::MAX; self.region_count];
        let mut loops = Vec::with_capacity(self.loops.len());
        let mut next = 0;
        for ev in &events {
            match *ev {
                Event::Region(r) => {
                    region_map[r] = next;
                    next += 1;
                }
                Event::Loop(i, outer) => {
                    let l = self.loops[i];
                    let inner = if l.outer == outer { l.inner } else { l.outer };
                    loops.push((outer, inner));
                }
            }
        }
        for cs in &mut self.corner_region {
            for r in cs.iter_mut() {
                *r = region_map[*r];
            }
        }
        self.loops = loops
            .into_iter()
            .map(|(o, i)| FreeLoop { outer: region_map[o], inner: region_map[i] })
            .collect();
    }

    fn visit_comp(&self, lay: &Layout, c: usize, parent: Option<usize>, out: &mut Vec<Event>) -> String {
        let mut code = format!("C{c}[");
        for f in (0..lay.faces.len()).filter(|&f| lay.face_comp[f] == c) {
            let r = lay.face_region[f];
            if Some(r) == parent {
                code.push('^');
            } else {
                code.push('(');
                code.push_str(&self.visit_region(lay, r, Unit::Comp(c), out));
                code.push(')');
            }
        }
        code.push(']');
        code
    }

    fn visit_region(&self, lay: &Layout, r: usize, from: Unit, out: &mut Vec<Event>) -> String {
        out.push(Event::Region(r));
        let mut children: Vec<(String, Vec<Event>)> = Vec::new();
        for &(u, _) in &lay.incident[r] {
            if u == from {
                continue;
            }
            let mut sub = Vec::new();
            let code = match u {
                Unit::Comp(c) => self.visit_comp(lay, c, Some(r), &mut sub),
                Unit::Loop(i) => {
                    sub.push(Event::Loop(i, r));
                    let l = self.loops[i];
                    let other = if l.outer == r { l.inner } else { l.outer };
                    format!("L({})", self.visit_region(lay, other, u, &mut sub))
                }
            };
            children.push((code, sub));
        }
        children.sort_by(|a, b| a.0.cmp(&b.0));
        let mut code = String::new();
        for (i, (c, sub)) in children.into_iter().enumerate() {
            if i > 0 {
                code.push(',');
            }
            code.push_str(&c);
            out.extend(sub);
        }
        code
    }

    /// Isotopy invariant code: colours, strands, and the nesting tree.
    pub fn canonical_code(&self) -> CanonicalCode {
        let lay = self.layout().expect("tangles are kept valid");
        let mut tree = String::new();
        let root = self.visit_comp(&lay, 0, None, &mut Vec::new());
        tree.push_str(&root);
        let boxes: Vec<String> = self.boxes.iter().map(|c| c.to_string()).collect();
        let strands: Vec<String> = self.strands().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let s = format!("{}|{}|{}|{}", self.external, boxes.join(","), strands.join(","), tree);
        CanonicalCode(s.into_bytes())
    }
}
