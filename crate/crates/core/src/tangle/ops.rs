use std::collections::BTreeSet;

use super::tangle::{Endpoint, FreeLoop, PlanarTangle, UnionFind};
use super::{Colour, TangleError};

/// Shading of a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shade {
    White,
    Black,
}

impl Shade {
    pub fn from_black(black: bool) -> Shade {
        if black {
            Shade::Black
        } else {
            Shade::White
        }
    }
}

impl PlanarTangle {
    /// Substitute tangles into internal boxes. `assignments` pairs a 1-based
    /// box index with the tangle that replaces it; point `i` of the box is
    /// glued to external point `i` of the tangle. Unsubstituted boxes come
    /// first in their old order, then the boxes of each inserted tangle in
    /// the order of `assignments`.
    pub fn compose(&self, assignments: &[(usize, &PlanarTangle)]) -> Result<PlanarTangle, TangleError> {
        let nb = self.boxes.len();
        let mut slot_of = vec![None; nb + 1];
        for (k, &(i, s)) in assignments.iter().enumerate() {
            if i == 0 || i > nb {
                return Err(TangleError::BoxOutOfRange(i));
            }
            if slot_of[i].is_some() {
                return Err(TangleError::Invalid(format!("box {i} is assigned twice")));
            }
            if s.external != self.boxes[i - 1] {
                return Err(TangleError::ColourMismatch { index: i, expected: self.boxes[i - 1], found: s.external });
            }
            slot_of[i] = Some(k);
        }
        // Source vertices: (None, v) is host vertex v; (Some(k), v) is vertex v of the k-th insert.
        let mut host_new = vec![usize::MAX; nb + 1];
        let mut boxes = Vec::new();
        host_new[0] = 0;
        for v in 1..=nb {
            if slot_of[v].is_none() {
                boxes.push(self.boxes[v - 1]);
                host_new[v] = boxes.len();
            }
        }
        let mut ins_new: Vec<Vec<usize>> = Vec::new();
        for &(_, s) in assignments {
            let mut map = vec![usize::MAX];
            for &c in &s.boxes {
                boxes.push(c);
                map.push(boxes.len());
            }
            ins_new.push(map);
        }
        // Region ids: host first, then each insert at an offset.
        let mut offsets = Vec::new();
        let mut total = self.region_count;
        for &(_, s) in assignments {
            offsets.push(total);
            total += s.region_count;
        }
        let mut uf = UnionFind::new(total);
        for (k, &(i, s)) in assignments.iter().enumerate() {
            for g in 0..s.external.corners() {
                uf.union(self.corner_region[i][g], offsets[k] + s.corner_region[0][g]);
            }
        }
        // Follow a strand from a surviving endpoint through the glued circles.
        let follow = |mut src: Option<usize>, mut e: Endpoint, visited: &mut BTreeSet<(usize, usize)>| -> (Option<usize>, Endpoint) {
            loop {
                let t = match src {
                    None => self,
                    Some(k) => assignments[k].1,
                };
                let f = t.partner(e);
                match src {
                    None if f.vertex > 0 && slot_of[f.vertex].is_some() => {
                        visited.insert((f.vertex, f.point));
                        src = slot_of[f.vertex];
                        e = Endpoint::ext(f.point);
                    }
                    Some(k) if f.vertex == 0 => {
                        let host_box = assignments[k].0;
                        visited.insert((host_box, f.point));
                        src = None;
                        e = Endpoint::int(host_box, f.point);
                    }
                    _ => return (src, f),
                }
            }
        };
        let new_of = |src: Option<usize>, e: Endpoint| -> Endpoint {
            let vertex = match src {
                None => host_new[e.vertex],
                Some(k) => ins_new[k][e.vertex],
            };
            Endpoint { vertex, point: e.point }
        };
        let mut colours = vec![self.external];
        colours.extend(boxes.iter().copied());
        let mut partner: Vec<Vec<Endpoint>> =
            colours.iter().map(|c| vec![Endpoint::ext(0); c.points()]).collect();
        let mut corner_region: Vec<Vec<usize>> = colours.iter().map(|c| vec![0; c.corners()]).collect();
        let mut visited = BTreeSet::new();
        let mut sources: Vec<(Option<usize>, usize)> = vec![(None, 0)];
        sources.extend((1..=nb).filter(|&v| slot_of[v].is_none()).map(|v| (None, v)));
        for (k, &(_, s)) in assignments.iter().enumerate() {
            sources.extend((1..=s.boxes.len()).map(|v| (Some(k), v)));
        }
        for &(src, v) in &sources {
            let (t, off) = match src {
                None => (self, 0),
                Some(k) => (assignments[k].1, offsets[k]),
            };
            let nv = new_of(src, Endpoint { vertex: v, point: 1 }).vertex;
            for p in 1..=t.colour_of(v).points() {
                let (fs, f) = follow(src, Endpoint { vertex: v, point: p }, &mut visited);
                partner[nv][p - 1] = new_of(fs, f);
            }
            for g in 0..t.colour_of(v).corners() {
                corner_region[nv][g] = uf.find(off + t.corner_region[v][g]);
            }
        }
        let mut loops: Vec<FreeLoop> = self
            .loops
            .iter()
            .map(|l| FreeLoop { outer: uf.find(l.outer), inner: uf.find(l.inner) })
            .collect();
        for (k, &(_, s)) in assignments.iter().enumerate() {
            for l in &s.loops {
                loops.push(FreeLoop { outer: uf.find(offsets[k] + l.outer), inner: uf.find(offsets[k] + l.inner) });
            }
        }
        // Glued points never reached from a surviving end lie on closed loops.
        for &(i, _) in assignments {
            let d = self.boxes[i - 1].points();
            for p in 1..=d {
                if visited.contains(&(i, p)) {
                    continue;
                }
                let mut e = Endpoint::int(i, p);
                let mut src: Option<usize> = None;
                visited.insert((i, p));
                let start = (i, p);
                loop {
                    let (s2, f): (Option<usize>, Endpoint) = match src {
                        None => {
                            let f = self.partner(e);
                            visited.insert((f.vertex, f.point));
                            let k = slot_of[f.vertex].expect("cycle stays on glued points");
                            (Some(k), Endpoint::ext(f.point))
                        }
                        Some(k) => {
                            let s: &PlanarTangle = assignments[k].1;
                            let f = s.partner(e);
                            let hb = assignments[k].0;
                            (None, Endpoint::int(hb, f.point))
                        }
                    };
                    src = s2;
                    e = f;
                    if src.is_none() {
                        if (e.vertex, e.point) == start {
                            break;
                        }
                        visited.insert((e.vertex, e.point));
                    }
                }
                let a = uf.find(self.corner_region[i][p - 1]);
                let b = uf.find(self.corner_region[i][p % d]);
                loops.push(FreeLoop { outer: a, inner: b });
            }
        }
        PlanarTangle::from_parts(self.external, boxes, partner, corner_region, loops, total)
    }

    /// Reflection: reverses the cyclic order on every box, keeping stars.
    pub fn adjoint(&self) -> PlanarTangle {
        let colours: Vec<Colour> = std::iter::once(self.external).chain(self.boxes.iter().copied()).collect();
        let flip = |e: Endpoint| Endpoint { vertex: e.vertex, point: colours[e.vertex].points() + 1 - e.point };
        let partner = (0..colours.len())
            .map(|v| {
                let d = colours[v].points();
                (1..=d).map(|p| flip(self.partner[v][d - p])).collect()
            })
            .collect();
        let corner_region = (0..colours.len())
            .map(|v| {
                let d = colours[v].corners();
                (0..d).map(|g| self.corner_region[v][(d - g) % d]).collect()
            })
            .collect();
        PlanarTangle::from_parts(
            self.external,
            self.boxes.clone(),
            partner,
            corner_region,
            self.loops.clone(),
            self.region_count,
        )
        .expect("reflection of a valid tangle is valid")
    }

    /// Delete the first free loop (in canonical order) that encloses
    /// nothing. Returns the result and the shading of the region the loop
    /// was lying in.
    pub fn remove_contractible_loop(&self) -> Result<(PlanarTangle, Shade), TangleError> {
        let idx = self.empty_loop().ok_or(TangleError::NoLoop)?;
        let shade = self.shading()?;
        let l = self.loops[idx];
        let mut loops = self.loops.clone();
        loops.remove(idx);
        let t = PlanarTangle::from_parts(
            self.external,
            self.boxes.clone(),
            self.partner.clone(),
            self.corner_region.clone(),
            loops,
            self.region_count,
        )?;
        Ok((t, Shade::from_black(shade[l.outer])))
    }

    /// Remove every free loop; returns the loop-free tangle and the number
    /// of removed loops that were lying in a white and in a black region.
    pub fn remove_all_loops(&self) -> (PlanarTangle, usize, usize) {
        let mut t = self.clone();
        let (mut white, mut black) = (0, 0);
        while !t.loops.is_empty() {
            let (next, s) = t.remove_contractible_loop().expect("a nonempty loop list has an innermost loop");
            match s {
                Shade::White => white += 1,
                Shade::Black => black += 1,
            }
            t = next;
        }
        (t, white, black)
    }

    fn empty_loop(&self) -> Option<usize> {
        (0..self.loops.len()).find(|&i| self.loop_is_empty(i))
    }

    fn loop_is_empty(&self, i: usize) -> bool {
        let r = self.loops[i].inner;
        self.corner_region.iter().all(|cs| !cs.contains(&r))
            && self.loops.iter().enumerate().all(|(j, l)| j == i || (l.outer != r && l.inner != r))
    }

    /// Reorder internal boxes: new box `k` is old box `order[k - 1]` (1-based).
    pub fn permute_boxes(&self, order: &[usize]) -> Result<PlanarTangle, TangleError> {
        let nb = self.boxes.len();
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=nb).collect::<Vec<_>>() {
            return Err(TangleError::Invalid(format!("{order:?} is not a permutation of the boxes")));
        }
        let mut new_of = vec![0; nb + 1];
        for (k, &old) in order.iter().enumerate() {
            new_of[old] = k + 1;
        }
        let mut partner = vec![Vec::new(); nb + 1];
        let mut corner_region = vec![Vec::new(); nb + 1];
        for v in 0..=nb {
            partner[new_of[v]] = self.partner[v]
                .iter()
                .map(|e| Endpoint { vertex: new_of[e.vertex], point: e.point })
                .collect();
            corner_region[new_of[v]] = self.corner_region[v].clone();
        }
        let boxes = order.iter().map(|&old| self.boxes[old - 1]).collect();
        PlanarTangle::from_parts(self.external, boxes, partner, corner_region, self.loops.clone(), self.region_count)
    }
}

impl PlanarTangle {
    /// A box order under which `self` becomes `other`, if any: returns
    /// `order` with `self.permute_boxes(&order) == other`.
    pub fn find_renumbering(&self, other: &PlanarTangle) -> Option<Vec<usize>> {
        if self.external != other.external || self.boxes.len() != other.boxes.len() {
            return None;
        }
        let nb = self.boxes.len();
        // map[v] = vertex of `other` matched with vertex v of `self`.
        let mut map = vec![usize::MAX; nb + 1];
        map[0] = 0;
        if !self.extend_map(other, &mut map, 0) {
            return None;
        }
        self.search_map(other, &mut map)
    }

    fn extend_map(&self, other: &PlanarTangle, map: &mut [usize], from: usize) -> bool {
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            let w = map[v];
            for p in 1..=self.colour_of(v).points() {
                let a = self.partner(Endpoint { vertex: v, point: p });
                let b = other.partner(Endpoint { vertex: w, point: p });
                if a.point != b.point {
                    return false;
                }
                if map[a.vertex] == usize::MAX {
                    if map.contains(&b.vertex) || self.colour_of(a.vertex) != other.colour_of(b.vertex) {
                        return false;
                    }
                    map[a.vertex] = b.vertex;
                    stack.push(a.vertex);
                } else if map[a.vertex] != b.vertex {
                    return false;
                }
            }
        }
        true
    }

    fn search_map(&self, other: &PlanarTangle, map: &mut Vec<usize>) -> Option<Vec<usize>> {
        let Some(v) = map.iter().position(|&x| x == usize::MAX) else {
            let mut order = vec![0; map.len() - 1];
            for v in 1..map.len() {
                order[map[v] - 1] = v;
            }
            let p = self.permute_boxes(&order).ok()?;
            return (p == *other).then_some(order);
        };
        for w in 1..map.len() {
            if map.contains(&w) || self.colour_of(v) != other.colour_of(w) {
                continue;
            }
            let saved = map.clone();
            map[v] = w;
            if self.extend_map(other, map, v) {
                if let Some(order) = self.search_map(other, map) {
                    return Some(order);
                }
            }
            *map = saved;
        }
        None
    }

    /// Lemma-3.1 form of a free loop: the loop is replaced by a new last
    /// box of colour `0+` or `0-` (matching the region the loop lies in).
    /// Composing the circle tangle of that colour into the new box gives
    /// back `self`; composing the empty tangle removes the loop.
    pub fn loop_to_zero_box(&self, loop_index: usize) -> Result<PlanarTangle, TangleError> {
        let l = *self.loops.get(loop_index).ok_or(TangleError::NoLoop)?;
        if !self.loop_is_empty(loop_index) {
            return Err(TangleError::Invalid(format!("loop {loop_index} encloses part of the tangle")));
        }
        let shade = self.shading()?;
        let colour = if shade[l.outer] { Colour::ZeroMinus } else { Colour::ZeroPlus };
        let mut boxes = self.boxes.clone();
        boxes.push(colour);
        let mut partner = self.partner.clone();
        partner.push(Vec::new());
        let mut corner_region = self.corner_region.clone();
        corner_region.push(vec![l.inner]);
        // The inner side of the loop becomes the region around the new box;
        // it is merged with the outer side by relabelling.
        for cs in &mut corner_region {
            for r in cs.iter_mut() {
                if *r == l.inner {
                    *r = l.outer;
                }
            }
        }
        let mut loops = self.loops.clone();
        loops.remove(loop_index);
        for m in &mut loops {
            if m.outer == l.inner {
                m.outer = l.outer;
            }
            if m.inner == l.inner {
                m.inner = l.outer;
            }
        }
        PlanarTangle::from_parts(self.external, boxes, partner, corner_region, loops, self.region_count)
    }

    /// Index of the loop [`remove_contractible_loop`](Self::remove_contractible_loop) deletes.
    pub fn innermost_loop(&self) -> Option<usize> {
        self.empty_loop()
    }
}
