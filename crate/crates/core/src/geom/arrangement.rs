use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, Zero};

use super::winding::{ray_direction, ray_hit};
use super::{
    angle_cmp, int, orient, rat, seg_intersect, winding_by_raycast, Contact, Degeneracy, GeomError, Polyline, Pt, Rat,
    Segment,
};

/// Which input segment an arrangement edge was cut from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Carrier {
    pub arc: usize,
    pub segment: usize,
}

/// An edge, oriented like the input segment that carries it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub carrier: Carrier,
}

/// A face of the subdivision. Bounded faces have an outer boundary cycle
/// (counterclockwise, face on the left); holes are the outer cycles of the
/// components nested inside.
#[derive(Clone, Debug)]
pub struct Face {
    pub outer: Option<Vec<usize>>,
    pub holes: Vec<Vec<usize>>,
    pub area: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

/// Planar subdivision induced by a family of polylines.
///
/// Half-edge `2e` runs along edge `e` in its own direction, `2e + 1` runs
/// against it. Every half-edge has its face on the left.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub vertices: Vec<Pt>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// `(left, right)` face of every edge.
    pub edge_faces: Vec<(usize, usize)>,
    pub unbounded_face: usize,
    /// Outgoing half-edges of every vertex in counterclockwise order.
    pub vertex_stars: Vec<Vec<usize>>,
    components: usize,
    index: BTreeMap<Pt, usize>,
    half_face: Vec<usize>,
}

impl Arrangement {
    /// Cuts the arcs at all mutual contacts and extracts the faces.
    ///
    /// Crossings and endpoint-on-interior contacts are split; collinear
    /// overlaps are rejected.
    pub fn build(arcs: &[Polyline]) -> Result<Arrangement, GeomError> {
        let mut segs: Vec<(Carrier, Segment)> = Vec::new();
        for (ai, arc) in arcs.iter().enumerate() {
            for (si, s) in arc.segments().into_iter().enumerate() {
                if s.a == s.b {
                    return Err(GeomError::DegenerateSegment(ai, si));
                }
                segs.push((Carrier { arc: ai, segment: si }, s));
            }
        }

        let mut cuts: Vec<Vec<Pt>> = segs.iter().map(|(_, s)| vec![s.a.clone(), s.b.clone()]).collect();
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                let (ci, si) = &segs[i];
                let (cj, sj) = &segs[j];
                match seg_intersect(si, sj) {
                    Contact::Disjoint | Contact::SharedEndpoint(_) => {}
                    Contact::Crossing(p) => {
                        cuts[i].push(p.clone());
                        cuts[j].push(p);
                    }
                    Contact::Degenerate(Degeneracy::Touch(p)) => {
                        if si.contains_interior(&p) {
                            cuts[i].push(p.clone());
                        }
                        if sj.contains_interior(&p) {
                            cuts[j].push(p);
                        }
                    }
                    Contact::Degenerate(Degeneracy::Overlap) => {
                        return Err(GeomError::DegenerateContact((ci.arc, ci.segment), (cj.arc, cj.segment)));
                    }
                }
            }
        }

        let mut index: BTreeMap<Pt, usize> = BTreeMap::new();
        let mut vertices: Vec<Pt> = Vec::new();
        let mut vid = |p: &Pt, vertices: &mut Vec<Pt>| -> usize {
            if let Some(&i) = index.get(p) {
                return i;
            }
            let i = vertices.len();
            index.insert(p.clone(), i);
            vertices.push(p.clone());
            i
        };

        let mut edges: Vec<Edge> = Vec::new();
        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (k, (carrier, s)) in segs.iter().enumerate() {
            let mut pts = std::mem::take(&mut cuts[k]);
            pts.sort_by_key(|p| s.param_of(p));
            pts.dedup();
            for w in pts.windows(2) {
                let a = vid(&w[0], &mut vertices);
                let b = vid(&w[1], &mut vertices);
                let key = (a.min(b), a.max(b));
                if let Some(&other) = seen.get(&key) {
                    let c = edges[other].carrier;
                    return Err(GeomError::DegenerateContact(
                        (c.arc, c.segment),
                        (carrier.arc, carrier.segment),
                    ));
                }
                seen.insert(key, edges.len());
                edges.push(Edge {
                    from: a,
                    to: b,
                    carrier: *carrier,
                });
            }
        }

        let nv = vertices.len();
        let nh = 2 * edges.len();
        let origin = |h: usize| -> usize {
            let e = &edges[h / 2];
            if h.is_multiple_of(2) {
                e.from
            } else {
                e.to
            }
        };
        let dest = |h: usize| origin(h ^ 1);

        let mut stars: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..nh {
            stars[origin(h)].push(h);
        }
        for (v, star) in stars.iter_mut().enumerate() {
            star.sort_by(|&a, &b| {
                let da = &vertices[dest(a)] - &vertices[v];
                let db = &vertices[dest(b)] - &vertices[v];
                angle_cmp(&da, &db)
            });
        }
        let mut pos = vec![0usize; nh];
        for star in &stars {
            for (i, &h) in star.iter().enumerate() {
                pos[h] = i;
            }
        }
        let next = |h: usize| -> usize {
            let t = h ^ 1;
            let v = origin(t);
            let star = &stars[v];
            let i = pos[t];
            star[(i + star.len() - 1) % star.len()]
        };

        // boundary cycles
        let mut cycle_of = vec![usize::MAX; nh];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for h0 in 0..nh {
            if cycle_of[h0] != usize::MAX {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = h0;
            loop {
                cycle_of[h] = cycles.len();
                cyc.push(h);
                h = next(h);
                if h == h0 {
                    break;
                }
            }
            cycles.push(cyc);
        }
        let cycle_area = |cyc: &Vec<usize>| -> Rat {
            let mut acc = Rat::zero();
            for &h in cyc {
                acc += vertices[origin(h)].cross(&vertices[dest(h)]);
            }
            acc / int(2)
        };
        let areas: Vec<Rat> = cycles.iter().map(cycle_area).collect();

        // connected components
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &edges {
            let a = find(&mut parent, e.from);
            let b = find(&mut parent, e.to);
            if a != b {
                parent[a] = b;
            }
        }
        let mut roots: Vec<usize> = (0..nv).map(|v| find(&mut parent, v)).collect();
        roots.sort();
        roots.dedup();
        let components = roots.len();

        // faces: 0 is unbounded, then one per positive cycle
        let mut faces = vec![Face {
            outer: None,
            holes: Vec::new(),
            area: None,
        }];
        let mut face_of_cycle = vec![usize::MAX; cycles.len()];
        for (c, cyc) in cycles.iter().enumerate() {
            if areas[c].is_positive() {
                face_of_cycle[c] = faces.len();
                faces.push(Face {
                    outer: Some(cyc.clone()),
                    holes: Vec::new(),
                    area: Some(areas[c].clone()),
                });
            }
        }
        let polys: Vec<Polyline> = cycles
            .iter()
            .map(|cyc| Polyline::closed(cyc.iter().map(|&h| vertices[origin(h)].clone()).collect()))
            .collect();
        for (c, cyc) in cycles.iter().enumerate() {
            if areas[c].is_positive() {
                continue;
            }
            let comp = find(&mut parent, origin(cyc[0]));
            let probe = &vertices[origin(cyc[0])];
            let mut best: Option<usize> = None;
            for (d, other) in cycles.iter().enumerate() {
                if !areas[d].is_positive() || find(&mut parent, origin(other[0])) == comp {
                    continue;
                }
                let w = winding_by_raycast(&polys[d], probe).unwrap_or(0);
                if w != 0 && best.is_none_or(|b| areas[d] < areas[b]) {
                    best = Some(d);
                }
            }
            let f = best.map(|d| face_of_cycle[d]).unwrap_or(0);
            face_of_cycle[c] = f;
            faces[f].holes.push(cyc.clone());
        }
        for f in faces.iter_mut() {
            if let Some(a) = f.area.as_mut() {
                for hole in &f.holes {
                    *a += cycle_area(hole);
                }
            }
        }

        let half_face: Vec<usize> = (0..nh).map(|h| face_of_cycle[cycle_of[h]]).collect();
        let edge_faces = (0..edges.len())
            .map(|e| (half_face[2 * e], half_face[2 * e + 1]))
            .collect();

        Ok(Arrangement {
            vertices,
            edges,
            faces,
            edge_faces,
            unbounded_face: 0,
            vertex_stars: stars,
            components,
            index,
            half_face,
        })
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// `V - E + F`, counting the unbounded face. Equals `1 + components`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn half_origin(&self, h: usize) -> usize {
        let e = &self.edges[h / 2];
        if h.is_multiple_of(2) {
            e.from
        } else {
            e.to
        }
    }

    pub fn half_dest(&self, h: usize) -> usize {
        self.half_origin(h ^ 1)
    }

    pub fn half_face(&self, h: usize) -> usize {
        self.half_face[h]
    }

    pub fn edge_segment(&self, e: usize) -> Segment {
        let ed = &self.edges[e];
        Segment::new(self.vertices[ed.from].clone(), self.vertices[ed.to].clone())
    }

    pub fn vertex_id(&self, p: &Pt) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Exact point location.
    pub fn locate(&self, p: &Pt) -> Location {
        if let Some(v) = self.vertex_id(p) {
            return Location::Vertex(v);
        }
        for e in 0..self.edges.len() {
            if self.edge_segment(e).contains_interior(p) {
                return Location::Edge(e);
            }
        }
        let d = ray_direction(p, self.vertices.iter());
        let mut best: Option<(Rat, usize)> = None;
        for e in 0..self.edges.len() {
            if let Some(t) = ray_hit(p, &d, &self.edge_segment(e)) {
                if best.as_ref().is_none_or(|(bt, _)| &t < bt) {
                    best = Some((t, e));
                }
            }
        }
        match best {
            None => Location::Face(self.unbounded_face),
            Some((_, e)) => {
                let ed = &self.edges[e];
                let (l, r) = self.edge_faces[e];
                if orient(&self.vertices[ed.from], &self.vertices[ed.to], p) > 0 {
                    Location::Face(l)
                } else {
                    Location::Face(r)
                }
            }
        }
    }

    /// The face entered when leaving a located point in direction `dir`.
    /// `None` if `dir` runs along an edge.
    pub fn face_toward(&self, loc: &Location, dir: &Pt) -> Option<usize> {
        match loc {
            Location::Face(f) => Some(*f),
            Location::Edge(e) => {
                let ed = &self.edges[*e];
                let ev = &self.vertices[ed.to] - &self.vertices[ed.from];
                let (l, r) = self.edge_faces[*e];
                match super::sign(&ev.cross(dir)) {
                    1 => Some(l),
                    -1 => Some(r),
                    _ => None,
                }
            }
            Location::Vertex(v) => {
                let star = &self.vertex_stars[*v];
                let here = &self.vertices[*v];
                let dirs: Vec<Pt> = star.iter().map(|&h| &self.vertices[self.half_dest(h)] - here).collect();
                if dirs.iter().any(|d| angle_cmp(d, dir).is_eq()) {
                    return None;
                }
                // the sector (dirs[i], dirs[i+1]) lies left of star[i]
                let k = dirs.iter().filter(|d| angle_cmp(d, dir).is_lt()).count();
                let i = (k + star.len() - 1) % star.len();
                Some(self.half_face[star[i]])
            }
        }
    }

    /// Winding values per face from signed edge multiplicities: crossing an
    /// edge from its right to its left adds its multiplicity, and the
    /// unbounded face has value `base`.
    pub fn propagate(&self, multiplicity: &[i64], base: i64) -> Result<Vec<i64>, GeomError> {
        let nf = self.faces.len();
        let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); nf];
        for (e, &(l, r)) in self.edge_faces.iter().enumerate() {
            let m = multiplicity[e];
            adj[r].push((l, e, m));
            adj[l].push((r, e, -m));
        }
        let mut val: Vec<Option<i64>> = vec![None; nf];
        val[self.unbounded_face] = Some(base);
        let mut queue = VecDeque::from([self.unbounded_face]);
        while let Some(f) = queue.pop_front() {
            let wf = val[f].expect("queued faces have values");
            for &(g, e, delta) in &adj[f] {
                match val[g] {
                    None => {
                        val[g] = Some(wf + delta);
                        queue.push_back(g);
                    }
                    Some(wg) if wg != wf + delta => {
                        return Err(GeomError::InconsistentPropagation(e));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(val.into_iter().map(|v| v.unwrap_or(base)).collect())
    }

    /// Winding number by face-adjacency propagation.
    pub fn winding_by_propagation(&self, multiplicity: &[i64]) -> Result<Vec<i64>, GeomError> {
        self.propagate(multiplicity, 0)
    }

    /// A point strictly inside face `f`, found by offsetting the midpoint of
    /// a boundary edge to the face side.
    pub fn sample_point(&self, f: usize) -> Option<Pt> {
        let face = &self.faces[f];
        let h = face
            .outer
            .as_ref()
            .and_then(|c| c.first())
            .or_else(|| face.holes.first().and_then(|c| c.first()))
            .copied()?;
        let a = &self.vertices[self.half_origin(h)];
        let b = &self.vertices[self.half_dest(h)];
        let mid = a.lerp(b, &rat(1, 2));
        let normal = (b - a).perp();
        let mut eps = rat(1, 4);
        for _ in 0..200 {
            let q = &mid + &normal.scale(&eps);
            if self.locate(&q) == Location::Face(f) {
                return Some(q);
            }
            eps /= int(2);
        }
        None
    }

    /// Sum over bounded faces of `value * area`.
    pub fn integrate(&self, values: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for (f, face) in self.faces.iter().enumerate() {
            if let Some(a) = &face.area {
                acc += a * int(values[f]);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x0: i64, y0: i64, s: i64, ccw: bool) -> Polyline {
        let mut v = vec![
            Pt::ints(x0, y0),
            Pt::ints(x0 + s, y0),
            Pt::ints(x0 + s, y0 + s),
            Pt::ints(x0, y0 + s),
        ];
        if !ccw {
            v.reverse();
        }
        Polyline::closed(v)
    }

    #[test]
    fn two_crossing_segments() {
        // Two segments crossing at one point: a star of four edges with no
        // bounded face, so V=5, E=4, F=1 and V - E + F = 2.
        let arr = Arrangement::build(&[
            Polyline::open(vec![Pt::ints(-1, 0), Pt::ints(1, 0)]),
            Polyline::open(vec![Pt::ints(0, -1), Pt::ints(0, 1)]),
        ])
        .unwrap();
        assert_eq!(arr.vertices.len(), 5);
        assert_eq!(arr.edges.len(), 4);
        assert_eq!(arr.faces.len(), 1);
        assert_eq!(arr.euler_characteristic(), 2);
    }

    #[test]
    fn unit_square() {
        let arr = Arrangement::build(&[sq(0, 0, 1, true)]).unwrap();
        assert_eq!((arr.vertices.len(), arr.edges.len(), arr.faces.len()), (4, 4, 2));
        let w = arr.winding_by_propagation(&[1, 1, 1, 1]).unwrap();
        let inside = arr.locate(&Pt::new(rat(1, 2), rat(1, 2)));
        let Location::Face(f) = inside else { panic!() };
        assert_eq!(w[f], 1);
        assert_eq!(arr.faces[f].area, Some(int(1)));
        let w = arr.winding_by_propagation(&[-1, -1, -1, -1]).unwrap();
        assert_eq!(w[f], -1);
    }

    #[test]
    fn figure_eight() {
        // Two squares sharing the vertex (1,1), traversed as one loop with
        // opposite orientations.
        let lp = Polyline::closed(vec![
            Pt::ints(0, 0),
            Pt::ints(1, 0),
            Pt::ints(1, 1),
            Pt::ints(1, 2),
            Pt::ints(2, 2),
            Pt::ints(2, 1),
            Pt::ints(1, 1),
            Pt::ints(0, 1),
        ]);
        let arr = Arrangement::build(std::slice::from_ref(&lp)).unwrap();
        assert_eq!(arr.euler_characteristic(), 2);
        let w = arr.winding_by_propagation(&vec![1; arr.edges.len()]).unwrap();
        let a = Pt::new(rat(1, 2), rat(1, 2));
        let b = Pt::new(rat(3, 2), rat(3, 2));
        for p in [a, b] {
            let Location::Face(f) = arr.locate(&p) else { panic!() };
            assert_eq!(w[f], winding_by_raycast(&lp, &p).unwrap());
        }
        let Location::Face(f) = arr.locate(&Pt::new(rat(1, 2), rat(1, 2))) else {
            panic!()
        };
        assert_eq!(w[f], 1);
        let Location::Face(f) = arr.locate(&Pt::new(rat(3, 2), rat(3, 2))) else {
            panic!()
        };
        assert_eq!(w[f], -1);
    }

    #[test]
    fn nested_components_get_holes() {
        let arr = Arrangement::build(&[sq(0, 0, 10, true), sq(2, 2, 2, true)]).unwrap();
        assert_eq!(arr.components(), 2);
        assert_eq!(arr.euler_characteristic(), 3);
        let Location::Face(f) = arr.locate(&Pt::ints(1, 1)) else {
            panic!()
        };
        assert_eq!(arr.faces[f].holes.len(), 1);
        assert_eq!(arr.faces[f].area, Some(int(96)));
    }

    #[test]
    fn overlap_is_rejected() {
        let r = Arrangement::build(&[
            Polyline::open(vec![Pt::ints(0, 0), Pt::ints(2, 0)]),
            Polyline::open(vec![Pt::ints(1, 0), Pt::ints(3, 0)]),
        ]);
        assert!(matches!(r, Err(GeomError::DegenerateContact(..))));
    }

    #[test]
    fn sectors_at_a_crossing() {
        let arr = Arrangement::build(&[sq(0, 0, 2, true), sq(1, 1, 2, true)]).unwrap();
        let loc = arr.locate(&Pt::ints(2, 1));
        assert!(matches!(loc, Location::Vertex(_)));
        let mut faces = Vec::new();
        for (a, b) in [(1, 1), (-1, 1), (-1, -1), (1, -1)] {
            faces.push(arr.face_toward(&loc, &Pt::ints(a, b)).unwrap());
        }
        faces.sort();
        faces.dedup();
        assert_eq!(faces.len(), 4);
        assert_eq!(arr.face_toward(&loc, &Pt::ints(0, 1)), None);
    }
}
