//! Edge and vertex classes of a triangulation, with books and vertex links.

use crate::perm::Perm;
use crate::triangulation::{edge_index, EdgeRef, FaceRef, Triangulation, EDGE_VERTICES};

/// One tetrahedron in the book around an edge.
///
/// `verts` lists the tetrahedron's vertices so that `verts[0], verts[1]` are
/// the endpoints of the edge, the face opposite `verts[3]` leads to the next
/// entry of the book and the face opposite `verts[2]` to the previous one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BookEntry {
    pub tet: usize,
    pub verts: Perm,
}

impl BookEntry {
    pub fn edge(&self) -> EdgeRef {
        EdgeRef::between(self.tet, self.verts.apply(0), self.verts.apply(1))
    }

    /// The face leading to the next entry.
    pub fn next_face(&self) -> FaceRef {
        FaceRef::new(self.tet, self.verts.apply(3))
    }

    /// The face leading to the previous entry.
    pub fn prev_face(&self) -> FaceRef {
        FaceRef::new(self.tet, self.verts.apply(2))
    }

    /// Steps across the face opposite `verts[3]`, if it is glued.
    pub fn step(&self, tri: &Triangulation) -> Option<BookEntry> {
        let g = tri.gluing(self.tet, self.verts.apply(3))?;
        let v = |i| g.perm.apply(self.verts.apply(i)) as u8;
        Some(BookEntry {
            tet: g.tet,
            verts: Perm::new([v(0), v(1), v(3), v(2)]).unwrap(),
        })
    }

    /// The same position, traversed in the opposite direction.
    pub fn reversed(&self) -> BookEntry {
        let v = self.verts.image();
        BookEntry { tet: self.tet, verts: Perm::new([v[0], v[1], v[3], v[2]]).unwrap() }
    }
}

#[derive(Clone, Debug)]
pub struct EdgeClass {
    /// Model edges in the class, in book order. The flag is true when the
    /// model edge is traversed from its higher- to its lower-numbered vertex.
    pub reps: Vec<(EdgeRef, bool)>,
    /// Tetrahedra around the edge. Cyclic unless `boundary` is set, in which
    /// case it runs from one free face to the other.
    pub book: Vec<BookEntry>,
    pub boundary: bool,
    /// The edge is identified with itself in reverse.
    pub reversed: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.reps.len()
    }
}

#[derive(Clone, Debug)]
pub struct VertexClass {
    pub corners: Vec<(usize, usize)>,
    pub link: LinkInfo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkInfo {
    pub closed: bool,
    pub orientable: bool,
    pub euler: i64,
}

impl LinkInfo {
    pub fn is_sphere(&self) -> bool {
        self.closed && self.orientable && self.euler == 2
    }
}

/// Derived skeleton of a triangulation. Classes are numbered in order of
/// first appearance when scanning `(tet, model edge)` lexicographically.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    edge_of: Vec<[usize; 6]>,
    vertex_of: Vec<[usize; 4]>,
}

impl Skeleton {
    pub fn new(tri: &Triangulation) -> Skeleton {
        let n = tri.len();
        let mut edge_of = vec![[usize::MAX; 6]; n];
        let mut edges = Vec::new();
        for t in 0..n {
            for k in 0..6 {
                if edge_of[t][k] != usize::MAX {
                    continue;
                }
                let id = edges.len();
                let class = walk_edge(tri, t, k);
                for (r, _) in &class.reps {
                    edge_of[r.tet][r.edge] = id;
                }
                edges.push(class);
            }
        }

        let mut vertex_of = vec![[usize::MAX; 4]; n];
        let mut vertices = Vec::new();
        for t in 0..n {
            for v in 0..4 {
                if vertex_of[t][v] != usize::MAX {
                    continue;
                }
                let id = vertices.len();
                vertex_of[t][v] = id;
                let mut corners = vec![(t, v)];
                let mut i = 0;
                while i < corners.len() {
                    let (ct, cv) = corners[i];
                    i += 1;
                    for f in (0..4).filter(|&f| f != cv) {
                        if let Some(g) = tri.gluing(ct, f) {
                            let w = g.perm.apply(cv);
                            if vertex_of[g.tet][w] == usize::MAX {
                                vertex_of[g.tet][w] = id;
                                corners.push((g.tet, w));
                            }
                        }
                    }
                }
                vertices.push(VertexClass {
                    corners,
                    link: LinkInfo { closed: true, orientable: true, euler: 0 },
                });
            }
        }

        let mut skel = Skeleton { edges, vertices, edge_of, vertex_of };
        for id in 0..skel.vertices.len() {
            let link = skel.link_info(tri, id);
            skel.vertices[id].link = link;
        }
        skel
    }

    fn link_info(&self, tri: &Triangulation, id: usize) -> LinkInfo {
        let corners = &self.vertices[id].corners;
        let faces = corners.len() as i64;
        let mut glued = 0i64;
        let mut free = 0i64;
        for &(t, v) in corners {
            for f in (0..4).filter(|&f| f != v) {
                if tri.gluing(t, f).is_some() {
                    glued += 1;
                } else {
                    free += 1;
                }
            }
        }
        let link_edges = glued / 2 + free;
        let mut link_vertices = 0i64;
        for class in &self.edges {
            let (r, _) = class.reps[0];
            let (a, b) = r.vertices();
            let ends = [self.vertex_of[r.tet][a], self.vertex_of[r.tet][b]];
            if class.reversed {
                if ends[0] == id {
                    link_vertices += 1;
                }
            } else {
                link_vertices += ends.iter().filter(|&&e| e == id).count() as i64;
            }
        }
        // Orientability of the link: the parity rule restricted to corners.
        let mut sign = std::collections::HashMap::new();
        let mut orientable = true;
        sign.insert(corners[0].0 * 4 + corners[0].1, 1i8);
        let mut stack = vec![corners[0]];
        while let Some((t, v)) = stack.pop() {
            let s = sign[&(t * 4 + v)];
            for f in (0..4).filter(|&f| f != v) {
                if let Some(g) = tri.gluing(t, f) {
                    let key = g.tet * 4 + g.perm.apply(v);
                    let want = if g.perm.is_odd() { s } else { -s };
                    match sign.get(&key) {
                        None => {
                            sign.insert(key, want);
                            stack.push((g.tet, g.perm.apply(v)));
                        }
                        Some(&have) if have != want => orientable = false,
                        _ => {}
                    }
                }
            }
        }
        LinkInfo { closed: free == 0, orientable, euler: link_vertices - link_edges + faces }
    }

    pub fn edge_class(&self, r: EdgeRef) -> usize {
        self.edge_of[r.tet][r.edge]
    }

    pub fn edge_between(&self, tet: usize, a: usize, b: usize) -> usize {
        self.edge_of[tet][edge_index(a, b)]
    }

    pub fn vertex_class(&self, tet: usize, v: usize) -> usize {
        self.vertex_of[tet][v]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.edges[id].degree()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.edges.iter().map(EdgeClass::degree).collect()
    }

    pub fn degree_one_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.degree(e) == 1).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.edges.iter().map(EdgeClass::degree).min().unwrap_or(0)
    }

    /// Edge classes of the three edges of face `face` of `tet`.
    pub fn face_edges(&self, tet: usize, face: usize) -> [usize; 3] {
        let vs: Vec<usize> = (0..4).filter(|&v| v != face).collect();
        [
            self.edge_between(tet, vs[0], vs[1]),
            self.edge_between(tet, vs[0], vs[2]),
            self.edge_between(tet, vs[1], vs[2]),
        ]
    }
}

fn walk_edge(tri: &Triangulation, tet: usize, k: usize) -> EdgeClass {
    let (a, b) = EDGE_VERTICES[k];
    let rest: Vec<u8> = (0..4u8).filter(|&v| v as usize != a && v as usize != b).collect();
    let start = BookEntry {
        tet,
        verts: Perm::new([a as u8, b as u8, rest[0], rest[1]]).unwrap(),
    };
    let mut book = vec![start];
    let mut boundary = false;
    let mut cur = start;
    loop {
        match cur.step(tri) {
            Some(next) if next == start => break,
            Some(next) => {
                book.push(next);
                cur = next;
                if book.len() > 24 * tri.len() + 24 {
                    unreachable!("edge walk failed to close");
                }
            }
            None => {
                boundary = true;
                break;
            }
        }
    }
    if boundary {
        // Walk backwards from the start to reach the other free face.
        let mut back = Vec::new();
        let mut cur = start.reversed();
        while let Some(next) = cur.step(tri) {
            back.push(next.reversed());
            cur = next;
        }
        back.reverse();
        back.extend(book);
        book = back;
    }
    let mut reps: Vec<(EdgeRef, bool)> = Vec::new();
    let mut reversed = false;
    for entry in &book {
        let r = entry.edge();
        let flipped = entry.verts.apply(0) > entry.verts.apply(1);
        if let Some(&(_, f)) = reps.iter().find(|(x, _)| *x == r) {
            if f != flipped {
                reversed = true;
            }
            continue;
        }
        reps.push((r, flipped));
    }
    EdgeClass { reps, book, boundary, reversed }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    ClosedOneVertex,
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub mode: Mode,
    pub orientable: bool,
    pub connected: bool,
    pub vertices: usize,
    pub valid_edges: bool,
    pub links: Vec<LinkInfo>,
    pub all_links_spheres: bool,
    pub one_vertex: bool,
    pub no_sphere_links: bool,
    pub degree_one_edges: Vec<usize>,
}

impl ValidationReport {
    /// Structurally valid for the mode (degree-one edges are reported
    /// separately and do not affect this).
    pub fn is_valid(&self) -> bool {
        let common = self.orientable && self.connected && self.valid_edges;
        match self.mode {
            Mode::ClosedOneVertex => common && self.one_vertex && self.all_links_spheres,
            Mode::Ideal => {
                common && self.no_sphere_links && self.links.iter().all(|l| l.closed)
            }
        }
    }

    pub fn key_values(&self) -> String {
        let mode = match self.mode {
            Mode::ClosedOneVertex => "closed",
            Mode::Ideal => "ideal",
        };
        let deg1: Vec<String> = self.degree_one_edges.iter().map(|e| e.to_string()).collect();
        format!(
            "mode={mode}\nvalid={}\norientable={}\nconnected={}\nvertices={}\nvalid_edges={}\n\
             all_links_spheres={}\none_vertex={}\nno_sphere_links={}\ndegree_one_edges={}\n",
            self.is_valid(),
            self.orientable,
            self.connected,
            self.vertices,
            self.valid_edges,
            self.all_links_spheres,
            self.one_vertex,
            self.no_sphere_links,
            deg1.join(","),
        )
    }
}

pub fn validate(tri: &Triangulation, mode: Mode) -> ValidationReport {
    let skel = Skeleton::new(tri);
    let links: Vec<LinkInfo> = skel.vertices.iter().map(|v| v.link).collect();
    ValidationReport {
        mode,
        orientable: tri.orientation().is_some(),
        connected: tri.is_connected(),
        vertices: links.len(),
        valid_edges: skel.edges.iter().all(|e| !e.reversed),
        all_links_spheres: links.iter().all(LinkInfo::is_sphere),
        one_vertex: links.len() == 1,
        no_sphere_links: links.iter().all(|l| !l.is_sphere()),
        degree_one_edges: skel.degree_one_edges(),
        links,
    }
}
