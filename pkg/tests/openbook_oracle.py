"""Brute-force H1 of an open book from cellular data.

This is the independent check for the intersection-matrix route in
reltri.monodromy: the 3-manifold is assembled as a mapping torus plus
one filling disk per binding circle, and H1 comes straight out of the
chain complex.  All inputs are hand-written cell structures, nothing
here touches combinatorial maps.
"""

from reltri.homology import ChainComplex, zero_matrix


class PageCells:
    """CW structure of a compact surface with boundary.

    vertices: list of names.
    edges: dict name -> (tail, head).
    faces: dict name -> boundary chain {edge: coefficient}.
    boundary_vertices: one chosen vertex per boundary circle, fixed by
    the monodromy; the filling meridian is the section circle over it.
    """

    def __init__(self, vertices, edges, faces, boundary_vertices):
        self.vertices = list(vertices)
        self.edges = dict(edges)
        self.faces = dict(faces)
        self.boundary_vertices = list(boundary_vertices)


def open_book_h1(page, vertex_map, edge_map, face_map):
    """H1 of the open book with the given cellular monodromy.

    vertex_map: vertex -> vertex (must fix boundary_vertices).
    edge_map: edge -> chain {edge: coeff} (the image of the edge).
    face_map: face -> chain {face: coeff}.
    """
    for v in page.boundary_vertices:
        if vertex_map.get(v, v) != v:
            raise ValueError("monodromy must fix the binding vertex %r" % v)

    vs = page.vertices
    es = sorted(page.edges)
    fs = sorted(page.faces)
    vi = {v: i for i, v in enumerate(vs)}
    ei = {e: i for i, e in enumerate(es)}
    fi = {f: i for i, f in enumerate(fs)}

    # C0: page vertices
    # C1: page edges, then a vertical edge per page vertex
    # C2: page faces, then a vertical square per page edge, then one
    #     meridian disk per binding circle
    # C3: a vertical cube per page face
    n0 = len(vs)
    n1 = len(es) + len(vs)
    n2 = len(fs) + len(es) + len(page.boundary_vertices)
    n3 = len(fs)

    d1 = zero_matrix(n0, n1)
    for e in es:
        tail, head = page.edges[e]
        d1[vi[head]][ei[e]] += 1
        d1[vi[tail]][ei[e]] -= 1
    for v in vs:
        w = vertex_map.get(v, v)
        d1[vi[w]][len(es) + vi[v]] += 1
        d1[vi[v]][len(es) + vi[v]] -= 1

    d2 = zero_matrix(n1, n2)
    for f in fs:
        for e, c in page.faces[f].items():
            d2[ei[e]][fi[f]] += c
    for e in es:
        col = len(fs) + ei[e]
        for img, c in edge_map[e].items():
            d2[ei[img]][col] += c
        d2[ei[e]][col] -= 1
        tail, head = page.edges[e]
        d2[len(es) + vi[head]][col] -= 1
        d2[len(es) + vi[tail]][col] += 1
    for j, v in enumerate(page.boundary_vertices):
        d2[len(es) + vi[v]][len(fs) + len(es) + j] += 1

    d3 = zero_matrix(n2, n3)
    for f in fs:
        for img, c in face_map[f].items():
            d3[fi[img]][fi[f]] += c
        d3[fi[f]][fi[f]] -= 1
        for e, c in page.faces[f].items():
            d3[len(fs) + ei[e]][fi[f]] -= c

    cx = ChainComplex((n0, n1, n2, n3), {1: d1, 2: d2, 3: d3})
    return cx.homology(1)


def annulus_page():
    """Square CW structure on the annulus: one spanning edge."""
    return PageCells(
        vertices=["v0", "v1"],
        edges={"e0": ("v0", "v0"), "e1": ("v1", "v1"), "a": ("v0", "v1")},
        faces={"sq": {"a": 0, "e1": 1, "e0": -1}},
        boundary_vertices=["v0", "v1"])


def annulus_twist_maps(n):
    """Cellular n-th power of the twist about the core."""
    vertex_map = {}
    edge_map = {"e0": {"e0": 1}, "e1": {"e1": 1}, "a": {"a": 1, "e1": n}}
    face_map = {"sq": {"sq": 1}}
    return vertex_map, edge_map, face_map


def holed_sphere_page(holes):
    """Outer circle e0 with ``holes`` inner circles joined by arcs."""
    edges = {"e0": ("v0", "v0")}
    faces_chain = {"e0": 1}
    vertices = ["v0"]
    for i in range(1, holes + 1):
        vertices.append("v%d" % i)
        edges["e%d" % i] = ("v%d" % i, "v%d" % i)
        edges["a%d" % i] = ("v0", "v%d" % i)
        faces_chain["e%d" % i] = -1
    return PageCells(
        vertices=vertices,
        edges=edges,
        faces={"f": faces_chain},
        boundary_vertices=list(vertices))


def four_holed_sphere_page():
    return holed_sphere_page(3)


def three_holed_sphere_page():
    return holed_sphere_page(2)


def boundary_twist_maps(page, hole):
    """Cellular twist about a curve parallel to the ``hole``-th circle."""
    vertex_map, edge_map, face_map = identity_maps(page)
    edge_map["a%d" % hole] = {"a%d" % hole: 1, "e%d" % hole: 1}
    return vertex_map, edge_map, face_map


def one_holed_torus_page():
    """Genus-1 surface with one boundary circle."""
    return PageCells(
        vertices=["v0"],
        edges={"e0": ("v0", "v0"), "x": ("v0", "v0"), "y": ("v0", "v0")},
        faces={"f": {"x": 0, "y": 0, "e0": -1}},
        boundary_vertices=["v0"])


def identity_maps(page):
    vertex_map = {}
    edge_map = {e: {e: 1} for e in page.edges}
    face_map = {f: {f: 1} for f in page.faces}
    return vertex_map, edge_map, face_map
