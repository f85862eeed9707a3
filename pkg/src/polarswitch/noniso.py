"""Non-isomorphism certificates for switched polar graphs.

Two graphs with the same strongly regular parameters can still differ in
how many common neighbours their triangles have.  The histogram of
|N(x) ∩ N(y) ∩ N(z)| over all triangles {x, y, z} is an isomorphism
invariant; when the histograms differ the graphs are certifiably
non-isomorphic, and a concrete triangle realising a discrepant value is
an independently checkable exhibit.

For the collinearity graph itself only two values occur: triangles on a
singular line share all remaining points of the line's perp, and
triangles spanning a singular plane share the remaining points of the
plane's perp.  A single swap of two parallel hyperplanes knocks one
carefully chosen triangle down to a value outside that support:
find_swap_recipe picks a line of Z whose trace triple intersection in
block 0 is a pivot subspace off the base L, and a parallel image
hyperplane avoiding the pivot, so the switched triangle loses exactly
the q^{d-3} common neighbours it had inside block 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels, linalg
from .errors import (InternalInconsistency, NotSrg, RankTooSmall,
                     SpectraEqual)
from .graph import Graph, SrgParams, TriangleSpectrum, degree_sequence
from .linalg import Subspace
from .switching import SwitchFrame, SwitchSpec, build_switched_graph, sigma_single_swap


@dataclass(frozen=True)
class SwapRecipe:
    """A single parallel-hyperplane swap with a predicted odd triangle."""

    block: int
    class_index: int
    slot_a: int
    slot_b: int
    hyperplane_a: Subspace
    hyperplane_b: Subspace
    pivot: Subspace        # the triple trace intersection, off the base
    line: Subspace         # singular line inside Z carrying the triangle
    triple: tuple          # vertex ids (x, y, z) of its first three points
    witness_value: int     # predicted common-neighbour count after the swap


def _line_codegree(space) -> int:
    """Common-neighbour count of a triangle on a singular line."""
    return space.srg_params().lam - 1


def find_swap_recipe(frame: SwitchFrame) -> SwapRecipe:
    """First (in canonical order) single swap with a provable odd triangle.

    The search scans pivot subspaces of block 0 off the base L; for each,
    singular lines in its perp lying entirely inside Z.  A line works
    when its three trace hyperplanes in block 0 meet exactly in the
    pivot, some parallel image of the third trace avoids the pivot, and
    the swap leaves the first two points' traces alone.
    """
    space = frame.space
    if space.d < 3:
        raise RankTooSmall("the certificate construction needs rank "
                           f"at least 3, {space.name} has rank {space.d}")
    part, table = frame.partition, frame.table
    q, d = space.q, space.d
    idx = space.point_index()
    z_set = frozenset(part.z_ids)
    z_pos = {v: i for i, v in enumerate(part.z_ids)}
    gen0 = part.gen_subs[0]
    l_sub = part.l_subspace
    drop = q ** (d - 3)
    witness = _line_codegree(space) - drop

    def assignment(v):
        p = z_pos[v]
        return int(frame.z_class[p]), int(frame.z_slot[p, 0])

    for pivot in linalg.subspaces_of(gen0, d - 2):
        if l_sub.contains(pivot):
            continue
        perp_pts = linalg.points_of(space.perp(pivot))
        cand = [p for p in perp_pts if idx.get(p.rep) in z_set]
        seen = set()
        for ai, pa in enumerate(cand):
            for pb in cand[ai + 1:]:
                if space.form_eval(pa.rep, pb.rep) != 0:
                    continue
                line = Subspace.from_vectors(space.field, space.n,
                                             [pa.rep, pb.rep])
                if line.key in seen:
                    continue
                seen.add(line.key)
                pts = linalg.points_of(line)
                ids = [idx[p.rep] for p in pts]
                if any(v not in z_set for v in ids):
                    continue
                x, y, z = ids[0], ids[1], ids[2]
                cx, sx = assignment(x)
                cy, sy = assignment(y)
                cz, sz = assignment(z)
                hx = table.hyperplanes[0][cx][sx]
                hy = table.hyperplanes[0][cy][sy]
                hz = table.hyperplanes[0][cz][sz]
                trace = linalg.intersect(linalg.intersect(hx, hy), hz)
                if trace != pivot:
                    continue
                hxy = linalg.intersect(hx, hy)
                for st in range(q):
                    if st == sz:
                        continue
                    if (cx == cz and sx in (sz, st)) or \
                       (cy == cz and sy in (sz, st)):
                        continue
                    ht = table.hyperplanes[0][cz][st]
                    if not l_sub.contains(linalg.intersect(hxy, ht)):
                        continue
                    return SwapRecipe(
                        block=0, class_index=cz, slot_a=sz, slot_b=st,
                        hyperplane_a=hz, hyperplane_b=ht,
                        pivot=pivot, line=line, triple=(x, y, z),
                        witness_value=witness)
    raise InternalInconsistency(
        f"no single-swap certificate found for {space.name}")


def recipe_to_spec(frame: SwitchFrame, recipe: SwapRecipe) -> SwitchSpec:
    return sigma_single_swap(frame, recipe.block, recipe.hyperplane_a,
                             recipe.hyperplane_b)


def build_single_swap_graph(frame: SwitchFrame, recipe: SwapRecipe) -> Graph:
    """Apply the recipe's swap and sanity-check the predicted triangle."""
    g1 = build_switched_graph(frame, recipe_to_spec(frame, recipe))
    got = g1.common_neighbors(recipe.triple)
    if got != recipe.witness_value:
        raise InternalInconsistency(
            f"predicted triangle count {recipe.witness_value}, measured "
            f"{got}")
    return g1


# ── certificates ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class NonIsoCertificate:
    """Evidence that two graphs are not isomorphic."""

    reason: str                      # "order" | "degrees" | "triangles"
    n_a: int
    n_b: int
    params_a: SrgParams | None
    params_b: SrgParams | None
    spectrum_a: TriangleSpectrum | None
    spectrum_b: TriangleSpectrum | None
    value: int | None                # codegree with different multiplicity
    count_a: int | None
    count_b: int | None
    triple: tuple | None             # a triangle realising value
    triple_side: str | None          # which graph the triple lives in


def _try_params(g: Graph, threads):
    try:
        return g.srg_check(threads=threads)
    except NotSrg:
        return None


def certify_noniso(graph_a: Graph, graph_b: Graph, threads=None,
                   expected_witness=None, hint_triple=None) -> NonIsoCertificate:
    """Certify the two graphs non-isomorphic, or raise SpectraEqual.

    Cheap invariants (order, degree sequence) are tried first; the
    triangle histogram does the real work.  expected_witness, when
    given, steers which discrepant value the exhibit triangle realises;
    hint_triple short-circuits the triangle search if it checks out.
    """
    if graph_a.n != graph_b.n:
        return NonIsoCertificate(
            reason="order", n_a=graph_a.n, n_b=graph_b.n,
            params_a=None, params_b=None, spectrum_a=None, spectrum_b=None,
            value=None, count_a=None, count_b=None,
            triple=None, triple_side=None)
    pa = _try_params(graph_a, threads)
    pb = _try_params(graph_b, threads)
    if degree_sequence(graph_a) != degree_sequence(graph_b):
        return NonIsoCertificate(
            reason="degrees", n_a=graph_a.n, n_b=graph_b.n,
            params_a=pa, params_b=pb, spectrum_a=None, spectrum_b=None,
            value=None, count_a=None, count_b=None,
            triple=None, triple_side=None)
    sa = graph_a.triangle_spectrum(threads=threads)
    sb = graph_b.triangle_spectrum(threads=threads)
    if sa == sb:
        raise SpectraEqual(
            "triangle spectra coincide; this certificate cannot "
            "distinguish the graphs")
    da, db = sa.as_dict(), sb.as_dict()
    discrepant = sorted(v for v in set(da) | set(db)
                        if da.get(v, 0) != db.get(v, 0))
    value = discrepant[0]
    if expected_witness is not None and expected_witness in discrepant:
        value = expected_witness
    triple, side = None, None
    if hint_triple is not None:
        probe = tuple(int(v) for v in hint_triple)
        if graph_b.common_neighbors(probe) == value and \
                _is_triangle(graph_b, probe):
            triple, side = probe, "b"
    if triple is None:
        if db.get(value, 0):
            triple, side = kernels.find_triple(graph_b.adj, value), "b"
        else:
            triple, side = kernels.find_triple(graph_a.adj, value), "a"
    return NonIsoCertificate(
        reason="triangles", n_a=graph_a.n, n_b=graph_b.n,
        params_a=pa, params_b=pb, spectrum_a=sa, spectrum_b=sb,
        value=value, count_a=da.get(value, 0), count_b=db.get(value, 0),
        triple=triple, triple_side=side)


def _is_triangle(g: Graph, vs) -> bool:
    a, b, c = vs
    return (a != b and a != c and b != c and g.has_edge(a, b)
            and g.has_edge(a, c) and g.has_edge(b, c))


def render_certificate(cert: NonIsoCertificate, name_a="graph A",
                       name_b="graph B") -> str:
    lines = [f"non-isomorphism certificate: {name_a} vs {name_b}"]
    if cert.reason == "order":
        lines.append(f"  orders differ: {cert.n_a} vs {cert.n_b}")
        return "\n".join(lines) + "\n"
    if cert.reason == "degrees":
        lines.append(f"  degree sequences differ (both on {cert.n_a} "
                     "vertices)")
        return "\n".join(lines) + "\n"
    for name, params in ((name_a, cert.params_a), (name_b, cert.params_b)):
        if params is not None:
            lines.append(f"  {name}: strongly regular {tuple(params)}")
        else:
            lines.append(f"  {name}: not strongly regular")
    lines.append(f"  triangle spectrum of {name_a}: {cert.spectrum_a}")
    lines.append(f"  triangle spectrum of {name_b}: {cert.spectrum_b}")
    lines.append(f"  triangles with {cert.value} common neighbours: "
                 f"{cert.count_a} vs {cert.count_b}")
    if cert.triple is not None:
        where = name_b if cert.triple_side == "b" else name_a
        lines.append(f"  exhibit: triangle {tuple(cert.triple)} in {where} "
                     f"has {cert.value} common neighbours")
    lines.append("  histograms differ, so the graphs are not isomorphic")
    return "\n".join(lines) + "\n"
