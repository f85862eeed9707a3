"""Hyperplane-permutation switching for polar collinearity graphs.

Fix a singular subspace L of dimension d-1 in a rank-d polar space.  The
singular points then split into three camps:

* the points of L itself;
* the "blocks": for each of the q^e + 1 maximal singular subspaces
  through L, its points outside L (an affine space of q^{d-1} points);
* the rest, Z: points whose perp meets L in a hyperplane of L.

Inside each block, the hyperplanes of the enclosing maximal subspace
other than L cut out affine hyperplanes.  These fall into parallel
classes of q, one class per hyperplane K of L (the class of H is H ∩ L),
and every z in Z sees exactly one affine hyperplane per block, always
from the class K = perp(z) ∩ L.

A switch assigns to every (block, class) pair a permutation of its q
parallel hyperplanes and rewires each z from its hyperplane to the
image hyperplane, block by block.  The identity assignment returns the
original graph; every assignment preserves the strongly regular
parameters, but generally not the isomorphism type.

Switch assignments live in SwitchSpec objects with a plain-text format:

    # free-form comment lines (kept as provenance)
    kind sp
    q 2
    d 3
    l-row 0 0 0 1 0 0        one line per basis row of L
    perm 0 2 1 0             block 0, class 2: slot images 1 0

Blocks are numbered in the canonical order of their maximal subspaces,
classes in the canonical order of the hyperplanes of L, and slots in
the canonical order of the hyperplane subspaces; "canonical" is the
deterministic basis ordering from linalg, so numbering is reproducible.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    BadL,
    InternalInconsistency,
    MalformedInput,
    NotIsotropic,
    NotParallel,
    NotSwitchingSet,
    OutOfRange,
    RankTooSmall,
)
from .graph import Graph
from .linalg import Subspace
from .polar import PolarKind, PolarSpace

MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny deterministic generator (the splitmix64 mixer).

    Used instead of random.Random so that seeded runs give identical
    output across platforms and Python versions.
    """

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise OutOfRange(f"randrange needs a positive bound, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next64()
            if r < limit:
                return r % n

    def shuffle(self, seq) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]


# ── the vertex partition ───────────────────────────────────────────────


@dataclass(frozen=True)
class VertexPartition:
    l_subspace: Subspace
    l_ids: tuple          # vertex ids of the points of L
    gen_subs: tuple       # maximal singular subspaces through L, canonical order
    block_ids: tuple      # per gen: ids of its points outside L
    z_ids: tuple          # everything else


def _validate_base(space: PolarSpace, l_subspace: Subspace):
    if space.d < 2:
        raise RankTooSmall(f"switching needs rank at least 2, {space.name} "
                           f"has rank {space.d}")
    space._check_ambient(l_subspace)
    if l_subspace.dim != space.d - 1:
        raise BadL(f"base subspace must have dimension {space.d - 1}, "
                   f"got {l_subspace.dim}")
    if not space.is_isotropic(l_subspace):
        raise NotIsotropic("base subspace must be singular")


def partition_vertices(space: PolarSpace, l_subspace: Subspace) -> VertexPartition:
    """Split the vertex set into L, the blocks through L, and Z."""
    _validate_base(space, l_subspace)
    q, d = space.q, space.d
    idx = space.point_index()
    l_pts = {p.rep for p in linalg.points_of(l_subspace)}
    l_ids = tuple(sorted(idx[r] for r in l_pts))
    gens = space.generators_through(l_subspace)
    if len(gens) != space.q_e + 1:
        raise InternalInconsistency(
            f"{len(gens)} maximal subspaces through the base, expected "
            f"{space.q_e + 1}")
    blocks = []
    used = set(l_ids)
    for g in gens:
        ids = tuple(sorted(idx[p.rep] for p in linalg.points_of(g)
                           if p.rep not in l_pts))
        if len(ids) != q**(d - 1) or used.intersection(ids):
            raise InternalInconsistency("blocks fail to tile the cone over "
                                        "the base subspace")
        used.update(ids)
        blocks.append(ids)
    z_ids = tuple(i for i in range(len(idx)) if i not in used)
    return VertexPartition(l_subspace, l_ids, tuple(gens), tuple(blocks),
                           z_ids)


# ── affine hyperplane tables ───────────────────────────────────────────


@dataclass(frozen=True)
class AffineTable:
    classes: tuple        # hyperplanes of L, canonical order
    hyperplanes: tuple    # [block][class][slot] -> Subspace
    slot_ids: tuple       # [block][class][slot] -> tuple of vertex ids


def build_affine_table(space: PolarSpace, part: VertexPartition) -> AffineTable:
    """Group each block's hyperplane traces into parallel classes."""
    q, d = space.q, space.d
    l_sub = part.l_subspace
    idx = space.point_index()
    l_pts = {p.rep for p in linalg.points_of(l_sub)}
    classes = linalg.hyperplanes_of(l_sub) if d >= 2 else []
    class_pos = {c.key: ci for ci, c in enumerate(classes)}
    all_h, all_ids = [], []
    for bi, g in enumerate(part.gen_subs):
        per_class = [[] for _ in classes]
        for h in linalg.hyperplanes_of(g):
            if h == l_sub:
                continue
            trace = linalg.intersect(h, l_sub)
            per_class[class_pos[trace.key]].append(h)
        gen_h, gen_ids = [], []
        cover = set()
        for ci, hs in enumerate(per_class):
            if len(hs) != q:
                raise InternalInconsistency(
                    f"class {ci} of block {bi} holds {len(hs)} hyperplanes, "
                    f"expected {q}")
            hs.sort(key=lambda s: s.key)
            ids = []
            for h in hs:
                pts = tuple(sorted(idx[p.rep] for p in linalg.points_of(h)
                                   if p.rep not in l_pts))
                if len(pts) != q**(d - 2):
                    raise InternalInconsistency(
                        "an affine hyperplane has the wrong size")
                ids.append(pts)
                cover.update(pts)
            gen_h.append(tuple(hs))
            gen_ids.append(tuple(ids))
        all_h.append(tuple(gen_h))
        all_ids.append(tuple(gen_ids))
    return AffineTable(tuple(classes), tuple(all_h), tuple(all_ids))


# ── switch assignment files ────────────────────────────────────────────


@dataclass
class SwitchSpec:
    """A complete switching assignment, serialisable as plain text."""

    kind: PolarKind
    q: int
    d: int
    l_basis: tuple                      # rows of the base subspace basis
    perms: tuple                        # [block][class] -> tuple image of range(q)
    provenance: str = field(default="", compare=False)

    @property
    def num_blocks(self):
        return len(self.perms)

    @property
    def num_classes(self):
        return len(self.perms[0]) if self.perms else 0

    def is_identity(self) -> bool:
        ident = tuple(range(self.q))
        return all(p == ident for gen in self.perms for p in gen)


def _shape_for(kind: PolarKind, q: int, d: int):
    """(number of blocks, number of classes) for a rank-d space."""
    import math
    e2 = kind.e2
    if e2 % 2 == 0:
        qe = q ** (e2 // 2)
    else:
        r = math.isqrt(q)
        if r * r != q:
            raise MalformedInput(f"family {kind.value!r} needs a square q, "
                                 f"got {q}")
        qe = r ** e2
    return qe + 1, (q**(d - 1) - 1) // (q - 1)


def spec_to_text(spec: SwitchSpec) -> str:
    out = io.StringIO()
    for line in spec.provenance.splitlines():
        out.write(f"# {line}\n" if line else "#\n")
    out.write(f"kind {spec.kind.value}\n")
    out.write(f"q {spec.q}\n")
    out.write(f"d {spec.d}\n")
    for row in spec.l_basis:
        out.write("l-row " + " ".join(str(c) for c in row) + "\n")
    for bi, gen in enumerate(spec.perms):
        for ci, perm in enumerate(gen):
            out.write(f"perm {bi} {ci} " + " ".join(map(str, perm)) + "\n")
    return out.getvalue()


def spec_from_text(text: str) -> SwitchSpec:
    header = {}
    l_rows = []
    perm_lines = []
    provenance = []
    in_preamble = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if in_preamble:
                provenance.append(line[1:].strip())
            continue
        in_preamble = False
        parts = line.split()
        key, args = parts[0], parts[1:]
        try:
            if key in ("kind", "q", "d"):
                if key in header:
                    raise MalformedInput(f"duplicate {key!r}")
                if len(args) != 1:
                    raise MalformedInput(f"{key!r} takes one value")
                header[key] = args[0]
            elif key == "l-row":
                l_rows.append(tuple(int(a) for a in args))
            elif key == "perm":
                perm_lines.append(tuple(int(a) for a in args))
            else:
                raise MalformedInput(f"unknown directive {key!r}")
        except ValueError:
            raise MalformedInput(
                f"line {lineno}: non-integer value in {raw!r}") from None
        except MalformedInput as exc:
            raise MalformedInput(f"line {lineno}: {exc}") from None
    for need in ("kind", "q", "d"):
        if need not in header:
            raise MalformedInput(f"missing {need!r} line")
    try:
        kind = PolarKind(header["kind"])
    except ValueError:
        raise MalformedInput(f"unknown family {header['kind']!r}") from None
    try:
        q, d = int(header["q"]), int(header["d"])
    except ValueError:
        raise MalformedInput("q and d must be integers") from None
    if q < 2:
        raise MalformedInput(f"q must be at least 2, got {q}")
    if d < 2:
        raise MalformedInput(f"d must be at least 2, got {d}")
    nblocks, nclasses = _shape_for(kind, q, d)
    n = kind.ambient_dim(d)
    if len(l_rows) != d - 1:
        raise MalformedInput(f"expected {d - 1} l-row lines, got "
                             f"{len(l_rows)}")
    for row in l_rows:
        if len(row) != n:
            raise MalformedInput(f"l-row length {len(row)}, ambient is {n}")
        if any(not 0 <= c < q for c in row):
            raise MalformedInput("l-row entry outside the field")
    perms = [[None] * nclasses for _ in range(nblocks)]
    for entry in perm_lines:
        if len(entry) != 2 + q:
            raise MalformedInput(
                f"perm line needs block, class and {q} images, got "
                f"{len(entry)} values")
        bi, ci, images = entry[0], entry[1], entry[2:]
        if not 0 <= bi < nblocks:
            raise MalformedInput(f"block index {bi} outside 0..{nblocks - 1}")
        if not 0 <= ci < nclasses:
            raise MalformedInput(f"class index {ci} outside 0..{nclasses - 1}")
        if sorted(images) != list(range(q)):
            raise MalformedInput(
                f"images {images} are not a permutation of 0..{q - 1}")
        if perms[bi][ci] is not None:
            raise MalformedInput(f"duplicate perm line for block {bi} "
                                 f"class {ci}")
        perms[bi][ci] = tuple(images)
    for bi in range(nblocks):
        for ci in range(nclasses):
            if perms[bi][ci] is None:
                raise MalformedInput(f"missing perm line for block {bi} "
                                     f"class {ci}")
    return SwitchSpec(kind, q, d, tuple(l_rows),
                      tuple(tuple(gen) for gen in perms),
                      "\n".join(provenance))


def read_spec_file(path) -> SwitchSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return spec_from_text(fh.read())


def write_spec_file(path, spec: SwitchSpec) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(spec_to_text(spec))


# ── frames: everything cached for repeated switching ──────────────────


class SwitchFrame:
    """Base graph, partition, hyperplane table and per-z slot assignments."""

    def __init__(self, space: PolarSpace, l_subspace: Subspace | None = None):
        if l_subspace is None:
            if space.d < 2:
                raise RankTooSmall(
                    f"switching needs rank at least 2, {space.name} has "
                    f"rank {space.d}")
            l_subspace = space.canonical_base(space.d - 1)
        _validate_base(space, l_subspace)
        self.space = space
        self.l_subspace = l_subspace
        self.graph0 = space.collinearity_graph()
        self.partition = partition_vertices(space, l_subspace)
        self.table = build_affine_table(space, self.partition)
        self._base_bool = self.graph0.to_bool_matrix()
        self._assign_z()

    def _assign_z(self):
        """Locate, for every z, its affine hyperplane in every block."""
        q, d = self.space.q, self.space.d
        part, table = self.partition, self.table
        z = np.array(part.z_ids, dtype=np.intp)
        nz, nblocks = len(z), len(part.block_ids)
        nclasses = len(table.classes)
        self.z_class = np.full(nz, -1, dtype=np.intp)
        self.z_slot = np.zeros((nz, nblocks), dtype=np.intp)
        for bi, block in enumerate(part.block_ids):
            sub = self._base_bool[np.ix_(z, np.array(block, dtype=np.intp))]
            if not np.all(sub.sum(axis=1) == q**(d - 2)):
                raise InternalInconsistency(
                    "a z-vertex misses the affine hyperplane size in a block")
            col_of = {v: j for j, v in enumerate(block)}
            assigned = np.zeros(nz, dtype=bool)
            for ci in range(nclasses):
                for si in range(q):
                    cols = [col_of[v] for v in table.slot_ids[bi][ci][si]]
                    hit = sub[:, cols].all(axis=1)
                    if np.any(hit & assigned):
                        raise InternalInconsistency(
                            "a z-vertex matches two affine hyperplanes")
                    assigned |= hit
                    self.z_slot[hit, bi] = si
                    if bi == 0:
                        self.z_class[hit] = ci
                    elif np.any(hit & (self.z_class != ci)):
                        raise InternalInconsistency(
                            "a z-vertex changes parallel class across blocks")
            if not assigned.all():
                raise InternalInconsistency(
                    "a z-vertex traces no affine hyperplane in some block")

    def class_of_z(self, z_vertex: int) -> int:
        pos = self.partition.z_ids.index(z_vertex)
        return int(self.z_class[pos])

    def slot_of_z(self, z_vertex: int, block: int) -> int:
        pos = self.partition.z_ids.index(z_vertex)
        return int(self.z_slot[pos, block])

    def make_spec(self, perms, provenance="") -> SwitchSpec:
        return SwitchSpec(self.space.kind, self.space.q, self.space.d,
                          self.l_subspace.basis,
                          tuple(tuple(map(tuple, gen)) for gen in perms),
                          provenance)


def make_frame(space: PolarSpace, l_subspace: Subspace | None = None) -> SwitchFrame:
    return SwitchFrame(space, l_subspace)


# ── assignment builders ────────────────────────────────────────────────


def _identity_perms(frame: SwitchFrame):
    q = frame.space.q
    nclasses = len(frame.table.classes)
    one = tuple(range(q))
    return [[one] * nclasses for _ in frame.partition.block_ids]


def sigma_identity(frame: SwitchFrame) -> SwitchSpec:
    """The do-nothing assignment: switching with it returns the base graph."""
    return frame.make_spec(_identity_perms(frame))


def sigma_random(frame: SwitchFrame, seed: int) -> SwitchSpec:
    """Independent uniform permutation per (block, class), seeded."""
    rng = SplitMix64(seed)
    q = frame.space.q
    perms = []
    for _ in frame.partition.block_ids:
        gen = []
        for _ in frame.table.classes:
            p = list(range(q))
            rng.shuffle(p)
            gen.append(tuple(p))
        perms.append(gen)
    return frame.make_spec(perms, provenance=f"seed {seed}")


def sigma_complement(frame: SwitchFrame) -> SwitchSpec:
    """Swap the two parallel hyperplanes in every class (q = 2 only)."""
    if frame.space.q != 2:
        raise OutOfRange("the complement assignment only exists for q = 2")
    nclasses = len(frame.table.classes)
    swap = (1, 0)
    return frame.make_spec([[swap] * nclasses
                            for _ in frame.partition.block_ids])


def _locate_hyperplane(frame: SwitchFrame, block: int, h: Subspace):
    table = frame.table
    if not 0 <= block < len(table.hyperplanes):
        raise OutOfRange(f"block {block} outside 0.."
                         f"{len(table.hyperplanes) - 1}")
    for ci, slots in enumerate(table.hyperplanes[block]):
        for si, cand in enumerate(slots):
            if cand == h:
                return ci, si
    raise OutOfRange("subspace is not a switchable hyperplane of that block")


def sigma_single_swap(frame: SwitchFrame, block: int, h1: Subspace,
                      h2: Subspace) -> SwitchSpec:
    """Transpose two parallel hyperplanes of one block; identity elsewhere."""
    c1, s1 = _locate_hyperplane(frame, block, h1)
    c2, s2 = _locate_hyperplane(frame, block, h2)
    if c1 != c2:
        raise NotParallel(f"hyperplanes sit in classes {c1} and {c2}")
    if s1 == s2:
        raise ValueError("the two hyperplanes coincide")
    perms = _identity_perms(frame)
    p = list(range(frame.space.q))
    p[s1], p[s2] = p[s2], p[s1]
    perms[block][c1] = tuple(p)
    return frame.make_spec(perms)


# ── applying a switch ──────────────────────────────────────────────────


def build_switched_graph(frame: SwitchFrame, spec: SwitchSpec) -> Graph:
    """Rewire every z from its hyperplane to the assigned image, per block."""
    space = frame.space
    if (spec.kind is not space.kind or spec.q != space.q
            or spec.d != space.d):
        raise MalformedInput(
            f"assignment is for {spec.kind.value} q={spec.q} d={spec.d}, "
            f"frame holds {space.kind.value} q={space.q} d={space.d}")
    spec_l = Subspace.from_vectors(space.field, space.n, spec.l_basis)
    if spec_l != frame.l_subspace:
        raise BadL("assignment was made for a different base subspace")
    nblocks = len(frame.partition.block_ids)
    nclasses = len(frame.table.classes)
    q = space.q
    if spec.num_blocks != nblocks or spec.num_classes != nclasses:
        raise MalformedInput(
            f"assignment shape {spec.num_blocks}x{spec.num_classes}, "
            f"frame needs {nblocks}x{nclasses}")
    for gen in spec.perms:
        for p in gen:
            if sorted(p) != list(range(q)):
                raise MalformedInput(f"{p} is not a permutation of 0..{q - 1}")
    adj = frame._base_bool.copy()
    slot_ids = frame.table.slot_ids
    z_ids = frame.partition.z_ids
    for pos, zv in enumerate(z_ids):
        ci = int(frame.z_class[pos])
        for bi in range(nblocks):
            si = int(frame.z_slot[pos, bi])
            ti = spec.perms[bi][ci][si]
            if ti != si:
                old = list(slot_ids[bi][ci][si])
                new = list(slot_ids[bi][ci][ti])
                adj[zv, old] = False
                adj[old, zv] = False
                adj[zv, new] = True
                adj[new, zv] = True
    return Graph.from_bool_matrix(adj, labels=frame.graph0.labels)


# ── generic one-set switching (for cross-checks) ───────────────────────


def gm_switch(graph: Graph, switching_set) -> Graph:
    """Complement edges between Y and the vertices seeing exactly half of Y.

    Every vertex outside Y must see none, half, or all of Y; otherwise
    the witness vertex is reported and nothing is built.
    """
    y = [int(v) for v in switching_set]
    n = graph.n
    if len(set(y)) != len(y):
        raise OutOfRange("switching set lists a vertex twice")
    y = sorted(y)
    for v in y:
        if not 0 <= v < n:
            raise OutOfRange(f"vertex {v} outside 0..{n - 1}")
    adj = graph.to_bool_matrix()
    y_arr = np.array(y, dtype=np.intp)
    in_y = np.zeros(n, dtype=bool)
    in_y[y_arr] = True
    counts = adj[:, y_arr].sum(axis=1) if len(y) else np.zeros(n, dtype=int)
    outside = ~in_y
    ok = (counts == 0) | (counts == len(y)) | (2 * counts == len(y))
    bad = outside & ~ok
    if np.any(bad):
        w = int(np.nonzero(bad)[0][0])
        raise NotSwitchingSet(
            f"vertex {w} sees {int(counts[w])} of {len(y)}", witness=w)
    flip = outside & (2 * counts == len(y))
    if len(y):
        adj[np.ix_(flip, in_y)] ^= True
        adj[np.ix_(in_y, flip)] ^= True
    return Graph.from_bool_matrix(adj, labels=graph.labels)
