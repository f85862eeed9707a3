"""Polar spaces of the six classical families.

Point counts, adjacency parameters and generator counts are frozen from
the standard counting formulas; the graphs are then checked against them
exhaustively, which is the dual route (combinatorial scan vs closed form).
"""

import pytest

from polarswitch import polar
from polarswitch.errors import (BadDimension, NotIsotropic, NotSquareOrder,
                                OutOfRange, TooLarge)
from polarswitch.gf import field_create
from polarswitch.linalg import Subspace, points_of, subspaces_of
from polarswitch.polar import PolarKind, polar_create

# (kind, d, q) -> v0, (v, k, lambda, mu); plugged into the classical
# counting formulas by hand and cross-checked against the enumeration
KNOWN = {
    ("sp", 3, 2): (63, (63, 30, 13, 15)),
    ("o-plus", 3, 2): (35, (35, 18, 9, 9)),
    ("o-odd", 3, 2): (63, (63, 30, 13, 15)),
    ("o-minus", 3, 2): (119, (119, 54, 21, 27)),
    ("sp", 3, 3): (364, (364, 120, 38, 40)),
    ("u-even", 3, 4): (693, (693, 180, 51, 45)),
    ("u-odd", 3, 4): (2709, (2709, 660, 147, 165)),
}

NAMES = {
    ("sp", 3, 2): "Sp(6,2)",
    ("o-plus", 3, 2): "O+(6,2)",
    ("o-odd", 3, 2): "O(7,2)",
    ("o-minus", 3, 2): "O-(8,2)",
    ("sp", 3, 3): "Sp(6,3)",
    ("u-even", 3, 4): "U(6,4)",
    ("u-odd", 3, 4): "U(7,4)",
}


@pytest.mark.parametrize("kind,d,q", sorted(KNOWN))
def test_point_counts_and_params(kind, d, q, space_of):
    sp = space_of(kind, d, q)
    v0, params = KNOWN[(kind, d, q)]
    assert len(sp.isotropic_points()) == v0
    assert tuple(sp.srg_params()) == params
    assert sp.name == NAMES[(kind, d, q)]


@pytest.mark.parametrize("kind,d,q", [("sp", 3, 2), ("o-plus", 3, 2),
                                      ("o-minus", 3, 2), ("sp", 2, 3),
                                      ("u-even", 2, 4)])
def test_graph_matches_formula(kind, d, q, space_of):
    # dual route: exhaustive scan of the built graph vs the closed form
    sp = space_of(kind, d, q)
    assert tuple(sp.collinearity_graph().srg_check()) == tuple(sp.srg_params())


def test_odd_orthogonal_mirrors_symplectic_at_q2(space_of):
    # classical isomorphism O(2d+1, 2^k) ~ Sp(2d, 2^k), visible in the
    # parameters and spectra even though the vertex labels differ
    a, b = space_of("o-odd", 3, 2), space_of("sp", 3, 2)
    assert tuple(a.srg_params()) == tuple(b.srg_params())
    ga, gb = a.collinearity_graph(), b.collinearity_graph()
    assert tuple(ga.srg_check()) == tuple(gb.srg_check())
    assert ga.triangle_spectrum().as_dict() == gb.triangle_spectrum().as_dict()


def test_triangle_codegree_formula(space_of):
    assert space_of("sp", 3, 2).triangle_codegrees() == (4, 12)
    assert space_of("o-minus", 3, 2).triangle_codegrees() == (4, 20)
    assert space_of("sp", 3, 3).triangle_codegrees() == (10, 37)
    # rank 2 has no planes, so a single value survives
    assert len(space_of("sp", 2, 3).triangle_codegrees()) == 1


# ── forms ──────────────────────────────────────────────────────────────────

def test_quad_eval_hand_values():
    # hyperbolic x0x1 + x2x3 + x4x5
    op = polar_create("o-plus", 3, 2)
    assert op.quad_eval((1, 0, 0, 0, 0, 0)) == 0
    assert op.quad_eval((1, 1, 0, 0, 0, 0)) == 1
    assert op.quad_eval((1, 1, 1, 1, 0, 0)) == 0
    # parabolic x0^2 + x1x2 + x3x4 + x5x6
    oo = polar_create("o-odd", 3, 3)
    assert oo.quad_eval((1, 0, 0, 0, 0, 0, 0)) == 1
    assert oo.quad_eval((2, 0, 0, 0, 0, 0, 0)) == 1  # (2^2) mod 3
    assert oo.quad_eval((1, 1, 2, 0, 0, 0, 0)) == 0  # 1 + 2 = 0 mod 3
    # no quadratic form on a symplectic space
    with pytest.raises(OutOfRange):
        polar_create("sp", 2, 2).quad_eval((1, 0, 0, 0))


def test_elliptic_head_is_anisotropic():
    # the leading binary quadratic of the o-minus form never vanishes on a
    # nonzero vector of the first two coordinates
    for q in (2, 3, 4, 5):
        om = polar_create("o-minus", 2, q)
        for a in range(q):
            for b in range(q):
                if a or b:
                    vec = (a, b) + (0,) * (om.n - 2)
                    assert om.quad_eval(vec) != 0, (q, a, b)


def test_form_eval_symplectic():
    sp = polar_create("sp", 2, 3)
    e = [tuple(1 if j == i else 0 for j in range(4)) for i in range(4)]
    assert sp.form_eval(e[0], e[1]) == 1
    assert sp.form_eval(e[1], e[0]) == 2  # antisymmetric: -1 mod 3
    assert sp.form_eval(e[0], e[2]) == 0
    assert all(sp.form_eval(v, v) == 0 for v in e)  # alternating


def test_form_eval_hermitian_conjugate_symmetry():
    u = polar_create("u-even", 2, 4)
    f4 = field_create(2, 2)
    pts = [p.rep for p in u.isotropic_points()[:12]]
    for x in pts:
        for y in pts:
            lhs = u.form_eval(x, y)
            rhs = u.form_eval(y, x)
            assert lhs == f4.conj_c(rhs)


def test_polarization_of_quadratic_form():
    # B(x, y) = Q(x + y) - Q(x) - Q(y), the defining identity
    om = polar_create("o-minus", 2, 3)
    pts = [p.rep for p in om.isotropic_points()]
    for x in pts[:8]:
        for y in pts[:8]:
            s = tuple((a + b) % 3 for a, b in zip(x, y))
            lhs = om.form_eval(x, y)
            rhs = (om.quad_eval(s) - om.quad_eval(x) - om.quad_eval(y)) % 3
            assert lhs == rhs


# ── perp and isotropy ──────────────────────────────────────────────────────

@pytest.mark.parametrize("kind,d,q", [("sp", 2, 2), ("sp", 2, 3),
                                      ("o-plus", 2, 2), ("o-minus", 2, 2),
                                      ("o-odd", 2, 3), ("u-even", 2, 4)])
def test_perp_duality(kind, d, q, space_of):
    sp = space_of(kind, d, q)
    for p in sp.isotropic_points():
        s = Subspace.from_vectors(sp.field, sp.n, [p.rep])
        pp = sp.perp(s)
        assert pp.dim == sp.n - 1
        assert sp.perp(pp) == s  # double perp, the form is nondegenerate
        assert pp.contains_vector(p.rep)  # singular points are self-perp


def test_perp_contains_exactly_the_orthogonal_points(space_of):
    sp = space_of("sp", 2, 3)
    pts = sp.isotropic_points()
    s = Subspace.from_vectors(sp.field, sp.n, [pts[0].rep])
    pp = sp.perp(s)
    for p in pts:
        assert pp.contains_vector(p.rep) == (sp.form_eval(pts[0].rep, p.rep) == 0)


@pytest.mark.parametrize("kind,d,q", [("sp", 2, 2), ("o-minus", 2, 2),
                                      ("u-even", 2, 4), ("sp", 2, 3)])
def test_is_isotropic_brute_force(kind, d, q, space_of):
    # a subspace is totally singular iff every point is singular and every
    # pair of points is orthogonal; compare the library answer against
    # that definition, point by point, over all lines of the ambient space
    sp = space_of(kind, d, q)
    singular = {p.rep for p in sp.isotropic_points()}
    full = Subspace.full(sp.field, sp.n)
    for line in subspaces_of(full, 2):
        pts = [p.rep for p in points_of(line)]
        brute = all(r in singular for r in pts) and all(
            sp.form_eval(x, y) == 0 for x in pts for y in pts)
        assert sp.is_isotropic(line) == brute, line.basis


def test_is_isotropic_vector_matches_enumeration(space_of):
    sp = space_of("o-minus", 2, 2)
    singular = {p.rep for p in sp.isotropic_points()}
    full = Subspace.full(sp.field, sp.n)
    for pt in points_of(full):
        assert sp.is_isotropic_vector(pt.rep) == (pt.rep in singular)


# ── generators ─────────────────────────────────────────────────────────────

GEN_COUNTS = {  # prod_{i<d} (1 + q_e q^i), worked out by hand
    ("sp", 2, 2): 15,
    ("o-plus", 2, 2): 6,
    ("o-minus", 2, 2): 45,
    ("sp", 3, 2): 135,
    ("o-plus", 3, 2): 30,
    ("u-even", 2, 4): 27,
}


@pytest.mark.parametrize("kind,d,q", sorted(GEN_COUNTS))
def test_all_generators(kind, d, q, space_of):
    sp = space_of(kind, d, q)
    gens = sp.all_generators()
    assert sp.num_generators() == GEN_COUNTS[(kind, d, q)]
    assert len(gens) == sp.num_generators()
    assert len(set(gens)) == len(gens)
    for g in gens[:20]:
        assert g.dim == sp.d
        assert sp.is_isotropic(g)


def test_generators_through_line(space_of):
    sp = space_of("sp", 3, 2)
    base = sp.canonical_base()
    assert base.dim == 2 and sp.is_isotropic(base)
    gens = sp.generators_through(base)
    assert len(gens) == sp.q_e + 1 == 3
    for g in gens:
        assert g.dim == 3 and g.contains(base) and sp.is_isotropic(g)
    # a generator extends only to itself
    assert sp.generators_through(gens[0]) == [gens[0]]


def test_generators_through_guards(space_of):
    sp = space_of("sp", 2, 2)
    bad = Subspace.from_vectors(sp.field, 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert not sp.is_isotropic(bad)
    with pytest.raises(NotIsotropic):
        sp.generators_through(bad)


def test_canonical_base_is_deterministic():
    a = polar_create("o-minus", 3, 2).canonical_base()
    b = polar_create("o-minus", 3, 2).canonical_base()
    assert a == b
    assert a.dim == 2


def test_quotient_counts(space_of):
    sp = space_of("sp", 3, 2)
    pt = Subspace.from_vectors(sp.field, sp.n,
                               [sp.isotropic_points()[0].rep])
    summary = polar.quotient_polar(sp, pt)
    assert summary.rank == 2
    assert summary.num_points == 15  # Sp(4,2)
    om = space_of("o-minus", 3, 2)
    pt = Subspace.from_vectors(om.field, om.n,
                               [om.isotropic_points()[0].rep])
    assert polar.quotient_polar(om, pt).num_points == 27  # O-(6,2)


# ── q_e per family and guards ──────────────────────────────────────────────

def test_qe_by_family():
    assert polar_create("o-plus", 2, 3).q_e == 1
    assert polar_create("sp", 2, 3).q_e == 3
    assert polar_create("o-odd", 2, 3).q_e == 3
    assert polar_create("o-minus", 2, 3).q_e == 9
    assert polar_create("u-even", 2, 4).q_e == 2
    assert polar_create("u-odd", 2, 4).q_e == 8


def test_ambient_dimensions():
    assert polar_create("sp", 3, 2).n == 6
    assert polar_create("o-plus", 3, 2).n == 6
    assert polar_create("o-odd", 3, 2).n == 7
    assert polar_create("o-minus", 3, 2).n == 8
    assert polar_create("u-even", 3, 4).n == 6
    assert polar_create("u-odd", 3, 4).n == 7


def test_creation_guards():
    with pytest.raises(NotSquareOrder):
        polar_create("u-even", 2, 2)
    with pytest.raises(NotSquareOrder):
        polar_create("u-odd", 2, 3)
    with pytest.raises(BadDimension):
        polar_create("sp", 0, 2)
    with pytest.raises(OutOfRange):
        polar_create("nope", 2, 2)
    with pytest.raises(BadDimension):
        polar_create("sp", 1, 2).srg_params()


def test_build_guards():
    # closed-form count blocks enumeration before any allocation
    with pytest.raises(TooLarge):
        polar_create("sp", 11, 2).isotropic_points()
    # points fit, the dense graph would not
    big = polar_create("sp", 8, 2)
    assert len(big.isotropic_points()) == 65535
    with pytest.raises(TooLarge):
        big.collinearity_graph()


def test_kind_enum_round_trip():
    assert polar_create(PolarKind.SYMPLECTIC, 2, 2).kind is PolarKind.SYMPLECTIC
    for alias in ("sp", "o-plus", "o-odd", "o-minus", "u-even", "u-odd"):
        assert polar_create(alias, 2, 4).kind.value == alias
