"""Self-maps of P^3 fixing the fibration by lines through [0:0:0:1], and the group G_Q.

For a quartic ``D = A x3^2 + B x3 + C`` with ``A, B, C`` forms of degrees
2, 3, 4 in ``x0, x1, x2``, the lines through ``[0:0:0:1]`` meet ``D`` in the roots of
the binary form ``Q(u, v) = A u^2 + B u v + C v^2``.  Projective transformations of the
fibres preserving ``Q`` up to scalar form the group ``G_Q``.
"""
from __future__ import annotations

from fractions import Fraction

from ..algebra.ops import multidegree
from ..algebra.poly import Poly
from ..algebra.ratfunc import RatFunc
from .maps import MapError, RationalMapSpec

COMPONENT_1 = "component 1"
COMPONENT_2 = "component 2"
NOT_A_MEMBER = "not a member"


def _base_degree(p, ring, label, fibre_var):
    if p.is_zero():
        raise MapError(f"{label} must be nonzero")
    if p.degree_in(fibre_var) > 0:
        raise MapError(f"{label} must not involve {fibre_var}")
    d = multidegree(p)
    if d is None:
        raise MapError(f"{label} is not homogeneous")
    return d[0]


def pell_selfmap(A, B, C, F, G, variant):
    """The self-map of P^3 from the two families fixing the pencil of lines.

    variant 1: ``(A(F x3+G) x_i ; (AG - BF) x3 - CF)``
    variant 2: ``(A(F x3+G) x_i ; -AG x3 + CF - BG)``

    Requires ``deg A, B, C = 2, 3, 4`` and either ``F = 0`` with ``G``
    constant, or ``deg G = deg F + 1``.
    """
    ring = A.ring
    if ring.rank != 1 or ring.n != 4:
        raise MapError("pell_selfmap works on P^3 with variables x0, x1, x2, x3")
    x0, x1, x2, x3 = (Poly.symbol(ring, v) for v in ring.variables)
    fibre = ring.variables[3]
    for p, label, want in ((A, "A", 2), (B, "B", 3), (C, "C", 4)):
        d = _base_degree(p, ring, label, fibre)
        if d != want:
            raise MapError(f"deg {label} must be {want}, got {d}")
    if F.is_zero():
        if not G.is_constant() or G.is_zero():
            raise MapError("with F = 0, G must be a nonzero constant")
    else:
        df = _base_degree(F, ring, "F", fibre)
        dg = _base_degree(G, ring, "G", fibre)
        if dg != df + 1:
            raise MapError(f"deg G must be deg F + 1, got deg F = {df}, deg G = {dg}")
    head = A * (F * x3 + G)
    if variant == 1:
        last = (A * G - B * F) * x3 - C * F
    elif variant == 2:
        last = -(A * G) * x3 + C * F - B * G
    else:
        raise MapError("variant must be 1 or 2")
    return RationalMapSpec.make(ring, ring, [head * x0, head * x1, head * x2, last], f"pell{variant}")


def _rf(x, ring=None):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc.from_poly(x)
    return RatFunc.const(ring, Fraction(x))


def _as_matrix(A, matrix):
    ring = _rf(A).ring
    return [[_rf(x, ring) for x in row] for row in matrix]


def gq_membership(A, B, C, matrix):
    """Which component of ``G_Q`` contains ``((alpha, beta), (gamma, delta))``.

    The matrix acts by ``(u, v) -> (alpha u + beta v, gamma u + delta v)``.
    Component 1 (containing the identity): ``alpha = -(B/A) gamma + delta``,
    ``beta = -(C/A) gamma``.  Component 2: ``alpha = -delta``,
    ``beta = (C/A) gamma - (B/A) delta``.
    """
    A, B, C = _rf(A), _rf(B, _rf(A).ring), _rf(C, _rf(A).ring)
    if A.is_zero():
        raise ValueError("A must be nonzero")
    (al, be), (ga, de) = _as_matrix(A, matrix)
    if (al * de - be * ga).is_zero():
        raise ValueError("degenerate matrix: determinant is zero")
    b, c = B / A, C / A
    if al == -(b * ga) + de and be == -(c * ga):
        return COMPONENT_1
    if al == -de and be == c * ga - b * de:
        return COMPONENT_2
    return NOT_A_MEMBER


def gq_rank_condition(A, B, C, matrix):
    """Oracle: ``Q(phi(u, v))`` is a multiple of ``Q(u, v)``, by direct expansion.

    Compares the coefficient vectors ``(A, B, C)`` and those of ``Q o phi``
    through their 2x2 minors.
    """
    A, B, C = _rf(A), _rf(B, _rf(A).ring), _rf(C, _rf(A).ring)
    (al, be), (ga, de) = _as_matrix(A, matrix)
    q_uu = al * al * A + al * ga * B + ga * ga * C
    q_uv = al * be * A * 2 + (al * de + be * ga) * B + ga * de * C * 2
    q_vv = be * be * A + be * de * B + de * de * C
    rows = [(A, B, C), (q_uu, q_uv, q_vv)]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if not (rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]).is_zero():
            return False
    return True


def pell_identity(A, B, C, u, v):
    """The two sides of ``4A (A u^2 + B u v + C v^2) = w^2 - delta v^2``.

    Here ``w = 2 A u + B v`` and ``delta = B^2 - 4 A C``.
    """
    w = A.scale(2) * u + B * v
    delta = B * B - A.scale(4) * C
    lhs = A.scale(4) * (A * u * u + B * u * v + C * v * v)
    rhs = w * w - delta * v * v
    return lhs, rhs


def pell_solution(delta, t):
    """A point ``(U, V)`` of ``U^2 - delta V^2 = 1`` from the line of slope ``t`` through ``(-1, 0)``."""
    delta, t = _rf(delta), _rf(t, _rf(delta).ring)
    one = RatFunc.const(delta.ring, 1)
    den = one - delta * t * t
    if den.is_zero():
        raise ValueError("degenerate parameter: 1 - delta t^2 vanishes")
    return (one + delta * t * t) / den, t * 2 / den


def pell_matrix(delta, U, V):
    """The element ``((U, delta V), (V, U))`` of the group preserving ``u^2 - delta v^2``."""
    delta = _rf(delta)
    return [[_rf(U, delta.ring), delta * _rf(V, delta.ring)], [_rf(V, delta.ring), _rf(U, delta.ring)]]
