"""Bound quiver algebras shared across the test suite.

Builders are plain functions so tests can also construct throwaway
copies; conftest wraps them in session-scoped pytest fixtures.
"""

from stabhom.algebra import Arrow, BoundQuiverAlgebra, Quiver, Relation
from stabhom.exactla import Field


def a2_algebra(field=None):
    """Path algebra of 1 -> 2, default over F5."""
    field = field or Field.prime(5)
    q = Quiver(["1", "2"], [Arrow("a", "1", "2")])
    return BoundQuiverAlgebra(q, [], field, 4)


def a3_algebra(field=None):
    """Path algebra of 1 -> 2 -> 3, default over F2."""
    field = field or Field.prime(2)
    q = Quiver(
        ["1", "2", "3"],
        [Arrow("a", "1", "2"), Arrow("b", "2", "3")],
    )
    return BoundQuiverAlgebra(q, [], field, 4)


def kronecker_algebra(field=None):
    """Two parallel arrows 1 -> 2, default over F5."""
    field = field or Field.prime(5)
    q = Quiver(
        ["1", "2"],
        [Arrow("a", "1", "2"), Arrow("b", "1", "2")],
    )
    return BoundQuiverAlgebra(q, [], field, 4)


def square_algebra(field=None):
    """Commutative square: ab = cd around 1 -> {2,3} -> 4, default F5."""
    field = field or Field.prime(5)
    q = Quiver(
        ["1", "2", "3", "4"],
        [
            Arrow("a", "1", "2"),
            Arrow("b", "2", "4"),
            Arrow("c", "1", "3"),
            Arrow("d", "3", "4"),
        ],
    )
    rel = Relation(
        [(field.one(), ("a", "b")), (field.neg(field.one()), ("c", "d"))]
    )
    return BoundQuiverAlgebra(q, [rel], field, 5)


def loop2_algebra(field=None):
    """k[x]/(x^2) as a one-loop quiver, default over F2."""
    field = field or Field.prime(2)
    q = Quiver(["v"], [Arrow("x", "v", "v")])
    rel = Relation([(field.one(), ("x", "x"))])
    return BoundQuiverAlgebra(q, [rel], field, 6)


def loop3_algebra(field=None):
    """k[x]/(x^3) as a one-loop quiver, default over F5."""
    field = field or Field.prime(5)
    q = Quiver(["v"], [Arrow("x", "v", "v")])
    rel = Relation([(field.one(), ("x", "x", "x"))])
    return BoundQuiverAlgebra(q, [rel], field, 6)


def nakayama_algebra(field=None):
    """Self-injective Nakayama algebra: oriented 3-cycle with rad^2 = 0."""
    field = field or Field.prime(2)
    q = Quiver(
        ["1", "2", "3"],
        [
            Arrow("x1", "1", "2"),
            Arrow("x2", "2", "3"),
            Arrow("x3", "3", "1"),
        ],
    )
    one = field.one()
    rels = [
        Relation([(one, ("x1", "x2"))]),
        Relation([(one, ("x2", "x3"))]),
        Relation([(one, ("x3", "x1"))]),
    ]
    return BoundQuiverAlgebra(q, rels, field, 6)


BUILDERS = {
    "a2": a2_algebra,
    "a3": a3_algebra,
    "kronecker": kronecker_algebra,
    "square": square_algebra,
    "loop2": loop2_algebra,
    "loop3": loop3_algebra,
    "nakayama": nakayama_algebra,
    "a2_rational": lambda: a2_algebra(Field.rational()),
    "loop2_rational": lambda: loop2_algebra(Field.rational()),
}
