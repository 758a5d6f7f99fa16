"""Bound quiver algebras and their finite-dimensional representations.

Composition convention: the product q*p means "first p, then q", so an
arrow a: u -> v satisfies a = e_v * a * e_u.  Paths are stored in
traversal order: the tuple (a1, ..., ak) is the algebra element
ak * ... * a1, with source src(a1) and target tgt(ak).

Left modules carry one matrix per arrow mapping the source vertex space
to the target vertex space; right modules map the target space to the
source space (right action by a sends M e_v into M e_u for a: u -> v).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactla import (
    Field,
    Matrix,
    ShapeMismatch,
    Subspace,
    solve_matrix,
    vstack,
)

LEFT = "left"
RIGHT = "right"

# A path is (source_vertex, tuple_of_arrow_names_in_traversal_order).
Path = Tuple[str, Tuple[str, ...]]


class AlgebraError(ValueError):
    """Malformed quiver, relation, or representation data."""


class NotFiniteDimensional(AlgebraError):
    """Nonzero path classes survive at the nilpotency bound."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """Finite quiver with named vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow]):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        self.arrows: Tuple[Arrow, ...] = tuple(arrows)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise AlgebraError(f"arrow {a.name} touches unknown vertex")
        self.arrow_by_name: Dict[str, Arrow] = {a.name: a for a in self.arrows}
        self._from: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        self._to: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._from[a.source].append(a)
            self._to[a.target].append(a)

    def arrows_from(self, v: str) -> List[Arrow]:
        return self._from[v]

    def arrows_to(self, v: str) -> List[Arrow]:
        return self._to[v]

    def is_acyclic(self) -> bool:
        color: Dict[str, int] = {v: 0 for v in self.vertices}

        def visit(v: str) -> bool:
            color[v] = 1
            for a in self._from[v]:
                if color[a.target] == 1:
                    return False
                if color[a.target] == 0 and not visit(a.target):
                    return False
            color[v] = 2
            return True

        return all(color[v] != 0 or visit(v) for v in self.vertices)

    def opposite(self) -> "Quiver":
        return Quiver(
            self.vertices,
            [Arrow(a.name, a.target, a.source) for a in self.arrows],
        )


class Relation:
    """Linear combination of parallel paths of length >= 2."""

    def __init__(self, terms: Sequence[Tuple[object, Sequence[str]]]):
        self.terms: Tuple[Tuple[object, Tuple[str, ...]], ...] = tuple(
            (c, tuple(p)) for c, p in terms
        )
        if not self.terms:
            raise AlgebraError("empty relation")

    def __repr__(self) -> str:
        return "Relation(" + " + ".join(f"{c}*{list(p)}" for c, p in self.terms) + ")"


def _path_target(quiver: Quiver, path: Path) -> str:
    src, arrows = path
    return quiver.arrow_by_name[arrows[-1]].target if arrows else src


class BoundQuiverAlgebra:
    """Quotient of a path algebra by an admissible relation ideal.

    The constructor enumerates all paths up to nilpotency_bound, spans
    the relation ideal degree by degree inside the truncated path
    algebra, and certifies finite dimension by checking that every path
    class of length nilpotency_bound vanishes.  Callers must pick a
    bound at least as large as the actual nilpotency degree of the
    arrow ideal, or NotFiniteDimensional is raised.
    """

    def __init__(
        self,
        quiver: Quiver,
        relations: Sequence[Relation],
        field: Field,
        nilpotency_bound: int,
    ):
        if nilpotency_bound < 1:
            raise AlgebraError("nilpotency bound must be at least 1")
        self.quiver = quiver
        self.field = field
        self.nilpotency_bound = int(nilpotency_bound)
        self.relations = tuple(self._validate_relation(r) for r in relations)
        self._build_basis()
        self._cache: Dict[object, object] = {}
        self._opposite: Optional[BoundQuiverAlgebra] = None

    # -- construction ---------------------------------------------------

    def _validate_relation(self, rel: Relation) -> Relation:
        terms = []
        st = None
        for coeff, arrows in rel.terms:
            if len(arrows) < 2:
                raise AlgebraError("relation paths must have length >= 2")
            if len(arrows) > self.nilpotency_bound:
                raise AlgebraError(
                    "relation path longer than the nilpotency bound"
                )
            for name in arrows:
                if name not in self.quiver.arrow_by_name:
                    raise AlgebraError(f"relation uses unknown arrow {name!r}")
            for x, y in zip(arrows, arrows[1:]):
                if self.quiver.arrow_by_name[x].target != self.quiver.arrow_by_name[y].source:
                    raise AlgebraError(f"non-composable relation path {list(arrows)}")
            s = self.quiver.arrow_by_name[arrows[0]].source
            t = self.quiver.arrow_by_name[arrows[-1]].target
            if st is None:
                st = (s, t)
            elif st != (s, t):
                raise AlgebraError("relation terms are not parallel")
            c = self.field.coerce(coeff)
            if c != self.field.zero():
                terms.append((c, tuple(arrows)))
        if not terms:
            raise AlgebraError("relation is identically zero")
        return Relation(terms)

    def _build_basis(self):
        q = self.quiver
        bound = self.nilpotency_bound
        # enumerate composable paths of length 0..bound
        by_len: List[List[Path]] = [[(v, ()) for v in q.vertices]]
        for ell in range(1, bound + 1):
            layer: List[Path] = []
            for path in by_len[ell - 1]:
                tgt = _path_target(q, path)
                for a in q.arrows_from(tgt):
                    layer.append((path[0], path[1] + (a.name,)))
            by_len.append(layer)

        all_paths: List[Path] = [p for layer in by_len for p in layer]
        enum_order = {p: i for i, p in enumerate(all_paths)}
        blocks: Dict[Tuple[str, str], List[Path]] = {}
        for p in all_paths:
            blocks.setdefault((p[0], _path_target(q, p)), []).append(p)

        # span the relation ideal inside the length-truncated path algebra
        ideal_rows: Dict[Tuple[str, str], List[Dict[Path, object]]] = {}
        for rel in self.relations:
            s = q.arrow_by_name[rel.terms[0][1][0]].source
            t = q.arrow_by_name[rel.terms[0][1][-1]].target
            min_len = min(len(p) for _, p in rel.terms)
            lefts = [p for p in all_paths if _path_target(q, p) == s]
            rights = [p for p in all_paths if p[0] == t]
            for mu in lefts:
                for lam in rights:
                    extra = len(mu[1]) + len(lam[1])
                    if extra + min_len > bound:
                        continue
                    row: Dict[Path, object] = {}
                    for coeff, arrows in rel.terms:
                        if extra + len(arrows) > bound:
                            continue  # dies in the truncation
                        key: Path = (mu[0], mu[1] + arrows + lam[1])
                        row[key] = self.field.add(row.get(key, self.field.zero()), coeff)
                    if any(c != 0 for c in row.values()):
                        block = (mu[0], _path_target(q, lam))
                        ideal_rows.setdefault(block, []).append(row)

        basis: List[Path] = []
        expansions: Dict[Path, List[Tuple[object, Path]]] = {}
        survivors_at_bound = []
        for block, paths in sorted(blocks.items()):
            paths = sorted(paths, key=lambda p: (len(p[1]), enum_order[p]))
            col_of = {p: j for j, p in enumerate(paths)}
            rows = ideal_rows.get(block, [])
            if rows:
                mat = Matrix.zeros(self.field, len(rows), len(paths)).data.copy()
                for i, row in enumerate(rows):
                    for p, c in row.items():
                        mat[i, col_of[p]] = c
                from .exactla import rref

                r, nrank, pivots = rref(Matrix(self.field, mat, _trusted=True))
                pivot_set = set(pivots)
                nonpivot = [j for j in range(len(paths)) if j not in pivot_set]
                for i, pc in enumerate(pivots):
                    exp = []
                    for j in nonpivot:
                        c = r.data[i, j]
                        if c != 0:
                            exp.append((self.field.neg(c), paths[j]))
                    expansions[paths[pc]] = exp
                block_basis = [paths[j] for j in nonpivot]
            else:
                block_basis = paths
            for p in block_basis:
                if len(p[1]) >= bound:
                    survivors_at_bound.append(p)
            basis.extend(block_basis)

        if survivors_at_bound:
            raise NotFiniteDimensional(
                f"{len(survivors_at_bound)} path classes survive at length "
                f"{bound}; raise the nilpotency bound or fix the relations"
            )

        basis.sort(key=lambda p: (len(p[1]), enum_order[p]))
        self.basis: Tuple[Path, ...] = tuple(basis)
        self.basis_index: Dict[Path, int] = {p: i for i, p in enumerate(basis)}
        self._expansions = expansions
        self.basis_by_block: Dict[Tuple[str, str], List[int]] = {}
        for i, p in enumerate(basis):
            block = (p[0], _path_target(q, p))
            self.basis_by_block.setdefault(block, []).append(i)

    # -- structure ------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def path_target(self, path: Path) -> str:
        return _path_target(self.quiver, path)

    def block_basis(self, source: str, target: str) -> List[Path]:
        return [self.basis[i] for i in self.basis_by_block.get((source, target), [])]

    def normal_form(self, path: Path) -> List[Tuple[object, Path]]:
        """Expand a monomial path into basis classes (empty list = zero)."""
        if len(path[1]) > self.nilpotency_bound:
            return []
        if path in self.basis_index:
            return [(self.field.one(), path)]
        if path in self._expansions:
            return list(self._expansions[path])
        raise AlgebraError(f"path {path} is not composable in this quiver")

    def opposite(self) -> "BoundQuiverAlgebra":
        """Opposite algebra; an involution up to object identity."""
        if self._opposite is None:
            rels = [
                Relation([(c, tuple(reversed(p))) for c, p in r.terms])
                for r in self.relations
            ]
            opp = BoundQuiverAlgebra(
                self.quiver.opposite(), rels, self.field, self.nilpotency_bound
            )
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    def is_hereditary(self) -> bool:
        return self.quiver.is_acyclic() and not self.relations

    def __repr__(self) -> str:
        return (
            f"BoundQuiverAlgebra({len(self.quiver.vertices)} vertices, "
            f"{len(self.quiver.arrows)} arrows, dim {self.dim} over {self.field})"
        )


def build_algebra(
    quiver: Quiver,
    relations: Sequence[Relation],
    field: Field,
    nilpotency_bound: int,
) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(quiver, relations, field, nilpotency_bound)


# -- representations ------------------------------------------------------


class Representation:
    """Finite-dimensional left or right module, given vertexwise.

    dims maps each vertex to its dimension; arrow_maps[a] is the matrix
    of the action of arrow a (source-to-target space for left modules,
    target-to-source for right ones).  Relations are checked at
    construction.
    """

    __slots__ = ("algebra", "side", "dims", "arrow_maps")

    def __init__(
        self,
        algebra: BoundQuiverAlgebra,
        side: str,
        dims: Dict[str, int],
        arrow_maps: Dict[str, Matrix],
        _trusted: bool = False,
    ):
        if side not in (LEFT, RIGHT):
            raise AlgebraError(f"side must be left or right, got {side!r}")
        self.algebra = algebra
        self.side = side
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.quiver.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise AlgebraError("negative dimension")
        maps = {}
        for a in algebra.quiver.arrows:
            m = arrow_maps.get(a.name)
            rshape = self._arrow_shape(a)
            if m is None:
                m = Matrix.zeros(algebra.field, *rshape)
            if m.shape != rshape:
                raise AlgebraError(
                    f"arrow {a.name}: expected shape {rshape}, got {m.shape}"
                )
            if m.field != algebra.field:
                raise AlgebraError(f"arrow {a.name}: field mismatch")
            maps[a.name] = m
        self.arrow_maps = maps
        if not _trusted:
            self._check_relations()

    def _arrow_shape(self, a: Arrow) -> Tuple[int, int]:
        if self.side == LEFT:
            return (self.dims[a.target], self.dims[a.source])
        return (self.dims[a.source], self.dims[a.target])

    def _check_relations(self):
        for rel in self.algebra.relations:
            acc = None
            for coeff, arrows in rel.terms:
                src = self.algebra.quiver.arrow_by_name[arrows[0]].source
                term = self.path_map((src, arrows)).scale(coeff)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                raise AlgebraError(f"representation violates relation {rel}")

    def arrow_matrix(self, name: str) -> Matrix:
        return self.arrow_maps[name]

    def path_map(self, path: Path) -> Matrix:
        """Action of a monomial path.

        Left side: maps the source vertex space to the target one.
        Right side: maps the target vertex space to the source one.
        """
        src, arrows = path
        if not arrows:
            return Matrix.identity(self.algebra.field, self.dims[src])
        mats = [self.arrow_maps[name] for name in arrows]
        if self.side == LEFT:
            acc = mats[0]
            for m in mats[1:]:
                acc = m @ acc
        else:
            acc = mats[-1]
            for m in reversed(mats[:-1]):
                acc = m @ acc
        return acc

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.algebra.quiver.vertices

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Representation)
            and self.algebra is other.algebra
            and self.side == other.side
            and self.dims == other.dims
            and all(self.arrow_maps[a] == other.arrow_maps[a] for a in self.arrow_maps)
        )

    def __repr__(self) -> str:
        return f"Representation({self.side}, dims {self.dim_vector()})"


def zero_module(algebra: BoundQuiverAlgebra, side: str) -> Representation:
    return Representation(algebra, side, {}, {}, _trusted=True)


class ModuleMap:
    """Vertexwise linear map between two same-side representations.

    The intertwiner equations against every arrow are checked at
    construction.
    """

    __slots__ = ("domain", "codomain", "vertex_maps")

    def __init__(
        self,
        domain: Representation,
        codomain: Representation,
        vertex_maps: Dict[str, Matrix],
        _trusted: bool = False,
    ):
        if domain.algebra is not codomain.algebra or domain.side != codomain.side:
            raise AlgebraError("module map needs matching algebra and side")
        self.domain = domain
        self.codomain = codomain
        maps = {}
        for v in domain.vertices:
            m = vertex_maps.get(v)
            shape = (codomain.dims[v], domain.dims[v])
            if m is None:
                m = Matrix.zeros(domain.algebra.field, *shape)
            if m.shape != shape:
                raise AlgebraError(f"vertex {v}: expected shape {shape}, got {m.shape}")
            maps[v] = m
        self.vertex_maps = maps
        if not _trusted:
            self._check_intertwiner()

    def _check_intertwiner(self):
        left = self.domain.side == LEFT
        for a in self.domain.algebra.quiver.arrows:
            x, y = (a.source, a.target) if left else (a.target, a.source)
            lhs = self.vertex_maps[y] @ self.domain.arrow_maps[a.name]
            rhs = self.codomain.arrow_maps[a.name] @ self.vertex_maps[x]
            if lhs != rhs:
                raise AlgebraError(f"map fails the intertwiner equation at arrow {a.name}")

    @classmethod
    def identity(cls, m: Representation) -> "ModuleMap":
        return cls(
            m,
            m,
            {v: Matrix.identity(m.algebra.field, m.dims[v]) for v in m.vertices},
            _trusted=True,
        )

    @classmethod
    def zero(cls, domain: Representation, codomain: Representation) -> "ModuleMap":
        return cls(domain, codomain, {}, _trusted=True)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition self after other (matches matrix convention)."""
        if other.codomain is not self.domain and other.codomain != self.domain:
            raise AlgebraError("composition domain mismatch")
        return ModuleMap(
            other.domain,
            self.codomain,
            {v: self.vertex_maps[v] @ other.vertex_maps[v] for v in self.domain.vertices},
            _trusted=True,
        )

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(
            self.domain,
            self.codomain,
            {v: self.vertex_maps[v] + other.vertex_maps[v] for v in self.domain.vertices},
            _trusted=True,
        )

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(
            self.domain,
            self.codomain,
            {v: self.vertex_maps[v] - other.vertex_maps[v] for v in self.domain.vertices},
            _trusted=True,
        )

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(
            self.domain,
            self.codomain,
            {v: self.vertex_maps[v].scale(c) for v in self.domain.vertices},
            _trusted=True,
        )

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(
            self.domain,
            self.codomain,
            {v: -self.vertex_maps[v] for v in self.domain.vertices},
            _trusted=True,
        )

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.vertex_maps.values())

    def is_injective(self) -> bool:
        from .exactla import rank

        return all(
            rank(self.vertex_maps[v]) == self.domain.dims[v] for v in self.domain.vertices
        )

    def is_surjective(self) -> bool:
        from .exactla import rank

        return all(
            rank(self.vertex_maps[v]) == self.codomain.dims[v] for v in self.domain.vertices
        )

    def is_isomorphism(self) -> bool:
        return (
            self.domain.dim_vector() == self.codomain.dim_vector()
            and self.is_injective()
        )

    def flat(self) -> np.ndarray:
        """Row-major concatenation of all vertex matrices (hom coordinates)."""
        field = self.domain.algebra.field
        parts = [self.vertex_maps[v].data.reshape(-1) for v in self.domain.vertices]
        if not parts:
            return np.empty(0, dtype=field.dtype)
        return np.concatenate(parts)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and all(self.vertex_maps[v] == other.vertex_maps[v] for v in self.vertex_maps)
        )

    def __repr__(self) -> str:
        return f"ModuleMap({self.domain.dim_vector()} -> {self.codomain.dim_vector()})"


def hom_flat_dim(domain: Representation, codomain: Representation) -> int:
    return sum(codomain.dims[v] * domain.dims[v] for v in domain.vertices)


def map_from_flat(
    domain: Representation, codomain: Representation, vec: np.ndarray, _trusted: bool = True
) -> ModuleMap:
    field = domain.algebra.field
    maps = {}
    off = 0
    for v in domain.vertices:
        r, c = codomain.dims[v], domain.dims[v]
        block = np.array(vec[off : off + r * c]).reshape(r, c)
        maps[v] = Matrix(field, field.normalize(block), _trusted=True)
        off += r * c
    return ModuleMap(domain, codomain, maps, _trusted=_trusted)


# -- submodules and quotients ---------------------------------------------


class SubRep:
    """Vertexwise subspaces of a parent representation, arrow-invariant."""

    __slots__ = ("parent", "subspaces", "_rep", "_inclusion")

    def __init__(self, parent: Representation, subspaces: Dict[str, Subspace]):
        self.parent = parent
        field = parent.algebra.field
        self.subspaces = {
            v: subspaces.get(v, Subspace.zero(field, parent.dims[v]))
            for v in parent.vertices
        }
        for v, s in self.subspaces.items():
            if s.ambient_dim != parent.dims[v]:
                raise AlgebraError(f"subspace at {v} has wrong ambient dimension")
        self._rep = None
        self._inclusion = None

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.subspaces.values())

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.subspaces[v].dim for v in self.parent.vertices)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.parent.total_dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubRep)
            and self.parent == other.parent
            and all(self.subspaces[v] == other.subspaces[v] for v in self.subspaces)
        )

    def materialize(self) -> Tuple[Representation, ModuleMap]:
        if self._rep is None:
            self._rep, self._inclusion = sub_to_rep(self.parent, self.subspaces)
        return self._rep, self._inclusion

    @property
    def rep(self) -> Representation:
        return self.materialize()[0]

    @property
    def inclusion(self) -> ModuleMap:
        return self.materialize()[1]

    def __repr__(self) -> str:
        return f"SubRep(dims {self.dim_vector()} of {self.parent.dim_vector()})"


def sub_to_rep(
    m: Representation, subspaces: Dict[str, Subspace]
) -> Tuple[Representation, ModuleMap]:
    """Realize arrow-invariant vertexwise subspaces as a representation.

    Raises if the subspaces are not invariant under the arrow action.
    """
    field = m.algebra.field
    left = m.side == LEFT
    dims = {v: subspaces[v].dim for v in m.vertices}
    maps = {}
    for a in m.algebra.quiver.arrows:
        x, y = (a.source, a.target) if left else (a.target, a.source)
        bx = subspaces[x].basis
        by = subspaces[y].basis
        image = m.arrow_maps[a.name] @ bx.transpose()
        sol = solve_matrix(by.transpose(), image)
        if sol is None:
            raise AlgebraError(f"subspaces not invariant under arrow {a.name}")
        maps[a.name] = sol
    rep = Representation(m.algebra, m.side, dims, maps, _trusted=True)
    incl = ModuleMap(
        rep, m, {v: subspaces[v].basis.transpose() for v in m.vertices}, _trusted=True
    )
    return rep, incl


def quotient_rep(
    m: Representation, subspaces: Dict[str, Subspace]
) -> Tuple[Representation, ModuleMap]:
    """Quotient by arrow-invariant vertexwise subspaces, with the projection."""
    left = m.side == LEFT
    quots = {v: subspaces[v].quotient() for v in m.vertices}
    dims = {v: quots[v].dim for v in m.vertices}
    maps = {}
    for a in m.algebra.quiver.arrows:
        x, y = (a.source, a.target) if left else (a.target, a.source)
        induced = quots[y].projection @ m.arrow_maps[a.name] @ quots[x].section
        if induced @ quots[x].projection != quots[y].projection @ m.arrow_maps[a.name]:
            raise AlgebraError(f"subspaces not invariant under arrow {a.name}")
        maps[a.name] = induced
    rep = Representation(m.algebra, m.side, dims, maps, _trusted=True)
    proj = ModuleMap(m, rep, {v: quots[v].projection for v in m.vertices}, _trusted=True)
    return rep, proj


# -- canonical submodules ---------------------------------------------------


def radical_subspaces(m: Representation) -> Dict[str, Subspace]:
    """Image of the arrow action: the Jacobson radical of the module."""
    field = m.algebra.field
    left = m.side == LEFT
    rows: Dict[str, List[Matrix]] = {v: [] for v in m.vertices}
    for a in m.algebra.quiver.arrows:
        y = a.target if left else a.source
        rows[y].append(m.arrow_maps[a.name].transpose())
    return {
        v: Subspace(field, m.dims[v], vstack(field, rows[v], cols=m.dims[v]))
        for v in m.vertices
    }


def socle_subspaces(m: Representation) -> Dict[str, Subspace]:
    """Joint kernel of the arrow action: the socle."""
    from .exactla import kernel_basis

    field = m.algebra.field
    left = m.side == LEFT
    out: Dict[str, Subspace] = {}
    for v in m.vertices:
        mats = []
        for a in m.algebra.quiver.arrows:
            x = a.source if left else a.target
            if x == v:
                mats.append(m.arrow_maps[a.name])
        if not mats:
            out[v] = Subspace.full(field, m.dims[v])
        else:
            stacked = vstack(field, mats, cols=m.dims[v])
            out[v] = Subspace(field, m.dims[v], kernel_basis(stacked))
    return out


@dataclass
class RadicalTopSocle:
    radical: SubRep
    top: Representation
    top_projection: ModuleMap
    socle: SubRep


def radical_top_socle(m: Representation) -> RadicalTopSocle:
    rad = SubRep(m, radical_subspaces(m))
    top, proj = quotient_rep(m, rad.subspaces)
    soc = SubRep(m, socle_subspaces(m))
    return RadicalTopSocle(rad, top, proj, soc)


# -- duals and side changes -------------------------------------------------


def dual_module(m: Representation) -> Representation:
    """Vector-space dual, a module on the other side with transposed maps."""
    side = RIGHT if m.side == LEFT else LEFT
    maps = {a: mat.transpose() for a, mat in m.arrow_maps.items()}
    return Representation(m.algebra, side, dict(m.dims), maps, _trusted=True)


def dual_map(f: ModuleMap) -> ModuleMap:
    """Dual of a map: reverses direction, transposes vertex matrices."""
    return ModuleMap(
        dual_module(f.codomain),
        dual_module(f.domain),
        {v: mat.transpose() for v, mat in f.vertex_maps.items()},
        _trusted=True,
    )


def to_opposite(m: Representation) -> Representation:
    """Reinterpret a right module as a left module over the opposite algebra
    (and vice versa).  The matrices are reused unchanged."""
    side = LEFT if m.side == RIGHT else RIGHT
    return Representation(m.algebra.opposite(), side, dict(m.dims), dict(m.arrow_maps),
                          _trusted=True)


# -- direct sums ------------------------------------------------------------


@dataclass
class DirectSum:
    module: Representation
    injections: List[ModuleMap]
    projections: List[ModuleMap]


def direct_sum(mods: Sequence[Representation]) -> DirectSum:
    if not mods:
        raise AlgebraError("direct sum of nothing needs an algebra; use zero_module")
    alg = mods[0].algebra
    side = mods[0].side
    field = alg.field
    for m in mods:
        if m.algebra is not alg or m.side != side:
            raise AlgebraError("direct sum needs matching algebra and side")
    dims = {v: sum(m.dims[v] for m in mods) for v in alg.quiver.vertices}
    maps = {}
    from .exactla import block_diag

    for a in alg.quiver.arrows:
        maps[a.name] = block_diag(field, [m.arrow_maps[a.name] for m in mods])
    total = Representation(alg, side, dims, maps, _trusted=True)
    injections, projections = [], []
    offsets = {v: 0 for v in alg.quiver.vertices}
    for m in mods:
        inj, proj = {}, {}
        for v in alg.quiver.vertices:
            block = Matrix.zeros(field, dims[v], m.dims[v]).data.copy()
            off = offsets[v]
            for i in range(m.dims[v]):
                block[off + i, i] = field.one()
            inj[v] = Matrix(field, block, _trusted=True)
            proj[v] = inj[v].transpose()
        injections.append(ModuleMap(m, total, inj, _trusted=True))
        projections.append(ModuleMap(total, m, proj, _trusted=True))
        for v in alg.quiver.vertices:
            offsets[v] += m.dims[v]
    return DirectSum(total, injections, projections)


# -- canonical modules -------------------------------------------------------


def simple(algebra: BoundQuiverAlgebra, v: str, side: str = LEFT) -> Representation:
    key = ("simple", v, side)
    if key not in algebra._cache:
        algebra._cache[key] = Representation(algebra, side, {v: 1}, {}, _trusted=True)
    return algebra._cache[key]


def _projective_with_labels(
    algebra: BoundQuiverAlgebra, v: str, side: str
) -> Tuple[Representation, Dict[str, List[Path]]]:
    """Indecomposable projective at v plus, per vertex, the path classes
    labelling its basis vectors."""
    key = ("proj", v, side)
    if key in algebra._cache:
        return algebra._cache[key]
    q = algebra.quiver
    field = algebra.field
    if side == LEFT:
        labels = {w: algebra.block_basis(v, w) for w in q.vertices}
    else:
        labels = {w: algebra.block_basis(w, v) for w in q.vertices}
    dims = {w: len(labels[w]) for w in q.vertices}
    index = {w: {p: i for i, p in enumerate(labels[w])} for w in q.vertices}
    maps = {}
    for a in q.arrows:
        if side == LEFT:
            # postcomposition: class(pi) in component u goes to class(pi then a)
            x, y = a.source, a.target
            mat = Matrix.zeros(field, dims[y], dims[x]).data.copy()
            for j, p in enumerate(labels[x]):
                for c, bp in algebra.normal_form((p[0], p[1] + (a.name,))):
                    mat[index[y][bp], j] = field.add(mat[index[y][bp], j], c)
        else:
            # precomposition: class(pi) in component w goes to class(a then pi)
            x, y = a.target, a.source
            mat = Matrix.zeros(field, dims[y], dims[x]).data.copy()
            for j, p in enumerate(labels[x]):
                for c, bp in algebra.normal_form((a.source, (a.name,) + p[1])):
                    mat[index[y][bp], j] = field.add(mat[index[y][bp], j], c)
        maps[a.name] = Matrix(field, mat, _trusted=True)
    rep = Representation(algebra, side, dims, maps)
    algebra._cache[key] = (rep, labels)
    return algebra._cache[key]


def indec_projective(algebra: BoundQuiverAlgebra, v: str, side: str = LEFT) -> Representation:
    return _projective_with_labels(algebra, v, side)[0]


def indec_injective(algebra: BoundQuiverAlgebra, v: str, side: str = LEFT) -> Representation:
    key = ("inj", v, side)
    if key not in algebra._cache:
        other = RIGHT if side == LEFT else LEFT
        algebra._cache[key] = dual_module(indec_projective(algebra, v, other))
    return algebra._cache[key]


def regular_decomposition(algebra: BoundQuiverAlgebra, side: str = LEFT) -> DirectSum:
    key = ("regular", side)
    if key not in algebra._cache:
        mods = [indec_projective(algebra, v, side) for v in algebra.quiver.vertices]
        algebra._cache[key] = direct_sum(mods)
    return algebra._cache[key]


def regular_module(algebra: BoundQuiverAlgebra, side: str = LEFT) -> Representation:
    return regular_decomposition(algebra, side).module
