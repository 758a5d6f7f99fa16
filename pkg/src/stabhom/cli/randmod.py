"""Random module and morphism generation for the verification harness.

Vertex dimensions are sampled uniformly in [0, max_dim].  Arrow matrices
are sampled uniformly when the algebra has no relations.  With relations
the sampler tries, in order:

1. linear solve: pick an arrow that no relation term mentions twice,
   sample every other arrow, and solve the relation equations for the
   picked arrow (choosing a uniformly random solution of the affine
   solution set);
2. bounded rejection: resample everything and recheck the relations;
3. projective quotient: quotient a small random sum of indecomposable
   projectives by the submodule generated by random elements.  This
   always succeeds but no longer controls the dimension vector.

Every module records which strategy produced it, and catalogs aggregate
those counts so reports can show the generation statistics.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np

from ..algebra import (
    LEFT,
    AlgebraError,
    BoundQuiverAlgebra,
    ModuleMap,
    Representation,
    SubRep,
    direct_sum,
    indec_projective,
)
from ..exactla import Matrix, Subspace, kernel_basis, solve_matrix
from ..fpfun import CONTRAVARIANT, COVARIANT, FpFunctor, FpMorphism
from ..homology import cokernel_map, hom_basis, hstack_maps, pushout

MAX_REJECTION_TRIES = 60

STRATEGY_DIRECT = "direct"
STRATEGY_LINEAR = "linear_solve"
STRATEGY_REJECTION = "rejection"
STRATEGY_QUOTIENT = "projective_quotient"


def random_matrix(field, rows: int, cols: int, rng) -> Matrix:
    data = [
        [field.random_scalar(rng) for _ in range(cols)] for _ in range(rows)
    ]
    return Matrix.from_rows(field, data) if rows and cols else Matrix.zeros(
        field, rows, cols
    )


def _random_dims(alg: BoundQuiverAlgebra, max_dim: int, rng) -> Dict[str, int]:
    return {v: rng.randrange(max_dim + 1) for v in alg.quiver.vertices}


def _arrow_shape(alg, side, dims, arrow) -> Tuple[int, int]:
    if side == LEFT:
        return dims[arrow.target], dims[arrow.source]
    return dims[arrow.source], dims[arrow.target]


def _random_arrows(alg, side, dims, rng, skip=None):
    maps = {}
    for a in alg.quiver.arrows:
        if skip is not None and a.name == skip:
            continue
        rows, cols = _arrow_shape(alg, side, dims, a)
        maps[a.name] = random_matrix(alg.field, rows, cols, rng)
    return maps


def _solvable_arrow(alg: BoundQuiverAlgebra) -> Optional[str]:
    """First arrow mentioned by some relation but never twice in a term."""
    mentioned = set()
    doubled = set()
    for rel in alg.relations:
        for _, arrows in rel.terms:
            for name in arrows:
                if arrows.count(name) > 1:
                    doubled.add(name)
                else:
                    mentioned.add(name)
    for a in alg.quiver.arrows:
        if a.name in mentioned and a.name not in doubled:
            return a.name
    return None


def _term_product(alg, side, maps, arrows, dims) -> Matrix:
    """Matrix of the path given by arrows, using the supplied arrow maps."""
    first = alg.quiver.arrow_by_name[arrows[0]]
    if side == LEFT:
        acc = Matrix.identity(alg.field, dims[first.source])
        for name in arrows:
            acc = maps[name] @ acc
    else:
        last = alg.quiver.arrow_by_name[arrows[-1]]
        acc = Matrix.identity(alg.field, dims[last.target])
        for name in reversed(arrows):
            acc = maps[name] @ acc
    return acc


def _linear_system(alg, side, dims, maps, target: str):
    """Stacked system A vec(X) = rhs for the target arrow's matrix X.

    Row-major vectorization: vec(L X R) = (L kron R^T) vec(X).  Relations
    not mentioning the target must already hold; returns None when one
    fails so the caller resamples.
    """
    field = alg.field
    tgt_arrow = alg.quiver.arrow_by_name[target]
    x_rows, x_cols = _arrow_shape(alg, side, dims, tgt_arrow)
    blocks = []
    rhs_parts = []
    for rel in alg.relations:
        touches = any(target in arrows for _, arrows in rel.terms)
        if not touches:
            acc = None
            for coeff, arrows in rel.terms:
                term = _term_product(alg, side, maps, arrows, dims).scale(coeff)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                return None, None, (x_rows, x_cols)
            continue
        coef_block = None
        const = None
        for coeff, arrows in rel.terms:
            if target not in arrows:
                term = _term_product(alg, side, maps, arrows, dims).scale(coeff)
                const = term if const is None else const + term
                continue
            pos = arrows.index(target)
            before, after = arrows[:pos], arrows[pos + 1 :]
            # Left modules compose a path a1..ak as M_ak ... M_a1, so the
            # factors after the target multiply on the left.
            if side == LEFT:
                left = (
                    _term_product(alg, side, maps, after, dims)
                    if after
                    else Matrix.identity(field, x_rows)
                )
                right = (
                    _term_product(alg, side, maps, before, dims)
                    if before
                    else Matrix.identity(field, x_cols)
                )
            else:
                left = (
                    _term_product(alg, side, maps, before, dims)
                    if before
                    else Matrix.identity(field, x_rows)
                )
                right = (
                    _term_product(alg, side, maps, after, dims)
                    if after
                    else Matrix.identity(field, x_cols)
                )
            kron = Matrix(
                field,
                field.normalize(np.kron(left.data, right.data.T)),
                _trusted=True,
            ).scale(coeff)
            coef_block = kron if coef_block is None else coef_block + kron
        size = coef_block.rows
        blocks.append(coef_block)
        if const is None:
            rhs_parts.extend([field.zero()] * size)
        else:
            rhs_parts.extend((-const).entries())
    if not blocks:
        return None, None, (x_rows, x_cols)
    system = Matrix(
        field,
        field.normalize(np.concatenate([b.data for b in blocks], axis=0)),
        _trusted=True,
    )
    rhs = Matrix(
        field,
        field.normalize(np.array([rhs_parts], dtype=field.dtype).T),
        _trusted=True,
    )
    return system, rhs, (x_rows, x_cols)


def _try_linear_solve(alg, side, dims, rng, target: str):
    maps = _random_arrows(alg, side, dims, rng, skip=target)
    system, rhs, (x_rows, x_cols) = _linear_system(alg, side, dims, maps, target)
    if system is None:
        return None
    particular = solve_matrix(system, rhs)
    if particular is None:
        return None
    free = kernel_basis(system)
    vec = particular.data[:, 0].copy()
    field = alg.field
    for i in range(free.rows):
        c = field.random_scalar(rng)
        vec = field.normalize(vec + c * free.data[i])
    if x_rows * x_cols:
        maps[target] = Matrix(
            field, vec.reshape(x_rows, x_cols).copy(), _trusted=True
        )
    else:
        maps[target] = Matrix.zeros(field, x_rows, x_cols)
    try:
        return Representation(alg, side, dims, maps)
    except AlgebraError:
        return None


def _invariant_span(parent: Representation, vectors) -> Dict[str, Subspace]:
    """Arrow-closure of vertexwise generating vectors inside parent."""
    field = parent.algebra.field
    spans = {
        v: Subspace(
            field,
            parent.dims[v],
            Matrix(
                field,
                np.array(vectors.get(v, []), dtype=field.dtype).reshape(
                    -1, parent.dims[v]
                ),
                _trusted=True,
            )
            if vectors.get(v)
            else None,
        )
        for v in parent.vertices
    }
    changed = True
    while changed:
        changed = False
        for a in parent.algebra.quiver.arrows:
            if parent.side == LEFT:
                src, tgt = a.source, a.target
            else:
                src, tgt = a.target, a.source
            basis = spans[src].basis
            if basis.rows == 0:
                continue
            pushed = parent.arrow_maps[a.name].data @ basis.data.T
            enlarged = spans[tgt] + Subspace(
                field,
                parent.dims[tgt],
                Matrix(field, field.normalize(pushed.T.copy()), _trusted=True),
            )
            if enlarged.dim != spans[tgt].dim:
                spans[tgt] = enlarged
                changed = True
    return spans


def _projective_quotient(alg, side, max_dim, rng) -> Representation:
    vertices = list(alg.quiver.vertices)
    summands = [
        indec_projective(alg, rng.choice(vertices), side)
        for _ in range(rng.randrange(1, 3))
    ]
    parent = direct_sum(summands).module
    field = alg.field
    generators: Dict[str, List] = {v: [] for v in parent.vertices}
    for _ in range(rng.randrange(0, 3)):
        v = rng.choice(vertices)
        if parent.dims[v] == 0:
            continue
        generators[v].append(
            [field.random_scalar(rng) for _ in range(parent.dims[v])]
        )
    spans = _invariant_span(parent, generators)
    sub = SubRep(parent, spans)
    if sub.dim == 0:
        return parent
    quotient, _ = cokernel_map(sub.inclusion)
    return quotient


def random_module(
    alg: BoundQuiverAlgebra, side: str, max_dim: int, rng
) -> Tuple[Representation, str, int]:
    """One random module plus the strategy used and the attempts spent."""
    dims = _random_dims(alg, max_dim, rng)
    if not alg.relations:
        return (
            Representation(alg, side, dims, _random_arrows(alg, side, dims, rng)),
            STRATEGY_DIRECT,
            1,
        )
    target = _solvable_arrow(alg)
    if target is not None:
        for attempt in range(1, MAX_REJECTION_TRIES + 1):
            rep = _try_linear_solve(alg, side, dims, rng, target)
            if rep is not None:
                return rep, STRATEGY_LINEAR, attempt
    for attempt in range(1, MAX_REJECTION_TRIES + 1):
        try:
            rep = Representation(
                alg, side, dims, _random_arrows(alg, side, dims, rng)
            )
            return rep, STRATEGY_REJECTION, attempt
        except AlgebraError:
            continue
    return _projective_quotient(alg, side, max_dim, rng), STRATEGY_QUOTIENT, 1


def random_catalog(
    alg: BoundQuiverAlgebra, side: str, count: int, max_dim: int, rng
) -> Tuple[List[Representation], Dict[str, int]]:
    """count random modules with aggregated generation statistics."""
    stats = {
        STRATEGY_DIRECT: 0,
        STRATEGY_LINEAR: 0,
        STRATEGY_REJECTION: 0,
        STRATEGY_QUOTIENT: 0,
        "attempts": 0,
    }
    modules = []
    for _ in range(count):
        rep, strategy, attempts = random_module(alg, side, max_dim, rng)
        stats[strategy] += 1
        stats["attempts"] += attempts
        modules.append(rep)
    return modules, stats


def random_hom_element(
    a: Representation, b: Representation, rng, hom=None
) -> ModuleMap:
    """Random element of Hom(a, b); the zero map when the space is zero."""
    hom = hom if hom is not None else hom_basis(a, b)
    if hom.dim == 0:
        return ModuleMap.zero(a, b)
    field = a.algebra.field
    coeffs = [field.random_scalar(rng) for _ in range(hom.dim)]
    return hom.element(coeffs)


def random_fp_morphism(
    alg: BoundQuiverAlgebra, side: str, variance: str, max_dim: int, rng
) -> FpMorphism:
    """Random natural transformation between finitely presented functors.

    Covariant: start from a random presentation g and a random map u out
    of its entry module; the pushout of (u, g) supplies a source functor
    and a commuting square by construction.  Contravariant: extend a
    random presentation along a random map into a fresh codomain.
    """
    a = random_module(alg, side, max_dim, rng)[0]
    b = random_module(alg, side, max_dim, rng)[0]
    c = random_module(alg, side, max_dim, rng)[0]
    if variance == COVARIANT:
        g = random_hom_element(a, b, rng)
        u = random_hom_element(a, c, rng)
        _, leg_c, leg_b = pushout(u, g)
        source = FpFunctor(COVARIANT, leg_c)
        target = FpFunctor(COVARIANT, g)
        return FpMorphism(source, target, u, leg_b)
    f = random_hom_element(a, b, rng)
    source = FpFunctor(CONTRAVARIANT, f)
    u = random_hom_element(b, c, rng)
    extra = random_module(alg, side, max_dim, rng)[0]
    r = random_hom_element(extra, c, rng)
    ds_pres = hstack_maps(u @ f, r)
    target = FpFunctor(CONTRAVARIANT, ds_pres)
    v = direct_sum([a, extra]).injections[0]
    return FpMorphism(source, target, u, v)
