"""Stable-module invariants: factoring subspaces, stable Hom quotients,
torsion and cotorsion operators, approximations by projectives and
injectives, finite-presentation certificates, and the sub-stabilized
tensor product with its torsion radical.

Conventions.  The torsion subrepresentation of a module is computed by
three independent routes (evaluation into the double dual, joint reject
of the regular module, kernel of the projective approximation) that are
compared in the test suite rather than inside this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import Matrix, QuotientSpace, Subspace, kernel_basis, rank
from .algebra import (
    LEFT,
    RIGHT,
    AlgebraError,
    ModuleMap,
    Representation,
    SubRep,
    direct_sum,
    indec_injective,
    indec_projective,
    quotient_rep,
    regular_module,
    simple,
    zero_module,
)
from .homology import (
    HomSpace,
    TensorSpace,
    cokernel_map,
    eval_double_dual,
    ext1,
    extend_over,
    hom_basis,
    hstack_maps,
    image_map,
    injective_envelope,
    is_injective_module,
    is_projective,
    kernel_map,
    lift_along,
    projective_cover,
    push_coords,
    tensor,
    tensor_map,
    vstack_maps,
)

MODULO_PROJECTIVES = "modulo_projectives"
MODULO_INJECTIVES = "modulo_injectives"

TORSION_METHODS = ("evaluation", "reject", "approximation")


class ExtensionFailure(AlgebraError):
    """A map to a projective failed to extend over the approximation."""


class LiftFailure(AlgebraError):
    """A map from an injective failed to lift through the approximation."""


class SplitFailure(AlgebraError):
    """A predicted splitting over a hereditary algebra did not materialize."""


class NotHereditary(AlgebraError):
    """The operation requires an acyclic quiver with no relations."""


class VanishingCheckFailed(AlgebraError):
    """A certificate's extension-vanishing condition failed."""


# -- factoring subspaces and stable homs -------------------------------------


def pfactor_subspace(
    a: Representation, b: Representation, hom_ab: Optional[HomSpace] = None
) -> Subspace:
    """Maps a -> b factoring through a projective, inside hom coordinates."""
    if hom_ab is None:
        hom_ab = hom_basis(a, b)
    cover = projective_cover(b)
    hom_ap = hom_basis(a, cover.middle)
    t = push_coords(hom_ap, hom_ab, lambda g: cover.surjection @ g)
    return Subspace(a.algebra.field, hom_ab.dim, t)


def ifactor_subspace(
    a: Representation, b: Representation, hom_ab: Optional[HomSpace] = None
) -> Subspace:
    """Maps a -> b factoring through an injective, inside hom coordinates."""
    if hom_ab is None:
        hom_ab = hom_basis(a, b)
    env = injective_envelope(a)
    hom_ib = hom_basis(env.middle, b)
    t = push_coords(hom_ib, hom_ab, lambda g: g @ env.inclusion)
    return Subspace(a.algebra.field, hom_ab.dim, t)


@dataclass
class StableHom:
    """Hom(a, b) modulo the chosen factoring subspace."""

    flavor: str
    hom: HomSpace
    factor: Subspace
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return self.quotient.dim


def stable_hom(a: Representation, b: Representation, flavor: str) -> StableHom:
    if flavor not in (MODULO_PROJECTIVES, MODULO_INJECTIVES):
        raise ValueError(f"unknown stable hom flavor: {flavor!r}")
    hom = hom_basis(a, b)
    if flavor == MODULO_PROJECTIVES:
        factor = pfactor_subspace(a, b, hom)
    else:
        factor = ifactor_subspace(a, b, hom)
    return StableHom(flavor, hom, factor, factor.quotient())


# -- approximations ------------------------------------------------------------


def extends_to_projectives(gamma: ModuleMap) -> bool:
    """Whether every map from gamma's domain to an indec projective
    extends over gamma (checked by rank of the precomposition map)."""
    a, q = gamma.domain, gamma.codomain
    alg = a.algebra
    for v in a.vertices:
        proj = indec_projective(alg, v, a.side)
        hom_ap = hom_basis(a, proj)
        if hom_ap.dim == 0:
            continue
        hom_qp = hom_basis(q, proj)
        t = push_coords(hom_qp, hom_ap, lambda g: g @ gamma)
        if rank(t) < hom_ap.dim:
            return False
    return True


def lifts_from_injectives(gamma: ModuleMap) -> bool:
    """Whether every map from an indec injective into gamma's codomain
    lifts through gamma (checked by rank of the postcomposition map)."""
    y, a = gamma.domain, gamma.codomain
    alg = a.algebra
    for v in a.vertices:
        inj = indec_injective(alg, v, a.side)
        hom_ia = hom_basis(inj, a)
        if hom_ia.dim == 0:
            continue
        hom_iy = hom_basis(inj, y)
        t = push_coords(hom_iy, hom_ia, lambda g: gamma @ g)
        if rank(t) < hom_ia.dim:
            return False
    return True


def left_proj_approximation(a: Representation, verify: bool = True) -> ModuleMap:
    """The map a -> (regular module)^k collecting a basis of Hom(a, regular).

    With verify on, the extension property (every map to a projective
    extends over the result) is confirmed; its failure would be a bug.
    """
    alg = a.algebra
    field = alg.field
    reg = regular_module(alg, a.side)
    hom = hom_basis(a, reg)
    if hom.dim == 0:
        gamma = ModuleMap.zero(a, zero_module(alg, a.side))
    else:
        ds = direct_sum([reg] * hom.dim)
        maps = {}
        for v in a.vertices:
            cols = [f.vertex_maps[v] for f in hom.basis_maps()]
            stacked = Matrix.zeros(field, reg.dims[v] * hom.dim, a.dims[v]).data.copy()
            for i, mat in enumerate(cols):
                stacked[i * reg.dims[v] : (i + 1) * reg.dims[v], :] = mat.data
            maps[v] = Matrix(field, stacked, _trusted=True)
        gamma = ModuleMap(a, ds.module, maps)
    if verify and not extends_to_projectives(gamma):
        raise ExtensionFailure("projective approximation missed an extension")
    return gamma


def right_inj_approximation(a: Representation, verify: bool = True) -> ModuleMap:
    """The map (sum of indec injectives) -> a collecting bases of every
    Hom(I(v), a); its image is the trace of the injectives in a."""
    alg = a.algebra
    field = alg.field
    summands: List[Representation] = []
    columns: Dict[str, List[Matrix]] = {v: [] for v in a.vertices}
    for v in a.vertices:
        inj = indec_injective(alg, v, a.side)
        hom = hom_basis(inj, a)
        for f in hom.basis_maps():
            summands.append(inj)
            for w in a.vertices:
                columns[w].append(f.vertex_maps[w])
    if not summands:
        gamma = ModuleMap.zero(zero_module(alg, a.side), a)
    else:
        ds = direct_sum(summands)
        maps = {}
        for w in a.vertices:
            block = Matrix.zeros(field, a.dims[w], ds.module.dims[w]).data.copy()
            off = 0
            for mat in columns[w]:
                block[:, off : off + mat.cols] = mat.data
                off += mat.cols
            maps[w] = Matrix(field, block, _trusted=True)
        gamma = ModuleMap(ds.module, a, maps)
    if verify and not lifts_from_injectives(gamma):
        raise LiftFailure("injective approximation missed a lift")
    return gamma


# -- torsion and cotorsion -----------------------------------------------------


def bass_torsion(a: Representation, method: str = "evaluation") -> SubRep:
    """The torsion subrepresentation, by one of three routes.

    evaluation: kernel of the map into the double dual.
    reject: joint kernel of a basis of Hom(a, regular module).
    approximation: kernel of the projective approximation.
    """
    if method not in TORSION_METHODS:
        raise ValueError(f"unknown torsion method: {method!r}")
    if method == "evaluation":
        ev, _, _ = eval_double_dual(a)
        return kernel_map(ev)
    if method == "reject":
        alg = a.algebra
        field = alg.field
        reg = regular_module(alg, a.side)
        hom = hom_basis(a, reg)
        subs = {v: Subspace.full(field, a.dims[v]) for v in a.vertices}
        for f in hom.basis_maps():
            ker = kernel_map(f)
            subs = {v: subs[v].intersect(ker.subspaces[v]) for v in a.vertices}
        return SubRep(a, subs)
    gamma = left_proj_approximation(a, verify=False)
    return kernel_map(gamma)


def torsionless_quotient(
    a: Representation, torsion: Optional[SubRep] = None
) -> Tuple[Representation, ModuleMap]:
    """a modulo its torsion subrepresentation, with the surjection."""
    if torsion is None:
        torsion = bass_torsion(a, "evaluation")
    return quotient_rep(a, torsion.subspaces)


def cotorsion_trace(a: Representation) -> SubRep:
    """The sum of all images of maps from indec injectives into a."""
    alg = a.algebra
    field = alg.field
    subs = {v: Subspace.zero(field, a.dims[v]) for v in a.vertices}
    for v in a.vertices:
        inj = indec_injective(alg, v, a.side)
        for f in hom_basis(inj, a).basis_maps():
            im = image_map(f)
            subs = {w: subs[w] + im.subspaces[w] for w in a.vertices}
    return SubRep(a, subs)


def cotorsion_quotient(
    a: Representation, trace: Optional[SubRep] = None
) -> Tuple[Representation, ModuleMap]:
    """a modulo the trace of the injectives, with the surjection."""
    if trace is None:
        trace = cotorsion_trace(a)
    return quotient_rep(a, trace.subspaces)


# -- finite-presentation certificates -------------------------------------------


@dataclass
class FourTermSequence:
    """An exact sequence 0 -> m0 -> m1 -> m2 -> m3 -> 0."""

    modules: Tuple[Representation, Representation, Representation, Representation]
    maps: Tuple[ModuleMap, ModuleMap, ModuleMap]

    def validate(self) -> bool:
        first, middle, last = self.maps
        if not first.is_injective():
            return False
        if not last.is_surjective():
            return False
        for incoming, outgoing in ((first, middle), (middle, last)):
            ker = kernel_map(outgoing)
            im = image_map(incoming)
            if any(
                ker.subspaces[v] != im.subspaces[v]
                for v in self.modules[0].vertices
            ):
                return False
        return True


@dataclass
class Certificate:
    """Witness that a stable-hom functor is finitely presented.

    covariant_underline stores 0 -> torsion(a) -> a -> Q -> M -> 0 with Q
    projective and Ext^1(M, regular) = 0; contravariant_overline stores
    0 -> N -> I -> a -> cotorsion(a) -> 0 with I injective and
    Ext^1(I(v), N) = 0 for every vertex v.
    """

    kind: str
    sequence: FourTermSequence
    vanishing_check: bool
    ext_witness: Dict[str, int]
    approximation: ModuleMap

    def validate(self) -> bool:
        if not self.sequence.validate():
            return False
        if self.kind == "covariant_underline":
            return is_projective(self.sequence.modules[2])
        return is_injective_module(self.sequence.modules[1])


def fp_certificate(a: Representation, kind: str) -> Certificate:
    alg = a.algebra
    if kind == "covariant_underline":
        gamma = left_proj_approximation(a, verify=True)
        tor = kernel_map(gamma)
        m, mproj = cokernel_map(gamma)
        seq = FourTermSequence(
            (tor.rep, a, gamma.codomain, m), (tor.inclusion, gamma, mproj)
        )
        cover = projective_cover(m)
        witness = {
            v: ext1(m, indec_projective(alg, v, a.side), cover).dim
            for v in a.vertices
        }
        if any(witness.values()):
            raise VanishingCheckFailed(
                f"Ext^1(cokernel, projectives) nonzero: {witness}"
            )
        return Certificate(kind, seq, True, witness, gamma)
    if kind == "contravariant_overline":
        gamma = right_inj_approximation(a, verify=True)
        n = kernel_map(gamma)
        q, qproj = cokernel_map(gamma)
        seq = FourTermSequence(
            (n.rep, gamma.domain, a, q), (n.inclusion, gamma, qproj)
        )
        witness = {
            v: ext1(indec_injective(alg, v, a.side), n.rep).dim
            for v in a.vertices
        }
        if any(witness.values()):
            raise VanishingCheckFailed(
                f"Ext^1(injectives, kernel) nonzero: {witness}"
            )
        return Certificate(kind, seq, True, witness, gamma)
    raise ValueError(f"unknown certificate kind: {kind!r}")


# -- sub-stabilized tensor product ----------------------------------------------


@dataclass
class SubStabTensor:
    """Kernel of a (x) b -> a (x) I_b along the injective envelope of b."""

    source: TensorSpace
    target: TensorSpace
    map: Matrix
    kernel: Subspace

    @property
    def dim(self) -> int:
        return self.kernel.dim


def tensor_substab(a: Representation, b: Representation) -> SubStabTensor:
    env = injective_envelope(b)
    src = tensor(a, b)
    dst = tensor(a, env.middle)
    mat = tensor_map(src, dst, None, env.inclusion)
    ker = Subspace(a.algebra.field, src.dim, kernel_basis(mat))
    return SubStabTensor(src, dst, mat, ker)


def torsion_radical(a: Representation) -> SubStabTensor:
    """The sub-stabilization of a (x) regular, for a right module a."""
    if a.side != RIGHT:
        raise AlgebraError("the torsion radical takes a right module")
    return tensor_substab(a, regular_module(a.algebra, LEFT))


# -- hereditary splitting --------------------------------------------------------


@dataclass
class HereditarySplit:
    """Splitting report over a hereditary algebra.

    The torsion part splits off with projective complement; dually the
    injective trace splits off with the cotorsion part as quotient.  The
    law fields compare stable-hom dimensions with plain hom dimensions
    against the probes.
    """

    torsion: SubRep
    torsionless: Representation
    split_iso: ModuleMap
    cotrace: SubRep
    cotorsion: Representation
    cosplit_iso: ModuleMap
    probe_count: int
    underline_law_ok: bool
    overline_law_ok: bool


def hereditary_split(
    a: Representation, probes: Optional[Sequence[Representation]] = None
) -> HereditarySplit:
    alg = a.algebra
    if not alg.is_hereditary():
        raise NotHereditary("splitting requires no cycles and no relations")
    if probes is None:
        probes = [simple(alg, v, a.side) for v in a.vertices]
        probes += [indec_projective(alg, v, a.side) for v in a.vertices]
        probes += [indec_injective(alg, v, a.side) for v in a.vertices]

    tor = bass_torsion(a, "evaluation")
    tless, tproj = torsionless_quotient(a, tor)
    if not is_projective(tless):
        raise SplitFailure("torsionless quotient is not projective")
    section = _solve_section(tproj)
    if section is None:
        raise SplitFailure("no section of the torsionless quotient")
    split_iso = hstack_maps(tor.inclusion, section)
    if not split_iso.is_isomorphism():
        raise SplitFailure("torsion + torsionless does not reassemble")

    cotr = cotorsion_trace(a)
    cot, cproj = cotorsion_quotient(a, cotr)
    if not is_injective_module(cotr.rep):
        raise SplitFailure("injective trace is not injective")
    retraction = _solve_retraction(cotr.inclusion)
    if retraction is None:
        raise SplitFailure("no retraction onto the injective trace")
    cosplit_iso = vstack_maps(cproj, retraction)
    if not cosplit_iso.is_isomorphism():
        raise SplitFailure("cotorsion + trace does not reassemble")

    underline_ok = all(
        stable_hom(a, b, MODULO_PROJECTIVES).dim == hom_basis(tor.rep, b).dim
        for b in probes
    )
    overline_ok = all(
        stable_hom(b, a, MODULO_INJECTIVES).dim == hom_basis(b, cot).dim
        for b in probes
    )
    return HereditarySplit(
        tor,
        tless,
        split_iso,
        cotr,
        cot,
        cosplit_iso,
        len(probes),
        underline_ok,
        overline_ok,
    )


def _solve_section(surj: ModuleMap) -> Optional[ModuleMap]:
    """A right inverse of a surjection, found in hom coordinates."""
    ident = ModuleMap.identity(surj.codomain)
    return lift_along(ident, surj)


def _solve_retraction(inj: ModuleMap) -> Optional[ModuleMap]:
    """A left inverse of an injection, found in hom coordinates."""
    ident = ModuleMap.identity(inj.domain)
    return extend_over(ident, inj)
