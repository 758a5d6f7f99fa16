"""Finitely presented Hom-functors given by a single module map.

A covariant functor is presented by f: X -> Y, read as the exact row
(Y,-) -> (X,-) -> F -> 0, so F(b) = coker(Hom(Y,b) -> Hom(X,b)) under
precomposition and the defect is w(F) = ker f.  A contravariant functor
is presented by f: Y -> X, read as (-,Y) -> (-,X) -> F -> 0, so
F(b) = coker(Hom(b,Y) -> Hom(b,X)) under postcomposition and the defect
is v(F) = coker f.

Morphisms between presented functors are commuting squares against the
presentations, taken up to homotopy (a difference of entry components
factoring through the target presentation acts as zero on every value).
Kernels are assembled from pushouts (covariant) or pullbacks
(contravariant); their componentwise correctness is confirmed
evaluation-by-evaluation in the test suite rather than assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .exactla import Matrix, QuotientSpace, Subspace, rank
from .algebra import (
    AlgebraError,
    BoundQuiverAlgebra,
    LEFT,
    ModuleMap,
    Representation,
    indec_injective,
    indec_projective,
    regular_module,
    simple,
    zero_module,
)
from .homology import (
    HomSpace,
    cokernel_map,
    extend_over,
    hom_basis,
    hstack_maps,
    image_map,
    injective_envelope,
    kernel_map,
    lift_along,
    projective_cover,
    pullback,
    push_coords,
    pushout,
    star_dual,
    star_dual_map,
    transpose,
    vstack_maps,
)
from .stable import fp_certificate

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


@dataclass(frozen=True)
class FpFunctor:
    """A functor presented by a single module map (see module docstring)."""

    variance: str
    presentation: ModuleMap

    def __post_init__(self):
        if self.variance not in (COVARIANT, CONTRAVARIANT):
            raise ValueError(f"unknown variance: {self.variance!r}")

    @property
    def algebra(self) -> BoundQuiverAlgebra:
        return self.presentation.domain.algebra

    @property
    def side(self) -> str:
        return self.presentation.domain.side

    @property
    def entry(self) -> Representation:
        """The module X whose Hom space carries the values."""
        if self.variance == COVARIANT:
            return self.presentation.domain
        return self.presentation.codomain

    @property
    def relations(self) -> Representation:
        """The module Y whose Hom space cuts the values down."""
        if self.variance == COVARIANT:
            return self.presentation.codomain
        return self.presentation.domain


def fp_from_map(f: ModuleMap, variance: str) -> FpFunctor:
    return FpFunctor(variance, f)


def fp_representable(m: Representation, variance: str = COVARIANT) -> FpFunctor:
    """(m,-) or (-,m), presented with zero relations."""
    nil = zero_module(m.algebra, m.side)
    if variance == COVARIANT:
        return FpFunctor(COVARIANT, ModuleMap.zero(m, nil))
    return FpFunctor(CONTRAVARIANT, ModuleMap.zero(nil, m))


@dataclass
class FpValue:
    """The value F(b): a quotient of hom coordinates."""

    functor: FpFunctor
    argument: Representation
    hom: HomSpace
    relations_image: Subspace
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return self.quotient.dim


def fp_eval(func: FpFunctor, b: Representation) -> FpValue:
    if b.algebra is not func.algebra or b.side != func.side:
        raise AlgebraError("argument does not match the functor's algebra/side")
    f = func.presentation
    if func.variance == COVARIANT:
        hom_x = hom_basis(func.entry, b)
        hom_y = hom_basis(func.relations, b)
        t = push_coords(hom_y, hom_x, lambda phi: phi @ f)
    else:
        hom_x = hom_basis(b, func.entry)
        hom_y = hom_basis(b, func.relations)
        t = push_coords(hom_y, hom_x, lambda phi: f @ phi)
    image = Subspace(b.algebra.field, hom_x.dim, t)
    return FpValue(func, b, hom_x, image, image.quotient())


def fp_defect(func: FpFunctor) -> Representation:
    """w(F) = ker of the presentation (covariant), v(F) = coker
    (contravariant); the contravariant value is cross-checked against
    F evaluated at the regular module."""
    if func.variance == COVARIANT:
        return kernel_map(func.presentation).rep
    out, _ = cokernel_map(func.presentation)
    at_reg = fp_eval(func, regular_module(func.algebra, func.side))
    if at_reg.dim != out.total_dim:
        raise AlgebraError(
            "contravariant defect does not match the value at the regular module"
        )
    return out


@dataclass
class FpMorphism:
    """A natural transformation source -> target between presented functors.

    Covariant case (source f: X -> Y, target g: X' -> Y'): the square is
    (u: X' -> X, v: Y' -> Y) with f.u = v.g, acting on values by
    [phi] -> [phi.u].  Contravariant case (source f: Y -> X, target
    g: Y' -> X'): the square is (u: X -> X', v: Y -> Y') with g.v = u.f,
    acting by [phi] -> [u.phi].
    """

    source: FpFunctor
    target: FpFunctor
    u: ModuleMap
    v: ModuleMap

    def __post_init__(self):
        if self.source.variance != self.target.variance:
            raise AlgebraError("morphism endpoints must share variance")
        if self.source.variance == COVARIANT:
            lhs = self.source.presentation @ self.u
            rhs = self.v @ self.target.presentation
        else:
            lhs = self.target.presentation @ self.v
            rhs = self.u @ self.source.presentation
        if lhs != rhs:
            raise AlgebraError("morphism square does not commute")


def fp_identity(func: FpFunctor) -> FpMorphism:
    return FpMorphism(
        func,
        func,
        ModuleMap.identity(func.entry),
        ModuleMap.identity(func.relations),
    )


def fp_zero_morphism(source: FpFunctor, target: FpFunctor) -> FpMorphism:
    if source.variance == COVARIANT:
        u = ModuleMap.zero(target.entry, source.entry)
        v = ModuleMap.zero(target.relations, source.relations)
    else:
        u = ModuleMap.zero(source.entry, target.entry)
        v = ModuleMap.zero(source.relations, target.relations)
    return FpMorphism(source, target, u, v)


def fp_morphism_equal(a: FpMorphism, b: FpMorphism) -> bool:
    """Homotopy equality: the u-difference factors through the target
    presentation, hence the two squares act identically on every value."""
    if a.source.presentation != b.source.presentation:
        return False
    if a.target.presentation != b.target.presentation:
        return False
    delta = a.u - b.u
    if delta.is_zero():
        return True
    if a.source.variance == COVARIANT:
        return extend_over(delta, a.target.presentation) is not None
    return lift_along(delta, a.target.presentation) is not None


def fp_eval_morphism(
    alpha: FpMorphism,
    b: Representation,
    src_val: Optional[FpValue] = None,
    tgt_val: Optional[FpValue] = None,
) -> Matrix:
    """Matrix of alpha at b, from source-value coordinates to target's."""
    if src_val is None:
        src_val = fp_eval(alpha.source, b)
    if tgt_val is None:
        tgt_val = fp_eval(alpha.target, b)
    if alpha.source.variance == COVARIANT:
        t = push_coords(src_val.hom, tgt_val.hom, lambda phi: phi @ alpha.u)
    else:
        t = push_coords(src_val.hom, tgt_val.hom, lambda phi: alpha.u @ phi)
    return tgt_val.quotient.projection @ t.transpose() @ src_val.quotient.section


def fp_cokernel(alpha: FpMorphism) -> FpFunctor:
    """Cokernel functor, presented over the target's entry module."""
    if alpha.source.variance == COVARIANT:
        return FpFunctor(COVARIANT, vstack_maps(alpha.u, alpha.target.presentation))
    return FpFunctor(CONTRAVARIANT, hstack_maps(alpha.u, alpha.target.presentation))


def fp_kernel(alpha: FpMorphism) -> Tuple[FpFunctor, FpMorphism]:
    """Kernel functor with its inclusion into the source.

    Covariant recipe: push the square out twice; the induced map between
    the pushouts presents the kernel.  Contravariant recipe: the mirror
    image with pullbacks.  Componentwise correctness is confirmed against
    evaluated kernels in the test suite.
    """
    f = alpha.source.presentation
    g = alpha.target.presentation
    if alpha.source.variance == COVARIANT:
        _, in_x, _ = pushout(alpha.u, g)
        _, in_d, in_y = pushout(in_x, f)
        ker = FpFunctor(COVARIANT, in_d)
        incl = FpMorphism(ker, alpha.source, in_x, in_y)
        return ker, incl
    _, pr_x, _ = pullback(alpha.u, g)
    _, pr_d, pr_y = pullback(pr_x, f)
    ker = FpFunctor(CONTRAVARIANT, pr_d)
    incl = FpMorphism(ker, alpha.source, pr_x, pr_y)
    return ker, incl


# -- sub-stabilization ----------------------------------------------------------


def fp_rho(func: FpFunctor) -> FpMorphism:
    """The canonical transformation F -> (w(F), -) off the defect."""
    if func.variance != COVARIANT:
        raise AlgebraError("sub-stabilization needs a covariant functor")
    w = kernel_map(func.presentation)
    target = fp_representable(w.rep, COVARIANT)
    v = ModuleMap.zero(target.relations, func.relations)
    return FpMorphism(func, target, w.inclusion, v)


def fp_substab(func: FpFunctor) -> FpFunctor:
    """Kernel of rho_F; rho is confirmed to evaluate to an isomorphism at
    every indecomposable injective before the kernel is formed."""
    rho = fp_rho(func)
    alg = func.algebra
    for vtx in alg.quiver.vertices:
        inj = indec_injective(alg, vtx, func.side)
        sv = fp_eval(func, inj)
        tv = fp_eval(rho.target, inj)
        mat = fp_eval_morphism(rho, inj, sv, tv)
        if sv.dim != tv.dim or rank(mat) != sv.dim:
            raise AlgebraError(
                "canonical map to the defect representable is not an "
                f"isomorphism at the injective over vertex {vtx}"
            )
    ker, _ = fp_kernel(rho)
    return ker


# -- named presentations ---------------------------------------------------------


def present_overline_cov(a: Representation) -> FpFunctor:
    """Hom(a,-) modulo injectives, presented by the injective envelope."""
    env = injective_envelope(a)
    return FpFunctor(COVARIANT, env.inclusion)


def present_underline_contra(a: Representation) -> FpFunctor:
    """Hom(-,a) modulo projectives, presented by the projective cover."""
    cov = projective_cover(a)
    return FpFunctor(CONTRAVARIANT, cov.surjection)


def present_underline_cov(a: Representation) -> FpFunctor:
    """Hom(a,-) modulo projectives, presented by the certified
    projective approximation a -> Q."""
    cert = fp_certificate(a, "covariant_underline")
    return FpFunctor(COVARIANT, cert.approximation)


def present_overline_contra(a: Representation) -> FpFunctor:
    """Hom(-,a) modulo injectives, presented by the certified injective
    approximation I -> a."""
    cert = fp_certificate(a, "contravariant_overline")
    return FpFunctor(CONTRAVARIANT, cert.approximation)


def present_tensor(a: Representation) -> FpFunctor:
    """The tensor functor of a, presented by duals of a minimal
    presentation; the defect is checked against the star dual of a."""
    td = transpose(a)
    func = FpFunctor(COVARIANT, td.f_star)
    star_dims = star_dual(a).module.dim_vector()
    if td.star_sub.dim_vector() != star_dims:
        raise AlgebraError("tensor presentation defect differs from the star dual")
    return func


def present_tensor_substab(a: Representation) -> FpFunctor:
    """The sub-stabilized tensor functor of a, presented by the image of
    the dualized presentation inside the dual of the relation cover."""
    td = transpose(a)
    im = image_map(td.f_star)
    return FpFunctor(COVARIANT, im.inclusion)


def tensor_envelope_morphism(alg: BoundQuiverAlgebra) -> FpMorphism:
    """The transformation (- (x) regular) -> (- (x) envelope of regular),
    assembled by lifting the envelope through minimal presentations and
    dualizing the resulting chain map."""
    reg = regular_module(alg, LEFT)
    env = injective_envelope(reg)
    td_reg = transpose(reg)
    td_env = transpose(env.middle)
    source = FpFunctor(COVARIANT, td_reg.f_star)
    target = FpFunctor(COVARIANT, td_env.f_star)

    h0 = lift_along(env.inclusion @ td_reg.cover.surjection, td_env.cover.surjection)
    if h0 is None:
        raise AlgebraError("projective lift of the envelope failed")
    p1_reg = td_reg.presentation.domain
    p1_env = td_env.presentation.domain
    if p1_reg.is_zero():
        h1 = ModuleMap.zero(p1_reg, p1_env)
    else:
        h1 = lift_along(h0 @ td_reg.presentation, td_env.presentation)
        if h1 is None:
            raise AlgebraError("syzygy lift of the envelope failed")
    u = star_dual_map(h0, sd_dom=td_reg.sd0, sd_cod=td_env.sd0)
    v = star_dual_map(h1, sd_dom=td_reg.sd1, sd_cod=td_env.sd1)
    return FpMorphism(source, target, u, v)


def present_torsion_radical(alg: BoundQuiverAlgebra) -> FpFunctor:
    """The torsion radical as the kernel of (- (x) regular) -> (- (x) its
    injective envelope)."""
    ker, _ = fp_kernel(tensor_envelope_morphism(alg))
    return ker


def standard_probes(alg: BoundQuiverAlgebra, side: str) -> List[Representation]:
    """Simples, indec projectives, and indec injectives on one side."""
    probes: List[Representation] = []
    for v in alg.quiver.vertices:
        probes.append(simple(alg, v, side))
    for v in alg.quiver.vertices:
        probes.append(indec_projective(alg, v, side))
    for v in alg.quiver.vertices:
        probes.append(indec_injective(alg, v, side))
    return probes
