"""Exact duality between finite-dimensional algebras and coalgebras.

Dual bases are always the Kronecker duals of the stored bases, so every
duality isomorphism below has the identity matrix and verification
isolates structure-constant correctness: the dual of a multiplication
tensor is its (k,i,j) reindexing and vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Algebra,
    AlgebraMorphism,
    BimoduleAction,
    DorrohPairAlgebra,
    ModuleOverAlgebra,
    build_dorroh_algebra,
    verify_algebra_morphism,
)
from .coalgebra import (
    BicomoduleCoaction,
    Coalgebra,
    CoalgebraMorphism,
    ComoduleOverCoalgebra,
    DorrohPairCoalgebra,
    build_dorroh_coalgebra,
    verify_coalgebra_morphism,
)
from .errors import ValidationFailure
from .linalg import Matrix
from .tensors import SparseTensor3

PAIRING_CONVENTION = "Kronecker dual bases e_i* with e_i*(e_j) = delta_ij"


@dataclass
class DualityWitness:
    forward: object  # AlgebraMorphism or CoalgebraMorphism, verified iso
    convention: str = PAIRING_CONVENTION


def _dual_labels(labels):
    if labels is None:
        return None
    return [lab + "*" for lab in labels]


def dual_algebra_of_coalgebra(c: Coalgebra) -> Algebra:
    """The convolution algebra C* with (fg)(x) = sum f(x_1) g(x_2)."""
    entries = {(i, j, k): v for (k, i, j), v in c.delta.entries.items()}
    mul = SparseTensor3((c.dim, c.dim, c.dim), entries, c.field)
    unit = c.find_counit()
    return Algebra(c.dim, mul, c.field, labels=_dual_labels(c.labels), unit=unit)


def dual_coalgebra_of_algebra(a: Algebra) -> Coalgebra:
    """A* with comultiplication m*, the transpose of the multiplication."""
    entries = {(k, i, j): v for (i, j, k), v in a.mul.entries.items()}
    delta = SparseTensor3((a.dim, a.dim, a.dim), entries, a.field)
    counit = a.find_identity()
    return Coalgebra(a.dim, delta, a.field, labels=_dual_labels(a.labels), counit=counit)


def dual_actions(m: ModuleOverAlgebra) -> ComoduleOverCoalgebra:
    """Dualize a module into a comodule over the dual coalgebra, same side."""
    coalg = dual_coalgebra_of_algebra(m.algebra)
    field = m.algebra.field
    na, nm = m.algebra.dim, m.dim
    rho_l = rho_r = None
    if m.left is not None:
        # rho_l(v_x*)(e_a (x) v_y) = v_x*(a . v_y)
        entries = {(x, a, y): v for (a, y, x), v in m.left.entries.items()}
        rho_l = SparseTensor3((nm, na, nm), entries, field)
    if m.right is not None:
        # rho_r(v_x*)(v_y (x) e_a) = v_x*(v_y . a)
        entries = {(x, y, a): v for (y, a, x), v in m.right.entries.items()}
        rho_r = SparseTensor3((nm, nm, na), entries, field)
    return ComoduleOverCoalgebra(coalg, nm, m.side, rho_l=rho_l, rho_r=rho_r)


def dual_coactions(com: ComoduleOverCoalgebra) -> ModuleOverAlgebra:
    """Dualize a comodule into a module over the convolution algebra, same side."""
    alg = dual_algebra_of_coalgebra(com.coalgebra)
    field = com.coalgebra.field
    nc, nm = com.coalgebra.dim, com.dim
    left = right = None
    if com.rho_l is not None:
        # (e_c* . v_x*)(v_y) = sum e_c*(y_(-1)) v_x*(y_(0))
        entries = {(c, x, y): v for (y, c, x), v in com.rho_l.entries.items()}
        left = SparseTensor3((nc, nm, nm), entries, field)
    if com.rho_r is not None:
        entries = {(x, c, y): v for (y, x, c), v in com.rho_r.entries.items()}
        right = SparseTensor3((nm, nc, nm), entries, field)
    return ModuleOverAlgebra(alg, nm, com.side, left=left, right=right)


def dualize_algebra_pair(pair: DorrohPairAlgebra):
    """(A, I) -> the coalgebra pair (A*, I*) and the verified isomorphism
    (A|xI)* -> A*|xI*, phi -> (phi_A, phi_I)."""
    pair.require_valid()
    field = pair.field
    na, ni = pair.A.dim, pair.I.dim
    c_dual = dual_coalgebra_of_algebra(pair.A)
    p_dual = dual_coalgebra_of_algebra(pair.I)
    # rho_l(f_x*)(e_a (x) f_y) = f_x*(a . f_y), and mirrored on the right.
    rho_l = SparseTensor3(
        (ni, na, ni), {(x, a, y): v for (a, y, x), v in pair.action.left.entries.items()}, field
    )
    rho_r = SparseTensor3(
        (ni, ni, na), {(x, y, a): v for (y, a, x), v in pair.action.right.entries.items()}, field
    )
    copair = DorrohPairCoalgebra(c_dual, p_dual, BicomoduleCoaction(c_dual, ni, rho_l, rho_r))
    copair.require_valid()

    source = dual_coalgebra_of_algebra(build_dorroh_algebra(pair))
    target = build_dorroh_coalgebra(copair)
    forward = CoalgebraMorphism(source, target, Matrix.identity(na + ni, field))
    report = verify_coalgebra_morphism(forward, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "algebra-pair duality witness failed")
    return copair, DualityWitness(forward)


def dualize_coalgebra_pair(pair: DorrohPairCoalgebra):
    """(C, P) -> the algebra pair (C*, P*) and the verified isomorphism
    C*|xP* -> (C|xP)*, (f,g) -> f + g."""
    pair.require_valid()
    field = pair.field
    nc, np_ = pair.C.dim, pair.P.dim
    a_dual = dual_algebra_of_coalgebra(pair.C)
    i_dual = dual_algebra_of_coalgebra(pair.P)
    # (e_c* . f_x*)(f_p) = sum e_c*(p_(-1)) f_x*(p_(0)), and mirrored.
    left = SparseTensor3(
        (nc, np_, np_), {(c, x, p): v for (p, c, x), v in pair.coaction.rho_l.entries.items()}, field
    )
    right = SparseTensor3(
        (np_, nc, np_), {(x, c, p): v for (p, x, c), v in pair.coaction.rho_r.entries.items()}, field
    )
    apair = DorrohPairAlgebra(a_dual, i_dual, BimoduleAction(a_dual, np_, left, right))
    apair.require_valid()

    source = build_dorroh_algebra(apair)
    target = dual_algebra_of_coalgebra(build_dorroh_coalgebra(pair))
    forward = AlgebraMorphism(source, target, Matrix.identity(nc + np_, field))
    report = verify_algebra_morphism(forward, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "coalgebra-pair duality witness failed")
    return apair, DualityWitness(forward)


def double_dual_iso(a: Algebra) -> AlgebraMorphism:
    """The evaluation map A -> A**, an isomorphism in finite dimension."""
    double = dual_algebra_of_coalgebra(dual_coalgebra_of_algebra(a))
    forward = AlgebraMorphism(a, double, Matrix.identity(a.dim, a.field))
    report = verify_algebra_morphism(forward, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "double dual evaluation failed verification")
    return forward


def double_dual_iso_coalgebra(c: Coalgebra) -> CoalgebraMorphism:
    """The evaluation map C -> C**, an isomorphism in finite dimension."""
    double = dual_coalgebra_of_algebra(dual_algebra_of_coalgebra(c))
    forward = CoalgebraMorphism(c, double, Matrix.identity(c.dim, c.field))
    report = verify_coalgebra_morphism(forward, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "double dual evaluation failed verification")
    return forward
