"""Named validated instances and pair constructors.

Catalog names are frozen identifiers (golden tests and the CLI rely on
them).  Parameterized entries are spelled ``name(arg)``, e.g.
``trunc_poly(3)`` or ``geometric(2)``.

Random pairs for stress tests come from constructions (trivial
extensions, direct products, triangular pairs, regular pairs, duals,
pushforwards, basis conjugation), never from rejection-sampling raw
tensors: raw random tensors essentially never satisfy the pair axioms.
"""

from __future__ import annotations

import re

from .algebra import (
    Algebra,
    AlgebraMorphism,
    BimoduleAction,
    DorrohPairAlgebra,
    ModuleOverAlgebra,
    build_dorroh_algebra,
    check_associativity,
    direct_product_pair,
    regular_bimodule,
    verify_algebra_morphism,
)
from .coalgebra import (
    BicomoduleCoaction,
    Coalgebra,
    ComoduleOverCoalgebra,
    DorrohPairCoalgebra,
    build_dorroh_coalgebra,
    check_coassociativity,
    regular_bicomodule,
    zero_coaction_pair,
)
from .duality import dualize_algebra_pair
from .errors import InputError, ValidationFailure
from .fields import FieldSpec
from .findual import RecurrentSequence
from .linalg import Matrix, invert
from .reports import Report
from .tensors import SparseTensor3, accumulate

_NAME_RE = re.compile(r"([A-Za-z_0-9]+)(?:\((-?\d+)\))?\Z")


# ---------------------------------------------------------------------------
# catalog instances


def algebra_k(field: FieldSpec) -> Algebra:
    mul = SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field)
    return Algebra(1, mul, field, labels=["1"], unit=[1])


def dual_numbers(field: FieldSpec) -> Algebra:
    mul = SparseTensor3((2, 2, 2), {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}, field)
    return Algebra(2, mul, field, labels=["1", "eps"], unit=[1, 0])


def matrix_algebra_2(field: FieldSpec) -> Algebra:
    # basis e_ij at index 2i+j; e_ij e_kl = [j==k] e_il
    entries = {}
    for i in range(2):
        for j in range(2):
            for l in range(2):
                entries[(2 * i + j, 2 * j + l, 2 * i + l)] = 1
    mul = SparseTensor3((4, 4, 4), entries, field)
    return Algebra(4, mul, field, labels=["e11", "e12", "e21", "e22"], unit=[1, 0, 0, 1])


def group_algebra_z2(field: FieldSpec) -> Algebra:
    mul = SparseTensor3((2, 2, 2), {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1}, field)
    return Algebra(2, mul, field, labels=["1", "g"], unit=[1, 0])


def nilpotent_line(field: FieldSpec) -> Algebra:
    return Algebra(1, SparseTensor3.zero((1, 1, 1), field), field, labels=["x"])


def truncated_polynomials(n: int, field: FieldSpec) -> Algebra:
    """k[x]/(x^{n+1}), basis 1, x, ..., x^n."""
    if n < 0:
        raise InputError("trunc_poly needs n >= 0")
    dim = n + 1
    entries = {(i, j, i + j): 1 for i in range(dim) for j in range(dim) if i + j <= n}
    mul = SparseTensor3((dim, dim, dim), entries, field)
    labels = ["1"] + [f"x^{i}" for i in range(1, dim)]
    return Algebra(dim, mul, field, labels=labels, unit=[1] + [0] * n)


def matrix_coalgebra_2(field: FieldSpec) -> Coalgebra:
    # Delta(e_ij) = sum_k e_ik (x) e_kj, eps(e_ij) = [i==j]
    entries = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                entries[(2 * i + j, 2 * i + k, 2 * k + j)] = 1
    delta = SparseTensor3((4, 4, 4), entries, field)
    return Coalgebra(4, delta, field, labels=["e11", "e12", "e21", "e22"], counit=[1, 0, 0, 1])


def grouplikes(n: int, field: FieldSpec) -> Coalgebra:
    if n < 1:
        raise InputError("grouplikes needs n >= 1")
    delta = SparseTensor3((n, n, n), {(i, i, i): 1 for i in range(n)}, field)
    return Coalgebra(n, delta, field, labels=[f"g{i + 1}" for i in range(n)], counit=[1] * n)


def divided_power(n: int, field: FieldSpec) -> Coalgebra:
    """Basis c_0..c_n with Delta(c_m) = sum_i c_i (x) c_{m-i}."""
    if n < 0:
        raise InputError("divided_power needs n >= 0")
    dim = n + 1
    entries = {(m, i, m - i): 1 for m in range(dim) for i in range(m + 1)}
    delta = SparseTensor3((dim, dim, dim), entries, field)
    return Coalgebra(dim, delta, field, labels=[f"c{i}" for i in range(dim)], counit=[1] + [0] * n)


def fibonacci(field: FieldSpec) -> RecurrentSequence:
    return RecurrentSequence(field, 0, [1, 1], [1, 1])


def geometric(q: int, field: FieldSpec) -> RecurrentSequence:
    qv = field.of(q)
    return RecurrentSequence(field, 1, [qv], [qv])


_CATALOG = {
    "k": (algebra_k, {"dim": 1, "unital": True}),
    "dual_numbers": (dual_numbers, {"dim": 2, "unital": True}),
    "M2": (matrix_algebra_2, {"dim": 4, "unital": True}),
    "kZ2": (group_algebra_z2, {"dim": 2, "unital": True}),
    "nilpotent1": (nilpotent_line, {"dim": 1, "unital": False}),
    "trunc_poly": (truncated_polynomials, {"unital": True, "param": True}),
    "Mc2": (matrix_coalgebra_2, {"dim": 4, "counital": True}),
    "grouplikes": (grouplikes, {"counital": True, "param": True}),
    "divided_power": (divided_power, {"counital": True, "param": True}),
    "fibonacci": (fibonacci, {}),
    "geometric": (geometric, {"param": True}),
}


def catalog_names():
    return sorted(_CATALOG)


def instance(name: str, field: FieldSpec):
    """Build and validate a catalog instance; raises on unknown names."""
    m = _NAME_RE.match(name.strip())
    if not m or m.group(1) not in _CATALOG:
        raise InputError(f"unknown gallery name {name!r}")
    base, arg = m.group(1), m.group(2)
    builder, props = _CATALOG[base]
    if props.get("param"):
        if arg is None:
            raise InputError(f"{base} needs a parameter, e.g. {base}(2)")
        obj = builder(int(arg), field)
    else:
        if arg is not None:
            raise InputError(f"{base} takes no parameter")
        obj = builder(field)

    if isinstance(obj, Algebra):
        report = check_associativity(obj)
        if not report.ok:
            raise ValidationFailure(report, f"gallery instance {name} failed validation")
        if "unital" in props and obj.unital != props["unital"]:
            raise ValidationFailure(
                Report().add("expected unitality", False), f"gallery instance {name} has wrong unitality"
            )
    elif isinstance(obj, Coalgebra):
        report = check_coassociativity(obj)
        if not report.ok:
            raise ValidationFailure(report, f"gallery instance {name} failed validation")
        if "counital" in props and obj.counital != props["counital"]:
            raise ValidationFailure(
                Report().add("expected counitality", False), f"gallery instance {name} has wrong counitality"
            )
    if "dim" in props and obj.dim != props["dim"]:
        raise ValidationFailure(
            Report().add("expected dimension", False), f"gallery instance {name} has wrong dimension"
        )
    return obj


# ---------------------------------------------------------------------------
# algebra pair constructors


def trivial_extension_pair(A: Algebra, M: ModuleOverAlgebra) -> DorrohPairAlgebra:
    """(A, M) with M M = 0; the extension is the trivial extension of A by M."""
    if M.side != "bi" or M.algebra != A:
        raise InputError("trivial extension needs an A-bimodule")
    field = A.field
    I = Algebra(M.dim, SparseTensor3.zero((M.dim, M.dim, M.dim), field), field)
    action = BimoduleAction(A, M.dim, M.left, M.right)
    pair = DorrohPairAlgebra(A, I, action)
    pair.require_valid()
    return pair


def regular_pair(A: Algebra) -> DorrohPairAlgebra:
    """(A, A) with the multiplication actions."""
    mod = regular_bimodule(A)
    action = BimoduleAction(A, A.dim, mod.left, mod.right)
    pair = DorrohPairAlgebra(A, A, action)
    pair.require_valid()
    return pair


def scalar_action_pair(field: FieldSpec, I: Algebra) -> DorrohPairAlgebra:
    """(k, I) with k acting by scalar multiplication; valid for any I."""
    k = algebra_k(field)
    left = SparseTensor3((1, I.dim, I.dim), {(0, x, x): 1 for x in range(I.dim)}, field)
    right = SparseTensor3((I.dim, 1, I.dim), {(x, 0, x): 1 for x in range(I.dim)}, field)
    pair = DorrohPairAlgebra(k, I, BimoduleAction(k, I.dim, left, right))
    pair.require_valid()
    return pair


def triangular_pair(A: Algebra, B: Algebra, left: SparseTensor3, right: SparseTensor3):
    """The pair (A x B, M) of an A-B-bimodule M, plus the isomorphism of its
    extension onto the block matrix algebra [[A, M], [0, B]].

    ``left`` is the A-action (a,m,m'), ``right`` the B-action (m,b,m').
    """
    field = A.field
    nm = left.dims[1]
    if left.dims != (A.dim, nm, nm) or right.dims != (nm, B.dim, nm):
        raise InputError("bimodule tensors mis-shaped for triangular pair")
    ab = build_dorroh_algebra(direct_product_pair(A, B))
    na, nb = A.dim, B.dim
    # (a,b) m = a m and m (a,b) = m b.
    pl = {(a, m, m2): v for (a, m, m2), v in left.entries.items()}
    pr = {(m, na + b, m2): v for (m, b, m2), v in right.entries.items()}
    action = BimoduleAction(
        ab,
        nm,
        SparseTensor3((na + nb, nm, nm), pl, field),
        SparseTensor3((nm, na + nb, nm), pr, field),
    )
    I = Algebra(nm, SparseTensor3.zero((nm, nm, nm), field), field)
    pair = DorrohPairAlgebra(ab, I, action)
    pair.require_valid()

    # Block algebra on basis [A-block, M-block, B-block].
    n = na + nm + nb
    entries = {}
    for (i, j, k), v in A.mul.entries.items():
        entries[(i, j, k)] = v
    for (i, j, k), v in B.mul.entries.items():
        entries[(na + nm + i, na + nm + j, na + nm + k)] = v
    for (a, m, m2), v in left.entries.items():
        entries[(a, na + m, na + m2)] = v
    for (m, b, m2), v in right.entries.items():
        entries[(na + m, na + nm + b, na + m2)] = v
    block = Algebra(n, SparseTensor3((n, n, n), entries, field), field)

    # Permute the extension basis [A, B, M] into block order [A, M, B].
    cols = []
    for i in range(na):
        cols.append([1 if t == i else 0 for t in range(n)])
    for i in range(nb):
        cols.append([1 if t == na + nm + i else 0 for t in range(n)])
    for i in range(nm):
        cols.append([1 if t == na + i else 0 for t in range(n)])
    iso = AlgebraMorphism(build_dorroh_algebra(pair), block, Matrix.from_columns(cols, field))
    report = verify_algebra_morphism(iso, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "triangular block isomorphism failed verification")
    return pair, iso


def one_point_pair(A: Algebra, left: SparseTensor3):
    """Triangular pair [[A, M], [0, k]] for a left A-module M with the
    unital scalar right k-action."""
    field = A.field
    nm = left.dims[1]
    k = algebra_k(field)
    right = SparseTensor3((nm, 1, nm), {(m, 0, m): 1 for m in range(nm)}, field)
    return triangular_pair(A, k, left, right)


def make_algebra_pair(kind: str, *components):
    if kind == "trivial_extension":
        return trivial_extension_pair(*components)
    if kind == "direct_product":
        pair = direct_product_pair(*components)
        pair.require_valid()
        return pair
    if kind == "triangular":
        return triangular_pair(*components)
    if kind == "one_point":
        return one_point_pair(*components)
    if kind == "regular":
        return regular_pair(*components)
    raise InputError(f"unknown algebra pair kind {kind!r}")


def trunc_poly_pair(n: int, field: FieldSpec) -> DorrohPairAlgebra:
    """(k, span{x..x^n}) inside k[x]/(x^{n+1}); the graded splitting."""
    if n < 1:
        raise InputError("trunc_poly_pair needs n >= 1")
    entries = {(i, j, i + j): 1 for i in range(1, n + 1) for j in range(1, n + 1) if i + j <= n}
    shifted = {(i - 1, j - 1, k - 1): v for (i, j, k), v in entries.items()}
    I = Algebra(n, SparseTensor3((n, n, n), shifted, field), field)
    return scalar_action_pair(field, I)


# ---------------------------------------------------------------------------
# coalgebra pair constructors


def trivial_coextension_pair(C: Coalgebra, M: ComoduleOverCoalgebra) -> DorrohPairCoalgebra:
    """(C, M) with Delta_M = 0; the extension is the trivial coextension."""
    if M.side != "bi" or M.coalgebra != C:
        raise InputError("trivial coextension needs a C-bicomodule")
    field = C.field
    P = Coalgebra(M.dim, SparseTensor3.zero((M.dim, M.dim, M.dim), field), field)
    coaction = BicomoduleCoaction(C, M.dim, M.rho_l, M.rho_r)
    pair = DorrohPairCoalgebra(C, P, coaction)
    pair.require_valid()
    return pair


def regular_copair(C: Coalgebra) -> DorrohPairCoalgebra:
    """(C, C) with the regular coactions rho_l = rho_r = Delta."""
    com = regular_bicomodule(C)
    coaction = BicomoduleCoaction(C, C.dim, com.rho_l, com.rho_r)
    pair = DorrohPairCoalgebra(C, C, coaction)
    pair.require_valid()
    return pair


def counital_hull(P: Coalgebra) -> DorrohPairCoalgebra:
    """(k, P) with the trivial coactions p -> 1 (x) p and p -> p (x) 1;
    the extension is counital with counit (1, 0, ..., 0)."""
    field = P.field
    k = grouplikes(1, field)
    rho_l = SparseTensor3((P.dim, 1, P.dim), {(x, 0, x): 1 for x in range(P.dim)}, field)
    rho_r = SparseTensor3((P.dim, P.dim, 1), {(x, x, 0): 1 for x in range(P.dim)}, field)
    pair = DorrohPairCoalgebra(k, P, BicomoduleCoaction(k, P.dim, rho_l, rho_r))
    pair.require_valid()
    return pair


def grouplike_pair(field: FieldSpec) -> DorrohPairCoalgebra:
    """C = k{g}, P = k{p} with Delta(p) = p (x) p, rho_l(p) = g (x) p,
    rho_r(p) = p (x) g."""
    C = grouplikes(1, field)
    P = grouplikes(1, field)
    rho_l = SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field)
    rho_r = SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field)
    pair = DorrohPairCoalgebra(C, P, BicomoduleCoaction(C, 1, rho_l, rho_r))
    pair.require_valid()
    return pair


def triangular_copair(C: Coalgebra, D: Coalgebra, rho_l: SparseTensor3, rho_r: SparseTensor3):
    """The pair (C x D, M) of a C-D-bicomodule M with Delta_M = 0.

    ``rho_l`` is the C-coaction (m,c,m'), ``rho_r`` the D-coaction (m,m',d).
    """
    field = C.field
    nm = rho_l.dims[0]
    if rho_l.dims != (nm, C.dim, nm) or rho_r.dims != (nm, nm, D.dim):
        raise InputError("bicomodule tensors mis-shaped for triangular copair")
    cd = zero_coaction_pair(C, D)
    cd.require_valid()
    cxd = build_dorroh_coalgebra(cd)
    nc = C.dim
    pl = {(m, c, m2): v for (m, c, m2), v in rho_l.entries.items()}
    pr = {(m, m2, nc + d): v for (m, m2, d), v in rho_r.entries.items()}
    coaction = BicomoduleCoaction(
        cxd,
        nm,
        SparseTensor3((nm, cxd.dim, nm), pl, field),
        SparseTensor3((nm, nm, cxd.dim), pr, field),
    )
    M = Coalgebra(nm, SparseTensor3.zero((nm, nm, nm), field), field)
    pair = DorrohPairCoalgebra(cxd, M, coaction)
    pair.require_valid()
    return pair


def make_coalgebra_pair(kind: str, *components):
    if kind == "trivial_coextension":
        return trivial_coextension_pair(*components)
    if kind == "direct_product":
        pair = zero_coaction_pair(*components)
        pair.require_valid()
        return pair
    if kind == "triangular":
        return triangular_copair(*components)
    if kind == "counital_hull":
        return counital_hull(*components)
    if kind == "grouplike":
        return grouplike_pair(*components)
    raise InputError(f"unknown coalgebra pair kind {kind!r}")


# ---------------------------------------------------------------------------
# standard pair lists (the acceptance substrate)


def standard_algebra_pairs(field: FieldSpec):
    """At least a dozen named, validated pairs with extensions of dim <= 8."""
    m2 = matrix_algebra_2(field)
    dn = dual_numbers(field)
    kz2 = group_algebra_z2(field)
    tp2 = truncated_polynomials(2, field)
    pairs = [
        ("k_nilpotent_scalar", scalar_action_pair(field, nilpotent_line(field))),
        ("k_regular", regular_pair(algebra_k(field))),
        ("kZ2_regular", regular_pair(kz2)),
        ("M2_regular", regular_pair(m2)),
        ("dual_numbers_regular", regular_pair(dn)),
        ("trunc_poly2_regular", regular_pair(tp2)),
        ("trivial_ext_M2_regular", trivial_extension_pair(m2, regular_bimodule(m2))),
        ("trivial_ext_dn_regular", trivial_extension_pair(dn, regular_bimodule(dn))),
        ("direct_product_M2_kZ2", make_algebra_pair("direct_product", m2, kz2)),
        ("direct_product_dn_tp2", make_algebra_pair("direct_product", dn, tp2)),
        ("triangular_kkk", triangular_pair(
            algebra_k(field),
            algebra_k(field),
            SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field),
            SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field),
        )[0]),
        ("one_point_M2_k2", one_point_pair(
            m2,
            SparseTensor3(
                (4, 2, 2),
                {(2 * i + j, j, i): 1 for i in range(2) for j in range(2)},
                field,
            ),
        )[0]),
        ("trunc_poly3_graded", trunc_poly_pair(3, field)),
        ("scalar_kZ2", scalar_action_pair(field, kz2)),
    ]
    return pairs


def standard_coalgebra_pairs(field: FieldSpec):
    """Named, validated coalgebra pairs with extensions of dim <= 8."""
    mc2 = matrix_coalgebra_2(field)
    gl2 = grouplikes(2, field)
    dp2 = divided_power(2, field)
    pairs = [
        ("grouplike", grouplike_pair(field)),
        ("counital_hull_dp2", counital_hull(dp2)),
        ("counital_hull_zero_line", counital_hull(
            Coalgebra(1, SparseTensor3.zero((1, 1, 1), field), field)
        )),
        ("direct_product_Mc2_gl2", make_coalgebra_pair("direct_product", mc2, gl2)),
        ("direct_product_gl1_dp1", make_coalgebra_pair(
            "direct_product", grouplikes(1, field), divided_power(1, field)
        )),
        ("trivial_coext_Mc2_regular", trivial_coextension_pair(mc2, regular_bicomodule(mc2))),
        ("trivial_coext_gl2_regular", trivial_coextension_pair(gl2, regular_bicomodule(gl2))),
        ("triangular_gl1_gl1_line", triangular_copair(
            grouplikes(1, field),
            grouplikes(1, field),
            SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field),
            SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field),
        )),
        ("regular_Mc2", regular_copair(mc2)),
        ("regular_gl2", regular_copair(gl2)),
        ("regular_dp2", regular_copair(dp2)),
        ("dual_of_trunc_poly3_graded", dualize_algebra_pair(trunc_poly_pair(3, field))[0]),
        ("dual_of_triangular_kkk", dualize_algebra_pair(
            triangular_pair(
                algebra_k(field),
                algebra_k(field),
                SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field),
                SparseTensor3((1, 1, 1), {(0, 0, 0): 1}, field),
            )[0]
        )[0]),
    ]
    return pairs


# ---------------------------------------------------------------------------
# random construction generators


def random_invertible(rng, n: int, field: FieldSpec) -> Matrix:
    while True:
        if field.p is not None:
            data = [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)]
        else:
            data = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        m = Matrix(n, n, data, field)
        if invert(m) is not None:
            return m


def conjugate_algebra(a: Algebra, S: Matrix) -> Algebra:
    """Structure constants in the new basis e'_j = sum_i S[i][j] e_i."""
    Sinv = invert(S)
    if Sinv is None:
        raise InputError("basis change must be invertible")
    n = a.dim
    items = []
    for (u, v, w), c in a.mul.entries.items():
        for i in range(n):
            si = S.data[u][i]
            if si:
                for j in range(n):
                    sj = S.data[v][j]
                    if sj:
                        for k in range(n):
                            t = Sinv.data[k][w]
                            if t:
                                items.append((i, j, k, c * si * sj * t))
    mul = accumulate((n, n, n), items, a.field)
    return Algebra(n, mul, a.field)


def conjugate_algebra_pair(pair: DorrohPairAlgebra, SA: Matrix, SI: Matrix) -> DorrohPairAlgebra:
    A2 = conjugate_algebra(pair.A, SA)
    I2 = conjugate_algebra(pair.I, SI)
    na, ni = pair.A.dim, pair.I.dim
    SIinv = invert(SI)
    items_l = []
    for (a, x, y), c in pair.action.left.entries.items():
        for i in range(na):
            si = SA.data[a][i]
            if si:
                for j in range(ni):
                    sj = SI.data[x][j]
                    if sj:
                        for k in range(ni):
                            t = SIinv.data[k][y]
                            if t:
                                items_l.append((i, j, k, c * si * sj * t))
    items_r = []
    for (x, a, y), c in pair.action.right.entries.items():
        for i in range(ni):
            si = SI.data[x][i]
            if si:
                for j in range(na):
                    sj = SA.data[a][j]
                    if sj:
                        for k in range(ni):
                            t = SIinv.data[k][y]
                            if t:
                                items_r.append((i, j, k, c * si * sj * t))
    action = BimoduleAction(
        A2,
        ni,
        accumulate((na, ni, ni), items_l, pair.field),
        accumulate((ni, na, ni), items_r, pair.field),
    )
    return DorrohPairAlgebra(A2, I2, action)


def conjugate_coalgebra(c: Coalgebra, S: Matrix) -> Coalgebra:
    Sinv = invert(S)
    if Sinv is None:
        raise InputError("basis change must be invertible")
    n = c.dim
    items = []
    for (k, u, v), val in c.delta.entries.items():
        for kk in range(n):
            sk = S.data[k][kk]
            if sk:
                for i in range(n):
                    ti = Sinv.data[i][u]
                    if ti:
                        for j in range(n):
                            tj = Sinv.data[j][v]
                            if tj:
                                items.append((kk, i, j, val * sk * ti * tj))
    delta = accumulate((n, n, n), items, c.field)
    return Coalgebra(n, delta, c.field)


def conjugate_coalgebra_pair(pair: DorrohPairCoalgebra, SC: Matrix, SP: Matrix) -> DorrohPairCoalgebra:
    C2 = conjugate_coalgebra(pair.C, SC)
    P2 = conjugate_coalgebra(pair.P, SP)
    nc, np_ = pair.C.dim, pair.P.dim
    SCinv = invert(SC)
    SPinv = invert(SP)
    items_l = []
    for (x, c, y), val in pair.coaction.rho_l.entries.items():
        for xx in range(np_):
            sx = SP.data[x][xx]
            if sx:
                for cc in range(nc):
                    tc = SCinv.data[cc][c]
                    if tc:
                        for yy in range(np_):
                            ty = SPinv.data[yy][y]
                            if ty:
                                items_l.append((xx, cc, yy, val * sx * tc * ty))
    items_r = []
    for (x, y, c), val in pair.coaction.rho_r.entries.items():
        for xx in range(np_):
            sx = SP.data[x][xx]
            if sx:
                for yy in range(np_):
                    ty = SPinv.data[yy][y]
                    if ty:
                        for cc in range(nc):
                            tc = SCinv.data[cc][c]
                            if tc:
                                items_r.append((xx, yy, cc, val * sx * ty * tc))
    coaction = BicomoduleCoaction(
        C2,
        np_,
        accumulate((np_, nc, np_), items_l, pair.field),
        accumulate((np_, np_, nc), items_r, pair.field),
    )
    return DorrohPairCoalgebra(C2, P2, coaction)


def _random_small_algebra(rng, field: FieldSpec, max_dim: int) -> Algebra:
    choices = [lambda: algebra_k(field), lambda: nilpotent_line(field)]
    if max_dim >= 2:
        choices += [
            lambda: dual_numbers(field),
            lambda: group_algebra_z2(field),
            lambda: truncated_polynomials(1, field),
        ]
    if max_dim >= 3:
        choices.append(lambda: truncated_polynomials(2, field))
    if max_dim >= 4:
        choices.append(lambda: matrix_algebra_2(field))
    return rng.choice(choices)()


def random_algebra_pair(rng, field: FieldSpec, max_total_dim: int = 8) -> DorrohPairAlgebra:
    kind = rng.randrange(5)
    half = max_total_dim // 2
    if kind == 0:
        a = _random_small_algebra(rng, field, half)
        pair = trivial_extension_pair(a, regular_bimodule(a))
    elif kind == 1:
        a = _random_small_algebra(rng, field, half)
        b = _random_small_algebra(rng, field, max_total_dim - a.dim)
        pair = direct_product_pair(a, b)
    elif kind == 2:
        a = _random_small_algebra(rng, field, half)
        pair = regular_pair(a)
    elif kind == 3:
        i = _random_small_algebra(rng, field, max_total_dim - 1)
        pair = scalar_action_pair(field, i)
    else:
        a = _random_small_algebra(rng, field, (max_total_dim - 1) // 2)
        b = algebra_k(field)
        # left-regular A, zero right B-action
        left = SparseTensor3((a.dim, a.dim, a.dim), dict(a.mul.entries), field)
        right = SparseTensor3.zero((a.dim, 1, a.dim), field)
        pair = triangular_pair(a, b, left, right)[0]
    if rng.random() < 0.5:
        pair = conjugate_algebra_pair(
            pair,
            random_invertible(rng, pair.A.dim, field),
            random_invertible(rng, pair.I.dim, field),
        )
    return pair


def _random_small_coalgebra(rng, field: FieldSpec, max_dim: int) -> Coalgebra:
    choices = [lambda: grouplikes(1, field)]
    if max_dim >= 2:
        choices += [lambda: grouplikes(2, field), lambda: divided_power(1, field)]
    if max_dim >= 3:
        choices.append(lambda: divided_power(2, field))
    if max_dim >= 4:
        choices.append(lambda: matrix_coalgebra_2(field))
    return rng.choice(choices)()


def random_coalgebra_pair(rng, field: FieldSpec, max_total_dim: int = 8) -> DorrohPairCoalgebra:
    kind = rng.randrange(5)
    half = max_total_dim // 2
    if kind == 0:
        c = _random_small_coalgebra(rng, field, half)
        pair = trivial_coextension_pair(c, regular_bicomodule(c))
    elif kind == 1:
        c = _random_small_coalgebra(rng, field, half)
        p = _random_small_coalgebra(rng, field, max_total_dim - c.dim)
        pair = zero_coaction_pair(c, p)
    elif kind == 2:
        c = _random_small_coalgebra(rng, field, half)
        pair = regular_copair(c)
    elif kind == 3:
        p = _random_small_coalgebra(rng, field, max_total_dim - 1)
        pair = counital_hull(p)
    else:
        # random grouplike pair: each p_i coacts through one group-like of C
        nc = rng.randint(1, max(1, half))
        npp = rng.randint(1, max(1, max_total_dim - nc))
        c = grouplikes(nc, field)
        p = grouplikes(npp, field)
        assign = [rng.randrange(nc) for _ in range(npp)]
        rho_l = SparseTensor3(
            (npp, nc, npp), {(x, assign[x], x): 1 for x in range(npp)}, field
        )
        rho_r = SparseTensor3(
            (npp, npp, nc), {(x, x, assign[x]): 1 for x in range(npp)}, field
        )
        pair = DorrohPairCoalgebra(c, p, BicomoduleCoaction(c, npp, rho_l, rho_r))
    if rng.random() < 0.5:
        pair = conjugate_coalgebra_pair(
            pair,
            random_invertible(rng, pair.C.dim, field),
            random_invertible(rng, pair.P.dim, field),
        )
    return pair
