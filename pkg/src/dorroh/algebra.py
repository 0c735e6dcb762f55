"""Algebras by structure constants and their Dorroh extensions.

Conventions:
  * ``mul`` entry (i,j,k) -> c means e_i . e_j contains c e_k.
  * Bimodule actions: ``left`` (a,x,y) -> c means e_a . f_x contains c f_y,
    ``right`` (x,a,y) -> c means f_x . e_a contains c f_y.
  * Morphism matrices act by columns: column j is the image of e_j.
  * Extensions order the basis A-block first, then I-block.

Algebras here need not be unital and modules need not respect units.
"""

from __future__ import annotations

import itertools

from .errors import InputError, PreconditionError, ValidationFailure
from .fields import FieldSpec
from .linalg import Matrix, invert, solve_linear
from .reports import Report
from .tensors import SparseTensor3

LEFT = "left"
RIGHT = "right"
BI = "bi"
SIDES = (LEFT, RIGHT, BI)


def _diff_is_zero(field, acc):
    for v in acc.values():
        if field.canon(v) != 0:
            return False
    return True


class Algebra:
    def __init__(self, dim, mul: SparseTensor3, field: FieldSpec, labels=None, unit=None):
        if mul.dims != (dim, dim, dim):
            raise InputError(f"mul tensor dims {mul.dims} do not match dim {dim}")
        if mul.field != field:
            raise InputError("mul tensor field mismatch")
        if labels is not None and len(labels) != dim:
            raise InputError("label count must equal dim")
        self.dim = dim
        self.mul = mul
        self.field = field
        self.labels = list(labels) if labels is not None else None
        self._unit = "unset"
        if unit is not None:
            unit = [field.canon(u) for u in unit]
            if not self._is_identity_vector(unit):
                raise InputError("cached unit fails the identity law")
            self._unit = unit

    def basis(self, i):
        v = [0] * self.dim
        v[i] = 1
        return v

    def product(self, x, y):
        """Coordinates of x.y."""
        acc = [0] * self.dim
        for (i, j, k), c in self.mul.entries.items():
            xi = x[i]
            if xi:
                yj = y[j]
                if yj:
                    acc[k] += xi * yj * c
        canon = self.field.canon
        return [canon(v) for v in acc]

    def _is_identity_vector(self, u):
        for i in range(self.dim):
            e = self.basis(i)
            if self.product(u, e) != e or self.product(e, u) != e:
                return False
        return True

    def find_identity(self):
        """The unique two-sided identity in coordinates, or None.  Cached."""
        if self._unit != "unset":
            return self._unit
        n = self.dim
        if n == 0:
            self._unit = None
            return None
        rows = []
        rhs = []
        # u . e_j = e_j and e_j . u = e_j, one row per target coordinate.
        for j in range(n):
            for m in range(n):
                rows.append([self.mul.get(i, j, m) for i in range(n)])
                rhs.append(1 if j == m else 0)
                rows.append([self.mul.get(j, i, m) for i in range(n)])
                rhs.append(1 if j == m else 0)
        sol = solve_linear(Matrix(len(rows), n, rows, self.field), rhs)
        self._unit = sol
        return sol

    @property
    def unital(self):
        return self.find_identity() is not None

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and self.dim == other.dim
            and self.field == other.field
            and self.mul == other.mul
        )

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field!r})"


def check_associativity(a: Algebra) -> Report:
    """Brute-force (e_i e_j) e_k = e_i (e_j e_k); first witness in lex order."""
    report = Report()
    g = a.mul.by_first_two()
    field = a.field
    n = a.dim
    for i in range(n):
        for j in range(n):
            pij = g.get((i, j), ())
            for k in range(n):
                acc = {}
                for l, c in pij:
                    for m, c2 in g.get((l, k), ()):
                        acc[m] = acc.get(m, 0) + c * c2
                for l, c in g.get((j, k), ()):
                    for m, c2 in g.get((i, l), ()):
                        acc[m] = acc.get(m, 0) - c * c2
                if not _diff_is_zero(field, acc):
                    report.add("associativity", False, (i, j, k))
                    return report
    report.add("associativity", True)
    return report


def find_identity(a: Algebra):
    return a.find_identity()


class BimoduleAction:
    """An algebra acting on a carrier from both sides."""

    def __init__(self, acting: Algebra, carrier_dim: int, left: SparseTensor3, right: SparseTensor3):
        na = acting.dim
        if left.dims != (na, carrier_dim, carrier_dim):
            raise InputError(f"left action dims {left.dims} do not match ({na},{carrier_dim},{carrier_dim})")
        if right.dims != (carrier_dim, na, carrier_dim):
            raise InputError(f"right action dims {right.dims} do not match ({carrier_dim},{na},{carrier_dim})")
        if left.field != acting.field or right.field != acting.field:
            raise InputError("action tensor field mismatch")
        self.acting = acting
        self.carrier_dim = carrier_dim
        self.left = left
        self.right = right

    def act_left(self, a_vec, x_vec):
        acc = [0] * self.carrier_dim
        for (a, x, y), c in self.left.entries.items():
            va = a_vec[a]
            if va:
                vx = x_vec[x]
                if vx:
                    acc[y] += va * vx * c
        canon = self.acting.field.canon
        return [canon(v) for v in acc]

    def act_right(self, x_vec, a_vec):
        acc = [0] * self.carrier_dim
        for (x, a, y), c in self.right.entries.items():
            vx = x_vec[x]
            if vx:
                va = a_vec[a]
                if va:
                    acc[y] += vx * va * c
        canon = self.acting.field.canon
        return [canon(v) for v in acc]

    def validate(self) -> Report:
        """Bimodule axioms over all basis triples."""
        report = Report()
        field = self.acting.field
        na = self.acting.dim
        ni = self.carrier_dim
        gm = self.acting.mul.by_first_two()
        gl = self.left.by_first_two()
        gr = self.right.by_first_two()

        ok, wit = True, None
        for a in range(na):
            for b in range(na):
                for x in range(ni):
                    acc = {}
                    for l, c in gm.get((a, b), ()):
                        for y, c2 in gl.get((l, x), ()):
                            acc[y] = acc.get(y, 0) + c * c2
                    for z, c in gl.get((b, x), ()):
                        for y, c2 in gl.get((a, z), ()):
                            acc[y] = acc.get(y, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (a, b, x)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("(ab)x=a(bx)", ok, wit)

        ok, wit = True, None
        for x in range(ni):
            for a in range(na):
                for b in range(na):
                    acc = {}
                    for l, c in gm.get((a, b), ()):
                        for y, c2 in gr.get((x, l), ()):
                            acc[y] = acc.get(y, 0) + c * c2
                    for z, c in gr.get((x, a), ()):
                        for y, c2 in gr.get((z, b), ()):
                            acc[y] = acc.get(y, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (x, a, b)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("x(ab)=(xa)b", ok, wit)

        ok, wit = True, None
        for a in range(na):
            for x in range(ni):
                for b in range(na):
                    acc = {}
                    for z, c in gl.get((a, x), ()):
                        for y, c2 in gr.get((z, b), ()):
                            acc[y] = acc.get(y, 0) + c * c2
                    for z, c in gr.get((x, b), ()):
                        for y, c2 in gl.get((a, z), ()):
                            acc[y] = acc.get(y, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (a, x, b)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("(ax)b=a(xb)", ok, wit)
        return report


class DorrohPairAlgebra:
    """A pair (A, I) with A acting on the algebra I from both sides."""

    def __init__(self, A: Algebra, I: Algebra, action: BimoduleAction):
        if action.acting is not A and action.acting != A:
            raise InputError("action must be an action of the pair's A")
        if action.carrier_dim != I.dim:
            raise InputError("action carrier does not match I")
        if A.field != I.field:
            raise InputError("pair components over different fields")
        self.A = A
        self.I = I
        self.action = action
        self._report = None

    @property
    def field(self):
        return self.A.field

    def validate(self) -> Report:
        if self._report is None:
            self._report = check_dorroh_pair_algebra(self)
        return self._report

    def require_valid(self):
        report = self.validate()
        if not report.ok:
            raise ValidationFailure(report, "not a Dorroh pair of algebras: " + report.headline())

    def __eq__(self, other):
        return (
            isinstance(other, DorrohPairAlgebra)
            and self.A == other.A
            and self.I == other.I
            and self.action.left == other.action.left
            and self.action.right == other.action.right
        )


def check_dorroh_pair_algebra(pair: DorrohPairAlgebra) -> Report:
    """Bimodule axioms plus the three compatibility identities between
    the actions and the multiplication of I."""
    report = pair.action.validate()
    field = pair.field
    na = pair.A.dim
    ni = pair.I.dim
    gmi = pair.I.mul.by_first_two()
    gl = pair.action.left.by_first_two()
    gr = pair.action.right.by_first_two()

    ok, wit = True, None
    for a in range(na):
        for x in range(ni):
            for y in range(ni):
                acc = {}
                for z, c in gmi.get((x, y), ()):
                    for w, c2 in gl.get((a, z), ()):
                        acc[w] = acc.get(w, 0) + c * c2
                for z, c in gl.get((a, x), ()):
                    for w, c2 in gmi.get((z, y), ()):
                        acc[w] = acc.get(w, 0) - c * c2
                if not _diff_is_zero(field, acc):
                    ok, wit = False, (a, x, y)
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("a(xy)=(ax)y", ok, wit)

    ok, wit = True, None
    for x in range(ni):
        for a in range(na):
            for y in range(ni):
                acc = {}
                for z, c in gr.get((x, a), ()):
                    for w, c2 in gmi.get((z, y), ()):
                        acc[w] = acc.get(w, 0) + c * c2
                for z, c in gl.get((a, y), ()):
                    for w, c2 in gmi.get((x, z), ()):
                        acc[w] = acc.get(w, 0) - c * c2
                if not _diff_is_zero(field, acc):
                    ok, wit = False, (x, a, y)
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("(xa)y=x(ay)", ok, wit)

    ok, wit = True, None
    for x in range(ni):
        for y in range(ni):
            for a in range(na):
                acc = {}
                for z, c in gmi.get((x, y), ()):
                    for w, c2 in gr.get((z, a), ()):
                        acc[w] = acc.get(w, 0) + c * c2
                for z, c in gr.get((y, a), ()):
                    for w, c2 in gmi.get((x, z), ()):
                        acc[w] = acc.get(w, 0) - c * c2
                if not _diff_is_zero(field, acc):
                    ok, wit = False, (x, y, a)
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("(xy)a=x(ya)", ok, wit)
    return report


def build_dorroh_algebra(pair: DorrohPairAlgebra) -> Algebra:
    """The extension with multiplication (a,x)(b,y) = (ab, ay+xb+xy)."""
    pair.require_valid()
    na = pair.A.dim
    n = na + pair.I.dim
    field = pair.field
    entries = {}
    for (i, j, k), c in pair.A.mul.entries.items():
        entries[(i, j, k)] = c
    for (a, x, y), c in pair.action.left.entries.items():
        entries[(a, na + x, na + y)] = c
    for (x, a, y), c in pair.action.right.entries.items():
        entries[(na + x, a, na + y)] = c
    for (x, y, z), c in pair.I.mul.entries.items():
        entries[(na + x, na + y, na + z)] = c
    mul = SparseTensor3((n, n, n), entries, field)

    labels = None
    if pair.A.labels is not None and pair.I.labels is not None:
        labels = list(pair.A.labels) + list(pair.I.labels)

    unit = None
    ua = pair.A.find_identity()
    if ua is not None:
        # unital pair: the A-unit must act as identity on I from both sides.
        padded = ua + [0] * pair.I.dim
        unital_action = all(
            pair.action.act_left(ua, pair.I.basis(x)) == pair.I.basis(x)
            and pair.action.act_right(pair.I.basis(x), ua) == pair.I.basis(x)
            for x in range(pair.I.dim)
        )
        if unital_action:
            unit = padded
    return Algebra(n, mul, field, labels=labels, unit=unit)


class AlgebraMorphism:
    def __init__(self, source: Algebra, target: Algebra, matrix: Matrix, verified="unchecked"):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise InputError("morphism matrix must be target_dim x source_dim")
        if matrix.field != source.field or source.field != target.field:
            raise InputError("morphism field mismatch")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.verified = verified

    def apply(self, vec):
        return self.matrix.apply(vec)

    def inverse(self) -> "AlgebraMorphism":
        inv = invert(self.matrix)
        if inv is None:
            raise PreconditionError("morphism matrix is singular")
        return AlgebraMorphism(self.target, self.source, inv, verified=self.verified)

    def __repr__(self):
        return f"AlgebraMorphism({self.source!r} -> {self.target!r}, {self.verified})"


def identity_morphism(a: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, Matrix.identity(a.dim, a.field))


def verify_algebra_morphism(F: AlgebraMorphism, iso: bool = False) -> Report:
    """Check F(e_i e_j) = F(e_i) F(e_j) on all basis pairs; optionally invertibility."""
    report = Report()
    src, tgt = F.source, F.target
    cols = F.matrix.columns()
    ok, wit = True, None
    for i in range(src.dim):
        for j in range(src.dim):
            img = F.apply(src.product(src.basis(i), src.basis(j)))
            direct = tgt.product(cols[i], cols[j])
            if img != direct:
                ok, wit = False, (i, j)
                break
        if not ok:
            break
    report.add("multiplicative", ok, wit)
    invertible = False
    if iso:
        invertible = F.matrix.rows == F.matrix.cols and invert(F.matrix) is not None
        report.add("invertible", invertible)
    if ok:
        if iso and invertible:
            F.verified = "iso"
        elif F.verified == "unchecked":
            F.verified = "hom"
    return report


def unital_ideal_iso(pair: DorrohPairAlgebra) -> AlgebraMorphism:
    """When I is unital, (a,x) -> (a, x + a 1_I) maps A|xI onto A x I."""
    one_i = pair.I.find_identity()
    if one_i is None:
        raise PreconditionError("I has no identity")
    pair.require_valid()
    na, ni = pair.A.dim, pair.I.dim
    field = pair.field

    balance = Report()
    ok, wit = True, None
    for a in range(na):
        ea = pair.A.basis(a)
        if pair.action.act_left(ea, one_i) != pair.action.act_right(one_i, ea):
            ok, wit = False, (a,)
            break
    balance.add("a.1_I=1_I.a", ok, wit)
    if not balance.ok:
        raise ValidationFailure(balance, "central identity condition failed")

    source = build_dorroh_algebra(pair)
    target = build_dorroh_algebra(direct_product_pair(pair.A, pair.I))
    cols = []
    for a in range(na):
        shift = pair.action.act_left(pair.A.basis(a), one_i)
        cols.append(pair.A.basis(a) + shift)
    for x in range(ni):
        cols.append([0] * na + pair.I.basis(x))
    eta = AlgebraMorphism(source, target, Matrix.from_columns(cols, field))
    report = verify_algebra_morphism(eta, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "unital ideal isomorphism failed verification")
    return eta


def direct_product_pair(A: Algebra, B: Algebra) -> DorrohPairAlgebra:
    """(A, B) with zero actions; its extension is the direct product algebra."""
    field = A.field
    action = BimoduleAction(
        A,
        B.dim,
        SparseTensor3.zero((A.dim, B.dim, B.dim), field),
        SparseTensor3.zero((B.dim, A.dim, B.dim), field),
    )
    return DorrohPairAlgebra(A, B, action)


def split_algebra_extension(B: Algebra, a_basis, i_basis):
    """Recover the Dorroh pair carried by a splitting B = span(a_basis) + span(i_basis).

    Verifies the A-span is a subalgebra and the I-span an ideal, reads the
    structure constants off products in B, and returns the pair together
    with the verified isomorphism A|xI -> B, (a,x) -> a + x.
    """
    field = B.field
    na, ni = len(a_basis), len(i_basis)
    if na + ni != B.dim:
        raise InputError("bases do not span a direct sum: wrong total size")
    S = Matrix.from_columns(list(a_basis) + list(i_basis), field)
    if S.rows != B.dim:
        raise InputError("basis vectors must live in B")
    Sinv = invert(S)
    if Sinv is None:
        raise InputError("bases do not span a direct sum: dependent vectors")

    split_cols = S.columns()

    def coords(u, v):
        return Sinv.apply(B.product(split_cols[u], split_cols[v]))

    closure = Report()
    mul_a = {}
    ok, wit = True, None
    for i in range(na):
        for j in range(na):
            w = coords(i, j)
            if any(w[na + x] != 0 for x in range(ni)):
                ok, wit = False, (i, j)
                break
            for k in range(na):
                if w[k]:
                    mul_a[(i, j, k)] = w[k]
        if not ok:
            break
    closure.add("A_closed", ok, wit)
    if not closure.ok:
        raise ValidationFailure(closure, "A-span is not closed under multiplication")

    ideal = Report()
    left = {}
    right = {}
    mul_i = {}
    ok, wit = True, None
    for u in range(na):
        for x in range(ni):
            w = coords(u, na + x)
            if any(w[k] != 0 for k in range(na)):
                ok, wit = False, (u, na + x)
                break
            for y in range(ni):
                if w[na + y]:
                    left[(u, x, y)] = w[na + y]
        if not ok:
            break
    if ok:
        for x in range(ni):
            for u in range(na):
                w = coords(na + x, u)
                if any(w[k] != 0 for k in range(na)):
                    ok, wit = False, (na + x, u)
                    break
                for y in range(ni):
                    if w[na + y]:
                        right[(x, u, y)] = w[na + y]
            if not ok:
                break
    if ok:
        for x in range(ni):
            for y in range(ni):
                w = coords(na + x, na + y)
                if any(w[k] != 0 for k in range(na)):
                    ok, wit = False, (na + x, na + y)
                    break
                for z in range(ni):
                    if w[na + z]:
                        mul_i[(x, y, z)] = w[na + z]
            if not ok:
                break
    ideal.add("I_ideal", ok, wit)
    if not ideal.ok:
        raise ValidationFailure(ideal, "I-span is not an ideal")

    A = Algebra(na, SparseTensor3((na, na, na), mul_a, field), field)
    I = Algebra(ni, SparseTensor3((ni, ni, ni), mul_i, field), field)
    action = BimoduleAction(
        A,
        ni,
        SparseTensor3((na, ni, ni), left, field),
        SparseTensor3((ni, na, ni), right, field),
    )
    pair = DorrohPairAlgebra(A, I, action)
    pair.require_valid()

    iso = AlgebraMorphism(build_dorroh_algebra(pair), B, S)
    report = verify_algebra_morphism(iso, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "split isomorphism failed verification")
    return pair, iso


def universal_map_algebra(
    pair: DorrohPairAlgebra, B: Algebra, phi: AlgebraMorphism, f: AlgebraMorphism
) -> AlgebraMorphism:
    """The unique map A|xI -> B with eta(a,i) = phi(a) + f(i), given a Dorroh
    homomorphism (phi, f)."""
    if phi.verified not in ("hom", "iso") or f.verified not in ("hom", "iso"):
        raise PreconditionError("phi and f must be verified homomorphisms")
    if phi.source != pair.A or f.source != pair.I or phi.target != B or f.target != B:
        raise InputError("phi must map A to B and f must map I to B")
    pair.require_valid()
    na, ni = pair.A.dim, pair.I.dim
    phi_cols = phi.matrix.columns()
    f_cols = f.matrix.columns()

    conds = Report()
    ok, wit = True, None
    for a in range(na):
        for x in range(ni):
            ax = pair.action.act_left(pair.A.basis(a), pair.I.basis(x))
            if f.apply(ax) != B.product(phi_cols[a], f_cols[x]):
                ok, wit = False, (a, x)
                break
        if not ok:
            break
    conds.add("f(ax)=phi(a)f(x)", ok, wit)
    ok, wit = True, None
    for x in range(ni):
        for a in range(na):
            xa = pair.action.act_right(pair.I.basis(x), pair.A.basis(a))
            if f.apply(xa) != B.product(f_cols[x], phi_cols[a]):
                ok, wit = False, (x, a)
                break
        if not ok:
            break
    conds.add("f(xa)=f(x)phi(a)", ok, wit)
    if not conds.ok:
        raise ValidationFailure(conds, "not a Dorroh homomorphism")

    source = build_dorroh_algebra(pair)
    eta = AlgebraMorphism(source, B, Matrix.from_columns(phi_cols + f_cols, pair.field))
    report = verify_algebra_morphism(eta)
    if not report.ok:
        raise ValidationFailure(report, "universal map failed verification")
    assert [eta.matrix.column(j) for j in range(na)] == phi_cols
    assert [eta.matrix.column(na + j) for j in range(ni)] == f_cols
    return eta


class ModuleOverAlgebra:
    """A left/right/bi module by action structure constants.

    ``left`` (a,m,m') -> c: e_a . v_m contains c v_{m'};
    ``right`` (m,a,m') -> c: v_m . e_a contains c v_{m'}.
    """

    def __init__(self, algebra: Algebra, dim: int, side: str, left=None, right=None):
        if side not in SIDES:
            raise InputError(f"side must be one of {SIDES}")
        na = algebra.dim
        if side in (LEFT, BI):
            if left is None or left.dims != (na, dim, dim):
                raise InputError("left action tensor missing or mis-shaped")
        elif left is not None:
            raise InputError("right module cannot carry a left action")
        if side in (RIGHT, BI):
            if right is None or right.dims != (dim, na, dim):
                raise InputError("right action tensor missing or mis-shaped")
        elif right is not None:
            raise InputError("left module cannot carry a right action")
        self.algebra = algebra
        self.dim = dim
        self.side = side
        self.left = left
        self.right = right

    def validate(self) -> Report:
        report = Report()
        field = self.algebra.field
        na = self.algebra.dim
        nm = self.dim
        gm = self.algebra.mul.by_first_two()
        if self.left is not None:
            gl = self.left.by_first_two()
            ok, wit = True, None
            for a in range(na):
                for b in range(na):
                    for m in range(nm):
                        acc = {}
                        for l, c in gm.get((a, b), ()):
                            for m2, c2 in gl.get((l, m), ()):
                                acc[m2] = acc.get(m2, 0) + c * c2
                        for z, c in gl.get((b, m), ()):
                            for m2, c2 in gl.get((a, z), ()):
                                acc[m2] = acc.get(m2, 0) - c * c2
                        if not _diff_is_zero(field, acc):
                            ok, wit = False, (a, b, m)
                            break
                    if not ok:
                        break
                if not ok:
                    break
            report.add("(ab)m=a(bm)", ok, wit)
        if self.right is not None:
            gr = self.right.by_first_two()
            ok, wit = True, None
            for m in range(nm):
                for a in range(na):
                    for b in range(na):
                        acc = {}
                        for l, c in gm.get((a, b), ()):
                            for m2, c2 in gr.get((m, l), ()):
                                acc[m2] = acc.get(m2, 0) + c * c2
                        for z, c in gr.get((m, a), ()):
                            for m2, c2 in gr.get((z, b), ()):
                                acc[m2] = acc.get(m2, 0) - c * c2
                        if not _diff_is_zero(field, acc):
                            ok, wit = False, (m, a, b)
                            break
                    if not ok:
                        break
                if not ok:
                    break
            report.add("m(ab)=(ma)b", ok, wit)
        if self.side == BI:
            gl = self.left.by_first_two()
            gr = self.right.by_first_two()
            ok, wit = True, None
            for a in range(na):
                for m in range(nm):
                    for b in range(na):
                        acc = {}
                        for z, c in gl.get((a, m), ()):
                            for m2, c2 in gr.get((z, b), ()):
                                acc[m2] = acc.get(m2, 0) + c * c2
                        for z, c in gr.get((m, b), ()):
                            for m2, c2 in gl.get((a, z), ()):
                                acc[m2] = acc.get(m2, 0) - c * c2
                        if not _diff_is_zero(field, acc):
                            ok, wit = False, (a, m, b)
                            break
                    if not ok:
                        break
                if not ok:
                    break
            report.add("(am)b=a(mb)", ok, wit)
        return report


def regular_bimodule(a: Algebra) -> ModuleOverAlgebra:
    """A acting on itself by multiplication."""
    left = SparseTensor3(a.mul.dims, dict(a.mul.entries), a.field)
    right = SparseTensor3(a.mul.dims, dict(a.mul.entries), a.field)
    return ModuleOverAlgebra(a, a.dim, BI, left=left, right=right)


def assemble_module(
    pair: DorrohPairAlgebra, m_a: ModuleOverAlgebra, m_i: ModuleOverAlgebra, side: str
) -> ModuleOverAlgebra:
    """Glue an A-module and an I-module on one carrier into an A|xI-module
    with (a,x)m = am + xm, after checking the compatibility identities."""
    if side not in SIDES:
        raise InputError(f"side must be one of {SIDES}")
    if m_a.side != side or m_i.side != side:
        raise InputError("component modules must share the requested side")
    if m_a.dim != m_i.dim:
        raise InputError("component modules must share a carrier dimension")
    if m_a.algebra != pair.A or m_i.algebra != pair.I:
        raise InputError("modules must be over the pair's A and I")
    pair.require_valid()
    field = pair.field
    na, ni, nm = pair.A.dim, pair.I.dim, m_a.dim

    report = Report()
    report.merge(m_a.validate(), prefix="A-module:")
    report.merge(m_i.validate(), prefix="I-module:")
    gl_pair = pair.action.left.by_first_two()
    gr_pair = pair.action.right.by_first_two()

    if side in (LEFT, BI):
        gla = m_a.left.by_first_two()
        gli = m_i.left.by_first_two()
        ok, wit = True, None
        for a in range(na):
            for x in range(ni):
                for m in range(nm):
                    acc = {}
                    for z, c in gli.get((x, m), ()):
                        for m2, c2 in gla.get((a, z), ()):
                            acc[m2] = acc.get(m2, 0) + c * c2
                    for y, c in gl_pair.get((a, x), ()):
                        for m2, c2 in gli.get((y, m), ()):
                            acc[m2] = acc.get(m2, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (a, x, m)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("a(xm)=(ax)m", ok, wit)

        ok, wit = True, None
        for x in range(ni):
            for a in range(na):
                for m in range(nm):
                    acc = {}
                    for z, c in gla.get((a, m), ()):
                        for m2, c2 in gli.get((x, z), ()):
                            acc[m2] = acc.get(m2, 0) + c * c2
                    for y, c in gr_pair.get((x, a), ()):
                        for m2, c2 in gli.get((y, m), ()):
                            acc[m2] = acc.get(m2, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (x, a, m)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("x(am)=(xa)m", ok, wit)

    if side in (RIGHT, BI):
        gra = m_a.right.by_first_two()
        gri = m_i.right.by_first_two()
        ok, wit = True, None
        for m in range(nm):
            for x in range(ni):
                for a in range(na):
                    acc = {}
                    for z, c in gri.get((m, x), ()):
                        for m2, c2 in gra.get((z, a), ()):
                            acc[m2] = acc.get(m2, 0) + c * c2
                    for y, c in gr_pair.get((x, a), ()):
                        for m2, c2 in gri.get((m, y), ()):
                            acc[m2] = acc.get(m2, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (m, x, a)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("(mx)a=m(xa)", ok, wit)

        ok, wit = True, None
        for m in range(nm):
            for a in range(na):
                for x in range(ni):
                    acc = {}
                    for z, c in gra.get((m, a), ()):
                        for m2, c2 in gri.get((z, x), ()):
                            acc[m2] = acc.get(m2, 0) + c * c2
                    for y, c in gl_pair.get((a, x), ()):
                        for m2, c2 in gri.get((m, y), ()):
                            acc[m2] = acc.get(m2, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (m, a, x)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("(ma)x=m(ax)", ok, wit)

    if side == BI:
        gla = m_a.left.by_first_two()
        gli = m_i.left.by_first_two()
        gra = m_a.right.by_first_two()
        gri = m_i.right.by_first_two()
        ok, wit = True, None
        for a in range(na):
            for m in range(nm):
                for x in range(ni):
                    acc = {}
                    for z, c in gla.get((a, m), ()):
                        for m2, c2 in gri.get((z, x), ()):
                            acc[m2] = acc.get(m2, 0) + c * c2
                    for z, c in gri.get((m, x), ()):
                        for m2, c2 in gla.get((a, z), ()):
                            acc[m2] = acc.get(m2, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (a, m, x)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("(am)x=a(mx)", ok, wit)

        ok, wit = True, None
        for x in range(ni):
            for m in range(nm):
                for a in range(na):
                    acc = {}
                    for z, c in gli.get((x, m), ()):
                        for m2, c2 in gra.get((z, a), ()):
                            acc[m2] = acc.get(m2, 0) + c * c2
                    for z, c in gra.get((m, a), ()):
                        for m2, c2 in gli.get((x, z), ()):
                            acc[m2] = acc.get(m2, 0) - c * c2
                    if not _diff_is_zero(field, acc):
                        ok, wit = False, (x, m, a)
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("(xm)a=x(ma)", ok, wit)

    if not report.ok:
        raise ValidationFailure(report, "module compatibility failed")

    built = build_dorroh_algebra(pair)
    left = right = None
    if side in (LEFT, BI):
        entries = dict(m_a.left.entries)
        for (x, m, m2), c in m_i.left.entries.items():
            entries[(na + x, m, m2)] = c
        left = SparseTensor3((built.dim, nm, nm), entries, field)
    if side in (RIGHT, BI):
        entries = dict(m_a.right.entries)
        for (m, x, m2), c in m_i.right.entries.items():
            entries[(m, na + x, m2)] = c
        right = SparseTensor3((nm, built.dim, nm), entries, field)
    return ModuleOverAlgebra(built, nm, side, left=left, right=right)


def check_iterated_algebra_triple(
    a1: Algebra,
    a2: Algebra,
    a3: Algebra,
    act12: BimoduleAction,
    act13: BimoduleAction,
    act23: BimoduleAction,
):
    """Conditions for (A1|xA2, A3) to be a Dorroh pair, and on success the
    associator isomorphism (A1|xA2)|xA3 -> A1|x(A2|xA3)."""
    pair12 = DorrohPairAlgebra(a1, a2, act12)
    pair12.require_valid()
    field = a1.field
    n1, n2, n3 = a1.dim, a2.dim, a3.dim

    report = Report()
    report.merge(check_dorroh_pair_algebra(DorrohPairAlgebra(a1, a3, act13)), prefix="A1A3:")
    report.merge(check_dorroh_pair_algebra(DorrohPairAlgebra(a2, a3, act23)), prefix="A2A3:")

    gl12 = act12.left.by_first_two()
    gr12 = act12.right.by_first_two()
    gl13 = act13.left.by_first_two()
    gr13 = act13.right.by_first_two()
    gl23 = act23.left.by_first_two()
    gr23 = act23.right.by_first_two()

    def scan(name, ranges, lhs, rhs):
        ok, wit = True, None
        for idx in itertools.product(*(range(r) for r in ranges)):
            acc = {}
            for k, v in lhs(*idx):
                acc[k] = acc.get(k, 0) + v
            for k, v in rhs(*idx):
                acc[k] = acc.get(k, 0) - v
            if not _diff_is_zero(field, acc):
                ok, wit = False, idx
                break
        report.add(name, ok, wit)

    scan(
        "(a1.a3)a2=a1(a3.a2)",
        (n1, n3, n2),
        lambda a, x, b: (
            (y, c * c2) for z, c in gl13.get((a, x), ()) for y, c2 in gr23.get((z, b), ())
        ),
        lambda a, x, b: (
            (y, c * c2) for z, c in gr23.get((x, b), ()) for y, c2 in gl13.get((a, z), ())
        ),
    )
    scan(
        "(a2.a3)a1=a2(a3.a1)",
        (n2, n3, n1),
        lambda b, x, a: (
            (y, c * c2) for z, c in gl23.get((b, x), ()) for y, c2 in gr13.get((z, a), ())
        ),
        lambda b, x, a: (
            (y, c * c2) for z, c in gr13.get((x, a), ()) for y, c2 in gl23.get((b, z), ())
        ),
    )
    scan(
        "a1(a2a3)=(a1a2)a3",
        (n1, n2, n3),
        lambda a, b, x: (
            (y, c * c2) for z, c in gl23.get((b, x), ()) for y, c2 in gl13.get((a, z), ())
        ),
        lambda a, b, x: (
            (y, c * c2) for w, c in gl12.get((a, b), ()) for y, c2 in gl23.get((w, x), ())
        ),
    )
    scan(
        "a2(a1a3)=(a2a1)a3",
        (n2, n1, n3),
        lambda b, a, x: (
            (y, c * c2) for z, c in gl13.get((a, x), ()) for y, c2 in gl23.get((b, z), ())
        ),
        lambda b, a, x: (
            (y, c * c2) for w, c in gr12.get((b, a), ()) for y, c2 in gl23.get((w, x), ())
        ),
    )
    scan(
        "(a3a2)a1=a3(a2a1)",
        (n3, n2, n1),
        lambda x, b, a: (
            (y, c * c2) for z, c in gr23.get((x, b), ()) for y, c2 in gr13.get((z, a), ())
        ),
        lambda x, b, a: (
            (y, c * c2) for w, c in gr12.get((b, a), ()) for y, c2 in gr23.get((x, w), ())
        ),
    )
    scan(
        "(a3a1)a2=a3(a1a2)",
        (n3, n1, n2),
        lambda x, a, b: (
            (y, c * c2) for z, c in gr13.get((x, a), ()) for y, c2 in gr23.get((z, b), ())
        ),
        lambda x, a, b: (
            (y, c * c2) for w, c in gl12.get((a, b), ()) for y, c2 in gr23.get((x, w), ())
        ),
    )

    if not report.ok:
        return report, None

    b12 = build_dorroh_algebra(pair12)
    left_entries = dict(act13.left.entries)
    for (b, x, y), c in act23.left.entries.items():
        left_entries[(n1 + b, x, y)] = c
    right_entries = dict(act13.right.entries)
    for (x, b, y), c in act23.right.entries.items():
        right_entries[(x, n1 + b, y)] = c
    act_12_3 = BimoduleAction(
        b12,
        n3,
        SparseTensor3((n1 + n2, n3, n3), left_entries, field),
        SparseTensor3((n3, n1 + n2, n3), right_entries, field),
    )
    pair_left = DorrohPairAlgebra(b12, a3, act_12_3)
    report.merge(pair_left.validate(), prefix="left-bracketing:")

    b23 = build_dorroh_algebra(DorrohPairAlgebra(a2, a3, act23))
    left_entries = dict(act12.left.entries)
    for (a, x, y), c in act13.left.entries.items():
        left_entries[(a, n2 + x, n2 + y)] = c
    right_entries = dict(act12.right.entries)
    for (x, a, y), c in act13.right.entries.items():
        right_entries[(n2 + x, a, n2 + y)] = c
    act_1_23 = BimoduleAction(
        a1,
        n2 + n3,
        SparseTensor3((n1, n2 + n3, n2 + n3), left_entries, field),
        SparseTensor3((n2 + n3, n1, n2 + n3), right_entries, field),
    )
    pair_right = DorrohPairAlgebra(a1, b23, act_1_23)
    report.merge(pair_right.validate(), prefix="right-bracketing:")
    if not report.ok:
        return report, None

    associator = AlgebraMorphism(
        build_dorroh_algebra(pair_left),
        build_dorroh_algebra(pair_right),
        Matrix.identity(n1 + n2 + n3, field),
    )
    report.merge(verify_algebra_morphism(associator, iso=True), prefix="associator:")
    return report, associator
