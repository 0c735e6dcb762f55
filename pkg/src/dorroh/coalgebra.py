"""Coalgebras by structure constants and their Dorroh extensions.

Conventions:
  * ``delta`` entry (k,i,j) -> c means Delta(e_k) contains c e_i (x) e_j.
  * Coactions on a carrier P: ``rho_l`` (x,c,y) -> a means rho_l(f_x)
    contains a e_c (x) f_y; ``rho_r`` (x,y,c) -> a means rho_r(f_x)
    contains a f_y (x) e_c.
  * Extensions order the basis C-block first, then P-block; the
    comultiplication of the extension restricted to the P-block carries
    the rho_l, rho_r and Delta_P terms.

Coalgebras need not be counital; a coideal is a subspace P with
Delta(P) inside D(x)P + P(x)D (the non-counital sense, which keeps the
P(x)P term available).
"""

from __future__ import annotations

from .errors import InputError, PreconditionError, ValidationFailure
from .fields import FieldSpec
from .linalg import Matrix, invert, solve_linear
from .reports import Report
from .tensors import SparseTensor3, accumulate

LEFT = "left"
RIGHT = "right"
BI = "bi"
SIDES = (LEFT, RIGHT, BI)


def _diff_is_zero(field, acc):
    for v in acc.values():
        if field.canon(v) != 0:
            return False
    return True


class Coalgebra:
    def __init__(self, dim, delta: SparseTensor3, field: FieldSpec, labels=None, counit=None):
        if delta.dims != (dim, dim, dim):
            raise InputError(f"delta tensor dims {delta.dims} do not match dim {dim}")
        if delta.field != field:
            raise InputError("delta tensor field mismatch")
        if labels is not None and len(labels) != dim:
            raise InputError("label count must equal dim")
        self.dim = dim
        self.delta = delta
        self.field = field
        self.labels = list(labels) if labels is not None else None
        self._counit = "unset"
        if counit is not None:
            counit = [field.canon(c) for c in counit]
            if not self._is_counit_vector(counit):
                raise InputError("cached counit fails the counit law")
            self._counit = counit

    def basis(self, i):
        v = [0] * self.dim
        v[i] = 1
        return v

    def coproduct(self, x):
        """Delta of a coordinate vector, as a dict (i,j) -> coefficient."""
        acc = {}
        for (k, i, j), c in self.delta.entries.items():
            xk = x[k]
            if xk:
                key = (i, j)
                acc[key] = acc.get(key, 0) + xk * c
        canon = self.field.canon
        return {k: cv for k, v in acc.items() if (cv := canon(v)) != 0}

    def _is_counit_vector(self, eps):
        canon = self.field.canon
        for k in range(self.dim):
            lhs = [0] * self.dim
            rhs = [0] * self.dim
            for (kk, i, j), c in self.delta.entries.items():
                if kk == k:
                    lhs[j] += eps[i] * c
                    rhs[i] += eps[j] * c
            e = self.basis(k)
            if [canon(v) for v in lhs] != e or [canon(v) for v in rhs] != e:
                return False
        return True

    def find_counit(self):
        """The unique counit functional in dual coordinates, or None.  Cached."""
        if self._counit != "unset":
            return self._counit
        n = self.dim
        if n == 0:
            self._counit = None
            return None
        rows = []
        rhs = []
        # (eps (x) 1) Delta = id and (1 (x) eps) Delta = id, coordinatewise.
        for k in range(n):
            for j in range(n):
                rows.append([self.delta.get(k, i, j) for i in range(n)])
                rhs.append(1 if k == j else 0)
                rows.append([self.delta.get(k, j, i) for i in range(n)])
                rhs.append(1 if k == j else 0)
        sol = solve_linear(Matrix(len(rows), n, rows, self.field), rhs)
        self._counit = sol
        return sol

    @property
    def counital(self):
        return self.find_counit() is not None

    def __eq__(self, other):
        return (
            isinstance(other, Coalgebra)
            and self.dim == other.dim
            and self.field == other.field
            and self.delta == other.delta
        )

    def __repr__(self):
        return f"Coalgebra(dim={self.dim}, field={self.field!r})"


def check_coassociativity(c: Coalgebra) -> Report:
    """(Delta (x) 1) Delta = (1 (x) Delta) Delta on every basis element."""
    report = Report()
    g = c.delta.by_first()
    field = c.field
    for k in range(c.dim):
        acc = {}
        for i, j, v in g.get(k, ()):
            for a, b, v2 in g.get(i, ()):
                key = (a, b, j)
                acc[key] = acc.get(key, 0) + v * v2
            for b, e, v2 in g.get(j, ()):
                key = (i, b, e)
                acc[key] = acc.get(key, 0) - v * v2
        if not _diff_is_zero(field, acc):
            report.add("coassociativity", False, (k,))
            return report
    report.add("coassociativity", True)
    return report


def find_counit(c: Coalgebra):
    return c.find_counit()


class BicomoduleCoaction:
    """A coalgebra coacting on a carrier from both sides."""

    def __init__(self, coacting: Coalgebra, carrier_dim: int, rho_l: SparseTensor3, rho_r: SparseTensor3):
        nc = coacting.dim
        if rho_l.dims != (carrier_dim, nc, carrier_dim):
            raise InputError(f"rho_l dims {rho_l.dims} do not match ({carrier_dim},{nc},{carrier_dim})")
        if rho_r.dims != (carrier_dim, carrier_dim, nc):
            raise InputError(f"rho_r dims {rho_r.dims} do not match ({carrier_dim},{carrier_dim},{nc})")
        if rho_l.field != coacting.field or rho_r.field != coacting.field:
            raise InputError("coaction tensor field mismatch")
        self.coacting = coacting
        self.carrier_dim = carrier_dim
        self.rho_l = rho_l
        self.rho_r = rho_r

    def validate(self) -> Report:
        """Left/right comodule coassociativity and the bicomodule exchange."""
        report = Report()
        field = self.coacting.field
        gd = self.coacting.delta.by_first()
        gl = self.rho_l.by_first()
        gr = self.rho_r.by_first()

        ok, wit = True, None
        for x in range(self.carrier_dim):
            acc = {}
            for c, y, v in gl.get(x, ()):
                for c1, c2, v2 in gd.get(c, ()):
                    key = (c1, c2, y)
                    acc[key] = acc.get(key, 0) + v * v2
            for c1, z, v in gl.get(x, ()):
                for c2, y, v2 in gl.get(z, ()):
                    key = (c1, c2, y)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (x,)
                break
        report.add("(Delta(x)1)rho_l=(1(x)rho_l)rho_l", ok, wit)

        ok, wit = True, None
        for x in range(self.carrier_dim):
            acc = {}
            for z, c2, v in gr.get(x, ()):
                for y, c1, v2 in gr.get(z, ()):
                    key = (y, c1, c2)
                    acc[key] = acc.get(key, 0) + v * v2
            for y, c, v in gr.get(x, ()):
                for c1, c2, v2 in gd.get(c, ()):
                    key = (y, c1, c2)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (x,)
                break
        report.add("(rho_r(x)1)rho_r=(1(x)Delta)rho_r", ok, wit)

        ok, wit = True, None
        for x in range(self.carrier_dim):
            acc = {}
            for z, c, v in gr.get(x, ()):
                for cp, y, v2 in gl.get(z, ()):
                    key = (cp, y, c)
                    acc[key] = acc.get(key, 0) + v * v2
            for cp, z, v in gl.get(x, ()):
                for y, c, v2 in gr.get(z, ()):
                    key = (cp, y, c)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (x,)
                break
        report.add("(rho_l(x)1)rho_r=(1(x)rho_r)rho_l", ok, wit)
        return report


class DorrohPairCoalgebra:
    """A pair (C, P) with C coacting on the coalgebra P from both sides."""

    def __init__(self, C: Coalgebra, P: Coalgebra, coaction: BicomoduleCoaction):
        if coaction.coacting is not C and coaction.coacting != C:
            raise InputError("coaction must be a coaction of the pair's C")
        if coaction.carrier_dim != P.dim:
            raise InputError("coaction carrier does not match P")
        if C.field != P.field:
            raise InputError("pair components over different fields")
        self.C = C
        self.P = P
        self.coaction = coaction
        self._report = None

    @property
    def field(self):
        return self.C.field

    def validate(self) -> Report:
        if self._report is None:
            self._report = check_dorroh_pair_coalgebra(self)
        return self._report

    def require_valid(self):
        report = self.validate()
        if not report.ok:
            raise ValidationFailure(report, "not a Dorroh pair of coalgebras: " + report.headline())

    def __eq__(self, other):
        return (
            isinstance(other, DorrohPairCoalgebra)
            and self.C == other.C
            and self.P == other.P
            and self.coaction.rho_l == other.coaction.rho_l
            and self.coaction.rho_r == other.coaction.rho_r
        )


def check_dorroh_pair_coalgebra(pair: DorrohPairCoalgebra) -> Report:
    """Bicomodule axioms plus the three compatibility equations between
    the coactions and the comultiplication of P."""
    report = pair.coaction.validate()
    field = pair.field
    gp = pair.P.delta.by_first()
    gl = pair.coaction.rho_l.by_first()
    gr = pair.coaction.rho_r.by_first()
    np_ = pair.P.dim

    # sum p_1 (x) p_2(0) (x) p_2(1) = sum p_(0)1 (x) p_(0)2 (x) p_(1)
    ok, wit = True, None
    for x in range(np_):
        acc = {}
        for i, z, v in gp.get(x, ()):
            for j, c, v2 in gr.get(z, ()):
                key = (i, j, c)
                acc[key] = acc.get(key, 0) + v * v2
        for z, c, v in gr.get(x, ()):
            for i, j, v2 in gp.get(z, ()):
                key = (i, j, c)
                acc[key] = acc.get(key, 0) - v * v2
        if not _diff_is_zero(field, acc):
            ok, wit = False, (x,)
            break
    report.add("eq3", ok, wit)

    # sum p_1(-1) (x) p_1(0) (x) p_2 = sum p_(-1) (x) p_(0)1 (x) p_(0)2
    ok, wit = True, None
    for x in range(np_):
        acc = {}
        for z, j, v in gp.get(x, ()):
            for c, i, v2 in gl.get(z, ()):
                key = (c, i, j)
                acc[key] = acc.get(key, 0) + v * v2
        for c, z, v in gl.get(x, ()):
            for i, j, v2 in gp.get(z, ()):
                key = (c, i, j)
                acc[key] = acc.get(key, 0) - v * v2
        if not _diff_is_zero(field, acc):
            ok, wit = False, (x,)
            break
    report.add("eq4", ok, wit)

    # sum p_1(0) (x) p_1(1) (x) p_2 = sum p_1 (x) p_2(-1) (x) p_2(0)
    ok, wit = True, None
    for x in range(np_):
        acc = {}
        for z, j, v in gp.get(x, ()):
            for i, c, v2 in gr.get(z, ()):
                key = (i, c, j)
                acc[key] = acc.get(key, 0) + v * v2
        for i, z, v in gp.get(x, ()):
            for c, j, v2 in gl.get(z, ()):
                key = (i, c, j)
                acc[key] = acc.get(key, 0) - v * v2
        if not _diff_is_zero(field, acc):
            ok, wit = False, (x,)
            break
    report.add("eq5", ok, wit)
    return report


def build_dorroh_coalgebra(pair: DorrohPairCoalgebra) -> Coalgebra:
    """The extension whose Delta on the P-block is
    rho_l + rho_r + Delta_P, read blockwise."""
    pair.require_valid()
    nc = pair.C.dim
    n = nc + pair.P.dim
    field = pair.field
    entries = {}
    for (k, i, j), c in pair.C.delta.entries.items():
        entries[(k, i, j)] = c
    for (x, c, y), v in pair.coaction.rho_l.entries.items():
        entries[(nc + x, c, nc + y)] = v
    for (x, y, c), v in pair.coaction.rho_r.entries.items():
        entries[(nc + x, nc + y, c)] = v
    for (x, i, j), v in pair.P.delta.entries.items():
        entries[(nc + x, nc + i, nc + j)] = v
    delta = SparseTensor3((n, n, n), entries, field)

    labels = None
    if pair.C.labels is not None and pair.P.labels is not None:
        labels = list(pair.C.labels) + list(pair.P.labels)

    counit = None
    eps_c = pair.C.find_counit()
    if eps_c is not None and _bicomodule_is_counital(pair, eps_c):
        counit = eps_c + [0] * pair.P.dim
    return Coalgebra(n, delta, field, labels=labels, counit=counit)


def _bicomodule_is_counital(pair: DorrohPairCoalgebra, eps_c) -> bool:
    """sum eps_C(p_(-1)) p_(0) = p = sum p_(0) eps_C(p_(1)) for all basis p."""
    canon = pair.field.canon
    np_ = pair.P.dim
    for x in range(np_):
        lv = [0] * np_
        rv = [0] * np_
        for (xx, c, y), v in pair.coaction.rho_l.entries.items():
            if xx == x:
                lv[y] += eps_c[c] * v
        for (xx, y, c), v in pair.coaction.rho_r.entries.items():
            if xx == x:
                rv[y] += eps_c[c] * v
        e = pair.P.basis(x)
        if [canon(v) for v in lv] != e or [canon(v) for v in rv] != e:
            return False
    return True


class CoalgebraMorphism:
    def __init__(self, source: Coalgebra, target: Coalgebra, matrix: Matrix, verified="unchecked"):
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

    def inverse(self) -> "CoalgebraMorphism":
        inv = invert(self.matrix)
        if inv is None:
            raise PreconditionError("morphism matrix is singular")
        return CoalgebraMorphism(self.target, self.source, inv, verified=self.verified)

    def __repr__(self):
        return f"CoalgebraMorphism({self.source!r} -> {self.target!r}, {self.verified})"


def identity_comorphism(c: Coalgebra) -> CoalgebraMorphism:
    return CoalgebraMorphism(c, c, Matrix.identity(c.dim, c.field))


def verify_coalgebra_morphism(F: CoalgebraMorphism, iso: bool = False) -> Report:
    """Check Delta(F(e_k)) = (F (x) F)(Delta(e_k)) basiswise; optionally invertibility."""
    report = Report()
    src, tgt = F.source, F.target
    field = src.field
    cols = F.matrix.columns()
    gsrc = src.delta.by_first()
    ok, wit = True, None
    for k in range(src.dim):
        acc = {}
        img = cols[k]
        for (d, a, b), v in tgt.delta.entries.items():
            vd = img[d]
            if vd:
                key = (a, b)
                acc[key] = acc.get(key, 0) + vd * v
        for i, j, v in gsrc.get(k, ()):
            ci, cj = cols[i], cols[j]
            for a in range(tgt.dim):
                va = ci[a]
                if va:
                    for b in range(tgt.dim):
                        vb = cj[b]
                        if vb:
                            key = (a, b)
                            acc[key] = acc.get(key, 0) - v * va * vb
        if not _diff_is_zero(field, acc):
            ok, wit = False, (k,)
            break
    report.add("comultiplicative", ok, wit)
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


def zero_coaction_pair(C: Coalgebra, P: Coalgebra) -> DorrohPairCoalgebra:
    """(C, P) with zero coactions; its extension is the direct product coalgebra."""
    field = C.field
    coaction = BicomoduleCoaction(
        C,
        P.dim,
        SparseTensor3.zero((P.dim, C.dim, P.dim), field),
        SparseTensor3.zero((P.dim, P.dim, C.dim), field),
    )
    return DorrohPairCoalgebra(C, P, coaction)


def counit_balance_check(pair: DorrohPairCoalgebra, eps_p) -> Report:
    """sum p_(-1) eps_P(p_(0)) = sum eps_P(p_(0)) p_(1) for every basis p."""
    eps_p = [pair.field.canon(v) for v in eps_p]
    if len(eps_p) != pair.P.dim or not pair.P._is_counit_vector(eps_p):
        raise PreconditionError("eps_P is not a counit of P")
    report = Report()
    canon = pair.field.canon
    nc = pair.C.dim
    ok, wit = True, None
    for x in range(pair.P.dim):
        lhs = [0] * nc
        rhs = [0] * nc
        for (xx, c, y), v in pair.coaction.rho_l.entries.items():
            if xx == x:
                lhs[c] += v * eps_p[y]
        for (xx, y, c), v in pair.coaction.rho_r.entries.items():
            if xx == x:
                rhs[c] += v * eps_p[y]
        if [canon(v) for v in lhs] != [canon(v) for v in rhs]:
            ok, wit = False, (x,)
            break
    report.add("sum p(-1)eps(p(0)) = sum eps(p(0))p(1)", ok, wit)
    return report


def counital_split_iso(pair: DorrohPairCoalgebra) -> CoalgebraMorphism:
    """When P is counital, zeta(c,p) = (c,p) - (sum p_(-1) eps_P(p_(0)), 0)
    maps C|xP onto the direct product C x P."""
    eps_p = pair.P.find_counit()
    if eps_p is None:
        raise PreconditionError("P has no counit")
    pair.require_valid()
    nc, np_ = pair.C.dim, pair.P.dim
    field = pair.field
    source = build_dorroh_coalgebra(pair)
    target = build_dorroh_coalgebra(zero_coaction_pair(pair.C, pair.P))
    cols = []
    for c in range(nc):
        cols.append(source.basis(c))
    for x in range(np_):
        col = [0] * (nc + np_)
        col[nc + x] = 1
        for (xx, cc, y), v in pair.coaction.rho_l.entries.items():
            if xx == x:
                col[cc] -= v * eps_p[y]
        cols.append([field.canon(v) for v in col])
    zeta = CoalgebraMorphism(source, target, Matrix.from_columns(cols, field))
    report = verify_coalgebra_morphism(zeta, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "counital split isomorphism failed verification")
    return zeta


def split_coalgebra_extension(D: Coalgebra, c_basis, p_basis):
    """Recover the Dorroh pair from a splitting D = span(c_basis) + span(p_basis).

    Requires the C-span to be a subcoalgebra and the P-span a coideal;
    extracts Delta_P, rho_l, rho_r by projecting Delta of D, and returns
    the pair with the verified isomorphism C|xP -> D, (c,p) -> c + p.
    """
    field = D.field
    nc, np_ = len(c_basis), len(p_basis)
    if nc + np_ != D.dim:
        raise InputError("bases do not span a direct sum: wrong total size")
    S = Matrix.from_columns(list(c_basis) + list(p_basis), field)
    if S.rows != D.dim:
        raise InputError("basis vectors must live in D")
    Sinv = invert(S)
    if Sinv is None:
        raise InputError("bases do not span a direct sum: dependent vectors")

    # Delta in split coordinates: Delta(s_k) = sum split[k][(a,b)] s_a (x) s_b.
    canon = field.canon
    split = []
    for k in range(D.dim):
        vec = S.column(k)
        acc = {}
        for (d, i, j), v in D.delta.entries.items():
            vd = vec[d]
            if vd:
                for a in range(D.dim):
                    ca = Sinv.data[a][i]
                    if ca:
                        for b in range(D.dim):
                            cb = Sinv.data[b][j]
                            if cb:
                                key = (a, b)
                                acc[key] = acc.get(key, 0) + vd * v * ca * cb
        split.append({key: cv for key, v in acc.items() if (cv := canon(v)) != 0})

    sub = Report()
    ok, wit = True, None
    for k in range(nc):
        if any(a >= nc or b >= nc for (a, b) in split[k]):
            ok, wit = False, (k,)
            break
    sub.add("C_subcoalgebra", ok, wit)
    if not sub.ok:
        raise ValidationFailure(sub, "C-span is not a subcoalgebra")

    coideal = Report()
    ok, wit = True, None
    for x in range(np_):
        if any(a < nc and b < nc for (a, b) in split[nc + x]):
            ok, wit = False, (x,)
            break
    coideal.add("P_coideal", ok, wit)
    if not coideal.ok:
        raise ValidationFailure(coideal, "P-span is not a coideal")

    delta_c = {}
    for k in range(nc):
        for (a, b), v in split[k].items():
            delta_c[(k, a, b)] = v
    delta_p = {}
    rho_l = {}
    rho_r = {}
    for x in range(np_):
        for (a, b), v in split[nc + x].items():
            if a < nc:
                rho_l[(x, a, b - nc)] = v
            elif b < nc:
                rho_r[(x, a - nc, b)] = v
            else:
                delta_p[(x, a - nc, b - nc)] = v

    C = Coalgebra(nc, SparseTensor3((nc, nc, nc), delta_c, field), field)
    P = Coalgebra(np_, SparseTensor3((np_, np_, np_), delta_p, field), field)
    coaction = BicomoduleCoaction(
        C,
        np_,
        SparseTensor3((np_, nc, np_), rho_l, field),
        SparseTensor3((np_, np_, nc), rho_r, field),
    )
    pair = DorrohPairCoalgebra(C, P, coaction)
    pair.require_valid()

    iso = CoalgebraMorphism(build_dorroh_coalgebra(pair), D, S)
    report = verify_coalgebra_morphism(iso, iso=True)
    if not report.ok:
        raise ValidationFailure(report, "split isomorphism failed verification")
    return pair, iso


def universal_map_coalgebra(
    pair: DorrohPairCoalgebra, D: Coalgebra, phi: CoalgebraMorphism, f: CoalgebraMorphism
) -> CoalgebraMorphism:
    """The unique map D -> C|xP with eta(d) = (phi(d), f(d)), given a Dorroh
    pair homomorphism (phi, f) from the regular pair (D, D)."""
    if phi.verified not in ("hom", "iso") or f.verified not in ("hom", "iso"):
        raise PreconditionError("phi and f must be verified homomorphisms")
    if phi.source != D or f.source != D or phi.target != pair.C or f.target != pair.P:
        raise InputError("phi must map D to C and f must map D to P")
    pair.require_valid()
    field = pair.field
    nc, np_, nd = pair.C.dim, pair.P.dim, D.dim
    phi_cols = phi.matrix.columns()
    f_cols = f.matrix.columns()
    gd = D.delta.by_first()
    gl = pair.coaction.rho_l.by_first()
    gr = pair.coaction.rho_r.by_first()

    conds = Report()
    ok, wit = True, None
    for d in range(nd):
        acc = {}
        fd = f_cols[d]
        for x in range(np_):
            vx = fd[x]
            if vx:
                for c, y, v in gl.get(x, ()):
                    key = (c, y)
                    acc[key] = acc.get(key, 0) + vx * v
        for i, j, v in gd.get(d, ()):
            pi, fj = phi_cols[i], f_cols[j]
            for c in range(nc):
                vc = pi[c]
                if vc:
                    for y in range(np_):
                        vy = fj[y]
                        if vy:
                            key = (c, y)
                            acc[key] = acc.get(key, 0) - v * vc * vy
        if not _diff_is_zero(field, acc):
            ok, wit = False, (d,)
            break
    conds.add("rho_l(f(d))=(phi(x)f)Delta(d)", ok, wit)

    ok, wit = True, None
    for d in range(nd):
        acc = {}
        fd = f_cols[d]
        for x in range(np_):
            vx = fd[x]
            if vx:
                for y, c, v in gr.get(x, ()):
                    key = (y, c)
                    acc[key] = acc.get(key, 0) + vx * v
        for i, j, v in gd.get(d, ()):
            fi, pj = f_cols[i], phi_cols[j]
            for y in range(np_):
                vy = fi[y]
                if vy:
                    for c in range(nc):
                        vc = pj[c]
                        if vc:
                            key = (y, c)
                            acc[key] = acc.get(key, 0) - v * vy * vc
        if not _diff_is_zero(field, acc):
            ok, wit = False, (d,)
            break
    conds.add("rho_r(f(d))=(f(x)phi)Delta(d)", ok, wit)
    if not conds.ok:
        raise ValidationFailure(conds, "not a Dorroh pair homomorphism")

    target = build_dorroh_coalgebra(pair)
    cols = [phi_cols[d] + f_cols[d] for d in range(nd)]
    eta = CoalgebraMorphism(D, target, Matrix.from_columns(cols, field))
    report = verify_coalgebra_morphism(eta)
    if not report.ok:
        raise ValidationFailure(report, "universal map failed verification")
    assert [eta.matrix.column(d)[:nc] for d in range(nd)] == phi_cols
    assert [eta.matrix.column(d)[nc:] for d in range(nd)] == f_cols
    return eta


class ComoduleOverCoalgebra:
    """A left/right/bi comodule by coaction structure constants.

    ``rho_l`` (m,c,m') -> a: rho_l(v_m) contains a e_c (x) v_{m'};
    ``rho_r`` (m,m',c) -> a: rho_r(v_m) contains a v_{m'} (x) e_c.
    """

    def __init__(self, coalgebra: Coalgebra, dim: int, side: str, rho_l=None, rho_r=None):
        if side not in SIDES:
            raise InputError(f"side must be one of {SIDES}")
        nc = coalgebra.dim
        if side in (LEFT, BI):
            if rho_l is None or rho_l.dims != (dim, nc, dim):
                raise InputError("rho_l tensor missing or mis-shaped")
        elif rho_l is not None:
            raise InputError("right comodule cannot carry a left coaction")
        if side in (RIGHT, BI):
            if rho_r is None or rho_r.dims != (dim, dim, nc):
                raise InputError("rho_r tensor missing or mis-shaped")
        elif rho_r is not None:
            raise InputError("left comodule cannot carry a right coaction")
        self.coalgebra = coalgebra
        self.dim = dim
        self.side = side
        self.rho_l = rho_l
        self.rho_r = rho_r

    def validate(self) -> Report:
        report = Report()
        field = self.coalgebra.field
        gd = self.coalgebra.delta.by_first()
        if self.rho_l is not None:
            gl = self.rho_l.by_first()
            ok, wit = True, None
            for m in range(self.dim):
                acc = {}
                for c, m1, v in gl.get(m, ()):
                    for c1, c2, v2 in gd.get(c, ()):
                        key = (c1, c2, m1)
                        acc[key] = acc.get(key, 0) + v * v2
                for c1, z, v in gl.get(m, ()):
                    for c2, m1, v2 in gl.get(z, ()):
                        key = (c1, c2, m1)
                        acc[key] = acc.get(key, 0) - v * v2
                if not _diff_is_zero(field, acc):
                    ok, wit = False, (m,)
                    break
            report.add("(Delta(x)1)rho_l=(1(x)rho_l)rho_l", ok, wit)
        if self.rho_r is not None:
            gr = self.rho_r.by_first()
            ok, wit = True, None
            for m in range(self.dim):
                acc = {}
                for z, c2, v in gr.get(m, ()):
                    for m1, c1, v2 in gr.get(z, ()):
                        key = (m1, c1, c2)
                        acc[key] = acc.get(key, 0) + v * v2
                for m1, c, v in gr.get(m, ()):
                    for c1, c2, v2 in gd.get(c, ()):
                        key = (m1, c1, c2)
                        acc[key] = acc.get(key, 0) - v * v2
                if not _diff_is_zero(field, acc):
                    ok, wit = False, (m,)
                    break
            report.add("(rho_r(x)1)rho_r=(1(x)Delta)rho_r", ok, wit)
        if self.side == BI:
            gl = self.rho_l.by_first()
            gr = self.rho_r.by_first()
            ok, wit = True, None
            for m in range(self.dim):
                acc = {}
                for z, c, v in gr.get(m, ()):
                    for cp, m1, v2 in gl.get(z, ()):
                        key = (cp, m1, c)
                        acc[key] = acc.get(key, 0) + v * v2
                for cp, z, v in gl.get(m, ()):
                    for m1, c, v2 in gr.get(z, ()):
                        key = (cp, m1, c)
                        acc[key] = acc.get(key, 0) - v * v2
                if not _diff_is_zero(field, acc):
                    ok, wit = False, (m,)
                    break
            report.add("(rho_l(x)1)rho_r=(1(x)rho_r)rho_l", ok, wit)
        return report


def regular_bicomodule(c: Coalgebra) -> ComoduleOverCoalgebra:
    """C coacting on itself by its comultiplication."""
    rho_l = SparseTensor3(c.delta.dims, dict(c.delta.entries), c.field)
    rho_r = SparseTensor3(c.delta.dims, dict(c.delta.entries), c.field)
    return ComoduleOverCoalgebra(c, c.dim, BI, rho_l=rho_l, rho_r=rho_r)


def assemble_comodule(
    pair: DorrohPairCoalgebra, com_c: ComoduleOverCoalgebra, com_p: ComoduleOverCoalgebra, side: str
) -> ComoduleOverCoalgebra:
    """Glue a C-comodule and a P-comodule on one carrier into a C|xP-comodule,
    after checking the mixed coassociativity identities."""
    if side not in SIDES:
        raise InputError(f"side must be one of {SIDES}")
    if com_c.side != side or com_p.side != side:
        raise InputError("component comodules must share the requested side")
    if com_c.dim != com_p.dim:
        raise InputError("component comodules must share a carrier dimension")
    if com_c.coalgebra != pair.C or com_p.coalgebra != pair.P:
        raise InputError("comodules must be over the pair's C and P")
    pair.require_valid()
    field = pair.field
    nm = com_c.dim
    nc, np_ = pair.C.dim, pair.P.dim

    report = Report()
    report.merge(com_c.validate(), prefix="C-comodule:")
    report.merge(com_p.validate(), prefix="P-comodule:")
    gl_pair = pair.coaction.rho_l.by_first()
    gr_pair = pair.coaction.rho_r.by_first()

    if side in (LEFT, BI):
        glc = com_c.rho_l.by_first()
        glp = com_p.rho_l.by_first()
        ok, wit = True, None
        for m in range(nm):
            acc = {}
            for x, m1, v in glp.get(m, ()):
                for c, m2, v2 in glc.get(m1, ()):
                    key = (x, c, m2)
                    acc[key] = acc.get(key, 0) + v * v2
            for z, m2, v in glp.get(m, ()):
                for x, c, v2 in gr_pair.get(z, ()):
                    key = (x, c, m2)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (m,)
                break
        report.add("(1(x)rho_l^C)rho_l^P=(rho_r(x)1)rho_l^P", ok, wit)

        ok, wit = True, None
        for m in range(nm):
            acc = {}
            for c, m1, v in glc.get(m, ()):
                for x, m2, v2 in glp.get(m1, ()):
                    key = (c, x, m2)
                    acc[key] = acc.get(key, 0) + v * v2
            for z, m2, v in glp.get(m, ()):
                for c, x, v2 in gl_pair.get(z, ()):
                    key = (c, x, m2)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (m,)
                break
        report.add("(1(x)rho_l^P)rho_l^C=(rho_l(x)1)rho_l^P", ok, wit)

    if side in (RIGHT, BI):
        grc = com_c.rho_r.by_first()
        grp = com_p.rho_r.by_first()
        ok, wit = True, None
        for m in range(nm):
            acc = {}
            for m1, x, v in grp.get(m, ()):
                for m2, c, v2 in grc.get(m1, ()):
                    key = (m2, c, x)
                    acc[key] = acc.get(key, 0) + v * v2
            for m2, z, v in grp.get(m, ()):
                for c, x, v2 in gl_pair.get(z, ()):
                    key = (m2, c, x)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (m,)
                break
        report.add("(rho_r^C(x)1)rho_r^P=(1(x)rho_l)rho_r^P", ok, wit)

        ok, wit = True, None
        for m in range(nm):
            acc = {}
            for m1, c, v in grc.get(m, ()):
                for m2, x, v2 in grp.get(m1, ()):
                    key = (m2, x, c)
                    acc[key] = acc.get(key, 0) + v * v2
            for m2, z, v in grp.get(m, ()):
                for x, c, v2 in gr_pair.get(z, ()):
                    key = (m2, x, c)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (m,)
                break
        report.add("(rho_r^P(x)1)rho_r^C=(1(x)rho_r)rho_r^P", ok, wit)

    if side == BI:
        glc = com_c.rho_l.by_first()
        glp = com_p.rho_l.by_first()
        grc = com_c.rho_r.by_first()
        grp = com_p.rho_r.by_first()
        ok, wit = True, None
        for m in range(nm):
            acc = {}
            for m1, x, v in grp.get(m, ()):
                for c, m2, v2 in glc.get(m1, ()):
                    key = (c, m2, x)
                    acc[key] = acc.get(key, 0) + v * v2
            for c, m1, v in glc.get(m, ()):
                for m2, x, v2 in grp.get(m1, ()):
                    key = (c, m2, x)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (m,)
                break
        report.add("(rho_l^C(x)1)rho_r^P=(1(x)rho_r^P)rho_l^C", ok, wit)

        ok, wit = True, None
        for m in range(nm):
            acc = {}
            for m1, c, v in grc.get(m, ()):
                for x, m2, v2 in glp.get(m1, ()):
                    key = (x, m2, c)
                    acc[key] = acc.get(key, 0) + v * v2
            for x, m1, v in glp.get(m, ()):
                for m2, c, v2 in grc.get(m1, ()):
                    key = (x, m2, c)
                    acc[key] = acc.get(key, 0) - v * v2
            if not _diff_is_zero(field, acc):
                ok, wit = False, (m,)
                break
        report.add("(rho_l^P(x)1)rho_r^C=(1(x)rho_r^C)rho_l^P", ok, wit)

    if not report.ok:
        raise ValidationFailure(report, "comodule compatibility failed")

    built = build_dorroh_coalgebra(pair)
    rho_l = rho_r = None
    if side in (LEFT, BI):
        entries = dict(com_c.rho_l.entries)
        for (m, x, m2), v in com_p.rho_l.entries.items():
            entries[(m, nc + x, m2)] = v
        rho_l = SparseTensor3((nm, built.dim, nm), entries, field)
    if side in (RIGHT, BI):
        entries = dict(com_c.rho_r.entries)
        for (m, m2, x), v in com_p.rho_r.entries.items():
            entries[(m, m2, nc + x)] = v
        rho_r = SparseTensor3((nm, nm, built.dim), entries, field)
    return ComoduleOverCoalgebra(built, nm, side, rho_l=rho_l, rho_r=rho_r)


def pushforward_pair(pair: DorrohPairCoalgebra, f: CoalgebraMorphism) -> DorrohPairCoalgebra:
    """Transport the coaction along a coalgebra map C -> D, giving the pair (D, P)."""
    if f.verified not in ("hom", "iso"):
        raise PreconditionError("f must be a verified coalgebra homomorphism")
    if f.source != pair.C:
        raise InputError("f must have source C")
    field = pair.field
    D = f.target
    np_ = pair.P.dim
    m = f.matrix
    rho_l = accumulate(
        (np_, D.dim, np_),
        (
            (x, d, y, v * m.data[d][c])
            for (x, c, y), v in pair.coaction.rho_l.entries.items()
            for d in range(D.dim)
            if m.data[d][c]
        ),
        field,
    )
    rho_r = accumulate(
        (np_, np_, D.dim),
        (
            (x, y, d, v * m.data[d][c])
            for (x, y, c), v in pair.coaction.rho_r.entries.items()
            for d in range(D.dim)
            if m.data[d][c]
        ),
        field,
    )
    out = DorrohPairCoalgebra(D, pair.P, BicomoduleCoaction(D, np_, rho_l, rho_r))
    out.require_valid()
    return out


def check_iterated_coalgebra_triple(
    c1: Coalgebra,
    c2: Coalgebra,
    c3: Coalgebra,
    co12: BicomoduleCoaction,
    co13: BicomoduleCoaction,
    co23: BicomoduleCoaction,
):
    """Conditions for (C1|xC2, C3) to be a Dorroh pair, and on success the
    coassociator isomorphism (C1|xC2)|xC3 -> C1|x(C2|xC3)."""
    pair12 = DorrohPairCoalgebra(c1, c2, co12)
    pair12.require_valid()
    field = c1.field
    n1, n2, n3 = c1.dim, c2.dim, c3.dim

    report = Report()
    report.merge(check_dorroh_pair_coalgebra(DorrohPairCoalgebra(c1, c3, co13)), prefix="C1C3:")
    report.merge(check_dorroh_pair_coalgebra(DorrohPairCoalgebra(c2, c3, co23)), prefix="C2C3:")

    gl12 = co12.rho_l.by_first()
    gr12 = co12.rho_r.by_first()
    gl13 = co13.rho_l.by_first()
    gr13 = co13.rho_r.by_first()
    gl23 = co23.rho_l.by_first()
    gr23 = co23.rho_r.by_first()

    def scan(name, lhs, rhs):
        ok, wit = True, None
        for d in range(n3):
            acc = {}
            for key, v in lhs(d):
                acc[key] = acc.get(key, 0) + v
            for key, v in rhs(d):
                acc[key] = acc.get(key, 0) - v
            if not _diff_is_zero(field, acc):
                ok, wit = False, (d,)
                break
        report.add(name, ok, wit)

    scan(
        "C1-C2-bicomodule",
        lambda d: (
            ((a, y, b), v * v2) for z, b, v in gr23.get(d, ()) for a, y, v2 in gl13.get(z, ())
        ),
        lambda d: (
            ((a, y, b), v * v2) for a, z, v in gl13.get(d, ()) for y, b, v2 in gr23.get(z, ())
        ),
    )
    scan(
        "C2-C1-bicomodule",
        lambda d: (
            ((b, y, a), v * v2) for z, a, v in gr13.get(d, ()) for b, y, v2 in gl23.get(z, ())
        ),
        lambda d: (
            ((b, y, a), v * v2) for b, z, v in gl23.get(d, ()) for y, a, v2 in gr13.get(z, ())
        ),
    )
    scan(
        "eq11",
        lambda d: (
            ((b, a, y), v * v2) for b, z, v in gl23.get(d, ()) for a, y, v2 in gl13.get(z, ())
        ),
        lambda d: (
            ((b, a, y), v * v2) for z, y, v in gl23.get(d, ()) for b, a, v2 in gr12.get(z, ())
        ),
    )
    scan(
        "eq12",
        lambda d: (
            ((a, b, y), v * v2) for a, z, v in gl13.get(d, ()) for b, y, v2 in gl23.get(z, ())
        ),
        lambda d: (
            ((a, b, y), v * v2) for z, y, v in gl23.get(d, ()) for a, b, v2 in gl12.get(z, ())
        ),
    )
    scan(
        "eq13",
        lambda d: (
            ((y, a, b), v * v2) for z, b, v in gr23.get(d, ()) for y, a, v2 in gr13.get(z, ())
        ),
        lambda d: (
            ((y, a, b), v * v2) for y, z, v in gr23.get(d, ()) for a, b, v2 in gl12.get(z, ())
        ),
    )
    scan(
        "eq14",
        lambda d: (
            ((y, b, a), v * v2) for z, a, v in gr13.get(d, ()) for y, b, v2 in gr23.get(z, ())
        ),
        lambda d: (
            ((y, b, a), v * v2) for y, z, v in gr23.get(d, ()) for b, a, v2 in gr12.get(z, ())
        ),
    )

    if not report.ok:
        return report, None

    d12 = build_dorroh_coalgebra(pair12)
    rho_l_entries = dict(co13.rho_l.entries)
    for (x, b, y), v in co23.rho_l.entries.items():
        rho_l_entries[(x, n1 + b, y)] = v
    rho_r_entries = dict(co13.rho_r.entries)
    for (x, y, b), v in co23.rho_r.entries.items():
        rho_r_entries[(x, y, n1 + b)] = v
    co_12_3 = BicomoduleCoaction(
        d12,
        n3,
        SparseTensor3((n3, n1 + n2, n3), rho_l_entries, field),
        SparseTensor3((n3, n3, n1 + n2), rho_r_entries, field),
    )
    pair_left = DorrohPairCoalgebra(d12, c3, co_12_3)
    report.merge(pair_left.validate(), prefix="left-bracketing:")

    d23 = build_dorroh_coalgebra(DorrohPairCoalgebra(c2, c3, co23))
    rho_l_entries = dict(co12.rho_l.entries)
    for (x, a, y), v in co13.rho_l.entries.items():
        rho_l_entries[(n2 + x, a, n2 + y)] = v
    rho_r_entries = dict(co12.rho_r.entries)
    for (x, y, a), v in co13.rho_r.entries.items():
        rho_r_entries[(n2 + x, n2 + y, a)] = v
    co_1_23 = BicomoduleCoaction(
        c1,
        n2 + n3,
        SparseTensor3((n2 + n3, n1, n2 + n3), rho_l_entries, field),
        SparseTensor3((n2 + n3, n2 + n3, n1), rho_r_entries, field),
    )
    pair_right = DorrohPairCoalgebra(c1, d23, co_1_23)
    report.merge(pair_right.validate(), prefix="right-bracketing:")
    if not report.ok:
        return report, None

    coassociator = CoalgebraMorphism(
        build_dorroh_coalgebra(pair_left),
        build_dorroh_coalgebra(pair_right),
        Matrix.identity(n1 + n2 + n3, field),
    )
    report.merge(verify_coalgebra_morphism(coassociator, iso=True), prefix="coassociator:")
    return report, coassociator
