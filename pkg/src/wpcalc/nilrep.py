"""Brute-force oracle: nilpotent quiver representations over exact rationals.

Matrix convention (pinned by the identity ``ext1_dim(s_i, s_j) = number of
arrows from j to i``, which is what the whole package is calibrated
against): representations are *right* modules, so the matrix attached to
an arrow ``u -> v`` maps the fiber at ``v`` to the fiber at ``u`` and has
shape ``(dims[u], dims[v])``.

Hom dimensions come from an exact linear solve for the intertwiner space;
Ext^1 dimensions come from the Euler-form defect ``hom - euler``.  The
defect formula is valid for every finite quiver as long as both inputs
are nilpotent: the nilpotent finite-dimensional modules form a Serre
subcategory of all modules, which is hereditary, so the Euler pairing on
classes of simples determines the full pairing and Ext^2 vanishes.
Nilpotency is enforced when a Rep is constructed.
"""

from fractions import Fraction

from . import linalg
from .errors import NonNegativityViolation, QuiverMismatch, UnknownVertex
from .quiver import Quiver


class Rep:
    """A nilpotent representation: dims per vertex, matrix per arrow.

    ``mats[k]`` belongs to ``quiver.arrows[k] = (u, v)`` and has shape
    ``(dims[u], dims[v])`` (right action, fiber at v -> fiber at u).
    Values are treated as immutable after construction.
    """

    def __init__(self, quiver: Quiver, dims, mats, check_nilpotent=True):
        self.quiver = quiver
        self.dims = {v: 0 for v in quiver.vertices}
        for v, d in dict(dims).items():
            if v not in self.dims:
                raise UnknownVertex(f"dimension given for unknown vertex {v!r}")
            if d < 0:
                raise ValueError(f"negative dimension at {v!r}")
            self.dims[v] = int(d)
        mats = list(mats)
        if len(mats) != len(quiver.arrows):
            raise ValueError("need one matrix per arrow")
        self.mats = []
        for (u, v), m in zip(quiver.arrows, mats):
            nrows, ncols = self.dims[u], self.dims[v]
            if nrows == 0 or ncols == 0:
                self.mats.append([])
                continue
            if not m:
                self.mats.append(linalg.zero_matrix(nrows, ncols))
                continue
            if len(m) != nrows or any(len(r) != ncols for r in m):
                raise ValueError(f"matrix for arrow ({u!r},{v!r}) must be {nrows}x{ncols}")
            self.mats.append(linalg.as_fraction_matrix(m, nrows, ncols))
        if check_nilpotent and not self._is_nilpotent():
            raise ValueError("representation is not nilpotent")

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def _total_action(self):
        """The sum of all arrow actions as one endomorphism of the total space."""
        n = self.total_dim()
        offset = {}
        pos = 0
        for v in self.quiver.vertices:
            offset[v] = pos
            pos += self.dims[v]
        big = linalg.zero_matrix(n, n)
        for (u, v), m in zip(self.quiver.arrows, self.mats):
            for i in range(self.dims[u]):
                for j in range(self.dims[v]):
                    big[offset[u] + i][offset[v] + j] += m[i][j]
        return big

    def _is_nilpotent(self) -> bool:
        n = self.total_dim()
        if n == 0:
            return True
        t = self._total_action()
        power = t
        for _ in range(n):
            if linalg.is_zero_matrix(power):
                return True
            power = linalg.mat_mul(power, t)
        return linalg.is_zero_matrix(power)


def zero_rep(q: Quiver) -> Rep:
    return Rep(q, {}, [[] for _ in q.arrows], check_nilpotent=False)


def simple_rep(q: Quiver, v) -> Rep:
    """The simple module concentrated at vertex ``v``: all matrices zero."""
    if v not in q.vertices:
        raise UnknownVertex(f"unknown vertex {v!r}")
    dims = {w: (1 if w == v else 0) for w in q.vertices}
    mats = []
    for (u, w) in q.arrows:
        if dims[u] and dims[w]:
            mats.append([[Fraction(0)]])
        else:
            mats.append([])
    return Rep(q, dims, mats, check_nilpotent=False)


def dim_vector(rep: Rep) -> dict:
    return dict(rep.dims)


def direct_sum(m: Rep, n: Rep) -> Rep:
    if m.quiver != n.quiver:
        raise QuiverMismatch("direct sum needs representations over the same quiver")
    q = m.quiver
    dims = {v: m.dims[v] + n.dims[v] for v in q.vertices}
    mats = []
    for k, (u, v) in enumerate(q.arrows):
        rows, cols = dims[u], dims[v]
        if rows == 0 or cols == 0:
            mats.append([])
            continue
        block = linalg.zero_matrix(rows, cols)
        for i in range(m.dims[u]):
            for j in range(m.dims[v]):
                block[i][j] = m.mats[k][i][j]
        for i in range(n.dims[u]):
            for j in range(n.dims[v]):
                block[m.dims[u] + i][m.dims[v] + j] = n.mats[k][i][j]
        mats.append(block)
    return Rep(q, dims, mats, check_nilpotent=False)


def hom_dim(m: Rep, n: Rep) -> int:
    """dim of the intertwiner space, by kernel dimension of the exact system.

    Unknowns are the vertex maps phi_v : m-fiber(v) -> n-fiber(v); each
    arrow ``a: u -> v`` contributes the equations
    ``phi_u . A_m = A_n . phi_v`` where ``A`` is the arrow matrix.
    """
    if m.quiver != n.quiver:
        raise QuiverMismatch("hom_dim needs representations over the same quiver")
    q = m.quiver
    var_offset = {}
    nvars = 0
    for v in q.vertices:
        var_offset[v] = nvars
        nvars += n.dims[v] * m.dims[v]

    def var_index(v, row, col):
        # phi_v has shape (n.dims[v], m.dims[v]), row-major
        return var_offset[v] + row * m.dims[v] + col

    rows = []
    for k, (u, v) in enumerate(q.arrows):
        am, an = m.mats[k], n.mats[k]
        # equation block: (n.dims[u] x m.dims[v]) entries
        for r in range(n.dims[u]):
            for c in range(m.dims[v]):
                row = [Fraction(0)] * nvars
                # (phi_u . am)[r][c] = sum_s phi_u[r][s] am[s][c]
                for s in range(m.dims[u]):
                    coef = am[s][c]
                    if coef:
                        row[var_index(u, r, s)] += coef
                # -(an . phi_v)[r][c] = -sum_s an[r][s] phi_v[s][c]
                for s in range(n.dims[v]):
                    coef = an[r][s]
                    if coef:
                        row[var_index(v, s, c)] -= coef
                if any(row):
                    rows.append(row)
    return linalg.kernel_dimension(rows, nvars)


def euler_form(q: Quiver, d, e) -> int:
    """Euler pairing sum(d_v e_v) - sum over arrows u->v of d_v e_u.

    The arrow term uses the same right-module convention as Rep matrices;
    it is exactly the convention that makes ``ext1_dim(s_i, s_j)`` equal
    the number of arrows from j to i.
    """
    dd = dict(d)
    ee = dict(e)
    for key in list(dd) + list(ee):
        if key not in set(q.vertices):
            raise QuiverMismatch(f"dimension vector mentions unknown vertex {key!r}")
    total = sum(dd.get(v, 0) * ee.get(v, 0) for v in q.vertices)
    for (u, v) in q.arrows:
        total -= dd.get(v, 0) * ee.get(u, 0)
    return total


def ext1_dim(m: Rep, n: Rep) -> int:
    """dim Ext^1(m, n) in the nilpotent module category, as hom - euler."""
    if m.quiver != n.quiver:
        raise QuiverMismatch("ext1_dim needs representations over the same quiver")
    defect = hom_dim(m, n) - euler_form(m.quiver, dim_vector(m), dim_vector(n))
    if defect < 0:
        raise NonNegativityViolation(
            f"negative Ext^1 defect {defect}; matrix/Euler conventions are out of sync"
        )
    return defect
