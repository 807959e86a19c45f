"""Matrices over K[D]: Hermite forms, regularity, Dieudonne degree, gcd/lcm.

Row operations are left multiplications, so the row Hermite form realizes
left-ideal statements (right gcd, left lcm).  Column statements are reduced
to row statements through the adjoint-transpose, which is an
anti-involution of the matrix ring: (AB)^† = B^† A^†.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import (
    InternalInconsistency,
    MinimalityUnavailableError,
    NonInvertibleError,
    PreconditionError,
    SearchFailure,
)
from .orepoly import ONE, ZERO, OrePoly, adjoint, divide, exact_quotient, normalize_side, primitive_normalizer
from .ratfunc import RatFunc

DEFAULT_BUDGET = 10_000


class OreMatrix:
    """A rows x cols grid of OrePoly.  Ring operations require square shape."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(OrePoly.coerce(e) for e in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "OreMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "OreMatrix":
        return cls([[ZERO] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, *entries) -> "OreMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, c, n: int) -> "OreMatrix":
        return cls.diag(*([OrePoly.coerce(c)] * n))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def size(self) -> int:
        n, m = self.shape
        if n != m:
            raise PreconditionError(f"matrix of shape {self.shape} is not square")
        return n

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "OreMatrix":
        return OreMatrix([r[c0:c1] for r in self.rows[r0:r1]])

    @classmethod
    def stack(cls, top: "OreMatrix", bottom: "OreMatrix") -> "OreMatrix":
        return cls(top.rows + bottom.rows)

    @classmethod
    def hstack(cls, left: "OreMatrix", right: "OreMatrix") -> "OreMatrix":
        return cls([a + b for a, b in zip(left.rows, right.rows)])

    def zero_like(self) -> "OreMatrix":
        return OreMatrix.zero(*self.shape)

    def one_like(self) -> "OreMatrix":
        return OreMatrix.identity(self.size)

    # arithmetic
    def _check_shape(self, other: "OreMatrix"):
        if self.shape != other.shape:
            raise PreconditionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, OreMatrix):
            return NotImplemented
        self._check_shape(other)
        return OreMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return OreMatrix([[-a for a in r] for r in self.rows])

    def __sub__(self, other):
        if not isinstance(other, OreMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, OreMatrix):
            if self.shape[1] != other.shape[0]:
                raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = ZERO
                    for a, b in zip(r, c):
                        if not a.is_zero() and not b.is_zero():
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return OreMatrix(out)
        # scalar from K[D] acting entrywise on the left
        try:
            s = OrePoly.coerce(other)
        except TypeError:
            return NotImplemented
        return OreMatrix([[a * s for a in r] for r in self.rows])

    def __rmul__(self, other):
        s = OrePoly.coerce(other)
        return OreMatrix([[s * a for a in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, OreMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def is_one(self) -> bool:
        return self == OreMatrix.identity(self.size)

    def adjoint(self) -> "OreMatrix":
        """Adjoint-transpose: entry (j, i) is adjoint of entry (i, j)."""
        n, m = self.shape
        return OreMatrix([[adjoint(self.rows[i][j]) for i in range(n)] for j in range(m)])

    def is_regular(self) -> bool:
        return is_regular(self)

    def is_unit(self) -> bool:
        return ddet_degree(self) == 0

    @property
    def degree(self):
        return ddet_degree(self)

    def __call__(self, column):
        """Apply to a column vector of rational functions."""
        if len(column) != self.shape[1]:
            raise PreconditionError("dimension mismatch in matrix action")
        out = []
        for r in self.rows:
            acc = RatFunc()
            for a, f in zip(r, column):
                if not a.is_zero():
                    acc = acc + a(f)
            out.append(acc)
        return tuple(out)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"OreMatrix({self})"


def mat_arith(A: OreMatrix, B: OreMatrix, op: str) -> OreMatrix:
    if A.shape != B.shape:
        raise PreconditionError(f"shape mismatch {A.shape} vs {B.shape}")
    if op == "add":
        return A + B
    if op == "mul":
        return A * B
    raise ValueError(f"unknown operation {op!r}")


# -- Hermite form ------------------------------------------------------------

@dataclass(frozen=True)
class HermiteCertificate:
    """U*M = H with H in row echelon (upper triangular) form.

    ``elementary_ops`` holds tuples ``("swap", i, j)``, ``("scale", i, f)``
    (row_i <- f*row_i, f a unit of K) and ``("addmul", i, j, q)``
    (row_i <- row_i + q*row_j).  ``pivots`` lists (row, column) pairs.
    """

    H: OreMatrix
    U: OreMatrix
    elementary_ops: tuple
    pivots: tuple = field(default=())


def _row_addmul(row_i: list, row_j: list, q: OrePoly) -> list:
    return [a if b.is_zero() else a + q * b for a, b in zip(row_i, row_j)]


def _normalize_row(row: list) -> RatFunc:
    return primitive_normalizer(*[e for e in row if not e.is_zero()]) if any(
        not e.is_zero() for e in row) else RatFunc(1)


def row_hermite(M: OreMatrix) -> HermiteCertificate:
    """Row Hermite form with unimodular transform and the operation log.

    Pivot: minimal order in the column, ties to the lowest row index.  Rows
    being eliminated are rescaled by units of K to keep their coefficients
    primitive; pivots end monic and entries above a pivot are reduced below
    its order.
    """
    m, n = M.shape
    aug = [list(r) + [ONE if i == j else ZERO for j in range(m)] for i, r in enumerate(M.rows)]
    ops = []
    pivots = []
    p = 0
    for col in range(n):
        if p >= m:
            break
        found = False
        while True:
            cands = [i for i in range(p, m) if not aug[i][col].is_zero()]
            if not cands:
                break
            found = True
            best = min(cands, key=lambda i: (aug[i][col].order, i))
            if best != p:
                aug[p], aug[best] = aug[best], aug[p]
                ops.append(("swap", p, best))
            others = [i for i in range(p + 1, m) if not aug[i][col].is_zero()]
            if not others:
                break
            piv = aug[p][col]
            for i in others:
                q = divide(aug[i][col], piv, "left").quotient
                if not q.is_zero():
                    aug[i] = _row_addmul(aug[i], aug[p], -q)
                    ops.append(("addmul", i, p, -q))
                f = _normalize_row(aug[i])
                if not f.is_one():
                    aug[i] = [e.scale_left(f) for e in aug[i]]
                    ops.append(("scale", i, f))
        if not found:
            continue
        f = aug[p][col].lc().inverse()
        if not f.is_one():
            aug[p] = [e.scale_left(f) for e in aug[p]]
            ops.append(("scale", p, f))
        piv = aug[p][col]
        for i in range(p):
            if aug[i][col].is_zero():
                continue
            q = divide(aug[i][col], piv, "left").quotient
            if not q.is_zero():
                aug[i] = _row_addmul(aug[i], aug[p], -q)
                ops.append(("addmul", i, p, -q))
        pivots.append((p, col))
        p += 1
    H = OreMatrix([r[:n] for r in aug])
    U = OreMatrix([r[n:] for r in aug])
    return HermiteCertificate(H, U, tuple(ops), tuple(pivots))


def replay_inverse(ops, M: OreMatrix) -> OreMatrix:
    """Apply the inverses of the recorded row operations in reverse order.

    With the log of ``row_hermite(M0)`` this maps H back to M0, and the
    identity to U^{-1}.
    """
    rows = [list(r) for r in M.rows]
    for op in reversed(ops):
        kind = op[0]
        if kind == "swap":
            _, i, j = op
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == "scale":
            _, i, f = op
            g = f.inverse()
            rows[i] = [e.scale_left(g) for e in rows[i]]
        elif kind == "addmul":
            _, i, j, q = op
            rows[i] = _row_addmul(rows[i], rows[j], -q)
        else:
            raise ValueError(f"unknown elementary operation {kind!r}")
    return OreMatrix(rows)


def unimodular_inverse(cert: HermiteCertificate) -> OreMatrix:
    return replay_inverse(cert.elementary_ops, OreMatrix.identity(cert.U.shape[0]))


def is_regular(M: OreMatrix) -> bool:
    """Regular (no zero divisor) iff the Hermite form has a full nonzero diagonal."""
    n = M.size
    H = row_hermite(M).H
    return all(not H[i, i].is_zero() for i in range(n))


def ddet_degree(M: OreMatrix):
    """Degree of the Dieudonne determinant, or None for a singular matrix."""
    n = M.size
    H = row_hermite(M).H
    if any(H[i, i].is_zero() for i in range(n)):
        return None
    return sum(H[i, i].order for i in range(n))


def triangular_solve(X: OreMatrix, H: OreMatrix) -> OreMatrix:
    """S with X = S*H for an upper triangular H with nonzero diagonal."""
    n = H.size
    out = []
    for x in X.rows:
        s = []
        for j in range(n):
            rhs = x[j]
            for k in range(j):
                if not s[k].is_zero() and not H[k, j].is_zero():
                    rhs = rhs - s[k] * H[k, j]
            s.append(exact_quotient(rhs, H[j, j], "left"))
        out.append(s)
    return OreMatrix(out)


def matrix_exact_quotient(X: OreMatrix, b: OreMatrix, side: str = "left") -> OreMatrix:
    """Q with X = Q*b (side='left') or X = b*Q (side='right'); b regular."""
    side = normalize_side(side)
    if side == "right":
        return matrix_exact_quotient(X.adjoint(), b.adjoint(), "left").adjoint()
    cert = row_hermite(b)
    if any(cert.H[i, i].is_zero() for i in range(b.size)):
        raise NonInvertibleError("exact division by a singular matrix")
    return triangular_solve(X, cert.H) * cert.U


# -- gcd / lcm ---------------------------------------------------------------

@dataclass(frozen=True)
class MatrixGcd:
    """right: X A + Y B = D, A = A1 D, B = B1 D.  left: A X + B Y = D, A = D A1, B = D B1."""

    D: OreMatrix
    X: OreMatrix
    Y: OreMatrix
    A1: OreMatrix
    B1: OreMatrix
    side: str

    def __iter__(self):
        return iter((self.D, self.X, self.Y))


@dataclass(frozen=True)
class MatrixLcm:
    """right: M = A B1 = B A1.  left: M = B1 A = A1 B."""

    M: OreMatrix
    A1: OreMatrix
    B1: OreMatrix
    side: str

    def __iter__(self):
        return iter((self.M, self.A1, self.B1))


def matrix_gcd(A: OreMatrix, B: OreMatrix, side: str = "right") -> MatrixGcd:
    side = normalize_side(side)
    if A.shape != B.shape:
        raise PreconditionError(f"shape mismatch {A.shape} vs {B.shape}")
    n = A.size
    if side == "left":
        g = matrix_gcd(A.adjoint(), B.adjoint(), "right")
        return MatrixGcd(g.D.adjoint(), g.X.adjoint(), g.Y.adjoint(),
                         g.A1.adjoint(), g.B1.adjoint(), "left")
    cert = row_hermite(OreMatrix.stack(A, B))
    V = unimodular_inverse(cert)
    D = cert.H.block(0, n, 0, n)
    X = cert.U.block(0, n, 0, n)
    Y = cert.U.block(0, n, n, 2 * n)
    return MatrixGcd(D, X, Y, V.block(0, n, 0, n), V.block(n, 2 * n, 0, n), "right")


def left_syzygy(top: OreMatrix, bottom: OreMatrix) -> tuple[OreMatrix, OreMatrix]:
    """(X, Y) with X*top + Y*bottom = 0 spanning all such pairs; top regular."""
    n = top.size
    cert = row_hermite(OreMatrix.stack(top, bottom))
    if any(cert.H[i, i].is_zero() for i in range(n)):
        raise PreconditionError("syzygy computation needs a regular top block")
    return cert.U.block(n, 2 * n, 0, n), cert.U.block(n, 2 * n, n, 2 * n)


def matrix_lcm(A: OreMatrix, B: OreMatrix, side: str = "right") -> MatrixLcm:
    side = normalize_side(side)
    if A.shape != B.shape:
        raise PreconditionError(f"shape mismatch {A.shape} vs {B.shape}")
    if not (is_regular(A) and is_regular(B)):
        raise MinimalityUnavailableError("matrix lcm is certified only for regular inputs")
    if side == "right":
        c = matrix_lcm(A.adjoint(), B.adjoint(), "left")
        M, A1, B1 = c.M.adjoint(), c.A1.adjoint(), c.B1.adjoint()
        if A * B1 != M or B * A1 != M:
            raise InternalInconsistency("right matrix lcm failed self-check")
        return MatrixLcm(M, A1, B1, "right")
    X, Y = left_syzygy(A, B)
    M = X * A
    if -(Y * B) != M:
        raise InternalInconsistency("left matrix lcm failed self-check")
    return MatrixLcm(M, -Y, X, "left")


# -- regularization searches -------------------------------------------------

def _scalar_like(template, c):
    if isinstance(template, OreMatrix):
        return OreMatrix.scalar(c, template.size)
    return OrePoly.coerce(c)


def _candidates(template, seed: int):
    """Deterministic sweep, then seeded random constants, then order <= 1."""
    seen = set()

    def fresh(q):
        if q in seen:
            return None
        seen.add(q)
        return q

    for c in (0, 1, -1, 2, -2):
        q = fresh(_scalar_like(template, c))
        if q is not None:
            yield q
    rng = random.Random(seed)
    if isinstance(template, OreMatrix):
        n = template.size
        for signs in itertools.product((1, -1, 0), repeat=n):
            q = fresh(OreMatrix.diag(*[OrePoly.coerce(s) for s in signs]))
            if q is not None:
                yield q
        k = 0
        while True:
            k += 1
            if k % 2:
                q = OreMatrix([[OrePoly.coerce(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
            else:
                q = OreMatrix([[OrePoly((rng.randint(-3, 3), rng.randint(-3, 3))) for _ in range(n)]
                               for _ in range(n)])
            q = fresh(q)
            if q is not None:
                yield q
    else:
        while True:
            q = fresh(OrePoly((rng.randint(-3, 3), rng.randint(-3, 3))))
            if q is not None:
                yield q


def _is_regular(e) -> bool:
    return e.is_regular()


def _shift(a, q, b, side):
    return a + (q * b if side == "left" else b * q)


def regularize(a, b, side: str = "left", *, budget: int = DEFAULT_BUDGET, seed: int = 0):
    """q with a + q*b (side='left') or a + b*q (side='right') regular.

    Works for OrePoly and OreMatrix alike; every returned q is verified.
    """
    side = normalize_side(side)
    if not _is_regular(b):
        raise PreconditionError("regularize needs a regular b")
    for tried, q in enumerate(_candidates(b, seed)):
        if tried >= budget:
            break
        if _is_regular(_shift(a, q, b, side)):
            return q
    raise SearchFailure(f"no regularizing q within {budget} candidates")


def regularize_pair(a1, b1, a2, b2, side: str = "left", *, budget: int = DEFAULT_BUDGET, seed: int = 0):
    """q with a1 + q b1 and a2 + q b2 (or a_i + b_i q) both regular."""
    side = normalize_side(side)
    if not (_is_regular(b1) and _is_regular(b2)):
        raise PreconditionError("regularize_pair needs regular b1 and b2")
    for tried, q in enumerate(_candidates(b1, seed)):
        if tried >= budget:
            break
        if _is_regular(_shift(a1, q, b1, side)) and _is_regular(_shift(a2, q, b2, side)):
            return q
    raise SearchFailure(f"no common regularizing q within {budget} candidates")
