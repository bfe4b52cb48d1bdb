"""gl(n) in the Cartan-Weyl basis E_ij and the principal basis A_ij.

Conventions:

* residues (principal indices, gradation degrees) live in ``range(n)``;
* matrix positions handed to :func:`unit_E` are 1-based, as in E_11..E_nn;
* ``A_ij = sum_{k=1..n} w^(i*k) E_{k, k+j}`` with the row index running
  1..n, so ``A_i0 = diag(w^i, w^2i, ..., w^ni)``.
* Fourier vectors are unnormalised: ``phi_i = sum_k w^(i*k) v_k``.  Every
  pairing formula carries the missing factor ``n`` explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .exact_arith import Cyc, Scalar, root_of_unity
from .linalg import rank
from .reports import Report


class VerificationError(AssertionError):
    """An identity that should hold exactly did not."""

    def __init__(self, message: str, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


def _as_cyc(order: int, x: Scalar) -> Cyc:
    if isinstance(x, Cyc):
        if x.order != order:
            raise ValueError(f"order mismatch: {x.order} vs {order}")
        return x
    return Cyc.rational(order, x)


def position(n: int, residue: int) -> int:
    """0-based array offset of matrix position ``residue`` (mod n, 1..n)."""
    return (residue - 1) % n


class CycMat:
    """Dense matrix over Q(w_order).  Immutable; products skip zero entries."""

    __slots__ = ("order", "rows", "cols", "_data", "_nz")

    def __init__(self, order: int, data: Sequence[Sequence[Scalar]]):
        self.order = order
        self._data = tuple(tuple(_as_cyc(order, x) for x in row) for row in data)
        self.rows = len(self._data)
        self.cols = len(self._data[0]) if self._data else 0
        if any(len(r) != self.cols for r in self._data):
            raise ValueError("ragged matrix")
        self._nz = None

    @classmethod
    def _wrap(cls, order: int, data: tuple) -> "CycMat":
        obj = cls.__new__(cls)
        obj.order = order
        obj._data = data
        obj.rows = len(data)
        obj.cols = len(data[0]) if data else 0
        obj._nz = None
        return obj

    @classmethod
    def zeros(cls, order: int, rows: int, cols: int | None = None) -> "CycMat":
        z = Cyc.zero(order)
        cols = rows if cols is None else cols
        return cls._wrap(order, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, order: int, size: int) -> "CycMat":
        return cls.from_entries(order, size, size, {(i, i): 1 for i in range(size)})

    @classmethod
    def from_entries(cls, order: int, rows: int, cols: int, entries: dict) -> "CycMat":
        """Build from a ``{(row, col): value}`` map with 0-based positions."""
        z = Cyc.zero(order)
        grid = [[z] * cols for _ in range(rows)]
        for (r, c), x in entries.items():
            grid[r][c] = grid[r][c] + _as_cyc(order, x)
        return cls._wrap(order, tuple(tuple(r) for r in grid))

    # -- access ------------------------------------------------------------

    def __getitem__(self, rc: tuple[int, int]) -> Cyc:
        r, c = rc
        return self._data[r][c]

    def row(self, r: int) -> tuple[Cyc, ...]:
        return self._data[r]

    def entries(self) -> Iterator[tuple[int, int, Cyc]]:
        """Nonzero entries as (row, col, value), 0-based."""
        for r, cols in enumerate(self._nonzero()):
            for c, x in cols:
                yield r, c, x

    def _nonzero(self):
        if self._nz is None:
            self._nz = tuple(
                tuple((c, x) for c, x in enumerate(row) if x) for row in self._data
            )
        return self._nz

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self._nonzero())

    def flat(self) -> list[Cyc]:
        return [x for row in self._data for x in row]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "CycMat") -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "CycMat") -> "CycMat":
        if not isinstance(other, CycMat):
            return NotImplemented
        self._check(other)
        return CycMat._wrap(
            self.order,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
        )

    def __sub__(self, other: "CycMat") -> "CycMat":
        if not isinstance(other, CycMat):
            return NotImplemented
        self._check(other)
        return CycMat._wrap(
            self.order,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
        )

    def __neg__(self) -> "CycMat":
        return CycMat._wrap(self.order, tuple(tuple(-a for a in r) for r in self._data))

    def scale(self, s: Scalar) -> "CycMat":
        s = _as_cyc(self.order, s)
        if s.is_zero():
            return CycMat.zeros(self.order, self.rows, self.cols)
        return CycMat._wrap(self.order, tuple(tuple(a * s for a in r) for r in self._data))

    def __mul__(self, s):
        if isinstance(s, (int, Fraction, Cyc)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, CycVec):
            return other.__rmatmul__(self)
        if not isinstance(other, CycMat):
            return NotImplemented
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = Cyc.zero(self.order)
        right = other._nonzero()
        out = []
        for lrow in self._nonzero():
            acc: dict[int, Cyc] = {}
            for k, x in lrow:
                for j, y in right[k]:
                    p = x * y
                    acc[j] = acc[j] + p if j in acc else p
            row = [z] * other.cols
            for j, v in acc.items():
                row[j] = v
            out.append(tuple(row))
        return CycMat._wrap(self.order, tuple(out))

    def __pow__(self, k: int) -> "CycMat":
        if not self.is_square() or k < 0:
            raise ValueError("matrix power needs a square matrix and k >= 0")
        result = CycMat.identity(self.order, self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self) -> "CycMat":
        return CycMat._wrap(self.order, tuple(zip(*self._data)) if self._data else ())

    @property
    def T(self) -> "CycMat":
        return self.transpose()

    def trace(self) -> Cyc:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        total = Cyc.zero(self.order)
        for i in range(self.rows):
            total = total + self._data[i][i]
        return total

    def kron(self, other: "CycMat") -> "CycMat":
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        z = Cyc.zero(self.order)
        grid = [[z] * (self.cols * other.cols) for _ in range(self.rows * other.rows)]
        for r1, c1, x in self.entries():
            for r2, c2, y in other.entries():
                grid[r1 * other.rows + r2][c1 * other.cols + c2] = x * y
        return CycMat._wrap(self.order, tuple(tuple(r) for r in grid))

    # -- comparison / serialisation ------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMat):
            return NotImplemented
        return self.order == other.order and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.order, self._data))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self._data)
        return f"CycMat(order={self.order}, [{body}])"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[x.to_json()["coeffs"] for x in r] for r in self._data],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycMat":
        n = int(data["order"])
        grid = [[Cyc.from_json({"order": n, "coeffs": e}) for e in r] for r in data["entries"]]
        mat = cls(n, grid)
        if mat.shape != (data["rows"], data["cols"]):
            raise ValueError("declared shape does not match entries")
        return mat


class CycVec:
    """Column vector over Q(w_order)."""

    __slots__ = ("order", "entries")

    def __init__(self, order: int, entries: Sequence[Scalar]):
        self.order = order
        self.entries = tuple(_as_cyc(order, x) for x in entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Cyc:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def basis(cls, order: int, dim: int, i: int) -> "CycVec":
        """Standard basis vector, 0-based offset ``i``."""
        return cls(order, [1 if k == i else 0 for k in range(dim)])

    def __add__(self, other: "CycVec") -> "CycVec":
        return CycVec(self.order, [a + b for a, b in zip(self.entries, other.entries, strict=True)])

    def __sub__(self, other: "CycVec") -> "CycVec":
        return CycVec(self.order, [a - b for a, b in zip(self.entries, other.entries, strict=True)])

    def __neg__(self) -> "CycVec":
        return CycVec(self.order, [-a for a in self.entries])

    def __mul__(self, s):
        if isinstance(s, (int, Fraction, Cyc)):
            s = _as_cyc(self.order, s)
            return CycVec(self.order, [a * s for a in self.entries])
        return NotImplemented

    __rmul__ = __mul__

    def __rmatmul__(self, mat: CycMat) -> "CycVec":
        if mat.cols != len(self.entries):
            raise ValueError(f"cannot apply {mat.shape} matrix to length {len(self)}")
        z = Cyc.zero(self.order)
        out = []
        for lrow in mat._nonzero():
            acc = z
            for k, x in lrow:
                y = self.entries[k]
                if y:
                    acc = acc + x * y
            out.append(acc)
        return CycVec(self.order, out)

    def dot(self, other: "CycVec") -> Cyc:
        """Bilinear pairing (v|w) = sum_k v_k w_k, so (v_i|v_j) = delta_ij."""
        acc = Cyc.zero(self.order)
        for a, b in zip(self.entries, other.entries, strict=True):
            acc = acc + a * b
        return acc

    def hermitian(self, other: "CycVec") -> Cyc:
        """sum_k conj(v_k) w_k."""
        acc = Cyc.zero(self.order)
        for a, b in zip(self.entries, other.entries, strict=True):
            acc = acc + a.conjugate() * b
        return acc

    def is_zero(self) -> bool:
        return not any(self.entries)

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.entries) if x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycVec):
            return NotImplemented
        return self.order == other.order and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.order, self.entries))

    def to_json(self) -> dict:
        return {"order": self.order, "entries": [x.to_json()["coeffs"] for x in self.entries]}

    def __repr__(self) -> str:
        return f"CycVec(order={self.order}, [{', '.join(str(x) for x in self.entries)}])"


def bracket(x: CycMat, y: CycMat) -> CycMat:
    return x @ y - y @ x


# -- Cartan-Weyl and principal bases ---------------------------------------

def unit_E(n: int, i: int, j: int) -> CycMat:
    """E_ij, 1-based positions."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"E_{{{i},{j}}} out of range for gl({n})")
    return CycMat.from_entries(n, n, n, {(i - 1, j - 1): 1})


@lru_cache(maxsize=None)
def principal_A(n: int, i: int, j: int) -> CycMat:
    """A_ij = sum_{k=1..n} w^(ik) E_{k,k+j}; residues reduced mod n."""
    i %= n
    j %= n
    entries = {}
    for k in range(1, n + 1):
        entries[(position(n, k), position(n, k + j))] = root_of_unity(n, i * k)
    return CycMat.from_entries(n, n, n, entries)


def principal_A_full(n: int, i: int) -> CycMat:
    """A_i = (w^(ki))_{k,l}: the sum of all principal components of degree i."""
    entries = {
        (k - 1, l): root_of_unity(n, i * k) for k in range(1, n + 1) for l in range(n)
    }
    return CycMat.from_entries(n, n, n, entries)


def shift_E(n: int) -> CycMat:
    """E = sum_i E_{i,i+1} (cyclically), generator of the principal Cartan."""
    return CycMat.from_entries(
        n, n, n, {(position(n, i), position(n, i + 1)): 1 for i in range(1, n + 1)}
    )


@dataclass(frozen=True)
class GradedDecomposition:
    components: tuple[CycMat, ...]

    def __getitem__(self, degree: int) -> CycMat:
        return self.components[degree % len(self.components)]

    def total(self) -> CycMat:
        acc = self.components[0]
        for c in self.components[1:]:
            acc = acc + c
        return acc


def degree_of(n: int, row: int, col: int) -> int:
    """Principal degree of the 0-based position (row, col): col - row mod n."""
    return (col - row) % n


def principal_decompose(x: CycMat) -> GradedDecomposition:
    if not x.is_square():
        raise ValueError(f"principal decomposition needs a square matrix, got {x.shape}")
    n = x.rows
    parts: list[dict] = [{} for _ in range(n)]
    for r, c, v in x.entries():
        parts[degree_of(n, r, c)][(r, c)] = v
    return GradedDecomposition(
        tuple(CycMat.from_entries(x.order, n, n, p) for p in parts)
    )


def apply_sigma(x: CycMat) -> CycMat:
    """The grading automorphism: sigma(x)_{kl} = w^(l-k) x_{kl}."""
    if not x.is_square():
        raise ValueError("sigma acts on square matrices")
    n = x.rows
    if x.order % n:
        raise ValueError(f"Q(w_{x.order}) does not contain the {n}-th roots of unity")
    step = x.order // n
    return CycMat.from_entries(
        x.order, n, n,
        {(r, c): v * root_of_unity(x.order, step * (c - r)) for r, c, v in x.entries()},
    )


def trace_form(x: CycMat, y: CycMat) -> Cyc:
    """The invariant form (x|y) = tr(xy)."""
    if not (x.is_square() and y.is_square()) or x.shape != y.shape:
        raise ValueError(f"trace form needs equal square shapes, got {x.shape}, {y.shape}")
    return (x @ y).trace()


def permutation_P(n: int, verify: bool = False) -> CycMat:
    """The flip P = sum_ij E_ij (x) E_ji on V (x) V.

    With ``verify=True`` P is rebuilt from the principal expansion
    ``sum_kl (w^kl / n) A_kl (x) A_{-k,-l}`` and the two are compared.
    """
    if n < 2:
        raise ValueError("permutation_P needs n >= 2")
    entries = {}
    for i in range(n):
        for j in range(n):
            # E_ij (x) E_ji sends v_j (x) v_i to v_i (x) v_j
            entries[(i * n + j, j * n + i)] = 1
    P = CycMat.from_entries(n, n * n, n * n, entries)
    if verify:
        Q = permutation_P_principal(n)
        if P != Q:
            raise VerificationError("principal expansion of P disagrees", P, Q)
    return P


def permutation_P_principal(n: int) -> CycMat:
    total = CycMat.zeros(n, n * n)
    for k in range(n):
        for l in range(n):
            coeff = root_of_unity(n, k * l) * Fraction(1, n)
            total = total + principal_A(n, k, l).kron(principal_A(n, -k, -l)).scale(coeff)
    return total


def dual_principal(n: int, k: int, l: int) -> CycMat:
    """The trace-form dual of A_kl: (w^kl / n) A_{-k,-l}."""
    return principal_A(n, -k, -l).scale(root_of_unity(n, k * l) * Fraction(1, n))


def expand_in_principal(x: CycMat) -> dict[tuple[int, int], Cyc]:
    """Coordinates c_kl with x = sum c_kl A_kl, read off with the dual basis."""
    if not x.is_square() or x.order != x.rows:
        raise ValueError("expand_in_principal needs an n x n matrix over Q(w_n)")
    n = x.rows
    return {
        (k, l): trace_form(x, dual_principal(n, k, l)) for k in range(n) for l in range(n)
    }


def from_principal(n: int, coeffs: dict[tuple[int, int], Scalar]) -> CycMat:
    total = CycMat.zeros(n, n)
    for (k, l), c in coeffs.items():
        total = total + principal_A(n, k, l).scale(c)
    return total


# -- the Fourier basis -----------------------------------------------------

def standard_vec(n: int, i: int) -> CycVec:
    """v_i, 1-based (taken mod n)."""
    return CycVec.basis(n, n, position(n, i))


def fourier_vec(n: int, i: int) -> CycVec:
    """Unnormalised Fourier vector sum_{k=1..n} w^(ik) v_k."""
    return CycVec(n, [root_of_unity(n, i * k) for k in range(1, n + 1)])


def principal_action(k: int, l: int, i: int, n: int) -> tuple[Cyc, int]:
    """Check A_kl phi_i = w^(il) phi_{i+k} exactly; return (w^(il), i+k mod n)."""
    lhs = principal_A(n, k, l) @ fourier_vec(n, i)
    phase = root_of_unity(n, i * l)
    target = (i + k) % n
    rhs = fourier_vec(n, target) * phase
    if lhs != rhs:
        raise VerificationError(
            f"A_{{{k},{l}}} phi_{i} != w^{i * l} phi_{target} in gl({n})", lhs, rhs
        )
    return phase, target


# -- batch verifiers ---------------------------------------------------------

def verify_lie(n: int) -> Report:
    """Product law, commutators, gradation and trace form over all indices."""

    rep = Report("lie", {"n": n})
    rng = range(n)
    A = {(i, j): principal_A(n, i, j) for i in rng for j in rng}
    w = lambda k: root_of_unity(n, k)
    for i, j, i2, j2 in ((i, j, i2, j2) for i in rng for j in rng for i2 in rng for j2 in rng):
        prod = A[i, j] @ A[i2, j2]
        target = A[(i + i2) % n, (j + j2) % n]
        rep.indices_tested += 1
        if prod != target.scale(w(j * i2)):
            rep.fail(["product", i, j, i2, j2])
        comm = prod - A[i2, j2] @ A[i, j]
        if comm != target.scale(w(j * i2) - w(j2 * i)):
            rep.fail(["eq2.7", i, j, i2, j2])
        form = trace_form(A[i, j], A[i2, j2])
        expected = w(-i * j) * n if (i + i2) % n == 0 and (j + j2) % n == 0 else 0
        if form != expected:
            rep.fail(["trace-form", i, j, i2, j2])
    E = shift_E(n)
    powers = [E**k for k in rng]
    for k in rng:
        for i in rng:
            for j in rng:
                rep.indices_tested += 1
                if bracket(powers[k], A[i, j]) != A[i, (j + k) % n].scale(w(k * i) - 1):
                    rep.fail(["eq2.6", k, i, j])
    for (i, j), a in A.items():
        rep.indices_tested += 1
        if apply_sigma(a) != a.scale(w(j)):
            rep.fail(["sigma", i, j])
        parts = principal_decompose(a)
        if parts[j] != a or any(not parts[d].is_zero() for d in rng if d != j):
            rep.fail(["grading", i, j])
    for p in rng:
        for q in rng:
            if not bracket(powers[p], powers[q]).is_zero():
                rep.fail(["cartan-commute", p, q])

    if rank(n, [m.flat() for m in powers]) != n:
        rep.fail(["cartan-independent"])
    return rep


def verify_fourier(n: int) -> Report:
    """Principal action on the Fourier basis, pairing and inversion."""

    rep = Report("fourier", {"n": n})
    rng = range(n)
    phis = [fourier_vec(n, i) for i in rng]
    for k in rng:
        for l in rng:
            for i in rng:
                rep.indices_tested += 1
                try:
                    principal_action(k, l, i, n)
                except VerificationError:
                    rep.fail(["action", k, l, i])
    for i in rng:
        for j in rng:
            rep.indices_tested += 1
            expected = n if (i + j) % n == 0 else 0
            if phis[i].dot(phis[j]) != expected:
                rep.fail(["pairing", i, j])
    for i in range(1, n + 1):
        rep.indices_tested += 1
        acc = CycVec(n, [0] * n)
        for k in rng:
            acc = acc + phis[k] * root_of_unity(n, -i * k)
        if acc != standard_vec(n, i) * n:
            rep.fail(["inversion", i])
    return rep


def verify_permutation(n: int) -> Report:
    """Both expansions of the flip P agree, and P is an involution."""

    rep = Report("permutation", {"n": n})
    P = permutation_P(n)
    Q = permutation_P_principal(n)
    rep.indices_tested = (n * n) ** 2
    for r in range(n * n):
        for c in range(n * n):
            if P[r, c] != Q[r, c]:
                rep.fail(["entry", r, c], {"standard": P[r, c], "principal": Q[r, c]})
    if P @ P != CycMat.identity(n, n * n):
        rep.fail(["involution"])
    return rep
