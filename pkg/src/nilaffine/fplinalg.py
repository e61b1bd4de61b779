"""Exact arithmetic and dense linear algebra over a prime field GF(p).

Residues are plain machine integers in ``[0, p)``; matrices are numpy
``int64`` arrays that are never mutated after construction.  Products of two
residues stay below ``p**2``, so any ``p`` up to about ``3e9`` is safe, far
beyond the primes this package works with.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldError",
    "FieldElement",
    "FpMatrix",
    "Echelon",
    "is_prime",
    "check_prime",
    "inverse_mod",
    "rref",
    "rank",
    "kernel_basis",
    "quotient_basis",
]


class FieldError(ArithmeticError):
    """Raised for illegal field operations (zero inverse, mixed moduli)."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    """Return ``p`` unchanged, raising ``ValueError`` if it is not a prime."""
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"modulus must be prime, got {p!r}")
    return int(p)


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise FieldError(f"0 has no inverse modulo {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p), stored as its least nonnegative residue.

    Plain ``int`` operands are coerced into the same field, so ``x + 1`` and
    ``2 * x`` work as expected.

    >>> FieldElement(3, 7).inv()
    FieldElement(value=5, modulus=7)
    """

    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise FieldError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def _make(self, value: int) -> "FieldElement":
        return FieldElement(value % self.modulus, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def inv(self) -> "FieldElement":
        return self._make(inverse_mod(self.value, self.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FieldElement(o, self.modulus).inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.inv() * o

    def __pow__(self, n: int) -> "FieldElement":
        # square-and-multiply; negative exponents go through the inverse
        if n < 0:
            return self.inv() ** (-n)
        base, result = self.value, 1
        while n:
            if n & 1:
                result = result * base % self.modulus
            base = base * base % self.modulus
            n >>= 1
        return self._make(result)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def signed(self) -> int:
        """Representative in ``(-p/2, p/2]``, handy for printing ``-1``."""
        return self.value if self.value <= self.modulus // 2 else self.value - self.modulus

    def __str__(self):
        return str(self.value)


class FpMatrix:
    """Immutable dense matrix over GF(p)."""

    __slots__ = ("_a", "modulus")

    def __init__(self, entries, modulus: int):
        self.modulus = check_prime(modulus)
        a = np.array(entries, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("FpMatrix needs a 2-D grid of entries")
        a %= self.modulus
        a.setflags(write=False)
        self._a = a

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), modulus)

    @classmethod
    def identity(cls, n: int, modulus: int) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), modulus)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the residues."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def __getitem__(self, idx):
        i, j = idx
        return FieldElement(int(self._a[i, j]), self.modulus)

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            if other.modulus != self.modulus:
                raise FieldError("modulus mismatch")
            return FpMatrix(self._a @ other._a, self.modulus)
        v = np.asarray(other, dtype=np.int64)
        return (self._a @ v) % self.modulus

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash((self.modulus, self._a.shape, self._a.tobytes()))

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self._a.T, self.modulus)

    def is_zero(self) -> bool:
        return not self._a.any()

    def rank(self) -> int:
        return rank(self)

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def __repr__(self):
        return f"FpMatrix({self.rows}x{self.cols} over GF({self.modulus}))"


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * inverse_mod(int(a[r, c]), p) % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, tuple[int, ...], int]:
    """Reduced row-echelon form, pivot columns and rank.

    Pivots are chosen as the first nonzero entry scanning columns left to
    right, so the output is deterministic.
    """
    a, pivots = _rref_array(m.array, m.modulus)
    return FpMatrix(a, m.modulus), tuple(pivots), len(pivots)


def rank(m: FpMatrix) -> int:
    a = m.array
    # eliminating along the short side is cheaper and gives the same rank
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(_rref_array(a, m.modulus)[1])


def kernel_basis(m: FpMatrix) -> list[np.ndarray]:
    """Basis of ``{v : m v = 0}``, one vector per free column.

    Each vector has a 1 in its free column and zeros in the other free
    columns, which makes the basis canonical for a given matrix.
    """
    p = m.modulus
    n = m.cols
    a, pivots = _rref_array(m.array, p)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[free] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-a[row, free]) % p
        basis.append(v)
    return basis


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of GF(p)^n.

    ``reduce`` returns the canonical residue of a vector modulo the span;
    ``add`` inserts a vector and reports whether it enlarged the span.
    """

    def __init__(self, n: int, p: int, vectors: Iterable[Sequence[int]] = ()):
        self.n = n
        self.p = p
        self._rows: dict[int, np.ndarray] = {}
        for v in vectors:
            self.add(v)

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def reduce(self, v) -> np.ndarray:
        p = self.p
        v = np.array(v, dtype=np.int64) % p
        for c in sorted(self._rows):
            if v[c]:
                v = (v - v[c] * self._rows[c]) % p
        return v

    def add(self, v) -> bool:
        p = self.p
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = v * inverse_mod(int(v[c]), p) % p
        # keep the stored rows fully reduced against each other
        for c2, row in self._rows.items():
            if row[c]:
                self._rows[c2] = (row - row[c] * v) % p
        self._rows[c] = v
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def basis(self) -> list[np.ndarray]:
        return [self._rows[c].copy() for c in sorted(self._rows)]


def quotient_basis(
    kernel: Sequence[Sequence[int]],
    image: Sequence[Sequence[int]],
    p: int,
) -> tuple[int, list[np.ndarray]]:
    """Dimension of ``span(kernel) / span(image)`` and canonical representatives.

    Representatives are the kernel vectors (in the given order) that enlarge
    the running span of ``image``, each reduced modulo the image's echelon
    form, so they are reproducible across runs.

    Raises ``ValueError`` if some image vector lies outside ``span(kernel)``;
    for cohomology that means the complex is broken.
    """
    p = check_prime(p)
    vecs = [np.asarray(v, dtype=np.int64) for v in list(kernel) + list(image)]
    if not vecs:
        return 0, []
    n = vecs[0].size
    ker = Echelon(n, p, kernel)
    for v in image:
        if not ker.contains(v):
            raise ValueError("image is not contained in the kernel")
    img = Echelon(n, p, image)
    running = Echelon(n, p, image)
    reps = []
    for v in kernel:
        if running.add(v):
            reps.append(img.reduce(v))
    return ker.dimension - img.dimension, reps
