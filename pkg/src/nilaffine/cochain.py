"""Cochains C^1, C^2, C^3 of g(p) with trivial coefficients, and d^1, d^2.

Bases are the dual vectors ``e^k``, ``e^{i,j}`` (i < j) and ``e^{u,v,w}``
(u < v < w), ordered lexicographically.  Labels are tuples of 1-based
indices.  A cochain evaluated on an unsorted wedge picks up the sign of the
sorting permutation, and vanishes on repeated indices.

The degree of a basis cochain is the sum of its indices; both differentials
preserve it, so most computations run one degree ``k`` at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping, NamedTuple

import numpy as np

from .algebra import residue3, truncated_algebra
from .fplinalg import FpMatrix, check_prime

__all__ = [
    "Cochain",
    "Cochain1",
    "Cochain2",
    "Cochain3",
    "IndexHelpers",
    "basic_equation_row",
    "basis",
    "basis_index",
    "d1",
    "d2",
    "d2_closed_form",
    "d2_matrix_closed_form",
    "d_matrix",
    "degree_range",
    "helper_F",
    "helper_G",
    "helper_M",
    "helper_s",
    "index_helpers",
    "label",
    "phi_k",
]


# ---------------------------------------------------------------------------
# index helpers
# ---------------------------------------------------------------------------


def helper_s(k: int) -> int:
    """Number of pairs ``i < j`` with ``i + j = k`` (no upper bound on j)."""
    if k < 3:
        raise ValueError(f"s(k) needs k >= 3, got {k}")
    return k // 2 - 1 if k % 2 == 0 else (k - 1) // 2


def helper_M(p: int, k: int) -> int:
    """Smallest first index of a pair in C^2_k."""
    if 3 <= k <= p + 1:
        return 1
    if p + 2 <= k <= 2 * p - 1:
        return k - p
    raise ValueError(f"M(p, k) needs 3 <= k <= 2p-1, got k={k}, p={p}")


def helper_G(p: int, k: int) -> int:
    """Smallest first index of a triple in C^3_k."""
    if 6 <= k <= 2 * p:
        return 1
    if 2 * p + 1 <= k <= 3 * p - 3:
        return 1 + k - 2 * p
    raise ValueError(f"G(p, k) needs 6 <= k <= 3p-3, got k={k}, p={p}")


def helper_F(p: int, k: int) -> int:
    """Largest first index of a triple in C^3_k."""
    if not 6 <= k <= 3 * p - 3:
        raise ValueError(f"F(p, k) needs 6 <= k <= 3p-3, got k={k}, p={p}")
    return (k - k % 3) // 3 - 1


class IndexHelpers(NamedTuple):
    s: int
    M: int | None
    G: int | None
    F: int | None


def index_helpers(p: int, k: int) -> IndexHelpers:
    """All four helpers at ``(p, k)``; a helper outside its range is ``None``."""
    check_prime(p)
    s = helper_s(k)

    def opt(fn):
        try:
            return fn(p, k)
        except ValueError:
            return None

    return IndexHelpers(s, opt(helper_M), opt(helper_G), opt(helper_F))


# ---------------------------------------------------------------------------
# bases
# ---------------------------------------------------------------------------


def degree_range(q: int, p: int) -> range:
    """Degrees ``k`` with nonzero C^q_k."""
    return {1: range(1, p + 1), 2: range(3, 2 * p), 3: range(6, 3 * p - 2)}[q]


@lru_cache(maxsize=None)
def _full_basis(q: int, p: int) -> tuple[tuple[int, ...], ...]:
    if q not in (1, 2, 3):
        raise ValueError(f"cochain degree must be 1, 2 or 3, got {q}")
    return tuple(combinations(range(1, p + 1), q))


@lru_cache(maxsize=None)
def _graded_basis(q: int, p: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(lab for lab in _full_basis(q, p) if sum(lab) == k)


def basis(q: int, p: int, k: int | None = None) -> list[tuple[int, ...]]:
    """Lexicographically ordered basis labels of C^q, or of C^q_k."""
    check_prime(p)
    if k is None:
        return list(_full_basis(q, p))
    return list(_graded_basis(q, p, k))


@lru_cache(maxsize=None)
def basis_index(q: int, p: int) -> dict[tuple[int, ...], int]:
    return {lab: n for n, lab in enumerate(_full_basis(q, p))}


def label(lab) -> str:
    return "e^{" + ",".join(str(i) for i in lab) + "}"


def _sort_sign(idx: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    if len(set(idx)) < len(idx):
        return 0, idx
    sign = 1
    lst = list(idx)
    for a in range(len(lst)):
        for b in range(len(lst) - 1 - a):
            if lst[b] > lst[b + 1]:
                lst[b], lst[b + 1] = lst[b + 1], lst[b]
                sign = -sign
    return sign, tuple(lst)


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cochain:
    """A q-cochain: coefficient of every basis label, in basis order."""

    p: int
    coeffs: tuple[int, ...]

    q = 0

    def __post_init__(self):
        check_prime(self.p)
        c = tuple(int(x) % self.p for x in self.coeffs)
        n = len(_full_basis(self.q, self.p))
        if len(c) != n:
            raise ValueError(f"C^{self.q} of g({self.p}) has dimension {n}, got {len(c)} coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, p: int):
        return cls(p, (0,) * len(_full_basis(cls.q, p)))

    @classmethod
    def from_terms(cls, p: int, terms: Mapping[tuple[int, ...], int]):
        """Build from ``{label: coefficient}``; unsorted labels are re-signed."""
        c = [0] * len(_full_basis(cls.q, p))
        idx = basis_index(cls.q, p)
        for lab, val in terms.items():
            lab = (lab,) if isinstance(lab, int) else tuple(lab)
            sign, key = _sort_sign(lab)
            if sign == 0:
                continue
            if key not in idx:
                raise ValueError(f"{label(key)} is not a basis cochain for p={p}")
            c[idx[key]] += sign * val
        return cls(p, tuple(c))

    @classmethod
    def from_array(cls, p: int, a):
        return cls(p, tuple(int(x) for x in np.asarray(a).ravel()))

    @classmethod
    def basis_cochain(cls, p: int, *lab: int):
        return cls.from_terms(p, {lab: 1})

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __call__(self, *indices: int) -> int:
        """Value on ``e_{i1} ^ ... ^ e_{iq}`` for basis indices in any order."""
        sign, key = _sort_sign(tuple(indices))
        if sign == 0:
            return 0
        n = basis_index(self.q, self.p).get(key)
        if n is None:
            raise ValueError(f"indices {indices} out of range for p={self.p}")
        return sign * self.coeffs[n] % self.p

    def terms(self) -> dict[tuple[int, ...], int]:
        labs = _full_basis(self.q, self.p)
        return {labs[n]: c for n, c in enumerate(self.coeffs) if c}

    def graded_component(self, k: int):
        labs = _full_basis(self.q, self.p)
        return type(self)(self.p, tuple(c if sum(labs[n]) == k else 0 for n, c in enumerate(self.coeffs)))

    def degrees(self) -> set[int]:
        return {sum(lab) for lab in self.terms()}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same(self, other):
        if type(other) is not type(self) or other.p != self.p:
            raise TypeError("cochains must have the same degree and modulus")

    def __add__(self, other):
        self._same(other)
        return type(self)(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return type(self)(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return type(self)(self.p, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar):
        s = int(scalar)
        return type(self)(self.p, tuple(s * a for a in self.coeffs))

    def to_sparse(self, signed: bool = True) -> list[list]:
        """``[[label, coefficient], ...]`` for JSON reports."""
        half = self.p // 2
        out = []
        for lab, c in self.terms().items():
            if signed and c > half:
                c -= self.p
            out.append([label(lab), c])
        return out

    def __str__(self):
        parts = []
        for lab, c in self.to_sparse():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}{lab}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+") else "-" + s[2:]


class Cochain1(Cochain):
    q = 1


class Cochain2(Cochain):
    q = 2

    def matrix(self) -> np.ndarray:
        """Antisymmetric ``p x p`` matrix ``S`` with ``S[i-1, j-1] = phi(e_i ^ e_j)``."""
        p = self.p
        s = np.zeros((p, p), dtype=np.int64)
        for (i, j), c in self.terms().items():
            s[i - 1, j - 1] = c
            s[j - 1, i - 1] = -c % p
        return s

    def wedge(self, x, y) -> int:
        """Bilinear evaluation ``phi(x ^ y)`` on coefficient vectors."""
        x = np.asarray(getattr(x, "coeffs", x), dtype=np.int64)
        y = np.asarray(getattr(y, "coeffs", y), dtype=np.int64)
        return int(x @ self.matrix() @ y) % self.p


class Cochain3(Cochain):
    q = 3


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------


def _d1_block(p: int, rows, cols) -> np.ndarray:
    m = np.zeros((len(rows), len(cols)), dtype=np.int64)
    col = {lab[0]: n for n, lab in enumerate(cols)}
    for r, (i, j) in enumerate(rows):
        c = col.get(i + j)
        if c is not None:
            m[r, c] = residue3(j - i)
    return m % p


def _d2_block_generic(p: int, rows, cols) -> np.ndarray:
    """d^2 straight from its definition, using the algebra's structure tensor.

    ``d2(phi)(x^y^z) = phi([x,y]^z) - phi([x,z]^y) + phi([y,z]^x)``.
    """
    t = truncated_algebra(p).tensor
    col = {lab: n for n, lab in enumerate(cols)}
    m = np.zeros((len(rows), len(cols)), dtype=np.int64)

    def put(r, br, other, sign):
        # br = [x, y] as a coefficient vector; evaluate each e^{i,j} on br ^ e_other
        for k in np.flatnonzero(br):
            s, key = _sort_sign((int(k) + 1, other))
            c = col.get(key)
            if s and c is not None:
                m[r, c] += sign * s * br[k]

    for r, (u, v, w) in enumerate(rows):
        put(r, t[u - 1, v - 1], w, 1)
        put(r, t[u - 1, w - 1], v, -1)
        put(r, t[v - 1, w - 1], u, 1)
    return m % p


def d2_closed_form(p: int, i: int, j: int) -> tuple[dict[tuple[int, int, int], int], list[tuple]]:
    """``d^2(e^{i,j})`` from the four-sum closed form.

    Returns ``(terms, skipped)``.  Summation limits taken literally can name
    triples that are not basis labels (not strictly increasing, or past
    ``p``); those terms are dropped and listed in ``skipped`` as
    ``(sum_number, n, triple)`` so callers can see where the limits overshoot.
    """
    k = i + j
    terms: dict[tuple[int, int, int], int] = {}
    skipped: list[tuple] = []

    def add(which, n, triple, coeff):
        u, v, w = triple
        if not (1 <= u < v < w <= p):
            skipped.append((which, n, triple))
            return
        terms[triple] = terms.get(triple, 0) + coeff

    if i >= 3:
        for n in range(1, helper_s(i) + 1):
            add(1, n, (n, i - n, k - i), residue3(i - 2 * n))
    if k - i >= 3:
        for n in range(k - 2 * i + 1, helper_s(k - i) + 1):
            add(2, n, (n, k - i - n, i), -residue3(k - i - 2 * n))
    for n in range(1, i):
        add(3, n, (n, i, k - i - n), residue3(k - i - 2 * n))
    for n in range(i + 1, p - 1):
        add(4, n, (i, n, k - i - n), -residue3(k - i - 2 * n))
    return {t: c % p for t, c in terms.items() if c % p}, skipped


def d2_matrix_closed_form(p: int, k: int) -> FpMatrix:
    rows = _graded_basis(3, p, k)
    cols = _graded_basis(2, p, k)
    ridx = {lab: n for n, lab in enumerate(rows)}
    m = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for c, (i, j) in enumerate(cols):
        terms, _ = d2_closed_form(p, i, j)
        for triple, val in terms.items():
            m[ridx[triple], c] = val
    return FpMatrix(m, p)


def d_matrix(q: int, p: int, k: int | None = None) -> FpMatrix:
    """Matrix of ``d^q`` (q = 1, 2): rows index C^{q+1}, columns index C^q.

    With ``k`` given only the degree-``k`` block is built.
    """
    check_prime(p)
    if q not in (1, 2):
        raise ValueError("only d^1 and d^2 are available")
    if k is None:
        rows, cols = _full_basis(q + 1, p), _full_basis(q, p)
    else:
        rows, cols = _graded_basis(q + 1, p, k), _graded_basis(q, p, k)
    block = _d1_block if q == 1 else _d2_block_generic
    return FpMatrix(block(p, rows, cols), p)


def _apply_graded(q: int, cochain: Cochain, out_cls) -> Cochain:
    p = cochain.p
    src = basis_index(q, p)
    dst = basis_index(q + 1, p)
    out = np.zeros(len(dst), dtype=np.int64)
    for k in cochain.degrees():
        rows, cols = _graded_basis(q + 1, p, k), _graded_basis(q, p, k)
        if not rows:
            continue
        vec = np.array([cochain.coeffs[src[c]] for c in cols], dtype=np.int64)
        img = d_matrix(q, p, k) @ vec
        for lab, val in zip(rows, img):
            out[dst[lab]] = val
    return out_cls.from_array(p, out)


def d1(psi: Cochain1) -> Cochain2:
    """``d^1(psi)(x ^ y) = psi([x, y])``."""
    return _apply_graded(1, psi, Cochain2)


def d2(phi: Cochain2) -> Cochain3:
    return _apply_graded(2, phi, Cochain3)


def phi_k(p: int, k: int) -> Cochain2:
    """``sum_{i=M(p,k)}^{s(k)} a_{i,k-i} e^{i,k-i}``."""
    check_prime(p)
    lo = helper_M(p, k)
    return Cochain2.from_terms(p, {(i, k - i): residue3(k - 2 * i) for i in range(lo, helper_s(k) + 1)})


def basic_equation_row(p: int, k: int, u: int, v: int) -> dict[tuple[int, int], int]:
    """Coefficients of the ``e^{u,v,k-u-v}`` row of ``d^2_k``, term by term.

    Each of the four terms appears only when its pair is a stored label, so
    a present term can carry the value 0 (its structure constant vanished).
    """
    check_prime(p)
    if not (helper_G(p, k) <= u <= helper_F(p, k) and u + 1 <= v <= helper_s(k - u) and k - u - v <= p):
        raise ValueError(f"(u, v) = ({u}, {v}) is outside the range for k={k}, p={p}")
    w = k - u - v
    row: dict[tuple[int, int], int] = {}

    def put(pair, val):
        row[pair] = (row.get(pair, 0) + val) % p

    if k - u <= p:
        put((u, k - u), -residue3(w - v))
    if k - v <= p:
        put((v, k - v), residue3(w - u))
    if u + v < w <= p:
        put((u + v, w), residue3(v - u))
    if w < u + v <= p:
        put((w, u + v), -residue3(v - u))
    return row
