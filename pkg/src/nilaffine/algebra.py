"""The truncated algebra g(p) = n+(A_1^(1)) / (e_{p+1}) and its restricted structures.

Basis vectors are ``e_1 .. e_p`` (1-based in every public signature), with
``[e_i, e_j] = a_{i,j} e_{i+j}`` where ``a_{i,j} = [j - i]_3`` is embedded
into GF(p) as one of ``-1, 0, 1``.  Anything landing in degree ``> p`` is
dropped.

Internally an algebra is a structure tensor ``T`` with
``[x, y]_k = sum_{i,j} x_i y_j T[i, j, k]``.  The same machinery serves the
one-dimensional central extensions in :mod:`nilaffine.extensions`, which
just use a bigger tensor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .fplinalg import FieldElement, FieldError, check_prime, inverse_mod

__all__ = [
    "DEFAULT_SEED",
    "AlgebraElement",
    "AxiomCheck",
    "LieAlgebra",
    "RestrictedStructure",
    "TruncatedAlgebra",
    "VerificationReport",
    "basis_element",
    "bracket",
    "center",
    "jacobson_s",
    "nfold_bracket",
    "p_operator",
    "structure_constant",
    "truncated_algebra",
    "verify_restricted",
]

DEFAULT_SEED = 20240601


def residue3(m: int) -> int:
    """Congruence class of ``m`` mod 3 as one of -1, 0, 1."""
    r = m % 3
    return -1 if r == 2 else r


def structure_constant(i: int, j: int, p: int | None = None):
    """``a_{i,j} = [j - i]_3``; a :class:`FieldElement` when ``p`` is given."""
    if i < 1 or j < 1:
        raise ValueError("basis indices start at 1")
    a = residue3(j - i)
    return a if p is None else FieldElement(a, p)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraElement:
    """``sum_i coeffs[i] e_{i+1}`` in g(p); coefficients are residues mod ``p``."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        c = tuple(int(x) % self.p for x in self.coeffs)
        if len(c) != self.p:
            raise ValueError(f"need {self.p} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, p: int) -> "AlgebraElement":
        return cls(p, (0,) * p)

    @classmethod
    def from_array(cls, p: int, a) -> "AlgebraElement":
        return cls(p, tuple(int(x) for x in np.asarray(a).ravel()))

    @classmethod
    def random(cls, p: int, rng: random.Random) -> "AlgebraElement":
        return cls(p, tuple(rng.randrange(p) for _ in range(p)))

    def alpha(self, i: int) -> int:
        """Coefficient of ``e_i`` (1-based)."""
        return self.coeffs[i - 1]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.p != self.p:
            raise FieldError(f"modulus mismatch: {self.p} vs {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.p, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar):
        s = int(scalar)
        return AlgebraElement(self.p, tuple(s * a for a in self.coeffs))

    def terms(self) -> dict[int, int]:
        return {i + 1: c for i, c in enumerate(self.coeffs) if c}

    def __str__(self):
        t = self.terms()
        if not t:
            return "0"
        return " + ".join(f"{c}*e_{i}" if c != 1 else f"e_{i}" for i, c in t.items())


def basis_element(p: int, k: int) -> AlgebraElement:
    if not 1 <= k <= p:
        raise ValueError(f"e_{k} is not a basis vector of g({p})")
    c = [0] * p
    c[k - 1] = 1
    return AlgebraElement(p, tuple(c))


# ---------------------------------------------------------------------------
# structure-tensor algebras
# ---------------------------------------------------------------------------


class LieAlgebra:
    """A finite-dimensional algebra over GF(p) given by its structure tensor."""

    def __init__(self, p: int, tensor: np.ndarray, labels: Sequence[str] | None = None):
        self.p = check_prime(p)
        t = np.asarray(tensor, dtype=np.int64) % self.p
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
            raise ValueError("structure tensor must have shape (n, n, n)")
        t.setflags(write=False)
        self.tensor = t
        self.dim = t.shape[0]
        self.labels = list(labels) if labels else [f"x_{i + 1}" for i in range(self.dim)]

    def vec(self, x) -> np.ndarray:
        if isinstance(x, AlgebraElement):
            x = x.coeffs
        v = np.asarray(x, dtype=np.int64) % self.p
        if v.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}")
        return v

    def bracket(self, x, y) -> np.ndarray:
        x, y = self.vec(x), self.vec(y)
        return np.einsum("i,j,ijk->k", x, y, self.tensor) % self.p

    def right_mult(self, y) -> np.ndarray:
        """Matrix ``R`` with ``x @ R == [x, y]`` for row vectors ``x``."""
        y = self.vec(y)
        return np.einsum("j,ijk->ik", y, self.tensor) % self.p

    def ad(self, x) -> np.ndarray:
        """Matrix of ``ad x`` acting on column vectors: ``ad(x) @ y == [x, y]``."""
        x = self.vec(x)
        return np.einsum("i,ijk->kj", x, self.tensor) % self.p

    def ad_power(self, x, n: int) -> np.ndarray:
        m = self.ad(x)
        out = np.eye(self.dim, dtype=np.int64)
        for _ in range(n):
            out = out @ m % self.p
        return out

    def nfold(self, args: Sequence) -> np.ndarray:
        """Left-normed bracket ``[[..[x1, x2], x3] .., xn]``."""
        if len(args) < 2:
            raise ValueError("an n-fold bracket needs at least two arguments")
        acc = self.vec(args[0])
        for y in args[1:]:
            acc = acc @ self.right_mult(y) % self.p
            if not acc.any():
                return acc
        return acc

    def jacobi_defect(self) -> np.ndarray:
        """``J[i,j,l,:] = [[x_i,x_j],x_l] + [[x_j,x_l],x_i] + [[x_l,x_i],x_j]``."""
        t = self.tensor
        nested = np.einsum("ijm,mln->ijln", t, t) % self.p
        j = nested + np.einsum("jlin->ijln", nested) + np.einsum("lijn->ijln", nested)
        return j % self.p

    def is_antisymmetric(self) -> bool:
        t = self.tensor
        return not ((t + t.transpose(1, 0, 2)) % self.p).any()


class TruncatedAlgebra(LieAlgebra):
    """g(p) with basis ``e_1 .. e_p`` graded by subscript."""

    def __init__(self, p: int):
        p = check_prime(p)
        t = np.zeros((p, p, p), dtype=np.int64)
        for i in range(1, p + 1):
            for j in range(1, p + 1 - i):
                t[i - 1, j - 1, i + j - 1] = residue3(j - i)
        super().__init__(p, t, [f"e_{k}" for k in range(1, p + 1)])

    def element(self, v) -> AlgebraElement:
        return AlgebraElement.from_array(self.p, v)


@lru_cache(maxsize=None)
def truncated_algebra(p: int) -> TruncatedAlgebra:
    return TruncatedAlgebra(p)


def bracket(g: AlgebraElement, h: AlgebraElement) -> AlgebraElement:
    """Lie bracket in g(p)."""
    if g.p != h.p:
        raise FieldError(f"modulus mismatch: {g.p} vs {h.p}")
    alg = truncated_algebra(g.p)
    return alg.element(alg.bracket(g, h))


def nfold_bracket(args: Sequence[AlgebraElement]) -> AlgebraElement:
    if len(args) < 2:
        raise ValueError("an n-fold bracket needs at least two arguments")
    p = args[0].p
    if any(a.p != p for a in args):
        raise FieldError("modulus mismatch")
    alg = truncated_algebra(p)
    return alg.element(alg.nfold(args))


def center(p: int) -> list[AlgebraElement]:
    """Basis of Z(g(p)), found by testing every basis vector.

    Because the algebra is graded with one-dimensional components, the
    center is spanned by the basis vectors it contains.
    """
    alg = truncated_algebra(p)
    out = []
    for k in range(p):
        if not alg.tensor[k].any():
            out.append(basis_element(p, k + 1))
    return out


# ---------------------------------------------------------------------------
# restricted structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RestrictedStructure:
    """p-map data ``e_k^[p] = mu_k e_{p-1} + lambda_k e_p``.

    ``mu`` must vanish unless ``p = 2 (mod 3)``, the only case where
    ``e_{p-1}`` is central.
    """

    p: int
    mu: tuple[int, ...]
    lam: tuple[int, ...]

    def __post_init__(self):
        p = check_prime(self.p)
        if p < 5:
            raise ValueError("only primes p >= 5 are supported")
        mu = tuple(int(x) % p for x in self.mu)
        lam = tuple(int(x) % p for x in self.lam)
        if len(mu) != p or len(lam) != p:
            raise ValueError(f"mu and lambda must have length {p}")
        if any(mu) and p % 3 != 2:
            raise ValueError(f"mu must be zero when p = {p} is not 2 mod 3 (e_{p - 1} is not central)")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "lam", lam)

    @classmethod
    def zero(cls, p: int) -> "RestrictedStructure":
        return cls(p, (0,) * p, (0,) * p)

    @classmethod
    def from_lambda(cls, p: int, lam: Sequence[int]) -> "RestrictedStructure":
        return cls(p, (0,) * p, tuple(lam))

    @property
    def mu_plus_lambda_zero(self) -> bool:
        return all((m + l) % self.p == 0 for m, l in zip(self.mu, self.lam))

    @property
    def regime(self) -> str:
        if self.p % 3 != 2:
            return "p!=2mod3"
        return "p=2mod3,mu+lambda=0" if self.mu_plus_lambda_zero else "p=2mod3,mu+lambda!=0"

    def image_of_basis(self, k: int) -> AlgebraElement:
        """``e_k^[p]`` for 1-based ``k``."""
        c = [0] * self.p
        c[self.p - 2] = self.mu[k - 1]
        c[self.p - 1] = self.lam[k - 1]
        return AlgebraElement(self.p, tuple(c))

    def pmap_array(self, x) -> np.ndarray:
        p = self.p
        a = np.asarray(x, dtype=np.int64)[:p] % p
        ap = np.array([pow(int(v), p, p) for v in a], dtype=np.int64)
        out = np.zeros(p, dtype=np.int64)
        out[p - 2] = int(ap @ np.array(self.mu)) % p
        out[p - 1] = (out[p - 1] + int(ap @ np.array(self.lam))) % p
        return out

    def to_dict(self) -> dict:
        return {"mu": list(self.mu), "lambda": list(self.lam)}


def p_operator(s: RestrictedStructure, g: AlgebraElement) -> AlgebraElement:
    """``g^[p] = (sum a_i^p mu_i) e_{p-1} + (sum a_i^p lambda_i) e_p``."""
    if g.p != s.p:
        raise FieldError("modulus mismatch")
    return AlgebraElement.from_array(s.p, s.pmap_array(g.coeffs))


def jacobson_s(g, h, ambient: LieAlgebra | None = None) -> list[np.ndarray]:
    """Jacobson terms ``s_1 .. s_{p-1}`` of ``(g + h)^[p]``.

    ``i * s_i(g, h)`` is the coefficient of ``t^(i-1)`` in
    ``ad(t g + h)^(p-1)(g)``; the expansion is done with exact polynomial
    coefficients in ``t`` (degree at most ``p - 1``).
    """
    if ambient is None:
        if not isinstance(g, AlgebraElement):
            raise TypeError("pass an ambient algebra for raw vectors")
        ambient = truncated_algebra(g.p)
    p = ambient.p
    g, h = ambient.vec(g), ambient.vec(h)
    adg, adh = ambient.ad(g), ambient.ad(h)
    # poly[d] = coefficient vector of t^d
    poly = np.zeros((p, ambient.dim), dtype=np.int64)
    poly[0] = g
    for _ in range(p - 1):
        nxt = poly @ adh.T
        nxt[1:] += poly[:-1] @ adg.T
        poly = nxt % p
    return [poly[i - 1] * inverse_mod(i, p) % p for i in range(1, p)]


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    checked: int = 0
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class VerificationReport:
    p: int
    seed: int
    samples: int
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "seed": self.seed,
            "samples": self.samples,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _vec_list(v) -> list[int]:
    return [int(x) for x in v]


class _Checker:
    """Accumulates pass/fail for one axiom, keeping the first witness."""

    def __init__(self, name: str):
        self.check = AxiomCheck(name, True)

    def __call__(self, ok: bool, witness_fn):
        self.check.checked += 1
        if not ok and self.check.passed:
            self.check.passed = False
            self.check.witness = witness_fn()


def check_restricted_axioms(
    alg: LieAlgebra,
    pmap,
    samples: int,
    rng: random.Random,
    report: VerificationReport,
) -> VerificationReport:
    """Run Jacobi plus Jacobson's axioms for ``pmap`` on ``alg``.

    ``pmap`` maps a coefficient vector to a coefficient vector.  Checked on
    all basis elements (pairs for additivity) and ``samples`` random ones.
    """
    p, n = alg.p, alg.dim
    eye = np.eye(n, dtype=np.int64)
    basis = [eye[i] for i in range(n)]
    randoms = [np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64) for _ in range(samples)]

    defect = alg.jacobi_defect()
    bad = np.argwhere(defect.any(axis=3))
    jac = AxiomCheck("jacobi_basis_triples", len(bad) == 0, n**3)
    if len(bad):
        i, j, l = bad[0]
        jac.witness = {"triple": [alg.labels[i], alg.labels[j], alg.labels[l]],
                       "defect": _vec_list(defect[i, j, l])}
    report.checks.append(jac)

    anti = _Checker("antisymmetry")
    anti(alg.is_antisymmetric(), lambda: {})
    report.checks.append(anti.check)

    ad_nil = _Checker("ad_p_equals_ad_of_pmap")
    for x in basis + randoms:
        lhs = alg.ad_power(x, p)
        rhs = alg.ad(pmap(x))
        ad_nil(np.array_equal(lhs, rhs), lambda: {"x": _vec_list(x)})
    report.checks.append(ad_nil.check)

    scal = _Checker("frobenius_scaling")
    for x in basis + randoms:
        a = rng.randrange(1, p)
        lhs = pmap(a * x % p)
        rhs = pow(a, p, p) * pmap(x) % p
        scal(np.array_equal(lhs, rhs), lambda: {"x": _vec_list(x), "alpha": a})
    report.checks.append(scal.check)

    add = _Checker("jacobson_additivity")
    pairs = [(basis[i], basis[j]) for i in range(n) for j in range(n) if i != j]
    pairs += [(randoms[i], randoms[(i + 1) % len(randoms)]) for i in range(len(randoms))]
    for x, y in pairs:
        lhs = pmap((x + y) % p)
        rhs = (pmap(x) + pmap(y) + sum(jacobson_s(x, y, alg))) % p
        add(np.array_equal(lhs, rhs), lambda: {"g": _vec_list(x), "h": _vec_list(y),
                                               "lhs": _vec_list(lhs), "rhs": _vec_list(rhs)})
    report.checks.append(add.check)
    return report


def verify_restricted(s: RestrictedStructure, samples: int = 20, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Check that ``s`` makes g(p) a restricted Lie algebra."""
    alg = truncated_algebra(s.p)
    rng = random.Random(seed)
    report = VerificationReport(s.p, seed, samples)

    central = _Checker("pmap_values_central")
    for k in range(1, s.p + 1):
        z = s.image_of_basis(k).array
        central(not alg.ad(z).any(), lambda: {"k": k})
    report.checks.append(central.check)
    return check_restricted_axioms(alg, s.pmap_array, samples, rng, report)
