"""Restricted cochains and restricted H^1, H^2 with trivial coefficients.

A restricted 2-cochain is a pair ``(phi, omega)`` where ``omega`` is
*phi-compatible*: ``omega(a g) = a^p omega(g)`` and

    omega(g + h) = omega(g) + omega(h)
                   + sum over sequences (x_1 = g, x_2 = h, x_3..x_p in {g, h})
                     of  phi([x_1, .., x_{p-1}] ^ x_p) / #(g)

with ``#(g)`` the number of slots holding ``g``.  Such an ``omega`` is fixed by
its values on a basis, so the pair is stored as ``(sigma, tau)``:
``sigma`` the coefficients of ``phi`` and ``tau_k = omega(e_k)``.  Then
``omega = tilde(phi) + sum_k tau_k bar(e^k)`` where ``tilde(phi)`` is the
compatible map vanishing on the basis and ``bar(e^k)(g) = alpha_k^p``.

With these coordinates both restricted differentials are ordinary linear
maps over GF(p), and the cohomology is plain kernel-mod-image.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .algebra import (
    AlgebraElement,
    RestrictedStructure,
    basis_element,
    truncated_algebra,
)
from .cochain import Cochain1, Cochain2, Cochain3, basis_index, d1, d2, d_matrix, phi_k
from .cohomology import CohomologyReport, graded_kernel2
from .fplinalg import Echelon, FieldError, check_prime, inverse_mod, kernel_basis, quotient_basis

__all__ = [
    "DEFAULT_BRUTEFORCE_CAP",
    "BruteForceCapError",
    "ClosedFormUnavailable",
    "IndMatrix",
    "Polynomial",
    "RestrictedCochain2",
    "compatibility_sum",
    "bracket_depth",
    "closed_form_for",
    "closed_form_polynomial",
    "d1_star",
    "d1_star_matrix",
    "d2_star",
    "expected_restricted_h2_dim",
    "d2_star_matrix",
    "ind1",
    "ind2_matrix",
    "ind2_piecewise",
    "omega_eval",
    "restricted_h1",
    "restricted_h2",
    "restricted_kernel",
    "tag_cochain",
    "tilde_closed_form",
    "tilde_eval_bruteforce",
]

DEFAULT_BRUTEFORCE_CAP = 19
_CHUNK = 1 << 15


class BruteForceCapError(ValueError):
    """The prime is above the brute-force cap; use a closed form instead."""


class ClosedFormUnavailable(ValueError):
    """No closed form is registered for the requested compatible map."""


# ---------------------------------------------------------------------------
# coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RestrictedCochain2:
    """``(phi, omega)`` stored as ``(sigma, tau)`` with ``tau_k = omega(e_k)``."""

    sigma: Cochain2
    tau: tuple[int, ...]

    def __post_init__(self):
        p = self.sigma.p
        t = tuple(int(x) % p for x in self.tau)
        if len(t) != p:
            raise ValueError(f"tau must have length {p}")
        object.__setattr__(self, "tau", t)

    @property
    def p(self) -> int:
        return self.sigma.p

    @classmethod
    def from_sigma(cls, sigma: Cochain2) -> "RestrictedCochain2":
        """``(phi, tilde(phi))``."""
        return cls(sigma, (0,) * sigma.p)

    @classmethod
    def bar(cls, p: int, k: int) -> "RestrictedCochain2":
        """``(0, bar(e^k))``."""
        tau = [0] * p
        tau[k - 1] = 1
        return cls(Cochain2.zero(p), tuple(tau))

    @classmethod
    def from_vector(cls, p: int, v) -> "RestrictedCochain2":
        v = np.asarray(v, dtype=np.int64)
        n = len(basis_index(2, p))
        return cls(Cochain2.from_array(p, v[:n]), tuple(int(x) for x in v[n:]))

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.sigma.array, np.array(self.tau, dtype=np.int64)])

    def __add__(self, other: "RestrictedCochain2") -> "RestrictedCochain2":
        return RestrictedCochain2(self.sigma + other.sigma, tuple(a + b for a, b in zip(self.tau, other.tau)))

    def __rmul__(self, scalar) -> "RestrictedCochain2":
        s = int(scalar)
        return RestrictedCochain2(s * self.sigma, tuple(s * t for t in self.tau))

    def is_zero(self) -> bool:
        return self.sigma.is_zero() and not any(self.tau)

    def to_dict(self) -> dict:
        half = self.p // 2
        tau = [[f"bar e^{{{k + 1}}}", t - self.p if t > half else t] for k, t in enumerate(self.tau) if t]
        return {"sigma": self.sigma.to_sparse(), "tau": tau}

    def __str__(self):
        bars = " + ".join(f"{t}*bar(e^{k + 1})" for k, t in enumerate(self.tau) if t) or "0"
        return f"({self.sigma}, tilde + {bars})"


@dataclass(frozen=True)
class IndMatrix:
    """``entries[m-1][n-1] = phi(e_m ^ e_n^[p])``; determines ind^2 completely."""

    p: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_array(cls, p: int, a) -> "IndMatrix":
        a = np.asarray(a, dtype=np.int64) % p
        return cls(p, tuple(tuple(int(x) for x in row) for row in a))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.p, self.p)

    def __getitem__(self, mn: tuple[int, int]) -> int:
        m, n = mn
        return self.entries[m - 1][n - 1]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def evaluate(self, g: AlgebraElement, h: AlgebraElement) -> int:
        """``ind^2(g, h)``: linear in ``g``, p-semilinear in ``h``."""
        p = self.p
        a = g.array
        b = np.array([pow(x, p, p) for x in h.coeffs], dtype=np.int64)
        return int(a @ self.array @ b) % p


# ---------------------------------------------------------------------------
# compatible maps by direct enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _inverses(p: int) -> np.ndarray:
    # #(g) runs from 1 to p - 1 since slot 2 always holds h
    return np.array([0] + [inverse_mod(c, p) for c in range(1, p)], dtype=np.int64)


def compatibility_sum(phi: Cochain2, g, h) -> int:
    """The correction term ``omega(g+h) - omega(g) - omega(h)`` forced by ``phi``.

    Enumerates all ``2^(p-2)`` sequences ``(g, h, x_3, .., x_p)``, tracking the
    running left-normed bracket as one row per sequence and dropping rows that
    have become zero.
    """
    p = phi.p
    alg = truncated_algebra(p)
    g, h = alg.vec(g), alg.vec(h)
    s = phi.matrix()
    sg, sh = s @ g % p, s @ h % p
    rg, rh = alg.right_mult(g), alg.right_mult(h)
    inv = _inverses(p)

    start = alg.bracket(g, h)
    if not start.any():
        return 0
    total = 0
    stack = [(start[None, :], np.ones(1, dtype=np.int64), 2)]
    while stack:
        rows, counts, length = stack.pop()
        if length == p - 1:
            # last slot: x_p = g adds one to #(g), x_p = h does not
            vg = rows @ sg % p
            vh = rows @ sh % p
            total += int((vg * inv[counts + 1] + vh * inv[counts]).sum() % p)
            continue
        rows = np.concatenate([rows @ rg % p, rows @ rh % p])
        counts = np.concatenate([counts + 1, counts])
        keep = rows.any(axis=1)
        rows, counts = rows[keep], counts[keep]
        for lo in range(0, len(rows), _CHUNK):
            stack.append((rows[lo:lo + _CHUNK], counts[lo:lo + _CHUNK], length + 1))
    return total % p


def tilde_eval_bruteforce(phi: Cochain2, g: AlgebraElement, cap: int = DEFAULT_BRUTEFORCE_CAP) -> int:
    """``tilde(phi)(g)`` by peeling ``g`` into basis summands.

    ``g = a_1 e_1 + rest`` gives ``tilde(g) = tilde(rest) + correction(a_1 e_1,
    rest)`` because ``tilde`` vanishes on multiples of basis vectors; repeat
    on ``rest``.
    """
    p = phi.p
    if g.p != p:
        raise FieldError("modulus mismatch")
    if p > cap:
        raise BruteForceCapError(f"p={p} exceeds the brute-force cap {cap}; use a closed form or raise the cap")
    rest = g.array
    value = 0
    for k in np.flatnonzero(rest)[:-1]:
        head = np.zeros(p, dtype=np.int64)
        head[k] = rest[k]
        rest = rest.copy()
        rest[k] = 0
        value += compatibility_sum(phi, head, rest)
    return value % p


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in ``alpha_1..alpha_n`` (and optionally ``beta``) with rational coefficients.

    Monomials are exponent tuples; variables ``0..n-1`` are alphas and
    ``n..2n-1`` betas when ``two_sets`` is set.
    """

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...] = ()
    two_sets: bool = False

    @classmethod
    def monomial(cls, nvars: int, exps: dict[int, int], coeff=1, two_sets=False) -> "Polynomial":
        e = [0] * nvars
        for var, power in exps.items():
            e[var] = power
        return cls(nvars, ((tuple(e), Fraction(coeff)),), two_sets)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc: dict[tuple[int, ...], Fraction] = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return Polynomial(self.nvars, tuple((e, c) for e, c in acc.items() if c), self.two_sets or other.two_sets)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.nvars, tuple((e, c * v) for e, v in self.terms if c * v), self.two_sets)

    def evaluate(self, values: Sequence[int], p: int) -> int:
        total = 0
        for e, c in self.terms:
            term = c.numerator * inverse_mod(c.denominator, p)
            for v, k in zip(values, e):
                if k:
                    term = term * pow(int(v), k, p)
            total += term
        return total % p

    def _var(self, i: int) -> str:
        if self.two_sets:
            half = self.nvars // 2
            return f"alpha_{i + 1}" if i < half else f"beta_{i - half + 1}"
        return f"alpha_{i + 1}"

    def sorted_terms(self):
        # lexicographic in variable index, then exponent
        def key(item):
            e, _ = item
            return [(i, -k) for i, k in enumerate(e) if k]
        return sorted(self.terms, key=key)

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(self._var(i) + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            mag = abs(c)
            coeff = "" if mag == 1 else f"({mag})*" if mag.denominator != 1 else f"{mag}*"
            out.append(("- " if c < 0 else "+ ") + coeff + (mono or "1"))
        s = " ".join(out)
        return s[2:] if s.startswith("+") else "-" + s[2:]

    def __str__(self):
        return self.render()


def closed_form_polynomial(tag: str, p: int, reading: str = "derived") -> Polynomial:
    """``tilde`` of a named cochain as a polynomial in the alphas.

    Tags: ``e14``, ``e25``, ``e1p``, ``phi_p1`` (phi_{p+1}) and ``phi:K`` for
    ``phi_K`` with ``3 <= K <= p + 1``.

    ``reading="derived"`` (the default) is what the compatibility law actually
    forces in g(p): every (p-1)-fold left-normed bracket vanishes (see
    :func:`bracket_depth`), so the correction term is identically 0 and every
    tilde map is 0.  ``reading="reference"`` gives the formulas quoted in the
    literature, ``alpha_1^(p-1) alpha_2`` for ``phi_{p+1}`` and ``e^{1,p}`` and
    ``(1/2) alpha_1^3 alpha_2^2`` for ``e^{2,5}`` at ``p = 5``; they are not
    compatible maps here and are kept only for comparison.
    """
    p = check_prime(p)
    if reading not in ("derived", "reference"):
        raise ValueError(f"unknown reading {reading!r}")
    zero = Polynomial(p)
    if tag.startswith("phi:"):
        k = int(tag.split(":", 1)[1])
        if k == p + 1:
            tag = "phi_p1"
        elif not 3 <= k <= p:
            raise ClosedFormUnavailable(f"no closed form registered for tag {tag!r} at p={p}")
        else:
            return zero
    if tag not in ("e14", "e25", "e1p", "phi_p1"):
        raise ClosedFormUnavailable(f"no closed form registered for tag {tag!r} at p={p}")
    if reading == "derived" or tag == "e14":
        return zero
    if tag == "e25":
        return Polynomial.monomial(p, {0: 3, 1: 2}, Fraction(1, 2)) if p == 5 else zero
    return Polynomial.monomial(p, {0: p - 1, 1: 1})


def bracket_depth(p: int) -> int:
    """Length of the longest nonzero left-normed bracket of basis vectors.

    Brackets of basis vectors are multiples of basis vectors, so this is a
    longest path in the graph ``e_i -> e_{i+j}`` (edge when ``a_{i,j} != 0``).
    When it is below ``p - 1`` the compatibility correction vanishes for all
    ``g, h`` and every tilde map is 0.
    """
    t = truncated_algebra(p).tensor
    depth = [1] * (p + 1)
    for i in range(p, 0, -1):
        for j in range(1, p + 1 - i):
            if t[i - 1, j - 1].any():
                depth[i] = max(depth[i], depth[i + j] + 1)
    return max(depth[1:])


def tag_cochain(tag: str, p: int) -> Cochain2:
    if tag == "e14":
        return Cochain2.basis_cochain(p, 1, 4)
    if tag == "e25":
        return Cochain2.basis_cochain(p, 2, 5)
    if tag == "e1p":
        return Cochain2.basis_cochain(p, 1, p)
    if tag == "phi_p1":
        return phi_k(p, p + 1)
    if tag.startswith("phi:"):
        return phi_k(p, int(tag.split(":", 1)[1]))
    raise ClosedFormUnavailable(f"unknown tag {tag!r}")


def tilde_closed_form(tag: str, p: int, g: AlgebraElement, reading: str = "derived") -> int:
    return closed_form_polynomial(tag, p, reading).evaluate(g.coeffs, p)


def _closed_form_tags(p: int) -> list[str]:
    return ["e14", "e25", "e1p"] + [f"phi:{k}" for k in range(3, p + 2)]


def closed_form_for(phi: Cochain2, reading: str = "derived") -> Polynomial:
    """``tilde(phi)`` for any ``phi`` in the span of the registered cochains.

    Uses linearity of ``phi -> tilde(phi)``; raises
    :class:`ClosedFormUnavailable` outside that span.
    """
    p = phi.p
    tags = _closed_form_tags(p)
    cols = np.stack([tag_cochain(t, p).array for t in tags], axis=1)
    aug = np.concatenate([cols, phi.array[:, None]], axis=1)
    from .fplinalg import FpMatrix, rref

    red, pivots, _ = rref(FpMatrix(aug, p))
    if len(tags) in pivots:
        raise ClosedFormUnavailable("no closed form for this 2-cochain; use brute force")
    a = red.array
    poly = Polynomial(p)
    for row, col in enumerate(pivots):
        coeff = int(a[row, -1])
        if coeff:
            poly = poly + closed_form_polynomial(tags[col], p, reading).scale(coeff)
    return poly


def omega_eval(c: RestrictedCochain2, g: AlgebraElement, method: str = "bruteforce",
               cap: int = DEFAULT_BRUTEFORCE_CAP) -> int:
    """``omega(g) = tilde(phi)(g) + sum_k tau_k alpha_k^p``.

    ``method`` is ``bruteforce``, ``closed`` (derived closed forms),
    ``reference`` (the literature formulas, not compatible in general) or
    ``auto`` (brute force up to ``cap``, closed forms beyond).
    """
    p = c.p
    if g.p != p:
        raise FieldError("modulus mismatch")
    if method == "auto":
        method = "bruteforce" if p <= cap else "closed"
    if method == "bruteforce":
        t = tilde_eval_bruteforce(c.sigma, g, cap)
    elif method in ("closed", "reference"):
        reading = "derived" if method == "closed" else "reference"
        t = closed_form_for(c.sigma, reading).evaluate(g.coeffs, p)
    else:
        raise ValueError(f"unknown method {method!r}")
    bar = sum(tk * pow(a, p, p) for tk, a in zip(c.tau, g.coeffs))
    return (t + bar) % p


# ---------------------------------------------------------------------------
# induced maps and restricted differentials
# ---------------------------------------------------------------------------


def ind1(psi: Cochain1, s: RestrictedStructure) -> tuple[int, ...]:
    """``tau_k = psi(e_k^[p]) = gamma_{p-1} mu_k + gamma_p lambda_k``.

    ``ind^1(psi)`` is p-semilinear, and ``tilde(d^1 psi)`` vanishes because
    ``psi`` of a p-fold bracket is 0, so ``tau`` determines it.
    """
    if psi.p != s.p:
        raise FieldError("modulus mismatch")
    p = s.p
    return tuple((psi(p - 1) * m + psi(p) * l) % p for m, l in zip(s.mu, s.lam))


def ind2_matrix(phi: Cochain2, s: RestrictedStructure) -> IndMatrix:
    """``phi(e_m ^ e_n^[p])`` for all basis pairs, by wedge evaluation."""
    if phi.p != s.p:
        raise FieldError("modulus mismatch")
    p = s.p
    sm = phi.matrix()
    images = np.stack([s.image_of_basis(n).array for n in range(1, p + 1)], axis=1)
    return IndMatrix.from_array(p, sm @ images % p)


def ind2_piecewise(phi: Cochain2, s: RestrictedStructure) -> IndMatrix:
    """The same matrix from the case formula in terms of ``sigma``.

    Since ``e_n^[p] = mu_n e_{p-1} + lambda_n e_p``:
    rows ``m <= p-2`` are ``mu_n sigma_{m,p-1} + lambda_n sigma_{m,p}``,
    row ``p-1`` is ``lambda_n sigma_{p-1,p}`` and row ``p`` is
    ``-mu_n sigma_{p-1,p}``.
    """
    p = s.p
    a = np.zeros((p, p), dtype=np.int64)
    mu, lam = np.array(s.mu), np.array(s.lam)
    for m in range(1, p - 1):
        a[m - 1] = mu * phi(m, p - 1) + lam * phi(m, p)
    a[p - 2] = lam * phi(p - 1, p)
    a[p - 1] = -mu * phi(p - 1, p)
    return IndMatrix.from_array(p, a)


def d1_star(psi: Cochain1, s: RestrictedStructure) -> RestrictedCochain2:
    return RestrictedCochain2(d1(psi), ind1(psi, s))


def d2_star(c: RestrictedCochain2, s: RestrictedStructure) -> tuple[Cochain3, IndMatrix]:
    """``(d^2 phi, ind^2(phi, omega))``; the second part ignores ``omega``."""
    return d2(c.sigma), ind2_matrix(c.sigma, s)


def _ind2_linear_map(s: RestrictedStructure) -> np.ndarray:
    """``p^2 x C(p,2)`` matrix sending sigma to the flattened ind^2 matrix."""
    p = s.p
    labs = list(basis_index(2, p))
    cols = []
    for lab in labs:
        cols.append(ind2_matrix(Cochain2.basis_cochain(p, *lab), s).array.ravel())
    return np.stack(cols, axis=1)


def d2_star_matrix(s: RestrictedStructure) -> np.ndarray:
    """Full matrix of d^2_* in (sigma, tau) coordinates: rows C^3 then ind^2 entries."""
    p = s.p
    top = d_matrix(2, p).array
    bottom = _ind2_linear_map(s)
    left = np.concatenate([top, bottom], axis=0)
    return np.concatenate([left, np.zeros((left.shape[0], p), dtype=np.int64)], axis=1)


def d1_star_matrix(s: RestrictedStructure) -> np.ndarray:
    p = s.p
    cols = [d1_star(Cochain1.basis_cochain(p, k), s).vector for k in range(1, p + 1)]
    return np.stack(cols, axis=1)


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------


def _named_classes(p: int) -> list[tuple[str, RestrictedCochain2]]:
    out = [
        ("(e^{1,4}, tilde)", RestrictedCochain2.from_sigma(Cochain2.basis_cochain(p, 1, 4))),
        ("(e^{2,5}, tilde)", RestrictedCochain2.from_sigma(Cochain2.basis_cochain(p, 2, 5))),
        ("(phi_{p+1}, tilde)", RestrictedCochain2.from_sigma(phi_k(p, p + 1))),
    ]
    out += [(f"(0, bar e^{{{k}}})", RestrictedCochain2.bar(p, k)) for k in range(1, p + 1)]
    return out


def expected_restricted_h2_dim(s: RestrictedStructure) -> int:
    """Dimension predicted by the regime: ``p + 2`` only when p = 2 mod 3 and mu + lambda != 0."""
    return s.p + 2 if s.regime == "p=2mod3,mu+lambda!=0" else s.p + 3


def restricted_h1(s: RestrictedStructure) -> CohomologyReport:
    p = s.p
    top = d_matrix(1, p).array
    bottom = np.stack([np.array(ind1(Cochain1.basis_cochain(p, k), s)) for k in range(1, p + 1)], axis=1)
    from .fplinalg import FpMatrix

    ker = kernel_basis(FpMatrix(np.concatenate([top, bottom]), p))
    reps = [Cochain1.from_array(p, v) for v in ker]
    graded = {k: 0 for k in range(1, p + 1)}
    for r in reps:
        for k in r.degrees():
            graded[k] += 1
    report = CohomologyReport(p, 1, len(ker), graded, reps, len(ker), 0,
                              extra={"regime": s.regime, "structure": s.to_dict()})
    report.compare("h1star_dimension", 2, report.dimension)
    ech = Echelon(p, p, ker)
    ok = ech.dimension == 2 and ech.contains(Cochain1.basis_cochain(p, 1).array) \
        and ech.contains(Cochain1.basis_cochain(p, 2).array)
    report.compare("h1star_basis", ["e^{1}", "e^{2}"], ["e^{1}", "e^{2}"] if ok else [str(r) for r in reps])
    return report


def restricted_kernel(s: RestrictedStructure) -> list[np.ndarray]:
    """Basis of ker d^2_* in (sigma, tau) coordinates.

    ``sigma`` must be an ordinary cocycle with vanishing ind^2; every ``tau``
    is allowed.  The ordinary cocycles come from the graded kernels.
    """
    p = s.p
    z = [c.array for k in range(3, 2 * p) for c in graded_kernel2(p, k)]
    ind = _ind2_linear_map(s)
    from .fplinalg import FpMatrix

    zmat = np.stack(z, axis=1)
    combos = kernel_basis(FpMatrix(ind @ zmat % p, p))
    n2 = zmat.shape[0]
    out = []
    for c in combos:
        out.append(np.concatenate([zmat @ c % p, np.zeros(p, dtype=np.int64)]))
    for k in range(p):
        v = np.zeros(n2 + p, dtype=np.int64)
        v[n2 + k] = 1
        out.append(v)
    return out


def restricted_h2(s: RestrictedStructure) -> CohomologyReport:
    p = s.p
    ker = restricted_kernel(s)
    img = [v for v in d1_star_matrix(s).T if v.any()]
    dim, reps = quotient_basis(ker, img, p)
    image_dim = Echelon(len(ker[0]), p, img).dimension
    rep_cochains = [RestrictedCochain2.from_vector(p, v) for v in reps]
    # restricted classes are not homogeneous, so count them by kind instead
    graded = {"sigma": sum(not r.sigma.is_zero() for r in rep_cochains),
              "bar": sum(r.sigma.is_zero() for r in rep_cochains)}

    ker_ech = Echelon(len(ker[0]), p, ker)
    img_ech = Echelon(len(ker[0]), p, img)
    present = []
    for name, c in _named_classes(p):
        if ker_ech.contains(c.vector) and img_ech.add(c.vector):
            present.append(name)

    report = CohomologyReport(
        p, 2, dim, graded, rep_cochains, len(ker), image_dim,
        extra={"regime": s.regime, "structure": s.to_dict(), "named_classes": present},
    )
    report.compare("h2star_dimension", expected_restricted_h2_dim(s), dim)
    expected_names = [n for n, _ in _named_classes(p)]
    if s.regime == "p=2mod3,mu+lambda!=0":
        expected_names.remove("(phi_{p+1}, tilde)")
    report.compare("h2star_basis_classes", expected_names, present)
    return report
