"""One-dimensional central extensions ``E = g(p) + F c`` from restricted 2-cocycles.

``[g, h]_E = [g, h] + phi(g ^ h) c`` with ``c`` central, and
``(g + a c)^[p]_E = g^[p] + omega(g) c``.  ``verify_extension`` checks the
restricted Lie algebra axioms on ``E`` directly, independent of any
cohomology computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_SEED,
    AlgebraElement,
    AxiomCheck,
    LieAlgebra,
    RestrictedStructure,
    VerificationReport,
    _Checker,
    check_restricted_axioms,
    truncated_algebra,
)
from .cochain import Cochain1, Cochain2, basis_index, label, phi_k
from .restricted import (
    DEFAULT_BRUTEFORCE_CAP,
    ClosedFormUnavailable,
    Polynomial,
    RestrictedCochain2,
    closed_form_for,
    d1_star,
    omega_eval,
    restricted_h2,
)

__all__ = [
    "ExtensionAlgebra",
    "build_extension",
    "cocycle_from_name",
    "isomorphism_defect",
    "render_extension_table",
    "verify_extension",
]


class ExtensionAlgebra(LieAlgebra):
    """``g(p) + F c`` with basis ``e_1 .. e_p, c`` (``c`` is the last coordinate)."""

    def __init__(self, structure: RestrictedStructure, cocycle: RestrictedCochain2,
                 method: str = "auto", cap: int = DEFAULT_BRUTEFORCE_CAP):
        p = structure.p
        if cocycle.p != p:
            raise ValueError("cocycle and structure use different primes")
        if method in ("auto", "closed") and p > cap or method == "closed":
            # fail early rather than on the first p-map evaluation
            closed_form_for(cocycle.sigma)
        t = np.zeros((p + 1, p + 1, p + 1), dtype=np.int64)
        t[:p, :p, :p] = truncated_algebra(p).tensor
        t[:p, :p, p] = cocycle.sigma.matrix()
        super().__init__(p, t, [f"e_{k}" for k in range(1, p + 1)] + ["c"])
        self.structure = structure
        self.cocycle = cocycle
        self.method = method
        self.cap = cap
        self._omega: dict[tuple[int, ...], int] = {}

    def omega(self, g) -> int:
        key = tuple(int(x) % self.p for x in np.asarray(g)[: self.p])
        if key not in self._omega:
            el = AlgebraElement(self.p, key)
            self._omega[key] = omega_eval(self.cocycle, el, self.method, self.cap)
        return self._omega[key]

    def pmap(self, x) -> np.ndarray:
        x = self.vec(x)
        out = np.zeros(self.dim, dtype=np.int64)
        out[: self.p] = self.structure.pmap_array(x[: self.p])
        out[self.p] = self.omega(x)
        return out


def build_extension(structure: RestrictedStructure, cocycle: RestrictedCochain2,
                    method: str = "auto", cap: int = DEFAULT_BRUTEFORCE_CAP) -> ExtensionAlgebra:
    return ExtensionAlgebra(structure, cocycle, method, cap)


def verify_extension(e: ExtensionAlgebra, samples: int = 20, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Jacobi, centrality of ``c``, ``c^[p] = 0`` and Jacobson's axioms on ``E``."""
    p = e.p
    rng = random.Random(seed)
    report = VerificationReport(p, seed, samples)
    t = e.tensor
    central = AxiomCheck("c_central", not t[p].any() and not t[:, p].any(), 2 * e.dim)
    report.checks.append(central)

    c = np.zeros(e.dim, dtype=np.int64)
    c[p] = 1
    cp = _Checker("c_pmap_zero")
    cp(not e.pmap(c).any(), lambda: {"c^[p]": e.pmap(c).tolist()})
    report.checks.append(cp.check)
    return check_restricted_axioms(e, e.pmap, samples, rng, report)


def isomorphism_defect(e1: ExtensionAlgebra, e2: ExtensionAlgebra, psi: Cochain1) -> list[str]:
    """Where ``f(x) = x + psi(x) c`` fails to be a restricted isomorphism ``e1 -> e2``.

    If ``e2``'s cocycle is ``e1``'s plus ``d^1_*(psi)``, the list is empty.
    """
    p = e1.p
    f = np.eye(p + 1, dtype=np.int64)
    f[:p, p] = psi.array  # row x maps to x @ f
    problems = []
    eye = np.eye(p + 1, dtype=np.int64)
    for i in range(p + 1):
        for j in range(p + 1):
            lhs = e2.bracket(eye[i] @ f % p, eye[j] @ f % p)
            rhs = e1.bracket(eye[i], eye[j]) @ f % p
            if not np.array_equal(lhs, rhs):
                problems.append(f"bracket {e1.labels[i]},{e1.labels[j]}")
    rng = random.Random(0)
    points = [eye[i] for i in range(p)] + [np.array([rng.randrange(p) for _ in range(p)] + [0]) for _ in range(10)]
    for x in points:
        if not np.array_equal(e2.pmap(x @ f % p), e1.pmap(x) @ f % p):
            problems.append(f"pmap {x.tolist()}")
    return problems


# ---------------------------------------------------------------------------
# named cocycles and the extension table
# ---------------------------------------------------------------------------


def cocycle_from_name(name: str, p: int) -> RestrictedCochain2:
    """``e14``, ``e25``, ``phi_p1`` (each with its tilde map) or ``bar:k``."""
    if name == "e14":
        return RestrictedCochain2.from_sigma(Cochain2.basis_cochain(p, 1, 4))
    if name == "e25":
        return RestrictedCochain2.from_sigma(Cochain2.basis_cochain(p, 2, 5))
    if name == "phi_p1":
        return RestrictedCochain2.from_sigma(phi_k(p, p + 1))
    if name.startswith("bar:"):
        k = int(name.split(":", 1)[1])
        if not 1 <= k <= p:
            raise ValueError(f"bar index {k} outside 1..{p}")
        return RestrictedCochain2.bar(p, k)
    raise ValueError(f"unknown cocycle name {name!r}")


_CLASS_NAMES = {
    "(e^{1,4}, tilde)": "e14",
    "(e^{2,5}, tilde)": "e25",
    "(phi_{p+1}, tilde)": "phi_p1",
}


def _bracket_delta(sigma: Cochain2) -> Polynomial:
    """``sigma(g ^ h)`` as a polynomial in alphas (g) and betas (h)."""
    p = sigma.p
    poly = Polynomial(2 * p, two_sets=True)
    for (i, j), v in sigma.terms().items():
        v = v - p if v > p // 2 else v
        poly = poly + Polynomial.monomial(2 * p, {i - 1: 1, p + j - 1: 1}, v, True)
        poly = poly + Polynomial.monomial(2 * p, {j - 1: 1, p + i - 1: 1}, -v, True)
    return poly


def _pmap_delta(c: RestrictedCochain2, reading: str) -> Polynomial:
    p = c.p
    poly = closed_form_for(c.sigma, reading)
    for k, t in enumerate(c.tau):
        if t:
            poly = poly + Polynomial.monomial(p, {k: p}, t - p if t > p // 2 else t)
    return poly


def render_extension_table(structure: RestrictedStructure, reading: str = "derived") -> list[dict]:
    """One row per basis class of restricted H^2 that is named in the standard basis.

    Each row lists the extra term of ``[g, h]_E`` and of ``g^[p]_E`` (both
    multiplied by ``c``) with ``g = sum alpha_i e_i`` and ``h = sum beta_i e_i``.
    ``reading`` selects which tilde closed forms fill the p-map column.
    """
    p = structure.p
    h2 = restricted_h2(structure)
    rows = []
    for cls in h2.extra["named_classes"]:
        if cls in _CLASS_NAMES:
            name = _CLASS_NAMES[cls]
        else:
            name = "bar:" + cls.split("{")[1].rstrip("})")
        c = cocycle_from_name(name, p)
        rows.append({
            "cocycle": name,
            "class": cls,
            "sigma": [label(lab) for lab in sorted(c.sigma.terms())],
            "bracket_delta": _bracket_delta(c.sigma).render(),
            "pmap_delta": _pmap_delta(c, reading).render(),
        })
    return rows
