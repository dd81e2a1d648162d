"""Homotopy-sphere bookkeeping.

Exact Bernoulli numbers feed the order of the cyclic subgroup bP, which is
assembled with a built-in cokernel-of-J table into the full group of
homotopy spheres in odd dimensions, together with the two distinguished
boundary spheres of the standard plumbings and the subgroup they generate.

The cokernel-of-J table is data, not a computation.  Built-ins cover
degrees 7, 11, 15, 19; further degrees can be supplied per call or through
a JSON file named by the environment variable ``HDMCG_COKER_J_TABLE``
(schema: ``[{"degree": 23, "rank": 0, "torsion": [..]}, ...]``).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .abgroups import (FinAbGroup, GroupElement, element_order, from_relations,
                       quotient_by, quotient_with_projection)
from .linalg import IntMatrix

COKER_J_ENV = "HDMCG_COKER_J_TABLE"

_BUILTIN_COKER_J: dict[int, FinAbGroup] = {
    7: FinAbGroup.trivial(),
    11: FinAbGroup.trivial(),
    15: FinAbGroup.cyclic(2),
    19: FinAbGroup.cyclic(2),
}

_BP_REFERENCE = {8: 28, 12: 992, 16: 8128, 20: 261632}


class UnsupportedDimension(ValueError):
    """Raised when a computation needs data outside the built-in tables."""


_bernoulli_cache: list[Fraction] = [Fraction(1)]


def _bernoulli_classical(n: int) -> Fraction:
    """B_n in the convention with B_1 = -1/2, via the binomial recurrence."""
    while len(_bernoulli_cache) <= n:
        m = len(_bernoulli_cache)
        s = sum(comb(m + 1, j) * _bernoulli_cache[j] for j in range(m))
        _bernoulli_cache.append(Fraction(-s, m + 1))
    return _bernoulli_cache[n]


def bernoulli(k: int) -> Fraction:
    """|B_{2k}| as an exact rational (topologist convention)."""
    if k < 1:
        raise ValueError("index must be >= 1")
    return abs(_bernoulli_classical(2 * k))


_bp_validated = False


def bp_order(dim: int) -> int:
    """Order of the cyclic group of (dim-1)-spheres bounding parallelisable
    manifolds, dim = 4k with k >= 2:

        2^(2k-2) * (2^(2k-1) - 1) * numerator(4 B_k / k).

    The formula is validated once against the four reference values
    28, 992, 8128, 261632; a mismatch aborts every caller.
    """
    global _bp_validated
    if dim % 4 or dim < 8:
        raise ValueError("dimension must be a multiple of 4, at least 8")
    k = dim // 4
    value = 2 ** (2 * k - 2) * (2 ** (2 * k - 1) - 1) \
        * (Fraction(4) * bernoulli(k) / k).numerator
    if not _bp_validated:
        _bp_validated = True  # set first so the reference loop can recurse
        for d, expected in _BP_REFERENCE.items():
            got = bp_order(d)
            if got != expected:
                _bp_validated = False
                raise RuntimeError(
                    f"bP order formula failed validation: dim {d} gave {got}, "
                    f"expected {expected}")
    return value


def _load_env_table() -> dict[int, FinAbGroup]:
    path = os.environ.get(COKER_J_ENV)
    if not path:
        return {}
    return load_coker_j_file(path)


def load_coker_j_file(path: str) -> dict[int, FinAbGroup]:
    """Parse a coker-J extension file into a degree -> group table."""
    with open(path, "r", encoding="utf-8") as fh:
        entries = json.load(fh)
    table = {}
    for entry in entries:
        table[int(entry["degree"])] = FinAbGroup.of(
            int(entry.get("rank", 0)), entry.get("torsion", []))
    return table


def coker_j(degree: int, extra_table: dict[int, FinAbGroup] | None = None) -> FinAbGroup:
    """Cokernel of the stable J-homomorphism in the given degree (table-backed)."""
    if extra_table and degree in extra_table:
        return extra_table[degree]
    if degree in _BUILTIN_COKER_J:
        return _BUILTIN_COKER_J[degree]
    env = _load_env_table()
    if degree in env:
        return env[degree]
    raise UnsupportedDimension(
        f"coker-J table exhausted at degree {degree}; built-ins cover "
        f"{sorted(_BUILTIN_COKER_J)}. Extend it by passing extra_table= or by "
        f"pointing the environment variable {COKER_J_ENV} at a JSON file "
        f'[{{"degree": {degree}, "rank": 0, "torsion": [...]}}, ...].')


@dataclass(frozen=True)
class SphereData:
    """The group of homotopy (2n+1)-spheres with its distinguished pieces."""

    n: int
    theta: FinAbGroup
    sigma_p: GroupElement
    sigma_q: GroupElement
    bp_generators: tuple[GroupElement, ...]
    ba_generators: tuple[GroupElement, ...]
    coker_j_group: FinAbGroup
    omega: FinAbGroup
    sigma_q_order_assumed: bool
    sigma_q_ambient: tuple[int, ...] = field(repr=False, default=())

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "theta": self.theta.to_json_dict(),
            "sigma_P": list(self.sigma_p.coords),
            "sigma_Q": list(self.sigma_q.coords),
            "bA_generators": [list(x.coords) for x in self.ba_generators],
            "coker_J": self.coker_j_group.to_json_dict(),
            "omega": self.omega.to_json_dict(),
            "sigma_q_order_assumed": self.sigma_q_order_assumed,
        }


@dataclass(frozen=True)
class AlmostClosedInvariants:
    """Signature and, in the dimensions where it exists, the framing
    obstruction number chi^2 of an almost closed highly connected manifold."""

    sgn: int
    chi2: int | None = None


def theta_data(n: int, sigma_q_order: int | None = None,
               sigma_q_ambient: tuple[int, ...] | None = None,
               coker_j_table: dict[int, FinAbGroup] | None = None) -> SphereData:
    """Assemble the homotopy-sphere group for odd n >= 3.

    The group splits as Z/|bP| + coker J.  Sigma_P generates the bP
    summand.  Sigma_Q is 0 for n = 1 mod 4, equals -Sigma_P for n = 3, 7,
    and for the remaining n = 3 mod 4 defaults to the order-2 element of
    the bP summand; that default can be overridden by ``sigma_q_order``
    (its order inside bP) or pinned exactly with ``sigma_q_ambient``
    (coordinates: bP first, then the coker-J coordinates).  n = 11 is
    refused unless explicit Sigma_Q data is supplied.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    if n == 11 and sigma_q_ambient is None:
        raise UnsupportedDimension(
            "n = 11 is an exceptional case: Sigma_Q does not bound a "
            "parallelisable manifold there, and its placement is not part of "
            "the built-in data. Supply sigma_q_ambient explicitly to proceed.")
    bp = bp_order(2 * n + 2)
    ck = coker_j(2 * n + 1, coker_j_table)
    m = 1 + ck.num_coords
    rel_entries = [bp] + [0] * ck.rank + list(ck.torsion)
    relations = IntMatrix.from_columns(
        [[rel_entries[i] if i == j else 0 for i in range(m)]
         for j in range(m) if rel_entries[j] != 0], rows=m)
    theta, proj = from_relations(m, relations)

    def from_ambient(vec) -> GroupElement:
        return theta.element(proj.mult_vec(list(vec)))

    e0 = [0] * m
    e0[0] = 1
    sigma_p = from_ambient(e0)
    assumed = False
    if sigma_q_ambient is not None:
        amb = tuple(int(x) for x in sigma_q_ambient)
        if len(amb) != m:
            raise ValueError(f"sigma_q_ambient needs {m} coordinates")
    elif n % 4 == 1:
        amb = (0,) * m
    elif n in (3, 7):
        amb = tuple(-x for x in e0)
    else:
        order = 2 if sigma_q_order is None else int(sigma_q_order)
        assumed = sigma_q_order is None
        if order < 1 or bp % order:
            raise ValueError(f"sigma_q_order must divide |bP| = {bp}")
        amb = tuple((bp // order) * x for x in e0)
    sigma_q = from_ambient(amb)

    if n % 4 == 1:
        ba = (sigma_p,)
    elif n in (3, 7):
        ba = (sigma_q,)
    else:
        ba = (sigma_p, sigma_q)

    if element_order(sigma_p) != bp:
        raise RuntimeError("Sigma_P does not have order |bP| in the assembly")

    # omega = coker J modulo the image of Sigma_Q, and theta/bA must agree
    ck_proj_coords = list(amb[1:])
    if ck.num_coords:
        sq_in_ck = ck.element(ck_proj_coords)
        omega = quotient_by(ck, [sq_in_ck])
    else:
        omega = ck
    if quotient_by(theta, list(ba)) != omega:
        raise RuntimeError("theta/bA disagrees with coker J/<Sigma_Q>")

    return SphereData(n=n, theta=theta, sigma_p=sigma_p, sigma_q=sigma_q,
                      bp_generators=(sigma_p,), ba_generators=ba,
                      coker_j_group=ck, omega=omega,
                      sigma_q_order_assumed=assumed, sigma_q_ambient=amb)


def boundary_of_plumbing(inv: AlmostClosedInvariants, n: int,
                         data: SphereData | None = None) -> GroupElement:
    """Boundary sphere of an almost closed n-connected (2n+2)-manifold with
    the given invariants, as an element of the homotopy-sphere group.

        n = 1 mod 4:            sgn/8 * Sigma_P
        n = 3 mod 4, not 3, 7:  sgn/8 * Sigma_P + chi2/2 * Sigma_Q
        n = 3, 7:               (chi2 - sgn)/8 * Sigma_Q
    """
    if data is None:
        data = theta_data(n)
    if n % 4 == 1:
        if inv.chi2 is not None:
            raise ValueError(
                "chi2 is not defined for n = 1 mod 4 (signature-only regime)")
        if inv.sgn % 8:
            raise ValueError(
                f"signature {inv.sgn} not divisible by 8 (n = 1 mod 4 regime)")
        return (inv.sgn // 8) * data.sigma_p
    if inv.chi2 is None:
        raise ValueError("chi2 is required for n = 3 mod 4")
    if n in (3, 7):
        if (inv.chi2 - inv.sgn) % 8:
            raise ValueError(
                f"chi2 - sgn = {inv.chi2 - inv.sgn} not divisible by 8 "
                f"(n = {n} regime)")
        return ((inv.chi2 - inv.sgn) // 8) * data.sigma_q
    if inv.sgn % 8:
        raise ValueError(
            f"signature {inv.sgn} not divisible by 8 (n = 3 mod 4 regime)")
    if inv.chi2 % 2:
        raise ValueError(
            f"chi2 = {inv.chi2} not even (n = 3 mod 4 regime)")
    return (inv.sgn // 8) * data.sigma_p + (inv.chi2 // 2) * data.sigma_q


def omega_tau(n: int, **kwargs) -> FinAbGroup:
    """Bordism group of closed (2n+1)-manifolds with highly connected
    normal structure: coker J modulo the class of Sigma_Q."""
    return theta_data(n, **kwargs).omega


def minimal_signature(n: int, **kwargs) -> int:
    """Minimal positive signature of a closed smooth n-connected
    (2n+2)-manifold: 1 for n = 3, 7, else 8 * |bA / <Sigma_Q>|."""
    if n in (3, 7):
        return 1
    data = theta_data(n, **kwargs)
    _, proj = quotient_with_projection(data.theta, [data.sigma_q])
    quotient_group = quotient_by(data.theta, [data.sigma_q])
    image = quotient_group.element(proj.mult_vec(list(data.sigma_p.coords)))
    order = element_order(image)
    if order is None:
        raise RuntimeError("Sigma_P image has infinite order; data corrupt")
    return 8 * order


def ba_quotient_by_sigma_q(n: int, **kwargs) -> FinAbGroup:
    """bA / <Sigma_Q>, the cyclic group generated by the image of Sigma_P."""
    if n in (3, 7):
        return FinAbGroup.trivial()
    return FinAbGroup.cyclic(minimal_signature(n, **kwargs) // 8)
