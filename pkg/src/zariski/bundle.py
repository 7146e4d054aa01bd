"""Rank-two projective bundle classes over a surface, in exact arithmetic.

The setting: a smooth projective surface carries two ample divisor classes
``D`` and ``H`` recorded only through their pairings ``D^2``, ``D.H``,
``H^2``.  On the bundle ``P(O(D) + O(-H))`` the tautological class ``L``
and pullbacks ``pi*(xD + yH)`` span a three-parameter family whose cubic
intersection numbers follow from the two relations

    ``L^3 = (D - H)^2 + D.H``  and  ``L^2 . pi*(g) = (D - H).g``,

together with ``L . pi*(g) . pi*(g') = g.g'`` and the vanishing of triple
pullback products.  The fiberwise decomposition of a class ``tL + pi*(b)``
has negative part ``s * E`` with ``E = L - pi*(D)`` and

    ``s = min{ s in [0, t] : b + sD - (t - s)H is nef on the base }``,

which leads to quadratic irrationalities: the decomposition of ``L`` itself
has volume ``q`` in a real quadratic extension, and suitable pairing data
makes that volume irrational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .engine import InternalInconsistencyError, NotPseudoEffectiveError
from .exact import MixedRadicandError, QuadExt, quadratic_roots

Scalar = Union[Fraction, QuadExt]


class IrrationalClassError(ValueError):
    """Bundle decomposition of a non-rational class needed new radicals."""


def is_rational(x: Scalar) -> bool:
    return not isinstance(x, QuadExt) or x.is_rational


def _demote(x: Scalar) -> Scalar:
    """Collapse a rational QuadExt back to a plain Fraction."""
    if isinstance(x, QuadExt) and x.is_rational:
        return x.as_fraction()
    return x


def _as_scalar(x) -> Scalar:
    if isinstance(x, QuadExt):
        return x
    return Fraction(x)


def _common_radicand(values: Sequence[Scalar]) -> int:
    ds = {v.d for v in values if isinstance(v, QuadExt) and v.d}
    if len(ds) > 1:
        raise MixedRadicandError(
            f"classes mix distinct radicands {sorted(ds)}"
        )
    return ds.pop() if ds else 0


@dataclass(frozen=True)
class BaseSurface:
    """Pairing data of two ample classes D, H on the base surface."""

    d_sq: Fraction
    dh: Fraction
    h_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d_sq", Fraction(self.d_sq))
        object.__setattr__(self, "dh", Fraction(self.dh))
        object.__setattr__(self, "h_sq", Fraction(self.h_sq))
        for label, value in (("D^2", self.d_sq), ("D.H", self.dh), ("H^2", self.h_sq)):
            if value <= 0:
                raise ValueError(f"ample pairing {label} must be positive, got {value}")
        if self.d_sq * self.h_sq > self.dh * self.dh:
            raise ValueError(
                "pairings violate the index constraint (D.H)^2 >= D^2 * H^2: "
                f"{self.dh}^2 < {self.d_sq} * {self.h_sq}"
            )

    def pair(self, u: tuple[Scalar, Scalar], v: tuple[Scalar, Scalar]) -> Scalar:
        """Intersection of ``u[0]D + u[1]H`` with ``v[0]D + v[1]H``."""
        (x, y), (x2, y2) = u, v
        return (
            x * x2 * self.d_sq
            + (x * y2 + x2 * y) * self.dh
            + y * y2 * self.h_sq
        )

    def in_nef_cone(self, g: tuple[Scalar, Scalar]) -> bool:
        """Nef test in the rational surface cone spanned around D, H.

        With both generators ample, a combination is nef iff it has
        nonnegative self-pairing and pairs nonnegatively with the ample
        ray ``D + H``.
        """
        return self.pair(g, g) >= 0 and self.pair(g, (1, 1)) >= 0


@dataclass(frozen=True)
class BundleClass:
    """The class ``t*L + pi*(x*D + y*H)`` on the bundle."""

    t: Scalar
    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "t", _as_scalar(self.t))
        object.__setattr__(self, "x", _as_scalar(self.x))
        object.__setattr__(self, "y", _as_scalar(self.y))

    def base_part(self) -> tuple[Scalar, Scalar]:
        return (self.x, self.y)


L = BundleClass(1, 0, 0)


def intersect3(
    base: BaseSurface, c1: BundleClass, c2: BundleClass, c3: BundleClass
) -> Scalar:
    """Exact triple intersection number of three bundle classes."""
    _common_radicand(
        [c1.t, c1.x, c1.y, c2.t, c2.x, c2.y, c3.t, c3.x, c3.y]
    )
    l3 = base.d_sq - base.dh + base.h_sq  # (D-H)^2 + D.H

    def lsq_pair(g: tuple[Scalar, Scalar]) -> Scalar:
        # L^2 . pi*(g) = (D - H).g
        return g[0] * (base.d_sq - base.dh) + g[1] * (base.dh - base.h_sq)

    g1, g2, g3 = c1.base_part(), c2.base_part(), c3.base_part()
    total = c1.t * c2.t * c3.t * l3
    total = total + c1.t * c2.t * lsq_pair(g3)
    total = total + c1.t * c3.t * lsq_pair(g2)
    total = total + c2.t * c3.t * lsq_pair(g1)
    total = total + c1.t * base.pair(g2, g3)
    total = total + c2.t * base.pair(g1, g3)
    total = total + c3.t * base.pair(g1, g2)
    return _demote(total)


def mu_quadratic(base: BaseSurface) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of the self-pairing of ``-H + t(D + H)`` on the base."""
    a = base.d_sq + 2 * base.dh + base.h_sq
    b = -2 * (base.dh + base.h_sq)
    c = base.h_sq
    return a, b, c


def mu_candidates(base: BaseSurface) -> tuple[QuadExt, ...]:
    """Both roots of the threshold quadratic, ascending (diagnostics)."""
    return quadratic_roots(*mu_quadratic(base))


def mu_L(base: BaseSurface) -> Scalar:
    """Smallest ``t > 0`` with ``-H + t(D + H)`` nef on the base.

    The self-pairing of ``-H + t(D + H)`` is a quadratic in ``t`` whose
    discriminant is nonnegative by the index constraint; among its roots
    the admissible one must also pair nonnegatively with the ample ray.
    The result always lies in ``(0, 1]``.
    """
    roots = mu_candidates(base)
    pairing_shift = base.dh + base.h_sq
    slope = base.d_sq + 2 * base.dh + base.h_sq
    chosen = None
    for r in roots:
        if r > 0 and r * slope - pairing_shift >= 0:
            chosen = r
            break
    if chosen is None or not chosen <= 1:
        raise InternalInconsistencyError(
            f"no admissible threshold in (0, 1] for {base}; roots {roots}"
        )
    return _demote(chosen)


def decompose_bundle(
    base: BaseSurface, alpha: BundleClass
) -> tuple[BundleClass, Scalar]:
    """Split ``alpha = Z + s*E`` with ``E = L - pi*(D)`` and ``Z`` nef.

    ``alpha = tL + pi*(xD + yH)`` is pseudo-effective iff ``t >= 0`` and
    ``(x + t)D + yH`` is nef on the base; otherwise
    :class:`NotPseudoEffectiveError` is raised.  The coefficient ``s`` is
    the least value in ``[0, t]`` making ``(x + s)D + (y - t + s)H`` nef,
    found exactly among the endpoint candidates and the roots of the
    self-pairing quadratic along the segment.
    """
    t, x, y = alpha.t, alpha.x, alpha.y
    if t < 0:
        raise NotPseudoEffectiveError("fiber-coefficient-negative", t=t)
    projected = (x + t, y)
    if not base.in_nef_cone(projected):
        raise NotPseudoEffectiveError(
            "base-projection-outside-nef",
            q_self=base.pair(projected, projected),
            q_ample=base.pair(projected, (1, 1)),
        )

    def gamma(s: Scalar) -> tuple[Scalar, Scalar]:
        return (x + s, y - t + s)

    if base.in_nef_cone(gamma(0)):
        return alpha, Fraction(0)

    if not (is_rational(t) and is_rational(x) and is_rational(y)):
        raise IrrationalClassError(
            "only rational classes are supported outside the nef cone; "
            f"got {alpha}"
        )
    t, x, y = Fraction(_demote(t)), Fraction(_demote(x)), Fraction(_demote(y))

    w = (x, y - t)
    direction = (Fraction(1), Fraction(1))
    a = base.pair(direction, direction)
    b = 2 * base.pair(w, direction)
    c = base.pair(w, w)
    candidates: list[Scalar] = [Fraction(0), t]
    slope_zero = -base.pair(w, direction) / a
    candidates.append(slope_zero)
    candidates.extend(quadratic_roots(a, b, c))
    admissible = [
        s for s in candidates if 0 <= s and s <= t and base.in_nef_cone(gamma(s))
    ]
    if not admissible:
        raise InternalInconsistencyError(
            f"no admissible negative-part coefficient for {alpha} over {base}"
        )
    s = min(admissible)
    z = BundleClass(_demote(t - s), _demote(x + s), _demote(y))
    return z, _demote(s)


def volume_L(base: BaseSurface) -> Scalar:
    """Volume of the tautological class: cube of its nef positive part."""
    z, _ = decompose_bundle(base, L)
    return intersect3(base, z, z, z)
