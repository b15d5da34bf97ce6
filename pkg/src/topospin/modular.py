"""Invariants from modular data: twist spectra, doubling, lens-space values.

This is the reference route.  Given the anyon content of a (doubled) phase
as labels, quantum dimensions and twists, the degree-``r`` invariant is the
dimension-weighted power sum of the twists,

    phi(r) = (1/D) * sum_a d_a^2 theta_a^r,       D = sqrt(sum_a d_a^2),

whose phase is the degree-``r`` central charge of the phase and whose value
relates to the lens-space partition function by ``Z(r) = phi(r) / D``.
"""

import cmath
import math

import numpy as np

from .errors import ValidationError, ZeroPhi

__all__ = [
    "ModularData",
    "twisted_zn",
    "doubled",
    "phi_invariant",
    "lens_partition",
    "phi_closed_form_zn",
    "higher_central_charge",
]


class ModularData:
    """Anyon content of a phase: labels, quantum dimensions, twists."""

    def __init__(self, labels, dims, twists):
        self.labels = tuple(str(x) for x in labels)
        self.dims = np.asarray(dims, dtype=np.float64)
        self.twists = np.asarray(twists, dtype=np.complex128)
        if not (len(self.labels) == len(self.dims) == len(self.twists)):
            raise ValidationError(
                f"labels/dims/twists length mismatch: "
                f"{len(self.labels)}/{len(self.dims)}/{len(self.twists)}"
            )
        self.n = len(self.labels)

    @property
    def d_total_sq(self):
        return float(np.sum(self.dims**2))

    @property
    def d_total(self):
        return math.sqrt(self.d_total_sq)

    def __repr__(self):
        return f"<ModularData n={self.n} D^2={self.d_total_sq:.6g}>"


def twisted_zn(N, p):
    """Anyon content of the twisted Z_N gauge theory.

    ``N^2`` anyons ``(s, m)`` with unit dimension and twists
    ``exp(2 pi i (p s^2 / N^2 + m s / N))``.
    """
    if N < 1:
        raise ValidationError(f"need N >= 1, got {N}")
    labels, twists = [], []
    for s in range(N):
        for m in range(N):
            labels.append(f"({s},{m})")
            twists.append(cmath.exp(2j * cmath.pi * (p * s * s / N**2 + m * s / N)))
    return ModularData(labels, np.ones(N * N), twists)


def doubled(cat):
    """Anyon content of the double of a string-model input category.

    Anyons are pairs ``(a, b-bar)`` with dimension ``d_a d_b`` and twist
    ``theta_a * conj(theta_b)``.  The input category must carry twists.
    """
    if cat.twists is None:
        raise ValidationError(f"{cat!r} has no twists; cannot build its double")
    labels, dims, twists = [], [], []
    for a in range(cat.n):
        for b in range(cat.n):
            labels.append(f"{cat.labels[a]}|{cat.labels[b]}-bar")
            dims.append(cat.dims[a] * cat.dims[b])
            twists.append(cat.twists[a] * np.conj(cat.twists[b]))
    return ModularData(labels, dims, twists)


def phi_invariant(md, r):
    """Dimension-weighted twist power sum ``(1/D) sum_a d_a^2 theta_a^r``."""
    return complex(np.sum(md.dims**2 * md.twists ** int(r)) / md.d_total)


def lens_partition(md, r):
    """Lens-space value ``sum_a (d_a/D)^2 theta_a^r = phi(r) / D``."""
    return complex(np.sum((md.dims / md.d_total) ** 2 * md.twists ** int(r)))


def phi_closed_form_zn(N, p, r):
    """Closed form of the invariant for the twisted Z_N theory.

    With ``g = gcd(N, r)`` the double sum over anyons collapses to

        phi = sum_{q=0}^{g-1} exp(2 pi i r p q^2 / g^2).
    """
    g = math.gcd(int(N), int(r))
    return sum(cmath.exp(2j * cmath.pi * r * p * q * q / g**2) for q in range(g))


def higher_central_charge(md, r, tol=1e-12):
    """Unit-modulus phase ``phi(r) / |phi(r)|``.

    Raises
    ------
    ZeroPhi
        If ``|phi(r)|`` vanishes (below `tol` times the trivial scale), in
        which case the phase is undefined.
    """
    val = phi_invariant(md, r)
    if abs(val) <= tol * md.d_total:
        raise ZeroPhi(
            f"phi vanishes at r={r} (|phi|={abs(val):.3e}); central charge undefined"
        )
    return val / abs(val)
