"""Fusion category data: builtin theories, tetrahedral symbols, ladders, io.

A :class:`FusionCategory` bundles the label set, quantum dimensions, fusion
multiplicities and the (multiplicity-free) recoupling tensor ``f`` of a
string-net input theory, plus optional topological twists for theories whose
doubled anyon content is needed.

The six-index tensor ``f[i, j, m, k, l, n]`` is the recoupling coefficient
with fusion trees ``i x j -> m``, ``m x k -> l`` on one side and
``j x k -> n``, ``i x n -> l`` on the other; entries on inadmissible index
combinations are zero.  On the tetrahedral reduced graph the six slots
correspond to the edges between lattice regions as

====  ===========  =================================
slot  edge name    between regions
====  ===========  =================================
i     ``a``        ``A`` and the complement ``L``
j     ``b``        ``A`` and ``B``
m     ``ab``       ``A`` and ``C``
k     ``c``        ``B`` and ``C``
l     ``abc``      ``C`` and ``L``
n     ``bc``       ``B`` and ``L``
====  ===========  =================================

(the same correspondence is documented for the on-disk format in the
README).
"""

import cmath
import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "FusionCategory",
    "zn_strings",
    "fibonacci",
    "ising",
    "g_symbol",
    "g_table",
    "s_factor",
    "theta_ladder",
    "ladder_chain_sum",
    "pentagon_residual",
    "LadderSpec",
    "BOUNDARIES",
    "EDGE_BOUNDARY",
    "save_category",
    "load_category",
]

#: region-pair boundaries of the tetrahedral graph, one per edge
BOUNDARIES = ("AL", "AB", "BC", "AC", "BL", "CL")

#: edge name -> boundary key
EDGE_BOUNDARY = {"a": "AL", "b": "AB", "c": "BC", "ab": "AC", "bc": "BL", "abc": "CL"}


class FusionCategory:
    """Multiplicity-free fusion data with recoupling tensor.

    Parameters
    ----------
    labels : sequence of str
        Anyon/string labels; index 0 must be the vacuum.
    dual : sequence of int
        ``dual[a]`` is the label fusing with ``a`` to the vacuum.
    dims : sequence of float
        Quantum dimensions, ``dims[0] == 1``.
    fusion : ndarray, shape (n, n, n)
        Fusion multiplicities ``N[a, b, c]`` (0 or 1 here).
    f : ndarray, shape (n,)*6
        Recoupling tensor as described in the module docstring.
    twists : sequence of complex, optional
        Topological spins, needed to build the doubled anyon theory.
    """

    def __init__(self, labels, dual, dims, fusion, f, twists=None):
        self.labels = tuple(str(x) for x in labels)
        self.dual = tuple(int(x) for x in dual)
        self.dims = np.asarray(dims, dtype=np.float64)
        self.fusion = np.asarray(fusion, dtype=np.int8)
        self.f = np.asarray(f, dtype=np.complex128)
        self.twists = None if twists is None else np.asarray(twists, dtype=np.complex128)
        self.n = len(self.labels)

    @property
    def d_total_sq(self):
        """Total quantum dimension squared ``D^2 = sum_a d_a^2``."""
        return float(np.sum(self.dims**2))

    def label_index(self, name):
        try:
            return self.labels.index(str(name))
        except ValueError:
            raise KeyError(f"no label {name!r} in {self.labels}") from None

    def is_admissible(self, i, j, m, k, l, n):
        """Whether the six labels form an admissible tetrahedron."""
        N = self.fusion
        return bool(N[i, j, m] and N[m, k, l] and N[j, k, n] and N[i, n, l])

    def __repr__(self):
        return f"<FusionCategory {'/'.join(self.labels)}>"


def g_symbol(cat, i, j, m, k, l, n):
    """Tetrahedron evaluation ``G = f * sqrt(d_i d_j d_k d_l)``."""
    d = cat.dims
    return cat.f[i, j, m, k, l, n] * math.sqrt(d[i] * d[j] * d[k] * d[l])


def g_table(cat):
    """Dense array of :func:`g_symbol` over all index combinations."""
    d = cat.dims
    w = np.sqrt(
        d[:, None, None, None, None, None]
        * d[None, :, None, None, None, None]
        * d[None, None, None, :, None, None]
        * d[None, None, None, None, :, None]
    )
    return cat.f * w


def s_factor(cat, R):
    """Ladder rung factor ``S_R = sum_i d_i^(R+1) / D^(2R)``."""
    return float(np.sum(cat.dims ** (R + 1)) / cat.d_total_sq**R)


def theta_ladder(cat, cycle_lengths, q0, n_rungs):
    """Closed-form ladder factor for a permutation acting across a boundary.

    For a boundary ladder of `n_rungs` rungs carrying total charge `q0`
    through each replica, with the relative permutation decomposing into
    cycles of the given lengths, the factor is

        (prod_c S_{R_c})^n_rungs * (D^2 / d_q0)^(sum_c R_c - #cycles).

    The sign of the second exponent is pinned by :func:`ladder_chain_sum`,
    which reproduces this expression exactly for abelian inputs.
    """
    cl = [int(R) for R in cycle_lengths]
    prefac = 1.0
    for R in cl:
        prefac *= s_factor(cat, R)
    expo = sum(cl) - len(cl)
    return prefac**n_rungs * (cat.d_total_sq / cat.dims[q0]) ** expo


def ladder_chain_sum(cat, R, q0, n_rungs):
    """Exact finite-ladder overlap for a single cyclic block of length `R`.

    Direct sum over the internal ladder charges with exact fusion
    multiplicities: chain variables ``q_1..q_n`` and ``r_1..r_{n-2}``
    (``r_0 = q0``, ``r_{n-1} = q_n``), one fusion factor per link, weight
    ``d_q0^-R * prod_i d_qi^R`` and normalization ``D^-2R(n-1)``.  Needs
    ``n_rungs >= 2``.  For abelian categories this equals
    :func:`theta_ladder` with a single cycle of length `R` exactly, for any
    ``n_rungs``, which is what fixes that function's exponent sign.
    """
    if n_rungs < 2:
        raise ValueError("chain oracle needs at least 2 rungs")
    n = cat.n
    N = cat.fusion
    d = cat.dims
    dsq = cat.d_total_sq
    total = 0.0
    n_q = n_rungs
    n_r = n_rungs - 2
    for qs in itertools.product(range(n), repeat=n_q):
        wq = d[q0] ** (-R) * np.prod(d[list(qs)] ** R)
        for rs in itertools.product(range(n), repeat=n_r):
            chain = (q0,) + rs + (qs[-1],)
            mult = 1
            for i in range(n_rungs - 1):
                mult *= N[chain[i], qs[i], chain[i + 1]]
                if not mult:
                    break
            if mult:
                total += mult * wq
    return total / dsq ** (R * (n_rungs - 1))


def pentagon_residual(cat):
    """Largest violation of the multiplicity-free pentagon identity.

    Checked in the form
    ``f[p,c,g,d,e,l] f[a,b,p,l,e,k] = sum_h f[a,b,p,c,g,h] f[a,h,g,d,e,k]
    f[b,c,h,d,k,l]`` over all free indices, chunked over ``a`` to bound
    memory.
    """
    F = cat.f
    res = 0.0
    for a in range(cat.n):
        Fa = F[a]
        lhs = np.einsum("pcgdel,bplek->bcdepgkl", F, Fa)
        rhs = np.einsum("bpcgh,hgdek,bchdkl->bcdepgkl", Fa, Fa, F)
        res = max(res, float(np.max(np.abs(lhs - rhs))))
    return res


# ---------------------------------------------------------------- builtins

def zn_strings(N, p):
    """Cyclic string model on Z_N with cocycle exponent `p`.

    All dimensions are 1, fusion is addition mod N, and
    ``f = exp(2 pi i p a / N)`` exactly on the triples ``(a, b, c)`` whose
    ``b + c`` addition wraps past N.
    """
    if N < 1:
        raise ValidationError(f"need N >= 1, got {N}")
    labels = [str(a) for a in range(N)]
    dual = [(-a) % N for a in range(N)]
    dims = np.ones(N)
    fusion = np.zeros((N, N, N), dtype=np.int8)
    for a in range(N):
        for b in range(N):
            fusion[a, b, (a + b) % N] = 1
    f = np.zeros((N,) * 6, dtype=np.complex128)
    for a in range(N):
        for b in range(N):
            for c in range(N):
                wrap = 1 if b + c >= N else 0
                f[a, b, (a + b) % N, c, (a + b + c) % N, (b + c) % N] = cmath.exp(
                    2j * cmath.pi * p * a * wrap / N
                )
    return FusionCategory(labels, dual, dims, fusion, f)


def _fill_admissible_ones(fusion):
    n = fusion.shape[0]
    f = np.zeros((n,) * 6, dtype=np.complex128)
    for idx in itertools.product(range(n), repeat=6):
        i, j, m, k, l, nn = idx
        if fusion[i, j, m] and fusion[m, k, l] and fusion[j, k, nn] and fusion[i, nn, l]:
            f[idx] = 1.0
    return f


def fibonacci():
    """Fibonacci string model: labels 1, tau with tau x tau = 1 + tau."""
    phi = (1 + math.sqrt(5)) / 2
    fusion = np.zeros((2, 2, 2), dtype=np.int8)
    fusion[0, 0, 0] = fusion[0, 1, 1] = fusion[1, 0, 1] = 1
    fusion[1, 1, 0] = fusion[1, 1, 1] = 1
    f = _fill_admissible_ones(fusion)
    s = 1 / math.sqrt(phi)
    f[1, 1, 0, 1, 1, 0] = 1 / phi
    f[1, 1, 0, 1, 1, 1] = s
    f[1, 1, 1, 1, 1, 0] = s
    f[1, 1, 1, 1, 1, 1] = -1 / phi
    twists = [1.0, cmath.exp(4j * cmath.pi / 5)]
    return FusionCategory(["1", "tau"], [0, 1], [1.0, phi], fusion, f, twists)


def ising():
    """Ising string model: labels 1, sigma, psi."""
    fusion = np.zeros((3, 3, 3), dtype=np.int8)
    for a in range(3):
        fusion[0, a, a] = fusion[a, 0, a] = 1
    fusion[1, 1, 0] = fusion[1, 1, 2] = 1
    fusion[1, 2, 1] = fusion[2, 1, 1] = 1
    fusion[2, 2, 0] = 1
    f = _fill_admissible_ones(fusion)
    s = 1 / math.sqrt(2)
    f[1, 1, 0, 1, 1, 0] = s
    f[1, 1, 0, 1, 1, 2] = s
    f[1, 1, 2, 1, 1, 0] = s
    f[1, 1, 2, 1, 1, 2] = -s
    f[1, 2, 1, 1, 2, 1] = -1.0
    f[2, 1, 1, 2, 1, 1] = -1.0
    twists = [1.0, cmath.exp(1j * cmath.pi / 8), -1.0]
    return FusionCategory(
        ["1", "sigma", "psi"], [0, 1, 2], [1.0, math.sqrt(2), 1.0], fusion, f, twists
    )


# ------------------------------------------------------------- ladder spec

@dataclass(frozen=True)
class LadderSpec:
    """Rung counts of the six boundary ladders, keyed per :data:`BOUNDARIES`."""

    lengths: tuple

    def __post_init__(self):
        if len(self.lengths) != 6 or any(
            not isinstance(x, int) or x < 1 for x in self.lengths
        ):
            raise ValidationError(
                f"ladder lengths must be six integers >= 1, got {self.lengths}"
            )

    @classmethod
    def unit(cls):
        return cls((1,) * 6)

    @classmethod
    def from_dict(cls, d):
        lengths = [1] * 6
        for key, val in d.items():
            key = key.replace("Λ", "L")  # Greek Lambda alias
            if key not in BOUNDARIES:
                raise ValidationError(
                    f"unknown boundary {key!r}, expected one of {BOUNDARIES}"
                )
            lengths[BOUNDARIES.index(key)] = int(val)
        return cls(tuple(lengths))

    def get(self, boundary):
        return self.lengths[BOUNDARIES.index(boundary)]

    def as_dict(self):
        return dict(zip(BOUNDARIES, self.lengths))


# ---------------------------------------------------------------- file io

_TOP_KEYS = {"labels", "dual", "dims", "fusion", "f", "twists"}


def _fmt(x):
    return repr(float(x))


def save_category(cat, path):
    """Write a category to the JSON interchange format.

    Numbers are stored as shortest exactly-round-tripping decimal strings,
    so ``load_category(save_category(...))`` reproduces every float bit for
    bit.
    """
    entries = []
    nz = np.argwhere(cat.f != 0)
    for idx in sorted(map(tuple, nz)):
        v = cat.f[idx]
        entries.append({"idx": [int(x) for x in idx], "re": _fmt(v.real), "im": _fmt(v.imag)})
    fus = []
    for abc in sorted(map(tuple, np.argwhere(cat.fusion != 0))):
        fus.append([int(abc[0]), int(abc[1]), int(abc[2]), int(cat.fusion[abc])])
    doc = {
        "labels": list(cat.labels),
        "dual": list(cat.dual),
        "dims": [_fmt(d) for d in cat.dims],
        "fusion": fus,
        "f": entries,
    }
    if cat.twists is not None:
        doc["twists"] = [{"re": _fmt(t.real), "im": _fmt(t.imag)} for t in cat.twists]
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_category(path, pentagon_tol=1e-9):
    """Load and validate a category from the JSON interchange format.

    Every violated requirement is collected and reported in a single
    :class:`~topospin.errors.ValidationError`.
    """
    with open(path) as fh:
        doc = json.load(fh)
    bad = []
    if not isinstance(doc, dict):
        raise ValidationError("category file must contain a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        bad.append(f"unknown keys {sorted(unknown)}")
    for key in ("labels", "dual", "dims", "fusion", "f"):
        if key not in doc:
            bad.append(f"missing key {key!r}")
    if bad:
        raise ValidationError("invalid category file", bad)

    labels = doc["labels"]
    n = len(labels)
    if n == 0 or any(not isinstance(x, str) for x in labels):
        bad.append("labels must be a nonempty array of strings")
    elif len(set(labels)) != n:
        bad.append("labels must be unique")

    dual = doc["dual"]
    if sorted(dual) != list(range(n)):
        bad.append(f"dual must be a permutation of 0..{n - 1}")
    else:
        if dual[0] != 0:
            bad.append("dual of the vacuum must be the vacuum")
        if any(dual[dual[a]] != a for a in range(n)):
            bad.append("dual must be an involution")

    try:
        dims = np.array([float(x) for x in doc["dims"]], dtype=np.float64)
    except (TypeError, ValueError):
        bad.append("dims must be decimal numbers")
        dims = np.ones(n)
    if len(dims) != n:
        bad.append(f"need {n} dims, got {len(dims)}")
        dims = np.ones(n)
    if abs(dims[0] - 1.0) > 1e-12:
        bad.append(f"vacuum dimension must be 1, got {dims[0]!r}")
    if np.any(dims <= 0):
        bad.append("dims must be positive")

    fusion = np.zeros((n, n, n), dtype=np.int8)
    seen = set()
    for ent in doc["fusion"]:
        if (
            not isinstance(ent, list)
            or len(ent) != 4
            or any(not isinstance(x, int) for x in ent)
        ):
            bad.append(f"bad fusion entry {ent!r}")
            continue
        a, b, c, mult = ent
        if not (0 <= a < n and 0 <= b < n and 0 <= c < n) or mult < 0:
            bad.append(f"fusion entry out of range: {ent!r}")
            continue
        if (a, b, c) in seen:
            bad.append(f"duplicate fusion entry for {(a, b, c)}")
        seen.add((a, b, c))
        fusion[a, b, c] = mult
    if np.any(fusion > 1):
        bad.append("fusion multiplicities > 1 are not supported")
    for a in range(n):
        for b in range(n):
            if fusion[0, a, b] != (1 if a == b else 0):
                bad.append("fusion with the vacuum must be trivial")
                break
        else:
            continue
        break
    if not bad:
        for a in range(n):
            for b in range(n):
                want = 1 if b == dual[a] else 0
                if fusion[a, b, 0] != want:
                    bad.append(f"fusion into the vacuum disagrees with dual at ({a},{b})")
        dd = dims[:, None] * dims[None, :]
        closure = np.einsum("abc,c->ab", fusion.astype(float), dims)
        if np.max(np.abs(dd - closure)) > 1e-9:
            bad.append("quantum dimensions inconsistent with fusion rules")
        if any(abs(dims[dual[a]] - dims[a]) > 1e-9 for a in range(n)):
            bad.append("dual labels must have equal dimension")

    f = np.zeros((n,) * 6, dtype=np.complex128)
    seen_idx = set()
    for ent in doc["f"]:
        if not isinstance(ent, dict) or set(ent) != {"idx", "re", "im"}:
            bad.append(f"bad f entry {ent!r}")
            continue
        idx = tuple(ent["idx"])
        if len(idx) != 6 or any(not isinstance(x, int) or not 0 <= x < n for x in idx):
            bad.append(f"f index out of range: {idx!r}")
            continue
        if idx in seen_idx:
            bad.append(f"duplicate f entry for {idx}")
        seen_idx.add(idx)
        i, j, m, k, l, nn = idx
        if not bad and not (
            fusion[i, j, m] and fusion[m, k, l] and fusion[j, k, nn] and fusion[i, nn, l]
        ):
            bad.append(f"f entry on inadmissible indices {idx}")
            continue
        f[idx] = complex(float(ent["re"]), float(ent["im"]))

    twists = None
    if "twists" in doc:
        tw = doc["twists"]
        if len(tw) != n or any(set(t) != {"re", "im"} for t in tw):
            bad.append("twists must be n objects with re/im")
        else:
            twists = np.array(
                [complex(float(t["re"]), float(t["im"])) for t in tw],
                dtype=np.complex128,
            )
            if abs(twists[0] - 1.0) > 1e-9:
                bad.append("vacuum twist must be 1")
            if np.max(np.abs(np.abs(twists) - 1.0)) > 1e-9:
                bad.append("twists must have unit modulus")

    if bad:
        raise ValidationError("invalid category file", bad)

    cat = FusionCategory(labels, dual, dims, fusion, f, twists)
    res = pentagon_residual(cat)
    if res > pentagon_tol:
        raise ValidationError(
            "invalid category file",
            [f"pentagon identity violated (residual {res:.3e})"],
        )
    return cat
