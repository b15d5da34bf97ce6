"""Minimality certificates: how many wavefunction copies a detector needs.

A scheme that multiplies ``k`` tetra amplitudes and ``k`` conjugated ones
is blind to arbitrary per-vertex phase disorder exactly when, at each of
the four vertices, the multiset of label pairs seen by the plain copies
matches the one seen by the conjugated copies.  A *witness pair* is such a
balanced collection whose cocycle phases nevertheless fail to cancel — it
certifies that ``k`` copies suffice to detect the cocycle.  The minimum
``k`` over all witness pairs is found by exhaustive search; since a
balanced pair is ``2r`` replicas of a permuted overlap, the minimal ``k``
certifies the replica count below which no circuit-robust contraction can
see the phase.

The search enumerates the signed multiplicity vector ``c`` (plain minus
conjugated count per configuration) in lexicographic order.  At each of
the four vertices the configurations sharing a view form a class whose
``c``-sum must vanish, and every class closes at its lexicographically
last member, where the value is forced; only the ``(N-1)^3`` positions
closing no class branch.  Symmetry is quotiented by requiring the first
nonzero entry positive (global sign flip) and a nonzero entry in the
leading ``(0, 0, *)`` block (label translations in the first two slots).
"""

import math
import time
from dataclasses import dataclass
from typing import Optional

from .errors import ValidationError

__all__ = [
    "VERTEX_NAMES",
    "vertex_views",
    "WitnessPair",
    "phase_numerator",
    "phase_sum",
    "verify_witness",
    "canonical_witness",
    "SearchResult",
    "min_replica_search",
]

#: the four tetra vertices, named after the circuit tables applied there
VERTEX_NAMES = ("alpha", "beta", "gamma", "delta")


def vertex_views(N, config):
    """Label pair seen at each vertex by a tetra configuration."""
    a, b, c = config
    return {
        "alpha": (a, b),
        "beta": (c, (a + b) % N),
        "gamma": (b, c),
        "delta": (a, (b + c) % N),
    }


def phase_numerator(N, config):
    """Integer cocycle exponent of a configuration at unit coupling."""
    a, b, c = config
    return a if (b % N) + (c % N) >= N else 0


@dataclass(frozen=True)
class WitnessPair:
    """Equal-size multisets of plain and conjugated tetra configurations."""

    N: int
    kets: tuple
    bras: tuple

    def __post_init__(self):
        if len(self.kets) != len(self.bras) or not self.kets:
            raise ValidationError(
                f"need equally many (>=1) plain and conjugated configurations, "
                f"got {len(self.kets)} and {len(self.bras)}"
            )
        for side in (self.kets, self.bras):
            for conf in side:
                if len(conf) != 3 or any(not 0 <= x < self.N for x in conf):
                    raise ValidationError(f"configuration {conf!r} not in Z_{self.N}^3")

    @property
    def k(self):
        return len(self.kets)


def phase_sum(witness):
    """Net cocycle exponent ``sum_kets - sum_bras`` mod N (unit coupling)."""
    N = witness.N
    tot = sum(phase_numerator(N, x) for x in witness.kets)
    tot -= sum(phase_numerator(N, x) for x in witness.bras)
    return tot % N


def verify_witness(witness, p=1):
    """Check balance at all four vertices and phase nontriviality.

    Returns
    -------
    dict
        ``balanced`` maps each vertex name to a bool; ``phase`` is the net
        exponent at unit coupling; ``nontrivial`` tells whether the phase
        survives at coupling `p`; ``disjoint`` tells whether no
        configuration appears on both sides; ``valid`` requires balance
        and nontriviality.
    """
    N = witness.N
    balanced = {}
    for name in VERTEX_NAMES:
        hist = {}
        for x in witness.kets:
            v = vertex_views(N, x)[name]
            hist[v] = hist.get(v, 0) + 1
        for x in witness.bras:
            v = vertex_views(N, x)[name]
            hist[v] = hist.get(v, 0) - 1
        balanced[name] = all(m == 0 for m in hist.values())
    ph = phase_sum(witness)
    nontrivial = (p * ph) % N != 0
    ket_set = {}
    for x in witness.kets:
        ket_set[x] = ket_set.get(x, 0) + 1
    disjoint = all(x not in ket_set for x in witness.bras)
    return {
        "k": witness.k,
        "balanced": balanced,
        "phase": ph,
        "nontrivial": nontrivial,
        "disjoint": disjoint,
        "valid": all(balanced.values()) and nontrivial,
    }


def canonical_witness(N, base=(0, 0, 0), step=1):
    """Closed witness family of size ``2 * N / gcd(step, N)``.

    With ``u = step`` and ``T = N / gcd(u, N)``, the plain side collects
    ``(a, b + t*u, c)`` and ``(a+u, b + (t-1)*u, c+u)`` for ``t = 1..T``
    and the conjugated side the same with the third labels exchanged.
    Every vertex balances for any nonzero step; the net phase is
    ``u * (W(c+u) - W(c))`` with ``W(x)`` counting wrapped additions of
    ``x`` against the orbit of second labels, which for ``u`` coprime to
    ``N`` reduces to ``u**2`` mod N.
    """
    u = step % N
    if u == 0:
        raise ValidationError("step must be nonzero mod N")
    a, b, c = (x % N for x in base)
    T = N // math.gcd(u, N)
    kets, bras = [], []
    for t in range(1, T + 1):
        kets.append((a, (b + t * u) % N, c))
        kets.append(((a + u) % N, (b + (t - 1) * u) % N, (c + u) % N))
        bras.append((a, (b + t * u) % N, (c + u) % N))
        bras.append(((a + u) % N, (b + (t - 1) * u) % N, c))
    return WitnessPair(N, tuple(kets), tuple(bras))


# ------------------------------------------------------------- the search

@dataclass(frozen=True)
class SearchResult:
    N: int
    p: int
    k_min: Optional[int]
    witness: Optional[WitnessPair]
    nodes: int
    elapsed_ms: float
    exhausted: tuple


def _search_tables(N):
    n3 = N**3
    nsq = N * N
    member = []
    completes = []
    p1 = []
    for i in range(n3):
        a, rem = divmod(i, nsq)
        b, c = divmod(rem, N)
        cls = (
            a * N + b,                       # alpha (a, b)
            nsq + c * N + (a + b) % N,        # beta (c, a+b)
            2 * nsq + b * N + c,              # gamma (b, c)
            3 * nsq + a * N + (b + c) % N,    # delta (a, b+c)
        )
        member.append(cls)
        comp = []
        if c == N - 1:
            comp.append(cls[0])
        if a == N - 1:
            comp.append(cls[1])
            comp.append(cls[2])
        if b == N - 1:
            comp.append(cls[3])
        completes.append(tuple(comp))
        p1.append(a if b + c >= N else 0)
    return member, completes, p1


def _search_k(N, p, k, member, completes, p1, stats):
    n3 = N**3
    nsq = N * N
    csum = [0] * (4 * nsq)
    openabs = [0, 0, 0, 0]
    cvals = [0] * n3
    st = {"pos": 0, "neg": 0, "phase": 0, "nz": 0}
    comp_sets = [frozenset(t) for t in completes]

    def attempt(i, v):
        # apply c[i] = v; recurse; undo.  Returns the witness or None.
        pos, neg = st["pos"], st["neg"]
        if v > 0:
            pos += v
            if pos > k:
                return None
        elif v < 0:
            neg -= v
            if neg > k:
                return None
        touched = member[i]
        closing = comp_sets[i]
        for cl in touched:
            old = csum[cl]
            new = old + v
            vt = cl // nsq
            if cl in closing:
                openabs[vt] -= abs(old)
            else:
                openabs[vt] += abs(new) - abs(old)
            csum[cl] = new
        st["pos"], st["neg"] = pos, neg
        st["phase"] += v * p1[i]
        if v != 0:
            st["nz"] += 1
        cvals[i] = v
        room = 2 * k - pos - neg
        ok = openabs[0] <= room and openabs[1] <= room and openabs[2] <= room and openabs[3] <= room
        found = go(i + 1) if ok else None
        cvals[i] = 0
        if v != 0:
            st["nz"] -= 1
        st["phase"] -= v * p1[i]
        if v > 0:
            st["pos"] -= v
        elif v < 0:
            st["neg"] += v
        for cl in touched:
            old = csum[cl]
            new = old - v
            vt = cl // nsq
            if cl in closing:
                openabs[vt] += abs(new)
            else:
                openabs[vt] += abs(new) - abs(old)
            csum[cl] = new
        return found

    def go(i):
        stats["nodes"] += 1
        if i == n3:
            if st["pos"] == k and (p * st["phase"]) % N != 0:
                kets, bras = [], []
                for j, v in enumerate(cvals):
                    a, rem = divmod(j, nsq)
                    conf = (a,) + divmod(rem, N)
                    if v > 0:
                        kets.extend([conf] * v)
                    elif v < 0:
                        bras.extend([conf] * (-v))
                return WitnessPair(N, tuple(kets), tuple(bras))
            return None
        if i == N and st["nz"] == 0:
            return None  # translation quotient: leading block must be hit
        comp = completes[i]
        if comp:
            v = -csum[comp[0]]
            for cl in comp[1:]:
                if -csum[cl] != v:
                    return None
            return attempt(i, v)
        hi = k - st["pos"]
        lo = -(k - st["neg"])
        res = attempt(i, 0)
        if res is not None:
            return res
        for mag in range(1, max(hi, -lo) + 1):
            if mag <= hi:
                res = attempt(i, mag)
                if res is not None:
                    return res
            if st["nz"] and -mag >= lo:
                res = attempt(i, -mag)
                if res is not None:
                    return res
        return None

    return go(0)


def min_replica_search(N, p=1, k_max=8):
    """Smallest balanced pair size that still detects the cocycle.

    Tries ``k = 1, 2, ...`` in turn, exhausting each size completely
    before moving on, so a returned ``k_min`` is a proof of minimality
    and the sizes below it are certified impossible.  With no witness up
    to `k_max`, ``k_min`` and ``witness`` are None and `exhausted` lists
    every size ruled out.
    """
    if N < 2:
        raise ValidationError(f"need N >= 2, got {N}")
    if p % N == 0:
        raise ValidationError("coupling p vanishes mod N; nothing to detect")
    t0 = time.perf_counter()
    member, completes, p1 = _search_tables(N)
    stats = {"nodes": 0}
    ruled_out = []
    for k in range(1, k_max + 1):
        witness = _search_k(N, p, k, member, completes, p1, stats)
        if witness is not None:
            return SearchResult(
                N=N,
                p=p,
                k_min=k,
                witness=witness,
                nodes=stats["nodes"],
                elapsed_ms=(time.perf_counter() - t0) * 1e3,
                exhausted=tuple(ruled_out),
            )
        ruled_out.append(k)
    return SearchResult(
        N=N,
        p=p,
        k_min=None,
        witness=None,
        nodes=stats["nodes"],
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        exhausted=tuple(ruled_out),
    )
