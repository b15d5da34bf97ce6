"""Permutations of replica sheets for doubled-state moment contractions.

A contraction of ``2r`` wavefunction replicas is organized as two sheets of
``r`` replicas each; slot ``(s, t)`` (sheet ``s`` in ``{1, 2}``, position
``t`` in ``0..r-1``) is flattened to index ``(s-1)*r + t``.  Three regions
``A``, ``B``, ``C`` of the lattice each carry their own replica permutation
(the complement ``L`` always carries the identity); the standard choice is

* ``alpha`` : ``(1,t) -> (1,t-1)``, ``(2,t) -> (2,t+1)``
* ``beta``  : ``(s,t) -> (3-s,t)``
* ``gamma`` : ``(1,t) -> (2,t-1)``, ``(2,t) -> (1,t+1)``

which satisfy ``beta o gamma = alpha``, ``beta**2 = gamma**2 = id`` and
``alpha**r = id``.

An edge of the reduced tetrahedral graph lies between two regions; its label
configuration survives the contraction iff it is constant on the orbits of
the relative permutation of those two regions, see :func:`edge_orbits`.
"""

from dataclasses import dataclass

__all__ = [
    "ReplicaPermutation",
    "identity",
    "alpha",
    "beta",
    "gamma",
    "reflection_permutation",
    "Triple",
    "canonical_triple",
    "identity_triple",
    "conjugate_triple",
    "reflection_triple",
    "EDGES",
    "edge_orbits",
    "glue_source",
]

#: edge name -> (region, region); the first region is used for glue routing.
EDGES = {
    "a": ("A", "L"),
    "b": ("A", "B"),
    "c": ("B", "C"),
    "ab": ("A", "C"),
    "bc": ("B", "L"),
    "abc": ("C", "L"),
}


class ReplicaPermutation:
    """A permutation of the ``2r`` replica slots.

    Stored as the image tuple ``dest`` with ``dest[i]`` the slot that slot
    ``i`` is mapped to.  Instances are immutable and hashable.
    """

    def __init__(self, r, dest):
        dest = tuple(int(x) for x in dest)
        if len(dest) != 2 * r or sorted(dest) != list(range(2 * r)):
            raise ValueError(f"not a permutation of {2 * r} slots: {dest}")
        self.r = r
        self.dest = dest

    @property
    def size(self):
        return 2 * self.r

    def __call__(self, slot):
        return self.dest[slot]

    def compose(self, other):
        """Return ``self o other`` (apply `other` first)."""
        if other.r != self.r:
            raise ValueError("period mismatch")
        return ReplicaPermutation(self.r, tuple(self.dest[j] for j in other.dest))

    def __mul__(self, other):
        return self.compose(other)

    def inverse(self):
        inv = [0] * self.size
        for i, j in enumerate(self.dest):
            inv[j] = i
        return ReplicaPermutation(self.r, inv)

    def __pow__(self, n):
        res = identity(self.r)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            res = base.compose(res)
        return res

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.dest))

    def cycles(self):
        """Cycle decomposition, each cycle starting at its smallest slot,
        cycles ordered by that slot."""
        seen = [False] * self.size
        out = []
        for i in range(self.size):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.dest[j]
            out.append(tuple(cyc))
        return out

    def cycle_lengths(self):
        return sorted(len(c) for c in self.cycles())

    def __eq__(self, other):
        return isinstance(other, ReplicaPermutation) and self.dest == other.dest

    def __hash__(self):
        return hash(self.dest)

    def __repr__(self):
        return f"ReplicaPermutation(r={self.r}, dest={self.dest})"


def _slot(s, t, r):
    return (s - 1) * r + t % r


def identity(r):
    return ReplicaPermutation(r, range(2 * r))


def alpha(r):
    dest = [0] * (2 * r)
    for t in range(r):
        dest[_slot(1, t, r)] = _slot(1, t - 1, r)
        dest[_slot(2, t, r)] = _slot(2, t + 1, r)
    return ReplicaPermutation(r, dest)


def beta(r):
    dest = [0] * (2 * r)
    for t in range(r):
        dest[_slot(1, t, r)] = _slot(2, t, r)
        dest[_slot(2, t, r)] = _slot(1, t, r)
    return ReplicaPermutation(r, dest)


def gamma(r):
    dest = [0] * (2 * r)
    for t in range(r):
        dest[_slot(1, t, r)] = _slot(2, t - 1, r)
        dest[_slot(2, t, r)] = _slot(1, t + 1, r)
    return ReplicaPermutation(r, dest)


def reflection_permutation(r):
    """The involution ``(1,t) -> (1,-t)``, ``(2,t) -> (2,-1-t)``.

    Conjugation by it maps ``alpha -> alpha^-1`` and swaps ``beta <-> gamma``,
    so it implements a spatial reflection exchanging the roles of regions
    ``B`` and ``C``.
    """
    dest = [0] * (2 * r)
    for t in range(r):
        dest[_slot(1, t, r)] = _slot(1, -t, r)
        dest[_slot(2, t, r)] = _slot(2, -1 - t, r)
    return ReplicaPermutation(r, dest)


@dataclass(frozen=True)
class Triple:
    """The region permutations ``(pi_A, pi_B, pi_C)`` of one contraction."""

    a: ReplicaPermutation
    b: ReplicaPermutation
    c: ReplicaPermutation

    def __post_init__(self):
        if not (self.a.r == self.b.r == self.c.r):
            raise ValueError("period mismatch between region permutations")

    @property
    def r(self):
        return self.a.r

    def region(self, name):
        if name == "A":
            return self.a
        if name == "B":
            return self.b
        if name == "C":
            return self.c
        if name == "L":
            return identity(self.r)
        raise KeyError(name)

    def signature(self):
        """Hashable canonical form (used as a cache key)."""
        return (self.a.dest, self.b.dest, self.c.dest)


def canonical_triple(r):
    return Triple(alpha(r), beta(r), gamma(r))


def identity_triple(r):
    e = identity(r)
    return Triple(e, e, e)


def conjugate_triple(triple, sigma):
    """Conjugate every region permutation by `sigma` (``pi -> s o pi o s^-1``)."""
    inv = sigma.inverse()
    return Triple(
        sigma.compose(triple.a).compose(inv),
        sigma.compose(triple.b).compose(inv),
        sigma.compose(triple.c).compose(inv),
    )


def reflection_triple(triple):
    """Swap the ``B`` and ``C`` permutations.

    This is the label half of a spatial reflection; on its own it conjugates
    the contraction value.  Composing it with ``alpha -> alpha^-1`` (the
    coordinate half) gives a full reflection, which leaves the value
    invariant.
    """
    return Triple(triple.a, triple.c, triple.b)


def edge_orbits(triple, edge):
    """Orbits on which an edge label must be constant to survive.

    For an edge between regions ``(I, J)`` the relative permutation is
    ``tau = pi_J^-1 o pi_I``; a label configuration ``x`` gives a nonzero
    term iff ``x[slot] == x[tau(slot)]`` for every slot, i.e. iff ``x`` is
    constant on the orbits of ``tau``.  Orbits are returned with members
    sorted ascending, ordered by smallest member.
    """
    reg_i, reg_j = EDGES[edge]
    tau = triple.region(reg_j).inverse().compose(triple.region(reg_i))
    orbits = [tuple(sorted(c)) for c in tau.cycles()]
    return sorted(orbits)


def glue_source(triple, edge, slot):
    """Source slot whose `edge` label the gluing routes into `slot`.

    After the region permutations act, the copy of `edge` facing the slot's
    conjugated factor carries the label of slot ``pi_I^-1(slot)``, where
    ``I`` is the first region listed for the edge; on the surviving
    (matched) configurations routing through either adjacent region gives
    the same label.
    """
    reg_i, _ = EDGES[edge]
    return triple.region(reg_i).inverse()(slot)
