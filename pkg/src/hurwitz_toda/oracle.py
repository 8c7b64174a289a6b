"""Brute-force ground truth by enumerating permutation tuples.

A degree-d covering of the sphere with marked monodromies corresponds to a
tuple of permutations with identity product, counted up to simultaneous
conjugation; weighting by the automorphism group is the same as counting raw
tuples and dividing by d!.  Connectivity of the covering is transitivity of
the group the tuple generates.  Everything here is deliberately naive; it is
the independent check for the character-sum route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from multiprocessing import Pool

from .characters import CharacterCache
from .hurwitz import build_tau, connected_series, cov_with_transpositions
from .partitions import Partition, partitions_of

DEFAULT_D_CAP = 6
DEFAULT_B_CAP = 5

Perm = tuple[int, ...]


class OracleLimitError(ValueError):
    """Raised when a request exceeds the configured enumeration caps."""


def identity_perm(d: int) -> Perm:
    return tuple(range(d))


def compose(a: Perm, b: Perm) -> Perm:
    """Apply ``a`` first, then ``b`` (left-to-right composition)."""
    return tuple(b[a[i]] for i in range(len(a)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def cycle_type(p: Perm) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lengths.append(n)
    return Partition(sorted(lengths, reverse=True))


def class_representative(mu: Partition) -> Perm:
    """Permutation of cycle type ``mu`` built from consecutive blocks."""
    out = []
    start = 0
    for part in Partition(mu).parts:
        out.extend(list(range(start + 1, start + part)) + [start])
        start += part
    return tuple(out)


def class_elements(d: int, mu: Partition):
    """All elements of cycle type ``mu`` in degree d (full enumeration)."""
    mu = Partition(mu)
    for p in itertools.permutations(range(d)):
        if cycle_type(p) == mu:
            yield p


def all_transpositions(d: int) -> list[Perm]:
    out = []
    for i in range(d):
        for j in range(i + 1, d):
            p = list(range(d))
            p[i], p[j] = j, i
            out.append(tuple(p))
    return out


@dataclass(frozen=True)
class MonodromyTuple:
    """Monodromy data (sigma0, transpositions, sigma_inf) of one covering."""

    d: int
    sigma0: Perm
    transpositions: tuple[Perm, ...]
    sigma_inf: Perm

    def product_is_identity(self) -> bool:
        p = self.sigma0
        for t in self.transpositions:
            p = compose(p, t)
        return compose(p, self.sigma_inf) == identity_perm(self.d)

    def is_transitive(self) -> bool:
        return _is_transitive(self.d, (self.sigma0,) + self.transpositions)


def _is_transitive(d: int, perms: tuple[Perm, ...]) -> bool:
    """Union-find over the orbits of the listed permutations."""
    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = d
    for p in perms:
        for i in range(d):
            ri, rj = find(i), find(p[i])
            if ri != rj:
                parent[ri] = rj
                components -= 1
    return components == 1


@lru_cache(maxsize=None)
def _sweep(d: int, mu_parts: tuple, b: int) -> dict:
    """Counts of tuples with sigma0 of type mu, keyed by sigma_inf type.

    Fixes one representative sigma0 and multiplies by the class size at the
    end (conjugation preserves both the identity-product constraint and
    transitivity).  Returns {nu_parts: [all_count, transitive_count]}.
    """
    mu = Partition(mu_parts)
    sigma0 = class_representative(mu)
    mult = factorial(d) // _z(mu)
    counts: dict[tuple, list[int]] = {}
    for taus in itertools.product(all_transpositions(d), repeat=b):
        p = sigma0
        for t in taus:
            p = compose(p, t)
        nu = cycle_type(inverse(p)).parts
        entry = counts.setdefault(nu, [0, 0])
        entry[0] += mult
        if _is_transitive(d, (sigma0,) + taus):
            entry[1] += mult
    return counts


def _z(mu: Partition) -> int:
    z = 1
    for k, m in mu.multiplicities.items():
        z *= k**m * factorial(m)
    return z


def _sweep_naive(d: int, mu: Partition, b: int) -> dict:
    """Same counts without the fixed-representative optimization."""
    counts: dict[tuple, list[int]] = {}
    for sigma0 in class_elements(d, mu):
        for taus in itertools.product(all_transpositions(d), repeat=b):
            p = sigma0
            for t in taus:
                p = compose(p, t)
            nu = cycle_type(inverse(p)).parts
            entry = counts.setdefault(nu, [0, 0])
            entry[0] += 1
            if _is_transitive(d, (sigma0,) + taus):
                entry[1] += 1
    return counts


def count_tuples(d: int, mu: Partition, nu: Partition, b: int,
                 connected_only: bool, *,
                 d_cap: int = DEFAULT_D_CAP, b_cap: int = DEFAULT_B_CAP,
                 naive: bool = False) -> Fraction:
    """Tuple count over d! for profiles (mu, nu) and b transpositions.

    Tuples are (sigma0 in C_mu, tau_1, ..., tau_b transpositions, sigma_inf
    in C_nu) with identity left-to-right product.  With ``connected_only``
    the generated group must act transitively.
    """
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != d or nu.size != d:
        raise ValueError(f"profiles must have size {d}")
    if b < 0:
        raise ValueError("b must be nonnegative")
    if d > d_cap or b > b_cap:
        raise OracleLimitError("oracle scale limit")
    if d == 0:
        return Fraction(1) if b == 0 else Fraction(0)
    counts = _sweep_naive(d, mu, b) if naive else _sweep(d, mu.parts, b)
    entry = counts.get(nu.parts)
    if entry is None:
        return Fraction(0)
    return Fraction(entry[1] if connected_only else entry[0], factorial(d))


def _sweep_task(args: tuple) -> tuple:
    d, mu_parts, b = args
    return (args, _sweep(d, mu_parts, b))


def compare_all(d_max_oracle: int, b_max_oracle: int, *,
                jobs: int = 1,
                d_cap: int = DEFAULT_D_CAP, b_cap: int = DEFAULT_B_CAP,
                cache: CharacterCache | None = None,
                corruption: tuple | None = None) -> list[dict]:
    """Cross-check every in-range count against the character-sum routes.

    For each (d, b, mu, nu): the disconnected tuple count over d! must equal
    both the class-algebra formula and b! times the tau coefficient, and the
    transitive count over d! must equal b! times the log tau coefficient.
    Returns one record per disagreement; empty list means full agreement.
    ``corruption`` bumps one tau coefficient by +1 before comparing (negative
    control).
    """
    if d_max_oracle > d_cap or b_max_oracle > b_cap:
        raise OracleLimitError("oracle scale limit")
    tau = build_tau(d_max_oracle, b_max_oracle, cache=cache)
    if corruption is not None:
        tau = tau.with_coefficient(corruption, tau.coefficient(corruption) + 1)
    h = connected_series(tau)

    tasks = []
    for d in range(1, d_max_oracle + 1):
        for mu in partitions_of(d):
            for b in range(b_max_oracle + 1):
                tasks.append((d, mu.parts, b))
    if jobs > 1:
        with Pool(jobs) as pool:
            sweeps = dict(pool.map(_sweep_task, tasks))
    else:
        sweeps = {t: _sweep(*t) for t in tasks}

    discrepancies = []
    for d, mu_parts, b in tasks:
        mu = Partition(mu_parts)
        counts = sweeps[(d, mu_parts, b)]
        bfact = factorial(b)
        dfact = factorial(d)
        for nu in partitions_of(d):
            entry = counts.get(nu.parts, (0, 0))
            oracle_disc = Fraction(entry[0], dfact)
            oracle_conn = Fraction(entry[1], dfact)
            key = (d, b, mu.parts, nu.parts, 0, 0)
            series_disc = tau.coefficient(key) * bfact
            series_conn = h.coefficient(key) * bfact
            formula_disc = cov_with_transpositions(d, mu, nu, b, cache=cache)
            if not (oracle_disc == series_disc == formula_disc):
                discrepancies.append({
                    "d": d, "b": b, "mu": mu.parts, "nu": nu.parts,
                    "kind": "disconnected",
                    "oracle": oracle_disc, "series": series_disc,
                    "formula": formula_disc,
                })
            if oracle_conn != series_conn:
                discrepancies.append({
                    "d": d, "b": b, "mu": mu.parts, "nu": nu.parts,
                    "kind": "connected",
                    "oracle": oracle_conn, "series": series_conn,
                    "formula": None,
                })
    return discrepancies


def count_table(d_max_oracle: int, b_max_oracle: int, *,
                d_cap: int = DEFAULT_D_CAP, b_cap: int = DEFAULT_B_CAP) -> list[dict]:
    """Raw oracle counts per (d, b, mu, nu), for the CSV dump."""
    if d_max_oracle > d_cap or b_max_oracle > b_cap:
        raise OracleLimitError("oracle scale limit")
    rows = []
    for d in range(1, d_max_oracle + 1):
        for b in range(b_max_oracle + 1):
            for mu in partitions_of(d):
                counts = _sweep(d, mu.parts, b)
                for nu in partitions_of(d):
                    entry = counts.get(nu.parts, (0, 0))
                    rows.append({
                        "d": d, "b": b, "mu": mu.parts, "nu": nu.parts,
                        "disconnected_count": Fraction(entry[0], factorial(d)),
                        "connected_count": Fraction(entry[1], factorial(d)),
                    })
    return rows
