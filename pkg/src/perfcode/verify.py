"""Brute-force oracles for perfectness, distance, coset disjointness and embedding.

Everything here works from a membership predicate (or an explicit codeword
list) and never from the construction that produced the code, so the
constructions elsewhere in the package can be checked against it.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field as dc_field

import numpy as np

from perfcode import fqlin, kernels
from perfcode._config import CapExceeded, check_cap, enumeration_cap
from perfcode.gf import FieldSpec
from perfcode.hamming import HammingCode

RNG_NAME = "numpy.PCG64"
BLOCK = 1 << 16


@dataclass
class VerifyReport:
    prop: str
    mode: str  # "exhaustive" | "sampled"
    passed: bool
    seed: int | None = None
    samples: int = 0
    time_ms: float = 0.0
    counterexample: str | None = None
    details: dict = dc_field(default_factory=dict)

    @property
    def result(self) -> str:
        return "pass" if self.passed else "fail"

    def to_text(self) -> str:
        seed = "-" if self.seed is None else str(self.seed)
        head = f"{self.prop} {self.mode} {self.result} {seed} {self.samples} {self.time_ms:.0f}"
        if self.counterexample is not None:
            head += f" {self.counterexample}"
        lines = [head]
        if self.mode == "sampled":
            lines.append(f"# rng: {RNG_NAME}")
        lines.extend(f"# {k}: {v}" for k, v in self.details.items())
        return "\n".join(lines) + "\n"

    def __bool__(self) -> bool:
        return self.passed


class PerfectCodeOracle:
    """Total membership test over ``F_q^n`` with an optional enumerator.

    Exactly one of ``program`` (stacked-syndrome description, used for the
    Hamming code and switched codes) or ``codes`` (sorted canonical indices of
    an explicit list) backs the membership test, unless a bare ``predicate``
    is supplied.
    """

    def __init__(
        self,
        F: FieldSpec,
        n: int,
        provenance: str,
        *,
        program: kernels.SyndromeProgram | None = None,
        codes: np.ndarray | None = None,
        predicate: Callable[[np.ndarray], bool] | None = None,
        enumerator: Callable[[], Iterator[np.ndarray]] | None = None,
        size: int | None = None,
    ):
        if sum(x is not None for x in (program, codes, predicate)) != 1:
            raise ValueError("supply exactly one of program, codes, predicate")
        self.field = F
        self.n = n
        self.provenance = provenance
        self.program = program
        self.codes = codes
        self.predicate = predicate
        self.enumerator = enumerator
        self.size = size

    def contains_rows(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.uint8))
        if self.program is not None:
            return kernels.member_rows(self.program, X, self.field.add_table, self.field.mul_table)
        if self.codes is not None:
            keys = kernels.vector_codes(X, self.field.q)
            if not len(self.codes):
                return np.zeros(len(keys), dtype=bool)
            pos = np.minimum(np.searchsorted(self.codes, keys), len(self.codes) - 1)
            return self.codes[pos] == keys
        return np.array([bool(self.predicate(x)) for x in X], dtype=bool)

    def __contains__(self, x) -> bool:
        return bool(self.contains_rows(np.asarray(x, dtype=np.uint8)[None, :])[0])

    def blocks(self, cap: int | None = None) -> Iterator[np.ndarray]:
        if self.enumerator is None:
            raise ValueError(f"oracle '{self.provenance}' has no enumerator")
        if self.size is not None:
            check_cap(f"enumerating {self.provenance}", self.size, cap)
        return self.enumerator()

    def count_members(self, cap: int | None = None) -> int:
        """Distinct enumerated vectors accepted by the membership test.

        Distinctness is checked by canonical index whenever ``q^n`` is within
        the cap; beyond that the enumerator is trusted to be duplicate-free.
        """
        total = 0
        keys = []
        small = self.field.q**self.n <= enumeration_cap(cap)
        for block in self.blocks(cap):
            ok = self.contains_rows(block)
            total += int(ok.sum())
            if small:
                keys.append(kernels.vector_codes(block[ok], self.field.q))
        if small and keys:
            total = int(np.unique(np.concatenate(keys)).size)
        return total

    def ball_counts(self, X: np.ndarray, stop_early: bool = False) -> np.ndarray:
        F = self.field
        if self.program is not None:
            return kernels.ball_counts(self.program, X, F.add_table, F.mul_table, stop_early)
        if self.codes is not None:
            return kernels.table_ball_counts(self.codes, X, F.q, stop_early)
        counts = []
        for x in X:
            c = int(self.predicate(x))
            for j in range(self.n):
                for v in range(F.q):
                    if v != x[j]:
                        y = x.copy()
                        y[j] = v
                        c += int(self.predicate(y))
            counts.append(c)
            if stop_early and c != 1:
                break
        return np.array(counts, dtype=np.int64)


def hamming_oracle(code: HammingCode) -> PerfectCodeOracle:
    empty = np.zeros(0, dtype=np.int64)
    prog = kernels.SyndromeProgram(
        code.q, code.m, np.ascontiguousarray(code.H), empty, empty,
        np.zeros(code.m, np.uint8), np.zeros(code.m, np.uint8), empty, np.zeros(0, np.uint8),
    )
    return PerfectCodeOracle(
        code.field, code.n, "linear", program=prog, enumerator=code.codeword_blocks, size=code.size
    )


def explicit_oracle(F: FieldSpec, n: int, vectors) -> PerfectCodeOracle:
    V = np.asarray(vectors, dtype=np.uint8).reshape(-1, n)
    if F.q**n >= 2**62:
        raise ValueError("explicit codes need q^n < 2^62 for canonical indexing")
    codes = np.unique(kernels.vector_codes(V, F.q))
    return PerfectCodeOracle(
        F, n, "explicit", codes=codes, enumerator=lambda: iter([V]), size=len(V)
    )


def _sample(rng: np.random.Generator, count: int, q: int, n: int) -> np.ndarray:
    return rng.integers(0, q, size=(count, n), dtype=np.uint8)


def is_perfect(
    oracle: PerfectCodeOracle,
    mode: str = "exhaustive",
    *,
    samples: int = 100_000,
    seed: int = 0,
    cap: int | None = None,
) -> VerifyReport:
    """Every ``x`` in ``F_q^n`` (or a seeded sample) has exactly one member within distance 1."""
    q, n = oracle.field.q, oracle.n
    t0 = time.perf_counter()
    if mode == "exhaustive":
        total = q**n
        check_cap(f"exhaustive scan of F_{q}^{n}", total, cap)
        for start in range(0, total, BLOCK):
            stop = min(total, start + BLOCK)
            X = kernels.index_digits(start, stop, q, n)
            counts = oracle.ball_counts(X, stop_early=True)
            bad = np.flatnonzero(counts != 1)
            if bad.size:
                k = int(bad[0])
                return VerifyReport(
                    "perfect", mode, False, None, start + k + 1, _ms(t0),
                    fqlin.to_str(X[k]), {"members_in_ball": int(counts[k])},
                )
        return VerifyReport("perfect", mode, True, None, total, _ms(t0))
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    done = 0
    while done < samples:
        X = _sample(rng, min(BLOCK, samples - done), q, n)
        counts = oracle.ball_counts(X, stop_early=True)
        bad = np.flatnonzero(counts != 1)
        if bad.size:
            k = int(bad[0])
            return VerifyReport(
                "perfect", mode, False, seed, done + k + 1, _ms(t0),
                fqlin.to_str(X[k]), {"members_in_ball": int(counts[k])},
            )
        done += X.shape[0]
    return VerifyReport("perfect", mode, True, seed, samples, _ms(t0))


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def _materialize(source, n: int, cap: int | None) -> np.ndarray:
    if isinstance(source, HammingCode):
        return np.concatenate(list(source.codeword_blocks(cap)))
    if isinstance(source, PerfectCodeOracle):
        return np.concatenate([np.atleast_2d(b) for b in source.blocks(cap)]).reshape(-1, n)
    V = np.asarray(source, dtype=np.uint8)
    check_cap("minimum distance", V.shape[0], cap)
    return V


def min_distance(source, F: FieldSpec, *, linear: bool = False, cap: int | None = None) -> int:
    """Minimum pairwise distance of a code given as vectors, a Hamming code or an oracle.

    For ``linear=True`` the minimum nonzero weight is returned and, at small
    sizes, cross-checked against the pairwise search.
    """
    n = source.n if hasattr(source, "n") else np.asarray(source).shape[1]
    V = np.unique(_materialize(source, n, cap), axis=0)
    if V.shape[0] < 2:
        raise ValueError("minimum distance needs at least two codewords")
    if linear:
        w = np.count_nonzero(V, axis=1)
        d = int(w[w > 0].min())
        if V.shape[0] <= 4096:
            assert d == _pairwise_min(V), "linear code weight/distance mismatch"
        return d
    if V.shape[0] <= 4096:
        return _pairwise_min(V)
    return _radius_min(V, F)


def _pairwise_min(V: np.ndarray) -> int:
    best = V.shape[1] + 1
    for k in range(V.shape[0] - 1):
        d = np.count_nonzero(V[k + 1 :] != V[k], axis=1).min()
        best = min(best, int(d))
    return best


def _radius_min(V: np.ndarray, F: FieldSpec) -> int:
    """Smallest ``r`` such that some codeword has another codeword at distance ``r``."""
    q, n = F.q, V.shape[1]
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    keys = V.astype(np.int64) @ powers
    order = np.sort(keys)
    for r in range(1, n + 1):
        for pos in itertools.combinations(range(n), r):
            cols = list(pos)
            base = keys - V[:, cols].astype(np.int64) @ powers[cols]
            for deltas in itertools.product(range(1, q), repeat=r):
                moved = F.add_table[V[:, cols], np.array(deltas, dtype=np.uint8)[None, :]]
                nk = base + moved.astype(np.int64) @ powers[cols]
                hit = np.minimum(np.searchsorted(order, nk), len(order) - 1)
                if (order[hit] == nk).any():
                    return r
    raise AssertionError("unreachable: distinct codewords differ somewhere")


def _coset_keys(comp, cap: int | None) -> np.ndarray:
    check_cap(f"materializing R_{comp.anchor} + u", comp.size, cap)
    return np.concatenate([kernels.vector_codes(b, comp.code.q) for b in comp.elements()])


def cosets_disjoint(
    a, b, mode: str = "exhaustive", *, samples: int = 10_000, seed: int = 0, cap: int | None = None
) -> VerifyReport:
    """Whether the components ``a`` and ``b`` share no vector."""
    t0 = time.perf_counter()
    if mode == "exhaustive":
        ka = _coset_keys(a, cap)
        kb = _coset_keys(b, cap)
        common = np.intersect1d(ka, kb)
        ok = common.size == 0
        cex = None
        if not ok:
            cex = fqlin.to_str(kernels.index_digits(int(common[0]), int(common[0]) + 1, a.code.q, a.code.n)[0])
        return VerifyReport("disjoint", mode, ok, None, ka.size + kb.size, _ms(t0), cex)
    rng = np.random.default_rng(seed)
    F = a.code.field
    D = b.checks
    target = fqlin.matvec(D, b.rep, F)
    for k in range(samples):
        x = a.random_element(rng)
        if np.array_equal(fqlin.matvec(D, x, F), target):
            return VerifyReport("disjoint", mode, False, seed, k + 1, _ms(t0), fqlin.to_str(x))
    return VerifyReport("disjoint", mode, True, seed, samples, _ms(t0))


def member_count(oracle: PerfectCodeOracle, cap: int | None = None) -> int:
    """Number of distinct enumerated vectors that the membership test accepts."""
    return oracle.count_members(cap)


def sphere_packing_ok(oracle: PerfectCodeOracle, cap: int | None = None) -> bool:
    """``|C| (1 + n(q-1)) == q^n`` with ``|C|`` counted by enumeration."""
    q, n = oracle.field.q, oracle.n
    return member_count(oracle, cap) * (1 + n * (q - 1)) == q**n


def embedding_check(lam, choice, oracle: PerfectCodeOracle, strong: bool = False, cap: int | None = None) -> VerifyReport:
    """Zero-padded ``Lambda | {0}`` lies in the code; with ``strong``, also the converse.

    ``choice.columns`` gives the 1-based code coordinate receiving each
    coordinate of the short code.  The converse scans all ``q^len`` vectors
    supported on those coordinates.  The report passes on the weak property;
    ``details['strong']`` carries the converse outcome when requested.
    """
    t0 = time.perf_counter()
    F, n = oracle.field, oracle.n
    cols = [c - 1 for c in choice.columns]
    short = np.asarray(lam.vectors, dtype=np.uint8).reshape(-1, len(cols))
    padded = np.zeros((short.shape[0] + 1, n), dtype=np.uint8)
    padded[1:, cols] = short
    inside = oracle.contains_rows(padded)
    details = {"weak": "pass" if inside.all() else "fail"}
    cex = None
    if not inside.all():
        cex = fqlin.to_str(padded[int(np.flatnonzero(~inside)[0])])
    scanned = padded.shape[0]
    if strong:
        total = F.q ** len(cols)
        check_cap("strong embedding scan", total, cap)
        wanted = {fqlin.to_str(v) for v in short} | {"0" * len(cols)}
        found = set()
        for start in range(0, total, BLOCK):
            P = kernels.index_digits(start, min(total, start + BLOCK), F.q, len(cols))
            X = np.zeros((P.shape[0], n), dtype=np.uint8)
            X[:, cols] = P
            for row in P[oracle.contains_rows(X)]:
                found.add(fqlin.to_str(row))
        scanned += total
        extra = sorted(found - wanted)
        missing = sorted(wanted - found)
        details["strong"] = "pass" if not extra and not missing else "fail"
        details["strong_scanned"] = total
        if extra:
            details["unexpected_members"] = len(extra)
            details["first_unexpected"] = extra[0]
        if missing:
            details["missing"] = len(missing)
    return VerifyReport(
        "embed-strong" if strong else "embed", "exhaustive", details["weak"] == "pass",
        None, scanned, _ms(t0), cex, details,
    )


__all__ = [
    "CapExceeded",
    "PerfectCodeOracle",
    "VerifyReport",
    "cosets_disjoint",
    "embedding_check",
    "explicit_oracle",
    "hamming_oracle",
    "is_perfect",
    "member_count",
    "min_distance",
    "sphere_packing_ok",
]
