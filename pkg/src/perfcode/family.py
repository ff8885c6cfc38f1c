"""Admissible families of components built from a short code, and switching.

A short code ``Lambda`` of length ``m`` (or ``m + k`` for the binary extended
flavor) is lifted coordinate-wise onto chosen columns of ``H``: each
``lambda_s`` fixes a column combination ``v = mu_s * h_{i_s}`` and the codeword
``u_s`` that carries ``lambda_s`` on the chosen columns and ``-mu_s`` at the
anchor ``i_s``.  Switching every component ``R_{i_s} + u_s`` by
``mu_s * e_{i_s}`` yields a 1-perfect code containing the zero-padded short code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from perfcode import fqlin, kernels
from perfcode._config import check_cap, enumeration_cap
from perfcode.components import Component, component_basis, in_joint
from perfcode.gf import FieldSpec, field
from perfcode.hamming import HammingCode
from perfcode.verify import PerfectCodeOracle

FLAVORS = ("general", "ternary", "binary-extended")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class LambdaCode:
    """Nonzero vectors of a short code; the code itself is ``vectors | {0}``."""

    field: FieldSpec
    vectors: np.ndarray  # (t, length)
    flavor: str = "general"
    k: int = 0

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise FamilyError(f"unknown flavor {self.flavor!r}; expected one of {FLAVORS}")

    @property
    def length(self) -> int:
        return self.vectors.shape[1]

    @property
    def t(self) -> int:
        return self.vectors.shape[0]

    @classmethod
    def from_strings(cls, q: int, rows, flavor: str = "general", k: int = 0, length: int | None = None):
        F = field(q)
        vecs = [fqlin.as_vector(r, F) for r in rows]
        if length is None:
            if not vecs:
                raise FamilyError("length is required for an empty short code")
            length = len(vecs[0])
        if any(len(v) != length for v in vecs):
            raise FamilyError(f"all vectors must have length {length}")
        arr = np.array(vecs, dtype=np.uint8).reshape(-1, length)
        return cls(F, arr, flavor, k)

    def bounds(self) -> tuple[int, int]:
        """Minimum weight and minimum pairwise distance demanded by the flavor."""
        if self.flavor == "general":
            return 3, 5
        if self.flavor == "ternary":
            return 3, 3
        return 3 * self.k + 3, 3 * self.k + 3


@dataclass
class LambdaReport:
    ok: bool
    violations: list[str]

    def to_text(self) -> str:
        if self.ok:
            return "lambda ok\n"
        return "".join(f"violation: {v}\n" for v in self.violations)


def validate_lambda(lam: LambdaCode) -> LambdaReport:
    """Check the flavor's field, weight and distance hypotheses; collect every violation."""
    bad = []
    q = lam.field.q
    if lam.flavor == "ternary" and q != 3:
        bad.append(f"ternary flavor needs q=3, got q={q}")
    if lam.flavor == "binary-extended" and q != 2:
        bad.append(f"binary-extended flavor needs q=2, got q={q}")
    wmin, dmin = lam.bounds()
    strs = [fqlin.to_str(v) for v in lam.vectors]
    for s, v in zip(strs, lam.vectors):
        w = fqlin.weight(v)
        if w == 0:
            bad.append(f"{s} is the zero vector")
        elif w < wmin:
            bad.append(f"{s} has weight {w} < {wmin}")
    for (a, va), (b, vb) in itertools.combinations(zip(strs, lam.vectors), 2):
        d = fqlin.hamming_distance(va, vb)
        if d == 0:
            bad.append(f"{a} is duplicated")
        elif d < dmin:
            bad.append(f"{a} and {b} are at distance {d} < {dmin}")
    return LambdaReport(not bad, bad)


@dataclass(frozen=True)
class ColumnChoice:
    """1-based coordinates receiving the short code: ``base`` then ``extra``."""

    base: tuple[int, ...]
    extra: tuple[int, ...] = ()

    @property
    def columns(self) -> tuple[int, ...]:
        return self.base + self.extra

    def check(self, code: HammingCode) -> None:
        F = code.field
        cols = self.columns
        if len(set(cols)) != len(cols):
            raise FamilyError(f"chosen columns repeat: {cols}")
        for c in cols:
            code.check_point(c)
        if len(self.base) != code.m or fqlin.rank(code.H[:, [c - 1 for c in self.base]].T, F) != code.m:
            raise FamilyError(f"base columns {self.base} are not {code.m} independent columns")
        bset = set(self.base)
        for e in self.extra:
            he = code.column(e)
            if not any(
                np.array_equal(he, fqlin.add(code.column(a), code.column(b), F))
                for a, b in itertools.combinations(self.base, 2)
            ):
                raise FamilyError(f"extra column {e} is not a sum of two base columns")
            if e in bset:
                raise FamilyError(f"extra column {e} is also a base column")


def default_choice(code: HammingCode, k: int = 0) -> ColumnChoice:
    """Unit columns ``e_1..e_m`` as base, then ``e_a + e_b`` for pairs ``a < b`` in lexicographic order."""
    m = code.m
    pairs = list(itertools.combinations(range(m), 2))
    if not 0 <= k <= len(pairs):
        raise FamilyError(f"k={k} extra columns impossible with m={m} (at most {len(pairs)})")
    if k and code.q != 2:
        raise FamilyError("extra columns are defined for binary codes only")

    def idx(positions):
        v = np.zeros(m, dtype=np.uint8)
        v[list(positions)] = 1
        return code.point_index(v)

    base = tuple(idx([a]) for a in range(m))
    extra = tuple(idx(p) for p in pairs[:k])
    return ColumnChoice(base, extra)


@dataclass(frozen=True, eq=False)
class FamilyEntry:
    anchor: int
    mu: int
    rep: np.ndarray
    component: Component = dc_field(repr=False)


def lift(code: HammingCode, choice: ColumnChoice, lam_s) -> tuple[int, int, np.ndarray]:
    """``(i_s, mu_s, u_s)`` for one short-code vector."""
    F = code.field
    cols = choice.columns
    lam_s = np.asarray(lam_s, dtype=np.uint8)
    if lam_s.shape != (len(cols),):
        raise FamilyError(f"vector length {lam_s.shape[0]} does not match {len(cols)} chosen columns")
    v = fqlin.matvec(code.H[:, [c - 1 for c in cols]], lam_s, F)
    if not v.any():
        raise FamilyError(f"{fqlin.to_str(lam_s)} combines the chosen columns to zero")
    anchor, mu = code.locate(v)
    if anchor in cols:
        raise FamilyError(f"{fqlin.to_str(lam_s)} lands on chosen column {anchor}")
    u = np.zeros(code.n, dtype=np.uint8)
    u[[c - 1 for c in cols]] = lam_s
    u[anchor - 1] = F.neg_table[mu]
    return anchor, mu, u


@dataclass(frozen=True, eq=False)
class SwitchFamily:
    code: HammingCode
    choice: ColumnChoice
    entries: tuple[FamilyEntry, ...]

    @property
    def t(self) -> int:
        return len(self.entries)


def make_entry(code: HammingCode, anchor: int, mu: int, u) -> FamilyEntry:
    u = np.asarray(u, dtype=np.uint8)
    if code.syndrome(u).any():
        raise FamilyError(f"representative {fqlin.to_str(u)} is not a codeword")
    if mu == 0:
        raise FamilyError("switching scalar must be nonzero")
    return FamilyEntry(anchor, mu, u, component_basis(code, anchor).with_rep(u))


def build_family(code: HammingCode, choice: ColumnChoice, lam: LambdaCode) -> SwitchFamily:
    """Lift every vector of ``lam`` and confirm ``u_s`` is outside ``R_{i_s}``."""
    if lam.field != code.field:
        raise FamilyError(f"short code over GF({lam.field.q}) but Hamming code over GF({code.q})")
    choice.check(code)
    entries = []
    for vec in lam.vectors:
        anchor, mu, u = lift(code, choice, vec)
        if in_joint(code, anchor, anchor, u):
            raise FamilyError(
                f"representative of {fqlin.to_str(vec)} lies in R_{anchor}; the lift is broken"
            )
        entries.append(make_entry(code, anchor, mu, u))
    return SwitchFamily(code, choice, tuple(entries))


@dataclass
class AdmissibilityReport:
    ok: bool
    pair: tuple[int, int] | None = None  # 1-based entry numbers

    def to_text(self) -> str:
        if self.ok:
            return "admissible\n"
        r, s = self.pair
        return f"not admissible: entries {r} and {s} intersect\n"


def check_admissible(fam: SwitchFamily) -> AdmissibilityReport:
    """Pairwise disjointness via ``u_r - u_s`` outside ``R_{i_r} + R_{i_s}``.

    The two cosets meet exactly when that difference lies in the sum, so this
    is a decision procedure and not only a sufficient test.
    """
    F = fam.code.field
    for (r, a), (s, b) in itertools.combinations(enumerate(fam.entries, 1), 2):
        diff = fqlin.sub(a.rep, b.rep, F)
        if in_joint(fam.code, a.anchor, b.anchor, diff):
            return AdmissibilityReport(False, (r, s))
    return AdmissibilityReport(True)


def padded(lam: LambdaCode, choice: ColumnChoice, n: int) -> np.ndarray:
    """Rows of ``lam`` placed on the chosen columns, zero vector first."""
    cols = [c - 1 for c in choice.columns]
    if lam.length != len(cols):
        raise FamilyError(f"short code length {lam.length} vs {len(cols)} chosen columns")
    out = np.zeros((lam.t + 1, n), dtype=np.uint8)
    out[1:, cols] = lam.vectors
    return out


def syndrome_program(fam: SwitchFamily) -> kernels.SyndromeProgram:
    code = fam.code
    F = code.field
    blocks = [code.H]
    off, lens, outs, ins = [], [], [np.zeros(code.m, np.uint8)], [np.zeros(code.m, np.uint8)]
    row = code.m
    for e in fam.entries:
        D = e.component.checks
        blocks.append(D)
        off.append(row)
        lens.append(D.shape[0])
        row += D.shape[0]
        outs.append(fqlin.matvec(D, e.rep, F))
        ins.append(fqlin.matvec(D, fqlin.add(e.rep, fqlin.unit(code.n, e.anchor, e.mu), F), F))
    return kernels.SyndromeProgram(
        code.q,
        code.m,
        np.ascontiguousarray(np.concatenate(blocks)),
        np.array(off, dtype=np.int64),
        np.array(lens, dtype=np.int64),
        np.concatenate(outs),
        np.concatenate(ins),
        np.array([e.anchor - 1 for e in fam.entries], dtype=np.int64),
        np.array([e.mu for e in fam.entries], dtype=np.uint8),
    )


class SwitchedCode(PerfectCodeOracle):
    """The code obtained from the Hamming code by switching an admissible family."""

    def __init__(self, fam: SwitchFamily):
        self.family = fam
        code = fam.code
        super().__init__(
            code.field, code.n, "switched",
            program=syndrome_program(fam), enumerator=self._blocks, size=code.size,
        )
        self.switched_count: int | None = None

    def switch_map(self, C: np.ndarray) -> np.ndarray:
        """Image of each codeword row: shifted by ``mu_s e_{i_s}`` for the first coset containing it."""
        F = self.field
        prog = self.program
        C = np.atleast_2d(np.asarray(C, dtype=np.uint8))
        S = kernels._syndromes_numpy(C, prog.M, F.add_table, F.mul_table)
        out = C.copy()
        done = np.zeros(C.shape[0], dtype=bool)
        for s, (o, L) in enumerate(zip(prog.seg_off, prog.seg_len)):
            hit = (S[:, o : o + L] == prog.tgt_out[o : o + L]).all(axis=1) & ~done
            col = prog.shift_col[s]
            out[hit, col] = F.add_table[out[hit, col], prog.shift_val[s]]
            done |= hit
        return out

    def _blocks(self):
        for block in self.family.code.codeword_blocks(enumeration_cap()):
            yield self.switch_map(block)

    def count_members(self, cap: int | None = None) -> int:
        if self.field.q**self.n <= enumeration_cap(cap):
            return super().count_members(cap)
        return self.audit(cap)[0]

    def audit(self, cap: int | None = None) -> tuple[int, int]:
        """Stream all codewords through the switching map inside the kernel.

        Returns ``(accepted, switched)``.  Works on stacked syndromes only, so
        it reaches ``2^26`` codewords without materializing them.
        """
        code = self.family.code
        F = self.field
        check_cap("auditing the switched code", code.size, cap)
        G = code.generator()
        k = G.shape[0]
        low = min(k, max(1, int(np.floor(14 / np.log2(F.q)))))
        gen_syn = fqlin.matmul(G, self.program.M.T, F)  # (k, R)

        def combos(rows):
            r = rows.shape[0]
            if r == 0:
                return np.zeros((1, rows.shape[1]), np.uint8)
            coeffs = np.array(list(itertools.product(range(F.q), repeat=r)), dtype=np.uint8)
            return fqlin.matmul(coeffs, rows, F)

        S_low = combos(gen_syn[k - low :])
        S_high = combos(gen_syn[: k - low])
        accepted, switched = kernels.switch_audit(self.program, S_low, S_high, F.add_table, F.mul_table)
        self.switched_count = switched
        return accepted, switched

    def bijection_audit(self, samples: int = 100_000, seed: int = 0) -> tuple[bool, str | None]:
        """Sampled codewords map into the code and decode back to themselves."""
        code = self.family.code
        F = self.field
        rng = np.random.default_rng(seed)
        G = code.generator()
        coeffs = rng.integers(0, F.q, size=(samples, G.shape[0]), dtype=np.uint8)
        C = fqlin.matmul(coeffs, G, F)
        img = self.switch_map(C)
        ok = self.contains_rows(img)
        if not ok.all():
            return False, fqlin.to_str(img[int(np.flatnonzero(~ok)[0])])
        for c, t in zip(C, img):
            back, _ = code.decode(t)
            if not np.array_equal(back, c):
                return False, fqlin.to_str(t)
        return True, None


def switch(fam: SwitchFamily, admissible: AdmissibilityReport | None = None) -> SwitchedCode:
    """The switched code for an admissible family (admissibility is re-checked when not supplied)."""
    report = admissible if admissible is not None else check_admissible(fam)
    if not report.ok:
        raise FamilyError(report.to_text().strip())
    return SwitchedCode(fam)


# --------------------------------------------------------------------------
# file formats
# --------------------------------------------------------------------------


def _data_lines(path):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if line and not line.startswith("#"):
                yield lineno, line


def read_lambda_file(path, k: int = 0) -> LambdaCode:
    """Header ``q len t flavor`` then ``t`` digit strings."""
    lines = list(_data_lines(path))
    if not lines:
        raise FamilyError(f"{path}: empty lambda file")
    head = lines[0][1].split()
    if len(head) != 4:
        raise FamilyError(f"{path}:{lines[0][0]}: header must be 'q len t flavor'")
    q, length, t = (int(x) for x in head[:3])
    flavor = head[3]
    rows = [line for _, line in lines[1:]]
    if len(rows) != t:
        raise FamilyError(f"{path}: header announces {t} vectors, found {len(rows)}")
    for lineno, line in lines[1:]:
        if len(line) != length or not line.isdigit():
            raise FamilyError(f"{path}:{lineno}: expected {length} digits, got {line!r}")
    return LambdaCode.from_strings(q, rows, flavor, k, length)


def write_lambda_file(fh, lam: LambdaCode) -> None:
    fh.write(f"{lam.field.q} {lam.length} {lam.t} {lam.flavor}\n")
    for v in lam.vectors:
        fh.write(fqlin.to_str(v) + "\n")


def write_family_file(fh, fam: SwitchFamily) -> None:
    code = fam.code
    fh.write(f"# base {' '.join(map(str, fam.choice.base))}\n")
    if fam.choice.extra:
        fh.write(f"# extra {' '.join(map(str, fam.choice.extra))}\n")
    fh.write(f"{code.q} {code.m} {code.n} {fam.t} {len(fam.choice.extra)}\n")
    for e in fam.entries:
        fh.write(f"{e.anchor} {e.mu} {fqlin.to_str(e.rep)}\n")


def read_family_file(path) -> SwitchFamily:
    """Header ``q m n t k`` then ``i_s mu_s u_s`` per entry.

    ``# base``/``# extra`` comment lines restore a non-default column choice.
    """
    from perfcode.hamming import build

    base = extra = None
    with open(path) as fh:
        for raw in fh:
            parts = raw.split()
            if len(parts) >= 2 and parts[0] == "#" and parts[1] in ("base", "extra"):
                vals = tuple(int(x) for x in parts[2:])
                if parts[1] == "base":
                    base = vals
                else:
                    extra = vals
    lines = list(_data_lines(path))
    if not lines:
        raise FamilyError(f"{path}: empty family file")
    head = lines[0][1].split()
    if len(head) != 5:
        raise FamilyError(f"{path}:{lines[0][0]}: header must be 'q m n t k'")
    q, m, n, t, k = (int(x) for x in head)
    code = build(q, m)
    if code.n != n:
        raise FamilyError(f"{path}: n={n} does not match q={q}, m={m} (expected {code.n})")
    if len(lines) - 1 != t:
        raise FamilyError(f"{path}: header announces {t} entries, found {len(lines) - 1}")
    entries = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) == 3:
            digits = parts[2]
        elif len(parts) == 2 + n:
            digits = "".join(parts[2:])
        else:
            raise FamilyError(f"{path}:{lineno}: expected 'i mu digits'")
        if len(digits) != n or not digits.isdigit():
            raise FamilyError(f"{path}:{lineno}: expected {n} digits")
        anchor, mu = int(parts[0]), int(parts[1])
        code.check_point(anchor)
        if not 0 < mu < q:
            raise FamilyError(f"{path}:{lineno}: mu must be a nonzero digit below {q}")
        entries.append(make_entry(code, anchor, mu, fqlin.as_vector(digits, code.field)))
    choice = default_choice(code, k) if base is None else ColumnChoice(base, extra or ())
    return SwitchFamily(code, choice, tuple(entries))
