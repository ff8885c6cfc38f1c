"""``perfcode`` command line.

Exit status: 0 success / property holds, 1 property violated, 2 bad input or
usage (including an exhaustive scan over the cap).
"""

from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from perfcode import fqlin
from perfcode._config import CapExceeded
from perfcode.components import component_basis
from perfcode.family import (
    FLAVORS,
    ColumnChoice,
    FamilyError,
    build_family,
    check_admissible,
    default_choice,
    lift,
    make_entry,
    read_family_file,
    read_lambda_file,
    switch,
    validate_lambda,
    write_family_file,
    SwitchFamily,
)
from perfcode.gf import FieldError
from perfcode.hamming import CodeError, build, read_code_file, write_code_file
from perfcode.verify import (
    explicit_oracle,
    embedding_check,
    hamming_oracle,
    is_perfect,
    min_distance,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _ints(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    return tuple(int(x) for x in text.replace(",", " ").split())


def cmd_hamming(args) -> int:
    code = build(args.q, args.m)
    comments = [f"h_{j} = {fqlin.to_str(code.column(j))}" for j in range(1, code.n + 1)]
    with _output(args.out) as fh:
        fh.write(f"# parity-check matrix of the {code.q}-ary Hamming code, rows of H below\n")
        write_code_file(fh, code.q, code.m, code.n, [code.H], comments)
    return EXIT_OK


def cmd_component(args) -> int:
    code = build(args.q, args.m)
    if not 1 <= args.i <= code.n:
        raise UsageError(f"--i must lie in 1..{code.n}")
    comp = component_basis(code, args.i)
    with _output(args.out) as fh:
        fh.write(f"# anchor {args.i}\n# dim {comp.dimension}\n")
        write_code_file(fh, code.q, code.m, code.n, [comp.basis])
    return EXIT_OK


def _lambda_and_choice(args):
    lam = read_lambda_file(args.lambda_file, k=args.k)
    if args.flavor is not None:
        lam = type(lam)(lam.field, lam.vectors, args.flavor, args.k)
    m = args.m if args.m is not None else lam.length - args.k
    code = build(lam.field.q, m)
    base = _ints(args.base)
    if base is None:
        choice = default_choice(code, args.k)
    else:
        extra = _ints(args.extra) or ()
        if len(extra) != args.k:
            raise UsageError(f"--extra lists {len(extra)} columns, --k is {args.k}")
        choice = ColumnChoice(base, extra)
    if lam.length != len(choice.columns):
        raise UsageError(
            f"short code length {lam.length} needs m + k = {lam.length}, got m={m}, k={args.k}"
        )
    return lam, code, choice


def cmd_build(args) -> int:
    lam, code, choice = _lambda_and_choice(args)
    report = validate_lambda(lam)
    if not report.ok:
        sys.stdout.write(report.to_text())
        if not args.force:
            return EXIT_FAIL
    if args.force:
        choice.check(code)
        entries = []
        for vec in lam.vectors:
            try:
                anchor, mu, u = lift(code, choice, vec)
            except FamilyError as exc:
                sys.stdout.write(f"skipped: {exc}\n")
                continue
            entries.append(make_entry(code, anchor, mu, u))
        fam = SwitchFamily(code, choice, tuple(entries))
    else:
        fam = build_family(code, choice, lam)
    adm = check_admissible(fam)
    with _output(args.out) as fh:
        write_family_file(fh, fam)
    if args.out not in (None, "-"):
        sys.stdout.write(adm.to_text())
    return EXIT_OK if adm.ok else EXIT_FAIL


def cmd_switch(args) -> int:
    fam = read_family_file(args.family)
    adm = check_admissible(fam)
    if not adm.ok:
        sys.stdout.write(adm.to_text())
        return EXIT_FAIL
    T = switch(fam, adm)
    code = fam.code
    with _output(args.out) as fh:
        if args.enumerate:
            write_code_file(fh, code.q, code.m, code.n, T.blocks(args.cap))
        else:
            fh.write("# switched-code descriptor: Hamming code plus the family below\n")
            write_family_file(fh, fam)
    return EXIT_OK


def _oracle(args):
    if args.family:
        fam = read_family_file(args.family)
        adm = check_admissible(fam)
        if not adm.ok:
            return None, fam, adm
        return switch(fam, adm), fam, adm
    if args.code:
        (q, m, n), vectors = read_code_file(args.code)
        code = build(q, m)
        if code.n != n:
            raise UsageError(f"{args.code}: n={n} does not match q={q}, m={m}")
        return explicit_oracle(code.field, n, vectors), None, None
    if args.hamming:
        q, m = args.hamming
        return hamming_oracle(build(q, m)), None, None
    raise UsageError("give one of --family, --code, --hamming")


def cmd_verify(args) -> int:
    if args.what == "admissible":
        if not args.family:
            raise UsageError("verify admissible needs --family")
        adm = check_admissible(read_family_file(args.family))
        sys.stdout.write(f"admissible exhaustive {'pass' if adm.ok else 'fail'} - 0 0\n")
        if not adm.ok:
            sys.stdout.write(f"# {adm.to_text().strip()}\n")
        return EXIT_OK if adm.ok else EXIT_FAIL

    oracle, fam, adm = _oracle(args)
    if oracle is None:
        sys.stdout.write(adm.to_text())
        return EXIT_FAIL

    if args.what == "perfect":
        report = is_perfect(oracle, args.mode, samples=args.samples, seed=args.seed, cap=args.cap)
        sys.stdout.write(report.to_text())
        return EXIT_OK if report.passed else EXIT_FAIL

    if args.what == "mindist":
        d = min_distance(oracle, oracle.field, linear=oracle.provenance == "linear", cap=args.cap)
        sys.stdout.write(f"mindist exhaustive pass - 0 0 {d}\n")
        return EXIT_OK

    if args.what == "embed":
        if fam is None or not args.lambda_file:
            raise UsageError("verify embed needs --family and --lambda")
        lam = read_lambda_file(args.lambda_file, k=len(fam.choice.extra))
        report = embedding_check(lam, fam.choice, oracle, strong=args.strong, cap=args.cap)
        sys.stdout.write(report.to_text())
        strong_needed = args.strong and lam.flavor != "binary-extended"
        ok = report.passed and (not strong_needed or report.details.get("strong") == "pass")
        return EXIT_OK if ok else EXIT_FAIL
    raise UsageError(f"unknown property {args.what}")


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfcode", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hamming", help="write the parity-check matrix as a code file")
    h.add_argument("--q", type=int, required=True)
    h.add_argument("--m", type=int, required=True)
    h.add_argument("--out")
    h.set_defaults(func=cmd_hamming)

    c = sub.add_parser("component", help="basis and dimension of R_i")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_component)

    b = sub.add_parser("build", help="lift a short code into a family file")
    b.add_argument("lambda_file")
    b.add_argument("--flavor", choices=FLAVORS, help="override the flavor in the file")
    b.add_argument("--m", type=int, help="check rows (default: short length minus k)")
    b.add_argument("--k", type=int, default=0, help="extra two-column sums (binary-extended)")
    b.add_argument("--base", help="comma-separated 1-based base columns")
    b.add_argument("--extra", help="comma-separated 1-based extra columns")
    b.add_argument("--force", action="store_true", help="lift even if validation fails")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("switch", help="switch an admissible family")
    s.add_argument("family")
    s.add_argument("--out")
    s.add_argument("--enumerate", action="store_true", help="list every codeword")
    s.add_argument("--cap", type=int)
    s.set_defaults(func=cmd_switch)

    v = sub.add_parser("verify", help="run a brute-force oracle")
    v.add_argument("what", choices=["perfect", "mindist", "admissible", "embed"])
    v.add_argument("--family")
    v.add_argument("--code")
    v.add_argument("--hamming", type=int, nargs=2, metavar=("Q", "M"))
    v.add_argument("--lambda", dest="lambda_file")
    v.add_argument("--strong", action="store_true")
    v.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--cap", type=int)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapExceeded as exc:
        sys.stderr.write(f"perfcode: {exc}\n")
        return EXIT_USAGE
    except (UsageError, FamilyError, CodeError, FieldError, ValueError, OSError) as exc:
        sys.stderr.write(f"perfcode: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
