"""Command-line front end.

Subcommands:
  stems EXPR        print the stem table of the Moore space with homology EXPR
  maps EXPR EXPR    print the homotopy-class group between two Moore spaces
  couple EXPR       print the canonical couple in the couple file format
  normalize FILE    validate a couple file and report the isomorphism onto
                    the canonical couple
  check             run the verification battery

Group expressions follow the grammar

  expr := term ('+' term)*
  term := 'Z' ('^' INT)? | 'Z/' INT ('^' INT)?

with n >= 2 after 'Z/' and exponents >= 1; whitespace is ignored.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical validation
failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from itertools import combinations_with_replacement
from typing import Sequence

from . import exact_couples, functors, moore, oracle, sampling
from .exact_couples import CoupleFormatError, parse_couple, serialize_couple
from .fga import AbelianGroup, direct_sum, hom_group, identity
from .matrices import IntMatrix, smith_normal_form
from .moore import stem_table

__all__ = ["GroupParseError", "format_group", "main", "parse_group"]


class GroupParseError(ValueError):
    """A group expression that does not match the grammar; carries the
    0-based offset of the offending character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise GroupParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise GroupParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_group(text: str) -> AbelianGroup:
    """Parse a group expression and canonicalize it.

    >>> print(parse_group("Z^2 + Z/12 + Z/8"))
    Z^2 + Z/4 + Z/24
    """
    tok = _Tokenizer(text)
    orders: list[int] = []
    while True:
        if tok.peek() != "Z":
            raise GroupParseError("expected 'Z'", tok.pos)
        tok.pos += 1
        n = 0
        if tok.peek() == "/":
            tok.pos += 1
            where = tok.pos
            n = tok.integer()
            if n < 2:
                raise GroupParseError("torsion order must be >= 2", where)
        k = 1
        if tok.peek() == "^":
            tok.pos += 1
            where = tok.pos
            k = tok.integer()
            if k < 1:
                raise GroupParseError("exponent must be >= 1", where)
        orders.extend([n] * k)
        if tok.done():
            break
        tok.expect("+")
    return AbelianGroup.from_orders(orders)


def format_group(G: AbelianGroup, unicode_sum: bool = False) -> str:
    text = str(G)
    return text.replace(" + ", " ⊕ ") if unicode_sum else text


def _group_json(G: AbelianGroup) -> dict:
    return {"rank": G.rank, "torsion": list(G.torsion)}


def _matrix_json(M: IntMatrix) -> list[list[int]]:
    return [list(row) for row in M.entries]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="moorestems", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stems", help="stable stems of a Moore space")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")
    p.add_argument("--degree", type=int, default=None, metavar="N",
                   help="also print absolute degrees i = N + q")
    p.add_argument("--unicode", action="store_true")

    p = sub.add_parser("maps", help="homotopy classes of maps between Moore spaces")
    p.add_argument("expr_a")
    p.add_argument("expr_b")
    p.add_argument("--json", action="store_true")
    p.add_argument("--unicode", action="store_true")

    p = sub.add_parser("couple", help="canonical couple of a Moore space")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("normalize", help="validate a couple file and compare to canonical")
    p.add_argument("file")

    p = sub.add_parser("check", help="run the verification battery")
    p.add_argument("--battery", choices=("small", "full"), default="small")
    return parser


def _cmd_stems(args) -> int:
    A = parse_group(args.expr)
    table = stem_table(A)
    if args.json:
        rows = []
        for q, G in table.items():
            row = {"q": q}
            if args.degree is not None:
                row["i"] = args.degree + q
            row["rank"] = G.rank
            row["torsion"] = list(G.torsion)
            rows.append(row)
        print(json.dumps({"input": _group_json(A), "stems": rows}, indent=2))
        return 0
    for q, G in table.items():
        prefix = f"q={q}"
        if args.degree is not None:
            prefix += f" (i={args.degree + q})"
        print(f"{prefix}: {format_group(G, args.unicode)}")
    return 0


def _cmd_maps(args) -> int:
    A = parse_group(args.expr_a)
    B = parse_group(args.expr_b)
    mg = moore.homotopy_classes(A, B)
    if args.json:
        payload = {
            "source": _group_json(A),
            "target": _group_json(B),
            "group": _group_json(mg.group),
            "generators": [
                {
                    "order": mg.group.gen_orders[k],
                    "f1": _matrix_json(g.f1.matrix),
                    "f2": _matrix_json(g.f2.matrix),
                }
                for k, g in enumerate(mg.generators)
            ],
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(f"[{format_group(A, args.unicode)}, {format_group(B, args.unicode)}] = "
          f"{format_group(mg.group, args.unicode)}")
    for k, g in enumerate(mg.generators):
        order = mg.group.gen_orders[k]
        order_txt = "infinite" if order == 0 else str(order)
        print(f"generator {k} (order {order_txt}):")
        print(f"  f1 = {_matrix_json(g.f1.matrix)}")
        print(f"  f2 = {_matrix_json(g.f2.matrix)}")
    return 0


def _cmd_couple(args) -> int:
    A = parse_group(args.expr)
    D = moore.canonical_couple(A)
    if args.json:
        payload = {
            "A": _group_json(D.A),
            "B": _group_json(D.B),
            "alpha": _matrix_json(D.alpha.matrix),
            "beta": _matrix_json(D.beta.matrix),
        }
        print(json.dumps(payload, indent=2))
        return 0
    sys.stdout.write(serialize_couple(D))
    return 0


def _cmd_normalize(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return 1
    D = parse_couple(text)
    issues = exact_couples.validate(D)
    if issues:
        print("invalid couple:")
        for issue in issues:
            print(f"  - {issue}")
        return 2
    canonical, iso = moore.normalize(D)
    print(f"valid couple over A = {format_group(D.A)}")
    print(f"canonical B field: {format_group(canonical.B)}")
    print("isomorphism onto the canonical couple:")
    print("  f1 = identity")
    print(f"  f2 = {_matrix_json(iso.f2.matrix)}")
    return 0


def _check_line(name: str, ok: bool) -> bool:
    print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return ok


def _cmd_check(args) -> int:
    full = args.battery == "full"
    rng = random.Random(20240601)
    t0 = time.monotonic()
    ok = True

    cyclics = [0, 2, 3, 4, 8, 9, 12, 24, 240] if full else [0, 2, 3, 4, 12]
    singles = [AbelianGroup.cyclic(n) for n in cyclics]
    battery = list(singles)
    if full:
        battery += [direct_sum(a, b) for a, b in combinations_with_replacement(singles, 2)]

    snf_ok = True
    for _ in range(200 if full else 50):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        M = IntMatrix.from_rows(
            [[rng.randint(-100, 100) for _ in range(cols)] for _ in range(rows)], cols)
        U, D, V = smith_normal_form(M)
        if (U @ M @ V) != D or abs(U.det()) != 1 or abs(V.det()) != 1:
            snf_ok = False
        diag = [d for d in D.diagonal() if d]
        if any(b % a for a, b in zip(diag, diag[1:])):
            snf_ok = False
    ok &= _check_line("smith normal form properties", snf_ok)

    functor_ok = True
    for a in battery:
        for b in battery:
            if functors.tensor(a, b) != oracle.cyclic_table_functor("tensor", a, b):
                functor_ok = False
            if functors.tor(a, b) != oracle.cyclic_table_functor("tor", a, b):
                functor_ok = False
            if functors.ext(a, b) != oracle.cyclic_table_functor("ext", a, b):
                functor_ok = False
            if hom_group(a, b).group != oracle.cyclic_table_functor("hom", a, b):
                functor_ok = False
    ok &= _check_line("functors agree with the cyclic-table oracle", functor_ok)

    hom_count_ok = True
    for a in battery:
        for b in battery:
            if not (a.is_finite and b.is_finite):
                continue
            if hom_group(a, b).group.order() != oracle.count_homs_bruteforce(a, b):
                hom_count_ok = False
    ok &= _check_line("hom group orders agree with brute-force counts", hom_count_ok)

    lam_ok = True
    elem2 = [AbelianGroup.from_orders([2] * r) for r in range(4 if full else 3)]
    for a in elem2:
        for b in elem2:
            lam_ok &= functors.lambda_iso_check(a, b)
    for a in (AbelianGroup.cyclic(2), AbelianGroup.from_orders([2, 2])):
        for b in battery:
            lam_ok &= functors.lambda_iso_check(a, b)
            lam_ok &= functors.lambda_iso_check(b, a)
    ok &= _check_line("lambda isomorphism suite", lam_ok)

    order_ok = True
    for _ in range(30 if full else 5):
        A = sampling.random_finite_group(rng)
        for q in range(8):
            order_ok &= moore.ahss_order_check(A, q)
    for _ in range(30 if full else 5):
        A = sampling.random_finite_group(rng)
        B = sampling.random_finite_group(rng)
        order_ok &= moore.homotopy_ses_order_check(A, B)
    ok &= _check_line("order identities", order_ok)

    norm_ok = True
    for _ in range(50 if full else 5):
        A = sampling.random_finite_group(rng, max_factors=3, max_factor=16)
        D = sampling.transported_couple(rng, moore.canonical_couple(A))
        canonical, iso = moore.normalize(D)
        norm_ok &= iso.f1 == identity(A)
        norm_ok &= exact_couples.is_isomorphism(iso)
        norm_ok &= canonical == moore.canonical_couple(A)
    ok &= _check_line("transported couples normalize with identity first component", norm_ok)

    ok &= _check_line("couple diagram relations", oracle.couple_relations_check())

    golden = moore.stem_table(AbelianGroup.free(1))
    expected = (AbelianGroup.free(1), AbelianGroup.cyclic(2), AbelianGroup.cyclic(2),
                AbelianGroup.cyclic(24), AbelianGroup.trivial(), AbelianGroup.trivial(),
                AbelianGroup.cyclic(2), AbelianGroup.cyclic(240))
    ok &= _check_line("golden sphere stems", golden.groups == expected)

    print(f"battery {'full' if full else 'small'} finished in "
          f"{time.monotonic() - t0:.1f}s")
    return 0 if ok else 2


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "stems":
            return _cmd_stems(args)
        if args.command == "maps":
            return _cmd_maps(args)
        if args.command == "couple":
            return _cmd_couple(args)
        if args.command == "normalize":
            return _cmd_normalize(args)
        return _cmd_check(args)
    except GroupParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except CoupleFormatError as exc:
        print(f"couple file error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
