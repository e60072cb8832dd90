#!/usr/bin/env python3
"""Search the index grid for integral values of d * U(m) / V(n).

Runs the exhaustive grid search, optionally widened by totient candidates
(m = phi(V(n)) is a hit whenever gcd of the numerator's root with V(n) is 1,
by Euler's theorem), times it, and then tries to certify the empty residue
classes of n with a mod-p obstruction so that "no hits" comes with a reason.
"""

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from recurquot.errors import BadPrime, FactorizationLimit
from recurquot.integrality import FixedDenominator, integrality_search, obstruction_scan
from recurquot.parsing import parse_spec
from recurquot.recurrences import from_closed_form


@dataclass(frozen=True)
class SearchConfig:
    m_max: int
    n_max: int
    denominator: int
    totient: bool
    obstruction_primes: tuple[int, ...]


def load(path: str | None, default_base: int):
    if path is None:
        rec = from_closed_form(
            [(Fraction(default_base), Fraction(1)), (Fraction(1), Fraction(-1))]
        )
        return f"{default_base}^k - 1", rec
    spec = parse_spec(Path(path).read_text())
    rec = spec.to_recurrence()
    return spec.name or rec.render(), rec


def run(u, v, config: SearchConfig) -> int:
    started = time.perf_counter()
    hits = integrality_search(
        u,
        v,
        config.m_max,
        config.n_max,
        FixedDenominator(config.denominator),
        totient=config.totient,
    )
    elapsed = time.perf_counter() - started
    print(f"{len(hits)} hits in {elapsed:.2f}s "
          f"(grid {config.m_max} x {config.n_max}, totient={config.totient})")
    by_n: dict[int, list[int]] = {}
    for hit in hits:
        by_n.setdefault(hit.n, []).append(hit.m)
    for n in sorted(by_n):
        ms = by_n[n]
        shown = ", ".join(str(m) for m in ms[:8]) + (", ..." if len(ms) > 8 else "")
        print(f"  n = {n:4d}: m in [{shown}]  ({len(ms)} values)")

    empty = [n for n in range(1, config.n_max + 1) if n not in by_n]
    if not empty:
        return 0
    print(f"residues of n with no hits: {empty}")
    for q in (2, 3, 4):
        for r in range(q):
            cls = [n for n in empty if n % q == r]
            if len(cls) < 2 or any(n % q == r for n in by_n):
                continue
            for p in config.obstruction_primes:
                # p | U never holds on the class; that only rules out
                # d * U / V hits when p does not divide d either.
                if config.denominator % p == 0:
                    continue
                try:
                    report = obstruction_scan(u, v, (q, r), p)
                except (BadPrime, FactorizationLimit):
                    continue
                if report.certified:
                    print(
                        f"  class n = {r} mod {q} certified empty: "
                        f"p = {p} divides V on the class, never d * U "
                        f"(period {report.period})"
                    )
                    break
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("numerator", nargs="?", help="spec JSON for U (default: 3^m - 1)")
    ap.add_argument("divisor", nargs="?", help="spec JSON for V (default: 2^n - 1)")
    ap.add_argument("--m-max", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("-d", "--denominator", type=int, default=1)
    ap.add_argument("--totient", action="store_true")
    ap.add_argument("--obstruction-primes", default="2,3,5,7,11,13")
    args = ap.parse_args(argv)

    config = SearchConfig(
        m_max=args.m_max,
        n_max=args.n_max,
        denominator=args.denominator,
        totient=args.totient,
        obstruction_primes=tuple(int(p) for p in args.obstruction_primes.split(",")),
    )
    u_name, u = load(args.numerator, 3)
    v_name, v = load(args.divisor, 2)
    print(f"U = {u_name}, V = {v_name}, d = {config.denominator}")
    return run(u, v, config)


if __name__ == "__main__":
    sys.exit(main())
