#!/usr/bin/env python3
"""Profile exact p-adic decay ratios of a divisor sequence.

For a divisor V the clearing analysis needs v_p(V(n)) * log(p) / n to sink
below a fixed tolerance at every finite place of interest; this script
prints the exact peak per place and where it occurs, so the margin is
visible instead of asserted.  Ratios are LogSum values, never floats, and
only rendered as decimals at the very end.
"""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from recurquot.heights import decay_check
from recurquot.parsing import parse_spec
from recurquot.places import Place
from recurquot.recurrences import from_closed_form


@dataclass(frozen=True)
class ProfileConfig:
    primes: tuple[int, ...]
    n_lo: int
    n_hi: int
    tolerance: float
    top: int


def load_divisor(path: str | None):
    if path is None:
        rec = from_closed_form([(Fraction(2), Fraction(1)), (Fraction(1), Fraction(-1))])
        return "2^n - 1", rec
    spec = parse_spec(Path(path).read_text())
    rec = spec.to_recurrence()
    return spec.name or rec.render(), rec


def profile(rec, config: ProfileConfig) -> int:
    worst_margin = None
    for p in config.primes:
        report = decay_check(rec, Place.finite(p), config.n_lo, config.n_hi)
        peak = report.max_ratio.to_float()
        margin = config.tolerance - peak
        worst_margin = margin if worst_margin is None else min(margin, worst_margin)
        print(f"place {p}:")
        print(
            f"  peak ratio {report.max_ratio.render()} = {peak:.6f}"
            f" at n = {report.argmax_n}"
        )
        ranked = sorted(report.samples, key=lambda s: s[1].to_float(), reverse=True)
        for n, ratio in ranked[: config.top]:
            print(f"    n = {n:5d}  ratio = {ratio.render():<18} ~ {ratio.to_float():.6f}")
        if report.skipped_zeros:
            print(f"  skipped zeros of V at {list(report.skipped_zeros)}")
        status = "below" if margin > 0 else "ABOVE"
        print(f"  {status} tolerance {config.tolerance} (margin {margin:+.6f})")
    return 0 if worst_margin is not None and worst_margin > 0 else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("spec", nargs="?", help="divisor spec JSON (default: 2^n - 1)")
    ap.add_argument("--primes", default="3,5,7", help="comma-separated finite places")
    ap.add_argument("--from", dest="n_lo", type=int, default=100)
    ap.add_argument("--to", dest="n_hi", type=int, default=1000)
    ap.add_argument("--tolerance", type=float, default=0.05)
    ap.add_argument("--top", type=int, default=5, help="ranked samples to print per place")
    args = ap.parse_args(argv)

    config = ProfileConfig(
        primes=tuple(int(p) for p in args.primes.split(",")),
        n_lo=args.n_lo,
        n_hi=args.n_hi,
        tolerance=args.tolerance,
        top=args.top,
    )
    name, rec = load_divisor(args.spec)
    print(f"divisor {name} on [{config.n_lo}, {config.n_hi}]")
    return profile(rec, config)


if __name__ == "__main__":
    sys.exit(main())
