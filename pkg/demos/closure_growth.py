"""Closure growth on two synthetic graph families.

The chain family is n properties related by subproperty statements; its
closure is the transitive closure of the chain and grows with n(n-1)/2.
The cubic family adds n members and a star statement per member; the
extended rules then ground every member/property/member combination and
the closure grows with the cube of n.
"""

import argparse
import math

from rhodf import closure, cubic, spchain


def fitted_slope(points) -> float:
    xs = [math.log(n) for n, _ in points]
    ys = [math.log(size) for _, size in points]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    return sum(
        (x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)
    ) / sum((x - mean_x) ** 2 for x in xs)


def survey(name, make, ns, mode) -> None:
    print(f"{name} family ({mode} rules)")
    print(f"  {'n':>4}  {'input':>6}  {'closure':>8}")
    points = []
    for n in ns:
        g = make(n)
        size = len(closure(g, mode).closure)
        points.append((n, size))
        print(f"  {n:>4}  {len(g):>6}  {size:>8}")
    print(f"  fitted log-log slope: {fitted_slope(points):.2f}")
    print()


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--chain", type=int, nargs="+", default=[10, 20, 40, 80],
                    help="chain lengths to survey")
    ap.add_argument("--cubic", type=int, nargs="+", default=[4, 6, 8, 10, 12],
                    help="cubic family sizes to survey")
    args = ap.parse_args()

    survey("chain", spchain, args.chain, "rdf")
    survey("cubic", cubic, args.cubic, "full")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
