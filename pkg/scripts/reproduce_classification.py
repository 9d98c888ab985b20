"""Enumerate the polygon classes behind the feature catalog and print a table."""

import argparse
import time

from tacnodal.lattice import catalog_matches, enumerate_class

TABLE = [
    (3, 3, (1, 1, 1), None),
    (3, 2, (2, 1, 1), None),
    (3, 1, (2, 1, 1), None),
    (3, 0, (4, 1, 1), None),
    (4, 2, (1, 1, 1, 1), True),
    (5, 1, (1, 1, 1, 1, 1), None),
    (4, 2, (1, 1, 1, 1), False),
    (4, 1, (2, 1, 1, 1), None),
    (3, 1, (2, 2, 1), None),
    (3, 1, (3, 1, 1), None),
    (3, 0, (2, 2, 1), None),
    (3, 0, (3, 2, 1), None),
    (5, 0, (2, 1, 1, 1, 1), None),
    (4, 0, (2, 2, 1, 1), False),
    (4, 0, (1, 1, 1, 1), False),
]


def label(m, interior, lengths, par):
    kind = {True: "par", False: "nonpar", None: ""}[par]
    return f"D{m}{kind}({interior};{','.join(map(str, lengths))})"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verbose", action="store_true", help="list representatives")
    args = ap.parse_args()
    for m, interior, lengths, par in TABLE:
        t = time.perf_counter()
        reps = enumerate_class(m, interior, lengths, par)
        dt = time.perf_counter() - t
        names = [" = ".join(str(c) for c in catalog_matches(P)) or "-" for P in reps]
        print(f"{label(m, interior, lengths, par):<24} {len(reps)} class(es)  {dt:6.2f}s  {'; '.join(names)}")
        if args.verbose:
            for P in reps:
                print(f"    {list(P.vertices)}")


if __name__ == "__main__":
    main()
