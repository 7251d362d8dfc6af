"""Write one canonical representative per isomorphism class of OA(N, 2^d, t).

Classes on d factors come from enumerate_oas for d <= 4; beyond that every
representative on d-1 factors is extended by one factor and the results are
reduced to canonical forms.

    python scripts/make_classes.py --d 5 --N 20 --t 2 --out data/oa_N20_d5_t2
"""

import argparse
import json
from pathlib import Path

from oaiso.design import MAX_ENUM_D, enumerate_oas, extend_oas, orbit_size, reduce_to_classes
from oaiso.io import write_design


def classes(d, N, t):
    if d <= MAX_ENUM_D:
        return [rep for rep, _ in reduce_to_classes(enumerate_oas(d, N, t))]
    return [rep for rep, _ in reduce_to_classes(extend_oas(classes(d - 1, N, t), t))]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, required=True)
    ap.add_argument("--N", type=int, required=True)
    ap.add_argument("--t", type=int, required=True)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    reps = classes(args.d, args.N, args.t)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for k, rep in enumerate(reps):
        write_design(out / f"class_{k:02d}.txt", rep, f"OA N={args.N} d={args.d} t={args.t}, class {k} (canonical form)")
    print(json.dumps({"n_classes": len(reps), "n_arrays": sum(orbit_size(r) for r in reps)}))


if __name__ == "__main__":
    main()
