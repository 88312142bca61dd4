"""Compare a table2.csv produced at n=20 with the reference l_opt column (+-1)."""
import csv
import sys

REFERENCE = [0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 19, 20]


def load(path):
    with open(path) as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    return [(float(r["eta"]), int(r["l_opt"])) for r in rows]


def main(path):
    rows = load(path)
    bad = 0
    for (eta, l), want in zip(rows, REFERENCE):
        ok = abs(l - want) <= 1
        bad += not ok
        print(f"eta={eta:<7g} l_opt={l:<3d} reference={want:<3d} {'ok' if ok else 'MISMATCH'}")
    print(f"{len(rows) - bad}/{len(rows)} rows within +-1")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1] if len(sys.argv) > 1 else "results/full/table2.csv"))
