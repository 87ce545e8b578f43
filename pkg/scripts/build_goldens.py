"""Regenerate the frozen golden files under tests/data/.

Run from the repository root:

    python3 scripts/build_goldens.py

Everything is produced by the naive reference implementations in
tests/naive_ref.py; the package itself is never imported here.  The big
spectrum walk takes a few minutes.
"""

from __future__ import annotations

import json
import pathlib
import sys
import time

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import naive_ref as nr  # noqa: E402

DATA = ROOT / "tests" / "data"


def dump(name: str, payload: dict) -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    path = DATA / name
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}")


def build_gf_tables() -> None:
    tables = {}
    for q in (4, 8, 9):
        gf = nr.make_naive(q)
        tables[str(q)] = {
            "modulus": list(gf.modulus),
            "add": [[gf.add(a, b) for b in range(q)] for a in range(q)],
            "mul": [[gf.mul(a, b) for b in range(q)] for a in range(q)],
            "frob1": [gf.frob(a, 1) for a in range(q)],
        }
    dump("gf_tables.json", tables)


def build_embedding() -> None:
    gf = nr.make_naive(4)
    flags = nr.naive_flags(gf, 2)
    flats = [list(nr.naive_embed(gf, 1, fl)) for fl in flags]
    dump("embedding_4_2_1.json", {
        "q": 4, "n": 2, "j": 1,
        "flags": [[list(x), list(xi)] for x, xi in flags],
        "flats": flats,
    })


def build_theta_samples() -> None:
    configs = [
        ("4_2_1", 4, 2, 1),
        ("8_2_1", 8, 2, 1),
        ("9_2_1", 9, 2, 1),
        ("4_3_1", 4, 3, 1),
        ("8_1_1", 8, 1, 1),
    ]
    out = {}
    for key, q, n, j in configs:
        gf = nr.make_naive(q)
        m = n + 1
        total = nr.naive_num_classes(q, m * m)
        picks = sorted({0, 1, 2, total - 1}
                       | {(i * 2654435761) % total for i in range(1, 13)})
        items = []
        for idx in picks:
            rep = nr.naive_class_rep_at(q, m * m, idx)
            M = [list(rep[r * m:(r + 1) * m]) for r in range(m)]
            items.append({"index": idx, "matrix": M,
                          "theta": nr.naive_theta(gf, j, M)})
        ident = [[1 if r == c else 0 for c in range(m)] for r in range(m)]
        items.append({"index": None, "matrix": ident,
                      "theta": nr.naive_theta(gf, j, ident)})
        out[key] = {"q": q, "n": n, "j": j, "items": items}
    dump("theta_samples.json", out)


def build_spectra() -> None:
    jobs = [
        ("spectrum_4_1_1.json", 4, 1, 1),
        ("spectrum_8_1_1.json", 8, 1, 1),
        ("spectrum_4_2_1.json", 4, 2, 1),
    ]
    for name, q, n, j in jobs:
        gf = nr.make_naive(q)
        t0 = time.time()
        counts = nr.naive_spectrum(gf, j, n)
        print(f"{name}: {time.time() - t0:.1f}s")
        dump(name, {"q": q, "n": n, "j": j,
                    "counts": {str(w): c for w, c in sorted(counts.items())}})


def main() -> None:
    build_gf_tables()
    build_embedding()
    build_theta_samples()
    build_spectra()


if __name__ == "__main__":
    main()
