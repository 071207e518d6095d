"""Compiled vs pure-Python triangle-contact scan.

    python benchmarks/bench_kernels.py [--repeat 5]

Times scan_pairs on assembled tori (no contacts, every candidate pair is
tested in full) and on a self-intersecting gluing, for both backends.
"""
import argparse
import timeit

from origami_tori import kernels
from origami_tori.torus import TorusParams, assemble_torus, glue_annuli, rho_interval


def cases():
    for n in (8, 16, 32, 64):
        lo, hi = rho_interval(n, 2)
        p = TorusParams(n, 2, lo + 0.3 * (hi - lo), 1.0)
        yield f"torus n={n}", assemble_torus(p).mesh
    yield "crossing bands n=16", glue_annuli(16, -0.2, 0.05)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", kernels.python_backend)]
    if kernels.compiled_backend is not None:
        backends.append(("cython", kernels.compiled_backend))
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'case':<22}{'faces':>7}" + "".join(f"{name + ' ms':>13}" for name, _ in backends) + f"{'speedup':>10}")
    for label, mesh in cases():
        times = []
        hits = set()
        for _, mod in backends:
            t = min(timeit.repeat(lambda: mod.scan_pairs(mesh.vertices, mesh.faces, 1e-9),
                                  number=1, repeat=args.repeat))
            times.append(t * 1e3)
            hits.add(len(mod.scan_pairs(mesh.vertices, mesh.faces, 1e-9)))
        assert len(hits) == 1, "backends disagree"
        speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
        print(f"{label:<22}{mesh.n_faces:>7}" + "".join(f"{t:>13.2f}" for t in times) + speed)


if __name__ == "__main__":
    main()
