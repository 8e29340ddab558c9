"""SNR of each method on the standard scene, one row per (method, ROI).

Sweeps PCT centering modes and optionally the heating gradient, e.g.

    python3 scripts/compare_methods.py --gradients 0 0.15 0.3
"""
import argparse
import time

from thermoseq import metrics, pct, ppt, synth
from thermoseq.hos import hos_analyze
from thermoseq.pipeline import best_map, best_raw_snr


def rows_for(seq, reference, defects):
    raw = [best_raw_snr(seq, d, reference) for d in defects]
    yield "raw (best frame)", [s for s, _ in raw], f"frames {[k for _, k in raw]}"
    res = ppt.ppt_analyze(seq)
    for kind, maps in (("ppt phase", res.phase_maps), ("ppt amplitude", res.amplitude_maps)):
        m = best_map(maps, defects, reference)
        yield kind, [metrics.snr(m, d, reference) for d in defects], f"bin {m.index}"
    for centering in pct.CENTERING:
        m = best_map(pct.pct_analyze(seq, centering=centering).eof_maps, defects, reference)
        yield f"pct {centering}", [metrics.snr(m, d, reference) for d in defects], f"EOF {m.index}"
    for m in hos_analyze(seq):
        yield m.method.replace("-", " "), [metrics.snr(m, d, reference) for d in defects], ""


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--gradients", type=float, nargs="+", default=[0.3])
    ap.add_argument("--noise", type=float, default=None, help="override noise_sigma")
    args = ap.parse_args()
    rois = synth.standard_rois()
    reference, defects = rois[0], rois[1:]
    for g in args.gradients:
        overrides = {"heating_gradient": g}
        if args.noise is not None:
            overrides["noise_sigma"] = args.noise
        t0 = time.perf_counter()
        seq = synth.generate(synth.standard_scene(**overrides))
        print(f"\ngradient {g:g}" + (f", noise {args.noise:g}" if args.noise is not None else ""))
        print(f"{'method':<22}" + "".join(f"{d.name:>12}" for d in defects) + f"{'spread':>10}  choice")
        for name, vals, note in rows_for(seq, reference, defects):
            cells = "".join(f"{v:12.2f}" for v in vals)
            print(f"{name:<22}{cells}{abs(vals[0] - vals[-1]):10.2f}  {note}")
        print(f"({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
