"""Contrast-curve peak time and value per defect as scene parameters vary.

Noiseless runs, so the peak is the model's and not the sensor's:

    python3 scripts/contrast_peaks.py --depths 5 10 20 --reflections 0.5 0.9 --frames 360 720
"""
import argparse
from dataclasses import replace

from thermoseq import metrics, synth


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--depths", type=float, nargs="+", default=[20.0], help="mm")
    ap.add_argument("--reflections", type=float, nargs="+", default=[0.9])
    ap.add_argument("--frames", type=int, nargs="+", default=[360])
    ap.add_argument("--gradient", type=float, default=0.3)
    args = ap.parse_args()
    rois = synth.standard_rois()
    reference, defects = rois[0], rois[1:]
    print(f"{'L_mm':>6} {'R':>5} {'frames':>7}  " + "  ".join(f"{d.name + ' peak':>24}" for d in defects))
    for depth in args.depths:
        for refl in args.reflections:
            for frames in args.frames:
                base = synth.standard_scene(noise_sigma=0.0, heating_gradient=args.gradient, frames=frames)
                spec = replace(base, defects=tuple(
                    synth.Defect(d.footprint, depth / 1000.0, refl) for d in base.defects
                ))
                seq = synth.generate(spec)
                cells = []
                for d in defects:
                    t, c = metrics.max_contrast_time(metrics.contrast_curve(seq, d, reference))
                    cells.append(f"{c:9.3f} degC @ {t:6g} s")
                print(f"{depth:6g} {refl:5g} {frames:7d}  " + "  ".join(f"{c:>24}" for c in cells))


if __name__ == "__main__":
    main()
