"""Regenerate scenes/standard.scene and scenes/standard_rois.csv from synth.standard_scene()."""
import argparse
from pathlib import Path

from thermoseq import synth
from thermoseq.seq_model import format_rois


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=Path(__file__).resolve().parent.parent / "scenes", type=Path)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "standard.scene").write_text(
        "# standard synthetic scene: two equal voids, heating gradient, glare patch, noise\n"
        + synth.format_scene(synth.standard_scene())
    )
    (args.out_dir / "standard_rois.csv").write_text(
        "# name,x0,y0,x1,y1,kind (inclusive pixel coordinates)\n" + format_rois(synth.standard_rois())
    )
    print(f"wrote scene and ROIs to {args.out_dir}")


if __name__ == "__main__":
    main()
