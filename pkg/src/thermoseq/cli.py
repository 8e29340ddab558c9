"""Command line: ``thermoseq synth | analyze | contrast``.

Exit status: 0 success, 1 usage, 2 input validation, 3 numerical degeneracy.
"""
from __future__ import annotations

import argparse
import shutil
import sys
import tempfile
from pathlib import Path

from . import export, metrics, pct, ppt, synth
from .errors import DegenerateError, ThermoError
from .pipeline import METHODS, AnalysisConfig, analyze, snr_table, split_rois
from .preprocess import normalize_map, spatial_bin
from .seq_model import load_rois, load_sequence, sequence_bytes

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt_db(v) -> str:
    return "no-contrast" if v is None else repr(float(v))


def cmd_synth(args) -> int:
    spec = synth.load_scene(args.scene)
    seq = synth.generate(spec)
    export.atomic_write(args.out, sequence_bytes(seq))
    print(f"wrote {args.out}: {seq.width}x{seq.height}x{seq.frames}, dt={seq.dt:g} s")
    return EXIT_OK


def _methods(text: str) -> tuple[str, ...]:
    names = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in names if m not in METHODS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {','.join(METHODS)}")
    return names


def cmd_analyze(args) -> int:
    seq = spatial_bin(load_sequence(args.input), args.bin)
    rois = load_rois(args.rois, seq.width, seq.height)
    config = AnalysisConfig(
        methods=args.methods, max_bin=args.max_bin, ppt_bin=args.ppt_bin,
        n_components=args.components, pct_eof=args.pct_eof, pct_center=args.pct_center,
        raw_time=args.raw_time,
    )
    result = analyze(seq, rois, config)
    table = snr_table(result.maps, rois)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(dir=out, prefix=".staging-"))
    try:
        for m in result.maps:
            export.write_pgm(staging / f"{m.label}.pgm", normalize_map(m).values)
            export.write_sidecar(staging / f"{m.label}.f32", m)
        export.write_csv(
            staging / "snr.csv", ["map", "roi", "snr_db"],
            [(label, roi, _fmt_db(raw_db)) for label, roi, raw_db, _ in table],
        )
        for f in staging.iterdir():
            f.replace(out / f.name)
    finally:
        shutil.rmtree(staging, ignore_errors=True)

    for note in result.notes:
        print(note)
    print(f"{'map':<20} {'roi':<12} {'snr_db':>22} {'snr_db_norm':>22}")
    for label, roi, raw_db, norm_db in table:
        print(f"{label:<20} {roi:<12} {_fmt_db(raw_db):>22} {_fmt_db(norm_db):>22}")
    return EXIT_OK


def cmd_contrast(args) -> int:
    seq = spatial_bin(load_sequence(args.input), args.bin)
    rois = load_rois(args.rois, seq.width, seq.height)
    reference, defects = split_rois(rois)
    if not defects:
        raise ThermoError("contrast needs at least one defect ROI")
    out = Path(args.out)
    peaks = []
    for d in defects:
        curve = metrics.contrast_curve(seq, d, reference)
        path = out.with_name(f"{out.stem}_{d.name}{out.suffix or '.csv'}")
        export.write_csv(
            path, ["time_s", "contrast_c"],
            [(f"{t:g}", f"{v:.6f}") for t, v in zip(curve.times, curve.values)],
        )
        t_peak, c_peak = metrics.max_contrast_time(curve)
        peaks.append((d.name, t_peak, c_peak))
        print(f"peak {d.name}: {c_peak:.4f} degC at {t_peak:g} s")
    export.write_csv(
        out.with_name(f"{out.stem}_peaks{out.suffix or '.csv'}"), ["roi", "time_s", "contrast_c"],
        [(name, f"{t:g}", f"{c:.6f}") for name, t, c in peaks],
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thermoseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="generate a synthetic TSEQ sequence from a scene file")
    p.add_argument("scene")
    p.add_argument("out")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("analyze", help="run methods, export maps and an SNR table")
    p.add_argument("input")
    p.add_argument("rois", help="ROI CSV in binned-map pixel coordinates")
    p.add_argument("--methods", type=_methods, default=METHODS, help="comma list of raw,ppt,pct,hos")
    p.add_argument("--bin", type=int, default=4, help="spatial averaging window (default 4)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--max-bin", type=int, default=ppt.DEFAULT_MAX_BIN)
    p.add_argument("--ppt-bin", type=int, default=None, help="frequency bin (default: best SNR)")
    p.add_argument("--components", type=int, default=pct.DEFAULT_COMPONENTS)
    p.add_argument("--pct-eof", type=int, default=None, help="EOF number (default: best SNR)")
    p.add_argument("--pct-center", choices=pct.CENTERING, default=pct.DEFAULT_CENTERING)
    p.add_argument("--raw-time", type=float, default=None,
                   help="seconds; default is the max-contrast frame")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("contrast", help="defect-minus-reference contrast curves")
    p.add_argument("input")
    p.add_argument("rois")
    p.add_argument("--out", required=True, help="CSV path; one file per defect ROI is derived from it")
    p.add_argument("--bin", type=int, default=1)
    p.set_defaults(func=cmd_contrast)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateError as exc:
        print(f"thermoseq: degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ThermoError, ValueError, OSError) as exc:
        print(f"thermoseq: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
